//! Sampled version of the admissibility criterion for lifts: strictly
//! increasing, bi-Lipschitz, total increase `2π`, and a bounded periodic
//! Hilbert transform of `φ'`.
//!
//! Boundedness can only be witnessed, never certified, by sampling. The
//! Lipschitz constant counts as bounded when refining the mesh eightfold
//! changes it by less than `stability`; the Hilbert sup counts as bounded
//! when doubling its sample count does. The base count has to resolve the
//! lift: the peaks of `ℌ(φ_n')` have width of order `3⁻ⁿ`, and at 128
//! samples a narrow peak is hit at one count and missed at the other. A single doubling is not enough for
//! the Lipschitz test: on a uniform dyadic mesh the difference quotients of
//! a Cantor-type lift can stall for one refinement step.

use crate::error::Result;
use crate::hilbert::{hilbert_sup, PVConfig};
use crate::poisson::QuadratureConfig;
use crate::Real;

use super::{estimate_bilipschitz, LiftFunction};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum MembershipVerdict {
    Member,
    NonMember,
    Inconclusive,
}

impl MembershipVerdict {
    pub fn as_str(self) -> &'static str {
        match self {
            Self::Member => "member",
            Self::NonMember => "non_member",
            Self::Inconclusive => "inconclusive",
        }
    }
}

/// Individual reasons a lift failed (or could not be judged).
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum MembershipFinding {
    NonFinite,
    TotalIncrease,
    NotStrictlyIncreasing,
    /// Smallest difference quotient at or below the flatness floor.
    FlatSegment,
    /// Upper difference quotient keeps growing under mesh refinement.
    LipschitzUnbounded,
    /// Hilbert sup non-finite or unstable under sample doubling.
    HilbertUnbounded,
    /// No closed-form derivative and finite differences disagree across steps.
    NoisyDerivative,
}

#[derive(Clone, Debug, PartialEq)]
pub struct MembershipReport<T> {
    pub strictly_increasing: bool,
    /// Smallest signed difference quotient on the mesh.
    pub min_quotient: T,
    pub bilipschitz_upper: T,
    /// `L⁺` on the refined mesh; compared with `bilipschitz_upper`.
    pub bilipschitz_upper_refined: T,
    pub bilipschitz_lower: T,
    pub total_increase: T,
    /// `None` when `φ'` could not be evaluated reliably.
    pub hilbert_sup: Option<T>,
    pub hilbert_sup_refined: Option<T>,
    pub verdict: MembershipVerdict,
    pub findings: Vec<MembershipFinding>,
}

impl<T> MembershipReport<T> {
    pub fn is_member(&self) -> bool {
        self.verdict == MembershipVerdict::Member
    }
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct MembershipConfig<T> {
    /// Base mesh for difference quotients.
    pub lipschitz_mesh: usize,
    /// Refinement factor for the Lipschitz stability test.
    pub lipschitz_refinement: usize,
    /// Base sample count for the Hilbert sup; doubled once.
    pub hilbert_samples: usize,
    /// Relative change tolerated under refinement.
    pub stability: T,
    pub total_increase_tol: T,
    pub flatness_floor: T,
    /// Central-difference step used when no derivative is supplied.
    pub fd_step: T,
}

impl<T: Real> MembershipConfig<T> {
    pub fn from_quadrature(cfg: &QuadratureConfig<T>) -> Self {
        Self { flatness_floor: cfg.flatness_floor, ..Self::default() }
    }
}

impl<T: Real> Default for MembershipConfig<T> {
    fn default() -> Self {
        Self {
            lipschitz_mesh: 8192,
            lipschitz_refinement: 8,
            hilbert_samples: 512,
            stability: T::lit(0.1),
            total_increase_tol: T::lit(1e-9),
            flatness_floor: T::lit(1e-6),
            fd_step: T::lit(1e-5),
        }
    }
}

fn relative_change<T: Real>(a: T, b: T) -> T {
    let scale = a.abs().max(b.abs());
    if scale <= T::lit(1e-9) {
        T::zero()
    } else {
        (b - a).abs() / scale
    }
}

/// Checks whether central differences of `φ` are trustworthy.
fn fd_derivative_is_stable<T: Real>(phi: &LiftFunction<T>, h: T) -> bool {
    let probes = 1024;
    let step = T::two_pi() / T::from_usize_lossy(probes);
    let quarter = h / T::lit(4.0);
    let mut worst = T::zero();
    let mut scale = T::one();
    for i in 0..probes {
        let t = step * (T::from_usize_lossy(i) + T::lit(0.5));
        let coarse = (phi.eval(t + h) - phi.eval(t - h)) / (h + h);
        let fine = (phi.eval(t + quarter) - phi.eval(t - quarter)) / (quarter + quarter);
        if !(coarse.is_finite() && fine.is_finite()) {
            return false;
        }
        worst = worst.max((coarse - fine).abs());
        scale = scale.max(coarse.abs());
    }
    worst <= T::lit(1e-3) * scale
}

/// Membership check with default mesh settings and principal-value configuration.
pub fn check_membership<T: Real>(phi: &LiftFunction<T>, cfg: &QuadratureConfig<T>) -> Result<MembershipReport<T>> {
    check_membership_with(phi, &MembershipConfig::from_quadrature(cfg), &PVConfig::default())
}

pub fn check_membership_with<T: Real>(
    phi: &LiftFunction<T>,
    mcfg: &MembershipConfig<T>,
    pv: &PVConfig<T>,
) -> Result<MembershipReport<T>> {
    let mut findings = Vec::new();

    let total_increase = phi.total_increase();
    if !total_increase.is_finite() {
        findings.push(MembershipFinding::NonFinite);
    } else if (total_increase - T::two_pi()).abs() > mcfg.total_increase_tol {
        findings.push(MembershipFinding::TotalIncrease);
    }

    let coarse = estimate_bilipschitz(phi, mcfg.lipschitz_mesh);
    let fine = estimate_bilipschitz(phi, mcfg.lipschitz_mesh * mcfg.lipschitz_refinement.max(2));
    let (coarse, fine) = match (coarse, fine) {
        (Ok(c), Ok(f)) => (c, f),
        _ => {
            findings.push(MembershipFinding::NonFinite);
            let nan = T::nan();
            return Ok(MembershipReport {
                strictly_increasing: false,
                min_quotient: nan,
                bilipschitz_upper: nan,
                bilipschitz_upper_refined: nan,
                bilipschitz_lower: nan,
                total_increase,
                hilbert_sup: None,
                hilbert_sup_refined: None,
                verdict: MembershipVerdict::NonMember,
                findings,
            });
        }
    };
    let strictly_increasing = fine.min_quotient > T::zero();
    if !strictly_increasing {
        findings.push(MembershipFinding::NotStrictlyIncreasing);
    }
    if fine.lower <= mcfg.flatness_floor {
        findings.push(MembershipFinding::FlatSegment);
    }
    if relative_change(coarse.upper, fine.upper) >= mcfg.stability {
        findings.push(MembershipFinding::LipschitzUnbounded);
    }

    let (hilbert_sup_base, hilbert_sup_refined) = if phi.has_derivative() {
        let g = |t: T| phi.derivative(t).expect("derivative present");
        hilbert_pair(&g, mcfg, pv, phi.breakpoints())
    } else if fd_derivative_is_stable(phi, mcfg.fd_step) {
        let h = mcfg.fd_step;
        let g = move |t: T| (phi.eval(t + h) - phi.eval(t - h)) / (h + h);
        hilbert_pair(&g, mcfg, pv, phi.breakpoints())
    } else {
        findings.push(MembershipFinding::NoisyDerivative);
        (None, None)
    };
    if let (Some(a), Some(b)) = (hilbert_sup_base, hilbert_sup_refined) {
        if !(a.is_finite() && b.is_finite()) || relative_change(a, b) >= mcfg.stability {
            findings.push(MembershipFinding::HilbertUnbounded);
        }
    } else if !findings.contains(&MembershipFinding::NoisyDerivative) {
        findings.push(MembershipFinding::HilbertUnbounded);
    }

    let decisive = findings.iter().any(|f| !matches!(f, MembershipFinding::NoisyDerivative));
    let verdict = if decisive {
        MembershipVerdict::NonMember
    } else if findings.is_empty() {
        MembershipVerdict::Member
    } else {
        MembershipVerdict::Inconclusive
    };

    Ok(MembershipReport {
        strictly_increasing,
        min_quotient: fine.min_quotient,
        bilipschitz_upper: coarse.upper,
        bilipschitz_upper_refined: fine.upper,
        bilipschitz_lower: fine.lower,
        total_increase,
        hilbert_sup: hilbert_sup_base,
        hilbert_sup_refined,
        verdict,
        findings,
    })
}

fn hilbert_pair<T: Real, G: Fn(T) -> T + Sync>(
    g: &G,
    mcfg: &MembershipConfig<T>,
    pv: &PVConfig<T>,
    exclude: &[T],
) -> (Option<T>, Option<T>) {
    let a = hilbert_sup(g, mcfg.hilbert_samples, pv, exclude).ok();
    let b = hilbert_sup(g, 2 * mcfg.hilbert_samples, pv, exclude).ok();
    (a, b)
}
