//! Complex dilatation of harmonic extensions and the two-channel
//! quasiconformality verdict.
//!
//! The criterion channel ([`check_membership_with`]) is authoritative. The
//! dilatation channel samples `μ = f_z̄ / f_z` on circles approaching the
//! boundary and classifies how the circle-wise maximum of
//! `K = (1 + |μ|)/(1 − |μ|)` grows. Growth is measured as the log-log slope
//! of `K` against `1/(1 − r)` between the two outermost radii: a
//! quasiconformal extension must eventually flatten, while a boundary map
//! with a flat arc drives `K` up like `1/(1 − r)`.

use num_complex::Complex;
use rayon::prelude::*;

use crate::boundary_maps::{
    check_membership_with, LiftFunction, MembershipConfig, MembershipReport, MembershipVerdict,
};
use crate::error::{Error, Result};
use crate::hilbert::PVConfig;
use crate::poisson::{HarmonicExtension, QuadratureConfig, Wirtinger, WirtingerMode};
use crate::Real;

/// `|f_z|` below which a grid point is treated as degenerate.
pub const DEGENERATE_FZ: f64 = 1e-12;

/// Default sweep radii; approach the boundary geometrically.
pub const DEFAULT_RADII: [f64; 5] = [0.5, 0.75, 0.9, 0.95, 0.99];

pub const DEFAULT_ANGLES: usize = 512;

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct DilatationSample<T> {
    pub r: T,
    pub theta: T,
    pub mu: Complex<T>,
    pub mu_abs: T,
    /// Pointwise distortion; `+∞` when flagged.
    pub k: T,
    /// `|f_z|` vanished; `mu` and `k` are meaningless.
    pub degenerate: bool,
    /// `|μ| ≥ 1`: orientation reversed or folded at this point.
    pub flagged: bool,
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct RadiusStats<T> {
    pub r: T,
    pub max_mu: T,
    pub k_max: T,
}

#[derive(Clone, Debug, PartialEq)]
pub struct DilatationField<T> {
    pub radii: Vec<T>,
    pub angles: usize,
    /// Radius-major samples.
    pub samples: Vec<DilatationSample<T>>,
    pub k_max: T,
}

impl<T: Real> DilatationField<T> {
    /// Per-circle maxima of `|μ|` and `K`, ignoring degenerate points.
    pub fn radius_stats(&self) -> Vec<RadiusStats<T>> {
        self.samples
            .chunks(self.angles)
            .zip(&self.radii)
            .map(|(row, &r)| {
                let live = row.iter().filter(|s| !s.degenerate);
                let (max_mu, k_max) = live.fold((T::zero(), T::one()), |(m, k), s| (m.max(s.mu_abs), k.max(s.k)));
                RadiusStats { r, max_mu, k_max }
            })
            .collect()
    }

    pub fn flagged_count(&self) -> usize {
        self.samples.iter().filter(|s| s.flagged).count()
    }
}

fn sample_from<T: Real>(r: T, theta: T, w: Wirtinger<T>) -> DilatationSample<T> {
    if w.f_z.norm() < T::lit(DEGENERATE_FZ) {
        return DilatationSample {
            r,
            theta,
            mu: Complex::new(T::nan(), T::nan()),
            mu_abs: T::nan(),
            k: T::nan(),
            degenerate: true,
            flagged: false,
        };
    }
    let mu = w.dilatation();
    let mu_abs = mu.norm();
    let flagged = !(mu_abs < T::one());
    let k = if flagged { T::infinity() } else { (T::one() + mu_abs) / (T::one() - mu_abs) };
    DilatationSample { r, theta, mu, mu_abs, k, degenerate: false, flagged }
}

/// Samples `μ` on `angles` equispaced points of every circle in `radii`.
pub fn dilatation_field<T: Real>(h: &HarmonicExtension<T>, radii: &[T], angles: usize) -> Result<DilatationField<T>> {
    if angles < 8 {
        return Err(Error::Domain(format!("angles = {angles} < 8")));
    }
    let r_max = h.cfg().r_max;
    if let Some(&bad) = radii.iter().find(|&&r| !(r > T::zero() && r <= r_max)) {
        return Err(Error::Radius { radius: bad.as_f64(), r_max: r_max.as_f64() });
    }
    let step = T::two_pi() / T::from_usize_lossy(angles);
    let grid: Vec<(T, T)> =
        radii.iter().flat_map(|&r| (0..angles).map(move |k| (r, step * T::from_usize_lossy(k)))).collect();
    let samples: Vec<Result<DilatationSample<T>>> = grid
        .par_iter()
        .map(|&(r, theta)| {
            let w = h.wirtinger(Complex::from_polar(r, theta), WirtingerMode::Analytic)?;
            Ok(sample_from(r, theta, w))
        })
        .collect();
    let samples = samples.into_iter().collect::<Result<Vec<_>>>()?;
    if samples.iter().all(|s| s.degenerate) {
        return Err(Error::DegenerateField);
    }
    let k_max = samples.iter().filter(|s| !s.degenerate).fold(T::one(), |m, s| m.max(s.k));
    Ok(DilatationField { radii: radii.to_vec(), angles, samples, k_max })
}

/// How the circle-wise distortion behaves as the radius approaches one.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum DistortionTrend {
    /// Growth slope below [`PLATEAU_SLOPE`]: consistent with bounded distortion.
    Plateau,
    /// Neither clearly flat nor clearly divergent at the sampled radii.
    Rising,
    /// Growth slope at least [`DIVERGENT_SLOPE`]: consistent with unbounded distortion.
    Divergent,
}

impl DistortionTrend {
    pub fn as_str(self) -> &'static str {
        match self {
            Self::Plateau => "plateau",
            Self::Rising => "rising",
            Self::Divergent => "divergent",
        }
    }
}

pub const PLATEAU_SLOPE: f64 = 0.2;
pub const DIVERGENT_SLOPE: f64 = 0.75;

/// `d log K / d log(1/(1 − r))` between the two outermost radii.
pub fn growth_slope<T: Real>(stats: &[RadiusStats<T>]) -> Option<T> {
    let [.., a, b] = stats else { return None };
    let span = ((T::one() - a.r) / (T::one() - b.r)).ln();
    if !(span > T::zero()) {
        return None;
    }
    Some((b.k_max / a.k_max).ln() / span)
}

pub fn classify_trend<T: Real>(slope: T) -> DistortionTrend {
    if slope < T::lit(PLATEAU_SLOPE) {
        DistortionTrend::Plateau
    } else if slope < T::lit(DIVERGENT_SLOPE) {
        DistortionTrend::Rising
    } else {
        DistortionTrend::Divergent
    }
}

/// `max|μ|` over each circle is nondecreasing in `r`, up to `slack`.
pub fn mu_nondecreasing<T: Real>(stats: &[RadiusStats<T>], slack: T) -> bool {
    stats.windows(2).all(|w| w[1].max_mu >= w[0].max_mu - slack)
}

#[derive(Clone, Debug, PartialEq)]
pub struct PavlovicVerdict<T> {
    pub membership: MembershipReport<T>,
    pub radius_stats: Vec<RadiusStats<T>>,
    pub k_max: T,
    pub slope: Option<T>,
    pub trend: DistortionTrend,
    pub mu_nondecreasing: bool,
    /// False when a member shows divergent distortion or a non-member a plateau.
    pub channels_agree: bool,
}

/// Dilatation sweep parameters for [`pavlovic_verdict_with`].
#[derive(Clone, Debug, PartialEq)]
pub struct Sweep<T> {
    pub radii: Vec<T>,
    pub angles: usize,
}

impl<T: Real> Sweep<T> {
    /// Default radii not exceeding `r_max`.
    pub fn for_config(cfg: &QuadratureConfig<T>) -> Self {
        let radii = DEFAULT_RADII.iter().map(|&r| T::lit(r)).filter(|&r| r <= cfg.r_max).collect();
        Self { radii, angles: DEFAULT_ANGLES }
    }
}

pub fn pavlovic_verdict<T: Real>(
    phi: &LiftFunction<T>,
    cfg: &QuadratureConfig<T>,
    pv: &PVConfig<T>,
) -> Result<PavlovicVerdict<T>> {
    pavlovic_verdict_with(phi, cfg, pv, &MembershipConfig::from_quadrature(cfg), &Sweep::for_config(cfg))
}

/// Runs the criterion check and, independently, a dilatation sweep of `PT[e^{iφ}]`.
pub fn pavlovic_verdict_with<T: Real>(
    phi: &LiftFunction<T>,
    cfg: &QuadratureConfig<T>,
    pv: &PVConfig<T>,
    mcfg: &MembershipConfig<T>,
    sweep: &Sweep<T>,
) -> Result<PavlovicVerdict<T>> {
    let membership = check_membership_with(phi, mcfg, pv)?;
    let h = HarmonicExtension::new(phi.clone(), *cfg);
    let field = dilatation_field(&h, &sweep.radii, sweep.angles)?;
    let radius_stats = field.radius_stats();
    let slope = growth_slope(&radius_stats);
    let trend = slope.map_or(DistortionTrend::Rising, classify_trend);
    let channels_agree = match membership.verdict {
        MembershipVerdict::Member => trend != DistortionTrend::Divergent,
        MembershipVerdict::NonMember => trend != DistortionTrend::Plateau,
        MembershipVerdict::Inconclusive => true,
    };
    Ok(PavlovicVerdict {
        mu_nondecreasing: mu_nondecreasing(&radius_stats, T::lit(1e-3)),
        membership,
        radius_stats,
        k_max: field.k_max,
        slope,
        trend,
        channels_agree,
    })
}

/// The map `φ ↦ PT[e^{iφ}]`, defined only on admissible lifts.
pub fn lambda_map<T: Real>(
    phi: &LiftFunction<T>,
    cfg: &QuadratureConfig<T>,
    pv: &PVConfig<T>,
) -> Result<HarmonicExtension<T>> {
    if phi.is_weak_only() {
        return Err(Error::NotMember(format!("`{}` is only a weak homeomorphism", phi.label())));
    }
    let report = check_membership_with(phi, &MembershipConfig::from_quadrature(cfg), pv)?;
    if !report.is_member() {
        return Err(Error::NotMember(format!(
            "`{}`: verdict {} ({:?})",
            phi.label(),
            report.verdict.as_str(),
            report.findings
        )));
    }
    Ok(HarmonicExtension::new(phi.clone(), *cfg))
}

/// `α(βz + 2i Arg(γ − e^{−βz})) + δ`, a harmonic map whose inverse is harmonic.
pub fn choquet_deny<T: Real>(
    alpha: Complex<T>,
    beta: Complex<T>,
    gamma: Complex<T>,
    delta: Complex<T>,
    z: Complex<T>,
) -> Result<Complex<T>> {
    let zero = Complex::new(T::zero(), T::zero());
    for (name, v) in [("alpha", alpha), ("beta", beta), ("gamma", gamma)] {
        if v == zero {
            return Err(Error::Domain(format!("Choquet–Deny parameter {name} must be nonzero")));
        }
    }
    let e = (-beta * z).exp();
    if !(e.norm() < gamma.norm()) {
        return Err(Error::Domain(format!("Choquet–Deny needs |e^(-βz)| < |γ|: {} ≥ {}", e.norm(), gamma.norm())));
    }
    let w = gamma - e;
    let arg = w.im.atan2(w.re);
    let two_i = Complex::new(T::zero(), T::lit(2.0));
    Ok(alpha * (beta * z + two_i * arg) + delta)
}
