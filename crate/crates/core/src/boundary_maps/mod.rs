//! Angular lifts of circle maps and the boundary maps they induce.
//!
//! A lift `φ` is stored as its restriction to `[0, 2π]` together with
//! optional derivative information; [`LiftFunction::eval`] applies the
//! canonical extension `φ(t + 2kπ) = φ(t) + 2kπ` on the whole real line.

mod membership;

use std::fmt;
use std::sync::Arc;

use num_complex::Complex;

use crate::error::{Error, Result};
use crate::Real;

pub use membership::{
    check_membership, check_membership_with, MembershipConfig, MembershipFinding, MembershipReport, MembershipVerdict,
};

/// Shared real-to-real evaluator.
pub type RealFn<T> = Arc<dyn Fn(T) -> T + Send + Sync>;

/// Continuous nondecreasing lift with total increase `2π` over one period.
#[derive(Clone)]
pub struct LiftFunction<T: Real> {
    label: String,
    base: RealFn<T>,
    derivative: Option<RealFn<T>>,
    breakpoints: Vec<T>,
    weak_only: bool,
}

impl<T: Real> fmt::Debug for LiftFunction<T> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("LiftFunction")
            .field("label", &self.label)
            .field("has_derivative", &self.derivative.is_some())
            .field("breakpoints", &self.breakpoints)
            .field("weak_only", &self.weak_only)
            .finish()
    }
}

impl<T: Real> LiftFunction<T> {
    /// Wraps an evaluator defined on `[0, 2π]`.
    pub fn new(label: impl Into<String>, base: impl Fn(T) -> T + Send + Sync + 'static) -> Self {
        Self { label: label.into(), base: Arc::new(base), derivative: None, breakpoints: Vec::new(), weak_only: false }
    }

    pub fn with_derivative(mut self, d: impl Fn(T) -> T + Send + Sync + 'static) -> Self {
        self.derivative = Some(Arc::new(d));
        self
    }

    /// Angles in `[0, 2π]` where the derivative may fail to exist.
    pub fn with_breakpoints(mut self, mut breakpoints: Vec<T>) -> Self {
        breakpoints.sort_by(|a, b| a.partial_cmp(b).expect("finite breakpoints"));
        breakpoints.dedup();
        self.breakpoints = breakpoints;
        self
    }

    /// Marks the lift as nondecreasing but not strictly increasing.
    pub fn with_weak_only(mut self, weak_only: bool) -> Self {
        self.weak_only = weak_only;
        self
    }

    pub fn label(&self) -> &str {
        &self.label
    }

    pub fn breakpoints(&self) -> &[T] {
        &self.breakpoints
    }

    pub fn has_derivative(&self) -> bool {
        self.derivative.is_some()
    }

    pub fn is_weak_only(&self) -> bool {
        self.weak_only
    }

    /// Splits `t` into `s ∈ [0, 2π)` and `k` with `t = s + 2kπ`.
    fn reduce(t: T) -> (T, T) {
        let tau = T::two_pi();
        let mut k = (t / tau).floor();
        let mut s = t - k * tau;
        if s >= tau {
            s = s - tau;
            k = k + T::one();
        } else if s < T::zero() {
            s = s + tau;
            k = k - T::one();
        }
        (s.max(T::zero()), k)
    }

    /// Canonically extended lift evaluated at any real angle.
    pub fn eval(&self, t: T) -> T {
        let (s, k) = Self::reduce(t);
        (self.base)(s) + k * T::two_pi()
    }

    /// The lift restricted to `[0, 2π]`, without reduction.
    pub fn eval_base(&self, t: T) -> T {
        (self.base)(t)
    }

    /// Derivative of the extended lift; `2π`-periodic.
    pub fn derivative(&self, t: T) -> Option<T> {
        let d = self.derivative.as_ref()?;
        let (s, _) = Self::reduce(t);
        Some(d(s))
    }

    pub fn total_increase(&self) -> T {
        (self.base)(T::two_pi()) - (self.base)(T::zero())
    }

    /// Pointwise shift `φ + α`; the induced circle map is post-composed with a rotation.
    pub fn rotated(&self, alpha: T) -> Self {
        let base = Arc::clone(&self.base);
        Self {
            label: format!("{}+rot({})", self.label, alpha),
            base: Arc::new(move |t| base(t) + alpha),
            derivative: self.derivative.clone(),
            breakpoints: self.breakpoints.clone(),
            weak_only: self.weak_only,
        }
    }

    /// Checks finiteness, total increase and sampled monotonicity on `mesh` cells.
    pub fn validate(&self, mesh: usize) -> Result<()> {
        let tol = T::lit(1e-12);
        let start = self.eval_base(T::zero());
        if !start.is_finite() {
            return Err(Error::NonFinite { t: 0.0 });
        }
        let inc = self.total_increase();
        if (inc - T::two_pi()).abs() > T::lit(1e-9) {
            return Err(Error::Domain(format!("lift `{}` has total increase {} instead of 2π", self.label, inc)));
        }
        let mesh = mesh.max(1);
        let step = T::two_pi() / T::from_usize_lossy(mesh);
        let mut prev = start;
        for i in 1..=mesh {
            let t = step * T::from_usize_lossy(i);
            let v = self.eval_base(t);
            if !v.is_finite() {
                return Err(Error::NonFinite { t: t.as_f64() });
            }
            if v < prev - tol {
                return Err(Error::Domain(format!("lift `{}` decreases near t = {}", self.label, t)));
            }
            prev = v;
        }
        Ok(())
    }
}

/// Identity lift `φ(t) = t`.
pub fn identity<T: Real>() -> LiftFunction<T> {
    LiftFunction::new("identity", |t| t).with_derivative(|_| T::one())
}

/// Piecewise-linear unit-interval map with a flat middle segment.
pub fn example3_unit<T: Real>(x: T) -> T {
    let third = T::lit(1.0 / 3.0);
    if x <= third {
        T::lit(2.0) * x
    } else if x <= T::lit(0.75) {
        T::lit(2.0 / 3.0)
    } else {
        T::lit(4.0 / 3.0) * x - third
    }
}

fn example3_unit_derivative<T: Real>(x: T) -> T {
    if x < T::lit(1.0 / 3.0) {
        T::lit(2.0)
    } else if x < T::lit(0.75) {
        T::zero()
    } else {
        T::lit(4.0 / 3.0)
    }
}

/// Lift `2π·φ(t/2π)` of the piecewise map that collapses `[1/3, 3/4]` to a point.
///
/// The induced circle map is a weak homeomorphism: the arc
/// `[2π/3, 3π/2]` is sent to a single point.
pub fn make_example3<T: Real>() -> LiftFunction<T> {
    let tau = T::two_pi();
    LiftFunction::new("example3", move |t: T| tau * example3_unit(t / tau))
        .with_derivative(move |t: T| example3_unit_derivative(t / tau))
        .with_breakpoints(vec![tau / T::lit(3.0), tau * T::lit(0.75)])
        .with_weak_only(true)
}

/// `ψ₀(x) = 6x⁵ − 15x⁴ + 10x³`.
pub fn smoothstep_unit<T: Real>(x: T) -> T {
    x * x * x * (x * (x * T::lit(6.0) - T::lit(15.0)) + T::lit(10.0))
}

/// `ψ₀'(x) = 30x²(1 − x)²`.
pub fn smoothstep_unit_derivative<T: Real>(x: T) -> T {
    let y = x * (T::one() - x);
    T::lit(30.0) * y * y
}

/// `ψ₀''(x) = 60x(1 − x)(1 − 2x)`.
pub fn smoothstep_unit_second<T: Real>(x: T) -> T {
    T::lit(60.0) * x * (T::one() - x) * (T::one() - T::lit(2.0) * x)
}

/// Lift `π(ψ₀(t/2π) + t/2π)` built on the quintic smoothstep.
pub fn make_smoothstep<T: Real>() -> LiftFunction<T> {
    let tau = T::two_pi();
    let pi = T::PI();
    LiftFunction::new("smoothstep", move |t: T| {
        let x = (t / tau).max(T::zero()).min(T::one());
        pi * (smoothstep_unit(x) + x)
    })
    .with_derivative(move |t: T| {
        let x = (t / tau).max(T::zero()).min(T::one());
        (smoothstep_unit_derivative(x) + T::one()) / T::lit(2.0)
    })
}

/// Lift of the boundary trace of the disk automorphism `z ↦ (z − a)/(1 − āz)`.
///
/// On the circle the automorphism equals `e^{it}·w/w̄` with `w = 1 − a e^{−it}`,
/// so its lift is `t + 2 arg w`, continuous because `Re w > 0`.
pub fn mobius_trace<T: Real>(a: Complex<T>) -> Result<LiftFunction<T>> {
    if !(a.norm() < T::one()) {
        return Err(Error::Domain(format!("Möbius parameter |a| = {} must be < 1", a.norm())));
    }
    let one_minus = T::one() - a.norm_sqr();
    Ok(LiftFunction::new(format!("mobius({},{})", a.re, a.im), move |t: T| {
        let w = Complex::new(T::one(), T::zero()) - a * Complex::from_polar(T::one(), -t);
        t + T::lit(2.0) * w.im.atan2(w.re)
    })
    .with_derivative(move |t: T| {
        let d = Complex::from_polar(T::one(), t) - a;
        one_minus / d.norm_sqr()
    }))
}

/// Pointwise convex combination `λφ₁ + (1 − λ)φ₂`.
pub fn convex_combination<T: Real>(
    phi1: &LiftFunction<T>,
    phi2: &LiftFunction<T>,
    lambda: T,
) -> Result<LiftFunction<T>> {
    if !(lambda >= T::zero() && lambda <= T::one()) {
        return Err(Error::Domain(format!("λ = {lambda} outside [0, 1]")));
    }
    let mu = T::one() - lambda;
    let (b1, b2) = (Arc::clone(&phi1.base), Arc::clone(&phi2.base));
    let mut out = LiftFunction::new(format!("{}*{}+{}*{}", lambda, phi1.label, mu, phi2.label), move |t| {
        lambda * b1(t) + mu * b2(t)
    });
    if let (Some(d1), Some(d2)) = (phi1.derivative.clone(), phi2.derivative.clone()) {
        out = out.with_derivative(move |t| lambda * d1(t) + mu * d2(t));
    }
    let mut bps = phi1.breakpoints.clone();
    bps.extend_from_slice(&phi2.breakpoints);
    let weak = if lambda == T::one() {
        phi1.weak_only
    } else if lambda == T::zero() {
        phi2.weak_only
    } else {
        phi1.weak_only && phi2.weak_only
    };
    Ok(out.with_breakpoints(bps).with_weak_only(weak))
}

/// Circle map `e^{it} ↦ e^{iφ(t)}`.
#[derive(Clone, Debug)]
pub struct BoundaryMap<T: Real> {
    pub lift: LiftFunction<T>,
    /// Nondecreasing but not strictly increasing lift: a weak homeomorphism.
    pub weak_only: bool,
}

impl<T: Real> BoundaryMap<T> {
    pub fn new(lift: LiftFunction<T>) -> Self {
        let weak_only = lift.is_weak_only();
        Self { lift, weak_only }
    }

    /// `e^{iφ(t)}`.
    pub fn at(&self, t: T) -> Complex<T> {
        Complex::from_polar(T::one(), self.lift.eval(t))
    }
}

impl<T: Real> From<LiftFunction<T>> for BoundaryMap<T> {
    fn from(lift: LiftFunction<T>) -> Self {
        Self::new(lift)
    }
}

/// Difference-quotient bounds of a lift over one period.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct BiLipschitz<T> {
    /// Largest sampled quotient, the Lipschitz constant `L⁺`.
    pub upper: T,
    /// Smallest sampled absolute quotient, `L⁻`.
    pub lower: T,
    /// Smallest signed quotient; positive iff strictly increasing at mesh scale.
    pub min_quotient: T,
}

/// Sample nodes: uniform on `[0, 2π]` plus a bisection of every cell touching a breakpoint.
fn refined_mesh<T: Real>(mesh: usize, breakpoints: &[T]) -> Vec<T> {
    let tau = T::two_pi();
    let h = tau / T::from_usize_lossy(mesh);
    let mut nodes: Vec<T> = (0..=mesh).map(|i| h * T::from_usize_lossy(i)).collect();
    nodes[mesh] = tau;
    let half = h / T::lit(2.0);
    for &b in breakpoints {
        if b <= T::zero() || b >= tau {
            continue;
        }
        let cell = (b / h).floor();
        let left = cell * h;
        nodes.push(b);
        for c in [left - half, left + half, left + h + half] {
            if c > T::zero() && c < tau {
                nodes.push(c);
            }
        }
    }
    nodes.sort_by(|a, b| a.partial_cmp(b).expect("finite mesh"));
    nodes.dedup();
    nodes
}

/// Estimates `(L⁺, L⁻)` from difference quotients on a uniform mesh of
/// `mesh` cells, refined once around the lift's breakpoints.
pub fn estimate_bilipschitz<T: Real>(phi: &LiftFunction<T>, mesh: usize) -> Result<BiLipschitz<T>> {
    if mesh < 16 {
        return Err(Error::Domain(format!("mesh = {mesh} < 16")));
    }
    let nodes = refined_mesh(mesh, &phi.breakpoints);
    let values: Vec<T> = nodes.iter().map(|&t| phi.eval_base(t)).collect();
    let mut est = BiLipschitz { upper: T::zero(), lower: T::infinity(), min_quotient: T::infinity() };
    for (w_t, w_v) in nodes.windows(2).zip(values.windows(2)) {
        let q = (w_v[1] - w_v[0]) / (w_t[1] - w_t[0]);
        if !q.is_finite() {
            return Err(Error::NonFinite { t: w_t[0].as_f64() });
        }
        est.upper = est.upper.max(q.abs());
        est.lower = est.lower.min(q.abs());
        est.min_quotient = est.min_quotient.min(q);
    }
    Ok(est)
}

/// `max_t |φ₁(t) − φ₂(t)|` over `mesh` uniform cells of `[0, 2π]`, endpoints included.
pub fn lift_sup_distance<T: Real>(phi1: &LiftFunction<T>, phi2: &LiftFunction<T>, mesh: usize) -> T {
    let h = T::two_pi() / T::from_usize_lossy(mesh.max(1));
    (0..=mesh.max(1))
        .map(|i| {
            let t = h * T::from_usize_lossy(i);
            (phi1.eval_base(t) - phi2.eval_base(t)).abs()
        })
        .fold(T::zero(), T::max)
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::f64::consts::{PI, TAU};

    #[test]
    fn identity_extension() {
        let id = identity::<f64>();
        assert_eq!(id.eval(TAU + 1.0), TAU + 1.0);
        assert!((id.eval(-3.0) + 3.0).abs() < 1e-15);
    }

    #[test]
    fn shifted_argument_adds_two_pi() {
        let phi = make_smoothstep::<f64>();
        for &t0 in &[0.0, 0.3, 1.7, 4.0, 6.2] {
            assert!((phi.eval(t0 + TAU) - (phi.eval(t0) + TAU)).abs() < 1e-13);
        }
    }

    #[test]
    fn example3_negative_branch() {
        let phi = make_example3::<f64>();
        let t = -TAU / 3.0;
        let expected = phi.eval_base(2.0 * TAU / 3.0) - TAU;
        assert!((phi.eval(t) - expected).abs() < 1e-14);
    }

    #[test]
    fn example3_unit_values() {
        assert_eq!(example3_unit(1.0f64 / 3.0), 2.0 / 3.0);
        assert_eq!(example3_unit(0.75f64), 2.0 / 3.0);
        assert_eq!(example3_unit(1.0f64), 1.0);
        let phi = make_example3::<f64>();
        assert!(phi.is_weak_only());
        assert_eq!(phi.breakpoints().len(), 2);
        assert!((phi.total_increase() - TAU).abs() < 1e-12);
    }

    #[test]
    fn smoothstep_values() {
        assert_eq!(smoothstep_unit(0.5f64), 0.5);
        assert_eq!(smoothstep_unit_derivative(0.0f64), 0.0);
        assert_eq!(smoothstep_unit_derivative(1.0f64), 0.0);
        assert_eq!(smoothstep_unit_second(0.0f64), 0.0);
        assert_eq!(smoothstep_unit_second(1.0f64), 0.0);
        assert!((smoothstep_unit(0.25f64) - 0.103515625).abs() < 1e-15);
        assert!((smoothstep_unit_derivative(0.5f64) - 15.0 / 8.0).abs() < 1e-15);
    }

    #[test]
    fn convex_combination_rejects_bad_lambda() {
        let id = identity::<f64>();
        assert!(matches!(convex_combination(&id, &id, 1.5), Err(Error::Domain(_))));
        assert!(matches!(convex_combination(&id, &id, -0.1), Err(Error::Domain(_))));
        assert!(convex_combination(&id, &id, f64::NAN).is_err());
    }

    #[test]
    fn convex_combination_endpoints_and_midpoint() {
        let s = make_smoothstep::<f64>();
        let id = identity::<f64>();
        let c1 = convex_combination(&s, &id, 1.0).unwrap();
        let half = convex_combination(&s, &id, 0.5).unwrap();
        let same = convex_combination(&s, &s, 0.37).unwrap();
        for i in 0..50 {
            let t = i as f64 * 0.13;
            assert_eq!(c1.eval(t), s.eval(t));
            assert!((same.eval(t) - s.eval(t)).abs() < 1e-14);
        }
        let mid = 0.5 * (s.eval(PI) + id.eval(PI));
        assert!((half.eval(PI) - mid).abs() < 1e-15);
    }

    #[test]
    fn bilipschitz_identity_and_example3() {
        let est = estimate_bilipschitz(&identity::<f64>(), 1024).unwrap();
        assert!((est.upper - 1.0).abs() < 1e-12 && (est.lower - 1.0).abs() < 1e-12);
        let e3 = estimate_bilipschitz(&make_example3::<f64>(), 1024).unwrap();
        assert_eq!(e3.lower, 0.0);
        assert!((e3.upper - 2.0).abs() < 1e-9);
        assert!(estimate_bilipschitz(&identity::<f64>(), 8).is_err());
    }

    #[test]
    fn bilipschitz_smoothstep_upper() {
        let est = estimate_bilipschitz(&make_smoothstep::<f64>(), 8192).unwrap();
        assert!((est.upper - 1.4375).abs() < 1e-6, "{}", est.upper);
        assert!((est.lower - 0.5).abs() < 1e-6);
    }

    #[test]
    fn mobius_trace_is_degree_one_lift() {
        let phi = mobius_trace(Complex::new(0.3, -0.2)).unwrap();
        assert!((phi.total_increase() - TAU).abs() < 1e-12);
        phi.validate(4096).unwrap();
        let a = Complex::new(0.3, -0.2);
        for i in 0..16 {
            let t = i as f64 * 0.4;
            let z = Complex::from_polar(1.0, t);
            let w = (z - a) / (Complex::new(1.0, 0.0) - a.conj() * z);
            let b = BoundaryMap::new(phi.clone()).at(t);
            assert!((w - b).norm() < 1e-14);
        }
        assert!(mobius_trace(Complex::new(1.0, 0.0)).is_err());
    }

    #[test]
    fn refined_mesh_contains_breakpoints() {
        let bps = [TAU / 3.0, 1.5 * PI];
        let m = refined_mesh(64, &bps);
        for b in bps {
            assert!(m.contains(&b));
        }
        assert!(m.windows(2).all(|w| w[0] < w[1]));
    }
}
