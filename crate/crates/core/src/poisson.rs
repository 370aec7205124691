//! Poisson transformation of boundary maps.
//!
//! `PT[γ](z) = (1/2π) ∫ P(z, t) γ(e^{it}) dt` with the Poisson kernel
//! `P(z, t) = (1 − |z|²) / |e^{it} − z|²`, discretised by the periodic
//! trapezoid rule on `nodes` equispaced angles. The discrete sum is itself a
//! finite combination of harmonic functions of `z`, so harmonicity
//! residuals measure only the finite-difference stencil.
//!
//! Accuracy degrades as `|z| → 1` because the kernel peaks with width
//! `≈ 1 − |z|`. Configurations must satisfy `nodes ≥ 64 / (1 − r_max)` and
//! every evaluation is refused beyond `r_max`.

use num_complex::Complex;
use rayon::prelude::*;

use crate::boundary_maps::BoundaryMap;
use crate::error::{Error, Result};
use crate::Real;

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct QuadratureConfig<T> {
    /// Trapezoid node count; a power of two.
    pub nodes: usize,
    /// Largest certified interior radius.
    pub r_max: T,
    /// Smallest difference quotient still counted as strictly increasing.
    pub flatness_floor: T,
}

impl<T: Real> QuadratureConfig<T> {
    pub fn new(nodes: usize, r_max: T, flatness_floor: T) -> Result<Self> {
        if nodes < 128 || !nodes.is_power_of_two() {
            return Err(Error::Config(format!("nodes = {nodes} must be a power of two ≥ 128")));
        }
        if !(r_max > T::zero() && r_max < T::one()) {
            return Err(Error::Config(format!("r_max = {r_max} must lie in (0, 1)")));
        }
        let needed = T::lit(64.0) / (T::one() - r_max);
        if T::from_usize_lossy(nodes) < needed {
            return Err(Error::Config(format!(
                "nodes = {nodes} below 64/(1 − r_max) = {needed:.0} for r_max = {r_max}"
            )));
        }
        if !(flatness_floor > T::zero()) {
            return Err(Error::Config("flatness_floor must be positive".into()));
        }
        Ok(Self { nodes, r_max, flatness_floor })
    }

    /// Default floor, explicit node count and radius.
    pub fn with_nodes(nodes: usize, r_max: T) -> Result<Self> {
        Self::new(nodes, r_max, T::lit(1e-6))
    }
}

impl<T: Real> Default for QuadratureConfig<T> {
    fn default() -> Self {
        Self { nodes: 8192, r_max: T::lit(0.99), flatness_floor: T::lit(1e-6) }
    }
}

/// `(1 − r²) / (1 − 2r cos θ + r²)` for `0 ≤ r < 1`.
pub fn poisson_kernel<T: Real>(r: T, theta: T) -> Result<T> {
    if !(r >= T::zero() && r < T::one()) {
        return Err(Error::Domain(format!("Poisson kernel needs 0 ≤ r < 1, got {r}")));
    }
    let r2 = r * r;
    Ok((T::one() - r2) / (T::one() - T::lit(2.0) * r * theta.cos() + r2))
}

/// Derivative evaluation strategy for [`PoissonIntegral::wirtinger`].
#[derive(Clone, Copy, Debug, PartialEq, Eq, Default)]
pub enum WirtingerMode {
    /// Kernel differentiated under the integral sign.
    #[default]
    Analytic,
    /// Central differences; a cross-check only.
    FiniteDifference,
}

/// The pair `(f_z, f_z̄)`.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Wirtinger<T> {
    pub f_z: Complex<T>,
    pub f_zbar: Complex<T>,
}

impl<T: Real> Wirtinger<T> {
    /// `|f_z|² − |f_z̄|²`.
    pub fn jacobian(&self) -> T {
        self.f_z.norm_sqr() - self.f_zbar.norm_sqr()
    }

    /// Complex dilatation `f_z̄ / f_z`.
    pub fn dilatation(&self) -> Complex<T> {
        self.f_zbar / self.f_z
    }
}

/// Trapezoid-discretised Poisson integral of arbitrary boundary samples.
#[derive(Clone, Debug)]
pub struct PoissonIntegral<T: Real> {
    cfg: QuadratureConfig<T>,
    zeta: Vec<Complex<T>>,
    values: Vec<Complex<T>>,
}

impl<T: Real> PoissonIntegral<T> {
    /// Samples `boundary(t)` at `t_j = 2πj / nodes`.
    pub fn from_fn(cfg: QuadratureConfig<T>, boundary: impl Fn(T) -> Complex<T>) -> Self {
        let n = cfg.nodes;
        let step = T::two_pi() / T::from_usize_lossy(n);
        let (zeta, values) = (0..n)
            .map(|j| {
                let t = step * T::from_usize_lossy(j);
                (Complex::from_polar(T::one(), t), boundary(t))
            })
            .unzip();
        Self { cfg, zeta, values }
    }

    pub fn cfg(&self) -> &QuadratureConfig<T> {
        &self.cfg
    }

    fn guard(&self, z: Complex<T>) -> Result<()> {
        let r = z.norm();
        // A few ulps of slack so that `from_polar(r_max, θ)` is accepted.
        if !(r <= self.cfg.r_max * (T::one() + T::lit(8.0) * T::epsilon())) {
            return Err(Error::Radius { radius: r.as_f64(), r_max: self.cfg.r_max.as_f64() });
        }
        Ok(())
    }

    fn eval_unchecked(&self, z: Complex<T>) -> Complex<T> {
        let numer = T::one() - z.norm_sqr();
        let mut acc = Complex::new(T::zero(), T::zero());
        for (&zeta, &g) in self.zeta.iter().zip(&self.values) {
            acc = acc + g * (numer / (zeta - z).norm_sqr());
        }
        acc / T::from_usize_lossy(self.zeta.len())
    }

    /// Harmonic extension at `|z| ≤ r_max`.
    pub fn extend(&self, z: Complex<T>) -> Result<Complex<T>> {
        self.guard(z)?;
        Ok(self.eval_unchecked(z))
    }

    fn wirtinger_analytic(&self, z: Complex<T>) -> Wirtinger<T> {
        // ∂_z P = ζ/(ζ − z)², ∂_z̄ P = conj(∂_z P).
        let mut fz = Complex::new(T::zero(), T::zero());
        let mut fzb = fz;
        for (&zeta, &g) in self.zeta.iter().zip(&self.values) {
            let d = zeta - z;
            let k = zeta / (d * d);
            fz = fz + g * k;
            fzb = fzb + g * k.conj();
        }
        let n = T::from_usize_lossy(self.zeta.len());
        Wirtinger { f_z: fz / n, f_zbar: fzb / n }
    }

    pub fn wirtinger(&self, z: Complex<T>, mode: WirtingerMode) -> Result<Wirtinger<T>> {
        self.guard(z)?;
        Ok(match mode {
            WirtingerMode::Analytic => self.wirtinger_analytic(z),
            WirtingerMode::FiniteDifference => {
                let step = T::lit(1e-5) * (T::one() - z.norm());
                wirtinger_fd(|w| self.eval_unchecked(w), z, step)
            }
        })
    }

    pub fn laplacian_residual(&self, z: Complex<T>, step: T) -> Result<T> {
        if z.norm() + T::lit(2.0) * step > self.cfg.r_max {
            return Err(Error::Radius {
                radius: (z.norm() + T::lit(2.0) * step).as_f64(),
                r_max: self.cfg.r_max.as_f64(),
            });
        }
        Ok(laplacian_residual_fn(|w| self.eval_unchecked(w), z, step))
    }
}

/// Wirtinger pair of an arbitrary map by central differences.
pub fn wirtinger_fd<T: Real>(f: impl Fn(Complex<T>) -> Complex<T>, z: Complex<T>, step: T) -> Wirtinger<T> {
    let dx = Complex::new(step, T::zero());
    let dy = Complex::new(T::zero(), step);
    let two_h = T::lit(2.0) * step;
    let fx = (f(z + dx) - f(z - dx)) / two_h;
    let fy = (f(z + dy) - f(z - dy)) / two_h;
    let i = Complex::new(T::zero(), T::one());
    let half = T::lit(0.5);
    Wirtinger { f_z: (fx - i * fy) * half, f_zbar: (fx + i * fy) * half }
}

/// Modulus of the five-point discrete Laplacian `(Σ f(z ± h, z ± ih) − 4f(z)) / h²`.
pub fn laplacian_residual_fn<T: Real>(f: impl Fn(Complex<T>) -> Complex<T>, z: Complex<T>, step: T) -> T {
    let dx = Complex::new(step, T::zero());
    let dy = Complex::new(T::zero(), step);
    let sum = f(z + dx) + f(z - dx) + f(z + dy) + f(z - dy) - f(z) * T::lit(4.0);
    (sum / (step * step)).norm()
}

/// Poisson extension of a [`BoundaryMap`].
#[derive(Clone, Debug)]
pub struct HarmonicExtension<T: Real> {
    boundary: BoundaryMap<T>,
    integral: PoissonIntegral<T>,
}

impl<T: Real> HarmonicExtension<T> {
    pub fn new(boundary: impl Into<BoundaryMap<T>>, cfg: QuadratureConfig<T>) -> Self {
        let boundary = boundary.into();
        let integral = PoissonIntegral::from_fn(cfg, |t| boundary.at(t));
        Self { boundary, integral }
    }

    pub fn boundary(&self) -> &BoundaryMap<T> {
        &self.boundary
    }

    pub fn cfg(&self) -> &QuadratureConfig<T> {
        self.integral.cfg()
    }

    pub fn integral(&self) -> &PoissonIntegral<T> {
        &self.integral
    }

    pub fn extend(&self, z: Complex<T>) -> Result<Complex<T>> {
        self.integral.extend(z)
    }

    pub fn wirtinger(&self, z: Complex<T>, mode: WirtingerMode) -> Result<Wirtinger<T>> {
        self.integral.wirtinger(z, mode)
    }

    pub fn laplacian_residual(&self, z: Complex<T>, step: T) -> Result<T> {
        self.integral.laplacian_residual(z, step)
    }
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct SupDistance<T> {
    /// `max_t |e^{iφ₁(t)} − e^{iφ₂(t)}|`, the sup-distance of the extensions.
    pub chord: T,
    /// `max_t |φ₁(t) − φ₂(t)|`, which dominates `chord`.
    pub lift: T,
}

/// Sup-distance of two extensions read off the boundary via the maximum principle.
pub fn sup_distance<T: Real>(h1: &HarmonicExtension<T>, h2: &HarmonicExtension<T>, samples: usize) -> SupDistance<T> {
    debug_assert_eq!(h1.cfg(), h2.cfg(), "extensions must share a configuration");
    let samples = samples.max(1);
    let step = T::two_pi() / T::from_usize_lossy(samples);
    let (l1, l2) = (&h1.boundary.lift, &h2.boundary.lift);
    (0..samples).fold(SupDistance { chord: T::zero(), lift: T::zero() }, |acc, k| {
        let t = step * T::from_usize_lossy(k);
        let (a, b) = (l1.eval(t), l2.eval(t));
        let chord = (Complex::from_polar(T::one(), a) - Complex::from_polar(T::one(), b)).norm();
        SupDistance { chord: acc.chord.max(chord), lift: acc.lift.max((a - b).abs()) }
    })
}

/// `max |PT₁(z) − PT₂(z)|` over a polar grid of interior points.
pub fn interior_sup_distance<T: Real>(
    h1: &HarmonicExtension<T>,
    h2: &HarmonicExtension<T>,
    radii: &[T],
    angles: usize,
) -> Result<T> {
    let points = polar_points(radii, angles);
    let diffs: Vec<Result<T>> = points.par_iter().map(|&z| Ok((h1.extend(z)? - h2.extend(z)?).norm())).collect();
    diffs.into_iter().try_fold(T::zero(), |m, d| Ok(m.max(d?)))
}

/// Grid points `r e^{2πik/angles}` in radius-major order.
pub fn polar_points<T: Real>(radii: &[T], angles: usize) -> Vec<Complex<T>> {
    let step = T::two_pi() / T::from_usize_lossy(angles.max(1));
    radii
        .iter()
        .flat_map(|&r| (0..angles).map(move |k| Complex::from_polar(r, step * T::from_usize_lossy(k))))
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::boundary_maps::{identity, make_smoothstep, mobius_trace};
    use std::f64::consts::PI;

    fn c(re: f64, im: f64) -> Complex<f64> {
        Complex::new(re, im)
    }

    #[test]
    fn kernel_values() {
        assert_eq!(poisson_kernel(0.0f64, 1.234).unwrap(), 1.0);
        assert!((poisson_kernel(0.5f64, 0.0).unwrap() - 3.0).abs() < 1e-15);
        assert!((poisson_kernel(0.5, PI).unwrap() - 1.0 / 3.0).abs() < 1e-15);
        assert!(poisson_kernel(1.0f64, 0.0).is_err());
        assert!(poisson_kernel(-0.1f64, 0.0).is_err());
    }

    #[test]
    fn config_rules() {
        assert!(QuadratureConfig::<f64>::with_nodes(1000, 0.5).is_err());
        assert!(QuadratureConfig::<f64>::with_nodes(64, 0.5).is_err());
        assert!(QuadratureConfig::<f64>::with_nodes(1024, 0.99).is_err());
        assert!(QuadratureConfig::<f64>::with_nodes(8192, 0.99).is_ok());
        assert!(QuadratureConfig::<f64>::with_nodes(1024, 1.0).is_err());
        assert!(QuadratureConfig::<f64>::new(1024, 0.9, 0.0).is_err());
        let d = QuadratureConfig::<f64>::default();
        assert_eq!(QuadratureConfig::new(d.nodes, d.r_max, d.flatness_floor).unwrap(), d);
    }

    #[test]
    fn radius_guard() {
        let cfg = QuadratureConfig::with_nodes(1024, 0.9).unwrap();
        let h = HarmonicExtension::new(identity::<f64>(), cfg);
        match h.extend(c(0.95, 0.0)) {
            Err(Error::Radius { r_max, .. }) => assert_eq!(r_max, 0.9),
            other => panic!("{other:?}"),
        }
        assert!(h.wirtinger(c(0.0, 0.91), WirtingerMode::Analytic).is_err());
        assert!(h.laplacian_residual(c(0.89, 0.0), 0.01).is_err());
    }

    #[test]
    fn constant_boundary_is_reproduced() {
        let cfg = QuadratureConfig::with_nodes(1024, 0.9).unwrap();
        let k = c(0.3, -0.7);
        let p = PoissonIntegral::from_fn(cfg, |_| k);
        for z in polar_points(&[0.0, 0.4, 0.9], 7) {
            assert!((p.extend(z).unwrap() - k).norm() < 1e-12);
        }
    }

    #[test]
    fn identity_wirtinger() {
        let cfg = QuadratureConfig::with_nodes(1024, 0.9).unwrap();
        let h = HarmonicExtension::new(identity::<f64>(), cfg);
        for z in [c(0.0, 0.0), c(0.5, -0.2), c(-0.1, 0.85)] {
            let w = h.wirtinger(z, WirtingerMode::Analytic).unwrap();
            assert!((w.f_z - c(1.0, 0.0)).norm() < 1e-8);
            assert!(w.f_zbar.norm() < 1e-8);
        }
    }

    #[test]
    fn mobius_derivative_at_origin() {
        let cfg = QuadratureConfig::with_nodes(1024, 0.9).unwrap();
        let h = HarmonicExtension::new(mobius_trace(c(0.3, 0.0)).unwrap(), cfg);
        let w = h.wirtinger(c(0.0, 0.0), WirtingerMode::Analytic).unwrap();
        assert!((w.f_z - c(0.91, 0.0)).norm() < 1e-7);
        assert!(w.f_zbar.norm() < 1e-7);
        assert!((h.extend(c(0.0, 0.0)).unwrap() - c(-0.3, 0.0)).norm() < 1e-8);
    }

    #[test]
    fn analytic_and_finite_difference_agree() {
        let cfg = QuadratureConfig::with_nodes(2048, 0.95).unwrap();
        let h = HarmonicExtension::new(make_smoothstep::<f64>(), cfg);
        for z in [c(0.1, 0.2), c(-0.6, 0.3), c(0.0, -0.9)] {
            let a = h.wirtinger(z, WirtingerMode::Analytic).unwrap();
            let f = h.wirtinger(z, WirtingerMode::FiniteDifference).unwrap();
            assert!((a.f_z - f.f_z).norm() < 1e-5, "{z}: {a:?} vs {f:?}");
            assert!((a.f_zbar - f.f_zbar).norm() < 1e-5);
        }
    }

    #[test]
    fn laplacian_of_identity_and_control() {
        let cfg = QuadratureConfig::with_nodes(1024, 0.9).unwrap();
        let h = HarmonicExtension::new(identity::<f64>(), cfg);
        let z = c(0.2, 0.1);
        assert!(h.laplacian_residual(z, 1e-3).unwrap() <= 1e-6);
        let control = laplacian_residual_fn(|w: Complex<f64>| c(w.norm_sqr(), 0.0), z, 1e-3);
        assert!((control - 4.0).abs() < 1e-6);
    }

    #[test]
    fn rotation_pair_distance() {
        let cfg = QuadratureConfig::with_nodes(1024, 0.9).unwrap();
        let base = make_smoothstep::<f64>();
        let h1 = HarmonicExtension::new(base.clone(), cfg);
        let h2 = HarmonicExtension::new(base.rotated(0.1), cfg);
        let d = sup_distance(&h1, &h2, 512);
        assert!((d.chord - 2.0 * 0.05f64.sin()).abs() < 1e-14);
        assert!((d.lift - 0.1).abs() < 1e-14);
        let same = sup_distance(&h1, &h1, 512);
        assert_eq!((same.chord, same.lift), (0.0, 0.0));
    }
}
