//! Cantor function, its contraction iteration, and the lifts built on them.
//!
//! The iteration
//!
//! ```text
//! ψ_{n+1}(x) = ½ψ_n(3x)           0 ≤ x ≤ 1/3
//!            = ½                   1/3 < x < 2/3
//!            = ½ + ½ψ_n(3x − 2)    2/3 ≤ x ≤ 1
//! ```
//!
//! is a contraction with factor ½ on bounded functions; its fixed point is
//! the Cantor function. `ψ_n` is evaluated pointwise by descending at most
//! `n` branches and unwinding, so evaluation costs `O(n)` and reproduces the
//! recursion's floating-point operations exactly.

use std::sync::Arc;

use crate::boundary_maps::{smoothstep_unit, smoothstep_unit_derivative, LiftFunction, RealFn};
use crate::error::{Error, Result};
use crate::Real;

/// Number of ternary digits the oracle inspects.
pub const ORACLE_DIGITS: u32 = 64;

/// Cantor function by ternary expansion.
///
/// Reads the ternary digits of `x`, stopping after the first digit `1`
/// (which contributes a binary `1`), mapping every `2` to a binary `1`, and
/// interprets the result in base 2. The floating-point input is expanded
/// exactly with integer arithmetic, so the only error is the cap of
/// [`ORACLE_DIGITS`] digits.
pub fn cantor_oracle<T: Real>(x: T) -> Result<T> {
    if !(x >= T::zero() && x <= T::one()) {
        return Err(Error::Domain(format!("Cantor function needs x ∈ [0, 1], got {x}")));
    }
    if x == T::one() {
        return Ok(T::one());
    }
    if x == T::zero() {
        return Ok(T::zero());
    }
    let (mantissa, exponent, _) = x.integer_decode();
    let shift = -i32::from(exponent);
    if (1..=125).contains(&shift) {
        let den = 1u128 << shift;
        let num = u128::from(mantissa);
        Ok(digits_to_value(num, den))
    } else {
        Ok(float_expansion(x))
    }
}

fn digits_to_value<T: Real>(mut num: u128, den: u128) -> T {
    let mut value = T::zero();
    let mut weight = T::lit(0.5);
    for _ in 0..ORACLE_DIGITS {
        num *= 3;
        let digit = num / den;
        num -= digit * den;
        match digit {
            0 => {}
            1 => return value + weight,
            _ => value = value + weight,
        }
        if num == 0 {
            break;
        }
        weight = weight * T::lit(0.5);
    }
    value
}

// Only reached for x < 2⁻⁷² (f64), where C(x) < 2⁻⁴⁵.
fn float_expansion<T: Real>(mut x: T) -> T {
    let three = T::lit(3.0);
    let mut value = T::zero();
    let mut weight = T::lit(0.5);
    for _ in 0..ORACLE_DIGITS {
        x = x * three;
        let digit = x.floor();
        x = x - digit;
        if digit == T::one() {
            return value + weight;
        }
        if digit >= T::lit(2.0) {
            value = value + weight;
        }
        weight = weight * T::lit(0.5);
    }
    value
}

#[derive(Clone, Copy, PartialEq, Eq)]
enum Branch {
    Left,
    Right,
}

/// `ψ_n` obtained from `ψ₀ = base` by `n` contraction steps.
#[derive(Clone)]
pub struct CantorApproximant<T: Real> {
    n: usize,
    base: RealFn<T>,
    base_derivative: Option<RealFn<T>>,
}

impl<T: Real> std::fmt::Debug for CantorApproximant<T> {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.debug_struct("CantorApproximant")
            .field("n", &self.n)
            .field("has_derivative", &self.base_derivative.is_some())
            .finish()
    }
}

/// Outcome of descending the branch structure from `x`.
struct Descent<T> {
    path: Vec<Branch>,
    /// `None` when the middle branch was hit.
    leaf: Option<T>,
}

impl<T: Real> CantorApproximant<T> {
    pub fn n(&self) -> usize {
        self.n
    }

    pub fn base(&self, x: T) -> T {
        (self.base)(x)
    }

    fn descend(&self, mut x: T) -> Descent<T> {
        let third = T::lit(1.0 / 3.0);
        let two_thirds = T::lit(2.0 / 3.0);
        let three = T::lit(3.0);
        let two = T::lit(2.0);
        let mut path = Vec::with_capacity(self.n);
        for _ in 0..self.n {
            if x <= third {
                path.push(Branch::Left);
                x = three * x;
            } else if x < two_thirds {
                return Descent { path, leaf: None };
            } else {
                path.push(Branch::Right);
                x = three * x - two;
            }
        }
        Descent { path, leaf: Some(x) }
    }

    /// `ψ_n(x)` for `x ∈ [0, 1]`.
    pub fn eval(&self, x: T) -> T {
        let half = T::lit(0.5);
        let Descent { path, leaf } = self.descend(x);
        let mut v = match leaf {
            Some(y) => (self.base)(y),
            None => half,
        };
        for b in path.iter().rev() {
            v = match b {
                Branch::Left => half * v,
                Branch::Right => half + half * v,
            };
        }
        v
    }

    /// `ψ_n'(x)`, available when the base map has a derivative.
    pub fn derivative(&self, x: T) -> Option<T> {
        let d = self.base_derivative.as_ref()?;
        let Descent { path, leaf } = self.descend(x);
        Some(match leaf {
            Some(y) => T::lit(1.5).powi(path.len() as i32) * d(y),
            None => T::zero(),
        })
    }
}

/// `n` contraction steps applied to `base`.
pub fn cantor_iterate<T: Real>(base: impl Fn(T) -> T + Send + Sync + 'static, n: usize) -> CantorApproximant<T> {
    CantorApproximant { n, base: Arc::new(base), base_derivative: None }
}

/// As [`cantor_iterate`], carrying the base derivative through the chain rule.
pub fn cantor_iterate_with_derivative<T: Real>(
    base: impl Fn(T) -> T + Send + Sync + 'static,
    derivative: impl Fn(T) -> T + Send + Sync + 'static,
    n: usize,
) -> CantorApproximant<T> {
    CantorApproximant { n, base: Arc::new(base), base_derivative: Some(Arc::new(derivative)) }
}

/// `ψ_n` started from the quintic smoothstep `ψ₀`.
pub fn smoothstep_approximant<T: Real>(n: usize) -> CantorApproximant<T> {
    cantor_iterate_with_derivative(smoothstep_unit::<T>, smoothstep_unit_derivative::<T>, n)
}

fn unit_coordinate<T: Real>(t: T) -> T {
    (t / T::two_pi()).max(T::zero()).min(T::one())
}

/// `φ_n(t) = π(ψ_n(t/2π) + t/2π)`: a `C²` strictly increasing lift.
pub fn phi_n<T: Real>(n: usize) -> LiftFunction<T> {
    let psi = smoothstep_approximant::<T>(n);
    let dpsi = psi.clone();
    LiftFunction::new(format!("phi_{n}"), move |t: T| {
        let x = unit_coordinate(t);
        T::PI() * (psi.eval(x) + x)
    })
    .with_derivative(move |t: T| {
        let x = unit_coordinate(t);
        (dpsi.derivative(x).expect("smoothstep derivative") + T::one()) * T::lit(0.5)
    })
}

/// `φ_C(t) = π(C(t/2π) + t/2π)`; strictly increasing but not bi-Lipschitz.
pub fn phi_cantor<T: Real>() -> LiftFunction<T> {
    LiftFunction::new("phi_cantor", |t: T| {
        let x = unit_coordinate(t);
        T::PI() * (cantor_oracle(x).expect("x clamped to [0, 1]") + x)
    })
}

/// `max_j |ψ_n(j/mesh) − C(j/mesh)|` over `j = 0..=mesh`.
pub fn approximant_distance<T: Real>(psi: &CantorApproximant<T>, mesh: usize) -> T {
    let m = T::from_usize_lossy(mesh.max(1));
    (0..=mesh.max(1))
        .map(|j| {
            let x = T::from_usize_lossy(j) / m;
            (psi.eval(x) - cantor_oracle(x).expect("mesh inside [0, 1]")).abs()
        })
        .fold(T::zero(), T::max)
}
