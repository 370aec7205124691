#![allow(dead_code)]

use hqdisk::boundary_maps::{identity, mobius_trace, LiftFunction};
use hqdisk::cantor::phi_n;
use hqdisk::Complex;
use proptest::prelude::*;

/// Index into the member generator family plus a Möbius parameter.
#[derive(Clone, Debug)]
pub enum Generator {
    Identity,
    Phi(usize),
    Mobius(f64, f64),
}

impl Generator {
    pub fn lift(&self) -> LiftFunction<f64> {
        match *self {
            Self::Identity => identity(),
            Self::Phi(n) => phi_n(n),
            Self::Mobius(re, im) => mobius_trace(Complex::new(re, im)).unwrap(),
        }
    }
}

/// Identity, `φ_n` with `n ≤ 4`, and Möbius traces with `|a| ≤ 0.5`.
pub fn member_generator() -> impl Strategy<Value = Generator> {
    prop_oneof![
        Just(Generator::Identity),
        (0usize..=4).prop_map(Generator::Phi),
        (0.0..0.5f64, 0.0..std::f64::consts::TAU).prop_map(|(r, a)| Generator::Mobius(r * a.cos(), r * a.sin())),
    ]
}

pub fn polar_grid(radii: &[f64], angles: usize) -> Vec<Complex<f64>> {
    radii
        .iter()
        .flat_map(|&r| {
            (0..angles).map(move |k| Complex::from_polar(r, std::f64::consts::TAU * k as f64 / angles as f64))
        })
        .collect()
}
