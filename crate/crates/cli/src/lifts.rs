//! Named boundary lifts accepted on the command line.

use std::fmt;
use std::str::FromStr;

use hqdisk::boundary_maps::{identity, make_example3, make_smoothstep, mobius_trace};
use hqdisk::cantor::{phi_cantor, phi_n};
use hqdisk::{Complex, Lift};

use crate::error::{CliError, Result};

#[derive(Clone, Debug, PartialEq)]
pub enum LiftName {
    Identity,
    Example3,
    Smoothstep,
    PhiN(usize),
    PhiCantor,
    Mobius(f64, f64),
}

impl LiftName {
    pub fn build(&self) -> Result<Lift> {
        Ok(match *self {
            Self::Identity => identity(),
            Self::Example3 => make_example3(),
            Self::Smoothstep => make_smoothstep(),
            Self::PhiN(n) => phi_n(n),
            Self::PhiCantor => phi_cantor(),
            Self::Mobius(re, im) => mobius_trace(Complex::new(re, im))?,
        })
    }
}

impl FromStr for LiftName {
    type Err = CliError;

    fn from_str(s: &str) -> Result<Self> {
        let unknown = || CliError::UnknownLift(s.to_string());
        let (head, arg) = match s.split_once(':') {
            Some((h, a)) => (h, Some(a)),
            None => (s, None),
        };
        match (head, arg) {
            ("identity", None) => Ok(Self::Identity),
            ("example3", None) => Ok(Self::Example3),
            ("smoothstep", None) => Ok(Self::Smoothstep),
            ("phi_cantor", None) => Ok(Self::PhiCantor),
            ("phi_n", Some(n)) => n.trim().parse().map(Self::PhiN).map_err(|_| unknown()),
            ("mobius", Some(a)) => {
                let mut parts = a.split(',').map(|p| p.trim().parse::<f64>());
                let re = parts.next().and_then(|p| p.ok()).ok_or_else(unknown)?;
                let im = match parts.next() {
                    Some(p) => p.map_err(|_| unknown())?,
                    None => 0.0,
                };
                if parts.next().is_some() {
                    return Err(unknown());
                }
                Ok(Self::Mobius(re, im))
            }
            _ => Err(unknown()),
        }
    }
}

impl fmt::Display for LiftName {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Self::Identity => f.write_str("identity"),
            Self::Example3 => f.write_str("example3"),
            Self::Smoothstep => f.write_str("smoothstep"),
            Self::PhiN(n) => write!(f, "phi_n:{n}"),
            Self::PhiCantor => f.write_str("phi_cantor"),
            Self::Mobius(re, im) if *im == 0.0 => write!(f, "mobius:{re}"),
            Self::Mobius(re, im) => write!(f, "mobius:{re},{im}"),
        }
    }
}
