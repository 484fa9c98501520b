//! Values in `{2, 3, ...} ∪ {∞}`, used for both the quantum characteristic `e`
//! and the field characteristic `p`.

use std::fmt;
use std::str::FromStr;

use serde::{Serialize, Serializer};

use crate::error::{Error, Result};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Modulus {
    Finite(u32),
    Infinite,
}

impl Modulus {
    pub fn finite(m: u32) -> Result<Self> {
        if m < 2 {
            return Err(Error::Regime(format!("modulus must be at least 2, got {m}")));
        }
        Ok(Modulus::Finite(m))
    }

    pub fn is_finite(self) -> bool {
        matches!(self, Modulus::Finite(_))
    }

    pub fn get(self) -> Option<u32> {
        match self {
            Modulus::Finite(m) => Some(m),
            Modulus::Infinite => None,
        }
    }

    /// Canonical representative of `z`: in `[0, m)` for finite `m`, `z` itself for `∞`.
    pub fn reduce(self, z: i64) -> i64 {
        match self {
            Modulus::Finite(m) => z.rem_euclid(m as i64),
            Modulus::Infinite => z,
        }
    }

    /// Whether `z ≡ 0`; for `∞` this means `z == 0`.
    pub fn divides(self, z: i64) -> bool {
        self.reduce(z) == 0
    }
}

impl fmt::Display for Modulus {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Modulus::Finite(m) => write!(f, "{m}"),
            Modulus::Infinite => f.write_str("inf"),
        }
    }
}

impl FromStr for Modulus {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let s = s.trim();
        if s.eq_ignore_ascii_case("inf") {
            return Ok(Modulus::Infinite);
        }
        let m: u32 = s
            .parse()
            .map_err(|_| Error::Parse(format!("expected an integer or \"inf\", got {s:?}")))?;
        Modulus::finite(m)
    }
}

impl Serialize for Modulus {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        match self {
            Modulus::Finite(m) => serializer.serialize_u32(*m),
            Modulus::Infinite => serializer.serialize_str("inf"),
        }
    }
}

pub fn is_prime(m: u32) -> bool {
    m >= 2 && (2..m).take_while(|d| d * d <= m).all(|d| !m.is_multiple_of(d))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn reduce_and_divide() {
        let three = Modulus::Finite(3);
        assert_eq!(three.reduce(-1), 2);
        assert!(three.divides(-6));
        assert!(!Modulus::Infinite.divides(6));
        assert!(Modulus::Infinite.divides(0));
    }

    #[test]
    fn parse() {
        assert_eq!("inf".parse::<Modulus>().unwrap(), Modulus::Infinite);
        assert_eq!("4".parse::<Modulus>().unwrap(), Modulus::Finite(4));
        assert!("1".parse::<Modulus>().is_err());
        assert!("x".parse::<Modulus>().is_err());
    }

    #[test]
    fn primes() {
        let ps: Vec<u32> = (0..20).filter(|&m| is_prime(m)).collect();
        assert_eq!(ps, vec![2, 3, 5, 7, 11, 13, 17, 19]);
    }
}
