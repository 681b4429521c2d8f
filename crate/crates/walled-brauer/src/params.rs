//! Cyclotomic parameters attached to (m, n, δ).

use serde::{Deserialize, Serialize};

use crate::diagram::Arrow;
use crate::error::{Error, Result};
use crate::scalar::{format_rational, int, rat, Rational, Ring};

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Params {
    pub m: usize,
    pub n: usize,
    #[serde(with = "rational_text")]
    pub delta: Rational,
}

impl Params {
    pub fn new(m: usize, n: usize, delta: Rational) -> Self {
        Params { m, n, delta }
    }

    fn half(x: i64) -> Rational {
        rat(x, 2)
    }

    /// β₁ for the given arrow: −δ + (m+n)/2 for ∧, (m+n)/2 for ∨.
    pub fn beta1(&self, a: Arrow) -> Rational {
        let s = Self::half((self.m + self.n) as i64);
        match a {
            Arrow::Up => s.sub(&self.delta),
            Arrow::Down => s,
        }
    }

    /// β₂ for the given arrow: (n−m)/2 for ∧, δ + (m−n)/2 for ∨.
    pub fn beta2(&self, a: Arrow) -> Rational {
        let d = self.m as i64 - self.n as i64;
        match a {
            Arrow::Up => Self::half(-d),
            Arrow::Down => self.delta.add(&Self::half(d)),
        }
    }

    pub fn omega0(&self) -> Rational {
        int((self.m + self.n) as i64)
    }

    pub fn omega1(&self) -> Rational {
        let s = int((self.m + self.n) as i64);
        s.mul(&s).mul(&rat(1, 2)).sub(&self.delta.mul(&int(self.m as i64)))
    }

    /// The bubble values e₁ y₁^j e₁ = ω_j e₁ on a block starting (∧,∨) for
    /// `Arrow::Up`, or ω*_j on a block starting (∨,∧) for `Arrow::Down`;
    /// each sequence follows the recurrence of its own cyclotomic polynomial.
    pub fn omega(&self, first: Arrow, j: usize) -> Rational {
        let w0 = self.omega0();
        let w1 = match first {
            Arrow::Up => self.omega1(),
            Arrow::Down => w0.mul(&w0).sub(&self.omega1()),
        };
        let (b1, b2) = (self.beta1(first), self.beta2(first));
        let (sum, prod) = (b1.add(&b2), b1.mul(&b2));
        let (mut x, mut y) = (w0, w1);
        if j == 0 {
            return x;
        }
        for _ in 1..j {
            let z = sum.mul(&y).sub(&prod.mul(&x));
            x = y;
            y = z;
        }
        y
    }

    /// |β₂^a| + r + t < β₁^a for both arrows.
    pub fn check_assumption(&self, r: usize, t: usize) -> Result<()> {
        for a in [Arrow::Up, Arrow::Down] {
            let b2 = self.beta2(a);
            let lhs = if b2 < Rational::zero() { b2.neg() } else { b2 }.add(&int((r + t) as i64));
            let b1 = self.beta1(a);
            if lhs >= b1 {
                return Err(Error::AssumptionViolation(format!(
                    "|β₂^{s}| + r + t = {} is not < β₁^{s} = {}",
                    format_rational(&lhs),
                    format_rational(&b1),
                    s = a.symbol()
                )));
            }
        }
        Ok(())
    }
}

mod rational_text {
    use serde::{Deserialize, Deserializer, Serializer};

    use crate::scalar::{format_rational, parse_rational, Rational};

    pub fn serialize<S: Serializer>(r: &Rational, s: S) -> Result<S::Ok, S::Error> {
        s.serialize_str(&format_rational(r))
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<Rational, D::Error> {
        let s = String::deserialize(d)?;
        parse_rational(&s).map_err(serde::de::Error::custom)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn default_instance() {
        let p = Params::new(6, 6, int(2));
        assert_eq!(p.beta1(Arrow::Up), int(4));
        assert_eq!(p.beta2(Arrow::Up), int(0));
        assert_eq!(p.beta1(Arrow::Down), int(6));
        assert_eq!(p.beta2(Arrow::Down), int(2));
        assert_eq!(p.omega0(), int(12));
        assert_eq!(p.omega1(), int(60));
        assert_eq!(p.omega(Arrow::Down, 1), int(84));
        // ω₂ = (4+0)·60 − 0·12
        assert_eq!(p.omega(Arrow::Up, 2), int(240));
        assert!(p.check_assumption(3, 0).is_ok());
        assert!(p.check_assumption(4, 0).is_err());
    }

    #[test]
    fn omega_one_at_five() {
        assert_eq!(Params::new(5, 5, int(2)).omega1(), int(40));
    }
}
