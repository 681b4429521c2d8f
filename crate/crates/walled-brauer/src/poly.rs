//! Dense univariate polynomials over the rationals, lowest degree first.
//! Used both as the δ-polynomial scalar and for minimal polynomials.

use std::fmt;

use dashu::base::{Gcd, Sign, UnsignedAbs};
use dashu::integer::{IBig, UBig};
use dashu::rational::RBig;

use crate::scalar::{Field, Rational, Ring};

#[derive(Clone, PartialEq, Eq, Hash, Debug, Default)]
pub struct Poly {
    coeffs: Vec<Rational>,
}

impl Poly {
    pub fn from_coeffs(mut coeffs: Vec<Rational>) -> Self {
        while coeffs.last().is_some_and(Ring::is_zero) {
            coeffs.pop();
        }
        Poly { coeffs }
    }

    pub fn constant(c: Rational) -> Self {
        Self::from_coeffs(vec![c])
    }

    pub fn x() -> Self {
        Self::from_coeffs(vec![RBig::ZERO, RBig::ONE])
    }

    /// t - a
    pub fn linear_root(a: &Rational) -> Self {
        Self::from_coeffs(vec![-a.clone(), RBig::ONE])
    }

    pub fn coeffs(&self) -> &[Rational] {
        &self.coeffs
    }

    pub fn coeff(&self, i: usize) -> Rational {
        self.coeffs.get(i).cloned().unwrap_or(RBig::ZERO)
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// Degree; the zero polynomial reports `None`.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn leading(&self) -> Rational {
        self.coeffs.last().cloned().unwrap_or(RBig::ZERO)
    }

    pub fn eval(&self, x: &Rational) -> Rational {
        self.coeffs.iter().rev().fold(RBig::ZERO, |acc, c| acc * x + c)
    }

    pub fn eval_in<R: Ring>(&self, x: &R) -> R {
        self.coeffs
            .iter()
            .rev()
            .fold(R::zero(), |acc, c| acc.mul(x).add(&R::from_rational(c)))
    }

    pub fn scale(&self, c: &Rational) -> Self {
        Self::from_coeffs(self.coeffs.iter().map(|a| a * c).collect())
    }

    pub fn monic(&self) -> Self {
        if self.is_zero() {
            return self.clone();
        }
        self.scale(&self.leading().inv())
    }

    pub fn pow(&self, e: usize) -> Self {
        (0..e).fold(Self::one(), |acc, _| Ring::mul(&acc, self))
    }

    pub fn div_rem(&self, d: &Poly) -> (Poly, Poly) {
        assert!(!d.is_zero(), "division by zero polynomial");
        let dd = d.coeffs.len() - 1;
        let lead_inv = d.leading().inv();
        let mut rem = self.coeffs.clone();
        if rem.len() <= dd {
            return (Poly::zero(), self.clone());
        }
        let mut quot = vec![RBig::ZERO; rem.len() - dd];
        for i in (0..quot.len()).rev() {
            let c = &rem[i + dd] * &lead_inv;
            if !Ring::is_zero(&c) {
                for (j, dj) in d.coeffs.iter().enumerate() {
                    rem[i + j] -= &c * dj;
                }
            }
            quot[i] = c;
        }
        rem.truncate(dd);
        (Poly::from_coeffs(quot), Poly::from_coeffs(rem))
    }

    pub fn rem(&self, d: &Poly) -> Poly {
        self.div_rem(d).1
    }

    pub fn gcd(&self, other: &Poly) -> Poly {
        let (mut a, mut b) = (self.clone(), other.clone());
        while !b.is_zero() {
            let r = a.rem(&b);
            a = b;
            b = r;
        }
        a.monic()
    }

    /// Returns (g, s, t) with s·self + t·other = g = gcd, g monic.
    pub fn ext_gcd(&self, other: &Poly) -> (Poly, Poly, Poly) {
        let (mut r0, mut r1) = (self.clone(), other.clone());
        let (mut s0, mut s1) = (Poly::one(), Poly::zero());
        let (mut t0, mut t1) = (Poly::zero(), Poly::one());
        while !r1.is_zero() {
            let (q, r) = r0.div_rem(&r1);
            let s2 = s0.sub(&q.mul(&s1));
            let t2 = t0.sub(&q.mul(&t1));
            r0 = std::mem::replace(&mut r1, r);
            s0 = std::mem::replace(&mut s1, s2);
            t0 = std::mem::replace(&mut t1, t2);
        }
        let c = r0.leading().inv();
        (r0.scale(&c), s0.scale(&c), t0.scale(&c))
    }

    /// Inverse of `self` modulo `m`, if coprime.
    pub fn inverse_mod(&self, m: &Poly) -> Option<Poly> {
        let (g, s, _) = self.rem(m).ext_gcd(m);
        if g.degree() == Some(0) {
            Some(s.rem(m))
        } else {
            None
        }
    }

    pub fn derivative(&self) -> Poly {
        Poly::from_coeffs(
            self.coeffs
                .iter()
                .enumerate()
                .skip(1)
                .map(|(i, c)| c * RBig::from(i))
                .collect(),
        )
    }

    /// Factor as Π (t − a_i)^{j_i} over the rationals. Returns the list of
    /// (root, multiplicity) and the monic cofactor without rational roots.
    pub fn rational_factorization(&self) -> (Vec<(Rational, usize)>, Poly) {
        let mut rest = self.monic();
        let mut out = Vec::new();
        for a in self.rational_roots() {
            let lin = Poly::linear_root(&a);
            let mut mult = 0;
            loop {
                let (q, r) = rest.div_rem(&lin);
                if !r.is_zero() {
                    break;
                }
                rest = q;
                mult += 1;
            }
            out.push((a, mult));
        }
        out.sort_by(|x, y| x.0.cmp(&y.0));
        (out, rest)
    }

    /// Distinct rational roots via the rational root theorem.
    pub fn rational_roots(&self) -> Vec<Rational> {
        if self.is_zero() {
            return Vec::new();
        }
        let mut roots = Vec::new();
        let mut p = self.clone();
        if Ring::is_zero(&p.coeff(0)) {
            roots.push(RBig::ZERO);
            let k = p.coeffs.iter().position(|c| !Ring::is_zero(c)).unwrap();
            p = Poly::from_coeffs(p.coeffs[k..].to_vec());
        }
        let ints = p.primitive_integer_coeffs();
        if ints.len() <= 1 {
            return roots;
        }
        let a0 = (&ints[0]).unsigned_abs();
        let an = ints.last().unwrap().clone().unsigned_abs();
        for num in divisors(&a0) {
            for den in divisors(&an) {
                if num.clone().gcd(&den) != UBig::ONE {
                    continue;
                }
                for sign in [Sign::Positive, Sign::Negative] {
                    let n = IBig::from(num.clone());
                    let n = if sign == Sign::Negative { -n } else { n };
                    let cand = RBig::from_parts(n, den.clone());
                    if Ring::is_zero(&p.eval(&cand)) && !roots.contains(&cand) {
                        roots.push(cand);
                    }
                }
            }
        }
        roots
    }

    fn primitive_integer_coeffs(&self) -> Vec<IBig> {
        let mut l = UBig::ONE;
        for c in &self.coeffs {
            let d = c.denominator();
            l = &l / l.clone().gcd(d) * d;
        }
        let ints: Vec<IBig> = self
            .coeffs
            .iter()
            .map(|c| {
                let scaled = c * RBig::from(l.clone());
                scaled.numerator().clone()
            })
            .collect();
        let mut g = UBig::ZERO;
        for c in &ints {
            g = g.gcd(c.unsigned_abs());
        }
        ints.into_iter().map(|c| c / IBig::from(g.clone())).collect()
    }

    /// Display with a chosen variable name.
    pub fn display_with(&self, var: &str) -> String {
        if self.is_zero() {
            return "0".into();
        }
        let mut parts = Vec::new();
        for (i, c) in self.coeffs.iter().enumerate().rev() {
            if Ring::is_zero(c) {
                continue;
            }
            let mono = match i {
                0 => String::new(),
                1 => var.to_string(),
                _ => format!("{var}^{i}"),
            };
            let s = if mono.is_empty() {
                c.to_string()
            } else if *c == RBig::ONE {
                mono
            } else if *c == -RBig::ONE {
                format!("-{mono}")
            } else {
                format!("{c}*{mono}")
            };
            parts.push(s);
        }
        parts.join(" + ").replace("+ -", "- ")
    }
}

fn divisors(n: &UBig) -> Vec<UBig> {
    if *n == UBig::ZERO {
        return vec![UBig::ONE];
    }
    let mut primes: Vec<(UBig, u32)> = Vec::new();
    let mut m = n.clone();
    let mut p = UBig::from(2u8);
    while &p * &p <= m {
        let mut e = 0;
        while (&m % &p) == UBig::ZERO {
            m /= &p;
            e += 1;
        }
        if e > 0 {
            primes.push((p.clone(), e));
        }
        p += UBig::ONE;
    }
    if m > UBig::ONE {
        primes.push((m, 1));
    }
    let mut divs = vec![UBig::ONE];
    for (p, e) in primes {
        let mut next = Vec::new();
        for d in &divs {
            let mut q = d.clone();
            for _ in 0..=e {
                next.push(q.clone());
                q *= &p;
            }
        }
        divs = next;
    }
    divs
}

impl Ring for Poly {
    fn zero() -> Self {
        Poly { coeffs: Vec::new() }
    }
    fn one() -> Self {
        Poly::constant(RBig::ONE)
    }
    fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }
    fn add(&self, other: &Self) -> Self {
        let n = self.coeffs.len().max(other.coeffs.len());
        Poly::from_coeffs((0..n).map(|i| self.coeff(i) + other.coeff(i)).collect())
    }
    fn sub(&self, other: &Self) -> Self {
        let n = self.coeffs.len().max(other.coeffs.len());
        Poly::from_coeffs((0..n).map(|i| self.coeff(i) - other.coeff(i)).collect())
    }
    fn mul(&self, other: &Self) -> Self {
        if self.is_zero() || other.is_zero() {
            return Poly::zero();
        }
        let mut c = vec![RBig::ZERO; self.coeffs.len() + other.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            for (j, b) in other.coeffs.iter().enumerate() {
                c[i + j] += a * b;
            }
        }
        Poly::from_coeffs(c)
    }
    fn neg(&self) -> Self {
        Poly { coeffs: self.coeffs.iter().map(|c| -c.clone()).collect() }
    }
    fn from_rational(r: &Rational) -> Self {
        Poly::constant(r.clone())
    }
}

impl fmt::Display for Poly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.display_with("δ"))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::{int, rat};

    fn p(c: &[i64]) -> Poly {
        Poly::from_coeffs(c.iter().map(|&x| int(x)).collect())
    }

    #[test]
    fn trailing_zeros_trimmed() {
        assert_eq!(p(&[1, 2, 0, 0]).degree(), Some(1));
        assert!(p(&[0, 0]).is_zero());
    }

    #[test]
    fn division_and_gcd() {
        let a = p(&[-1, 0, 1]);
        let b = p(&[1, 1]);
        let (q, r) = a.div_rem(&b);
        assert_eq!(q, p(&[-1, 1]));
        assert!(r.is_zero());
        assert_eq!(a.gcd(&p(&[-1, 1])), p(&[-1, 1]));
        let inv = p(&[2, 1]).inverse_mod(&a).unwrap();
        assert_eq!(inv.mul(&p(&[2, 1])).rem(&a), Poly::one());
    }

    #[test]
    fn rational_factorization() {
        // (t - 1/2)^2 (t + 3) t
        let f = Poly::linear_root(&rat(1, 2))
            .pow(2)
            .mul(&Poly::linear_root(&int(-3)))
            .mul(&Poly::x());
        let (roots, rest) = f.rational_factorization();
        assert_eq!(rest, Poly::one());
        assert_eq!(roots, vec![(int(-3), 1), (int(0), 1), (rat(1, 2), 2)]);
        let (roots, rest) = p(&[-2, 0, 1]).rational_factorization();
        assert!(roots.is_empty());
        assert_eq!(rest.degree(), Some(2));
    }

    #[test]
    fn display() {
        assert_eq!(p(&[-1, 0, 1]).to_string(), "δ^2 - 1");
        assert_eq!(Poly::zero().to_string(), "0");
    }
}
