//! Formal linear combinations of oriented diagrams and the walled Brauer
//! algebra Br_{r,t}(δ) over any coefficient ring.

use std::collections::BTreeMap;
use std::fmt;

use crate::diagram::{GenKind, OrientedDiagram, Sequence};
use crate::error::Result;
use crate::poly::Poly;
use crate::scalar::{Rational, Ring};

#[derive(Clone, PartialEq, Debug)]
pub struct Element<S> {
    terms: BTreeMap<OrientedDiagram, S>,
}

impl<S: Ring> Default for Element<S> {
    fn default() -> Self {
        Element { terms: BTreeMap::new() }
    }
}

impl<S: Ring> Element<S> {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn from_diagram(d: OrientedDiagram) -> Self {
        Self::term(d, S::one())
    }

    pub fn term(d: OrientedDiagram, c: S) -> Self {
        let mut e = Self::zero();
        e.add_term(d, c);
        e
    }

    pub fn add_term(&mut self, d: OrientedDiagram, c: S) {
        if c.is_zero() {
            return;
        }
        match self.terms.get_mut(&d) {
            Some(v) => {
                *v = v.add(&c);
                if v.is_zero() {
                    self.terms.remove(&d);
                }
            }
            None => {
                self.terms.insert(d, c);
            }
        }
    }

    pub fn terms(&self) -> impl Iterator<Item = (&OrientedDiagram, &S)> {
        self.terms.iter()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn coeff(&self, d: &OrientedDiagram) -> S {
        self.terms.get(d).cloned().unwrap_or_else(S::zero)
    }

    pub fn add(&self, other: &Self) -> Self {
        let mut out = self.clone();
        for (d, c) in &other.terms {
            out.add_term(d.clone(), c.clone());
        }
        out
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.add(&other.neg())
    }

    pub fn neg(&self) -> Self {
        self.scale(&S::one().neg())
    }

    pub fn scale(&self, c: &S) -> Self {
        let mut out = Self::zero();
        for (d, v) in &self.terms {
            out.add_term(d.clone(), v.mul(c));
        }
        out
    }

    /// Product with `self` stacked above `other`; loops evaluate to `delta`.
    pub fn mul(&self, other: &Self, delta: &S) -> Self {
        let mut out = Self::zero();
        for (d1, c1) in &self.terms {
            for (d2, c2) in &other.terms {
                if d1.source() != d2.target() {
                    continue;
                }
                let (d, loops) = OrientedDiagram::compose(d1, d2).expect("boundaries checked");
                let mut c = c1.mul(c2);
                for _ in 0..loops {
                    c = c.mul(delta);
                }
                out.add_term(d, c);
            }
        }
        out
    }

    /// 1_b · self · 1_a
    pub fn block(&self, a: &Sequence, b: &Sequence) -> Self {
        let mut out = Self::zero();
        for (d, c) in &self.terms {
            if d.source() == a && d.target() == b {
                out.add_term(d.clone(), c.clone());
            }
        }
        out
    }

    pub fn map<T: Ring>(&self, f: impl Fn(&S) -> T) -> Element<T> {
        let mut out = Element::zero();
        for (d, c) in &self.terms {
            out.add_term(d.clone(), f(c));
        }
        out
    }
}

impl Element<Poly> {
    /// Specialise the formal parameter δ.
    pub fn at_delta(&self, value: &Rational) -> Element<Rational> {
        self.map(|p| p.eval(value))
    }
}

impl<S: Ring + fmt::Display> fmt::Display for Element<S> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        let parts: Vec<String> = self.terms.iter().map(|(d, c)| format!("({c})·[{}]", d.to_text())).collect();
        write!(f, "{}", parts.join(" + "))
    }
}

/// Br_{r,t}(δ) with coefficients in `S`.
#[derive(Clone, Debug)]
pub struct WalledBrauer<S> {
    pub r: usize,
    pub t: usize,
    pub delta: S,
}

impl WalledBrauer<Poly> {
    /// δ kept formal.
    pub fn formal(r: usize, t: usize) -> Self {
        WalledBrauer { r, t, delta: Poly::x() }
    }
}

impl<S: Ring> WalledBrauer<S> {
    pub fn new(r: usize, t: usize, delta: S) -> Self {
        WalledBrauer { r, t, delta }
    }

    pub fn n(&self) -> usize {
        self.r + self.t
    }

    pub fn sequences(&self) -> Vec<Sequence> {
        Sequence::all(self.r, self.t)
    }

    pub fn mul(&self, x: &Element<S>, y: &Element<S>) -> Element<S> {
        x.mul(y, &self.delta)
    }

    /// Product of a list, left to right.
    pub fn product(&self, xs: &[&Element<S>]) -> Element<S> {
        let mut acc = xs[0].clone();
        for x in &xs[1..] {
            acc = self.mul(&acc, x);
        }
        acc
    }

    pub fn idempotent(&self, a: &Sequence) -> Element<S> {
        Element::from_diagram(OrientedDiagram::identity(a))
    }

    pub fn one(&self) -> Element<S> {
        let mut out = Element::zero();
        for a in self.sequences() {
            out.add_term(OrientedDiagram::identity(&a), S::one());
        }
        out
    }

    /// g_k 1_a, or zero when inadmissible.
    pub fn gen(&self, kind: GenKind, k: usize, a: &Sequence) -> Element<S> {
        match OrientedDiagram::generator(kind, k, a) {
            Ok(d) => Element::from_diagram(d),
            Err(_) => Element::zero(),
        }
    }

    /// The summed generator Σ_a g_k 1_a.
    pub fn summed(&self, kind: GenKind, k: usize) -> Element<S> {
        let mut out = Element::zero();
        for a in self.sequences() {
            out = out.add(&self.gen(kind, k, &a));
        }
        out
    }

    pub fn basis(&self, a: &Sequence, b: &Sequence) -> Vec<OrientedDiagram> {
        OrientedDiagram::enumerate(a, b)
    }

    pub fn try_gen(&self, kind: GenKind, k: usize, a: &Sequence) -> Result<Element<S>> {
        OrientedDiagram::generator(kind, k, a).map(Element::from_diagram)
    }

    pub fn commutator(&self, x: &Element<S>, y: &Element<S>) -> Element<S> {
        self.mul(x, y).sub(&self.mul(y, x))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::int;

    #[test]
    fn e_squared_is_delta_e() {
        let br = WalledBrauer::formal(1, 1);
        let a = Sequence::parse("∧∨").unwrap();
        let e = br.gen(GenKind::E, 1, &a);
        assert_eq!(br.mul(&e, &e), e.scale(&Poly::x()));
    }

    #[test]
    fn idempotents_orthogonal() {
        let br = WalledBrauer::new(2, 1, int(3));
        let seqs = br.sequences();
        assert!(br.mul(&br.idempotent(&seqs[0]), &br.idempotent(&seqs[1])).is_zero());
        assert_eq!(br.mul(&br.one(), &br.one()), br.one());
    }
}
