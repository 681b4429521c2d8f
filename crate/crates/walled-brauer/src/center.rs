//! Central elements of Br_{r,t} built from polynomials in the Jucys–Murphy
//! elements, the Q-cancellation property, and the comparison with the full
//! center.

use std::collections::{BTreeMap, HashMap};
use std::fmt;

use serde::Serialize;

use crate::algebra::{Element, WalledBrauer};
use crate::diagram::{Arrow, GenKind, OrientedDiagram, Sequence};
use crate::error::{Error, Result};
use crate::jm::jm_elements;
use crate::matrix::QMat;
use crate::poly::Poly;
use crate::report::{Check, Report};
use crate::scalar::{format_rational, int, parse_rational, Rational, Ring};

/// Polynomial in y_1, …, y_n with rational coefficients. Exponent vectors
/// are the keys; zero coefficients are never stored.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MultiPoly {
    nvars: usize,
    terms: BTreeMap<Vec<u32>, Rational>,
}

impl MultiPoly {
    pub fn zero(nvars: usize) -> Self {
        MultiPoly { nvars, terms: BTreeMap::new() }
    }

    pub fn constant(nvars: usize, c: Rational) -> Self {
        let mut p = Self::zero(nvars);
        p.add_term(vec![0; nvars], c);
        p
    }

    pub fn one(nvars: usize) -> Self {
        Self::constant(nvars, Rational::one())
    }

    /// y_i, 1-based.
    pub fn var(nvars: usize, i: usize) -> Self {
        let mut e = vec![0; nvars];
        e[i - 1] = 1;
        Self::monomial(e, Rational::one())
    }

    pub fn monomial(exps: Vec<u32>, c: Rational) -> Self {
        let mut p = Self::zero(exps.len());
        p.add_term(exps, c);
        p
    }

    /// p_d = Σ_i y_i^d.
    pub fn power_sum(nvars: usize, d: u32) -> Self {
        let mut p = Self::zero(nvars);
        for i in 0..nvars {
            let mut e = vec![0; nvars];
            e[i] = d;
            p.add_term(e, Rational::one());
        }
        p
    }

    pub fn nvars(&self) -> usize {
        self.nvars
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Vec<u32>, &Rational)> {
        self.terms.iter()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn degree(&self) -> Option<u32> {
        self.terms.keys().map(|e| e.iter().sum()).max()
    }

    pub fn add_term(&mut self, exps: Vec<u32>, c: Rational) {
        assert_eq!(exps.len(), self.nvars, "exponent vector length");
        if c.is_zero() {
            return;
        }
        let v = self.terms.entry(exps).or_insert_with(Rational::zero);
        *v = v.add(&c);
        if v.is_zero() {
            self.terms.retain(|_, c| !c.is_zero());
        }
    }

    pub fn add(&self, other: &Self) -> Self {
        let mut out = self.clone();
        for (e, c) in &other.terms {
            out.add_term(e.clone(), c.clone());
        }
        out
    }

    pub fn scale(&self, c: &Rational) -> Self {
        let mut out = Self::zero(self.nvars);
        for (e, v) in &self.terms {
            out.add_term(e.clone(), v.mul(c));
        }
        out
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.add(&other.scale(&int(-1)))
    }

    pub fn mul(&self, other: &Self) -> Self {
        let mut out = Self::zero(self.nvars);
        for (e1, c1) in &self.terms {
            for (e2, c2) in &other.terms {
                out.add_term(e1.iter().zip(e2).map(|(a, b)| a + b).collect(), c1.mul(c2));
            }
        }
        out
    }

    pub fn pow(&self, k: u32) -> Self {
        (0..k).fold(Self::one(self.nvars), |acc, _| acc.mul(self))
    }

    /// w·p with (w·p)(y_1, …, y_n) = p(y_{w(1)}, …, y_{w(n)}); `w[i]` is the
    /// 0-based image of i.
    pub fn permute(&self, w: &[usize]) -> Self {
        let mut out = Self::zero(self.nvars);
        for (e, c) in &self.terms {
            let mut f = vec![0; self.nvars];
            for (i, &x) in e.iter().enumerate() {
                f[w[i]] = x;
            }
            out.add_term(f, c.clone());
        }
        out
    }

    /// Invariant under permutations of y_1..y_r and of y_{r+1}..y_n.
    pub fn is_invariant(&self, r: usize) -> bool {
        let n = self.nvars;
        (1..n).filter(|&k| k != r).all(|k| {
            let mut w: Vec<usize> = (0..n).collect();
            w.swap(k - 1, k);
            self.permute(&w) == *self
        })
    }

    /// Parses sums of products of factors y<i>, p<d>, rational constants,
    /// each optionally raised to ^k, e.g. "p1*p3 - 2*y1^2".
    pub fn parse(s: &str, nvars: usize) -> Result<Self> {
        let bad = |m: String| Error::Parse(format!("{m} in {s:?}"));
        let cleaned: String = s.chars().filter(|c| !c.is_whitespace()).collect();
        if cleaned.is_empty() {
            return Err(bad("empty polynomial".into()));
        }
        let mut out = Self::zero(nvars);
        let mut summands = Vec::new();
        let mut cur = String::new();
        for (i, ch) in cleaned.chars().enumerate() {
            if (ch == '+' || ch == '-') && i > 0 && !cur.ends_with('^') {
                summands.push(std::mem::take(&mut cur));
            }
            cur.push(ch);
        }
        summands.push(cur);
        for term in summands {
            let (sign, body) = match term.strip_prefix('-') {
                Some(rest) => (int(-1), rest.to_string()),
                None => (int(1), term.trim_start_matches('+').to_string()),
            };
            let mut prod = Self::constant(nvars, sign);
            for factor in body.split('*') {
                let (base, exp) = match factor.split_once('^') {
                    Some((b, e)) => (b, e.parse::<u32>().map_err(|_| bad(format!("bad exponent {e:?}")))?),
                    None => (factor, 1),
                };
                let index = |rest: &str| rest.parse::<usize>().map_err(|_| bad(format!("bad index in {base:?}")));
                let f = if let Some(rest) = base.strip_prefix('y') {
                    let i = index(rest)?;
                    if i == 0 || i > nvars {
                        return Err(Error::IndexOutOfRange { index: i, max: nvars });
                    }
                    Self::var(nvars, i)
                } else if let Some(rest) = base.strip_prefix('p') {
                    Self::power_sum(nvars, index(rest)? as u32)
                } else {
                    Self::constant(nvars, parse_rational(base)?)
                };
                prod = prod.mul(&f.pow(exp));
            }
            out = out.add(&prod);
        }
        Ok(out)
    }
}

impl fmt::Display for MultiPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        let parts: Vec<String> = self
            .terms
            .iter()
            .map(|(e, c)| {
                let mono: Vec<String> = e
                    .iter()
                    .enumerate()
                    .filter(|(_, &x)| x > 0)
                    .map(|(i, &x)| if x == 1 { format!("y{}", i + 1) } else { format!("y{}^{x}", i + 1) })
                    .collect();
                match (mono.is_empty(), c == &Rational::one()) {
                    (true, _) => format_rational(c),
                    (false, true) => mono.join("*"),
                    (false, false) => format!("{}*{}", format_rational(c), mono.join("*")),
                }
            })
            .collect();
        write!(f, "{}", parts.join(" + "))
    }
}

/// The linear conditions for Q-cancellation with respect to (y_k, y_l): one
/// map from coefficient vectors per (other exponents, e_k + e_l > 0).
fn q_cancellation_residues(p: &MultiPoly, k: usize, l: usize) -> BTreeMap<(Vec<u32>, u32), Rational> {
    let mut out: BTreeMap<(Vec<u32>, u32), Rational> = BTreeMap::new();
    for (e, c) in p.terms() {
        let d = e[k - 1] + e[l - 1];
        if d == 0 {
            continue;
        }
        let mut rest = e.clone();
        rest[k - 1] = 0;
        rest[l - 1] = 0;
        let c = if e[l - 1] % 2 == 1 { c.neg() } else { c.clone() };
        let v = out.entry((rest, d)).or_insert_with(Rational::zero);
        *v = v.add(&c);
    }
    out.retain(|_, v| !v.is_zero());
    out
}

/// p(…, u, …, −u, …) = p(…, 0, …, 0, …) with u in slots k and l.
pub fn q_cancellation_check(p: &MultiPoly, k: usize, l: usize) -> bool {
    assert!(k != l && k >= 1 && l >= 1 && k <= p.nvars() && l <= p.nvars(), "bad variable pair ({k}, {l})");
    q_cancellation_residues(p, k, l).is_empty()
}

/// The minimal-length w with w·(∧^r, ∨^t) = a: the ups of the standard
/// sequence go to the ups of a in order, likewise the downs.
pub fn minimal_permutation(a: &Sequence) -> Vec<usize> {
    let ups = (0..a.len()).filter(|&i| a.0[i] == Arrow::Up);
    let downs = (0..a.len()).filter(|&i| a.0[i] == Arrow::Down);
    ups.chain(downs).collect()
}

fn check_admissible(p: &MultiPoly, r: usize, t: usize) -> Result<()> {
    if p.nvars() != r + t {
        return Err(Error::NotAdmissible(format!("{} variables for r+t = {}", p.nvars(), r + t)));
    }
    if !p.is_invariant(r) {
        return Err(Error::NotAdmissible(format!("{p} is not invariant under S_{r} × S_{t}")));
    }
    if r > 0 && t > 0 && !q_cancellation_check(p, r, r + 1) {
        return Err(Error::NotAdmissible(format!("{p} does not Q-cancel for (y_{r}, y_{})", r + 1)));
    }
    Ok(())
}

/// What the variable y_k stands for on the block 1_a.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Default)]
pub enum Variables {
    /// ξ_k + δ 1_a when a_k = ∨, ξ_k 1_a when a_k = ∧. On a mixed pair the
    /// shifts add up to δ, so e_k (y_k + y_{k+1}) = 0 and Q-cancellation
    /// becomes meaningful.
    #[default]
    Shifted,
    /// ξ_k 1_a itself.
    Literal,
}

/// Evaluates polynomials in the y's on 1_a, caching monomials.
struct JmEvaluator<'a, S: Ring> {
    br: &'a WalledBrauer<S>,
    vars: Variables,
    xi: Vec<Element<S>>,
    cache: HashMap<(Sequence, Vec<u32>), Element<S>>,
}

impl<'a, S: Ring> JmEvaluator<'a, S> {
    fn new(br: &'a WalledBrauer<S>, vars: Variables) -> Self {
        JmEvaluator { br, vars, xi: jm_elements(br), cache: HashMap::new() }
    }

    fn monomial(&mut self, a: &Sequence, e: &[u32]) -> Element<S> {
        let key = (a.clone(), e.to_vec());
        if let Some(x) = self.cache.get(&key) {
            return x.clone();
        }
        let x = match e.iter().position(|&x| x > 0) {
            None => self.br.idempotent(a),
            Some(j) => {
                let mut lower = e.to_vec();
                lower[j] -= 1;
                let rest = self.monomial(a, &lower);
                let mut x = self.br.mul(&self.xi[j], &rest);
                if self.vars == Variables::Shifted && a.0[j] == Arrow::Down {
                    x = x.add(&rest.scale(&self.br.delta));
                }
                x
            }
        };
        self.cache.insert(key, x.clone());
        x
    }

    fn eval(&mut self, p: &MultiPoly, a: &Sequence) -> Element<S> {
        let mut out = Element::zero();
        for (e, c) in p.terms() {
            out = out.add(&self.monomial(a, e).scale(&S::from_rational(c)));
        }
        out
    }
}

/// Σ_a (w_a·p)(y_1, …, y_n) 1_a with a caller-supplied choice of w_a.
pub fn central_element_with<S: Ring>(
    br: &WalledBrauer<S>,
    p: &MultiPoly,
    vars: Variables,
    choose: impl Fn(&Sequence) -> Vec<usize>,
) -> Result<Element<S>> {
    check_admissible(p, br.r, br.t)?;
    let mut ev = JmEvaluator::new(br, vars);
    let mut out = Element::zero();
    for a in br.sequences() {
        out = out.add(&ev.eval(&p.permute(&choose(&a)), &a));
    }
    Ok(out)
}

pub fn central_element_in<S: Ring>(br: &WalledBrauer<S>, p: &MultiPoly) -> Result<Element<S>> {
    central_element_with(br, p, Variables::Shifted, minimal_permutation)
}

/// The central element of p in Br_{r,t}(δ) with δ formal.
pub fn central_element(p: &MultiPoly, r: usize, t: usize) -> Result<Element<Poly>> {
    central_element_in(&WalledBrauer::formal(r, t), p)
}

/// z commutes with every 1_a and every generator g_k 1_a.
pub fn verify_central<S: Ring>(br: &WalledBrauer<S>, z: &Element<S>) -> Report {
    let mut report = Report::new("centrality");
    for a in br.sequences() {
        let c = br.commutator(z, &br.idempotent(&a));
        report.push(Check::exact("[z, 1_a] = 0", &a, vec![], c.len()));
        for k in 1..br.n() {
            for kind in [GenKind::S, GenKind::SHat, GenKind::E, GenKind::EHat] {
                let g = br.gen(kind, k, &a);
                if g.is_zero() {
                    continue;
                }
                let c = br.commutator(z, &g);
                report.push(Check::exact(format!("[z, {kind:?}_k 1_a] = 0"), &a, vec![k], c.len()));
            }
        }
    }
    report
}

fn terms_text<S: Ring + fmt::Display>(x: &Element<S>) -> String {
    x.to_string()
}

/// The three-strand computation showing that ξ_2 ξ_3 1_{∧∧∨} is not central
/// although ξ_2 + ξ_3 is.
pub fn reproduce_counterexample() -> Report {
    let mut report = Report::new("ξ_2 ξ_3 on 1_{∧∧∨} is not central");
    let br = WalledBrauer::formal(2, 1);
    let a = Sequence::parse("∧∧∨").expect("literal");
    let s1 = br.gen(GenKind::S, 1, &a);
    let e2 = br.gen(GenKind::E, 2, &a);
    let one = br.idempotent(&a);
    let delta = Element::from_diagram(OrientedDiagram::identity(&a)).scale(&Poly::x());
    let p = |xs: &[&Element<Poly>]| br.product(xs);

    let x2 = s1.clone();
    let x3 = p(&[&s1, &e2, &s1]).neg().sub(&e2);
    let xi = jm_elements(&br);
    let eq = |report: &mut Report, name: &str, lhs: &Element<Poly>, rhs: &Element<Poly>| {
        let d = lhs.sub(rhs);
        report.push(Check::exact(name, &a, vec![], d.len()).with_detail(terms_text(lhs)));
    };
    eq(&mut report, "x₂ = ξ₂ 1_a = s₁", &br.mul(&xi[1], &one), &x2);
    eq(&mut report, "x₃ = ξ₃ 1_a = −s₁e₂s₁ − e₂", &br.mul(&xi[2], &one), &x3);

    let x23 = br.mul(&x2, &x3);
    let e2s1 = br.mul(&e2, &s1);
    let s1e2 = br.mul(&s1, &e2);
    eq(&mut report, "x₂x₃ = −e₂s₁ − s₁e₂", &x23, &e2s1.neg().sub(&s1e2));
    let right = br.mul(&x23, &e2);
    let left = br.mul(&e2, &x23);
    eq(&mut report, "x₂x₃e₂ = −e₂ − δ s₁e₂", &right, &e2.neg().sub(&br.mul(&delta, &s1e2)));
    eq(&mut report, "e₂x₂x₃ = −δ e₂s₁ − e₂", &left, &br.mul(&delta, &e2s1).neg().sub(&e2));
    let diff = right.sub(&left);
    eq(&mut report, "x₂x₃e₂ − e₂x₂x₃ = δ(e₂s₁ − s₁e₂)", &diff, &br.mul(&delta, &e2s1.sub(&s1e2)));
    report.push(Check::flag("x₂x₃ does not commute with e₂", !diff.is_zero(), terms_text(&diff)).with_orientation(&a));

    let sum = x2.add(&x3);
    for (name, g) in [("[x₂ + x₃, e₂] = 0", &e2), ("[x₂ + x₃, s₁] = 0", &s1)] {
        report.push(Check::exact(name, &a, vec![], br.commutator(&sum, g).len()));
    }
    report
}

/// One row of the center comparison.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CenterDimension {
    pub r: usize,
    pub t: usize,
    pub delta: String,
    pub full_dim: usize,
    pub constructed_dim: usize,
    pub degree_bound: u32,
}

/// Basis of the block-diagonal part ⊕_a End(1_a), where the center lives.
fn diagonal_basis(br: &WalledBrauer<Rational>) -> Vec<OrientedDiagram> {
    br.sequences().iter().flat_map(|a| br.basis(a, a)).collect()
}

fn coordinates(x: &Element<Rational>, index: &BTreeMap<OrientedDiagram, usize>, n: usize) -> Option<Vec<Rational>> {
    let mut v = vec![Rational::zero(); n];
    for (d, c) in x.terms() {
        v[*index.get(d)?] = c.clone();
    }
    Some(v)
}

/// Dimension of the center of Br_{r,t}(δ), by an exact nullspace.
pub fn full_center_dimension(br: &WalledBrauer<Rational>) -> usize {
    let basis = diagonal_basis(br);
    let mut gens = Vec::new();
    for a in br.sequences() {
        for k in 1..br.n() {
            for kind in [GenKind::S, GenKind::SHat, GenKind::E, GenKind::EHat] {
                let g = br.gen(kind, k, &a);
                if !g.is_zero() {
                    gens.push(g);
                }
            }
        }
    }
    // rows: (generator, diagram) coefficients of [d, g]
    let mut rows: BTreeMap<(usize, OrientedDiagram), Vec<Rational>> = BTreeMap::new();
    for (j, d) in basis.iter().enumerate() {
        let x = Element::from_diagram(d.clone());
        for (gi, g) in gens.iter().enumerate() {
            for (e, c) in br.commutator(&x, g).terms() {
                let row = rows.entry((gi, e.clone())).or_insert_with(|| vec![Rational::zero(); basis.len()]);
                row[j] = c.clone();
            }
        }
    }
    if rows.is_empty() {
        return basis.len();
    }
    let m = QMat::from_rows(rows.into_values().collect());
    basis.len() - m.rank()
}

/// Exponent vectors that are sorted decreasingly on 0..r and on r..n, with
/// total degree ≤ bound: orbit representatives under S_r × S_t.
fn orbit_representatives(r: usize, t: usize, bound: u32) -> Vec<Vec<u32>> {
    fn parts(len: usize, max: u32, total: u32, out: &mut Vec<Vec<u32>>, cur: &mut Vec<u32>) {
        if cur.len() == len {
            out.push(cur.clone());
            return;
        }
        for x in 0..=max.min(total) {
            cur.push(x);
            parts(len, x, total - x, out, cur);
            cur.pop();
        }
    }
    let (mut left, mut right) = (Vec::new(), Vec::new());
    parts(r, bound, bound, &mut left, &mut Vec::new());
    parts(t, bound, bound, &mut right, &mut Vec::new());
    let mut out = Vec::new();
    for l in &left {
        for rr in &right {
            if l.iter().sum::<u32>() + rr.iter().sum::<u32>() <= bound {
                out.push(l.iter().chain(rr).copied().collect());
            }
        }
    }
    out
}

fn orbit_sum(rep: &[u32], r: usize) -> MultiPoly {
    fn perms(v: &[u32]) -> Vec<Vec<u32>> {
        if v.is_empty() {
            return vec![vec![]];
        }
        let mut out = Vec::new();
        let mut seen = Vec::new();
        for i in 0..v.len() {
            if seen.contains(&v[i]) {
                continue;
            }
            seen.push(v[i]);
            let mut rest = v.to_vec();
            let x = rest.remove(i);
            for mut p in perms(&rest) {
                p.insert(0, x);
                out.push(p);
            }
        }
        out
    }
    let mut p = MultiPoly::zero(rep.len());
    for l in perms(&rep[..r]) {
        for rr in perms(&rep[r..]) {
            p.add_term(l.iter().chain(&rr).copied().collect(), Rational::one());
        }
    }
    p
}

/// A basis of the (S_r × S_t)-invariant polynomials of degree ≤ bound that
/// Q-cancel for (y_r, y_{r+1}).
pub fn admissible_basis(r: usize, t: usize, bound: u32) -> Vec<MultiPoly> {
    let orbits: Vec<MultiPoly> = orbit_representatives(r, t, bound).iter().map(|e| orbit_sum(e, r)).collect();
    if r == 0 || t == 0 {
        return orbits;
    }
    let mut keys: BTreeMap<(Vec<u32>, u32), usize> = BTreeMap::new();
    let residues: Vec<_> = orbits.iter().map(|p| q_cancellation_residues(p, r, r + 1)).collect();
    for res in &residues {
        for k in res.keys() {
            let next = keys.len();
            keys.entry(k.clone()).or_insert(next);
        }
    }
    if keys.is_empty() {
        return orbits;
    }
    let m = QMat::from_fn(keys.len(), orbits.len(), |i, j| {
        residues[j].iter().find(|(k, _)| keys[*k] == i).map(|(_, v)| v.clone()).unwrap_or_else(Rational::zero)
    });
    m.nullspace()
        .into_iter()
        .map(|v| v.iter().zip(&orbits).fold(MultiPoly::zero(r + t), |acc, (c, p)| acc.add(&p.scale(c))))
        .collect()
}

/// Full center against the span of the constructed central elements of
/// degree ≤ 2(r+t), at a fixed δ. Equality is reported, never assumed.
pub fn center_dimension(r: usize, t: usize, delta: &Rational) -> Result<(CenterDimension, Report)> {
    let br = WalledBrauer::new(r, t, delta.clone());
    let bound = 2 * (r + t) as u32;
    let basis = diagonal_basis(&br);
    let index: BTreeMap<OrientedDiagram, usize> = basis.iter().cloned().enumerate().map(|(i, d)| (d, i)).collect();
    let mut report = Report::new(format!("center of Br_{{{r},{t}}}({})", format_rational(delta)));
    let mut vectors = Vec::new();
    let mut noncentral = 0;
    for p in admissible_basis(r, t, bound) {
        let z = central_element_in(&br, &p)?;
        if !verify_central(&br, &z).passed() {
            noncentral += 1;
        }
        vectors.push(coordinates(&z, &index, basis.len()).ok_or_else(|| Error::ClosureFailure("central element leaves the diagonal blocks".into()))?);
    }
    let constructed = if vectors.is_empty() { 0 } else { QMat::from_rows(vectors).rank() };
    let full = full_center_dimension(&br);
    report.push(Check::flag("constructed elements are central", noncentral == 0, format!("{noncentral} failures")));
    report.push(Check::flag("constructed ≤ full", constructed <= full, format!("{constructed} ≤ {full}")));
    let row = CenterDimension { r, t, delta: format_rational(delta), full_dim: full, constructed_dim: constructed, degree_bound: bound };
    Ok((row, report))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn q_cancellation_examples() {
        let p = MultiPoly::parse("y1 + y2", 2).unwrap();
        assert!(q_cancellation_check(&p, 1, 2));
        assert!(!q_cancellation_check(&MultiPoly::parse("y1*y2", 2).unwrap(), 1, 2));
        assert!(q_cancellation_check(&MultiPoly::power_sum(3, 3), 1, 2));
    }

    #[test]
    fn parse_and_display() {
        let p = MultiPoly::parse("p1^2 - 2*y1*y2", 2).unwrap();
        assert_eq!(p, MultiPoly::parse("y1^2 + y2^2", 2).unwrap());
        assert_eq!(p.to_string(), "y2^2 + y1^2");
        assert!(MultiPoly::parse("y3", 2).is_err());
    }

    #[test]
    fn minimal_permutations() {
        assert_eq!(minimal_permutation(&Sequence::parse("∨∧∧").unwrap()), vec![1, 2, 0]);
        assert_eq!(minimal_permutation(&Sequence::parse("∧∧∨").unwrap()), vec![0, 1, 2]);
    }

    #[test]
    fn sum_of_jm_is_central() {
        let z = central_element(&MultiPoly::power_sum(3, 1), 2, 1).unwrap();
        let a = Sequence::parse("∧∧∨").unwrap();
        let br = WalledBrauer::formal(2, 1);
        let xi = jm_elements(&br);
        let one = br.idempotent(&a);
        let want = br.mul(&xi[0].add(&xi[1]).add(&xi[2]), &one).add(&one.scale(&Poly::x()));
        assert_eq!(z.block(&a, &a), want);
        assert!(verify_central(&br, &z).passed());
        assert!(central_element(&MultiPoly::zero(3), 2, 1).unwrap().is_zero());
    }

    #[test]
    fn literal_variables_break_cubes() {
        let br = WalledBrauer::formal(2, 1);
        let p3 = MultiPoly::power_sum(3, 3);
        let lit = central_element_with(&br, &p3, Variables::Literal, minimal_permutation).unwrap();
        assert!(!verify_central(&br, &lit).passed());
        assert!(verify_central(&br, &central_element(&p3, 2, 1).unwrap()).passed());
    }

    #[test]
    fn not_central_without_cancellation() {
        let p = MultiPoly::parse("y1*y3 + y2*y3", 3).unwrap();
        assert!(matches!(central_element(&p, 2, 1), Err(Error::NotAdmissible(_))));
        let br = WalledBrauer::formal(2, 1);
        let a = Sequence::parse("∧∧∨").unwrap();
        assert!(!verify_central(&br, &br.gen(GenKind::S, 1, &a)).passed());
        assert!(verify_central(&br, &br.one()).passed());
    }

    #[test]
    fn counterexample() {
        let rep = reproduce_counterexample();
        assert!(rep.passed(), "{:#?}", rep.failures().collect::<Vec<_>>());
    }

    #[test]
    fn trivial_center() {
        let (row, _) = center_dimension(1, 0, &int(3)).unwrap();
        assert_eq!((row.full_dim, row.constructed_dim), (1, 1));
    }
}
