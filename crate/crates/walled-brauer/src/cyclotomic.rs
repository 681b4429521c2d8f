//! The level-2 cyclotomic quotient of the degenerate affine walled Brauer
//! algebra, built as explicit matrices on its column modules VB·1_a.
//!
//! Basis: y^α · d · y^β where d is an oriented diagram a → b, α marks top
//! endpoints that are either through strands or left ends of cups, and β
//! marks left ends of caps. That is 2^{r+t} monomials per diagram.
//!
//! Everything is computed by left multiplication only. Sliding a dot along
//! a strand of d produces a dot-free correction. The map onto Br(ω₀) with
//! y_k 1_a ↦ (ξ_k + γ(a_k)) 1_a, γ(∧) = 1, γ(∨) = ω₀ − 1, identifies it:
//! ξ_k d − d ξ_x for a through strand from B_x to T_k, and
//! (ξ_i + ξ_l + ω₀) d for a cup (T_i, T_l). Both are evaluated exactly in
//! Br(ω₀).

use std::collections::{BTreeMap, HashMap};
use std::fmt;
use std::path::{Path, PathBuf};

use serde::{Deserialize, Serialize};

use crate::algebra::{Element, WalledBrauer};
use crate::diagram::{End, GenKind, OrientedDiagram, Sequence};
use crate::error::{Error, Result};
use crate::jm::jm_elements;
use crate::matrix::QMat;
use crate::params::Params;
use crate::presentation::{check_relations, record, Defect, Gens, RelationModel};
use crate::report::{Check, Report};
use crate::scalar::{format_rational, parse_rational, Rational, Ring};

pub const DEFAULT_BUDGET: usize = 1_000_000;

/// y^α · d · y^β, with α over top positions and β over bottom positions
/// (bit p−1 for position p).
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Debug)]
pub struct NormalMonomial {
    pub left: u32,
    pub diagram: OrientedDiagram,
    pub right: u32,
}

fn bit(p: usize) -> u32 {
    1 << (p - 1)
}

fn positions(mask: u32) -> Vec<usize> {
    (1..=32).filter(|&p| mask & bit(p) != 0).collect()
}

impl NormalMonomial {
    pub fn undotted(d: OrientedDiagram) -> Self {
        NormalMonomial { left: 0, diagram: d, right: 0 }
    }

    pub fn target(&self) -> &Sequence {
        self.diagram.target()
    }

    pub fn degree(&self) -> u32 {
        self.left.count_ones() + self.right.count_ones()
    }

    pub fn to_text(&self) -> String {
        let fmt = |m: u32| positions(m).iter().map(|p| p.to_string()).collect::<Vec<_>>().join(",");
        format!("y[{}] {} y[{}]", fmt(self.left), self.diagram.to_text(), fmt(self.right))
    }

    pub fn parse(s: &str) -> Result<Self> {
        let bad = || Error::Parse(format!("bad monomial {s:?}"));
        let s = s.trim();
        let rest = s.strip_prefix("y[").ok_or_else(bad)?;
        let (left, rest) = rest.split_once(']').ok_or_else(bad)?;
        let (diag, right) = rest.rsplit_once("y[").ok_or_else(bad)?;
        let right = right.strip_suffix(']').ok_or_else(bad)?;
        let mask = |t: &str| -> Result<u32> {
            t.split(',')
                .map(str::trim)
                .filter(|x| !x.is_empty())
                .map(|x| x.parse::<usize>().map(bit).map_err(|_| bad()))
                .try_fold(0, |acc, b| b.map(|b| acc | b))
        };
        Ok(NormalMonomial { left: mask(left)?, diagram: OrientedDiagram::parse(diag.trim())?, right: mask(right)? })
    }

    /// Top positions that may carry a dot.
    pub fn allowed_left(d: &OrientedDiagram) -> u32 {
        (1..=d.n())
            .filter(|&p| match d.from_top(p) {
                End::Bottom(_) => true,
                End::Top(l) => l > p,
            })
            .fold(0, |acc, p| acc | bit(p))
    }

    /// Bottom positions that may carry a dot: left ends of caps.
    pub fn allowed_right(d: &OrientedDiagram) -> u32 {
        (1..=d.n())
            .filter(|&p| matches!(d.from_bottom(p), End::Bottom(l) if l > p))
            .fold(0, |acc, p| acc | bit(p))
    }

    /// All normal monomials a → b.
    pub fn enumerate(a: &Sequence, b: &Sequence) -> Vec<NormalMonomial> {
        let mut out = Vec::new();
        for d in OrientedDiagram::enumerate(a, b) {
            let (la, ra) = (Self::allowed_left(&d), Self::allowed_right(&d));
            for left in submasks(la) {
                for right in submasks(ra) {
                    out.push(NormalMonomial { left, diagram: d.clone(), right });
                }
            }
        }
        out.sort();
        out
    }
}

fn submasks(mask: u32) -> Vec<u32> {
    let mut out = vec![0];
    for p in positions(mask) {
        let with: Vec<u32> = out.iter().map(|m| m | bit(p)).collect();
        out.extend(with);
    }
    out.sort();
    out
}

impl fmt::Display for NormalMonomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.to_text())
    }
}

/// Linear combination of normal monomials.
pub type Lin = BTreeMap<NormalMonomial, Rational>;

fn lin_add(acc: &mut Lin, nf: NormalMonomial, c: &Rational) {
    use std::collections::btree_map::Entry;
    if c.is_zero() {
        return;
    }
    match acc.entry(nf) {
        Entry::Vacant(v) => {
            v.insert(c.clone());
        }
        Entry::Occupied(mut o) => {
            let sum = o.get().add(c);
            if sum.is_zero() {
                o.remove();
            } else {
                *o.get_mut() = sum;
            }
        }
    }
}

fn lin_axpy(acc: &mut Lin, c: &Rational, x: &Lin) {
    for (k, v) in x {
        lin_add(acc, k.clone(), &v.mul(c));
    }
}

fn single(nf: NormalMonomial) -> Lin {
    let mut l = Lin::new();
    l.insert(nf, Rational::one());
    l
}

/// One letter of a word: a dot or a generator.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Letter {
    Y(usize),
    G(GenKind, usize),
}

/// The rewriting engine for one rank and parameter set.
pub struct Engine {
    pub params: Params,
    pub r: usize,
    pub t: usize,
    br: WalledBrauer<Rational>,
    xi: Vec<Element<Rational>>,
    memo_y: HashMap<(usize, NormalMonomial), Lin>,
    memo_g: HashMap<(GenKind, usize, NormalMonomial), Lin>,
    steps: usize,
    budget: usize,
}

impl Engine {
    pub fn new(r: usize, t: usize, params: Params) -> Self {
        let br = WalledBrauer::new(r, t, params.omega0());
        let xi = jm_elements(&br);
        Engine { params, r, t, br, xi, memo_y: HashMap::new(), memo_g: HashMap::new(), steps: 0, budget: DEFAULT_BUDGET }
    }

    pub fn with_budget(mut self, budget: usize) -> Self {
        self.budget = budget;
        self
    }

    pub fn n(&self) -> usize {
        self.r + self.t
    }

    fn tick(&mut self) -> Result<()> {
        self.steps += 1;
        if self.steps > self.budget {
            Err(Error::ReductionBudgetExceeded(self.budget))
        } else {
            Ok(())
        }
    }

    /// y^mask · 1_a
    pub fn dotted_identity(&self, a: &Sequence, mask: u32) -> NormalMonomial {
        NormalMonomial { left: mask, diagram: OrientedDiagram::identity(a), right: 0 }
    }

    pub fn y_lin(&mut self, j: usize, x: &Lin) -> Result<Lin> {
        let mut out = Lin::new();
        for (nf, c) in x {
            let r = self.y(j, nf)?;
            lin_axpy(&mut out, c, &r);
        }
        Ok(out)
    }

    pub fn gen_lin(&mut self, kind: GenKind, k: usize, x: &Lin) -> Result<Lin> {
        let mut out = Lin::new();
        for (nf, c) in x {
            let r = self.gen(kind, k, nf)?;
            lin_axpy(&mut out, c, &r);
        }
        Ok(out)
    }

    /// The crossing at k admissible on the current target.
    fn cross_kind(target: &Sequence, k: usize) -> GenKind {
        if target.at(k) == target.at(k + 1) {
            GenKind::S
        } else {
            GenKind::SHat
        }
    }

    fn cross_lin(&mut self, k: usize, x: &Lin) -> Result<Lin> {
        let mut out = Lin::new();
        for (nf, c) in x {
            let kind = Self::cross_kind(nf.target(), k);
            let r = self.gen(kind, k, nf)?;
            lin_axpy(&mut out, c, &r);
        }
        Ok(out)
    }

    /// Left multiplication by an undotted diagram.
    pub fn diagram_lin(&mut self, d: &OrientedDiagram, x: &Lin) -> Result<Lin> {
        let mut cur = x.clone();
        for g in d.word().iter().rev() {
            if g.is_permutation() && *g == OrientedDiagram::identity(g.source()) {
                continue;
            }
            let (kind, k) = classify(g);
            cur = self.gen_lin(kind, k, &cur)?;
        }
        Ok(cur)
    }

    fn left_dots(&mut self, mask: u32, x: Lin) -> Result<Lin> {
        let mut cur = x;
        for p in positions(mask) {
            cur = self.y_lin(p, &cur)?;
        }
        Ok(cur)
    }

    /// C · y^β for a dot-free element C of Br(ω₀) with source a.
    fn correction(&mut self, c: &Element<Rational>, beta: u32, a: &Sequence) -> Result<Lin> {
        let base = single(self.dotted_identity(a, beta));
        let mut out = Lin::new();
        let terms: Vec<(OrientedDiagram, Rational)> = c.terms().map(|(d, v)| (d.clone(), v.clone())).collect();
        for (d, v) in terms {
            let r = self.diagram_lin(&d, &base)?;
            lin_axpy(&mut out, &v, &r);
        }
        Ok(out)
    }

    fn xi_left(&self, k: usize, d: &OrientedDiagram) -> Element<Rational> {
        self.br.mul(&self.xi[k - 1], &Element::from_diagram(d.clone()))
    }

    fn xi_right(&self, d: &OrientedDiagram, x: usize) -> Element<Rational> {
        self.br.mul(&Element::from_diagram(d.clone()), &self.xi[x - 1])
    }

    /// (ξ_i + ξ_l + ω₀) d for a cup (T_i, T_l) of d.
    fn cup_correction(&self, i: usize, l: usize, d: &OrientedDiagram) -> Element<Rational> {
        let whole = Element::from_diagram(d.clone()).scale(&self.params.omega0());
        self.xi_left(i, d).add(&self.xi_left(l, d)).add(&whole)
    }

    /// y_j · nf
    pub fn y(&mut self, j: usize, nf: &NormalMonomial) -> Result<Lin> {
        if let Some(r) = self.memo_y.get(&(j, nf.clone())) {
            return Ok(r.clone());
        }
        self.tick()?;
        let res = self.y_uncached(j, nf)?;
        self.memo_y.insert((j, nf.clone()), res.clone());
        Ok(res)
    }

    fn y_uncached(&mut self, j: usize, nf: &NormalMonomial) -> Result<Lin> {
        let d = &nf.diagram;
        let b = d.target().clone();
        let a = d.source().clone();
        let allowed = NormalMonomial::allowed_left(d) & bit(j) != 0;
        if allowed && nf.left & bit(j) == 0 {
            let mut out = nf.clone();
            out.left |= bit(j);
            return Ok(single(out));
        }
        if !allowed {
            // right end of a cup (T_i, T_j)
            let End::Top(i) = d.from_top(j) else { unreachable!("only cup ends are disallowed") };
            let mut out = self.y(i, nf)?;
            out.values_mut().for_each(|v| *v = v.neg());
            let c = self.cup_correction(i, j, d);
            let corr = self.correction(&c, nf.right, &a)?;
            let corr = self.left_dots(nf.left, corr)?;
            lin_axpy(&mut out, &Rational::one(), &corr);
            return Ok(out);
        }
        // collision: reduce y_j² using the cyclotomic relation at j = 1 or
        // y_j = ṡ y_{j−1} ṡ + (s_{j−1} or −e_{j−1}) otherwise
        if j == 1 {
            let (b1, b2) = (self.params.beta1(b.at(1)), self.params.beta2(b.at(1)));
            let mut out = Lin::new();
            lin_add(&mut out, nf.clone(), &b1.add(&b2));
            let mut lower = nf.clone();
            lower.left &= !bit(1);
            lin_add(&mut out, lower, &b1.mul(&b2).neg());
            return Ok(out);
        }
        let k = j - 1;
        let x = single(nf.clone());
        let x1 = self.cross_lin(k, &x)?;
        let x2 = self.y_lin(k, &x1)?;
        let mut out = self.cross_lin(k, &x2)?;
        let corr = if b.at(k) == b.at(k + 1) {
            self.gen(GenKind::S, k, nf)?
        } else {
            let mut e = self.gen(GenKind::E, k, nf)?;
            e.values_mut().for_each(|v| *v = v.neg());
            e
        };
        lin_axpy(&mut out, &Rational::one(), &corr);
        Ok(out)
    }

    /// g_k · nf for a generator acting on the target of nf; zero when the
    /// generator is inadmissible there.
    pub fn gen(&mut self, kind: GenKind, k: usize, nf: &NormalMonomial) -> Result<Lin> {
        let key = (kind, k, nf.clone());
        if let Some(r) = self.memo_g.get(&key) {
            return Ok(r.clone());
        }
        self.tick()?;
        let res = self.gen_uncached(kind, k, nf)?;
        self.memo_g.insert(key, res.clone());
        Ok(res)
    }

    fn gen_uncached(&mut self, kind: GenKind, k: usize, nf: &NormalMonomial) -> Result<Lin> {
        let b = nf.target().clone();
        let a = nf.diagram.source().clone();
        let Ok(g) = OrientedDiagram::generator(kind, k, &b) else {
            return Ok(Lin::new());
        };
        if kind == GenKind::Id {
            return Ok(single(nf.clone()));
        }
        let near_mask = bit(k) | bit(k + 1);
        let near = nf.left & near_mask;
        let far = nf.left & !near_mask;
        if far != 0 {
            let base = NormalMonomial { left: near, ..nf.clone() };
            let r = self.gen(kind, k, &base)?;
            return self.left_dots(far, r);
        }
        let crossing = matches!(kind, GenKind::S | GenKind::SHat);
        if near == 0 {
            let (d, loops) = OrientedDiagram::compose(&g, &nf.diagram)?;
            let mut c = Rational::one();
            for _ in 0..loops {
                c = c.mul(&self.params.omega0());
            }
            debug_assert_eq!(nf.right & !NormalMonomial::allowed_right(&d), 0);
            let mut out = Lin::new();
            lin_add(&mut out, NormalMonomial { left: 0, diagram: d, right: nf.right }, &c);
            return Ok(out);
        }
        if crossing {
            // ṡ_k y_k = y_{k+1} ṡ_k + c,  ṡ_k y_{k+1} = y_k ṡ_k − c,
            // with c = −1 for s_k and c = ê_k for ŝ_k
            let p = if near & bit(k) != 0 { k } else { k + 1 };
            let q = if p == k { k + 1 } else { k };
            let x = NormalMonomial { left: near & !bit(p), ..nf.clone() };
            let moved = self.gen(kind, k, &x)?;
            let mut out = self.y_lin(q, &moved)?;
            let sign = if p == k { Rational::one() } else { Rational::one().neg() };
            match kind {
                GenKind::S => lin_add(&mut out, x, &sign.neg()),
                _ => {
                    let e = self.gen(GenKind::EHat, k, &x)?;
                    lin_axpy(&mut out, &sign, &e);
                }
            }
            return Ok(out);
        }
        if near == near_mask {
            // ė y_k y_{k+1} = −ė y_k²
            let x = NormalMonomial { left: bit(k), ..nf.clone() };
            let sq = self.y(k, &x)?;
            let mut out = self.gen_lin(kind, k, &sq)?;
            out.values_mut().for_each(|v| *v = v.neg());
            return Ok(out);
        }
        if near == bit(k + 1) {
            let x = NormalMonomial { left: bit(k), ..nf.clone() };
            let mut out = self.gen(kind, k, &x)?;
            out.values_mut().for_each(|v| *v = v.neg());
            return Ok(out);
        }
        // a single dot at k under the cap of ė_k
        let d = nf.diagram.clone();
        let w = NormalMonomial { left: 0, ..nf.clone() };
        let (ek, ek1) = (d.from_top(k), d.from_top(k + 1));
        if ek == End::Top(k + 1) {
            return self.dotted_bubble(k, nf, &g);
        }
        if let End::Top(l) = ek {
            // y_k d = −y_l d + (ξ_k + ξ_l) d
            let base = self.gen(kind, k, &w)?;
            let mut out = self.y_lin(l, &base)?;
            out.values_mut().for_each(|v| *v = v.neg());
            let c = self.cup_correction(k, l, &d);
            let corr = self.correction(&c, nf.right, &a)?;
            let corr = self.gen_lin(kind, k, &corr)?;
            lin_axpy(&mut out, &Rational::one(), &corr);
            return Ok(out);
        }
        if let End::Top(l) = ek1 {
            // ė y_k = −ė y_{k+1}, then along the cup (T_{k+1}, T_l)
            let base = self.gen(kind, k, &w)?;
            let mut out = self.y_lin(l, &base)?;
            let c = self.cup_correction(k + 1, l, &d);
            let corr = self.correction(&c, nf.right, &a)?;
            let corr = self.gen_lin(kind, k, &corr)?;
            lin_axpy(&mut out, &Rational::one().neg(), &corr);
            return Ok(out);
        }
        let (End::Bottom(x), End::Bottom(x2)) = (ek, ek1) else { unreachable!() };
        // slide down whichever foot reaches the left end of the new cap
        let (start, land, sign) = if x < x2 { (k, x, Rational::one()) } else { (k + 1, x2, Rational::one().neg()) };
        let (composite, loops) = OrientedDiagram::compose(&g, &d)?;
        debug_assert_eq!(loops, 0);
        let mut out = Lin::new();
        lin_add(&mut out, NormalMonomial { left: 0, diagram: composite, right: nf.right | bit(land) }, &sign);
        let c = self.xi_left(start, &d).sub(&self.xi_right(&d, land));
        let corr = self.correction(&c, nf.right, &a)?;
        let corr = self.gen_lin(kind, k, &corr)?;
        lin_axpy(&mut out, &sign, &corr);
        Ok(out)
    }

    /// ė_k y_k · d y^β where d has a cup at (k, k+1): a dotted bubble.
    fn dotted_bubble(&mut self, k: usize, nf: &NormalMonomial, g: &OrientedDiagram) -> Result<Lin> {
        let d = &nf.diagram;
        if k == 1 {
            let (composite, loops) = OrientedDiagram::compose(g, d)?;
            debug_assert_eq!(loops, 1);
            let value = self.params.omega(d.target().at(1), 1);
            let mut out = Lin::new();
            lin_add(&mut out, NormalMonomial { left: 0, diagram: composite, right: nf.right }, &value);
            return Ok(out);
        }
        // ė_k = w ė_{k−1} w⁻¹ with w = ṡ_{k−1} ṡ_k, hats chosen to match
        let want = g.target().clone();
        let x = single(nf.clone());
        let x1 = self.cross_lin(k - 1, &x)?;
        let x2 = self.cross_lin(k, &x1)?;
        let Some(t2) = x2.keys().next().map(|m| m.target().clone()) else {
            return Ok(Lin::new());
        };
        for inner in [GenKind::E, GenKind::EHat] {
            if OrientedDiagram::generator(inner, k - 1, &t2).is_err() {
                continue;
            }
            let t3 = if inner == GenKind::E { t2.clone() } else { t2.swapped(k - 1) };
            if t3.swapped(k).swapped(k - 1) != want {
                continue;
            }
            let x3 = self.gen_lin(inner, k - 1, &x2)?;
            let x4 = self.cross_lin(k, &x3)?;
            return self.cross_lin(k - 1, &x4);
        }
        Err(Error::ClosureFailure(format!("no orientation lift for the bubble at {k}")))
    }

    /// Evaluates a word (leftmost letter applied last) on 1_a.
    pub fn reduce(&mut self, word: &[Letter], a: &Sequence) -> Result<Lin> {
        let mut cur = single(NormalMonomial::undotted(OrientedDiagram::identity(a)));
        for letter in word.iter().rev() {
            cur = match *letter {
                Letter::Y(j) => self.y_lin(j, &cur)?,
                Letter::G(kind, k) => self.gen_lin(kind, k, &cur)?,
            };
        }
        Ok(cur)
    }

    /// The monomial rebuilt from its own word: y^α, then d, then y^β on 1_a.
    pub fn realise(&mut self, nf: &NormalMonomial) -> Result<Lin> {
        let a = nf.diagram.source().clone();
        let base = single(self.dotted_identity(&a, nf.right));
        let mid = self.diagram_lin(&nf.diagram, &base)?;
        self.left_dots(nf.left, mid)
    }
}

fn classify(g: &OrientedDiagram) -> (GenKind, usize) {
    for k in 1..g.n() {
        for kind in [GenKind::S, GenKind::SHat, GenKind::E, GenKind::EHat] {
            if OrientedDiagram::generator(kind, k, g.source()).as_ref() == Ok(g) {
                return (kind, k);
            }
        }
    }
    (GenKind::Id, 0)
}

/// The column module VB^cycl · 1_a with its generator matrices.
#[derive(Clone, Debug)]
pub struct Column {
    pub a: Sequence,
    pub sequences: Vec<Sequence>,
    pub basis: Vec<NormalMonomial>,
    /// Basis index range of each target block 1_b, in `sequences` order.
    pub blocks: Vec<(usize, usize)>,
    pub y: Vec<QMat>,
    /// Summed generators g_k = Σ_b g_k 1_b, keyed by (kind, k).
    pub gens: BTreeMap<(GenKind, usize), QMat>,
    pub omega0: Rational,
}

impl Column {
    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    pub fn block_of(&self, b: &Sequence) -> (usize, usize) {
        self.blocks[self.sequences.iter().position(|s| s == b).expect("sequence of this rank")]
    }

    /// Projection 1_b.
    pub fn projection(&self, b: &Sequence) -> QMat {
        let (lo, hi) = self.block_of(b);
        let n = self.dim();
        QMat::from_fn(n, n, |i, j| if i == j && (lo..hi).contains(&i) { Rational::one() } else { Rational::zero() })
    }

    pub fn gen(&self, kind: GenKind, k: usize) -> QMat {
        self.gens.get(&(kind, k)).cloned().unwrap_or_else(|| QMat::zeros(self.dim(), self.dim()))
    }

    /// Unit vector of 1_a.
    pub fn unit_vector(&self) -> Vec<Rational> {
        let id = NormalMonomial::undotted(OrientedDiagram::identity(&self.a));
        let mut v = vec![Rational::zero(); self.dim()];
        v[self.basis.iter().position(|m| *m == id).expect("identity is a basis element")] = Rational::one();
        v
    }
}

#[derive(Clone, Debug)]
pub struct CyclotomicAlgebra {
    pub r: usize,
    pub t: usize,
    pub params: Params,
    pub columns: Vec<Column>,
}

fn lin_to_vec(x: &Lin, index: &HashMap<NormalMonomial, usize>, n: usize) -> Result<Vec<Rational>> {
    let mut v = vec![Rational::zero(); n];
    for (m, c) in x {
        let i = *index.get(m).ok_or_else(|| Error::ClosureFailure(format!("{m} is not a basis monomial")))?;
        v[i] = c.clone();
    }
    Ok(v)
}

impl CyclotomicAlgebra {
    pub fn n(&self) -> usize {
        self.r + self.t
    }

    pub fn column(&self, a: &Sequence) -> &Column {
        self.columns.iter().find(|c| &c.a == a).expect("sequence of this rank")
    }
}

/// Builds every column module by rewriting. Checks that each basis
/// monomial is reproduced by its own word (cyclicity).
pub fn build(r: usize, t: usize, params: &Params) -> Result<CyclotomicAlgebra> {
    params.check_assumption(r, t)?;
    let mut engine = Engine::new(r, t, params.clone());
    let seqs = Sequence::all(r, t);
    let n = r + t;
    let mut columns = Vec::new();
    for a in &seqs {
        let mut basis = Vec::new();
        let mut blocks = Vec::new();
        for b in &seqs {
            let lo = basis.len();
            basis.extend(NormalMonomial::enumerate(a, b));
            blocks.push((lo, basis.len()));
        }
        let dim = basis.len();
        let index: HashMap<NormalMonomial, usize> = basis.iter().cloned().enumerate().map(|(i, m)| (m, i)).collect();
        for m in &basis {
            let got = engine.realise(m)?;
            if got != single(m.clone()) {
                return Err(Error::ClosureFailure(format!("{m} is not reproduced by its word")));
            }
        }
        let mut op = |f: &mut dyn FnMut(&mut Engine, &NormalMonomial) -> Result<Lin>| -> Result<QMat> {
            let mut cols = Vec::with_capacity(dim);
            for m in &basis {
                cols.push(lin_to_vec(&f(&mut engine, m)?, &index, dim)?);
            }
            Ok(QMat::from_columns(dim, &cols))
        };
        let mut y = Vec::new();
        for j in 1..=n {
            y.push(op(&mut |e, m| e.y(j, m))?);
        }
        let mut gens = BTreeMap::new();
        for k in 1..n {
            for kind in [GenKind::S, GenKind::SHat, GenKind::E, GenKind::EHat] {
                gens.insert((kind, k), op(&mut |e, m| e.gen(kind, k, m))?);
            }
        }
        columns.push(Column { a: a.clone(), sequences: seqs.clone(), basis, blocks, y, gens, omega0: params.omega0() });
    }
    Ok(CyclotomicAlgebra { r, t, params: params.clone(), columns })
}

impl RelationModel for Column {
    type Elem = QMat;

    fn n(&self) -> usize {
        self.y.len()
    }
    fn sequences(&self) -> Vec<Sequence> {
        self.sequences.clone()
    }
    fn zero(&self) -> QMat {
        QMat::zeros(self.dim(), self.dim())
    }
    fn unit(&self, a: &Sequence) -> QMat {
        self.projection(a)
    }
    fn gen(&self, kind: GenKind, k: usize, a: &Sequence) -> QMat {
        if k == 0 || k >= self.n() || OrientedDiagram::generator(kind, k, a).is_err() {
            return self.zero();
        }
        Column::gen(self, kind, k).mul(&self.projection(a))
    }
    fn mul(&self, x: &QMat, y: &QMat) -> QMat {
        x.mul(y)
    }
    fn add(&self, x: &QMat, y: &QMat) -> QMat {
        x.add(y)
    }
    fn sub(&self, x: &QMat, y: &QMat) -> QMat {
        x.sub(y)
    }
    fn times_delta(&self, x: &QMat) -> QMat {
        x.scale(&self.omega0)
    }
    fn defect(&self, x: &QMat) -> Defect {
        Defect::Terms((0..x.rows()).map(|i| x.row(i).iter().filter(|v| !v.is_zero()).count()).sum())
    }
}

/// Affine and cyclotomic relations on one column, exactly.
pub fn check_affine(col: &Column, params: &Params) -> Report {
    let mut report = Report::new(format!("affine and cyclotomic relations on VB·1_{}", col.a));
    let n = col.n();
    let g = Gens::build(col);
    let none = Sequence(vec![]);
    let y = &col.y;
    let zero_check = |report: &mut Report, name: &str, idx: Vec<usize>, x: &QMat| {
        record(col, report, name, &none, idx, x, 0.0);
    };
    for i in 0..n {
        for b in &col.sequences {
            let p = col.projection(b);
            zero_check(&mut report, "Br7a y_i 1_b = 1_b y_i", vec![i + 1], &y[i].mul(&p).sub(&p.mul(&y[i])));
        }
        for j in i + 1..n {
            zero_check(&mut report, "Br7b y_i y_j = y_j y_i", vec![i + 1, j + 1], &y[i].mul(&y[j]).sub(&y[j].mul(&y[i])));
        }
    }
    for k in 1..n {
        for i in 1..=n {
            if i == k || i == k + 1 {
                continue;
            }
            let yi = &y[i - 1];
            zero_check(&mut report, "Br8a ṡ_k y_i = y_i ṡ_k", vec![k, i], &g.sd[k].mul(yi).sub(&yi.mul(&g.sd[k])));
            zero_check(&mut report, "Br8b ė_k y_i = y_i ė_k", vec![k, i], &g.ed[k].mul(yi).sub(&yi.mul(&g.ed[k])));
        }
        let (yk, yk1) = (&y[k - 1], &y[k]);
        let same: QMat = col
            .sequences
            .iter()
            .filter(|b| b.at(k) == b.at(k + 1))
            .fold(col.zero(), |acc, b| acc.add(&col.projection(b)));
        let s = &g.s[k];
        zero_check(&mut report, "Br10a s_k y_k − y_{k+1} s_k = −1", vec![k], &s.mul(yk).sub(&yk1.mul(s)).add(&same));
        zero_check(&mut report, "Br10a s_k y_{k+1} − y_k s_k = 1", vec![k], &s.mul(yk1).sub(&yk.mul(s)).sub(&same));
        let sh = &g.sh[k];
        zero_check(&mut report, "Br10b ŝ_k y_k − y_{k+1} ŝ_k = ê_k", vec![k], &sh.mul(yk).sub(&yk1.mul(sh)).sub(&g.eh[k]));
        zero_check(&mut report, "Br10b ŝ_k y_{k+1} − y_k ŝ_k = −ê_k", vec![k], &sh.mul(yk1).sub(&yk.mul(sh)).add(&g.eh[k]));
        let ysum = yk.add(yk1);
        zero_check(&mut report, "Br11a ė_k (y_k + y_{k+1}) = 0", vec![k], &g.ed[k].mul(&ysum));
        zero_check(&mut report, "Br11b (y_k + y_{k+1}) ė_k = 0", vec![k], &ysum.mul(&g.ed[k]));
    }
    if n >= 2 {
        for b in col.sequences.iter().filter(|b| b.at(1) != b.at(2)) {
            let e1 = RelationModel::gen(col, GenKind::E, 1, b);
            let mut yp = col.projection(b);
            for r in 0..4 {
                let lhs = g.e[1].mul(&yp).mul(&e1);
                let w = params.omega(b.at(1), r);
                zero_check(&mut report, "Br9 e₁ y₁^r e₁ = ω_r e₁", vec![r], &lhs.sub(&e1.scale(&w)));
                if let Some(c) = report.checks.last_mut() {
                    c.orientation = b.to_string();
                }
                yp = y[0].mul(&yp);
            }
        }
    }
    for b in &col.sequences {
        let p = col.projection(b);
        let (b1, b2) = (params.beta1(b.at(1)), params.beta2(b.at(1)));
        let id = QMat::identity(col.dim());
        let lhs = y[0].sub(&id.scale(&b1)).mul(&y[0].sub(&id.scale(&b2))).mul(&p);
        zero_check(&mut report, "cyclotomic (y₁ − β₁)(y₁ − β₂) 1_b = 0", vec![], &lhs);
        if let Some(c) = report.checks.last_mut() {
            c.orientation = b.to_string();
        }
    }
    report
}

/// Dimensions, cyclicity already enforced by `build`, Br(ω₀) relations and
/// the affine and cyclotomic relations on every column.
pub fn verify_algebra(alg: &CyclotomicAlgebra) -> Report {
    let mut report = Report::new(format!("cyclotomic quotient at (r,t) = ({},{})", alg.r, alg.t));
    let n = alg.n();
    let expect = (1usize << n) * (1..=n).product::<usize>();
    for col in &alg.columns {
        for (b, &(lo, hi)) in col.sequences.iter().zip(&col.blocks) {
            report.push(
                Check::flag("block dimension = 2^{r+t}(r+t)!", hi - lo == expect, format!("1_{b}·VB·1_{} has {} vs {expect}", col.a, hi - lo))
                    .with_orientation(&col.a),
            );
        }
        let mut br = check_relations(col, 0.0);
        for c in &mut br.checks {
            c.detail = format!("column 1_{}", col.a);
        }
        report.extend(br);
        let mut aff = check_affine(col, &alg.params);
        for c in &mut aff.checks {
            c.detail = format!("column 1_{}", col.a);
        }
        report.extend(aff);
    }
    report
}

// ---------------------------------------------------------------------------
// cache

#[derive(Serialize, Deserialize)]
struct SparseMatrix {
    rows: usize,
    cols: usize,
    entries: Vec<(usize, usize, String)>,
}

impl SparseMatrix {
    fn from_mat(m: &QMat) -> Self {
        let mut entries = Vec::new();
        for i in 0..m.rows() {
            for j in 0..m.cols() {
                let v = m.get(i, j);
                if !v.is_zero() {
                    entries.push((i, j, format_rational(v)));
                }
            }
        }
        SparseMatrix { rows: m.rows(), cols: m.cols(), entries }
    }

    fn to_mat(&self) -> Result<QMat> {
        let mut m = QMat::zeros(self.rows, self.cols);
        for (i, j, v) in &self.entries {
            m.set(*i, *j, parse_rational(v)?);
        }
        Ok(m)
    }
}

#[derive(Serialize, Deserialize)]
struct CachedColumn {
    a: String,
    basis: Vec<String>,
    blocks: Vec<(usize, usize)>,
    y: Vec<SparseMatrix>,
    gens: Vec<(GenKind, usize, SparseMatrix)>,
}

#[derive(Serialize, Deserialize)]
struct CachedAlgebra {
    version: u32,
    r: usize,
    t: usize,
    params: Params,
    columns: Vec<CachedColumn>,
}

const CACHE_VERSION: u32 = 1;

pub fn cache_path(dir: &Path, r: usize, t: usize, params: &Params) -> PathBuf {
    let delta = format_rational(&params.delta).replace('/', "over").replace('-', "m");
    dir.join(format!("vb-r{r}-t{t}-m{}-n{}-d{delta}.json", params.m, params.n))
}

pub fn save(alg: &CyclotomicAlgebra, path: &Path) -> Result<()> {
    let cached = CachedAlgebra {
        version: CACHE_VERSION,
        r: alg.r,
        t: alg.t,
        params: alg.params.clone(),
        columns: alg
            .columns
            .iter()
            .map(|c| CachedColumn {
                a: c.a.to_string(),
                basis: c.basis.iter().map(NormalMonomial::to_text).collect(),
                blocks: c.blocks.clone(),
                y: c.y.iter().map(SparseMatrix::from_mat).collect(),
                gens: c.gens.iter().map(|(&(kind, k), m)| (kind, k, SparseMatrix::from_mat(m))).collect(),
            })
            .collect(),
    };
    if let Some(parent) = path.parent() {
        std::fs::create_dir_all(parent).map_err(|e| Error::Io(e.to_string()))?;
    }
    let text = serde_json::to_string(&cached).map_err(|e| Error::Io(e.to_string()))?;
    std::fs::write(path, text).map_err(|e| Error::Io(e.to_string()))
}

pub fn load(path: &Path) -> Result<CyclotomicAlgebra> {
    let text = std::fs::read_to_string(path).map_err(|e| Error::Io(e.to_string()))?;
    let cached: CachedAlgebra = serde_json::from_str(&text).map_err(|e| Error::Io(e.to_string()))?;
    if cached.version != CACHE_VERSION {
        return Err(Error::Io(format!("cache version {} is not {CACHE_VERSION}", cached.version)));
    }
    let seqs = Sequence::all(cached.r, cached.t);
    let omega0 = cached.params.omega0();
    let mut columns = Vec::new();
    for c in cached.columns {
        let mut gens = BTreeMap::new();
        for (kind, k, m) in c.gens {
            gens.insert((kind, k), m.to_mat()?);
        }
        columns.push(Column {
            a: Sequence::parse(&c.a)?,
            sequences: seqs.clone(),
            basis: c.basis.iter().map(|s| NormalMonomial::parse(s)).collect::<Result<_>>()?,
            blocks: c.blocks,
            y: c.y.iter().map(SparseMatrix::to_mat).collect::<Result<_>>()?,
            gens,
            omega0: omega0.clone(),
        });
    }
    Ok(CyclotomicAlgebra { r: cached.r, t: cached.t, params: cached.params, columns })
}

/// Loads from `dir` when a matching cache file exists, else builds and saves.
pub fn build_cached(r: usize, t: usize, params: &Params, dir: Option<&Path>) -> Result<CyclotomicAlgebra> {
    if let Some(dir) = dir {
        let path = cache_path(dir, r, t, params);
        if path.exists() {
            if let Ok(alg) = load(&path) {
                if alg.params == *params {
                    return Ok(alg);
                }
            }
        }
        let alg = build(r, t, params)?;
        save(&alg, &path)?;
        return Ok(alg);
    }
    build(r, t, params)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::int;

    fn params() -> Params {
        Params::new(6, 6, int(2))
    }

    #[test]
    fn rank_one() {
        let alg = build(1, 0, &params()).unwrap();
        let col = &alg.columns[0];
        assert_eq!(col.dim(), 2);
        let sd = crate::calculus::spectral_decompose(&col.y[0]).unwrap();
        assert_eq!(sd.eigenvalues(), vec![int(0), int(4)]);
    }

    #[test]
    fn reduce_examples() {
        let mut e = Engine::new(1, 1, params());
        let a = Sequence::parse("∧∨").unwrap();
        let sq = e.reduce(&[Letter::Y(1), Letter::Y(1)], &a).unwrap();
        let y1 = e.reduce(&[Letter::Y(1)], &a).unwrap();
        let mut expect = Lin::new();
        lin_axpy(&mut expect, &int(4), &y1);
        assert_eq!(sq, expect);
        let bubble = e.reduce(&[Letter::G(GenKind::E, 1), Letter::Y(1), Letter::G(GenKind::E, 1)], &a).unwrap();
        let e1 = e.reduce(&[Letter::G(GenKind::E, 1)], &a).unwrap();
        let mut expect = Lin::new();
        lin_axpy(&mut expect, &int(60), &e1);
        assert_eq!(bubble, expect);
    }

    #[test]
    fn small_builds_verify() {
        for (r, t) in [(1, 0), (0, 1), (1, 1), (2, 0)] {
            let alg = build(r, t, &params()).unwrap();
            let rep = verify_algebra(&alg);
            let bad: Vec<_> = rep.failures().take(5).collect();
            assert!(bad.is_empty(), "({r},{t}): {bad:?}");
        }
    }

    #[test]
    fn monomial_text_round_trip() {
        let a = Sequence::parse("∧∨").unwrap();
        for m in NormalMonomial::enumerate(&a, &a) {
            assert_eq!(NormalMonomial::parse(&m.to_text()).unwrap(), m);
        }
    }
}
