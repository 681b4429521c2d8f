//! Φ: the images σ_k, σ̂_k, τ_k, τ̂_k of the walled Brauer generators in the
//! truncated cyclotomic quotient, and checks that they satisfy the
//! relations of Br_{r,t}(−δ).
//!
//! Everything lives on the truncated column modules W_a = f·VB·f·1_a, which
//! together carry a faithful action of f·VB·f. There f x f, b_k, c_k and
//! their inverses are exact rational matrices; only Q_k = √(b_{k+1}/b_k) f
//! needs floating point.

use std::collections::BTreeMap;

use crate::calculus::{spectral_decompose, sqrt_of_polynomial, Branch};
use crate::cyclotomic::{Column, CyclotomicAlgebra};
use crate::diagram::{Arrow, GenKind, Sequence};
use crate::error::{Error, Result};
use crate::jm::jm_elements;
use crate::matrix::{solve_in_basis, FMat, QMat};
use crate::params::Params;
use crate::poly::Poly;
use crate::presentation::{check_relations, record, Defect, Gens, RelationModel};
use crate::report::{Check, Report, Status};
use crate::scalar::{with_precision, BigFloat, Field, Rational, Ring};
use crate::truncation::{block_matrix, compute_f, partial_f, truncate};

/// Pass threshold for relation residuals (max-entry norm).
pub const RELATION_TOL: f64 = 1e-20;
/// Required drop of every residual when the precision doubles.
pub const SHRINK_ORDERS: f64 = 10.0;

/// Exact operators on W_a.
#[derive(Clone, Debug)]
pub struct TruncatedOps {
    pub a: Sequence,
    pub sequences: Vec<Sequence>,
    /// 1_b, in `sequences` order.
    pub proj: Vec<QMat>,
    pub y: Vec<QMat>,
    /// f g_k f for the four summed generator families.
    pub gens: BTreeMap<(GenKind, usize), QMat>,
    /// b_k = Σ_b (β₁^{rev(b_k)} + y_k) 1_b, index k−1.
    pub b: Vec<QMat>,
    pub b_inv: Vec<QMat>,
    /// c_k = Σ_b (β₁^{b_k} − y_k) 1_b, index k−1.
    pub c: Vec<QMat>,
    pub c_inv: Vec<QMat>,
    /// f 1_a in the basis of W_a.
    pub unit: Vec<Rational>,
}

impl TruncatedOps {
    pub fn dim(&self) -> usize {
        self.unit.len()
    }

    pub fn n(&self) -> usize {
        self.y.len()
    }

    pub fn gen(&self, kind: GenKind, k: usize) -> QMat {
        self.gens.get(&(kind, k)).cloned().unwrap_or_else(|| QMat::zeros(self.dim(), self.dim()))
    }

    pub fn block_index(&self, b: &Sequence) -> usize {
        self.sequences.iter().position(|s| s == b).expect("sequence of this rank")
    }

    /// Σ 1_b over the b with b_k = b_{k+1} (`equal`) or b_k ≠ b_{k+1}.
    pub fn pairs(&self, k: usize, equal: bool) -> QMat {
        self.sequences
            .iter()
            .zip(&self.proj)
            .filter(|(b, _)| (b.at(k) == b.at(k + 1)) == equal)
            .fold(QMat::zeros(self.dim(), self.dim()), |acc, (_, p)| acc.add(p))
    }
}

fn shifted(y: &QMat, proj: &[QMat], seqs: &[Sequence], k: usize, sign: i64, beta: impl Fn(Arrow) -> Rational) -> QMat {
    let base = if sign > 0 { y.clone() } else { y.neg() };
    seqs.iter().zip(proj).fold(base, |acc, (b, p)| acc.add(&p.scale(&beta(b.at(k)))))
}

fn invert(x: &QMat, what: String) -> Result<QMat> {
    x.inverse().ok_or(Error::EigenvalueHit(what))
}

pub fn truncated_ops(col: &Column, params: &Params) -> Result<TruncatedOps> {
    let tr = truncate(col, params)?;
    let y = col.y.iter().map(|y| tr.restrict(y)).collect::<Result<Vec<_>>>()?;
    let mut gens = BTreeMap::new();
    for (key, g) in &col.gens {
        gens.insert(*key, tr.restrict(g)?);
    }
    let proj: Vec<QMat> = col.sequences.iter().map(|b| tr.projection(b)).collect();
    let (mut b, mut b_inv, mut c, mut c_inv) = (vec![], vec![], vec![], vec![]);
    for k in 1..=y.len() {
        let bk = shifted(&y[k - 1], &proj, &col.sequences, k, 1, |x| params.beta1(x.rev()));
        let ck = shifted(&y[k - 1], &proj, &col.sequences, k, -1, |x| params.beta1(x));
        b_inv.push(invert(&bk, format!("b_{k} has eigenvalue 0 on f·VB·f·1_{}", col.a))?);
        c_inv.push(invert(&ck, format!("c_{k} has eigenvalue 0 on f·VB·f·1_{}", col.a))?);
        b.push(bk);
        c.push(ck);
    }
    let fu = QMat::from_columns(col.dim(), &[tr.f.apply(&col.unit_vector())]);
    let unit = solve_in_basis(&tr.basis, &fu).ok_or_else(|| Error::ClosureFailure("f 1_a outside W".into()))?.column(0);
    Ok(TruncatedOps { a: col.a.clone(), sequences: col.sequences.clone(), proj, y, gens, b, b_inv, c, c_inv, unit })
}

/// The images of Φ on one column W_a, at a fixed precision and branch.
#[derive(Clone, Debug)]
pub struct PhiImages {
    pub a: Sequence,
    pub sequences: Vec<Sequence>,
    pub bits: usize,
    pub branch: Branch,
    pub f: FMat,
    pub proj: Vec<FMat>,
    pub y: Vec<FMat>,
    pub b: Vec<FMat>,
    pub c: Vec<FMat>,
    /// Q_k at index k−1, k = 1..n−1.
    pub q: Vec<FMat>,
    pub sigma: Vec<FMat>,
    pub sigma_hat: Vec<FMat>,
    pub tau: Vec<FMat>,
    pub tau_hat: Vec<FMat>,
    /// −√(b_k/b_{k+1}) s_k √(b_k/b_{k+1}) f − b_{k+1}⁻¹ f on equal pairs.
    pub sigma_alt: Vec<FMat>,
}

impl PhiImages {
    pub fn from_ops(ops: &TruncatedOps, branch: Branch, bits: usize) -> Result<Self> {
        with_precision(bits, || {
            let fl = |x: &QMat| x.to_float();
            let n = ops.n();
            let (mut q, mut sigma, mut sigma_hat, mut tau, mut tau_hat, mut sigma_alt) = (vec![], vec![], vec![], vec![], vec![], vec![]);
            for k in 1..n {
                let ratio = ops.b[k].mul(&ops.b_inv[k - 1]);
                let qk = sqrt_of_polynomial(&ratio, &Poly::x())?.to_float(branch);
                let inverse_ratio = ops.b[k - 1].mul(&ops.b_inv[k]);
                let qa = sqrt_of_polynomial(&inverse_ratio, &Poly::x())?.to_float(branch);
                let conj = |g: GenKind, q: &FMat| q.mul(&fl(&ops.gen(g, k))).mul(q);
                let equal = fl(&ops.pairs(k, true));
                sigma.push(conj(GenKind::S, &qk).neg().add(&fl(&ops.b_inv[k - 1])).mul(&equal));
                sigma_alt.push(conj(GenKind::S, &qa).neg().sub(&fl(&ops.b_inv[k])).mul(&equal));
                sigma_hat.push(conj(GenKind::SHat, &qk).neg());
                tau.push(conj(GenKind::E, &qk));
                tau_hat.push(conj(GenKind::EHat, &qk));
                q.push(qk);
            }
            Ok(PhiImages {
                a: ops.a.clone(),
                sequences: ops.sequences.clone(),
                bits,
                branch,
                f: FMat::identity(ops.dim()),
                proj: ops.proj.iter().map(fl).collect(),
                y: ops.y.iter().map(fl).collect(),
                b: ops.b.iter().map(fl).collect(),
                c: ops.c.iter().map(fl).collect(),
                q,
                sigma,
                sigma_hat,
                tau,
                tau_hat,
                sigma_alt,
            })
        })
    }

    pub fn dim(&self) -> usize {
        self.f.rows()
    }

    pub fn image(&self, kind: GenKind, k: usize) -> &FMat {
        let v = match kind {
            GenKind::S => &self.sigma,
            GenKind::SHat => &self.sigma_hat,
            GenKind::E => &self.tau,
            GenKind::EHat => &self.tau_hat,
            GenKind::Id => unreachable!("the identity has no index"),
        };
        &v[k - 1]
    }
}

pub fn build_phi_images(alg: &CyclotomicAlgebra, a: &Sequence, branch: Branch, bits: usize) -> Result<PhiImages> {
    PhiImages::from_ops(&truncated_ops(alg.column(a), &alg.params)?, branch, bits)
}

/// Φ on all columns at once, as a model of Br_{r,t}(−δ).
#[derive(Clone, Debug)]
pub struct PhiModel {
    pub params: Params,
    pub n: usize,
    pub bits: usize,
    pub sequences: Vec<Sequence>,
    pub images: Vec<PhiImages>,
}

impl PhiModel {
    pub fn new(alg: &CyclotomicAlgebra, ops: &[TruncatedOps], branch: Branch, bits: usize) -> Result<Self> {
        let images = ops.iter().map(|o| PhiImages::from_ops(o, branch, bits)).collect::<Result<Vec<_>>>()?;
        Ok(PhiModel { params: alg.params.clone(), n: alg.n(), bits, sequences: Sequence::all(alg.r, alg.t), images })
    }

    fn each(&self, f: impl Fn(&PhiImages) -> FMat) -> Vec<FMat> {
        self.images.iter().map(f).collect()
    }
}

impl RelationModel for PhiModel {
    type Elem = Vec<FMat>;

    fn n(&self) -> usize {
        self.n
    }
    fn sequences(&self) -> Vec<Sequence> {
        self.sequences.clone()
    }
    fn zero(&self) -> Vec<FMat> {
        self.each(|im| FMat::zeros(im.dim(), im.dim()))
    }
    fn unit(&self, a: &Sequence) -> Vec<FMat> {
        let i = self.sequences.iter().position(|s| s == a).expect("sequence of this rank");
        self.each(|im| im.proj[i].clone())
    }
    fn gen(&self, kind: GenKind, k: usize, a: &Sequence) -> Vec<FMat> {
        if k == 0 || k >= self.n || kind == GenKind::Id {
            return self.zero();
        }
        let i = self.sequences.iter().position(|s| s == a).expect("sequence of this rank");
        self.each(|im| im.image(kind, k).mul(&im.proj[i]))
    }
    fn mul(&self, x: &Vec<FMat>, y: &Vec<FMat>) -> Vec<FMat> {
        x.iter().zip(y).map(|(a, b)| a.mul(b)).collect()
    }
    fn add(&self, x: &Vec<FMat>, y: &Vec<FMat>) -> Vec<FMat> {
        x.iter().zip(y).map(|(a, b)| a.add(b)).collect()
    }
    fn sub(&self, x: &Vec<FMat>, y: &Vec<FMat>) -> Vec<FMat> {
        x.iter().zip(y).map(|(a, b)| a.sub(b)).collect()
    }
    /// The loop parameter on this side is −δ.
    fn times_delta(&self, x: &Vec<FMat>) -> Vec<FMat> {
        let d = BigFloat::from_rational(&self.params.delta.neg());
        x.iter().map(|m| m.scale(&d)).collect()
    }
    fn defect(&self, x: &Vec<FMat>) -> Defect {
        Defect::Residual(x.iter().map(FMat::max_abs).fold(0.0, f64::max))
    }
}

/// The walled Brauer relations with parameter −δ, plus the individual
/// identities the proof is built from.
pub fn verify_isomorphism_relations(model: &PhiModel, tol: f64) -> Report {
    with_precision(model.bits, || {
        let mut report = check_relations(model, tol);
        report.title = format!("Φ-image relations with parameter −δ at {} bits", model.bits);
        let g = Gens::build(model);
        let seqs = model.sequences();
        let rel = |report: &mut Report, name: &str, k: usize, keep: &dyn Fn(&Sequence) -> bool, lhs: &Vec<FMat>, rhs: &Vec<FMat>| {
            for a in seqs.iter().filter(|a| keep(a)) {
                let ua = model.unit(a);
                let d = model.sub(&model.mul(lhs, &ua), &model.mul(rhs, &ua));
                record(model, report, name, a, vec![k], &d, tol);
            }
        };
        let one = model.one();
        for k in 1..model.n {
            let equal = move |a: &Sequence| a.at(k) == a.at(k + 1);
            let mixed = move |a: &Sequence| a.at(k) != a.at(k + 1);
            let p = |xs: &[&Vec<FMat>]| model.product(xs);
            rel(&mut report, "τ_k² = −δ τ_k", k, &mixed, &p(&[&g.e[k], &g.e[k]]), &model.times_delta(&g.e[k]));
            rel(&mut report, "σ_k² = f", k, &equal, &p(&[&g.s[k], &g.s[k]]), &one);
            rel(&mut report, "σ̂_k² = f", k, &mixed, &p(&[&g.sh[k], &g.sh[k]]), &one);
            rel(&mut report, "σ̂_k τ_k = τ̂_k", k, &mixed, &p(&[&g.sh[k], &g.e[k]]), &g.eh[k]);
            rel(&mut report, "τ_k σ̂_k = τ̂_k", k, &mixed, &p(&[&g.e[k], &g.sh[k]]), &g.eh[k]);
            let alt = model.each(|im| im.sigma_alt[k - 1].clone());
            rel(&mut report, "σ_k by the b_k/b_{k+1} formula", k, &equal, &alt, &g.s[k]);
        }
        report
    })
}

/// Φ((ξ_k − β₂^{a_k}) 1_a) = −y_k f 1_a for every k and a.
pub fn verify_jm_transport(model: &PhiModel, tol: f64) -> Report {
    with_precision(model.bits, || {
        let mut report = Report::new("Jucys–Murphy transport");
        let xi = jm_elements(model);
        for (k, x) in xi.iter().enumerate() {
            for (i, a) in model.sequences.iter().enumerate() {
                let beta = BigFloat::from_rational(&model.params.beta2(a.at(k + 1)));
                let d: Vec<FMat> = model
                    .images
                    .iter()
                    .zip(x)
                    .map(|(im, xk)| {
                        let pa = &im.proj[i];
                        xk.mul(pa).sub(&pa.scale(&beta)).add(&im.y[k].mul(pa))
                    })
                    .collect();
                record(model, &mut report, "Φ(ξ_k − β₂^{a_k}) = −y_k f", a, vec![k + 1], &d, tol);
            }
        }
        report
    })
}

fn dot(u: &[BigFloat], v: &[BigFloat]) -> BigFloat {
    u.iter().zip(v).fold(BigFloat::zero(), |acc, (x, y)| acc.add(&x.mul(y)))
}

/// Adds v to an orthonormal family when it is independent of it, relative
/// to `rel_tol`. Two passes of Gram–Schmidt.
fn orthonormal_insert(basis: &mut Vec<Vec<BigFloat>>, v: &[BigFloat], rel_tol: f64) -> Option<Vec<BigFloat>> {
    let n0 = dot(v, v).sqrt().to_f64();
    if n0 == 0.0 {
        return None;
    }
    let mut w = v.to_vec();
    for _ in 0..2 {
        for e in basis.iter() {
            let c = dot(e, &w);
            for (x, y) in w.iter_mut().zip(e) {
                *x = x.sub(&c.mul(y));
            }
        }
    }
    let norm = dot(&w, &w).sqrt();
    if norm.to_f64() <= rel_tol * n0 {
        return None;
    }
    let inv = norm.inv();
    let w: Vec<BigFloat> = w.iter().map(|x| x.mul(&inv)).collect();
    basis.push(w.clone());
    Some(w)
}

/// Numerical rank of a family of vectors.
pub fn numeric_rank(vectors: &[Vec<BigFloat>], rel_tol: f64) -> usize {
    let mut basis = Vec::new();
    for v in vectors {
        orthonormal_insert(&mut basis, v, rel_tol);
    }
    basis.len()
}

/// Dimension of the smallest subspace containing `start` and stable under
/// `ops`, numerically.
pub fn numeric_span_dim(ops: &[FMat], start: &[BigFloat], rel_tol: f64) -> usize {
    let mut basis = Vec::new();
    let mut queue: Vec<Vec<BigFloat>> = orthonormal_insert(&mut basis, start, rel_tol).into_iter().collect();
    while let Some(v) = queue.pop() {
        for op in ops {
            if let Some(w) = orthonormal_insert(&mut basis, &op.apply(&v), rel_tol) {
                queue.push(w);
            }
        }
    }
    basis.len()
}

/// σ̂-indices carrying b to (∧^r, ∨^t), in the order they are applied.
fn sorting_word(b: &Sequence) -> Vec<usize> {
    let mut cur = b.clone();
    let mut word = Vec::new();
    while let Some(k) = (1..cur.len()).find(|&k| cur.at(k) == Arrow::Down && cur.at(k + 1) == Arrow::Up) {
        word.push(k);
        cur = cur.swapped(k);
    }
    word
}

/// Block dimensions, surjectivity of the images onto f·VB·f and the block
/// isomorphisms given by σ̂-words.
pub fn verify_dimension_and_surjectivity(model: &PhiModel, ops: &[TruncatedOps]) -> Report {
    with_precision(model.bits, || {
        let mut report = Report::new("dimensions and surjectivity");
        let n = model.n;
        let nfact: usize = (1..=n).product();
        let seqs = &model.sequences;
        let rel_tol = 2f64.powi(-(model.bits as i32) / 3);
        let mut total = 0;
        for (im, op) in model.images.iter().zip(ops) {
            for (i, b) in seqs.iter().enumerate() {
                let d = op.proj[i].rank();
                report.push(
                    Check::flag("dim 1_b·f·VB·f·1_a = (r+t)!", d == nfact, format!("{d} vs {nfact}")).with_orientation(format!("1_{b}·f·VB·f·1_{}", im.a)),
                );
            }
            let mut gens: Vec<FMat> = im.proj.clone();
            for k in 1..n {
                for kind in [GenKind::S, GenKind::SHat, GenKind::E, GenKind::EHat] {
                    gens.push(im.image(kind, k).clone());
                }
            }
            let start: Vec<BigFloat> = op.unit.iter().map(BigFloat::from_rational).collect();
            let d = numeric_span_dim(&gens, &start, rel_tol);
            total += d;
            report.push(
                Check::flag("images generate f·VB·f·1_a", d == im.dim(), format!("{d} of {}", im.dim())).with_orientation(format!("f·VB·f·1_{}", im.a)),
            );

            let target = seqs.iter().position(|s| sorting_word(s).is_empty()).expect("sorted sequence");
            let rows: Vec<usize> = (0..im.dim()).filter(|&r| !im.proj[target].get(r, r).is_zero()).collect();
            for (i, b) in seqs.iter().enumerate() {
                let word = sorting_word(b);
                let m = word.iter().fold(im.proj[i].clone(), |acc, &k| im.sigma_hat[k - 1].mul(&acc));
                let cols: Vec<usize> = (0..im.dim()).filter(|&c| !im.proj[i].get(c, c).is_zero()).collect();
                let sub = m.select(&rows, &cols);
                let vectors: Vec<Vec<BigFloat>> = (0..sub.cols()).map(|j| sub.column(j)).collect();
                let r = numeric_rank(&vectors, rel_tol);
                let label = word.iter().rev().map(|k| format!("σ̂_{k}")).collect::<Vec<_>>().join("");
                report.push(
                    Check::flag("σ̂-word is a block isomorphism", r == nfact && rows.len() == nfact && cols.len() == nfact, format!("{label} rank {r}"))
                        .with_orientation(format!("{b} → {} in column {}", seqs[target], im.a)),
                );
            }
        }
        let want = seqs.len() * seqs.len() * nfact;
        report.push(Check::flag("dim of the image of Φ = Σ_{a,a'} (r+t)!", total == want, format!("{total} vs {want}")));
        report
    })
}

fn exact(report: &mut Report, name: &str, orientation: impl ToString, indices: Vec<usize>, diff: &QMat) {
    let terms = (0..diff.rows()).map(|i| diff.row(i).iter().filter(|v| !v.is_zero()).count()).sum();
    report.push(Check::exact(name, orientation, indices, terms));
}

/// x⁻¹ on the image of the idempotent `proj`, zero on its kernel. `x`
/// must commute with `proj`.
pub fn inverse_on_image(x: &QMat, proj: &QMat) -> Option<QMat> {
    let v = proj.column_space();
    if v.cols() == 0 {
        return Some(QMat::zeros(x.rows(), x.cols()));
    }
    let inv = x.restrict_to(&v)?.inverse()?;
    let coords = solve_in_basis(&v, proj)?;
    Some(v.mul(&inv).mul(&coords))
}

fn full_shift(col: &Column, k: usize, sign: i64, beta: impl Fn(Arrow) -> Rational) -> QMat {
    let proj: Vec<QMat> = col.sequences.iter().map(|b| col.projection(b)).collect();
    shifted(&col.y[k - 1], &proj, &col.sequences, k, sign, beta)
}

fn pairs(col: &Column, k: usize, equal: bool) -> QMat {
    col.sequences
        .iter()
        .filter(|b| (b.at(k) == b.at(k + 1)) == equal)
        .fold(QMat::zeros(col.dim(), col.dim()), |acc, b| acc.add(&col.projection(b)))
}

/// b_k⁻¹ f_{k−1} on the blocks with a_k ≠ a_{k+1}. With `rev` false the
/// constant is β₁^{a_k} instead of β₁^{rev(a_k)}.
pub fn b_inverse_truncated(col: &Column, params: &Params, k: usize, rev: bool) -> Result<QMat> {
    let bk = full_shift(col, k, 1, |x| params.beta1(if rev { x.rev() } else { x }));
    let proj = partial_f(col, params, k - 1)?.mul(&pairs(col, k, false));
    inverse_on_image(&bk, &proj).ok_or_else(|| Error::EigenvalueHit(format!("b_{k} f_{} on VB·1_{}", k - 1, col.a)))
}

/// e_k b_k⁻¹ e_k f_{k−1} − e_k f_{k−1} on one column.
pub fn crucial_identity_defect(col: &Column, params: &Params, k: usize, rev: bool) -> Result<QMat> {
    let e = col.gen(GenKind::E, k);
    let x = b_inverse_truncated(col, params, k, rev)?;
    let fk = partial_f(col, params, k - 1)?;
    Ok(e.mul(&x).mul(&e).mul(&fk).sub(&e.mul(&fk)))
}

/// Joint generalized eigenprojectors of (u, v) on one block.
fn joint_projectors(u: &QMat, v: &QMat) -> Result<Vec<((Rational, Rational), QMat)>> {
    let (su, sv) = (spectral_decompose(u)?, spectral_decompose(v)?);
    let mut out = Vec::new();
    for cu in &su.components {
        for cv in &sv.components {
            let p = cu.idempotent.mul(&cv.idempotent);
            if !p.is_zero() {
                out.push(((cu.eigenvalue.clone(), cv.eigenvalue.clone()), p));
            }
        }
    }
    Ok(out)
}

/// The identities about f, b_k and c_k that hold exactly, on the full
/// column modules and on their truncations.
pub fn exact_identities(alg: &CyclotomicAlgebra) -> Result<Report> {
    let p = &alg.params;
    let n = alg.n();
    let mut report = Report::new(format!("exact identities for Φ at (r,t) = ({},{})", alg.r, alg.t));
    for col in &alg.columns {
        let lbl = format!("VB·1_{}", col.a);
        let f = compute_f(col, p)?;
        let fs: Vec<QMat> = (0..=n).map(|j| partial_f(col, p, j)).collect::<Result<_>>()?;
        for k in 1..n {
            let (s, sh, e, eh) = (col.gen(GenKind::S, k), col.gen(GenKind::SHat, k), col.gen(GenKind::E, k), col.gen(GenKind::EHat, k));
            exact(&mut report, "e_k f_{k+1} = e_k f_k", &lbl, vec![k], &e.mul(&fs[k + 1]).sub(&e.mul(&fs[k])));
            exact(&mut report, "s_k f = f s_k", &lbl, vec![k], &s.mul(&f).sub(&f.mul(&s)));

            let b0 = full_shift(col, k, 1, |x| p.beta1(x.rev()));
            let b1 = full_shift(col, k + 1, 1, |x| p.beta1(x.rev()));
            let c0 = full_shift(col, k, -1, |x| p.beta1(x));
            let c1 = full_shift(col, k + 1, -1, |x| p.beta1(x));
            let (eq, mx) = (pairs(col, k, true), pairs(col, k, false));
            let strt = |name: &str, g: &QMat, x: &QMat, y: &QMat, corr: &QMat, sign: i64, on: &QMat, report: &mut Report| {
                // g x = y g + sign·corr, on the chosen blocks
                let rhs = y.mul(g).add(&if sign > 0 { corr.clone() } else { corr.neg() });
                exact(report, name, &lbl, vec![k], &g.mul(x).sub(&rhs).mul(on));
            };
            strt("s_k b_k = b_{k+1} s_k − 1", &s, &b0, &b1, &eq, -1, &eq, &mut report);
            strt("s_k b_{k+1} = b_k s_k + 1", &s, &b1, &b0, &eq, 1, &eq, &mut report);
            strt("s_k c_k = c_{k+1} s_k + 1", &s, &c0, &c1, &eq, 1, &eq, &mut report);
            strt("s_k c_{k+1} = c_k s_k − 1", &s, &c1, &c0, &eq, -1, &eq, &mut report);
            strt("ŝ_k b_k = b_{k+1} ŝ_k + ê_k", &sh, &b0, &b1, &eh, 1, &mx, &mut report);
            strt("ŝ_k b_{k+1} = b_k ŝ_k − ê_k", &sh, &b1, &b0, &eh, -1, &mx, &mut report);
            strt("ŝ_k c_k = c_{k+1} ŝ_k − ê_k", &sh, &c0, &c1, &eh, -1, &mx, &mut report);
            strt("ŝ_k c_{k+1} = c_k ŝ_k + ê_k", &sh, &c1, &c0, &eh, 1, &mx, &mut report);

            for (name, g) in [("c_k f e_k f = c_k e_k f", &e), ("c_k f ê_k f = c_k ê_k f", &eh), ("c_k f ŝ_k f = c_k ŝ_k f", &sh)] {
                exact(&mut report, name, &lbl, vec![k], &c0.mul(&f).mul(g).mul(&f).sub(&c0.mul(g).mul(&f)));
            }

            let proj = fs[k - 1].mul(&mx);
            let x = inverse_on_image(&b0, &proj);
            report.push(Check::flag("b_k f_{k−1} invertible", x.is_some(), "").with_orientation(&lbl).with_detail(format!("k = {k}")));
            if x.is_some() {
                exact(&mut report, "e_k b_k⁻¹ e_k f_{k−1} = e_k f_{k−1}", &lbl, vec![k], &crucial_identity_defect(col, p, k, true)?);
            }
            if let (Some(x), true) = (x, k + 1 < n) {
                let s1 = col.gen(GenKind::S, k + 1);
                exact(&mut report, "e_k s_{k+1} b_k⁻¹ e_k f = 0", &lbl, vec![k], &e.mul(&s1).mul(&x).mul(&e).mul(&f));
                exact(&mut report, "e_k b_k⁻¹ s_{k+1} e_k f = 0", &lbl, vec![k], &e.mul(&x).mul(&s1).mul(&e).mul(&f));
            }

            // ŝ_k carries the (i, j) eigenspace of (y_k, y_{k+1}) to (j, i)
            // unless i + j = 0.
            let mut swaps = 0;
            let mut bad = 0;
            for b in col.sequences.iter().filter(|b| b.at(k) != b.at(k + 1)) {
                let b2 = b.swapped(k);
                let (lo, hi) = col.block_of(b);
                let (lo2, hi2) = col.block_of(&b2);
                let g = sh.select(&(lo2..hi2).collect::<Vec<_>>(), &(lo..hi).collect::<Vec<_>>());
                let src = joint_projectors(&block_matrix(col, &col.y[k - 1], b), &block_matrix(col, &col.y[k], b))?;
                let dst = joint_projectors(&block_matrix(col, &col.y[k - 1], &b2), &block_matrix(col, &col.y[k], &b2))?;
                for ((i, j), pij) in &src {
                    if i.add(j).is_zero() {
                        continue;
                    }
                    swaps += 1;
                    let image = g.mul(pij);
                    let kept = dst.iter().find(|((u, v), _)| u == j && v == i).map(|(_, q)| q.mul(&image));
                    if kept.as_ref() != Some(&image) && !(kept.is_none() && image.is_zero()) {
                        bad += 1;
                    }
                }
            }
            report.push(
                Check::flag("ŝ_k swaps generalized eigenspaces of (y_k, y_{k+1}) off i+j = 0", bad == 0, format!("{swaps} eigenspaces, {bad} violations"))
                    .with_orientation(&lbl),
            );
        }

        // y_{k+1} on the image of f_k has β₁^{a_{k+1}} as a proper eigenvalue.
        let mut improper = Vec::new();
        for b in &col.sequences {
            for k in 0..n {
                let fb = block_matrix(col, &fs[k], b);
                let image = fb.column_space();
                if image.cols() == 0 {
                    continue;
                }
                let yk = block_matrix(col, &col.y[k], b).restrict_to(&image).ok_or_else(|| Error::ClosureFailure("f_k image".into()))?;
                let sd = spectral_decompose(&yk)?;
                if sd.component(&p.beta1(b.at(k + 1))).is_some_and(|c| c.index > 1) {
                    improper.push(format!("y_{} on 1_{b}", k + 1));
                }
            }
        }
        report.push(Check::flag("β₁^{a_{k+1}} is a proper eigenvalue of y_{k+1} f_k", improper.is_empty(), improper.join(", ")).with_orientation(&lbl));

        truncated_identities(&truncated_ops(col, p)?, &mut report);
    }
    Ok(report)
}

/// Straightening past b_k⁻¹ and c_k⁻¹ on W_a.
fn truncated_identities(ops: &TruncatedOps, report: &mut Report) {
    let lbl = format!("f·VB·f·1_{}", ops.a);
    for k in 1..ops.n() {
        let (s, sh, eh) = (ops.gen(GenKind::S, k), ops.gen(GenKind::SHat, k), ops.gen(GenKind::EHat, k));
        let (bi0, bi1, ci0, ci1) = (&ops.b_inv[k - 1], &ops.b_inv[k], &ops.c_inv[k - 1], &ops.c_inv[k]);
        let (eq, mx) = (ops.pairs(k, true), ops.pairs(k, false));
        let mut chk = |name: &str, lhs: QMat, rhs: QMat, on: &QMat| exact(report, name, &lbl, vec![k], &lhs.sub(&rhs).mul(on));
        chk("s_k b_k⁻¹ f = b_{k+1}⁻¹ s_k f + (b_k b_{k+1})⁻¹ f", s.mul(bi0), bi1.mul(&s).add(&bi0.mul(bi1)), &eq);
        chk("s_k b_{k+1}⁻¹ f = b_k⁻¹ s_k f − (b_k b_{k+1})⁻¹ f", s.mul(bi1), bi0.mul(&s).sub(&bi0.mul(bi1)), &eq);
        chk("s_k c_k⁻¹ f = c_{k+1}⁻¹ s_k f − (c_k c_{k+1})⁻¹ f", s.mul(ci0), ci1.mul(&s).sub(&ci0.mul(ci1)), &eq);
        chk("s_k c_{k+1}⁻¹ f = c_k⁻¹ s_k f + (c_k c_{k+1})⁻¹ f", s.mul(ci1), ci0.mul(&s).add(&ci0.mul(ci1)), &eq);
        chk("f ŝ_k b_k⁻¹ f = f b_{k+1}⁻¹ ŝ_k f − f b_{k+1}⁻¹ ê_k b_k⁻¹ f", sh.mul(bi0), bi1.mul(&sh).sub(&bi1.mul(&eh).mul(bi0)), &mx);
        chk("f ŝ_k b_{k+1}⁻¹ f = f b_k⁻¹ ŝ_k f + f b_k⁻¹ ê_k b_{k+1}⁻¹ f", sh.mul(bi1), bi0.mul(&sh).add(&bi0.mul(&eh).mul(bi1)), &mx);
        chk("f ŝ_k c_k⁻¹ f = f c_{k+1}⁻¹ ŝ_k f + f c_{k+1}⁻¹ ê_k c_k⁻¹ f", sh.mul(ci0), ci1.mul(&sh).add(&ci1.mul(&eh).mul(ci0)), &mx);
        chk("f ŝ_k c_{k+1}⁻¹ f = f c_k⁻¹ ŝ_k f − f c_k⁻¹ ê_k c_{k+1}⁻¹ f", sh.mul(ci1), ci0.mul(&sh).sub(&ci0.mul(&eh).mul(ci1)), &mx);
    }
}

/// Every numeric check at one precision: relations, named identities and
/// the transport of Jucys–Murphy elements.
fn numeric_checks(alg: &CyclotomicAlgebra, ops: &[TruncatedOps], branch: Branch, bits: usize, tol: f64) -> Result<(PhiModel, Report)> {
    let model = PhiModel::new(alg, ops, branch, bits)?;
    let mut report = verify_isomorphism_relations(&model, tol);
    report.extend(verify_jm_transport(&model, tol));
    Ok((model, report))
}

/// Per relation family, the largest residual must drop by `SHRINK_ORDERS`
/// orders of magnitude. A family that is exactly zero at the lower precision
/// is measured against its unit roundoff 2^{−bits_lo}.
fn shrink_report(lo: &Report, hi: &Report, bits_lo: usize, bits_hi: usize) -> Report {
    let mut report = Report::new(format!("residuals from {bits_lo} to {bits_hi} bits"));
    let mut worst: BTreeMap<&str, (f64, f64)> = BTreeMap::new();
    for (a, b) in lo.checks.iter().zip(&hi.checks) {
        let (Some(r0), Some(r1)) = (a.residual, b.residual) else { continue };
        let e = worst.entry(&a.relation).or_insert((0.0, 0.0));
        e.0 = e.0.max(r0);
        e.1 = e.1.max(r1);
    }
    let floor = 2f64.powi(-(bits_lo as i32));
    for (name, (r0, r1)) in worst {
        let ok = r1 == 0.0 || r1 <= r0.max(floor) * 10f64.powf(-SHRINK_ORDERS);
        report.push(Check::flag(format!("{name}: residual shrinks"), ok, format!("{r0:.3e} → {r1:.3e}")));
    }
    report
}

/// The full suite: exact identities, relations at `bits` and `bits/2`, the
/// shrink comparison, JM transport, dimensions and a rerun with the
/// opposite square-root branch.
pub fn verify_isomorphism(alg: &CyclotomicAlgebra, bits: usize, tol: f64) -> Result<Report> {
    let mut report = Report::new(format!("isomorphism Br_{{{},{}}}(−δ) ≅ f·VB·f at {bits} bits", alg.r, alg.t));
    let ops = alg.columns.iter().map(|c| truncated_ops(c, &alg.params)).collect::<Result<Vec<_>>>()?;
    report.extend(exact_identities(alg)?);
    let (model, hi) = numeric_checks(alg, &ops, Branch::Principal, bits, tol)?;
    let (_, lo) = numeric_checks(alg, &ops, Branch::Principal, bits / 2, f64::INFINITY)?;
    report.extend(shrink_report(&lo, &hi, bits / 2, bits));
    report.extend(hi);
    report.extend(verify_dimension_and_surjectivity(&model, &ops));

    if let Some(first) = ops.first() {
        let other = PhiImages::from_ops(first, Branch::Opposite, bits)?;
        let this = &model.images[0];
        let diff = (1..alg.n())
            .flat_map(|k| [GenKind::S, GenKind::SHat, GenKind::E, GenKind::EHat].map(|g| this.image(g, k).sub(other.image(g, k)).max_abs()))
            .fold(0.0, f64::max);
        let mut c = Check::numeric("opposite branch gives the same images", &first.a, vec![], diff, tol);
        c.detail = "every image is quadratic in Q_k".into();
        report.push(c);
    }
    if alg.n() < 2 {
        report.push(Check::new("σ, σ̂, τ, τ̂", Status::NotApplicable).with_detail("no index k with k, k+1 ≤ r+t"));
    }
    Ok(report)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::cyclotomic::build;
    use crate::scalar::int;

    fn params() -> Params {
        Params::new(6, 6, int(2))
    }

    #[test]
    fn sorting_words() {
        assert_eq!(sorting_word(&Sequence::parse("∨∧∧").unwrap()), vec![1, 2]);
        assert!(sorting_word(&Sequence::parse("∧∨").unwrap()).is_empty());
    }

    #[test]
    fn rank_one_has_no_generators() {
        let alg = build(1, 0, &params()).unwrap();
        let rep = verify_isomorphism(&alg, 128, RELATION_TOL).unwrap();
        assert!(rep.passed(), "{:#?}", rep.failures().collect::<Vec<_>>());
    }

    #[test]
    fn rank_two_passes() {
        for (r, t) in [(1, 1), (2, 0)] {
            let alg = build(r, t, &params()).unwrap();
            let rep = verify_isomorphism(&alg, 256, RELATION_TOL).unwrap();
            let bad: Vec<_> = rep.failures().collect();
            assert!(bad.is_empty(), "({r},{t}): {bad:#?}");
        }
    }

    #[test]
    fn crucial_identity_needs_reversed_beta() {
        let alg = build(1, 1, &params()).unwrap();
        let col = alg.column(&Sequence::parse("∧∨").unwrap());
        assert!(crucial_identity_defect(col, &alg.params, 1, true).unwrap().is_zero());
        assert!(!crucial_identity_defect(col, &alg.params, 1, false).unwrap().is_zero());
    }
}
