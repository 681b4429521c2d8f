//! The idempotent f = Π_k η_k projecting onto small eigenvalues, the
//! truncated column modules f·VB·f·1_a, and joint spectra of the y's.

use std::collections::BTreeMap;

use crate::calculus::spectral_decompose;
use crate::cyclotomic::{Column, CyclotomicAlgebra};
use crate::diagram::{GenKind, Sequence};
use crate::error::{Error, Result};
use crate::matrix::{solve_in_basis, QMat};
use crate::params::Params;
use crate::report::{Check, Report};
use crate::scalar::{format_rational, Field, Rational, Ring};
use crate::young4::{predicted_spectrum_mixed, PathFilter};

/// Incremental row echelon form for span and membership tests.
struct Echelon {
    rows: Vec<(usize, Vec<Rational>)>,
}

impl Echelon {
    fn new() -> Self {
        Echelon { rows: Vec::new() }
    }

    /// Reduces v; returns true and stores it when it is new.
    fn insert(&mut self, v: &[Rational]) -> bool {
        let mut v = v.to_vec();
        for (p, row) in &self.rows {
            if !v[*p].is_zero() {
                let c = v[*p].clone();
                for (x, y) in v.iter_mut().zip(row) {
                    if !y.is_zero() {
                        *x = x.sub(&c.mul(y));
                    }
                }
            }
        }
        let Some(p) = v.iter().position(|x| !x.is_zero()) else {
            return false;
        };
        let inv = v[p].inv();
        v.iter_mut().for_each(|x| *x = x.mul(&inv));
        for (_, row) in &mut self.rows {
            if !row[p].is_zero() {
                let c = row[p].clone();
                for (x, y) in row.iter_mut().zip(&v) {
                    if !y.is_zero() {
                        *x = x.sub(&c.mul(y));
                    }
                }
            }
        }
        self.rows.push((p, v));
        true
    }
}

/// Smallest subspace containing `start` and stable under `ops`.
pub fn cyclic_span(ops: &[QMat], start: &[Vec<Rational>]) -> Vec<Vec<Rational>> {
    let mut ech = Echelon::new();
    let mut basis = Vec::new();
    let mut queue: Vec<Vec<Rational>> = Vec::new();
    for v in start {
        if ech.insert(v) {
            basis.push(v.clone());
            queue.push(v.clone());
        }
    }
    while let Some(v) = queue.pop() {
        for op in ops {
            let w = op.apply(&v);
            if ech.insert(&w) {
                basis.push(w.clone());
                queue.push(w);
            }
        }
    }
    basis
}

pub(crate) fn block_matrix(col: &Column, x: &QMat, b: &Sequence) -> QMat {
    let (lo, hi) = col.block_of(b);
    let idx: Vec<usize> = (lo..hi).collect();
    x.select(&idx, &idx)
}

fn embed_block(col: &Column, x: &QMat, b: &Sequence, into: &mut QMat) {
    let (lo, _) = col.block_of(b);
    for i in 0..x.rows() {
        for j in 0..x.cols() {
            let v = x.get(i, j);
            if !v.is_zero() {
                into.set(lo + i, lo + j, v.clone());
            }
        }
    }
}

/// η_k 1_b on the block 1_b·VB·1_a: the spectral projector of y_k away
/// from β₁^{b_k}.
pub fn eta(col: &Column, params: &Params, k: usize, b: &Sequence) -> Result<QMat> {
    let yk = block_matrix(col, &col.y[k - 1], b);
    let sd = spectral_decompose(&yk)?;
    let large = params.beta1(b.at(k));
    Ok(sd.projector(|e| *e != large))
}

/// f as a left operator on VB·1_a.
pub fn compute_f(col: &Column, params: &Params) -> Result<QMat> {
    let n = col.dim();
    let mut f = QMat::zeros(n, n);
    for b in &col.sequences {
        let (lo, hi) = col.block_of(b);
        let mut fb = QMat::identity(hi - lo);
        for k in 1..=col.y.len() {
            fb = fb.mul(&eta(col, params, k, b)?);
        }
        embed_block(col, &fb, b, &mut f);
    }
    Ok(f)
}

/// f_j = Π_{i ≤ j} η_i as a left operator on VB·1_a.
pub fn partial_f(col: &Column, params: &Params, j: usize) -> Result<QMat> {
    let n = col.dim();
    let mut f = QMat::zeros(n, n);
    for b in &col.sequences {
        let (lo, hi) = col.block_of(b);
        let mut fb = QMat::identity(hi - lo);
        for k in 1..=j {
            fb = fb.mul(&eta(col, params, k, b)?);
        }
        embed_block(col, &fb, b, &mut f);
    }
    Ok(f)
}

/// All left generators of a column: idempotents, y's and the four
/// families of diagram generators.
pub fn left_generators(col: &Column) -> Vec<QMat> {
    let mut ops: Vec<QMat> = col.sequences.iter().map(|b| col.projection(b)).collect();
    ops.extend(col.y.iter().cloned());
    ops.extend(col.gens.values().cloned());
    ops
}

/// f·VB·f·1_a inside VB·1_a, with a basis grouped by target block.
#[derive(Clone, Debug)]
pub struct Truncation {
    pub a: Sequence,
    pub sequences: Vec<Sequence>,
    /// f as a left operator on VB·1_a.
    pub f: QMat,
    /// Columns span the truncated module, in VB·1_a coordinates.
    pub basis: QMat,
    pub blocks: Vec<(usize, usize)>,
}

impl Truncation {
    pub fn dim(&self) -> usize {
        self.basis.cols()
    }

    /// f x f restricted to the truncated module.
    pub fn restrict(&self, x: &QMat) -> Result<QMat> {
        let image = self.f.mul(&x.mul(&self.f.mul(&self.basis)));
        solve_in_basis(&self.basis, &image).ok_or_else(|| Error::ClosureFailure("f x f leaves the truncated module".into()))
    }

    pub fn projection(&self, b: &Sequence) -> QMat {
        let (lo, hi) = self.blocks[self.sequences.iter().position(|s| s == b).expect("sequence of this rank")];
        let n = self.dim();
        QMat::from_fn(n, n, |i, j| if i == j && (lo..hi).contains(&i) { Rational::one() } else { Rational::zero() })
    }
}

pub fn truncate(col: &Column, params: &Params) -> Result<Truncation> {
    let f = compute_f(col, params)?;
    let w = f.apply(&col.unit_vector());
    if w.iter().all(Ring::is_zero) {
        return Err(Error::ClosureFailure(format!("f 1_{} vanishes", col.a)));
    }
    let submodule = cyclic_span(&left_generators(col), &[w]);
    let sub = QMat::from_columns(col.dim(), &submodule);
    let mut cols = Vec::new();
    let mut blocks = Vec::new();
    for b in &col.sequences {
        let lo = cols.len();
        let image = f.mul(&col.projection(b)).mul(&sub).column_space();
        cols.extend((0..image.cols()).map(|j| image.column(j)));
        blocks.push((lo, cols.len()));
    }
    Ok(Truncation {
        a: col.a.clone(),
        sequences: col.sequences.clone(),
        f,
        basis: QMat::from_columns(col.dim(), &cols),
        blocks,
    })
}

/// Joint generalized eigenspace dimensions of commuting matrices.
pub fn joint_spectrum(ops: &[QMat]) -> Result<BTreeMap<Vec<Rational>, usize>> {
    let Some(first) = ops.first() else {
        return Ok(BTreeMap::new());
    };
    let n = first.rows();
    let mut parts = vec![(Vec::new(), QMat::identity(n))];
    for op in ops {
        let sd = spectral_decompose(op)?;
        let mut next = Vec::new();
        for (seq, p) in &parts {
            for c in &sd.components {
                let q = p.mul(&c.idempotent);
                if !q.is_zero() {
                    let mut s: Vec<Rational> = seq.clone();
                    s.push(c.eigenvalue.clone());
                    next.push((s, q));
                }
            }
        }
        parts = next;
    }
    Ok(parts.into_iter().map(|(s, p)| (s, p.rank())).filter(|(_, r)| *r > 0).collect())
}

fn spectrum_text(s: &BTreeMap<Vec<Rational>, usize>) -> String {
    s.iter()
        .map(|(k, v)| format!("({})×{v}", k.iter().map(format_rational).collect::<Vec<_>>().join(",")))
        .collect::<Vec<_>>()
        .join(" ")
}

fn restrict_to_image(x: &QMat, image: &QMat) -> Result<QMat> {
    solve_in_basis(image, &x.mul(image)).ok_or_else(|| Error::ClosureFailure("image is not invariant".into()))
}

fn compare(report: &mut Report, name: &str, orientation: String, got: &BTreeMap<Vec<Rational>, usize>, want: &BTreeMap<Vec<Rational>, usize>) {
    let ok = got == want;
    let detail = if ok { spectrum_text(got) } else { format!("computed {} | predicted {}", spectrum_text(got), spectrum_text(want)) };
    report.push(Check::flag(name, ok, detail).with_orientation(orientation));
}

/// Joint spectra of (y₁,…,y_n) against the 4-Young path prediction on
/// every block 1_b·VB·1_a, on its f-image and on 1_b·f·VB·f·1_a.
pub fn eigen_cross_check(alg: &CyclotomicAlgebra) -> Result<Report> {
    let p = &alg.params;
    let mut report = Report::new(format!("y-spectra against 4-Young paths at (r,t) = ({},{})", alg.r, alg.t));
    let n = alg.n();
    let nfact: usize = (1..=n).product();
    for col in &alg.columns {
        let tr = truncate(col, p)?;
        for b in &col.sequences {
            let label = format!("1_{b}·VB·1_{}", col.a);
            let ys: Vec<QMat> = col.y.iter().map(|y| block_matrix(col, y, b)).collect();
            let got = joint_spectrum(&ys)?;
            compare(&mut report, "spectrum on block", label.clone(), &got, &predicted_spectrum_mixed(b, &col.a, p, PathFilter::All, PathFilter::All)?);

            let fb = block_matrix(col, &tr.f, b);
            let image = fb.column_space();
            let got = if image.cols() == 0 {
                BTreeMap::new()
            } else {
                joint_spectrum(&ys.iter().map(|y| restrict_to_image(y, &image)).collect::<Result<Vec<_>>>()?)?
            };
            let want = predicted_spectrum_mixed(b, &col.a, p, PathFilter::Small, PathFilter::All)?;
            compare(&mut report, "spectrum on f-image of block", label.clone(), &got, &want);

            let pb = tr.projection(b);
            let (lo, hi) = tr.blocks[col.sequences.iter().position(|s| s == b).unwrap()];
            let idx: Vec<usize> = (lo..hi).collect();
            let got = if hi == lo {
                BTreeMap::new()
            } else {
                let ys = col.y.iter().map(|y| tr.restrict(y).map(|m| pb.mul(&m).select(&idx, &idx))).collect::<Result<Vec<_>>>()?;
                joint_spectrum(&ys)?
            };
            let want = predicted_spectrum_mixed(b, &col.a, p, PathFilter::Small, PathFilter::Small)?;
            compare(&mut report, "spectrum on f·VB·f block", label.clone(), &got, &want);
            report.push(
                Check::flag("dim 1_b·f·VB·f·1_a = (r+t)!", hi - lo == nfact, format!("{} vs {nfact}", hi - lo)).with_orientation(label),
            );
        }
    }
    Ok(report)
}

/// Basic properties of f on every column.
pub fn f_properties(alg: &CyclotomicAlgebra) -> Result<Report> {
    let p = &alg.params;
    let mut report = Report::new("properties of f");
    for col in &alg.columns {
        let f = compute_f(col, p)?;
        let label = format!("VB·1_{}", col.a);
        report.push(Check::flag("f² = f", f.mul(&f) == f, "").with_orientation(&label));
        let commutes = col.y.iter().all(|y| y.commutes_with(&f));
        report.push(Check::flag("f commutes with every y_k", commutes, "").with_orientation(&label));
        let w = f.apply(&col.unit_vector());
        report.push(Check::flag("f 1_a ≠ 0", w.iter().any(|x| !x.is_zero()), "").with_orientation(&label));
        let commute_proj = col.sequences.iter().all(|b| col.projection(b).commutes_with(&f));
        report.push(Check::flag("f commutes with every 1_b", commute_proj, "").with_orientation(&label));
        let far = (1..col.y.len()).all(|k| {
            [GenKind::S, GenKind::SHat, GenKind::E, GenKind::EHat].iter().all(|&kind| {
                let g = col.gen(kind, k);
                // η_j for j ≠ k, k+1 commutes with the generators at k
                (1..=col.y.len()).filter(|&j| j != k && j != k + 1).all(|j| {
                    let mut ej = QMat::zeros(col.dim(), col.dim());
                    for b in &col.sequences {
                        if let Ok(e) = eta(col, p, j, b) {
                            embed_block(col, &e, b, &mut ej);
                        }
                    }
                    g.commutes_with(&ej)
                })
            })
        });
        report.push(Check::flag("η_j commutes with generators at k ≠ j−1, j", far, "").with_orientation(&label));
    }
    Ok(report)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::cyclotomic::build;
    use crate::scalar::int;

    #[test]
    fn span_of_identity() {
        let id = QMat::identity(3);
        let v = vec![Rational::one(), Rational::zero(), Rational::zero()];
        assert_eq!(cyclic_span(&[id], &[v]).len(), 1);
    }

    #[test]
    fn small_cross_checks() {
        let p = Params::new(6, 6, int(2));
        for (r, t) in [(1, 0), (0, 1), (1, 1), (2, 0)] {
            let alg = build(r, t, &p).unwrap();
            let rep = eigen_cross_check(&alg).unwrap();
            let bad: Vec<_> = rep.failures().collect();
            assert!(bad.is_empty(), "({r},{t}): {bad:#?}");
            assert!(f_properties(&alg).unwrap().passed());
        }
    }
}
