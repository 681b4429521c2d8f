//! Br_{r,t}(m) acting on mixed tensor space V^{⊗a} for GL_m, where a
//! DOWN entry of the orientation stands for a copy of the dual V*.

use crate::diagram::{Arrow, GenKind, OrientedDiagram, Sequence};
use crate::matrix::QMat;
use crate::presentation::{check_relations, Defect, RelationModel};
use crate::report::{Check, Report};
use crate::scalar::{int, Rational, Ring};

/// Basis index of a tuple (i_1, …, i_n), i_1 most significant.
fn digits(mut idx: usize, m: usize, n: usize) -> Vec<usize> {
    let mut out = vec![0; n];
    for j in (0..n).rev() {
        out[j] = idx % m;
        idx /= m;
    }
    out
}

fn undigits(d: &[usize], m: usize) -> usize {
    d.iter().fold(0, |acc, &x| acc * m + x)
}

/// Matrix of a generator g_k 1_a as a map V^{⊗a} → V^{⊗b}.
fn generator_matrix(m: usize, n: usize, kind: GenKind, k: usize) -> QMat {
    let dim = m.pow(n as u32);
    let mut mat = QMat::zeros(dim, dim);
    for col in 0..dim {
        let d = digits(col, m, n);
        match kind {
            GenKind::Id => mat.set(col, col, int(1)),
            GenKind::S | GenKind::SHat => {
                let mut e = d.clone();
                e.swap(k - 1, k);
                mat.set(undigits(&e, m), col, int(1));
            }
            GenKind::E | GenKind::EHat => {
                if d[k - 1] == d[k] {
                    for l in 0..m {
                        let mut e = d.clone();
                        e[k - 1] = l;
                        e[k] = l;
                        mat.add_at(undigits(&e, m), col, &int(1));
                    }
                }
            }
        }
    }
    mat
}

/// The generators leaving 1_a, as matrices on V^{⊗a}.
#[derive(Clone, Debug)]
pub struct TensorRep {
    pub m: usize,
    pub a: Sequence,
    /// (kind, k, target orientation, matrix)
    pub matrices: Vec<(GenKind, usize, Sequence, QMat)>,
}

pub fn build_rep(m: usize, a: &Sequence) -> TensorRep {
    let n = a.len();
    let mut matrices = vec![(GenKind::Id, 0, a.clone(), generator_matrix(m, n, GenKind::Id, 0))];
    for k in 1..n {
        for kind in [GenKind::S, GenKind::SHat, GenKind::E, GenKind::EHat] {
            if let Ok(d) = OrientedDiagram::generator(kind, k, a) {
                matrices.push((kind, k, d.target().clone(), generator_matrix(m, n, kind, k)));
            }
        }
    }
    TensorRep { m, a: a.clone(), matrices }
}

impl TensorRep {
    pub fn get(&self, kind: GenKind, k: usize) -> Option<&QMat> {
        self.matrices.iter().find(|(g, i, _, _)| *g == kind && *i == k).map(|(_, _, _, m)| m)
    }
}

/// Matrix of an arbitrary diagram a → b.
pub fn diagram_matrix(m: usize, d: &OrientedDiagram) -> QMat {
    let n = d.n();
    let dim = m.pow(n as u32);
    let mut acc = QMat::identity(dim);
    for g in d.word() {
        let (kind, k) = classify(&g);
        acc = acc.mul(&generator_matrix(m, n, kind, k));
    }
    acc
}

fn classify(g: &OrientedDiagram) -> (GenKind, usize) {
    let n = g.n();
    if *g == OrientedDiagram::identity(g.source()) {
        return (GenKind::Id, 0);
    }
    for k in 1..n {
        for kind in [GenKind::S, GenKind::SHat, GenKind::E, GenKind::EHat] {
            if OrientedDiagram::generator(kind, k, g.source()).as_ref() == Ok(g) {
                return (kind, k);
            }
        }
    }
    unreachable!("word() only produces generators")
}

/// ρ(E_pq) on V^{⊗a}; DOWN factors carry the negative transpose.
pub fn gl_action(m: usize, a: &Sequence, p: usize, q: usize) -> QMat {
    let n = a.len();
    let dim = m.pow(n as u32);
    let mut mat = QMat::zeros(dim, dim);
    for col in 0..dim {
        let d = digits(col, m, n);
        for (j, arrow) in a.0.iter().enumerate() {
            let (from, to, sign) = match arrow {
                Arrow::Up => (q, p, 1),
                Arrow::Down => (p, q, -1),
            };
            if d[j] == from {
                let mut e = d.clone();
                e[j] = to;
                mat.add_at(undigits(&e, m), col, &int(sign));
            }
        }
    }
    mat
}

fn weight(m: usize, a: &Sequence, idx: usize) -> Vec<i64> {
    let mut w = vec![0; m];
    for (j, x) in digits(idx, m, a.len()).into_iter().enumerate() {
        w[x] += if a.0[j] == Arrow::Up { 1 } else { -1 };
    }
    w
}

/// Basis of End_{gl_m}(V^{⊗a}), each element as a matrix.
pub fn commutant_basis(m: usize, a: &Sequence) -> Vec<QMat> {
    let n = a.len();
    let dim = m.pow(n as u32);
    let weights: Vec<Vec<i64>> = (0..dim).map(|i| weight(m, a, i)).collect();
    // Unknowns: entries X_ij between equal weights (the torus forces the rest to vanish).
    let mut var = vec![vec![None; dim]; dim];
    let mut count = 0;
    for i in 0..dim {
        for j in 0..dim {
            if weights[i] == weights[j] {
                var[i][j] = Some(count);
                count += 1;
            }
        }
    }
    let mut rows: Vec<Vec<Rational>> = Vec::new();
    let mut ops = Vec::new();
    for p in 0..m.saturating_sub(1) {
        ops.push(gl_action(m, a, p, p + 1));
        ops.push(gl_action(m, a, p + 1, p));
    }
    for g in &ops {
        // [X, g]_ij = Σ_k X_ik g_kj − g_ik X_kj
        for i in 0..dim {
            for j in 0..dim {
                let mut row = vec![Rational::zero(); count];
                let mut nonzero = false;
                for k in 0..dim {
                    if let Some(v) = var[i][k] {
                        let c = g.get(k, j);
                        if !c.is_zero() {
                            row[v] = row[v].add(c);
                            nonzero = true;
                        }
                    }
                    if let Some(v) = var[k][j] {
                        let c = g.get(i, k);
                        if !c.is_zero() {
                            row[v] = row[v].sub(c);
                            nonzero = true;
                        }
                    }
                }
                if nonzero {
                    rows.push(row);
                }
            }
        }
    }
    let sys = if rows.is_empty() { QMat::zeros(1, count) } else { QMat::from_rows(rows) };
    sys.nullspace()
        .into_iter()
        .map(|v| {
            let mut x = QMat::zeros(dim, dim);
            for i in 0..dim {
                for j in 0..dim {
                    if let Some(idx) = var[i][j] {
                        x.set(i, j, v[idx].clone());
                    }
                }
            }
            x
        })
        .collect()
}

pub fn commutant_dimension(m: usize, a: &Sequence) -> usize {
    commutant_basis(m, a).len()
}

/// Dimension of the span of the diagram matrices in End(V^{⊗a}).
pub fn diagram_span_dimension(m: usize, a: &Sequence) -> usize {
    let mats: Vec<QMat> = OrientedDiagram::enumerate(a, a).iter().map(|d| diagram_matrix(m, d)).collect();
    flattened_rank(&mats)
}

fn flattened_rank(mats: &[QMat]) -> usize {
    if mats.is_empty() {
        return 0;
    }
    let n = mats[0].rows() * mats[0].cols();
    QMat::from_fn(mats.len(), n, |i, j| mats[i].get(j / mats[i].cols(), j % mats[i].cols()).clone()).rank()
}

/// All of Seq_{r,t} at once: the direct sum of V^{⊗a}, as a model for the
/// relation checker with loop value m.
pub struct TensorSpace {
    pub m: usize,
    pub r: usize,
    pub t: usize,
    seqs: Vec<Sequence>,
    block: usize,
}

impl TensorSpace {
    pub fn new(m: usize, r: usize, t: usize) -> Self {
        TensorSpace { m, r, t, seqs: Sequence::all(r, t), block: m.pow((r + t) as u32) }
    }

    fn offset(&self, a: &Sequence) -> usize {
        self.seqs.iter().position(|b| b == a).expect("sequence of this rank") * self.block
    }

    fn embed(&self, a: &Sequence, b: &Sequence, mat: &QMat) -> QMat {
        let total = self.block * self.seqs.len();
        let (ca, rb) = (self.offset(a), self.offset(b));
        let mut out = QMat::zeros(total, total);
        for i in 0..self.block {
            for j in 0..self.block {
                let v = mat.get(i, j);
                if !v.is_zero() {
                    out.set(rb + i, ca + j, v.clone());
                }
            }
        }
        out
    }
}

impl RelationModel for TensorSpace {
    type Elem = QMat;

    fn n(&self) -> usize {
        self.r + self.t
    }
    fn sequences(&self) -> Vec<Sequence> {
        self.seqs.clone()
    }
    fn zero(&self) -> QMat {
        let total = self.block * self.seqs.len();
        QMat::zeros(total, total)
    }
    fn unit(&self, a: &Sequence) -> QMat {
        self.embed(a, a, &QMat::identity(self.block))
    }
    fn gen(&self, kind: GenKind, k: usize, a: &Sequence) -> QMat {
        match OrientedDiagram::generator(kind, k, a) {
            Ok(d) => self.embed(a, d.target(), &generator_matrix(self.m, self.n(), kind, k)),
            Err(_) => self.zero(),
        }
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
        x.scale(&int(self.m as i64))
    }
    fn defect(&self, x: &QMat) -> Defect {
        let mut count = 0;
        for i in 0..x.rows() {
            count += x.row(i).iter().filter(|v| !v.is_zero()).count();
        }
        Defect::Terms(count)
    }
}

/// Every presentation relation as a matrix identity with δ = m.
pub fn verify_rep_is_homomorphism(m: usize, r: usize, t: usize) -> Report {
    let mut report = check_relations(&TensorSpace::new(m, r, t), 0.0);
    report.title = format!("Br_{{{r},{t}}}({m}) on mixed tensor space, m = {m}");
    report
}

/// Commutant dimension against (r+t)! and against the span of the diagram
/// action, for every orientation.
pub fn commutant_report(m: usize, r: usize, t: usize) -> Report {
    let mut report = Report::new(format!("commutant of gl_{m} on mixed tensor space"));
    let fact: usize = (1..=r + t).product();
    for a in Sequence::all(r, t) {
        let basis = commutant_basis(m, &a);
        let diagrams: Vec<QMat> = OrientedDiagram::enumerate(&a, &a).iter().map(|d| diagram_matrix(m, d)).collect();
        let span = flattened_rank(&diagrams);
        let mut joint = basis.clone();
        joint.extend(diagrams.iter().cloned());
        let joint_rank = flattened_rank(&joint);
        let ok = basis.len() == span && joint_rank == basis.len();
        report.push(
            Check::flag("commutant spanned by diagrams", ok, format!("commutant {} diagram span {} joint {}", basis.len(), span, joint_rank))
                .with_orientation(&a),
        );
        if m >= r + t {
            report.push(Check::flag("commutant dimension = (r+t)!", basis.len() == fact, format!("{} vs {}", basis.len(), fact)).with_orientation(&a));
        }
    }
    report
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn contraction_rank_and_trace() {
        let a = Sequence::parse("∧∨").unwrap();
        let rep = build_rep(2, &a);
        let e = rep.get(GenKind::E, 1).unwrap();
        assert_eq!(e.rank(), 1);
        assert_eq!(e.trace(), int(2));
        assert_eq!(e.mul(e), e.scale(&int(2)));
    }

    #[test]
    fn commutant_examples() {
        assert_eq!(commutant_dimension(2, &Sequence::parse("∧").unwrap()), 1);
        assert_eq!(commutant_dimension(3, &Sequence::parse("∧∨").unwrap()), 2);
        assert_eq!(commutant_dimension(3, &Sequence::parse("∧∧∨").unwrap()), 6);
    }

    #[test]
    fn relations_small() {
        assert!(verify_rep_is_homomorphism(3, 1, 1).passed());
        assert!(verify_rep_is_homomorphism(2, 2, 1).passed());
    }
}
