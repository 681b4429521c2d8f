//! Dense matrices over a [`Ring`], with exact elimination over a [`Field`].

use std::fmt;

use crate::poly::Poly;
use crate::scalar::{BigFloat, Field, Rational, Ring};

#[derive(Clone, PartialEq)]
pub struct Mat<T> {
    rows: usize,
    cols: usize,
    data: Vec<T>,
}

pub type QMat = Mat<Rational>;
pub type FMat = Mat<BigFloat>;

impl<T: Ring> Mat<T> {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        Mat { rows, cols, data: vec![T::zero(); rows * cols] }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m.data[i * n + i] = T::one();
        }
        m
    }

    pub fn from_fn(rows: usize, cols: usize, mut f: impl FnMut(usize, usize) -> T) -> Self {
        let mut data = Vec::with_capacity(rows * cols);
        for i in 0..rows {
            for j in 0..cols {
                data.push(f(i, j));
            }
        }
        Mat { rows, cols, data }
    }

    pub fn from_rows(rows: Vec<Vec<T>>) -> Self {
        let r = rows.len();
        let c = rows.first().map_or(0, Vec::len);
        assert!(rows.iter().all(|row| row.len() == c), "ragged rows");
        Mat { rows: r, cols: c, data: rows.into_iter().flatten().collect() }
    }

    pub fn from_columns(n: usize, cols: &[Vec<T>]) -> Self {
        Mat::from_fn(n, cols.len(), |i, j| cols[j][i].clone())
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }

    pub fn get(&self, i: usize, j: usize) -> &T {
        &self.data[i * self.cols + j]
    }

    pub fn set(&mut self, i: usize, j: usize, v: T) {
        self.data[i * self.cols + j] = v;
    }

    pub fn add_at(&mut self, i: usize, j: usize, v: &T) {
        let k = i * self.cols + j;
        self.data[k] = self.data[k].add(v);
    }

    pub fn column(&self, j: usize) -> Vec<T> {
        (0..self.rows).map(|i| self.get(i, j).clone()).collect()
    }

    pub fn row(&self, i: usize) -> &[T] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    pub fn map<U: Ring>(&self, f: impl Fn(&T) -> U) -> Mat<U> {
        Mat { rows: self.rows, cols: self.cols, data: self.data.iter().map(f).collect() }
    }

    pub fn transpose(&self) -> Self {
        Mat::from_fn(self.cols, self.rows, |i, j| self.get(j, i).clone())
    }

    pub fn mul(&self, other: &Mat<T>) -> Mat<T> {
        assert_eq!(self.cols, other.rows, "shape mismatch in product");
        let mut out = Mat::zeros(self.rows, other.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self.get(i, k);
                if a.is_zero() {
                    continue;
                }
                for j in 0..other.cols {
                    let b = other.get(k, j);
                    if !b.is_zero() {
                        out.add_at(i, j, &a.mul(b));
                    }
                }
            }
        }
        out
    }

    pub fn apply(&self, v: &[T]) -> Vec<T> {
        assert_eq!(self.cols, v.len());
        (0..self.rows)
            .map(|i| {
                let mut acc = T::zero();
                for (a, b) in self.row(i).iter().zip(v) {
                    if !a.is_zero() && !b.is_zero() {
                        acc = acc.add(&a.mul(b));
                    }
                }
                acc
            })
            .collect()
    }

    pub fn add(&self, other: &Mat<T>) -> Mat<T> {
        assert_eq!((self.rows, self.cols), (other.rows, other.cols));
        Mat {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().zip(&other.data).map(|(a, b)| a.add(b)).collect(),
        }
    }

    pub fn sub(&self, other: &Mat<T>) -> Mat<T> {
        assert_eq!((self.rows, self.cols), (other.rows, other.cols));
        Mat {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().zip(&other.data).map(|(a, b)| a.sub(b)).collect(),
        }
    }

    pub fn scale(&self, c: &T) -> Mat<T> {
        self.map(|a| a.mul(c))
    }

    pub fn neg(&self) -> Mat<T> {
        self.map(Ring::neg)
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(Ring::is_zero)
    }

    pub fn commutes_with(&self, other: &Mat<T>) -> bool {
        self.mul(other) == other.mul(self)
    }

    pub fn pow(&self, e: usize) -> Mat<T> {
        (0..e).fold(Mat::identity(self.rows), |acc, _| acc.mul(self))
    }

    pub fn trace(&self) -> T {
        (0..self.rows.min(self.cols)).fold(T::zero(), |acc, i| acc.add(self.get(i, i)))
    }

    /// p(self) for a rational polynomial p, by Horner.
    pub fn eval_poly(&self, p: &Poly) -> Mat<T> {
        assert!(self.is_square());
        let mut acc = Mat::zeros(self.rows, self.cols);
        for c in p.coeffs().iter().rev() {
            acc = acc.mul(self);
            let c = T::from_rational(c);
            for i in 0..self.rows {
                acc.add_at(i, i, &c);
            }
        }
        acc
    }

    /// Submatrix on the given row and column index lists.
    pub fn select(&self, rows: &[usize], cols: &[usize]) -> Mat<T> {
        Mat::from_fn(rows.len(), cols.len(), |i, j| self.get(rows[i], cols[j]).clone())
    }
}

impl<T: Field> Mat<T> {
    /// Reduced row echelon form in place; returns pivot columns.
    pub fn rref_in_place(&mut self) -> Vec<usize> {
        let mut pivots = Vec::new();
        let mut r = 0;
        for c in 0..self.cols {
            if r == self.rows {
                break;
            }
            let Some(p) = (r..self.rows).find(|&i| !self.get(i, c).is_zero()) else {
                continue;
            };
            if p != r {
                for j in 0..self.cols {
                    self.data.swap(p * self.cols + j, r * self.cols + j);
                }
            }
            let inv = self.get(r, c).inv();
            for j in c..self.cols {
                let v = self.get(r, j).mul(&inv);
                self.set(r, j, v);
            }
            for i in 0..self.rows {
                if i == r {
                    continue;
                }
                let f = self.get(i, c).clone();
                if f.is_zero() {
                    continue;
                }
                for j in c..self.cols {
                    let b = self.get(r, j);
                    if !b.is_zero() {
                        let v = self.get(i, j).sub(&f.mul(b));
                        self.set(i, j, v);
                    }
                }
            }
            pivots.push(c);
            r += 1;
        }
        pivots
    }

    pub fn rank(&self) -> usize {
        self.clone().rref_in_place().len()
    }

    /// Basis of the right nullspace {v : self·v = 0}.
    pub fn nullspace(&self) -> Vec<Vec<T>> {
        let mut m = self.clone();
        let pivots = m.rref_in_place();
        let free: Vec<usize> = (0..self.cols).filter(|c| !pivots.contains(c)).collect();
        free.iter()
            .map(|&f| {
                let mut v = vec![T::zero(); self.cols];
                v[f] = T::one();
                for (r, &p) in pivots.iter().enumerate() {
                    v[p] = m.get(r, f).neg();
                }
                v
            })
            .collect()
    }

    pub fn inverse(&self) -> Option<Mat<T>> {
        assert!(self.is_square());
        let n = self.rows;
        let mut aug = Mat::from_fn(n, 2 * n, |i, j| {
            if j < n {
                self.get(i, j).clone()
            } else if j - n == i {
                T::one()
            } else {
                T::zero()
            }
        });
        let piv = aug.rref_in_place();
        if piv.len() < n || piv[n - 1] != n - 1 {
            return None;
        }
        Some(Mat::from_fn(n, n, |i, j| aug.get(i, n + j).clone()))
    }

    /// A maximal linearly independent subset of the columns, as indices.
    pub fn independent_columns(&self) -> Vec<usize> {
        self.clone().rref_in_place()
    }

    /// Basis (as columns) of the column space.
    pub fn column_space(&self) -> Mat<T> {
        let idx = self.independent_columns();
        Mat::from_fn(self.rows, idx.len(), |i, j| self.get(i, idx[j]).clone())
    }

    /// For an operator `self` that leaves the column span of `basis`
    /// invariant, the matrix of the restriction in that basis. Returns
    /// `None` when the span is not invariant.
    pub fn restrict_to(&self, basis: &Mat<T>) -> Option<Mat<T>> {
        let image = self.mul(basis);
        solve_in_basis(basis, &image)
    }
}

/// Coordinates X with basis·X = targets, or `None` if some target column is
/// outside the span. `basis` must have independent columns.
pub fn solve_in_basis<T: Field>(basis: &Mat<T>, targets: &Mat<T>) -> Option<Mat<T>> {
    let n = basis.rows();
    let k = basis.cols();
    let t = targets.cols();
    let mut aug = Mat::from_fn(n, k + t, |i, j| {
        if j < k {
            basis.get(i, j).clone()
        } else {
            targets.get(i, j - k).clone()
        }
    });
    let piv = aug.rref_in_place();
    if piv.len() < k || piv[..k].iter().enumerate().any(|(i, &p)| p != i) || piv.len() > k {
        return None;
    }
    Some(Mat::from_fn(k, t, |i, j| aug.get(i, k + j).clone()))
}

impl Mat<BigFloat> {
    /// Largest absolute entry, as f64.
    pub fn max_abs(&self) -> f64 {
        self.data.iter().map(|x| x.abs().to_f64()).fold(0.0, f64::max)
    }
}

impl Mat<Rational> {
    pub fn to_float(&self) -> Mat<BigFloat> {
        self.map(BigFloat::from_rational)
    }
}

impl<T: Ring + fmt::Display> fmt::Debug for Mat<T> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "Mat {}x{} [", self.rows, self.cols)?;
        for i in 0..self.rows {
            let row: Vec<String> = self.row(i).iter().map(|x| x.to_string()).collect();
            writeln!(f, "  {}", row.join(", "))?;
        }
        write!(f, "]")
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::int;

    fn q(rows: &[&[i64]]) -> QMat {
        Mat::from_rows(rows.iter().map(|r| r.iter().map(|&x| int(x)).collect()).collect())
    }

    #[test]
    fn inverse_and_rank() {
        let a = q(&[&[2, 1], &[1, 1]]);
        let inv = a.inverse().unwrap();
        assert_eq!(a.mul(&inv), QMat::identity(2));
        let s = q(&[&[1, 2], &[2, 4]]);
        assert_eq!(s.rank(), 1);
        assert!(s.inverse().is_none());
        let ns = s.nullspace();
        assert_eq!(ns.len(), 1);
        assert!(s.apply(&ns[0]).iter().all(Ring::is_zero));
    }

    #[test]
    fn restriction_to_invariant_subspace() {
        let a = q(&[&[1, 1, 0], &[0, 2, 0], &[0, 0, 3]]);
        let basis = q(&[&[1, 0], &[0, 1], &[0, 0]]);
        let r = a.restrict_to(&basis).unwrap();
        assert_eq!(r, q(&[&[1, 1], &[0, 2]]));
        let bad = q(&[&[0], &[1], &[1]]);
        assert!(a.restrict_to(&bad).is_none());
    }

    #[test]
    fn polynomial_evaluation() {
        let a = q(&[&[0, 1], &[0, 0]]);
        let p = Poly::from_coeffs(vec![int(1), int(1), int(1)]);
        assert_eq!(a.eval_poly(&p), q(&[&[1, 1], &[0, 1]]));
    }
}
