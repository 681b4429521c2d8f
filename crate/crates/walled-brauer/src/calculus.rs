//! Functions of a single matrix x0 through the commutative algebra it
//! generates: minimal polynomial, CRT idempotents, inverses and square
//! roots of f(x0), and inverses truncated away from chosen eigenvalues.

use crate::error::{Error, Result};
use crate::matrix::{solve_in_basis, FMat, QMat};
use crate::poly::Poly;
use crate::scalar::{format_rational, rational_sqrt, BigFloat, Field, Rational, Ring};

#[derive(Clone, Debug)]
pub struct Component {
    pub eigenvalue: Rational,
    /// Nilpotency index j_i: multiplicity in the minimal polynomial.
    pub index: usize,
    /// P_i as a polynomial in x0, reduced mod the minimal polynomial.
    pub idempotent_poly: Poly,
    pub idempotent: QMat,
}

#[derive(Clone, Debug)]
pub struct SpectralData {
    pub element: QMat,
    pub minimal_polynomial: Poly,
    pub components: Vec<Component>,
}

/// Minimal polynomial of a square matrix, as the lcm of the Krylov
/// minimal polynomials of the standard basis vectors.
pub fn minimal_polynomial(x0: &QMat) -> Poly {
    let n = x0.rows();
    let mut m = Poly::one();
    for j in 0..n {
        let mut e = vec![Rational::zero(); n];
        e[j] = Rational::one();
        if apply_poly(x0, &m, &e).iter().all(Ring::is_zero) {
            continue;
        }
        let local = vector_minimal_polynomial(x0, &e);
        let g = m.gcd(&local);
        m = m.mul(&local).div_rem(&g).0.monic();
    }
    m
}

fn apply_poly(x0: &QMat, p: &Poly, v: &[Rational]) -> Vec<Rational> {
    let mut acc = vec![Rational::zero(); v.len()];
    for c in p.coeffs().iter().rev() {
        acc = x0.apply(&acc);
        for (a, b) in acc.iter_mut().zip(v) {
            *a = a.add(&b.mul(c));
        }
    }
    acc
}

fn vector_minimal_polynomial(x0: &QMat, v: &[Rational]) -> Poly {
    let n = v.len();
    let mut krylov = vec![v.to_vec()];
    loop {
        let next = x0.apply(krylov.last().unwrap());
        let basis = QMat::from_columns(n, &krylov);
        let target = QMat::from_columns(n, std::slice::from_ref(&next));
        if let Some(c) = solve_in_basis(&basis, &target) {
            // next = Σ c_i x0^i v, so t^d − Σ c_i t^i kills v
            let mut coeffs: Vec<Rational> = (0..krylov.len()).map(|i| c.get(i, 0).neg()).collect();
            coeffs.push(Rational::one());
            return Poly::from_coeffs(coeffs);
        }
        krylov.push(next);
    }
}

/// CRT decomposition of the algebra generated by x0. Exact; fails when the
/// minimal polynomial has an irreducible factor of degree > 1.
pub fn spectral_decompose(x0: &QMat) -> Result<SpectralData> {
    assert!(x0.is_square());
    let mp = minimal_polynomial(x0);
    let (roots, rest) = mp.rational_factorization();
    if rest.degree().unwrap_or(0) > 0 {
        return Err(Error::IrrationalSpectrum);
    }
    let components = roots
        .into_iter()
        .map(|(a, j)| {
            let local = Poly::linear_root(&a).pow(j);
            let q = mp.div_rem(&local).0;
            let h = q.inverse_mod(&local).expect("coprime factors");
            let p = q.mul(&h).rem(&mp);
            let idempotent = x0.eval_poly(&p);
            Component { eigenvalue: a, index: j, idempotent_poly: p, idempotent }
        })
        .collect();
    Ok(SpectralData { element: x0.clone(), minimal_polynomial: mp, components })
}

impl SpectralData {
    pub fn eigenvalues(&self) -> Vec<Rational> {
        self.components.iter().map(|c| c.eigenvalue.clone()).collect()
    }

    pub fn component(&self, a: &Rational) -> Option<&Component> {
        self.components.iter().find(|c| &c.eigenvalue == a)
    }

    /// Sum of idempotents over eigenvalues satisfying `keep`.
    pub fn projector(&self, keep: impl Fn(&Rational) -> bool) -> QMat {
        let n = self.element.rows();
        self.components
            .iter()
            .filter(|c| keep(&c.eigenvalue))
            .fold(QMat::zeros(n, n), |acc, c| acc.add(&c.idempotent))
    }

    fn check_nonvanishing(&self, f: &Poly, retained: impl Fn(&Rational) -> bool) -> Result<()> {
        for c in &self.components {
            if retained(&c.eigenvalue) && f.eval(&c.eigenvalue).is_zero() {
                return Err(Error::EigenvalueHit(format_rational(&c.eigenvalue)));
            }
        }
        Ok(())
    }
}

/// g(x0) with g(x0) f(x0) = 1. Works for irrational spectra too, through
/// the extended gcd with the minimal polynomial.
pub fn inverse_of_polynomial(x0: &QMat, f: &Poly) -> Result<QMat> {
    let mp = minimal_polynomial(x0);
    match f.inverse_mod(&mp) {
        Some(g) => Ok(x0.eval_poly(&g)),
        None => {
            let common = f.gcd(&mp);
            let hit = common.rational_roots().first().map(format_rational).unwrap_or_else(|| format!("root of {common}"));
            Err(Error::EigenvalueHit(hit))
        }
    }
}

/// Coefficients of (1+t)^{1/2} = Σ binom(1/2, j) t^j.
pub fn sqrt_series(terms: usize) -> Vec<Rational> {
    let half = Rational::one().div(&Rational::from(2));
    let mut out = Vec::with_capacity(terms);
    let mut c = Rational::one();
    for j in 0..terms {
        out.push(c.clone());
        // binom(1/2, j+1) = binom(1/2, j) (1/2 − j) / (j+1)
        c = c.mul(&half.sub(&Rational::from(j))).div(&Rational::from(j + 1));
    }
    out
}

/// Which square root to take on every component.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Default)]
pub enum Branch {
    #[default]
    Principal,
    Opposite,
}

/// A square root written as Σ_i √c_i · R_i with rational c_i > 0 and
/// rational matrices R_i, so the irrational part is isolated in scalars.
#[derive(Clone, Debug)]
pub struct SqrtForm {
    pub terms: Vec<(Rational, QMat)>,
}

impl SqrtForm {
    /// The exact matrix, when every c_i is a rational square.
    pub fn exact(&self, branch: Branch) -> Option<QMat> {
        let n = self.terms.first()?.1.rows();
        let mut acc = QMat::zeros(n, n);
        for (c, r) in &self.terms {
            let s = rational_sqrt(c)?;
            acc = acc.add(&r.scale(&s));
        }
        Some(if branch == Branch::Opposite { acc.neg() } else { acc })
    }

    pub fn to_float(&self, branch: Branch) -> FMat {
        let n = self.terms.first().map_or(0, |t| t.1.rows());
        let mut acc = FMat::zeros(n, n);
        for (c, r) in &self.terms {
            let mut s = BigFloat::from_rational(c).sqrt();
            if branch == Branch::Opposite {
                s = s.neg();
            }
            acc = acc.add(&r.to_float().scale(&s));
        }
        acc
    }
}

/// √f(x0) on each generalized eigenspace through the binomial series, which
/// terminates because f(x0) − f(a) is nilpotent there. Principal branch:
/// the positive root of each f(a_i) > 0. Negative values would need
/// complex scalars and are rejected.
pub fn sqrt_of_polynomial(x0: &QMat, f: &Poly) -> Result<SqrtForm> {
    let sd = spectral_decompose(x0)?;
    sqrt_from_spectrum(&sd, f, |_| true)
}

fn sqrt_from_spectrum(sd: &SpectralData, f: &Poly, keep: impl Fn(&Rational) -> bool) -> Result<SqrtForm> {
    sd.check_nonvanishing(f, &keep)?;
    let fx = sd.element.eval_poly(f);
    let n = fx.rows();
    let mut terms = Vec::new();
    for comp in sd.components.iter().filter(|c| keep(&c.eigenvalue)) {
        let c = f.eval(&comp.eigenvalue);
        if c < Rational::zero() {
            return Err(Error::EigenvalueHit(format!(
                "f({}) = {} < 0 has no real square root",
                format_rational(&comp.eigenvalue),
                format_rational(&c)
            )));
        }
        let mut shifted = fx.clone();
        for i in 0..n {
            shifted.add_at(i, i, &c.neg());
        }
        let nil = shifted.scale(&c.inv()).mul(&comp.idempotent);
        let series = sqrt_series(comp.index.max(1) * f.degree().unwrap_or(0).max(1) + 1);
        let mut power = comp.idempotent.clone();
        let mut r = QMat::zeros(n, n);
        for coeff in series {
            if power.is_zero() {
                break;
            }
            r = r.add(&power.scale(&coeff));
            power = nil.mul(&power);
        }
        terms.push((c, r));
    }
    Ok(SqrtForm { terms })
}

/// Inverse of f(x0) on the generalized eigenspaces not in `avoid`.
/// Returns (η, g) with η the retained idempotent and g f(x0) = η = f(x0) g.
pub fn truncated_inverse(x0: &QMat, f: &Poly, avoid: &[Rational]) -> Result<(QMat, QMat)> {
    let sd = spectral_decompose(x0)?;
    for a in avoid {
        if sd.component(a).is_none() {
            return Err(Error::NotAdmissible(format!("{} is not an eigenvalue", format_rational(a))));
        }
    }
    truncated_inverse_from(&sd, f, avoid)
}

pub fn truncated_inverse_from(sd: &SpectralData, f: &Poly, avoid: &[Rational]) -> Result<(QMat, QMat)> {
    let keep = |a: &Rational| !avoid.contains(a);
    sd.check_nonvanishing(f, keep)?;
    let mp = &sd.minimal_polynomial;
    let mut g = Poly::zero();
    let mut eta = Poly::zero();
    for comp in sd.components.iter().filter(|c| keep(&c.eigenvalue)) {
        let local = Poly::linear_root(&comp.eigenvalue).pow(comp.index);
        let h = f.inverse_mod(&local).expect("f nonzero at eigenvalue");
        g = g.add(&h.mul(&comp.idempotent_poly));
        eta = eta.add(&comp.idempotent_poly);
    }
    let g = g.rem(mp);
    Ok((sd.element.eval_poly(&eta.rem(mp)), sd.element.eval_poly(&g)))
}

/// Square root of f(x0) restricted to the eigenspaces not in `avoid`.
pub fn truncated_sqrt(x0: &QMat, f: &Poly, avoid: &[Rational]) -> Result<SqrtForm> {
    let sd = spectral_decompose(x0)?;
    sqrt_from_spectrum(&sd, f, |a| !avoid.contains(a))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::{int, rat};

    fn q(rows: &[&[i64]]) -> QMat {
        QMat::from_rows(rows.iter().map(|r| r.iter().map(|&x| int(x)).collect()).collect())
    }

    #[test]
    fn series_head() {
        assert_eq!(sqrt_series(5), vec![int(1), rat(1, 2), rat(-1, 8), rat(1, 16), rat(-5, 128)]);
    }

    #[test]
    fn spectral_examples() {
        let sd = spectral_decompose(&QMat::identity(3)).unwrap();
        assert_eq!(sd.components.len(), 1);
        assert_eq!(sd.components[0].idempotent, QMat::identity(3));
        let j = q(&[&[0, 1], &[0, 0]]);
        let sd = spectral_decompose(&j).unwrap();
        assert_eq!((sd.components[0].eigenvalue.clone(), sd.components[0].index), (int(0), 2));
        let d = q(&[&[2, 0, 0], &[0, 2, 0], &[0, 0, 5]]);
        let sd = spectral_decompose(&d).unwrap();
        let ranks: Vec<_> = sd.components.iter().map(|c| c.idempotent.rank()).collect();
        assert_eq!(ranks, vec![2, 1]);
        assert!(matches!(spectral_decompose(&q(&[&[0, 2], &[1, 0]])), Err(Error::IrrationalSpectrum)));
    }

    #[test]
    fn inverse_and_sqrt() {
        let t = Poly::x();
        let j3 = q(&[&[3, 1], &[0, 3]]);
        let inv = inverse_of_polynomial(&j3, &t).unwrap();
        assert_eq!(inv.mul(&j3), QMat::identity(2));
        let j0 = q(&[&[0, 1], &[0, 0]]);
        let one_plus = Poly::from_coeffs(vec![int(1), int(1)]);
        let s = sqrt_of_polynomial(&j0, &one_plus).unwrap().exact(Branch::Principal).unwrap();
        assert_eq!(s.mul(&s), QMat::identity(2).add(&j0));
        assert!(matches!(inverse_of_polynomial(&j0, &t), Err(Error::EigenvalueHit(_))));
    }

    #[test]
    fn truncated_shape() {
        let x = q(&[&[0, 0], &[0, 1]]);
        let (eta, g) = truncated_inverse(&x, &Poly::x(), &[int(0)]).unwrap();
        assert_eq!(eta, x);
        assert_eq!(g, x);
    }
}
