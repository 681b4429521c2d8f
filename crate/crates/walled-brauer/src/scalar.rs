//! Scalars: exact rationals, polynomials in the formal parameter δ, and
//! big floats at a thread-local precision.

use std::cell::Cell;
use std::cmp::Ordering;
use std::fmt;
use std::str::FromStr;

use dashu::base::{Abs, Sign, SquareRoot, UnsignedAbs};
use dashu::float::round::mode::HalfEven;
use dashu::float::FBig;
use dashu::integer::{IBig, UBig};
use dashu::rational::RBig;

use crate::error::{Error, Result};
use crate::poly::Poly;

pub type Rational = RBig;
pub type DeltaPoly = Poly;

/// Ring operations shared by every coefficient type.
pub trait Ring: Clone + PartialEq + fmt::Debug + Send + Sync + 'static {
    fn zero() -> Self;
    fn one() -> Self;
    fn is_zero(&self) -> bool;
    fn add(&self, other: &Self) -> Self;
    fn sub(&self, other: &Self) -> Self;
    fn mul(&self, other: &Self) -> Self;
    fn neg(&self) -> Self;
    fn from_rational(r: &Rational) -> Self;

    fn from_int(i: i64) -> Self {
        Self::from_rational(&Rational::from(i))
    }
    fn is_one(&self) -> bool {
        *self == Self::one()
    }
}

pub trait Field: Ring {
    fn inv(&self) -> Self;
    fn div(&self, other: &Self) -> Self {
        self.mul(&other.inv())
    }
}

pub fn rat(n: i64, d: i64) -> Rational {
    assert!(d != 0, "zero denominator");
    let r = RBig::from_parts(IBig::from(n), UBig::from(d.unsigned_abs()));
    if d < 0 {
        -r
    } else {
        r
    }
}

pub fn int(n: i64) -> Rational {
    Rational::from(n)
}

impl Ring for Rational {
    fn zero() -> Self {
        RBig::ZERO
    }
    fn one() -> Self {
        RBig::ONE
    }
    fn is_zero(&self) -> bool {
        *self == RBig::ZERO
    }
    fn add(&self, other: &Self) -> Self {
        self + other
    }
    fn sub(&self, other: &Self) -> Self {
        self - other
    }
    fn mul(&self, other: &Self) -> Self {
        self * other
    }
    fn neg(&self) -> Self {
        -self.clone()
    }
    fn from_rational(r: &Rational) -> Self {
        r.clone()
    }
}

impl Field for Rational {
    fn inv(&self) -> Self {
        assert!(!Ring::is_zero(self), "inverse of zero");
        RBig::ONE / self
    }
}

pub fn parse_rational(s: &str) -> Result<Rational> {
    let s = s.trim();
    let bad = || Error::Parse(format!("not a rational: {s:?}"));
    match s.split_once('/') {
        Some((p, q)) => {
            let p = IBig::from_str(p.trim()).map_err(|_| bad())?;
            let q = IBig::from_str(q.trim()).map_err(|_| bad())?;
            if q == IBig::ZERO {
                return Err(bad());
            }
            let neg = q.sign() == Sign::Negative;
            let r = RBig::from_parts(p, q.unsigned_abs());
            Ok(if neg { -r } else { r })
        }
        None => Ok(RBig::from(IBig::from_str(s).map_err(|_| bad())?)),
    }
}

/// "p/q", or "p" for integers.
pub fn format_rational(r: &Rational) -> String {
    r.to_string()
}

pub fn rational_to_f64(r: &Rational) -> f64 {
    r.to_f64().value()
}

pub fn is_integer(r: &Rational) -> bool {
    *r.denominator() == UBig::ONE
}

/// Exact square root when `r` is the square of a rational.
pub fn rational_sqrt(r: &Rational) -> Option<Rational> {
    if r.sign() == Sign::Negative {
        return None;
    }
    let n = r.numerator().unsigned_abs();
    let d = r.denominator().clone();
    let sn = n.sqrt();
    let sd = d.sqrt();
    if &sn * &sn == n && &sd * &sd == d {
        Some(RBig::from_parts(IBig::from(sn), sd))
    } else {
        None
    }
}

thread_local! {
    static PRECISION: Cell<usize> = const { Cell::new(256) };
}

pub const DEFAULT_PRECISION: usize = 256;

pub fn precision() -> usize {
    PRECISION.with(|p| p.get())
}

/// Runs `f` with the BigFloat precision of this thread set to `bits`.
pub fn with_precision<R>(bits: usize, f: impl FnOnce() -> R) -> R {
    let old = PRECISION.with(|p| p.replace(bits));
    struct Restore(usize);
    impl Drop for Restore {
        fn drop(&mut self) {
            PRECISION.with(|p| p.set(self.0));
        }
    }
    let _guard = Restore(old);
    f()
}

type Float = FBig<HalfEven, 2>;

/// Binary floating point number; every value carries the thread precision
/// at the time it was created.
#[derive(Clone, Debug)]
pub struct BigFloat(Float);

impl BigFloat {
    fn wrap(f: Float) -> Self {
        let p = precision();
        if f.precision() == p {
            BigFloat(f)
        } else {
            BigFloat(f.with_precision(p).value())
        }
    }

    pub fn from_rational(r: &Rational) -> Self {
        BigFloat(r.to_float::<HalfEven, 2>(precision()).value())
    }

    pub fn from_f64(x: f64) -> Self {
        Self::wrap(Float::try_from(x).expect("finite float"))
    }

    pub fn sqrt(&self) -> Self {
        assert!(self.0.sign() != Sign::Negative || self.0 == Float::ZERO, "sqrt of negative");
        Self::wrap(self.0.sqrt())
    }

    pub fn abs(&self) -> Self {
        BigFloat(self.0.clone().abs())
    }

    pub fn to_f64(&self) -> f64 {
        self.0.to_f64().value()
    }

    pub fn precision(&self) -> usize {
        self.0.precision()
    }

    pub fn is_negative(&self) -> bool {
        self.0.sign() == Sign::Negative && self.0 != Float::ZERO
    }
}

impl PartialEq for BigFloat {
    fn eq(&self, other: &Self) -> bool {
        self.0 == other.0
    }
}

impl PartialOrd for BigFloat {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        self.0.partial_cmp(&other.0)
    }
}

impl fmt::Display for BigFloat {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{:e}", self.to_f64())
    }
}

impl Ring for BigFloat {
    fn zero() -> Self {
        Self::wrap(Float::ZERO)
    }
    fn one() -> Self {
        Self::wrap(Float::ONE)
    }
    fn is_zero(&self) -> bool {
        self.0 == Float::ZERO
    }
    fn add(&self, other: &Self) -> Self {
        BigFloat(&self.0 + &other.0)
    }
    fn sub(&self, other: &Self) -> Self {
        BigFloat(&self.0 - &other.0)
    }
    fn mul(&self, other: &Self) -> Self {
        BigFloat(&self.0 * &other.0)
    }
    fn neg(&self) -> Self {
        BigFloat(-self.0.clone())
    }
    fn from_rational(r: &Rational) -> Self {
        BigFloat::from_rational(r)
    }
}

impl Field for BigFloat {
    fn inv(&self) -> Self {
        assert!(!Ring::is_zero(self), "inverse of zero");
        BigFloat(Float::ONE.with_precision(precision()).value() / &self.0)
    }
}

/// One tagged value type for reports and mixed computations.
#[derive(Clone, Debug, PartialEq)]
pub enum Scalar {
    Rational(Rational),
    DeltaPoly(DeltaPoly),
    BigFloat(BigFloat),
}

impl Scalar {
    pub fn tag(&self) -> &'static str {
        match self {
            Scalar::Rational(_) => "Rational",
            Scalar::DeltaPoly(_) => "DeltaPoly",
            Scalar::BigFloat(_) => "BigFloat",
        }
    }

    fn lift(a: &Scalar, b: &Scalar) -> Result<(Scalar, Scalar)> {
        use Scalar::*;
        Ok(match (a, b) {
            (Rational(_), Rational(_)) | (DeltaPoly(_), DeltaPoly(_)) | (BigFloat(_), BigFloat(_)) => {
                (a.clone(), b.clone())
            }
            (Rational(x), DeltaPoly(_)) => (DeltaPoly(Poly::constant(x.clone())), b.clone()),
            (DeltaPoly(_), Rational(y)) => (a.clone(), DeltaPoly(Poly::constant(y.clone()))),
            (Rational(x), BigFloat(_)) => (BigFloat(self::BigFloat::from_rational(x)), b.clone()),
            (BigFloat(_), Rational(y)) => (a.clone(), BigFloat(self::BigFloat::from_rational(y))),
            _ => {
                return Err(Error::ScalarMismatch { left: a.tag(), right: b.tag() });
            }
        })
    }

    fn binary(
        &self,
        other: &Scalar,
        fr: fn(&Rational, &Rational) -> Rational,
        fp: fn(&DeltaPoly, &DeltaPoly) -> DeltaPoly,
        ff: fn(&BigFloat, &BigFloat) -> BigFloat,
    ) -> Result<Scalar> {
        Ok(match Scalar::lift(self, other)? {
            (Scalar::Rational(x), Scalar::Rational(y)) => Scalar::Rational(fr(&x, &y)),
            (Scalar::DeltaPoly(x), Scalar::DeltaPoly(y)) => Scalar::DeltaPoly(fp(&x, &y)),
            (Scalar::BigFloat(x), Scalar::BigFloat(y)) => Scalar::BigFloat(ff(&x, &y)),
            _ => unreachable!(),
        })
    }

    pub fn try_add(&self, other: &Scalar) -> Result<Scalar> {
        self.binary(other, Ring::add, Ring::add, Ring::add)
    }
    pub fn try_sub(&self, other: &Scalar) -> Result<Scalar> {
        self.binary(other, Ring::sub, Ring::sub, Ring::sub)
    }
    pub fn try_mul(&self, other: &Scalar) -> Result<Scalar> {
        self.binary(other, Ring::mul, Ring::mul, Ring::mul)
    }

    pub fn is_zero(&self) -> bool {
        match self {
            Scalar::Rational(x) => Ring::is_zero(x),
            Scalar::DeltaPoly(x) => x.is_zero(),
            Scalar::BigFloat(x) => Ring::is_zero(x),
        }
    }
}

impl fmt::Display for Scalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Scalar::Rational(x) => write!(f, "{x}"),
            Scalar::DeltaPoly(x) => write!(f, "{x}"),
            Scalar::BigFloat(x) => write!(f, "{x}"),
        }
    }
}

pub fn evaluate_delta(p: &DeltaPoly, value: &Rational) -> Rational {
    p.eval(value)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parse_and_format() {
        assert_eq!(parse_rational("-6/4").unwrap(), rat(-3, 2));
        assert_eq!(parse_rational("7").unwrap(), int(7));
        assert_eq!(format_rational(&rat(3, -9)), "-1/3");
        assert!(parse_rational("1/0").is_err());
    }

    #[test]
    fn exact_square_roots() {
        assert_eq!(rational_sqrt(&rat(9, 4)), Some(rat(3, 2)));
        assert_eq!(rational_sqrt(&rat(2, 1)), None);
        assert_eq!(rational_sqrt(&rat(-1, 1)), None);
    }

    #[test]
    fn evaluate_delta_examples() {
        assert_eq!(evaluate_delta(&Poly::x(), &int(3)), int(3));
        let p = Poly::from_coeffs(vec![int(-1), int(0), int(1)]);
        assert_eq!(evaluate_delta(&p, &int(1)), int(0));
        // omega_1 at m = n = 5, delta = 2
        let (m, n) = (5, 5);
        let omega1 = Poly::from_coeffs(vec![rat((m + n) * (m + n), 2), int(-m)]);
        assert_eq!(evaluate_delta(&omega1, &int(2)), int(40));
    }

    #[test]
    fn tagged_promotion() {
        let a = Scalar::Rational(int(2));
        let b = Scalar::DeltaPoly(Poly::x());
        let c = a.try_mul(&b).unwrap();
        assert_eq!(c, Scalar::DeltaPoly(Poly::from_coeffs(vec![int(0), int(2)])));
        let f = Scalar::BigFloat(BigFloat::from_f64(1.5));
        assert!(b.try_add(&f).is_err());
        assert!(matches!(a.try_add(&f).unwrap(), Scalar::BigFloat(_)));
    }

    #[test]
    fn precision_scope() {
        let x = with_precision(64, || BigFloat::from_rational(&rat(1, 3)));
        assert_eq!(x.precision(), 64);
        assert_eq!(precision(), 256);
        let two = BigFloat::from_rational(&int(2));
        let s = two.sqrt();
        let err = s.mul(&s).sub(&two).abs().to_f64();
        assert!(err < 1e-70);
    }
}
