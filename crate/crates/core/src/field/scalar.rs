use std::cmp::Ordering;
use std::fmt;
use std::hash::{Hash, Hasher};
use std::iter::{Product, Sum};
use std::ops::{Add, AddAssign, Div, Mul, MulAssign, Neg, Sub, SubAssign};
use std::str::FromStr;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};

/// The coefficient field: `Q` or a real quadratic extension `Q(√d)`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Default)]
pub enum FieldDesc {
    #[default]
    Rationals,
    QuadExt(u32),
}

impl FieldDesc {
    /// `Q(√d)` for squarefree `d ≥ 2`.
    pub fn quad(d: u32) -> Result<Self> {
        if d < 2 || !is_squarefree(d) {
            return Err(Error::InvalidField(format!(
                "sqrt({d}) requires a squarefree integer d >= 2"
            )));
        }
        Ok(FieldDesc::QuadExt(d))
    }

    pub fn radicand(self) -> Option<u32> {
        match self {
            FieldDesc::Rationals => None,
            FieldDesc::QuadExt(d) => Some(d),
        }
    }

    /// The smallest field containing both, if there is one.
    pub fn join(self, other: FieldDesc) -> Result<FieldDesc> {
        match (self, other) {
            (FieldDesc::Rationals, f) | (f, FieldDesc::Rationals) => Ok(f),
            (FieldDesc::QuadExt(a), FieldDesc::QuadExt(b)) if a == b => Ok(self),
            _ => Err(Error::FieldMismatch(self.to_string(), other.to_string())),
        }
    }

    /// Whether values of `other` can live in `self`.
    pub fn contains(self, other: FieldDesc) -> bool {
        other == FieldDesc::Rationals || self == other
    }
}

impl fmt::Display for FieldDesc {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            FieldDesc::Rationals => write!(f, "q"),
            FieldDesc::QuadExt(d) => write!(f, "qsqrt:{d}"),
        }
    }
}

impl FromStr for FieldDesc {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let s = s.trim();
        if s.eq_ignore_ascii_case("q") {
            return Ok(FieldDesc::Rationals);
        }
        match s.strip_prefix("qsqrt:") {
            Some(d) => {
                let d: u32 = d
                    .parse()
                    .map_err(|_| Error::InvalidField(format!("bad radicand in '{s}'")))?;
                FieldDesc::quad(d)
            }
            None => Err(Error::InvalidField(format!(
                "unknown field '{s}' (expected 'q' or 'qsqrt:D')"
            ))),
        }
    }
}

fn is_squarefree(d: u32) -> bool {
    let mut p = 2u32;
    while p * p <= d {
        if d.is_multiple_of(p * p) {
            return false;
        }
        p += 1;
    }
    true
}

/// An exact number `a + b√d`.
///
/// `b` is always zero for scalars over `Q`. Equality, hashing and ordering
/// look only at the value, so `1 ∈ Q` equals `1 ∈ Q(√3)`.
#[derive(Clone)]
pub struct Scalar {
    a: BigRational,
    b: BigRational,
    field: FieldDesc,
}

impl Scalar {
    pub fn zero() -> Self {
        Scalar::from_rational(BigRational::zero())
    }

    pub fn one() -> Self {
        Scalar::from_rational(BigRational::one())
    }

    pub fn from_int(n: i64) -> Self {
        Scalar::from_rational(BigRational::from_integer(BigInt::from(n)))
    }

    /// `num / den`; panics when `den == 0`.
    pub fn ratio(num: i64, den: i64) -> Self {
        Scalar::from_rational(BigRational::new(BigInt::from(num), BigInt::from(den)))
    }

    pub fn from_rational(a: BigRational) -> Self {
        Scalar {
            a,
            b: BigRational::zero(),
            field: FieldDesc::Rationals,
        }
    }

    /// `a + b√d` in `field`. Fails when `b ≠ 0` over `Q`.
    pub fn new(a: BigRational, b: BigRational, field: FieldDesc) -> Result<Self> {
        if field == FieldDesc::Rationals && !b.is_zero() {
            return Err(Error::InvalidField(
                "irrational part requires a quadratic field".into(),
            ));
        }
        Ok(Scalar { a, b, field })
    }

    /// `√d` as an element of `Q(√d)`.
    pub fn sqrt_of(field: FieldDesc) -> Option<Self> {
        field.radicand()?;
        Some(Scalar {
            a: BigRational::zero(),
            b: BigRational::one(),
            field,
        })
    }

    pub fn rational_part(&self) -> &BigRational {
        &self.a
    }

    pub fn irrational_part(&self) -> &BigRational {
        &self.b
    }

    pub fn field(&self) -> FieldDesc {
        self.field
    }

    /// Same value, declared in a larger field.
    pub fn lift(mut self, field: FieldDesc) -> Result<Self> {
        self.field = self.field.join(field)?;
        Ok(self)
    }

    pub fn is_zero(&self) -> bool {
        self.a.is_zero() && self.b.is_zero()
    }

    pub fn is_one(&self) -> bool {
        self.a.is_one() && self.b.is_zero()
    }

    pub fn is_rational(&self) -> bool {
        self.b.is_zero()
    }

    fn d(&self) -> BigRational {
        BigRational::from_integer(BigInt::from(self.field.radicand().unwrap_or(0)))
    }

    /// Exact sign under the embedding with `√d > 0`.
    pub fn signum(&self) -> Ordering {
        let sa = self.a.cmp(&BigRational::zero());
        let sb = self.b.cmp(&BigRational::zero());
        if sb == Ordering::Equal || sa == sb {
            return if sa == Ordering::Equal { sb } else { sa };
        }
        if sa == Ordering::Equal {
            return sb;
        }
        // opposite signs: the larger of a² and b²d wins
        let a2 = &self.a * &self.a;
        let b2d = &self.b * &self.b * self.d();
        match a2.cmp(&b2d) {
            Ordering::Greater => sa,
            Ordering::Less => sb,
            Ordering::Equal => unreachable!("a² = b²d with d squarefree"),
        }
    }

    pub fn is_positive(&self) -> bool {
        self.signum() == Ordering::Greater
    }

    pub fn is_negative(&self) -> bool {
        self.signum() == Ordering::Less
    }

    pub fn abs(&self) -> Scalar {
        if self.is_negative() {
            -self
        } else {
            self.clone()
        }
    }

    /// Galois conjugate `a - b√d`.
    pub fn conj(&self) -> Scalar {
        Scalar {
            a: self.a.clone(),
            b: -&self.b,
            field: self.field,
        }
    }

    /// Field norm `a² - d b²`.
    pub fn norm(&self) -> BigRational {
        &self.a * &self.a - &self.b * &self.b * self.d()
    }

    pub fn recip(&self) -> Option<Scalar> {
        if self.is_zero() {
            return None;
        }
        let n = self.norm();
        Some(Scalar {
            a: &self.a / &n,
            b: -&self.b / &n,
            field: self.field,
        })
    }

    pub fn pow(&self, exp: u32) -> Scalar {
        let mut acc = Scalar::one().with_field(self.field);
        for _ in 0..exp {
            acc = &acc * self;
        }
        acc
    }

    fn with_field(mut self, field: FieldDesc) -> Self {
        self.field = field;
        self
    }

    fn joined(&self, other: &Scalar) -> FieldDesc {
        match self.field.join(other.field) {
            Ok(f) => f,
            Err(e) => panic!("{e}"),
        }
    }
}

fn fmt_rational(r: &BigRational) -> String {
    if r.denom().is_one() {
        r.numer().to_string()
    } else {
        format!("{}/{}", r.numer(), r.denom())
    }
}

impl fmt::Display for Scalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let d = self.field.radicand().unwrap_or(0);
        match (self.a.is_zero(), self.b.is_zero()) {
            (_, true) => write!(f, "{}", fmt_rational(&self.a)),
            (true, false) => write!(f, "{}r{d}", fmt_rational(&self.b)),
            (false, false) => {
                let sign = if self.b.is_negative() { '-' } else { '+' };
                write!(
                    f,
                    "{}{sign}{}r{d}",
                    fmt_rational(&self.a),
                    fmt_rational(&self.b.abs())
                )
            }
        }
    }
}

impl fmt::Debug for Scalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

impl PartialEq for Scalar {
    fn eq(&self, other: &Self) -> bool {
        self.a == other.a && self.b == other.b
    }
}

impl Eq for Scalar {}

impl Hash for Scalar {
    fn hash<H: Hasher>(&self, state: &mut H) {
        self.a.hash(state);
        self.b.hash(state);
    }
}

impl PartialOrd for Scalar {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for Scalar {
    fn cmp(&self, other: &Self) -> Ordering {
        (self - other).signum()
    }
}

impl Default for Scalar {
    fn default() -> Self {
        Scalar::zero()
    }
}

impl From<i64> for Scalar {
    fn from(n: i64) -> Self {
        Scalar::from_int(n)
    }
}

impl From<BigRational> for Scalar {
    fn from(r: BigRational) -> Self {
        Scalar::from_rational(r)
    }
}

impl<'a> Add<&'a Scalar> for &'a Scalar {
    type Output = Scalar;
    fn add(self, rhs: &'a Scalar) -> Scalar {
        Scalar {
            field: self.joined(rhs),
            a: &self.a + &rhs.a,
            b: &self.b + &rhs.b,
        }
    }
}

impl<'a> Sub<&'a Scalar> for &'a Scalar {
    type Output = Scalar;
    fn sub(self, rhs: &'a Scalar) -> Scalar {
        Scalar {
            field: self.joined(rhs),
            a: &self.a - &rhs.a,
            b: &self.b - &rhs.b,
        }
    }
}

impl<'a> Mul<&'a Scalar> for &'a Scalar {
    type Output = Scalar;
    fn mul(self, rhs: &'a Scalar) -> Scalar {
        let field = self.joined(rhs);
        if self.b.is_zero() && rhs.b.is_zero() {
            return Scalar {
                a: &self.a * &rhs.a,
                b: BigRational::zero(),
                field,
            };
        }
        let d = BigRational::from_integer(BigInt::from(field.radicand().unwrap_or(0)));
        Scalar {
            a: &self.a * &rhs.a + &self.b * &rhs.b * d,
            b: &self.a * &rhs.b + &self.b * &rhs.a,
            field,
        }
    }
}

impl<'a> Div<&'a Scalar> for &'a Scalar {
    type Output = Scalar;
    #[allow(clippy::suspicious_arithmetic_impl)]
    fn div(self, rhs: &'a Scalar) -> Scalar {
        let inv = rhs.recip().expect("division by zero scalar");
        self * &inv
    }
}

impl Neg for &Scalar {
    type Output = Scalar;
    fn neg(self) -> Scalar {
        Scalar {
            a: -&self.a,
            b: -&self.b,
            field: self.field,
        }
    }
}

impl Neg for Scalar {
    type Output = Scalar;
    fn neg(self) -> Scalar {
        -&self
    }
}

macro_rules! forward_owned {
    ($tr:ident, $m:ident) => {
        impl $tr<Scalar> for Scalar {
            type Output = Scalar;
            fn $m(self, rhs: Scalar) -> Scalar {
                (&self).$m(&rhs)
            }
        }
        impl<'a> $tr<&'a Scalar> for Scalar {
            type Output = Scalar;
            fn $m(self, rhs: &'a Scalar) -> Scalar {
                (&self).$m(rhs)
            }
        }
        impl<'a> $tr<Scalar> for &'a Scalar {
            type Output = Scalar;
            fn $m(self, rhs: Scalar) -> Scalar {
                self.$m(&rhs)
            }
        }
    };
}

forward_owned!(Add, add);
forward_owned!(Sub, sub);
forward_owned!(Mul, mul);
forward_owned!(Div, div);

impl AddAssign<&Scalar> for Scalar {
    fn add_assign(&mut self, rhs: &Scalar) {
        self.field = self.joined(rhs);
        self.a += &rhs.a;
        self.b += &rhs.b;
    }
}

impl AddAssign for Scalar {
    fn add_assign(&mut self, rhs: Scalar) {
        *self += &rhs;
    }
}

impl SubAssign<&Scalar> for Scalar {
    fn sub_assign(&mut self, rhs: &Scalar) {
        self.field = self.joined(rhs);
        self.a -= &rhs.a;
        self.b -= &rhs.b;
    }
}

impl SubAssign for Scalar {
    fn sub_assign(&mut self, rhs: Scalar) {
        *self -= &rhs;
    }
}

impl MulAssign<&Scalar> for Scalar {
    fn mul_assign(&mut self, rhs: &Scalar) {
        *self = &*self * rhs;
    }
}

impl Sum for Scalar {
    fn sum<I: Iterator<Item = Scalar>>(iter: I) -> Scalar {
        iter.fold(Scalar::zero(), |mut acc, x| {
            acc += &x;
            acc
        })
    }
}

impl<'a> Sum<&'a Scalar> for Scalar {
    fn sum<I: Iterator<Item = &'a Scalar>>(iter: I) -> Scalar {
        iter.fold(Scalar::zero(), |mut acc, x| {
            acc += x;
            acc
        })
    }
}

impl Product for Scalar {
    fn product<I: Iterator<Item = Scalar>>(iter: I) -> Scalar {
        iter.fold(Scalar::one(), |acc, x| &acc * &x)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q3() -> FieldDesc {
        FieldDesc::quad(3).unwrap()
    }

    fn s3(a: (i64, i64), b: (i64, i64)) -> Scalar {
        Scalar::new(
            BigRational::new(a.0.into(), a.1.into()),
            BigRational::new(b.0.into(), b.1.into()),
            q3(),
        )
        .unwrap()
    }

    #[test]
    fn field_parsing() {
        assert_eq!("q".parse::<FieldDesc>().unwrap(), FieldDesc::Rationals);
        assert_eq!(
            "qsqrt:3".parse::<FieldDesc>().unwrap(),
            FieldDesc::QuadExt(3)
        );
        assert!("qsqrt:4".parse::<FieldDesc>().is_err());
        assert!("qsqrt:1".parse::<FieldDesc>().is_err());
        assert!("r".parse::<FieldDesc>().is_err());
        assert_eq!(FieldDesc::QuadExt(5).to_string(), "qsqrt:5");
    }

    #[test]
    fn sqrt_squares_to_radicand() {
        let r = Scalar::sqrt_of(q3()).unwrap();
        assert_eq!(&r * &r, Scalar::from_int(3));
    }

    #[test]
    fn reciprocal_in_quadratic_field() {
        let x = s3((1, 2), (3, 4));
        assert_eq!(&x * &x.recip().unwrap(), Scalar::one());
        assert!(Scalar::zero().recip().is_none());
    }

    #[test]
    fn exact_sign() {
        // 2 - √3 > 0, 1 - √3 < 0, -7/4 + √3 < 0 since 49/16 > 3
        assert!(s3((2, 1), (-1, 1)).is_positive());
        assert!(s3((1, 1), (-1, 1)).is_negative());
        assert!(s3((-7, 4), (1, 1)).is_negative());
        assert!(s3((-17, 10), (1, 1)).is_positive());
        assert_eq!(Scalar::zero().signum(), Ordering::Equal);
        assert!(Scalar::from_int(-2) < s3((0, 1), (-1, 1)));
    }

    #[test]
    fn display_forms() {
        assert_eq!(Scalar::ratio(3, 2).to_string(), "3/2");
        assert_eq!(Scalar::from_int(-4).to_string(), "-4");
        assert_eq!(s3((0, 1), (1, 2)).to_string(), "1/2r3");
        assert_eq!(s3((1, 1), (-1, 2)).to_string(), "1-1/2r3");
    }

    #[test]
    fn value_equality_ignores_declared_field() {
        assert_eq!(s3((1, 1), (0, 1)), Scalar::one());
    }

    #[test]
    #[should_panic]
    fn mixing_quadratic_fields_panics() {
        let a = Scalar::sqrt_of(FieldDesc::QuadExt(2)).unwrap();
        let b = Scalar::sqrt_of(FieldDesc::QuadExt(3)).unwrap();
        let _ = a + b;
    }
}
