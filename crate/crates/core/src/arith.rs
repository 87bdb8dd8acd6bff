//! Exact scalars: rationals and elements a + b√m of a real quadratic field.
//!
//! A scalar with b = 0 is stored with m = 0, so rational constants combine
//! with values of any single field. Two irrational values from different
//! fields never combine.

use std::cmp::Ordering;
use std::fmt;
use std::str::FromStr;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use thiserror::Error;

pub type Rational = BigRational;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ArithError {
    #[error("division by zero")]
    DivisionByZero,
    #[error("mixed quadratic fields sqrt({0}) and sqrt({1})")]
    MixedField(u32, u32),
    #[error("radicand {0} is not square-free")]
    BadRadicand(u64),
    #[error("cannot parse scalar {0:?}")]
    Parse(String),
    #[error("point correspondence is inconsistent")]
    NoSolution,
    #[error("affine span has codimension at least two")]
    Underdetermined,
    #[error("{0} has no square root in the scene field")]
    FieldEscape(String),
}

/// Arithmetic operation selector for [`scalar_arith`].
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Op {
    Add,
    Sub,
    Mul,
    Div,
}

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct QuadScalar {
    a: Rational,
    b: Rational,
    m: u32,
}

pub fn is_square_free(m: u64) -> bool {
    if m < 2 {
        return false;
    }
    let mut k = 2u64;
    while k * k <= m {
        if m % (k * k) == 0 {
            return false;
        }
        k += 1;
    }
    true
}

fn rational_sqrt(r: &Rational) -> Option<Rational> {
    if r.is_negative() {
        return None;
    }
    let n = r.numer().sqrt();
    let d = r.denom().sqrt();
    if &(&n * &n) == r.numer() && &(&d * &d) == r.denom() {
        Some(Rational::new(n, d))
    } else {
        None
    }
}

impl QuadScalar {
    pub fn new(a: Rational, b: Rational, m: u32) -> Result<Self, ArithError> {
        if !b.is_zero() && !is_square_free(m as u64) {
            return Err(ArithError::BadRadicand(m as u64));
        }
        Ok(Self::canonical(a, b, m))
    }

    fn canonical(a: Rational, b: Rational, m: u32) -> Self {
        if b.is_zero() || m == 0 {
            QuadScalar { a, b: Rational::zero(), m: 0 }
        } else {
            QuadScalar { a, b, m }
        }
    }

    pub fn rational(a: Rational) -> Self {
        Self::canonical(a, Rational::zero(), 0)
    }

    pub fn int(n: i64) -> Self {
        Self::rational(Rational::from_integer(BigInt::from(n)))
    }

    pub fn ratio(p: i64, q: i64) -> Self {
        Self::rational(Rational::new(BigInt::from(p), BigInt::from(q)))
    }

    pub fn zero() -> Self {
        Self::int(0)
    }

    pub fn one() -> Self {
        Self::int(1)
    }

    /// √m itself.
    pub fn sqrt_of(m: u32) -> Result<Self, ArithError> {
        Self::new(Rational::zero(), Rational::one(), m)
    }

    pub fn a(&self) -> &Rational {
        &self.a
    }

    pub fn b(&self) -> &Rational {
        &self.b
    }

    /// Radicand; 0 for rational values.
    pub fn field(&self) -> u32 {
        self.m
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

    fn joint_field(&self, other: &Self) -> Result<u32, ArithError> {
        match (self.m, other.m) {
            (0, m) | (m, 0) => Ok(m),
            (x, y) if x == y => Ok(x),
            (x, y) => Err(ArithError::MixedField(x, y)),
        }
    }

    pub fn checked_add(&self, o: &Self) -> Result<Self, ArithError> {
        let m = self.joint_field(o)?;
        Ok(Self::canonical(&self.a + &o.a, &self.b + &o.b, m))
    }

    pub fn checked_sub(&self, o: &Self) -> Result<Self, ArithError> {
        let m = self.joint_field(o)?;
        Ok(Self::canonical(&self.a - &o.a, &self.b - &o.b, m))
    }

    pub fn checked_mul(&self, o: &Self) -> Result<Self, ArithError> {
        let m = self.joint_field(o)?;
        let mm = Rational::from_integer(BigInt::from(m));
        let a = &self.a * &o.a + &self.b * &o.b * mm;
        let b = &self.a * &o.b + &self.b * &o.a;
        Ok(Self::canonical(a, b, m))
    }

    pub fn checked_inv(&self) -> Result<Self, ArithError> {
        if self.is_zero() {
            return Err(ArithError::DivisionByZero);
        }
        let mm = Rational::from_integer(BigInt::from(self.m));
        let norm = &self.a * &self.a - &self.b * &self.b * mm;
        Ok(Self::canonical(&self.a / &norm, -(&self.b / &norm), self.m))
    }

    pub fn checked_div(&self, o: &Self) -> Result<Self, ArithError> {
        self.joint_field(o)?;
        self.checked_mul(&o.checked_inv()?)
    }

    /// Exact sign of a + b√m.
    pub fn sign(&self) -> i8 {
        let sa = sgn(&self.a);
        let sb = sgn(&self.b);
        if sb == 0 {
            return sa;
        }
        if sa == 0 || sa == sb {
            return sb;
        }
        let mm = Rational::from_integer(BigInt::from(self.m));
        let a2 = &self.a * &self.a;
        let b2m = &self.b * &self.b * mm;
        match a2.cmp(&b2m) {
            Ordering::Greater => sa,
            Ordering::Less => sb,
            Ordering::Equal => 0,
        }
    }

    pub fn is_positive(&self) -> bool {
        self.sign() > 0
    }

    pub fn abs(&self) -> Self {
        if self.sign() < 0 {
            -self
        } else {
            self.clone()
        }
    }

    /// Exact non-negative square root inside Q(√m), if it exists.
    pub fn sqrt_in(&self, m: u32) -> Option<Self> {
        if self.sign() < 0 {
            return None;
        }
        if self.is_zero() {
            return Some(Self::zero());
        }
        if self.m != 0 && m != 0 && self.m != m {
            return None;
        }
        let m = if self.m != 0 { self.m } else { m };
        if self.b.is_zero() {
            if let Some(r) = rational_sqrt(&self.a) {
                return Some(Self::rational(r));
            }
            if m == 0 {
                return None;
            }
            let mm = Rational::from_integer(BigInt::from(m));
            return rational_sqrt(&(&self.a / mm)).map(|c| Self::canonical(Rational::zero(), c, m));
        }
        // (x + y√m)² = x² + m y² + 2xy√m
        let mm = Rational::from_integer(BigInt::from(m));
        let disc = &self.a * &self.a - &self.b * &self.b * &mm;
        let s = rational_sqrt(&disc)?;
        let two = Rational::from_integer(BigInt::from(2));
        for x2 in [(&self.a + &s) / &two, (&self.a - &s) / &two] {
            if let Some(x) = rational_sqrt(&x2) {
                if x.is_zero() {
                    continue;
                }
                let y = &self.b / (&two * &x);
                let cand = Self::canonical(x, y, m).abs();
                if &(&cand * &cand) == self {
                    return Some(cand);
                }
            }
        }
        None
    }
}

fn sgn(r: &Rational) -> i8 {
    if r.is_zero() {
        0
    } else if r.is_positive() {
        1
    } else {
        -1
    }
}

/// Field operation with explicit errors.
pub fn scalar_arith(x: &QuadScalar, y: &QuadScalar, op: Op) -> Result<QuadScalar, ArithError> {
    match op {
        Op::Add => x.checked_add(y),
        Op::Sub => x.checked_sub(y),
        Op::Mul => x.checked_mul(y),
        Op::Div => x.checked_div(y),
    }
}

pub fn scalar_sign(x: &QuadScalar) -> i8 {
    x.sign()
}

// Operator sugar for code that already works inside one field. Mixing
// fields here is a programming error and panics.
macro_rules! binop {
    ($tr:ident, $method:ident, $checked:ident) => {
        impl std::ops::$tr<&QuadScalar> for &QuadScalar {
            type Output = QuadScalar;
            fn $method(self, o: &QuadScalar) -> QuadScalar {
                self.$checked(o).expect("scalar operation")
            }
        }
        impl std::ops::$tr<QuadScalar> for QuadScalar {
            type Output = QuadScalar;
            fn $method(self, o: QuadScalar) -> QuadScalar {
                (&self).$checked(&o).expect("scalar operation")
            }
        }
    };
}
binop!(Add, add, checked_add);
binop!(Sub, sub, checked_sub);
binop!(Mul, mul, checked_mul);
binop!(Div, div, checked_div);

impl std::ops::Neg for &QuadScalar {
    type Output = QuadScalar;
    fn neg(self) -> QuadScalar {
        QuadScalar::canonical(-&self.a, -&self.b, self.m)
    }
}

impl std::ops::Neg for QuadScalar {
    type Output = QuadScalar;
    fn neg(self) -> QuadScalar {
        -&self
    }
}

impl PartialOrd for QuadScalar {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

/// Numeric order within a field. Values from two different irrational
/// fields fall back to ordering by radicand, which is only a tie-break.
impl Ord for QuadScalar {
    fn cmp(&self, other: &Self) -> Ordering {
        match self.checked_sub(other) {
            Ok(d) => d.sign().cmp(&0),
            Err(_) => (self.m, &self.a, &self.b).cmp(&(other.m, &other.a, &other.b)),
        }
    }
}

fn fmt_rational(r: &Rational) -> String {
    if r.denom().is_one() {
        r.numer().to_string()
    } else {
        format!("{}/{}", r.numer(), r.denom())
    }
}

impl fmt::Display for QuadScalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.b.is_zero() {
            return write!(f, "{}", fmt_rational(&self.a));
        }
        let coef = |b: &Rational| -> String {
            if b.is_one() {
                format!("sqrt({})", self.m)
            } else {
                format!("{}*sqrt({})", fmt_rational(b), self.m)
            }
        };
        if self.a.is_zero() {
            if self.b.is_negative() {
                write!(f, "-{}", coef(&-&self.b))
            } else {
                write!(f, "{}", coef(&self.b))
            }
        } else if self.b.is_negative() {
            write!(f, "{}-{}", fmt_rational(&self.a), coef(&-&self.b))
        } else {
            write!(f, "{}+{}", fmt_rational(&self.a), coef(&self.b))
        }
    }
}

fn parse_rational(s: &str) -> Option<Rational> {
    let s = s.strip_prefix('+').unwrap_or(s);
    if s.is_empty() {
        return None;
    }
    let ok = |t: &str| {
        let t = t.strip_prefix('-').unwrap_or(t);
        !t.is_empty() && t.bytes().all(|c| c.is_ascii_digit())
    };
    match s.split_once('/') {
        None if ok(s) => BigInt::from_str(s).ok().map(Rational::from_integer),
        Some((p, q)) if ok(p) && !q.is_empty() && q.bytes().all(|c| c.is_ascii_digit()) => {
            let p = BigInt::from_str(p).ok()?;
            let q = BigInt::from_str(q).ok()?;
            if q.is_zero() {
                None
            } else {
                Some(Rational::new(p, q))
            }
        }
        _ => None,
    }
}

impl FromStr for QuadScalar {
    type Err = ArithError;

    /// Accepts `p/q`, `p/q+r/s*sqrt(m)`, `sqrt(m)`, `-r/s*sqrt(m)` and
    /// similar; whitespace is ignored.
    fn from_str(src: &str) -> Result<Self, ArithError> {
        let err = || ArithError::Parse(src.to_string());
        let s: String = src.chars().filter(|c| !c.is_whitespace()).collect();
        let Some(idx) = s.find("sqrt(") else {
            return parse_rational(&s).map(Self::rational).ok_or_else(err);
        };
        let rest = &s[idx + 5..];
        let close = rest.find(')').ok_or_else(err)?;
        if close + 1 != rest.len() {
            return Err(err());
        }
        let m: u64 = rest[..close].parse().map_err(|_| err())?;
        if !is_square_free(m) || m > u32::MAX as u64 {
            return Err(ArithError::BadRadicand(m));
        }
        let prefix = &s[..idx];
        let (a_txt, c_txt): (&str, String) = if let Some(body) = prefix.strip_suffix('*') {
            let bytes = body.as_bytes();
            let split = (1..bytes.len())
                .rev()
                .find(|&k| (bytes[k] == b'+' || bytes[k] == b'-') && bytes[k - 1].is_ascii_digit());
            match split {
                Some(k) => (&body[..k], body[k..].to_string()),
                None => ("", body.to_string()),
            }
        } else {
            match prefix.chars().last() {
                None => ("", "1".to_string()),
                Some('+') => (&prefix[..prefix.len() - 1], "1".to_string()),
                Some('-') => (&prefix[..prefix.len() - 1], "-1".to_string()),
                Some(_) => return Err(err()),
            }
        };
        let a = if a_txt.is_empty() { Rational::zero() } else { parse_rational(a_txt).ok_or_else(err)? };
        let c_txt = c_txt.strip_prefix('+').unwrap_or(&c_txt);
        let (neg, c_txt) = match c_txt.strip_prefix('-') {
            Some(t) => (true, t),
            None => (false, c_txt),
        };
        let mut b = parse_rational(c_txt).ok_or_else(err)?;
        if neg {
            b = -b;
        }
        Self::new(a, b, m as u32)
    }
}

impl From<i64> for QuadScalar {
    fn from(n: i64) -> Self {
        QuadScalar::int(n)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn q(s: &str) -> QuadScalar {
        s.parse().unwrap()
    }

    #[test]
    fn spec_examples() {
        assert_eq!(q("1+2*sqrt(3)") + q("3-sqrt(3)"), q("4+sqrt(3)"));
        assert_eq!(q("1+sqrt(3)") * q("-1+sqrt(3)"), q("2"));
        assert_eq!(q("1").checked_div(&q("1+sqrt(3)")).unwrap(), q("-1/2+1/2*sqrt(3)"));
        assert_eq!(q("0").sign(), 0);
        assert_eq!(q("-2+sqrt(3)").sign(), -1);
        assert_eq!(q("-1+sqrt(3)").sign(), 1);
    }

    #[test]
    fn errors() {
        assert_eq!(q("1").checked_div(&q("0")), Err(ArithError::DivisionByZero));
        assert_eq!(q("sqrt(2)").checked_add(&q("sqrt(3)")), Err(ArithError::MixedField(2, 3)));
        assert!("sqrt(4)".parse::<QuadScalar>().is_err());
        assert!("1/0".parse::<QuadScalar>().is_err());
        assert!("abc".parse::<QuadScalar>().is_err());
    }

    #[test]
    fn parse_forms() {
        assert_eq!(q(" 3 / 4 "), QuadScalar::ratio(3, 4));
        assert_eq!(q("-sqrt(3)"), -QuadScalar::sqrt_of(3).unwrap());
        assert_eq!(q("-1/2*sqrt(3)").b(), &Rational::new((-1).into(), 2.into()));
        assert_eq!(q("3-1/2*sqrt(3)").a(), &Rational::from_integer(3.into()));
        assert_eq!(q("1/2 - sqrt(3)").b(), &Rational::from_integer((-1).into()));
        assert_eq!(q("0*sqrt(3)"), QuadScalar::zero());
        for s in ["0", "-7/3", "sqrt(2)", "-sqrt(5)", "1/2+3/4*sqrt(3)", "-2-sqrt(3)", "5/2*sqrt(7)"] {
            assert_eq!(q(s).to_string(), s);
            assert_eq!(q(&q(s).to_string()), q(s));
        }
    }

    #[test]
    fn square_roots() {
        assert_eq!(q("9/4").sqrt_in(0), Some(q("3/2")));
        assert_eq!(q("2").sqrt_in(0), None);
        assert_eq!(q("3").sqrt_in(3), Some(q("sqrt(3)")));
        assert_eq!(q("12").sqrt_in(3), Some(q("2*sqrt(3)")));
        assert_eq!(q("4+2*sqrt(3)").sqrt_in(3), Some(q("1+sqrt(3)")));
        assert_eq!(q("2").sqrt_in(3), None);
        assert_eq!(q("-1").sqrt_in(3), None);
    }

    fn scalar() -> impl Strategy<Value = QuadScalar> {
        (-20i64..20, 1i64..6, -20i64..20, 1i64..6).prop_map(|(p, q, r, s)| {
            QuadScalar::new(
                Rational::new(p.into(), q.into()),
                Rational::new(r.into(), s.into()),
                3,
            )
            .unwrap()
        })
    }

    proptest! {
        #[test]
        fn field_axioms(x in scalar(), y in scalar(), z in scalar()) {
            prop_assert_eq!(&(&x + &y) + &z, &x + &(&y + &z));
            prop_assert_eq!(&(&x * &y) * &z, &x * &(&y * &z));
            prop_assert_eq!(&x * &(&y + &z), &(&x * &y) + &(&x * &z));
            prop_assert_eq!(&x - &x, QuadScalar::zero());
            if !x.is_zero() {
                prop_assert_eq!(&x * &x.checked_inv().unwrap(), QuadScalar::one());
            }
        }

        #[test]
        fn sign_is_multiplicative(x in scalar(), y in scalar()) {
            prop_assert_eq!(x.sign() * y.sign(), (&x * &y).sign());
        }

        #[test]
        fn display_round_trip(x in scalar()) {
            prop_assert_eq!(x.to_string().parse::<QuadScalar>().unwrap(), x);
        }

        #[test]
        fn sqrt_of_square(x in scalar()) {
            let r = (&x * &x).sqrt_in(3).unwrap();
            prop_assert_eq!(r, x.abs());
        }
    }
}
