//! Exact arithmetic in real quadratic fields Q(√d).
//!
//! An element is stored as `a + b√d` with arbitrary-precision rational
//! coefficients and a squarefree radicand `d ≥ 2`. Rationals are the
//! special case `b = 0` and combine with elements of any field.

use alloc::string::String;
use alloc::vec::Vec;
use core::cmp::Ordering;
use core::fmt;
use core::ops::{Add, Div, Mul, Neg, Sub};

use num_bigint::{BigInt, Sign};
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

use super::QuadError;

/// Splits `n` into `(s, f)` with `n = s²·f` and `f` squarefree.
pub(crate) fn squarefree_decompose(n: u64) -> (u64, u64) {
    let mut square_root = 1u64;
    let mut rest = n;
    let mut p = 2u64;
    while p * p <= rest {
        let mut count = 0;
        while rest % (p * p) == 0 {
            rest /= p * p;
            square_root *= p;
            count += 1;
            if count > 64 {
                break;
            }
        }
        p += 1;
    }
    (square_root, rest)
}

/// An element `a + b√d` of the real quadratic field Q(√d).
///
/// `d` is squarefree and at least 2. When `b = 0` the element is rational
/// and `d` is normalized to 2 so that equality is componentwise.
#[derive(Clone, Debug)]
pub struct QuadExt {
    a: BigRational,
    b: BigRational,
    d: u64,
}

impl QuadExt {
    /// Builds `a + b√d`, reducing the radicand to its squarefree part.
    pub fn new(a: BigRational, b: BigRational, d: u64) -> Result<QuadExt, QuadError> {
        if d < 2 {
            return Err(QuadError::BadRadicand(d));
        }
        let (s, f) = squarefree_decompose(d);
        if f < 2 {
            return Err(QuadError::BadRadicand(d));
        }
        let b = b * BigRational::from_integer(BigInt::from(s));
        Ok(Self::make(a, b, f))
    }

    fn make(a: BigRational, b: BigRational, d: u64) -> QuadExt {
        if b.is_zero() {
            QuadExt { a, b, d: 2 }
        } else {
            QuadExt { a, b, d }
        }
    }

    pub fn from_rational(a: BigRational) -> QuadExt {
        QuadExt::make(a, BigRational::zero(), 2)
    }

    pub fn from_int(n: i64) -> QuadExt {
        QuadExt::from_rational(BigRational::from_integer(BigInt::from(n)))
    }

    pub fn from_bigint(n: BigInt) -> QuadExt {
        QuadExt::from_rational(BigRational::from_integer(n))
    }

    /// √d as a field element.
    pub fn sqrt_of(d: u64) -> Result<QuadExt, QuadError> {
        QuadExt::new(BigRational::zero(), BigRational::one(), d)
    }

    pub fn zero() -> QuadExt {
        QuadExt::from_int(0)
    }

    pub fn one() -> QuadExt {
        QuadExt::from_int(1)
    }

    pub fn rational_part(&self) -> &BigRational {
        &self.a
    }

    pub fn radical_part(&self) -> &BigRational {
        &self.b
    }

    /// The squarefree radicand; meaningful only when the element is irrational.
    pub fn radicand(&self) -> u64 {
        self.d
    }

    pub fn is_rational(&self) -> bool {
        self.b.is_zero()
    }

    pub fn is_zero(&self) -> bool {
        self.a.is_zero() && self.b.is_zero()
    }

    pub fn is_one(&self) -> bool {
        self.b.is_zero() && self.a.is_one()
    }

    /// Both operands lie in a common field: either one is rational or the
    /// radicands agree.
    pub fn compatible(&self, other: &QuadExt) -> bool {
        self.is_rational() || other.is_rational() || self.d == other.d
    }

    fn joint_d(&self, other: &QuadExt) -> Result<u64, QuadError> {
        if self.is_rational() {
            Ok(other.d)
        } else if other.is_rational() || self.d == other.d {
            Ok(self.d)
        } else {
            Err(QuadError::FieldMismatch(self.d, other.d))
        }
    }

    pub fn checked_add(&self, other: &QuadExt) -> Result<QuadExt, QuadError> {
        let d = self.joint_d(other)?;
        Ok(QuadExt::make(&self.a + &other.a, &self.b + &other.b, d))
    }

    pub fn checked_sub(&self, other: &QuadExt) -> Result<QuadExt, QuadError> {
        let d = self.joint_d(other)?;
        Ok(QuadExt::make(&self.a - &other.a, &self.b - &other.b, d))
    }

    pub fn checked_mul(&self, other: &QuadExt) -> Result<QuadExt, QuadError> {
        let d = self.joint_d(other)?;
        let dd = BigRational::from_integer(BigInt::from(d));
        let a = &self.a * &other.a + &self.b * &other.b * &dd;
        let b = &self.a * &other.b + &self.b * &other.a;
        Ok(QuadExt::make(a, b, d))
    }

    pub fn checked_div(&self, other: &QuadExt) -> Result<QuadExt, QuadError> {
        if other.is_zero() {
            return Err(QuadError::DivisionByZero);
        }
        let inv = other.inverse()?;
        self.checked_mul(&inv)
    }

    pub fn inverse(&self) -> Result<QuadExt, QuadError> {
        if self.is_zero() {
            return Err(QuadError::DivisionByZero);
        }
        // (a + b√d)⁻¹ = (a − b√d) / (a² − b²d)
        let dd = BigRational::from_integer(BigInt::from(self.d));
        let n = &self.a * &self.a - &self.b * &self.b * &dd;
        debug_assert!(!n.is_zero(), "norm of a nonzero element is nonzero");
        Ok(QuadExt::make(&self.a / &n, -(&self.b / &n), self.d))
    }

    /// Galois conjugate `a − b√d`.
    pub fn conjugate(&self) -> QuadExt {
        QuadExt::make(self.a.clone(), -self.b.clone(), self.d)
    }

    /// Field norm `a² − b²d` (product with the conjugate), a rational.
    pub fn norm(&self) -> BigRational {
        let dd = BigRational::from_integer(BigInt::from(self.d));
        &self.a * &self.a - &self.b * &self.b * &dd
    }

    /// Trace `2a`, a rational.
    pub fn trace(&self) -> BigRational {
        &self.a + &self.a
    }

    /// Exact sign of the real value, decided without floating point.
    pub fn signum(&self) -> Ordering {
        let sa = rational_sign(&self.a);
        let sb = rational_sign(&self.b);
        match (sa, sb) {
            (s, Ordering::Equal) => s,
            (Ordering::Equal, s) => s,
            (Ordering::Greater, Ordering::Greater) => Ordering::Greater,
            (Ordering::Less, Ordering::Less) => Ordering::Less,
            // Opposite signs: compare a² with b²·d.
            (sa, _) => {
                let dd = BigRational::from_integer(BigInt::from(self.d));
                let lhs = &self.a * &self.a;
                let rhs = &self.b * &self.b * &dd;
                match lhs.cmp(&rhs) {
                    Ordering::Equal => Ordering::Equal, // impossible for squarefree d ≥ 2
                    Ordering::Greater => sa,
                    Ordering::Less => sa.reverse(),
                }
            }
        }
    }

    pub fn is_positive(&self) -> bool {
        self.signum() == Ordering::Greater
    }

    pub fn is_negative(&self) -> bool {
        self.signum() == Ordering::Less
    }

    pub fn abs(&self) -> QuadExt {
        if self.is_negative() {
            -self.clone()
        } else {
            self.clone()
        }
    }

    /// Exact value comparison. Errors when the operands live in distinct
    /// quadratic fields (the difference then leaves degree 2).
    pub fn cmp_exact(&self, other: &QuadExt) -> Result<Ordering, QuadError> {
        Ok(self.checked_sub(other)?.signum())
    }

    /// Exact floor of the real value.
    pub fn floor(&self) -> BigInt {
        if self.b.is_zero() {
            return self.a.floor().to_integer();
        }
        // Write the value as (u + t·√n) / w with integers u, n ≥ 0, w > 0, t = ±1.
        let (anum, aden) = (self.a.numer().clone(), self.a.denom().clone());
        let (bnum, bden) = (self.b.numer().clone(), self.b.denom().clone());
        let w = &aden * &bden;
        let u = &anum * &bden;
        let bscaled = &bnum * &aden; // value = (u + bscaled·√d) / w
        let n = &bscaled * &bscaled * BigInt::from(self.d);
        let sqrt_positive = bscaled.sign() == Sign::Plus;
        let s = n.sqrt();
        // Initial guess from u + ⌊√n⌋, then fix up with exact comparisons.
        let approx_num = if sqrt_positive { &u + &s } else { &u - &s - 1 };
        let mut cand = approx_num.div_floor(&w);
        // cand ≤ value  ⟺  cand·w − u ≤ t√n  (t√n irrational, never equal)
        let below = |k: &BigInt| -> bool {
            let lhs = k * &w - &u;
            if sqrt_positive {
                lhs.is_negative() || &lhs * &lhs < n
            } else {
                lhs.is_negative() && &lhs * &lhs > n
            }
        };
        while !below(&cand) {
            cand -= 1;
        }
        while below(&(&cand + 1)) {
            cand += 1;
        }
        cand
    }

    pub fn ceil(&self) -> BigInt {
        if self.is_integer() {
            self.a.to_integer()
        } else {
            self.floor() + 1
        }
    }

    pub fn is_integer(&self) -> bool {
        self.b.is_zero() && self.a.is_integer()
    }

    /// The element is an algebraic integer of its field: integral trace and norm
    /// (for irrationals), or an integer (for rationals).
    pub fn is_algebraic_integer(&self) -> bool {
        if self.b.is_zero() {
            self.a.is_integer()
        } else {
            self.trace().is_integer() && self.norm().is_integer()
        }
    }

    /// Pisot test: a real algebraic integer greater than 1 whose conjugate has
    /// absolute value less than 1. Integer rationals > 1 qualify degenerately.
    pub fn is_pisot(&self) -> bool {
        if !self.is_algebraic_integer() {
            return false;
        }
        if self.cmp_exact(&QuadExt::one()).map(|o| o != Ordering::Greater).unwrap_or(true) {
            return false;
        }
        if self.b.is_zero() {
            return true;
        }
        self.conjugate().abs().cmp_exact(&QuadExt::one()) == Ok(Ordering::Less)
    }

    pub fn pow(&self, k: u32) -> QuadExt {
        let mut acc = QuadExt::one();
        let mut base = self.clone();
        let mut k = k;
        while k > 0 {
            if k & 1 == 1 {
                acc = acc.checked_mul(&base).expect("same field");
            }
            base = base.checked_mul(&base).expect("same field");
            k >>= 1;
        }
        acc
    }

    /// Integer power, negative exponents via the inverse.
    pub fn powi(&self, k: i64) -> Result<QuadExt, QuadError> {
        if k >= 0 {
            Ok(self.pow(k as u32))
        } else {
            self.inverse().map(|i| i.pow((-k) as u32))
        }
    }

    /// Approximate double value, for reports only.
    pub fn to_f64(&self) -> f64 {
        let sqrt_d = rational_sqrt_approx(self.d);
        rational_to_f64(&self.a) + rational_to_f64(&self.b) * sqrt_d
    }

    /// Key usable for ordered containers; identical keys iff equal elements.
    pub(crate) fn orbit_key(&self) -> (BigRational, BigRational, u64) {
        (self.a.clone(), self.b.clone(), self.d)
    }
}

fn rational_sign(r: &BigRational) -> Ordering {
    if r.is_zero() {
        Ordering::Equal
    } else if r.is_positive() {
        Ordering::Greater
    } else {
        Ordering::Less
    }
}

fn rational_to_f64(r: &BigRational) -> f64 {
    r.numer().to_f64().unwrap_or(f64::NAN) / r.denom().to_f64().unwrap_or(f64::NAN)
}

fn rational_sqrt_approx(d: u64) -> f64 {
    // ⌊√(d·10³⁰)⌋ / 10¹⁵ without relying on a float sqrt.
    let scaled = BigInt::from(d) * BigInt::from(10u8).pow(30);
    let root = scaled.sqrt();
    root.to_f64().unwrap_or(f64::NAN) / 1e15
}

impl PartialEq for QuadExt {
    fn eq(&self, other: &Self) -> bool {
        self.a == other.a && self.b == other.b && (self.b.is_zero() || self.d == other.d)
    }
}

impl Eq for QuadExt {}

impl PartialOrd for QuadExt {
    /// Value order; `None` when the operands live in distinct quadratic fields.
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        self.cmp_exact(other).ok()
    }
}

impl Neg for QuadExt {
    type Output = QuadExt;
    fn neg(self) -> QuadExt {
        QuadExt::make(-self.a, -self.b, self.d)
    }
}

impl Neg for &QuadExt {
    type Output = QuadExt;
    fn neg(self) -> QuadExt {
        QuadExt::make(-self.a.clone(), -self.b.clone(), self.d)
    }
}

macro_rules! forward_binop {
    ($trait:ident, $method:ident, $checked:ident) => {
        impl $trait for &QuadExt {
            type Output = QuadExt;
            fn $method(self, rhs: &QuadExt) -> QuadExt {
                self.$checked(rhs).expect("operands from distinct quadratic fields")
            }
        }
        impl $trait for QuadExt {
            type Output = QuadExt;
            fn $method(self, rhs: QuadExt) -> QuadExt {
                (&self).$method(&rhs)
            }
        }
        impl $trait<&QuadExt> for QuadExt {
            type Output = QuadExt;
            fn $method(self, rhs: &QuadExt) -> QuadExt {
                (&self).$method(rhs)
            }
        }
    };
}

forward_binop!(Add, add, checked_add);
forward_binop!(Sub, sub, checked_sub);
forward_binop!(Mul, mul, checked_mul);
forward_binop!(Div, div, checked_div);

fn format_rational(r: &BigRational, f: &mut fmt::Formatter<'_>) -> fmt::Result {
    if r.is_integer() {
        write!(f, "{}", r.numer())
    } else {
        write!(f, "{}/{}", r.numer(), r.denom())
    }
}

impl fmt::Display for QuadExt {
    /// Prints `a+b√d` with rationals as `p/q`, e.g. `1/2+1/2√5`, `1-√2`, `√2`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.b.is_zero() {
            return format_rational(&self.a, f);
        }
        if !self.a.is_zero() {
            format_rational(&self.a, f)?;
            if self.b.is_positive() {
                write!(f, "+")?;
            }
        }
        if self.b.is_negative() {
            write!(f, "-")?;
        }
        let babs = self.b.abs();
        if !babs.is_one() {
            format_rational(&babs, f)?;
        }
        write!(f, "√{}", self.d)
    }
}

/// Parses the textual form produced by `Display`; `sqrt` is accepted for `√`.
pub fn parse_quad(input: &str) -> Result<QuadExt, QuadError> {
    Parser { s: input.as_bytes(), pos: 0, chars: input }.parse_full()
}

struct Parser<'a> {
    s: &'a [u8],
    pos: usize,
    chars: &'a str,
}

impl<'a> Parser<'a> {
    fn parse_full(mut self) -> Result<QuadExt, QuadError> {
        let v = self.parse_sum()?;
        self.skip_ws();
        if self.pos != self.s.len() {
            return Err(QuadError::Parse(self.pos, String::from("trailing input")));
        }
        Ok(v)
    }

    fn skip_ws(&mut self) {
        while self.pos < self.s.len() && self.s[self.pos].is_ascii_whitespace() {
            self.pos += 1;
        }
    }

    fn peek(&self) -> Option<u8> {
        self.s.get(self.pos).copied()
    }

    fn parse_sum(&mut self) -> Result<QuadExt, QuadError> {
        self.skip_ws();
        let mut acc = self.parse_term()?;
        loop {
            self.skip_ws();
            match self.peek() {
                Some(b'+') => {
                    self.pos += 1;
                    let t = self.parse_term()?;
                    acc = acc
                        .checked_add(&t)
                        .map_err(|_| QuadError::Parse(self.pos, String::from("mixed radicands")))?;
                }
                Some(b'-') => {
                    self.pos += 1;
                    let t = self.parse_term()?;
                    acc = acc
                        .checked_sub(&t)
                        .map_err(|_| QuadError::Parse(self.pos, String::from("mixed radicands")))?;
                }
                _ => return Ok(acc),
            }
        }
    }

    /// term := ["-"] [rational] [sqrt nat] — at least one of the two parts.
    fn parse_term(&mut self) -> Result<QuadExt, QuadError> {
        self.skip_ws();
        let mut negative = false;
        if self.peek() == Some(b'-') {
            negative = true;
            self.pos += 1;
            self.skip_ws();
        }
        let coeff = if self.peek().map(|c| c.is_ascii_digit()).unwrap_or(false) {
            Some(self.parse_rational()?)
        } else {
            None
        };
        let radicand = if self.at_sqrt() {
            self.consume_sqrt();
            self.skip_ws();
            Some(self.parse_nat()?)
        } else {
            None
        };
        let value = match (coeff, radicand) {
            (Some(c), None) => QuadExt::from_rational(c),
            (c, Some(d)) => {
                let c = c.unwrap_or_else(BigRational::one);
                QuadExt::new(BigRational::zero(), c, d)
                    .map_err(|_| QuadError::Parse(self.pos, String::from("bad radicand")))?
            }
            (None, None) => {
                return Err(QuadError::Parse(self.pos, String::from("expected number")))
            }
        };
        Ok(if negative { -value } else { value })
    }

    fn at_sqrt(&self) -> bool {
        self.chars[self.pos..].starts_with('√') || self.chars[self.pos..].starts_with("sqrt")
    }

    fn consume_sqrt(&mut self) {
        if self.chars[self.pos..].starts_with('√') {
            self.pos += '√'.len_utf8();
        } else {
            self.pos += 4;
        }
    }

    fn parse_rational(&mut self) -> Result<BigRational, QuadError> {
        let n = self.parse_nat_big()?;
        self.skip_ws();
        if self.peek() == Some(b'/') {
            self.pos += 1;
            self.skip_ws();
            let d = self.parse_nat_big()?;
            if d.is_zero() {
                return Err(QuadError::Parse(self.pos, String::from("zero denominator")));
            }
            Ok(BigRational::new(n, d))
        } else {
            Ok(BigRational::from_integer(n))
        }
    }

    fn parse_nat_big(&mut self) -> Result<BigInt, QuadError> {
        let start = self.pos;
        while self.pos < self.s.len() && self.s[self.pos].is_ascii_digit() {
            self.pos += 1;
        }
        if self.pos == start {
            return Err(QuadError::Parse(start, String::from("expected digits")));
        }
        self.chars[start..self.pos]
            .parse::<BigInt>()
            .map_err(|_| QuadError::Parse(start, String::from("bad integer")))
    }

    fn parse_nat(&mut self) -> Result<u64, QuadError> {
        let big = self.parse_nat_big()?;
        big.to_u64().ok_or_else(|| QuadError::Parse(self.pos, String::from("radicand too large")))
    }
}

/// Convenience constructor used pervasively in tests: `quad(a, b, d)` = a + b√d
/// with machine-integer rational coefficients.
pub fn quad(a: (i64, i64), b: (i64, i64), d: u64) -> QuadExt {
    let ar = BigRational::new(BigInt::from(a.0), BigInt::from(a.1));
    let br = BigRational::new(BigInt::from(b.0), BigInt::from(b.1));
    QuadExt::new(ar, br, d).expect("valid radicand")
}

#[allow(dead_code)]
fn _assert_traits() {
    fn is_send<T: Send>() {}
    fn is_sync<T: Sync>() {}
    is_send::<QuadExt>();
    is_sync::<QuadExt>();
    let _ = Vec::<QuadExt>::new();
}
