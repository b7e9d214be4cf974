//! Exact scalars in ℚ or a fixed real quadratic field ℚ(√d).
//!
//! A [`QuadScalar`] carries its [`Field`] tag. Arithmetic between scalars of
//! different fields is a contract violation: the `checked_*` methods report it
//! as [`ScalarError::FieldMismatch`], the operator impls panic.

use std::fmt;
use std::ops::{Add, Div, Mul, Neg, Sub};
use std::str::FromStr;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Deserializer, Serialize, Serializer};
use thiserror::Error;

/// Arbitrary-precision rational, always kept in lowest terms with a positive
/// denominator.
pub type Rational = BigRational;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ScalarError {
    #[error("division by zero")]
    DivisionByZero,
    #[error("field mismatch: {0} vs {1}")]
    FieldMismatch(Field, Field),
    #[error("d = {0} is not a squarefree integer > 1")]
    BadDiscriminant(u64),
    #[error("malformed scalar `{0}`")]
    Malformed(String),
    #[error("zero denominator in `{0}`")]
    ZeroDenominator(String),
}

/// The coefficient field: ℚ itself or ℚ(√d) for a squarefree `d > 1`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Default)]
pub enum Field {
    #[default]
    Rational,
    Quadratic(u64),
}

impl Field {
    /// `d = 1` selects ℚ; any other value must be squarefree and `> 1`.
    pub fn new(d: u64) -> Result<Self, ScalarError> {
        match d {
            1 => Ok(Field::Rational),
            0 => Err(ScalarError::BadDiscriminant(0)),
            d if is_squarefree(d) => Ok(Field::Quadratic(d)),
            d => Err(ScalarError::BadDiscriminant(d)),
        }
    }

    /// The radicand, with 1 standing for ℚ.
    pub fn d(self) -> u64 {
        match self {
            Field::Rational => 1,
            Field::Quadratic(d) => d,
        }
    }
}

impl fmt::Display for Field {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Field::Rational => write!(f, "Q"),
            Field::Quadratic(d) => write!(f, "Q(sqrt({d}))"),
        }
    }
}

fn is_squarefree(d: u64) -> bool {
    if d < 2 {
        return false;
    }
    let mut p = 2u64;
    while p * p <= d {
        if d.is_multiple_of(p * p) {
            return false;
        }
        p += 1;
    }
    true
}

/// `a + b·√d` with `a, b ∈ ℚ`.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct QuadScalar {
    a: Rational,
    b: Rational,
    field: Field,
}

impl QuadScalar {
    pub fn new(a: Rational, b: Rational, field: Field) -> Result<Self, ScalarError> {
        if field == Field::Rational && !b.is_zero() {
            return Err(ScalarError::FieldMismatch(Field::Rational, Field::Quadratic(0)));
        }
        Ok(QuadScalar { a, b, field })
    }

    pub fn zero(field: Field) -> Self {
        Self::from_rational(Rational::zero(), field)
    }

    pub fn one(field: Field) -> Self {
        Self::from_rational(Rational::one(), field)
    }

    pub fn from_int(value: i64, field: Field) -> Self {
        Self::from_rational(Rational::from_integer(BigInt::from(value)), field)
    }

    pub fn from_ratio(num: i64, den: i64, field: Field) -> Self {
        Self::from_rational(Rational::new(BigInt::from(num), BigInt::from(den)), field)
    }

    pub fn from_rational(a: Rational, field: Field) -> Self {
        QuadScalar { a, b: Rational::zero(), field }
    }

    /// `√d` itself; `None` over ℚ.
    pub fn sqrt_d(field: Field) -> Option<Self> {
        match field {
            Field::Rational => None,
            Field::Quadratic(_) => Some(QuadScalar { a: Rational::zero(), b: Rational::one(), field }),
        }
    }

    pub fn rational_part(&self) -> &Rational {
        &self.a
    }

    pub fn irrational_part(&self) -> &Rational {
        &self.b
    }

    pub fn field(&self) -> Field {
        self.field
    }

    pub fn is_zero(&self) -> bool {
        self.a.is_zero() && self.b.is_zero()
    }

    pub fn is_one(&self) -> bool {
        self.a.is_one() && self.b.is_zero()
    }

    /// The value as a rational, if the irrational part vanishes.
    pub fn to_rational(&self) -> Option<&Rational> {
        self.b.is_zero().then_some(&self.a)
    }

    /// `a² − d·b²`.
    pub fn norm(&self) -> Rational {
        let d = Rational::from_integer(BigInt::from(self.field.d()));
        &self.a * &self.a - d * &self.b * &self.b
    }

    /// Re-embeds a scalar into another field. Only rational values can move.
    pub fn in_field(&self, field: Field) -> Result<Self, ScalarError> {
        if self.field == field {
            return Ok(self.clone());
        }
        if !self.b.is_zero() {
            return Err(ScalarError::FieldMismatch(self.field, field));
        }
        Ok(Self::from_rational(self.a.clone(), field))
    }

    fn same_field(&self, other: &Self) -> Result<Field, ScalarError> {
        if self.field == other.field {
            Ok(self.field)
        } else {
            Err(ScalarError::FieldMismatch(self.field, other.field))
        }
    }

    pub fn checked_add(&self, other: &Self) -> Result<Self, ScalarError> {
        let field = self.same_field(other)?;
        Ok(QuadScalar { a: &self.a + &other.a, b: &self.b + &other.b, field })
    }

    pub fn checked_sub(&self, other: &Self) -> Result<Self, ScalarError> {
        let field = self.same_field(other)?;
        Ok(QuadScalar { a: &self.a - &other.a, b: &self.b - &other.b, field })
    }

    pub fn checked_mul(&self, other: &Self) -> Result<Self, ScalarError> {
        let field = self.same_field(other)?;
        if self.b.is_zero() && other.b.is_zero() {
            return Ok(Self::from_rational(&self.a * &other.a, field));
        }
        let d = Rational::from_integer(BigInt::from(field.d()));
        let a = &self.a * &other.a + d * &self.b * &other.b;
        let b = &self.a * &other.b + &self.b * &other.a;
        Ok(QuadScalar { a, b, field })
    }

    pub fn inv(&self) -> Result<Self, ScalarError> {
        if self.is_zero() {
            return Err(ScalarError::DivisionByZero);
        }
        if self.b.is_zero() {
            return Ok(Self::from_rational(self.a.recip(), self.field));
        }
        // (a + b√d)⁻¹ = (a − b√d) / (a² − d b²); the norm is nonzero since d is not a square.
        let norm = self.norm();
        Ok(QuadScalar { a: &self.a / &norm, b: -&self.b / &norm, field: self.field })
    }

    pub fn checked_div(&self, other: &Self) -> Result<Self, ScalarError> {
        self.same_field(other)?;
        self.checked_mul(&other.inv()?)
    }

    pub fn pow(&self, exp: u32) -> Self {
        let mut acc = Self::one(self.field);
        for _ in 0..exp {
            acc = &acc * self;
        }
        acc
    }

    /// Parses `text` and places the result in `field`.
    ///
    /// A radical in the text must name the same `d` as `field`.
    pub fn parse(text: &str, field: Field) -> Result<Self, ScalarError> {
        let parsed = parse_parts(text)?;
        match parsed.radicand {
            Some(d) if field != Field::Quadratic(d) => Err(ScalarError::FieldMismatch(Field::Quadratic(d), field)),
            _ => Ok(QuadScalar { a: parsed.a, b: parsed.b, field }),
        }
    }

    /// Approximate real value, for proposing candidates that are then
    /// certified exactly.
    pub fn to_f64(&self) -> f64 {
        let ratio = |r: &Rational| {
            let n: f64 = r.numer().to_string().parse().unwrap_or(f64::NAN);
            let d: f64 = r.denom().to_string().parse().unwrap_or(f64::NAN);
            n / d
        };
        ratio(&self.a) + ratio(&self.b) * (self.field.d() as f64).sqrt()
    }
}

fn fmt_rational(r: &Rational, f: &mut fmt::Formatter<'_>) -> fmt::Result {
    if r.is_integer() {
        write!(f, "{}", r.numer())
    } else {
        write!(f, "{}/{}", r.numer(), r.denom())
    }
}

impl fmt::Display for QuadScalar {
    /// Rational values print as `a` or `p/q`; values in ℚ(√d) always print as
    /// `a+b*sqrt(d)` so the field tag survives a round trip.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt_rational(&self.a, f)?;
        if let Field::Quadratic(d) = self.field {
            if self.b.is_negative() {
                write!(f, "-")?;
                fmt_rational(&-&self.b, f)?;
            } else {
                write!(f, "+")?;
                fmt_rational(&self.b, f)?;
            }
            write!(f, "*sqrt({d})")?;
        }
        Ok(())
    }
}

impl fmt::Debug for QuadScalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

impl FromStr for QuadScalar {
    type Err = ScalarError;

    /// Reads the field from the text itself: a `sqrt(d)` term selects ℚ(√d).
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let parsed = parse_parts(s)?;
        let field = match parsed.radicand {
            Some(d) => Field::new(d)?,
            None => Field::Rational,
        };
        Ok(QuadScalar { a: parsed.a, b: parsed.b, field })
    }
}

impl Serialize for QuadScalar {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        serializer.collect_str(self)
    }
}

impl<'de> Deserialize<'de> for QuadScalar {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> Result<Self, D::Error> {
        let s = String::deserialize(deserializer)?;
        s.parse().map_err(serde::de::Error::custom)
    }
}

struct Parsed {
    a: Rational,
    b: Rational,
    radicand: Option<u64>,
}

fn parse_parts(text: &str) -> Result<Parsed, ScalarError> {
    let s: String = text.chars().filter(|c| !c.is_whitespace()).collect();
    let malformed = || ScalarError::Malformed(text.to_string());
    if s.is_empty() {
        return Err(malformed());
    }

    // `(sum)/den`
    if let Some(rest) = s.strip_prefix('(') {
        let mut depth = 1usize;
        let close = rest
            .char_indices()
            .find(|&(_, c)| {
                match c {
                    '(' => depth += 1,
                    ')' => depth -= 1,
                    _ => {}
                }
                depth == 0
            })
            .map(|(i, _)| i)
            .ok_or_else(malformed)?;
        let inner = &rest[..close];
        let tail = &rest[close + 1..];
        let mut parsed = parse_sum(inner, text)?;
        if !tail.is_empty() {
            let den = tail.strip_prefix('/').ok_or_else(malformed)?;
            let den = parse_rational(den, text)?;
            if den.is_zero() {
                return Err(ScalarError::ZeroDenominator(text.to_string()));
            }
            parsed.a /= &den;
            parsed.b /= &den;
        }
        return Ok(parsed);
    }
    parse_sum(&s, text)
}

fn parse_sum(s: &str, original: &str) -> Result<Parsed, ScalarError> {
    let malformed = || ScalarError::Malformed(original.to_string());
    if s.is_empty() {
        return Err(malformed());
    }
    // Split into signed terms at every '+'/'-' that is not a leading sign.
    let bytes = s.as_bytes();
    let mut starts = vec![0];
    for i in 1..bytes.len() {
        if (bytes[i] == b'+' || bytes[i] == b'-') && !matches!(bytes[i - 1], b'/' | b'*' | b'(' | b'+' | b'-') {
            starts.push(i);
        }
    }
    starts.push(bytes.len());

    let mut out = Parsed { a: Rational::zero(), b: Rational::zero(), radicand: None };
    for w in starts.windows(2) {
        let term = &s[w[0]..w[1]];
        let term = term.strip_prefix('+').unwrap_or(term);
        if let Some(pos) = term.find("sqrt(") {
            let coeff_text = &term[..pos];
            let radical = term[pos + 5..].strip_suffix(')').ok_or_else(malformed)?;
            let d: u64 = radical.parse().map_err(|_| malformed())?;
            if !is_squarefree(d) {
                return Err(ScalarError::BadDiscriminant(d));
            }
            match out.radicand {
                Some(prev) if prev != d => {
                    return Err(ScalarError::FieldMismatch(Field::Quadratic(prev), Field::Quadratic(d)))
                }
                _ => out.radicand = Some(d),
            }
            let coeff = match coeff_text {
                "" => Rational::one(),
                "-" => -Rational::one(),
                c => parse_rational(c.strip_suffix('*').ok_or_else(malformed)?, original)?,
            };
            out.b += coeff;
        } else {
            out.a += parse_rational(term, original)?;
        }
    }
    Ok(out)
}

fn parse_rational(s: &str, original: &str) -> Result<Rational, ScalarError> {
    let malformed = || ScalarError::Malformed(original.to_string());
    let int = |t: &str| -> Result<BigInt, ScalarError> {
        let digits = t.strip_prefix(['+', '-']).unwrap_or(t);
        if digits.is_empty() || !digits.bytes().all(|b| b.is_ascii_digit()) {
            return Err(malformed());
        }
        t.parse::<BigInt>().map_err(|_| malformed())
    };
    match s.split_once('/') {
        None => Ok(Rational::from_integer(int(s)?)),
        Some((n, d)) => {
            let (n, d) = (int(n)?, int(d)?);
            if d.is_zero() {
                return Err(ScalarError::ZeroDenominator(original.to_string()));
            }
            Ok(Rational::new(n, d))
        }
    }
}

macro_rules! forward_binop {
    ($trait:ident, $method:ident, $checked:ident) => {
        impl $trait<&QuadScalar> for &QuadScalar {
            type Output = QuadScalar;
            fn $method(self, rhs: &QuadScalar) -> QuadScalar {
                match self.$checked(rhs) {
                    Ok(v) => v,
                    Err(e) => panic!("scalar {}: {e}", stringify!($method)),
                }
            }
        }
        impl $trait<QuadScalar> for QuadScalar {
            type Output = QuadScalar;
            fn $method(self, rhs: QuadScalar) -> QuadScalar {
                (&self).$method(&rhs)
            }
        }
        impl $trait<&QuadScalar> for QuadScalar {
            type Output = QuadScalar;
            fn $method(self, rhs: &QuadScalar) -> QuadScalar {
                (&self).$method(rhs)
            }
        }
        impl $trait<QuadScalar> for &QuadScalar {
            type Output = QuadScalar;
            fn $method(self, rhs: QuadScalar) -> QuadScalar {
                self.$method(&rhs)
            }
        }
    };
}

forward_binop!(Add, add, checked_add);
forward_binop!(Sub, sub, checked_sub);
forward_binop!(Mul, mul, checked_mul);
forward_binop!(Div, div, checked_div);

impl Neg for &QuadScalar {
    type Output = QuadScalar;
    fn neg(self) -> QuadScalar {
        QuadScalar { a: -&self.a, b: -&self.b, field: self.field }
    }
}

impl Neg for QuadScalar {
    type Output = QuadScalar;
    fn neg(self) -> QuadScalar {
        -&self
    }
}
