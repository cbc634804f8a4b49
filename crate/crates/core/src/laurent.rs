//! Integer Laurent polynomials in `v`.
//!
//! [`IntLaurent`] is kept in canonical form: a sorted map from exponent to a
//! nonzero arbitrary-precision coefficient. Two values are equal iff their maps
//! are equal, so derived `PartialEq`/`Hash` are structural and exact.

use std::collections::BTreeMap;
use std::fmt;
use std::iter::Sum;
use std::ops::{Add, AddAssign, Mul, Neg, Sub, SubAssign};
use std::str::FromStr;

use num_bigint::BigInt;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::de::{self, MapAccess, Visitor};
use serde::ser::SerializeMap;
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::Error;

/// An element of `Z[v, v^-1]`.
#[derive(Clone, Default, PartialEq, Eq, Hash)]
pub struct IntLaurent {
    coeffs: BTreeMap<i64, BigInt>,
}

/// The unique decomposition `f = invariant_part + negative_part` with the
/// first summand in `Z[v + v^-1]` and the second in `v^-1 Z[v^-1]`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BarSplit {
    pub invariant_part: IntLaurent,
    pub negative_part: IntLaurent,
}

impl IntLaurent {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn one() -> Self {
        Self::constant(1)
    }

    pub fn constant<T: Into<BigInt>>(c: T) -> Self {
        Self::monomial(0, c)
    }

    /// `c * v^exp`.
    pub fn monomial<T: Into<BigInt>>(exp: i64, c: T) -> Self {
        let c = c.into();
        let mut coeffs = BTreeMap::new();
        if !c.is_zero() {
            coeffs.insert(exp, c);
        }
        Self { coeffs }
    }

    /// `v^exp`.
    pub fn v_pow(exp: i64) -> Self {
        Self::monomial(exp, 1)
    }

    /// Builds a polynomial from `(exponent, coefficient)` pairs; repeated
    /// exponents are summed.
    pub fn from_terms<I, T>(terms: I) -> Self
    where
        I: IntoIterator<Item = (i64, T)>,
        T: Into<BigInt>,
    {
        let mut out = Self::zero();
        for (e, c) in terms {
            out.add_term(e, c.into());
        }
        out
    }

    fn add_term(&mut self, exp: i64, c: BigInt) {
        if c.is_zero() {
            return;
        }
        let entry = self.coeffs.entry(exp).or_insert_with(BigInt::zero);
        *entry += c;
        if entry.is_zero() {
            self.coeffs.remove(&exp);
        }
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn is_one(&self) -> bool {
        self.coeffs.len() == 1 && self.coeffs.get(&0).is_some_and(|c| c.is_one())
    }

    pub fn coeff(&self, exp: i64) -> BigInt {
        self.coeffs.get(&exp).cloned().unwrap_or_default()
    }

    /// Nonzero terms in ascending exponent order.
    pub fn terms(&self) -> impl DoubleEndedIterator<Item = (i64, &BigInt)> + '_ {
        self.coeffs.iter().map(|(e, c)| (*e, c))
    }

    pub fn num_terms(&self) -> usize {
        self.coeffs.len()
    }

    pub fn min_exp(&self) -> Option<i64> {
        self.coeffs.keys().next().copied()
    }

    pub fn max_exp(&self) -> Option<i64> {
        self.coeffs.keys().next_back().copied()
    }

    /// Multiplies by `v^k`.
    pub fn shift(&self, k: i64) -> Self {
        Self {
            coeffs: self.coeffs.iter().map(|(e, c)| (e + k, c.clone())).collect(),
        }
    }

    pub fn scale(&self, s: &BigInt) -> Self {
        if s.is_zero() {
            return Self::zero();
        }
        Self {
            coeffs: self.coeffs.iter().map(|(e, c)| (*e, c * s)).collect(),
        }
    }

    /// The bar involution `v -> v^-1`.
    pub fn bar(&self) -> Self {
        Self {
            coeffs: self.coeffs.iter().map(|(e, c)| (-e, c.clone())).collect(),
        }
    }

    pub fn is_bar_invariant(&self) -> bool {
        self.coeffs.iter().all(|(e, c)| self.coeffs.get(&-e) == Some(c))
    }

    /// True iff every exponent is `<= -1`, i.e. the value lies in `v^-1 Z[v^-1]`.
    pub fn is_strictly_negative(&self) -> bool {
        self.max_exp().is_none_or(|e| e <= -1)
    }

    pub fn has_nonnegative_coeffs(&self) -> bool {
        self.coeffs.values().all(|c| !c.is_negative())
    }

    /// Splits into a bar-invariant part and a part in `v^-1 Z[v^-1]`.
    ///
    /// The invariant part is `a_0 + sum_{k>0} a_k (v^k + v^-k)` where `a_k` are
    /// the coefficients of `self` at nonnegative exponents.
    pub fn bar_split(&self) -> BarSplit {
        let mut invariant_part = Self::zero();
        for (e, c) in self.coeffs.range(0..) {
            invariant_part.add_term(*e, c.clone());
            if *e > 0 {
                invariant_part.add_term(-e, c.clone());
            }
        }
        let negative_part = self - &invariant_part;
        BarSplit {
            invariant_part,
            negative_part,
        }
    }

    /// Value at `v = 1`, i.e. the sum of all coefficients.
    pub fn eval_at_one(&self) -> BigInt {
        self.coeffs.values().sum()
    }

    pub fn pow(&self, k: u32) -> Self {
        let mut out = Self::one();
        for _ in 0..k {
            out = &out * self;
        }
        out
    }

    /// LaTeX rendering, highest exponent first: `1 + 2v^{-2} + v^{-4}`.
    pub fn to_latex(&self) -> String {
        self.render(|e| format!("v^{{{e}}}"))
    }

    fn render(&self, var: impl Fn(i64) -> String) -> String {
        if self.is_zero() {
            return "0".to_string();
        }
        let mut s = String::new();
        for (i, (e, c)) in self.coeffs.iter().rev().enumerate() {
            let neg = c.is_negative();
            let abs = c.abs();
            if i == 0 {
                if neg {
                    s.push('-');
                }
            } else {
                s.push_str(if neg { " - " } else { " + " });
            }
            let mono = match *e {
                0 => String::new(),
                1 => "v".to_string(),
                e => var(e),
            };
            if mono.is_empty() {
                s.push_str(&abs.to_string());
            } else {
                if !abs.is_one() {
                    s.push_str(&abs.to_string());
                }
                s.push_str(&mono);
            }
        }
        s
    }
}

/// The balanced quantum integer `[m] = v^(m-1) + v^(m-3) + ... + v^(1-m)`.
pub fn quantum_integer(m: usize) -> IntLaurent {
    let m = m as i64;
    IntLaurent::from_terms((0..m).map(|t| (m - 1 - 2 * t, 1)))
}

/// `[a_1]! [a_2]! ... [a_k]!` with the balanced convention `[2] = v + v^-1`.
pub fn quantum_factorial(a: &[usize]) -> IntLaurent {
    let mut out = IntLaurent::one();
    for &ak in a {
        for m in 2..=ak {
            out = &out * &quantum_integer(m);
        }
    }
    out
}

impl fmt::Display for IntLaurent {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.render(|e| format!("v^{e}")))
    }
}

impl fmt::Debug for IntLaurent {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "IntLaurent({self})")
    }
}

impl<'a> Add<&'a IntLaurent> for &'a IntLaurent {
    type Output = IntLaurent;
    fn add(self, rhs: &IntLaurent) -> IntLaurent {
        let mut out = self.clone();
        out += rhs;
        out
    }
}

impl Add for IntLaurent {
    type Output = IntLaurent;
    fn add(mut self, rhs: IntLaurent) -> IntLaurent {
        self += &rhs;
        self
    }
}

impl AddAssign<&IntLaurent> for IntLaurent {
    fn add_assign(&mut self, rhs: &IntLaurent) {
        for (e, c) in &rhs.coeffs {
            self.add_term(*e, c.clone());
        }
    }
}

impl<'a> Sub<&'a IntLaurent> for &'a IntLaurent {
    type Output = IntLaurent;
    fn sub(self, rhs: &IntLaurent) -> IntLaurent {
        let mut out = self.clone();
        out -= rhs;
        out
    }
}

impl Sub for IntLaurent {
    type Output = IntLaurent;
    fn sub(mut self, rhs: IntLaurent) -> IntLaurent {
        self -= &rhs;
        self
    }
}

impl SubAssign<&IntLaurent> for IntLaurent {
    fn sub_assign(&mut self, rhs: &IntLaurent) {
        for (e, c) in &rhs.coeffs {
            self.add_term(*e, -c);
        }
    }
}

impl<'a> Mul<&'a IntLaurent> for &'a IntLaurent {
    type Output = IntLaurent;
    fn mul(self, rhs: &IntLaurent) -> IntLaurent {
        let mut out = IntLaurent::zero();
        for (e1, c1) in &self.coeffs {
            for (e2, c2) in &rhs.coeffs {
                out.add_term(e1 + e2, c1 * c2);
            }
        }
        out
    }
}

impl Mul for IntLaurent {
    type Output = IntLaurent;
    fn mul(self, rhs: IntLaurent) -> IntLaurent {
        &self * &rhs
    }
}

impl Neg for &IntLaurent {
    type Output = IntLaurent;
    fn neg(self) -> IntLaurent {
        IntLaurent {
            coeffs: self.coeffs.iter().map(|(e, c)| (*e, -c)).collect(),
        }
    }
}

impl Neg for IntLaurent {
    type Output = IntLaurent;
    fn neg(self) -> IntLaurent {
        -&self
    }
}

impl Sum for IntLaurent {
    fn sum<I: Iterator<Item = IntLaurent>>(iter: I) -> Self {
        iter.fold(IntLaurent::zero(), |mut acc, x| {
            acc += &x;
            acc
        })
    }
}

impl From<i64> for IntLaurent {
    fn from(c: i64) -> Self {
        IntLaurent::constant(c)
    }
}

/// Parses expressions such as `1 + 2v^-2 + v^{-4}`, `3*v^9 - v`, `-v^-1`.
impl FromStr for IntLaurent {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self, Error> {
        let err = |msg: &str| Error::Parse(format!("{msg} in Laurent polynomial {s:?}"));
        let tokens: Vec<&str> = s.split_whitespace().collect();
        let operand = |c: Option<char>| c.is_some_and(|c| c.is_ascii_alphanumeric() || c == '}');
        if tokens
            .windows(2)
            .any(|w| operand(w[0].chars().last()) && operand(w[1].chars().next()))
        {
            return Err(err("missing operator between terms"));
        }
        let chars: Vec<char> = tokens.concat().chars().collect();
        if chars.is_empty() {
            return Err(err("empty input"));
        }
        let mut out = IntLaurent::zero();
        let mut i = 0;
        let read_int = |i: &mut usize| -> Option<BigInt> {
            let start = *i;
            while *i < chars.len() && chars[*i].is_ascii_digit() {
                *i += 1;
            }
            (start < *i).then(|| chars[start..*i].iter().collect::<String>().parse().unwrap())
        };
        while i < chars.len() {
            let mut sign = BigInt::one();
            let mut seen_sign = false;
            while i < chars.len() && (chars[i] == '+' || chars[i] == '-') {
                if chars[i] == '-' {
                    sign = -sign;
                }
                seen_sign = true;
                i += 1;
            }
            if !seen_sign && i != 0 {
                return Err(err("expected '+' or '-'"));
            }
            let coeff = read_int(&mut i);
            if i < chars.len() && chars[i] == '*' {
                if coeff.is_none() {
                    return Err(err("dangling '*'"));
                }
                i += 1;
            }
            let mut exp = 0i64;
            if i < chars.len() && chars[i] == 'v' {
                i += 1;
                exp = 1;
                if i < chars.len() && chars[i] == '^' {
                    i += 1;
                    let braced = i < chars.len() && chars[i] == '{';
                    if braced {
                        i += 1;
                    }
                    let mut neg = false;
                    if i < chars.len() && (chars[i] == '-' || chars[i] == '+') {
                        neg = chars[i] == '-';
                        i += 1;
                    }
                    let e = read_int(&mut i).ok_or_else(|| err("missing exponent"))?;
                    exp = e.to_i64().ok_or_else(|| err("exponent out of range"))?;
                    if neg {
                        exp = -exp;
                    }
                    if braced {
                        if i >= chars.len() || chars[i] != '}' {
                            return Err(err("unclosed '{'"));
                        }
                        i += 1;
                    }
                }
            } else if coeff.is_none() {
                return Err(err("expected a term"));
            }
            out.add_term(exp, sign * coeff.unwrap_or_else(BigInt::one));
        }
        Ok(out)
    }
}

pub(crate) fn serialize_bigint<S: Serializer>(c: &BigInt, s: S) -> Result<S::Ok, S::Error> {
    match c.to_i64() {
        Some(x) => s.serialize_i64(x),
        None => s.serialize_str(&c.to_string()),
    }
}

pub(crate) struct BigIntSeed;

impl<'de> Visitor<'de> for BigIntSeed {
    type Value = BigInt;
    fn expecting(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("an integer or a decimal string")
    }
    fn visit_i64<E: de::Error>(self, v: i64) -> Result<BigInt, E> {
        Ok(v.into())
    }
    fn visit_u64<E: de::Error>(self, v: u64) -> Result<BigInt, E> {
        Ok(v.into())
    }
    fn visit_str<E: de::Error>(self, v: &str) -> Result<BigInt, E> {
        v.parse().map_err(E::custom)
    }
}

/// A `BigInt` encoded as a JSON integer when it fits in `i64`, otherwise as a
/// decimal string.
pub(crate) struct BigIntValue(pub BigInt);

impl Serialize for BigIntValue {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        serialize_bigint(&self.0, s)
    }
}

impl<'de> Deserialize<'de> for BigIntValue {
    fn deserialize<D: Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        d.deserialize_any(BigIntSeed).map(BigIntValue)
    }
}

/// Serialized as `{"exponent": coefficient, ...}` with keys ascending by exponent.
impl Serialize for IntLaurent {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        struct Coeff<'a>(&'a BigInt);
        impl Serialize for Coeff<'_> {
            fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
                serialize_bigint(self.0, s)
            }
        }
        let mut map = s.serialize_map(Some(self.coeffs.len()))?;
        for (e, c) in &self.coeffs {
            map.serialize_entry(&e.to_string(), &Coeff(c))?;
        }
        map.end()
    }
}

impl<'de> Deserialize<'de> for IntLaurent {
    fn deserialize<D: Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        struct LaurentVisitor;
        impl<'de> Visitor<'de> for LaurentVisitor {
            type Value = IntLaurent;
            fn expecting(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
                f.write_str("a map from exponent strings to integer coefficients")
            }
            fn visit_map<A: MapAccess<'de>>(self, mut map: A) -> Result<IntLaurent, A::Error> {
                let mut out = IntLaurent::zero();
                while let Some((k, BigIntValue(c))) = map.next_entry::<String, BigIntValue>()? {
                    let e: i64 = k.parse().map_err(de::Error::custom)?;
                    if out.coeffs.contains_key(&e) {
                        return Err(de::Error::custom(format!("duplicate exponent {e}")));
                    }
                    out.add_term(e, c);
                }
                Ok(out)
            }
        }
        d.deserialize_map(LaurentVisitor)
    }
}
