//! Exact elements of `Q(v)` as reduced fractions of integer Laurent polynomials.

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};
use std::str::FromStr;

use num_integer::Integer;
use num_traits::{One, Signed};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::laurent::IntLaurent;
use crate::poly::Poly;

/// A reduced fraction `num / den`.
///
/// Normal form: `den` is an ordinary polynomial with nonzero constant term and
/// positive leading coefficient, `num` and `den` share no nonconstant factor,
/// and the integer contents of `num` and `den` are coprime. The normal form is
/// unique, so structural equality is field equality.
#[derive(Clone, PartialEq, Eq, Hash, Serialize)]
pub struct RatFunc {
    num: IntLaurent,
    den: IntLaurent,
}

impl RatFunc {
    pub fn zero() -> Self {
        Self {
            num: IntLaurent::zero(),
            den: IntLaurent::one(),
        }
    }

    pub fn one() -> Self {
        Self::from_laurent(IntLaurent::one())
    }

    pub fn from_laurent(f: IntLaurent) -> Self {
        let (num, den) = normalize(f, IntLaurent::one()).expect("unit denominator");
        Self { num, den }
    }

    /// `num / den`, reduced. Fails with `DivisionByZero` if `den` is zero.
    pub fn new(num: IntLaurent, den: IntLaurent) -> Result<Self> {
        let (num, den) = normalize(num, den)?;
        Ok(Self { num, den })
    }

    pub fn num(&self) -> &IntLaurent {
        &self.num
    }

    pub fn den(&self) -> &IntLaurent {
        &self.den
    }

    pub fn is_zero(&self) -> bool {
        self.num.is_zero()
    }

    pub fn is_one(&self) -> bool {
        self.num.is_one() && self.den.is_one()
    }

    /// Equality by cross-multiplication; agrees with `==` on normalized values.
    pub fn cross_eq(&self, other: &Self) -> bool {
        &self.num * &other.den == &other.num * &self.den
    }

    pub fn inv(&self) -> Result<Self> {
        Self::new(self.den.clone(), self.num.clone())
    }

    pub fn checked_div(&self, rhs: &Self) -> Result<Self> {
        if rhs.is_zero() {
            return Err(Error::DivisionByZero);
        }
        Self::new(&self.num * &rhs.den, &self.den * &rhs.num)
    }

    pub fn bar(&self) -> Self {
        Self::new(self.num.bar(), self.den.bar()).expect("nonzero denominator")
    }

    /// The unique Laurent polynomial equal to `self`, or `NotLaurent`.
    pub fn to_laurent(&self) -> Result<IntLaurent> {
        if self.den.is_one() {
            Ok(self.num.clone())
        } else {
            Err(Error::NotLaurent {
                context: "conversion".into(),
                value: self.to_string(),
            })
        }
    }

    pub fn pow(&self, k: u32) -> Self {
        let mut out = Self::one();
        for _ in 0..k {
            out = &out * self;
        }
        out
    }

    pub fn to_latex(&self) -> String {
        if self.den.is_one() {
            self.num.to_latex()
        } else {
            format!("\\frac{{{}}}{{{}}}", self.num.to_latex(), self.den.to_latex())
        }
    }
}

fn normalize(num: IntLaurent, den: IntLaurent) -> Result<(IntLaurent, IntLaurent)> {
    if den.is_zero() {
        return Err(Error::DivisionByZero);
    }
    if num.is_zero() {
        return Ok((IntLaurent::zero(), IntLaurent::one()));
    }
    let (ns, np) = Poly::from_laurent(&num);
    let (ds, dp) = Poly::from_laurent(&den);
    let (mut np, mut dp) = if dp.degree() == 0 {
        (np, dp)
    } else {
        let g = Poly::gcd(&np, &dp);
        if g.degree() == 0 {
            (np, dp)
        } else {
            (np.div_exact(&g), dp.div_exact(&g))
        }
    };
    let mut c = np.content().gcd(&dp.content());
    if dp.lead().is_negative() {
        c = -c;
    }
    if !c.is_one() {
        np = np.div_scalar(&c);
        dp = dp.div_scalar(&c);
    }
    Ok((np.to_laurent(ns - ds), dp.to_laurent(0)))
}

impl From<IntLaurent> for RatFunc {
    fn from(f: IntLaurent) -> Self {
        Self::from_laurent(f)
    }
}

impl From<i64> for RatFunc {
    fn from(c: i64) -> Self {
        Self::from_laurent(IntLaurent::constant(c))
    }
}

impl<'a> Add<&'a RatFunc> for &'a RatFunc {
    type Output = RatFunc;
    fn add(self, rhs: &RatFunc) -> RatFunc {
        if self.den == rhs.den {
            return RatFunc::new(&self.num + &rhs.num, self.den.clone()).expect("nonzero den");
        }
        RatFunc::new(
            &(&self.num * &rhs.den) + &(&rhs.num * &self.den),
            &self.den * &rhs.den,
        )
        .expect("nonzero den")
    }
}

impl Add for RatFunc {
    type Output = RatFunc;
    fn add(self, rhs: RatFunc) -> RatFunc {
        &self + &rhs
    }
}

impl<'a> Sub<&'a RatFunc> for &'a RatFunc {
    type Output = RatFunc;
    fn sub(self, rhs: &RatFunc) -> RatFunc {
        self + &(-rhs)
    }
}

impl Sub for RatFunc {
    type Output = RatFunc;
    fn sub(self, rhs: RatFunc) -> RatFunc {
        &self - &rhs
    }
}

impl<'a> Mul<&'a RatFunc> for &'a RatFunc {
    type Output = RatFunc;
    fn mul(self, rhs: &RatFunc) -> RatFunc {
        if self.is_zero() || rhs.is_zero() {
            return RatFunc::zero();
        }
        RatFunc::new(&self.num * &rhs.num, &self.den * &rhs.den).expect("nonzero den")
    }
}

impl Mul for RatFunc {
    type Output = RatFunc;
    fn mul(self, rhs: RatFunc) -> RatFunc {
        &self * &rhs
    }
}

impl Neg for &RatFunc {
    type Output = RatFunc;
    fn neg(self) -> RatFunc {
        RatFunc {
            num: -&self.num,
            den: self.den.clone(),
        }
    }
}

impl Neg for RatFunc {
    type Output = RatFunc;
    fn neg(self) -> RatFunc {
        -&self
    }
}

impl fmt::Display for RatFunc {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.den.is_one() {
            write!(f, "{}", self.num)
        } else {
            write!(f, "({})/({})", self.num, self.den)
        }
    }
}

impl fmt::Debug for RatFunc {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "RatFunc({self})")
    }
}

/// Parses `p`, `(p)/(q)` or `p/q` where `p`, `q` are Laurent expressions.
impl FromStr for RatFunc {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let s = s.trim();
        let strip = |t: &str| -> String {
            let t = t.trim();
            if t.starts_with('(') && t.ends_with(')') {
                t[1..t.len() - 1].to_string()
            } else {
                t.to_string()
            }
        };
        // split on the top-level '/'
        let mut depth = 0i32;
        let mut split = None;
        for (i, ch) in s.char_indices() {
            match ch {
                '(' => depth += 1,
                ')' => depth -= 1,
                '/' if depth == 0 => split = Some(i),
                _ => {}
            }
        }
        match split {
            None => Ok(RatFunc::from_laurent(strip(s).parse()?)),
            Some(i) => RatFunc::new(strip(&s[..i]).parse()?, strip(&s[i + 1..]).parse()?),
        }
    }
}

impl<'de> Deserialize<'de> for RatFunc {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        #[derive(Deserialize)]
        struct Raw {
            num: IntLaurent,
            den: IntLaurent,
        }
        let raw = Raw::deserialize(d)?;
        RatFunc::new(raw.num, raw.den).map_err(serde::de::Error::custom)
    }
}

/// `prod_s (1 - v^(-2s))^(count_s)` as a Laurent polynomial, e.g. the generic
/// denominator `(1-v^-2)^3 (1-v^-4)` is `[(1, 3), (2, 1)]`.
pub fn cyclotomic_product(factors: &[(u32, u32)]) -> IntLaurent {
    let mut out = IntLaurent::one();
    for &(s, count) in factors {
        let f = IntLaurent::from_terms([(0i64, 1i64), (-2 * s as i64, -1)]);
        out = &out * &f.pow(count);
    }
    out
}

/// `1 / (1 - v^-2)^k`.
pub fn inv_one_minus_v2_pow(k: u32) -> RatFunc {
    RatFunc::new(IntLaurent::one(), cyclotomic_product(&[(1, k)])).expect("nonzero")
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn rf(s: &str) -> RatFunc {
        s.parse().unwrap()
    }

    fn lp(s: &str) -> IntLaurent {
        s.parse().unwrap()
    }

    #[test]
    fn field_examples() {
        let a = rf("1 - v^-2");
        assert!((&a.inv().unwrap() * &a).is_one());
        assert_eq!(rf("(v + v^-3)/(v^-1)"), rf("v^2 + v^-2"));
        assert_eq!(rf("(1 + v^-2)/(1 - v^-4)"), rf("1/(1 - v^-2)"));
    }

    #[test]
    fn factored_denominator_cancellation() {
        // (1+2v^-2+v^-4) / ((1-v^-2)^2 (1-v^-4)^2) = (1-v^-2)^-4
        let lhs = RatFunc::new(
            lp("1 + 2v^-2 + v^-4"),
            cyclotomic_product(&[(1, 2), (2, 2)]),
        )
        .unwrap();
        assert_eq!(lhs, inv_one_minus_v2_pow(4));
    }

    #[test]
    fn to_laurent_examples() {
        assert_eq!(rf("v + v^-1").to_laurent().unwrap(), lp("v + v^-1"));
        assert_eq!(rf("(v^2 - 1)/(v - 1)").to_laurent().unwrap(), lp("v + 1"));
        assert!(matches!(
            rf("(1 + v^-2)/(1 - v^-2)").to_laurent(),
            Err(Error::NotLaurent { .. })
        ));
        assert!(rf("1/2").to_laurent().is_err());
    }

    #[test]
    fn division_by_zero() {
        assert_eq!(RatFunc::zero().inv(), Err(Error::DivisionByZero));
        assert_eq!(rf("v").checked_div(&RatFunc::zero()), Err(Error::DivisionByZero));
        assert!("1/0".parse::<RatFunc>().is_err());
    }

    #[test]
    fn normal_form_shape() {
        let x = rf("(2v^3 + 4v)/(-6v^-2 - 6v^-4)");
        // den has min exponent 0, positive leading coefficient
        assert_eq!(x.den().min_exp(), Some(0));
        assert!(x.den().terms().next_back().unwrap().1.is_positive());
        assert_eq!(x, rf("(-v^7 - 2v^5)/(3v^2 + 3)"));
    }

    #[test]
    fn json_roundtrip() {
        let x = rf("(1 + v^-2)/(1 - v^-6)");
        let s = serde_json::to_string(&x).unwrap();
        assert!(s.starts_with(r#"{"num":"#));
        assert_eq!(serde_json::from_str::<RatFunc>(&s).unwrap(), x);
        // unnormalized input is normalized on read
        let y: RatFunc = serde_json::from_str(r#"{"num":{"0":2},"den":{"0":4}}"#).unwrap();
        assert_eq!(y, rf("1/2"));
    }

    fn arb_laurent() -> impl Strategy<Value = IntLaurent> {
        prop::collection::vec((-4i64..=4, -3i64..=3), 0..4).prop_map(IntLaurent::from_terms)
    }

    fn arb_rat() -> impl Strategy<Value = RatFunc> {
        (arb_laurent(), arb_laurent())
            .prop_filter_map("zero den", |(n, d)| RatFunc::new(n, d).ok())
    }

    proptest! {
        #[test]
        fn normalization_idempotent(x in arb_rat()) {
            let again = RatFunc::new(x.num().clone(), x.den().clone()).unwrap();
            prop_assert_eq!(&again, &x);
        }

        #[test]
        fn field_identities(a in arb_rat(), b in arb_rat(), c in arb_rat()) {
            prop_assert_eq!(&(&a + &b) * &c, &(&a * &c) + &(&b * &c));
            prop_assert_eq!(&(&a - &b) + &b, a.clone());
            if !b.is_zero() {
                let q = a.checked_div(&b).unwrap();
                prop_assert_eq!(&q * &b, a.clone());
                prop_assert!((&q * &b).cross_eq(&a));
            }
        }

        #[test]
        fn construction_path_independent(n in arb_laurent(), d in arb_laurent(), k in arb_laurent()) {
            prop_assume!(!d.is_zero() && !k.is_zero());
            let x = RatFunc::new(n.clone(), d.clone()).unwrap();
            let y = RatFunc::new(&n * &k, &d * &k).unwrap();
            prop_assert_eq!(&x, &y);
            prop_assert!(x.cross_eq(&y));
        }
    }
}
