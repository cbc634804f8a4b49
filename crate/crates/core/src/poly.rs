//! Dense univariate polynomials over `Z`, used internally to reduce fractions.
//!
//! Coefficients are stored lowest degree first with no trailing zeros.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use crate::laurent::IntLaurent;

#[derive(Clone, Debug, PartialEq, Eq)]
pub(crate) struct Poly {
    coeffs: Vec<BigInt>,
}

impl Poly {
    pub fn new(mut coeffs: Vec<BigInt>) -> Self {
        while coeffs.last().is_some_and(|c| c.is_zero()) {
            coeffs.pop();
        }
        Self { coeffs }
    }

    pub fn constant(c: BigInt) -> Self {
        Self::new(vec![c])
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// Degree; the zero polynomial reports 0.
    pub fn degree(&self) -> usize {
        self.coeffs.len().saturating_sub(1)
    }

    pub fn lead(&self) -> &BigInt {
        self.coeffs.last().expect("leading coefficient of zero polynomial")
    }

    /// Splits a Laurent polynomial as `v^shift * p(v)` with `p(0) != 0`.
    pub fn from_laurent(f: &IntLaurent) -> (i64, Poly) {
        let Some(lo) = f.min_exp() else {
            return (0, Poly::new(Vec::new()));
        };
        let hi = f.max_exp().unwrap();
        let mut coeffs = vec![BigInt::zero(); (hi - lo + 1) as usize];
        for (e, c) in f.terms() {
            coeffs[(e - lo) as usize] = c.clone();
        }
        (lo, Poly::new(coeffs))
    }

    pub fn to_laurent(&self, shift: i64) -> IntLaurent {
        IntLaurent::from_terms(
            self.coeffs
                .iter()
                .enumerate()
                .map(|(i, c)| (i as i64 + shift, c.clone())),
        )
    }

    pub fn content(&self) -> BigInt {
        self.coeffs
            .iter()
            .fold(BigInt::zero(), |acc, c| acc.gcd(c))
    }

    pub fn div_scalar(&self, s: &BigInt) -> Poly {
        Poly::new(self.coeffs.iter().map(|c| {
            debug_assert!((c % s).is_zero());
            c / s
        }).collect())
    }

    /// Primitive part with positive leading coefficient.
    pub fn primitive(&self) -> Poly {
        if self.is_zero() {
            return self.clone();
        }
        let mut c = self.content();
        if self.lead().is_negative() {
            c = -c;
        }
        self.div_scalar(&c)
    }

    /// Pseudo-remainder: `lc(b)^(deg a - deg b + 1) * a mod b`.
    fn pseudo_rem(&self, b: &Poly) -> Poly {
        let db = b.degree();
        let lb = b.lead().clone();
        let mut r = self.coeffs.clone();
        if r.len() <= db {
            return self.clone();
        }
        let steps = r.len() - db;
        for _ in 0..steps {
            let dr = r.len() - 1;
            let lr = r[dr].clone();
            for c in r.iter_mut() {
                *c *= &lb;
            }
            let off = dr - db;
            for (i, bc) in b.coeffs.iter().enumerate() {
                r[off + i] -= &lr * bc;
            }
            debug_assert!(r[dr].is_zero());
            r.pop();
        }
        Poly::new(r)
    }

    /// Exact division; panics in debug builds if `b` does not divide `self`.
    pub fn div_exact(&self, b: &Poly) -> Poly {
        if self.is_zero() {
            return self.clone();
        }
        let db = b.degree();
        let lb = b.lead();
        let mut r = self.coeffs.clone();
        let mut q = vec![BigInt::zero(); self.coeffs.len().saturating_sub(db).max(1)];
        while r.len() > db && !r.is_empty() {
            let dr = r.len() - 1;
            let (qc, rem) = r[dr].div_rem(lb);
            debug_assert!(rem.is_zero(), "inexact polynomial division");
            let off = dr - db;
            for (i, bc) in b.coeffs.iter().enumerate() {
                r[off + i] -= &qc * bc;
            }
            q[off] = qc;
            while r.last().is_some_and(|c| c.is_zero()) {
                r.pop();
            }
        }
        debug_assert!(r.is_empty(), "nonzero remainder in exact division");
        Poly::new(q)
    }

    /// Primitive part of the GCD over `Z[v]`, computed by the subresultant
    /// remainder sequence. Integer contents are ignored; the result has positive
    /// leading coefficient.
    pub fn gcd(a: &Poly, b: &Poly) -> Poly {
        if a.is_zero() {
            return b.primitive();
        }
        if b.is_zero() {
            return a.primitive();
        }
        let (mut a, mut b) = if a.degree() >= b.degree() {
            (a.clone(), b.clone())
        } else {
            (b.clone(), a.clone())
        };
        a = a.primitive();
        b = b.primitive();

        let mut g = BigInt::one();
        let mut h = BigInt::one();
        loop {
            let delta = (a.degree() - b.degree()) as u32;
            let r = a.pseudo_rem(&b);
            if r.is_zero() {
                break;
            }
            if r.degree() == 0 {
                return Poly::constant(BigInt::one());
            }
            let divisor = &g * num_traits::pow(h.clone(), delta as usize);
            a = b;
            b = r.div_scalar(&divisor);
            g = a.lead().abs();
            // h <- g^delta / h^(delta-1)
            h = if delta == 0 {
                h
            } else {
                let num = num_traits::pow(g.clone(), delta as usize);
                let den = num_traits::pow(h.clone(), delta as usize - 1);
                num / den
            };
        }
        b.primitive()
    }
}

impl std::ops::Mul for &Poly {
    type Output = Poly;
    fn mul(self, rhs: &Poly) -> Poly {
        if self.is_zero() || rhs.is_zero() {
            return Poly::new(Vec::new());
        }
        let mut out = vec![BigInt::zero(); self.coeffs.len() + rhs.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            for (j, b) in rhs.coeffs.iter().enumerate() {
                out[i + j] += a * b;
            }
        }
        Poly::new(out)
    }
}
