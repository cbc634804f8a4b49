//! Small dense matrices over the exact scalar types.

use std::fmt;

use num_bigint::BigInt;
use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::laurent::IntLaurent;
use crate::ratfunc::RatFunc;

/// The ring operations matrices need, implemented for the exact scalars.
pub trait Scalar: Clone + PartialEq {
    fn zero() -> Self;
    fn one() -> Self;
    fn add(&self, rhs: &Self) -> Self;
    fn sub(&self, rhs: &Self) -> Self;
    fn mul(&self, rhs: &Self) -> Self;
    fn is_zero(&self) -> bool {
        *self == Self::zero()
    }
}

macro_rules! scalar_impl {
    ($t:ty, $zero:expr, $one:expr) => {
        impl Scalar for $t {
            fn zero() -> Self {
                $zero
            }
            fn one() -> Self {
                $one
            }
            fn add(&self, rhs: &Self) -> Self {
                self + rhs
            }
            fn sub(&self, rhs: &Self) -> Self {
                self - rhs
            }
            fn mul(&self, rhs: &Self) -> Self {
                self * rhs
            }
        }
    };
}

scalar_impl!(IntLaurent, IntLaurent::zero(), IntLaurent::one());
scalar_impl!(RatFunc, RatFunc::zero(), RatFunc::one());
scalar_impl!(BigInt, <BigInt as Zero>::zero(), <BigInt as One>::one());

/// A rectangular matrix stored by rows.
#[derive(Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(try_from = "Vec<Vec<T>>", into = "Vec<Vec<T>>")]
#[serde(bound(serialize = "T: Clone + Serialize", deserialize = "T: Deserialize<'de>"))]
pub struct Matrix<T> {
    rows: Vec<Vec<T>>,
    ncols: usize,
}

impl<T> Matrix<T> {
    pub fn from_rows(rows: Vec<Vec<T>>) -> Result<Self> {
        let ncols = rows.first().map_or(0, Vec::len);
        if rows.iter().any(|r| r.len() != ncols) {
            return Err(Error::ShapeMismatch("ragged matrix rows".into()));
        }
        Ok(Self { rows, ncols })
    }

    pub fn from_fn(nrows: usize, ncols: usize, mut f: impl FnMut(usize, usize) -> T) -> Self {
        let rows = (0..nrows).map(|i| (0..ncols).map(|j| f(i, j)).collect()).collect();
        Self { rows, ncols }
    }

    pub fn nrows(&self) -> usize {
        self.rows.len()
    }

    pub fn ncols(&self) -> usize {
        self.ncols
    }

    pub fn is_square(&self) -> bool {
        self.nrows() == self.ncols
    }

    pub fn get(&self, i: usize, j: usize) -> &T {
        &self.rows[i][j]
    }

    pub fn set(&mut self, i: usize, j: usize, x: T) {
        self.rows[i][j] = x;
    }

    pub fn row(&self, i: usize) -> &[T] {
        &self.rows[i]
    }

    pub fn rows(&self) -> &[Vec<T>] {
        &self.rows
    }

    pub fn map<U>(&self, mut f: impl FnMut(&T) -> U) -> Matrix<U> {
        Matrix {
            rows: self.rows.iter().map(|r| r.iter().map(&mut f).collect()).collect(),
            ncols: self.ncols,
        }
    }

    pub fn try_map<U, E>(&self, mut f: impl FnMut(&T) -> std::result::Result<U, E>) -> std::result::Result<Matrix<U>, E> {
        let rows = self
            .rows
            .iter()
            .map(|r| r.iter().map(&mut f).collect())
            .collect::<std::result::Result<_, E>>()?;
        Ok(Matrix { rows, ncols: self.ncols })
    }
}

impl<T: Clone> Matrix<T> {
    pub fn transpose(&self) -> Self {
        Self::from_fn(self.ncols, self.nrows(), |i, j| self.rows[j][i].clone())
    }
}

impl<T: Scalar> Matrix<T> {
    pub fn identity(n: usize) -> Self {
        Self::from_fn(n, n, |i, j| if i == j { T::one() } else { T::zero() })
    }

    pub fn zeros(nrows: usize, ncols: usize) -> Self {
        Self::from_fn(nrows, ncols, |_, _| T::zero())
    }

    pub fn diagonal(d: &[T]) -> Self {
        Self::from_fn(d.len(), d.len(), |i, j| if i == j { d[i].clone() } else { T::zero() })
    }

    pub fn checked_mul(&self, rhs: &Self) -> Result<Self> {
        if self.ncols != rhs.nrows() {
            return Err(Error::ShapeMismatch(format!(
                "cannot multiply {}x{} by {}x{}",
                self.nrows(),
                self.ncols,
                rhs.nrows(),
                rhs.ncols
            )));
        }
        Ok(Self::from_fn(self.nrows(), rhs.ncols, |i, j| {
            (0..self.ncols).fold(T::zero(), |acc, k| {
                let (a, b) = (&self.rows[i][k], &rhs.rows[k][j]);
                if a.is_zero() || b.is_zero() {
                    acc
                } else {
                    acc.add(&a.mul(b))
                }
            })
        }))
    }

    pub fn mul_vec(&self, x: &[T]) -> Result<Vec<T>> {
        if self.ncols != x.len() {
            return Err(Error::ShapeMismatch(format!(
                "cannot apply {}x{} matrix to vector of length {}",
                self.nrows(),
                self.ncols,
                x.len()
            )));
        }
        Ok(self
            .rows
            .iter()
            .map(|r| r.iter().zip(x).fold(T::zero(), |acc, (a, b)| acc.add(&a.mul(b))))
            .collect())
    }

    pub fn is_symmetric(&self) -> bool {
        self.is_square()
            && (0..self.nrows()).all(|i| (0..i).all(|j| self.rows[i][j] == self.rows[j][i]))
    }

    pub fn is_lower_unitriangular(&self) -> bool {
        self.is_square()
            && (0..self.nrows()).all(|i| {
                self.rows[i][i] == T::one() && (i + 1..self.ncols).all(|j| self.rows[i][j].is_zero())
            })
    }

    /// Solves `self * x = b` for lower unitriangular `self`.
    pub fn solve_lower_unitriangular(&self, b: &[T]) -> Result<Vec<T>> {
        self.check_unitriangular_system(b)?;
        let mut x: Vec<T> = Vec::with_capacity(b.len());
        for i in 0..b.len() {
            let s = (0..i).fold(b[i].clone(), |acc, k| acc.sub(&self.rows[i][k].mul(&x[k])));
            x.push(s);
        }
        Ok(x)
    }

    /// Solves `self^T * x = b` for lower unitriangular `self`.
    pub fn solve_transpose_unitriangular(&self, b: &[T]) -> Result<Vec<T>> {
        self.check_unitriangular_system(b)?;
        let n = b.len();
        let mut x = vec![T::zero(); n];
        for i in (0..n).rev() {
            x[i] = (i + 1..n).fold(b[i].clone(), |acc, k| acc.sub(&self.rows[k][i].mul(&x[k])));
        }
        Ok(x)
    }

    fn check_unitriangular_system(&self, b: &[T]) -> Result<()> {
        if !self.is_lower_unitriangular() || self.nrows() != b.len() {
            return Err(Error::ShapeMismatch(
                "expected a lower unitriangular system of matching size".into(),
            ));
        }
        Ok(())
    }
}

impl<T> TryFrom<Vec<Vec<T>>> for Matrix<T> {
    type Error = Error;
    fn try_from(rows: Vec<Vec<T>>) -> Result<Self> {
        Self::from_rows(rows)
    }
}

impl<T> From<Matrix<T>> for Vec<Vec<T>> {
    fn from(m: Matrix<T>) -> Self {
        m.rows
    }
}

impl<T: fmt::Display> fmt::Display for Matrix<T> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for row in &self.rows {
            let cells: Vec<String> = row.iter().map(|x| x.to_string()).collect();
            writeln!(f, "[{}]", cells.join(", "))?;
        }
        Ok(())
    }
}

impl<T: fmt::Debug> fmt::Debug for Matrix<T> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_list().entries(&self.rows).finish()
    }
}
