//! The standard bilinear form at monomials, computed by counting over the Weyl
//! group of the ambient group.

use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::flags::MonomialData;
use crate::laurent::IntLaurent;
use crate::matrix::Matrix;
use crate::ratfunc::{cyclotomic_product, RatFunc};
use crate::typea::{DimVector, KostantPartition};
use crate::weyl::SymmetricProduct;

/// Group and space data for one graded Hom computation.
///
/// With `W` the Weyl group of the ambient group `G` of rank `rank` and
/// `d(w) = dim V1 ∩ ʷV2`, the result is
///
/// `v^(-dim V1 - dim V2) (1 - v^-2)^(-rank) / (flag1 flag2) * sum_w v^(2 (l(w) + d(w)))`
///
/// where `flag_k` is the Poincare polynomial of `P_k / B`.
#[derive(Clone, Copy, Debug)]
pub struct HomInput<'a> {
    pub rank: usize,
    pub dim_v1: usize,
    pub dim_v2: usize,
    pub flag1: &'a IntLaurent,
    pub flag2: &'a IntLaurent,
}

/// Evaluates the graded Hom formula. `intersect` receives the images of each
/// factor of `w` and returns `dim V1 ∩ ʷV2`.
pub fn graded_hom_dim<F>(group: &SymmetricProduct, input: HomInput<'_>, intersect: F) -> RatFunc
where
    F: Fn(&[Vec<usize>]) -> usize + Sync,
{
    let hist = group.length_histogram(intersect);
    let sum = weyl_sum_from_histogram(&hist);
    let num = sum.shift(-((input.dim_v1 + input.dim_v2) as i64));
    let den = &(input.flag1 * input.flag2) * &cyclotomic_product(&[(1, input.rank as u32)]);
    RatFunc::new(num, den).expect("flag polynomials are nonzero")
}

/// `sum_k hist[k] v^(2k)`.
pub fn weyl_sum_from_histogram(hist: &[u64]) -> IntLaurent {
    IntLaurent::from_terms(
        hist.iter()
            .enumerate()
            .filter(|(_, &c)| c != 0)
            .map(|(k, &c)| (2 * k as i64, c)),
    )
}

/// `prod_i prod_{s=1}^{v_i} (1 - v^(-2s))`, grouped by `s`: the factor
/// `(1 - v^(-2s))` appears once for every vertex with `v_i >= s`.
pub fn generic_denominator_factors(v: &DimVector) -> Vec<(u32, u32)> {
    let top = v.entries().iter().copied().max().unwrap_or(0);
    (1..=top)
        .map(|s| (s as u32, v.entries().iter().filter(|&&d| d >= s).count() as u32))
        .collect()
}

pub fn generic_denominator(v: &DimVector) -> IntLaurent {
    cyclotomic_product(&generic_denominator_factors(v))
}

/// Monomial data for a fixed weight and basis order.
#[derive(Clone, Debug)]
pub struct PairingContext {
    pub dimvec: DimVector,
    pub data: Vec<MonomialData>,
    group: SymmetricProduct,
}

impl PairingContext {
    pub fn new(dimvec: DimVector, order: &[KostantPartition]) -> Result<Self> {
        let data = order
            .iter()
            .map(|c| {
                if c.rank() != dimvec.n() || c.weight() != dimvec.entries() {
                    return Err(Error::ShapeMismatch(format!(
                        "Kostant partition {c} does not have weight {dimvec}"
                    )));
                }
                MonomialData::new(c)
            })
            .collect::<Result<_>>()?;
        Ok(Self::from_data(dimvec, data))
    }

    pub fn from_data(dimvec: DimVector, data: Vec<MonomialData>) -> Self {
        let group = SymmetricProduct::new(dimvec.entries().to_vec());
        Self { dimvec, data, group }
    }

    pub fn len(&self) -> usize {
        self.data.len()
    }

    pub fn is_empty(&self) -> bool {
        self.data.is_empty()
    }

    pub fn weyl_group(&self) -> &SymmetricProduct {
        &self.group
    }

    /// `(E_{i,a_c}, E_{i,a_c'})`.
    pub fn psi_entry(&self, c: usize, c2: usize) -> RatFunc {
        let (d1, d2) = (&self.data[c], &self.data[c2]);
        let input = HomInput {
            rank: self.dimvec.total(),
            dim_v1: d1.pattern.dim(),
            dim_v2: d2.pattern.dim(),
            flag1: &d1.parabolic.flag_poincare,
            flag2: &d2.parabolic.flag_poincare,
        };
        graded_hom_dim(&self.group, input, |perms| {
            d1.pattern.conj_intersection_dim(&d2.pattern, perms)
        })
    }

    /// The symmetric Gram matrix in context order.
    pub fn psi_matrix(&self) -> Matrix<RatFunc> {
        let n = self.len();
        let pairs: Vec<(usize, usize)> = (0..n).flat_map(|i| (0..=i).map(move |j| (i, j))).collect();
        let values: Vec<RatFunc> = pairs.par_iter().map(|&(i, j)| self.psi_entry(i, j)).collect();
        let mut m = Matrix::from_fn(n, n, |_, _| RatFunc::zero());
        for (&(i, j), x) in pairs.iter().zip(values) {
            m.set(j, i, x.clone());
            m.set(i, j, x);
        }
        m
    }
}
