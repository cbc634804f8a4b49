//! LDLT of the Gram matrix over `Q(v)` and the bar-invariant elimination
//! `L = QP` that yields the canonical basis.

use serde::{Deserialize, Serialize};

use crate::diagnostics::Diagnostic;
use crate::error::{Error, Result};
use crate::flags::MonomialData;
use crate::laurent::IntLaurent;
use crate::matrix::Matrix;
use crate::pairing::PairingContext;
use crate::ratfunc::RatFunc;
use crate::typea::{enumerate_kp, DimVector, KostantPartition};

/// Monomial data for every Kostant partition of `v`, sorted by orbit
/// dimension with ties broken by descending multiplicity tuple.
pub fn ordered_monomial_data(v: &DimVector) -> Result<Vec<MonomialData>> {
    let mut data = enumerate_kp(v)
        .iter()
        .map(MonomialData::new)
        .collect::<Result<Vec<_>>>()?;
    data.sort_by(|a, b| {
        a.orbit_dim
            .cmp(&b.orbit_dim)
            .then_with(|| b.partition.cmp(&a.partition))
    });
    Ok(data)
}

pub fn pipeline_order(v: &DimVector) -> Result<Vec<KostantPartition>> {
    Ok(ordered_monomial_data(v)?
        .into_iter()
        .map(|d| d.partition)
        .collect())
}

/// `Psi = L D L^T` with `L` lower unitriangular over `Z[v, v^-1]`.
pub fn ldlt(psi: &Matrix<RatFunc>) -> Result<(Matrix<IntLaurent>, Vec<RatFunc>)> {
    if !psi.is_symmetric() {
        return Err(Error::ShapeMismatch("LDLT needs a symmetric matrix".into()));
    }
    let n = psi.nrows();
    let mut l: Matrix<RatFunc> = Matrix::identity(n);
    let mut d: Vec<RatFunc> = Vec::with_capacity(n);
    for c in 0..n {
        for k in 0..c {
            let mut acc = psi.get(c, k).clone();
            for j in 0..k {
                let (a, b) = (l.get(c, j), l.get(k, j));
                if !a.is_zero() && !b.is_zero() {
                    acc = &acc - &(&(a * b) * &d[j]);
                }
            }
            l.set(c, k, acc.checked_div(&d[k]).map_err(|_| Error::ZeroPivot { index: k })?);
        }
        let mut pivot = psi.get(c, c).clone();
        for j in 0..c {
            let a = l.get(c, j);
            if !a.is_zero() {
                pivot = &pivot - &(&(a * a) * &d[j]);
            }
        }
        if pivot.is_zero() {
            return Err(Error::ZeroPivot { index: c });
        }
        d.push(pivot);
    }
    let l = l.try_map(|x| {
        x.to_laurent().map_err(|_| Error::NotLaurent {
            context: "LDLT factor L".into(),
            value: x.to_string(),
        })
    })?;
    Ok((l, d))
}

/// `L = QP` with `Q` bar-invariant and `P` strictly negative below the
/// diagonal, by a right-to-left sweep along each row.
pub fn qp_split(l: &Matrix<IntLaurent>) -> Result<(Matrix<IntLaurent>, Matrix<IntLaurent>)> {
    if !l.is_lower_unitriangular() {
        return Err(Error::ShapeMismatch("QP split needs a lower unitriangular matrix".into()));
    }
    let n = l.nrows();
    let mut q: Matrix<IntLaurent> = Matrix::identity(n);
    let mut p: Matrix<IntLaurent> = Matrix::identity(n);
    for c in 0..n {
        let mut row: Vec<IntLaurent> = l.row(c).to_vec();
        for k in (0..c).rev() {
            let split = row[k].bar_split();
            let qk = split.invariant_part;
            if !qk.is_zero() {
                // row k of P is supported in columns <= k
                for (t, entry) in row.iter_mut().enumerate().take(k + 1) {
                    let pkt = p.get(k, t);
                    if !pkt.is_zero() {
                        *entry -= &(&qk * pkt);
                    }
                }
            }
            q.set(c, k, qk);
        }
        for (t, x) in row.into_iter().enumerate() {
            p.set(c, t, x);
        }
    }
    Ok((q, p))
}

/// Solves `L D L^T x = rhs`.
pub fn solve_psi(l: &Matrix<IntLaurent>, d: &[RatFunc], rhs: &[RatFunc]) -> Result<Vec<RatFunc>> {
    let n = d.len();
    if l.nrows() != n || rhs.len() != n {
        return Err(Error::ShapeMismatch(format!(
            "LDLT of size {} against right-hand side of length {}",
            n,
            rhs.len()
        )));
    }
    let lr: Matrix<RatFunc> = l.map(|x| RatFunc::from(x.clone()));
    let y = lr.solve_lower_unitriangular(rhs)?;
    let z = y
        .iter()
        .zip(d)
        .enumerate()
        .map(|(i, (y, d))| y.checked_div(d).map_err(|_| Error::ZeroPivot { index: i }))
        .collect::<Result<Vec<_>>>()?;
    lr.solve_transpose_unitriangular(&z)
}

/// All matrices of the canonical-basis computation for one weight.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct TriangularSystem {
    pub dimvec: DimVector,
    pub order: Vec<KostantPartition>,
    pub orbit_dims: Vec<usize>,
    pub psi: Matrix<RatFunc>,
    pub l: Matrix<IntLaurent>,
    pub d: Vec<RatFunc>,
    pub q: Matrix<IntLaurent>,
    pub p: Matrix<IntLaurent>,
}

impl TriangularSystem {
    pub fn compute(v: &DimVector) -> Result<Self> {
        let data = ordered_monomial_data(v)?;
        let ctx = PairingContext::from_data(v.clone(), data);
        Self::from_context(&ctx)
    }

    pub fn from_context(ctx: &PairingContext) -> Result<Self> {
        let psi = ctx.psi_matrix();
        let (l, d) = ldlt(&psi)?;
        let (q, p) = qp_split(&l)?;
        Ok(Self {
            dimvec: ctx.dimvec.clone(),
            order: ctx.data.iter().map(|x| x.partition.clone()).collect(),
            orbit_dims: ctx.data.iter().map(|x| x.orbit_dim).collect(),
            psi,
            l,
            d,
            q,
            p,
        })
    }

    pub fn len(&self) -> usize {
        self.order.len()
    }

    pub fn is_empty(&self) -> bool {
        self.order.is_empty()
    }

    /// `L D L^T` recomputed from the factors.
    pub fn ldlt_product(&self) -> Matrix<RatFunc> {
        let lr = self.l.map(|x| RatFunc::from(x.clone()));
        let ld = lr.checked_mul(&Matrix::diagonal(&self.d)).expect("square factors");
        ld.checked_mul(&lr.transpose()).expect("square factors")
    }

    /// Checks every structural identity; each failure is one error-level
    /// diagnostic. Nonnegativity of `P` is only a warning.
    pub fn check(&self) -> Vec<Diagnostic> {
        let mut out = Vec::new();
        if !self.psi.is_symmetric() {
            out.push(Diagnostic::error("psi-symmetric", "Psi is not symmetric"));
        }
        if self.ldlt_product() != self.psi {
            out.push(Diagnostic::error("ldlt-reconstruction", "L D L^T differs from Psi"));
        }
        if self.q.checked_mul(&self.p).ok().as_ref() != Some(&self.l) {
            out.push(Diagnostic::error("qp-reconstruction", "Q P differs from L"));
        }
        for i in 0..self.len() {
            for j in 0..i {
                if !self.q.get(i, j).is_bar_invariant() {
                    out.push(Diagnostic::error(
                        "q-bar-invariant",
                        format!("Q[{}][{}] = {} is not bar-invariant", i + 1, j + 1, self.q.get(i, j)),
                    ));
                }
                let pij = self.p.get(i, j);
                if !pij.is_strictly_negative() {
                    out.push(Diagnostic::error(
                        "p-strictly-negative",
                        format!("P[{}][{}] = {pij} has a nonnegative exponent", i + 1, j + 1),
                    ));
                }
                if !pij.has_nonnegative_coeffs() {
                    out.push(Diagnostic::warning(
                        "p-nonnegative",
                        format!("P[{}][{}] = {pij} has a negative coefficient", i + 1, j + 1),
                    ));
                }
            }
        }
        for w in self.orbit_dims.windows(2) {
            if w[0] > w[1] {
                out.push(Diagnostic::error("order", "order does not refine orbit dimension"));
            }
        }
        out
    }
}
