//! Standard-module multiplicities and simple-module dimensions for the affine
//! Hecke algebra of `GL_n`, `n = |v|`, at the central character of the
//! semisimple element whose eigenvalue chain has multiplicities `v`.
//!
//! The fixed nilpotent locus is the space of block-subdiagonal matrices, with
//! block `t` occupying the coordinates of vertex `t`; it is identified with
//! `R_v`. Only this single-chain case is handled. A general semisimple element
//! splits into a product of such chains, and its data is the product of the
//! per-chain results.

use std::collections::BTreeSet;
use std::fmt;
use std::ops::Range;

use num_bigint::BigInt;
use serde::{Deserialize, Serialize};

use crate::decomp::TriangularSystem;
use crate::diagnostics::Diagnostic;
use crate::error::{Error, Result};
use crate::flags::{MonomialData, ZeroPattern};
use crate::laurent::IntLaurent;
use crate::matrix::Matrix;
use crate::pairing::{graded_hom_dim, HomInput};
use crate::ratfunc::RatFunc;
use crate::typea::DimVector;
use crate::weyl::{Permutation, SymmetricProduct};

/// Block structure of the semisimple element inside `gl_n`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct HeckeContext {
    dimvec: DimVector,
    blocks: Vec<Range<usize>>,
    /// `(row, col)` of each block-subdiagonal coordinate, 0-based, listed
    /// arrow by arrow and row-major within an arrow.
    subdiagonal: Vec<(usize, usize)>,
}

impl HeckeContext {
    pub fn new(dimvec: DimVector) -> Self {
        let mut blocks = Vec::with_capacity(dimvec.n());
        let mut start = 0;
        for &d in dimvec.entries() {
            blocks.push(start..start + d);
            start += d;
        }
        let mut subdiagonal = Vec::with_capacity(dimvec.rep_dim());
        for j in 0..blocks.len().saturating_sub(1) {
            for r in blocks[j + 1].clone() {
                for c in blocks[j].clone() {
                    subdiagonal.push((r, c));
                }
            }
        }
        Self {
            dimvec,
            blocks,
            subdiagonal,
        }
    }

    pub fn dimvec(&self) -> &DimVector {
        &self.dimvec
    }

    /// `n = sum v_i`.
    pub fn rank(&self) -> usize {
        self.dimvec.total()
    }

    pub fn block_ranges(&self) -> &[Range<usize>] {
        &self.blocks
    }

    pub fn subdiagonal_positions(&self) -> &[(usize, usize)] {
        &self.subdiagonal
    }

    /// Reads a subset of subdiagonal positions back as a pattern on `R_v`.
    pub fn to_zero_pattern(&self, p: &GlnPattern) -> ZeroPattern {
        let mats: Vec<Vec<Vec<bool>>> = (0..self.blocks.len().saturating_sub(1))
            .map(|j| {
                self.blocks[j + 1]
                    .clone()
                    .map(|r| self.blocks[j].clone().map(|c| p.contains(r, c)).collect())
                    .collect()
            })
            .collect();
        ZeroPattern::from_matrices(&self.dimvec, &mats).expect("shapes follow the blocks")
    }
}

/// A set of block-subdiagonal positions in an `n x n` matrix.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct GlnPattern {
    n: usize,
    positions: BTreeSet<(usize, usize)>,
}

impl GlnPattern {
    /// Size of the ambient matrices.
    pub fn n(&self) -> usize {
        self.n
    }

    pub fn dim(&self) -> usize {
        self.positions.len()
    }

    pub fn contains(&self, r: usize, c: usize) -> bool {
        self.positions.contains(&(r, c))
    }

    pub fn positions(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        self.positions.iter().copied()
    }

    pub fn intersection_dim(&self, other: &Self) -> usize {
        self.positions.intersection(&other.positions).count()
    }
}

/// 1-based positions, e.g. `{(3,1), (4,2)}`.
impl fmt::Display for GlnPattern {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let items: Vec<String> = self
            .positions
            .iter()
            .map(|(r, c)| format!("({},{})", r + 1, c + 1))
            .collect();
        write!(f, "{{{}}}", items.join(", "))
    }
}

/// Places the matrix of arrow `j -> j+1` in block position `(j+1, j)`.
pub fn embed_pattern(p: &ZeroPattern, ctx: &HeckeContext) -> Result<GlnPattern> {
    if p.dimvec() != ctx.dimvec.entries() {
        return Err(Error::ShapeMismatch(format!(
            "pattern over {:?} in the Hecke context of {}",
            p.dimvec(),
            ctx.dimvec
        )));
    }
    let positions = p
        .allowed_entries()
        .iter()
        .map(|&(j, r, c)| (ctx.blocks[j + 1].start + r, ctx.blocks[j].start + c))
        .collect();
    Ok(GlnPattern {
        n: ctx.rank(),
        positions,
    })
}

/// `ʷn ∩ N`: subdiagonal positions `(r, c)` with `w⁻¹(r) > w⁻¹(c)`, where `n`
/// is the strictly lower triangular nilradical.
pub fn wn_pattern(w: &Permutation, ctx: &HeckeContext) -> Result<GlnPattern> {
    if w.len() != ctx.rank() {
        return Err(Error::ShapeMismatch(format!(
            "permutation of {} letters in GL_{}",
            w.len(),
            ctx.rank()
        )));
    }
    let inv = w.inverse();
    let positions = ctx
        .subdiagonal
        .iter()
        .copied()
        .filter(|&(r, c)| inv.image(r) > inv.image(c))
        .collect();
    Ok(GlnPattern {
        n: ctx.rank(),
        positions,
    })
}

/// One permutation with its length and `R_v ∩ ʷn`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct IntersectionRow {
    pub w: Permutation,
    /// `w` in cycle notation.
    pub cycles: String,
    pub length: usize,
    pub pattern: ZeroPattern,
}

/// `(w, l(w), R_v ∩ ʷn)` for every `w` in `S_n`.
pub fn intersection_table(ctx: &HeckeContext) -> Vec<IntersectionRow> {
    let n = ctx.rank();
    SymmetricProduct::new(vec![n])
        .iter()
        .map(|we| {
            let w = we.component(0).clone();
            let pattern = ctx.to_zero_pattern(&wn_pattern(&w, ctx).expect("degree n"));
            IntersectionRow {
                cycles: w.to_string(),
                length: w.inversions(),
                pattern,
                w,
            }
        })
        .collect()
}

/// `h_c = v^(-dim R) (1 - v^-2)^(-n) / [a_c]! * sum_{w in S_n} v^(2 (l(w) + dim R ∩ ʷn))`.
pub fn h_entry(ctx: &HeckeContext, data: &MonomialData) -> Result<RatFunc> {
    let r = embed_pattern(&data.pattern, ctx)?;
    let entries: Vec<(usize, usize)> = r.positions().collect();
    let one = IntLaurent::one();
    let input = HomInput {
        rank: ctx.rank(),
        dim_v1: r.dim(),
        dim_v2: 0,
        flag1: &data.parabolic.flag_poincare,
        flag2: &one,
    };
    let group = SymmetricProduct::new(vec![ctx.rank()]);
    // Summing over w⁻¹ instead of w keeps l(w) and avoids inverting each
    // permutation: the condition w⁻¹(r) > w⁻¹(c) becomes w(r) > w(c).
    Ok(graded_hom_dim(&group, input, |perms| {
        let w = &perms[0];
        entries.iter().filter(|&&(r, c)| w[r] > w[c]).count()
    }))
}

pub fn h_vector(ctx: &HeckeContext, data: &[MonomialData]) -> Result<Vec<RatFunc>> {
    data.iter().map(|d| h_entry(ctx, d)).collect()
}

/// `F = Q^T Psi^{-1} H`.
pub fn f_vector(sys: &TriangularSystem, h: &[RatFunc]) -> Result<Vec<IntLaurent>> {
    let x = crate::decomp::solve_psi(&sys.l, &sys.d, h)?;
    let qt = sys.q.transpose().map(|e| RatFunc::from(e.clone()));
    qt.mul_vec(&x)?
        .into_iter()
        .map(|f| {
            f.to_laurent().map_err(|_| Error::NotLaurent {
                context: "F vector".into(),
                value: f.to_string(),
            })
        })
        .collect()
}

pub fn simple_dims(f: &[IntLaurent]) -> Vec<BigInt> {
    f.iter().map(IntLaurent::eval_at_one).collect()
}

/// Entry `(c, c')` is `[M_c : L_c'] = P[c'][c](1)`.
pub fn standard_multiplicities(sys: &TriangularSystem) -> Matrix<BigInt> {
    let n = sys.len();
    Matrix::from_fn(n, n, |c, c2| sys.p.get(c2, c).eval_at_one())
}

/// The Hecke outputs for one weight.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct HeckeResult {
    pub h: Vec<RatFunc>,
    pub f: Vec<IntLaurent>,
    #[serde(with = "crate::intser::vec")]
    pub dims: Vec<BigInt>,
    #[serde(with = "crate::intser::matrix")]
    pub multiplicities: Matrix<BigInt>,
}

impl HeckeResult {
    pub fn compute(sys: &TriangularSystem, data: &[MonomialData]) -> Result<Self> {
        let ctx = HeckeContext::new(sys.dimvec.clone());
        let h = h_vector(&ctx, data)?;
        let f = f_vector(sys, &h)?;
        Ok(Self {
            dims: simple_dims(&f),
            multiplicities: standard_multiplicities(sys),
            h,
            f,
        })
    }

    /// `Psi Q^{-T} F = H` and nonnegativity of `F`.
    pub fn check(&self, sys: &TriangularSystem) -> Vec<Diagnostic> {
        let mut out = Vec::new();
        match transport(sys, &self.f) {
            Ok(h) if h == self.h => {}
            _ => out.push(Diagnostic::error("h-transport", "Psi Q^-T F differs from H")),
        }
        for (i, f) in self.f.iter().enumerate() {
            if !f.has_nonnegative_coeffs() {
                out.push(Diagnostic::error(
                    "f-nonnegative",
                    format!("F[{}] = {f} has a negative coefficient", i + 1),
                ));
            }
        }
        out
    }
}

/// `Psi Q^{-T} F`.
pub fn transport(sys: &TriangularSystem, f: &[IntLaurent]) -> Result<Vec<RatFunc>> {
    let y = sys.q.solve_transpose_unitriangular(f)?;
    let y: Vec<RatFunc> = y.into_iter().map(RatFunc::from).collect();
    sys.psi.mul_vec(&y)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::decomp::ordered_monomial_data;
    use crate::ratfunc::cyclotomic_product;
    use crate::typea::KostantPartition;

    fn dv(s: &str) -> DimVector {
        s.parse().unwrap()
    }

    fn lp(s: &str) -> IntLaurent {
        s.parse().unwrap()
    }

    fn full(s: &str) -> (TriangularSystem, Vec<MonomialData>, HeckeResult) {
        let v = dv(s);
        let sys = TriangularSystem::compute(&v).unwrap();
        let data = ordered_monomial_data(&v).unwrap();
        let res = HeckeResult::compute(&sys, &data).unwrap();
        (sys, data, res)
    }

    #[test]
    fn context_layout() {
        let ctx = HeckeContext::new(dv("1,2,1"));
        assert_eq!(ctx.block_ranges(), &[0..1, 1..3, 3..4]);
        assert_eq!(ctx.subdiagonal_positions(), &[(1, 0), (2, 0), (3, 1), (3, 2)]);
    }

    #[test]
    fn embedding() {
        let v = dv("1,2,1");
        let ctx = HeckeContext::new(v.clone());
        let c4 = MonomialData::new(&KostantPartition::new(vec![0, 1, 0, 0, 1, 0])).unwrap();
        let g = embed_pattern(&c4.pattern, &ctx).unwrap();
        assert_eq!(g.to_string(), "{(3,1), (4,2)}");
        assert_eq!(embed_pattern(&ZeroPattern::full(&v), &ctx).unwrap().dim(), 4);
        assert_eq!(embed_pattern(&ZeroPattern::empty(&v), &ctx).unwrap().dim(), 0);
        assert_eq!(ctx.to_zero_pattern(&g), c4.pattern);
    }

    #[test]
    fn wn_examples() {
        let ctx = HeckeContext::new(dv("1,2,1"));
        let show = |s: &str| {
            let w = Permutation::parse_cycles(4, s).unwrap();
            ctx.to_zero_pattern(&wn_pattern(&w, &ctx).unwrap()).to_string()
        };
        assert_eq!(show("e"), "((* / *), (* *))");
        assert_eq!(show("(12)"), "((0 / *), (* *))");
        assert_eq!(show("(14)(23)"), "((0 / 0), (0 0))");
    }

    #[test]
    fn h_for_c4() {
        let (_, _, res) = full("1,2,1");
        let expect = RatFunc::new(lp("v^2 + 8v^4 + 6v^6 + 8v^8 + v^10"), cyclotomic_product(&[(1, 4)])).unwrap();
        assert_eq!(res.h[3], expect);
    }

    /// The first-row variant of the c5 pattern produces an h-entry that
    /// disagrees with the second-row one the level rule yields.
    #[test]
    fn c5_pattern_variant_changes_h() {
        let v = dv("1,2,1");
        let ctx = HeckeContext::new(v.clone());
        let mut c5 = MonomialData::new(&KostantPartition::new(vec![0, 0, 1, 1, 0, 0])).unwrap();
        let den = cyclotomic_product(&[(1, 4)]);
        let ours = RatFunc::new(lp("3v^3 + 9v^5 + 9v^7 + 3v^9"), den.clone()).unwrap();
        assert_eq!(h_entry(&ctx, &c5).unwrap(), ours);
        c5.pattern = ZeroPattern::from_matrices(
            &v,
            &[vec![vec![true], vec![false]], vec![vec![true, true]]],
        )
        .unwrap();
        let variant = RatFunc::new(lp("5v^3 + 7v^5 + 7v^7 + 5v^9"), den).unwrap();
        assert_eq!(h_entry(&ctx, &c5).unwrap(), variant);
    }

    #[test]
    fn one_two_one_dimensions() {
        let (sys, _, res) = full("1,2,1");
        let f: Vec<IntLaurent> = [
            "3v^9 + v^11",
            "2v^5 + 2v^7 + 2v^9",
            "2v^5 + 2v^7 + 2v^9",
            "v^6 + v^8",
            "v^3 + 3v^5",
        ]
        .iter()
        .map(|s| lp(s))
        .collect();
        assert_eq!(res.f, f);
        let dims: Vec<i64> = vec![4, 6, 6, 2, 4];
        assert_eq!(res.dims, dims.into_iter().map(BigInt::from).collect::<Vec<_>>());
        assert_eq!(res.multiplicities.get(0, 3), &BigInt::from(2));
        assert_eq!(res.multiplicities.get(1, 2), &BigInt::from(0));
        assert!(res.check(&sys).is_empty());
    }

    #[test]
    fn trivial_weight() {
        let (sys, _, res) = full("1");
        assert_eq!(res.h, vec![RatFunc::new(IntLaurent::one(), cyclotomic_product(&[(1, 1)])).unwrap()]);
        assert_eq!(res.f, vec![IntLaurent::one()]);
        assert_eq!(res.dims, vec![BigInt::from(1)]);
        assert_eq!(res.multiplicities, Matrix::identity(1));
        assert!(res.check(&sys).is_empty());
    }

    #[test]
    fn other_small_weights() {
        let cases: [(&str, &[&str]); 3] = [
            ("2,1", &["v^5 + 2v^3", "2v^3 + v"]),
            ("1,1,1", &["v^6", "v^5 + v^3", "v^5 + v^3", "v^2"]),
            ("2,2", &["v^10 + 3v^8 + 2v^6", "3v^7 + 3v^5", "2v^6 + 3v^4 + v^2"]),
        ];
        for (v, f) in cases {
            let (sys, _, res) = full(v);
            let f: Vec<IntLaurent> = f.iter().map(|s| lp(s)).collect();
            assert_eq!(res.f, f, "v = {v}");
            assert!(res.check(&sys).is_empty(), "v = {v}");
        }
    }

    #[test]
    fn round_trip_from_unit_vector() {
        let (sys, _, _) = full("1,2,1");
        let e1: Vec<IntLaurent> = (0..sys.len()).map(|i| IntLaurent::from(i64::from(i == 0))).collect();
        let h = transport(&sys, &e1).unwrap();
        assert_eq!(f_vector(&sys, &h).unwrap(), e1);
    }
}
