//! The report model and the pipeline driver behind `canbase` and `hecke`.

use num_bigint::BigInt;
use serde::{Deserialize, Serialize};

use qcanon::decomp::{ordered_monomial_data, TriangularSystem};
use qcanon::diagnostics::Diagnostic;
use qcanon::error::Error;
use qcanon::flags::{MonomialData, ZeroPattern};
use qcanon::hecke::{intersection_table, HeckeContext, HeckeResult, IntersectionRow};
use qcanon::laurent::IntLaurent;
use qcanon::matrix::Matrix;
use qcanon::pairing::PairingContext;
use qcanon::ratfunc::RatFunc;
use qcanon::typea::{positive_roots_ordered, DimVector, KostantPartition};
use qcanon::weyl::SymmetricProduct;

use crate::config::{Command, Emit, RunConfig};

pub const SCHEMA: &str = "qcanon.report/v1";

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct RootLabel {
    pub label: String,
    pub start: usize,
    pub end: usize,
}

/// Index legend entry: `c{index}` is `partition`, multiplicities in root order.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct PartitionEntry {
    pub index: usize,
    pub partition: KostantPartition,
}

/// The monomial attached to a Kostant partition.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct MonomialEntry {
    pub index: usize,
    pub word: Vec<usize>,
    pub exponents: Vec<usize>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Report {
    pub schema: String,
    pub command: String,
    pub dimvec: DimVector,
    /// Positive roots in the order used by every partition tuple.
    pub root_order: Vec<RootLabel>,
    /// Partitions in pipeline order; row and column `i` of every matrix refer
    /// to `partitions[i]`.
    pub partitions: Vec<PartitionEntry>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub kp: Option<Vec<MonomialEntry>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub orbits: Option<Vec<usize>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub patterns: Option<Vec<ZeroPattern>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub psi: Option<Matrix<RatFunc>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub l: Option<Matrix<IntLaurent>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub d: Option<Vec<RatFunc>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub p: Option<Matrix<IntLaurent>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub q: Option<Matrix<IntLaurent>>,
    #[serde(
        default,
        skip_serializing_if = "Option::is_none",
        with = "qcanon::intser::opt_matrix"
    )]
    pub multiplicities: Option<Matrix<BigInt>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub h: Option<Vec<RatFunc>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub f: Option<Vec<IntLaurent>>,
    #[serde(default, skip_serializing_if = "Option::is_none", with = "qcanon::intser::opt_vec")]
    pub dims: Option<Vec<BigInt>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub intersections: Option<Vec<IntersectionRow>>,
    pub diagnostics: Vec<Diagnostic>,
}

impl Report {
    pub fn has_errors(&self) -> bool {
        self.diagnostics.iter().any(Diagnostic::is_error)
    }
}

/// Refuses runs whose Weyl folds would exceed `cfg.max_summands` elements.
pub fn check_resources(cfg: &RunConfig) -> Result<(), Error> {
    let weyl = cfg.dimvec.weyl_order();
    if weyl > cfg.max_summands {
        return Err(Error::ResourceLimit {
            what: format!("Weyl group of GL_{} (product of v_j!)", cfg.dimvec),
            needed: weyl,
            cap: cfg.max_summands,
        });
    }
    if cfg.command == Command::Hecke && cfg.emit.iter().any(|e| e.needs_hecke()) {
        let n = cfg.dimvec.total();
        let sn = SymmetricProduct::new(vec![n]).order();
        if sn > cfg.max_summands {
            return Err(Error::ResourceLimit {
                what: format!("symmetric group S_{n}"),
                needed: sn,
                cap: cfg.max_summands,
            });
        }
    }
    Ok(())
}

/// Runs the pipeline up to the last requested artifact.
pub fn build_report(cfg: &RunConfig) -> Result<Report, Error> {
    check_resources(cfg)?;
    let v = &cfg.dimvec;
    let data = ordered_monomial_data(v)?;
    let mut report = skeleton(cfg, &data);

    if cfg.wants(Emit::Intersections) {
        report.intersections = Some(intersection_table(&HeckeContext::new(v.clone())));
    }
    let needs_system = cfg.emit.iter().any(|&e| e >= Emit::Psi && e != Emit::Intersections);
    if !needs_system {
        return Ok(report);
    }
    let ctx = PairingContext::from_data(v.clone(), data);
    let sys = TriangularSystem::from_context(&ctx)?;
    report.diagnostics.extend(sys.check());

    if cfg.emit.iter().any(|&e| matches!(e, Emit::H | Emit::F | Emit::Dims)) {
        let hecke = HeckeResult::compute(&sys, &ctx.data)?;
        report.diagnostics.extend(hecke.check(&sys));
        report.h = cfg.wants(Emit::H).then(|| hecke.h.clone());
        report.f = cfg.wants(Emit::F).then(|| hecke.f.clone());
        report.dims = cfg.wants(Emit::Dims).then(|| hecke.dims.clone());
    }
    if cfg.wants(Emit::Multiplicities) {
        report.multiplicities = Some(qcanon::hecke::standard_multiplicities(&sys));
    }
    let TriangularSystem { psi, l, d, q, p, .. } = sys;
    report.psi = cfg.wants(Emit::Psi).then_some(psi);
    report.l = cfg.wants(Emit::L).then_some(l);
    report.d = cfg.wants(Emit::D).then_some(d);
    report.p = cfg.wants(Emit::P).then_some(p);
    report.q = cfg.wants(Emit::Q).then_some(q);
    Ok(report)
}

fn skeleton(cfg: &RunConfig, data: &[MonomialData]) -> Report {
    let root_order = positive_roots_ordered(cfg.dimvec.n())
        .into_iter()
        .map(|r| RootLabel {
            label: r.to_string(),
            start: r.start,
            end: r.end,
        })
        .collect();
    let partitions = data
        .iter()
        .enumerate()
        .map(|(i, d)| PartitionEntry {
            index: i + 1,
            partition: d.partition.clone(),
        })
        .collect();
    Report {
        schema: SCHEMA.into(),
        command: cfg.command.name().into(),
        dimvec: cfg.dimvec.clone(),
        root_order,
        partitions,
        kp: cfg.wants(Emit::Kp).then(|| {
            data.iter()
                .enumerate()
                .map(|(i, d)| MonomialEntry {
                    index: i + 1,
                    word: d.shape.word.clone(),
                    exponents: d.shape.exps.clone(),
                })
                .collect()
        }),
        orbits: cfg.wants(Emit::Orbits).then(|| data.iter().map(|d| d.orbit_dim).collect()),
        patterns: cfg.wants(Emit::Patterns).then(|| data.iter().map(|d| d.pattern.clone()).collect()),
        psi: None,
        l: None,
        d: None,
        p: None,
        q: None,
        multiplicities: None,
        h: None,
        f: None,
        dims: None,
        intersections: None,
        diagnostics: Vec::new(),
    }
}
