//! Bit-exact comparison of pipeline output against reference fixtures.
//!
//! A fixture names a weight, an artifact and its expected value. Rational
//! entries are written as Laurent numerators over an optional factored
//! denominator `prod_s (1-v^-2s)^k_s`, given as `[[s, k], ...]`.

use std::collections::HashMap;
use std::fmt;

use num_bigint::BigInt;
use serde::{Deserialize, Serialize};
use serde_json::Value;

use qcanon::decomp::{ordered_monomial_data, TriangularSystem};
use qcanon::flags::{MonomialData, ZeroPattern};
use qcanon::hecke::{intersection_table, standard_multiplicities, HeckeContext, HeckeResult};
use qcanon::laurent::IntLaurent;
use qcanon::pairing::PairingContext;
use qcanon::ratfunc::{cyclotomic_product, RatFunc};
use qcanon::typea::DimVector;
use qcanon::weyl::Permutation;

/// The fixtures shipped with the binary.
pub const BUILTIN: &str = include_str!("../fixtures/reference.json");

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Artifact {
    Kp,
    Orbits,
    Patterns,
    Psi,
    L,
    D,
    P,
    Q,
    Multiplicities,
    H,
    F,
    Dims,
    Intersections,
}

impl Artifact {
    /// Artifacts that validate the monomial data every later stage uses.
    pub fn is_gate(self) -> bool {
        matches!(self, Artifact::Kp | Artifact::Orbits | Artifact::Patterns)
    }
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct Fixture {
    pub name: String,
    pub dimvec: DimVector,
    pub artifact: Artifact,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub denominator: Vec<(u32, u32)>,
    pub expected: Value,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Mismatch {
    /// Cell address such as `[2][3]`, or a description for shape problems.
    pub at: String,
    pub expected: String,
    pub actual: String,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Outcome {
    Pass,
    Fail(Vec<Mismatch>),
    Error(String),
    Skipped(String),
}

#[derive(Clone, Debug)]
pub struct FixtureResult {
    pub name: String,
    pub outcome: Outcome,
}

impl FixtureResult {
    pub fn passed(&self) -> bool {
        self.outcome == Outcome::Pass
    }
}

impl fmt::Display for FixtureResult {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match &self.outcome {
            Outcome::Pass => write!(f, "PASS {}", self.name),
            Outcome::Error(e) => write!(f, "FAIL {}: {e}", self.name),
            Outcome::Skipped(why) => write!(f, "FAIL {}: skipped ({why})", self.name),
            Outcome::Fail(ms) => {
                write!(f, "FAIL {}", self.name)?;
                for m in ms {
                    write!(f, "\n  at {}:\n    - {}\n    + {}", m.at, m.expected, m.actual)?;
                }
                Ok(())
            }
        }
    }
}

pub fn parse_fixtures(text: &str) -> Result<Vec<Fixture>, serde_json::Error> {
    serde_json::from_str(text)
}

/// Runs gate fixtures first; if any gate fails, the rest are skipped.
pub fn run_fixtures(fixtures: &[Fixture]) -> Vec<FixtureResult> {
    let mut cache = Cache::default();
    let (gates, rest): (Vec<&Fixture>, Vec<&Fixture>) = fixtures.iter().partition(|f| f.artifact.is_gate());
    let mut results: Vec<FixtureResult> = gates.iter().map(|f| run_one(f, &mut cache)).collect();
    let gate_ok = results.iter().all(FixtureResult::passed);
    for f in rest {
        results.push(if gate_ok {
            run_one(f, &mut cache)
        } else {
            FixtureResult {
                name: f.name.clone(),
                outcome: Outcome::Skipped("monomial data gate failed".into()),
            }
        });
    }
    results
}

/// Everything computed for one weight, built on first use.
#[derive(Default)]
struct Cache {
    entries: HashMap<DimVector, Computed>,
}

struct Computed {
    data: Vec<MonomialData>,
    system: Option<TriangularSystem>,
    hecke: Option<HeckeResult>,
}

impl Cache {
    fn get(&mut self, v: &DimVector) -> Result<&mut Computed, String> {
        if !self.entries.contains_key(v) {
            let data = ordered_monomial_data(v).map_err(|e| e.to_string())?;
            self.entries.insert(v.clone(), Computed { data, system: None, hecke: None });
        }
        Ok(self.entries.get_mut(v).expect("inserted above"))
    }
}

impl Computed {
    fn system(&mut self, v: &DimVector) -> Result<&TriangularSystem, String> {
        if self.system.is_none() {
            let ctx = PairingContext::from_data(v.clone(), self.data.clone());
            self.system = Some(TriangularSystem::from_context(&ctx).map_err(|e| e.to_string())?);
        }
        Ok(self.system.as_ref().expect("set above"))
    }

    fn hecke(&mut self, v: &DimVector) -> Result<&HeckeResult, String> {
        if self.hecke.is_none() {
            self.system(v)?;
            let sys = self.system.as_ref().expect("set above");
            self.hecke = Some(HeckeResult::compute(sys, &self.data).map_err(|e| e.to_string())?);
        }
        Ok(self.hecke.as_ref().expect("set above"))
    }
}

fn run_one(fx: &Fixture, cache: &mut Cache) -> FixtureResult {
    let outcome = match compare(fx, cache) {
        Ok(ms) if ms.is_empty() => Outcome::Pass,
        Ok(ms) => Outcome::Fail(ms),
        Err(e) => Outcome::Error(e),
    };
    FixtureResult {
        name: fx.name.clone(),
        outcome,
    }
}

fn decode<T: serde::de::DeserializeOwned>(fx: &Fixture) -> Result<T, String> {
    serde_json::from_value(fx.expected.clone()).map_err(|e| format!("malformed expected value: {e}"))
}

fn compare(fx: &Fixture, cache: &mut Cache) -> Result<Vec<Mismatch>, String> {
    let v = &fx.dimvec;
    let comp = cache.get(v)?;
    let g = RatFunc::from(cyclotomic_product(&fx.denominator));
    let rat = |s: &String| -> Result<RatFunc, String> {
        let num: IntLaurent = s.parse().map_err(|e| format!("cannot parse `{s}`: {e}"))?;
        Ok(RatFunc::from(num).checked_div(&g).expect("denominator is nonzero"))
    };
    let rat_grid = |rows: Vec<Vec<String>>| -> Result<Vec<Vec<RatFunc>>, String> {
        rows.iter().map(|r| r.iter().map(rat).collect()).collect()
    };
    let lift = |rows: &[Vec<IntLaurent>]| -> Vec<Vec<RatFunc>> {
        rows.iter().map(|r| r.iter().cloned().map(RatFunc::from).collect()).collect()
    };

    Ok(match fx.artifact {
        Artifact::Kp => {
            let want: Vec<Vec<usize>> = decode(fx)?;
            let got: Vec<Vec<usize>> = comp.data.iter().map(|d| d.partition.mult().to_vec()).collect();
            diff_list(&want, &got, |x| format!("{x:?}"))
        }
        Artifact::Orbits => {
            let want: Vec<usize> = decode(fx)?;
            let got: Vec<usize> = comp.data.iter().map(|d| d.orbit_dim).collect();
            diff_list(&want, &got, usize::to_string)
        }
        Artifact::Patterns => {
            let raw: Vec<Vec<Vec<Vec<u8>>>> = decode(fx)?;
            let want = raw.iter().map(|m| pattern(v, m)).collect::<Result<Vec<_>, _>>()?;
            let got: Vec<ZeroPattern> = comp.data.iter().map(|d| d.pattern.clone()).collect();
            diff_list(&want, &got, ZeroPattern::to_string)
        }
        Artifact::Psi => {
            let want = rat_grid(decode(fx)?)?;
            diff_grid(&want, comp.system(v)?.psi.rows())
        }
        Artifact::L => {
            let want = rat_grid(decode(fx)?)?;
            diff_grid(&want, &lift(comp.system(v)?.l.rows()))
        }
        Artifact::P => {
            let want = rat_grid(decode(fx)?)?;
            diff_grid(&want, &lift(comp.system(v)?.p.rows()))
        }
        Artifact::Q => {
            let want = rat_grid(decode(fx)?)?;
            diff_grid(&want, &lift(comp.system(v)?.q.rows()))
        }
        Artifact::D => {
            let want = decode::<Vec<String>>(fx)?.iter().map(rat).collect::<Result<Vec<_>, _>>()?;
            diff_list(&want, &comp.system(v)?.d, RatFunc::to_string)
        }
        Artifact::H => {
            let want = decode::<Vec<String>>(fx)?.iter().map(rat).collect::<Result<Vec<_>, _>>()?;
            diff_list(&want, &comp.hecke(v)?.h, RatFunc::to_string)
        }
        Artifact::F => {
            let want = decode::<Vec<String>>(fx)?.iter().map(rat).collect::<Result<Vec<_>, _>>()?;
            let got: Vec<RatFunc> = comp.hecke(v)?.f.iter().cloned().map(RatFunc::from).collect();
            diff_list(&want, &got, RatFunc::to_string)
        }
        Artifact::Dims => {
            let want: Vec<i64> = decode(fx)?;
            let want: Vec<BigInt> = want.into_iter().map(BigInt::from).collect();
            diff_list(&want, &comp.hecke(v)?.dims, BigInt::to_string)
        }
        Artifact::Multiplicities => {
            let want: Vec<Vec<i64>> = decode(fx)?;
            let want: Vec<Vec<BigInt>> =
                want.into_iter().map(|r| r.into_iter().map(BigInt::from).collect()).collect();
            diff_grid(&want, standard_multiplicities(comp.system(v)?).rows())
        }
        Artifact::Intersections => diff_intersections(v, decode(fx)?)?,
    })
}

fn pattern(v: &DimVector, raw: &[Vec<Vec<u8>>]) -> Result<ZeroPattern, String> {
    let mats: Vec<Vec<Vec<bool>>> = raw
        .iter()
        .map(|m| m.iter().map(|r| r.iter().map(|&x| x != 0).collect()).collect())
        .collect();
    ZeroPattern::from_matrices(v, &mats).map_err(|e| e.to_string())
}

#[derive(Deserialize)]
struct IntersectionExpect {
    w: String,
    length: usize,
    pattern: Vec<Vec<Vec<u8>>>,
}

fn diff_intersections(v: &DimVector, want: Vec<IntersectionExpect>) -> Result<Vec<Mismatch>, String> {
    let ctx = HeckeContext::new(v.clone());
    let table = intersection_table(&ctx);
    let mut out = Vec::new();
    if want.len() != table.len() {
        out.push(Mismatch {
            at: "row count".into(),
            expected: want.len().to_string(),
            actual: table.len().to_string(),
        });
    }
    for row in &want {
        let w = Permutation::parse_cycles(ctx.rank(), &row.w).map_err(|e| e.to_string())?;
        let p = pattern(v, &row.pattern)?;
        let Some(got) = table.iter().find(|r| r.w == w) else {
            out.push(Mismatch {
                at: row.w.clone(),
                expected: "present".into(),
                actual: "missing".into(),
            });
            continue;
        };
        if got.length != row.length || got.pattern != p {
            out.push(Mismatch {
                at: row.w.clone(),
                expected: format!("l = {}, {}", row.length, p),
                actual: format!("l = {}, {}", got.length, got.pattern),
            });
        }
    }
    Ok(out)
}

fn diff_list<T: PartialEq>(want: &[T], got: &[T], show: impl Fn(&T) -> String) -> Vec<Mismatch> {
    if want.len() != got.len() {
        return vec![Mismatch {
            at: "length".into(),
            expected: want.len().to_string(),
            actual: got.len().to_string(),
        }];
    }
    want.iter()
        .zip(got)
        .enumerate()
        .filter(|(_, (a, b))| a != b)
        .map(|(i, (a, b))| Mismatch {
            at: format!("[{}]", i + 1),
            expected: show(a),
            actual: show(b),
        })
        .collect()
}

fn diff_grid<T: PartialEq + fmt::Display>(want: &[Vec<T>], got: &[Vec<T>]) -> Vec<Mismatch> {
    let shape = |m: &[Vec<T>]| format!("{}x{}", m.len(), m.first().map_or(0, Vec::len));
    if want.len() != got.len() || want.iter().zip(got).any(|(a, b)| a.len() != b.len()) {
        return vec![Mismatch {
            at: "shape".into(),
            expected: shape(want),
            actual: shape(got),
        }];
    }
    let mut out = Vec::new();
    for (i, (ra, rb)) in want.iter().zip(got).enumerate() {
        for (j, (a, b)) in ra.iter().zip(rb).enumerate() {
            if a != b {
                out.push(Mismatch {
                    at: format!("[{}][{}]", i + 1, j + 1),
                    expected: a.to_string(),
                    actual: b.to_string(),
                });
            }
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn builtin_fixtures_pass() {
        let fixtures = parse_fixtures(BUILTIN).unwrap();
        assert!(fixtures.len() >= 20);
        for r in run_fixtures(&fixtures) {
            assert!(r.passed(), "{r}");
        }
    }

    #[test]
    fn fixture_names_are_unique() {
        let fixtures = parse_fixtures(BUILTIN).unwrap();
        let mut names: Vec<&str> = fixtures.iter().map(|f| f.name.as_str()).collect();
        names.sort();
        names.dedup();
        assert_eq!(names.len(), fixtures.len());
    }

    #[test]
    fn corrupted_cell_is_reported() {
        let mut fixtures = parse_fixtures(BUILTIN).unwrap();
        let fx = fixtures.iter_mut().find(|f| f.artifact == Artifact::P && f.dimvec.entries() == [1, 2, 1]).unwrap();
        fx.expected[4][0] = Value::String("v^-3".into());
        let r = run_one(fx, &mut Cache::default());
        let Outcome::Fail(ms) = &r.outcome else { panic!("{r}") };
        assert_eq!(ms.len(), 1);
        assert_eq!(ms[0].at, "[5][1]");
        assert_eq!(ms[0].actual, "v^-4");
        assert!(r.to_string().starts_with("FAIL "));
    }

    #[test]
    fn failed_gate_skips_downstream() {
        let mut fixtures = parse_fixtures(BUILTIN).unwrap();
        let fx = fixtures.iter_mut().find(|f| f.artifact == Artifact::Orbits).unwrap();
        fx.expected[0] = Value::from(7);
        let results = run_fixtures(&fixtures);
        assert!(results.iter().any(|r| matches!(r.outcome, Outcome::Skipped(_))));
        assert!(results.iter().all(|r| !r.passed() || fixtures.iter().any(|f| f.name == r.name && f.artifact.is_gate())));
    }

    #[test]
    fn shape_mismatch() {
        let m = diff_grid(&[vec![1]], &[vec![1, 2]]);
        assert_eq!(m[0].at, "shape");
    }
}
