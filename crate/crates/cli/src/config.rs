//! Run configuration shared by the subcommands.

use std::collections::BTreeSet;
use std::fmt;
use std::str::FromStr;

use qcanon::typea::DimVector;

/// Default cap on the number of Weyl group elements a single fold may visit.
pub const DEFAULT_MAX_SUMMANDS: u128 = 10_000_000;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Command {
    Canbase,
    Hecke,
}

impl Command {
    pub fn name(self) -> &'static str {
        match self {
            Command::Canbase => "canbase",
            Command::Hecke => "hecke",
        }
    }

    pub fn default_emit(self) -> BTreeSet<Emit> {
        match self {
            Command::Canbase => [Emit::Psi, Emit::L, Emit::D, Emit::P, Emit::Q].into(),
            Command::Hecke => [Emit::Multiplicities, Emit::H, Emit::F, Emit::Dims].into(),
        }
    }
}

/// Artifacts a report can carry, declared in pipeline order.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Emit {
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

impl Emit {
    pub const ALL: [Emit; 13] = [
        Emit::Kp,
        Emit::Orbits,
        Emit::Patterns,
        Emit::Psi,
        Emit::L,
        Emit::D,
        Emit::P,
        Emit::Q,
        Emit::Multiplicities,
        Emit::H,
        Emit::F,
        Emit::Dims,
        Emit::Intersections,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Emit::Kp => "kp",
            Emit::Orbits => "orbits",
            Emit::Patterns => "patterns",
            Emit::Psi => "psi",
            Emit::L => "l",
            Emit::D => "d",
            Emit::P => "p",
            Emit::Q => "q",
            Emit::Multiplicities => "multiplicities",
            Emit::H => "h",
            Emit::F => "f",
            Emit::Dims => "dims",
            Emit::Intersections => "intersections",
        }
    }

    /// Artifacts that need the Hecke step.
    pub fn needs_hecke(self) -> bool {
        matches!(self, Emit::H | Emit::F | Emit::Dims | Emit::Intersections)
    }
}

impl fmt::Display for Emit {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Emit {
    type Err = String;
    fn from_str(s: &str) -> Result<Self, String> {
        let t = s.trim().to_ascii_lowercase();
        Emit::ALL.into_iter().find(|e| e.name() == t).ok_or_else(|| {
            let names: Vec<&str> = Emit::ALL.iter().map(|e| e.name()).collect();
            format!("unknown artifact `{s}`; expected one of {}", names.join(", "))
        })
    }
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub enum Format {
    #[default]
    Json,
    Pretty,
    Latex,
}

impl FromStr for Format {
    type Err = String;
    fn from_str(s: &str) -> Result<Self, String> {
        match s.trim().to_ascii_lowercase().as_str() {
            "json" => Ok(Format::Json),
            "pretty" => Ok(Format::Pretty),
            "latex" => Ok(Format::Latex),
            _ => Err(format!("unknown format `{s}`; expected json, pretty or latex")),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RunConfig {
    pub dimvec: DimVector,
    pub command: Command,
    pub emit: BTreeSet<Emit>,
    pub format: Format,
    /// Worker count hint; `None` lets the pool pick.
    pub workers: Option<usize>,
    pub max_summands: u128,
}

#[derive(Debug, thiserror::Error, PartialEq, Eq)]
pub enum ConfigError {
    #[error("nothing to emit")]
    EmptyEmit,
    #[error("`{0}` is only available from the hecke command")]
    HeckeOnly(Emit),
}

impl RunConfig {
    /// Builds a config, filling in the command's default artifacts when
    /// `emit` is `None`.
    pub fn new(
        command: Command,
        dimvec: DimVector,
        emit: Option<Vec<Emit>>,
        format: Format,
    ) -> Result<Self, ConfigError> {
        let emit: BTreeSet<Emit> = match emit {
            Some(list) => list.into_iter().collect(),
            None => command.default_emit(),
        };
        if emit.is_empty() {
            return Err(ConfigError::EmptyEmit);
        }
        if command == Command::Canbase {
            if let Some(&e) = emit.iter().find(|e| e.needs_hecke()) {
                return Err(ConfigError::HeckeOnly(e));
            }
        }
        Ok(Self {
            dimvec,
            command,
            emit,
            format,
            workers: None,
            max_summands: DEFAULT_MAX_SUMMANDS,
        })
    }

    pub fn wants(&self, e: Emit) -> bool {
        self.emit.contains(&e)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn dv(s: &str) -> DimVector {
        s.parse().unwrap()
    }

    #[test]
    fn emit_names_round_trip() {
        for e in Emit::ALL {
            assert_eq!(e.name().parse::<Emit>().unwrap(), e);
        }
        assert!("Psi".parse::<Emit>().is_ok());
        assert!("sigma".parse::<Emit>().is_err());
    }

    #[test]
    fn defaults_and_validation() {
        let c = RunConfig::new(Command::Hecke, dv("1,2,1"), None, Format::Json).unwrap();
        assert!(c.wants(Emit::Dims) && !c.wants(Emit::Psi));
        assert_eq!(
            RunConfig::new(Command::Canbase, dv("1"), Some(vec![]), Format::Json),
            Err(ConfigError::EmptyEmit)
        );
        assert_eq!(
            RunConfig::new(Command::Canbase, dv("1"), Some(vec![Emit::Psi, Emit::F]), Format::Json),
            Err(ConfigError::HeckeOnly(Emit::F))
        );
    }

    #[test]
    fn emit_set_is_in_pipeline_order() {
        let c = RunConfig::new(
            Command::Hecke,
            dv("2"),
            Some(vec![Emit::Dims, Emit::Kp, Emit::Psi]),
            Format::Pretty,
        )
        .unwrap();
        assert_eq!(c.emit.into_iter().collect::<Vec<_>>(), vec![Emit::Kp, Emit::Psi, Emit::Dims]);
    }
}
