//! Scenario files and the built-in presets.

use std::collections::BTreeMap;
use std::path::Path;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::poly::{Poly, PolyJson, TermJson};
use crate::scalar::{Rational, Scalar};
use crate::twistor::Connection;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Suite {
    Linalg,
    Courant,
    Theorem1,
    Oracle,
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize, Deserialize, clap::ValueEnum)]
#[serde(rename_all = "lowercase")]
pub enum Mode {
    #[default]
    Exact,
    Float,
}

/// `full`: every probe of the suite; `coordinate`: coordinate probes only.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum ProbeSpec {
    #[default]
    Full,
    Coordinate,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct FibreParams {
    /// Length of the random words moving the seed bases.
    pub word_length: usize,
}

impl Default for FibreParams {
    fn default() -> Self {
        FibreParams { word_length: 4 }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Samples {
    /// Number of sample points (bases, base points or twistor points).
    pub base_points: usize,
    #[serde(default)]
    pub fibre_params: FibreParams,
    #[serde(default)]
    pub probe_spec: ProbeSpec,
}

impl Default for Samples {
    fn default() -> Self {
        Samples { base_points: 10, fibre_params: FibreParams::default(), probe_spec: ProbeSpec::Full }
    }
}

/// Christoffel symbols keyed `"k,i,j"` (1-based) → polynomial in `2n`
/// variables; missing entries are zero.
#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ConnectionSpec {
    pub gamma: BTreeMap<String, PolyJson>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Scenario {
    pub name: String,
    pub suite: Suite,
    #[serde(default = "one")]
    pub n: usize,
    #[serde(default)]
    pub connection: ConnectionSpec,
    #[serde(default)]
    pub mode: Mode,
    #[serde(default)]
    pub seed: u64,
    #[serde(default)]
    pub samples: Samples,
    /// Absent: the suite's default checks. Empty: nothing is run.
    #[serde(default)]
    pub checks: Option<Vec<String>>,
}

fn one() -> usize {
    1
}

pub const PRESETS: [&str; 6] = ["thm1-n1", "thm1-n2-flat", "thm1-n2-curved", "oracle-n1", "linalg-all", "examples-courant"];

/// `Γ¹₂₂ = x1` in `2n` variables.
fn curved_spec(n: usize) -> ConnectionSpec {
    let mut exponents = vec![0; 2 * n];
    exponents[0] = 1;
    let mut gamma = BTreeMap::new();
    gamma.insert("1,2,2".to_string(), vec![TermJson { exponents, coeff: "1".into() }]);
    ConnectionSpec { gamma }
}

impl Scenario {
    pub fn preset(name: &str) -> Option<Self> {
        let base = |suite, n, connection, points| Scenario {
            name: name.to_string(),
            suite,
            n,
            connection,
            mode: Mode::Exact,
            seed: 1,
            samples: Samples { base_points: points, ..Samples::default() },
            checks: None,
        };
        Some(match name {
            "thm1-n1" => base(Suite::Theorem1, 1, curved_spec(1), 50),
            "thm1-n2-flat" => base(Suite::Theorem1, 2, ConnectionSpec::default(), 20),
            "thm1-n2-curved" => base(Suite::Theorem1, 2, curved_spec(2), 20),
            "oracle-n1" => base(Suite::Oracle, 1, curved_spec(1), 10),
            "linalg-all" => base(Suite::Linalg, 1, ConnectionSpec::default(), 100),
            "examples-courant" => base(Suite::Courant, 2, ConnectionSpec::default(), 10),
            _ => return None,
        })
    }

    pub fn from_json(text: &str) -> Result<Self> {
        let sc: Scenario = serde_json::from_str(text).map_err(|e| Error::Parse(e.to_string()))?;
        sc.validate()?;
        Ok(sc)
    }

    pub fn load(path: &Path) -> Result<Self> {
        let text = std::fs::read_to_string(path).map_err(|e| Error::Io(format!("{}: {e}", path.display())))?;
        Self::from_json(&text)
    }

    /// A preset name or a path to a scenario file.
    pub fn resolve(arg: &str) -> Result<Self> {
        match Self::preset(arg) {
            Some(sc) => Ok(sc),
            None if Path::new(arg).exists() => Self::load(Path::new(arg)),
            None => Err(Error::InvalidScenario(format!(
                "`{arg}` is neither a preset ({}) nor a file",
                PRESETS.join(", ")
            ))),
        }
    }

    /// Shape checks and the torsion check on the connection.
    pub fn validate(&self) -> Result<()> {
        if self.n == 0 {
            return Err(Error::InvalidScenario("n must be positive".into()));
        }
        if self.samples.base_points == 0 {
            return Err(Error::InvalidScenario("samples.base_points must be positive".into()));
        }
        self.connection::<Rational>()?;
        Ok(())
    }

    pub fn connection<T: Scalar>(&self) -> Result<Connection<T>> {
        let m = 2 * self.n;
        let mut entries = Vec::with_capacity(self.connection.gamma.len());
        for (key, terms) in &self.connection.gamma {
            let idx = parse_key(key, m)?;
            entries.push((idx, Poly::from_json(m, terms)?));
        }
        Connection::from_entries(self.n, entries).map_err(|e| Error::InvalidScenario(e.to_string()))
    }
}

fn parse_key(key: &str, m: usize) -> Result<(usize, usize, usize)> {
    let bad = || Error::InvalidScenario(format!("gamma key `{key}`: expected \"k,i,j\" with 1 ≤ k,i,j ≤ {m}"));
    let parts: Vec<usize> = key.split(',').map(|s| s.trim().parse::<usize>()).collect::<std::result::Result<_, _>>().map_err(|_| bad())?;
    match parts[..] {
        [k, i, j] if (1..=m).contains(&k) && (1..=m).contains(&i) && (1..=m).contains(&j) => Ok((k - 1, i - 1, j - 1)),
        _ => Err(bad()),
    }
}
