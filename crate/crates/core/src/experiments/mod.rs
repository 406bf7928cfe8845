//! Named, reproducible verification scenarios.
//!
//! Each run takes an [`ExperimentConfig`] that fully determines it and returns
//! a [`VerificationReport`] echoing that config. Reports contain no clock
//! readings, so equal configs give byte-identical JSON.

mod bounds;
mod scalar;

pub use bounds::run_bound_suite;
pub use scalar::{comb, f_m, max_usable_lambda, rademacher_ratio, run_gaussian_limits, run_homogeneous_constraint, run_indicator_norm, run_rademacher_divergence};

use crate::error::{Error, Result};
use crate::function_lab::Grid;
use crate::io::{self, Real};
use crate::roots::log_space;
use crate::young::YoungTriple;
use crate::dsl::parse_young;
use serde::{Deserialize, Serialize};
use std::collections::{BTreeMap, BTreeSet};
use std::path::Path;

pub const SCHEMA_VERSION: u32 = 1;

pub const EXPERIMENTS: [&str; 11] = [
    "indicator",
    "rademacher",
    "gaussian_limits",
    "homogeneous",
    "mt1",
    "mt2",
    "corollary_L1",
    "corollary_Linf",
    "prop31",
    "prop32",
    "prop_convo",
];

pub const BOUND_SUITES: [&str; 7] = ["mt1", "mt2", "corollary_L1", "corollary_Linf", "prop31", "prop32", "prop_convo"];

#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct GridConfig {
    pub half_width: f64,
    pub n: usize,
}

impl GridConfig {
    pub fn grid(&self) -> Result<Grid> {
        Grid::new(self.half_width, self.n)
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields, default)]
pub struct Tolerances {
    /// Relative error for closed-form values.
    pub exact: f64,
    /// Max-norm deviation for operator identities.
    pub identity: f64,
    /// Relative error for limits.
    pub limit: f64,
    /// Absolute error for fitted log-log slopes.
    pub slope: f64,
}

impl Default for Tolerances {
    fn default() -> Self {
        Self { exact: 1e-7, identity: 1e-8, limit: 0.01, slope: 0.01 }
    }
}

/// Scenario-specific knobs; each run reads only its own.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields, default)]
pub struct Params {
    /// `indicator`: Young function specs.
    pub young: Vec<String>,
    /// `indicator`: interval lengths `a` of `χ_[0,a]`.
    pub lengths: Vec<f64>,
    /// `rademacher`: piece length.
    pub a: f64,
    /// `rademacher`: largest `N` in `R(N)`.
    pub n_max: usize,
    /// `rademacher`: comb sizes checked against the norm lower bound.
    pub comb_sizes: Vec<usize>,
    /// `rademacher`: number of random sign vectors per comb size.
    pub sign_vectors: usize,
    /// `gaussian_limits`: difference profile `M` (`gauss`, `bump`, `sign[:w=]`, `@file.csv`).
    pub profile: String,
    /// `gaussian_limits`: λ values, increasing.
    pub lambdas: Vec<f64>,
    /// `homogeneous`: t values, increasing.
    pub t_grid: Vec<f64>,
    /// `homogeneous`: decades on each side for the Boyd index fit.
    pub boyd_decades: f64,
    /// `prop32`: dilation parameter.
    pub dilation_t: f64,
}

impl Default for Params {
    fn default() -> Self {
        Self {
            young: vec!["power:p=1".into(), "power:p=2".into(), "power:p=3".into(), "exp".into()],
            lengths: vec![0.25, 1.0, 4.0, 16.0],
            a: 1.0,
            n_max: 256,
            comb_sizes: vec![1, 2, 4, 8, 16],
            sign_vectors: 64,
            profile: "gauss".into(),
            lambdas: log_space(1e-3, 50.0, 41),
            t_grid: log_space(1e-2, 1e2, 41),
            boyd_decades: 4.0,
            dilation_t: 2.0,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ExperimentConfig {
    pub name: String,
    pub grid: GridConfig,
    /// Young-triple specs `[Φ₁, Φ₂, Φ₃]`; empty means "drawn per trial" for bound suites.
    #[serde(default)]
    pub triples: Vec<[String; 3]>,
    #[serde(default)]
    pub trials: usize,
    #[serde(default)]
    pub seed: Option<u64>,
    #[serde(default)]
    pub tolerances: Tolerances,
    #[serde(default)]
    pub params: Params,
    #[serde(default)]
    pub output: Option<String>,
}

fn triple_specs(list: &[(f64, f64, f64)]) -> Vec<[String; 3]> {
    list.iter()
        .map(|(a, b, c)| [format!("power:p={a}"), format!("power:p={b}"), format!("power:p={c}")])
        .collect()
}

impl ExperimentConfig {
    /// The shipped configuration of a named experiment.
    pub fn defaults(name: &str) -> Result<Self> {
        let (grid, triples, trials) = match name {
            "indicator" => (GridConfig { half_width: 32.0, n: 4096 }, vec![], 0),
            "rademacher" => (GridConfig { half_width: 32.0, n: 4096 }, triple_specs(&[(4.0, 4.0, 1.0), (2.0, 2.0, 1.0)]), 0),
            "gaussian_limits" => (GridConfig { half_width: 32.0, n: 4096 }, triple_specs(&[(4.0, 4.0, 1.0), (2.0, 2.0, 1.0)]), 0),
            "homogeneous" => (GridConfig { half_width: 32.0, n: 4096 }, triple_specs(&[(2.0, 2.0, 1.0), (2.0, 2.0, 4.0)]), 0),
            "mt1" | "mt2" | "corollary_L1" | "corollary_Linf" => (GridConfig { half_width: 16.0, n: 1024 }, vec![], 200),
            "prop31" | "prop_convo" => (GridConfig { half_width: 16.0, n: 512 }, triple_specs(&[(2.0, 2.0, 1.0)]), 50),
            "prop32" => (GridConfig { half_width: 16.0, n: 1024 }, triple_specs(&[(2.0, 2.0, 1.0)]), 50),
            other => return Err(unknown(other)),
        };
        Ok(Self {
            name: name.into(),
            grid,
            triples,
            trials,
            seed: None,
            tolerances: Tolerances::default(),
            params: Params::default(),
            output: None,
        })
    }

    pub fn from_json(text: &str) -> Result<Self> {
        let cfg: Self = serde_json::from_str(text).map_err(|e| Error::Parse(format!("config: {e}")))?;
        if !EXPERIMENTS.contains(&cfg.name.as_str()) {
            return Err(unknown(&cfg.name));
        }
        Ok(cfg)
    }

    pub fn load(path: &Path) -> Result<Self> {
        let text = std::fs::read_to_string(path).map_err(|e| Error::Io(format!("{}: {e}", path.display())))?;
        Self::from_json(&text)
    }

    pub fn young_triples(&self) -> Result<Vec<YoungTriple>> {
        self.triples
            .iter()
            .map(|[a, b, c]| Ok(YoungTriple::new(parse_young(a)?, parse_young(b)?, parse_young(c)?)))
            .collect()
    }

    pub fn is_randomized(&self) -> bool {
        self.name == "rademacher" || BOUND_SUITES.contains(&self.name.as_str())
    }

    /// The seed, which randomized runs must supply.
    pub fn required_seed(&self) -> Result<u64> {
        self.seed
            .ok_or_else(|| Error::InvalidArgument(format!("experiment '{}' is randomized and needs a seed", self.name)))
    }
}

fn unknown(name: &str) -> Error {
    Error::InvalidArgument(format!("unknown experiment '{name}' (known: {}, all)", EXPERIMENTS.join(", ")))
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Verdict {
    Pass,
    Fail,
    /// A classification with no expected outcome (e.g. "divergent").
    Info,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Claim {
    pub name: String,
    pub verdict: Verdict,
    pub detail: String,
}

impl Claim {
    pub fn check(name: impl Into<String>, pass: bool, detail: impl Into<String>) -> Self {
        let verdict = if pass { Verdict::Pass } else { Verdict::Fail };
        Self { name: name.into(), verdict, detail: detail.into() }
    }

    pub fn info(name: impl Into<String>, detail: impl Into<String>) -> Self {
        Self { name: name.into(), verdict: Verdict::Info, detail: detail.into() }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct TrialRecord {
    pub trial: usize,
    pub label: String,
    pub values: BTreeMap<String, Real>,
    pub pass: bool,
}

impl TrialRecord {
    pub fn new(trial: usize, label: impl Into<String>, values: &[(&str, f64)], pass: bool) -> Self {
        Self {
            trial,
            label: label.into(),
            values: values.iter().map(|(k, v)| (k.to_string(), Real(*v))).collect(),
            pass,
        }
    }

    pub fn get(&self, key: &str) -> Option<f64> {
        self.values.get(key).map(|r| r.0)
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct VerificationReport {
    pub schema_version: u32,
    pub experiment: String,
    pub config: ExperimentConfig,
    pub trials: Vec<TrialRecord>,
    pub summary: BTreeMap<String, Real>,
    pub claims: Vec<Claim>,
    pub notes: Vec<String>,
    pub verdict: Verdict,
}

impl VerificationReport {
    pub fn new(config: &ExperimentConfig, trials: Vec<TrialRecord>, summary: &[(&str, f64)], claims: Vec<Claim>) -> Self {
        let failed = claims.iter().any(|c| c.verdict == Verdict::Fail) || trials.iter().any(|t| !t.pass);
        Self {
            schema_version: SCHEMA_VERSION,
            experiment: config.name.clone(),
            config: config.clone(),
            trials,
            summary: summary.iter().map(|(k, v)| (k.to_string(), Real(*v))).collect(),
            claims,
            notes: Vec::new(),
            verdict: if failed { Verdict::Fail } else { Verdict::Pass },
        }
    }

    pub fn with_notes(mut self, notes: &[&str]) -> Self {
        self.notes = notes.iter().map(|s| s.to_string()).collect();
        self
    }

    pub fn passed(&self) -> bool {
        self.verdict == Verdict::Pass
    }

    pub fn summary_value(&self, key: &str) -> Option<f64> {
        self.summary.get(key).map(|r| r.0)
    }

    pub fn claim(&self, name: &str) -> Option<&Claim> {
        self.claims.iter().find(|c| c.name == name)
    }

    pub fn to_json(&self) -> Result<String> {
        io::to_json(self)
    }

    pub fn from_json(text: &str) -> Result<Self> {
        serde_json::from_str(text).map_err(|e| Error::Parse(format!("report: {e}")))
    }

    /// Per-trial CSV: `trial,label,pass` then the union of value keys in sorted order.
    pub fn trials_csv(&self) -> Result<String> {
        let keys: BTreeSet<&String> = self.trials.iter().flat_map(|t| t.values.keys()).collect();
        let mut w = csv::Writer::from_writer(Vec::new());
        let mut header = vec!["trial".to_string(), "label".to_string(), "pass".to_string()];
        header.extend(keys.iter().map(|k| k.to_string()));
        w.write_record(&header).map_err(|e| Error::Io(e.to_string()))?;
        for t in &self.trials {
            let mut row = vec![t.trial.to_string(), t.label.clone(), t.pass.to_string()];
            row.extend(keys.iter().map(|k| t.values.get(*k).map_or(String::new(), |v| io::format_real(v.0))));
            w.write_record(&row).map_err(|e| Error::Io(e.to_string()))?;
        }
        let bytes = w.into_inner().map_err(|e| Error::Io(e.to_string()))?;
        String::from_utf8(bytes).map_err(|e| Error::Io(e.to_string()))
    }

    /// Writes `<dir>/<experiment>.json` and `<dir>/<experiment>.csv`.
    pub fn write_to(&self, dir: &Path) -> Result<()> {
        std::fs::create_dir_all(dir)?;
        std::fs::write(dir.join(format!("{}.json", self.experiment)), self.to_json()?)?;
        std::fs::write(dir.join(format!("{}.csv", self.experiment)), self.trials_csv()?)?;
        Ok(())
    }
}

/// Stream separator so different experiments never share trial seeds.
pub(crate) fn stream_seed(seed: u64, name: &str) -> u64 {
    // FNV-1a
    let h = name.bytes().fold(0xcbf2_9ce4_8422_2325u64, |h, b| (h ^ b as u64).wrapping_mul(0x0100_0000_01b3));
    seed ^ h
}

/// Runs one experiment from its config.
pub fn run(config: &ExperimentConfig) -> Result<VerificationReport> {
    match config.name.as_str() {
        "indicator" => run_indicator_norm(config),
        "rademacher" => run_rademacher_divergence(config),
        "gaussian_limits" => run_gaussian_limits(config),
        "homogeneous" => run_homogeneous_constraint(config),
        s if BOUND_SUITES.contains(&s) => run_bound_suite(config),
        other => Err(unknown(other)),
    }
}

/// Every shipped experiment with its default config and the given seed.
pub fn run_all(seed: u64) -> Result<Vec<VerificationReport>> {
    EXPERIMENTS
        .iter()
        .map(|name| {
            let mut cfg = ExperimentConfig::defaults(name)?;
            cfg.seed = Some(seed);
            run(&cfg)
        })
        .collect()
}
