//! Experiment configuration files: one TOML document per run.
//!
//! ```toml
//! experiment = "mom-exact"
//! seed = 7
//! output_path = "out"
//!
//! [params]
//! k = 2
//! beta = 1
//! N = "1..6"
//! ```
//!
//! Nested tables under `[params]` are flattened to dotted keys.

use anyhow::{anyhow, bail, Context, Result};
use serde::{Deserialize, Serialize};
use std::collections::BTreeMap;
use std::fmt;
use std::path::PathBuf;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Experiment {
    FieldMax,
    Clt,
    PairCorrelation,
    Covariance,
    MomExact,
    MomToeplitz,
    MomMc,
    MomPoly,
    BranchingMom,
    BranchingMax,
    Freezing,
    ZetaModel,
    ClosedForm,
    Secular,
}

impl Experiment {
    pub const ALL: [Experiment; 14] = [
        Experiment::FieldMax,
        Experiment::Clt,
        Experiment::PairCorrelation,
        Experiment::Covariance,
        Experiment::MomExact,
        Experiment::MomToeplitz,
        Experiment::MomMc,
        Experiment::MomPoly,
        Experiment::BranchingMom,
        Experiment::BranchingMax,
        Experiment::Freezing,
        Experiment::ZetaModel,
        Experiment::ClosedForm,
        Experiment::Secular,
    ];

    pub fn name(&self) -> &'static str {
        match self {
            Experiment::FieldMax => "field-max",
            Experiment::Clt => "clt",
            Experiment::PairCorrelation => "pair-correlation",
            Experiment::Covariance => "covariance",
            Experiment::MomExact => "mom-exact",
            Experiment::MomToeplitz => "mom-toeplitz",
            Experiment::MomMc => "mom-mc",
            Experiment::MomPoly => "mom-poly",
            Experiment::BranchingMom => "branching-mom",
            Experiment::BranchingMax => "branching-max",
            Experiment::Freezing => "freezing",
            Experiment::ZetaModel => "zeta-model",
            Experiment::ClosedForm => "closed-form",
            Experiment::Secular => "secular",
        }
    }

    pub fn parse(s: &str) -> Result<Experiment> {
        Experiment::ALL
            .into_iter()
            .find(|e| e.name() == s)
            .ok_or_else(|| anyhow!("unknown experiment `{s}` (see `list-experiments`)"))
    }
}

impl fmt::Display for Experiment {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

/// Parameter value kinds accepted in `[params]`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Kind {
    Int,
    Float,
    Bool,
    Str,
    /// An integer, an array of integers, `"a..b"` (inclusive) or `"a..b*r"` (geometric).
    IntList,
    /// A number or an array of numbers.
    FloatList,
}

impl Kind {
    fn describe(&self) -> &'static str {
        match self {
            Kind::Int => "integer",
            Kind::Float => "number",
            Kind::Bool => "boolean",
            Kind::Str => "string",
            Kind::IntList => "integer list or range",
            Kind::FloatList => "number list",
        }
    }

    fn accepts(&self, v: &toml::Value) -> bool {
        use toml::Value as V;
        match (self, v) {
            (Kind::Int, V::Integer(_)) => true,
            (Kind::Float, V::Integer(_) | V::Float(_)) => true,
            (Kind::Bool, V::Boolean(_)) => true,
            (Kind::Str, V::String(_)) => true,
            (Kind::IntList, V::Integer(_) | V::String(_)) => true,
            (Kind::IntList, V::Array(a)) => a.iter().all(|x| x.is_integer()),
            (Kind::FloatList, V::Integer(_) | V::Float(_)) => true,
            (Kind::FloatList, V::Array(a)) => a.iter().all(|x| x.is_integer() || x.is_float()),
            _ => false,
        }
    }
}

#[derive(Debug, Clone, Copy)]
pub struct ParamSpec {
    pub key: &'static str,
    pub kind: Kind,
    /// TOML literal used when the key is absent; `None` means required.
    pub default: Option<&'static str>,
    pub doc: &'static str,
}

const fn p(key: &'static str, kind: Kind, default: Option<&'static str>, doc: &'static str) -> ParamSpec {
    ParamSpec { key, kind, default, doc }
}

const OPT: Option<&str> = Some("");

impl ParamSpec {
    pub fn default_value(&self) -> Option<toml::Value> {
        match self.default {
            None | Some("") => None,
            Some(lit) => {
                let doc: toml::Table = toml::from_str(&format!("v = {lit}")).expect("valid default literal");
                doc.get("v").cloned()
            }
        }
    }

    pub fn is_required(&self) -> bool {
        self.default.is_none()
    }
}

pub struct ExperimentInfo {
    pub summary: &'static str,
    pub params: Vec<ParamSpec>,
    pub columns: &'static [&'static str],
}

impl Experiment {
    pub fn info(&self) -> ExperimentInfo {
        use Kind::*;
        match self {
            Experiment::FieldMax => ExperimentInfo {
                summary: "Maxima of log|P_N| over the circle for Haar U(N); regression of (mean max - log N) on log log N.",
                params: vec![
                    p("N", IntList, Some("\"64..4096*4\""), "matrix sizes"),
                    p("trials", Int, Some("400"), "samples per size"),
                    p("grid_factor", Int, Some("8"), "grid points per eigenvalue"),
                    p("refine_iters", Int, Some("30"), "golden-section refinement steps"),
                ],
                columns: &["N", "mean_max", "std_err", "mean_max_minus_log_N"],
            },
            Experiment::Clt => ExperimentInfo {
                summary: "Moments and KS distance of Re/Im log P_N(A,0)/sqrt(log(N)/2).",
                params: vec![
                    p("group", Str, Some("\"unitary\""), "unitary, so-even, o-minus or symplectic"),
                    p("N", Int, Some("64"), "matrix size parameter"),
                    p("trials", Int, Some("1000"), "samples"),
                ],
                columns: &["part", "mean", "variance", "third_moment", "ks_normal"],
            },
            Experiment::PairCorrelation => ExperimentInfo {
                summary: "Histogram of rescaled CUE eigenphase differences against 1 - (sin(pi x)/(pi x))^2.",
                params: vec![
                    p("N", Int, Some("50"), "matrix size"),
                    p("trials", Int, Some("1000"), "sampled matrices"),
                    p("bin_width", Float, Some("0.25"), "bin width in mean spacings"),
                    p("x_max", Float, Some("4.0"), "histogram range"),
                ],
                columns: &["x_left", "x_right", "empirical", "dyson"],
            },
            Experiment::Covariance => ExperimentInfo {
                summary: "E[V(0)V(s)] for V = -2 log|P_N| over U(N), with the large-N profile -2 log|2 sin(s/2)|.",
                params: vec![
                    p("N", Int, Some("64"), "matrix size"),
                    p("separations", FloatList, Some("[0.05, 0.1, 0.2, 0.5, 1.0, 2.0, 3.0]"), "separations in (0, pi]"),
                    p("trials", Int, Some("2000"), "samples"),
                ],
                columns: &["separation", "covariance", "std_err", "asymptotic"],
            },
            Experiment::MomExact => ExperimentInfo {
                summary: "Exact moments of moments over U(N) for integer k and beta by lattice-point counting.",
                params: vec![
                    p("k", Int, None, "moment order"),
                    p("beta", Int, None, "integer exponent beta"),
                    p("N", IntList, None, "matrix sizes"),
                ],
                columns: &["N", "value"],
            },
            Experiment::MomToeplitz => ExperimentInfo {
                summary: "Moments of moments over U(N) by Toeplitz determinants and torus quadrature; log-log slope in N.",
                params: vec![
                    p("k", Int, None, "moment order"),
                    p("beta", Float, None, "real exponent beta > 0"),
                    p("N", IntList, None, "matrix sizes"),
                    p("quad_nodes", Int, Some("64"), "initial quadrature nodes per circle"),
                    p("rel_tol", Float, Some("1e-7"), "relative tolerance of node doubling"),
                ],
                columns: &["N", "value", "previous", "nodes", "tail_bound"],
            },
            Experiment::MomMc => ExperimentInfo {
                summary: "Monte Carlo moments of moments over a compact group.",
                params: vec![
                    p("group", Str, Some("\"unitary\""), "unitary, so-even, o-minus or symplectic"),
                    p("k", Int, None, "moment order"),
                    p("beta", Float, None, "exponent beta > 0"),
                    p("N", IntList, None, "size parameters"),
                    p("trials", Int, Some("2000"), "sampled matrices"),
                    p("theta_factor", Int, Some("8"), "trapezoid nodes per unit of N (at least 4)"),
                ],
                columns: &["N", "mean", "std_err"],
            },
            Experiment::MomPoly => ExperimentInfo {
                summary: "Exact polynomial in N for the unitary moments of moments at integer k, beta.",
                params: vec![p("k", Int, None, "moment order"), p("beta", Int, None, "integer exponent beta")],
                columns: &["degree", "coefficient", "value"],
            },
            Experiment::BranchingMom => ExperimentInfo {
                summary: "Exact moments of moments of the branching-walk partition function.",
                params: vec![
                    p("k", Int, None, "moment order"),
                    p("beta", Str, None, "rational beta, e.g. \"1/2\" or \"2\""),
                    p("n", IntList, None, "tree depths"),
                    p("mode", Str, Some("\"recursion\""), "recursion or brute-force"),
                ],
                columns: &["n", "value", "exact"],
            },
            Experiment::BranchingMax => ExperimentInfo {
                summary: "Mean maxima of a branching random walk or of the independent (REM) baseline; log n coefficient.",
                params: vec![
                    p("model", Str, Some("\"brw\""), "brw or rem"),
                    p("n", IntList, Some("\"10..22\""), "tree depths"),
                    p("sigma2", Float, OPT, "increment variance (default log(2)/2)"),
                    p("trials", Int, Some("1000"), "samples"),
                ],
                columns: &["n", "mean_max", "std_err", "leading"],
            },
            Experiment::Freezing => ExperimentInfo {
                summary: "Normalised log partition function of the branching walk against the freezing prediction.",
                params: vec![
                    p("n", Int, Some("16"), "tree depth"),
                    p("sigma2", Float, OPT, "increment variance (default log(2)/2)"),
                    p("betas", FloatList, Some("[0.25, 0.5, 0.75, 1.0, 1.5, 2.0]"), "inverse temperatures"),
                    p("trials", Int, Some("200"), "samples"),
                ],
                columns: &["beta", "free_energy", "std_err", "prediction"],
            },
            Experiment::ZetaModel => ExperimentInfo {
                summary: "Maximum of the randomised prime model of log|zeta| on a unit interval.",
                params: vec![
                    p("n", Int, Some("4"), "scale index, log log T = 2^n"),
                    p("variant", Str, Some("\"steinhaus\""), "steinhaus or gaussian"),
                    p("grid_size", Int, OPT, "grid points (default 2^(n+3))"),
                    p("second_order", Bool, Some("false"), "include the U^2/(2p) terms"),
                    p("trials", Int, Some("200"), "samples"),
                ],
                columns: &["quantity", "value"],
            },
            Experiment::ClosedForm => ExperimentInfo {
                summary: "Closed-form values: keating-snaith, unitary-coefficient, symmetry-coefficient, selberg, arithmetic-factor, gumbel-density, mom-prediction, bramson.",
                params: vec![
                    p("quantity", Str, None, "which closed form"),
                    p("N", IntList, OPT, "sizes (keating-snaith, mom-prediction) or depths (bramson)"),
                    p("beta", Float, OPT, "exponent beta"),
                    p("k", Float, OPT, "moment order (mom-prediction)"),
                    p("group", Str, OPT, "group (symmetry-coefficient, mom-prediction)"),
                    p("p_max", Int, OPT, "Euler product cutoff (arithmetic-factor)"),
                    p("y", FloatList, OPT, "evaluation points (gumbel-density)"),
                    p("sigma2", Float, OPT, "increment variance (bramson)"),
                    p("selberg.a", Float, OPT, "Selberg parameter a"),
                    p("selberg.b", Float, OPT, "Selberg parameter b"),
                    p("selberg.alpha", Float, OPT, "Selberg parameter alpha"),
                    p("selberg.beta", Float, OPT, "Selberg parameter beta"),
                    p("selberg.gamma", Float, OPT, "Selberg parameter gamma"),
                    p("selberg.n", Int, OPT, "Selberg dimension"),
                ],
                columns: &["argument", "value"],
            },
            Experiment::Secular => ExperimentInfo {
                summary: "E|sum over j_1+..+j_eta = m of Sc_j1...Sc_jeta|^2 over U(N) for secular coefficients Sc.",
                params: vec![
                    p("eta", Int, Some("1"), "number of factors"),
                    p("m", IntList, None, "total index"),
                    p("N", Int, None, "matrix size"),
                    p("trials", Int, Some("2000"), "samples"),
                ],
                columns: &["m", "mean", "std_err"],
            },
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct ExperimentConfig {
    pub experiment: Experiment,
    /// Flattened leaf values keyed by dotted path.
    pub params: BTreeMap<String, toml::Value>,
    pub seed: u64,
    pub output_path: Option<PathBuf>,
}

#[derive(Deserialize, Serialize)]
#[serde(untagged)]
enum SeedRepr {
    Int(i64),
    Str(String),
}

#[derive(Deserialize, Serialize)]
#[serde(deny_unknown_fields)]
struct RawConfig {
    experiment: String,
    seed: Option<SeedRepr>,
    output_path: Option<PathBuf>,
    #[serde(default)]
    params: toml::Table,
}

fn flatten(prefix: &str, table: &toml::Table, out: &mut BTreeMap<String, toml::Value>) {
    for (k, v) in table {
        let key = if prefix.is_empty() { k.clone() } else { format!("{prefix}.{k}") };
        match v {
            toml::Value::Table(t) => flatten(&key, t, out),
            other => {
                out.insert(key, other.clone());
            }
        }
    }
}

impl ExperimentConfig {
    pub fn new(experiment: Experiment, seed: u64) -> ExperimentConfig {
        ExperimentConfig { experiment, params: BTreeMap::new(), seed, output_path: None }
    }

    pub fn with(mut self, key: &str, value: impl Into<toml::Value>) -> ExperimentConfig {
        self.params.insert(key.to_string(), value.into());
        self
    }

    pub fn parse(text: &str) -> Result<ExperimentConfig> {
        let cfg = ExperimentConfig::parse_unchecked(text)?;
        cfg.validate()?;
        Ok(cfg)
    }

    /// Parse without checking parameters against the experiment's schema.
    pub fn parse_unchecked(text: &str) -> Result<ExperimentConfig> {
        let raw: RawConfig = toml::from_str(text).context("malformed config")?;
        let experiment = Experiment::parse(&raw.experiment)?;
        let seed = match raw.seed {
            None => 0,
            Some(SeedRepr::Int(v)) => u64::try_from(v).map_err(|_| anyhow!("seed: must be non-negative"))?,
            Some(SeedRepr::Str(s)) => s.parse().map_err(|_| anyhow!("seed: `{s}` is not a 64-bit unsigned integer"))?,
        };
        let mut params = BTreeMap::new();
        flatten("", &raw.params, &mut params);
        Ok(ExperimentConfig { experiment, params, seed, output_path: raw.output_path })
    }

    pub fn serialize(&self) -> String {
        let seed = if self.seed <= i64::MAX as u64 { SeedRepr::Int(self.seed as i64) } else { SeedRepr::Str(self.seed.to_string()) };
        let raw = RawConfig {
            experiment: self.experiment.name().to_string(),
            seed: Some(seed),
            output_path: self.output_path.clone(),
            params: self.params.iter().map(|(k, v)| (k.clone(), v.clone())).collect(),
        };
        toml::to_string(&raw).expect("config is serialisable")
    }

    /// Unknown keys, missing required keys and type mismatches, reported per field.
    pub fn validate(&self) -> Result<()> {
        let info = self.experiment.info();
        let mut errors = Vec::new();
        for (key, value) in &self.params {
            match info.params.iter().find(|s| s.key == key) {
                None => errors.push(format!("params.{key}: unknown key for experiment {}", self.experiment)),
                Some(spec) if !spec.kind.accepts(value) => {
                    errors.push(format!("params.{key}: expected {}, got `{value}`", spec.kind.describe()))
                }
                Some(_) => {}
            }
        }
        for spec in &info.params {
            if spec.is_required() && !self.params.contains_key(spec.key) {
                errors.push(format!("params.{}: required ({})", spec.key, spec.doc));
            }
        }
        if errors.is_empty() {
            Ok(())
        } else {
            bail!("invalid config:\n  {}", errors.join("\n  "))
        }
    }

    /// The explicit value or the documented default.
    pub fn value(&self, key: &str) -> Option<toml::Value> {
        if let Some(v) = self.params.get(key) {
            return Some(v.clone());
        }
        self.experiment.info().params.iter().find(|s| s.key == key).and_then(|s| s.default_value())
    }

    pub fn has(&self, key: &str) -> bool {
        self.params.contains_key(key)
    }

    fn require(&self, key: &str) -> Result<toml::Value> {
        self.value(key).ok_or_else(|| anyhow!("params.{key}: required"))
    }

    pub fn int(&self, key: &str) -> Result<i64> {
        self.require(key)?.as_integer().ok_or_else(|| anyhow!("params.{key}: expected integer"))
    }

    pub fn int_in(&self, key: &str, lo: i64, hi: i64) -> Result<i64> {
        let v = self.int(key)?;
        if v < lo || v > hi {
            bail!("params.{key}: {v} outside {lo}..={hi}");
        }
        Ok(v)
    }

    pub fn float(&self, key: &str) -> Result<f64> {
        match self.require(key)? {
            toml::Value::Integer(i) => Ok(i as f64),
            toml::Value::Float(f) => Ok(f),
            other => bail!("params.{key}: expected number, got `{other}`"),
        }
    }

    pub fn float_or(&self, key: &str, fallback: f64) -> Result<f64> {
        if self.value(key).is_some() {
            self.float(key)
        } else {
            Ok(fallback)
        }
    }

    pub fn bool(&self, key: &str) -> Result<bool> {
        self.require(key)?.as_bool().ok_or_else(|| anyhow!("params.{key}: expected boolean"))
    }

    pub fn string(&self, key: &str) -> Result<String> {
        match self.require(key)? {
            toml::Value::String(s) => Ok(s),
            other => bail!("params.{key}: expected string, got `{other}`"),
        }
    }

    pub fn floats(&self, key: &str) -> Result<Vec<f64>> {
        match self.require(key)? {
            toml::Value::Integer(i) => Ok(vec![i as f64]),
            toml::Value::Float(f) => Ok(vec![f]),
            toml::Value::Array(a) => a
                .iter()
                .map(|v| v.as_float().or_else(|| v.as_integer().map(|i| i as f64)))
                .collect::<Option<Vec<_>>>()
                .ok_or_else(|| anyhow!("params.{key}: expected numbers")),
            other => bail!("params.{key}: expected number list, got `{other}`"),
        }
    }

    /// Integer list within lo..=hi.
    pub fn ints_in(&self, key: &str, lo: i64, hi: i64) -> Result<Vec<i64>> {
        let vals = match self.require(key)? {
            toml::Value::Integer(i) => vec![i],
            toml::Value::Array(a) => {
                a.iter().map(|v| v.as_integer()).collect::<Option<Vec<_>>>().ok_or_else(|| anyhow!("params.{key}: expected integers"))?
            }
            toml::Value::String(s) => parse_range(&s).with_context(|| format!("params.{key}"))?,
            other => bail!("params.{key}: expected integer list, got `{other}`"),
        };
        if vals.is_empty() {
            bail!("params.{key}: empty list");
        }
        if let Some(v) = vals.iter().find(|&&v| v < lo || v > hi) {
            bail!("params.{key}: {v} outside {lo}..={hi}");
        }
        Ok(vals)
    }
}

/// `"a..b"` inclusive with unit step, `"a..b*r"` multiplying by r while ≤ b.
pub fn parse_range(s: &str) -> Result<Vec<i64>> {
    let (body, ratio) = match s.split_once('*') {
        Some((b, r)) => (b, Some(r.trim().parse::<i64>().map_err(|_| anyhow!("bad ratio in `{s}`"))?)),
        None => (s, None),
    };
    let (a, b) = body.split_once("..").ok_or_else(|| anyhow!("expected `a..b` or `a..b*r`, got `{s}`"))?;
    let a: i64 = a.trim().parse().map_err(|_| anyhow!("bad range start in `{s}`"))?;
    let b: i64 = b.trim().trim_start_matches('=').parse().map_err(|_| anyhow!("bad range end in `{s}`"))?;
    if a > b {
        bail!("empty range `{s}`");
    }
    match ratio {
        None => Ok((a..=b).collect()),
        Some(r) if r >= 2 && a >= 1 => {
            let mut out = vec![a];
            while let Some(next) = out.last().unwrap().checked_mul(r).filter(|&v| v <= b) {
                out.push(next);
            }
            Ok(out)
        }
        Some(_) => bail!("geometric range `{s}` needs start ≥ 1 and ratio ≥ 2"),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn ranges() {
        assert_eq!(parse_range("1..6").unwrap(), vec![1, 2, 3, 4, 5, 6]);
        assert_eq!(parse_range("32..256*2").unwrap(), vec![32, 64, 128, 256]);
        assert_eq!(parse_range("1..=3").unwrap(), vec![1, 2, 3]);
        assert!(parse_range("5..1").is_err());
        assert!(parse_range("0..8*2").is_err());
    }

    #[test]
    fn defaults_are_valid_literals() {
        for e in Experiment::ALL {
            let info = e.info();
            for spec in &info.params {
                if let Some(v) = spec.default_value() {
                    assert!(spec.kind.accepts(&v), "{e} {}", spec.key);
                }
            }
            assert!(info.columns.len() >= 2);
        }
    }

    #[test]
    fn nested_tables_flatten() {
        let text = "experiment = \"closed-form\"\nseed = 3\n[params]\nquantity = \"selberg\"\n[params.selberg]\na = 1\nn = 2\n";
        let cfg = ExperimentConfig::parse(text).unwrap();
        assert_eq!(cfg.params.get("selberg.a"), Some(&toml::Value::Integer(1)));
        assert_eq!(ExperimentConfig::parse(&cfg.serialize()).unwrap(), cfg);
    }

    #[test]
    fn validation_messages() {
        let err = ExperimentConfig::parse("experiment = \"mom-exact\"\n[params]\nk = 2\nbogus = 1\n").unwrap_err();
        let msg = format!("{err:#}");
        assert!(msg.contains("params.bogus: unknown key"), "{msg}");
        assert!(msg.contains("params.beta: required"), "{msg}");
        assert!(msg.contains("params.N: required"), "{msg}");
        let err = ExperimentConfig::parse("experiment = \"mom-exact\"\n[params]\nk = 2.5\nbeta = 1\nN = 3\n").unwrap_err();
        assert!(format!("{err:#}").contains("params.k: expected integer"));
        assert!(ExperimentConfig::parse("experiment = \"nope\"\n").is_err());
        assert!(ExperimentConfig::parse("experiment = \"clt\"\nextra = 1\n").is_err());
    }

    #[test]
    fn large_seed_round_trips() {
        let cfg = ExperimentConfig::new(Experiment::Clt, u64::MAX);
        assert_eq!(ExperimentConfig::parse(&cfg.serialize()).unwrap(), cfg);
    }
}
