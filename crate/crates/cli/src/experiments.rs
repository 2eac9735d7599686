//! Dispatch from a validated config to the library routines.

use crate::config::{Experiment, ExperimentConfig};
use anyhow::{anyhow, bail, Result};
use logcorr::branching::{self, BranchingMode, TreeConfig};
use logcorr::closed_forms;
use logcorr::ensembles::{sample_eigenphases, Group};
use logcorr::mom::{self, TorusQuadOptions};
use logcorr::number_models::{self, ModelConfig, Variant};
use logcorr::rng::{replicate_rng, StreamRng};
use logcorr::{charpoly, stats};
use num_rational::Ratio;
use serde_json::{json, Map, Value};
use std::f64::consts::LN_2;

#[derive(Debug, Clone, PartialEq)]
pub enum Cell {
    Int(i64),
    Float(f64),
    Text(String),
}

impl From<i64> for Cell {
    fn from(v: i64) -> Cell {
        Cell::Int(v)
    }
}

impl From<usize> for Cell {
    fn from(v: usize) -> Cell {
        Cell::Int(v as i64)
    }
}

impl From<f64> for Cell {
    fn from(v: f64) -> Cell {
        Cell::Float(v)
    }
}

impl From<String> for Cell {
    fn from(v: String) -> Cell {
        Cell::Text(v)
    }
}

impl From<&str> for Cell {
    fn from(v: &str) -> Cell {
        Cell::Text(v.to_string())
    }
}

/// Rows plus a free-form summary object for the manifest.
#[derive(Debug, Clone, PartialEq)]
pub struct ResultTable {
    pub columns: Vec<String>,
    pub rows: Vec<Vec<Cell>>,
    pub summary: Map<String, Value>,
}

impl ResultTable {
    fn new(experiment: Experiment) -> ResultTable {
        ResultTable { columns: experiment.info().columns.iter().map(|c| c.to_string()).collect(), rows: Vec::new(), summary: Map::new() }
    }

    fn push(&mut self, row: Vec<Cell>) {
        debug_assert_eq!(row.len(), self.columns.len());
        self.rows.push(row);
    }

    fn note(&mut self, key: &str, value: impl Into<Value>) {
        self.summary.insert(key.to_string(), value.into());
    }
}

/// Root stream for a run: stable in (seed, experiment name).
fn root_rng(cfg: &ExperimentConfig) -> StreamRng {
    replicate_rng(cfg.seed, cfg.experiment.name(), 0)
}

fn compact_group(cfg: &ExperimentConfig) -> Result<Group> {
    let g = Group::parse(&cfg.string("group")?).map_err(|e| anyhow!("params.group: {e}"))?;
    if g == Group::CircularBeta {
        bail!("params.group: cbe is not a compact group");
    }
    Ok(g)
}

fn parse_ratio(key: &str, s: &str) -> Result<Ratio<i64>> {
    let bad = || anyhow!("params.{key}: `{s}` is not a rational number");
    let r = match s.split_once('/') {
        Some((a, b)) => {
            let (a, b): (i64, i64) = (a.trim().parse().map_err(|_| bad())?, b.trim().parse().map_err(|_| bad())?);
            if b == 0 {
                return Err(bad());
            }
            Ratio::new(a, b)
        }
        None => Ratio::from_integer(s.trim().parse().map_err(|_| bad())?),
    };
    if r < Ratio::from_integer(0) {
        bail!("params.{key}: must be non-negative");
    }
    Ok(r)
}

pub fn run_experiment(cfg: &ExperimentConfig) -> Result<ResultTable> {
    cfg.validate()?;
    let mut t = ResultTable::new(cfg.experiment);
    let mut rng = root_rng(cfg);
    match cfg.experiment {
        Experiment::FieldMax => {
            let sizes: Vec<usize> = cfg.ints_in("N", 2, 1 << 16)?.into_iter().map(|n| n as usize).collect();
            let trials = cfg.int_in("trials", 2, 1_000_000)? as usize;
            let grid = cfg.int_in("grid_factor", 2, 64)? as usize;
            let refine = cfg.int_in("refine_iters", 0, 200)? as usize;
            let seed = logcorr::rng::child_seed(&mut rng);
            let r = charpoly::field_max_experiment(&sizes, trials, grid, refine, seed)?;
            for (n, e) in r.sizes.iter().zip(&r.mean_max) {
                t.push(vec![(*n).into(), e.mean.into(), e.std_err.into(), (e.mean - (*n as f64).ln()).into()]);
            }
            t.note("loglog_slope", r.loglog_slope);
            t.note("loglog_slope_std_err", r.loglog_slope_err);
        }
        Experiment::Clt => {
            let group = compact_group(cfg)?;
            let n = cfg.int_in("N", 3, 4096)? as usize;
            let trials = cfg.int_in("trials", 100, 10_000_000)? as usize;
            let s = charpoly::clt_experiment(group, n, trials, &mut rng)?;
            for (name, m) in [("real", s.real), ("imag", s.imag)] {
                t.push(vec![name.into(), m.mean.into(), m.variance.into(), m.third_moment.into(), m.ks_normal.into()]);
            }
            t.note("ks_real", s.real.ks_normal);
            t.note("ks_imag", s.imag.ks_normal);
        }
        Experiment::PairCorrelation => {
            let n = cfg.int_in("N", 2, 4096)? as usize;
            let trials = cfg.int_in("trials", 1, 1_000_000)? as usize;
            let bin = cfg.float("bin_width")?;
            let x_max = cfg.float("x_max")?;
            let seed = logcorr::rng::child_seed(&mut rng);
            let samples: Vec<_> = stats::replicate(seed, "pair-correlation", trials, |r| sample_eigenphases(Group::Unitary, n, None, r))
                .into_iter()
                .collect::<logcorr::Result<_>>()?;
            let h = charpoly::pair_correlation(&samples, bin, x_max)?;
            let mut sup: f64 = 0.0;
            for (w, v) in h.edges.windows(2).zip(&h.values) {
                let d = charpoly::dyson_kernel_average(w[0], w[1]);
                sup = sup.max((v - d).abs());
                t.push(vec![w[0].into(), w[1].into(), (*v).into(), d.into()]);
            }
            t.note("sup_deviation", sup);
        }
        Experiment::Covariance => {
            let n = cfg.int_in("N", 1, 1 << 16)? as usize;
            let seps = cfg.floats("separations")?;
            let trials = cfg.int_in("trials", 2, 10_000_000)? as usize;
            let est = charpoly::covariance_profile(n, &seps, trials, &mut rng)?;
            for (s, e) in seps.iter().zip(&est) {
                let asym = -2.0 * (2.0 * (s / 2.0).sin()).abs().ln();
                t.push(vec![(*s).into(), e.mean.into(), e.std_err.into(), asym.into()]);
            }
        }
        Experiment::MomExact => {
            let k = cfg.int_in("k", 1, 16)? as u32;
            let beta = cfg.int_in("beta", 1, 16)? as u32;
            for n in cfg.ints_in("N", 0, 1 << 12)? {
                let v = mom::mom_exact_unitary(k, beta, n as u32)?;
                t.push(vec![n.into(), v.to_string().into()]);
            }
        }
        Experiment::MomToeplitz => {
            let k = cfg.int_in("k", 1, 8)? as u32;
            let beta = cfg.float("beta")?;
            let ns = cfg.ints_in("N", 1, 1 << 14)?;
            let mut opts = TorusQuadOptions::new(cfg.int_in("quad_nodes", 64, 1 << 16)? as usize);
            opts.rel_tol = cfg.float("rel_tol")?;
            let mut xs = Vec::new();
            let mut ys = Vec::new();
            for n in ns {
                let q = mom::mom_toeplitz_with(k, beta, n as usize, &opts)?;
                xs.push((n as f64).ln());
                ys.push(q.value.ln());
                t.push(vec![n.into(), q.value.into(), q.previous.into(), q.nodes.into(), q.tail_bound.into()]);
            }
            if xs.len() >= 2 {
                t.note("loglog_slope", stats::slope(&xs, &ys));
            }
        }
        Experiment::MomMc => {
            let group = compact_group(cfg)?;
            let k = cfg.int_in("k", 1, 16)? as u32;
            let beta = cfg.float("beta")?;
            let trials = cfg.int_in("trials", 100, 10_000_000)? as usize;
            let factor = cfg.int_in("theta_factor", 4, 1024)? as usize;
            for n in cfg.ints_in("N", 1, 4096)? {
                let e = mom::mom_monte_carlo(group, k, beta, n as usize, trials, factor * n as usize, &mut rng)?;
                t.push(vec![n.into(), e.mean.into(), e.std_err.into()]);
            }
        }
        Experiment::MomPoly => {
            let k = cfg.int_in("k", 1, 4)? as u32;
            let beta = cfg.int_in("beta", 1, 4)? as u32;
            let p = mom::mom_polynomial(k, beta)?;
            for (d, c) in p.poly.coeffs().iter().enumerate() {
                t.push(vec![d.into(), c.to_string().into(), closed_forms::to_f64(c).into()]);
            }
            t.note("polynomial", p.poly.to_string());
        }
        Experiment::BranchingMom => {
            let k = cfg.int_in("k", 0, 8)? as u32;
            let beta = parse_ratio("beta", &cfg.string("beta")?)?;
            let mode = match cfg.string("mode")?.as_str() {
                "recursion" => BranchingMode::Recursion,
                "brute-force" => BranchingMode::BruteForce,
                other => bail!("params.mode: `{other}` is not recursion or brute-force"),
            };
            for n in cfg.ints_in("n", 0, 64)? {
                let v = branching::mom_branching_exact(k, beta, n as u32, mode)?;
                let exact = v.to_rational().map(|r| r.to_string()).unwrap_or_default();
                t.push(vec![n.into(), v.to_f64().into(), exact.into()]);
            }
        }
        Experiment::BranchingMax => {
            let depths: Vec<u32> = cfg.ints_in("n", 1, branching::MAX_DEPTH as i64)?.into_iter().map(|n| n as u32).collect();
            let sigma2 = cfg.float_or("sigma2", branching::default_sigma2())?;
            let trials = cfg.int_in("trials", 500, 10_000_000)? as usize;
            let (r, predicted) = match cfg.string("model")?.as_str() {
                "brw" => (branching::brw_max_experiment(&depths, sigma2, trials, &mut rng)?, -1.5),
                "rem" => (branching::rem_max_experiment(&depths, sigma2, trials, &mut rng)?, -0.5),
                other => bail!("params.model: `{other}` is not brw or rem"),
            };
            for (n, e) in r.depths.iter().zip(&r.mean_max) {
                t.push(vec![(*n as i64).into(), e.mean.into(), e.std_err.into(), (r.speed * *n as f64).into()]);
            }
            t.note("speed", r.speed);
            t.note("log_coefficient", r.log_coefficient);
            t.note("log_coefficient_std_err", r.log_coefficient_se);
            t.note("log_coefficient_predicted", predicted * sigma2 / r.speed);
            t.note("fitted_speed", r.fitted_speed);
        }
        Experiment::Freezing => {
            let n = cfg.int_in("n", 1, branching::MAX_DEPTH as i64)? as u32;
            let sigma2 = cfg.float_or("sigma2", branching::default_sigma2())?;
            let betas = cfg.floats("betas")?;
            let trials = cfg.int_in("trials", 100, 10_000_000)? as usize;
            let tree = TreeConfig::new(n, sigma2)?;
            let curve = branching::free_energy_curve(tree, &betas, trials, &mut rng)?;
            let beta_c = (LN_2 / (2.0 * sigma2)).sqrt();
            for (b, e) in betas.iter().zip(&curve) {
                let pred = if *b < beta_c { (LN_2 + 2.0 * b * b * sigma2) / (b * LN_2) } else { 2.0 * tree.speed() / LN_2 };
                t.push(vec![(*b).into(), e.mean.into(), e.std_err.into(), pred.into()]);
            }
            t.note("critical_beta", beta_c);
        }
        Experiment::ZetaModel => {
            let n = cfg.int_in("n", 1, 4)? as u32;
            let variant = match cfg.string("variant")?.as_str() {
                "steinhaus" => Variant::Steinhaus,
                "gaussian" => Variant::Gaussian,
                other => bail!("params.variant: `{other}` is not steinhaus or gaussian"),
            };
            let mut model = ModelConfig::new(n, variant);
            if cfg.has("grid_size") {
                model.grid_size = cfg.int_in("grid_size", 2, 1 << 22)? as usize;
            }
            model.second_order = cfg.bool("second_order")?;
            let trials = cfg.int_in("trials", 1, 10_000_000)? as usize;
            let r = number_models::model_max_experiment(model, trials, &mut rng)?;
            let inc = number_models::increment_covariance_sum(n)?;
            for (name, v) in [
                ("mean_max", r.mean_max.mean),
                ("mean_max_std_err", r.mean_max.std_err),
                ("leading", r.leading),
                ("corrected", r.corrected),
                ("ratio_leading", r.ratio_leading),
                ("ratio_corrected", r.ratio_corrected),
                ("increment_covariance_sum", inc),
            ] {
                t.push(vec![name.into(), v.into()]);
                t.note(name, v);
            }
        }
        Experiment::ClosedForm => closed_form(cfg, &mut t)?,
        Experiment::Secular => {
            let eta = cfg.int_in("eta", 1, 16)? as usize;
            let n = cfg.int_in("N", 1, 4096)? as usize;
            let trials = cfg.int_in("trials", 1, 10_000_000)? as usize;
            for m in cfg.ints_in("m", 0, (eta * n) as i64)? {
                let e = charpoly::secular_sum_moment(eta, m as usize, n, trials, &mut rng)?;
                t.push(vec![m.into(), e.mean.into(), e.std_err.into()]);
            }
        }
    }
    Ok(t)
}

fn closed_form(cfg: &ExperimentConfig, t: &mut ResultTable) -> Result<()> {
    let quantity = cfg.string("quantity")?;
    let allowed: &[&str] = match quantity.as_str() {
        "keating-snaith" => &["N", "beta"],
        "unitary-coefficient" => &["beta"],
        "symmetry-coefficient" => &["group", "beta"],
        "arithmetic-factor" => &["beta", "p_max"],
        "gumbel-density" => &["y"],
        "mom-prediction" => &["group", "k", "beta", "N"],
        "bramson" => &["N", "sigma2"],
        "selberg" => &["selberg.a", "selberg.b", "selberg.alpha", "selberg.beta", "selberg.gamma", "selberg.n"],
        other => bail!("params.quantity: unknown closed form `{other}`"),
    };
    for key in cfg.params.keys() {
        if key != "quantity" && !allowed.contains(&key.as_str()) {
            bail!("params.{key}: not used by quantity {quantity}");
        }
    }
    match quantity.as_str() {
        "keating-snaith" => {
            let beta = cfg.float("beta")?;
            for n in cfg.ints_in("N", 0, 1 << 30)? {
                t.push(vec![format!("N={n}").into(), closed_forms::keating_snaith_moment(n as u64, beta)?.into()]);
            }
        }
        "unitary-coefficient" => {
            let beta = cfg.float("beta")?;
            t.push(vec![format!("beta={beta}").into(), closed_forms::unitary_coefficient(beta).into()]);
        }
        "symmetry-coefficient" => {
            let group = Group::parse(&cfg.string("group")?).map_err(|e| anyhow!("params.group: {e}"))?;
            let beta = cfg.float("beta")?;
            t.push(vec![format!("beta={beta}").into(), closed_forms::symmetry_coefficient(group, beta)?.into()]);
        }
        "arithmetic-factor" => {
            let beta = cfg.float("beta")?;
            let p_max = cfg.int_in("p_max", 2, 1_000_000_000)? as u64;
            t.push(vec![format!("beta={beta}").into(), closed_forms::zeta_arithmetic_factor(beta, p_max)?.into()]);
        }
        "gumbel-density" => {
            for y in cfg.floats("y")? {
                t.push(vec![format!("y={y}").into(), closed_forms::gumbel_sum_density(y).into()]);
            }
        }
        "mom-prediction" => {
            let group = Group::parse(&cfg.string("group")?).map_err(|e| anyhow!("params.group: {e}"))?;
            let (k, beta) = (cfg.float("k")?, cfg.float("beta")?);
            for n in cfg.ints_in("N", 1, 1 << 30)? {
                let pr = closed_forms::mom_prediction(group, k, beta, n as u64)?;
                let v = pr.value_at(n as f64).unwrap_or(f64::NAN);
                t.push(vec![format!("N={n}").into(), v.into()]);
                t.note("regime", format!("{:?}", pr.regime).to_lowercase());
                t.note("exponent", pr.exponent);
            }
        }
        "bramson" => {
            let sigma2 = cfg.float_or("sigma2", branching::default_sigma2())?;
            for n in cfg.ints_in("N", 2, 1 << 30)? {
                let b = closed_forms::bramson_prediction(n as f64, sigma2)?;
                t.push(vec![format!("n={n}").into(), b.log_correlated.into()]);
                t.note("speed", b.c);
            }
        }
        "selberg" => {
            let f = |k: &str| cfg.float(&format!("selberg.{k}"));
            let n = cfg.int_in("selberg.n", 1, 10_000)? as u32;
            let v = closed_forms::selberg_integral(f("a")?, f("b")?, f("alpha")?, f("beta")?, f("gamma")?, n)?;
            t.push(vec![format!("n={n}").into(), v.into()]);
        }
        _ => unreachable!(),
    }
    t.note("quantity", json!(quantity));
    Ok(())
}
