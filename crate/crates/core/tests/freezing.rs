use logcorr::branching::{default_sigma2, free_energy_curve, log_partition_function, simulate_brw, TreeConfig};
use logcorr::rng::replicate_rng;
use std::f64::consts::LN_2;

#[test]
fn zero_temperature_parameter_gives_unit_partition_function() {
    let cfg = TreeConfig::new(10, default_sigma2()).unwrap();
    let mut rng = replicate_rng(5, "freezing", 0);
    let field = simulate_brw(cfg, &mut rng);
    assert!(log_partition_function(&field, 0.0).abs() < 1e-12);
}

#[test]
fn curve_follows_high_temperature_branch_and_flattens() {
    let n = 16;
    let cfg = TreeConfig::new(n, default_sigma2()).unwrap();
    let betas = [0.5, 1.5, 2.0, 3.0];
    let mut rng = replicate_rng(6, "freezing", 0);
    let curve = free_energy_curve(cfg, &betas, 100, &mut rng).unwrap();
    assert!((curve[0].mean - 2.5).abs() < 0.15, "β = 1/2: {}", curve[0].mean);

    // frozen branch: bounded by the limit 2 and nearly flat in β
    let frozen: Vec<f64> = curve[1..].iter().map(|e| e.mean).collect();
    for (b, v) in betas[1..].iter().zip(&frozen) {
        assert!(*v < 2.0 && *v > 1.5, "β = {b}: {v}");
    }
    assert!(frozen.windows(2).all(|w| w[1] <= w[0] && w[0] - w[1] < 0.1), "{frozen:?}");

    // above the transition the curve tracks the normalised mean maximum: 2 E[max]/(n ln 2) + O(1/(βn))
    let mut rng = replicate_rng(6, "freezing-max", 0);
    let mean_max: f64 = (0..100).map(|_| simulate_brw(cfg, &mut rng).max()).sum::<f64>() / 100.0;
    let scale = n as f64 * LN_2;
    for (b, v) in betas[1..].iter().zip(&frozen) {
        let lower = 2.0 * mean_max / scale;
        assert!(*v > lower - 0.02 && *v < lower + 1.0 / b, "β = {b}: {v} vs {lower}");
    }
}
