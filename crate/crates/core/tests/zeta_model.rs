use logcorr::number_models::{model_max_experiment, prime_sieve, ModelConfig, PrimeModel, Variant};
use logcorr::rng::replicate_rng;
use logcorr::stats::{self, Estimate};

fn half_sum_inverse_primes(limit: u64) -> f64 {
    prime_sieve(limit).unwrap().primes.iter().map(|&p| 0.5 / p as f64).sum()
}

#[test]
fn point_mean_and_variance() {
    for variant in [Variant::Steinhaus, Variant::Gaussian] {
        let model = PrimeModel::new(ModelConfig::new(3, variant)).unwrap();
        let rows = stats::replicate(1, "model-moments", 5_000, |r| {
            let x = model.sample(r);
            (x[0], x[37])
        });
        let target = half_sum_inverse_primes(8f64.exp() as u64);
        assert!((model.covariance(0.0) - target).abs() < 1e-12);
        for pick in [0usize, 1] {
            let xs: Vec<f64> = rows.iter().map(|r| if pick == 0 { r.0 } else { r.1 }).collect();
            let m = Estimate::from_samples(&xs);
            assert!(m.z_score(0.0).abs() < 3.0, "{variant:?} mean {m:?}");
            let v = stats::variance(&xs);
            let se = stats::variance_std_err(&xs);
            assert!((v - target).abs() < 3.0 * se, "{variant:?} variance {v} vs {target} (se {se})");
        }
        if variant == Variant::Gaussian {
            let xs: Vec<f64> = rows.iter().map(|r| r.0).collect();
            let skew = stats::third_moment(&xs) / stats::variance(&xs).powf(1.5);
            assert!(skew.abs() < 3.0 * (6.0 / xs.len() as f64).sqrt(), "skewness {skew}");
        }
    }
}

#[test]
fn steinhaus_draws_on_unit_circle() {
    // a single prime below e^2 contributes Re(U_p)/√p at h = 0; levels reconstruct the total
    let model = PrimeModel::new(ModelConfig::new(1, Variant::Steinhaus)).unwrap();
    let mut rng = replicate_rng(3, "levels", 0);
    let levels = model.sample_levels(&mut rng);
    let mut rng = replicate_rng(3, "levels", 0);
    let total = model.sample(&mut rng);
    for (j, t) in total.iter().enumerate() {
        let s: f64 = levels.iter().map(|l| l[j]).sum();
        assert!((s - t).abs() < 1e-12);
    }
    // primes 2, 3, 5, 7: |X(h)| ≤ Σ 1/√p
    let bound: f64 = [2.0f64, 3.0, 5.0, 7.0].iter().map(|p| 1.0 / p.sqrt()).sum();
    for _ in 0..100 {
        assert!(model.sample(&mut rng).iter().all(|x| x.abs() <= bound + 1e-12));
    }
}

#[test]
fn covariance_at_quarter_separation() {
    let model = PrimeModel::new(ModelConfig::new(4, Variant::Steinhaus)).unwrap();
    let c = model.covariance(0.25);
    // ½ log 4 ≈ 0.693 up to an O(1) constant from small primes and the cutoff at log p = 16
    assert!((0.4..0.6).contains(&c), "deterministic covariance {c}");
    assert!(model.covariance(0.125) > c && c > model.covariance(0.5));
    // empirical check of the same formula at n = 3, where draws are cheap
    let mut cfg = ModelConfig::new(3, Variant::Steinhaus);
    cfg.grid_size = 64;
    let model = PrimeModel::new(cfg).unwrap();
    let c = model.covariance(0.25);
    // indices 0 and 16 of a 64-point grid are a quarter apart
    let pairs = stats::replicate(5, "model-cov", 5000, |r| {
        let x = model.sample(r);
        x[0] * x[16]
    });
    let e = Estimate::from_samples(&pairs);
    assert!(e.z_score(c).abs() < 3.5, "{e:?} vs {c}");
}

#[test]
fn maxima_grow_and_are_grid_stable() {
    let mut rng = replicate_rng(8, "model-max", 0);
    let m2 = model_max_experiment(ModelConfig::new(2, Variant::Steinhaus), 300, &mut rng).unwrap();
    let coarse = model_max_experiment(ModelConfig::new(3, Variant::Steinhaus), 300, &mut rng).unwrap();
    assert!(coarse.mean_max.mean > m2.mean_max.mean + 3.0 * coarse.mean_max.std_err);
    let mut fine = ModelConfig::new(3, Variant::Steinhaus);
    fine.grid_size *= 4;
    let fine = model_max_experiment(fine, 300, &mut rng).unwrap();
    assert!((fine.mean_max.mean / coarse.mean_max.mean - 1.0).abs() < 0.05);
}
