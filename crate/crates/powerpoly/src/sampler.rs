//! Hit-and-run Monte Carlo estimation of restriction-polytope centroids.
//!
//! The exact engine integrates polytopes whose dimension stays small; for
//! larger games the centroid is estimated by a uniform hit-and-run chain run
//! in floating point. The chain walks the same eliminated coordinate space
//! the exact engine uses, starting from an exact interior point, and every
//! recorded state is pushed through the affine recovery map so the estimate
//! lands directly on voter weights (and the quota when present).

use num_traits::{Signed, ToPrimitive, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::game::WeightedGame;
use crate::indices::IndexKind;
use crate::lp;
use crate::polytope::{build_polytope, PolytopeH, PolytopeKind, Restrictions};
use crate::rational::Rat;
use crate::{Error, Result};

/// Hit-and-run chain parameters. The same config on the same polytope
/// reproduces the estimate bit for bit.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct ChainConfig {
    pub seed: u64,
    pub burn_in: usize,
    pub thinning: usize,
    pub samples: usize,
}

impl Default for ChainConfig {
    fn default() -> Self {
        ChainConfig {
            seed: 1,
            burn_in: 1000,
            thinning: 1,
            samples: 100_000,
        }
    }
}

/// Monte Carlo centroid estimate, recovered to all voters of the original
/// game (dummies carry exact zeros).
#[derive(Clone, Debug)]
pub struct Estimate {
    pub kind: IndexKind,
    pub mean: Vec<f64>,
    pub stderr: Vec<f64>,
    pub quota_mean: Option<f64>,
    pub quota_stderr: Option<f64>,
    pub samples: usize,
    pub escapes: u64,
}

/// Exact interior point maximizing the polyhedral inradius (the radius of
/// the largest scaled unit ball, measured per constraint by its coefficient
/// norm). Errors when the maximum radius is zero.
pub fn chebyshev_center(p: &PolytopeH) -> Result<Vec<Rat>> {
    let dim = p.dim();
    if dim == 0 {
        return Err(Error::Invalid(
            "polytope is a single point; no interior".into(),
        ));
    }
    let rows: Vec<(Vec<Rat>, Rat)> = p
        .constraints
        .iter()
        .map(|c| (c.coeffs.clone(), c.rhs.clone()))
        .collect();
    let (center, radius) = lp::cube_center(&rows, dim)?;
    if radius.is_zero() || radius.is_negative() {
        return Err(Error::Invalid(
            "polytope has zero inradius; no interior point".into(),
        ));
    }
    debug_assert!(p
        .constraints
        .iter()
        .all(|c| c.coeffs.iter().zip(&center).map(|(a, x)| a * x).sum::<Rat>() < c.rhs));
    Ok(center)
}

/// Estimates an average index by a uniform hit-and-run chain over the
/// restriction polytope of `kind`. Chain states outside the polytope
/// (floating-point drift) are pulled back toward the start point and
/// counted in `escapes`.
pub fn hit_and_run_estimate(
    game: &WeightedGame,
    kind: IndexKind,
    config: &ChainConfig,
) -> Result<Estimate> {
    if config.samples == 0 {
        return Err(Error::Invalid("sample count must be at least 1".into()));
    }
    let (poly_kind, restrictions) = match kind {
        IndexKind::Awi => (PolytopeKind::Weight, Restrictions::NONE),
        IndexKind::Ari => (PolytopeKind::Representation, Restrictions::NONE),
        IndexKind::Awti => (PolytopeKind::Weight, Restrictions { dummy: false, types: true }),
        IndexKind::Arti => (
            PolytopeKind::Representation,
            Restrictions { dummy: false, types: true },
        ),
        _ => {
            return Err(Error::Invalid(format!(
                "{kind} is not estimated by sampling; use the exact evaluator"
            )))
        }
    };
    // Dummies are pinned to zero exactly; the chain walks the reduced game.
    let (reduced, kept) = game.dummy_reduce()?;
    let polytope = build_polytope(&reduced, poly_kind, restrictions)?;
    let chain = run_chain(&polytope, config)?;

    debug_assert_eq!(kept.len(), chain.mean.len());
    let n = game.n();
    let mut mean = vec![0.0; n];
    let mut stderr = vec![0.0; n];
    for (j, &voter) in kept.iter().enumerate() {
        mean[voter] = chain.mean[j];
        stderr[voter] = chain.stderr[j];
    }
    Ok(Estimate {
        kind,
        mean,
        stderr,
        quota_mean: chain.quota_mean,
        quota_stderr: chain.quota_stderr,
        samples: chain.samples,
        escapes: chain.escapes,
    })
}

struct ChainOutput {
    mean: Vec<f64>,
    stderr: Vec<f64>,
    quota_mean: Option<f64>,
    quota_stderr: Option<f64>,
    samples: usize,
    escapes: u64,
}

fn to_f64(r: &Rat) -> f64 {
    r.to_f64().expect("rational fits f64")
}

fn run_chain(polytope: &PolytopeH, config: &ChainConfig) -> Result<ChainOutput> {
    let dim = polytope.dim();
    let has_quota = polytope.recovery.quota.is_some();
    let weight_count = polytope.recovery.weights.len();
    // Output coordinates: recovered weights, then the quota when present.
    let out_dim = weight_count + usize::from(has_quota);

    if dim == 0 {
        // Single point: recover it exactly, zero spread.
        let point = polytope.recovery.apply(&[]);
        let mut mean: Vec<f64> = point.weights.iter().map(to_f64).collect();
        let quota_mean = point.quota.as_ref().map(to_f64);
        let stderr = vec![0.0; mean.len()];
        let quota_stderr = quota_mean.map(|_| 0.0);
        mean.truncate(weight_count);
        return Ok(ChainOutput {
            mean,
            stderr,
            quota_mean,
            quota_stderr,
            samples: config.samples,
            escapes: 0,
        });
    }

    let start: Vec<f64> = chebyshev_center(polytope)?.iter().map(to_f64).collect();
    let rows: Vec<(Vec<f64>, f64)> = polytope
        .constraints
        .iter()
        .map(|c| (c.coeffs.iter().map(to_f64).collect(), to_f64(&c.rhs)))
        .collect();
    // Affine recovery in f64: constant + coeffs, weights first, quota last.
    let mut recover: Vec<(f64, Vec<f64>)> = polytope
        .recovery
        .weights
        .iter()
        .map(|e| (to_f64(&e.constant), e.coeffs.iter().map(to_f64).collect()))
        .collect();
    if let Some(q) = &polytope.recovery.quota {
        recover.push((to_f64(&q.constant), q.coeffs.iter().map(to_f64).collect()));
    }

    let inside = |x: &[f64]| -> bool {
        rows.iter().all(|(a, b)| {
            let ax: f64 = a.iter().zip(x).map(|(ai, xi)| ai * xi).sum();
            ax <= *b + 1e-12
        })
    };

    let mut rng = ChaCha8Rng::seed_from_u64(config.seed);
    let mut x = start.clone();
    let mut escapes = 0u64;
    let thinning = config.thinning.max(1);
    let total_records = config.samples;
    let mut recorded = 0usize;
    let mut step = 0usize;
    let mut samples: Vec<Vec<f64>> = Vec::with_capacity(total_records);

    while recorded < total_records {
        // Direction: standard normals via Box-Muller, normalized.
        let mut d = vec![0.0; dim];
        loop {
            let mut k = 0;
            while k < dim {
                let u1: f64 = rng.gen::<f64>().max(1e-300);
                let u2: f64 = rng.gen();
                let r = (-2.0 * u1.ln()).sqrt();
                let (s, c) = (2.0 * std::f64::consts::PI * u2).sin_cos();
                d[k] = r * c;
                k += 1;
                if k < dim {
                    d[k] = r * s;
                    k += 1;
                }
            }
            let norm: f64 = d.iter().map(|v| v * v).sum::<f64>().sqrt();
            if norm > 1e-12 {
                for v in d.iter_mut() {
                    *v /= norm;
                }
                break;
            }
        }

        // Chord through x along d: intersect every halfspace.
        let mut lo = f64::NEG_INFINITY;
        let mut hi = f64::INFINITY;
        let mut broken = false;
        for (a, b) in &rows {
            let ax: f64 = a.iter().zip(&x).map(|(ai, xi)| ai * xi).sum();
            let ad: f64 = a.iter().zip(&d).map(|(ai, di)| ai * di).sum();
            let slack = b - ax;
            if ad > 1e-14 {
                hi = hi.min(slack / ad);
            } else if ad < -1e-14 {
                lo = lo.max(slack / ad);
            } else if slack < -1e-12 {
                broken = true;
            }
        }
        if broken || lo > hi || !lo.is_finite() || !hi.is_finite() {
            // Numerical escape: shrink toward the exact interior start.
            escapes += 1;
            let mut tries = 0;
            while !inside(&x) && tries < 64 {
                for (xi, si) in x.iter_mut().zip(&start) {
                    *xi = si + 0.5 * (*xi - si);
                }
                tries += 1;
            }
            if !inside(&x) {
                x = start.clone();
            }
            continue;
        }
        let u: f64 = rng.gen();
        let t = lo + u * (hi - lo);
        for (xi, di) in x.iter_mut().zip(&d) {
            *xi += t * di;
        }
        if !inside(&x) {
            escapes += 1;
            let mut tries = 0;
            while !inside(&x) && tries < 64 {
                for (xi, si) in x.iter_mut().zip(&start) {
                    *xi = si + 0.5 * (*xi - si);
                }
                tries += 1;
            }
            if !inside(&x) {
                x = start.clone();
            }
        }

        step += 1;
        if step > config.burn_in && (step - config.burn_in) % thinning == 0 {
            let rec: Vec<f64> = recover
                .iter()
                .map(|(c, coeffs)| c + coeffs.iter().zip(&x).map(|(a, xi)| a * xi).sum::<f64>())
                .collect();
            samples.push(rec);
            recorded += 1;
        }
    }

    // Batch means: twenty near-equal batches carry the spread estimate.
    let batches = 20.min(samples.len());
    let base = samples.len() / batches;
    let extra = samples.len() % batches;
    let mut mean = vec![0.0; out_dim];
    for s in &samples {
        for (m, v) in mean.iter_mut().zip(s) {
            *m += v;
        }
    }
    for m in mean.iter_mut() {
        *m /= samples.len() as f64;
    }
    let mut var = vec![0.0; out_dim];
    if batches > 1 {
        let mut offset = 0;
        for b in 0..batches {
            let len = base + usize::from(b < extra);
            let mut bm = vec![0.0; out_dim];
            for s in &samples[offset..offset + len] {
                for (m, v) in bm.iter_mut().zip(s) {
                    *m += v;
                }
            }
            offset += len;
            for j in 0..out_dim {
                bm[j] /= len as f64;
                let d = bm[j] - mean[j];
                var[j] += d * d;
            }
        }
        for v in var.iter_mut() {
            *v /= (batches * (batches - 1)) as f64;
        }
    }
    let stderr: Vec<f64> = var.iter().map(|v| v.sqrt()).collect();

    let (quota_mean, quota_stderr) = if has_quota {
        (Some(mean[out_dim - 1]), Some(stderr[out_dim - 1]))
    } else {
        (None, None)
    };
    Ok(ChainOutput {
        mean: mean[..weight_count].to_vec(),
        stderr: stderr[..weight_count].to_vec(),
        quota_mean,
        quota_stderr,
        samples: samples.len(),
        escapes,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::ratio;

    fn game(text: &str) -> WeightedGame {
        WeightedGame::parse(text).unwrap()
    }

    fn config(seed: u64, samples: usize) -> ChainConfig {
        ChainConfig {
            seed,
            samples,
            ..ChainConfig::default()
        }
    }

    #[test]
    fn center_of_unit_interval() {
        let p = build_polytope(
            &game("[1;1]"),
            PolytopeKind::Representation,
            Restrictions::NONE,
        )
        .unwrap();
        let center = chebyshev_center(&p).unwrap();
        assert_eq!(center, vec![ratio(1, 2)]);
    }

    #[test]
    fn center_is_strictly_interior() {
        let p = build_polytope(&game("[3;2,1,1]"), PolytopeKind::Weight, Restrictions::NONE)
            .unwrap();
        let center = chebyshev_center(&p).unwrap();
        for c in &p.constraints {
            let lhs: Rat = c.coeffs.iter().zip(&center).map(|(a, x)| a * x).sum();
            assert!(lhs < c.rhs);
        }
    }

    #[test]
    fn single_point_polytope_has_no_interior() {
        let p = build_polytope(
            &game("[2;1,1,1]"),
            PolytopeKind::Weight,
            Restrictions { dummy: true, types: true },
        )
        .unwrap();
        assert!(matches!(chebyshev_center(&p), Err(Error::Invalid(_))));
    }

    #[test]
    fn three_voter_chain_matches_exact_weights() {
        let est = hit_and_run_estimate(&game("[3;2,1,1]"), IndexKind::Awi, &config(1, 100_000))
            .unwrap();
        let exact = [11.0 / 18.0, 7.0 / 36.0, 7.0 / 36.0];
        for (m, e) in est.mean.iter().zip(exact) {
            assert!((m - e).abs() < 0.01, "estimate {m} vs exact {e}");
        }
        let total: f64 = est.mean.iter().sum();
        assert!((total - 1.0).abs() < 1e-12);
        assert_eq!(est.samples, 100_000);
    }

    #[test]
    fn symmetric_game_estimates_equal_shares() {
        let est = hit_and_run_estimate(&game("[2;1,1,1]"), IndexKind::Awi, &config(7, 50_000))
            .unwrap();
        for (m, s) in est.mean.iter().zip(&est.stderr) {
            assert!((m - 1.0 / 3.0).abs() < (4.0 * s).max(0.01));
        }
    }

    #[test]
    fn five_voter_representation_chain_matches_published_row() {
        let est = hit_and_run_estimate(
            &game("[5;3,2,2,2,1]"),
            IndexKind::Ari,
            &config(1, 100_000),
        )
        .unwrap();
        let target = [0.300, 0.199, 0.199, 0.199, 0.103];
        for (m, e) in est.mean.iter().zip(target) {
            assert!((m - e).abs() < 0.01, "estimate {m} vs published {e}");
        }
        assert!(est.quota_mean.is_some());
    }

    #[test]
    fn identical_configs_reproduce_bitwise() {
        let g = game("[5;3,2,2,2,1]");
        let a = hit_and_run_estimate(&g, IndexKind::Awti, &config(42, 2_000)).unwrap();
        let b = hit_and_run_estimate(&g, IndexKind::Awti, &config(42, 2_000)).unwrap();
        assert_eq!(a.mean, b.mean);
        assert_eq!(a.stderr, b.stderr);
        assert_eq!(a.escapes, b.escapes);
    }

    #[test]
    fn dummies_keep_exact_zero() {
        let est = hit_and_run_estimate(
            &game("[51;47,46,5,2]"),
            IndexKind::Awi,
            &config(3, 20_000),
        )
        .unwrap();
        assert_eq!(est.mean[3], 0.0);
        assert_eq!(est.stderr[3], 0.0);
        for (m, s) in est.mean[..3].iter().zip(&est.stderr[..3]) {
            assert!((m - 1.0 / 3.0).abs() < (4.0 * s).max(0.01));
        }
    }
}
