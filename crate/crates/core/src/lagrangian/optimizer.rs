use std::fmt::Write;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rand_distr::Exp1;
use rayon::prelude::*;
use serde::Serialize;

use super::closed_form::{pk_closed_form, recognize_pk};
use super::polynomial::{LagrangePolynomial, SimplexVector};
use crate::pattern::Pattern;
use crate::{Error, Result};

/// Largest gap between the optimizer and the closed form of `P_k` that
/// still counts as corroboration.
pub const CERTIFY_TOLERANCE: f64 = 1e-6;

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct OptimizerConfig {
    pub restarts: usize,
    pub max_iterations: usize,
    /// Ascent stops once no coordinate moves by more than this, or once the
    /// value stops improving.
    pub step_tolerance: f64,
    pub seed: u64,
    pub minimality_threshold: f64,
    /// Worker threads for restarts; results do not depend on it.
    pub threads: usize,
}

impl Default for OptimizerConfig {
    fn default() -> Self {
        OptimizerConfig {
            restarts: 64,
            max_iterations: 100_000,
            step_tolerance: 1e-13,
            seed: 0,
            minimality_threshold: 1e-7,
            threads: 1,
        }
    }
}

impl OptimizerConfig {
    pub fn validate(&self) -> Result<()> {
        if self.restarts == 0 || self.max_iterations == 0 || self.threads == 0 {
            return Err(Error::invalid(
                "restarts, max_iterations and threads must be positive",
            ));
        }
        if !(self.step_tolerance > 0.0 && self.minimality_threshold > 0.0) {
            return Err(Error::invalid("tolerances must be positive"));
        }
        Ok(())
    }

    /// Apply `key = value` lines on top of `self`. `#` comments and blank
    /// lines are ignored; unknown keys are errors.
    pub fn apply_kv(&mut self, text: &str) -> Result<()> {
        for (idx, raw) in text.lines().enumerate() {
            let line = idx + 1;
            let content = raw.split('#').next().unwrap_or("").trim();
            if content.is_empty() {
                continue;
            }
            let (key, value) = content.split_once('=').ok_or_else(|| Error::Parse {
                line,
                message: "expected `key = value`".into(),
            })?;
            let value = value.trim();
            let bad = |what: &str| Error::Parse {
                line,
                message: format!("invalid {what} `{value}`"),
            };
            match key.trim() {
                "restarts" => self.restarts = value.parse().map_err(|_| bad("restarts"))?,
                "max_iterations" => {
                    self.max_iterations = value.parse().map_err(|_| bad("max_iterations"))?
                }
                "step_tolerance" => {
                    self.step_tolerance = value.parse().map_err(|_| bad("step_tolerance"))?
                }
                "seed" => self.seed = value.parse().map_err(|_| bad("seed"))?,
                "minimality_threshold" => {
                    self.minimality_threshold =
                        value.parse().map_err(|_| bad("minimality_threshold"))?
                }
                "threads" => self.threads = value.parse().map_err(|_| bad("threads"))?,
                other => {
                    return Err(Error::Parse {
                        line,
                        message: format!("unknown key `{other}`"),
                    })
                }
            }
        }
        self.validate()
    }

    pub fn to_kv(&self) -> String {
        let mut s = String::new();
        writeln!(s, "restarts = {}", self.restarts).unwrap();
        writeln!(s, "max_iterations = {}", self.max_iterations).unwrap();
        writeln!(s, "step_tolerance = {:e}", self.step_tolerance).unwrap();
        writeln!(s, "seed = {}", self.seed).unwrap();
        writeln!(s, "minimality_threshold = {:e}", self.minimality_threshold).unwrap();
        writeln!(s, "threads = {}", self.threads).unwrap();
        s
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct LagrangianResult {
    pub value: f64,
    pub argmax: SimplexVector,
    pub restarts_used: usize,
    /// Whether the winning restart stopped on the step tolerance or a stall
    /// rather than the iteration limit.
    pub converged: bool,
    pub converged_restarts: usize,
    pub iterations: usize,
    /// True only when a closed form exists and the optimizer agrees with it.
    pub certified: bool,
    pub closed_form: Option<f64>,
}

struct Run {
    value: f64,
    x: Vec<f64>,
    converged: bool,
    iterations: usize,
}

/// Restart 0 is the barycenter. Even restarts are uniform Dirichlet draws;
/// odd ones draw on a random face, each coordinate kept with probability
/// 1/2.
fn start_point(m: usize, seed: u64, restart: usize) -> Vec<f64> {
    if restart == 0 {
        return vec![1.0 / m as f64; m];
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(restart as u64);
    let mut draws: Vec<f64> = (0..m)
        .map(|_| rng.sample::<f64, _>(Exp1) + f64::MIN_POSITIVE)
        .collect();
    if restart % 2 == 1 {
        let keep: Vec<bool> = (0..m).map(|_| rng.random_bool(0.5)).collect();
        if keep.iter().any(|&k| k) {
            draws
                .iter_mut()
                .zip(&keep)
                .filter(|(_, k)| !**k)
                .for_each(|(d, _)| *d = 0.0);
        }
    }
    let total: f64 = draws.iter().sum();
    draws.into_iter().map(|d| d / total).collect()
}

/// Iterations between two stall checks.
const STALL_WINDOW: usize = 256;
/// Relative value gain over one window below which ascent counts as
/// stalled.
const STALL_GAIN: f64 = 1e-14;

/// Multiplicative ascent `x_i <- x_i * d_i lambda / (r lambda)`. For a
/// homogeneous polynomial with nonnegative coefficients the map keeps `x` on
/// the simplex and never decreases the objective. Stops when no coordinate
/// moves by more than the step tolerance or the value stalls.
fn ascend_raw(
    poly: &LagrangePolynomial,
    x: &mut [f64],
    cfg: &OptimizerConfig,
    budget: usize,
) -> (bool, usize) {
    let mut g = vec![0.0; poly.m()];
    let mut iterations = 0;
    let mut checkpoint = f64::NEG_INFINITY;
    while iterations < budget {
        iterations += 1;
        poly.gradient_into(x, &mut g);
        let total: f64 = x.iter().zip(&g).map(|(a, b)| a * b).sum();
        if total <= 0.0 || !total.is_finite() {
            // the map is undefined where lambda vanishes; only a face move
            // can leave such a point
            return (true, iterations);
        }
        let mut step: f64 = 0.0;
        for (xi, gi) in x.iter_mut().zip(&g) {
            let next = *xi * gi / total;
            step = step.max((next - *xi).abs());
            *xi = next;
        }
        if step < cfg.step_tolerance {
            return (true, iterations);
        }
        if iterations % STALL_WINDOW == 0 {
            // total = r * lambda(x) before the step
            if total - checkpoint <= STALL_GAIN * total {
                return (true, iterations);
            }
            checkpoint = total;
        }
    }
    (false, iterations)
}

fn normalized(mut x: Vec<f64>) -> Vec<f64> {
    let sum: f64 = x.iter().sum();
    x.iter_mut().for_each(|xi| *xi /= sum);
    x
}

/// Relative gradient gap that marks a coordinate as moving. Near a
/// boundary optimum the multiplicative map decays shrinking coordinates only
/// polynomially, and it can never revive a zero coordinate, so both moves
/// are made explicitly.
const MOVE_GAP: f64 = 1e-9;

/// Mass given to a revived coordinate.
const REVIVE_MASS: f64 = 1e-3;

/// Iterations of plain ascent between two attempts at a face move.
const CHUNK: usize = 2048;

fn face_move(poly: &LagrangePolynomial, x: &[f64], value: f64) -> Option<(Vec<f64>, bool)> {
    let mut g = vec![0.0; poly.m()];
    poly.gradient_into(x, &mut g);
    let level = poly.r() as f64 * value;
    let support = x.iter().filter(|v| **v > 0.0).count();
    let prune = (0..x.len())
        .filter(|&i| x[i] > 0.0 && g[i] < level * (1.0 - MOVE_GAP))
        .min_by(|&a, &b| g[a].total_cmp(&g[b]).then(a.cmp(&b)));
    let mut y = x.to_vec();
    if let Some(i) = prune.filter(|_| support > 1) {
        y[i] = 0.0;
        return Some((normalized(y), false));
    }
    let revive = (0..x.len())
        .filter(|&i| x[i] == 0.0 && g[i] > level * (1.0 + MOVE_GAP))
        .max_by(|&a, &b| g[a].total_cmp(&g[b]).then(b.cmp(&a)))?;
    y.iter_mut().for_each(|v| *v *= 1.0 - REVIVE_MASS);
    y[revive] = REVIVE_MASS;
    Some((y, true))
}

/// Ascent in chunks. After each chunk one face move is tried and kept when
/// the ascent from it does no worse (strictly better for a revival). The
/// iteration limit covers all chunks.
fn ascend(poly: &LagrangePolynomial, mut x: Vec<f64>, cfg: &OptimizerConfig) -> Run {
    let mut remaining = cfg.max_iterations;
    let mut iterations = 0;
    let mut converged = false;
    let mut value = f64::NEG_INFINITY;
    let mut fresh = true;
    while remaining > 0 {
        if fresh {
            let (c, used) = ascend_raw(poly, &mut x, cfg, remaining.min(CHUNK));
            remaining -= used;
            iterations += used;
            converged = c;
            x = normalized(x);
            value = poly.eval_unchecked(&x);
        }
        fresh = true;
        let Some((mut y, revival)) = face_move(poly, &x, value) else {
            if converged {
                break;
            }
            continue;
        };
        if remaining == 0 {
            break;
        }
        let (c, used) = ascend_raw(poly, &mut y, cfg, remaining.min(CHUNK));
        remaining -= used;
        iterations += used;
        let y = normalized(y);
        let candidate = poly.eval_unchecked(&y);
        if candidate > value || (!revival && candidate == value) {
            x = y;
            value = candidate;
            converged = c;
            fresh = !c;
        } else if converged {
            break;
        }
    }
    if value == f64::NEG_INFINITY {
        x = normalized(x);
        value = poly.eval_unchecked(&x);
    }
    Run {
        value,
        x,
        converged,
        iterations,
    }
}

/// Best value of `poly` over the simplex found by seeded multistart ascent.
///
/// Start points come from independent ChaCha streams (see `start_point`).
/// Each run ends at a first-order critical point: shrinking coordinates are
/// pruned and zero coordinates with a gradient surplus are revived. The
/// reduction keeps the first restart with the largest value, so the result
/// is bit-identical for any thread count.
pub fn maximize(poly: &LagrangePolynomial, cfg: &OptimizerConfig) -> Result<LagrangianResult> {
    cfg.validate()?;
    let m = poly.m();
    if poly.is_zero() {
        return Ok(LagrangianResult {
            value: 0.0,
            argmax: SimplexVector::uniform(m),
            restarts_used: 0,
            converged: true,
            converged_restarts: 0,
            iterations: 0,
            certified: false,
            closed_form: None,
        });
    }
    let run = |i: usize| ascend(poly, start_point(m, cfg.seed, i), cfg);
    let runs: Vec<Run> = if cfg.threads > 1 {
        let pool = rayon::ThreadPoolBuilder::new()
            .num_threads(cfg.threads)
            .build()
            .map_err(|e| Error::invalid(format!("thread pool: {e}")))?;
        pool.install(|| (0..cfg.restarts).into_par_iter().map(run).collect())
    } else {
        (0..cfg.restarts).map(run).collect()
    };

    let converged_restarts = runs.iter().filter(|r| r.converged).count();
    let best = runs
        .into_iter()
        .reduce(|best, r| if r.value > best.value { r } else { best })
        .expect("at least one restart");
    Ok(LagrangianResult {
        value: best.value,
        argmax: SimplexVector::new(best.x)?,
        restarts_used: cfg.restarts,
        converged: best.converged,
        converged_restarts,
        iterations: best.iterations,
        certified: false,
        closed_form: None,
    })
}

/// `lambda(P)`, with the closed form attached when `P` is one of the `P_k`.
pub fn lagrangian(pattern: &Pattern, cfg: &OptimizerConfig) -> Result<LagrangianResult> {
    let poly = LagrangePolynomial::from_pattern(pattern);
    let mut result = maximize(&poly, cfg)?;
    if let Some(k) = recognize_pk(pattern) {
        let closed = pk_closed_form(k)?;
        result.closed_form = Some(closed);
        result.certified = (result.value - closed).abs() <= CERTIFY_TOLERANCE;
    }
    Ok(result)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::pattern::{build_pk, named_pattern};

    #[test]
    fn known_maxima() {
        let cfg = OptimizerConfig::default();
        let fano = lagrangian(&named_pattern("fano").unwrap(), &cfg).unwrap();
        assert!((fano.value - 0.75).abs() < 1e-9);
        assert!((fano.argmax.coords()[0] - 0.5).abs() < 1e-6);
        assert!(!fano.certified && fano.closed_form.is_none());

        let single = lagrangian(&named_pattern("single-edge-3").unwrap(), &cfg).unwrap();
        assert!((single.value - 2.0 / 9.0).abs() < 1e-9);

        let p1 = lagrangian(&build_pk(1).unwrap(), &cfg).unwrap();
        assert!((p1.value - 0.577_350_269_189_625_8).abs() < 1e-8);
        assert!(p1.certified);

        let nonmin = lagrangian(&named_pattern("nonminimal-2graph").unwrap(), &cfg).unwrap();
        assert!((nonmin.value - 0.5).abs() < 1e-9);
    }

    #[test]
    fn boundary_optimum() {
        // (x + y)^4 - x^4, maximized at the vertex y = 1
        let p = Pattern::from_edges(
            4,
            2,
            &[&[1, 1, 1, 2], &[1, 1, 2, 2], &[1, 2, 2, 2], &[2, 2, 2, 2]],
        )
        .unwrap();
        let res = lagrangian(&p, &OptimizerConfig::default()).unwrap();
        assert_eq!(res.value, 1.0);
        assert_eq!(res.argmax.coords(), &[0.0, 1.0]);
        assert!(res.converged);
    }

    #[test]
    fn leaves_a_poor_local_maximum() {
        // local maxima on the faces {1,2} and {3,4}; the second is better
        let p = Pattern::from_edges(2, 4, &[&[1, 2], &[3, 3], &[3, 4], &[4, 4]]).unwrap();
        let cfg = OptimizerConfig {
            restarts: 1,
            ..Default::default()
        };
        let res = lagrangian(&p, &cfg).unwrap();
        assert_eq!(res.value, 1.0);
    }

    #[test]
    fn empty_pattern_has_zero_lagrangian() {
        let p = Pattern::new(3, 4, vec![]).unwrap();
        let res = lagrangian(&p, &OptimizerConfig::default()).unwrap();
        assert_eq!(res.value, 0.0);
        assert_eq!(res.argmax, SimplexVector::uniform(4));
    }

    #[test]
    fn argmax_is_a_kkt_point() {
        let cfg = OptimizerConfig::default();
        for p in [
            build_pk(1).unwrap(),
            build_pk(2).unwrap(),
            named_pattern("fano").unwrap(),
        ] {
            let poly = LagrangePolynomial::from_pattern(&p);
            let res = maximize(&poly, &cfg).unwrap();
            assert!(poly.kkt_residual(&res.argmax, 1e-6).unwrap() < 1e-6);
            assert!((poly.evaluate(&res.argmax).unwrap() - res.value).abs() < 1e-10);
        }
    }

    #[test]
    fn deterministic_across_threads() {
        let poly = LagrangePolynomial::from_pattern(&build_pk(2).unwrap());
        let cfg = OptimizerConfig {
            restarts: 16,
            seed: 7,
            ..Default::default()
        };
        let serial = maximize(&poly, &cfg).unwrap();
        let again = maximize(&poly, &cfg).unwrap();
        let parallel = maximize(
            &poly,
            &OptimizerConfig {
                threads: 4,
                ..cfg.clone()
            },
        )
        .unwrap();
        assert_eq!(serial, again);
        assert_eq!(serial, parallel);
        assert_eq!(serial.value.to_bits(), parallel.value.to_bits());
    }

    #[test]
    fn config_validation_and_kv() {
        assert!(OptimizerConfig {
            restarts: 0,
            ..Default::default()
        }
        .validate()
        .is_err());
        assert!(OptimizerConfig {
            step_tolerance: 0.0,
            ..Default::default()
        }
        .validate()
        .is_err());

        let mut cfg = OptimizerConfig::default();
        cfg.apply_kv("# tuned\nrestarts = 8\nseed=42\n\nstep_tolerance = 1e-12\n")
            .unwrap();
        assert_eq!(cfg.restarts, 8);
        assert_eq!(cfg.seed, 42);
        assert_eq!(cfg.step_tolerance, 1e-12);

        let mut round = OptimizerConfig::default();
        round.apply_kv(&cfg.to_kv()).unwrap();
        assert_eq!(round, cfg);

        assert!(matches!(
            cfg.apply_kv("restarts 8"),
            Err(Error::Parse { line: 1, .. })
        ));
        assert!(matches!(
            cfg.apply_kv("\nspeed = 3"),
            Err(Error::Parse { line: 2, .. })
        ));
        assert!(matches!(
            cfg.apply_kv("seed = -1"),
            Err(Error::Parse { line: 1, .. })
        ));
    }

    #[test]
    fn start_points_lie_on_the_simplex() {
        for i in 0..10 {
            let x = start_point(5, 3, i);
            assert!((x.iter().sum::<f64>() - 1.0).abs() < 1e-12);
            assert!(x.iter().all(|&v| v >= 0.0));
            assert!(x.iter().any(|&v| v > 0.0));
            if i % 2 == 0 {
                assert!(x.iter().all(|&v| v > 0.0));
            }
        }
        assert!((1..40)
            .step_by(2)
            .any(|i| start_point(5, 3, i).contains(&0.0)));
        assert_ne!(start_point(5, 3, 1), start_point(5, 3, 2));
        assert_ne!(start_point(5, 3, 1), start_point(5, 4, 1));
    }
}
