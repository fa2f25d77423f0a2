//! Randomized invariant checks. Trial `i` draws from ChaCha stream `i` of
//! the seed, so results do not depend on scheduling.

use circuit_descartes::descartes::{
    compute_ordering, descartes_bound, max_bound_over_orderings, mu_sequence, old_bound,
    parity_certificate, OrderingData,
};
use circuit_descartes::galedual::gale_dual_of_c;
use circuit_descartes::oracle::count_positive_solutions;
use circuit_descartes::{
    CoefficientMatrix, Error, ExponentConfig, GaleVectorB, OracleConfig, Rational,
};
use num_traits::{Signed, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::instance::InstanceFile;

pub type BoundFn = fn(&GaleVectorB, &OrderingData) -> circuit_descartes::Result<usize>;

#[derive(Debug, Clone, Copy)]
pub struct FuzzConfig {
    pub seed: u64,
    pub trials: usize,
    pub n_min: usize,
    pub n_max: usize,
    pub max_coord: i64,
    /// Numerators lie in `[-max_entry, max_entry]`.
    pub max_entry: i64,
    /// Denominators lie in `[1, max_den]`.
    pub max_den: i64,
    /// The bound under test.
    pub bound: BoundFn,
}

impl Default for FuzzConfig {
    fn default() -> Self {
        FuzzConfig {
            seed: 0,
            trials: 100,
            n_min: 1,
            n_max: 3,
            max_coord: 5,
            max_entry: 9,
            max_den: 4,
            bound: descartes_bound,
        }
    }
}

pub fn trial_rng(seed: u64, trial: u64) -> ChaCha8Rng {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(trial);
    rng
}

/// A random circuit with `n` in `n_range` and coordinates in
/// `[0, max_coord]`.
pub fn random_circuit<R: Rng>(
    rng: &mut R,
    n_range: std::ops::RangeInclusive<usize>,
    max_coord: i64,
) -> ExponentConfig {
    loop {
        let n = rng.random_range(n_range.clone());
        let points = (0..n + 2)
            .map(|_| (0..n).map(|_| rng.random_range(0..=max_coord)).collect())
            .collect();
        if let Ok(cfg) = ExponentConfig::new(points) {
            if cfg.is_circuit() {
                return cfg;
            }
        }
    }
}

pub fn random_coefficients<R: Rng>(
    rng: &mut R,
    n: usize,
    max_entry: i64,
    max_den: i64,
) -> CoefficientMatrix {
    loop {
        let rows = (0..n)
            .map(|_| {
                (0..n + 2)
                    .map(|_| {
                        Rational::new(
                            rng.random_range(-max_entry..=max_entry).into(),
                            rng.random_range(1..=max_den).into(),
                        )
                    })
                    .collect()
            })
            .collect();
        if let Ok(c) = CoefficientMatrix::from_rows(rows) {
            return c;
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct Outcome {
    pub feasible: bool,
    pub infinite: bool,
    pub count: usize,
    pub bound: usize,
}

/// Runs the invariant suite on one instance; `Err` lists the violations.
pub fn check_instance(
    cfg: &ExponentConfig,
    c: &CoefficientMatrix,
    bound_fn: BoundFn,
) -> Result<Outcome, Vec<String>> {
    let inner = || -> circuit_descartes::Result<Result<Outcome, Vec<String>>> {
        let b = cfg.gale_vector()?;
        let ord = match compute_ordering(&gale_dual_of_c(c)) {
            Ok(o) => o,
            Err(Error::Infeasible | Error::ZeroGaleRow(_)) => {
                return Ok(Ok(Outcome {
                    feasible: false,
                    infinite: false,
                    count: 0,
                    bound: 0,
                }))
            }
            Err(e) => return Err(e),
        };
        let config = OracleConfig {
            isolate: false,
            ..OracleConfig::default()
        };
        let r = count_positive_solutions(c, cfg, &config)?;
        let bound = bound_fn(&b, &ord)?;
        let outcome = Outcome {
            feasible: true,
            infinite: r.infinite,
            count: r.count,
            bound,
        };
        let mut bad = Vec::new();
        let mu = mu_sequence(&b, &ord)?;
        let sl = mu.signvar_lambda;
        let old = old_bound(&b, &ord)?;
        if !r.infinite {
            let count = r.count;
            if count > bound {
                bad.push(format!("count {count} exceeds bound {bound}"));
            }
            if parity_certificate(&b, &ord)?.applies && count % 2 != bound % 2 {
                bad.push(format!("count {count} and bound {bound} differ in parity"));
            }
            let vol = b.volumes().vol_za;
            if count as i64 > vol {
                bad.push(format!("count {count} exceeds vol_ZA {vol}"));
            }
        }
        if bound > sl {
            bad.push(format!("bound {bound} exceeds sgnvar(lambda) {sl}"));
        }
        if sl > old {
            bad.push(format!("sgnvar(lambda) {sl} exceeds old bound {old}"));
        }
        let best = max_bound_over_orderings(&b);
        if bound > best {
            bad.push(format!("bound {bound} exceeds max over orderings {best}"));
        }
        let reversed = bound_fn(&b, &ord.reversed())?;
        if reversed != bound {
            bad.push(format!(
                "reversed ordering gives bound {reversed}, not {bound}"
            ));
        }
        Ok(if bad.is_empty() {
            Ok(outcome)
        } else {
            Err(bad)
        })
    };
    inner().unwrap_or_else(|e| Err(vec![format!("error: {e}")]))
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Violation {
    pub trial: usize,
    pub messages: Vec<String>,
    pub instance: InstanceFile,
    pub minimized: InstanceFile,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct FuzzSummary {
    pub seed: u64,
    pub trials: usize,
    pub n_min: usize,
    pub n_max: usize,
    pub feasible: usize,
    pub infinite: usize,
    pub max_count: usize,
    pub attained_bound: usize,
    pub violations: Vec<Violation>,
}

impl FuzzSummary {
    pub fn passed(&self) -> bool {
        self.violations.is_empty()
    }
}

pub fn trial_instance(config: &FuzzConfig, trial: usize) -> (ExponentConfig, CoefficientMatrix) {
    let mut rng = trial_rng(config.seed, trial as u64);
    let cfg = random_circuit(&mut rng, config.n_min..=config.n_max, config.max_coord);
    let c = random_coefficients(&mut rng, cfg.n(), config.max_entry, config.max_den);
    (cfg, c)
}

pub fn run_fuzz(config: &FuzzConfig) -> FuzzSummary {
    let results: Vec<_> = (0..config.trials)
        .into_par_iter()
        .map(|trial| {
            let (cfg, c) = trial_instance(config, trial);
            match check_instance(&cfg, &c, config.bound) {
                Ok(o) => Ok(o),
                Err(messages) => {
                    let (mcfg, mc) = minimize(&cfg, &c, config.bound);
                    Err(Box::new(Violation {
                        trial,
                        messages,
                        instance: InstanceFile::from_parts(&cfg, Some(&c), None),
                        minimized: InstanceFile::from_parts(&mcfg, Some(&mc), None),
                    }))
                }
            }
        })
        .collect();
    let mut summary = FuzzSummary {
        seed: config.seed,
        trials: config.trials,
        n_min: config.n_min,
        n_max: config.n_max,
        feasible: 0,
        infinite: 0,
        max_count: 0,
        attained_bound: 0,
        violations: Vec::new(),
    };
    for r in results {
        match r {
            Ok(o) => {
                summary.feasible += usize::from(o.feasible);
                summary.infinite += usize::from(o.infinite);
                summary.max_count = summary.max_count.max(o.count);
                summary.attained_bound += usize::from(o.feasible && o.count == o.bound);
            }
            Err(v) => summary.violations.push(*v),
        }
    }
    summary
}

fn shrink_entry(x: &Rational) -> Vec<Rational> {
    let mut out = Vec::new();
    if !x.is_zero() {
        out.push(Rational::zero());
        out.push(x.signum());
    }
    if !x.is_integer() {
        out.push(x.trunc());
        out.push(Rational::from_integer(x.numer().clone()));
    }
    let half = Rational::from_integer(x.numer() / 2) / x.denom();
    if half != *x && !half.is_zero() {
        out.push(half);
    }
    out.retain(|y| y != x);
    out
}

/// Greedily simplifies a failing instance (smaller entries and
/// coordinates) while some invariant still fails.
pub fn minimize(
    cfg: &ExponentConfig,
    c: &CoefficientMatrix,
    bound_fn: BoundFn,
) -> (ExponentConfig, CoefficientMatrix) {
    let fails = |cfg: &ExponentConfig, c: &CoefficientMatrix| {
        cfg.is_circuit() && check_instance(cfg, c, bound_fn).is_err()
    };
    let (mut cfg, mut c) = (cfg.clone(), c.clone());
    for _ in 0..200 {
        let mut improved = false;
        let rows = c.matrix().to_rows();
        'entries: for i in 0..rows.len() {
            for j in 0..rows[i].len() {
                for y in shrink_entry(&rows[i][j]) {
                    let mut r = rows.clone();
                    r[i][j] = y;
                    if let Ok(cand) = CoefficientMatrix::from_rows(r) {
                        if fails(&cfg, &cand) {
                            c = cand;
                            improved = true;
                            break 'entries;
                        }
                    }
                }
            }
        }
        let points = cfg.points().to_vec();
        'points: for i in 0..points.len() {
            for k in 0..points[i].len() {
                let v = points[i][k];
                for y in [0, v - v.signum()] {
                    if y == v {
                        continue;
                    }
                    let mut p = points.clone();
                    p[i][k] = y;
                    if let Ok(cand) = ExponentConfig::new(p) {
                        if fails(&cand, &c) {
                            cfg = cand;
                            improved = true;
                            break 'points;
                        }
                    }
                }
            }
        }
        if !improved {
            break;
        }
    }
    (cfg, c)
}
