use std::io::Write;

use circuit_descartes::descartes::{
    best_ordering, compute_ordering, max_bound_over_orderings, mu_sequence, old_bound,
    parity_certificate,
};
use circuit_descartes::galedual::{feasibility, gale_dual_of_c};
use circuit_descartes::moduli2d::{classify_planar, classify_point, grid_axis, RegionSample};
use circuit_descartes::oracle::count_positive_solutions;
use circuit_descartes::viro::{estimate_t0, T0Config};
use circuit_descartes::{Error, ExponentConfig, GaleVectorB, OracleConfig, Rational, RootCounting};
use rayon::prelude::*;

use crate::error::{CliError, CliResult};
use crate::format::{to_q, Q};
use crate::instance::InstanceFile;
use crate::report::*;

fn circuit_gale(cfg: &ExponentConfig) -> CliResult<GaleVectorB> {
    let b = cfg.gale_vector()?;
    if !b.is_circuit() {
        return Err(Error::NotACircuit.into());
    }
    Ok(b)
}

fn rows2(rows: &[[Rational; 2]]) -> Vec<[Q; 2]> {
    rows.iter()
        .map(|r| [Q::from(&r[0]), Q::from(&r[1])])
        .collect()
}

/// Structural facts about the instance. Non-circuits are reported, not
/// rejected; a supplied `C` must still have full rank.
pub fn check(inst: &InstanceFile) -> CliResult<CheckReport> {
    let cfg = inst.config()?;
    let b = cfg.gale_vector()?;
    let circuit = b.is_circuit();
    let system = match inst.coefficient_matrix()? {
        Some(c) if circuit => {
            let p = gale_dual_of_c(&c);
            let r = count_positive_solutions(
                &c,
                &cfg,
                &OracleConfig {
                    isolate: false,
                    ..OracleConfig::default()
                },
            )?;
            Some(SystemCheck {
                rank: c.n(),
                feasible: feasibility(&p).unwrap_or(false),
                infinite: r.infinite,
            })
        }
        Some(c) => Some(SystemCheck {
            rank: c.n(),
            feasible: feasibility(&gale_dual_of_c(&c)).unwrap_or(false),
            infinite: false,
        }),
        None => None,
    };
    Ok(CheckReport {
        n: cfg.n(),
        circuit,
        volumes: circuit.then(|| {
            let v = b.volumes();
            VolumeReport {
                vol_z: v.vol_z,
                index: v.index,
                vol_za: v.vol_za,
            }
        }),
        max_bound: circuit.then(|| max_bound_over_orderings(&b)),
        b: b.entries().to_vec(),
        system,
    })
}

pub fn bound(inst: &InstanceFile) -> CliResult<BoundReport> {
    let cfg = inst.config()?;
    let b = circuit_gale(&cfg)?;
    let c = inst.require_c()?;
    if c.n() != cfg.n() {
        return Err(Error::Dimension(format!(
            "C has {} rows, points live in dimension {}",
            c.n(),
            cfg.n()
        ))
        .into());
    }
    let p = gale_dual_of_c(&c);
    let feasible = feasibility(&p).unwrap_or(false);
    let (ord, source) = match inst.ordering_data()? {
        Some(o) => (o, "supplied"),
        None => (compute_ordering(&p)?, "computed"),
    };
    let mu = mu_sequence(&b, &ord)?;
    let parity = parity_certificate(&b, &ord)?;
    Ok(BoundReport {
        p: rows2(p.rows()),
        feasible,
        classes: ord.classes().to_vec(),
        epsilon: ord.epsilon(),
        sigma: ord.sigma(),
        sigma_bar: ord.sigma_bar(),
        ordering_source: source.into(),
        ordering_valid: ord.is_ordering_for(&p),
        bound_new: mu.bound(),
        bound_old: old_bound(&b, &ord)?,
        volume_bound: b.volumes().vol_za,
        max_bound: max_bound_over_orderings(&b),
        sgnvar_lambda: mu.signvar_lambda,
        sgnvar_mu: mu.signvar_mu,
        lambda: mu.lambda,
        mu: mu.mu,
        parity: ParityReport {
            applies: parity.applies,
            parity: parity.parity,
            positive_guaranteed: parity.positive_guaranteed,
        },
        b: b.entries().to_vec(),
    })
}

pub fn count(inst: &InstanceFile, config: &OracleConfig) -> CliResult<CountReport> {
    let cfg = inst.config()?;
    circuit_gale(&cfg)?;
    let c = inst.require_c()?;
    let r = count_positive_solutions(&c, &cfg, config)?;
    Ok(CountReport {
        count: r.count,
        infinite: r.infinite,
        roots: r
            .roots
            .iter()
            .map(|x| RootReport {
                lo: Q::from(&x.lo),
                hi: Q::from(&x.hi),
                multiplicity: x.multiplicity,
            })
            .collect(),
        method: match config.method {
            RootCounting::Companion => "companion",
            RootCounting::Classical => "classical",
        }
        .into(),
    })
}

/// Builds a Viro system attaining the bound of the supplied ordering, or of
/// the best ordering when none is given.
pub fn sharpen(inst: &InstanceFile, config: &T0Config) -> CliResult<SharpenReport> {
    let cfg = inst.config()?;
    let b = circuit_gale(&cfg)?;
    let ord = match inst.ordering_data()? {
        Some(o) => o,
        None => best_ordering(&b).1,
    };
    let mu = mu_sequence(&b, &ord)?;
    let est = estimate_t0(&cfg, &ord, config)?;
    let w = &est.witness;
    let plan = &w.plan;
    Ok(SharpenReport {
        b: b.entries().to_vec(),
        classes: ord.classes().to_vec(),
        sigma: ord.sigma(),
        mu: mu.mu,
        change_indices: mu.change_indices,
        bound: w.target(),
        blocks: plan.original_blocks(),
        alphas: plan.alphas.clone(),
        heights: w
            .heights_original()
            .iter()
            .map(|h| h.as_ref().map(Q::from))
            .collect(),
        t: Q::from(&w.t),
        halvings: est.halvings,
        c_t: w.c_t.matrix().to_rows().iter().map(|r| to_q(r)).collect(),
        p_t: rows2(w.p_t.rows()),
        cells: w
            .cells
            .iter()
            .map(|c| CellReport {
                s: c.s,
                summands: c.summands.clone(),
                volume: Q::from(&c.volume),
                decorated: c.decorated,
                z: to_q(&c.witness_z),
            })
            .collect(),
        decorated_cells: w.decorated_cells(),
        oracle_count: est.count,
        ordering_strict: w.ordering_is_strict(&cfg)?,
    })
}

pub fn classify2d(inst: &InstanceFile) -> CliResult<PlanarReport> {
    let cfg = inst.config()?;
    let class = classify_planar(&cfg)?;
    Ok(PlanarReport {
        b: class.b.entries().to_vec(),
        fundamental_rep: class.fundamental_rep.clone().map(Q),
        exceptional: class.exceptional,
        max_positive: class.max_positive,
        max_bound: max_bound_over_orderings(&class.b),
    })
}

/// Grid classification, row-major in `b1`, computed in parallel.
pub fn region_sample(
    resolution: usize,
    range: &[(Rational, Rational); 2],
) -> CliResult<Vec<RegionSample>> {
    let xs = grid_axis(resolution, &range[0].0, &range[0].1)?;
    let ys = grid_axis(resolution, &range[1].0, &range[1].1)?;
    Ok(xs
        .par_iter()
        .flat_map_iter(|b1| {
            ys.iter().map(move |b2| RegionSample {
                b1: b1.clone(),
                b2: b2.clone(),
                class: classify_point(b1, b2),
            })
        })
        .collect())
}

pub fn write_region_csv<W: Write>(out: W, samples: &[RegionSample]) -> CliResult<()> {
    let mut w = csv::Writer::from_writer(out);
    w.write_record(["b1", "b2", "class"])
        .map_err(|e| CliError::Other(e.to_string()))?;
    for s in samples {
        w.write_record([
            s.b1.to_string(),
            s.b2.to_string(),
            s.class.label().to_string(),
        ])
        .map_err(|e| CliError::Other(e.to_string()))?;
    }
    w.flush()?;
    Ok(())
}
