#![allow(dead_code)]

use circuit_descartes::exact::rat;
use circuit_descartes::{CoefficientMatrix, ExponentConfig, Rational};
use proptest::prelude::*;

/// Circuits in `[0, max_coord]^n` with `n` in `1..=max_n`.
pub fn circuit(max_n: usize, max_coord: i64) -> impl Strategy<Value = ExponentConfig> {
    (1..=max_n)
        .prop_flat_map(move |n| {
            proptest::collection::vec(proptest::collection::vec(0..=max_coord, n), n + 2)
        })
        .prop_filter_map("not a circuit", |points| {
            ExponentConfig::new(points).ok().filter(|c| c.is_circuit())
        })
}

/// Entries `p / q` with `|p| <= 9` and `1 <= q <= 4`.
pub fn entry() -> impl Strategy<Value = Rational> {
    (-9i64..=9, 1i64..=4).prop_map(|(p, q)| rat(p, q))
}

/// A circuit together with a full-rank coefficient matrix without zero
/// columns.
pub fn instance(
    max_n: usize,
    max_coord: i64,
) -> impl Strategy<Value = (ExponentConfig, CoefficientMatrix)> {
    circuit(max_n, max_coord)
        .prop_flat_map(|cfg| {
            let n = cfg.n();
            (
                Just(cfg),
                proptest::collection::vec(proptest::collection::vec(entry(), n + 2), n),
            )
        })
        .prop_filter_map("degenerate coefficients", |(cfg, rows)| {
            CoefficientMatrix::from_rows(rows).ok().map(|c| (cfg, c))
        })
}

/// Bound data and exact count for a feasible instance, `None` when the Gale
/// dual is infeasible or has a zero row.
pub struct Evaluated {
    pub ordering: circuit_descartes::OrderingData,
    pub mu: circuit_descartes::MuSequence,
    pub count: usize,
    pub infinite: bool,
}

pub fn evaluate(cfg: &ExponentConfig, c: &CoefficientMatrix) -> Option<Evaluated> {
    use circuit_descartes::descartes::{compute_ordering, mu_sequence};
    use circuit_descartes::galedual::gale_dual_of_c;
    use circuit_descartes::oracle::count_positive_solutions;
    use circuit_descartes::{Error, OracleConfig};

    let ordering = match compute_ordering(&gale_dual_of_c(c)) {
        Ok(o) => o,
        Err(Error::Infeasible | Error::ZeroGaleRow(_)) => return None,
        Err(e) => panic!("ordering failed: {e}"),
    };
    let b = cfg.gale_vector().unwrap();
    let mu = mu_sequence(&b, &ordering).unwrap();
    let config = OracleConfig {
        isolate: false,
        ..OracleConfig::default()
    };
    let r = count_positive_solutions(c, cfg, &config).unwrap();
    Some(Evaluated {
        ordering,
        mu,
        count: r.count,
        infinite: r.infinite,
    })
}
