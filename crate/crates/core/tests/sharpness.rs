mod common;

use circuit_descartes::descartes::{best_ordering, max_bound_over_orderings};
use circuit_descartes::oracle::count_positive_solutions;
use circuit_descartes::viro::{estimate_t0, zonotope_volume_check, T0Config};
use circuit_descartes::OracleConfig;
use common::circuit;
use num_bigint::BigInt;
use proptest::prelude::*;

proptest! {
    #![proptest_config(ProptestConfig::with_cases(40))]

    #[test]
    fn witness_attains_the_bound(cfg in circuit(3, 5)) {
        let b = cfg.gale_vector().unwrap();
        let (bound, ord) = best_ordering(&b);
        prop_assert_eq!(bound, max_bound_over_orderings(&b));
        let est = estimate_t0(&cfg, &ord, &T0Config::default()).unwrap();
        let w = &est.witness;
        prop_assert_eq!(est.count, bound);
        prop_assert_eq!(w.target(), bound);
        prop_assert_eq!(w.decorated_cells(), bound);
        prop_assert_eq!(w.cells.len(), bound);
        for cell in &w.cells {
            let beta = w.plan.mu.mu[w.plan.mu.change_indices[cell.s]].abs();
            prop_assert_eq!(&cell.volume, &BigInt::from(beta));
        }
        prop_assert!(w.ordering_is_strict(&cfg).unwrap());
        // recount at the returned t, with isolation
        let r = count_positive_solutions(&w.c_t, &cfg, &OracleConfig::default()).unwrap();
        prop_assert_eq!(r.count, bound);
        prop_assert_eq!(r.roots.iter().map(|x| x.multiplicity).sum::<usize>(), bound);
    }

    #[test]
    fn zonotope_volumes(cfg in circuit(4, 4)) {
        for ell in 0..=cfg.n() {
            let z = zonotope_volume_check(&cfg, ell).unwrap();
            prop_assert!(z.equal, "ell {}: {} vs {}", ell, z.volume, z.mu_abs);
        }
    }
}
