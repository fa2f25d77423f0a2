mod common;

use circuit_descartes::descartes::{
    descartes_bound, max_bound_over_orderings, old_bound, parity_certificate,
};
use circuit_descartes::exact::int;
use circuit_descartes::Matrix;
use common::{evaluate, instance};
use proptest::prelude::*;

proptest! {
    #![proptest_config(ProptestConfig::with_cases(128))]

    #[test]
    fn count_never_exceeds_bounds((cfg, c) in instance(3, 5)) {
        let Some(e) = evaluate(&cfg, &c) else { return Ok(()) };
        prop_assume!(!e.infinite);
        let b = cfg.gale_vector().unwrap();
        let bound = e.mu.bound();
        prop_assert!(e.count <= bound, "count {} > bound {}", e.count, bound);
        let vol = b.volumes().vol_za;
        prop_assert!(e.count as i64 <= vol);
        prop_assert!(bound <= e.mu.signvar_lambda);
        prop_assert!(e.mu.signvar_lambda <= old_bound(&b, &e.ordering).unwrap());
        prop_assert!(bound <= max_bound_over_orderings(&b));
        let parity = parity_certificate(&b, &e.ordering).unwrap();
        if parity.applies {
            prop_assert_eq!(e.count % 2, bound % 2);
        }
        if parity.positive_guaranteed {
            prop_assert!(e.count >= 1);
        }
    }

    #[test]
    fn invariant_under_row_operations(
        (cfg, c) in instance(3, 5),
        k in -3i64..=3,
    ) {
        let n = cfg.n();
        // unit lower triangular, so invertible
        let m = Matrix::from_rows(
            (0..n)
                .map(|i| (0..n).map(|j| if i == j { int(1) } else if j + 1 == i { int(k) } else { int(0) }).collect())
                .collect(),
        )
        .unwrap();
        let Ok(c2) = c.left_multiplied(&m) else { return Ok(()) };
        let (a, b) = (evaluate(&cfg, &c), evaluate(&cfg, &c2));
        prop_assert_eq!(a.is_some(), b.is_some());
        if let (Some(a), Some(b)) = (a, b) {
            prop_assert_eq!((a.count, a.infinite), (b.count, b.infinite));
            prop_assert_eq!(a.mu.bound(), b.mu.bound());
        }
    }

    #[test]
    fn invariant_under_relabeling(
        ((cfg, c), perm) in instance(3, 5).prop_flat_map(|(cfg, c)| {
            let idx: Vec<usize> = (0..cfg.n() + 2).collect();
            (Just((cfg, c)), Just(idx).prop_shuffle())
        }),
    ) {
        let (cfg2, c2) = (cfg.permuted(&perm), c.permuted_columns(&perm));
        let (a, b) = (evaluate(&cfg, &c), evaluate(&cfg2, &c2));
        prop_assert_eq!(a.is_some(), b.is_some());
        if let (Some(a), Some(b)) = (a, b) {
            prop_assert_eq!((a.count, a.infinite), (b.count, b.infinite));
            prop_assert_eq!(a.mu.bound(), b.mu.bound());
        }
    }

    #[test]
    fn invariant_under_unimodular_maps(
        (cfg, c) in instance(3, 5),
        k in -2i64..=2,
        shift in proptest::collection::vec(-3i64..=3, 3),
    ) {
        let n = cfg.n();
        // upper triangular with unit diagonal
        let m: Vec<Vec<i64>> = (0..n)
            .map(|i| (0..n).map(|j| if i == j { 1 } else if j == i + 1 { k } else { 0 }).collect())
            .collect();
        let cfg2 = cfg.transformed(&m, &shift[..n]).unwrap();
        let (a, b) = (evaluate(&cfg, &c), evaluate(&cfg2, &c));
        prop_assert_eq!(a.is_some(), b.is_some());
        if let (Some(a), Some(b)) = (a, b) {
            prop_assert_eq!((a.count, a.infinite), (b.count, b.infinite));
            prop_assert_eq!(a.mu.bound(), b.mu.bound());
        }
    }

    #[test]
    fn reversal_keeps_the_bound((cfg, c) in instance(3, 5)) {
        let Some(e) = evaluate(&cfg, &c) else { return Ok(()) };
        let b = cfg.gale_vector().unwrap();
        let rev = e.ordering.reversed();
        prop_assert_eq!(descartes_bound(&b, &rev).unwrap(), e.mu.bound());
        prop_assert_eq!(old_bound(&b, &rev).unwrap(), old_bound(&b, &e.ordering).unwrap());
    }
}
