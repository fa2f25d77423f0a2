//! Planar circuits: which Gale vectors allow three positive solutions.
//!
//! For `n = 2` a circuit has four points and Gale vector `(b_0, b_1, b_2, b_3)`.
//! Up to permutation and rescaling it lies in the fundamental region
//! `-1 <= b_0 <= b_1 <= b_2 <= b_3 = 1`. The maximal number of positive
//! solutions is 3 when `b_0 b_1 b_2 b_3 > 0`, except for `(-1, -1, 1, 1)`, and 2
//! otherwise.

use alloc::vec;
use alloc::vec::Vec;

use num_traits::{Signed, Zero};

use crate::circuit::{ExponentConfig, GaleVectorB};
use crate::error::{Error, Result};
use crate::exact::{common_denominator, int, Rational};

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PlanarClass {
    pub b: GaleVectorB,
    pub max_positive: usize,
    pub exceptional: bool,
    pub fundamental_rep: [Rational; 4],
}

/// Sorted representative with entries in `[-1, 1]` and last entry 1.
///
/// The vector is divided by its largest absolute entry, negated if that
/// entry is negative (a Gale vector is only defined up to scaling), and
/// sorted. Panics on the zero vector.
pub fn fundamental_representative(b: &[Rational; 4]) -> [Rational; 4] {
    let m = b
        .iter()
        .max_by(|x, y| x.abs().cmp(&y.abs()))
        .expect("four entries")
        .clone();
    assert!(!m.is_zero(), "zero Gale vector");
    let mut r: Vec<Rational> = b.iter().map(|x| x / &m).collect();
    r.sort();
    [r[0].clone(), r[1].clone(), r[2].clone(), r[3].clone()]
}

fn exceptional_rep() -> [Rational; 4] {
    [int(-1), int(-1), int(1), int(1)]
}

/// `(max_positive, exceptional, fundamental_rep)` for a rational Gale vector
/// of a planar circuit (no zero entry, zero sum).
pub fn classify_gale(b: &[Rational; 4]) -> Result<(usize, bool, [Rational; 4])> {
    if b.iter().any(Zero::is_zero) {
        return Err(Error::NotACircuit);
    }
    if !b.iter().sum::<Rational>().is_zero() {
        return Err(Error::DegenerateSequence("Gale vector must sum to zero"));
    }
    let rep = fundamental_representative(b);
    let exceptional = rep == exceptional_rep();
    let negatives = b.iter().filter(|x| x.is_negative()).count();
    let max = if negatives % 2 == 0 && !exceptional {
        3
    } else {
        2
    };
    Ok((max, exceptional, rep))
}

pub fn classify_planar(cfg: &ExponentConfig) -> Result<PlanarClass> {
    if cfg.n() != 2 {
        return Err(Error::Dimension(alloc::format!(
            "planar classification needs n = 2, got n = {}",
            cfg.n()
        )));
    }
    let b = cfg.gale_vector()?;
    if !b.is_circuit() {
        return Err(Error::NotACircuit);
    }
    let e = b.entries();
    let (max_positive, exceptional, fundamental_rep) =
        classify_gale(&[int(e[0]), int(e[1]), int(e[2]), int(e[3])])?;
    Ok(PlanarClass {
        b,
        max_positive,
        exceptional,
        fundamental_rep,
    })
}

/// Gale vector `(-1 - b1 - b2, b1, b2, 1)` of the moduli point `(b1, b2)`.
pub fn moduli_gale(b1: &Rational, b2: &Rational) -> [Rational; 4] {
    [-int(1) - b1 - b2, b1.clone(), b2.clone(), int(1)]
}

/// Integer multiple of a rational Gale vector with positive scale.
pub fn to_integer_gale(b: &[Rational]) -> Result<GaleVectorB> {
    let d = common_denominator(b);
    let entries = b
        .iter()
        .map(|x| {
            let v = x * Rational::from_integer(d.clone());
            i64::try_from(v.to_integer()).map_err(|_| Error::Overflow("integer Gale vector"))
        })
        .collect::<Result<Vec<_>>>()?;
    GaleVectorB::new(entries)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum RegionClass {
    Two,
    Three,
    /// Some entry vanishes: not a circuit.
    Boundary,
    /// `(-1, -1, 1, 1)` up to permutation and scaling.
    Exceptional,
}

impl RegionClass {
    pub fn label(self) -> &'static str {
        match self {
            RegionClass::Two => "2",
            RegionClass::Three => "3",
            RegionClass::Boundary => "boundary",
            RegionClass::Exceptional => "exceptional",
        }
    }
}

pub fn classify_point(b1: &Rational, b2: &Rational) -> RegionClass {
    match classify_gale(&moduli_gale(b1, b2)) {
        Err(_) => RegionClass::Boundary,
        Ok((_, true, _)) => RegionClass::Exceptional,
        Ok((3, _, _)) => RegionClass::Three,
        Ok(_) => RegionClass::Two,
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RegionSample {
    pub b1: Rational,
    pub b2: Rational,
    pub class: RegionClass,
}

/// The points `lo + i (hi - lo) / (resolution - 1)` of the axis.
pub fn grid_axis(resolution: usize, lo: &Rational, hi: &Rational) -> Result<Vec<Rational>> {
    if resolution == 0 || lo > hi {
        return Err(Error::InvalidParameter(
            "grid needs resolution >= 1 and lo <= hi".into(),
        ));
    }
    if resolution == 1 {
        return Ok(vec![lo.clone()]);
    }
    let step = (hi - lo) / int(resolution as i64 - 1);
    Ok((0..resolution)
        .map(|i| lo + &step * int(i as i64))
        .collect())
}

/// Classification of the `resolution x resolution` grid over
/// `range[0] x range[1]`, row-major in `b1`.
pub fn sample_region(
    resolution: usize,
    range: &[(Rational, Rational); 2],
) -> Result<Vec<RegionSample>> {
    let xs = grid_axis(resolution, &range[0].0, &range[0].1)?;
    let ys = grid_axis(resolution, &range[1].0, &range[1].1)?;
    let mut out = Vec::with_capacity(xs.len() * ys.len());
    for b1 in &xs {
        for b2 in &ys {
            out.push(RegionSample {
                b1: b1.clone(),
                b2: b2.clone(),
                class: classify_point(b1, b2),
            });
        }
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::descartes::max_bound_over_orderings;
    use crate::exact::rat;
    use proptest::prelude::*;

    fn cfg(points: &[[i64; 2]]) -> ExponentConfig {
        ExponentConfig::new(points.iter().map(|p| p.to_vec()).collect()).unwrap()
    }

    #[test]
    fn named_examples() {
        let square = classify_planar(&cfg(&[[0, 0], [1, 0], [1, 1], [0, 1]])).unwrap();
        assert!(square.exceptional);
        assert_eq!(square.max_positive, 2);
        let a1 = classify_planar(&cfg(&[[0, 0], [1, 0], [1, 2], [0, 1]])).unwrap();
        assert!(!a1.exceptional);
        assert_eq!(a1.max_positive, 3);
        assert_eq!(max_bound_over_orderings(&a1.b), 3);
        let a3 = classify_planar(&cfg(&[[0, 0], [3, 0], [0, 3], [1, 1]])).unwrap();
        assert_eq!(a3.max_positive, 2);
        assert_eq!(max_bound_over_orderings(&a3.b), 2);
    }

    #[test]
    fn representatives() {
        let r = |v: [i64; 4]| fundamental_representative(&v.map(int));
        assert_eq!(r([1, -1, 1, -1]), exceptional_rep());
        assert_eq!(
            r([3, 3, 3, -9]),
            [rat(-1, 3), rat(-1, 3), rat(-1, 3), int(1)]
        );
        assert_eq!(r([2, -1, 1, -2]), [int(-1), rat(-1, 2), rat(1, 2), int(1)]);
    }

    #[test]
    fn exceptional_points_and_boundary() {
        for (x, y) in [(-1, -1), (1, -1), (-1, 1)] {
            assert_eq!(classify_point(&int(x), &int(y)), RegionClass::Exceptional);
        }
        assert_eq!(classify_point(&int(0), &int(2)), RegionClass::Boundary);
        assert_eq!(classify_point(&int(1), &int(-2)), RegionClass::Boundary);
        // b1 b2 (1 + b1 + b2) = (1/2)(-1/4)(5/4) < 0
        assert_eq!(classify_point(&rat(1, 2), &rat(-1, 4)), RegionClass::Three);
        assert_eq!(classify_point(&int(1), &int(1)), RegionClass::Two);
    }

    #[test]
    fn coarse_grid_matches_best_ordering() {
        let range = [(int(-3), int(3)), (int(-3), int(3))];
        for s in sample_region(25, &range).unwrap() {
            let b = moduli_gale(&s.b1, &s.b2);
            let expected = match s.class {
                RegionClass::Boundary => continue,
                RegionClass::Three => 3,
                _ => 2,
            };
            let ib = to_integer_gale(&b).unwrap();
            assert_eq!(max_bound_over_orderings(&ib), expected, "{:?}", b);
        }
    }

    #[test]
    fn rejects_wrong_dimension() {
        let line = ExponentConfig::new(vec![vec![0], vec![1], vec![2]]).unwrap();
        assert!(matches!(classify_planar(&line), Err(Error::Dimension(_))));
    }

    proptest! {
        #[test]
        fn invariant_under_relabeling_and_unimodular_maps(
            pts in proptest::collection::vec(proptest::array::uniform2(0i64..=5), 4),
            perm in Just(vec![0usize, 1, 2, 3]).prop_shuffle(),
            k in -3i64..=3,
            swap in any::<bool>(),
        ) {
            let Ok(c) = ExponentConfig::new(pts.iter().map(|p| p.to_vec()).collect()) else {
                return Ok(());
            };
            let Ok(base) = classify_planar(&c) else { return Ok(()) };
            let permuted = classify_planar(&c.permuted(&perm)).unwrap();
            prop_assert_eq!(permuted.max_positive, base.max_positive);
            prop_assert_eq!(&permuted.fundamental_rep, &base.fundamental_rep);
            let m = if swap { vec![vec![k, 1], vec![1, 0]] } else { vec![vec![1, k], vec![0, 1]] };
            let mapped = classify_planar(&c.transformed(&m, &[2, -1]).unwrap()).unwrap();
            prop_assert_eq!(mapped.max_positive, base.max_positive);
            prop_assert_eq!(mapped.exceptional, base.exceptional);
            prop_assert_eq!(max_bound_over_orderings(&base.b), base.max_positive);
        }
    }
}
