//! Orderings of the Gale rows, the sequences `lambda` and `mu`, and the
//! bound `1 + sgnvar(mu)`.

use alloc::vec;
use alloc::vec::Vec;

use num_traits::Signed;

use crate::circuit::GaleVectorB;
use crate::error::{Error, Result};
use crate::galedual::{cross, GaleDualP};

/// Number of sign changes in `seq`, zeros ignored.
pub fn sign_variation<T: Signed>(seq: &[T]) -> usize {
    let mut last: Option<bool> = None;
    let mut count = 0;
    for x in seq {
        if x.is_zero() {
            continue;
        }
        let pos = x.is_positive();
        if last.is_some_and(|l| l != pos) {
            count += 1;
        }
        last = Some(pos);
    }
    count
}

/// `l_0` is the first nonzero index and `l_i` the first index after
/// `l_{i-1}` whose entry has the opposite sign.
pub fn indices_of_sign_changes<T: Signed>(seq: &[T]) -> Result<Vec<usize>> {
    let first = seq
        .iter()
        .position(|x| !x.is_zero())
        .ok_or(Error::DegenerateSequence("sequence is identically zero"))?;
    let mut out = vec![first];
    let mut pos = seq[first].is_positive();
    for (l, x) in seq.iter().enumerate().skip(first + 1) {
        if !x.is_zero() && x.is_positive() != pos {
            out.push(l);
            pos = !pos;
        }
    }
    Ok(out)
}

/// Classes `K_0, ..., K_{k-1}` of collinear Gale rows in angular order.
///
/// With `epsilon = 1` the rows of later classes are counter-clockwise from
/// earlier ones; `epsilon = -1` is the reversed order.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct OrderingData {
    classes: Vec<Vec<usize>>,
    epsilon: i8,
}

impl OrderingData {
    /// Classes must partition `0..N` for some `N`; indices inside each class
    /// are sorted.
    pub fn from_classes(mut classes: Vec<Vec<usize>>, epsilon: i8) -> Result<Self> {
        if epsilon != 1 && epsilon != -1 {
            return Err(Error::InvalidParameter("epsilon must be 1 or -1".into()));
        }
        let total: usize = classes.iter().map(Vec::len).sum();
        let mut seen = vec![false; total];
        for class in &mut classes {
            if class.is_empty() {
                return Err(Error::InvalidParameter("empty class".into()));
            }
            class.sort_unstable();
            for &j in class.iter() {
                if j >= total || seen[j] {
                    return Err(Error::InvalidParameter(
                        "classes do not partition the index set".into(),
                    ));
                }
                seen[j] = true;
            }
        }
        Ok(OrderingData { classes, epsilon })
    }

    /// Every index in its own class, in the order given by `perm`.
    pub fn singletons(perm: &[usize]) -> Result<Self> {
        OrderingData::from_classes(perm.iter().map(|&j| vec![j]).collect(), 1)
    }

    pub fn classes(&self) -> &[Vec<usize>] {
        &self.classes
    }

    pub fn epsilon(&self) -> i8 {
        self.epsilon
    }

    pub fn k(&self) -> usize {
        self.classes.len()
    }

    /// Number of indices, `n + 2`.
    pub fn len(&self) -> usize {
        self.classes.iter().map(Vec::len).sum()
    }

    pub fn is_empty(&self) -> bool {
        self.classes.is_empty()
    }

    /// The classes flattened: `sigma[i]` is the index in position `i`.
    pub fn sigma(&self) -> Vec<usize> {
        self.classes.iter().flatten().copied().collect()
    }

    /// One representative per class (the smallest index).
    pub fn sigma_bar(&self) -> Vec<usize> {
        self.classes.iter().map(|c| c[0]).collect()
    }

    pub fn reversed(&self) -> Self {
        OrderingData {
            classes: self.classes.iter().rev().cloned().collect(),
            epsilon: -self.epsilon,
        }
    }

    /// The orientation whose first nonzero `lambda` is positive, when the
    /// reversal achieves that; otherwise `self`.
    pub fn oriented(&self, b: &GaleVectorB) -> Result<Self> {
        let lambda = lambda(b, self)?;
        let first = lambda.iter().find(|x| **x != 0);
        let last = lambda.iter().rev().find(|x| **x != 0);
        match (first, last) {
            (Some(&f), Some(&l)) if f < 0 && l > 0 => Ok(self.reversed()),
            _ => Ok(self.clone()),
        }
    }

    /// Whether this is an ordering for the Gale dual `p`: classes are exactly
    /// the collinearity classes and consecutive representatives turn in the
    /// direction given by `epsilon`.
    pub fn is_ordering_for(&self, p: &GaleDualP) -> bool {
        if self.len() != p.len() {
            return false;
        }
        let eps_ok = |i: usize, j: usize| {
            let d = p.det(i, j);
            if self.epsilon > 0 {
                d.is_positive()
            } else {
                d.is_negative()
            }
        };
        for class in &self.classes {
            if class
                .iter()
                .any(|&j| p.det(class[0], j) != num_traits::Zero::zero())
            {
                return false;
            }
        }
        let reps = self.sigma_bar();
        for i in 0..reps.len() {
            for j in i + 1..reps.len() {
                if !eps_ok(reps[i], reps[j]) {
                    return false;
                }
            }
        }
        true
    }
}

/// The canonical ordering of a feasible Gale dual, counter-clockwise
/// (`epsilon = 1`).
pub fn compute_ordering(p: &GaleDualP) -> Result<OrderingData> {
    let rays = p.rays_in_half_plane()?.ok_or(Error::Infeasible)?;
    debug_assert!(rays
        .windows(2)
        .all(|w| cross(p.row(w[0][0]), p.row(w[1][0])).is_positive()));
    OrderingData::from_classes(rays, 1)
}

fn lambda(b: &GaleVectorB, ord: &OrderingData) -> Result<Vec<i64>> {
    if ord.len() != b.len() {
        return Err(Error::Dimension(alloc::format!(
            "ordering has {} indices, Gale vector has {}",
            ord.len(),
            b.len()
        )));
    }
    let e = b.entries();
    // |b| sums are checked at construction, so class sums cannot overflow.
    Ok(ord
        .classes()
        .iter()
        .map(|c| c.iter().map(|&j| e[j]).sum())
        .collect())
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MuSequence {
    pub lambda: Vec<i64>,
    pub mu: Vec<i64>,
    pub signvar_mu: usize,
    pub signvar_lambda: usize,
    /// Indices of sign changes of `mu`; empty when `mu` vanishes.
    pub change_indices: Vec<usize>,
}

impl MuSequence {
    pub fn bound(&self) -> usize {
        1 + self.signvar_mu
    }
}

pub fn mu_sequence(b: &GaleVectorB, ord: &OrderingData) -> Result<MuSequence> {
    let lambda = lambda(b, ord)?;
    let mu: Vec<i64> = lambda
        .iter()
        .scan(0i64, |acc, &x| {
            *acc += x;
            Some(*acc)
        })
        .collect();
    debug_assert_eq!(mu.last(), Some(&0));
    let change_indices = indices_of_sign_changes(&mu).unwrap_or_default();
    Ok(MuSequence {
        signvar_mu: sign_variation(&mu),
        signvar_lambda: sign_variation(&lambda),
        lambda,
        mu,
        change_indices,
    })
}

/// `1 + sgnvar(mu)`.
pub fn descartes_bound(b: &GaleVectorB, ord: &OrderingData) -> Result<usize> {
    Ok(mu_sequence(b, ord)?.bound())
}

/// `max(sgnvar(lambda), vol_ZA)`.
pub fn old_bound(b: &GaleVectorB, ord: &OrderingData) -> Result<usize> {
    let s = mu_sequence(b, ord)?.signvar_lambda;
    let v = b.volumes().vol_za;
    Ok(s.max(usize::try_from(v).unwrap_or(usize::MAX)))
}

/// Rearranges `v` into the next permutation in lexicographic order.
fn next_permutation<T: Ord>(v: &mut [T]) -> bool {
    if v.len() < 2 {
        return false;
    }
    let mut i = v.len() - 1;
    while i > 0 && v[i - 1] >= v[i] {
        i -= 1;
    }
    if i == 0 {
        return false;
    }
    let mut j = v.len() - 1;
    while v[j] <= v[i - 1] {
        j -= 1;
    }
    v.swap(i - 1, j);
    v[i..].reverse();
    true
}

/// Largest `1 + sgnvar(mu)` over all orderings of singleton classes, with the
/// first ordering attaining it. Points with equal `b_j` are interchangeable,
/// so only distinct arrangements of the values are visited.
pub fn best_ordering(b: &GaleVectorB) -> (usize, OrderingData) {
    let e = b.entries();
    let mut values: Vec<i64> = e.to_vec();
    values.sort_unstable();
    let mut best: Option<(usize, Vec<i64>)> = None;
    loop {
        let mut acc = 0i64;
        let mu: Vec<i64> = values
            .iter()
            .map(|&x| {
                acc += x;
                acc
            })
            .collect();
        let bound = 1 + sign_variation(&mu);
        if best.as_ref().is_none_or(|(bb, _)| bound > *bb) {
            best = Some((bound, values.clone()));
        }
        if !next_permutation(&mut values) {
            break;
        }
    }
    let (bound, arrangement) = best.expect("at least one arrangement");
    // Equal values take the unused indices in ascending order.
    let mut used = vec![false; e.len()];
    let perm: Vec<usize> = arrangement
        .iter()
        .map(|&x| {
            let j = (0..e.len())
                .find(|&j| !used[j] && e[j] == x)
                .expect("arrangement is a permutation of b");
            used[j] = true;
            j
        })
        .collect();
    (
        bound,
        OrderingData::singletons(&perm).expect("perm is a permutation"),
    )
}

pub fn max_bound_over_orderings(b: &GaleVectorB) -> usize {
    best_ordering(b).0
}

/// Outcome of checking the three inequalities relating `lambda` and `mu`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct SequenceChecks {
    /// `1 + sgnvar(mu) <= sgnvar(lambda)`.
    pub refines: bool,
    /// `1 + sgnvar(mu) = sgnvar(lambda) mod 2`.
    pub mod2: bool,
    /// `1 + sgnvar(mu) <= sum of the positive entries of lambda`.
    pub volume: bool,
}

impl SequenceChecks {
    pub fn all(&self) -> bool {
        self.refines && self.mod2 && self.volume
    }
}

pub fn sequence_inequalities(lambda: &[i64]) -> Result<SequenceChecks> {
    if lambda.iter().all(|&x| x == 0) {
        return Err(Error::DegenerateSequence("sequence is identically zero"));
    }
    if lambda.iter().map(|&x| i128::from(x)).sum::<i128>() != 0 {
        return Err(Error::DegenerateSequence("sequence does not sum to zero"));
    }
    let mut acc = 0i128;
    let mu: Vec<i128> = lambda
        .iter()
        .map(|&x| {
            acc += i128::from(x);
            acc
        })
        .collect();
    let bound = 1 + sign_variation(&mu);
    let sl = sign_variation(lambda);
    let v: i128 = lambda
        .iter()
        .filter(|&&x| x > 0)
        .map(|&x| i128::from(x))
        .sum();
    Ok(SequenceChecks {
        refines: bound <= sl,
        mod2: bound % 2 == sl % 2,
        volume: (bound as i128) <= v,
    })
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct ParityCertificate {
    /// The first and last `lambda` are nonzero, so the number of positive
    /// solutions has the parity of the bound.
    pub applies: bool,
    /// `(1 + sgnvar(mu)) mod 2`.
    pub parity: u8,
    /// Some positive solution exists: the certificate applies and the bound
    /// is odd.
    pub positive_guaranteed: bool,
}

pub fn parity_certificate(b: &GaleVectorB, ord: &OrderingData) -> Result<ParityCertificate> {
    let mu = mu_sequence(b, ord)?;
    let applies =
        mu.lambda.first().is_some_and(|&x| x != 0) && mu.lambda.last().is_some_and(|&x| x != 0);
    let parity = (mu.bound() % 2) as u8;
    Ok(ParityCertificate {
        applies,
        parity,
        positive_guaranteed: applies && parity == 1,
    })
}
