//! Viro systems attaining the bound `1 + sgnvar(mu)`.
//!
//! Given a circuit and an ordering with `m = sgnvar(mu)`, the classes are
//! merged into blocks `M_0, ..., M_{m+1}` at the sign changes of `mu`. Each
//! block gets a height, and the system
//!
//! ```text
//! x^{a_j} = x^{a_0}                 j in M_0 \ {0}
//! x^{a_j} = 1 + t^{h_j} x^{a_0}     j in M_1 u ... u M_m
//! x^{a_j} = 1                       j in M_{m+1} \ {n+1}
//! ```
//!
//! (with `a_{n+1} = 0`) has `m + 1` positively decorated mixed cells, hence
//! `m + 1` positive solutions for small `t > 0`. The construction works on a
//! reordered, translated copy of the configuration; everything reported
//! outside uses the original indices.

use alloc::format;
use alloc::string::String;
use alloc::vec;
use alloc::vec::Vec;

use num_bigint::BigInt;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::circuit::{ExponentConfig, GaleVectorB};
use crate::descartes::{
    compute_ordering, max_bound_over_orderings, mu_sequence, MuSequence, OrderingData,
};
use crate::error::{Error, Result};
use crate::exact::{det_i64, int, pow, Matrix, Rational};
use crate::galedual::{gale_dual_of_c, CoefficientMatrix, GaleDualP};
use crate::oracle::{count_positive_solutions, OracleConfig};

/// Volume of `sum_{j<=l} {a_0, a_j} + sum_{l<j<=n} {a_{n+1}, a_j}` next to
/// `|b_0 + ... + b_l|`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ZonotopeCheck {
    pub volume: BigInt,
    pub mu_abs: i64,
    pub equal: bool,
}

pub fn zonotope_volume_check(cfg: &ExponentConfig, ell: usize) -> Result<ZonotopeCheck> {
    let n = cfg.n();
    if ell > n {
        return Err(Error::InvalidParameter(format!(
            "index {ell} exceeds n = {n}"
        )));
    }
    let b = cfg.gale_vector()?;
    if !b.is_circuit() {
        return Err(Error::NotACircuit);
    }
    let edges: Vec<Vec<i64>> = (1..=n)
        .map(|j| {
            let base = if j <= ell {
                cfg.point(0)
            } else {
                cfg.point(n + 1)
            };
            cfg.point(j).iter().zip(base).map(|(x, y)| x - y).collect()
        })
        .collect();
    let volume = det_i64(&edges).abs();
    let mu_abs = b.entries()[..=ell].iter().sum::<i64>().abs();
    Ok(ZonotopeCheck {
        equal: volume == BigInt::from(mu_abs),
        volume,
        mu_abs,
    })
}

/// `0 < T_0 < T_1 < ... < T_m` for `T_s = (-1)^s sum_{r <= s, r = s mod 2} alpha_r`,
/// where `alphas` has length `m + 2`.
pub fn interlacing_holds(alphas: &[i64]) -> bool {
    let mut prev = 0i128;
    for s in 0..alphas.len().saturating_sub(1) {
        let sum: i128 = (0..=s)
            .filter(|r| r % 2 == s % 2)
            .map(|r| i128::from(alphas[r]))
            .sum();
        let t = if s % 2 == 0 { sum } else { -sum };
        if t <= prev {
            return false;
        }
        prev = t;
    }
    true
}

/// Integer block heights `h_0 = 0 < h_1 < ... < h_m` and the slopes `u_s`
/// of the lower edges they produce.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Heights {
    pub h: Vec<BigInt>,
    pub u: Vec<Rational>,
}

fn slope(alphas: &[i64], h: &[BigInt], s: usize) -> Rational {
    let num: BigInt = (0..=s).map(|r| BigInt::from(alphas[r]) * &h[r]).sum();
    let beta: i64 = alphas[..=s].iter().sum();
    -Rational::new(num, BigInt::from(beta))
}

/// Checks `h_0 = 0`, `h` increasing and `h_s < -u_s < h_{s+1}` for every
/// `s >= 1` (the last without upper limit).
pub fn heights_satisfy_conditions(alphas: &[i64], h: &[BigInt]) -> bool {
    let m = h.len() - 1;
    if !h[0].is_zero() || h.windows(2).any(|w| w[0] >= w[1]) {
        return false;
    }
    (1..=m).all(|s| {
        let minus_u = -slope(alphas, h, s);
        let hs = Rational::from_integer(h[s].clone());
        minus_u > hs && (s == m || minus_u < Rational::from_integer(h[s + 1].clone()))
    })
}

const HEIGHT_RETRIES: u32 = 16;

/// Greedy heights for block sums `alpha_0, ..., alpha_{m+1}` with
/// `alpha_0 > 0`: `h_1 = 1` and `h_{s+1} = floor(-u_s) + delta`.
pub fn build_heights(alphas: &[i64]) -> Result<Heights> {
    if alphas.len() < 2 || alphas[0] <= 0 {
        return Err(Error::InvalidParameter(
            "block sums need length >= 2 and a positive first entry".into(),
        ));
    }
    let m = alphas.len() - 2;
    let mut delta = BigInt::one();
    for _ in 0..HEIGHT_RETRIES {
        let mut h = vec![BigInt::zero()];
        if m >= 1 {
            h.push(BigInt::one());
        }
        for s in 1..m {
            let minus_u = -slope(alphas, &h, s);
            h.push(minus_u.floor().to_integer() + &delta);
        }
        if heights_satisfy_conditions(alphas, &h) {
            let u = (0..=m)
                .map(|s| {
                    if s == 0 {
                        Rational::zero()
                    } else {
                        slope(alphas, &h, s)
                    }
                })
                .collect();
            return Ok(Heights { h, u });
        }
        delta *= 2;
    }
    Err(Error::HeightConstructionFailed {
        retries: HEIGHT_RETRIES,
    })
}

/// Everything about the construction that does not depend on `t`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ViroPlan {
    /// Working index `i` is original index `sigma[i]`.
    pub sigma: Vec<usize>,
    /// Reordered configuration translated so that the last point is `0`.
    pub working: ExponentConfig,
    /// Gale vector of the working configuration, signed so `alpha_0 > 0`.
    pub b: Vec<i64>,
    pub mu: MuSequence,
    /// Blocks `M_0, ..., M_{m+1}` in working indices.
    pub blocks: Vec<Vec<usize>>,
    pub alphas: Vec<i64>,
    pub betas: Vec<i64>,
    pub heights: Heights,
}

impl ViroPlan {
    /// `sgnvar(mu)`.
    pub fn m(&self) -> usize {
        self.blocks.len() - 2
    }

    pub fn target(&self) -> usize {
        self.m() + 1
    }

    fn n(&self) -> usize {
        self.working.n()
    }

    /// `j_s`: last working index of `M_s`.
    fn block_end(&self, s: usize) -> usize {
        *self.blocks[s].last().expect("blocks are nonempty")
    }

    fn block_of(&self, j: usize) -> usize {
        self.blocks
            .iter()
            .position(|blk| blk.contains(&j))
            .expect("blocks partition the indices")
    }

    /// Height of the `t`-power on `x^{a_0}` in equation `j`, when present.
    fn equation_height(&self, j: usize) -> Option<&BigInt> {
        let s = self.block_of(j);
        (1..=self.m()).contains(&s).then(|| &self.heights.h[s])
    }

    /// Lifting matrix `H` in working column order.
    pub fn lifting_matrix(&self) -> Vec<Vec<BigInt>> {
        let n = self.n();
        (1..=n)
            .map(|j| {
                let mut row = vec![BigInt::zero(); n + 2];
                if let Some(h) = self.equation_height(j) {
                    row[0] = h.clone();
                }
                row
            })
            .collect()
    }

    /// `C_t` in working column order.
    pub fn coefficient_matrix(&self, t: &Rational) -> Result<Matrix> {
        let n = self.n();
        let mut c = Matrix::zeros(n, n + 2);
        for j in 1..=n {
            let i = j - 1;
            c.set(i, j, Rational::one());
            if j <= self.block_end(0) {
                c.set(i, 0, -Rational::one());
                continue;
            }
            c.set(i, n + 1, -Rational::one());
            if let Some(h) = self.equation_height(j) {
                let e = h.to_u32().ok_or(Error::Overflow("height exponent"))?;
                c.set(i, 0, -pow(t, e));
            }
        }
        Ok(c)
    }

    /// Gale dual rows `P_j(t)` in working order.
    pub fn gale_rows(&self, t: &Rational) -> Result<Vec<[Rational; 2]>> {
        let m = self.m();
        let mut rows = Vec::with_capacity(self.n() + 2);
        for j in 0..self.n() + 2 {
            let s = self.block_of(j);
            rows.push(if s == 0 {
                [Rational::zero(), Rational::one()]
            } else if s == m + 1 {
                [Rational::one(), Rational::zero()]
            } else {
                let e = self.heights.h[s]
                    .to_u32()
                    .ok_or(Error::Overflow("height exponent"))?;
                [Rational::one(), pow(t, e)]
            });
        }
        Ok(rows)
    }

    fn to_original(&self, working: &[usize]) -> Vec<usize> {
        let mut v: Vec<usize> = working.iter().map(|&j| self.sigma[j]).collect();
        v.sort_unstable();
        v
    }

    /// Blocks in original indices.
    pub fn original_blocks(&self) -> Vec<Vec<usize>> {
        self.blocks.iter().map(|b| self.to_original(b)).collect()
    }
}

/// Reorders and translates the configuration, merges classes into blocks
/// at the sign changes of `mu` and picks heights.
pub fn plan_viro(cfg: &ExponentConfig, ord: &OrderingData) -> Result<ViroPlan> {
    let n = cfg.n();
    if ord.len() != n + 2 {
        return Err(Error::Dimension(format!(
            "ordering has {} indices, configuration has {}",
            ord.len(),
            n + 2
        )));
    }
    if !cfg.is_circuit() {
        return Err(Error::NotACircuit);
    }
    let sigma = ord.sigma();
    let permuted = cfg.permuted(&sigma);
    let working = permuted.translated_to(permuted.point(n + 1));
    let mut b: Vec<i64> = working.gale_vector()?.entries().to_vec();

    // classes become runs of consecutive working indices
    let mut classes = Vec::with_capacity(ord.k());
    let mut next = 0;
    for class in ord.classes() {
        classes.push((next..next + class.len()).collect::<Vec<usize>>());
        next += class.len();
    }
    let working_ord = OrderingData::from_classes(classes.clone(), 1)?;
    let gb = GaleVectorB::new(b.clone())?;
    let mut mu = mu_sequence(&gb, &working_ord)?;
    if mu.change_indices.is_empty() {
        return Err(Error::DegenerateSequence("mu vanishes identically"));
    }
    let ells = mu.change_indices.clone();
    let m = ells.len() - 1;
    let mut blocks: Vec<Vec<usize>> = Vec::with_capacity(m + 2);
    let mut start = 0;
    for &l in &ells {
        blocks.push(classes[start..=l].iter().flatten().copied().collect());
        start = l + 1;
    }
    blocks.push(classes[start..].iter().flatten().copied().collect());
    debug_assert!(blocks.iter().all(|blk| !blk.is_empty()));

    let mut alphas: Vec<i64> = blocks
        .iter()
        .map(|blk| blk.iter().map(|&j| b[j]).sum())
        .collect();
    if alphas[0] < 0 {
        for x in b.iter_mut().chain(alphas.iter_mut()) {
            *x = -*x;
        }
        mu = mu_sequence(&GaleVectorB::new(b.clone())?, &working_ord)?;
    }
    let betas: Vec<i64> = alphas
        .iter()
        .scan(0i64, |acc, &a| {
            *acc += a;
            Some(*acc)
        })
        .collect();
    debug_assert!(ells.iter().zip(&betas).all(|(&l, &beta)| mu.mu[l] == beta));
    if !interlacing_holds(&alphas) {
        return Err(Error::HeightConstructionFailed { retries: 0 });
    }
    let heights = build_heights(&alphas)?;
    Ok(ViroPlan {
        sigma,
        working,
        b,
        mu,
        blocks,
        alphas,
        betas,
        heights,
    })
}

/// A mixed cell `Z_s` of the subdivision induced by the lifting.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MixedCell {
    pub s: usize,
    /// For each equation `j = 1..n` (working order) the segment it
    /// contributes, as original indices.
    pub summands: Vec<[usize; 2]>,
    pub volume: BigInt,
    pub decorated: bool,
    /// The point `z` with `(z, 1)` minimized exactly on the cell.
    pub witness_z: Vec<Rational>,
    pub u: Rational,
}

fn cell_error(s: usize, reason: String) -> Error {
    Error::CellVerificationFailed { cell: s, reason }
}

/// Builds and verifies the cells `Z_0, ..., Z_m` of the plan: solves for
/// the functional that selects each cell, checks that on every equation it
/// is minimized exactly on the cell's segment, checks the volume against
/// `|beta_s|` and the sign condition on the coefficients.
pub fn enumerate_mixed_cells(plan: &ViroPlan, c_working: &Matrix) -> Result<Vec<MixedCell>> {
    let n = plan.n();
    let a = |j: usize| -> Vec<Rational> { plan.working.point(j).iter().map(|&x| int(x)).collect() };
    let lifting = plan.lifting_matrix();
    let mut cells = Vec::with_capacity(plan.m() + 1);
    for s in 0..=plan.m() {
        let js = plan.block_end(s);
        let u = plan.heights.u[s].clone();
        let height = |j: usize| -> Rational {
            let blk = plan.block_of(j);
            if blk <= plan.m() {
                Rational::from_integer(plan.heights.h[blk].clone())
            } else {
                Rational::zero()
            }
        };
        let rhs = |j: usize| -> Rational {
            if j <= js {
                &u + height(j)
            } else {
                Rational::zero()
            }
        };
        let z: Vec<Rational> = if s == 0 {
            vec![Rational::zero(); n]
        } else {
            // drop one equation of the block and recover it from sum b_j a_j = 0
            let dropped = *plan.blocks[s].first().expect("nonempty block");
            let idx: Vec<usize> = (0..=n).filter(|&j| j != dropped).collect();
            let m = Matrix::from_rows(idx.iter().map(|&j| a(j)).collect())?;
            let r: Vec<Rational> = idx.iter().map(|&j| rhs(j)).collect();
            let z = m
                .solve(&r)
                .ok_or_else(|| cell_error(s, "singular cell system".into()))?;
            let lhs: Rational = a(dropped).iter().zip(&z).map(|(x, y)| x * y).sum();
            if lhs != rhs(dropped) {
                return Err(cell_error(s, format!("equation {dropped} not recovered")));
            }
            z
        };
        for j in 0..=n {
            let lhs: Rational = a(j).iter().zip(&z).map(|(x, y)| x * y).sum();
            if lhs != rhs(j) {
                return Err(cell_error(s, format!("condition for point {j} fails")));
            }
        }

        let mut summands = Vec::with_capacity(n);
        let mut edges = Vec::with_capacity(n);
        let mut decorated = true;
        for j in 1..=n {
            let base = if j <= js { 0 } else { n + 1 };
            let i = j - 1;
            let support: Vec<usize> = (0..n + 2)
                .filter(|&col| !c_working[(i, col)].is_zero())
                .collect();
            let psi = |col: usize| -> Rational {
                let v: Rational = a(col).iter().zip(&z).map(|(x, y)| x * y).sum();
                v + Rational::from_integer(lifting[i][col].clone())
            };
            let min = support
                .iter()
                .map(|&col| psi(col))
                .min()
                .expect("nonempty row");
            let argmin: Vec<usize> = support
                .iter()
                .copied()
                .filter(|&col| psi(col) == min)
                .collect();
            let mut expect = vec![base, j];
            expect.sort_unstable();
            if argmin != expect {
                return Err(cell_error(
                    s,
                    format!("equation {j} is minimized on {argmin:?}, expected {expect:?}"),
                ));
            }
            if (&c_working[(i, base)] * &c_working[(i, j)]).is_positive() {
                decorated = false;
            }
            let sj = [
                plan.sigma[base].min(plan.sigma[j]),
                plan.sigma[base].max(plan.sigma[j]),
            ];
            summands.push(sj);
            edges.push(
                plan.working
                    .point(j)
                    .iter()
                    .zip(plan.working.point(base))
                    .map(|(x, y)| x - y)
                    .collect::<Vec<i64>>(),
            );
        }
        let volume = det_i64(&edges).abs();
        if volume != BigInt::from(plan.betas[s].abs()) {
            return Err(cell_error(
                s,
                format!(
                    "volume {volume} differs from |beta| = {}",
                    plan.betas[s].abs()
                ),
            ));
        }
        cells.push(MixedCell {
            s,
            summands,
            volume,
            decorated,
            witness_z: z,
            u,
        });
    }
    Ok(cells)
}

/// A Viro system at a specific `t` with its certificates.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ViroWitness {
    pub plan: ViroPlan,
    pub t: Rational,
    /// `C_t` in the original column order.
    pub c_t: CoefficientMatrix,
    /// Gale dual rows of `C_t` in the original order.
    pub p_t: GaleDualP,
    pub cells: Vec<MixedCell>,
}

impl ViroWitness {
    /// The bound `1 + sgnvar(mu)` that the system attains for small `t`.
    pub fn target(&self) -> usize {
        self.plan.target()
    }

    pub fn decorated_cells(&self) -> usize {
        self.cells.iter().filter(|c| c.decorated).count()
    }

    /// Heights by original index; `None` for indices in the last block.
    pub fn heights_original(&self) -> Vec<Option<BigInt>> {
        let mut out = vec![None; self.plan.sigma.len()];
        for (s, blk) in self.plan.blocks.iter().enumerate() {
            for &j in blk {
                out[self.plan.sigma[j]] = self.plan.heights.h.get(s).cloned();
            }
        }
        out
    }

    /// The canonical ordering of `C_t` has the blocks as classes (in order
    /// or reversed) and gives the bound `m + 1`.
    pub fn ordering_is_strict(&self, cfg: &ExponentConfig) -> Result<bool> {
        let ord = compute_ordering(&gale_dual_of_c(&self.c_t))?;
        let blocks = self.plan.original_blocks();
        let forward = ord.classes() == blocks.as_slice();
        let backward = ord.reversed().classes() == blocks.as_slice();
        let b = cfg.gale_vector()?;
        Ok((forward || backward) && crate::descartes::descartes_bound(&b, &ord)? == self.target())
    }
}

/// The Viro system for `cfg` and `ord` at parameter `t` in `(0, 1)`.
pub fn build_viro_system(
    cfg: &ExponentConfig,
    ord: &OrderingData,
    t: &Rational,
) -> Result<ViroWitness> {
    if !t.is_positive() || *t >= Rational::one() {
        return Err(Error::InvalidParameter("t must lie in (0, 1)".into()));
    }
    let plan = plan_viro(cfg, ord)?;
    witness_for_plan(cfg, plan, t)
}

fn witness_for_plan(cfg: &ExponentConfig, plan: ViroPlan, t: &Rational) -> Result<ViroWitness> {
    let n = plan.n();
    let cw = plan.coefficient_matrix(t)?;
    let rows = plan.gale_rows(t)?;
    let pw = Matrix::from_rows(rows.iter().map(|r| r.to_vec()).collect())?;
    if !cw.mul(&pw)?.is_zero() {
        return Err(cell_error(0, "C_t P(t) does not vanish".into()));
    }
    // back to the original column order
    let mut inverse = vec![0; n + 2];
    for (i, &j) in plan.sigma.iter().enumerate() {
        inverse[j] = i;
    }
    // with m = 0 and M_0 = {0} the monomial x^{a_0} drops out entirely
    let c_t = CoefficientMatrix::allowing_zero_columns(cw.select_columns(&inverse))?;
    let p_t = GaleDualP::from_rows(inverse.iter().map(|&i| rows[i].clone()).collect())?;
    let cells = enumerate_mixed_cells(&plan, &cw)?;
    let witness = ViroWitness {
        plan,
        t: t.clone(),
        c_t,
        p_t,
        cells,
    };
    let best = max_bound_over_orderings(&cfg.gale_vector()?);
    if witness.decorated_cells() > best {
        return Err(cell_error(
            0,
            format!(
                "{} decorated cells exceed the bound {best}",
                witness.decorated_cells()
            ),
        ));
    }
    Ok(witness)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct T0Config {
    pub max_halvings: u32,
    /// Consecutive halvings that must reproduce the target count.
    pub confirmations: u32,
    pub oracle: OracleConfig,
}

impl Default for T0Config {
    fn default() -> Self {
        T0Config {
            max_halvings: 60,
            confirmations: 3,
            oracle: OracleConfig {
                isolate: false,
                ..OracleConfig::default()
            },
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct T0Estimate {
    /// Witness at the largest `t` of the confirming run.
    pub witness: ViroWitness,
    pub count: usize,
    /// `t = 2^-halvings`.
    pub halvings: u32,
}

/// Halves `t` from `1/2` until the exact count equals `1 + sgnvar(mu)` for
/// several consecutive values.
pub fn estimate_t0(
    cfg: &ExponentConfig,
    ord: &OrderingData,
    config: &T0Config,
) -> Result<T0Estimate> {
    let plan = plan_viro(cfg, ord)?;
    let target = plan.target();
    let half = Rational::new(BigInt::one(), BigInt::from(2));
    let mut t = half.clone();
    let mut run: Option<(u32, Rational)> = None;
    let mut streak = 0;
    let mut last_count = 0;
    for k in 1..=config.max_halvings {
        let w = witness_for_plan(cfg, plan.clone(), &t)?;
        let r = count_positive_solutions(&w.c_t, cfg, &config.oracle)?;
        last_count = r.count;
        if !r.infinite && r.count == target {
            if streak == 0 {
                run = Some((k, t.clone()));
            }
            streak += 1;
            if streak >= config.confirmations {
                let (k0, t0) = run.expect("streak started");
                return Ok(T0Estimate {
                    witness: witness_for_plan(cfg, plan, &t0)?,
                    count: target,
                    halvings: k0,
                });
            }
        } else {
            streak = 0;
        }
        t *= &half;
    }
    Err(Error::T0NotFound {
        target,
        halvings: config.max_halvings,
        last_count,
    })
}
