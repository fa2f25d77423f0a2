//! Exact count of positive solutions.
//!
//! Positive solutions of the system correspond to points `y` of the
//! positivity interval with `g(y) = prod p_j(y)^{b_j} = 1`. Since the
//! denominator of `g` is positive there, these are the roots of
//! `F = plus - minus` inside the interval, with the same multiplicities.

use alloc::vec::Vec;

use num_bigint::BigInt;
use num_traits::{One, Pow, Zero};

use crate::circuit::{ExponentConfig, GaleVectorB};
use crate::error::{Error, Result};
use crate::exact::{common_denominator, Rational};
use crate::galedual::{
    gale_dual_of_c, normalize, positivity_interval, CoefficientMatrix, GaleDualP,
    PositivityInterval,
};
use crate::poly::{count_roots, count_roots_with_companion, IntPoly, UniPoly};

pub use crate::poly::RootInterval;

/// How the roots of `F` are counted.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum RootCounting {
    /// Signed remainder sequence of `F` and the numerator `N` of the
    /// logarithmic derivative of `g`. `N` has degree at most `n + 1`, so the
    /// sequence is short whatever the degree of `F`.
    #[default]
    Companion,
    /// Square-free decomposition of `F` and a Sturm sequence per factor.
    Classical,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct OracleConfig {
    /// Refuse to expand `plus` and `minus` beyond this degree.
    pub max_degree: usize,
    pub method: RootCounting,
    /// Compute isolating intervals. Without them the companion method only
    /// counts, which is much cheaper when roots cluster.
    pub isolate: bool,
}

impl Default for OracleConfig {
    fn default() -> Self {
        OracleConfig {
            max_degree: 512,
            method: RootCounting::default(),
            isolate: true,
        }
    }
}

/// `g = plus / minus` on the positivity interval of `P`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GaleFunction {
    pub plus: UniPoly,
    pub minus: UniPoly,
    pub f: UniPoly,
    /// `N = sum_j b_j P_j1 prod_{i != j} p_i`, so that
    /// `g'/g = N / prod_j p_j`. At a root `c` of `F` in the interval,
    /// `F' = plus * N / prod_j p_j`, and `F` vanishes to order one more
    /// than `N`.
    pub companion: UniPoly,
    pub interval: PositivityInterval,
}

impl GaleFunction {
    /// `g(y)`, or `None` where `minus` vanishes.
    pub fn g(&self, y: &Rational) -> Option<Rational> {
        let d = self.minus.eval(y);
        if d.is_zero() {
            None
        } else {
            Some(self.plus.eval(y) / d)
        }
    }
}

/// `k * P` for a positive rational `k` and an integer polynomial `P`.
type Scaled = (Rational, IntPoly);

/// The Gale function in integer form.
struct IntegerGale {
    plus: Scaled,
    minus: Scaled,
    /// Positive multiple of `plus - minus`.
    f: IntPoly,
    /// Positive multiple of the companion.
    companion: IntPoly,
}

/// Each row `p_j` is a positive rational times an integer linear form, so
/// both products are expanded over the integers.
fn integer_gale(b: &GaleVectorB, p: &GaleDualP, config: &OracleConfig) -> Result<IntegerGale> {
    if b.len() != p.len() {
        return Err(Error::Dimension(alloc::format!(
            "Gale vector has {} entries, Gale dual has {} rows",
            b.len(),
            p.len()
        )));
    }
    let degree: usize = b
        .entries()
        .iter()
        .filter(|&&x| x > 0)
        .map(|&x| x.unsigned_abs() as usize)
        .sum();
    if degree > config.max_degree {
        return Err(Error::DegreeTooLarge {
            degree,
            max: config.max_degree,
        });
    }
    let one = || (Rational::one(), IntPoly::from_i64(&[1]));
    let (mut plus, mut minus) = (one(), one());
    let mut forms = Vec::with_capacity(p.len());
    for (j, &bj) in b.entries().iter().enumerate() {
        let row = p.row(j);
        let d = common_denominator(row.iter());
        let form = IntPoly::new(
            row.iter()
                .map(|x| (x * Rational::from_integer(d.clone())).to_integer())
                .collect(),
        );
        let e = u32::try_from(bj.unsigned_abs()).map_err(|_| Error::Overflow("exponent"))?;
        let side = if bj > 0 { &mut plus } else { &mut minus };
        side.0 /= Rational::from_integer(Pow::pow(&d, e));
        side.1 = side.1.mul(&form.pow(e));
        forms.push((form, d));
    }
    // plus - minus is a positive multiple of numer(k) P+ - denom(k) P- with
    // k = k+ / k-
    let k = &plus.0 / &minus.0;
    let f = plus
        .1
        .scaled(k.numer())
        .sub(&minus.1.scaled(k.denom()))
        .primitive_part();
    // with p_i = L_i / d_i the companion is sum_j b_j L_j1 prod_{i != j} L_i
    // divided by the positive prod_i d_i
    let mut companion = IntPoly::from_i64(&[]);
    for (j, &bj) in b.entries().iter().enumerate() {
        let slope = forms[j].0.coeffs().get(1).cloned().unwrap_or_default();
        let mut term = IntPoly::new(alloc::vec![slope * BigInt::from(bj)]);
        for (i, (form, _)) in forms.iter().enumerate() {
            if i != j {
                term = term.mul(form);
            }
        }
        companion = companion.add(&term);
    }
    Ok(IntegerGale {
        plus,
        minus,
        f,
        companion: companion.primitive_part(),
    })
}

/// Expands the two products of linear forms for the rows of `p` as given.
/// Counting is only meaningful for a normalized `p`.
pub fn build_gale_function(
    b: &GaleVectorB,
    p: &GaleDualP,
    config: &OracleConfig,
) -> Result<GaleFunction> {
    let ig = integer_gale(b, p, config)?;
    let plus = ig.plus.1.to_uni_poly(&ig.plus.0);
    let minus = ig.minus.1.to_uni_poly(&ig.minus.0);
    let f = plus.sub(&minus);
    let forms: Vec<UniPoly> = p
        .rows()
        .iter()
        .map(|r| UniPoly::linear(r[0].clone(), r[1].clone()))
        .collect();
    let mut companion = UniPoly::zero();
    for (j, &bj) in b.entries().iter().enumerate() {
        let mut term = UniPoly::constant(p.row(j)[1].clone() * Rational::from_integer(bj.into()));
        for (i, form) in forms.iter().enumerate() {
            if i != j {
                term = term.mul(form);
            }
        }
        companion = companion.add(&term);
    }
    Ok(GaleFunction {
        plus,
        minus,
        f,
        companion,
        interval: positivity_interval(p),
    })
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CountResult {
    /// Positive solutions counted with multiplicity (0 when infinite).
    pub count: usize,
    /// `g` is identically 1, so the solution set is a curve.
    pub infinite: bool,
    /// Isolating intervals in the `y` coordinate of the normalized dual
    /// (empty when isolation was not requested).
    pub roots: Vec<RootInterval>,
}

impl CountResult {
    fn empty() -> Self {
        CountResult {
            count: 0,
            infinite: false,
            roots: Vec::new(),
        }
    }
}

/// Counts the roots of `F` inside the positivity interval of a Gale dual.
/// The dual is normalized first; infeasible duals have no positive solution.
pub fn count_from_gale(
    b: &GaleVectorB,
    p: &GaleDualP,
    config: &OracleConfig,
) -> Result<CountResult> {
    if !b.is_circuit() {
        return Err(Error::NotACircuit);
    }
    let q = match normalize(p) {
        Ok((q, _)) => q,
        Err(Error::Infeasible | Error::ZeroGaleRow(_)) => return Ok(CountResult::empty()),
        Err(e) => return Err(e),
    };
    let ig = integer_gale(b, &q, config)?;
    if ig.f.is_zero() {
        return Ok(CountResult {
            count: 0,
            infinite: true,
            roots: Vec::new(),
        });
    }
    let interval = positivity_interval(&q);
    if interval.empty {
        return Ok(CountResult::empty());
    }
    let (lo, hi) = (interval.lower.as_ref(), interval.upper.as_ref());
    let (count, roots) = match config.method {
        RootCounting::Companion => {
            count_roots_with_companion(&ig.f, &ig.companion, lo, hi, config.isolate)
        }
        RootCounting::Classical => {
            let (count, mut roots) = count_roots(&ig.f, lo, hi);
            if !config.isolate {
                roots.clear();
            }
            (count, roots)
        }
    };
    Ok(CountResult {
        count,
        infinite: false,
        roots,
    })
}

/// Number of positive solutions of the system with coefficient matrix `c`
/// supported on `cfg`.
pub fn count_positive_solutions(
    c: &CoefficientMatrix,
    cfg: &ExponentConfig,
    config: &OracleConfig,
) -> Result<CountResult> {
    if c.n() != cfg.n() {
        return Err(Error::Dimension(alloc::format!(
            "coefficient matrix has {} rows, configuration lives in dimension {}",
            c.n(),
            cfg.n()
        )));
    }
    let b = cfg.gale_vector()?;
    if !b.is_circuit() {
        return Err(Error::NotACircuit);
    }
    count_from_gale(&b, &gale_dual_of_c(c), config)
}

/// Whether the positive solution set is infinite.
pub fn detect_infinite(
    c: &CoefficientMatrix,
    cfg: &ExponentConfig,
    config: &OracleConfig,
) -> Result<bool> {
    Ok(count_positive_solutions(c, cfg, config)?.infinite)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::{int, rat};
    use alloc::vec;
    use num_traits::{One, Signed};
    use proptest::prelude::*;

    fn cm(rows: &[&[i64]]) -> CoefficientMatrix {
        CoefficientMatrix::from_rows(
            rows.iter()
                .map(|r| r.iter().map(|&x| int(x)).collect())
                .collect(),
        )
        .unwrap()
    }

    fn line(points: &[i64]) -> ExponentConfig {
        ExponentConfig::new(points.iter().map(|&x| vec![x]).collect()).unwrap()
    }

    // Independent univariate oracle: monic Euclid over Q for the square-free
    // decomposition and a classical Sturm chain with rational remainders.

    type Q = Vec<Rational>;

    fn trim(mut p: Q) -> Q {
        while p.last().is_some_and(|c| c.is_zero()) {
            p.pop();
        }
        p
    }

    fn rem(a: &Q, b: &Q) -> Q {
        let mut r = a.clone();
        while r.len() >= b.len() && !r.is_empty() {
            let k = r.len() - b.len();
            let f = r.last().unwrap() / b.last().unwrap();
            for (i, c) in b.iter().enumerate() {
                r[k + i] -= &f * c;
            }
            r = trim(r);
        }
        r
    }

    fn quo(a: &Q, b: &Q) -> Q {
        let mut r = a.clone();
        let mut q = vec![Rational::zero(); a.len() + 1 - b.len()];
        while r.len() >= b.len() && !r.is_empty() {
            let k = r.len() - b.len();
            let f = r.last().unwrap() / b.last().unwrap();
            for (i, c) in b.iter().enumerate() {
                r[k + i] -= &f * c;
            }
            q[k] = f;
            r = trim(r);
        }
        trim(q)
    }

    fn gcd(a: &Q, b: &Q) -> Q {
        let (mut a, mut b) = (a.clone(), b.clone());
        while !b.is_empty() {
            let r = rem(&a, &b);
            a = b;
            b = r;
        }
        let lc = a.last().unwrap().clone();
        a.iter().map(|c| c / &lc).collect()
    }

    fn deriv(p: &Q) -> Q {
        trim(
            p.iter()
                .enumerate()
                .skip(1)
                .map(|(i, c)| c * int(i as i64))
                .collect(),
        )
    }

    fn eval(p: &Q, x: &Rational) -> Rational {
        p.iter().rev().fold(Rational::zero(), |acc, c| acc * x + c)
    }

    /// Distinct positive roots of a square-free polynomial with p(0) != 0.
    fn sturm_positive(p: &Q) -> usize {
        let mut seq = vec![p.clone(), deriv(p)];
        while seq.last().unwrap().len() > 1 {
            let n = seq.len();
            let r = rem(&seq[n - 2], &seq[n - 1]);
            if r.is_empty() {
                break;
            }
            seq.push(r.iter().map(|c| -c).collect());
        }
        let var = |signs: Vec<i32>| {
            let s: Vec<i32> = signs.into_iter().filter(|&x| x != 0).collect();
            s.windows(2).filter(|w| w[0] != w[1]).count()
        };
        let at0 = var(seq
            .iter()
            .map(|q| sgn(&eval(q, &Rational::zero())))
            .collect());
        let at_inf = var(seq.iter().map(|q| sgn(q.last().unwrap())).collect());
        at0 - at_inf
    }

    fn sgn(x: &Rational) -> i32 {
        if x.is_positive() {
            1
        } else if x.is_negative() {
            -1
        } else {
            0
        }
    }

    /// Positive roots with multiplicity of sum c_j x^{a_j}.
    fn univariate_positive_roots(a: &[i64], c: &[i64]) -> usize {
        let lo = *a.iter().min().unwrap();
        let hi = *a.iter().max().unwrap();
        let mut p = vec![Rational::zero(); (hi - lo + 1) as usize];
        for (&e, &x) in a.iter().zip(c) {
            p[(e - lo) as usize] += int(x);
        }
        let mut p = trim(p);
        // drop the root at 0
        while p[0].is_zero() {
            p.remove(0);
        }
        let mut total = 0;
        let mut mult = 1;
        let mut rest = p;
        // repeated gcd with the derivative peels one multiplicity layer at a time
        loop {
            if rest.len() <= 1 {
                break;
            }
            let g = gcd(&rest, &deriv(&rest));
            let sqfree = quo(&rest, &g);
            let next_sqfree = if g.len() > 1 {
                quo(&g, &gcd(&g, &deriv(&g)))
            } else {
                vec![Rational::one()]
            };
            // roots of exact multiplicity `mult` = roots of sqfree not in next_sqfree
            let only = quo(&sqfree, &gcd(&sqfree, &next_sqfree));
            if only.len() > 1 {
                total += mult * sturm_positive(&only);
            }
            rest = g;
            mult += 1;
        }
        total
    }

    #[test]
    fn gale_function_example() {
        let b = GaleVectorB::new(vec![1, -2, 1]).unwrap();
        let p = GaleDualP::from_i64_rows(&[[1, 0], [0, 1], [-2, 3]]).unwrap();
        let gf = build_gale_function(&b, &p, &OracleConfig::default()).unwrap();
        assert_eq!(gf.plus, UniPoly::linear(int(-2), int(3)));
        assert_eq!(gf.minus, UniPoly::new(vec![int(0), int(0), int(1)]));
        assert_eq!(gf.f, UniPoly::new(vec![int(-2), int(3), int(-1)]));
        assert_eq!(gf.g(&int(2)), Some(int(1)));
        assert_eq!(gf.g(&rat(3, 2)), Some(rat(10, 9)));
    }

    #[test]
    fn integer_form_is_a_positive_multiple() {
        let b = GaleVectorB::new(vec![2, -3, 4, -1, -2]).unwrap();
        let p = GaleDualP::from_rows(vec![
            [rat(3, 2), rat(-1, 3)],
            [int(2), rat(5, 7)],
            [rat(1, 4), int(-3)],
            [int(5), int(1)],
            [rat(2, 9), rat(4, 5)],
        ])
        .unwrap();
        let gf = build_gale_function(&b, &p, &OracleConfig::default()).unwrap();
        let ig = integer_gale(&b, &p, &OracleConfig::default()).unwrap();
        assert_eq!(ig.f, gf.f.to_int_poly());
        assert_eq!(ig.companion, gf.companion.to_int_poly());
        // the companion is the numerator of g'/g
        let y = rat(1, 3);
        let prod: Rational = (0..5).map(|j| p.linear_form(j, &y)).product();
        let lhs = gf.companion.eval(&y) / prod;
        let rhs: Rational = (0..5)
            .map(|j| int(b.entries()[j]) * &p.row(j)[1] / p.linear_form(j, &y))
            .sum();
        assert_eq!(lhs, rhs);
    }

    #[test]
    fn square_degrees() {
        let b = GaleVectorB::new(vec![1, -1, 1, -1]).unwrap();
        let p = GaleDualP::from_i64_rows(&[[1, 1], [2, -1], [1, 3], [3, -2]]).unwrap();
        let gf = build_gale_function(&b, &p, &OracleConfig::default()).unwrap();
        assert_eq!(gf.plus.degree(), Some(2));
        assert_eq!(gf.minus.degree(), Some(2));
        let small = OracleConfig {
            max_degree: 1,
            ..OracleConfig::default()
        };
        assert_eq!(
            build_gale_function(&b, &p, &small),
            Err(Error::DegreeTooLarge { degree: 2, max: 1 })
        );
    }

    #[test]
    fn univariate_counts() {
        for method in [RootCounting::Companion, RootCounting::Classical] {
            univariate_counts_with(method);
        }
    }

    fn univariate_counts_with(method: RootCounting) {
        let cfg = line(&[0, 1, 2]);
        let cfgc = OracleConfig {
            method,
            ..OracleConfig::default()
        };
        let r = count_positive_solutions(&cm(&[&[2, -3, 1]]), &cfg, &cfgc).unwrap();
        assert_eq!(r.count, 2);
        assert!(!r.infinite);
        assert_eq!(r.roots.len(), 2);
        let r = count_positive_solutions(&cm(&[&[1, -2, 1]]), &cfg, &cfgc).unwrap();
        assert_eq!(r.count, 2);
        assert_eq!(r.roots.len(), 1);
        assert_eq!(r.roots[0].multiplicity, 2);
        // all coefficients positive: no positive kernel vector
        let r = count_positive_solutions(&cm(&[&[1, 1, 1]]), &cfg, &cfgc).unwrap();
        assert_eq!(r.count, 0);
        assert!(!detect_infinite(&cm(&[&[2, -3, 1]]), &cfg, &cfgc).unwrap());
    }

    #[test]
    fn infinite_solution_set() {
        // x - 1 = 0 and y - 1 = 0 written on the unit square x, y, xy, 1:
        // the rows pair the monomials so that g is constant
        let cfg =
            ExponentConfig::new(vec![vec![0, 0], vec![1, 0], vec![1, 1], vec![0, 1]]).unwrap();
        let c = cm(&[&[1, -1, 0, 0], &[0, 0, 1, -1]]);
        let r = count_positive_solutions(&c, &cfg, &OracleConfig::default()).unwrap();
        assert!(r.infinite);
        assert!(detect_infinite(&c, &cfg, &OracleConfig::default()).unwrap());
    }

    #[test]
    fn errors() {
        let collinear =
            ExponentConfig::new(vec![vec![0, 0], vec![1, 0], vec![2, 0], vec![0, 1]]).unwrap();
        let c = cm(&[&[1, -1, 2, 1], &[1, 2, -1, 1]]);
        assert_eq!(
            count_positive_solutions(&c, &collinear, &OracleConfig::default()),
            Err(Error::NotACircuit)
        );
        assert!(matches!(
            count_positive_solutions(&c, &line(&[0, 1, 2]), &OracleConfig::default()),
            Err(Error::Dimension(_))
        ));
    }

    #[test]
    fn independent_oracle_sanity() {
        assert_eq!(univariate_positive_roots(&[0, 1, 2], &[2, -3, 1]), 2);
        assert_eq!(univariate_positive_roots(&[0, 1, 2], &[1, -2, 1]), 2);
        assert_eq!(univariate_positive_roots(&[0, 2, 4], &[1, -2, 1]), 2);
        assert_eq!(univariate_positive_roots(&[0, 1, 3], &[1, 1, 1]), 0);
    }

    proptest! {
        #[test]
        fn univariate_matches_independent_oracle(
            a in proptest::collection::btree_set(-4i64..=6, 3),
            c in [prop_oneof![-6i64..=-1, 1i64..=6], prop_oneof![-6i64..=-1, 1i64..=6], prop_oneof![-6i64..=-1, 1i64..=6]],
        ) {
            let a: Vec<i64> = a.into_iter().collect();
            let cfg = line(&a);
            let cmat = cm(&[&c]);
            let expected = univariate_positive_roots(&a, &c);
            for method in [RootCounting::Companion, RootCounting::Classical] {
                let config = OracleConfig { method, ..OracleConfig::default() };
                let r = count_positive_solutions(&cmat, &cfg, &config).unwrap();
                prop_assert!(!r.infinite);
                prop_assert_eq!(r.count, expected);
            }
        }

        #[test]
        fn companion_matches_classical(
            n in 1usize..=2,
            pts in proptest::collection::vec(proptest::collection::vec(0i64..=3, 2), 4),
            entries in proptest::collection::vec((-9i64..=9, 1i64..=3), 8),
        ) {
            let points: Vec<Vec<i64>> = pts.iter().take(n + 2).map(|p| p[..n].to_vec()).collect();
            let Ok(cfg) = ExponentConfig::new(points) else { return Ok(()) };
            if !cfg.is_circuit() {
                return Ok(());
            }
            let rows: Vec<Vec<Rational>> = (0..n)
                .map(|i| (0..n + 2).map(|j| { let (p, q) = entries[i * 4 + j]; rat(p, q) }).collect())
                .collect();
            let Ok(c) = CoefficientMatrix::from_rows(rows) else { return Ok(()) };
            let run = |method| {
                count_positive_solutions(&c, &cfg, &OracleConfig { method, ..OracleConfig::default() })
            };
            let fast = run(RootCounting::Companion).unwrap();
            let slow = run(RootCounting::Classical).unwrap();
            prop_assert_eq!(fast.count, slow.count);
            prop_assert_eq!(fast.infinite, slow.infinite);
            let mults = |r: &CountResult| r.roots.iter().map(|x| x.multiplicity).collect::<Vec<_>>();
            prop_assert_eq!(mults(&fast), mults(&slow));
        }

        #[test]
        fn companion_multiplicities_on_squares(r in 1i64..=5, s in 1i64..=3, e in 1i64..=3) {
            // (s x^e - r)^2 has one double positive root
            let res = count_positive_solutions(
                &cm(&[&[r * r, -2 * r * s, s * s]]),
                &line(&[0, e, 2 * e]),
                &OracleConfig::default(),
            )
            .unwrap();
            prop_assert_eq!(res.roots.len(), 1);
            prop_assert_eq!(res.roots[0].multiplicity, 2);
        }

        #[test]
        fn univariate_perfect_squares(r in 1i64..=5, s in 1i64..=3, e in 1i64..=3) {
            // (s x^e - r)^2 has a double positive root
            let a = [0, e, 2 * e];
            let c = [r * r, -2 * r * s, s * s];
            let res = count_positive_solutions(&cm(&[&c]), &line(&a), &OracleConfig::default()).unwrap();
            prop_assert_eq!(res.count, 2);
            prop_assert_eq!(univariate_positive_roots(&a, &c), 2);
        }
    }
}
