//! Univariate polynomials with exact coefficients and real root counting.
//!
//! [`UniPoly`] has rational coefficients and is used to expand products of
//! linear forms. Root counting happens on [`IntPoly`], a polynomial with
//! integer coefficients, using primitive pseudo-remainder sequences so that
//! coefficient growth stays polynomial.

use alloc::vec;
use alloc::vec::Vec;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Pow, Signed, Zero};

use crate::exact::{common_denominator, Rational};

/// Rational coefficients, lowest degree first, no trailing zeros.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct UniPoly {
    coeffs: Vec<Rational>,
}

impl UniPoly {
    pub fn new(mut coeffs: Vec<Rational>) -> Self {
        while coeffs.last().is_some_and(Zero::is_zero) {
            coeffs.pop();
        }
        UniPoly { coeffs }
    }

    pub fn zero() -> Self {
        UniPoly { coeffs: vec![] }
    }

    pub fn constant(c: Rational) -> Self {
        UniPoly::new(vec![c])
    }

    /// `c0 + c1 y`.
    pub fn linear(c0: Rational, c1: Rational) -> Self {
        UniPoly::new(vec![c0, c1])
    }

    pub fn coeffs(&self) -> &[Rational] {
        &self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn add(&self, other: &UniPoly) -> UniPoly {
        let len = self.coeffs.len().max(other.coeffs.len());
        let z = Rational::zero();
        UniPoly::new(
            (0..len)
                .map(|i| self.coeffs.get(i).unwrap_or(&z) + other.coeffs.get(i).unwrap_or(&z))
                .collect(),
        )
    }

    pub fn neg(&self) -> UniPoly {
        UniPoly {
            coeffs: self.coeffs.iter().map(|c| -c).collect(),
        }
    }

    pub fn sub(&self, other: &UniPoly) -> UniPoly {
        self.add(&other.neg())
    }

    pub fn mul(&self, other: &UniPoly) -> UniPoly {
        if self.is_zero() || other.is_zero() {
            return UniPoly::zero();
        }
        let mut out = vec![Rational::zero(); self.coeffs.len() + other.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in other.coeffs.iter().enumerate() {
                out[i + j] += a * b;
            }
        }
        UniPoly::new(out)
    }

    pub fn pow(&self, mut e: u32) -> UniPoly {
        let mut base = self.clone();
        let mut acc = UniPoly::constant(Rational::one());
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.mul(&base);
            }
            e >>= 1;
            if e > 0 {
                base = base.mul(&base);
            }
        }
        acc
    }

    pub fn eval(&self, y: &Rational) -> Rational {
        self.coeffs
            .iter()
            .rev()
            .fold(Rational::zero(), |acc, c| acc * y + c)
    }

    /// Positive rational multiple with coprime integer coefficients.
    pub fn to_int_poly(&self) -> IntPoly {
        let d = common_denominator(self.coeffs.iter());
        IntPoly::new(
            self.coeffs
                .iter()
                .map(|c| (c * Rational::from_integer(d.clone())).to_integer())
                .collect(),
        )
        .primitive_part()
    }
}

/// Integer coefficients, lowest degree first, no trailing zeros.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct IntPoly {
    coeffs: Vec<BigInt>,
}

fn sign_of(x: &BigInt) -> i8 {
    if x.is_positive() {
        1
    } else if x.is_negative() {
        -1
    } else {
        0
    }
}

impl IntPoly {
    pub fn new(mut coeffs: Vec<BigInt>) -> Self {
        while coeffs.last().is_some_and(Zero::is_zero) {
            coeffs.pop();
        }
        IntPoly { coeffs }
    }

    pub fn from_i64(coeffs: &[i64]) -> Self {
        IntPoly::new(coeffs.iter().map(|&c| BigInt::from(c)).collect())
    }

    pub fn coeffs(&self) -> &[BigInt] {
        &self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    fn lc(&self) -> &BigInt {
        self.coeffs.last().expect("nonzero polynomial")
    }

    pub fn derivative(&self) -> IntPoly {
        IntPoly::new(
            self.coeffs
                .iter()
                .enumerate()
                .skip(1)
                .map(|(i, c)| c * BigInt::from(i))
                .collect(),
        )
    }

    /// Positive gcd of the coefficients (zero for the zero polynomial).
    pub fn content(&self) -> BigInt {
        self.coeffs.iter().fold(BigInt::zero(), |g, c| g.gcd(c))
    }

    /// Divides by the positive content; the sign is kept.
    pub fn primitive_part(&self) -> IntPoly {
        let g = self.content();
        if g.is_zero() || g.is_one() {
            return self.clone();
        }
        IntPoly {
            coeffs: self.coeffs.iter().map(|c| c / &g).collect(),
        }
    }

    fn with_positive_lc(self) -> IntPoly {
        if !self.is_zero() && self.lc().is_negative() {
            IntPoly {
                coeffs: self.coeffs.into_iter().map(|c| -c).collect(),
            }
        } else {
            self
        }
    }

    pub fn add(&self, other: &IntPoly) -> IntPoly {
        let len = self.coeffs.len().max(other.coeffs.len());
        let z = BigInt::zero();
        IntPoly::new(
            (0..len)
                .map(|i| self.coeffs.get(i).unwrap_or(&z) + other.coeffs.get(i).unwrap_or(&z))
                .collect(),
        )
    }

    pub fn sub(&self, other: &IntPoly) -> IntPoly {
        let len = self.coeffs.len().max(other.coeffs.len());
        let z = BigInt::zero();
        IntPoly::new(
            (0..len)
                .map(|i| self.coeffs.get(i).unwrap_or(&z) - other.coeffs.get(i).unwrap_or(&z))
                .collect(),
        )
    }

    pub fn mul(&self, other: &IntPoly) -> IntPoly {
        if self.is_zero() || other.is_zero() {
            return IntPoly::new(vec![]);
        }
        let mut out = vec![BigInt::zero(); self.coeffs.len() + other.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            for (j, b) in other.coeffs.iter().enumerate() {
                out[i + j] += a * b;
            }
        }
        IntPoly::new(out)
    }

    pub fn pow(&self, mut e: u32) -> IntPoly {
        let mut acc = IntPoly::from_i64(&[1]);
        let mut base = self.clone();
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.mul(&base);
            }
            e >>= 1;
            if e > 0 {
                base = base.mul(&base);
            }
        }
        acc
    }

    pub fn scaled(&self, k: &BigInt) -> IntPoly {
        IntPoly::new(self.coeffs.iter().map(|c| c * k).collect())
    }

    /// The same polynomial with rational coefficients, times `k`.
    pub fn to_uni_poly(&self, k: &Rational) -> UniPoly {
        UniPoly::new(
            self.coeffs
                .iter()
                .map(|c| k * Rational::from_integer(c.clone()))
                .collect(),
        )
    }

    /// Pseudo-remainder `lc(b)^(deg self - deg b + 1) * self mod b`.
    /// `self` must have degree at least `deg b`.
    fn pseudo_remainder(&self, b: &IntPoly) -> IntPoly {
        let db = b.degree().expect("division by zero polynomial");
        let lb = b.lc().clone();
        let mut r = self.coeffs.clone();
        let mut steps = (r.len() - db) as u32;
        while r.len() > db && !r.is_empty() {
            let shift = r.len() - 1 - db;
            let lr = r.last().unwrap().clone();
            for c in r.iter_mut() {
                *c *= &lb;
            }
            for (i, bc) in b.coeffs.iter().enumerate() {
                r[shift + i] -= &lr * bc;
            }
            steps -= 1;
            while r.last().is_some_and(Zero::is_zero) {
                r.pop();
            }
        }
        if steps > 0 && !r.is_empty() {
            let scale = Pow::pow(&lb, steps);
            for c in r.iter_mut() {
                *c *= &scale;
            }
        }
        IntPoly::new(r)
    }

    /// Subresultant remainder sequence starting from `self` and `other`
    /// (`deg self >= deg other`, `other` nonzero). Each term comes with the
    /// sign turning it into a Sturm term: `f, g, -rem(f, g), ...` up to
    /// positive factors.
    fn subresultant_prs(&self, other: &IntPoly) -> Vec<(IntPoly, i8)> {
        let mut out = vec![(self.clone(), 1i8), (other.clone(), 1i8)];
        let mut g = BigInt::one();
        let mut h = BigInt::one();
        loop {
            let n = out.len();
            let (a, sa) = (&out[n - 2].0, out[n - 2].1);
            let b = &out[n - 1].0;
            if b.degree() == Some(0) {
                break;
            }
            let delta = (a.coeffs.len() - b.coeffs.len()) as u32;
            let r = a.pseudo_remainder(b);
            if r.is_zero() {
                break;
            }
            let beta = &g * Pow::pow(&h, delta);
            let r = IntPoly {
                coeffs: r.coeffs.iter().map(|c| c / &beta).collect(),
            };
            // rem(a, b) = beta * r / lc(b)^(delta + 1)
            let mut s = -sa * sign_of(&beta);
            if delta.is_multiple_of(2) {
                s *= sign_of(b.lc());
            }
            g = b.lc().clone();
            h = if delta == 0 {
                h
            } else {
                Pow::pow(&g, delta) / Pow::pow(&h, delta - 1)
            };
            out.push((r, s));
        }
        out
    }

    /// Quotient by a divisor known to divide `self` exactly. With `b`
    /// primitive the quotient has integer coefficients.
    pub fn exact_div(&self, b: &IntPoly) -> IntPoly {
        let db = b.degree().expect("division by zero polynomial");
        if self.is_zero() {
            return self.clone();
        }
        let mut r = self.coeffs.clone();
        let dq = r.len() - 1 - db;
        let mut q = vec![BigInt::zero(); dq + 1];
        for k in (0..=dq).rev() {
            let top = &r[k + db];
            let (qk, rem) = top.div_rem(b.lc());
            debug_assert!(rem.is_zero(), "division is not exact");
            for (i, bc) in b.coeffs.iter().enumerate() {
                r[k + i] -= &qk * bc;
            }
            q[k] = qk;
        }
        debug_assert!(r.iter().all(Zero::is_zero), "division is not exact");
        IntPoly::new(q)
    }

    /// Primitive gcd with positive leading coefficient.
    pub fn gcd(&self, other: &IntPoly) -> IntPoly {
        let mut a = self.primitive_part();
        let mut b = other.primitive_part();
        if a.degree() < b.degree() {
            core::mem::swap(&mut a, &mut b);
        }
        if b.is_zero() {
            return a.with_positive_lc();
        }
        let prs = a.subresultant_prs(&b);
        prs.last()
            .map(|(p, _)| p.primitive_part())
            .unwrap()
            .with_positive_lc()
    }

    /// Exact sign of the value at a rational point.
    pub fn sign_at(&self, x: &Rational) -> i8 {
        let (p, q) = (x.numer(), x.denom());
        let mut it = self.coeffs.iter().rev();
        let Some(top) = it.next() else { return 0 };
        let mut acc = top.clone();
        let mut qp = BigInt::one();
        for c in it {
            qp *= q;
            acc = acc * p + c * &qp;
        }
        // denominators are positive, so the homogenized value has the sign
        // of the polynomial value
        sign_of(&acc)
    }

    fn sign_at_end(&self, end: End<'_>) -> i8 {
        match end {
            End::At(x) => self.sign_at(x),
            End::After(x) => self.sign_near(x, true),
            End::Before(x) => self.sign_near(x, false),
            End::PosInf => self.coeffs.last().map_or(0, sign_of),
            End::NegInf => match self.degree() {
                None => 0,
                Some(d) => {
                    let s = sign_of(self.lc());
                    if d % 2 == 0 {
                        s
                    } else {
                        -s
                    }
                }
            },
        }
    }

    /// Certificate that `self` is square-free: for a prime not dividing the
    /// leading coefficient, a trivial `gcd(f, f') mod p` forces a trivial
    /// gcd over the rationals. `false` means undecided.
    fn squarefree_mod_p(&self) -> bool {
        const PRIMES: [u64; 3] = [2_305_843_009_213_693_951, 4_294_967_291, 998_244_353];
        PRIMES.iter().any(|&p| {
            let f = ModPoly::reduce(self, p);
            if f.c.len() != self.coeffs.len() || f.c.len() > p as usize {
                return false;
            }
            f.gcd(&f.derivative()).c.len() == 1
        })
    }

    /// `F = prod F_i^i` with each `F_i` square-free and pairwise coprime.
    /// Constant factors are dropped; the zero polynomial has no factors.
    pub fn squarefree_decomposition(&self) -> Vec<(IntPoly, usize)> {
        let f = self.primitive_part();
        if f.degree().unwrap_or(0) == 0 {
            return vec![];
        }
        if f.squarefree_mod_p() {
            return vec![(f.with_positive_lc(), 1)];
        }
        let df = f.derivative();
        let d = f.gcd(&df);
        let mut b = f.exact_div(&d);
        let c = df.exact_div(&d);
        let mut dd = c.sub(&b.derivative());
        let mut out = vec![];
        let mut i = 1;
        while b.degree().unwrap_or(0) > 0 {
            let a = b.gcd(&dd);
            let nb = b.exact_div(&a);
            let nc = dd.exact_div(&a);
            if a.degree().unwrap_or(0) > 0 {
                out.push((a, i));
            }
            dd = nc.sub(&nb.derivative());
            b = nb;
            i += 1;
        }
        out
    }

    fn negated(self) -> IntPoly {
        IntPoly {
            coeffs: self.coeffs.into_iter().map(|c| -c).collect(),
        }
    }

    /// Signed remainder sequence `self, q, -rem(self, q), ...`, each term
    /// scaled by a positive constant. When `deg q >= deg self`, `q` is first
    /// replaced by its remainder modulo `self`; the Cauchy index of
    /// `q / self` does not change.
    pub fn signed_remainder_sequence(&self, q: &IntPoly) -> Vec<IntPoly> {
        if self.is_zero() {
            return vec![];
        }
        let mut q = q.clone();
        if !q.is_zero() && q.degree() >= self.degree() {
            let steps = q.coeffs.len() - self.coeffs.len() + 1;
            let r = q.pseudo_remainder(self);
            q = if self.lc().is_negative() && steps % 2 == 1 {
                r.negated()
            } else {
                r
            };
        }
        if q.is_zero() {
            return vec![self.clone()];
        }
        self.subresultant_prs(&q)
            .into_iter()
            .map(|(p, s)| if s > 0 { p } else { p.negated() })
            .collect()
    }

    /// The Sturm sequence `f, f', -rem, ...`, each term scaled by a positive
    /// constant.
    pub fn sturm_sequence(&self) -> Vec<IntPoly> {
        let f = self.primitive_part();
        f.signed_remainder_sequence(&f.derivative().primitive_part())
    }

    /// Sign just to the right of `x` (`after`) or just to the left of it.
    fn sign_near(&self, x: &Rational, after: bool) -> i8 {
        let mut p = self.clone();
        let mut k = 0usize;
        while !p.is_zero() {
            let s = p.sign_at(x);
            if s != 0 {
                return if after || k.is_multiple_of(2) { s } else { -s };
            }
            p = p.derivative();
            k += 1;
        }
        0
    }
}

/// Dense polynomial over the prime field `Z/p`.
struct ModPoly {
    c: Vec<u64>,
    p: u64,
}

impl ModPoly {
    fn reduce(f: &IntPoly, p: u64) -> ModPoly {
        let pb = BigInt::from(p);
        let mut c: Vec<u64> = f
            .coeffs
            .iter()
            .map(|x| {
                let r = x.mod_floor(&pb);
                u64::try_from(r).expect("residue fits")
            })
            .collect();
        while c.last() == Some(&0) {
            c.pop();
        }
        ModPoly { c, p }
    }

    fn mul(&self, a: u64, b: u64) -> u64 {
        ((a as u128 * b as u128) % self.p as u128) as u64
    }

    fn inv(&self, a: u64) -> u64 {
        let (mut base, mut e, mut acc) = (a, self.p - 2, 1u64);
        while e > 0 {
            if e & 1 == 1 {
                acc = self.mul(acc, base);
            }
            base = self.mul(base, base);
            e >>= 1;
        }
        acc
    }

    fn derivative(&self) -> ModPoly {
        let mut c: Vec<u64> = self
            .c
            .iter()
            .enumerate()
            .skip(1)
            .map(|(i, &x)| self.mul(x, i as u64 % self.p))
            .collect();
        while c.last() == Some(&0) {
            c.pop();
        }
        ModPoly { c, p: self.p }
    }

    fn rem(&self, b: &ModPoly) -> ModPoly {
        let mut r = self.c.clone();
        let db = b.c.len() - 1;
        let inv = self.inv(b.c[db]);
        while r.len() > db {
            let q = self.mul(*r.last().unwrap(), inv);
            let shift = r.len() - 1 - db;
            for (i, &bc) in b.c.iter().enumerate() {
                let t = self.mul(q, bc);
                r[shift + i] = (r[shift + i] + self.p - t) % self.p;
            }
            while r.last() == Some(&0) {
                r.pop();
            }
        }
        ModPoly { c: r, p: self.p }
    }

    fn gcd(&self, other: &ModPoly) -> ModPoly {
        let mut a = ModPoly {
            c: self.c.clone(),
            p: self.p,
        };
        let mut b = ModPoly {
            c: other.c.clone(),
            p: self.p,
        };
        while !b.c.is_empty() {
            let r = a.rem(&b);
            a = b;
            b = r;
        }
        a
    }
}

#[derive(Clone, Copy)]
enum End<'a> {
    NegInf,
    At(&'a Rational),
    After(&'a Rational),
    Before(&'a Rational),
    PosInf,
}

fn variations(seq: &[IntPoly], end: End<'_>) -> usize {
    let mut last = 0i8;
    let mut count = 0;
    for p in seq {
        let s = p.sign_at_end(end);
        if s == 0 {
            continue;
        }
        if last != 0 && s != last {
            count += 1;
        }
        last = s;
    }
    count
}

/// An isolating interval for a real root with its multiplicity: the open
/// interval `(lo, hi)`, or the exact root when `lo == hi`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RootInterval {
    pub lo: Rational,
    pub hi: Rational,
    pub multiplicity: usize,
}

/// Strict upper bound on the absolute value of every real root.
fn cauchy_bound(f: &IntPoly) -> Rational {
    let lc = f.lc().abs();
    let m = f.coeffs[..f.coeffs.len() - 1]
        .iter()
        .map(|c| c.abs())
        .max()
        .unwrap_or_default();
    Rational::one() + Rational::new(m, lc)
}

/// Linear factor `q x - p` vanishing at `p / q`.
fn linear_factor(x: &Rational) -> IntPoly {
    IntPoly::new(vec![-x.numer().clone(), x.denom().clone()])
}

/// Coefficients of `(1 + x)^d f((a + b x) / (1 + x))` up to a positive
/// factor; its positive roots correspond to the roots of `f` in `(a, b)`.
fn mobius_transform(f: &IntPoly, a: &Rational, b: &Rational) -> Vec<BigInt> {
    let q = a.denom().lcm(b.denom());
    let pa = a.numer() * (&q / a.denom());
    let pb = b.numer() * (&q / b.denom());
    let d = f.coeffs.len() - 1;
    let mut h = vec![f.coeffs[d].clone()];
    let mut qpow = vec![BigInt::one()];
    for c in f.coeffs[..d].iter().rev() {
        // h <- h * (pa + pb x)
        let mut next = vec![BigInt::zero(); h.len() + 1];
        for (i, x) in h.iter().enumerate() {
            next[i] += x * &pa;
            next[i + 1] += x * &pb;
        }
        // qpow <- qpow * q (1 + x)
        let mut qnext = vec![BigInt::zero(); qpow.len() + 1];
        for (i, x) in qpow.iter().enumerate() {
            let y = x * &q;
            qnext[i] += &y;
            qnext[i + 1] += y;
        }
        qpow = qnext;
        for (i, x) in qpow.iter().enumerate() {
            next[i] += c * x;
        }
        h = next;
    }
    h
}

/// Distinct roots of a square-free `f` in the open interval `(a, b)` by
/// Descartes bisection.
fn descartes_isolate(
    f: &IntPoly,
    a: Rational,
    b: Rational,
    multiplicity: usize,
    out: &mut Vec<RootInterval>,
) {
    let two = Rational::from_integer(2.into());
    let mut stack = vec![(a, b)];
    while let Some((a, b)) = stack.pop() {
        match crate::descartes::sign_variation(&mobius_transform(f, &a, &b)) {
            0 => {}
            1 => out.push(RootInterval {
                lo: a,
                hi: b,
                multiplicity,
            }),
            _ => {
                let mid = (&a + &b) / &two;
                if f.sign_at(&mid) == 0 {
                    out.push(RootInterval {
                        lo: mid.clone(),
                        hi: mid.clone(),
                        multiplicity,
                    });
                }
                stack.push((mid.clone(), b));
                stack.push((a, mid));
            }
        }
    }
}

/// Distinct roots of a square-free `f` in the open interval between `lo`
/// and `hi` (`None` meaning infinite). The count comes from the Sturm
/// sequence; isolating intervals come from Descartes bisection and must
/// agree with it.
fn isolate_squarefree(
    f: &IntPoly,
    lo: Option<&Rational>,
    hi: Option<&Rational>,
    multiplicity: usize,
    out: &mut Vec<RootInterval>,
) -> usize {
    let mut f = f.clone();
    // The interval is open: divide out roots sitting on a finite endpoint.
    for x in [lo, hi].into_iter().flatten() {
        if f.sign_at(x) == 0 {
            f = f.exact_div(&linear_factor(x));
        }
    }
    if f.degree().unwrap_or(0) == 0 {
        return 0;
    }
    let seq = f.sturm_sequence();
    let ends = |x: Option<&Rational>, inf: End<'static>| match x {
        Some(x) => variations(&seq, End::At(x)),
        None => variations(&seq, inf),
    };
    let total = ends(lo, End::NegInf) - ends(hi, End::PosInf);
    if total == 0 {
        return 0;
    }
    let bound = cauchy_bound(&f);
    let a = match lo {
        Some(x) => x.clone(),
        None => -bound.clone(),
    };
    let b = match hi {
        Some(x) => x.clone(),
        None => bound,
    };
    let before = out.len();
    descartes_isolate(&f, a, b, multiplicity, out);
    assert_eq!(
        out.len() - before,
        total,
        "Sturm count and Descartes isolation disagree"
    );
    total
}

/// Whether the square-free `g` vanishes inside an isolating interval.
fn has_root_in(g: &IntPoly, r: &RootInterval) -> bool {
    if r.lo == r.hi {
        return g.sign_at(&r.lo) == 0;
    }
    let mut scratch = vec![];
    isolate_squarefree(g, Some(&r.lo), Some(&r.hi), 0, &mut scratch) > 0
}

/// Number of real roots of `f` in the open interval between `lo` and `hi`,
/// counted with multiplicity, and isolating intervals sorted by position.
/// `f` must be nonzero.
pub fn count_roots(
    f: &IntPoly,
    lo: Option<&Rational>,
    hi: Option<&Rational>,
) -> (usize, Vec<RootInterval>) {
    assert!(!f.is_zero(), "root count of the zero polynomial");
    let factors = f.squarefree_decomposition();
    if factors.is_empty() {
        return (0, vec![]);
    }
    let radical = factors
        .iter()
        .fold(IntPoly::from_i64(&[1]), |acc, (g, _)| acc.mul(g));
    let mut roots = vec![];
    if let [(g, m)] = factors.as_slice() {
        isolate_squarefree(g, lo, hi, *m, &mut roots);
        roots.sort_by(|x, y| x.lo.cmp(&y.lo));
        return (roots.len() * m, roots);
    }
    isolate_squarefree(&radical, lo, hi, 0, &mut roots);
    for r in &mut roots {
        // the factors are coprime, so exactly one of them owns the root
        r.multiplicity = factors
            .iter()
            .find(|(g, _)| has_root_in(g, r))
            .map(|(_, m)| *m)
            .expect("root of the radical belongs to a factor");
    }
    roots.sort_by(|x, y| x.lo.cmp(&y.lo));
    (roots.iter().map(|r| r.multiplicity).sum(), roots)
}

/// Roots of `f` in the open interval between `lo` and `hi`, counted with
/// multiplicity, using a companion `q` in place of `f'`.
///
/// At every root `c` of `f` in the interval, `q` must have the sign of
/// `f'(c) / (y - c)^(m - 1)` for the multiplicity `m` of `c`, and vanish
/// there to order exactly `m - 1`. Then `q / f` has a simple pole with
/// positive residue at each such root, so the Cauchy index of `q / f`
/// (read off the signed remainder sequence of `f` and `q`) counts the
/// distinct roots, and the multiplicity of `c` is one more than its
/// multiplicity in `gcd(f, q)`. With a low-degree `q` the remainder
/// sequence is short and cheap.
///
/// Without `isolate` no intervals are returned; the multiplicities then come
/// from the roots of `gcd(f, q)` in the interval, all of which are roots of `f`.
pub fn count_roots_with_companion(
    f: &IntPoly,
    q: &IntPoly,
    lo: Option<&Rational>,
    hi: Option<&Rational>,
    isolate: bool,
) -> (usize, Vec<RootInterval>) {
    assert!(!f.is_zero(), "root count of the zero polynomial");
    if q.is_zero() {
        // no root can have order zero in q
        return (0, vec![]);
    }
    let seq = f.signed_remainder_sequence(q);
    let var_lo = match lo {
        Some(x) => variations(&seq, End::After(x)),
        None => variations(&seq, End::NegInf),
    };
    let var_hi = match hi {
        Some(x) => variations(&seq, End::Before(x)),
        None => variations(&seq, End::PosInf),
    };
    assert!(var_lo >= var_hi, "companion has the wrong sign at a root");
    let distinct = var_lo - var_hi;
    if distinct == 0 {
        return (0, vec![]);
    }
    let g = f.gcd(q);
    if !isolate {
        let extra: usize = g
            .squarefree_decomposition()
            .iter()
            .map(|(gi, i)| i * isolate_squarefree(gi, lo, hi, *i, &mut vec![]))
            .sum();
        return (distinct + extra, vec![]);
    }
    // Inside the interval, f / gcd(f, q) only has simple roots.
    let mut h = f.primitive_part().exact_div(&g);
    for x in [lo, hi].into_iter().flatten() {
        while h.degree().unwrap_or(0) > 0 && h.sign_at(x) == 0 {
            h = h.exact_div(&linear_factor(x));
        }
    }
    let bound = cauchy_bound(&h);
    let a = lo.cloned().unwrap_or_else(|| -bound.clone());
    let b = hi.cloned().unwrap_or(bound);
    let mut roots = vec![];
    descartes_isolate(&h, a, b, 1, &mut roots);
    assert_eq!(
        roots.len(),
        distinct,
        "Cauchy index and Descartes isolation disagree"
    );
    let factors = g.squarefree_decomposition();
    for r in &mut roots {
        // a root of gcd(f, q) in an isolating interval of f is the root itself
        if let Some((_, i)) = factors.iter().find(|(gi, _)| has_root_in(gi, r)) {
            r.multiplicity = 1 + i;
        }
    }
    roots.sort_by(|x, y| x.lo.cmp(&y.lo));
    (roots.iter().map(|r| r.multiplicity).sum(), roots)
}
