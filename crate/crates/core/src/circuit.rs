//! Exponent configurations, their Gale vector and volume invariants.

use alloc::format;
use alloc::vec::Vec;

use num_integer::Integer;
use num_traits::ToPrimitive;

use crate::error::{Error, Result};
use crate::exact::{det_i64, int, Matrix};

/// An ordered configuration `a_0, ..., a_{n+1}` of distinct lattice points in
/// `Z^n` whose convex hull is `n`-dimensional.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ExponentConfig {
    n: usize,
    points: Vec<Vec<i64>>,
}

/// Integer generator of the kernel of the lifted matrix `A`, with
/// `b_j = (-1)^j det A(j)` where `A(j)` drops column `j`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GaleVectorB {
    b: Vec<i64>,
}

/// `vol_z = n! vol(conv A)`, the index `I = gcd(b)` and `vol_za = vol_z / I`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Volumes {
    pub vol_z: i64,
    pub index: i64,
    pub vol_za: i64,
}

impl ExponentConfig {
    /// Validates `n + 2` distinct points of dimension `n >= 1` spanning `R^n`
    /// affinely.
    pub fn new(points: Vec<Vec<i64>>) -> Result<Self> {
        if points.len() < 3 {
            return Err(Error::InvalidConfig(format!(
                "need n + 2 >= 3 points, got {}",
                points.len()
            )));
        }
        let n = points.len() - 2;
        if let Some((j, p)) = points.iter().enumerate().find(|(_, p)| p.len() != n) {
            return Err(Error::InvalidConfig(format!(
                "point {j} has dimension {}, expected {n}",
                p.len()
            )));
        }
        for i in 0..points.len() {
            for j in i + 1..points.len() {
                if points[i] == points[j] {
                    return Err(Error::InvalidConfig(format!("points {i} and {j} coincide")));
                }
            }
        }
        let cfg = ExponentConfig { n, points };
        if cfg.matrix_a().rank() != n + 1 {
            return Err(Error::NotFullDimensional);
        }
        Ok(cfg)
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn points(&self) -> &[Vec<i64>] {
        &self.points
    }

    pub fn point(&self, j: usize) -> &[i64] {
        &self.points[j]
    }

    /// The `(n+1) x (n+2)` matrix whose columns are `(1, a_j)`.
    pub fn matrix_a(&self) -> Matrix {
        let mut m = Matrix::zeros(self.n + 1, self.n + 2);
        for (j, p) in self.points.iter().enumerate() {
            m.set(0, j, int(1));
            for (i, &x) in p.iter().enumerate() {
                m.set(i + 1, j, int(x));
            }
        }
        m
    }

    /// Signed maximal minors of `A`.
    pub fn gale_vector(&self) -> Result<GaleVectorB> {
        let cols = self.n + 2;
        let mut b = Vec::with_capacity(cols);
        for j in 0..cols {
            let minor: Vec<Vec<i64>> = (0..=self.n)
                .map(|r| {
                    (0..cols)
                        .filter(|&c| c != j)
                        .map(|c| if r == 0 { 1 } else { self.points[c][r - 1] })
                        .collect()
                })
                .collect();
            let d = det_i64(&minor)
                .to_i64()
                .ok_or(Error::Overflow("Gale vector"))?;
            b.push(if j % 2 == 0 { d } else { -d });
        }
        GaleVectorB::new(b)
    }

    pub fn is_circuit(&self) -> bool {
        self.gale_vector().is_ok_and(|b| b.is_circuit())
    }

    pub fn normalized_volumes(&self) -> Result<Volumes> {
        let b = self.gale_vector()?;
        if !b.is_circuit() {
            return Err(Error::NotACircuit);
        }
        Ok(b.volumes())
    }

    /// Reorders the points: point `i` of the result is point `perm[i]` of
    /// `self`.
    pub fn permuted(&self, perm: &[usize]) -> Self {
        ExponentConfig {
            n: self.n,
            points: perm.iter().map(|&j| self.points[j].clone()).collect(),
        }
    }

    /// Translates every point by `-origin`.
    pub fn translated_to(&self, origin: &[i64]) -> Self {
        ExponentConfig {
            n: self.n,
            points: self
                .points
                .iter()
                .map(|p| p.iter().zip(origin).map(|(x, o)| x - o).collect())
                .collect(),
        }
    }

    /// Applies `a -> M a + shift`; `M` must be unimodular for the circuit
    /// structure to be preserved up to sign.
    pub fn transformed(&self, m: &[Vec<i64>], shift: &[i64]) -> Result<Self> {
        let points = self
            .points
            .iter()
            .map(|p| {
                (0..self.n)
                    .map(|i| shift[i] + (0..self.n).map(|k| m[i][k] * p[k]).sum::<i64>())
                    .collect()
            })
            .collect();
        ExponentConfig::new(points)
    }
}

impl GaleVectorB {
    /// Accepts any integer vector summing to zero whose absolute values sum
    /// without overflow.
    pub fn new(b: Vec<i64>) -> Result<Self> {
        let mut total: i64 = 0;
        let mut sum: i64 = 0;
        for &x in &b {
            total = total
                .checked_add(x.checked_abs().ok_or(Error::Overflow("Gale vector"))?)
                .ok_or(Error::Overflow("Gale vector"))?;
            sum += x;
        }
        if sum != 0 {
            return Err(Error::DegenerateSequence("Gale vector must sum to zero"));
        }
        if b.len() < 3 {
            return Err(Error::InvalidConfig(
                "Gale vector needs at least 3 entries".into(),
            ));
        }
        Ok(GaleVectorB { b })
    }

    pub fn entries(&self) -> &[i64] {
        &self.b
    }

    pub fn len(&self) -> usize {
        self.b.len()
    }

    pub fn is_empty(&self) -> bool {
        self.b.is_empty()
    }

    pub fn is_circuit(&self) -> bool {
        self.b.iter().all(|&x| x != 0)
    }

    pub fn negated(&self) -> Self {
        GaleVectorB {
            b: self.b.iter().map(|x| -x).collect(),
        }
    }

    /// `b_{perm[0]}, ..., b_{perm[n+1]}`.
    pub fn permuted(&self, perm: &[usize]) -> Self {
        GaleVectorB {
            b: perm.iter().map(|&j| self.b[j]).collect(),
        }
    }

    pub fn volumes(&self) -> Volumes {
        let vol_z: i64 = self.b.iter().filter(|&&x| x > 0).sum();
        let index = self.b.iter().fold(0i64, |g, &x| g.gcd(&x));
        let vol_za = if index == 0 { 0 } else { vol_z / index };
        Volumes {
            vol_z,
            index,
            vol_za,
        }
    }
}
