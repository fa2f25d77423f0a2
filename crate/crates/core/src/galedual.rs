//! Coefficient matrices and their two-column Gale duals.
//!
//! A Gale dual of `C` is an `(n+2) x 2` matrix `P` whose columns span
//! `ker C`; its rows `P_j` are indexed by the monomials. Positive solutions
//! only exist when all rows lie in a common open half-plane. Everything here
//! works in `Q^2` with exact cross products.

use alloc::format;
use alloc::vec::Vec;
use core::cmp::Ordering;

use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};
use crate::exact::{primitive_integer_vector, Matrix, Rational};

/// The `n x (n+2)` rational coefficient matrix of the system, of rank `n`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CoefficientMatrix {
    n: usize,
    entries: Matrix,
}

impl CoefficientMatrix {
    pub fn new(entries: Matrix) -> Result<Self> {
        let c = CoefficientMatrix::allowing_zero_columns(entries)?;
        let n = c.n;
        if let Some(j) = (0..n + 2).find(|&j| c.entries.column(j).iter().all(Zero::is_zero)) {
            return Err(Error::ZeroColumn(j));
        }
        Ok(c)
    }

    /// Like [`CoefficientMatrix::new`] but a monomial may be absent from
    /// every equation. Degenerate Viro systems need this.
    pub fn allowing_zero_columns(entries: Matrix) -> Result<Self> {
        let n = entries.rows();
        if n == 0 || entries.cols() != n + 2 {
            return Err(Error::Dimension(format!(
                "coefficient matrix must be n x (n+2), got {}x{}",
                entries.rows(),
                entries.cols()
            )));
        }
        let rank = entries.rank();
        if rank != n {
            return Err(Error::RankDeficient { rank, expected: n });
        }
        Ok(CoefficientMatrix { n, entries })
    }

    pub fn from_rows(rows: Vec<Vec<Rational>>) -> Result<Self> {
        CoefficientMatrix::new(Matrix::from_rows(rows)?)
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn matrix(&self) -> &Matrix {
        &self.entries
    }

    /// `M C` for a square matrix `M`.
    pub fn left_multiplied(&self, m: &Matrix) -> Result<Self> {
        CoefficientMatrix::new(m.mul(&self.entries)?)
    }

    /// Same system with columns reordered: column `i` of the result is
    /// column `perm[i]` of `self`.
    pub fn permuted_columns(&self, perm: &[usize]) -> Self {
        CoefficientMatrix {
            n: self.n,
            entries: self.entries.select_columns(perm),
        }
    }
}

/// A vector of `Q^2`.
pub type Vec2 = [Rational; 2];

pub fn cross(a: &Vec2, b: &Vec2) -> Rational {
    &a[0] * &b[1] - &a[1] * &b[0]
}

pub fn dot(a: &Vec2, b: &Vec2) -> Rational {
    &a[0] * &b[0] + &a[1] * &b[1]
}

fn is_zero_vec(a: &Vec2) -> bool {
    a[0].is_zero() && a[1].is_zero()
}

/// Upper half-plane (including the positive x-axis) first.
fn half(a: &Vec2) -> u8 {
    if a[1].is_positive() || (a[1].is_zero() && a[0].is_positive()) {
        0
    } else {
        1
    }
}

/// Counter-clockwise angle order starting from the positive x-axis.
pub(crate) fn angle_cmp(a: &Vec2, b: &Vec2) -> Ordering {
    half(a).cmp(&half(b)).then_with(|| {
        let c = cross(a, b);
        if c.is_positive() {
            Ordering::Less
        } else if c.is_negative() {
            Ordering::Greater
        } else {
            Ordering::Equal
        }
    })
}

/// Rows of a Gale dual of a coefficient matrix.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GaleDualP {
    rows: Vec<Vec2>,
}

impl GaleDualP {
    /// Accepts any rows whose two columns are linearly independent.
    pub fn from_rows(rows: Vec<Vec2>) -> Result<Self> {
        let p = GaleDualP { rows };
        if p.rows.len() < 3 || p.as_matrix().rank() != 2 {
            return Err(Error::Dimension(
                "Gale dual needs at least 3 rows and rank 2".into(),
            ));
        }
        Ok(p)
    }

    pub fn from_i64_rows(rows: &[[i64; 2]]) -> Result<Self> {
        GaleDualP::from_rows(
            rows.iter()
                .map(|r| [crate::exact::int(r[0]), crate::exact::int(r[1])])
                .collect(),
        )
    }

    pub fn rows(&self) -> &[Vec2] {
        &self.rows
    }

    pub fn row(&self, j: usize) -> &Vec2 {
        &self.rows[j]
    }

    pub fn len(&self) -> usize {
        self.rows.len()
    }

    pub fn is_empty(&self) -> bool {
        self.rows.is_empty()
    }

    pub fn det(&self, i: usize, j: usize) -> Rational {
        cross(&self.rows[i], &self.rows[j])
    }

    /// `(1, 0)` is an interior direction and every positive kernel vector has
    /// positive first coordinate, so `y -> P (1, y)` parametrizes all of them.
    /// Equivalently the positivity interval is bounded and contains `0`.
    pub fn is_normalized(&self) -> bool {
        self.rows.iter().all(|r| r[0].is_positive())
            && self.rows.iter().any(|r| r[1].is_positive())
            && self.rows.iter().any(|r| r[1].is_negative())
    }

    pub fn as_matrix(&self) -> Matrix {
        Matrix::from_rows(self.rows.iter().map(|r| r.to_vec()).collect())
            .expect("rows have length 2")
    }

    /// `P M` for a 2x2 matrix given as rows.
    pub fn right_multiplied(&self, m: &[Vec2; 2]) -> Self {
        GaleDualP {
            rows: self
                .rows
                .iter()
                .map(|r| {
                    [
                        &r[0] * &m[0][0] + &r[1] * &m[1][0],
                        &r[0] * &m[0][1] + &r[1] * &m[1][1],
                    ]
                })
                .collect(),
        }
    }

    /// `p_j(y) = <P_j, (1, y)>` evaluated at `y`.
    pub fn linear_form(&self, j: usize, y: &Rational) -> Rational {
        &self.rows[j][0] + &self.rows[j][1] * y
    }

    fn check_nonzero_rows(&self) -> Result<()> {
        match self.rows.iter().position(is_zero_vec) {
            Some(j) => Err(Error::ZeroGaleRow(j)),
            None => Ok(()),
        }
    }

    /// Distinct ray directions in counter-clockwise order, each with the
    /// ascending list of row indices on it.
    pub(crate) fn rays(&self) -> Vec<Vec<usize>> {
        let mut idx: Vec<usize> = (0..self.rows.len()).collect();
        idx.sort_by(|&a, &b| angle_cmp(&self.rows[a], &self.rows[b]).then(a.cmp(&b)));
        let mut rays: Vec<Vec<usize>> = Vec::new();
        for j in idx {
            match rays.last_mut() {
                Some(ray) if angle_cmp(&self.rows[ray[0]], &self.rows[j]) == Ordering::Equal => {
                    ray.push(j)
                }
                _ => rays.push(alloc::vec![j]),
            }
        }
        rays
    }

    /// Rays in counter-clockwise order inside the open half-plane that
    /// contains all rows, or `None` if there is no such half-plane.
    pub(crate) fn rays_in_half_plane(&self) -> Result<Option<Vec<Vec<usize>>>> {
        self.check_nonzero_rows()?;
        let rays = self.rays();
        let r = rays.len();
        if r == 1 {
            return Ok(Some(rays));
        }
        // A cyclic gap between consecutive rays larger than pi leaves room
        // for every row inside an open half-plane.
        for i in 0..r {
            let a = &self.rows[rays[i][0]];
            let b = &self.rows[rays[(i + 1) % r][0]];
            if cross(a, b).is_negative() {
                let start = (i + 1) % r;
                let mut ordered = Vec::with_capacity(r);
                for k in 0..r {
                    ordered.push(rays[(start + k) % r].clone());
                }
                return Ok(Some(ordered));
            }
        }
        Ok(None)
    }
}

/// The Gale dual of `C`: the deterministic kernel basis as two columns.
pub fn gale_dual_of_c(c: &CoefficientMatrix) -> GaleDualP {
    let k = c.matrix().kernel_basis();
    debug_assert_eq!(k.cols(), 2);
    GaleDualP {
        rows: (0..k.rows())
            .map(|r| [k[(r, 0)].clone(), k[(r, 1)].clone()])
            .collect(),
    }
}

/// A coefficient matrix whose Gale dual is `p`: the rows of `C` span the
/// left kernel of `P`.
pub fn coefficient_matrix_from_gale(p: &GaleDualP) -> Result<CoefficientMatrix> {
    CoefficientMatrix::new(p.as_matrix().transpose().kernel_basis().transpose())
}

/// Whether some `v` satisfies `<P_j, v> > 0` for all `j`.
pub fn feasibility(p: &GaleDualP) -> Result<bool> {
    Ok(p.rays_in_half_plane()?.is_some())
}

/// A primitive integer direction `v` with `<P_j, v> > 0` for every row, or
/// `None` when the rows do not fit in an open half-plane.
pub fn interior_direction(p: &GaleDualP) -> Result<Option<Vec2>> {
    let Some(rays) = p.rays_in_half_plane()? else {
        return Ok(None);
    };
    let first = p.row(rays[0][0]);
    let last = p.row(rays[rays.len() - 1][0]);
    let v = if rays.len() == 1 {
        first.clone()
    } else {
        // <first, v> = <last, v> = 1; every row is a nonnegative combination
        // of the two extreme rays.
        let m = Matrix::from_rows(alloc::vec![first.to_vec(), last.to_vec()])?;
        let s = m
            .solve(&[Rational::one(), Rational::one()])
            .ok_or(Error::Infeasible)?;
        [s[0].clone(), s[1].clone()]
    };
    let ints = primitive_integer_vector(&v);
    Ok(Some([
        Rational::from_integer(ints[0].clone()),
        Rational::from_integer(ints[1].clone()),
    ]))
}

/// Changes the basis of `ker C` so that the dual becomes normalized.
/// Returns the new dual and the 2x2 matrix `M` with `P' = P M`.
pub fn normalize(p: &GaleDualP) -> Result<(GaleDualP, [Vec2; 2])> {
    if p.is_normalized() {
        let identity = [
            [Rational::one(), Rational::zero()],
            [Rational::zero(), Rational::one()],
        ];
        return Ok((p.clone(), identity));
    }
    let v = interior_direction(p)?.ok_or(Error::Infeasible)?;
    // The sum of the rows is positive on the closed positive cone minus 0.
    // Taking it as the first row of M^-1 puts that cone in the half-plane
    // of positive first coordinate, while M sends (1, 0) to v.
    let u = p
        .rows
        .iter()
        .fold([Rational::zero(), Rational::zero()], |acc, r| {
            [&acc[0] + &r[0], &acc[1] + &r[1]]
        });
    let w: Vec2 = [-u[1].clone(), u[0].clone()];
    let m = [[v[0].clone(), w[0].clone()], [v[1].clone(), w[1].clone()]];
    let q = p.right_multiplied(&m);
    debug_assert!(q.is_normalized());
    Ok((q, m))
}

/// The open set `{y : p_j(y) > 0 for all j}`; `None` endpoints are infinite.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PositivityInterval {
    pub lower: Option<Rational>,
    pub upper: Option<Rational>,
    pub empty: bool,
}

impl PositivityInterval {
    pub fn contains(&self, y: &Rational) -> bool {
        !self.empty
            && self.lower.as_ref().is_none_or(|l| l < y)
            && self.upper.as_ref().is_none_or(|u| y < u)
    }

    /// Some rational strictly inside the interval.
    pub fn sample(&self) -> Option<Rational> {
        if self.empty {
            return None;
        }
        let one = Rational::one();
        Some(match (&self.lower, &self.upper) {
            (None, None) => Rational::zero(),
            (Some(l), None) => l + one,
            (None, Some(u)) => u - one,
            (Some(l), Some(u)) => (l + u) / Rational::from_integer(2.into()),
        })
    }
}

pub fn positivity_interval(p: &GaleDualP) -> PositivityInterval {
    let mut lower: Option<Rational> = None;
    let mut upper: Option<Rational> = None;
    let mut empty = false;
    for r in p.rows() {
        if r[1].is_zero() {
            if !r[0].is_positive() {
                empty = true;
            }
            continue;
        }
        let root = -(&r[0] / &r[1]);
        if r[1].is_positive() {
            if lower.as_ref().is_none_or(|l| &root > l) {
                lower = Some(root);
            }
        } else if upper.as_ref().is_none_or(|u| &root < u) {
            upper = Some(root);
        }
    }
    if let (Some(l), Some(u)) = (&lower, &upper) {
        if l >= u {
            empty = true;
        }
    }
    PositivityInterval {
        lower,
        upper,
        empty,
    }
}
