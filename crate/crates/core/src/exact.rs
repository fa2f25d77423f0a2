//! Exact integer and rational linear algebra.
//!
//! Determinants of integral matrices use fraction-free Bareiss elimination;
//! everything else is ordinary Gauss elimination over `Q`. Pivots are always
//! the first nonzero entry in column order, so echelon forms and kernel bases
//! are reproducible.

use alloc::vec;
use alloc::vec::Vec;
use core::fmt;
use core::ops::Index;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};

/// Arbitrary-precision rational, always kept in canonical form.
pub type Rational = num_rational::BigRational;

pub fn int(n: i64) -> Rational {
    Rational::from_integer(BigInt::from(n))
}

pub fn rat(num: i64, den: i64) -> Rational {
    Rational::new(BigInt::from(num), BigInt::from(den))
}

/// `base^exp` for a nonnegative exponent.
pub fn pow(base: &Rational, exp: u32) -> Rational {
    num_traits::pow(base.clone(), exp as usize)
}

/// Lcm of the denominators of `values`.
pub fn common_denominator<'a, I: IntoIterator<Item = &'a Rational>>(values: I) -> BigInt {
    values
        .into_iter()
        .fold(BigInt::one(), |acc, v| acc.lcm(v.denom()))
}

/// Scales a nonzero rational vector by a positive factor so that it becomes a
/// primitive integer vector. The zero vector maps to zeros.
pub fn primitive_integer_vector(v: &[Rational]) -> Vec<BigInt> {
    let den = common_denominator(v);
    let ints: Vec<BigInt> = v.iter().map(|x| (x * &den).to_integer()).collect();
    let g = ints.iter().fold(BigInt::zero(), |acc, x| acc.gcd(x));
    if g.is_zero() {
        return ints;
    }
    ints.into_iter().map(|x| x / &g).collect()
}

/// Dense row-major matrix of rationals.
#[derive(Clone, PartialEq, Eq)]
pub struct Matrix {
    rows: usize,
    cols: usize,
    data: Vec<Rational>,
}

impl fmt::Debug for Matrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("[")?;
        for r in 0..self.rows {
            if r > 0 {
                f.write_str(", ")?;
            }
            f.write_str("[")?;
            for c in 0..self.cols {
                if c > 0 {
                    f.write_str(", ")?;
                }
                write!(f, "{}", self[(r, c)])?;
            }
            f.write_str("]")?;
        }
        f.write_str("]")
    }
}

impl Index<(usize, usize)> for Matrix {
    type Output = Rational;

    fn index(&self, (r, c): (usize, usize)) -> &Rational {
        &self.data[r * self.cols + c]
    }
}

impl Matrix {
    pub fn new(rows: usize, cols: usize, data: Vec<Rational>) -> Result<Self> {
        if data.len() != rows * cols {
            return Err(Error::Dimension(alloc::format!(
                "{} entries for a {}x{} matrix",
                data.len(),
                rows,
                cols
            )));
        }
        Ok(Matrix { rows, cols, data })
    }

    pub fn zeros(rows: usize, cols: usize) -> Self {
        Matrix {
            rows,
            cols,
            data: vec![Rational::zero(); rows * cols],
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Matrix::zeros(n, n);
        for i in 0..n {
            m.set(i, i, Rational::one());
        }
        m
    }

    /// Builds a matrix from rows; all rows must have the same length.
    pub fn from_rows(rows: Vec<Vec<Rational>>) -> Result<Self> {
        let nrows = rows.len();
        let ncols = rows.first().map_or(0, Vec::len);
        if rows.iter().any(|r| r.len() != ncols) {
            return Err(Error::Dimension("ragged rows".into()));
        }
        Matrix::new(nrows, ncols, rows.into_iter().flatten().collect())
    }

    pub fn from_i64_rows(rows: &[&[i64]]) -> Result<Self> {
        Matrix::from_rows(
            rows.iter()
                .map(|r| r.iter().map(|&x| int(x)).collect())
                .collect(),
        )
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn set(&mut self, r: usize, c: usize, value: Rational) {
        self.data[r * self.cols + c] = value;
    }

    pub fn row(&self, r: usize) -> &[Rational] {
        &self.data[r * self.cols..(r + 1) * self.cols]
    }

    pub fn column(&self, c: usize) -> Vec<Rational> {
        (0..self.rows).map(|r| self[(r, c)].clone()).collect()
    }

    pub fn to_rows(&self) -> Vec<Vec<Rational>> {
        (0..self.rows).map(|r| self.row(r).to_vec()).collect()
    }

    pub fn transpose(&self) -> Matrix {
        let mut t = Matrix::zeros(self.cols, self.rows);
        for r in 0..self.rows {
            for c in 0..self.cols {
                t.set(c, r, self[(r, c)].clone());
            }
        }
        t
    }

    pub fn mul(&self, other: &Matrix) -> Result<Matrix> {
        if self.cols != other.rows {
            return Err(Error::Dimension(alloc::format!(
                "cannot multiply {}x{} by {}x{}",
                self.rows,
                self.cols,
                other.rows,
                other.cols
            )));
        }
        let mut out = Matrix::zeros(self.rows, other.cols);
        for r in 0..self.rows {
            for c in 0..other.cols {
                let mut acc = Rational::zero();
                for k in 0..self.cols {
                    if !self[(r, k)].is_zero() {
                        acc += &self[(r, k)] * &other[(k, c)];
                    }
                }
                out.set(r, c, acc);
            }
        }
        Ok(out)
    }

    /// Keeps the listed columns, in the given order.
    pub fn select_columns(&self, cols: &[usize]) -> Matrix {
        let mut out = Matrix::zeros(self.rows, cols.len());
        for r in 0..self.rows {
            for (i, &c) in cols.iter().enumerate() {
                out.set(r, i, self[(r, c)].clone());
            }
        }
        out
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(Zero::is_zero)
    }

    pub fn is_integral(&self) -> bool {
        self.data.iter().all(|x| x.is_integer())
    }

    pub fn determinant(&self) -> Result<Rational> {
        if self.rows != self.cols {
            return Err(Error::Dimension(alloc::format!(
                "determinant of a non-square {}x{} matrix",
                self.rows,
                self.cols
            )));
        }
        if self.is_integral() {
            let rows = (0..self.rows)
                .map(|r| self.row(r).iter().map(|x| x.to_integer()).collect())
                .collect();
            return Ok(Rational::from_integer(bareiss_determinant(rows)));
        }
        let mut m = self.clone();
        let mut det = Rational::one();
        for k in 0..m.rows {
            let Some(p) = (k..m.rows).find(|&r| !m[(r, k)].is_zero()) else {
                return Ok(Rational::zero());
            };
            if p != k {
                m.swap_rows(p, k);
                det = -det;
            }
            let pivot = m[(k, k)].clone();
            det *= &pivot;
            for r in k + 1..m.rows {
                if m[(r, k)].is_zero() {
                    continue;
                }
                let factor = &m[(r, k)] / &pivot;
                for c in k..m.cols {
                    let v = &m[(r, c)] - &factor * &m[(k, c)];
                    m.set(r, c, v);
                }
            }
        }
        Ok(det)
    }

    fn swap_rows(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        for c in 0..self.cols {
            self.data.swap(a * self.cols + c, b * self.cols + c);
        }
    }

    /// Reduced row echelon form together with the pivot columns.
    pub fn rref(&self) -> (Matrix, Vec<usize>) {
        let mut m = self.clone();
        let mut pivots = Vec::new();
        let mut row = 0;
        for col in 0..m.cols {
            if row == m.rows {
                break;
            }
            let Some(p) = (row..m.rows).find(|&r| !m[(r, col)].is_zero()) else {
                continue;
            };
            m.swap_rows(p, row);
            let inv = m[(row, col)].recip();
            for c in col..m.cols {
                let v = &m[(row, c)] * &inv;
                m.set(row, c, v);
            }
            for r in 0..m.rows {
                if r == row || m[(r, col)].is_zero() {
                    continue;
                }
                let factor = m[(r, col)].clone();
                for c in col..m.cols {
                    let v = &m[(r, c)] - &factor * &m[(row, c)];
                    m.set(r, c, v);
                }
            }
            pivots.push(col);
            row += 1;
        }
        (m, pivots)
    }

    pub fn rank(&self) -> usize {
        self.rref().1.len()
    }

    /// Basis of the right kernel, one basis vector per column.
    ///
    /// Free variables are taken in column order; each basis vector is scaled
    /// to a primitive integer vector whose free coordinate is positive.
    pub fn kernel_basis(&self) -> Matrix {
        let (r, pivots) = self.rref();
        let free: Vec<usize> = (0..self.cols).filter(|c| !pivots.contains(c)).collect();
        let mut basis = Matrix::zeros(self.cols, free.len());
        for (k, &f) in free.iter().enumerate() {
            let mut v = vec![Rational::zero(); self.cols];
            v[f] = Rational::one();
            for (i, &p) in pivots.iter().enumerate() {
                v[p] = -r[(i, f)].clone();
            }
            for (c, x) in primitive_integer_vector(&v).into_iter().enumerate() {
                basis.set(c, k, Rational::from_integer(x));
            }
        }
        basis
    }

    /// Unique solution of a square nonsingular system, or `None`.
    pub fn solve(&self, rhs: &[Rational]) -> Option<Vec<Rational>> {
        if self.rows != self.cols || rhs.len() != self.rows {
            return None;
        }
        let n = self.rows;
        let mut aug = Matrix::zeros(n, n + 1);
        for r in 0..n {
            for c in 0..n {
                aug.set(r, c, self[(r, c)].clone());
            }
            aug.set(r, n, rhs[r].clone());
        }
        let (red, pivots) = aug.rref();
        if pivots.len() != n || pivots.iter().enumerate().any(|(i, &p)| p != i) {
            return None;
        }
        Some((0..n).map(|r| red[(r, n)].clone()).collect())
    }
}

/// Fraction-free determinant of a square integer matrix.
pub fn bareiss_determinant(mut m: Vec<Vec<BigInt>>) -> BigInt {
    let n = m.len();
    if n == 0 {
        return BigInt::one();
    }
    let mut negate = false;
    let mut prev = BigInt::one();
    for k in 0..n - 1 {
        if m[k][k].is_zero() {
            let Some(p) = (k + 1..n).find(|&r| !m[r][k].is_zero()) else {
                return BigInt::zero();
            };
            m.swap(p, k);
            negate = !negate;
        }
        for i in k + 1..n {
            for j in k + 1..n {
                let v = &m[i][j] * &m[k][k] - &m[i][k] * &m[k][j];
                m[i][j] = v / &prev;
            }
        }
        prev = m[k][k].clone();
    }
    let det = m[n - 1][n - 1].clone();
    if negate {
        -det
    } else {
        det
    }
}

/// Determinant of a small integer matrix given as rows.
pub fn det_i64(rows: &[Vec<i64>]) -> BigInt {
    bareiss_determinant(
        rows.iter()
            .map(|r| r.iter().map(|&x| BigInt::from(x)).collect())
            .collect(),
    )
}

/// Sign of a rational as -1, 0 or 1.
pub fn sign(x: &Rational) -> i8 {
    if x.is_positive() {
        1
    } else if x.is_negative() {
        -1
    } else {
        0
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    /// Laplace expansion along the first row; independent of both
    /// elimination paths.
    fn cofactor_det(m: &[Vec<Rational>]) -> Rational {
        let n = m.len();
        if n == 0 {
            return Rational::one();
        }
        let mut acc = Rational::zero();
        for c in 0..n {
            let minor: Vec<Vec<Rational>> = m[1..]
                .iter()
                .map(|r| {
                    r.iter()
                        .enumerate()
                        .filter(|&(j, _)| j != c)
                        .map(|(_, x)| x.clone())
                        .collect()
                })
                .collect();
            let term = &m[0][c] * cofactor_det(&minor);
            if c % 2 == 0 {
                acc += term;
            } else {
                acc -= term;
            }
        }
        acc
    }

    #[test]
    fn determinant_examples() {
        let m = Matrix::from_i64_rows(&[&[1, 1], &[0, 1]]).unwrap();
        assert_eq!(m.determinant().unwrap(), int(1));
        let m = Matrix::from_i64_rows(&[&[1, 1, 1], &[1, 1, 0], &[0, 1, 1]]).unwrap();
        assert_eq!(m.determinant().unwrap(), int(1));
        assert_eq!(Matrix::identity(4).determinant().unwrap(), int(1));
    }

    #[test]
    fn determinant_rejects_non_square() {
        let m = Matrix::zeros(2, 3);
        assert!(matches!(m.determinant(), Err(Error::Dimension(_))));
    }

    #[test]
    fn rational_determinant_uses_gauss_path() {
        let m = Matrix::from_rows(vec![vec![rat(1, 2), rat(1, 3)], vec![rat(1, 4), rat(1, 5)]])
            .unwrap();
        assert_eq!(m.determinant().unwrap(), rat(1, 10) - rat(1, 12));
    }

    #[test]
    fn kernel_examples() {
        let m = Matrix::from_i64_rows(&[&[2, -3, 1]]).unwrap();
        let k = m.kernel_basis();
        assert_eq!(k.cols(), 2);
        assert!(m.mul(&k).unwrap().is_zero());
        // the two suggested generators lie in the span
        let spanned = Matrix::from_i64_rows(&[&[1, 0], &[0, 1], &[-2, 3]]).unwrap();
        let joined = Matrix::from_rows(
            (0..3)
                .map(|r| {
                    let mut row = k.row(r).to_vec();
                    row.extend_from_slice(spanned.row(r));
                    row
                })
                .collect(),
        )
        .unwrap();
        assert_eq!(joined.rank(), 2);

        assert_eq!(Matrix::identity(3).kernel_basis().cols(), 0);

        let ones = Matrix::from_i64_rows(&[&[1, 1, 1, 1]]).unwrap();
        let k = ones.kernel_basis();
        assert_eq!(k.cols(), 3);
        assert!(ones.mul(&k).unwrap().is_zero());
    }

    #[test]
    fn rank_examples() {
        assert_eq!(Matrix::zeros(2, 4).rank(), 0);
        assert_eq!(Matrix::identity(3).rank(), 3);
        assert_eq!(
            Matrix::from_i64_rows(&[&[1, 2], &[2, 4]]).unwrap().rank(),
            1
        );
    }

    #[test]
    fn solve_square_system() {
        let m = Matrix::from_i64_rows(&[&[2, 1], &[1, 3]]).unwrap();
        let x = m.solve(&[int(3), int(5)]).unwrap();
        assert_eq!(x, vec![rat(4, 5), rat(7, 5)]);
        let singular = Matrix::from_i64_rows(&[&[1, 2], &[2, 4]]).unwrap();
        assert!(singular.solve(&[int(1), int(1)]).is_none());
    }

    fn small_matrix(rows: usize, cols: usize) -> impl Strategy<Value = Vec<Vec<i64>>> {
        proptest::collection::vec(proptest::collection::vec(-4i64..=4, cols), rows)
    }

    proptest! {
        #[test]
        fn bareiss_matches_cofactor(m in (1usize..=5).prop_flat_map(|n| small_matrix(n, n))) {
            let rows: Vec<Vec<Rational>> =
                m.iter().map(|r| r.iter().map(|&x| int(x)).collect()).collect();
            let expected = cofactor_det(&rows);
            prop_assert_eq!(Rational::from_integer(det_i64(&m)), expected.clone());
            // rational path on a scaled copy
            let half: Vec<Vec<Rational>> =
                rows.iter().map(|r| r.iter().map(|x| x * rat(1, 2)).collect()).collect();
            let scaled = Matrix::from_rows(half).unwrap().determinant().unwrap();
            prop_assert_eq!(scaled * num_traits::pow(int(2), m.len()), expected);
        }

        #[test]
        fn row_swap_negates(m in (2usize..=4).prop_flat_map(|n| small_matrix(n, n)),
                            a in 0usize..4, b in 0usize..4) {
            let n = m.len();
            let (a, b) = (a % n, b % n);
            prop_assume!(a != b);
            let mut swapped = m.clone();
            swapped.swap(a, b);
            prop_assert_eq!(det_i64(&swapped), -det_i64(&m));
        }

        #[test]
        fn kernel_is_annihilated(m in (1usize..=4, 1usize..=6)
                                     .prop_flat_map(|(r, c)| small_matrix(r, c))) {
            let refs: Vec<&[i64]> = m.iter().map(Vec::as_slice).collect();
            let mat = Matrix::from_i64_rows(&refs).unwrap();
            let k = mat.kernel_basis();
            prop_assert!(mat.mul(&k).unwrap().is_zero());
            prop_assert_eq!(mat.rank() + k.cols(), mat.cols());
            prop_assert_eq!(k.rank(), k.cols());
        }
    }
}
