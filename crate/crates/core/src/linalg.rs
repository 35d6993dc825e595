//! Dense exact linear algebra over the rationals.

use alloc::vec::Vec;
use core::fmt;
use core::ops::{Index, IndexMut, Mul, Sub};

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};

use crate::Rational;

/// A dense row-major matrix of rationals.
#[derive(Clone, PartialEq, Eq)]
pub struct Matrix {
    rows: usize,
    cols: usize,
    data: Vec<Rational>,
}

impl Matrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        Matrix { rows, cols, data: alloc::vec![Rational::zero(); rows * cols] }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m[(i, i)] = Rational::one();
        }
        m
    }

    pub fn diagonal(entries: &[Rational]) -> Self {
        let mut m = Self::zeros(entries.len(), entries.len());
        for (i, e) in entries.iter().enumerate() {
            m[(i, i)] = e.clone();
        }
        m
    }

    pub fn from_fn(rows: usize, cols: usize, mut f: impl FnMut(usize, usize) -> Rational) -> Self {
        let mut data = Vec::with_capacity(rows * cols);
        for i in 0..rows {
            for j in 0..cols {
                data.push(f(i, j));
            }
        }
        Matrix { rows, cols, data }
    }

    /// Builds a matrix whose columns are the given vectors.
    pub fn from_columns(rows: usize, columns: &[Vec<Rational>]) -> Self {
        Self::from_fn(rows, columns.len(), |i, j| columns[j][i].clone())
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }

    pub fn row(&self, i: usize) -> &[Rational] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    pub fn column(&self, j: usize) -> Vec<Rational> {
        (0..self.rows).map(|i| self[(i, j)].clone()).collect()
    }

    pub fn transpose(&self) -> Self {
        Self::from_fn(self.cols, self.rows, |i, j| self[(j, i)].clone())
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(Zero::is_zero)
    }

    pub fn is_integral(&self) -> bool {
        self.data.iter().all(|x| x.is_integer())
    }

    pub fn scale(&self, c: &Rational) -> Self {
        Matrix { rows: self.rows, cols: self.cols, data: self.data.iter().map(|x| x * c).collect() }
    }

    pub fn mul_vec(&self, v: &[Rational]) -> Vec<Rational> {
        assert_eq!(v.len(), self.cols, "dimension mismatch");
        (0..self.rows)
            .map(|i| self.row(i).iter().zip(v).fold(Rational::zero(), |acc, (a, b)| acc + a * b))
            .collect()
    }

    pub fn trace(&self) -> Rational {
        (0..self.rows.min(self.cols)).fold(Rational::zero(), |acc, i| acc + &self[(i, i)])
    }

    /// Maximum absolute row sum, a bound on every eigenvalue modulus.
    pub fn row_sum_norm(&self) -> Rational {
        (0..self.rows)
            .map(|i| self.row(i).iter().fold(Rational::zero(), |acc, x| acc + x.abs()))
            .max()
            .unwrap_or_else(Rational::zero)
    }

    pub fn to_f64(&self) -> Vec<f64> {
        use num_traits::ToPrimitive;
        self.data.iter().map(|x| x.to_f64().unwrap_or(f64::NAN)).collect()
    }

    /// Characteristic polynomial `det(xI − A)` by Faddeev–LeVerrier;
    /// coefficients from the constant term up, monic.
    pub fn charpoly(&self) -> Vec<Rational> {
        assert!(self.is_square(), "charpoly of a non-square matrix");
        let n = self.rows;
        let mut coeffs = alloc::vec![Rational::zero(); n + 1];
        coeffs[n] = Rational::one();
        let mut m = Matrix::zeros(n, n);
        for k in 1..=n {
            let mut next = self * &m;
            for i in 0..n {
                next[(i, i)] += &coeffs[n - k + 1];
            }
            let am = self * &next;
            coeffs[n - k] = -am.trace() / Rational::from_integer(BigInt::from(k));
            m = next;
        }
        coeffs
    }

    /// Reduced row echelon form and pivot columns.
    pub fn rref(&self) -> (Matrix, Vec<usize>) {
        let mut a = self.clone();
        let mut pivots = Vec::new();
        let mut r = 0;
        for c in 0..a.cols {
            if r == a.rows {
                break;
            }
            let Some(p) = (r..a.rows).find(|&i| !a[(i, c)].is_zero()) else {
                continue;
            };
            a.swap_rows(r, p);
            let inv = a[(r, c)].recip();
            for j in c..a.cols {
                let v = &a[(r, j)] * &inv;
                a[(r, j)] = v;
            }
            for i in 0..a.rows {
                if i != r && !a[(i, c)].is_zero() {
                    let f = a[(i, c)].clone();
                    for j in c..a.cols {
                        let v = &a[(r, j)] * &f;
                        a[(i, j)] -= v;
                    }
                }
            }
            pivots.push(c);
            r += 1;
        }
        (a, pivots)
    }

    pub fn rank(&self) -> usize {
        self.rref().1.len()
    }

    /// A basis of the null space `{x : Ax = 0}`.
    pub fn kernel(&self) -> Vec<Vec<Rational>> {
        let (r, pivots) = self.rref();
        let free: Vec<usize> = (0..self.cols).filter(|c| !pivots.contains(c)).collect();
        free.iter()
            .map(|&f| {
                let mut x = alloc::vec![Rational::zero(); self.cols];
                x[f] = Rational::one();
                for (row, &p) in pivots.iter().enumerate() {
                    x[p] = -r[(row, f)].clone();
                }
                x
            })
            .collect()
    }

    /// Solves `A x = b`, returning one solution if any exists.
    pub fn solve(&self, b: &[Rational]) -> Option<Vec<Rational>> {
        assert_eq!(b.len(), self.rows, "dimension mismatch");
        let aug = Matrix::from_fn(self.rows, self.cols + 1, |i, j| {
            if j < self.cols {
                self[(i, j)].clone()
            } else {
                b[i].clone()
            }
        });
        let (r, pivots) = aug.rref();
        if pivots.last() == Some(&self.cols) {
            return None;
        }
        let mut x = alloc::vec![Rational::zero(); self.cols];
        for (row, &p) in pivots.iter().enumerate() {
            x[p] = r[(row, self.cols)].clone();
        }
        Some(x)
    }

    fn swap_rows(&mut self, a: usize, b: usize) {
        if a != b {
            for j in 0..self.cols {
                self.data.swap(a * self.cols + j, b * self.cols + j);
            }
        }
    }
}

impl Index<(usize, usize)> for Matrix {
    type Output = Rational;

    fn index(&self, (i, j): (usize, usize)) -> &Rational {
        &self.data[i * self.cols + j]
    }
}

impl IndexMut<(usize, usize)> for Matrix {
    fn index_mut(&mut self, (i, j): (usize, usize)) -> &mut Rational {
        &mut self.data[i * self.cols + j]
    }
}

impl Mul for &Matrix {
    type Output = Matrix;

    fn mul(self, rhs: &Matrix) -> Matrix {
        assert_eq!(self.cols, rhs.rows, "dimension mismatch");
        let mut out = Matrix::zeros(self.rows, rhs.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = &self[(i, k)];
                if a.is_zero() {
                    continue;
                }
                for j in 0..rhs.cols {
                    let b = &rhs[(k, j)];
                    if !b.is_zero() {
                        out[(i, j)] += a * b;
                    }
                }
            }
        }
        out
    }
}

impl Sub for &Matrix {
    type Output = Matrix;

    fn sub(self, rhs: &Matrix) -> Matrix {
        assert_eq!((self.rows, self.cols), (rhs.rows, rhs.cols), "dimension mismatch");
        Matrix {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().zip(&rhs.data).map(|(a, b)| a - b).collect(),
        }
    }
}

impl fmt::Debug for Matrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for i in 0..self.rows {
            f.write_str(if i == 0 { "[" } else { " " })?;
            for (j, x) in self.row(i).iter().enumerate() {
                if j > 0 {
                    f.write_str(", ")?;
                }
                write!(f, "{x}")?;
            }
            f.write_str(if i + 1 == self.rows { "]" } else { ";\n" })?;
        }
        Ok(())
    }
}

/// Evaluates a polynomial given by ascending coefficients.
pub fn eval_poly(coeffs: &[Rational], x: &Rational) -> Rational {
    coeffs.iter().rev().fold(Rational::zero(), |acc, c| acc * x + c)
}

/// Divides by `(x − root)`, assuming `root` is a root.
pub fn deflate(coeffs: &[Rational], root: &Rational) -> Vec<Rational> {
    let n = coeffs.len() - 1;
    let mut out = alloc::vec![Rational::zero(); n];
    let mut carry = Rational::zero();
    for i in (0..n).rev() {
        carry = &coeffs[i + 1] + &carry * root;
        out[i] = carry.clone();
    }
    out
}

/// Integer roots of a monic integer polynomial with multiplicities, found by
/// scanning `[-bound, bound]`.
pub fn integer_roots(coeffs: &[Rational], bound: &BigInt) -> Vec<(BigInt, usize)> {
    let mut poly = coeffs.to_vec();
    let mut roots = Vec::new();
    let mut x = -bound.clone();
    while &x <= bound && poly.len() > 1 {
        let xr = Rational::from_integer(x.clone());
        let mut mult = 0;
        while poly.len() > 1 && eval_poly(&poly, &xr).is_zero() {
            poly = deflate(&poly, &xr);
            mult += 1;
        }
        if mult > 0 {
            roots.push((x.clone(), mult));
        }
        x += 1;
    }
    roots
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q(n: i64) -> Rational {
        Rational::from_integer(n.into())
    }

    fn mat(rows: &[&[i64]]) -> Matrix {
        Matrix::from_fn(rows.len(), rows[0].len(), |i, j| q(rows[i][j]))
    }

    #[test]
    fn charpoly_of_small_matrices() {
        // [[2,1],[1,2]]: x² − 4x + 3
        assert_eq!(mat(&[&[2, 1], &[1, 2]]).charpoly(), alloc::vec![q(3), q(-4), q(1)]);
        assert_eq!(Matrix::zeros(0, 0).charpoly(), alloc::vec![q(1)]);
        let m = mat(&[&[0, 0, 0, 1], &[0, 0, 1, 0], &[0, 1, 0, 0], &[1, 0, 0, 0]]);
        // (x² − 1)²
        assert_eq!(m.charpoly(), alloc::vec![q(1), q(0), q(-2), q(0), q(1)]);
    }

    #[test]
    fn kernel_and_solve() {
        let m = mat(&[&[1, 2, 3], &[2, 4, 6]]);
        let k = m.kernel();
        assert_eq!(k.len(), 2);
        for v in &k {
            assert!(m.mul_vec(v).iter().all(Zero::is_zero));
        }
        let a = mat(&[&[1, 1], &[1, -1]]);
        assert_eq!(a.solve(&[q(3), q(1)]), Some(alloc::vec![q(2), q(1)]));
        assert_eq!(m.solve(&[q(1), q(1)]), None);
        assert_eq!(a.rank(), 2);
    }

    #[test]
    fn roots() {
        // (x − 1)²(x + 2)(x² + 1)
        let p: Vec<_> = {
            let factors = [alloc::vec![q(-1), q(1)], alloc::vec![q(-1), q(1)], alloc::vec![q(2), q(1)], alloc::vec![q(1), q(0), q(1)]];
            let mut acc = alloc::vec![q(1)];
            for f in &factors {
                let mut next = alloc::vec![q(0); acc.len() + f.len() - 1];
                for (i, a) in acc.iter().enumerate() {
                    for (j, b) in f.iter().enumerate() {
                        next[i + j] += a * b;
                    }
                }
                acc = next;
            }
            acc
        };
        assert_eq!(p, alloc::vec![q(2), q(-3), q(2), q(-2), q(0), q(1)]);
        let r = integer_roots(&p, &BigInt::from(5));
        assert_eq!(r, alloc::vec![(BigInt::from(-2), 1), (BigInt::from(1), 2)]);
    }
}
