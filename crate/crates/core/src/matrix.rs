//! Dense square matrices over a [`Ring`] context.

use num_bigint::BigInt;
use num_traits::{One, Zero};

use crate::arith::Ring;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Matrix<E> {
    rows: Vec<Vec<E>>,
}

impl<E: Clone> Matrix<E> {
    pub fn from_rows(rows: Vec<Vec<E>>) -> Self {
        let n = rows.len();
        assert!(rows.iter().all(|r| r.len() == n), "matrix must be square");
        Self { rows }
    }

    pub fn dim(&self) -> usize {
        self.rows.len()
    }

    pub fn rows(&self) -> &[Vec<E>] {
        &self.rows
    }

    pub fn into_rows(self) -> Vec<Vec<E>> {
        self.rows
    }

    pub fn get(&self, i: usize, j: usize) -> &E {
        &self.rows[i][j]
    }

    pub fn row(&self, i: usize) -> &[E] {
        &self.rows[i]
    }

    pub fn column(&self, j: usize) -> Vec<E> {
        self.rows.iter().map(|r| r[j].clone()).collect()
    }

    pub fn map<F, T: Clone>(&self, f: F) -> Matrix<T>
    where
        F: Fn(&E) -> T,
    {
        Matrix {
            rows: self
                .rows
                .iter()
                .map(|r| r.iter().map(&f).collect())
                .collect(),
        }
    }
}

impl<E: Clone + PartialEq + std::fmt::Debug> Matrix<E> {
    pub fn identity<R: Ring<Elem = E>>(ring: &R, n: usize) -> Self {
        let rows = (0..n)
            .map(|i| {
                (0..n)
                    .map(|j| if i == j { ring.one() } else { ring.zero() })
                    .collect()
            })
            .collect();
        Self { rows }
    }

    pub fn zero<R: Ring<Elem = E>>(ring: &R, n: usize) -> Self {
        Self {
            rows: vec![vec![ring.zero(); n]; n],
        }
    }

    pub fn mul<R: Ring<Elem = E>>(&self, ring: &R, other: &Self) -> Self {
        let n = self.dim();
        let mut rows = vec![vec![ring.zero(); n]; n];
        for (i, out_row) in rows.iter_mut().enumerate() {
            for l in 0..n {
                let a = &self.rows[i][l];
                if ring.is_zero(a) {
                    continue;
                }
                for (j, out) in out_row.iter_mut().enumerate() {
                    *out = ring.add(out, &ring.mul(a, &other.rows[l][j]));
                }
            }
        }
        Self { rows }
    }

    pub fn add<R: Ring<Elem = E>>(&self, ring: &R, other: &Self) -> Self {
        Self {
            rows: self
                .rows
                .iter()
                .zip(&other.rows)
                .map(|(a, b)| a.iter().zip(b).map(|(x, y)| ring.add(x, y)).collect())
                .collect(),
        }
    }

    pub fn scale<R: Ring<Elem = E>>(&self, ring: &R, c: &E) -> Self {
        self.map(|x| ring.mul(c, x))
    }

    /// Row vector times matrix.
    pub fn left_mul_vec<R: Ring<Elem = E>>(&self, ring: &R, v: &[E]) -> Vec<E> {
        let n = self.dim();
        let mut out = vec![ring.zero(); n];
        for (vi, row) in v.iter().zip(&self.rows) {
            if ring.is_zero(vi) {
                continue;
            }
            for (o, x) in out.iter_mut().zip(row) {
                *o = ring.add(o, &ring.mul(vi, x));
            }
        }
        out
    }

    /// Binary exponentiation.
    pub fn pow<R: Ring<Elem = E>>(&self, ring: &R, mut exp: u64) -> Self {
        let mut acc = Self::identity(ring, self.dim());
        let mut base = self.clone();
        while exp > 0 {
            if exp & 1 == 1 {
                acc = acc.mul(ring, &base);
            }
            exp >>= 1;
            if exp > 0 {
                base = base.mul(ring, &base);
            }
        }
        acc
    }

    pub fn trace<R: Ring<Elem = E>>(&self, ring: &R) -> E {
        (0..self.dim()).fold(ring.zero(), |acc, i| ring.add(&acc, &self.rows[i][i]))
    }

    pub fn is_identity<R: Ring<Elem = E>>(&self, ring: &R) -> bool {
        *self == Self::identity(ring, self.dim())
    }

    /// Determinant by Gaussian elimination; `ring` must be a field.
    pub fn det_field<R: Ring<Elem = E>>(&self, ring: &R) -> E {
        let n = self.dim();
        let mut m = self.rows.clone();
        let mut det = ring.one();
        for col in 0..n {
            let Some(pivot) = (col..n).find(|&r| !ring.is_zero(&m[r][col])) else {
                return ring.zero();
            };
            if pivot != col {
                m.swap(pivot, col);
                det = ring.neg(&det);
            }
            det = ring.mul(&det, &m[col][col]);
            let inv = ring.inv(&m[col][col]).expect("nonzero pivot in a field");
            for r in col + 1..n {
                if ring.is_zero(&m[r][col]) {
                    continue;
                }
                let factor = ring.mul(&m[r][col], &inv);
                for c in col..n {
                    let sub = ring.mul(&factor, &m[col][c]);
                    m[r][c] = ring.sub(&m[r][c], &sub);
                }
            }
        }
        det
    }

    /// Rank over a field.
    pub fn rank_field<R: Ring<Elem = E>>(&self, ring: &R) -> usize {
        let n = self.dim();
        let mut m = self.rows.clone();
        let mut rank = 0;
        for col in 0..n {
            let Some(pivot) = (rank..n).find(|&r| !ring.is_zero(&m[r][col])) else {
                continue;
            };
            m.swap(pivot, rank);
            let inv = ring.inv(&m[rank][col]).expect("nonzero pivot in a field");
            for r in 0..n {
                if r == rank || ring.is_zero(&m[r][col]) {
                    continue;
                }
                let factor = ring.mul(&m[r][col], &inv);
                for c in col..n {
                    let sub = ring.mul(&factor, &m[rank][c]);
                    m[r][c] = ring.sub(&m[r][c], &sub);
                }
            }
            rank += 1;
        }
        rank
    }

    /// Inverse over a field, `None` if singular.
    pub fn inverse_field<R: Ring<Elem = E>>(&self, ring: &R) -> Option<Self> {
        let n = self.dim();
        let mut m = self.rows.clone();
        let mut inv = Self::identity(ring, n).rows;
        for col in 0..n {
            let pivot = (col..n).find(|&r| !ring.is_zero(&m[r][col]))?;
            m.swap(pivot, col);
            inv.swap(pivot, col);
            let p = ring.inv(&m[col][col])?;
            for c in 0..n {
                m[col][c] = ring.mul(&m[col][c], &p);
                inv[col][c] = ring.mul(&inv[col][c], &p);
            }
            for r in 0..n {
                if r == col || ring.is_zero(&m[r][col]) {
                    continue;
                }
                let factor = m[r][col].clone();
                for c in 0..n {
                    let a = ring.mul(&factor, &m[col][c]);
                    m[r][c] = ring.sub(&m[r][c], &a);
                    let b = ring.mul(&factor, &inv[col][c]);
                    inv[r][c] = ring.sub(&inv[r][c], &b);
                }
            }
        }
        Some(Self { rows: inv })
    }
}

/// Fraction-free (Bareiss) determinant over the integers.
pub fn det_bareiss(rows: &[Vec<BigInt>]) -> BigInt {
    let n = rows.len();
    if n == 0 {
        return BigInt::one();
    }
    let mut m = rows.to_vec();
    let mut sign = BigInt::one();
    let mut prev = BigInt::one();
    for k in 0..n - 1 {
        if m[k][k].is_zero() {
            let Some(swap) = (k + 1..n).find(|&r| !m[r][k].is_zero()) else {
                return BigInt::zero();
            };
            m.swap(k, swap);
            sign = -sign;
        }
        for i in k + 1..n {
            for j in k + 1..n {
                let v = &m[i][j] * &m[k][k] - &m[i][k] * &m[k][j];
                m[i][j] = v / &prev;
            }
        }
        prev = m[k][k].clone();
    }
    sign * &m[n - 1][n - 1]
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::{Integers, PrimeField, Rationals};
    use num_rational::BigRational;

    fn int_matrix(rows: &[&[i64]]) -> Matrix<BigInt> {
        Matrix::from_rows(
            rows.iter()
                .map(|r| r.iter().map(|&x| BigInt::from(x)).collect())
                .collect(),
        )
    }

    #[test]
    fn bareiss_matches_rational_elimination() {
        let m = int_matrix(&[&[2, -1, 0, 3], &[1, 4, 2, -2], &[0, 0, 5, 1], &[7, 1, -3, 0]]);
        let q = m.map(|x| BigRational::from_integer(x.clone()));
        let d = det_bareiss(m.rows());
        assert_eq!(BigRational::from_integer(d), q.det_field(&Rationals));
    }

    #[test]
    fn bareiss_needs_pivot_swap() {
        let m = int_matrix(&[&[0, 1], &[1, 0]]);
        assert_eq!(det_bareiss(m.rows()), BigInt::from(-1));
    }

    #[test]
    fn pow_agrees_with_repeated_multiplication() {
        let m = int_matrix(&[&[0, 1], &[1, 1]]);
        let mut acc = Matrix::identity(&Integers, 2);
        for e in 0..20u64 {
            assert_eq!(m.pow(&Integers, e), acc);
            acc = acc.mul(&Integers, &m);
        }
    }

    #[test]
    fn rank_and_inverse_mod_p() {
        let f = PrimeField::new(3).unwrap();
        let m = Matrix::from_rows(vec![vec![1, 2, 0], vec![2, 1, 0], vec![0, 0, 1]]);
        assert_eq!(m.rank_field(&f), 2);
        assert!(m.inverse_field(&f).is_none());
        let a = Matrix::from_rows(vec![vec![0, 1, 0], vec![0, 0, 1], vec![1, 2, 0]]);
        let inv = a.inverse_field(&f).unwrap();
        assert!(a.mul(&f, &inv).is_identity(&f));
    }
}
