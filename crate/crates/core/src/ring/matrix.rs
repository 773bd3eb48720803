use num_complex::Complex64;

use super::Ring;

/// Dense square matrix over a scalar ring, row-major.
#[derive(Clone, Debug, PartialEq)]
pub struct Matrix<S> {
    n: usize,
    data: Vec<S>,
}

impl<S: Ring> Matrix<S> {
    pub fn from_rows(rows: Vec<Vec<S>>) -> Self {
        let n = rows.len();
        assert!(n > 0, "empty matrix");
        assert!(rows.iter().all(|r| r.len() == n), "matrix must be square");
        Matrix {
            n,
            data: rows.into_iter().flatten().collect(),
        }
    }

    pub fn from_vec(n: usize, data: Vec<S>) -> Self {
        assert!(n > 0 && data.len() == n * n, "need n*n entries");
        Matrix { n, data }
    }

    pub fn identity(n: usize, proto: &S) -> Self {
        let mut data = vec![proto.zero_like(); n * n];
        for i in 0..n {
            data[i * n + i] = proto.one_like();
        }
        Matrix { n, data }
    }

    pub fn scalar(n: usize, s: S) -> Self {
        let mut data = vec![s.zero_like(); n * n];
        for i in 0..n {
            data[i * n + i] = s.clone();
        }
        Matrix { n, data }
    }

    pub fn diagonal(entries: Vec<S>) -> Self {
        let n = entries.len();
        let mut m = Self::scalar(n, entries[0].zero_like());
        for (i, e) in entries.into_iter().enumerate() {
            m.data[i * n + i] = e;
        }
        m
    }

    pub fn dim(&self) -> usize {
        self.n
    }

    pub fn get(&self, i: usize, j: usize) -> &S {
        &self.data[i * self.n + j]
    }

    pub fn set(&mut self, i: usize, j: usize, v: S) {
        self.data[i * self.n + j] = v;
    }

    pub fn entries(&self) -> &[S] {
        &self.data
    }

    pub fn map<T: Ring>(&self, f: impl Fn(&S) -> T) -> Matrix<T> {
        Matrix {
            n: self.n,
            data: self.data.iter().map(f).collect(),
        }
    }

    fn zip(&self, rhs: &Self, f: impl Fn(&S, &S) -> S) -> Self {
        assert_eq!(self.n, rhs.n, "dimension mismatch");
        Matrix {
            n: self.n,
            data: self.data.iter().zip(&rhs.data).map(|(a, b)| f(a, b)).collect(),
        }
    }

    /// Gauss–Jordan elimination. The pivot is the largest invertible entry in
    /// the column, so integer matrices invert only when unit pivots exist.
    fn gauss_jordan_inverse(&self) -> Option<Self> {
        let n = self.n;
        let mut a = self.data.clone();
        let mut inv = Self::identity(n, &self.data[0]).data;
        for col in 0..n {
            let pivot_row = (col..n)
                .filter_map(|r| {
                    let e = &a[r * n + col];
                    e.try_invert().map(|_| (r, e.norm()))
                })
                .max_by(|x, y| x.1.total_cmp(&y.1))?
                .0;
            if pivot_row != col {
                for j in 0..n {
                    a.swap(col * n + j, pivot_row * n + j);
                    inv.swap(col * n + j, pivot_row * n + j);
                }
            }
            let p_inv = a[col * n + col].try_invert()?;
            for j in 0..n {
                a[col * n + j] = p_inv.mul(&a[col * n + j]);
                inv[col * n + j] = p_inv.mul(&inv[col * n + j]);
            }
            for r in 0..n {
                if r == col {
                    continue;
                }
                let factor = a[r * n + col].clone();
                if factor.is_zero() {
                    continue;
                }
                for j in 0..n {
                    let t = factor.mul(&a[col * n + j]);
                    a[r * n + j] = a[r * n + j].sub(&t);
                    let t = factor.mul(&inv[col * n + j]);
                    inv[r * n + j] = inv[r * n + j].sub(&t);
                }
            }
        }
        Some(Matrix { n, data: inv })
    }
}

impl<S: Ring> Ring for Matrix<S> {
    fn zero_like(&self) -> Self {
        Matrix {
            n: self.n,
            data: vec![self.data[0].zero_like(); self.n * self.n],
        }
    }
    fn one_like(&self) -> Self {
        Self::identity(self.n, &self.data[0])
    }
    fn add(&self, rhs: &Self) -> Self {
        self.zip(rhs, |a, b| a.add(b))
    }
    fn neg(&self) -> Self {
        self.map(|a| a.neg())
    }
    fn sub(&self, rhs: &Self) -> Self {
        self.zip(rhs, |a, b| a.sub(b))
    }
    fn mul(&self, rhs: &Self) -> Self {
        assert_eq!(self.n, rhs.n, "dimension mismatch");
        let n = self.n;
        let mut data = Vec::with_capacity(n * n);
        for i in 0..n {
            for j in 0..n {
                let mut acc = self.data[0].zero_like();
                for k in 0..n {
                    acc = acc.add(&self.data[i * n + k].mul(&rhs.data[k * n + j]));
                }
                data.push(acc);
            }
        }
        Matrix { n, data }
    }
    fn from_int(&self, k: i64) -> Self {
        Self::scalar(self.n, self.data[0].from_int(k))
    }
    fn from_bigint(&self, k: &num_bigint::BigInt) -> Self {
        Self::scalar(self.n, self.data[0].from_bigint(k))
    }
    fn from_ratio(&self, r: &num_rational::BigRational) -> Option<Self> {
        Some(Self::scalar(self.n, self.data[0].from_ratio(r)?))
    }
    fn half(&self) -> Option<Self> {
        Some(Self::scalar(self.n, self.data[0].half()?))
    }
    fn try_invert(&self) -> Option<Self> {
        self.gauss_jordan_inverse()
    }
    /// Maximum absolute row sum; submultiplicative, so it is its own companion.
    fn norm(&self) -> f64 {
        (0..self.n)
            .map(|i| (0..self.n).map(|j| self.get(i, j).norm()).sum::<f64>())
            .fold(0.0, f64::max)
    }
    fn is_exact(&self) -> bool {
        self.data[0].is_exact()
    }
    fn is_zero(&self) -> bool {
        self.data.iter().all(|e| e.is_zero())
    }
    fn embed_complex(&self, c: Complex64) -> Option<Self> {
        Some(Self::scalar(self.n, self.data[0].embed_complex(c)?))
    }
    fn from_diagonal(&self, d: &[Complex64]) -> Option<Self> {
        if d.len() != self.n {
            return None;
        }
        let entries = d
            .iter()
            .map(|c| self.data[0].embed_complex(*c))
            .collect::<Option<Vec<_>>>()?;
        Some(Self::diagonal(entries))
    }
    fn simplest_within(&self, eps: f64) -> Option<Self> {
        let data = self
            .data
            .iter()
            .map(|e| e.simplest_within(eps))
            .collect::<Option<Vec<_>>>()?;
        Some(Matrix { n: self.n, data })
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_bigint::BigInt;
    use num_rational::BigRational;

    fn qm(rows: &[&[i64]]) -> Matrix<BigRational> {
        Matrix::from_rows(
            rows.iter()
                .map(|r| r.iter().map(|&v| BigRational::from_integer(v.into())).collect())
                .collect(),
        )
    }

    #[test]
    fn rational_inverse_roundtrip() {
        let m = qm(&[&[2, 1, 0], &[1, 3, 1], &[0, 1, 4]]);
        let inv = m.try_invert().unwrap();
        assert!(m.mul(&inv).sub(&m.one_like()).is_zero());
        assert!(inv.mul(&m).sub(&m.one_like()).is_zero());
    }

    #[test]
    fn singular_has_no_inverse() {
        let m = qm(&[&[1, 2], &[2, 4]]);
        assert!(m.try_invert().is_none());
    }

    #[test]
    fn unimodular_integer_inverse() {
        let m = Matrix::from_rows(vec![
            vec![BigInt::from(1), BigInt::from(3)],
            vec![BigInt::from(0), BigInt::from(1)],
        ]);
        let inv = m.try_invert().unwrap();
        assert_eq!(*inv.get(0, 1), BigInt::from(-3));
        assert!(m.half().is_none());
    }

    #[test]
    fn row_sum_norm() {
        let m = qm(&[&[1, -2], &[-3, 0]]);
        assert_eq!(m.norm(), 3.0);
        assert_eq!(m.zero_like().norm(), 0.0);
    }

    #[test]
    fn complex_inverse() {
        let c = |r: f64| Complex64::new(r, 0.0);
        let m = Matrix::from_rows(vec![vec![c(3.0), c(1.0)], vec![c(0.0), c(-2.0)]]);
        let inv = m.try_invert().unwrap();
        assert!(m.mul(&inv).dist(&m.one_like()) < 1e-15);
    }
}
