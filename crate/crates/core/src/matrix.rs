use crate::error::{Error, Result};
use crate::scalar::{canonical_zero, is_extended_weight, Weight};

/// Dense row-major `n x n` matrix of extended weights.
#[derive(Debug, Clone, PartialEq)]
pub struct WeightMatrix<T> {
    n: usize,
    data: Vec<T>,
}

impl<T: Weight> WeightMatrix<T> {
    /// Builds a matrix from row-major data, rejecting NaN and `-inf`.
    pub fn from_vec(n: usize, data: Vec<T>) -> Result<Self> {
        if n == 0 {
            return Err(Error::invalid("matrix dimension must be at least 1"));
        }
        if data.len() != n * n {
            return Err(Error::invalid(format!(
                "expected {} entries for a {n}x{n} matrix, got {}",
                n * n,
                data.len()
            )));
        }
        let mut data = data;
        for (k, x) in data.iter_mut().enumerate() {
            if !is_extended_weight(*x) {
                return Err(Error::invalid(format!(
                    "entry ({}, {}) is {x}; only finite values and +inf are allowed",
                    k / n,
                    k % n
                )));
            }
            *x = canonical_zero(*x);
        }
        Ok(WeightMatrix { n, data })
    }

    pub fn from_rows(rows: &[Vec<T>]) -> Result<Self> {
        let n = rows.len();
        if let Some(bad) = rows.iter().position(|r| r.len() != n) {
            return Err(Error::invalid(format!(
                "row {bad} has {} entries, expected {n}",
                rows[bad].len()
            )));
        }
        Self::from_vec(n, rows.concat())
    }

    pub fn filled(n: usize, value: T) -> Result<Self> {
        Self::from_vec(n, vec![value; n * n])
    }

    /// Tropical identity: zero diagonal, `+inf` elsewhere.
    pub fn tropical_identity(n: usize) -> Result<Self> {
        let mut m = Self::filled(n, T::infinity())?;
        for u in 0..n {
            m.data[u * n + u] = T::zero();
        }
        Ok(m)
    }

    #[inline]
    pub fn dim(&self) -> usize {
        self.n
    }

    #[inline]
    pub fn get(&self, row: usize, col: usize) -> T {
        self.data[row * self.n + col]
    }

    /// Sets one entry; the value must be an extended weight.
    pub fn set(&mut self, row: usize, col: usize, value: T) -> Result<()> {
        if !is_extended_weight(value) {
            return Err(Error::invalid(format!("{value} is not an extended weight")));
        }
        if row >= self.n || col >= self.n {
            return Err(Error::invalid(format!(
                "({row}, {col}) out of bounds for dimension {}",
                self.n
            )));
        }
        self.data[row * self.n + col] = canonical_zero(value);
        Ok(())
    }

    #[inline]
    pub fn row(&self, row: usize) -> &[T] {
        &self.data[row * self.n..(row + 1) * self.n]
    }

    pub fn rows(&self) -> impl Iterator<Item = &[T]> {
        self.data.chunks_exact(self.n)
    }

    pub fn as_slice(&self) -> &[T] {
        &self.data
    }

    pub fn transpose(&self) -> Self {
        let n = self.n;
        let mut data = Vec::with_capacity(n * n);
        for col in 0..n {
            data.extend((0..n).map(|row| self.data[row * n + col]));
        }
        WeightMatrix { n, data }
    }

    /// Sum of all finite entries, accumulated in `f64` in row-major order.
    pub fn finite_checksum(&self) -> f64 {
        self.data
            .iter()
            .filter(|x| x.is_finite())
            .map(|x| x.to_f64_lossless())
            .sum()
    }

    /// Largest absolute entrywise difference. Matching infinities count as 0,
    /// an infinity against a finite value counts as `+inf`.
    pub fn max_abs_diff(&self, other: &Self) -> f64 {
        assert_eq!(self.n, other.n, "dimension mismatch");
        self.data
            .iter()
            .zip(&other.data)
            .map(|(&a, &b)| {
                if a == b {
                    0.0
                } else {
                    (a.to_f64_lossless() - b.to_f64_lossless()).abs()
                }
            })
            .fold(0.0, f64::max)
    }

    /// Bitwise equality of every entry.
    pub fn bitwise_eq(&self, other: &Self) -> bool {
        self.n == other.n
            && self
                .data
                .iter()
                .zip(&other.data)
                .all(|(a, b)| a.to_f64_lossless().to_bits() == b.to_f64_lossless().to_bits())
    }

    pub(crate) fn from_raw(n: usize, data: Vec<T>) -> Self {
        debug_assert_eq!(data.len(), n * n);
        WeightMatrix { n, data }
    }

    pub(crate) fn data_mut(&mut self) -> &mut [T] {
        &mut self.data
    }
}
