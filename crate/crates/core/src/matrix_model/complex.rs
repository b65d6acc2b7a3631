use num_complex::Complex64;

use crate::error::{arg_err, Result};

/// Dense square complex matrix, row-major.
#[derive(Debug, Clone, PartialEq)]
pub struct ComplexMatrix {
    n: usize,
    data: Vec<Complex64>,
}

impl ComplexMatrix {
    pub fn zeros(n: usize) -> Self {
        ComplexMatrix { n, data: vec![Complex64::new(0.0, 0.0); n * n] }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n);
        for i in 0..n {
            m.data[i * n + i] = Complex64::new(1.0, 0.0);
        }
        m
    }

    pub fn from_fn(n: usize, f: impl Fn(usize, usize) -> Complex64) -> Self {
        let mut data = Vec::with_capacity(n * n);
        for i in 0..n {
            for j in 0..n {
                data.push(f(i, j));
            }
        }
        ComplexMatrix { n, data }
    }

    pub fn from_rows(rows: Vec<Vec<Complex64>>) -> Result<Self> {
        let n = rows.len();
        if rows.iter().any(|r| r.len() != n) {
            return arg_err("rows must form a square matrix");
        }
        Ok(ComplexMatrix { n, data: rows.into_iter().flatten().collect() })
    }

    pub fn dim(&self) -> usize {
        self.n
    }

    pub fn get(&self, i: usize, j: usize) -> Complex64 {
        self.data[i * self.n + j]
    }

    pub fn set(&mut self, i: usize, j: usize, v: Complex64) {
        self.data[i * self.n + j] = v;
    }

    pub fn matmul(&self, other: &ComplexMatrix) -> Result<ComplexMatrix> {
        self.same_dim(other)?;
        let n = self.n;
        let mut out = Self::zeros(n);
        for i in 0..n {
            let row = &mut out.data[i * n..(i + 1) * n];
            for k in 0..n {
                let a = self.data[i * n + k];
                if a == Complex64::new(0.0, 0.0) {
                    continue;
                }
                for (o, b) in row.iter_mut().zip(&other.data[k * n..(k + 1) * n]) {
                    *o += a * b;
                }
            }
        }
        Ok(out)
    }

    /// `self ⊗ other`, indexed by `(i₁ n₂ + i₂, j₁ n₂ + j₂)`.
    pub fn kron(&self, other: &ComplexMatrix) -> ComplexMatrix {
        let (n1, n2) = (self.n, other.n);
        ComplexMatrix::from_fn(n1 * n2, |r, c| self.get(r / n2, c / n2) * other.get(r % n2, c % n2))
    }

    pub fn add(&self, other: &ComplexMatrix) -> Result<ComplexMatrix> {
        self.same_dim(other)?;
        Ok(ComplexMatrix { n: self.n, data: self.data.iter().zip(&other.data).map(|(a, b)| a + b).collect() })
    }

    pub fn scale(&self, s: Complex64) -> ComplexMatrix {
        ComplexMatrix { n: self.n, data: self.data.iter().map(|a| a * s).collect() }
    }

    /// `self + s I`.
    pub fn shift(&self, s: f64) -> ComplexMatrix {
        let mut out = self.clone();
        for i in 0..self.n {
            out.data[i * self.n + i] += s;
        }
        out
    }

    /// Entrywise complex conjugate.
    pub fn conj(&self) -> ComplexMatrix {
        ComplexMatrix { n: self.n, data: self.data.iter().map(|a| a.conj()).collect() }
    }

    pub fn adjoint(&self) -> ComplexMatrix {
        ComplexMatrix::from_fn(self.n, |i, j| self.get(j, i).conj())
    }

    pub fn trace(&self) -> Complex64 {
        (0..self.n).map(|i| self.data[i * self.n + i]).sum()
    }

    /// `Tr / n`.
    pub fn normalized_trace(&self) -> Complex64 {
        self.trace() / self.n as f64
    }

    /// Normalized trace of `self · other` without forming the product.
    pub fn normalized_trace_of_product(&self, other: &ComplexMatrix) -> Result<Complex64> {
        self.same_dim(other)?;
        let n = self.n;
        let mut acc = Complex64::new(0.0, 0.0);
        for i in 0..n {
            for j in 0..n {
                acc += self.data[i * n + j] * other.data[j * n + i];
            }
        }
        Ok(acc / n as f64)
    }

    /// Equal to its adjoint bit for bit.
    pub fn is_hermitian(&self) -> bool {
        (0..self.n).all(|i| (0..self.n).all(|j| self.get(i, j) == self.get(j, i).conj()))
    }

    pub fn max_abs_diff(&self, other: &ComplexMatrix) -> f64 {
        self.data.iter().zip(&other.data).map(|(a, b)| (a - b).norm()).fold(0.0, f64::max)
    }

    fn same_dim(&self, other: &ComplexMatrix) -> Result<()> {
        if self.n != other.n {
            return arg_err(format!("dimension mismatch: {} vs {}", self.n, other.n));
        }
        Ok(())
    }
}
