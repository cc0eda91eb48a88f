//! Dense real symmetric matrices, just big enough for desk-scale
//! eigensolves. Entries are written through [`SymMatrix::set_sym`] so the
//! matrix is symmetric by construction, never by rounding.

/// Dense row-major symmetric matrix.
#[derive(Debug, Clone, PartialEq)]
pub struct SymMatrix {
    order: usize,
    entries: Vec<f64>,
}

impl SymMatrix {
    pub fn zeros(order: usize) -> Self {
        assert!(order >= 1, "matrix order must be at least 1");
        SymMatrix {
            order,
            entries: vec![0.0; order * order],
        }
    }

    pub fn order(&self) -> usize {
        self.order
    }

    #[inline]
    pub fn get(&self, i: usize, j: usize) -> f64 {
        self.entries[i * self.order + j]
    }

    /// Sets a single entry; use for diagonal writes.
    #[inline]
    pub fn set(&mut self, i: usize, j: usize, v: f64) {
        self.entries[i * self.order + j] = v;
    }

    /// Sets `(i, j)` and `(j, i)` together.
    #[inline]
    pub fn set_sym(&mut self, i: usize, j: usize, v: f64) {
        self.entries[i * self.order + j] = v;
        self.entries[j * self.order + i] = v;
    }

    pub fn row_sum(&self, i: usize) -> f64 {
        self.entries[i * self.order..(i + 1) * self.order].iter().sum()
    }

    /// `y = M x`.
    pub fn mul_vec(&self, x: &[f64], y: &mut [f64]) {
        debug_assert_eq!(x.len(), self.order);
        debug_assert_eq!(y.len(), self.order);
        for (out, row) in y.iter_mut().zip(self.entries.chunks_exact(self.order)) {
            *out = row.iter().zip(x).map(|(a, b)| a * b).sum();
        }
    }

    /// `x^T M y`.
    pub fn bilinear(&self, x: &[f64], y: &[f64]) -> f64 {
        debug_assert_eq!(x.len(), self.order);
        debug_assert_eq!(y.len(), self.order);
        x.iter()
            .zip(self.entries.chunks_exact(self.order))
            .map(|(xi, row)| xi * row.iter().zip(y).map(|(a, b)| a * b).sum::<f64>())
            .sum()
    }

    pub fn frobenius_norm(&self) -> f64 {
        self.entries.iter().map(|v| v * v).sum::<f64>().sqrt()
    }

    pub fn off_diagonal_frobenius(&self) -> f64 {
        let mut sum = 0.0;
        for i in 0..self.order {
            for j in 0..self.order {
                if i != j {
                    let v = self.get(i, j);
                    sum += v * v;
                }
            }
        }
        sum.sqrt()
    }
}
