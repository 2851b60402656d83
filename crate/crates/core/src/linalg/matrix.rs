use std::fmt;

use super::scalar::GaussRational;
use super::subspace::Subspace;

/// A dense matrix over ℚ(i), stored row-major.
///
/// Matrices of linear maps act on column vectors: a map from an `m`-dimensional space to an
/// `n`-dimensional one is an `n × m` matrix whose column `j` is the image of basis vector `j`.
#[derive(Clone, PartialEq, Eq)]
pub struct ExactMatrix {
    rows: usize,
    cols: usize,
    data: Vec<GaussRational>,
}

/// Result of row reduction.
#[derive(Clone, Debug)]
pub struct Rref {
    pub matrix: ExactMatrix,
    pub rank: usize,
    /// Pivot column of each nonzero row, strictly increasing.
    pub pivots: Vec<usize>,
}

impl ExactMatrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        ExactMatrix { rows, cols, data: vec![GaussRational::zero(); rows * cols] }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = ExactMatrix::zeros(n, n);
        for i in 0..n {
            m.set(i, i, GaussRational::one());
        }
        m
    }

    /// Builds a matrix from rows; all rows must have length `cols`.
    pub fn from_rows(cols: usize, rows: Vec<Vec<GaussRational>>) -> Self {
        let n = rows.len();
        let mut data = Vec::with_capacity(n * cols);
        for row in rows {
            assert_eq!(row.len(), cols, "ragged row");
            data.extend(row);
        }
        ExactMatrix { rows: n, cols, data }
    }

    /// Builds a matrix from columns, each of length `rows`.
    pub fn from_columns(rows: usize, columns: &[Vec<GaussRational>]) -> Self {
        let mut m = ExactMatrix::zeros(rows, columns.len());
        for (j, col) in columns.iter().enumerate() {
            assert_eq!(col.len(), rows, "ragged column");
            for (i, x) in col.iter().enumerate() {
                if !x.is_zero() {
                    m.set(i, j, x.clone());
                }
            }
        }
        m
    }

    /// Convenience constructor from small integer entries.
    pub fn from_i64(rows: &[&[i64]]) -> Self {
        let cols = rows.first().map_or(0, |r| r.len());
        ExactMatrix::from_rows(
            cols,
            rows.iter().map(|r| r.iter().map(|&x| GaussRational::from_integer(x)).collect()).collect(),
        )
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn get(&self, i: usize, j: usize) -> &GaussRational {
        &self.data[i * self.cols + j]
    }

    pub fn set(&mut self, i: usize, j: usize, x: GaussRational) {
        self.data[i * self.cols + j] = x;
    }

    pub fn row(&self, i: usize) -> &[GaussRational] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    pub fn row_vecs(&self) -> Vec<Vec<GaussRational>> {
        (0..self.rows).map(|i| self.row(i).to_vec()).collect()
    }

    pub fn column(&self, j: usize) -> Vec<GaussRational> {
        (0..self.rows).map(|i| self.get(i, j).clone()).collect()
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(GaussRational::is_zero)
    }

    pub fn transpose(&self) -> ExactMatrix {
        let mut t = ExactMatrix::zeros(self.cols, self.rows);
        for i in 0..self.rows {
            for j in 0..self.cols {
                let x = self.get(i, j);
                if !x.is_zero() {
                    t.set(j, i, x.clone());
                }
            }
        }
        t
    }

    pub fn mul(&self, rhs: &ExactMatrix) -> ExactMatrix {
        assert_eq!(self.cols, rhs.rows, "dimension mismatch in product");
        let mut out = ExactMatrix::zeros(self.rows, rhs.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self.get(i, k);
                if a.is_zero() {
                    continue;
                }
                for j in 0..rhs.cols {
                    let b = rhs.get(k, j);
                    if !b.is_zero() {
                        let idx = i * out.cols + j;
                        out.data[idx] += &(a * b);
                    }
                }
            }
        }
        out
    }

    pub fn mul_vec(&self, v: &[GaussRational]) -> Vec<GaussRational> {
        assert_eq!(self.cols, v.len(), "dimension mismatch in matrix-vector product");
        let support: Vec<usize> = (0..v.len()).filter(|&j| !v[j].is_zero()).collect();
        (0..self.rows)
            .map(|i| {
                let row = self.row(i);
                let mut acc = GaussRational::zero();
                for &j in &support {
                    if !row[j].is_zero() {
                        acc += &(&row[j] * &v[j]);
                    }
                }
                acc
            })
            .collect()
    }

    pub fn add(&self, rhs: &ExactMatrix) -> ExactMatrix {
        assert_eq!((self.rows, self.cols), (rhs.rows, rhs.cols), "dimension mismatch in sum");
        ExactMatrix {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().zip(&rhs.data).map(|(a, b)| a + b).collect(),
        }
    }

    /// Stacks `self` on top of `other`.
    pub fn vstack(&self, other: &ExactMatrix) -> ExactMatrix {
        assert_eq!(self.cols, other.cols, "dimension mismatch in vstack");
        let mut data = self.data.clone();
        data.extend(other.data.iter().cloned());
        ExactMatrix { rows: self.rows + other.rows, cols: self.cols, data }
    }

    /// The submatrix on the given rows and columns, in the given order.
    pub fn select(&self, rows: &[usize], cols: &[usize]) -> ExactMatrix {
        let mut m = ExactMatrix::zeros(rows.len(), cols.len());
        for (a, &i) in rows.iter().enumerate() {
            for (b, &j) in cols.iter().enumerate() {
                let x = self.get(i, j);
                if !x.is_zero() {
                    m.set(a, b, x.clone());
                }
            }
        }
        m
    }

    /// Reduced row-echelon form by Gauss-Jordan elimination, exact throughout.
    pub fn rref(&self) -> Rref {
        let mut m = self.clone();
        let cols = m.cols;
        let mut pivots = Vec::new();
        let mut r = 0;
        for c in 0..cols {
            if r == m.rows {
                break;
            }
            let Some(p) = (r..m.rows).find(|&i| !m.get(i, c).is_zero()) else {
                continue;
            };
            m.swap_rows(r, p);
            let inv = m.get(r, c).inv();
            if !inv.is_one() {
                for j in c..cols {
                    let idx = r * cols + j;
                    if !m.data[idx].is_zero() {
                        m.data[idx] = &m.data[idx] * &inv;
                    }
                }
            }
            let support: Vec<usize> = (c..cols).filter(|&j| !m.get(r, j).is_zero()).collect();
            for i in 0..m.rows {
                if i == r {
                    continue;
                }
                let f = m.get(i, c).clone();
                if f.is_zero() {
                    continue;
                }
                for &j in &support {
                    let delta = &f * m.get(r, j);
                    m.data[i * cols + j] -= &delta;
                }
            }
            pivots.push(c);
            r += 1;
        }
        Rref { rank: r, pivots, matrix: m }
    }

    pub fn rank(&self) -> usize {
        self.rref().rank
    }

    /// The subspace `{x : self · x = 0}` of the column space.
    pub fn kernel_basis(&self) -> Subspace {
        let Rref { matrix: r, rank, pivots } = self.rref();
        let mut is_pivot = vec![false; self.cols];
        for &p in &pivots {
            is_pivot[p] = true;
        }
        let mut basis = Vec::with_capacity(self.cols - rank);
        for f in (0..self.cols).filter(|&j| !is_pivot[j]) {
            let mut v = vec![GaussRational::zero(); self.cols];
            v[f] = GaussRational::one();
            for (i, &p) in pivots.iter().enumerate() {
                let x = r.get(i, f);
                if !x.is_zero() {
                    v[p] = -x;
                }
            }
            basis.push(v);
        }
        Subspace::from_vectors(self.cols, basis)
    }

    /// Inverse of a square matrix, or `None` if singular.
    pub fn inverse(&self) -> Option<ExactMatrix> {
        assert_eq!(self.rows, self.cols, "inverse of a non-square matrix");
        let n = self.rows;
        if n == 0 {
            return Some(ExactMatrix::zeros(0, 0));
        }
        let mut aug = ExactMatrix::zeros(n, 2 * n);
        for i in 0..n {
            for j in 0..n {
                aug.set(i, j, self.get(i, j).clone());
            }
            aug.set(i, n + i, GaussRational::one());
        }
        let r = aug.rref();
        if r.pivots.len() < n || r.pivots[n - 1] >= n {
            return None;
        }
        let rows: Vec<usize> = (0..n).collect();
        let cols: Vec<usize> = (n..2 * n).collect();
        Some(r.matrix.select(&rows, &cols))
    }

    /// The column space, as a subspace of the target.
    pub fn image(&self) -> Subspace {
        Subspace::from_vectors(self.rows, (0..self.cols).map(|j| self.column(j)).collect())
    }

    fn swap_rows(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        for j in 0..self.cols {
            self.data.swap(a * self.cols + j, b * self.cols + j);
        }
    }
}

impl fmt::Debug for ExactMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "ExactMatrix {}x{} [", self.rows, self.cols)?;
        for i in 0..self.rows {
            let row: Vec<String> = self.row(i).iter().map(|x| x.to_string()).collect();
            writeln!(f, "  [{}]", row.join(", "))?;
        }
        write!(f, "]")
    }
}
