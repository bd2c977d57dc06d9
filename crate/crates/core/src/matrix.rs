//! Dense matrices over [`ExtendedReal`].
//!
//! A single [`TropicalMatrix`] type serves both semirings; each operation
//! names the semiring it works in. Storage is row-major.

use std::fmt;
use std::ops::Index;

use crate::error::{Error, Result};
use crate::opcount;
use crate::semiring::ExtendedReal;

#[derive(Clone, PartialEq, Eq)]
pub struct TropicalMatrix {
    rows: usize,
    cols: usize,
    data: Vec<ExtendedReal>,
}

impl TropicalMatrix {
    pub fn new(rows: usize, cols: usize, data: Vec<ExtendedReal>) -> Result<Self> {
        if rows == 0 || cols == 0 {
            return Err(Error::Dimensions {
                rows,
                cols,
                reason: "matrices need at least one row and one column".into(),
            });
        }
        if data.len() != rows * cols {
            return Err(Error::Dimensions {
                rows,
                cols,
                reason: format!("expected {} entries, got {}", rows * cols, data.len()),
            });
        }
        Ok(Self { rows, cols, data })
    }

    /// Builds a matrix from row slices of `f64`; IEEE infinities map to ±∞.
    pub fn from_rows<R: AsRef<[f64]>>(rows: &[R]) -> Result<Self> {
        let nrows = rows.len();
        let ncols = rows.first().map_or(0, |r| r.as_ref().len());
        let mut data = Vec::with_capacity(nrows * ncols);
        for (i, row) in rows.iter().enumerate() {
            let row = row.as_ref();
            if row.len() != ncols {
                return Err(Error::Dimensions {
                    rows: nrows,
                    cols: ncols,
                    reason: format!("row {i} has {} entries", row.len()),
                });
            }
            for &v in row {
                data.push(ExtendedReal::new(v)?);
            }
        }
        Self::new(nrows, ncols, data)
    }

    pub fn filled(rows: usize, cols: usize, value: ExtendedReal) -> Self {
        assert!(rows > 0 && cols > 0, "empty matrix");
        Self {
            rows,
            cols,
            data: vec![value; rows * cols],
        }
    }

    pub fn from_fn(
        rows: usize,
        cols: usize,
        mut f: impl FnMut(usize, usize) -> ExtendedReal,
    ) -> Self {
        assert!(rows > 0 && cols > 0, "empty matrix");
        let mut data = Vec::with_capacity(rows * cols);
        for i in 0..rows {
            for j in 0..cols {
                data.push(f(i, j));
            }
        }
        Self { rows, cols, data }
    }

    /// Max-plus unit matrix: 0 on the diagonal, -∞ elsewhere.
    pub fn unit(n: usize) -> Self {
        Self::from_fn(n, n, |i, j| {
            if i == j {
                ExtendedReal::ZERO
            } else {
                ExtendedReal::NEG_INF
            }
        })
    }

    /// Min-plus unit matrix: 0 on the diagonal, +∞ elsewhere.
    pub fn min_plus_unit(n: usize) -> Self {
        Self::from_fn(n, n, |i, j| {
            if i == j {
                ExtendedReal::ZERO
            } else {
                ExtendedReal::POS_INF
            }
        })
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn shape(&self) -> (usize, usize) {
        (self.rows, self.cols)
    }

    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }

    pub fn get(&self, i: usize, j: usize) -> ExtendedReal {
        self.data[i * self.cols + j]
    }

    pub fn set(&mut self, i: usize, j: usize, v: ExtendedReal) {
        self.data[i * self.cols + j] = v;
    }

    pub fn row(&self, i: usize) -> &[ExtendedReal] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    /// Entries in row-major order.
    pub fn as_slice(&self) -> &[ExtendedReal] {
        &self.data
    }

    pub fn iter(&self) -> impl Iterator<Item = ExtendedReal> + '_ {
        self.data.iter().copied()
    }

    /// `(row, col, value)` triples in row-major order.
    pub fn indexed(&self) -> impl Iterator<Item = (usize, usize, ExtendedReal)> + '_ {
        let cols = self.cols;
        self.data
            .iter()
            .enumerate()
            .map(move |(k, &v)| (k / cols, k % cols, v))
    }

    pub fn map(&self, f: impl Fn(ExtendedReal) -> ExtendedReal) -> Self {
        Self {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().map(|&v| f(v)).collect(),
        }
    }

    /// True when every entry is an infinity or an integer-valued real.
    pub fn is_integral(&self) -> bool {
        self.data.iter().all(|v| v.is_integral())
    }

    pub fn transpose(&self) -> Self {
        Self::from_fn(self.cols, self.rows, |i, j| self.get(j, i))
    }

    /// A♯ = -Aᵀ: transpose and negate, swapping the infinities.
    pub fn conjugate(&self) -> Self {
        Self::from_fn(self.cols, self.rows, |i, j| self.get(j, i).conjugate())
    }

    pub fn max_plus_matmul(&self, other: &Self) -> Result<Self> {
        self.matmul_with(
            other,
            "max-plus product",
            ExtendedReal::NEG_INF,
            |acc, a, b| acc.max_plus_add(a.max_plus_mul(b)),
        )
    }

    pub fn min_plus_matmul(&self, other: &Self) -> Result<Self> {
        self.matmul_with(
            other,
            "min-plus product",
            ExtendedReal::POS_INF,
            |acc, a, b| acc.min_plus_add(a.min_plus_mul(b)),
        )
    }

    #[inline]
    fn matmul_with(
        &self,
        other: &Self,
        op: &'static str,
        zero: ExtendedReal,
        step: impl Fn(ExtendedReal, ExtendedReal, ExtendedReal) -> ExtendedReal,
    ) -> Result<Self> {
        if self.cols != other.rows {
            return Err(Error::shape(op, self.shape(), other.shape()));
        }
        let (n, inner, m) = (self.rows, self.cols, other.cols);
        let mut out = vec![zero; n * m];
        for i in 0..n {
            let acc = &mut out[i * m..(i + 1) * m];
            for (l, &a) in self.row(i).iter().enumerate() {
                let q = &other.data[l * m..(l + 1) * m];
                for (c, &b) in acc.iter_mut().zip(q) {
                    *c = step(*c, a, b);
                }
            }
        }
        opcount::add(n * inner * m);
        Ok(Self {
            rows: n,
            cols: m,
            data: out,
        })
    }

    /// Entrywise max.
    pub fn max_plus_add(&self, other: &Self) -> Result<Self> {
        let mut out = self.clone();
        out.max_assign(other)?;
        Ok(out)
    }

    /// Entrywise min.
    pub fn min_plus_add(&self, other: &Self) -> Result<Self> {
        let mut out = self.clone();
        out.min_assign(other)?;
        Ok(out)
    }

    /// In-place entrywise max.
    pub fn max_assign(&mut self, other: &Self) -> Result<()> {
        self.zip_assign(other, "max-plus sum", ExtendedReal::max_plus_add)
    }

    /// In-place entrywise min.
    pub fn min_assign(&mut self, other: &Self) -> Result<()> {
        self.zip_assign(other, "min-plus sum", ExtendedReal::min_plus_add)
    }

    fn zip_assign(
        &mut self,
        other: &Self,
        op: &'static str,
        f: impl Fn(ExtendedReal, ExtendedReal) -> ExtendedReal,
    ) -> Result<()> {
        if self.shape() != other.shape() {
            return Err(Error::shape(op, self.shape(), other.shape()));
        }
        for (a, &b) in self.data.iter_mut().zip(&other.data) {
            *a = f(*a, b);
        }
        opcount::add(self.data.len());
        Ok(())
    }

    /// Stacks the columns into one `(rows*cols) x 1` column vector.
    pub fn vec(&self) -> Self {
        let mut data = Vec::with_capacity(self.data.len());
        for j in 0..self.cols {
            for i in 0..self.rows {
                data.push(self.get(i, j));
            }
        }
        Self {
            rows: self.data.len(),
            cols: 1,
            data,
        }
    }

    /// Inverse of [`TropicalMatrix::vec`].
    pub fn unvec(v: &Self, rows: usize, cols: usize) -> Result<Self> {
        if v.cols != 1 || v.rows != rows * cols || rows == 0 || cols == 0 {
            return Err(Error::shape("unvec", v.shape(), (rows * cols, 1)));
        }
        Ok(Self::from_fn(rows, cols, |i, j| v.data[j * rows + i]))
    }

    /// Max-plus Kronecker product: block (i, j) is `self[i][j] ⊗ other`.
    pub fn kron_max(&self, other: &Self) -> Self {
        self.kron_with(other, ExtendedReal::max_plus_mul)
    }

    /// Min-plus Kronecker product: block (i, j) is `self[i][j] ⊗' other`.
    pub fn kron_min(&self, other: &Self) -> Self {
        self.kron_with(other, ExtendedReal::min_plus_mul)
    }

    fn kron_with(
        &self,
        other: &Self,
        mul: impl Fn(ExtendedReal, ExtendedReal) -> ExtendedReal,
    ) -> Self {
        let rows = self.rows * other.rows;
        let cols = self.cols * other.cols;
        let mut data = Vec::with_capacity(rows * cols);
        for i in 0..self.rows {
            for k in 0..other.rows {
                let inner = other.row(k);
                for &s in self.row(i) {
                    data.extend(inner.iter().map(|&v| mul(s, v)));
                }
            }
        }
        opcount::add(data.len());
        Self { rows, cols, data }
    }

    /// `self ⊕= left ⊠ right` without materializing the Kronecker product.
    pub(crate) fn max_assign_kron(&mut self, left: &Self, right: &Self) -> Result<()> {
        let shape = (left.rows * right.rows, left.cols * right.cols);
        if self.shape() != shape {
            return Err(Error::shape("Kronecker accumulate", self.shape(), shape));
        }
        let mut out = self.data.chunks_exact_mut(self.cols);
        for i in 0..left.rows {
            for k in 0..right.rows {
                let dst = out.next().expect("row count checked");
                let inner = right.row(k);
                for (block, &s) in dst.chunks_exact_mut(right.cols).zip(left.row(i)) {
                    for (d, &v) in block.iter_mut().zip(inner) {
                        *d = d.max_plus_add(s.max_plus_mul(v));
                    }
                }
            }
        }
        // one Kronecker entry plus one ⊕ per cell
        opcount::add(2 * self.data.len());
        Ok(())
    }

    /// Entrywise (product) order. Shapes must agree.
    pub fn le(&self, other: &Self) -> Result<bool> {
        if self.shape() != other.shape() {
            return Err(Error::shape("entrywise order", self.shape(), other.shape()));
        }
        Ok(self.data.iter().zip(&other.data).all(|(a, b)| a <= b))
    }
}

impl Index<(usize, usize)> for TropicalMatrix {
    type Output = ExtendedReal;

    fn index(&self, (i, j): (usize, usize)) -> &ExtendedReal {
        assert!(
            i < self.rows && j < self.cols,
            "index ({i}, {j}) out of bounds"
        );
        &self.data[i * self.cols + j]
    }
}

impl fmt::Debug for TropicalMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[")?;
        for i in 0..self.rows {
            if i > 0 {
                write!(f, "; ")?;
            }
            for (j, v) in self.row(i).iter().enumerate() {
                if j > 0 {
                    write!(f, " ")?;
                }
                write!(f, "{v}")?;
            }
        }
        write!(f, "]")
    }
}
