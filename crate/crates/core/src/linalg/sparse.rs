use std::io::Write;

use crate::error::{Error, Result};
use crate::problem::C64;

/// Coordinate-format accumulator. Duplicate entries are summed when the
/// matrix is compressed.
#[derive(Debug, Clone, Default)]
pub struct TripletBuilder {
    nrows: usize,
    ncols: usize,
    entries: Vec<(usize, usize, C64)>,
}

impl TripletBuilder {
    pub fn new(nrows: usize, ncols: usize) -> Self {
        TripletBuilder {
            nrows,
            ncols,
            entries: Vec::new(),
        }
    }

    pub fn with_capacity(nrows: usize, ncols: usize, cap: usize) -> Self {
        TripletBuilder {
            nrows,
            ncols,
            entries: Vec::with_capacity(cap),
        }
    }

    #[inline]
    pub fn push(&mut self, row: usize, col: usize, value: C64) {
        debug_assert!(row < self.nrows && col < self.ncols);
        if value != C64::new(0.0, 0.0) {
            self.entries.push((row, col, value));
        }
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    /// Sorts by (row, col), sums duplicates in insertion order and compresses.
    pub fn build(mut self) -> CsrMatrix {
        // stable sort keeps the summation order deterministic
        self.entries.sort_by_key(|&(r, c, _)| (r, c));
        let mut row_ptr = vec![0usize; self.nrows + 1];
        let mut cols = Vec::with_capacity(self.entries.len());
        let mut vals: Vec<C64> = Vec::with_capacity(self.entries.len());
        let mut last: Option<(usize, usize)> = None;
        for (r, c, v) in self.entries {
            if last == Some((r, c)) {
                *vals.last_mut().unwrap() += v;
            } else {
                cols.push(c);
                vals.push(v);
                row_ptr[r + 1] += 1;
                last = Some((r, c));
            }
        }
        for r in 0..self.nrows {
            row_ptr[r + 1] += row_ptr[r];
        }
        CsrMatrix {
            nrows: self.nrows,
            ncols: self.ncols,
            row_ptr,
            cols,
            vals,
        }
    }
}

/// Compressed-row complex matrix with sorted, unique column indices per row.
#[derive(Debug, Clone, PartialEq)]
pub struct CsrMatrix {
    nrows: usize,
    ncols: usize,
    row_ptr: Vec<usize>,
    cols: Vec<usize>,
    vals: Vec<C64>,
}

impl CsrMatrix {
    pub fn identity(n: usize) -> Self {
        CsrMatrix {
            nrows: n,
            ncols: n,
            row_ptr: (0..=n).collect(),
            cols: (0..n).collect(),
            vals: vec![C64::new(1.0, 0.0); n],
        }
    }

    pub fn zeros(nrows: usize, ncols: usize) -> Self {
        TripletBuilder::new(nrows, ncols).build()
    }

    pub fn from_dense(rows: &[Vec<C64>]) -> Self {
        let nrows = rows.len();
        let ncols = rows.first().map_or(0, Vec::len);
        let mut b = TripletBuilder::new(nrows, ncols);
        for (i, row) in rows.iter().enumerate() {
            for (j, &v) in row.iter().enumerate() {
                b.push(i, j, v);
            }
        }
        b.build()
    }

    pub fn nrows(&self) -> usize {
        self.nrows
    }

    pub fn ncols(&self) -> usize {
        self.ncols
    }

    pub fn nnz(&self) -> usize {
        self.vals.len()
    }

    pub fn row(&self, i: usize) -> impl Iterator<Item = (usize, C64)> + '_ {
        let range = self.row_ptr[i]..self.row_ptr[i + 1];
        self.cols[range.clone()]
            .iter()
            .copied()
            .zip(self.vals[range].iter().copied())
    }

    pub fn get(&self, i: usize, j: usize) -> C64 {
        let range = self.row_ptr[i]..self.row_ptr[i + 1];
        match self.cols[range.clone()].binary_search(&j) {
            Ok(pos) => self.vals[range.start + pos],
            Err(_) => C64::new(0.0, 0.0),
        }
    }

    pub fn triplets(&self) -> impl Iterator<Item = (usize, usize, C64)> + '_ {
        (0..self.nrows).flat_map(move |i| self.row(i).map(move |(j, v)| (i, j, v)))
    }

    pub fn to_dense(&self) -> Vec<Vec<C64>> {
        let mut out = vec![vec![C64::new(0.0, 0.0); self.ncols]; self.nrows];
        for (i, j, v) in self.triplets() {
            out[i][j] = v;
        }
        out
    }

    /// Rows with no stored entries.
    pub fn empty_rows(&self) -> Vec<usize> {
        (0..self.nrows)
            .filter(|&i| self.row_ptr[i] == self.row_ptr[i + 1])
            .collect()
    }

    /// Sub-block `rows x cols` with indices shifted to start at zero.
    pub fn block(&self, rows: std::ops::Range<usize>, cols: std::ops::Range<usize>) -> CsrMatrix {
        let mut b = TripletBuilder::new(rows.len(), cols.len());
        for i in rows.clone() {
            for (j, v) in self.row(i) {
                if cols.contains(&j) {
                    b.push(i - rows.start, j - cols.start, v);
                }
            }
        }
        b.build()
    }

    pub fn max_abs_diff(&self, other: &CsrMatrix) -> f64 {
        assert_eq!((self.nrows, self.ncols), (other.nrows, other.ncols));
        let mut worst = 0.0f64;
        for i in 0..self.nrows {
            let mut a = self.row(i).peekable();
            let mut b = other.row(i).peekable();
            loop {
                let d = match (a.peek().copied(), b.peek().copied()) {
                    (None, None) => break,
                    (Some((_, va)), None) => {
                        a.next();
                        va.norm()
                    }
                    (None, Some((_, vb))) => {
                        b.next();
                        vb.norm()
                    }
                    (Some((ja, va)), Some((jb, vb))) => {
                        if ja == jb {
                            a.next();
                            b.next();
                            (va - vb).norm()
                        } else if ja < jb {
                            a.next();
                            va.norm()
                        } else {
                            b.next();
                            vb.norm()
                        }
                    }
                };
                worst = worst.max(d);
            }
        }
        worst
    }

    /// `P A P^T` for the permutation `new_index[old] = new`.
    pub fn permuted(&self, new_index: &[usize]) -> CsrMatrix {
        let mut b = TripletBuilder::with_capacity(self.nrows, self.ncols, self.nnz());
        for (i, j, v) in self.triplets() {
            b.push(new_index[i], new_index[j], v);
        }
        b.build()
    }

    /// MatrixMarket `coordinate complex general`, one-based indices.
    pub fn write_matrix_market<W: Write>(&self, mut out: W) -> std::io::Result<()> {
        writeln!(out, "%%MatrixMarket matrix coordinate complex general")?;
        writeln!(out, "{} {} {}", self.nrows, self.ncols, self.nnz())?;
        for (i, j, v) in self.triplets() {
            writeln!(out, "{} {} {:.17e} {:.17e}", i + 1, j + 1, v.re, v.im)?;
        }
        Ok(())
    }
}

/// Sparse product `A x`.
pub fn matvec(a: &CsrMatrix, x: &[C64]) -> Result<Vec<C64>> {
    if x.len() != a.ncols {
        return Err(Error::DimensionMismatch {
            expected: a.ncols,
            got: x.len(),
        });
    }
    Ok((0..a.nrows)
        .map(|i| a.row(i).map(|(j, v)| v * x[j]).sum())
        .collect())
}

pub fn norm2(x: &[C64]) -> f64 {
    x.iter().map(|v| v.norm_sqr()).sum::<f64>().sqrt()
}
