use std::fmt;

use crate::{Error, Result};

/// Column-major sparse integer matrix. Columns are sorted by row and hold no zeros.
///
/// Entries are machine integers; every elimination routine working on them uses checked
/// arithmetic and switches to big integers instead of wrapping.
#[derive(Clone, PartialEq, Eq, Default)]
pub struct SparseIntMatrix {
    rows: usize,
    columns: Vec<Vec<(u32, i64)>>,
}

impl SparseIntMatrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        Self { rows, columns: vec![Vec::new(); cols] }
    }

    pub fn identity(n: usize) -> Self {
        Self { rows: n, columns: (0..n).map(|k| vec![(k as u32, 1)]).collect() }
    }

    /// Sums duplicate positions and drops zeros.
    pub fn from_triplets(rows: usize, cols: usize, entries: impl IntoIterator<Item = (usize, usize, i64)>) -> Self {
        let mut columns: Vec<Vec<(u32, i64)>> = vec![Vec::new(); cols];
        for (r, c, v) in entries {
            assert!(r < rows && c < cols, "entry ({r}, {c}) outside {rows}x{cols}");
            columns[c].push((r as u32, v));
        }
        for col in columns.iter_mut() {
            normalize(col);
        }
        Self { rows, columns }
    }

    /// Columns may be unsorted and contain duplicates.
    pub fn from_columns(rows: usize, mut columns: Vec<Vec<(u32, i64)>>) -> Self {
        for col in columns.iter_mut() {
            normalize(col);
            debug_assert!(col.last().map_or(true, |&(r, _)| (r as usize) < rows));
        }
        Self { rows, columns }
    }

    pub fn from_dense(rows: &[Vec<i64>]) -> Self {
        let nr = rows.len();
        let nc = rows.first().map_or(0, |r| r.len());
        Self::from_triplets(
            nr,
            nc,
            rows.iter().enumerate().flat_map(|(r, row)| row.iter().enumerate().map(move |(c, &v)| (r, c, v))),
        )
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.columns.len()
    }

    pub fn nnz(&self) -> usize {
        self.columns.iter().map(|c| c.len()).sum()
    }

    pub fn is_zero(&self) -> bool {
        self.columns.iter().all(|c| c.is_empty())
    }

    pub fn column(&self, c: usize) -> &[(u32, i64)] {
        &self.columns[c]
    }

    pub fn columns(&self) -> &[Vec<(u32, i64)>] {
        &self.columns
    }

    pub(crate) fn into_columns(self) -> Vec<Vec<(u32, i64)>> {
        self.columns
    }

    pub fn get(&self, r: usize, c: usize) -> i64 {
        let col = &self.columns[c];
        col.binary_search_by_key(&(r as u32), |&(row, _)| row).map_or(0, |k| col[k].1)
    }

    pub fn entries(&self) -> impl Iterator<Item = (usize, usize, i64)> + '_ {
        self.columns
            .iter()
            .enumerate()
            .flat_map(|(c, col)| col.iter().map(move |&(r, v)| (r as usize, c, v)))
    }

    pub fn transpose(&self) -> Self {
        Self::from_triplets(self.cols(), self.rows, self.entries().map(|(r, c, v)| (c, r, v)))
    }

    pub fn to_dense(&self) -> Vec<Vec<i64>> {
        let mut out = vec![vec![0; self.cols()]; self.rows];
        for (r, c, v) in self.entries() {
            out[r][c] = v;
        }
        out
    }

    /// `self * rhs`.
    pub fn mul(&self, rhs: &SparseIntMatrix) -> Result<SparseIntMatrix> {
        if self.cols() != rhs.rows() {
            return Err(Error::Shape(format!("{}x{} * {}x{}", self.rows, self.cols(), rhs.rows(), rhs.cols())));
        }
        let mut acc = vec![0i64; self.rows];
        let mut touched: Vec<u32> = Vec::new();
        let mut columns = Vec::with_capacity(rhs.cols());
        for col in &rhs.columns {
            for &(k, b) in col {
                for &(r, a) in &self.columns[k as usize] {
                    let slot = &mut acc[r as usize];
                    if *slot == 0 {
                        touched.push(r);
                    }
                    *slot = slot
                        .checked_add(a.checked_mul(b).expect("matrix product overflow"))
                        .expect("matrix product overflow");
                }
            }
            touched.sort_unstable();
            touched.dedup();
            let mut out = Vec::new();
            for &r in &touched {
                let v = std::mem::take(&mut acc[r as usize]);
                if v != 0 {
                    out.push((r, v));
                }
            }
            touched.clear();
            columns.push(out);
        }
        Ok(SparseIntMatrix { rows: self.rows, columns })
    }
}

fn normalize(col: &mut Vec<(u32, i64)>) {
    col.sort_unstable_by_key(|&(r, _)| r);
    let mut out: Vec<(u32, i64)> = Vec::with_capacity(col.len());
    for &(r, v) in col.iter() {
        match out.last_mut() {
            Some((lr, lv)) if *lr == r => *lv = lv.checked_add(v).expect("entry overflow"),
            _ => out.push((r, v)),
        }
    }
    out.retain(|&(_, v)| v != 0);
    *col = out;
}

impl fmt::Debug for SparseIntMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.rows * self.cols() <= 400 {
            writeln!(f, "SparseIntMatrix {}x{} [", self.rows, self.cols())?;
            for row in self.to_dense() {
                writeln!(f, "  {:?}", row)?;
            }
            write!(f, "]")
        } else {
            write!(f, "SparseIntMatrix {}x{} ({} nonzeros)", self.rows, self.cols(), self.nnz())
        }
    }
}
