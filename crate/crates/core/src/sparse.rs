//! Sparse binary matrices (parity checks) over GF(2).

use thiserror::Error;

use crate::bits::BitString;

/// Sparse matrix errors.
#[derive(Debug, Error, PartialEq, Eq)]
pub enum SparseError {
    /// An entry lies outside the declared dimensions.
    #[error("entry ({row}, {col}) outside {rows}x{cols}")]
    EntryOutOfRange {
        row: usize,
        col: usize,
        rows: usize,
        cols: usize,
    },
    /// The same position was given twice.
    #[error("duplicate entry ({row}, {col})")]
    DuplicateEntry { row: usize, col: usize },
    /// Vector length must equal the column count.
    #[error("vector length {got} does not match {cols} columns")]
    VectorLength { got: usize, cols: usize },
}

/// Sparse binary matrix stored as sorted per-row column lists.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SparseBinaryMatrix {
    rows: usize,
    cols: usize,
    row_cols: Vec<Vec<u32>>,
}

impl SparseBinaryMatrix {
    /// Builds from a set of `(row, col)` one-positions.
    pub fn from_entries(
        rows: usize,
        cols: usize,
        entries: impl IntoIterator<Item = (usize, usize)>,
    ) -> Result<Self, SparseError> {
        let mut row_cols = vec![Vec::new(); rows];
        for (r, c) in entries {
            if r >= rows || c >= cols {
                return Err(SparseError::EntryOutOfRange {
                    row: r,
                    col: c,
                    rows,
                    cols,
                });
            }
            row_cols[r].push(c as u32);
        }
        for (r, cs) in row_cols.iter_mut().enumerate() {
            cs.sort_unstable();
            if cs.windows(2).any(|w| w[0] == w[1]) {
                let dup = cs.windows(2).find(|w| w[0] == w[1]).unwrap()[0];
                return Err(SparseError::DuplicateEntry {
                    row: r,
                    col: dup as usize,
                });
            }
        }
        Ok(Self {
            rows,
            cols,
            row_cols,
        })
    }

    /// Identity matrix of size `n`.
    pub fn identity(n: usize) -> Self {
        Self {
            rows: n,
            cols: n,
            row_cols: (0..n as u32).map(|i| vec![i]).collect(),
        }
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    /// Sorted column indices of the ones in row `r`.
    pub fn row(&self, r: usize) -> &[u32] {
        &self.row_cols[r]
    }

    /// Total number of ones.
    pub fn num_entries(&self) -> usize {
        self.row_cols.iter().map(Vec::len).sum()
    }

    /// Per-column one counts.
    pub fn column_degrees(&self) -> Vec<usize> {
        let mut deg = vec![0usize; self.cols];
        for cs in &self.row_cols {
            for &c in cs {
                deg[c as usize] += 1;
            }
        }
        deg
    }

    /// GF(2) matrix-vector product (the syndrome map).
    pub fn mul(&self, x: &BitString) -> Result<BitString, SparseError> {
        if x.len() != self.cols {
            return Err(SparseError::VectorLength {
                got: x.len(),
                cols: self.cols,
            });
        }
        let mut out = BitString::zeros(self.rows);
        for (r, cs) in self.row_cols.iter().enumerate() {
            let mut acc = false;
            for &c in cs {
                acc ^= x.get(c as usize);
            }
            if acc {
                out.set(r, true);
            }
        }
        Ok(out)
    }

    /// Serializes to the text pool format: header `n m R` then one line per
    /// check row listing its one-positions ascending.
    pub fn to_pool_text(&self, rate_permille: u16) -> String {
        let mut s = String::new();
        s.push_str(&format!(
            "{} {} {:.2}\n",
            self.cols,
            self.rows,
            rate_permille as f64 / 1000.0
        ));
        for cs in &self.row_cols {
            let mut first = true;
            for &c in cs {
                if !first {
                    s.push(' ');
                }
                s.push_str(&c.to_string());
                first = false;
            }
            s.push('\n');
        }
        s
    }

    /// Parses the text pool format. Returns the matrix and the rate read
    /// from the header, in permille.
    pub fn from_pool_text(text: &str) -> Result<(Self, u16), String> {
        let mut lines = text.lines();
        let header = lines.next().ok_or("empty pool file")?;
        let mut parts = header.split_whitespace();
        let n: usize = parts
            .next()
            .ok_or("missing n")?
            .parse()
            .map_err(|e| format!("bad n: {e}"))?;
        let m: usize = parts
            .next()
            .ok_or("missing m")?
            .parse()
            .map_err(|e| format!("bad m: {e}"))?;
        let r: f64 = parts
            .next()
            .ok_or("missing R")?
            .parse()
            .map_err(|e| format!("bad R: {e}"))?;
        let rate_permille = (r * 1000.0).round() as u16;
        let mut entries = Vec::new();
        for (row, line) in lines.take(m).enumerate() {
            for tok in line.split_whitespace() {
                let c: usize = tok.parse().map_err(|e| format!("bad column: {e}"))?;
                entries.push((row, c));
            }
        }
        let mat = Self::from_entries(m, n, entries).map_err(|e| e.to_string())?;
        Ok((mat, rate_permille))
    }
}
