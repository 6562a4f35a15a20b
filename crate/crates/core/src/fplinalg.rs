//! Linear algebra over `Z_p`: row reduction, nullspaces, basis extension,
//! and coordinates relative to a basis. Everything is deterministic; where
//! a choice exists (pivot order, free-column order, which standard vectors
//! extend a basis) the smallest index wins.

use crate::gf::{inv_mod, is_prime};
use std::fmt::Write as _;

#[derive(Debug, thiserror::Error, PartialEq, Eq)]
pub enum LinAlgError {
    #[error("{0} is not prime")]
    NotPrime(u64),
    #[error("row {row} has {found} entries, expected {expected}")]
    RaggedRow {
        row: usize,
        found: usize,
        expected: usize,
    },
    #[error("dimension mismatch: {left_rows}x{left_cols} against {right_rows}x{right_cols}")]
    DimensionMismatch {
        left_rows: usize,
        left_cols: usize,
        right_rows: usize,
        right_cols: usize,
    },
    #[error("vector has length {found}, expected {expected}")]
    WrongVectorLength { found: usize, expected: usize },
    #[error("span vectors are linearly dependent (rank {rank} from {given} vectors)")]
    DependentSpan { rank: usize, given: usize },
}

#[derive(Debug, thiserror::Error, PartialEq, Eq)]
pub enum MatFormatError {
    #[error("line {line}: expected `mat p=<p> rows=<r> cols=<c>`, found {found:?}")]
    BadHeader { line: usize, found: String },
    #[error("line {line}: bad entry {found:?}")]
    BadEntry { line: usize, found: String },
    #[error("expected {expected} rows, found {found}")]
    WrongRowCount { expected: usize, found: usize },
    #[error("line {line}: row has {found} entries, expected {expected}")]
    WrongRowLength {
        line: usize,
        found: usize,
        expected: usize,
    },
    #[error("{0} is not prime")]
    NotPrime(u64),
}

/// A dense rows x cols matrix over `Z_p`, entries in `0..p`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MatModP {
    p: u64,
    rows: usize,
    cols: usize,
    data: Vec<u64>,
}

impl MatModP {
    pub fn zero(p: u64, rows: usize, cols: usize) -> Result<Self, LinAlgError> {
        if !is_prime(p) {
            return Err(LinAlgError::NotPrime(p));
        }
        Ok(MatModP {
            p,
            rows,
            cols,
            data: vec![0; rows * cols],
        })
    }

    pub fn identity(p: u64, n: usize) -> Result<Self, LinAlgError> {
        let mut m = Self::zero(p, n, n)?;
        for i in 0..n {
            m.set(i, i, 1);
        }
        Ok(m)
    }

    /// Build from rows, reducing entries mod p. `cols` makes a 0-row matrix
    /// unambiguous; rows must all have that length.
    pub fn from_rows(p: u64, cols: usize, rows: &[Vec<u64>]) -> Result<Self, LinAlgError> {
        if !is_prime(p) {
            return Err(LinAlgError::NotPrime(p));
        }
        for (i, row) in rows.iter().enumerate() {
            if row.len() != cols {
                return Err(LinAlgError::RaggedRow {
                    row: i,
                    found: row.len(),
                    expected: cols,
                });
            }
        }
        Ok(MatModP {
            p,
            rows: rows.len(),
            cols,
            data: rows.iter().flatten().map(|&x| x % p).collect(),
        })
    }

    pub fn p(&self) -> u64 {
        self.p
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn get(&self, r: usize, c: usize) -> u64 {
        self.data[r * self.cols + c]
    }

    pub fn set(&mut self, r: usize, c: usize, value: u64) {
        self.data[r * self.cols + c] = value % self.p;
    }

    pub fn row(&self, r: usize) -> &[u64] {
        &self.data[r * self.cols..(r + 1) * self.cols]
    }

    pub fn row_vecs(&self) -> Vec<Vec<u64>> {
        (0..self.rows).map(|r| self.row(r).to_vec()).collect()
    }

    pub fn transpose(&self) -> MatModP {
        let mut t = MatModP {
            p: self.p,
            rows: self.cols,
            cols: self.rows,
            data: vec![0; self.data.len()],
        };
        for r in 0..self.rows {
            for c in 0..self.cols {
                t.data[c * self.rows + r] = self.get(r, c);
            }
        }
        t
    }

    pub fn mul(&self, other: &MatModP) -> Result<MatModP, LinAlgError> {
        if self.cols != other.rows || self.p != other.p {
            return Err(LinAlgError::DimensionMismatch {
                left_rows: self.rows,
                left_cols: self.cols,
                right_rows: other.rows,
                right_cols: other.cols,
            });
        }
        let mut out = MatModP::zero(self.p, self.rows, other.cols)?;
        for r in 0..self.rows {
            for k in 0..self.cols {
                let a = self.get(r, k);
                if a == 0 {
                    continue;
                }
                for c in 0..other.cols {
                    let v = (out.get(r, c) + a * other.get(k, c)) % self.p;
                    out.data[r * out.cols + c] = v;
                }
            }
        }
        Ok(out)
    }

    pub fn mul_vec(&self, v: &[u64]) -> Result<Vec<u64>, LinAlgError> {
        if v.len() != self.cols {
            return Err(LinAlgError::WrongVectorLength {
                found: v.len(),
                expected: self.cols,
            });
        }
        Ok((0..self.rows)
            .map(|r| {
                self.row(r)
                    .iter()
                    .zip(v)
                    .fold(0u64, |acc, (&a, &x)| (acc + a * (x % self.p)) % self.p)
            })
            .collect())
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(|&x| x == 0)
    }

    /// Reduced row echelon form with rank and pivot columns.
    pub fn rref(&self) -> Rref {
        let mut m = self.clone();
        let mut pivots = Vec::new();
        let mut r = 0;
        for c in 0..m.cols {
            if r == m.rows {
                break;
            }
            let Some(pr) = (r..m.rows).find(|&i| m.get(i, c) != 0) else {
                continue;
            };
            if pr != r {
                for j in 0..m.cols {
                    let tmp = m.get(r, j);
                    m.set(r, j, m.get(pr, j));
                    m.set(pr, j, tmp);
                }
            }
            let scale = inv_mod(m.get(r, c), m.p);
            for j in 0..m.cols {
                m.set(r, j, m.get(r, j) * scale % m.p);
            }
            for i in 0..m.rows {
                if i != r && m.get(i, c) != 0 {
                    let factor = m.get(i, c);
                    for j in 0..m.cols {
                        let v = (m.get(i, j) + (m.p - factor) * m.get(r, j)) % m.p;
                        m.set(i, j, v);
                    }
                }
            }
            pivots.push(c);
            r += 1;
        }
        Rref {
            rank: pivots.len(),
            pivots,
            matrix: m,
        }
    }

    /// Basis of `{x : self . x = 0}`, one vector per free column in
    /// ascending column order. Empty when the rank is full.
    pub fn nullspace_basis(&self) -> Vec<Vec<u64>> {
        let rref = self.rref();
        let mut is_pivot = vec![false; self.cols];
        for &c in &rref.pivots {
            is_pivot[c] = true;
        }
        let mut basis = Vec::new();
        for f in (0..self.cols).filter(|&c| !is_pivot[c]) {
            let mut v = vec![0u64; self.cols];
            v[f] = 1;
            for (i, &pc) in rref.pivots.iter().enumerate() {
                v[pc] = (self.p - rref.matrix.get(i, f)) % self.p;
            }
            basis.push(v);
        }
        basis
    }
}

#[derive(Debug, Clone)]
pub struct Rref {
    pub matrix: MatModP,
    pub rank: usize,
    pub pivots: Vec<usize>,
}

impl Rref {
    /// The nonzero rows: a canonical basis of the input's row space.
    pub fn basis_matrix(&self) -> MatModP {
        let rows: Vec<Vec<u64>> = (0..self.rank)
            .map(|r| self.matrix.row(r).to_vec())
            .collect();
        MatModP::from_rows(self.matrix.p(), self.matrix.cols(), &rows).unwrap()
    }
}

/// An ordered basis of `Z_p^n` whose first `split` vectors span a designated
/// subspace. Coordinates are computed through a precomputed inverse.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BasisZpn {
    p: u64,
    n: usize,
    split: usize,
    vectors: Vec<Vec<u64>>,
    inverse: MatModP,
}

impl BasisZpn {
    pub fn new(
        p: u64,
        n: usize,
        vectors: Vec<Vec<u64>>,
        split: usize,
    ) -> Result<Self, LinAlgError> {
        if vectors.len() != n {
            return Err(LinAlgError::DependentSpan {
                rank: 0,
                given: vectors.len(),
            });
        }
        assert!(split <= n, "split beyond basis length");
        let as_matrix = MatModP::from_rows(p, n, &vectors)?;
        // Invert the matrix whose COLUMNS are the basis vectors; rows of
        // `as_matrix` are the vectors, so invert its transpose via [B | I].
        let b = as_matrix.transpose();
        let mut aug = MatModP::zero(p, n, 2 * n)?;
        for r in 0..n {
            for c in 0..n {
                aug.set(r, c, b.get(r, c));
            }
            aug.set(r, n + r, 1);
        }
        let rref = aug.rref();
        if rref.rank < n || rref.pivots.iter().copied().take(n).ne(0..n) {
            return Err(LinAlgError::DependentSpan {
                rank: rref.pivots.iter().filter(|&&c| c < n).count(),
                given: n,
            });
        }
        let mut inverse = MatModP::zero(p, n, n)?;
        for r in 0..n {
            for c in 0..n {
                inverse.set(r, c, rref.matrix.get(r, n + c));
            }
        }
        Ok(BasisZpn {
            p,
            n,
            split,
            vectors,
            inverse,
        })
    }

    pub fn p(&self) -> u64 {
        self.p
    }

    pub fn n(&self) -> usize {
        self.n
    }

    /// How many leading vectors span the designated subspace.
    pub fn split(&self) -> usize {
        self.split
    }

    pub fn vectors(&self) -> &[Vec<u64>] {
        &self.vectors
    }

    pub fn leading(&self) -> &[Vec<u64>] {
        &self.vectors[..self.split]
    }

    /// Coefficients (a_1..a_n) with `alpha = sum a_i b_i`.
    pub fn coordinates(&self, alpha: &[u64]) -> Result<Vec<u64>, LinAlgError> {
        self.inverse.mul_vec(alpha)
    }

    /// The last `n - split` coordinates of `alpha`; the image of `alpha`
    /// in the quotient by the leading span, expressed in `Z_p^(n-split)`.
    pub fn trailing_coordinates(&self, alpha: &[u64]) -> Result<Vec<u64>, LinAlgError> {
        Ok(self.coordinates(alpha)?[self.split..].to_vec())
    }
}

/// Extend independent `span` vectors to an ordered basis of `Z_p^n` by
/// appending the first standard basis vectors that keep the set independent.
/// The result's `split` equals `span.len()`.
pub fn extend_to_basis(p: u64, n: usize, span: &[Vec<u64>]) -> Result<BasisZpn, LinAlgError> {
    for v in span {
        if v.len() != n {
            return Err(LinAlgError::WrongVectorLength {
                found: v.len(),
                expected: n,
            });
        }
    }
    let stacked = MatModP::from_rows(p, n, span)?;
    if stacked.rref().rank != span.len() {
        return Err(LinAlgError::DependentSpan {
            rank: stacked.rref().rank,
            given: span.len(),
        });
    }
    let mut vectors: Vec<Vec<u64>> = span.to_vec();
    let mut rank = span.len();
    for j in 0..n {
        if rank == n {
            break;
        }
        let mut e = vec![0u64; n];
        e[j] = 1;
        vectors.push(e);
        let new_rank = MatModP::from_rows(p, n, &vectors)?.rref().rank;
        if new_rank > rank {
            rank = new_rank;
        } else {
            vectors.pop();
        }
    }
    BasisZpn::new(p, n, vectors, span.len())
}

pub fn write_matrix(m: &MatModP) -> String {
    let mut out = String::new();
    writeln!(out, "mat p={} rows={} cols={}", m.p(), m.rows(), m.cols()).unwrap();
    for r in 0..m.rows() {
        let row: Vec<String> = m.row(r).iter().map(u64::to_string).collect();
        writeln!(out, "{}", row.join(" ")).unwrap();
    }
    out
}

pub fn parse_matrix(text: &str) -> Result<MatModP, MatFormatError> {
    let mut lines = text
        .lines()
        .enumerate()
        .map(|(i, l)| (i + 1, l.trim()))
        .filter(|(_, l)| !l.is_empty() && !l.starts_with('#'));
    let (hline, header) = lines.next().ok_or(MatFormatError::BadHeader {
        line: 1,
        found: String::new(),
    })?;
    let bad_header = || MatFormatError::BadHeader {
        line: hline,
        found: header.to_string(),
    };
    let fields: Vec<&str> = header.split_whitespace().collect();
    if fields.len() != 4 || fields[0] != "mat" {
        return Err(bad_header());
    }
    let grab = |field: &str, key: &str| -> Result<u64, MatFormatError> {
        field
            .strip_prefix(key)
            .and_then(|s| s.strip_prefix('='))
            .and_then(|s| s.parse().ok())
            .ok_or_else(bad_header)
    };
    let p = grab(fields[1], "p")?;
    let rows = grab(fields[2], "rows")? as usize;
    let cols = grab(fields[3], "cols")? as usize;
    if !is_prime(p) {
        return Err(MatFormatError::NotPrime(p));
    }
    let mut data: Vec<Vec<u64>> = Vec::with_capacity(rows);
    for (line, text) in lines {
        let entries: Result<Vec<u64>, _> = text
            .split_whitespace()
            .map(|t| {
                t.parse::<u64>().map_err(|_| MatFormatError::BadEntry {
                    line,
                    found: t.to_string(),
                })
            })
            .collect();
        let entries = entries?;
        if entries.len() != cols {
            return Err(MatFormatError::WrongRowLength {
                line,
                found: entries.len(),
                expected: cols,
            });
        }
        data.push(entries);
    }
    if data.len() != rows {
        return Err(MatFormatError::WrongRowCount {
            expected: rows,
            found: data.len(),
        });
    }
    MatModP::from_rows(p, cols, &data).map_err(|_| MatFormatError::NotPrime(p))
}
