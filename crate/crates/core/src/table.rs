//! Dense Cayley tables over `{0, .., n-1}`.

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::TableError;

/// An element of the carrier, always an index in `0..n`.
pub type Element = usize;

/// Largest carrier size a table can hold (entries are stored as bytes).
pub const MAX_ORDER: usize = u8::MAX as usize;

/// A total binary operation on `{0, .., n-1}`, stored row-major.
///
/// Row `a` holds the values `a·0, a·1, .., a·(n-1)`.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(try_from = "RawTable", into = "RawTable")]
pub struct CayleyTable {
    n: usize,
    entries: Vec<u8>,
}

#[derive(Serialize, Deserialize)]
struct RawTable {
    n: usize,
    rows: Vec<Vec<usize>>,
}

impl TryFrom<RawTable> for CayleyTable {
    type Error = TableError;

    fn try_from(raw: RawTable) -> Result<Self, Self::Error> {
        if raw.rows.len() != raw.n {
            return Err(TableError::ShapeMismatch {
                expected: raw.n * raw.n,
                found: raw.rows.iter().map(Vec::len).sum(),
            });
        }
        CayleyTable::from_rows(&raw.rows)
    }
}

impl From<CayleyTable> for RawTable {
    fn from(t: CayleyTable) -> Self {
        RawTable {
            n: t.n,
            rows: t.rows().map(|r| r.iter().map(|&v| v as usize).collect()).collect(),
        }
    }
}

impl CayleyTable {
    /// Builds a table from `n*n` row-major entries.
    pub fn new(n: usize, entries: Vec<usize>) -> Result<Self, TableError> {
        if n == 0 {
            return Err(TableError::EmptyCarrier);
        }
        if n > MAX_ORDER {
            return Err(TableError::TooLarge(n));
        }
        if entries.len() != n * n {
            return Err(TableError::ShapeMismatch {
                expected: n * n,
                found: entries.len(),
            });
        }
        let mut packed = Vec::with_capacity(entries.len());
        for (idx, &v) in entries.iter().enumerate() {
            if v >= n {
                return Err(TableError::OutOfRange {
                    row: idx / n,
                    col: idx % n,
                    value: v,
                    n,
                });
            }
            packed.push(v as u8);
        }
        Ok(CayleyTable { n, entries: packed })
    }

    /// Builds a table from its rows. Every row must have length `rows.len()`.
    pub fn from_rows<R: AsRef<[usize]>>(rows: &[R]) -> Result<Self, TableError> {
        let n = rows.len();
        let mut entries = Vec::with_capacity(n * n);
        for row in rows {
            let row = row.as_ref();
            if row.len() != n {
                return Err(TableError::ShapeMismatch {
                    expected: n * n,
                    found: rows.iter().map(|r| r.as_ref().len()).sum(),
                });
            }
            entries.extend_from_slice(row);
        }
        CayleyTable::new(n, entries)
    }

    /// Wraps already-validated byte entries.
    pub(crate) fn from_bytes_unchecked(n: usize, entries: Vec<u8>) -> Self {
        debug_assert_eq!(entries.len(), n * n);
        debug_assert!(entries.iter().all(|&v| (v as usize) < n));
        CayleyTable { n, entries }
    }

    /// Carrier size.
    #[inline]
    pub fn order(&self) -> usize {
        self.n
    }

    /// `a · b`.
    #[inline]
    pub fn op(&self, a: Element, b: Element) -> Element {
        self.entries[a * self.n + b] as usize
    }

    #[inline]
    pub fn row(&self, a: Element) -> &[u8] {
        &self.entries[a * self.n..(a + 1) * self.n]
    }

    pub fn rows(&self) -> impl Iterator<Item = &[u8]> + '_ {
        self.entries.chunks_exact(self.n)
    }

    pub fn entries(&self) -> &[u8] {
        &self.entries
    }

    pub fn elements(&self) -> std::ops::Range<Element> {
        0..self.n
    }

    /// True if row `a` is the constant function with value `a`.
    pub fn is_left_absorber(&self, a: Element) -> bool {
        self.row(a).iter().all(|&v| v as usize == a)
    }

    /// Applies a relabelling `perm` (image of `i` at position `i`):
    /// the result `t'` satisfies `t'(perm a, perm b) = perm(t(a, b))`.
    ///
    /// `perm` must be a permutation of `0..n`; callers validate it.
    pub(crate) fn relabel(&self, perm: &[Element]) -> CayleyTable {
        let n = self.n;
        let mut out = vec![0u8; n * n];
        for a in 0..n {
            for b in 0..n {
                out[perm[a] * n + perm[b]] = perm[self.op(a, b)] as u8;
            }
        }
        CayleyTable::from_bytes_unchecked(n, out)
    }
}

impl fmt::Debug for CayleyTable {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "CayleyTable(n={}; ", self.n)?;
        for (i, row) in self.rows().enumerate() {
            if i > 0 {
                f.write_str(" | ")?;
            }
            for (j, v) in row.iter().enumerate() {
                if j > 0 {
                    f.write_str(" ")?;
                }
                write!(f, "{v}")?;
            }
        }
        f.write_str(")")
    }
}

impl fmt::Display for CayleyTable {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for row in self.rows() {
            let line: Vec<String> = row.iter().map(|v| v.to_string()).collect();
            writeln!(f, "{}", line.join(" "))?;
        }
        Ok(())
    }
}

/// Checks that `perm` is a permutation of `0..n`.
pub fn is_permutation(perm: &[Element], n: usize) -> bool {
    if perm.len() != n {
        return false;
    }
    let mut seen = vec![false; n];
    for &p in perm {
        if p >= n || seen[p] {
            return false;
        }
        seen[p] = true;
    }
    true
}

/// Inverse of a permutation.
pub fn invert_permutation(perm: &[Element]) -> Vec<Element> {
    let mut inv = vec![0; perm.len()];
    for (i, &p) in perm.iter().enumerate() {
        inv[p] = i;
    }
    inv
}
