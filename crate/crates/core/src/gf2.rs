//! Exact linear algebra over the two-element field.
//!
//! Vectors and matrix rows are bit-packed into single `u64` words, so every
//! operation is word-wide XOR/AND/popcount; there are no tolerances anywhere.
//! The row-vector convention is used throughout: vectors multiply matrices on
//! the left, `v * M`.

use std::fmt;

use thiserror::Error;

/// Widest supported dimension: one machine word per row.
pub const MAX_DIM: usize = 64;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Gf2Error {
    #[error("dimension {0} exceeds the {MAX_DIM}-bit row limit")]
    TooWide(usize),
    #[error("dimension mismatch: {0}")]
    DimensionMismatch(String),
    #[error("matrix is singular")]
    Singular,
    #[error("matrix must be square, got {rows}x{cols}")]
    NotSquare { rows: usize, cols: usize },
    #[error("indices are not a permutation of 0..{0}")]
    NotAPermutation(usize),
    #[error("block list is empty")]
    EmptyBlockList,
    #[error("block {0} is not square")]
    NonSquareBlock(usize),
    #[error("invalid matrix text: {0}")]
    Parse(String),
    #[error("invalid hex vector: {0}")]
    Hex(String),
}

/// A vector over GF(2); coordinate `i` (1-based) sits in bit `i-1`.
#[derive(Clone, Copy, PartialEq, Eq, Hash)]
pub struct Gf2Vector {
    n: usize,
    bits: u64,
}

impl Gf2Vector {
    pub fn zero(n: usize) -> Self {
        assert!(n >= 1 && n <= MAX_DIM, "vector dimension {n} out of range");
        Gf2Vector { n, bits: 0 }
    }

    pub fn ones(n: usize) -> Self {
        let mut v = Self::zero(n);
        v.bits = mask(n);
        v
    }

    /// Builds a vector from its packed bits; bits at positions >= `n` must be clear.
    pub fn from_bits(n: usize, bits: u64) -> Result<Self, Gf2Error> {
        if n == 0 || n > MAX_DIM {
            return Err(Gf2Error::TooWide(n));
        }
        if bits & !mask(n) != 0 {
            return Err(Gf2Error::DimensionMismatch(format!(
                "bits set beyond dimension {n}"
            )));
        }
        Ok(Gf2Vector { n, bits })
    }

    pub fn from_coords(coords: &[u8]) -> Result<Self, Gf2Error> {
        if coords.is_empty() || coords.len() > MAX_DIM {
            return Err(Gf2Error::TooWide(coords.len()));
        }
        let mut bits = 0u64;
        for (i, &c) in coords.iter().enumerate() {
            if c > 1 {
                return Err(Gf2Error::Parse(format!("coordinate {c} is not 0/1")));
            }
            bits |= u64::from(c) << i;
        }
        Ok(Gf2Vector {
            n: coords.len(),
            bits,
        })
    }

    /// Parses the little-endian nibble hex form (digit j from the right holds
    /// coordinates 4j+1..4j+4). The string must be exactly ceil(n/4) digits.
    pub fn from_hex(n: usize, s: &str) -> Result<Self, Gf2Error> {
        if n == 0 || n > MAX_DIM {
            return Err(Gf2Error::TooWide(n));
        }
        let want = n.div_ceil(4);
        if s.len() != want {
            return Err(Gf2Error::Hex(format!(
                "expected {want} hex digits for dimension {n}, got {}",
                s.len()
            )));
        }
        let bits = u64::from_str_radix(s, 16).map_err(|e| Gf2Error::Hex(e.to_string()))?;
        Self::from_bits(n, bits)
    }

    pub fn to_hex(&self) -> String {
        format!("{:0>width$x}", self.bits, width = self.n.div_ceil(4))
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn bits(&self) -> u64 {
        self.bits
    }

    /// Coordinate `i`, 0-based.
    pub fn get(&self, i: usize) -> bool {
        assert!(i < self.n);
        self.bits >> i & 1 == 1
    }

    pub fn set(&mut self, i: usize, value: bool) {
        assert!(i < self.n);
        self.bits = self.bits & !(1 << i) | u64::from(value) << i;
    }

    pub fn weight(&self) -> u32 {
        self.bits.count_ones()
    }

    /// Inner product over GF(2).
    pub fn dot(&self, other: &Gf2Vector) -> bool {
        assert_eq!(self.n, other.n, "dot of vectors with different dimensions");
        (self.bits & other.bits).count_ones() & 1 == 1
    }

    pub fn xor(&self, other: &Gf2Vector) -> Gf2Vector {
        assert_eq!(self.n, other.n, "xor of vectors with different dimensions");
        Gf2Vector {
            n: self.n,
            bits: self.bits ^ other.bits,
        }
    }

    /// Bitwise complement, `z ^ 1..1`.
    pub fn complement(&self) -> Gf2Vector {
        Gf2Vector {
            n: self.n,
            bits: self.bits ^ mask(self.n),
        }
    }
}

impl fmt::Debug for Gf2Vector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Gf2Vector({self})")
    }
}

impl fmt::Display for Gf2Vector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for i in 0..self.n {
            write!(f, "{}", u8::from(self.get(i)))?;
        }
        Ok(())
    }
}

fn mask(n: usize) -> u64 {
    if n == MAX_DIM {
        u64::MAX
    } else {
        (1 << n) - 1
    }
}

/// A dense bit matrix over GF(2), one `u64` word per row.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Gf2Matrix {
    rows: usize,
    cols: usize,
    row_bits: Vec<u64>,
}

impl Gf2Matrix {
    pub fn zero(rows: usize, cols: usize) -> Self {
        assert!(rows >= 1 && cols >= 1 && cols <= MAX_DIM && rows <= MAX_DIM);
        Gf2Matrix {
            rows,
            cols,
            row_bits: vec![0; rows],
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zero(n, n);
        for i in 0..n {
            m.row_bits[i] = 1 << i;
        }
        m
    }

    /// Builds a matrix from packed row masks.
    pub fn from_row_masks(cols: usize, row_bits: Vec<u64>) -> Result<Self, Gf2Error> {
        if cols == 0 || cols > MAX_DIM || row_bits.is_empty() || row_bits.len() > MAX_DIM {
            return Err(Gf2Error::TooWide(cols.max(row_bits.len())));
        }
        if row_bits.iter().any(|&r| r & !mask(cols) != 0) {
            return Err(Gf2Error::DimensionMismatch(format!(
                "row has bits beyond column {cols}"
            )));
        }
        Ok(Gf2Matrix {
            rows: row_bits.len(),
            cols,
            row_bits,
        })
    }

    /// Builds a matrix from rows of 0/1 entries.
    pub fn from_entries(entries: &[Vec<u8>]) -> Result<Self, Gf2Error> {
        if entries.is_empty() {
            return Err(Gf2Error::Parse("no rows".into()));
        }
        let cols = entries[0].len();
        let mut row_bits = Vec::with_capacity(entries.len());
        for row in entries {
            if row.len() != cols {
                return Err(Gf2Error::DimensionMismatch(
                    "ragged rows in entry grid".into(),
                ));
            }
            let mut bits = 0u64;
            for (j, &e) in row.iter().enumerate() {
                if e > 1 {
                    return Err(Gf2Error::Parse(format!("entry {e} is not 0/1")));
                }
                bits |= u64::from(e) << j;
            }
            row_bits.push(bits);
        }
        Self::from_row_masks(cols, row_bits)
    }

    /// Parses the text format: rows of '0'/'1' characters, one row per line.
    pub fn from_text(text: &str) -> Result<Self, Gf2Error> {
        let mut entries = Vec::new();
        for line in text.lines() {
            let line = line.trim();
            if line.is_empty() {
                continue;
            }
            let row: Result<Vec<u8>, Gf2Error> = line
                .chars()
                .map(|c| match c {
                    '0' => Ok(0),
                    '1' => Ok(1),
                    other => Err(Gf2Error::Parse(format!("unexpected character {other:?}"))),
                })
                .collect();
            entries.push(row?);
        }
        if entries.is_empty() {
            return Err(Gf2Error::Parse("no rows".into()));
        }
        Self::from_entries(&entries)
    }

    pub fn permutation(perm: &[usize]) -> Result<Self, Gf2Error> {
        let n = perm.len();
        if n == 0 || n > MAX_DIM {
            return Err(Gf2Error::TooWide(n));
        }
        let mut seen = vec![false; n];
        for &p in perm {
            if p >= n || seen[p] {
                return Err(Gf2Error::NotAPermutation(n));
            }
            seen[p] = true;
        }
        let row_bits = perm.iter().map(|&p| 1u64 << p).collect();
        Ok(Gf2Matrix {
            rows: n,
            cols: n,
            row_bits,
        })
    }

    /// If the matrix is a permutation matrix, returns the row->column map.
    pub fn as_permutation(&self) -> Option<Vec<usize>> {
        if !self.is_square() {
            return None;
        }
        let mut perm = Vec::with_capacity(self.rows);
        let mut seen = 0u64;
        for &r in &self.row_bits {
            if r.count_ones() != 1 || seen & r != 0 {
                return None;
            }
            seen |= r;
            perm.push(r.trailing_zeros() as usize);
        }
        Some(perm)
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }

    pub fn get(&self, i: usize, j: usize) -> bool {
        assert!(i < self.rows && j < self.cols);
        self.row_bits[i] >> j & 1 == 1
    }

    pub fn set(&mut self, i: usize, j: usize, value: bool) {
        assert!(i < self.rows && j < self.cols);
        self.row_bits[i] = self.row_bits[i] & !(1 << j) | u64::from(value) << j;
    }

    pub fn row_mask(&self, i: usize) -> u64 {
        self.row_bits[i]
    }

    pub fn entries(&self) -> Vec<Vec<u8>> {
        self.row_bits
            .iter()
            .map(|&r| (0..self.cols).map(|j| (r >> j & 1) as u8).collect())
            .collect()
    }

    /// Row-vector times matrix on packed bits; bits of `v` beyond the row
    /// count are ignored.
    pub fn mask_mul(&self, v: u64) -> u64 {
        let mut out = 0u64;
        let mut rest = v & mask(self.rows);
        while rest != 0 {
            let i = rest.trailing_zeros() as usize;
            out ^= self.row_bits[i];
            rest &= rest - 1;
        }
        out
    }

    pub fn transpose(&self) -> Gf2Matrix {
        let mut t = Gf2Matrix::zero(self.cols, self.rows);
        for i in 0..self.rows {
            let mut r = self.row_bits[i];
            while r != 0 {
                let j = r.trailing_zeros() as usize;
                t.row_bits[j] |= 1 << i;
                r &= r - 1;
            }
        }
        t
    }

    pub fn xor(&self, other: &Gf2Matrix) -> Result<Gf2Matrix, Gf2Error> {
        if self.rows != other.rows || self.cols != other.cols {
            return Err(Gf2Error::DimensionMismatch(format!(
                "{}x{} xor {}x{}",
                self.rows, self.cols, other.rows, other.cols
            )));
        }
        let row_bits = self
            .row_bits
            .iter()
            .zip(&other.row_bits)
            .map(|(a, b)| a ^ b)
            .collect();
        Ok(Gf2Matrix {
            rows: self.rows,
            cols: self.cols,
            row_bits,
        })
    }

    pub fn mul(&self, other: &Gf2Matrix) -> Result<Gf2Matrix, Gf2Error> {
        if self.cols != other.rows {
            return Err(Gf2Error::DimensionMismatch(format!(
                "{}x{} times {}x{}",
                self.rows, self.cols, other.rows, other.cols
            )));
        }
        let row_bits = self.row_bits.iter().map(|&r| other.mask_mul(r)).collect();
        Ok(Gf2Matrix {
            rows: self.rows,
            cols: other.cols,
            row_bits,
        })
    }

    /// Row rank via word-wide Gaussian elimination.
    pub fn rank(&self) -> usize {
        let mut rows = self.row_bits.clone();
        let mut r = 0;
        for c in 0..self.cols {
            let Some(p) = (r..rows.len()).find(|&i| rows[i] >> c & 1 == 1) else {
                continue;
            };
            rows.swap(r, p);
            let pivot = rows[r];
            for (i, row) in rows.iter_mut().enumerate() {
                if i != r && *row >> c & 1 == 1 {
                    *row ^= pivot;
                }
            }
            r += 1;
        }
        r
    }

    pub fn is_full_rank(&self) -> bool {
        self.rank() == self.rows.min(self.cols)
    }

    /// Inverse by Gauss-Jordan on the augmented identity.
    pub fn inverse(&self) -> Result<Gf2Matrix, Gf2Error> {
        if !self.is_square() {
            return Err(Gf2Error::NotSquare {
                rows: self.rows,
                cols: self.cols,
            });
        }
        let n = self.rows;
        let mut a = self.row_bits.clone();
        let mut inv: Vec<u64> = (0..n).map(|i| 1u64 << i).collect();
        for c in 0..n {
            let Some(p) = (c..n).find(|&i| a[i] >> c & 1 == 1) else {
                return Err(Gf2Error::Singular);
            };
            a.swap(c, p);
            inv.swap(c, p);
            for i in 0..n {
                if i != c && a[i] >> c & 1 == 1 {
                    a[i] ^= a[c];
                    inv[i] ^= inv[c];
                }
            }
        }
        Ok(Gf2Matrix {
            rows: n,
            cols: n,
            row_bits: inv,
        })
    }

    /// True iff the matrix is square with `M * M^T = I`.
    pub fn is_orthogonal(&self) -> bool {
        if !self.is_square() {
            return false;
        }
        for i in 0..self.rows {
            for j in i..self.rows {
                let dot = (self.row_bits[i] & self.row_bits[j]).count_ones() & 1 == 1;
                if dot != (i == j) {
                    return false;
                }
            }
        }
        true
    }

    pub fn block_diag(blocks: &[Gf2Matrix]) -> Result<Gf2Matrix, Gf2Error> {
        if blocks.is_empty() {
            return Err(Gf2Error::EmptyBlockList);
        }
        let mut total = 0usize;
        for (k, b) in blocks.iter().enumerate() {
            if !b.is_square() {
                return Err(Gf2Error::NonSquareBlock(k));
            }
            total += b.rows;
        }
        if total > MAX_DIM {
            return Err(Gf2Error::TooWide(total));
        }
        let mut m = Gf2Matrix::zero(total, total);
        let mut offset = 0;
        for b in blocks {
            for i in 0..b.rows {
                m.row_bits[offset + i] = b.row_bits[i] << offset;
            }
            offset += b.rows;
        }
        Ok(m)
    }
}

impl fmt::Debug for Gf2Matrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "Gf2Matrix {}x{}:", self.rows, self.cols)?;
        fmt::Display::fmt(self, f)
    }
}

impl fmt::Display for Gf2Matrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for i in 0..self.rows {
            for j in 0..self.cols {
                write!(f, "{}", u8::from(self.get(i, j)))?;
            }
            if i + 1 < self.rows {
                writeln!(f)?;
            }
        }
        Ok(())
    }
}

/// Row-vector product `v * M` over GF(2).
pub fn vec_matmul(v: &Gf2Vector, m: &Gf2Matrix) -> Result<Gf2Vector, Gf2Error> {
    if v.n() != m.rows() {
        return Err(Gf2Error::DimensionMismatch(format!(
            "vector dim {} against {}x{} matrix",
            v.n(),
            m.rows(),
            m.cols()
        )));
    }
    Gf2Vector::from_bits(m.cols(), m.mask_mul(v.bits()))
}
