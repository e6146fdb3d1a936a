//! Boolean functions on F2^n.
//!
//! The single global convention, used by every module and file format: input
//! x = (x_1, ..., x_n) maps to table index idx(x) = sum x_i * 2^(i-1), so x_1
//! is the least significant index bit. Truth tables are bit-packed, 64 table
//! entries per word; word k holds indices 64k..64k+63.

use std::collections::BTreeSet;
use std::fmt;
use std::ops::{BitAnd, BitXor, BitXorAssign, Not};

use thiserror::Error;

use crate::gf2::{Gf2Matrix, Gf2Vector};

/// Largest supported variable count (a 16 MiB table).
pub const MAX_VARS: usize = 24;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum BoolFunError {
    #[error("variable count {0} outside supported range 1..={MAX_VARS}")]
    VarCount(usize),
    #[error("truth table hex for n={n} must be {expected} digits, got {got}")]
    HexLength { n: usize, expected: usize, got: usize },
    #[error("invalid hex digit {0:?}")]
    HexDigit(char),
    #[error("invalid ANF: {0}")]
    AnfParse(String),
    #[error("degree {d} out of range 1..={n}")]
    DegreeRange { d: usize, n: usize },
    #[error("dimension mismatch: {0}")]
    DimensionMismatch(String),
}

#[derive(Clone, PartialEq, Eq, Hash)]
pub struct BooleanFunction {
    n: usize,
    words: Vec<u64>,
}

fn word_count(n: usize) -> usize {
    if n >= 6 {
        1 << (n - 6)
    } else {
        1
    }
}

/// Mask of the table bits that live in the (single) word when 2^n < 64.
fn table_mask(n: usize) -> u64 {
    if n >= 6 {
        u64::MAX
    } else {
        (1u64 << (1 << n)) - 1
    }
}

impl BooleanFunction {
    pub fn zero(n: usize) -> Self {
        assert!(
            (1..=MAX_VARS).contains(&n),
            "variable count {n} out of range"
        );
        BooleanFunction {
            n,
            words: vec![0; word_count(n)],
        }
    }

    pub fn constant(n: usize, value: bool) -> Self {
        let mut f = Self::zero(n);
        if value {
            for w in &mut f.words {
                *w = u64::MAX;
            }
            let last = f.words.len() - 1;
            f.words[last] &= table_mask(n);
        }
        f
    }

    pub fn from_index_fn(n: usize, mut f: impl FnMut(u32) -> bool) -> Self {
        let mut out = Self::zero(n);
        for idx in 0..out.table_len() {
            if f(idx) {
                out.set(idx, true);
            }
        }
        out
    }

    /// Table from a packed word, for n <= 6.
    pub fn from_u64_table(n: usize, table: u64) -> Result<Self, BoolFunError> {
        if n == 0 || n > 6 {
            return Err(BoolFunError::VarCount(n));
        }
        if table & !table_mask(n) != 0 {
            return Err(BoolFunError::DimensionMismatch(format!(
                "table bits beyond 2^{n} entries"
            )));
        }
        Ok(BooleanFunction {
            n,
            words: vec![table],
        })
    }

    /// Parses the fixed-width hex truth table: ceil(2^n / 4) digits, digit j
    /// from the right holding table indices 4j..4j+3.
    pub fn from_hex(n: usize, s: &str) -> Result<Self, BoolFunError> {
        if n == 0 || n > MAX_VARS {
            return Err(BoolFunError::VarCount(n));
        }
        let expected = ((1usize << n) + 3) / 4;
        if s.len() != expected {
            return Err(BoolFunError::HexLength {
                n,
                expected,
                got: s.len(),
            });
        }
        let mut f = Self::zero(n);
        for (pos, c) in s.chars().rev().enumerate() {
            let nibble = c.to_digit(16).ok_or(BoolFunError::HexDigit(c))? as u64;
            f.words[pos / 16] |= nibble << (4 * (pos % 16));
        }
        if *f.words.last().unwrap() & !table_mask(n) != 0 {
            return Err(BoolFunError::DimensionMismatch(format!(
                "hex sets table bits beyond 2^{n} entries"
            )));
        }
        Ok(f)
    }

    pub fn to_hex(&self) -> String {
        let digits = ((1usize << self.n) + 3) / 4;
        let mut out = String::with_capacity(digits);
        for pos in (0..digits).rev() {
            let nibble = (self.words[pos / 16] >> (4 * (pos % 16))) & 0xf;
            out.push(char::from_digit(nibble as u32, 16).unwrap());
        }
        out
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn table_len(&self) -> u32 {
        1 << self.n
    }

    #[inline]
    pub fn get(&self, idx: u32) -> bool {
        debug_assert!(idx < self.table_len());
        self.words[(idx >> 6) as usize] >> (idx & 63) & 1 == 1
    }

    #[inline]
    pub fn set(&mut self, idx: u32, value: bool) {
        debug_assert!(idx < self.table_len());
        let w = &mut self.words[(idx >> 6) as usize];
        *w = *w & !(1 << (idx & 63)) | u64::from(value) << (idx & 63);
    }

    pub fn weight(&self) -> u64 {
        self.words.iter().map(|w| u64::from(w.count_ones())).sum()
    }

    pub fn words(&self) -> &[u64] {
        &self.words
    }

    /// Algebraic degree, without materializing the monomial set.
    pub fn degree(&self) -> usize {
        let mut coeffs = self.words.clone();
        mobius_in_place(&mut coeffs, self.n);
        let mut best = 0usize;
        for (k, &w) in coeffs.iter().enumerate() {
            let mut bits = w;
            while bits != 0 {
                let b = bits.trailing_zeros();
                let monomial = (k as u32) << 6 | b;
                best = best.max(monomial.count_ones() as usize);
                bits &= bits - 1;
            }
        }
        best
    }

    /// Full ANF via the fast Moebius butterfly.
    pub fn anf(&self) -> AnfPolynomial {
        let mut coeffs = self.words.clone();
        mobius_in_place(&mut coeffs, self.n);
        let mut monomials = BTreeSet::new();
        for (k, &w) in coeffs.iter().enumerate() {
            let mut bits = w;
            while bits != 0 {
                let b = bits.trailing_zeros();
                monomials.insert((k as u32) << 6 | b);
                bits &= bits - 1;
            }
        }
        AnfPolynomial {
            n: self.n,
            monomials,
        }
    }

    /// Elementary symmetric function of degree d: the XOR of all degree-d
    /// monomials, equivalently 1 iff C(wt(x), d) is odd.
    pub fn sigma_d(n: usize, d: usize) -> Result<Self, BoolFunError> {
        if n == 0 || n > MAX_VARS {
            return Err(BoolFunError::VarCount(n));
        }
        if d == 0 || d > n {
            return Err(BoolFunError::DegreeRange { d, n });
        }
        // Lucas: C(w, d) is odd exactly when d's binary digits sit inside w's.
        let d = d as u32;
        Ok(Self::from_index_fn(n, |idx| idx.count_ones() & d == d))
    }

    /// x |-> f(xC + a) + beta.x + zeta.
    pub fn affine_compose(
        &self,
        c: &Gf2Matrix,
        a: &Gf2Vector,
        beta: &Gf2Vector,
        zeta: bool,
    ) -> Result<Self, BoolFunError> {
        let n = self.n;
        if c.rows() != n || c.cols() != n || a.n() != n || beta.n() != n {
            return Err(BoolFunError::DimensionMismatch(format!(
                "affine_compose on n={n}: C is {}x{}, a has {}, beta has {}",
                c.rows(),
                c.cols(),
                a.n(),
                beta.n()
            )));
        }
        let mut out = Self::zero(n);
        for idx in 0..out.table_len() {
            let y = (c.mask_mul(u64::from(idx)) ^ a.bits()) as u32;
            let bit = self.get(y)
                ^ ((u64::from(idx) & beta.bits()).count_ones() & 1 == 1)
                ^ zeta;
            if bit {
                out.set(idx, true);
            }
        }
        Ok(out)
    }
}

/// sigma_2 extended to n = 1 as the empty sum (constant 0).
pub(crate) fn sigma2_table(n: usize) -> BooleanFunction {
    if n >= 2 {
        BooleanFunction::sigma_d(n, 2).expect("sigma_2 exists for n >= 2")
    } else {
        BooleanFunction::zero(n)
    }
}

impl fmt::Debug for BooleanFunction {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "BooleanFunction(n={}, tt={})", self.n, self.to_hex())
    }
}

impl BitXorAssign<&BooleanFunction> for BooleanFunction {
    fn bitxor_assign(&mut self, rhs: &BooleanFunction) {
        assert_eq!(self.n, rhs.n, "xor of functions on different variable counts");
        for (a, b) in self.words.iter_mut().zip(&rhs.words) {
            *a ^= b;
        }
    }
}

impl BitXor for &BooleanFunction {
    type Output = BooleanFunction;

    fn bitxor(self, rhs: &BooleanFunction) -> BooleanFunction {
        let mut out = self.clone();
        out ^= rhs;
        out
    }
}

impl BitAnd for &BooleanFunction {
    type Output = BooleanFunction;

    fn bitand(self, rhs: &BooleanFunction) -> BooleanFunction {
        assert_eq!(self.n, rhs.n, "and of functions on different variable counts");
        let words = self.words.iter().zip(&rhs.words).map(|(a, b)| a & b).collect();
        BooleanFunction { n: self.n, words }
    }
}

impl Not for &BooleanFunction {
    type Output = BooleanFunction;

    fn not(self) -> BooleanFunction {
        let mut words: Vec<u64> = self.words.iter().map(|w| !w).collect();
        let last = words.len() - 1;
        words[last] &= table_mask(self.n);
        BooleanFunction { n: self.n, words }
    }
}

/// In-place Moebius transform on a packed table: an involution sending truth
/// tables to ANF coefficient sets and back, O(n 2^n) word operations.
fn mobius_in_place(words: &mut [u64], n: usize) {
    const HALF_MASKS: [u64; 6] = [
        0x5555_5555_5555_5555,
        0x3333_3333_3333_3333,
        0x0f0f_0f0f_0f0f_0f0f,
        0x00ff_00ff_00ff_00ff,
        0x0000_ffff_0000_ffff,
        0x0000_0000_ffff_ffff,
    ];
    for (j, &m) in HALF_MASKS.iter().enumerate().take(n.min(6)) {
        let s = 1u32 << j;
        for w in words.iter_mut() {
            *w ^= (*w & m) << s;
        }
    }
    for j in 6..n {
        let stride = 1usize << (j - 6);
        for base in (0..words.len()).step_by(stride * 2) {
            for k in 0..stride {
                let lo = words[base + k];
                words[base + stride + k] ^= lo;
            }
        }
    }
}

/// A sparse ANF: the set of monomials with coefficient 1, each a bitmask of
/// variable indices (bit i-1 set means x_i is in the monomial). The empty
/// mask is the constant 1; the empty set is the constant 0.
#[derive(Clone, PartialEq, Eq)]
pub struct AnfPolynomial {
    n: usize,
    monomials: BTreeSet<u32>,
}

impl AnfPolynomial {
    pub fn new(n: usize, monomials: BTreeSet<u32>) -> Result<Self, BoolFunError> {
        if n == 0 || n > MAX_VARS {
            return Err(BoolFunError::VarCount(n));
        }
        if let Some(&m) = monomials.iter().next_back() {
            if m >> n != 0 {
                return Err(BoolFunError::AnfParse(format!(
                    "monomial uses a variable beyond x{n}"
                )));
            }
        }
        Ok(AnfPolynomial { n, monomials })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn monomials(&self) -> impl Iterator<Item = u32> + '_ {
        self.monomials.iter().copied()
    }

    pub fn len(&self) -> usize {
        self.monomials.len()
    }

    pub fn is_empty(&self) -> bool {
        self.monomials.is_empty()
    }

    pub fn degree(&self) -> usize {
        self.monomials
            .iter()
            .map(|m| m.count_ones() as usize)
            .max()
            .unwrap_or(0)
    }

    /// Evaluates the polynomial at a table index.
    pub fn evaluate(&self, idx: u32) -> bool {
        self.monomials.iter().filter(|&&m| idx & m == m).count() & 1 == 1
    }

    pub fn to_function(&self) -> BooleanFunction {
        let mut f = BooleanFunction::zero(self.n);
        for &m in &self.monomials {
            f.set(m, true);
        }
        let mut words = f.words;
        mobius_in_place(&mut words, self.n);
        BooleanFunction { n: self.n, words }
    }

    /// Renders the polynomial over another variable letter ("y1y2 + y3").
    pub fn to_letter_string(&self, letter: char) -> String {
        if self.monomials.is_empty() {
            return "0".into();
        }
        let mut sorted: Vec<u32> = self.monomials.iter().copied().collect();
        sorted.sort_by_key(|m| (std::cmp::Reverse(m.count_ones()), *m));
        let mut out = String::new();
        for (k, m) in sorted.iter().enumerate() {
            if k > 0 {
                out.push_str(" + ");
            }
            if *m == 0 {
                out.push('1');
            } else {
                let mut bits = *m;
                while bits != 0 {
                    let i = bits.trailing_zeros();
                    out.push(letter);
                    out.push_str(&(i + 1).to_string());
                    bits &= bits - 1;
                }
            }
        }
        out
    }

    /// Parses "x1x3 + x2 + 1" (whitespace ignored; "0" is the zero
    /// polynomial). Repeated terms cancel, as they do over GF(2).
    pub fn parse(s: &str, n: Option<usize>) -> Result<Self, BoolFunError> {
        let (monomials, max_var) = parse_terms(s, |letter, k| {
            if letter == 'x' && k >= 1 {
                Some(k)
            } else {
                None
            }
        })?;
        let n = match n {
            Some(n) => {
                if max_var > n {
                    return Err(BoolFunError::AnfParse(format!(
                        "variable x{max_var} exceeds declared n={n}"
                    )));
                }
                n
            }
            None => max_var.max(1),
        };
        Self::new(n, monomials)
    }
}

/// Shared term parser. `resolve` maps (letter, 1-based index) to a 1-based
/// variable position; returns the monomial set and the highest position used.
pub(crate) fn parse_terms(
    s: &str,
    resolve: impl Fn(char, usize) -> Option<usize>,
) -> Result<(BTreeSet<u32>, usize), BoolFunError> {
    let compact: String = s.chars().filter(|c| !c.is_whitespace()).collect();
    if compact.is_empty() {
        return Err(BoolFunError::AnfParse("empty polynomial".into()));
    }
    let mut monomials = BTreeSet::new();
    let mut max_var = 0usize;
    for term in compact.split('+') {
        if term == "1" {
            toggle(&mut monomials, 0);
            continue;
        }
        if term == "0" {
            continue;
        }
        if term.is_empty() {
            return Err(BoolFunError::AnfParse("empty term".into()));
        }
        let mut mask = 0u32;
        let mut chars = term.chars().peekable();
        while let Some(letter) = chars.next() {
            let mut digits = String::new();
            while let Some(c) = chars.peek().filter(|c| c.is_ascii_digit()) {
                digits.push(*c);
                chars.next();
            }
            let k: usize = digits
                .parse()
                .map_err(|_| BoolFunError::AnfParse(format!("bad variable in {term:?}")))?;
            let var = resolve(letter, k).ok_or_else(|| {
                BoolFunError::AnfParse(format!("unknown variable {letter}{k} in {term:?}"))
            })?;
            if var > MAX_VARS {
                return Err(BoolFunError::AnfParse(format!(
                    "variable index {var} exceeds {MAX_VARS}"
                )));
            }
            max_var = max_var.max(var);
            mask |= 1 << (var - 1);
        }
        toggle(&mut monomials, mask);
    }
    Ok((monomials, max_var))
}

fn toggle(set: &mut BTreeSet<u32>, mask: u32) {
    if !set.insert(mask) {
        set.remove(&mask);
    }
}

impl fmt::Display for AnfPolynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.to_letter_string('x'))
    }
}

impl fmt::Debug for AnfPolynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "AnfPolynomial(n={}, {})", self.n, self)
    }
}
