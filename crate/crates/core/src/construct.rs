//! Bent-negabent constructions on n = 2m variables.
//!
//! The pipeline: take a Maiorana-McFarland bent function f(x,y) = x.pi(y) + g(y)
//! whose linear map pi(y) = yM has both M and M+I invertible, then pull it
//! through the self-inverse change of variables A that carries sigma_2 onto
//! the canonical quadratic form. Composing with any orthogonal O and adding
//! any affine part keeps the result bent-negabent, with the degree equal to
//! deg(f) = max(2, deg g). Choosing deg(g) = m realizes the maximal degree m.

use std::fmt;

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Deserializer, Serialize, Serializer};
use thiserror::Error;

use crate::boolfun::{parse_terms, AnfPolynomial, BoolFunError, BooleanFunction, MAX_VARS};
use crate::classify;
use crate::gf2::{Gf2Error, Gf2Matrix, Gf2Vector};

/// Largest m, so that 2m stays within the table cap.
pub const MAX_M: usize = MAX_VARS / 2;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ConstructError {
    #[error("m must be at least 2 (no complete linear map exists on one bit), got {0}")]
    MTooSmall(usize),
    #[error("m = {0} exceeds the supported range 2..={MAX_M}")]
    MTooLarge(usize),
    #[error(
        "canonical identity sigma_2(x) = h(xA+b)+eps failed for m={m} at index {x}; \
         the published canonical data disagrees with this index convention"
    )]
    CanonicalIdentityFailed { m: usize, x: u32 },
    #[error("recipe matrix M is not full rank")]
    MRankDeficient,
    #[error("recipe matrix M + I is not full rank")]
    MPlusIRankDeficient,
    #[error("recipe matrix O is not orthogonal")]
    NotOrthogonal,
    #[error("dimension mismatch: {0}")]
    DimensionMismatch(String),
    #[error("target degree {d} outside 2..={m}")]
    DegreeOutOfRange { d: usize, m: usize },
    #[error("constructed function failed verification: {0}")]
    VerificationFailed(String),
    #[error("invalid recipe encoding: {0}")]
    RecipeFormat(String),
    #[error(transparent)]
    Gf2(#[from] Gf2Error),
    #[error(transparent)]
    BoolFun(#[from] BoolFunError),
}

fn check_m(m: usize) -> Result<(), ConstructError> {
    if m < 2 {
        Err(ConstructError::MTooSmall(m))
    } else if m > MAX_M {
        Err(ConstructError::MTooLarge(m))
    } else {
        Ok(())
    }
}

/// The strictly-lower-triangular all-ones matrix S_m.
pub fn s_matrix(m: usize) -> Gf2Matrix {
    let rows = (0..m).map(|i| (1u64 << i) - 1).collect();
    Gf2Matrix::from_row_masks(m, rows).expect("m is in range")
}

/// n x n identity with an all-ones last column; a self-inverse change of
/// variables that sends x_n to the parity x_1 + ... + x_n.
pub fn lambda_matrix(n: usize) -> Gf2Matrix {
    let mut lambda = Gf2Matrix::identity(n);
    for i in 0..n {
        lambda.set(i, n - 1, true);
    }
    lambda
}

/// The data carrying sigma_2 onto the canonical quadratic form
/// h(x) = x_1 x_{m+1} + ... + x_m x_{2m}:
/// sigma_2(x) = h(xA + b) + eps for every x in F2^(2m).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CanonicalForm {
    m: usize,
    pub a: Gf2Matrix,
    pub b: Gf2Vector,
    pub eps: bool,
    pub h: BooleanFunction,
}

impl CanonicalForm {
    pub fn m(&self) -> usize {
        self.m
    }

    pub fn n(&self) -> usize {
        2 * self.m
    }
}

/// The canonical quadratic form itself, h(x) = xor_i x_i x_{m+i} on 2m vars.
pub fn canonical_quadratic(m: usize) -> BooleanFunction {
    let mmask = (1u32 << m) - 1;
    BooleanFunction::from_index_fn(2 * m, |idx| {
        (idx & mmask & (idx >> m)).count_ones() & 1 == 1
    })
}

/// Builds (A, b, eps) for the given m and verifies the sigma_2 identity
/// before returning: exhaustively for 2m <= 16, on a seeded sample beyond.
/// The values are published data, not re-derived; a failed check is reported
/// as a discrepancy finding, never patched.
pub fn canonical_form(m: usize) -> Result<CanonicalForm, ConstructError> {
    check_m(m)?;
    let n = 2 * m;
    let s = s_matrix(m);
    let s_plus_i = s.xor(&Gf2Matrix::identity(m)).expect("same shape");
    let mut rows = Vec::with_capacity(n);
    for i in 0..m {
        rows.push(s_plus_i.row_mask(i) | s.row_mask(i) << m);
    }
    for i in 0..m {
        rows.push(s.row_mask(i) | s_plus_i.row_mask(i) << m);
    }
    let a = Gf2Matrix::from_row_masks(n, rows).expect("n is in range");

    let mut b_bits = 0u64;
    for i in 1..=m / 2 {
        b_bits |= 1 << (2 * i - 1);
        b_bits |= 1 << (m + 2 * i - 1);
    }
    let b = Gf2Vector::from_bits(n, b_bits).expect("bits fit");
    let eps = matches!(m % 4, 2 | 3);
    let h = canonical_quadratic(m);

    if a.mul(&a).expect("square") != Gf2Matrix::identity(n) {
        return Err(ConstructError::VerificationFailed(format!(
            "A*A != I for m={m}"
        )));
    }

    let sigma2 = BooleanFunction::sigma_d(n, 2).expect("n >= 4");
    let check = |x: u32| -> bool {
        let y = (a.mask_mul(u64::from(x)) ^ b.bits()) as u32;
        sigma2.get(x) == h.get(y) ^ eps
    };
    if n <= 16 {
        for x in 0..1u32 << n {
            if !check(x) {
                return Err(ConstructError::CanonicalIdentityFailed { m, x });
            }
        }
    } else {
        let mut rng = ChaCha8Rng::seed_from_u64(0xD15C);
        for _ in 0..4096 {
            let x = rng.gen_range(0..1u32 << n);
            if !check(x) {
                return Err(ConstructError::CanonicalIdentityFailed { m, x });
            }
        }
    }

    Ok(CanonicalForm { m, a, b, eps, h })
}

fn is_complete_linear(block: &Gf2Matrix) -> bool {
    let k = block.rows();
    block.rank() == k
        && block
            .xor(&Gf2Matrix::identity(k))
            .expect("same shape")
            .rank()
            == k
}

/// Seedable generator of m x m matrices M with both M and M+I invertible,
/// assembled block-diagonally from 2x2 and 3x3 blocks (all twos for even m,
/// twos then one three for odd m). Deterministic per seed.
pub fn make_complete_linear_map(m: usize, seed: u64) -> Result<Gf2Matrix, ConstructError> {
    check_m(m)?;
    let mut sizes = vec![2usize; (m - if m % 2 == 0 { 0 } else { 3 }) / 2];
    if m % 2 == 1 {
        sizes.push(3);
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let blocks: Vec<Gf2Matrix> = sizes
        .iter()
        .map(|&k| loop {
            let rows: Vec<u64> = (0..k).map(|_| rng.gen::<u64>() & ((1 << k) - 1)).collect();
            let candidate = Gf2Matrix::from_row_masks(k, rows).expect("k <= 3");
            if is_complete_linear(&candidate) {
                break candidate;
            }
        })
        .collect();
    let matrix = Gf2Matrix::block_diag(&blocks)?;
    debug_assert!(is_complete_linear(&matrix));
    Ok(matrix)
}

/// Maiorana-McFarland assembly f(x, y) = x.pi(y) + g(y) with pi(y) = yM;
/// x occupies variables 1..m, y variables m+1..2m.
pub fn mm_function(
    m: usize,
    matrix: &Gf2Matrix,
    g: &BooleanFunction,
) -> Result<BooleanFunction, ConstructError> {
    check_m(m)?;
    if matrix.rows() != m || matrix.cols() != m {
        return Err(ConstructError::DimensionMismatch(format!(
            "pi matrix is {}x{}, expected {m}x{m}",
            matrix.rows(),
            matrix.cols()
        )));
    }
    if g.n() != m {
        return Err(ConstructError::DimensionMismatch(format!(
            "g has {} variables, expected {m}",
            g.n()
        )));
    }
    let images: Vec<u32> = (0..1u32 << m)
        .map(|y| matrix.mask_mul(u64::from(y)) as u32)
        .collect();
    Ok(mm_from_images(m, &images, g))
}

/// MM assembly for an arbitrary permutation given by its value table.
pub(crate) fn mm_from_images(m: usize, images: &[u32], g: &BooleanFunction) -> BooleanFunction {
    let mmask = (1u32 << m) - 1;
    BooleanFunction::from_index_fn(2 * m, |idx| {
        let x = idx & mmask;
        let y = idx >> m;
        ((x & images[y as usize]).count_ones() & 1 == 1) ^ g.get(y)
    })
}

/// Everything needed to rebuild one constructed function.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ConstructionRecipe {
    pub m: usize,
    /// The complete linear map M; both M and M+I must be invertible.
    pub matrix: Gf2Matrix,
    /// Free choice of g on m variables; deg(g) sets the output degree.
    pub g: BooleanFunction,
    /// Orthogonal 2m x 2m matrix composed in front of A.
    pub orth: Gf2Matrix,
    pub alpha: Gf2Vector,
    pub beta: Gf2Vector,
    pub zeta: bool,
}

impl ConstructionRecipe {
    /// Checks every structural invariant, naming the first one that fails.
    pub fn validate(&self) -> Result<(), ConstructError> {
        check_m(self.m)?;
        let m = self.m;
        let n = 2 * m;
        if self.matrix.rows() != m || self.matrix.cols() != m {
            return Err(ConstructError::DimensionMismatch(format!(
                "M is {}x{}, expected {m}x{m}",
                self.matrix.rows(),
                self.matrix.cols()
            )));
        }
        if self.g.n() != m {
            return Err(ConstructError::DimensionMismatch(format!(
                "g has {} variables, expected {m}",
                self.g.n()
            )));
        }
        if self.orth.rows() != n || self.orth.cols() != n {
            return Err(ConstructError::DimensionMismatch(format!(
                "O is {}x{}, expected {n}x{n}",
                self.orth.rows(),
                self.orth.cols()
            )));
        }
        if self.alpha.n() != n || self.beta.n() != n {
            return Err(ConstructError::DimensionMismatch(format!(
                "alpha/beta have {}/{} coordinates, expected {n}",
                self.alpha.n(),
                self.beta.n()
            )));
        }
        if self.matrix.rank() != m {
            return Err(ConstructError::MRankDeficient);
        }
        if self.matrix.xor(&Gf2Matrix::identity(m))?.rank() != m {
            return Err(ConstructError::MPlusIRankDeficient);
        }
        if !self.orth.is_orthogonal() {
            return Err(ConstructError::NotOrthogonal);
        }
        Ok(())
    }

    /// A fully seeded random recipe: seeded M, random g, permutation O,
    /// random affine part.
    pub fn seeded(m: usize, seed: u64) -> Result<Self, ConstructError> {
        check_m(m)?;
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let matrix = make_complete_linear_map(m, rng.gen())?;
        let g = random_function_with(&mut rng, m);
        Ok(ConstructionRecipe {
            m,
            matrix,
            g,
            orth: random_permutation_matrix(&mut rng, 2 * m),
            alpha: random_vector(&mut rng, 2 * m),
            beta: random_vector(&mut rng, 2 * m),
            zeta: rng.gen(),
        })
    }

    /// The published 8-variable recipe: the 4x4 complete map, g = y1y2y3y4,
    /// O = I, alpha = beta = 0, zeta = 0.
    pub fn example1() -> Self {
        let matrix = Gf2Matrix::from_entries(&[
            vec![0, 1, 0, 1],
            vec![1, 0, 1, 0],
            vec![0, 1, 0, 0],
            vec![1, 0, 0, 0],
        ])
        .expect("static data");
        let g = AnfPolynomial::new(4, [0b1111].into_iter().collect())
            .expect("static data")
            .to_function();
        ConstructionRecipe {
            m: 4,
            matrix,
            g,
            orth: Gf2Matrix::identity(8),
            alpha: Gf2Vector::zero(8),
            beta: Gf2Vector::zero(8),
            zeta: false,
        }
    }

    /// The published 10-variable recipe: diag(2x2, 3x3) blocks and
    /// g = y1y2y3y4y5 + y2y3y4y5.
    pub fn example2() -> Self {
        let m1 = Gf2Matrix::from_entries(&[vec![1, 1], vec![1, 0]]).expect("static data");
        let m2 = Gf2Matrix::from_entries(&[vec![0, 1, 1], vec![1, 1, 0], vec![1, 0, 0]])
            .expect("static data");
        let matrix = Gf2Matrix::block_diag(&[m1, m2]).expect("static data");
        let g = AnfPolynomial::new(5, [0b11111, 0b11110].into_iter().collect())
            .expect("static data")
            .to_function();
        ConstructionRecipe {
            m: 5,
            matrix,
            g,
            orth: Gf2Matrix::identity(10),
            alpha: Gf2Vector::zero(10),
            beta: Gf2Vector::zero(10),
            zeta: false,
        }
    }
}

pub(crate) fn random_function_with(rng: &mut ChaCha8Rng, n: usize) -> BooleanFunction {
    BooleanFunction::from_index_fn(n, |_| rng.gen())
}

pub(crate) fn random_permutation_matrix(rng: &mut ChaCha8Rng, n: usize) -> Gf2Matrix {
    let mut perm: Vec<usize> = (0..n).collect();
    perm.shuffle(rng);
    Gf2Matrix::permutation(&perm).expect("shuffled identity")
}

fn random_vector(rng: &mut ChaCha8Rng, n: usize) -> Gf2Vector {
    Gf2Vector::from_bits(n, rng.gen::<u64>() & ((1 << n) - 1)).expect("masked")
}

/// Runs the full pipeline: f = x.pi(y) + g(y), then f'(z) = f(z OA + alpha)
/// + beta.z + zeta. The output is re-verified bent-negabent with
/// deg(f') = deg(f) before it is returned.
pub fn build_bent_negabent(recipe: &ConstructionRecipe) -> Result<BooleanFunction, ConstructError> {
    recipe.validate()?;
    let f = mm_function(recipe.m, &recipe.matrix, &recipe.g)?;
    let canonical = canonical_form(recipe.m)?;
    let oa = recipe.orth.mul(&canonical.a)?;
    let built = f.affine_compose(&oa, &recipe.alpha, &recipe.beta, recipe.zeta)?;
    if !classify::is_bent_negabent(&built) {
        return Err(ConstructError::VerificationFailed(
            "output is not bent-negabent".into(),
        ));
    }
    let (df, dbuilt) = (f.degree(), built.degree());
    if dbuilt != df {
        return Err(ConstructError::VerificationFailed(format!(
            "degree changed from {df} to {dbuilt}"
        )));
    }
    Ok(built)
}

/// A constructed function together with its provenance.
#[derive(Debug, Clone)]
pub struct Constructed {
    pub recipe: ConstructionRecipe,
    pub function: BooleanFunction,
    pub degree: usize,
}

/// Builds a bent-negabent function on 2m variables of degree exactly d,
/// 2 <= d <= m: g is the monomial y_1..y_d plus seeded terms of lower degree.
pub fn degree_targeted_construct(
    m: usize,
    d: usize,
    seed: u64,
) -> Result<Constructed, ConstructError> {
    check_m(m)?;
    if d < 2 || d > m {
        return Err(ConstructError::DegreeOutOfRange { d, m });
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);

    // random tail of degree < d, plus the top monomial
    let noise = random_function_with(&mut rng, m);
    let mut monomials: std::collections::BTreeSet<u32> = noise
        .anf()
        .monomials()
        .filter(|mono| (mono.count_ones() as usize) < d)
        .collect();
    monomials.insert((1 << d) - 1);
    let g = AnfPolynomial::new(m, monomials)
        .expect("masks fit in m vars")
        .to_function();
    debug_assert_eq!(g.degree(), d);

    let recipe = ConstructionRecipe {
        m,
        matrix: make_complete_linear_map(m, rng.gen())?,
        g,
        orth: random_permutation_matrix(&mut rng, 2 * m),
        alpha: random_vector(&mut rng, 2 * m),
        beta: random_vector(&mut rng, 2 * m),
        zeta: rng.gen(),
    };
    let function = build_bent_negabent(&recipe)?;
    let degree = function.degree();
    if degree != d {
        return Err(ConstructError::VerificationFailed(format!(
            "requested degree {d}, built {degree}"
        )));
    }
    Ok(Constructed {
        recipe,
        function,
        degree,
    })
}

/// Parses g from its recipe string over y-variables ("y1y2 + y3", "0").
pub fn parse_g_anf(s: &str, m: usize) -> Result<BooleanFunction, ConstructError> {
    let (monomials, max_var) = parse_terms(s, |letter, k| {
        if letter == 'y' && k >= 1 {
            Some(k)
        } else {
            None
        }
    })?;
    if max_var > m {
        return Err(ConstructError::RecipeFormat(format!(
            "g uses y{max_var} but m={m}"
        )));
    }
    Ok(AnfPolynomial::new(m, monomials)?.to_function())
}

// --- recipe wire format -----------------------------------------------------

#[derive(Serialize, Deserialize)]
struct RecipeWire {
    m: usize,
    #[serde(rename = "M")]
    matrix: Vec<Vec<u8>>,
    g_anf: String,
    #[serde(rename = "O")]
    orth: String,
    alpha: String,
    beta: String,
    zeta: u8,
}

fn orth_to_wire(orth: &Gf2Matrix) -> String {
    match orth.as_permutation() {
        Some(perm) => format!(
            "perm:{}",
            perm.iter()
                .map(usize::to_string)
                .collect::<Vec<_>>()
                .join(",")
        ),
        None => format!("rows:{}", orth.to_string().replace('\n', ";")),
    }
}

fn orth_from_wire(s: &str) -> Result<Gf2Matrix, ConstructError> {
    if let Some(rest) = s.strip_prefix("perm:") {
        let perm: Vec<usize> = rest
            .split(',')
            .map(|t| t.trim().parse::<usize>())
            .collect::<Result<_, _>>()
            .map_err(|e| ConstructError::RecipeFormat(format!("bad permutation: {e}")))?;
        Ok(Gf2Matrix::permutation(&perm)?)
    } else if let Some(rest) = s.strip_prefix("rows:") {
        Ok(Gf2Matrix::from_text(&rest.replace(';', "\n"))?)
    } else {
        Err(ConstructError::RecipeFormat(
            "O must start with perm: or rows:".into(),
        ))
    }
}

impl From<&ConstructionRecipe> for RecipeWire {
    fn from(r: &ConstructionRecipe) -> Self {
        RecipeWire {
            m: r.m,
            matrix: r.matrix.entries(),
            g_anf: r.g.anf().to_letter_string('y'),
            orth: orth_to_wire(&r.orth),
            alpha: r.alpha.to_hex(),
            beta: r.beta.to_hex(),
            zeta: r.zeta.into(),
        }
    }
}

impl TryFrom<RecipeWire> for ConstructionRecipe {
    type Error = ConstructError;

    fn try_from(w: RecipeWire) -> Result<Self, Self::Error> {
        check_m(w.m)?;
        let n = 2 * w.m;
        if w.zeta > 1 {
            return Err(ConstructError::RecipeFormat("zeta must be 0 or 1".into()));
        }
        Ok(ConstructionRecipe {
            m: w.m,
            matrix: Gf2Matrix::from_entries(&w.matrix)?,
            g: parse_g_anf(&w.g_anf, w.m)?,
            orth: orth_from_wire(&w.orth)?,
            alpha: Gf2Vector::from_hex(n, &w.alpha)?,
            beta: Gf2Vector::from_hex(n, &w.beta)?,
            zeta: w.zeta == 1,
        })
    }
}

impl Serialize for ConstructionRecipe {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        RecipeWire::from(self).serialize(serializer)
    }
}

impl<'de> Deserialize<'de> for ConstructionRecipe {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> Result<Self, D::Error> {
        let wire = RecipeWire::deserialize(deserializer)?;
        ConstructionRecipe::try_from(wire).map_err(serde::de::Error::custom)
    }
}

impl fmt::Display for ConstructionRecipe {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "m={} M=[{}] g={} O={} alpha={} beta={} zeta={}",
            self.m,
            self.matrix.to_string().replace('\n', ";"),
            self.g.anf().to_letter_string('y'),
            orth_to_wire(&self.orth),
            self.alpha.to_hex(),
            self.beta.to_hex(),
            u8::from(self.zeta)
        )
    }
}
