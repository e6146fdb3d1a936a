//! Verification campaigns: exhaustive sweeps at small sizes, seeded random
//! sweeps above, each producing a machine-readable pass/fail record with
//! shrunk counterexamples (none are expected).

use std::fmt;
use std::str::FromStr;
use std::time::Instant;

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::Serialize;
use thiserror::Error;

use crate::boolfun::{sigma2_table, BooleanFunction};
use crate::classify::{
    self, extend_odd, is_bent, is_bent_negabent, is_negabent, is_semibent,
    negabent_distribution_alternatives, odd_decompose, OddDecomposition,
};
use crate::construct::{
    self, canonical_form, degree_targeted_construct, lambda_matrix, ConstructError,
};
use crate::gf2::Gf2Vector;
use crate::spectra::{
    nega_autocorrelations_vanish, nega_transform_direct, nega_transform_fast, walsh_transform,
    GaussianInt,
};

#[derive(Debug, Error)]
pub enum HarnessError {
    #[error("unknown claim id {0:?}")]
    UnknownClaim(String),
    #[error("invalid campaign: {0}")]
    InvalidSpec(String),
    #[error("cannot enumerate negabent functions beyond n=4, got n={0}")]
    EnumerationTooLarge(usize),
    #[error(transparent)]
    Construct(#[from] ConstructError),
}

/// One verifiable claim. Sizes are n (variables) except for the construction
/// claims, where the size is m = n/2.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum ClaimId {
    /// n even: f negabent iff f + sigma_2 bent.
    ThmEven,
    /// n odd: negabent iff semibent-with-complement-asymmetry iff two bent
    /// halves iff bent (n+1)-extension, all pairwise.
    ThmOdd1234,
    /// negabent nega-spectra take at most the four admissible values.
    LemSpectrumValues,
    /// even-n nega-spectrum distribution is one of the two count vectors.
    ThmDistEven,
    /// odd-n nega-spectrum distribution is one of the two count vectors.
    ThmDistOdd,
    /// bent-negabent is closed under adding sigma_2.
    CorSigma2Closure,
    /// sigma_2(x) = h(xA+b)+eps pointwise, and A*A = I.
    Sigma2Canonical,
    /// the construction yields bent-negabent functions of the target degree.
    Thm5Construct,
    /// duals of constructed functions are bent-negabent, with the degree laws.
    DualClosure,
    /// negabent degree is at most ceil(n/2).
    DegBound,
    /// spectral, autocorrelation, and direct-transform negabent tests agree;
    /// fast and direct nega transforms agree elementwise.
    NacCriterion,
    /// wt(x) mod 4 = sigma_1(x) + 2 sigma_2(x) pointwise.
    WtMod4,
}

impl ClaimId {
    pub const ALL: [ClaimId; 12] = [
        ClaimId::ThmEven,
        ClaimId::ThmOdd1234,
        ClaimId::LemSpectrumValues,
        ClaimId::ThmDistEven,
        ClaimId::ThmDistOdd,
        ClaimId::CorSigma2Closure,
        ClaimId::Sigma2Canonical,
        ClaimId::Thm5Construct,
        ClaimId::DualClosure,
        ClaimId::DegBound,
        ClaimId::NacCriterion,
        ClaimId::WtMod4,
    ];

    pub fn name(self) -> &'static str {
        match self {
            ClaimId::ThmEven => "THM-EVEN",
            ClaimId::ThmOdd1234 => "THM-ODD-1234",
            ClaimId::LemSpectrumValues => "LEM-SPECTRUM-VALUES",
            ClaimId::ThmDistEven => "THM-DIST-EVEN",
            ClaimId::ThmDistOdd => "THM-DIST-ODD",
            ClaimId::CorSigma2Closure => "COR-SIGMA2-CLOSURE",
            ClaimId::Sigma2Canonical => "SIGMA2-CANONICAL",
            ClaimId::Thm5Construct => "THM5-CONSTRUCT",
            ClaimId::DualClosure => "DUAL-CLOSURE",
            ClaimId::DegBound => "DEG-BOUND",
            ClaimId::NacCriterion => "NAC-CRITERION",
            ClaimId::WtMod4 => "WTMOD4",
        }
    }

    /// Claims whose size parameter is m rather than n.
    pub fn size_is_m(self) -> bool {
        matches!(
            self,
            ClaimId::Sigma2Canonical | ClaimId::Thm5Construct | ClaimId::DualClosure
        )
    }
}

impl fmt::Display for ClaimId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for ClaimId {
    type Err = HarnessError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        ClaimId::ALL
            .into_iter()
            .find(|c| c.name().eq_ignore_ascii_case(s))
            .ok_or_else(|| HarnessError::UnknownClaim(s.to_string()))
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Mode {
    Exhaustive,
    Random,
}

impl Mode {
    pub fn name(self) -> &'static str {
        match self {
            Mode::Exhaustive => "exhaustive",
            Mode::Random => "random",
        }
    }
}

#[derive(Debug, Clone)]
pub struct CampaignSpec {
    pub claim: ClaimId,
    /// n, or m for the construction claims.
    pub size: usize,
    pub mode: Mode,
    /// Random-mode population size (seeds for the construction claims).
    pub samples: u64,
    pub seed: u64,
}

#[derive(Debug, Clone, Serialize)]
pub struct CampaignResult {
    pub claim: String,
    pub size: usize,
    pub mode: String,
    pub seed: u64,
    pub tested: u64,
    /// Shrunk counterexample truth tables (hex), with context where needed.
    pub violations: Vec<String>,
    pub wall_ms: u64,
}

impl CampaignResult {
    pub fn passed(&self) -> bool {
        self.violations.is_empty()
    }
}

/// Deterministic counter-based random function: one independent stream per
/// (seed, counter) pair, so sweeps can run in parallel and replay exactly.
pub fn random_function(n: usize, seed: u64, counter: u64) -> BooleanFunction {
    let mut rng = stream(seed, counter, 0);
    BooleanFunction::from_index_fn(n, |_| rng.gen())
}

/// Seeded negabent sampler for any n: even n lifts a random Maiorana-
/// McFarland bent function by sigma_2; odd n assembles two random bent halves
/// through the parity substitution and shifts by sigma_2.
pub fn random_negabent(n: usize, seed: u64, counter: u64) -> BooleanFunction {
    let mut rng = stream(seed, counter, 1);
    let f = if n == 1 {
        // every 1-variable function is negabent
        BooleanFunction::from_index_fn(1, |_| rng.gen())
    } else if n % 2 == 0 {
        &random_bent(&mut rng, n) ^ &sigma2_table(n)
    } else {
        let parts = OddDecomposition {
            g: random_bent(&mut rng, n - 1),
            h: random_bent(&mut rng, n - 1),
        };
        let zero = Gf2Vector::zero(n);
        let f1 = parts
            .recombine()
            .affine_compose(&lambda_matrix(n), &zero, &zero, false)
            .expect("square");
        &f1 ^ &sigma2_table(n)
    };
    assert!(is_negabent(&f), "negabent sampler produced a non-negabent function");
    f
}

fn stream(seed: u64, counter: u64, tag: u8) -> ChaCha8Rng {
    let mut key = [0u8; 32];
    key[..8].copy_from_slice(&seed.to_le_bytes());
    key[8..16].copy_from_slice(&counter.to_le_bytes());
    key[16] = tag;
    ChaCha8Rng::from_seed(key)
}

/// Random bent function on even n via x.pi(y) + g(y) with a shuffled
/// permutation pi.
fn random_bent(rng: &mut ChaCha8Rng, n: usize) -> BooleanFunction {
    debug_assert!(n % 2 == 0 && n >= 2);
    let m = n / 2;
    let mut images: Vec<u32> = (0..1u32 << m).collect();
    images.shuffle(rng);
    let g = BooleanFunction::from_index_fn(m, |_| rng.gen());
    construct::mm_from_images(m, &images, &g)
}

/// Exactly the negabent functions on n <= 4 variables. Even n enumerates
/// bent functions and shifts by sigma_2; odd n filters directly.
pub fn enumerate_negabent(n: usize) -> Result<Vec<BooleanFunction>, HarnessError> {
    if n == 0 || n > 4 {
        return Err(HarnessError::EnumerationTooLarge(n));
    }
    let total = 1u64 << (1u32 << n);
    let out: Vec<BooleanFunction> = if n % 2 == 0 {
        let sigma2 = sigma2_table(n);
        (0..total)
            .into_par_iter()
            .filter_map(|code| {
                let g = BooleanFunction::from_u64_table(n, code).expect("code in range");
                is_bent(&g).then(|| &g ^ &sigma2)
            })
            .collect()
    } else {
        (0..total)
            .into_par_iter()
            .filter_map(|code| {
                let f = BooleanFunction::from_u64_table(n, code).expect("code in range");
                is_negabent(&f).then_some(f)
            })
            .collect()
    };
    // classical counts, cross-checked while they are cheap to know
    match n {
        1 => assert_eq!(out.len(), 4),
        2 => assert_eq!(out.len(), 8),
        4 => assert_eq!(out.len(), 896),
        _ => {}
    }
    Ok(out)
}

/// Greedy shrink: clear table bits one at a time while the violation holds.
pub fn shrink_violation(
    f: &BooleanFunction,
    still_violates: impl Fn(&BooleanFunction) -> bool,
) -> BooleanFunction {
    let mut current = f.clone();
    loop {
        let mut improved = false;
        for idx in 0..current.table_len() {
            if current.get(idx) {
                let mut candidate = current.clone();
                candidate.set(idx, false);
                if still_violates(&candidate) {
                    current = candidate;
                    improved = true;
                }
            }
        }
        if !improved {
            return current;
        }
    }
}

pub fn run_campaign(spec: &CampaignSpec) -> Result<CampaignResult, HarnessError> {
    let start = Instant::now();
    let (tested, violations) = dispatch(spec)?;
    Ok(CampaignResult {
        claim: spec.claim.name().to_string(),
        size: spec.size,
        mode: spec.mode.name().to_string(),
        seed: spec.seed,
        tested,
        violations,
        wall_ms: start.elapsed().as_millis() as u64,
    })
}

type Sweep = (u64, Vec<String>);

fn dispatch(spec: &CampaignSpec) -> Result<Sweep, HarnessError> {
    match spec.claim {
        ClaimId::ThmEven => {
            require_parity(spec, 0)?;
            let sigma2 = sigma2_table(spec.size);
            function_sweep(spec, move |f| {
                is_negabent(f) == is_bent(&(f ^ &sigma2))
            })
        }
        ClaimId::ThmOdd1234 => {
            require_parity(spec, 1)?;
            if spec.size < 3 {
                return Err(HarnessError::InvalidSpec(format!(
                    "{} needs n >= 3 (the decomposition halves must have variables), got {}",
                    spec.claim, spec.size
                )));
            }
            let sigma2 = sigma2_table(spec.size);
            function_sweep(spec, move |f| {
                let negabent = is_negabent(f);
                let f1 = f ^ &sigma2;
                let w = walsh_transform(&f1);
                let full = f.table_len() - 1;
                let asym = (0..f.table_len())
                    .all(|u| w.value(u).abs() != w.value(u ^ full).abs());
                let cond2 = is_semibent(&f1).expect("n is odd") && asym;
                let parts = odd_decompose(f).expect("n odd and >= 3");
                let cond3 = is_bent(&parts.g) && is_bent(&parts.h);
                let cond4 = is_bent(&extend_odd(f).expect("n is odd"));
                negabent == cond2 && cond2 == cond3 && cond3 == cond4
            })
        }
        ClaimId::LemSpectrumValues => {
            let allowed = admissible_values(spec.size);
            negabent_sweep(spec, move |f| {
                nega_transform_fast(f)
                    .histogram()
                    .keys()
                    .all(|v| allowed.contains(v))
            })
        }
        ClaimId::ThmDistEven => {
            require_parity(spec, 0)?;
            negabent_sweep(spec, distribution_check(spec.size))
        }
        ClaimId::ThmDistOdd => {
            require_parity(spec, 1)?;
            negabent_sweep(spec, distribution_check(spec.size))
        }
        ClaimId::CorSigma2Closure => {
            require_parity(spec, 0)?;
            let sigma2 = sigma2_table(spec.size);
            match spec.mode {
                Mode::Exhaustive => function_sweep(spec, move |f| {
                    !is_bent_negabent(f) || is_bent_negabent(&(f ^ &sigma2))
                }),
                // random mode draws from the construction, the only generator
                // of bent-negabent functions we have at arbitrary even n
                Mode::Random => {
                    if spec.size < 4 {
                        return Err(HarnessError::InvalidSpec(format!(
                            "random {} needs n >= 4, got {}",
                            spec.claim, spec.size
                        )));
                    }
                    let m = spec.size / 2;
                    constructed_sweep(spec, m, move |built, _d| {
                        if is_bent_negabent(&(&built.function ^ &sigma2)) {
                            None
                        } else {
                            Some("sigma2 shift left the class".to_string())
                        }
                    })
                }
            }
        }
        ClaimId::Sigma2Canonical => sigma2_canonical_sweep(spec),
        ClaimId::Thm5Construct => {
            let m = require_m(spec)?;
            constructed_sweep(spec, m, move |built, d| {
                if !is_bent_negabent(&built.function) {
                    Some("output is not bent-negabent".to_string())
                } else if built.degree != d {
                    Some(format!("degree {} instead of {d}", built.degree))
                } else {
                    None
                }
            })
        }
        ClaimId::DualClosure => {
            let m = require_m(spec)?;
            constructed_sweep(spec, m, move |built, d| {
                let dual = match classify::dual(&built.function) {
                    Ok(dual) => dual,
                    Err(e) => return Some(format!("dual failed: {e}")),
                };
                if !is_bent_negabent(&dual) {
                    return Some("dual is not bent-negabent".to_string());
                }
                let dual_degree = dual.degree();
                if d == m && dual_degree != m {
                    return Some(format!("dual of a degree-m function has degree {dual_degree}"));
                }
                // (n/2 - deg f)(deg dual - 1) >= n/2 - deg dual
                if dual_degree >= 2 {
                    let half = m as i64;
                    let lhs = (half - d as i64) * (dual_degree as i64 - 1);
                    let rhs = half - dual_degree as i64;
                    if lhs < rhs {
                        return Some(format!(
                            "dual degree inequality fails: deg={d}, dual deg={dual_degree}"
                        ));
                    }
                }
                None
            })
        }
        ClaimId::DegBound => {
            let bound = (spec.size + 1) / 2;
            negabent_sweep(spec, move |f| f.degree() <= bound)
        }
        ClaimId::NacCriterion => function_sweep(spec, |f| {
            let fast = nega_transform_fast(f);
            let direct = nega_transform_direct(f);
            if fast.values() != direct.values() {
                return false;
            }
            let spectral = fast.is_flat();
            spectral == nega_autocorrelations_vanish(f) && spectral == direct.is_flat()
        }),
        ClaimId::WtMod4 => wt_mod4_sweep(spec),
    }
}

fn require_parity(spec: &CampaignSpec, want: usize) -> Result<(), HarnessError> {
    if spec.size == 0 || spec.size % 2 != want {
        return Err(HarnessError::InvalidSpec(format!(
            "{} needs {} n, got {}",
            spec.claim,
            if want == 0 { "even" } else { "odd" },
            spec.size
        )));
    }
    Ok(())
}

fn require_m(spec: &CampaignSpec) -> Result<usize, HarnessError> {
    if spec.mode == Mode::Exhaustive {
        return Err(HarnessError::InvalidSpec(format!(
            "{} has no exhaustive mode; each sample is one seeded build",
            spec.claim
        )));
    }
    Ok(spec.size)
}

/// The four values a negabent nega-spectrum may take, unnormalized.
fn admissible_values(n: usize) -> Vec<GaussianInt> {
    if n % 2 == 0 {
        let s = 1i64 << (n / 2);
        vec![
            GaussianInt::new(s, 0),
            GaussianInt::new(-s, 0),
            GaussianInt::new(0, s),
            GaussianInt::new(0, -s),
        ]
    } else {
        let s = 1i64 << ((n - 1) / 2);
        vec![
            GaussianInt::new(s, s),
            GaussianInt::new(s, -s),
            GaussianInt::new(-s, s),
            GaussianInt::new(-s, -s),
        ]
    }
}

fn distribution_check(n: usize) -> impl Fn(&BooleanFunction) -> bool + Sync {
    let [a, b] = negabent_distribution_alternatives(n);
    move |f| {
        let hist = nega_transform_fast(f).histogram();
        (hist == a) != (hist == b)
    }
}

/// Sweeps arbitrary functions: every function on n <= 4 in exhaustive mode,
/// seeded random functions otherwise. Violations are shrunk and recorded as
/// hex truth tables.
fn function_sweep(
    spec: &CampaignSpec,
    ok: impl Fn(&BooleanFunction) -> bool + Sync,
) -> Result<Sweep, HarnessError> {
    let n = spec.size;
    match spec.mode {
        Mode::Exhaustive => {
            if n > 4 {
                return Err(HarnessError::InvalidSpec(format!(
                    "exhaustive function sweeps stop at n=4 (2^16 functions); got n={n}"
                )));
            }
            let total = 1u64 << (1u32 << n);
            let violations = (0..total)
                .into_par_iter()
                .filter_map(|code| {
                    let f = BooleanFunction::from_u64_table(n, code).expect("code in range");
                    if ok(&f) {
                        None
                    } else {
                        Some(shrink_violation(&f, |c| !ok(c)).to_hex())
                    }
                })
                .collect();
            Ok((total, violations))
        }
        Mode::Random => {
            let violations = (0..spec.samples)
                .into_par_iter()
                .filter_map(|k| {
                    let f = random_function(n, spec.seed, k);
                    if ok(&f) {
                        None
                    } else {
                        Some(shrink_violation(&f, |c| !ok(c)).to_hex())
                    }
                })
                .collect();
            Ok((spec.samples, violations))
        }
    }
}

/// Sweeps negabent populations: the full enumeration for n <= 4 in exhaustive
/// mode, the seeded negabent sampler otherwise.
fn negabent_sweep(
    spec: &CampaignSpec,
    ok: impl Fn(&BooleanFunction) -> bool + Sync,
) -> Result<Sweep, HarnessError> {
    let n = spec.size;
    if n == 0 {
        return Err(HarnessError::InvalidSpec("n must be positive".into()));
    }
    match spec.mode {
        Mode::Exhaustive => {
            let population = enumerate_negabent(n)?;
            let tested = population.len() as u64;
            let violations = population
                .into_par_iter()
                .filter_map(|f| (!ok(&f)).then(|| f.to_hex()))
                .collect();
            Ok((tested, violations))
        }
        Mode::Random => {
            let violations = (0..spec.samples)
                .into_par_iter()
                .filter_map(|k| {
                    let f = random_negabent(n, spec.seed, k);
                    (!ok(&f)).then(|| f.to_hex())
                })
                .collect();
            Ok((spec.samples, violations))
        }
    }
}

/// Sweeps seeded constructions; degrees cycle through 2..=m across samples.
fn constructed_sweep(
    spec: &CampaignSpec,
    m: usize,
    check: impl Fn(&construct::Constructed, usize) -> Option<String> + Sync,
) -> Result<Sweep, HarnessError> {
    if m < 2 || m > construct::MAX_M {
        return Err(HarnessError::InvalidSpec(format!(
            "construction size m={m} outside 2..={}",
            construct::MAX_M
        )));
    }
    let violations = (0..spec.samples)
        .into_par_iter()
        .filter_map(|k| {
            let d = 2 + (k as usize % (m - 1));
            let seed = spec.seed.wrapping_add(k.wrapping_mul(0x9E37_79B9_7F4A_7C15));
            match degree_targeted_construct(m, d, seed) {
                Ok(built) => check(&built, d)
                    .map(|why| format!("tt={} ({why}; m={m} d={d} seed={seed})", built.function.to_hex())),
                Err(e) => Some(format!("build failed: {e} (m={m} d={d} seed={seed})")),
            }
        })
        .collect();
    Ok((spec.samples, violations))
}

fn sigma2_canonical_sweep(spec: &CampaignSpec) -> Result<Sweep, HarnessError> {
    let m = spec.size;
    if m < 2 || m > construct::MAX_M {
        return Err(HarnessError::InvalidSpec(format!(
            "m={m} outside 2..={}",
            construct::MAX_M
        )));
    }
    if spec.mode == Mode::Exhaustive && 2 * m > 16 {
        return Err(HarnessError::InvalidSpec(format!(
            "exhaustive canonical check stops at 2m=16; got m={m}"
        )));
    }
    // the constructor itself performs the pointwise check and the A*A test
    let tested = if 2 * m <= 16 { 1u64 << (2 * m) } else { 4096 };
    match canonical_form(m) {
        Ok(_) => Ok((tested, Vec::new())),
        Err(e) => Ok((tested, vec![format!("canonical data rejected: {e}")])),
    }
}

fn wt_mod4_sweep(spec: &CampaignSpec) -> Result<Sweep, HarnessError> {
    let n = spec.size;
    if n == 0 || n > crate::boolfun::MAX_VARS {
        return Err(HarnessError::InvalidSpec(format!("n={n} out of range")));
    }
    let s1 = BooleanFunction::sigma_d(n, 1).expect("n >= 1");
    let s2 = sigma2_table(n);
    let point_ok = |x: u32| {
        x.count_ones() % 4 == u32::from(s1.get(x)) + 2 * u32::from(s2.get(x))
    };
    match spec.mode {
        Mode::Exhaustive => {
            if n > 16 {
                return Err(HarnessError::InvalidSpec(format!(
                    "exhaustive pointwise sweeps stop at n=16; got n={n}"
                )));
            }
            let total = 1u64 << n;
            let violations = (0..total as u32)
                .into_par_iter()
                .filter_map(|x| (!point_ok(x)).then(|| format!("x={x:0width$b}", width = n)))
                .collect();
            Ok((total, violations))
        }
        Mode::Random => {
            let violations = (0..spec.samples)
                .into_par_iter()
                .filter_map(|k| {
                    let x = stream(spec.seed, k, 2).gen_range(0..1u32 << n);
                    (!point_ok(x)).then(|| format!("x={x:0width$b}", width = n))
                })
                .collect();
            Ok((spec.samples, violations))
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn spec(claim: ClaimId, size: usize, mode: Mode, samples: u64, seed: u64) -> CampaignSpec {
        CampaignSpec {
            claim,
            size,
            mode,
            samples,
            seed,
        }
    }

    #[test]
    fn claim_names_roundtrip() {
        for claim in ClaimId::ALL {
            assert_eq!(claim.name().parse::<ClaimId>().unwrap(), claim);
        }
        assert!("THM-BOGUS".parse::<ClaimId>().is_err());
    }

    #[test]
    fn thm_even_exhaustive_n2() {
        let result =
            run_campaign(&spec(ClaimId::ThmEven, 2, Mode::Exhaustive, 0, 0)).unwrap();
        assert_eq!(result.tested, 16);
        assert!(result.passed());
    }

    #[test]
    fn thm_odd_exhaustive_n3() {
        let result =
            run_campaign(&spec(ClaimId::ThmOdd1234, 3, Mode::Exhaustive, 0, 0)).unwrap();
        assert_eq!(result.tested, 256);
        assert!(result.passed());
    }

    #[test]
    fn parity_and_feasibility_errors() {
        assert!(run_campaign(&spec(ClaimId::ThmEven, 3, Mode::Exhaustive, 0, 0)).is_err());
        assert!(run_campaign(&spec(ClaimId::ThmOdd1234, 4, Mode::Exhaustive, 0, 0)).is_err());
        assert!(run_campaign(&spec(ClaimId::ThmOdd1234, 1, Mode::Exhaustive, 0, 0)).is_err());
        assert!(run_campaign(&spec(ClaimId::ThmEven, 6, Mode::Exhaustive, 0, 0)).is_err());
        assert!(run_campaign(&spec(ClaimId::WtMod4, 20, Mode::Exhaustive, 0, 0)).is_err());
        assert!(run_campaign(&spec(ClaimId::Thm5Construct, 4, Mode::Exhaustive, 0, 0)).is_err());
    }

    #[test]
    fn wt_mod4_exhaustive_n12() {
        let result = run_campaign(&spec(ClaimId::WtMod4, 12, Mode::Exhaustive, 0, 0)).unwrap();
        assert_eq!(result.tested, 4096);
        assert!(result.passed());
    }

    #[test]
    fn nac_criterion_small_random() {
        let result =
            run_campaign(&spec(ClaimId::NacCriterion, 5, Mode::Random, 40, 7)).unwrap();
        assert_eq!(result.tested, 40);
        assert!(result.passed());
    }

    #[test]
    fn distribution_campaigns_small() {
        let even =
            run_campaign(&spec(ClaimId::ThmDistEven, 2, Mode::Exhaustive, 0, 0)).unwrap();
        assert_eq!(even.tested, 8);
        assert!(even.passed());

        let odd =
            run_campaign(&spec(ClaimId::ThmDistOdd, 3, Mode::Exhaustive, 0, 0)).unwrap();
        assert_eq!(odd.tested, 64);
        assert!(odd.passed());
    }

    #[test]
    fn spectrum_values_and_degree_bound_small() {
        for n in [1usize, 2, 3, 4] {
            let r = run_campaign(&spec(ClaimId::LemSpectrumValues, n, Mode::Exhaustive, 0, 0))
                .unwrap();
            assert!(r.passed(), "spectrum values at n={n}");
            let r = run_campaign(&spec(ClaimId::DegBound, n, Mode::Exhaustive, 0, 0)).unwrap();
            assert!(r.passed(), "degree bound at n={n}");
        }
    }

    #[test]
    fn sigma2_closure_exhaustive_n2() {
        let r =
            run_campaign(&spec(ClaimId::CorSigma2Closure, 2, Mode::Exhaustive, 0, 0)).unwrap();
        assert_eq!(r.tested, 16);
        assert!(r.passed());
    }

    #[test]
    fn canonical_and_construct_campaigns() {
        let r = run_campaign(&spec(ClaimId::Sigma2Canonical, 5, Mode::Exhaustive, 0, 0)).unwrap();
        assert_eq!(r.tested, 1024);
        assert!(r.passed());

        let r = run_campaign(&spec(ClaimId::Thm5Construct, 3, Mode::Random, 10, 3)).unwrap();
        assert!(r.passed());

        let r = run_campaign(&spec(ClaimId::DualClosure, 3, Mode::Random, 10, 3)).unwrap();
        assert!(r.passed());
    }

    #[test]
    fn enumerate_counts() {
        assert_eq!(enumerate_negabent(1).unwrap().len(), 4);
        assert_eq!(enumerate_negabent(2).unwrap().len(), 8);
        let all3 = enumerate_negabent(3).unwrap();
        assert_eq!(all3.len(), 64);
        for f in &all3 {
            assert!(is_negabent(f));
            assert!(f.degree() <= 2);
        }
        assert!(enumerate_negabent(5).is_err());
    }

    #[test]
    fn negabent_enumeration_n2_is_bent_shift() {
        // the eight negabent functions on two variables are exactly
        // {bent + sigma_2}, and every 2-variable bent function is x1x2 + affine
        let got = enumerate_negabent(2).unwrap();
        let sigma2 = sigma2_table(2);
        for f in &got {
            assert!(is_bent(&(f ^ &sigma2)));
        }
    }

    #[test]
    fn samplers_are_deterministic() {
        let a = random_function(8, 42, 3);
        let b = random_function(8, 42, 3);
        assert_eq!(a, b);
        assert_ne!(a, random_function(8, 42, 4));

        for n in [1usize, 2, 3, 4, 5, 6] {
            let f = random_negabent(n, 9, 0);
            assert_eq!(f, random_negabent(n, 9, 0));
            assert!(is_negabent(&f));
        }
    }

    #[test]
    fn campaign_results_are_reproducible() {
        let s = spec(ClaimId::NacCriterion, 4, Mode::Random, 25, 123);
        let a = run_campaign(&s).unwrap();
        let b = run_campaign(&s).unwrap();
        assert_eq!(a.tested, b.tested);
        assert_eq!(a.violations, b.violations);
        assert_eq!(a.claim, "NAC-CRITERION");
    }

    #[test]
    fn shrinker_reaches_a_local_minimum() {
        // artificial violation: weight >= 3
        let f = BooleanFunction::from_u64_table(3, 0b1011_0110).unwrap();
        let shrunk = shrink_violation(&f, |c| c.weight() >= 3);
        assert_eq!(shrunk.weight(), 3);

        // a violation nothing can shrink stays put
        let g = BooleanFunction::from_u64_table(2, 0b0001).unwrap();
        let same = shrink_violation(&g, |c| c.get(0));
        assert_eq!(same, g);
    }

    #[test]
    fn result_serializes_to_json_line() {
        let r = run_campaign(&spec(ClaimId::ThmEven, 2, Mode::Exhaustive, 0, 0)).unwrap();
        let line = serde_json::to_string(&r).unwrap();
        assert!(line.contains("\"claim\":\"THM-EVEN\""));
        assert!(line.contains("\"violations\":[]"));
    }
}
