//! Classification predicates: bent / semibent / negabent / bent-negabent,
//! duals, the odd-n decomposition and extension, and the negabent spectrum
//! distribution laws.

use std::collections::BTreeMap;

use serde::Serialize;
use thiserror::Error;

use crate::boolfun::{sigma2_table, BooleanFunction};
use crate::construct::lambda_matrix;
use crate::gf2::Gf2Vector;
use crate::spectra::{
    nega_autocorrelations_vanish, nega_transform_fast, walsh_transform, GaussianInt,
};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ClassifyError {
    #[error("{op} is defined only for odd n, got n={n}")]
    EvenVariableCount { op: &'static str, n: usize },
    #[error("{op} needs n >= 3, got n={n}")]
    TooFewVariables { op: &'static str, n: usize },
    #[error("function is not bent")]
    NotBent,
    #[error("function is not negabent")]
    NotNegabent,
}

/// Bent: n even and every |W(u)| = 2^(n/2).
pub fn is_bent(f: &BooleanFunction) -> bool {
    let n = f.n();
    if n % 2 != 0 {
        return false;
    }
    let target = 1i64 << (n / 2);
    walsh_transform(f).values().iter().all(|v| v.abs() == target)
}

/// Semibent (odd n only): every W(u) lies in {0, +-2^((n+1)/2)}.
pub fn is_semibent(f: &BooleanFunction) -> Result<bool, ClassifyError> {
    let n = f.n();
    if n % 2 == 0 {
        return Err(ClassifyError::EvenVariableCount {
            op: "is_semibent",
            n,
        });
    }
    let target = 1i64 << ((n + 1) / 2);
    Ok(walsh_transform(f)
        .values()
        .iter()
        .all(|&v| v == 0 || v.abs() == target))
}

/// Negabent: every |N(u)|^2 = 2^n.
pub fn is_negabent(f: &BooleanFunction) -> bool {
    let flat = nega_transform_fast(f).is_flat();
    // cross-check against the nega-autocorrelation criterion where cheap
    if cfg!(debug_assertions) && f.n() <= 6 {
        assert_eq!(
            flat,
            nega_autocorrelations_vanish(f),
            "spectral and autocorrelation negabent tests disagree"
        );
    }
    flat
}

pub fn is_bent_negabent(f: &BooleanFunction) -> bool {
    is_bent(f) && is_negabent(f)
}

/// The dual of a bent function: dual(u) = 0 exactly when W(u) = +2^(n/2).
pub fn dual(f: &BooleanFunction) -> Result<BooleanFunction, ClassifyError> {
    let n = f.n();
    if n % 2 != 0 {
        return Err(ClassifyError::NotBent);
    }
    let target = 1i64 << (n / 2);
    let w = walsh_transform(f);
    let mut out = BooleanFunction::zero(n);
    for u in 0..f.table_len() {
        match w.value(u) {
            v if v == target => {}
            v if v == -target => out.set(u, true),
            _ => return Err(ClassifyError::NotBent),
        }
    }
    Ok(out)
}

/// The two bent halves of (f + sigma_2) composed with the all-ones-column
/// involution, split on the last variable.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct OddDecomposition {
    pub g: BooleanFunction,
    pub h: BooleanFunction,
}

impl OddDecomposition {
    /// The n-variable function (1 + x_n) g + x_n h.
    pub fn recombine(&self) -> BooleanFunction {
        let half_vars = self.g.n();
        BooleanFunction::from_index_fn(half_vars + 1, |idx| {
            let x = idx & ((1 << half_vars) - 1);
            if idx >> half_vars & 1 == 0 {
                self.g.get(x)
            } else {
                self.h.get(x)
            }
        })
    }

    /// Undoes the whole decomposition: recombine, recompose with the
    /// involution, and the result is f + sigma_2 again.
    pub fn reassemble(&self) -> BooleanFunction {
        let n = self.g.n() + 1;
        let lambda = lambda_matrix(n);
        let zero = Gf2Vector::zero(n);
        self.recombine()
            .affine_compose(&lambda, &zero, &zero, false)
            .expect("dimensions match by construction")
    }
}

pub fn odd_decompose(f: &BooleanFunction) -> Result<OddDecomposition, ClassifyError> {
    let n = f.n();
    if n % 2 == 0 {
        return Err(ClassifyError::EvenVariableCount {
            op: "odd_decompose",
            n,
        });
    }
    if n < 3 {
        // the halves would have zero variables
        return Err(ClassifyError::TooFewVariables {
            op: "odd_decompose",
            n,
        });
    }
    let f1 = f ^ &sigma2_table(n);
    let lambda = lambda_matrix(n);
    let zero = Gf2Vector::zero(n);
    let f2 = f1
        .affine_compose(&lambda, &zero, &zero, false)
        .expect("lambda is n x n");
    let half = 1u32 << (n - 1);
    let g = BooleanFunction::from_index_fn(n - 1, |x| f2.get(x));
    let h = BooleanFunction::from_index_fn(n - 1, |x| f2.get(x | half));
    Ok(OddDecomposition { g, h })
}

/// The (n+1)-variable function f(x) + sigma_2(x) + sigma_1(x) y; bent exactly
/// when f is negabent (n odd).
pub fn extend_odd(f: &BooleanFunction) -> Result<BooleanFunction, ClassifyError> {
    let n = f.n();
    if n % 2 == 0 {
        return Err(ClassifyError::EvenVariableCount {
            op: "extend_odd",
            n,
        });
    }
    let f1 = f ^ &sigma2_table(n);
    let xmask = (1u32 << n) - 1;
    Ok(BooleanFunction::from_index_fn(n + 1, |idx| {
        let x = idx & xmask;
        let y = idx >> n & 1 == 1;
        f1.get(x) ^ (y && x.count_ones() & 1 == 1)
    }))
}

/// The two admissible nega-spectrum histograms of a negabent function on n
/// variables. Zero counts are omitted so the maps compare directly against
/// measured histograms.
pub fn negabent_distribution_alternatives(n: usize) -> [BTreeMap<GaussianInt, u64>; 2] {
    // counts 2^(n-2) +- 2^(floor(n/2)-1), written over 4 to stay integral at n=1
    let plus = ((1u64 << n) + (1u64 << (n / 2 + 1))) / 4;
    let minus = ((1u64 << n) - (1u64 << (n / 2 + 1))) / 4;
    let mut first = BTreeMap::new();
    let mut second = BTreeMap::new();
    let mut put = |map: &mut BTreeMap<GaussianInt, u64>, v: GaussianInt, count: u64| {
        if count > 0 {
            map.insert(v, count);
        }
    };
    if n % 2 == 0 {
        let s = 1i64 << (n / 2);
        let side = (1u64 << n) / 4;
        for (map, re_plus, re_minus) in [(&mut first, plus, minus), (&mut second, minus, plus)] {
            put(map, GaussianInt::new(s, 0), re_plus);
            put(map, GaussianInt::new(-s, 0), re_minus);
            put(map, GaussianInt::new(0, s), side);
            put(map, GaussianInt::new(0, -s), side);
        }
    } else {
        let s = 1i64 << ((n - 1) / 2);
        for (map, up, down) in [(&mut first, plus, minus), (&mut second, minus, plus)] {
            put(map, GaussianInt::new(s, s), up);
            put(map, GaussianInt::new(s, -s), up);
            put(map, GaussianInt::new(-s, s), down);
            put(map, GaussianInt::new(-s, -s), down);
        }
    }
    [first, second]
}

/// Checks the nega-spectrum distribution of a negabent function against the
/// two admissible count vectors.
pub fn check_distribution(f: &BooleanFunction) -> Result<bool, ClassifyError> {
    let spectrum = nega_transform_fast(f);
    if !spectrum.is_flat() {
        return Err(ClassifyError::NotNegabent);
    }
    let hist = spectrum.histogram();
    let [a, b] = negabent_distribution_alternatives(f.n());
    Ok(hist == a || hist == b)
}

/// deg(f) <= ceil(n/2) for negabent f.
pub fn negabent_degree_bound_check(f: &BooleanFunction) -> Result<bool, ClassifyError> {
    if !is_negabent(f) {
        return Err(ClassifyError::NotNegabent);
    }
    Ok(f.degree() <= (f.n() + 1) / 2)
}

/// Everything the analyzer reports about one function. `is_semibent` is None
/// for even n, where the notion is undefined in this artifact.
#[derive(Debug, Clone, Serialize)]
pub struct ClassificationReport {
    pub n: usize,
    pub degree: usize,
    pub is_bent: bool,
    pub is_semibent: Option<bool>,
    pub is_negabent: bool,
    pub is_bent_negabent: bool,
    pub walsh_hist: BTreeMap<i64, u64>,
    pub nega_hist: BTreeMap<String, u64>,
    /// Spectra are unnormalized; divide by this to recover unit-modulus values.
    pub scale: String,
}

pub fn classify(f: &BooleanFunction) -> ClassificationReport {
    let n = f.n();
    let walsh = walsh_transform(f);
    let nega = nega_transform_fast(f);
    let bent = n % 2 == 0 && {
        let target = 1i64 << (n / 2);
        walsh.values().iter().all(|v| v.abs() == target)
    };
    let negabent = nega.is_flat();
    ClassificationReport {
        n,
        degree: f.degree(),
        is_bent: bent,
        is_semibent: if n % 2 == 1 {
            Some(is_semibent(f).expect("n is odd"))
        } else {
            None
        },
        is_negabent: negabent,
        is_bent_negabent: bent && negabent,
        walsh_hist: walsh.histogram(),
        nega_hist: nega
            .histogram()
            .into_iter()
            .map(|(k, v)| (k.to_string(), v))
            .collect(),
        scale: format!("2^({n}/2)"),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::boolfun::AnfPolynomial;
    use crate::construct;

    fn quadratic_canonical() -> BooleanFunction {
        AnfPolynomial::parse("x1x3 + x2x4", Some(4)).unwrap().to_function()
    }

    #[test]
    fn bent_predicates() {
        assert!(is_bent(&quadratic_canonical()));
        assert!(is_bent(&BooleanFunction::sigma_d(4, 2).unwrap()));
        assert!(!is_bent(&BooleanFunction::zero(4)));
        assert!(!is_bent(&BooleanFunction::zero(3)));
    }

    #[test]
    fn semibent_predicates() {
        let f = AnfPolynomial::parse("x1x2", Some(3)).unwrap().to_function();
        assert!(is_semibent(&f).unwrap());
        assert!(!is_semibent(&BooleanFunction::zero(3)).unwrap());
        assert!(matches!(
            is_semibent(&BooleanFunction::zero(4)),
            Err(ClassifyError::EvenVariableCount { .. })
        ));
    }

    #[test]
    fn affine_functions_are_negabent() {
        for n in 1..=4usize {
            for beta in 0..1u32 << n {
                for c in [false, true] {
                    let f = BooleanFunction::from_index_fn(n, |idx| {
                        ((idx & beta).count_ones() & 1 == 1) ^ c
                    });
                    assert!(is_negabent(&f), "affine beta={beta:b} c={c} n={n}");
                }
            }
        }
    }

    #[test]
    fn negabent_cases() {
        assert!(is_negabent(&BooleanFunction::zero(2)));
        // sigma_2 + sigma_2 = 0 is not bent, so sigma_2 is not negabent (n=4)
        assert!(!is_negabent(&BooleanFunction::sigma_d(4, 2).unwrap()));
    }

    #[test]
    fn bent_negabent_basics() {
        assert!(!is_bent_negabent(&BooleanFunction::zero(4)));
        let built = construct::degree_targeted_construct(2, 2, 1).unwrap();
        assert!(is_bent_negabent(&built.function));
        // adding sigma_2 stays bent-negabent
        let shifted = &built.function ^ &BooleanFunction::sigma_d(4, 2).unwrap();
        assert!(is_bent_negabent(&shifted));
    }

    #[test]
    fn bent_functions_have_the_right_weight() {
        // wt = 2^(n-1) +- 2^(n/2 - 1)
        let w = quadratic_canonical().weight();
        assert!(w == 6 || w == 10);
    }

    #[test]
    fn dual_involution_and_errors() {
        let h = quadratic_canonical();
        let d = dual(&h).unwrap();
        assert!(is_bent(&d));
        assert_eq!(dual(&d).unwrap(), h);
        assert_eq!(dual(&BooleanFunction::zero(4)), Err(ClassifyError::NotBent));
        assert_eq!(dual(&BooleanFunction::zero(3)), Err(ClassifyError::NotBent));
    }

    #[test]
    fn odd_decompose_matches_negabentness_exhaustively() {
        for code in 0u64..256 {
            let f = BooleanFunction::from_u64_table(3, code).unwrap();
            let parts = odd_decompose(&f).unwrap();
            let both_bent = is_bent(&parts.g) && is_bent(&parts.h);
            assert_eq!(both_bent, is_negabent(&f), "tt={code:02x}");
            // reassembly recovers f + sigma_2
            let expect = &f ^ &BooleanFunction::sigma_d(3, 2).unwrap();
            assert_eq!(parts.reassemble(), expect, "tt={code:02x}");
        }
    }

    #[test]
    fn odd_decompose_rejects_bad_sizes() {
        assert!(matches!(
            odd_decompose(&BooleanFunction::zero(4)),
            Err(ClassifyError::EvenVariableCount { .. })
        ));
        assert!(matches!(
            odd_decompose(&BooleanFunction::zero(1)),
            Err(ClassifyError::TooFewVariables { .. })
        ));
    }

    #[test]
    fn extend_odd_cases() {
        // f = 0 on one variable extends to x1 x2, which is bent
        let ext = extend_odd(&BooleanFunction::zero(1)).unwrap();
        assert_eq!(ext.n(), 2);
        let w = walsh_transform(&ext);
        assert_eq!(w.values(), &[2, 2, 2, -2]);
        assert!(is_bent(&ext));

        // parity on three variables is affine, hence negabent, hence extends bent
        let parity = BooleanFunction::sigma_d(3, 1).unwrap();
        assert!(is_bent(&extend_odd(&parity).unwrap()));

        assert!(extend_odd(&BooleanFunction::zero(2)).is_err());
    }

    #[test]
    fn extension_matches_negabentness_exhaustively() {
        for code in 0u64..256 {
            let f = BooleanFunction::from_u64_table(3, code).unwrap();
            assert_eq!(
                is_bent(&extend_odd(&f).unwrap()),
                is_negabent(&f),
                "tt={code:02x}"
            );
        }
    }

    #[test]
    fn distribution_small_cases() {
        // n=1: both values (1 +- i) once
        assert!(check_distribution(&BooleanFunction::zero(1)).unwrap());
        // n=2: counts (2, 0, 1, 1) -- the first alternative
        assert!(check_distribution(&BooleanFunction::zero(2)).unwrap());
        let [a, b] = negabent_distribution_alternatives(2);
        let hist = nega_transform_fast(&BooleanFunction::zero(2)).histogram();
        assert_eq!(hist, a);
        assert_ne!(hist, b);

        assert_eq!(
            check_distribution(&BooleanFunction::sigma_d(4, 2).unwrap()),
            Err(ClassifyError::NotNegabent)
        );
    }

    #[test]
    fn degree_bound_checks() {
        let parity = BooleanFunction::sigma_d(3, 1).unwrap();
        assert!(negabent_degree_bound_check(&parity).unwrap());
        assert_eq!(
            negabent_degree_bound_check(&BooleanFunction::sigma_d(4, 2).unwrap()),
            Err(ClassifyError::NotNegabent)
        );
    }

    #[test]
    fn report_shape() {
        let report = classify(&quadratic_canonical());
        assert_eq!(report.n, 4);
        assert_eq!(report.degree, 2);
        assert!(report.is_bent);
        assert!(report.is_semibent.is_none());
        assert!(!report.is_bent_negabent);
        assert_eq!(report.walsh_hist.values().sum::<u64>(), 16);
        assert_eq!(report.scale, "2^(4/2)");

        let odd = classify(&BooleanFunction::zero(3));
        assert_eq!(odd.is_semibent, Some(false));
        let json = serde_json::to_value(&odd).unwrap();
        assert!(json.get("walsh_hist").is_some());
    }
}
