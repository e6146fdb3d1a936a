//! Exact spectral transforms: Walsh-Hadamard, nega-Hadamard (direct Gaussian
//! sum and the fast route through the sigma_2 shift), and the two
//! autocorrelations.
//!
//! All spectra are unnormalized integers: the textbook 2^(-n/2) factor is
//! irrational for odd n, so it is applied only at display time. A function is
//! bent when every |W(u)| = 2^(n/2) and negabent when every |N(u)|^2 = 2^n.

use std::collections::BTreeMap;
use std::fmt;

use serde::de::{self, SeqAccess, Visitor};
use serde::ser::SerializeTuple;
use serde::{Deserialize, Deserializer, Serialize, Serializer};
use thiserror::Error;

use crate::boolfun::{sigma2_table, BooleanFunction};
use crate::gf2::Gf2Vector;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum SpectraError {
    #[error("point has {got} coordinates but the function has {n} variables")]
    DimensionMismatch { n: usize, got: usize },
}

/// An exact Gaussian integer; the carrier of nega-spectrum values.
#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct GaussianInt {
    pub re: i64,
    pub im: i64,
}

impl GaussianInt {
    pub const ZERO: GaussianInt = GaussianInt { re: 0, im: 0 };

    pub fn new(re: i64, im: i64) -> Self {
        GaussianInt { re, im }
    }

    /// |z|^2 = re^2 + im^2, without floating point.
    pub fn norm_sqr(self) -> i64 {
        self.re * self.re + self.im * self.im
    }

    /// Multiplication by i.
    pub fn times_i(self) -> Self {
        GaussianInt {
            re: -self.im,
            im: self.re,
        }
    }

    pub fn neg(self) -> Self {
        GaussianInt {
            re: -self.re,
            im: -self.im,
        }
    }
}

impl fmt::Display for GaussianInt {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match (self.re, self.im) {
            (re, 0) => write!(f, "{re}"),
            (0, 1) => write!(f, "i"),
            (0, -1) => write!(f, "-i"),
            (0, im) => write!(f, "{im}i"),
            (re, im) => {
                write!(f, "{re}")?;
                let sign = if im < 0 { '-' } else { '+' };
                match im.abs() {
                    1 => write!(f, "{sign}i"),
                    m => write!(f, "{sign}{m}i"),
                }
            }
        }
    }
}

impl fmt::Debug for GaussianInt {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

impl Serialize for GaussianInt {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        let mut t = serializer.serialize_tuple(2)?;
        t.serialize_element(&self.re)?;
        t.serialize_element(&self.im)?;
        t.end()
    }
}

impl<'de> Deserialize<'de> for GaussianInt {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> Result<Self, D::Error> {
        struct PairVisitor;
        impl<'de> Visitor<'de> for PairVisitor {
            type Value = GaussianInt;

            fn expecting(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
                f.write_str("a [re, im] pair")
            }

            fn visit_seq<A: SeqAccess<'de>>(self, mut seq: A) -> Result<Self::Value, A::Error> {
                let re = seq
                    .next_element()?
                    .ok_or_else(|| de::Error::invalid_length(0, &self))?;
                let im = seq
                    .next_element()?
                    .ok_or_else(|| de::Error::invalid_length(1, &self))?;
                Ok(GaussianInt { re, im })
            }
        }
        deserializer.deserialize_tuple(2, PairVisitor)
    }
}

/// Unnormalized Walsh spectrum: W(u) = sum_x (-1)^(f(x) + u.x).
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct WalshSpectrum {
    n: usize,
    values: Vec<i64>,
}

impl WalshSpectrum {
    pub fn n(&self) -> usize {
        self.n
    }

    pub fn values(&self) -> &[i64] {
        &self.values
    }

    pub fn value(&self, u: u32) -> i64 {
        self.values[u as usize]
    }

    /// Exact multiset tally of the spectrum.
    pub fn histogram(&self) -> BTreeMap<i64, u64> {
        let mut hist = BTreeMap::new();
        for &v in &self.values {
            *hist.entry(v).or_insert(0) += 1;
        }
        hist
    }
}

/// Unnormalized nega spectrum: N(u) = sum_x (-1)^(f(x) + u.x) i^wt(x).
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct NegaSpectrum {
    n: usize,
    values: Vec<GaussianInt>,
}

impl NegaSpectrum {
    pub fn n(&self) -> usize {
        self.n
    }

    pub fn values(&self) -> &[GaussianInt] {
        &self.values
    }

    pub fn value(&self, u: u32) -> GaussianInt {
        self.values[u as usize]
    }

    pub fn histogram(&self) -> BTreeMap<GaussianInt, u64> {
        let mut hist = BTreeMap::new();
        for &v in &self.values {
            *hist.entry(v).or_insert(0) += 1;
        }
        hist
    }

    /// True iff every value has |N(u)|^2 = 2^n.
    pub fn is_flat(&self) -> bool {
        let target = 1i64 << self.n;
        self.values.iter().all(|v| v.norm_sqr() == target)
    }
}

/// Expands a bit-packed table into a +1/-1 array; kept separate so the
/// butterfly kernel below stays branch-free.
fn expand_signs(f: &BooleanFunction) -> Vec<i64> {
    (0..f.table_len())
        .map(|idx| if f.get(idx) { -1 } else { 1 })
        .collect()
}

/// In-place fast Walsh-Hadamard butterfly, O(n 2^n).
fn fwht_in_place(data: &mut [i64]) {
    let mut half = 1;
    while half < data.len() {
        for block in (0..data.len()).step_by(half * 2) {
            for k in block..block + half {
                let a = data[k];
                let b = data[k + half];
                data[k] = a + b;
                data[k + half] = a - b;
            }
        }
        half *= 2;
    }
}

pub fn walsh_transform(f: &BooleanFunction) -> WalshSpectrum {
    let mut values = expand_signs(f);
    fwht_in_place(&mut values);
    WalshSpectrum { n: f.n(), values }
}

/// The literal O(4^n) Gaussian double sum. This is the oracle the fast route
/// is checked against; it shares nothing with the butterfly path.
pub fn nega_transform_direct(f: &BooleanFunction) -> NegaSpectrum {
    let len = f.table_len();
    let mut values = Vec::with_capacity(len as usize);
    for u in 0..len {
        let mut acc = GaussianInt::ZERO;
        for x in 0..len {
            let sign: i64 = if f.get(x) ^ ((u & x).count_ones() & 1 == 1) {
                -1
            } else {
                1
            };
            match x.count_ones() & 3 {
                0 => acc.re += sign,
                1 => acc.im += sign,
                2 => acc.re -= sign,
                _ => acc.im -= sign,
            }
        }
        values.push(acc);
    }
    NegaSpectrum { n: f.n(), values }
}

/// Nega-Hadamard transform through the Walsh spectrum of f + sigma_2:
/// N(u) = [W'(u) + W'(u*)]/2 + i [W'(u) - W'(u*)]/2, u* the complement of u.
///
/// Both halves are even for every Boolean function; a parity failure here is
/// an implementation bug, not bad input, and panics.
pub fn nega_transform_fast(f: &BooleanFunction) -> NegaSpectrum {
    let n = f.n();
    let shifted = f ^ &sigma2_table(n);
    let w = walsh_transform(&shifted);
    let full = f.table_len() - 1;
    let values = (0..f.table_len())
        .map(|u| {
            let a = w.value(u);
            let b = w.value(u ^ full);
            assert!(
                (a + b) & 1 == 0 && (a - b) & 1 == 0,
                "nega-Hadamard parity violation at u={u}: W={a}, W~={b}"
            );
            GaussianInt::new((a + b) / 2, (a - b) / 2)
        })
        .collect();
    NegaSpectrum { n, values }
}

fn check_point(f: &BooleanFunction, u: &Gf2Vector) -> Result<u32, SpectraError> {
    if u.n() != f.n() {
        return Err(SpectraError::DimensionMismatch {
            n: f.n(),
            got: u.n(),
        });
    }
    Ok(u.bits() as u32)
}

pub(crate) fn autocorrelation_at(f: &BooleanFunction, umask: u32) -> i64 {
    let mut acc = 0i64;
    for x in 0..f.table_len() {
        acc += if f.get(x) ^ f.get(x ^ umask) { -1 } else { 1 };
    }
    acc
}

/// C_f(u) = sum_x (-1)^(f(x) + f(x+u)).
pub fn autocorrelation(f: &BooleanFunction, u: &Gf2Vector) -> Result<i64, SpectraError> {
    Ok(autocorrelation_at(f, check_point(f, u)?))
}

pub(crate) fn nega_autocorrelation_at(f: &BooleanFunction, umask: u32) -> i64 {
    let mut acc = 0i64;
    for x in 0..f.table_len() {
        let sign = f.get(x) ^ f.get(x ^ umask) ^ ((umask & x).count_ones() & 1 == 1);
        acc += if sign { -1 } else { 1 };
    }
    acc
}

/// c_f(u) = sum_x (-1)^(f(x) + f(x+u)) (-1)^(u.x).
pub fn nega_autocorrelation(f: &BooleanFunction, u: &Gf2Vector) -> Result<i64, SpectraError> {
    Ok(nega_autocorrelation_at(f, check_point(f, u)?))
}

/// The nega-autocorrelation criterion: every nontrivial c_f(u) vanishes.
/// Short-circuits on the first nonzero value.
pub fn nega_autocorrelations_vanish(f: &BooleanFunction) -> bool {
    (1..f.table_len()).all(|u| nega_autocorrelation_at(f, u) == 0)
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    fn random_function(rng: &mut ChaCha8Rng, n: usize) -> BooleanFunction {
        BooleanFunction::from_index_fn(n, |_| rng.gen())
    }

    /// Literal double-sum Walsh transform, the oracle for the butterfly.
    fn walsh_naive(f: &BooleanFunction) -> Vec<i64> {
        (0..f.table_len())
            .map(|u| {
                (0..f.table_len())
                    .map(|x| {
                        if f.get(x) ^ ((u & x).count_ones() & 1 == 1) {
                            -1
                        } else {
                            1
                        }
                    })
                    .sum()
            })
            .collect()
    }

    #[test]
    fn walsh_of_zero() {
        let w = walsh_transform(&BooleanFunction::zero(3));
        assert_eq!(w.value(0), 8);
        assert!(w.values()[1..].iter().all(|&v| v == 0));
    }

    #[test]
    fn walsh_of_and_is_flat_2() {
        let w = walsh_transform(&BooleanFunction::sigma_d(2, 2).unwrap());
        assert!(w.values().iter().all(|v| v.abs() == 2));
    }

    #[test]
    fn walsh_of_quadratic_bent_is_flat_4() {
        let h = crate::boolfun::AnfPolynomial::parse("x1x3 + x2x4", Some(4))
            .unwrap()
            .to_function();
        let w = walsh_transform(&h);
        assert!(w.values().iter().all(|v| v.abs() == 4));
    }

    #[test]
    fn fast_walsh_matches_naive() {
        // all functions on n <= 3
        for n in 1..=3 {
            for code in 0u64..1 << (1 << n) {
                let f = BooleanFunction::from_u64_table(n, code).unwrap();
                assert_eq!(walsh_transform(&f).values(), &walsh_naive(&f)[..]);
            }
        }
        let mut rng = ChaCha8Rng::seed_from_u64(17);
        for n in 4..=10 {
            for _ in 0..5 {
                let f = random_function(&mut rng, n);
                assert_eq!(walsh_transform(&f).values(), &walsh_naive(&f)[..]);
            }
        }
    }

    #[test]
    fn nega_direct_small_values() {
        let n1 = nega_transform_direct(&BooleanFunction::zero(1));
        assert_eq!(n1.value(0), GaussianInt::new(1, 1));
        assert_eq!(n1.value(1), GaussianInt::new(1, -1));

        let n2 = nega_transform_direct(&BooleanFunction::zero(2));
        let expect = [
            GaussianInt::new(0, 2),
            GaussianInt::new(2, 0),
            GaussianInt::new(2, 0),
            GaussianInt::new(0, -2),
        ];
        assert_eq!(n2.values(), &expect);
    }

    #[test]
    fn complementing_negates_the_nega_spectrum() {
        let f = BooleanFunction::sigma_d(4, 2).unwrap();
        let fc = !&f;
        let a = nega_transform_direct(&f);
        let b = nega_transform_direct(&fc);
        for (x, y) in a.values().iter().zip(b.values()) {
            assert_eq!(x.neg(), *y);
        }
    }

    #[test]
    fn fast_nega_matches_direct_exhaustive_small() {
        for n in 1..=3 {
            for code in 0u64..1 << (1 << n) {
                let f = BooleanFunction::from_u64_table(n, code).unwrap();
                assert_eq!(
                    nega_transform_fast(&f).values(),
                    nega_transform_direct(&f).values(),
                    "n={n} code={code:x}"
                );
            }
        }
    }

    #[test]
    fn fast_nega_matches_direct_randomized() {
        let mut rng = ChaCha8Rng::seed_from_u64(4);
        for n in 4..=10 {
            for _ in 0..4 {
                let f = random_function(&mut rng, n);
                assert_eq!(
                    nega_transform_fast(&f).values(),
                    nega_transform_direct(&f).values()
                );
            }
        }
    }

    #[test]
    fn parseval_for_both_spectra() {
        let mut rng = ChaCha8Rng::seed_from_u64(8);
        for n in 1..=10 {
            let f = random_function(&mut rng, n);
            let total = 1i64 << (2 * n);
            let w: i64 = walsh_transform(&f).values().iter().map(|v| v * v).sum();
            assert_eq!(w, total);
            let nsum: i64 = nega_transform_fast(&f)
                .values()
                .iter()
                .map(|v| v.norm_sqr())
                .sum();
            assert_eq!(nsum, total);
        }
    }

    #[test]
    fn autocorrelation_cases() {
        let mut rng = ChaCha8Rng::seed_from_u64(21);
        let f = random_function(&mut rng, 5);
        assert_eq!(
            autocorrelation(&f, &Gf2Vector::zero(5)).unwrap(),
            32
        );

        // any bent function has zero autocorrelation off the origin
        let h = crate::boolfun::AnfPolynomial::parse("x1x3 + x2x4", Some(4))
            .unwrap()
            .to_function();
        for u in 1u64..16 {
            let v = Gf2Vector::from_bits(4, u).unwrap();
            assert_eq!(autocorrelation(&h, &v).unwrap(), 0);
        }

        // f = x1 on one variable: shifting complements the function
        let x1 = BooleanFunction::from_index_fn(1, |idx| idx == 1);
        assert_eq!(
            autocorrelation(&x1, &Gf2Vector::ones(1)).unwrap(),
            -2
        );

        assert!(autocorrelation(&x1, &Gf2Vector::zero(3)).is_err());
    }

    #[test]
    fn nega_autocorrelation_cases() {
        let mut rng = ChaCha8Rng::seed_from_u64(22);
        let f = random_function(&mut rng, 4);
        assert_eq!(
            nega_autocorrelation(&f, &Gf2Vector::zero(4)).unwrap(),
            16
        );

        // f = 0 on two variables is negabent; nontrivial values vanish
        let z2 = BooleanFunction::zero(2);
        for u in 1u64..4 {
            let v = Gf2Vector::from_bits(2, u).unwrap();
            assert_eq!(nega_autocorrelation(&z2, &v).unwrap(), 0);
        }
        assert!(nega_autocorrelations_vanish(&z2));

        // and the balanced character sum at u = (1,1) in particular
        assert_eq!(
            nega_autocorrelation(&z2, &Gf2Vector::ones(2)).unwrap(),
            0
        );
    }

    #[test]
    fn histograms() {
        let n2 = nega_transform_fast(&BooleanFunction::zero(2)).histogram();
        let mut expect = BTreeMap::new();
        expect.insert(GaussianInt::new(0, 2), 1);
        expect.insert(GaussianInt::new(2, 0), 2);
        expect.insert(GaussianInt::new(0, -2), 1);
        assert_eq!(n2, expect);

        let n1 = nega_transform_fast(&BooleanFunction::zero(1)).histogram();
        let mut expect = BTreeMap::new();
        expect.insert(GaussianInt::new(1, 1), 1);
        expect.insert(GaussianInt::new(1, -1), 1);
        assert_eq!(n1, expect);

        let h = crate::boolfun::AnfPolynomial::parse("x1x3 + x2x4", Some(4))
            .unwrap()
            .to_function();
        let wh = walsh_transform(&h).histogram();
        let total: u64 = wh.values().sum();
        assert_eq!(total, 16);
        assert_eq!(wh.keys().copied().collect::<Vec<_>>(), vec![-4, 4]);
    }

    #[test]
    fn gaussian_display_and_serde() {
        assert_eq!(GaussianInt::new(0, 0).to_string(), "0");
        assert_eq!(GaussianInt::new(2, 0).to_string(), "2");
        assert_eq!(GaussianInt::new(0, 2).to_string(), "2i");
        assert_eq!(GaussianInt::new(0, -1).to_string(), "-i");
        assert_eq!(GaussianInt::new(1, 1).to_string(), "1+i");
        assert_eq!(GaussianInt::new(-2, -2).to_string(), "-2-2i");

        let z = GaussianInt::new(-3, 7);
        let json = serde_json::to_string(&z).unwrap();
        assert_eq!(json, "[-3,7]");
        assert_eq!(serde_json::from_str::<GaussianInt>(&json).unwrap(), z);
    }
}
