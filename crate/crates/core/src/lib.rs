//! Exact analysis of Boolean functions under the Walsh-Hadamard and
//! nega-Hadamard transforms: bent / semibent / negabent / bent-negabent
//! classification, nega-spectrum distribution laws, and a construction
//! pipeline producing bent-negabent functions on 2m variables of every
//! algebraic degree from 2 to m.
//!
//! All spectra are unnormalized integers (Gaussian integers for the
//! nega-Hadamard side), so every check in the crate is exact.

pub mod boolfun;
pub mod classify;
pub mod construct;
pub mod gf2;
pub mod harness;
pub mod spectra;

pub use boolfun::{AnfPolynomial, BoolFunError, BooleanFunction};
pub use classify::{classify, ClassificationReport, ClassifyError, OddDecomposition};
pub use construct::{
    build_bent_negabent, canonical_form, degree_targeted_construct, CanonicalForm, Constructed,
    ConstructError, ConstructionRecipe,
};
pub use gf2::{Gf2Error, Gf2Matrix, Gf2Vector};
pub use harness::{
    run_campaign, CampaignResult, CampaignSpec, ClaimId, HarnessError, Mode,
};
pub use spectra::{GaussianInt, NegaSpectrum, SpectraError, WalshSpectrum};
