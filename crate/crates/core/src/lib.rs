//! Exact combinatorics for moduli of quiver representations.
//!
//! Given a quiver `Q`, a dimension vector `d` and a stability parameter `θ`,
//! this crate enumerates the Harder–Narasimhan stratification of `Rep(Q, d)`,
//! computes the weights of the associated one-parameter subgroups on the
//! canonical bundles and on `U_i^∨ ⊗ U_j`, and decides whether the window
//! inequality `k_1 − k_ℓ < η_λ` holds on every unstable stratum. When it does
//! (and `d` is `θ`-coprime) higher cohomology of the endomorphism bundle of the
//! universal representation vanishes; for acyclic quivers the moduli space is
//! then rigid.
//!
//! All arithmetic is exact. Vertex indices in the public API are 1-based.

pub mod error;
pub mod hn;
pub mod oracle;
pub mod quiver;
pub mod semistability;
pub mod teleman;

pub use error::{Error, Result};
pub use hn::{codimension, enumerate_hn_types, one_param_data, HnEnumerator, HnType, OneParamData};
pub use quiver::{
    canonical_stability, euler_pairing, is_theta_coprime, slope, subdimension_vectors,
    DimensionVector, Quiver, Rational, StabilityParameter,
};
pub use semistability::{
    generic_subdimension_vectors, has_semistable, is_amply_stable, is_strongly_amply_stable,
    GenericSubdimCache, StabilityReport,
};
pub use teleman::{
    bundle_weights, eta, moduli_dimension, stratum_report, verdict, weight_omega_r, weight_omega_s,
    BundleWeightMultiset, StratumWeightData, Verdict,
};
