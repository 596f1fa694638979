//! Weights of `λ_{d*}` on the canonical bundles, on the conormal determinant
//! of each stratum and on `U_i^∨ ⊗ U_j`, and the resulting certificates.
//!
//! For an unstable type `d* = (d¹, …, d^ℓ)` with weights `k_1 > … > k_ℓ`:
//!
//! * `wt(ω_R|_Z) = Σ_{m<n} (k_n − k_m)(⟨d^m,d^n⟩ − ⟨d^n,d^m⟩)`
//! * `wt(ω_S|_Z) = Σ_{m<n} (k_m − k_n)⟨d^n,d^m⟩`
//! * `η_λ = Σ_{m<n} (k_n − k_m)⟨d^m,d^n⟩ = wt(ω_R|_Z) − wt(ω_S|_Z)`
//!
//! The weights on `U_i^∨ ⊗ U_j` are `k_m − k_n` with multiplicity `d_i^m d_j^n`,
//! so the window inequality on a stratum reduces to `k_1 − k_ℓ < η_λ`.

use std::collections::BTreeMap;

use num_bigint::BigInt;
use num_traits::Zero;
use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::hn::{codimension, one_param_data, HnEnumerator, HnType, OneParamData};
use crate::quiver::{is_theta_coprime, DimensionVector, Quiver, StabilityParameter};
use crate::semistability::stability_report_from_types;

fn pair(q: &Quiver, a: &DimensionVector, b: &DimensionVector) -> BigInt {
    BigInt::from(q.pairing(a.entries(), b.entries()))
}

pub fn weight_omega_r(q: &Quiver, t: &HnType, k: &OneParamData) -> BigInt {
    let pieces = t.pieces();
    let mut total = BigInt::zero();
    for m in 0..pieces.len() {
        for n in m + 1..pieces.len() {
            let skew = pair(q, &pieces[m], &pieces[n]) - pair(q, &pieces[n], &pieces[m]);
            total += (&k.k[n] - &k.k[m]) * skew;
        }
    }
    total
}

pub fn weight_omega_s(q: &Quiver, t: &HnType, k: &OneParamData) -> BigInt {
    let pieces = t.pieces();
    let mut total = BigInt::zero();
    for m in 0..pieces.len() {
        for n in m + 1..pieces.len() {
            total += (&k.k[m] - &k.k[n]) * pair(q, &pieces[n], &pieces[m]);
        }
    }
    total
}

/// `η_λ`, the weight of `det N^∨_{S/R}` restricted to the limit set.
pub fn eta(q: &Quiver, t: &HnType, k: &OneParamData) -> BigInt {
    let pieces = t.pieces();
    let mut total = BigInt::zero();
    for m in 0..pieces.len() {
        for n in m + 1..pieces.len() {
            total += (&k.k[n] - &k.k[m]) * pair(q, &pieces[m], &pieces[n]);
        }
    }
    total
}

/// `N_r = −⟨d¹ + … + d^r, d^{r+1} + … + d^ℓ⟩` for `r = 1, …, ℓ − 1`.
///
/// `η_λ = Σ_r (k_r − k_{r+1}) N_r`.
pub fn filtration_cut_terms(q: &Quiver, t: &HnType) -> Vec<i64> {
    let pieces = t.pieces();
    let d = t.total();
    let mut head = DimensionVector::zero(d.len());
    let mut out = Vec::with_capacity(pieces.len().saturating_sub(1));
    for piece in &pieces[..pieces.len() - 1] {
        head = &head + piece;
        let tail = &d - &head;
        out.push(-q.pairing(head.entries(), tail.entries()));
    }
    out
}

/// The `λ`-weights on `U_i^∨ ⊗ U_j` with multiplicities.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BundleWeightMultiset {
    pub source_vertex: usize,
    pub target_vertex: usize,
    /// weight ↦ multiplicity; zero multiplicities are not stored
    pub weights: BTreeMap<BigInt, u64>,
}

impl BundleWeightMultiset {
    pub fn total_multiplicity(&self) -> u64 {
        self.weights.values().sum()
    }

    pub fn max(&self) -> Option<&BigInt> {
        self.weights.keys().next_back()
    }

    /// Weights in ascending order, repeated by multiplicity.
    pub fn to_sorted_vec(&self) -> Vec<BigInt> {
        self.weights
            .iter()
            .flat_map(|(w, &m)| std::iter::repeat_n(w.clone(), m as usize))
            .collect()
    }
}

pub fn bundle_weights(
    t: &HnType,
    k: &OneParamData,
    i: usize,
    j: usize,
) -> Result<BundleWeightMultiset> {
    let n = t.pieces()[0].len();
    for vertex in [i, j] {
        if vertex == 0 || vertex > n {
            return Err(Error::InvalidVertex {
                vertex,
                vertex_count: n,
            });
        }
    }
    let mut weights = BTreeMap::new();
    for (m, dm) in t.pieces().iter().enumerate() {
        for (l, dl) in t.pieces().iter().enumerate() {
            let multiplicity = dm[i - 1] as u64 * dl[j - 1] as u64;
            if multiplicity > 0 {
                *weights.entry(&k.k[m] - &k.k[l]).or_insert(0) += multiplicity;
            }
        }
    }
    Ok(BundleWeightMultiset {
        source_vertex: i,
        target_vertex: j,
        weights,
    })
}

/// Everything the window inequality needs for one stratum.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct StratumWeightData {
    pub hn_type: HnType,
    pub one_ps: OneParamData,
    pub codim: i64,
    pub eta: BigInt,
    pub weight_omega_r: BigInt,
    pub weight_omega_s: BigInt,
    /// `k_1 − k_ℓ`
    pub max_bundle_weight: BigInt,
    pub inequality_holds: bool,
}

/// The dense type gets `η = 0`, maximal weight 0 and a passing inequality:
/// only unstable strata constrain the windows.
pub fn stratum_report(q: &Quiver, theta: &StabilityParameter, t: &HnType) -> StratumWeightData {
    let one_ps = one_param_data(theta, t);
    let weight_omega_r = weight_omega_r(q, t, &one_ps);
    let weight_omega_s = weight_omega_s(q, t, &one_ps);
    let eta = eta(q, t, &one_ps);
    let max_bundle_weight = one_ps.k_first_minus_last();
    let inequality_holds = t.is_dense() || max_bundle_weight < eta;
    StratumWeightData {
        hn_type: t.clone(),
        codim: codimension(q, t),
        one_ps,
        eta,
        weight_omega_r,
        weight_omega_s,
        max_bundle_weight,
        inequality_holds,
    }
}

/// Aggregate certificate for `(Q, d, θ)`.
///
/// A missing certificate means the sufficient criterion failed, not that
/// cohomology is nonzero.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Verdict {
    pub coprime: bool,
    pub acyclic: bool,
    pub strongly_amply_stable: bool,
    pub amply_stable: bool,
    pub all_strata_inequality: bool,
    pub vanishing_certified: bool,
    pub rigidity_certified: bool,
    pub failing_strata: Vec<HnType>,
    pub min_unstable_codim: Option<i64>,
    pub strong_failure_witness: Option<DimensionVector>,
    pub stratum_count: usize,
}

pub fn verdict(q: &Quiver, d: &DimensionVector, theta: &StabilityParameter) -> Result<Verdict> {
    let mut enumerator = HnEnumerator::new(q, theta.clone())?;
    let types = enumerator.enumerate(d)?;
    if !enumerator.has_semistable(d)? {
        return Err(Error::EmptySemistableLocus(d.clone()));
    }
    verdict_from_types(q, d, theta, &types)
}

pub(crate) fn verdict_from_types(
    q: &Quiver,
    d: &DimensionVector,
    theta: &StabilityParameter,
    types: &[HnType],
) -> Result<Verdict> {
    let coprime = is_theta_coprime(theta, d)?;
    let acyclic = q.is_acyclic();
    let stability = stability_report_from_types(q, d, theta, types)?;
    let failing_strata: Vec<HnType> = types
        .par_iter()
        .filter(|t| !t.is_dense())
        .filter(|t| !stratum_report(q, theta, t).inequality_holds)
        .cloned()
        .collect();
    let all_strata_inequality = failing_strata.is_empty();
    debug_assert!(
        !stability.is_strongly_amply_stable || all_strata_inequality,
        "strong ample stability must imply the window inequality"
    );
    let vanishing_certified = coprime && all_strata_inequality;
    Ok(Verdict {
        coprime,
        acyclic,
        strongly_amply_stable: stability.is_strongly_amply_stable,
        amply_stable: stability.is_amply_stable,
        all_strata_inequality,
        vanishing_certified,
        rigidity_certified: vanishing_certified && acyclic,
        failing_strata,
        min_unstable_codim: stability.min_unstable_codim,
        strong_failure_witness: stability.strong_failure_witness,
        stratum_count: types.len(),
    })
}

/// `1 − ⟨d, d⟩`, the dimension of a nonempty stable moduli space.
pub fn moduli_dimension(q: &Quiver, d: &DimensionVector) -> Result<i64> {
    q.check_len(d.len())?;
    Ok(1 - q.pairing(d.entries(), d.entries()))
}
