//! Nonemptiness of semistable loci and the (strong) ample stability criteria.
//!
//! Semistability of the generic representation is decided through generic
//! subdimension vectors: `f <= e` is a generic subdimension vector of `e` iff
//! `⟨f', e − f⟩ >= 0` for every generic subdimension vector `f'` of `f`. The
//! generic representation of dimension `e` is `μ`-semistable iff no generic
//! subdimension vector has larger slope than `e`, and since the semistable
//! locus is open this decides whether it is nonempty.

use std::cmp::Ordering;
use std::collections::HashMap;
use std::sync::Arc;

use crate::error::{Error, Result};
use crate::hn::{codimension, HnEnumerator};
use crate::quiver::{
    compare_slopes, subdimension_vectors, DimensionVector, Quiver, StabilityParameter,
};

/// Memo of generic subdimension vectors for one quiver.
#[derive(Debug, Clone)]
pub struct GenericSubdimCache<'q> {
    quiver: &'q Quiver,
    memo: HashMap<DimensionVector, Arc<Vec<DimensionVector>>>,
}

impl<'q> GenericSubdimCache<'q> {
    pub fn new(quiver: &'q Quiver) -> Self {
        GenericSubdimCache {
            quiver,
            memo: HashMap::new(),
        }
    }

    pub fn quiver(&self) -> &'q Quiver {
        self.quiver
    }

    /// Generic subdimension vectors of `e`, sorted lexicographically.
    pub fn generic_subdimension_vectors(
        &mut self,
        e: &DimensionVector,
    ) -> Result<Arc<Vec<DimensionVector>>> {
        self.quiver.check_len(e.len())?;
        Ok(self.generic(e))
    }

    fn generic(&mut self, e: &DimensionVector) -> Arc<Vec<DimensionVector>> {
        if let Some(found) = self.memo.get(e) {
            return Arc::clone(found);
        }
        let mut result = Vec::new();
        for f in subdimension_vectors(e) {
            if f.is_zero() || &f == e {
                result.push(f);
                continue;
            }
            let rest = e - &f;
            let below = self.generic(&f);
            if below
                .iter()
                .all(|g| self.quiver.pairing(g.entries(), rest.entries()) >= 0)
            {
                result.push(f);
            }
        }
        let result = Arc::new(result);
        self.memo.insert(e.clone(), Arc::clone(&result));
        result
    }

    /// Whether the generic representation of dimension `e` is `μ_θ`-semistable.
    pub fn has_semistable(
        &mut self,
        e: &DimensionVector,
        theta: &StabilityParameter,
    ) -> Result<bool> {
        self.quiver.check_len(e.len())?;
        self.quiver.check_len(theta.len())?;
        if e.is_zero() {
            return Err(Error::ZeroDimensionVector);
        }
        let generic = self.generic(e);
        Ok(generic
            .iter()
            .filter(|f| !f.is_zero() && *f != e)
            .all(|f| compare_slopes(theta, f, e) != Ordering::Greater))
    }
}

pub fn generic_subdimension_vectors(
    q: &Quiver,
    e: &DimensionVector,
) -> Result<Vec<DimensionVector>> {
    let mut cache = GenericSubdimCache::new(q);
    Ok(cache.generic_subdimension_vectors(e)?.as_ref().clone())
}

pub fn has_semistable(q: &Quiver, e: &DimensionVector, theta: &StabilityParameter) -> Result<bool> {
    GenericSubdimCache::new(q).has_semistable(e, theta)
}

/// Ample and strong ample stability of `d`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct StabilityReport {
    pub is_amply_stable: bool,
    /// Minimum codimension over the unstable strata; `None` if there are none.
    pub min_unstable_codim: Option<i64>,
    pub is_strongly_amply_stable: bool,
    pub strong_failure_witness: Option<DimensionVector>,
}

/// Checks `⟨e, d − e⟩ <= −2` for every `0 < e < d` with `μ(e) > μ(d − e)`.
///
/// On failure the lexicographically smallest violating `e` is returned.
pub fn is_strongly_amply_stable(
    q: &Quiver,
    d: &DimensionVector,
    theta: &StabilityParameter,
) -> Result<(bool, Option<DimensionVector>)> {
    q.check_len(d.len())?;
    theta.require_orthogonal(d)?;
    if d.is_zero() {
        return Err(Error::ZeroDimensionVector);
    }
    for e in subdimension_vectors(d) {
        if e.is_zero() || &e == d {
            continue;
        }
        let rest = d - &e;
        if compare_slopes(theta, &e, &rest) == Ordering::Greater
            && q.pairing(e.entries(), rest.entries()) > -2
        {
            return Ok((false, Some(e)));
        }
    }
    Ok((true, None))
}

/// Computes the full [`StabilityReport`]; the unstable locus codimension is the
/// minimum over all Harder–Narasimhan strata other than the dense one.
pub fn is_amply_stable(
    q: &Quiver,
    d: &DimensionVector,
    theta: &StabilityParameter,
) -> Result<StabilityReport> {
    let mut enumerator = HnEnumerator::new(q, theta.clone())?;
    let types = enumerator.enumerate(d)?;
    if !enumerator.has_semistable(d)? {
        return Err(Error::EmptySemistableLocus(d.clone()));
    }
    stability_report_from_types(q, d, theta, &types)
}

pub(crate) fn stability_report_from_types(
    q: &Quiver,
    d: &DimensionVector,
    theta: &StabilityParameter,
    types: &[crate::hn::HnType],
) -> Result<StabilityReport> {
    let min_unstable_codim = types
        .iter()
        .filter(|t| t.len() > 1)
        .map(|t| codimension(q, t))
        .min();
    let (is_strongly_amply_stable, strong_failure_witness) = is_strongly_amply_stable(q, d, theta)?;
    Ok(StabilityReport {
        is_amply_stable: min_unstable_codim.is_none_or(|c| c >= 2),
        min_unstable_codim,
        is_strongly_amply_stable,
        strong_failure_witness,
    })
}
