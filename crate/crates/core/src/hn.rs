//! Harder–Narasimhan types and the one-parameter subgroups attached to them.

use std::cmp::Ordering;
use std::collections::HashMap;
use std::fmt;
use std::sync::Arc;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::quiver::{
    compare_slopes, slope, subdimension_vectors, write_tuple, DimensionVector, Quiver, Rational,
    StabilityParameter,
};
use crate::semistability::GenericSubdimCache;

/// A sequence `(d¹, …, d^ℓ)` of nonzero dimension vectors of strictly
/// decreasing slope. Indexes a stratum of `Rep(Q, Σ d^m)`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct HnType {
    pieces: Vec<DimensionVector>,
}

impl HnType {
    /// Validates shape and the strict slope decrease. Nonemptiness of the
    /// semistable loci of the pieces is not checked here.
    pub fn new(theta: &StabilityParameter, pieces: Vec<DimensionVector>) -> Result<Self> {
        if pieces.is_empty() {
            return Err(Error::InvalidHnType("no pieces".into()));
        }
        for piece in &pieces {
            if piece.len() != theta.len() {
                return Err(Error::DimensionMismatch {
                    expected: theta.len(),
                    found: piece.len(),
                });
            }
            if piece.is_zero() {
                return Err(Error::InvalidHnType("zero piece".into()));
            }
        }
        for w in pieces.windows(2) {
            if compare_slopes(theta, &w[0], &w[1]) != Ordering::Greater {
                return Err(Error::InvalidHnType(format!(
                    "slope of {} does not exceed slope of {}",
                    w[0], w[1]
                )));
            }
        }
        Ok(HnType { pieces })
    }

    pub fn pieces(&self) -> &[DimensionVector] {
        &self.pieces
    }

    /// The length `ℓ`.
    pub fn len(&self) -> usize {
        self.pieces.len()
    }

    pub fn is_empty(&self) -> bool {
        self.pieces.is_empty()
    }

    /// Whether this is the type `(d)` of the semistable stratum.
    pub fn is_dense(&self) -> bool {
        self.pieces.len() == 1
    }

    pub fn total(&self) -> DimensionVector {
        let mut sum = DimensionVector::zero(self.pieces[0].len());
        for piece in &self.pieces {
            sum = &sum + piece;
        }
        sum
    }

    pub fn slopes(&self, theta: &StabilityParameter) -> Vec<Rational> {
        self.pieces
            .iter()
            .map(|p| slope(theta, p).expect("pieces are nonzero"))
            .collect()
    }
}

impl fmt::Display for HnType {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write_tuple(f, self.pieces.iter())
    }
}

/// The weights `k_m = C·μ(d^m)` of `λ_{d*}`, with `C` the least positive
/// integer making all of them integral.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct OneParamData {
    pub c: BigInt,
    pub k: Vec<BigInt>,
}

impl OneParamData {
    pub fn k_first_minus_last(&self) -> BigInt {
        &self.k[0] - &self.k[self.k.len() - 1]
    }
}

pub fn one_param_data(theta: &StabilityParameter, t: &HnType) -> OneParamData {
    let slopes = t.slopes(theta);
    let c = slopes
        .iter()
        .fold(BigInt::one(), |acc, s| acc.lcm(s.denom()));
    let k = slopes
        .iter()
        .map(|s| s.numer() * (&c / s.denom()))
        .collect();
    OneParamData { c, k }
}

/// `Σ_{m<n} −⟨d^m, d^n⟩`, the codimension of the stratum in `Rep(Q, d)`.
pub fn codimension(q: &Quiver, t: &HnType) -> i64 {
    let pieces = t.pieces();
    let mut total = 0;
    for (m, a) in pieces.iter().enumerate() {
        for b in &pieces[m + 1..] {
            total -= q.pairing(a.entries(), b.entries());
        }
    }
    total
}

/// Enumerates Harder–Narasimhan types for a fixed quiver and stability
/// parameter, sharing semistability and sub-enumeration results across calls.
pub struct HnEnumerator<'q> {
    cache: GenericSubdimCache<'q>,
    theta: StabilityParameter,
    semistable: HashMap<DimensionVector, bool>,
    // every slope-decreasing sequence of semistable pieces summing to the key
    sequences: HashMap<DimensionVector, Arc<Vec<Vec<DimensionVector>>>>,
}

impl<'q> HnEnumerator<'q> {
    pub fn new(quiver: &'q Quiver, theta: StabilityParameter) -> Result<Self> {
        quiver.check_len(theta.len())?;
        Ok(HnEnumerator {
            cache: GenericSubdimCache::new(quiver),
            theta,
            semistable: HashMap::new(),
            sequences: HashMap::new(),
        })
    }

    pub fn theta(&self) -> &StabilityParameter {
        &self.theta
    }

    pub fn quiver(&self) -> &'q Quiver {
        self.cache.quiver()
    }

    pub fn has_semistable(&mut self, e: &DimensionVector) -> Result<bool> {
        if let Some(&known) = self.semistable.get(e) {
            return Ok(known);
        }
        let value = self.cache.has_semistable(e, &self.theta)?;
        self.semistable.insert(e.clone(), value);
        Ok(value)
    }

    /// All Harder–Narasimhan types of `d`, sorted lexicographically by piece list.
    pub fn enumerate(&mut self, d: &DimensionVector) -> Result<Vec<HnType>> {
        self.quiver().check_len(d.len())?;
        if d.is_zero() {
            return Err(Error::ZeroDimensionVector);
        }
        self.theta.require_orthogonal(d)?;
        let mut types: Vec<HnType> = self
            .sequences(d)
            .iter()
            .map(|pieces| HnType {
                pieces: pieces.clone(),
            })
            .collect();
        types.sort();
        Ok(types)
    }

    fn sequences(&mut self, rest: &DimensionVector) -> Arc<Vec<Vec<DimensionVector>>> {
        if let Some(found) = self.sequences.get(rest) {
            return Arc::clone(found);
        }
        let mut out = Vec::new();
        if rest.is_zero() {
            out.push(Vec::new());
        } else {
            for first in subdimension_vectors(rest) {
                if first.is_zero() || !self.has_semistable(&first).expect("lengths checked") {
                    continue;
                }
                let remainder = rest - &first;
                let tails = self.sequences(&remainder);
                for tail in tails.iter() {
                    let fits = tail.first().is_none_or(|next| {
                        compare_slopes(&self.theta, next, &first) == Ordering::Less
                    });
                    if fits {
                        let mut seq = Vec::with_capacity(tail.len() + 1);
                        seq.push(first.clone());
                        seq.extend(tail.iter().cloned());
                        out.push(seq);
                    }
                }
            }
        }
        let out = Arc::new(out);
        self.sequences.insert(rest.clone(), Arc::clone(&out));
        out
    }
}

pub fn enumerate_hn_types(
    q: &Quiver,
    d: &DimensionVector,
    theta: &StabilityParameter,
) -> Result<Vec<HnType>> {
    HnEnumerator::new(q, theta.clone())?.enumerate(d)
}

impl OneParamData {
    /// `Σ_m k_m |d^m|`; zero whenever `θ(d) = 0`.
    pub fn weighted_total(&self, t: &HnType) -> BigInt {
        self.k
            .iter()
            .zip(t.pieces())
            .fold(BigInt::zero(), |acc, (k, p)| {
                acc + k * BigInt::from(p.total())
            })
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::semistability::has_semistable;

    fn dv<const N: usize>(v: [u32; N]) -> DimensionVector {
        v.into()
    }

    fn hn(theta: &StabilityParameter, pieces: &[&[u32]]) -> HnType {
        HnType::new(
            theta,
            pieces
                .iter()
                .map(|p| DimensionVector::new(p.to_vec()))
                .collect(),
        )
        .unwrap()
    }

    fn int(values: &[i64]) -> Vec<BigInt> {
        values.iter().map(|&v| BigInt::from(v)).collect()
    }

    /// Smallest positive C with every C·μ integral, by search.
    fn smallest_c_oracle(slopes: &[Rational]) -> i64 {
        (1..)
            .find(|&c| {
                slopes
                    .iter()
                    .all(|s| (s * Rational::from_integer(c.into())).is_integer())
            })
            .unwrap()
    }

    /// Codimension as `dim R − dim R⁺ − dim(g/p)`: count coordinates in the
    /// strictly lower blocks of every arrow matrix and of every `gl(d_i)`.
    fn codim_oracle(q: &Quiver, t: &HnType) -> i64 {
        let n = q.vertex_count();
        let block_of = |vertex: usize| -> Vec<usize> {
            t.pieces()
                .iter()
                .enumerate()
                .flat_map(|(m, p)| std::iter::repeat_n(m, p[vertex] as usize))
                .collect()
        };
        let blocks: Vec<Vec<usize>> = (0..n).map(block_of).collect();
        let mut lower_rep = 0;
        for (s, t) in q.arrows() {
            for &row in &blocks[t - 1] {
                for &col in &blocks[s - 1] {
                    if row > col {
                        lower_rep += 1;
                    }
                }
            }
        }
        let mut lower_group = 0;
        for b in &blocks {
            for &row in b {
                for &col in b {
                    if row > col {
                        lower_group += 1;
                    }
                }
            }
        }
        lower_rep - lower_group
    }

    fn first_example() -> Quiver {
        let mut arrows = vec![(1, 2); 5];
        arrows.extend([(1, 3), (2, 3)]);
        Quiver::new(3, &arrows).unwrap()
    }

    fn second_example() -> Quiver {
        let mut arrows = vec![(1, 2)];
        arrows.extend(vec![(1, 3); 6]);
        arrows.push((2, 3));
        Quiver::new(3, &arrows).unwrap()
    }

    #[test]
    fn construction_is_validated() {
        let theta: StabilityParameter = [3, -2].into();
        assert!(HnType::new(&theta, vec![]).is_err());
        assert!(HnType::new(&theta, vec![dv([0, 0])]).is_err());
        assert!(HnType::new(&theta, vec![dv([1, 2]), dv([1, 1])]).is_err());
        assert!(HnType::new(&theta, vec![dv([1, 1]), dv([2, 2])]).is_err());
        assert!(HnType::new(&theta, vec![dv([1, 1, 0])]).is_err());
        let t = hn(&theta, &[&[1, 1], &[1, 2]]);
        assert_eq!(t.to_string(), "((1,1),(1,2))");
        assert_eq!(t.total(), dv([2, 3]));
    }

    #[test]
    fn codimension_examples() {
        let k3 = Quiver::kronecker(3);
        let theta: StabilityParameter = [3, -2].into();
        let t = hn(&theta, &[&[1, 0], &[1, 1], &[0, 2]]);
        assert_eq!(codimension(&k3, &t), 12);
        assert_eq!(codimension(&k3, &hn(&theta, &[&[2, 3]])), 0);
        assert_eq!(codimension(&k3, &hn(&theta, &[&[2, 0], &[0, 3]])), 18);
    }

    #[test]
    fn one_param_examples() {
        let theta: StabilityParameter = [3, -2].into();
        let data = one_param_data(&theta, &hn(&theta, &[&[1, 1], &[1, 2]]));
        assert_eq!((data.c, data.k), (BigInt::from(6), int(&[3, -2])));
        let data = one_param_data(&theta, &hn(&theta, &[&[1, 0], &[1, 2], &[0, 1]]));
        assert_eq!((data.c, data.k), (BigInt::from(3), int(&[9, -1, -6])));
        let data = one_param_data(&theta, &hn(&theta, &[&[2, 0], &[0, 3]]));
        assert_eq!((data.c, data.k), (BigInt::from(1), int(&[3, -2])));
    }

    #[test]
    fn stratum_counts() {
        let types =
            enumerate_hn_types(&Quiver::kronecker(3), &dv([2, 3]), &[3, -2].into()).unwrap();
        assert_eq!(types.len(), 8);
        let types =
            enumerate_hn_types(&first_example(), &dv([4, 1, 4]), &[9, -16, -5].into()).unwrap();
        assert_eq!(types.len(), 41);
        let types =
            enumerate_hn_types(&second_example(), &dv([1, 6, 6]), &[42, 5, -12].into()).unwrap();
        assert_eq!(types.len(), 85);
    }

    #[test]
    fn enumeration_preconditions() {
        let k3 = Quiver::kronecker(3);
        assert_eq!(
            enumerate_hn_types(&k3, &dv([2, 3]), &[1, 0].into()),
            Err(Error::NotOrthogonal { value: 2 })
        );
        assert_eq!(
            enumerate_hn_types(&k3, &dv([0, 0]), &[1, 0].into()),
            Err(Error::ZeroDimensionVector)
        );
    }

    #[test]
    fn enumerated_types_satisfy_invariants() {
        let cases: Vec<(Quiver, DimensionVector, StabilityParameter)> = vec![
            (Quiver::kronecker(3), dv([2, 3]), [3, -2].into()),
            (first_example(), dv([4, 1, 4]), [9, -16, -5].into()),
            (second_example(), dv([1, 6, 6]), [42, 5, -12].into()),
        ];
        for (q, d, theta) in cases {
            let types = enumerate_hn_types(&q, &d, &theta).unwrap();
            assert!(
                types.windows(2).all(|w| w[0] < w[1]),
                "sorted, no duplicates"
            );
            let dense = types.iter().filter(|t| t.is_dense()).count();
            assert_eq!(dense == 1, has_semistable(&q, &d, &theta).unwrap());
            for t in &types {
                assert_eq!(t.total(), d);
                assert_eq!(HnType::new(&theta, t.pieces().to_vec()).as_ref(), Ok(t));
                for piece in t.pieces() {
                    assert!(has_semistable(&q, piece, &theta).unwrap());
                }
                let codim = codimension(&q, t);
                assert_eq!(codim, codim_oracle(&q, t), "{t}");
                assert_eq!(codim == 0, t.is_dense(), "{t}");
                let data = one_param_data(&theta, t);
                assert_eq!(data.c, BigInt::from(smallest_c_oracle(&t.slopes(&theta))));
                assert!(data.k.windows(2).all(|w| w[0] > w[1]));
                assert!(data.weighted_total(t).is_zero());
                for (k, s) in data.k.iter().zip(t.slopes(&theta)) {
                    assert_eq!(
                        Rational::from_integer(k.clone()),
                        s * Rational::from_integer(data.c.clone())
                    );
                }
            }
            // rerun is identical
            assert_eq!(enumerate_hn_types(&q, &d, &theta).unwrap(), types);
        }
    }

    #[test]
    fn scaling_theta_preserves_types_and_rescales_weights() {
        let q = first_example();
        let d = dv([4, 1, 4]);
        let theta: StabilityParameter = [9, -16, -5].into();
        let base = enumerate_hn_types(&q, &d, &theta).unwrap();
        for n in [2, 3] {
            let scaled = theta.scaled(n);
            assert_eq!(enumerate_hn_types(&q, &d, &scaled).unwrap(), base);
            for t in &base {
                let k = one_param_data(&theta, t).k;
                let k2 = one_param_data(&scaled, t).k;
                if t.is_dense() {
                    assert!(k.iter().chain(&k2).all(Zero::is_zero));
                    continue;
                }
                // k2 = r·k for a single positive rational r
                let r = Rational::new(k2[0].clone(), k[0].clone());
                assert!(r > Rational::zero());
                for (a, b) in k.iter().zip(&k2) {
                    assert_eq!(
                        Rational::from_integer(b.clone()),
                        &r * Rational::from_integer(a.clone())
                    );
                }
            }
        }
    }

    #[test]
    fn dense_only_instance() {
        let q = Quiver::new(1, &[]).unwrap();
        let types = enumerate_hn_types(&q, &dv([2]), &[0].into()).unwrap();
        assert_eq!(types.len(), 1);
        assert!(types[0].is_dense());
    }
}
