//! Quivers, dimension vectors, stability parameters and the Euler pairing.

use std::cmp::Ordering;
use std::fmt;
use std::ops::{Add, Index, Sub};

use num_bigint::BigInt;
use num_integer::Integer;

use crate::error::{Error, Result};

/// Exact rational number, always in lowest terms with positive denominator.
pub type Rational = num_rational::BigRational;

/// A finite directed multigraph.
///
/// Arrows are given as 1-based `(source, target)` pairs. Parallel arrows are
/// repeated entries; loops are allowed.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Quiver {
    vertex_count: usize,
    // 0-based internally
    arrows: Vec<(usize, usize)>,
    adjacency: Vec<Vec<u32>>,
}

impl Quiver {
    pub fn new(vertex_count: usize, arrows: &[(usize, usize)]) -> Result<Self> {
        if vertex_count == 0 {
            return Err(Error::NoVertices);
        }
        let mut adjacency = vec![vec![0u32; vertex_count]; vertex_count];
        let mut internal = Vec::with_capacity(arrows.len());
        for (index, &(s, t)) in arrows.iter().enumerate() {
            if s == 0 || t == 0 || s > vertex_count || t > vertex_count {
                return Err(Error::ArrowOutOfRange {
                    index,
                    source_vertex: s,
                    target: t,
                    vertex_count,
                });
            }
            adjacency[s - 1][t - 1] += 1;
            internal.push((s - 1, t - 1));
        }
        Ok(Quiver {
            vertex_count,
            arrows: internal,
            adjacency,
        })
    }

    /// The `m`-Kronecker quiver: two vertices and `m` arrows `1 -> 2`.
    pub fn kronecker(m: usize) -> Self {
        Quiver::new(2, &vec![(1, 2); m]).expect("kronecker quiver is well formed")
    }

    pub fn vertex_count(&self) -> usize {
        self.vertex_count
    }

    pub fn arrow_count(&self) -> usize {
        self.arrows.len()
    }

    /// Arrows as 1-based `(source, target)` pairs, in input order.
    pub fn arrows(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        self.arrows.iter().map(|&(s, t)| (s + 1, t + 1))
    }

    pub(crate) fn arrows_internal(&self) -> &[(usize, usize)] {
        &self.arrows
    }

    /// Number of arrows `i -> j` (1-based).
    pub fn arrows_between(&self, i: usize, j: usize) -> Result<u32> {
        self.check_vertex(i)?;
        self.check_vertex(j)?;
        Ok(self.adjacency[i - 1][j - 1])
    }

    pub fn check_vertex(&self, vertex: usize) -> Result<()> {
        if vertex == 0 || vertex > self.vertex_count {
            Err(Error::InvalidVertex {
                vertex,
                vertex_count: self.vertex_count,
            })
        } else {
            Ok(())
        }
    }

    /// True iff the arrow digraph has no directed cycle (loops count as cycles).
    pub fn is_acyclic(&self) -> bool {
        let n = self.vertex_count;
        let mut indegree = vec![0u32; n];
        for row in &self.adjacency {
            for (j, &count) in row.iter().enumerate() {
                indegree[j] += count;
            }
        }
        let mut ready: Vec<usize> = (0..n).filter(|&i| indegree[i] == 0).collect();
        let mut removed = 0;
        while let Some(i) = ready.pop() {
            removed += 1;
            for (j, &count) in self.adjacency[i].iter().enumerate() {
                if count > 0 {
                    indegree[j] -= count;
                    if indegree[j] == 0 {
                        ready.push(j);
                    }
                }
            }
        }
        removed == n
    }

    pub fn check_len(&self, len: usize) -> Result<()> {
        if len != self.vertex_count {
            Err(Error::DimensionMismatch {
                expected: self.vertex_count,
                found: len,
            })
        } else {
            Ok(())
        }
    }

    /// Euler pairing without length checks; callers guarantee matching lengths.
    pub(crate) fn pairing(&self, a: &[u32], b: &[u32]) -> i64 {
        let mut value: i64 = a.iter().zip(b).map(|(&x, &y)| x as i64 * y as i64).sum();
        for (i, row) in self.adjacency.iter().enumerate() {
            if a[i] == 0 {
                continue;
            }
            for (j, &count) in row.iter().enumerate() {
                value -= count as i64 * a[i] as i64 * b[j] as i64;
            }
        }
        value
    }
}

/// A vector of non-negative integers indexed by the vertices.
///
/// Ordered lexicographically.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct DimensionVector(Vec<u32>);

impl DimensionVector {
    pub fn new(entries: Vec<u32>) -> Self {
        DimensionVector(entries)
    }

    pub fn zero(len: usize) -> Self {
        DimensionVector(vec![0; len])
    }

    pub fn unit(len: usize, vertex: usize) -> Self {
        let mut v = vec![0; len];
        v[vertex - 1] = 1;
        DimensionVector(v)
    }

    pub fn entries(&self) -> &[u32] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn is_zero(&self) -> bool {
        self.0.iter().all(|&x| x == 0)
    }

    /// `|e|`, the sum of the entries.
    pub fn total(&self) -> u64 {
        self.0.iter().map(|&x| x as u64).sum()
    }

    /// Componentwise `self <= other`.
    pub fn le(&self, other: &DimensionVector) -> bool {
        self.0.len() == other.0.len() && self.0.iter().zip(&other.0).all(|(a, b)| a <= b)
    }

    pub fn checked_sub(&self, other: &DimensionVector) -> Option<DimensionVector> {
        if !other.le(self) {
            return None;
        }
        Some(DimensionVector(
            self.0.iter().zip(&other.0).map(|(a, b)| a - b).collect(),
        ))
    }

    pub fn scaled(&self, n: u32) -> DimensionVector {
        DimensionVector(self.0.iter().map(|x| x * n).collect())
    }
}

impl Index<usize> for DimensionVector {
    type Output = u32;

    fn index(&self, index: usize) -> &u32 {
        &self.0[index]
    }
}

impl Add for &DimensionVector {
    type Output = DimensionVector;

    fn add(self, rhs: &DimensionVector) -> DimensionVector {
        assert_eq!(self.len(), rhs.len(), "length mismatch");
        DimensionVector(self.0.iter().zip(&rhs.0).map(|(a, b)| a + b).collect())
    }
}

impl Sub for &DimensionVector {
    type Output = DimensionVector;

    /// Panics unless `rhs <= self` componentwise.
    fn sub(self, rhs: &DimensionVector) -> DimensionVector {
        self.checked_sub(rhs)
            .expect("subtrahend is not below minuend")
    }
}

impl From<Vec<u32>> for DimensionVector {
    fn from(v: Vec<u32>) -> Self {
        DimensionVector(v)
    }
}

impl<const N: usize> From<[u32; N]> for DimensionVector {
    fn from(v: [u32; N]) -> Self {
        DimensionVector(v.to_vec())
    }
}

impl fmt::Display for DimensionVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write_tuple(f, self.0.iter())
    }
}

/// An integer linear functional on dimension vectors, given by its values on
/// the vertex basis.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct StabilityParameter(Vec<i64>);

impl StabilityParameter {
    pub fn new(entries: Vec<i64>) -> Self {
        StabilityParameter(entries)
    }

    pub fn entries(&self) -> &[i64] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    /// `θ(e) = Σ θ_i e_i`. Panics on length mismatch.
    pub fn apply(&self, e: &DimensionVector) -> i64 {
        assert_eq!(self.0.len(), e.len(), "length mismatch");
        self.0
            .iter()
            .zip(e.entries())
            .map(|(&t, &x)| t * x as i64)
            .sum()
    }

    pub fn scaled(&self, n: i64) -> StabilityParameter {
        StabilityParameter(self.0.iter().map(|t| t * n).collect())
    }

    pub(crate) fn require_orthogonal(&self, d: &DimensionVector) -> Result<()> {
        check_same_len(self.len(), d.len())?;
        match self.apply(d) {
            0 => Ok(()),
            value => Err(Error::NotOrthogonal { value }),
        }
    }
}

impl From<Vec<i64>> for StabilityParameter {
    fn from(v: Vec<i64>) -> Self {
        StabilityParameter(v)
    }
}

impl<const N: usize> From<[i64; N]> for StabilityParameter {
    fn from(v: [i64; N]) -> Self {
        StabilityParameter(v.to_vec())
    }
}

impl fmt::Display for StabilityParameter {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write_tuple(f, self.0.iter())
    }
}

pub(crate) fn write_tuple<T: fmt::Display>(
    f: &mut fmt::Formatter<'_>,
    items: impl Iterator<Item = T>,
) -> fmt::Result {
    f.write_str("(")?;
    for (i, x) in items.enumerate() {
        if i > 0 {
            f.write_str(",")?;
        }
        write!(f, "{x}")?;
    }
    f.write_str(")")
}

fn check_same_len(expected: usize, found: usize) -> Result<()> {
    if expected != found {
        Err(Error::DimensionMismatch { expected, found })
    } else {
        Ok(())
    }
}

/// `⟨a, b⟩ = Σ_i a_i b_i − Σ_{arrows} a_{s(α)} b_{t(α)}`.
pub fn euler_pairing(q: &Quiver, a: &DimensionVector, b: &DimensionVector) -> Result<i64> {
    q.check_len(a.len())?;
    q.check_len(b.len())?;
    Ok(q.pairing(a.entries(), b.entries()))
}

/// The canonical stability parameter `⟨d, −⟩ − ⟨−, d⟩`, divided by the gcd of
/// its entries.
pub fn canonical_stability(q: &Quiver, d: &DimensionVector) -> Result<StabilityParameter> {
    q.check_len(d.len())?;
    if d.is_zero() {
        return Err(Error::ZeroDimensionVector);
    }
    let n = q.vertex_count();
    let mut theta = vec![0i64; n];
    for &(s, t) in q.arrows_internal() {
        theta[s] += d[t] as i64;
        theta[t] -= d[s] as i64;
    }
    let g = theta.iter().fold(0i64, |acc, &x| acc.gcd(&x));
    if g > 1 {
        theta.iter_mut().for_each(|x| *x /= g);
    }
    Ok(StabilityParameter(theta))
}

/// `μ(e) = θ(e) / |e|` in lowest terms.
pub fn slope(theta: &StabilityParameter, e: &DimensionVector) -> Result<Rational> {
    check_same_len(theta.len(), e.len())?;
    if e.is_zero() {
        return Err(Error::UndefinedSlope);
    }
    Ok(Rational::new(
        BigInt::from(theta.apply(e)),
        BigInt::from(e.total()),
    ))
}

/// Compares `μ(e)` with `μ(f)` by cross-multiplication. Both must be nonzero.
pub(crate) fn compare_slopes(
    theta: &StabilityParameter,
    e: &DimensionVector,
    f: &DimensionVector,
) -> Ordering {
    let lhs = theta.apply(e) as i128 * f.total() as i128;
    let rhs = theta.apply(f) as i128 * e.total() as i128;
    lhs.cmp(&rhs)
}

/// Whether `θ(e) ≠ 0` for every `0 < e < d`.
pub fn is_theta_coprime(theta: &StabilityParameter, d: &DimensionVector) -> Result<bool> {
    theta.require_orthogonal(d)?;
    Ok(subdimension_vectors(d)
        .iter()
        .filter(|e| !e.is_zero() && *e != d)
        .all(|e| theta.apply(e) != 0))
}

/// All `0 <= e <= d`, in lexicographic order.
pub fn subdimension_vectors(d: &DimensionVector) -> Vec<DimensionVector> {
    let count: usize = d.entries().iter().map(|&x| x as usize + 1).product();
    let mut out = Vec::with_capacity(count);
    let mut current = vec![0u32; d.len()];
    loop {
        out.push(DimensionVector(current.clone()));
        // odometer, last coordinate fastest
        let mut i = d.len();
        loop {
            if i == 0 {
                return out;
            }
            i -= 1;
            if current[i] < d[i] {
                current[i] += 1;
                break;
            }
            current[i] = 0;
        }
    }
}
