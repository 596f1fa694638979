//! Brute-force representations over small prime fields.
//!
//! Used to cross-check the combinatorial enumerators on tiny instances. A
//! representation found over `F_p` certifies nonemptiness of its stratum; the
//! absence of one certifies nothing, since strata are defined over the
//! algebraic closure.

use std::cmp::Ordering;
use std::collections::BTreeMap;

use rand::Rng;
use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::hn::HnType;
use crate::quiver::{compare_slopes, DimensionVector, Quiver, StabilityParameter};

pub const DEFAULT_BUDGET: u128 = 10_000_000;

/// Dense matrix over `F_p`, row-major.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Matrix {
    pub rows: usize,
    pub cols: usize,
    pub entries: Vec<u32>,
}

impl Matrix {
    fn apply(&self, v: &[u32], p: u32) -> Vec<u32> {
        (0..self.rows)
            .map(|r| {
                let row = &self.entries[r * self.cols..(r + 1) * self.cols];
                row.iter().zip(v).map(|(a, b)| a * b).sum::<u32>() % p
            })
            .collect()
    }

    pub fn is_zero(&self) -> bool {
        self.entries.iter().all(|&x| x == 0)
    }
}

/// A point of `Rep(Q, d)` over `F_p`: one `d_t × d_s` matrix per arrow.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FiniteFieldRep {
    pub field: u32,
    pub dims: DimensionVector,
    pub matrices: Vec<Matrix>,
}

/// A subrepresentation, as reduced row echelon bases per vertex.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SubrepWitness {
    pub dims: DimensionVector,
    pub bases: Vec<Vec<Vec<u32>>>,
}

#[derive(Debug, Clone)]
struct Subspace {
    basis: Vec<Vec<u32>>,
    // indexed by vector code Σ v_i p^i
    members: Vec<bool>,
}

fn is_prime(p: u32) -> bool {
    p >= 2
        && (2..p)
            .take_while(|k| k * k <= p)
            .all(|k| !p.is_multiple_of(k))
}

fn encode(v: &[u32], p: u32) -> usize {
    v.iter()
        .rev()
        .fold(0usize, |acc, &x| acc * p as usize + x as usize)
}

fn all_vectors(n: usize, p: u32) -> impl Iterator<Item = Vec<u32>> {
    let count = (p as usize).pow(n as u32);
    (0..count).map(move |mut code| {
        (0..n)
            .map(|_| {
                let digit = (code % p as usize) as u32;
                code /= p as usize;
                digit
            })
            .collect()
    })
}

fn combinations(n: usize, r: usize) -> Vec<Vec<usize>> {
    fn go(start: usize, n: usize, r: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if cur.len() == r {
            out.push(cur.clone());
            return;
        }
        for i in start..n {
            cur.push(i);
            go(i + 1, n, r, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    go(0, n, r, &mut Vec::new(), &mut out);
    out
}

/// Every subspace of `F_p^n`, each once, via its reduced row echelon basis.
fn subspaces(n: usize, p: u32) -> Vec<Subspace> {
    let mut out = Vec::new();
    for rank in 0..=n {
        for pivots in combinations(n, rank) {
            let free: Vec<(usize, usize)> = pivots
                .iter()
                .enumerate()
                .flat_map(|(row, &pivot)| {
                    let pivots = &pivots;
                    (pivot + 1..n)
                        .filter(move |c| !pivots.contains(c))
                        .map(move |c| (row, c))
                })
                .collect();
            for values in all_vectors(free.len(), p) {
                let mut basis = vec![vec![0u32; n]; rank];
                for (row, &pivot) in pivots.iter().enumerate() {
                    basis[row][pivot] = 1;
                }
                for (&(row, col), &value) in free.iter().zip(&values) {
                    basis[row][col] = value;
                }
                let mut members = vec![false; (p as usize).pow(n as u32)];
                for coeffs in all_vectors(rank, p) {
                    let mut v = vec![0u32; n];
                    for (c, b) in coeffs.iter().zip(&basis) {
                        for (x, y) in v.iter_mut().zip(b) {
                            *x = (*x + c * y) % p;
                        }
                    }
                    members[encode(&v, p)] = true;
                }
                out.push(Subspace { basis, members });
            }
        }
    }
    out
}

/// `Rep(Q, d)` over `F_p` together with the subspace lattices at each vertex.
pub struct RepSpace {
    field: u32,
    dims: DimensionVector,
    arrows: Vec<(usize, usize)>,
    subspaces: Vec<Vec<Subspace>>,
    point_count: u64,
}

impl RepSpace {
    pub fn new(field: u32, quiver: &Quiver, d: &DimensionVector, budget: u128) -> Result<Self> {
        if !is_prime(field) || field > 64 {
            return Err(Error::InvalidField(field));
        }
        quiver.check_len(d.len())?;
        let arrows: Vec<(usize, usize)> = quiver.arrows_internal().to_vec();
        let coordinates: u128 = arrows
            .iter()
            .map(|&(s, t)| d[s] as u128 * d[t] as u128)
            .sum();
        let count = (field as u128)
            .checked_pow(coordinates as u32)
            .unwrap_or(u128::MAX);
        if coordinates > u32::MAX as u128 || count > budget || count > u64::MAX as u128 {
            return Err(Error::BudgetExceeded { count, budget });
        }
        let subspace_cells: u128 = d
            .entries()
            .iter()
            .map(|&n| (field as u128).saturating_pow(n * n))
            .fold(1u128, |a, b| a.saturating_mul(b));
        if subspace_cells > budget {
            return Err(Error::BudgetExceeded {
                count: subspace_cells,
                budget,
            });
        }
        let subspaces = d
            .entries()
            .iter()
            .map(|&n| subspaces(n as usize, field))
            .collect();
        Ok(RepSpace {
            field,
            dims: d.clone(),
            arrows,
            subspaces,
            point_count: count as u64,
        })
    }

    /// `p^{Σ_a d_{s(a)} d_{t(a)}}`.
    pub fn point_count(&self) -> u64 {
        self.point_count
    }

    pub fn field(&self) -> u32 {
        self.field
    }

    /// The representation with the given index in `0..point_count()`;
    /// entries are the base-`p` digits of the index, arrow by arrow.
    pub fn rep_at(&self, mut index: u64) -> FiniteFieldRep {
        let p = self.field as u64;
        let matrices = self
            .arrows
            .iter()
            .map(|&(s, t)| {
                let (rows, cols) = (self.dims[t] as usize, self.dims[s] as usize);
                let entries = (0..rows * cols)
                    .map(|_| {
                        let digit = (index % p) as u32;
                        index /= p;
                        digit
                    })
                    .collect();
                Matrix {
                    rows,
                    cols,
                    entries,
                }
            })
            .collect();
        FiniteFieldRep {
            field: self.field,
            dims: self.dims.clone(),
            matrices,
        }
    }

    pub fn reps(&self) -> impl Iterator<Item = FiniteFieldRep> + '_ {
        (0..self.point_count).map(move |i| self.rep_at(i))
    }

    pub fn random_rep<R: Rng + ?Sized>(&self, rng: &mut R) -> FiniteFieldRep {
        let index = rng.gen_range(0..self.point_count);
        self.rep_at(index)
    }

    // subspace index per vertex for every subrepresentation
    fn sub_choices(&self, rep: &FiniteFieldRep) -> Vec<Vec<usize>> {
        let n = self.dims.len();
        let mut out = Vec::new();
        let mut choice = vec![0usize; n];
        self.extend_choices(rep, 0, &mut choice, &mut out);
        out
    }

    fn extend_choices(
        &self,
        rep: &FiniteFieldRep,
        vertex: usize,
        choice: &mut Vec<usize>,
        out: &mut Vec<Vec<usize>>,
    ) {
        if vertex == choice.len() {
            out.push(choice.clone());
            return;
        }
        for idx in 0..self.subspaces[vertex].len() {
            choice[vertex] = idx;
            // check every arrow whose endpoints are both assigned
            let ok = self.arrows.iter().zip(&rep.matrices).all(|(&(s, t), m)| {
                if s > vertex || t > vertex {
                    return true;
                }
                let target = &self.subspaces[t][choice[t]];
                self.subspaces[s][choice[s]]
                    .basis
                    .iter()
                    .all(|b| target.members[encode(&m.apply(b, self.field), self.field)])
            });
            if ok {
                self.extend_choices(rep, vertex + 1, choice, out);
            }
        }
    }

    fn dims_of(&self, choice: &[usize]) -> DimensionVector {
        DimensionVector::new(
            choice
                .iter()
                .enumerate()
                .map(|(v, &i)| self.subspaces[v][i].basis.len() as u32)
                .collect(),
        )
    }

    fn contains(&self, outer: &[usize], inner: &[usize]) -> bool {
        (0..outer.len()).all(|v| {
            let big = &self.subspaces[v][outer[v]];
            self.subspaces[v][inner[v]]
                .basis
                .iter()
                .all(|b| big.members[encode(b, self.field)])
        })
    }

    /// All subrepresentations, including 0 and the whole representation.
    pub fn subrepresentations(&self, rep: &FiniteFieldRep) -> Vec<SubrepWitness> {
        self.sub_choices(rep)
            .into_iter()
            .map(|choice| SubrepWitness {
                dims: self.dims_of(&choice),
                bases: choice
                    .iter()
                    .enumerate()
                    .map(|(v, &i)| self.subspaces[v][i].basis.clone())
                    .collect(),
            })
            .collect()
    }

    /// The Harder–Narasimhan type, found by repeatedly taking the subobject
    /// of the current quotient with maximal slope and, among those, maximal
    /// dimension.
    pub fn hn_type_of(&self, rep: &FiniteFieldRep, theta: &StabilityParameter) -> HnType {
        let choices = self.sub_choices(rep);
        let dims: Vec<DimensionVector> = choices.iter().map(|c| self.dims_of(c)).collect();
        let mut current = choices
            .iter()
            .position(|c| dims_is_zero(&self.dims_of(c)))
            .expect("zero subrepresentation exists");
        let mut pieces = Vec::new();
        while dims[current] != self.dims {
            let mut best: Option<(usize, DimensionVector)> = None;
            for (i, choice) in choices.iter().enumerate() {
                if dims[i].total() <= dims[current].total()
                    || !self.contains(choice, &choices[current])
                {
                    continue;
                }
                let piece = &dims[i] - &dims[current];
                let better = match &best {
                    None => true,
                    Some((_, top)) => match compare_slopes(theta, &piece, top) {
                        Ordering::Greater => true,
                        Ordering::Equal => piece.total() > top.total(),
                        Ordering::Less => false,
                    },
                };
                if better {
                    best = Some((i, piece));
                }
            }
            let (next, piece) =
                best.expect("the whole representation contains every subrepresentation");
            pieces.push(piece);
            current = next;
        }
        HnType::new(theta, pieces).expect("HN filtration has strictly decreasing slopes")
    }

    /// Number of points in each Harder–Narasimhan stratum.
    pub fn census(&self, theta: &StabilityParameter) -> BTreeMap<HnType, u64> {
        (0..self.point_count)
            .into_par_iter()
            .fold(BTreeMap::new, |mut acc, i| {
                *acc.entry(self.hn_type_of(&self.rep_at(i), theta))
                    .or_insert(0u64) += 1;
                acc
            })
            .reduce(BTreeMap::new, |mut a, b| {
                for (k, v) in b {
                    *a.entry(k).or_insert(0) += v;
                }
                a
            })
    }
}

fn dims_is_zero(d: &DimensionVector) -> bool {
    d.is_zero()
}

/// Every representation of dimension `d` over `F_p`, in index order.
pub fn enumerate_reps(
    field: u32,
    quiver: &Quiver,
    d: &DimensionVector,
    budget: u128,
) -> Result<Vec<FiniteFieldRep>> {
    let space = RepSpace::new(field, quiver, d, budget)?;
    Ok(space.reps().collect())
}

pub fn hn_type_of(
    quiver: &Quiver,
    rep: &FiniteFieldRep,
    theta: &StabilityParameter,
    budget: u128,
) -> Result<HnType> {
    quiver.check_len(theta.len())?;
    let space = RepSpace::new(rep.field, quiver, &rep.dims, budget)?;
    Ok(space.hn_type_of(rep, theta))
}

pub fn stratum_census(
    quiver: &Quiver,
    d: &DimensionVector,
    theta: &StabilityParameter,
    field: u32,
    budget: u128,
) -> Result<BTreeMap<HnType, u64>> {
    quiver.check_len(theta.len())?;
    Ok(RepSpace::new(field, quiver, d, budget)?.census(theta))
}
