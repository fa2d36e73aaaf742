//! Matroids given by an explicit family of bases.
//!
//! Ground sets are `{0, …, n-1}` with `n ≤ MAX_ELEMENTS`. On construction the
//! rank of every subset is tabulated once, so rank, closure and flat queries
//! are table lookups afterwards.

mod catalog;
mod set;

use std::collections::{BTreeSet, HashSet};
use std::sync::{Arc, OnceLock};

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::polynomial::Polynomial;

pub use catalog::{connected_graphs, fano, free, graphic, non_fano, small_matroid_suite, uniform};
pub use set::ElementSet;

/// Largest supported ground set.
pub const MAX_ELEMENTS: usize = 20;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum MatroidError {
    #[error("basis family is empty")]
    EmptyBases,
    #[error("bases {first:?} and {second:?} have different cardinalities")]
    UnequalCardinality { first: Vec<usize>, second: Vec<usize> },
    #[error("basis exchange fails: removing {x} from {b1:?} admits no replacement from {b2:?}")]
    ExchangeViolation { b1: Vec<usize>, b2: Vec<usize>, x: usize },
    #[error("element {element} is outside the ground set of size {n}")]
    ElementOutOfRange { element: usize, n: usize },
    #[error("ground set of size {0} exceeds the supported maximum of {MAX_ELEMENTS}")]
    TooLarge(usize),
    #[error("{inner:?} is not a subset of {outer:?}")]
    SubsetViolation { inner: Vec<usize>, outer: Vec<usize> },
    #[error("element {0} is a loop")]
    LoopInput(usize),
    #[error("flats and circuits descriptions of the parallel connection disagree")]
    ConstructionMismatch,
}

/// A flat of a matroid: a subset equal to its own closure.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(transparent)]
pub struct Flat(pub ElementSet);

impl Flat {
    pub fn elements(self) -> ElementSet {
        self.0
    }
}

struct Tables {
    rank: Vec<u8>,
    flats: OnceLock<Vec<Vec<Flat>>>,
    circuits: OnceLock<Vec<ElementSet>>,
}

/// A matroid on `{0, …, n-1}` represented by its bases.
#[derive(Clone)]
pub struct Matroid {
    n: usize,
    rank: usize,
    bases: Vec<ElementSet>,
    tables: Arc<Tables>,
}

impl PartialEq for Matroid {
    fn eq(&self, other: &Self) -> bool {
        self.n == other.n && self.bases == other.bases
    }
}

impl Eq for Matroid {}

impl std::hash::Hash for Matroid {
    fn hash<H: std::hash::Hasher>(&self, state: &mut H) {
        self.n.hash(state);
        self.bases.hash(state);
    }
}

impl Serialize for Matroid {
    fn serialize<S: serde::Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        self.to_json().serialize(s)
    }
}

impl std::fmt::Debug for Matroid {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.debug_struct("Matroid").field("n", &self.n).field("rank", &self.rank).field("bases", &self.bases).finish()
    }
}

/// A minor together with the original label of each of its elements.
#[derive(Clone, Debug)]
pub struct Minor {
    pub matroid: Matroid,
    pub labels: Vec<usize>,
}

/// Parallel connection `P(M1, M2)` with the placement of the factors' elements.
///
/// The ground set is laid out as `E1 - p1`, then `E2 - p2`, then the basepoint.
#[derive(Clone, Debug)]
pub struct ParallelConnection {
    pub matroid: Matroid,
    /// Label in `P` of each element of `M1` (the basepoint maps to `basepoint`).
    pub from_first: Vec<usize>,
    /// Label in `P` of each element of `M2`.
    pub from_second: Vec<usize>,
    pub basepoint: usize,
}

/// Serialized form: `{"n": …, "bases": [[…], …]}`.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct MatroidJson {
    pub n: usize,
    pub bases: Vec<Vec<usize>>,
}

impl Matroid {
    /// Validated constructor; the exchange axiom is checked exhaustively.
    pub fn from_bases(n: usize, bases: &[Vec<usize>]) -> Result<Matroid, MatroidError> {
        if n > MAX_ELEMENTS {
            return Err(MatroidError::TooLarge(n));
        }
        if bases.is_empty() {
            return Err(MatroidError::EmptyBases);
        }
        let mut sets = Vec::with_capacity(bases.len());
        for b in bases {
            if let Some(&element) = b.iter().find(|&&x| x >= n) {
                return Err(MatroidError::ElementOutOfRange { element, n });
            }
            sets.push(b.iter().copied().collect::<ElementSet>());
        }
        let r = sets[0].len();
        if let Some(other) = sets.iter().find(|s| s.len() != r) {
            return Err(MatroidError::UnequalCardinality { first: sets[0].to_vec(), second: other.to_vec() });
        }
        sets.sort();
        sets.dedup();
        check_exchange(&sets)?;
        Ok(Matroid::from_trusted(n, sets))
    }

    /// Builds a matroid from a basis family already known to be valid.
    pub(crate) fn from_trusted(n: usize, mut bases: Vec<ElementSet>) -> Matroid {
        assert!(n <= MAX_ELEMENTS, "ground set too large");
        bases.sort();
        bases.dedup();
        let rank = bases[0].len();
        let rank_table = rank_table(n, &bases);
        Matroid {
            n,
            rank,
            bases,
            tables: Arc::new(Tables { rank: rank_table, flats: OnceLock::new(), circuits: OnceLock::new() }),
        }
    }

    pub fn from_json(json: &MatroidJson) -> Result<Matroid, MatroidError> {
        Matroid::from_bases(json.n, &json.bases)
    }

    /// Canonical JSON form with bases sorted lexicographically.
    pub fn to_json(&self) -> MatroidJson {
        let mut bases: Vec<Vec<usize>> = self.bases.iter().map(|b| b.to_vec()).collect();
        bases.sort();
        MatroidJson { n: self.n, bases }
    }

    pub fn n(&self) -> usize {
        self.n
    }

    /// Rank of the whole matroid.
    pub fn rank(&self) -> usize {
        self.rank
    }

    pub fn ground_set(&self) -> ElementSet {
        ElementSet::full(self.n)
    }

    pub fn bases(&self) -> &[ElementSet] {
        &self.bases
    }

    /// `max |B ∩ S|` over bases `B`.
    pub fn rank_of(&self, s: ElementSet) -> usize {
        self.tables.rank[s.intersection(self.ground_set()).bits() as usize] as usize
    }

    pub fn is_independent(&self, s: ElementSet) -> bool {
        self.rank_of(s) == s.len()
    }

    pub fn closure(&self, s: ElementSet) -> ElementSet {
        let r = self.rank_of(s);
        (0..self.n).filter(|&x| s.contains(x) || self.rank_of(s.with(x)) == r).collect()
    }

    pub fn is_flat(&self, s: ElementSet) -> bool {
        self.closure(s) == s
    }

    pub fn loops(&self) -> Vec<usize> {
        (0..self.n).filter(|&x| self.rank_of(ElementSet::singleton(x)) == 0).collect()
    }

    pub fn has_loops(&self) -> bool {
        !self.loops().is_empty()
    }

    pub fn coloops(&self) -> Vec<usize> {
        (0..self.n).filter(|&x| self.rank_of(self.ground_set().without(x)) < self.rank).collect()
    }

    /// All flats graded by rank: `flats()[r]` holds the flats of rank `r`.
    pub fn flats(&self) -> &[Vec<Flat>] {
        self.tables.flats.get_or_init(|| {
            let mut closures: BTreeSet<ElementSet> = BTreeSet::new();
            let mut seen = vec![false; 1usize << self.n];
            for s in self.ground_set().subsets() {
                let c = self.closure(s);
                if !seen[c.bits() as usize] {
                    seen[c.bits() as usize] = true;
                    closures.insert(c);
                }
            }
            let mut graded = vec![Vec::new(); self.rank + 1];
            for c in closures {
                graded[self.rank_of(c)].push(Flat(c));
            }
            for level in graded.iter_mut() {
                level.sort_by_key(|f| (f.0.to_vec(), f.0));
            }
            graded
        })
    }

    pub fn all_flats(&self) -> Vec<Flat> {
        self.flats().iter().flatten().copied().collect()
    }

    /// Minimal dependent sets.
    pub fn circuits(&self) -> &[ElementSet] {
        self.tables.circuits.get_or_init(|| {
            self.ground_set()
                .subsets()
                .filter(|&s| !self.is_independent(s) && s.iter().all(|x| self.is_independent(s.without(x))))
                .collect()
        })
    }

    /// Connected components (elements joined by a common circuit). Loops are singletons.
    pub fn components(&self) -> Vec<ElementSet> {
        let mut parent: Vec<usize> = (0..self.n).collect();
        fn find(p: &mut [usize], x: usize) -> usize {
            let mut r = x;
            while p[r] != r {
                r = p[r];
            }
            p[x] = r;
            r
        }
        for c in self.circuits() {
            let elems = c.to_vec();
            for w in elems.windows(2) {
                let (a, b) = (find(&mut parent, w[0]), find(&mut parent, w[1]));
                parent[a] = b;
            }
        }
        let mut comps: Vec<ElementSet> = Vec::new();
        let mut root_of: std::collections::HashMap<usize, usize> = Default::default();
        for x in 0..self.n {
            let r = find(&mut parent, x);
            let idx = *root_of.entry(r).or_insert_with(|| {
                comps.push(ElementSet::EMPTY);
                comps.len() - 1
            });
            comps[idx] = comps[idx].with(x);
        }
        comps
    }

    pub fn is_connected(&self) -> bool {
        self.components().len() <= 1
    }

    /// `M|restrict / contract`, relabelled to `0..|restrict - contract|` in increasing order.
    pub fn minor(&self, restrict: ElementSet, contract: ElementSet) -> Result<Minor, MatroidError> {
        if !restrict.is_subset(self.ground_set()) {
            return Err(MatroidError::SubsetViolation { inner: restrict.to_vec(), outer: self.ground_set().to_vec() });
        }
        if !contract.is_subset(restrict) {
            return Err(MatroidError::SubsetViolation { inner: contract.to_vec(), outer: restrict.to_vec() });
        }
        let rest = restrict.difference(contract);
        let labels = rest.to_vec();
        let r_restrict = self.rank_of(restrict);
        let target = r_restrict - self.rank_of(contract);
        let bases: Vec<ElementSet> = rest
            .subsets()
            .filter(|i| i.len() == target && self.rank_of(i.union(contract)) == r_restrict)
            .map(|i| relabel_into(i, &labels))
            .collect();
        Ok(Minor { matroid: Matroid::from_trusted(labels.len(), bases), labels })
    }

    /// `M \ e`.
    pub fn delete(&self, e: usize) -> Result<Minor, MatroidError> {
        self.minor(self.ground_set().without(e), ElementSet::EMPTY)
    }

    /// `M / e`.
    pub fn contract(&self, e: usize) -> Result<Minor, MatroidError> {
        self.minor(self.ground_set(), ElementSet::singleton(e))
    }

    /// Direct sum; elements of `other` are shifted by `self.n()`.
    pub fn direct_sum(&self, other: &Matroid) -> Matroid {
        let shift = self.n;
        let bases = self
            .bases
            .iter()
            .flat_map(|&b1| other.bases.iter().map(move |&b2| b1.union(ElementSet::from_bits(b2.bits() << shift))))
            .collect();
        Matroid::from_trusted(self.n + other.n, bases)
    }

    /// Applies a permutation: element `x` becomes `perm[x]`.
    pub fn relabel(&self, perm: &[usize]) -> Matroid {
        assert_eq!(perm.len(), self.n);
        let bases = self.bases.iter().map(|b| b.iter().map(|x| perm[x]).collect()).collect();
        Matroid::from_trusted(self.n, bases)
    }

    /// Parallel connection at basepoints `p1 ∈ M1`, `p2 ∈ M2`, built from the
    /// flat description and cross-checked against the circuit description.
    pub fn parallel_connection(
        &self,
        p1: usize,
        other: &Matroid,
        p2: usize,
    ) -> Result<ParallelConnection, MatroidError> {
        for (m, p) in [(self, p1), (other, p2)] {
            if p >= m.n {
                return Err(MatroidError::ElementOutOfRange { element: p, n: m.n });
            }
            if let Some(&l) = m.loops().first() {
                return Err(MatroidError::LoopInput(l));
            }
        }
        let n = self.n + other.n - 1;
        if n > MAX_ELEMENTS {
            return Err(MatroidError::TooLarge(n));
        }
        let basepoint = n - 1;
        let mut from_first = vec![0; self.n];
        let mut next = 0;
        for (x, slot) in from_first.iter_mut().enumerate() {
            if x == p1 {
                *slot = basepoint;
            } else {
                *slot = next;
                next += 1;
            }
        }
        let mut from_second = vec![0; other.n];
        for (x, slot) in from_second.iter_mut().enumerate() {
            if x == p2 {
                *slot = basepoint;
            } else {
                *slot = next;
                next += 1;
            }
        }
        let pull = |s: ElementSet, labels: &[usize]| -> ElementSet {
            labels.iter().enumerate().filter(|(_, &l)| s.contains(l)).map(|(x, _)| x).collect()
        };
        let push = |s: ElementSet, labels: &[usize]| -> ElementSet { s.iter().map(|x| labels[x]).collect() };

        let ground = ElementSet::full(n);
        let flats: Vec<ElementSet> = ground
            .subsets()
            .filter(|&f| self.is_flat(pull(f, &from_first)) && other.is_flat(pull(f, &from_second)))
            .collect();
        let closure =
            |s: ElementSet| flats.iter().filter(|f| s.is_subset(**f)).fold(ground, |acc, f| acc.intersection(*f));
        let by_flats = maximal_independent(ground, |s| s.iter().all(|x| !closure(s.without(x)).contains(x)));

        let mut circuits: Vec<ElementSet> = Vec::new();
        circuits.extend(self.circuits().iter().map(|&c| push(c, &from_first)));
        circuits.extend(other.circuits().iter().map(|&c| push(c, &from_second)));
        let through_p = |m: &Matroid, p: usize, labels: &[usize]| -> Vec<ElementSet> {
            m.circuits().iter().filter(|c| c.contains(p)).map(|&c| push(c.without(p), labels)).collect()
        };
        let halves1 = through_p(self, p1, &from_first);
        let halves2 = through_p(other, p2, &from_second);
        for &i1 in &halves1 {
            for &i2 in &halves2 {
                circuits.push(i1.union(i2));
            }
        }
        let by_circuits = maximal_independent(ground, |s| !circuits.iter().any(|c| c.is_subset(s)));
        if by_flats != by_circuits {
            return Err(MatroidError::ConstructionMismatch);
        }
        Ok(ParallelConnection { matroid: Matroid::from_trusted(n, by_flats), from_first, from_second, basepoint })
    }

    /// Characteristic polynomial by Möbius summation over the lattice of flats.
    /// Zero exactly when the matroid has a loop.
    pub fn characteristic_polynomial(&self) -> Polynomial {
        if self.has_loops() {
            return Polynomial::zero();
        }
        let flats = self.all_flats();
        let mut mobius: Vec<i64> = Vec::with_capacity(flats.len());
        let mut coeffs = vec![0i64; self.rank + 1];
        for (i, f) in flats.iter().enumerate() {
            let mu = if i == 0 {
                1
            } else {
                -flats[..i].iter().zip(&mobius).filter(|(g, _)| g.0.is_proper_subset(f.0)).map(|(_, m)| m).sum::<i64>()
            };
            mobius.push(mu);
            coeffs[self.rank - self.rank_of(f.0)] += mu;
        }
        Polynomial::new(coeffs)
    }

    /// `χ_M / (λ - 1)`; `None` when `M` has a loop or an empty ground set.
    pub fn reduced_characteristic_polynomial(&self) -> Option<Polynomial> {
        if self.n == 0 || self.has_loops() {
            return None;
        }
        self.characteristic_polynomial().div_exact_linear(1)
    }

    /// `(-1)^(r-1) χ̄_M(1)`, and `0` for matroids with loops.
    pub fn beta_invariant(&self) -> i64 {
        match self.reduced_characteristic_polynomial() {
            Some(reduced) => {
                let sign = if (self.rank + 1).is_multiple_of(2) { 1 } else { -1 };
                sign * reduced.eval(1)
            }
            None => 0,
        }
    }
}

fn relabel_into(s: ElementSet, labels: &[usize]) -> ElementSet {
    labels.iter().enumerate().filter(|(_, &l)| s.contains(l)).map(|(i, _)| i).collect()
}

/// Bases of the independence system on `ground` given by `independent`.
fn maximal_independent(ground: ElementSet, independent: impl Fn(ElementSet) -> bool) -> Vec<ElementSet> {
    let indep: Vec<ElementSet> = ground.subsets().filter(|&s| independent(s)).collect();
    let r = indep.iter().map(|s| s.len()).max().unwrap_or(0);
    let mut bases: Vec<ElementSet> = indep.into_iter().filter(|s| s.len() == r).collect();
    bases.sort();
    bases
}

fn check_exchange(bases: &[ElementSet]) -> Result<(), MatroidError> {
    let lookup: HashSet<ElementSet> = bases.iter().copied().collect();
    for &b1 in bases {
        for &b2 in bases {
            if b1 == b2 {
                continue;
            }
            for x in b1.difference(b2).iter() {
                let ok = b2.difference(b1).iter().any(|y| lookup.contains(&b1.without(x).with(y)));
                if !ok {
                    return Err(MatroidError::ExchangeViolation { b1: b1.to_vec(), b2: b2.to_vec(), x });
                }
            }
        }
    }
    Ok(())
}

/// Rank of every subset, indexed by bitmask.
fn rank_table(n: usize, bases: &[ElementSet]) -> Vec<u8> {
    let size = 1usize << n;
    let mut independent = vec![false; size];
    for b in bases {
        independent[b.bits() as usize] = true;
    }
    for s in (0..size).rev() {
        if !independent[s] {
            independent[s] = (0..n).any(|x| s & (1 << x) == 0 && independent[s | (1 << x)]);
        }
    }
    let mut rank = vec![0u8; size];
    for s in 1..size {
        rank[s] = if independent[s] {
            (s as u32).count_ones() as u8
        } else {
            (0..n).filter(|x| s & (1 << x) != 0).map(|x| rank[s & !(1 << x)]).max().unwrap_or(0)
        };
    }
    rank
}

#[cfg(test)]
mod tests {
    use super::*;

    fn set(v: &[usize]) -> ElementSet {
        v.iter().copied().collect()
    }

    /// Deletion–contraction recursion, independent of the flat lattice.
    fn chi_by_deletion_contraction(m: &Matroid) -> Polynomial {
        if m.n() == 0 {
            return Polynomial::one();
        }
        if m.has_loops() {
            return Polynomial::zero();
        }
        let e = m.n() - 1;
        if m.coloops().contains(&e) {
            return &Polynomial::linear(1) * &chi_by_deletion_contraction(&m.contract(e).unwrap().matroid);
        }
        &chi_by_deletion_contraction(&m.delete(e).unwrap().matroid)
            - &chi_by_deletion_contraction(&m.contract(e).unwrap().matroid)
    }

    #[test]
    fn from_bases_errors() {
        assert_eq!(Matroid::from_bases(2, &[]), Err(MatroidError::EmptyBases));
        assert!(matches!(Matroid::from_bases(2, &[vec![0, 1], vec![0]]), Err(MatroidError::UnequalCardinality { .. })));
        assert_eq!(
            Matroid::from_bases(4, &[vec![0, 1], vec![2, 3]]),
            Err(MatroidError::ExchangeViolation { b1: vec![0, 1], b2: vec![2, 3], x: 0 })
        );
        assert!(matches!(Matroid::from_bases(2, &[vec![3]]), Err(MatroidError::ElementOutOfRange { .. })));
    }

    #[test]
    fn uniform_rank_and_flats() {
        let u23 = uniform(2, 3);
        assert_eq!(u23.rank(), 2);
        assert_eq!(u23.rank_of(set(&[0])), 1);
        assert_eq!(u23.rank_of(ElementSet::EMPTY), 0);
        let flats = u23.all_flats();
        assert_eq!(flats.len(), 5);
        assert_eq!(u23.flats()[1].iter().map(|f| f.0.to_vec()).collect::<Vec<_>>(), vec![vec![0], vec![1], vec![2]]);
        assert_eq!(free(3).all_flats().len(), 8);
        let u13 = uniform(1, 3);
        assert_eq!(u13.all_flats(), vec![Flat(ElementSet::EMPTY), Flat(set(&[0, 1, 2]))]);
    }

    #[test]
    fn graphic_k4_triangle_rank() {
        let k4 = graphic(4, &[(0, 1), (0, 2), (0, 3), (1, 2), (1, 3), (2, 3)]).unwrap();
        assert_eq!(k4.rank(), 3);
        // edges 01, 02, 12 form a triangle
        assert_eq!(k4.rank_of(set(&[0, 1, 3])), 2);
        assert_eq!(k4.bases().len(), 16);
    }

    #[test]
    fn minors() {
        let u23 = uniform(2, 3);
        assert_eq!(u23.minor(set(&[0, 1]), ElementSet::EMPTY).unwrap().matroid, uniform(2, 2));
        let c = u23.minor(set(&[0, 1, 2]), set(&[0])).unwrap();
        assert_eq!(c.matroid, uniform(1, 2));
        assert_eq!(c.labels, vec![1, 2]);
        let all = u23.minor(u23.ground_set(), u23.ground_set()).unwrap();
        assert_eq!((all.matroid.n(), all.matroid.rank()), (0, 0));
        assert!(matches!(u23.minor(set(&[0]), set(&[1])), Err(MatroidError::SubsetViolation { .. })));
    }

    #[test]
    fn minor_composition() {
        let m = fano();
        let a = set(&[0, 1, 2, 3, 4, 5]);
        let b = set(&[0]);
        let first = m.minor(a, b).unwrap();
        // restrict further to the images of {1,2,3,4}, contract the image of {1}
        let pos = |x: usize| first.labels.iter().position(|&l| l == x).unwrap();
        let a2: ElementSet = [1, 2, 3, 4].iter().map(|&x| pos(x)).collect();
        let b2: ElementSet = [pos(1)].into_iter().collect();
        let second = first.matroid.minor(a2, b2).unwrap();
        let direct = m.minor(set(&[0, 1, 2, 3, 4]), set(&[0, 1])).unwrap();
        assert_eq!(second.matroid, direct.matroid);
        let composed: Vec<usize> = second.labels.iter().map(|&l| first.labels[l]).collect();
        assert_eq!(composed, direct.labels);
    }

    #[test]
    fn characteristic_polynomials() {
        assert_eq!(uniform(1, 1).characteristic_polynomial(), Polynomial::new(vec![-1, 1]));
        assert_eq!(uniform(2, 3).characteristic_polynomial(), Polynomial::new(vec![2, -3, 1]));
        let with_loop = Matroid::from_bases(2, &[vec![0]]).unwrap();
        assert!(with_loop.characteristic_polynomial().is_zero());
        assert_eq!(with_loop.beta_invariant(), 0);
    }

    #[test]
    fn beta_examples() {
        assert_eq!(uniform(2, 3).beta_invariant(), 1);
        assert_eq!(uniform(1, 3).beta_invariant(), 1);
        assert_eq!(uniform(2, 2).beta_invariant(), 0);
        assert_eq!(uniform(3, 4).beta_invariant(), 1);
        assert_eq!(uniform(2, 4).beta_invariant(), 2);
    }

    #[test]
    fn direct_sum_examples() {
        assert_eq!(uniform(1, 1).direct_sum(&uniform(1, 1)), free(2));
        let s = uniform(2, 3).direct_sum(&uniform(1, 1));
        assert_eq!((s.n(), s.rank()), (4, 3));
        assert_eq!(
            s.characteristic_polynomial(),
            &uniform(2, 3).characteristic_polynomial() * &uniform(1, 1).characteristic_polynomial()
        );
        assert_eq!(s.beta_invariant(), 0);
    }

    #[test]
    fn parallel_connection_of_triangles() {
        let u23 = uniform(2, 3);
        let p = u23.parallel_connection(0, &u23, 0).unwrap();
        assert_eq!((p.matroid.n(), p.matroid.rank()), (5, 3));
        // flats restricted to E1 are exactly the flats of M1
        let restricted: BTreeSet<ElementSet> =
            p.matroid.all_flats().iter().map(|f| (0..3).filter(|&x| f.0.contains(p.from_first[x])).collect()).collect();
        let expected: BTreeSet<ElementSet> = u23.all_flats().iter().map(|f| f.0).collect();
        assert_eq!(restricted, expected);
    }

    #[test]
    fn parallel_connection_with_coloop_basepoint() {
        // P(U_{1,1}, M) at the coloop is M itself
        let m = uniform(2, 3);
        let p = uniform(1, 1).parallel_connection(0, &m, 1).unwrap();
        let back: Vec<usize> = p.from_second.clone();
        assert_eq!(p.matroid.relabel(&inverse(&back)), m);
        let with_loop = Matroid::from_bases(2, &[vec![0]]).unwrap();
        assert_eq!(with_loop.parallel_connection(0, &m, 0).unwrap_err(), MatroidError::LoopInput(1));
    }

    fn inverse(perm: &[usize]) -> Vec<usize> {
        let mut inv = vec![0; perm.len()];
        for (i, &p) in perm.iter().enumerate() {
            inv[p] = i;
        }
        inv
    }

    #[test]
    fn deletion_contraction_oracle_small() {
        for m in [uniform(2, 3), uniform(3, 5), fano(), non_fano(), free(3), uniform(1, 4)] {
            assert_eq!(m.characteristic_polynomial(), chi_by_deletion_contraction(&m), "{m:?}");
        }
    }

    #[test]
    fn components_and_connectivity() {
        assert!(uniform(2, 3).is_connected());
        assert_eq!(free(3).components().len(), 3);
        assert_eq!(uniform(2, 3).direct_sum(&uniform(2, 3)).components().len(), 2);
    }

    #[test]
    fn json_is_canonical() {
        let m = Matroid::from_bases(3, &[vec![2, 1], vec![0, 2], vec![1, 0]]).unwrap();
        let j = m.to_json();
        assert_eq!(j.bases, vec![vec![0, 1], vec![0, 2], vec![1, 2]]);
        assert_eq!(Matroid::from_json(&j).unwrap(), m);
    }

    mod props {
        use super::*;
        use proptest::prelude::*;

        /// Random matroids on at most 7 elements: sums of relabelled uniform and graphic pieces.
        pub(crate) fn arb_matroid() -> impl Strategy<Value = Matroid> {
            let uni = (1usize..=4, 0usize..=3).prop_map(|(n, r)| uniform(r.min(n), n));
            let graph =
                proptest::collection::vec((0usize..4, 0usize..4), 1..6).prop_map(|edges| graphic(4, &edges).unwrap());
            let piece = prop_oneof![uni, graph];
            (piece.clone(), proptest::option::of(piece), any::<u64>()).prop_filter_map("too large", |(a, b, seed)| {
                let m = match b {
                    Some(b) if a.n() + b.n() <= 7 => a.direct_sum(&b),
                    _ => a,
                };
                if m.n() == 0 || m.n() > 7 {
                    return None;
                }
                let mut perm: Vec<usize> = (0..m.n()).collect();
                let mut s = seed;
                for i in (1..perm.len()).rev() {
                    s = s.wrapping_mul(6364136223846793005).wrapping_add(1442695040888963407);
                    perm.swap(i, (s >> 33) as usize % (i + 1));
                }
                Some(m.relabel(&perm))
            })
        }

        proptest! {
            #[test]
            fn mobius_matches_deletion_contraction(m in arb_matroid()) {
                prop_assert_eq!(m.characteristic_polynomial(), chi_by_deletion_contraction(&m));
            }

            #[test]
            fn flats_closed_under_intersection(m in arb_matroid()) {
                let flats: HashSet<ElementSet> = m.all_flats().iter().map(|f| f.0).collect();
                for a in &flats {
                    for b in &flats {
                        prop_assert!(flats.contains(&a.intersection(*b)));
                    }
                }
                prop_assert!(flats.contains(&m.ground_set()));
                prop_assert!(flats.contains(&m.closure(ElementSet::EMPTY)));
            }

            #[test]
            fn direct_sum_multiplies_chi(a in arb_matroid(), b in arb_matroid()) {
                prop_assume!(a.n() + b.n() <= 10);
                let s = a.direct_sum(&b);
                prop_assert_eq!(s.characteristic_polynomial(), &a.characteristic_polynomial() * &b.characteristic_polynomial());
            }

            #[test]
            fn beta_sign_matches_connectivity(m in arb_matroid()) {
                prop_assume!(!m.has_loops() && m.n() >= 2);
                if m.is_connected() {
                    prop_assert!(m.beta_invariant() >= 1);
                } else {
                    prop_assert_eq!(m.beta_invariant(), 0);
                }
            }

            #[test]
            fn exchange_holds_for_generated(m in arb_matroid()) {
                prop_assert!(Matroid::from_bases(m.n(), &m.to_json().bases).is_ok());
            }
        }
    }
}
