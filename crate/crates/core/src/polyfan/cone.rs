use std::cmp::Ordering;
use std::collections::HashSet;
use std::fmt;
use std::hash::{Hash, Hasher};
use std::sync::OnceLock;

use super::dd;
use super::lattice::{dot, hnf, integer_kernel, mat_vec, primitive, rank, reduce_modulo, saturate};
use super::FanError;

/// Facet inequalities `a·x ≥ 0` and span equations `b·x = 0`, both canonical:
/// equations form the Hermite basis of the orthogonal lattice, inequalities
/// are primitive, reduced modulo the equations and sorted.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct HRep {
    pub inequalities: Vec<Vec<i64>>,
    pub equations: Vec<Vec<i64>>,
}

/// A rational polyhedral cone `cone(rays) + span(lineality)` in canonical form.
///
/// The lineality is the Hermite basis of its saturated lattice, and the rays
/// are the extreme rays modulo lineality, each reduced against that basis,
/// made primitive and sorted. Two cones are equal iff they are the same set.
#[derive(Clone)]
pub struct Cone {
    ambient_dim: usize,
    rays: Vec<Vec<i64>>,
    lineality: Vec<Vec<i64>>,
    dim: usize,
    simplicial: bool,
    hrep: OnceLock<HRep>,
}

impl Cone {
    pub fn new(ambient_dim: usize, rays: Vec<Vec<i64>>, lineality: Vec<Vec<i64>>) -> Result<Cone, FanError> {
        for v in rays.iter().chain(&lineality) {
            if v.len() != ambient_dim {
                return Err(FanError::DimensionMismatch { expected: ambient_dim, found: v.len() });
            }
        }
        let lineality = saturate(&lineality, ambient_dim);
        let rays = reduce_rays(&rays, &lineality);
        let gens: Vec<Vec<i64>> = rays.iter().chain(&lineality).cloned().collect();
        let dim = rank(&gens);
        if dim == gens.len() {
            return Ok(Cone::from_parts(ambient_dim, rays, lineality, dim, true));
        }
        let g = dd::generators(&rays, &lineality, ambient_dim);
        let inner = dd::generators(&g.rays, &g.lineality, ambient_dim);
        let lineality = saturate(&inner.lineality, ambient_dim);
        let rays = reduce_rays(&inner.rays, &lineality);
        let simplicial = rays.len() + lineality.len() == dim;
        Ok(Cone::from_parts(ambient_dim, rays, lineality, dim, simplicial))
    }

    fn from_parts(
        ambient_dim: usize,
        rays: Vec<Vec<i64>>,
        lineality: Vec<Vec<i64>>,
        dim: usize,
        simplicial: bool,
    ) -> Self {
        Cone { ambient_dim, rays, lineality, dim, simplicial, hrep: OnceLock::new() }
    }

    /// Solution set of `a·x ≥ 0` for each inequality and `b·x = 0` for each equation.
    pub fn from_inequalities(
        ambient_dim: usize,
        inequalities: &[Vec<i64>],
        equations: &[Vec<i64>],
    ) -> Result<Cone, FanError> {
        for v in inequalities.iter().chain(equations) {
            if v.len() != ambient_dim {
                return Err(FanError::DimensionMismatch { expected: ambient_dim, found: v.len() });
            }
        }
        let g = dd::generators(inequalities, equations, ambient_dim);
        Cone::new(ambient_dim, g.rays, g.lineality)
    }

    pub fn origin(ambient_dim: usize) -> Cone {
        Cone::from_parts(ambient_dim, Vec::new(), Vec::new(), 0, true)
    }

    /// The whole space `ℝ^n`.
    pub fn full_space(ambient_dim: usize) -> Cone {
        let basis = (0..ambient_dim).map(|i| (0..ambient_dim).map(|j| i64::from(i == j)).collect()).collect();
        Cone::from_parts(ambient_dim, Vec::new(), basis, ambient_dim, true)
    }

    pub fn ambient_dim(&self) -> usize {
        self.ambient_dim
    }

    pub fn rays(&self) -> &[Vec<i64>] {
        &self.rays
    }

    pub fn lineality(&self) -> &[Vec<i64>] {
        &self.lineality
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    /// Rays independent modulo lineality.
    pub fn is_simplicial(&self) -> bool {
        self.simplicial
    }

    /// Rays followed by lineality basis vectors.
    pub fn generators(&self) -> Vec<Vec<i64>> {
        self.rays.iter().chain(&self.lineality).cloned().collect()
    }

    /// A basis of the linear span chosen among the generators.
    pub fn span_basis(&self) -> Vec<Vec<i64>> {
        let gens = self.generators();
        if self.simplicial {
            return gens;
        }
        super::lattice::independent_subset(&gens).into_iter().map(|i| gens[i].clone()).collect()
    }

    /// Hermite basis of `N_σ = span(σ) ∩ ℤ^n`.
    pub fn lattice_basis(&self) -> Vec<Vec<i64>> {
        saturate(&self.generators(), self.ambient_dim)
    }

    pub fn hrep(&self) -> &HRep {
        self.hrep.get_or_init(|| {
            let equations = integer_kernel(&self.generators(), self.ambient_dim);
            let dual = dd::generators(&self.rays, &self.lineality, self.ambient_dim);
            let eq_hnf = hnf(&equations, self.ambient_dim);
            let inequalities = reduce_rays(&dual.rays, &eq_hnf);
            HRep { inequalities, equations }
        })
    }

    pub fn contains(&self, x: &[i64]) -> bool {
        let h = self.hrep();
        h.equations.iter().all(|b| dot(b, x) == 0) && h.inequalities.iter().all(|a| dot(a, x) >= 0)
    }

    pub fn relative_interior_contains(&self, x: &[i64]) -> bool {
        let h = self.hrep();
        h.equations.iter().all(|b| dot(b, x) == 0) && h.inequalities.iter().all(|a| dot(a, x) > 0)
    }

    /// Sum of the rays; lies in the relative interior.
    pub fn relative_interior_point(&self) -> Vec<i64> {
        let mut p = vec![0i64; self.ambient_dim];
        for r in &self.rays {
            for (x, y) in p.iter_mut().zip(r) {
                *x += y;
            }
        }
        p
    }

    pub fn contains_cone(&self, other: &Cone) -> bool {
        let h = self.hrep();
        other.rays.iter().all(|r| self.contains(r))
            && other
                .lineality
                .iter()
                .all(|l| h.equations.iter().all(|b| dot(b, l) == 0) && h.inequalities.iter().all(|a| dot(a, l) == 0))
    }

    /// Same linear span.
    pub fn same_span(&self, other: &Cone) -> bool {
        self.dim == other.dim && self.hrep().equations == other.hrep().equations
    }

    pub fn intersect(&self, other: &Cone) -> Cone {
        let (a, b) = (self.hrep(), other.hrep());
        let ineqs: Vec<Vec<i64>> = a.inequalities.iter().chain(&b.inequalities).cloned().collect();
        let eqs: Vec<Vec<i64>> = a.equations.iter().chain(&b.equations).cloned().collect();
        Cone::from_inequalities(self.ambient_dim, &ineqs, &eqs).expect("dimensions agree")
    }

    /// Smallest face containing the point `x ∈ σ`.
    pub fn minimal_face(&self, x: &[i64]) -> Cone {
        let tight: Vec<&Vec<i64>> = self.hrep().inequalities.iter().filter(|a| dot(a, x) == 0).collect();
        let rays: Vec<Vec<i64>> = self.rays.iter().filter(|r| tight.iter().all(|a| dot(a, r) == 0)).cloned().collect();
        self.face_from_rays(rays)
    }

    fn face_from_rays(&self, rays: Vec<Vec<i64>>) -> Cone {
        // Rays of a face are extreme rays of `self`, already reduced modulo the
        // shared lineality, so the canonical form only needs the dimension.
        let gens: Vec<Vec<i64>> = rays.iter().chain(&self.lineality).cloned().collect();
        let dim = rank(&gens);
        let simplicial = dim == gens.len();
        Cone::from_parts(self.ambient_dim, rays, self.lineality.clone(), dim, simplicial)
    }

    pub fn facets(&self) -> Vec<Cone> {
        self.hrep()
            .inequalities
            .iter()
            .map(|a| self.face_from_rays(self.rays.iter().filter(|r| dot(a, r) == 0).cloned().collect()))
            .collect()
    }

    /// All faces of dimension `d`.
    pub fn faces_of_dim(&self, d: usize) -> Vec<Cone> {
        if d > self.dim {
            return Vec::new();
        }
        let mut level = vec![self.clone()];
        for _ in d..self.dim {
            let mut seen = HashSet::new();
            level = level.iter().flat_map(|c| c.facets()).filter(|f| seen.insert(f.clone())).collect();
        }
        level
    }

    pub fn is_face_of(&self, sigma: &Cone) -> bool {
        if self.ambient_dim != sigma.ambient_dim || self.lineality != sigma.lineality {
            return false;
        }
        if !self.rays.iter().all(|r| sigma.rays.binary_search(r).is_ok()) {
            return false;
        }
        if sigma.simplicial {
            return true;
        }
        sigma.minimal_face(&self.relative_interior_point()) == *self
    }

    /// Image under the linear map with matrix `m` (rows = output coordinates).
    pub fn map_linear(&self, m: &[Vec<i64>]) -> Result<Cone, FanError> {
        let out = m.len();
        let rays = self.rays.iter().map(|r| mat_vec(m, r)).collect();
        let lin = self.lineality.iter().map(|l| mat_vec(m, l)).collect();
        Cone::new(out, rays, lin)
    }

    /// `σ + span(extra)`.
    pub fn with_lineality(&self, extra: &[Vec<i64>]) -> Result<Cone, FanError> {
        let lin = self.lineality.iter().chain(extra).cloned().collect();
        Cone::new(self.ambient_dim, self.rays.clone(), lin)
    }
}

fn reduce_rays(rays: &[Vec<i64>], lineality_hnf: &[Vec<i64>]) -> Vec<Vec<i64>> {
    let mut out: Vec<Vec<i64>> = rays
        .iter()
        .map(|r| reduce_modulo(r, lineality_hnf))
        .filter(|r| r.iter().any(|&x| x != 0))
        .map(|r| primitive(&r).expect("nonzero"))
        .collect();
    out.sort();
    out.dedup();
    out
}

impl PartialEq for Cone {
    fn eq(&self, other: &Self) -> bool {
        self.ambient_dim == other.ambient_dim && self.rays == other.rays && self.lineality == other.lineality
    }
}

impl Eq for Cone {}

impl Hash for Cone {
    fn hash<H: Hasher>(&self, state: &mut H) {
        self.ambient_dim.hash(state);
        self.rays.hash(state);
        self.lineality.hash(state);
    }
}

impl PartialOrd for Cone {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for Cone {
    fn cmp(&self, other: &Self) -> Ordering {
        (self.ambient_dim, self.dim, &self.lineality, &self.rays).cmp(&(
            other.ambient_dim,
            other.dim,
            &other.lineality,
            &other.rays,
        ))
    }
}

impl fmt::Debug for Cone {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Cone(rays={:?}", self.rays)?;
        if !self.lineality.is_empty() {
            write!(f, ", lineality={:?}", self.lineality)?;
        }
        write!(f, ")")
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn cone(rays: &[&[i64]], lin: &[&[i64]], n: usize) -> Cone {
        Cone::new(n, rays.iter().map(|r| r.to_vec()).collect(), lin.iter().map(|r| r.to_vec()).collect()).unwrap()
    }

    #[test]
    fn canonical_form_is_set_equality() {
        let a = cone(&[&[2, 0], &[0, 3], &[1, 1]], &[], 2);
        let b = cone(&[&[0, 1], &[1, 0]], &[], 2);
        assert_eq!(a, b);
        assert_eq!(a.dim(), 2);
        let c = cone(&[&[1, 5]], &[&[0, 2]], 2);
        let d = cone(&[&[1, 0]], &[&[0, 1]], 2);
        assert_eq!(c, d);
    }

    #[test]
    fn opposite_rays_become_lineality() {
        let a = cone(&[&[1, 0], &[-1, 0], &[0, 1]], &[], 2);
        assert_eq!(a.lineality(), &[vec![1, 0]]);
        assert_eq!(a.rays(), &[vec![0, 1]]);
    }

    #[test]
    fn hrep_of_orthant() {
        let a = cone(&[&[1, 0, 0], &[0, 1, 0]], &[], 3);
        let h = a.hrep();
        assert_eq!(h.equations, vec![vec![0, 0, 1]]);
        assert_eq!(h.inequalities, vec![vec![0, 1, 0], vec![1, 0, 0]]);
        assert!(a.contains(&[3, 0, 0]));
        assert!(!a.contains(&[3, -1, 0]));
        assert!(a.relative_interior_contains(&[1, 1, 0]));
        assert!(!a.relative_interior_contains(&[1, 0, 0]));
    }

    #[test]
    fn faces_and_intersection() {
        let sq = cone(&[&[1, 1, 1], &[-1, 1, 1], &[1, -1, 1], &[-1, -1, 1]], &[], 3);
        assert!(!sq.is_simplicial());
        assert_eq!(sq.facets().len(), 4);
        assert_eq!(sq.faces_of_dim(1).len(), 4);
        assert_eq!(sq.faces_of_dim(0), vec![Cone::origin(3)]);
        let edge = cone(&[&[1, 1, 1], &[-1, 1, 1]], &[], 3);
        assert!(edge.is_face_of(&sq));
        let diag = cone(&[&[1, 1, 1], &[-1, -1, 1]], &[], 3);
        assert!(!diag.is_face_of(&sq));
        let half = cone(&[&[0, 0, 1]], &[&[1, 0, 0]], 3);
        let meet = sq.intersect(&half);
        assert_eq!(meet, cone(&[&[1, 0, 1], &[-1, 0, 1]], &[], 3));
    }

    #[test]
    fn map_and_span() {
        let a = cone(&[&[1, 0]], &[], 2);
        let m = vec![vec![1, 1], vec![0, 1]];
        assert_eq!(a.map_linear(&m).unwrap(), a);
        let b = cone(&[&[0, 1]], &[], 2);
        assert!(!a.same_span(&b));
        assert!(a.same_span(&cone(&[&[-1, 0]], &[], 2)));
    }
}
