use std::collections::{BTreeMap, HashMap, HashSet};

use num_integer::Integer;
use rayon::prelude::*;

use super::lattice::{combinations, dot, primitive, rank, wedge};
use super::{Cone, FanError};

/// A pure weighted fan: maximal cones of a common dimension with integer
/// weights. Cones are unique; zero weights may be stored but carry no mass.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct WeightedFan {
    ambient_dim: usize,
    dim: usize,
    cones: Vec<(Cone, i64)>,
}

/// A codimension-one face where the balancing condition fails.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Imbalance {
    pub face: Cone,
    /// `Σ w(σ) u_{σ/τ}`, not in the span of `face`.
    pub residual: Vec<i64>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BalanceReport {
    pub balanced: bool,
    pub faces_checked: usize,
    pub witness: Option<Imbalance>,
}

impl WeightedFan {
    /// Duplicated cones have their weights summed.
    pub fn new(ambient_dim: usize, dim: usize, cells: Vec<(Cone, i64)>) -> Result<WeightedFan, FanError> {
        let mut merged: BTreeMap<Cone, i64> = BTreeMap::new();
        for (c, w) in cells {
            if c.ambient_dim() != ambient_dim {
                return Err(FanError::DimensionMismatch { expected: ambient_dim, found: c.ambient_dim() });
            }
            if c.dim() != dim {
                return Err(FanError::NotPure { expected: dim, found: c.dim() });
            }
            *merged.entry(c).or_insert(0) += w;
        }
        Ok(WeightedFan { ambient_dim, dim, cones: merged.into_iter().collect() })
    }

    pub fn empty(ambient_dim: usize, dim: usize) -> WeightedFan {
        WeightedFan { ambient_dim, dim, cones: Vec::new() }
    }

    /// The origin with the given weight, as a 0-cycle.
    pub fn point(ambient_dim: usize, weight: i64) -> WeightedFan {
        WeightedFan { ambient_dim, dim: 0, cones: vec![(Cone::origin(ambient_dim), weight)] }
    }

    /// `ℝ^n` with weight 1.
    pub fn full_space(ambient_dim: usize) -> WeightedFan {
        WeightedFan { ambient_dim, dim: ambient_dim, cones: vec![(Cone::full_space(ambient_dim), 1)] }
    }

    pub fn ambient_dim(&self) -> usize {
        self.ambient_dim
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    /// All stored cones including zero-weight ones, sorted canonically.
    pub fn cones(&self) -> &[(Cone, i64)] {
        &self.cones
    }

    /// Cones carrying nonzero weight.
    pub fn weighted_cones(&self) -> impl Iterator<Item = (&Cone, i64)> {
        self.cones.iter().filter(|(_, w)| *w != 0).map(|(c, w)| (c, *w))
    }

    /// No cone carries nonzero weight.
    pub fn is_empty(&self) -> bool {
        self.weighted_cones().next().is_none()
    }

    pub fn weight_of(&self, cone: &Cone) -> i64 {
        self.cones.binary_search_by(|(c, _)| c.cmp(cone)).map(|i| self.cones[i].1).unwrap_or(0)
    }

    /// Drops zero-weight cones.
    pub fn without_zero_weights(&self) -> WeightedFan {
        WeightedFan {
            ambient_dim: self.ambient_dim,
            dim: self.dim,
            cones: self.cones.iter().filter(|(_, w)| *w != 0).cloned().collect(),
        }
    }

    pub fn scaled(&self, factor: i64) -> WeightedFan {
        WeightedFan {
            ambient_dim: self.ambient_dim,
            dim: self.dim,
            cones: self.cones.iter().map(|(c, w)| (c.clone(), w * factor)).collect(),
        }
    }

    /// Checks the balancing condition at every codimension-one face.
    pub fn is_balanced(&self) -> BalanceReport {
        let cones: Vec<(&Cone, i64)> = self.weighted_cones().collect();
        if self.dim == 0 || cones.is_empty() {
            return BalanceReport { balanced: true, faces_checked: 0, witness: None };
        }
        let contributions: Vec<Vec<(Cone, Vec<i64>)>> = cones
            .par_iter()
            .map(|(sigma, w)| {
                let basis = sigma.lattice_basis();
                sigma
                    .hrep()
                    .inequalities
                    .iter()
                    .zip(sigma.facets())
                    .map(|(a, tau)| {
                        let u = quotient_generator(&basis, a);
                        (tau, u.into_iter().map(|x| x * w).collect())
                    })
                    .collect()
            })
            .collect();
        let mut sums: HashMap<Cone, Vec<i64>> = HashMap::new();
        for (tau, v) in contributions.into_iter().flatten() {
            let entry = sums.entry(tau).or_insert_with(|| vec![0; self.ambient_dim]);
            for (x, y) in entry.iter_mut().zip(&v) {
                *x += y;
            }
        }
        let mut faces: Vec<(Cone, Vec<i64>)> = sums.into_iter().collect();
        faces.sort();
        let faces_checked = faces.len();
        let witness = faces.into_iter().find_map(|(tau, residual)| {
            let mut gens = tau.generators();
            gens.push(residual.clone());
            (rank(&gens) > tau.dim()).then_some(Imbalance { face: tau, residual })
        });
        BalanceReport { balanced: witness.is_none(), faces_checked, witness }
    }

    /// The star of `tau`: every cone `σ ⊇ τ` enlarged by `span(τ)`.
    pub fn star(&self, tau: &Cone) -> Result<WeightedFan, FanError> {
        let extra = tau.generators();
        let cells: Vec<(Cone, i64)> = self
            .cones_with_face(tau)?
            .into_iter()
            .map(|(sigma, w)| Ok((sigma.with_lineality(&extra)?, w)))
            .collect::<Result<_, FanError>>()?;
        WeightedFan::new(self.ambient_dim, self.dim, cells)
    }

    /// Weighted cones having `tau` as a face; `ConeNotInFan` when there are none.
    pub fn cones_with_face(&self, tau: &Cone) -> Result<Vec<(&Cone, i64)>, FanError> {
        if tau.ambient_dim() != self.ambient_dim {
            return Err(FanError::DimensionMismatch { expected: self.ambient_dim, found: tau.ambient_dim() });
        }
        let found: Vec<(&Cone, i64)> = self.weighted_cones().filter(|(sigma, _)| tau.is_face_of(sigma)).collect();
        if found.is_empty() {
            return Err(FanError::ConeNotInFan);
        }
        Ok(found)
    }

    /// `dim F_p` of the star at `tau` for `p = 0..=dim`. The cones of the star
    /// span the same subspaces as the cones containing `tau`, so the star is
    /// never materialized.
    pub fn star_fp_dimensions(&self, tau: &Cone) -> Result<Vec<usize>, FanError> {
        let tables: Vec<Vec<Vec<Vec<i64>>>> =
            self.cones_with_face(tau)?.into_iter().map(|(c, _)| wedge_table(c, self.ambient_dim, self.dim)).collect();
        Ok(fp_dimensions_of_tables(&tables.iter().collect::<Vec<_>>(), self.ambient_dim, self.dim))
    }

    /// Distinct faces of dimension `d` of the weighted cones.
    pub fn faces_of_dim(&self, d: usize) -> Vec<Cone> {
        let mut seen = HashSet::new();
        let mut out: Vec<Cone> =
            self.weighted_cones().flat_map(|(c, _)| c.faces_of_dim(d)).filter(|f| seen.insert(f.clone())).collect();
        out.sort();
        out
    }

    /// `dim F_p`: rank of all `p`-fold wedges of generators lying in a common cone.
    pub fn fp_dimension(&self, p: usize) -> usize {
        if self.is_empty() || p > self.dim {
            return 0;
        }
        let tables: Vec<Vec<Vec<Vec<i64>>>> =
            self.weighted_cones().map(|(c, _)| wedge_table(c, self.ambient_dim, p)).collect();
        fp_dimensions_of_tables(&tables.iter().collect::<Vec<_>>(), self.ambient_dim, p)[p]
    }

    /// Degree of a 0-cycle: the sum of its weights.
    pub fn degree0(&self) -> Result<i64, FanError> {
        if self.dim != 0 {
            return Err(FanError::NotZeroDimensional(self.dim));
        }
        Ok(self.cones.iter().map(|(_, w)| w).sum())
    }

    /// Image under a linear map that is injective on the support.
    pub fn map_linear(&self, m: &[Vec<i64>]) -> Result<WeightedFan, FanError> {
        let cells = self.cones.iter().map(|(c, w)| Ok((c.map_linear(m)?, *w))).collect::<Result<Vec<_>, FanError>>()?;
        WeightedFan::new(m.len(), self.dim, cells)
    }

    /// `A × B` in `ℝ^{n_A} × ℝ^{n_B}` with multiplied weights.
    pub fn product(&self, other: &WeightedFan) -> WeightedFan {
        let (n1, n2) = (self.ambient_dim, other.ambient_dim);
        let left = |v: &Vec<i64>| -> Vec<i64> { v.iter().copied().chain(std::iter::repeat_n(0, n2)).collect() };
        let right = |v: &Vec<i64>| -> Vec<i64> { std::iter::repeat_n(0, n1).chain(v.iter().copied()).collect() };
        let mut cells = Vec::new();
        for (a, w) in self.weighted_cones() {
            for (b, v) in other.weighted_cones() {
                let rays = a.rays().iter().map(left).chain(b.rays().iter().map(right)).collect();
                let lin = a.lineality().iter().map(left).chain(b.lineality().iter().map(right)).collect();
                cells.push((Cone::new(n1 + n2, rays, lin).expect("dimensions agree"), w * v));
            }
        }
        WeightedFan::new(n1 + n2, self.dim + other.dim, cells).expect("product of pure fans is pure")
    }

    /// Sum of weights of the cones whose relative interior contains `x`.
    pub fn weight_at(&self, x: &[i64]) -> i64 {
        self.weighted_cones().filter(|(c, _)| c.relative_interior_contains(x)).map(|(_, w)| w).sum()
    }

    /// Whether `x` lies in a weighted cone.
    pub fn support_contains(&self, x: &[i64]) -> bool {
        self.weighted_cones().any(|(c, _)| c.contains(x))
    }
}

/// Primitive with first nonzero entry positive; `None` for zero.
fn normalized(v: Vec<i64>) -> Option<Vec<i64>> {
    let mut p = primitive(&v).ok()?;
    if p.iter().find(|&&x| x != 0).is_some_and(|&x| x < 0) {
        p.iter_mut().for_each(|x| *x = -*x);
    }
    Some(p)
}

/// A lattice vector `u ∈ N_σ` with `a·u = gcd(a·N_σ)`, i.e. a lift of the
/// positive generator of `N_σ / N_τ` where `τ = σ ∩ a^⊥`.
fn quotient_generator(basis: &[Vec<i64>], a: &[i64]) -> Vec<i64> {
    let values: Vec<i64> = basis.iter().map(|b| dot(a, b)).collect();
    let mut g = 0i64;
    let mut coeffs = vec![0i64; basis.len()];
    for (i, &c) in values.iter().enumerate() {
        if c == 0 {
            continue;
        }
        let e = g.extended_gcd(&c);
        for x in coeffs.iter_mut().take(i) {
            *x *= e.x;
        }
        coeffs[i] = e.y;
        g = e.gcd;
        if g < 0 {
            g = -g;
            coeffs.iter_mut().for_each(|x| *x = -*x);
        }
    }
    debug_assert!(g > 0, "facet normal vanishes on the cone");
    let mut u = vec![0i64; a.len()];
    for (b, &k) in basis.iter().zip(&coeffs) {
        for (x, y) in u.iter_mut().zip(b) {
            *x += k * y;
        }
    }
    debug_assert_eq!(dot(a, &u), g);
    u
}

/// Normalized generators of `Λ^p(span σ)` for `p = 0..=max_p`.
fn wedge_table(sigma: &Cone, n: usize, max_p: usize) -> Vec<Vec<Vec<i64>>> {
    let basis = sigma.span_basis();
    (0..=max_p)
        .map(|p| {
            let cols = combinations(n, p);
            let mut rows: Vec<Vec<i64>> = combinations(basis.len(), p)
                .into_iter()
                .filter_map(|idx| {
                    let vs: Vec<&[i64]> = idx.iter().map(|&i| basis[i].as_slice()).collect();
                    normalized(wedge(&vs, &cols))
                })
                .collect();
            rows.sort();
            rows.dedup();
            rows
        })
        .collect()
}

/// `dim Σ_σ Λ^p(span σ)` for `p = 0..=max_p` from per-cone wedge tables.
/// Each grade stops once the wedges span all of `Λ^p ℝ^n`.
fn fp_dimensions_of_tables(tables: &[&Vec<Vec<Vec<i64>>>], n: usize, max_p: usize) -> Vec<usize> {
    if tables.is_empty() {
        return vec![0; max_p + 1];
    }
    (0..=max_p)
        .map(|p| {
            if p == 0 {
                return 1;
            }
            let full = binomial(n, p);
            let mut seen: HashSet<&[i64]> = HashSet::new();
            let mut echelon = Echelon::default();
            for w in tables.iter().flat_map(|t| t[p].iter()) {
                if !seen.insert(w.as_slice()) {
                    continue;
                }
                if !echelon.insert(w) {
                    let mut rows: Vec<Vec<i64>> = seen.into_iter().map(|r| r.to_vec()).collect();
                    rows.sort();
                    return rank(&rows);
                }
                if echelon.rows.len() == full {
                    break;
                }
            }
            echelon.rows.len()
        })
        .collect()
}

fn binomial(n: usize, k: usize) -> usize {
    (0..k).fold(1, |acc, i| acc * (n - i) / (i + 1))
}

/// `F_p` dimensions of stars of one fan, with each cone's wedges computed once.
pub struct WedgeIndex<'a> {
    fan: &'a WeightedFan,
    cones: Vec<&'a Cone>,
    tables: Vec<Vec<Vec<Vec<i64>>>>,
    /// Indices of the cones having each ray as a generator, ascending.
    by_ray: HashMap<&'a [i64], Vec<usize>>,
}

impl<'a> WedgeIndex<'a> {
    pub fn new(fan: &'a WeightedFan) -> WedgeIndex<'a> {
        let cones: Vec<&Cone> = fan.weighted_cones().map(|(c, _)| c).collect();
        let tables = cones.par_iter().map(|c| wedge_table(c, fan.ambient_dim, fan.dim)).collect();
        let mut by_ray: HashMap<&[i64], Vec<usize>> = HashMap::new();
        for (i, c) in cones.iter().enumerate() {
            for r in c.rays() {
                by_ray.entry(r.as_slice()).or_default().push(i);
            }
        }
        WedgeIndex { fan, cones, tables, by_ray }
    }

    /// Same as [`WeightedFan::star_fp_dimensions`].
    pub fn star_fp_dimensions(&self, tau: &Cone) -> Result<Vec<usize>, FanError> {
        if tau.ambient_dim() != self.fan.ambient_dim {
            return Err(FanError::DimensionMismatch { expected: self.fan.ambient_dim, found: tau.ambient_dim() });
        }
        // A face of a cone has its rays among the cone's rays.
        let candidates: Vec<usize> =
            match tau.rays().iter().map(|r| self.by_ray.get(r.as_slice())).collect::<Option<Vec<_>>>() {
                None => Vec::new(),
                Some(lists) => match lists.iter().min_by_key(|l| l.len()) {
                    None => (0..self.cones.len()).collect(),
                    Some(shortest) => shortest.to_vec(),
                },
            };
        let tables: Vec<&Vec<Vec<Vec<i64>>>> =
            candidates.into_iter().filter(|&i| tau.is_face_of(self.cones[i])).map(|i| &self.tables[i]).collect();
        if tables.is_empty() {
            return Err(FanError::ConeNotInFan);
        }
        Ok(fp_dimensions_of_tables(&tables, self.fan.ambient_dim, self.fan.dim))
    }
}

/// Integer row echelon form kept primitive, in `i128`.
#[derive(Default)]
struct Echelon {
    /// `(pivot column, row)`; each row vanishes at the pivots of earlier rows.
    rows: Vec<(usize, Vec<i128>)>,
}

impl Echelon {
    /// Adds `v` if independent. `false` on overflow, leaving the caller to
    /// fall back to exact rank.
    fn insert(&mut self, v: &[i64]) -> bool {
        let mut r: Vec<i128> = v.iter().map(|&x| i128::from(x)).collect();
        for (piv, b) in &self.rows {
            let c = r[*piv];
            if c == 0 {
                continue;
            }
            let g = c.gcd(&b[*piv]);
            let (fr, fb) = (b[*piv] / g, c / g);
            for (x, y) in r.iter_mut().zip(b) {
                let Some(z) = x.checked_mul(fr).and_then(|a| y.checked_mul(fb).and_then(|b| a.checked_sub(b))) else {
                    return false;
                };
                *x = z;
            }
            let g = r.iter().fold(0i128, |g, x| g.gcd(x));
            if g > 1 {
                r.iter_mut().for_each(|x| *x /= g);
            }
        }
        if let Some(piv) = r.iter().position(|&x| x != 0) {
            self.rows.push((piv, r));
        }
        true
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn ray(v: &[i64]) -> Cone {
        Cone::new(v.len(), vec![v.to_vec()], vec![]).unwrap()
    }

    fn tripod(weights: [i64; 3]) -> WeightedFan {
        let rays = [[1, 0], [0, 1], [-1, -1]];
        WeightedFan::new(2, 1, rays.iter().zip(weights).map(|(r, w)| (ray(r), w)).collect()).unwrap()
    }

    #[test]
    fn tripod_balancing() {
        assert!(tripod([1, 1, 1]).is_balanced().balanced);
        let report = tripod([1, 1, 2]).is_balanced();
        assert!(!report.balanced);
        let w = report.witness.unwrap();
        assert_eq!(w.face, Cone::origin(2));
        assert_eq!(w.residual, vec![-1, -1]);
    }

    #[test]
    fn balancing_uses_lattice_generator() {
        // Rays (2,1) and (-2,-1) with a non-primitive sum must cancel exactly.
        let f = WeightedFan::new(2, 1, vec![(ray(&[2, 1]), 1), (ray(&[-2, -1]), 1)]).unwrap();
        assert!(f.is_balanced().balanced);
        let g = WeightedFan::new(2, 1, vec![(ray(&[2, 1]), 1), (ray(&[-1, 0]), 2), (ray(&[0, -1]), 1)]).unwrap();
        assert!(g.is_balanced().balanced);
    }

    #[test]
    fn star_of_origin_and_ray() {
        let f = tripod([1, 1, 1]);
        assert_eq!(f.star(&Cone::origin(2)).unwrap(), f);
        let s = f.star(&ray(&[1, 0])).unwrap();
        assert_eq!(s.cones().len(), 1);
        assert_eq!(s.cones()[0].0, Cone::new(2, vec![], vec![vec![1, 0]]).unwrap());
        assert_eq!(f.star(&ray(&[1, 1])), Err(FanError::ConeNotInFan));
    }

    #[test]
    fn fp_dimensions_of_tripod() {
        let f = tripod([1, 1, 1]);
        assert_eq!(f.fp_dimension(0), 1);
        assert_eq!(f.fp_dimension(1), 2);
        assert_eq!(WeightedFan::empty(2, 1).fp_dimension(0), 0);
    }

    #[test]
    fn degree_of_points() {
        assert_eq!(WeightedFan::empty(3, 0).degree0(), Ok(0));
        assert_eq!(WeightedFan::point(2, -1).degree0(), Ok(-1));
        assert_eq!(tripod([1, 1, 1]).degree0(), Err(FanError::NotZeroDimensional(1)));
    }

    #[test]
    fn duplicates_merge() {
        let f = WeightedFan::new(2, 1, vec![(ray(&[1, 0]), 1), (ray(&[2, 0]), 2)]).unwrap();
        assert_eq!(f.cones().len(), 1);
        assert_eq!(f.weight_of(&ray(&[1, 0])), 3);
        assert!(matches!(
            WeightedFan::new(2, 1, vec![(Cone::origin(2), 1)]),
            Err(FanError::NotPure { expected: 1, found: 0 })
        ));
    }
}
