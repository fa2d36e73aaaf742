//! CSM cycles of matroids: the beta-invariant weight formula, the independent
//! route through `ψ` of stars, GL-invariance and the product formula.

use std::collections::{BTreeMap, BTreeSet};

use rand::Rng;
use rayon::prelude::*;
use serde::Serialize;
use thiserror::Error;

use crate::bergman::{self, ambient_dim, bergman_fan, chain_cone, chain_minors, chains, fan_dim};
use crate::matroid::{ElementSet, Flat, Matroid};
use crate::polyfan::{cycles_equal, stable_intersection, Cone, FanError, WedgeIndex, WeightedFan};
use crate::polynomial::Polynomial;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum CsmError {
    #[error("k = {k} is outside 0..={d}")]
    KOutOfRange { k: usize, d: usize },
    #[error("ψ has root multiplicity {t} at 1, below the cone dimension {k}")]
    NotDivisible { t: usize, k: usize },
    #[error("stable intersection of the two fans is not a recognized matroid fan")]
    NotMatroidalIntersection,
    #[error(transparent)]
    Fan(#[from] FanError),
}

/// Weight of the cone of `chain` in `csm_k`, `k = |chain|`:
/// `(-1)^{d-k} ∏ β(M|F_{i+1}/F_i)`.
pub fn chain_weight(m: &Matroid, chain: &[Flat]) -> i64 {
    let d = fan_dim(m) as i64;
    let k = chain.len() as i64;
    let sign = if (d - k) % 2 == 0 { 1 } else { -1 };
    sign * chain_minors(m, chain).iter().map(|mi| mi.matroid.beta_invariant()).product::<i64>()
}

#[derive(Clone, Debug, Serialize)]
pub struct ChainWeight {
    pub chain: Vec<Flat>,
    #[serde(skip)]
    pub cone: Cone,
    pub weight: i64,
}

/// `csm_k(M)`: the zero-weight cones stay in `ledger` but not in `fan`.
#[derive(Clone, Debug)]
pub struct CsmCycle {
    pub matroid: Matroid,
    pub k: usize,
    pub fan: WeightedFan,
    pub ledger: Vec<ChainWeight>,
}

pub fn csm_cycle(m: &Matroid, k: usize) -> Result<CsmCycle, CsmError> {
    let d = fan_dim(m);
    let n = ambient_dim(m);
    if m.has_loops() || m.n() == 0 {
        return Ok(CsmCycle { matroid: m.clone(), k, fan: WeightedFan::empty(n, k), ledger: Vec::new() });
    }
    if k > d {
        return Err(CsmError::KOutOfRange { k, d });
    }
    let ledger: Vec<ChainWeight> = chains(m, k)
        .into_par_iter()
        .map(|chain| ChainWeight { cone: chain_cone(m, &chain), weight: chain_weight(m, &chain), chain })
        .collect();
    let cells = ledger.iter().filter(|c| c.weight != 0).map(|c| (c.cone.clone(), c.weight)).collect();
    let fan = WeightedFan::new(n, k, cells)?;
    Ok(CsmCycle { matroid: m.clone(), k, fan, ledger })
}

/// `csm_0, …, csm_d`; empty for matroids with loops.
pub fn csm_total(m: &Matroid) -> Vec<CsmCycle> {
    if m.has_loops() || m.n() == 0 {
        return Vec::new();
    }
    (0..=fan_dim(m)).map(|k| csm_cycle(m, k).expect("k in range")).collect()
}

/// `ψ_Σ(λ) = Σ_i (-1)^i dim F_i(Σ) λ^{d-i}`.
pub fn psi_polynomial(fan: &WeightedFan) -> Result<Polynomial, FanError> {
    if fan.is_empty() {
        return Err(FanError::EmptyFan);
    }
    Ok(psi_from_fp_dimensions(&(0..=fan.dim()).map(|p| fan.fp_dimension(p)).collect::<Vec<_>>()))
}

fn psi_from_fp_dimensions(dims: &[usize]) -> Polynomial {
    let d = dims.len() - 1;
    let mut coeffs = vec![0i64; d + 1];
    for (i, &f) in dims.iter().enumerate() {
        let sign = if i % 2 == 0 { 1 } else { -1 };
        coeffs[d - i] = sign * f as i64;
    }
    Polynomial::new(coeffs)
}

/// The weight of a cone read off `ψ` of its star.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct PsiWeight {
    pub psi: Polynomial,
    /// Dimension of the cone; the number of `(λ-1)` factors divided out.
    pub k: usize,
    /// Exact multiplicity of the root `λ = 1`.
    pub multiplicity: usize,
    /// `(ψ / (λ-1)^k)(1)`.
    pub weight: i64,
    /// `(ψ / (λ-1)^{k-1})(1)` for `k ≥ 1`.
    pub weight_with_exponent_k_minus_1: Option<i64>,
}

/// Weight of `sigma` in a fan from `ψ` of the star at `sigma`.
pub fn psi_oracle_weight(fan: &WeightedFan, sigma: &Cone) -> Result<PsiWeight, CsmError> {
    psi_weight_from_star(&fan.star_fp_dimensions(sigma)?, sigma.dim())
}

fn psi_weight_from_star(star_fp_dimensions: &[usize], k: usize) -> Result<PsiWeight, CsmError> {
    let psi = psi_from_fp_dimensions(star_fp_dimensions);
    let multiplicity = psi.root_multiplicity(1).expect("ψ of a nonempty fan has leading coefficient 1");
    if multiplicity < k {
        return Err(CsmError::NotDivisible { t: multiplicity, k });
    }
    let mut q = psi.clone();
    let mut before_last = None;
    for i in 0..k {
        if i + 1 == k {
            before_last = Some(q.eval(1));
        }
        q = q.div_exact_linear(1).expect("multiplicity checked");
    }
    Ok(PsiWeight { psi, k, multiplicity, weight: q.eval(1), weight_with_exponent_k_minus_1: before_last })
}

/// Per-cone comparison of the two weight routes.
#[derive(Clone, Debug, Serialize)]
pub struct ConeReport {
    pub chain: Vec<Flat>,
    pub dim: usize,
    pub chain_weight: i64,
    pub psi: PsiWeight,
}

impl ConeReport {
    pub fn agrees(&self) -> bool {
        self.chain_weight == self.psi.weight
    }
}

/// Recovers the chain of flats of a cone of the Bergman fan.
pub fn chain_of_cone(m: &Matroid, sigma: &Cone) -> Option<Vec<Flat>> {
    let n = m.n();
    let full = m.ground_set();
    let mut chain: Vec<Flat> = Vec::new();
    for r in sigma.rays() {
        let f = m
            .all_flats()
            .into_iter()
            .filter(|f| !f.0.is_empty() && f.0 != full)
            .find(|f| bergman::QuotientConvention::indicator(n, f.0).iter().zip(r).all(|(a, b)| -a == *b))?;
        chain.push(f);
    }
    chain.sort_by_key(|f| f.0.len());
    let increasing = chain.windows(2).all(|w| w[0].0.is_proper_subset(w[1].0));
    (increasing && sigma.lineality().is_empty() && chain_cone(m, &chain) == *sigma).then_some(chain)
}

/// `ψ`-route weight of a cone of `Bergman(M)`, alongside the chain formula.
pub fn csm_weight_via_psi(m: &Matroid, sigma: &Cone) -> Result<ConeReport, CsmError> {
    let chain = chain_of_cone(m, sigma).ok_or(FanError::ConeNotInFan)?;
    let fan = bergman_fan(m);
    Ok(ConeReport {
        dim: chain.len(),
        chain_weight: chain_weight(m, &chain),
        psi: psi_oracle_weight(&fan, sigma)?,
        chain,
    })
}

/// Both routes on every cone of every dimension of `Bergman(M)`.
pub fn cone_reports(m: &Matroid) -> Result<Vec<ConeReport>, CsmError> {
    if m.has_loops() || m.n() == 0 {
        return Ok(Vec::new());
    }
    let fan = bergman_fan(m);
    let index = WedgeIndex::new(&fan);
    let all: Vec<Vec<Flat>> = (0..=fan_dim(m)).flat_map(|k| chains(m, k)).collect();
    all.into_par_iter()
        .map(|chain| {
            let cone = chain_cone(m, &chain);
            Ok(ConeReport {
                dim: chain.len(),
                chain_weight: chain_weight(m, &chain),
                psi: psi_weight_from_star(&index.star_fp_dimensions(&cone)?, cone.dim())?,
                chain,
            })
        })
        .collect()
}

/// Observed root multiplicities of `ψ` at 1, grouped by cone dimension.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ExponentRow {
    pub dim: usize,
    pub cones: usize,
    /// Multiplicities over cones with nonzero weight.
    pub nonzero_weight_multiplicities: BTreeSet<usize>,
    /// Multiplicities over cones with weight zero.
    pub zero_weight_multiplicities: BTreeSet<usize>,
    /// Cones where dividing by `(λ-1)^{k-1}` instead also gives the weight.
    pub exponent_k_minus_1_agrees: usize,
}

impl ExponentRow {
    /// Nonzero-weight cones all have multiplicity exactly `dim`, and
    /// zero-weight cones have a larger one.
    pub fn is_consistent(&self) -> bool {
        self.nonzero_weight_multiplicities.iter().all(|&t| t == self.dim)
            && self.zero_weight_multiplicities.iter().all(|&t| t > self.dim)
    }
}

pub fn exponent_ledger(reports: &[ConeReport]) -> Vec<ExponentRow> {
    let mut rows: BTreeMap<usize, ExponentRow> = BTreeMap::new();
    for r in reports {
        let row = rows.entry(r.dim).or_insert_with(|| ExponentRow {
            dim: r.dim,
            cones: 0,
            nonzero_weight_multiplicities: BTreeSet::new(),
            zero_weight_multiplicities: BTreeSet::new(),
            exponent_k_minus_1_agrees: 0,
        });
        row.cones += 1;
        if r.psi.weight == 0 {
            row.zero_weight_multiplicities.insert(r.psi.multiplicity);
        } else {
            row.nonzero_weight_multiplicities.insert(r.psi.multiplicity);
        }
        if r.psi.weight_with_exponent_k_minus_1 == Some(r.chain_weight) {
            row.exponent_k_minus_1_agrees += 1;
        }
    }
    rows.into_values().collect()
}

/// A product of random elementary row operations and signed permutations.
pub fn random_unimodular<R: Rng>(n: usize, rng: &mut R) -> Vec<Vec<i64>> {
    let mut m: Vec<Vec<i64>> = (0..n).map(|i| (0..n).map(|j| i64::from(i == j)).collect()).collect();
    if n == 0 {
        return m;
    }
    for _ in 0..2 * n {
        let i = rng.gen_range(0..n);
        let j = rng.gen_range(0..n);
        if i != j {
            let c = rng.gen_range(-2..=2);
            let source = m[j].clone();
            m[i].iter_mut().zip(&source).for_each(|(x, y)| *x += c * y);
        }
    }
    for i in 0..n {
        let j = rng.gen_range(0..=i);
        m.swap(i, j);
        if rng.gen_bool(0.5) {
            m[i].iter_mut().for_each(|x| *x = -*x);
        }
    }
    m
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct GlReport {
    pub transforms: usize,
    pub cones_checked: usize,
    pub mismatches: usize,
}

/// Compares `ψ`-route weights of every cone of `Bergman(M)` with those of its
/// image under `transforms` random unimodular maps.
pub fn gl_invariance<R: Rng>(m: &Matroid, transforms: usize, rng: &mut R) -> Result<GlReport, CsmError> {
    let fan = bergman_fan(m);
    let cones: Vec<Cone> = (0..=fan_dim(m)).flat_map(|k| chains(m, k)).map(|c| chain_cone(m, &c)).collect();
    let index = WedgeIndex::new(&fan);
    let weight = |index: &WedgeIndex, c: &Cone| -> Result<i64, CsmError> {
        Ok(psi_weight_from_star(&index.star_fp_dimensions(c)?, c.dim())?.weight)
    };
    let base: Vec<i64> = cones.par_iter().map(|c| weight(&index, c)).collect::<Result<_, _>>()?;
    let mut report = GlReport { transforms, cones_checked: 0, mismatches: 0 };
    for _ in 0..transforms {
        let u = random_unimodular(fan.ambient_dim(), rng);
        let moved = fan.map_linear(&u)?;
        let moved_index = WedgeIndex::new(&moved);
        let weights: Vec<i64> =
            cones.par_iter().map(|c| weight(&moved_index, &c.map_linear(&u)?)).collect::<Result<_, CsmError>>()?;
        report.cones_checked += cones.len();
        report.mismatches += base.iter().zip(&weights).filter(|(a, b)| a != b).count();
    }
    Ok(report)
}

/// Matroids on `n` elements of rank `r` tried when recognizing a fan:
/// `U_{r,n}` and `U_{a,S} ⊕ U_{r-a,E-S}` for every split of the ground set.
pub fn recognition_catalog(n: usize, r: usize) -> Vec<Matroid> {
    let mut out = vec![crate::matroid::uniform(r, n)];
    let full = ElementSet::full(n);
    for s in full.subsets().filter(|s| !s.is_empty() && *s != full && s.contains(0)) {
        let rest = full.difference(s);
        for a in 1..=s.len().min(r) {
            let b = r - a;
            if b == 0 || b > rest.len() {
                continue;
            }
            let sum = crate::matroid::uniform(a, s.len()).direct_sum(&crate::matroid::uniform(b, rest.len()));
            let labels: Vec<usize> = s.iter().chain(rest.iter()).collect();
            let mut perm = vec![0; n];
            for (i, &l) in labels.iter().enumerate() {
                perm[i] = l;
            }
            out.push(sum.relabel(&perm));
        }
    }
    out
}

/// Whether `fan` is the Bergman fan of `m` as a cycle.
pub fn is_bergman_fan_of(fan: &WeightedFan, m: &Matroid) -> Result<bool, FanError> {
    if m.has_loops() || ambient_dim(m) != fan.ambient_dim() || fan_dim(m) != fan.dim() {
        return Ok(false);
    }
    let b = bergman_fan(m);
    let quick = fan
        .weighted_cones()
        .all(|(c, _)| bergman::support_contains_int(m, &c.relative_interior_point()).unwrap_or(false))
        && b.weighted_cones().all(|(c, _)| fan.support_contains(&c.relative_interior_point()));
    if !quick {
        return Ok(false);
    }
    cycles_equal(&[fan], &[&b])
}

#[derive(Clone, Debug, Serialize)]
pub struct GradeComparison {
    pub grade: usize,
    /// Pairs `(i, j)` with `csm_i(M) · csm_j(M')` in this grade.
    pub terms: Vec<(usize, usize)>,
    pub equal: bool,
}

#[derive(Clone, Debug, Serialize)]
pub struct ProductReport {
    pub intersection_matroid: Matroid,
    pub grades: Vec<GradeComparison>,
}

impl ProductReport {
    pub fn holds(&self) -> bool {
        self.grades.iter().all(|g| g.equal)
    }
}

/// Checks `csm(Σ_M) · csm(Σ_{M'}) = csm(Σ_M · Σ_{M'})` grade by grade. The
/// matroid of `Σ_M · Σ_{M'}` is `hint` when given (and verified), otherwise it
/// is searched among `M`, `M'` and [`recognition_catalog`].
pub fn product_check(m1: &Matroid, m2: &Matroid, hint: Option<&Matroid>) -> Result<ProductReport, CsmError> {
    let n = ambient_dim(m1);
    if ambient_dim(m2) != n || m1.n() != m2.n() {
        return Err(FanError::DimensionMismatch { expected: n, found: ambient_dim(m2) }.into());
    }
    let meet = stable_intersection(&bergman_fan(m1), &bergman_fan(m2))?;
    if meet.is_empty() {
        return Err(CsmError::NotMatroidalIntersection);
    }
    let candidates: Vec<Matroid> = match hint {
        Some(h) => vec![h.clone()],
        None => {
            let mut c = vec![m1.clone(), m2.clone()];
            c.extend(recognition_catalog(m1.n(), meet.dim() + 1));
            c
        }
    };
    let mut found = None;
    for c in candidates {
        if is_bergman_fan_of(&meet, &c)? {
            found = Some(c);
            break;
        }
    }
    let rhs_matroid = found.ok_or(CsmError::NotMatroidalIntersection)?;

    let left1 = csm_total(m1);
    let left2 = csm_total(m2);
    let right = csm_total(&rhs_matroid);
    // Grade to the `(i, j)` terms `csm_i · csm_j` landing in it.
    type Terms = Vec<((usize, usize), WeightedFan)>;
    let mut products: BTreeMap<usize, Terms> = BTreeMap::new();
    for a in &left1 {
        for b in &left2 {
            let Some(g) = (a.k + b.k).checked_sub(n) else { continue };
            let p = stable_intersection(&a.fan, &b.fan)?;
            products.entry(g).or_default().push(((a.k, b.k), p));
        }
    }
    let mut grades = Vec::new();
    for rhs in &right {
        let terms = products.remove(&rhs.k).unwrap_or_default();
        let lhs: Vec<&WeightedFan> = terms.iter().map(|(_, f)| f).collect();
        let equal = cycles_equal(&lhs, &[&rhs.fan])?;
        grades.push(GradeComparison { grade: rhs.k, terms: terms.iter().map(|(t, _)| *t).collect(), equal });
    }
    for (g, terms) in products {
        let lhs: Vec<&WeightedFan> = terms.iter().map(|(_, f)| f).collect();
        let equal = lhs.iter().all(|f| f.is_empty()) || cycles_equal(&lhs, &[]).unwrap_or(false);
        grades.push(GradeComparison { grade: g, terms: terms.iter().map(|(t, _)| *t).collect(), equal });
    }
    grades.sort_by_key(|g| g.grade);
    Ok(ProductReport { intersection_matroid: rhs_matroid, grades })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::matroid::{free, uniform};

    #[test]
    fn u23_cycles() {
        let m = uniform(2, 3);
        let c1 = csm_cycle(&m, 1).unwrap();
        assert_eq!(c1.fan, bergman_fan(&m));
        let c0 = csm_cycle(&m, 0).unwrap();
        assert_eq!(c0.fan.degree0(), Ok(-1));
        assert_eq!(csm_cycle(&m, 2).unwrap_err(), CsmError::KOutOfRange { k: 2, d: 1 });
    }

    #[test]
    fn u34_rays() {
        let m = uniform(3, 4);
        let c1 = csm_cycle(&m, 1).unwrap();
        for cw in &c1.ledger {
            let expected = if cw.chain[0].0.len() == 1 { -1 } else { 0 };
            assert_eq!(cw.weight, expected);
        }
        assert_eq!(c1.fan.cones().len(), 4);
        assert!(c1.fan.is_balanced().balanced);
        assert_eq!(csm_cycle(&m, 0).unwrap().fan.degree0(), Ok(1));
    }

    #[test]
    fn psi_examples() {
        assert_eq!(psi_polynomial(&bergman_fan(&uniform(2, 3))).unwrap(), Polynomial::new(vec![-2, 1]));
        assert_eq!(psi_polynomial(&bergman_fan(&uniform(3, 4))).unwrap(), Polynomial::new(vec![3, -3, 1]));
        let f = bergman_fan(&free(4));
        assert_eq!(psi_polynomial(&f).unwrap(), Polynomial::linear(1).pow(3));
        assert_eq!(psi_polynomial(&WeightedFan::empty(2, 1)), Err(FanError::EmptyFan));
    }

    #[test]
    fn psi_weights_u34() {
        let m = uniform(3, 4);
        let singleton = chain_cone(&m, &[Flat(ElementSet::singleton(0))]);
        assert_eq!(csm_weight_via_psi(&m, &singleton).unwrap().psi.weight, -1);
        let pair = chain_cone(&m, &[Flat([0, 1].into_iter().collect())]);
        let r = csm_weight_via_psi(&m, &pair).unwrap();
        assert_eq!((r.psi.weight, r.chain_weight), (0, 0));
        let origin = csm_weight_via_psi(&uniform(2, 3), &Cone::origin(2)).unwrap();
        assert_eq!(origin.psi.weight, -1);
        let outside = Cone::new(3, vec![vec![1, 0, 0]], vec![]).unwrap();
        assert!(csm_weight_via_psi(&m, &outside).is_err());
    }

    #[test]
    fn free_matroid_cycles() {
        let t = csm_total(&free(2));
        assert_eq!(t[1].fan.cones().len(), 2);
        assert!(t[0].fan.is_empty());
        assert_eq!(csm_total(&uniform(1, 3))[0].fan.degree0(), Ok(1));
    }

    #[test]
    fn product_u23() {
        let m = uniform(2, 3);
        let r = product_check(&m, &m, None).unwrap();
        assert_eq!(r.intersection_matroid, uniform(1, 3));
        assert!(r.holds(), "{r:?}");
    }

    #[test]
    fn product_with_free() {
        let m = uniform(2, 3);
        let r = product_check(&free(3), &m, None).unwrap();
        assert!(r.holds(), "{r:?}");
        assert_eq!(r.intersection_matroid, m);
    }
}
