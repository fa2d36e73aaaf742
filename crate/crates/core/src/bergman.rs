//! Bergman fans of matroids in `ℝ^E / ℝ·1`, the circuit membership test and
//! the linear isomorphism realizing a parallel connection as a product.
//!
//! Points of `ℝ^E / ℝ·1` with `E = {0, …, n-1}` are represented in `ℝ^{n-1}`
//! by the chart `(x_0, …, x_{n-1}) ↦ (x_1 - x_0, …, x_{n-1} - x_0)`. The cone
//! of a chain of flats `F_1 ⊊ … ⊊ F_k` is `cone(-e_{F_1}, …, -e_{F_k})`, and
//! support membership is tested with the maximum over each circuit.

use num_rational::BigRational;
use num_traits::{ToPrimitive, Zero};
use rand::Rng;
use thiserror::Error;

use crate::matroid::{ElementSet, Flat, Matroid, MatroidError, Minor};
use crate::polyfan::lattice::{det, mat_vec, unimodular_inverse};
use crate::polyfan::{cycles_equal, CellJson, Cone, FanError, FanJson, WeightedFan};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum BergmanError {
    #[error(transparent)]
    Matroid(#[from] MatroidError),
    #[error(transparent)]
    Fan(#[from] FanError),
}

/// The chart `ℝ^{n} / ℝ·1 → ℝ^{n-1}` dropping coordinate 0.
#[derive(Clone, Copy, Debug, Default)]
pub struct QuotientConvention;

impl QuotientConvention {
    /// `(x_0, …, x_{n-1}) ↦ (x_i - x_0)_{i ≥ 1}`.
    pub fn project(x: &[i64]) -> Vec<i64> {
        x[1..].iter().map(|v| v - x[0]).collect()
    }

    /// The section `x ↦ (0, x)`.
    pub fn lift<T: Clone + Zero>(x: &[T]) -> Vec<T> {
        std::iter::once(T::zero()).chain(x.iter().cloned()).collect()
    }

    /// Image of `e_S` for `S ⊆ {0, …, n-1}`.
    pub fn indicator(n: usize, s: ElementSet) -> Vec<i64> {
        let full: Vec<i64> = (0..n).map(|i| i64::from(s.contains(i))).collect();
        Self::project(&full)
    }
}

/// Ambient dimension of the Bergman fan of `m`.
pub fn ambient_dim(m: &Matroid) -> usize {
    m.n().saturating_sub(1)
}

/// `σ_F = cone(-e_F : F ∈ chain)` in the quotient chart.
pub fn chain_cone(m: &Matroid, chain: &[Flat]) -> Cone {
    let rays = chain.iter().map(|f| QuotientConvention::indicator(m.n(), f.0).iter().map(|x| -x).collect()).collect();
    Cone::new(ambient_dim(m), rays, Vec::new()).expect("chain rays live in the chart")
}

fn proper_flats(m: &Matroid) -> Vec<Flat> {
    let full = m.ground_set();
    m.all_flats().into_iter().filter(|f| !f.0.is_empty() && f.0 != full).collect()
}

/// Chains of `k` proper nonempty flats, each listed bottom-up.
pub fn chains(m: &Matroid, k: usize) -> Vec<Vec<Flat>> {
    if m.has_loops() {
        return Vec::new();
    }
    let flats = proper_flats(m);
    let mut out = Vec::new();
    let mut cur: Vec<Flat> = Vec::new();
    fn rec(flats: &[Flat], k: usize, cur: &mut Vec<Flat>, out: &mut Vec<Vec<Flat>>) {
        if cur.len() == k {
            out.push(cur.clone());
            return;
        }
        for f in flats {
            if cur.last().is_none_or(|g| g.0.is_proper_subset(f.0)) {
                cur.push(*f);
                rec(flats, k, cur, out);
                cur.pop();
            }
        }
    }
    rec(&flats, k, &mut cur, &mut out);
    out
}

/// Maximal chains of proper nonempty flats, by walking covering relations.
pub fn maximal_chains(m: &Matroid) -> Vec<Vec<Flat>> {
    if m.has_loops() || m.n() == 0 {
        return Vec::new();
    }
    let graded = m.flats();
    let r = m.rank();
    let mut out = Vec::new();
    fn walk(graded: &[Vec<Flat>], r: usize, cur: &mut Vec<Flat>, out: &mut Vec<Vec<Flat>>) {
        let rank = cur.len() + 1;
        if rank == r {
            out.push(cur.clone());
            return;
        }
        let below = cur.last().map_or(ElementSet::EMPTY, |f| f.0);
        for f in &graded[rank] {
            if below.is_proper_subset(f.0) {
                cur.push(*f);
                walk(graded, r, cur, out);
                cur.pop();
            }
        }
    }
    walk(graded, r, &mut Vec::new(), &mut out);
    out
}

/// Dimension of the Bergman fan: `rank - 1`.
pub fn fan_dim(m: &Matroid) -> usize {
    m.rank().saturating_sub(1)
}

/// The Bergman fan with unit weights on the cones of maximal chains; empty
/// when `m` has a loop.
pub fn bergman_fan(m: &Matroid) -> WeightedFan {
    let cells = maximal_chains(m).iter().map(|c| (chain_cone(m, c), 1)).collect();
    WeightedFan::new(ambient_dim(m), fan_dim(m), cells).expect("chain cones are pure")
}

/// Fan JSON with the chain of flats recorded on every cone.
pub fn bergman_json(m: &Matroid) -> FanJson {
    let mut cells: Vec<(Cone, CellJson)> = maximal_chains(m)
        .iter()
        .map(|c| {
            let cone = chain_cone(m, c);
            let mut cell = CellJson::from_cone(&cone, 1);
            cell.chain = Some(c.iter().map(|f| f.0.to_vec()).collect());
            (cone, cell)
        })
        .collect();
    cells.sort_by(|a, b| a.0.cmp(&b.0));
    FanJson { ambient_dim: ambient_dim(m), dim: fan_dim(m), cells: cells.into_iter().map(|(_, c)| c).collect() }
}

/// The minors `M|F_{i+1} / F_i` along `∅ ⊊ F_1 ⊊ … ⊊ F_k ⊊ E`.
pub fn chain_minors(m: &Matroid, chain: &[Flat]) -> Vec<Minor> {
    let mut bounds = vec![ElementSet::EMPTY];
    bounds.extend(chain.iter().map(|f| f.0));
    bounds.push(m.ground_set());
    bounds.windows(2).map(|w| m.minor(w[1], w[0]).expect("chain is increasing")).collect()
}

/// `⊕ M|F_{i+1}/F_i` with every element carrying its original label.
pub fn chain_minor_sum(m: &Matroid, chain: &[Flat]) -> Matroid {
    let minors = chain_minors(m, chain);
    let mut labels = Vec::new();
    let mut sum: Option<Matroid> = None;
    for minor in &minors {
        labels.extend(&minor.labels);
        sum = Some(match sum {
            None => minor.matroid.clone(),
            Some(s) => s.direct_sum(&minor.matroid),
        });
    }
    sum.expect("at least one minor").relabel(&labels)
}

/// Whether `x ∈ ℝ^{n-1}` lies in the support: for every circuit `C` of `M` the
/// maximum of the lifted coordinates over `C` is attained at least twice.
pub fn support_contains(m: &Matroid, x: &[BigRational]) -> Result<bool, FanError> {
    let n = ambient_dim(m);
    if x.len() != n || m.n() == 0 {
        return Err(FanError::DimensionMismatch { expected: n, found: x.len() });
    }
    let lifted = QuotientConvention::lift(x);
    Ok(m.circuits().iter().all(|c| {
        let max = c.iter().map(|i| &lifted[i]).max().expect("circuits are nonempty");
        c.iter().filter(|&i| &lifted[i] == max).count() >= 2
    }))
}

/// [`support_contains`] at an integer point.
pub fn support_contains_int(m: &Matroid, x: &[i64]) -> Result<bool, FanError> {
    let q: Vec<BigRational> = x.iter().map(|&v| BigRational::from_integer(v.into())).collect();
    support_contains(m, &q)
}

/// A lattice point in the relative interior of `cone`: positive combination of
/// the rays with coefficients in `1..=bound` plus a random lineality part.
pub fn sample_interior<R: Rng>(cone: &Cone, rng: &mut R, bound: i64) -> Vec<i64> {
    let mut p = vec![0i64; cone.ambient_dim()];
    for r in cone.rays() {
        let c = rng.gen_range(1..=bound);
        p.iter_mut().zip(r).for_each(|(x, y)| *x += c * y);
    }
    for l in cone.lineality() {
        let c = rng.gen_range(-bound..=bound);
        p.iter_mut().zip(l).for_each(|(x, y)| *x += c * y);
    }
    p
}

/// The matrix of `φ: ℝ^P/ℝ·1 → ℝ^{E1}/ℝ·1 × ℝ^{E2}/ℝ·1` and its verification.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ParallelMapReport {
    pub matrix: Vec<Vec<i64>>,
    pub determinant: i64,
    /// Maximal cones of `Bergman(P)` whose image lies in one product cone.
    pub forward_cones: usize,
    pub forward_cones_ok: usize,
    /// Product cones whose preimage is covered by `Bergman(P)`.
    pub backward_cones: usize,
    pub backward_cones_ok: usize,
    pub samples_per_cone: usize,
    pub forward_sample_failures: usize,
    pub backward_sample_failures: usize,
}

impl ParallelMapReport {
    pub fn holds(&self) -> bool {
        self.determinant.abs() == 1
            && self.forward_cones == self.forward_cones_ok
            && self.backward_cones == self.backward_cones_ok
            && self.forward_sample_failures == 0
            && self.backward_sample_failures == 0
    }
}

/// Builds `φ(ē_i) = ē_i` on `E1 - p1` and `E2 - p2`, `φ(ē_p) = ē_{p1} + ē_{p2}`,
/// and verifies that it carries `|Bergman(P(M1, M2))|` onto
/// `|Bergman(M1)| × |Bergman(M2)|` cone by cone and on `samples` random
/// interior lattice points per cone in each direction.
pub fn parallel_connection_map<R: Rng>(
    m1: &Matroid,
    p1: usize,
    m2: &Matroid,
    p2: usize,
    samples: usize,
    rng: &mut R,
) -> Result<ParallelMapReport, BergmanError> {
    let pc = m1.parallel_connection(p1, m2, p2)?;
    let p = &pc.matroid;
    let (d1, d2) = (ambient_dim(m1), ambient_dim(m2));
    let n = ambient_dim(p);
    let mut inverse_label = vec![(None, None); p.n()];
    for (x, &l) in pc.from_first.iter().enumerate() {
        inverse_label[l].0 = Some(x);
    }
    for (x, &l) in pc.from_second.iter().enumerate() {
        inverse_label[l].1 = Some(x);
    }
    let image_of = |label: usize| -> Vec<i64> {
        let (a, b) = inverse_label[label];
        let mut v = a.map_or(vec![0; d1], |x| QuotientConvention::indicator(m1.n(), ElementSet::singleton(x)));
        v.extend(b.map_or(vec![0; d2], |x| QuotientConvention::indicator(m2.n(), ElementSet::singleton(x))));
        v
    };
    // Column j is the image of the chart basis vector ē_{j+1}.
    let columns: Vec<Vec<i64>> = (1..p.n()).map(image_of).collect();
    let matrix: Vec<Vec<i64>> = (0..n).map(|i| columns.iter().map(|c| c[i]).collect()).collect();
    let determinant = det(&matrix).to_i64().expect("small determinant");
    let inverse = unimodular_inverse(&matrix);

    let source = bergman_fan(p);
    let target = bergman_fan(m1).product(&bergman_fan(m2));
    let target_cones: Vec<&Cone> = target.weighted_cones().map(|(c, _)| c).collect();

    let mut report = ParallelMapReport {
        matrix: matrix.clone(),
        determinant,
        forward_cones: source.cones().len(),
        forward_cones_ok: 0,
        backward_cones: target_cones.len(),
        backward_cones_ok: 0,
        samples_per_cone: samples,
        forward_sample_failures: 0,
        backward_sample_failures: 0,
    };
    let in_product = |y: &[i64]| -> Result<bool, FanError> {
        Ok(support_contains_int(m1, &y[..d1])? && support_contains_int(m2, &y[d1..])?)
    };

    for (sigma, _) in source.cones() {
        let image = sigma.map_linear(&matrix)?;
        if target_cones.iter().any(|t| t.contains_cone(&image)) {
            report.forward_cones_ok += 1;
        }
        for _ in 0..samples {
            let x = sample_interior(sigma, rng, 1000);
            if !support_contains_int(p, &x)? || !in_product(&mat_vec(&matrix, &x))? {
                report.forward_sample_failures += 1;
            }
        }
    }

    let Some(inverse) = inverse else {
        return Ok(report);
    };
    for rho in &target_cones {
        let pre = rho.map_linear(&inverse)?;
        let pieces: Vec<(Cone, i64)> = source
            .cones()
            .iter()
            .map(|(s, _)| s.intersect(&pre))
            .filter(|c| c.dim() == pre.dim())
            .map(|c| (c, 1))
            .collect();
        let whole = WeightedFan::new(n, pre.dim(), vec![(pre.clone(), 1)])?;
        let covered = WeightedFan::new(n, pre.dim(), pieces)?;
        if cycles_equal(&[&whole], &[&covered])? {
            report.backward_cones_ok += 1;
        }
        for _ in 0..samples {
            let y = sample_interior(rho, rng, 1000);
            let x = mat_vec(&inverse, &y);
            if !in_product(&y)? || !support_contains_int(p, &x)? || mat_vec(&matrix, &x) != y {
                report.backward_sample_failures += 1;
            }
        }
    }
    Ok(report)
}
