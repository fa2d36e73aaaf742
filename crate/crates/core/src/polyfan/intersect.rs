use num_traits::{Signed, ToPrimitive};
use rayon::prelude::*;

use super::dd;
use super::lattice::{dot, lattice_index, rank};
use super::{Cone, FanError, WeightedFan};

#[derive(Clone, Debug)]
pub struct IntersectionOptions {
    /// Displacement vectors tried before giving up.
    pub max_attempts: usize,
}

impl Default for IntersectionOptions {
    fn default() -> Self {
        IntersectionOptions { max_attempts: 64 }
    }
}

/// Stable intersection `A · B` by the fan displacement rule.
pub fn stable_intersection(a: &WeightedFan, b: &WeightedFan) -> Result<WeightedFan, FanError> {
    stable_intersection_with(a, b, &IntersectionOptions::default())
}

pub fn stable_intersection_with(
    a: &WeightedFan,
    b: &WeightedFan,
    opts: &IntersectionOptions,
) -> Result<WeightedFan, FanError> {
    let n = a.ambient_dim();
    if b.ambient_dim() != n {
        return Err(FanError::DimensionMismatch { expected: n, found: b.ambient_dim() });
    }
    let Some(c) = (a.dim() + b.dim()).checked_sub(n) else {
        return Ok(WeightedFan::empty(n, 0));
    };
    let pairs: Vec<(&Cone, i64, &Cone, i64)> =
        a.weighted_cones().flat_map(|(s, w)| b.weighted_cones().map(move |(t, v)| (s, w, t, v))).collect();
    for attempt in 0..opts.max_attempts {
        let (num, den) = displacement(attempt, n);
        let outcome: Result<Vec<Option<(Cone, i64)>>, ()> = pairs
            .par_iter()
            .map(|&(s, w, t, v)| meet(s, t, &num, den, c).map(|o| o.map(|(cone, idx)| (cone, w * v * idx))))
            .collect();
        let Ok(cells) = outcome else { continue };
        let fan = WeightedFan::new(n, c, cells.into_iter().flatten().collect())?;
        return Ok(fan.without_zero_weights());
    }
    Err(FanError::GenericityFailure(opts.max_attempts))
}

/// Deterministic displacement `num / den`; denominators increase with `attempt`.
fn displacement(attempt: usize, n: usize) -> (Vec<i64>, i64) {
    let i = attempt as i64;
    let num = (0..n as i64)
        .map(|j| ((7919 * (j + 1) * (j + 1) + 104_729 * (i + 1) * (j + 3) + 31 * i * i) % 997) - 498)
        .collect();
    (num, 1009 + i)
}

/// Contribution of the pair `(σ, σ')` for displacement `v = num/den`.
/// `Err` signals a non-generic displacement.
fn meet(s: &Cone, t: &Cone, num: &[i64], den: i64, c: usize) -> Result<Option<(Cone, i64)>, ()> {
    let n = s.ambient_dim();
    let (hs, ht) = (s.hrep(), t.hrep());
    let lift = |a: &Vec<i64>| -> Vec<i64> {
        let mut v = a.clone();
        v.push(0);
        v
    };
    let shifted = |a: &Vec<i64>| -> Vec<i64> {
        let mut v: Vec<i64> = a.iter().map(|x| x * den).collect();
        v.push(-dot(a, num));
        v
    };
    let mut ineqs: Vec<Vec<i64>> = hs.inequalities.iter().map(lift).collect();
    ineqs.extend(ht.inequalities.iter().map(shifted));
    let mut t_nonneg = vec![0i64; n + 1];
    t_nonneg[n] = 1;
    ineqs.push(t_nonneg);
    let mut eqs: Vec<Vec<i64>> = hs.equations.iter().map(lift).collect();
    eqs.extend(ht.equations.iter().map(shifted));
    let g = dd::generators(&ineqs, &eqs, n + 1);
    if !g.rays.iter().any(|r| r[n] > 0) {
        return Ok(None);
    }
    let gens: Vec<Vec<i64>> = g.rays.iter().chain(&g.lineality).cloned().collect();
    let dim_p = rank(&gens) - 1;
    let mut both = s.generators();
    both.extend(t.generators());
    if rank(&both) < n || dim_p != c {
        return Err(());
    }
    let tau = s.intersect(t);
    if tau.dim() != c {
        return Ok(None);
    }
    let mut lattice = s.lattice_basis();
    lattice.extend(t.lattice_basis());
    let index = lattice_index(&lattice, n).expect("transversal pair spans the lattice");
    Ok(Some((tau, index.abs().to_i64().expect("lattice index exceeds i64"))))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn ray(v: &[i64]) -> Cone {
        Cone::new(v.len(), vec![v.to_vec()], vec![]).unwrap()
    }

    fn tripod() -> WeightedFan {
        WeightedFan::new(2, 1, vec![(ray(&[1, 1]), 1), (ray(&[-1, 0]), 1), (ray(&[0, -1]), 1)]).unwrap()
    }

    #[test]
    fn two_tropical_lines_meet_once() {
        let p = stable_intersection(&tripod(), &tripod()).unwrap();
        assert_eq!(p.dim(), 0);
        assert_eq!(p.degree0(), Ok(1));
    }

    #[test]
    fn lines_with_index() {
        let a = WeightedFan::new(2, 1, vec![(Cone::new(2, vec![], vec![vec![1, 0]]).unwrap(), 1)]).unwrap();
        let b = WeightedFan::new(2, 1, vec![(Cone::new(2, vec![], vec![vec![1, 2]]).unwrap(), 1)]).unwrap();
        let p = stable_intersection(&a, &b).unwrap();
        assert_eq!(p.degree0(), Ok(2));
    }

    #[test]
    fn ambient_space_is_identity() {
        let full = WeightedFan::full_space(2);
        assert_eq!(stable_intersection(&full, &tripod()).unwrap(), tripod());
    }

    #[test]
    fn dimension_mismatch() {
        assert!(matches!(
            stable_intersection(&tripod(), &WeightedFan::full_space(3)),
            Err(FanError::DimensionMismatch { .. })
        ));
    }
}
