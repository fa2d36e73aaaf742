//! Balanced fans on which CSM-style weights misbehave: a hypersurface whose
//! `ψ`-weighted 1-skeleton is unbalanced, and a fan whose two decompositions
//! into matroid fans give different degrees.

use serde::Serialize;

use crate::bergman::{bergman_fan, support_contains_int};
use crate::csm::{csm_cycle, psi_oracle_weight, psi_polynomial, CsmError};
use crate::matroid::{uniform, Matroid};
use crate::noether::{normal_fan_skeleton, LatticePolytope3};
use crate::polyfan::{BalanceReport, Cone, WeightedFan};
use crate::polynomial::Polynomial;

/// Square pyramid `conv{0, e1, e1 + e2, e2, e3}`.
pub fn square_pyramid() -> LatticePolytope3 {
    LatticePolytope3::hull(&[[0, 0, 0], [1, 0, 0], [1, 1, 0], [0, 1, 0], [0, 0, 1]]).expect("full-dimensional")
}

#[derive(Clone, Debug, Serialize)]
pub struct RayWeight {
    pub ray: Vec<i64>,
    pub psi_of_star: Polynomial,
    pub weight: i64,
}

#[derive(Clone, Debug, Serialize)]
pub struct SkeletonCheck {
    pub rays: usize,
    pub two_cones: usize,
    pub surface_balanced: bool,
    pub ray_weights: Vec<RayWeight>,
    /// Balancing of the 1-skeleton carrying the `ψ`-weights.
    #[serde(skip)]
    pub skeleton_balance: BalanceReport,
}

/// The `ψ`-weights on the rays of the tropical surface dual to the square
/// pyramid, and whether the weighted 1-skeleton balances.
pub fn pyramid_skeleton_check() -> Result<SkeletonCheck, CsmError> {
    let x = normal_fan_skeleton(&square_pyramid());
    let rays = x.faces_of_dim(1);
    let mut ray_weights = Vec::new();
    let mut cells = Vec::new();
    for r in &rays {
        let w = psi_oracle_weight(&x, r)?;
        ray_weights.push(RayWeight {
            ray: r.rays()[0].clone(),
            psi_of_star: psi_polynomial(&x.star(r)?)?,
            weight: w.weight,
        });
        cells.push((r.clone(), w.weight));
    }
    let skeleton = WeightedFan::new(3, 1, cells)?;
    Ok(SkeletonCheck {
        rays: rays.len(),
        two_cones: x.cones().len(),
        surface_balanced: x.is_balanced().balanced,
        ray_weights,
        skeleton_balance: skeleton.is_balanced(),
    })
}

/// The rank-2 matroid on `{0, 1, 2}` with `i` a coloop and the other two
/// elements parallel; its Bergman fan is the line through the image of `e_i`.
pub fn coloop_with_parallel_pair(i: usize) -> Matroid {
    let others: Vec<usize> = (0..3).filter(|&j| j != i).collect();
    Matroid::from_bases(3, &[vec![i.min(others[0]), i.max(others[0])], vec![i.min(others[1]), i.max(others[1])]])
        .expect("valid bases")
}

#[derive(Clone, Debug, Serialize)]
pub struct DecompositionCheck {
    /// `deg csm_0(U_{2,3}) + deg crem(csm_0(U_{2,3})) − deg csm_0(U_{1,3})`.
    pub first: i64,
    /// `Σ_i deg csm_0(M_i) − 2 deg csm_0(U_{1,3})`.
    pub second: i64,
    pub fan_balanced: bool,
    /// Both indicator-function identities hold on the sampled grid.
    pub first_indicator_ok: bool,
    pub second_indicator_ok: bool,
}

/// The union of the three lines through `(1,0)`, `(0,1)`, `(-1,-1)`, written
/// as `B(U_{2,3}) + crem B(U_{2,3}) − p` and as `Σ_i B(M_i) − 2p`.
pub fn line_decompositions() -> Result<DecompositionCheck, CsmError> {
    let u23 = uniform(2, 3);
    let u13 = uniform(1, 3);
    let crem = vec![vec![-1, 0], vec![0, -1]];
    let deg0 = |m: &Matroid| -> Result<i64, CsmError> { Ok(csm_cycle(m, 0)?.fan.degree0()?) };
    let c0 = csm_cycle(&u23, 0)?.fan;
    let first = c0.degree0()? + c0.map_linear(&crem)?.degree0()? - deg0(&u13)?;
    let lines: Vec<Matroid> = (0..3).map(coloop_with_parallel_pair).collect();
    let mut second = -2 * deg0(&u13)?;
    for m in &lines {
        second += deg0(m)?;
    }

    let b = bergman_fan(&u23);
    let b_crem = b.map_linear(&crem)?;
    let union_cells = [[1, 0], [-1, 0], [0, 1], [0, -1], [1, 1], [-1, -1]]
        .map(|r| (Cone::new(2, vec![r.to_vec()], vec![]).expect("ray"), 1))
        .to_vec();
    let sigma = WeightedFan::new(2, 1, union_cells)?;
    let ind = |yes: bool| i64::from(yes);
    let (mut first_ok, mut second_ok) = (true, true);
    for x in -4..=4i64 {
        for y in -4..=4i64 {
            let p = [x, y];
            let target = ind(sigma.support_contains(&p));
            let origin = ind(p == [0, 0]);
            let d1 = ind(b.support_contains(&p)) + ind(b_crem.support_contains(&p)) - origin;
            let mut d2 = -2 * origin;
            for m in &lines {
                d2 += ind(support_contains_int(m, &p)?);
            }
            first_ok &= d1 == target;
            second_ok &= d2 == target;
        }
    }
    Ok(DecompositionCheck {
        first,
        second,
        fan_balanced: sigma.is_balanced().balanced,
        first_indicator_ok: first_ok,
        second_indicator_ok: second_ok,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn pyramid_skeleton_is_unbalanced() {
        let c = pyramid_skeleton_check().unwrap();
        assert_eq!((c.rays, c.two_cones), (5, 8));
        assert!(c.surface_balanced);
        for r in &c.ray_weights {
            assert_eq!(r.psi_of_star, Polynomial::new(vec![2, -3, 1]));
            assert_eq!(r.weight, -1);
        }
        assert!(!c.skeleton_balance.balanced);
        assert!(c.skeleton_balance.witness.is_some());
    }

    #[test]
    fn decompositions_disagree() {
        let d = line_decompositions().unwrap();
        assert_eq!((d.first, d.second), (-3, -2));
        assert!(d.fan_balanced && d.first_indicator_ok && d.second_indicator_ok);
    }
}
