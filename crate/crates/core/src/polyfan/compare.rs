use rayon::prelude::*;

use super::lattice::dot;
use super::{Cone, FanError, WeightedFan};

/// Whether `Σ lhs` and `Σ rhs` are the same cycle, i.e. their weight
/// functions agree at a generic point of every cone. Cones of either side are
/// cut by the facet hyperplanes of overlapping cones with the same span, and
/// both sums are evaluated at a relative-interior point of every piece.
pub fn cycles_equal(lhs: &[&WeightedFan], rhs: &[&WeightedFan]) -> Result<bool, FanError> {
    let all: Vec<&WeightedFan> = lhs.iter().chain(rhs).copied().collect();
    let Some(first) = all.first() else { return Ok(true) };
    let n = first.ambient_dim();
    if let Some(f) = all.iter().find(|f| f.ambient_dim() != n) {
        return Err(FanError::DimensionMismatch { expected: n, found: f.ambient_dim() });
    }
    let cones: Vec<&Cone> = all.iter().flat_map(|f| f.weighted_cones().map(|(c, _)| c)).collect();
    let Some(k) = cones.first().map(|c| c.dim()) else { return Ok(true) };
    if let Some(c) = cones.iter().find(|c| c.dim() != k) {
        return Err(FanError::NotPure { expected: k, found: c.dim() });
    }
    let side = |fans: &[&WeightedFan], sigma: &Cone, x: &[i64]| -> i64 {
        fans.iter()
            .flat_map(|f| f.weighted_cones())
            .filter(|(c, _)| c.same_span(sigma) && c.contains(x))
            .map(|(_, w)| w)
            .sum()
    };
    let ok = cones.par_iter().all(|sigma| {
        let overlapping: Vec<&Cone> =
            cones.iter().filter(|c| c.same_span(sigma) && sigma.intersect(c).dim() == k).copied().collect();
        pieces(sigma, &overlapping).iter().all(|piece| {
            let x = piece.relative_interior_point();
            side(lhs, sigma, &x) == side(rhs, sigma, &x)
        })
    });
    Ok(ok)
}

/// Full-dimensional pieces of `σ` cut by every facet hyperplane of `others`.
fn pieces(sigma: &Cone, others: &[&Cone]) -> Vec<Cone> {
    let k = sigma.dim();
    let mut out = vec![sigma.clone()];
    for other in others {
        for a in &other.hrep().inequalities {
            let mut next = Vec::with_capacity(out.len());
            for p in out {
                let gens = p.generators();
                let vals: Vec<i64> = gens.iter().map(|g| dot(a, g)).collect();
                let has_lineality_value = p.lineality().iter().any(|l| dot(a, l) != 0);
                if !has_lineality_value && (vals.iter().all(|&v| v >= 0) || vals.iter().all(|&v| v <= 0)) {
                    next.push(p);
                    continue;
                }
                let neg: Vec<i64> = a.iter().map(|x| -x).collect();
                for h in [a.clone(), neg] {
                    let hp =
                        p.intersect(&Cone::from_inequalities(p.ambient_dim(), &[h], &[]).expect("dimensions agree"));
                    if hp.dim() == k {
                        next.push(hp);
                    }
                }
            }
            out = next;
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    fn cone(rays: &[&[i64]]) -> Cone {
        Cone::new(rays[0].len(), rays.iter().map(|r| r.to_vec()).collect(), vec![]).unwrap()
    }

    #[test]
    fn refinement_is_equal() {
        let coarse = WeightedFan::new(2, 2, vec![(cone(&[&[1, 0], &[0, 1]]), 3)]).unwrap();
        let fine =
            WeightedFan::new(2, 2, vec![(cone(&[&[1, 0], &[1, 1]]), 3), (cone(&[&[1, 1], &[0, 1]]), 3)]).unwrap();
        assert_eq!(cycles_equal(&[&coarse], &[&fine]), Ok(true));
        let off = WeightedFan::new(2, 2, vec![(cone(&[&[1, 0], &[1, 1]]), 3), (cone(&[&[1, 1], &[0, 1]]), 2)]).unwrap();
        assert_eq!(cycles_equal(&[&coarse], &[&off]), Ok(false));
    }

    #[test]
    fn sums_on_either_side() {
        let a = WeightedFan::new(2, 2, vec![(cone(&[&[1, 0], &[1, 1]]), 1)]).unwrap();
        let b = WeightedFan::new(2, 2, vec![(cone(&[&[1, 1], &[0, 1]]), 1)]).unwrap();
        let whole = WeightedFan::new(2, 2, vec![(cone(&[&[1, 0], &[0, 1]]), 1)]).unwrap();
        assert_eq!(cycles_equal(&[&a, &b], &[&whole]), Ok(true));
        assert_eq!(cycles_equal(&[&a], &[&whole]), Ok(false));
        assert_eq!(cycles_equal(&[&WeightedFan::point(2, -2)], &[&WeightedFan::point(2, -2)]), Ok(true));
        assert_eq!(cycles_equal(&[&WeightedFan::point(2, -2)], &[&WeightedFan::point(2, -1)]), Ok(false));
        assert_eq!(cycles_equal(&[&WeightedFan::point(2, 0)], &[&WeightedFan::empty(2, 0)]), Ok(true));
    }
}
