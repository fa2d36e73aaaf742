use std::collections::{BTreeMap, BTreeSet};

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use super::polytope::{cross, det3, dot3, sub, LatticePolytope3, Point3};
use super::NoetherError;

/// A triangulation of a lattice polytope into tetrahedra.
///
/// Serialized as `{"points": [[x, y, z], …], "tets": [[i, j, k, l], …]}`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct UnimodularTriangulation {
    pub points: Vec<Point3>,
    pub tets: Vec<[usize; 4]>,
}

impl UnimodularTriangulation {
    fn from_tets(tets: Vec<[Point3; 4]>) -> UnimodularTriangulation {
        let points: Vec<Point3> = tets.iter().flatten().copied().collect::<BTreeSet<_>>().into_iter().collect();
        let index = |p: &Point3| points.binary_search(p).expect("collected");
        let tets = tets.iter().map(|t| [index(&t[0]), index(&t[1]), index(&t[2]), index(&t[3])]).collect();
        UnimodularTriangulation { points, tets }
    }

    fn corners(&self, t: &[usize; 4]) -> [Point3; 4] {
        [self.points[t[0]], self.points[t[1]], self.points[t[2]], self.points[t[3]]]
    }

    /// Checks unimodularity, containment, volume and pairwise interior
    /// disjointness; together these imply the tetrahedra cover `Δ`.
    pub fn validate(&self, delta: &LatticePolytope3) -> Result<(), NoetherError> {
        if let Some(t) = self.tets.iter().find(|t| t.iter().any(|&i| i >= self.points.len())) {
            return Err(NoetherError::InvalidInput(format!("tetrahedron {t:?} refers to a missing point")));
        }
        if self.points.iter().collect::<BTreeSet<_>>().len() != self.points.len() {
            return Err(NoetherError::InvalidInput("repeated point".into()));
        }
        for (i, t) in self.tets.iter().enumerate() {
            let [a, b, c, d] = self.corners(t);
            let det = det3(sub(b, a), sub(c, a), sub(d, a));
            if det.abs() != 1 {
                return Err(NoetherError::NotUnimodular { tet: i, det });
            }
        }
        if let Some(p) = self.points.iter().find(|p| !delta.contains(**p)) {
            return Err(NoetherError::NotCovering(format!("point {p:?} lies outside the polytope")));
        }
        let volume = delta.normalized_volume();
        if self.tets.len() as i64 != volume {
            return Err(NoetherError::NotCovering(format!(
                "{} tetrahedra for normalized volume {volume}",
                self.tets.len()
            )));
        }
        let tets: Vec<[Point3; 4]> = self.tets.iter().map(|t| self.corners(t)).collect();
        let overlap = (0..tets.len())
            .into_par_iter()
            .find_any(|&i| (i + 1..tets.len()).any(|j| interiors_meet(&tets[i], &tets[j])));
        if let Some(i) = overlap {
            return Err(NoetherError::NotCovering(format!("tetrahedron {i} overlaps another")));
        }
        Ok(())
    }

    /// `#tetrahedra`, triangles on facets of `Δ`, segments on edges of `Δ`.
    pub fn census(&self, delta: &LatticePolytope3) -> (i64, i64, i64) {
        let on_facet = |ps: &[Point3]| delta.facets().iter().any(|f| ps.iter().all(|p| dot3(f.normal, *p) == f.offset));
        let on_edge = |ps: &[Point3]| {
            delta.edges().iter().any(|e| {
                let (f, g) = (&delta.facets()[e.facets.0], &delta.facets()[e.facets.1]);
                ps.iter().all(|p| dot3(f.normal, *p) == f.offset && dot3(g.normal, *p) == g.offset)
            })
        };
        let mut triangles = BTreeSet::new();
        let mut segments = BTreeSet::new();
        for t in &self.tets {
            for skip in 0..4 {
                let mut tri: Vec<usize> = (0..4).filter(|&k| k != skip).map(|k| t[k]).collect();
                tri.sort();
                let ps: Vec<Point3> = tri.iter().map(|&i| self.points[i]).collect();
                if on_facet(&ps) {
                    triangles.insert(tri);
                }
            }
            for a in 0..4 {
                for b in a + 1..4 {
                    let seg = (t[a].min(t[b]), t[a].max(t[b]));
                    if on_edge(&[self.points[seg.0], self.points[seg.1]]) {
                        segments.insert(seg);
                    }
                }
            }
        }
        (self.tets.len() as i64, triangles.len() as i64, segments.len() as i64)
    }

    /// Normalized area of each facet of `Δ`, counted as triangles of `T` on it.
    pub fn facet_triangle_counts(&self, delta: &LatticePolytope3) -> Vec<i64> {
        let mut counts: BTreeMap<usize, BTreeSet<Vec<usize>>> = BTreeMap::new();
        for t in &self.tets {
            for skip in 0..4 {
                let mut tri: Vec<usize> = (0..4).filter(|&k| k != skip).map(|k| t[k]).collect();
                tri.sort();
                for (fi, f) in delta.facets().iter().enumerate() {
                    if tri.iter().all(|&i| dot3(f.normal, self.points[i]) == f.offset) {
                        counts.entry(fi).or_default().insert(tri.clone());
                    }
                }
            }
        }
        (0..delta.facets().len()).map(|fi| counts.get(&fi).map_or(0, |s| s.len() as i64)).collect()
    }
}

/// Whether two tetrahedra share interior points: no separating plane among
/// face normals and edge-pair cross products.
fn interiors_meet(a: &[Point3; 4], b: &[Point3; 4]) -> bool {
    for k in 0..3 {
        let (amin, amax) = (a.iter().map(|p| p[k]).min().unwrap(), a.iter().map(|p| p[k]).max().unwrap());
        let (bmin, bmax) = (b.iter().map(|p| p[k]).min().unwrap(), b.iter().map(|p| p[k]).max().unwrap());
        if amax <= bmin || bmax <= amin {
            return false;
        }
    }
    let edges = |t: &[Point3; 4]| -> Vec<Point3> {
        let mut out = Vec::with_capacity(6);
        for i in 0..4 {
            for j in i + 1..4 {
                out.push(sub(t[j], t[i]));
            }
        }
        out
    };
    let faces = |t: &[Point3; 4]| -> Vec<Point3> {
        (0..4)
            .map(|skip| {
                let v: Vec<Point3> = (0..4).filter(|&k| k != skip).map(|k| t[k]).collect();
                cross(sub(v[1], v[0]), sub(v[2], v[0]))
            })
            .collect()
    };
    let (ea, eb) = (edges(a), edges(b));
    let mut axes = faces(a);
    axes.extend(faces(b));
    for x in &ea {
        for y in &eb {
            axes.push(cross(*x, *y));
        }
    }
    !axes.iter().filter(|n| **n != [0, 0, 0]).any(|n| {
        let (amin, amax) =
            (a.iter().map(|p| dot3(*n, *p)).min().unwrap(), a.iter().map(|p| dot3(*n, *p)).max().unwrap());
        let (bmin, bmax) =
            (b.iter().map(|p| dot3(*n, *p)).min().unwrap(), b.iter().map(|p| dot3(*n, *p)).max().unwrap());
        amax <= bmin || bmax <= amin
    })
}

const PERMUTATIONS: [[usize; 3]; 6] = [[0, 1, 2], [0, 2, 1], [1, 0, 2], [1, 2, 0], [2, 0, 1], [2, 1, 0]];

/// Unit-cube simplices `c, c + e_{π0}, c + e_{π0} + e_{π1}, c + 1` of the cube at `c`.
fn kuhn_cube(c: Point3) -> impl Iterator<Item = [Point3; 4]> {
    PERMUTATIONS.iter().map(move |pi| {
        let mut t = [c; 4];
        for s in 0..3 {
            t[s + 1] = t[s];
            t[s + 1][pi[s]] += 1;
        }
        t
    })
}

/// Staircase triangulation of `[0, a] × [0, b] × [0, c]`, shifted by `origin`.
pub fn staircase_box(origin: Point3, a: i64, b: i64, c: i64) -> UnimodularTriangulation {
    let mut tets = Vec::new();
    for x in 0..a {
        for y in 0..b {
            for z in 0..c {
                let corner = [origin[0] + x, origin[1] + y, origin[2] + z];
                tets.extend(kuhn_cube(corner));
            }
        }
    }
    UnimodularTriangulation::from_tets(tets)
}

/// Staircase triangulation of `origin + d · conv{0, e1, e2, e3}`: the Kuhn
/// triangulation in the coordinates `(x, x + y, x + y + z)` restricted to the
/// order simplex `0 ≤ y1 ≤ y2 ≤ y3 ≤ d`.
pub fn staircase_simplex(origin: Point3, d: i64) -> UnimodularTriangulation {
    let mut tets = Vec::new();
    for y1 in 0..d {
        for y2 in y1..d {
            for y3 in y2..d {
                for t in kuhn_cube([y1, y2, y3]) {
                    let s: Point3 = [0, 1, 2].map(|k| t.iter().map(|p| p[k]).sum::<i64>());
                    if s[0] <= s[1] && s[1] <= s[2] {
                        tets.push(t.map(|p| [origin[0] + p[0], origin[1] + p[1] - p[0], origin[2] + p[2] - p[1]]));
                    }
                }
            }
        }
    }
    UnimodularTriangulation::from_tets(tets)
}

/// A built-in staircase triangulation when `Δ` is a lattice box or a dilated
/// standard simplex (up to translation).
pub fn staircase(delta: &LatticePolytope3) -> Option<UnimodularTriangulation> {
    let v = delta.vertices();
    let lo: Point3 = [0, 1, 2].map(|k| v.iter().map(|p| p[k]).min().unwrap());
    let hi: Point3 = [0, 1, 2].map(|k| v.iter().map(|p| p[k]).max().unwrap());
    let size = sub(hi, lo);
    if *delta == LatticePolytope3::cuboid(size[0], size[1], size[2]).translated(lo) {
        return Some(staircase_box(lo, size[0], size[1], size[2]));
    }
    if size[0] == size[1] && size[1] == size[2] && *delta == LatticePolytope3::dilated_simplex(size[0]).translated(lo) {
        return Some(staircase_simplex(lo, size[0]));
    }
    None
}

impl LatticePolytope3 {
    pub fn translated(&self, t: Point3) -> LatticePolytope3 {
        let pts: Vec<Point3> = self.vertices().iter().map(|p| [p[0] + t[0], p[1] + t[1], p[2] + t[2]]).collect();
        LatticePolytope3::hull(&pts).expect("translation keeps full dimension")
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn staircase_counts() {
        for d in 1..=4 {
            let s = LatticePolytope3::dilated_simplex(d);
            let t = staircase(&s).unwrap();
            t.validate(&s).unwrap();
            assert_eq!(t.census(&s), (d * d * d, 4 * d * d, 6 * d));
            let c = LatticePolytope3::cuboid(d, d, d);
            let t = staircase(&c).unwrap();
            t.validate(&c).unwrap();
            assert_eq!(t.census(&c), (6 * d * d * d, 12 * d * d, 12 * d));
        }
    }

    #[test]
    fn translated_box_recognized() {
        let c = LatticePolytope3::cuboid(1, 2, 3).translated([5, -1, 2]);
        let t = staircase(&c).unwrap();
        t.validate(&c).unwrap();
        assert_eq!(t.facet_triangle_counts(&c).iter().sum::<i64>(), c.total_facet_area());
    }

    #[test]
    fn invalid_triangulations() {
        let s = LatticePolytope3::dilated_simplex(1);
        let big = UnimodularTriangulation {
            points: vec![[0, 0, 0], [2, 0, 0], [0, 1, 0], [0, 0, 1]],
            tets: vec![[0, 1, 2, 3]],
        };
        assert!(matches!(big.validate(&s), Err(NoetherError::NotUnimodular { tet: 0, det: 2 })));
        let twice = UnimodularTriangulation {
            points: vec![[0, 0, 0], [1, 0, 0], [0, 1, 0], [0, 0, 1]],
            tets: vec![[0, 1, 2, 3], [0, 1, 2, 3]],
        };
        assert!(matches!(twice.validate(&s), Err(NoetherError::NotCovering(_))));
        let c = LatticePolytope3::cuboid(1, 1, 1);
        let mut t = staircase(&c).unwrap();
        t.tets[5] = t.tets[0];
        assert!(matches!(t.validate(&c), Err(NoetherError::NotCovering(_))));
    }

    #[test]
    fn non_staircase_shape() {
        let p = LatticePolytope3::hull(&[[0, 0, 0], [1, 0, 0], [0, 1, 0], [1, 1, 1]]).unwrap();
        assert!(staircase(&p).is_none());
    }
}
