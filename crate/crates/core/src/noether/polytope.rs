use std::collections::{BTreeMap, BTreeSet};

use num_integer::Integer;
use serde::{Deserialize, Serialize};

use super::NoetherError;
use crate::polyfan::lattice::integer_kernel;

pub type Point3 = [i64; 3];

pub(crate) fn sub(a: Point3, b: Point3) -> Point3 {
    [a[0] - b[0], a[1] - b[1], a[2] - b[2]]
}

pub(crate) fn cross(a: Point3, b: Point3) -> Point3 {
    [a[1] * b[2] - a[2] * b[1], a[2] * b[0] - a[0] * b[2], a[0] * b[1] - a[1] * b[0]]
}

pub(crate) fn dot3(a: Point3, b: Point3) -> i64 {
    a[0] * b[0] + a[1] * b[1] + a[2] * b[2]
}

pub(crate) fn det3(a: Point3, b: Point3, c: Point3) -> i64 {
    dot3(a, cross(b, c))
}

fn primitive3(v: Point3) -> Point3 {
    let g = v[0].gcd(&v[1]).gcd(&v[2]);
    [v[0] / g, v[1] / g, v[2] / g]
}

/// Lattice length of the segment `ab`.
pub fn lattice_length(a: Point3, b: Point3) -> i64 {
    let d = sub(b, a);
    d[0].gcd(&d[1]).gcd(&d[2])
}

/// A facet `{x : normal·x = offset}` with `normal·x ≤ offset` on the polytope.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Facet {
    /// Primitive outer normal.
    pub normal: Point3,
    pub offset: i64,
    /// Vertex indices in counterclockwise order seen from outside.
    pub cycle: Vec<usize>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Edge {
    pub ends: (usize, usize),
    pub length: i64,
    /// The two facets containing the edge.
    pub facets: (usize, usize),
}

/// Serialized form: `{"vertices": [[x, y, z], …]}`.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct PolytopeJson {
    pub vertices: Vec<Point3>,
}

/// A full-dimensional lattice polytope in `ℝ^3` with its face structure.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LatticePolytope3 {
    vertices: Vec<Point3>,
    facets: Vec<Facet>,
    edges: Vec<Edge>,
}

impl LatticePolytope3 {
    /// Exact convex hull; the input may contain non-vertex points.
    pub fn hull(points: &[Point3]) -> Result<LatticePolytope3, NoetherError> {
        let pts: Vec<Point3> = points.iter().copied().collect::<BTreeSet<_>>().into_iter().collect();
        let spanning = pts.len() >= 4
            && (1..pts.len()).any(|i| {
                (i + 1..pts.len()).any(|j| {
                    (j + 1..pts.len()).any(|k| det3(sub(pts[i], pts[0]), sub(pts[j], pts[0]), sub(pts[k], pts[0])) != 0)
                })
            });
        if !spanning {
            return Err(NoetherError::DegenerateInput);
        }

        let mut planes: BTreeSet<(Point3, i64)> = BTreeSet::new();
        for i in 0..pts.len() {
            for j in i + 1..pts.len() {
                for k in j + 1..pts.len() {
                    let n = cross(sub(pts[j], pts[i]), sub(pts[k], pts[i]));
                    if n == [0, 0, 0] {
                        continue;
                    }
                    let n = primitive3(n);
                    let c = dot3(n, pts[i]);
                    let (mut above, mut below) = (false, false);
                    for p in &pts {
                        let v = dot3(n, *p) - c;
                        above |= v > 0;
                        below |= v < 0;
                    }
                    match (above, below) {
                        (false, _) => {
                            planes.insert((n, c));
                        }
                        (true, false) => {
                            planes.insert(([-n[0], -n[1], -n[2]], -c));
                        }
                        _ => {}
                    }
                }
            }
        }

        let polygons: Vec<(Point3, i64, Vec<Point3>)> = planes
            .into_iter()
            .map(|(n, c)| {
                let on: Vec<Point3> = pts.iter().copied().filter(|p| dot3(n, *p) == c).collect();
                (n, c, convex_polygon(&on, n))
            })
            .collect();
        let vertices: Vec<Point3> = polygons
            .iter()
            .flat_map(|(_, _, poly)| poly.iter().copied())
            .collect::<BTreeSet<_>>()
            .into_iter()
            .collect();
        let index = |p: &Point3| vertices.binary_search(p).expect("polygon vertex is a vertex");
        let facets: Vec<Facet> = polygons
            .iter()
            .map(|(n, c, poly)| Facet { normal: *n, offset: *c, cycle: poly.iter().map(index).collect() })
            .collect();

        let mut by_edge: BTreeMap<(usize, usize), Vec<usize>> = BTreeMap::new();
        for (fi, f) in facets.iter().enumerate() {
            for w in 0..f.cycle.len() {
                let (a, b) = (f.cycle[w], f.cycle[(w + 1) % f.cycle.len()]);
                by_edge.entry((a.min(b), a.max(b))).or_default().push(fi);
            }
        }
        let edges = by_edge
            .into_iter()
            .map(|((a, b), fs)| {
                debug_assert_eq!(fs.len(), 2, "every edge lies on two facets");
                Edge { ends: (a, b), length: lattice_length(vertices[a], vertices[b]), facets: (fs[0], fs[1]) }
            })
            .collect();
        Ok(LatticePolytope3 { vertices, facets, edges })
    }

    pub fn from_json(json: &PolytopeJson) -> Result<LatticePolytope3, NoetherError> {
        LatticePolytope3::hull(&json.vertices)
    }

    pub fn to_json(&self) -> PolytopeJson {
        PolytopeJson { vertices: self.vertices.clone() }
    }

    /// `d · conv{0, e1, e2, e3}`.
    pub fn dilated_simplex(d: i64) -> LatticePolytope3 {
        LatticePolytope3::hull(&[[0, 0, 0], [d, 0, 0], [0, d, 0], [0, 0, d]]).expect("d ≥ 1")
    }

    /// `[0, a] × [0, b] × [0, c]`.
    pub fn cuboid(a: i64, b: i64, c: i64) -> LatticePolytope3 {
        let pts: Vec<Point3> = (0..8)
            .map(|m| [if m & 1 != 0 { a } else { 0 }, if m & 2 != 0 { b } else { 0 }, if m & 4 != 0 { c } else { 0 }])
            .collect();
        LatticePolytope3::hull(&pts).expect("positive side lengths")
    }

    pub fn vertices(&self) -> &[Point3] {
        &self.vertices
    }

    pub fn facets(&self) -> &[Facet] {
        &self.facets
    }

    pub fn edges(&self) -> &[Edge] {
        &self.edges
    }

    pub fn contains(&self, p: Point3) -> bool {
        self.facets.iter().all(|f| dot3(f.normal, p) <= f.offset)
    }

    pub fn contains_strictly(&self, p: Point3) -> bool {
        self.facets.iter().all(|f| dot3(f.normal, p) < f.offset)
    }

    /// `3! ·` Euclidean volume, by cones from the first vertex over the facets.
    pub fn normalized_volume(&self) -> i64 {
        let base = self.vertices[0];
        let mut total = 0;
        for f in &self.facets {
            let c = &f.cycle;
            for i in 1..c.len() - 1 {
                let (a, b, d) = (self.vertices[c[0]], self.vertices[c[i]], self.vertices[c[i + 1]]);
                total += det3(sub(a, base), sub(b, base), sub(d, base)).abs();
            }
        }
        total
    }

    /// `2! ·` area of facet `i` measured in the lattice of its plane.
    pub fn facet_area(&self, i: usize) -> i64 {
        let f = &self.facets[i];
        let basis = integer_kernel(&[f.normal.to_vec()], 3);
        let (b1, b2) = (&basis[0], &basis[1]);
        let (p, q, minor) = [(0, 1), (0, 2), (1, 2)]
            .into_iter()
            .map(|(p, q)| (p, q, b1[p] * b2[q] - b1[q] * b2[p]))
            .find(|t| t.2 != 0)
            .expect("kernel basis has rank 2");
        let coords = |d: Point3| -> (i64, i64) {
            let s = d[p] * b2[q] - d[q] * b2[p];
            let t = b1[p] * d[q] - b1[q] * d[p];
            debug_assert!(s % minor == 0 && t % minor == 0);
            (s / minor, t / minor)
        };
        let c = &f.cycle;
        let v0 = self.vertices[c[0]];
        (1..c.len() - 1)
            .map(|k| {
                let (s1, t1) = coords(sub(self.vertices[c[k]], v0));
                let (s2, t2) = coords(sub(self.vertices[c[k + 1]], v0));
                (s1 * t2 - s2 * t1).abs()
            })
            .sum()
    }

    pub fn total_facet_area(&self) -> i64 {
        (0..self.facets.len()).map(|i| self.facet_area(i)).sum()
    }

    /// Sum of the lattice lengths of the edges.
    pub fn lattice_perimeter(&self) -> i64 {
        self.edges.iter().map(|e| e.length).sum()
    }

    /// The integer `τ` with `-τ n_F = Σ_{F'} L(F ∩ F') n_{F'}`; only facets
    /// sharing an edge with `F` contribute.
    pub fn tau(&self, i: usize) -> Result<i64, NoetherError> {
        let mut s = [0i64; 3];
        for e in &self.edges {
            let other = match e.facets {
                (a, b) if a == i => b,
                (a, b) if b == i => a,
                _ => continue,
            };
            let n = self.facets[other].normal;
            for k in 0..3 {
                s[k] += e.length * n[k];
            }
        }
        let n = self.facets[i].normal;
        let j = (0..3).find(|&j| n[j] != 0).expect("nonzero normal");
        let tau = -s[j] / n[j];
        if (0..3).all(|k| s[k] == -tau * n[k]) {
            Ok(tau)
        } else {
            Err(NoetherError::NonProportional { facet: i, sum: s })
        }
    }

    pub fn tau_list(&self) -> Result<Vec<i64>, NoetherError> {
        (0..self.facets.len()).map(|i| self.tau(i)).collect()
    }

    /// Lattice points strictly inside, by bounding-box enumeration.
    pub fn interior_points(&self) -> i64 {
        let lo: Vec<i64> = (0..3).map(|k| self.vertices.iter().map(|v| v[k]).min().unwrap()).collect();
        let hi: Vec<i64> = (0..3).map(|k| self.vertices.iter().map(|v| v[k]).max().unwrap()).collect();
        let mut count = 0;
        for x in lo[0]..=hi[0] {
            for y in lo[1]..=hi[1] {
                for z in lo[2]..=hi[2] {
                    if self.contains_strictly([x, y, z]) {
                        count += 1;
                    }
                }
            }
        }
        count
    }
}

/// Vertices of the convex hull of coplanar points, counterclockwise around `n`.
fn convex_polygon(points: &[Point3], n: Point3) -> Vec<Point3> {
    let drop = (0..3).max_by_key(|&k| n[k].abs()).expect("three coordinates");
    let keep: Vec<usize> = (0..3).filter(|&k| k != drop).collect();
    let proj = |p: &Point3| (p[keep[0]], p[keep[1]]);
    let mut pts: Vec<Point3> = points.to_vec();
    pts.sort_by_key(|p| proj(p));
    pts.dedup();
    let turn = |o: &Point3, a: &Point3, b: &Point3| {
        let (o, a, b) = (proj(o), proj(a), proj(b));
        (a.0 - o.0) * (b.1 - o.1) - (a.1 - o.1) * (b.0 - o.0)
    };
    let mut hull: Vec<Point3> = Vec::new();
    for pass in 0..2 {
        let start = hull.len();
        let iter: Box<dyn Iterator<Item = &Point3>> =
            if pass == 0 { Box::new(pts.iter()) } else { Box::new(pts.iter().rev()) };
        for p in iter {
            while hull.len() >= start + 2 && turn(&hull[hull.len() - 2], &hull[hull.len() - 1], p) <= 0 {
                hull.pop();
            }
            hull.push(*p);
        }
        hull.pop();
    }
    if hull.len() >= 3 && dot3(cross(sub(hull[1], hull[0]), sub(hull[2], hull[0])), n) < 0 {
        hull.reverse();
    }
    hull
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn simplex_and_cube_structure() {
        let s = LatticePolytope3::dilated_simplex(1);
        assert_eq!((s.facets().len(), s.edges().len()), (4, 6));
        let c = LatticePolytope3::cuboid(1, 1, 1);
        assert_eq!((c.facets().len(), c.edges().len()), (6, 12));
        assert_eq!(c.vertices().len(), 8);
    }

    #[test]
    fn coplanar_is_degenerate() {
        let r = LatticePolytope3::hull(&[[0, 0, 0], [1, 0, 0], [0, 1, 0], [1, 1, 0]]);
        assert_eq!(r, Err(NoetherError::DegenerateInput));
    }

    #[test]
    fn non_vertex_points_dropped() {
        let p = LatticePolytope3::hull(&[[0, 0, 0], [2, 0, 0], [0, 2, 0], [0, 0, 2], [1, 0, 0], [1, 1, 0]]).unwrap();
        assert_eq!(p.vertices().len(), 4);
        assert_eq!(p, LatticePolytope3::dilated_simplex(2));
    }

    #[test]
    fn measures() {
        for d in 1..=4 {
            let s = LatticePolytope3::dilated_simplex(d);
            assert_eq!(s.normalized_volume(), d * d * d);
            assert_eq!(s.lattice_perimeter(), 6 * d);
            let slanted = s.facets().iter().position(|f| f.normal == [1, 1, 1]).unwrap();
            assert_eq!(s.facet_area(slanted), d * d);
            assert_eq!(s.tau_list().unwrap(), vec![d; 4]);
            let c = LatticePolytope3::cuboid(d, d, d);
            assert_eq!(c.normalized_volume(), 6 * d * d * d);
            assert_eq!(c.total_facet_area(), 12 * d * d);
            assert_eq!(c.lattice_perimeter(), 12 * d);
            assert_eq!(c.tau_list().unwrap(), vec![0; 6]);
        }
        assert_eq!(LatticePolytope3::dilated_simplex(3).interior_points(), 0);
        assert_eq!(LatticePolytope3::dilated_simplex(4).interior_points(), 1);
        assert_eq!(LatticePolytope3::cuboid(2, 2, 2).interior_points(), 1);
    }

    #[test]
    fn facet_area_matches_cross_product() {
        let p = LatticePolytope3::hull(&[[0, 0, 0], [3, 1, 0], [1, 4, 2], [2, 2, 5], [-1, 2, 1]]).unwrap();
        for (i, f) in p.facets().iter().enumerate() {
            let c = &f.cycle;
            let v0 = p.vertices()[c[0]];
            let oracle: i64 = (1..c.len() - 1)
                .map(|k| {
                    let x = cross(sub(p.vertices()[c[k]], v0), sub(p.vertices()[c[k + 1]], v0));
                    let j = (0..3).find(|&j| f.normal[j] != 0).unwrap();
                    (x[j] / f.normal[j]).abs()
                })
                .sum();
            assert_eq!(p.facet_area(i), oracle);
        }
    }
}
