//! The lattice-polytope form of Noether's formula for a tropical surface dual
//! to a unimodular triangulation of a 3-polytope `Δ`:
//! `12 (1 + #Int(Δ)) = 2 Vol − 3 Area + 3 Perimeter + Σ τ_i`, evaluated both
//! from the polytope and from the vertex census of a triangulation.

mod polytope;
mod triangulation;

use serde::Serialize;
use thiserror::Error;

pub use polytope::{lattice_length, Edge, Facet, LatticePolytope3, Point3, PolytopeJson};
pub use triangulation::{staircase, staircase_box, staircase_simplex, UnimodularTriangulation};

use crate::polyfan::{Cone, WeightedFan};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum NoetherError {
    #[error("points do not span a 3-dimensional polytope")]
    DegenerateInput,
    #[error("edge-weighted normal sum {sum:?} at facet {facet} is not a multiple of its normal")]
    NonProportional { facet: usize, sum: [i64; 3] },
    #[error("tetrahedron {tet} has determinant {det}")]
    NotUnimodular { tet: usize, det: i64 },
    #[error("triangulation does not cover the polytope: {0}")]
    NotCovering(String),
    #[error("invalid input: {0}")]
    InvalidInput(String),
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct NoetherReport {
    pub interior_points: i64,
    pub normalized_volume: i64,
    pub total_facet_area: i64,
    pub lattice_perimeter: i64,
    pub tau_list: Vec<i64>,
    pub lhs: i64,
    pub rhs: i64,
    pub holds: bool,
}

/// Both sides of `12 (1 + #Int) = 2 Vol − 3 Area + 3 Peri + Σ τ`.
pub fn noether_check(delta: &LatticePolytope3) -> Result<NoetherReport, NoetherError> {
    let interior_points = delta.interior_points();
    let normalized_volume = delta.normalized_volume();
    let total_facet_area = delta.total_facet_area();
    let lattice_perimeter = delta.lattice_perimeter();
    let tau_list = delta.tau_list()?;
    let lhs = 12 * (1 + interior_points);
    let rhs = 2 * normalized_volume - 3 * total_facet_area + 3 * lattice_perimeter + tau_list.iter().sum::<i64>();
    Ok(NoetherReport {
        interior_points,
        normalized_volume,
        total_facet_area,
        lattice_perimeter,
        tau_list,
        lhs,
        rhs,
        holds: lhs == rhs,
    })
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CensusReport {
    /// Vertices of sedentarity 0.
    pub tetrahedra: i64,
    /// Vertices of sedentarity 1.
    pub facet_triangles: i64,
    /// Vertices of sedentarity 2.
    pub edge_segments: i64,
    pub tau_sum: i64,
    /// `2 · tets − 3 · triangles + 3 · segments + Σ τ`.
    pub census_value: i64,
    pub lhs: i64,
    pub holds: bool,
    /// Per-facet normalized areas agree with triangle counts.
    pub facet_areas_agree: bool,
    /// Tetrahedron count equals the normalized volume.
    pub volume_agrees: bool,
}

/// The vertex census of the dual surface, after validating `t`.
pub fn dual_census_check(delta: &LatticePolytope3, t: &UnimodularTriangulation) -> Result<CensusReport, NoetherError> {
    t.validate(delta)?;
    let (tetrahedra, facet_triangles, edge_segments) = t.census(delta);
    let tau_sum: i64 = delta.tau_list()?.iter().sum();
    let census_value = 2 * tetrahedra - 3 * facet_triangles + 3 * edge_segments + tau_sum;
    let lhs = 12 * (1 + delta.interior_points());
    let areas: Vec<i64> = (0..delta.facets().len()).map(|i| delta.facet_area(i)).collect();
    Ok(CensusReport {
        tetrahedra,
        facet_triangles,
        edge_segments,
        tau_sum,
        census_value,
        lhs,
        holds: census_value == lhs,
        facet_areas_agree: t.facet_triangle_counts(delta) == areas,
        volume_agrees: tetrahedra == delta.normalized_volume(),
    })
}

/// The codimension-one skeleton of the outer normal fan: one 2-cone per edge,
/// spanned by the normals of its two facets and weighted by its lattice length.
/// This is the tropical hypersurface of a polynomial with Newton polytope `Δ`
/// and generic coefficients in the max convention, up to translation.
pub fn normal_fan_skeleton(delta: &LatticePolytope3) -> WeightedFan {
    let cells = delta
        .edges()
        .iter()
        .map(|e| {
            let rays = vec![delta.facets()[e.facets.0].normal.to_vec(), delta.facets()[e.facets.1].normal.to_vec()];
            (Cone::new(3, rays, vec![]).expect("three coordinates"), e.length)
        })
        .collect();
    WeightedFan::new(3, 2, cells).expect("edge cones are 2-dimensional")
}
