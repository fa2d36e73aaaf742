use std::collections::BTreeMap;

use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{ToPrimitive, Zero};

use super::lattice::rank;
use super::{Cone, FanError, WeightedFan};

/// A weighted polyhedron `conv(vertices) + cone`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PolyCell {
    pub vertices: Vec<Vec<BigRational>>,
    pub cone: Cone,
    pub weight: i64,
}

impl PolyCell {
    /// `apex + cone`.
    pub fn translated(apex: Vec<BigRational>, cone: Cone, weight: i64) -> PolyCell {
        PolyCell { vertices: vec![apex], cone, weight }
    }

    /// Dimension of the affine hull.
    pub fn dim(&self) -> usize {
        let mut dirs = self.cone.generators();
        if let Some((v0, rest)) = self.vertices.split_first() {
            for v in rest {
                let diff: Vec<BigRational> = v.iter().zip(v0).map(|(a, b)| a - b).collect();
                dirs.push(clear_denominators(&diff));
            }
        }
        rank(&dirs)
    }
}

/// Integer vector on the same ray as a rational vector.
fn clear_denominators(v: &[BigRational]) -> Vec<i64> {
    let l = v.iter().fold(num_bigint::BigInt::from(1), |l, x| l.lcm(x.denom()));
    v.iter().map(|x| (x.numer() * (&l / x.denom())).to_i64().expect("coordinate exceeds the i64 range")).collect()
}

/// A pure weighted polyhedral complex.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PolyhedralCycle {
    ambient_dim: usize,
    dim: usize,
    cells: Vec<PolyCell>,
}

impl PolyhedralCycle {
    pub fn new(ambient_dim: usize, dim: usize, cells: Vec<PolyCell>) -> Result<PolyhedralCycle, FanError> {
        for c in &cells {
            if c.cone.ambient_dim() != ambient_dim {
                return Err(FanError::DimensionMismatch { expected: ambient_dim, found: c.cone.ambient_dim() });
            }
            if let Some(v) = c.vertices.iter().find(|v| v.len() != ambient_dim) {
                return Err(FanError::DimensionMismatch { expected: ambient_dim, found: v.len() });
            }
            if c.vertices.is_empty() {
                return Err(FanError::InvalidInput("cell without vertices".into()));
            }
            let d = c.dim();
            if d != dim {
                return Err(FanError::NotPure { expected: dim, found: d });
            }
        }
        Ok(PolyhedralCycle { ambient_dim, dim, cells })
    }

    /// A fan viewed as a complex with every apex at the origin.
    pub fn from_fan(fan: &WeightedFan) -> PolyhedralCycle {
        let origin = vec![BigRational::zero(); fan.ambient_dim()];
        let cells = fan.cones().iter().map(|(c, w)| PolyCell::translated(origin.clone(), c.clone(), *w)).collect();
        PolyhedralCycle { ambient_dim: fan.ambient_dim(), dim: fan.dim(), cells }
    }

    pub fn translate(&self, v: &[BigRational]) -> PolyhedralCycle {
        let cells = self
            .cells
            .iter()
            .map(|c| PolyCell {
                vertices: c.vertices.iter().map(|p| p.iter().zip(v).map(|(a, b)| a + b).collect()).collect(),
                cone: c.cone.clone(),
                weight: c.weight,
            })
            .collect();
        PolyhedralCycle { ambient_dim: self.ambient_dim, dim: self.dim, cells }
    }

    pub fn ambient_dim(&self) -> usize {
        self.ambient_dim
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn cells(&self) -> &[PolyCell] {
        &self.cells
    }
}

/// The recession cycle: each cell contributes its weight to its recession
/// cone when that cone is full-dimensional in the cycle.
pub fn recession_cycle(a: &PolyhedralCycle) -> Result<WeightedFan, FanError> {
    let mut weights: BTreeMap<Cone, i64> = BTreeMap::new();
    for cell in &a.cells {
        if cell.cone.dim() == a.dim {
            *weights.entry(cell.cone.clone()).or_insert(0) += cell.weight;
        }
    }
    let cones: Vec<(Cone, i64)> = weights.into_iter().filter(|(_, w)| *w != 0).collect();
    for (i, (c, _)) in cones.iter().enumerate() {
        for (d, _) in &cones[i + 1..] {
            let meet = c.intersect(d);
            if !meet.is_face_of(c) || !meet.is_face_of(d) {
                return Err(FanError::RecessionNotFan);
            }
        }
    }
    WeightedFan::new(a.ambient_dim, a.dim, cones)
}
