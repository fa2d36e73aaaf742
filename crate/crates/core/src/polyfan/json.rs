use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};

use super::{Cone, FanError, PolyCell, PolyhedralCycle, WeightedFan};

/// Serialized fan or polyhedral cycle.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct FanJson {
    pub ambient_dim: usize,
    pub dim: usize,
    pub cells: Vec<CellJson>,
}

/// One cell. A translated cone gives `apex`; a cell with a bounded part gives
/// `vertices` instead. Both absent means the origin.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CellJson {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub apex: Option<Vec<String>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub vertices: Option<Vec<Vec<String>>>,
    pub rays: Vec<Vec<i64>>,
    #[serde(default)]
    pub lineality: Vec<Vec<i64>>,
    pub weight: i64,
    /// Flats of the chain indexing a Bergman cone.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub chain: Option<Vec<Vec<usize>>>,
}

impl CellJson {
    pub fn from_cone(cone: &Cone, weight: i64) -> CellJson {
        CellJson {
            apex: None,
            vertices: None,
            rays: cone.rays().to_vec(),
            lineality: cone.lineality().to_vec(),
            weight,
            chain: None,
        }
    }
}

/// Parses `"p/q"` or `"p"`.
pub fn parse_rational(s: &str) -> Result<BigRational, FanError> {
    let err = || FanError::InvalidRational(s.to_string());
    let (p, q) = match s.trim().split_once('/') {
        Some((p, q)) => (p.trim(), q.trim()),
        None => (s.trim(), "1"),
    };
    let p: BigInt = p.parse().map_err(|_| err())?;
    let q: BigInt = q.parse().map_err(|_| err())?;
    if q.is_zero() {
        return Err(err());
    }
    Ok(BigRational::new(p, q))
}

pub(crate) fn format_rational(x: &BigRational) -> String {
    if x.denom().is_one() {
        x.numer().to_string()
    } else {
        format!("{}/{}", x.numer(), x.denom())
    }
}

fn parse_point(v: &[String], n: usize) -> Result<Vec<BigRational>, FanError> {
    if v.len() != n {
        return Err(FanError::DimensionMismatch { expected: n, found: v.len() });
    }
    v.iter().map(|s| parse_rational(s)).collect()
}

fn cell_vertices(cell: &CellJson, n: usize) -> Result<Vec<Vec<BigRational>>, FanError> {
    match (&cell.apex, &cell.vertices) {
        (Some(_), Some(_)) => Err(FanError::InvalidInput("cell has both `apex` and `vertices`".into())),
        (Some(a), None) => Ok(vec![parse_point(a, n)?]),
        (None, Some(vs)) if vs.is_empty() => Err(FanError::InvalidInput("empty `vertices`".into())),
        (None, Some(vs)) => vs.iter().map(|v| parse_point(v, n)).collect(),
        (None, None) => Ok(vec![vec![BigRational::zero(); n]]),
    }
}

impl WeightedFan {
    pub fn to_json(&self) -> FanJson {
        FanJson {
            ambient_dim: self.ambient_dim(),
            dim: self.dim(),
            cells: self.cones().iter().map(|(c, w)| CellJson::from_cone(c, *w)).collect(),
        }
    }

    /// Every cell must sit at the origin.
    pub fn from_json(json: &FanJson) -> Result<WeightedFan, FanError> {
        let n = json.ambient_dim;
        let mut cells = Vec::with_capacity(json.cells.len());
        for cell in &json.cells {
            let vs = cell_vertices(cell, n)?;
            if vs.len() != 1 || vs[0].iter().any(|x| !x.is_zero()) {
                return Err(FanError::InvalidInput("fan cell is not a cone at the origin".into()));
            }
            cells.push((Cone::new(n, cell.rays.clone(), cell.lineality.clone())?, cell.weight));
        }
        WeightedFan::new(n, json.dim, cells)
    }
}

impl PolyhedralCycle {
    pub fn to_json(&self) -> FanJson {
        let cells = self
            .cells()
            .iter()
            .map(|c| {
                let pts: Vec<Vec<String>> =
                    c.vertices.iter().map(|v| v.iter().map(format_rational).collect()).collect();
                let mut j = CellJson::from_cone(&c.cone, c.weight);
                if pts.len() == 1 {
                    j.apex = pts.into_iter().next();
                } else {
                    j.vertices = Some(pts);
                }
                j
            })
            .collect();
        FanJson { ambient_dim: self.ambient_dim(), dim: self.dim(), cells }
    }

    pub fn from_json(json: &FanJson) -> Result<PolyhedralCycle, FanError> {
        let n = json.ambient_dim;
        let cells = json
            .cells
            .iter()
            .map(|cell| {
                Ok(PolyCell {
                    vertices: cell_vertices(cell, n)?,
                    cone: Cone::new(n, cell.rays.clone(), cell.lineality.clone())?,
                    weight: cell.weight,
                })
            })
            .collect::<Result<Vec<_>, FanError>>()?;
        PolyhedralCycle::new(n, json.dim, cells)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rationals() {
        assert_eq!(format_rational(&parse_rational("6/4").unwrap()), "3/2");
        assert_eq!(format_rational(&parse_rational("-2").unwrap()), "-2");
        assert!(parse_rational("1/0").is_err());
        assert!(parse_rational("x").is_err());
    }

    #[test]
    fn fan_round_trip() {
        let text = r#"{"ambient_dim":2,"dim":1,"cells":[
            {"rays":[[1,1]],"weight":1},{"rays":[[-1,0]],"weight":1},{"rays":[[0,-1]],"weight":1}]}"#;
        let json: FanJson = serde_json::from_str(text).unwrap();
        let fan = WeightedFan::from_json(&json).unwrap();
        assert!(fan.is_balanced().balanced);
        assert_eq!(WeightedFan::from_json(&fan.to_json()).unwrap(), fan);
    }

    #[test]
    fn apex_rejected_for_fans() {
        let text = r#"{"ambient_dim":1,"dim":1,"cells":[{"apex":["1/2"],"rays":[[1]],"weight":1}]}"#;
        let json: FanJson = serde_json::from_str(text).unwrap();
        assert!(WeightedFan::from_json(&json).is_err());
        let cyc = PolyhedralCycle::from_json(&json).unwrap();
        assert_eq!(PolyhedralCycle::from_json(&cyc.to_json()).unwrap(), cyc);
    }
}
