use std::path::Path;

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::de::DeserializeOwned;
use serde_json::{json, Value};

use tropcsm::bergman::{bergman_fan, bergman_json, fan_dim};
use tropcsm::csm::{cone_reports, csm_cycle, csm_total, exponent_ledger, gl_invariance, CsmError};
use tropcsm::matroid::{Matroid, MatroidJson};
use tropcsm::noether::{dual_census_check, noether_check, staircase, PolytopeJson, UnimodularTriangulation};
use tropcsm::polyfan::{
    recession_cycle, stable_intersection_with, BalanceReport, FanError, FanJson, IntersectionOptions,
};
use tropcsm::{LatticePolytope3, PolyhedralCycle, WeightedFan};

use crate::report::{input, CliError, Outcome, Verdict};

fn read_json<T: DeserializeOwned>(path: &Path) -> Result<T, CliError> {
    let shown = path.display().to_string();
    let text = std::fs::read_to_string(path).map_err(|source| CliError::Io { path: shown.clone(), source })?;
    serde_json::from_str(&text).map_err(|source| CliError::Parse { path: shown, source })
}

fn load_matroid(path: &Path) -> Result<(Value, Matroid), CliError> {
    let json: MatroidJson = read_json(path)?;
    let m = Matroid::from_json(&json).map_err(input)?;
    Ok((json!({ "file": path.display().to_string(), "matroid": m.to_json() }), m))
}

fn load_fan(path: &Path) -> Result<(Value, WeightedFan), CliError> {
    let json: FanJson = read_json(path)?;
    let fan = WeightedFan::from_json(&json).map_err(input)?;
    Ok((json!({ "file": path.display().to_string(), "fan": json }), fan))
}

/// Errors caused by the data rather than by a failed computation.
fn is_input_error(e: &FanError) -> bool {
    !matches!(e, FanError::GenericityFailure(_) | FanError::RecessionNotFan)
}

fn computation_error(inputs: Value, e: impl std::fmt::Display) -> Outcome {
    Outcome { inputs, results: json!({ "error": e.to_string() }), verdict: Verdict::Error }
}

pub fn balance_json(r: &BalanceReport) -> Value {
    json!({
        "balanced": r.balanced,
        "faces_checked": r.faces_checked,
        "witness": r.witness.as_ref().map(|w| json!({
            "face": { "rays": w.face.rays(), "lineality": w.face.lineality() },
            "residual": w.residual,
        })),
    })
}

pub fn matroid_info(path: &Path) -> Result<Outcome, CliError> {
    let (inputs, m) = load_matroid(path)?;
    let flats: Vec<Vec<Vec<usize>>> =
        m.flats().iter().map(|level| level.iter().map(|f| f.0.to_vec()).collect()).collect();
    let chi = m.characteristic_polynomial();
    let reduced = m.reduced_characteristic_polynomial();
    let results = json!({
        "n": m.n(),
        "rank": m.rank(),
        "loops": m.loops(),
        "coloops": m.coloops(),
        "connected": m.is_connected(),
        "flats_by_rank": flats,
        "flat_count": flats.iter().map(Vec::len).sum::<usize>(),
        "characteristic_polynomial": { "coefficients": chi.coeffs(), "text": chi.to_string() },
        "reduced_characteristic_polynomial": reduced.map(|p| json!({ "coefficients": p.coeffs(), "text": p.to_string() })),
        "beta": m.beta_invariant(),
    });
    Ok(Outcome { inputs, results, verdict: Verdict::Pass })
}

pub fn bergman_build(path: &Path) -> Result<Outcome, CliError> {
    let (inputs, m) = load_matroid(path)?;
    let fan = bergman_fan(&m);
    let balance = fan.is_balanced();
    let results = json!({ "fan": bergman_json(&m), "balance": balance_json(&balance) });
    Ok(Outcome { inputs, results, verdict: Verdict::from_bool(balance.balanced) })
}

pub fn csm_compute(path: &Path, k: Option<usize>) -> Result<Outcome, CliError> {
    let (mut inputs, m) = load_matroid(path)?;
    inputs["k"] = json!(k);
    let ks: Vec<usize> = match k {
        Some(k) => vec![k],
        None if m.has_loops() => Vec::new(),
        None => (0..=fan_dim(&m)).collect(),
    };
    let mut cycles = Vec::new();
    for k in ks {
        let c = match csm_cycle(&m, k) {
            Ok(c) => c,
            Err(e @ CsmError::KOutOfRange { .. }) => return Err(input(e)),
            Err(e) => return Ok(computation_error(inputs, e)),
        };
        let ledger: Vec<Value> = c.ledger.iter().map(|cw| json!({ "chain": cw.chain, "weight": cw.weight })).collect();
        cycles.push(json!({
            "k": k,
            "fan": c.fan.to_json(),
            "degree": c.fan.degree0().ok(),
            "ledger": ledger,
        }));
    }
    let results = json!({ "has_loops": m.has_loops(), "cycles": cycles });
    Ok(Outcome { inputs, results, verdict: Verdict::Pass })
}

pub fn csm_verify(path: &Path, seed: u64, transforms: usize) -> Result<Outcome, CliError> {
    let (mut inputs, m) = load_matroid(path)?;
    inputs["seed"] = json!(seed);
    inputs["transforms"] = json!(transforms);
    let run = || -> Result<(Value, bool), CsmError> {
        let reports = cone_reports(&m)?;
        let mismatches: Vec<Value> = reports
            .iter()
            .filter(|r| !r.agrees())
            .map(|r| json!({ "chain": r.chain, "chain_weight": r.chain_weight, "psi_weight": r.psi.weight }))
            .collect();
        let ledger = exponent_ledger(&reports);
        let ledger_ok = ledger.iter().all(|row| row.is_consistent());
        let cycles = csm_total(&m);
        let balance: Vec<Value> =
            cycles.iter().map(|c| json!({ "k": c.k, "balance": balance_json(&c.fan.is_balanced()) })).collect();
        let balanced = cycles.iter().all(|c| c.fan.is_balanced().balanced);
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let gl = gl_invariance(&m, transforms, &mut rng)?;
        let beta = m.beta_invariant();
        let degree = cycles.first().map_or(Ok(0), |c| c.fan.degree0())?;
        let sign = if m.has_loops() || fan_dim(&m).is_multiple_of(2) { 1 } else { -1 };
        let degree_law = degree == sign * beta;
        let ok = mismatches.is_empty() && ledger_ok && balanced && gl.mismatches == 0 && degree_law;
        let results = json!({
            "cones_compared": reports.len(),
            "weight_mismatches": mismatches,
            "exponent_ledger": ledger,
            "exponent_ledger_consistent": ledger_ok,
            "balancing": balance,
            "gl_invariance": gl,
            "degree_law": { "degree": degree, "beta": beta, "holds": degree_law },
        });
        Ok((results, ok))
    };
    Ok(match run() {
        Ok((results, ok)) => Outcome { inputs, results, verdict: Verdict::from_bool(ok) },
        Err(e) => computation_error(inputs, e),
    })
}

pub fn fan_balance(path: &Path) -> Result<Outcome, CliError> {
    let (inputs, fan) = load_fan(path)?;
    let r = fan.is_balanced();
    Ok(Outcome { inputs, results: balance_json(&r), verdict: Verdict::from_bool(r.balanced) })
}

pub fn fan_intersect(a: &Path, b: &Path, max_attempts: usize) -> Result<Outcome, CliError> {
    let (ia, fa) = load_fan(a)?;
    let (ib, fb) = load_fan(b)?;
    let inputs = json!({ "first": ia, "second": ib, "max_attempts": max_attempts });
    match stable_intersection_with(&fa, &fb, &IntersectionOptions { max_attempts }) {
        Ok(f) => {
            let results = json!({ "fan": f.to_json(), "degree": f.degree0().ok() });
            Ok(Outcome { inputs, results, verdict: Verdict::Pass })
        }
        Err(e) if is_input_error(&e) => Err(input(e)),
        Err(e) => Ok(computation_error(inputs, e)),
    }
}

pub fn fan_recession(path: &Path) -> Result<Outcome, CliError> {
    let json: FanJson = read_json(path)?;
    let cycle = PolyhedralCycle::from_json(&json).map_err(input)?;
    let inputs = json!({ "file": path.display().to_string(), "cycle": json });
    match recession_cycle(&cycle) {
        Ok(f) => {
            let balance = f.is_balanced();
            let results = json!({ "fan": f.to_json(), "balance": balance_json(&balance) });
            Ok(Outcome { inputs, results, verdict: Verdict::Pass })
        }
        Err(e) if is_input_error(&e) => Err(input(e)),
        Err(e) => Ok(computation_error(inputs, e)),
    }
}

pub enum TriangulationSource<'a> {
    None,
    File(&'a Path),
    Staircase,
}

pub fn noether(path: &Path, source: TriangulationSource) -> Result<Outcome, CliError> {
    let json: PolytopeJson = read_json(path)?;
    let delta = LatticePolytope3::from_json(&json).map_err(input)?;
    let mut inputs = json!({ "file": path.display().to_string(), "polytope": json });
    let triangulation = match source {
        TriangulationSource::None => None,
        TriangulationSource::File(t) => {
            inputs["triangulation"] = json!(t.display().to_string());
            Some(read_json::<UnimodularTriangulation>(t)?)
        }
        TriangulationSource::Staircase => {
            inputs["triangulation"] = json!("staircase");
            Some(staircase(&delta).ok_or_else(|| {
                CliError::Input("the polytope is neither a dilated standard simplex nor a box".into())
            })?)
        }
    };
    let report = noether_check(&delta).map_err(input)?;
    let mut ok = report.holds;
    let mut results = json!({ "noether": report });
    if let Some(t) = triangulation {
        let census = dual_census_check(&delta, &t).map_err(input)?;
        ok &= census.holds && census.facet_areas_agree && census.volume_agrees;
        results["census"] = json!(census);
    }
    Ok(Outcome { inputs, results, verdict: Verdict::from_bool(ok) })
}
