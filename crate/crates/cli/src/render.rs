//! JSON views of library results.

use ehrkit::characterize::{Classification, Evidence, WitnessReport};
use ehrkit::corpus::{CorpusEntry, Expected, Shape};
use ehrkit::io::{integer_json, poly_json, quasi_json, rational_json, vector_json};
use ehrkit::polytope::{Face, LatticePolytope};
use ehrkit::{Poly, QuasiPoly};
use serde_json::{json, Value};

fn points(v: &[Vec<num_bigint::BigInt>]) -> Value {
    Value::Array(v.iter().map(|p| Value::Array(p.iter().map(integer_json).collect())).collect())
}

fn face(p: &LatticePolytope, f: &Face) -> Value {
    let vs: Vec<_> = f.vertex_indices.iter().map(|&i| p.vertices()[i].clone()).collect();
    json!({ "dim": f.dim, "vertices": points(&vs) })
}

fn pair(a: &Poly, b: &Poly) -> Value {
    json!([poly_json(a), poly_json(b)])
}

pub fn evidence(e: &Evidence) -> Value {
    json!({
        "period": e.period,
        "residues": [e.residues.0, e.residues.1],
        "constituents": pair(&e.constituents.0, &e.constituents.1),
    })
}

pub fn witness(r: &WitnessReport) -> Value {
    json!({
        "kind": r.kind.name(),
        "found": r.found(),
        "attempts": r.attempts,
        "translate": r.translate.as_deref().map(vector_json),
        "evidence": r.evidence.as_ref().map(evidence),
    })
}

pub fn classification(p: &LatticePolytope, c: &Classification) -> Value {
    let violations: Vec<Value> = c
        .facet_violations
        .iter()
        .map(|v| {
            json!({
                "facet": v.facet,
                "opposite": v.opposite,
                "volume": rational_json(&v.volume),
                "opposite_volume": rational_json(&v.opposite_volume),
            })
        })
        .collect();
    json!({
        "dim": c.dim,
        "centrally_symmetric": c.centrally_symmetric(),
        "center": c.center.as_deref().map(vector_json),
        "facet_violations": violations,
        "zonotope": c.zonotope,
        "asymmetric_face": c.asymmetric_face.as_ref().map(|f| face(p, f)),
        "asymmetry_witness": c.asymmetry_witness.as_ref().map(witness),
        "gcd_witness": c.gcd_witness.as_ref().map(witness),
    })
}

/// `{"holds", "period", "evidence"?}` for a residue pair that should agree.
pub fn property(q: &QuasiPoly, violation: Option<(usize, usize)>) -> Value {
    let mut out = json!({ "holds": violation.is_none(), "period": q.period() });
    if let Some((k, l)) = violation {
        out["evidence"] = json!({
            "residues": [k, l],
            "constituents": pair(q.constituent(k), q.constituent(l)),
        });
    }
    out
}

pub fn quasi(q: &QuasiPoly) -> Value {
    quasi_json(q)
}

fn expected(e: &Expected) -> Value {
    match e {
        Expected::MinimalPeriod(p) => json!({ "minimal_period": p }),
        Expected::GcdProperty(b) => json!({ "gcd_property": b }),
        Expected::Symmetric(b) => json!({ "symmetric": b }),
        Expected::Constituent { residue, poly } => json!({ "residue": residue, "constituent": poly_json(poly) }),
        Expected::Count { t, count } => json!({ "t": t, "count": integer_json(count) }),
    }
}

pub fn corpus_entry(e: &CorpusEntry) -> Value {
    let mut out = json!({
        "name": e.name,
        "params": e.params,
        "expected": e.expected.iter().map(|x| {
            let mut v = expected(&x.value);
            v["provenance"] = json!(x.provenance.name());
            v
        }).collect::<Vec<_>>(),
    });
    match &e.shape {
        Shape::Polytope(p) => {
            out["kind"] = json!("almost_integral");
            out["vertices"] = points(p.base.vertices());
            out["translate"] = vector_json(&p.translate);
        }
        Shape::Rational(r) => {
            out["kind"] = json!("rational");
            out["vertices"] = Value::Array(r.vertices().iter().map(|v| vector_json(v)).collect());
        }
        Shape::WeightedSimplex(w) => {
            out["kind"] = json!("weighted_simplex");
            out["weights"] = json!(w);
        }
    }
    out
}
