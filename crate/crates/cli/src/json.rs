//! JSON report. Keys come out sorted because `serde_json::Map` is ordered.

use agq_core::syzygy::is_gentle_vertex;
use agq_core::{
    is_invalid_vertex, AlmostGentlePair, CycleCondition, DimReport, ForbiddenWalk, GorensteinReport, HomDim,
    LengthOrInf,
};
use serde_json::{json, Map, Value};

fn length(value: LengthOrInf) -> Value {
    match value {
        LengthOrInf::Finite(n) => json!({ "finite": true, "value": n }),
        LengthOrInf::Infinite => json!({ "finite": false, "value": null }),
    }
}

fn names(pair: &AlmostGentlePair, arrows: &[agq_core::ArrowId]) -> Value {
    arrows.iter().map(|&a| Value::from(pair.arrow_name(a))).collect()
}

/// `{"finite", "value", "witness"}`, with `witness_cycle` for the repeating
/// part of an infinite witness.
pub fn dim_json(pair: &AlmostGentlePair, r: &DimReport) -> Map<String, Value> {
    let Value::Object(mut m) = length(r.value) else { unreachable!() };
    match &r.witness {
        ForbiddenWalk::Finite(a) => {
            m.insert("witness".into(), names(pair, a));
        }
        ForbiddenWalk::Lasso { stem, cycle } => {
            m.insert("witness".into(), names(pair, stem));
            m.insert("witness_cycle".into(), names(pair, cycle));
        }
    }
    m.insert("method".into(), r.method.to_string().into());
    m
}

fn cycle_json(pair: &AlmostGentlePair, g: &GorensteinReport) -> Value {
    let Some(w) = &g.cycle_witness else { return Value::Null };
    let condition = match w.condition {
        CycleCondition::A => "A",
        CycleCondition::B => "B",
    };
    json!({
        "condition": condition,
        "vertex": pair.vertex_name(w.vertex),
        "arrow": pair.arrow_name(w.arrow),
        "cycle": names(pair, &w.cycle),
    })
}

pub fn report_json(pair: &AlmostGentlePair) -> Value {
    let hd = HomDim::new(pair);
    let g = hd.gorenstein_report();
    let mut injdim = dim_json(pair, &g.injdim);
    injdim.insert("attained_at".into(), g.injdim.attained_at.map(|v| pair.vertex_name(v)).into());
    let per_vertex: Map<String, Value> = pair
        .vertices()
        .map(|v| {
            let entry = json!({
                "pdim_simple": length(hd.pdim_simple(v).value),
                "pdim_injective": length(hd.pdim_injective(v).value),
                "invalid": is_invalid_vertex(pair, v),
                "gentle": is_gentle_vertex(pair, v),
            });
            (pair.vertex_name(v).to_string(), entry)
        })
        .collect();
    json!({
        "algebra": pair.name(),
        "valid": true,
        "global_dimension": dim_json(pair, &g.gldim),
        "self_injective_dimension": injdim,
        "gorenstein": g.gorenstein,
        "cycle_criterion": cycle_json(pair, &g),
        "injective_envelope_pdim": length(g.envelope_pdim),
        "auslander_note": g.auslander_note,
        "per_vertex": per_vertex,
    })
}

pub fn to_text(v: &Value) -> String {
    let mut s = serde_json::to_string_pretty(v).expect("json values serialise");
    s.push('\n');
    s
}
