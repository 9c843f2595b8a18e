//! JSON rendering of graphs, factors and results.

use serde_json::{json, Map, Value};
use starfactor::classifier::Classification;
use starfactor::format::to_graph6;
use starfactor::uniformity::{Lemma2Witness, Lemma3Violation, UniformityReport};
use starfactor::weighting::WeightingSolution;
use starfactor::{Girth, Graph, StarFactor};

/// Input echo and structural statistics shared by every per-graph report.
pub fn header(g: &Graph) -> Map<String, Value> {
    let girth = match g.girth() {
        Girth::Finite(k) => json!(k),
        Girth::Infinite => json!("infinity"),
    };
    let (leaves, stems) = g.leaves_and_stems();
    let mut m = Map::new();
    m.insert("graph6".into(), json!(to_graph6(g)));
    m.insert("n".into(), json!(g.order()));
    m.insert("m".into(), json!(g.size()));
    m.insert("girth".into(), girth);
    m.insert("min_degree".into(), json!(g.min_degree().ok()));
    m.insert("max_degree".into(), json!(g.max_degree().ok()));
    m.insert("connected".into(), json!(g.is_connected()));
    m.insert("leaves".into(), json!(leaves));
    m.insert("stems".into(), json!(stems));
    m
}

pub fn factor(f: &StarFactor) -> Value {
    let edges: Vec<String> = f.edges().iter().map(|e| e.to_string()).collect();
    json!({ "edges": edges, "centers": f.centers(), "size": f.size() })
}

fn witness(w: &Option<(StarFactor, StarFactor)>) -> Value {
    match w {
        Some((a, b)) => json!([factor(a), factor(b)]),
        None => Value::Null,
    }
}

pub fn uniformity(
    r: &UniformityReport,
    lemma2: Option<Lemma2Witness>,
    lemma3: Option<Lemma3Violation>,
) -> Map<String, Value> {
    let mut m = Map::new();
    m.insert("factor_exists".into(), json!(r.factor_exists));
    m.insert("uniform".into(), json!(r.uniform));
    m.insert("spectrum".into(), json!(r.spectrum));
    m.insert("spectrum_complete".into(), json!(r.factor_count.is_some()));
    if let Some(c) = r.factor_count {
        m.insert("factor_count".into(), json!(c));
    }
    m.insert("witness".into(), witness(&r.witness));
    m.insert(
        "lemma2_witness".into(),
        lemma2.map_or(Value::Null, |w| json!({ "triangle": w.triangle, "stem": w.stem, "leaf": w.leaf })),
    );
    m.insert(
        "lemma3_violation".into(),
        lemma3.map_or(Value::Null, |v| json!({ "triangle": v.triangle, "hub": v.hub, "neighbor": v.neighbor })),
    );
    m
}

pub fn classification(c: &Classification) -> Map<String, Value> {
    let mut m = Map::new();
    m.insert("status".into(), json!(c.status.as_str()));
    m.insert("method".into(), json!(c.method.as_str()));
    m.insert("scope".into(), json!(c.scope.as_str()));
    m.insert("witness".into(), witness(&c.witness));
    m
}

pub fn weighting(g: &Graph, s: &WeightingSolution) -> Map<String, Value> {
    let mut m = Map::new();
    m.insert("status".into(), json!(s.status.as_str()));
    let edges: Vec<String> = g.edges().iter().map(|e| e.to_string()).collect();
    m.insert("edges".into(), json!(edges));
    let weights = s.weights.as_ref().map(|w| {
        w.iter().map(|x| i64::try_from(x).map_or_else(|_| json!(x.to_string()), |v| json!(v))).collect::<Vec<_>>()
    });
    m.insert("weights".into(), json!(weights));
    m.insert("kernel_dimension".into(), json!(s.kernel_dimension));
    m.insert("factor_count".into(), json!(s.factor_count));
    m.insert("truncated".into(), json!(s.truncated));
    m
}
