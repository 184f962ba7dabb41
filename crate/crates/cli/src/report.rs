//! JSON building blocks shared by the commands.

use serde_json::{json, Value};
use sofic::classify::{AlmostFiniteTypeReport, DelayResult, FiniteTypeReport, LocalityWitness};
use sofic::invariants::{AbelianGroupInvariants, BowenFranks};
use sofic::semigroup::SyntacticGraph;
use sofic::Automaton;

/// A command's outcome: the JSON value, its human-readable rendering and
/// whether it carries a negative verdict (for `--strict`).
pub struct Report {
    pub json: Value,
    pub text: String,
    pub negative: bool,
}

/// Floats are rounded to 12 significant digits so that reports are
/// byte-stable across platforms.
pub fn float(x: f64) -> Value {
    if !x.is_finite() {
        return Value::Null;
    }
    let rounded: f64 = format!("{x:.11e}").parse().expect("formatted float parses");
    json!(rounded)
}

/// Counts that overflow `u64` are written as decimal strings.
pub fn count(x: u128) -> Value {
    match u64::try_from(x) {
        Ok(v) => json!(v),
        Err(_) => json!(x.to_string()),
    }
}

pub fn entropy(nats: f64) -> Value {
    json!({
        "ln": float(nats),
        "log2": float(nats / std::f64::consts::LN_2),
        "units": "ln in nats, log2 in bits",
    })
}

pub fn periodic(values: &[u128]) -> Value {
    json!({
        "terms": values.len(),
        "values": values.iter().map(|&v| count(v)).collect::<Vec<_>>(),
        "meaning": "entry n-1 counts the points of period n",
    })
}

/// `Z/4Z x Z`, or `0` for the trivial group.
pub fn group_text(g: &AbelianGroupInvariants) -> String {
    if g.is_trivial() {
        return "0".into();
    }
    g.0.iter()
        .map(|d| if d == &0.into() { "Z".to_string() } else { format!("Z/{d}Z") })
        .collect::<Vec<_>>()
        .join(" x ")
}

pub fn bowen_franks(bf: &BowenFranks) -> Value {
    json!({
        "group": group_text(&bf.group),
        "invariant_factors": bf.group.0.iter().map(|d| d.to_string()).collect::<Vec<_>>(),
        "det_i_minus_m": bf.determinant.to_string(),
    })
}

pub fn automaton_summary(a: &Automaton) -> Value {
    json!({
        "states": a.num_states(),
        "edges": a.num_edges(),
        "deterministic": a.is_deterministic(),
    })
}

pub fn syntactic_graph(g: &SyntacticGraph) -> Value {
    let nodes: Vec<Value> = g
        .nodes
        .iter()
        .map(|n| {
            json!({
                "rank": n.rank,
                "group": n.group.label(),
                "group_order": n.group.order,
                "idempotent": n.idempotent,
            })
        })
        .collect();
    json!({ "nodes": nodes, "edges": g.hasse })
}

pub fn syntactic_graph_text(g: &SyntacticGraph) -> String {
    let mut out = String::new();
    for (i, n) in g.nodes.iter().enumerate() {
        let below: Vec<String> = g
            .hasse
            .iter()
            .filter(|&&(a, _)| a == i)
            .map(|&(_, b)| b.to_string())
            .collect();
        out.push_str(&format!("  [{i}] {}", n.label()));
        if !below.is_empty() {
            out.push_str(&format!(" -> {}", below.join(", ")));
        }
        out.push('\n');
    }
    out
}

pub fn locality(w: &LocalityWitness) -> Value {
    let counterexample = w.counterexample.as_ref().map(|c| {
        json!({
            "label": c.label,
            "first": c.first,
            "second": c.second,
            "repeats_cycle": c.cycles,
        })
    });
    json!({
        "local": w.is_local(),
        "frontier": w.frontier,
        "least": w.least(),
        "bound": w.bound,
        "counterexample": counterexample,
    })
}

pub fn delay(d: &DelayResult) -> Value {
    let witness = d.witness.as_ref().map(|w| {
        json!({
            "state": w.state,
            "letter": w.letter,
            "targets": [w.targets.0, w.targets.1],
            "prefix": w.prefix,
            "cycle": w.cycle,
        })
    });
    json!({
        "side": d.side.to_string(),
        "finite": d.is_finite(),
        "value": d.value,
        "witness": witness,
    })
}

pub fn delay_text(d: &DelayResult) -> String {
    match (d.value, &d.witness) {
        (Some(v), _) => v.to_string(),
        (None, Some(w)) => format!(
            "infinite (state {} reads {} into {} and {}, then {}({})*)",
            w.state, w.letter, w.targets.0, w.targets.1, w.prefix, w.cycle
        ),
        (None, None) => "infinite".into(),
    }
}

pub fn finite_type(r: &FiniteTypeReport) -> Value {
    json!({
        "verdict": r.verdict,
        "cover": r.cover.name(),
        "locality": locality(&r.locality),
        "max_regular_rank": r.max_regular_rank,
    })
}

pub fn almost_finite_type(r: &AlmostFiniteTypeReport) -> Value {
    json!({
        "verdict": r.verdict,
        "left_delay": delay(&r.left_delay),
        "idempotents_commute_locally": r.idempotents_commute,
    })
}

/// A failed sub-analysis, kept in the report instead of aborting it.
pub fn failure(e: &sofic::Error) -> Value {
    json!({ "error": e.to_string() })
}
