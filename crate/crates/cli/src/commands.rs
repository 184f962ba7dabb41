use serde_json::{json, Map, Value};
use sofic::automata::{extension_automaton, fischer, krieger, set_name, Cover};
use sofic::classify::{
    delay, is_almost_finite_type, is_finite_type, is_irreducible, locality, Side,
};
use sofic::dot::{automaton_to_dot, graph_to_dot, syntactic_graph_to_dot};
use sofic::invariants::{
    bowen_franks, entropy, franks_flow_equivalent, periodic_counts, FlowVerdict,
};
use sofic::semigroup::{
    green_structure, local_pseudovariety_check, syntactic_graph, syntactic_graph_isomorphic,
    syntactic_semigroup, LocalProperty,
};
use sofic::text::{print, Document};
use sofic::transforms::{
    automaton_expansion, complete_local, graph_expansion, graph_merge, graph_partition_split,
    graph_split, graph_split_certificate, labeled_merge, labeled_split,
    labeled_split_certificate, partition_split, symbol_contraction, symbol_expansion,
    verify_sse, Orientation, SseVerdict,
};
use sofic::{Automaton, Graph, ShiftPresentation, Symbol};

use crate::report::{self, failure, Report};

pub type Outcome<T> = Result<T, String>;

fn lib<T>(r: sofic::Result<T>) -> Outcome<T> {
    r.map_err(|e| e.to_string())
}

/// The shift a document presents. Graphs and matrices stand for their
/// edge shifts, with edges as symbols.
pub fn presentation(doc: &Document) -> Outcome<ShiftPresentation> {
    match doc {
        Document::Automaton(a) => Ok(a.clone().into()),
        Document::Shift(f) => Ok(ShiftPresentation::Forbidden(f.clone())),
        Document::Graph(g) => Ok(lib(Automaton::edge_shift(g))?.into()),
        Document::Matrix(m) => {
            let g = lib(Graph::from_matrix(m))?;
            Ok(lib(Automaton::edge_shift(&g))?.into())
        }
        Document::Certificate(_) => Err("a certificate does not present a shift".into()),
    }
}

fn graph_of(doc: &Document) -> Option<Outcome<Graph>> {
    match doc {
        Document::Graph(g) => Some(Ok(g.clone())),
        Document::Matrix(m) => Some(lib(Graph::from_matrix(m))),
        _ => None,
    }
}

fn base(command: &str, doc: &Document) -> Map<String, Value> {
    let mut m = Map::new();
    m.insert("format".into(), json!(sofic::text::FORMAT_VERSION));
    m.insert("command".into(), json!(command));
    m.insert("input_kind".into(), json!(doc.kind()));
    m
}

fn bool_word(b: bool) -> &'static str {
    if b {
        "yes"
    } else {
        "no"
    }
}

pub fn analyze(doc: &Document, zeta_terms: usize) -> Outcome<Report> {
    let p = presentation(doc)?;
    let mut m = base("analyze", doc);
    let mut text = String::new();
    let mut negative = false;
    let a = p.to_automaton();
    m.insert("presentation".into(), report::automaton_summary(&a));
    text.push_str(&format!(
        "presentation: {} states, {} edges (essential part)\n",
        a.num_states(),
        a.num_edges()
    ));
    if a.is_empty() {
        m.insert("empty".into(), json!(true));
        text.push_str("the shift is empty\n");
        return Ok(Report { json: Value::Object(m), text, negative: true });
    }
    m.insert("empty".into(), json!(false));

    let h = lib(entropy(&p))?;
    m.insert("entropy".into(), report::entropy(h));
    text.push_str(&format!(
        "entropy: {:.12} (ln), {:.12} (log2)\n",
        h,
        h / std::f64::consts::LN_2
    ));
    let counts = lib(periodic_counts(&p, zeta_terms))?;
    m.insert("periodic_counts".into(), report::periodic(&counts));
    text.push_str(&format!("periodic points p1..p{zeta_terms}: {counts:?}\n"));

    let k = lib(krieger(&p))?;
    m.insert("krieger".into(), report::automaton_summary(&k.automaton));
    text.push_str(&format!("krieger cover: {} states\n", k.automaton.num_states()));

    let irreducible = lib(is_irreducible(&p))?;
    m.insert("irreducible".into(), json!(irreducible));
    text.push_str(&format!("irreducible: {}\n", bool_word(irreducible)));
    negative |= !irreducible;
    if irreducible {
        let f = lib(fischer(&p))?;
        m.insert("fischer".into(), report::automaton_summary(&f.automaton));
        text.push_str(&format!("fischer cover: {} states\n", f.automaton.num_states()));
    } else {
        m.insert("fischer".into(), Value::Null);
    }

    let (ft, aft, t, neg) = classification(&p, irreducible);
    m.insert("finite_type".into(), ft);
    m.insert("almost_finite_type".into(), aft);
    text.push_str(&t);
    negative |= neg;

    match syntactic_graph(&a) {
        Ok(g) => {
            text.push_str("syntactic graph:\n");
            text.push_str(&report::syntactic_graph_text(&g));
            m.insert("syntactic_graph".into(), report::syntactic_graph(&g));
        }
        Err(e) => {
            m.insert("syntactic_graph".into(), failure(&e));
        }
    }
    if let Some(g) = graph_of(doc) {
        let g = g?;
        let bf = bowen_franks(&g.adjacency());
        text.push_str(&format!(
            "bowen-franks: {}, det(I-M) = {}\n",
            report::group_text(&bf.group),
            bf.determinant
        ));
        m.insert("bowen_franks".into(), report::bowen_franks(&bf));
    }
    Ok(Report { json: Value::Object(m), text, negative })
}

/// Finite-type and almost-finite-type verdicts with their witnesses, as
/// JSON values, text, and whether either verdict is negative.
fn classification(p: &ShiftPresentation, irreducible: bool) -> (Value, Value, String, bool) {
    let mut text = String::new();
    let mut negative = false;
    let ft = match is_finite_type(p) {
        Ok(r) => {
            text.push_str(&format!("finite type: {}", bool_word(r.verdict)));
            match (r.locality.least(), &r.locality.counterexample) {
                (Some((m, n)), _) => text.push_str(&format!(
                    " ({} cover is ({m},{n})-local)\n",
                    r.cover.name()
                )),
                (None, Some(c)) => text.push_str(&format!(
                    " (paths {} and {} share the label {})\n",
                    c.first.join(" "),
                    c.second.join(" "),
                    c.label
                )),
                (None, None) => text.push('\n'),
            }
            negative |= !r.verdict;
            report::finite_type(&r)
        }
        Err(e) => {
            text.push_str(&format!("finite type: error: {e}\n"));
            failure(&e)
        }
    };
    let aft = if irreducible {
        match is_almost_finite_type(p) {
            Ok(r) => {
                text.push_str(&format!(
                    "almost finite type: {} (left delay {})\n",
                    bool_word(r.verdict),
                    report::delay_text(&r.left_delay)
                ));
                negative |= !r.verdict;
                report::almost_finite_type(&r)
            }
            Err(e) => {
                text.push_str(&format!("almost finite type: error: {e}\n"));
                failure(&e)
            }
        }
    } else {
        text.push_str("almost finite type: not applicable (reducible shift)\n");
        Value::Null
    };
    (ft, aft, text, negative)
}

pub fn classify(doc: &Document, bound: Option<usize>) -> Outcome<Report> {
    let p = presentation(doc)?;
    let mut m = base("classify", doc);
    let irreducible = lib(is_irreducible(&p))?;
    m.insert("irreducible".into(), json!(irreducible));
    let mut text = format!("irreducible: {}\n", bool_word(irreducible));
    let (ft, aft, t, negative) = classification(&p, irreducible);
    m.insert("finite_type".into(), ft);
    m.insert("almost_finite_type".into(), aft);
    text.push_str(&t);
    // Delays and locality of the canonical cover itself.
    let cover = if irreducible { lib(fischer(&p))? } else { lib(krieger(&p))? };
    let c = &cover.automaton;
    let loc = locality(c, bound);
    let (right, left) = (delay(c, Side::Right), delay(c, Side::Left));
    text.push_str(&format!(
        "cover delays: right {}, left {}\n",
        report::delay_text(&right),
        report::delay_text(&left)
    ));
    m.insert(
        "cover".into(),
        json!({
            "kind": if irreducible { "fischer" } else { "krieger" },
            "locality": report::locality(&loc),
            "right_delay": report::delay(&right),
            "left_delay": report::delay(&left),
        }),
    );
    Ok(Report {
        json: Value::Object(m),
        text,
        negative: negative || !irreducible,
    })
}

fn cover_report(command: &str, doc: &Document, cover: &Cover) -> Report {
    let mut m = base(command, doc);
    let names = cover.base.states();
    let states: Vec<Value> = cover
        .automaton
        .states()
        .iter()
        .zip(&cover.subsets)
        .map(|(s, set)| json!({ "name": s, "subset": set_name(names, set) }))
        .collect();
    m.insert("states".into(), Value::Array(states));
    m.insert("summary".into(), report::automaton_summary(&cover.automaton));
    let document = print(&Document::Automaton(cover.automaton.clone()));
    m.insert("automaton".into(), json!(document));
    Report { json: Value::Object(m), text: document, negative: false }
}

pub fn krieger_cmd(doc: &Document) -> Outcome<Report> {
    let p = presentation(doc)?;
    Ok(cover_report("krieger", doc, &lib(krieger(&p))?))
}

pub fn fischer_cmd(doc: &Document) -> Outcome<Report> {
    let p = presentation(doc)?;
    Ok(cover_report("fischer", doc, &lib(fischer(&p))?))
}

pub fn semigroup(doc: &Document) -> Outcome<Report> {
    let p = presentation(doc)?;
    let s = lib(syntactic_semigroup(&p.to_automaton()))?;
    let g = lib(green_structure(&s))?;
    let mut m = base("semigroup", doc);
    let commutative = local_pseudovariety_check(&s, LocalProperty::Commutative);
    let commute = local_pseudovariety_check(&s, LocalProperty::IdempotentsCommute);
    let classes: Vec<Value> = g
        .d_classes
        .iter()
        .map(|c| {
            json!({
                "size": c.elements.len(),
                "rank": c.rank,
                "regular": c.regular,
                "idempotents": c.idempotents.iter().map(|&e| s.format_word(e)).collect::<Vec<_>>(),
                "group": c.group.as_ref().map(|g| g.label()),
            })
        })
        .collect();
    m.insert("size".into(), json!(s.len()));
    m.insert("idempotents".into(), json!(s.idempotents().len()));
    m.insert("has_zero".into(), json!(s.zero().is_some()));
    m.insert("locally_commutative".into(), json!(commutative));
    m.insert("idempotents_commute_locally".into(), json!(commute));
    m.insert("d_classes".into(), Value::Array(classes));
    let mut text = format!(
        "syntactic semigroup: {} elements, {} idempotents, zero: {}\n",
        s.len(),
        s.idempotents().len(),
        bool_word(s.zero().is_some())
    );
    text.push_str(&format!("locally commutative: {}\n", bool_word(commutative)));
    text.push_str(&format!("idempotents commute locally: {}\n", bool_word(commute)));
    for c in &g.d_classes {
        text.push_str(&format!(
            "  D-class of rank {}: {} elements, {}",
            c.rank,
            c.elements.len(),
            if c.regular { "regular" } else { "not regular" }
        ));
        if let Some(gr) = &c.group {
            text.push_str(&format!(", G={}", gr.label()));
        }
        text.push('\n');
    }
    Ok(Report { json: Value::Object(m), text, negative: false })
}

pub fn syntactic_graph_cmd(doc: &Document, dot: bool) -> Outcome<Report> {
    let p = presentation(doc)?;
    let g = lib(syntactic_graph(&p.to_automaton()))?;
    let mut m = base("syntactic-graph", doc);
    m.insert("syntactic_graph".into(), report::syntactic_graph(&g));
    let text = if dot {
        syntactic_graph_to_dot(&g)
    } else {
        report::syntactic_graph_text(&g)
    };
    Ok(Report { json: Value::Object(m), text, negative: false })
}

pub fn invariants(doc: &Document, zeta_terms: usize) -> Outcome<Report> {
    let p = presentation(doc)?;
    let mut m = base("invariants", doc);
    let h = lib(entropy(&p))?;
    let counts = lib(periodic_counts(&p, zeta_terms))?;
    m.insert("entropy".into(), report::entropy(h));
    m.insert("periodic_counts".into(), report::periodic(&counts));
    let mut text = format!(
        "entropy: {:.12} (ln), {:.12} (log2)\nperiodic points p1..p{zeta_terms}: {counts:?}\n",
        h,
        h / std::f64::consts::LN_2
    );
    if let Some(g) = graph_of(doc) {
        let bf = bowen_franks(&g?.adjacency());
        text.push_str(&format!(
            "bowen-franks: {}, det(I-M) = {}\n",
            report::group_text(&bf.group),
            bf.determinant
        ));
        m.insert("bowen_franks".into(), report::bowen_franks(&bf));
    } else if let Ok(g) = syntactic_graph(&p.to_automaton()) {
        text.push_str("syntactic graph:\n");
        text.push_str(&report::syntactic_graph_text(&g));
        m.insert("syntactic_graph".into(), report::syntactic_graph(&g));
    }
    Ok(Report { json: Value::Object(m), text, negative: false })
}

pub fn compare(a: &Document, b: &Document, flow: bool, zeta_terms: usize) -> Outcome<Report> {
    let mut m = Map::new();
    m.insert("format".into(), json!(sofic::text::FORMAT_VERSION));
    m.insert("command".into(), json!("compare"));
    m.insert("input_kinds".into(), json!([a.kind(), b.kind()]));
    if flow {
        let (Some(g1), Some(g2)) = (graph_of(a), graph_of(b)) else {
            return Err("--flow compares graphs or matrices".into());
        };
        let (g1, g2) = (g1?, g2?);
        let verdict = franks_flow_equivalent(&g1, &g2);
        let (b1, b2) = (bowen_franks(&g1.adjacency()), bowen_franks(&g2.adjacency()));
        m.insert("flow".into(), json!(verdict.to_string()));
        m.insert(
            "bowen_franks".into(),
            json!([report::bowen_franks(&b1), report::bowen_franks(&b2)]),
        );
        let equivalent = verdict == FlowVerdict::Equivalent;
        let text = match verdict {
            FlowVerdict::OutOfScope => {
                "flow-equivalent: unknown (a graph is not irreducible)\n".to_string()
            }
            _ if b1 == b2 => format!(
                "flow-equivalent: {equivalent}, det={}, BF={}\n",
                b1.determinant,
                report::group_text(&b1.group)
            ),
            _ => format!(
                "flow-equivalent: {equivalent}, det={} vs {}, BF={} vs {}\n",
                b1.determinant,
                b2.determinant,
                report::group_text(&b1.group),
                report::group_text(&b2.group)
            ),
        };
        return Ok(Report { json: Value::Object(m), text, negative: !equivalent });
    }
    let (p1, p2) = (presentation(a)?, presentation(b)?);
    let (h1, h2) = (lib(entropy(&p1))?, lib(entropy(&p2))?);
    let (c1, c2) = (
        lib(periodic_counts(&p1, zeta_terms))?,
        lib(periodic_counts(&p2, zeta_terms))?,
    );
    let entropy_agrees = (h1 - h2).abs() <= 1e-9 * h1.abs().max(1.0);
    let counts_agree = c1 == c2;
    let syntactic = match (
        syntactic_graph(&p1.to_automaton()),
        syntactic_graph(&p2.to_automaton()),
    ) {
        (Ok(s1), Ok(s2)) => Some(syntactic_graph_isomorphic(&s1, &s2)),
        _ => None,
    };
    let mut text = format!(
        "entropy: {} ({h1:.12} vs {h2:.12})\nperiodic points p1..p{zeta_terms}: {}\n",
        if entropy_agrees { "equal" } else { "different" },
        if counts_agree { "equal" } else { "different" }
    );
    match syntactic {
        Some(s) => text.push_str(&format!(
            "syntactic graphs: {}\n",
            if s { "isomorphic" } else { "not isomorphic" }
        )),
        None => text.push_str("syntactic graphs: not computed\n"),
    }
    let agree = entropy_agrees && counts_agree && syntactic != Some(false);
    text.push_str(&format!("conjugacy invariants agree: {agree}\n"));
    m.insert(
        "entropy".into(),
        json!([report::entropy(h1), report::entropy(h2)]),
    );
    m.insert(
        "periodic_counts".into(),
        json!([report::periodic(&c1), report::periodic(&c2)]),
    );
    m.insert("syntactic_graphs_isomorphic".into(), json!(syntactic));
    m.insert("invariants_agree".into(), json!(agree));
    Ok(Report { json: Value::Object(m), text, negative: !agree })
}

pub fn verify(doc: &Document) -> Outcome<Report> {
    let Document::Certificate(cert) = doc else {
        return Err(format!("expected a certificate, found a {}", doc.kind()));
    };
    let verdict = verify_sse(cert);
    let mut m = base("verify-sse", doc);
    m.insert("certificate_kind".into(), json!(cert.kind().to_string()));
    m.insert("steps".into(), json!(cert.len()));
    let v = match &verdict {
        SseVerdict::Valid { steps } => json!({ "valid": true, "steps": steps }),
        SseVerdict::Invalid { step, reason } => {
            json!({ "valid": false, "step": step, "reason": reason })
        }
    };
    m.insert("verdict".into(), v);
    Ok(Report {
        json: Value::Object(m),
        text: format!("{verdict}\n"),
        negative: !verdict.is_valid(),
    })
}

/// What `export-dot` draws.
#[derive(Clone, Copy, Debug, PartialEq, Eq, clap::ValueEnum)]
pub enum DotTarget {
    Input,
    Krieger,
    Fischer,
    SyntacticGraph,
}

pub fn export_dot(doc: &Document, target: DotTarget) -> Outcome<String> {
    match (target, doc) {
        (_, Document::Certificate(_)) => Err("a certificate has no graph to draw".into()),
        (DotTarget::Input, Document::Graph(g)) => Ok(graph_to_dot(g)),
        (DotTarget::Input, Document::Matrix(mat)) => Ok(graph_to_dot(&lib(Graph::from_matrix(mat))?)),
        (DotTarget::Input, Document::Automaton(a)) => Ok(automaton_to_dot(a)),
        (DotTarget::Input, Document::Shift(_)) => {
            Ok(automaton_to_dot(&presentation(doc)?.to_automaton()))
        }
        (DotTarget::Krieger, _) => Ok(automaton_to_dot(&lib(krieger(&presentation(doc)?))?.automaton)),
        (DotTarget::Fischer, _) => Ok(automaton_to_dot(&lib(fischer(&presentation(doc)?))?.automaton)),
        (DotTarget::SyntacticGraph, _) => {
            let g = lib(syntactic_graph(&presentation(doc)?.to_automaton()))?;
            Ok(syntactic_graph_to_dot(&g))
        }
    }
}

/// A transformation applied by `transform`.
#[derive(Clone, Debug, clap::Subcommand)]
pub enum Transform {
    /// Split one state, partitioning its incoming edges
    InSplit {
        #[arg(long)]
        state: String,
        /// Edge ids per copy, e.g. `e1,e2/e3`
        #[arg(long)]
        classes: String,
        /// Emit the strong shift equivalence certificate instead of the result
        #[arg(long)]
        certificate: bool,
    },
    /// Split one state, partitioning its outgoing edges
    OutSplit {
        #[arg(long)]
        state: String,
        #[arg(long)]
        classes: String,
        #[arg(long)]
        certificate: bool,
    },
    /// Merge groups of states that have the same outgoing edges
    InMerge {
        /// State names per merged state, e.g. `1_1,1_2/2`
        #[arg(long)]
        groups: String,
    },
    /// Merge groups of states that have the same incoming edges
    OutMerge {
        #[arg(long)]
        groups: String,
    },
    /// Follow every occurrence of a symbol by a new symbol
    SymbolExpansion {
        #[arg(long)]
        symbol: String,
    },
    /// Delete a symbol that always follows another
    SymbolContraction {
        #[arg(long)]
        symbol: String,
        #[arg(long)]
        omega: String,
    },
    /// Insert a new state in front of a state
    GraphExpansion {
        #[arg(long)]
        state: String,
        /// Label of the new edge (automata only); fresh by default
        #[arg(long)]
        symbol: Option<String>,
    },
    /// The higher edge graph of order n
    HigherEdge {
        #[arg(long)]
        n: usize,
    },
    /// The extension automaton with m letters of memory and n of anticipation
    Extension {
        #[arg(long)]
        m: usize,
        #[arg(long)]
        n: usize,
    },
    /// A complete local automaton containing a local automaton
    CompleteLocal,
    /// The essential part
    Essential,
}

fn state_of(states: &[String], name: &str) -> Outcome<usize> {
    states
        .iter()
        .position(|s| s == name)
        .ok_or_else(|| format!("unknown state {name:?}"))
}

fn edge_classes(edges: &[sofic::Edge], classes: &str) -> Outcome<Vec<Vec<usize>>> {
    classes
        .split('/')
        .map(|class| {
            class
                .split(',')
                .filter(|id| !id.is_empty())
                .map(|id| {
                    edges
                        .iter()
                        .position(|e| e.id == id)
                        .ok_or_else(|| format!("unknown edge {id:?}"))
                })
                .collect()
        })
        .collect()
}

/// Groups of state names to a map from states to merged states. States
/// not listed stay alone.
fn merge_map(states: &[String], groups: &str) -> Outcome<Vec<usize>> {
    let mut map: Vec<Option<usize>> = vec![None; states.len()];
    let mut next = 0;
    for group in groups.split('/') {
        let members = group
            .split(',')
            .filter(|s| !s.is_empty())
            .map(|s| state_of(states, s))
            .collect::<Outcome<Vec<_>>>()?;
        if members.is_empty() {
            continue;
        }
        for q in members {
            if map[q].replace(next).is_some() {
                return Err(format!("state {:?} is in two groups", states[q]));
            }
        }
        next += 1;
    }
    Ok(map
        .into_iter()
        .map(|c| {
            c.unwrap_or_else(|| {
                next += 1;
                next - 1
            })
        })
        .collect())
}

pub fn transform(doc: &Document, t: &Transform) -> Outcome<Document> {
    use Transform::*;
    let orientation = |t: &Transform| match t {
        InSplit { .. } | InMerge { .. } => Orientation::In,
        _ => Orientation::Out,
    };
    match (t, doc) {
        (InSplit { state, classes, certificate } | OutSplit { state, classes, certificate }, Document::Graph(_) | Document::Matrix(_)) => {
            let g = graph_of(doc).expect("graph-like")?;
            let q = state_of(g.states(), state)?;
            let spec = lib(graph_partition_split(&g, q, orientation(t), &edge_classes(g.edges(), classes)?))?;
            if *certificate {
                return Ok(Document::Certificate(lib(graph_split_certificate(&g, &spec))?));
            }
            Ok(Document::Graph(lib(graph_split(&g, &spec))?.result))
        }
        (InSplit { state, classes, certificate } | OutSplit { state, classes, certificate }, Document::Automaton(a)) => {
            let q = state_of(a.states(), state)?;
            let spec = lib(partition_split(a, q, orientation(t), &edge_classes(a.edges(), classes)?))?;
            if *certificate {
                return Ok(Document::Certificate(lib(labeled_split_certificate(a, &spec))?));
            }
            Ok(Document::Automaton(lib(labeled_split(a, &spec))?.result))
        }
        (InMerge { groups } | OutMerge { groups }, Document::Automaton(a)) => {
            let map = merge_map(a.states(), groups)?;
            Ok(Document::Automaton(lib(labeled_merge(a, &map, orientation(t)))?.result))
        }
        (InMerge { groups } | OutMerge { groups }, Document::Graph(_) | Document::Matrix(_)) => {
            let g = graph_of(doc).expect("graph-like")?;
            let map = merge_map(g.states(), groups)?;
            Ok(Document::Graph(lib(graph_merge(&g, &map, orientation(t)))?.result))
        }
        (SymbolExpansion { symbol }, _) => {
            let s = lib(Symbol::new(symbol.as_str()))?;
            shift_document(lib(symbol_expansion(&presentation(doc)?, &s))?)
        }
        (SymbolContraction { symbol, omega }, _) => {
            let (s, w) = (lib(Symbol::new(symbol.as_str()))?, lib(Symbol::new(omega.as_str()))?);
            shift_document(lib(symbol_contraction(&presentation(doc)?, &s, &w))?)
        }
        (GraphExpansion { state, .. }, Document::Graph(_) | Document::Matrix(_)) => {
            let g = graph_of(doc).expect("graph-like")?;
            let q = state_of(g.states(), state)?;
            Ok(Document::Graph(lib(graph_expansion(&g, q))?))
        }
        (GraphExpansion { state, symbol }, Document::Automaton(a)) => {
            let q = state_of(a.states(), state)?;
            let fresh = match symbol {
                Some(s) => lib(Symbol::new(s.as_str()))?,
                None => a.alphabet().fresh("w"),
            };
            Ok(Document::Automaton(lib(automaton_expansion(a, q, &fresh))?))
        }
        (HigherEdge { n }, Document::Graph(_) | Document::Matrix(_)) => {
            let g = graph_of(doc).expect("graph-like")?;
            Ok(Document::Graph(lib(g.higher_edge_graph(*n))?))
        }
        (Extension { m, n }, _) => {
            let a = presentation(doc)?.to_automaton();
            Ok(Document::Automaton(lib(extension_automaton(&a, *m, *n))?))
        }
        (CompleteLocal, _) => {
            let a = presentation(doc)?.to_automaton();
            Ok(Document::Automaton(lib(complete_local(&a))?))
        }
        (Essential, Document::Graph(g)) => Ok(Document::Graph(g.essential_part())),
        (Essential, Document::Automaton(a)) => Ok(Document::Automaton(a.essential_part())),
        (_, d) => Err(format!("this transformation does not apply to a {}", d.kind())),
    }
}

fn shift_document(p: ShiftPresentation) -> Outcome<Document> {
    Ok(match p {
        ShiftPresentation::Forbidden(f) => Document::Shift(f),
        ShiftPresentation::Automaton(a) => Document::Automaton(a),
    })
}
