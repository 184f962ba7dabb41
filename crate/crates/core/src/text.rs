//! A line-oriented text format for automata, forbidden-word shifts, graphs,
//! count matrices and strong shift equivalence certificates.
//!
//! ```text
//! format 1
//! automaton
//! alphabet a b
//! states 1 2
//! edge e1 1 a 1
//! edge e2 1 b 2
//! edge e3 2 b 1
//! ```
//!
//! A `#` at the start of a token begins a comment. The `format 1` header is
//! optional on input and always printed. Certificates list their end
//! matrices as row blocks and each step on one line:
//!
//! ```text
//! format 1
//! certificate symbolic
//! start 2 2
//! a+b c
//! c 0
//! end 2 2
//! d e+f
//! f g
//! step R 2 2 x y 0 x S 2 2 z t t 0 bij x:z=a y:t=b x:t=c / z:x=d z:y=e t:x=f t:y=g
//! ```
//!
//! Step matrices carry their dimensions and list entries row by row. The
//! two bijections (for `R S` and `S R`) are separated by `/`.

use std::collections::HashMap;
use std::fmt;
use std::str::FromStr;

use crate::automata::{Automaton, ForbiddenWords};
use crate::error::Error;
use crate::graph::{Edge, Graph};
use crate::matrix::{
    format_polynomial, parse_polynomial, AlphabeticMatrix, CountMatrix, Polynomial, WordBijection,
};
use crate::symbol::{Alphabet, Symbol};
use crate::transforms::{IntegerStep, SseCertificate, SymbolicStep};

pub const FORMAT_VERSION: u32 = 1;

/// A parsed input file.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Document {
    Automaton(Automaton),
    Shift(ForbiddenWords),
    Graph(Graph),
    Matrix(CountMatrix),
    Certificate(SseCertificate),
}

impl Document {
    pub fn kind(&self) -> &'static str {
        match self {
            Document::Automaton(_) => "automaton",
            Document::Shift(_) => "shift",
            Document::Graph(_) => "graph",
            Document::Matrix(_) => "matrix",
            Document::Certificate(_) => "certificate",
        }
    }
}

/// A syntax or consistency error, located by 1-based line and column.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ParseError {
    pub line: usize,
    pub col: usize,
    pub message: String,
}

impl fmt::Display for ParseError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}:{}: {}", self.line, self.col, self.message)
    }
}

impl std::error::Error for ParseError {}

#[derive(Clone, Copy, Debug)]
struct Token<'a> {
    text: &'a str,
    line: usize,
    col: usize,
}

impl Token<'_> {
    fn error(&self, message: impl Into<String>) -> ParseError {
        ParseError {
            line: self.line,
            col: self.col,
            message: message.into(),
        }
    }
}

fn tokenize(text: &str) -> Vec<Vec<Token<'_>>> {
    let mut lines = Vec::new();
    for (k, line) in text.lines().enumerate() {
        let mut tokens = Vec::new();
        let mut start = None;
        for (pos, c) in line.char_indices().chain(std::iter::once((line.len(), ' '))) {
            match (c.is_whitespace(), start) {
                (false, None) => start = Some(pos),
                (true, Some(s)) => {
                    tokens.push(Token {
                        text: &line[s..pos],
                        line: k + 1,
                        col: line[..s].chars().count() + 1,
                    });
                    start = None;
                }
                _ => {}
            }
        }
        if let Some(c) = tokens.iter().position(|t| t.text.starts_with('#')) {
            tokens.truncate(c);
        }
        if !tokens.is_empty() {
            lines.push(tokens);
        }
    }
    lines
}

struct Lines<'a> {
    lines: Vec<Vec<Token<'a>>>,
    next: usize,
    end: (usize, usize),
}

impl<'a> Lines<'a> {
    fn peek(&self) -> Option<&[Token<'a>]> {
        self.lines.get(self.next).map(|l| l.as_slice())
    }

    fn take(&mut self) -> Option<Vec<Token<'a>>> {
        let l = self.lines.get(self.next).cloned();
        self.next += 1;
        l
    }

    fn eof(&self, message: impl Into<String>) -> ParseError {
        ParseError {
            line: self.end.0,
            col: self.end.1,
            message: message.into(),
        }
    }
}

fn parse_usize(t: &Token) -> Result<usize, ParseError> {
    t.text
        .parse()
        .map_err(|_| t.error(format!("expected a nonnegative integer, found {:?}", t.text)))
}

fn parse_u64(t: &Token) -> Result<u64, ParseError> {
    t.text
        .parse()
        .map_err(|_| t.error(format!("expected a nonnegative integer, found {:?}", t.text)))
}

fn located(t: &Token, e: Error) -> ParseError {
    t.error(e.to_string())
}

/// Parses a document.
pub fn parse(text: &str) -> Result<Document, ParseError> {
    let lines = tokenize(text);
    let end = (text.lines().count().max(1), 1);
    let mut lines = Lines {
        lines,
        next: 0,
        end,
    };
    if let Some(first) = lines.peek() {
        if first[0].text == "format" {
            let first = lines.take().unwrap();
            let v = first
                .get(1)
                .ok_or_else(|| first[0].error("expected a format version"))?;
            if v.text != FORMAT_VERSION.to_string() {
                return Err(v.error(format!("unsupported format version {:?}", v.text)));
            }
            if let Some(t) = first.get(2) {
                return Err(t.error("unexpected token after format version"));
            }
        }
    }
    let header = lines.take().ok_or_else(|| lines.eof("empty document"))?;
    let doc = match header[0].text {
        "automaton" => {
            no_args(&header)?;
            Document::Automaton(parse_automaton(&mut lines, true)?)
        }
        "graph" => {
            no_args(&header)?;
            let a = parse_automaton(&mut lines, false)?;
            Document::Graph(a.graph().clone())
        }
        "shift" => {
            no_args(&header)?;
            Document::Shift(parse_shift(&mut lines)?)
        }
        "matrix" => {
            let (r, c) = dims(&header)?;
            Document::Matrix(count_block(&mut lines, &header[0], r, c)?)
        }
        "certificate" => Document::Certificate(parse_certificate(&mut lines, &header)?),
        other => return Err(header[0].error(format!("unknown document kind {other:?}"))),
    };
    if let Some(extra) = lines.take() {
        return Err(extra[0].error(format!("unexpected directive {:?}", extra[0].text)));
    }
    Ok(doc)
}

fn no_args(line: &[Token]) -> Result<(), ParseError> {
    match line.get(1) {
        Some(t) => Err(t.error(format!("unexpected token after {:?}", line[0].text))),
        None => Ok(()),
    }
}

fn dims(line: &[Token]) -> Result<(usize, usize), ParseError> {
    if line.len() != 3 {
        return Err(line[0].error(format!("expected `{} <rows> <cols>`", line[0].text)));
    }
    Ok((parse_usize(&line[1])?, parse_usize(&line[2])?))
}

fn parse_automaton(lines: &mut Lines, labeled: bool) -> Result<Automaton, ParseError> {
    let mut alphabet: Option<Alphabet> = None;
    let mut states: Option<Vec<String>> = None;
    let mut index: HashMap<String, usize> = HashMap::new();
    let mut edges = Vec::new();
    let mut labels = Vec::new();
    let mut ids = HashMap::new();
    while let Some(line) = lines.take() {
        let head = line[0];
        match head.text {
            "alphabet" if labeled => {
                if alphabet.is_some() {
                    return Err(head.error("duplicate alphabet directive"));
                }
                alphabet = Some(parse_alphabet(&line)?);
            }
            "states" => {
                if states.is_some() {
                    return Err(head.error("duplicate states directive"));
                }
                let mut names = Vec::new();
                for t in &line[1..] {
                    if index.insert(t.text.to_string(), names.len()).is_some() {
                        return Err(located(t, Error::DuplicateState(t.text.into())));
                    }
                    names.push(t.text.to_string());
                }
                states = Some(names);
            }
            "edge" => {
                let arity = if labeled { 5 } else { 4 };
                if line.len() != arity {
                    let shape = if labeled {
                        "edge <id> <src> <symbol> <dst>"
                    } else {
                        "edge <id> <src> <dst>"
                    };
                    return Err(head.error(format!("expected `{shape}`")));
                }
                if states.is_none() {
                    return Err(head.error("edges must follow the states directive"));
                }
                let id = line[1];
                if ids.insert(id.text.to_string(), ()).is_some() {
                    return Err(located(&id, Error::DuplicateEdge(id.text.into())));
                }
                let state = |t: &Token| {
                    index
                        .get(t.text)
                        .copied()
                        .ok_or_else(|| located(t, Error::UnknownState(t.text.into())))
                };
                let dst = line[arity - 1];
                edges.push(Edge {
                    id: id.text.to_string(),
                    src: state(&line[2])?,
                    dst: state(&dst)?,
                });
                if labeled {
                    let s = line[3];
                    let alphabet = alphabet
                        .as_ref()
                        .ok_or_else(|| head.error("edges must follow the alphabet directive"))?;
                    labels.push(alphabet.lookup(s.text).map_err(|e| located(&s, e))?);
                }
            }
            _ => {
                lines.next -= 1;
                break;
            }
        }
    }
    let states = states.ok_or_else(|| lines.eof("missing states directive"))?;
    let graph = Graph::new(states, edges).map_err(|e| lines.eof(e.to_string()))?;
    let alphabet = if labeled {
        alphabet.ok_or_else(|| lines.eof("missing alphabet directive"))?
    } else {
        labels = (0..graph.num_edges()).collect();
        Alphabet::new(graph.edges().iter().map(|e| e.id.as_str()))
            .map_err(|e| lines.eof(e.to_string()))?
    };
    Automaton::new(graph, labels, alphabet).map_err(|e| lines.eof(e.to_string()))
}

fn parse_alphabet(line: &[Token]) -> Result<Alphabet, ParseError> {
    let mut alphabet = Alphabet::default();
    for t in &line[1..] {
        let s = Symbol::new(t.text).map_err(|e| located(t, e))?;
        if alphabet.contains(&s) {
            return Err(located(t, Error::DuplicateSymbol(t.text.into())));
        }
        alphabet.insert(s);
    }
    Ok(alphabet)
}

fn parse_shift(lines: &mut Lines) -> Result<ForbiddenWords, ParseError> {
    let mut alphabet: Option<Alphabet> = None;
    let mut words = Vec::new();
    while let Some(line) = lines.take() {
        let head = line[0];
        match head.text {
            "alphabet" => {
                if alphabet.is_some() {
                    return Err(head.error("duplicate alphabet directive"));
                }
                alphabet = Some(parse_alphabet(&line)?);
            }
            "forbidden" => {
                let alphabet = alphabet
                    .as_ref()
                    .ok_or_else(|| head.error("forbidden words must follow the alphabet"))?;
                for t in &line[1..] {
                    words.push(alphabet.parse_word(t.text).map_err(|e| located(t, e))?);
                }
            }
            _ => {
                lines.next -= 1;
                break;
            }
        }
    }
    let alphabet = alphabet.ok_or_else(|| lines.eof("missing alphabet directive"))?;
    ForbiddenWords::new(alphabet, words).map_err(|e| lines.eof(e.to_string()))
}

fn block<'a>(
    lines: &mut Lines<'a>,
    at: &Token,
    rows: usize,
    cols: usize,
) -> Result<Vec<Vec<Token<'a>>>, ParseError> {
    let mut out = Vec::new();
    for _ in 0..rows {
        let line = lines
            .take()
            .ok_or_else(|| at.error(format!("expected {rows} matrix rows")))?;
        if line.len() != cols {
            return Err(line[0].error(format!(
                "expected {cols} entries in the row, found {}",
                line.len()
            )));
        }
        out.push(line);
    }
    Ok(out)
}

fn count_rows(rows: &[Vec<Token>], cols: usize) -> Result<CountMatrix, ParseError> {
    if rows.is_empty() {
        return Ok(CountMatrix::zeros(0, cols));
    }
    let values = rows
        .iter()
        .map(|r| r.iter().map(parse_u64).collect())
        .collect::<Result<Vec<Vec<u64>>, _>>()?;
    CountMatrix::from_rows(values).map_err(|e| rows[0][0].error(e.to_string()))
}

fn alphabetic_rows(rows: &[Vec<Token>], cols: usize) -> Result<AlphabeticMatrix, ParseError> {
    if rows.is_empty() {
        return Ok(AlphabeticMatrix::zeros(0, cols));
    }
    let values = rows
        .iter()
        .map(|r| {
            r.iter()
                .map(|t| parse_polynomial(t.text).map_err(|e| located(t, e)))
                .collect()
        })
        .collect::<Result<Vec<Vec<Polynomial>>, _>>()?;
    AlphabeticMatrix::from_rows(values).map_err(|e| rows[0][0].error(e.to_string()))
}

fn count_block(
    lines: &mut Lines,
    at: &Token,
    rows: usize,
    cols: usize,
) -> Result<CountMatrix, ParseError> {
    let b = block(lines, at, rows, cols)?;
    count_rows(&b, cols)
}

fn parse_certificate(lines: &mut Lines, header: &[Token]) -> Result<SseCertificate, ParseError> {
    let symbolic = match header.get(1).map(|t| t.text) {
        Some("integer") => false,
        Some("symbolic") => true,
        _ => return Err(header[0].error("expected `certificate integer` or `certificate symbolic`")),
    };
    if let Some(t) = header.get(2) {
        return Err(t.error("unexpected token after certificate kind"));
    }
    let mut ends: [Option<Vec<Vec<Token>>>; 2] = [None, None];
    let mut end_dims = [(0, 0); 2];
    let mut steps = Vec::new();
    while let Some(line) = lines.take() {
        let head = line[0];
        match head.text {
            "start" | "end" => {
                let k = usize::from(head.text == "end");
                if ends[k].is_some() {
                    return Err(head.error(format!("duplicate {} matrix", head.text)));
                }
                let (r, c) = dims(&line)?;
                ends[k] = Some(block(lines, &head, r, c)?);
                end_dims[k] = (r, c);
            }
            "step" => steps.push(line),
            _ => {
                lines.next -= 1;
                break;
            }
        }
    }
    let [start, end] = ends;
    let start = start.ok_or_else(|| lines.eof("missing start matrix"))?;
    let end = end.ok_or_else(|| lines.eof("missing end matrix"))?;
    if symbolic {
        let steps = steps
            .iter()
            .map(|l| symbolic_step(l))
            .collect::<Result<Vec<_>, _>>()?;
        Ok(SseCertificate::Symbolic {
            start: alphabetic_rows(&start, end_dims[0].1)?,
            end: alphabetic_rows(&end, end_dims[1].1)?,
            steps,
        })
    } else {
        let steps = steps
            .iter()
            .map(|l| integer_step(l))
            .collect::<Result<Vec<_>, _>>()?;
        Ok(SseCertificate::Integer {
            start: count_rows(&start, end_dims[0].1)?,
            end: count_rows(&end, end_dims[1].1)?,
            steps,
        })
    }
}

/// Reads `<name> <rows> <cols> <entries...>` starting at `line[at]`.
fn inline_matrix<'a>(
    line: &[Token<'a>],
    at: usize,
    name: &str,
) -> Result<(Vec<Vec<Token<'a>>>, usize, usize), ParseError> {
    let head = line
        .get(at)
        .ok_or_else(|| line[line.len() - 1].error(format!("expected matrix {name}")))?;
    if head.text != name {
        return Err(head.error(format!("expected matrix {name}, found {:?}", head.text)));
    }
    let dim = |k: usize| {
        line.get(at + k)
            .ok_or_else(|| head.error(format!("expected dimensions after {name}")))
            .and_then(parse_usize)
    };
    let (r, c) = (dim(1)?, dim(2)?);
    let first = at + 3;
    if line.len() < first + r * c {
        return Err(head.error(format!("matrix {name} needs {} entries", r * c)));
    }
    let rows = (0..r)
        .map(|i| line[first + i * c..first + (i + 1) * c].to_vec())
        .collect();
    Ok((rows, c, first + r * c))
}

fn integer_step(line: &[Token]) -> Result<IntegerStep, ParseError> {
    let (r, rc, next) = inline_matrix(line, 1, "R")?;
    let (s, sc, next) = inline_matrix(line, next, "S")?;
    if let Some(t) = line.get(next) {
        return Err(t.error("unexpected token in integer step"));
    }
    Ok(IntegerStep {
        r: count_rows(&r, rc)?,
        s: count_rows(&s, sc)?,
    })
}

fn symbolic_step(line: &[Token]) -> Result<SymbolicStep, ParseError> {
    let (r, rc, next) = inline_matrix(line, 1, "R")?;
    let (s, sc, next) = inline_matrix(line, next, "S")?;
    match line.get(next) {
        Some(t) if t.text == "bij" => {}
        Some(t) => return Err(t.error(format!("expected bij, found {:?}", t.text))),
        None => return Err(line[0].error("symbolic step needs `bij <pairs> / <pairs>`")),
    }
    let mut maps = [WordBijection::new(), WordBijection::new()];
    let mut side = 0;
    for t in &line[next + 1..] {
        if t.text == "/" {
            if side == 1 {
                return Err(t.error("only two bijections per step"));
            }
            side = 1;
            continue;
        }
        let (x, y, z) = t
            .text
            .split_once(':')
            .and_then(|(x, rest)| rest.rsplit_once('=').map(|(y, z)| (x, y, z)))
            .ok_or_else(|| t.error(format!("expected a pair `x:y=z`, found {:?}", t.text)))?;
        let symbol = |s: &str| Symbol::new(s).map_err(|e| located(t, e));
        let key = (symbol(x)?, symbol(y)?);
        if maps[side].insert(key, symbol(z)?).is_some() {
            return Err(t.error(format!("word {x}{y} mapped twice")));
        }
    }
    if side == 0 {
        return Err(line[next].error("expected `/` between the two bijections"));
    }
    let [rs, sr] = maps;
    Ok(SymbolicStep {
        r: alphabetic_rows(&r, rc)?,
        s: alphabetic_rows(&s, sc)?,
        rs,
        sr,
    })
}

/// Prints a document; [`parse`] reads it back to an equal value.
pub fn print(doc: &Document) -> String {
    let mut out = format!("format {FORMAT_VERSION}\n");
    let push_line = |out: &mut String, parts: Vec<String>| {
        out.push_str(&parts.join(" "));
        out.push('\n');
    };
    match doc {
        Document::Automaton(a) => {
            out.push_str("automaton\n");
            let mut alphabet = vec!["alphabet".to_string()];
            alphabet.extend(a.alphabet().symbols().iter().map(|s| s.to_string()));
            push_line(&mut out, alphabet);
            print_states(&mut out, a.states());
            for (k, e) in a.edges().iter().enumerate() {
                let (s, d) = (&a.states()[e.src], &a.states()[e.dst]);
                out.push_str(&format!("edge {} {s} {} {d}\n", e.id, a.label_symbol(k)));
            }
        }
        Document::Graph(g) => {
            out.push_str("graph\n");
            print_states(&mut out, g.states());
            for e in g.edges() {
                let (s, d) = (&g.states()[e.src], &g.states()[e.dst]);
                out.push_str(&format!("edge {} {s} {d}\n", e.id));
            }
        }
        Document::Shift(f) => {
            out.push_str("shift\n");
            let mut alphabet = vec!["alphabet".to_string()];
            alphabet.extend(f.alphabet().symbols().iter().map(|s| s.to_string()));
            push_line(&mut out, alphabet);
            if !f.words().is_empty() {
                let mut words = vec!["forbidden".to_string()];
                words.extend(f.words().iter().map(|w| print_word(f.alphabet(), w)));
                push_line(&mut out, words);
            }
        }
        Document::Matrix(m) => {
            out.push_str(&format!("matrix {} {}\n", m.rows(), m.cols()));
            print_count_rows(&mut out, m);
        }
        Document::Certificate(SseCertificate::Integer { start, end, steps }) => {
            out.push_str("certificate integer\n");
            for (name, m) in [("start", start), ("end", end)] {
                out.push_str(&format!("{name} {} {}\n", m.rows(), m.cols()));
                print_count_rows(&mut out, m);
            }
            for step in steps {
                let mut parts = vec!["step".to_string()];
                for (name, m) in [("R", &step.r), ("S", &step.s)] {
                    parts.extend([name.to_string(), m.rows().to_string(), m.cols().to_string()]);
                    parts.extend(m.to_rows().into_iter().flatten().map(|v| v.to_string()));
                }
                push_line(&mut out, parts);
            }
        }
        Document::Certificate(SseCertificate::Symbolic { start, end, steps }) => {
            out.push_str("certificate symbolic\n");
            for (name, m) in [("start", start), ("end", end)] {
                out.push_str(&format!("{name} {} {}\n", m.rows(), m.cols()));
                for row in m.to_rows() {
                    let row: Vec<String> = row.iter().map(format_polynomial).collect();
                    push_line(&mut out, row);
                }
            }
            for step in steps {
                let mut parts = vec!["step".to_string()];
                for (name, m) in [("R", &step.r), ("S", &step.s)] {
                    parts.extend([name.to_string(), m.rows().to_string(), m.cols().to_string()]);
                    parts.extend(m.to_rows().iter().flatten().map(format_polynomial));
                }
                parts.push("bij".into());
                parts.extend(step.rs.iter().map(|((x, y), z)| format!("{x}:{y}={z}")));
                parts.push("/".into());
                parts.extend(step.sr.iter().map(|((x, y), z)| format!("{x}:{y}={z}")));
                push_line(&mut out, parts);
            }
        }
    }
    out
}

fn print_states(out: &mut String, states: &[String]) {
    out.push_str("states");
    for s in states {
        out.push(' ');
        out.push_str(s);
    }
    out.push('\n');
}

fn print_count_rows(out: &mut String, m: &CountMatrix) {
    for row in m.to_rows() {
        let row: Vec<String> = row.iter().map(|v| v.to_string()).collect();
        out.push_str(&row.join(" "));
        out.push('\n');
    }
}

/// Words are written so that [`Alphabet::parse_word`] reads them back: a
/// single symbol as itself, otherwise concatenated when the alphabet is
/// compact and dot-separated when it is not.
fn print_word(alphabet: &Alphabet, w: &[usize]) -> String {
    if w.len() == 1 {
        return alphabet.symbol(w[0]).to_string();
    }
    alphabet.format_word(w)
}

impl FromStr for Document {
    type Err = ParseError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        parse(s)
    }
}

impl fmt::Display for Document {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&print(self))
    }
}
