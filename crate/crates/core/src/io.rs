//! Text formats: boards, quantified formulas, and DOT export.
//!
//! Board files start with `hypergraph <n> <m>` followed by `m` lines
//! `<B|R|G> v1 v2 ...`, or with `graph <n> <m>` followed by `m` lines `u v`
//! (blue edges). Appending `multi` to the header allows repeated edges.
//! Optional `L: ...` and `R: ...` lines list claimed vertices. Blank lines
//! and lines starting with `#` are ignored.
//!
//! Formula files have one prefix line of `e<var>`/`a<var>` tokens, outermost
//! first, then clauses as signed integers terminated by `0`.

use std::fmt::Write as _;

use thiserror::Error;

use crate::board::{BoardError, EdgeColor, Hypergraph, Owner, Player, Position};
use crate::reductions::{Literal, QBFormula, Quantifier};

#[derive(Debug, Error, PartialEq, Eq)]
#[error("line {line}, column {column}: {message}")]
pub struct ParseError {
    pub line: usize,
    pub column: usize,
    pub message: String,
}

struct Lines<'a> {
    inner: std::iter::Enumerate<std::str::Lines<'a>>,
    last: usize,
}

impl<'a> Lines<'a> {
    fn new(text: &'a str) -> Self {
        Lines {
            inner: text.lines().enumerate(),
            last: 0,
        }
    }

    /// Next meaningful line with its 1-based number.
    fn next_line(&mut self) -> Option<(usize, &'a str)> {
        for (i, line) in self.inner.by_ref() {
            self.last = i + 1;
            let t = line.trim();
            if !t.is_empty() && !t.starts_with('#') {
                return Some((i + 1, line));
            }
        }
        None
    }
}

/// Whitespace-separated tokens with their 1-based columns.
fn tokens(line: &str) -> Vec<(usize, &str)> {
    let mut out = Vec::new();
    let mut start = None;
    for (i, c) in line.char_indices() {
        match (c.is_whitespace(), start) {
            (true, Some(s)) => {
                out.push((s + 1, &line[s..i]));
                start = None;
            }
            (false, None) => start = Some(i),
            _ => {}
        }
    }
    if let Some(s) = start {
        out.push((s + 1, &line[s..]));
    }
    out
}

fn err(line: usize, column: usize, message: impl Into<String>) -> ParseError {
    ParseError {
        line,
        column,
        message: message.into(),
    }
}

fn number<T: std::str::FromStr>(line: usize, (col, tok): (usize, &str)) -> Result<T, ParseError> {
    tok.parse().map_err(|_| err(line, col, format!("expected a number, found `{tok}`")))
}

pub fn parse_board(text: &str) -> Result<Position, ParseError> {
    let mut lines = Lines::new(text);
    let (hl, header) = lines.next_line().ok_or_else(|| err(1, 1, "missing header"))?;
    let head = tokens(header);
    let graph = match head.first().map(|t| t.1) {
        Some("graph") => true,
        Some("hypergraph") => false,
        _ => return Err(err(hl, 1, "header must start with `graph` or `hypergraph`")),
    };
    if head.len() < 3 || head.len() > 4 {
        return Err(err(hl, 1, "header must be `<kind> <n> <m> [multi]`"));
    }
    let n: usize = number(hl, head[1])?;
    let m: usize = number(hl, head[2])?;
    let multi = match head.get(3) {
        None => false,
        Some(&(_, "multi")) => true,
        Some(&(col, tok)) => return Err(err(hl, col, format!("unexpected `{tok}`"))),
    };

    let mut edges: Vec<(Vec<usize>, EdgeColor)> = Vec::with_capacity(m);
    let mut edge_lines = Vec::with_capacity(m);
    while edges.len() < m {
        let (ln, line) = lines
            .next_line()
            .ok_or_else(|| err(lines.last + 1, 1, format!("expected {m} edges, found {}", edges.len())))?;
        let toks = tokens(line);
        let (color, rest) = if graph {
            if toks.len() != 2 {
                return Err(err(ln, 1, "graph edges are `u v`"));
            }
            (EdgeColor::Blue, &toks[..])
        } else {
            let color = match toks[0].1 {
                "B" => EdgeColor::Blue,
                "R" => EdgeColor::Red,
                "G" => EdgeColor::Green,
                other => return Err(err(ln, toks[0].0, format!("unknown color `{other}`"))),
            };
            if toks.len() < 2 {
                return Err(err(ln, 1, "empty hyperedge"));
            }
            (color, &toks[1..])
        };
        let mut members = Vec::with_capacity(rest.len());
        for &t in rest {
            let v: usize = number(ln, t)?;
            if v >= n {
                return Err(err(ln, t.0, format!("vertex {v} out of range for {n} vertices")));
            }
            members.push(v);
        }
        edges.push((members, color));
        edge_lines.push(ln);
    }
    let built = if multi {
        Hypergraph::with_multi_edges(n, edges)
    } else {
        Hypergraph::new(n, edges)
    };
    let board = built.map_err(|e| {
        let line = match e {
            BoardError::DuplicateEdge { index }
            | BoardError::EmptyEdge { index }
            | BoardError::RepeatedVertex { index, .. } => edge_lines[index],
            _ => hl,
        };
        err(line, 1, e.to_string())
    })?;

    let (mut left, mut right) = (Vec::new(), Vec::new());
    let mut last_claim_line = hl;
    while let Some((ln, line)) = lines.next_line() {
        let toks = tokens(line);
        let target = match toks[0].1 {
            "L:" => &mut left,
            "R:" => &mut right,
            other => return Err(err(ln, toks[0].0, format!("unexpected `{other}`"))),
        };
        for &t in &toks[1..] {
            let v: usize = number(ln, t)?;
            if v >= n {
                return Err(err(ln, t.0, format!("vertex {v} out of range for {n} vertices")));
            }
            target.push(v);
        }
        last_claim_line = ln;
    }
    Position::with_claims(board, left, right).map_err(|e| err(last_claim_line, 1, e.to_string()))
}

pub fn serialize_board(p: &Position) -> String {
    let g = p.board();
    let graph = g.is_graph() && g.all_colored(EdgeColor::Blue) && g.edge_count() > 0;
    let mut out = format!(
        "{} {} {}{}\n",
        if graph { "graph" } else { "hypergraph" },
        g.vertex_count(),
        g.edge_count(),
        if g.allows_multi_edges() { " multi" } else { "" }
    );
    for e in g.edges() {
        let members: Vec<String> = e.vertices.iter().map(|v| v.to_string()).collect();
        if graph {
            writeln!(out, "{}", members.join(" ")).unwrap();
        } else {
            writeln!(out, "{} {}", e.color.letter(), members.join(" ")).unwrap();
        }
    }
    for (tag, player) in [("L:", Player::Left), ("R:", Player::Right)] {
        let claimed = p.claimed_by(player);
        if !claimed.is_empty() {
            let ids: Vec<String> = claimed.iter().map(|v| v.to_string()).collect();
            writeln!(out, "{tag} {}", ids.join(" ")).unwrap();
        }
    }
    out
}

pub fn parse_qbf(text: &str) -> Result<QBFormula, ParseError> {
    let mut lines = Lines::new(text);
    let (pl, prefix_line) = lines.next_line().ok_or_else(|| err(1, 1, "missing prefix line"))?;
    let mut prefix = Vec::new();
    for (col, tok) in tokens(prefix_line) {
        let q = match tok.as_bytes()[0] {
            b'e' => Quantifier::Exists,
            b'a' => Quantifier::Forall,
            _ => return Err(err(pl, col, format!("expected e<var> or a<var>, found `{tok}`"))),
        };
        let var: u32 = number(pl, (col + 1, &tok[1..]))?;
        prefix.push((var, q));
    }
    let mut clauses = Vec::new();
    while let Some((ln, line)) = lines.next_line() {
        let toks = tokens(line);
        let mut clause = Vec::new();
        let mut closed = false;
        for &t in &toks {
            if closed {
                return Err(err(ln, t.0, "text after the terminating 0"));
            }
            let x: i64 = number(ln, t)?;
            if x == 0 {
                closed = true;
            } else {
                clause.push(Literal::from_signed(x).ok_or_else(|| err(ln, t.0, "literal out of range"))?);
            }
        }
        if !closed {
            return Err(err(ln, line.len() + 1, "clause must end with 0"));
        }
        clauses.push(clause);
    }
    QBFormula::new(prefix, clauses).map_err(|e| err(pl, 1, e.to_string()))
}

pub fn serialize_qbf(f: &QBFormula) -> String {
    let prefix: Vec<String> = f
        .prefix
        .iter()
        .map(|&(v, q)| match q {
            Quantifier::Exists => format!("e{v}"),
            Quantifier::Forall => format!("a{v}"),
        })
        .collect();
    let mut out = format!("{}\n", prefix.join(" "));
    for c in &f.clauses {
        for l in c {
            write!(out, "{l} ").unwrap();
        }
        out.push_str("0\n");
    }
    out
}

fn dot_color(c: EdgeColor) -> &'static str {
    match c {
        EdgeColor::Blue => "blue",
        EdgeColor::Red => "red",
        EdgeColor::Green => "darkgreen",
    }
}

/// Graphviz description: claimed vertices are filled, pairs are drawn as
/// edges and larger hyperedges as small hub nodes.
pub fn to_dot(p: &Position) -> String {
    let g = p.board();
    let mut out = String::from("graph board {\n  node [shape=circle];\n");
    for v in g.vertices() {
        let style = match p.owner(v) {
            Owner::Free => String::new(),
            Owner::Claimed(Player::Left) => " style=filled fillcolor=lightblue".into(),
            Owner::Claimed(Player::Right) => " style=filled fillcolor=lightpink".into(),
        };
        writeln!(out, "  v{v} [label=\"{v}\"{style}];").unwrap();
    }
    for (i, e) in g.edges().iter().enumerate() {
        let color = dot_color(e.color);
        if e.len() == 2 {
            writeln!(out, "  v{} -- v{} [color={color}];", e.vertices[0], e.vertices[1]).unwrap();
        } else {
            writeln!(out, "  e{i} [shape=point color={color}];").unwrap();
            for v in &e.vertices {
                writeln!(out, "  e{i} -- v{v} [color={color}];").unwrap();
            }
        }
    }
    out.push_str("}\n");
    out
}
