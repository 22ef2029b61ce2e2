//! Instance text format and JSON/DOT result documents.
//!
//! Instances are line oriented:
//!
//! ```text
//! c comment lines start with a lone `c`
//! p mpg <vertices> <arcs>
//! v <id> <owner 0|1>
//! a <source> <target> <weight>
//! ```
//!
//! The header comes first; there must be exactly one `v` line per vertex and
//! exactly as many `a` lines as announced. Blank lines are ignored.

use std::fmt::Write as _;
use std::time::Duration;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::arena::{build_arena, Arc, Arena, ArenaError, Player, VertexId, Weight};
use crate::solver::Solution;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ParseError {
    #[error("line {line}, column {column}: {message}")]
    Syntax {
        line: usize,
        column: usize,
        message: String,
    },
    #[error("line {line}: {message}")]
    Semantic { line: usize, message: String },
}

impl ParseError {
    pub fn line(&self) -> usize {
        match self {
            ParseError::Syntax { line, .. } | ParseError::Semantic { line, .. } => *line,
        }
    }
}

struct Tokens<'a> {
    line: usize,
    text: &'a str,
    fields: Vec<(usize, &'a str)>,
}

impl<'a> Tokens<'a> {
    fn new(line: usize, text: &'a str) -> Self {
        let fields = text
            .split_whitespace()
            .map(|tok| (tok.as_ptr() as usize - text.as_ptr() as usize + 1, tok))
            .collect();
        Tokens { line, text, fields }
    }

    fn syntax(&self, column: usize, message: impl Into<String>) -> ParseError {
        ParseError::Syntax {
            line: self.line,
            column,
            message: message.into(),
        }
    }

    fn expect_len(&self, len: usize, what: &str) -> Result<(), ParseError> {
        if self.fields.len() == len {
            return Ok(());
        }
        let column = self
            .fields
            .get(len)
            .map(|f| f.0)
            .unwrap_or(self.text.trim_end().len() + 1);
        Err(self.syntax(column, format!("expected {what}")))
    }

    fn int<T: std::str::FromStr>(&self, k: usize, what: &str) -> Result<T, ParseError> {
        let (column, tok) = self.fields[k];
        tok.parse()
            .map_err(|_| self.syntax(column, format!("invalid {what} `{tok}`")))
    }
}

/// Parses an instance into a validated arena.
pub fn parse_instance(text: &str) -> Result<Arena, ParseError> {
    let mut header: Option<(usize, usize, usize)> = None;
    let mut owners: Vec<Option<Player>> = Vec::new();
    let mut arcs: Vec<(usize, Arc)> = Vec::new();
    let mut vertex_lines = 0usize;
    let mut last_line = 0usize;

    for (k, raw) in text.lines().enumerate() {
        let line = k + 1;
        last_line = line;
        let toks = Tokens::new(line, raw);
        let Some(&(column, kind)) = toks.fields.first() else {
            continue;
        };
        if kind == "c" {
            continue;
        }
        match (kind, header) {
            ("p", None) => {
                toks.expect_len(4, "`p mpg <vertices> <arcs>`")?;
                if toks.fields[1].1 != "mpg" {
                    return Err(toks.syntax(toks.fields[1].0, "expected problem type `mpg`"));
                }
                let n: usize = toks.int(2, "vertex count")?;
                let m: usize = toks.int(3, "arc count")?;
                if n == 0 {
                    return Err(ParseError::Semantic {
                        line,
                        message: ArenaError::Empty.to_string(),
                    });
                }
                owners = vec![None; n];
                header = Some((line, n, m));
            }
            ("p", Some(_)) => return Err(toks.syntax(column, "duplicate header")),
            (_, None) => return Err(toks.syntax(column, "expected `p mpg` header first")),
            ("v", Some((_, n, _))) => {
                toks.expect_len(3, "`v <id> <owner>`")?;
                let id: usize = toks.int(1, "vertex id")?;
                let owner: u8 = toks.int(2, "owner")?;
                let owner = Player::from_index(owner)
                    .ok_or_else(|| toks.syntax(toks.fields[2].0, "owner must be 0 or 1"))?;
                if id >= n {
                    return Err(ParseError::Semantic {
                        line,
                        message: format!("vertex id {id} outside [0, {n})"),
                    });
                }
                if owners[id].replace(owner).is_some() {
                    return Err(ParseError::Semantic {
                        line,
                        message: format!("vertex {id} declared twice"),
                    });
                }
                vertex_lines += 1;
            }
            ("a", Some((_, n, m))) => {
                toks.expect_len(4, "`a <source> <target> <weight>`")?;
                let source: usize = toks.int(1, "source")?;
                let target: usize = toks.int(2, "target")?;
                let weight: Weight = toks.int(3, "weight")?;
                if source >= n || target >= n {
                    return Err(ParseError::Semantic {
                        line,
                        message: ArenaError::DanglingEndpoint {
                            tail: source,
                            head: target,
                            vertex_count: n,
                        }
                        .to_string(),
                    });
                }
                if arcs.len() == m {
                    return Err(toks.syntax(column, format!("more than {m} arc lines")));
                }
                arcs.push((line, Arc::new(source, target, weight)));
            }
            _ => return Err(toks.syntax(column, format!("unknown line type `{kind}`"))),
        }
    }

    let Some((header_line, n, m)) = header else {
        return Err(ParseError::Syntax {
            line: last_line + 1,
            column: 1,
            message: "missing `p mpg` header".into(),
        });
    };
    let eof = |message: String| ParseError::Syntax {
        line: last_line + 1,
        column: 1,
        message,
    };
    if vertex_lines != n {
        return Err(eof(format!(
            "expected {n} vertex lines, found {vertex_lines}"
        )));
    }
    if arcs.len() != m {
        return Err(eof(format!("expected {m} arc lines, found {}", arcs.len())));
    }

    let owners: Vec<Player> = owners
        .into_iter()
        .map(|o| o.expect("all declared"))
        .collect();
    build_arena(n, owners, arcs.iter().map(|&(_, a)| a)).map_err(|err| {
        let line = match &err {
            ArenaError::DuplicateArc { tail, head } => arcs
                .iter()
                .filter(|(_, a)| (a.source, a.target) == (*tail, *head))
                .nth(1)
                .map(|&(l, _)| l)
                .unwrap_or(header_line),
            _ => header_line,
        };
        ParseError::Semantic {
            line,
            message: err.to_string(),
        }
    })
}

/// Canonical text of an arena: header, vertex lines by id, arc lines by (source, target).
pub fn write_instance(arena: &Arena) -> String {
    let mut out = String::new();
    writeln!(out, "p mpg {} {}", arena.vertex_count(), arena.arc_count()).unwrap();
    for v in arena.vertices() {
        writeln!(out, "v {} {}", v, arena.owner(v).index()).unwrap();
    }
    for a in arena.arcs() {
        writeln!(out, "a {} {} {}", a.source, a.target, a.weight).unwrap();
    }
    out
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct VertexRecord {
    pub id: VertexId,
    pub value_num: i64,
    pub value_den: i64,
    pub winner: u8,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct StrategyRecord {
    pub id: VertexId,
    pub choice: VertexId,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct ResultMeta {
    pub vertices: usize,
    pub arcs: usize,
    pub max_weight: Weight,
    pub lift_total: u64,
    /// Wall time of the solve; `null` unless timing was requested.
    pub elapsed_ms: Option<f64>,
}

/// Solver output. Keys serialize in declaration order.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct ResultDocument {
    pub vertices: Vec<VertexRecord>,
    pub strategy: Vec<StrategyRecord>,
    pub meta: ResultMeta,
}

fn vertex_records(values: &[num_rational::Rational64]) -> Vec<VertexRecord> {
    values
        .iter()
        .enumerate()
        .map(|(id, value)| VertexRecord {
            id,
            value_num: *value.numer(),
            value_den: *value.denom(),
            winner: if *value.numer() >= 0 { 0 } else { 1 },
        })
        .collect()
}

impl ResultDocument {
    pub fn new(solution: &Solution, arena: &Arena, elapsed: Option<Duration>) -> Self {
        let strategy = solution
            .strategy()
            .iter()
            .enumerate()
            .filter_map(|(id, choice)| choice.map(|choice| StrategyRecord { id, choice }))
            .collect();
        ResultDocument {
            vertices: vertex_records(solution.values()),
            strategy,
            meta: ResultMeta {
                vertices: arena.vertex_count(),
                arcs: arena.arc_count(),
                max_weight: arena.max_abs_weight(),
                lift_total: solution.lift_total(),
                elapsed_ms: elapsed.map(|d| d.as_secs_f64() * 1e3),
            },
        }
    }
}

/// Pretty-printed JSON result with a trailing newline.
pub fn emit_result(solution: &Solution, arena: &Arena, elapsed: Option<Duration>) -> String {
    let mut text = serde_json::to_string_pretty(&ResultDocument::new(solution, arena, elapsed))
        .expect("result documents always serialize");
    text.push('\n');
    text
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct OracleMeta {
    pub vertices: usize,
    pub arcs: usize,
    pub max_weight: Weight,
}

/// Brute-force values in the same per-vertex record layout as [`ResultDocument`].
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct OracleDocument {
    pub vertices: Vec<VertexRecord>,
    pub meta: OracleMeta,
}

pub fn emit_oracle(values: &[num_rational::Rational64], arena: &Arena) -> String {
    let doc = OracleDocument {
        vertices: vertex_records(values),
        meta: OracleMeta {
            vertices: arena.vertex_count(),
            arcs: arena.arc_count(),
            max_weight: arena.max_abs_weight(),
        },
    };
    let mut text = serde_json::to_string_pretty(&doc).expect("oracle documents always serialize");
    text.push('\n');
    text
}

/// Graphviz rendering of the projection graph under Player 0's strategy,
/// vertices labelled with their values. Player 0 vertices are boxes.
pub fn emit_dot(solution: &Solution, arena: &Arena) -> String {
    let mut out = String::from("digraph projection {\n");
    for v in arena.vertices() {
        let shape = match arena.owner(v) {
            Player::Zero => "box",
            Player::One => "ellipse",
        };
        writeln!(
            out,
            "  {v} [shape={shape}, label=\"{v}: {}\"];",
            solution.values()[v]
        )
        .unwrap();
    }
    for v in arena.vertices() {
        for &(u, w) in arena.successors(v) {
            if arena.owner(v) == Player::Zero && solution.strategy_at(v) != Some(u) {
                continue;
            }
            writeln!(out, "  {v} -> {u} [label=\"{w}\"];").unwrap();
        }
    }
    out.push_str("}\n");
    out
}
