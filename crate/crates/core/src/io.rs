//! Plain-text instance format.
//!
//! A file is a sequence of blocks, each a header followed by its body:
//!
//! ```text
//! # comment
//! graph directed|undirected <n> <m>   then m lines `u v w`
//! matrix <n>                          then n*n weights, row-major
//! seq <n>                             then n weights
//! ```
//!
//! Tokens are whitespace-separated; line breaks carry no meaning. Weights
//! use the [`ExpFloat`] token grammar (`1.5p10`, `3.25`, `inf`).

use std::fmt::Write as _;

use crate::apsp::Graph;
use crate::error::{Error, Result};
use crate::numeric::ExpFloat;
use crate::weights::{WeightMatrix, WeightSequence};

#[derive(Clone, Debug, PartialEq)]
pub enum Instance {
    Graph(Graph),
    Matrix(WeightMatrix),
    Sequence(WeightSequence),
}

#[derive(Clone, Debug, Default, PartialEq)]
pub struct ParsedFile {
    pub instances: Vec<Instance>,
    pub warnings: Vec<String>,
}

struct Token<'a> {
    text: &'a str,
    line: usize,
    column: usize,
}

struct Tokens<'a> {
    items: Vec<Token<'a>>,
    pos: usize,
    end: (usize, usize),
}

impl<'a> Tokens<'a> {
    fn new(src: &'a str) -> Tokens<'a> {
        let mut items = Vec::new();
        let mut end = (1, 1);
        for (ln, line) in src.lines().enumerate() {
            let line = line.split('#').next().unwrap_or("");
            let mut offset = 0;
            for word in line.split_whitespace() {
                let col = line[offset..].find(word).expect("word from this line") + offset;
                offset = col + word.len();
                items.push(Token { text: word, line: ln + 1, column: col + 1 });
            }
            end = (ln + 1, line.len() + 1);
        }
        Tokens { items, pos: 0, end }
    }

    fn done(&self) -> bool {
        self.pos >= self.items.len()
    }

    fn next(&mut self, what: &str) -> Result<&Token<'a>> {
        match self.items.get(self.pos) {
            Some(t) => {
                self.pos += 1;
                Ok(t)
            }
            None => Err(Error::Parse {
                line: self.end.0,
                column: self.end.1,
                message: format!("unexpected end of input, expected {what}"),
            }),
        }
    }

    fn count(&mut self, what: &str) -> Result<usize> {
        let t = self.next(what)?;
        t.text.parse().map_err(|_| err(t, format!("expected {what}, found `{}`", t.text)))
    }

    fn weight(&mut self) -> Result<ExpFloat> {
        let t = self.next("a weight")?;
        t.text.parse().map_err(|e: Error| match e {
            Error::ExponentOverflow => err(t, format!("exponent overflow in `{}`", t.text)),
            _ => err(t, format!("malformed weight `{}`", t.text)),
        })
    }
}

fn err(t: &Token<'_>, message: String) -> Error {
    Error::Parse { line: t.line, column: t.column, message }
}

/// Parses every block of `src`; self-loops are dropped with a warning.
pub fn parse_instances(src: &str) -> Result<ParsedFile> {
    let mut toks = Tokens::new(src);
    let mut out = ParsedFile::default();
    while !toks.done() {
        let head = toks.next("a block header")?;
        let (line, column) = (head.line, head.column);
        match head.text {
            "graph" => {
                let dir = toks.next("`directed` or `undirected`")?;
                let directed = match dir.text {
                    "directed" => true,
                    "undirected" => false,
                    other => return Err(err(dir, format!("expected `directed` or `undirected`, found `{other}`"))),
                };
                let n = toks.count("a vertex count")?;
                let m = toks.count("an edge count")?;
                let mut edges = Vec::with_capacity(m);
                for _ in 0..m {
                    let ut = toks.next("a vertex")?;
                    let u: usize = ut.text.parse().map_err(|_| err(ut, format!("expected a vertex, found `{}`", ut.text)))?;
                    if u >= n {
                        return Err(err(ut, format!("vertex {u} out of range for {n} vertices")));
                    }
                    let vt = toks.next("a vertex")?;
                    let v: usize = vt.text.parse().map_err(|_| err(vt, format!("expected a vertex, found `{}`", vt.text)))?;
                    if v >= n {
                        return Err(err(vt, format!("vertex {v} out of range for {n} vertices")));
                    }
                    let w = toks.weight()?;
                    if !w.is_finite() {
                        return Err(Error::Parse { line, column, message: format!("edge ({u}, {v}) has infinite weight") });
                    }
                    if u == v {
                        out.warnings.push(format!("dropped self-loop at vertex {u} (block at line {line})"));
                    }
                    edges.push((u, v, w));
                }
                out.instances.push(Instance::Graph(Graph::new(n, directed, edges)?));
            }
            "matrix" => {
                let n = toks.count("a dimension")?;
                let entries = (0..n * n).map(|_| toks.weight()).collect::<Result<Vec<_>>>()?;
                out.instances.push(Instance::Matrix(WeightMatrix::new(n, entries)?));
            }
            "seq" => {
                let n = toks.count("a length")?;
                let entries = (0..n).map(|_| toks.weight()).collect::<Result<Vec<_>>>()?;
                out.instances.push(Instance::Sequence(WeightSequence::new(entries)));
            }
            other => {
                return Err(Error::Parse { line, column, message: format!("unknown block `{other}`") });
            }
        }
    }
    Ok(out)
}

/// Writes `inst` in the format accepted by [`parse_instances`].
pub fn print_instance(inst: &Instance) -> String {
    let mut s = String::new();
    match inst {
        Instance::Graph(g) => {
            let kind = if g.is_directed() { "directed" } else { "undirected" };
            let _ = writeln!(s, "graph {kind} {} {}", g.n(), g.edges().len());
            for &(u, v, w) in g.edges() {
                let _ = writeln!(s, "{u} {v} {w}");
            }
        }
        Instance::Matrix(m) => {
            let _ = writeln!(s, "matrix {}", m.n());
            for row in m.rows() {
                let line: Vec<String> = row.iter().map(|x| x.to_string()).collect();
                let _ = writeln!(s, "{}", line.join(" "));
            }
        }
        Instance::Sequence(q) => {
            let _ = writeln!(s, "seq {}", q.len());
            let line: Vec<String> = q.iter().map(|x| x.to_string()).collect();
            let _ = writeln!(s, "{}", line.join(" "));
        }
    }
    s
}

pub fn print_instances(insts: &[Instance]) -> String {
    insts.iter().map(print_instance).collect()
}
