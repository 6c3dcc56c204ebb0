//! Text formats.
//!
//! Edge lists hold one `u v` pair of non-negative integer labels per line.
//! A cut tree file starts with `cuttree <n>` followed by `child parent w`
//! lines sorted by child label. A one-vertex tree has no edge lines, so its
//! label is kept in a `# root <label>` comment. In both formats blank lines
//! and lines starting with `#` are otherwise ignored.

use std::collections::HashMap;
use std::io::{self, BufRead, Write};

use thiserror::Error;

use crate::graph::{normalize, Capacity, UndirectedGraph, VertexId, VertexMapping};
use crate::tree::CutTree;

pub type Label = u64;

#[derive(Debug, Error)]
pub enum ParseError {
    #[error(transparent)]
    Io(#[from] io::Error),
    #[error("line {line}: {msg}")]
    Line { line: usize, msg: String },
    #[error("{0}")]
    Format(String),
}

fn line_err(line: usize, msg: impl Into<String>) -> ParseError {
    ParseError::Line {
        line,
        msg: msg.into(),
    }
}

fn parse_label(tok: &str, line: usize) -> Result<Label, ParseError> {
    tok.parse()
        .map_err(|_| line_err(line, format!("expected a non-negative integer, got {tok:?}")))
}

/// Content lines with 1-based line numbers.
fn content_lines<R: BufRead>(r: R) -> impl Iterator<Item = Result<(usize, String), ParseError>> {
    r.lines().enumerate().filter_map(|(i, line)| match line {
        Err(e) => Some(Err(e.into())),
        Ok(l) => {
            let t = l.trim();
            (!t.is_empty() && !t.starts_with('#')).then(|| Ok((i + 1, t.to_string())))
        }
    })
}

/// A graph with the external label of every dense vertex id.
#[derive(Clone, Debug)]
pub struct LabeledGraph {
    pub graph: UndirectedGraph,
    pub labels: VertexMapping<Label>,
}

pub fn read_edge_list<R: BufRead>(r: R) -> Result<LabeledGraph, ParseError> {
    let mut pairs = Vec::new();
    for item in content_lines(r) {
        let (line, text) = item?;
        let toks: Vec<&str> = text.split_whitespace().collect();
        if toks.len() != 2 {
            return Err(line_err(line, format!("expected two labels, found {}", toks.len())));
        }
        pairs.push((parse_label(toks[0], line)?, parse_label(toks[1], line)?));
    }
    let (graph, labels) = normalize(pairs);
    Ok(LabeledGraph { graph, labels })
}

pub fn parse_edge_list(text: &str) -> Result<LabeledGraph, ParseError> {
    read_edge_list(text.as_bytes())
}

/// Writes one line per unit of capacity, using dense ids as labels.
pub fn write_edge_list<W: Write>(g: &UndirectedGraph, mut w: W) -> io::Result<()> {
    for (u, v, c) in g.edges() {
        for _ in 0..c {
            writeln!(w, "{u} {v}")?;
        }
    }
    Ok(())
}

/// A cut tree whose vertices carry external labels.
#[derive(Clone, Debug)]
pub struct LabeledTree {
    pub tree: CutTree,
    labels: Vec<Label>,
    index: HashMap<Label, VertexId>,
}

impl LabeledTree {
    pub fn new(tree: CutTree, labels: Vec<Label>) -> Self {
        assert_eq!(tree.len(), labels.len(), "one label per tree vertex");
        let index = labels.iter().enumerate().map(|(i, &l)| (l, i)).collect();
        LabeledTree { tree, labels, index }
    }

    pub fn len(&self) -> usize {
        self.labels.len()
    }

    pub fn is_empty(&self) -> bool {
        self.labels.is_empty()
    }

    pub fn label(&self, v: VertexId) -> Label {
        self.labels[v]
    }

    pub fn labels(&self) -> &[Label] {
        &self.labels
    }

    pub fn id(&self, label: Label) -> Option<VertexId> {
        self.index.get(&label).copied()
    }

    /// Connectivity between two labels; `None` if either is unknown.
    pub fn query(&self, s: Label, t: Label) -> Option<Capacity> {
        let (a, b) = (self.id(s)?, self.id(t)?);
        self.tree.query(a, b).ok()
    }

    /// Same tree with ids reassigned in ascending label order.
    pub fn sorted(&self) -> LabeledTree {
        let mut order: Vec<VertexId> = (0..self.len()).collect();
        order.sort_by_key(|&v| self.labels[v]);
        let mut new_id = vec![0; self.len()];
        for (i, &v) in order.iter().enumerate() {
            new_id[v] = i;
        }
        let edges: Vec<_> = self.tree.edges().map(|(a, b, w)| (new_id[a], new_id[b], w)).collect();
        let tree = CutTree::from_edges(self.len(), &edges).expect("relabelled tree stays a tree");
        LabeledTree::new(tree, order.iter().map(|&v| self.labels[v]).collect())
    }

    pub fn write<W: Write>(&self, mut w: W) -> io::Result<()> {
        writeln!(w, "cuttree {}", self.len())?;
        if let Some(root) = self.tree.root() {
            if self.len() == 1 {
                writeln!(w, "# root {}", self.labels[root])?;
            }
        }
        let mut lines: Vec<(Label, Label, Capacity)> = self
            .tree
            .edges()
            .map(|(c, p, wt)| (self.labels[c], self.labels[p], wt))
            .collect();
        lines.sort_unstable();
        for (c, p, wt) in lines {
            writeln!(w, "{c} {p} {wt}")?;
        }
        Ok(())
    }

    pub fn to_text(&self) -> String {
        let mut out = Vec::new();
        self.write(&mut out).expect("writing to memory");
        String::from_utf8(out).expect("ascii output")
    }

    /// Parses a cut tree file; ids follow ascending label order.
    pub fn read<R: BufRead>(r: R) -> Result<LabeledTree, ParseError> {
        let mut n = None;
        let mut root_label = None;
        let mut rows = Vec::new();
        for (i, line) in r.lines().enumerate() {
            let line = line?;
            let lineno = i + 1;
            let t = line.trim();
            if t.is_empty() {
                continue;
            }
            if let Some(rest) = t.strip_prefix('#') {
                let toks: Vec<&str> = rest.split_whitespace().collect();
                if let ["root", l] = toks[..] {
                    root_label = Some(parse_label(l, lineno)?);
                }
                continue;
            }
            let toks: Vec<&str> = t.split_whitespace().collect();
            if n.is_none() {
                match toks[..] {
                    ["cuttree", count] => {
                        n = Some(count.parse::<usize>().map_err(|_| line_err(lineno, "bad vertex count"))?)
                    }
                    _ => return Err(line_err(lineno, "expected header \"cuttree <n>\"")),
                }
                continue;
            }
            if toks.len() != 3 {
                return Err(line_err(lineno, format!("expected \"child parent weight\", found {} fields", toks.len())));
            }
            let c = parse_label(toks[0], lineno)?;
            let p = parse_label(toks[1], lineno)?;
            let w: Capacity = toks[2]
                .parse()
                .map_err(|_| line_err(lineno, format!("bad weight {:?}", toks[2])))?;
            if c == p {
                return Err(line_err(lineno, "tree edge is a self-loop"));
            }
            rows.push((lineno, c, p, w));
        }
        let n = n.ok_or_else(|| ParseError::Format("missing \"cuttree <n>\" header".into()))?;

        let mut labels: Vec<Label> = rows.iter().flat_map(|&(_, c, p, _)| [c, p]).chain(root_label).collect();
        labels.sort_unstable();
        labels.dedup();
        if labels.len() != n {
            return Err(ParseError::Format(format!("header says {n} vertices, file names {}", labels.len())));
        }
        let id = |l: Label| labels.binary_search(&l).expect("collected label");
        let mut parents = vec![None; n];
        let mut weights = vec![0; n];
        for &(lineno, c, p, w) in &rows {
            let v = id(c);
            if parents[v].is_some() {
                return Err(line_err(lineno, format!("vertex {c} has two parents")));
            }
            parents[v] = Some(id(p));
            weights[v] = w;
        }
        let tree = CutTree::from_parents(&parents, &weights)
            .map_err(|e| ParseError::Format(format!("not a tree: {e}")))?;
        Ok(LabeledTree::new(tree, labels))
    }

    pub fn parse(text: &str) -> Result<LabeledTree, ParseError> {
        LabeledTree::read(text.as_bytes())
    }
}
