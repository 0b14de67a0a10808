//! Line-based text formats. All files are UTF-8 with LF endings and `#`
//! comments. Tokens are whitespace-separated; composite symbols like
//! `(q0,$)` are single tokens. Writers emit canonical order so equal
//! values serialize byte-identically.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt::Write as _;

use crate::alphabet::{Alphabet, Symbol, Word};
use crate::engine::spaces::{ColoringSpace, HColoringSpace, ShortestPathSpace, TokenJumpSpace};
use crate::error::{Error, Result};
use crate::graph::{Digraph, Graph, RootedForest, Vertex};
use crate::hword::HStructure;
use crate::rewriting::{RewritingSystem, Rule};
use crate::turing::{HeadMove, TuringMachine};

fn content_lines(text: &str) -> impl Iterator<Item = (usize, Vec<&str>)> {
    text.lines().enumerate().filter_map(|(i, line)| {
        let stripped = match line.find('#') {
            Some(pos) => &line[..pos],
            None => line,
        };
        let tokens: Vec<&str> = stripped.split_whitespace().collect();
        if tokens.is_empty() {
            None
        } else {
            Some((i + 1, tokens))
        }
    })
}

fn expect_len(no: usize, tokens: &[&str], len: usize, what: &str) -> Result<()> {
    if tokens.len() != len {
        return Err(Error::parse(
            no,
            format!("{what} expects {} tokens, got {}", len - 1, tokens.len() - 1),
        ));
    }
    Ok(())
}

// ---------------------------------------------------------------- graphs

/// `v <name>` and `e <u> <v>` lines.
pub fn parse_graph(text: &str) -> Result<Graph<Vertex>> {
    let mut g = Graph::new();
    for (no, tokens) in content_lines(text) {
        match tokens[0] {
            "v" => {
                expect_len(no, &tokens, 2, "v")?;
                g.add_vertex(Vertex::new(tokens[1]));
            }
            "e" => {
                expect_len(no, &tokens, 3, "e")?;
                g.add_edge(Vertex::new(tokens[1]), Vertex::new(tokens[2]))
                    .map_err(|e| Error::parse(no, e.to_string()))?;
            }
            other => return Err(Error::parse(no, format!("unexpected keyword `{other}`"))),
        }
    }
    Ok(g)
}

pub fn render_graph(g: &Graph<Vertex>) -> String {
    let mut out = String::new();
    for v in g.vertices() {
        let _ = writeln!(out, "v {v}");
    }
    for (u, v) in g.edges() {
        let _ = writeln!(out, "e {u} {v}");
    }
    out
}

/// `v <name>` and `a <u> <v>` lines.
pub fn parse_digraph(text: &str) -> Result<Digraph<Vertex>> {
    let mut g = Digraph::new();
    for (no, tokens) in content_lines(text) {
        match tokens[0] {
            "v" => {
                expect_len(no, &tokens, 2, "v")?;
                g.add_vertex(Vertex::new(tokens[1]));
            }
            "a" => {
                expect_len(no, &tokens, 3, "a")?;
                g.add_arc(Vertex::new(tokens[1]), Vertex::new(tokens[2]))
                    .map_err(|e| Error::parse(no, e.to_string()))?;
            }
            other => return Err(Error::parse(no, format!("unexpected keyword `{other}`"))),
        }
    }
    Ok(g)
}

pub fn render_digraph(g: &Digraph<Vertex>) -> String {
    let mut out = String::new();
    for v in g.vertices() {
        let _ = writeln!(out, "v {v}");
    }
    for (u, v) in g.arcs() {
        let _ = writeln!(out, "a {u} {v}");
    }
    out
}

// ---------------------------------------------------------------- forests

/// `root <v>` and `child <v> <parent>` lines.
pub fn parse_forest(text: &str) -> Result<RootedForest<Vertex>> {
    let mut parent: BTreeMap<Vertex, Option<Vertex>> = BTreeMap::new();
    for (no, tokens) in content_lines(text) {
        match tokens[0] {
            "root" => {
                expect_len(no, &tokens, 2, "root")?;
                parent.insert(Vertex::new(tokens[1]), None);
            }
            "child" => {
                expect_len(no, &tokens, 3, "child")?;
                parent.insert(Vertex::new(tokens[1]), Some(Vertex::new(tokens[2])));
            }
            other => return Err(Error::parse(no, format!("unexpected keyword `{other}`"))),
        }
    }
    RootedForest::new(parent)
}

pub fn render_forest(f: &RootedForest<Vertex>) -> String {
    let mut out = String::new();
    for v in f.vertices() {
        match f.parent_of(v) {
            None => {
                let _ = writeln!(out, "root {v}");
            }
            Some(p) => {
                let _ = writeln!(out, "child {v} {p}");
            }
        }
    }
    out
}

// ------------------------------------------------------ rewriting systems

/// `alphabet: s1 s2 ..`, `rule: l1 l2 <-> r1 r2`, optional `config a:` /
/// `config b:` word lines for instances.
pub fn parse_srs(text: &str) -> Result<(RewritingSystem, Option<(Word, Word)>)> {
    let mut alphabet: Alphabet = BTreeSet::new();
    let mut rules: Vec<(Word, Word)> = Vec::new();
    let mut config_a = None;
    let mut config_b = None;
    for (no, tokens) in content_lines(text) {
        match tokens[0] {
            "alphabet:" => {
                alphabet.extend(tokens[1..].iter().map(Symbol::new));
            }
            "rule:" => {
                let rest = &tokens[1..];
                let sep = rest
                    .iter()
                    .position(|t| *t == "<->")
                    .ok_or_else(|| Error::parse(no, "rule line needs a `<->`"))?;
                let lhs = Word::from_names(rest[..sep].iter().copied());
                let rhs = Word::from_names(rest[sep + 1..].iter().copied());
                rules.push((lhs, rhs));
            }
            "config" if tokens.len() >= 2 && tokens[1] == "a:" => {
                config_a = Some(Word::from_names(tokens[2..].iter().copied()));
            }
            "config" if tokens.len() >= 2 && tokens[1] == "b:" => {
                config_b = Some(Word::from_names(tokens[2..].iter().copied()));
            }
            other => return Err(Error::parse(no, format!("unexpected keyword `{other}`"))),
        }
    }
    let sys = RewritingSystem::symmetric(alphabet, rules)?;
    let configs = match (config_a, config_b) {
        (Some(a), Some(b)) => Some((a, b)),
        (None, None) => None,
        _ => return Err(Error::validation("config a and config b must both be present")),
    };
    Ok((sys, configs))
}

pub fn render_srs(sys: &RewritingSystem, configs: Option<(&Word, &Word)>) -> String {
    let mut out = String::new();
    let alphabet: Vec<String> = sys.alphabet.iter().map(|s| s.to_string()).collect();
    let _ = writeln!(out, "alphabet: {}", alphabet.join(" "));
    for rule in &sys.rules {
        let _ = writeln!(out, "rule: {} <-> {}", rule.lhs, rule.rhs);
    }
    if let Some((a, b)) = configs {
        let _ = writeln!(out, "config a: {a}");
        let _ = writeln!(out, "config b: {b}");
    }
    out
}

// --------------------------------------------------------------- machines

/// `tape:`, `states:`, `init:`, `accept:`, `reject:` headers and
/// `delta q a -> p b S|L|R` lines.
pub fn parse_tm(text: &str) -> Result<TuringMachine> {
    let mut tape: Alphabet = BTreeSet::new();
    let mut states: Alphabet = BTreeSet::new();
    let mut initial = None;
    let mut accepting = None;
    let mut rejecting = None;
    let mut delta = BTreeMap::new();
    for (no, tokens) in content_lines(text) {
        match tokens[0] {
            "tape:" => tape.extend(tokens[1..].iter().map(Symbol::new)),
            "states:" => states.extend(tokens[1..].iter().map(Symbol::new)),
            "init:" => {
                expect_len(no, &tokens, 2, "init:")?;
                initial = Some(Symbol::new(tokens[1]));
            }
            "accept:" => {
                expect_len(no, &tokens, 2, "accept:")?;
                accepting = Some(Symbol::new(tokens[1]));
            }
            "reject:" => {
                expect_len(no, &tokens, 2, "reject:")?;
                rejecting = Some(Symbol::new(tokens[1]));
            }
            "delta" => {
                expect_len(no, &tokens, 7, "delta")?;
                if tokens[3] != "->" {
                    return Err(Error::parse(no, "delta line needs `->`"));
                }
                let mv = match tokens[6] {
                    "S" => HeadMove::Stay,
                    "L" => HeadMove::Left,
                    "R" => HeadMove::Right,
                    other => {
                        return Err(Error::parse(no, format!("unknown head move `{other}`")))
                    }
                };
                delta.insert(
                    (Symbol::new(tokens[1]), Symbol::new(tokens[2])),
                    (Symbol::new(tokens[4]), Symbol::new(tokens[5]), mv),
                );
            }
            other => return Err(Error::parse(no, format!("unexpected keyword `{other}`"))),
        }
    }
    let machine = TuringMachine {
        tape_alphabet: tape,
        states,
        initial: initial.ok_or_else(|| Error::validation("missing init: line"))?,
        accepting: accepting.ok_or_else(|| Error::validation("missing accept: line"))?,
        rejecting: rejecting.ok_or_else(|| Error::validation("missing reject: line"))?,
        delta,
    };
    machine.validate()?;
    Ok(machine)
}

pub fn render_tm(m: &TuringMachine) -> String {
    let mut out = String::new();
    let join = |set: &Alphabet| {
        set.iter()
            .map(|s| s.to_string())
            .collect::<Vec<_>>()
            .join(" ")
    };
    let _ = writeln!(out, "tape: {}", join(&m.tape_alphabet));
    let _ = writeln!(out, "states: {}", join(&m.states));
    let _ = writeln!(out, "init: {}", m.initial);
    let _ = writeln!(out, "accept: {}", m.accepting);
    let _ = writeln!(out, "reject: {}", m.rejecting);
    for ((q, a), (p, b, mv)) in &m.delta {
        let _ = writeln!(out, "delta {q} {a} -> {p} {b} {mv}");
    }
    out
}

// -------------------------------------------------------- walk structures

/// A walk structure file: the digraph in `v`/`a` lines plus
/// `class <sym> special|pair` and `pair <sym> <left> <right>` lines.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct HStructureFile {
    pub digraph: Digraph<Symbol>,
    pub special: BTreeSet<Symbol>,
    pub pairs: BTreeMap<Symbol, (Symbol, Symbol)>,
}

pub fn parse_hstructure(text: &str) -> Result<HStructureFile> {
    let mut digraph = Digraph::new();
    let mut special = BTreeSet::new();
    let mut pairs = BTreeMap::new();
    for (no, tokens) in content_lines(text) {
        match tokens[0] {
            "v" => {
                expect_len(no, &tokens, 2, "v")?;
                digraph.add_vertex(Symbol::new(tokens[1]));
            }
            "a" => {
                expect_len(no, &tokens, 3, "a")?;
                digraph
                    .add_arc(Symbol::new(tokens[1]), Symbol::new(tokens[2]))
                    .map_err(|e| Error::parse(no, e.to_string()))?;
            }
            "class" => {
                expect_len(no, &tokens, 3, "class")?;
                match tokens[2] {
                    "special" => {
                        special.insert(Symbol::new(tokens[1]));
                    }
                    "pair" => {}
                    other => {
                        return Err(Error::parse(no, format!("unknown class `{other}`")))
                    }
                }
            }
            "pair" => {
                expect_len(no, &tokens, 4, "pair")?;
                pairs.insert(
                    Symbol::new(tokens[1]),
                    (Symbol::new(tokens[2]), Symbol::new(tokens[3])),
                );
            }
            other => return Err(Error::parse(no, format!("unexpected keyword `{other}`"))),
        }
    }
    Ok(HStructureFile {
        digraph,
        special,
        pairs,
    })
}

pub fn render_hstructure(h: &HStructure) -> String {
    let mut out = String::new();
    for v in h.digraph().vertices() {
        let _ = writeln!(out, "v {v}");
    }
    for (u, v) in h.digraph().arcs() {
        let _ = writeln!(out, "a {u} {v}");
    }
    for v in h.digraph().vertices() {
        let class = if h.is_special(v) { "special" } else { "pair" };
        let _ = writeln!(out, "class {v} {class}");
    }
    for (sym, (l, r)) in h.pair_symbols() {
        let _ = writeln!(out, "pair {sym} {l} {r}");
    }
    out
}

// -------------------------------------------------------------- instances

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ShortestPathFile {
    pub graph: Graph<Vertex>,
    pub path_a: Vec<Vertex>,
    pub path_b: Vec<Vertex>,
    pub layers: Vec<Vec<Vertex>>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MaxIsFile {
    pub graph: Graph<Vertex>,
    pub set_a: BTreeSet<Vertex>,
    pub set_b: BTreeSet<Vertex>,
    pub layers: Vec<Vec<Vertex>>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ListColoringFile {
    pub graph: Graph<Vertex>,
    pub lists: BTreeMap<Vertex, BTreeSet<Symbol>>,
    pub coloring_a: BTreeMap<Vertex, Symbol>,
    pub coloring_b: BTreeMap<Vertex, Symbol>,
    pub layers: Vec<Vec<Vertex>>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct KColoringFile {
    pub graph: Graph<Vertex>,
    pub k: usize,
    pub coloring_a: BTreeMap<Vertex, Symbol>,
    pub coloring_b: BTreeMap<Vertex, Symbol>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct HColoringFile {
    pub graph: Digraph<Vertex>,
    pub graph_undirected: bool,
    pub pattern: Digraph<Symbol>,
    pub pattern_undirected: bool,
    pub special: BTreeSet<Symbol>,
    pub pairs: BTreeMap<Symbol, (Symbol, Symbol)>,
    pub coloring_a: BTreeMap<Vertex, Symbol>,
    pub coloring_b: BTreeMap<Vertex, Symbol>,
    pub forest: Option<RootedForest<Vertex>>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Instance {
    ShortestPath(ShortestPathFile),
    MaxIs(MaxIsFile),
    ListColoring(ListColoringFile),
    KColoring(KColoringFile),
    HColoring(HColoringFile),
}

impl Instance {
    pub fn problem_name(&self) -> &'static str {
        match self {
            Instance::ShortestPath(_) => "shortest-path",
            Instance::MaxIs(_) => "max-is",
            Instance::ListColoring(_) => "list-coloring",
            Instance::KColoring(_) => "k-coloring",
            Instance::HColoring(_) => "h-coloring",
        }
    }
}

fn parse_assignments(no: usize, tokens: &[&str]) -> Result<BTreeMap<Vertex, Symbol>> {
    let mut out = BTreeMap::new();
    for token in tokens {
        let (v, c) = token
            .split_once('=')
            .ok_or_else(|| Error::parse(no, format!("expected vertex=color, got `{token}`")))?;
        out.insert(Vertex::new(v), Symbol::new(c));
    }
    Ok(out)
}

pub fn render_assignments(coloring: &BTreeMap<Vertex, Symbol>) -> String {
    coloring
        .iter()
        .map(|(v, c)| format!("{v}={c}"))
        .collect::<Vec<_>>()
        .join(" ")
}

pub fn parse_instance(text: &str) -> Result<Instance> {
    let mut problem: Option<String> = None;
    let mut k: Option<usize> = None;
    let mut vertices: Vec<Vertex> = Vec::new();
    let mut edges: Vec<(Vertex, Vertex, bool)> = Vec::new(); // (u, v, directed)
    let mut pattern_vertices: Vec<Symbol> = Vec::new();
    let mut pattern_arcs: Vec<(Symbol, Symbol, bool)> = Vec::new();
    let mut special = BTreeSet::new();
    let mut pairs = BTreeMap::new();
    let mut lists: BTreeMap<Vertex, BTreeSet<Symbol>> = BTreeMap::new();
    let mut layers: Vec<Vec<Vertex>> = Vec::new();
    let mut config_a: Option<(usize, Vec<String>)> = None;
    let mut config_b: Option<(usize, Vec<String>)> = None;
    let mut forest_parent: BTreeMap<Vertex, Option<Vertex>> = BTreeMap::new();

    for (no, tokens) in content_lines(text) {
        match tokens[0] {
            "problem:" => {
                expect_len(no, &tokens, 2, "problem:")?;
                problem = Some(tokens[1].to_string());
            }
            "colors:" => {
                expect_len(no, &tokens, 2, "colors:")?;
                k = Some(
                    tokens[1]
                        .parse()
                        .map_err(|_| Error::parse(no, "colors: expects a number"))?,
                );
            }
            "v" => {
                expect_len(no, &tokens, 2, "v")?;
                vertices.push(Vertex::new(tokens[1]));
            }
            "e" => {
                expect_len(no, &tokens, 3, "e")?;
                edges.push((Vertex::new(tokens[1]), Vertex::new(tokens[2]), false));
            }
            "a" => {
                expect_len(no, &tokens, 3, "a")?;
                edges.push((Vertex::new(tokens[1]), Vertex::new(tokens[2]), true));
            }
            "hv" => {
                expect_len(no, &tokens, 2, "hv")?;
                pattern_vertices.push(Symbol::new(tokens[1]));
            }
            "ha" => {
                expect_len(no, &tokens, 3, "ha")?;
                pattern_arcs.push((Symbol::new(tokens[1]), Symbol::new(tokens[2]), true));
            }
            "he" => {
                expect_len(no, &tokens, 3, "he")?;
                pattern_arcs.push((Symbol::new(tokens[1]), Symbol::new(tokens[2]), false));
            }
            "class" => {
                expect_len(no, &tokens, 3, "class")?;
                if tokens[2] == "special" {
                    special.insert(Symbol::new(tokens[1]));
                }
            }
            "pair" => {
                expect_len(no, &tokens, 4, "pair")?;
                pairs.insert(
                    Symbol::new(tokens[1]),
                    (Symbol::new(tokens[2]), Symbol::new(tokens[3])),
                );
            }
            "list" => {
                if tokens.len() < 2 {
                    return Err(Error::parse(no, "list needs a vertex"));
                }
                lists.insert(
                    Vertex::new(tokens[1]),
                    tokens[2..].iter().map(Symbol::new).collect(),
                );
            }
            "layer" => {
                layers.push(tokens[1..].iter().map(Vertex::new).collect());
            }
            "config" if tokens.len() >= 2 && (tokens[1] == "a:" || tokens[1] == "b:") => {
                let payload = (no, tokens[2..].iter().map(|t| t.to_string()).collect());
                if tokens[1] == "a:" {
                    config_a = Some(payload);
                } else {
                    config_b = Some(payload);
                }
            }
            "root" => {
                expect_len(no, &tokens, 2, "root")?;
                forest_parent.insert(Vertex::new(tokens[1]), None);
            }
            "child" => {
                expect_len(no, &tokens, 3, "child")?;
                forest_parent.insert(Vertex::new(tokens[1]), Some(Vertex::new(tokens[2])));
            }
            other => return Err(Error::parse(no, format!("unexpected keyword `{other}`"))),
        }
    }

    let problem = problem.ok_or_else(|| Error::validation("missing problem: header"))?;
    let (a_no, a_tokens) = config_a.ok_or_else(|| Error::validation("missing config a:"))?;
    let (b_no, b_tokens) = config_b.ok_or_else(|| Error::validation("missing config b:"))?;
    let borrow = |v: &[String]| -> Vec<&str> { v.iter().map(|s| s.as_str()).collect() };

    let build_graph = |directed_wanted: bool| -> Result<Graph<Vertex>> {
        let mut g = Graph::new();
        for v in &vertices {
            g.add_vertex(v.clone());
        }
        for (u, v, directed) in &edges {
            if *directed != directed_wanted && *directed {
                return Err(Error::validation(
                    "arcs are only allowed in h-coloring instances",
                ));
            }
            g.add_edge(u.clone(), v.clone())?;
        }
        Ok(g)
    };

    match problem.as_str() {
        "shortest-path" => Ok(Instance::ShortestPath(ShortestPathFile {
            graph: build_graph(false)?,
            path_a: a_tokens.iter().map(|t| Vertex::new(t)).collect(),
            path_b: b_tokens.iter().map(|t| Vertex::new(t)).collect(),
            layers,
        })),
        "max-is" => Ok(Instance::MaxIs(MaxIsFile {
            graph: build_graph(false)?,
            set_a: a_tokens.iter().map(|t| Vertex::new(t)).collect(),
            set_b: b_tokens.iter().map(|t| Vertex::new(t)).collect(),
            layers,
        })),
        "list-coloring" => Ok(Instance::ListColoring(ListColoringFile {
            graph: build_graph(false)?,
            lists,
            coloring_a: parse_assignments(a_no, &borrow(&a_tokens))?,
            coloring_b: parse_assignments(b_no, &borrow(&b_tokens))?,
            layers,
        })),
        "k-coloring" => Ok(Instance::KColoring(KColoringFile {
            graph: build_graph(false)?,
            k: k.ok_or_else(|| Error::validation("k-coloring needs a colors: line"))?,
            coloring_a: parse_assignments(a_no, &borrow(&a_tokens))?,
            coloring_b: parse_assignments(b_no, &borrow(&b_tokens))?,
        })),
        "h-coloring" => {
            let graph_undirected = edges.iter().all(|(_, _, d)| !d);
            let mut graph = Digraph::new();
            for v in &vertices {
                graph.add_vertex(v.clone());
            }
            for (u, v, directed) in &edges {
                graph.add_arc(u.clone(), v.clone())?;
                if !directed {
                    graph.add_arc(v.clone(), u.clone())?;
                }
            }
            let pattern_undirected = pattern_arcs.iter().all(|(_, _, d)| !d);
            let mut pattern = Digraph::new();
            for v in &pattern_vertices {
                pattern.add_vertex(v.clone());
            }
            for (u, v, directed) in &pattern_arcs {
                pattern.add_arc(u.clone(), v.clone())?;
                if !directed {
                    pattern.add_arc(v.clone(), u.clone())?;
                }
            }
            let forest = if forest_parent.is_empty() {
                None
            } else {
                Some(RootedForest::new(forest_parent)?)
            };
            Ok(Instance::HColoring(HColoringFile {
                graph,
                graph_undirected,
                pattern,
                pattern_undirected,
                special,
                pairs,
                coloring_a: parse_assignments(a_no, &borrow(&a_tokens))?,
                coloring_b: parse_assignments(b_no, &borrow(&b_tokens))?,
                forest,
            }))
        }
        other => Err(Error::validation(format!("unknown problem kind `{other}`"))),
    }
}

pub fn render_instance(inst: &Instance) -> String {
    let mut out = String::new();
    let _ = writeln!(out, "problem: {}", inst.problem_name());
    match inst {
        Instance::ShortestPath(f) => {
            out.push_str(&render_graph(&f.graph));
            for layer in &f.layers {
                let names: Vec<String> = layer.iter().map(|v| v.to_string()).collect();
                let _ = writeln!(out, "layer {}", names.join(" "));
            }
            let join = |p: &[Vertex]| {
                p.iter().map(|v| v.to_string()).collect::<Vec<_>>().join(" ")
            };
            let _ = writeln!(out, "config a: {}", join(&f.path_a));
            let _ = writeln!(out, "config b: {}", join(&f.path_b));
        }
        Instance::MaxIs(f) => {
            out.push_str(&render_graph(&f.graph));
            for layer in &f.layers {
                let names: Vec<String> = layer.iter().map(|v| v.to_string()).collect();
                let _ = writeln!(out, "layer {}", names.join(" "));
            }
            let join = |p: &BTreeSet<Vertex>| {
                p.iter().map(|v| v.to_string()).collect::<Vec<_>>().join(" ")
            };
            let _ = writeln!(out, "config a: {}", join(&f.set_a));
            let _ = writeln!(out, "config b: {}", join(&f.set_b));
        }
        Instance::ListColoring(f) => {
            out.push_str(&render_graph(&f.graph));
            for (v, list) in &f.lists {
                let names: Vec<String> = list.iter().map(|c| c.to_string()).collect();
                let _ = writeln!(out, "list {v} {}", names.join(" "));
            }
            for layer in &f.layers {
                let names: Vec<String> = layer.iter().map(|v| v.to_string()).collect();
                let _ = writeln!(out, "layer {}", names.join(" "));
            }
            let _ = writeln!(out, "config a: {}", render_assignments(&f.coloring_a));
            let _ = writeln!(out, "config b: {}", render_assignments(&f.coloring_b));
        }
        Instance::KColoring(f) => {
            let _ = writeln!(out, "colors: {}", f.k);
            out.push_str(&render_graph(&f.graph));
            let _ = writeln!(out, "config a: {}", render_assignments(&f.coloring_a));
            let _ = writeln!(out, "config b: {}", render_assignments(&f.coloring_b));
        }
        Instance::HColoring(f) => {
            for v in f.graph.vertices() {
                let _ = writeln!(out, "v {v}");
            }
            if f.graph_undirected {
                let mut seen = BTreeSet::new();
                for (u, v) in f.graph.arcs() {
                    let key = if u <= v {
                        (u.clone(), v.clone())
                    } else {
                        (v.clone(), u.clone())
                    };
                    if seen.insert(key.clone()) {
                        let _ = writeln!(out, "e {} {}", key.0, key.1);
                    }
                }
            } else {
                for (u, v) in f.graph.arcs() {
                    let _ = writeln!(out, "a {u} {v}");
                }
            }
            for v in f.pattern.vertices() {
                let _ = writeln!(out, "hv {v}");
            }
            if f.pattern_undirected {
                let mut seen = BTreeSet::new();
                for (u, v) in f.pattern.arcs() {
                    let key = if u <= v {
                        (u.clone(), v.clone())
                    } else {
                        (v.clone(), u.clone())
                    };
                    if seen.insert(key.clone()) {
                        let _ = writeln!(out, "he {} {}", key.0, key.1);
                    }
                }
            } else {
                for (u, v) in f.pattern.arcs() {
                    let _ = writeln!(out, "ha {u} {v}");
                }
            }
            for sym in &f.special {
                let _ = writeln!(out, "class {sym} special");
            }
            for sym in f.pairs.keys() {
                let _ = writeln!(out, "class {sym} pair");
            }
            for (sym, (l, r)) in &f.pairs {
                let _ = writeln!(out, "pair {sym} {l} {r}");
            }
            if let Some(forest) = &f.forest {
                out.push_str(&render_forest(forest));
            }
            let _ = writeln!(out, "config a: {}", render_assignments(&f.coloring_a));
            let _ = writeln!(out, "config b: {}", render_assignments(&f.coloring_b));
        }
    }
    out
}

impl ShortestPathFile {
    pub fn space(&self) -> Result<ShortestPathSpace> {
        if self.path_a.is_empty() || self.path_b.is_empty() {
            return Err(Error::validation("paths must be non-empty"));
        }
        if self.path_a.first() != self.path_b.first()
            || self.path_a.last() != self.path_b.last()
        {
            return Err(Error::validation("paths must share source and sink"));
        }
        ShortestPathSpace::new(
            self.graph.clone(),
            self.path_a[0].clone(),
            self.path_a[self.path_a.len() - 1].clone(),
            self.path_a.clone(),
            self.path_b.clone(),
        )
    }
}

impl MaxIsFile {
    pub fn space(&self) -> Result<TokenJumpSpace> {
        if self.set_a.len() != self.set_b.len() {
            return Err(Error::validation("both sets must have the same size"));
        }
        TokenJumpSpace::new(self.graph.clone(), self.set_a.len(), &self.set_a, &self.set_b)
    }
}

impl ListColoringFile {
    pub fn space(&self) -> Result<ColoringSpace> {
        ColoringSpace::new(
            self.graph.clone(),
            &self.lists,
            &self.coloring_a,
            &self.coloring_b,
        )
    }
}

impl KColoringFile {
    pub fn space(&self) -> Result<ColoringSpace> {
        let full: BTreeSet<Symbol> = (1..=self.k)
            .map(|i| Symbol::new(format!("{i}")))
            .collect();
        let lists: BTreeMap<Vertex, BTreeSet<Symbol>> = self
            .graph
            .vertices()
            .map(|v| (v.clone(), full.clone()))
            .collect();
        ColoringSpace::new(self.graph.clone(), &lists, &self.coloring_a, &self.coloring_b)
    }
}

impl HColoringFile {
    pub fn space(&self) -> Result<HColoringSpace<Vertex>> {
        HColoringSpace::new(
            self.graph.clone(),
            self.pattern.clone(),
            &self.coloring_a,
            &self.coloring_b,
        )
    }
}

// -------------------------------------------------- sequences and reports

/// One configuration per line in the instance's own syntax.
pub fn render_vertex_sequence(steps: &[Vec<Vertex>]) -> String {
    let mut out = String::new();
    for step in steps {
        let names: Vec<String> = step.iter().map(|v| v.to_string()).collect();
        let _ = writeln!(out, "{}", names.join(" "));
    }
    out
}

pub fn parse_vertex_sequence(text: &str) -> Vec<Vec<Vertex>> {
    content_lines(text)
        .map(|(_, tokens)| tokens.iter().map(Vertex::new).collect())
        .collect()
}

pub fn render_assignment_sequence(steps: &[BTreeMap<Vertex, Symbol>]) -> String {
    let mut out = String::new();
    for step in steps {
        let _ = writeln!(out, "{}", render_assignments(step));
    }
    out
}

pub fn parse_assignment_sequence(text: &str) -> Result<Vec<BTreeMap<Vertex, Symbol>>> {
    content_lines(text)
        .map(|(no, tokens)| parse_assignments(no, &tokens))
        .collect()
}

/// `key=value` lines for stats and manifests.
pub fn render_kv(pairs: &[(String, String)]) -> String {
    let mut out = String::new();
    for (k, v) in pairs {
        let _ = writeln!(out, "{k}={v}");
    }
    out
}

pub fn rule_to_string(rule: &Rule) -> String {
    format!("{rule}")
}
