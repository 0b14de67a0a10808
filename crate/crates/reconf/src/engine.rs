//! Generic reconfiguration search: BFS over abstract configuration spaces
//! plus a universal sequence validator.
//!
//! Every reachability question in the crate runs through [`bfs_reach`],
//! which doubles as the brute-force oracle in the equivalence checks. A
//! negative answer is only ever reported after the configuration space has
//! been exhausted; hitting a limit is a distinct error.

use std::collections::{HashMap, VecDeque};
use std::fmt;
use std::hash::Hash;

use crate::error::{Error, Result};

/// An abstract move graph with two distinguished configurations.
///
/// `neighbors` must be deterministic, symmetric as a relation, and return
/// only valid configurations. Configurations are stored canonically so that
/// structural equality is the canonical key.
pub trait Space {
    type Config: Clone + Eq + Hash + Ord + fmt::Debug;

    fn initial(&self) -> &Self::Config;
    fn target(&self) -> &Self::Config;
    fn is_valid(&self, config: &Self::Config) -> bool;
    fn neighbors(&self, config: &Self::Config) -> Vec<Self::Config>;
    fn move_name(&self) -> &'static str;
}

/// A step-by-step solution path. `steps.len() == 1` means zero moves.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ReconfigurationSequence<C> {
    pub steps: Vec<C>,
}

impl<C> ReconfigurationSequence<C> {
    pub fn new(steps: Vec<C>) -> Self {
        ReconfigurationSequence { steps }
    }

    pub fn moves(&self) -> usize {
        self.steps.len().saturating_sub(1)
    }

    pub fn first(&self) -> &C {
        &self.steps[0]
    }

    pub fn last(&self) -> &C {
        self.steps.last().expect("sequence is never empty")
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct SearchLimits {
    pub max_states: usize,
    pub max_depth: Option<usize>,
}

impl Default for SearchLimits {
    fn default() -> Self {
        SearchLimits {
            max_states: 1_000_000,
            max_depth: None,
        }
    }
}

impl SearchLimits {
    pub fn with_max_states(max_states: usize) -> Self {
        SearchLimits {
            max_states,
            ..Default::default()
        }
    }
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub struct SearchStats {
    pub states_explored: usize,
    pub frontier_peak: usize,
    pub moves: usize,
}

/// Shortest move sequence from initial to target, breadth-first.
///
/// `Ok((None, _))` is a definitive negative: the whole component of the
/// initial configuration was enumerated. Exceeding `limits` instead
/// returns [`Error::ResourceLimit`].
pub fn bfs_reach<S: Space>(
    space: &S,
    limits: &SearchLimits,
) -> Result<(Option<ReconfigurationSequence<S::Config>>, SearchStats)> {
    if !space.is_valid(space.initial()) {
        return Err(Error::validation(format!(
            "initial configuration is not valid in the {} space",
            space.move_name()
        )));
    }
    if !space.is_valid(space.target()) {
        return Err(Error::validation(format!(
            "target configuration is not valid in the {} space",
            space.move_name()
        )));
    }

    let mut stats = SearchStats::default();
    if space.initial() == space.target() {
        stats.states_explored = 1;
        stats.frontier_peak = 1;
        return Ok((
            Some(ReconfigurationSequence::new(vec![space.initial().clone()])),
            stats,
        ));
    }

    // nodes[i] = (config, parent index, depth)
    let mut nodes: Vec<(S::Config, usize, usize)> = vec![(space.initial().clone(), 0, 0)];
    let mut index: HashMap<S::Config, usize> = HashMap::new();
    index.insert(space.initial().clone(), 0);
    let mut queue: VecDeque<usize> = VecDeque::from([0]);
    let mut depth_cut = false;

    while let Some(cur) = queue.pop_front() {
        stats.frontier_peak = stats.frontier_peak.max(queue.len() + 1);
        stats.states_explored += 1;
        let depth = nodes[cur].2;
        if let Some(max_depth) = limits.max_depth {
            if depth >= max_depth {
                depth_cut = true;
                continue;
            }
        }
        let config = nodes[cur].0.clone();
        for next in space.neighbors(&config) {
            if index.contains_key(&next) {
                continue;
            }
            let id = nodes.len();
            if id >= limits.max_states {
                return Err(Error::resource(format!(
                    "search exceeded {} states in the {} space",
                    limits.max_states,
                    space.move_name()
                )));
            }
            index.insert(next.clone(), id);
            nodes.push((next.clone(), cur, depth + 1));
            if next == *space.target() {
                let mut steps = Vec::with_capacity(depth + 2);
                let mut at = id;
                loop {
                    steps.push(nodes[at].0.clone());
                    if at == 0 {
                        break;
                    }
                    at = nodes[at].1;
                }
                steps.reverse();
                stats.moves = steps.len() - 1;
                return Ok((Some(ReconfigurationSequence::new(steps)), stats));
            }
            queue.push_back(id);
        }
    }

    if depth_cut {
        return Err(Error::resource(format!(
            "search truncated at depth {} in the {} space",
            limits.max_depth.unwrap(),
            space.move_name()
        )));
    }
    Ok((None, stats))
}

/// Enumerates the whole component of the initial configuration.
/// Used by the equivalence checks to compare reachable sets.
pub fn reachable_component<S: Space>(
    space: &S,
    limits: &SearchLimits,
) -> Result<Vec<S::Config>> {
    if !space.is_valid(space.initial()) {
        return Err(Error::validation(format!(
            "initial configuration is not valid in the {} space",
            space.move_name()
        )));
    }
    let mut order = vec![space.initial().clone()];
    let mut seen: HashMap<S::Config, ()> = HashMap::new();
    seen.insert(space.initial().clone(), ());
    let mut head = 0;
    while head < order.len() {
        let current = order[head].clone();
        head += 1;
        for next in space.neighbors(&current) {
            if seen.contains_key(&next) {
                continue;
            }
            if order.len() >= limits.max_states {
                return Err(Error::resource(format!(
                    "component enumeration exceeded {} states",
                    limits.max_states
                )));
            }
            seen.insert(next.clone(), ());
            order.push(next);
        }
    }
    Ok(order)
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SequenceViolation {
    pub step: usize,
    pub reason: String,
}

impl fmt::Display for SequenceViolation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "step {}: {}", self.step, self.reason)
    }
}

/// Checks that every configuration is valid and every consecutive pair is
/// one move apart, reporting the first violation.
pub fn verify_sequence_detailed<S: Space>(
    space: &S,
    seq: &ReconfigurationSequence<S::Config>,
) -> std::result::Result<(), SequenceViolation> {
    if seq.steps.is_empty() {
        return Err(SequenceViolation {
            step: 0,
            reason: "sequence is empty".into(),
        });
    }
    for (i, config) in seq.steps.iter().enumerate() {
        if !space.is_valid(config) {
            return Err(SequenceViolation {
                step: i,
                reason: format!("configuration {config:?} is not valid"),
            });
        }
    }
    for (i, pair) in seq.steps.windows(2).enumerate() {
        if !space.neighbors(&pair[0]).contains(&pair[1]) {
            return Err(SequenceViolation {
                step: i + 1,
                reason: format!(
                    "{:?} -> {:?} is not a single {} move",
                    pair[0],
                    pair[1],
                    space.move_name()
                ),
            });
        }
    }
    Ok(())
}

pub fn verify_sequence<S: Space>(space: &S, seq: &ReconfigurationSequence<S::Config>) -> bool {
    verify_sequence_detailed(space, seq).is_ok()
}

pub mod spaces {
    //! Per-problem adapters. Each constructor validates the two seed
    //! configurations and yields deterministic neighbor enumeration.

    use std::collections::{BTreeMap, BTreeSet};

    use super::Space;
    use crate::alphabet::Symbol;
    use crate::error::{Error, Result};
    use crate::graph::{Digraph, Graph, NodeId, Vertex};

    /// Proper list-colorings of a graph; a move recolors one vertex.
    /// Plain k-coloring is the special case where every list is full.
    pub struct ColoringSpace {
        graph: Graph<Vertex>,
        vertices: Vec<Vertex>,
        lists: Vec<Vec<Symbol>>,
        initial: Vec<Symbol>,
        target: Vec<Symbol>,
    }

    impl ColoringSpace {
        pub fn new(
            graph: Graph<Vertex>,
            lists: &BTreeMap<Vertex, BTreeSet<Symbol>>,
            initial: &BTreeMap<Vertex, Symbol>,
            target: &BTreeMap<Vertex, Symbol>,
        ) -> Result<Self> {
            let vertices: Vec<Vertex> = graph.vertices().cloned().collect();
            let mut list_vec = Vec::with_capacity(vertices.len());
            for v in &vertices {
                let list = lists
                    .get(v)
                    .ok_or_else(|| Error::validation(format!("vertex {v} has no color list")))?;
                list_vec.push(list.iter().cloned().collect::<Vec<_>>());
            }
            let space = ColoringSpace {
                graph,
                vertices,
                lists: list_vec,
                initial: Vec::new(),
                target: Vec::new(),
            };
            let initial = space.pack(initial)?;
            let target = space.pack(target)?;
            let mut space = space;
            if !space.proper(&initial) {
                return Err(Error::validation("initial coloring is not proper or breaks a list"));
            }
            if !space.proper(&target) {
                return Err(Error::validation("target coloring is not proper or breaks a list"));
            }
            space.initial = initial;
            space.target = target;
            Ok(space)
        }

        pub fn pack(&self, coloring: &BTreeMap<Vertex, Symbol>) -> Result<Vec<Symbol>> {
            self.vertices
                .iter()
                .map(|v| {
                    coloring
                        .get(v)
                        .cloned()
                        .ok_or_else(|| Error::validation(format!("vertex {v} is uncolored")))
                })
                .collect()
        }

        pub fn unpack(&self, config: &[Symbol]) -> BTreeMap<Vertex, Symbol> {
            self.vertices
                .iter()
                .cloned()
                .zip(config.iter().cloned())
                .collect()
        }

        pub fn vertex_order(&self) -> &[Vertex] {
            &self.vertices
        }

        fn proper(&self, config: &[Symbol]) -> bool {
            if config.len() != self.vertices.len() {
                return false;
            }
            for (i, color) in config.iter().enumerate() {
                if !self.lists[i].contains(color) {
                    return false;
                }
            }
            let pos: BTreeMap<&Vertex, usize> =
                self.vertices.iter().enumerate().map(|(i, v)| (v, i)).collect();
            for (u, v) in self.graph.edges() {
                if config[pos[u]] == config[pos[v]] {
                    return false;
                }
            }
            true
        }
    }

    impl Space for ColoringSpace {
        type Config = Vec<Symbol>;

        fn initial(&self) -> &Vec<Symbol> {
            &self.initial
        }

        fn target(&self) -> &Vec<Symbol> {
            &self.target
        }

        fn is_valid(&self, config: &Vec<Symbol>) -> bool {
            self.proper(config)
        }

        fn neighbors(&self, config: &Vec<Symbol>) -> Vec<Vec<Symbol>> {
            let mut out = Vec::new();
            for (i, v) in self.vertices.iter().enumerate() {
                let forbidden: BTreeSet<&Symbol> = self
                    .graph
                    .neighbors(v)
                    .iter()
                    .map(|w| {
                        let j = self.vertices.binary_search(w).unwrap();
                        &config[j]
                    })
                    .collect();
                for color in &self.lists[i] {
                    if *color != config[i] && !forbidden.contains(color) {
                        let mut next = config.clone();
                        next[i] = color.clone();
                        out.push(next);
                    }
                }
            }
            out
        }

        fn move_name(&self) -> &'static str {
            "recolor"
        }
    }

    /// Independent sets of a fixed size; a move removes one vertex and adds
    /// another (token jump).
    pub struct TokenJumpSpace {
        graph: Graph<Vertex>,
        size: usize,
        initial: Vec<Vertex>,
        target: Vec<Vertex>,
    }

    impl TokenJumpSpace {
        pub fn new(
            graph: Graph<Vertex>,
            size: usize,
            initial: &BTreeSet<Vertex>,
            target: &BTreeSet<Vertex>,
        ) -> Result<Self> {
            let space = TokenJumpSpace {
                graph,
                size,
                initial: initial.iter().cloned().collect(),
                target: target.iter().cloned().collect(),
            };
            if !space.independent(&space.initial) {
                return Err(Error::validation(
                    "initial set is not independent of the required size",
                ));
            }
            if !space.independent(&space.target) {
                return Err(Error::validation(
                    "target set is not independent of the required size",
                ));
            }
            Ok(space)
        }

        fn independent(&self, set: &[Vertex]) -> bool {
            set.len() == self.size
                && set.windows(2).all(|w| w[0] < w[1])
                && set.iter().all(|v| self.graph.contains_vertex(v))
                && set
                    .iter()
                    .enumerate()
                    .all(|(i, u)| set[i + 1..].iter().all(|v| !self.graph.has_edge(u, v)))
        }
    }

    impl Space for TokenJumpSpace {
        type Config = Vec<Vertex>;

        fn initial(&self) -> &Vec<Vertex> {
            &self.initial
        }

        fn target(&self) -> &Vec<Vertex> {
            &self.target
        }

        fn is_valid(&self, config: &Vec<Vertex>) -> bool {
            self.independent(config)
        }

        fn neighbors(&self, config: &Vec<Vertex>) -> Vec<Vec<Vertex>> {
            let current: BTreeSet<&Vertex> = config.iter().collect();
            let mut out = Vec::new();
            for leave in config {
                for enter in self.graph.vertices() {
                    if current.contains(enter) {
                        continue;
                    }
                    let mut next: Vec<Vertex> = config
                        .iter()
                        .filter(|v| *v != leave)
                        .cloned()
                        .chain([enter.clone()])
                        .collect();
                    next.sort();
                    if self.independent(&next) {
                        out.push(next);
                    }
                }
            }
            out.sort();
            out.dedup();
            out
        }

        fn move_name(&self) -> &'static str {
            "token jump"
        }
    }

    /// Shortest source-sink paths; a move replaces one interior vertex.
    pub struct ShortestPathSpace {
        graph: Graph<Vertex>,
        source: Vertex,
        sink: Vertex,
        dist_source: BTreeMap<Vertex, usize>,
        dist_sink: BTreeMap<Vertex, usize>,
        length: usize,
        initial: Vec<Vertex>,
        target: Vec<Vertex>,
    }

    impl ShortestPathSpace {
        pub fn new(
            graph: Graph<Vertex>,
            source: Vertex,
            sink: Vertex,
            initial: Vec<Vertex>,
            target: Vec<Vertex>,
        ) -> Result<Self> {
            let dist_source = graph.distances(&source);
            let dist_sink = graph.distances(&sink);
            let length = *dist_source
                .get(&sink)
                .ok_or_else(|| Error::validation("sink is unreachable from source"))?;
            let space = ShortestPathSpace {
                graph,
                source,
                sink,
                dist_source,
                dist_sink,
                length,
                initial,
                target,
            };
            if !space.shortest_path(&space.initial) {
                return Err(Error::validation("initial path is not a shortest source-sink path"));
            }
            if !space.shortest_path(&space.target) {
                return Err(Error::validation("target path is not a shortest source-sink path"));
            }
            Ok(space)
        }

        fn shortest_path(&self, path: &[Vertex]) -> bool {
            if path.len() != self.length + 1 {
                return false;
            }
            if path[0] != self.source || path[path.len() - 1] != self.sink {
                return false;
            }
            for pair in path.windows(2) {
                if !self.graph.has_edge(&pair[0], &pair[1]) {
                    return false;
                }
            }
            // every vertex on its distance layer makes the path shortest and
            // automatically repetition-free
            path.iter().enumerate().all(|(i, v)| {
                self.dist_source.get(v) == Some(&i)
                    && self.dist_sink.get(v) == Some(&(self.length - i))
            })
        }
    }

    impl Space for ShortestPathSpace {
        type Config = Vec<Vertex>;

        fn initial(&self) -> &Vec<Vertex> {
            &self.initial
        }

        fn target(&self) -> &Vec<Vertex> {
            &self.target
        }

        fn is_valid(&self, config: &Vec<Vertex>) -> bool {
            self.shortest_path(config)
        }

        fn neighbors(&self, config: &Vec<Vertex>) -> Vec<Vec<Vertex>> {
            let mut out = Vec::new();
            for i in 1..config.len().saturating_sub(1) {
                for w in self.graph.neighbors(&config[i - 1]) {
                    if w != config[i]
                        && self.graph.has_edge(&w, &config[i + 1])
                        && self.dist_source.get(&w) == Some(&i)
                        && self.dist_sink.get(&w) == Some(&(self.length - i))
                    {
                        let mut next = config.clone();
                        next[i] = w;
                        out.push(next);
                    }
                }
            }
            out.sort();
            out.dedup();
            out
        }

        fn move_name(&self) -> &'static str {
            "path vertex swap"
        }
    }

    /// Homomorphisms from a digraph into a pattern digraph; a move changes
    /// the image of one vertex. Undirected problems pass symmetric digraphs.
    pub struct HColoringSpace<N: NodeId = Vertex> {
        graph: Digraph<N>,
        pattern: Digraph<Symbol>,
        vertices: Vec<N>,
        colors: Vec<Symbol>,
        initial: Vec<Symbol>,
        target: Vec<Symbol>,
    }

    impl<N: NodeId> HColoringSpace<N> {
        pub fn new(
            graph: Digraph<N>,
            pattern: Digraph<Symbol>,
            initial: &BTreeMap<N, Symbol>,
            target: &BTreeMap<N, Symbol>,
        ) -> Result<Self> {
            let vertices: Vec<N> = graph.vertices().cloned().collect();
            let colors: Vec<Symbol> = pattern.vertices().cloned().collect();
            let pack = |coloring: &BTreeMap<N, Symbol>| -> Result<Vec<Symbol>> {
                vertices
                    .iter()
                    .map(|v| {
                        coloring
                            .get(v)
                            .cloned()
                            .ok_or_else(|| Error::validation(format!("vertex {v} is uncolored")))
                    })
                    .collect()
            };
            let initial = pack(initial)?;
            let target = pack(target)?;
            let space = HColoringSpace {
                graph,
                pattern,
                vertices,
                colors,
                initial,
                target,
            };
            if !space.homomorphism(&space.initial) {
                return Err(Error::validation("initial coloring is not a homomorphism"));
            }
            if !space.homomorphism(&space.target) {
                return Err(Error::validation("target coloring is not a homomorphism"));
            }
            Ok(space)
        }

        pub fn vertex_order(&self) -> &[N] {
            &self.vertices
        }

        pub fn unpack(&self, config: &[Symbol]) -> BTreeMap<N, Symbol> {
            self.vertices
                .iter()
                .cloned()
                .zip(config.iter().cloned())
                .collect()
        }

        fn homomorphism(&self, config: &[Symbol]) -> bool {
            if config.len() != self.vertices.len() {
                return false;
            }
            if !config.iter().all(|c| self.pattern.contains_vertex(c)) {
                return false;
            }
            let pos: BTreeMap<&N, usize> =
                self.vertices.iter().enumerate().map(|(i, v)| (v, i)).collect();
            self.graph
                .arcs()
                .all(|(u, v)| self.pattern.has_arc(&config[pos[u]], &config[pos[v]]))
        }
    }

    impl<N: NodeId + std::fmt::Debug> Space for HColoringSpace<N> {
        type Config = Vec<Symbol>;

        fn initial(&self) -> &Vec<Symbol> {
            &self.initial
        }

        fn target(&self) -> &Vec<Symbol> {
            &self.target
        }

        fn is_valid(&self, config: &Vec<Symbol>) -> bool {
            self.homomorphism(config)
        }

        fn neighbors(&self, config: &Vec<Symbol>) -> Vec<Vec<Symbol>> {
            let mut out = Vec::new();
            for i in 0..self.vertices.len() {
                for color in &self.colors {
                    if *color == config[i] {
                        continue;
                    }
                    let mut next = config.clone();
                    next[i] = color.clone();
                    if self.homomorphism(&next) {
                        out.push(next);
                    }
                }
            }
            out
        }

        fn move_name(&self) -> &'static str {
            "recolor"
        }
    }
}
