//! Graph and digraph primitives, bucket arrangements, bandwidth layouts
//! and treedepth decompositions.

use std::collections::{BTreeMap, BTreeSet, HashMap, VecDeque};
use std::fmt;
use std::hash::Hash;
use std::sync::Arc;

use crate::alphabet::Symbol;
use crate::error::{Error, Result};

/// Node identifiers must order deterministically and render as a single
/// whitespace-free token.
pub trait NodeId: Clone + Ord + Eq + Hash + fmt::Display {}
impl<T: Clone + Ord + Eq + Hash + fmt::Display> NodeId for T {}

/// A named graph vertex.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Vertex(Arc<str>);

impl Vertex {
    pub fn new(text: impl AsRef<str>) -> Self {
        Vertex(Arc::from(text.as_ref()))
    }

    pub fn as_str(&self) -> &str {
        &self.0
    }
}

impl fmt::Display for Vertex {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.0)
    }
}

impl fmt::Debug for Vertex {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.0)
    }
}

impl From<&str> for Vertex {
    fn from(s: &str) -> Self {
        Vertex::new(s)
    }
}

/// An undirected graph. Loops are stored as edges `(v, v)`.
#[derive(Clone, PartialEq, Eq, Debug, Default)]
pub struct Graph<N: NodeId = Vertex> {
    vertices: BTreeSet<N>,
    edges: BTreeSet<(N, N)>,
}

impl<N: NodeId> Graph<N> {
    pub fn new() -> Self {
        Graph {
            vertices: BTreeSet::new(),
            edges: BTreeSet::new(),
        }
    }

    pub fn add_vertex(&mut self, v: N) {
        self.vertices.insert(v);
    }

    /// Inserts an undirected edge; both endpoints must already exist.
    pub fn add_edge(&mut self, u: N, v: N) -> Result<()> {
        if !self.vertices.contains(&u) || !self.vertices.contains(&v) {
            return Err(Error::validation(format!(
                "edge {u} {v} references an unknown vertex"
            )));
        }
        let (a, b) = if u <= v { (u, v) } else { (v, u) };
        self.edges.insert((a, b));
        Ok(())
    }

    pub fn vertices(&self) -> impl Iterator<Item = &N> {
        self.vertices.iter()
    }

    pub fn vertex_count(&self) -> usize {
        self.vertices.len()
    }

    pub fn contains_vertex(&self, v: &N) -> bool {
        self.vertices.contains(v)
    }

    pub fn edges(&self) -> impl Iterator<Item = &(N, N)> {
        self.edges.iter()
    }

    pub fn edge_count(&self) -> usize {
        self.edges.len()
    }

    pub fn has_edge(&self, u: &N, v: &N) -> bool {
        if u <= v {
            self.edges.contains(&(u.clone(), v.clone()))
        } else {
            self.edges.contains(&(v.clone(), u.clone()))
        }
    }

    pub fn has_loop(&self) -> bool {
        self.edges.iter().any(|(u, v)| u == v)
    }

    /// Neighbors in sorted order. A loop makes a vertex its own neighbor.
    pub fn neighbors(&self, v: &N) -> Vec<N> {
        let mut out = BTreeSet::new();
        for (a, b) in &self.edges {
            if a == v {
                out.insert(b.clone());
            }
            if b == v {
                out.insert(a.clone());
            }
        }
        out.into_iter().collect()
    }

    pub fn degree(&self, v: &N) -> usize {
        self.neighbors(v).len()
    }

    /// Connected components, each sorted, ordered by smallest member.
    pub fn components(&self) -> Vec<BTreeSet<N>> {
        let mut seen: BTreeSet<N> = BTreeSet::new();
        let mut out = Vec::new();
        for start in &self.vertices {
            if seen.contains(start) {
                continue;
            }
            let mut comp = BTreeSet::new();
            let mut queue = VecDeque::from([start.clone()]);
            comp.insert(start.clone());
            while let Some(v) = queue.pop_front() {
                for w in self.neighbors(&v) {
                    if comp.insert(w.clone()) {
                        queue.push_back(w);
                    }
                }
            }
            seen.extend(comp.iter().cloned());
            out.push(comp);
        }
        out
    }

    pub fn is_connected(&self) -> bool {
        self.components().len() <= 1
    }

    /// True when every component is a tree (no cycles, no loops).
    pub fn is_forest(&self) -> bool {
        if self.has_loop() {
            return false;
        }
        let comps = self.components();
        let mut edge_total = 0usize;
        for comp in &comps {
            edge_total += comp.len() - 1;
        }
        self.edges.len() == edge_total
    }

    pub fn is_tree(&self) -> bool {
        self.is_forest() && self.is_connected() && !self.vertices.is_empty()
    }

    /// The same graph viewed as a symmetric digraph.
    pub fn to_digraph(&self) -> Digraph<N> {
        let mut d = Digraph::new();
        for v in &self.vertices {
            d.add_vertex(v.clone());
        }
        for (u, v) in &self.edges {
            d.add_arc(u.clone(), v.clone()).unwrap();
            d.add_arc(v.clone(), u.clone()).unwrap();
        }
        d
    }

    /// BFS distances from `start` (unreachable vertices absent).
    pub fn distances(&self, start: &N) -> BTreeMap<N, usize> {
        let mut dist = BTreeMap::new();
        dist.insert(start.clone(), 0usize);
        let mut queue = VecDeque::from([start.clone()]);
        while let Some(v) = queue.pop_front() {
            let d = dist[&v];
            for w in self.neighbors(&v) {
                if !dist.contains_key(&w) {
                    dist.insert(w.clone(), d + 1);
                    queue.push_back(w);
                }
            }
        }
        dist
    }
}

/// A directed graph. Loops permitted; no multi-arcs.
#[derive(Clone, PartialEq, Eq, Debug, Default)]
pub struct Digraph<N: NodeId = Vertex> {
    vertices: BTreeSet<N>,
    arcs: BTreeSet<(N, N)>,
}

impl<N: NodeId> Digraph<N> {
    pub fn new() -> Self {
        Digraph {
            vertices: BTreeSet::new(),
            arcs: BTreeSet::new(),
        }
    }

    pub fn add_vertex(&mut self, v: N) {
        self.vertices.insert(v);
    }

    pub fn add_arc(&mut self, u: N, v: N) -> Result<()> {
        if !self.vertices.contains(&u) || !self.vertices.contains(&v) {
            return Err(Error::validation(format!(
                "arc {u} {v} references an unknown vertex"
            )));
        }
        self.arcs.insert((u, v));
        Ok(())
    }

    pub fn vertices(&self) -> impl Iterator<Item = &N> {
        self.vertices.iter()
    }

    pub fn vertex_count(&self) -> usize {
        self.vertices.len()
    }

    pub fn contains_vertex(&self, v: &N) -> bool {
        self.vertices.contains(v)
    }

    pub fn arcs(&self) -> impl Iterator<Item = &(N, N)> {
        self.arcs.iter()
    }

    pub fn arc_count(&self) -> usize {
        self.arcs.len()
    }

    pub fn has_arc(&self, u: &N, v: &N) -> bool {
        self.arcs.contains(&(u.clone(), v.clone()))
    }

    pub fn has_loop(&self) -> bool {
        self.arcs.iter().any(|(u, v)| u == v)
    }

    pub fn is_symmetric(&self) -> bool {
        self.arcs
            .iter()
            .all(|(u, v)| self.arcs.contains(&(v.clone(), u.clone())))
    }

    pub fn out_neighbors(&self, v: &N) -> Vec<N> {
        self.arcs
            .iter()
            .filter(|(u, _)| u == v)
            .map(|(_, w)| w.clone())
            .collect()
    }

    pub fn in_neighbors(&self, v: &N) -> Vec<N> {
        self.arcs
            .iter()
            .filter(|(_, w)| w == v)
            .map(|(u, _)| u.clone())
            .collect()
    }

    /// Forgets arc directions (loops kept as loops).
    pub fn underlying_graph(&self) -> Graph<N> {
        let mut g = Graph::new();
        for v in &self.vertices {
            g.add_vertex(v.clone());
        }
        for (u, v) in &self.arcs {
            g.add_edge(u.clone(), v.clone()).unwrap();
        }
        g
    }
}

/// An ordered partition of a vertex set into buckets.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BucketArrangement<N: NodeId = Vertex> {
    pub buckets: Vec<BTreeSet<N>>,
}

impl<N: NodeId> BucketArrangement<N> {
    pub fn new(buckets: Vec<BTreeSet<N>>) -> Self {
        BucketArrangement { buckets }
    }

    pub fn max_bucket_size(&self) -> usize {
        self.buckets.iter().map(|b| b.len()).max().unwrap_or(0)
    }

    /// Lays vertices out bucket by bucket, sorted within each bucket.
    /// If the arrangement is valid with max bucket size `b`, the layout
    /// certifies bandwidth at most `2b`.
    pub fn layout(&self) -> BTreeMap<N, u64> {
        let mut out = BTreeMap::new();
        let mut next = 0u64;
        for bucket in &self.buckets {
            for v in bucket {
                out.insert(v.clone(), next);
                next += 1;
            }
        }
        out
    }
}

/// True iff the buckets partition `V(g)` and every edge stays within one
/// bucket or two consecutive buckets. A malformed partition is an error.
pub fn verify_bucket_arrangement<N: NodeId>(
    g: &Graph<N>,
    arrangement: &BucketArrangement<N>,
) -> Result<bool> {
    let mut index: BTreeMap<&N, usize> = BTreeMap::new();
    for (i, bucket) in arrangement.buckets.iter().enumerate() {
        for v in bucket {
            if index.insert(v, i).is_some() {
                return Err(Error::validation(format!(
                    "vertex {v} appears in more than one bucket"
                )));
            }
            if !g.contains_vertex(v) {
                return Err(Error::validation(format!(
                    "bucket vertex {v} is not in the graph"
                )));
            }
        }
    }
    for v in g.vertices() {
        if !index.contains_key(v) {
            return Err(Error::validation(format!("vertex {v} missing from buckets")));
        }
    }
    for (u, v) in g.edges() {
        let (i, j) = (index[u], index[v]);
        if i.abs_diff(j) > 1 {
            return Ok(false);
        }
    }
    Ok(true)
}

/// Maximum edge stretch of an injective integer layout.
pub fn bandwidth_of_layout<N: NodeId>(g: &Graph<N>, layout: &BTreeMap<N, u64>) -> Result<u64> {
    let mut used: BTreeMap<u64, &N> = BTreeMap::new();
    for v in g.vertices() {
        let pos = layout
            .get(v)
            .ok_or_else(|| Error::validation(format!("layout missing vertex {v}")))?;
        if let Some(other) = used.insert(*pos, v) {
            return Err(Error::validation(format!(
                "layout is not injective: {other} and {v} share position {pos}"
            )));
        }
    }
    let mut best = 0u64;
    for (u, v) in g.edges() {
        best = best.max(layout[u].abs_diff(layout[v]));
    }
    Ok(best)
}

/// A rooted forest given by parent pointers.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RootedForest<N: NodeId = Vertex> {
    parent: BTreeMap<N, Option<N>>,
}

impl<N: NodeId> RootedForest<N> {
    /// Builds a forest from `(child, parent)` pairs plus isolated roots.
    pub fn new(parent: BTreeMap<N, Option<N>>) -> Result<Self> {
        let forest = RootedForest { parent };
        forest.check_acyclic()?;
        Ok(forest)
    }

    fn check_acyclic(&self) -> Result<()> {
        for v in self.parent.keys() {
            let mut slow = v;
            let mut steps = 0usize;
            loop {
                match self.parent.get(slow) {
                    Some(Some(p)) => {
                        if !self.parent.contains_key(p) {
                            return Err(Error::validation(format!(
                                "parent {p} of {slow} is not a forest vertex"
                            )));
                        }
                        slow = p;
                    }
                    Some(None) => break,
                    None => unreachable!(),
                }
                steps += 1;
                if steps > self.parent.len() {
                    return Err(Error::validation(format!(
                        "cycle in parent chain starting at {v}"
                    )));
                }
            }
        }
        Ok(())
    }

    pub fn vertices(&self) -> impl Iterator<Item = &N> {
        self.parent.keys()
    }

    pub fn contains(&self, v: &N) -> bool {
        self.parent.contains_key(v)
    }

    pub fn roots(&self) -> Vec<N> {
        self.parent
            .iter()
            .filter(|(_, p)| p.is_none())
            .map(|(v, _)| v.clone())
            .collect()
    }

    pub fn parent_of(&self, v: &N) -> Option<&N> {
        self.parent.get(v).and_then(|p| p.as_ref())
    }

    pub fn children(&self, v: &N) -> Vec<N> {
        self.parent
            .iter()
            .filter(|(_, p)| p.as_ref() == Some(v))
            .map(|(c, _)| c.clone())
            .collect()
    }

    /// Proper ancestors, nearest first.
    pub fn ancestors(&self, v: &N) -> Vec<N> {
        let mut out = Vec::new();
        let mut cur = v;
        while let Some(p) = self.parent_of(cur) {
            out.push(p.clone());
            cur = p;
        }
        out
    }

    /// Depth of `v` below its root (root has depth 0).
    pub fn depth(&self, v: &N) -> usize {
        self.ancestors(v).len()
    }

    /// Number of vertices on the longest root-to-leaf chain.
    pub fn height(&self) -> usize {
        self.parent
            .keys()
            .map(|v| self.depth(v) + 1)
            .max()
            .unwrap_or(0)
    }

    /// True when `u` is a proper ancestor of `v` or vice versa.
    pub fn comparable(&self, u: &N, v: &N) -> bool {
        self.ancestors(u).contains(v) || self.ancestors(v).contains(u)
    }
}

/// True iff every edge of `g` joins a vertex with one of its forest
/// ancestors, i.e. `g` is a subgraph of the closure of `forest`.
pub fn validate_forest_closure<N: NodeId>(g: &Graph<N>, forest: &RootedForest<N>) -> Result<bool> {
    for v in g.vertices() {
        if !forest.contains(v) {
            return Err(Error::validation(format!(
                "forest does not cover graph vertex {v}"
            )));
        }
    }
    for (u, v) in g.edges() {
        if u == v || !forest.comparable(u, v) {
            return Ok(false);
        }
    }
    Ok(true)
}

pub const TREEDEPTH_VERTEX_LIMIT: usize = 20;

/// Exact treedepth of a loopless graph together with a witnessing forest.
///
/// Uses the recurrence td(G) = 1 + min over v of td(G - v) on connected
/// graphs, memoized on vertex subsets. Hard-capped at
/// [`TREEDEPTH_VERTEX_LIMIT`] vertices.
pub fn exact_treedepth<N: NodeId>(g: &Graph<N>) -> Result<(usize, RootedForest<N>)> {
    if g.vertex_count() > TREEDEPTH_VERTEX_LIMIT {
        return Err(Error::resource(format!(
            "treedepth is limited to {TREEDEPTH_VERTEX_LIMIT} vertices, got {}",
            g.vertex_count()
        )));
    }
    if g.has_loop() {
        return Err(Error::validation(
            "treedepth requires a loopless graph".to_string(),
        ));
    }
    if g.vertex_count() == 0 {
        return Ok((0, RootedForest::new(BTreeMap::new())?));
    }

    let verts: Vec<N> = g.vertices().cloned().collect();
    let idx: BTreeMap<&N, usize> = verts.iter().enumerate().map(|(i, v)| (v, i)).collect();
    let mut adj = vec![0u32; verts.len()];
    for (u, v) in g.edges() {
        adj[idx[u]] |= 1 << idx[v];
        adj[idx[v]] |= 1 << idx[u];
    }

    let full: u32 = if verts.len() == 32 {
        u32::MAX
    } else {
        (1u32 << verts.len()) - 1
    };

    struct Solver {
        adj: Vec<u32>,
        memo: HashMap<u32, (usize, usize)>,
    }

    impl Solver {
        fn components(&self, mask: u32) -> Vec<u32> {
            let mut rest = mask;
            let mut comps = Vec::new();
            while rest != 0 {
                let start = rest.trailing_zeros();
                let mut comp = 1u32 << start;
                loop {
                    let mut grow = comp;
                    let mut m = comp;
                    while m != 0 {
                        let v = m.trailing_zeros() as usize;
                        m &= m - 1;
                        grow |= self.adj[v] & mask;
                    }
                    if grow == comp {
                        break;
                    }
                    comp = grow;
                }
                comps.push(comp);
                rest &= !comp;
            }
            comps
        }

        /// Treedepth of the forest induced on `mask` (max over components).
        fn solve_forest(&mut self, mask: u32) -> usize {
            self.components(mask)
                .into_iter()
                .map(|c| self.solve_connected(c))
                .max()
                .unwrap_or(0)
        }

        /// Treedepth of a connected induced subgraph; records the best
        /// removal vertex for reconstruction.
        fn solve_connected(&mut self, mask: u32) -> usize {
            if mask.count_ones() == 1 {
                return 1;
            }
            if let Some(&(d, _)) = self.memo.get(&mask) {
                return d;
            }
            let mut best = usize::MAX;
            let mut best_v = 0usize;
            let mut m = mask;
            while m != 0 {
                let v = m.trailing_zeros() as usize;
                m &= m - 1;
                let d = 1 + self.solve_forest(mask & !(1 << v));
                if d < best {
                    best = d;
                    best_v = v;
                }
            }
            self.memo.insert(mask, (best, best_v));
            best
        }

        fn build(&mut self, mask: u32, parent: Option<usize>, out: &mut Vec<(usize, Option<usize>)>) {
            for comp in self.components(mask) {
                let root = if comp.count_ones() == 1 {
                    comp.trailing_zeros() as usize
                } else {
                    self.solve_connected(comp);
                    self.memo[&comp].1
                };
                out.push((root, parent));
                self.build(comp & !(1 << root), Some(root), out);
            }
        }
    }

    let mut solver = Solver {
        adj,
        memo: HashMap::new(),
    };
    let depth = solver.solve_forest(full);
    let mut rel = Vec::new();
    solver.build(full, None, &mut rel);
    let parent: BTreeMap<N, Option<N>> = rel
        .into_iter()
        .map(|(v, p)| (verts[v].clone(), p.map(|p| verts[p].clone())))
        .collect();
    let forest = RootedForest::new(parent)?;
    debug_assert_eq!(forest.height(), depth);
    Ok((depth, forest))
}

/// Convenience constructors used throughout the tests and examples.
pub fn path_graph(names: &[&str]) -> Graph<Vertex> {
    let mut g = Graph::new();
    for n in names {
        g.add_vertex(Vertex::new(n));
    }
    for pair in names.windows(2) {
        g.add_edge(Vertex::new(pair[0]), Vertex::new(pair[1])).unwrap();
    }
    g
}

pub fn complete_graph(names: &[&str]) -> Graph<Vertex> {
    let mut g = Graph::new();
    for n in names {
        g.add_vertex(Vertex::new(n));
    }
    for (i, a) in names.iter().enumerate() {
        for b in &names[i + 1..] {
            g.add_edge(Vertex::new(a), Vertex::new(b)).unwrap();
        }
    }
    g
}

/// Complete loopless pattern graph on symbol names, e.g. `K3` for 3-coloring.
pub fn complete_symbol_graph(names: &[&str]) -> Graph<Symbol> {
    let mut g = Graph::new();
    for n in names {
        g.add_vertex(Symbol::new(n));
    }
    for (i, a) in names.iter().enumerate() {
        for b in &names[i + 1..] {
            g.add_edge(Symbol::new(a), Symbol::new(b)).unwrap();
        }
    }
    g
}

#[cfg(test)]
mod tests {
    use super::*;

    fn buckets(spec: &[&[&str]]) -> BucketArrangement<Vertex> {
        BucketArrangement::new(
            spec.iter()
                .map(|b| b.iter().map(|v| Vertex::new(v)).collect())
                .collect(),
        )
    }

    #[test]
    fn bucket_arrangement_on_path() {
        let g = path_graph(&["v1", "v2", "v3"]);
        let ok = buckets(&[&["v1"], &["v2"], &["v3"]]);
        assert!(verify_bucket_arrangement(&g, &ok).unwrap());
        let bad = buckets(&[&["v1"], &["v3"], &["v2"]]);
        assert!(!verify_bucket_arrangement(&g, &bad).unwrap());
    }

    #[test]
    fn bucket_arrangement_rejects_malformed_partition() {
        let g = path_graph(&["v1", "v2", "v3"]);
        let overlap = buckets(&[&["v1", "v2"], &["v2", "v3"]]);
        assert!(verify_bucket_arrangement(&g, &overlap).is_err());
        let missing = buckets(&[&["v1"], &["v2"]]);
        assert!(verify_bucket_arrangement(&g, &missing).is_err());
    }

    #[test]
    fn bandwidth_of_simple_layouts() {
        let k3 = complete_graph(&["a", "b", "c"]);
        let f: BTreeMap<Vertex, u64> = [("a", 1), ("b", 2), ("c", 3)]
            .iter()
            .map(|(v, p)| (Vertex::new(v), *p))
            .collect();
        assert_eq!(bandwidth_of_layout(&k3, &f).unwrap(), 2);

        let p3 = path_graph(&["a", "b", "c"]);
        assert_eq!(bandwidth_of_layout(&p3, &f).unwrap(), 1);
    }

    #[test]
    fn bandwidth_rejects_non_injective_layout() {
        let p3 = path_graph(&["a", "b", "c"]);
        let f: BTreeMap<Vertex, u64> = [("a", 1), ("b", 1), ("c", 2)]
            .iter()
            .map(|(v, p)| (Vertex::new(v), *p))
            .collect();
        assert!(bandwidth_of_layout(&p3, &f).is_err());
    }

    #[test]
    fn bucket_layout_certifies_twice_bucket_size() {
        // Buckets of size at most b laid out bucket-by-bucket reach at most 2b.
        let mut g = Graph::new();
        for n in ["a", "b", "c", "d", "e", "f"] {
            g.add_vertex(Vertex::new(n));
        }
        for (u, v) in [("a", "c"), ("b", "d"), ("c", "d"), ("d", "e"), ("e", "f")] {
            g.add_edge(Vertex::new(u), Vertex::new(v)).unwrap();
        }
        let arr = buckets(&[&["a", "b"], &["c", "d"], &["e", "f"]]);
        assert!(verify_bucket_arrangement(&g, &arr).unwrap());
        let bw = bandwidth_of_layout(&g, &arr.layout()).unwrap();
        assert!(bw <= 2 * arr.max_bucket_size() as u64);
    }

    fn forest(pairs: &[(&str, Option<&str>)]) -> RootedForest<Vertex> {
        RootedForest::new(
            pairs
                .iter()
                .map(|(v, p)| (Vertex::new(v), p.map(Vertex::new)))
                .collect(),
        )
        .unwrap()
    }

    #[test]
    fn forest_closure_single_edge() {
        let mut g = Graph::new();
        g.add_vertex(Vertex::new("u"));
        g.add_vertex(Vertex::new("v"));
        g.add_edge(Vertex::new("u"), Vertex::new("v")).unwrap();
        let f = forest(&[("u", None), ("v", Some("u"))]);
        assert!(validate_forest_closure(&g, &f).unwrap());
    }

    #[test]
    fn forest_closure_rejects_triangle_under_two_levels() {
        let g = complete_graph(&["a", "b", "c"]);
        let f = forest(&[("a", None), ("b", Some("a")), ("c", Some("a"))]);
        assert!(!validate_forest_closure(&g, &f).unwrap());
    }

    #[test]
    fn closure_holds_for_subgraphs() {
        let g = path_graph(&["a", "b", "c", "d"]);
        let (_, f) = exact_treedepth(&g).unwrap();
        assert!(validate_forest_closure(&g, &f).unwrap());
        // dropping edges keeps the closure property
        let mut sub = Graph::new();
        for v in g.vertices() {
            sub.add_vertex(v.clone());
        }
        sub.add_edge(Vertex::new("a"), Vertex::new("b")).unwrap();
        assert!(validate_forest_closure(&sub, &f).unwrap());
    }

    #[test]
    fn treedepth_small_cases() {
        let mut single = Graph::new();
        single.add_vertex(Vertex::new("x"));
        let (d, f) = exact_treedepth(&single).unwrap();
        assert_eq!(d, 1);
        assert_eq!(f.roots(), vec![Vertex::new("x")]);

        let (d, f) = exact_treedepth(&complete_graph(&["a", "b", "c"])).unwrap();
        assert_eq!(d, 3);
        assert!(validate_forest_closure(&complete_graph(&["a", "b", "c"]), &f).unwrap());

        let p4 = path_graph(&["a", "b", "c", "d"]);
        let (d, f) = exact_treedepth(&p4).unwrap();
        assert_eq!(d, 3);
        assert!(validate_forest_closure(&p4, &f).unwrap());
        assert_eq!(f.height(), 3);
    }

    #[test]
    fn treedepth_rejects_loops_and_oversize() {
        let mut g: Graph<Vertex> = Graph::new();
        g.add_vertex(Vertex::new("v"));
        g.add_edge(Vertex::new("v"), Vertex::new("v")).unwrap();
        assert!(matches!(exact_treedepth(&g), Err(Error::Validation(_))));

        let mut big: Graph<Vertex> = Graph::new();
        for i in 0..21 {
            big.add_vertex(Vertex::new(format!("v{i}")));
        }
        assert!(matches!(exact_treedepth(&big), Err(Error::ResourceLimit(_))));
    }

    /// Independent oracle: search all rooted forests over the vertex set and
    /// confirm no strictly lower forest closure exists.
    fn brute_force_treedepth(g: &Graph<Vertex>) -> usize {
        let verts: Vec<Vertex> = g.vertices().cloned().collect();
        let n = verts.len();
        // parent assignment: each vertex gets None or another vertex
        fn rec(
            g: &Graph<Vertex>,
            verts: &[Vertex],
            assign: &mut Vec<Option<usize>>,
            best: &mut usize,
        ) {
            let i = assign.len();
            if i == verts.len() {
                let parent: BTreeMap<Vertex, Option<Vertex>> = verts
                    .iter()
                    .enumerate()
                    .map(|(k, v)| (v.clone(), assign[k].map(|p| verts[p].clone())))
                    .collect();
                if let Ok(f) = RootedForest::new(parent) {
                    if validate_forest_closure(g, &f).unwrap() {
                        *best = (*best).min(f.height());
                    }
                }
                return;
            }
            assign.push(None);
            rec(g, verts, assign, best);
            assign.pop();
            for p in 0..verts.len() {
                if p != i {
                    assign.push(Some(p));
                    rec(g, verts, assign, best);
                    assign.pop();
                }
            }
        }
        let mut best = n;
        rec(g, &verts, &mut Vec::new(), &mut best);
        best
    }

    #[test]
    fn treedepth_matches_exhaustive_forest_search() {
        let cases: Vec<Graph<Vertex>> = vec![
            path_graph(&["a", "b", "c", "d"]),
            path_graph(&["a", "b", "c", "d", "e"]),
            complete_graph(&["a", "b", "c", "d"]),
            {
                let mut g = path_graph(&["a", "b", "c", "d"]);
                g.add_vertex(Vertex::new("e"));
                g.add_edge(Vertex::new("b"), Vertex::new("e")).unwrap();
                g
            },
        ];
        for g in cases {
            let (d, f) = exact_treedepth(&g).unwrap();
            assert!(validate_forest_closure(&g, &f).unwrap());
            assert_eq!(f.height(), d);
            assert_eq!(d, brute_force_treedepth(&g), "graph {g:?}");
        }
    }
}
