//! Polynomial-time solvers: recoloring homomorphisms of trees via the
//! even-walk criterion, and homomorphism reconfiguration on loopless
//! digraphs of small treedepth via label-preserving core contraction.

use std::collections::{BTreeMap, BTreeSet, VecDeque};
use std::fmt;

use crate::alphabet::Symbol;
use crate::engine::{self, SearchLimits};
use crate::error::{Error, Result};
use crate::graph::{validate_forest_closure, Digraph, Graph, NodeId, RootedForest, Vertex};

/// True iff there is a walk of even length from `a` to `b` in `h`:
/// both in one component which is non-bipartite (loops count as odd
/// cycles) or in which they share a bipartition side.
pub fn even_walk_exists(h: &Graph<Symbol>, a: &Symbol, b: &Symbol) -> Result<bool> {
    for v in [a, b] {
        if !h.contains_vertex(v) {
            return Err(Error::validation(format!("{v} is not a vertex of the pattern")));
        }
    }
    if a == b {
        return Ok(true);
    }
    // 2-color the component of `a`
    let mut side: BTreeMap<Symbol, bool> = BTreeMap::new();
    side.insert(a.clone(), false);
    let mut queue = VecDeque::from([a.clone()]);
    let mut bipartite = true;
    while let Some(v) = queue.pop_front() {
        let sv = side[&v];
        if h.has_edge(&v, &v) {
            bipartite = false;
        }
        for w in h.neighbors(&v) {
            match side.get(&w) {
                None => {
                    side.insert(w.clone(), !sv);
                    queue.push_back(w);
                }
                Some(sw) => {
                    if *sw == sv && w != v {
                        bipartite = false;
                    }
                }
            }
        }
    }
    match side.get(b) {
        None => Ok(false),
        Some(sb) => Ok(!bipartite || !sb),
    }
}

/// A shortest even-length walk from `a` to `b`, found by breadth-first
/// search over (vertex, parity) states. Returns the walk's vertex list,
/// `[a]` itself when `a == b`. Independent constructive counterpart of
/// [`even_walk_exists`].
pub fn shortest_even_walk(h: &Graph<Symbol>, a: &Symbol, b: &Symbol) -> Option<Vec<Symbol>> {
    if a == b {
        return Some(vec![a.clone()]);
    }
    let start = (a.clone(), false);
    let mut parent: BTreeMap<(Symbol, bool), (Symbol, bool)> = BTreeMap::new();
    parent.insert(start.clone(), start.clone());
    let mut queue = VecDeque::from([start]);
    while let Some((v, p)) = queue.pop_front() {
        for w in h.neighbors(&v) {
            let next = (w, !p);
            if !parent.contains_key(&next) {
                parent.insert(next.clone(), (v.clone(), p));
                if next == (b.clone(), false) {
                    let mut walk = vec![next.0.clone()];
                    let mut at = next;
                    while parent[&at] != at {
                        at = parent[&at].clone();
                        walk.push(at.0.clone());
                    }
                    walk.reverse();
                    return Some(walk);
                }
                queue.push_back(next);
            }
        }
    }
    None
}

pub type HColoring = BTreeMap<Vertex, Symbol>;

fn check_undirected_coloring(g: &Graph<Vertex>, coloring: &HColoring, h: &Graph<Symbol>) -> Result<()> {
    for v in g.vertices() {
        let c = coloring
            .get(v)
            .ok_or_else(|| Error::validation(format!("vertex {v} is uncolored")))?;
        if !h.contains_vertex(c) {
            return Err(Error::validation(format!("unknown color {c}")));
        }
    }
    for (u, v) in g.edges() {
        if !h.has_edge(&coloring[u], &coloring[v]) {
            return Err(Error::validation(format!(
                "edge {u} {v} maps to the non-edge ({}, {})",
                coloring[u], coloring[v]
            )));
        }
    }
    Ok(())
}

fn levels_from(t: &Graph<Vertex>, root: &Vertex) -> Vec<Vec<Vertex>> {
    let dist = t.distances(root);
    let depth = dist.values().copied().max().unwrap_or(0);
    let mut levels = vec![Vec::new(); depth + 1];
    for (v, d) in &dist {
        levels[*d].push(v.clone());
    }
    levels
}

/// Whether one tree coloring reaches another: true iff the pattern has an
/// even-length walk between the two root colors. Requires a tree with at
/// least two vertices; see [`forest_recoloring_reach`] for the total API.
pub fn tree_reach(
    t: &Graph<Vertex>,
    root: &Vertex,
    alpha: &HColoring,
    beta: &HColoring,
    h: &Graph<Symbol>,
) -> Result<bool> {
    if !t.is_tree() || t.vertex_count() < 2 {
        return Err(Error::validation(
            "the even-walk criterion needs a tree with at least 2 vertices",
        ));
    }
    if !t.contains_vertex(root) {
        return Err(Error::validation(format!("root {root} is not a tree vertex")));
    }
    check_undirected_coloring(t, alpha, h)?;
    check_undirected_coloring(t, beta, h)?;
    even_walk_exists(h, &alpha[root], &beta[root])
}

/// Normalization steps: push grandparent colors down level by level until
/// even levels share the root color and odd levels share one color.
/// Steps are `(vertex, old color, new color)` so they replay both ways.
fn normalize_steps(
    levels: &[Vec<Vertex>],
    parent: &BTreeMap<Vertex, Vertex>,
    coloring: &HColoring,
) -> (Vec<(Vertex, Symbol, Symbol)>, HColoring) {
    let mut current = coloring.clone();
    let mut steps = Vec::new();
    let depth = levels.len() - 1;
    for start in (1..=depth).rev() {
        let unified = current[&levels[1][0]].clone();
        for level in (start..=depth).step_by(2) {
            for v in &levels[level] {
                let target = if level == 1 {
                    unified.clone()
                } else {
                    current[&parent[&parent[v]]].clone()
                };
                if current[v] != target {
                    steps.push((v.clone(), current[v].clone(), target.clone()));
                    current.insert(v.clone(), target);
                }
            }
        }
    }
    (steps, current)
}

/// An explicit recoloring sequence between two tree colorings, or `None`
/// exactly when [`tree_reach`] says unreachable. The sequence normalizes
/// the first coloring to an alternating one, marches both level classes
/// along an even walk of the pattern, and undoes the normalization of the
/// second coloring.
pub fn tree_reconfigure_sequence(
    t: &Graph<Vertex>,
    root: &Vertex,
    alpha: &HColoring,
    beta: &HColoring,
    h: &Graph<Symbol>,
) -> Result<Option<Vec<HColoring>>> {
    if !tree_reach(t, root, alpha, beta, h)? {
        return Ok(None);
    }
    if alpha == beta {
        return Ok(Some(vec![alpha.clone()]));
    }

    let levels = levels_from(t, root);
    let mut parent: BTreeMap<Vertex, Vertex> = BTreeMap::new();
    let dist = t.distances(root);
    for v in t.vertices() {
        for w in t.neighbors(v) {
            if dist[&w] + 1 == dist[v] {
                parent.insert(v.clone(), w.clone());
            }
        }
    }

    let mut sequence: Vec<HColoring> = vec![alpha.clone()];
    let mut push = |coloring: &mut HColoring, v: &Vertex, c: &Symbol, out: &mut Vec<HColoring>| {
        if coloring[v] != *c {
            coloring.insert(v.clone(), c.clone());
            out.push(coloring.clone());
        }
    };

    let (alpha_steps, alpha_norm) = normalize_steps(&levels, &parent, alpha);
    let mut current = alpha.clone();
    for (v, _, c) in &alpha_steps {
        push(&mut current, v, c, &mut sequence);
    }
    debug_assert_eq!(current, alpha_norm);

    let evens: Vec<Vertex> = levels.iter().step_by(2).flatten().cloned().collect();
    let odds: Vec<Vertex> = levels.iter().skip(1).step_by(2).flatten().cloned().collect();

    let a = alpha_norm[root].clone();
    let b = beta[root].clone();
    let walk = shortest_even_walk(h, &a, &b)
        .expect("even walk exists because the criterion holds");
    for (step, color) in walk.iter().enumerate().skip(1) {
        let class = if step % 2 == 1 { &odds } else { &evens };
        for v in class {
            push(&mut current, v, color, &mut sequence);
        }
    }

    let (beta_steps, beta_norm) = normalize_steps(&levels, &parent, beta);
    let odd_target = beta_norm[&levels[1][0]].clone();
    for v in &odds {
        push(&mut current, v, &odd_target, &mut sequence);
    }
    debug_assert_eq!(current, beta_norm);
    for (v, old, _) in beta_steps.iter().rev() {
        push(&mut current, v, old, &mut sequence);
    }
    debug_assert_eq!(current, *beta);
    Ok(Some(sequence))
}

/// Componentwise tree recoloring over a forest. Isolated vertices are
/// always reconfigurable (any color works when there are no edges); every
/// other component applies the even-walk criterion at its smallest vertex.
pub fn forest_recoloring_reach(
    g: &Graph<Vertex>,
    alpha: &HColoring,
    beta: &HColoring,
    h: &Graph<Symbol>,
) -> Result<bool> {
    if !g.is_forest() {
        return Err(Error::validation("the input graph is not a forest"));
    }
    check_undirected_coloring(g, alpha, h)?;
    check_undirected_coloring(g, beta, h)?;
    for comp in g.components() {
        if comp.len() == 1 {
            continue;
        }
        let root = comp.iter().next().unwrap().clone();
        let sub = induced_subgraph(g, &comp);
        let restrict = |c: &HColoring| -> HColoring {
            comp.iter().map(|v| (v.clone(), c[v].clone())).collect()
        };
        if !tree_reach(&sub, &root, &restrict(alpha), &restrict(beta), h)? {
            return Ok(false);
        }
    }
    Ok(true)
}

/// Componentwise constructive counterpart of [`forest_recoloring_reach`].
pub fn forest_recoloring_sequence(
    g: &Graph<Vertex>,
    alpha: &HColoring,
    beta: &HColoring,
    h: &Graph<Symbol>,
) -> Result<Option<Vec<HColoring>>> {
    if !forest_recoloring_reach(g, alpha, beta, h)? {
        return Ok(None);
    }
    let mut current = alpha.clone();
    let mut out = vec![current.clone()];
    for comp in g.components() {
        if comp.len() == 1 {
            let v = comp.iter().next().unwrap();
            if current[v] != beta[v] {
                current.insert(v.clone(), beta[v].clone());
                out.push(current.clone());
            }
            continue;
        }
        let root = comp.iter().next().unwrap().clone();
        let sub = induced_subgraph(g, &comp);
        let restrict = |c: &HColoring| -> HColoring {
            comp.iter().map(|v| (v.clone(), c[v].clone())).collect()
        };
        let steps = tree_reconfigure_sequence(&sub, &root, &restrict(alpha), &restrict(beta), h)?
            .expect("component criterion verified above");
        for step in steps.iter().skip(1) {
            for (v, c) in step {
                if current[v] != *c {
                    current.insert(v.clone(), c.clone());
                }
            }
            out.push(current.clone());
        }
    }
    debug_assert_eq!(current, *beta);
    Ok(Some(out))
}

fn induced_subgraph(g: &Graph<Vertex>, verts: &BTreeSet<Vertex>) -> Graph<Vertex> {
    let mut out = Graph::new();
    for v in verts {
        out.add_vertex(v.clone());
    }
    for (u, v) in g.edges() {
        if verts.contains(u) && verts.contains(v) {
            out.add_edge(u.clone(), v.clone()).unwrap();
        }
    }
    out
}

/// A label-preserving homomorphism of a digraph onto one of its induced
/// substructures.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CoreWitness {
    pub core: BTreeSet<Vertex>,
    pub mu: BTreeMap<Vertex, Vertex>,
}

/// Shrinks a labeled digraph along a treedepth forest: subtrees are coded
/// by apex label, adjacency pattern towards their ancestors and the
/// multiset of child codes; among siblings one representative per code is
/// kept and the rest are folded onto it. All arcs run between forest
/// ancestors and descendants, so the folding map preserves arcs.
pub fn treedepth_core<L: Ord + Clone + fmt::Debug>(
    g: &Digraph<Vertex>,
    labels: &BTreeMap<Vertex, L>,
    forest: &RootedForest<Vertex>,
) -> Result<CoreWitness> {
    if g.has_loop() {
        return Err(Error::validation("core contraction needs a loopless digraph"));
    }
    let underlying = g.underlying_graph();
    if !validate_forest_closure(&underlying, forest)? {
        return Err(Error::validation(
            "the forest closure does not contain the graph",
        ));
    }
    for v in g.vertices() {
        if !labels.contains_key(v) {
            return Err(Error::validation(format!("vertex {v} has no label")));
        }
    }

    // subtree codes, bottom-up
    type Code = u32;
    #[derive(PartialEq, Eq, PartialOrd, Ord)]
    struct CodeKey<L: Ord>(L, Vec<(bool, bool)>, Vec<Code>);
    let mut interner: BTreeMap<CodeKey<L>, Code> = BTreeMap::new();
    let mut codes: BTreeMap<Vertex, Code> = BTreeMap::new();

    let mut order: Vec<Vertex> = forest.vertices().cloned().collect();
    order.sort_by_key(|v| (forest.depth(v), v.clone()));
    for v in order.iter().rev() {
        let mut ancestors = forest.ancestors(v);
        ancestors.reverse(); // root first
        let pattern: Vec<(bool, bool)> = ancestors
            .iter()
            .map(|anc| (g.has_arc(v, anc), g.has_arc(anc, v)))
            .collect();
        let mut child_codes: Vec<Code> = forest.children(v).iter().map(|c| codes[c]).collect();
        child_codes.sort_unstable();
        let label = labels
            .get(v)
            .cloned()
            .unwrap_or_else(|| labels.values().next().unwrap().clone());
        let key = CodeKey(label, pattern, child_codes);
        let next_id = interner.len() as Code;
        let code = *interner.entry(key).or_insert(next_id);
        codes.insert(v.clone(), code);
    }

    // fold equal-coded siblings onto representatives, top-down
    let mut mu: BTreeMap<Vertex, Vertex> = order.iter().map(|v| (v.clone(), v.clone())).collect();

    fn fold(
        x: &Vertex,
        y: &Vertex,
        forest: &RootedForest<Vertex>,
        codes: &BTreeMap<Vertex, u32>,
        mu: &mut BTreeMap<Vertex, Vertex>,
    ) {
        mu.insert(x.clone(), y.clone());
        let mut cx = forest.children(x);
        let mut cy = forest.children(y);
        cx.sort_by_key(|c| (codes[c], c.clone()));
        cy.sort_by_key(|c| (codes[c], c.clone()));
        debug_assert_eq!(cx.len(), cy.len());
        for (a, b) in cx.iter().zip(cy.iter()) {
            debug_assert_eq!(codes[a], codes[b]);
            fold(a, b, forest, codes, mu);
        }
    }

    let resolve = |mu: &BTreeMap<Vertex, Vertex>, v: &Vertex| -> Vertex {
        let mut at = v.clone();
        while mu[&at] != at {
            at = mu[&at].clone();
        }
        at
    };

    let group_and_fold = |members: Vec<Vertex>, mu: &mut BTreeMap<Vertex, Vertex>| {
        let mut by_code: BTreeMap<Code, Vec<Vertex>> = BTreeMap::new();
        for m in members {
            by_code.entry(codes[&m]).or_default().push(m);
        }
        for group in by_code.values() {
            let rep = &group[0];
            for other in &group[1..] {
                fold(other, rep, forest, &codes, mu);
            }
        }
    };

    group_and_fold(forest.roots(), &mut mu);
    for v in &order {
        if resolve(&mu, v) == *v {
            group_and_fold(forest.children(v), &mut mu);
        }
    }

    let mut final_mu = BTreeMap::new();
    let mut core = BTreeSet::new();
    for v in g.vertices() {
        let image = resolve(&mu, v);
        if image == *v {
            core.insert(v.clone());
        }
        final_mu.insert(v.clone(), image);
    }
    Ok(CoreWitness {
        core,
        mu: final_mu,
    })
}

/// Checks a witness independently of its construction: the map lands in
/// the core, preserves labels and maps arcs to arcs of the induced
/// substructure.
pub fn verify_core<L: Ord + Clone>(
    g: &Digraph<Vertex>,
    labels: &BTreeMap<Vertex, L>,
    witness: &CoreWitness,
) -> bool {
    if !witness.core.iter().all(|v| g.contains_vertex(v)) {
        return false;
    }
    for v in g.vertices() {
        match witness.mu.get(v) {
            Some(image) if witness.core.contains(image) => {
                if labels.get(v) != labels.get(image) {
                    return false;
                }
            }
            _ => return false,
        }
    }
    g.arcs()
        .all(|(u, v)| g.has_arc(&witness.mu[u], &witness.mu[v]))
}

fn induced_digraph(g: &Digraph<Vertex>, verts: &BTreeSet<Vertex>) -> Digraph<Vertex> {
    let mut out = Digraph::new();
    for v in verts {
        out.add_vertex(v.clone());
    }
    for (u, v) in g.arcs() {
        if verts.contains(u) && verts.contains(v) {
            out.add_arc(u.clone(), v.clone()).unwrap();
        }
    }
    out
}

/// Homomorphism reachability on a loopless digraph with a treedepth
/// forest: contract to the core preserving the label `(alpha, beta)` per
/// vertex, decide by search on the core, and expand the core solution by
/// recoloring each fiber one vertex at a time (fibers are independent
/// sets, so any order works; the smallest-vertex order is used).
pub fn treedepth_reach(
    g: &Digraph<Vertex>,
    forest: &RootedForest<Vertex>,
    alpha: &HColoring,
    beta: &HColoring,
    h: &Digraph<Symbol>,
    limits: &SearchLimits,
) -> Result<(bool, Option<Vec<HColoring>>)> {
    let full_space =
        engine::spaces::HColoringSpace::new(g.clone(), h.clone(), alpha, beta)?;
    let labels: BTreeMap<Vertex, (Symbol, Symbol)> = g
        .vertices()
        .map(|v| (v.clone(), (alpha[v].clone(), beta[v].clone())))
        .collect();
    let witness = treedepth_core(g, &labels, forest)?;
    debug_assert!(verify_core(g, &labels, &witness));

    let core_g = induced_digraph(g, &witness.core);
    let restrict = |c: &HColoring| -> HColoring {
        witness.core.iter().map(|v| (v.clone(), c[v].clone())).collect()
    };
    let core_space = engine::spaces::HColoringSpace::new(
        core_g,
        h.clone(),
        &restrict(alpha),
        &restrict(beta),
    )?;
    let (core_seq, _) = engine::bfs_reach(&core_space, limits)?;
    let Some(core_seq) = core_seq else {
        return Ok((false, None));
    };

    // expand: each core move recolors its whole fiber one vertex at a time
    let core_order: Vec<Vertex> = core_space.vertex_order().to_vec();
    let mut fibers: BTreeMap<Vertex, Vec<Vertex>> = BTreeMap::new();
    for v in g.vertices() {
        fibers.entry(witness.mu[v].clone()).or_default().push(v.clone());
    }
    let mut current = alpha.clone();
    let mut out = vec![current.clone()];
    for pair in core_seq.steps.windows(2) {
        for (i, core_v) in core_order.iter().enumerate() {
            if pair[0][i] != pair[1][i] {
                for u in &fibers[core_v] {
                    current.insert(u.clone(), pair[1][i].clone());
                    out.push(current.clone());
                }
            }
        }
    }
    debug_assert_eq!(current, *beta);
    let _ = full_space;
    Ok((true, Some(out)))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::engine::{bfs_reach, verify_sequence, ReconfigurationSequence, Space};
    use crate::graph::{complete_symbol_graph, exact_treedepth, path_graph};

    fn sym(s: &str) -> Symbol {
        Symbol::new(s)
    }

    fn vx(s: &str) -> Vertex {
        Vertex::new(s)
    }

    fn coloring(pairs: &[(&str, &str)]) -> HColoring {
        pairs.iter().map(|(v, c)| (vx(v), sym(c))).collect()
    }

    #[test]
    fn even_walk_basic_cases() {
        let mut edge = Graph::new();
        edge.add_vertex(sym("a"));
        edge.add_vertex(sym("b"));
        edge.add_edge(sym("a"), sym("b")).unwrap();
        assert!(!even_walk_exists(&edge, &sym("a"), &sym("b")).unwrap());
        assert!(even_walk_exists(&edge, &sym("a"), &sym("a")).unwrap());

        let triangle = complete_symbol_graph(&["1", "2", "3"]);
        assert!(even_walk_exists(&triangle, &sym("1"), &sym("2")).unwrap());

        // separate components
        let mut two = Graph::new();
        two.add_vertex(sym("a"));
        two.add_vertex(sym("b"));
        assert!(!even_walk_exists(&two, &sym("a"), &sym("b")).unwrap());
    }

    #[test]
    fn loops_count_as_odd_cycles() {
        let mut h = Graph::new();
        h.add_vertex(sym("a"));
        h.add_vertex(sym("b"));
        h.add_edge(sym("a"), sym("b")).unwrap();
        h.add_edge(sym("a"), sym("a")).unwrap();
        assert!(even_walk_exists(&h, &sym("a"), &sym("b")).unwrap());
        let walk = shortest_even_walk(&h, &sym("a"), &sym("b")).unwrap();
        assert!(walk.len() % 2 == 1 && walk.len() >= 3);
    }

    #[test]
    fn walk_finder_agrees_with_criterion_exhaustively() {
        // all loopy graphs on 3 vertices, all vertex pairs
        let names = ["a", "b", "c"];
        let slots: Vec<(usize, usize)> =
            vec![(0, 0), (0, 1), (0, 2), (1, 1), (1, 2), (2, 2)];
        for mask in 0u32..64 {
            let mut h = Graph::new();
            for n in names {
                h.add_vertex(sym(n));
            }
            for (bit, (i, j)) in slots.iter().enumerate() {
                if mask & (1 << bit) != 0 {
                    h.add_edge(sym(names[*i]), sym(names[*j])).unwrap();
                }
            }
            for a in names {
                for b in names {
                    let exists = even_walk_exists(&h, &sym(a), &sym(b)).unwrap();
                    let walk = shortest_even_walk(&h, &sym(a), &sym(b));
                    assert_eq!(exists, walk.is_some(), "mask {mask} pair {a}{b}");
                    if let Some(w) = walk {
                        assert_eq!(w.len() % 2, 1);
                        assert_eq!(w[0], sym(a));
                        assert_eq!(w[w.len() - 1], sym(b));
                        for pair in w.windows(2) {
                            assert!(h.has_edge(&pair[0], &pair[1]));
                        }
                    }
                }
            }
        }
    }

    #[test]
    fn edge_into_triangle_is_reachable() {
        let t = path_graph(&["u", "v"]);
        let k3 = complete_symbol_graph(&["1", "2", "3"]);
        let alpha = coloring(&[("u", "1"), ("v", "2")]);
        let beta = coloring(&[("u", "2"), ("v", "3")]);
        assert!(tree_reach(&t, &vx("u"), &alpha, &beta, &k3).unwrap());
        let seq = tree_reconfigure_sequence(&t, &vx("u"), &alpha, &beta, &k3)
            .unwrap()
            .unwrap();
        // cross-check against the exhaustive oracle
        let space = crate::engine::spaces::HColoringSpace::new(
            t.to_digraph(),
            k3.to_digraph(),
            &alpha,
            &beta,
        )
        .unwrap();
        let (oracle, _) = bfs_reach(&space, &SearchLimits::default()).unwrap();
        assert!(oracle.is_some());
        let packed: Vec<_> = seq
            .iter()
            .map(|c| {
                space
                    .vertex_order()
                    .iter()
                    .map(|v| c[v].clone())
                    .collect::<Vec<_>>()
            })
            .collect();
        assert!(verify_sequence(&space, &ReconfigurationSequence::new(packed)));
    }

    #[test]
    fn swapped_bipartite_colors_are_stuck() {
        let t = path_graph(&["u", "v"]);
        let k2 = complete_symbol_graph(&["1", "2"]);
        let alpha = coloring(&[("u", "1"), ("v", "2")]);
        let beta = coloring(&[("u", "2"), ("v", "1")]);
        assert!(!tree_reach(&t, &vx("u"), &alpha, &beta, &k2).unwrap());
        assert!(tree_reconfigure_sequence(&t, &vx("u"), &alpha, &beta, &k2)
            .unwrap()
            .is_none());
    }

    #[test]
    fn identical_colorings_are_trivially_reachable() {
        let t = path_graph(&["u", "v", "w"]);
        let k3 = complete_symbol_graph(&["1", "2", "3"]);
        let alpha = coloring(&[("u", "1"), ("v", "2"), ("w", "1")]);
        assert!(tree_reach(&t, &vx("u"), &alpha, &alpha, &k3).unwrap());
        let seq = tree_reconfigure_sequence(&t, &vx("u"), &alpha, &alpha, &k3)
            .unwrap()
            .unwrap();
        assert_eq!(seq.len(), 1);
    }

    #[test]
    fn deeper_tree_sequence_validates_and_stays_polynomial() {
        // a 7-vertex tree of depth 3
        let mut t = path_graph(&["r", "a", "b", "c"]);
        for (v, p) in [("d", "r"), ("e", "a"), ("f", "e")] {
            t.add_vertex(vx(v));
            t.add_edge(vx(v), vx(p)).unwrap();
        }
        let k3 = complete_symbol_graph(&["1", "2", "3"]);
        let alpha = coloring(&[
            ("r", "1"),
            ("a", "2"),
            ("b", "3"),
            ("c", "1"),
            ("d", "3"),
            ("e", "1"),
            ("f", "3"),
        ]);
        let beta = coloring(&[
            ("r", "3"),
            ("a", "1"),
            ("b", "2"),
            ("c", "3"),
            ("d", "1"),
            ("e", "3"),
            ("f", "2"),
        ]);
        let seq = tree_reconfigure_sequence(&t, &vx("r"), &alpha, &beta, &k3)
            .unwrap()
            .unwrap();
        let space = crate::engine::spaces::HColoringSpace::new(
            t.to_digraph(),
            k3.to_digraph(),
            &alpha,
            &beta,
        )
        .unwrap();
        let packed: Vec<_> = seq
            .iter()
            .map(|c| {
                space
                    .vertex_order()
                    .iter()
                    .map(|v| c[v].clone())
                    .collect::<Vec<_>>()
            })
            .collect();
        assert!(verify_sequence(&space, &ReconfigurationSequence::new(packed)));
        let n = t.vertex_count();
        let walk_bound = 2 * k3.vertex_count() + 2;
        assert!(seq.len() <= 4 * (n * walk_bound + n * n));
    }

    #[test]
    fn forests_and_isolated_vertices() {
        let mut g = path_graph(&["u", "v"]);
        g.add_vertex(vx("lone"));
        let mut h = Graph::new();
        h.add_vertex(sym("1"));
        h.add_vertex(sym("2"));
        h.add_edge(sym("1"), sym("2")).unwrap();
        // the lone vertex can jump colors freely even though the pattern
        // is bipartite
        let alpha = coloring(&[("u", "1"), ("v", "2"), ("lone", "1")]);
        let beta = coloring(&[("u", "1"), ("v", "2"), ("lone", "2")]);
        assert!(forest_recoloring_reach(&g, &alpha, &beta, &h).unwrap());
        let seq = forest_recoloring_sequence(&g, &alpha, &beta, &h)
            .unwrap()
            .unwrap();
        assert_eq!(seq.len(), 2);
        // but the edge component still obeys the criterion
        let stuck = coloring(&[("u", "2"), ("v", "1"), ("lone", "1")]);
        assert!(!forest_recoloring_reach(&g, &alpha, &stuck, &h).unwrap());
    }

    fn star(m: usize) -> (Digraph<Vertex>, BTreeMap<Vertex, u8>) {
        let mut g = Digraph::new();
        g.add_vertex(vx("hub"));
        let mut labels = BTreeMap::new();
        labels.insert(vx("hub"), 0u8);
        for i in 0..m {
            let leaf = vx(&format!("leaf{i}"));
            g.add_vertex(leaf.clone());
            g.add_arc(vx("hub"), leaf.clone()).unwrap();
            labels.insert(leaf, 1u8);
        }
        (g, labels)
    }

    /// Smallest core size admitting a label-preserving homomorphism, by
    /// exhaustive subset and assignment search.
    fn brute_minimum_core(g: &Digraph<Vertex>, labels: &BTreeMap<Vertex, u8>) -> usize {
        let verts: Vec<Vertex> = g.vertices().cloned().collect();
        for size in 1..=verts.len() {
            let mut subset = vec![0usize; size];
            if search_subsets(g, labels, &verts, &mut subset, 0, 0, size) {
                return size;
            }
        }
        verts.len()
    }

    fn search_subsets(
        g: &Digraph<Vertex>,
        labels: &BTreeMap<Vertex, u8>,
        verts: &[Vertex],
        subset: &mut Vec<usize>,
        pos: usize,
        from: usize,
        size: usize,
    ) -> bool {
        if pos == size {
            let core: BTreeSet<Vertex> = subset.iter().map(|i| verts[*i].clone()).collect();
            return hom_exists(g, labels, &core, verts, &mut BTreeMap::new(), 0);
        }
        for i in from..verts.len() {
            subset[pos] = i;
            if search_subsets(g, labels, verts, subset, pos + 1, i + 1, size) {
                return true;
            }
        }
        false
    }

    fn hom_exists(
        g: &Digraph<Vertex>,
        labels: &BTreeMap<Vertex, u8>,
        core: &BTreeSet<Vertex>,
        verts: &[Vertex],
        partial: &mut BTreeMap<Vertex, Vertex>,
        i: usize,
    ) -> bool {
        if i == verts.len() {
            return true;
        }
        let v = &verts[i];
        for image in core {
            if labels[image] != labels[v] {
                continue;
            }
            partial.insert(v.clone(), image.clone());
            let consistent = g.arcs().all(|(x, y)| {
                match (partial.get(x), partial.get(y)) {
                    (Some(ix), Some(iy)) => g.has_arc(ix, iy),
                    _ => true,
                }
            });
            if consistent && hom_exists(g, labels, core, verts, partial, i + 1) {
                return true;
            }
            partial.remove(v);
        }
        false
    }

    #[test]
    fn star_contracts_to_two_vertices() {
        let (g, labels) = star(4);
        let (_, forest) = exact_treedepth(&g.underlying_graph()).unwrap();
        let witness = treedepth_core(&g, &labels, &forest).unwrap();
        assert!(verify_core(&g, &labels, &witness));
        assert_eq!(witness.core.len(), 2);
        assert_eq!(brute_minimum_core(&g, &labels), 2);
    }

    #[test]
    fn distinct_labels_forbid_contraction() {
        let (g, _) = star(3);
        let labels: BTreeMap<Vertex, u8> = g
            .vertices()
            .enumerate()
            .map(|(i, v)| (v.clone(), i as u8))
            .collect();
        let (_, forest) = exact_treedepth(&g.underlying_graph()).unwrap();
        let witness = treedepth_core(&g, &labels, &forest).unwrap();
        assert!(verify_core(&g, &labels, &witness));
        assert_eq!(witness.core.len(), g.vertex_count());
        for v in g.vertices() {
            assert_eq!(&witness.mu[v], v);
        }
    }

    #[test]
    fn two_vertex_path_is_its_own_core() {
        let mut g = Digraph::new();
        g.add_vertex(vx("u"));
        g.add_vertex(vx("v"));
        g.add_arc(vx("u"), vx("v")).unwrap();
        let labels: BTreeMap<Vertex, u8> = [(vx("u"), 0), (vx("v"), 0)].into();
        let (_, forest) = exact_treedepth(&g.underlying_graph()).unwrap();
        let witness = treedepth_core(&g, &labels, &forest).unwrap();
        assert!(verify_core(&g, &labels, &witness));
        assert_eq!(witness.core.len(), 2);
    }

    #[test]
    fn verify_core_rejects_broken_witnesses() {
        let (g, labels) = star(2);
        let (_, forest) = exact_treedepth(&g.underlying_graph()).unwrap();
        let witness = treedepth_core(&g, &labels, &forest).unwrap();

        // mapping adjacent vertices to non-adjacent images
        let mut broken = witness.clone();
        broken.mu.insert(vx("hub"), vx("leaf0"));
        assert!(!verify_core(&g, &labels, &broken));

        // label-changing map
        let mut relabeled = witness.clone();
        relabeled.mu.insert(vx("leaf1"), vx("hub"));
        assert!(!verify_core(&g, &labels, &relabeled));
    }

    /// Pattern with three colors where arcs go one way around a triangle
    /// plus a loopless "free" vertex pair; used as a small digraph H.
    fn small_pattern() -> Digraph<Symbol> {
        let mut h = Digraph::new();
        for s in ["1", "2", "3"] {
            h.add_vertex(sym(s));
        }
        for (u, v) in [("1", "2"), ("2", "1"), ("2", "3"), ("3", "2"), ("1", "3"), ("3", "1")] {
            h.add_arc(sym(u), sym(v)).unwrap();
        }
        h
    }

    #[test]
    fn treedepth_solver_agrees_with_direct_search() {
        let (g, _) = star(3);
        let (_, forest) = exact_treedepth(&g.underlying_graph()).unwrap();
        let h = small_pattern();
        let alpha = coloring(&[("hub", "1"), ("leaf0", "2"), ("leaf1", "2"), ("leaf2", "3")]);
        let beta = coloring(&[("hub", "2"), ("leaf0", "1"), ("leaf1", "1"), ("leaf2", "1")]);
        let limits = SearchLimits::default();
        let (verdict, seq) = treedepth_reach(&g, &forest, &alpha, &beta, &h, &limits).unwrap();
        let space =
            engine::spaces::HColoringSpace::new(g.clone(), h.clone(), &alpha, &beta).unwrap();
        let (oracle, _) = bfs_reach(&space, &limits).unwrap();
        assert_eq!(verdict, oracle.is_some());
        let seq = seq.unwrap();
        let packed: Vec<_> = seq
            .iter()
            .map(|c| {
                space
                    .vertex_order()
                    .iter()
                    .map(|v| c[v].clone())
                    .collect::<Vec<_>>()
            })
            .collect();
        assert!(verify_sequence(&space, &ReconfigurationSequence::new(packed)));
    }

    #[test]
    fn equal_colorings_give_singleton_sequences() {
        let (g, _) = star(2);
        let (_, forest) = exact_treedepth(&g.underlying_graph()).unwrap();
        let h = small_pattern();
        let alpha = coloring(&[("hub", "1"), ("leaf0", "2"), ("leaf1", "2")]);
        let (verdict, seq) =
            treedepth_reach(&g, &forest, &alpha, &alpha, &h, &SearchLimits::default()).unwrap();
        assert!(verdict);
        assert_eq!(seq.unwrap().len(), 1);
    }

    #[test]
    fn full_sequences_restrict_to_core_sequences() {
        let (g, _) = star(3);
        let (_, forest) = exact_treedepth(&g.underlying_graph()).unwrap();
        let h = small_pattern();
        let alpha = coloring(&[("hub", "1"), ("leaf0", "2"), ("leaf1", "2"), ("leaf2", "2")]);
        let beta = coloring(&[("hub", "3"), ("leaf0", "2"), ("leaf1", "2"), ("leaf2", "2")]);
        let labels: BTreeMap<Vertex, (Symbol, Symbol)> = g
            .vertices()
            .map(|v| (v.clone(), (alpha[v].clone(), beta[v].clone())))
            .collect();
        let witness = treedepth_core(&g, &labels, &forest).unwrap();

        let space =
            engine::spaces::HColoringSpace::new(g.clone(), h.clone(), &alpha, &beta).unwrap();
        let (full, _) = bfs_reach(&space, &SearchLimits::default()).unwrap();
        let full = full.expect("reachable");
        // restrict each configuration to the core, drop repeats
        let core_g = induced_digraph(&g, &witness.core);
        let core_space = engine::spaces::HColoringSpace::new(
            core_g,
            h.clone(),
            &witness.core.iter().map(|v| (v.clone(), alpha[v].clone())).collect(),
            &witness.core.iter().map(|v| (v.clone(), beta[v].clone())).collect(),
        )
        .unwrap();
        let mut restricted: Vec<Vec<Symbol>> = Vec::new();
        for step in &full.steps {
            let unpacked = space.unpack(step);
            let projected: Vec<Symbol> = core_space
                .vertex_order()
                .iter()
                .map(|v| unpacked[v].clone())
                .collect();
            if restricted.last() != Some(&projected) {
                restricted.push(projected);
            }
        }
        assert!(verify_sequence(
            &core_space,
            &ReconfigurationSequence::new(restricted)
        ));
    }
}
