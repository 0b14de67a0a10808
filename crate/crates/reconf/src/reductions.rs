//! Reductions from H-word reachability to shortest-path, independent-set,
//! list-coloring and k-coloring reconfiguration, and the lift of directed
//! cycle homomorphism instances to undirected ones.
//!
//! Every construction ships its decoder, so instances can be checked
//! against independent oracles: configurations of the target problem are
//! in bijection with (or decode onto) H-words, and single moves correspond
//! to single symbol changes.

use std::collections::{BTreeMap, BTreeSet};

use crate::alphabet::{fresh_symbol, Symbol, Word};
use crate::engine::spaces::{ColoringSpace, HColoringSpace, ShortestPathSpace, TokenJumpSpace};
use crate::error::{Error, Result};
use crate::graph::{BucketArrangement, Digraph, Graph, Vertex};
use crate::hword::is_h_word;

fn check_instance_words(h: &Digraph<Symbol>, s: &Word, t: &Word) -> Result<usize> {
    if s.len() != t.len() || s.is_empty() {
        return Err(Error::validation(
            "instance words must be non-empty and of equal length",
        ));
    }
    for w in [s, t] {
        if !is_h_word(w, h)? {
            return Err(Error::validation(format!("{w} is not an H-word")));
        }
    }
    Ok(s.len())
}

/// Layered graph whose shortest source-sink paths are the H-words of a
/// fixed length.
#[derive(Clone, Debug)]
pub struct ShortestPathInstance {
    pub graph: Graph<Vertex>,
    pub source: Vertex,
    pub sink: Vertex,
    pub path_a: Vec<Vertex>,
    pub path_b: Vec<Vertex>,
    pub layers: Vec<BTreeSet<Vertex>>,
    length: usize,
    vertex_symbol: BTreeMap<Vertex, (usize, Symbol)>,
    symbol_vertex: BTreeMap<(usize, Symbol), Vertex>,
}

/// One layer of candidate vertices per word position, a source before and
/// a sink after; interior edges follow the arcs of `h`.
pub fn to_shortest_path(h: &Digraph<Symbol>, s: &Word, t: &Word) -> Result<ShortestPathInstance> {
    let n = check_instance_words(h, s, t)?;
    let mut graph = Graph::new();
    let source = Vertex::new("src");
    let sink = Vertex::new("snk");
    graph.add_vertex(source.clone());
    graph.add_vertex(sink.clone());

    let mut vertex_symbol = BTreeMap::new();
    let mut symbol_vertex = BTreeMap::new();
    let mut layers = vec![BTreeSet::from([source.clone()])];
    for i in 1..=n {
        let mut layer = BTreeSet::new();
        for a in h.vertices() {
            let v = Vertex::new(format!("v{i}:{a}"));
            graph.add_vertex(v.clone());
            layer.insert(v.clone());
            vertex_symbol.insert(v.clone(), (i, a.clone()));
            symbol_vertex.insert((i, a.clone()), v);
        }
        layers.push(layer);
    }
    layers.push(BTreeSet::from([sink.clone()]));

    for a in h.vertices() {
        graph.add_edge(source.clone(), symbol_vertex[&(1, a.clone())].clone())?;
        graph.add_edge(symbol_vertex[&(n, a.clone())].clone(), sink.clone())?;
    }
    for i in 1..n {
        for (a, b) in h.arcs() {
            graph.add_edge(
                symbol_vertex[&(i, a.clone())].clone(),
                symbol_vertex[&(i + 1, b.clone())].clone(),
            )?;
        }
    }

    let mut instance = ShortestPathInstance {
        graph,
        source,
        sink,
        path_a: Vec::new(),
        path_b: Vec::new(),
        layers,
        length: n,
        vertex_symbol,
        symbol_vertex,
    };
    instance.path_a = instance.word_to_path(s)?;
    instance.path_b = instance.word_to_path(t)?;
    Ok(instance)
}

impl ShortestPathInstance {
    pub fn word_length(&self) -> usize {
        self.length
    }

    pub fn bucket_arrangement(&self) -> BucketArrangement<Vertex> {
        BucketArrangement::new(self.layers.clone())
    }

    pub fn word_to_path(&self, w: &Word) -> Result<Vec<Vertex>> {
        if w.len() != self.length {
            return Err(Error::validation(format!(
                "expected a word of length {}, got {}",
                self.length,
                w.len()
            )));
        }
        let mut path = vec![self.source.clone()];
        for (i, sym) in w.iter().enumerate() {
            let v = self
                .symbol_vertex
                .get(&(i + 1, sym.clone()))
                .ok_or_else(|| Error::validation(format!("unknown symbol {sym}")))?;
            path.push(v.clone());
        }
        path.push(self.sink.clone());
        Ok(path)
    }

    pub fn path_to_word(&self, path: &[Vertex]) -> Result<Word> {
        if path.len() != self.length + 2 {
            return Err(Error::validation(format!(
                "a shortest path here has {} vertices, got {}",
                self.length + 2,
                path.len()
            )));
        }
        if path[0] != self.source || path[path.len() - 1] != self.sink {
            return Err(Error::validation("path must run from the source to the sink"));
        }
        for pair in path.windows(2) {
            if !self.graph.has_edge(&pair[0], &pair[1]) {
                return Err(Error::validation(format!(
                    "{} {} is not an edge",
                    pair[0], pair[1]
                )));
            }
        }
        let mut out = Vec::with_capacity(self.length);
        for (i, v) in path[1..=self.length].iter().enumerate() {
            match self.vertex_symbol.get(v) {
                Some((layer, sym)) if *layer == i + 1 => out.push(sym.clone()),
                _ => {
                    return Err(Error::validation(format!(
                        "vertex {v} does not lie on layer {}",
                        i + 1
                    )))
                }
            }
        }
        Ok(Word::new(out))
    }

    pub fn space(&self) -> Result<ShortestPathSpace> {
        ShortestPathSpace::new(
            self.graph.clone(),
            self.source.clone(),
            self.sink.clone(),
            self.path_a.clone(),
            self.path_b.clone(),
        )
    }
}

/// Complement-style construction: one clique per word position, cross
/// edges on the non-arcs of `h`. Maximum independent sets pick one vertex
/// per clique and are exactly the H-words.
#[derive(Clone, Debug)]
pub struct MaxIsInstance {
    pub graph: Graph<Vertex>,
    pub set_a: BTreeSet<Vertex>,
    pub set_b: BTreeSet<Vertex>,
    pub cliques: Vec<BTreeSet<Vertex>>,
    length: usize,
    vertex_symbol: BTreeMap<Vertex, (usize, Symbol)>,
    symbol_vertex: BTreeMap<(usize, Symbol), Vertex>,
}

pub fn to_mis(h: &Digraph<Symbol>, s: &Word, t: &Word) -> Result<MaxIsInstance> {
    let n = check_instance_words(h, s, t)?;
    let mut graph = Graph::new();
    let mut vertex_symbol = BTreeMap::new();
    let mut symbol_vertex = BTreeMap::new();
    let mut cliques = Vec::new();
    for i in 1..=n {
        let mut clique = BTreeSet::new();
        for a in h.vertices() {
            let v = Vertex::new(format!("v{i}:{a}"));
            graph.add_vertex(v.clone());
            clique.insert(v.clone());
            vertex_symbol.insert(v.clone(), (i, a.clone()));
            symbol_vertex.insert((i, a.clone()), v);
        }
        cliques.push(clique);
    }
    for clique in &cliques {
        let members: Vec<&Vertex> = clique.iter().collect();
        for (j, u) in members.iter().enumerate() {
            for v in &members[j + 1..] {
                graph.add_edge((*u).clone(), (*v).clone())?;
            }
        }
    }
    for i in 1..n {
        for a in h.vertices() {
            for b in h.vertices() {
                if !h.has_arc(a, b) {
                    graph.add_edge(
                        symbol_vertex[&(i, a.clone())].clone(),
                        symbol_vertex[&(i + 1, b.clone())].clone(),
                    )?;
                }
            }
        }
    }
    let mut instance = MaxIsInstance {
        graph,
        set_a: BTreeSet::new(),
        set_b: BTreeSet::new(),
        cliques,
        length: n,
        vertex_symbol,
        symbol_vertex,
    };
    instance.set_a = instance.word_to_set(s)?;
    instance.set_b = instance.word_to_set(t)?;
    Ok(instance)
}

impl MaxIsInstance {
    pub fn word_length(&self) -> usize {
        self.length
    }

    pub fn bucket_arrangement(&self) -> BucketArrangement<Vertex> {
        BucketArrangement::new(self.cliques.clone())
    }

    pub fn word_to_set(&self, w: &Word) -> Result<BTreeSet<Vertex>> {
        if w.len() != self.length {
            return Err(Error::validation(format!(
                "expected a word of length {}, got {}",
                self.length,
                w.len()
            )));
        }
        let mut out = BTreeSet::new();
        for (i, sym) in w.iter().enumerate() {
            let v = self
                .symbol_vertex
                .get(&(i + 1, sym.clone()))
                .ok_or_else(|| Error::validation(format!("unknown symbol {sym}")))?;
            out.insert(v.clone());
        }
        Ok(out)
    }

    pub fn set_to_word(&self, set: &BTreeSet<Vertex>) -> Result<Word> {
        if set.len() != self.length {
            return Err(Error::validation(format!(
                "expected {} tokens, got {}",
                self.length,
                set.len()
            )));
        }
        let mut by_layer: BTreeMap<usize, Symbol> = BTreeMap::new();
        for v in set {
            let (layer, sym) = self
                .vertex_symbol
                .get(v)
                .ok_or_else(|| Error::validation(format!("unknown vertex {v}")))?;
            if by_layer.insert(*layer, sym.clone()).is_some() {
                return Err(Error::validation(format!(
                    "two tokens in the clique of position {layer}"
                )));
            }
        }
        Ok((1..=self.length).map(|i| by_layer[&i].clone()).collect())
    }

    pub fn space(&self) -> Result<TokenJumpSpace> {
        TokenJumpSpace::new(self.graph.clone(), self.length, &self.set_a, &self.set_b)
    }
}

/// A hub path with parallel interior vertices between consecutive hubs.
/// Hub colors spell a word over the base symbols; each interior vertex
/// forbids one non-arc from appearing as a subword.
#[derive(Clone, Debug)]
pub struct ListColoringInstance {
    pub graph: Graph<Vertex>,
    pub lists: BTreeMap<Vertex, BTreeSet<Symbol>>,
    pub coloring_a: BTreeMap<Vertex, Symbol>,
    pub coloring_b: BTreeMap<Vertex, Symbol>,
    pub hubs: Vec<Vertex>,
    /// interior vertex -> (column index, forbidden symbol pair)
    pub onions: BTreeMap<Vertex, (usize, (Symbol, Symbol))>,
    /// color -> base symbol (primed copies share their base image)
    pub base_of: BTreeMap<Symbol, Symbol>,
    /// base symbol -> primed copy
    pub prime_of: BTreeMap<Symbol, Symbol>,
}

pub fn to_list_coloring(h: &Digraph<Symbol>, s: &Word, t: &Word) -> Result<ListColoringInstance> {
    let n = check_instance_words(h, s, t)?;
    let sigma: Vec<Symbol> = h.vertices().cloned().collect();

    let mut taken: BTreeSet<Symbol> = sigma.iter().cloned().collect();
    let mut base_of = BTreeMap::new();
    let mut prime_of = BTreeMap::new();
    for a in &sigma {
        base_of.insert(a.clone(), a.clone());
        let primed = fresh_symbol(&format!("{a}'"), &taken);
        taken.insert(primed.clone());
        base_of.insert(primed.clone(), a.clone());
        prime_of.insert(a.clone(), primed);
    }

    let forbidden: Vec<(Symbol, Symbol)> = sigma
        .iter()
        .flat_map(|a| sigma.iter().map(move |b| (a.clone(), b.clone())))
        .filter(|(a, b)| !h.has_arc(a, b))
        .collect();

    let mut graph = Graph::new();
    let mut lists = BTreeMap::new();
    let hubs: Vec<Vertex> = (1..=n).map(|i| Vertex::new(format!("u{i}"))).collect();
    for (i, hub) in hubs.iter().enumerate() {
        graph.add_vertex(hub.clone());
        // odd positions take the primed copies
        let list: BTreeSet<Symbol> = if (i + 1) % 2 == 0 {
            sigma.iter().cloned().collect()
        } else {
            sigma.iter().map(|a| prime_of[a].clone()).collect()
        };
        lists.insert(hub.clone(), list);
    }

    let mut onions = BTreeMap::new();
    for col in 1..n {
        for (j, (a, b)) in forbidden.iter().enumerate() {
            let v = Vertex::new(format!("o{col}_{}", j + 1));
            graph.add_vertex(v.clone());
            graph.add_edge(hubs[col - 1].clone(), v.clone())?;
            graph.add_edge(v.clone(), hubs[col].clone())?;
            let list: BTreeSet<Symbol> = if col % 2 == 0 {
                [a.clone(), prime_of[b].clone()].into()
            } else {
                [prime_of[a].clone(), b.clone()].into()
            };
            lists.insert(v.clone(), list);
            onions.insert(v.clone(), (col, (a.clone(), b.clone())));
        }
    }

    let mut instance = ListColoringInstance {
        graph,
        lists,
        coloring_a: BTreeMap::new(),
        coloring_b: BTreeMap::new(),
        hubs,
        onions,
        base_of,
        prime_of,
    };
    instance.coloring_a = instance.extend_word(s)?;
    instance.coloring_b = instance.extend_word(t)?;
    Ok(instance)
}

impl ListColoringInstance {
    pub fn word_length(&self) -> usize {
        self.hubs.len()
    }

    /// Hub and interior columns in order form a bucket arrangement.
    pub fn bucket_arrangement(&self) -> BucketArrangement<Vertex> {
        let n = self.hubs.len();
        let mut buckets: Vec<BTreeSet<Vertex>> = Vec::with_capacity(2 * n - 1);
        for (i, hub) in self.hubs.iter().enumerate() {
            buckets.push(BTreeSet::from([hub.clone()]));
            if i + 1 < n {
                buckets.push(
                    self.onions
                        .iter()
                        .filter(|(_, (col, _))| *col == i + 1)
                        .map(|(v, _)| v.clone())
                        .collect(),
                );
            }
        }
        BucketArrangement::new(buckets)
    }

    pub fn hub_color(&self, position: usize, sym: &Symbol) -> Symbol {
        if (position + 1) % 2 == 0 {
            sym.clone()
        } else {
            self.prime_of[sym].clone()
        }
    }

    /// The canonical proper extension of an H-word: hubs take the word's
    /// symbols (primed on odd positions), every interior vertex takes the
    /// first list element avoiding its two hub neighbors.
    pub fn extend_word(&self, w: &Word) -> Result<BTreeMap<Vertex, Symbol>> {
        if w.len() != self.hubs.len() {
            return Err(Error::validation(format!(
                "expected a word of length {}, got {}",
                self.hubs.len(),
                w.len()
            )));
        }
        let mut coloring = BTreeMap::new();
        for (i, sym) in w.iter().enumerate() {
            if !self.prime_of.contains_key(sym) {
                return Err(Error::validation(format!("unknown symbol {sym}")));
            }
            coloring.insert(self.hubs[i].clone(), self.hub_color(i, sym));
        }
        for (v, (col, _)) in &self.onions {
            let left = &coloring[&self.hubs[col - 1]];
            let right = &coloring[&self.hubs[*col]];
            let choice = self.lists[v]
                .iter()
                .find(|c| *c != left && *c != right)
                .ok_or_else(|| {
                    Error::validation(format!(
                        "no proper color for {v}: the word is not an H-word"
                    ))
                })?;
            coloring.insert(v.clone(), choice.clone());
        }
        Ok(coloring)
    }

    /// Reads the word spelled by the hub colors of any proper coloring.
    pub fn decode_coloring(&self, coloring: &BTreeMap<Vertex, Symbol>) -> Result<Word> {
        self.hubs
            .iter()
            .map(|hub| {
                let color = coloring
                    .get(hub)
                    .ok_or_else(|| Error::validation(format!("hub {hub} is uncolored")))?;
                self.base_of
                    .get(color)
                    .cloned()
                    .ok_or_else(|| Error::validation(format!("unknown color {color}")))
            })
            .collect()
    }

    /// Lowers one word move (position `i`, 1-based, to `sym`) to coloring
    /// moves between canonical extensions: clear interior vertices off the
    /// incoming hub color, recolor the hub, then restore the canonical
    /// extension.
    pub fn lift_word_step(
        &self,
        w: &Word,
        position: usize,
        sym: &Symbol,
    ) -> Result<Vec<BTreeMap<Vertex, Symbol>>> {
        let mut target_word: Vec<Symbol> = w.symbols().to_vec();
        target_word[position - 1] = sym.clone();
        let target = self.extend_word(&Word::new(target_word))?;
        let mut current = self.extend_word(w)?;
        let mut out = vec![current.clone()];
        let hub = &self.hubs[position - 1];
        let new_color = self.hub_color(position - 1, sym);
        let adjacent: Vec<Vertex> = self
            .onions
            .iter()
            .filter(|(_, (col, _))| *col == position || *col + 1 == position)
            .map(|(v, _)| v.clone())
            .collect();
        for v in &adjacent {
            if current[v] == new_color {
                let other = self.lists[v]
                    .iter()
                    .find(|c| **c != current[v])
                    .expect("interior lists have two colors")
                    .clone();
                current.insert(v.clone(), other);
                out.push(current.clone());
            }
        }
        current.insert(hub.clone(), new_color);
        out.push(current.clone());
        for v in &adjacent {
            if current[v] != target[v] {
                current.insert(v.clone(), target[v].clone());
                out.push(current.clone());
            }
        }
        debug_assert_eq!(current, target);
        Ok(out)
    }

    pub fn space(&self) -> Result<ColoringSpace> {
        ColoringSpace::new(
            self.graph.clone(),
            &self.lists,
            &self.coloring_a,
            &self.coloring_b,
        )
    }
}

/// Plain coloring instance with one frozen clique per original vertex.
#[derive(Clone, Debug)]
pub struct KColoringInstance {
    pub graph: Graph<Vertex>,
    pub colors: Vec<Symbol>,
    pub coloring_a: BTreeMap<Vertex, Symbol>,
    pub coloring_b: BTreeMap<Vertex, Symbol>,
}

/// Lowers a list-coloring instance: colors become `1..k`, each original
/// vertex gains a k-clique precolored in canonical order and is wired to
/// the clique members holding the colors outside its list.
pub fn list_to_plain(inst: &ListColoringInstance) -> Result<KColoringInstance> {
    let mut palette: BTreeSet<Symbol> = BTreeSet::new();
    for list in inst.lists.values() {
        palette.extend(list.iter().cloned());
    }
    let rename: BTreeMap<Symbol, Symbol> = palette
        .iter()
        .enumerate()
        .map(|(i, c)| (c.clone(), Symbol::new(format!("{}", i + 1))))
        .collect();
    let colors: Vec<Symbol> = (1..=palette.len())
        .map(|i| Symbol::new(format!("{i}")))
        .collect();

    let mut graph = inst.graph.clone();
    let originals: Vec<Vertex> = inst.graph.vertices().cloned().collect();
    let mut taken: BTreeSet<Symbol> = originals.iter().map(|v| Symbol::new(v.as_str())).collect();
    let mut coloring_a: BTreeMap<Vertex, Symbol> = inst
        .coloring_a
        .iter()
        .map(|(v, c)| (v.clone(), rename[c].clone()))
        .collect();
    let mut coloring_b: BTreeMap<Vertex, Symbol> = inst
        .coloring_b
        .iter()
        .map(|(v, c)| (v.clone(), rename[c].clone()))
        .collect();

    for v in &originals {
        let mut members = Vec::with_capacity(colors.len());
        for color in &colors {
            let name = fresh_symbol(&format!("{v}.c{color}"), &taken);
            taken.insert(name.clone());
            let member = Vertex::new(name.as_str());
            graph.add_vertex(member.clone());
            coloring_a.insert(member.clone(), color.clone());
            coloring_b.insert(member.clone(), color.clone());
            members.push(member);
        }
        for (i, a) in members.iter().enumerate() {
            for b in &members[i + 1..] {
                graph.add_edge(a.clone(), b.clone())?;
            }
        }
        let list: BTreeSet<Symbol> = inst.lists[v].iter().map(|c| rename[c].clone()).collect();
        for (color, member) in colors.iter().zip(&members) {
            if !list.contains(color) {
                graph.add_edge(v.clone(), member.clone())?;
            }
        }
    }

    Ok(KColoringInstance {
        graph,
        colors,
        coloring_a,
        coloring_b,
    })
}

impl KColoringInstance {
    pub fn k(&self) -> usize {
        self.colors.len()
    }

    pub fn space(&self) -> Result<ColoringSpace> {
        let full: BTreeSet<Symbol> = self.colors.iter().cloned().collect();
        let lists: BTreeMap<Vertex, BTreeSet<Symbol>> = self
            .graph
            .vertices()
            .map(|v| (v.clone(), full.clone()))
            .collect();
        ColoringSpace::new(self.graph.clone(), &lists, &self.coloring_a, &self.coloring_b)
    }
}

/// A directed-cycle homomorphism instance lifted to an undirected one.
/// The second components of the lifted colors form a frozen 3-coloring
/// that reimposes the direction.
#[derive(Clone, Debug)]
pub struct CycleLiftInstance {
    pub base: Digraph<Symbol>,
    pub directed_cycle: Digraph<Vertex>,
    pub cycle: Graph<Vertex>,
    pub lifted: Graph<Symbol>,
    pub coloring_a: BTreeMap<Vertex, Symbol>,
    pub coloring_b: BTreeMap<Vertex, Symbol>,
    pub alpha: BTreeMap<Vertex, Symbol>,
    pub beta: BTreeMap<Vertex, Symbol>,
    /// lifted color -> (base color, phase)
    pub parts: BTreeMap<Symbol, (Symbol, u8)>,
    lift_of: BTreeMap<(Symbol, u8), Symbol>,
}

/// Builds the lifted pattern over base-times-phase colors and the lifted
/// colorings `(alpha[i], i mod 3)` of the undirected cycle. The cycle
/// length must be a positive multiple of 3.
pub fn lift_cycle(
    base: &Digraph<Symbol>,
    alpha: &[Symbol],
    beta: &[Symbol],
) -> Result<CycleLiftInstance> {
    let len = alpha.len();
    if len == 0 || len % 3 != 0 {
        return Err(Error::validation(format!(
            "cycle length must be a positive multiple of 3, got {len}"
        )));
    }
    if beta.len() != len {
        return Err(Error::validation("both colorings must color the whole cycle"));
    }
    for coloring in [alpha, beta] {
        for i in 0..len {
            let (a, b) = (&coloring[i], &coloring[(i + 1) % len]);
            if !base.has_arc(a, b) {
                return Err(Error::validation(format!(
                    "({a}, {b}) is not an arc, so this is not a valid directed-cycle coloring"
                )));
            }
        }
    }

    let mut taken: BTreeSet<Symbol> = base.vertices().cloned().collect();
    let mut lifted = Graph::new();
    let mut parts = BTreeMap::new();
    let mut lift_of = BTreeMap::new();
    for a in base.vertices() {
        for phase in 0u8..3 {
            let sym = fresh_symbol(&format!("({a},{phase})"), &taken);
            taken.insert(sym.clone());
            lifted.add_vertex(sym.clone());
            parts.insert(sym.clone(), (a.clone(), phase));
            lift_of.insert((a.clone(), phase), sym);
        }
    }
    for (a, b) in base.arcs() {
        for phase in 0u8..3 {
            lifted.add_edge(
                lift_of[&(a.clone(), phase)].clone(),
                lift_of[&(b.clone(), (phase + 1) % 3)].clone(),
            )?;
        }
    }

    let verts: Vec<Vertex> = (0..len).map(|i| Vertex::new(format!("c{i:02}"))).collect();
    let mut cycle = Graph::new();
    let mut directed_cycle = Digraph::new();
    for v in &verts {
        cycle.add_vertex(v.clone());
        directed_cycle.add_vertex(v.clone());
    }
    for i in 0..len {
        cycle.add_edge(verts[i].clone(), verts[(i + 1) % len].clone())?;
        directed_cycle.add_arc(verts[i].clone(), verts[(i + 1) % len].clone())?;
    }

    let lift = |coloring: &[Symbol]| -> BTreeMap<Vertex, Symbol> {
        verts
            .iter()
            .enumerate()
            .map(|(i, v)| {
                (
                    v.clone(),
                    lift_of[&(coloring[i].clone(), (i % 3) as u8)].clone(),
                )
            })
            .collect()
    };
    let coloring_a = lift(alpha);
    let coloring_b = lift(beta);
    let plain = |coloring: &[Symbol]| -> BTreeMap<Vertex, Symbol> {
        verts
            .iter()
            .cloned()
            .zip(coloring.iter().cloned())
            .collect()
    };

    Ok(CycleLiftInstance {
        base: base.clone(),
        directed_cycle,
        cycle,
        lifted,
        coloring_a,
        coloring_b,
        alpha: plain(alpha),
        beta: plain(beta),
        parts,
        lift_of,
    })
}

impl CycleLiftInstance {
    pub fn directed_space(&self) -> Result<HColoringSpace<Vertex>> {
        HColoringSpace::new(
            self.directed_cycle.clone(),
            self.base.clone(),
            &self.alpha,
            &self.beta,
        )
    }

    pub fn lifted_space(&self) -> Result<HColoringSpace<Vertex>> {
        HColoringSpace::new(
            self.cycle.to_digraph(),
            self.lifted.to_digraph(),
            &self.coloring_a,
            &self.coloring_b,
        )
    }

    /// The lifted color for a base color at a phase.
    pub fn lifted_color(&self, base: &Symbol, phase: u8) -> Option<&Symbol> {
        self.lift_of.get(&(base.clone(), phase))
    }

    /// The phase pattern `i mod 3` that every reachable coloring keeps.
    pub fn phases_frozen(&self, coloring: &BTreeMap<Vertex, Symbol>) -> bool {
        self.cycle.vertices().enumerate().all(|(i, v)| {
            coloring
                .get(v)
                .and_then(|c| self.parts.get(c))
                .is_some_and(|(_, phase)| *phase == (i % 3) as u8)
        })
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::engine::{bfs_reach, verify_sequence, SearchLimits, Space};
    use crate::graph::verify_bucket_arrangement;

    fn w(names: &str) -> Word {
        Word::from_names(names.split_whitespace())
    }

    fn sym(s: &str) -> Symbol {
        Symbol::new(s)
    }

    /// Three symbols with all arcs present except (a,b) and (b,b).
    fn sample_h() -> Digraph<Symbol> {
        let mut h = Digraph::new();
        for s in ["a", "b", "c"] {
            h.add_vertex(sym(s));
        }
        for (u, v) in [
            ("a", "a"),
            ("a", "c"),
            ("b", "a"),
            ("b", "c"),
            ("c", "a"),
            ("c", "b"),
            ("c", "c"),
        ] {
            h.add_arc(sym(u), sym(v)).unwrap();
        }
        h
    }

    #[test]
    fn shortest_path_instance_shape() {
        let h = sample_h();
        let inst = to_shortest_path(&h, &w("a c"), &w("c b")).unwrap();
        // 2 endpoints + 2 layers of 3
        assert_eq!(inst.graph.vertex_count(), 8);
        assert_eq!(inst.path_a.len(), 4);
        assert_eq!(inst.path_b.len(), 4);
        assert!(verify_bucket_arrangement(&inst.graph, &inst.bucket_arrangement()).unwrap());
        let layout = inst.bucket_arrangement().layout();
        let bw = crate::graph::bandwidth_of_layout(&inst.graph, &layout).unwrap();
        assert!(bw <= 2 * 3);
    }

    #[test]
    fn path_word_bijection_roundtrips() {
        let h = sample_h();
        let inst = to_shortest_path(&h, &w("a c a"), &w("c c b")).unwrap();
        let mut count = 0;
        for a in ["a", "b", "c"] {
            for b in ["a", "b", "c"] {
                for c in ["a", "b", "c"] {
                    let word = w(&format!("{a} {b} {c}"));
                    if is_h_word(&word, &h).unwrap() {
                        let path = inst.word_to_path(&word).unwrap();
                        assert_eq!(inst.path_to_word(&path).unwrap(), word);
                        count += 1;
                    }
                }
            }
        }
        assert!(count > 5);
    }

    #[test]
    fn non_shortest_paths_fail_to_decode() {
        let h = sample_h();
        let inst = to_shortest_path(&h, &w("a c"), &w("c b")).unwrap();
        let mut path = inst.path_a.clone();
        path.swap(1, 2);
        assert!(inst.path_to_word(&path).is_err());
        assert!(inst.path_to_word(&path[..3]).is_err());
    }

    #[test]
    fn shortest_path_space_matches_word_moves() {
        let h = sample_h();
        let inst = to_shortest_path(&h, &w("a c"), &w("c b")).unwrap();
        let space = inst.space().unwrap();
        let (seq, _) = bfs_reach(&space, &SearchLimits::default()).unwrap();
        let seq = seq.expect("reachable");
        assert!(verify_sequence(&space, &seq));
        for pair in seq.steps.windows(2) {
            let before = inst.path_to_word(&pair[0]).unwrap();
            let after = inst.path_to_word(&pair[1]).unwrap();
            let diff = before
                .iter()
                .zip(after.iter())
                .filter(|(x, y)| x != y)
                .count();
            assert_eq!(diff, 1);
        }
    }

    /// All maximum independent sets, by exhaustive search.
    fn maximum_independent_sets(g: &Graph<Vertex>) -> (usize, Vec<BTreeSet<Vertex>>) {
        let verts: Vec<Vertex> = g.vertices().cloned().collect();
        let mut best = 0usize;
        let mut out: Vec<BTreeSet<Vertex>> = Vec::new();
        let mut chosen: Vec<Vertex> = Vec::new();
        fn rec(
            g: &Graph<Vertex>,
            verts: &[Vertex],
            i: usize,
            chosen: &mut Vec<Vertex>,
            best: &mut usize,
            out: &mut Vec<BTreeSet<Vertex>>,
        ) {
            if i == verts.len() {
                if chosen.len() > *best {
                    *best = chosen.len();
                    out.clear();
                }
                if chosen.len() == *best {
                    out.push(chosen.iter().cloned().collect());
                }
                return;
            }
            rec(g, verts, i + 1, chosen, best, out);
            if chosen.iter().all(|v| !g.has_edge(v, &verts[i])) {
                chosen.push(verts[i].clone());
                rec(g, verts, i + 1, chosen, best, out);
                chosen.pop();
            }
        }
        rec(g, &verts, 0, &mut chosen, &mut best, &mut out);
        let sets = out.into_iter().filter(|s| s.len() == best).collect();
        (best, sets)
    }

    #[test]
    fn independent_sets_are_words() {
        let h = sample_h();
        let inst = to_mis(&h, &w("a c"), &w("c b")).unwrap();
        let (size, sets) = maximum_independent_sets(&inst.graph);
        assert_eq!(size, 2);
        for set in &sets {
            let word = inst.set_to_word(set).unwrap();
            assert!(is_h_word(&word, &h).unwrap());
            assert_eq!(&inst.word_to_set(&word).unwrap(), set);
        }
        let mut words = 0;
        for a in ["a", "b", "c"] {
            for b in ["a", "b", "c"] {
                if is_h_word(&w(&format!("{a} {b}")), &h).unwrap() {
                    words += 1;
                }
            }
        }
        assert_eq!(sets.len(), words);
    }

    #[test]
    fn token_jumps_stay_in_one_clique() {
        let h = sample_h();
        let inst = to_mis(&h, &w("a c"), &w("c b")).unwrap();
        let space = inst.space().unwrap();
        let (seq, _) = bfs_reach(&space, &SearchLimits::default()).unwrap();
        let seq = seq.expect("reachable");
        for pair in seq.steps.windows(2) {
            let before: BTreeSet<Vertex> = pair[0].iter().cloned().collect();
            let after: BTreeSet<Vertex> = pair[1].iter().cloned().collect();
            let before_word = inst.set_to_word(&before).unwrap();
            let after_word = inst.set_to_word(&after).unwrap();
            let diff = before_word
                .iter()
                .zip(after_word.iter())
                .filter(|(x, y)| x != y)
                .count();
            assert_eq!(diff, 1);
        }
    }

    #[test]
    fn onion_lists_forbid_exactly_the_non_arcs() {
        let h = sample_h();
        let inst = to_list_coloring(&h, &w("a c"), &w("c b")).unwrap();
        // width = number of non-arcs = 9 - 7
        assert_eq!(inst.onions.len(), 2);
        let ext = inst.extend_word(&w("a c")).unwrap();
        assert_eq!(ext, inst.coloring_a);
        assert_eq!(inst.decode_coloring(&ext).unwrap(), w("a c"));
        // hub u1 is odd so it takes the primed copy
        assert_eq!(ext[&Vertex::new("u1")], sym("a'"));
        assert_eq!(ext[&Vertex::new("u2")], sym("c"));
        assert!(inst.extend_word(&w("a b")).is_err());
    }

    #[test]
    fn proper_colorings_decode_to_h_words() {
        let h = sample_h();
        let inst = to_list_coloring(&h, &w("a c a"), &w("c c b")).unwrap();
        let space = inst.space().unwrap();
        let component =
            crate::engine::reachable_component(&space, &SearchLimits::default()).unwrap();
        assert!(!component.is_empty());
        for config in &component {
            let coloring = space.unpack(config);
            let word = inst.decode_coloring(&coloring).unwrap();
            assert!(is_h_word(&word, &h).unwrap(), "decoded {word}");
        }
    }

    #[test]
    fn word_steps_lift_to_few_coloring_moves() {
        let h = sample_h();
        let inst = to_list_coloring(&h, &w("a c a"), &w("c c b")).unwrap();
        let space = inst.space().unwrap();
        // change position 3 from a to b: c precedes it and (c,b) is an arc
        let steps = inst.lift_word_step(&w("a c a"), 3, &sym("b")).unwrap();
        assert!(steps.len() >= 2);
        let packed: Vec<_> = steps.iter().map(|c| space.pack(c).unwrap()).collect();
        let seq = crate::engine::ReconfigurationSequence::new(packed);
        assert!(verify_sequence(&space, &seq));
        let degree = inst.graph.degree(&inst.hubs[2]);
        assert!(seq.moves() <= 1 + degree);
    }

    #[test]
    fn plain_coloring_gadget_edge_counts() {
        let h = sample_h();
        let inst = to_list_coloring(&h, &w("a c"), &w("c b")).unwrap();
        let plain = list_to_plain(&inst).unwrap();
        assert_eq!(plain.k(), 6);
        // hubs have full-size lists of 3, so 3 gadget edges; interior
        // vertices have 2-element lists, so k - 2 = 4 gadget edges
        let hub_gadget = plain
            .graph
            .neighbors(&Vertex::new("u1"))
            .iter()
            .filter(|v| v.as_str().starts_with("u1.c"))
            .count();
        assert_eq!(hub_gadget, 3);
        let onion = inst.onions.keys().next().unwrap().clone();
        let onion_gadget = plain
            .graph
            .neighbors(&onion)
            .iter()
            .filter(|v| v.as_str().starts_with(&format!("{onion}.c")))
            .count();
        assert_eq!(onion_gadget, 4);
        assert_eq!(6 - inst.lists[&Vertex::new("u1")].len(), 3);
    }

    #[test]
    fn frozen_cliques_keep_their_colors() {
        let h = sample_h();
        let inst = to_list_coloring(&h, &w("a c"), &w("c b")).unwrap();
        let plain = list_to_plain(&inst).unwrap();
        let space = plain.space().unwrap();
        let component =
            crate::engine::reachable_component(&space, &SearchLimits::default()).unwrap();
        let gadget: Vec<Vertex> = plain
            .graph
            .vertices()
            .filter(|v| v.as_str().contains(".c"))
            .cloned()
            .collect();
        let reference = &plain.coloring_a;
        for config in &component {
            let coloring = space.unpack(config);
            for v in &gadget {
                assert_eq!(coloring[v], reference[v], "clique vertex {v} moved");
            }
        }
    }

    #[test]
    fn cycle_lift_of_a_loop_coloring() {
        let mut base = Digraph::new();
        base.add_vertex(sym("a"));
        base.add_vertex(sym("b"));
        base.add_arc(sym("a"), sym("a")).unwrap();
        base.add_arc(sym("a"), sym("b")).unwrap();
        let alpha = vec![sym("a"), sym("a"), sym("a")];
        let inst = lift_cycle(&base, &alpha, &alpha).unwrap();
        assert_eq!(inst.lifted.vertex_count(), 6);
        let lifted: Vec<&Symbol> = inst
            .cycle
            .vertices()
            .map(|v| &inst.coloring_a[v])
            .collect();
        assert_eq!(
            lifted.iter().map(|s| s.as_str()).collect::<Vec<_>>(),
            vec!["(a,0)", "(a,1)", "(a,2)"]
        );
        assert!(inst.phases_frozen(&inst.coloring_a));
    }

    #[test]
    fn cycle_lift_requires_multiples_of_three() {
        let mut base = Digraph::new();
        base.add_vertex(sym("a"));
        base.add_arc(sym("a"), sym("a")).unwrap();
        let alpha = vec![sym("a"); 4];
        assert!(lift_cycle(&base, &alpha, &alpha).is_err());
    }

    #[test]
    fn lifted_component_keeps_phases_frozen() {
        let mut base = Digraph::new();
        for s in ["a", "b"] {
            base.add_vertex(sym(s));
        }
        for (u, v) in [("a", "a"), ("a", "b"), ("b", "a")] {
            base.add_arc(sym(u), sym(v)).unwrap();
        }
        let alpha = vec![sym("a"), sym("a"), sym("a"), sym("a"), sym("b"), sym("a")];
        let beta = vec![sym("a"); 6];
        let inst = lift_cycle(&base, &alpha, &beta).unwrap();
        let space = inst.lifted_space().unwrap();
        let component =
            crate::engine::reachable_component(&space, &SearchLimits::default()).unwrap();
        for config in &component {
            assert!(inst.phases_frozen(&space.unpack(config)));
        }
        let (directed, _) =
            bfs_reach(&inst.directed_space().unwrap(), &SearchLimits::default()).unwrap();
        let (lifted, _) = bfs_reach(&space, &SearchLimits::default()).unwrap();
        assert_eq!(directed.is_some(), lifted.is_some());
    }
}
