use std::cmp::Ordering;
use std::fmt;

use thiserror::Error;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum GraphError {
    #[error("vertex {0} out of range for graph on {1} vertices")]
    OutOfRange(usize, usize),
    #[error("self-loop at vertex {0}")]
    SelfLoop(usize),
    #[error("duplicate edge {0}-{1}")]
    DuplicateEdge(usize, usize),
    #[error("vertex {0} belongs to the set it is compared against")]
    Overlap(usize),
    #[error("edge list parse error on line {line}: {msg}")]
    Parse { line: usize, msg: String },
}

/// Bitset over vertex ids. Trailing zero words are always trimmed so that
/// equality and hashing are structural.
#[derive(Clone, Default, PartialEq, Eq, Hash)]
pub struct VertexSet {
    words: Vec<u64>,
}

impl VertexSet {
    pub fn new() -> Self {
        VertexSet { words: Vec::new() }
    }

    pub fn range(n: usize) -> Self {
        let mut s = VertexSet { words: vec![u64::MAX; n.div_ceil(64)] };
        if !n.is_multiple_of(64) {
            if let Some(last) = s.words.last_mut() {
                *last = (1u64 << (n % 64)) - 1;
            }
        }
        s.trim();
        s
    }

    pub fn singleton(v: usize) -> Self {
        let mut s = VertexSet::new();
        s.insert(v);
        s
    }

    fn trim(&mut self) {
        while self.words.last() == Some(&0) {
            self.words.pop();
        }
    }

    pub fn insert(&mut self, v: usize) -> bool {
        let (w, b) = (v / 64, v % 64);
        if w >= self.words.len() {
            self.words.resize(w + 1, 0);
        }
        let had = self.words[w] >> b & 1 == 1;
        self.words[w] |= 1 << b;
        !had
    }

    pub fn remove(&mut self, v: usize) -> bool {
        let (w, b) = (v / 64, v % 64);
        if w >= self.words.len() {
            return false;
        }
        let had = self.words[w] >> b & 1 == 1;
        self.words[w] &= !(1 << b);
        self.trim();
        had
    }

    pub fn contains(&self, v: usize) -> bool {
        let w = v / 64;
        w < self.words.len() && self.words[w] >> (v % 64) & 1 == 1
    }

    pub fn len(&self) -> usize {
        self.words.iter().map(|w| w.count_ones() as usize).sum()
    }

    pub fn is_empty(&self) -> bool {
        self.words.is_empty()
    }

    pub fn first(&self) -> Option<usize> {
        self.iter().next()
    }

    pub fn iter(&self) -> Iter<'_> {
        Iter { words: &self.words, idx: 0, cur: self.words.first().copied().unwrap_or(0) }
    }

    pub fn to_vec(&self) -> Vec<usize> {
        self.iter().collect()
    }

    pub fn union(&self, other: &VertexSet) -> VertexSet {
        let (long, short) = if self.words.len() >= other.words.len() { (self, other) } else { (other, self) };
        let mut words = long.words.clone();
        for (w, s) in words.iter_mut().zip(&short.words) {
            *w |= s;
        }
        VertexSet { words }
    }

    pub fn intersection(&self, other: &VertexSet) -> VertexSet {
        let mut s = VertexSet { words: self.words.iter().zip(&other.words).map(|(a, b)| a & b).collect() };
        s.trim();
        s
    }

    pub fn difference(&self, other: &VertexSet) -> VertexSet {
        let mut words = self.words.clone();
        for (w, o) in words.iter_mut().zip(&other.words) {
            *w &= !o;
        }
        let mut s = VertexSet { words };
        s.trim();
        s
    }

    pub fn union_with(&mut self, other: &VertexSet) {
        if other.words.len() > self.words.len() {
            self.words.resize(other.words.len(), 0);
        }
        for (w, o) in self.words.iter_mut().zip(&other.words) {
            *w |= o;
        }
    }

    pub fn intersects(&self, other: &VertexSet) -> bool {
        self.words.iter().zip(&other.words).any(|(a, b)| a & b != 0)
    }

    pub fn is_subset(&self, other: &VertexSet) -> bool {
        self.words.iter().enumerate().all(|(i, w)| w & !other.words.get(i).copied().unwrap_or(0) == 0)
    }
}

impl Ord for VertexSet {
    /// Numeric order of the underlying bitmask.
    fn cmp(&self, other: &Self) -> Ordering {
        self.words
            .len()
            .cmp(&other.words.len())
            .then_with(|| self.words.iter().rev().cmp(other.words.iter().rev()))
    }
}

impl PartialOrd for VertexSet {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Debug for VertexSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_set().entries(self.iter()).finish()
    }
}

impl FromIterator<usize> for VertexSet {
    fn from_iter<I: IntoIterator<Item = usize>>(iter: I) -> Self {
        let mut s = VertexSet::new();
        for v in iter {
            s.insert(v);
        }
        s
    }
}

impl<'a> IntoIterator for &'a VertexSet {
    type Item = usize;
    type IntoIter = Iter<'a>;
    fn into_iter(self) -> Iter<'a> {
        self.iter()
    }
}

pub struct Iter<'a> {
    words: &'a [u64],
    idx: usize,
    cur: u64,
}

impl Iterator for Iter<'_> {
    type Item = usize;
    fn next(&mut self) -> Option<usize> {
        loop {
            if self.cur != 0 {
                let b = self.cur.trailing_zeros() as usize;
                self.cur &= self.cur - 1;
                return Some(self.idx * 64 + b);
            }
            self.idx += 1;
            if self.idx >= self.words.len() {
                return None;
            }
            self.cur = self.words[self.idx];
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Relation {
    Complete,
    Anticomplete,
    Mixed,
}

/// Simple undirected graph on vertices `0..n`.
#[derive(Clone, PartialEq, Eq)]
pub struct Graph {
    adj: Vec<VertexSet>,
}

impl fmt::Debug for Graph {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Graph(n={}, edges={:?})", self.n(), self.edges())
    }
}

impl Graph {
    pub fn empty(n: usize) -> Self {
        Graph { adj: vec![VertexSet::new(); n] }
    }

    pub fn from_edges(n: usize, edges: &[(usize, usize)]) -> Result<Self, GraphError> {
        let mut g = Graph::empty(n);
        for &(u, v) in edges {
            g.add_edge(u, v)?;
        }
        Ok(g)
    }

    /// Adds an edge; only used while a graph is being assembled.
    pub fn add_edge(&mut self, u: usize, v: usize) -> Result<(), GraphError> {
        let n = self.n();
        if u >= n {
            return Err(GraphError::OutOfRange(u, n));
        }
        if v >= n {
            return Err(GraphError::OutOfRange(v, n));
        }
        if u == v {
            return Err(GraphError::SelfLoop(u));
        }
        if self.adj[u].contains(v) {
            return Err(GraphError::DuplicateEdge(u.min(v), u.max(v)));
        }
        self.adj[u].insert(v);
        self.adj[v].insert(u);
        Ok(())
    }

    pub fn remove_edge(&mut self, u: usize, v: usize) {
        self.adj[u].remove(v);
        self.adj[v].remove(u);
    }

    pub fn add_vertex(&mut self) -> usize {
        self.adj.push(VertexSet::new());
        self.adj.len() - 1
    }

    pub fn n(&self) -> usize {
        self.adj.len()
    }

    pub fn vertices(&self) -> VertexSet {
        VertexSet::range(self.n())
    }

    pub fn neighbors(&self, v: usize) -> &VertexSet {
        &self.adj[v]
    }

    pub fn has_edge(&self, u: usize, v: usize) -> bool {
        self.adj[u].contains(v)
    }

    pub fn degree(&self, v: usize) -> usize {
        self.adj[v].len()
    }

    pub fn edge_count(&self) -> usize {
        self.adj.iter().map(VertexSet::len).sum::<usize>() / 2
    }

    pub fn edges(&self) -> Vec<(usize, usize)> {
        let mut out = Vec::new();
        for u in 0..self.n() {
            for v in self.adj[u].iter().filter(|&v| v > u) {
                out.push((u, v));
            }
        }
        out
    }

    /// Union of the neighbourhoods of `set`.
    pub fn neighborhood(&self, set: &VertexSet) -> VertexSet {
        let mut out = VertexSet::new();
        for v in set {
            out.union_with(&self.adj[v]);
        }
        out
    }

    /// Induced subgraph with compact ids; `map[new] = old`.
    pub fn induced(&self, set: &VertexSet) -> (Graph, Vec<usize>) {
        let map = set.to_vec();
        let mut index = vec![usize::MAX; self.n()];
        for (i, &v) in map.iter().enumerate() {
            index[v] = i;
        }
        let mut g = Graph::empty(map.len());
        for (i, &v) in map.iter().enumerate() {
            for u in self.adj[v].intersection(set).iter() {
                g.adj[i].insert(index[u]);
            }
        }
        (g, map)
    }

    pub fn is_complete_to(&self, a: &VertexSet, b: &VertexSet) -> bool {
        a.iter().all(|v| b.is_subset(&self.adj[v]))
    }

    pub fn is_anticomplete_to(&self, a: &VertexSet, b: &VertexSet) -> bool {
        a.iter().all(|v| !self.adj[v].intersects(b))
    }

    pub fn is_stable(&self, set: &VertexSet) -> bool {
        set.iter().all(|v| !self.adj[v].intersects(set))
    }

    pub fn parse_edge_list(text: &str) -> Result<Graph, GraphError> {
        let mut g: Option<Graph> = None;
        let mut expected = 0;
        for (i, raw) in text.lines().enumerate() {
            let line = i + 1;
            let toks: Vec<&str> = raw.split_whitespace().collect();
            let perr = |msg: &str| GraphError::Parse { line, msg: msg.to_string() };
            let num = |s: &str| s.parse::<usize>().map_err(|_| perr(&format!("bad integer `{s}`")));
            match toks.first() {
                None | Some(&"c") => continue,
                Some(&"p") => {
                    if g.is_some() {
                        return Err(perr("second header"));
                    }
                    if toks.len() != 3 {
                        return Err(perr("header must be `p <n> <m>`"));
                    }
                    g = Some(Graph::empty(num(toks[1])?));
                    expected = num(toks[2])?;
                }
                Some(&"e") => {
                    let gr = g.as_mut().ok_or_else(|| perr("edge before header"))?;
                    if toks.len() != 3 {
                        return Err(perr("edge must be `e <u> <v>`"));
                    }
                    gr.add_edge(num(toks[1])?, num(toks[2])?)?;
                }
                Some(t) => return Err(perr(&format!("unknown record `{t}`"))),
            }
        }
        let g = g.ok_or(GraphError::Parse { line: 0, msg: "missing header".into() })?;
        if g.edge_count() != expected {
            return Err(GraphError::Parse {
                line: 0,
                msg: format!("header announces {expected} edges, found {}", g.edge_count()),
            });
        }
        Ok(g)
    }

    pub fn to_edge_list(&self) -> String {
        let mut s = format!("p {} {}\n", self.n(), self.edge_count());
        for (u, v) in self.edges() {
            s.push_str(&format!("e {u} {v}\n"));
        }
        s
    }
}

/// Lexicographically first induced path on `t` vertices inside `within`.
pub fn find_induced_path(g: &Graph, t: usize, within: &VertexSet) -> Option<Vec<usize>> {
    if t == 0 {
        return Some(Vec::new());
    }
    let mut path = Vec::with_capacity(t);
    for v in within {
        path.push(v);
        if extend_path(g, t, within, &mut path, &VertexSet::singleton(v)) {
            return Some(path);
        }
        path.pop();
    }
    None
}

// `blocked` holds the path plus the neighbourhood of every path vertex but the last.
fn extend_path(g: &Graph, t: usize, within: &VertexSet, path: &mut Vec<usize>, blocked: &VertexSet) -> bool {
    if path.len() == t {
        return true;
    }
    let last = *path.last().unwrap();
    let cands = g.neighbors(last).intersection(within).difference(blocked);
    if cands.is_empty() {
        return false;
    }
    let mut next_blocked = blocked.union(g.neighbors(last));
    next_blocked.insert(last);
    for w in &cands {
        path.push(w);
        let mut b = next_blocked.clone();
        b.insert(w);
        if extend_path(g, t, within, path, &b) {
            return true;
        }
        path.pop();
    }
    false
}

pub fn is_pt_free(g: &Graph, t: usize) -> bool {
    find_induced_path(g, t, &g.vertices()).is_none()
}

pub fn components(g: &Graph, within: &VertexSet) -> Vec<VertexSet> {
    let mut left = within.clone();
    let mut out = Vec::new();
    while let Some(start) = left.first() {
        let mut comp = VertexSet::singleton(start);
        let mut frontier = comp.clone();
        while !frontier.is_empty() {
            let next = g.neighborhood(&frontier).intersection(within).difference(&comp);
            comp.union_with(&next);
            frontier = next;
        }
        left = left.difference(&comp);
        out.push(comp);
    }
    out
}

pub fn component_of(g: &Graph, within: &VertexSet, v: usize) -> VertexSet {
    let mut comp = VertexSet::singleton(v);
    let mut frontier = comp.clone();
    while !frontier.is_empty() {
        let next = g.neighborhood(&frontier).intersection(within).difference(&comp);
        comp.union_with(&next);
        frontier = next;
    }
    comp
}

pub fn is_connected(g: &Graph, within: &VertexSet) -> bool {
    components(g, within).len() <= 1
}

/// Two-colouring of every component of `g|within`, smallest vertex in the
/// first class; `None` if some component has an odd cycle.
pub fn bipartition(g: &Graph, within: &VertexSet) -> Option<Vec<(VertexSet, VertexSet)>> {
    let mut out = Vec::new();
    for comp in components(g, within) {
        let mut side = [VertexSet::new(), VertexSet::new()];
        let start = comp.first().unwrap();
        side[0].insert(start);
        let mut frontier = VertexSet::singleton(start);
        let mut s = 0;
        let mut seen = frontier.clone();
        while !frontier.is_empty() {
            s ^= 1;
            let next = g.neighborhood(&frontier).intersection(&comp).difference(&seen);
            side[s].union_with(&next);
            seen.union_with(&next);
            frontier = next;
        }
        if !g.is_stable(&side[0]) || !g.is_stable(&side[1]) {
            return None;
        }
        let [a, b] = side;
        out.push((a, b));
    }
    Some(out)
}

pub fn relation_of(g: &Graph, a: usize, b: &VertexSet) -> Result<Relation, GraphError> {
    if b.contains(a) {
        return Err(GraphError::Overlap(a));
    }
    let hit = g.neighbors(a).intersection(b).len();
    Ok(if hit == b.len() {
        Relation::Complete
    } else if hit == 0 {
        Relation::Anticomplete
    } else {
        Relation::Mixed
    })
}

/// The members of `b` complete to `a`.
pub fn attachments(g: &Graph, a: &VertexSet, b: &VertexSet) -> Result<VertexSet, GraphError> {
    if let Some(v) = a.intersection(b).first() {
        return Err(GraphError::Overlap(v));
    }
    let mut out = b.clone();
    for v in a {
        out = out.intersection(g.neighbors(v));
    }
    Ok(out)
}
