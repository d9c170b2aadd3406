use std::collections::BTreeMap;
use std::fmt;
use std::sync::OnceLock;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::graph::{self, Graph, GraphError, VertexSet};
use crate::lists::{update_exhaustively_within, Color, ColorSet, Coloring, ListAssignment};

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub enum Axiom {
    A,
    B,
    C,
    D,
    E,
    F,
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("axiom ({axiom:?}) violated: {message}")]
pub struct Violation {
    pub axiom: Axiom,
    pub witness: Vec<usize>,
    pub message: String,
}

/// The answer "no precoloring extension exists", reached by forced colors alone.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Error)]
#[error("forced colors conflict; no precoloring extension exists")]
pub struct NoExtension;

#[derive(Debug, Error)]
pub enum InstanceError {
    #[error(transparent)]
    Json(#[from] serde_json::Error),
    #[error(transparent)]
    Graph(#[from] GraphError),
    #[error("vertex {0} out of range")]
    OutOfRange(usize),
    #[error("color {1} of vertex {0} is not in 1..4")]
    BadColor(usize, u8),
    #[error(transparent)]
    Invalid(#[from] Violation),
}

/// Relabelling of {1,2,3,4}: canonical color c is played by `apply(c)`.
#[derive(Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct ColorPerm([Color; 5]);

impl fmt::Debug for ColorPerm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[1->{} 2->{} 3->{} 4->{}]", self.0[1], self.0[2], self.0[3], self.0[4])
    }
}

impl ColorPerm {
    pub fn identity() -> Self {
        ColorPerm([0, 1, 2, 3, 4])
    }

    pub fn new(images: [Color; 4]) -> Self {
        let mut seen = ColorSet::EMPTY;
        for &c in &images {
            seen = seen.with(c);
        }
        assert_eq!(seen, ColorSet::ALL, "not a permutation");
        ColorPerm([0, images[0], images[1], images[2], images[3]])
    }

    /// Canonical (1, 4) becomes (k, l); 2 and 3 become the other two in increasing order.
    pub fn for_pair(k: Color, l: Color) -> Self {
        let rest: Vec<Color> = ColorSet::ALL.without(k).without(l).iter().collect();
        ColorPerm::new([k, rest[0], rest[1], l])
    }

    pub fn apply(&self, c: Color) -> Color {
        self.0[c as usize]
    }

    pub fn apply_set(&self, s: ColorSet) -> ColorSet {
        s.iter().fold(ColorSet::EMPTY, |acc, c| acc.with(self.apply(c)))
    }

    pub fn inverse(&self) -> ColorPerm {
        let mut inv = [0; 5];
        for c in 1..=4 {
            inv[self.0[c] as usize] = c as Color;
        }
        ColorPerm(inv)
    }
}

#[derive(Clone)]
pub struct StarredPrecoloring {
    g: Graph,
    seed: VertexSet,
    x0: VertexSet,
    x: VertexSet,
    ystar: VertexSet,
    f: Coloring,
    mp: OnceLock<ListAssignment>,
}

impl PartialEq for StarredPrecoloring {
    fn eq(&self, o: &Self) -> bool {
        self.g == o.g && self.seed == o.seed && self.x0 == o.x0 && self.x == o.x && self.ystar == o.ystar && self.f == o.f
    }
}

impl Eq for StarredPrecoloring {}

impl std::hash::Hash for StarredPrecoloring {
    fn hash<H: std::hash::Hasher>(&self, h: &mut H) {
        self.seed.hash(h);
        self.x0.hash(h);
        self.x.hash(h);
        self.ystar.hash(h);
        self.f.hash(h);
    }
}

impl fmt::Debug for StarredPrecoloring {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("StarredPrecoloring")
            .field("graph", &self.g)
            .field("seed", &self.seed)
            .field("x0", &self.x0)
            .field("x", &self.x)
            .field("ystar", &self.ystar)
            .field("f", &self.f)
            .finish()
    }
}

#[derive(Debug, Serialize, Deserialize)]
struct InstanceFile {
    graph: String,
    seed: Vec<usize>,
    x0: Vec<usize>,
    x: Vec<usize>,
    ystar: Vec<usize>,
    f: BTreeMap<usize, u8>,
}

impl StarredPrecoloring {
    /// Assembles the tuple without checking the axioms (see `validate`).
    pub fn new(g: Graph, seed: VertexSet, x0: VertexSet, x: VertexSet, ystar: VertexSet, mut f: Coloring) -> Self {
        f.resize(g.n());
        StarredPrecoloring { g, seed, x0, x, ystar, f, mp: OnceLock::new() }
    }

    pub fn graph(&self) -> &Graph {
        &self.g
    }
    pub fn seed(&self) -> &VertexSet {
        &self.seed
    }
    pub fn x0(&self) -> &VertexSet {
        &self.x0
    }
    pub fn x(&self) -> &VertexSet {
        &self.x
    }
    pub fn ystar(&self) -> &VertexSet {
        &self.ystar
    }
    pub fn f(&self) -> &Coloring {
        &self.f
    }
    pub fn n(&self) -> usize {
        self.g.n()
    }

    pub fn precolored(&self) -> VertexSet {
        self.seed.union(&self.x0)
    }

    pub fn from_json(text: &str) -> Result<Self, InstanceError> {
        let file: InstanceFile = serde_json::from_str(text)?;
        let g = Graph::parse_edge_list(&file.graph)?;
        let n = g.n();
        let set = |ids: &[usize]| -> Result<VertexSet, InstanceError> {
            ids.iter().map(|&v| if v < n { Ok(v) } else { Err(InstanceError::OutOfRange(v)) }).collect()
        };
        let (seed, x0, x, ystar) = (set(&file.seed)?, set(&file.x0)?, set(&file.x)?, set(&file.ystar)?);
        let mut f = Coloring::new(n);
        for (&v, &c) in &file.f {
            if v >= n {
                return Err(InstanceError::OutOfRange(v));
            }
            if !(1..=4).contains(&c) {
                return Err(InstanceError::BadColor(v, c));
            }
            f.set(v, c);
        }
        let p = StarredPrecoloring::new(g, seed, x0, x, ystar, f);
        p.validate()?;
        Ok(p)
    }

    pub fn to_json(&self) -> String {
        let file = InstanceFile {
            graph: self.g.to_edge_list(),
            seed: self.seed.to_vec(),
            x0: self.x0.to_vec(),
            x: self.x.to_vec(),
            ystar: self.ystar.to_vec(),
            f: self.f.domain().iter().map(|v| (v, self.f.get(v).unwrap())).collect(),
        };
        serde_json::to_string_pretty(&file).expect("serializable")
    }

    pub fn validate(&self) -> Result<(), Violation> {
        let n = self.n();
        let fail = |axiom, witness: Vec<usize>, message: String| Err(Violation { axiom, witness, message });
        let pre = self.precolored();
        for v in 0..n {
            if pre.contains(v) != self.f.get(v).is_some() {
                return fail(Axiom::A, vec![v], format!("f must be defined exactly on S and X0 (vertex {v})"));
            }
        }
        for (u, v) in self.g.edges() {
            if pre.contains(u) && pre.contains(v) && self.f.get(u) == self.f.get(v) {
                return fail(Axiom::A, vec![u, v], format!("adjacent precolored vertices {u},{v} share color"));
            }
        }
        let parts = [&self.seed, &self.x0, &self.x, &self.ystar];
        for v in 0..n {
            let k = parts.iter().filter(|s| s.contains(v)).count();
            if k != 1 {
                return fail(Axiom::B, vec![v], format!("vertex {v} lies in {k} of S, X0, X, Y*"));
            }
        }
        if let Some(v) = parts.iter().flat_map(|s| s.iter()).find(|&v| v >= n) {
            return fail(Axiom::B, vec![v], format!("vertex {v} is not a vertex of G"));
        }
        if self.seed.is_empty() {
            return fail(Axiom::C, vec![], "the seed is empty".into());
        }
        if !graph::is_connected(&self.g, &self.seed) {
            let comps = graph::components(&self.g, &self.seed);
            return fail(Axiom::C, vec![comps[0].first().unwrap(), comps[1].first().unwrap()], "G|S is disconnected".into());
        }
        for v in self.g.vertices().difference(&self.seed).iter() {
            if self.seed.is_subset(self.g.neighbors(v)) {
                return fail(Axiom::C, vec![v], format!("vertex {v} is complete to S"));
            }
        }
        for x in &self.x {
            if self.seed_colors(x).len() < 2 {
                return fail(Axiom::D, vec![x], format!("X-vertex {x} sees fewer than two seed colors"));
            }
        }
        let comps = self.y_components();
        for x in &self.x {
            for c in &comps {
                if graph::relation_of(&self.g, x, c).unwrap() == graph::Relation::Mixed {
                    return fail(Axiom::E, vec![x, c.first().unwrap()], format!("X-vertex {x} is mixed on a Y*-component"));
                }
            }
        }
        let att = self.seed.union(&self.x0).union(&self.x);
        for c in &comps {
            if graph::attachments(&self.g, c, &att).unwrap().is_empty() {
                return fail(Axiom::F, vec![c.first().unwrap()], "a Y*-component has no complete attachment".into());
            }
        }
        Ok(())
    }

    pub fn seed_colors(&self, v: usize) -> ColorSet {
        self.f.colors_of(&self.g.neighbors(v).intersection(&self.seed))
    }

    pub fn type_of(&self, v: usize) -> VertexSet {
        self.g.neighbors(v).intersection(&self.seed)
    }

    /// L_P(v).
    pub fn lp_of(&self, v: usize) -> ColorSet {
        match self.f.get(v) {
            Some(c) if self.precolored().contains(v) => ColorSet::single(c),
            _ => self.seed_colors(v).complement(),
        }
    }

    pub fn lp(&self) -> ListAssignment {
        ListAssignment::from_vec((0..self.n()).map(|v| self.lp_of(v)).collect())
    }

    /// M_P, computed once.
    pub fn mp(&self) -> &ListAssignment {
        self.mp.get_or_init(|| {
            let dom = self.x.union(&self.x0);
            update_exhaustively_within(&self.g, &self.lp(), &dom)
        })
    }

    /// X^0(P).
    pub fn forced(&self) -> VertexSet {
        self.mp().singletons(&self.g.vertices())
    }

    /// Moves X^0(P) \ S into X0 until stable.
    pub fn normalize(&self) -> Result<StarredPrecoloring, NoExtension> {
        let mut p = self.clone();
        loop {
            let m = p.mp();
            if (0..p.n()).any(|v| m.get(v).is_empty()) {
                return Err(NoExtension);
            }
            let new_x0 = p.forced().difference(&p.seed);
            if new_x0 == p.x0 {
                debug_assert!(p.x.iter().all(|v| m.get(v) == p.lp_of(v)));
                return Ok(p);
            }
            let mut f = p.f.clone();
            for v in new_x0.difference(&p.x0).iter() {
                f.set(v, m.get(v).only().unwrap());
            }
            let q = StarredPrecoloring::new(
                p.g.clone(),
                p.seed.clone(),
                new_x0.clone(),
                p.x.difference(&new_x0),
                p.ystar.difference(&new_x0),
                f,
            );
            if !q.f.is_proper_on(&q.g, &q.precolored()) {
                return Err(NoExtension);
            }
            p = q;
        }
    }

    pub fn x_with_list(&self, l: ColorSet) -> VertexSet {
        let m = self.mp();
        self.x.iter().filter(|&v| m.get(v) == l).collect()
    }

    /// X_{ij}.
    pub fn xij(&self, i: Color, j: Color) -> VertexSet {
        self.x_with_list(ColorSet::of(&[i, j]))
    }

    pub fn y_components(&self) -> Vec<VertexSet> {
        graph::components(&self.g, &self.ystar)
    }

    /// C(y).
    pub fn component_of(&self, y: usize) -> VertexSet {
        graph::component_of(&self.g, &self.ystar, y)
    }

    /// X(T) for every type T of a vertex of `set`, ordered by the bitmask of T.
    pub fn types(&self, set: &VertexSet) -> BTreeMap<VertexSet, VertexSet> {
        let mut out: BTreeMap<VertexSet, VertexSet> = BTreeMap::new();
        for v in set {
            out.entry(self.type_of(v)).or_default().insert(v);
        }
        out
    }

    /// Moves vertices into the seed and X0. `fprime` extends f over `s_new` and `x0_new`.
    pub fn move_to_seed(&self, s_new: &VertexSet, x0_new: &VertexSet, fprime: &Coloring) -> Option<StarredPrecoloring> {
        debug_assert!(s_new.is_subset(&self.x) && x0_new.is_subset(&self.x.union(&self.ystar)));
        debug_assert!(!s_new.intersects(x0_new));
        let m = self.mp();
        let mut f = self.f.clone();
        for v in s_new.union(x0_new).iter() {
            f.set(v, fprime.get(v).expect("fprime covers the moved vertices"));
        }
        let mut absorbed = VertexSet::new();
        for x in self.x.difference(x0_new).difference(s_new).iter() {
            let hit = f.colors_of(&self.g.neighbors(x).intersection(s_new));
            if hit.intersect(m.get(x)).is_empty() {
                continue;
            }
            f.set(x, m.get(x).minus(hit).only()?);
            absorbed.insert(x);
        }
        let seed = self.seed.union(s_new);
        let x0 = self.x0.union(&absorbed).union(x0_new);
        let x = self.x.difference(&absorbed).difference(s_new).difference(x0_new);
        let ystar = self.ystar.difference(x0_new);
        let q = StarredPrecoloring::new(self.g.clone(), seed, x0, x, ystar, f);
        if !q.f.is_proper_on(&q.g, &q.precolored()) {
            return None;
        }
        debug_assert!(q.validate().is_ok(), "seed move broke an axiom: {:?}", q.validate());
        Some(q)
    }

    pub fn check_extension(&self, c: &Coloring) -> bool {
        let all = self.g.vertices();
        c.len() >= self.n()
            && c.is_total_on(&all)
            && c.is_proper_on(&self.g, &all)
            && self.precolored().iter().all(|v| c.get(v) == self.f.get(v))
    }

    /// Same tuple over an induced subgraph; `keep` must be a union of whole parts' members.
    pub fn induced(&self, keep: &VertexSet) -> (StarredPrecoloring, Vec<usize>) {
        let (g, map) = self.g.induced(keep);
        let mut index = vec![usize::MAX; self.n()];
        for (i, &v) in map.iter().enumerate() {
            index[v] = i;
        }
        let tr = |s: &VertexSet| -> VertexSet { s.intersection(keep).iter().map(|v| index[v]).collect() };
        let mut f = Coloring::new(map.len());
        for (i, &v) in map.iter().enumerate() {
            if let Some(c) = self.f.get(v) {
                f.set(i, c);
            }
        }
        (StarredPrecoloring::new(g, tr(&self.seed), tr(&self.x0), tr(&self.x), tr(&self.ystar), f), map)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Stage {
    Orthogonal,
    Clean(Color, Color),
    Tidy(Color, Color),
    Orderly(Color, Color),
    Spotless(Color, Color),
    NearOrthogonal,
}

/// The objects a stage definition quantifies over, for a violation.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct StageWitness {
    pub y: usize,
    pub vertices: Vec<usize>,
    pub path: Vec<usize>,
}

fn others(k: Color, l: Color) -> (Color, Color) {
    let rest: Vec<Color> = ColorSet::ALL.without(k).without(l).iter().collect();
    (rest[0], rest[1])
}

/// `Ok(())` when `p` has the property, otherwise a violating configuration.
pub fn stage_predicate(p: &StarredPrecoloring, stage: Stage) -> Result<(), StageWitness> {
    match stage {
        Stage::Orthogonal => orthogonal_violation(p),
        Stage::Clean(k, l) => clean_violation(p, k, l),
        Stage::Tidy(k, l) => tidy_violation(p, k, l),
        Stage::Orderly(k, l) => orderly_violation(p, k, l),
        Stage::Spotless(k, l) => spotless_violation(p, k, l),
        Stage::NearOrthogonal => near_violation(p),
    }
    .map_or(Ok(()), Err)
}

pub fn all_pairs() -> impl Iterator<Item = (Color, Color)> {
    (1..=4).flat_map(|k| (1..=4).filter(move |&l| l != k).map(move |l| (k, l)))
}

pub fn holds_for_all_pairs(p: &StarredPrecoloring, stage: fn(Color, Color) -> Stage) -> bool {
    all_pairs().all(|(k, l)| stage_predicate(p, stage(k, l)).is_ok())
}

fn has_color(p: &StarredPrecoloring, set: &VertexSet, c: Color) -> Option<usize> {
    set.iter().find(|&u| p.mp().get(u).contains(c))
}

fn clean_violation(p: &StarredPrecoloring, k: Color, l: Color) -> Option<StageWitness> {
    let (i, j) = others(k, l);
    let (xik, xjk) = (p.xij(i, k), p.xij(j, k));
    let m = p.mp();
    for comp in p.y_components() {
        let Some(u) = has_color(p, &comp, k) else { continue };
        for y in &comp {
            if !m.get(y).contains(i) || !m.get(y).contains(j) {
                continue;
            }
            let (a, b) = (p.g.neighbors(y).intersection(&xik).first(), p.g.neighbors(y).intersection(&xjk).first());
            if let (Some(a), Some(b)) = (a, b) {
                return Some(StageWitness { y, vertices: vec![u, a, b], path: vec![] });
            }
        }
    }
    None
}

fn tidy_violation(p: &StarredPrecoloring, k: Color, l: Color) -> Option<StageWitness> {
    let (i, j) = others(k, l);
    let (xki, xkj) = (p.xij(k, i), p.xij(k, j));
    let m = p.mp();
    for comp in p.y_components() {
        let Some(u) = has_color(p, &comp, k) else { continue };
        let lane: VertexSet = comp.iter().filter(|&v| m.get(v).contains(l)).collect();
        for (a, b) in [(i, j), (j, i)] {
            for yi in &lane {
                if !m.get(yi).contains(a) {
                    continue;
                }
                let nb = p.g.neighbors(yi);
                let (Some(xa), Some(xb)) = (nb.intersection(&xki).first(), nb.intersection(&xkj).first()) else {
                    continue;
                };
                if let Some(path) = bfs_path(&p.g, &lane, yi, |v| m.get(v).contains(b)) {
                    let yj = *path.last().unwrap();
                    return Some(StageWitness { y: yi, vertices: vec![yj, u, xa, xb], path });
                }
            }
        }
    }
    None
}

/// Shortest path inside `within` from `s` to the first vertex satisfying `goal`.
pub fn bfs_path(g: &Graph, within: &VertexSet, s: usize, goal: impl Fn(usize) -> bool) -> Option<Vec<usize>> {
    let mut parent = BTreeMap::new();
    parent.insert(s, s);
    let mut queue = std::collections::VecDeque::from([s]);
    while let Some(v) = queue.pop_front() {
        if goal(v) {
            let mut path = vec![v];
            let mut cur = v;
            while cur != s {
                cur = parent[&cur];
                path.push(cur);
            }
            path.reverse();
            return Some(path);
        }
        for w in g.neighbors(v).intersection(within).iter() {
            if let std::collections::btree_map::Entry::Vacant(e) = parent.entry(w) {
                e.insert(v);
                queue.push_back(w);
            }
        }
    }
    None
}

fn orderly_violation(p: &StarredPrecoloring, k: Color, l: Color) -> Option<StageWitness> {
    let (i, j) = others(k, l);
    let (xik, xjk) = (p.xij(i, k), p.xij(j, k));
    let m = p.mp();
    for y in &p.ystar {
        if !ColorSet::of(&[i, j]).is_subset(m.get(y)) {
            continue;
        }
        let (a, b) = (p.g.neighbors(y).intersection(&xik), p.g.neighbors(y).intersection(&xjk));
        for u in &a {
            if let Some(w) = b.difference(p.g.neighbors(u)).first() {
                return Some(StageWitness { y, vertices: vec![u, w], path: vec![] });
            }
        }
    }
    None
}

fn spotless_violation(p: &StarredPrecoloring, k: Color, l: Color) -> Option<StageWitness> {
    let (i, j) = others(k, l);
    let (xik, xjk) = (p.xij(i, k), p.xij(j, k));
    let m = p.mp();
    for y in &p.ystar {
        if !ColorSet::of(&[i, j]).is_subset(m.get(y)) {
            continue;
        }
        let (a, b) = (p.g.neighbors(y).intersection(&xik).first(), p.g.neighbors(y).intersection(&xjk).first());
        if let (Some(a), Some(b)) = (a, b) {
            return Some(StageWitness { y, vertices: vec![a, b], path: vec![] });
        }
    }
    None
}

/// Whether the lists of `set` all equal some {a,b} or its complement.
pub fn lists_orthogonal(m: &ListAssignment, set: &VertexSet) -> bool {
    ColorSet::all_subsets()
        .filter(|q| q.len() == 2)
        .any(|q| set.iter().all(|v| m.get(v) == q || m.get(v) == q.complement()))
}

fn orthogonal_violation(p: &StarredPrecoloring) -> Option<StageWitness> {
    let m = p.mp();
    p.ystar.iter().find_map(|y| {
        let nx = p.g.neighbors(y).intersection(&p.x);
        (!lists_orthogonal(m, &nx)).then(|| StageWitness { y, vertices: nx.to_vec(), path: vec![] })
    })
}

fn near_violation(p: &StarredPrecoloring) -> Option<StageWitness> {
    let m = p.mp();
    for y in &p.ystar {
        if m.get(y).len() < 3 {
            continue;
        }
        let nx = p.g.neighbors(y).intersection(&p.x);
        if lists_orthogonal(m, &nx) || near_escape(p, y, &nx) {
            continue;
        }
        return Some(StageWitness { y, vertices: nx.to_vec(), path: vec![] });
    }
    None
}

fn near_escape(p: &StarredPrecoloring, y: usize, nx: &VertexSet) -> bool {
    let m = p.mp();
    let comp = p.component_of(y);
    for k in 1..=4 {
        for l in (1..=4).filter(|&l| l != k) {
            let (i, j) = others(k, l);
            if i > j {
                continue;
            }
            let ij = ColorSet::of(&[i, j]);
            let allowed = [ColorSet::of(&[k, i]), ColorSet::of(&[k, j])];
            if !nx.iter().all(|x| allowed.contains(&m.get(x))) {
                continue;
            }
            if comp.iter().any(|u| m.get(u).intersect(ij).len() > 1) {
                continue;
            }
            let has_i = has_color(p, &comp, i).is_some();
            let has_j = has_color(p, &comp, j).is_some();
            if has_i && has_j && comp.iter().all(|u| m.get(u).contains(l)) {
                continue;
            }
            return true;
        }
    }
    false
}

#[cfg(test)]
mod tests {
    use super::*;

    /// Seed 0-1-2 colored 1,2,3; x=3 sees colors 1,2; y=4 hangs off x.
    fn small() -> StarredPrecoloring {
        let g = Graph::from_edges(5, &[(0, 1), (1, 2), (3, 0), (3, 1), (4, 3)]).unwrap();
        let mut f = Coloring::new(5);
        for (v, c) in [(0, 1), (1, 2), (2, 3)] {
            f.set(v, c);
        }
        StarredPrecoloring::new(
            g,
            [0, 1, 2].into_iter().collect(),
            VertexSet::new(),
            VertexSet::singleton(3),
            VertexSet::singleton(4),
            f,
        )
    }

    #[test]
    fn valid_small() {
        let p = small();
        assert_eq!(p.validate(), Ok(()));
        assert_eq!(p.lp_of(3), ColorSet::of(&[3, 4]));
        assert_eq!(p.lp_of(0), ColorSet::single(1));
        assert_eq!(p.xij(3, 4), VertexSet::singleton(3));
        assert!(stage_predicate(&p, Stage::Orthogonal).is_ok());
    }

    #[test]
    fn axiom_d_witness() {
        let p = small();
        let g = Graph::from_edges(5, &[(0, 1), (1, 2), (3, 0), (4, 3)]).unwrap();
        let q = StarredPrecoloring::new(g, p.seed.clone(), p.x0.clone(), p.x.clone(), p.ystar.clone(), p.f.clone());
        let v = q.validate().unwrap_err();
        assert_eq!((v.axiom, v.witness), (Axiom::D, vec![3]));
    }

    #[test]
    fn move_one_vertex() {
        let p = small();
        let mut f = p.f.clone();
        f.set(3, 3);
        let q = p.move_to_seed(&VertexSet::singleton(3), &VertexSet::new(), &f).unwrap();
        assert!(q.seed.contains(3));
        assert_eq!(q.lp_of(4), ColorSet::of(&[1, 2, 4]));
        assert_eq!(p.move_to_seed(&VertexSet::new(), &VertexSet::new(), &p.f).unwrap(), p);
    }

    #[test]
    fn perm_for_pair() {
        let s = ColorPerm::for_pair(2, 3);
        assert_eq!((s.apply(1), s.apply(2), s.apply(3), s.apply(4)), (2, 1, 4, 3));
        assert_eq!(s.inverse().apply(s.apply(3)), 3);
    }

    #[test]
    fn json_round_trip() {
        let p = small();
        assert_eq!(StarredPrecoloring::from_json(&p.to_json()).unwrap(), p);
    }
}
