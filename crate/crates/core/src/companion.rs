//! Companion triples: contract the X-neighbourhoods of Y*-components, carve
//! the lists of the images, and let Z-vertices stand in for components.

use std::collections::BTreeMap;

use serde::Serialize;
use thiserror::Error;

use crate::graph::{self, Graph, VertexSet};
use crate::lists::{bad_set_table, exact_list_color, update_from, BadSetTable, Color, ColorSet, Coloring, ListAssignment};
use crate::precoloring::{stage_predicate, Stage, StarredPrecoloring};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum CompanionError {
    #[error("precoloring is not orthogonal (witness y={0})")]
    NotOrthogonal(usize),
    #[error("precoloring has no extension after normalizing")]
    NoExtension,
    #[error("no {colors:?}-coloring of component {comp} while lifting")]
    Lift { comp: usize, colors: ColorSet },
    #[error("coloring of H is not a proper L-coloring")]
    BadColoring,
}

/// One neighbour contraction: `members` (all in X(C) with list `pair`) became `image`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Contraction {
    pub comp: usize,
    pub pair: ColorSet,
    pub image: usize,
    pub members: Vec<usize>,
}

#[derive(Debug, Clone)]
pub struct BadSetProfile {
    pub table: BadSetTable,
    pub maximal: Vec<ColorSet>,
    /// The 2-element maximal bad sets with their friendliness.
    pub friendly: Vec<(ColorSet, bool)>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum HVertex {
    /// An X̃ vertex, named by its representative in the base graph.
    X(usize),
    /// A singleton component {y} of G|Y*.
    Singleton(usize),
    /// v(C, Q) for a friendly maximal bad pair Q.
    Proxy { comp: usize, q: ColorSet },
    /// A component that cannot be colored at all.
    Blocked { comp: usize },
}

#[derive(Debug, Clone)]
pub struct CompanionTriple {
    /// The normalized orthogonal precoloring the triple belongs to.
    pub p: StarredPrecoloring,
    /// M_P updated on Y* from X0.
    pub m: ListAssignment,
    pub components: Vec<VertexSet>,
    pub profiles: Vec<Option<BadSetProfile>>,
    pub log: Vec<Contraction>,
    /// For each base vertex in X, the H vertex of its class.
    pub h_of: Vec<Option<usize>>,
    pub kinds: Vec<HVertex>,
    /// Members in the base graph: the contracted class for X̃, V(h(z)) for Z.
    pub members: Vec<VertexSet>,
    pub h: Graph,
    pub l: ListAssignment,
    /// M on H: the class list for X̃ vertices, the full palette on Z.
    pub hm: ListAssignment,
    /// Seed neighbourhood in G̃ of each X̃ vertex (empty on Z).
    pub types: Vec<VertexSet>,
    pub xt: VertexSet,
    pub z: VertexSet,
    /// h, as a component index per Z vertex.
    pub comp_of: Vec<Option<usize>>,
}

struct UnionFind(Vec<usize>);

impl UnionFind {
    fn find(&mut self, v: usize) -> usize {
        let mut r = v;
        while self.0[r] != r {
            r = self.0[r];
        }
        let mut c = v;
        while self.0[c] != r {
            let next = self.0[c];
            self.0[c] = r;
            c = next;
        }
        r
    }

    fn union(&mut self, a: usize, b: usize) {
        let (ra, rb) = (self.find(a), self.find(b));
        if ra != rb {
            let (lo, hi) = (ra.min(rb), ra.max(rb));
            self.0[hi] = lo;
        }
    }
}

fn pair(a: Color, b: Color) -> ColorSet {
    ColorSet::of(&[a, b])
}

/// Companion list M: M_P with Y* updated from X0.
pub fn companion_lists(p: &StarredPrecoloring) -> ListAssignment {
    update_from(p.graph(), p.mp(), p.x0(), p.ystar()).expect("X0 carries singleton lists after normalizing")
}

pub fn bad_profile(p: &StarredPrecoloring, m: &ListAssignment, comp: &VertexSet) -> BadSetProfile {
    let table = bad_set_table(p.graph(), comp, m);
    let maximal = table.maximal_bad();
    let touching = p.graph().neighborhood(comp).intersection(&p.precolored());
    let seen = p.f().colors_of(&touching);
    let friendly = maximal.iter().filter(|q| q.len() == 2).map(|&q| (q, q.is_subset(seen))).collect();
    BadSetProfile { table, maximal, friendly }
}

/// Builds the companion triple of an orthogonal excellent starred precoloring.
pub fn build_companion(p: &StarredPrecoloring) -> Result<CompanionTriple, CompanionError> {
    let p = p.normalize().map_err(|_| CompanionError::NoExtension)?;
    if let Err(w) = stage_predicate(&p, Stage::Orthogonal) {
        return Err(CompanionError::NotOrthogonal(w.y));
    }
    let g = p.graph();
    let mp = p.mp();
    let m = companion_lists(&p);
    let components = p.y_components();
    let profiles: Vec<Option<BadSetProfile>> =
        components.iter().map(|c| (c.len() > 1).then(|| bad_profile(&p, &m, c))).collect();

    // Sides of X(C) as (pair, X(C) ∩ X_pair, X(C) ∩ X_complement).
    let sides: Vec<Option<(ColorSet, VertexSet, VertexSet)>> = components
        .iter()
        .map(|c| {
            let xc = g.neighborhood(c).intersection(p.x());
            let first = xc.first()?;
            let pr = mp.get(first);
            let a: VertexSet = xc.iter().filter(|&x| mp.get(x) == pr).collect();
            Some((pr, a.clone(), xc.difference(&a)))
        })
        .collect();

    let mut uf = UnionFind((0..p.n()).collect());
    let mut pending = Vec::new();
    for (ci, c) in components.iter().enumerate() {
        let (Some(prof), Some((pr, a, b))) = (&profiles[ci], &sides[ci]) else { continue };
        debug_assert!(c.len() > 1);
        if !b.is_empty() {
            pending.push((ci, *pr, a.clone()));
            pending.push((ci, pr.complement(), b.clone()));
        } else if prof.table.is_bad(pr.complement()) {
            pending.push((ci, *pr, a.clone()));
        }
    }
    for (_, _, set) in &pending {
        let first = set.first().expect("contracted classes are nonempty");
        for v in set {
            uf.union(first, v);
        }
    }

    // H vertices: X̃ classes by representative, then Z.
    let mut class_members: BTreeMap<usize, VertexSet> = BTreeMap::new();
    for x in p.x() {
        class_members.entry(uf.find(x)).or_default().insert(x);
    }
    let mut kinds = Vec::new();
    let mut members = Vec::new();
    let mut h_of = vec![None; p.n()];
    for (&rep, mem) in &class_members {
        for v in mem {
            h_of[v] = Some(kinds.len());
        }
        kinds.push(HVertex::X(rep));
        members.push(mem.clone());
    }
    let log = pending
        .iter()
        .map(|(ci, pr, set)| Contraction {
            comp: *ci,
            pair: *pr,
            image: uf.find(set.first().unwrap()),
            members: set.to_vec(),
        })
        .collect();
    let nx = kinds.len();

    let mut lists: Vec<ColorSet> = members.iter().map(|mem| mp.get(mem.first().unwrap())).collect();
    let hm_x = lists.clone();
    let types: Vec<VertexSet> = members.iter().map(|mem| g.neighborhood(mem).intersection(p.seed())).collect();
    for (i, mem) in members.iter().enumerate() {
        if !g.is_stable(mem) {
            lists[i] = ColorSet::EMPTY;
        }
    }
    let class_set = |xs: &VertexSet| -> VertexSet { xs.iter().filter_map(|x| h_of[x]).collect() };

    // List carving.
    for (ci, side) in sides.iter().enumerate() {
        let (Some(prof), Some((pr, a, b))) = (&profiles[ci], side) else { continue };
        let t = &prof.table;
        for i in 1..=4 {
            if t.is_bad(ColorSet::ALL.without(i)) {
                for hx in class_set(&a.union(b)).iter() {
                    lists[hx] = lists[hx].without(i);
                }
            }
        }
        if b.is_empty() {
            continue;
        }
        let (ha, hb) = (class_set(a), class_set(b));
        debug_assert!(ha.len() == 1 && hb.len() == 1);
        let (xa, xb) = (ha.first().unwrap(), hb.first().unwrap());
        for (s, xs, xo) in [(*pr, xa, xb), (pr.complement(), xb, xa)] {
            let other: Vec<Color> = s.complement().iter().collect();
            for i in s.iter() {
                let j = s.without(i).only().unwrap();
                let (k0, l0) = (other[0], other[1]);
                if t.is_good(pair(i, k0)) && t.is_good(pair(i, l0)) && t.is_bad(pair(j, k0)) && t.is_bad(pair(j, l0)) {
                    lists[xs] = lists[xs].without(i);
                }
                for (k, l) in [(k0, l0), (l0, k0)] {
                    if t.is_good(pair(i, k)) && t.is_bad(pair(i, l)) && t.is_bad(pair(j, k)) && t.is_bad(pair(j, l)) {
                        lists[xs] = lists[xs].without(i);
                        lists[xo] = lists[xo].without(k);
                    }
                }
            }
        }
    }

    // Z vertices.
    let mut comp_of = vec![None; nx];
    let mut hm = hm_x;
    for (ci, c) in components.iter().enumerate() {
        let mut add = |kind: HVertex, list: ColorSet, kinds: &mut Vec<HVertex>| {
            kinds.push(kind);
            members.push(c.clone());
            lists.push(list);
            hm.push(ColorSet::ALL);
            comp_of.push(Some(ci));
        };
        let Some(prof) = &profiles[ci] else {
            let y = c.first().unwrap();
            add(HVertex::Singleton(y), m.get(y), &mut kinds);
            continue;
        };
        let t = &prof.table;
        if ColorSet::all_subsets().filter(|q| q.len() == 3).all(|q| t.is_bad(q)) {
            add(HVertex::Blocked { comp: ci }, ColorSet::EMPTY, &mut kinds);
            continue;
        }
        let Some((pr, _, b)) = &sides[ci] else { continue };
        if b.is_empty() {
            continue;
        }
        let mut cross = ColorSet::all_subsets().filter(|q| q.len() == 2 && *q != *pr && *q != pr.complement());
        if cross.all(|q| t.is_bad(q)) {
            add(HVertex::Blocked { comp: ci }, ColorSet::EMPTY, &mut kinds);
            continue;
        }
        for &(q, friendly) in &prof.friendly {
            if friendly {
                add(HVertex::Proxy { comp: ci, q }, q.complement(), &mut kinds);
            }
        }
    }

    let n_h = kinds.len();
    let mut h = Graph::empty(n_h);
    for u in 0..nx {
        let nb = g.neighborhood(&members[u]);
        for v in (u + 1)..nx {
            if nb.intersects(&members[v]) {
                h.add_edge(u, v).unwrap();
            }
        }
    }
    for zi in nx..n_h {
        let xc = g.neighborhood(&members[zi]).intersection(p.x());
        for hx in class_set(&xc).iter() {
            h.add_edge(zi, hx).unwrap();
        }
    }
    let mut all_types = types;
    all_types.resize(n_h, VertexSet::new());
    let t = CompanionTriple {
        m,
        components,
        profiles,
        log,
        h_of,
        kinds,
        members,
        l: ListAssignment::from_vec(lists),
        hm: ListAssignment::from_vec(hm),
        types: all_types,
        xt: VertexSet::range(nx),
        z: (nx..n_h).collect(),
        comp_of,
        h,
        p,
    };
    debug_assert_eq!(t.near_companion_violation(&t.l), None);
    Ok(t)
}

impl CompanionTriple {
    pub fn n(&self) -> usize {
        self.h.n()
    }

    /// X̃_{ij}, by the M lists.
    pub fn xt_pair(&self, q: ColorSet) -> VertexSet {
        self.xt.iter().filter(|&v| self.hm.get(v) == q).collect()
    }

    /// Checks the near-companion conditions for lists `l` on H. The removed-colour
    /// witness may come from S ∪ X0 ∪ X^0(l); the kept-colour one only from S ∪ X0.
    pub fn near_companion_violation(&self, l: &ListAssignment) -> Option<String> {
        let g = self.p.graph();
        let pre = self.p.precolored();
        if !self.h.is_stable(&self.z) {
            return Some("Z is not stable".into());
        }
        for x in &self.xt {
            if !l.get(x).is_subset(self.hm.get(x)) {
                return Some(format!("L({x}) not inside M"));
            }
        }
        let singles = l.singletons(&self.xt);
        for z in &self.z {
            let c = &self.members[z];
            let xc = g.neighborhood(c).intersection(self.p.x());
            let want: VertexSet = xc.iter().filter_map(|x| self.h_of[x]).collect();
            if self.h.neighbors(z) != &want {
                return Some(format!("N({z}) differs from the image of X(h(z))"));
            }
            let touching = g.neighborhood(c).intersection(&pre);
            let lz = l.get(z);
            if !lz.is_empty() {
                let from_hx = self.h.neighbors(z).intersection(&singles).iter().fold(ColorSet::EMPTY, |s, u| s.union(l.get(u)));
                let witnessed = self.p.f().colors_of(&touching).union(from_hx);
                if !lz.complement().is_subset(witnessed) {
                    return Some(format!("z={z}: removed colours {:?} lack a witness", lz.complement().minus(witnessed)));
                }
            }
            for q in lz.iter() {
                if !c.iter().any(|v| self.m.get(v).contains(q)) {
                    return Some(format!("z={z}: colour {q} in no M-list of h(z)"));
                }
                if pre.iter().any(|u| self.p.f().get(u) == Some(q) && c.is_subset(g.neighbors(u))) {
                    return Some(format!("z={z}: colour {q} is blocked by a complete precolored vertex"));
                }
            }
        }
        None
    }

    /// G̃ as a graph on representatives, with the map to base ids.
    pub fn contracted_graph(&self) -> (Graph, Vec<usize>) {
        let g = self.p.graph();
        let keep: VertexSet = (0..self.p.n())
            .filter(|&v| match self.h_of[v] {
                Some(hx) => matches!(self.kinds[hx], HVertex::X(r) if r == v),
                None => true,
            })
            .collect();
        let map = keep.to_vec();
        let class = |v: usize| -> VertexSet {
            match self.h_of[v] {
                Some(hx) => self.members[hx].clone(),
                None => VertexSet::singleton(v),
            }
        };
        let mut gt = Graph::empty(map.len());
        for (a, &u) in map.iter().enumerate() {
            let nb = g.neighborhood(&class(u));
            for (b, &v) in map.iter().enumerate().skip(a + 1) {
                if nb.intersects(&class(v)) {
                    gt.add_edge(a, b).unwrap();
                }
            }
        }
        (gt, map)
    }

    /// G̃_{ij}(t) must be P6-free for every pair and every t in S ∪ X0.
    /// Returns an induced P6 (in base ids) if one exists.
    pub fn check_p6free_slices(&self) -> Result<(), Vec<usize>> {
        let (gt, map) = self.contracted_graph();
        let mut index = vec![usize::MAX; self.p.n()];
        for (i, &v) in map.iter().enumerate() {
            index[v] = i;
        }
        for q in ColorSet::all_subsets().filter(|q| q.len() == 2) {
            let xs: VertexSet = self
                .xt_pair(q)
                .iter()
                .map(|hx| match self.kinds[hx] {
                    HVertex::X(r) => index[r],
                    _ => unreachable!(),
                })
                .collect();
            let base: VertexSet = xs.union(&self.p.ystar().iter().map(|y| index[y]).collect());
            for t in self.p.precolored().iter() {
                let mut within = base.clone();
                within.insert(index[t]);
                if let Some(path) = graph::find_induced_path(&gt, 6, &within) {
                    return Err(path.into_iter().map(|v| map[v]).collect());
                }
            }
        }
        Ok(())
    }

    /// H|(Z ∪ X̃_{ij}) must be P6-free; returns a witness path in H ids.
    pub fn check_h_slices(&self) -> Result<(), Vec<usize>> {
        for q in ColorSet::all_subsets().filter(|q| q.len() == 2) {
            let within = self.xt_pair(q).union(&self.z);
            if let Some(path) = graph::find_induced_path(&self.h, 6, &within) {
                return Err(path);
            }
        }
        Ok(())
    }

    /// Turns an L-coloring of H into a precoloring extension of `self.p`.
    pub fn lift(&self, c: &Coloring) -> Result<Coloring, CompanionError> {
        if !c.is_list_coloring(&self.h, &self.l, &self.h.vertices()) {
            return Err(CompanionError::BadColoring);
        }
        let g = self.p.graph();
        let mut out = Coloring::new(self.p.n());
        for v in self.p.precolored().iter() {
            out.set(v, self.p.f().get(v).unwrap());
        }
        for hx in &self.xt {
            for v in &self.members[hx] {
                out.set(v, c.get(hx).unwrap());
            }
        }
        for (ci, comp) in self.components.iter().enumerate() {
            if comp.len() == 1 {
                let y = comp.first().unwrap();
                let z = self.z.iter().find(|&z| self.kinds[z] == HVertex::Singleton(y)).unwrap();
                out.set(y, c.get(z).unwrap());
                continue;
            }
            let xc = g.neighborhood(comp).intersection(self.p.x());
            let allowed = out.colors_of(&xc).complement();
            let mut lists = self.m.clone();
            for v in comp {
                lists.restrict(v, allowed);
            }
            let col = exact_list_color(g, &lists, comp).ok_or(CompanionError::Lift { comp: ci, colors: allowed })?;
            for v in comp {
                out.set(v, col.get(v).unwrap());
            }
        }
        Ok(out)
    }

    pub fn to_json(&self) -> String {
        #[derive(Serialize)]
        struct Dump<'a> {
            vertices: Vec<DumpVertex>,
            edges: Vec<(usize, usize)>,
            h: BTreeMap<usize, Vec<usize>>,
            contractions: &'a [Contraction],
        }
        #[derive(Serialize)]
        struct DumpVertex {
            id: usize,
            kind: HVertex,
            list: Vec<Color>,
            members: Vec<usize>,
        }
        let vertices = (0..self.n())
            .map(|v| DumpVertex { id: v, kind: self.kinds[v], list: self.l.get(v).iter().collect(), members: self.members[v].to_vec() })
            .collect();
        let h = self.z.iter().map(|z| (z, self.members[z].to_vec())).collect();
        serde_json::to_string_pretty(&Dump { vertices, edges: self.h.edges(), h, contractions: &self.log }).unwrap()
    }
}
