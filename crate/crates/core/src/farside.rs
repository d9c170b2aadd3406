//! Coloring the far side of an insulating cutset via 2-SAT.
//!
//! Input is H|(Z ∪ D) where D splits into D_a ⊆ X̃_a and D_b ⊆ X̃_b, with
//! `a = {p, q}` the side of the cutset. Every Z vertex is sent to one side;
//! the variable of z is true when z takes a colour in `a`.

use serde::Serialize;
use thiserror::Error;

use crate::graph::{self, Graph, VertexSet};
use crate::lists::{edwards_two_list_color, update_exhaustively_within, ColorSet, Coloring, ListAssignment, ListError};
use crate::twosat::{Lit, TwoSatInstance};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum FarSideError {
    #[error("cutset side has a list of size {0}")]
    List(usize),
    #[error("side graph is not bipartite after splitting ({0})")]
    NotBipartite(&'static str),
    #[error("adjacent vertices {0} and {1} are forced to the same colour")]
    ForcedClash(usize, usize),
    #[error("assembled far-side coloring is not proper")]
    Improper,
}

#[derive(Debug, Clone)]
pub struct FarSide<'a> {
    pub h: &'a Graph,
    pub l: &'a ListAssignment,
    pub z: &'a VertexSet,
    pub da: &'a VertexSet,
    pub db: &'a VertexSet,
    pub pair: ColorSet,
}

/// Which numbered rule produced a clause; used only for dumps.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct ClauseTag(pub u8);

#[derive(Debug, Clone)]
pub struct Encoding {
    /// Z vertices in variable order.
    pub vars: Vec<usize>,
    pub lists: ListAssignment,
    pub cnf: TwoSatInstance,
    pub tags: Vec<ClauseTag>,
}

impl Encoding {
    /// DIMACS with a comment before each clause naming its rule and Z vertices.
    pub fn to_dimacs(&self) -> String {
        let mut s = String::from("c variable v is true when Z vertex vars[v-1] takes a colour of the cutset side\n");
        s.push_str(&format!("c vars {:?}\n", self.vars));
        s.push_str(&format!("p cnf {} {}\n", self.vars.len(), self.cnf.clauses().len()));
        for (&(a, b), tag) in self.cnf.clauses().iter().zip(&self.tags) {
            let lit = |l: Lit| if l.positive { l.var as i64 + 1 } else { -(l.var as i64 + 1) };
            s.push_str(&format!("c type {} z{} z{}\n{} {} 0\n", tag.0, self.vars[a.var], self.vars[b.var], lit(a), lit(b)));
        }
        s
    }
}

impl FarSide<'_> {
    fn domain(&self) -> VertexSet {
        self.z.union(self.da).union(self.db)
    }

    /// Exhaustive updating inside the far side, alternated with removing a side's
    /// colours from vertices seeing both classes of a component on that side.
    pub fn preprocess(&self) -> ListAssignment {
        let dom = self.domain();
        let mut l = self.l.clone();
        loop {
            let before = l.clone();
            l = update_exhaustively_within(self.h, &l, &dom);
            for (ds, side) in [(self.da, self.pair), (self.db, self.pair.complement())] {
                for comp in graph::bipartition(self.h, ds).unwrap_or_default() {
                    for v in dom.difference(ds).iter() {
                        let nb = self.h.neighbors(v);
                        if nb.intersects(&comp.0) && nb.intersects(&comp.1) {
                            l.set(v, l.get(v).minus(side));
                        }
                    }
                }
            }
            if l == before {
                return l;
            }
        }
    }

    /// Clauses of the eight kinds, over preprocessed lists `l`.
    pub fn encode(&self, l: &ListAssignment) -> Encoding {
        let vars = self.z.to_vec();
        let mut cnf = TwoSatInstance::new(vars.len());
        let mut tags = Vec::new();
        let mut add = |cnf: &mut TwoSatInstance, a: Lit, b: Lit, tag: u8| {
            cnf.add_clause(a, b);
            tags.push(ClauseTag(tag));
        };
        for (ds, side, base, positive) in [(self.da, self.pair, 0u8, false), (self.db, self.pair.complement(), 3u8, true)] {
            let lit = |i: usize| if positive { Lit::pos(i) } else { Lit::neg(i) };
            let comps = graph::bipartition(self.h, ds).unwrap_or_default();
            let touch: Vec<Vec<(bool, bool)>> = vars
                .iter()
                .map(|&z| {
                    let nb = self.h.neighbors(z);
                    comps.iter().map(|(s1, s2)| (nb.intersects(s1), nb.intersects(s2))).collect()
                })
                .collect();
            let (lo, hi) = {
                let mut it = side.iter();
                (it.next().unwrap(), it.next().unwrap())
            };
            for i in 0..vars.len() {
                for j in i..vars.len() {
                    let (li, lj) = (l.get(vars[i]).intersect(side), l.get(vars[j]).intersect(side));
                    let mut same = false;
                    let mut opposite = false;
                    for (ti, tj) in touch[i].iter().zip(&touch[j]) {
                        same |= (ti.0 && tj.0) || (ti.1 && tj.1);
                        opposite |= (ti.0 && tj.1) || (ti.1 && tj.0);
                    }
                    if i != j {
                        let split = (li == ColorSet::single(lo) && lj == ColorSet::single(hi))
                            || (li == ColorSet::single(hi) && lj == ColorSet::single(lo));
                        if split && same {
                            add(&mut cnf, lit(i), lit(j), base + 1);
                        }
                        if li.len() == 1 && li == lj && opposite {
                            add(&mut cnf, lit(i), lit(j), base + 2);
                        }
                    }
                    if same && opposite {
                        add(&mut cnf, lit(i), lit(j), base + 3);
                    }
                }
            }
        }
        for (i, &z) in vars.iter().enumerate() {
            let lz = l.get(z);
            if lz.is_subset(self.pair) {
                add(&mut cnf, Lit::pos(i), Lit::pos(i), 7);
            }
            if lz.is_subset(self.pair.complement()) {
                add(&mut cnf, Lit::neg(i), Lit::neg(i), 8);
            }
        }
        Encoding { vars, lists: l.clone(), cnf, tags }
    }

    /// Colours `H|(Z ∪ D)` or reports that it has no coloring.
    pub fn solve(&self) -> Result<Option<Coloring>, FarSideError> {
        for ds in [self.da, self.db] {
            match edwards_two_list_color(self.h, self.l, ds) {
                Ok(Some(_)) => {}
                Ok(None) => return Ok(None),
                Err(ListError::ListTooLarge(_, l)) => return Err(FarSideError::List(l.len())),
                Err(ListError::NotSingleton(..)) => unreachable!(),
            }
        }
        let l = self.preprocess();
        let dom = self.domain();
        if dom.iter().any(|v| l.get(v).is_empty()) {
            return Ok(None);
        }
        let enc = self.encode(&l);
        let Some(asg) = enc.cnf.solve() else { return Ok(None) };
        let mut side_a = self.da.clone();
        let mut side_b = self.db.clone();
        for (i, &z) in enc.vars.iter().enumerate() {
            if asg[i] {
                side_a.insert(z);
            } else {
                side_b.insert(z);
            }
        }
        let mut out = Coloring::new(self.h.n());
        color_side(self.h, &l, &side_a, self.pair, &mut out)?;
        color_side(self.h, &l, &side_b, self.pair.complement(), &mut out)?;
        if !out.is_list_coloring(self.h, self.l, &dom) {
            return Err(FarSideError::Improper);
        }
        Ok(Some(out))
    }
}

/// Two-colours `H|set` from lists cut down to `side`, via the auxiliary graph with
/// one hub per colour.
fn color_side(h: &Graph, l: &ListAssignment, set: &VertexSet, side: ColorSet, out: &mut Coloring) -> Result<(), FarSideError> {
    if set.is_empty() {
        return Ok(());
    }
    let colors: Vec<_> = side.iter().collect();
    let ls = |v: usize| l.get(v).intersect(side);
    for v in set {
        if ls(v).is_empty() {
            return Err(FarSideError::NotBipartite("empty side list"));
        }
    }
    for v in set {
        for u in h.neighbors(v).intersection(set).iter() {
            if u > v && ls(u).len() == 1 && ls(u) == ls(v) {
                return Err(FarSideError::ForcedClash(v, u));
            }
        }
    }
    let members = set.to_vec();
    let idx = |v: usize| members.binary_search(&v).unwrap();
    let (h1, h2) = (members.len(), members.len() + 1);
    let mut f = Graph::empty(members.len() + 2);
    f.add_edge(h1, h2).unwrap();
    for &v in &members {
        let lv = ls(v);
        if lv.len() == 2 {
            for u in h.neighbors(v).intersection(set).iter() {
                if ls(u).len() == 2 && u > v {
                    f.add_edge(idx(v), idx(u)).unwrap();
                }
            }
        } else {
            let hub = if lv.only() == Some(colors[0]) { h1 } else { h2 };
            for u in h.neighbors(v).intersection(set).iter() {
                if ls(u).len() == 2 && !f.has_edge(idx(u), hub) {
                    f.add_edge(idx(u), hub).unwrap();
                }
            }
        }
    }
    let mut keep = VertexSet::range(members.len() + 2);
    for (i, &v) in members.iter().enumerate() {
        if ls(v).len() == 1 {
            keep.remove(i);
        }
    }
    let parts = graph::bipartition(&f, &keep).ok_or(FarSideError::NotBipartite("auxiliary graph"))?;
    for (s1, s2) in parts {
        let (first, second) = if s1.contains(h2) { (colors[1], colors[0]) } else { (colors[0], colors[1]) };
        for (part, c) in [(&s1, first), (&s2, second)] {
            for i in part.iter().filter(|&i| i < members.len()) {
                out.set(members[i], c);
            }
        }
    }
    for &v in &members {
        if let Some(c) = ls(v).only() {
            out.set(v, c);
        }
    }
    Ok(())
}
