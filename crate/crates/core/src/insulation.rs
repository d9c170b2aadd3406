//! Insulating cutsets: recognition, the repair merge of two partial colorings,
//! and the list branching that makes every far side Z^{1i} insulated.
//!
//! A pair is named by its side `a = {1, i}`; the other side is the complement.

use std::collections::HashSet;

use thiserror::Error;

use crate::companion::CompanionTriple;
use crate::graph::{self, Graph, VertexSet};
use crate::lists::{update_exhaustively, Color, ColorSet, Coloring, ListAssignment};
use crate::reduction::{Budget, ReductionError};

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Cutset {
    /// The side {1, i} this cutset insulates.
    pub pair: ColorSet,
    pub d: VertexSet,
    /// Far side.
    pub a: VertexSet,
    pub b: VertexSet,
}

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum MergeError {
    #[error("colorings do not cover their sides")]
    Domain,
    #[error("repair did not reduce conflicts ({before} -> {after})")]
    NoProgress { before: usize, after: usize },
    #[error("repair loop exceeded {0} iterations")]
    TooLong(usize),
    #[error("intermediate coloring of the far side stopped being proper")]
    Improper,
    #[error("merged coloring is not a proper list coloring")]
    Residual,
}

#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct MergeStats {
    /// Conflict count before each flip, then the final zero.
    pub conflicts: Vec<usize>,
}

/// The three side pairs {1,2}, {1,3}, {1,4}.
pub fn side_pairs() -> [ColorSet; 3] {
    [ColorSet::of(&[1, 2]), ColorSet::of(&[1, 3]), ColorSet::of(&[1, 4])]
}

/// Z^{1i} for i = 2, 3, 4. A Z vertex without X̃ neighbours is put in Z^{12}.
pub fn z_partition(t: &CompanionTriple) -> [VertexSet; 3] {
    let mut out: [VertexSet; 3] = Default::default();
    for z in &t.z {
        let idx = match t.h.neighbors(z).first() {
            None => 0,
            Some(x) => {
                let m = t.hm.get(x);
                let side = if m.contains(1) { m } else { m.complement() };
                side_pairs().iter().position(|&s| s == side).expect("X̃ lists have two colours")
            }
        };
        out[idx].insert(z);
    }
    out
}

fn sides_of(h: &Graph, comp: &VertexSet) -> (VertexSet, VertexSet) {
    graph::bipartition(h, comp).and_then(|parts| parts.into_iter().next()).expect("component is bipartite")
}

/// Mechanical check of the insulating-cutset definition.
pub fn is_insulating(h: &Graph, l: &ListAssignment, cut: &Cutset) -> Result<(), String> {
    let all = h.vertices();
    if cut.d.intersects(&cut.a) || cut.d.intersects(&cut.b) || cut.a.intersects(&cut.b) || cut.d.union(&cut.a).union(&cut.b) != all {
        return Err("D, A, B do not partition V(H)".into());
    }
    if cut.a.is_empty() {
        return Err("far side is empty".into());
    }
    for a in &cut.a {
        for b in h.neighbors(a).intersection(&cut.b).iter() {
            if l.get(a).meets(l.get(b)) {
                return Err(format!("far side {a} meets {b} with overlapping lists"));
            }
        }
    }
    let sides = [cut.pair, cut.pair.complement()];
    for d in &cut.d {
        if !sides.iter().any(|s| l.get(d).is_subset(*s)) {
            return Err(format!("cutset vertex {d} has list {:?} outside both sides", l.get(d)));
        }
    }
    for s in sides {
        let dpq: VertexSet = cut.d.iter().filter(|&d| l.get(d).is_subset(s)).collect();
        for comp in graph::components(h, &dpq) {
            let Some(parts) = graph::bipartition(h, &comp) else {
                return Err(format!("component {comp:?} is not bipartite"));
            };
            let (d1, d2) = parts.into_iter().next().unwrap();
            let sizes: HashSet<usize> = comp.iter().map(|d| l.get(d).len()).collect();
            if sizes.len() > 1 {
                return Err(format!("component {comp:?} mixes list sizes"));
            }
            let hood = h.neighborhood(&comp);
            if !cut.a.iter().any(|a| hood.contains(a) && l.get(a).meets(s)) {
                return Err(format!("component {comp:?} has no far-side neighbour using {s:?}"));
            }
            if sizes.contains(&2) {
                complex_condition(h, l, cut, s, &comp, &d1, &d2)?;
            }
        }
    }
    Ok(())
}

fn complex_condition(
    h: &Graph,
    l: &ListAssignment,
    cut: &Cutset,
    s: ColorSet,
    comp: &VertexSet,
    d1: &VertexSet,
    d2: &VertexSet,
) -> Result<(), String> {
    let hood = h.neighborhood(comp);
    for (ds, dt) in [(d1, d2), (d2, d1)] {
        for i in s.iter() {
            let j = s.without(i).only().unwrap();
            let trigger = cut.a.iter().any(|a| l.get(a).contains(i) && h.neighbors(a).intersects(ds));
            if !trigger {
                continue;
            }
            for b in cut.b.intersection(&hood).iter() {
                if h.neighbors(b).intersects(ds) && l.get(b).contains(j) {
                    return Err(format!("vertex {b} of B keeps colour {j} next to the {i}-side of {comp:?}"));
                }
                if h.neighbors(b).intersects(dt) && l.get(b).contains(i) {
                    return Err(format!("vertex {b} of B keeps colour {i} next to the far side of {comp:?}"));
                }
            }
        }
    }
    Ok(())
}

/// Complex components of H|D_{pq} for both sides.
pub fn complex_components(h: &Graph, l: &ListAssignment, cut: &Cutset) -> Vec<VertexSet> {
    let mut out = Vec::new();
    for s in [cut.pair, cut.pair.complement()] {
        let dpq: VertexSet = cut.d.iter().filter(|&d| l.get(d).is_subset(s)).collect();
        out.extend(graph::components(h, &dpq).into_iter().filter(|c| c.iter().all(|d| l.get(d).len() == 2)));
    }
    out
}

fn conflicts(h: &Graph, dprime: &VertexSet, b: &VertexSet, c1: &Coloring, c2: &Coloring) -> Vec<(usize, usize)> {
    let mut out = Vec::new();
    for u in dprime {
        for v in h.neighbors(u).intersection(b).iter() {
            if c2.get(u) == c1.get(v) {
                out.push((u, v));
            }
        }
    }
    out
}

/// Combines a coloring `c1` of B ∪ D'' with a coloring `c2` of A ∪ D. The cutset
/// may describe an induced subgraph of `h`; vertices outside D ∪ A ∪ B are ignored.
pub fn merge_colorings(
    h: &Graph,
    l: &ListAssignment,
    cut: &Cutset,
    c1: &Coloring,
    c2: &Coloring,
) -> Result<(Coloring, MergeStats), MergeError> {
    let complex = complex_components(h, l, cut);
    let dprime: VertexSet = complex.iter().fold(VertexSet::new(), |acc, c| acc.union(c));
    let d2 = cut.d.difference(&dprime);
    let side1 = cut.b.union(&d2);
    let side2 = cut.a.union(&cut.d);
    if !c1.is_total_on(&side1) || !c2.is_total_on(&side2) {
        return Err(MergeError::Domain);
    }
    let mut c2 = c2.clone();
    let mut stats = MergeStats::default();
    let limit = h.n() * h.n() + 1;
    loop {
        let found = conflicts(h, &dprime, &cut.b, c1, &c2);
        stats.conflicts.push(found.len());
        let Some(&(u, _)) = found.first() else { break };
        if stats.conflicts.len() > limit {
            return Err(MergeError::TooLong(limit));
        }
        let comp = complex.iter().find(|c| c.contains(u)).unwrap();
        let colors = l.get(u);
        for d in comp {
            let now = c2.get(d).unwrap();
            c2.set(d, colors.without(now).only().unwrap());
        }
        if !c2.is_list_coloring(h, l, &side2) {
            return Err(MergeError::Improper);
        }
        let after = conflicts(h, &dprime, &cut.b, c1, &c2).len();
        if after >= found.len() {
            return Err(MergeError::NoProgress { before: found.len(), after });
        }
    }
    let mut out = Coloring::new(h.n());
    for v in &side2 {
        out.set(v, c2.get(v).unwrap());
    }
    for v in &side1 {
        out.set(v, c1.get(v).unwrap());
    }
    let covered = side1.union(&side2);
    if !out.is_list_coloring(h, l, &covered) {
        return Err(MergeError::Residual);
    }
    Ok((out, stats))
}

/// Cutset for side `pair`: the components of H|X̃_a and H|X̃_b holding a vertex
/// whose list meets the list of a neighbour in the far side.
pub fn extract_cutset(t: &CompanionTriple, l: &ListAssignment, pair: ColorSet, far: &VertexSet) -> Cutset {
    let mut d = VertexSet::new();
    for s in [pair, pair.complement()] {
        for comp in graph::components(&t.h, &t.xt_pair(s)) {
            let touches = comp.iter().any(|x| t.h.neighbors(x).intersection(far).iter().any(|z| l.get(x).meets(l.get(z))));
            if touches {
                d.union_with(&comp);
            }
        }
    }
    let b = t.h.vertices().difference(&d).difference(far);
    Cutset { pair, d, a: far.clone(), b }
}

/// a-grandchildren of every vertex: far-side vertices sharing a component of H|X̃_a.
fn grandchildren(t: &CompanionTriple, side: ColorSet, far: &VertexSet) -> Vec<VertexSet> {
    let mut out = vec![VertexSet::new(); t.n()];
    for comp in graph::components(&t.h, &t.xt_pair(side)) {
        let hood = t.h.neighborhood(&comp);
        let zs = hood.intersection(far);
        for x in hood.difference(far).iter() {
            out[x].union_with(&zs);
        }
    }
    out
}

/// Removes `side` colours from vertices of X̃ \ X̃_side seeing both classes of a
/// component of H|X̃_side.
fn strip_both_sides(t: &CompanionTriple, l: &mut ListAssignment, side: ColorSet) {
    let xs = t.xt_pair(side);
    for comp in graph::components(&t.h, &xs) {
        let (p1, p2) = sides_of(&t.h, &comp);
        for x in t.xt.difference(&xs).iter() {
            let nb = t.h.neighbors(x);
            if nb.intersects(&p1) && nb.intersects(&p2) {
                l.set(x, l.get(x).minus(side));
            }
        }
    }
}

/// One insulating branch: the lists, and the cutset for each side pair handled so far.
#[derive(Debug, Clone)]
pub struct Insulated {
    pub l: ListAssignment,
    pub cuts: [Option<Cutset>; 3],
}

/// The list family making side `pair` insulated, for the lists `l` of a near-companion triple.
pub fn insulate_pair(t: &CompanionTriple, l: &ListAssignment, pair: ColorSet, budget: &Budget) -> Result<Vec<ListAssignment>, ReductionError> {
    let idx = side_pairs().iter().position(|&s| s == pair).expect("pair is {1,i}");
    let far = z_partition(t)[idx].clone();
    if far.is_empty() {
        return Ok(vec![l.clone()]);
    }
    let other = pair.complement();
    if graph::bipartition(&t.h, &t.xt_pair(pair)).is_none() || graph::bipartition(&t.h, &t.xt_pair(other)).is_none() {
        return Ok(vec![]);
    }
    let ga = grandchildren(t, pair, &far);
    let gb = grandchildren(t, other, &far);

    let mut types: std::collections::BTreeMap<&VertexSet, VertexSet> = Default::default();
    for x in &t.xt {
        let m = t.hm.get(x);
        if m.len() == 2 && m.intersect(pair).len() == 1 {
            types.entry(&t.types[x]).or_default().insert(x);
        }
    }
    let types: Vec<VertexSet> = types.into_values().collect();
    let qopts: Vec<Vec<usize>> = types
        .iter()
        .map(|xs| xs.iter().filter(|&q| l.get(q).meets(pair) && !ga[q].is_empty()).collect())
        .collect();
    let popts: Vec<Vec<usize>> = types
        .iter()
        .map(|xs| xs.iter().filter(|&q| l.get(q).meets(other) && !gb[q].is_empty()).collect())
        .collect();
    let sizes: Vec<usize> = qopts.iter().chain(&popts).map(|o| o.len() + 1).collect();
    let count = sizes.iter().fold(1u128, |acc, &s| acc.saturating_mul(s as u128));
    if count > budget.max_members as u128 {
        return Err(ReductionError::Budget { stage: "insulate", count, cap: budget.max_members });
    }

    let m = types.len();
    let mut out = Vec::new();
    let mut seen = HashSet::new();
    let mut idx_vec = vec![0usize; sizes.len()];
    'outer: loop {
        let pick = |opts: &Vec<usize>, c: usize| (c > 0).then(|| opts[c - 1]);
        let chosen: Vec<(Option<usize>, Option<usize>)> =
            (0..m).map(|i| (pick(&qopts[i], idx_vec[i]), pick(&popts[i], idx_vec[m + i]))).collect();
        if chosen.iter().all(|(q, p)| q.is_none() || q != p) {
            let mut lq = l.clone();
            for (i, xs) in types.iter().enumerate() {
                let (q, p) = chosen[i];
                for (side, g, pick) in [(pair, &ga, q), (other, &gb, p)] {
                    match pick {
                        Some(v) => {
                            lq.set(v, lq.get(v).intersect(side));
                            for x in xs.iter().filter(|&x| x != v && g[v].is_subset(&g[x]) && g[v] != g[x]) {
                                lq.set(x, lq.get(x).minus(side));
                            }
                        }
                        None => {
                            let skip = [q, p];
                            for x in xs.iter().filter(|&x| !skip.contains(&Some(x)) && !g[x].is_empty()) {
                                lq.set(x, lq.get(x).minus(side));
                            }
                        }
                    }
                }
            }
            strip_both_sides(t, &mut lq, pair);
            strip_both_sides(t, &mut lq, other);
            let lq = update_exhaustively(&t.h, &lq);
            if lq.as_slice().iter().all(|c| !c.is_empty()) && seen.insert(lq.clone()) {
                out.push(lq);
            }
        }
        let mut k = 0;
        loop {
            if k == sizes.len() {
                break 'outer;
            }
            idx_vec[k] += 1;
            if idx_vec[k] < sizes[k] {
                break;
            }
            idx_vec[k] = 0;
            k += 1;
        }
    }
    Ok(out)
}

/// Runs the pair lemma for {1,2}, {1,3}, {1,4} in turn and attaches a checked
/// cutset for every nonempty far side.
pub fn insulate_all(t: &CompanionTriple, budget: &Budget) -> Result<Vec<Insulated>, ReductionError> {
    let mut family = vec![t.l.clone()];
    for pair in side_pairs() {
        let mut next = Vec::new();
        let mut seen = HashSet::new();
        for l in &family {
            for lq in insulate_pair(t, l, pair, budget)? {
                if seen.insert(lq.clone()) {
                    next.push(lq);
                }
            }
            if next.len() > budget.max_members {
                return Err(ReductionError::Budget { stage: "insulate", count: next.len() as u128, cap: budget.max_members });
            }
        }
        family = next;
    }
    let zs = z_partition(t);
    let mut out = Vec::with_capacity(family.len());
    for l in family {
        let mut cuts: [Option<Cutset>; 3] = Default::default();
        for (i, pair) in side_pairs().into_iter().enumerate() {
            if zs[i].is_empty() {
                continue;
            }
            let cut = extract_cutset(t, &l, pair, &zs[i]);
            if let Err(why) = is_insulating(&t.h, &l, &cut) {
                return Err(ReductionError::Invariant { stage: "insulate", detail: format!("{pair:?}: {why}") });
            }
            cuts[i] = Some(cut);
        }
        if let Some(v) = t.near_companion_violation(&l) {
            return Err(ReductionError::Invariant { stage: "insulate", detail: v });
        }
        out.push(Insulated { l, cuts });
    }
    Ok(out)
}

/// Colour helper used by the far side and the solver.
pub fn other_color(pair: ColorSet, c: Color) -> Color {
    pair.without(c).only().expect("two-colour pair")
}
