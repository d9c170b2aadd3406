//! Reduction of an excellent starred precoloring to an equivalent collection of
//! orthogonal ones.
//!
//! Every branching step is written for the color roles (k, l) = (1, 4) and is
//! run under the permutation sending 1, 4 to k, l. A branch descriptor only
//! ever influences the result through a few vertex sets (for instance the
//! neighbourhood of the chosen y inside the chosen type), so descriptors are
//! enumerated up to that data; the resulting collections are the same sets of
//! precolorings.

use std::collections::{BTreeMap, HashSet};

use serde::Serialize;
use thiserror::Error;

use crate::graph::VertexSet;
use crate::lists::{Color, ColorSet, Coloring};
use crate::precoloring::{all_pairs, stage_predicate, ColorPerm, Stage, StageWitness, StarredPrecoloring};

pub const DEFAULT_MAX_MEMBERS: usize = 1_000_000;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum ReductionError {
    #[error("instance exceeds desk-scale budget: {stage} would need {count} branches (cap {cap})")]
    Budget { stage: &'static str, count: u128, cap: usize },
    #[error("internal invariant failed after {stage}: {detail}")]
    Invariant { stage: &'static str, detail: String },
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Provenance {
    pub lemma: &'static str,
    pub perm: [Color; 4],
    pub descriptor: String,
}

impl Provenance {
    fn new(lemma: &'static str, perm: ColorPerm, descriptor: String) -> Self {
        Provenance { lemma, perm: [perm.apply(1), perm.apply(2), perm.apply(3), perm.apply(4)], descriptor }
    }
}

#[derive(Debug, Clone)]
pub struct Member {
    pub p: StarredPrecoloring,
    pub provenance: Vec<Provenance>,
}

#[derive(Debug, Clone, Default)]
pub struct EquivalentCollection {
    pub members: Vec<Member>,
}

impl EquivalentCollection {
    pub fn len(&self) -> usize {
        self.members.len()
    }

    pub fn is_empty(&self) -> bool {
        self.members.is_empty()
    }

    fn single(p: StarredPrecoloring) -> Self {
        EquivalentCollection { members: vec![Member { p, provenance: vec![] }] }
    }

    fn push_unique(&mut self, seen: &mut HashSet<StarredPrecoloring>, m: Member) {
        if seen.insert(m.p.clone()) {
            self.members.push(m);
        }
    }
}

#[derive(Debug, Clone, Copy)]
pub struct Budget {
    pub max_members: usize,
}

impl Default for Budget {
    fn default() -> Self {
        Budget { max_members: DEFAULT_MAX_MEMBERS }
    }
}

impl Budget {
    fn check(&self, stage: &'static str, count: u128) -> Result<(), ReductionError> {
        if count > self.max_members as u128 {
            Err(ReductionError::Budget { stage, count, cap: self.max_members })
        } else {
            Ok(())
        }
    }
}

fn product(sizes: impl Iterator<Item = usize>) -> u128 {
    sizes.fold(1u128, |acc, s| acc.saturating_mul(s as u128))
}

/// Odometer over the cartesian product of `0..sizes[i]`.
fn for_each_choice(sizes: &[usize], mut visit: impl FnMut(&[usize])) {
    if sizes.contains(&0) {
        return;
    }
    let mut idx = vec![0; sizes.len()];
    loop {
        visit(&idx);
        let mut i = 0;
        loop {
            if i == sizes.len() {
                return;
            }
            idx[i] += 1;
            if idx[i] < sizes[i] {
                break;
            }
            idx[i] = 0;
            i += 1;
        }
    }
}

/// Types T of X with L_P(T) equal to `list`, as (T, X(T)) in bitmask order.
fn types_with_list(p: &StarredPrecoloring, list: ColorSet) -> Vec<VertexSet> {
    p.types(p.x()).into_iter().filter(|(t, _)| p.f().colors_of(t).complement() == list).map(|(_, xs)| xs).collect()
}

fn normalized_or_empty(p: &StarredPrecoloring) -> Option<StarredPrecoloring> {
    p.normalize().ok()
}

/// Applies `step` to every member, concatenating the results.
fn fan_out(
    input: EquivalentCollection,
    budget: &Budget,
    stage: &'static str,
    mut step: impl FnMut(&StarredPrecoloring) -> Result<EquivalentCollection, ReductionError>,
) -> Result<EquivalentCollection, ReductionError> {
    let mut out = EquivalentCollection::default();
    let mut seen = HashSet::new();
    for m in input.members {
        for child in step(&m.p)?.members {
            let mut provenance = m.provenance.clone();
            provenance.extend(child.provenance);
            out.push_unique(&mut seen, Member { p: child.p, provenance });
            budget.check(stage, out.len() as u128)?;
        }
    }
    Ok(out)
}

// ---------------------------------------------------------------------------
// clean

/// Y of the clean step: 2,3 in M(y) and some u in C(y) with 1 in M(u).
fn clean_targets(p: &StarredPrecoloring, s: ColorPerm) -> VertexSet {
    let m = p.mp();
    let mut out = VertexSet::new();
    for comp in p.y_components() {
        if !comp.iter().any(|u| m.get(u).contains(s.apply(1))) {
            continue;
        }
        for y in &comp {
            if m.get(y).contains(s.apply(2)) && m.get(y).contains(s.apply(3)) {
                out.insert(y);
            }
        }
    }
    out
}

/// One slot of a clean/tidy descriptor: a type, the colour its unchosen
/// members are forced to, and the neighbourhoods N(y) ∩ X(T) of the targets.
struct TypeSlot {
    other: Color,
    hoods: Vec<VertexSet>,
    /// (x_r, N(y_r) ∩ X(T_r)) for the non-empty options.
    options: Vec<(usize, VertexSet)>,
}

fn type_slots(p: &StarredPrecoloring, s: ColorPerm, hood_of: &[usize]) -> Vec<TypeSlot> {
    let g = p.graph();
    let mut slots = Vec::new();
    for other in [s.apply(2), s.apply(3)] {
        for members in types_with_list(p, ColorSet::of(&[s.apply(1), other])) {
            let mut hoods: Vec<VertexSet> = hood_of.iter().map(|&y| g.neighbors(y).intersection(&members)).collect();
            hoods.sort();
            hoods.dedup();
            let mut options = Vec::new();
            let mut seen = HashSet::new();
            for x in &members {
                for &y in hood_of {
                    if g.has_edge(x, y) {
                        let hood = g.neighbors(y).intersection(&members);
                        if seen.insert((x, hood.clone())) {
                            options.push((x, hood));
                        }
                    }
                }
            }
            slots.push(TypeSlot { other, hoods, options });
        }
    }
    slots
}

/// Shared construction of the clean and tidy steps.
fn seed_branches(
    p: &StarredPrecoloring,
    s: ColorPerm,
    slots: &[TypeSlot],
    lemma: &'static str,
    budget: &Budget,
) -> Result<EquivalentCollection, ReductionError> {
    let sizes: Vec<usize> = slots.iter().map(|t| t.options.len() + 1).collect();
    budget.check(lemma, product(sizes.iter().copied()))?;
    let mut out = EquivalentCollection::default();
    let mut seen = HashSet::new();
    for_each_choice(&sizes, |idx| {
        let mut s_new = VertexSet::new();
        let mut x0_new = VertexSet::new();
        let mut f = Coloring::new(p.n());
        let mut desc = Vec::new();
        for (slot, &choice) in slots.iter().zip(idx) {
            if choice == 0 {
                for h in &slot.hoods {
                    for v in h {
                        x0_new.insert(v);
                        f.set(v, slot.other);
                    }
                }
                desc.push("-".to_string());
            } else {
                let (xr, ref hood) = slot.options[choice - 1];
                s_new.insert(xr);
                f.set(xr, s.apply(1));
                let mut base = hood.clone();
                base.remove(xr);
                for h in slot.hoods.iter().filter(|h| h.is_subset(&base)) {
                    for v in h {
                        x0_new.insert(v);
                        f.set(v, slot.other);
                    }
                }
                desc.push(format!("x{xr}/{:?}", hood));
            }
        }
        if let Some(q) = p.move_to_seed(&s_new, &x0_new, &f).and_then(|q| normalized_or_empty(&q)) {
            let prov = Provenance::new(lemma, s, desc.join(" "));
            out.push_unique(&mut seen, Member { p: q, provenance: vec![prov] });
        }
    });
    Ok(out)
}

pub fn make_clean_step(p: &StarredPrecoloring, k: Color, l: Color, budget: &Budget) -> Result<EquivalentCollection, ReductionError> {
    let Some(p) = normalized_or_empty(p) else { return Ok(EquivalentCollection::default()) };
    if stage_predicate(&p, Stage::Clean(k, l)).is_ok() {
        return Ok(EquivalentCollection::single(p));
    }
    let s = ColorPerm::for_pair(k, l);
    let targets = clean_targets(&p, s).to_vec();
    let slots = type_slots(&p, s, &targets);
    seed_branches(&p, s, &slots, "clean", budget)
}

pub fn make_clean(p: &StarredPrecoloring, budget: &Budget) -> Result<EquivalentCollection, ReductionError> {
    let mut col = EquivalentCollection::single(p.clone());
    for (k, l) in all_pairs() {
        col = fan_out(col, budget, "clean", |q| make_clean_step(q, k, l, budget))?;
    }
    Ok(col)
}

// ---------------------------------------------------------------------------
// tidy

/// Y of the tidy step as pairs (y2, y3), represented by y2: 2 in M(y2),
/// 3 in M(y3), same component, joined by a path with 4 in every list, and
/// some member of the component has 1 in its list.
fn tidy_targets(p: &StarredPrecoloring, s: ColorPerm) -> VertexSet {
    let m = p.mp();
    let (c1, c2, c3, c4) = (s.apply(1), s.apply(2), s.apply(3), s.apply(4));
    let mut out = VertexSet::new();
    for comp in p.y_components() {
        if !comp.iter().any(|u| m.get(u).contains(c1)) {
            continue;
        }
        let lane: VertexSet = comp.iter().filter(|&u| m.get(u).contains(c4)).collect();
        for part in crate::graph::components(p.graph(), &lane) {
            let has3 = part.iter().any(|u| m.get(u).contains(c3));
            if has3 {
                for y2 in part.iter().filter(|&u| m.get(u).contains(c2)) {
                    out.insert(y2);
                }
            }
        }
    }
    out
}

pub fn make_tidy_step(p: &StarredPrecoloring, k: Color, l: Color, budget: &Budget) -> Result<EquivalentCollection, ReductionError> {
    let Some(p) = normalized_or_empty(p) else { return Ok(EquivalentCollection::default()) };
    if stage_predicate(&p, Stage::Tidy(k, l)).is_ok() {
        return Ok(EquivalentCollection::single(p));
    }
    let s = ColorPerm::for_pair(k, l);
    // x is complete to {y2, y3} exactly when it is adjacent to y2, by axiom (E).
    let targets = tidy_targets(&p, s).to_vec();
    let slots = type_slots(&p, s, &targets);
    seed_branches(&p, s, &slots, "tidy", budget)
}

pub fn make_tidy(p: &StarredPrecoloring, budget: &Budget) -> Result<EquivalentCollection, ReductionError> {
    let mut col = EquivalentCollection::single(p.clone());
    for (k, l) in all_pairs() {
        col = fan_out(col, budget, "tidy", |q| make_tidy_step(q, k, l, budget))?;
    }
    Ok(col)
}

// ---------------------------------------------------------------------------
// orderly and spotless (one construction serves both)

fn split_step(p: &StarredPrecoloring, s: ColorPerm, lemma: &'static str, budget: &Budget) -> Result<EquivalentCollection, ReductionError> {
    let g = p.graph();
    let m = p.mp();
    let (c1, c2, c3, c4) = (s.apply(1), s.apply(2), s.apply(3), s.apply(4));
    let ys: Vec<usize> = p.ystar().iter().filter(|&y| m.get(y).contains(c2) && m.get(y).contains(c3)).collect();
    let itypes = types_with_list(p, ColorSet::of(&[c1, c2]));
    let jtypes = types_with_list(p, ColorSet::of(&[c1, c3]));
    let hood_options = |members: &VertexSet| -> Vec<VertexSet> {
        let mut hs: Vec<VertexSet> =
            ys.iter().map(|&y| g.neighbors(y).intersection(members)).filter(|h| !h.is_empty()).collect();
        hs.sort();
        hs.dedup();
        hs
    };
    let (iopts, jopts): (Vec<Vec<VertexSet>>, Vec<Vec<VertexSet>>) = if itypes.is_empty() || jtypes.is_empty() {
        (vec![], vec![])
    } else {
        (itypes.iter().map(hood_options).collect(), jtypes.iter().map(hood_options).collect())
    };
    let sizes: Vec<usize> = iopts.iter().chain(&jopts).map(|o| o.len() + 1).collect();
    budget.check(lemma, product(sizes.iter().copied()))?;
    let ni = iopts.len();
    let mut out = EquivalentCollection::default();
    let mut seen = HashSet::new();
    for_each_choice(&sizes, |idx| {
        let pick = |opts: &Vec<VertexSet>, c: usize| (c > 0).then(|| opts[c - 1].clone());
        let mut x0_new = VertexSet::new();
        let mut f = Coloring::new(p.n());
        let mut dead = false;
        'pairs: for (a, ti) in itypes.iter().enumerate().take(ni) {
            for (b, tj) in jtypes.iter().enumerate() {
                let (si, qj) = (pick(&iopts[a], idx[a]), pick(&jopts[b], idx[ni + b]));
                // T is moved with colour 1; `rest_i`, `rest_j` are what y must still see.
                let (t, rest_i, rest_j) = match (&si, &qj) {
                    (Some(hi), Some(hj)) => {
                        if hi.iter().any(|u| g.neighbors(u).intersects(hj)) {
                            dead = true;
                            break 'pairs;
                        }
                        (hi.union(hj), ti.difference(hi), tj.difference(hj))
                    }
                    (Some(hi), None) => (hi.clone(), ti.difference(hi), tj.clone()),
                    (None, Some(hj)) => (hj.clone(), ti.clone(), tj.difference(hj)),
                    (None, None) => (VertexSet::new(), ti.clone(), tj.clone()),
                };
                for v in &t {
                    x0_new.insert(v);
                    f.set(v, c1);
                }
                for &y in &ys {
                    let ny = g.neighbors(y);
                    if t.is_subset(ny) && ny.intersects(&rest_i) && ny.intersects(&rest_j) {
                        if !m.get(y).contains(c4) {
                            dead = true;
                            break 'pairs;
                        }
                        x0_new.insert(y);
                        f.set(y, c4);
                    }
                }
            }
        }
        if dead {
            return;
        }
        if let Some(q) = p.move_to_seed(&VertexSet::new(), &x0_new, &f).and_then(|q| normalized_or_empty(&q)) {
            let desc = idx.iter().map(|c| c.to_string()).collect::<Vec<_>>().join(",");
            out.push_unique(&mut seen, Member { p: q, provenance: vec![Provenance::new(lemma, s, desc)] });
        }
    });
    Ok(out)
}

pub fn make_orderly_step(p: &StarredPrecoloring, k: Color, l: Color, budget: &Budget) -> Result<EquivalentCollection, ReductionError> {
    let Some(p) = normalized_or_empty(p) else { return Ok(EquivalentCollection::default()) };
    if stage_predicate(&p, Stage::Orderly(k, l)).is_ok() {
        return Ok(EquivalentCollection::single(p));
    }
    split_step(&p, ColorPerm::for_pair(k, l), "orderly", budget)
}

pub fn make_orderly(p: &StarredPrecoloring, budget: &Budget) -> Result<EquivalentCollection, ReductionError> {
    let mut col = EquivalentCollection::single(p.clone());
    for (k, l) in all_pairs() {
        col = fan_out(col, budget, "orderly", |q| make_orderly_step(q, k, l, budget))?;
    }
    Ok(col)
}

pub fn make_spotless_step(p: &StarredPrecoloring, k: Color, l: Color, budget: &Budget) -> Result<EquivalentCollection, ReductionError> {
    let Some(p) = normalized_or_empty(p) else { return Ok(EquivalentCollection::default()) };
    if stage_predicate(&p, Stage::Spotless(k, l)).is_ok() {
        return Ok(EquivalentCollection::single(p));
    }
    split_step(&p, ColorPerm::for_pair(k, l), "spotless", budget)
}

pub fn make_spotless(p: &StarredPrecoloring, budget: &Budget) -> Result<EquivalentCollection, ReductionError> {
    let mut col = EquivalentCollection::single(p.clone());
    for (k, l) in all_pairs() {
        col = fan_out(col, budget, "spotless", |q| make_spotless_step(q, k, l, budget))?;
    }
    Ok(col)
}

/// The four stages in sequence; each member is then checked to be near-orthogonal.
pub fn make_near_orthogonal(p: &StarredPrecoloring, budget: &Budget) -> Result<EquivalentCollection, ReductionError> {
    let col = make_clean(p, budget)?;
    let col = fan_out(col, budget, "tidy", |q| make_tidy(q, budget))?;
    let col = fan_out(col, budget, "orderly", |q| make_orderly(q, budget))?;
    let col = fan_out(col, budget, "spotless", |q| make_spotless(q, budget))?;
    for m in &col.members {
        if let Err(w) = stage_predicate(&m.p, Stage::NearOrthogonal) {
            return Err(invariant("near-orthogonal", &m.p, w));
        }
    }
    Ok(col)
}

fn invariant(stage: &'static str, p: &StarredPrecoloring, w: StageWitness) -> ReductionError {
    ReductionError::Invariant { stage, detail: format!("witness {w:?} in {}", p.to_json()) }
}

// ---------------------------------------------------------------------------
// smooth candidates

/// Pairs (T, T') of X-types whose lists share exactly one colour, with the
/// possible (a, b) choices of the corresponding descriptor triple.
fn smooth_slots(p: &StarredPrecoloring) -> Vec<(Color, Vec<(usize, usize)>)> {
    let g = p.graph();
    let m = p.mp();
    let types: Vec<(ColorSet, VertexSet)> =
        p.types(p.x()).into_iter().map(|(t, xs)| (p.f().colors_of(&t).complement(), xs)).collect();
    let mut slots = Vec::new();
    for (la, xa) in &types {
        for (lb, xb) in &types {
            let common = la.intersect(*lb);
            if common.len() != 1 || std::ptr::eq(xa, xb) {
                continue;
            }
            let mut opts = Vec::new();
            for a in xa {
                for b in xb.difference(g.neighbors(a)).iter() {
                    let both = g.neighbors(a).intersection(g.neighbors(b)).intersection(p.ystar());
                    if both.iter().any(|y| la.is_subset(m.get(y))) {
                        opts.push((a, b));
                    }
                }
            }
            slots.push((common.only().unwrap(), opts));
        }
    }
    slots
}

pub fn make_smooth_candidates(p: &StarredPrecoloring, budget: &Budget) -> Result<EquivalentCollection, ReductionError> {
    let Some(p) = normalized_or_empty(p) else { return Ok(EquivalentCollection::default()) };
    let slots = smooth_slots(&p);
    let sizes: Vec<usize> = slots.iter().map(|(_, o)| o.len() + 1).collect();
    budget.check("smooth", product(sizes.iter().copied()))?;
    let mut out = EquivalentCollection::single(p.clone());
    let mut seen: HashSet<StarredPrecoloring> = HashSet::from([p.clone()]);
    for_each_choice(&sizes, |idx| {
        let mut s_new = VertexSet::new();
        let mut f = Coloring::new(p.n());
        let mut desc = Vec::new();
        for ((color, opts), &c) in slots.iter().zip(idx) {
            if c == 0 {
                continue;
            }
            let (a, b) = opts[c - 1];
            for v in [a, b] {
                if f.get(v).is_some_and(|old| old != *color) {
                    return;
                }
                s_new.insert(v);
                f.set(v, *color);
            }
            desc.push(format!("{a},{b}:{color}"));
        }
        if s_new.is_empty() {
            return;
        }
        if let Some(q) = p.move_to_seed(&s_new, &VertexSet::new(), &f).and_then(|q| normalized_or_empty(&q)) {
            let prov = Provenance::new("smooth", ColorPerm::identity(), desc.join(" "));
            out.push_unique(&mut seen, Member { p: q, provenance: vec![prov] });
        }
    });
    Ok(out)
}

// ---------------------------------------------------------------------------
// orthogonalize

/// An orthogonal precoloring of an induced subgraph, with what is needed to
/// lift its extensions back.
#[derive(Debug, Clone)]
pub struct OrthogonalMember {
    pub p: StarredPrecoloring,
    /// `origin[v]` is the id in the parent graph of vertex `v` of `p`.
    pub origin: Vec<usize>,
    /// Removed vertices with their free colours, in parent ids.
    pub free: Vec<(usize, Color)>,
    pub provenance: Vec<Provenance>,
}

impl OrthogonalMember {
    pub fn lift(&self, c: &Coloring, parent_n: usize) -> Coloring {
        let mut out = Coloring::new(parent_n);
        for (v, &o) in self.origin.iter().enumerate() {
            out.set(o, c.get(v).expect("total coloring"));
        }
        for &(z, col) in &self.free {
            out.set(z, col);
        }
        out
    }
}

/// `None` when forced moves conflict, in which case `p` is not smooth.
pub fn orthogonalize(p: &StarredPrecoloring) -> Option<OrthogonalMember> {
    let p = p.normalize().ok()?;
    let identity = || (0..p.n()).collect::<Vec<_>>();
    if stage_predicate(&p, Stage::Orthogonal).is_ok() {
        return Some(OrthogonalMember { origin: identity(), p, free: vec![], provenance: vec![] });
    }
    let g = p.graph();
    let m = p.mp();
    let mut x0_new = VertexSet::new();
    let mut f = Coloring::new(p.n());
    let mut removed: BTreeMap<usize, Color> = BTreeMap::new();
    let mut w = VertexSet::new();
    for comp in p.y_components() {
        let Some(z) = comp.iter().find(|&u| m.get(u).len() >= 3) else {
            w.union_with(&comp);
            continue;
        };
        let att = g.neighbors(z).intersection(p.x());
        if crate::precoloring::lists_orthogonal(m, &att) {
            continue;
        }
        // Attachments lie in X_{k a} ∪ X_{k b}; orient so that a ∈ M(z).
        let lists: Vec<ColorSet> = {
            let mut ls: Vec<ColorSet> = att.iter().map(|x| m.get(x)).collect();
            ls.sort();
            ls.dedup();
            ls
        };
        if lists.len() != 2 || lists[0].intersect(lists[1]).len() != 1 {
            debug_assert!(false, "troublesome component without near-orthogonal attachments");
            return None;
        }
        let k = lists[0].intersect(lists[1]).only().unwrap();
        let (mut a, mut b) = (lists[0].without(k).only().unwrap(), lists[1].without(k).only().unwrap());
        if !m.get(z).contains(a) {
            std::mem::swap(&mut a, &mut b);
        }
        let l = ColorSet::ALL.without(k).without(a).without(b).only().unwrap();
        let xka = att.iter().filter(|&x| m.get(x) == ColorSet::of(&[k, a])).collect::<VertexSet>();
        let xkb = att.iter().filter(|&x| m.get(x) == ColorSet::of(&[k, b])).collect::<VertexSet>();
        let set = |vs: &VertexSet, c: Color, f: &mut Coloring, x0: &mut VertexSet| -> bool {
            for v in vs {
                if f.get(v).is_some_and(|old| old != c) {
                    return false;
                }
                f.set(v, c);
                x0.insert(v);
            }
            true
        };
        if comp.iter().any(|y| m.get(y) == ColorSet::of(&[k, b])) {
            if !set(&xka, a, &mut f, &mut x0_new) {
                return None;
            }
        } else if comp.len() >= 2 || g.neighbors(z).iter().any(|v| p.x0().contains(v) && p.f().get(v) == Some(l)) {
            if !set(&xkb, b, &mut f, &mut x0_new) {
                return None;
            }
        } else {
            removed.insert(z, l);
        }
    }
    let q = p.move_to_seed(&VertexSet::new(), &x0_new, &f)?;
    let zset: VertexSet = removed.keys().copied().collect();
    let ystar = q.ystar().difference(&w).difference(&zset);
    let x = q.x().union(&w);
    let full = StarredPrecoloring::new(g.clone(), q.seed().clone(), q.x0().clone(), x, ystar, q.f().clone());
    let (sub, origin) = full.induced(&g.vertices().difference(&zset));
    debug_assert!(sub.validate().is_ok(), "orthogonalize broke an axiom: {:?}", sub.validate());
    let sub = sub.normalize().ok()?;
    Some(OrthogonalMember {
        p: sub,
        origin,
        free: removed.into_iter().collect(),
        provenance: vec![Provenance::new("orthogonal", ColorPerm::identity(), format!("Z={zset:?} W={w:?}"))],
    })
}

/// The full section: near-orthogonal collection, smooth candidates, orthogonalization.
pub fn to_orthogonal_collection(p: &StarredPrecoloring, budget: &Budget) -> Result<Vec<OrthogonalMember>, ReductionError> {
    let near = make_near_orthogonal(p, budget)?;
    let mut out = Vec::new();
    for m in near.members {
        for s in make_smooth_candidates(&m.p, budget)?.members {
            if let Some(mut o) = orthogonalize(&s.p) {
                if let Err(w) = stage_predicate(&o.p, Stage::Orthogonal) {
                    return Err(invariant("orthogonalize", &o.p, w));
                }
                let mut prov = m.provenance.clone();
                prov.extend(s.provenance);
                prov.append(&mut o.provenance);
                o.provenance = prov;
                out.push(o);
                budget.check("orthogonal", out.len() as u128)?;
            }
        }
    }
    Ok(out)
}
