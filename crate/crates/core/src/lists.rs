use std::fmt;

use thiserror::Error;

use crate::graph::{Graph, VertexSet};
use crate::twosat::{Lit, TwoSatInstance};

pub type Color = u8;

/// Subset of {1,2,3,4}; color c is bit c-1.
#[derive(Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Default)]
pub struct ColorSet(u8);

impl serde::Serialize for ColorSet {
    fn serialize<S: serde::Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        s.collect_seq(self.iter())
    }
}

impl ColorSet {
    pub const EMPTY: ColorSet = ColorSet(0);
    pub const ALL: ColorSet = ColorSet(0b1111);

    pub fn from_mask(mask: u8) -> ColorSet {
        ColorSet(mask & 0b1111)
    }

    pub fn single(c: Color) -> ColorSet {
        debug_assert!((1..=4).contains(&c));
        ColorSet(1 << (c - 1))
    }

    pub fn of(colors: &[Color]) -> ColorSet {
        colors.iter().fold(ColorSet::EMPTY, |s, &c| s.with(c))
    }

    pub fn mask(self) -> u8 {
        self.0
    }

    pub fn contains(self, c: Color) -> bool {
        (1..=4).contains(&c) && self.0 >> (c - 1) & 1 == 1
    }

    pub fn with(self, c: Color) -> ColorSet {
        ColorSet(self.0 | 1 << (c - 1))
    }

    pub fn without(self, c: Color) -> ColorSet {
        ColorSet(self.0 & !(1 << (c - 1)))
    }

    pub fn len(self) -> usize {
        self.0.count_ones() as usize
    }

    pub fn is_empty(self) -> bool {
        self.0 == 0
    }

    pub fn union(self, o: ColorSet) -> ColorSet {
        ColorSet(self.0 | o.0)
    }

    pub fn intersect(self, o: ColorSet) -> ColorSet {
        ColorSet(self.0 & o.0)
    }

    pub fn minus(self, o: ColorSet) -> ColorSet {
        ColorSet(self.0 & !o.0)
    }

    pub fn complement(self) -> ColorSet {
        ColorSet(!self.0 & 0b1111)
    }

    pub fn meets(self, o: ColorSet) -> bool {
        self.0 & o.0 != 0
    }

    pub fn is_subset(self, o: ColorSet) -> bool {
        self.0 & !o.0 == 0
    }

    /// The color of a singleton.
    pub fn only(self) -> Option<Color> {
        (self.len() == 1).then(|| self.0.trailing_zeros() as Color + 1)
    }

    pub fn iter(self) -> impl Iterator<Item = Color> {
        (1..=4).filter(move |&c| self.contains(c))
    }

    /// All subsets of {1,2,3,4}, by mask.
    pub fn all_subsets() -> impl Iterator<Item = ColorSet> {
        (0..16).map(ColorSet)
    }
}

impl fmt::Debug for ColorSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{{")?;
        for (i, c) in self.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{c}")?;
        }
        write!(f, "}}")
    }
}

#[derive(Debug, Error, PartialEq, Eq)]
pub enum ListError {
    #[error("vertex {0} is used as an updating source but its list {1:?} is not a singleton")]
    NotSingleton(usize, ColorSet),
    #[error("vertex {0} has list {1:?}, larger than two")]
    ListTooLarge(usize, ColorSet),
}

/// Per-vertex lists over the vertices of a graph.
#[derive(Clone, PartialEq, Eq, Hash, Default)]
pub struct ListAssignment {
    lists: Vec<ColorSet>,
}

impl fmt::Debug for ListAssignment {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_map().entries(self.lists.iter().enumerate()).finish()
    }
}

impl ListAssignment {
    pub fn uniform(n: usize, l: ColorSet) -> Self {
        ListAssignment { lists: vec![l; n] }
    }

    pub fn from_vec(lists: Vec<ColorSet>) -> Self {
        ListAssignment { lists }
    }

    pub fn len(&self) -> usize {
        self.lists.len()
    }

    pub fn is_empty(&self) -> bool {
        self.lists.is_empty()
    }

    pub fn get(&self, v: usize) -> ColorSet {
        self.lists[v]
    }

    pub fn set(&mut self, v: usize, l: ColorSet) {
        self.lists[v] = l;
    }

    pub fn restrict(&mut self, v: usize, keep: ColorSet) {
        self.lists[v] = self.lists[v].intersect(keep);
    }

    pub fn as_slice(&self) -> &[ColorSet] {
        &self.lists
    }

    /// X^0(L) within `domain`.
    pub fn singletons(&self, domain: &VertexSet) -> VertexSet {
        domain.iter().filter(|&v| self.lists[v].len() == 1).collect()
    }

    pub fn is_refinement_of(&self, other: &ListAssignment) -> bool {
        self.lists.len() == other.lists.len() && self.lists.iter().zip(&other.lists).all(|(a, b)| a.is_subset(*b))
    }
}

/// Partial coloring; 0 marks vertices outside the domain.
#[derive(Clone, PartialEq, Eq, Hash, Default)]
pub struct Coloring {
    colors: Vec<Color>,
}

impl fmt::Debug for Coloring {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_map().entries(self.colors.iter().enumerate().filter(|(_, &c)| c != 0)).finish()
    }
}

impl Coloring {
    pub fn new(n: usize) -> Self {
        Coloring { colors: vec![0; n] }
    }

    pub fn len(&self) -> usize {
        self.colors.len()
    }

    pub fn is_empty(&self) -> bool {
        self.colors.is_empty()
    }

    pub fn get(&self, v: usize) -> Option<Color> {
        self.colors.get(v).copied().filter(|&c| c != 0)
    }

    pub fn set(&mut self, v: usize, c: Color) {
        debug_assert!((1..=4).contains(&c));
        self.colors[v] = c;
    }

    pub fn unset(&mut self, v: usize) {
        self.colors[v] = 0;
    }

    pub fn resize(&mut self, n: usize) {
        self.colors.resize(n, 0);
    }

    pub fn domain(&self) -> VertexSet {
        self.colors.iter().enumerate().filter(|(_, &c)| c != 0).map(|(v, _)| v).collect()
    }

    pub fn colors_of(&self, set: &VertexSet) -> ColorSet {
        set.iter().filter_map(|v| self.get(v)).fold(ColorSet::EMPTY, |s, c| s.with(c))
    }

    pub fn is_total_on(&self, set: &VertexSet) -> bool {
        set.iter().all(|v| self.get(v).is_some())
    }

    pub fn is_proper_on(&self, g: &Graph, set: &VertexSet) -> bool {
        set.iter().all(|v| match self.get(v) {
            None => true,
            Some(c) => g.neighbors(v).intersection(set).iter().all(|u| self.get(u) != Some(c)),
        })
    }

    pub fn respects(&self, l: &ListAssignment, set: &VertexSet) -> bool {
        set.iter().all(|v| self.get(v).is_some_and(|c| l.get(v).contains(c)))
    }

    /// Total on `set`, proper there, and inside the lists.
    pub fn is_list_coloring(&self, g: &Graph, l: &ListAssignment, set: &VertexSet) -> bool {
        self.respects(l, set) && self.is_proper_on(g, set)
    }

    pub fn as_slice(&self) -> &[Color] {
        &self.colors
    }
}

/// Removes from every vertex of `y` the colors of its singleton neighbours in `x`.
pub fn update_from(g: &Graph, l: &ListAssignment, x: &VertexSet, y: &VertexSet) -> Result<ListAssignment, ListError> {
    for v in x {
        if l.get(v).len() != 1 {
            return Err(ListError::NotSingleton(v, l.get(v)));
        }
    }
    let mut m = l.clone();
    for v in y {
        let forced = g.neighbors(v).intersection(x).iter().fold(ColorSet::EMPTY, |s, u| s.union(l.get(u)));
        m.set(v, l.get(v).minus(forced));
    }
    Ok(m)
}

/// Exhaustive updating of `g|domain`: repeat updating from X^0 until stable.
pub fn update_exhaustively_within(g: &Graph, l: &ListAssignment, domain: &VertexSet) -> ListAssignment {
    let mut cur = l.clone();
    let mut rounds = 0;
    loop {
        let x0 = cur.singletons(domain);
        let next = update_from(g, &cur, &x0, domain).expect("singletons are singletons");
        if next == cur {
            return cur;
        }
        rounds += 1;
        assert!(rounds <= 4 * domain.len().max(1), "exhaustive updating exceeded 4n rounds");
        cur = next;
    }
}

pub fn update_exhaustively(g: &Graph, l: &ListAssignment) -> ListAssignment {
    update_exhaustively_within(g, l, &g.vertices())
}

/// 2-list coloring through 2-SAT: each 2-list vertex is a variable that is true
/// when it takes the smaller color of its list.
pub fn edwards_two_list_color(g: &Graph, l: &ListAssignment, domain: &VertexSet) -> Result<Option<Coloring>, ListError> {
    let mut var = vec![usize::MAX; g.n()];
    let mut nv = 0;
    for v in domain {
        match l.get(v).len() {
            0 => return Ok(None),
            1 => {}
            2 => {
                var[v] = nv;
                nv += 1;
            }
            _ => return Err(ListError::ListTooLarge(v, l.get(v))),
        }
    }
    // Literal asserting "v gets c": Ok(Some(lit)), Ok(None) if constant true, Err if constant false.
    let takes = |v: usize, c: Color| -> Result<Option<Lit>, ()> {
        let lv = l.get(v);
        if !lv.contains(c) {
            Err(())
        } else if lv.len() == 1 {
            Ok(None)
        } else {
            let small = lv.iter().next().unwrap();
            Ok(Some(Lit { var: var[v], positive: c == small }))
        }
    };
    let mut inst = TwoSatInstance::new(nv);
    for u in domain {
        for v in g.neighbors(u).intersection(domain).iter().filter(|&v| v > u) {
            for c in l.get(u).intersect(l.get(v)).iter() {
                match (takes(u, c), takes(v, c)) {
                    (Ok(None), Ok(None)) => return Ok(None),
                    (Ok(None), Ok(Some(b))) => inst.add_unit(b.negate()),
                    (Ok(Some(a)), Ok(None)) => inst.add_unit(a.negate()),
                    (Ok(Some(a)), Ok(Some(b))) => inst.add_clause(a.negate(), b.negate()),
                    _ => unreachable!("c lies in both lists"),
                }
            }
        }
    }
    let Some(asg) = inst.solve() else { return Ok(None) };
    let mut c = Coloring::new(g.n());
    for v in domain {
        let lv = l.get(v);
        let col = if lv.len() == 1 {
            lv.only().unwrap()
        } else {
            let mut it = lv.iter();
            let (small, big) = (it.next().unwrap(), it.next().unwrap());
            if asg[var[v]] {
                small
            } else {
                big
            }
        };
        c.set(v, col);
    }
    debug_assert!(c.is_list_coloring(g, l, domain));
    Ok(Some(c))
}

/// Exact list coloring by branching on a vertex with fewest remaining colors.
pub fn exact_list_color(g: &Graph, l: &ListAssignment, domain: &VertexSet) -> Option<Coloring> {
    let mut avail: Vec<ColorSet> = (0..g.n()).map(|v| if domain.contains(v) { l.get(v) } else { ColorSet::EMPTY }).collect();
    let mut c = Coloring::new(g.n());
    let mut left = domain.clone();
    if branch(g, &mut avail, &mut c, &mut left) {
        Some(c)
    } else {
        None
    }
}

fn branch(g: &Graph, avail: &mut [ColorSet], c: &mut Coloring, left: &mut VertexSet) -> bool {
    let Some(v) = left.iter().min_by_key(|&v| (avail[v].len(), usize::MAX - g.degree(v))) else {
        return true;
    };
    if avail[v].is_empty() {
        return false;
    }
    left.remove(v);
    let nbrs = g.neighbors(v).intersection(left);
    for col in avail[v].iter() {
        c.set(v, col);
        let mut touched = Vec::new();
        let mut dead = false;
        for u in &nbrs {
            if avail[u].contains(col) {
                avail[u] = avail[u].without(col);
                touched.push(u);
                dead |= avail[u].is_empty();
            }
        }
        if !dead && branch(g, avail, c, left) {
            return true;
        }
        for u in touched {
            avail[u] = avail[u].with(col);
        }
    }
    c.unset(v);
    left.insert(v);
    false
}

/// Goodness of every color set of size at most three for `(g|comp, m)`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BadSetTable {
    good: [bool; 16],
}

impl BadSetTable {
    /// Only meaningful for |q| <= 3.
    pub fn is_bad(&self, q: ColorSet) -> bool {
        assert!(q.len() <= 3, "only sets of size at most three are tabulated");
        !self.good[q.mask() as usize]
    }

    pub fn is_good(&self, q: ColorSet) -> bool {
        !self.is_bad(q)
    }

    /// Inclusion-maximal bad sets among those of size at most three.
    pub fn maximal_bad(&self) -> Vec<ColorSet> {
        let small = || ColorSet::all_subsets().filter(|q| q.len() <= 3);
        small()
            .filter(|&q| self.is_bad(q))
            .filter(|&q| !small().any(|r| r != q && q.is_subset(r) && self.is_bad(r)))
            .collect()
    }
}

pub fn bad_set_table(g: &Graph, comp: &VertexSet, m: &ListAssignment) -> BadSetTable {
    let mut good = [false; 16];
    for q in ColorSet::all_subsets().filter(|q| q.len() <= 3) {
        let mut lq = m.clone();
        for v in comp {
            lq.restrict(v, q);
        }
        good[q.mask() as usize] = exact_list_color(g, &lq, comp).is_some();
    }
    let t = BadSetTable { good };
    for q in ColorSet::all_subsets().filter(|q| q.len() <= 3 && t.is_bad(*q)) {
        for r in ColorSet::all_subsets().filter(|r| r.is_subset(q)) {
            assert!(t.is_bad(r), "badness must be downward closed");
        }
    }
    t
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn update_one_neighbor() {
        let g = Graph::from_edges(2, &[(0, 1)]).unwrap();
        let l = ListAssignment::from_vec(vec![ColorSet::ALL, ColorSet::single(1)]);
        let m = update_from(&g, &l, &VertexSet::singleton(1), &VertexSet::singleton(0)).unwrap();
        assert_eq!(m.get(0), ColorSet::of(&[2, 3, 4]));
        assert!(update_from(&g, &l, &VertexSet::singleton(0), &VertexSet::singleton(1)).is_err());
    }

    #[test]
    fn forced_chain() {
        let g = Graph::from_edges(3, &[(0, 1), (1, 2)]).unwrap();
        let l = ListAssignment::from_vec(vec![ColorSet::of(&[1]), ColorSet::of(&[1, 2]), ColorSet::of(&[2, 3])]);
        let m = update_exhaustively(&g, &l);
        assert_eq!(m.get(1), ColorSet::single(2));
        assert_eq!(m.get(2), ColorSet::single(3));
        assert_eq!(update_exhaustively(&g, &m), m);
    }

    #[test]
    fn edwards_small() {
        let e = Graph::from_edges(2, &[(0, 1)]).unwrap();
        let l = ListAssignment::uniform(2, ColorSet::of(&[1, 2]));
        let c = edwards_two_list_color(&e, &l, &e.vertices()).unwrap().unwrap();
        assert_ne!(c.get(0), c.get(1));
        let tri = Graph::from_edges(3, &[(0, 1), (1, 2), (0, 2)]).unwrap();
        let l3 = ListAssignment::uniform(3, ColorSet::of(&[1, 2]));
        assert_eq!(edwards_two_list_color(&tri, &l3, &tri.vertices()), Ok(None));
        let big = ListAssignment::uniform(2, ColorSet::ALL);
        assert!(edwards_two_list_color(&e, &big, &e.vertices()).is_err());
    }

    #[test]
    fn exact_k4() {
        let edges: Vec<_> = (0..4).flat_map(|a| (a + 1..4).map(move |b| (a, b))).collect();
        let g = Graph::from_edges(4, &edges).unwrap();
        let l = ListAssignment::uniform(4, ColorSet::ALL);
        let c = exact_list_color(&g, &l, &g.vertices()).unwrap();
        assert!(c.is_list_coloring(&g, &l, &g.vertices()));
        assert!(exact_list_color(&g, &l, &VertexSet::new()).is_some());
    }

    #[test]
    fn bad_sets_of_an_edge() {
        let g = Graph::from_edges(2, &[(0, 1)]).unwrap();
        let m = ListAssignment::uniform(2, ColorSet::single(1));
        let t = bad_set_table(&g, &g.vertices(), &m);
        assert!(t.is_bad(ColorSet::of(&[1])));
        assert!(t.is_bad(ColorSet::of(&[2, 3])));
        assert_eq!(t.maximal_bad().len(), 4);
        let one = Graph::empty(1);
        let t1 = bad_set_table(&one, &one.vertices(), &ListAssignment::uniform(1, ColorSet::ALL));
        assert_eq!(t1.maximal_bad(), vec![ColorSet::EMPTY]);
    }
}
