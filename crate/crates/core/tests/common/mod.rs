#![allow(dead_code)]

use p6ext::companion::{build_companion, CompanionTriple};
use p6ext::gen::{gen_excellent, GenParams};
use p6ext::graph::{Graph, VertexSet};
use p6ext::insulation::{is_insulating, side_pairs, Cutset};
use p6ext::lists::{ColorSet, Coloring, ListAssignment};
use p6ext::oracle::brute_force_list_color;
use p6ext::precoloring::{ColorPerm, StarredPrecoloring};
use p6ext::reduction::{to_orthogonal_collection, Budget};
use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// `count` generated instances with at most `max_n` vertices and seed size at most `max_seed`.
pub fn corpus(rs: u64, count: usize, max_n: usize, max_seed: usize) -> Vec<StarredPrecoloring> {
    let mut r = rng(rs);
    let mut out = Vec::new();
    let mut s = rs.wrapping_mul(1_000_003);
    while out.len() < count {
        let pr = GenParams::random(&mut r, max_n, max_seed);
        s += 1;
        if let Ok(p) = gen_excellent(&pr, s) {
            if p.n() <= max_n && p.seed().len() <= max_seed {
                out.push(p);
            }
        }
    }
    out
}

/// Companion triples of the orthogonal members of generated instances, skipping
/// members that are decided before the companion exists.
pub fn companions(rs: u64, count: usize, max_n: usize) -> Vec<CompanionTriple> {
    let mut out = Vec::new();
    let mut round = 0;
    while out.len() < count {
        for p in corpus(rs + round, 50, max_n, 6) {
            let Ok(col) = to_orthogonal_collection(&p, &Budget::default()) else { continue };
            for m in col {
                if let Ok(t) = build_companion(&m.p) {
                    out.push(t);
                }
            }
        }
        round += 1000;
    }
    out.truncate(count);
    out
}

/// A coloring of `h|dom` found by the oracle after renaming colours by `perm`,
/// which gives colorings the oracle's fixed order would not.
pub fn permuted_coloring(h: &Graph, l: &ListAssignment, dom: &VertexSet, perm: ColorPerm) -> Option<Coloring> {
    let lp = ListAssignment::from_vec(l.as_slice().iter().map(|&c| perm.apply_set(c)).collect());
    let c = brute_force_list_color(h, &lp, dom)?;
    let inv = perm.inverse();
    let mut out = Coloring::new(h.n());
    for v in dom {
        out.set(v, inv.apply(c.get(v).unwrap()));
    }
    Some(out)
}

pub fn random_perm(r: &mut impl Rng) -> ColorPerm {
    let mut c = [1u8, 2, 3, 4];
    c.shuffle(r);
    ColorPerm::new(c)
}

pub fn random_list(r: &mut impl Rng) -> ColorSet {
    ColorSet::from_mask(r.gen_range(1..16))
}

/// Random graph with a cutset D of bipartite components, far side A and rest B,
/// kept only if the cutset is insulating.
pub fn synthetic_insulated(r: &mut impl Rng) -> Option<(Graph, ListAssignment, Cutset)> {
    let pair = side_pairs()[r.gen_range(0..3)];
    let mut edges = vec![];
    let mut lists = vec![];
    let mut d = VertexSet::new();
    for _ in 0..r.gen_range(1..=3) {
        let side = if r.gen_bool(0.5) { pair } else { pair.complement() };
        let size = r.gen_range(1..=4);
        let base = lists.len();
        let complex = r.gen_bool(0.8);
        let colors: Vec<u8> = side.iter().collect();
        for k in 0..size {
            if k > 0 {
                edges.push((base + k, base + r.gen_range(0..k)));
            }
            lists.push(if complex { side } else { ColorSet::single(colors[r.gen_range(0..2)]) });
            d.insert(base + k);
        }
    }
    let na = r.gen_range(1..=3);
    let nb = r.gen_range(1..=4);
    let a: VertexSet = (lists.len()..lists.len() + na).collect();
    for _ in 0..na {
        lists.push(random_list(r));
    }
    let b: VertexSet = (lists.len()..lists.len() + nb).collect();
    for _ in 0..nb {
        lists.push(random_list(r));
    }
    let n = lists.len();
    for u in 0..n {
        for v in u + 1..n {
            if d.contains(u) && d.contains(v) {
                continue;
            }
            let cross = (a.contains(u) && b.contains(v)) || (a.contains(v) && b.contains(u));
            if cross && lists[u].meets(lists[v]) {
                continue;
            }
            if r.gen_bool(0.35) {
                edges.push((u, v));
            }
        }
    }
    let h = Graph::from_edges(n, &edges).unwrap();
    let l = ListAssignment::from_vec(lists);
    let cut = Cutset { pair, d, a, b };
    is_insulating(&h, &l, &cut).ok()?;
    Some((h, l, cut))
}

/// Induced P_t by checking every t-subset: connected with t-1 edges and max degree 2.
pub fn has_induced_path_exhaustive(g: &Graph, t: usize) -> bool {
    let n = g.n();
    if t == 0 {
        return true;
    }
    if t > n {
        return false;
    }
    let mut idx: Vec<usize> = (0..t).collect();
    loop {
        if subset_is_path(g, &idx) {
            return true;
        }
        let mut i = t;
        loop {
            if i == 0 {
                return false;
            }
            i -= 1;
            if idx[i] < n - t + i {
                idx[i] += 1;
                for j in i + 1..t {
                    idx[j] = idx[j - 1] + 1;
                }
                break;
            }
        }
    }
}

fn subset_is_path(g: &Graph, vs: &[usize]) -> bool {
    let mut edges = 0;
    let mut deg = vec![0; vs.len()];
    for i in 0..vs.len() {
        for j in i + 1..vs.len() {
            if g.has_edge(vs[i], vs[j]) {
                edges += 1;
                deg[i] += 1;
                deg[j] += 1;
            }
        }
    }
    if edges + 1 != vs.len() || deg.iter().any(|&d| d > 2) {
        return false;
    }
    // t-1 edges and no vertex of degree 3: a path iff connected.
    let set: VertexSet = vs.iter().copied().collect();
    p6ext::graph::is_connected(g, &set)
}

pub fn is_induced_path(g: &Graph, path: &[usize]) -> bool {
    for i in 0..path.len() {
        for j in i + 1..path.len() {
            if g.has_edge(path[i], path[j]) != (j == i + 1) {
                return false;
            }
        }
    }
    let set: VertexSet = path.iter().copied().collect();
    set.len() == path.len()
}

pub fn random_graph(r: &mut impl Rng, n: usize, p: f64) -> Graph {
    let mut g = Graph::empty(n);
    for u in 0..n {
        for v in u + 1..n {
            if r.gen_bool(p) {
                g.add_edge(u, v).unwrap();
            }
        }
    }
    g
}

/// 2-SAT by enumerating all assignments.
pub fn truth_table_sat(inst: &p6ext::twosat::TwoSatInstance) -> bool {
    let n = inst.num_vars();
    (0u32..1 << n).any(|mask| {
        let asg: Vec<bool> = (0..n).map(|i| mask >> i & 1 == 1).collect();
        inst.clauses().iter().all(|(a, b)| a.eval(&asg) || b.eval(&asg))
    })
}

pub fn random_two_sat(r: &mut impl Rng, max_vars: usize) -> p6ext::twosat::TwoSatInstance {
    use p6ext::twosat::TwoSatInstance;
    let n = r.gen_range(1..=max_vars);
    let mut inst = TwoSatInstance::new(n);
    let m = r.gen_range(0..=3 * n);
    for _ in 0..m {
        let a = random_lit(r, n);
        let b = random_lit(r, n);
        inst.add_clause(a, b);
    }
    inst
}

fn random_lit(r: &mut impl Rng, n: usize) -> p6ext::twosat::Lit {
    let v = r.gen_range(0..n);
    if r.gen_bool(0.5) {
        p6ext::twosat::Lit::pos(v)
    } else {
        p6ext::twosat::Lit::neg(v)
    }
}

/// Random lists of size at most two on a random graph, with a few singletons.
pub fn random_two_lists(r: &mut impl Rng, n: usize) -> ListAssignment {
    ListAssignment::from_vec(
        (0..n)
            .map(|_| {
                let mut c = [1u8, 2, 3, 4];
                c.shuffle(r);
                if r.gen_bool(0.2) {
                    ColorSet::single(c[0])
                } else {
                    ColorSet::of(&c[..2])
                }
            })
            .collect(),
    )
}

/// An insulated far side taken from the pipeline, optionally with randomly
/// shrunk far-side lists and pinned complex cutset components.
pub struct FarScenario {
    pub h: Graph,
    pub l: ListAssignment,
    pub z: VertexSet,
    pub da: VertexSet,
    pub db: VertexSet,
    pub pair: ColorSet,
    pub restricted: bool,
}

impl FarScenario {
    pub fn far_side(&self) -> p6ext::farside::FarSide<'_> {
        p6ext::farside::FarSide { h: &self.h, l: &self.l, z: &self.z, da: &self.da, db: &self.db, pair: self.pair }
    }

    pub fn domain(&self) -> VertexSet {
        self.z.union(&self.da).union(&self.db)
    }
}

/// Insulated list branches of companion triples, with their cutsets.
pub fn insulated(triples: &[CompanionTriple]) -> Vec<(&CompanionTriple, p6ext::insulation::Insulated)> {
    let mut out = Vec::new();
    for t in triples {
        if t.l.as_slice().iter().any(|c| c.is_empty()) {
            continue;
        }
        for ins in p6ext::insulation::insulate_all(t, &Budget::default()).expect("insulation succeeds") {
            out.push((t, ins));
        }
    }
    out
}

pub fn far_scenarios(rs: u64, triples: &[CompanionTriple], variants: usize) -> Vec<FarScenario> {
    use p6ext::insulation::{complex_components, z_partition};
    let mut r = rng(rs);
    let mut out = Vec::new();
    for (t, ins) in insulated(triples) {
        let zs = z_partition(t);
        for (i, cut) in ins.cuts.iter().enumerate() {
            let Some(cut) = cut else { continue };
            let da = cut.d.intersection(&t.xt_pair(cut.pair));
            let db = cut.d.intersection(&t.xt_pair(cut.pair.complement()));
            let make = |l: ListAssignment, restricted| FarScenario {
                h: t.h.clone(),
                l,
                z: zs[i].clone(),
                da: da.clone(),
                db: db.clone(),
                pair: cut.pair,
                restricted,
            };
            out.push(make(ins.l.clone(), false));
            for _ in 0..variants {
                let mut l2 = ins.l.clone();
                for z in &zs[i] {
                    let opts: Vec<u8> = l2.get(z).iter().collect();
                    if opts.len() > 1 && r.gen_bool(0.5) {
                        l2.set(z, l2.get(z).without(*opts.choose(&mut r).unwrap()));
                    }
                }
                for comp in complex_components(&t.h, &ins.l, cut) {
                    if !r.gen_bool(0.6) {
                        continue;
                    }
                    let parts = p6ext::graph::bipartition(&t.h, &comp).unwrap();
                    let (x1, x2) = &parts[0];
                    let cs: Vec<u8> = ins.l.get(comp.first().unwrap()).iter().collect();
                    let k = r.gen_range(0..2);
                    for v in x1 {
                        l2.set(v, ColorSet::single(cs[k]));
                    }
                    for v in x2 {
                        l2.set(v, ColorSet::single(cs[1 - k]));
                    }
                }
                if l2 != ins.l && is_insulating(&t.h, &l2, cut).is_ok() {
                    out.push(make(l2, true));
                }
            }
        }
    }
    out
}

/// Planted instance violating tidiness for some pair: a Y*-component y1 - y2
/// with M(y1) = {k, i, l}, M(y2) = {k, j, l}, complete to one vertex of X_{ki}
/// and one of X_{kj}; then random extra X and Y* vertices and a random renaming
/// of colours. `None` when the decoration breaks an axiom or P6-freeness.
pub fn planted_untidy(r: &mut impl Rng) -> Option<StarredPrecoloring> {
    let mut perm = [1u8, 2, 3, 4];
    perm.shuffle(r);
    let ns = 4 + r.gen_range(0..=1);
    let nx_extra = r.gen_range(0..=3);
    let ny_extra = r.gen_range(0..=3);
    let n = ns + 2 + nx_extra + 2 + ny_extra;
    let mut g = Graph::empty(n);
    let mut f = Coloring::new(n);
    for s in 0..ns {
        f.set(s, perm[s % 4]);
        if s > 0 {
            g.add_edge(s, s - 1).unwrap();
        }
    }
    for s in 0..ns {
        for t in s + 2..ns {
            if f.get(s) != f.get(t) && r.gen_bool(0.3) {
                g.add_edge(s, t).unwrap();
            }
        }
    }
    // seed vertex playing canonical colour c
    let by_color = |c: u8| (0..ns).find(|&s| f.get(s) == Some(perm[c as usize - 1])).unwrap();
    let (xa, xb) = (ns, ns + 1);
    let xs_extra: Vec<usize> = (ns + 2..ns + 2 + nx_extra).collect();
    let (y1, y2) = (ns + 2 + nx_extra, ns + 3 + nx_extra);
    let ys_extra: Vec<usize> = (y2 + 1..n).collect();
    for c in [3, 4] {
        g.add_edge(xa, by_color(c)).unwrap();
    }
    for c in [2, 4] {
        g.add_edge(xb, by_color(c)).unwrap();
    }
    g.add_edge(y1, y2).unwrap();
    g.add_edge(y1, by_color(3)).unwrap();
    g.add_edge(y2, by_color(2)).unwrap();
    for &x in &[xa, xb] {
        g.add_edge(x, y1).unwrap();
        g.add_edge(x, y2).unwrap();
    }
    for &x in &xs_extra {
        let mut seen = ColorSet::EMPTY;
        for s in 0..ns {
            if r.gen_bool(0.45) {
                g.add_edge(x, s).unwrap();
                seen = seen.with(f.get(s).unwrap());
            }
        }
        if seen.len() < 2 {
            return None;
        }
    }
    let xs: Vec<usize> = [xa, xb].into_iter().chain(xs_extra.iter().copied()).collect();
    for (i, &x) in xs.iter().enumerate() {
        for &u in &xs[..i] {
            if r.gen_bool(0.25) {
                g.add_edge(x, u).unwrap();
            }
        }
    }
    // extra Y*-vertices: singletons or joined to the planted component
    for &y in &ys_extra {
        if r.gen_bool(0.4) {
            let t = if r.gen_bool(0.5) { y1 } else { y2 };
            g.add_edge(y, t).unwrap();
        }
        for s in 0..ns {
            if r.gen_bool(0.25) {
                g.add_edge(y, s).unwrap();
            }
        }
    }
    let ys: Vec<usize> = [y1, y2].into_iter().chain(ys_extra.iter().copied()).collect();
    let yset: VertexSet = ys.iter().copied().collect();
    for comp in p6ext::graph::components(&g, &yset) {
        let attached: Vec<usize> = xs.iter().copied().filter(|&x| g.neighbors(x).intersects(&comp)).collect();
        for x in attached {
            for y in &comp {
                if !g.has_edge(x, y) {
                    g.add_edge(x, y).unwrap();
                }
            }
        }
        if !xs.iter().any(|&x| comp.is_subset(g.neighbors(x))) {
            let &x = xs_extra.choose(r).unwrap_or(&xa);
            for y in &comp {
                if !g.has_edge(x, y) {
                    g.add_edge(x, y).unwrap();
                }
            }
        }
    }
    let seed: VertexSet = (0..ns).collect();
    let p = StarredPrecoloring::new(g, seed, VertexSet::new(), xs.into_iter().collect(), yset, f);
    p.validate().ok()?;
    if !p6ext::graph::is_pt_free(p.graph(), 6) {
        return None;
    }
    Some(p)
}
