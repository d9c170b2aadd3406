//! Reproducible instance generators.
//!
//! Fallback families and why they are P6-free:
//! - complete multipartite graphs are P4-free (their complements are disjoint
//!   unions of cliques, and P4 is self-complementary);
//! - split graphs contain no induced 2K2, and P6 contains one.
//!
//! `gen_scaling` grows a small excellent instance by adding twins. An induced
//! path never contains two twins unless it has at most three vertices, so
//! twin expansion preserves P6-freeness.

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::graph::{is_pt_free, Graph, VertexSet};
use crate::lists::{ColorSet, Coloring};
use crate::precoloring::StarredPrecoloring;

#[derive(Debug, Error, PartialEq, Eq)]
#[error("generation budget of {attempts} attempts exhausted; last failing constraint: {constraint}")]
pub struct GenError {
    pub attempts: usize,
    pub constraint: String,
}

pub fn gen_p6free(n: usize, edge_prob: f64, rng_seed: u64) -> Graph {
    let mut rng = ChaCha8Rng::seed_from_u64(rng_seed);
    for _ in 0..200 {
        let mut g = Graph::empty(n);
        for u in 0..n {
            for v in u + 1..n {
                if rng.gen_bool(edge_prob) {
                    g.add_edge(u, v).unwrap();
                }
            }
        }
        if is_pt_free(&g, 6) {
            return g;
        }
    }
    if rng.gen_bool(0.5) {
        complete_multipartite(n, &mut rng)
    } else {
        split_graph(n, edge_prob, &mut rng)
    }
}

fn complete_multipartite(n: usize, rng: &mut ChaCha8Rng) -> Graph {
    let parts = rng.gen_range(1..=n.max(1));
    let part: Vec<usize> = (0..n).map(|_| rng.gen_range(0..parts)).collect();
    let mut g = Graph::empty(n);
    for u in 0..n {
        for v in u + 1..n {
            if part[u] != part[v] {
                g.add_edge(u, v).unwrap();
            }
        }
    }
    g
}

fn split_graph(n: usize, p: f64, rng: &mut ChaCha8Rng) -> Graph {
    let clique: Vec<bool> = (0..n).map(|_| rng.gen_bool(0.5)).collect();
    let mut g = Graph::empty(n);
    for u in 0..n {
        for v in u + 1..n {
            if (clique[u] && clique[v]) || ((clique[u] || clique[v]) && rng.gen_bool(p)) {
                g.add_edge(u, v).unwrap();
            }
        }
    }
    g
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct GenParams {
    pub seed_size: usize,
    pub x0_size: usize,
    pub x_size: usize,
    pub y_size: usize,
    pub max_component: usize,
    /// Extra edge density inside S beyond a spanning tree.
    pub p_seed: f64,
    /// Density of edges from X and X0 to S.
    pub p_to_seed: f64,
    pub p_xx: f64,
    pub p_yy: f64,
    /// Probability that an X-vertex is complete to a given Y*-component.
    pub p_attach: f64,
    /// Density of Y*-to-S and Y*-to-X0 edges.
    pub p_y_pre: f64,
    pub attempts: usize,
}

impl Default for GenParams {
    fn default() -> Self {
        GenParams {
            seed_size: 4,
            x0_size: 1,
            x_size: 6,
            y_size: 5,
            max_component: 3,
            p_seed: 0.5,
            p_to_seed: 0.5,
            p_xx: 0.3,
            p_yy: 0.4,
            p_attach: 0.4,
            p_y_pre: 0.1,
            attempts: 2000,
        }
    }
}

impl GenParams {
    pub fn n(&self) -> usize {
        self.seed_size + self.x0_size + self.x_size + self.y_size
    }

    /// A parameter set drawn from `rng`, with at most `max_n` vertices and seed size at most `max_seed`.
    pub fn random(rng: &mut impl Rng, max_n: usize, max_seed: usize) -> GenParams {
        let seed_size = rng.gen_range(3..=max_seed.max(3));
        let budget = max_n.saturating_sub(seed_size);
        let x_size = rng.gen_range(budget / 4..=budget / 2 + 1).min(budget);
        let y_size = rng.gen_range(0..=budget - x_size);
        let x0_size = rng.gen_range(0..=(budget - x_size - y_size).min(2));
        GenParams {
            seed_size,
            x0_size,
            x_size,
            y_size,
            max_component: rng.gen_range(1..=4),
            p_seed: rng.gen_range(0.3..0.9),
            p_to_seed: rng.gen_range(0.15..0.6),
            p_xx: rng.gen_range(0.05..0.6),
            p_yy: rng.gen_range(0.2..0.8),
            p_attach: rng.gen_range(0.2..0.8),
            p_y_pre: rng.gen_range(0.0..0.4),
            attempts: 3000,
        }
    }
}

pub fn gen_excellent(params: &GenParams, rng_seed: u64) -> Result<StarredPrecoloring, GenError> {
    let mut rng = ChaCha8Rng::seed_from_u64(rng_seed);
    let mut last = String::from("none");
    for _ in 0..params.attempts.max(1) {
        match attempt(params, &mut rng) {
            Ok(p) => return Ok(p),
            Err(why) => last = why,
        }
    }
    Err(GenError { attempts: params.attempts, constraint: last })
}

fn attempt(pr: &GenParams, rng: &mut ChaCha8Rng) -> Result<StarredPrecoloring, String> {
    let (ns, n0, nx, ny) = (pr.seed_size, pr.x0_size, pr.x_size, pr.y_size);
    if ns == 0 {
        return Err("seed must be nonempty".into());
    }
    let n = ns + n0 + nx + ny;
    let seed: Vec<usize> = (0..ns).collect();
    let x0: Vec<usize> = (ns..ns + n0).collect();
    let xs: Vec<usize> = (ns + n0..ns + n0 + nx).collect();
    let ys: Vec<usize> = (ns + n0 + nx..n).collect();
    let mut g = Graph::empty(n);
    let mut f = Coloring::new(n);

    for i in 1..ns {
        let j = rng.gen_range(0..i);
        g.add_edge(i, j).unwrap();
    }
    for i in 0..ns {
        for j in i + 1..ns {
            if !g.has_edge(i, j) && rng.gen_bool(pr.p_seed) {
                g.add_edge(i, j).unwrap();
            }
        }
    }
    let mut order = seed.clone();
    order.shuffle(rng);
    for &v in &order {
        let used = f.colors_of(g.neighbors(v));
        let free: Vec<u8> = used.complement().iter().collect();
        let &c = free.choose(rng).ok_or("seed coloring got stuck")?;
        // Prefer colors already in use on the seed half of the time, to keep palettes varied.
        let c = if rng.gen_bool(0.3) { free[0] } else { c };
        f.set(v, c);
    }
    let all_seed: VertexSet = seed.iter().copied().collect();

    for &v in &x0 {
        let c = rng.gen_range(1..=4u8);
        f.set(v, c);
        for &s in &seed {
            if f.get(s) != Some(c) && rng.gen_bool(pr.p_to_seed) {
                g.add_edge(v, s).unwrap();
            }
        }
    }
    for (a, &u) in x0.iter().enumerate() {
        for &v in &x0[a + 1..] {
            if f.get(u) != f.get(v) && rng.gen_bool(0.5) {
                g.add_edge(u, v).unwrap();
            }
        }
    }

    for &x in &xs {
        let t = seed_type(&seed, &f, pr.p_to_seed, rng).ok_or("no seed type with two colors")?;
        for s in t {
            g.add_edge(x, s).unwrap();
        }
        for &u in x0.iter().chain(xs.iter().filter(|&&u| u < x)) {
            if rng.gen_bool(pr.p_xx) {
                g.add_edge(x, u).unwrap();
            }
        }
    }

    // Y*-components: consecutive runs of `ys`, each connected.
    let mut comps: Vec<Vec<usize>> = Vec::new();
    let mut i = 0;
    while i < ys.len() {
        let size = rng.gen_range(1..=pr.max_component.max(1)).min(ys.len() - i);
        comps.push(ys[i..i + size].to_vec());
        i += size;
    }
    for comp in &comps {
        for a in 1..comp.len() {
            let b = rng.gen_range(0..a);
            g.add_edge(comp[a], comp[b]).unwrap();
        }
        for a in 0..comp.len() {
            for b in a + 1..comp.len() {
                if !g.has_edge(comp[a], comp[b]) && rng.gen_bool(pr.p_yy) {
                    g.add_edge(comp[a], comp[b]).unwrap();
                }
            }
        }
        for &y in comp {
            for &u in seed.iter().chain(&x0) {
                if rng.gen_bool(pr.p_y_pre) {
                    g.add_edge(y, u).unwrap();
                }
            }
        }
        let mut attached = false;
        for &x in &xs {
            if rng.gen_bool(pr.p_attach) {
                attached = true;
                for &y in comp {
                    g.add_edge(x, y).unwrap();
                }
            }
        }
        let complete_pre = seed.iter().chain(&x0).any(|&u| comp.iter().all(|&y| g.has_edge(u, y)));
        if !attached && !complete_pre {
            if let Some(&x) = xs.choose(rng) {
                for &y in comp {
                    g.add_edge(x, y).unwrap();
                }
            } else {
                let u = **seed.iter().chain(&x0).collect::<Vec<_>>().choose(rng).unwrap();
                for &y in comp {
                    if !g.has_edge(u, y) {
                        g.add_edge(u, y).unwrap();
                    }
                }
            }
        }
    }

    // A Y*- or X0-vertex complete to the seed loses one seed edge.
    for v in ns..n {
        if all_seed.is_subset(g.neighbors(v)) {
            let &s = seed.choose(rng).unwrap();
            g.remove_edge(v, s);
        }
    }
    for &x in &xs {
        if f.colors_of(&g.neighbors(x).intersection(&all_seed)).len() < 2 {
            return Err("an X-vertex sees fewer than two seed colors".into());
        }
    }
    for v in ns..n {
        if all_seed.is_subset(g.neighbors(v)) {
            return Err("a vertex is complete to the seed".into());
        }
    }
    let to_set = |v: &[usize]| -> VertexSet { v.iter().copied().collect() };
    let p = StarredPrecoloring::new(g, all_seed.clone(), to_set(&x0), to_set(&xs), to_set(&ys), f);
    p.validate().map_err(|v| v.to_string())?;
    if !is_pt_free(p.graph(), 6) {
        return Err("graph contains an induced P6".into());
    }
    Ok(p)
}

/// Random proper subset of the seed seeing at least two colors.
fn seed_type(seed: &[usize], f: &Coloring, p: f64, rng: &mut ChaCha8Rng) -> Option<Vec<usize>> {
    for _ in 0..50 {
        let t: Vec<usize> = seed.iter().copied().filter(|_| rng.gen_bool(p)).collect();
        let colors = t.iter().fold(ColorSet::EMPTY, |acc, &s| acc.with(f.get(s).unwrap()));
        if colors.len() >= 2 && t.len() < seed.len() {
            return Some(t);
        }
    }
    None
}

/// Extendable excellent instance with |S| = 4 on `n` vertices, grown from an
/// extendable template by non-adjacent twins. A twin can copy the colour of its
/// original, so extendability is kept, and substitution keeps the graph P6-free.
pub fn gen_scaling(n: usize, rng_seed: u64) -> Result<StarredPrecoloring, GenError> {
    let base = GenParams {
        seed_size: 4,
        x0_size: 1,
        x_size: 5,
        y_size: 4,
        max_component: 2,
        p_seed: 0.6,
        p_to_seed: 0.6,
        p_xx: 0.25,
        p_yy: 0.5,
        p_attach: 0.4,
        p_y_pre: 0.1,
        attempts: 5000,
    };
    let mut template = None;
    for k in 0..200u64 {
        let t = gen_excellent(&base, rng_seed.wrapping_add(k.wrapping_mul(0x9e37)))?;
        if matches!(crate::oracle::brute_force_extension(&t, 24), Ok(Some(_))) {
            template = Some(t);
            break;
        }
    }
    let mut t = template.ok_or(GenError { attempts: 200, constraint: "no extendable template".into() })?;
    let mut rng = ChaCha8Rng::seed_from_u64(rng_seed ^ 0x5eed);
    while t.n() < n {
        let pool: Vec<usize> = t.x().union(t.x0()).union(t.ystar()).to_vec();
        let &v = pool.choose(&mut rng).expect("template has non-seed vertices");
        t = add_twin(&t, v);
    }
    debug_assert!(t.validate().is_ok());
    Ok(t)
}

fn add_twin(p: &StarredPrecoloring, v: usize) -> StarredPrecoloring {
    let mut g = p.graph().clone();
    let w = g.add_vertex();
    for u in p.graph().neighbors(v).iter() {
        g.add_edge(w, u).unwrap();
    }
    let mut f = p.f().clone();
    f.resize(w + 1);
    let grow = |s: &VertexSet| {
        let mut s = s.clone();
        if s.contains(v) {
            s.insert(w);
        }
        s
    };
    if let Some(c) = p.f().get(v) {
        f.set(w, c);
    }
    StarredPrecoloring::new(g, p.seed().clone(), grow(p.x0()), grow(p.x()), grow(p.ystar()), f)
}

/// The smallest valid instance: a seed edge and nothing else.
pub fn minimal_instance() -> StarredPrecoloring {
    let g = Graph::from_edges(2, &[(0, 1)]).unwrap();
    let mut f = Coloring::new(2);
    f.set(0, 1);
    f.set(1, 2);
    StarredPrecoloring::new(g, VertexSet::range(2), VertexSet::new(), VertexSet::new(), VertexSet::new(), f)
}

/// Colors appearing on the seed of `p`.
pub fn seed_palette(p: &StarredPrecoloring) -> ColorSet {
    p.f().colors_of(p.seed())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn minimal_is_valid() {
        assert_eq!(minimal_instance().validate(), Ok(()));
    }

    #[test]
    fn reproducible() {
        let p = GenParams::default();
        let made = (0..20).filter_map(|s| gen_excellent(&p, s).ok().map(|a| (s, a))).collect::<Vec<_>>();
        assert!(made.len() >= 10, "defaults produced only {} instances", made.len());
        for (s, a) in made {
            assert_eq!(a.to_json(), gen_excellent(&p, s).unwrap().to_json());
        }
    }
}
