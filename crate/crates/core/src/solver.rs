//! Top-level solve: orthogonal collection, companion triple, insulation, far
//! sides, merges, and the lift back to the original instance.

use std::collections::hash_map::DefaultHasher;
use std::hash::{Hash, Hasher};
use std::time::Instant;

use rayon::prelude::*;
use serde::Serialize;
use thiserror::Error;

use crate::companion::{build_companion, CompanionError, CompanionTriple};
use crate::farside::FarSide;
use crate::graph::VertexSet;
use crate::insulation::{insulate_all, merge_colorings, side_pairs, z_partition, Cutset, Insulated};
use crate::lists::{edwards_two_list_color, ColorSet, Coloring};
use crate::precoloring::{StarredPrecoloring, Violation};
use crate::reduction::{to_orthogonal_collection, Budget, OrthogonalMember, Provenance, ReductionError};

/// Default cap on |S|.
pub const DEFAULT_SEED_CAP: usize = 12;

#[derive(Debug, Clone)]
pub struct SolveConfig {
    pub seed_cap: usize,
    pub budget: Budget,
    pub jobs: usize,
}

impl Default for SolveConfig {
    fn default() -> Self {
        SolveConfig { seed_cap: DEFAULT_SEED_CAP, budget: Budget::default(), jobs: 1 }
    }
}

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum SolveError {
    #[error("invalid instance: {0}")]
    Invalid(#[from] Violation),
    #[error("seed has {size} vertices, above the cap of {cap}")]
    SeedTooLarge { size: usize, cap: usize },
    #[error("budget exceeded: {0}")]
    Budget(String),
    #[error("internal invariant failed: {0}")]
    Invariant(String),
    #[error("requires-companion-paper: {missing} is not implemented; use solve_excellent on an excellent starred precoloring")]
    Unimplemented { missing: &'static str },
}

impl From<ReductionError> for SolveError {
    fn from(e: ReductionError) -> Self {
        match e {
            ReductionError::Budget { .. } => SolveError::Budget(e.to_string()),
            ReductionError::Invariant { .. } => SolveError::Invariant(e.to_string()),
        }
    }
}

/// One JSON line of pipeline telemetry.
#[derive(Debug, Clone, Serialize)]
pub struct TraceEvent {
    pub stage: &'static str,
    pub input_hash: String,
    pub member: Option<usize>,
    pub count: usize,
    pub seed_sizes: Vec<usize>,
    pub micros: u128,
}

#[derive(Debug, Clone, Serialize)]
pub struct CutSummary {
    pub pair: ColorSet,
    pub d: Vec<usize>,
    pub far: Vec<usize>,
}

/// Which branch produced the answer.
#[derive(Debug, Clone, Serialize)]
pub struct Certificate {
    pub member: usize,
    pub provenance: Vec<Provenance>,
    pub list_branch: usize,
    pub companion_vertices: usize,
    pub cuts: Vec<CutSummary>,
}

#[derive(Debug, Clone)]
pub struct SolveReport {
    pub coloring: Option<Coloring>,
    pub certificate: Option<Certificate>,
    pub members: usize,
    pub trace: Vec<TraceEvent>,
}

pub fn instance_hash(p: &StarredPrecoloring) -> String {
    let mut h = DefaultHasher::new();
    p.to_json().hash(&mut h);
    format!("{:016x}", h.finish())
}

struct Tracer {
    events: Vec<TraceEvent>,
}

impl Tracer {
    fn push(&mut self, stage: &'static str, p: &StarredPrecoloring, member: Option<usize>, count: usize, start: Instant) {
        self.events.push(TraceEvent {
            stage,
            input_hash: instance_hash(p),
            member,
            count,
            seed_sizes: vec![p.seed().len()],
            micros: start.elapsed().as_micros(),
        });
    }
}

pub fn solve_excellent(p: &StarredPrecoloring, config: &SolveConfig) -> Result<Option<Coloring>, SolveError> {
    Ok(solve_with_report(p, config)?.coloring)
}

pub fn solve_with_report(p: &StarredPrecoloring, config: &SolveConfig) -> Result<SolveReport, SolveError> {
    let mut tracer = Tracer { events: Vec::new() };
    let start = Instant::now();
    p.validate()?;
    if p.seed().len() > config.seed_cap {
        return Err(SolveError::SeedTooLarge { size: p.seed().len(), cap: config.seed_cap });
    }
    tracer.push("validate", p, None, 1, start);
    let start = Instant::now();
    let members = to_orthogonal_collection(p, &config.budget)?;
    tracer.events.push(TraceEvent {
        stage: "orthogonal",
        input_hash: instance_hash(p),
        member: None,
        count: members.len(),
        seed_sizes: members.iter().map(|m| m.p.seed().len()).collect(),
        micros: start.elapsed().as_micros(),
    });

    let mut found: Option<(Coloring, Certificate)> = None;
    if config.jobs <= 1 {
        for (i, m) in members.iter().enumerate() {
            if let Some(hit) = solve_member(p, m, i, config, &mut tracer)? {
                found = Some(hit);
                break;
            }
        }
    } else {
        let pool = rayon::ThreadPoolBuilder::new()
            .num_threads(config.jobs)
            .build()
            .map_err(|e| SolveError::Invariant(e.to_string()))?;
        let results: Vec<_> = pool.install(|| {
            members
                .par_iter()
                .enumerate()
                .map(|(i, m)| {
                    let mut t = Tracer { events: Vec::new() };
                    (solve_member(p, m, i, config, &mut t), t.events)
                })
                .collect()
        });
        for (res, events) in results {
            tracer.events.extend(events);
            if let Some(hit) = res? {
                if found.is_none() {
                    found = Some(hit);
                }
            }
        }
    }
    let (coloring, certificate) = found.map_or((None, None), |(c, cert)| (Some(c), Some(cert)));
    Ok(SolveReport { coloring, certificate, members: members.len(), trace: tracer.events })
}

fn solve_member(
    p: &StarredPrecoloring,
    m: &OrthogonalMember,
    index: usize,
    config: &SolveConfig,
    tracer: &mut Tracer,
) -> Result<Option<(Coloring, Certificate)>, SolveError> {
    let start = Instant::now();
    let t = match build_companion(&m.p) {
        Ok(t) => t,
        Err(CompanionError::NoExtension) => return Ok(None),
        Err(e) => return Err(SolveError::Invariant(e.to_string())),
    };
    tracer.push("companion", &m.p, Some(index), t.n(), start);
    if t.l.as_slice().iter().any(|c| c.is_empty()) {
        return Ok(None);
    }
    let start = Instant::now();
    let family = insulate_all(&t, &config.budget)?;
    tracer.push("insulate", &m.p, Some(index), family.len(), start);
    let start = Instant::now();
    for (j, ins) in family.iter().enumerate() {
        let Some(hc) = assemble(&t, ins)? else { continue };
        let inner = t.lift(&hc).map_err(|e| SolveError::Invariant(e.to_string()))?;
        let full = m.lift(&inner, p.n());
        if !p.check_extension(&full) {
            return Err(SolveError::Invariant(format!("member {index} branch {j}: lifted coloring fails verification")));
        }
        tracer.push("assemble", &m.p, Some(index), j + 1, start);
        let cuts = ins
            .cuts
            .iter()
            .flatten()
            .map(|c| CutSummary { pair: c.pair, d: c.d.to_vec(), far: c.a.to_vec() })
            .collect();
        let cert = Certificate {
            member: index,
            provenance: m.provenance.clone(),
            list_branch: j,
            companion_vertices: t.n(),
            cuts,
        };
        return Ok(Some((full, cert)));
    }
    tracer.push("assemble", &m.p, Some(index), family.len(), start);
    Ok(None)
}

/// Colors the companion graph under one insulated list assignment: the far sides
/// by 2-SAT, the rest by the 2-list algorithm, then three merges.
pub fn assemble(t: &CompanionTriple, ins: &Insulated) -> Result<Option<Coloring>, SolveError> {
    let h = &t.h;
    let l = &ins.l;
    let zs = z_partition(t);
    let mut h1 = h.vertices();
    let mut parts: Vec<(&Cutset, Coloring)> = Vec::new();
    for (i, pair) in side_pairs().into_iter().enumerate() {
        let Some(cut) = &ins.cuts[i] else { continue };
        let da = cut.d.intersection(&t.xt_pair(pair));
        let db = cut.d.intersection(&t.xt_pair(pair.complement()));
        let fs = FarSide { h, l, z: &zs[i], da: &da, db: &db, pair };
        let Some(c) = fs.solve().map_err(|e| SolveError::Invariant(e.to_string()))? else { return Ok(None) };
        let two: VertexSet = cut.d.iter().filter(|&d| l.get(d).len() == 2).collect();
        h1 = h1.difference(&two).difference(&zs[i]);
        parts.push((cut, c));
    }
    for z in &t.z {
        if h1.contains(z) {
            return Err(SolveError::Invariant(format!("Z vertex {z} is in no far side")));
        }
    }
    if let Some(v) = h1.iter().find(|&v| l.get(v).len() > 2) {
        return Err(SolveError::Invariant(format!("vertex {v} of H_1 has list {:?}", l.get(v))));
    }
    let mut acc = match edwards_two_list_color(h, l, &h1) {
        Ok(Some(c)) => c,
        Ok(None) => return Ok(None),
        Err(e) => return Err(SolveError::Invariant(e.to_string())),
    };
    let mut covered = h1;
    for (cut, c2) in parts {
        let far = cut.a.union(&cut.d);
        let domain = covered.union(&far);
        let local = Cutset { pair: cut.pair, d: cut.d.clone(), a: cut.a.clone(), b: domain.difference(&far) };
        let (merged, _) = merge_colorings(h, l, &local, &acc, &c2).map_err(|e| SolveError::Invariant(e.to_string()))?;
        acc = merged;
        covered = domain;
    }
    if covered != h.vertices() || !acc.is_list_coloring(h, l, &covered) {
        return Err(SolveError::Invariant("assembled companion coloring is incomplete or improper".into()));
    }
    Ok(Some(acc))
}

/// General P6-free instances go through a reduction that lives outside this crate.
pub fn solve_full_stub(_g: &crate::graph::Graph, _x0: &VertexSet, _f: &Coloring) -> Result<Coloring, SolveError> {
    Err(SolveError::Unimplemented { missing: "reducing a general P6-free instance to excellent starred precolorings" })
}
