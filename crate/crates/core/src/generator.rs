//! Growth simulation.
//!
//! Each step adds one vertex with `x` outgoing arcs. All `x` targets are
//! drawn from the graph as it stood before the step; degrees and weights
//! change only once the whole increment is in place. Targets may repeat
//! unless distinct targets are requested, and a new vertex never attaches
//! to itself.

use std::io::Write;

use rand::distr::weighted::WeightedIndex;
use rand::distr::Distribution;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::error::{Error, Result};
use crate::exact::DegreeDistribution;
use crate::joint::{edge_from_arc, JointDegreeDistribution, JointKind};
use crate::model::{AttachmentRule, IncrementSpec, ModelSpec, SeedPolicy, WeightFunction};
use crate::sampler::WeightedSampler;

/// Generator for stream `stream` of base seed `seed`.
///
/// Streams of one seed are independent, so replication `j` of a batch uses
/// `rng_for(seed, j)` and the batch result does not depend on scheduling.
pub fn rng_for(seed: u64, stream: u64) -> ChaCha8Rng {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(stream);
    rng
}

#[derive(Debug, Clone, Copy, Default, PartialEq, Eq)]
pub struct GrowOptions {
    /// Redraw repeated targets within an increment so the graph stays simple.
    pub distinct_targets: bool,
}

#[derive(Debug, Clone, PartialEq)]
pub struct GrowingGraph {
    arcs: Vec<(usize, usize)>,
    degree: Vec<u32>,
    seed_vertices: usize,
    seed_arcs: usize,
    total_weight: f64,
}

impl GrowingGraph {
    /// Arcs as `(source, target)` in creation order.
    pub fn arcs(&self) -> &[(usize, usize)] {
        &self.arcs
    }

    pub fn degree(&self) -> &[u32] {
        &self.degree
    }

    pub fn n(&self) -> usize {
        self.degree.len()
    }

    pub fn seed_vertices(&self) -> usize {
        self.seed_vertices
    }

    pub fn seed_arcs(&self) -> usize {
        self.seed_arcs
    }

    /// `Σ_v f(degree_v)` under the model's weight function (the equivalent
    /// linear one for hybrid rules).
    pub fn total_weight(&self) -> f64 {
        self.total_weight
    }

    pub fn mean_degree(&self) -> f64 {
        2.0 * self.arcs.len() as f64 / self.n() as f64
    }

    /// One `source target` pair per line, 0-indexed.
    pub fn write_edge_list<W: Write>(&self, mut out: W) -> std::io::Result<()> {
        for &(a, b) in &self.arcs {
            writeln!(out, "{a} {b}")?;
        }
        Ok(())
    }

    fn from_arcs(arcs: Vec<(usize, usize)>, n: usize) -> Self {
        let mut degree = vec![0u32; n];
        for &(a, b) in &arcs {
            degree[a] += 1;
            degree[b] += 1;
        }
        GrowingGraph {
            seed_vertices: n,
            seed_arcs: arcs.len(),
            arcs,
            degree,
            total_weight: 0.0,
        }
    }
}

fn complete_graph(n0: usize) -> Vec<(usize, usize)> {
    let mut arcs = Vec::with_capacity(n0 * n0.saturating_sub(1) / 2);
    for v in 1..n0 {
        for u in 0..v {
            arcs.push((v, u));
        }
    }
    arcs
}

/// Initial graph for `policy`.
///
/// The automatic policy uses the complete graph on `2m + 1` vertices (with
/// `m` rounded up for stochastic increments), whose arc count is `m` times
/// its vertex count. Arcs point from later to earlier vertices.
pub fn make_seed(policy: &SeedPolicy, model: &ModelSpec) -> Result<GrowingGraph> {
    let mut g = match policy {
        SeedPolicy::Auto => {
            let m = model.m().ceil() as usize;
            GrowingGraph::from_arcs(complete_graph(2 * m + 1), 2 * m + 1)
        }
        SeedPolicy::CompleteGraph { n0 } => {
            if *n0 == 0 {
                return Err(Error::model("seed graph is empty"));
            }
            GrowingGraph::from_arcs(complete_graph(*n0), *n0)
        }
        SeedPolicy::ExplicitEdges(edges) => {
            if edges.is_empty() {
                return Err(Error::model("seed graph is empty"));
            }
            if let Some(&(a, b)) = edges.iter().find(|(a, b)| a == b) {
                return Err(Error::model(format!("seed edge ({a}, {b}) is a self-loop")));
            }
            let n = edges.iter().map(|&(a, b)| a.max(b)).max().unwrap_or(0) + 1;
            GrowingGraph::from_arcs(edges.clone(), n)
        }
    };
    let f = model.weight_function();
    let check_vertices = !matches!(model.rule, AttachmentRule::Hybrid { .. });
    let mut total = 0.0;
    for (v, &d) in g.degree.iter().enumerate() {
        let w = f.value(d);
        if check_vertices && w < 0.0 {
            return Err(Error::model(format!(
                "seed vertex {v} of degree {d} has negative weight {w}"
            )));
        }
        total += w;
    }
    g.total_weight = total;
    Ok(g)
}

/// Number of arcs in the next increment.
pub fn draw_increment_size<R: Rng + ?Sized>(r: &IncrementSpec, rng: &mut R) -> u32 {
    IncrementSampler::new(r).draw(rng)
}

enum IncrementSampler {
    Fixed(u32),
    Stochastic {
        first: u32,
        index: WeightedIndex<f64>,
    },
}

impl IncrementSampler {
    fn new(r: &IncrementSpec) -> Self {
        match r {
            IncrementSpec::Fixed { m } => IncrementSampler::Fixed(*m),
            IncrementSpec::Stochastic(d) => {
                let probs: Vec<f64> = (d.g()..=d.h()).map(|x| d.prob(x)).collect();
                match WeightedIndex::new(&probs) {
                    Ok(index) => IncrementSampler::Stochastic {
                        first: d.g(),
                        index,
                    },
                    // A validated distribution always has positive mass.
                    Err(_) => IncrementSampler::Fixed(d.g()),
                }
            }
        }
    }

    fn draw<R: Rng + ?Sized>(&self, rng: &mut R) -> u32 {
        match self {
            IncrementSampler::Fixed(m) => *m,
            IncrementSampler::Stochastic { first, index } => first + index.sample(rng) as u32,
        }
    }
}

/// How targets are drawn.
enum Picker {
    /// Per arc: uniform vertex with probability `a`, else a uniform arc endpoint.
    Hybrid {
        a: f64,
    },
    /// Weight `k + s` with `s >= 0`: a uniform arc endpoint with probability
    /// `2R / (2R + sN)`, else a uniform vertex. The constant weight is the
    /// pure-uniform case.
    Shifted {
        s: f64,
    },
    Constant,
    Tree {
        f: WeightFunction,
        sampler: WeightedSampler,
    },
}

/// Growth state. Most callers want [`grow`].
pub struct Grower {
    graph: GrowingGraph,
    picker: Picker,
    increments: IncrementSampler,
    endpoints: Vec<usize>,
    /// Vertices that can be drawn.
    attachable: usize,
    options: GrowOptions,
    targets: Vec<usize>,
    /// Linear or constant weight with the same attachment law, used for
    /// the reported total weight of the mixture pickers.
    equivalent: WeightFunction,
}

impl Grower {
    pub fn new(model: &ModelSpec, options: GrowOptions) -> Result<Self> {
        let graph = make_seed(&model.seed, model)?;
        let picker = match &model.rule {
            AttachmentRule::Hybrid { a } => Picker::Hybrid { a: *a },
            AttachmentRule::Linear(WeightFunction::Constant) => Picker::Constant,
            AttachmentRule::Linear(WeightFunction::Linear { s }) if *s >= 0.0 => {
                Picker::Shifted { s: *s }
            }
            AttachmentRule::Linear(f) | AttachmentRule::General(f) => {
                let mut sampler = WeightedSampler::with_capacity(graph.n());
                for &d in &graph.degree {
                    sampler.push(f.value(d))?;
                }
                Picker::Tree {
                    f: f.clone(),
                    sampler,
                }
            }
        };
        let mut endpoints = Vec::new();
        if matches!(picker, Picker::Hybrid { .. } | Picker::Shifted { .. }) {
            endpoints.reserve(2 * graph.arcs.len());
            for &(a, b) in &graph.arcs {
                endpoints.push(a);
                endpoints.push(b);
            }
        }
        let mut grower = Grower {
            graph,
            picker,
            increments: IncrementSampler::new(&model.increment),
            endpoints,
            attachable: 0,
            options,
            targets: Vec::new(),
            equivalent: model.weight_function(),
        };
        grower.attachable = (0..grower.graph.n())
            .filter(|&v| grower.can_attach(grower.graph.degree[v]))
            .count();
        Ok(grower)
    }

    pub fn graph(&self) -> &GrowingGraph {
        &self.graph
    }

    pub fn into_graph(self) -> GrowingGraph {
        self.graph
    }

    /// Per-vertex sampling weights when targets come from the sum tree.
    pub fn sampler(&self) -> Option<&WeightedSampler> {
        match &self.picker {
            Picker::Tree { sampler, .. } => Some(sampler),
            _ => None,
        }
    }

    fn can_attach(&self, d: u32) -> bool {
        match &self.picker {
            Picker::Hybrid { a } => *a > 0.0 || d > 0,
            Picker::Shifted { s } => *s > 0.0 || d > 0,
            Picker::Constant => true,
            Picker::Tree { f, .. } => f.value(d) > 0.0,
        }
    }

    fn zero_weight(&self) -> Error {
        Error::ZeroTotalWeight(format!(
            "no attachable vertex among {} vertices",
            self.graph.n()
        ))
    }

    fn pick<R: Rng + ?Sized>(&self, rng: &mut R) -> Result<usize> {
        let n = self.graph.n();
        let r2 = self.endpoints.len();
        let uniform = match &self.picker {
            Picker::Hybrid { a } => *a >= 1.0 || (*a > 0.0 && rng.random::<f64>() < *a),
            Picker::Shifted { s } => {
                let total = r2 as f64 + s * n as f64;
                rng.random::<f64>() * total >= r2 as f64
            }
            Picker::Constant => true,
            Picker::Tree { sampler, .. } => {
                return sampler.sample(rng).map_err(|_| self.zero_weight());
            }
        };
        if uniform {
            if n == 0 {
                return Err(self.zero_weight());
            }
            Ok(rng.random_range(0..n))
        } else {
            if r2 == 0 {
                return Err(self.zero_weight());
            }
            Ok(self.endpoints[rng.random_range(0..r2)])
        }
    }

    /// Adds one increment.
    pub fn step<R: Rng + ?Sized>(&mut self, rng: &mut R) -> Result<()> {
        let x = self.increments.draw(rng);
        let mut targets = std::mem::take(&mut self.targets);
        targets.clear();
        if self.options.distinct_targets && self.attachable < x as usize {
            return Err(Error::Infeasible(format!(
                "cannot draw {x} distinct targets from {} attachable vertices",
                self.attachable
            )));
        }
        for _ in 0..x {
            let mut t = self.pick(rng)?;
            if self.options.distinct_targets {
                while targets.contains(&t) {
                    t = self.pick(rng)?;
                }
            }
            targets.push(t);
        }
        self.attach(&targets)?;
        self.targets = targets;
        Ok(())
    }

    fn attach(&mut self, targets: &[usize]) -> Result<()> {
        let v = self.graph.n();
        let x = targets.len() as u32;
        for &t in targets {
            self.graph.arcs.push((v, t));
            let before = self.graph.degree[t];
            self.graph.degree[t] += 1;
            if !self.can_attach(before) && self.can_attach(before + 1) {
                self.attachable += 1;
            }
        }
        self.graph.degree.push(x);
        if self.can_attach(x) {
            self.attachable += 1;
        }
        match &mut self.picker {
            Picker::Tree { f, sampler } => {
                for &t in targets {
                    sampler.set(t, f.value(self.graph.degree[t]))?;
                }
                sampler.push(f.value(x))?;
                self.graph.total_weight = sampler.total();
            }
            Picker::Hybrid { .. } | Picker::Shifted { .. } => {
                for &t in targets {
                    self.endpoints.push(v);
                    self.endpoints.push(t);
                }
                let (r2, n) = (self.endpoints.len() as f64, (v + 1) as f64);
                self.graph.total_weight = match self.equivalent {
                    WeightFunction::Linear { s } => r2 + s * n,
                    _ => n,
                };
            }
            Picker::Constant => self.graph.total_weight += 1.0,
        }
        Ok(())
    }
}

/// Grows the model's seed graph to `target_n` vertices.
pub fn grow(model: &ModelSpec, target_n: usize, rng_seed: u64) -> Result<GrowingGraph> {
    grow_with(
        model,
        target_n,
        &mut rng_for(rng_seed, 0),
        GrowOptions::default(),
    )
}

pub fn grow_with<R: Rng + ?Sized>(
    model: &ModelSpec,
    target_n: usize,
    rng: &mut R,
    options: GrowOptions,
) -> Result<GrowingGraph> {
    let mut grower = Grower::new(model, options)?;
    if target_n < grower.graph.n() {
        return Err(Error::domain(format!(
            "target size {target_n} is below the seed size {}",
            grower.graph.n()
        )));
    }
    grower
        .graph
        .arcs
        .reserve((target_n - grower.graph.n()) * model.m().ceil() as usize);
    grower.graph.degree.reserve(target_n - grower.graph.n());
    while grower.graph.n() < target_n {
        grower.step(rng)?;
    }
    Ok(grower.into_graph())
}

/// Vertex counts by degree; merging is exact and order-independent.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct DegreeCounts {
    counts: Vec<u64>,
}

impl DegreeCounts {
    pub fn from_graph(g: &GrowingGraph) -> Self {
        let max = g.degree.iter().copied().max().unwrap_or(0) as usize;
        let mut counts = vec![0u64; max + 1];
        for &d in &g.degree {
            counts[d as usize] += 1;
        }
        DegreeCounts { counts }
    }

    pub fn merge(&mut self, other: &Self) {
        if other.counts.len() > self.counts.len() {
            self.counts.resize(other.counts.len(), 0);
        }
        for (c, o) in self.counts.iter_mut().zip(&other.counts) {
            *c += o;
        }
    }

    /// Count per degree, indexed by degree.
    pub fn counts(&self) -> &[u64] {
        &self.counts
    }

    pub fn total(&self) -> u64 {
        self.counts.iter().sum()
    }

    /// Normalised histogram; `mean_weight` is left empty.
    pub fn to_distribution(&self) -> DegreeDistribution {
        let total = self.total() as f64;
        let k_min = self.counts.iter().position(|&c| c > 0).unwrap_or(0);
        let q = self.counts[k_min..]
            .iter()
            .map(|&c| c as f64 / total)
            .collect();
        DegreeDistribution::new(k_min as u32, q, None)
    }
}

/// Arc counts by endpoint degrees `(source, target)` within a square window.
/// Arcs with an endpoint beyond the window still count towards the total
/// and show up as tail mass.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ArcCounts {
    window: u32,
    counts: Vec<u64>,
    arcs: u64,
    min_degree: u32,
}

impl ArcCounts {
    pub fn empty(window: u32) -> Self {
        let w = window as usize + 1;
        ArcCounts {
            window,
            counts: vec![0; w * w],
            arcs: 0,
            min_degree: u32::MAX,
        }
    }

    pub fn from_graph(g: &GrowingGraph, window: u32) -> Self {
        let w = window as usize + 1;
        let mut counts = vec![0u64; w * w];
        let mut min_degree = u32::MAX;
        for &(a, b) in &g.arcs {
            let (l, k) = (g.degree[a], g.degree[b]);
            min_degree = min_degree.min(l).min(k);
            if l <= window && k <= window {
                counts[l as usize * w + k as usize] += 1;
            }
        }
        ArcCounts {
            window,
            counts,
            arcs: g.arcs.len() as u64,
            min_degree,
        }
    }

    pub fn merge(&mut self, other: &Self) {
        assert_eq!(
            self.window, other.window,
            "merging arc counts over different windows"
        );
        for (c, o) in self.counts.iter_mut().zip(&other.counts) {
            *c += o;
        }
        self.arcs += other.arcs;
        self.min_degree = self.min_degree.min(other.min_degree);
    }

    pub fn arcs(&self) -> u64 {
        self.arcs
    }

    pub fn to_distribution(&self) -> JointDegreeDistribution {
        let total = self.arcs as f64;
        let data = self.counts.iter().map(|&c| c as f64 / total).collect();
        let k_min = if self.min_degree == u32::MAX {
            0
        } else {
            self.min_degree
        };
        JointDegreeDistribution::from_dense(
            k_min,
            self.window,
            JointKind::Arc,
            data,
            format!("empirical arcs={}", self.arcs),
            true,
        )
    }
}

/// Empirical vertex-degree distribution.
pub fn degree_histogram(g: &GrowingGraph) -> DegreeDistribution {
    DegreeCounts::from_graph(g).to_distribution()
}

/// Empirical arc endpoint-degree distribution over `l, k <= window`.
pub fn arc_endpoint_histogram(g: &GrowingGraph, window: u32) -> JointDegreeDistribution {
    ArcCounts::from_graph(g, window).to_distribution()
}

/// Empirical edge endpoint-degree distribution over `l, k <= window`.
pub fn edge_endpoint_histogram(g: &GrowingGraph, window: u32) -> JointDegreeDistribution {
    edge_from_arc(&arc_endpoint_histogram(g, window)).expect("arc histogram")
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::model::eval_weight;

    #[test]
    fn seeds() {
        let l2 = ModelSpec::linear(2, 0.0).unwrap();
        let g = make_seed(&SeedPolicy::Auto, &l2).unwrap();
        assert_eq!((g.n(), g.arcs().len()), (5, 10));
        let l1 = ModelSpec::linear(1, 0.0).unwrap();
        let g = make_seed(&SeedPolicy::Auto, &l1).unwrap();
        assert_eq!((g.n(), g.arcs().len()), (3, 3));
        let g = make_seed(&SeedPolicy::ExplicitEdges(vec![(0, 1)]), &l1).unwrap();
        assert_eq!((g.n(), g.arcs().len()), (2, 1));
        assert!(make_seed(&SeedPolicy::ExplicitEdges(vec![]), &l1).is_err());
        assert!(make_seed(&SeedPolicy::CompleteGraph { n0: 0 }, &l1).is_err());
        let r = IncrementSpec::stochastic(&[(1, 0.5), (2, 0.5)]).unwrap();
        let st = ModelSpec::general(WeightFunction::Linear { s: 0.0 }, r).unwrap();
        let g = make_seed(&SeedPolicy::Auto, &st).unwrap();
        assert_eq!(g.n(), 5);
    }

    #[test]
    fn seed_with_negative_weight_is_rejected() {
        let m = ModelSpec::linear(2, -1.5)
            .unwrap()
            .with_seed(SeedPolicy::ExplicitEdges(vec![(0, 1), (1, 2)]));
        assert!(matches!(grow(&m, 10, 1), Err(Error::InvalidModel(_))));
    }

    #[test]
    fn growing_to_seed_size_is_identity() {
        let m = ModelSpec::hybrid(2, 0.3).unwrap();
        let g = grow(&m, 5, 42).unwrap();
        assert_eq!(g, make_seed(&SeedPolicy::Auto, &m).unwrap());
        assert!(grow(&m, 4, 42).is_err());
    }

    #[test]
    fn single_arc_histograms() {
        let m = ModelSpec::linear(1, 0.0)
            .unwrap()
            .with_seed(SeedPolicy::ExplicitEdges(vec![(0, 1)]));
        let g = grow(&m, 2, 0).unwrap();
        let h = degree_histogram(&g);
        assert_eq!(h.get(1), 1.0);
        let j = arc_endpoint_histogram(&g, 5);
        assert_eq!(j.get(1, 1), 1.0);
        assert_eq!(j.tail_mass(), 0.0);
    }

    #[test]
    fn complete_seed_histogram() {
        let m = ModelSpec::linear(2, 0.0).unwrap();
        let g = make_seed(&SeedPolicy::Auto, &m).unwrap();
        assert_eq!(degree_histogram(&g).get(4), 1.0);
    }

    #[test]
    fn structure_invariants() {
        let models = [
            ModelSpec::linear(2, 0.0).unwrap(),
            ModelSpec::linear(3, 1.5).unwrap(),
            ModelSpec::linear(2, -1.2).unwrap(),
            ModelSpec::constant(2).unwrap(),
            ModelSpec::hybrid(2, 0.5).unwrap(),
            ModelSpec::general(
                WeightFunction::tabulated(vec![0.0, 0.5, 1.0], 0.0, 4).unwrap(),
                IncrementSpec::stochastic(&[(1, 0.3), (2, 0.4), (4, 0.3)]).unwrap(),
            )
            .unwrap(),
        ];
        for model in &models {
            let g = grow(model, 3000, 7).unwrap();
            assert_eq!(g.n(), 3000);
            let sum: u64 = g.degree().iter().map(|&d| u64::from(d)).sum();
            assert_eq!(sum, 2 * g.arcs().len() as u64);
            let mut out = vec![0u32; g.n()];
            for &(a, b) in g.arcs() {
                assert!(a > b || a < g.seed_vertices(), "arc ({a}, {b})");
                out[a] += 1;
            }
            for &x in &out[g.seed_vertices()..] {
                assert!(x >= model.increment.min_size());
                assert!(x <= model.increment.max_size());
            }
            let f = model.weight_function();
            let want: f64 = g.degree().iter().map(|&d| f.value(d)).sum();
            assert!(
                (g.total_weight() - want).abs() < 1e-9 * want,
                "{model:?}: {} vs {want}",
                g.total_weight()
            );
        }
    }

    #[test]
    fn tree_weights_track_degrees() {
        let f = WeightFunction::tabulated(vec![0.0, 0.7, 2.0], -0.5, 4).unwrap();
        let model = ModelSpec::general(f.clone(), IncrementSpec::fixed(2).unwrap()).unwrap();
        let mut grower = Grower::new(&model, GrowOptions::default()).unwrap();
        let mut rng = rng_for(3, 0);
        for _ in 0..500 {
            grower.step(&mut rng).unwrap();
            let s = grower.sampler().unwrap();
            for (v, &d) in grower.graph().degree().iter().enumerate() {
                assert_eq!(s.weight(v), eval_weight(&f, d).unwrap());
            }
        }
    }

    #[test]
    fn deterministic_and_stream_separated() {
        let m = ModelSpec::linear(2, 0.0).unwrap();
        let a = grow(&m, 2000, 11).unwrap();
        let b = grow(&m, 2000, 11).unwrap();
        assert_eq!(a.arcs(), b.arcs());
        let c = grow_with(&m, 2000, &mut rng_for(11, 1), GrowOptions::default()).unwrap();
        assert_ne!(a.arcs(), c.arcs());
    }

    #[test]
    fn distinct_targets() {
        let m = ModelSpec::linear(3, 0.0).unwrap();
        let opts = GrowOptions {
            distinct_targets: true,
        };
        let g = grow_with(&m, 2000, &mut rng_for(5, 0), opts).unwrap();
        for chunk in g.arcs()[g.seed_arcs()..].chunks(3) {
            assert!(
                chunk[0].1 != chunk[1].1 && chunk[1].1 != chunk[2].1 && chunk[0].1 != chunk[2].1
            );
        }
        let tight = ModelSpec::linear(3, 0.0)
            .unwrap()
            .with_seed(SeedPolicy::ExplicitEdges(vec![(0, 1)]));
        let err = grow_with(&tight, 10, &mut rng_for(5, 0), opts).unwrap_err();
        assert!(matches!(err, Error::Infeasible(_)));
    }

    #[test]
    fn zero_total_weight_aborts() {
        let f = WeightFunction::tabulated(vec![0.0], 0.0, 5).unwrap();
        let model = ModelSpec::general(f, IncrementSpec::fixed(4).unwrap())
            .unwrap()
            .with_seed(SeedPolicy::CompleteGraph { n0: 5 });
        assert!(matches!(
            grow(&model, 10, 0),
            Err(Error::ZeroTotalWeight(_))
        ));
    }

    #[test]
    fn increment_sizes() {
        let mut rng = rng_for(1, 0);
        let fixed = IncrementSpec::fixed(3).unwrap();
        assert!((0..100).all(|_| draw_increment_size(&fixed, &mut rng) == 3));
        let one = IncrementSpec::stochastic(&[(1, 1.0)]).unwrap();
        assert!((0..100).all(|_| draw_increment_size(&one, &mut rng) == 1));
    }

    #[test]
    fn edge_list_export() {
        let m = ModelSpec::linear(1, 0.0).unwrap();
        let g = grow(&m, 4, 2).unwrap();
        let mut buf = Vec::new();
        g.write_edge_list(&mut buf).unwrap();
        let text = String::from_utf8(buf).unwrap();
        assert_eq!(text.lines().count(), 4);
        assert!(text.starts_with("1 0\n2 0\n2 1\n3 "));
    }
}
