//! Weight functions, increment specifications and growth-model definitions.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Tolerance on `Σ r_x = 1` for stochastic increments.
pub const INCREMENT_SUM_TOL: f64 = 1e-12;

/// Vertex weight as a function of total degree.
///
/// Weight functions that differ by a positive multiplicative constant give
/// identical attachment probabilities and therefore define the same model.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum WeightFunction {
    /// `f(k) = k + s`.
    Linear { s: f64 },
    /// `f(k) = 1`.
    Constant,
    /// Explicit values below `k_head`, `f(k) = k + tail_s` from `k_head` on.
    ///
    /// `head[i]` is the weight of degree `k_head - head.len() + i`.
    Tabulated {
        head: Vec<f64>,
        tail_s: f64,
        k_head: u32,
    },
}

impl WeightFunction {
    pub fn linear(s: f64) -> Result<Self> {
        if !s.is_finite() {
            return Err(Error::model(format!(
                "displacement must be finite, got {s}"
            )));
        }
        Ok(WeightFunction::Linear { s })
    }

    pub fn tabulated(head: Vec<f64>, tail_s: f64, k_head: u32) -> Result<Self> {
        let f = WeightFunction::Tabulated {
            head,
            tail_s,
            k_head,
        };
        f.check_shape()?;
        Ok(f)
    }

    fn check_shape(&self) -> Result<()> {
        match self {
            WeightFunction::Linear { s } if !s.is_finite() => Err(Error::model(format!(
                "displacement must be finite, got {s}"
            ))),
            WeightFunction::Tabulated {
                head,
                tail_s,
                k_head,
            } => {
                if head.len() >= *k_head as usize {
                    return Err(Error::model(format!(
                        "head of length {} does not fit below k_head = {k_head}",
                        head.len()
                    )));
                }
                if let Some((i, w)) = head
                    .iter()
                    .enumerate()
                    .find(|(_, w)| !w.is_finite() || **w < 0.0)
                {
                    return Err(Error::model(format!(
                        "negative or non-finite weight {w} at head index {i}"
                    )));
                }
                if !tail_s.is_finite() || f64::from(*k_head) + tail_s <= 0.0 {
                    return Err(Error::model(format!(
                        "tail weight k + {tail_s} is not positive at k_head = {k_head}"
                    )));
                }
                Ok(())
            }
            _ => Ok(()),
        }
    }

    /// Smallest degree at which the function is defined.
    pub fn min_degree(&self) -> u32 {
        match self {
            WeightFunction::Tabulated { head, k_head, .. } => k_head - head.len() as u32,
            _ => 1,
        }
    }

    /// Checks that the function is defined and nonnegative on every degree
    /// reachable by a vertex that enters the graph with `g` arcs.
    pub fn validate_from(&self, g: u32) -> Result<()> {
        self.check_shape()?;
        match self {
            WeightFunction::Linear { s } if f64::from(g) + s <= 0.0 => Err(Error::model(format!(
                "linear weight k + s requires s > -{g}, got s = {s}"
            ))),
            WeightFunction::Tabulated { .. } if self.min_degree() > g => {
                Err(Error::model(format!(
                    "tabulated weights start at degree {} but vertices enter with degree {g}",
                    self.min_degree()
                )))
            }
            _ => Ok(()),
        }
    }

    /// Unchecked evaluation for hot loops; callers validate the degree range.
    #[inline]
    pub(crate) fn value(&self, k: u32) -> f64 {
        match self {
            WeightFunction::Linear { s } => f64::from(k) + s,
            WeightFunction::Constant => 1.0,
            WeightFunction::Tabulated {
                head,
                tail_s,
                k_head,
            } => {
                if k >= *k_head {
                    f64::from(k) + tail_s
                } else {
                    let start = k_head - head.len() as u32;
                    if k < start {
                        0.0
                    } else {
                        head[(k - start) as usize]
                    }
                }
            }
        }
    }

    /// Displacement of the linear tail, when the function has one.
    pub fn tail_displacement(&self) -> Option<f64> {
        match self {
            WeightFunction::Linear { s } => Some(*s),
            WeightFunction::Tabulated { tail_s, .. } => Some(*tail_s),
            WeightFunction::Constant => None,
        }
    }

    /// First degree from which `f(k) = k + s` holds exactly.
    pub(crate) fn linear_from(&self) -> Option<u32> {
        match self {
            WeightFunction::Linear { .. } => Some(1),
            WeightFunction::Tabulated { k_head, .. } => Some(*k_head),
            WeightFunction::Constant => None,
        }
    }
}

/// Weight `f(k)` of a vertex with degree `k >= 1`.
pub fn eval_weight(f: &WeightFunction, k: u32) -> Result<f64> {
    if k == 0 {
        return Err(Error::domain("degree must be at least 1"));
    }
    match f {
        WeightFunction::Linear { s } => {
            let w = f64::from(k) + s;
            if w <= 0.0 {
                return Err(Error::domain(format!(
                    "k + s = {w} is not positive at k = {k}"
                )));
            }
            Ok(w)
        }
        WeightFunction::Constant => Ok(1.0),
        WeightFunction::Tabulated { .. } => {
            if k < f.min_degree() {
                return Err(Error::domain(format!(
                    "degree {k} is below the tabulated range starting at {}",
                    f.min_degree()
                )));
            }
            let w = f.value(k);
            if w < 0.0 {
                return Err(Error::domain(format!("weight {w} is negative at k = {k}")));
            }
            Ok(w)
        }
    }
}

/// Attachment probabilities `w_i / Σ w_j` for a table of vertex weights.
pub fn attachment_probabilities(weights: &[f64]) -> Result<Vec<f64>> {
    if let Some(w) = weights.iter().find(|w| !(**w >= 0.0) || !w.is_finite()) {
        return Err(Error::domain(format!(
            "weight {w} is negative or not finite"
        )));
    }
    let total: f64 = weights.iter().sum();
    if !(total > 0.0) {
        return Err(Error::ZeroTotalWeight(format!(
            "all {} weights are zero",
            weights.len()
        )));
    }
    Ok(weights.iter().map(|w| w / total).collect())
}

/// Distribution of the number of arcs `x = g..h` carried by an increment.
#[derive(Debug, Clone, PartialEq)]
pub struct IncrementDist {
    g: u32,
    probs: Vec<f64>,
    mean: f64,
}

impl IncrementDist {
    /// Builds the distribution from `(x, r_x)` pairs. Zero-probability
    /// sizes at either end are dropped so that `g` and `h` are attained.
    pub fn new(pairs: &[(u32, f64)]) -> Result<Self> {
        if pairs.is_empty() {
            return Err(Error::model("increment distribution is empty"));
        }
        let mut sorted = pairs.to_vec();
        sorted.sort_by_key(|&(x, _)| x);
        for w in sorted.windows(2) {
            if w[0].0 == w[1].0 {
                return Err(Error::model(format!("duplicate increment size {}", w[0].0)));
            }
        }
        for &(x, p) in &sorted {
            if x == 0 {
                return Err(Error::model("increment size must be at least 1"));
            }
            if !p.is_finite() || p < 0.0 {
                return Err(Error::model(format!(
                    "probability {p} for x = {x} is invalid"
                )));
            }
        }
        let total: f64 = sorted.iter().map(|&(_, p)| p).sum();
        if (total - 1.0).abs() > INCREMENT_SUM_TOL {
            return Err(Error::model(format!(
                "increment probabilities sum to {total}, not 1"
            )));
        }
        let positive: Vec<_> = sorted.into_iter().filter(|&(_, p)| p > 0.0).collect();
        let g = positive[0].0;
        let h = positive[positive.len() - 1].0;
        let mut probs = vec![0.0; (h - g + 1) as usize];
        for (x, p) in positive {
            probs[(x - g) as usize] = p;
        }
        let mean = probs
            .iter()
            .enumerate()
            .map(|(i, p)| f64::from(g + i as u32) * p)
            .sum();
        Ok(IncrementDist { g, probs, mean })
    }

    pub fn g(&self) -> u32 {
        self.g
    }

    pub fn h(&self) -> u32 {
        self.g + self.probs.len() as u32 - 1
    }

    /// `r_x`, zero outside `g..=h`.
    pub fn prob(&self, x: u32) -> f64 {
        if x < self.g {
            0.0
        } else {
            self.probs
                .get((x - self.g) as usize)
                .copied()
                .unwrap_or(0.0)
        }
    }

    pub fn mean(&self) -> f64 {
        self.mean
    }

    pub fn pairs(&self) -> Vec<(u32, f64)> {
        (self.g..=self.h()).map(|x| (x, self.prob(x))).collect()
    }
}

#[derive(Debug, Clone, PartialEq)]
pub enum IncrementSpec {
    Fixed { m: u32 },
    Stochastic(IncrementDist),
}

impl IncrementSpec {
    pub fn fixed(m: u32) -> Result<Self> {
        if m == 0 {
            return Err(Error::model("fixed increment needs m >= 1"));
        }
        Ok(IncrementSpec::Fixed { m })
    }

    pub fn stochastic(pairs: &[(u32, f64)]) -> Result<Self> {
        Ok(IncrementSpec::Stochastic(IncrementDist::new(pairs)?))
    }

    /// Mean number of arcs per increment.
    pub fn mean(&self) -> f64 {
        match self {
            IncrementSpec::Fixed { m } => f64::from(*m),
            IncrementSpec::Stochastic(r) => r.mean(),
        }
    }

    /// Smallest increment size `g`, which is also the smallest vertex degree.
    pub fn min_size(&self) -> u32 {
        match self {
            IncrementSpec::Fixed { m } => *m,
            IncrementSpec::Stochastic(r) => r.g(),
        }
    }

    pub fn max_size(&self) -> u32 {
        match self {
            IncrementSpec::Fixed { m } => *m,
            IncrementSpec::Stochastic(r) => r.h(),
        }
    }

    pub fn prob(&self, x: u32) -> f64 {
        match self {
            IncrementSpec::Fixed { m } => {
                if x == *m {
                    1.0
                } else {
                    0.0
                }
            }
            IncrementSpec::Stochastic(r) => r.prob(x),
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub enum AttachmentRule {
    /// Rule with a linear or constant weight function.
    Linear(WeightFunction),
    /// Per arc: uniform vertex with probability `a`, degree-proportional otherwise.
    Hybrid { a: f64 },
    /// Any nonnegative weight function.
    General(WeightFunction),
}

#[derive(Debug, Clone, PartialEq, Default)]
pub enum SeedPolicy {
    CompleteGraph {
        n0: usize,
    },
    ExplicitEdges(Vec<(usize, usize)>),
    /// Complete graph on `2m + 1` vertices, which has exactly `m` edges per vertex.
    #[default]
    Auto,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(try_from = "ModelDoc", into = "ModelDoc")]
pub struct ModelSpec {
    pub rule: AttachmentRule,
    pub increment: IncrementSpec,
    pub seed: SeedPolicy,
}

impl ModelSpec {
    pub fn new(rule: AttachmentRule, increment: IncrementSpec, seed: SeedPolicy) -> Result<Self> {
        let spec = ModelSpec {
            rule,
            increment,
            seed,
        };
        spec.validate()?;
        Ok(spec)
    }

    /// L-graph with fixed `m` and `f(k) = k + s`.
    pub fn linear(m: u32, s: f64) -> Result<Self> {
        Self::new(
            AttachmentRule::Linear(WeightFunction::linear(s)?),
            IncrementSpec::fixed(m)?,
            SeedPolicy::Auto,
        )
    }

    /// L-graph with fixed `m` and `f(k) = 1`.
    pub fn constant(m: u32) -> Result<Self> {
        Self::new(
            AttachmentRule::Linear(WeightFunction::Constant),
            IncrementSpec::fixed(m)?,
            SeedPolicy::Auto,
        )
    }

    /// Pennock graph with fixed `m` and mixing probability `a`.
    pub fn hybrid(m: u32, a: f64) -> Result<Self> {
        Self::new(
            AttachmentRule::Hybrid { a },
            IncrementSpec::fixed(m)?,
            SeedPolicy::Auto,
        )
    }

    pub fn general(f: WeightFunction, increment: IncrementSpec) -> Result<Self> {
        Self::new(AttachmentRule::General(f), increment, SeedPolicy::Auto)
    }

    pub fn with_seed(mut self, seed: SeedPolicy) -> Self {
        self.seed = seed;
        self
    }

    fn validate(&self) -> Result<()> {
        let g = self.increment.min_size();
        match &self.rule {
            AttachmentRule::Linear(f) => {
                if matches!(f, WeightFunction::Tabulated { .. }) {
                    return Err(Error::model(
                        "the linear rule takes a linear or constant weight function",
                    ));
                }
                f.validate_from(g)
            }
            AttachmentRule::Hybrid { a } => {
                if !(0.0..=1.0).contains(a) {
                    return Err(Error::model(format!("a must lie in [0, 1], got {a}")));
                }
                if !matches!(self.increment, IncrementSpec::Fixed { .. }) {
                    return Err(Error::model("hybrid graphs require a fixed increment"));
                }
                Ok(())
            }
            AttachmentRule::General(f) => f.validate_from(g),
        }
    }

    /// Mean number of arcs per increment.
    pub fn m(&self) -> f64 {
        self.increment.mean()
    }

    /// A weight function producing the same attachment probabilities.
    ///
    /// Hybrid rules map to `k + 2am/(1-a)`, or to the constant function at `a = 1`.
    pub fn weight_function(&self) -> WeightFunction {
        match &self.rule {
            AttachmentRule::Linear(f) | AttachmentRule::General(f) => f.clone(),
            AttachmentRule::Hybrid { a } => match p_to_l(self.m(), *a) {
                Ok(LinearEquivalent::Displacement(s)) => WeightFunction::Linear { s },
                _ => WeightFunction::Constant,
            },
        }
    }
}

/// L-graph counterpart of a Pennock graph.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum LinearEquivalent {
    Displacement(f64),
    /// `a = 1`: the constant weight function.
    Constant,
}

/// Pennock counterpart of an L-graph.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum PennockEquivalent {
    Probability(f64),
    /// Negative displacements have no Pennock twin.
    NoPennockGraph,
}

/// Displacement `s = 2am / (1 - a)` of the L-graph equivalent to `P(m, a)`.
pub fn p_to_l(m: f64, a: f64) -> Result<LinearEquivalent> {
    if !(m > 0.0) {
        return Err(Error::domain(format!("m must be positive, got {m}")));
    }
    if !(0.0..=1.0).contains(&a) {
        return Err(Error::domain(format!("a must lie in [0, 1], got {a}")));
    }
    if a == 1.0 {
        return Ok(LinearEquivalent::Constant);
    }
    Ok(LinearEquivalent::Displacement(2.0 * a * m / (1.0 - a)))
}

/// Mixing probability `a = s / (s + 2m)` of the Pennock graph equivalent to `L(m, s)`.
pub fn l_to_p(m: f64, s: f64) -> Result<PennockEquivalent> {
    if !(m > 0.0) {
        return Err(Error::domain(format!("m must be positive, got {m}")));
    }
    if !(s > -m) {
        return Err(Error::domain(format!("s must exceed -m = {}, got {s}", -m)));
    }
    if s < 0.0 {
        return Ok(PennockEquivalent::NoPennockGraph);
    }
    Ok(PennockEquivalent::Probability(s / (s + 2.0 * m)))
}

// JSON-compatible document form of a model.

#[derive(Debug, Clone, Serialize, Deserialize)]
pub(crate) struct ModelDoc {
    rule: String,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    s: Option<f64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    a: Option<f64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    weights: Option<WeightFunction>,
    increment: IncrementDoc,
    #[serde(default)]
    seed: SeedDoc,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
struct IncrementDoc {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    fixed_m: Option<u32>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    r: Option<Vec<(u32, f64)>>,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
struct SeedDoc {
    #[serde(rename = "type")]
    kind: String,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    n0: Option<usize>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    edges: Option<Vec<(usize, usize)>>,
}

impl Default for SeedDoc {
    fn default() -> Self {
        SeedDoc {
            kind: "auto".into(),
            n0: None,
            edges: None,
        }
    }
}

impl TryFrom<ModelDoc> for ModelSpec {
    type Error = Error;

    fn try_from(doc: ModelDoc) -> Result<Self> {
        let increment = match (doc.increment.fixed_m, doc.increment.r) {
            (Some(m), None) => IncrementSpec::fixed(m)?,
            (None, Some(r)) => IncrementSpec::stochastic(&r)?,
            _ => return Err(Error::model("increment needs exactly one of fixed_m or r")),
        };
        let seed = match doc.seed.kind.as_str() {
            "auto" => SeedPolicy::Auto,
            "complete" => SeedPolicy::CompleteGraph {
                n0: doc
                    .seed
                    .n0
                    .ok_or_else(|| Error::model("complete seed needs n0"))?,
            },
            "edges" => SeedPolicy::ExplicitEdges(
                doc.seed
                    .edges
                    .ok_or_else(|| Error::model("explicit seed needs edges"))?,
            ),
            other => return Err(Error::model(format!("unknown seed type {other:?}"))),
        };
        let rule = match doc.rule.as_str() {
            "L" => AttachmentRule::Linear(WeightFunction::linear(
                doc.s.ok_or_else(|| Error::model("rule L needs s"))?,
            )?),
            "const" => AttachmentRule::Linear(WeightFunction::Constant),
            "P" => AttachmentRule::Hybrid {
                a: doc.a.ok_or_else(|| Error::model("rule P needs a"))?,
            },
            "general" => AttachmentRule::General(
                doc.weights
                    .ok_or_else(|| Error::model("rule general needs weights"))?,
            ),
            other => return Err(Error::model(format!("unknown rule {other:?}"))),
        };
        ModelSpec::new(rule, increment, seed)
    }
}

impl From<ModelSpec> for ModelDoc {
    fn from(spec: ModelSpec) -> Self {
        let (rule, s, a, weights) = match spec.rule {
            AttachmentRule::Linear(WeightFunction::Linear { s }) => ("L", Some(s), None, None),
            AttachmentRule::Linear(_) => ("const", None, None, None),
            AttachmentRule::Hybrid { a } => ("P", None, Some(a), None),
            AttachmentRule::General(f) => ("general", None, None, Some(f)),
        };
        let increment = match spec.increment {
            IncrementSpec::Fixed { m } => IncrementDoc {
                fixed_m: Some(m),
                r: None,
            },
            IncrementSpec::Stochastic(r) => IncrementDoc {
                fixed_m: None,
                r: Some(r.pairs()),
            },
        };
        let seed = match spec.seed {
            SeedPolicy::Auto => SeedDoc::default(),
            SeedPolicy::CompleteGraph { n0 } => SeedDoc {
                kind: "complete".into(),
                n0: Some(n0),
                edges: None,
            },
            SeedPolicy::ExplicitEdges(edges) => SeedDoc {
                kind: "edges".into(),
                n0: None,
                edges: Some(edges),
            },
        };
        ModelDoc {
            rule: rule.into(),
            s,
            a,
            weights,
            increment,
            seed,
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn as_head() -> Vec<f64> {
        vec![
            0.0, 0.0, 0.0, 1.38802, 2.40613, 5.28966, 6.67, 6.71098, 7.79545, 8.10619,
        ]
    }

    #[test]
    fn eval_weight_examples() {
        let lin = WeightFunction::linear(0.0).unwrap();
        assert_eq!(eval_weight(&lin, 5).unwrap(), 5.0);
        assert_eq!(eval_weight(&WeightFunction::Constant, 17).unwrap(), 1.0);
        let tab = WeightFunction::tabulated(as_head(), -1.9655, 11).unwrap();
        assert_eq!(eval_weight(&tab, 4).unwrap(), 1.38802);
        assert_eq!(eval_weight(&tab, 1).unwrap(), 0.0);
        assert!((eval_weight(&tab, 11).unwrap() - 9.0345).abs() < 1e-12);
    }

    #[test]
    fn eval_weight_domain_errors() {
        let lin = WeightFunction::linear(-3.0).unwrap();
        assert!(matches!(eval_weight(&lin, 3), Err(Error::Domain(_))));
        assert!(eval_weight(&lin, 4).is_ok());
        assert!(eval_weight(&WeightFunction::Constant, 0).is_err());
        let tab = WeightFunction::tabulated(vec![1.0, 2.0], 0.0, 5).unwrap();
        assert_eq!(tab.min_degree(), 3);
        assert!(eval_weight(&tab, 2).is_err());
    }

    #[test]
    fn tabulated_rejects_bad_values() {
        assert!(WeightFunction::tabulated(vec![1.0, -0.5], 0.0, 5).is_err());
        assert!(WeightFunction::tabulated(vec![1.0; 5], 0.0, 5).is_err());
        assert!(WeightFunction::tabulated(vec![1.0], -11.0, 11).is_err());
    }

    #[test]
    fn linear_rejected_at_or_below_minus_g() {
        assert!(ModelSpec::linear(2, -2.0).is_err());
        assert!(ModelSpec::linear(2, -1.999).is_ok());
    }

    #[test]
    fn p_to_l_examples() {
        assert_eq!(
            p_to_l(2.0, 0.75).unwrap(),
            LinearEquivalent::Displacement(12.0)
        );
        assert_eq!(
            p_to_l(3.0, 0.0).unwrap(),
            LinearEquivalent::Displacement(0.0)
        );
        assert_eq!(
            p_to_l(1.0, 0.5).unwrap(),
            LinearEquivalent::Displacement(2.0)
        );
        assert_eq!(p_to_l(1.0, 1.0).unwrap(), LinearEquivalent::Constant);
        assert!(p_to_l(1.0, 1.5).is_err());
    }

    #[test]
    fn l_to_p_examples() {
        assert_eq!(
            l_to_p(2.0, 12.0).unwrap(),
            PennockEquivalent::Probability(0.75)
        );
        assert_eq!(
            l_to_p(4.0, 0.0).unwrap(),
            PennockEquivalent::Probability(0.0)
        );
        assert_eq!(
            l_to_p(2.0, -1.0).unwrap(),
            PennockEquivalent::NoPennockGraph
        );
        assert!(matches!(l_to_p(2.0, -2.0), Err(Error::Domain(_))));
    }

    #[test]
    fn hybrid_needs_fixed_increment() {
        let r = IncrementSpec::stochastic(&[(1, 0.5), (3, 0.5)]).unwrap();
        assert!(ModelSpec::new(AttachmentRule::Hybrid { a: 0.5 }, r, SeedPolicy::Auto).is_err());
        assert!(ModelSpec::hybrid(2, 1.2).is_err());
    }

    #[test]
    fn increment_dist_mean_and_support() {
        let r = IncrementDist::new(&[
            (1, 0.34145),
            (2, 0.42246),
            (3, 0.09664),
            (4, 0.09433),
            (5, 0.01504),
            (6, 0.03008),
        ])
        .unwrap();
        assert_eq!((r.g(), r.h()), (1, 6));
        assert!((r.mean() - 2.1093).abs() < 1e-4);
        let gap = IncrementDist::new(&[(1, 0.0), (2, 0.5), (4, 0.5)]).unwrap();
        assert_eq!((gap.g(), gap.h()), (2, 4));
        assert_eq!(gap.prob(3), 0.0);
        assert!(IncrementDist::new(&[(1, 0.5), (2, 0.4)]).is_err());
        assert!(IncrementDist::new(&[(1, 0.5), (1, 0.5)]).is_err());
        assert!(IncrementDist::new(&[(1, 1.5), (2, -0.5)]).is_err());
    }

    #[test]
    fn json_document_round_trip() {
        let specs = vec![
            ModelSpec::linear(2, -0.5).unwrap(),
            ModelSpec::hybrid(3, 0.25).unwrap(),
            ModelSpec::constant(1)
                .unwrap()
                .with_seed(SeedPolicy::CompleteGraph { n0: 4 }),
            ModelSpec::general(
                WeightFunction::tabulated(as_head(), -1.9655, 11).unwrap(),
                IncrementSpec::stochastic(&[(1, 0.5), (3, 0.5)]).unwrap(),
            )
            .unwrap()
            .with_seed(SeedPolicy::ExplicitEdges(vec![(0, 1), (1, 2)])),
        ];
        for spec in specs {
            let text = serde_json::to_string(&spec).unwrap();
            let back: ModelSpec = serde_json::from_str(&text).unwrap();
            assert_eq!(back, spec, "{text}");
        }
    }

    #[test]
    fn json_document_field_names() {
        let text =
            r#"{"rule":"P","a":0.75,"increment":{"fixed_m":2},"seed":{"type":"complete","n0":5}}"#;
        let spec: ModelSpec = serde_json::from_str(text).unwrap();
        assert_eq!(spec.rule, AttachmentRule::Hybrid { a: 0.75 });
        assert_eq!(spec.seed, SeedPolicy::CompleteGraph { n0: 5 });
        let text = r#"{"rule":"L","s":1.0,"increment":{"r":[[1,0.5],[2,0.5]]}}"#;
        let spec: ModelSpec = serde_json::from_str(text).unwrap();
        assert!((spec.m() - 1.5).abs() < 1e-15);
        let bad = r#"{"rule":"P","a":0.5,"increment":{"r":[[1,1.0]]}}"#;
        assert!(serde_json::from_str::<ModelSpec>(bad).is_err());
    }
}
