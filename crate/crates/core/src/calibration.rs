//! Fitting a stochastic-increment model to an observed degree histogram.
//!
//! The tail exponent comes from a least-squares fit in log-log
//! coordinates and fixes the tail `f(k) = k + s`. Head weights below
//! `k_head` then follow by running the degree recurrence backwards with
//! the observed frequencies plugged in. The mean weight that the inversion
//! needs is refined until the forward model reproduces it.

use std::io::BufRead;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::exact::{exact_vdd, vdd_with_increment, DegreeDistribution, DEFAULT_KMAX};
use crate::generator::GrowOptions;
use crate::meanfield::alpha_to_s;
use crate::model::{IncrementDist, IncrementSpec, ModelSpec, WeightFunction};
use crate::replicate::{pooled_degree_counts, Execution};
use crate::stats::{chi_square, chi_square_p_value, distribution_slope, loglog_slope, tv_distance};

/// Default split between tabulated head and linear tail.
pub const DEFAULT_K_HEAD: u32 = 11;

/// Tolerance on successive mean-weight estimates in the outer loop.
pub const OUTER_TOL: f64 = 1e-10;

/// Iteration cap of the outer loop.
pub const OUTER_MAX_ITER: usize = 200;

/// Minimal count for a degree to enter the default tail fit range.
pub const MIN_TAIL_COUNT: u64 = 3;

/// Observed vertex counts by degree.
#[derive(Debug, Clone, PartialEq)]
pub struct EmpiricalDistribution {
    pairs: Vec<(u32, u64)>,
    total: u64,
    edges: Option<u64>,
}

impl EmpiricalDistribution {
    /// Pairs `(k, n_k)` in any order; degrees must be distinct.
    pub fn new(mut pairs: Vec<(u32, u64)>) -> Result<Self> {
        pairs.sort_by_key(|p| p.0);
        if let Some(w) = pairs.windows(2).find(|w| w[0].0 == w[1].0) {
            return Err(Error::InsufficientData(format!(
                "degree {} listed twice",
                w[0].0
            )));
        }
        let total: u64 = pairs.iter().map(|p| p.1).sum();
        if total == 0 {
            return Err(Error::InsufficientData("histogram has no vertices".into()));
        }
        Ok(EmpiricalDistribution {
            pairs,
            total,
            edges: None,
        })
    }

    /// Counts `round(Q_k * total)` from a distribution.
    pub fn from_distribution(d: &DegreeDistribution, total: u64) -> Result<Self> {
        let pairs = d
            .iter()
            .map(|(k, p)| (k, (p * total as f64).round() as u64))
            .filter(|p| p.1 > 0)
            .collect();
        Self::new(pairs)
    }

    pub fn with_edges(mut self, edges: u64) -> Self {
        self.edges = Some(edges);
        self
    }

    pub fn pairs(&self) -> &[(u32, u64)] {
        &self.pairs
    }

    /// `N = Σ n_k`.
    pub fn total(&self) -> u64 {
        self.total
    }

    pub fn edges(&self) -> Option<u64> {
        self.edges
    }

    pub fn count(&self, k: u32) -> u64 {
        self.pairs
            .binary_search_by_key(&k, |p| p.0)
            .map(|i| self.pairs[i].1)
            .unwrap_or(0)
    }

    /// `Q̂_k = n_k / N`.
    pub fn q(&self, k: u32) -> f64 {
        self.count(k) as f64 / self.total as f64
    }

    pub fn k_min(&self) -> u32 {
        self.pairs[0].0
    }

    pub fn k_max(&self) -> u32 {
        self.pairs[self.pairs.len() - 1].0
    }

    /// Mean degree `Σ k n_k / N`.
    pub fn mean_degree(&self) -> f64 {
        self.pairs
            .iter()
            .map(|&(k, n)| f64::from(k) * n as f64)
            .sum::<f64>()
            / self.total as f64
    }

    pub fn to_distribution(&self) -> DegreeDistribution {
        let lo = self.k_min();
        let q = (lo..=self.k_max()).map(|k| self.q(k)).collect();
        DegreeDistribution::new(lo, q, None)
    }
}

/// Parses lines `k n_k`, separated by whitespace or a comma. Blank lines
/// and lines starting with `#` are skipped.
pub fn load_degree_file<R: BufRead>(source: R) -> Result<EmpiricalDistribution> {
    let mut pairs = Vec::new();
    let mut seen = std::collections::HashMap::new();
    for (i, line) in source.lines().enumerate() {
        let line_no = i + 1;
        let line = line?;
        let text = line.trim();
        if text.is_empty() || text.starts_with('#') {
            continue;
        }
        let parse = |message: String| Error::Parse {
            line: line_no,
            message,
        };
        let fields: Vec<&str> = text
            .split(|c: char| c == ',' || c.is_whitespace())
            .filter(|f| !f.is_empty())
            .collect();
        if fields.len() != 2 {
            return Err(parse(format!("expected `k n_k`, got {text:?}")));
        }
        let k: u32 = fields[0].parse().map_err(|_| {
            parse(format!(
                "degree {:?} is not a nonnegative integer",
                fields[0]
            ))
        })?;
        let n: i64 = fields[1]
            .parse()
            .map_err(|_| parse(format!("count {:?} is not an integer", fields[1])))?;
        if n < 0 {
            return Err(parse(format!("negative count {n}")));
        }
        if let Some(first) = seen.insert(k, line_no) {
            return Err(parse(format!("degree {k} already given on line {first}")));
        }
        pairs.push((k, n as u64));
    }
    EmpiricalDistribution::new(pairs)
}

/// Tail exponent `alpha = -slope` of the least-squares line through
/// `(ln k, ln Q̂_k)` for observed degrees in `k_lo ..= k_hi`.
pub fn fit_tail_exponent(emp: &EmpiricalDistribution, k_lo: u32, k_hi: u32) -> Result<f64> {
    let pts: Vec<(f64, f64)> = emp
        .pairs
        .iter()
        .filter(|&&(k, n)| k >= k_lo && k <= k_hi && n > 0 && k > 0)
        .map(|&(k, _)| (f64::from(k), emp.q(k)))
        .collect();
    if pts.len() < 3 {
        return Err(Error::InsufficientData(format!(
            "tail fit over [{k_lo}, {k_hi}] needs 3 observed degrees, found {}",
            pts.len()
        )));
    }
    Ok(-loglog_slope(pts)?)
}

/// Default tail fit range: from `k_head` to the largest degree seen at
/// least [`MIN_TAIL_COUNT`] times.
pub fn default_fit_range(emp: &EmpiricalDistribution, k_head: u32) -> (u32, u32) {
    let hi = emp
        .pairs
        .iter()
        .rev()
        .find(|p| p.1 >= MIN_TAIL_COUNT)
        .map_or(k_head, |p| p.0);
    (k_head, hi)
}

/// Increment distribution guessed from the histogram.
///
/// Copies `r_x = Q̂_x` for `x <= j` and puts the remaining probability on
/// `j + 1` and `j + 2` so that the mean is `m`, taking the smallest `j >= 1`
/// for which both remaining values are nonnegative.
pub fn auto_increment(emp: &EmpiricalDistribution, m: f64) -> Result<IncrementDist> {
    let mut mass = 0.0;
    let mut mean = 0.0;
    let mut pairs = Vec::new();
    for j in 1..=emp.k_max().max(1) {
        let q = emp.q(j);
        mass += q;
        mean += f64::from(j) * q;
        pairs.push((j, q));
        let p = 1.0 - mass;
        let rest = m - mean;
        let far = rest - f64::from(j + 1) * p;
        let near = p - far;
        if p < 0.0 {
            break;
        }
        if far >= 0.0 && near >= 0.0 {
            let mut all = pairs.clone();
            all.push((j + 1, near));
            all.push((j + 2, far));
            return IncrementDist::new(&all);
        }
    }
    Err(Error::Infeasible(format!(
        "no increment distribution of the automatic form has mean {m}"
    )))
}

#[derive(Debug, Clone, PartialEq)]
pub struct CalibrateOptions {
    /// Mean increment; when absent it is `E / N`, or the mean of `r`.
    pub m: Option<f64>,
    pub k_head: u32,
    pub fit_range: Option<(u32, u32)>,
    /// Increment distribution; `None` uses [`auto_increment`].
    pub r: Option<IncrementDist>,
}

impl Default for CalibrateOptions {
    fn default() -> Self {
        CalibrateOptions {
            m: None,
            k_head: DEFAULT_K_HEAD,
            fit_range: None,
            r: None,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct FitDiagnostics {
    pub fit_range: (u32, u32),
    /// Root mean square residual of the log-log tail fit.
    pub residual: f64,
    /// Total variation between the calibrated model's exact distribution and the data.
    pub tv_distance: f64,
    pub converged: bool,
    pub iterations: usize,
    /// Degrees whose solved head weight was negative and has been set to 0.
    pub clamped: Vec<u32>,
}

/// Result of [`calibrate`]. Serialises as the model document plus the
/// fitted exponent and diagnostics.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CalibratedModel {
    #[serde(flatten)]
    model: ModelSpec,
    pub m: f64,
    pub alpha: f64,
    pub mean_weight: f64,
    pub fit_diagnostics: FitDiagnostics,
}

impl CalibratedModel {
    pub fn model(&self) -> &ModelSpec {
        &self.model
    }

    pub fn s(&self) -> f64 {
        self.weights().2
    }

    pub fn k_head(&self) -> u32 {
        self.weights().1
    }

    /// `f(g), ..., f(k_head - 1)`.
    pub fn head_f(&self) -> &[f64] {
        self.weights().0
    }

    pub fn r(&self) -> &IncrementDist {
        match &self.model.increment {
            IncrementSpec::Stochastic(r) => r,
            IncrementSpec::Fixed { .. } => unreachable!("calibrated increments are stochastic"),
        }
    }

    fn weights(&self) -> (&[f64], u32, f64) {
        match &self.model.rule {
            crate::model::AttachmentRule::General(WeightFunction::Tabulated {
                head,
                k_head,
                tail_s,
            }) => (head, *k_head, *tail_s),
            _ => unreachable!("calibrated weights are tabulated"),
        }
    }
}

/// Head weights `f(g), ..., f(k_head - 1)` that reproduce `Q̂` under mean
/// weight `w`. Negative solutions are set to zero and their degrees listed.
fn invert_head(
    emp: &EmpiricalDistribution,
    r: &IncrementDist,
    m: f64,
    w: f64,
    k_head: u32,
) -> Result<(Vec<f64>, Vec<u32>)> {
    let g = r.g();
    let mut head = Vec::new();
    let mut clamped = Vec::new();
    let mut prev = 0.0;
    for k in g..k_head {
        let q = emp.q(k);
        if q == 0.0 {
            return Err(Error::InsufficientData(format!(
                "no vertices of degree {k} below k_head = {k_head}"
            )));
        }
        let inflow = if k > g { m * prev * emp.q(k - 1) } else { 0.0 };
        let mut f = (r.prob(k) * w + inflow - q * w) / (m * q);
        if f < 0.0 {
            clamped.push(k);
            f = 0.0;
        }
        head.push(f);
        prev = f;
    }
    Ok((head, clamped))
}

fn build_model(head: Vec<f64>, s: f64, k_head: u32, r: &IncrementDist) -> Result<ModelSpec> {
    let f = WeightFunction::tabulated(head, s, k_head)?;
    ModelSpec::general(f, IncrementSpec::Stochastic(r.clone()))
}

/// Fits tail exponent, increment distribution and head weights.
pub fn calibrate(emp: &EmpiricalDistribution, opts: &CalibrateOptions) -> Result<CalibratedModel> {
    let m = match (&opts.r, opts.m, emp.edges) {
        (Some(r), Some(m), _) if (r.mean() - m).abs() > 1e-9 => {
            return Err(Error::Infeasible(format!(
                "m = {m} differs from the mean {} of the given increment distribution",
                r.mean()
            )))
        }
        (_, Some(m), _) => m,
        (Some(r), None, _) => r.mean(),
        (None, None, Some(e)) => e as f64 / emp.total as f64,
        (None, None, None) => {
            return Err(Error::InsufficientData(
                "m is needed: give m, the edge count or an increment distribution".into(),
            ))
        }
    };
    if !(m >= 1.0) {
        return Err(Error::domain(format!("m must be at least 1, got {m}")));
    }
    let k_head = opts.k_head;
    let (lo, hi) = opts
        .fit_range
        .unwrap_or_else(|| default_fit_range(emp, k_head));
    let alpha = fit_tail_exponent(emp, lo, hi)?;
    let s = alpha_to_s(alpha, m)?;
    let r = match &opts.r {
        Some(r) => r.clone(),
        None => auto_increment(emp, m)?,
    };
    if r.g() >= k_head {
        return Err(Error::domain(format!(
            "k_head = {k_head} must exceed the smallest increment {}",
            r.g()
        )));
    }
    if f64::from(k_head) + s <= 0.0 {
        return Err(Error::Infeasible(format!(
            "tail weight k + {s} is not positive at k_head = {k_head}"
        )));
    }

    // Each evaluation maps a trial mean weight to the one the resulting
    // forward model produces; the secant method finds the fixed point.
    let increment = IncrementSpec::Stochastic(r.clone());
    let forward = |w: f64| -> Result<(f64, Vec<f64>, Vec<u32>)> {
        let (head, clamped) = invert_head(emp, &r, m, w, k_head)?;
        let f = WeightFunction::tabulated(head.clone(), s, k_head)?;
        let d = vdd_with_increment(&f, &increment, k_head.max(r.h()) + 1)?;
        Ok((d.mean_weight().unwrap_or(w), head, clamped))
    };
    let mut x0 = 2.0 * m + s;
    let (mut y0, mut head, mut clamped) = forward(x0)?;
    let mut d0 = y0 - x0;
    let mut x1 = y0;
    let mut w = x0;
    let mut converged = d0.abs() < OUTER_TOL;
    let mut iterations = 1;
    while !converged && iterations < OUTER_MAX_ITER {
        iterations += 1;
        let (y1, h1, c1) = forward(x1)?;
        let d1 = y1 - x1;
        head = h1;
        clamped = c1;
        w = x1;
        if (y1 - x1).abs() < OUTER_TOL {
            converged = true;
            break;
        }
        let next = if d1 != d0 {
            x1 - d1 * (x1 - x0) / (d1 - d0)
        } else {
            y1
        };
        x0 = x1;
        d0 = d1;
        y0 = y1;
        x1 = if next > 0.0 && next.is_finite() {
            next
        } else {
            y0
        };
    }

    let model = build_model(head, s, k_head, &r)?;
    let exact = exact_vdd(&model, emp.k_max().max(k_head))?;
    let fitted: Vec<(f64, f64)> = emp
        .pairs
        .iter()
        .filter(|&&(k, n)| k >= lo && k <= hi && n > 0 && k > 0)
        .map(|&(k, _)| (f64::from(k).ln(), emp.q(k).ln()))
        .collect();
    let intercept = fitted.iter().map(|p| p.1 + alpha * p.0).sum::<f64>() / fitted.len() as f64;
    let residual = (fitted
        .iter()
        .map(|p| (p.1 - (intercept - alpha * p.0)).powi(2))
        .sum::<f64>()
        / fitted.len() as f64)
        .sqrt();
    Ok(CalibratedModel {
        model,
        m,
        alpha,
        mean_weight: w,
        fit_diagnostics: FitDiagnostics {
            fit_range: (lo, hi),
            residual,
            tv_distance: tv_distance(&exact, &emp.to_distribution()),
            converged,
            iterations,
            clamped,
        },
    })
}

#[derive(Debug, Clone, PartialEq)]
pub struct ValidateOptions {
    /// Vertices per simulated graph; no simulation when zero.
    pub n_sim: usize,
    pub replications: usize,
    pub seed: u64,
    pub k_max: u32,
    /// Degrees up to this enter the chi-square statistic.
    pub head_max: u32,
    pub tail_range: (u32, u32),
}

impl Default for ValidateOptions {
    fn default() -> Self {
        ValidateOptions {
            n_sim: 0,
            replications: 1,
            seed: 0,
            k_max: DEFAULT_KMAX,
            head_max: DEFAULT_K_HEAD - 1,
            tail_range: (DEFAULT_K_HEAD, 1000),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ValidationReport {
    pub tv_exact_reference: f64,
    pub tv_simulated_exact: Option<f64>,
    /// Simulated head counts against exact head probabilities, with the
    /// remaining degrees pooled into one cell.
    pub chi_square: Option<f64>,
    pub chi_square_dof: Option<usize>,
    pub chi_square_p: Option<f64>,
    pub slope_exact: Option<f64>,
    pub slope_reference: Option<f64>,
    pub slope_simulated: Option<f64>,
    #[serde(skip)]
    pub curves: Vec<(u32, f64, f64, Option<f64>)>,
}

impl ValidationReport {
    /// `k,exact,reference,simulated` rows for plotting.
    pub fn write_curves<W: std::io::Write>(&self, mut out: W) -> std::io::Result<()> {
        writeln!(out, "k,exact,reference,simulated")?;
        for &(k, e, r, s) in &self.curves {
            match s {
                Some(s) => writeln!(out, "{k},{e:?},{r:?},{s:?}")?,
                None => writeln!(out, "{k},{e:?},{r:?},")?,
            }
        }
        Ok(())
    }
}

/// Compares a model with reference data and, optionally, with its own
/// simulation.
pub fn validate(
    model: &ModelSpec,
    reference: &DegreeDistribution,
    opts: &ValidateOptions,
) -> Result<ValidationReport> {
    let exact = exact_vdd(model, opts.k_max)?;
    let (lo, hi) = opts.tail_range;
    let slope = |d: &DegreeDistribution| distribution_slope(d, lo, hi).ok();
    let mut report = ValidationReport {
        tv_exact_reference: tv_distance(&exact, reference),
        tv_simulated_exact: None,
        chi_square: None,
        chi_square_dof: None,
        chi_square_p: None,
        slope_exact: slope(&exact),
        slope_reference: slope(reference),
        slope_simulated: None,
        curves: Vec::new(),
    };
    let mut simulated = None;
    if opts.n_sim > 0 && opts.replications > 0 {
        let counts = pooled_degree_counts(
            model,
            opts.n_sim,
            opts.replications,
            opts.seed,
            GrowOptions::default(),
            Execution::Parallel,
        )?;
        let sim = counts.to_distribution();
        report.tv_simulated_exact = Some(tv_distance(&sim, &exact));
        report.slope_simulated = slope(&sim);

        let head: Vec<u32> = (exact.k_min()..=opts.head_max.min(exact.k_max()))
            .filter(|&k| exact.get(k) > 0.0)
            .collect();
        if !head.is_empty() {
            let mut observed: Vec<u64> = head
                .iter()
                .map(|&k| counts.counts().get(k as usize).copied().unwrap_or(0))
                .collect();
            let mut probs: Vec<f64> = head.iter().map(|&k| exact.get(k)).collect();
            observed.push(counts.total() - observed.iter().sum::<u64>());
            probs.push((1.0 - probs.iter().sum::<f64>()).max(0.0));
            if let Ok(stat) = chi_square(&observed, &probs) {
                let dof = observed.len() - 1;
                report.chi_square = Some(stat);
                report.chi_square_dof = Some(dof);
                report.chi_square_p = chi_square_p_value(stat, dof).ok();
            }
        }
        simulated = Some(sim);
    }
    let top = exact.k_max().max(reference.k_max());
    let bottom = exact.k_min().min(reference.k_min());
    report.curves = (bottom..=top)
        .map(|k| {
            (
                k,
                exact.get(k),
                reference.get(k),
                simulated.as_ref().map(|s| s.get(k)),
            )
        })
        .collect();
    Ok(report)
}
