//! Exact stationary vertex-degree distributions of growing graphs.
//!
//! Every routine here solves the layer balance equations of an infinitely
//! grown graph. For a weight function `f`, mean weight `<f>` and increment
//! distribution `r` with mean `m`:
//!
//! ```text
//! Q_g = r_g <f> / (<f> + m f(g))
//! Q_k = (r_k <f> + m f(k-1) Q_{k-1}) / (<f> + m f(k)),   k > g
//! ```
//!
//! Fixed increments are the special case `r_m = 1`. Linear and constant
//! weights have an analytic `<f>`; anything else is solved for.

use std::io::Write;

use crate::error::{Error, Result};
use crate::model::{AttachmentRule, IncrementDist, IncrementSpec, ModelSpec, WeightFunction};
use crate::special::ln_gamma_ratio;

/// Default truncation degree.
pub const DEFAULT_KMAX: u32 = 10_000;

/// Tolerance on successive mean-weight iterates.
pub const MEAN_WEIGHT_TOL: f64 = 1e-12;

/// Iteration cap for the mean-weight solve.
pub const MEAN_WEIGHT_MAX_ITER: usize = 10_000;

/// `Q_k` for `k = k_min ..= k_max`; everything outside is zero.
#[derive(Debug, Clone, PartialEq)]
pub struct DegreeDistribution {
    k_min: u32,
    q: Vec<f64>,
    tail_mass: f64,
    mean_weight: Option<f64>,
}

impl DegreeDistribution {
    /// Wraps probabilities starting at degree `k_min`. The tail mass is
    /// whatever `q` leaves unaccounted for.
    pub fn new(k_min: u32, q: Vec<f64>, mean_weight: Option<f64>) -> Self {
        let tail_mass = 1.0 - q.iter().sum::<f64>();
        DegreeDistribution {
            k_min,
            q,
            tail_mass,
            mean_weight,
        }
    }

    pub fn k_min(&self) -> u32 {
        self.k_min
    }

    /// Largest degree with a stored entry.
    pub fn k_max(&self) -> u32 {
        self.k_min + self.q.len() as u32 - 1
    }

    pub fn get(&self, k: u32) -> f64 {
        if k < self.k_min {
            return 0.0;
        }
        self.q
            .get((k - self.k_min) as usize)
            .copied()
            .unwrap_or(0.0)
    }

    pub fn probabilities(&self) -> &[f64] {
        &self.q
    }

    pub fn iter(&self) -> impl Iterator<Item = (u32, f64)> + '_ {
        self.q
            .iter()
            .enumerate()
            .map(move |(i, &p)| (self.k_min + i as u32, p))
    }

    /// `1 - Σ Q_k` over the stored window.
    pub fn tail_mass(&self) -> f64 {
        self.tail_mass
    }

    /// Mean vertex weight used by the recurrence; `None` for empirical histograms.
    pub fn mean_weight(&self) -> Option<f64> {
        self.mean_weight
    }

    pub fn mean_degree(&self) -> f64 {
        self.iter().map(|(k, p)| f64::from(k) * p).sum()
    }

    /// Restricts the window to degrees `<= k_max`.
    pub fn truncated(&self, k_max: u32) -> Self {
        let keep = (k_max + 1).saturating_sub(self.k_min) as usize;
        let q = self.q[..keep.min(self.q.len())].to_vec();
        DegreeDistribution::new(self.k_min, q, self.mean_weight)
    }

    /// Writes `k,Q` rows followed by a `# tail_mass=... mean_weight=...` line.
    ///
    /// Values use the shortest representation that round-trips exactly.
    pub fn write_csv<W: Write>(&self, mut out: W) -> std::io::Result<()> {
        writeln!(out, "k,Q")?;
        for (k, p) in self.iter() {
            writeln!(out, "{k},{p:?}")?;
        }
        match self.mean_weight {
            Some(w) => writeln!(out, "# tail_mass={:?} mean_weight={w:?}", self.tail_mass),
            None => writeln!(out, "# tail_mass={:?} mean_weight=NaN", self.tail_mass),
        }
    }
}

fn check_kmax(m: u32, k_max: u32) -> Result<()> {
    if m == 0 {
        return Err(Error::domain("m must be at least 1"));
    }
    if k_max < m {
        return Err(Error::domain(format!("k_max = {k_max} is below m = {m}")));
    }
    Ok(())
}

/// L-graph distribution for `f(k) = k + s`.
pub fn vdd_l(m: u32, s: f64, k_max: u32) -> Result<DegreeDistribution> {
    check_kmax(m, k_max)?;
    let mf = f64::from(m);
    if !(s > -mf) {
        return Err(Error::domain(format!(
            "s must exceed -m = {}, got {s}",
            -mf
        )));
    }
    let mut q = Vec::with_capacity((k_max - m + 1) as usize);
    let mut prev = (2.0 * mf + s) / (2.0 * mf + s + mf * (mf + s));
    q.push(prev);
    for k in m + 1..=k_max {
        let k = f64::from(k);
        prev = mf * (k - 1.0 + s) * prev / (2.0 * mf + s + mf * (k + s));
        q.push(prev);
    }
    Ok(DegreeDistribution::new(m, q, Some(2.0 * mf + s)))
}

/// Pennock-graph distribution. The reported mean weight is `2m`, the mean of
/// the equivalent weight `2am + (1-a)k`.
pub fn vdd_p(m: u32, a: f64, k_max: u32) -> Result<DegreeDistribution> {
    check_kmax(m, k_max)?;
    if !(0.0..=1.0).contains(&a) {
        return Err(Error::domain(format!("a must lie in [0, 1], got {a}")));
    }
    let mf = f64::from(m);
    let mut q = Vec::with_capacity((k_max - m + 1) as usize);
    let mut prev = 2.0 / (2.0 + a * mf + mf);
    q.push(prev);
    for k in m + 1..=k_max {
        let k = f64::from(k);
        prev = (2.0 * a * mf + (1.0 - a) * (k - 1.0)) * prev / (2.0 + 2.0 * a * mf + (1.0 - a) * k);
        q.push(prev);
    }
    Ok(DegreeDistribution::new(m, q, Some(2.0 * mf)))
}

/// Constant-weight distribution, computed by the geometric recurrence.
pub fn vdd_const(m: u32, k_max: u32) -> Result<DegreeDistribution> {
    check_kmax(m, k_max)?;
    let mf = f64::from(m);
    let ratio = mf / (1.0 + mf);
    let mut q = Vec::with_capacity((k_max - m + 1) as usize);
    let mut prev = 1.0 / (1.0 + mf);
    q.push(prev);
    for _ in m + 1..=k_max {
        prev *= ratio;
        q.push(prev);
    }
    Ok(DegreeDistribution::new(m, q, Some(1.0)))
}

/// Closed form `Q_k = (1/(1+m)) (m/(1+m))^(k-m)` of the constant-weight case.
pub fn vdd_const_closed(m: u32, k: u32) -> Result<f64> {
    if m == 0 || k < m {
        return Err(Error::domain(format!(
            "need 1 <= m <= k, got m = {m}, k = {k}"
        )));
    }
    let mf = f64::from(m);
    Ok((mf / (1.0 + mf)).powi((k - m) as i32) / (1.0 + mf))
}

/// Gamma-function closed form of the L-graph distribution at degree `k`.
///
/// `Q_k = (2m+s) Γ(m+s+2+s/m) Γ(k+s) / [m Γ(m+s) Γ(k+s+3+s/m)]`, evaluated
/// as log-gamma ratios so that large `k` does not overflow.
pub fn vdd_l_closed(m: u32, s: f64, k: u32) -> Result<f64> {
    if m == 0 || k < m {
        return Err(Error::domain(format!(
            "need 1 <= m <= k, got m = {m}, k = {k}"
        )));
    }
    let mf = f64::from(m);
    let kf = f64::from(k);
    if !(mf + s > 0.0) || !(kf + s > 0.0) || !(2.0 * mf + s > 0.0) {
        return Err(Error::domain(format!(
            "gamma argument is not positive for m = {m}, s = {s}, k = {k}"
        )));
    }
    let ln_q = (2.0 * mf + s).ln() - mf.ln() + ln_gamma_ratio(kf + s, 3.0 + s / mf)
        - ln_gamma_ratio(mf + s, 2.0 + s / mf);
    Ok(ln_q.exp())
}

/// Layer recurrence for a given mean weight. Returns `Q_g ..= Q_{k_max}`.
fn layer_recurrence(
    f: &WeightFunction,
    increment: &IncrementSpec,
    mean_weight: f64,
    k_max: u32,
) -> Vec<f64> {
    let g = increment.min_size();
    let m = increment.mean();
    let mut q = Vec::with_capacity((k_max + 1).saturating_sub(g) as usize);
    let mut prev = 0.0;
    for k in g..=k_max {
        let inflow = if k > g {
            m * f.value(k - 1) * prev
        } else {
            0.0
        };
        prev = (increment.prob(k) * mean_weight + inflow) / (mean_weight + m * f.value(k));
        q.push(prev);
    }
    q
}

/// Mass and weight carried by degrees beyond `k_last` when the recurrence
/// there has become `Q_k = (k-1+s) Q_{k-1} / (k+s+c)` with `c = <f>/m`.
///
/// Both follow from telescoping sums of gamma-function ratios:
/// `Σ_{k>K} Q_k = Q_K (K+s)/c` and `Σ_{k>K} (k+s) Q_k = Q_K (K+s)(K+s+1)/(c-1)`.
/// The weight sum diverges for `c <= 1`.
pub fn linear_tail(q_last: f64, k_last: u32, s: f64, c: f64) -> (f64, f64) {
    let ks = f64::from(k_last) + s;
    let mass = q_last * ks / c;
    let weight = if c > 1.0 {
        q_last * ks * (ks + 1.0) / (c - 1.0)
    } else {
        f64::INFINITY
    };
    (mass, weight)
}

/// Smallest window from which the tail sums of [`linear_tail`] are exact.
fn tail_window(f: &WeightFunction, increment: &IncrementSpec) -> Option<u32> {
    let from = f.linear_from()?;
    Some(from.max(increment.max_size()).max(increment.min_size()))
}

/// `<f> - Σ_k f(k) Q_k` including the analytic tail beyond the window.
///
/// Zero at the self-consistent mean weight. Weight functions without a
/// linear tail contribute nothing beyond the window.
pub fn mean_weight_residual(
    f: &WeightFunction,
    increment: &IncrementSpec,
    dist: &DegreeDistribution,
) -> Option<f64> {
    let w = dist.mean_weight()?;
    let window: f64 = dist.iter().map(|(k, p)| f.value(k) * p).sum();
    let tail = match (f.tail_displacement(), tail_window(f, increment)) {
        (Some(s), Some(start)) if dist.k_max() >= start => {
            linear_tail(
                dist.get(dist.k_max()),
                dist.k_max(),
                s,
                w / increment.mean(),
            )
            .1
        }
        _ => 0.0,
    };
    Some(w - window - tail)
}

/// Mean weight implied by the model on its own: analytic for linear and
/// constant weights, solved otherwise.
fn solve_mean_weight(f: &WeightFunction, increment: &IncrementSpec, k_max: u32) -> Result<f64> {
    let m = increment.mean();
    match f {
        WeightFunction::Linear { s } => Ok(2.0 * m + s),
        WeightFunction::Constant => Ok(1.0),
        WeightFunction::Tabulated { tail_s, .. } => {
            let window = k_max.max(tail_window(f, increment).unwrap_or(k_max));
            let residual = |w: f64| -> f64 {
                let q = layer_recurrence(f, increment, w, window);
                let g = increment.min_size();
                let body: f64 = q
                    .iter()
                    .enumerate()
                    .map(|(i, p)| f.value(g + i as u32) * p)
                    .sum();
                let (_, tail) = linear_tail(*q.last().unwrap_or(&0.0), window, *tail_s, w / m);
                body + tail - w
            };
            solve_decreasing(residual, m, 2.0 * m + tail_s)
        }
    }
}

/// Root of a decreasing function on `(lower, ∞)` that is positive just
/// above `lower`: bracket by doubling, then Illinois regula falsi.
fn solve_decreasing(h: impl Fn(f64) -> f64, lower: f64, guess: f64) -> Result<f64> {
    let mut lo = lower * (1.0 + 1e-9);
    let mut h_lo = h(lo);
    let mut hi = guess.max(lower * 2.0);
    let mut h_hi = h(hi);
    let mut iterations = 0;
    while h_hi > 0.0 {
        lo = hi;
        h_lo = h_hi;
        hi *= 2.0;
        h_hi = h(hi);
        iterations += 1;
        if iterations > 200 || !h_hi.is_finite() {
            return Err(Error::NoConvergence {
                iterations,
                residual: h_hi,
            });
        }
    }
    if !(h_lo > 0.0) {
        return Err(Error::NoConvergence {
            iterations,
            residual: h_lo,
        });
    }
    // Illinois: halve the retained end's value when the same side moves twice.
    let mut side = 0i8;
    let mut x_prev = f64::NAN;
    while iterations < MEAN_WEIGHT_MAX_ITER {
        iterations += 1;
        let x = (lo * h_hi - hi * h_lo) / (h_hi - h_lo);
        let hx = h(x);
        if hx == 0.0 || (x - x_prev).abs() < MEAN_WEIGHT_TOL || hi - lo < MEAN_WEIGHT_TOL {
            return Ok(x);
        }
        x_prev = x;
        if hx > 0.0 {
            lo = x;
            h_lo = hx;
            if side == 1 {
                h_hi *= 0.5;
            }
            side = 1;
        } else {
            hi = x;
            h_hi = hx;
            if side == -1 {
                h_lo *= 0.5;
            }
            side = -1;
        }
    }
    Err(Error::NoConvergence {
        iterations,
        residual: hi - lo,
    })
}

/// Distribution for a general weight function and fixed `m`.
pub fn vdd_general(f: &WeightFunction, m: u32, k_max: u32) -> Result<DegreeDistribution> {
    check_kmax(m, k_max)?;
    let increment = IncrementSpec::fixed(m)?;
    vdd_with_increment(f, &increment, k_max)
}

/// Distribution for a general weight function and stochastic increments.
pub fn vdd_stochastic(
    f: &WeightFunction,
    r: &IncrementDist,
    k_max: u32,
) -> Result<DegreeDistribution> {
    vdd_with_increment(f, &IncrementSpec::Stochastic(r.clone()), k_max)
}

/// Shared body of [`vdd_general`] and [`vdd_stochastic`].
pub fn vdd_with_increment(
    f: &WeightFunction,
    increment: &IncrementSpec,
    k_max: u32,
) -> Result<DegreeDistribution> {
    let g = increment.min_size();
    if k_max < g {
        return Err(Error::domain(format!("k_max = {k_max} is below g = {g}")));
    }
    f.validate_from(g)
        .map_err(|e| Error::domain(e.to_string()))?;
    let w = solve_mean_weight(f, increment, k_max)?;
    Ok(vdd_with_mean_weight(f, increment, w, k_max))
}

/// Runs the recurrence with a caller-supplied mean weight, without checking
/// that it is self-consistent.
pub fn vdd_with_mean_weight(
    f: &WeightFunction,
    increment: &IncrementSpec,
    mean_weight: f64,
    k_max: u32,
) -> DegreeDistribution {
    let q = layer_recurrence(f, increment, mean_weight, k_max);
    DegreeDistribution::new(increment.min_size(), q, Some(mean_weight))
}

/// Exact distribution of any model, dispatching to the matching recurrence.
pub fn exact_vdd(model: &ModelSpec, k_max: u32) -> Result<DegreeDistribution> {
    match (&model.rule, &model.increment) {
        (AttachmentRule::Hybrid { a }, IncrementSpec::Fixed { m }) => vdd_p(*m, *a, k_max),
        (AttachmentRule::Linear(WeightFunction::Linear { s }), IncrementSpec::Fixed { m }) => {
            vdd_l(*m, *s, k_max)
        }
        (AttachmentRule::Linear(WeightFunction::Constant), IncrementSpec::Fixed { m }) => {
            vdd_const(*m, k_max)
        }
        (AttachmentRule::Linear(f) | AttachmentRule::General(f), inc) => {
            vdd_with_increment(f, inc, k_max)
        }
        (AttachmentRule::Hybrid { .. }, IncrementSpec::Stochastic(_)) => {
            Err(Error::model("hybrid graphs require a fixed increment"))
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn close(a: f64, b: f64, tol: f64) -> bool {
        (a - b).abs() <= tol
    }

    #[test]
    fn vdd_l_examples() {
        let d = vdd_l(2, 0.0, 100).unwrap();
        assert!(close(d.get(2), 0.5, 1e-15));
        assert!(close(d.get(3), 0.2, 1e-15));
        assert_eq!(d.get(1), 0.0);
        let d = vdd_l(2, 12.0, 10).unwrap();
        assert!(close(d.get(2), 16.0 / 44.0, 1e-15));
    }

    #[test]
    fn vdd_l_rejects_bad_input() {
        assert!(matches!(vdd_l(2, -2.0, 10), Err(Error::Domain(_))));
        assert!(vdd_l(3, 0.0, 2).is_err());
    }

    #[test]
    fn vdd_p_examples() {
        let d = vdd_p(2, 0.75, 10).unwrap();
        assert!(close(d.get(2), 2.0 / 5.5, 1e-15));
        // (2*0.75*2 + 0.25*2) / (2 + 3 + 0.25*3) * Q_2 = 3.5/5.75 * 0.363636...
        assert!(close(d.get(3), 3.5 / 5.75 * 2.0 / 5.5, 1e-15));
        assert!(close(d.get(3), 0.221_344, 1e-6));
        assert!(close(vdd_p(2, 0.0, 5).unwrap().get(2), 0.5, 1e-15));
    }

    #[test]
    fn vdd_const_examples() {
        assert!(close(vdd_const(1, 10).unwrap().get(1), 0.5, 0.0));
        assert!(close(vdd_const(1, 10).unwrap().get(5), 0.03125, 0.0));
        assert!(close(vdd_const(2, 10).unwrap().get(2), 1.0 / 3.0, 1e-16));
        assert!(close(vdd_const_closed(1, 5).unwrap(), 0.03125, 0.0));
    }

    #[test]
    fn closed_form_examples() {
        assert!(close(
            vdd_l_closed(2, 0.0, 10).unwrap(),
            12.0 / 1320.0,
            1e-15
        ));
        assert!(close(vdd_l_closed(2, 0.0, 2).unwrap(), 0.5, 1e-14));
        assert!(close(vdd_l_closed(2, 12.0, 2).unwrap(), 16.0 / 44.0, 1e-14));
        assert!(vdd_l_closed(2, -2.5, 3).is_err());
        assert!(vdd_l_closed(3, 0.0, 2).is_err());
    }

    #[test]
    fn closed_form_ratio() {
        for &(m, s) in &[(1u32, -0.5), (2, 0.0), (3, 4.5)] {
            for k in [m + 1, 50, 3000] {
                let r = vdd_l_closed(m, s, k).unwrap() / vdd_l_closed(m, s, k - 1).unwrap();
                let kf = f64::from(k);
                let want = (kf - 1.0 + s) / (kf + s + 2.0 + s / f64::from(m));
                assert!(close(r, want, 1e-12), "m={m} s={s} k={k}");
            }
        }
    }

    #[test]
    fn general_reduces_to_special_cases() {
        let a = vdd_general(&WeightFunction::Linear { s: 0.0 }, 2, 500).unwrap();
        let b = vdd_l(2, 0.0, 500).unwrap();
        for k in 2..=500 {
            assert!(close(a.get(k), b.get(k), 1e-15));
        }
        let a = vdd_general(&WeightFunction::Constant, 1, 200).unwrap();
        let b = vdd_const(1, 200).unwrap();
        for k in 1..=200 {
            assert!(close(a.get(k), b.get(k), 1e-15));
        }
    }

    #[test]
    fn stochastic_examples() {
        let lin = WeightFunction::Linear { s: 0.0 };
        let r = IncrementDist::new(&[(2, 1.0)]).unwrap();
        let a = vdd_stochastic(&lin, &r, 300).unwrap();
        let b = vdd_l(2, 0.0, 300).unwrap();
        for k in 2..=300 {
            assert!(close(a.get(k), b.get(k), 1e-15));
        }
        let r = IncrementDist::new(&[(1, 0.5), (3, 0.5)]).unwrap();
        let d = vdd_stochastic(&lin, &r, 300).unwrap();
        assert!(close(d.get(1), 1.0 / 3.0, 1e-15));
        assert_eq!(d.k_min(), 1);
    }

    #[test]
    fn tabulated_tail_ratio() {
        let head = vec![
            0.0, 0.0, 0.0, 1.38802, 2.40613, 5.28966, 6.67, 6.71098, 7.79545, 8.10619,
        ];
        let f = WeightFunction::tabulated(head, -1.9655, 11).unwrap();
        let r = IncrementDist::new(&[
            (1, 0.34145),
            (2, 0.42246),
            (3, 0.09664),
            (4, 0.09433),
            (5, 0.01504),
            (6, 0.03008),
        ])
        .unwrap();
        let d = vdd_stochastic(&f, &r, 2000).unwrap();
        let w = d.mean_weight().unwrap();
        let m = r.mean();
        // k = 11 still sees the tabulated f(10).
        for k in [12u32, 13, 100, 1999] {
            let kf = f64::from(k);
            let want = m * (kf - 2.9655) / (w + m * (kf - 1.9655));
            assert!(close(d.get(k) / d.get(k - 1), want, 1e-12), "k={k}");
        }
        let inc = IncrementSpec::Stochastic(r);
        assert!(mean_weight_residual(&f, &inc, &d).unwrap().abs() < 1e-10);
    }

    #[test]
    fn mean_weight_residual_zero_for_linear() {
        let d = vdd_l(2, -0.5, 5000).unwrap();
        let f = WeightFunction::Linear { s: -0.5 };
        let inc = IncrementSpec::fixed(2).unwrap();
        assert!(mean_weight_residual(&f, &inc, &d).unwrap().abs() < 1e-10);
    }

    #[test]
    fn linear_tail_matches_long_window() {
        // BA tail beyond K = 100, measured against a window of 10^6.
        let long = vdd_l(2, 0.0, 1_000_000).unwrap();
        let short = long.truncated(100);
        let (mass, weight) = linear_tail(short.get(100), 100, 0.0, 2.0);
        let mass_far: f64 = (101..=1_000_000).map(|k| long.get(k)).sum();
        let weight_far: f64 = (101..=1_000_000).map(|k| f64::from(k) * long.get(k)).sum();
        assert!(close(mass, mass_far, 1e-11));
        // The weight tail decays like 1/K, so the 10^6 window misses ~12e-6.
        assert!(close(weight, weight_far, 2e-5));
    }

    #[test]
    fn csv_format() {
        let d = vdd_l(2, 0.0, 3).unwrap();
        let mut buf = Vec::new();
        d.write_csv(&mut buf).unwrap();
        let text = String::from_utf8(buf).unwrap();
        let lines: Vec<_> = text.lines().collect();
        assert_eq!(lines[0], "k,Q");
        assert_eq!(lines[1], "2,0.5");
        assert!(lines[3].starts_with("# tail_mass="));
        assert!(lines[3].contains("mean_weight=4.0"));
    }

    #[test]
    fn exact_vdd_dispatch() {
        let p = exact_vdd(&ModelSpec::hybrid(2, 0.75).unwrap(), 50).unwrap();
        assert!(close(p.get(2), 2.0 / 5.5, 1e-15));
        let c = exact_vdd(&ModelSpec::constant(1).unwrap(), 50).unwrap();
        assert!(close(c.get(3), 0.125, 0.0));
    }
}
