//! Distances and fits used to compare degree distributions.

use statrs::distribution::{ChiSquared, ContinuousCDF};

use crate::error::{Error, Result};
use crate::exact::DegreeDistribution;

/// Least-squares slope of `ln y` against `ln x`. Points with a nonpositive
/// coordinate are skipped.
pub fn loglog_slope(points: impl IntoIterator<Item = (f64, f64)>) -> Result<f64> {
    let pts: Vec<(f64, f64)> = points
        .into_iter()
        .filter(|&(x, y)| x > 0.0 && y > 0.0)
        .map(|(x, y)| (x.ln(), y.ln()))
        .collect();
    if pts.len() < 3 {
        return Err(Error::InsufficientData(format!(
            "a log-log fit needs at least 3 positive points, got {}",
            pts.len()
        )));
    }
    let n = pts.len() as f64;
    let mx = pts.iter().map(|p| p.0).sum::<f64>() / n;
    let my = pts.iter().map(|p| p.1).sum::<f64>() / n;
    let sxy: f64 = pts.iter().map(|p| (p.0 - mx) * (p.1 - my)).sum();
    let sxx: f64 = pts.iter().map(|p| (p.0 - mx) * (p.0 - mx)).sum();
    if sxx == 0.0 {
        return Err(Error::InsufficientData(
            "all points share one abscissa".into(),
        ));
    }
    Ok(sxy / sxx)
}

/// Log-log slope of a distribution over degrees `lo ..= hi`.
pub fn distribution_slope(d: &DegreeDistribution, lo: u32, hi: u32) -> Result<f64> {
    loglog_slope((lo..=hi.min(d.k_max())).map(|k| (f64::from(k), d.get(k))))
}

/// Total variation distance over the union of both windows.
pub fn tv_distance(p: &DegreeDistribution, q: &DegreeDistribution) -> f64 {
    let lo = p.k_min().min(q.k_min());
    let hi = p.k_max().max(q.k_max());
    0.5 * (lo..=hi).map(|k| (p.get(k) - q.get(k)).abs()).sum::<f64>()
}

/// Pearson statistic `Σ (O - E)^2 / E` of counts against probabilities.
/// Cells with zero expected probability must have zero counts.
pub fn chi_square(observed: &[u64], probs: &[f64]) -> Result<f64> {
    if observed.len() != probs.len() {
        return Err(Error::domain("observed and expected lengths differ"));
    }
    let n: u64 = observed.iter().sum();
    let n = n as f64;
    let mut stat = 0.0;
    for (&o, &p) in observed.iter().zip(probs) {
        let e = n * p;
        if e == 0.0 {
            if o > 0 {
                return Err(Error::domain("count observed in a zero-probability cell"));
            }
            continue;
        }
        let d = o as f64 - e;
        stat += d * d / e;
    }
    Ok(stat)
}

/// Upper tail probability of the chi-square distribution.
pub fn chi_square_p_value(stat: f64, dof: usize) -> Result<f64> {
    let dist = ChiSquared::new(dof as f64)
        .map_err(|e| Error::domain(format!("chi-square with {dof} degrees of freedom: {e}")))?;
    Ok(dist.sf(stat))
}
