//! Continuum (mean-field) approximation of degree growth and the power-law
//! exponent of linear-weight graphs.
//!
//! All functions accept a non-integer `m`, since the asymptotics depend on
//! the mean increment only.

use crate::error::{Error, Result};
use crate::model::{AttachmentRule, ModelSpec, WeightFunction};

#[derive(Debug, Clone, Copy, PartialEq)]
pub enum AsymptoticClass {
    /// `Q_k ~ c k^{-alpha}`.
    PowerLaw { alpha: f64 },
    /// Geometric decay.
    Exponential,
}

fn check_ms(m: f64, s: f64) -> Result<()> {
    if !(m > 0.0) || !m.is_finite() {
        return Err(Error::domain(format!("m must be positive, got {m}")));
    }
    if !s.is_finite() || s <= -m {
        return Err(Error::domain(format!("s must exceed -m = {}, got {s}", -m)));
    }
    Ok(())
}

/// Expected degree at time `t` of the vertex that arrived at time `i`:
/// `(m+s) (t/i)^{m/(2m+s)} - s`.
pub fn meanfield_degree(m: f64, s: f64, i: f64, t: f64) -> Result<f64> {
    check_ms(m, s)?;
    if !(i >= 1.0) || !(t >= i) || !t.is_finite() {
        return Err(Error::domain(format!(
            "need 1 <= i <= t, got i = {i}, t = {t}"
        )));
    }
    Ok((m + s) * (t / i).powf(m / (2.0 * m + s)) - s)
}

/// Mean-field estimate `Q̂_k = ((2m+s)/m) (m+s)^{(2m+s)/m} (k+s)^{-(3m+s)/m}`.
pub fn meanfield_vdd(m: f64, s: f64, k: f64) -> Result<f64> {
    check_ms(m, s)?;
    if k < m {
        return Err(Error::domain(format!("k = {k} is below m = {m}")));
    }
    if k + s <= 0.0 {
        return Err(Error::domain(format!(
            "k + s must be positive, got {}",
            k + s
        )));
    }
    let e = (2.0 * m + s) / m;
    Ok(e * (m + s).powf(e) * (k + s).powf(-(3.0 * m + s) / m))
}

/// Mean-field distribution function `F̂(k) = 1 - ((k+s)/(m+s))^{-(2m+s)/m}`.
pub fn meanfield_cdf(m: f64, s: f64, k: f64) -> Result<f64> {
    check_ms(m, s)?;
    if k < m {
        return Err(Error::domain(format!("k = {k} is below m = {m}")));
    }
    Ok(1.0 - ((k + s) / (m + s)).powf(-(2.0 * m + s) / m))
}

/// Displacement producing the tail exponent `alpha`: `s = (alpha - 3) m`.
pub fn alpha_to_s(alpha: f64, m: f64) -> Result<f64> {
    if !(m > 0.0) || !m.is_finite() {
        return Err(Error::domain(format!("m must be positive, got {m}")));
    }
    if !alpha.is_finite() || alpha <= 2.0 {
        return Err(Error::domain(format!(
            "alpha = {alpha} is not attainable: a tail exponent alpha <= 2 would give an \
             infinite mean degree, while the mean degree of a grown graph is 2m"
        )));
    }
    Ok((alpha - 3.0) * m)
}

/// Tail exponent of a linear weight `k + s`: `3 + s/m`.
pub fn s_to_alpha(s: f64, m: f64) -> Result<f64> {
    check_ms(m, s)?;
    Ok(3.0 + s / m)
}

/// Asymptotic shape of the degree distribution.
///
/// Tabulated weight functions are classified by their linear tail; the head
/// does not move the exponent.
pub fn classify(model: &ModelSpec) -> AsymptoticClass {
    let m = model.m();
    let f = match &model.rule {
        AttachmentRule::Hybrid { a } if *a >= 1.0 => return AsymptoticClass::Exponential,
        AttachmentRule::Hybrid { a } => {
            return AsymptoticClass::PowerLaw {
                alpha: 3.0 + 2.0 * a / (1.0 - a),
            }
        }
        AttachmentRule::Linear(f) | AttachmentRule::General(f) => f,
    };
    match f.tail_displacement() {
        Some(s) => AsymptoticClass::PowerLaw { alpha: 3.0 + s / m },
        None => {
            debug_assert!(matches!(f, WeightFunction::Constant));
            AsymptoticClass::Exponential
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn degree_examples() {
        assert_eq!(meanfield_degree(3.0, 1.5, 7.0, 7.0).unwrap(), 3.0);
        assert!((meanfield_degree(2.0, 0.0, 1.0, 16.0).unwrap() - 8.0).abs() < 1e-12);
        assert!((meanfield_degree(2.0, 12.0, 1.0, 256.0).unwrap() - 16.0).abs() < 1e-12);
        assert!(meanfield_degree(2.0, 0.0, 5.0, 4.0).is_err());
        assert!(meanfield_degree(2.0, -2.0, 1.0, 4.0).is_err());
    }

    #[test]
    fn vdd_examples() {
        assert!((meanfield_vdd(2.0, 0.0, 10.0).unwrap() - 0.008).abs() < 1e-15);
        // The shift matters: (k + s) = 99, so the value is 1.5 * 99^-2.5, not 1.5e-5.
        let want = 1.5 * 99f64.powf(-2.5);
        assert!((meanfield_vdd(2.0, -1.0, 100.0).unwrap() / want - 1.0).abs() < 1e-13);
        assert!((meanfield_vdd(2.0, -1.0, 100.0).unwrap() / 1.5e-5 - 1.0).abs() < 0.03);
        for m in [1.0, 2.0, 3.5] {
            for k in [4.0, 17.0, 300.0] {
                let want = 2.0 * m * m / (k * k * k);
                assert!((meanfield_vdd(m, 0.0, k).unwrap() - want).abs() < 1e-14 * want.max(1e-3));
            }
        }
        assert!(meanfield_vdd(2.0, 0.0, 1.0).is_err());
    }

    #[test]
    fn cdf_derivative_is_the_estimate() {
        let (m, s) = (2.0, 0.5);
        for k in [5.0, 40.0, 700.0] {
            let h = 1e-4 * k;
            let d = (meanfield_cdf(m, s, k + h).unwrap() - meanfield_cdf(m, s, k - h).unwrap())
                / (2.0 * h);
            let q = meanfield_vdd(m, s, k).unwrap();
            assert!((d / q - 1.0).abs() < 1e-6, "k={k}");
        }
    }

    #[test]
    fn cdf_starts_at_zero_and_increases() {
        assert_eq!(meanfield_cdf(2.0, 1.0, 2.0).unwrap(), 0.0);
        let a = meanfield_cdf(2.0, 1.0, 10.0).unwrap();
        let b = meanfield_cdf(2.0, 1.0, 100.0).unwrap();
        assert!(0.0 < a && a < b && b < 1.0);
    }

    #[test]
    fn alpha_conversions() {
        assert!((alpha_to_s(2.0682, 2.1093).unwrap() + 1.9655).abs() < 5e-4);
        assert_eq!(alpha_to_s(3.0, 2.7).unwrap(), 0.0);
        assert_eq!(alpha_to_s(4.0, 1.0).unwrap(), 1.0);
        let err = alpha_to_s(2.0, 1.0).unwrap_err().to_string();
        assert!(err.contains("infinite mean degree"));
        assert_eq!(s_to_alpha(-1.0, 2.0).unwrap(), 2.5);
    }

    #[test]
    fn classification() {
        let l = ModelSpec::linear(2, 0.0).unwrap();
        assert_eq!(classify(&l), AsymptoticClass::PowerLaw { alpha: 3.0 });
        let p = ModelSpec::hybrid(3, 1.0).unwrap();
        assert_eq!(classify(&p), AsymptoticClass::Exponential);
        let l = ModelSpec::linear(2, -1.0).unwrap();
        assert_eq!(classify(&l), AsymptoticClass::PowerLaw { alpha: 2.5 });
        assert_eq!(
            classify(&ModelSpec::constant(2).unwrap()),
            AsymptoticClass::Exponential
        );
        // P(2, 0.75) is L(2, 12).
        let p = ModelSpec::hybrid(2, 0.75).unwrap();
        assert_eq!(classify(&p), AsymptoticClass::PowerLaw { alpha: 9.0 });
    }
}
