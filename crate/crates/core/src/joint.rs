//! Arc and edge endpoint-degree distributions.
//!
//! `Q_{l,k}` is the probability that a uniformly chosen arc runs from a
//! vertex of degree `l` to a vertex of degree `k`. Entries vanish for
//! `l < m` or `k <= m`. Row `l = m` is filled left to right from column
//! `m + 1`, then each later row from its west and north neighbours.

use std::io::Write;

use crate::error::{Error, Result};
use crate::exact::{vdd_l, vdd_p, vdd_with_mean_weight, DegreeDistribution};
use crate::model::{IncrementSpec, WeightFunction};

/// Default window for joint distributions.
pub const DEFAULT_KMAX_JOINT: u32 = 2000;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum JointKind {
    /// Ordered (source, target) pairs.
    Arc,
    /// Symmetrised over both traversal directions.
    Edge,
}

impl JointKind {
    pub fn name(self) -> &'static str {
        match self {
            JointKind::Arc => "arc",
            JointKind::Edge => "edge",
        }
    }
}

/// Dense `(k_max + 1) x (k_max + 1)` array indexed by degree.
#[derive(Debug, Clone, PartialEq)]
pub struct JointDegreeDistribution {
    k_min: u32,
    k_max: u32,
    kind: JointKind,
    data: Vec<f64>,
    tail_mass: f64,
    label: String,
    empirical: bool,
}

impl JointDegreeDistribution {
    pub(crate) fn from_dense(
        k_min: u32,
        k_max: u32,
        kind: JointKind,
        data: Vec<f64>,
        label: String,
        empirical: bool,
    ) -> Self {
        debug_assert_eq!(data.len(), ((k_max + 1) * (k_max + 1)) as usize);
        let tail_mass = 1.0 - data.iter().sum::<f64>();
        JointDegreeDistribution {
            k_min,
            k_max,
            kind,
            data,
            tail_mass,
            label,
            empirical,
        }
    }

    pub fn k_min(&self) -> u32 {
        self.k_min
    }

    pub fn k_max(&self) -> u32 {
        self.k_max
    }

    pub fn kind(&self) -> JointKind {
        self.kind
    }

    /// `1 - Σ entries` over the window.
    pub fn tail_mass(&self) -> f64 {
        self.tail_mass
    }

    /// Parameter description recorded in exports.
    pub fn label(&self) -> &str {
        &self.label
    }

    #[inline]
    fn idx(&self, l: u32, k: u32) -> usize {
        (l * (self.k_max + 1) + k) as usize
    }

    pub fn get(&self, l: u32, k: u32) -> f64 {
        if l > self.k_max || k > self.k_max {
            return 0.0;
        }
        self.data[self.idx(l, k)]
    }

    pub fn row(&self, l: u32) -> &[f64] {
        let w = (self.k_max + 1) as usize;
        &self.data[l as usize * w..(l as usize + 1) * w]
    }

    /// `Σ_k Q_{l,k}` over the window.
    pub fn row_sum(&self, l: u32) -> f64 {
        if l > self.k_max {
            return 0.0;
        }
        self.row(l).iter().sum()
    }

    /// `Σ_l Q_{l,k}` over the window.
    pub fn col_sum(&self, k: u32) -> f64 {
        if k > self.k_max {
            return 0.0;
        }
        (0..=self.k_max).map(|l| self.get(l, k)).sum()
    }

    /// Largest absolute entry difference over `l, k <= limit`.
    pub fn sup_distance(&self, other: &Self, limit: u32) -> f64 {
        let mut worst = 0.0f64;
        for l in 0..=limit {
            for k in 0..=limit {
                worst = worst.max((self.get(l, k) - other.get(l, k)).abs());
            }
        }
        worst
    }

    /// Half the L1 distance restricted to `l, k <= limit`.
    pub fn tv_distance_window(&self, other: &Self, limit: u32) -> f64 {
        let mut sum = 0.0;
        for l in 0..=limit {
            for k in 0..=limit {
                sum += (self.get(l, k) - other.get(l, k)).abs();
            }
        }
        0.5 * sum
    }

    fn structural_zero(&self, l: u32, k: u32) -> bool {
        let m = self.k_min;
        let arc_zero = |l: u32, k: u32| l < m || k <= m;
        match self.kind {
            JointKind::Arc => arc_zero(l, k),
            JointKind::Edge => arc_zero(l, k) && arc_zero(k, l),
        }
    }

    /// Writes `l,k,value` triplets sorted by `(l, k)` after a comment header.
    ///
    /// Exact distributions list every entry outside the structural-zero
    /// region; empirical histograms list only observed pairs.
    pub fn write_csv<W: Write>(&self, mut out: W) -> std::io::Result<()> {
        writeln!(
            out,
            "# kind={} m={} {} k_max={} tail_mass={:?}",
            self.kind.name(),
            self.k_min,
            self.label,
            self.k_max,
            self.tail_mass
        )?;
        writeln!(out, "l,k,value")?;
        for l in 0..=self.k_max {
            for k in 0..=self.k_max {
                let v = self.get(l, k);
                let skip = if self.empirical {
                    v == 0.0
                } else {
                    self.structural_zero(l, k)
                };
                if !skip {
                    writeln!(out, "{l},{k},{v:?}")?;
                }
            }
        }
        Ok(())
    }
}

/// Coefficients of the two non-trivial branches of an arc recurrence.
trait ArcRecurrence {
    /// Entry `(m, k)` from `Q_{k-1}` and the west neighbour `Q_{m,k-1}`.
    fn first_row(&self, k: u32, q_prev: f64, west: f64) -> f64;
    /// Entry `(l, k)` for `l, k > m`.
    fn interior(&self, l: u32, k: u32, west: f64, north: f64) -> f64;
}

struct PennockArcs {
    m: f64,
    a: f64,
}

impl ArcRecurrence for PennockArcs {
    fn first_row(&self, k: u32, q_prev: f64, west: f64) -> f64 {
        let (m, a, k) = (self.m, self.a, f64::from(k));
        (2.0 * a * m + (1.0 - a) * (k - 1.0)) * (q_prev + m * west)
            / (2.0 * m + (3.0 * a + 1.0) * m * m + m * (1.0 - a) * k)
    }

    fn interior(&self, l: u32, k: u32, west: f64, north: f64) -> f64 {
        let (m, a) = (self.m, self.a);
        let (l, k) = (f64::from(l), f64::from(k));
        ((2.0 * a * m + (1.0 - a) * (k - 1.0)) * west
            + (2.0 * a * m + (1.0 - a) * (l - 1.0)) * north)
            / (2.0 + 4.0 * a * m + (1.0 - a) * (k + l))
    }
}

struct LinearArcs {
    m: f64,
    s: f64,
}

impl ArcRecurrence for LinearArcs {
    fn first_row(&self, k: u32, q_prev: f64, west: f64) -> f64 {
        let (m, s, k) = (self.m, self.s, f64::from(k));
        if k == m + 1.0 {
            (m + s) * q_prev / (2.0 * m + s + m * (2.0 * m + 2.0 * s + 1.0))
        } else {
            (k - 1.0 + s) * (q_prev + m * west) / (2.0 * m + s + m * (m + 2.0 * s + k))
        }
    }

    fn interior(&self, l: u32, k: u32, west: f64, north: f64) -> f64 {
        let (m, s) = (self.m, self.s);
        let (l, k) = (f64::from(l), f64::from(k));
        ((l - 1.0 + s) * north + (k - 1.0 + s) * west) / ((2.0 * m + s) / m + l + 2.0 * s + k)
    }
}

struct GeneralArcs<'a> {
    f: &'a WeightFunction,
    m: u32,
    mean_weight: f64,
}

impl ArcRecurrence for GeneralArcs<'_> {
    fn first_row(&self, k: u32, q_prev: f64, west: f64) -> f64 {
        let m = f64::from(self.m);
        let fm = self.f.value(self.m);
        if k == self.m + 1 {
            fm * q_prev / (self.mean_weight + m * (fm + self.f.value(k)))
        } else {
            self.f.value(k - 1) * (q_prev + m * west)
                / (self.mean_weight + m * (fm + self.f.value(k)))
        }
    }

    fn interior(&self, l: u32, k: u32, west: f64, north: f64) -> f64 {
        let m = f64::from(self.m);
        (self.f.value(l - 1) * north + self.f.value(k - 1) * west)
            / (self.mean_weight / m + self.f.value(l) + self.f.value(k))
    }
}

/// Sweeps rows `m ..= k_max`, handing each finished row to `visit`.
/// Only two rows are alive at a time.
fn sweep(
    rec: &impl ArcRecurrence,
    m: u32,
    q: &DegreeDistribution,
    k_max: u32,
    mut visit: impl FnMut(u32, &[f64]),
) {
    let w = (k_max + 1) as usize;
    let mut north = vec![0.0; w];
    let mut row = vec![0.0; w];
    for k in m + 1..=k_max {
        row[k as usize] = rec.first_row(k, q.get(k - 1), row[k as usize - 1]);
    }
    visit(m, &row);
    for l in m + 1..=k_max {
        std::mem::swap(&mut north, &mut row);
        row[m as usize] = 0.0;
        for k in m + 1..=k_max {
            let ku = k as usize;
            row[ku] = rec.interior(l, k, row[ku - 1], north[ku]);
        }
        visit(l, &row);
    }
}

fn dense(
    rec: &impl ArcRecurrence,
    m: u32,
    q: &DegreeDistribution,
    k_max: u32,
    label: String,
) -> JointDegreeDistribution {
    let w = (k_max + 1) as usize;
    let mut data = vec![0.0; w * w];
    sweep(rec, m, q, k_max, |l, row| {
        data[l as usize * w..(l as usize + 1) * w].copy_from_slice(row);
    });
    JointDegreeDistribution::from_dense(m, k_max, JointKind::Arc, data, label, false)
}

fn check(m: u32, k_max: u32) -> Result<()> {
    if m == 0 {
        return Err(Error::domain("m must be at least 1"));
    }
    if k_max <= m {
        return Err(Error::domain(format!(
            "k_max = {k_max} must exceed m = {m}"
        )));
    }
    Ok(())
}

/// Arc endpoint distribution of the Pennock graph `P(m, a)`.
pub fn joint_p(m: u32, a: f64, k_max: u32) -> Result<JointDegreeDistribution> {
    check(m, k_max)?;
    let q = vdd_p(m, a, k_max)?;
    let rec = PennockArcs { m: f64::from(m), a };
    Ok(dense(&rec, m, &q, k_max, format!("model=P a={a:?}")))
}

/// Arc endpoint distribution of the L-graph with `f(k) = k + s`.
pub fn joint_l(m: u32, s: f64, k_max: u32) -> Result<JointDegreeDistribution> {
    check(m, k_max)?;
    let q = vdd_l(m, s, k_max)?;
    let rec = LinearArcs { m: f64::from(m), s };
    Ok(dense(&rec, m, &q, k_max, format!("model=L s={s:?}")))
}

/// Arc endpoint distribution for an arbitrary weight function with the
/// given mean weight.
pub fn joint_general(
    f: &WeightFunction,
    m: u32,
    mean_weight: f64,
    k_max: u32,
) -> Result<JointDegreeDistribution> {
    check(m, k_max)?;
    f.validate_from(m)
        .map_err(|e| Error::domain(e.to_string()))?;
    if !(mean_weight > 0.0) {
        return Err(Error::domain(format!(
            "mean weight must be positive, got {mean_weight}"
        )));
    }
    let q = vdd_with_mean_weight(f, &IncrementSpec::fixed(m)?, mean_weight, k_max);
    let rec = GeneralArcs { f, m, mean_weight };
    Ok(dense(
        &rec,
        m,
        &q,
        k_max,
        format!("model=general mean_weight={mean_weight:?}"),
    ))
}

/// Source and target marginals of the L-graph arc distribution without
/// holding the dense array: `(Σ_k Q_{l,k}, Σ_l Q_{l,k})` indexed by degree.
pub fn joint_l_marginals(m: u32, s: f64, k_max: u32) -> Result<(Vec<f64>, Vec<f64>)> {
    check(m, k_max)?;
    let q = vdd_l(m, s, k_max)?;
    let rec = LinearArcs { m: f64::from(m), s };
    let w = (k_max + 1) as usize;
    let mut rows = vec![0.0; w];
    let mut cols = vec![0.0; w];
    sweep(&rec, m, &q, k_max, |l, row| {
        rows[l as usize] = row.iter().sum();
        for (c, v) in cols.iter_mut().zip(row) {
            *c += v;
        }
    });
    Ok((rows, cols))
}

/// `Θ = (Q + Qᵀ) / 2`. The result is exactly symmetric.
pub fn edge_from_arc(q: &JointDegreeDistribution) -> Result<JointDegreeDistribution> {
    if q.kind != JointKind::Arc {
        return Err(Error::KindMismatch {
            expected: "arc",
            found: q.kind.name(),
        });
    }
    let w = (q.k_max + 1) as usize;
    let mut data = vec![0.0; w * w];
    for l in 0..w {
        for k in 0..w {
            data[l * w + k] = 0.5 * (q.data[l * w + k] + q.data[k * w + l]);
        }
    }
    Ok(JointDegreeDistribution::from_dense(
        q.k_min,
        q.k_max,
        JointKind::Edge,
        data,
        q.label.clone(),
        q.empirical,
    ))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::vdd_const;

    #[test]
    fn structural_zeros() {
        let q = joint_p(2, 0.75, 40).unwrap();
        for k in 0..=40 {
            assert_eq!(q.get(1, k), 0.0);
            assert_eq!(q.get(0, k), 0.0);
        }
        for l in 0..=40 {
            assert_eq!(q.get(l, 2), 0.0);
            assert_eq!(q.get(l, 1), 0.0);
        }
        assert!(q.get(2, 3) > 0.0);
    }

    #[test]
    fn constant_weight_entries() {
        let q = joint_general(&WeightFunction::Constant, 1, 1.0, 30).unwrap();
        assert!((q.get(1, 2) - 1.0 / 6.0).abs() < 1e-15);
        assert!((q.get(1, 3) - 5.0 / 36.0).abs() < 1e-15);
        for l in 0..=30 {
            assert_eq!(q.get(l, 1), 0.0);
        }
    }

    #[test]
    fn linear_first_entry() {
        let q = joint_l(1, 0.0, 20).unwrap();
        let q1 = vdd_l(1, 0.0, 1).unwrap().get(1);
        assert!((q.get(1, 2) - q1 / 5.0).abs() < 1e-16);
        assert!((q.get(1, 2) - 2.0 / 15.0).abs() < 1e-16);
    }

    #[test]
    fn pennock_special_cases_match_general() {
        let p = joint_p(2, 0.0, 150).unwrap();
        let g = joint_general(&WeightFunction::Linear { s: 0.0 }, 2, 4.0, 150).unwrap();
        assert!(p.sup_distance(&g, 150) < 1e-12);
        let p = joint_p(1, 1.0, 150).unwrap();
        let g = joint_general(&WeightFunction::Constant, 1, 1.0, 150).unwrap();
        assert!(p.sup_distance(&g, 150) < 1e-12);
    }

    #[test]
    fn linear_matches_general() {
        let l = joint_l(3, 0.0, 120).unwrap();
        let g = joint_general(&WeightFunction::Linear { s: 0.0 }, 3, 6.0, 120).unwrap();
        assert!(l.sup_distance(&g, 120) < 1e-15);
    }

    #[test]
    fn edge_symmetrisation() {
        let q = joint_general(&WeightFunction::Constant, 1, 1.0, 30).unwrap();
        let e = edge_from_arc(&q).unwrap();
        assert_eq!(e.kind(), JointKind::Edge);
        assert!((e.get(1, 2) - 1.0 / 12.0).abs() < 1e-16);
        assert_eq!(e.get(1, 2), e.get(2, 1));
        for l in 0..=30 {
            for k in 0..=30 {
                assert_eq!(e.get(l, k).to_bits(), e.get(k, l).to_bits());
            }
        }
        assert!((e.tail_mass() - q.tail_mass()).abs() < 1e-14);
        let again = edge_from_arc(&e);
        assert!(matches!(again, Err(Error::KindMismatch { .. })));
    }

    #[test]
    fn symmetric_and_zero_inputs_are_fixed_points() {
        let w = 6usize;
        let mut data = vec![0.0; w * w];
        data[2 * w + 3] = 0.25;
        data[3 * w + 2] = 0.25;
        let sym = JointDegreeDistribution::from_dense(
            1,
            5,
            JointKind::Arc,
            data.clone(),
            String::new(),
            false,
        );
        let e = edge_from_arc(&sym).unwrap();
        assert_eq!(e.data, data);
        let zero = JointDegreeDistribution::from_dense(
            1,
            5,
            JointKind::Arc,
            vec![0.0; w * w],
            String::new(),
            false,
        );
        assert!(edge_from_arc(&zero).unwrap().data.iter().all(|&v| v == 0.0));
    }

    #[test]
    fn marginals_only_matches_dense() {
        let q = joint_l(2, 0.5, 80).unwrap();
        let (rows, cols) = joint_l_marginals(2, 0.5, 80).unwrap();
        for d in 0..=80 {
            assert!((rows[d as usize] - q.row_sum(d)).abs() < 1e-15);
            assert!((cols[d as usize] - q.col_sum(d)).abs() < 1e-15);
        }
    }

    #[test]
    fn constant_target_marginal() {
        // Geometric tails are light, so a small window already holds the identity.
        let q = joint_general(&WeightFunction::Constant, 2, 1.0, 200).unwrap();
        let v = vdd_const(2, 200).unwrap();
        for k in 3..50 {
            let want = f64::from(k - 2) * v.get(k) / 2.0;
            assert!((q.col_sum(k) - want).abs() < 1e-12, "k={k}");
        }
        for l in 2..50 {
            assert!((q.row_sum(l) - v.get(l)).abs() < 1e-12, "l={l}");
        }
    }

    #[test]
    fn csv_skips_structural_zeros() {
        let q = joint_l(1, 0.0, 4).unwrap();
        let mut buf = Vec::new();
        q.write_csv(&mut buf).unwrap();
        let text = String::from_utf8(buf).unwrap();
        let mut lines = text.lines();
        assert!(lines.next().unwrap().starts_with("# kind=arc m=1 model=L"));
        assert_eq!(lines.next().unwrap(), "l,k,value");
        let rows: Vec<_> = lines.collect();
        // l in 1..=4, k in 2..=4
        assert_eq!(rows.len(), 12);
        assert!(rows[0].starts_with("1,2,"));
    }
}
