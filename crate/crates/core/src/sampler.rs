//! Dynamic weighted sampling over a growing set of items.

use rand::Rng;

use crate::error::{Error, Result};

/// Sum tree over item weights: point update and proportional draw in
/// `O(log n)`.
///
/// Internal nodes are always recomputed from their children rather than
/// adjusted by differences, so no rounding drift accumulates.
#[derive(Debug, Clone, Default)]
pub struct WeightedSampler {
    /// Heap layout: node `i` has children `2i` and `2i + 1`, leaves start at `cap`.
    tree: Vec<f64>,
    cap: usize,
    len: usize,
}

impl WeightedSampler {
    pub fn new() -> Self {
        Self::with_capacity(1)
    }

    pub fn with_capacity(n: usize) -> Self {
        let cap = n.max(1).next_power_of_two();
        WeightedSampler {
            tree: vec![0.0; 2 * cap],
            cap,
            len: 0,
        }
    }

    pub fn from_weights(weights: &[f64]) -> Result<Self> {
        let mut s = Self::with_capacity(weights.len());
        for &w in weights {
            s.push(w)?;
        }
        Ok(s)
    }

    pub fn len(&self) -> usize {
        self.len
    }

    pub fn is_empty(&self) -> bool {
        self.len == 0
    }

    pub fn total(&self) -> f64 {
        self.tree[1]
    }

    pub fn weight(&self, i: usize) -> f64 {
        assert!(
            i < self.len,
            "index {i} out of range for {} items",
            self.len
        );
        self.tree[self.cap + i]
    }

    fn check(w: f64) -> Result<()> {
        if !(w >= 0.0) || !w.is_finite() {
            return Err(Error::domain(format!(
                "sampling weight must be finite and nonnegative, got {w}"
            )));
        }
        Ok(())
    }

    fn grow(&mut self) {
        let cap = self.cap * 2;
        let mut tree = vec![0.0; 2 * cap];
        tree[cap..cap + self.len].copy_from_slice(&self.tree[self.cap..self.cap + self.len]);
        for i in (1..cap).rev() {
            tree[i] = tree[2 * i] + tree[2 * i + 1];
        }
        self.tree = tree;
        self.cap = cap;
    }

    /// Appends an item and returns its index.
    pub fn push(&mut self, w: f64) -> Result<usize> {
        Self::check(w)?;
        if self.len == self.cap {
            self.grow();
        }
        let i = self.len;
        self.len += 1;
        self.write(i, w);
        Ok(i)
    }

    pub fn set(&mut self, i: usize, w: f64) -> Result<()> {
        Self::check(w)?;
        assert!(
            i < self.len,
            "index {i} out of range for {} items",
            self.len
        );
        self.write(i, w);
        Ok(())
    }

    fn write(&mut self, i: usize, w: f64) {
        let mut node = self.cap + i;
        self.tree[node] = w;
        while node > 1 {
            node /= 2;
            self.tree[node] = self.tree[2 * node] + self.tree[2 * node + 1];
        }
    }

    /// Draws an index with probability `w_i / Σ w`. Zero-weight items are
    /// never returned.
    pub fn sample<R: Rng + ?Sized>(&self, rng: &mut R) -> Result<usize> {
        let total = self.total();
        if !(total > 0.0) {
            return Err(Error::ZeroTotalWeight(format!(
                "all {} items have zero weight",
                self.len
            )));
        }
        let mut u = rng.random::<f64>() * total;
        let mut node = 1;
        while node < self.cap {
            let left = self.tree[2 * node];
            let right = self.tree[2 * node + 1];
            if right == 0.0 || (u < left && left > 0.0) {
                node *= 2;
            } else {
                u -= left;
                node = 2 * node + 1;
            }
        }
        Ok(node - self.cap)
    }
}

/// Proportional draw from `sampler`.
pub fn weighted_pick<R: Rng + ?Sized>(sampler: &WeightedSampler, rng: &mut R) -> Result<usize> {
    sampler.sample(rng)
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    #[test]
    fn totals_follow_updates() {
        let mut s = WeightedSampler::new();
        for w in [1.0, 2.0, 3.0] {
            s.push(w).unwrap();
        }
        assert_eq!(s.total(), 6.0);
        s.set(1, 0.5).unwrap();
        assert_eq!(s.total(), 4.5);
        assert_eq!(s.weight(1), 0.5);
        for _ in 0..20 {
            s.push(1.0).unwrap();
        }
        assert_eq!(s.len(), 23);
        assert_eq!(s.total(), 24.5);
        assert_eq!(s.weight(2), 3.0);
    }

    #[test]
    fn zero_weights_never_drawn() {
        let s = WeightedSampler::from_weights(&[1.0, 0.0, 3.0, 0.0]).unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(1);
        let mut counts = [0u32; 4];
        for _ in 0..40_000 {
            counts[s.sample(&mut rng).unwrap()] += 1;
        }
        assert_eq!(counts[1], 0);
        assert_eq!(counts[3], 0);
        let share = f64::from(counts[0]) / 40_000.0;
        assert!((share - 0.25).abs() < 0.01, "{share}");
    }

    #[test]
    fn single_positive_weight() {
        let s = WeightedSampler::from_weights(&[0.0, 0.0, 2.5, 0.0, 0.0]).unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(9);
        for _ in 0..1000 {
            assert_eq!(weighted_pick(&s, &mut rng).unwrap(), 2);
        }
    }

    #[test]
    fn errors() {
        let s = WeightedSampler::from_weights(&[0.0, 0.0]).unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(0);
        assert!(matches!(s.sample(&mut rng), Err(Error::ZeroTotalWeight(_))));
        assert!(WeightedSampler::new().sample(&mut rng).is_err());
        let mut s = WeightedSampler::new();
        assert!(s.push(-1.0).is_err());
        assert!(s.push(f64::NAN).is_err());
    }
}
