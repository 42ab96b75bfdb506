//! Independent simulation replications.
//!
//! Replication `j` always draws from stream `j` of the base seed, and
//! results come back in replication order, so the outcome is the same
//! whether replications run on one thread or many.

use crate::error::Result;
use crate::generator::{grow_with, rng_for, ArcCounts, DegreeCounts, GrowOptions, GrowingGraph};
use crate::model::ModelSpec;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum Execution {
    Sequential,
    /// Uses the rayon pool when the `parallel` feature is enabled and runs
    /// sequentially otherwise.
    #[default]
    Parallel,
}

/// `f(0), ..., f(count - 1)` in order.
pub fn map_replications<T, F>(count: usize, exec: Execution, f: F) -> Vec<T>
where
    T: Send,
    F: Fn(usize) -> T + Sync + Send,
{
    match exec {
        Execution::Sequential => (0..count).map(f).collect(),
        Execution::Parallel => parallel_map(count, f),
    }
}

#[cfg(feature = "parallel")]
fn parallel_map<T: Send, F: Fn(usize) -> T + Sync + Send>(count: usize, f: F) -> Vec<T> {
    use rayon::prelude::*;
    (0..count).into_par_iter().map(f).collect()
}

#[cfg(not(feature = "parallel"))]
fn parallel_map<T: Send, F: Fn(usize) -> T + Sync + Send>(count: usize, f: F) -> Vec<T> {
    (0..count).map(f).collect()
}

/// Grows `count` independent graphs and reduces each with `summarise`.
pub fn replicate<T, S>(
    model: &ModelSpec,
    target_n: usize,
    count: usize,
    base_seed: u64,
    options: GrowOptions,
    exec: Execution,
    summarise: S,
) -> Result<Vec<T>>
where
    T: Send,
    S: Fn(&GrowingGraph) -> T + Sync + Send,
{
    map_replications(count, exec, |j| {
        let mut rng = rng_for(base_seed, j as u64);
        grow_with(model, target_n, &mut rng, options).map(|g| summarise(&g))
    })
    .into_iter()
    .collect()
}

/// Degree counts pooled over replications.
pub fn pooled_degree_counts(
    model: &ModelSpec,
    target_n: usize,
    count: usize,
    base_seed: u64,
    options: GrowOptions,
    exec: Execution,
) -> Result<DegreeCounts> {
    let parts = replicate(
        model,
        target_n,
        count,
        base_seed,
        options,
        exec,
        DegreeCounts::from_graph,
    )?;
    let mut total = DegreeCounts::default();
    for p in &parts {
        total.merge(p);
    }
    Ok(total)
}

/// Arc endpoint counts over `l, k <= window` pooled over replications.
pub fn pooled_arc_counts(
    model: &ModelSpec,
    target_n: usize,
    count: usize,
    base_seed: u64,
    window: u32,
    options: GrowOptions,
    exec: Execution,
) -> Result<ArcCounts> {
    let parts = replicate(model, target_n, count, base_seed, options, exec, |g| {
        ArcCounts::from_graph(g, window)
    })?;
    let mut iter = parts.into_iter();
    let mut total = iter.next().unwrap_or_else(|| ArcCounts::empty(window));
    for p in iter {
        total.merge(&p);
    }
    Ok(total)
}
