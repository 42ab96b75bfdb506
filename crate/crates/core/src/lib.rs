//! Growing random graphs with preferential attachment.
//!
//! The crate covers linear-weight (L) graphs, hybrid Pennock (P) graphs and
//! graphs with arbitrary weight functions and stochastic increments:
//!
//! * [`exact`] and [`joint`] compute the stationary vertex-degree and
//!   arc/edge endpoint-degree distributions by their balance recurrences,
//! * [`meanfield`] holds the continuum approximation and the asymptotic
//!   classification,
//! * [`generator`] grows graphs by simulation,
//! * [`calibration`] fits a model to an empirical degree histogram.
//!
//! ```
//! use prefattach::exact::vdd_l;
//! use prefattach::generator::degree_histogram;
//! use prefattach::stats::tv_distance;
//! use prefattach::{generator, ModelSpec};
//!
//! let exact = vdd_l(2, 0.0, 1000).unwrap();
//! assert_eq!(exact.get(2), 0.5);
//!
//! let g = generator::grow(&ModelSpec::linear(2, 0.0).unwrap(), 20_000, 7).unwrap();
//! assert!(tv_distance(&degree_histogram(&g), &exact) < 0.03);
//! ```

// `!(x > 0.0)` also rejects NaN.
#![allow(clippy::neg_cmp_op_on_partial_ord)]

pub mod calibration;
pub mod error;
pub mod exact;
pub mod generator;
pub mod joint;
pub mod meanfield;
pub mod model;
pub mod replicate;
pub mod sampler;
pub mod special;
pub mod stats;

pub use error::{Error, Result};
pub use exact::DegreeDistribution;
pub use joint::{JointDegreeDistribution, JointKind};
pub use model::{
    attachment_probabilities, eval_weight, l_to_p, p_to_l, AttachmentRule, IncrementDist,
    IncrementSpec, LinearEquivalent, ModelSpec, PennockEquivalent, SeedPolicy, WeightFunction,
};
