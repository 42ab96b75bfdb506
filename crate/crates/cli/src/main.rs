//! `prefattach`: exact distributions, simulation and calibration of
//! preferential-attachment graphs.

// `!(x > 0.0)` also rejects NaN.
#![allow(clippy::neg_cmp_op_on_partial_ord)]

mod input;

use std::fs::File;
use std::io::{self, BufWriter, Write};
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::error::{ContextKind, ContextValue, ErrorKind};
use clap::{Args, Parser, Subcommand, ValueEnum};
use prefattach::calibration::{
    calibrate, validate, CalibrateOptions, ValidateOptions, DEFAULT_K_HEAD,
};
use prefattach::exact::{exact_vdd, vdd_const, vdd_l, vdd_p, DEFAULT_KMAX};
use prefattach::generator::GrowOptions;
use prefattach::joint::{edge_from_arc, joint_general, joint_l, joint_p, DEFAULT_KMAX_JOINT};
use prefattach::meanfield::{
    alpha_to_s, classify, meanfield_cdf, meanfield_vdd, s_to_alpha, AsymptoticClass,
};
use prefattach::replicate::{pooled_arc_counts, pooled_degree_counts, Execution};
use prefattach::{
    l_to_p, p_to_l, AttachmentRule, DegreeDistribution, Error, IncrementSpec,
    JointDegreeDistribution, LinearEquivalent, ModelSpec, PennockEquivalent, SeedPolicy,
    WeightFunction,
};

/// Largest |ΔQ| accepted by `equivalence-check`.
const EQUIVALENCE_TOL: f64 = 1e-12;

/// Joint histogram window of `generate` when `--kmax-joint` is absent.
const DEFAULT_GENERATE_WINDOW: u32 = 100;

#[derive(Debug)]
pub enum CliError {
    /// Bad flag value or combination; exit code 2.
    Usage {
        flag: String,
        message: String,
    },
    /// Failure reading or parsing an input file.
    File {
        path: PathBuf,
        source: Error,
    },
    Core(Error),
    /// `equivalence-check` found a difference above tolerance.
    Check(String),
}

impl CliError {
    pub fn usage(flag: &str, message: impl Into<String>) -> Self {
        CliError::Usage {
            flag: flag.to_string(),
            message: message.into(),
        }
    }

    pub fn file(path: &Path, source: Error) -> Self {
        CliError::File {
            path: path.to_path_buf(),
            source,
        }
    }

    fn exit_code(&self) -> u8 {
        match self {
            CliError::Usage { .. } => 2,
            _ => 1,
        }
    }

    fn to_json(&self) -> serde_json::Value {
        match self {
            CliError::Usage { flag, message } => {
                serde_json::json!({ "error": "usage", "flag": flag, "message": message })
            }
            CliError::File { path, source } => serde_json::json!({
                "error": source.code(),
                "file": path.display().to_string(),
                "message": source.to_string(),
            }),
            CliError::Core(e) => serde_json::json!({ "error": e.code(), "message": e.to_string() }),
            CliError::Check(message) => {
                serde_json::json!({ "error": "check_failed", "message": message })
            }
        }
    }
}

impl From<Error> for CliError {
    fn from(e: Error) -> Self {
        CliError::Core(e)
    }
}

impl From<io::Error> for CliError {
    fn from(e: io::Error) -> Self {
        CliError::Core(Error::Io(e))
    }
}

type CliResult<T = ()> = Result<T, CliError>;

#[derive(Parser, Debug)]
#[command(
    name = "prefattach",
    version,
    about = "Preferential-attachment graphs: exact degree distributions, simulation and calibration"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Exact vertex-degree distribution as `k,Q` CSV.
    ExactVdd {
        #[command(flatten)]
        model: ModelArgs,
        #[arg(long, default_value_t = DEFAULT_KMAX)]
        kmax: u32,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Exact arc or edge endpoint-degree distribution as `l,k,value` CSV.
    ExactJoint {
        #[command(flatten)]
        model: ModelArgs,
        #[arg(long = "kmax-joint", default_value_t = DEFAULT_KMAX_JOINT)]
        kmax_joint: u32,
        /// Window of the single-degree distribution used for general weights.
        #[arg(long, default_value_t = DEFAULT_KMAX)]
        kmax: u32,
        #[arg(long, value_enum, default_value_t = KindArg::Arc)]
        kind: KindArg,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Grow graphs and write the pooled degree histogram as `k,Q` CSV.
    Generate {
        #[command(flatten)]
        model: ModelArgs,
        #[arg(long)]
        n: usize,
        #[arg(long)]
        seed: u64,
        #[arg(long, default_value_t = 1)]
        replications: usize,
        #[arg(long = "distinct-targets")]
        distinct_targets: bool,
        #[arg(long)]
        out: Option<PathBuf>,
        /// Also write the edge list of replication 0.
        #[arg(long = "edge-list")]
        edge_list: Option<PathBuf>,
        /// Also write the pooled endpoint-degree histogram.
        #[arg(long)]
        joint: Option<PathBuf>,
        #[arg(long, value_enum, default_value_t = KindArg::Arc)]
        kind: KindArg,
        /// Window of the endpoint-degree histogram [default: 100].
        #[arg(long = "kmax-joint")]
        kmax_joint: Option<u32>,
    },
    /// Tail exponent, displacement and mean-field curves.
    Asymptotics {
        #[command(flatten)]
        model: ModelArgs,
        /// Convert a tail exponent to the displacement `s` for mean increment `--m`.
        #[arg(long, conflicts_with_all = ["model", "s", "a", "weights_file", "model_file"])]
        alpha: Option<f64>,
        /// Last degree of the mean-field CSV written to `--out`.
        #[arg(long, default_value_t = 1000)]
        kmax: u32,
        /// Mean-field `k,Q,F` CSV for linear weights.
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Compare P(m, a) with its L-graph twin, entry by entry.
    EquivalenceCheck {
        #[arg(long)]
        m: f64,
        #[arg(long, required_unless_present = "s", conflicts_with = "s")]
        a: Option<f64>,
        #[arg(long)]
        s: Option<f64>,
        #[arg(long, default_value_t = DEFAULT_KMAX)]
        kmax: u32,
        #[arg(long = "kmax-joint", default_value_t = DEFAULT_KMAX_JOINT)]
        kmax_joint: u32,
    },
    /// Fit a tabulated model to a degree histogram; writes a JSON model document.
    Calibrate {
        /// File of `k n_k` lines.
        #[arg(long)]
        degrees: PathBuf,
        /// Number of edges; sets m = E / N.
        #[arg(long, conflicts_with = "m")]
        edges: Option<u64>,
        #[arg(long)]
        m: Option<f64>,
        #[arg(long = "k-head", default_value_t = DEFAULT_K_HEAD)]
        k_head: u32,
        #[arg(long = "fit-range")]
        fit_range: Option<String>,
        #[arg(long = "increment-dist")]
        increment_dist: Option<String>,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Compare a model with a degree histogram and with its own simulation.
    Validate {
        #[command(flatten)]
        model: ModelArgs,
        /// Reference histogram of `k n_k` lines.
        #[arg(long)]
        degrees: PathBuf,
        /// Vertices per simulated graph; 0 skips simulation.
        #[arg(long, default_value_t = 0)]
        n: usize,
        #[arg(long)]
        seed: Option<u64>,
        #[arg(long, default_value_t = 1)]
        replications: usize,
        #[arg(long, default_value_t = DEFAULT_KMAX)]
        kmax: u32,
        /// Degrees below this enter the chi-square test.
        #[arg(long = "k-head", default_value_t = DEFAULT_K_HEAD)]
        k_head: u32,
        /// Tail range of the slope comparison [default: k_head:1000].
        #[arg(long = "fit-range")]
        fit_range: Option<String>,
        #[arg(long = "distinct-targets")]
        distinct_targets: bool,
        /// `k,exact,reference,simulated` CSV.
        #[arg(long)]
        out: Option<PathBuf>,
    },
}

#[derive(ValueEnum, Clone, Copy, Debug, PartialEq)]
enum ModelKind {
    #[value(name = "L", alias = "l")]
    L,
    #[value(name = "P", alias = "p")]
    P,
    #[value(name = "const")]
    Const,
    #[value(name = "general")]
    General,
}

#[derive(ValueEnum, Clone, Copy, Debug)]
enum KindArg {
    Arc,
    Edge,
}

#[derive(Args, Debug)]
struct ModelArgs {
    #[arg(long, value_enum, conflicts_with = "model_file")]
    model: Option<ModelKind>,
    /// Arcs per new vertex; with `--increment-dist` it must equal the mean.
    #[arg(long)]
    m: Option<f64>,
    /// Displacement of `f(k) = k + s` [default: 0].
    #[arg(long, allow_negative_numbers = true)]
    s: Option<f64>,
    /// Uniform-attachment probability of the P model.
    #[arg(long)]
    a: Option<f64>,
    /// File of `x p` lines, or inline `x:p,x:p,...`.
    #[arg(long = "increment-dist")]
    increment_dist: Option<String>,
    /// Lines `k f(k)` for consecutive degrees and `tail s`.
    #[arg(long = "weights-file")]
    weights_file: Option<PathBuf>,
    /// JSON model document, e.g. the output of `calibrate`.
    #[arg(long = "model-file")]
    model_file: Option<PathBuf>,
}

impl ModelArgs {
    fn kind(&self) -> CliResult<ModelKind> {
        self.model.ok_or_else(|| {
            CliError::usage("--model", "a model is required (--model or --model-file)")
        })
    }

    fn reject(&self, flag: &str, present: bool, kind: ModelKind) -> CliResult {
        if present {
            return Err(CliError::usage(
                flag,
                format!("{flag} does not apply to --model {}", kind_name(kind)),
            ));
        }
        Ok(())
    }

    fn increment(&self) -> CliResult<IncrementSpec> {
        match (&self.increment_dist, self.m) {
            (Some(spec), m) => {
                let r = input::increment_dist(spec)?;
                if let Some(m) = m {
                    if (m - r.mean()).abs() > 1e-9 {
                        return Err(CliError::usage(
                            "--m",
                            format!("--m {m} differs from the increment mean {}", r.mean()),
                        ));
                    }
                }
                Ok(IncrementSpec::Stochastic(r))
            }
            (None, Some(m)) => Ok(IncrementSpec::fixed(input::whole_m(m)?)?),
            (None, None) => Err(CliError::usage("--m", "give --m or --increment-dist")),
        }
    }

    fn build(&self) -> CliResult<ModelSpec> {
        if let Some(path) = &self.model_file {
            for (flag, present) in [
                ("--m", self.m.is_some()),
                ("--s", self.s.is_some()),
                ("--a", self.a.is_some()),
                ("--increment-dist", self.increment_dist.is_some()),
                ("--weights-file", self.weights_file.is_some()),
            ] {
                if present {
                    return Err(CliError::usage(
                        flag,
                        format!("{flag} conflicts with --model-file"),
                    ));
                }
            }
            return input::model_file(path);
        }
        let kind = self.kind()?;
        let increment = self.increment()?;
        let rule = match kind {
            ModelKind::L => {
                self.reject("--a", self.a.is_some(), kind)?;
                self.reject("--weights-file", self.weights_file.is_some(), kind)?;
                AttachmentRule::Linear(WeightFunction::linear(self.s.unwrap_or(0.0))?)
            }
            ModelKind::P => {
                self.reject("--s", self.s.is_some(), kind)?;
                self.reject("--weights-file", self.weights_file.is_some(), kind)?;
                self.reject("--increment-dist", self.increment_dist.is_some(), kind)?;
                let a = self
                    .a
                    .ok_or_else(|| CliError::usage("--a", "--model P needs --a"))?;
                AttachmentRule::Hybrid { a }
            }
            ModelKind::Const => {
                self.reject("--s", self.s.is_some(), kind)?;
                self.reject("--a", self.a.is_some(), kind)?;
                self.reject("--weights-file", self.weights_file.is_some(), kind)?;
                AttachmentRule::Linear(WeightFunction::Constant)
            }
            ModelKind::General => {
                self.reject("--s", self.s.is_some(), kind)?;
                self.reject("--a", self.a.is_some(), kind)?;
                let path = self.weights_file.as_ref().ok_or_else(|| {
                    CliError::usage("--weights-file", "--model general needs --weights-file")
                })?;
                AttachmentRule::General(input::weights_file(path)?)
            }
        };
        Ok(ModelSpec::new(rule, increment, SeedPolicy::Auto)?)
    }
}

fn kind_name(kind: ModelKind) -> &'static str {
    match kind {
        ModelKind::L => "L",
        ModelKind::P => "P",
        ModelKind::Const => "const",
        ModelKind::General => "general",
    }
}

/// Writes to `path`, or to stdout when absent.
fn emit(path: Option<&Path>, write: impl FnOnce(&mut dyn Write) -> io::Result<()>) -> CliResult {
    match path {
        Some(p) => {
            let file = File::create(p).map_err(|e| CliError::file(p, Error::Io(e)))?;
            let mut w = BufWriter::new(file);
            write(&mut w)?;
            w.flush()?;
        }
        None => {
            let mut w = BufWriter::new(io::stdout().lock());
            write(&mut w)?;
            w.flush()?;
        }
    }
    Ok(())
}

fn fixed_m(model: &ModelSpec) -> CliResult<u32> {
    match model.increment {
        IncrementSpec::Fixed { m } => Ok(m),
        IncrementSpec::Stochastic(_) => Err(CliError::usage(
            "--increment-dist",
            "joint distributions need a fixed increment",
        )),
    }
}

fn exact_joint(
    model: &ModelSpec,
    kmax_joint: u32,
    kmax: u32,
) -> CliResult<JointDegreeDistribution> {
    let m = fixed_m(model)?;
    let q = match &model.rule {
        AttachmentRule::Hybrid { a } => joint_p(m, *a, kmax_joint)?,
        AttachmentRule::Linear(WeightFunction::Linear { s }) => joint_l(m, *s, kmax_joint)?,
        AttachmentRule::Linear(f) | AttachmentRule::General(f) => {
            let w = exact_vdd(model, kmax.max(kmax_joint))?
                .mean_weight()
                .expect("exact distributions carry their mean weight");
            joint_general(f, m, w, kmax_joint)?
        }
    };
    Ok(q)
}

fn with_kind(q: JointDegreeDistribution, kind: KindArg) -> CliResult<JointDegreeDistribution> {
    Ok(match kind {
        KindArg::Arc => q,
        KindArg::Edge => edge_from_arc(&q)?,
    })
}

fn print_pairs(pairs: &[(&str, String)]) -> CliResult {
    emit(None, |w| {
        for (k, v) in pairs {
            writeln!(w, "{k} = {v}")?;
        }
        Ok(())
    })
}

fn max_abs_diff(p: &DegreeDistribution, q: &DegreeDistribution) -> f64 {
    let lo = p.k_min().min(q.k_min());
    let hi = p.k_max().max(q.k_max());
    (lo..=hi)
        .map(|k| (p.get(k) - q.get(k)).abs())
        .fold(0.0, f64::max)
}

fn asymptotics(model: &ModelArgs, alpha: Option<f64>, kmax: u32, out: Option<&Path>) -> CliResult {
    if let Some(alpha) = alpha {
        let m = model
            .m
            .ok_or_else(|| CliError::usage("--m", "--alpha needs --m"))?;
        let s = alpha_to_s(alpha, m)?;
        return print_pairs(&[
            ("alpha", format!("{alpha:?}")),
            ("m", format!("{m:?}")),
            ("s", format!("{s:?}")),
        ]);
    }
    // Fixed linear and P classes accept a non-integer mean increment.
    let plain = model.model_file.is_none() && model.increment_dist.is_none();
    let (m, class, s) = match (model.model, model.m) {
        (Some(ModelKind::L), Some(m)) if plain => {
            model.reject("--a", model.a.is_some(), ModelKind::L)?;
            let s = model.s.unwrap_or(0.0);
            (
                m,
                AsymptoticClass::PowerLaw {
                    alpha: s_to_alpha(s, m)?,
                },
                Some(s),
            )
        }
        (Some(ModelKind::P), Some(m)) if plain => {
            model.reject("--s", model.s.is_some(), ModelKind::P)?;
            let a = model
                .a
                .ok_or_else(|| CliError::usage("--a", "--model P needs --a"))?;
            match p_to_l(m, a)? {
                LinearEquivalent::Displacement(s) => (
                    m,
                    AsymptoticClass::PowerLaw {
                        alpha: s_to_alpha(s, m)?,
                    },
                    Some(s),
                ),
                LinearEquivalent::Constant => (m, AsymptoticClass::Exponential, None),
            }
        }
        _ => {
            let spec = model.build()?;
            (
                spec.m(),
                classify(&spec),
                spec.weight_function().tail_displacement(),
            )
        }
    };
    let mut pairs = vec![("m", format!("{m:?}"))];
    match class {
        AsymptoticClass::PowerLaw { alpha } => {
            pairs.push(("class", "power-law".into()));
            pairs.push(("alpha", format!("{alpha:?}")));
        }
        AsymptoticClass::Exponential => pairs.push(("class", "exponential".into())),
    }
    if let Some(s) = s {
        pairs.push(("s", format!("{s:?}")));
        if let PennockEquivalent::Probability(a) = l_to_p(m, s)? {
            pairs.push(("pennock_a", format!("{a:?}")));
        }
    }
    print_pairs(&pairs)?;
    if let Some(path) = out {
        let s =
            s.ok_or_else(|| CliError::usage("--out", "mean-field curves need a linear tail"))?;
        let k0 = m.ceil() as u32;
        let mut rows = Vec::new();
        for k in k0..=kmax {
            let k = f64::from(k);
            rows.push((k, meanfield_vdd(m, s, k)?, meanfield_cdf(m, s, k)?));
        }
        emit(Some(path), |w| {
            writeln!(w, "k,Q,F")?;
            for (k, q, f) in rows {
                writeln!(w, "{k},{q:?},{f:?}")?;
            }
            Ok(())
        })?;
    }
    Ok(())
}

fn equivalence_check(
    m: f64,
    a: Option<f64>,
    s: Option<f64>,
    kmax: u32,
    kmax_joint: u32,
) -> CliResult {
    let m_int = input::whole_m(m)?;
    let a = match (a, s) {
        (Some(a), _) => a,
        (None, Some(s)) => match l_to_p(m, s)? {
            PennockEquivalent::Probability(a) => a,
            PennockEquivalent::NoPennockGraph => {
                return Err(CliError::usage(
                    "--s",
                    format!("s = {s} < 0 has no Pennock twin"),
                ))
            }
        },
        (None, None) => return Err(CliError::usage("--a", "give --a or --s")),
    };
    let p = vdd_p(m_int, a, kmax)?;
    let pj = joint_p(m_int, a, kmax_joint)?;
    let (twin, l, lj) = match p_to_l(m, a)? {
        LinearEquivalent::Displacement(s) => (
            format!("{s:?}"),
            vdd_l(m_int, s, kmax)?,
            joint_l(m_int, s, kmax_joint)?,
        ),
        LinearEquivalent::Constant => (
            "const".to_string(),
            vdd_const(m_int, kmax)?,
            joint_general(&WeightFunction::Constant, m_int, 1.0, kmax_joint)?,
        ),
    };
    let dv = max_abs_diff(&p, &l);
    let dj = pj.sup_distance(&lj, kmax_joint);
    let ok = dv < EQUIVALENCE_TOL && dj < EQUIVALENCE_TOL;
    print_pairs(&[
        ("m", m_int.to_string()),
        ("a", format!("{a:?}")),
        ("s", twin),
        ("kmax", kmax.to_string()),
        ("max_abs_diff_vdd", format!("{dv:?}")),
        ("kmax_joint", kmax_joint.to_string()),
        ("max_abs_diff_joint", format!("{dj:?}")),
        ("tolerance", format!("{EQUIVALENCE_TOL:?}")),
        ("status", if ok { "ok" } else { "mismatch" }.into()),
    ])?;
    if !ok {
        return Err(CliError::Check(format!(
            "P({m_int}, {a}) and its L twin differ by {} > {EQUIVALENCE_TOL:e}",
            dv.max(dj)
        )));
    }
    Ok(())
}

fn run(cli: Cli) -> CliResult {
    match cli.command {
        Command::ExactVdd { model, kmax, out } => {
            let d = exact_vdd(&model.build()?, kmax)?;
            emit(out.as_deref(), |w| d.write_csv(w))
        }
        Command::ExactJoint {
            model,
            kmax_joint,
            kmax,
            kind,
            out,
        } => {
            let q = with_kind(exact_joint(&model.build()?, kmax_joint, kmax)?, kind)?;
            emit(out.as_deref(), |w| q.write_csv(w))
        }
        Command::Generate {
            model,
            n,
            seed,
            replications,
            distinct_targets,
            out,
            edge_list,
            joint,
            kind,
            kmax_joint,
        } => {
            let spec = model.build()?;
            if replications == 0 {
                return Err(CliError::usage(
                    "--replications",
                    "need at least one replication",
                ));
            }
            let opts = GrowOptions { distinct_targets };
            let counts =
                pooled_degree_counts(&spec, n, replications, seed, opts, Execution::Parallel)?;
            emit(out.as_deref(), |w| counts.to_distribution().write_csv(w))?;
            if let Some(path) = edge_list {
                let g = prefattach::generator::grow_with(
                    &spec,
                    n,
                    &mut prefattach::generator::rng_for(seed, 0),
                    opts,
                )?;
                emit(Some(&path), |w| g.write_edge_list(w))?;
            }
            if let Some(path) = joint {
                let window = kmax_joint.unwrap_or(DEFAULT_GENERATE_WINDOW);
                let arcs = pooled_arc_counts(
                    &spec,
                    n,
                    replications,
                    seed,
                    window,
                    opts,
                    Execution::Parallel,
                )?;
                let q = with_kind(arcs.to_distribution(), kind)?;
                emit(Some(&path), |w| q.write_csv(w))?;
            }
            Ok(())
        }
        Command::Asymptotics {
            model,
            alpha,
            kmax,
            out,
        } => asymptotics(&model, alpha, kmax, out.as_deref()),
        Command::EquivalenceCheck {
            m,
            a,
            s,
            kmax,
            kmax_joint,
        } => equivalence_check(m, a, s, kmax, kmax_joint),
        Command::Calibrate {
            degrees,
            edges,
            m,
            k_head,
            fit_range,
            increment_dist,
            out,
        } => {
            let opts = CalibrateOptions {
                m,
                k_head,
                fit_range: fit_range
                    .as_deref()
                    .map(|r| input::range("--fit-range", r))
                    .transpose()?,
                r: increment_dist
                    .as_deref()
                    .map(input::increment_dist)
                    .transpose()?,
            };
            let mut emp = input::degree_file(&degrees)?;
            if let Some(e) = edges {
                emp = emp.with_edges(e);
            }
            let fitted = calibrate(&emp, &opts)?;
            let doc = serde_json::to_string_pretty(&fitted).map_err(Error::Json)?;
            emit(out.as_deref(), |w| writeln!(w, "{doc}"))
        }
        Command::Validate {
            model,
            degrees,
            n,
            seed,
            replications,
            kmax,
            k_head,
            fit_range,
            distinct_targets,
            out,
        } => {
            if distinct_targets {
                return Err(CliError::usage(
                    "--distinct-targets",
                    "validation compares against the multigraph rule",
                ));
            }
            let seed = match (n, seed) {
                (0, s) => s.unwrap_or(0),
                (_, Some(s)) => s,
                (_, None) => {
                    return Err(CliError::usage(
                        "--seed",
                        "simulation (--n > 0) needs --seed",
                    ))
                }
            };
            if k_head < 2 {
                return Err(CliError::usage("--k-head", "need k_head >= 2"));
            }
            let tail_range = match fit_range {
                Some(r) => input::range("--fit-range", &r)?,
                None => (k_head, 1000.max(k_head + 1)),
            };
            let spec = model.build()?;
            let reference = input::degree_file(&degrees)?.to_distribution();
            let opts = ValidateOptions {
                n_sim: n,
                replications,
                seed,
                k_max: kmax,
                head_max: k_head - 1,
                tail_range,
            };
            let report = validate(&spec, &reference, &opts)?;
            let doc = serde_json::to_string_pretty(&report).map_err(Error::Json)?;
            emit(None, |w| writeln!(w, "{doc}"))?;
            if let Some(path) = out {
                emit(Some(&path), |w| report.write_curves(w))?;
            }
            Ok(())
        }
    }
}

fn clap_failure(e: &clap::Error) -> CliError {
    let flag = match e.get(ContextKind::InvalidArg) {
        Some(ContextValue::String(s)) => s.split_whitespace().next().unwrap_or("").to_string(),
        Some(ContextValue::Strings(v)) => v
            .iter()
            .filter_map(|s| s.split_whitespace().next())
            .collect::<Vec<_>>()
            .join(","),
        _ => String::new(),
    };
    let rendered = e.to_string();
    let message = rendered
        .lines()
        .take_while(|l| !l.trim().is_empty())
        .map(str::trim)
        .collect::<Vec<_>>()
        .join(" ")
        .trim_start_matches("error: ")
        .to_string();
    CliError::Usage { flag, message }
}

fn fail(e: &CliError) -> ExitCode {
    eprintln!("{}", e.to_json());
    ExitCode::from(e.exit_code())
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) if matches!(e.kind(), ErrorKind::DisplayHelp | ErrorKind::DisplayVersion) => {
            let _ = e.print();
            return ExitCode::SUCCESS;
        }
        Err(e) if e.kind() == ErrorKind::DisplayHelpOnMissingArgumentOrSubcommand => {
            let _ = e.print();
            return ExitCode::from(2);
        }
        Err(e) => return fail(&clap_failure(&e)),
    };
    match run(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => fail(&e),
    }
}
