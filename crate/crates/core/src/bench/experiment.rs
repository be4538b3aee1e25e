//! Convergence experiments over the corpus and their CSV output.
//!
//! Config files hold one `key = value` per line:
//!
//! ```text
//! # Figure 1, left panel
//! fn = F1a
//! methods = cc,gl,r1,r2
//! n = 16..2048 x2
//! out = fig1a.csv
//! ```
//!
//! `n` also accepts an explicit list such as `8, 16, 32`.

use std::fmt::Write as _;
use std::io::Write;
use std::path::{Path, PathBuf};
use std::str::FromStr;

use super::corpus::{self, CorpusFunction};
use super::oracle;
use crate::accel;
use crate::engine::{self, SampleCache};
use crate::exec::Execution;
use crate::rules;
use crate::singular::exponent_ladder;
use crate::transform;
use crate::{Error, Result};

pub const CSV_HEADER: &str = "n,method,approx,abs_error,evals";

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Method {
    Cc,
    Gl,
    /// One Richardson level on top of Clenshaw-Curtis.
    R1,
    R2,
}

impl Method {
    pub const ALL: [Method; 4] = [Method::Cc, Method::Gl, Method::R1, Method::R2];

    pub fn name(self) -> &'static str {
        match self {
            Method::Cc => "cc",
            Method::Gl => "gl",
            Method::R1 => "r1",
            Method::R2 => "r2",
        }
    }

    /// Richardson levels, or `None` for the plain rules.
    pub fn levels(self) -> Option<usize> {
        match self {
            Method::R1 => Some(1),
            Method::R2 => Some(2),
            _ => None,
        }
    }
}

impl FromStr for Method {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Method::ALL
            .into_iter()
            .find(|m| m.name().eq_ignore_ascii_case(s.trim()))
            .ok_or_else(|| {
                Error::Config(format!("unknown method `{s}` (expected cc, gl, r1 or r2)"))
            })
    }
}

/// Parses `a..b xK` (geometric, `K >= 2`, default 2) or a comma list.
pub fn parse_n_values(s: &str) -> Result<Vec<usize>> {
    let s = s.trim();
    let bad = || Error::Config(format!("cannot parse n values `{s}`"));
    if let Some((lo, rest)) = s.split_once("..") {
        let (hi, factor) = match rest.split_once('x') {
            Some((hi, f)) => (hi, f.trim().parse::<usize>().map_err(|_| bad())?),
            None => (rest, 2),
        };
        let lo: usize = lo.trim().parse().map_err(|_| bad())?;
        let hi: usize = hi.trim().parse().map_err(|_| bad())?;
        if lo == 0 || factor < 2 || lo > hi {
            return Err(bad());
        }
        let mut out = Vec::new();
        let mut n = lo;
        while n <= hi {
            out.push(n);
            n = n.checked_mul(factor).ok_or_else(bad)?;
        }
        return Ok(out);
    }
    if s.is_empty() {
        return Ok(Vec::new());
    }
    s.split(',')
        .map(|t| t.trim().parse::<usize>().map_err(|_| bad()))
        .collect()
}

fn parse_methods(s: &str) -> Result<Vec<Method>> {
    s.split(',')
        .filter(|t| !t.trim().is_empty())
        .map(str::parse)
        .collect()
}

/// Config fields that may or may not have been given. Used to merge a config
/// file with command-line flags.
#[derive(Debug, Clone, Default, PartialEq)]
pub struct PartialConfig {
    pub function_id: Option<String>,
    pub methods: Option<Vec<Method>>,
    pub n_values: Option<Vec<usize>>,
    pub output_path: Option<PathBuf>,
}

impl PartialConfig {
    pub fn parse(text: &str) -> Result<Self> {
        let mut cfg = Self::default();
        for (i, raw) in text.lines().enumerate() {
            let line = raw.split('#').next().unwrap_or("").trim();
            if line.is_empty() {
                continue;
            }
            let (key, value) = line
                .split_once('=')
                .ok_or_else(|| Error::Config(format!("line {}: expected `key = value`", i + 1)))?;
            let value = value.trim();
            match key.trim() {
                "fn" => cfg.function_id = Some(value.to_owned()),
                "methods" => cfg.methods = Some(parse_methods(value)?),
                "n" => cfg.n_values = Some(parse_n_values(value)?),
                "out" => cfg.output_path = Some(PathBuf::from(value)),
                other => {
                    return Err(Error::Config(format!(
                        "line {}: unknown key `{other}`",
                        i + 1
                    )))
                }
            }
        }
        Ok(cfg)
    }

    pub fn from_file(path: &Path) -> Result<Self> {
        let text = std::fs::read_to_string(path)
            .map_err(|e| Error::Io(format!("{}: {e}", path.display())))?;
        Self::parse(&text)
    }

    /// Fields set in `other` replace those in `self`.
    pub fn overridden_by(self, other: PartialConfig) -> Self {
        Self {
            function_id: other.function_id.or(self.function_id),
            methods: other.methods.or(self.methods),
            n_values: other.n_values.or(self.n_values),
            output_path: other.output_path.or(self.output_path),
        }
    }

    pub fn build(self) -> Result<ExperimentConfig> {
        let function_id = self
            .function_id
            .ok_or_else(|| Error::Config("missing function id (`fn`)".into()))?;
        let n_values = self
            .n_values
            .ok_or_else(|| Error::Config("missing n values (`n`)".into()))?;
        let methods = self.methods.unwrap_or_else(|| vec![Method::Cc]);
        let cfg = ExperimentConfig {
            function_id,
            methods,
            n_values,
            output_path: self.output_path,
        };
        cfg.validate()?;
        Ok(cfg)
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct ExperimentConfig {
    pub function_id: String,
    pub methods: Vec<Method>,
    pub n_values: Vec<usize>,
    pub output_path: Option<PathBuf>,
}

impl ExperimentConfig {
    pub fn new(function_id: &str, methods: &[Method], n_values: &[usize]) -> Result<Self> {
        let cfg = Self {
            function_id: function_id.to_owned(),
            methods: methods.to_vec(),
            n_values: n_values.to_vec(),
            output_path: None,
        };
        cfg.validate()?;
        Ok(cfg)
    }

    pub fn validate(&self) -> Result<()> {
        if self.n_values.first() == Some(&0) {
            return Err(Error::Config("n values must be positive".into()));
        }
        if self.n_values.windows(2).any(|w| w[0] >= w[1]) {
            return Err(Error::Config("n values must be strictly increasing".into()));
        }
        let mut seen = self.methods.clone();
        seen.sort();
        if seen.windows(2).any(|w| w[0] == w[1]) {
            return Err(Error::Config("methods must not repeat".into()));
        }
        if self.methods.iter().any(|m| m.levels().is_some()) {
            if let Some(&n) = self
                .n_values
                .iter()
                .find(|&&n| n % 2 != 0 || transform::supported_size(n).is_none())
            {
                return Err(Error::Config(format!(
                    "extrapolation base size {n} must be even and of the form m * 2^k, m in {{1, 3, 5}}"
                )));
            }
        }
        Ok(())
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct ConvergenceRecord {
    pub n: usize,
    pub method: Method,
    pub approx: f64,
    pub abs_error: f64,
    /// New integrand evaluations charged to this row. Each method shares one
    /// sample cache along its series, so for a doubling series the column
    /// sums to the cost of the largest rule.
    pub evals: usize,
    pub reference: f64,
}

#[derive(Debug, Clone, PartialEq)]
pub struct MethodFailure {
    pub method: Method,
    pub n: usize,
    pub error: Error,
}

#[derive(Debug, Clone, PartialEq, Default)]
pub struct ExperimentReport {
    pub records: Vec<ConvergenceRecord>,
    /// At most one entry per method: the first size at which it failed.
    pub failures: Vec<MethodFailure>,
}

fn run_series(
    f: &CorpusFunction,
    method: Method,
    ns: &[usize],
    reference: f64,
) -> (Vec<ConvergenceRecord>, Option<MethodFailure>) {
    let mut out = Vec::with_capacity(ns.len());
    let mut cache = SampleCache::new();
    for &n in ns {
        let mut step = || -> Result<(f64, usize)> {
            match method {
                Method::Cc => {
                    if !cache.accepts(n) {
                        cache = SampleCache::new();
                    }
                    let r = engine::integrate(&rules::cc_rule(n)?, &f.integrand, Some(&mut cache))?;
                    Ok((r.approx, r.evals_used))
                }
                Method::Gl => {
                    let r = engine::integrate(&rules::gl_rule(n)?, &f.integrand, None)?;
                    Ok((r.approx, r.evals_used))
                }
                Method::R1 | Method::R2 => {
                    let q = method.levels().unwrap_or(0);
                    let ladder = exponent_ladder(f.profile(), q.max(1))?;
                    if !cache.accepts(n << q) {
                        cache = SampleCache::new();
                    }
                    let before = cache.evals();
                    let t = accel::richardson(&f.integrand, n, q, &ladder, &mut cache)?;
                    Ok((t.accelerated(), cache.evals() - before))
                }
            }
        };
        match step() {
            Ok((approx, evals)) => out.push(ConvergenceRecord {
                n,
                method,
                approx,
                abs_error: (approx - reference).abs(),
                evals,
                reference,
            }),
            Err(error) => return (out, Some(MethodFailure { method, n, error })),
        }
    }
    (out, None)
}

/// Runs every method of `cfg` against the corpus function, isolating
/// failures per method. Records come back ordered by method, then `n`.
pub fn run_experiment_report(cfg: &ExperimentConfig) -> Result<ExperimentReport> {
    cfg.validate()?;
    let f = corpus::find(&cfg.function_id)?;
    if cfg.methods.is_empty() || cfg.n_values.is_empty() {
        return Ok(ExperimentReport::default());
    }
    let reference = f.reference_value(oracle::tolerance_from_env()?)?;
    let mut methods = cfg.methods.clone();
    methods.sort();
    let results =
        Execution::default().map_jobs(&methods, |&m| run_series(&f, m, &cfg.n_values, reference));
    let mut report = ExperimentReport::default();
    for (records, failure) in results {
        report.records.extend(records);
        report.failures.extend(failure);
    }
    Ok(report)
}

/// Like [`run_experiment_report`] but returns only the records.
pub fn run_experiment(cfg: &ExperimentConfig) -> Result<Vec<ConvergenceRecord>> {
    Ok(run_experiment_report(cfg)?.records)
}

pub fn write_csv(records: &[ConvergenceRecord], mut w: impl Write) -> Result<()> {
    w.write_all(to_csv(records).as_bytes())?;
    Ok(())
}

/// CSV text with 17 significant digits for the real columns.
pub fn to_csv(records: &[ConvergenceRecord]) -> String {
    let mut s = String::from(CSV_HEADER);
    s.push('\n');
    for r in records {
        let _ = writeln!(
            s,
            "{},{},{:.16e},{:.16e},{}",
            r.n,
            r.method.name(),
            r.approx,
            r.abs_error,
            r.evals
        );
    }
    s
}

/// Corpus functions and methods behind each convergence figure.
pub fn figure_setup(figure: u8) -> Result<(&'static [&'static str], &'static [Method])> {
    const ALL: &[Method] = &Method::ALL;
    match figure {
        1 => Ok((&["F1a", "F1b"], ALL)),
        2 => Ok((&["F2a", "F2b"], ALL)),
        3 => Ok((&["F3a", "F3b"], ALL)),
        _ => Err(Error::Config(format!(
            "unknown figure {figure} (expected 1, 2 or 3)"
        ))),
    }
}

/// Sizes used for the figure experiments.
pub const FIGURE_N: &str = "8..2048 x2";

/// Runs the experiments for `figure` and writes one CSV per function into
/// `out_dir` as `fig<k>_<id>.csv`.
pub fn reproduce_figure(figure: u8, out_dir: &Path) -> Result<Vec<PathBuf>> {
    let (ids, methods) = figure_setup(figure)?;
    let ns = parse_n_values(FIGURE_N)?;
    std::fs::create_dir_all(out_dir)
        .map_err(|e| Error::Io(format!("{}: {e}", out_dir.display())))?;
    let reports = Execution::default().map_jobs(ids, |id| {
        ExperimentConfig::new(id, methods, &ns).and_then(|cfg| run_experiment_report(&cfg))
    });
    let mut paths = Vec::new();
    let mut first_failure = None;
    for (id, report) in ids.iter().zip(reports) {
        let report = report?;
        let path = out_dir.join(format!("fig{figure}_{id}.csv"));
        let file = std::fs::File::create(&path)
            .map_err(|e| Error::Io(format!("{}: {e}", path.display())))?;
        write_csv(&report.records, std::io::BufWriter::new(file))?;
        paths.push(path);
        if first_failure.is_none() {
            first_failure = report.failures.into_iter().next();
        }
    }
    match first_failure {
        Some(f) => Err(f.error),
        None => Ok(paths),
    }
}
