//! Command-line front end.
//!
//! Exit codes: 0 on success, 1 for usage or configuration errors, 2 when the
//! numerics fail.

use std::ffi::OsString;
use std::io::Write;
use std::path::PathBuf;

use clap::{Parser, Subcommand, ValueEnum};

use super::corpus;
use super::experiment::{self, Method, PartialConfig};
use super::oracle;
use crate::accel;
use crate::engine::{self, SampleCache};
use crate::rules;
use crate::singular::{
    classify_s, exponent_ladder, predict_coeff, EndpointValues, SingularityProfile,
};
use crate::transform;
use crate::{Error, Result};

#[derive(Debug, Parser)]
#[command(
    name = "singquad",
    version,
    about = "Clenshaw-Curtis quadrature for endpoint-singular integrands"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Clone, Copy, ValueEnum)]
enum RuleArg {
    Cc,
    Gl,
}

#[derive(Debug, Clone, Copy, ValueEnum)]
enum IntegrateMethod {
    Cc,
    Gl,
    Coeffs,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Print the nodes and weights of a rule.
    Rule {
        #[arg(long, value_enum)]
        kind: RuleArg,
        #[arg(long)]
        n: usize,
        /// Clenshaw-Curtis weights from the DCT instead of the cosine sum.
        #[arg(long)]
        fast: bool,
    },
    /// Integrate a corpus function once.
    Integrate {
        #[arg(long = "fn")]
        function: String,
        #[arg(long)]
        n: usize,
        #[arg(long, value_enum, default_value = "cc")]
        method: IntegrateMethod,
    },
    /// Print the smoothness index and exponent ladder of a profile.
    Ladder {
        #[arg(long, allow_negative_numbers = true)]
        alpha: f64,
        #[arg(long, allow_negative_numbers = true)]
        beta: f64,
        /// Include a log(1-x) factor.
        #[arg(long)]
        log: bool,
        #[arg(long, default_value_t = 4)]
        count: usize,
    },
    /// Print Chebyshev coefficients next to their asymptotic prediction.
    Coeffs {
        #[arg(long = "fn")]
        function: String,
        #[arg(long)]
        n: usize,
    },
    /// Write the convergence data behind a figure as CSV.
    Reproduce {
        #[arg(long)]
        figure: u8,
        #[arg(long)]
        out: PathBuf,
    },
    /// Print the Richardson tableau.
    Extrapolate {
        #[arg(long = "fn")]
        function: String,
        #[arg(long = "base-n")]
        base_n: usize,
        #[arg(long)]
        q: usize,
    },
    /// Run an experiment from a config file and/or flags; flags win.
    Experiment {
        #[arg(long)]
        config: Option<PathBuf>,
        #[arg(long = "fn")]
        function: Option<String>,
        /// Comma-separated subset of cc,gl,r1,r2.
        #[arg(long)]
        methods: Option<String>,
        /// `a..b xK` or a comma list.
        #[arg(long)]
        n: Option<String>,
        /// CSV destination; standard output if absent.
        #[arg(long)]
        out: Option<PathBuf>,
    },
}

fn join(v: &[f64]) -> String {
    v.iter().map(f64::to_string).collect::<Vec<_>>().join(", ")
}

fn execute(cmd: Command, out: &mut dyn Write) -> Result<()> {
    match cmd {
        Command::Rule { kind, n, fast } => {
            let rule = match (kind, fast) {
                (RuleArg::Cc, true) => rules::cc_rule_fast(n)?,
                (RuleArg::Cc, false) => rules::cc_rule_direct(n)?,
                (RuleArg::Gl, _) => rules::gl_rule(n)?,
            };
            writeln!(out, "nodes: {}", join(rule.nodes()))?;
            writeln!(out, "weights: {}", join(rule.weights()))?;
        }
        Command::Integrate {
            function,
            n,
            method,
        } => {
            let f = corpus::find(&function)?;
            let r = match method {
                IntegrateMethod::Cc => engine::integrate(&rules::cc_rule(n)?, &f.integrand, None)?,
                IntegrateMethod::Gl => engine::integrate(&rules::gl_rule(n)?, &f.integrand, None)?,
                IntegrateMethod::Coeffs => {
                    engine::cc_integrate_by_coeffs(&f.integrand, n, &mut SampleCache::new())?
                }
            };
            let reference = f.reference_value(oracle::tolerance_from_env()?)?;
            writeln!(out, "approx={:.16e}", r.approx)?;
            writeln!(out, "abs_error={:.3e}", (r.approx - reference).abs())?;
            writeln!(out, "evals={}", r.evals_used)?;
        }
        Command::Ladder {
            alpha,
            beta,
            log,
            count,
        } => {
            let p = SingularityProfile::new(alpha, beta, log, EndpointValues::unit())?;
            let s = classify_s(&p)?;
            let d = exponent_ladder(&p, count)?;
            writeln!(out, "s={}; d={:?}", s.value(), d.as_slice())?;
        }
        Command::Coeffs { function, n } => {
            let f = corpus::find(&function)?;
            let mut cache = SampleCache::new();
            cache.ensure(&f.integrand, n)?;
            let a = transform::cheb_coeffs(&cache.samples(n)?)?;
            writeln!(out, "k,a_k,predicted")?;
            for (k, ak) in a.as_slice().iter().enumerate() {
                let pred = if k >= 2 {
                    format!("{:.16e}", predict_coeff(f.profile(), k as u64)?)
                } else {
                    String::new()
                };
                writeln!(out, "{k},{ak:.16e},{pred}")?;
            }
        }
        Command::Reproduce { figure, out: dir } => {
            for path in experiment::reproduce_figure(figure, &dir)? {
                writeln!(out, "wrote {}", path.display())?;
            }
        }
        Command::Extrapolate {
            function,
            base_n,
            q,
        } => {
            let f = corpus::find(&function)?;
            let ladder = exponent_ladder(f.profile(), q.max(1))?;
            let mut cache = SampleCache::new();
            let t = accel::richardson(&f.integrand, base_n, q, &ladder, &mut cache)?;
            let reference = f.reference_value(oracle::tolerance_from_env()?)?;
            writeln!(out, "d={:?}", t.exponents())?;
            for j in 0..=q {
                for (k, v) in t.row(j).iter().enumerate() {
                    writeln!(
                        out,
                        "R({j},{}) = {v:.16e}  err={:.3e}",
                        base_n << k,
                        (v - reference).abs()
                    )?;
                }
            }
            writeln!(out, "evals={}", cache.evals())?;
        }
        Command::Experiment {
            config,
            function,
            methods,
            n,
            out: path,
        } => {
            let file = match &config {
                Some(p) => PartialConfig::from_file(p)?,
                None => PartialConfig::default(),
            };
            let flags = PartialConfig {
                function_id: function,
                methods: methods
                    .map(|m| {
                        m.split(',')
                            .filter(|t| !t.trim().is_empty())
                            .map(str::parse)
                            .collect::<Result<Vec<Method>>>()
                    })
                    .transpose()?,
                n_values: n.map(|s| experiment::parse_n_values(&s)).transpose()?,
                output_path: path,
            };
            let cfg = file.overridden_by(flags).build()?;
            let report = experiment::run_experiment_report(&cfg)?;
            let csv = experiment::to_csv(&report.records);
            match &cfg.output_path {
                Some(p) => std::fs::write(p, csv)
                    .map_err(|e| Error::Io(format!("{}: {e}", p.display())))?,
                None => out.write_all(csv.as_bytes())?,
            }
            if let Some(f) = report.failures.into_iter().next() {
                return Err(f.error);
            }
        }
    }
    Ok(())
}

/// Runs the CLI on `args` (including the program name) and returns the exit
/// code.
pub fn run<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            use clap::error::ErrorKind;
            let code = match e.kind() {
                ErrorKind::DisplayHelp | ErrorKind::DisplayVersion => 0,
                _ => 1,
            };
            let text = e.render().to_string();
            let _ = if code == 0 {
                write!(out, "{text}")
            } else {
                write!(err, "{text}")
            };
            return code;
        }
    };
    match execute(cli.command, out) {
        Ok(()) => 0,
        Err(e) => {
            let _ = writeln!(err, "error: {e}");
            if e.is_configuration() {
                1
            } else {
                2
            }
        }
    }
}
