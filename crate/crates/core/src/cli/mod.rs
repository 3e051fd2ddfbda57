//! Command-line front end: configuration, the expression language and the
//! commands of the `twistforms` binary.
//!
//! Exit codes: 0 success, 1 verification failure, 2 usage or configuration
//! error, 3 degree-cap violation.

pub mod config;
pub mod parse;

use std::ffi::OsString;
use std::io::Write;
use std::path::PathBuf;
use std::sync::Arc;

use clap::{Parser, Subcommand, ValueEnum};

pub use config::Config;
pub use parse::{parse_expression, parse_form, parse_poly, parse_scalar, parse_tensor, Value};

use crate::braiding::{check_axioms, compare_braidings, AxiomLimits, Braid, ClosedBraiding, OracleBraiding, SignedFlip};
use crate::braidrep::{export, verify_braid_relations, Representation, Window};
use crate::error::{Error, Result};
use crate::omega::{check_omega, AlgebraCtx, Caps, OmegaLimits};
use crate::report::Report;

#[derive(Parser, Debug)]
#[command(name = "twistforms", version, about = "Exact twisted differential forms, braidings and braid-group representations")]
pub struct Cli {
    /// JSON algebra configuration.
    #[arg(long, global = true)]
    pub config: Option<PathBuf>,

    #[command(subcommand)]
    pub command: Command,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum BraidingKind {
    /// The closed formula.
    Closed,
    /// The recursion in form-degrees.
    Oracle,
    /// The Koszul-signed flip, which is not a braiding compatible with `d`
    /// unless α is the identity.
    Flip,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Suite {
    Omega,
    Braiding,
    Braidrep,
    All,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Json,
    Csv,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Print the normal form of an expression.
    Normalize { expr: String },
    /// Apply the differential.
    #[command(name = "d")]
    D { expr: String },
    /// Apply the homotopy operator.
    #[command(name = "I")]
    I { expr: String },
    /// Apply the endomorphism.
    Alpha { expr: String },
    /// Apply the braiding to a tensor.
    #[command(name = "R")]
    R {
        expr: String,
        /// Same as `--braiding oracle`.
        #[arg(long, conflicts_with = "braiding")]
        oracle: bool,
        #[arg(long, value_enum)]
        braiding: Option<BraidingKind>,
        /// Braid factors `at` and `at + 1` of a longer tensor.
        #[arg(long, default_value_t = 1)]
        at: usize,
    },
    /// Run invariant suites on all blocks up to the given degrees.
    Verify {
        #[arg(long, value_enum)]
        suite: Suite,
        #[arg(long)]
        max_var_degree: usize,
        #[arg(long)]
        max_form_degree: usize,
        /// Tensor arity of the braid-group representation.
        #[arg(long, default_value_t = 3)]
        arity: usize,
        #[arg(long, value_enum, default_value_t = BraidingKind::Closed)]
        braiding: BraidingKind,
        /// Also write the reports as JSON.
        #[arg(long)]
        report: Option<PathBuf>,
    },
    /// Export the generator matrices of one block.
    Repmat {
        #[arg(long)]
        arity: usize,
        #[arg(long)]
        var_degree: usize,
        #[arg(long)]
        form_degree: usize,
        /// Variable-degree window `lo:hi`.
        #[arg(long)]
        window: Option<String>,
        /// Form-degree window `lo:hi`.
        #[arg(long)]
        form_window: Option<String>,
        #[arg(long)]
        out: PathBuf,
        #[arg(long, value_enum, default_value_t = Format::Json)]
        format: Format,
        #[arg(long, value_enum, default_value_t = BraidingKind::Closed)]
        braiding: BraidingKind,
    },
}

/// Exit code for an error that ends a command.
pub fn exit_code(e: &Error) -> i32 {
    match e {
        Error::CapExceeded { .. } => 3,
        Error::SingularBlock(_) | Error::RecursionDepth(_) => 1,
        _ => 2,
    }
}

pub fn make_braid(ctx: Arc<AlgebraCtx>, kind: BraidingKind) -> Box<dyn Braid> {
    match kind {
        BraidingKind::Closed => Box::new(ClosedBraiding::new(ctx)),
        BraidingKind::Oracle => Box::new(OracleBraiding::new(ctx)),
        BraidingKind::Flip => Box::new(SignedFlip::new(ctx)),
    }
}

/// Parses arguments and runs one command, writing results to `out` and
/// diagnostics to `err`. Returns the exit code.
pub fn run<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { 2 } else { 0 };
            let _ = if code == 0 {
                write!(out, "{}", e.render())
            } else {
                write!(err, "{}", e.render())
            };
            return code;
        }
    };
    match execute(&cli, out) {
        Ok(code) => code,
        Err(e) => {
            let _ = writeln!(err, "error: {e}");
            exit_code(&e)
        }
    }
}

fn load(cli: &Cli) -> Result<Config> {
    let path = cli
        .config
        .as_ref()
        .ok_or_else(|| Error::Config("--config <path> is required".into()))?;
    Config::load(path)
}

fn io(e: std::io::Error) -> Error {
    Error::Io(e.to_string())
}

fn execute(cli: &Cli, out: &mut dyn Write) -> Result<i32> {
    let cfg = load(cli)?;
    match &cli.command {
        Command::Normalize { expr } => {
            let ctx = cfg.build()?;
            let v = parse_expression(expr, &ctx)?;
            writeln!(out, "{}", v.format(&ctx)).map_err(io)?;
        }
        Command::D { expr } => {
            let ctx = cfg.build()?;
            let s = match parse_expression(expr, &ctx)? {
                Value::Form(f) => ctx.format_form(&ctx.differential(&f)?),
                Value::Tensor(t) => ctx.format_tensor(&ctx.tensor_differential(&t)?),
            };
            writeln!(out, "{s}").map_err(io)?;
        }
        Command::I { expr } => {
            let ctx = cfg.build()?;
            let f = form_only(expr, &ctx, "I")?;
            writeln!(out, "{}", ctx.format_form(&ctx.homotopy(&f)?)).map_err(io)?;
        }
        Command::Alpha { expr } => {
            let ctx = cfg.build()?;
            let f = form_only(expr, &ctx, "alpha")?;
            writeln!(out, "{}", ctx.format_form(&ctx.alpha_form(&f)?)).map_err(io)?;
        }
        Command::R {
            expr,
            oracle,
            braiding,
            at,
        } => {
            let ctx = Arc::new(cfg.build()?);
            let kind = match (oracle, braiding) {
                (true, _) => BraidingKind::Oracle,
                (false, Some(k)) => *k,
                (false, None) => BraidingKind::Closed,
            };
            let t = parse_tensor(expr, &ctx)?;
            if *at == 0 {
                return Err(Error::PreconditionViolated("--at counts from 1".into()));
            }
            let braid = make_braid(ctx.clone(), kind);
            let r = braid.braid_at(&t, at - 1)?;
            writeln!(out, "{}", ctx.format_tensor(&r)).map_err(io)?;
        }
        Command::Verify {
            suite,
            max_var_degree,
            max_form_degree,
            arity,
            braiding,
            report,
        } => {
            let reports = verify(&cfg, *suite, *max_var_degree, *max_form_degree, *arity, *braiding)?;
            let mut failed = 0;
            for r in &reports {
                print_report(r, out).map_err(io)?;
                failed += r.failures();
            }
            if let Some(path) = report {
                let doc = serde_json::to_string_pretty(&reports).expect("reports serialize");
                std::fs::write(path, doc + "\n")?;
            }
            if failed > 0 {
                writeln!(out, "verify: {failed} failing cases").map_err(io)?;
                return Ok(1);
            }
            writeln!(out, "verify: all checks passed").map_err(io)?;
        }
        Command::Repmat {
            arity,
            var_degree,
            form_degree,
            window,
            form_window,
            out: path,
            format,
            braiding,
        } => {
            let ctx = Arc::new(cfg.build()?);
            let full = Window::full(&ctx);
            let w = Window {
                var: window.as_deref().map(parse_range).transpose()?.unwrap_or(full.var),
                form: form_window.as_deref().map(parse_range).transpose()?.unwrap_or(full.form),
            };
            let braid = make_braid(ctx.clone(), *braiding);
            let rep = Representation::new(&*braid, w, *arity, *var_degree, *form_degree)?;
            let block = rep.block(*var_degree, *form_degree)?;
            let gens = (1..*arity)
                .map(|i| Ok((format!("sigma_{i}"), rep.sigma(*var_degree, *form_degree, i)?)))
                .collect::<Result<Vec<_>>>()?;
            let text = match format {
                Format::Json => {
                    serde_json::to_string_pretty(&export::export_json(&ctx, &block, &gens)).expect("json") + "\n"
                }
                Format::Csv => export::export_csv(&ctx, &block, &gens)?,
            };
            std::fs::write(path, text)?;
            writeln!(
                out,
                "wrote {} generators on a block of dimension {} to {}",
                gens.len(),
                block.dim(),
                path.display()
            )
            .map_err(io)?;
        }
    }
    Ok(0)
}

fn form_only(expr: &str, ctx: &AlgebraCtx, op: &str) -> Result<crate::omega::Form> {
    match parse_expression(expr, ctx)? {
        Value::Form(f) => Ok(f),
        Value::Tensor(_) => Err(Error::PreconditionViolated(format!("`{op}` acts on forms, not tensors"))),
    }
}

/// `lo:hi`, both inclusive.
pub fn parse_range(s: &str) -> Result<(usize, usize)> {
    let bad = || Error::Config(format!("expected a range `lo:hi`, got `{s}`"));
    let (lo, hi) = s.split_once(':').ok_or_else(bad)?;
    let lo: usize = lo.trim().parse().map_err(|_| bad())?;
    let hi: usize = hi.trim().parse().map_err(|_| bad())?;
    if lo > hi {
        return Err(bad());
    }
    Ok((lo, hi))
}

/// Runs the requested suites. The limits must fit the configured caps; the
/// context used for checking has one extra form-degree of headroom so that
/// `d` of top-degree inputs can be evaluated.
pub fn verify(
    cfg: &Config,
    suite: Suite,
    max_var: usize,
    max_form: usize,
    arity: usize,
    braiding: BraidingKind,
) -> Result<Vec<Report>> {
    let caps = cfg.caps();
    if max_var > caps.var_degree || max_form > caps.form_degree {
        return Err(Error::CapExceeded {
            form_degree: max_form,
            var_degree: max_var,
            max_form: caps.form_degree,
            max_var: caps.var_degree,
        });
    }
    cfg.build()?;
    let ctx = Arc::new(
        cfg.build_with_caps(Caps::new(max_var, max_form + 1))
            .or_else(|_| cfg.build_with_caps(Caps::new(max_var, max_form)))?,
    );
    let run_omega = matches!(suite, Suite::Omega | Suite::All);
    let run_braiding = matches!(suite, Suite::Braiding | Suite::All);
    let run_rep = matches!(suite, Suite::Braidrep | Suite::All);
    let mut reports = Vec::new();
    if run_omega {
        reports.push(check_omega(
            &ctx,
            OmegaLimits {
                var_degree: max_var,
                form_degree: max_form,
            },
        )?);
    }
    let braid = make_braid(ctx.clone(), braiding);
    if run_braiding {
        let limits = AxiomLimits {
            var_degree: max_var,
            form_degree: max_form,
        };
        let mut r = check_axioms(&*braid, limits)?;
        let reference = make_braid(
            ctx.clone(),
            if braiding == BraidingKind::Oracle {
                BraidingKind::Closed
            } else {
                BraidingKind::Oracle
            },
        );
        r.push(compare_braidings(&*braid, &*reference, limits)?);
        reports.push(r);
    }
    if run_rep {
        let rep = Representation::new(&*braid, Window::full(&ctx), arity, max_var, max_form)?;
        reports.push(verify_braid_relations(&rep, max_var, max_form)?);
    }
    Ok(reports)
}

pub fn print_report(r: &Report, out: &mut dyn Write) -> std::io::Result<()> {
    for c in &r.checks {
        let name = format!("{}.{}", r.suite, c.name);
        if let Some(why) = &c.skipped {
            writeln!(out, "{name}: skipped ({why})")?;
        } else if c.passed() {
            writeln!(out, "{name}: ok ({} cases)", c.cases)?;
        } else {
            writeln!(out, "{name}: FAIL ({} of {} cases)", c.failures, c.cases)?;
            for w in &c.witnesses {
                writeln!(out, "    {w}")?;
            }
        }
    }
    Ok(())
}
