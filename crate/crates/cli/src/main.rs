use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use mvop::family::{assemble_p, f_wr};
use mvop::orthogonality::gram;
use mvop::recurrence::{blocks, three_term_residual};
use mvop::verify::{default_grid, exit_code, run, run_checked, Suite};
use mvop::walk::walk;
use mvop::Params;
use serde_json::{json, Value};

mod output;

#[derive(Parser)]
#[command(name = "mvop", version, about = "Matrix-valued orthogonal polynomials from one-step spherical functions")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Args, Clone, Debug)]
struct ParamArgs {
    #[arg(long)]
    n: Option<i64>,
    #[arg(long)]
    k: Option<i64>,
    #[arg(long)]
    ell: Option<usize>,
    #[arg(long, allow_hyphen_values = true)]
    m: Option<i64>,
    /// Continuous parameters `alpha`, `beta` in place of `m`, `n`.
    #[arg(long)]
    jacobi: bool,
    #[arg(long, allow_hyphen_values = true, requires = "jacobi")]
    alpha: Option<f64>,
    #[arg(long, allow_hyphen_values = true, requires = "jacobi")]
    beta: Option<f64>,
}

impl ParamArgs {
    /// `None` when no parameter flag was given.
    fn given(&self) -> Result<Option<Params>, Failure> {
        if self.jacobi {
            if self.n.is_some() || self.m.is_some() {
                return Err(Failure::Input("--n and --m do not apply with --jacobi".into()));
            }
            let (Some(alpha), Some(beta)) = (self.alpha, self.beta) else {
                return Err(Failure::Input("--jacobi needs --alpha and --beta".into()));
            };
            return Ok(Some(Params::jacobi(alpha, beta, self.k.unwrap_or(1), self.ell.unwrap_or(1))));
        }
        if self.n.is_none() && self.k.is_none() && self.ell.is_none() && self.m.is_none() {
            return Ok(None);
        }
        Ok(Some(Params::integer(
            self.n.unwrap_or(2),
            self.k.unwrap_or(1),
            self.ell.unwrap_or(1),
            self.m.unwrap_or(0),
        )))
    }

    /// The given parameters, `(n, k, ℓ, m) = (2, 1, 1, 0)` by default.
    fn resolve(&self) -> Result<Params, Failure> {
        let p = self.given()?.unwrap_or(Params::integer(2, 1, 1, 0));
        p.validate().map_err(Failure::from)?;
        Ok(p)
    }
}

#[derive(Args, Clone, Debug)]
struct OutArgs {
    /// Write to this file instead of stdout.
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Copy, Clone, Debug, PartialEq, Eq, ValueEnum)]
enum Format {
    Json,
    Csv,
}

#[derive(Copy, Clone, Debug, PartialEq, Eq, ValueEnum)]
enum SuiteArg {
    Eigen,
    Ortho,
    Recursion,
    All,
}

impl From<SuiteArg> for Suite {
    fn from(s: SuiteArg) -> Self {
        match s {
            SuiteArg::Eigen => Suite::Eigen,
            SuiteArg::Ortho => Suite::Ortho,
            SuiteArg::Recursion => Suite::Recursion,
            SuiteArg::All => Suite::All,
        }
    }
}

#[derive(Subcommand)]
enum Command {
    /// One eigenfunction F_{w,r} with its eigenvalues.
    Eigen {
        #[command(flatten)]
        params: ParamArgs,
        #[arg(long, default_value_t = 0)]
        w: usize,
        #[arg(long, default_value_t = 0)]
        r: usize,
        #[command(flatten)]
        out: OutArgs,
    },
    /// The matrix polynomials P_0, …, P_wmax.
    Family {
        #[command(flatten)]
        params: ParamArgs,
        #[arg(long, default_value_t = 4)]
        wmax: usize,
        #[command(flatten)]
        out: OutArgs,
    },
    /// Gram matrix of the eigenfunctions under the weight.
    Gram {
        #[command(flatten)]
        params: ParamArgs,
        #[arg(long, default_value_t = 4)]
        wmax: usize,
        #[arg(long, value_enum, default_value_t = Format::Csv)]
        format: Format,
        #[command(flatten)]
        out: OutArgs,
    },
    /// Three-term recursion blocks and residuals.
    Recursion {
        #[command(flatten)]
        params: ParamArgs,
        #[arg(long, default_value_t = 4)]
        wmax: usize,
        #[command(flatten)]
        out: OutArgs,
    },
    /// Random walk driven by the recursion blocks.
    Walk {
        #[command(flatten)]
        params: ParamArgs,
        #[arg(long, default_value_t = 1000)]
        steps: usize,
        #[arg(long, default_value_t = 42)]
        seed: u64,
        #[arg(long, default_value_t = 0)]
        start_w: usize,
        #[arg(long, default_value_t = 0)]
        start_r: usize,
        #[arg(long, value_enum, default_value_t = Format::Csv)]
        format: Format,
        #[command(flatten)]
        out: OutArgs,
    },
    /// Run the verification checks; without parameters, over the default grid.
    Verify {
        #[command(flatten)]
        params: ParamArgs,
        #[arg(long, default_value_t = 4)]
        wmax: usize,
        #[arg(long, value_enum, default_value_t = SuiteArg::All)]
        suite: SuiteArg,
        #[command(flatten)]
        out: OutArgs,
    },
}

#[derive(Debug)]
enum Failure {
    Input(String),
    Numeric(String),
}

impl From<mvop::Error> for Failure {
    fn from(e: mvop::Error) -> Self {
        if exit_code(&e) == 2 {
            Failure::Input(e.to_string())
        } else {
            Failure::Numeric(e.to_string())
        }
    }
}

impl Failure {
    fn code(&self) -> u8 {
        match self {
            Failure::Input(_) => 2,
            Failure::Numeric(_) => 3,
        }
    }
}

fn emit(out: &OutArgs, text: &str) -> Result<(), Failure> {
    match &out.out {
        Some(path) => std::fs::write(path, text)
            .map_err(|e| Failure::Input(format!("cannot write {}: {e}", path.display()))),
        None => {
            print!("{text}");
            Ok(())
        }
    }
}

fn label(w: usize, r: usize) -> Value {
    json!({ "w": w, "r": r })
}

fn eigen(p: &Params, w: usize, r: usize) -> Result<Value, Failure> {
    let f = f_wr::<f64>(p, w, r)?;
    Ok(json!({
        "params": output::params(p),
        "label": label(w, r),
        "lambda": output::real(f.lambda),
        "mu": output::real(f.mu),
        "value_at_zero": output::vector(&f.value_at_zero()),
        "coeffs": output::vec_poly(&f.poly),
    }))
}

fn family(p: &Params, wmax: usize) -> Result<Value, Failure> {
    let packages = (0..=wmax)
        .map(|w| {
            let pkg = assemble_p::<f64>(p, w)?;
            Ok(json!({ "w": w, "coeffs": output::mat_poly(&pkg.p) }))
        })
        .collect::<Result<Vec<_>, Failure>>()?;
    Ok(json!({ "params": output::params(p), "wmax": wmax, "packages": packages }))
}

fn gram_text(p: &Params, wmax: usize, format: Format) -> Result<String, Failure> {
    let g = gram(p, wmax)?;
    Ok(match format {
        Format::Csv => {
            let names: Vec<String> = g.labels.iter().map(|(w, r)| format!("w{w}r{r}")).collect();
            let rows: Vec<(String, Vec<f64>)> =
                names.iter().cloned().zip(g.entries.iter().cloned()).collect();
            output::matrix_csv(&names, &rows)
        }
        Format::Json => output::to_text(&json!({
            "params": output::params(p),
            "labels": g.labels.iter().map(|&(w, r)| label(w, r)).collect::<Vec<_>>(),
            "entries": g.entries.iter().map(|row| output::vector(row)).collect::<Vec<_>>(),
            "max_off_diagonal_ratio": output::real(g.max_off_diagonal_ratio()),
        })),
    })
}

fn recursion(p: &Params, wmax: usize) -> Result<Value, Failure> {
    let items = (0..=wmax)
        .map(|w| {
            let b = blocks::<f64>(p, w)?;
            let residual = three_term_residual::<f64>(p, w)?;
            Ok(json!({
                "w": w,
                "a": output::matrix(&b.a),
                "b": output::matrix(&b.b),
                "c": output::matrix(&b.c),
                "row_sums": output::vector(&b.row_sums()),
                "three_term_residual": output::real(residual.relative()),
            }))
        })
        .collect::<Result<Vec<_>, Failure>>()?;
    Ok(json!({ "params": output::params(p), "wmax": wmax, "blocks": items }))
}

fn walk_text(p: &Params, steps: usize, seed: u64, start: (usize, usize), format: Format) -> Result<String, Failure> {
    let path = walk(p, steps, seed, start)?;
    Ok(match format {
        Format::Csv => {
            let mut s = String::from("step,w,r\n");
            for (i, (w, r)) in path.iter().enumerate() {
                s.push_str(&format!("{i},{w},{r}\n"));
            }
            s
        }
        Format::Json => output::to_text(&json!({
            "params": output::params(p),
            "seed": seed,
            "steps": steps,
            "trajectory": path.iter().map(|&(w, r)| json!([w, r])).collect::<Vec<_>>(),
        })),
    })
}

fn verify(args: &ParamArgs, wmax: usize, suite: Suite, out: &OutArgs) -> Result<(), Failure> {
    let report = match args.given()? {
        Some(p) => run_checked(&p, wmax, suite)?,
        None => run(&default_grid(), wmax, suite),
    };
    for c in &report.checks {
        let status = if c.passed { "PASS" } else { "FAIL" };
        eprintln!("{status} {:<18} max {:.3e} tol {:.0e}", c.name, c.max_residual, c.tolerance);
        for f in &c.failures {
            eprintln!("    {f}");
        }
    }
    let value = serde_json::to_value(&report).map_err(|e| Failure::Numeric(e.to_string()))?;
    emit(out, &output::to_text(&output::normalize(value)))?;
    if report.passed() {
        Ok(())
    } else {
        Err(Failure::Numeric("verification failed".into()))
    }
}

fn configure_threads() -> Result<(), Failure> {
    let Ok(raw) = std::env::var("MVOP_THREADS") else { return Ok(()) };
    let threads: usize = raw
        .parse()
        .ok()
        .filter(|&t| t > 0)
        .ok_or_else(|| Failure::Input(format!("MVOP_THREADS must be a positive integer, got {raw:?}")))?;
    rayon::ThreadPoolBuilder::new()
        .num_threads(threads)
        .build_global()
        .map_err(|e| Failure::Input(e.to_string()))
}

fn execute(cli: Cli) -> Result<(), Failure> {
    configure_threads()?;
    match cli.command {
        Command::Eigen { params, w, r, out } => {
            emit(&out, &output::to_text(&eigen(&params.resolve()?, w, r)?))
        }
        Command::Family { params, wmax, out } => {
            emit(&out, &output::to_text(&family(&params.resolve()?, wmax)?))
        }
        Command::Gram { params, wmax, format, out } => {
            emit(&out, &gram_text(&params.resolve()?, wmax, format)?)
        }
        Command::Recursion { params, wmax, out } => {
            emit(&out, &output::to_text(&recursion(&params.resolve()?, wmax)?))
        }
        Command::Walk { params, steps, seed, start_w, start_r, format, out } => {
            emit(&out, &walk_text(&params.resolve()?, steps, seed, (start_w, start_r), format)?)
        }
        Command::Verify { params, wmax, suite, out } => verify(&params, wmax, suite.into(), &out),
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match execute(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(f) => {
            match &f {
                Failure::Input(msg) => eprintln!("error: {msg}"),
                Failure::Numeric(msg) => eprintln!("numeric failure: {msg}"),
            }
            ExitCode::from(f.code())
        }
    }
}
