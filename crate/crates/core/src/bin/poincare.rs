//! Command-line front end: compute classical/generalized Poincare series
//! from branch- or graph-mode JSON input, run verification suites, and run
//! the bundled fixtures.

use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};

use poincare::branch::{char_data, Vertex};
use poincare::error::{Error, Result};
use poincare::galois::{attach_divisorial, orbit_of, splitting_tower, GResolutionData};
use poincare::io::{parse_input, InputPayload};
use poincare::lseries::{specialize_l, BinomialFactorization, LSeries};
use poincare::numfield::NumberField;
use poincare::oracle;
use poincare::poincare as formulas;
use poincare::poincare::{SeriesKind, ValuationKind};
use poincare::Int;

#[derive(Parser)]
#[command(
    name = "poincare",
    about = "Exact classical and generalized Poincare series of plane curve \
             and divisorial valuations"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Compute a series from an input document.
    Compute(ComputeArgs),
    /// Cross-check a computation against independent routes.
    Verify(VerifyArgs),
    /// Run the bundled worked-example fixtures.
    Fixtures,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum SeriesArg {
    Classical,
    Generalized,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum ValuationArg {
    Curve,
    Divisorial,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum FormatArg {
    Coefficients,
    Factored,
    Json,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum AgainstArg {
    Oracle,
    Stepwise,
    Specialize,
    All,
}

#[derive(Args)]
struct ComputeArgs {
    /// Path to the JSON input document.
    #[arg(long)]
    input: std::path::PathBuf,
    /// Truncation order N (falls back to the document's default_order).
    #[arg(long)]
    order: Option<usize>,
    #[arg(long, value_enum, default_value_t = SeriesArg::Classical)]
    series: SeriesArg,
    #[arg(long, value_enum, default_value_t = ValuationArg::Curve)]
    valuation: ValuationArg,
    #[arg(long, value_enum, default_value_t = FormatArg::Coefficients)]
    format: FormatArg,
    /// Cap on oracle jet-matrix probing order (verify only; accepted here
    /// for flag-set uniformity).
    #[arg(long, default_value_t = 60)]
    max_oracle_order: usize,
}

#[derive(Args)]
struct VerifyArgs {
    #[arg(long)]
    input: std::path::PathBuf,
    #[arg(long)]
    order: Option<usize>,
    #[arg(long, value_enum, default_value_t = ValuationArg::Curve)]
    valuation: ValuationArg,
    #[arg(long, value_enum, default_value_t = AgainstArg::All)]
    against: AgainstArg,
    /// Cap on the oracle's probing order.
    #[arg(long, default_value_t = 60)]
    max_oracle_order: usize,
}

/// Branch-or-graph input resolved to graph data plus, when available, the
/// branch it came from (for the oracle).
struct Resolved {
    data: GResolutionData,
    branch: Option<poincare::branch::PuiseuxBranch>,
}

fn read_document(path: &std::path::Path, order: Option<usize>) -> Result<(Resolved, usize)> {
    let text = std::fs::read_to_string(path)
        .map_err(|e| Error::InvalidInput(format!("cannot read {}: {e}", path.display())))?;
    let doc = parse_input(&text)?;
    let order = order
        .or(doc.default_order)
        .ok_or_else(|| Error::InvalidInput("no --order given and no default_order".into()))?;
    let resolved = match doc.payload {
        InputPayload::Graph(data) => Resolved { data, branch: None },
        InputPayload::Branch { branch, m_delta } => {
            let orbit = orbit_of(&branch)?;
            let mut data = splitting_tower(&orbit)?;
            if let Some(m_delta) = m_delta {
                data = attach_divisorial(&data, m_delta)?;
            }
            Resolved {
                data,
                branch: Some(branch),
            }
        }
    };
    Ok((resolved, order))
}

fn run_compute(args: &ComputeArgs) -> Result<()> {
    let (resolved, order) = read_document(&args.input, args.order)?;
    let kind = match args.series {
        SeriesArg::Classical => SeriesKind::Classical,
        SeriesArg::Generalized => SeriesKind::Generalized,
    };
    let valuation = match args.valuation {
        ValuationArg::Curve => ValuationKind::Curve,
        ValuationArg::Divisorial => ValuationKind::Divisorial,
    };
    let factored = formulas::factorization(&resolved.data, order, kind, valuation)?;
    let series = factored.expand(order)?;
    match args.format {
        FormatArg::Coefficients => print!("{series}"),
        FormatArg::Factored => println!("{factored}"),
        FormatArg::Json => {
            let kind_name = match (kind, valuation) {
                (SeriesKind::Classical, ValuationKind::Curve) => "classical-curve",
                (SeriesKind::Classical, ValuationKind::Divisorial) => "classical-divisorial",
                (SeriesKind::Generalized, ValuationKind::Curve) => "generalized-curve",
                (SeriesKind::Generalized, ValuationKind::Divisorial) => {
                    "generalized-divisorial"
                }
            };
            println!("{}", poincare::io::output_json(&series, kind_name, &factored));
        }
    }
    Ok(())
}

struct Report {
    failures: usize,
}

impl Report {
    fn new() -> Self {
        Report { failures: 0 }
    }

    fn row(&mut self, name: &str, ok: bool) {
        println!("{}  {name}", if ok { "PASS" } else { "FAIL" });
        if !ok {
            self.failures += 1;
        }
    }
}

/// Per-value comparison table between a formula series and oracle
/// dimensions; returns whether every row matched.
fn oracle_table(formula: &LSeries, dims: &[usize]) -> bool {
    let mut all_ok = true;
    println!("v  formula  oracle  match");
    for (v, &a) in dims.iter().enumerate() {
        let got = formula.coeff(v);
        let ok = got == &poincare::lseries::geometric_sum(a);
        println!("{v}  {got}  {a}  {}", if ok { "yes" } else { "NO" });
        all_ok &= ok;
    }
    all_ok
}

fn run_verify(args: &VerifyArgs) -> Result<()> {
    let (resolved, order) = read_document(&args.input, args.order)?;
    let data = &resolved.data;
    let valuation = match args.valuation {
        ValuationArg::Curve => ValuationKind::Curve,
        ValuationArg::Divisorial => ValuationKind::Divisorial,
    };
    let mut report = Report::new();

    let generalized =
        formulas::factorization(data, order, SeriesKind::Generalized, valuation)?.expand(order)?;
    let classical =
        formulas::factorization(data, order, SeriesKind::Classical, valuation)?.expand(order)?;

    if matches!(args.against, AgainstArg::Specialize | AgainstArg::All) {
        report.row(
            "specialize: L -> 1 reproduces the classical series",
            specialize_l(&generalized, &Int::from(1)) == classical,
        );
        report.row(
            "specialize: coefficients are geometric sums",
            formulas::verify_geometric_sums(&generalized).is_ok(),
        );
    }

    if matches!(args.against, AgainstArg::Stepwise | AgainstArg::All) {
        let full = formulas::stepwise_pj(data, data.splittings.len() + 1, order);
        let curve = formulas::generalized_curve(data, order)?;
        let ok = match full {
            Ok(s) => s == curve,
            // Degenerate first stage: the closed form at stage 2 must agree.
            Err(_) if !data.splittings.is_empty() => {
                let mut from_two = formulas::stepwise_pj(data, 2, order)?;
                for s in &data.splittings[1..] {
                    if s.m_rho > order {
                        break;
                    }
                    from_two = from_two
                        .mul_binomial_power(s.deg, s.m_rho, -1)
                        .mul_binomial_power(s.ell * s.deg, s.ell * s.m_rho, 1);
                }
                from_two == curve
            }
            Err(_) => false,
        };
        report.row("stepwise: tower recursion telescopes to the closed form", ok);
    }

    if matches!(args.against, AgainstArg::Oracle | AgainstArg::All) {
        let branch = resolved.branch.as_ref().ok_or_else(|| {
            Error::OracleUnavailable("graph-mode input has no branch to substitute".into())
        })?;
        let cap = order.min(args.max_oracle_order);
        let dims = match valuation {
            ValuationKind::Curve => oracle::curve_dims(branch, cap)?,
            ValuationKind::Divisorial => {
                let m_delta = data
                    .divisorial
                    .as_ref()
                    .ok_or_else(|| {
                        Error::GraphValidation("divisorial verification without M_delta".into())
                    })?
                    .m_delta;
                oracle::divisorial_dims(branch, m_delta, cap)?
            }
        };
        let ok = oracle_table(&generalized.truncate(cap), &dims);
        report.row("oracle: jet dimensions match the product formula", ok);
        if valuation == ValuationKind::Curve {
            report.row(
                "oracle: value set is additively closed",
                oracle::check_semigroup_closure(&dims).is_ok(),
            );
        }
    }

    if report.failures > 0 {
        Err(Error::Internal(format!(
            "{} verification check(s) failed",
            report.failures
        )))
    } else {
        Ok(())
    }
}

fn run_fixtures() -> Result<()> {
    let mut report = Report::new();
    report.row(
        "two transversal smooth branches: bivariate identity and fibre classes",
        formulas::fixture_example1(),
    );
    report.row(
        "two-blow-up closed form: expansion smoke checks",
        formulas::fixture_example2_smoke(8).is_ok_and(|ok| ok),
    );

    // Divisorial series on the <4,6,13> trunk, both vertices, classical
    // and generalized closed forms.
    let base = GResolutionData {
        g: 2,
        m_sigma: vec![4, 6, 13],
        m_tau: vec![12, 26],
        splittings: vec![],
        divisorial: None,
    };
    let order = 30;
    {
        let data = attach_divisorial(&base, 26)?;
        let f =
            formulas::factorization(&data, order, SeriesKind::Generalized, ValuationKind::Divisorial)?;
        report.row(
            "trunk vertex at M_delta = 26: generalized factored form",
            f.to_string()
                == "(1 - t^12)(1 - t^26) / ((1 - t^4)(1 - t^6)(1 - t^13)(1 - L*t^26))",
        );
        let mut reduced = BinomialFactorization::new();
        reduced.push(0, 12, 1)?;
        for m in [4, 6, 13] {
            reduced.push(0, m, -1)?;
        }
        report.row(
            "trunk vertex at M_delta = 26: classical series collapses",
            formulas::classical_divisorial(&data, order)? == reduced.expand(order)?,
        );
    }
    {
        let data = attach_divisorial(&base, 27)?;
        let f =
            formulas::factorization(&data, order, SeriesKind::Generalized, ValuationKind::Divisorial)?;
        report.row(
            "trunk vertex at M_delta = 27: generalized factored form",
            f.to_string()
                == "(1 - t^12)(1 - t^26) / ((1 - t^4)(1 - t^6)(1 - t^13)(1 - L*t^27))",
        );
    }

    // Branch-route consistency on the conjugate sqrt2 tangent pair.
    {
        let k = NumberField::quadratic(2)?;
        let b = poincare::branch::PuiseuxBranch::new(k.clone(), 1, vec![(1, k.alpha())])?;
        let data = splitting_tower(&orbit_of(&b)?)?;
        let got = formulas::generalized_curve(&data, 3)?;
        let dims = oracle::curve_dims(&b, 3)?;
        report.row(
            "conjugate tangent pair: formula equals jet dimensions",
            got == oracle::oracle_generalized(&dims),
        );
        // Its trunk starts one step past the tangent: m-value of the first
        // trunk vertex must match the splitting data.
        let cd = char_data(&b);
        report.row(
            "conjugate tangent pair: trunk base vertex is in the graph",
            cd.m_value(Vertex::Sigma(0)) == Some(1),
        );
    }

    if report.failures > 0 {
        Err(Error::Internal(format!(
            "{} fixture(s) failed",
            report.failures
        )))
    } else {
        Ok(())
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let result = match &cli.command {
        Command::Compute(args) => run_compute(args),
        Command::Verify(args) => run_verify(args),
        Command::Fixtures => run_fixtures(),
    };
    match result {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(e.exit_code() as u8)
        }
    }
}
