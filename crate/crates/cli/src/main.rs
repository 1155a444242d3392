use std::process::ExitCode;
use std::sync::Arc;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde_json::json;

use palcount_core::charsum::{i_total, CharSumEngine, CountResult, DEFAULT_TOLERANCE, TOLERANCE_ENV};
use palcount_core::classgroup::{decompose, ClassLabel};
use palcount_core::ffpoly::{FieldElement, FieldSpec, Poly};
use palcount_core::sripm::{bounds, SrimCounter};
use palcount_core::tables::{compute_table, known_erratum, Table, TableSpec, DEFAULT_MAX_N};
use palcount_core::verify::{self, Scope, Suite};
use palcount_core::{Error, Result};

#[derive(Parser)]
#[command(
    name = "palcount",
    version,
    about = "Count irreducible and self-reciprocal irreducible polynomials over finite fields"
)]
struct Cli {
    /// Largest accepted distance from an integer before rounding a count.
    #[arg(long, global = true, env = TOLERANCE_ENV, default_value_t = DEFAULT_TOLERANCE)]
    tolerance: f64,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Count polynomials with prescribed coefficients.
    #[command(subcommand)]
    Count(CountCommand),
    /// Recompute one of the seven numeric tables.
    Table(TableArgs),
    /// Run a verification suite.
    Verify(VerifyArgs),
    /// Interval bounds for self-reciprocal counts.
    Bounds(BoundsArgs),
    /// Show the cyclic decomposition of a class group.
    Group(GroupArgs),
}

#[derive(Subcommand)]
enum CountCommand {
    /// Self-reciprocal irreducible polynomials of degree 2n with leading coefficients c1..cl.
    Sripm {
        #[arg(long)]
        q: u64,
        #[arg(long)]
        n: u32,
        #[arg(long, value_delimiter = ',')]
        leading: Vec<u64>,
    },
    /// Irreducible polynomials of degree n with leading a1..al and ending b0..b(t-1).
    Irr {
        #[arg(long)]
        q: u64,
        #[arg(long)]
        n: u32,
        #[arg(long, value_delimiter = ',')]
        leading: Vec<u64>,
        #[arg(long, value_delimiter = ',')]
        ending: Vec<u64>,
    },
}

#[derive(Copy, Clone, ValueEnum)]
enum Format {
    Json,
    Csv,
    Md,
}

#[derive(Args)]
struct TableArgs {
    #[arg(long)]
    id: u8,
    #[arg(long, default_value_t = DEFAULT_MAX_N)]
    max_n: u32,
    #[arg(long, value_enum, default_value = "csv")]
    format: Format,
    /// Mark cells where the published value is known to be wrong.
    #[arg(long)]
    annotate: bool,
}

#[derive(Args)]
struct VerifyArgs {
    #[arg(long)]
    suite: String,
    #[arg(long)]
    q: Option<u32>,
    #[arg(long)]
    max_n: Option<u32>,
    /// Largest palindrome degree scanned by the oracle suite.
    #[arg(long = "max-2n")]
    max_2n: Option<u32>,
    #[arg(long)]
    json: bool,
}

#[derive(Args)]
struct BoundsArgs {
    #[arg(long)]
    q: u64,
    #[arg(long)]
    n: u32,
    #[arg(long)]
    ell: usize,
}

#[derive(Args)]
struct GroupArgs {
    #[arg(long)]
    q: u64,
    #[arg(long)]
    ell: usize,
    #[arg(long)]
    t: usize,
    /// Generator polynomials, e.g. `11,1012`.
    #[arg(long, value_delimiter = ',')]
    gens: Vec<String>,
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(&cli) {
        Ok(code) => ExitCode::from(code),
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(e.exit_code() as u8)
        }
    }
}

fn run(cli: &Cli) -> Result<u8> {
    let tol = cli.tolerance;
    if !(tol > 0.0 && tol < 0.5) {
        return Err(Error::OutOfRange(format!("tolerance must lie in (0, 0.5), got {tol}")));
    }
    match &cli.command {
        Command::Count(CountCommand::Sripm { q, n, leading }) => {
            let field = FieldSpec::with_order(*q)?;
            let lead = elements(&field, leading)?;
            let r = SrimCounter::new(&field, tol).s_count(*n, &lead)?;
            print_count(&field, *n, &lead, &[], r);
        }
        Command::Count(CountCommand::Irr { q, n, leading, ending }) => {
            let field = FieldSpec::with_order(*q)?;
            let lead = elements(&field, leading)?;
            let end = elements(&field, ending)?;
            let r = if lead.is_empty() && end.is_empty() {
                i_total(&field, *n)?
            } else {
                let group = decompose(&field, lead.len(), end.len(), None)?;
                let engine = CharSumEngine::new(Arc::new(group), tol);
                engine.i_count(*n, &ClassLabel::new(lead.clone(), end.clone()))?
            };
            print_count(&field, *n, &lead, &end, r);
        }
        Command::Table(args) => {
            let table = compute_table(&TableSpec::new(args.id, args.max_n)?, tol)?;
            print!("{}", render(&table, args.format, args.annotate));
        }
        Command::Verify(args) => {
            let suite: Suite = args.suite.parse()?;
            let scope = Scope {
                q: args.q,
                max_n: args.max_n,
                max_2n: args.max_2n,
            };
            let report = verify::run(suite, scope, tol)?;
            if args.json {
                println!("{}", serde_json::to_string_pretty(&report).expect("report serializes"));
            } else {
                println!(
                    "suite {}: {} checks, {} mismatches, max residual {:e}",
                    suite,
                    report.checks,
                    report.mismatches.len(),
                    report.max_residual
                );
                for note in &report.notes {
                    println!("note: {note}");
                }
                for m in &report.mismatches {
                    println!("mismatch: {m}");
                }
                println!("{}", if report.passed() { "PASS" } else { "FAIL" });
            }
            return Ok(if report.passed() { 0 } else { 1 });
        }
        Command::Bounds(args) => {
            let field = FieldSpec::with_order(args.q)?;
            let b = bounds(&field, args.n, args.ell)?;
            println!("{}", serde_json::to_string_pretty(&b).expect("bounds serialize"));
        }
        Command::Group(args) => {
            let field = FieldSpec::with_order(args.q)?;
            let gens = args
                .gens
                .iter()
                .map(|g| Poly::parse(&field, g))
                .collect::<Result<Vec<_>>>()?;
            let over = if gens.is_empty() { None } else { Some(gens.as_slice()) };
            let g = decompose(&field, args.ell, args.t, over)?;
            let out = json!({
                "q": field.q(),
                "ell": g.ell(),
                "t": g.t(),
                "order": g.order(),
                "orders": g.orders(),
                "generators": g.generators().iter().map(|l| l.to_string()).collect::<Vec<_>>(),
            });
            println!("{}", serde_json::to_string_pretty(&out).expect("group serializes"));
        }
    }
    Ok(0)
}

fn elements(field: &FieldSpec, v: &[u64]) -> Result<Vec<FieldElement>> {
    v.iter().map(|&c| field.elem(c)).collect()
}

fn print_count(field: &FieldSpec, n: u32, lead: &[FieldElement], end: &[FieldElement], r: CountResult) {
    let idx = |v: &[FieldElement]| v.iter().map(|c| c.index()).collect::<Vec<_>>();
    let out = json!({
        "q": field.q(),
        "n": n,
        "ell": lead.len(),
        "t": end.len(),
        "leading": idx(lead),
        "ending": idx(end),
        "count": r.count,
        "residual": r.residual,
    });
    println!("{out}");
}

fn erratum_note(table: &Table, n: u32) -> String {
    (0..table.columns.len())
        .filter_map(|c| known_erratum(table.id, n, c).map(|e| format!("{}: printed {}", table.columns[c], e.printed)))
        .collect::<Vec<_>>()
        .join("; ")
}

fn render(table: &Table, format: Format, annotate: bool) -> String {
    let mut out = String::new();
    match format {
        Format::Json => {
            let mut v = serde_json::to_value(table).expect("table serializes");
            if annotate {
                let errata: Vec<_> = table
                    .rows
                    .iter()
                    .flat_map(|r| (0..table.columns.len()).filter_map(move |c| known_erratum(table.id, r.n, c)))
                    .collect();
                v["errata"] = serde_json::to_value(errata).expect("errata serialize");
            }
            out.push_str(&serde_json::to_string_pretty(&v).expect("table serializes"));
            out.push('\n');
        }
        Format::Csv => {
            out.push_str(&format!("n,{}", table.columns.join(",")));
            if annotate {
                out.push_str(",erratum");
            }
            out.push('\n');
            for row in &table.rows {
                let vals: Vec<String> = row.values.iter().map(|v| v.to_string()).collect();
                out.push_str(&format!("{},{}", row.n, vals.join(",")));
                if annotate {
                    out.push(',');
                    out.push_str(&erratum_note(table, row.n));
                }
                out.push('\n');
            }
        }
        Format::Md => {
            out.push_str(&format!("**Table {}.** {}\n\n", table.id, table.title));
            let mut head = vec!["n".to_string()];
            head.extend(table.columns.iter().cloned());
            if annotate {
                head.push("erratum".into());
            }
            out.push_str(&format!("| {} |\n", head.join(" | ")));
            out.push_str(&format!("|{}\n", "---|".repeat(head.len())));
            for row in &table.rows {
                let mut cells = vec![row.n.to_string()];
                cells.extend(row.values.iter().map(|v| v.to_string()));
                if annotate {
                    cells.push(erratum_note(table, row.n));
                }
                out.push_str(&format!("| {} |\n", cells.join(" | ")));
            }
        }
    }
    out
}
