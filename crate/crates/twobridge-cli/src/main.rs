//! `twobridge` — tabulate, identify and split 2-bridge links from the
//! command line.
//!
//! Exit codes: 0 success, 1 usage error, 2 I/O or data-file error,
//! 3 verification mismatch.

use clap::error::ErrorKind;
use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::Serialize;
use std::fmt::Write as _;
use std::process::ExitCode;
use twobridge::diagram::{build_diagram, gauss_code};
use twobridge::enumerate::{tabulate, tabulate_range, TabulationRow};
use twobridge::equivalence::{canonicalize, LinkClass};
use twobridge::identify::{
    embedded_fixture, embedded_pd_table, identify_class, ingest_table, parse_fixture,
    render_pd_table, verify_fixture, FixtureRow, LinkTableEntry,
};
use twobridge::invariants::{identification_key, kauffman_bracket, linking_number, writhe};
use twobridge::rational::{eval_cf, ConwayForm};
use twobridge::splitting::splitting_number;

const EXIT_USAGE: u8 = 1;
const EXIT_IO: u8 = 2;
const EXIT_MISMATCH: u8 = 3;

#[derive(Parser)]
#[command(
    name = "twobridge",
    version,
    about = "2-bridge link tabulation and identification"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Tabulate link classes by crossing number
    Tabulate(TabulateArgs),
    /// Identify one link class in a link table
    Identify(IdentifyArgs),
    /// Splitting number of a class via the even-entry Conway pattern
    Splitting(SplittingArgs),
    /// Check the tabulation, id join and splitting numbers against the
    /// bundled fixture
    Verify(VerifyArgs),
    /// PD and Gauss codes of the template diagram of a Conway form
    Gauss(GaussArgs),
    /// Kauffman bracket and identification key of a template diagram
    Bracket(SelectArgs),
    /// Emit the bundled data artifacts
    Export(ExportArgs),
}

#[derive(Args)]
struct TabulateArgs {
    /// Single crossing number (3..=16)
    #[arg(long, conflicts_with = "n_max")]
    n: Option<u32>,
    /// Tabulate every crossing number from 4 up to this bound (4..=16)
    #[arg(long)]
    n_max: Option<u32>,
    #[arg(long, value_enum, default_value_t = Format::Table)]
    format: Format,
    /// Link table file for the id column (defaults to the bundled table)
    #[arg(long)]
    table: Option<String>,
}

#[derive(Args)]
struct SelectArgs {
    /// Conway form, e.g. `2,1,2`
    #[arg(long)]
    conway: Option<String>,
    /// Fraction `p/q` of the class, e.g. `14/3`
    #[arg(long)]
    pq: Option<String>,
}

#[derive(Args)]
struct IdentifyArgs {
    #[command(flatten)]
    select: SelectArgs,
    /// Link table file (defaults to the bundled table)
    #[arg(long)]
    table: Option<String>,
}

#[derive(Args)]
struct SplittingArgs {
    /// Thistlethwaite id from the bundled fixture, e.g. `L10A48`
    #[arg(long)]
    id: Option<String>,
    #[command(flatten)]
    select: SelectArgs,
    /// Fixture file overriding the bundled tables
    #[arg(long)]
    fixture: Option<String>,
}

#[derive(Args)]
struct VerifyArgs {
    #[arg(long, default_value_t = 11)]
    n_max: u32,
    /// Fixture file overriding the bundled tables
    #[arg(long)]
    fixture: Option<String>,
    /// Link table file overriding the bundled PD table
    #[arg(long)]
    table: Option<String>,
}

#[derive(Args)]
struct GaussArgs {
    /// Conway form, e.g. `2,1,2`
    #[arg(long)]
    conway: String,
}

#[derive(Args)]
struct ExportArgs {
    #[arg(value_enum)]
    what: ExportWhat,
    #[arg(long, default_value_t = 11)]
    n_max: u32,
}

#[derive(Clone, Copy, ValueEnum)]
enum ExportWhat {
    /// The PD-code link table generated from the fixture's Conway forms
    PdTable,
    /// The transcribed published tables (JSONL)
    Fixture,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Table,
    Json,
    Csv,
}

/// Failures mapped to exit codes.
enum CmdError {
    Usage(String),
    Io(String),
    Mismatch,
}

impl From<std::io::Error> for CmdError {
    fn from(e: std::io::Error) -> Self {
        CmdError::Io(e.to_string())
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) if matches!(e.kind(), ErrorKind::DisplayHelp | ErrorKind::DisplayVersion) => {
            print!("{e}");
            return ExitCode::SUCCESS;
        }
        Err(e) => {
            eprint!("{e}");
            return ExitCode::from(EXIT_USAGE);
        }
    };
    let result = match cli.command {
        Command::Tabulate(args) => cmd_tabulate(args),
        Command::Identify(args) => cmd_identify(args),
        Command::Splitting(args) => cmd_splitting(args),
        Command::Verify(args) => cmd_verify(args),
        Command::Gauss(args) => cmd_gauss(args),
        Command::Bracket(args) => cmd_bracket(args),
        Command::Export(args) => cmd_export(args),
    };
    match result {
        Ok(()) => ExitCode::SUCCESS,
        Err(CmdError::Usage(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(EXIT_USAGE)
        }
        Err(CmdError::Io(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(EXIT_IO)
        }
        Err(CmdError::Mismatch) => ExitCode::from(EXIT_MISMATCH),
    }
}

fn load_fixture(path: &Option<String>) -> Result<Vec<FixtureRow>, CmdError> {
    let text = match path {
        Some(p) => std::fs::read_to_string(p)?,
        None => embedded_fixture().to_string(),
    };
    parse_fixture(&text).map_err(|e| CmdError::Io(format!("fixture: {e}")))
}

fn load_table(path: &Option<String>) -> Result<Vec<LinkTableEntry>, CmdError> {
    let text = match path {
        Some(p) => std::fs::read_to_string(p)?,
        None => embedded_pd_table().to_string(),
    };
    ingest_table(&text).map_err(|e| CmdError::Io(format!("link table: {e}")))
}

fn parse_pq(text: &str) -> Result<(u64, u64), CmdError> {
    let (p, q) = text
        .split_once('/')
        .ok_or_else(|| CmdError::Usage(format!("--pq expects `p/q`, got {text:?}")))?;
    let p: u64 = p
        .trim()
        .parse()
        .map_err(|_| CmdError::Usage(format!("bad numerator {p:?}")))?;
    let q: u64 = q
        .trim()
        .parse()
        .map_err(|_| CmdError::Usage(format!("bad denominator {q:?}")))?;
    Ok((p, q))
}

/// Resolves `--conway`/`--pq` to a link class.
fn select_class(select: &SelectArgs) -> Result<LinkClass, CmdError> {
    let class = match (&select.conway, &select.pq) {
        (Some(c), None) => {
            let form =
                ConwayForm::parse(c).map_err(|e| CmdError::Usage(format!("--conway: {e}")))?;
            let f = eval_cf(&form);
            if !f.is_link() {
                return Err(CmdError::Usage(format!(
                    "{form} evaluates to {f}: odd numerator is a knot, not a link"
                )));
            }
            canonicalize(f.p(), f.q())
        }
        (None, Some(pq)) => {
            let (p, q) = parse_pq(pq)?;
            canonicalize(p, q)
        }
        _ => {
            return Err(CmdError::Usage(
                "exactly one of --conway or --pq is required".into(),
            ))
        }
    };
    class.map_err(|e| CmdError::Usage(e.to_string()))
}

fn parse_conway(text: &str) -> Result<ConwayForm, CmdError> {
    ConwayForm::parse(text).map_err(|e| CmdError::Usage(format!("--conway: {e}")))
}

/// One output row of `tabulate`, the JSON export schema.
#[derive(Serialize)]
struct OutRow {
    n: u32,
    p: u64,
    q: u64,
    conway: Vec<u32>,
    members: Vec<u64>,
    raw_count: usize,
    oriented_multiplicity: u8,
    amphichiral: bool,
    id: Option<String>,
    sp: Option<u32>,
}

#[derive(Serialize)]
struct OutTabulation {
    n_min: u32,
    n_max: u32,
    rows: Vec<OutRow>,
}

fn out_rows(rows: &[TabulationRow], table: &[LinkTableEntry]) -> Result<Vec<OutRow>, CmdError> {
    rows.iter()
        .map(|row| {
            let class = &row.link_class;
            let ident = identify_class(class, table)
                .map_err(|e| CmdError::Io(format!("identification: {e}")))?;
            let sp = splitting_number(class, row.crossing_number).map(|(sp, _)| sp);
            Ok(OutRow {
                n: row.crossing_number,
                p: class.p(),
                q: class.canonical_q(),
                conway: class.chosen_form().entries().to_vec(),
                members: class.members().iter().copied().collect(),
                raw_count: row.raw_count,
                oriented_multiplicity: row.oriented_multiplicity,
                amphichiral: class.amphichiral(),
                id: ident.matched_id,
                sp,
            })
        })
        .collect()
}

fn cmd_tabulate(args: TabulateArgs) -> Result<(), CmdError> {
    let (n_min, n_max, rows) = match (args.n, args.n_max) {
        (Some(n), None) => {
            if !(3..=16).contains(&n) {
                return Err(CmdError::Usage(format!("--n must be in 3..=16, got {n}")));
            }
            (
                n,
                n,
                tabulate(n).map_err(|e| CmdError::Usage(e.to_string()))?,
            )
        }
        (None, Some(m)) => {
            if !(4..=16).contains(&m) {
                return Err(CmdError::Usage(format!(
                    "--n-max must be in 4..=16, got {m}"
                )));
            }
            (
                4,
                m,
                tabulate_range(m).map_err(|e| CmdError::Usage(e.to_string()))?,
            )
        }
        _ => {
            return Err(CmdError::Usage(
                "exactly one of --n or --n-max is required".into(),
            ))
        }
    };
    let table = load_table(&args.table)?;
    let out = OutTabulation {
        n_min,
        n_max,
        rows: out_rows(&rows, &table)?,
    };
    print!("{}", render_tabulation(&out, args.format));
    Ok(())
}

fn render_tabulation(out: &OutTabulation, format: Format) -> String {
    let mut text = String::new();
    match format {
        Format::Json => {
            text = serde_json::to_string_pretty(out).expect("serializable");
            text.push('\n');
        }
        Format::Csv => {
            text.push_str("n,p,q,conway,id,sp\n");
            for r in &out.rows {
                let conway = r
                    .conway
                    .iter()
                    .map(|a| a.to_string())
                    .collect::<Vec<_>>()
                    .join(",");
                let _ = writeln!(
                    text,
                    "{},{},{},\"[{}]\",{},{}",
                    r.n,
                    r.p,
                    r.q,
                    conway,
                    r.id.as_deref().unwrap_or(""),
                    r.sp.map(|s| s.to_string()).unwrap_or_default()
                );
            }
        }
        Format::Table => {
            let _ = writeln!(
                text,
                "{:<3} {:<5} {:<4} {:<22} {:<9} {:<4} sp",
                "n", "p", "q", "conway", "id", "mult"
            );
            for r in &out.rows {
                let conway = format!(
                    "[{}]",
                    r.conway
                        .iter()
                        .map(|a| a.to_string())
                        .collect::<Vec<_>>()
                        .join(",")
                );
                let _ = writeln!(
                    text,
                    "{:<3} {:<5} {:<4} {:<22} {:<9} {:<4} {}",
                    r.n,
                    r.p,
                    r.q,
                    conway,
                    r.id.as_deref().unwrap_or("-"),
                    r.oriented_multiplicity,
                    r.sp.map(|s| s.to_string()).unwrap_or_else(|| "-".into())
                );
            }
        }
    }
    text
}

fn cmd_identify(args: IdentifyArgs) -> Result<(), CmdError> {
    let class = select_class(&args.select)?;
    let table = load_table(&args.table)?;
    let ident =
        identify_class(&class, &table).map_err(|e| CmdError::Io(format!("identification: {e}")))?;
    match (&ident.matched_id, ident.ambiguity.as_slice()) {
        (Some(id), _) => println!("{} {} -> {id}", class, class.chosen_form()),
        (None, []) => println!("{} {} -> unmatched", class, class.chosen_form()),
        (None, many) => println!(
            "{} {} -> ambiguous: {}",
            class,
            class.chosen_form(),
            many.join(",")
        ),
    }
    Ok(())
}

fn cmd_splitting(args: SplittingArgs) -> Result<(), CmdError> {
    let (label, class) = if let Some(id) = &args.id {
        let fixture = load_fixture(&args.fixture)?;
        let wanted = id.to_ascii_uppercase();
        let row = fixture
            .iter()
            .find(|r| r.id.eq_ignore_ascii_case(&wanted))
            .ok_or_else(|| CmdError::Usage(format!("id {id} not in the fixture")))?;
        let class = canonicalize(row.p, row.q).map_err(|e| CmdError::Usage(e.to_string()))?;
        (row.id.clone(), class)
    } else {
        let class = select_class(&args.select)?;
        (class.to_string(), class)
    };
    match splitting_number(&class, class.crossing_number()) {
        Some((sp, cert)) => {
            let a = cert
                .a_values
                .iter()
                .map(|v| v.to_string())
                .collect::<Vec<_>>()
                .join(",");
            println!("{label}: sp = {sp} via {} (a = {a})", cert.pattern_form);
        }
        None => println!(
            "{label}: no expansion at {} crossings matches the pattern C(2a1,b1,...,2an); \
             the criterion does not apply",
            class.crossing_number()
        ),
    }
    Ok(())
}

fn cmd_verify(args: VerifyArgs) -> Result<(), CmdError> {
    if !(4..=16).contains(&args.n_max) {
        return Err(CmdError::Usage(format!(
            "--n-max must be in 4..=16, got {}",
            args.n_max
        )));
    }
    let fixture: Vec<FixtureRow> = load_fixture(&args.fixture)?
        .into_iter()
        .filter(|r| r.n <= args.n_max)
        .collect();
    let table = load_table(&args.table)?;
    let rows = tabulate_range(args.n_max).map_err(|e| CmdError::Usage(e.to_string()))?;

    let mut report = verify_fixture(&rows, &fixture);

    // id join: every fixture row's class must identify to exactly its id
    let mut joined = 0usize;
    for row in &fixture {
        let class = canonicalize(row.p, row.q).map_err(|e| CmdError::Io(e.to_string()))?;
        let ident = identify_class(&class, &table)
            .map_err(|e| CmdError::Io(format!("identification: {e}")))?;
        match ident.matched_id.as_deref() {
            Some(id) if id.eq_ignore_ascii_case(&row.id) => joined += 1,
            Some(id) => report
                .discrepancies
                .push(format!("{}: identified as {id}", row.id)),
            None if ident.ambiguity.is_empty() => report
                .discrepancies
                .push(format!("{}: unmatched in the link table", row.id)),
            None => report.discrepancies.push(format!(
                "{}: ambiguous ({})",
                row.id,
                ident.ambiguity.join(",")
            )),
        }
    }

    // splitting numbers recorded in the fixture must be reproduced exactly
    let mut sp_checked = 0usize;
    for row in &fixture {
        let Some(expected) = row.sp else { continue };
        let class = canonicalize(row.p, row.q).map_err(|e| CmdError::Io(e.to_string()))?;
        match splitting_number(&class, row.n) {
            Some((sp, _)) if sp == expected => sp_checked += 1,
            Some((sp, _)) => report
                .discrepancies
                .push(format!("{}: sp {sp}, fixture says {expected}", row.id)),
            None => report.discrepancies.push(format!(
                "{}: no pattern certificate, fixture says sp {expected}",
                row.id
            )),
        }
    }

    println!("{report}");
    println!("id join: {joined}/{} fixture rows matched", fixture.len());
    println!("splitting: {sp_checked} fixture sp values reproduced");
    if report.is_clean() {
        Ok(())
    } else {
        Err(CmdError::Mismatch)
    }
}

fn cmd_gauss(args: GaussArgs) -> Result<(), CmdError> {
    let form = parse_conway(&args.conway)?;
    let d = build_diagram(&form);
    let g = gauss_code(&d);
    println!("conway: {form}");
    println!("fraction: {}", eval_cf(&form));
    println!("pd: {}", d.to_pd_string());
    println!("gauss: {g}");
    println!("components: {}", g.component_count());
    Ok(())
}

fn cmd_bracket(args: SelectArgs) -> Result<(), CmdError> {
    let form = match (&args.conway, &args.pq) {
        (Some(c), None) => parse_conway(c)?,
        (None, Some(pq)) => {
            let (p, q) = parse_pq(pq)?;
            let class = canonicalize(p, q).map_err(|e| CmdError::Usage(e.to_string()))?;
            class.chosen_form().clone()
        }
        _ => {
            return Err(CmdError::Usage(
                "exactly one of --conway or --pq is required".into(),
            ))
        }
    };
    let d = build_diagram(&form);
    let bracket = kauffman_bracket(&d).map_err(|e| CmdError::Usage(e.to_string()))?;
    let g = gauss_code(&d);
    println!("conway: {form}");
    println!("bracket: {bracket}");
    println!("writhe: {}", writhe(&g));
    if g.component_count() == 2 {
        println!("linking: {}", linking_number(&g).expect("two components"));
        let key = identification_key(&d).map_err(|e| CmdError::Usage(e.to_string()))?;
        println!("key: {key}");
    }
    Ok(())
}

fn cmd_export(args: ExportArgs) -> Result<(), CmdError> {
    match args.what {
        ExportWhat::Fixture => print!("{}", embedded_fixture()),
        ExportWhat::PdTable => {
            let fixture: Vec<FixtureRow> = load_fixture(&None)?
                .into_iter()
                .filter(|r| r.n <= args.n_max)
                .collect();
            let text =
                render_pd_table(&fixture).map_err(|e| CmdError::Io(format!("render: {e}")))?;
            print!("{text}");
        }
    }
    Ok(())
}
