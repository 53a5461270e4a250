use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};

mod verify;

use redcone::cremona::{self, reduce, reduce_form};
use redcone::smcg::{compare_table, full_report, regenerate_tables};
use redcone::{Error, HomologyClass, SymplecticVector};

const EXIT_PARSE: u8 = 2;
const EXIT_PRECONDITION: u8 = 3;

#[derive(Parser)]
#[command(
    name = "redcone",
    about = "Chamber structure of the reduced symplectic cone of CP^2 # k(-CP^2) and its symplectomorphism invariants",
    version
)]
struct Cli {
    /// Output format
    #[arg(long, global = true, value_enum, default_value_t = Format::Plain)]
    format: Format,
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Json,
    Markdown,
    Plain,
}

#[derive(Subcommand)]
enum Command {
    /// Cremona-reduce an integral class given as "a;b1,...,bk"
    Reduce {
        class: String,
    },
    /// Full invariant report for a form given as "nu|c1,...,ck"
    Report {
        omega: String,
        /// Reduce the form first instead of rejecting non-reduced input
        #[arg(long)]
        auto_reduce: bool,
    },
    /// Regenerate the per-face table for k = 2..5 and check it against
    /// the checked-in transcription
    Table {
        k: usize,
    },
    /// Run the full verification suite
    Verify {
        /// Seed for the sampled checks
        #[arg(long, default_value_t = 0)]
        seed: u64,
    },
}

fn golden_table(k: usize) -> &'static str {
    match k {
        2 => include_str!("../tables/table_x2.md"),
        3 => include_str!("../tables/table_x3.md"),
        4 => include_str!("../tables/table_x4.md"),
        5 => include_str!("../tables/table_x5.md"),
        _ => unreachable!("validated range"),
    }
}

fn cmd_reduce(class: &str, format: Format) -> Result<u8, (u8, String)> {
    let class: HomologyClass = class
        .parse()
        .map_err(|e: Error| (EXIT_PARSE, e.to_string()))?;
    let trace = reduce(&class).map_err(|e| (EXIT_PRECONDITION, e.to_string()))?;
    match format {
        Format::Json => println!("{}", serde_json::to_string_pretty(&trace.to_json()).unwrap()),
        Format::Markdown => {
            println!("| step | move | class |");
            println!("| --- | --- | --- |");
            println!("| 0 | start | {} |", trace.input);
            let mut cur = trace.input.clone();
            for (i, mv) in trace.moves.iter().enumerate() {
                cur = cremona::apply_move(&cur, mv).expect("trace replays");
                println!("| {} | {mv} | {cur} |", i + 1);
            }
        }
        Format::Plain => {
            println!("input:   {}", trace.input);
            if trace.is_identity() {
                println!("moves:   (none, already reduced)");
            } else {
                for mv in &trace.moves {
                    println!("move:    {mv}");
                }
            }
            println!("reduced: {}", trace.output);
        }
    }
    Ok(0)
}

fn cmd_report(omega: &str, auto_reduce: bool, format: Format) -> Result<u8, (u8, String)> {
    let w: SymplecticVector = omega
        .parse()
        .map_err(|e: Error| (EXIT_PARSE, e.to_string()))?;
    let w = if let Some(violation) = cremona::reduced_violation(&w) {
        if !auto_reduce {
            return Err((
                EXIT_PRECONDITION,
                format!("form is not reduced ({violation}); pass --auto-reduce to reduce it first"),
            ));
        }
        let trace = reduce_form(&w).map_err(|e| (EXIT_PRECONDITION, e.to_string()))?;
        eprintln!(
            "note: input reduced through {} move(s) to {}",
            trace.moves.len(),
            trace.output
        );
        trace.output
    } else {
        w
    };
    let report = full_report(&w).map_err(|e| (EXIT_PRECONDITION, e.to_string()))?;
    match format {
        Format::Json => println!(
            "{}",
            serde_json::to_string_pretty(&report.to_json()).unwrap()
        ),
        Format::Markdown => print!("{}", report.to_markdown()),
        Format::Plain => print!("{}", report.to_plain()),
    }
    Ok(0)
}

fn cmd_table(k: usize, format: Format) -> Result<u8, (u8, String)> {
    if !(2..=5).contains(&k) {
        return Err((EXIT_PARSE, format!("k must be in 2..=5, got {k}")));
    }
    let doc = regenerate_tables(k).map_err(|e| (EXIT_PRECONDITION, e.to_string()))?;
    match format {
        Format::Json => println!("{}", serde_json::to_string_pretty(&doc.to_json()).unwrap()),
        Format::Markdown | Format::Plain => print!("{}", doc.to_markdown()),
    }
    let mismatches = compare_table(&doc, golden_table(k));
    if mismatches.is_empty() {
        eprintln!("table matches the checked-in transcription ({} rows)", doc.rows.len());
        Ok(0)
    } else {
        for m in &mismatches {
            eprintln!("mismatch: {m}");
        }
        Ok(1)
    }
}

fn cmd_verify(seed: u64, format: Format) -> u8 {
    let results = verify::run_suite(seed);
    let mut failed = 0usize;
    match format {
        Format::Json => {
            let rows: Vec<serde_json::Value> = results
                .iter()
                .map(|r| {
                    serde_json::json!({
                        "check": r.name,
                        "pass": r.error.is_none(),
                        "detail": r.detail,
                        "error": r.error,
                    })
                })
                .collect();
            println!(
                "{}",
                serde_json::to_string_pretty(&serde_json::Value::Array(rows)).unwrap()
            );
            failed = results.iter().filter(|r| r.error.is_some()).count();
        }
        Format::Markdown | Format::Plain => {
            for r in &results {
                match &r.error {
                    None => println!("PASS  {} — {}", r.name, r.detail),
                    Some(e) => {
                        failed += 1;
                        println!("FAIL  {} — {e}", r.name);
                    }
                }
            }
            println!(
                "{} checks, {} failed",
                results.len(),
                failed
            );
        }
    }
    u8::from(failed > 0)
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let outcome = match &cli.command {
        Command::Reduce { class } => cmd_reduce(class, cli.format),
        Command::Report { omega, auto_reduce } => cmd_report(omega, *auto_reduce, cli.format),
        Command::Table { k } => cmd_table(*k, cli.format),
        Command::Verify { seed } => Ok(cmd_verify(*seed, cli.format)),
    };
    match outcome {
        Ok(code) => ExitCode::from(code),
        Err((code, msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(code)
        }
    }
}
