use std::fs;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use wirtwidth::census::{run_census, verify_certificates, CensusError, CensusOptions};
use wirtwidth::lift::{build_profile, sweep_width};
use wirtwidth::oracle::{oracle_min_width, OracleOptions, DEFAULT_MAX_CROSSINGS};
use wirtwidth::search::ReportSummary;
use wirtwidth::{attached_sequence, Diagram, StrategyOptions, StrategyRegistry};

const USAGE: u8 = 1;
const IO: u8 = 2;
const VERIFICATION: u8 = 3;

#[derive(Parser)]
#[command(name = "wirtwidth", version, about = "Wirtinger width and Wirtinger number of knot diagrams")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Width of a single diagram.
    Compute(ComputeArgs),
    /// Widths of every diagram in a `name<TAB>gauss` file, written as CSV.
    Census(CensusArgs),
    /// Re-check the witnesses stored in a census CSV.
    Verify {
        #[arg(long)]
        input: PathBuf,
    },
    /// Exhaustive enumeration of every coloring sequence (small diagrams).
    Oracle {
        #[arg(long, allow_hyphen_values = true)]
        gauss: String,
        #[arg(long, default_value_t = DEFAULT_MAX_CROSSINGS)]
        max_crossings: usize,
    },
}

#[derive(Args)]
struct SearchArgs {
    /// auto, exact, heuristic or oracle.
    #[arg(long, default_value = "auto")]
    strategy: String,
    /// Seed count for the heuristic (default: the Wirtinger number).
    #[arg(long)]
    seeds: Option<usize>,
    /// Node budget for exact search and seed-trial budget for the heuristic.
    #[arg(long)]
    budget: Option<u64>,
}

impl SearchArgs {
    fn options(&self) -> StrategyOptions {
        let mut o = StrategyOptions {
            seeds: self.seeds,
            ..StrategyOptions::default()
        };
        if let Some(b) = self.budget {
            o.node_budget = b;
            o.enumeration_budget = b;
        }
        o
    }
}

#[derive(Args)]
struct ComputeArgs {
    #[arg(long, allow_hyphen_values = true)]
    gauss: String,
    #[arg(long, conflicts_with_all = ["heuristic", "strategy"])]
    exact: bool,
    #[arg(long, conflicts_with = "strategy")]
    heuristic: bool,
    #[command(flatten)]
    search: SearchArgs,
    /// Print the witness coloring sequence.
    #[arg(long)]
    emit_witness: bool,
    /// Print the lifted critical heights, or write them to PATH and the
    /// polyline to PATH.csv.
    #[arg(long, value_name = "PATH", num_args = 0..=1)]
    emit_profile: Option<Option<PathBuf>>,
    /// Print the report as JSON.
    #[arg(long)]
    json: bool,
}

#[derive(Args)]
struct CensusArgs {
    #[arg(long)]
    input: PathBuf,
    #[arg(long)]
    output: PathBuf,
    #[arg(long, default_value_t = 1)]
    workers: usize,
    #[command(flatten)]
    search: SearchArgs,
    /// Also write the rows as JSON.
    #[arg(long, value_name = "PATH")]
    json: Option<PathBuf>,
    /// Write 0 in the `ms` column so output is reproducible.
    #[arg(long)]
    no_timings: bool,
}

struct Failure {
    code: u8,
    message: String,
}

fn usage(message: impl ToString) -> Failure {
    Failure {
        code: USAGE,
        message: message.to_string(),
    }
}

fn io(message: impl ToString) -> Failure {
    Failure {
        code: IO,
        message: message.to_string(),
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { USAGE } else { 0 };
            let _ = e.print();
            return ExitCode::from(code);
        }
    };
    let outcome = match cli.command {
        Command::Compute(args) => compute(args),
        Command::Census(args) => census(args),
        Command::Verify { input } => verify(input),
        Command::Oracle { gauss, max_crossings } => oracle(&gauss, max_crossings),
    };
    match outcome {
        Ok(()) => ExitCode::SUCCESS,
        Err(f) => {
            eprintln!("wirtwidth: {}", f.message);
            ExitCode::from(f.code)
        }
    }
}

fn compute(args: ComputeArgs) -> Result<(), Failure> {
    let diagram = Diagram::parse(&args.gauss).map_err(usage)?;
    let name = if args.exact {
        "exact"
    } else if args.heuristic {
        "heuristic"
    } else {
        args.search.strategy.as_str()
    };
    let strategy = StrategyRegistry::default().get(name).map_err(usage)?;
    let report = strategy.compute(&diagram, &args.search.options()).map_err(usage)?;

    if args.json {
        let mut value = serde_json::to_value(ReportSummary::from(&report)).expect("plain fields");
        value["strategy"] = report.strategy.clone().into();
        value["witness"] = report.witness.to_string().into();
        println!("{}", serde_json::to_string_pretty(&value).expect("plain fields"));
    } else {
        let attached = attached_sequence(&diagram, &report.witness).expect("reported witnesses are complete");
        println!("strategy       {}", report.strategy);
        println!("crossings      {}", report.n_crossings);
        println!("strands        {}", report.n_strands);
        println!("mu             {}{}", report.mu_upper, if report.mu_exact { "" } else { " (upper bound)" });
        println!("width          {}{}", report.width_upper, if report.width_exact { "" } else { " (upper bound)" });
        println!("seeds used     {}", report.seeds_used());
        println!("attached       {:?}", attached.values);
        println!("nodes          {}", report.nodes_explored);
        println!("elapsed        {:?}", report.elapsed);
        if report.budget_exhausted {
            println!("budget exhausted; width is the best found");
        }
    }
    if args.emit_witness {
        print!("{}", report.witness);
    }
    if let Some(target) = args.emit_profile {
        let profile = build_profile(&diagram, &report.witness).map_err(usage)?;
        let sweep = sweep_width(&profile).map_err(usage)?;
        let polyline: String = profile.polyline().iter().map(|(x, h)| format!("{x},{h}\n")).collect();
        match target {
            None => {
                println!("# sweep width {sweep}");
                print!("{}", profile.heights_text());
            }
            Some(path) => {
                fs::write(&path, profile.heights_text()).map_err(io)?;
                let mut csv = path.into_os_string();
                csv.push(".csv");
                fs::write(csv, format!("position,height\n{polyline}")).map_err(io)?;
            }
        }
    }
    Ok(())
}

fn census(args: CensusArgs) -> Result<(), Failure> {
    let options = CensusOptions {
        strategy: args.search.strategy.clone(),
        strategy_options: args.search.options(),
        workers: args.workers,
        timings: !args.no_timings,
        json_mirror: args.json,
    };
    let summary = run_census(&args.input, &args.output, &options).map_err(|e| match e {
        CensusError::Strategy(e) => usage(e),
        e => io(e),
    })?;
    println!("rows {}", summary.rows);
    for (status, n) in &summary.by_status {
        println!("status {status} {n}");
    }
    for (w, n) in &summary.by_width {
        println!("width {w} {n}");
    }
    for name in &summary.four_seeds_width_32 {
        println!("four seeds, width 32: {name}");
    }
    Ok(())
}

fn verify(input: PathBuf) -> Result<(), Failure> {
    let verdicts = verify_certificates(&input).map_err(io)?;
    let mut failed = 0;
    let mut skipped = 0;
    for v in &verdicts {
        match &v.result {
            None => skipped += 1,
            Some(Ok(())) => {}
            Some(Err(e)) => {
                failed += 1;
                println!("FAIL {}: {e}", v.name);
            }
        }
    }
    println!(
        "{} rows, {} verified, {} failed, {} error rows skipped",
        verdicts.len(),
        verdicts.len() - failed - skipped,
        failed,
        skipped
    );
    if failed > 0 {
        return Err(Failure {
            code: VERIFICATION,
            message: format!("{failed} certificates failed"),
        });
    }
    Ok(())
}

fn oracle(gauss: &str, max_crossings: usize) -> Result<(), Failure> {
    let diagram = Diagram::parse(gauss).map_err(usage)?;
    let options = OracleOptions {
        max_crossings,
        ..OracleOptions::default()
    };
    let r = oracle_min_width(&diagram, options).map_err(|e| Failure {
        code: if matches!(e, wirtwidth::oracle::OracleError::TooLarge { .. }) { USAGE } else { VERIFICATION },
        message: e.to_string(),
    })?;
    println!("min width      {}", r.min_width);
    println!("min seeds      {}", r.min_seed_count);
    println!("optimal logs   {}", r.count_of_optimal_logs);
    println!("logs           {}", r.logs_enumerated);
    print!("{}", r.witness);
    Ok(())
}
