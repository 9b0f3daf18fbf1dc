use std::process::ExitCode;
use std::sync::Arc;

use clap::{Parser, Subcommand};
use serde_json::json;
use symcoh::catalog::run_table1;
use symcoh::derham::SymplecticContext;
use symcoh::flexibility::{closed_two_form_space, compute_report, scan, CohomologyReport, ScanConfig};
use symcoh::relations::{verify_relations, RelationStatus, RelationSuiteResult};
use symcoh::{betti_numbers, Error, LieAlgebraSpec, SymplecticForm};

#[derive(Parser)]
#[command(name = "symcoh", version, about = "Symplectic cohomology invariants of Lie algebras")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Structure flags, Betti numbers and the dimension of closed 2-forms
    Info {
        spec: String,
        #[arg(long)]
        json: bool,
    },
    /// All invariants of a symplectic form, with the relation suite
    Compute {
        spec: String,
        #[arg(long)]
        omega: String,
        /// Restrict per-k output to one k
        #[arg(long, default_value = "all")]
        k: String,
        #[arg(long)]
        json: bool,
    },
    /// Value sets and flexibility over sampled symplectic forms
    Scan {
        spec: String,
        #[arg(long)]
        config: Option<String>,
        #[arg(long)]
        seed: Option<u64>,
        #[arg(long)]
        json: bool,
    },
    /// Reproduce the six-dimensional nilmanifold table
    Table1 {
        #[arg(long)]
        config: Option<String>,
        #[arg(long)]
        seed: Option<u64>,
        #[arg(long)]
        json: bool,
    },
    /// Relation suite only
    Verify {
        spec: String,
        #[arg(long)]
        omega: String,
        #[arg(long)]
        json: bool,
    },
}

enum Outcome {
    Ok,
    Mismatch,
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli.command) {
        Ok(Outcome::Ok) => ExitCode::SUCCESS,
        Ok(Outcome::Mismatch) => ExitCode::from(1),
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(2)
        }
    }
}

fn run(command: Command) -> Result<Outcome, Error> {
    match command {
        Command::Info { spec, json } => info(&spec, json),
        Command::Compute { spec, omega, k, json } => compute(&spec, &omega, &k, json),
        Command::Scan { spec, config, seed, json } => {
            let spec = parse_spec(&spec)?;
            let verdict = scan(&spec, &load_config(config.as_deref(), seed)?)?;
            if json {
                print_json(&verdict);
            } else {
                println!("algebra      {}", verdict.algebra);
                println!("dim S        {}", verdict.dim_s);
                println!("classes      {} (from {} samples)", verdict.distinct_classes, verdict.samples);
                if !verdict.symplectic_found {
                    println!("no symplectic structure found");
                    return Ok(Outcome::Ok);
                }
                for (name, set) in &verdict.value_sets {
                    let values: Vec<String> = set
                        .iter()
                        .map(|(v, o)| format!("{v}{}", if o.provenance == symcoh::Provenance::Witnessed { "*" } else { "" }))
                        .collect();
                    println!("  {name:<16} {{{}}}", values.join(","));
                }
                println!("c-flexible {}  f-flexible {}  h-flexible {}", verdict.c_flexible, verdict.f_flexible, verdict.h_flexible);
            }
            Ok(Outcome::Ok)
        }
        Command::Table1 { config, seed, json } => {
            let summary = run_table1(&load_config(config.as_deref(), seed)?)?;
            if json {
                print_json(&json!({
                    "passed": summary.passed(),
                    "table_reproduced": summary.table_reproduced(),
                    "classification_ok": summary.classification_ok(),
                    "summary": summary,
                }));
            } else {
                for row in &summary.rows {
                    let sets: Vec<String> = row
                        .achieved_sets
                        .iter()
                        .map(|s| format!("{{{}}}", s.iter().map(usize::to_string).collect::<Vec<_>>().join(",")))
                        .collect();
                    let mark = if row.matched() { "ok " } else { "MISMATCH" };
                    println!("{mark:<8} {:<26} {} dimS={}", row.name, sets.join(" "), row.dim_s);
                }
                for m in &summary.mismatches {
                    println!("mismatch {} {}: expected {}, computed {}", m.algebra, m.invariant, m.expected, m.achieved);
                }
                println!("rows matched        {}/{}", summary.rows_matched, summary.rows.len());
                println!(
                    "flexible c/f/h      {}/{}/{}",
                    summary.c_flexible.len(),
                    summary.f_flexible.len(),
                    summary.h_flexible.len()
                );
                println!("f iff h             {}", summary.f_iff_h);
                println!("f and h, not c      {}", summary.f_h_not_c.join(" "));
                println!("truncated by step   {}", summary.truncated_dimension_by_step);
            }
            Ok(if summary.passed() { Outcome::Ok } else { Outcome::Mismatch })
        }
        Command::Verify { spec, omega, json } => {
            let report = report(&spec, &omega)?;
            let suite = verify_relations(&report);
            if json {
                print_json(&json!({ "passed": suite.passed(), "relations": suite }));
            } else {
                print_suite(&suite);
            }
            Ok(if suite.passed() { Outcome::Ok } else { Outcome::Mismatch })
        }
    }
}

fn parse_spec(text: &str) -> Result<Arc<LieAlgebraSpec>, Error> {
    LieAlgebraSpec::parse_salamon(text).map(Arc::new)
}

fn load_config(path: Option<&str>, seed: Option<u64>) -> Result<ScanConfig, Error> {
    let mut config = match path {
        Some(p) => {
            let text = std::fs::read_to_string(p).map_err(|e| Error::Config(format!("{p}: {e}")))?;
            ScanConfig::from_json(&text)?
        }
        None => ScanConfig::default(),
    };
    if let Some(seed) = seed {
        config.seed = seed;
    }
    Ok(config)
}

fn report(spec: &str, omega: &str) -> Result<CohomologyReport, Error> {
    let form = SymplecticForm::from_text(parse_spec(spec)?, omega)?;
    compute_report(&SymplecticContext::new(form))
}

fn print_json<T: serde::Serialize>(value: &T) {
    println!("{}", serde_json::to_string_pretty(value).expect("serializable"));
}

fn join<T: ToString>(v: impl IntoIterator<Item = T>) -> String {
    v.into_iter().map(|x| x.to_string()).collect::<Vec<_>>().join(" ")
}

fn info(spec: &str, json: bool) -> Result<Outcome, Error> {
    let spec = parse_spec(spec)?;
    let flags = spec.validate();
    let betti = betti_numbers(&spec);
    let dim_s = closed_two_form_space(&spec).dim();
    if json {
        print_json(&json!({
            "algebra": spec.name(),
            "dim": spec.dim(),
            "flags": flags,
            "betti": betti,
            "dim_s": dim_s,
        }));
    } else {
        println!("algebra              {}", spec.name());
        println!("dimension            {}", spec.dim());
        println!("nilpotent            {}", flags.nilpotent);
        if let Some(s) = flags.step {
            println!("step                 {s}");
        }
        println!("solvable             {}", flags.solvable);
        println!("completely solvable  {}", flags.completely_solvable);
        println!("unimodular           {}", flags.unimodular);
        println!("betti                {}", join(&betti));
        println!("dim S                {dim_s}");
    }
    Ok(Outcome::Ok)
}

fn compute(spec: &str, omega: &str, k: &str, json: bool) -> Result<Outcome, Error> {
    let mut report = report(spec, omega)?;
    let suite = verify_relations(&report);
    if k != "all" {
        let k: usize = k.parse().map_err(|_| Error::Config(format!("--k expects a number or \"all\", found {k:?}")))?;
        if k == 0 || k > report.n {
            return Err(Error::KOutOfRange { k, n: report.n });
        }
        report.coeffective.retain(|c| c.k == k);
        report.filtered.retain(|f| f.k == k);
        report.lefschetz.retain(|l| l.k == k);
    }
    if json {
        print_json(&json!({ "report": report, "relations": suite, "passed": suite.passed() }));
    } else {
        println!("algebra   {}", report.algebra);
        println!("omega     {}", report.omega);
        println!("betti     {}", join(&report.betti));
        println!("harmonic  {}", join(&report.harmonic));
        println!("hlc       {}", report.hlc);
        for (c, f) in report.coeffective.iter().zip(&report.filtered) {
            let cs = join(c.c.iter().map(|(q, v)| format!("{q}:{v}")));
            println!("k={}  c_hat_{}={}  c: {cs}  chi={}", c.k, report.n - c.k + 1, c.c_hat, c.chi);
            println!("     c_check: {}  chi+={} chi-={}", join(&f.c_check), f.chi_plus, f.chi_minus);
        }
        if let Some(cols) = report.table_columns() {
            println!("table     {}", join(cols));
        }
        print_suite(&suite);
    }
    Ok(if suite.passed() { Outcome::Ok } else { Outcome::Mismatch })
}

fn print_suite(suite: &RelationSuiteResult) {
    let count = |s: RelationStatus| suite.checks.iter().filter(|c| c.status == s).count();
    for c in suite.failures() {
        println!("FAIL {c}");
    }
    println!(
        "relations: {} passed, {} failed, {} skipped",
        count(RelationStatus::Pass),
        count(RelationStatus::Fail),
        count(RelationStatus::Skipped)
    );
}
