mod report;

use std::fs;
use std::io::{self, BufWriter, Read, Write};
use std::path::PathBuf;
use std::process::ExitCode;

use anyhow::Context;
use clap::{Parser, Subcommand};
use rayon::prelude::*;
use serde_json::{json, Value};

use critmon_core::sample::{rng, sample, SampleSpec};
use critmon_core::{glue, verify_groebner, NorthcottExponents, NorthcottInstance, NumericalSemigroup};

use report::SCHEMA;

#[derive(Parser)]
#[command(name = "critmon", version, about = "Monoids and numerical semigroups of Northcott type")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Build an instance and its presentation from exponent lists.
    Construct {
        #[arg(long)]
        n: i64,
        #[arg(long, value_delimiter = ',', allow_hyphen_values = true)]
        diag: Vec<i64>,
        #[arg(long, value_delimiter = ',', allow_hyphen_values = true)]
        xn: Vec<i64>,
        #[arg(long, value_delimiter = ',', allow_hyphen_values = true)]
        mvec: Vec<i64>,
        /// Write to this file instead of stdout.
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Closed-form invariants of one instance, or of a JSON Lines batch.
    Invariants {
        /// Instance file; stdin when absent or "-".
        input: Option<PathBuf>,
        /// Cross-check every value against the brute-force oracle.
        #[arg(long)]
        oracle: bool,
        /// Include wall-clock timings (makes output non-deterministic).
        #[arg(long)]
        timings: bool,
    },
    /// Check that the defining binomials form a Groebner basis.
    Verify {
        input: Option<PathBuf>,
    },
    /// Glue two numerical semigroups: lam·S1 + mu·S2.
    Glue {
        #[arg(long, value_delimiter = ',')]
        s1: Vec<u64>,
        #[arg(long, value_delimiter = ',')]
        s2: Vec<u64>,
        #[arg(long)]
        lam: u64,
        #[arg(long)]
        mu: u64,
    },
    /// Betti elements and a minimal presentation of a numerical semigroup.
    Presentation {
        #[arg(long, value_delimiter = ',')]
        gens: Vec<u64>,
    },
    /// Emit seeded random instances as JSON Lines.
    Search {
        #[arg(long)]
        n: usize,
        #[arg(long, default_value_t = 4)]
        max_exp: u64,
        #[arg(long)]
        numerical_only: bool,
        /// Restrict mvec to all ones.
        #[arg(long)]
        all_ones: bool,
        /// Skip numerical instances whose last generator exceeds this.
        #[arg(long)]
        max_an: Option<u64>,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long, default_value_t = 10)]
        count: usize,
    },
}

/// Exit 2: bad input.
#[derive(Debug)]
struct BadInput(anyhow::Error);

impl std::fmt::Display for BadInput {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "{:#}", self.0)
    }
}

impl std::error::Error for BadInput {}

fn bad(e: impl Into<anyhow::Error>) -> anyhow::Error {
    BadInput(e.into()).into()
}

enum Status {
    Ok,
    Mismatch,
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(Status::Ok) => ExitCode::SUCCESS,
        Ok(Status::Mismatch) => ExitCode::from(3),
        Err(e) if is_broken_pipe(&e) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {e:#}");
            if e.downcast_ref::<BadInput>().is_some() {
                ExitCode::from(2)
            } else {
                ExitCode::FAILURE
            }
        }
    }
}

fn is_broken_pipe(e: &anyhow::Error) -> bool {
    e.chain().any(|c| {
        c.downcast_ref::<io::Error>().is_some_and(|io| io.kind() == io::ErrorKind::BrokenPipe)
            || c.downcast_ref::<serde_json::Error>().and_then(|j| j.io_error_kind()) == Some(io::ErrorKind::BrokenPipe)
    })
}

fn read_input(path: Option<PathBuf>) -> anyhow::Result<String> {
    let mut text = String::new();
    match path {
        Some(p) if p.as_os_str() != "-" => {
            text = fs::read_to_string(&p).with_context(|| format!("reading {}", p.display())).map_err(bad)?;
        }
        _ => {
            io::stdin().read_to_string(&mut text).map_err(bad)?;
        }
    }
    Ok(text)
}

/// One JSON document, or one instance per non-empty line.
fn parse_instances(text: &str) -> anyhow::Result<(Vec<NorthcottInstance>, bool)> {
    let lines: Vec<&str> = text.lines().map(str::trim).filter(|l| !l.is_empty()).collect();
    let single = match serde_json::from_str::<NorthcottExponents>(text) {
        Ok(e) => return Ok((vec![e.validate().map_err(bad)?], false)),
        Err(e) => e,
    };
    if lines.len() < 2 {
        return Err(bad(anyhow::anyhow!("invalid instance JSON: {single}")));
    }
    let mut out = Vec::with_capacity(lines.len());
    for (i, line) in lines.iter().enumerate() {
        let e: NorthcottExponents = serde_json::from_str(line)
            .with_context(|| format!("line {}", i + 1))
            .map_err(bad)?;
        out.push(e.validate().with_context(|| format!("line {}", i + 1)).map_err(bad)?);
    }
    Ok((out, true))
}

fn print_doc(v: &Value) -> anyhow::Result<()> {
    let stdout = io::stdout();
    let mut w = stdout.lock();
    serde_json::to_writer_pretty(&mut w, v)?;
    writeln!(w)?;
    Ok(())
}

fn thread_pool() -> anyhow::Result<rayon::ThreadPool> {
    let mut b = rayon::ThreadPoolBuilder::new();
    if let Ok(v) = std::env::var("CRITMON_THREADS") {
        let n: usize = v.parse().map_err(|_| bad(anyhow::anyhow!("CRITMON_THREADS must be a positive integer")))?;
        b = b.num_threads(n.max(1));
    }
    Ok(b.build()?)
}

fn run(cli: Cli) -> anyhow::Result<Status> {
    match cli.command {
        Command::Construct { n, diag, xn, mvec, out } => {
            let inst = NorthcottExponents { n, diag, xn, mvec }.validate().map_err(bad)?;
            let doc = report::construct(&inst)?;
            match out {
                Some(p) => fs::write(&p, serde_json::to_string_pretty(&doc)? + "\n")
                    .with_context(|| format!("writing {}", p.display()))?,
                None => print_doc(&doc)?,
            }
            Ok(Status::Ok)
        }
        Command::Invariants { input, oracle, timings } => {
            let (instances, batch) = parse_instances(&read_input(input)?)?;
            let pool = thread_pool()?;
            let reports: Vec<anyhow::Result<report::RunReport>> = pool.install(|| {
                instances
                    .par_iter()
                    .map(|inst| report::invariants(inst, oracle, timings))
                    .collect()
            });
            let mut mismatch = false;
            if batch {
                let stdout = io::stdout();
                let mut w = BufWriter::new(stdout.lock());
                for r in reports {
                    let r = r?;
                    mismatch |= r.mismatch;
                    serde_json::to_writer(&mut w, &r.value)?;
                    writeln!(w)?;
                }
                w.flush()?;
            } else {
                let r = reports.into_iter().next().unwrap()?;
                mismatch = r.mismatch;
                print_doc(&r.value)?;
            }
            Ok(if mismatch { Status::Mismatch } else { Status::Ok })
        }
        Command::Verify { input } => {
            let (instances, _) = parse_instances(&read_input(input)?)?;
            let mut all = true;
            let docs: Vec<Value> = instances
                .iter()
                .map(|inst| {
                    let r = verify_groebner(inst)?;
                    let matches = r.initial_gens == r.expected_initial_gens;
                    all &= r.is_basis && matches;
                    Ok(json!({
                        "schema": SCHEMA,
                        "instance": report::instance_json(&inst.to_exponents()),
                        "is_basis": r.is_basis,
                        "initial_gens": r.initial_gens.iter().map(ToString::to_string).collect::<Vec<_>>(),
                        "initial_gens_match": matches,
                        "pairs_checked": r.pairs_checked,
                        "coprime_pairs": r.coprime_pairs,
                        "first_failure": r.first_failure,
                    }))
                })
                .collect::<anyhow::Result<_>>()?;
            if docs.len() == 1 {
                print_doc(&docs[0])?;
            } else {
                let stdout = io::stdout();
                let mut w = BufWriter::new(stdout.lock());
                for d in &docs {
                    serde_json::to_writer(&mut w, d)?;
                    writeln!(w)?;
                }
                w.flush()?;
            }
            Ok(if all { Status::Ok } else { Status::Mismatch })
        }
        Command::Glue { s1, s2, lam, mu } => {
            let a = NumericalSemigroup::from_generators(&s1).context("S1").map_err(bad)?;
            let b = NumericalSemigroup::from_generators(&s2).context("S2").map_err(bad)?;
            let g = glue(&a, &b, lam, mu).map_err(bad)?;
            let p = g.semigroup.betti_and_presentation();
            let mut doc = report::semigroup_summary(&g.semigroup);
            let obj = doc.as_object_mut().unwrap();
            obj.insert("schema".into(), json!(SCHEMA));
            obj.insert("gluing_relation".into(), report::relation_json(&g.relation));
            obj.insert("uniquely_presented".into(), json!(p.uniquely_presented));
            obj.insert(
                "gluings".into(),
                json!(g
                    .semigroup
                    .detect_gluing()
                    .iter()
                    .map(|d| json!([d.first, d.second]))
                    .collect::<Vec<_>>()),
            );
            print_doc(&doc)?;
            Ok(Status::Ok)
        }
        Command::Presentation { gens } => {
            let s = NumericalSemigroup::from_generators(&gens).map_err(bad)?;
            let p = s.betti_and_presentation();
            let dc = critmon_core::numsgp::delta_and_catenary_of(&p);
            let mut doc = report::semigroup_presentation_json(&p);
            let obj = doc.as_object_mut().unwrap();
            obj.insert("schema".into(), json!(SCHEMA));
            obj.insert("generators".into(), json!(s.minimal_generators()));
            obj.insert("delta_min".into(), json!(dc.delta_min));
            obj.insert("delta_max".into(), json!(dc.delta_max));
            obj.insert("catenary".into(), json!(dc.catenary));
            obj.insert(
                "gluings".into(),
                json!(s.detect_gluing().iter().map(|d| json!([d.first, d.second])).collect::<Vec<_>>()),
            );
            print_doc(&doc)?;
            Ok(Status::Ok)
        }
        Command::Search { n, max_exp, numerical_only, all_ones, max_an, seed, count } => {
            if n < 3 {
                return Err(bad(anyhow::anyhow!("n must be at least 3, got {n}")));
            }
            if max_exp == 0 {
                return Err(bad(anyhow::anyhow!("max-exp must be positive")));
            }
            let mut spec = SampleSpec::new(n..=n, max_exp);
            spec.numerical_only = numerical_only;
            spec.mvec_all_ones = all_ones;
            spec.max_an = max_an;
            let mut r = rng(seed);
            let stdout = io::stdout();
            let mut w = BufWriter::new(stdout.lock());
            for _ in 0..count {
                let (inst, pres) = sample(&mut r, &spec, 1_000_000)
                    .ok_or_else(|| bad(anyhow::anyhow!("no instance matches the filters")))?;
                let mut line = report::instance_json(&inst.to_exponents());
                let obj = line.as_object_mut().unwrap();
                obj.insert("schema".into(), json!(SCHEMA));
                obj.insert("is_numerical".into(), json!(pres.is_numerical));
                obj.insert("generators".into(), report::bigs(&pres.weight()));
                serde_json::to_writer(&mut w, &line)?;
                writeln!(w)?;
            }
            w.flush()?;
            Ok(Status::Ok)
        }
    }
}
