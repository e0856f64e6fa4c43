mod dot;
mod input;

use std::path::PathBuf;
use std::process::ExitCode;

use anyhow::{bail, Result};
use clap::{Parser, Subcommand, ValueEnum};
use ladderflow::enumerate::{enumerate_classes, theorem_report, Engines};
use ladderflow::ladder::{
    constructive_5flow, dp_find_flow, dp_flow_number, ladder_canonical, LadderGroup, LadderKind,
    ProverOutcome,
};
use ladderflow::signed::{canonical_form, graph_automorphisms, is_flow_admissible};
use ladderflow::solver::{find_nzflow, flow_number, verify_flow, Flow, FlowNumber};
use serde_json::{json, Value};

use input::{read_certificate, read_input, Input};

#[derive(Parser)]
#[command(
    name = "ladderflow",
    version,
    about = "Nowhere-zero flows on signed ladders"
)]
struct Cli {
    /// Pretty-print JSON output.
    #[arg(long, global = true)]
    pretty: bool,
    /// Worker threads for enumerate and report.
    #[arg(long, global = true, value_name = "N")]
    jobs: Option<usize>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, ValueEnum)]
enum Engine {
    Oracle,
    Dp,
    Constructive,
}

#[derive(Clone, Copy, ValueEnum)]
enum Kind {
    Circular,
    Moebius,
}

impl From<Kind> for LadderKind {
    fn from(k: Kind) -> Self {
        match k {
            Kind::Circular => LadderKind::Circular,
            Kind::Moebius => LadderKind::Moebius,
        }
    }
}

#[derive(Clone, Copy, ValueEnum)]
enum Format {
    Json,
    Csv,
}

#[derive(Subcommand)]
enum Command {
    /// Find a nowhere-zero flow.
    Solve {
        input: PathBuf,
        #[arg(long, value_enum, default_value = "oracle")]
        engine: Engine,
        /// Flow bound; without it the smallest k is searched.
        #[arg(long)]
        k: Option<i32>,
    },
    /// Check a flow certificate against a graph.
    Verify {
        input: PathBuf,
        certificate: PathBuf,
    },
    /// Minimum negative edges and canonical signs up to switching.
    Canon { input: PathBuf },
    /// One record per switching-isomorphism class of a ladder shape.
    Enumerate {
        #[arg(long, value_enum)]
        kind: Kind,
        #[arg(long)]
        n: usize,
        /// Keep only classes with this many negative edges.
        #[arg(long)]
        negatives: Option<usize>,
        /// Comma-separated subset of oracle, dp, prover.
        #[arg(long, value_delimiter = ',', default_value = "oracle,dp,prover")]
        engines: Vec<String>,
    },
    /// Flow numbers of every class over a range of rung counts.
    Report {
        /// Both kinds when omitted.
        #[arg(long, value_enum)]
        kind: Option<Kind>,
        #[arg(long, default_value_t = 3)]
        from: usize,
        #[arg(long, default_value_t = 6)]
        to: usize,
        #[arg(long, value_enum, default_value = "json")]
        format: Format,
    },
    /// Graphviz DOT rendering, optionally labelled with a flow.
    ExportDot {
        input: PathBuf,
        #[arg(long)]
        certificate: Option<PathBuf>,
    },
}

struct Output {
    pretty: bool,
}

impl Output {
    fn json(&self, v: &impl serde::Serialize) -> Result<()> {
        let s = if self.pretty {
            serde_json::to_string_pretty(v)?
        } else {
            serde_json::to_string(v)?
        };
        emit(&(s + "\n"))
    }
}

/// Writes to stdout; a closed pipe ends the process quietly.
fn emit(text: &str) -> Result<()> {
    use std::io::Write;
    let mut stdout = std::io::stdout().lock();
    match stdout
        .write_all(text.as_bytes())
        .and_then(|_| stdout.flush())
    {
        Err(e) if e.kind() == std::io::ErrorKind::BrokenPipe => std::process::exit(0),
        other => Ok(other?),
    }
}

fn solve(out: &Output, input: &Input, engine: Engine, k: Option<i32>) -> Result<u8> {
    let (flow, extra): (Option<Flow>, Value) = match engine {
        Engine::Oracle => {
            let g = input.graph();
            match k {
                Some(k) => (find_nzflow(&g, k)?, json!({ "k": k })),
                None => match flow_number(&g, 8)? {
                    FlowNumber::Exact { flow, .. } => (Some(flow), json!({})),
                    FlowNumber::AboveCap(cap) => (None, json!({ "above_cap": cap })),
                    FlowNumber::NotAdmissible => (None, json!({ "admissible": false })),
                },
            }
        }
        Engine::Dp => {
            let Input::Ladder(spec) = input else {
                bail!("the dp engine needs a ladder input");
            };
            let k = match k {
                Some(k) => Some(k),
                None => dp_flow_number(spec, 8)?,
            };
            match k {
                Some(k) => (dp_find_flow(spec, k)?, json!({ "k": k })),
                None => (None, json!({ "k": null })),
            }
        }
        Engine::Constructive => {
            let Input::Ladder(spec) = input else {
                bail!("the constructive engine needs a ladder input");
            };
            if k.is_some() {
                bail!("the constructive engine picks its own bound; drop --k");
            }
            match constructive_5flow(spec)? {
                ProverOutcome::Flow { flow, trace } => (Some(flow), json!({ "trace": trace })),
                ProverOutcome::NotAdmissible => (None, json!({ "admissible": false })),
            }
        }
    };
    let engine_name = match engine {
        Engine::Oracle => "oracle",
        Engine::Dp => "dp",
        Engine::Constructive => "constructive",
    };
    let mut result = json!({ "engine": engine_name, "flow": flow });
    if let (Value::Object(r), Value::Object(x)) = (&mut result, extra) {
        for (key, v) in x {
            r.entry(key).or_insert(v);
        }
    }
    out.json(&result)?;
    match &flow {
        Some(_) => Ok(0),
        None => {
            let reason = match (k, result.get("admissible")) {
                (_, Some(_)) => "not flow-admissible".to_string(),
                (Some(k), _) => format!("no nowhere-zero {k}-flow"),
                (None, _) => "no nowhere-zero flow within the search cap".to_string(),
            };
            eprintln!("{reason}");
            Ok(1)
        }
    }
}

fn verify(out: &Output, input: &Input, cert: &Flow) -> Result<u8> {
    let g = input.graph();
    let valid = verify_flow(&g, cert)?;
    out.json(&json!({ "valid": valid, "k": cert.k }))?;
    if !valid {
        eprintln!("certificate is not a nowhere-zero {}-flow", cert.k);
    }
    Ok(if valid { 0 } else { 1 })
}

fn canon(out: &Output, input: &Input) -> Result<u8> {
    let result = match input {
        Input::Ladder(spec) => {
            let c = ladder_canonical(spec)?;
            let group = LadderGroup::get(spec.kind, spec.n)?;
            json!({
                "min_negatives": c.min_negatives,
                "switching": c.switching,
                "automorphism": group.automorphisms()[c.automorphism].perm(),
                "signs": c.spec.sign_string(),
                "canonical": c.spec,
            })
        }
        Input::Graph(g) => {
            let c = canonical_form(g, &graph_automorphisms(g))?;
            json!({
                "min_negatives": c.min_negatives,
                "switching": c.witness_switching,
                "automorphism": c.witness_automorphism,
                "signs": c.representative.signs(),
                "canonical": ladderflow::signed::GraphJson::from(&c.representative),
            })
        }
    };
    out.json(&result)?;
    let g = input.graph();
    if result["min_negatives"] == 1 || !is_flow_admissible(&g)? {
        eprintln!("warning: not flow-admissible");
    }
    Ok(0)
}

fn parse_engines(names: &[String]) -> Result<Engines> {
    let mut e = Engines::NONE;
    for name in names {
        match name.trim() {
            "oracle" => e.oracle = true,
            "dp" => e.dp = true,
            "prover" => e.prover = true,
            "none" | "" => {}
            other => bail!("unknown engine {other:?} (expected oracle, dp, prover or none)"),
        }
    }
    Ok(e)
}

fn run(cli: Cli) -> Result<u8> {
    let out = Output { pretty: cli.pretty };
    match cli.command {
        Command::Solve { input, engine, k } => {
            if let Some(k) = k {
                if k < 2 {
                    bail!("--k must be at least 2");
                }
            }
            solve(&out, &read_input(&input)?, engine, k)
        }
        Command::Verify { input, certificate } => {
            let g = read_input(&input)?;
            verify(&out, &g, &read_certificate(&certificate)?)
        }
        Command::Canon { input } => canon(&out, &read_input(&input)?),
        Command::Enumerate {
            kind,
            n,
            negatives,
            engines,
        } => {
            let engines = parse_engines(&engines)?;
            let recs = enumerate_classes(kind.into(), n, negatives, engines)?;
            out.json(&recs)?;
            Ok(0)
        }
        Command::Report {
            kind,
            from,
            to,
            format,
        } => {
            if from > to {
                bail!("empty range {from}..={to}");
            }
            let kinds = match kind {
                Some(k) => vec![k.into()],
                None => vec![LadderKind::Circular, LadderKind::Moebius],
            };
            let shapes: Vec<(LadderKind, usize)> = kinds
                .into_iter()
                .flat_map(|k| (from.max(k.min_rungs())..=to).map(move |n| (k, n)))
                .collect();
            let rep = theorem_report(&shapes, Engines::ALL)?;
            match format {
                Format::Json => out.json(&rep)?,
                Format::Csv => emit(&rep.to_csv()?)?,
            }
            for f in &rep.findings {
                eprintln!("finding: {f}");
            }
            Ok(if rep.claim_holds && rep.hard_checks_hold() {
                0
            } else {
                1
            })
        }
        Command::ExportDot { input, certificate } => {
            let input = read_input(&input)?;
            let g = input.graph();
            let flow = certificate.map(|c| read_certificate(&c)).transpose()?;
            if let Some(f) = &flow {
                if f.values.len() != g.edge_count() {
                    bail!(
                        "certificate has {} values for {} edges",
                        f.values.len(),
                        g.edge_count()
                    );
                }
            }
            let names = match &input {
                Input::Ladder(spec) => {
                    let n = spec.n;
                    Some(move |v: usize| {
                        if v < n {
                            format!("v{v}")
                        } else {
                            format!("u{}", v - n)
                        }
                    })
                }
                Input::Graph(_) => None,
            };
            let names_ref = names.as_ref().map(|f| f as &dyn Fn(usize) -> String);
            emit(&dot::to_dot(&g, flow.as_ref(), names_ref))?;
            Ok(0)
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    if let Some(jobs) = cli.jobs {
        if jobs == 0 {
            eprintln!("error: --jobs must be at least 1");
            return ExitCode::from(2);
        }
        if let Err(e) = rayon::ThreadPoolBuilder::new()
            .num_threads(jobs)
            .build_global()
        {
            eprintln!("error: {e}");
            return ExitCode::from(2);
        }
    }
    match run(cli) {
        Ok(code) => ExitCode::from(code),
        Err(e) => {
            eprintln!("error: {e:#}");
            match e.downcast_ref::<ladderflow::Error>() {
                Some(ladderflow::Error::Disagreement { .. }) => ExitCode::from(1),
                _ => ExitCode::from(2),
            }
        }
    }
}
