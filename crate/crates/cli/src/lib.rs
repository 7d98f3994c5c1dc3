//! Command-line front end. [`run`] takes the argument vector and explicit
//! streams so it can be driven in-process.
//!
//! Exit codes: 0 success, 1 usage or input error, 2 verification found
//! violations, 3 resource cap exceeded.

use std::fs::File;
use std::io::{BufRead, BufReader, Read, Write};

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};
use toughcycle::closure::t_closure;
use toughcycle::codec::{encode_edgelist, encode_graph6, Format, GraphRecord, GraphStream};
use toughcycle::conditions::{evaluate, Condition};
use toughcycle::families::{self, FamilyKind};
use toughcycle::hamilton::{hamiltonian_cycle_with, Engine, HamiltonConfig, DEFAULT_BUDGET};
use toughcycle::harness::{verify_theorem, RandomModel, Source, TheoremId, VerifyConfig};
use toughcycle::toughness::{is_t_tough, parse_rational, toughness};
use toughcycle::{DegreeSequence, Error};

pub const EXIT_OK: i32 = 0;
pub const EXIT_INPUT: i32 = 1;
pub const EXIT_VIOLATIONS: i32 = 2;
pub const EXIT_RESOURCE: i32 = 3;

#[derive(Debug, Parser)]
#[command(
    name = "toughcycle",
    version,
    about = "Hamiltonicity, toughness and degree conditions for small graphs"
)]
struct Cli {
    /// Input format; detected from the first line when omitted.
    #[arg(long, global = true, value_parser = parse_format)]
    format: Option<Format>,

    /// Output mode. `cond` and `verify` default to json, the rest to human.
    #[arg(long, global = true, value_enum)]
    output: Option<Output>,

    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Output {
    Json,
    Human,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Decide Hamiltonicity of every graph in the input.
    Ham {
        #[command(flatten)]
        input: Input,
        /// Also print a Hamiltonian cycle.
        #[arg(long)]
        certificate: bool,
        #[arg(long, value_enum, default_value = "auto")]
        engine: EngineArg,
        /// Node expansions allowed to the backtracking engine.
        #[arg(long, default_value_t = DEFAULT_BUDGET)]
        budget: u64,
    },
    /// Exact toughness, or a decision against a threshold.
    Tough {
        #[command(flatten)]
        input: Input,
        /// Decide whether the graph is t-tough for this p/q.
        #[arg(long, value_name = "P/Q")]
        decide: Option<String>,
    },
    /// Degree-sum closure at threshold n - t.
    Closure {
        #[command(flatten)]
        input: Input,
        #[arg(long)]
        t: usize,
        /// Print the added edges in order.
        #[arg(long)]
        trace: bool,
    },
    /// Evaluate a degree-sequence condition.
    Cond {
        #[command(flatten)]
        input: Input,
        #[arg(long, value_parser = parse_condition)]
        which: Condition,
        #[arg(long, default_value_t = 0)]
        t: usize,
    },
    /// Generate a member of a named family.
    Gen {
        #[arg(long, value_parser = parse_family)]
        family: FamilyKind,
        #[arg(long)]
        n: Option<usize>,
        #[arg(long)]
        a: Option<usize>,
        #[arg(long)]
        b: Option<usize>,
    },
    /// Run a theorem check over a graph source.
    Verify(VerifyArgs),
}

#[derive(Debug, Args)]
struct Input {
    /// Input file, or "-" for stdin.
    #[arg(value_name = "INPUT", default_value = "-")]
    path: String,
}

#[derive(Debug, Clone, Copy, ValueEnum)]
enum EngineArg {
    Auto,
    Dp,
    Backtrack,
}

#[derive(Debug, Args)]
struct VerifyArgs {
    #[arg(long, value_parser = parse_theorem)]
    theorem: TheoremId,
    /// Orders to check: "7", "3-6" or "10,12,14".
    #[arg(long, value_parser = parse_orders)]
    n: Orders,
    #[arg(long)]
    t: Option<usize>,
    /// builtin, stream, family:<id>, random:uniform or random:dense.
    #[arg(long, default_value = "builtin")]
    source: String,
    /// Graph stream read by `--source stream`.
    #[arg(long, default_value = "-")]
    input: String,
    /// Sample count for random sources.
    #[arg(long, default_value_t = 1000)]
    samples: usize,
    #[arg(long)]
    seed: Option<u64>,
    #[arg(long, default_value_t = 1)]
    jobs: usize,
    /// Stop after this many instances; the report is then marked incomplete.
    #[arg(long)]
    max_instances: Option<u64>,
}

#[derive(Debug, Clone)]
struct Orders(Vec<usize>);

fn parse_format(s: &str) -> Result<Format, String> {
    s.parse().map_err(|e: Error| e.to_string())
}

fn parse_condition(s: &str) -> Result<Condition, String> {
    s.parse().map_err(|e: Error| e.to_string())
}

fn parse_family(s: &str) -> Result<FamilyKind, String> {
    s.parse().map_err(|e: Error| e.to_string())
}

fn parse_theorem(s: &str) -> Result<TheoremId, String> {
    s.parse().map_err(|e: Error| e.to_string())
}

fn parse_orders(s: &str) -> Result<Orders, String> {
    let mut out = Vec::new();
    for part in s.split(',') {
        let part = part.trim();
        let num = |t: &str| t.trim().parse::<usize>().map_err(|_| format!("bad order '{t}'"));
        match part.split_once('-') {
            Some((lo, hi)) => {
                let (lo, hi) = (num(lo)?, num(hi)?);
                if lo > hi {
                    return Err(format!("empty range '{part}'"));
                }
                out.extend(lo..=hi);
            }
            None => out.push(num(part)?),
        }
    }
    out.sort_unstable();
    out.dedup();
    Ok(Orders(out))
}

enum Failure {
    Usage(String),
    Lib(Error),
    Io(std::io::Error),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        Failure::Lib(e)
    }
}

impl From<std::io::Error> for Failure {
    fn from(e: std::io::Error) -> Self {
        Failure::Io(e)
    }
}

/// Parses `argv` (including the program name), runs the subcommand and
/// returns the exit code.
pub fn run<I, T>(argv: I, stdin: &mut dyn Read, stdout: &mut dyn Write, stderr: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(argv) {
        Ok(cli) => cli,
        Err(e) => {
            if e.use_stderr() {
                let _ = write!(stderr, "{}", e.render());
                return EXIT_INPUT;
            }
            let _ = write!(stdout, "{}", e.render());
            return EXIT_OK;
        }
    };
    let result = dispatch(&cli, stdin, stdout, stderr);
    let _ = stdout.flush();
    match result {
        Ok(code) => code,
        Err(Failure::Usage(msg)) => {
            let _ = writeln!(stderr, "error: {msg}");
            EXIT_INPUT
        }
        Err(Failure::Lib(e)) => {
            let _ = writeln!(stderr, "error: {e}");
            if e.is_resource_cap() {
                EXIT_RESOURCE
            } else {
                EXIT_INPUT
            }
        }
        Err(Failure::Io(e)) if e.kind() == std::io::ErrorKind::BrokenPipe => EXIT_OK,
        Err(Failure::Io(e)) => {
            let _ = writeln!(stderr, "error: {e}");
            EXIT_INPUT
        }
    }
}

fn open(path: &str, stdin: &mut dyn Read) -> Result<Box<dyn BufRead + Send>, Failure> {
    if path == "-" {
        let mut buf = Vec::new();
        stdin.read_to_end(&mut buf)?;
        Ok(Box::new(std::io::Cursor::new(buf)))
    } else {
        let file = File::open(path).map_err(|e| Failure::Usage(format!("{path}: {e}")))?;
        Ok(Box::new(BufReader::new(file)))
    }
}

fn records(
    path: &str,
    format: Option<Format>,
    stdin: &mut dyn Read,
) -> Result<GraphStream<Box<dyn BufRead + Send>>, Failure> {
    Ok(GraphStream::new(open(path, stdin)?, format))
}

fn emit(out: &mut dyn Write, value: &Value) -> Result<(), Failure> {
    serde_json::to_writer(&mut *out, value).map_err(std::io::Error::from)?;
    out.write_all(b"\n")?;
    Ok(())
}

fn dispatch(cli: &Cli, stdin: &mut dyn Read, out: &mut dyn Write, err: &mut dyn Write) -> Result<i32, Failure> {
    let json_default = matches!(cli.command, Command::Cond { .. } | Command::Verify(_));
    let json = cli.output.map_or(json_default, |o| o == Output::Json);

    match &cli.command {
        Command::Ham {
            input,
            certificate,
            engine,
            budget,
        } => {
            let config = HamiltonConfig {
                engine: match engine {
                    EngineArg::Auto => Engine::Auto,
                    EngineArg::Dp => Engine::Dp,
                    EngineArg::Backtrack => Engine::Backtrack,
                },
                budget: *budget,
            };
            for rec in records(&input.path, cli.format, stdin)? {
                let GraphRecord { graph, .. } = rec?;
                let cycle = hamiltonian_cycle_with(&graph, &config)?;
                let order = cycle.as_ref().map(|c| c.order().to_vec());
                if json {
                    let mut v = json!({ "n": graph.order(), "hamiltonian": order.is_some() });
                    if *certificate {
                        v["cycle"] = json!(order);
                    }
                    emit(out, &v)?;
                } else {
                    match order {
                        Some(order) if *certificate => {
                            let cycle: Vec<String> = order.iter().map(usize::to_string).collect();
                            writeln!(out, "hamiltonian: {}", cycle.join(" "))?;
                        }
                        Some(_) => writeln!(out, "hamiltonian")?,
                        None => writeln!(out, "not hamiltonian")?,
                    }
                }
            }
            Ok(EXIT_OK)
        }
        Command::Tough { input, decide } => {
            let threshold = decide.as_deref().map(parse_rational).transpose()?;
            for rec in records(&input.path, cli.format, stdin)? {
                let graph = rec?.graph;
                match threshold {
                    Some(t) => {
                        let tough = is_t_tough(&graph, t)?;
                        if json {
                            emit(
                                out,
                                &json!({ "n": graph.order(), "t": format!("{}/{}", t.numer(), t.denom()), "tough": tough }),
                            )?;
                        } else {
                            writeln!(out, "{}", if tough { "tough" } else { "not tough" })?;
                        }
                    }
                    None => {
                        let res = toughness(&graph)?;
                        if json {
                            emit(
                                out,
                                &json!({
                                    "n": graph.order(),
                                    "toughness": res.value,
                                    "cutset": res.witness.as_ref().map(|w| &w.cutset),
                                    "components": res.witness.as_ref().map(|w| w.component_count),
                                }),
                            )?;
                        } else {
                            writeln!(out, "{}", res.value)?;
                        }
                    }
                }
            }
            Ok(EXIT_OK)
        }
        Command::Closure { input, t, trace } => {
            for rec in records(&input.path, cli.format, stdin)? {
                let graph = rec?.graph;
                let (closed, tr) = t_closure(&graph, *t);
                let g6 = encode_graph6(&closed)?;
                if json {
                    let mut v = json!({
                        "graph6": g6,
                        "threshold": tr.threshold,
                        "added": tr.added_edges.len(),
                    });
                    if *trace {
                        v["added_edges"] = json!(tr.added_edges);
                    }
                    emit(out, &v)?;
                } else {
                    writeln!(out, "{g6}")?;
                    if *trace {
                        tr.write_json_lines(&mut *out)?;
                    }
                }
            }
            Ok(EXIT_OK)
        }
        Command::Cond { input, which, t } => {
            for rec in records(&input.path, cli.format, stdin)? {
                let graph = rec?.graph;
                let verdict = evaluate(*which, &DegreeSequence::of(&graph), *t)?;
                if json {
                    writeln!(
                        out,
                        "{}",
                        serde_json::to_string(&verdict).map_err(std::io::Error::from)?
                    )?;
                } else {
                    match &verdict.violation {
                        None => writeln!(out, "holds")?,
                        Some(v) => match v.j {
                            Some(j) => writeln!(out, "fails at i = {}, j = {j}", v.i)?,
                            None => writeln!(out, "fails at i = {}", v.i)?,
                        },
                    }
                }
            }
            Ok(EXIT_OK)
        }
        Command::Gen { family, n, a, b } => {
            let n = n.or(match (a, b) {
                (Some(a), Some(b)) => Some(a + b),
                _ => None,
            });
            let n = n.ok_or_else(|| Failure::Usage("--n is required".into()))?;
            let fam = families::generate(*family, n, *a, *b)?;
            let encoded = match cli.format {
                Some(Format::Edgelist) => encode_edgelist(&fam.graph),
                Some(Format::Sparse6) => return Err(Failure::Usage("gen writes graph6 or edgelist".into())),
                _ => format!("{}\n", encode_graph6(&fam.graph)?),
            };
            let meta = serde_json::to_value(&fam).map_err(std::io::Error::from)?;
            if json {
                let mut v = meta;
                v[if cli.format == Some(Format::Edgelist) {
                    "edgelist"
                } else {
                    "graph6"
                }] = json!(encoded.trim_end_matches('\n'));
                emit(out, &v)?;
            } else {
                out.write_all(encoded.as_bytes())?;
                emit(err, &meta)?;
            }
            Ok(EXIT_OK)
        }
        Command::Verify(args) => verify(args, cli.format, json, stdin, out, err),
    }
}

fn verify(
    args: &VerifyArgs,
    format: Option<Format>,
    json: bool,
    stdin: &mut dyn Read,
    out: &mut dyn Write,
    err: &mut dyn Write,
) -> Result<i32, Failure> {
    let mut config = VerifyConfig::new(args.n.0.iter().copied());
    config.t = args.t;
    config.seed = args.seed;
    config.jobs = args.jobs.max(1);
    config.max_instances = args.max_instances;

    let source = match args.source.as_str() {
        "builtin" => Source::Builtin,
        "stream" => Source::Stream(Box::new(records(&args.input, format, stdin)?)),
        "random:uniform" | "random" => Source::Random {
            samples: args.samples,
            model: RandomModel::Uniform,
        },
        "random:dense" => Source::Random {
            samples: args.samples,
            model: RandomModel::Dense,
        },
        other => match other.strip_prefix("family:") {
            Some(id) => Source::Family(id.parse()?),
            None => return Err(Failure::Usage(format!("unknown source '{other}'"))),
        },
    };

    let report = verify_theorem(args.theorem, &config, source)?;
    if json {
        writeln!(out, "{}", report.to_json())?;
    } else {
        writeln!(out, "{}", report.summary())?;
        for w in &report.violations {
            writeln!(out, "{}", serde_json::to_string(w).map_err(std::io::Error::from)?)?;
        }
    }
    writeln!(err, "{}", report.summary())?;
    Ok(if report.violation_count > 0 {
        EXIT_VIOLATIONS
    } else {
        EXIT_OK
    })
}
