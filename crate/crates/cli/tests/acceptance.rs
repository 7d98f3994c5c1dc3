//! Acceptance suite. Prints one PASS/FAIL line per criterion and exits
//! nonzero if any criterion fails.

use std::process::Command;
use std::time::{Duration, Instant};

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde_json::Value;

use toughcycle::closure::{degree_sum_closure, degree_sum_closure_by};
use toughcycle::codec::{encode_graph6, parse_graph6};
use toughcycle::conditions::strengthened_condition;
use toughcycle::families;
use toughcycle::hamilton::{is_hamiltonian, is_hamiltonian_with, Engine, HamiltonConfig};
use toughcycle::harness::{enumerate_labeled_graphs, verify_theorem, RandomModel, Source, TheoremId, VerifyConfig};
use toughcycle::toughness::{is_t_tough, toughness, toughness_definitional};
use toughcycle::{DegreeSequence, Graph, Rational, Toughness};

const BIN: &str = env!("CARGO_BIN_EXE_toughcycle");

const LIMIT_COUNTEREXAMPLE: Duration = Duration::from_secs(60);
const LIMIT_THM8: Duration = Duration::from_secs(5 * 60);
const LIMIT_THM5: Duration = Duration::from_secs(30 * 60);
const MIN_TOUGH_SAMPLES: u64 = 1_000;
const MIN_RANDOM_ENGINE_SAMPLES: usize = 100_000;
const CLOSURE_GRAPHS: usize = 1_000;
const CLOSURE_ORDERS: usize = 5;

type Outcome = Result<String, String>;

fn ensure(cond: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg())
    }
}

struct VerifyRun {
    stdout: String,
    report: Value,
    code: i32,
    elapsed: Duration,
}

fn run_verify(args: &[&str]) -> Result<VerifyRun, String> {
    let start = Instant::now();
    let out = Command::new(BIN)
        .arg("verify")
        .args(args)
        .output()
        .map_err(|e| format!("spawn: {e}"))?;
    let elapsed = start.elapsed();
    let stdout = String::from_utf8(out.stdout).map_err(|e| e.to_string())?;
    let report: Value = serde_json::from_str(stdout.trim()).map_err(|e| format!("report: {e}: {stdout}"))?;
    Ok(VerifyRun {
        stdout,
        report,
        code: out.status.code().unwrap_or(-1),
        elapsed,
    })
}

fn zero_violation_run(args: &[&str], instances: u64, limit: Duration) -> Result<VerifyRun, String> {
    let run = run_verify(args)?;
    let r = &run.report;
    ensure(run.code == 0, || format!("exit code {}", run.code))?;
    ensure(r["instances_checked"] == instances, || {
        format!("instances {} != {instances}", r["instances_checked"])
    })?;
    ensure(r["violation_count"] == 0, || {
        format!("violations {}", r["violation_count"])
    })?;
    ensure(r["complete"] == true, || "report incomplete".into())?;
    ensure(run.elapsed < limit, || {
        format!("took {:.1?}, limit {limit:?}", run.elapsed)
    })?;
    Ok(run)
}

fn labeled_count(orders: std::ops::RangeInclusive<usize>) -> u64 {
    orders.map(|n| 1u64 << (n * n.saturating_sub(1) / 2)).sum()
}

fn counterexample_family() -> Outcome {
    let start = Instant::now();
    let one = Toughness::Finite(Rational::from_integer(1));
    for n in 7..=14 {
        let fam = families::counterexample_graph(n).map_err(|e| e.to_string())?;
        let g = &fam.graph;
        let (x, y) = (fam.label("x").unwrap(), fam.label("y").unwrap());
        ensure(!g.has_edge(x, y), || format!("n={n}: x ~ y"))?;
        ensure(g.degree(x) + g.degree(y) == n - 1, || format!("n={n}: degree sum"))?;
        ensure(!is_hamiltonian(g).unwrap(), || format!("n={n}: G Hamiltonian"))?;
        ensure(is_hamiltonian(&g.add_edge(x, y).unwrap()).unwrap(), || {
            format!("n={n}: G+xy not Hamiltonian")
        })?;
        let tau = toughness(g).map_err(|e| e.to_string())?.value;
        ensure(tau == one, || format!("n={n}: toughness {tau}"))?;
    }
    let took = start.elapsed();
    ensure(took < LIMIT_COUNTEREXAMPLE, || format!("took {took:.1?}"))?;
    Ok(format!("n = 7..14, toughness 1/1 each, {took:.2?}"))
}

fn thm8(store: &mut Vec<(Vec<&'static str>, String)>) -> Outcome {
    let args = vec!["--theorem", "thm8_small_n", "--n", "3-6", "--jobs", "1"];
    let run = zero_violation_run(&args, 33_864, LIMIT_THM8)?;
    let msg = format!(
        "33864 graphs, {} hypothesis hits, 0 violations, {:.2?}",
        run.report["hypothesis_hits"], run.elapsed
    );
    store.push((args, run.stdout));
    Ok(msg)
}

fn thm5(store: &mut Vec<(Vec<&'static str>, String)>) -> Outcome {
    let args = vec!["--theorem", "thm5_bc_closure", "--n", "0-7", "--jobs", "1"];
    let run = zero_violation_run(&args, labeled_count(0..=7), LIMIT_THM5)?;
    let msg = format!(
        "{} graphs on n <= 7, 0 violations, {:.2?}",
        labeled_count(0..=7),
        run.elapsed
    );
    store.push((args, run.stdout));
    Ok(msg)
}

fn thm1(store: &mut Vec<(Vec<&'static str>, String)>) -> Outcome {
    let args = vec!["--theorem", "thm1_chvatal", "--n", "3-7", "--jobs", "1"];
    let run = zero_violation_run(&args, labeled_count(3..=7), LIMIT_THM5)?;
    let msg = format!(
        "{} graphs, {} pass the condition, 0 violations, {:.2?}",
        labeled_count(3..=7),
        run.report["hypothesis_hits"],
        run.elapsed
    );
    store.push((args, run.stdout));
    Ok(msg)
}

fn thm6() -> Outcome {
    let config = VerifyConfig::new(10..=14).with_t(4).with_seed(20_260_101);
    let random = verify_theorem(
        TheoremId::Thm6TClosureEdge,
        &config,
        Source::Random {
            samples: 2_400,
            model: RandomModel::Dense,
        },
    )
    .map_err(|e| e.to_string())?;
    let family = verify_theorem(
        TheoremId::Thm6TClosureEdge,
        &config,
        Source::Family(families::FamilyKind::CompleteMinusPerfectMatching),
    )
    .map_err(|e| e.to_string())?;
    let hits = random.hypothesis_hits + family.hypothesis_hits;
    let violations = random.violation_count + family.violation_count;
    ensure(violations == 0, || format!("{violations} violations"))?;
    ensure(hits >= MIN_TOUGH_SAMPLES, || {
        format!("only {hits} verified 4-tough samples")
    })?;
    Ok(format!(
        "{hits} verified 4-tough graphs with a qualifying pair out of {}, 0 violations",
        random.instances_checked + family.instances_checked
    ))
}

fn thm4_dense() -> Outcome {
    for n in [10usize, 12, 14, 16] {
        let g = families::complete_minus_perfect_matching(n).map_err(|e| e.to_string())?;
        let expected = Rational::new(n as i64 - 2, 2);
        if n <= 12 {
            let tau = toughness(&g).map_err(|e| e.to_string())?.value;
            ensure(tau == Toughness::Finite(expected), || format!("n={n}: toughness {tau}"))?;
        } else {
            ensure(is_t_tough(&g, Rational::from_integer(4)).unwrap(), || {
                format!("n={n}: not 4-tough")
            })?;
            ensure(is_t_tough(&g, expected).unwrap(), || {
                format!("n={n}: not (n-2)/2-tough")
            })?;
            let above = expected + Rational::new(1, 1000);
            ensure(!is_t_tough(&g, above).unwrap(), || {
                format!("n={n}: tougher than (n-2)/2")
            })?;
        }
        ensure(
            strengthened_condition(&DegreeSequence::of(&g), 4).unwrap().holds,
            || format!("n={n}: condition fails"),
        )?;
        ensure(is_hamiltonian(&g).unwrap(), || format!("n={n}: not Hamiltonian"))?;
    }
    let report = verify_theorem(
        TheoremId::Thm4Strengthened,
        &VerifyConfig::new([10, 12, 14, 16]),
        Source::Family(families::FamilyKind::CompleteMinusPerfectMatching),
    )
    .map_err(|e| e.to_string())?;
    ensure(report.hypothesis_hits == 4 && report.violation_count == 0, || {
        format!("{report:?}")
    })?;
    Ok("n = 10, 12, 14, 16: toughness (n-2)/2, condition holds, Hamiltonian".into())
}

fn random_graph(rng: &mut ChaCha8Rng, n: usize, p: f64) -> Graph {
    let mut edges = Vec::new();
    for u in 0..n {
        for v in u + 1..n {
            if rng.random_bool(p) {
                edges.push((u, v));
            }
        }
    }
    Graph::from_edges(n, edges).unwrap()
}

fn oracles() -> Outcome {
    let dp = HamiltonConfig::with_engine(Engine::Dp);
    let bt = HamiltonConfig::with_engine(Engine::Backtrack);
    let mut exhaustive = 0u64;
    for n in 0..=7 {
        for g in enumerate_labeled_graphs(n).unwrap() {
            let a = is_hamiltonian_with(&g, &dp).unwrap();
            let b = is_hamiltonian_with(&g, &bt).unwrap();
            ensure(a == b, || format!("engines disagree on {}", encode_graph6(&g).unwrap()))?;
            let fast = toughness(&g).unwrap().value;
            let slow = toughness_definitional(&g).unwrap().value;
            ensure(fast == slow, || {
                format!("toughness disagrees on {}", encode_graph6(&g).unwrap())
            })?;
            exhaustive += 1;
        }
    }
    let mut rng = ChaCha8Rng::seed_from_u64(7);
    for _ in 0..MIN_RANDOM_ENGINE_SAMPLES {
        let n = rng.random_range(8..=9);
        let p = rng.random_range(0.25..0.75);
        let g = random_graph(&mut rng, n, p);
        let a = is_hamiltonian_with(&g, &dp).unwrap();
        let b = is_hamiltonian_with(&g, &bt).unwrap();
        ensure(a == b, || format!("engines disagree on {}", encode_graph6(&g).unwrap()))?;
    }
    Ok(format!(
        "{exhaustive} exhaustive (engines and toughness) + {MIN_RANDOM_ENGINE_SAMPLES} random on n = 8..9, 0 disagreements"
    ))
}

fn closure_orders() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(8);
    for _ in 0..CLOSURE_GRAPHS {
        let n = rng.random_range(1..=12);
        let p = rng.random_range(0.1..0.9);
        let g = random_graph(&mut rng, n, p);
        let threshold = n.saturating_sub(rng.random_range(0..=4));
        let reference = degree_sum_closure(&g, threshold).0;
        for _ in 0..CLOSURE_ORDERS {
            // A random priority over all pairs fixes one addition order.
            let mut priority: Vec<u32> = (0..n * n).map(|i| i as u32).collect();
            priority.shuffle(&mut rng);
            let (c, _) = degree_sum_closure_by(&g, threshold, |cands| {
                (0..cands.len())
                    .min_by_key(|&k| priority[cands[k].0 * n + cands[k].1])
                    .unwrap()
            });
            ensure(c == reference, || {
                format!("order dependence on {}", encode_graph6(&g).unwrap())
            })?;
        }
        ensure(degree_sum_closure(&reference, threshold).0 == reference, || {
            format!("not idempotent on {}", encode_graph6(&g).unwrap())
        })?;
    }
    Ok(format!(
        "{CLOSURE_GRAPHS} graphs x {CLOSURE_ORDERS} orders, identical fixpoints, idempotent"
    ))
}

fn codec() -> Outcome {
    let mut count = 0u64;
    for n in 0..=7 {
        for g in enumerate_labeled_graphs(n).unwrap() {
            let s = encode_graph6(&g).unwrap();
            ensure(parse_graph6(&s).unwrap() == g, || format!("round trip fails on {s}"))?;
            count += 1;
        }
    }
    let k3 = families::complete(3);
    let c5 = families::cycle(5).unwrap();
    ensure(
        encode_graph6(&k3).unwrap() == "Bw" && parse_graph6("Bw").unwrap() == k3,
        || "Bw".into(),
    )?;
    ensure(
        encode_graph6(&c5).unwrap() == "Dhc" && parse_graph6("Dhc").unwrap() == c5,
        || "Dhc".into(),
    )?;
    Ok(format!("{count} graphs round-trip; Bw = K3, Dhc = C5"))
}

fn determinism(store: &[(Vec<&'static str>, String)]) -> Outcome {
    ensure(store.len() == 3, || {
        format!("only {} of 3 reference runs available", store.len())
    })?;
    for (args, single) in store {
        let mut args = args.clone();
        let jobs = args.iter().position(|&a| a == "--jobs").unwrap() + 1;
        args[jobs] = "8";
        let multi = run_verify(&args)?;
        ensure(&multi.stdout == single, || {
            format!("{} differs across job counts", args[1])
        })?;
    }
    Ok("thm8, thm5, thm1 reports byte-identical for --jobs 1 and 8".into())
}

fn main() {
    let mut store = Vec::new();
    let results: Vec<(usize, &str, Outcome)> = vec![
        (1, "counterexample family", counterexample_family()),
        (2, "single-edge closure, n <= 6", thm8(&mut store)),
        (3, "closure preserves Hamiltonicity", thm5(&mut store)),
        (4, "degree condition, n <= 7", thm1(&mut store)),
        (5, "single-edge closure, 4-tough samples", thm6()),
        (6, "dense family", thm4_dense()),
        (7, "oracle cross-checks", oracles()),
        (8, "closure order independence", closure_orders()),
        (9, "graph6 codec", codec()),
        (10, "determinism across jobs", determinism(&store)),
    ];

    let mut failed = 0;
    for (id, name, outcome) in &results {
        match outcome {
            Ok(msg) => println!("PASS  criterion {id:>2}  {name}: {msg}"),
            Err(msg) => {
                failed += 1;
                println!("FAIL  criterion {id:>2}  {name}: {msg}");
            }
        }
    }
    println!("{} of {} criteria passed", results.len() - failed, results.len());
    if failed > 0 {
        std::process::exit(1);
    }
}
