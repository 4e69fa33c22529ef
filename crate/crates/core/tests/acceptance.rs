//! Acceptance suite. Prints one PASS/FAIL line per criterion and exits
//! nonzero if any criterion fails.

use std::panic::{catch_unwind, AssertUnwindSafe};
use std::process::ExitCode;
use std::time::{Duration, Instant};

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use wirtwidth::census::{decode_witness, read_records, run_census, verify_certificates, CensusOptions};
use wirtwidth::coloring::invariants::check_completed;
use wirtwidth::coloring::random::random_completed_log;
use wirtwidth::coloring::{AttachedSequence, DeltaMark};
use wirtwidth::corpus::{self, CorpusEntry};
use wirtwidth::oracle::{oracle_min_width, OracleOptions};
use wirtwidth::{attached_sequence, build_profile, exact_width, lazy_seed_heuristic, sweep_width, wirtinger_number, Diagram, EventLog};

const TREFOIL: &str = "-1,2,-3,1,-2,3";
const FIGURE_EIGHT: &str = "-1,2,-3,4,-2,1,-4,3";

/// Every witness produced during the run, for the lift cross-check.
#[derive(Default)]
struct Witnesses(Vec<(String, Diagram, EventLog)>);

impl Witnesses {
    fn add(&mut self, code: &str, log: &EventLog) {
        self.0.push((code.to_string(), Diagram::parse(code).unwrap(), log.clone()));
    }
}

type Outcome = Result<String, String>;

fn ensure(cond: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg())
    }
}

fn small_corpus() -> Vec<CorpusEntry> {
    corpus::small_knots(7)
}

fn exact_against_oracle(code: &str, expected: i64, expected_mu: usize, w: &mut Witnesses) -> Outcome {
    let d = Diagram::parse(code).map_err(|e| e.to_string())?;
    let start = Instant::now();
    let r = exact_width(&d, u64::MAX);
    let mu = wirtinger_number(&d, d.n_strands()).map_err(|e| format!("{e:?}"))?;
    let elapsed = start.elapsed();
    let o = oracle_min_width(&d, OracleOptions::default()).map_err(|e| e.to_string())?;
    w.add(code, &r.witness);
    w.add(code, &o.witness);
    ensure(r.width_exact && r.width_upper == expected, || format!("exact_width = {} (exact: {})", r.width_upper, r.width_exact))?;
    ensure(mu.k == expected_mu, || format!("wirtinger_number = {}", mu.k))?;
    ensure(o.min_width == r.width_upper, || format!("oracle min_width {} differs from exact {}", o.min_width, r.width_upper))?;
    ensure(o.min_seed_count == mu.k, || format!("oracle min_seed_count {} differs from mu {}", o.min_seed_count, mu.k))?;
    ensure(elapsed < Duration::from_secs(1), || format!("took {elapsed:?}"))?;
    Ok(format!("width {}, mu {}, oracle agrees over {} logs, {elapsed:?}", r.width_upper, mu.k, o.logs_enumerated))
}

fn criterion_1(w: &mut Witnesses) -> Outcome {
    exact_against_oracle(TREFOIL, 8, 2, w)
}

fn criterion_2(w: &mut Witnesses) -> Outcome {
    exact_against_oracle(FIGURE_EIGHT, 8, 2, w)
}

fn criterion_3(w: &mut Witnesses) -> Outcome {
    let d = Diagram::parse("").unwrap();
    let r = exact_width(&d, u64::MAX);
    let mu = wirtinger_number(&d, 1).map_err(|e| format!("{e:?}"))?;
    w.add("", &r.witness);
    ensure(r.width_upper == 2 && r.width_exact, || format!("unknot width {}", r.width_upper))?;
    ensure(mu.k == 1, || format!("unknot mu {}", mu.k))?;

    // The oracle runs the full invariant suite, prefix non-negativity
    // included, on every sequence it enumerates and fails on a violation.
    let mut logs = 0;
    let mut diagrams = 0;
    for e in corpus::small_knots(OracleOptions::default().max_crossings) {
        let d = e.diagram();
        let o = oracle_min_width(&d, OracleOptions::default()).map_err(|err| format!("{}: {err}", e.name))?;
        let prefix = attached_sequence(&d, &o.witness).unwrap().min_prefix();
        ensure(prefix >= 0, || format!("{}: witness prefix {prefix}", e.name))?;
        w.add(&e.code, &o.witness);
        logs += o.logs_enumerated;
        diagrams += 1;
    }
    Ok(format!("unknot width 2, mu 1; {logs} enumerated logs on {diagrams} diagrams, all prefixes >= 0"))
}

fn criterion_4(_: &mut Witnesses) -> Outcome {
    use DeltaMark::{Multicolored as M, Seed as S};
    let lazy = AttachedSequence::from_word(&[S, S, S, M, S, M, M, M]).map_err(|e| e.to_string())?;
    let eager = AttachedSequence::from_word(&[S, S, S, S, M, M, M, M]).map_err(|e| e.to_string())?;
    ensure(lazy.total == 28, || format!("lazy word total {}", lazy.total))?;
    ensure(eager.total == 32, || format!("eager word total {}", eager.total))?;
    Ok(format!("{:?} = 28, {:?} = 32", lazy.values, eager.values))
}

fn criterion_5(w: &mut Witnesses) -> Outcome {
    let start = Instant::now();
    let entries = small_corpus();
    for e in &entries {
        let d = e.diagram();
        let r = exact_width(&d, u64::MAX);
        let mu = wirtinger_number(&d, d.n_strands().max(1)).map_err(|err| format!("{err:?}"))?;
        let o = oracle_min_width(&d, OracleOptions::default()).map_err(|err| format!("{}: {err}", e.name))?;
        w.add(&e.code, &r.witness);
        ensure(r.width_exact && r.width_upper == o.min_width, || {
            format!("{}: exact {} vs oracle {}", e.name, r.width_upper, o.min_width)
        })?;
        ensure(mu.k == o.min_seed_count, || format!("{}: mu {} vs oracle {}", e.name, mu.k, o.min_seed_count))?;
    }
    let elapsed = start.elapsed();
    ensure(elapsed < Duration::from_secs(300), || format!("corpus run took {elapsed:?}"))?;
    Ok(format!("{} diagrams agree, {elapsed:?}", entries.len()))
}

fn criterion_6(w: &mut Witnesses) -> Outcome {
    let entries = corpus::knots();
    let mut rng = ChaCha8Rng::seed_from_u64(6);
    let per_diagram = 10_000 / entries.len() + 1;
    let mut checked = 0;
    for e in &entries {
        let d = e.diagram();
        for i in 0..per_diagram {
            let bias = [0.0, 0.3, 0.7, 0.95, 1.0][i % 5];
            let log = random_completed_log(&d, &mut rng, bias);
            check_completed(&d, &log).map_err(|v| format!("{}: {v}\n{log}", e.name))?;
            if i % 25 == 0 {
                w.add(&e.code, &log);
            }
            checked += 1;
        }
    }
    ensure(checked >= 10_000, || format!("only {checked} logs"))?;
    Ok(format!("{checked} random logs on {} diagrams, zero violations", entries.len()))
}

fn criterion_8(w: &mut Witnesses, sample_dir: &tempfile::TempDir) -> Outcome {
    for e in small_corpus() {
        let d = e.diagram();
        let x = exact_width(&d, u64::MAX);
        let h = lazy_seed_heuristic(&d, None, wirtwidth::StrategyOptions::default().enumeration_budget);
        w.add(&e.code, &h.witness);
        ensure(h.width_upper >= x.width_upper, || format!("{}: heuristic {} below exact {}", e.name, h.width_upper, x.width_upper))?;
    }

    let input = sample_dir.path().join("sample.tsv");
    let output = sample_dir.path().join("sample.csv");
    let sample = corpus::braid_sample();
    ensure(sample.len() == 1000 && sample.iter().all(|e| e.diagram().n_crossings() >= 12), || "bad sample".into())?;
    let tsv: String = sample.iter().map(|e| format!("{}\t{}\n", e.name, e.code)).collect();
    std::fs::write(&input, tsv).map_err(|e| e.to_string())?;
    let options = CensusOptions {
        strategy: "heuristic".into(),
        ..CensusOptions::default()
    };
    let start = Instant::now();
    let summary = run_census(&input, &output, &options).map_err(|e| e.to_string())?;
    let elapsed = start.elapsed();
    ensure(summary.rows == 1000, || format!("{} rows", summary.rows))?;
    ensure(summary.by_status.get("heuristic_only") == Some(&1000), || format!("statuses {:?}", summary.by_status))?;
    ensure(elapsed < Duration::from_secs(600), || format!("took {elapsed:?}"))?;
    let verdicts = verify_certificates(&output).map_err(|e| e.to_string())?;
    let failed: Vec<_> = verdicts.iter().filter(|v| v.result != Some(Ok(()))).collect();
    ensure(failed.is_empty(), || format!("{} certificates failed, first: {:?}", failed.len(), failed[0]))?;
    for r in read_records(&output).map_err(|e| e.to_string())? {
        w.add(&r.gauss, &decode_witness(&r.witness)?);
    }
    Ok(format!("heuristic >= exact on the small corpus; 1000 sample diagrams in {elapsed:?}, all certificates verify"))
}

fn criterion_7(w: &Witnesses) -> Outcome {
    for (code, d, log) in &w.0 {
        let attached = attached_sequence(d, log).map_err(|e| format!("{code}: {e}"))?.total;
        let profile = build_profile(d, log).map_err(|e| format!("{code}: {e}\n{log}"))?;
        let sweep = sweep_width(&profile).map_err(|e| format!("{code}: {e}"))?;
        ensure(sweep == attached, || format!("{code}: sweep {sweep} vs attached {attached}\n{log}"))?;
        ensure(profile.maxima() == log.seed_count(), || format!("{code}: maxima != seeds"))?;
        ensure(profile.minima() == log.multicolored_count(), || format!("{code}: minima != multi-colored crossings"))?;
    }
    Ok(format!("{} witnesses, sweep width equals attached total for all", w.0.len()))
}

fn run(id: u32, title: &str, f: impl FnOnce() -> Outcome) -> bool {
    let start = Instant::now();
    let outcome = catch_unwind(AssertUnwindSafe(f)).unwrap_or_else(|p| {
        Err(p
            .downcast_ref::<String>()
            .cloned()
            .or_else(|| p.downcast_ref::<&str>().map(|s| s.to_string()))
            .unwrap_or_else(|| "panicked".into()))
    });
    let secs = start.elapsed().as_secs_f64();
    match outcome {
        Ok(detail) => {
            println!("PASS criterion {id}: {title}: {detail} [{secs:.2}s]");
            true
        }
        Err(reason) => {
            println!("FAIL criterion {id}: {title}: {reason} [{secs:.2}s]");
            false
        }
    }
}

fn main() -> ExitCode {
    let mut w = Witnesses::default();
    let dir = tempfile::tempdir().expect("temp dir");
    let mut ok = true;
    ok &= run(1, "trefoil width 8, mu 2, oracle-matched, under 1 s", || criterion_1(&mut w));
    ok &= run(2, "figure-eight width 8, mu 2, oracle-matched, under 1 s", || criterion_2(&mut w));
    ok &= run(3, "unknot width 2, mu 1; oracle-enumerated prefixes non-negative", || criterion_3(&mut w));
    ok &= run(4, "attached totals 28 and 32 for the two four-seed words", || criterion_4(&mut w));
    ok &= run(5, "exact search and Wirtinger number match the oracle on all codes up to 7 crossings", || criterion_5(&mut w));
    ok &= run(6, "invariant suite on at least 10^4 random legal logs", || criterion_6(&mut w));
    ok &= run(8, "heuristic never below exact; 1000-diagram sample under 10 min with valid certificates", || {
        criterion_8(&mut w, &dir)
    });
    ok &= run(7, "lifted sweep width equals attached total for every witness", || criterion_7(&w));
    if ok {
        println!("acceptance: all criteria pass");
        ExitCode::SUCCESS
    } else {
        println!("acceptance: FAILED");
        ExitCode::FAILURE
    }
}
