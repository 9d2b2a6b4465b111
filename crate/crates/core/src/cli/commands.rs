use std::fs;
use std::io::Write;
use std::path::Path;

use serde::Serialize;
use serde_json::{json, Value};

use super::args::*;
use super::{CliError, ExitCode, RunManifest, Sink};
use crate::codec::{test_vector, CodeConfig};
use crate::gf::{poly, FieldCtx};
use crate::linalg::Mat;
use crate::montecarlo::{
    choose_qprime, estimate_with_jobs, field_of_order, lemma3_closed_form, lemma3_exhaustive, lemma3_experiment,
    lemma4_closed_form, lemma4_exhaustive, lemma4_experiment, lemma5_experiment, theorem2_params, Interference,
    TrialConfig,
};
use crate::network::{BuiltinExample, NetworkFile, NetworkSpec, RateRow};
use crate::oracle::{cap_from_env, verify_lemma1, verify_shadow, OracleReport};

pub(super) fn dispatch(cli: Cli, out: &mut dyn Write, err: &mut dyn Write) -> Result<ExitCode, CliError> {
    match cli.command {
        Command::Rates(a) => rates(a, out, err),
        Command::Simulate(a) => simulate(a, out, err),
        Command::Params(a) => params(a, out),
        Command::Oracle(a) => oracle(a, out),
        Command::Lemmas(a) => lemmas(a, out, err),
        Command::Vector(a) => vector(a, out),
    }
}

fn read_text(path: &Path) -> Result<String, CliError> {
    fs::read_to_string(path).map_err(|source| CliError::Io { path: path.to_path_buf(), source })
}

fn load_network(src: &NetworkSource, fallback: Option<BuiltinExample>) -> Result<(NetworkSpec, Vec<String>), CliError> {
    if let Some(path) = &src.network {
        return Ok((NetworkFile::parse(&read_text(path)?)?, vec![path.display().to_string()]));
    }
    match src.example.or(fallback) {
        Some(ex) => Ok((ex.build(), vec![format!("example:{ex}")])),
        None => Err(CliError::Usage("one of --network or --example is required".into())),
    }
}

fn pair_index(pair: usize, pairs: usize) -> Result<usize, CliError> {
    if pair == 0 || pair > pairs {
        return Err(CliError::Usage(format!("--pair must be in 1..={pairs}, got {pair}")));
    }
    Ok(pair - 1)
}

fn pretty(v: &impl Serialize) -> Result<String, CliError> {
    Ok(serde_json::to_string_pretty(v)? + "\n")
}

fn csv_body(header: &[&str], records: &[Vec<String>]) -> Result<String, CliError> {
    let mut w = csv::Writer::from_writer(Vec::new());
    w.write_record(header)?;
    for r in records {
        w.write_record(r)?;
    }
    let bytes = w.into_inner().map_err(|e| CliError::Output(e.into_error()))?;
    Ok(String::from_utf8(bytes).expect("csv output is utf-8"))
}

const RATE_COLUMNS: [&str; 6] = ["pair", "m", "rank_own", "rank_own_phase", "interference", "interference_phase"];

fn rate_fields(r: &RateRow) -> Vec<String> {
    [r.pair + 1, r.m, r.rank_own, r.rank_own_phase, r.interference, r.interference_phase]
        .iter()
        .map(|v| v.to_string())
        .collect()
}

fn rates(args: RatesArgs, out: &mut dyn Write, err: &mut dyn Write) -> Result<ExitCode, CliError> {
    let (spec, inputs) = load_network(&args.source, None)?;
    let tp = spec.compose_transfer()?;
    let rows = tp.rate_table();
    let check = match (args.a, args.a_phase) {
        (None, None) => None,
        (a, a_phase) => {
            let i = pair_index(args.pair, tp.pairs())?;
            let (a, a_phase) = (a.unwrap_or(0), a_phase.unwrap_or(0));
            Some((i, a, a_phase, rows[i].feasible(a, a_phase)))
        }
    };
    let manifest = RunManifest::new(
        "rates",
        inputs,
        None,
        args.out.as_deref(),
        json!({"pair": args.pair, "a": args.a, "a_phase": args.a_phase}),
    );
    let body = match args.format {
        None => {
            let mut s = RATE_COLUMNS.join(" ") + "\n";
            for r in &rows {
                s += &(rate_fields(r).join(" ") + "\n");
            }
            if let Some((i, a, a_phase, f)) = &check {
                if f.feasible {
                    s += &format!("pair {} with a = {a}, a' = {a_phase}: feasible, rate {}\n", i + 1, f.rate);
                } else {
                    s += &format!("pair {} with a = {a}, a' = {a_phase}: infeasible, a + a' must be below m\n", i + 1);
                }
                for w in f.warnings() {
                    s += &format!("warning: {w}\n");
                }
            }
            s
        }
        Some(Format::Json) => pretty(&json!({
            "manifest": manifest,
            "rates": rows,
            "feasibility": check.map(|(i, a, a_phase, f)| json!({"pair": i + 1, "a": a, "a_phase": a_phase, "result": f})),
        }))?,
        Some(Format::Csv) => csv_body(&RATE_COLUMNS, &rows.iter().map(rate_fields).collect::<Vec<_>>())?,
    };
    Sink { out, path: args.out.clone() }.emit(&body, &manifest)?;
    let deficient: Vec<String> = rows.iter().filter(|r| r.rank_own != r.m).map(|r| (r.pair + 1).to_string()).collect();
    if !deficient.is_empty() {
        writeln!(err, "own block K_ii is rank deficient for pair(s) {}", deficient.join(", "))?;
        return Ok(ExitCode::Violation);
    }
    Ok(ExitCode::Success)
}

fn simulate(args: SimulateArgs, out: &mut dyn Write, err: &mut dyn Write) -> Result<ExitCode, CliError> {
    let (spec, inputs) = load_network(&args.source, None)?;
    let tp = spec.compose_transfer()?;
    let i = pair_index(args.pair, tp.pairs())?;
    let m = tp.pair_sizes()[i];
    let q = spec.field().q();
    if args.a + args.a_phase >= m {
        return Err(CliError::Usage(format!(
            "infeasible configuration: a + a' = {} must be below m = {m}",
            args.a + args.a_phase
        )));
    }
    let (alpha, n, choice) = match args.alpha {
        AlphaChoice::Auto => {
            let c = choose_qprime(args.n as u64, q, m, args.a, args.a_phase)?;
            (c.alpha, c.n as usize, Some(c))
        }
        AlphaChoice::Fixed(a) => (a, args.n, None),
    };
    let cfg = CodeConfig::new(i, m, args.a, args.a_phase, n, alpha)?;
    for w in tp.rate_table()[i].feasible(args.a, args.a_phase).warnings() {
        writeln!(err, "warning: {w}")?;
    }
    let ctx = spec.field().with_alpha(alpha)?;
    let mut inputs = inputs;
    let interference = match &args.interference {
        InterferenceArg::Zero => Interference::Zero,
        InterferenceArg::Uniform => Interference::Uniform,
        InterferenceArg::Fixed(path) => {
            let v: Value = serde_json::from_str(&read_text(path)?)?;
            inputs.push(path.display().to_string());
            Interference::Fixed(Mat::from_json(ctx.ext(), &v, Some(cfg.n_prime()))?)
        }
    };
    let q_prime = ctx.q_prime();
    let tc = TrialConfig::new(tp, cfg, ctx, interference, args.trials, args.seed)?;
    let report = estimate_with_jobs(&tc, args.jobs)?;
    let manifest = RunManifest::new(
        "simulate",
        inputs,
        Some(args.seed),
        args.out.as_deref(),
        json!({
            "pair": args.pair,
            "m": m,
            "a": args.a,
            "a_phase": args.a_phase,
            "n_requested": args.n,
            "n": n,
            "padded": n != args.n,
            "alpha": alpha,
            "alpha_mode": args.alpha.to_string(),
            "qprime_choice": choice,
            "q": q,
            "q_prime": q_prime,
            "n_prime": cfg.n_prime(),
            "trials": args.trials,
            "interference": tc.interference().label(),
        }),
    );
    let body = match args.format {
        Format::Csv => csv_body(&crate::montecarlo::TrialReport::CSV_HEADER, &[report.csv_record().to_vec()])?,
        Format::Json => pretty(&json!({"manifest": manifest, "report": report}))?,
    };
    Sink { out, path: args.out.clone() }.emit(&body, &manifest)?;
    if report.implication_violations > 0 {
        writeln!(
            err,
            "{} trial(s) satisfied every decoding condition but failed to decode ({} bit, {} phase)",
            report.implication_violations, report.bit_violations, report.phase_violations
        )?;
        return Ok(ExitCode::Violation);
    }
    Ok(ExitCode::Success)
}

fn params(args: ParamsArgs, out: &mut dyn Write) -> Result<ExitCode, CliError> {
    let schedule = match args.mode {
        ParamsMode::Qprime => serde_json::to_value(choose_qprime(args.n, args.q, args.m, args.a, args.a_phase)?)?,
        ParamsMode::Theorem2 => serde_json::to_value(theorem2_params(args.n, args.q, args.m, args.a, args.a_phase)?)?,
    };
    let mode = if args.mode == ParamsMode::Qprime { "qprime" } else { "theorem2" };
    let manifest = RunManifest::new(
        "params",
        vec![],
        None,
        args.out.as_deref(),
        json!({"mode": mode, "n": args.n, "q": args.q, "m": args.m, "a": args.a, "a_phase": args.a_phase}),
    );
    let body = pretty(&json!({"manifest": manifest, "schedule": schedule}))?;
    Sink { out, path: args.out.clone() }.emit(&body, &manifest)?;
    Ok(ExitCode::Success)
}

fn oracle_text(r: &OracleReport) -> String {
    let verdict = if r.passed() { "pass" } else { "FAIL" };
    let mut s = format!("{} q={} m={} n={}: {verdict} ({} checks)\n", r.suite, r.q, r.m, r.n, r.checks);
    if let Some(c) = &r.counterexample {
        s += &format!("counterexample: {c}\n");
    }
    s
}

fn oracle(args: OracleArgs, out: &mut dyn Write) -> Result<ExitCode, CliError> {
    let cap = cap_from_env();
    let (report, inputs) = match args.suite {
        Suite::Lemma1 => (verify_lemma1(args.q, args.m, args.n, cap)?, vec![]),
        Suite::Shadow => {
            let (spec, inputs) = load_network(&args.source, Some(BuiltinExample::Butterfly))?;
            (verify_shadow(&spec, args.n, cap)?, inputs)
        }
    };
    let manifest = RunManifest::new(
        "oracle",
        inputs,
        None,
        args.out.as_deref(),
        json!({"suite": report.suite, "q": report.q, "m": report.m, "n": report.n, "cap": cap}),
    );
    let body = match args.format {
        None => oracle_text(&report),
        Some(Format::Json) => pretty(&json!({"manifest": manifest, "report": report}))?,
        Some(Format::Csv) => csv_body(
            &["suite", "q", "m", "n", "checks", "passed"],
            &[vec![
                report.suite.clone(),
                report.q.to_string(),
                report.m.to_string(),
                report.n.to_string(),
                report.checks.to_string(),
                report.passed().to_string(),
            ]],
        )?,
    };
    let mut sink = Sink { out, path: args.out.clone() };
    sink.emit(&body, &manifest)?;
    if sink.path.is_some() {
        sink.note(oracle_text(&report).trim_end())?;
    }
    Ok(if report.passed() { ExitCode::Success } else { ExitCode::Violation })
}

const LEMMA_COLUMNS: [&str; 9] = ["lemma", "q", "dims", "mode", "samples", "empirical", "exact", "bound", "ok"];

fn need(v: Option<usize>, flag: &str, lemma: u8) -> Result<usize, CliError> {
    v.ok_or_else(|| CliError::Usage(format!("lemma {lemma} needs --{flag}")))
}

fn lemmas(args: LemmasArgs, out: &mut dyn Write, err: &mut dyn Write) -> Result<ExitCode, CliError> {
    let field = field_of_order(args.q)?;
    let q = args.q;
    let mode = if args.exhaustive { "exhaustive" } else { "sampled" };
    let fmt = |x: f64| format!("{x:.6}");
    let (lemma, dims, samples, empirical, exact, bound, ok) = match args.which {
        LemmaKind::Subspace => {
            let (da, db, dc) = (need(args.da, "da", 3)?, need(args.db, "db", 3)?, need(args.dc, "dc", 3)?);
            let r = if args.exhaustive {
                lemma3_exhaustive(&field, da, db, dc)?
            } else {
                lemma3_experiment(&field, da, db, dc, args.trials, args.seed)?
            };
            let exact = lemma3_closed_form(q, da, db, dc);
            // 1 - O(q^{d_b + d_c - d_a - 1}) with slack 4
            let bound = 1.0 - 4.0 * (q as f64).powi(db as i32 + dc as i32 - da as i32 - 1);
            let ok = if args.exhaustive { (r.value() - exact).abs() < 1e-12 } else { r.value() >= bound };
            (3, format!("{da}/{db}/{dc}"), r.total, r.value(), exact, bound, ok)
        }
        LemmaKind::FullRank => {
            let (d, dp) = (need(args.d, "d", 4)?, need(args.dp, "dp", 4)?);
            let r = if args.exhaustive {
                lemma4_exhaustive(&field, d, dp)?
            } else {
                lemma4_experiment(&field, d, dp, args.trials, args.seed)?
            };
            let exact = lemma4_closed_form(q, d, dp);
            let bound = 1.0 - dp as f64 / q as f64;
            let ok = if args.exhaustive { (r.value() - exact).abs() < 1e-12 } else { r.value() >= bound };
            (4, format!("{d}/{dp}"), r.total, r.value(), exact, bound, ok)
        }
        LemmaKind::Scrambler => {
            if args.exhaustive {
                return Err(CliError::Usage("lemma 5 has no exhaustive mode".into()));
            }
            let (m, n_prime) = (need(args.m, "m", 5)?, need(args.n_prime, "n-prime", 5)?);
            let cfg = CodeConfig::with_n_prime(0, m, 0, 0, n_prime, 1)?;
            let r = lemma5_experiment(&field, &cfg, args.trials, args.x_samples, args.seed)?;
            (5, format!("{m}/{n_prime}"), r.draws, r.max_probability, f64::NAN, r.slack * r.bound, r.within_bound)
        }
    };
    let exact_field = if exact.is_nan() { String::new() } else { fmt(exact) };
    let record = vec![
        lemma.to_string(),
        q.to_string(),
        dims.clone(),
        mode.to_string(),
        samples.to_string(),
        fmt(empirical),
        exact_field,
        fmt(bound),
        ok.to_string(),
    ];
    let manifest = RunManifest::new(
        "lemmas",
        vec![],
        Some(args.seed),
        args.out.as_deref(),
        json!({
            "lemma": lemma, "q": q, "dims": dims, "mode": mode, "trials": args.trials, "x_samples": args.x_samples,
        }),
    );
    let body = csv_body(&LEMMA_COLUMNS, &[record])?;
    Sink { out, path: args.out.clone() }.emit(&body, &manifest)?;
    if !ok {
        writeln!(err, "lemma {lemma}: empirical {empirical} violates the reference")?;
        return Ok(ExitCode::Violation);
    }
    Ok(ExitCode::Success)
}

fn vector(args: VectorArgs, out: &mut dyn Write) -> Result<ExitCode, CliError> {
    let (p, t) =
        poly::prime_power(args.q).ok_or_else(|| CliError::Usage(format!("{} is not a prime power", args.q)))?;
    let ctx = FieldCtx::new(p, t as usize, args.alpha)?;
    let cfg = CodeConfig::new(0, args.m, args.a, args.a_phase, args.n, args.alpha)?;
    let tv = test_vector(&ctx, &cfg, args.seed)?;
    let manifest = RunManifest::new("vector", vec![], Some(args.seed), args.out.as_deref(), serde_json::to_value(cfg)?);
    Sink { out, path: args.out.clone() }.emit(&pretty(&tv)?, &manifest)?;
    Ok(ExitCode::Success)
}
