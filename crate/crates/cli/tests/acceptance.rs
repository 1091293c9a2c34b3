//! Acceptance suite. Prints one PASS/FAIL line per criterion and exits
//! non-zero if any criterion fails.

use std::path::Path;
use std::time::Instant;

use parity_si::arena::{build_escape_arena, preprocess, Player};
use parity_si::iteration::{
    binary_choice_bound, deterministic_refinements, extract_deterministic, general_iteration_bound, solve, solve_with,
    Backend, SolveOptions, SolveResult, SwitchPolicy,
};
use parity_si::oracle::{oracle_solve, replay_check, DEFAULT_ORACLE_CAP};
use parity_si::valuation::{dijkstra_update_with, is_reasonable, valuate_bellman_ford, Strategy, Valuation};
use parity_si::{parse_pgsolver, serialize_pgsolver, ColorProfile, ParityGame};
use parity_si_cli::check::fuzz_game;
use parity_si_cli::{cmd_solve, generate, GenArgs, SolveArgs};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

type Outcome = Result<String, String>;

const CORPUS_SIZE: u64 = 1000;
const CORPUS_SEED: u64 = 1_000_000;

fn corpus() -> Vec<ParityGame> {
    (0..CORPUS_SIZE).map(|i| fuzz_game(CORPUS_SEED + i, 8)).collect()
}

fn configurations(seed: u64) -> Vec<(SwitchPolicy, Backend)> {
    SwitchPolicy::all(seed)
        .into_iter()
        .flat_map(|p| [(p, Backend::Dijkstra), (p, Backend::BellmanFord)])
        .collect()
}

fn unchecked(backend: Backend) -> SolveOptions {
    SolveOptions {
        backend,
        audit_every: 0,
        check_invariants: false,
    }
}

fn oracle_equivalence(games: &[ParityGame]) -> Outcome {
    let started = Instant::now();
    let mut mismatches = Vec::new();
    let mut runs = 0;
    for (i, game) in games.iter().enumerate() {
        let oracle = oracle_solve(game, DEFAULT_ORACLE_CAP).map_err(|e| format!("game {i}: {e}"))?;
        for (policy, backend) in configurations(i as u64) {
            let r = solve(game, policy, unchecked(backend)).map_err(|e| format!("game {i}: {e}"))?;
            runs += 1;
            if r.w0 != oracle.w0 || r.w1 != oracle.w1 {
                mismatches.push(format!("game {i} {policy} {backend}"));
            }
        }
    }
    let secs = started.elapsed().as_secs_f64();
    if !mismatches.is_empty() {
        return Err(format!("{} mismatches, first {}", mismatches.len(), mismatches[0]));
    }
    if secs >= 60.0 {
        return Err(format!("took {secs:.1} s"));
    }
    Ok(format!("{} games, {runs} solver runs, 0 mismatches, {secs:.2} s", games.len()))
}

/// Observations collected while re-running the corpus with instrumentation.
#[derive(Default)]
struct Instrumented {
    iterations: usize,
    dijkstra_mismatch: Vec<String>,
    monotone_violations: Vec<String>,
    unreasonable: Vec<String>,
    max_passes_ratio: f64,
    slow_convergence: Vec<String>,
    extraction_failures: Vec<String>,
    replay_failures: Vec<String>,
}

fn instrumented_corpus(games: &[ParityGame]) -> Result<Instrumented, String> {
    let mut obs = Instrumented::default();
    for (i, game) in games.iter().enumerate() {
        for (policy, backend) in configurations(i as u64) {
            let tag = format!("game {i} {policy} {backend}");
            let mut previous: Option<Valuation> = None;
            let mut rule = policy.rule();
            let mut failures = Vec::new();
            let result: SolveResult = solve_with(game, rule.as_mut(), unchecked(backend), &mut |rec| {
                let arena = &rec.preprocessed.arena;
                let sets = rec.improvements;
                obs.iterations += 1;

                if !is_reasonable(arena, rec.strategy) {
                    obs.unreasonable.push(tag.clone());
                }
                match valuate_bellman_ford(arena, rec.strategy) {
                    Ok(run) => {
                        let n = arena.num_nodes().max(1);
                        obs.max_passes_ratio = obs.max_passes_ratio.max(run.passes as f64 / n as f64);
                        if run.passes > arena.num_nodes() {
                            obs.slow_convergence.push(tag.clone());
                        }
                        if run.valuation != *rec.valuation {
                            failures.push(format!("{tag}: solver valuation differs from Bellman-Ford"));
                        }
                    }
                    Err(e) => failures.push(format!("{tag}: {e}")),
                }

                let reference = valuate_bellman_ford(arena, &sets.improving).map(|r| r.valuation);
                let fast = dijkstra_update_with(arena, sets, rec.valuation);
                match (&reference, fast) {
                    (Ok(a), Ok(b)) if *a == b => {}
                    _ => obs.dijkstra_mismatch.push(format!("{tag} iteration {}", rec.iteration)),
                }

                if let Some(before) = &previous {
                    let grew = before.le_pointwise(rec.valuation) && !before.strictly_below(rec.valuation).is_empty();
                    if !grew {
                        obs.monotone_violations.push(format!("{tag} iteration {}", rec.iteration));
                    }
                }
                previous = Some(rec.valuation.clone());

                if !sets.has_strict() {
                    if let Ok(v_full) = &reference {
                        let ok = extract_deterministic(arena, &sets.improving, v_full)
                            .ok()
                            .and_then(|det| valuate_bellman_ford(arena, &det).ok())
                            .is_some_and(|r| r.valuation == *v_full);
                        if !ok {
                            obs.extraction_failures.push(tag.clone());
                        }
                    }
                }
            })
            .map_err(|e| format!("{tag}: {e}"))?;
            if let Some(f) = failures.into_iter().next() {
                return Err(f);
            }
            if let Err(e) = replay_check(game, &result) {
                obs.replay_failures.push(format!("{tag}: {e}"));
            }
        }
    }
    Ok(obs)
}

/// Valuation, strict improvements and strategy of one iteration.
type Snapshot = (Valuation, Vec<(usize, usize)>, Strategy);

/// Compares consecutive valuations at the sources of the strict
/// improvements the next strategy adopted.
fn strict_sources_grow(games: &[ParityGame]) -> Result<usize, String> {
    let mut steps = 0;
    for (i, game) in games.iter().enumerate() {
        for policy in SwitchPolicy::all(i as u64) {
            let mut history: Vec<Snapshot> = Vec::new();
            let mut rule = policy.rule();
            solve_with(game, rule.as_mut(), unchecked(Backend::BellmanFord), &mut |rec| {
                history.push((rec.valuation.clone(), rec.improvements.strict.clone(), rec.strategy.clone()));
            })
            .map_err(|e| format!("game {i}: {e}"))?;
            for w in history.windows(2) {
                let (before, strict, _) = &w[0];
                let (after, _, next) = &w[1];
                steps += 1;
                for &(s, t) in strict.iter().filter(|&&(s, t)| next.contains_edge(s, t)) {
                    if before.get(s) >= after.get(s) {
                        return Err(format!("game {i} {policy}: no increase at {s} after switching to {t}"));
                    }
                }
            }
        }
    }
    Ok(steps)
}

fn local_optimality() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(5);
    let (mut games, mut compared, mut attempts) = (0, 0u64, 0);
    while games < 200 {
        attempts += 1;
        if attempts > 100_000 {
            return Err("could not draw enough small games".into());
        }
        let game = fuzz_game(rng.gen(), 6);
        let mut rule = SwitchPolicy::AllSwitches.rule();
        let mut violation = None;
        let mut too_large = false;
        let mut checked_here = 0;
        solve_with(&game, rule.as_mut(), unchecked(Backend::BellmanFord), &mut |rec| {
            let arena = &rec.preprocessed.arena;
            let Ok(best) = valuate_bellman_ford(arena, &rec.improvements.improving) else {
                violation = Some("improving strategy does not valuate".to_string());
                return;
            };
            let Ok(all) = deterministic_refinements(&rec.improvements.improving, 4096) else {
                too_large = true;
                return;
            };
            for det in all {
                checked_here += 1;
                match valuate_bellman_ford(arena, &det) {
                    Ok(r) if r.valuation.le_pointwise(&best.valuation) => {}
                    _ => violation = Some(format!("refinement {det:?} exceeds the improving strategy")),
                }
            }
        })
        .map_err(|e| e.to_string())?;
        if let Some(v) = violation {
            return Err(v);
        }
        if too_large {
            continue;
        }
        games += 1;
        compared += checked_here;
    }
    Ok(format!("{games} games, {compared} deterministic direct improvements, 0 violations"))
}

fn iteration_bounds() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(6);
    let (mut instances, mut max_ratio, mut max_general_ratio) = (0, 0.0f64, 0.0f64);
    while instances < 500 {
        let args = GenArgs {
            nodes: rng.gen_range(8..=40),
            degree: 2,
            colors: rng.gen_range(2..=8),
            p0_fraction: 0.5,
            seed: rng.gen(),
        };
        let game = generate(&args).map_err(|e| e.to_string())?;
        let v0 = game.nodes_of(Player::Even).count();
        if !(4..=20).contains(&v0) {
            continue;
        }
        instances += 1;
        let r = solve(&game, SwitchPolicy::AllSwitches, SolveOptions::default()).map_err(|e| e.to_string())?;
        let binary = binary_choice_bound(v0);
        let general = general_iteration_bound(game.num_nodes(), game.num_colors());
        let it = r.iterations as f64;
        if it > binary || it > general {
            return Err(format!("seed {}: {} iterations, bounds {binary:.1} and {general:.1}", args.seed, r.iterations));
        }
        max_ratio = max_ratio.max(it / binary);
        max_general_ratio = max_general_ratio.max(it / general);
    }
    Ok(format!(
        "{instances} instances, max iterations/(3*1.724^|V0|) = {max_ratio:.4}, max iterations/general bound = {max_general_ratio:.2e}"
    ))
}

fn random_profile(rng: &mut ChaCha8Rng, d: usize) -> ColorProfile {
    match rng.gen_range(0..20) {
        0 => ColorProfile::NegInf,
        1 => ColorProfile::PosInf,
        _ => ColorProfile::Finite((0..d).map(|_| rng.gen_range(-3..=3)).collect()),
    }
}

fn random_finite(rng: &mut ChaCha8Rng, d: usize) -> ColorProfile {
    ColorProfile::Finite((0..d).map(|_| rng.gen_range(-5..=5)).collect())
}

fn profile_algebra() -> Outcome {
    use std::cmp::Ordering;
    let mut rng = ChaCha8Rng::seed_from_u64(8);
    const CASES: usize = 10_000;
    for _ in 0..CASES {
        let d = rng.gen_range(1..=5);
        let (a, b, c) = (random_profile(&mut rng, d), random_profile(&mut rng, d), random_profile(&mut rng, d));
        if a.cmp(&a) != Ordering::Equal {
            return Err(format!("{a} not equal to itself"));
        }
        if a.cmp(&b) != b.cmp(&a).reverse() {
            return Err(format!("antisymmetry fails for {a}, {b}"));
        }
        if (a.cmp(&b) == Ordering::Equal) != (a == b) {
            return Err(format!("equality mismatch for {a}, {b}"));
        }
        if a <= b && b <= c && a > c {
            return Err(format!("transitivity fails for {a}, {b}, {c}"));
        }
    }
    for _ in 0..CASES {
        let d = rng.gen_range(1..=5);
        let (a, b, c) = (random_finite(&mut rng, d), random_finite(&mut rng, d), random_finite(&mut rng, d));
        let (ac, bc) = (a.add(&c).map_err(|e| e.to_string())?, b.add(&c).map_err(|e| e.to_string())?);
        if a.cmp(&b) != ac.cmp(&bc) {
            return Err(format!("addition not monotone for {a}, {b}, {c}"));
        }
        if ac.subtract(&c).map_err(|e| e.to_string())? != a {
            return Err(format!("({a}+{c})-{c} != {a}"));
        }
    }
    for _ in 0..CASES {
        let d = rng.gen_range(1..=6);
        let len = rng.gen_range(1..=8);
        let colors: Vec<usize> = (0..len).map(|_| rng.gen_range(0..d)).collect();
        let value = ColorProfile::path_value(d, &colors).map_err(|e| e.to_string())?;
        let top = *colors.iter().max().expect("non-empty");
        let zero = ColorProfile::zero(d);
        let expected = if top.is_multiple_of(2) { Ordering::Greater } else { Ordering::Less };
        if value.cmp(&zero) != expected {
            return Err(format!("cycle {colors:?} has value {value}"));
        }
    }
    Ok(format!("{CASES} cases each for order axioms, addition, inversion and cycle classification"))
}

fn scale_smoke() -> Outcome {
    let dir = std::env::temp_dir().join(format!("parity-si-acceptance-{}", std::process::id()));
    std::fs::create_dir_all(&dir).map_err(|e| e.to_string())?;
    let path = dir.join("scale.gm");
    let args = GenArgs {
        nodes: 10_000,
        degree: 4,
        colors: 6,
        p0_fraction: 0.5,
        seed: 2024,
    };
    let game = generate(&args).map_err(|e| e.to_string())?;
    std::fs::write(&path, serialize_pgsolver(&game)).map_err(|e| e.to_string())?;

    let solve_args = SolveArgs {
        input: Some(path.clone()),
        policy: SwitchPolicy::AllSwitches,
        seed: None,
        backend: Backend::Dijkstra,
        audit_every: 16,
        json: true,
        timings: false,
    };
    let started = Instant::now();
    let mut out = Vec::new();
    cmd_solve(&solve_args, &mut out).map_err(|e| e.to_string())?;
    let secs = started.elapsed().as_secs_f64();
    let result: serde_json::Value = serde_json::from_slice(&out).map_err(|e| e.to_string())?;
    let w0 = result["w0"].as_array().map_or(0, Vec::len);
    let w1 = result["w1"].as_array().map_or(0, Vec::len);
    let iterations = result["iterations"].as_u64().unwrap_or(0);

    // audit every Dijkstra update as well, independent of the run length
    let full_audit = solve(
        &game,
        SwitchPolicy::AllSwitches,
        SolveOptions {
            audit_every: 1,
            ..SolveOptions::default()
        },
    )
    .map_err(|e| format!("full audit: {e}"))?;
    let _ = std::fs::remove_dir_all(&dir);

    if w0 + w1 != 10_000 {
        return Err(format!("partition covers {} nodes", w0 + w1));
    }
    if full_audit.w0.len() != w0 {
        return Err("audited run disagrees".into());
    }
    if secs >= 10.0 {
        return Err(format!("took {secs:.2} s"));
    }
    Ok(format!("n = 10000, |W0| = {w0}, {iterations} iterations, {secs:.2} s, audits clean"))
}

fn format_fidelity() -> Outcome {
    let dir = Path::new(env!("CARGO_MANIFEST_DIR")).join("tests/data");
    let mut texts: Vec<(String, String)> = Vec::new();
    let mut entries: Vec<_> = std::fs::read_dir(&dir)
        .map_err(|e| e.to_string())?
        .map(|e| e.map(|e| e.path()))
        .collect::<Result<_, _>>()
        .map_err(|e| e.to_string())?;
    entries.sort();
    for path in entries {
        if path.file_name().is_some_and(|n| n == "malformed.gm") {
            continue;
        }
        texts.push((path.display().to_string(), std::fs::read_to_string(&path).map_err(|e| e.to_string())?));
    }
    let handwritten = texts.len();
    let mut rng = ChaCha8Rng::seed_from_u64(10);
    while texts.len() < 50 {
        let args = GenArgs {
            nodes: rng.gen_range(1..=60),
            degree: rng.gen_range(1..=5),
            colors: rng.gen_range(1..=12),
            p0_fraction: rng.gen(),
            seed: rng.gen(),
        };
        let game = generate(&args).map_err(|e| e.to_string())?;
        texts.push((format!("generated seed {}", args.seed), serialize_pgsolver(&game)));
    }
    for (name, text) in &texts {
        let g1 = parse_pgsolver(text).map_err(|e| format!("{name}: {e}"))?;
        let s1 = serialize_pgsolver(&g1);
        let g2 = parse_pgsolver(&s1).map_err(|e| format!("{name}: reparse: {e}"))?;
        let s2 = serialize_pgsolver(&g2);
        if g1 != g2 || s1 != s2 {
            return Err(format!("{name}: second serialization differs"));
        }
    }
    Ok(format!("{} files ({handwritten} handwritten), all fixpoints", texts.len()))
}

fn pre_won_within_oracle(games: &[ParityGame]) -> Result<(), String> {
    for (i, game) in games.iter().enumerate().take(200) {
        let pre = preprocess(&build_escape_arena(game));
        let oracle = oracle_solve(game, DEFAULT_ORACLE_CAP).map_err(|e| e.to_string())?;
        if pre.pre_won.iter().any(|v| !oracle.w1.contains(v)) {
            return Err(format!("game {i}: preprocessing removed a node won by player 0"));
        }
    }
    Ok(())
}

fn first_or_ok(list: &[String], what: &str) -> Result<(), String> {
    match list.first() {
        Some(first) => Err(format!("{} {what}, first: {first}", list.len())),
        None => Ok(()),
    }
}

fn main() {
    let games = corpus();
    let instrumented = instrumented_corpus(&games);
    let strict_steps = strict_sources_grow(&games);

    let mut results: Vec<(&str, Outcome)> = Vec::new();
    results.push(("oracle equivalence", oracle_equivalence(&games).and_then(|ok| {
        pre_won_within_oracle(&games)?;
        Ok(ok)
    })));
    results.push((
        "backend equivalence",
        instrumented.as_ref().map_err(Clone::clone).and_then(|o| {
            first_or_ok(&o.dijkstra_mismatch, "Dijkstra/Bellman-Ford mismatches")?;
            Ok(format!("{} iterations compared exactly", o.iterations))
        }),
    ));
    results.push((
        "monotone improvement",
        instrumented.as_ref().map_err(Clone::clone).and_then(|o| {
            first_or_ok(&o.monotone_violations, "non-increasing steps")?;
            first_or_ok(&o.unreasonable, "unreasonable strategies")?;
            let steps = strict_steps.clone()?;
            Ok(format!("{} strategies reasonable, {steps} steps strictly increasing", o.iterations))
        }),
    ));
    results.push((
        "Bellman-Ford convergence",
        instrumented.as_ref().map_err(Clone::clone).and_then(|o| {
            first_or_ok(&o.slow_convergence, "valuations needing more than |V| passes")?;
            Ok(format!("{} valuations, max passes/|V| = {:.2}", o.iterations, o.max_passes_ratio))
        }),
    ));
    results.push(("local optimality", local_optimality()));
    results.push(("iteration-count bounds", iteration_bounds()));
    results.push((
        "deterministic extraction",
        instrumented.as_ref().map_err(Clone::clone).and_then(|o| {
            first_or_ok(&o.extraction_failures, "extraction failures")?;
            first_or_ok(&o.replay_failures, "replay failures")?;
            Ok(format!("{} solver runs extracted and replayed", games.len() * 6))
        }),
    ));
    results.push(("profile algebra", profile_algebra()));
    results.push(("scale smoke test", scale_smoke()));
    results.push(("format fidelity", format_fidelity()));

    let mut failed = 0;
    for (i, (name, outcome)) in results.iter().enumerate() {
        match outcome {
            Ok(detail) => println!("PASS criterion {:>2} {name}: {detail}", i + 1),
            Err(reason) => {
                failed += 1;
                println!("FAIL criterion {:>2} {name}: {reason}", i + 1);
            }
        }
    }
    println!("acceptance: {} passed, {failed} failed", results.len() - failed);
    if failed > 0 {
        std::process::exit(1);
    }
}
