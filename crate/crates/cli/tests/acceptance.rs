//! Acceptance suite: one `[PASS]`/`[FAIL]` line per criterion, nonzero exit
//! on any failure.

use std::fs;
use std::path::{Path, PathBuf};
use std::process::{Command, Stdio};
use std::time::{Duration, Instant};

use foca_core::betareg::{self, beta_log_density, log_likelihood, Observation};
use foca_core::inspect::{parse_turtle, InspectError};
use foca_core::questionnaire::{
    derive_nl, AnswerFile, AnswerInput, EvaluationSession, NlPolicy, OntologyType, QuestionId, QuestionnaireError,
};
use foca_core::scoring::{goal_means, quality, Coefficients, RoleSelector};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

type Outcome = Result<String, String>;
type Probe = (u8, fn(RoleSelector) -> bool);
type Criterion = (u8, &'static str, fn() -> Outcome);

fn check(cond: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg())
    }
}

// Worked example: Type 2, experienced evaluator, every applicable question answered.
const WORKED_LEAVES: [(u8, u8); 10] =
    [(2, 75), (3, 100), (4, 25), (6, 50), (7, 25), (8, 50), (9, 100), (10, 100), (12, 75), (13, 25)];

fn q(n: u8) -> QuestionId {
    QuestionId::from_number(n).unwrap()
}

fn worked_session() -> EvaluationSession {
    let mut s = EvaluationSession::new("worked", OntologyType::Application, true);
    s.record_answer(q(1), AnswerInput::subs([50, 50, 50])).unwrap();
    for (n, g) in WORKED_LEAVES {
        s.record_answer(q(n), AnswerInput::leaf(g)).unwrap();
    }
    s.record_answer(q(11), AnswerInput::subs([75, 75])).unwrap();
    s
}

fn oracle_logistic(x: f64) -> f64 {
    1.0 / (1.0 + (-x).exp())
}

fn criterion_1() -> Outcome {
    let start = Instant::now();
    let s = worked_session();
    let m = goal_means(&s);
    // Hand means: Q1 = (50+50+50)/3 = 50, goal 1 = (50+75+100)/3 = 75, goal 5 = (75+75+25)/3.
    let expected = [75.0, 37.5, 37.5, 100.0, 175.0 / 3.0];
    let got = [m.cov_s.to_f64(), m.cov_c.to_f64(), m.cov_r.to_f64(), m.cov_cp.to_f64(), m.cov_h.to_f64()];
    check(got == expected, || format!("goal means {got:?}"))?;
    check(m.cov_h.ratio().to_string() == "175/3", || format!("Cov_H = {}", m.cov_h.ratio()))?;

    let total_oracle = oracle_logistic(-0.44 + 0.03 * 75.0 + 0.02 * 37.5 + 0.01 * 37.5 + 0.02 * 100.0 - 0.66);
    let partial_oracle = oracle_logistic(-0.44 + 0.02 * 37.5 + 0.01 * 37.5 - 0.66);
    let c = Coefficients::default();
    let total = quality(&s, RoleSelector::ALL, &c, NlPolicy::Strict).value;
    let partial = quality(&s, "co,re".parse().unwrap(), &c, NlPolicy::Strict).value;
    for (name, v, oracle, published) in
        [("total", total, total_oracle, 0.986278841), ("partial", partial, partial_oracle, 0.506249674)]
    {
        check((v - published).abs() < 1e-6, || format!("{name} = {v:.9}, expected {published}"))?;
        check((v - oracle).abs() < 1e-12, || format!("{name} = {v:.12} disagrees with oracle {oracle:.12}"))?;
    }
    let elapsed = start.elapsed();
    check(elapsed < Duration::from_secs(1), || format!("took {elapsed:?}"))?;
    Ok(format!("total {total:.9}, partial {partial:.9}"))
}

/// Questions per goal, written out independently of the catalog.
const GOALS: [&[u8]; 5] = [&[1, 2, 3], &[4, 5, 6], &[7, 8], &[9, 10], &[11, 12, 13]];

fn excluded(t: OntologyType) -> u8 {
    match t {
        OntologyType::DomainOrTask => 4,
        OntologyType::Application => 5,
    }
}

fn random_input<R: Rng>(rng: &mut R) -> AnswerInput {
    let grade = |rng: &mut R| [0, 25, 50, 75, 100, 30][rng.random_range(0..6)];
    if rng.random_bool(0.7) {
        AnswerInput::leaf(grade(rng))
    } else {
        let n = rng.random_range(1..=3);
        AnswerInput::subs((0..n).map(|_| grade(rng)).collect::<Vec<u8>>())
    }
}

fn random_session<R: Rng>(rng: &mut R) -> Result<EvaluationSession, String> {
    let t = if rng.random_bool(0.5) { OntologyType::DomainOrTask } else { OntologyType::Application };
    let mut s = EvaluationSession::new("r", t, rng.random_bool(0.5));
    for _ in 0..rng.random_range(0..40) {
        let n = rng.random_range(1..=13u8);
        let input = random_input(rng);
        let result = s.record_answer(q(n), input.clone());
        if n == excluded(t) {
            check(matches!(result, Err(QuestionnaireError::NotApplicable { .. })), || {
                format!("Q{n} accepted under {t:?}: {result:?}")
            })?;
        }
        if n == 1 && input == AnswerInput::leaf(0) {
            check(result.is_ok(), || format!("Q1 = 0 rejected: {result:?}"))?;
        }
        if s.grade(q(1)).is_some_and(|g| g.is_zero()) {
            check(s.grade(q(2)).is_some_and(|g| g.is_zero()), || "Q1 = 0 without Q2 = 0".into())?;
        }
    }
    Ok(s)
}

fn brute_force_nl(s: &EvaluationSession, policy: NlPolicy) -> u8 {
    let skip = excluded(s.ontology_type());
    let answered = |n: u8| s.answers().contains_key(&q(n));
    let flagged = match policy {
        NlPolicy::Strict => (1..=13).filter(|&n| n != skip).any(|n| !answered(n)),
        NlPolicy::GoalEmpty => GOALS.iter().any(|g| g.iter().all(|&n| n == skip || !answered(n))),
    };
    u8::from(flagged)
}

fn criterion_2() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(2);
    let mut flagged = [0usize; 2];
    for i in 0..1000 {
        let s = random_session(&mut rng).map_err(|e| format!("session {i}: {e}"))?;
        check(!s.answers().contains_key(&q(excluded(s.ontology_type()))), || format!("session {i}: excluded answer"))?;
        for (k, policy) in [NlPolicy::Strict, NlPolicy::GoalEmpty].into_iter().enumerate() {
            let (got, want) = (derive_nl(&s, policy), brute_force_nl(&s, policy));
            check(got == want, || format!("session {i}: {policy:?} nl {got} vs brute force {want}"))?;
            flagged[k] += usize::from(got);
        }
    }
    Ok(format!("1000 sessions; nl set {} (strict) / {} (goal-empty)", flagged[0], flagged[1]))
}

fn all_selectors() -> Vec<RoleSelector> {
    (0..16u8).map(|b| RoleSelector { sb: b & 1 != 0, co: b & 2 != 0, re: b & 4 != 0, cp: b & 8 != 0 }).collect()
}

/// A fully answered session with uniformly drawn legal grades.
fn graded_session<R: Rng>(rng: &mut R) -> EvaluationSession {
    let t = if rng.random_bool(0.5) { OntologyType::DomainOrTask } else { OntologyType::Application };
    let mut s = EvaluationSession::new("g", t, rng.random_bool(0.5));
    let mut g = |allowed: &[u8]| allowed[rng.random_range(0..allowed.len())];
    s.record_answer(q(1), AnswerInput::subs([g(&[25, 50, 75, 100]), g(&[25, 50, 75, 100]), g(&[25, 50, 75, 100])]))
        .unwrap();
    for n in [2, 4, 5, 6, 7, 8, 9, 10, 12, 13] {
        if n == excluded(t) {
            continue;
        }
        let allowed: &[u8] = match n {
            2 => &[25, 50, 75, 100],
            _ => &[0, 25, 50, 75, 100],
        };
        s.record_answer(q(n), AnswerInput::leaf(g(allowed))).unwrap();
    }
    s.record_answer(q(3), AnswerInput::leaf(g(&[0, 100]))).unwrap();
    s.record_answer(q(11), AnswerInput::subs([g(&[25, 50, 75, 100]), g(&[25, 50, 75, 100])])).unwrap();
    s
}

fn value(s: &EvaluationSession, sel: RoleSelector) -> f64 {
    quality(s, sel, &Coefficients::default(), NlPolicy::Strict).value
}

fn regrade(s: &EvaluationSession, n: u8, grade: u8) -> EvaluationSession {
    let mut t = s.clone();
    t.record_answer(q(n), AnswerInput::leaf(grade)).unwrap();
    t
}

fn criterion_3() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(3);
    let sels = all_selectors();
    // One freely gradeable leaf question per formula goal.
    let probes: [Probe; 4] = [(2, |s| s.sb), (6, |s| s.co), (7, |s| s.re), (9, |s| s.cp)];
    let mut checks = 0usize;
    for i in 0..500 {
        let s = graded_session(&mut rng);
        for &sel in &sels {
            let v = value(&s, sel);
            check(v > 0.0 && v < 1.0, || format!("session {i}: score {v} outside (0,1)"))?;
            for (n, selected) in probes {
                let low = if n == 2 { 25 } else { 0 };
                let (lo, hi) = (value(&regrade(&s, n, low), sel), value(&regrade(&s, n, 100), sel));
                if selected(sel) {
                    check(lo <= hi, || format!("session {i}: not monotone in Q{n} under {sel}"))?;
                } else {
                    check(lo == hi && lo == v, || format!("session {i}: unselected Q{n} moved score under {sel}"))?;
                }
                checks += 1;
            }
            for n in [12, 13] {
                for g in [0, 50, 100] {
                    let w = value(&regrade(&s, n, g), sel);
                    check(w == v, || format!("session {i}: Q{n} = {g} changed score under {sel}"))?;
                }
            }
            let mut t = s.clone();
            t.record_answer(q(11), AnswerInput::leaf(0)).unwrap();
            check(value(&t, sel) == v, || format!("session {i}: Q11 changed score under {sel}"))?;
            checks += 7;
        }
    }
    Ok(format!("500 sessions x 16 selectors, {checks} comparisons"))
}

const BETA_STAR: [f64; 7] = [-0.44, 0.03, 0.02, 0.01, 0.02, -0.66, -2.5];

fn criterion_4() -> Outcome {
    let start = Instant::now();
    let reps = 100;
    let mut covered = [0usize; 7];
    for r in 0..reps {
        let seed = 1000 + r as u64;
        let design = betareg::synthetic_design(2000, seed);
        let data = betareg::simulate(&BETA_STAR, 30.0, &design, seed + 50_000).map_err(|e| e.to_string())?;
        let fit = betareg::fit(&data, None).map_err(|e| format!("replication {r}: {e}"))?;
        for j in 0..7 {
            covered[j] += usize::from((fit.beta_hat[j] - BETA_STAR[j]).abs() <= 3.0 * fit.se[j]);
        }
    }
    let elapsed = start.elapsed();
    let worst = *covered.iter().min().unwrap();
    check(worst * 100 >= 95 * reps, || format!("coverage per coefficient {covered:?} of {reps}"))?;
    check(elapsed < Duration::from_secs(30), || format!("took {elapsed:?}"))?;
    Ok(format!("coverage {covered:?} of {reps} in {:.2}s", elapsed.as_secs_f64()))
}

/// Composite Simpson over (0, 1) with the endpoints left out; the density
/// vanishes there because both shape parameters exceed 1.
fn simpson_unit(f: impl Fn(f64) -> f64, intervals: usize) -> f64 {
    let h = 1.0 / intervals as f64;
    let mut sum = 0.0;
    for k in 1..intervals {
        sum += if k % 2 == 1 { 4.0 } else { 2.0 } * f(k as f64 * h);
    }
    sum * h / 3.0
}

fn criterion_5() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(5);
    let mut worst_mass = 0.0f64;
    for _ in 0..20 {
        // Shape parameters stay above 1 so the integrand is bounded.
        let mu: f64 = rng.random_range(0.1..0.9);
        let phi: f64 = rng.random_range(12.0..200.0);
        let mass = simpson_unit(|y| beta_log_density(y, mu, phi).unwrap().exp(), 20_000);
        worst_mass = worst_mass.max((mass - 1.0).abs());
        check((mass - 1.0).abs() < 1e-6, || format!("mu {mu}, phi {phi}: mass {mass}"))?;
    }

    let design = betareg::synthetic_design(300, 55);
    let data: Vec<Observation> = betareg::simulate(&BETA_STAR, 30.0, &design, 56).map_err(|e| e.to_string())?;
    let mut worst_grad = 0.0f64;
    for _ in 0..20 {
        let beta: Vec<f64> = BETA_STAR.iter().map(|b| b + rng.random_range(-0.2..0.2) * b.abs().max(0.01)).collect();
        let phi: f64 = rng.random_range(5.0..60.0);
        let analytic = betareg::score(&beta, phi, &data);
        let ll = |b: &[f64], p: f64| log_likelihood(b, p, &data).unwrap();
        for j in 0..8 {
            let h = if j < 7 { 1e-5 * beta[j].abs().max(1e-3) } else { 1e-5 * phi };
            let (mut up, mut down) = (beta.clone(), beta.clone());
            let numeric = if j < 7 {
                up[j] += h;
                down[j] -= h;
                (ll(&up, phi) - ll(&down, phi)) / (2.0 * h)
            } else {
                (ll(&beta, phi + h) - ll(&beta, phi - h)) / (2.0 * h)
            };
            let rel = (analytic[j] - numeric).abs() / numeric.abs().max(1.0);
            worst_grad = worst_grad.max(rel);
            check(rel < 1e-4, || format!("component {j}: analytic {} vs numeric {numeric}", analytic[j]))?;
        }
    }

    let mut worst_resid = 0.0f64;
    for seed in 0..5u64 {
        let design = betareg::synthetic_design(2000, 500 + seed);
        let data = betareg::simulate(&BETA_STAR, 30.0, &design, 600 + seed).map_err(|e| e.to_string())?;
        let fit = betareg::fit(&data, None).map_err(|e| e.to_string())?;
        let mean = betareg::residuals(&fit, &data).mean();
        worst_resid = worst_resid.max(mean.abs());
        check(mean.abs() < 0.05, || format!("seed {seed}: residual mean {mean}"))?;
    }
    Ok(format!("mass err {worst_mass:.1e}, score rel err {worst_grad:.1e}, |resid mean| {worst_resid:.1e}"))
}

fn turtle_dir() -> PathBuf {
    Path::new(env!("CARGO_MANIFEST_DIR")).join("../core/tests/fixtures/turtle")
}

fn sorted_lines(text: &str) -> Vec<String> {
    let mut v: Vec<String> = text.lines().filter(|l| !l.trim().is_empty()).map(str::to_string).collect();
    v.sort();
    v
}

fn criterion_6() -> Outcome {
    let mut fixtures: Vec<PathBuf> = fs::read_dir(turtle_dir())
        .map_err(|e| e.to_string())?
        .map(|e| e.unwrap().path())
        .filter(|p| p.extension().is_some_and(|e| e == "ttl"))
        .collect();
    fixtures.sort();
    check(fixtures.len() >= 15, || format!("only {} fixtures", fixtures.len()))?;
    for path in &fixtures {
        let name = path.display().to_string();
        let doc = parse_turtle(&fs::read_to_string(path).unwrap(), &name).map_err(|e| format!("{name}: {e}"))?;
        let expected = sorted_lines(&fs::read_to_string(path.with_extension("nt")).unwrap());
        let once = doc.to_canonical();
        check(sorted_lines(&once) == expected, || format!("{name}: triples differ from hand count"))?;
        let again = parse_turtle(&once, &name).map_err(|e| format!("{name} canonical: {e}"))?;
        check(again.to_canonical() == once, || format!("{name}: canonical form is not a fixed point"))?;
    }
    let mut errors = 0;
    for entry in fs::read_dir(turtle_dir().join("errors")).map_err(|e| e.to_string())? {
        let path = entry.unwrap().path();
        let text = fs::read_to_string(&path).unwrap();
        let (kind, token) =
            text.lines().next().and_then(|l| l.strip_prefix("# expect: ")).and_then(|s| s.split_once(' ')).unwrap();
        let err = parse_turtle(&text, "e").err();
        let ok = match (kind, &err) {
            ("unsupported", Some(InspectError::Parse { token: t, message, .. })) => {
                t == token && message.starts_with("unsupported construct")
            }
            ("parse", Some(InspectError::Parse { token: t, .. })) => t.starts_with(token),
            ("unknown-prefix", Some(InspectError::UnknownPrefix { name, .. })) => name == token,
            _ => false,
        };
        check(ok, || format!("{}: got {err:?}", path.display()))?;
        errors += 1;
    }
    Ok(format!("{} fixtures, {errors} error cases", fixtures.len()))
}

fn foca(args: &[&str], stdin: &str) -> Result<Vec<u8>, String> {
    use std::io::Write;
    let mut child = Command::new(env!("CARGO_BIN_EXE_foca"))
        .args(args)
        .stdin(Stdio::piped())
        .stdout(Stdio::piped())
        .stderr(Stdio::piped())
        .spawn()
        .map_err(|e| e.to_string())?;
    child.stdin.take().unwrap().write_all(stdin.as_bytes()).map_err(|e| e.to_string())?;
    let out = child.wait_with_output().map_err(|e| e.to_string())?;
    check(out.status.success(), || format!("foca {args:?}: {}", String::from_utf8_lossy(&out.stderr)))?;
    Ok(out.stdout)
}

/// Wizard replies for the worked example in catalog order (Type 2 skips Q5).
const WORKED_SCRIPT: &str = "worked\n2\ny\n\
    y\n50\n50\n50\n75\n100\n\
    25\n50\n\
    25\n50\n\
    100\n100\n\
    y\n75\n75\n75\n25\n";

fn criterion_7() -> Outcome {
    let dir = tempfile::tempdir().map_err(|e| e.to_string())?;
    let answers = dir.path().join("answers.json");
    let a = answers.to_str().unwrap();
    foca(&["evaluate", "--output", a], WORKED_SCRIPT)?;
    let file = AnswerFile::from_json(&fs::read_to_string(&answers).unwrap()).map_err(|e| e.to_string())?;
    check(!file.incomplete && file.answers.len() == 12, || format!("wizard wrote {file:?}"))?;

    let first = foca(&["score", a], "")?;
    let second = foca(&["score", a], "")?;
    check(first == second, || "score output differs between runs".into())?;
    let text = String::from_utf8(first).unwrap();
    check(text.contains("Total quality: 0.986278841"), || format!("unexpected report:\n{text}"))?;
    let partial = String::from_utf8(foca(&["score", a, "--roles", "co,re"], "")?).unwrap();
    check(partial.contains("Partial quality: 0.506249674"), || format!("unexpected partial:\n{partial}"))?;
    let json_a = foca(&["score", a, "--format", "json"], "")?;
    check(json_a == foca(&["score", a, "--format", "json"], "")?, || "json output differs between runs".into())?;
    Ok("evaluate -> score reproduces 0.986278841 and 0.506249674, byte-identical".into())
}

fn main() {
    let criteria: [Criterion; 7] = [
        (1, "worked example", criterion_1),
        (2, "applicability properties", criterion_2),
        (3, "formula properties", criterion_3),
        (4, "beta regression recovery", criterion_4),
        (5, "numerics", criterion_5),
        (6, "turtle parser suite", criterion_6),
        (7, "end to end", criterion_7),
    ];
    let mut failed = 0;
    for (n, name, run) in criteria {
        let start = Instant::now();
        let result = std::panic::catch_unwind(run).unwrap_or_else(|_| Err("panicked".into()));
        let secs = start.elapsed().as_secs_f64();
        match result {
            Ok(detail) => println!("[PASS] criterion {n} {name}: {detail} ({secs:.2}s)"),
            Err(why) => {
                failed += 1;
                println!("[FAIL] criterion {n} {name}: {why} ({secs:.2}s)");
            }
        }
    }
    if failed > 0 {
        std::process::exit(1);
    }
}
