//! Acceptance criteria. Runs without the libtest harness and prints one
//! PASS/FAIL line per criterion; exits non-zero if any criterion fails.

use std::panic::{catch_unwind, AssertUnwindSafe};
use std::path::PathBuf;
use std::process::{Command, ExitCode};
use std::time::{Duration, Instant};

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use lineal::check::{
    check_barycentric, infer_scalar, probe_scalar_linearity, Context, ScalarTemplate,
};
use lineal::harness::{run_suite, GenConfig, Report, Suite, PROBE_SAMPLES};
use lineal::rewrite::{applicable_redexes, format_position, normalize, weight, Mode, RuleId, DEFAULT_FUEL};
use lineal::source::{load, prelude_scope};
use lineal::syntax::{parse_term, parse_term_in, parse_type};
use lineal::types::{canonicalize, type_equiv};
use lineal::{Scalar, Term, Type, UnitType};

const SEED: u64 = 42;

fn program(name: &str) -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("programs").join(name)
}

fn lineal(args: &[&str]) -> (i32, String) {
    let out = Command::new(env!("CARGO_BIN_EXE_lineal")).args(args).output().expect("binary runs");
    (out.status.code().unwrap_or(-1), String::from_utf8_lossy(&out.stdout).trim().to_string())
}

fn q(s: &str) -> Scalar {
    s.parse().unwrap()
}

fn ctx(pairs: &[(&str, &str)]) -> Context {
    Context::from_pairs(pairs.iter().map(|(x, ty)| (x.to_string(), parse_type(ty).unwrap()))).unwrap()
}

fn clean(r: &Report) -> Result<String, String> {
    if r.failures() == 0 {
        Ok(r.summary())
    } else {
        let first = r.cases.iter().find(|c| c.outcome.to_string() == "FAIL").map(|c| c.detail.clone());
        Err(format!("{} | first failure: {}", r.summary(), first.unwrap_or_default()))
    }
}

fn barycentric_example() -> Result<String, String> {
    let start = Instant::now();
    let file = load(&std::fs::read_to_string(program("barycentric_app.lin")).unwrap(), true).unwrap();
    let nf = normalize(&file.main.erase(), Mode::Restricted, DEFAULT_FUEL).map_err(|e| e.to_string())?.term;
    let expected = parse_term_in("3/8.true + 5/8.false", &prelude_scope()).unwrap().erase();
    if nf != expected {
        return Err(format!("normal form {nf}"));
    }
    let f = program("barycentric_f.lin");
    let (code, out) = lineal(&["check", "--system", "bary", "--prelude", f.to_str().unwrap()]);
    let app = program("barycentric_app.lin");
    let (rcode, rout) = lineal(&["reduce", "--prelude", app.to_str().unwrap()]);
    let elapsed = start.elapsed();
    if (code, out.as_str()) != (0, "OK : B -> B") {
        return Err(format!("check --system bary gave exit {code}: {out}"));
    }
    let printed = parse_term_in(&rout, &prelude_scope()).map(|t| t.erase());
    if rcode != 0 || printed != Ok(expected) {
        return Err(format!("reduce printed {rout}"));
    }
    if elapsed >= Duration::from_secs(1) {
        return Err(format!("took {elapsed:?}"));
    }
    Ok(format!("{rout}; OK : B -> B; {elapsed:?}"))
}

fn weight_under_reduction() -> Result<String, String> {
    let p = program("scaled_pair.lin");
    let p = p.to_str().unwrap();
    let before = lineal(&["weight", p]);
    let after = lineal(&["weight", "--after-reduce", p]);
    let bary = lineal(&["check", "--system", "bary", p]);
    let src = parse_term(r"(2.(\x:U. \y:U. 1/4.x + 1/4.y)) z w").unwrap();
    let nf = normalize(&src.erase(), Mode::Unrestricted, DEFAULT_FUEL).map_err(|e| e.to_string())?.term;
    let want = parse_term("1/2.z + 1/2.w").unwrap();
    let c = ctx(&[("z", "U"), ("w", "U")]);
    let (ok, ty, _) = check_barycentric(&c, &src).map_err(|e| e.to_string())?;
    let checks = [
        (before == (0, "2".into()), format!("weight {before:?}")),
        (after == (0, "1".into()), format!("weight after reduction {after:?}")),
        (bary == (0, "OK : U".into()), format!("check --system bary {bary:?}")),
        (nf == want, format!("normal form {nf}")),
        (weight(&src) == q("2") && weight(&nf) == Scalar::one(), "library weights".into()),
        (ok && ty.to_type() == Type::var("U"), format!("library bary check {ok} {ty}")),
    ];
    match checks.iter().find(|(pass, _)| !pass) {
        Some((_, why)) => Err(why.clone()),
        None => Ok(format!("weight 2, normal form {nf} of weight 1, bary type U")),
    }
}

fn unit_type_weight_half() -> Result<String, String> {
    let c = ctx(&[("x", "U -> 2.U"), ("y", "U")]);
    let t = parse_term("x (1/2.y)").unwrap();
    let (ty, _) = infer_scalar(&c, &t).map_err(|e| e.to_string())?;
    let w = weight(&t);
    let p = program("doubling_arg.lin");
    let cli = lineal(&["check", "--system", "scalar", p.to_str().unwrap()]);
    if ty.to_type() != Type::var("U") || w != q("1/2") || cli != (0, "OK : U".into()) {
        return Err(format!("type {ty}, weight {w}, cli {cli:?}"));
    }
    Ok("type U, weight 1/2".into())
}

fn factorisation_example() -> Result<String, String> {
    let t = r"\x:X. x";
    let typed = parse_term(t).unwrap();
    infer_scalar(&Context::new(), &typed).map_err(|e| e.to_string())?;
    let src = parse_term(&format!("2.({t}) - 2.({t})")).unwrap().erase();
    let n = normalize(&src, Mode::Unrestricted, DEFAULT_FUEL).map_err(|e| e.to_string())?;
    if n.term != Term::zero() || n.trace.steps.len() > 2 {
        return Err(format!("{} after {} steps", n.term, n.trace.steps.len()));
    }
    let y = r"(\y. (\x. y + x x) (\x. y + x x))";
    let yb = parse_term(&format!("2.({y} b) - 2.({y} b)")).unwrap();
    let at_root: Vec<RuleId> = applicable_redexes(&yb, Mode::Restricted)
        .into_iter()
        .filter(|r| r.position.is_empty())
        .map(|r| r.rule)
        .collect();
    if at_root.contains(&RuleId::F1) {
        return Err(format!("F1 enumerated at the root of {yb}"));
    }
    let inner: Vec<String> =
        applicable_redexes(&yb, Mode::Restricted).iter().map(|r| format_position(&r.position)).collect();
    Ok(format!("0 in {} steps; restricted redexes of the Y b difference at {:?}", n.trace.steps.len(), inner))
}

fn timed_suite(suite: Suite, cases: usize, limit: Option<Duration>) -> Result<String, String> {
    let start = Instant::now();
    let r = run_suite(suite, &GenConfig::with_seed(SEED), cases);
    let elapsed = start.elapsed();
    let s = clean(&r)?;
    if r.cases.len() != cases {
        return Err(format!("ran {} cases", r.cases.len()));
    }
    match limit {
        Some(l) if elapsed >= l => Err(format!("{s} took {elapsed:?}")),
        _ => Ok(format!("{s} in {elapsed:.1?}")),
    }
}

fn no_cloning() -> Result<String, String> {
    let r = run_suite(Suite::NoCloning, &GenConfig::with_seed(SEED), 100);
    let s = clean(&r)?;
    if r.count(lineal::harness::Outcome::Pass) != 100 {
        return Err(format!("{s}: fewer than 100 templates were probed"));
    }
    let samples: Vec<Scalar> = PROBE_SAMPLES.iter().map(|(n, d)| Scalar::ratio(*n, *d)).collect();
    let two = ScalarTemplate::parse(r"(?.\x:U. x) (?.y)", &Default::default()).unwrap();
    let d = probe_scalar_linearity(&two, &ctx(&[("y", "U")]), &samples).map_err(|e| e.to_string())?;
    if d != 2 {
        return Err(format!("two-hypothesis template has degree {d}"));
    }
    Ok(format!("{s}; two-hypothesis template degree 2"))
}

fn random_type(rng: &mut ChaCha8Rng, depth: usize) -> Type {
    let vars = ["X", "Y", "Z"];
    let leaf = depth == 0 || rng.gen_bool(0.25);
    if leaf {
        return if rng.gen_bool(0.1) { Type::Zero } else { Type::var(vars[rng.gen_range(0..3)]) };
    }
    match rng.gen_range(0..3) {
        0 => {
            let d = loop {
                if let Ok(u) = UnitType::new(random_type(rng, depth - 1)) {
                    break u;
                }
            };
            Type::arrow(d, random_type(rng, depth - 1))
        }
        1 => Type::forall(vars[rng.gen_range(0..3)], random_type(rng, depth - 1)),
        _ => Type::scale(Scalar::ratio(rng.gen_range(-3..=3), rng.gen_range(1..=3)), random_type(rng, depth - 1)),
    }
}

fn type_equivalence() -> Result<String, String> {
    let ty = |s: &str| parse_type(s).unwrap();
    let equal = [
        ("1.(X -> X)", "X -> X"),
        ("2.(3.X)", "6.X"),
        ("5.Zero", "Zero"),
        ("0.X", "Zero"),
        ("forall X. 2.X", "2.forall X. X"),
        ("forall X. 1/2.(X -> X)", "1/2.(forall X. X -> X)"),
    ];
    for (a, b) in equal {
        if !type_equiv(&ty(a), &ty(b)) {
            return Err(format!("{a} and {b} are not equivalent"));
        }
    }
    if type_equiv(&ty("X -> 2.X"), &ty("2.(X -> X)")) {
        return Err("X -> 2.X was equated with 2.(X -> X)".into());
    }
    let mut rng = ChaCha8Rng::seed_from_u64(SEED);
    for _ in 0..10_000 {
        let t = random_type(&mut rng, 5);
        let c = canonicalize(&t);
        if canonicalize(&c.to_type()) != c || !type_equiv(&t, &c.to_type()) {
            return Err(format!("canonicalize not idempotent on {t}"));
        }
    }
    Ok("five axioms, forall float, non-example, 10000 idempotent canonicalizations".into())
}

type Criterion = (&'static str, Box<dyn Fn() -> Result<String, String>>);

fn main() -> ExitCode {
    let criteria: Vec<Criterion> = vec![
        ("barycentric example", Box::new(barycentric_example)),
        ("weight before and after reduction", Box::new(weight_under_reduction)),
        ("unit type with weight 1/2", Box::new(unit_type_weight_half)),
        ("factorisation and its restriction", Box::new(factorisation_example)),
        ("subject reduction", Box::new(|| timed_suite(Suite::SubjectReduction, 1000, Some(Duration::from_secs(60))))),
        ("strong normalisation", Box::new(|| timed_suite(Suite::Sn, 1000, None))),
        ("scalar-free correspondence", Box::new(|| timed_suite(Suite::Correspondence, 1000, None))),
        ("weight one", Box::new(|| timed_suite(Suite::Weight1, 500, None))),
        ("uniqueness of scalars", Box::new(|| timed_suite(Suite::Uniqueness, 200, None))),
        ("local confluence", Box::new(|| timed_suite(Suite::Confluence, 500, None))),
        ("no-cloning probe", Box::new(no_cloning)),
        ("type equivalence", Box::new(type_equivalence)),
    ];
    let mut failed = 0;
    for (i, (name, run)) in criteria.iter().enumerate() {
        let result = catch_unwind(AssertUnwindSafe(run)).unwrap_or_else(|_| Err("panicked".into()));
        match result {
            Ok(msg) => println!("PASS criterion {:>2} {name}: {msg}", i + 1),
            Err(msg) => {
                failed += 1;
                println!("FAIL criterion {:>2} {name}: {msg}", i + 1);
            }
        }
    }
    println!("{} of {} criteria passed", criteria.len() - failed, criteria.len());
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
