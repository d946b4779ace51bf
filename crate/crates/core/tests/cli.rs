use std::path::PathBuf;
use std::process::Command;

fn program(name: &str) -> String {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("programs").join(name).to_string_lossy().into_owned()
}

fn run(args: &[&str]) -> (i32, String, String) {
    let out = Command::new(env!("CARGO_BIN_EXE_lineal")).args(args).output().unwrap();
    (
        out.status.code().unwrap(),
        String::from_utf8(out.stdout).unwrap(),
        String::from_utf8(out.stderr).unwrap(),
    )
}

#[test]
fn check_systems() {
    let f = program("barycentric_f.lin");
    assert_eq!(run(&["check", "--system", "bary", "--prelude", &f]).1, "OK : B -> B\n");
    assert_eq!(run(&["check", "--system", "f", "--prelude", &f]).1, "OK : B -> B\n");
    assert_eq!(run(&["check", &program("doubling_arg.lin")]).1, "OK : U\n");
    let (code, _, err) = run(&["check", "--system", "bary", &program("doubling_arg.lin")]);
    assert_eq!(code, 1);
    assert!(err.contains("not a classical type"), "{err}");
}

#[test]
fn check_prints_derivation() {
    let (code, out, _) = run(&["check", "--derivation", &program("doubling_arg.lin")]);
    assert_eq!(code, 0);
    assert!(out.starts_with("OK : U\n(equiv \"x : U -> 2.U, y : U\" \"x (1/2.y)\" \"U\"\n  (arrow-e"), "{out}");
}

#[test]
fn type_errors_exit_1() {
    let (code, out, err) = run(&["check", &program("illtyped_sum.lin")]);
    assert_eq!((code, out.as_str()), (1, ""));
    assert!(err.contains("different units"), "{err}");
}

#[test]
fn parse_errors_exit_2() {
    let dir = std::env::temp_dir().join(format!("lineal-cli-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let bad = dir.join("bad.lin");
    std::fs::write(&bad, "x +\n").unwrap();
    let (code, _, err) = run(&["check", bad.to_str().unwrap()]);
    assert_eq!(code, 2);
    assert!(err.contains(":2:1:"), "{err}");
    assert_eq!(run(&["check", "missing.lin"]).0, 2);
}

#[test]
fn reduce_with_prelude_names() {
    let (code, out, _) = run(&["reduce", "--prelude", &program("barycentric_app.lin")]);
    assert_eq!((code, out.as_str()), (0, "3/8.true + 5/8.false\n"));
    assert_eq!(run(&["reduce", &program("zero_app.lin")]).1, "0\n");
}

#[test]
fn reduce_trace_and_fuel() {
    let (code, out, _) = run(&["reduce", "--trace", "--mode", "unrestricted", &program("scaled_pair.lin")]);
    assert_eq!(code, 0);
    assert!(out.starts_with("STEP 1 @"), "{out}");
    assert!(out.ends_with("1/2.w + 1/2.z\n"), "{out}");
    let (code, out, err) = run(&["reduce", "--fuel", "50", "--trace", &program("y_comb.lin")]);
    assert_eq!(code, 3);
    assert_eq!(out.lines().count(), 50);
    assert!(err.contains("FuelExhausted"), "{err}");
}

#[test]
fn weights() {
    let p = program("scaled_pair.lin");
    assert_eq!(run(&["weight", &p]).1, "2\n");
    assert_eq!(run(&["weight", "--after-reduce", &p]).1, "1\n");
    assert_eq!(run(&["weight", "--after-reduce", "--mode", "restricted", &p]).1, "2\n");
}

#[test]
fn suites_are_deterministic() {
    let a = run(&["suite", "subject-reduction", "--seed", "7", "--cases", "40"]);
    let b = run(&["suite", "subject-reduction", "--seed", "7", "--cases", "40"]);
    assert_eq!(a.0, 0);
    assert_eq!(a.1, b.1);
    assert!(a.1.ends_with("SUMMARY subject-reduction seed=7 cases=40 pass=40 fail=0 inconclusive=0\n"), "{}", a.1);
    assert_eq!(run(&["suite", "no-such-suite"]).0, 2);
}
