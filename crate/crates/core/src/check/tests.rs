use super::*;
use crate::scalar::Scalar;
use crate::syntax::{parse_term_in, parse_type, Scope};
use crate::types::{type_equiv, Canonical, Type};

fn scope() -> Scope {
    let src = r"
        type B = forall X. X -> X -> X;
        let true = /\X. \x:X. \y:X. x;
        let false = /\X. \x:X. \y:X. y;
        0";
    crate::syntax::parse_source(src, &Scope::default()).unwrap().scope
}

fn t(src: &str) -> Term {
    parse_term_in(src, &scope()).unwrap()
}

fn ty(src: &str) -> Type {
    crate::syntax::parse_type_in(src, &scope()).unwrap()
}

fn ctx(pairs: &[(&str, &str)]) -> Context {
    Context::from_pairs(pairs.iter().map(|(n, s)| (n.to_string(), ty(s)))).unwrap()
}

const F: &str = r"\x:B. (x [B] (1/2.(true + false))) (1/4.true + 3/4.false)";

fn infer(c: &Context, src: &str) -> Canonical {
    infer_scalar(c, &t(src)).unwrap().0
}

#[test]
fn doubling_function_on_half_types_at_unit() {
    let c = ctx(&[("x", "U -> 2.U"), ("y", "U")]);
    assert!(infer(&c, "x (1/2.y)").alpha_eq(&Canonical::unit(UnitType::var("U"))));
}

#[test]
fn barycentric_function_type() {
    let c = infer(&Context::new(), F);
    assert!(type_equiv(&c.to_type(), &ty("B -> B")), "{c}");
    let (ok, c, _) = check_barycentric(&Context::new(), &t(F)).unwrap();
    assert!(ok);
    assert!(type_equiv(&c.to_type(), &ty("B -> B")));
}

#[test]
fn polymorphic_identity_and_scaling() {
    let id = infer(&Context::new(), r"/\X. \x:X. x");
    assert!(id.to_type().alpha_eq(&ty("forall X. X -> X")));
    let half = infer(&Context::new(), r"1/2.(/\X. \x:X. x)");
    assert_eq!(half.scalar(), Scalar::ratio(1, 2));
    assert!(type_equiv(&half.to_type(), &ty("1/2.forall X. X -> X")));
    let floated = infer(&Context::new(), r"/\X. 1/2.(\x:X. x)");
    assert!(floated.alpha_eq(&half));
}

#[test]
fn scaled_pair_is_barycentric() {
    let c = ctx(&[("z", "U"), ("w", "U")]);
    let src = t(r"(2.\x:U. \y:U. 1/4.x + 1/4.y) z w");
    let (ok, c, _) = check_barycentric(&c, &src).unwrap();
    assert!(ok);
    assert!(c.to_type().alpha_eq(&Type::var("U")));
}

#[test]
fn scaled_identity_is_not_barycentric() {
    let (ok, c, _) = check_barycentric(&Context::new(), &t(r"1/2.(\x:X. x)")).unwrap();
    assert!(!ok);
    assert_eq!(c.scalar(), Scalar::ratio(1, 2));
}

#[test]
fn barycentric_restrictions() {
    let bad = ctx(&[("x", "X -> 2.X")]);
    assert!(matches!(check_barycentric(&bad, &t("x")), Err(TypeError::NonClassicalContext(_))));
    let src = t(r"(/\X. \x:X. x) [Y -> 2.Y]");
    assert!(infer_scalar(&Context::new(), &src).is_ok());
    assert!(matches!(
        check_barycentric(&Context::new(), &src),
        Err(TypeError::NonClassicalTypeApplication(_))
    ));
    assert!(matches!(
        check_barycentric(&Context::new(), &t(r"\x:X -> 2.X. x")),
        Err(TypeError::NonClassicalContext(_))
    ));
}

#[test]
fn type_errors() {
    let c = ctx(&[("x", "X"), ("y", "Y")]);
    assert!(matches!(infer_scalar(&c, &t("x + y")), Err(TypeError::SumUnitMismatch { .. })));
    assert!(matches!(infer_scalar(&c, &t("x y")), Err(TypeError::NotAnArrow { .. })));
    assert!(matches!(infer_scalar(&c, &t("x [Y]")), Err(TypeError::NotAForall { .. })));
    assert!(matches!(infer_scalar(&c, &t("z")), Err(TypeError::UnboundVariable(_))));
    assert!(matches!(infer_scalar(&c, &t(r"/\X. x")), Err(TypeError::ForallEscape(_))));
    assert!(matches!(infer_scalar(&c, &t(r"\z. z")), Err(TypeError::MissingAnnotation(_))));
    let f = ctx(&[("f", "X -> X"), ("y", "Y")]);
    assert!(matches!(infer_scalar(&f, &t("f y")), Err(TypeError::DomainMismatch { .. })));
}

#[test]
fn zero_absorbs() {
    let c = ctx(&[("x", "X"), ("f", "X -> X")]);
    assert!(infer(&c, "x + 0").alpha_eq(&Canonical::unit(UnitType::var("X"))));
    assert!(infer(&c, "x - x").is_zero());
    assert!(infer(&c, "0 x").is_zero());
    assert!(infer(&c, "f 0").is_zero());
    assert!(infer(&c, r"/\Y. 0").is_zero());
}

#[test]
fn derivations_are_deterministic_and_labelled() {
    let c = ctx(&[("x", "U -> 2.U"), ("y", "U")]);
    let (_, d1) = infer_scalar(&c, &t("x (1/2.y)")).unwrap();
    let (_, d2) = infer_scalar(&c, &t("x (1/2.y)")).unwrap();
    assert_eq!(d1, d2);
    assert_eq!(d1.rule, Rule::Equiv);
    assert_eq!(d1.premises[0].rule, Rule::ArrowE);
    assert_eq!(d1.size(), 2);
    let pretty = d1.pretty();
    assert!(pretty.starts_with("[≡] x : U -> 2.U, y : U ⊢ x (1/2.y) : U\n"), "{pretty}");
    assert!(pretty.contains("  [→E] "));
    let export = d1.export();
    assert!(export.starts_with("(equiv \"x : U -> 2.U, y : U\" \"x (1/2.y)\" \"U\"\n  (arrow-e"), "{export}");
}

#[test]
fn system_f_examples() {
    let e = Context::new();
    assert!(infer_f(&e, &t(r"(\x:X. x) + (\y:X. y)")).unwrap().alpha_eq(&ty("X -> X")));
    assert!(infer_f(&e, &t(r"7.(\x:X. x)")).unwrap().alpha_eq(&ty("X -> X")));
    assert!(infer_f(&e, &t("(0 : X -> X)")).unwrap().alpha_eq(&ty("X -> X")));
    assert_eq!(infer_f(&e, &t("0")), Err(TypeError::MissingZeroAnnotation));
    assert!(infer_f(&e, &t(r"(\x:X. x) + (\y:Y. y)")).is_err());
}

#[test]
fn forgetting() {
    assert!(forget(&ty("1/2.(B -> B)")).alpha_eq(&ty("B -> B")));
    assert_eq!(forget(&ty("X")), ty("X"));
    assert!(forget(&ty("forall X. 3.(X -> X)")).alpha_eq(&ty("forall X. X -> X")));
    let z = forget(&Type::Zero);
    assert!(matches!(&z, Type::Var(n) if is_hole(n)));
}

#[test]
fn correspondence_examples() {
    let e = Context::new();
    assert!(check_correspondence(&e, &t(F)));
    assert!(check_correspondence(&e, &t(r"/\X. \x:X. x")));
    let c = ctx(&[("x", "U -> 2.U"), ("y", "U")]);
    assert!(check_correspondence(&c, &t("x (1/2.y)")));
    assert!(check_correspondence(&c, &t("x 0 + 0")));
}

#[test]
fn zero_scaled_argument_of_another_unit_breaks_correspondence() {
    // typable in the scalar system because 0.(Y -> Y) is the zero type, but the
    // scalar-free system sees an argument of type Y -> Y where X is expected
    let c = ctx(&[("x", "X -> X")]);
    let src = t(r"x (0.\y:Y. y)");
    assert!(infer(&c, r"x (0.\y:Y. y)").is_zero());
    assert!(!check_correspondence(&c, &src));
}

#[test]
fn probe_degrees() {
    let s = |v: &[(i64, i64)]| v.iter().map(|(n, d)| Scalar::ratio(*n, *d)).collect::<Vec<_>>();
    let samples = s(&[(1, 2), (1, 1), (2, 1), (3, 1)]);
    let e = Context::new();
    let lin = ScalarTemplate::parse(r"?.(\x:U. x)", &scope()).unwrap();
    assert_eq!(probe_scalar_linearity(&lin, &e, &samples), Ok(1));
    let c = ctx(&[("y", "U")]);
    let quad = ScalarTemplate::parse(r"(?.\x:U. x) (?.y)", &scope()).unwrap();
    assert_eq!(probe_scalar_linearity(&quad, &c, &samples), Ok(2));
    let constant = ScalarTemplate::new("id", |_| t(r"\x:U. x"));
    assert_eq!(probe_scalar_linearity(&constant, &e, &samples), Ok(0));
    assert_eq!(probe_scalar_linearity(&lin, &e, &samples[..3]), Err(ProbeError::TooFewSamples(3)));
    let bad = ScalarTemplate::parse("?.z", &scope()).unwrap();
    assert!(matches!(probe_scalar_linearity(&bad, &e, &samples), Err(ProbeError::TemplateIllTyped { .. })));
}

#[test]
fn interpolation() {
    let pts = |f: &dyn Fn(i64) -> i64| (0..5).map(|x| (Scalar::from_int(x), Scalar::from_int(f(x)))).collect::<Vec<_>>();
    assert_eq!(interpolation_degree(&pts(&|x| 3 * x * x * x - x)), 3);
    assert_eq!(interpolation_degree(&pts(&|_| 0)), 0);
    assert_eq!(interpolation_degree(&pts(&|x| 2 * x + 1)), 1);
}

#[test]
fn contexts_reject_duplicates_and_non_units() {
    assert!(Context::from_pairs([("x", ty("X")), ("x", ty("Y"))]).is_err());
    assert!(Context::from_pairs([("x", parse_type("2.X").unwrap())]).is_err());
}
