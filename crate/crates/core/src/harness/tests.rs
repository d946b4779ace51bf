use std::collections::BTreeSet;

use super::*;
use crate::check::{infer_scalar, Context, Rule};
use crate::rewrite::{applicable_redexes, Mode, RuleId};
use crate::syntax::parse_term;
use crate::term::Term;

fn cfg(seed: u64) -> GenConfig {
    GenConfig::with_seed(seed)
}

#[test]
fn typed_generation_is_reproducible_and_well_typed() {
    for i in 0..50 {
        let a = gen_typed_case(&cfg(1), i);
        let b = gen_typed_case(&cfg(1), i);
        assert_eq!(a.term, b.term);
        assert!(a.term.size() <= 30);
        let (ty, _) = infer_scalar(&Context::new(), &a.term).unwrap();
        assert!(ty.alpha_eq(&a.ty));
    }
    assert_ne!(gen_typed_term(&cfg(1)), gen_typed_term(&cfg(2)));
}

#[test]
fn every_typing_rule_is_generated() {
    let mut seen = BTreeSet::new();
    for i in 0..1000 {
        let t = gen_typed_case(&cfg(3), i).term;
        let (_, d) = infer_scalar(&Context::new(), &t).unwrap();
        seen.extend(d.rule_counts().into_keys());
    }
    let all: BTreeSet<Rule> = Rule::ALL.into_iter().collect();
    assert_eq!(seen, all);
}

#[test]
fn untyped_corpus_shape() {
    let c = cfg(4);
    let y = parse_term(r"\y. (\x. y + x x) (\x. y + x x)").unwrap();
    assert_eq!(gen_untyped_term(&c, 0), y);
    let terms: Vec<Term> = (0..200).map(|i| gen_untyped_term(&c, i)).collect();
    assert!(terms.iter().any(Term::is_closed));
    assert!(terms.iter().any(|t| !t.is_closed()));
    assert!(terms.iter().all(|t| t.size() <= c.max_term_size && !t.has_dangling(0)));
}

#[test]
fn joinability_examples() {
    let a = parse_term("x").unwrap();
    assert!(joinable(&a, &a, Mode::Restricted, 0));
    let t = parse_term(r"1.((\x. x x) b)").unwrap();
    let rs: Vec<Term> = crate::rewrite::one_step_reducts(&t, Mode::Restricted).into_iter().map(|(_, u)| u).collect();
    assert_eq!(rs.len(), 2);
    assert!(joinable(&rs[0], &rs[1], Mode::Restricted, 6));
    let (p, q) = (parse_term(r"\x. x").unwrap(), parse_term(r"\x. \y. x").unwrap());
    assert!(!joinable(&p, &q, Mode::Restricted, 6));
    assert_eq!(join_check(&p, &q, Mode::Restricted, 6, DEFAULT_NODE_CAP), Joinability::Disproved);
    let y = parse_term(r"(\y. (\x. y + x x) (\x. y + x x)) b").unwrap();
    assert_eq!(join_check(&y, &p, Mode::Restricted, 3, DEFAULT_NODE_CAP), Joinability::Inconclusive);
}

#[test]
fn transport_through_type_abstraction() {
    let t = parse_term(r"(/\X. \x:X. x) [Y -> Y] (\y:Y. y)").unwrap();
    let erased = t.erase();
    let r = applicable_redexes(&erased, Mode::Unrestricted).remove(0);
    assert_eq!(r.rule, RuleId::B);
    let out = transport(&t, &r).unwrap();
    assert_eq!(out, vec![parse_term(r"\y:Y. y").unwrap()]);
}

#[test]
fn transport_renames_captured_type_variables() {
    // the argument mentions Y in an annotation; substituting it under /\Y
    // must rename that binder
    let t = parse_term(
        r"(\f:X -> X. /\Y. \z:Y. (\g:X -> X. z) f) (\w:X. (\q:Y -> Y. w) (\r:Y. r))",
    )
    .unwrap();
    let ty = infer_scalar(&Context::new(), &t).unwrap().0;
    let erased = t.erase();
    let r = applicable_redexes(&erased, Mode::Unrestricted).into_iter().find(|r| r.position.is_empty()).unwrap();
    let out = transport(&t, &r).unwrap();
    assert_eq!(out.len(), 1);
    let Term::TyAbs(binder, _) = &out[0] else { panic!("{}", out[0]) };
    assert_ne!(binder, "Y");
    assert!(term_free_type_vars(&out[0]).contains("Y"));
    let (got, _) = infer_scalar(&Context::new(), &out[0]).unwrap();
    assert!(got.alpha_eq(&ty), "{} : {got}", out[0]);
}

#[test]
fn type_normalization_keeps_erasure_and_type() {
    for i in 0..200 {
        let t = gen_typed_case(&cfg(5), i).term;
        let n = normalize_types(&t);
        assert_eq!(n.erase(), t.erase());
        let a = infer_scalar(&Context::new(), &t).unwrap().0;
        let b = infer_scalar(&Context::new(), &n).unwrap().0;
        assert!(a.alpha_eq(&b), "{t} vs {n}");
    }
}

#[test]
fn shrinking_is_locally_minimal() {
    let t = parse_term(r"(\x. x) (2.y + z) + 3.w").unwrap();
    let fails = |u: &Term| u.free_vars().contains("y");
    let small = shrink(&t, fails);
    assert_eq!(small, Term::var("y"));
    assert!(single_deletions(&small).iter().all(|u| !fails(u)));
}

#[test]
fn reports_are_deterministic() {
    let c = cfg(7);
    for suite in Suite::ALL {
        let a = run_suite(suite, &c, 12).render();
        let b = run_suite(suite, &c, 12).render();
        assert_eq!(a, b, "{suite}");
        assert!(a.lines().last().unwrap().starts_with(&format!("SUMMARY {suite} seed=7 cases=12 ")));
    }
}

#[test]
fn suite_names_parse() {
    for s in Suite::ALL {
        assert_eq!(s.name().parse::<Suite>().unwrap(), s);
    }
    assert!("nope".parse::<Suite>().is_err());
}
