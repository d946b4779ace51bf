//! Re-annotations of a term that keep its erasure and, by the equivalence
//! on types, its type.

use std::collections::BTreeSet;

use rand::Rng;
use rand_chacha::ChaCha8Rng;

use super::transport::normalize_types;
use crate::scalar::Scalar;
use crate::term::Term;
use crate::types::{fresh_name, Type};

/// Rewrite a type into an equivalent one with a different spelling. Only
/// arrow codomains are touched so unit types stay units.
fn respell(ty: &Type, rng: &mut ChaCha8Rng, avoid: &mut BTreeSet<String>) -> Type {
    match ty {
        Type::Var(_) | Type::Zero => ty.clone(),
        Type::Arrow(d, c) => {
            let d = respell(d, rng, avoid);
            let c = respell(c, rng, avoid);
            let c = match rng.gen_range(0..4) {
                0 => Type::scale(Scalar::one(), c),
                1 => match c {
                    Type::Scale(a, inner) => {
                        let half = Scalar::ratio(1, 2);
                        Type::scale(&a * &half, Type::scale(Scalar::from_int(2), *inner))
                    }
                    other => other,
                },
                2 => match c {
                    Type::Scale(a, inner) => match *inner {
                        Type::Forall(x, body) => Type::forall(&x, Type::scale(a, *body)),
                        other => Type::scale(a, other),
                    },
                    other => other,
                },
                _ => c,
            };
            Type::Arrow(Box::new(d), Box::new(c))
        }
        Type::Forall(x, body) => {
            let body = respell(body, rng, avoid);
            if rng.gen_bool(0.5) {
                let y = fresh_name("R", avoid);
                avoid.insert(y.clone());
                Type::forall(&y, body.subst(x, &Type::var(&y)))
            } else {
                Type::forall(x, body)
            }
        }
        Type::Scale(a, body) => Type::scale(a.clone(), respell(body, rng, avoid)),
    }
}

fn type_names(t: &Term, out: &mut BTreeSet<String>) {
    match t {
        Term::Abs(_, Some(a), _) | Term::Zero(Some(a)) => a.all_vars(out),
        Term::TyApp(_, v) => v.all_vars(out),
        Term::TyAbs(x, _) => {
            out.insert(x.clone());
        }
        _ => {}
    }
    t.children().into_iter().for_each(|c| type_names(c, out));
}

/// Respell every annotation and type argument.
pub fn respell_annotations(t: &Term, rng: &mut ChaCha8Rng) -> Term {
    let mut avoid = BTreeSet::new();
    type_names(t, &mut avoid);
    t.map_types(&mut |ty| respell(ty, rng, &mut avoid))
}

/// Wrap random subterms `s` as `(/\X. s) [X -> X]` with a fresh `X`.
pub fn insert_type_redexes(t: &Term, rng: &mut ChaCha8Rng) -> Term {
    let mut avoid = BTreeSet::new();
    type_names(t, &mut avoid);
    wrap(t, rng, &mut avoid)
}

fn wrap(t: &Term, rng: &mut ChaCha8Rng, avoid: &mut BTreeSet<String>) -> Term {
    let inner = t.map_children(|c| wrap(c, rng, avoid));
    if rng.gen_bool(0.25) {
        let x = fresh_name("W", avoid);
        avoid.insert(x.clone());
        let arg = Type::Arrow(Box::new(Type::var(&x)), Box::new(Type::var(&x)));
        Term::ty_app(Term::ty_abs(&x, inner), arg)
    } else {
        inner
    }
}

/// A few annotation variants of `t`, all with the same erasure.
pub fn variants(t: &Term, rng: &mut ChaCha8Rng) -> Vec<(&'static str, Term)> {
    vec![
        ("respelled", respell_annotations(t, rng)),
        ("type-redexes", insert_type_redexes(t, rng)),
        ("type-normal", normalize_types(t)),
        ("both", respell_annotations(&insert_type_redexes(t, rng), rng)),
    ]
}
