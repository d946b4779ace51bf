//! Carry a reduction step of an erased term back to its annotated source, so
//! the reduct can be type checked again.

use std::collections::BTreeSet;

use thiserror::Error;

use crate::rewrite::{fire, Redex, RuleId};
use crate::scalar::Scalar;
use crate::term::Term;
use crate::types::{fresh_name, Type};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum TransportError {
    #[error("no annotated counterpart at @{0}")]
    NoCounterpart(String),
    #[error("annotated term does not have the shape of rule {0}")]
    ShapeMismatch(RuleId),
    #[error("erased redex does not fire: {0}")]
    Erased(String),
}

/// Type variables free in the annotations of `t`.
pub fn term_free_type_vars(t: &Term) -> BTreeSet<String> {
    let mut out = BTreeSet::new();
    collect_ftv(t, &mut out);
    out
}

fn collect_ftv(t: &Term, out: &mut BTreeSet<String>) {
    match t {
        Term::Abs(_, Some(a), b) => {
            out.extend(a.free_vars());
            collect_ftv(b, out);
        }
        Term::TyApp(u, v) => {
            out.extend(v.free_vars());
            collect_ftv(u, out);
        }
        Term::Zero(Some(a)) => out.extend(a.free_vars()),
        Term::TyAbs(x, u) => {
            let mut inner = BTreeSet::new();
            collect_ftv(u, &mut inner);
            inner.remove(x);
            out.extend(inner);
        }
        _ => t.children().into_iter().for_each(|c| collect_ftv(c, out)),
    }
}

fn all_type_names(t: &Term, out: &mut BTreeSet<String>) {
    match t {
        Term::Abs(_, Some(a), _) | Term::Zero(Some(a)) => a.all_vars(out),
        Term::TyApp(_, v) => v.all_vars(out),
        Term::TyAbs(x, _) => {
            out.insert(x.clone());
        }
        _ => {}
    }
    t.children().into_iter().for_each(|c| all_type_names(c, out));
}

/// `t[v/x]` on the type level, renaming type abstractions that would capture.
pub fn subst_type_in_term(t: &Term, x: &str, v: &Type) -> Term {
    match t {
        Term::Abs(h, ann, b) => Term::Abs(h.clone(), ann.as_ref().map(|a| a.subst(x, v)), Box::new(subst_type_in_term(b, x, v))),
        Term::TyApp(u, w) => Term::TyApp(Box::new(subst_type_in_term(u, x, v)), w.subst(x, v)),
        Term::Zero(Some(a)) => Term::Zero(Some(a.subst(x, v))),
        Term::TyAbs(y, _) if y == x => t.clone(),
        Term::TyAbs(y, u) => {
            if v.free_vars().contains(y) && term_free_type_vars(u).contains(x) {
                let mut avoid = v.free_vars();
                all_type_names(u, &mut avoid);
                avoid.insert(x.to_string());
                let z = fresh_name(y, &avoid);
                let renamed = subst_type_in_term(u, y, &Type::var(&z));
                Term::TyAbs(z, Box::new(subst_type_in_term(&renamed, x, v)))
            } else {
                Term::TyAbs(y.clone(), Box::new(subst_type_in_term(u, x, v)))
            }
        }
        _ => t.map_children(|c| subst_type_in_term(c, x, v)),
    }
}

/// Rename type abstractions of `t` whose variable is in `fv`.
fn avoid_type_capture(t: &Term, fv: &BTreeSet<String>) -> Term {
    match t {
        Term::TyAbs(y, u) if fv.contains(y) => {
            let mut avoid = fv.clone();
            all_type_names(t, &mut avoid);
            let z = fresh_name(y, &avoid);
            let renamed = subst_type_in_term(u, y, &Type::var(&z));
            Term::TyAbs(z, Box::new(avoid_type_capture(&renamed, fv)))
        }
        _ => t.map_children(|c| avoid_type_capture(c, fv)),
    }
}

/// Push type abstractions and applications inside scalings, sums and zeros,
/// and contract `(/\X. u) [V]`. Erasure and type are unchanged.
pub fn normalize_types(t: &Term) -> Term {
    let t = t.map_children(normalize_types);
    match t {
        Term::TyApp(u, v) => match *u {
            Term::Scale(a, w) => Term::Scale(a, Box::new(normalize_types(&Term::TyApp(w, v)))),
            Term::Sum(ts) => Term::sum(ts.into_iter().map(|w| normalize_types(&Term::ty_app(w, v.clone())))),
            Term::Zero(_) => Term::zero(),
            Term::TyAbs(x, w) => normalize_types(&subst_type_in_term(&w, &x, &v)),
            other => Term::TyApp(Box::new(other), v),
        },
        Term::TyAbs(x, u) => match *u {
            Term::Scale(a, w) => Term::Scale(a, Box::new(normalize_types(&Term::TyAbs(x, w)))),
            Term::Sum(ts) => Term::sum(ts.into_iter().map(|w| normalize_types(&Term::ty_abs(&x, w)))),
            Term::Zero(_) => Term::zero(),
            other => Term::TyAbs(x, Box::new(other)),
        },
        other => other,
    }
}

/// Annotated addend index for each erased addend index.
fn sum_order(ts: &[Term]) -> Vec<usize> {
    let erased: Vec<Term> = ts.iter().map(Term::erase).collect();
    let mut idx: Vec<usize> = (0..ts.len()).collect();
    idx.sort_by(|&a, &b| erased[a].cmp(&erased[b]));
    idx
}

/// Annotated reducts whose erasure is the erased reduct of `annotated` at
/// `redex`. Factorisation rules yield one candidate per merged addend.
pub fn transport(annotated: &Term, redex: &Redex) -> Result<Vec<Term>, TransportError> {
    let a = normalize_types(annotated);
    let expected = fire(&a.erase(), redex).map_err(|e| TransportError::Erased(e.to_string()))?;
    let out = apply_at(&a, &redex.position, redex)?;
    Ok(out.into_iter().filter(|t| t.erase() == expected).collect())
}

fn apply_at(t: &Term, path: &[usize], redex: &Redex) -> Result<Vec<Term>, TransportError> {
    match t {
        Term::TyAbs(x, u) => return Ok(apply_at(u, path, redex)?.into_iter().map(|r| Term::ty_abs(x, r)).collect()),
        Term::TyApp(u, v) => {
            return Ok(apply_at(u, path, redex)?.into_iter().map(|r| Term::ty_app(r, v.clone())).collect())
        }
        _ => {}
    }
    let Some((&i, rest)) = path.split_first() else {
        return contract(t, redex);
    };
    let kids: Vec<&Term> = t.children();
    let k = match t {
        Term::Sum(ts) => *sum_order(ts).get(i).ok_or_else(|| missing(redex))?,
        _ => i,
    };
    let child = kids.get(k).ok_or_else(|| missing(redex))?;
    let results = apply_at(child, rest, redex)?;
    Ok(results
        .into_iter()
        .map(|r| {
            let mut new_kids: Vec<Term> = kids.iter().map(|c| (*c).clone()).collect();
            new_kids[k] = r;
            t.with_children(new_kids)
        })
        .collect())
}

fn missing(redex: &Redex) -> TransportError {
    TransportError::NoCounterpart(crate::rewrite::format_position(&redex.position))
}

fn contract(node: &Term, redex: &Redex) -> Result<Vec<Term>, TransportError> {
    use RuleId::*;
    let bad = || TransportError::ShapeMismatch(redex.rule);
    let pair = |ts: &[Term]| -> Result<(usize, usize), TransportError> {
        let (i, j) = redex.addends.ok_or_else(bad)?;
        let order = sum_order(ts);
        Ok((*order.get(i).ok_or_else(bad)?, *order.get(j).ok_or_else(bad)?))
    };
    let merge = |ts: &[Term], i: usize, j: usize, merged: Term| {
        let rest = ts.iter().enumerate().filter(|(k, _)| *k != i && *k != j).map(|(_, t)| t.clone());
        Term::sum(rest.chain(std::iter::once(merged)))
    };
    let one = |t: Term| Ok(vec![t]);
    match (redex.rule, node) {
        (E1, Term::Sum(ts)) => {
            let z = ts.iter().position(|a| matches!(a, Term::Zero(_))).ok_or_else(bad)?;
            one(Term::sum(ts.iter().enumerate().filter(|(k, _)| *k != z).map(|(_, t)| t.clone())))
        }
        (E2 | E4, Term::Scale(..)) => one(Term::zero()),
        (E3, Term::Scale(_, b)) => one((**b).clone()),
        (E5, Term::Scale(a, b)) => match &**b {
            Term::Scale(c, t) => one(Term::scale(a * c, (**t).clone())),
            _ => Err(bad()),
        },
        (E6, Term::Scale(a, b)) => match &**b {
            Term::Sum(ts) => one(Term::sum(ts.iter().map(|t| Term::scale(a.clone(), t.clone())))),
            _ => Err(bad()),
        },
        (F1, Term::Sum(ts)) => {
            let (i, j) = pair(ts)?;
            match (&ts[i], &ts[j]) {
                (Term::Scale(a, t), Term::Scale(b, u)) => {
                    let s = a + b;
                    Ok(vec![
                        merge(ts, i, j, Term::scale(s.clone(), (**t).clone())),
                        merge(ts, i, j, Term::scale(s, (**u).clone())),
                    ])
                }
                _ => Err(bad()),
            }
        }
        (F2, Term::Sum(ts)) => {
            let (i, j) = pair(ts)?;
            match &ts[i] {
                Term::Scale(a, t) => {
                    let s = a + &Scalar::one();
                    Ok(vec![
                        merge(ts, i, j, Term::scale(s.clone(), (**t).clone())),
                        merge(ts, i, j, Term::scale(s, ts[j].clone())),
                    ])
                }
                _ => Err(bad()),
            }
        }
        (F3, Term::Sum(ts)) => {
            let (i, j) = pair(ts)?;
            let two = Scalar::from_int(2);
            Ok(vec![
                merge(ts, i, j, Term::scale(two.clone(), ts[i].clone())),
                merge(ts, i, j, Term::scale(two, ts[j].clone())),
            ])
        }
        (A1, Term::App(f, u)) => match &**f {
            Term::Sum(ts) => one(Term::sum(ts.iter().map(|t| Term::app(t.clone(), (**u).clone())))),
            _ => Err(bad()),
        },
        (A2, Term::App(u, a)) => match &**a {
            Term::Sum(ts) => one(Term::sum(ts.iter().map(|t| Term::app((**u).clone(), t.clone())))),
            _ => Err(bad()),
        },
        (A3, Term::App(f, r)) => match &**f {
            Term::Scale(a, t) => one(Term::scale(a.clone(), Term::app((**t).clone(), (**r).clone()))),
            _ => Err(bad()),
        },
        (A4, Term::App(r, a)) => match &**a {
            Term::Scale(s, t) => one(Term::scale(s.clone(), Term::app((**r).clone(), (**t).clone()))),
            _ => Err(bad()),
        },
        (A5 | A6, Term::App(..)) => one(Term::zero()),
        (B, Term::App(f, b)) => match &**f {
            Term::Abs(_, _, body) => {
                let body = avoid_type_capture(body, &term_free_type_vars(b));
                one(Term::instantiate(&body, b))
            }
            _ => Err(bad()),
        },
        _ => Err(bad()),
    }
}
