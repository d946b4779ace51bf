//! Oriented reduction rules of the calculus, modulo associativity and
//! commutativity of `+`.
//!
//! Rules operate on erased terms. In [`Mode::Restricted`] the factorisation
//! rules and the scalar application rules fire only on closed normal operands,
//! and the sum distribution rules only on closed normal sums. In
//! [`Mode::Unrestricted`] those side conditions are dropped; beta reduction on
//! base arguments only is kept in both modes.

mod weight;

pub use weight::{decompose_normal, weight, DecomposeError};

use std::fmt;

use thiserror::Error;

use crate::scalar::Scalar;
use crate::term::{Position, Term};

pub const DEFAULT_FUEL: usize = 100_000;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum RuleId {
    /// `t + 0 → t`
    E1,
    /// `0.t → 0`
    E2,
    /// `1.t → t`
    E3,
    /// `α.0 → 0`
    E4,
    /// `α.(β.t) → (α×β).t`
    E5,
    /// `α.(t + r) → α.t + α.r`
    E6,
    /// `α.t + β.t → (α+β).t`
    F1,
    /// `α.t + t → (α+1).t`
    F2,
    /// `t + t → (1+1).t`
    F3,
    /// `(t + r) u → (t) u + (r) u`
    A1,
    /// `(u) (t + r) → (u) t + (u) r`
    A2,
    /// `(α.t) r → α.(t) r`
    A3,
    /// `(r) (α.t) → α.(r) t`
    A4,
    /// `(0) t → 0`
    A5,
    /// `(t) 0 → 0`
    A6,
    /// `(λx t) b → t[b/x]` for a base term `b`
    B,
}

impl RuleId {
    pub const ALL: [RuleId; 16] = [
        RuleId::E1,
        RuleId::E2,
        RuleId::E3,
        RuleId::E4,
        RuleId::E5,
        RuleId::E6,
        RuleId::F1,
        RuleId::F2,
        RuleId::F3,
        RuleId::A1,
        RuleId::A2,
        RuleId::A3,
        RuleId::A4,
        RuleId::A5,
        RuleId::A6,
        RuleId::B,
    ];
}

impl fmt::Display for RuleId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Debug::fmt(self, f)
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Mode {
    Restricted,
    Unrestricted,
}

/// A rule instance: where it fires, which rule, and for the factorisation
/// rules which two addends of the sum it combines (`(i, j)`, where addend `i`
/// carries the left-hand scalar for `F2`).
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Redex {
    pub position: Position,
    pub rule: RuleId,
    pub addends: Option<(usize, usize)>,
}

impl Redex {
    pub fn at(position: Position, rule: RuleId) -> Redex {
        Redex { position, rule, addends: None }
    }
}

pub fn format_position(p: &[usize]) -> String {
    if p.is_empty() {
        "root".to_string()
    } else {
        p.iter().map(usize::to_string).collect::<Vec<_>>().join(".")
    }
}

impl fmt::Display for Redex {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "@{} {}", format_position(&self.position), self.rule)
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum RewriteError {
    #[error("rule {rule} does not apply at @{}", format_position(.position))]
    NotApplicable { position: Position, rule: RuleId },
    #[error("no normal form within {fuel} steps")]
    FuelExhausted { fuel: usize, last: Box<Term>, trace: Option<Box<ReductionTrace>> },
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TraceStep {
    pub redex: Redex,
    pub result: Term,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ReductionTrace {
    pub initial: Term,
    pub steps: Vec<TraceStep>,
}

impl ReductionTrace {
    pub fn fuel_used(&self) -> usize {
        self.steps.len()
    }

    /// One `STEP <n> @<path> <rule> => <term>` line per step.
    pub fn render(&self, show: impl Fn(&Term) -> String) -> String {
        let mut out = String::new();
        for (n, s) in self.steps.iter().enumerate() {
            out.push_str(&format!("STEP {} {} => {}\n", n + 1, s.redex, show(&s.result)));
        }
        out
    }

    /// Re-run every recorded step from the initial term and compare snapshots.
    pub fn replay(&self, mode: Mode) -> bool {
        let mut cur = self.initial.clone();
        for s in &self.steps {
            match step(&cur, &s.redex, mode) {
                Ok(next) if next == s.result => cur = next,
                _ => return false,
            }
        }
        true
    }
}

#[derive(Clone, Copy, Debug, Default)]
struct Info {
    normal: bool,
    has_free: bool,
    /// Binders needed above this node for all its indices to be bound.
    dangling: usize,
    /// `(normal, closed)` of the body when the node is a scaling.
    scale_body: Option<(bool, bool)>,
}

impl Info {
    fn closed(&self) -> bool {
        !self.has_free && self.dangling == 0
    }

    fn closed_normal(&self) -> bool {
        self.closed() && self.normal
    }
}

/// Every redex of `t` under `mode`, outermost first, then left to right; at
/// one position, in rule order.
pub fn applicable_redexes(t: &Term, mode: Mode) -> Vec<Redex> {
    let mut out = Vec::new();
    scan(t, mode, &mut Vec::new(), &mut out);
    out
}

pub fn is_normal(t: &Term, mode: Mode) -> bool {
    scan(t, mode, &mut Vec::new(), &mut Vec::new()).normal
}

pub fn is_closed_normal(t: &Term, mode: Mode) -> bool {
    scan(t, mode, &mut Vec::new(), &mut Vec::new()).closed_normal()
}

fn scan(t: &Term, mode: Mode, path: &mut Position, out: &mut Vec<Redex>) -> Info {
    let mut below = Vec::new();
    let kids = t.children();
    let mut infos = Vec::with_capacity(kids.len());
    for (i, k) in kids.into_iter().enumerate() {
        path.push(i);
        infos.push(scan(k, mode, path, &mut below));
        path.pop();
    }
    let start = out.len();
    root_redexes(t, mode, &infos, path, out);
    let root_normal = out.len() == start;
    out.extend(below);

    let has_free = matches!(t, Term::Var(_)) || infos.iter().any(|i| i.has_free);
    let dangling = match t {
        Term::Bound(i) => i + 1,
        Term::Abs(..) => infos[0].dangling.saturating_sub(1),
        _ => infos.iter().map(|i| i.dangling).max().unwrap_or(0),
    };
    let scale_body = match t {
        Term::Scale(..) => Some((infos[0].normal, infos[0].closed())),
        _ => None,
    };
    Info {
        normal: root_normal && infos.iter().all(|i| i.normal),
        has_free,
        dangling,
        scale_body,
    }
}

fn root_redexes(t: &Term, mode: Mode, infos: &[Info], path: &Position, out: &mut Vec<Redex>) {
    let restricted = mode == Mode::Restricted;
    let mut push = |rule, addends| out.push(Redex { position: path.clone(), rule, addends });
    match t {
        Term::Sum(ts) => {
            if ts.iter().any(|a| matches!(a, Term::Zero(_))) {
                push(RuleId::E1, None);
            }
            let body_ok = |i: usize| !restricted || infos[i].scale_body.is_some_and(|(n, c)| n && c);
            let whole_ok = |i: usize| !restricted || infos[i].closed_normal();
            for i in 0..ts.len() {
                for j in i + 1..ts.len() {
                    if let (Term::Scale(_, a), Term::Scale(_, b)) = (&ts[i], &ts[j]) {
                        if a == b && body_ok(i) {
                            push(RuleId::F1, Some((i, j)));
                        }
                    }
                }
            }
            for i in 0..ts.len() {
                for j in 0..ts.len() {
                    if i == j {
                        continue;
                    }
                    if let Term::Scale(_, a) = &ts[i] {
                        if **a == ts[j] && whole_ok(j) {
                            push(RuleId::F2, Some((i, j)));
                        }
                    }
                }
            }
            for i in 0..ts.len() {
                for j in i + 1..ts.len() {
                    if ts[i] == ts[j] && whole_ok(i) {
                        push(RuleId::F3, Some((i, j)));
                    }
                }
            }
        }
        Term::Scale(a, body) => {
            if a.is_zero() {
                push(RuleId::E2, None);
            }
            if a.is_one() {
                push(RuleId::E3, None);
            }
            match **body {
                Term::Zero(_) => push(RuleId::E4, None),
                Term::Scale(..) => push(RuleId::E5, None),
                Term::Sum(_) => push(RuleId::E6, None),
                _ => {}
            }
        }
        Term::App(f, a) => {
            let sum_ok = |i: usize| !restricted || infos[i].closed_normal();
            let scale_ok = |i: usize| !restricted || infos[i].scale_body.is_some_and(|(n, c)| n && c);
            if matches!(**f, Term::Sum(_)) && sum_ok(0) {
                push(RuleId::A1, None);
            }
            if matches!(**a, Term::Sum(_)) && sum_ok(1) {
                push(RuleId::A2, None);
            }
            if matches!(**f, Term::Scale(..)) && scale_ok(0) {
                push(RuleId::A3, None);
            }
            if matches!(**a, Term::Scale(..)) && scale_ok(1) {
                push(RuleId::A4, None);
            }
            if matches!(**f, Term::Zero(_)) {
                push(RuleId::A5, None);
            }
            if matches!(**a, Term::Zero(_)) {
                push(RuleId::A6, None);
            }
            if matches!(**f, Term::Abs(..)) && a.is_base() {
                push(RuleId::B, None);
            }
        }
        _ => {}
    }
}

/// Fire `redex` on `t`, checking first that it is one of the redexes
/// enumerated for `mode`.
pub fn step(t: &Term, redex: &Redex, mode: Mode) -> Result<Term, RewriteError> {
    if !applicable_redexes(t, mode).contains(redex) {
        return Err(RewriteError::NotApplicable { position: redex.position.clone(), rule: redex.rule });
    }
    fire(t, redex)
}

/// Fire `redex` without checking side conditions. The shape of the redex is
/// still checked.
pub fn fire(t: &Term, redex: &Redex) -> Result<Term, RewriteError> {
    let not_applicable = || RewriteError::NotApplicable { position: redex.position.clone(), rule: redex.rule };
    let node = t.at(&redex.position).ok_or_else(not_applicable)?;
    let replaced = contract(node, redex.rule, redex.addends).ok_or_else(not_applicable)?;
    Ok(t.replace_at(&redex.position, |_| replaced))
}

/// Right-hand side of `rule` applied to the node itself.
fn contract(node: &Term, rule: RuleId, addends: Option<(usize, usize)>) -> Option<Term> {
    use RuleId::*;
    let combine = |ts: &[Term], i: usize, j: usize, merged: Term| {
        let rest = ts.iter().enumerate().filter(|(k, _)| *k != i && *k != j).map(|(_, t)| t.clone());
        Term::sum(rest.chain(std::iter::once(merged)))
    };
    match (rule, node) {
        (E1, Term::Sum(ts)) => {
            let z = ts.iter().position(|a| matches!(a, Term::Zero(_)))?;
            Some(Term::sum(ts.iter().enumerate().filter(|(k, _)| *k != z).map(|(_, t)| t.clone())))
        }
        (E2, Term::Scale(a, _)) if a.is_zero() => Some(Term::zero()),
        (E3, Term::Scale(a, body)) if a.is_one() => Some((**body).clone()),
        (E4, Term::Scale(_, body)) if matches!(**body, Term::Zero(_)) => Some(Term::zero()),
        (E5, Term::Scale(a, body)) => match &**body {
            Term::Scale(b, inner) => Some(Term::scale(a * b, (**inner).clone())),
            _ => None,
        },
        (E6, Term::Scale(a, body)) => match &**body {
            Term::Sum(ts) => Some(Term::sum(ts.iter().map(|t| Term::scale(a.clone(), t.clone())))),
            _ => None,
        },
        (F1, Term::Sum(ts)) => {
            let (i, j) = addends?;
            match (ts.get(i)?, ts.get(j)?) {
                (Term::Scale(a, t), Term::Scale(b, u)) if t == u => {
                    Some(combine(ts, i, j, Term::scale(a + b, (**t).clone())))
                }
                _ => None,
            }
        }
        (F2, Term::Sum(ts)) => {
            let (i, j) = addends?;
            match ts.get(i)? {
                Term::Scale(a, t) if i != j && **t == *ts.get(j)? => {
                    Some(combine(ts, i, j, Term::scale(a + &Scalar::one(), (**t).clone())))
                }
                _ => None,
            }
        }
        (F3, Term::Sum(ts)) => {
            let (i, j) = addends?;
            if i != j && ts.get(i)? == ts.get(j)? {
                let two = &Scalar::one() + &Scalar::one();
                Some(combine(ts, i, j, Term::scale(two, ts[i].clone())))
            } else {
                None
            }
        }
        (A1, Term::App(f, u)) => match &**f {
            Term::Sum(ts) => Some(Term::sum(ts.iter().map(|t| Term::app(t.clone(), (**u).clone())))),
            _ => None,
        },
        (A2, Term::App(u, a)) => match &**a {
            Term::Sum(ts) => Some(Term::sum(ts.iter().map(|t| Term::app((**u).clone(), t.clone())))),
            _ => None,
        },
        (A3, Term::App(f, r)) => match &**f {
            Term::Scale(a, t) => Some(Term::scale(a.clone(), Term::app((**t).clone(), (**r).clone()))),
            _ => None,
        },
        (A4, Term::App(r, a)) => match &**a {
            Term::Scale(s, t) => Some(Term::scale(s.clone(), Term::app((**r).clone(), (**t).clone()))),
            _ => None,
        },
        (A5, Term::App(f, _)) if matches!(**f, Term::Zero(_)) => Some(Term::zero()),
        (A6, Term::App(_, a)) if matches!(**a, Term::Zero(_)) => Some(Term::zero()),
        (B, Term::App(f, b)) if b.is_base() => match &**f {
            Term::Abs(_, _, body) => Some(Term::instantiate(body, b)),
            _ => None,
        },
        _ => None,
    }
}

/// All one-step reducts, in redex order.
pub fn one_step_reducts(t: &Term, mode: Mode) -> Vec<(Redex, Term)> {
    applicable_redexes(t, mode)
        .into_iter()
        .filter_map(|r| fire(t, &r).ok().map(|u| (r, u)))
        .collect()
}

pub struct Normalized {
    pub term: Term,
    pub trace: ReductionTrace,
}

/// Repeatedly fire the first redex until none is left, recording every step.
pub fn normalize(t: &Term, mode: Mode, fuel: usize) -> Result<Normalized, RewriteError> {
    run(t, mode, fuel, true).map(|(term, trace)| Normalized { term, trace: trace.unwrap() })
}

/// Like [`normalize`] without keeping snapshots; returns the normal form and
/// the number of steps taken.
pub fn normal_form(t: &Term, mode: Mode, fuel: usize) -> Result<(Term, usize), RewriteError> {
    let mut cur = t.clone();
    for used in 0..=fuel {
        let Some(redex) = first_redex(&cur, mode) else {
            return Ok((cur, used));
        };
        if used == fuel {
            break;
        }
        cur = fire(&cur, &redex)?;
    }
    Err(RewriteError::FuelExhausted { fuel, last: Box::new(cur), trace: None })
}

fn first_redex(t: &Term, mode: Mode) -> Option<Redex> {
    applicable_redexes(t, mode).into_iter().next()
}

fn run(t: &Term, mode: Mode, fuel: usize, record: bool) -> Result<(Term, Option<ReductionTrace>), RewriteError> {
    let mut trace = ReductionTrace { initial: t.clone(), steps: Vec::new() };
    let mut cur = t.clone();
    loop {
        let Some(redex) = first_redex(&cur, mode) else {
            return Ok((cur, record.then_some(trace)));
        };
        if trace.steps.len() == fuel {
            return Err(RewriteError::FuelExhausted { fuel, last: Box::new(cur), trace: record.then(|| Box::new(trace)) });
        }
        cur = fire(&cur, &redex)?;
        trace.steps.push(TraceStep { redex, result: cur.clone() });
    }
}
