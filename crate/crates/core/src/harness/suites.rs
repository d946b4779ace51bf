use std::fmt;
use std::str::FromStr;

use rand::seq::SliceRandom;
use rand::Rng;
use rayon::prelude::*;
use thiserror::Error;

use super::gen::{case_rng, gen_barycentric_case, gen_typed_case, gen_untyped_term, TypedCase};
use super::join::{join_check, Joinability};
use super::report::{shrink, CaseResult, Outcome, Report};
use super::transport::transport;
use super::variants::variants;
use super::GenConfig;
use crate::check::{
    check_barycentric, check_correspondence, infer_scalar, probe_scalar_linearity, Context, ScalarTemplate,
};
use crate::rewrite::{applicable_redexes, fire, format_position, normal_form, one_step_reducts, weight, Mode};
use crate::scalar::Scalar;
use crate::term::Term;
use crate::types::type_equiv;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Suite {
    SubjectReduction,
    Sn,
    Confluence,
    Weight1,
    Correspondence,
    Uniqueness,
    NoCloning,
}

impl Suite {
    pub const ALL: [Suite; 7] = [
        Suite::SubjectReduction,
        Suite::Sn,
        Suite::Confluence,
        Suite::Weight1,
        Suite::Correspondence,
        Suite::Uniqueness,
        Suite::NoCloning,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Suite::SubjectReduction => "subject-reduction",
            Suite::Sn => "sn",
            Suite::Confluence => "confluence",
            Suite::Weight1 => "weight1",
            Suite::Correspondence => "correspondence",
            Suite::Uniqueness => "uniqueness",
            Suite::NoCloning => "no-cloning",
        }
    }
}

impl fmt::Display for Suite {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("unknown suite `{0}`")]
pub struct UnknownSuite(pub String);

impl FromStr for Suite {
    type Err = UnknownSuite;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        Suite::ALL.into_iter().find(|x| x.name() == s).ok_or_else(|| UnknownSuite(s.to_string()))
    }
}

/// Sample points for the scalar-linearity probe.
pub const PROBE_SAMPLES: [(i64, i64); 5] = [(1, 2), (1, 1), (2, 1), (3, 1), (-1, 1)];

/// Run `cases` cases of `suite`. Cases are independent and run in parallel;
/// the report lists them by index, so it depends only on the arguments.
pub fn run_suite(suite: Suite, cfg: &GenConfig, cases: usize) -> Report {
    let results = (0..cases).into_par_iter().map(|i| run_case(suite, cfg, i)).collect();
    Report { suite: suite.name().to_string(), seed: cfg.seed, cases: results }
}

type Verdict = (Outcome, String);

fn run_case(suite: Suite, cfg: &GenConfig, index: usize) -> CaseResult {
    let i = index as u64;
    let (outcome, detail) = match suite {
        Suite::SubjectReduction => typed(cfg, i, subject_reduction),
        Suite::Sn => typed(cfg, i, |c, t| strong_normalisation(c, t, cfg.fuel)),
        Suite::Correspondence => typed(cfg, i, correspondence),
        Suite::Uniqueness => {
            let case = gen_typed_case(cfg, i);
            let mut rng = case_rng(cfg.seed ^ 0x0a11_07a7, i);
            uniqueness(&case, &mut rng)
        }
        Suite::Weight1 => weight_one(cfg, i),
        Suite::NoCloning => no_cloning(cfg, i),
        Suite::Confluence => {
            let t = gen_untyped_term(cfg, i);
            let check = |u: &Term| confluence(u, cfg.mode, cfg.join_depth);
            let (o, d) = check(&t);
            if o == Outcome::Fail {
                let small = shrink(&t, |u| check(u).0 == Outcome::Fail);
                (o, format!("{d}; shrunk: {small}"))
            } else {
                (o, d)
            }
        }
    };
    CaseResult { index, outcome, detail }
}

/// Evaluate a property on a generated typed term, shrinking failures.
fn typed(cfg: &GenConfig, i: u64, prop: impl Fn(&Context, &Term) -> Verdict) -> Verdict {
    let case = gen_typed_case(cfg, i);
    let (o, d) = prop(&case.ctx, &case.term);
    if o != Outcome::Fail {
        return (o, d);
    }
    let small = shrink(&case.term, |u| prop(&case.ctx, u).0 == Outcome::Fail);
    (o, format!("{d}; term: {}; shrunk: {small}", case.term))
}

fn subject_reduction(ctx: &Context, t: &Term) -> Verdict {
    let Ok((ty, _)) = infer_scalar(ctx, t) else {
        return (Outcome::Pass, "ill-typed".into());
    };
    let erased = t.erase();
    let redexes = applicable_redexes(&erased, Mode::Unrestricted);
    let mut notes = Vec::new();
    for r in &redexes {
        let reduct = match fire(&erased, r) {
            Ok(u) => u,
            Err(e) => return (Outcome::Fail, format!("{r}: {e}")),
        };
        let cands = match transport(t, r) {
            Ok(c) if !c.is_empty() => c,
            Ok(_) => {
                notes.push(format!("{r}: no transported reduct erases to {reduct}"));
                continue;
            }
            Err(e) => {
                notes.push(format!("{r}: {e}"));
                continue;
            }
        };
        let mut seen = Vec::new();
        let ok = cands.iter().any(|c| match infer_scalar(ctx, c) {
            Ok((c2, _)) if type_equiv(&c2.to_type(), &ty.to_type()) => true,
            Ok((c2, _)) => {
                seen.push(c2.to_string());
                false
            }
            Err(e) => {
                seen.push(e.to_string());
                false
            }
        });
        if !ok {
            return (Outcome::Fail, format!("{r} => {reduct}: expected {ty}, got {}", seen.join(" / ")));
        }
    }
    if notes.is_empty() {
        (Outcome::Pass, format!("reducts={}", redexes.len()))
    } else {
        (Outcome::Inconclusive, notes.join("; "))
    }
}

fn strong_normalisation(ctx: &Context, t: &Term, fuel: usize) -> Verdict {
    if infer_scalar(ctx, t).is_err() {
        return (Outcome::Pass, "ill-typed".into());
    }
    match normal_form(&t.erase(), Mode::Unrestricted, fuel) {
        Ok((_, steps)) => (Outcome::Pass, format!("steps={steps}")),
        Err(e) => (Outcome::Fail, e.to_string()),
    }
}

fn correspondence(ctx: &Context, t: &Term) -> Verdict {
    match infer_scalar(ctx, t) {
        Err(_) => (Outcome::Pass, "ill-typed".into()),
        Ok(_) if check_correspondence(ctx, t) => (Outcome::Pass, String::new()),
        Ok((ty, _)) => (Outcome::Fail, format!("scalar type {ty} has no scalar-free counterpart")),
    }
}

fn uniqueness(case: &TypedCase, rng: &mut rand_chacha::ChaCha8Rng) -> Verdict {
    let erased = case.term.erase();
    let want = case.ty.scalar();
    for (name, v) in variants(&case.term, rng) {
        if v.erase() != erased {
            return (Outcome::Fail, format!("{name} variant changed the erasure: {v}"));
        }
        match infer_scalar(&case.ctx, &v) {
            Ok((c, _)) if c.scalar() == want => {}
            Ok((c, _)) => return (Outcome::Fail, format!("{name} variant {v} has scalar {}, original {want}", c.scalar())),
            Err(e) => return (Outcome::Fail, format!("{name} variant {v} is ill-typed: {e}")),
        }
    }
    (Outcome::Pass, format!("scalar={want}"))
}

fn weight_one(cfg: &GenConfig, i: u64) -> Verdict {
    let mut rng = case_rng(cfg.seed ^ 0x3e1_647, i);
    let alpha = loop {
        let n = rng.gen_range(-4i64..=4);
        let d = rng.gen_range(1i64..=4);
        if n != 0 {
            break Scalar::ratio(n, d);
        }
    };
    let mut parts = Vec::new();
    for (coeff, expect_accept) in [(None, true), (Some(alpha.clone()), alpha.is_one())] {
        let case = gen_barycentric_case(cfg, i, coeff.clone());
        let want = coeff.unwrap_or_else(Scalar::one);
        let accepted = match check_barycentric(&case.ctx, &case.term) {
            Ok((ok, _, _)) => ok,
            Err(e) => return (Outcome::Fail, format!("{} rejected: {e}", case.term)),
        };
        if accepted != expect_accept {
            return (Outcome::Fail, format!("{} accepted={accepted} at type {}", case.term, case.ty));
        }
        if case.ty.scalar() != want {
            return (Outcome::Inconclusive, format!("generator missed scalar {want}: {}", case.ty));
        }
        match normal_form(&case.term.erase(), Mode::Unrestricted, cfg.fuel) {
            Ok((nf, _)) => {
                let w = weight(&nf);
                if w != want {
                    return (Outcome::Fail, format!("{} normalizes to {nf} of weight {w}, type {}", case.term, case.ty));
                }
                parts.push(format!("w={w}"));
            }
            Err(e) => return (Outcome::Fail, format!("{}: {e}", case.term)),
        }
    }
    (Outcome::Pass, parts.join(" "))
}

/// A template that scales the subterm at `path` by the hole.
pub fn single_hole_template(t: &Term, path: Vec<usize>) -> ScalarTemplate {
    let t = t.clone();
    let desc = format!("{} @{}", t, format_position(&path));
    ScalarTemplate::new(desc, move |a| t.replace_at(&path, |s| Term::scale(a.clone(), s.clone())))
}

fn no_cloning(cfg: &GenConfig, i: u64) -> Verdict {
    let case = gen_typed_case(cfg, i);
    let mut rng = case_rng(cfg.seed ^ 0xc10e, i);
    let samples: Vec<Scalar> = PROBE_SAMPLES.iter().map(|(n, d)| Scalar::ratio(*n, *d)).collect();
    let mut paths = Vec::new();
    collect_paths(&case.term, &mut Vec::new(), &mut paths);
    paths.shuffle(&mut rng);
    for p in paths.into_iter().take(20) {
        let template = single_hole_template(&case.term, p);
        match probe_scalar_linearity(&template, &case.ctx, &samples) {
            Ok(d) if d <= 1 => return (Outcome::Pass, format!("degree={d}")),
            Ok(d) => return (Outcome::Fail, format!("{template}: degree {d}")),
            Err(_) => continue,
        }
    }
    (Outcome::Inconclusive, "no single-hole template typechecks at every sample".into())
}

fn collect_paths(t: &Term, here: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
    if !matches!(t, Term::TyAbs(..) | Term::TyApp(..)) {
        out.push(here.clone());
    }
    for (i, c) in t.children().into_iter().enumerate() {
        here.push(i);
        collect_paths(c, here, out);
        here.pop();
    }
}

/// Maximum number of reduct pairs checked per term.
const MAX_PAIRS: usize = 8;
const JOIN_NODE_CAP: usize = 1500;

fn confluence(t: &Term, mode: Mode, depth: usize) -> Verdict {
    let reducts: Vec<Term> = {
        let mut rs: Vec<Term> = one_step_reducts(t, mode).into_iter().map(|(_, u)| u).collect();
        rs.sort();
        rs.dedup();
        rs
    };
    let mut pairs = 0;
    let mut open = 0;
    'all: for i in 0..reducts.len() {
        for j in i + 1..reducts.len() {
            if pairs == MAX_PAIRS {
                break 'all;
            }
            pairs += 1;
            match join_check(&reducts[i], &reducts[j], mode, depth, JOIN_NODE_CAP) {
                Joinability::Joined => {}
                Joinability::Inconclusive => open += 1,
                Joinability::Disproved => {
                    return (Outcome::Fail, format!("{} and {} have no common reduct", reducts[i], reducts[j]))
                }
            }
        }
    }
    if open > 0 {
        (Outcome::Inconclusive, format!("pairs={pairs} open={open}"))
    } else {
        (Outcome::Pass, format!("pairs={pairs}"))
    }
}
