//! Random terms: type-directed generation of annotated well-typed terms, and
//! unconstrained generation of erased terms.

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use super::GenConfig;
use crate::check::{check_barycentric, infer_scalar, Context};
use crate::scalar::Scalar;
use crate::syntax::parse_term;
use crate::term::Term;
use crate::types::{canonicalize, Canonical, Type, UnitType};

/// Deterministic generator for case `index` of a run seeded with `seed`.
pub fn case_rng(seed: u64, index: u64) -> ChaCha8Rng {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(index);
    rng
}

/// A generated term with the context and type it was checked in.
#[derive(Clone, Debug)]
pub struct TypedCase {
    pub ctx: Context,
    pub term: Term,
    pub ty: Canonical,
}

/// First term of the typed sequence for `cfg`.
pub fn gen_typed_term(cfg: &GenConfig) -> Term {
    gen_typed_case(cfg, 0).term
}

/// Case `index` of the typed sequence: a closed annotated term accepted by the
/// scalar checker in the empty context.
pub fn gen_typed_case(cfg: &GenConfig, index: u64) -> TypedCase {
    let mut rng = case_rng(cfg.seed, index);
    let mut g = Gen::new(&mut rng, cfg, false);
    for _ in 0..200 {
        let budget = g.rng.gen_range(3..=cfg.max_term_size.max(3));
        let target = g.rand_unit(2);
        let term = if g.rng.gen_bool(0.5) {
            g.gen_unit(&[], &target, budget).map(|(t, _)| t)
        } else {
            g.gen_exact(&[], &canonicalize(&target), budget)
        };
        if let Some(term) = term.filter(|t| t.size() <= cfg.max_term_size) {
            if let Ok((ty, _)) = infer_scalar(&Context::new(), &term) {
                return TypedCase { ctx: Context::new(), term, ty };
            }
        }
    }
    fallback()
}

/// Case `index` of the barycentric sequence. With `scalar` set, the term's
/// type is `scalar.C` for a classical `C` instead of `C`.
pub fn gen_barycentric_case(cfg: &GenConfig, index: u64, scalar: Option<Scalar>) -> TypedCase {
    let mut rng = case_rng(cfg.seed ^ 0xba1a_7ce5, index);
    let mut g = Gen::new(&mut rng, cfg, true);
    let coeff = scalar.unwrap_or_else(Scalar::one);
    for _ in 0..200 {
        let budget = g.rng.gen_range(3..=cfg.max_term_size.max(3));
        let target = g.rand_unit(2);
        let want = Canonical::Scaled(coeff.clone(), UnitType::new(target).expect("generated unit"));
        let Some(term) = g.gen_exact(&[], &want, budget) else { continue };
        if term.size() > cfg.max_term_size {
            continue;
        }
        if let Ok((_, ty, _)) = check_barycentric(&Context::new(), &term) {
            return TypedCase { ctx: Context::new(), term, ty };
        }
    }
    fallback()
}

fn fallback() -> TypedCase {
    let term = Term::lam("x", Some(Type::var("X")), Term::var("x"));
    let ty = infer_scalar(&Context::new(), &term).expect("identity is typable").0;
    TypedCase { ctx: Context::new(), term, ty }
}

type Env = [(String, Type)];

#[derive(Clone, Copy, Debug)]
enum Choice {
    Var,
    Zero,
    Lam,
    TyLam,
    App,
    Sum,
    Scale,
    TyApp,
}

pub(crate) struct Gen<'a> {
    pub(crate) rng: &'a mut ChaCha8Rng,
    cfg: &'a GenConfig,
    classical: bool,
    fresh: usize,
}

const TYPE_VARS: [&str; 3] = ["X", "Y", "Z"];

impl<'a> Gen<'a> {
    pub(crate) fn new(rng: &'a mut ChaCha8Rng, cfg: &'a GenConfig, classical: bool) -> Self {
        Gen { rng, cfg, classical, fresh: 0 }
    }

    fn fresh(&mut self, stem: &str) -> String {
        self.fresh += 1;
        format!("{stem}{}", self.fresh)
    }

    /// Non-zero scalar with numerator and denominator bounded by the
    /// configured magnitude; 1 is the most likely value.
    pub(crate) fn scalar(&mut self) -> Scalar {
        let m = self.cfg.max_scalar_magnitude.max(1) as i64;
        if self.rng.gen_bool(0.3) {
            return Scalar::one();
        }
        let n = self.rng.gen_range(1..=m) * if self.rng.gen_bool(0.25) { -1 } else { 1 };
        let d = self.rng.gen_range(1..=m);
        Scalar::ratio(n, d)
    }

    pub(crate) fn rand_unit(&mut self, depth: usize) -> Type {
        let roll = self.rng.gen_range(0..10);
        if depth == 0 || roll < 3 {
            return Type::var(TYPE_VARS.choose(self.rng).unwrap());
        }
        if roll < 8 {
            let dom = self.rand_unit(depth - 1);
            let cod = self.rand_codomain(depth - 1);
            Type::Arrow(Box::new(dom), Box::new(cod))
        } else {
            let x = *TYPE_VARS.choose(self.rng).unwrap();
            Type::forall(x, self.rand_unit(depth - 1))
        }
    }

    /// Canonical codomain: a unit, a scaled unit, or rarely the zero type.
    fn rand_codomain(&mut self, depth: usize) -> Type {
        let u = self.rand_unit(depth);
        if self.classical {
            return u;
        }
        match self.rng.gen_range(0..12) {
            0 => Type::Zero,
            1..=3 => canonicalize(&Type::scale(self.scalar(), u)).to_type(),
            _ => u,
        }
    }

    fn pick(&mut self, weighted: &[(Choice, u32)]) -> Vec<Choice> {
        let mut pool: Vec<(Choice, u32)> = weighted.iter().copied().filter(|(_, w)| *w > 0).collect();
        let mut order = Vec::with_capacity(pool.len());
        while !pool.is_empty() {
            let total: u32 = pool.iter().map(|(_, w)| w).sum();
            let mut roll = self.rng.gen_range(0..total);
            let i = pool
                .iter()
                .position(|(_, w)| {
                    if roll < *w {
                        true
                    } else {
                        roll -= w;
                        false
                    }
                })
                .unwrap();
            order.push(pool.remove(i).0);
        }
        order
    }

    /// A term whose type is `β.u` for some scalar `β` (possibly 0, in which
    /// case every unit it meets is `u`). Returns the term and `β`.
    pub(crate) fn gen_unit(&mut self, env: &Env, u: &Type, budget: usize) -> Option<(Term, Scalar)> {
        if budget == 0 {
            return None;
        }
        let vars: Vec<&String> = env.iter().filter(|(_, t)| t.alpha_eq(u)).map(|(n, _)| n).collect();
        let big = |n: usize| if budget >= n { 1 } else { 0 };
        let weights = [
            (Choice::Var, if vars.is_empty() { 0 } else { 8 }),
            (Choice::Zero, 1),
            (Choice::Lam, 8 * big(2) * matches!(u, Type::Arrow(..)) as u32),
            (Choice::TyLam, 8 * big(2) * matches!(u, Type::Forall(..)) as u32),
            (Choice::App, 4 * big(3)),
            (Choice::Sum, 2 * big(3)),
            (Choice::Scale, 2 * big(2)),
            (Choice::TyApp, 2 * big(3)),
        ];
        for choice in self.pick(&weights) {
            let got = match choice {
                Choice::Var => Some((Term::var(vars.choose(self.rng).unwrap()), Scalar::one())),
                Choice::Zero => Some((Term::zero(), Scalar::zero())),
                Choice::Lam => self.gen_lam(env, u, budget),
                Choice::TyLam => self.gen_ty_lam(env, u, budget),
                Choice::App => self.gen_app(env, u, budget),
                Choice::Sum => {
                    let left = self.rng.gen_range(1..budget - 1);
                    let (a, alpha) = self.gen_unit(env, u, left)?;
                    let rest = budget - 1 - a.size();
                    self.gen_unit(env, u, rest).map(|(b, beta)| (Term::sum([a, b]), &alpha + &beta))
                }
                Choice::Scale => {
                    let gamma = if self.rng.gen_bool(0.1) { Scalar::zero() } else { self.scalar() };
                    self.gen_unit(env, u, budget - 1).map(|(t, beta)| (Term::scale(gamma.clone(), t), &gamma * &beta))
                }
                Choice::TyApp => self.gen_ty_app(env, u, budget),
            };
            if got.is_some() {
                return got;
            }
        }
        None
    }

    fn gen_lam(&mut self, env: &Env, u: &Type, budget: usize) -> Option<(Term, Scalar)> {
        let Type::Arrow(dom, cod) = u else { return None };
        let x = self.fresh("x");
        let mut inner = env.to_vec();
        inner.push((x.clone(), (**dom).clone()));
        let body = self.gen_exact(&inner, &canonicalize(cod), budget - 1)?;
        Some((Term::lam(&x, Some((**dom).clone()), body), Scalar::one()))
    }

    fn gen_ty_lam(&mut self, env: &Env, u: &Type, budget: usize) -> Option<(Term, Scalar)> {
        let Type::Forall(x, body) = u else { return None };
        let taken = env.iter().any(|(_, t)| t.free_vars().contains(x));
        let (x, body) = if taken {
            let y = self.fresh("T");
            (y.clone(), body.subst(x, &Type::var(&y)))
        } else {
            (x.clone(), (**body).clone())
        };
        let (t, beta) = self.gen_unit(env, &body, budget - 1)?;
        Some((Term::ty_abs(&x, t), beta))
    }

    fn gen_app(&mut self, env: &Env, u: &Type, budget: usize) -> Option<(Term, Scalar)> {
        // prefer a domain taken from a variable that produces `u`
        let heads: Vec<(Type, Type)> = env
            .iter()
            .filter_map(|(_, t)| match t {
                Type::Arrow(d, c) => match canonicalize(c) {
                    Canonical::Scaled(_, w) if w.as_type().alpha_eq(u) => Some(((**d).clone(), (**c).clone())),
                    _ => None,
                },
                _ => None,
            })
            .collect();
        let (dom, cod) = if !heads.is_empty() && self.rng.gen_bool(0.7) {
            heads.choose(self.rng).unwrap().clone()
        } else {
            let dom = if self.rng.gen_bool(0.5) {
                env.choose(self.rng).map(|(_, t)| t.clone()).unwrap_or_else(|| self.rand_unit(1))
            } else {
                self.rand_unit(1)
            };
            let gamma = if self.classical || self.rng.gen_bool(0.6) { Scalar::one() } else { self.scalar() };
            (dom, canonicalize(&Type::scale(gamma, u.clone())).to_type())
        };
        let gamma = canonicalize(&cod).scalar();
        let fun_ty = Type::Arrow(Box::new(dom.clone()), Box::new(cod));
        let fb = self.rng.gen_range(1..budget - 1);
        let (f, alpha) = self.gen_unit(env, &fun_ty, fb)?;
        let rest = budget - 1 - f.size();
        let (a, beta) = self.gen_unit(env, &dom, rest)?;
        Some((Term::app(f, a), &(&alpha * &beta) * &gamma))
    }

    fn gen_ty_app(&mut self, env: &Env, u: &Type, budget: usize) -> Option<(Term, Scalar)> {
        let x = self.fresh("T");
        let free: Vec<String> = u.free_vars().into_iter().collect();
        let (arg, body) = if !free.is_empty() && self.rng.gen_bool(0.6) {
            let y = free.choose(self.rng).unwrap().clone();
            (Type::var(&y), u.subst(&y, &Type::var(&x)))
        } else {
            (u.clone(), Type::var(&x))
        };
        if self.classical && !arg.is_classical() {
            return None;
        }
        let poly = Type::forall(&x, body);
        let (t, alpha) = self.gen_unit(env, &poly, budget - 1)?;
        Some((Term::ty_app(t, arg), alpha))
    }

    /// A zero-typed term built from the unit `u`, so that it keeps the
    /// shape of `u` once scalars are forgotten.
    fn gen_zero_at(&mut self, env: &Env, u: &Type, budget: usize) -> Term {
        if budget >= 2 && self.rng.gen_bool(0.5) {
            if let Some((t, _)) = self.gen_unit(env, u, budget - 1) {
                return Term::scale(Scalar::zero(), t);
            }
        }
        Term::zero()
    }

    /// A term whose canonical type is exactly `c`.
    pub(crate) fn gen_exact(&mut self, env: &Env, c: &Canonical, budget: usize) -> Option<Term> {
        match c {
            Canonical::Zero => {
                let u = self.rand_unit(1);
                Some(self.gen_zero_at(env, &u, budget))
            }
            Canonical::Scaled(gamma, w) => {
                if budget >= 5 && self.rng.gen_bool(0.15) {
                    let part = self.scalar();
                    let rest = gamma - &part;
                    let lb = self.rng.gen_range(2..budget - 2);
                    let a = self.gen_exact(env, &Canonical::Scaled(part, w.clone()), lb)?;
                    let left = budget - 1 - a.size();
                    let b = if rest.is_zero() {
                        self.gen_zero_at(env, w.as_type(), left)
                    } else {
                        self.gen_exact(env, &Canonical::Scaled(rest, w.clone()), left)?
                    };
                    return Some(Term::sum([a, b]));
                }
                for _ in 0..3 {
                    let Some((t, beta)) = self.gen_unit(env, w.as_type(), budget) else { continue };
                    if &beta == gamma {
                        return Some(t);
                    }
                    if beta.is_zero() || t.size() >= budget {
                        continue;
                    }
                    return Some(Term::scale(gamma / &beta, t));
                }
                None
            }
        }
    }
}

const Y: &str = r"\y. (\x. y + x x) (\x. y + x x)";

/// Case `index` of the untyped sequence: an erased term, possibly open and
/// possibly divergent. Case 0 is the fixed-point combinator itself.
pub fn gen_untyped_term(cfg: &GenConfig, index: u64) -> Term {
    let y = parse_term(Y).expect("fixed-point combinator parses");
    match index {
        0 => return y,
        1 => return Term::app(y, Term::var("b")),
        _ => {}
    }
    let mut rng = case_rng(cfg.seed ^ 0x005e_ed0f_u64, index);
    let mut g = UGen { rng: &mut rng, cfg };
    loop {
        let budget = g.rng.gen_range(1..=cfg.max_term_size.max(1));
        let t = g.term(budget, 0);
        let t = if g.rng.gen_bool(0.05) { Term::app(y.clone(), t) } else { t };
        if t.size() <= cfg.max_term_size {
            return t;
        }
    }
}

struct UGen<'a> {
    rng: &'a mut ChaCha8Rng,
    cfg: &'a GenConfig,
}

impl UGen<'_> {
    fn scalar(&mut self) -> Scalar {
        let m = self.cfg.max_scalar_magnitude.max(1) as i64;
        match self.rng.gen_range(0..6) {
            0 => Scalar::zero(),
            1 => Scalar::one(),
            2 => Scalar::from_int(-1),
            _ => Scalar::ratio(self.rng.gen_range(-m..=m), self.rng.gen_range(1..=m)),
        }
    }

    fn leaf(&mut self, depth: usize) -> Term {
        match self.rng.gen_range(0..10) {
            0 => Term::zero(),
            1..=5 if depth > 0 => Term::Bound(self.rng.gen_range(0..depth)),
            _ => Term::var(["x", "y", "z"].choose(self.rng).unwrap()),
        }
    }

    fn term(&mut self, budget: usize, depth: usize) -> Term {
        if budget <= 1 {
            return self.leaf(depth);
        }
        match self.rng.gen_range(0..10) {
            0..=2 => {
                let body = self.term(budget - 1, depth + 1);
                Term::Abs(Default::default(), None, Box::new(body))
            }
            3..=5 if budget >= 3 => {
                let fb = self.rng.gen_range(1..budget - 1);
                let f = self.term(fb, depth);
                let a = self.term((budget - 1).saturating_sub(f.size()), depth);
                Term::app(f, a)
            }
            6 if budget >= 4 => {
                // self application, the seed of divergence
                let x = Term::Bound(0);
                let body = Term::app(x.clone(), x);
                Term::app(Term::Abs(Default::default(), None, Box::new(body)), self.term(budget - 4, depth))
            }
            7 | 8 if budget >= 3 => {
                let lb = self.rng.gen_range(1..budget - 1);
                let a = self.term(lb, depth);
                let b = if self.rng.gen_bool(0.3) { a.clone() } else { self.term((budget - 1).saturating_sub(a.size()), depth) };
                Term::sum([a, b])
            }
            _ => {
                let a = self.scalar();
                Term::scale(a, self.term(budget - 1, depth))
            }
        }
    }
}

