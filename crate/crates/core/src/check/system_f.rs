//! The scalar-forgetting System F variant: scaling is transparent, sums need
//! equal types, and `0` has any type.

use super::{infer_scalar, open_binder, Context, TypeError};
use crate::term::Term;
use crate::types::{Type, UnitType};

/// Type variables produced by forgetting the zero type. They cannot be
/// written in source text and act as wildcards when comparing types.
pub fn is_hole(name: &str) -> bool {
    name.starts_with('?')
}

/// Erases scalars from types, mapping each zero type to a fresh hole.
#[derive(Default)]
pub struct Forgetter {
    next: usize,
}

impl Forgetter {
    pub fn forget(&mut self, ty: &Type) -> Type {
        match ty {
            Type::Var(_) => ty.clone(),
            Type::Arrow(d, c) => Type::Arrow(Box::new(self.forget(d)), Box::new(self.forget(c))),
            Type::Forall(x, b) => Type::forall(x, self.forget(b)),
            Type::Scale(_, b) => self.forget(b),
            Type::Zero => {
                self.next += 1;
                Type::Var(format!("?{}", self.next - 1))
            }
        }
    }

    /// Forget every type annotation inside a term.
    pub fn forget_term(&mut self, t: &Term) -> Term {
        t.map_types(&mut |ty| self.forget(ty))
    }
}

pub fn forget(ty: &Type) -> Type {
    Forgetter::default().forget(ty)
}

pub fn forget_term(t: &Term) -> Term {
    Forgetter::default().forget_term(t)
}

/// Strict synthesis: every `0` must carry its type.
pub fn infer_f(ctx: &Context, t: &Term) -> Result<Type, TypeError> {
    FChecker { lenient: false }.synth(ctx, t)
}

/// Bidirectional check against `expected`; holes in `expected` match any
/// type and unannotated `0` is accepted wherever a type is known.
pub fn check_f(ctx: &Context, t: &Term, expected: &Type) -> Result<(), TypeError> {
    FChecker { lenient: true }.check(ctx, t, expected)
}

/// Whether a term typable in the scalar system at `T` is typable in the
/// System F variant at the forgotten type, with forgotten context and
/// annotations.
pub fn check_correspondence(ctx: &Context, t: &Term) -> bool {
    let Ok((c, _)) = infer_scalar(ctx, t) else {
        return false;
    };
    let mut fg = Forgetter::default();
    let Ok(fctx) = ctx.map(|ty| fg.forget(ty)) else {
        return false;
    };
    let ft = fg.forget_term(t);
    let expected = fg.forget(&c.to_type());
    check_f(&fctx, &ft, &expected).is_ok()
}

struct FChecker {
    lenient: bool,
}

fn hole() -> Type {
    Type::Var("?".into())
}

fn is_hole_ty(ty: &Type) -> bool {
    matches!(ty, Type::Var(x) if is_hole(x))
}

/// Alpha-equivalence where a hole on either side matches anything.
fn matches(a: &Type, b: &Type) -> bool {
    fn go<'a>(a: &'a Type, b: &'a Type, ea: &mut Vec<&'a str>, eb: &mut Vec<&'a str>) -> bool {
        if is_hole_ty(a) || is_hole_ty(b) {
            return true;
        }
        match (a, b) {
            (Type::Var(x), Type::Var(y)) => {
                let ix = ea.iter().rposition(|n| *n == x);
                let iy = eb.iter().rposition(|n| *n == y);
                match (ix, iy) {
                    (Some(i), Some(j)) => ea.len() - i == eb.len() - j,
                    (None, None) => x == y,
                    _ => false,
                }
            }
            (Type::Arrow(d1, c1), Type::Arrow(d2, c2)) => go(d1, d2, ea, eb) && go(c1, c2, ea, eb),
            (Type::Forall(x, b1), Type::Forall(y, b2)) => {
                ea.push(x);
                eb.push(y);
                let r = go(b1, b2, ea, eb);
                ea.pop();
                eb.pop();
                r
            }
            _ => false,
        }
    }
    go(a, b, &mut Vec::new(), &mut Vec::new())
}

fn classical(ty: &Type) -> Result<(), TypeError> {
    if ty.is_classical() {
        Ok(())
    } else {
        Err(TypeError::NonClassicalContext(ty.clone()))
    }
}

fn escapes(ctx: &Context, x: &str) -> Result<(), TypeError> {
    if ctx.free_type_vars().contains(x) {
        Err(TypeError::ForallEscape(x.to_string()))
    } else {
        Ok(())
    }
}

impl FChecker {
    fn synth(&self, ctx: &Context, t: &Term) -> Result<Type, TypeError> {
        match t {
            Term::Bound(i) => Err(TypeError::UnboundVariable(format!("#{i}"))),
            Term::Var(x) => {
                ctx.lookup(x).map(|u| u.as_type().clone()).ok_or_else(|| TypeError::UnboundVariable(x.clone()))
            }
            Term::Abs(hint, ann, body) => {
                let ann = ann.as_ref().ok_or_else(|| TypeError::MissingAnnotation(hint.0.clone()))?;
                classical(ann)?;
                let (x, opened) = open_binder(ctx, &hint.0, body);
                let inner = ctx.extended(&x, UnitType::new(ann.clone()).expect("classical types are units"))?;
                let cod = self.synth(&inner, &opened)?;
                Ok(Type::Arrow(Box::new(ann.clone()), Box::new(cod)))
            }
            Term::TyAbs(x, u) => {
                escapes(ctx, x)?;
                Ok(Type::forall(x, self.synth(ctx, u)?))
            }
            Term::TyApp(u, v) => {
                classical(v)?;
                match self.synth(ctx, u)? {
                    h if is_hole_ty(&h) => Ok(h),
                    Type::Forall(x, b) => Ok(b.subst(&x, v)),
                    other => Err(TypeError::NotAForall { term: u.to_string(), found: other }),
                }
            }
            Term::App(f, a) => match self.synth(ctx, f)? {
                h if is_hole_ty(&h) => {
                    self.synth(ctx, a)?;
                    Ok(h)
                }
                Type::Arrow(d, c) => {
                    self.check(ctx, a, &d)?;
                    Ok(*c)
                }
                other => Err(TypeError::NotAnArrow { term: f.to_string(), found: other }),
            },
            Term::Zero(Some(ann)) => {
                classical(ann)?;
                Ok(ann.clone())
            }
            Term::Zero(None) if self.lenient => Ok(hole()),
            Term::Zero(None) => Err(TypeError::MissingZeroAnnotation),
            Term::Scale(_, u) => self.synth(ctx, u),
            Term::Sum(ts) => {
                let mut found = hole();
                for u in ts {
                    let ty = self.synth(ctx, u)?;
                    if is_hole_ty(&found) {
                        found = ty;
                    } else if !matches(&found, &ty) {
                        return Err(TypeError::TypeMismatch { term: u.to_string(), expected: found, found: ty });
                    }
                }
                Ok(found)
            }
        }
    }

    fn check(&self, ctx: &Context, t: &Term, expected: &Type) -> Result<(), TypeError> {
        if is_hole_ty(expected) {
            return self.synth(ctx, t).map(|_| ());
        }
        match (t, expected) {
            (Term::Zero(None), _) if self.lenient => Ok(()),
            (Term::Scale(_, u), _) => self.check(ctx, u, expected),
            (Term::Sum(ts), _) => ts.iter().try_for_each(|u| self.check(ctx, u, expected)),
            (Term::Abs(hint, Some(ann), body), Type::Arrow(d, c)) => {
                classical(ann)?;
                if !matches(ann, d) {
                    return Err(TypeError::TypeMismatch { term: t.to_string(), expected: (**d).clone(), found: ann.clone() });
                }
                let (x, opened) = open_binder(ctx, &hint.0, body);
                let inner = ctx.extended(&x, UnitType::new(ann.clone()).expect("classical types are units"))?;
                self.check(&inner, &opened, c)
            }
            (Term::TyAbs(x, u), Type::Forall(y, b)) if x == y || !expected.free_vars().contains(x) => {
                escapes(ctx, x)?;
                self.check(ctx, u, &b.subst(y, &Type::var(x)))
            }
            _ => {
                let found = self.synth(ctx, t)?;
                if matches(&found, expected) {
                    Ok(())
                } else {
                    Err(TypeError::TypeMismatch { term: t.to_string(), expected: expected.clone(), found })
                }
            }
        }
    }
}
