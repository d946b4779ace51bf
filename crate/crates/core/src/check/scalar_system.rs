use super::{open_binder, Context, Derivation, Rule, TypeError};
use crate::term::Term;
use crate::types::{Canonical, Type, UnitType};

/// Synthesize the canonical type of `t`, with its derivation.
pub fn infer_scalar(ctx: &Context, t: &Term) -> Result<(Canonical, Derivation), TypeError> {
    let d = Checker { barycentric: false }.infer(ctx, t)?;
    Ok((d.canonical(), d))
}

/// Check `t` in the barycentric system: classical context, type applications
/// to classical types only. Accepted when the final type is `C` with `C`
/// classical (scalar exactly 1).
pub fn check_barycentric(ctx: &Context, t: &Term) -> Result<(bool, Canonical, Derivation), TypeError> {
    if let Some((_, bad)) = ctx.iter().find(|(_, u)| !u.as_type().is_classical()) {
        return Err(TypeError::NonClassicalContext(bad.as_type().clone()));
    }
    let d = Checker { barycentric: true }.infer(ctx, t)?;
    let c = d.canonical();
    let ok = matches!(&c, Canonical::Scaled(a, u) if a.is_one() && u.as_type().is_classical());
    Ok((ok, c, d))
}

struct Checker {
    barycentric: bool,
}

fn node(rule: Rule, ctx: &Context, term: &Term, ty: Type, premises: Vec<Derivation>) -> Derivation {
    let d = Derivation { rule, context: ctx.clone(), term: term.clone(), ty, premises };
    let canon = d.canonical().to_type();
    if canon == d.ty {
        d
    } else {
        Derivation { rule: Rule::Equiv, context: ctx.clone(), term: term.clone(), ty: canon, premises: vec![d] }
    }
}

fn unit_of(ty: &Type) -> Result<UnitType, TypeError> {
    UnitType::new(ty.clone()).map_err(|_| TypeError::NonUnitAnnotation(ty.clone()))
}

impl Checker {
    fn infer(&self, ctx: &Context, t: &Term) -> Result<Derivation, TypeError> {
        match t {
            Term::Bound(i) => Err(TypeError::UnboundVariable(format!("#{i}"))),
            Term::Var(x) => {
                let u = ctx.lookup(x).ok_or_else(|| TypeError::UnboundVariable(x.clone()))?;
                Ok(node(Rule::Ax, ctx, t, u.as_type().clone(), vec![]))
            }
            Term::Abs(hint, ann, body) => {
                let ann = ann.as_ref().ok_or_else(|| TypeError::MissingAnnotation(hint.0.clone()))?;
                let u = unit_of(ann)?;
                if self.barycentric && !ann.is_classical() {
                    return Err(TypeError::NonClassicalContext(ann.clone()));
                }
                let (x, opened) = open_binder(ctx, &hint.0, body);
                let inner = ctx.extended(&x, u)?;
                let db = self.infer(&inner, &opened)?;
                let ty = Type::Arrow(Box::new(ann.clone()), Box::new(db.ty.clone()));
                Ok(node(Rule::ArrowI, ctx, t, ty, vec![db]))
            }
            Term::App(f, a) => {
                let df = self.infer(ctx, f)?;
                let da = self.infer(ctx, a)?;
                let ty = match (df.canonical(), da.canonical()) {
                    (Canonical::Scaled(alpha, w), ca) => match w.as_type() {
                        Type::Arrow(dom, cod) => match ca {
                            Canonical::Zero => Type::Zero,
                            Canonical::Scaled(beta, v) => {
                                if !dom.alpha_eq(v.as_type()) {
                                    return Err(TypeError::DomainMismatch {
                                        term: a.to_string(),
                                        expected: (**dom).clone(),
                                        found: v.into_type(),
                                    });
                                }
                                Type::scale(&alpha * &beta, (**cod).clone())
                            }
                        },
                        other => {
                            return Err(TypeError::NotAnArrow { term: f.to_string(), found: other.clone() })
                        }
                    },
                    (Canonical::Zero, _) => Type::Zero,
                };
                Ok(node(Rule::ArrowE, ctx, t, ty, vec![df, da]))
            }
            Term::TyAbs(x, u) => {
                if ctx.free_type_vars().contains(x) {
                    return Err(TypeError::ForallEscape(x.clone()));
                }
                let du = self.infer(ctx, u)?;
                let ty = Type::forall(x, du.ty.clone());
                Ok(node(Rule::ForallI, ctx, t, ty, vec![du]))
            }
            Term::TyApp(u, v) => {
                unit_of(v)?;
                if self.barycentric && !v.is_classical() {
                    return Err(TypeError::NonClassicalTypeApplication(v.clone()));
                }
                let du = self.infer(ctx, u)?;
                let ty = match du.canonical() {
                    Canonical::Zero => Type::Zero,
                    Canonical::Scaled(alpha, w) => match w.as_type() {
                        Type::Forall(x, body) => Type::scale(alpha, body.subst(x, v)),
                        other => {
                            return Err(TypeError::NotAForall { term: u.to_string(), found: other.clone() })
                        }
                    },
                };
                Ok(node(Rule::ForallE, ctx, t, ty, vec![du]))
            }
            Term::Zero(_) => Ok(node(Rule::AxZero, ctx, t, Type::Zero, vec![])),
            Term::Scale(a, u) => {
                let du = self.infer(ctx, u)?;
                let ty = Type::scale(a.clone(), du.ty.clone());
                Ok(node(Rule::ScaleI, ctx, t, ty, vec![du]))
            }
            Term::Sum(ts) => self.infer_sum(ctx, ts),
        }
    }

    /// Binary sum introduction, folded to the right over the addends.
    fn infer_sum(&self, ctx: &Context, ts: &[Term]) -> Result<Derivation, TypeError> {
        if ts.len() == 1 {
            return self.infer(ctx, &ts[0]);
        }
        let dl = self.infer(ctx, &ts[0])?;
        let dr = self.infer_sum(ctx, &ts[1..])?;
        let ty = match (dl.canonical(), dr.canonical()) {
            (Canonical::Zero, Canonical::Zero) => Type::Zero,
            (Canonical::Zero, Canonical::Scaled(b, u)) | (Canonical::Scaled(b, u), Canonical::Zero) => {
                Type::scale(b, u.into_type())
            }
            (Canonical::Scaled(a, u), Canonical::Scaled(b, v)) => {
                if !u.as_type().alpha_eq(v.as_type()) {
                    return Err(TypeError::SumUnitMismatch { left: u.into_type(), right: v.into_type() });
                }
                Type::scale(&a + &b, u.into_type())
            }
        };
        Ok(node(Rule::SumI, ctx, &Term::Sum(ts.to_vec()), ty, vec![dl, dr]))
    }
}
