//! Types weighted by scalars, the unit-type subclass, and the equivalence
//! relation decided through canonical forms.

mod canon;
mod print;

pub use canon::{canonicalize, type_equiv, Canonical};

use std::collections::BTreeSet;
use std::fmt;

use thiserror::Error;

use crate::scalar::Scalar;

/// `T ::= X | U -> T | forall X. T | α.T | Zero`.
///
/// The domain of an arrow is always a unit type; use [`Type::arrow`] or the
/// parser to build arrows so the invariant holds.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Type {
    Var(String),
    Arrow(Box<Type>, Box<Type>),
    Forall(String, Box<Type>),
    Scale(Scalar, Box<Type>),
    Zero,
}

/// A type in the unit subclass `U ::= X | U -> T | forall X. U`.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Debug)]
pub struct UnitType(Type);

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum TypeFormError {
    #[error("`{0}` is not a unit type")]
    NotAUnit(Type),
}

impl UnitType {
    pub fn new(ty: Type) -> Result<UnitType, TypeFormError> {
        if ty.is_unit() {
            Ok(UnitType(ty))
        } else {
            Err(TypeFormError::NotAUnit(ty))
        }
    }

    pub fn var(name: &str) -> UnitType {
        UnitType(Type::Var(name.to_string()))
    }

    pub fn as_type(&self) -> &Type {
        &self.0
    }

    pub fn into_type(self) -> Type {
        self.0
    }
}

impl fmt::Display for UnitType {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        self.0.fmt(f)
    }
}

impl Type {
    pub fn var(name: &str) -> Type {
        Type::Var(name.to_string())
    }

    pub fn arrow(dom: UnitType, cod: Type) -> Type {
        Type::Arrow(Box::new(dom.0), Box::new(cod))
    }

    pub fn forall(name: &str, body: Type) -> Type {
        Type::Forall(name.to_string(), Box::new(body))
    }

    pub fn scale(coeff: Scalar, body: Type) -> Type {
        Type::Scale(coeff, Box::new(body))
    }

    /// `forall X. X -> X -> X`
    pub fn church_bool() -> Type {
        let x = || UnitType::var("X");
        Type::forall("X", Type::arrow(x(), Type::arrow(x(), Type::var("X"))))
    }

    pub fn is_unit(&self) -> bool {
        match self {
            Type::Var(_) => true,
            Type::Arrow(dom, _) => dom.is_unit(),
            Type::Forall(_, body) => body.is_unit(),
            Type::Scale(..) | Type::Zero => false,
        }
    }

    /// Scalar-free and zero-free everywhere: the classical (System F) types.
    pub fn is_classical(&self) -> bool {
        match self {
            Type::Var(_) => true,
            Type::Arrow(dom, cod) => dom.is_classical() && cod.is_classical(),
            Type::Forall(_, body) => body.is_classical(),
            Type::Scale(..) | Type::Zero => false,
        }
    }

    pub fn free_vars(&self) -> BTreeSet<String> {
        let mut out = BTreeSet::new();
        self.collect_free(&mut Vec::new(), &mut out);
        out
    }

    fn collect_free<'a>(&'a self, bound: &mut Vec<&'a str>, out: &mut BTreeSet<String>) {
        match self {
            Type::Var(x) => {
                if !bound.contains(&x.as_str()) {
                    out.insert(x.clone());
                }
            }
            Type::Arrow(dom, cod) => {
                dom.collect_free(bound, out);
                cod.collect_free(bound, out);
            }
            Type::Forall(x, body) => {
                bound.push(x);
                body.collect_free(bound, out);
                bound.pop();
            }
            Type::Scale(_, body) => body.collect_free(bound, out),
            Type::Zero => {}
        }
    }

    /// All variable names occurring in the type, bound or free.
    pub fn all_vars(&self, out: &mut BTreeSet<String>) {
        match self {
            Type::Var(x) => {
                out.insert(x.clone());
            }
            Type::Arrow(dom, cod) => {
                dom.all_vars(out);
                cod.all_vars(out);
            }
            Type::Forall(x, body) => {
                out.insert(x.clone());
                body.all_vars(out);
            }
            Type::Scale(_, body) => body.all_vars(out),
            Type::Zero => {}
        }
    }

    /// Capture-avoiding `self[replacement/var]`. Total on any replacement; the
    /// unit-only discipline is enforced by [`subst_type`].
    pub fn subst(&self, var: &str, replacement: &Type) -> Type {
        let fv = replacement.free_vars();
        self.subst_with(var, replacement, &fv)
    }

    fn subst_with(&self, var: &str, replacement: &Type, fv: &BTreeSet<String>) -> Type {
        match self {
            Type::Var(x) if x == var => replacement.clone(),
            Type::Var(_) | Type::Zero => self.clone(),
            Type::Arrow(dom, cod) => Type::Arrow(
                Box::new(dom.subst_with(var, replacement, fv)),
                Box::new(cod.subst_with(var, replacement, fv)),
            ),
            Type::Scale(a, body) => {
                Type::Scale(a.clone(), Box::new(body.subst_with(var, replacement, fv)))
            }
            Type::Forall(x, _) if x == var => self.clone(),
            Type::Forall(x, body) => {
                if fv.contains(x) && body.free_vars().contains(var) {
                    let mut avoid = fv.clone();
                    body.all_vars(&mut avoid);
                    avoid.insert(var.to_string());
                    let fresh = fresh_name(x, &avoid);
                    let renamed = body.subst(x, &Type::Var(fresh.clone()));
                    Type::Forall(fresh, Box::new(renamed.subst_with(var, replacement, fv)))
                } else {
                    Type::Forall(x.clone(), Box::new(body.subst_with(var, replacement, fv)))
                }
            }
        }
    }

    /// Alpha-equivalence: equality up to renaming of `forall` binders.
    pub fn alpha_eq(&self, other: &Type) -> bool {
        alpha_eq_in(self, other, &mut Vec::new(), &mut Vec::new())
    }
}

fn alpha_eq_in<'a>(
    a: &'a Type,
    b: &'a Type,
    env_a: &mut Vec<&'a str>,
    env_b: &mut Vec<&'a str>,
) -> bool {
    match (a, b) {
        (Type::Var(x), Type::Var(y)) => {
            let ix = env_a.iter().rposition(|n| *n == x);
            let iy = env_b.iter().rposition(|n| *n == y);
            match (ix, iy) {
                (Some(i), Some(j)) => env_a.len() - i == env_b.len() - j,
                (None, None) => x == y,
                _ => false,
            }
        }
        (Type::Arrow(d1, c1), Type::Arrow(d2, c2)) => {
            alpha_eq_in(d1, d2, env_a, env_b) && alpha_eq_in(c1, c2, env_a, env_b)
        }
        (Type::Forall(x, t1), Type::Forall(y, t2)) => {
            env_a.push(x);
            env_b.push(y);
            let eq = alpha_eq_in(t1, t2, env_a, env_b);
            env_a.pop();
            env_b.pop();
            eq
        }
        (Type::Scale(s1, t1), Type::Scale(s2, t2)) => s1 == s2 && alpha_eq_in(t1, t2, env_a, env_b),
        (Type::Zero, Type::Zero) => true,
        _ => false,
    }
}

/// `base`, or `base` followed by the smallest numeric suffix not in `avoid`.
pub fn fresh_name(base: &str, avoid: &BTreeSet<String>) -> String {
    let stem = base.trim_end_matches(|c: char| c.is_ascii_digit());
    let stem = if stem.is_empty() { base } else { stem };
    if !avoid.contains(base) {
        return base.to_string();
    }
    (1..)
        .map(|i| format!("{stem}{i}"))
        .find(|cand| !avoid.contains(cand))
        .unwrap()
}

pub fn free_type_vars(ty: &Type) -> BTreeSet<String> {
    ty.free_vars()
}

/// `ty[unit/var]`; only unit types may be substituted for type variables.
pub fn subst_type(ty: &Type, var: &str, unit: &Type) -> Result<Type, TypeFormError> {
    if !unit.is_unit() {
        return Err(TypeFormError::NotAUnit(unit.clone()));
    }
    Ok(ty.subst(var, unit))
}

impl fmt::Debug for Type {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self)
    }
}
