//! Type checkers: the scalar-tracking system, its barycentric restriction,
//! and the scalar-forgetting System F variant.
//!
//! All checkers are syntax-directed over Church-annotated terms: binders carry
//! their unit type and polymorphism is explicit through type abstraction and
//! type application nodes.

mod derivation;
mod probe;
mod scalar_system;
mod system_f;

pub use derivation::{Derivation, Rule};
pub use probe::{interpolation_degree, probe_scalar_linearity, ProbeError, ScalarTemplate};
pub use scalar_system::{check_barycentric, infer_scalar};
pub use system_f::{check_correspondence, check_f, forget, forget_term, infer_f, is_hole, Forgetter};

use std::collections::BTreeSet;
use std::fmt;

use thiserror::Error;

use crate::term::Term;
use crate::types::{fresh_name, Type, UnitType};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum TypeError {
    #[error("unbound variable `{0}`")]
    UnboundVariable(String),
    #[error("duplicate variable `{0}` in context")]
    DuplicateVariable(String),
    #[error("`{term}` has type {found}, which is not an arrow")]
    NotAnArrow { term: String, found: Type },
    #[error("`{term}` has type {found}, which is not polymorphic")]
    NotAForall { term: String, found: Type },
    #[error("argument `{term}` has unit {found}, expected {expected}")]
    DomainMismatch { term: String, expected: Type, found: Type },
    #[error("addends have different units: {left} and {right}")]
    SumUnitMismatch { left: Type, right: Type },
    #[error("type variable {0} is free in the context")]
    ForallEscape(String),
    #[error("binder `{0}` has no type annotation")]
    MissingAnnotation(String),
    #[error("{0} is not a unit type")]
    NonUnitAnnotation(Type),
    #[error("0 needs a type annotation `(0 : A)`")]
    MissingZeroAnnotation,
    #[error("{0} is not a classical type")]
    NonClassicalContext(Type),
    #[error("type application to non-classical type {0}")]
    NonClassicalTypeApplication(Type),
    #[error("`{term}` has type {found}, expected {expected}")]
    TypeMismatch { term: String, expected: Type, found: Type },
}

/// Typing context: distinct term variables bound to unit types, in order.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash)]
pub struct Context {
    entries: Vec<(String, UnitType)>,
}

impl Context {
    pub fn new() -> Context {
        Context::default()
    }

    pub fn from_pairs<I, S>(pairs: I) -> Result<Context, TypeError>
    where
        I: IntoIterator<Item = (S, Type)>,
        S: Into<String>,
    {
        let mut ctx = Context::new();
        for (name, ty) in pairs {
            let name = name.into();
            let unit = UnitType::new(ty.clone()).map_err(|_| TypeError::NonUnitAnnotation(ty))?;
            ctx = ctx.extended(&name, unit)?;
        }
        Ok(ctx)
    }

    pub fn extended(&self, name: &str, ty: UnitType) -> Result<Context, TypeError> {
        if self.lookup(name).is_some() {
            return Err(TypeError::DuplicateVariable(name.to_string()));
        }
        let mut out = self.clone();
        out.entries.push((name.to_string(), ty));
        Ok(out)
    }

    pub fn lookup(&self, name: &str) -> Option<&UnitType> {
        self.entries.iter().find(|(n, _)| n == name).map(|(_, t)| t)
    }

    pub fn iter(&self) -> impl Iterator<Item = (&str, &UnitType)> {
        self.entries.iter().map(|(n, t)| (n.as_str(), t))
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    pub fn names(&self) -> BTreeSet<String> {
        self.entries.iter().map(|(n, _)| n.clone()).collect()
    }

    pub fn free_type_vars(&self) -> BTreeSet<String> {
        self.entries.iter().flat_map(|(_, t)| t.as_type().free_vars()).collect()
    }

    pub fn is_classical(&self) -> bool {
        self.entries.iter().all(|(_, t)| t.as_type().is_classical())
    }

    /// Apply `f` to every binding.
    pub fn map(&self, mut f: impl FnMut(&Type) -> Type) -> Result<Context, TypeError> {
        Context::from_pairs(self.entries.iter().map(|(n, t)| (n.clone(), f(t.as_type()))))
    }
}

impl fmt::Display for Context {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (i, (n, t)) in self.entries.iter().enumerate() {
            if i > 0 {
                f.write_str(", ")?;
            }
            write!(f, "{n} : {t}")?;
        }
        Ok(())
    }
}

/// Open the body of an abstraction with a fresh free variable.
pub(crate) fn open_binder(ctx: &Context, hint: &str, body: &Term) -> (String, Term) {
    let mut avoid = ctx.names();
    avoid.extend(body.free_vars());
    let base = if hint.is_empty() { "x" } else { hint };
    let fresh = fresh_name(base, &avoid);
    let opened = Term::instantiate(body, &Term::var(&fresh));
    (fresh, opened)
}

#[cfg(test)]
mod tests;
