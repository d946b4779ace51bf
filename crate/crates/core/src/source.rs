//! Loading `.lin` files with the standard prelude, and printing results
//! with prelude names put back.

use crate::check::{Context, TypeError};
use crate::syntax::{parse_source, ParseError, Scope, SourceFile};
use crate::term::Term;
use crate::types::Type;

/// Church booleans and their type.
pub const PRELUDE: &str = include_str!("../programs/prelude.lin");

/// Definitions and aliases of [`PRELUDE`].
pub fn prelude_scope() -> Scope {
    let src = format!("{PRELUDE}\n0");
    parse_source(&src, &Scope::default()).expect("prelude parses").scope
}

/// Parse a file. The returned scope holds the prelude (when loaded) followed
/// by the file's own declarations.
pub fn load(src: &str, with_prelude: bool) -> Result<SourceFile, ParseError> {
    let mut scope = if with_prelude { prelude_scope() } else { Scope::default() };
    let mut file = parse_source(src, &scope)?;
    scope.extend(&file.scope);
    file.scope = scope;
    Ok(file)
}

pub fn context_of(file: &SourceFile) -> Result<Context, TypeError> {
    Context::from_pairs(file.assumptions.iter().cloned())
}

/// Replace subterms that are definitions of `scope` by the defined name.
/// Erased terms are matched against erased definitions.
pub fn resugar_term(t: &Term, scope: &Scope) -> Term {
    let erased = t.is_erased();
    for (name, def) in scope.defs.iter().rev() {
        let def = if erased { def.erase() } else { def.clone() };
        if *t == def {
            return Term::var(name);
        }
    }
    t.map_children(|c| resugar_term(c, scope))
}

/// Replace subtypes that are alpha-equivalent to an alias by its name.
pub fn resugar_type(ty: &Type, scope: &Scope) -> Type {
    for (name, body) in scope.aliases.iter().rev() {
        if ty.alpha_eq(body) {
            return Type::var(name);
        }
    }
    match ty {
        Type::Var(_) | Type::Zero => ty.clone(),
        Type::Arrow(d, c) => Type::Arrow(Box::new(resugar_type(d, scope)), Box::new(resugar_type(c, scope))),
        Type::Forall(x, b) => Type::forall(x, resugar_type(b, scope)),
        Type::Scale(a, b) => Type::scale(a.clone(), resugar_type(b, scope)),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rewrite::{normalize, Mode, DEFAULT_FUEL};

    #[test]
    fn prelude_names_come_back() {
        let file = load("1/2.(true + false) :: B", true).unwrap();
        let nf = normalize(&file.main.erase(), Mode::Restricted, DEFAULT_FUEL).unwrap().term;
        assert_eq!(resugar_term(&nf, &file.scope).to_string(), "1/2.false + 1/2.true");
        let ty = file.ascription.unwrap();
        assert_eq!(resugar_type(&Type::Arrow(Box::new(ty.clone()), Box::new(ty)), &file.scope).to_string(), "B -> B");
    }
}
