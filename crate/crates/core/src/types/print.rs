use std::fmt;

use super::Type;

impl fmt::Display for Type {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write_type(self, f)
    }
}

fn write_type(ty: &Type, f: &mut fmt::Formatter<'_>) -> fmt::Result {
    match ty {
        Type::Forall(x, body) => {
            write!(f, "forall {x}. ")?;
            write_type(body, f)
        }
        Type::Arrow(dom, cod) => {
            write_prefix(dom, f)?;
            f.write_str(" -> ")?;
            write_type(cod, f)
        }
        _ => write_prefix(ty, f),
    }
}

/// Operand of `->` or of a scalar prefix: anything that is not an arrow or a
/// quantifier prints bare.
fn write_prefix(ty: &Type, f: &mut fmt::Formatter<'_>) -> fmt::Result {
    match ty {
        Type::Var(x) => f.write_str(x),
        Type::Zero => f.write_str("Zero"),
        Type::Scale(a, body) => {
            write!(f, "{a}.")?;
            write_prefix(body, f)
        }
        Type::Arrow(..) | Type::Forall(..) => {
            f.write_str("(")?;
            write_type(ty, f)?;
            f.write_str(")")
        }
    }
}
