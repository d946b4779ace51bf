use thiserror::Error;

use crate::scalar::Scalar;
use crate::term::Term;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum DecomposeError {
    #[error("closed normal term is not a combination of abstractions: {0}")]
    NotInCanonicalVectorForm(Term),
}

/// The coefficient sum ω. Type annotations and type abstractions are looked
/// through.
pub fn weight(t: &Term) -> Scalar {
    match t {
        Term::Zero(_) => Scalar::zero(),
        Term::Bound(_) | Term::Var(_) | Term::Abs(..) => Scalar::one(),
        Term::TyAbs(_, u) | Term::TyApp(u, _) => weight(u),
        Term::Sum(ts) => ts.iter().map(weight).sum(),
        Term::Scale(a, u) => a * &weight(u),
        Term::App(f, a) => &weight(f) * &weight(a),
    }
}

/// Split a closed normal term into `(coefficient, abstraction)` pairs.
/// Bare abstractions get coefficient 1 and `0` gives no pairs.
pub fn decompose_normal(t: &Term) -> Result<Vec<(Scalar, Term)>, DecomposeError> {
    let bad = || DecomposeError::NotInCanonicalVectorForm(t.clone());
    let one = |u: &Term| match u {
        Term::Abs(..) => Ok((Scalar::one(), u.clone())),
        Term::Scale(a, b) if matches!(**b, Term::Abs(..)) => Ok((a.clone(), (**b).clone())),
        _ => Err(bad()),
    };
    match t {
        Term::Zero(_) => Ok(Vec::new()),
        Term::Sum(ts) => ts.iter().map(one).collect(),
        u => Ok(vec![one(u)?]),
    }
}
