use std::fmt;

use super::{Type, UnitType};
use crate::scalar::Scalar;

/// Normal form of a type under the equivalence: either the zero type or a
/// non-zero scalar in front of a unit type whose inner codomains are
/// themselves canonical.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub enum Canonical {
    Zero,
    Scaled(Scalar, UnitType),
}

impl Canonical {
    pub fn unit(u: UnitType) -> Canonical {
        Canonical::Scaled(Scalar::one(), u)
    }

    pub fn scalar(&self) -> Scalar {
        match self {
            Canonical::Zero => Scalar::zero(),
            Canonical::Scaled(a, _) => a.clone(),
        }
    }

    pub fn unit_part(&self) -> Option<&UnitType> {
        match self {
            Canonical::Zero => None,
            Canonical::Scaled(_, u) => Some(u),
        }
    }

    pub fn is_zero(&self) -> bool {
        matches!(self, Canonical::Zero)
    }

    /// Multiply by a scalar, collapsing to zero as needed.
    pub fn scaled_by(&self, by: &Scalar) -> Canonical {
        match self {
            Canonical::Zero => Canonical::Zero,
            _ if by.is_zero() => Canonical::Zero,
            Canonical::Scaled(a, u) => Canonical::Scaled(a * by, u.clone()),
        }
    }

    /// Back to a type expression: `Zero`, `U`, or `α.U`.
    pub fn to_type(&self) -> Type {
        match self {
            Canonical::Zero => Type::Zero,
            Canonical::Scaled(a, u) if a.is_one() => u.as_type().clone(),
            Canonical::Scaled(a, u) => Type::scale(a.clone(), u.as_type().clone()),
        }
    }

    /// Equality up to renaming of bound type variables.
    pub fn alpha_eq(&self, other: &Canonical) -> bool {
        match (self, other) {
            (Canonical::Zero, Canonical::Zero) => true,
            (Canonical::Scaled(a, u), Canonical::Scaled(b, v)) => {
                a == b && u.as_type().alpha_eq(v.as_type())
            }
            _ => false,
        }
    }
}

impl fmt::Display for Canonical {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        self.to_type().fmt(f)
    }
}

/// Apply `α.0̄ ≡ 0̄`, `0.T ≡ 0̄`, `1.T ≡ T`, `α.(β.T) ≡ (α×β).T` and
/// `∀X.α.T ≡ α.∀X.T` left to right until nothing changes. Scalars inside an
/// arrow codomain are canonicalized in place but never cross the arrow.
pub fn canonicalize(ty: &Type) -> Canonical {
    match ty {
        Type::Var(_) => Canonical::unit(UnitType(ty.clone())),
        Type::Arrow(dom, cod) => {
            let dom = match canonicalize(dom) {
                Canonical::Scaled(a, u) if a.is_one() => u.into_type(),
                // arrow domains are units, which always canonicalize with scalar 1
                other => other.to_type(),
            };
            let cod = canonicalize(cod).to_type();
            Canonical::unit(UnitType(Type::Arrow(Box::new(dom), Box::new(cod))))
        }
        Type::Forall(x, body) => match canonicalize(body) {
            Canonical::Zero => Canonical::Zero,
            Canonical::Scaled(a, u) => {
                Canonical::Scaled(a, UnitType(Type::Forall(x.clone(), Box::new(u.into_type()))))
            }
        },
        Type::Scale(a, body) => canonicalize(body).scaled_by(a),
        Type::Zero => Canonical::Zero,
    }
}

pub fn type_equiv(a: &Type, b: &Type) -> bool {
    canonicalize(a).alpha_eq(&canonicalize(b))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::syntax::parse_type;

    fn ty(s: &str) -> Type {
        parse_type(s).unwrap()
    }

    fn q(s: &str) -> Scalar {
        s.parse().unwrap()
    }

    #[test]
    fn forall_floats_scalars() {
        let c = canonicalize(&ty("forall X. 1/2.(X -> X)"));
        assert_eq!(c, Canonical::Scaled(q("1/2"), UnitType(ty("forall X. X -> X"))));
    }

    #[test]
    fn zero_scalar_collapses() {
        assert_eq!(canonicalize(&ty("0.(X -> X)")), Canonical::Zero);
        assert_eq!(canonicalize(&ty("3.Zero")), Canonical::Zero);
        assert_eq!(canonicalize(&ty("forall X. Zero")), Canonical::Zero);
    }

    #[test]
    fn scalars_do_not_cross_arrows() {
        let c = canonicalize(&ty("X -> 3.X"));
        assert_eq!(c, Canonical::unit(UnitType(ty("X -> 3.X"))));
        assert!(!type_equiv(&ty("X -> 3.X"), &ty("3.(X -> X)")));
        assert!(!type_equiv(&ty("1/2.(X -> X)"), &ty("X -> 1/2.X")));
    }

    #[test]
    fn codomains_are_canonicalized_in_place() {
        assert!(type_equiv(&ty("X -> 2.(3.X)"), &ty("X -> 6.X")));
        assert!(type_equiv(&ty("(X -> 1.X) -> X"), &ty("(X -> X) -> X")));
        assert!(type_equiv(&ty("X -> forall Y. 2.Y"), &ty("X -> 2.forall Y. Y")));
    }

    #[test]
    fn definition_axioms() {
        assert!(type_equiv(&ty("1.(X -> X)"), &ty("X -> X")));
        assert!(type_equiv(&ty("2.(3.X)"), &ty("6.X")));
        assert!(type_equiv(&ty("5.Zero"), &ty("Zero")));
        assert!(type_equiv(&ty("0.X"), &ty("Zero")));
        assert!(type_equiv(&ty("forall X. 2.X"), &ty("2.forall X. X")));
    }

    #[test]
    fn canonicalize_is_idempotent_on_examples() {
        for s in ["forall X. 1/2.(X -> 2.X)", "3.(4.forall Y. Y -> 0.Y)", "Zero", "X"] {
            let c = canonicalize(&ty(s));
            assert_eq!(canonicalize(&c.to_type()), c);
        }
    }
}
