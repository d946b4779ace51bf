//! Terms of the calculus.
//!
//! Bound variables are de Bruijn indices and free variables are names, so two
//! alpha-equivalent terms are structurally equal. Binder names survive only as
//! printing hints and never take part in comparisons. Sums are n-ary and kept
//! flattened and sorted, which makes equality modulo associativity and
//! commutativity of `+` plain structural equality as well.

mod print;

pub use print::print_term;

use std::cmp::Ordering;
use std::collections::BTreeSet;
use std::fmt;
use std::hash::{Hash, Hasher};

use crate::scalar::Scalar;
use crate::types::Type;

/// Binder name kept for printing. All hints compare equal.
#[derive(Clone, Debug, Default)]
pub struct Hint(pub String);

impl PartialEq for Hint {
    fn eq(&self, _: &Hint) -> bool {
        true
    }
}
impl Eq for Hint {}
impl PartialOrd for Hint {
    fn partial_cmp(&self, other: &Hint) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}
impl Ord for Hint {
    fn cmp(&self, _: &Hint) -> Ordering {
        Ordering::Equal
    }
}
impl Hash for Hint {
    fn hash<H: Hasher>(&self, _: &mut H) {}
}

#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Term {
    /// Bound variable, as a de Bruijn index.
    Bound(usize),
    /// Free variable.
    Var(String),
    /// `\x:U. t`; the annotation is absent in erased terms.
    Abs(Hint, Option<Type>, Box<Term>),
    /// `/\X. t`
    TyAbs(String, Box<Term>),
    /// `t [U]`
    TyApp(Box<Term>, Type),
    App(Box<Term>, Box<Term>),
    /// `0`, optionally annotated `(0 : A)` for the scalar-free checker.
    Zero(Option<Type>),
    Scale(Scalar, Box<Term>),
    /// Flattened, sorted, at least two addends.
    Sum(Vec<Term>),
}

/// Path of child indices from the root.
pub type Position = Vec<usize>;

impl Term {
    pub fn var(name: &str) -> Term {
        Term::Var(name.to_string())
    }

    pub fn zero() -> Term {
        Term::Zero(None)
    }

    /// `\name:ann. body`, binding every free occurrence of `name` in `body`.
    pub fn lam(name: &str, ann: Option<Type>, body: Term) -> Term {
        Term::Abs(Hint(name.to_string()), ann, Box::new(body.close(name, 0)))
    }

    pub fn ty_abs(name: &str, body: Term) -> Term {
        Term::TyAbs(name.to_string(), Box::new(body))
    }

    pub fn ty_app(fun: Term, arg: Type) -> Term {
        Term::TyApp(Box::new(fun), arg)
    }

    pub fn app(fun: Term, arg: Term) -> Term {
        Term::App(Box::new(fun), Box::new(arg))
    }

    pub fn scale(coeff: Scalar, body: Term) -> Term {
        Term::Scale(coeff, Box::new(body))
    }

    /// AC-canonical sum: nested sums are flattened and addends sorted. A
    /// single addend is returned as is and an empty sum is `0`.
    pub fn sum(addends: impl IntoIterator<Item = Term>) -> Term {
        let mut flat = Vec::new();
        for t in addends {
            match t {
                Term::Sum(inner) => flat.extend(inner),
                other => flat.push(other),
            }
        }
        match flat.len() {
            0 => Term::zero(),
            1 => flat.pop().unwrap(),
            _ => {
                flat.sort();
                Term::Sum(flat)
            }
        }
    }

    pub fn plus(self, other: Term) -> Term {
        Term::sum([self, other])
    }

    pub fn children(&self) -> Vec<&Term> {
        match self {
            Term::Bound(_) | Term::Var(_) | Term::Zero(_) => vec![],
            Term::Abs(_, _, b) | Term::TyAbs(_, b) | Term::TyApp(b, _) | Term::Scale(_, b) => {
                vec![b]
            }
            Term::App(f, a) => vec![f, a],
            Term::Sum(ts) => ts.iter().collect(),
        }
    }

    /// Rebuild with new children (same arity), re-sorting sums.
    pub fn with_children(&self, mut kids: Vec<Term>) -> Term {
        match self {
            Term::Bound(_) | Term::Var(_) | Term::Zero(_) => self.clone(),
            Term::Abs(h, ann, _) => Term::Abs(h.clone(), ann.clone(), Box::new(kids.remove(0))),
            Term::TyAbs(x, _) => Term::TyAbs(x.clone(), Box::new(kids.remove(0))),
            Term::TyApp(_, ty) => Term::TyApp(Box::new(kids.remove(0)), ty.clone()),
            Term::Scale(a, _) => Term::Scale(a.clone(), Box::new(kids.remove(0))),
            Term::App(..) => {
                let a = kids.pop().unwrap();
                let f = kids.pop().unwrap();
                Term::app(f, a)
            }
            Term::Sum(_) => Term::sum(kids),
        }
    }

    pub fn map_children(&self, mut f: impl FnMut(&Term) -> Term) -> Term {
        let kids = self.children().into_iter().map(&mut f).collect();
        self.with_children(kids)
    }

    pub fn at(&self, path: &[usize]) -> Option<&Term> {
        match path.split_first() {
            None => Some(self),
            Some((&i, rest)) => self.children().get(i)?.at(rest),
        }
    }

    /// Replace the subterm at `path` by `f(subterm)`. Sums on the way back up
    /// are re-flattened and re-sorted.
    pub fn replace_at(&self, path: &[usize], f: impl FnOnce(&Term) -> Term) -> Term {
        match path.split_first() {
            None => f(self),
            Some((&i, rest)) => {
                let mut f = Some(f);
                let kids = self
                    .children()
                    .into_iter()
                    .enumerate()
                    .map(|(j, k)| {
                        if j == i {
                            k.replace_at(rest, f.take().unwrap())
                        } else {
                            k.clone()
                        }
                    })
                    .collect();
                self.with_children(kids)
            }
        }
    }

    /// Number of term nodes (type annotations not counted).
    pub fn size(&self) -> usize {
        1 + self.children().into_iter().map(Term::size).sum::<usize>()
    }

    pub fn free_vars(&self) -> BTreeSet<String> {
        let mut out = BTreeSet::new();
        self.collect_free(&mut out);
        out
    }

    fn collect_free(&self, out: &mut BTreeSet<String>) {
        match self {
            Term::Var(x) => {
                out.insert(x.clone());
            }
            _ => self.children().into_iter().for_each(|c| c.collect_free(out)),
        }
    }

    pub fn has_free_var(&self, name: &str) -> bool {
        match self {
            Term::Var(x) => x == name,
            _ => self.children().into_iter().any(|c| c.has_free_var(name)),
        }
    }

    /// True when some de Bruijn index points above `depth` enclosing binders.
    pub fn has_dangling(&self, depth: usize) -> bool {
        match self {
            Term::Bound(i) => *i >= depth,
            Term::Abs(_, _, b) => b.has_dangling(depth + 1),
            _ => self.children().into_iter().any(|c| c.has_dangling(depth)),
        }
    }

    pub fn is_closed(&self) -> bool {
        !self.has_dangling(0) && self.free_vars().is_empty()
    }

    /// Variables and abstractions, looking through type abstraction and
    /// application.
    pub fn is_base(&self) -> bool {
        match self {
            Term::Bound(_) | Term::Var(_) | Term::Abs(..) => true,
            Term::TyAbs(_, b) | Term::TyApp(b, _) => b.is_base(),
            _ => false,
        }
    }

    /// True when the term carries no type-level syntax.
    pub fn is_erased(&self) -> bool {
        match self {
            Term::Abs(_, Some(_), _) | Term::TyAbs(..) | Term::TyApp(..) | Term::Zero(Some(_)) => {
                false
            }
            _ => self.children().into_iter().all(Term::is_erased),
        }
    }

    /// Drop binder annotations, type abstractions and type applications.
    pub fn erase(&self) -> Term {
        match self {
            Term::TyAbs(_, b) | Term::TyApp(b, _) => b.erase(),
            Term::Abs(h, _, b) => Term::Abs(h.clone(), None, Box::new(b.erase())),
            Term::Zero(_) => Term::zero(),
            _ => self.map_children(Term::erase),
        }
    }

    /// Replace the free variable `name` by `Bound(depth)` (adjusted under
    /// binders).
    pub fn close(&self, name: &str, depth: usize) -> Term {
        match self {
            Term::Var(x) if x == name => Term::Bound(depth),
            Term::Abs(h, ann, b) => Term::Abs(h.clone(), ann.clone(), Box::new(b.close(name, depth + 1))),
            _ => self.map_children(|c| c.close(name, depth)),
        }
    }

    /// Shift indices `>= cutoff` by `d`.
    pub fn shift(&self, d: isize, cutoff: usize) -> Term {
        if d == 0 {
            return self.clone();
        }
        match self {
            Term::Bound(i) if *i >= cutoff => {
                let j = *i as isize + d;
                assert!(j >= 0, "negative de Bruijn index after shift");
                Term::Bound(j as usize)
            }
            Term::Abs(h, ann, b) => Term::Abs(h.clone(), ann.clone(), Box::new(b.shift(d, cutoff + 1))),
            _ => self.map_children(|c| c.shift(d, cutoff)),
        }
    }

    /// Replace index `j` by `s` (which is shifted when going under binders).
    pub fn subst_index(&self, j: usize, s: &Term) -> Term {
        match self {
            Term::Bound(i) if *i == j => s.clone(),
            Term::Abs(h, ann, b) => Term::Abs(h.clone(), ann.clone(), Box::new(b.subst_index(j + 1, &s.shift(1, 0)))),
            _ => self.map_children(|c| c.subst_index(j, s)),
        }
    }

    /// `body[arg/0]` for the body of an abstraction, as in a beta step.
    pub fn instantiate(body: &Term, arg: &Term) -> Term {
        body.subst_index(0, &arg.shift(1, 0)).shift(-1, 0)
    }

    /// `self[b/x]` for a free variable `x`. Distributes over scalings and
    /// sums; capture cannot happen because bound variables are indices.
    pub fn substitute(&self, x: &str, b: &Term) -> Term {
        self.substitute_at(x, b, 0)
    }

    fn substitute_at(&self, x: &str, b: &Term, depth: usize) -> Term {
        match self {
            Term::Var(y) if y == x => b.shift(depth as isize, 0),
            Term::Abs(h, ann, body) => {
                Term::Abs(h.clone(), ann.clone(), Box::new(body.substitute_at(x, b, depth + 1)))
            }
            _ => self.map_children(|c| c.substitute_at(x, b, depth)),
        }
    }

    /// Apply `f` to every type stored in the term.
    pub fn map_types(&self, f: &mut impl FnMut(&Type) -> Type) -> Term {
        match self {
            Term::Abs(h, ann, b) => Term::Abs(h.clone(), ann.as_ref().map(&mut *f), Box::new(b.map_types(f))),
            Term::TyApp(b, ty) => {
                let ty = f(ty);
                Term::TyApp(Box::new(b.map_types(f)), ty)
            }
            Term::Zero(ann) => Term::Zero(ann.as_ref().map(f)),
            _ => self.map_children(|c| c.map_types(f)),
        }
    }
}

pub fn free_vars(t: &Term) -> BTreeSet<String> {
    t.free_vars()
}

pub fn substitute(t: &Term, x: &str, b: &Term) -> Term {
    t.substitute(x, b)
}

pub fn is_base(t: &Term) -> bool {
    t.is_base()
}

pub fn is_closed(t: &Term) -> bool {
    t.is_closed()
}

pub fn erase(t: &Term) -> Term {
    t.erase()
}

impl fmt::Debug for Term {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self)
    }
}
