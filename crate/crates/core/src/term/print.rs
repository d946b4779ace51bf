use std::collections::BTreeSet;
use std::fmt::{self, Write};

use super::Term;
use crate::types::{fresh_name, Type};

impl fmt::Display for Term {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut p = Printer { out: String::new(), taken: self.free_vars(), scope: Vec::new() };
        p.term(self);
        f.write_str(&p.out)
    }
}

pub fn print_term(t: &Term) -> String {
    t.to_string()
}

struct Printer {
    out: String,
    /// Free names plus every binder name currently in scope; a new binder
    /// never reuses one of them, so printed names cannot capture.
    taken: BTreeSet<String>,
    scope: Vec<String>,
}

impl Printer {
    fn term(&mut self, t: &Term) {
        match t {
            Term::Abs(h, ann, body) => {
                let base = if h.0.is_empty() { "x" } else { h.0.as_str() };
                let name = fresh_name(base, &self.taken);
                write!(self.out, "\\{name}").unwrap();
                if let Some(ty) = ann {
                    self.annotation(ty);
                }
                self.out.push_str(". ");
                self.taken.insert(name.clone());
                self.scope.push(name.clone());
                self.term(body);
                self.scope.pop();
                self.taken.remove(&name);
            }
            Term::TyAbs(x, body) => {
                write!(self.out, "/\\{x}. ").unwrap();
                self.term(body);
            }
            Term::Sum(ts) => {
                for (i, a) in ts.iter().enumerate() {
                    if i > 0 {
                        self.out.push_str(" + ");
                    }
                    self.scaled(a);
                }
            }
            _ => self.scaled(t),
        }
    }

    fn annotation(&mut self, ty: &Type) {
        match ty {
            Type::Var(x) => write!(self.out, ":{x}").unwrap(),
            _ => write!(self.out, ":({ty})").unwrap(),
        }
    }

    fn scaled(&mut self, t: &Term) {
        match t {
            Term::Scale(a, body) => {
                write!(self.out, "{a}.").unwrap();
                match **body {
                    Term::Sum(_) | Term::Abs(..) | Term::TyAbs(..) | Term::Scale(..) => self.paren(body),
                    _ => self.app(body),
                }
            }
            Term::Sum(_) | Term::Abs(..) | Term::TyAbs(..) => self.paren(t),
            _ => self.app(t),
        }
    }

    fn app(&mut self, t: &Term) {
        match t {
            Term::App(fun, arg) => {
                self.app(fun);
                self.out.push(' ');
                self.postfix(arg);
            }
            _ => self.postfix(t),
        }
    }

    fn postfix(&mut self, t: &Term) {
        match t {
            Term::TyApp(fun, ty) => {
                self.postfix(fun);
                write!(self.out, " [{ty}]").unwrap();
            }
            _ => self.primary(t),
        }
    }

    fn primary(&mut self, t: &Term) {
        match t {
            Term::Var(x) => self.out.push_str(x),
            Term::Bound(i) => {
                let name = self
                    .scope
                    .len()
                    .checked_sub(i + 1)
                    .map(|k| self.scope[k].clone())
                    .unwrap_or_else(|| format!("#{i}"));
                self.out.push_str(&name);
            }
            Term::Zero(None) => self.out.push('0'),
            Term::Zero(Some(ty)) => write!(self.out, "(0 : {ty})").unwrap(),
            _ => self.paren(t),
        }
    }

    fn paren(&mut self, t: &Term) {
        self.out.push('(');
        self.term(t);
        self.out.push(')');
    }
}
