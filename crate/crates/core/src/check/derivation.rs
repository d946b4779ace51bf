use std::collections::BTreeMap;
use std::fmt::Write;

use super::Context;
use crate::term::Term;
use crate::types::{canonicalize, Canonical, Type};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Rule {
    Ax,
    Equiv,
    ArrowE,
    ArrowI,
    ForallE,
    ForallI,
    AxZero,
    SumI,
    ScaleI,
}

impl Rule {
    pub const ALL: [Rule; 9] = [
        Rule::Ax,
        Rule::Equiv,
        Rule::ArrowE,
        Rule::ArrowI,
        Rule::ForallE,
        Rule::ForallI,
        Rule::AxZero,
        Rule::SumI,
        Rule::ScaleI,
    ];

    pub fn label(self) -> &'static str {
        match self {
            Rule::Ax => "ax",
            Rule::Equiv => "≡",
            Rule::ArrowE => "→E",
            Rule::ArrowI => "→I",
            Rule::ForallE => "∀E",
            Rule::ForallI => "∀I",
            Rule::AxZero => "ax0",
            Rule::SumI => "+I",
            Rule::ScaleI => "sI",
        }
    }

    /// ASCII name used by the export format.
    pub fn tag(self) -> &'static str {
        match self {
            Rule::Ax => "ax",
            Rule::Equiv => "equiv",
            Rule::ArrowE => "arrow-e",
            Rule::ArrowI => "arrow-i",
            Rule::ForallE => "forall-e",
            Rule::ForallI => "forall-i",
            Rule::AxZero => "ax-zero",
            Rule::SumI => "sum-i",
            Rule::ScaleI => "scale-i",
        }
    }
}

/// A typing derivation. `ty` is the conclusion exactly as the rule produces
/// it; an `Equiv` node on top rewrites it to canonical form when needed.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Derivation {
    pub rule: Rule,
    pub context: Context,
    pub term: Term,
    pub ty: Type,
    pub premises: Vec<Derivation>,
}

impl Derivation {
    pub fn canonical(&self) -> Canonical {
        canonicalize(&self.ty)
    }

    /// Height, with equivalence steps free and leaves of size 0.
    pub fn size(&self) -> usize {
        let below = self.premises.iter().map(Derivation::size).max();
        match (self.rule, below) {
            (Rule::Equiv, b) => b.unwrap_or(0),
            (_, None) => 0,
            (_, Some(b)) => b + 1,
        }
    }

    pub fn rule_counts(&self) -> BTreeMap<Rule, usize> {
        let mut out = BTreeMap::new();
        self.count_into(&mut out);
        out
    }

    fn count_into(&self, out: &mut BTreeMap<Rule, usize>) {
        *out.entry(self.rule).or_insert(0) += 1;
        self.premises.iter().for_each(|p| p.count_into(out));
    }

    pub fn sequent(&self) -> String {
        if self.context.is_empty() {
            format!("⊢ {} : {}", self.term, self.ty)
        } else {
            format!("{} ⊢ {} : {}", self.context, self.term, self.ty)
        }
    }

    /// Indented tree, conclusion first, one rule per line.
    pub fn pretty(&self) -> String {
        let mut out = String::new();
        self.pretty_into(0, &mut out);
        out
    }

    fn pretty_into(&self, depth: usize, out: &mut String) {
        let _ = writeln!(out, "{:indent$}[{}] {}", "", self.rule.label(), self.sequent(), indent = 2 * depth);
        self.premises.iter().for_each(|p| p.pretty_into(depth + 1, out));
    }

    /// S-expression export: `(TAG "context" "term" "type" PREMISE*)`.
    pub fn export(&self) -> String {
        let mut out = String::new();
        self.export_into(0, &mut out);
        out
    }

    fn export_into(&self, depth: usize, out: &mut String) {
        let q = |s: String| format!("{:?}", s);
        let _ = write!(
            out,
            "{:indent$}({} {} {} {}",
            "",
            self.rule.tag(),
            q(self.context.to_string()),
            q(self.term.to_string()),
            q(self.ty.to_string()),
            indent = 2 * depth
        );
        for p in &self.premises {
            out.push('\n');
            p.export_into(depth + 1, out);
        }
        out.push(')');
        if depth == 0 {
            out.push('\n');
        }
    }
}
