use std::fmt;

use crate::term::Term;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Outcome {
    Pass,
    Fail,
    Inconclusive,
}

impl fmt::Display for Outcome {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Outcome::Pass => "PASS",
            Outcome::Fail => "FAIL",
            Outcome::Inconclusive => "INCONCLUSIVE",
        })
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CaseResult {
    pub index: usize,
    pub outcome: Outcome,
    pub detail: String,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Report {
    pub suite: String,
    pub seed: u64,
    pub cases: Vec<CaseResult>,
}

impl Report {
    pub fn count(&self, o: Outcome) -> usize {
        self.cases.iter().filter(|c| c.outcome == o).count()
    }

    pub fn failures(&self) -> usize {
        self.count(Outcome::Fail)
    }

    pub fn inconclusive(&self) -> usize {
        self.count(Outcome::Inconclusive)
    }

    pub fn passed(&self) -> bool {
        self.failures() == 0
    }

    pub fn summary(&self) -> String {
        format!(
            "SUMMARY {} seed={} cases={} pass={} fail={} inconclusive={}",
            self.suite,
            self.seed,
            self.cases.len(),
            self.count(Outcome::Pass),
            self.failures(),
            self.inconclusive()
        )
    }

    pub fn render(&self) -> String {
        let mut out = String::new();
        for c in &self.cases {
            if c.detail.is_empty() {
                out.push_str(&format!("CASE {} {}\n", c.index, c.outcome));
            } else {
                out.push_str(&format!("CASE {} {} {}\n", c.index, c.outcome, c.detail));
            }
        }
        out.push_str(&self.summary());
        out.push('\n');
        out
    }
}

fn uses_index(t: &Term, k: usize) -> bool {
    match t {
        Term::Bound(i) => *i == k,
        Term::Abs(_, _, b) => uses_index(b, k + 1),
        _ => t.children().into_iter().any(|c| uses_index(c, k)),
    }
}

/// Terms obtained from `t` by deleting one node: a node is replaced by one
/// of its children, a sum loses one addend, or a node becomes `0`.
pub fn single_deletions(t: &Term) -> Vec<Term> {
    let mut out = Vec::new();
    let mut paths = Vec::new();
    collect_paths(t, &mut Vec::new(), &mut paths);
    for p in paths {
        let node = t.at(&p).expect("collected path");
        let mut replacements: Vec<Term> = Vec::new();
        match node {
            Term::Abs(_, _, b) => {
                if !uses_index(b, 0) {
                    replacements.push(b.shift(-1, 0));
                }
            }
            Term::Sum(ts) => {
                for i in 0..ts.len() {
                    replacements.push(Term::sum(ts.iter().enumerate().filter(|(j, _)| *j != i).map(|(_, u)| u.clone())));
                }
            }
            _ => replacements.extend(node.children().into_iter().cloned()),
        }
        if !matches!(node, Term::Zero(_)) {
            replacements.push(Term::zero());
        }
        for r in replacements {
            out.push(t.replace_at(&p, |_| r.clone()));
        }
    }
    out
}

fn collect_paths(t: &Term, here: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
    out.push(here.clone());
    for (i, c) in t.children().into_iter().enumerate() {
        here.push(i);
        collect_paths(c, here, out);
        here.pop();
    }
}

/// Greedily delete nodes while `still_fails` holds. The result has no single
/// deletion that keeps the failure.
pub fn shrink(t: &Term, still_fails: impl Fn(&Term) -> bool) -> Term {
    let mut cur = t.clone();
    'outer: loop {
        for cand in single_deletions(&cur) {
            if still_fails(&cand) {
                cur = cand;
                continue 'outer;
            }
        }
        return cur;
    }
}
