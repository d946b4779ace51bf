//! Bounded search for a common reduct of two terms.

use std::collections::{BTreeSet, VecDeque};

use crate::rewrite::{one_step_reducts, Mode};
use crate::term::Term;

pub const DEFAULT_JOIN_DEPTH: usize = 6;
/// Cap on the number of distinct terms explored from each side.
pub const DEFAULT_NODE_CAP: usize = 4000;
/// Terms larger than this are not expanded further.
pub const DEFAULT_SIZE_CAP: usize = 400;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Joinability {
    /// A common reduct was found.
    Joined,
    /// Both reduction graphs were explored completely and are disjoint.
    Disproved,
    /// Nothing in common within the bounds, but the bounds were hit.
    Inconclusive,
}

struct Reach {
    seen: BTreeSet<Term>,
    complete: bool,
}

fn reach(start: &Term, mode: Mode, depth: usize, node_cap: usize, size_cap: usize) -> Reach {
    let mut seen = BTreeSet::from([start.clone()]);
    let mut queue = VecDeque::from([(start.clone(), 0usize)]);
    let mut complete = true;
    while let Some((t, d)) = queue.pop_front() {
        if t.size() > size_cap {
            complete = false;
            continue;
        }
        let next = one_step_reducts(&t, mode);
        if d == depth {
            complete &= next.is_empty();
            continue;
        }
        for (_, u) in next {
            if seen.len() >= node_cap {
                complete = false;
                break;
            }
            if seen.insert(u.clone()) {
                queue.push_back((u, d + 1));
            }
        }
    }
    Reach { seen, complete }
}

/// Explore all reducts of `a` and `b` up to `depth` steps and compare.
pub fn join_check(a: &Term, b: &Term, mode: Mode, depth: usize, node_cap: usize) -> Joinability {
    if a == b {
        return Joinability::Joined;
    }
    let ra = reach(a, mode, depth, node_cap, DEFAULT_SIZE_CAP);
    let rb = reach(b, mode, depth, node_cap, DEFAULT_SIZE_CAP);
    if ra.seen.iter().any(|t| rb.seen.contains(t)) {
        Joinability::Joined
    } else if ra.complete && rb.complete {
        Joinability::Disproved
    } else {
        Joinability::Inconclusive
    }
}

/// True iff a common reduct is found within `depth` steps from each side.
pub fn joinable(a: &Term, b: &Term, mode: Mode, depth: usize) -> bool {
    join_check(a, b, mode, depth, DEFAULT_NODE_CAP) == Joinability::Joined
}
