//! Relative complements, complementary sets, and the URC classifiers.

use serde::Serialize;

use super::{Interval, Lattice};

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub enum Complement {
    None,
    Unique(usize),
    /// More than one complement; impossible in a distributive lattice.
    Multiple(Vec<usize>),
}

/// Unordered pair `{c, d}` stored with `c < d` (by id).
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub struct ComplementarySet {
    pub c: usize,
    pub d: usize,
}

pub fn complement_in_interval(lattice: &Lattice, iv: Interval, c: usize) -> Complement {
    let found: Vec<usize> = (0..lattice.size())
        .filter(|&d| iv.contains(lattice, d) && lattice.join(c, d) == iv.hi && lattice.meet(c, d) == iv.lo)
        .collect();
    match found.as_slice() {
        [] => Complement::None,
        [d] => Complement::Unique(*d),
        _ => Complement::Multiple(found),
    }
}

/// All complementary sets of `iv`, excluding `{lo, hi}` itself, sorted.
pub fn complementary_sets(lattice: &Lattice, iv: Interval) -> Vec<ComplementarySet> {
    let members: Vec<usize> = (0..lattice.size()).filter(|&x| iv.contains(lattice, x)).collect();
    let mut out = Vec::new();
    for (k, &c) in members.iter().enumerate() {
        for &d in &members[k + 1..] {
            let trivial = (c == iv.lo && d == iv.hi) || (c == iv.hi && d == iv.lo);
            if !trivial && lattice.join(c, d) == iv.hi && lattice.meet(c, d) == iv.lo {
                out.push(ComplementarySet { c, d });
            }
        }
    }
    out.sort();
    out
}

pub fn is_complemented(lattice: &Lattice, iv: Interval) -> bool {
    !complementary_sets(lattice, iv).is_empty()
}

pub fn interval_is_chain(lattice: &Lattice, iv: Interval) -> bool {
    let members: Vec<usize> = (0..lattice.size()).filter(|&x| iv.contains(lattice, x)).collect();
    members.iter().all(|&a| members.iter().all(|&b| lattice.comparable(a, b)))
}

// Lower end ascending, upper end descending: widest intervals come first.
fn intervals(lattice: &Lattice) -> impl Iterator<Item = Interval> + '_ {
    let n = lattice.size();
    (0..n).flat_map(move |lo| (0..n).rev().filter(move |&hi| lattice.leq(lo, hi)).map(move |hi| Interval { lo, hi }))
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct CondUrcCheck {
    pub holds: bool,
    /// An interval together with two of its complementary sets.
    pub witness: Option<(Interval, ComplementarySet, ComplementarySet)>,
}

/// Every interval has at most one complementary set.
pub fn is_conditionally_urc(lattice: &Lattice) -> CondUrcCheck {
    for iv in intervals(lattice) {
        let sets = complementary_sets(lattice, iv);
        if sets.len() > 1 {
            return CondUrcCheck { holds: false, witness: Some((iv, sets[0], sets[1])) };
        }
    }
    CondUrcCheck { holds: true, witness: None }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct UrcCheck {
    pub holds: bool,
    /// A non-chain interval whose complementary-set count is not one.
    pub witness: Option<Interval>,
}

/// Every interval is a chain or has exactly one complementary set.
pub fn is_urc(lattice: &Lattice) -> UrcCheck {
    for iv in intervals(lattice) {
        if complementary_sets(lattice, iv).len() != 1 && !interval_is_chain(lattice, iv) {
            return UrcCheck { holds: false, witness: Some(iv) };
        }
    }
    UrcCheck { holds: true, witness: None }
}
