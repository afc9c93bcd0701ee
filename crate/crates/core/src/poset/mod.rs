//! Finite posets given by cover relations, their downsets, and two-chain covers.
//!
//! Elements are addressed by their position in the input label list. That
//! position fixes every downstream tie-break (variable orders, report order).
//! Posets are capped at 64 elements so that a downset fits in one `u64`.

mod cover;

use std::collections::HashMap;
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

pub use cover::{
    all_two_chain_covers, canonical_two_chain_cover, two_chain_cover, two_chain_cover_inductive,
    two_chain_cover_matching, ChainCover,
};

/// Hard ceiling imposed by the `u64` downset encoding.
pub const MAX_ELEMENTS: usize = 64;

/// A poset ideal, stored as a characteristic bit vector over the element list.
#[derive(Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Default, Serialize, Deserialize)]
pub struct DownSet(u64);

impl DownSet {
    pub const EMPTY: DownSet = DownSet(0);

    pub fn from_bits(bits: u64) -> Self {
        DownSet(bits)
    }

    pub fn bits(self) -> u64 {
        self.0
    }

    pub fn contains(self, element: usize) -> bool {
        self.0 >> element & 1 == 1
    }

    pub fn len(self) -> usize {
        self.0.count_ones() as usize
    }

    pub fn is_empty(self) -> bool {
        self.0 == 0
    }

    pub fn union(self, other: DownSet) -> DownSet {
        DownSet(self.0 | other.0)
    }

    pub fn intersection(self, other: DownSet) -> DownSet {
        DownSet(self.0 & other.0)
    }

    pub fn difference(self, other: DownSet) -> DownSet {
        DownSet(self.0 & !other.0)
    }

    pub fn is_subset(self, other: DownSet) -> bool {
        self.0 & !other.0 == 0
    }

    pub fn with(self, element: usize) -> DownSet {
        DownSet(self.0 | 1 << element)
    }

    pub fn without(self, element: usize) -> DownSet {
        DownSet(self.0 & !(1 << element))
    }

    pub fn iter(self) -> impl Iterator<Item = usize> {
        let mut rest = self.0;
        std::iter::from_fn(move || {
            if rest == 0 {
                None
            } else {
                let i = rest.trailing_zeros() as usize;
                rest &= rest - 1;
                Some(i)
            }
        })
    }

    /// Character `i` is `1` iff element `i` belongs to the set.
    pub fn to_bit_string(self, width: usize) -> String {
        (0..width).map(|i| if self.contains(i) { '1' } else { '0' }).collect()
    }

    /// Canonical sort key: cardinality first, then bit-vector value.
    pub fn sort_key(self) -> (usize, u64) {
        (self.len(), self.0)
    }
}

impl fmt::Debug for DownSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "DownSet({:#b})", self.0)
    }
}

/// Size limits for downset enumeration.
#[derive(Debug, Clone, Copy)]
pub struct Bounds {
    pub max_poset_size: usize,
    pub max_down_sets: usize,
}

impl Default for Bounds {
    fn default() -> Self {
        Bounds { max_poset_size: 20, max_down_sets: 1 << 16 }
    }
}

/// On-disk poset format: `{"elements":["p1","p2"],"covers":[["p1","p2"]]}`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct PosetJson {
    pub elements: Vec<String>,
    #[serde(default)]
    pub covers: Vec<[String; 2]>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Poset {
    labels: Vec<String>,
    covers: Vec<(usize, usize)>,
    // below[i] has bit j set iff j <= i; above is the transpose.
    below: Vec<u64>,
    above: Vec<u64>,
    redundant_covers: Vec<(usize, usize)>,
}

impl Poset {
    /// Validates labels and cover pairs and computes the order relation.
    ///
    /// Cover pairs implied by others are dropped and reported through
    /// [`Poset::redundant_covers`] instead of failing the build.
    pub fn build<S: AsRef<str>>(elements: &[S], covers: &[(S, S)]) -> Result<Poset> {
        let n = elements.len();
        if n > MAX_ELEMENTS {
            return Err(Error::SizeExceeded { what: "poset size", limit: MAX_ELEMENTS });
        }
        let mut index = HashMap::with_capacity(n);
        for (i, label) in elements.iter().enumerate() {
            if index.insert(label.as_ref().to_string(), i).is_some() {
                return Err(Error::DuplicateLabel(label.as_ref().to_string()));
            }
        }
        let lookup = |s: &S| {
            index.get(s.as_ref()).copied().ok_or_else(|| Error::UnknownLabel(s.as_ref().to_string()))
        };
        let mut succ = vec![0u64; n];
        let mut pairs = Vec::with_capacity(covers.len());
        for (lo, hi) in covers {
            let (lo, hi) = (lookup(lo)?, lookup(hi)?);
            if lo == hi {
                return Err(Error::CycleDetected(vec![elements[lo].as_ref().to_string()]));
            }
            pairs.push((lo, hi));
            succ[lo] |= 1 << hi;
        }

        // Kahn's algorithm; whatever is left over sits on or above a cycle.
        let mut indegree = vec![0usize; n];
        for s in &succ {
            for j in DownSet(*s).iter() {
                indegree[j] += 1;
            }
        }
        let mut queue: Vec<usize> = (0..n).filter(|&i| indegree[i] == 0).collect();
        let mut topo = Vec::with_capacity(n);
        while let Some(i) = queue.pop() {
            topo.push(i);
            for j in DownSet(succ[i]).iter() {
                indegree[j] -= 1;
                if indegree[j] == 0 {
                    queue.push(j);
                }
            }
        }
        if topo.len() < n {
            let stuck = (0..n)
                .filter(|&i| indegree[i] > 0)
                .map(|i| elements[i].as_ref().to_string())
                .collect();
            return Err(Error::CycleDetected(stuck));
        }

        let mut strict_above = vec![0u64; n];
        for &i in topo.iter().rev() {
            for j in DownSet(succ[i]).iter() {
                strict_above[i] |= 1 << j | strict_above[j];
            }
        }

        let mut kept = Vec::new();
        let mut redundant = Vec::new();
        let mut seen_pairs = std::collections::HashSet::new();
        for &(lo, hi) in &pairs {
            if !seen_pairs.insert((lo, hi)) {
                redundant.push((lo, hi));
                continue;
            }
            let implied = DownSet(succ[lo] & !(1 << hi)).iter().any(|k| strict_above[k] >> hi & 1 == 1);
            if implied {
                redundant.push((lo, hi));
            } else {
                kept.push((lo, hi));
            }
        }

        let above: Vec<u64> = (0..n).map(|i| strict_above[i] | 1 << i).collect();
        let below = transpose(&above);
        Ok(Poset {
            labels: elements.iter().map(|s| s.as_ref().to_string()).collect(),
            covers: kept,
            below,
            above,
            redundant_covers: redundant,
        })
    }

    /// Builds a poset from a reflexive order relation given as `below` masks.
    /// The relation is trusted to be a partial order; labels are `p1..pn`.
    pub fn from_below_masks(below: Vec<u64>) -> Poset {
        let labels = (1..=below.len()).map(|i| format!("p{i}")).collect();
        Self::from_below_masks_labeled(labels, below)
    }

    pub fn from_below_masks_labeled(labels: Vec<String>, below: Vec<u64>) -> Poset {
        let n = below.len();
        let above = transpose(&below);
        let mut covers = Vec::new();
        for hi in 0..n {
            let strict = below[hi] & !(1 << hi);
            for lo in DownSet(strict).iter() {
                // lo is covered by hi iff nothing strictly between them.
                let between = strict & above[lo] & !(1 << lo);
                if between == 0 {
                    covers.push((lo, hi));
                }
            }
        }
        covers.sort_unstable();
        Poset { labels, covers, below, above, redundant_covers: Vec::new() }
    }

    pub fn from_json(json: &PosetJson) -> Result<Poset> {
        let covers: Vec<(&str, &str)> =
            json.covers.iter().map(|[a, b]| (a.as_str(), b.as_str())).collect();
        let elements: Vec<&str> = json.elements.iter().map(String::as_str).collect();
        Poset::build(&elements, &covers)
    }

    pub fn from_json_str(s: &str) -> Result<Poset> {
        Self::from_json(&serde_json::from_str(s)?)
    }

    pub fn to_json(&self) -> PosetJson {
        PosetJson {
            elements: self.labels.clone(),
            covers: self
                .covers
                .iter()
                .map(|&(a, b)| [self.labels[a].clone(), self.labels[b].clone()])
                .collect(),
        }
    }

    pub fn len(&self) -> usize {
        self.labels.len()
    }

    pub fn is_empty(&self) -> bool {
        self.labels.is_empty()
    }

    pub fn labels(&self) -> &[String] {
        &self.labels
    }

    pub fn label(&self, i: usize) -> &str {
        &self.labels[i]
    }

    pub fn index_of(&self, label: &str) -> Option<usize> {
        self.labels.iter().position(|l| l == label)
    }

    pub fn covers(&self) -> &[(usize, usize)] {
        &self.covers
    }

    pub fn redundant_covers(&self) -> &[(usize, usize)] {
        &self.redundant_covers
    }

    pub fn leq(&self, a: usize, b: usize) -> bool {
        self.below[b] >> a & 1 == 1
    }

    pub fn lt(&self, a: usize, b: usize) -> bool {
        a != b && self.leq(a, b)
    }

    pub fn comparable(&self, a: usize, b: usize) -> bool {
        self.leq(a, b) || self.leq(b, a)
    }

    /// The principal downset of `i`.
    pub fn principal(&self, i: usize) -> DownSet {
        DownSet(self.below[i])
    }

    pub fn below_masks(&self) -> &[u64] {
        &self.below
    }

    pub fn full(&self) -> DownSet {
        DownSet(if self.len() == 64 { u64::MAX } else { (1u64 << self.len()) - 1 })
    }

    pub fn is_down_set(&self, set: DownSet) -> bool {
        set.iter().all(|i| DownSet(self.below[i]).is_subset(set))
    }

    pub fn generated(&self, generators: impl IntoIterator<Item = usize>) -> DownSet {
        generators.into_iter().fold(DownSet::EMPTY, |acc, g| acc.union(self.principal(g)))
    }

    pub fn is_chain(&self, elements: &[usize]) -> bool {
        elements
            .iter()
            .enumerate()
            .all(|(k, &a)| elements[k + 1..].iter().all(|&b| self.comparable(a, b)))
    }

    /// Linear extension that always takes the smallest available input index.
    pub fn linear_extension(&self) -> Vec<usize> {
        let n = self.len();
        let mut placed = 0u64;
        let mut out = Vec::with_capacity(n);
        while out.len() < n {
            let next = (0..n)
                .find(|&i| placed >> i & 1 == 0 && DownSet(self.below[i] & !(1 << i)).is_subset(DownSet(placed)))
                .expect("acyclic order always has a minimal remaining element");
            placed |= 1 << next;
            out.push(next);
        }
        out
    }

    /// All downsets, sorted by (cardinality, bit-vector value).
    pub fn enumerate_down_sets(&self, bounds: &Bounds) -> Result<Vec<DownSet>> {
        if self.len() > bounds.max_poset_size {
            return Err(Error::SizeExceeded { what: "poset size", limit: bounds.max_poset_size });
        }
        let order = self.linear_extension();
        let mut out = Vec::new();
        // Decide elements along a linear extension; including one requires its
        // strict down-set to be present already, so each downset appears once.
        let mut stack = vec![(0usize, 0u64)];
        while let Some((k, set)) = stack.pop() {
            if k == order.len() {
                if out.len() == bounds.max_down_sets {
                    return Err(Error::SizeExceeded { what: "downset count", limit: bounds.max_down_sets });
                }
                out.push(DownSet(set));
                continue;
            }
            let p = order[k];
            stack.push((k + 1, set));
            if DownSet(self.below[p] & !(1 << p)).is_subset(DownSet(set)) {
                stack.push((k + 1, set | 1 << p));
            }
        }
        out.sort_unstable_by_key(|d| d.sort_key());
        Ok(out)
    }

    /// Maximal elements of a downset; they generate it and form an antichain.
    pub fn minimal_generators(&self, a: DownSet) -> Vec<usize> {
        a.iter()
            .filter(|&p| a.iter().all(|q| q == p || !self.leq(p, q)))
            .collect()
    }

    /// Checks for a 3-element antichain; returns the first one found.
    pub fn width_le_two(&self) -> WidthCheck {
        let n = self.len();
        for a in 0..n {
            for b in a + 1..n {
                if self.comparable(a, b) {
                    continue;
                }
                for c in b + 1..n {
                    if !self.comparable(a, c) && !self.comparable(b, c) {
                        return WidthCheck { holds: false, witness: Some([a, b, c]) };
                    }
                }
            }
        }
        WidthCheck { holds: true, witness: None }
    }

    /// Induced subposet on `elements` (kept in the given order).
    pub fn induced(&self, elements: &[usize]) -> Poset {
        let below = elements
            .iter()
            .map(|&hi| {
                elements
                    .iter()
                    .enumerate()
                    .filter(|&(_, &lo)| self.leq(lo, hi))
                    .fold(0u64, |acc, (k, _)| acc | 1 << k)
            })
            .collect();
        let labels = elements.iter().map(|&i| self.labels[i].clone()).collect();
        Poset::from_below_masks_labeled(labels, below)
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct WidthCheck {
    pub holds: bool,
    pub witness: Option<[usize; 3]>,
}

pub(crate) fn transpose(rows: &[u64]) -> Vec<u64> {
    let n = rows.len();
    let mut out = vec![0u64; n];
    for (i, &row) in rows.iter().enumerate() {
        for j in DownSet(row).iter() {
            out[j] |= 1 << i;
        }
    }
    out
}
