//! Finite lattices with precomputed meet/join tables.
//!
//! Element ids are dense `0..size`. Lattices built from a poset keep the
//! poset and the downset behind every id; their ids follow the canonical
//! downset order (cardinality, then bit-vector value), so the bottom is 0 and
//! the top is `size - 1`.

mod complement;
mod iso;
mod semilattice;

use std::collections::HashMap;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::poset::{Bounds, DownSet, Poset};

pub use complement::{
    complement_in_interval, complementary_sets, interval_is_chain, is_complemented, is_conditionally_urc, is_urc,
    Complement, ComplementarySet, CondUrcCheck, UrcCheck,
};
pub use iso::{canonical_form, is_isomorphic, OrderMatrix};
pub use semilattice::{
    associated_distributive_lattice, AssociatedLattice, MeetDistributivity, MeetSemilattice,
};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub struct Interval {
    pub lo: usize,
    pub hi: usize,
}

impl Interval {
    pub fn new(lattice: &Lattice, lo: usize, hi: usize) -> Result<Interval> {
        if lo >= lattice.size() || hi >= lattice.size() || !lattice.leq(lo, hi) {
            return Err(Error::NotAPartialOrder(format!("[{lo},{hi}] is not an interval")));
        }
        Ok(Interval { lo, hi })
    }

    pub fn contains(&self, lattice: &Lattice, c: usize) -> bool {
        lattice.leq(self.lo, c) && lattice.leq(c, self.hi)
    }
}

/// The poset and downset table behind an ideal lattice.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct IdealOrigin {
    pub poset: Poset,
    pub down_sets: Vec<DownSet>,
}

#[derive(Debug, Clone)]
pub struct Lattice {
    size: usize,
    leq: Vec<bool>,
    meet: Vec<usize>,
    join: Vec<usize>,
    rank: Vec<usize>,
    bottom: usize,
    top: usize,
    lower: Vec<Vec<usize>>,
    upper: Vec<Vec<usize>>,
    origin: Option<IdealOrigin>,
}

/// On-disk lattice format: either a full order matrix or a cover list.
#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(untagged)]
pub enum LatticeJson {
    Matrix { size: usize, leq: Vec<Vec<bool>> },
    Covers {
        #[serde(default)]
        size: Option<usize>,
        covers: Vec<[usize; 2]>,
    },
}

impl Lattice {
    /// Builds a lattice from an order matrix, verifying the partial-order
    /// axioms and the existence of all pairwise meets and joins.
    pub fn from_leq(leq: &[Vec<bool>]) -> Result<Lattice> {
        let n = leq.len();
        if n == 0 {
            return Err(Error::NotAPartialOrder("empty element set".into()));
        }
        if let Some(row) = leq.iter().position(|r| r.len() != n) {
            return Err(Error::NotAPartialOrder(format!("row {row} has the wrong length")));
        }
        let flat: Vec<bool> = leq.iter().flatten().copied().collect();
        check_partial_order(n, &flat)?;
        let at = |a: usize, b: usize| flat[a * n + b];
        let mut meet = vec![0; n * n];
        let mut join = vec![0; n * n];
        for a in 0..n {
            for b in a..n {
                let m = extremal_bound(n, |c| at(c, a) && at(c, b), |x, y| at(x, y))
                    .ok_or(Error::NotALattice { a, b, missing: "meet" })?;
                let j = extremal_bound(n, |c| at(a, c) && at(b, c), |x, y| at(y, x))
                    .ok_or(Error::NotALattice { a, b, missing: "join" })?;
                meet[a * n + b] = m;
                meet[b * n + a] = m;
                join[a * n + b] = j;
                join[b * n + a] = j;
            }
        }
        Ok(Self::assemble(n, flat, meet, join, None))
    }

    /// Builds a lattice from cover pairs `[lower, upper]` on ids `0..size`.
    pub fn from_covers(size: usize, covers: &[[usize; 2]]) -> Result<Lattice> {
        Self::from_leq(&closure_from_covers(size, covers)?)
    }

    pub fn from_json(json: &LatticeJson) -> Result<Lattice> {
        match json {
            LatticeJson::Matrix { size, leq } => {
                if leq.len() != *size {
                    return Err(Error::NotAPartialOrder(format!("size {size} but {} rows", leq.len())));
                }
                Self::from_leq(leq)
            }
            LatticeJson::Covers { size, covers } => {
                let n = size.unwrap_or_else(|| covers.iter().flatten().max().map_or(1, |m| m + 1));
                Self::from_covers(n, covers)
            }
        }
    }

    pub fn from_json_str(s: &str) -> Result<Lattice> {
        Self::from_json(&serde_json::from_str(s)?)
    }

    /// The ideal lattice of `poset`: all downsets, meet = ∩, join = ∪.
    pub fn ideal_lattice(poset: &Poset, bounds: &Bounds) -> Result<Lattice> {
        let down_sets = poset.enumerate_down_sets(bounds)?;
        let n = down_sets.len();
        let index: HashMap<DownSet, usize> = down_sets.iter().enumerate().map(|(i, &d)| (d, i)).collect();
        let mut leq = vec![false; n * n];
        let mut meet = vec![0; n * n];
        let mut join = vec![0; n * n];
        for (a, &da) in down_sets.iter().enumerate() {
            for (b, &db) in down_sets.iter().enumerate() {
                leq[a * n + b] = da.is_subset(db);
                meet[a * n + b] = index[&da.intersection(db)];
                join[a * n + b] = index[&da.union(db)];
            }
        }
        let lattice = Self::assemble(
            n,
            leq,
            meet,
            join,
            Some(IdealOrigin { poset: poset.clone(), down_sets: down_sets.clone() }),
        );
        debug_assert!((0..n).all(|a| lattice.rank(a) == down_sets[a].len()));
        Ok(lattice)
    }

    fn assemble(
        n: usize,
        leq: Vec<bool>,
        meet: Vec<usize>,
        join: Vec<usize>,
        origin: Option<IdealOrigin>,
    ) -> Lattice {
        let at = |a: usize, b: usize| leq[a * n + b];
        let bottom = (0..n).find(|&b| (0..n).all(|x| at(b, x))).expect("lattices have a bottom");
        let top = (0..n).find(|&t| (0..n).all(|x| at(x, t))).expect("lattices have a top");
        let (lower, upper) = cover_lists(n, &at);
        let rank = longest_chain_ranks(n, &lower);
        Lattice { size: n, leq, meet, join, rank, bottom, top, lower, upper, origin }
    }

    pub fn size(&self) -> usize {
        self.size
    }

    pub fn leq(&self, a: usize, b: usize) -> bool {
        self.leq[a * self.size + b]
    }

    pub fn lt(&self, a: usize, b: usize) -> bool {
        a != b && self.leq(a, b)
    }

    pub fn comparable(&self, a: usize, b: usize) -> bool {
        self.leq(a, b) || self.leq(b, a)
    }

    pub fn meet(&self, a: usize, b: usize) -> usize {
        self.meet[a * self.size + b]
    }

    pub fn join(&self, a: usize, b: usize) -> usize {
        self.join[a * self.size + b]
    }

    /// Length of the longest chain from the bottom to `a`.
    pub fn rank(&self, a: usize) -> usize {
        self.rank[a]
    }

    pub fn bottom(&self) -> usize {
        self.bottom
    }

    pub fn top(&self) -> usize {
        self.top
    }

    pub fn lower_covers(&self, a: usize) -> &[usize] {
        &self.lower[a]
    }

    pub fn upper_covers(&self, a: usize) -> &[usize] {
        &self.upper[a]
    }

    pub fn origin(&self) -> Option<&IdealOrigin> {
        self.origin.as_ref()
    }

    pub fn down_set(&self, a: usize) -> Option<DownSet> {
        self.origin.as_ref().map(|o| o.down_sets[a])
    }

    /// Id of a downset in an ideal lattice.
    pub fn id_of(&self, d: DownSet) -> Option<usize> {
        self.origin.as_ref()?.down_sets.iter().position(|&x| x == d)
    }

    /// Name used in reports: the downset bit-string when available, else the id.
    pub fn element_name(&self, a: usize) -> String {
        match &self.origin {
            Some(o) => o.down_sets[a].to_bit_string(o.poset.len()),
            None => a.to_string(),
        }
    }

    pub fn leq_matrix(&self) -> Vec<Vec<bool>> {
        (0..self.size).map(|a| (0..self.size).map(|b| self.leq(a, b)).collect()).collect()
    }

    pub fn cover_pairs(&self) -> Vec<(usize, usize)> {
        (0..self.size).flat_map(|a| self.upper[a].iter().map(move |&b| (a, b))).collect()
    }

    pub fn is_chain(&self) -> bool {
        (0..self.size).all(|a| (0..self.size).all(|b| self.comparable(a, b)))
    }

    pub fn incomparable_pairs(&self) -> Vec<(usize, usize)> {
        let n = self.size;
        (0..n).flat_map(|a| (a + 1..n).map(move |b| (a, b))).filter(|&(a, b)| !self.comparable(a, b)).collect()
    }

    /// Elements with exactly one lower neighbor, ascending.
    pub fn join_irreducible_ids(&self) -> Vec<usize> {
        (0..self.size).filter(|&a| self.lower[a].len() == 1).collect()
    }

    /// The induced subposet of join-irreducible elements. For ideal lattices
    /// each one is a principal downset and takes the label of its generator;
    /// otherwise labels are the element ids.
    pub fn join_irreducibles(&self) -> Poset {
        let ids = self.join_irreducible_ids();
        let labels = ids
            .iter()
            .map(|&a| match &self.origin {
                Some(o) => {
                    let gens = o.poset.minimal_generators(o.down_sets[a]);
                    debug_assert_eq!(gens.len(), 1);
                    o.poset.label(gens[0]).to_string()
                }
                None => a.to_string(),
            })
            .collect();
        let below = ids
            .iter()
            .map(|&hi| ids.iter().enumerate().filter(|&(_, &lo)| self.leq(lo, hi)).fold(0u64, |m, (k, _)| m | 1 << k))
            .collect();
        Poset::from_below_masks_labeled(labels, below)
    }

    /// Maps every element to the set of join-irreducibles below it, indexed
    /// by position in [`Lattice::join_irreducible_ids`].
    pub fn birkhoff_sets(&self) -> Vec<DownSet> {
        let ids = self.join_irreducible_ids();
        (0..self.size)
            .map(|a| {
                DownSet::from_bits(
                    ids.iter().enumerate().filter(|&(_, &j)| self.leq(j, a)).fold(0u64, |m, (k, _)| m | 1 << k),
                )
            })
            .collect()
    }

    /// Runs the distributive law over all triples and, independently, the
    /// search for an M3 or N5 sublattice. The two verdicts must agree.
    pub fn is_distributive(&self) -> Result<Distributivity> {
        let law_witness = self.distributive_law_violation();
        let sublattice_witness = self.forbidden_sublattice();
        if law_witness.is_some() != sublattice_witness.is_some() {
            return Err(Error::InternalDisagreement(format!(
                "law witness {law_witness:?}, sublattice witness {sublattice_witness:?}"
            )));
        }
        Ok(Distributivity { distributive: law_witness.is_none(), law_witness, sublattice_witness })
    }

    pub fn distributive_law_violation(&self) -> Option<[usize; 3]> {
        let n = self.size;
        for a in 0..n {
            for b in 0..n {
                for c in b + 1..n {
                    let lhs = self.meet(a, self.join(b, c));
                    let rhs = self.join(self.meet(a, b), self.meet(a, c));
                    if lhs != rhs {
                        return Some([a, b, c]);
                    }
                }
            }
        }
        None
    }

    /// Five-element subsets closed under meet and join that are isomorphic
    /// to M3 or N5. Such a subset is determined by its three middle elements.
    pub fn forbidden_sublattice(&self) -> Option<ForbiddenSublattice> {
        let n = self.size;
        for x in 0..n {
            for y in 0..n {
                if x == y || self.comparable(x, y) && !self.lt(x, y) {
                    continue;
                }
                for z in 0..n {
                    if z == x || z == y || self.comparable(x, z) || self.comparable(y, z) {
                        continue;
                    }
                    let bottom = self.meet(x, z);
                    let top = self.join(x, z);
                    if self.meet(y, z) != bottom || self.join(y, z) != top {
                        continue;
                    }
                    if self.lt(x, y) {
                        // N5: x < y, z beside both.
                        return Some(ForbiddenSublattice { kind: ForbiddenKind::N5, elements: [bottom, x, y, z, top] });
                    }
                    if x < y && y < z && self.meet(x, y) == bottom && self.join(x, y) == top {
                        return Some(ForbiddenSublattice { kind: ForbiddenKind::M3, elements: [bottom, x, y, z, top] });
                    }
                }
            }
        }
        None
    }

    pub fn neighbor_bounds(&self) -> NeighborBounds {
        let (lower_witness, max_lower) = (0..self.size)
            .map(|a| (a, self.lower[a].len()))
            .fold((self.bottom, 0), |best, cur| if cur.1 > best.1 { cur } else { best });
        let (upper_witness, max_upper) = (0..self.size)
            .map(|a| (a, self.upper[a].len()))
            .fold((self.top, 0), |best, cur| if cur.1 > best.1 { cur } else { best });
        NeighborBounds { max_lower, max_upper, lower_witness, upper_witness }
    }

    /// Sublattice on an explicit element list (assumed closed under meet and join).
    pub fn restrict(&self, elements: &[usize]) -> Result<Lattice> {
        let leq: Vec<Vec<bool>> =
            elements.iter().map(|&a| elements.iter().map(|&b| self.leq(a, b)).collect()).collect();
        Lattice::from_leq(&leq)
    }
}

impl OrderMatrix for Lattice {
    fn order_size(&self) -> usize {
        self.size
    }
    fn order_leq(&self, a: usize, b: usize) -> bool {
        self.leq(a, b)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum ForbiddenKind {
    M3,
    N5,
}

/// Elements are listed bottom, the three middle elements, top. For N5 the
/// second and third entries are the two-element side.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ForbiddenSublattice {
    pub kind: ForbiddenKind,
    pub elements: [usize; 5],
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Distributivity {
    pub distributive: bool,
    pub law_witness: Option<[usize; 3]>,
    pub sublattice_witness: Option<ForbiddenSublattice>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct NeighborBounds {
    pub max_lower: usize,
    pub max_upper: usize,
    pub lower_witness: usize,
    pub upper_witness: usize,
}

pub(crate) fn check_partial_order(n: usize, leq: &[bool]) -> Result<()> {
    let at = |a: usize, b: usize| leq[a * n + b];
    for a in 0..n {
        if !at(a, a) {
            return Err(Error::NotAPartialOrder(format!("{a} <= {a} fails")));
        }
        for b in 0..n {
            if a != b && at(a, b) && at(b, a) {
                return Err(Error::NotAPartialOrder(format!("{a} and {b} are mutually below")));
            }
            if at(a, b) {
                if let Some(c) = (0..n).find(|&c| at(b, c) && !at(a, c)) {
                    return Err(Error::NotAPartialOrder(format!("{a} <= {b} <= {c} but not {a} <= {c}")));
                }
            }
        }
    }
    Ok(())
}

// The bound that sits above (w.r.t. `above`) every candidate, if any.
pub(crate) fn extremal_bound(n: usize, candidate: impl Fn(usize) -> bool, above: impl Fn(usize, usize) -> bool) -> Option<usize> {
    let mut best: Option<usize> = None;
    for c in (0..n).filter(|&c| candidate(c)) {
        if best.is_none_or(|b| above(b, c)) {
            best = Some(c);
        }
    }
    let best = best?;
    (0..n).filter(|&c| candidate(c)).all(|c| above(c, best)).then_some(best)
}

pub(crate) fn cover_lists(n: usize, at: &dyn Fn(usize, usize) -> bool) -> (Vec<Vec<usize>>, Vec<Vec<usize>>) {
    let mut lower = vec![Vec::new(); n];
    let mut upper = vec![Vec::new(); n];
    for a in 0..n {
        for b in 0..n {
            if a != b && at(a, b) && !(0..n).any(|c| c != a && c != b && at(a, c) && at(c, b)) {
                lower[b].push(a);
                upper[a].push(b);
            }
        }
    }
    (lower, upper)
}

pub(crate) fn longest_chain_ranks(n: usize, lower: &[Vec<usize>]) -> Vec<usize> {
    let mut rank: Vec<Option<usize>> = vec![None; n];
    fn visit(a: usize, lower: &[Vec<usize>], rank: &mut [Option<usize>]) -> usize {
        if let Some(r) = rank[a] {
            return r;
        }
        let r = lower[a].iter().map(|&b| visit(b, lower, rank) + 1).max().unwrap_or(0);
        rank[a] = Some(r);
        r
    }
    (0..n).map(|a| visit(a, lower, &mut rank)).collect()
}

pub(crate) fn closure_from_covers(size: usize, covers: &[[usize; 2]]) -> Result<Vec<Vec<bool>>> {
    let mut leq = vec![vec![false; size]; size];
    for (a, row) in leq.iter_mut().enumerate() {
        row[a] = true;
    }
    for &[a, b] in covers {
        if a >= size || b >= size {
            return Err(Error::NotAPartialOrder(format!("cover [{a},{b}] out of range")));
        }
        leq[a][b] = true;
    }
    for k in 0..size {
        for i in 0..size {
            if leq[i][k] {
                for j in 0..size {
                    if leq[k][j] {
                        leq[i][j] = true;
                    }
                }
            }
        }
    }
    Ok(leq)
}

/// Frequently used small lattices.
pub mod examples {
    use super::Lattice;

    pub fn chain(n: usize) -> Lattice {
        let covers: Vec<[usize; 2]> = (1..n).map(|i| [i - 1, i]).collect();
        Lattice::from_covers(n, &covers).unwrap()
    }

    /// 0 bottom, 1 and 2 atoms, 3 top.
    pub fn diamond() -> Lattice {
        Lattice::from_covers(4, &[[0, 1], [0, 2], [1, 3], [2, 3]]).unwrap()
    }

    /// 0 = e bottom, 1,2,3 = b,c,d atoms, 4 = a top.
    pub fn m3() -> Lattice {
        Lattice::from_covers(5, &[[0, 1], [0, 2], [0, 3], [1, 4], [2, 4], [3, 4]]).unwrap()
    }

    /// a > b > c > e and a > d > e, with ids e=0, c=1, b=2, d=3, a=4.
    pub fn n5() -> Lattice {
        Lattice::from_covers(5, &[[0, 1], [1, 2], [2, 4], [0, 3], [3, 4]]).unwrap()
    }

    /// Product of chains [m]_0 x [n]_0; point (i, j) has id i * (n + 1) + j.
    pub fn grid(m: usize, n: usize) -> Lattice {
        let id = |i: usize, j: usize| i * (n + 1) + j;
        let mut covers = Vec::new();
        for i in 0..=m {
            for j in 0..=n {
                if i < m {
                    covers.push([id(i, j), id(i + 1, j)]);
                }
                if j < n {
                    covers.push([id(i, j), id(i, j + 1)]);
                }
            }
        }
        Lattice::from_covers((m + 1) * (n + 1), &covers).unwrap()
    }
}
