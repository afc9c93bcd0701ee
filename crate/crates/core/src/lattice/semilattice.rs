//! Meet-semilattices (joins may be missing), meet-distributivity, and the
//! associated distributive lattice.

use serde::Serialize;

use super::{check_partial_order, cover_lists, extremal_bound, longest_chain_ranks, Lattice};
use crate::error::{Error, Result};
use crate::poset::{Bounds, DownSet, Poset};

#[derive(Debug, Clone)]
pub struct MeetSemilattice {
    size: usize,
    leq: Vec<bool>,
    meet: Vec<usize>,
    join: Vec<Option<usize>>,
    rank: Vec<usize>,
    degree: Vec<usize>,
    lower: Vec<Vec<usize>>,
    bottom: usize,
    join_irreducibles: Vec<usize>,
    labels: Vec<String>,
}

impl MeetSemilattice {
    pub fn from_leq(leq: &[Vec<bool>]) -> Result<MeetSemilattice> {
        let labels = (0..leq.len()).map(|i| i.to_string()).collect();
        Self::from_leq_labeled(leq, labels)
    }

    pub fn from_leq_labeled(leq: &[Vec<bool>], labels: Vec<String>) -> Result<MeetSemilattice> {
        let n = leq.len();
        if n == 0 || leq.iter().any(|r| r.len() != n) {
            return Err(Error::NotAPartialOrder("order matrix must be square and nonempty".into()));
        }
        let flat: Vec<bool> = leq.iter().flatten().copied().collect();
        check_partial_order(n, &flat)?;
        let at = |a: usize, b: usize| flat[a * n + b];
        let mut meet = vec![0; n * n];
        let mut join = vec![None; n * n];
        for a in 0..n {
            for b in 0..n {
                meet[a * n + b] = extremal_bound(n, |c| at(c, a) && at(c, b), |x, y| at(x, y))
                    .ok_or(Error::NotAMeetSemilattice { a, b })?;
                join[a * n + b] = extremal_bound(n, |c| at(a, c) && at(b, c), |x, y| at(y, x));
            }
        }
        let bottom = (0..n).find(|&b| (0..n).all(|x| at(b, x))).expect("meets exist, so a bottom exists");
        let (lower, _) = cover_lists(n, &at);
        let rank = longest_chain_ranks(n, &lower);
        let join_irreducibles: Vec<usize> = (0..n).filter(|&a| lower[a].len() == 1).collect();
        let degree = (0..n).map(|l| join_irreducibles.iter().filter(|&&p| at(p, l)).count()).collect();
        Ok(MeetSemilattice { size: n, leq: flat, meet, join, rank, degree, lower, bottom, join_irreducibles, labels })
    }

    /// The induced order on a subset of a lattice. Join-irreducibles that are
    /// principal downsets keep the label of their generator.
    pub fn from_lattice_subset(lattice: &Lattice, elements: &[usize]) -> Result<MeetSemilattice> {
        let leq: Vec<Vec<bool>> =
            elements.iter().map(|&a| elements.iter().map(|&b| lattice.leq(a, b)).collect()).collect();
        let labels = elements
            .iter()
            .map(|&a| match lattice.origin() {
                Some(o) => match o.poset.minimal_generators(o.down_sets[a]).as_slice() {
                    [g] => o.poset.label(*g).to_string(),
                    _ => lattice.element_name(a),
                },
                None => a.to_string(),
            })
            .collect();
        Self::from_leq_labeled(&leq, labels)
    }

    pub fn size(&self) -> usize {
        self.size
    }

    pub fn leq(&self, a: usize, b: usize) -> bool {
        self.leq[a * self.size + b]
    }

    pub fn meet(&self, a: usize, b: usize) -> usize {
        self.meet[a * self.size + b]
    }

    pub fn join(&self, a: usize, b: usize) -> Option<usize> {
        self.join[a * self.size + b]
    }

    pub fn rank(&self, a: usize) -> usize {
        self.rank[a]
    }

    /// Number of join-irreducibles below `a`.
    pub fn degree(&self, a: usize) -> usize {
        self.degree[a]
    }

    pub fn bottom(&self) -> usize {
        self.bottom
    }

    pub fn join_irreducibles(&self) -> &[usize] {
        &self.join_irreducibles
    }

    pub fn label(&self, a: usize) -> &str {
        &self.labels[a]
    }

    /// Least upper bound of `set` among elements below `ceiling`.
    fn sup_below(&self, set: &[usize], ceiling: usize) -> usize {
        (0..self.size)
            .filter(|&c| self.leq(c, ceiling) && set.iter().all(|&s| self.leq(s, c)))
            .fold(ceiling, |acc, c| self.meet(acc, c))
    }

    /// Evaluates the three characterisations separately: Boolean lower
    /// intervals, gradedness with degree equal to rank, and unique minimal
    /// join-irreducible decompositions. They must agree.
    pub fn is_meet_distributive(&self) -> Result<MeetDistributivity> {
        let boolean = self.boolean_interval_violation();
        let graded = self.graded_degree_violation();
        let unique = self.decomposition_violation();
        let report = MeetDistributivity {
            boolean_intervals: boolean.is_none(),
            graded_degree_equals_rank: graded.is_none(),
            unique_minimal_joins: unique.is_none(),
            boolean_witness: boolean,
            graded_witness: graded,
            decomposition_witness: unique,
        };
        if report.boolean_intervals != report.graded_degree_equals_rank
            || report.boolean_intervals != report.unique_minimal_joins
        {
            return Err(Error::ConditionsDisagree(format!("{report:?}")));
        }
        Ok(report)
    }

    // Some y whose interval [meet of lower neighbors, y] is not Boolean.
    fn boolean_interval_violation(&self) -> Option<usize> {
        (0..self.size).find(|&y| {
            let lower = &self.lower[y];
            if lower.is_empty() {
                return false;
            }
            let x = lower.iter().fold(lower[0], |acc, &l| self.meet(acc, l));
            let members: Vec<usize> = (0..self.size).filter(|&c| self.leq(x, c) && self.leq(c, y)).collect();
            let atoms: Vec<usize> =
                members.iter().copied().filter(|&c| c != x && self.lower[c].contains(&x)).collect();
            let k = atoms.len();
            if k >= usize::BITS as usize || members.len() != 1 << k {
                return true;
            }
            let joins: Vec<usize> = (0..1u64 << k)
                .map(|mask| {
                    let subset: Vec<usize> = DownSet::from_bits(mask).iter().map(|i| atoms[i]).collect();
                    self.sup_below(&subset, y)
                })
                .collect();
            let mut distinct = joins.clone();
            distinct.sort_unstable();
            distinct.dedup();
            if distinct.len() != joins.len() {
                return true;
            }
            (0..1u64 << k).any(|s| {
                (0..1u64 << k).any(|t| (s & !t == 0) != self.leq(joins[s as usize], joins[t as usize]))
            })
        })
    }

    // Some cover that skips a rank level, or some element with deg != rank.
    fn graded_degree_violation(&self) -> Option<usize> {
        (0..self.size).find(|&b| {
            self.lower[b].iter().any(|&a| self.rank[b] != self.rank[a] + 1) || self.degree[b] != self.rank[b]
        })
    }

    // Some element with zero or several minimal join-irreducible decompositions.
    fn decomposition_violation(&self) -> Option<usize> {
        (0..self.size).find(|&l| {
            let below: Vec<usize> = self.join_irreducibles.iter().copied().filter(|&p| self.leq(p, l)).collect();
            if below.len() >= 20 {
                return true;
            }
            let hits: Vec<u64> = (0..1u64 << below.len())
                .filter(|&mask| {
                    let subset: Vec<usize> = DownSet::from_bits(mask).iter().map(|i| below[i]).collect();
                    self.sup_below(&subset, l) == l
                })
                .collect();
            let minimal = hits.iter().filter(|&&m| !hits.iter().any(|&o| o != m && o & !m == 0)).count();
            minimal != 1
        })
    }

    /// The poset of join-irreducibles, in ascending id order.
    pub fn join_irreducible_poset(&self) -> Poset {
        let ids = &self.join_irreducibles;
        let below = ids
            .iter()
            .map(|&hi| ids.iter().enumerate().filter(|&(_, &lo)| self.leq(lo, hi)).fold(0u64, |m, (k, _)| m | 1 << k))
            .collect();
        let labels = ids.iter().map(|&a| self.labels[a].clone()).collect();
        Poset::from_below_masks_labeled(labels, below)
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct MeetDistributivity {
    pub boolean_intervals: bool,
    pub graded_degree_equals_rank: bool,
    pub unique_minimal_joins: bool,
    pub boolean_witness: Option<usize>,
    pub graded_witness: Option<usize>,
    pub decomposition_witness: Option<usize>,
}

impl MeetDistributivity {
    pub fn verdict(&self) -> bool {
        self.boolean_intervals
    }
}

#[derive(Debug, Clone)]
pub struct AssociatedLattice {
    /// Ideal lattice of the join-irreducibles of the semilattice.
    pub lattice: Lattice,
    /// `embedding[l]` is the id in `lattice` of `{p ∈ P | p <= l}`.
    pub embedding: Vec<usize>,
    pub is_poset_ideal: bool,
}

impl AssociatedLattice {
    /// Image of the embedding as downsets of the join-irreducible poset.
    pub fn image_down_sets(&self) -> Vec<DownSet> {
        self.embedding.iter().map(|&i| self.lattice.down_set(i).expect("ideal lattice")).collect()
    }
}

pub fn associated_distributive_lattice(s: &MeetSemilattice) -> Result<AssociatedLattice> {
    if !s.is_meet_distributive()?.verdict() {
        return Err(Error::NotMeetDistributive);
    }
    let poset = s.join_irreducible_poset();
    let lattice = Lattice::ideal_lattice(&poset, &Bounds::default())?;
    let jis = s.join_irreducibles();
    let embedding: Vec<usize> = (0..s.size())
        .map(|l| {
            let set = jis.iter().enumerate().filter(|&(_, &p)| s.leq(p, l)).fold(0u64, |m, (k, _)| m | 1 << k);
            lattice.id_of(DownSet::from_bits(set)).expect("principal unions of join-irreducibles are downsets")
        })
        .collect();
    let mut sorted = embedding.clone();
    sorted.sort_unstable();
    sorted.dedup();
    if sorted.len() != embedding.len() {
        return Err(Error::Defect("canonical embedding is not injective".into()));
    }
    for a in 0..s.size() {
        for b in 0..s.size() {
            if embedding[s.meet(a, b)] != lattice.meet(embedding[a], embedding[b]) {
                return Err(Error::Defect(format!("embedding does not preserve the meet of {a} and {b}")));
            }
        }
    }
    let image = |x: usize| sorted.binary_search(&x).is_ok();
    let is_poset_ideal = sorted.iter().all(|&r| (0..lattice.size()).all(|x| !lattice.leq(x, r) || image(x)));
    Ok(AssociatedLattice { lattice, embedding, is_poset_ideal })
}
