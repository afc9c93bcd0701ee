use serde::Serialize;

use super::{DownSet, Poset};
use crate::error::{Error, Result};

/// Two disjoint chains covering a poset. `chain_d` may be empty.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize)]
pub struct ChainCover {
    pub chain_c: Vec<usize>,
    pub chain_d: Vec<usize>,
}

impl ChainCover {
    /// Checks that both lists are chains, disjoint, and together cover `poset`.
    /// Lists are expected in increasing order.
    pub fn validate(&self, poset: &Poset) -> Result<()> {
        let mut seen = 0u64;
        for chain in [&self.chain_c, &self.chain_d] {
            for w in chain.windows(2) {
                if !poset.lt(w[0], w[1]) {
                    return Err(Error::NotACover(format!(
                        "{} < {} fails",
                        poset.label(w[0]),
                        poset.label(w[1])
                    )));
                }
            }
            for &x in chain.iter() {
                if x >= poset.len() {
                    return Err(Error::NotACover(format!("element index {x} out of range")));
                }
                if seen >> x & 1 == 1 {
                    return Err(Error::NotACover(format!("{} appears twice", poset.label(x))));
                }
                seen |= 1 << x;
            }
        }
        if DownSet::from_bits(seen) != poset.full() {
            return Err(Error::NotACover("chains miss some element".into()));
        }
        Ok(())
    }

    pub fn swapped(&self) -> ChainCover {
        ChainCover { chain_c: self.chain_d.clone(), chain_d: self.chain_c.clone() }
    }
}

/// The default two-chain cover: the inductive construction along a linear
/// extension. Callers that need an independent answer use
/// [`two_chain_cover_matching`].
pub fn two_chain_cover(poset: &Poset) -> Option<ChainCover> {
    two_chain_cover_inductive(poset)
}

/// Builds the cover one element at a time along the ideal chain
/// `∅ = a_0 ⊂ a_1 ⊂ … ⊂ a_s = P` (one new element per step).
///
/// The new element `p` is maximal in the current ideal. It extends whichever
/// chain has its top below `p`. Otherwise one chain `X = x_1 < … < x_k` is
/// split at `i`, the number of its elements below `p`: `x_{i+1}` must be
/// comparable with the top of the other chain `Y`, and the result is
/// `Y ∪ {x_{i+1}, …, x_k}` and `{x_1, …, x_i, p}`. Either chain may play
/// the role of `X`; when the merged `Y` is not a chain the other choice is
/// tried, backtracking over earlier steps if both fail.
///
/// Returns `None` when no sequence of steps succeeds, which happens exactly
/// when the poset has a 3-element antichain.
pub fn two_chain_cover_inductive(poset: &Poset) -> Option<ChainCover> {
    let order = poset.linear_extension();
    let cover = extend(poset, &order, Vec::new(), Vec::new())?;
    cover.validate(poset).ok().map(|_| cover)
}

fn extend(poset: &Poset, order: &[usize], c: Vec<usize>, d: Vec<usize>) -> Option<ChainCover> {
    let Some((&p, rest)) = order.split_first() else {
        return Some(ChainCover { chain_c: c, chain_d: d });
    };
    let q = c.last().copied();
    let r = d.last().copied();
    if q.is_none_or(|q| poset.lt(q, p)) {
        let mut c = c;
        c.push(p);
        return extend(poset, rest, c, d);
    }
    if r.is_none_or(|r| poset.lt(r, p)) {
        let mut d = d;
        d.push(p);
        return extend(poset, rest, c, d);
    }
    for split_c in [false, true] {
        let (mut x, mut y) = if split_c { (c.clone(), d.clone()) } else { (d.clone(), c.clone()) };
        let i = x.iter().filter(|&&e| poset.lt(e, p)).count();
        let top_y = *y.last().expect("both chains are nonempty here");
        if !poset.comparable(x[i], top_y) {
            continue;
        }
        let tail = x.split_off(i);
        x.push(p);
        y.extend(tail);
        y.sort_by_key(|&e| poset.principal(e).len());
        if !poset.is_chain(&y) {
            continue;
        }
        let (nc, nd) = if split_c { (x, y) } else { (y, x) };
        if let Some(cover) = extend(poset, rest, nc, nd) {
            return Some(cover);
        }
    }
    None
}

/// Minimum chain partition from a maximum matching in the comparability
/// bipartite graph (Fulkerson's reduction of Dilworth's theorem). Present
/// iff the partition has at most two chains.
pub fn two_chain_cover_matching(poset: &Poset) -> Option<ChainCover> {
    let n = poset.len();
    let adj: Vec<Vec<usize>> = (0..n).map(|i| (0..n).filter(|&j| poset.lt(i, j)).collect()).collect();
    let mut match_right: Vec<Option<usize>> = vec![None; n];
    let mut matched = 0;
    for left in 0..n {
        let mut visited = vec![false; n];
        if augment(left, &adj, &mut match_right, &mut visited) {
            matched += 1;
        }
    }
    if n - matched > 2 {
        return None;
    }
    let mut next: Vec<Option<usize>> = vec![None; n];
    for (right, left) in match_right.iter().enumerate() {
        if let Some(left) = left {
            next[*left] = Some(right);
        }
    }
    let mut chains: Vec<Vec<usize>> = (0..n)
        .filter(|&j| match_right[j].is_none())
        .map(|start| {
            let mut chain = vec![start];
            while let Some(s) = next[*chain.last().unwrap()] {
                chain.push(s);
            }
            chain
        })
        .collect();
    chains.sort_by_key(|ch| *ch.iter().min().unwrap());
    let mut it = chains.into_iter();
    let cover = ChainCover { chain_c: it.next().unwrap_or_default(), chain_d: it.next().unwrap_or_default() };
    debug_assert!(cover.validate(poset).is_ok());
    Some(cover)
}

fn augment(left: usize, adj: &[Vec<usize>], match_right: &mut [Option<usize>], visited: &mut [bool]) -> bool {
    for &right in &adj[left] {
        if visited[right] {
            continue;
        }
        visited[right] = true;
        let free = match match_right[right] {
            None => true,
            Some(other) => augment(other, adj, match_right, visited),
        };
        if free {
            match_right[right] = Some(left);
            return true;
        }
    }
    false
}

/// Lexicographically least cover: elements are assigned to C (0) or D (1)
/// in input order and the least assignment vector wins.
pub fn canonical_two_chain_cover(poset: &Poset) -> Option<ChainCover> {
    if !poset.width_le_two().holds {
        return None;
    }
    let mut found = None;
    assign(poset, 0, &mut Vec::new(), &mut Vec::new(), &mut |c, d| {
        found = Some(sorted_cover(poset, c, d));
        true
    });
    found
}

/// Every ordered pair (C, D) of disjoint chains covering the poset.
pub fn all_two_chain_covers(poset: &Poset) -> Vec<ChainCover> {
    let mut out = Vec::new();
    assign(poset, 0, &mut Vec::new(), &mut Vec::new(), &mut |c, d| {
        out.push(sorted_cover(poset, c, d));
        false
    });
    out
}

fn sorted_cover(poset: &Poset, c: &[usize], d: &[usize]) -> ChainCover {
    let sort = |xs: &[usize]| {
        let mut v = xs.to_vec();
        v.sort_by_key(|&e| poset.principal(e).len());
        v
    };
    ChainCover { chain_c: sort(c), chain_d: sort(d) }
}

// Depth-first over C-before-D assignments; `visit` returns true to stop.
fn assign(
    poset: &Poset,
    k: usize,
    c: &mut Vec<usize>,
    d: &mut Vec<usize>,
    visit: &mut dyn FnMut(&[usize], &[usize]) -> bool,
) -> bool {
    if k == poset.len() {
        return visit(c, d);
    }
    for into_c in [true, false] {
        let chain = if into_c { &mut *c } else { &mut *d };
        if chain.iter().all(|&x| poset.comparable(x, k)) {
            chain.push(k);
            let stop = assign(poset, k + 1, c, d, visit);
            if into_c { c.pop() } else { d.pop() };
            if stop {
                return true;
            }
        }
    }
    false
}

#[cfg(test)]
mod tests {
    use super::*;

    fn bowtie() -> Poset {
        Poset::build(&["a", "b", "c", "d"], &[("a", "c"), ("a", "d"), ("b", "c"), ("b", "d")]).unwrap()
    }

    #[test]
    fn bowtie_covers() {
        let p = bowtie();
        for cover in [two_chain_cover_inductive(&p), two_chain_cover_matching(&p)] {
            let cover = cover.expect("bowtie has width 2");
            cover.validate(&p).unwrap();
            assert_eq!(cover.chain_c.len() + cover.chain_d.len(), 4);
        }
        let canon = canonical_two_chain_cover(&p).unwrap();
        assert_eq!(canon, ChainCover { chain_c: vec![0, 2], chain_d: vec![1, 3] });
    }

    #[test]
    fn chain_uses_one_chain() {
        let p = Poset::build(&["p1", "p2", "p3"], &[("p1", "p2"), ("p2", "p3")]).unwrap();
        let expected = ChainCover { chain_c: vec![0, 1, 2], chain_d: vec![] };
        assert_eq!(two_chain_cover_inductive(&p), Some(expected.clone()));
        assert_eq!(two_chain_cover_matching(&p), Some(expected.clone()));
        assert_eq!(canonical_two_chain_cover(&p), Some(expected));
    }

    #[test]
    fn antichain_has_no_cover() {
        let p = Poset::build(&["p1", "p2", "p3"], &[]).unwrap();
        assert_eq!(two_chain_cover_inductive(&p), None);
        assert_eq!(two_chain_cover_matching(&p), None);
        assert_eq!(canonical_two_chain_cover(&p), None);
        assert!(all_two_chain_covers(&p).is_empty());
    }

    #[test]
    fn split_step_uses_chain_with_lower_element() {
        // c1 < c2, d1 < c2, c1 < p; p incomparable with c2 and d1.
        let p = Poset::build(&["c1", "d1", "c2", "p"], &[("c1", "c2"), ("d1", "c2"), ("c1", "p")]).unwrap();
        let cover = two_chain_cover_inductive(&p).expect("width 2");
        cover.validate(&p).unwrap();
    }

    #[test]
    fn validate_rejects_bad_covers() {
        let p = bowtie();
        let overlap = ChainCover { chain_c: vec![0, 2], chain_d: vec![0, 3] };
        assert!(overlap.validate(&p).is_err());
        let not_chain = ChainCover { chain_c: vec![0, 1], chain_d: vec![2, 3] };
        assert!(not_chain.validate(&p).is_err());
        let missing = ChainCover { chain_c: vec![0, 2], chain_d: vec![3] };
        assert!(missing.validate(&p).is_err());
    }

    #[test]
    fn all_covers_of_bowtie() {
        // {a,c}|{b,d}, {a,d}|{b,c} and their swaps.
        assert_eq!(all_two_chain_covers(&bowtie()).len(), 4);
    }

    // Merging the tail of the chain through p3 into {p2, p1} breaks the
    // chain; splitting the other chain works.
    #[test]
    fn split_step_tries_both_chains() {
        let p = Poset::build(
            &["p1", "p2", "p3", "p4", "p5"],
            &[("p2", "p1"), ("p2", "p5"), ("p3", "p1"), ("p4", "p3"), ("p4", "p5")],
        )
        .unwrap();
        let cover = two_chain_cover_inductive(&p).expect("width two");
        cover.validate(&p).unwrap();
        assert!(two_chain_cover_matching(&p).is_some());
    }
}
