//! Labeled and unlabeled enumeration of small posets and lattices.

use std::collections::HashSet;

use crate::error::{Error, Result};
use crate::lattice::{canonical_form, Lattice};
use crate::poset::{Bounds, Poset};

pub const MAX_ENUMERATION_SIZE: usize = 7;

/// All posets on `p1..pn`, or one per isomorphism class when `iso` is set.
/// Labeled output is in a fixed order: each poset extends one on `n - 1`
/// elements by a new maximal-index element.
pub fn enumerate_posets(n: usize, iso: bool) -> Result<Vec<Poset>> {
    if n > MAX_ENUMERATION_SIZE {
        return Err(Error::SizeExceeded { what: "enumeration size", limit: MAX_ENUMERATION_SIZE });
    }
    let mut level: Vec<Vec<u64>> = vec![Vec::new()];
    for _ in 0..n {
        let mut next = Vec::new();
        let mut seen = HashSet::new();
        for below in &level {
            for ext in extensions(below) {
                if !iso || seen.insert(canonical_form(&Poset::from_below_masks(ext.clone()))) {
                    next.push(ext);
                }
            }
        }
        level = next;
    }
    Ok(level.into_iter().map(Poset::from_below_masks).collect())
}

// Adds element k = below.len() with strict down-set D and strict up-set U:
// D a downset, U an upset, disjoint, and d < u already for d in D, u in U.
fn extensions(below: &[u64]) -> Vec<Vec<u64>> {
    let k = below.len();
    let current = Poset::from_below_masks(below.to_vec());
    let downs = current.enumerate_down_sets(&Bounds { max_poset_size: 64, max_down_sets: usize::MAX }).expect("small poset");
    let full = (1u64 << k) - 1;
    let mut out = Vec::new();
    for d in &downs {
        for e in &downs {
            if !d.is_subset(*e) {
                continue;
            }
            let up = full & !e.bits();
            let consistent = (0..k).filter(|&u| up >> u & 1 == 1).all(|u| d.bits() & !below[u] == 0);
            if !consistent {
                continue;
            }
            let mut next: Vec<u64> = below.to_vec();
            for (u, mask) in next.iter_mut().enumerate() {
                if up >> u & 1 == 1 {
                    *mask |= d.bits() | 1 << k;
                }
            }
            next.push(d.bits() | 1 << k);
            out.push(next);
        }
    }
    out
}

/// All posets up to `max_n`, in increasing size.
pub fn enumerate_posets_up_to(max_n: usize, iso: bool) -> Result<Vec<Poset>> {
    let mut out = Vec::new();
    for n in 1..=max_n {
        out.extend(enumerate_posets(n, iso)?);
    }
    Ok(out)
}

/// One lattice per isomorphism class with `1..=max_size` elements: a bottom
/// and a top around every unlabeled poset, filtered for lattices.
pub fn enumerate_lattices(max_size: usize) -> Result<Vec<Lattice>> {
    if max_size > MAX_ENUMERATION_SIZE + 2 {
        return Err(Error::SizeExceeded { what: "lattice size", limit: MAX_ENUMERATION_SIZE + 2 });
    }
    let mut out = Vec::new();
    if max_size >= 1 {
        out.push(Lattice::from_leq(&[vec![true]])?);
    }
    for size in 2..=max_size {
        let interiors = if size == 2 { vec![Poset::from_below_masks(vec![])] } else { enumerate_posets(size - 2, true)? };
        for p in interiors {
            let k = p.len();
            let leq: Vec<Vec<bool>> = (0..k + 2)
                .map(|a| {
                    (0..k + 2)
                        .map(|b| a == 0 || b == k + 1 || (a > 0 && a <= k && b > 0 && b <= k && p.leq(a - 1, b - 1)))
                        .collect()
                })
                .collect();
            if let Ok(l) = Lattice::from_leq(&leq) {
                out.push(l);
            }
        }
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;

    // Every relation on n points, filtered for partial orders.
    fn brute_force_count(n: usize) -> usize {
        let pairs: Vec<(usize, usize)> = (0..n).flat_map(|a| (0..n).filter(move |&b| b != a).map(move |b| (a, b))).collect();
        (0..1u64 << pairs.len())
            .filter(|&mask| {
                let rel = |a: usize, b: usize| a == b || pairs.iter().position(|&p| p == (a, b)).is_some_and(|k| mask >> k & 1 == 1);
                (0..n).all(|a| {
                    (0..n).all(|b| {
                        (a == b || !(rel(a, b) && rel(b, a))) && (0..n).all(|c| !(rel(a, b) && rel(b, c)) || rel(a, c))
                    })
                })
            })
            .count()
    }

    #[test]
    fn labeled_counts_match_brute_force() {
        for n in 1..=4 {
            assert_eq!(enumerate_posets(n, false).unwrap().len(), brute_force_count(n), "n = {n}");
        }
        assert_eq!(enumerate_posets(3, false).unwrap().len(), 19);
        assert_eq!(enumerate_posets(4, false).unwrap().len(), 219);
    }

    #[test]
    fn labeled_posets_are_distinct() {
        let ps = enumerate_posets(4, false).unwrap();
        let distinct: HashSet<Vec<u64>> = ps.iter().map(|p| p.below_masks().to_vec()).collect();
        assert_eq!(distinct.len(), ps.len());
    }

    #[test]
    fn unlabeled_counts() {
        let counts: Vec<usize> = (1..=5).map(|n| enumerate_posets(n, true).unwrap().len()).collect();
        assert_eq!(counts, vec![1, 2, 5, 16, 63]);
    }

    #[test]
    fn lattice_counts() {
        let ls = enumerate_lattices(7).unwrap();
        let mut by_size = [0usize; 8];
        for l in &ls {
            by_size[l.size()] += 1;
        }
        assert_eq!(&by_size[1..], &[1, 1, 1, 2, 5, 15, 53]);
    }

    #[test]
    fn size_cap() {
        assert!(matches!(enumerate_posets(8, false), Err(Error::SizeExceeded { .. })));
    }
}
