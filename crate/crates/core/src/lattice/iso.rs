//! Isomorphism tests and canonical forms for small finite orders.

use crate::poset::Poset;

/// Anything that exposes a finite order relation on `0..order_size()`.
pub trait OrderMatrix {
    fn order_size(&self) -> usize;
    fn order_leq(&self, a: usize, b: usize) -> bool;
}

impl OrderMatrix for Poset {
    fn order_size(&self) -> usize {
        self.len()
    }
    fn order_leq(&self, a: usize, b: usize) -> bool {
        self.leq(a, b)
    }
}

struct Shape {
    lower: Vec<Vec<usize>>,
    color: Vec<usize>,
    rank: Vec<usize>,
}

fn shape<O: OrderMatrix + ?Sized>(o: &O) -> Shape {
    let n = o.order_size();
    let at = |a: usize, b: usize| o.order_leq(a, b);
    let (lower, upper) = super::cover_lists(n, &at);
    let rank = super::longest_chain_ranks(n, &lower);
    let below = |a: usize| (0..n).filter(|&b| at(b, a)).count();
    let above = |a: usize| (0..n).filter(|&b| at(a, b)).count();
    let mut sig: Vec<Vec<usize>> =
        (0..n).map(|a| vec![rank[a], lower[a].len(), upper[a].len(), below(a), above(a)]).collect();
    let mut color = index_signatures(&sig);
    // Refine by the colors of neighbors until the partition stops splitting.
    loop {
        for a in 0..n {
            let mut lo: Vec<usize> = lower[a].iter().map(|&b| color[b]).collect();
            let mut up: Vec<usize> = upper[a].iter().map(|&b| color[b]).collect();
            lo.sort_unstable();
            up.sort_unstable();
            sig[a] = std::iter::once(color[a]).chain(lo).chain([usize::MAX]).chain(up).collect();
        }
        let next = index_signatures(&sig);
        let classes = |c: &[usize]| c.iter().max().map_or(0, |m| m + 1);
        if classes(&next) == classes(&color) {
            break;
        }
        color = next;
    }
    Shape { lower, color, rank }
}

fn index_signatures(sig: &[Vec<usize>]) -> Vec<usize> {
    let mut distinct: Vec<&Vec<usize>> = sig.iter().collect();
    distinct.sort();
    distinct.dedup();
    sig.iter().map(|s| distinct.binary_search(&s).unwrap()).collect()
}

/// Order isomorphism by backtracking over cover-preserving bijections.
pub fn is_isomorphic<A: OrderMatrix + ?Sized, B: OrderMatrix + ?Sized>(a: &A, b: &B) -> bool {
    let n = a.order_size();
    if n != b.order_size() {
        return false;
    }
    let (sa, sb) = (shape(a), shape(b));
    let mut ca = sa.color.clone();
    let mut cb = sb.color.clone();
    ca.sort_unstable();
    cb.sort_unstable();
    if ca != cb {
        return false;
    }
    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by_key(|&v| (sa.rank[v], v));
    let mut map = vec![usize::MAX; n];
    let mut used = vec![false; n];
    extend(0, &order, &sa, &sb, &mut map, &mut used)
}

fn extend(k: usize, order: &[usize], sa: &Shape, sb: &Shape, map: &mut [usize], used: &mut [bool]) -> bool {
    let Some(&v) = order.get(k) else { return true };
    for w in 0..map.len() {
        if used[w] || sb.color[w] != sa.color[v] || sb.lower[w].len() != sa.lower[v].len() {
            continue;
        }
        if !sa.lower[v].iter().all(|&u| sb.lower[w].contains(&map[u])) {
            continue;
        }
        map[v] = w;
        used[w] = true;
        if extend(k + 1, order, sa, sb, map, used) {
            return true;
        }
        used[w] = false;
        map[v] = usize::MAX;
    }
    false
}

/// Canonical encoding of a small order: equal encodings iff isomorphic.
/// Intended for orders of at most a dozen or so elements.
pub fn canonical_form<O: OrderMatrix + ?Sized>(o: &O) -> Vec<u128> {
    let n = o.order_size();
    assert!(n <= 64, "canonical_form supports at most 64 elements");
    let s = shape(o);
    let mut cells: Vec<Vec<usize>> = Vec::new();
    let mut by_color: Vec<usize> = (0..n).collect();
    by_color.sort_by_key(|&v| (s.color[v], v));
    for v in by_color {
        match cells.last_mut() {
            Some(cell) if s.color[cell[0]] == s.color[v] => cell.push(v),
            _ => cells.push(vec![v]),
        }
    }
    let slots: Vec<usize> = cells.iter().enumerate().flat_map(|(c, cell)| std::iter::repeat_n(c, cell.len())).collect();
    let mut search = Canon { o, cells: &cells, slots: &slots, best: None, current: Vec::new(), placed: Vec::new(), used: vec![false; n] };
    search.run();
    search.best.unwrap_or_default()
}

struct Canon<'a, O: OrderMatrix + ?Sized> {
    o: &'a O,
    cells: &'a [Vec<usize>],
    slots: &'a [usize],
    best: Option<Vec<u128>>,
    current: Vec<u128>,
    placed: Vec<usize>,
    used: Vec<bool>,
}

impl<O: OrderMatrix + ?Sized> Canon<'_, O> {
    fn run(&mut self) {
        let k = self.placed.len();
        if k == self.slots.len() {
            if self.best.as_ref().is_none_or(|b| self.current < *b) {
                self.best = Some(self.current.clone());
            }
            return;
        }
        let cell = &self.cells[self.slots[k]];
        for &v in cell {
            if self.used[v] {
                continue;
            }
            let code = self.placed.iter().enumerate().fold(0u128, |acc, (j, &u)| {
                acc | (self.o.order_leq(u, v) as u128) << (2 * j) | (self.o.order_leq(v, u) as u128) << (2 * j + 1)
            });
            self.current.push(code);
            // Prune prefixes already larger than the best complete encoding.
            if self.best.as_ref().is_some_and(|b| self.current.as_slice() > &b[..=k]) {
                self.current.pop();
                continue;
            }
            self.used[v] = true;
            self.placed.push(v);
            self.run();
            self.placed.pop();
            self.used[v] = false;
            self.current.pop();
        }
    }
}
