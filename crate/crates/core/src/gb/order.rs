//! Block term orders.
//!
//! A [`TermOrder`] is a sequence of blocks of variable indices. Two monomials
//! are compared on the first block where their restrictions differ. Inside a
//! block variables are listed largest first, and the block compares either
//! lexicographically or by degree then reverse lexicographically. Variables
//! not named by any block form a final lex block in index order, so every
//! order is total on the ring.

use std::cmp::Ordering;

use serde::Serialize;

use super::monomial::Monomial;
use crate::error::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum BlockKind {
    Lex,
    GrevLex,
}

#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize)]
pub struct Block {
    pub kind: BlockKind,
    /// Variable indices, largest variable first.
    pub vars: Vec<usize>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum OrderKind {
    RankLex,
    RankRevLex,
    ProductLex1,
    Elimination,
    Custom,
}

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct TermOrder {
    kind: OrderKind,
    nvars: usize,
    blocks: Vec<Block>,
}

impl TermOrder {
    pub fn new(kind: OrderKind, nvars: usize, mut blocks: Vec<Block>) -> TermOrder {
        let mut named = vec![false; nvars];
        for b in &blocks {
            for &v in &b.vars {
                assert!(v < nvars && !named[v], "variable {v} out of range or listed twice");
                named[v] = true;
            }
        }
        let rest: Vec<usize> = (0..nvars).filter(|&v| !named[v]).collect();
        blocks.retain(|b| !b.vars.is_empty());
        if !rest.is_empty() {
            blocks.push(Block { kind: BlockKind::Lex, vars: rest });
        }
        TermOrder { kind, nvars, blocks }
    }

    /// Lex with `z_desc` listing the lattice variables largest first.
    pub fn rank_lex(nvars: usize, z_desc: Vec<usize>) -> TermOrder {
        TermOrder::new(OrderKind::RankLex, nvars, vec![Block { kind: BlockKind::Lex, vars: z_desc }])
    }

    /// Graded reverse lex with the same variable ranking.
    pub fn rank_revlex(nvars: usize, z_desc: Vec<usize>) -> TermOrder {
        TermOrder::new(OrderKind::RankRevLex, nvars, vec![Block { kind: BlockKind::GrevLex, vars: z_desc }])
    }

    /// Lex on `x_1 > ... > x_n > y_1 > ... > y_n` first, then rank lex on
    /// the lattice variables.
    pub fn product_lex1(nvars: usize, xy_desc: Vec<usize>, z_desc: Vec<usize>) -> TermOrder {
        TermOrder::new(
            OrderKind::ProductLex1,
            nvars,
            vec![Block { kind: BlockKind::Lex, vars: xy_desc }, Block { kind: BlockKind::Lex, vars: z_desc }],
        )
    }

    /// `eliminate` as a graded reverse lex block ahead of this order.
    pub fn elimination(&self, eliminate: &[usize]) -> TermOrder {
        let mut blocks = vec![Block { kind: BlockKind::GrevLex, vars: eliminate.to_vec() }];
        blocks.extend(self.blocks.iter().map(|b| Block {
            kind: b.kind,
            vars: b.vars.iter().copied().filter(|v| !eliminate.contains(v)).collect(),
        }));
        TermOrder::new(OrderKind::Elimination, self.nvars, blocks)
    }

    pub fn kind(&self) -> OrderKind {
        self.kind
    }

    pub fn nvars(&self) -> usize {
        self.nvars
    }

    pub fn blocks(&self) -> &[Block] {
        &self.blocks
    }

    pub fn compare(&self, u: &Monomial, v: &Monomial) -> Result<Ordering> {
        for m in [u, v] {
            if m.nvars() != self.nvars {
                return Err(Error::IncompatibleVariables { left: m.nvars(), right: self.nvars });
            }
        }
        Ok(self.cmp(u, v))
    }

    /// Unchecked comparison for monomials over this order's ring.
    pub fn cmp(&self, u: &Monomial, v: &Monomial) -> Ordering {
        let (a, b) = (u.exponents(), v.exponents());
        for block in &self.blocks {
            let ord = match block.kind {
                BlockKind::Lex => block.vars.iter().map(|&k| a[k].cmp(&b[k])).find(|o| o.is_ne()),
                BlockKind::GrevLex => {
                    let deg = |e: &[u8]| block.vars.iter().map(|&k| e[k] as u32).sum::<u32>();
                    match deg(a).cmp(&deg(b)) {
                        Ordering::Equal => block.vars.iter().rev().map(|&k| b[k].cmp(&a[k])).find(|o| o.is_ne()),
                        o => Some(o),
                    }
                }
            };
            if let Some(o) = ord {
                return o;
            }
        }
        Ordering::Equal
    }

    /// A key whose lexicographic order is this term order.
    pub fn sort_key(&self, m: &Monomial) -> Vec<i32> {
        let e = m.exponents();
        let mut key = Vec::with_capacity(self.nvars + self.blocks.len());
        for block in &self.blocks {
            match block.kind {
                BlockKind::Lex => key.extend(block.vars.iter().map(|&k| e[k] as i32)),
                BlockKind::GrevLex => {
                    key.push(block.vars.iter().map(|&k| e[k] as i32).sum());
                    key.extend(block.vars.iter().rev().map(|&k| -(e[k] as i32)));
                }
            }
        }
        key
    }

    pub fn max<'a>(&self, u: &'a Monomial, v: &'a Monomial) -> &'a Monomial {
        if self.cmp(u, v).is_ge() {
            u
        } else {
            v
        }
    }
}

/// All orderings of `0..ranks.len()`, smallest first, that never place a
/// higher-rank element below a lower-rank one. Ties are permuted freely.
pub fn rank_compatible_orders(ranks: &[usize]) -> Vec<Vec<usize>> {
    let mut levels: Vec<Vec<usize>> = Vec::new();
    let mut ids: Vec<usize> = (0..ranks.len()).collect();
    ids.sort_by_key(|&a| (ranks[a], a));
    for a in ids {
        match levels.last_mut() {
            Some(level) if ranks[level[0]] == ranks[a] => level.push(a),
            _ => levels.push(vec![a]),
        }
    }
    let mut out = vec![Vec::new()];
    for level in levels {
        let perms = permutations(&level);
        out = out.into_iter().flat_map(|prefix: Vec<usize>| {
            perms.iter().map(move |p| prefix.iter().chain(p).copied().collect())
        }).collect();
    }
    out
}

fn permutations(items: &[usize]) -> Vec<Vec<usize>> {
    if items.len() <= 1 {
        return vec![items.to_vec()];
    }
    let mut out = Vec::new();
    for (k, &first) in items.iter().enumerate() {
        let rest: Vec<usize> = items.iter().enumerate().filter(|&(j, _)| j != k).map(|(_, &x)| x).collect();
        for mut tail in permutations(&rest) {
            tail.insert(0, first);
            out.push(tail);
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::gb::monomial::{Ring, Variable};

    fn diamond_ring() -> Ring {
        // z0 bottom, z1 z2 atoms, z3 top, then x, y for one poset element.
        Ring::new(vec![
            (Variable::Z(0), "z0".into()),
            (Variable::Z(1), "z1".into()),
            (Variable::Z(2), "z2".into()),
            (Variable::Z(3), "z3".into()),
            (Variable::X(0), "x1".into()),
            (Variable::Y(0), "y1".into()),
        ])
    }

    #[test]
    fn rank_lex_puts_top_first() {
        let r = diamond_ring();
        let o = TermOrder::rank_lex(6, vec![3, 2, 1, 0]);
        let top_bottom = r.monomial(&[3, 0]);
        let atoms = r.monomial(&[1, 2]);
        assert_eq!(o.compare(&top_bottom, &atoms).unwrap(), Ordering::Greater);
        let rev = TermOrder::rank_revlex(6, vec![3, 2, 1, 0]);
        assert_eq!(rev.compare(&top_bottom, &atoms).unwrap(), Ordering::Less);
        assert_eq!(o.compare(&atoms, &atoms).unwrap(), Ordering::Equal);
    }

    #[test]
    fn product_lex_eliminates_x_and_y() {
        let r = diamond_ring();
        let o = TermOrder::product_lex1(6, vec![4, 5], vec![3, 2, 1, 0]);
        let lhs = r.monomial(&[4, 0]);
        let rhs = r.monomial(&[5, 1]);
        assert_eq!(o.cmp(&lhs, &rhs), Ordering::Greater);
        assert_eq!(o.cmp(&r.variable(5), &r.monomial(&[3, 3, 3, 3])), Ordering::Greater);
    }

    #[test]
    fn elimination_block_comes_first() {
        let r = diamond_ring();
        let o = TermOrder::rank_lex(6, vec![3, 2, 1, 0]).elimination(&[4, 5]);
        assert_eq!(o.cmp(&r.variable(5), &r.monomial(&[3, 3, 3])), Ordering::Greater);
        assert_eq!(o.cmp(&r.monomial(&[3, 0]), &r.monomial(&[1, 2])), Ordering::Greater);
    }

    #[test]
    fn unnamed_variables_still_ordered() {
        let o = TermOrder::rank_lex(3, vec![0]);
        let a = Monomial::from_exponents(vec![0, 1, 0]);
        let b = Monomial::from_exponents(vec![0, 0, 1]);
        assert_eq!(o.cmp(&a, &b), Ordering::Greater);
        assert!(o.compare(&a, &Monomial::from_exponents(vec![1])).is_err());
    }

    #[test]
    fn tie_break_orders() {
        // Diamond ranks: 0,1,1,2.
        let orders = rank_compatible_orders(&[0, 1, 1, 2]);
        assert_eq!(orders, vec![vec![0, 1, 2, 3], vec![0, 2, 1, 3]]);
        assert_eq!(rank_compatible_orders(&[0, 1, 1, 1, 2, 2, 2, 3]).len(), 36);
    }
}
