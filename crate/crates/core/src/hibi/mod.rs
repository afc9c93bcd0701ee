//! Hibi relations, fibers and indispensability, the rank-lex classification
//! and Rees algebras of Hibi ideals.

mod defense;
mod rees;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::gb::{binomial, Binomial, Monomial, MonomialMap, Ring, TermOrder, Variable};
use crate::lattice::Lattice;
use crate::poset::{DownSet, Poset};

pub use defense::{
    defense_condition_c, defense_condition_d, defense_gb_check, defense_gb_witness, defense_quadratic_check,
    ConditionC, ConditionD, DefenseGb, QuadraticCheck,
};
pub use rees::{
    corollary_subsemilattices, rees_gb_check, rees_presentation, DownSetFamily, ReesCheck, ReesPresentation,
    SpecialLinear,
};

/// The polynomial ring `K[z_a, x_i, y_i, t]` for a family of downsets of a
/// poset. Variables are laid out as all `z`, then `x`, then `y`, then `t`.
#[derive(Debug, Clone)]
pub struct HibiRing {
    poset: Poset,
    sets: Vec<DownSet>,
    ranks: Vec<usize>,
    ring: Ring,
}

impl HibiRing {
    /// `z_a` for each member of `sets`, named by its bit string.
    pub fn new(poset: &Poset, sets: Vec<DownSet>, ranks: Vec<usize>) -> HibiRing {
        let n = poset.len();
        let names: Vec<String> = sets.iter().map(|s| s.to_bit_string(n)).collect();
        Self::with_names(poset, sets, ranks, names)
    }

    fn with_names(poset: &Poset, sets: Vec<DownSet>, ranks: Vec<usize>, names: Vec<String>) -> HibiRing {
        let mut vars: Vec<(Variable, String)> =
            names.into_iter().enumerate().map(|(a, name)| (Variable::Z(a), format!("z:{name}"))).collect();
        vars.extend((0..poset.len()).map(|i| (Variable::X(i), format!("x:{}", poset.label(i)))));
        vars.extend((0..poset.len()).map(|i| (Variable::Y(i), format!("y:{}", poset.label(i)))));
        vars.push((Variable::T, "t".into()));
        HibiRing { poset: poset.clone(), sets, ranks, ring: Ring::new(vars) }
    }

    /// Elements of `lattice` are represented by the downsets they came from,
    /// or by the join-irreducibles below them.
    pub fn for_lattice(lattice: &Lattice) -> HibiRing {
        let ranks = (0..lattice.size()).map(|a| lattice.rank(a)).collect();
        match lattice.origin() {
            Some(o) => Self::new(&o.poset, o.down_sets.clone(), ranks),
            None => {
                let names = (0..lattice.size()).map(|a| a.to_string()).collect();
                Self::with_names(&lattice.join_irreducibles(), lattice.birkhoff_sets(), ranks, names)
            }
        }
    }

    pub fn ring(&self) -> &Ring {
        &self.ring
    }

    pub fn poset(&self) -> &Poset {
        &self.poset
    }

    pub fn sets(&self) -> &[DownSet] {
        &self.sets
    }

    pub fn z_count(&self) -> usize {
        self.sets.len()
    }

    pub fn z(&self, a: usize) -> usize {
        a
    }

    pub fn x(&self, i: usize) -> usize {
        self.sets.len() + i
    }

    pub fn y(&self, i: usize) -> usize {
        self.sets.len() + self.poset.len() + i
    }

    pub fn t(&self) -> usize {
        self.sets.len() + 2 * self.poset.len()
    }

    pub fn nvars(&self) -> usize {
        self.ring.len()
    }

    /// Canonical ordering of the `z` variables, smallest first: by rank, then id.
    pub fn canonical_z_order(&self) -> Vec<usize> {
        let mut ids: Vec<usize> = (0..self.sets.len()).collect();
        ids.sort_by_key(|&a| (self.ranks[a], a));
        ids
    }

    fn z_desc(&self, z_asc: Option<&[usize]>) -> Vec<usize> {
        let asc = z_asc.map_or_else(|| self.canonical_z_order(), <[usize]>::to_vec);
        assert!(asc.windows(2).all(|w| self.ranks[w[0]] <= self.ranks[w[1]]), "z order must refine rank");
        asc.iter().rev().map(|&a| self.z(a)).collect()
    }

    pub fn rank_lex(&self, z_asc: Option<&[usize]>) -> TermOrder {
        TermOrder::rank_lex(self.nvars(), self.z_desc(z_asc))
    }

    pub fn rank_revlex(&self, z_asc: Option<&[usize]>) -> TermOrder {
        TermOrder::rank_revlex(self.nvars(), self.z_desc(z_asc))
    }

    pub fn product_lex1(&self, z_asc: Option<&[usize]>) -> TermOrder {
        let n = self.poset.len();
        let xy = (0..n).map(|i| self.x(i)).chain((0..n).map(|i| self.y(i))).collect();
        TermOrder::product_lex1(self.nvars(), xy, self.z_desc(z_asc))
    }

    pub fn zz(&self, a: usize, b: usize) -> Monomial {
        self.ring.monomial(&[self.z(a), self.z(b)])
    }

    /// `u_a = prod_{p in a} x_p prod_{p not in a} y_p`.
    pub fn u(&self, a: usize) -> Monomial {
        let factors: Vec<usize> =
            (0..self.poset.len()).map(|i| if self.sets[a].contains(i) { self.x(i) } else { self.y(i) }).collect();
        self.ring.monomial(&factors)
    }

    /// `z_a -> u_a`.
    pub fn hibi_map(&self) -> MonomialMap {
        MonomialMap { images: (0..self.sets.len()).map(|a| (self.z(a), self.u(a))).collect() }
    }

    /// `z_a -> u_a t`.
    pub fn rees_map(&self) -> MonomialMap {
        let t = self.ring.variable(self.t());
        MonomialMap { images: (0..self.sets.len()).map(|a| (self.z(a), self.u(a).mul(&t))).collect() }
    }

    pub fn xy_vars(&self) -> Vec<usize> {
        (0..self.poset.len()).flat_map(|i| [self.x(i), self.y(i)]).collect()
    }

    pub fn format(&self, b: &Binomial) -> String {
        self.ring.format_binomial(b)
    }
}

/// `z_a z_b - z_{a∧b} z_{a∨b}` for an incomparable pair `a < b` (by id).
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub struct HibiRelation {
    pub a: usize,
    pub b: usize,
    pub meet: usize,
    pub join: usize,
}

impl HibiRelation {
    pub fn binomial(&self, ring: &HibiRing, order: &TermOrder) -> Binomial {
        binomial(ring.zz(self.a, self.b), ring.zz(self.meet, self.join), order).expect("incomparable pair")
    }
}

#[derive(Debug, Clone)]
pub struct HibiPresentation {
    pub relations: Vec<HibiRelation>,
}

impl HibiPresentation {
    pub fn binomials(&self, ring: &HibiRing, order: &TermOrder) -> Vec<Binomial> {
        self.relations.iter().map(|r| r.binomial(ring, order)).collect()
    }
}

pub fn hibi_relations(lattice: &Lattice) -> HibiPresentation {
    let relations = lattice
        .incomparable_pairs()
        .into_iter()
        .map(|(a, b)| HibiRelation { a, b, meet: lattice.meet(a, b), join: lattice.join(a, b) })
        .collect();
    HibiPresentation { relations }
}

/// Unordered pairs `{c, d}` (with `c <= d` by id) sharing a meet and a join.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Fiber {
    pub meet: usize,
    pub join: usize,
    pub pairs: Vec<(usize, usize)>,
}

impl Fiber {
    pub fn len(&self) -> usize {
        self.pairs.len()
    }

    pub fn is_empty(&self) -> bool {
        self.pairs.is_empty()
    }
}

/// The degree-two fiber of `z_a z_b`. For distributive lattices the pair
/// enumeration is cross-checked against equality of multidegrees.
pub fn quad_fiber(lattice: &Lattice, a: usize, b: usize) -> Result<Fiber> {
    FiberOracle::new(lattice)?.fiber(a, b)
}

/// Whether the Hibi relation of the incomparable pair `(a, b)` appears in
/// every minimal binomial generating set. Decided by the fiber size and by
/// a rank computation over the degree-two binomials of the fiber.
pub fn is_indispensable(lattice: &Lattice, a: usize, b: usize) -> Result<bool> {
    FiberOracle::new(lattice)?.indispensable(a, b)
}

struct FiberOracle<'a> {
    lattice: &'a Lattice,
    multidegree: Option<(HibiRing, MonomialMap)>,
}

impl<'a> FiberOracle<'a> {
    fn new(lattice: &'a Lattice) -> Result<FiberOracle<'a>> {
        let multidegree = lattice.is_distributive()?.distributive.then(|| {
            let ring = HibiRing::for_lattice(lattice);
            let map = ring.hibi_map();
            (ring, map)
        });
        Ok(FiberOracle { lattice, multidegree })
    }

    fn fiber(&self, a: usize, b: usize) -> Result<Fiber> {
        let l = self.lattice;
        let (meet, join) = (l.meet(a, b), l.join(a, b));
        let n = l.size();
        let pairs: Vec<(usize, usize)> = (0..n)
            .flat_map(|c| (c..n).map(move |d| (c, d)))
            .filter(|&(c, d)| l.meet(c, d) == meet && l.join(c, d) == join)
            .collect();
        if let Some((ring, map)) = &self.multidegree {
            let target = map.multidegree(&ring.zz(a, b));
            let by_degree: Vec<(usize, usize)> = (0..n)
                .flat_map(|c| (c..n).map(move |d| (c, d)))
                .filter(|&(c, d)| map.multidegree(&ring.zz(c, d)) == target)
                .collect();
            if by_degree != pairs {
                return Err(Error::OracleDisagreement(format!(
                    "fiber of ({a},{b}): meet/join pairs {pairs:?} but multidegree pairs {by_degree:?}"
                )));
            }
        }
        Ok(Fiber { meet, join, pairs })
    }

    fn indispensable(&self, a: usize, b: usize) -> Result<bool> {
        let fiber = self.fiber(a, b)?;
        let by_size = fiber.len() == 2;
        let by_span = !in_span_of_others(&fiber, (a.min(b), a.max(b)));
        if by_size != by_span {
            return Err(Error::OracleDisagreement(format!(
                "pair ({a},{b}): fiber size {} but span test says indispensable = {by_span}",
                fiber.len()
            )));
        }
        Ok(by_size)
    }
}

// Is m_{ab} - m_{meet,join} a rational combination of the other differences
// m_i - m_j between fiber monomials?
fn in_span_of_others(fiber: &Fiber, pair: (usize, usize)) -> bool {
    let k = fiber.len();
    let idx = |p: (usize, usize)| fiber.pairs.iter().position(|&q| q == p).expect("pair lies in its fiber");
    let (r1, r2) = (idx(pair), idx((fiber.meet.min(fiber.join), fiber.meet.max(fiber.join))));
    let edge = |i: usize, j: usize| -> Vec<i128> {
        let mut v = vec![0i128; k];
        v[i] = 1;
        v[j] = -1;
        v
    };
    let others: Vec<Vec<i128>> = (0..k)
        .flat_map(|i| (i + 1..k).map(move |j| (i, j)))
        .filter(|&(i, j)| (i, j) != (r1.min(r2), r1.max(r2)))
        .map(|(i, j)| edge(i, j))
        .collect();
    let mut with = others.clone();
    with.push(edge(r1, r2));
    matrix_rank(others) == matrix_rank(with)
}

/// Rank over the rationals by fraction-free elimination.
pub(crate) fn matrix_rank(mut rows: Vec<Vec<i128>>) -> usize {
    let cols = rows.first().map_or(0, Vec::len);
    let mut rank = 0;
    for col in 0..cols {
        let Some(p) = (rank..rows.len()).find(|&r| rows[r][col] != 0) else { continue };
        rows.swap(rank, p);
        let pivot = rows[rank].clone();
        for row in rows.iter_mut().skip(rank + 1) {
            let f = row[col];
            if f == 0 {
                continue;
            }
            for (x, &pv) in row.iter_mut().zip(&pivot) {
                *x = *x * pivot[col] - f * pv;
            }
            let g = row.iter().fold(0i128, |g, &x| gcd(g, x.abs()));
            if g > 1 {
                row.iter_mut().for_each(|x| *x /= g);
            }
        }
        rank += 1;
    }
    rank
}

fn gcd(a: i128, b: i128) -> i128 {
    if b == 0 {
        a
    } else {
        gcd(b, a % b)
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct IndispensabilityCheck {
    pub holds: bool,
    /// First dispensable relation, as its incomparable pair.
    pub witness: Option<HibiRelation>,
}

pub fn all_hibi_indispensable(lattice: &Lattice) -> Result<IndispensabilityCheck> {
    let oracle = FiberOracle::new(lattice)?;
    for r in hibi_relations(lattice).relations {
        if !oracle.indispensable(r.a, r.b)? {
            return Ok(IndispensabilityCheck { holds: false, witness: Some(r) });
        }
    }
    Ok(IndispensabilityCheck { holds: true, witness: None })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::gb::{buchberger, is_groebner_basis, toric_kernel};
    use crate::lattice::examples::*;
    use crate::poset::Bounds;

    fn ideal(elements: &[&str], covers: &[(&str, &str)]) -> Lattice {
        Lattice::ideal_lattice(&Poset::build(elements, covers).unwrap(), &Bounds::default()).unwrap()
    }

    fn b3() -> Lattice {
        ideal(&["p1", "p2", "p3"], &[])
    }

    fn bowtie_lattice() -> Lattice {
        ideal(&["a", "b", "c", "d"], &[("a", "c"), ("a", "d"), ("b", "c"), ("b", "d")])
    }

    #[test]
    fn relation_counts() {
        assert_eq!(hibi_relations(&diamond()).relations.len(), 1);
        assert_eq!(hibi_relations(&b3()).relations.len(), 9);
        assert!(hibi_relations(&chain(4)).relations.is_empty());
    }

    #[test]
    fn fibers() {
        let l = b3();
        let top = quad_fiber(&l, 0, 7).unwrap();
        assert_eq!(top.pairs, vec![(0, 7), (1, 6), (2, 5), (3, 4)]);
        assert_eq!(quad_fiber(&diamond(), 1, 2).unwrap().len(), 2);
        assert_eq!(quad_fiber(&chain(3), 0, 2).unwrap().pairs, vec![(0, 2)]);
    }

    #[test]
    fn b3_relations_are_dispensable() {
        let l = b3();
        assert!(!is_indispensable(&l, 1, 6).unwrap());
        let check = all_hibi_indispensable(&l).unwrap();
        assert!(!check.holds);
        let w = check.witness.unwrap();
        assert_eq!((w.a, w.b, w.meet, w.join), (1, 6, 0, 7));
    }

    #[test]
    fn indispensable_examples() {
        assert!(is_indispensable(&diamond(), 1, 2).unwrap());
        assert!(all_hibi_indispensable(&bowtie_lattice()).unwrap().holds);
        assert!(all_hibi_indispensable(&chain(3)).unwrap().holds);
    }

    #[test]
    fn rank_oracle() {
        assert_eq!(matrix_rank(vec![vec![1, -1, 0], vec![0, 1, -1], vec![1, 0, -1]]), 2);
        assert_eq!(matrix_rank(vec![vec![2, 4], vec![1, 3]]), 2);
        assert_eq!(matrix_rank(vec![]), 0);
    }

    #[test]
    fn multidegrees() {
        let l = b3();
        let r = HibiRing::for_lattice(&l);
        let map = r.hibi_map();
        assert_eq!(map.multidegree(&r.zz(4, 3)), map.multidegree(&r.zz(6, 1)));
        assert_ne!(map.multidegree(&r.zz(1, 2)), map.multidegree(&r.zz(1, 3)));
        let d = diamond();
        let rd = HibiRing::for_lattice(&d);
        assert_eq!(rd.hibi_map().multidegree(&rd.zz(1, 2)), rd.hibi_map().multidegree(&rd.zz(0, 3)));
    }

    #[test]
    fn revlex_hibi_basis_of_b3() {
        let l = b3();
        let r = HibiRing::for_lattice(&l);
        let o = r.rank_revlex(None);
        let mut h = hibi_relations(&l).binomials(&r, &o);
        crate::gb::sort_basis(&mut h, &o);
        let gb = buchberger(&h, &o, 12).unwrap();
        assert_eq!(gb.elements, h);
        assert!(is_groebner_basis(&h, &o));
    }

    #[test]
    fn revlex_fails_on_n5() {
        let l = n5();
        let r = HibiRing::for_lattice(&l);
        let o = r.rank_revlex(None);
        let h = hibi_relations(&l).binomials(&r, &o);
        assert!(!is_groebner_basis(&h, &o));
        assert!(buchberger(&h, &o, 12).unwrap().elements.len() > h.len());
    }

    #[test]
    fn toric_kernel_of_small_lattices() {
        let d = diamond();
        let r = HibiRing::for_lattice(&d);
        let o = r.rank_lex(None);
        let k = toric_kernel(&r.hibi_map(), &r.xy_vars(), &o, 12).unwrap();
        assert_eq!(k, hibi_relations(&d).binomials(&r, &o));

        let c = ideal(&["p1"], &[]);
        let rc = HibiRing::for_lattice(&c);
        assert!(toric_kernel(&rc.hibi_map(), &rc.xy_vars(), &rc.rank_lex(None), 12).unwrap().is_empty());
    }

    #[test]
    fn names_follow_down_sets() {
        let r = HibiRing::for_lattice(&b3());
        assert_eq!(r.ring().name(r.z(4)), "z:110");
        assert_eq!(r.ring().name(r.x(2)), "x:p3");
        assert_eq!(r.ring().name(r.t()), "t");
    }
}
