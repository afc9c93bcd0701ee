//! Four characterisations of lattices whose Hibi relations are the reduced
//! Gröbner basis under a rank lexicographic order.

use std::collections::HashSet;

use serde::Serialize;

use super::{all_hibi_indispensable, hibi_relations, HibiRing};
use crate::error::Result;
use crate::gb::{buchberger, groebner_violation, is_reduced, sort_basis, Binomial};
use crate::grid::{lattice_grid_embedding, ChainLadderCheck, Corner, CornerKind};
use crate::lattice::{complementary_sets, is_complemented, Interval, Lattice};

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DefenseGb {
    pub holds: bool,
    pub is_groebner: bool,
    pub is_reduced: bool,
    /// Two relations whose S-polynomial has this nonzero normal form.
    pub violation: Option<(Binomial, Binomial, Binomial)>,
}

/// Whether the Hibi relations, oriented by rank lex with the given tie-break
/// (`None` for the canonical one), are already the reduced Gröbner basis:
/// every S-pair reduces to zero and no lead divides another term.
pub fn defense_gb_check(lattice: &Lattice, z_asc: Option<&[usize]>) -> DefenseGb {
    let ring = HibiRing::for_lattice(lattice);
    let order = ring.rank_lex(z_asc);
    let mut h = hibi_relations(lattice).binomials(&ring, &order);
    sort_basis(&mut h, &order);
    let violation = groebner_violation(&h, &order);
    let reduced = is_reduced(&h);
    DefenseGb { holds: violation.is_none() && reduced, is_groebner: violation.is_none(), is_reduced: reduced, violation }
}

/// Runs Buchberger on the Hibi relations under rank lex and returns the
/// first reduced basis element that is not a Hibi relation, if any.
pub fn defense_gb_witness(lattice: &Lattice, z_asc: Option<&[usize]>, degree_cap: u32) -> Result<Option<Binomial>> {
    let ring = HibiRing::for_lattice(lattice);
    let order = ring.rank_lex(z_asc);
    let h = hibi_relations(lattice).binomials(&ring, &order);
    let gb = buchberger(&h, &order, degree_cap)?;
    let hibi: HashSet<&Binomial> = h.iter().collect();
    if gb.elements.len() == h.len() && gb.elements.iter().all(|g| hibi.contains(g)) {
        return Ok(None);
    }
    Ok(gb.elements.iter().find(|g| !hibi.contains(g)).cloned().or_else(|| {
        // Same size but a Hibi relation is missing: report one of those.
        let basis: HashSet<&Binomial> = gb.elements.iter().collect();
        h.iter().find(|r| !basis.contains(r)).cloned()
    }))
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct QuadraticCheck {
    pub holds: bool,
    pub indispensable: bool,
    /// Present when the basis was computed.
    pub max_degree: Option<u32>,
    pub witness: Option<Binomial>,
}

/// Hibi relations indispensable, and the reduced rank-lex basis has only
/// quadrics. The basis is skipped when indispensability already fails.
pub fn defense_quadratic_check(lattice: &Lattice, z_asc: Option<&[usize]>, degree_cap: u32) -> Result<QuadraticCheck> {
    let ind = all_hibi_indispensable(lattice)?;
    if !ind.holds {
        return Ok(QuadraticCheck { holds: false, indispensable: false, max_degree: None, witness: None });
    }
    let ring = HibiRing::for_lattice(lattice);
    let order = ring.rank_lex(z_asc);
    let gb = buchberger(&hibi_relations(lattice).binomials(&ring, &order), &order, degree_cap)?;
    let max_degree = gb.elements.iter().map(Binomial::degree).max().unwrap_or(0);
    let witness = gb.elements.iter().find(|g| g.degree() > 2).cloned();
    Ok(QuadraticCheck { holds: witness.is_none(), indispensable: true, max_degree: Some(max_degree), witness })
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ConditionC {
    pub holds: bool,
    /// `a < b < c` with `[a,b]`, `[b,c]` complemented but neither `[g,c]`
    /// nor `[h,c]` complemented for a complementary set `{g,h}` of `[a,b]`.
    pub witness: Option<[usize; 3]>,
}

pub fn defense_condition_c(lattice: &Lattice) -> ConditionC {
    let n = lattice.size();
    for a in 0..n {
        for b in (0..n).filter(|&b| lattice.lt(a, b)) {
            let lower = complementary_sets(lattice, Interval { lo: a, hi: b });
            if lower.is_empty() {
                continue;
            }
            for c in (0..n).filter(|&c| lattice.lt(b, c)) {
                if !is_complemented(lattice, Interval { lo: b, hi: c }) {
                    continue;
                }
                let fails = lower.iter().any(|s| {
                    !is_complemented(lattice, Interval { lo: s.c, hi: c })
                        && !is_complemented(lattice, Interval { lo: s.d, hi: c })
                });
                if fails {
                    return ConditionC { holds: false, witness: Some([a, b, c]) };
                }
            }
        }
    }
    ConditionC { holds: true, witness: None }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ConditionD {
    pub holds: bool,
    /// Join-irreducibles have width at most two.
    pub embedded: bool,
    pub chain_ladder: Option<ChainLadderCheck>,
    pub critical_corner: Option<Corner>,
    pub corners: Vec<Corner>,
}

/// Embeds through the canonical two-chain cover and checks for a chain
/// ladder without critical corners.
pub fn defense_condition_d(lattice: &Lattice) -> Result<ConditionD> {
    let Some(e) = lattice_grid_embedding(lattice)? else {
        return Ok(ConditionD { holds: false, embedded: false, chain_ladder: None, critical_corner: None, corners: vec![] });
    };
    let image = e.image_set();
    let full = image.is_full_sublattice();
    let corners = image.classify_corners();
    let ladder = image.is_chain_ladder();
    let critical = corners.iter().find(|c| c.kind == CornerKind::Critical).copied();
    Ok(ConditionD {
        holds: full && ladder.holds && critical.is_none(),
        embedded: full,
        chain_ladder: Some(ladder),
        critical_corner: critical,
        corners,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::lattice::examples::*;
    use crate::poset::{Bounds, Poset};

    fn ideal(elements: &[&str], covers: &[(&str, &str)]) -> Lattice {
        Lattice::ideal_lattice(&Poset::build(elements, covers).unwrap(), &Bounds::default()).unwrap()
    }

    fn bowtie_lattice() -> Lattice {
        ideal(&["a", "b", "c", "d"], &[("a", "c"), ("a", "d"), ("b", "c"), ("b", "d")])
    }

    // Grid [2]x[2] without (0,2): chains c1 < c2 and d1 < d2 with c1 < d2.
    fn grid_minus_corner() -> Lattice {
        ideal(&["c1", "c2", "d1", "d2"], &[("c1", "c2"), ("d1", "d2"), ("c1", "d2")])
    }

    #[test]
    fn full_grid_passes_everything() {
        let g = grid(2, 2);
        assert!(defense_gb_check(&g, None).holds);
        assert_eq!(defense_gb_witness(&g, None, 12).unwrap(), None);
        assert!(defense_quadratic_check(&g, None, 12).unwrap().holds);
        assert!(defense_condition_c(&g).holds);
        assert!(defense_condition_d(&g).unwrap().holds);
    }

    #[test]
    fn grid_minus_one_corner_passes() {
        let l = grid_minus_corner();
        assert_eq!(l.size(), 8);
        assert!(defense_gb_check(&l, None).holds);
        assert!(defense_quadratic_check(&l, None, 12).unwrap().holds);
        assert!(defense_condition_c(&l).holds);
        let d = defense_condition_d(&l).unwrap();
        assert!(d.holds);
        assert_eq!(d.corners.len(), 1);
    }

    #[test]
    fn bowtie_fails_everything() {
        let l = bowtie_lattice();
        let gb = defense_gb_check(&l, None);
        assert!(!gb.holds);
        let w = defense_gb_witness(&l, None, 12).unwrap().expect("extra basis element");
        assert_eq!(w.degree(), 3);
        let q = defense_quadratic_check(&l, None, 12).unwrap();
        assert!(q.indispensable && !q.holds);
        // Ideal ids: (0,0) = 0, (1,1) = {a,b} = 3, (2,2) = 6.
        assert_eq!(defense_condition_c(&l), ConditionC { holds: false, witness: Some([0, 3, 6]) });
        let d = defense_condition_d(&l).unwrap();
        assert!(!d.holds);
        assert_eq!(d.critical_corner.map(|c| c.kind), Some(CornerKind::Critical));
    }

    #[test]
    fn chains_pass_vacuously() {
        let c = chain(4);
        assert!(defense_condition_c(&c).holds);
        assert!(defense_gb_check(&c, None).holds);
    }
}
