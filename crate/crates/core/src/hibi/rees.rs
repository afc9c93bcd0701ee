//! Rees algebras of Hibi ideals: presentations by Hibi and special linear
//! relations and their Gröbner bases under the product lex order.

use std::collections::{HashMap, HashSet};

use serde::Serialize;

use super::{HibiRelation, HibiRing};
use crate::error::{Error, Result};
use crate::gb::{binomial, buchberger, sort_basis, toric_kernel, Binomial, TermOrder};
use crate::lattice::{associated_distributive_lattice, is_isomorphic, Lattice, MeetSemilattice};
use crate::poset::{Bounds, DownSet, Poset};

/// A set of downsets of `poset`, each a `z` variable.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DownSetFamily {
    pub poset: Poset,
    pub members: Vec<DownSet>,
}

impl DownSetFamily {
    /// A distributive lattice as the family of its downsets.
    pub fn from_lattice(lattice: &Lattice) -> Result<DownSetFamily> {
        if let Some(o) = lattice.origin() {
            return Ok(DownSetFamily { poset: o.poset.clone(), members: o.down_sets.clone() });
        }
        if !lattice.is_distributive()?.distributive {
            return Err(Error::NotMeetDistributive);
        }
        Ok(DownSetFamily { poset: lattice.join_irreducibles(), members: lattice.birkhoff_sets() })
    }

    /// A meet-distributive semilattice, placed inside its associated
    /// distributive lattice.
    pub fn from_semilattice(s: &MeetSemilattice) -> Result<DownSetFamily> {
        let assoc = associated_distributive_lattice(s)?;
        let origin = assoc.lattice.origin().expect("associated lattice is an ideal lattice");
        Ok(DownSetFamily { poset: origin.poset.clone(), members: assoc.image_down_sets() })
    }

    pub fn len(&self) -> usize {
        self.members.len()
    }

    pub fn is_empty(&self) -> bool {
        self.members.is_empty()
    }

    pub fn is_union_closed(&self) -> bool {
        let set: HashSet<DownSet> = self.members.iter().copied().collect();
        self.members.iter().all(|&a| self.members.iter().all(|&b| set.contains(&a.union(b))))
    }

    pub fn ring(&self) -> HibiRing {
        HibiRing::new(&self.poset, self.members.clone(), self.members.iter().map(|m| m.len()).collect())
    }

    /// Every member is a downset and every downset below a member is a member.
    pub fn check_poset_ideal(&self) -> Result<()> {
        let index: HashSet<DownSet> = self.members.iter().copied().collect();
        if index.len() != self.members.len() || self.members.is_empty() {
            return Err(Error::NotPosetIdeal);
        }
        for &m in &self.members {
            if !self.poset.is_down_set(m) {
                return Err(Error::NotPosetIdeal);
            }
            for p in self.poset.minimal_generators(m) {
                if !index.contains(&m.without(p)) {
                    return Err(Error::NotPosetIdeal);
                }
            }
        }
        Ok(())
    }
}

/// `x_i z_{lower} - y_i z_{upper}` where `upper = lower ∪ {p_i}`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub struct SpecialLinear {
    pub element: usize,
    pub lower: usize,
    pub upper: usize,
}

#[derive(Debug, Clone)]
pub struct ReesPresentation {
    pub ring: HibiRing,
    pub hibi: Vec<HibiRelation>,
    pub special_linear: Vec<SpecialLinear>,
}

impl ReesPresentation {
    pub fn binomials(&self, order: &TermOrder) -> Vec<Binomial> {
        let r = &self.ring;
        let mut out: Vec<Binomial> = self.hibi.iter().map(|h| h.binomial(r, order)).collect();
        out.extend(self.special_linear.iter().map(|s| {
            let lhs = r.ring().monomial(&[r.x(s.element), r.z(s.lower)]);
            let rhs = r.ring().monomial(&[r.y(s.element), r.z(s.upper)]);
            binomial(lhs, rhs, order).expect("distinct monomials")
        }));
        out
    }
}

/// Hibi relations for incomparable pairs whose union is present, and one
/// special linear relation per cover edge of the family.
pub fn rees_presentation(family: &DownSetFamily) -> Result<ReesPresentation> {
    family.check_poset_ideal()?;
    let index: HashMap<DownSet, usize> = family.members.iter().enumerate().map(|(k, &m)| (m, k)).collect();
    let m = &family.members;
    let mut hibi = Vec::new();
    let mut special_linear = Vec::new();
    for a in 0..m.len() {
        for b in a + 1..m.len() {
            if !m[a].is_subset(m[b]) && !m[b].is_subset(m[a]) {
                if let Some(&join) = index.get(&m[a].union(m[b])) {
                    hibi.push(HibiRelation { a, b, meet: index[&m[a].intersection(m[b])], join });
                }
            }
        }
        for p in 0..family.poset.len() {
            if !m[a].contains(p) {
                if let Some(&upper) = index.get(&m[a].with(p)) {
                    special_linear.push(SpecialLinear { element: p, lower: a, upper });
                }
            }
        }
    }
    special_linear.sort();
    let pres = ReesPresentation { ring: family.ring(), hibi, special_linear };
    let map = pres.ring.rees_map();
    let order = pres.ring.product_lex1(None);
    if let Some(bad) = pres.binomials(&order).iter().find(|b| !map.same_multidegree(b)) {
        return Err(Error::Defect(format!("{} is not in the kernel", pres.ring.format(bad))));
    }
    Ok(pres)
}

#[derive(Debug, Clone)]
pub struct ReesCheck {
    pub holds: bool,
    /// The family is closed under union, so the presentation must generate
    /// the whole kernel.
    pub lattice_mode: bool,
    pub presentation: ReesPresentation,
    pub order: TermOrder,
    pub basis: Vec<Binomial>,
    /// First reduced basis element outside the presentation.
    pub extra: Option<Binomial>,
    /// First presentation element missing from the reduced basis.
    pub missing: Option<Binomial>,
}

/// Compares the reduced basis of the Rees ideal under the product lex order
/// with the Hibi and special linear relations. For union-closed families the
/// basis of the presentation must equal the elimination-computed kernel.
pub fn rees_gb_check(family: &DownSetFamily, degree_cap: u32) -> Result<ReesCheck> {
    let presentation = rees_presentation(family)?;
    let ring = &presentation.ring;
    let order = ring.product_lex1(None);
    let mut gens = presentation.binomials(&order);
    sort_basis(&mut gens, &order);
    let kernel = toric_kernel(&ring.rees_map(), &[ring.t()], &order, degree_cap)?;
    let lattice_mode = family.is_union_closed();
    if lattice_mode {
        let from_presentation = buchberger(&gens, &order, degree_cap)?.elements;
        if from_presentation != kernel {
            return Err(Error::KernelMismatch(format!(
                "presentation basis has {} elements, kernel basis has {}",
                from_presentation.len(),
                kernel.len()
            )));
        }
    }
    let in_gens: HashSet<&Binomial> = gens.iter().collect();
    let in_basis: HashSet<&Binomial> = kernel.iter().collect();
    let extra = kernel.iter().find(|g| !in_gens.contains(g)).cloned();
    let missing = gens.iter().find(|g| !in_basis.contains(g)).cloned();
    Ok(ReesCheck {
        holds: extra.is_none() && missing.is_none(),
        lattice_mode,
        order,
        basis: kernel,
        extra,
        missing,
        presentation,
    })
}

/// Poset ideals of `lhat` (an ideal lattice) that contain every
/// join-irreducible, so their associated lattice is `lhat` itself. The last
/// entry is `lhat`.
pub fn corollary_subsemilattices(lhat: &Lattice) -> Result<Vec<DownSetFamily>> {
    let origin = lhat.origin().ok_or(Error::NotPosetIdeal)?;
    let below: Vec<u64> =
        (0..lhat.size()).map(|b| (0..lhat.size()).filter(|&a| lhat.leq(a, b)).fold(0u64, |m, a| m | 1 << a)).collect();
    let as_poset = Poset::from_below_masks(below);
    let jis: u64 = lhat.join_irreducible_ids().iter().fold(0u64, |m, &a| m | 1 << a);
    let mut out = Vec::new();
    for ideal in as_poset.enumerate_down_sets(&Bounds { max_poset_size: 64, ..Bounds::default() })? {
        if jis & !ideal.bits() != 0 {
            continue;
        }
        let elements: Vec<usize> = ideal.iter().collect();
        let s = MeetSemilattice::from_lattice_subset(lhat, &elements)?;
        let assoc = associated_distributive_lattice(&s)?;
        if !is_isomorphic(&assoc.lattice, lhat) || !assoc.is_poset_ideal {
            return Err(Error::Defect("sub-semilattice does not recover its lattice".into()));
        }
        out.push(DownSetFamily {
            poset: origin.poset.clone(),
            members: elements.iter().map(|&a| origin.down_sets[a]).collect(),
        });
    }
    Ok(out)
}
