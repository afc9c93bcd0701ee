//! Buchberger's algorithm for pure-difference binomials.
//!
//! Every polynomial here is `u - v` for monomials `u != v`, so S-polynomials
//! and reductions stay binomial and no coefficients are ever stored.

use std::cmp::{Ordering, Reverse};
use std::collections::BinaryHeap;

use super::monomial::{Binomial, Monomial};
use super::order::TermOrder;
use crate::error::{Error, Result};

pub const DEFAULT_DEGREE_CAP: u32 = 12;

/// The cap from `HIBI_DEGREE_CAP` if set and valid, else the default.
pub fn degree_cap_from_env() -> u32 {
    std::env::var("HIBI_DEGREE_CAP").ok().and_then(|s| s.trim().parse().ok()).unwrap_or(DEFAULT_DEGREE_CAP)
}

/// `u - v` oriented so the lead is larger; `None` when `u == v`.
pub fn binomial(u: Monomial, v: Monomial, order: &TermOrder) -> Option<Binomial> {
    match order.cmp(&u, &v) {
        Ordering::Greater => Some(Binomial { lead: u, trail: v }),
        Ordering::Less => Some(Binomial { lead: v, trail: u }),
        Ordering::Equal => None,
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum SPoly {
    /// Leads are coprime; the pair is skipped.
    Coprime,
    Zero,
    Binomial(Binomial),
}

pub fn spoly(f: &Binomial, g: &Binomial, order: &TermOrder) -> SPoly {
    if f.lead.is_coprime(&g.lead) {
        return SPoly::Coprime;
    }
    let l = f.lead.lcm(&g.lead);
    let a = l.div(&f.lead).mul(&f.trail);
    let b = l.div(&g.lead).mul(&g.trail);
    match binomial(a, b, order) {
        Some(s) => SPoly::Binomial(s),
        None => SPoly::Zero,
    }
}

/// Rewrites `m` by basis leads until no lead divides it.
pub fn monomial_normal_form(m: &Monomial, basis: &[Binomial], order: &TermOrder) -> Monomial {
    let mut m = m.clone();
    while let Some(g) = basis.iter().find(|g| g.lead.divides(&m)) {
        let next = m.div(&g.lead).mul(&g.trail);
        debug_assert_eq!(order.cmp(&next, &m), Ordering::Less);
        m = next;
    }
    m
}

/// Full normal form; `None` when `f` reduces to zero.
pub fn normal_form(f: &Binomial, basis: &[Binomial], order: &TermOrder) -> Option<Binomial> {
    let lead = monomial_normal_form(&f.lead, basis, order);
    let trail = monomial_normal_form(&f.trail, basis, order);
    let r = binomial(lead, trail, order)?;
    assert!(
        !basis.iter().any(|g| g.lead.divides(&r.lead) || g.lead.divides(&r.trail)),
        "normal form is not irreducible"
    );
    Some(r)
}

#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct GbStats {
    pub pairs: usize,
    pub coprime_skipped: usize,
    pub zero_reductions: usize,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GroebnerBasis {
    /// Reduced basis, sorted by lead then trail in the order.
    pub elements: Vec<Binomial>,
    pub stats: GbStats,
}

/// Reduced Gröbner basis of the ideal generated by `gens`. Pairs are
/// processed by increasing lcm degree, then by the lcm in the order.
pub fn buchberger(gens: &[Binomial], order: &TermOrder, degree_cap: u32) -> Result<GroebnerBasis> {
    let mut basis: Vec<Binomial> = Vec::new();
    for g in gens {
        if g.lead.nvars() != order.nvars() {
            return Err(Error::IncompatibleVariables { left: g.lead.nvars(), right: order.nvars() });
        }
        if let Some(b) = binomial(g.lead.clone(), g.trail.clone(), order) {
            if !basis.contains(&b) {
                basis.push(b);
            }
        }
    }
    let mut stats = GbStats::default();
    let mut queue = BinaryHeap::new();
    let push_pairs = |queue: &mut BinaryHeap<_>, basis: &[Binomial], j: usize| {
        for i in 0..j {
            let l = basis[i].lead.lcm(&basis[j].lead);
            queue.push(Reverse((l.degree(), order.sort_key(&l), i, j)));
        }
    };
    for j in 0..basis.len() {
        push_pairs(&mut queue, &basis, j);
    }
    while let Some(Reverse((deg, _, i, j))) = queue.pop() {
        stats.pairs += 1;
        let s = match spoly(&basis[i], &basis[j], order) {
            SPoly::Coprime => {
                stats.coprime_skipped += 1;
                continue;
            }
            SPoly::Zero => {
                stats.zero_reductions += 1;
                continue;
            }
            SPoly::Binomial(s) => s,
        };
        if deg > degree_cap {
            return Err(Error::DegreeCapExceeded { cap: degree_cap, degree: deg });
        }
        match normal_form(&s, &basis, order) {
            None => stats.zero_reductions += 1,
            Some(r) => {
                if r.degree() > degree_cap {
                    return Err(Error::DegreeCapExceeded { cap: degree_cap, degree: r.degree() });
                }
                basis.push(r);
                push_pairs(&mut queue, &basis, basis.len() - 1);
            }
        }
    }
    let elements = reduce_basis(&basis, order);
    if let Some((f, g, r)) = groebner_violation(&elements, order) {
        return Err(Error::Defect(format!("reduced basis fails the S-pair test: ({f:?}, {g:?}) -> {r:?}")));
    }
    Ok(GroebnerBasis { elements, stats })
}

/// Interreduces a Gröbner basis: drops elements whose lead is divisible by
/// another lead and reduces every trail.
pub fn reduce_basis(basis: &[Binomial], order: &TermOrder) -> Vec<Binomial> {
    let mut minimal: Vec<Binomial> = Vec::new();
    for (k, g) in basis.iter().enumerate() {
        let redundant = basis.iter().enumerate().any(|(j, h)| {
            j != k && h.lead.divides(&g.lead) && (h.lead != g.lead || j < k)
        });
        if !redundant {
            minimal.push(g.clone());
        }
    }
    let mut reduced: Vec<Binomial> = minimal
        .iter()
        .map(|g| {
            let trail = monomial_normal_form(&g.trail, &minimal, order);
            binomial(g.lead.clone(), trail, order).expect("a minimal basis element never reduces to zero")
        })
        .collect();
    sort_basis(&mut reduced, order);
    reduced
}

pub fn sort_basis(basis: &mut [Binomial], order: &TermOrder) {
    basis.sort_by(|a, b| order.cmp(&a.lead, &b.lead).then_with(|| order.cmp(&a.trail, &b.trail)));
}

/// The first pair whose S-polynomial has a nonzero normal form, with that
/// normal form. `None` means `basis` passes Buchberger's criterion.
pub fn groebner_violation(basis: &[Binomial], order: &TermOrder) -> Option<(Binomial, Binomial, Binomial)> {
    for (j, g) in basis.iter().enumerate() {
        for f in &basis[..j] {
            if let SPoly::Binomial(s) = spoly(f, g, order) {
                if let Some(r) = normal_form(&s, basis, order) {
                    return Some((f.clone(), g.clone(), r));
                }
            }
        }
    }
    None
}

pub fn is_groebner_basis(basis: &[Binomial], order: &TermOrder) -> bool {
    groebner_violation(basis, order).is_none()
}

/// No lead divides another element's lead or trail.
pub fn is_reduced(basis: &[Binomial]) -> bool {
    basis.iter().enumerate().all(|(k, g)| {
        basis.iter().enumerate().all(|(j, h)| j == k || !(h.lead.divides(&g.lead) || h.lead.divides(&g.trail)))
    })
}

/// Whether `f` lies in the ideal whose Gröbner basis is `basis`.
pub fn ideal_contains(basis: &[Binomial], f: &Binomial, order: &TermOrder) -> bool {
    normal_form(f, basis, order).is_none()
}
