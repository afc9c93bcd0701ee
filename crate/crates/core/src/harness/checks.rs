//! Per-poset condition vectors for every equivalence, each condition computed
//! on its own, plus structural invariants.

use std::collections::BTreeMap;

use serde::Serialize;
use serde_json::{json, Value};

use crate::error::{Error, Result};
use crate::gb::{groebner_violation, sort_basis};
use crate::grid::{corner_cover_sensitivity, grid_embedding, is_grid_iso, GridImage, GridPoint};
use crate::hibi::{
    all_hibi_indispensable, defense_condition_c, defense_condition_d, defense_gb_check, defense_quadratic_check,
    hibi_relations, rees_gb_check, DownSetFamily, HibiRing,
};
use crate::lattice::{
    complement_in_interval, is_conditionally_urc, is_isomorphic, is_urc, Complement, Interval, Lattice,
};
use crate::poset::{
    two_chain_cover_inductive, two_chain_cover_matching, Bounds, ChainCover, DownSet, Poset,
};

/// Deliberately wrong classifiers for testing the harness itself.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Mutation {
    #[default]
    None,
    /// Uses URC where conditional URC is asked for.
    UrcForConditionalUrc,
    /// Accepts grid images with critical corners.
    IgnoreCriticalCorners,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct Toggles {
    pub hot: bool,
    pub defense: bool,
    pub rees: bool,
    pub urc: bool,
    pub hibi_gb: bool,
    pub invariants: bool,
}

impl Default for Toggles {
    fn default() -> Self {
        Toggles { hot: true, defense: true, rees: true, urc: true, hibi_gb: true, invariants: true }
    }
}

/// Settings shared by [`check_equivalences`] and the campaign runner.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Campaign {
    pub max_poset_size: usize,
    pub tiebreak_sweep: bool,
    /// Lattices above this size are skipped by the tie-break sweep.
    pub tiebreak_max_lattice: usize,
    pub degree_cap: u32,
    pub jobs: usize,
    pub toggles: Toggles,
    /// Rees checks run only on posets up to this size.
    pub rees_max_poset: usize,
    /// Non-distributive lattices are enumerated up to this size.
    pub lattice_max_size: usize,
    pub iso: bool,
    pub mutation: Mutation,
    pub timing: bool,
}

impl Default for Campaign {
    fn default() -> Self {
        Campaign {
            max_poset_size: 4,
            tiebreak_sweep: false,
            tiebreak_max_lattice: 7,
            degree_cap: crate::gb::DEFAULT_DEGREE_CAP,
            jobs: 1,
            toggles: Toggles::default(),
            rees_max_poset: 4,
            lattice_max_size: 8,
            iso: false,
            mutation: Mutation::None,
            timing: false,
        }
    }
}

/// One theorem's conditions with witnesses. `consistent` is the verdict the
/// harness asserts: normally that all conditions agree.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Certificate {
    pub theorem: &'static str,
    pub conditions: BTreeMap<&'static str, bool>,
    pub witnesses: BTreeMap<&'static str, Value>,
    #[serde(skip)]
    pub consistent: bool,
}

impl Certificate {
    fn new(theorem: &'static str) -> Certificate {
        Certificate { theorem, conditions: BTreeMap::new(), witnesses: BTreeMap::new(), consistent: true }
    }

    fn set(&mut self, key: &'static str, value: bool) {
        self.conditions.insert(key, value);
    }

    fn witness(&mut self, key: &'static str, value: Value) {
        if !value.is_null() {
            self.witnesses.insert(key, value);
        }
    }

    fn all_equal(&self) -> bool {
        let mut v = self.conditions.values();
        v.next().is_none_or(|first| v.all(|x| x == first))
    }

    /// The common value when all conditions agree.
    pub fn verdict(&self) -> Option<bool> {
        self.all_equal().then(|| self.conditions.values().next().copied().unwrap_or(true))
    }

    pub fn vector(&self) -> Vec<bool> {
        self.conditions.values().copied().collect()
    }
}

/// A poset whose certificate failed, with the certificate.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Counterexample {
    pub poset: String,
    pub certificate: Certificate,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct TiebreakOutcome {
    pub orders: usize,
    /// Verdict of the reduced-basis test under each rank-compatible order.
    pub verdicts: Vec<bool>,
}

impl TiebreakOutcome {
    pub fn order_dependent(&self) -> bool {
        self.verdicts.iter().any(|&v| v != self.verdicts[0])
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct PosetRecord {
    pub poset: String,
    pub lattice_size: usize,
    pub certificates: Vec<Certificate>,
    pub tiebreaks: Option<TiebreakOutcome>,
    /// Corner kinds agree across every two-chain cover; absent for width three.
    pub cover_consistent: Option<bool>,
}

impl PosetRecord {
    pub fn counterexamples(&self) -> Vec<Counterexample> {
        self.certificates
            .iter()
            .filter(|c| !c.consistent)
            .map(|c| Counterexample { poset: self.poset.clone(), certificate: c.clone() })
            .collect()
    }

    pub fn certificate(&self, theorem: &str) -> Option<&Certificate> {
        self.certificates.iter().find(|c| c.theorem == theorem)
    }
}

/// `p1<p3,p2<p3` style listing of the cover relations; elements without
/// covers are listed bare.
pub fn describe(poset: &Poset) -> String {
    let mut parts: Vec<String> =
        poset.covers().iter().map(|&(a, b)| format!("{}<{}", poset.label(a), poset.label(b))).collect();
    for i in 0..poset.len() {
        if poset.covers().iter().all(|&(a, b)| a != i && b != i) {
            parts.push(poset.label(i).to_string());
        }
    }
    format!("{}:{{{}}}", poset.len(), parts.join(","))
}

fn down_set_json(poset: &Poset, a: DownSet) -> Value {
    json!(a.iter().map(|i| poset.label(i)).collect::<Vec<_>>())
}

fn cover_json(poset: &Poset, cover: &ChainCover) -> Value {
    let names = |c: &[usize]| c.iter().map(|&i| poset.label(i).to_string()).collect::<Vec<_>>();
    json!({ "c": names(&cover.chain_c), "d": names(&cover.chain_d) })
}

/// Every condition of every enabled theorem for the ideal lattice of `poset`.
pub fn check_equivalences(poset: &Poset, cfg: &Campaign) -> Result<PosetRecord> {
    let lattice = Lattice::ideal_lattice(poset, &Bounds::default())?;
    let mut certificates = Vec::new();
    let t = cfg.toggles;
    let cond_urc = is_conditionally_urc(&lattice).holds;
    if t.hot {
        certificates.push(hot_certificate(poset, &lattice, cfg.mutation)?);
    }
    if t.defense {
        certificates.push(defense_certificate(&lattice, cond_urc, cfg)?);
    }
    if t.rees && poset.len() <= cfg.rees_max_poset {
        certificates.push(rees_certificate(&lattice, cfg.degree_cap)?);
    }
    if t.urc {
        certificates.push(urc_certificate(&lattice));
    }
    if t.hibi_gb {
        certificates.push(hibi_gb_certificate(&lattice)?);
    }
    if t.invariants {
        certificates.push(invariants_certificate(poset, &lattice)?);
    }
    let tiebreaks = (cfg.tiebreak_sweep && lattice.size() <= cfg.tiebreak_max_lattice).then(|| tiebreak_sweep(&lattice));
    let cover_consistent =
        if poset.width_le_two().holds { Some(corner_cover_sensitivity(poset)?.consistent) } else { None };
    Ok(PosetRecord { poset: describe(poset), lattice_size: lattice.size(), certificates, tiebreaks, cover_consistent })
}

/// Condition vectors for an abstract lattice: the revlex criterion and the
/// URC classification, with distributivity decided by the lattice laws.
pub fn check_lattice(lattice: &Lattice) -> Result<Vec<Certificate>> {
    let mut gb = hibi_gb_certificate(lattice)?;
    gb.theorem = "hibi_gb";
    let mut urc = Certificate::new("urc_distributive");
    let u = is_urc(lattice);
    let distributive = lattice.is_distributive()?.distributive;
    urc.set("urc", u.holds);
    urc.set("distributive", distributive);
    urc.consistent = !u.holds || distributive;
    Ok(vec![gb, urc])
}

/// Hibi relations indispensable; conditionally URC; downsets generated by two
/// elements; a cover by two chains; a full-sublattice grid embedding.
pub fn hot_certificate(poset: &Poset, lattice: &Lattice, mutation: Mutation) -> Result<Certificate> {
    let mut c = Certificate::new("hot");
    let ind = all_hibi_indispensable(lattice)?;
    c.set("a", ind.holds);
    c.witness("a", ind.witness.map_or(Value::Null, |r| json!(r)));

    let cond = if mutation == Mutation::UrcForConditionalUrc {
        let u = is_urc(lattice);
        (u.holds, u.witness.map_or(Value::Null, |iv| json!(iv)))
    } else {
        let u = is_conditionally_urc(lattice);
        (u.holds, u.witness.map_or(Value::Null, |w| json!(w)))
    };
    c.set("b", cond.0);
    c.witness("b", cond.1);

    let downs = poset.enumerate_down_sets(&Bounds::default())?;
    let wide = downs.iter().find(|&&a| poset.minimal_generators(a).len() > 2);
    c.set("c", wide.is_none());
    c.witness("c", wide.map_or(Value::Null, |&a| down_set_json(poset, a)));

    let inductive = two_chain_cover_inductive(poset);
    let matching = two_chain_cover_matching(poset);
    if inductive.is_some() != matching.is_some() {
        return Err(Error::InternalDisagreement(format!(
            "{}: inductive cover {inductive:?}, matching cover {matching:?}",
            describe(poset)
        )));
    }
    if let Some(cover) = &inductive {
        cover.validate(poset)?;
    }
    c.set("d", inductive.is_some());
    c.witness("d", inductive.as_ref().map_or(Value::Null, |cv| cover_json(poset, cv)));

    let embedding = brute_force_grid_embedding(poset, &downs);
    c.set("e", embedding.is_some());
    c.witness("e", embedding.map_or(Value::Null, |(cm, image)| json!({ "c": down_set_json(poset, DownSet::from_bits(cm)), "points": image.points })));
    c.consistent = c.all_equal();
    Ok(c)
}

/// Tries `a -> (|a ∩ C|, |a ∩ P∖C|)` for every subset `C`, chains or not,
/// and returns the first that is injective, preserves meet and join, and
/// has a full-sublattice image.
pub fn brute_force_grid_embedding(poset: &Poset, downs: &[DownSet]) -> Option<(u64, GridImage)> {
    let n = poset.len();
    let full = poset.full().bits();
    (0..1u64 << n).find_map(|cm| {
        let dm = full & !cm;
        let phi = |a: DownSet| GridPoint::new((a.bits() & cm).count_ones() as usize, (a.bits() & dm).count_ones() as usize);
        let at: BTreeMap<DownSet, GridPoint> = downs.iter().map(|&a| (a, phi(a))).collect();
        let image = GridImage::new(cm.count_ones() as usize, dm.count_ones() as usize, at.values().copied());
        if image.points.len() != downs.len() {
            return None;
        }
        let hom = downs.iter().all(|&a| {
            downs.iter().all(|&b| {
                phi(a.intersection(b)) == at[&a].min(at[&b]) && phi(a.union(b)) == at[&a].max(at[&b])
            })
        });
        (hom && image.is_full_sublattice()).then_some((cm, image))
    })
}

/// Conditions of the rank-lex classification, for conditionally URC lattices.
/// Otherwise only the first condition is computed and it must fail.
pub fn defense_certificate(lattice: &Lattice, cond_urc: bool, cfg: &Campaign) -> Result<Certificate> {
    let mut c = Certificate::new("defense");
    let gb = defense_gb_check(lattice, None);
    c.set("a", gb.holds);
    let ring = HibiRing::for_lattice(lattice);
    c.witness(
        "a",
        gb.violation.as_ref().map_or(Value::Null, |(f, g, r)| {
            json!({ "f": ring.format(f), "g": ring.format(g), "normal_form": ring.format(r) })
        }),
    );
    if !cond_urc {
        c.consistent = !gb.holds;
        return Ok(c);
    }
    let q = defense_quadratic_check(lattice, None, cfg.degree_cap)?;
    c.set("b", q.holds);
    c.witness("b", q.witness.as_ref().map_or(Value::Null, |w| json!(ring.format(w))));
    let cc = defense_condition_c(lattice);
    c.set("c", cc.holds);
    c.witness("c", cc.witness.map_or(Value::Null, |w| json!(w)));
    let d = defense_condition_d(lattice)?;
    let d_holds = match cfg.mutation {
        Mutation::IgnoreCriticalCorners => d.embedded && d.chain_ladder.as_ref().is_some_and(|l| l.holds),
        _ => d.holds,
    };
    c.set("d", d_holds);
    c.witness("d", d.critical_corner.map_or(Value::Null, |k| json!({ "critical_corner": k })));
    if let Some(l) = d.chain_ladder.as_ref().filter(|l| !l.holds) {
        c.witness("d_ladder", json!(l.witness));
    }
    c.consistent = c.all_equal();
    Ok(c)
}

/// URC against the Rees basis test under the product lex order.
pub fn rees_certificate(lattice: &Lattice, degree_cap: u32) -> Result<Certificate> {
    let mut c = Certificate::new("rees");
    let u = is_urc(lattice);
    c.set("a", u.holds);
    c.witness("a", u.witness.map_or(Value::Null, |iv| json!(iv)));
    let family = DownSetFamily::from_lattice(lattice)?;
    let r = rees_gb_check(&family, degree_cap)?;
    c.set("b", r.holds);
    let ring = &r.presentation.ring;
    c.witness("b", r.extra.as_ref().map_or(Value::Null, |e| json!({ "extra": ring.format(e) })));
    c.consistent = c.all_equal();
    Ok(c)
}

/// URC; join-irreducibles form a chain or two incomparable chains; the
/// lattice is a full grid.
pub fn urc_certificate(lattice: &Lattice) -> Certificate {
    let mut c = Certificate::new("urc");
    let u = is_urc(lattice);
    c.set("a", u.holds);
    c.witness("a", u.witness.map_or(Value::Null, |iv: Interval| json!(iv)));
    c.set("b", chains_apart(&lattice.join_irreducibles()));
    let g = is_grid_iso(lattice);
    c.set("c", g.is_some());
    c.witness("c", g.map_or(Value::Null, |(m, n)| json!([m, n])));
    c.consistent = c.all_equal();
    c
}

/// At most two comparability components, each a chain.
fn chains_apart(poset: &Poset) -> bool {
    let n = poset.len();
    let mut component = vec![usize::MAX; n];
    let mut count = 0;
    for s in 0..n {
        if component[s] != usize::MAX {
            continue;
        }
        let mut stack = vec![s];
        component[s] = count;
        while let Some(x) = stack.pop() {
            for y in 0..n {
                if component[y] == usize::MAX && poset.comparable(x, y) {
                    component[y] = count;
                    stack.push(y);
                }
            }
        }
        count += 1;
    }
    count <= 2
        && (0..count).all(|k| {
            let members: Vec<usize> = (0..n).filter(|&x| component[x] == k).collect();
            poset.is_chain(&members)
        })
}

/// Distributivity against the Buchberger criterion for the Hibi relations
/// under rank revlex.
pub fn hibi_gb_certificate(lattice: &Lattice) -> Result<Certificate> {
    let mut c = Certificate::new("hibi_gb");
    let d = lattice.is_distributive()?;
    c.set("a", d.distributive);
    c.witness("a", d.sublattice_witness.map_or(Value::Null, |w| json!(w)));
    let ring = HibiRing::for_lattice(lattice);
    let order = ring.rank_revlex(None);
    let mut h = hibi_relations(lattice).binomials(&ring, &order);
    sort_basis(&mut h, &order);
    let v = groebner_violation(&h, &order);
    c.set("b", v.is_none());
    c.witness("b", v.map_or(Value::Null, |(f, g, r)| json!({ "f": ring.format(&f), "g": ring.format(&g), "normal_form": ring.format(&r) })));
    c.consistent = c.all_equal();
    Ok(c)
}

/// Structural facts every ideal lattice must satisfy; each condition must hold.
pub fn invariants_certificate(poset: &Poset, lattice: &Lattice) -> Result<Certificate> {
    let mut c = Certificate::new("invariants");
    let ji = lattice.join_irreducibles();
    let round_trip = Lattice::ideal_lattice(&ji, &Bounds::default())?;
    c.set("birkhoff", is_isomorphic(&ji, poset) && is_isomorphic(&round_trip, lattice));

    let urc = is_urc(lattice).holds;
    let distributive = lattice.is_distributive()?.distributive;
    c.set("urc_distributive", !urc || distributive);
    let cond_urc = is_conditionally_urc(lattice).holds;
    c.set("urc_conditional", !urc || cond_urc);

    let nb = lattice.neighbor_bounds();
    c.set("neighbors", cond_urc == (nb.max_lower <= 2) && cond_urc == (nb.max_upper <= 2));

    let width = poset.width_le_two().holds;
    let inductive = two_chain_cover_inductive(poset);
    let matching = two_chain_cover_matching(poset);
    let valid = |cv: &Option<ChainCover>| cv.as_ref().is_none_or(|cv| cv.validate(poset).is_ok());
    c.set(
        "dilworth",
        width == inductive.is_some() && width == matching.is_some() && valid(&inductive) && valid(&matching),
    );

    let downs = poset.enumerate_down_sets(&Bounds::default())?;
    let closure = downs.iter().all(|&a| poset.minimal_generators(a).iter().all(|&p| poset.is_down_set(a.without(p))));
    c.set("down_set_closure", closure);
    let generators = downs.iter().all(|&a| {
        let g = poset.minimal_generators(a);
        poset.generated(g.iter().copied()) == a && g.iter().all(|&p| g.iter().all(|&q| p == q || !poset.comparable(p, q)))
    });
    c.set("minimal_generators", generators);

    let n = lattice.size();
    let unique = (0..n).all(|lo| {
        (0..n).filter(|&hi| lattice.leq(lo, hi)).all(|hi| {
            let iv = Interval { lo, hi };
            (0..n).all(|x| !matches!(complement_in_interval(lattice, iv, x), Complement::Multiple(_)))
        })
    });
    c.set("complement_uniqueness", unique);

    let embedded = match &inductive {
        Some(cover) => grid_embedding(poset, cover).map(|e| e.is_full_sublattice()).unwrap_or(false),
        None => true,
    };
    c.set("cover_embedding", embedded);
    c.consistent = c.conditions.values().all(|&v| v);
    Ok(c)
}

/// Reduced-basis test of the Hibi relations under every rank-compatible
/// lexicographic order.
pub fn tiebreak_sweep(lattice: &Lattice) -> TiebreakOutcome {
    let ranks: Vec<usize> = (0..lattice.size()).map(|a| lattice.rank(a)).collect();
    let verdicts: Vec<bool> = crate::gb::rank_compatible_orders(&ranks)
        .iter()
        .map(|asc| defense_gb_check(lattice, Some(asc)).holds)
        .collect();
    TiebreakOutcome { orders: verdicts.len(), verdicts }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn poset(elements: &[&str], covers: &[(&str, &str)]) -> Poset {
        Poset::build(elements, covers).unwrap()
    }

    fn bowtie() -> Poset {
        poset(&["a", "b", "c", "d"], &[("a", "c"), ("a", "d"), ("b", "c"), ("b", "d")])
    }

    fn cfg() -> Campaign {
        Campaign::default()
    }

    #[test]
    fn antichain_three() {
        let r = check_equivalences(&poset(&["p1", "p2", "p3"], &[]), &cfg()).unwrap();
        assert_eq!(r.certificate("hot").unwrap().vector(), vec![false; 5]);
        assert!(r.counterexamples().is_empty());
    }

    #[test]
    fn bowtie_vectors() {
        let r = check_equivalences(&bowtie(), &cfg()).unwrap();
        assert_eq!(r.certificate("hot").unwrap().vector(), vec![true; 5]);
        assert_eq!(r.certificate("defense").unwrap().vector(), vec![false; 4]);
        assert_eq!(r.certificate("rees").unwrap().vector(), vec![false; 2]);
        assert!(r.counterexamples().is_empty());
    }

    #[test]
    fn two_incomparable_points() {
        let r = check_equivalences(&poset(&["p", "q"], &[]), &cfg()).unwrap();
        assert_eq!(r.certificate("urc").unwrap().vector(), vec![true; 3]);
        assert_eq!(r.certificate("rees").unwrap().vector(), vec![true; 2]);
    }

    #[test]
    fn mutations_are_caught() {
        let mut c = cfg();
        c.mutation = Mutation::UrcForConditionalUrc;
        assert!(!check_equivalences(&bowtie(), &c).unwrap().counterexamples().is_empty());
        c.mutation = Mutation::IgnoreCriticalCorners;
        assert!(!check_equivalences(&bowtie(), &c).unwrap().counterexamples().is_empty());
    }

    #[test]
    fn describe_lists_isolated_points() {
        assert_eq!(describe(&poset(&["a", "b", "c"], &[("a", "b")])), "3:{a<b,c}");
    }

    #[test]
    fn chains_apart_shapes() {
        assert!(chains_apart(&poset(&["a", "b", "c"], &[("a", "b")])));
        assert!(!chains_apart(&poset(&["a", "b", "c"], &[])));
        assert!(!chains_apart(&bowtie()));
    }
}
