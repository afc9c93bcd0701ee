//! Acceptance suite: one line per criterion, nonzero exit if any fails.

use std::collections::HashSet;
use std::process::ExitCode;
use std::time::{Duration, Instant};

use hibi_core::gb::{buchberger, spoly, toric_kernel, Binomial, SPoly, Variable};
use hibi_core::grid::{lattice_grid_embedding, CornerKind, GridPoint};
use hibi_core::harness::{run_campaign, Campaign, EquivalenceReport, Toggles};
use hibi_core::hibi::{
    all_hibi_indispensable, corollary_subsemilattices, defense_condition_c, defense_condition_d, defense_gb_check,
    defense_gb_witness, defense_quadratic_check, hibi_relations, quad_fiber, rees_gb_check, HibiRing,
};
use hibi_core::lattice::{complementary_sets, is_complemented, Interval, Lattice};
use hibi_core::poset::{Bounds, Poset};

const DEGREE_CAP: u32 = 12;
const CORPUS_N: usize = 5;
const REES_N: usize = 4;
const ORACLE_N: usize = 4;
const LATTICE_MAX: usize = 8;
const WORKERS: usize = 8;

const LIMIT_1: Duration = Duration::from_secs(1);
const LIMIT_2_SEQUENTIAL: Duration = Duration::from_secs(600);
const LIMIT_2_PARALLEL: Duration = Duration::from_secs(120);
const LIMIT_3: Duration = Duration::from_secs(600);
const LIMIT_4: Duration = Duration::from_secs(900);
const LIMIT_5: Duration = Duration::from_secs(900);
const LIMIT_6: Duration = Duration::from_secs(60);
const LIMIT_7: Duration = Duration::from_secs(300);
const LIMIT_8: Duration = Duration::from_secs(300);

type Outcome = Result<String, String>;

fn ensure(cond: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg())
    }
}

fn ideal(elements: &[&str], covers: &[(&str, &str)]) -> Lattice {
    Lattice::ideal_lattice(&Poset::build(elements, covers).unwrap(), &Bounds::default()).unwrap()
}

fn only(toggle: impl Fn(&mut Toggles)) -> Toggles {
    let mut t = Toggles { hot: false, defense: false, rees: false, urc: false, hibi_gb: false, invariants: false };
    toggle(&mut t);
    t
}

fn campaign(max_n: usize, toggles: Toggles, jobs: usize) -> Result<EquivalenceReport, String> {
    let cfg = Campaign {
        max_poset_size: max_n,
        toggles,
        jobs,
        degree_cap: DEGREE_CAP,
        rees_max_poset: REES_N,
        lattice_max_size: LATTICE_MAX,
        ..Campaign::default()
    };
    run_campaign(&cfg).map_err(|e| e.to_string())
}

fn clean(r: &EquivalenceReport, theorem: &str) -> Result<(), String> {
    ensure(r.defects.is_empty(), || format!("{} defects, first: {}", r.defects.len(), r.defects[0]))?;
    ensure(r.counterexamples.is_empty(), || {
        let c = &r.counterexamples[0];
        format!("{} counterexamples to {theorem}, first: {} {:?}", r.counterexamples.len(), c.poset, c.certificate.conditions)
    })
}

fn criterion_1() -> Outcome {
    let l = ideal(&["p1", "p2", "p3"], &[]);
    let fiber = quad_fiber(&l, l.bottom(), l.top()).map_err(|e| e.to_string())?;
    ensure(fiber.len() == 4, || format!("top fiber has {} monomials", fiber.len()))?;
    let check = all_hibi_indispensable(&l).map_err(|e| e.to_string())?;
    ensure(!check.holds, || "Hibi relations reported indispensable".into())?;
    let w = check.witness.ok_or("no witness")?;
    ensure((w.meet, w.join) == (l.bottom(), l.top()), || format!("witness {w:?} outside the top fiber"))?;
    Ok(format!("fiber of z_0 z_7 has 4 monomials; dispensable z_{} z_{} - z_{} z_{}", w.a, w.b, w.meet, w.join))
}

fn criterion_2() -> Outcome {
    let toggles = only(|t| t.hibi_gb = true);
    let start = Instant::now();
    let seq = campaign(CORPUS_N, toggles, 1)?;
    let seq_time = start.elapsed();
    let start = Instant::now();
    let par = campaign(CORPUS_N, toggles, WORKERS)?;
    let par_time = start.elapsed();
    clean(&seq, "the revlex criterion")?;
    let t = &seq.tallies["hibi_gb"];
    ensure(t.all_true == seq.poset_count, || format!("{} of {} posets pass", t.all_true, seq.poset_count))?;
    let lt = &seq.tallies["lattice_hibi_gb"];
    ensure(lt.inconsistent == 0, || "a lattice disagrees".into())?;
    ensure(seq.records == par.records && seq.tallies == par.tallies, || "1 and 8 workers disagree".into())?;
    ensure(seq_time < LIMIT_2_SEQUENTIAL, || format!("sequential run took {seq_time:?}"))?;
    ensure(par_time < LIMIT_2_PARALLEL, || format!("parallel run took {par_time:?}"))?;
    Ok(format!(
        "{} posets pass, {} non-distributive lattices fail, {} distributive lattices pass; {:.1}s / {:.1}s at {WORKERS} workers",
        seq.poset_count,
        seq.non_distributive_lattices,
        lt.all_true,
        seq_time.as_secs_f64(),
        par_time.as_secs_f64()
    ))
}

fn criterion_3() -> Outcome {
    let r = campaign(CORPUS_N, only(|t| t.hot = true), 1)?;
    clean(&r, "the five conditions")?;
    let t = &r.tallies["hot"];
    Ok(format!("{} posets agree ({} all true, {} all false); fiber and span oracles agree", r.poset_count, t.all_true, t.all_false))
}

fn in_kernel(ring: &HibiRing, b: &Binomial) -> bool {
    ring.hibi_map().same_multidegree(b)
}

fn bowtie_witnesses() -> Result<(), String> {
    let l = ideal(&["a", "b", "c", "d"], &[("a", "c"), ("a", "d"), ("b", "c"), ("b", "d")]);
    let ring = HibiRing::for_lattice(&l);
    let order = ring.rank_lex(None);
    let hibi: Vec<Binomial> = hibi_relations(&l).binomials(&ring, &order);
    ensure(!defense_gb_check(&l, None).holds, || "bowtie: Hibi relations form the reduced basis".into())?;
    let extra = defense_gb_witness(&l, None, DEGREE_CAP).map_err(|e| e.to_string())?.ok_or("bowtie: no extra basis element")?;
    ensure(in_kernel(&ring, &extra) && !hibi.contains(&extra), || "bowtie: extra element is not a new kernel element".into())?;
    ensure(hibi.iter().all(|h| !h.lead.divides(&extra.lead)), || "bowtie: extra lead lies in the Hibi initial ideal".into())?;

    let q = defense_quadratic_check(&l, None, DEGREE_CAP).map_err(|e| e.to_string())?;
    let w = q.witness.ok_or("bowtie: no higher-degree basis element")?;
    ensure(!q.holds && q.indispensable && w.degree() > 2 && in_kernel(&ring, &w), || "bowtie: quadratic witness invalid".into())?;

    let c = defense_condition_c(&l);
    let [a, b, top] = c.witness.ok_or("bowtie: no triple")?;
    ensure(!c.holds && l.lt(a, b) && l.lt(b, top), || "bowtie: triple not a chain".into())?;
    ensure(is_complemented(&l, Interval { lo: a, hi: b }) && is_complemented(&l, Interval { lo: b, hi: top }), || {
        "bowtie: triple intervals not complemented".into()
    })?;
    let sets = complementary_sets(&l, Interval { lo: a, hi: b });
    ensure(
        sets.iter().any(|s| {
            !is_complemented(&l, Interval { lo: s.c, hi: top }) && !is_complemented(&l, Interval { lo: s.d, hi: top })
        }),
        || "bowtie: some upper interval is complemented".into(),
    )?;

    let d = defense_condition_d(&l).map_err(|e| e.to_string())?;
    let corner = d.critical_corner.ok_or("bowtie: no critical corner")?;
    let image = lattice_grid_embedding(&l).map_err(|e| e.to_string())?.ok_or("bowtie: no embedding")?.image_set();
    let p = corner.at;
    let has = |i: usize, j: usize| image.contains(i, j);
    ensure(
        !d.holds
            && corner.kind == CornerKind::Critical
            && p.i > 0
            && p.j > 0
            && has(p.i - 1, p.j)
            && has(p.i + 1, p.j)
            && has(p.i, p.j - 1)
            && has(p.i, p.j + 1)
            && !has(p.i - 1, p.j + 1)
            && !has(p.i + 1, p.j - 1),
        || format!("bowtie: corner {corner:?} is not critical"),
    )
}

fn grid_minus_corner_witnesses() -> Result<(), String> {
    let l = ideal(&["c1", "c2", "d1", "d2"], &[("c1", "c2"), ("d1", "d2"), ("c1", "d2")]);
    let ring = HibiRing::for_lattice(&l);
    let order = ring.rank_lex(None);
    let mut hibi: Vec<Binomial> = hibi_relations(&l).binomials(&ring, &order);
    hibi.sort_by(|x, y| order.cmp(&x.lead, &y.lead).then(order.cmp(&x.trail, &y.trail)));
    ensure(defense_gb_check(&l, None).holds, || "grid minus corner: Hibi relations not the reduced basis".into())?;
    let gb = buchberger(&hibi, &order, DEGREE_CAP).map_err(|e| e.to_string())?;
    let as_set = |v: &[Binomial]| v.iter().cloned().collect::<HashSet<_>>();
    ensure(as_set(&gb.elements) == as_set(&hibi), || "grid minus corner: Buchberger adds elements".into())?;
    let q = defense_quadratic_check(&l, None, DEGREE_CAP).map_err(|e| e.to_string())?;
    ensure(q.holds && q.max_degree == Some(2), || "grid minus corner: basis not quadratic".into())?;
    ensure(defense_condition_c(&l).holds, || "grid minus corner: triple found".into())?;
    let d = defense_condition_d(&l).map_err(|e| e.to_string())?;
    let image = lattice_grid_embedding(&l).map_err(|e| e.to_string())?.ok_or("no embedding")?.image_set();
    let expected: Vec<GridPoint> =
        (0..=2).flat_map(|i| (0..=2).map(move |j| GridPoint::new(i, j))).filter(|p| (p.i, p.j) != (0, 2)).collect();
    ensure(image.points.iter().copied().collect::<Vec<_>>() == expected || image.transposed().points.iter().copied().collect::<Vec<_>>() == expected, || {
        format!("grid minus corner: image {:?}", image.points)
    })?;
    ensure(d.holds && image.is_full_sublattice() && image.is_chain_ladder().holds, || "grid minus corner: not a chain ladder".into())?;
    ensure(d.corners.iter().all(|c| c.kind != CornerKind::Critical), || "grid minus corner: critical corner".into())
}

fn criterion_4() -> Outcome {
    bowtie_witnesses()?;
    grid_minus_corner_witnesses()?;
    let r = campaign(CORPUS_N, only(|t| t.defense = true), 1)?;
    clean(&r, "the four conditions")?;
    let t = &r.tallies["defense"];
    Ok(format!(
        "{} posets agree ({} all true, {} all false); bowtie all false and grid minus corner all true with checked witnesses",
        r.poset_count, t.all_true, t.all_false
    ))
}

fn criterion_5() -> Outcome {
    let r = campaign(REES_N, only(|t| t.rees = true), 1)?;
    ensure(r.defects.is_empty(), || format!("presentation and kernel differ: {}", r.defects[0]))?;
    let t = &r.tallies["rees"];
    ensure(r.counterexamples.is_empty(), || {
        let c = &r.counterexamples[0];
        format!(
            "presentation equals kernel on all {} posets, but URC and the basis test disagree on {} (first {}: {:?})",
            r.poset_count,
            r.counterexamples.len(),
            c.poset,
            c.certificate.conditions
        )
    })?;
    Ok(format!("{} posets agree ({} URC); presentation equals kernel throughout", r.poset_count, t.all_true))
}

fn xyz_shape(ring: &HibiRing, b: &Binomial) -> bool {
    let support: Vec<(usize, u32)> = b.lead.support().collect();
    let kinds: Vec<u8> = support
        .iter()
        .map(|&(k, _)| match ring.ring().var(k) {
            Variable::X(_) => 0,
            Variable::Y(_) => 1,
            Variable::Z(_) => 2,
            Variable::T => 3,
        })
        .collect();
    let mut sorted = kinds.clone();
    sorted.sort();
    support.iter().all(|&(_, e)| e == 1) && sorted == vec![0, 1, 2]
}

fn criterion_6() -> Outcome {
    let mut summary = Vec::new();
    for (name, lhat) in [
        ("[1]x[1]", ideal(&["p", "q"], &[])),
        ("[1]x[2]", ideal(&["p", "q1", "q2"], &[("q1", "q2")])),
    ] {
        let families = corollary_subsemilattices(&lhat).map_err(|e| e.to_string())?;
        let (whole, proper) = families.split_last().ok_or("no families")?;
        ensure(whole.members.len() == lhat.size(), || format!("{name}: last family is not the whole lattice"))?;
        for f in proper {
            let r = rees_gb_check(f, DEGREE_CAP).map_err(|e| e.to_string())?;
            let extra = r.extra.as_ref().ok_or_else(|| format!("{name}: proper family of size {} passes", f.len()))?;
            let ring = &r.presentation.ring;
            ensure(!r.holds && xyz_shape(ring, extra), || format!("{name}: extra lead {} lacks the x y z shape", ring.format(extra)))?;
        }
        ensure(rees_gb_check(whole, DEGREE_CAP).map_err(|e| e.to_string())?.holds, || format!("{name}: whole lattice fails"))?;
        summary.push(format!("{name}: {} proper fail", proper.len()));
    }
    Ok(format!("{}; both whole lattices pass", summary.join(", ")))
}

fn criterion_7() -> Outcome {
    let r = campaign(CORPUS_N, only(|t| t.invariants = true), 1)?;
    clean(&r, "the structural invariants")?;
    let mut spolys = 0;
    for p in hibi_core::harness::campaign_corpus(&Campaign { max_poset_size: ORACLE_N, ..Campaign::default() })
        .map_err(|e| e.to_string())?
    {
        let l = Lattice::ideal_lattice(&p, &Bounds::default()).map_err(|e| e.to_string())?;
        let ring = HibiRing::for_lattice(&l);
        let order = ring.rank_lex(None);
        let h = hibi_relations(&l).binomials(&ring, &order);
        for (k, f) in h.iter().enumerate() {
            for g in &h[k + 1..] {
                if let SPoly::Binomial(s) = spoly(f, g, &order) {
                    spolys += 1;
                    ensure(order.cmp(&s.lead, &s.trail).is_gt() && s.is_homogeneous() && in_kernel(&ring, &s), || {
                        format!("S-polynomial {} is not an oriented kernel binomial", ring.format(&s))
                    })?;
                }
            }
        }
    }
    Ok(format!("{} posets satisfy every invariant; {spolys} S-polynomials are oriented kernel binomials", r.poset_count))
}

fn criterion_8() -> Outcome {
    let corpus = hibi_core::harness::campaign_corpus(&Campaign { max_poset_size: ORACLE_N, ..Campaign::default() })
        .map_err(|e| e.to_string())?;
    for p in &corpus {
        let l = Lattice::ideal_lattice(p, &Bounds::default()).map_err(|e| e.to_string())?;
        let ring = HibiRing::for_lattice(&l);
        for order in [ring.rank_lex(None), ring.rank_revlex(None)] {
            let h = hibi_relations(&l).binomials(&ring, &order);
            let gb = buchberger(&h, &order, DEGREE_CAP).map_err(|e| e.to_string())?.elements;
            let kernel = toric_kernel(&ring.hibi_map(), &ring.xy_vars(), &order, DEGREE_CAP).map_err(|e| e.to_string())?;
            let set = |v: &[Binomial]| v.iter().cloned().collect::<HashSet<_>>();
            ensure(set(&gb) == set(&kernel), || {
                format!("{}: basis of size {} against kernel of size {}", hibi_core::harness::describe(p), gb.len(), kernel.len())
            })?;
        }
    }
    Ok(format!("{} lattices, rank lex and rank revlex: Hibi basis equals kernel basis", corpus.len()))
}

fn main() -> ExitCode {
    let criteria: [(&str, fn() -> Outcome, Duration); 8] = [
        ("B3 dispensability", criterion_1, LIMIT_1),
        ("revlex Groebner basis iff distributive", criterion_2, LIMIT_2_SEQUENTIAL + LIMIT_2_PARALLEL),
        ("indispensability equivalences", criterion_3, LIMIT_3),
        ("rank lex classification", criterion_4, LIMIT_4),
        ("Rees algebra basis iff URC", criterion_5, LIMIT_5),
        ("sub-semilattices of a grid", criterion_6, LIMIT_6),
        ("structural invariants", criterion_7, LIMIT_7),
        ("Hibi basis equals elimination kernel", criterion_8, LIMIT_8),
    ];
    let mut failed = 0;
    for (k, (name, run, limit)) in criteria.into_iter().enumerate() {
        let start = Instant::now();
        let outcome = run();
        let elapsed = start.elapsed();
        let outcome = outcome.and_then(|msg| {
            if elapsed < limit {
                Ok(msg)
            } else {
                Err(format!("{msg}; took {elapsed:?}, limit {limit:?}"))
            }
        });
        match outcome {
            Ok(msg) => println!("criterion {}: PASS {name} [{:.2}s] {msg}", k + 1, elapsed.as_secs_f64()),
            Err(msg) => {
                failed += 1;
                println!("criterion {}: FAIL {name} [{:.2}s] {msg}", k + 1, elapsed.as_secs_f64());
            }
        }
    }
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
