//! Batch verification over the enumerated corpus.

use std::collections::BTreeMap;
use std::fmt::Write as _;
use std::time::Instant;

use serde::Serialize;

use super::checks::{check_equivalences, check_lattice, Campaign, Counterexample, PosetRecord};
use super::enumerate::{enumerate_lattices, enumerate_posets, MAX_ENUMERATION_SIZE};
use crate::error::{Error, Result};
use crate::poset::Poset;

/// Agreement and verdict counts for one theorem.
#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize)]
pub struct TheoremTally {
    pub checked: usize,
    pub all_true: usize,
    pub all_false: usize,
    pub inconsistent: usize,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct SweepEntry {
    pub poset: String,
    pub orders: usize,
    pub holding: usize,
}

/// Sweep totals plus every lattice whose verdict depends on the order.
#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize)]
pub struct SweepSummary {
    pub lattices: usize,
    pub orders: usize,
    pub order_dependent: Vec<SweepEntry>,
}

#[derive(Debug, Clone, Default, PartialEq, Serialize)]
pub struct Timing {
    pub posets_seconds: f64,
    pub lattices_seconds: f64,
}

/// Deterministic apart from `timing`.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct EquivalenceReport {
    pub config: Campaign,
    pub posets_by_size: Vec<usize>,
    pub poset_count: usize,
    pub lattice_count: usize,
    pub non_distributive_lattices: usize,
    pub tallies: BTreeMap<String, TheoremTally>,
    pub counterexamples: Vec<Counterexample>,
    /// Errors raised while checking a poset, such as oracle disagreements.
    pub defects: Vec<String>,
    pub sweep: Option<SweepSummary>,
    pub cover_sensitive: Vec<String>,
    pub records: Vec<PosetRecord>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub timing: Option<Timing>,
}

impl EquivalenceReport {
    pub fn passed(&self) -> bool {
        self.counterexamples.is_empty() && self.defects.is_empty()
    }

    pub fn to_json(&self) -> Result<String> {
        Ok(serde_json::to_string_pretty(self)?)
    }

    pub fn summary(&self) -> String {
        let mut out = String::new();
        let _ = writeln!(out, "{:<16} {:>8} {:>8} {:>8} {:>12}", "theorem", "checked", "true", "false", "inconsistent");
        for (name, t) in &self.tallies {
            let _ =
                writeln!(out, "{:<16} {:>8} {:>8} {:>8} {:>12}", name, t.checked, t.all_true, t.all_false, t.inconsistent);
        }
        if let Some(s) = &self.sweep {
            let _ = writeln!(
                out,
                "tie-break sweep: {} lattices, {} orders, {} order-dependent",
                s.lattices,
                s.orders,
                s.order_dependent.len()
            );
        }
        let _ = writeln!(out, "cover-sensitive corner kinds: {}", self.cover_sensitive.len());
        if !self.defects.is_empty() {
            let _ = writeln!(out, "defects: {}", self.defects.len());
        }
        let _ = write!(out, "{} counterexamples / {} posets", self.counterexamples.len(), self.poset_count);
        out
    }
}

/// The poset corpus of the campaign, in enumeration order.
pub fn campaign_corpus(cfg: &Campaign) -> Result<Vec<Poset>> {
    if cfg.max_poset_size > MAX_ENUMERATION_SIZE {
        return Err(Error::SizeExceeded { what: "campaign poset size", limit: MAX_ENUMERATION_SIZE });
    }
    let mut out = Vec::new();
    for n in 1..=cfg.max_poset_size {
        out.extend(enumerate_posets(n, cfg.iso)?);
    }
    Ok(out)
}

fn map_items<T: Sync, R: Send>(items: &[T], jobs: usize, f: impl Fn(&T) -> R + Sync + Send) -> Result<Vec<R>> {
    #[cfg(feature = "parallel")]
    if jobs > 1 {
        use rayon::prelude::*;
        let pool = rayon::ThreadPoolBuilder::new()
            .num_threads(jobs)
            .build()
            .map_err(|e| Error::Defect(format!("thread pool: {e}")))?;
        return Ok(pool.install(|| items.par_iter().map(&f).collect()));
    }
    let _ = jobs;
    Ok(items.iter().map(f).collect())
}

pub fn run_campaign(cfg: &Campaign) -> Result<EquivalenceReport> {
    let corpus = campaign_corpus(cfg)?;
    let mut posets_by_size = vec![0usize; cfg.max_poset_size + 1];
    for p in &corpus {
        posets_by_size[p.len()] += 1;
    }

    let start = Instant::now();
    let results = map_items(&corpus, cfg.jobs, |p| check_equivalences(p, cfg))?;
    let posets_seconds = start.elapsed().as_secs_f64();

    let mut tallies: BTreeMap<String, TheoremTally> = BTreeMap::new();
    let mut counterexamples = Vec::new();
    let mut defects = Vec::new();
    let mut records = Vec::new();
    let mut sweep = cfg.tiebreak_sweep.then(SweepSummary::default);
    let mut cover_sensitive = Vec::new();
    for (p, result) in corpus.iter().zip(results) {
        let record = match result {
            Ok(r) => r,
            Err(e) => {
                defects.push(format!("{}: {e}", super::checks::describe(p)));
                continue;
            }
        };
        for c in &record.certificates {
            tally(&mut tallies, c.theorem, c.verdict(), c.consistent);
        }
        counterexamples.extend(record.counterexamples());
        if let (Some(s), Some(t)) = (sweep.as_mut(), &record.tiebreaks) {
            s.lattices += 1;
            s.orders += t.orders;
            if t.order_dependent() {
                s.order_dependent.push(SweepEntry {
                    poset: record.poset.clone(),
                    orders: t.orders,
                    holding: t.verdicts.iter().filter(|&&v| v).count(),
                });
            }
        }
        if record.cover_consistent == Some(false) {
            cover_sensitive.push(record.poset.clone());
        }
        records.push(record);
    }

    let start = Instant::now();
    let mut lattice_count = 0;
    let mut non_distributive = 0;
    if cfg.toggles.hibi_gb && cfg.lattice_max_size > 0 {
        let lattices = enumerate_lattices(cfg.lattice_max_size)?;
        lattice_count = lattices.len();
        let results = map_items(&lattices, cfg.jobs, check_lattice)?;
        for (k, result) in results.into_iter().enumerate() {
            match result {
                Ok(certs) => {
                    for c in certs {
                        let name = format!("lattice_{}", c.theorem);
                        if c.theorem == "hibi_gb" && c.conditions.get("a") == Some(&false) {
                            non_distributive += 1;
                        }
                        tally(&mut tallies, &name, c.verdict(), c.consistent);
                        if !c.consistent {
                            counterexamples.push(Counterexample { poset: format!("lattice #{k}"), certificate: c });
                        }
                    }
                }
                Err(e) => defects.push(format!("lattice #{k}: {e}")),
            }
        }
    }
    let lattices_seconds = start.elapsed().as_secs_f64();

    Ok(EquivalenceReport {
        config: cfg.clone(),
        poset_count: records.len() + defects.iter().filter(|d| !d.starts_with("lattice")).count(),
        posets_by_size,
        lattice_count,
        non_distributive_lattices: non_distributive,
        tallies,
        counterexamples,
        defects,
        sweep,
        cover_sensitive,
        records,
        timing: cfg.timing.then_some(Timing { posets_seconds, lattices_seconds }),
    })
}

fn tally(tallies: &mut BTreeMap<String, TheoremTally>, name: &str, verdict: Option<bool>, consistent: bool) {
    let t = tallies.entry(name.to_string()).or_default();
    t.checked += 1;
    match verdict {
        Some(true) => t.all_true += 1,
        Some(false) => t.all_false += 1,
        None => {}
    }
    if !consistent {
        t.inconsistent += 1;
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn small_campaign_counterexamples() {
        let cfg = Campaign { max_poset_size: 3, lattice_max_size: 6, ..Campaign::default() };
        let r = run_campaign(&cfg).unwrap();
        assert_eq!(r.poset_count, 1 + 3 + 19);
        assert!(r.defects.is_empty());
        // The three labelings of p < q, p < r: not URC, yet the Rees basis is
        // exactly the Hibi and special linear relations.
        let rees: Vec<&str> = r.counterexamples.iter().map(|c| c.certificate.theorem).collect();
        assert_eq!(rees, vec!["rees"; 3]);
        for c in &r.counterexamples {
            assert_eq!(c.certificate.vector(), vec![false, true]);
        }
        assert!(r.summary().ends_with("3 counterexamples / 23 posets"));
    }

    #[test]
    fn clean_without_rees() {
        let mut cfg = Campaign { max_poset_size: 3, lattice_max_size: 6, ..Campaign::default() };
        cfg.toggles.rees = false;
        let r = run_campaign(&cfg).unwrap();
        assert!(r.passed(), "{}", r.summary());
    }

    #[test]
    fn mutation_fails_the_run() {
        let cfg = Campaign {
            max_poset_size: 4,
            lattice_max_size: 0,
            mutation: super::super::checks::Mutation::UrcForConditionalUrc,
            ..Campaign::default()
        };
        assert!(!run_campaign(&cfg).unwrap().counterexamples.is_empty());
    }
}
