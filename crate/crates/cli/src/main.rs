//! `hibi`: classify Hibi rings, compute binomial Gröbner bases and run the
//! verification campaign.

use std::path::PathBuf;
use std::process::ExitCode;

use anyhow::{anyhow, bail, Context, Result};
use clap::{Args, Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};

use hibi_core::gb::{buchberger, degree_cap_from_env, toric_kernel, Binomial, TermOrder};
use hibi_core::harness::{
    check_lattice, defense_certificate, describe, enumerate_posets, hibi_gb_certificate, hot_certificate,
    invariants_certificate, rees_certificate, run_campaign, urc_certificate, Campaign, Certificate, Mutation,
};
use hibi_core::hibi::{
    all_hibi_indispensable, hibi_relations, is_indispensable, quad_fiber, rees_gb_check, DownSetFamily, HibiRing,
};
use hibi_core::lattice::{is_conditionally_urc, Lattice, LatticeJson};
use hibi_core::poset::{Bounds, Poset};

const EXIT_OK: u8 = 0;
const EXIT_FALSE: u8 = 1;
const EXIT_ERROR: u8 = 2;
const EXIT_USAGE: u8 = 64;

#[derive(Parser)]
#[command(name = "hibi", version, about = "Hibi relations of finite distributive lattices")]
struct Cli {
    /// Emit JSON instead of text.
    #[arg(long, global = true)]
    json: bool,
    /// Largest S-pair degree Buchberger may reach (default: HIBI_DEGREE_CAP or 12).
    #[arg(long, global = true)]
    degree_cap: Option<u32>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Every condition vector for the ideal lattice of a poset, with witnesses.
    Classify {
        #[command(flatten)]
        input: Input,
        /// Skip the Rees check for posets larger than this.
        #[arg(long, default_value_t = 5)]
        rees_max: usize,
    },
    /// Reduced Gröbner basis of the Hibi relations.
    Gb {
        #[command(flatten)]
        input: Input,
        #[arg(long, value_enum, default_value_t = OrderArg::RankLex)]
        order: OrderArg,
        /// Compute the toric kernel by elimination instead.
        #[arg(long)]
        kernel: bool,
    },
    /// Pairs of elements sharing the meet and join of a pair.
    Fiber {
        #[command(flatten)]
        input: Input,
        /// Two elements `a,b`: lattice ids or `+`-joined poset labels generating a downset.
        #[arg(long)]
        pair: String,
    },
    /// Whether the Hibi relations (or one of them) are indispensable.
    Indispensable {
        #[command(flatten)]
        input: Input,
        #[arg(long)]
        pair: Option<String>,
    },
    /// Rees algebra presentation and its basis test under the product lex order.
    Rees {
        #[command(flatten)]
        input: Input,
    },
    /// Run the campaign over every poset up to a size.
    Verify {
        #[arg(long, default_value_t = 4)]
        max_n: usize,
        #[arg(long)]
        sweep_tiebreaks: bool,
        #[arg(long, default_value_t = 1)]
        jobs: usize,
        /// Deduplicate posets up to isomorphism.
        #[arg(long)]
        iso: bool,
        /// Run the Rees check up to this poset size.
        #[arg(long, default_value_t = 4)]
        rees_max: usize,
        /// Theorems to leave out.
        #[arg(long, value_enum, value_delimiter = ',')]
        skip: Vec<TheoremArg>,
        #[arg(long, value_enum, default_value_t = MutationArg::None)]
        mutation: MutationArg,
        /// Include wall-clock timings (JSON is then not reproducible).
        #[arg(long)]
        timing: bool,
        /// Include per-poset records in JSON output.
        #[arg(long)]
        records: bool,
    },
    /// List every poset on `n` elements as JSON lines.
    Enumerate {
        #[arg(long)]
        n: usize,
        #[arg(long)]
        iso: bool,
    },
}

#[derive(Args)]
#[group(required = true, multiple = false)]
struct Input {
    /// Poset file: {"elements": [...], "covers": [[lo, hi], ...]}.
    #[arg(long)]
    poset: Option<PathBuf>,
    /// Poset given inline in the same format.
    #[arg(long)]
    inline: Option<String>,
    /// Lattice file: {"size": n, "covers": [[lo, hi], ...]} or {"size": n, "leq": [[...]]}.
    #[arg(long)]
    lattice: Option<PathBuf>,
}

#[derive(Clone, Copy, ValueEnum)]
enum OrderArg {
    RankLex,
    RankRevlex,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum TheoremArg {
    Hot,
    Defense,
    Rees,
    Urc,
    HibiGb,
    Invariants,
}

#[derive(Clone, Copy, ValueEnum)]
enum MutationArg {
    None,
    UrcForConditionalUrc,
    IgnoreCriticalCorners,
}

enum Loaded {
    Ideal(Poset, Lattice),
    Abstract(Lattice),
}

impl Loaded {
    fn lattice(&self) -> &Lattice {
        match self {
            Loaded::Ideal(_, l) | Loaded::Abstract(l) => l,
        }
    }

    fn poset(&self) -> Option<&Poset> {
        match self {
            Loaded::Ideal(p, _) => Some(p),
            Loaded::Abstract(_) => None,
        }
    }
}

fn load(input: &Input) -> Result<Loaded> {
    let poset = match (&input.poset, &input.inline, &input.lattice) {
        (Some(path), _, _) => {
            let text = std::fs::read_to_string(path).with_context(|| format!("reading {}", path.display()))?;
            Poset::from_json_str(&text)?
        }
        (_, Some(text), _) => Poset::from_json_str(text)?,
        (_, _, Some(path)) => {
            let text = std::fs::read_to_string(path).with_context(|| format!("reading {}", path.display()))?;
            let json: LatticeJson = serde_json::from_str(&text)?;
            return Ok(Loaded::Abstract(Lattice::from_json(&json)?));
        }
        _ => bail!("no input given"),
    };
    let lattice = Lattice::ideal_lattice(&poset, &Bounds::default())?;
    Ok(Loaded::Ideal(poset, lattice))
}

/// An abstract distributive lattice is replaced by the ideal lattice of its
/// join-irreducibles.
fn as_ideal(loaded: Loaded) -> Result<(Poset, Lattice)> {
    match loaded {
        Loaded::Ideal(p, l) => Ok((p, l)),
        Loaded::Abstract(l) => {
            if !l.is_distributive()?.distributive {
                bail!("lattice is not distributive");
            }
            let p = l.join_irreducibles();
            let ideal = Lattice::ideal_lattice(&p, &Bounds::default())?;
            Ok((p, ideal))
        }
    }
}

fn parse_element(token: &str, loaded: &Loaded) -> Result<usize> {
    let lattice = loaded.lattice();
    if let Ok(id) = token.trim().parse::<usize>() {
        if id >= lattice.size() {
            bail!("element id {id} out of range (lattice has {} elements)", lattice.size());
        }
        return Ok(id);
    }
    let poset = loaded.poset().ok_or_else(|| anyhow!("labels need a poset input; use lattice ids"))?;
    let generators = token
        .split('+')
        .map(|label| poset.index_of(label.trim()).ok_or_else(|| anyhow!("unknown label {label:?}")))
        .collect::<Result<Vec<_>>>()?;
    let down = poset.generated(generators);
    lattice.id_of(down).ok_or_else(|| anyhow!("downset {token} not found"))
}

fn parse_pair(text: &str, loaded: &Loaded) -> Result<(usize, usize)> {
    let (a, b) = text.split_once(',').ok_or_else(|| anyhow!("--pair expects two elements separated by a comma"))?;
    Ok((parse_element(a, loaded)?, parse_element(b, loaded)?))
}

fn print_json(v: &Value) -> Result<()> {
    println!("{}", serde_json::to_string_pretty(v)?);
    Ok(())
}

fn format_certificate(c: &Certificate) -> String {
    let conds: Vec<String> = c.conditions.iter().map(|(k, v)| format!("{k}={v}")).collect();
    let verdict = match c.verdict() {
        Some(v) => v.to_string(),
        None => "conditions disagree".into(),
    };
    format!("{:<18} {} -> {verdict}", c.theorem, conds.join(" "))
}

fn classify(input: &Input, rees_max: usize, cap: u32, as_json: bool) -> Result<u8> {
    let loaded = load(input)?;
    let mut certificates = Vec::new();
    let (label, size) = match &loaded {
        Loaded::Abstract(l) if !l.is_distributive()?.distributive => {
            certificates.extend(check_lattice(l)?);
            certificates.push(urc_certificate(l));
            ("lattice".to_string(), l.size())
        }
        _ => {
            let (p, l) = as_ideal(loaded)?;
            let cfg = Campaign { degree_cap: cap, ..Campaign::default() };
            certificates.push(hot_certificate(&p, &l, Mutation::None)?);
            certificates.push(defense_certificate(&l, is_conditionally_urc(&l).holds, &cfg)?);
            if p.len() <= rees_max {
                certificates.push(rees_certificate(&l, cap)?);
            }
            certificates.push(urc_certificate(&l));
            certificates.push(hibi_gb_certificate(&l)?);
            certificates.push(invariants_certificate(&p, &l)?);
            (describe(&p), l.size())
        }
    };
    let all_true = certificates.iter().all(|c| c.verdict() == Some(true));
    if as_json {
        print_json(&json!({ "poset": label, "lattice_size": size, "certificates": certificates, "all_true": all_true }))?;
    } else {
        println!("{label} (lattice of {size} elements)");
        for c in &certificates {
            println!("{}", format_certificate(c));
            for (k, w) in &c.witnesses {
                println!("    witness {k}: {w}");
            }
        }
    }
    Ok(if all_true { EXIT_OK } else { EXIT_FALSE })
}

fn gb(input: &Input, order: OrderArg, kernel: bool, cap: u32, as_json: bool) -> Result<u8> {
    let loaded = load(input)?;
    let lattice = loaded.lattice();
    let ring = HibiRing::for_lattice(lattice);
    let term_order: TermOrder = match order {
        OrderArg::RankLex => ring.rank_lex(None),
        OrderArg::RankRevlex => ring.rank_revlex(None),
    };
    let basis: Vec<Binomial> = if kernel {
        if !lattice.is_distributive()?.distributive {
            bail!("the toric kernel is only defined here for distributive lattices");
        }
        toric_kernel(&ring.hibi_map(), &ring.xy_vars(), &term_order, cap)?
    } else {
        buchberger(&hibi_relations(lattice).binomials(&ring, &term_order), &term_order, cap)?.elements
    };
    if as_json {
        let elements: Vec<Value> = basis.iter().map(|b| json!(ring.ring().binomial_json(b))).collect();
        print_json(&json!({ "order": term_order.kind(), "size": basis.len(), "basis": elements }))?;
    } else {
        for b in &basis {
            println!("{}", ring.format(b));
        }
        println!("{} binomials", basis.len());
    }
    Ok(EXIT_OK)
}

fn fiber(input: &Input, pair: &str, as_json: bool) -> Result<u8> {
    let loaded = load(input)?;
    let (a, b) = parse_pair(pair, &loaded)?;
    let l = loaded.lattice();
    let f = quad_fiber(l, a, b)?;
    let name = |x: usize| l.element_name(x);
    if as_json {
        let pairs: Vec<Value> = f.pairs.iter().map(|&(c, d)| json!({ "ids": [c, d], "names": [name(c), name(d)] })).collect();
        print_json(&json!({ "meet": f.meet, "join": f.join, "size": f.len(), "pairs": pairs }))?;
    } else {
        for &(c, d) in &f.pairs {
            println!("z[{}] z[{}]", name(c), name(d));
        }
        println!("{} monomials in the fiber of meet {} and join {}", f.len(), name(f.meet), name(f.join));
    }
    Ok(EXIT_OK)
}

fn indispensable(input: &Input, pair: Option<&str>, as_json: bool) -> Result<u8> {
    let loaded = load(input)?;
    let l = loaded.lattice();
    let (holds, witness) = match pair {
        Some(p) => {
            let (a, b) = parse_pair(p, &loaded)?;
            if l.comparable(a, b) {
                bail!("elements {a} and {b} are comparable; there is no Hibi relation");
            }
            (is_indispensable(l, a, b)?, None)
        }
        None => {
            let c = all_hibi_indispensable(l)?;
            (c.holds, c.witness)
        }
    };
    if as_json {
        print_json(&json!({ "indispensable": holds, "witness": witness }))?;
    } else if let Some(w) = witness {
        println!(
            "dispensable: z[{}] z[{}] - z[{}] z[{}]",
            l.element_name(w.a),
            l.element_name(w.b),
            l.element_name(w.meet),
            l.element_name(w.join)
        );
    } else {
        println!("{}", if holds { "indispensable" } else { "dispensable" });
    }
    Ok(if holds { EXIT_OK } else { EXIT_FALSE })
}

fn rees(input: &Input, cap: u32, as_json: bool) -> Result<u8> {
    let (_, l) = as_ideal(load(input)?)?;
    let family = DownSetFamily::from_lattice(&l)?;
    let check = rees_gb_check(&family, cap)?;
    let ring = &check.presentation.ring;
    let order = &check.order;
    let presentation: Vec<String> = check.presentation.binomials(order).iter().map(|b| ring.format(b)).collect();
    let basis: Vec<String> = check.basis.iter().map(|b| ring.format(b)).collect();
    if as_json {
        print_json(&json!({
            "holds": check.holds,
            "presentation": presentation,
            "basis": basis,
            "extra": check.extra.as_ref().map(|b| ring.format(b)),
            "missing": check.missing.as_ref().map(|b| ring.format(b)),
        }))?;
    } else {
        println!("presentation ({} relations):", presentation.len());
        for p in &presentation {
            println!("  {p}");
        }
        println!("reduced basis ({} elements):", basis.len());
        for b in &basis {
            println!("  {b}");
        }
        println!("basis equals presentation: {}", check.holds);
    }
    Ok(if check.holds { EXIT_OK } else { EXIT_FALSE })
}

#[allow(clippy::too_many_arguments)]
fn verify(
    max_n: usize,
    sweep: bool,
    jobs: usize,
    iso: bool,
    rees_max: usize,
    skip: &[TheoremArg],
    mutation: MutationArg,
    timing: bool,
    records: bool,
    cap: u32,
    as_json: bool,
) -> Result<u8> {
    let mut cfg = Campaign {
        max_poset_size: max_n,
        tiebreak_sweep: sweep,
        jobs: jobs.max(1),
        iso,
        rees_max_poset: rees_max,
        degree_cap: cap,
        timing,
        mutation: match mutation {
            MutationArg::None => Mutation::None,
            MutationArg::UrcForConditionalUrc => Mutation::UrcForConditionalUrc,
            MutationArg::IgnoreCriticalCorners => Mutation::IgnoreCriticalCorners,
        },
        ..Campaign::default()
    };
    let t = &mut cfg.toggles;
    for s in skip {
        match s {
            TheoremArg::Hot => t.hot = false,
            TheoremArg::Defense => t.defense = false,
            TheoremArg::Rees => t.rees = false,
            TheoremArg::Urc => t.urc = false,
            TheoremArg::HibiGb => t.hibi_gb = false,
            TheoremArg::Invariants => t.invariants = false,
        }
    }
    let mut report = run_campaign(&cfg)?;
    if !records {
        report.records.clear();
    }
    if as_json {
        println!("{}", report.to_json()?);
    } else {
        for c in &report.counterexamples {
            println!("counterexample {}: {}", c.poset, format_certificate(&c.certificate));
        }
        for d in &report.defects {
            println!("defect {d}");
        }
        println!("{}", report.summary());
    }
    Ok(if report.passed() { EXIT_OK } else { EXIT_FALSE })
}

fn enumerate(n: usize, iso: bool, as_json: bool) -> Result<u8> {
    let posets = enumerate_posets(n, iso)?;
    if as_json {
        let all: Vec<_> = posets.iter().map(Poset::to_json).collect();
        println!("{}", serde_json::to_string(&all)?);
    } else {
        for p in &posets {
            println!("{}", serde_json::to_string(&p.to_json())?);
        }
    }
    Ok(EXIT_OK)
}

fn run(cli: Cli) -> Result<u8> {
    let cap = cli.degree_cap.unwrap_or_else(degree_cap_from_env);
    let as_json = cli.json;
    match cli.command {
        Command::Classify { input, rees_max } => classify(&input, rees_max, cap, as_json),
        Command::Gb { input, order, kernel } => gb(&input, order, kernel, cap, as_json),
        Command::Fiber { input, pair } => fiber(&input, &pair, as_json),
        Command::Indispensable { input, pair } => indispensable(&input, pair.as_deref(), as_json),
        Command::Rees { input } => rees(&input, cap, as_json),
        Command::Verify { max_n, sweep_tiebreaks, jobs, iso, rees_max, skip, mutation, timing, records } => verify(
            max_n,
            sweep_tiebreaks,
            jobs,
            iso,
            rees_max,
            &skip,
            mutation,
            timing,
            records,
            cap,
            as_json,
        ),
        Command::Enumerate { n, iso } => enumerate(n, iso, as_json),
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_USAGE } else { EXIT_OK };
            let _ = e.print();
            return ExitCode::from(code);
        }
    };
    match run(cli) {
        Ok(code) => ExitCode::from(code),
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(EXIT_ERROR)
        }
    }
}
