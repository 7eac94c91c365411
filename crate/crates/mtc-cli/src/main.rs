//! `mtc`: construct, verify and analyse modular data; run rank searches.

use std::fs::File;
use std::io::BufWriter;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand};
use serde::Serialize;

use mtc::classify::{self, Mode, Verdict};
use mtc::families::{self, FamilyId};
use mtc::io::{self, IoError};
use mtc::symmetry::{self, SubgroupAnalysis, SupportCycleReport};
use mtc::{arith, CycNumber, ModularDatum};

const EXIT_CHECK: u8 = 1;
const EXIT_USAGE: u8 = 2;
const EXIT_CONSTRUCT: u8 = 3;

#[derive(Parser)]
#[command(name = "mtc", version, about = "Exact modular data toolkit")]
struct Cli {
    /// Emit reports as JSON.
    #[arg(long, global = true)]
    json: bool,
    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Subcommand)]
enum Cmd {
    /// Build a family datum and write it as JSON.
    Construct {
        /// Family spec, e.g. ising:nu=1 or metaplectic:n=5,s=1,u=0.
        #[arg(long)]
        family: String,
        #[arg(long)]
        out: PathBuf,
    },
    /// Check the modular axioms of a datum file.
    Verify {
        path: PathBuf,
        /// Also check Galois symmetry.
        #[arg(long)]
        strict: bool,
    },
    /// Print dimensions, Gauss sums, Galois data, support cycles and gradings.
    Invariants {
        path: PathBuf,
        /// Restrict support-cycle analysis to this prime.
        #[arg(long)]
        prime: Option<u64>,
    },
    /// Enumerate and decide dimension profiles of a given rank.
    Classify {
        #[arg(long)]
        rank: usize,
        /// integral or weakly-integral
        #[arg(long)]
        mode: Mode,
        /// Write JSON-lines certificates here.
        #[arg(long)]
        certs: Option<PathBuf>,
    },
}

fn fail(code: u8, msg: impl std::fmt::Display) -> ExitCode {
    eprintln!("error: {msg}");
    ExitCode::from(code)
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    if let Some(n) = std::env::var("MTC_THREADS").ok().and_then(|v| v.parse::<usize>().ok()) {
        let _ = rayon::ThreadPoolBuilder::new().num_threads(n.max(1)).build_global();
    }
    match cli.cmd {
        Cmd::Construct { family, out } => construct(&family, &out),
        Cmd::Verify { path, strict } => verify(&path, strict, cli.json),
        Cmd::Invariants { path, prime } => invariants(&path, prime, cli.json),
        Cmd::Classify { rank, mode, certs } => run_classify(rank, mode, certs, cli.json),
    }
}

fn construct(spec: &str, out: &PathBuf) -> ExitCode {
    let id: FamilyId = match spec.parse() {
        Ok(id) => id,
        Err(e) => return fail(EXIT_USAGE, e),
    };
    let m = match families::build(&id) {
        Ok(m) => m,
        Err(e) => return fail(EXIT_CONSTRUCT, e),
    };
    if let Err(e) = io::write_datum(out, &m) {
        return fail(EXIT_USAGE, e);
    }
    println!("wrote {} (rank {}, dim {})", out.display(), m.rank(), m.global_dim());
    ExitCode::SUCCESS
}

/// Read a datum; malformed files exit 2, invalid modular data exit 1. The
/// flag marks a file whose conductor field disagrees with its entries.
fn load(path: &PathBuf) -> Result<(ModularDatum, bool), ExitCode> {
    match io::read_datum(path) {
        Ok(m) => Ok((m, false)),
        Err(IoError::Mod(e)) => {
            println!("FAIL from_matrices: {e}");
            Err(ExitCode::from(EXIT_CHECK))
        }
        Err(IoError::ConductorMismatch { declared, actual }) => {
            // still worth running the checks: an edited entry usually moves the conductor
            let text = std::fs::read_to_string(path).map_err(|e| fail(EXIT_USAGE, e))?;
            let mut v: serde_json::Value = serde_json::from_str(&text).map_err(|e| fail(EXIT_USAGE, e))?;
            v["conductor"] = actual.into();
            eprintln!("warning: conductor field is {declared} but the entries need {actual}");
            match io::datum_from_json(&v.to_string()) {
                Ok(m) => Ok((m, true)),
                Err(IoError::Mod(e)) => {
                    println!("FAIL from_matrices: {e}");
                    Err(ExitCode::from(EXIT_CHECK))
                }
                Err(e) => Err(fail(EXIT_USAGE, e)),
            }
        }
        Err(e) => Err(fail(EXIT_USAGE, e)),
    }
}

#[derive(Serialize)]
struct CheckLine {
    name: String,
    passed: bool,
    witnesses: Vec<Vec<String>>,
}

fn named(m: &ModularDatum, w: &[usize]) -> Vec<String> {
    w.iter().map(|&i| m.labels()[i].clone()).collect()
}

fn verify(path: &PathBuf, strict: bool, json: bool) -> ExitCode {
    let (m, flagged) = match load(path) {
        Ok(x) => x,
        Err(c) => return c,
    };
    let mut lines: Vec<CheckLine> = m
        .verify_axioms()
        .checks
        .iter()
        .map(|c| CheckLine {
            name: c.name.clone(),
            passed: c.passed,
            witnesses: c.witnesses.iter().map(|w| named(&m, w)).collect(),
        })
        .collect();
    if strict {
        let line = match symmetry::check_galois_symmetry(&m) {
            Ok(rep) => CheckLine {
                name: "galois symmetry".into(),
                passed: rep.passed(),
                witnesses: rep
                    .violations
                    .iter()
                    .map(|v| vec![format!("σ_{}", v.residue), m.labels()[v.label].clone()])
                    .collect(),
            },
            Err(e) => CheckLine { name: format!("galois symmetry: {e}"), passed: false, witnesses: vec![] },
        };
        lines.push(line);
    }
    if flagged {
        lines.insert(0, CheckLine { name: "conductor field".into(), passed: false, witnesses: vec![] });
    }
    let ok = lines.iter().all(|l| l.passed);
    if json {
        let v = serde_json::json!({ "passed": ok, "checks": lines });
        println!("{}", serde_json::to_string_pretty(&v).unwrap());
    } else {
        for l in &lines {
            if l.passed {
                println!("PASS {}", l.name);
            } else {
                let shown: Vec<String> =
                    l.witnesses.iter().take(8).map(|w| format!("{} ({})", l.name, w.join(","))).collect();
                println!("FAIL {}: {}", l.name, shown.join("; "));
            }
        }
        println!("{}", if ok { "all checks passed" } else { "some checks failed" });
    }
    if ok {
        ExitCode::SUCCESS
    } else {
        ExitCode::from(EXIT_CHECK)
    }
}

/// ζ_n^k notation for a root of unity.
fn root_name(x: &CycNumber) -> String {
    let Some(n) = x.order_of_root() else { return x.to_string() };
    if n == 1 {
        return "1".into();
    }
    let k = (1..n as i64).find(|&k| CycNumber::zeta(n, k) == *x).unwrap_or(1);
    if k == 1 {
        format!("ζ_{n}")
    } else {
        format!("ζ_{n}^{k}")
    }
}

#[derive(Serialize)]
struct GradingLine {
    group: String,
    components: Vec<Vec<String>>,
}

#[derive(Serialize)]
struct SubgroupLine {
    h: Vec<String>,
    analysis: Option<SubgroupAnalysis>,
    error: Option<String>,
}

#[derive(Serialize)]
struct Invariants {
    rank: usize,
    labels: Vec<String>,
    dims: Vec<String>,
    squared_dims: Option<Vec<u64>>,
    dim: String,
    kind: String,
    fs_exponent: u64,
    p_plus: String,
    p_minus: String,
    anomaly: String,
    galois_conductor: Option<u64>,
    galois_order: Option<usize>,
    support_cycles: Vec<SupportCycleReport>,
    support_errors: Vec<String>,
    pointed_part: String,
    invertibles: Vec<String>,
    universal_grading: GradingLine,
    subgroups: Vec<SubgroupLine>,
}

fn invariants(path: &PathBuf, prime: Option<u64>, json: bool) -> ExitCode {
    let m = match load(path) {
        Ok((m, _)) => m,
        Err(c) => return c,
    };
    let (pp, pm, alpha) = m.gauss_sums();
    let fse = m.fs_exponent();
    let gal = symmetry::galois_group(&m);
    let primes: Vec<u64> = match prime {
        Some(p) => vec![p],
        None => arith::primes_of(fse).into_iter().filter(|&p| p > 2).collect(),
    };
    let mut support = Vec::new();
    let mut support_errors = Vec::new();
    for p in primes {
        match symmetry::support_cycles(&m, p) {
            Ok(r) => support.push(r),
            Err(e) => support_errors.push(format!("p = {p}: {e}")),
        }
    }
    let f = m.fusion();
    let g = f.invertibles_group();
    let ug = f.universal_grading();
    let subgroups = g
        .subgroups()
        .into_iter()
        .map(|h| {
            let labels: Vec<usize> = h.iter().map(|&i| g.elements[i]).collect();
            let r = symmetry::subgroup_analysis(&m, &labels);
            SubgroupLine {
                h: named(&m, &labels),
                error: r.as_ref().err().map(|e| e.to_string()),
                analysis: r.ok(),
            }
        })
        .collect();
    let inv = Invariants {
        rank: m.rank(),
        labels: m.labels().to_vec(),
        dims: m.dims().iter().map(|d| d.to_string()).collect(),
        squared_dims: m.squared_dims(),
        dim: m.global_dim().to_string(),
        kind: m.integrality_profile().kind.to_string(),
        fs_exponent: fse,
        p_plus: pp.to_string(),
        p_minus: pm.to_string(),
        anomaly: root_name(&alpha),
        galois_conductor: gal.as_ref().ok().map(|g| g.field_conductor),
        galois_order: gal.as_ref().ok().map(|g| g.order()),
        support_cycles: support,
        support_errors,
        pointed_part: g.to_string(),
        invertibles: named(&m, &g.elements),
        universal_grading: GradingLine {
            group: ug.group.to_string(),
            components: ug.components().iter().map(|c| named(&m, c)).collect(),
        },
        subgroups,
    };
    if json {
        println!("{}", serde_json::to_string_pretty(&inv).unwrap());
        return ExitCode::SUCCESS;
    }
    println!("rank {}", inv.rank);
    for (l, d) in inv.labels.iter().zip(&inv.dims) {
        println!("  d({l}) = {d}");
    }
    if let Some(sq) = &inv.squared_dims {
        println!("squared dims {sq:?} ({})", inv.kind);
    }
    println!("dim {}", inv.dim);
    println!("FSexp {}", inv.fs_exponent);
    println!("p+ = {}", inv.p_plus);
    println!("p- = {}", inv.p_minus);
    println!("anomaly {}", inv.anomaly);
    match (&gal, inv.galois_order) {
        (Ok(gd), Some(o)) => println!("Galois group order {o} (splitting conductor {})", gd.field_conductor),
        (Err(e), _) => println!("Galois group: {e}"),
        _ => {}
    }
    for r in &inv.support_cycles {
        println!(
            "p = {}: automorphism σ_{} mod {} (primitive root {})",
            r.prime, r.automorphism.residue, r.automorphism.modulus, r.automorphism.primitive_root
        );
        for c in r.support_cycles() {
            println!(
                "  {}-support cycle of length {} on ({}){}",
                r.prime,
                c.labels.len(),
                named(&m, &c.labels).join(","),
                if c.is_maximal { ", maximal" } else { "" }
            );
        }
        for c in r.checks.iter().filter(|c| !c.passed) {
            println!("  FAIL {}", c.name);
        }
    }
    for e in &inv.support_errors {
        println!("support cycles: {e}");
    }
    println!("G(C) = {} on ({})", inv.pointed_part, inv.invertibles.join(","));
    let comps: Vec<String> =
        inv.universal_grading.components.iter().map(|c| format!("{{{}}}", c.join(","))).collect();
    println!("universal grading by {}: {}", inv.universal_grading.group, comps.join(" "));
    for s in &inv.subgroups {
        let h = s.h.join(",");
        match (&s.analysis, &s.error) {
            (Some(a), _) => println!(
                "subgroup {{{h}}}: {} components{}{}, checks {}",
                a.components.len(),
                if a.is_self_centralizing { ", self-centralizing" } else { "" },
                if a.is_tannakian { ", tannakian" } else { "" },
                if a.passed() { "pass" } else { "FAIL" }
            ),
            (None, Some(e)) => println!("subgroup {{{h}}}: {e}"),
            _ => {}
        }
    }
    ExitCode::SUCCESS
}

fn run_classify(rank: usize, mode: Mode, certs: Option<PathBuf>, json: bool) -> ExitCode {
    if !(6..=7).contains(&rank) {
        return fail(EXIT_USAGE, format!("--rank must be 6 or 7 (got {rank})"));
    }
    let out = classify::classify_rank(rank, mode);
    if let Some(path) = &certs {
        let written = File::create(path)
            .map_err(IoError::from)
            .and_then(|f| io::write_certificates(BufWriter::new(f), &out));
        if let Err(e) = written {
            return fail(EXIT_USAGE, e);
        }
    }
    let realized = classify::realized(&out);
    let undecided = out.iter().filter(|c| c.verdict == Verdict::Undecided).count();
    if json {
        let rows: Vec<_> = realized
            .iter()
            .map(|(p, f)| serde_json::json!({ "squared_dims": p.squared_dims, "dim": p.dim, "family": f }))
            .collect();
        let v = serde_json::json!({
            "rank": rank,
            "mode": mode,
            "profiles": out.len(),
            "realized": rows,
            "undecided": undecided,
            "by_rule": classify::rule_counts(&out),
        });
        println!("{}", serde_json::to_string_pretty(&v).unwrap());
    } else {
        println!("rank {rank}, {} profiles", out.len());
        for (k, v) in classify::rule_counts(&out) {
            println!("  {v:>5}  {k}");
        }
        println!("realized:");
        for (p, f) in &realized {
            println!("  {p:<24} dim {:<6} {f}", p.dim);
        }
        if undecided > 0 {
            println!("{undecided} undecided");
        }
        if let Some(p) = certs {
            println!("certificates written to {}", p.display());
        }
    }
    ExitCode::SUCCESS
}
