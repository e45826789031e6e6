//! The verification sweep: both verifiers over all small inputs of a group,
//! plus the KL invariants on every polynomial computed along the way.

use std::fmt::Write as _;

use clap::Args;
use serde::Serialize;

use super::Output;
use crate::affine_weyl::{AffineWeylElt, AffineWeylGroup};
use crate::error::Result;
use crate::kl::KlTable;
use crate::nearby::{self, VerificationReport};
use crate::root_datum::Coweight;

#[derive(Debug, Clone, Args)]
pub struct SweepArgs {
    /// Largest length of u and v in the W_aff part; defaults to 5 for
    /// semisimple rank 1 and 3 otherwise.
    #[arg(long, value_parser = clap::value_parser!(u32).range(1..))]
    pub max_len: Option<u32>,

    /// Coweights mu with all coordinates in 0..=mu-max are tried.
    #[arg(long, default_value_t = 2, value_parser = clap::value_parser!(u32).range(1..))]
    pub mu_max: u32,

    /// Powers j of the omega generator in -r..=r are combined with W_aff.
    #[arg(long, default_value_t = 1)]
    pub omega_radius: u32,
}

#[derive(Debug, Serialize)]
struct MuSummary {
    mu: String,
    adm_size: usize,
    pass: bool,
}

#[derive(Debug, Serialize)]
struct Thm2Summary {
    pairs: usize,
    passed: usize,
    failures: Vec<VerificationReport>,
}

#[derive(Debug, Serialize)]
struct KlSummary {
    pairs: usize,
    violations: Vec<[String; 2]>,
}

#[derive(Debug, Serialize)]
struct SweepReport {
    max_len: u32,
    mu_max: u32,
    omega_powers: Vec<i64>,
    theorem_1: Vec<MuSummary>,
    theorem_1_failures: Vec<VerificationReport>,
    theorem_2: Thm2Summary,
    kl: KlSummary,
    pass: bool,
}

pub fn default_max_len(g: &AffineWeylGroup) -> u32 {
    if g.datum().semisimple_rank() == 1 {
        5
    } else {
        3
    }
}

/// Dominant coweights with coordinates in `0..=bound`, in lexicographic order.
pub fn dominant_box(g: &AffineWeylGroup, bound: i64) -> Vec<Coweight> {
    let n = g.rank();
    let mut out = Vec::new();
    let mut coords = vec![0i64; n];
    loop {
        let c = Coweight::new(&coords);
        if g.datum().is_dominant(&c) {
            out.push(c);
        }
        let mut i = n;
        loop {
            if i == 0 {
                return out;
            }
            i -= 1;
            if coords[i] < bound {
                coords[i] += 1;
                break;
            }
            coords[i] = 0;
        }
    }
}

pub fn run(g: &AffineWeylGroup, kl: &mut KlTable, args: &SweepArgs) -> Result<Output> {
    let max_len = args.max_len.unwrap_or_else(|| default_max_len(g));
    let r = i64::from(args.omega_radius);
    let omega_powers: Vec<i64> = if g.datum().omega_generator().is_some() { (-r..=r).collect() } else { vec![0] };

    let mut theorem_1 = Vec::new();
    let mut theorem_1_failures = Vec::new();
    for mu in dominant_box(g, i64::from(args.mu_max)) {
        let report = nearby::verify_theorem_1(g, kl, &mu)?;
        theorem_1.push(MuSummary {
            mu: mu.to_string(),
            adm_size: g.admissible_set(&mu)?.len(),
            pass: report.pass,
        });
        if !report.pass {
            theorem_1_failures.push(report);
        }
    }

    let mut elts: Vec<AffineWeylElt> = g.extended_ball(max_len as usize, &omega_powers)?;
    g.sort_canonical(&mut elts);
    let mut thm2 = Thm2Summary { pairs: 0, passed: 0, failures: Vec::new() };
    for u in &elts {
        for v in &elts {
            let report = nearby::verify_theorem_2(g, kl, u, v);
            thm2.pairs += 1;
            if report.pass {
                thm2.passed += 1;
            } else {
                thm2.failures.push(report);
            }
        }
    }

    let violations: Vec<[String; 2]> =
        kl.check_invariants(g).into_iter().map(|(x, w)| [g.format(&x), g.format(&w)]).collect();
    let kl_summary = KlSummary { pairs: kl.entries().count(), violations };

    let pass = theorem_1_failures.is_empty() && thm2.failures.is_empty() && kl_summary.violations.is_empty();
    let report = SweepReport {
        max_len,
        mu_max: args.mu_max,
        omega_powers,
        theorem_1,
        theorem_1_failures,
        theorem_2: thm2,
        kl: kl_summary,
        pass,
    };

    let mut table = String::new();
    let _ = writeln!(table, "sweep on {}, max_len = {}, mu_max = {}", g.datum().name(), max_len, args.mu_max);
    for m in &report.theorem_1 {
        let _ = writeln!(table, "{} theorem-1 mu = {} (|Adm| = {})", verdict(m.pass), m.mu, m.adm_size);
    }
    let _ = writeln!(
        table,
        "{} theorem-2 {}/{} pairs",
        verdict(report.theorem_2.failures.is_empty()),
        report.theorem_2.passed,
        report.theorem_2.pairs
    );
    for f in report.theorem_1_failures.iter().chain(&report.theorem_2.failures) {
        table.push_str(&super::commands::report_table(f));
    }
    let _ = writeln!(
        table,
        "{} kl invariants on {} polynomials",
        verdict(report.kl.violations.is_empty()),
        report.kl.pairs
    );
    let _ = writeln!(table, "{}", verdict(pass));
    Ok(Output { result: serde_json::to_value(&report).expect("reports serialize"), table, pass })
}

fn verdict(pass: bool) -> &'static str {
    if pass {
        "PASS"
    } else {
        "FAIL"
    }
}
