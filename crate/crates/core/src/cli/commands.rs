use std::fmt::Write as _;

use serde_json::{json, Value};

use super::expr::{parse_coweight, parse_element};
use super::{Command, Output};
use crate::affine_weyl::{AffineWeylElt, AffineWeylGroup};
use crate::error::Result;
use crate::hecke::{self, HeckeElt};
use crate::kl::KlTable;
use crate::nearby::{self, VerificationReport};

fn ok(result: Value, table: String) -> Output {
    Output { result, table, pass: true }
}

fn word_text(word: &[u8]) -> String {
    if word.is_empty() {
        "e".into()
    } else {
        word.iter().map(|i| format!("s{i}")).collect::<Vec<_>>().join(" * ")
    }
}

fn hecke_table(g: &AffineWeylGroup, h: &HeckeElt) -> String {
    let mut xs: Vec<AffineWeylElt> = h.support().cloned().collect();
    g.sort_canonical(&mut xs);
    if xs.is_empty() {
        return "0\n".into();
    }
    let mut out = String::new();
    for x in xs {
        let _ = writeln!(out, "{:>24}  T~[{}]", h.coeff(&x).to_string(), g.format(&x));
    }
    out
}

pub fn report_table(r: &VerificationReport) -> String {
    let mut out = String::new();
    let inputs: Vec<String> = r.input.iter().map(|(k, v)| format!("{k} = {v}")).collect();
    let _ = writeln!(out, "{} on {} ({}), d = {}", r.check, r.group, inputs.join(", "), r.d);
    let _ = writeln!(out, "{:<28} {:>3}  {:<18} {:<18} {:>4} {:>5}  failed", "element", "len", "trace", "multiplicity", "deg", "bound");
    for e in &r.elements {
        let failed: Vec<&str> = e.checks.iter().filter(|(_, &v)| !v).map(|(k, _)| k.as_str()).collect();
        let deg = e.degree.map(|d| d.to_string()).unwrap_or_else(|| "-".into());
        let _ = writeln!(
            out,
            "{:<28} {:>3}  {:<18} {:<18} {:>4} {:>5}  {}",
            e.element,
            e.length,
            e.trace_value,
            e.multiplicity,
            deg,
            e.bound,
            if failed.is_empty() { "-".to_string() } else { failed.join(",") }
        );
    }
    for (k, v) in &r.summary {
        let _ = writeln!(out, "{} {k}", if *v { "PASS" } else { "FAIL" });
    }
    for (k, v) in &r.observations {
        let _ = writeln!(out, "note {k} = {v}");
    }
    let _ = writeln!(out, "{}", if r.pass { "PASS" } else { "FAIL" });
    out
}

fn report_output(r: VerificationReport) -> Output {
    let table = report_table(&r);
    let pass = r.pass;
    Output { result: serde_json::to_value(&r).expect("reports serialize"), table, pass }
}

pub fn dispatch(g: &AffineWeylGroup, kl: &mut KlTable, cmd: &Command) -> Result<Output> {
    let el = |s: &str| parse_element(g, s);
    let cw = |s: &str| parse_coweight(g, s);
    Ok(match cmd {
        Command::Length { x } => {
            let x = el(x)?;
            let l = g.length(&x);
            ok(json!({"element": g.format(&x), "length": l}), format!("{l}\n"))
        }
        Command::Word { x } => {
            let x = el(x)?;
            let (tau, word) = g.omega_part_and_reduced_word(&x);
            let text = word_text(&word);
            ok(
                json!({"element": g.format(&x), "omega_part": g.format(&tau), "word": word, "word_text": text}),
                format!("{} . {}\n", g.format(&tau), text),
            )
        }
        Command::Bruhat { x, y } => {
            let (x, y) = (el(x)?, el(y)?);
            let leq = g.bruhat_leq(&x, &y);
            ok(
                json!({"x": g.format(&x), "y": g.format(&y), "leq": leq, "lt": leq && x != y}),
                format!("{leq}\n"),
            )
        }
        Command::Adm { mu } => {
            let mu = cw(mu)?;
            let mut xs: Vec<AffineWeylElt> = g.admissible_set(&mu)?.into_iter().collect();
            g.sort_canonical(&mut xs);
            let names: Vec<String> = xs.iter().map(|x| g.format(x)).collect();
            let mut table = String::new();
            for (x, n) in xs.iter().zip(&names) {
                let _ = writeln!(table, "{:>3}  {n}", g.length(x));
            }
            ok(json!({"mu": mu.to_string(), "count": names.len(), "elements": names}), table)
        }
        Command::OmegaSet { mu } => {
            let mu = cw(mu)?;
            let chars = g.datum().character(&mu)?;
            let mut table = String::new();
            let weights: Vec<Value> = chars
                .iter()
                .map(|(l, m)| {
                    let _ = writeln!(table, "{l}  {m}");
                    json!({"weight": l.to_string(), "multiplicity": m})
                })
                .collect();
            ok(json!({"mu": mu.to_string(), "count": weights.len(), "weights": weights}), table)
        }
        Command::WeightMult { mu, lambda } => {
            let (mu, lambda) = (cw(mu)?, cw(lambda)?);
            let m = g.datum().weight_multiplicity(&mu, &lambda)?;
            ok(json!({"mu": mu.to_string(), "lambda": lambda.to_string(), "multiplicity": m}), format!("{m}\n"))
        }
        Command::HeckeMul { x, y } => {
            let (x, y) = (el(x)?, el(y)?);
            let h = hecke::mul(g, &hecke::t_tilde(&x), &hecke::t_tilde(&y));
            ok(
                json!({"x": g.format(&x), "y": g.format(&y), "terms": hecke::to_json(g, &h, None)}),
                hecke_table(g, &h),
            )
        }
        Command::Inv { x } => {
            let x = el(x)?;
            let h = hecke::t_tilde_inv(g, &x);
            ok(json!({"x": g.format(&x), "terms": hecke::to_json(g, &h, None)}), hecke_table(g, &h))
        }
        Command::Wakimoto { u, v } => {
            let (u, v) = (el(u)?, el(v)?);
            let d = g.length(&g.mul(&u, &v)) as i64;
            let h = hecke::wakimoto(g, &u, &v);
            ok(
                json!({"u": g.format(&u), "v": g.format(&v), "d": d, "terms": hecke::to_json(g, &h, Some(d))}),
                hecke_table(g, &h),
            )
        }
        Command::Theta { lambda } => {
            let lambda = cw(lambda)?;
            let (l1, l2) = g.datum().dominant_decomposition(&lambda);
            let h = hecke::theta(g, &lambda);
            ok(
                json!({
                    "lambda": lambda.to_string(),
                    "decomposition": [l1.to_string(), l2.to_string()],
                    "terms": hecke::to_json(g, &h, None),
                }),
                hecke_table(g, &h),
            )
        }
        Command::Kl { x, w } => {
            let (x, w) = (el(x)?, el(w)?);
            let p = kl.polynomial(g, &x, &w);
            let mu = kl.mu(g, &x, &w);
            ok(
                json!({
                    "x": g.format(&x),
                    "w": g.format(&w),
                    "polynomial": p.to_string(),
                    "coeffs": p.q_coeffs().unwrap_or_default(),
                    "mu": mu,
                }),
                format!("{p}\n"),
            )
        }
        Command::Kottwitz { mu } => {
            let mu = cw(mu)?;
            let h = nearby::kottwitz_hecke(g, &mu)?;
            let f = nearby::TraceFunction::from_hecke(g, &h);
            let mut xs: Vec<AffineWeylElt> = f.support().into_iter().collect();
            g.sort_canonical(&mut xs);
            let mut table = String::new();
            let trace: Vec<Value> = xs
                .iter()
                .map(|x| {
                    let _ = writeln!(table, "{:>24}  T[{}]", f.get(x).to_string(), g.format(x));
                    json!({"element": g.format(x), "value": f.get(x).to_string()})
                })
                .collect();
            let d = g.length(&g.translation(mu.clone()));
            ok(json!({"mu": mu.to_string(), "d": d, "terms": hecke::to_json(g, &h, None), "trace": trace}), table)
        }
        Command::VerifyThm1 { mu } => report_output(nearby::verify_theorem_1(g, kl, &cw(mu)?)?),
        Command::VerifyThm2 { u, v } => report_output(nearby::verify_theorem_2(g, kl, &el(u)?, &el(v)?)),
        Command::Sweep(args) => super::sweep::run(g, kl, args)?,
    })
}
