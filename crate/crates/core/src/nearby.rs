//! Trace functions, multiplicity functions and the verifiers for the
//! polynomiality and degree bounds of nearby cycles and Wakimoto sheaves.
//!
//! A trace function is `x -> Tr(Fr_q, F_x)`, the coefficient of `T_x`. It is
//! tied to the multiplicity function by
//!
//! ```text
//! f(x) = eps_x m(x) + sum_{w > x} eps_w m(w) P_{x,w}(q),   eps_x = (-1)^{l(x)}.
//! ```

use std::collections::{BTreeMap, BTreeSet};

use serde::Serialize;

use crate::affine_weyl::{AffineWeylElt, AffineWeylGroup};
use crate::error::Result;
use crate::hecke::{self, HeckeElt};
use crate::kl::{union_of_lower_sets, KlTable};
use crate::ring::{QDegree, RingElt};
use crate::root_datum::Coweight;

fn sign(len: usize) -> i64 {
    if len.is_multiple_of(2) {
        1
    } else {
        -1
    }
}

/// `x -> Tr(Fr_q, F_x)` with finite support; zero values are not stored.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct TraceFunction {
    values: BTreeMap<AffineWeylElt, RingElt>,
}

/// `w -> m(F, w) = sum_i m(F, w, i) q^i` with finite support.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct MultiplicityFunction {
    values: BTreeMap<AffineWeylElt, RingElt>,
}

macro_rules! finite_map_fns {
    ($t:ty) => {
        impl $t {
            pub fn new() -> Self {
                Self::default()
            }

            pub fn get(&self, x: &AffineWeylElt) -> RingElt {
                self.values.get(x).cloned().unwrap_or_default()
            }

            pub fn set(&mut self, x: AffineWeylElt, value: RingElt) {
                if value.is_zero() {
                    self.values.remove(&x);
                } else {
                    self.values.insert(x, value);
                }
            }

            pub fn support(&self) -> BTreeSet<AffineWeylElt> {
                self.values.keys().cloned().collect()
            }

            pub fn iter(&self) -> impl Iterator<Item = (&AffineWeylElt, &RingElt)> {
                self.values.iter()
            }

            pub fn len(&self) -> usize {
                self.values.len()
            }

            pub fn is_empty(&self) -> bool {
                self.values.is_empty()
            }
        }

        impl FromIterator<(AffineWeylElt, RingElt)> for $t {
            fn from_iter<I: IntoIterator<Item = (AffineWeylElt, RingElt)>>(iter: I) -> Self {
                let mut out = Self::new();
                for (x, c) in iter {
                    let sum = &out.get(&x) + &c;
                    out.set(x, sum);
                }
                out
            }
        }
    };
}

finite_map_fns!(TraceFunction);
finite_map_fns!(MultiplicityFunction);

impl TraceFunction {
    /// Reads `h` in the `T` basis.
    pub fn from_hecke(g: &AffineWeylGroup, h: &HeckeElt) -> Self {
        h.t_basis_values(g).into_iter().collect()
    }

    /// The element `sum_x f(x) T_x` in the normalized basis.
    pub fn to_hecke(&self, g: &AffineWeylGroup) -> HeckeElt {
        let mut h = HeckeElt::zero();
        for (x, c) in &self.values {
            h.add_term(x.clone(), &c.shift(g.length(x) as i32));
        }
        h
    }
}

/// The Kottwitz function `eps_mu q_mu^{1/2} sum_{lambda in Omega(mu)} m_mu(lambda) Theta_lambda`
/// in the normalized basis, with `eps_mu = (-1)^{l(t_mu)}` and `q_mu^{1/2} = v^{l(t_mu)}`.
pub fn kottwitz_hecke(g: &AffineWeylGroup, mu: &Coweight) -> Result<HeckeElt> {
    let chars = g.datum().character(mu)?;
    let l = g.length(&g.translation(mu.clone()));
    let mut h = HeckeElt::zero();
    for (lambda, m) in chars {
        h.add(&hecke::theta(g, &lambda).scale(&RingElt::constant(m as i64)));
    }
    Ok(h.scale(&RingElt::monomial(sign(l), l as i32)))
}

pub fn kottwitz_trace(g: &AffineWeylGroup, mu: &Coweight) -> Result<TraceFunction> {
    Ok(TraceFunction::from_hecke(g, &kottwitz_hecke(g, mu)?))
}

/// Trace function of the normalized Wakimoto sheaf:
/// `eps_u eps_v v^{l(uv)} sum_x v^{-l(x)} R^u_{x,v} T_x`.
pub fn wakimoto_trace(g: &AffineWeylGroup, u: &AffineWeylElt, v: &AffineWeylElt) -> TraceFunction {
    let luv = g.length(&g.mul(u, v));
    let scale = RingElt::monomial(sign(g.length(u)) * sign(g.length(v)), luv as i32);
    TraceFunction::from_hecke(g, &hecke::wakimoto(g, u, v).scale(&scale))
}

/// Evaluates the multiplicity recursion on the union of the lower sets of
/// the IC-support.
pub fn trace_from_multiplicities(g: &AffineWeylGroup, kl: &mut KlTable, m: &MultiplicityFunction) -> TraceFunction {
    let mut f: BTreeMap<AffineWeylElt, RingElt> = BTreeMap::new();
    for (w, mw) in m.iter() {
        let c = mw.scale(sign(g.length(w)));
        for x in g.bruhat_lower_set(w) {
            let p = kl.polynomial(g, &x, w);
            *f.entry(x).or_default() += &(&c * &p);
        }
    }
    f.into_iter().collect()
}

/// Solves the recursion for `m`, in decreasing length over the lower sets of
/// the maximal elements of the support.
pub fn multiplicities_from_trace(g: &AffineWeylGroup, kl: &mut KlTable, f: &TraceFunction) -> MultiplicityFunction {
    let supp = f.support();
    let tops = maximal_elements(g, &supp);
    let mut candidates: Vec<AffineWeylElt> = union_of_lower_sets(g, &tops).into_iter().collect();
    candidates.sort_by_key(|x| std::cmp::Reverse(g.length(x)));
    let mut m = MultiplicityFunction::new();
    let mut solved: Vec<(AffineWeylElt, RingElt)> = Vec::new();
    for x in candidates {
        let lx = g.length(&x);
        let mut rest = f.get(&x);
        for (w, ew_mw) in &solved {
            if g.length(w) > lx {
                let p = kl.polynomial(g, &x, w);
                if !p.is_zero() {
                    rest -= &(ew_mw * &p);
                }
            }
        }
        if !rest.is_zero() {
            let mx = rest.scale(sign(lx));
            solved.push((x.clone(), rest));
            m.set(x, mx);
        }
    }
    m
}

/// Bruhat-maximal elements of a finite set.
pub fn maximal_elements(g: &AffineWeylGroup, set: &BTreeSet<AffineWeylElt>) -> BTreeSet<AffineWeylElt> {
    set.iter()
        .filter(|x| !set.iter().any(|y| y != *x && g.length(y) > g.length(x) && g.bruhat_leq(x, y)))
        .cloned()
        .collect()
}

/// `supp(f)`, `ICsupp(f)` and whether the two have the same maximal elements.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Supports {
    pub supp: BTreeSet<AffineWeylElt>,
    pub ic_supp: BTreeSet<AffineWeylElt>,
    pub maximal_agree: bool,
}

pub fn supports(g: &AffineWeylGroup, kl: &mut KlTable, f: &TraceFunction) -> Supports {
    let supp = f.support();
    let ic_supp = multiplicities_from_trace(g, kl, f).support();
    let maximal_agree = maximal_elements(g, &supp) == maximal_elements(g, &ic_supp);
    Supports { supp, ic_supp, maximal_agree }
}

/// Degree conditions at one element.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DegreeRecord {
    pub element: AffineWeylElt,
    pub trace: RingElt,
    pub multiplicity: RingElt,
    /// `d - l(x)`.
    pub bound: i64,
    /// The trace value is a polynomial in `q` of degree at most `bound`.
    pub trace_ok: bool,
    /// The multiplicity is a polynomial in `q` of degree at most `bound`.
    pub multiplicity_ok: bool,
    /// The two conditions, each required on `{y >= x}`, agree.
    pub consistent: bool,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DegreeBounds {
    pub d: i64,
    pub records: Vec<DegreeRecord>,
}

impl DegreeBounds {
    /// Elements where one condition holds on the upper set and the other does not.
    pub fn mismatches(&self) -> Vec<&AffineWeylElt> {
        self.records.iter().filter(|r| !r.consistent).map(|r| &r.element).collect()
    }

    /// Elements violating both conditions.
    pub fn violations(&self) -> Vec<&AffineWeylElt> {
        self.records.iter().filter(|r| !r.trace_ok && !r.multiplicity_ok).map(|r| &r.element).collect()
    }

    pub fn pass(&self) -> bool {
        self.records.iter().all(|r| r.trace_ok && r.multiplicity_ok && r.consistent)
    }
}

fn degree_ok(value: &RingElt, bound: i64) -> bool {
    value.degree_in_q().within(bound)
}

/// Checks at each candidate `x` that `f(x)` and `m(f, x)` are polynomials in
/// `q` of degree at most `d - l(x)`.
///
/// The two conditions are equivalent over the whole candidate set, and by
/// descending induction also over every upper set `{y >= x}`; the latter
/// pointwise form is what `consistent` records.
pub fn check_degree_bounds(g: &AffineWeylGroup, kl: &mut KlTable, f: &TraceFunction, d: i64) -> DegreeBounds {
    let m = multiplicities_from_trace(g, kl, f);
    let mut elts: Vec<AffineWeylElt> = f.support().union(&m.support()).cloned().collect();
    g.sort_canonical(&mut elts);
    let mut records: Vec<DegreeRecord> = elts
        .into_iter()
        .map(|x| {
            let bound = d - g.length(&x) as i64;
            let (trace, multiplicity) = (f.get(&x), m.get(&x));
            DegreeRecord {
                trace_ok: degree_ok(&trace, bound),
                multiplicity_ok: degree_ok(&multiplicity, bound),
                element: x,
                trace,
                multiplicity,
                bound,
                consistent: true,
            }
        })
        .collect();
    // Outside this list both functions vanish, so both conditions hold there.
    let flags: Vec<(bool, bool)> = records.iter().map(|r| (r.trace_ok, r.multiplicity_ok)).collect();
    let elts: Vec<AffineWeylElt> = records.iter().map(|r| r.element.clone()).collect();
    for (i, r) in records.iter_mut().enumerate() {
        let (mut up_trace, mut up_mult) = (true, true);
        for (j, y) in elts.iter().enumerate() {
            if j == i || g.bruhat_leq(&elts[i], y) {
                up_trace &= flags[j].0;
                up_mult &= flags[j].1;
            }
        }
        r.consistent = up_trace == up_mult;
    }
    DegreeBounds { d, records }
}

/// One element of a verification report.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ElementRecord {
    pub element: String,
    pub length: usize,
    pub trace_value: String,
    pub multiplicity: String,
    /// `deg_q` of the multiplicity; absent when it is zero or not a polynomial.
    pub degree: Option<i64>,
    pub bound: i64,
    pub checks: BTreeMap<String, bool>,
}

/// Outcome of a composite verification.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct VerificationReport {
    pub check: String,
    pub group: String,
    pub input: BTreeMap<String, String>,
    pub d: i64,
    pub pass: bool,
    /// Required checks.
    pub summary: BTreeMap<String, bool>,
    /// Recorded facts that are not required to hold.
    pub observations: BTreeMap<String, bool>,
    pub elements: Vec<ElementRecord>,
}

impl VerificationReport {
    fn finish(mut self) -> Self {
        self.pass = self.summary.values().all(|&b| b);
        self
    }
}

fn base_record(g: &AffineWeylGroup, r: &DegreeRecord) -> ElementRecord {
    let degree = match r.multiplicity.degree_in_q() {
        QDegree::Degree(k) => Some(i64::from(k)),
        _ => None,
    };
    let mut checks = BTreeMap::new();
    checks.insert("trace_degree".to_string(), r.trace_ok);
    checks.insert("multiplicity_degree".to_string(), r.multiplicity_ok);
    checks.insert("equivalence".to_string(), r.consistent);
    ElementRecord {
        element: g.format(&r.element),
        length: g.length(&r.element),
        trace_value: r.trace.to_string(),
        multiplicity: r.multiplicity.to_string(),
        degree,
        bound: r.bound,
        checks,
    }
}

fn all_checks(elements: &[ElementRecord], name: &str) -> bool {
    elements.iter().all(|e| e.checks.get(name).copied().unwrap_or(true))
}

/// Checks, for the Kottwitz function of `mu`: `ICsupp = Adm(mu)`; the
/// multiplicities are polynomials in `q` with nonnegative coefficients of
/// degree at most `l(t_mu) - l(w)`; and `(P)_d` holds with `d = l(t_mu)`.
pub fn verify_theorem_1(g: &AffineWeylGroup, kl: &mut KlTable, mu: &Coweight) -> Result<VerificationReport> {
    let adm = g.admissible_set(mu)?;
    let f = kottwitz_trace(g, mu)?;
    let d = g.length(&g.translation(mu.clone())) as i64;
    let bounds = check_degree_bounds(g, kl, &f, d);
    let sup = supports(g, kl, &f);

    let mut covered: BTreeSet<AffineWeylElt> = bounds.records.iter().map(|r| r.element.clone()).collect();
    let mut records = bounds.records.clone();
    for x in &adm {
        if covered.insert(x.clone()) {
            let bound = d - g.length(x) as i64;
            records.push(DegreeRecord {
                element: x.clone(),
                trace: RingElt::zero(),
                multiplicity: RingElt::zero(),
                bound,
                trace_ok: true,
                multiplicity_ok: true,
                consistent: true,
            });
        }
    }
    let mut elements: Vec<(AffineWeylElt, ElementRecord)> = records
        .iter()
        .map(|r| {
            let mut e = base_record(g, r);
            let m = &r.multiplicity;
            e.checks.insert("multiplicity_nonnegative".into(), m.q_coeffs().is_some() && m.is_nonnegative());
            e.checks.insert("in_adm".into(), m.is_zero() != adm.contains(&r.element));
            e.checks.insert("property_p".into(), hecke::property_p_holds(&r.trace, e.length, d));
            (r.element.clone(), e)
        })
        .collect();
    elements.sort_by(|a, b| g.canonical_cmp(&a.0, &b.0));
    let elements: Vec<ElementRecord> = elements.into_iter().map(|(_, e)| e).collect();

    let mut summary = BTreeMap::new();
    summary.insert("ic_support_equals_adm".to_string(), sup.ic_supp == adm);
    summary.insert("multiplicities_nonnegative".to_string(), all_checks(&elements, "multiplicity_nonnegative"));
    summary.insert("degree_bounds".to_string(), bounds.pass());
    summary.insert("property_p".to_string(), all_checks(&elements, "property_p"));
    let mut observations = BTreeMap::new();
    observations.insert("support_equals_adm".to_string(), sup.supp == adm);
    observations.insert("maximal_elements_agree".to_string(), sup.maximal_agree);

    let mut input = BTreeMap::new();
    input.insert("mu".to_string(), mu.to_string());
    Ok(VerificationReport {
        check: "theorem-1".into(),
        group: g.datum().name().to_string(),
        input,
        d,
        pass: false,
        summary,
        observations,
        elements,
    }
    .finish())
}

/// Checks, for the normalized Wakimoto function of `(u, v)` with
/// `d = l(uv)`: support in `{x <= uv}`; the degree bounds; each
/// `R^u_{x,v}` a polynomial in `Q` of parity `d - l(x)` and degree at most
/// `d - l(x)`; and `(P)_d`.
pub fn verify_theorem_2(
    g: &AffineWeylGroup,
    kl: &mut KlTable,
    u: &AffineWeylElt,
    v: &AffineWeylElt,
) -> VerificationReport {
    let uv = g.mul(u, v);
    let d = g.length(&uv) as i64;
    let h = hecke::wakimoto(g, u, v);
    let f = wakimoto_trace(g, u, v);
    let bounds = check_degree_bounds(g, kl, &f, d);
    let sup = supports(g, kl, &f);

    let elements: Vec<ElementRecord> = bounds
        .records
        .iter()
        .map(|r| {
            let mut e = base_record(g, r);
            let bound = r.bound;
            let parity = h
                .coeff(&r.element)
                .as_poly_in_big_q(bound)
                .map(|c| (c.len() as i64) <= bound + 1)
                .unwrap_or(false);
            e.checks.insert("in_lower_set".into(), r.trace.is_zero() || g.bruhat_leq(&r.element, &uv));
            e.checks.insert("q_parity".into(), parity);
            e.checks.insert("property_p".into(), hecke::property_p_holds(&r.trace, e.length, d));
            e
        })
        .collect();

    let mut summary = BTreeMap::new();
    summary.insert("support_in_lower_set".to_string(), all_checks(&elements, "in_lower_set"));
    summary.insert("degree_bounds".to_string(), bounds.pass());
    summary.insert("q_parity".to_string(), all_checks(&elements, "q_parity"));
    summary.insert("property_p".to_string(), all_checks(&elements, "property_p"));
    let mut observations = BTreeMap::new();
    observations.insert("maximal_elements_agree".to_string(), sup.maximal_agree);
    observations.insert(
        "maximal_element_is_uv".to_string(),
        maximal_elements(g, &sup.ic_supp) == BTreeSet::from([uv.clone()]),
    );

    let mut input = BTreeMap::new();
    input.insert("u".to_string(), g.format(u));
    input.insert("v".to_string(), g.format(v));
    VerificationReport {
        check: "theorem-2".into(),
        group: g.datum().name().to_string(),
        input,
        d,
        pass: false,
        summary,
        observations,
        elements,
    }
    .finish()
}
