//! Iwahori-Hecke algebra of the extended affine Weyl group in the
//! normalized basis `T̃_x = v^{-l(x)} T_x`.
//!
//! The quadratic relation is `T̃_s^2 = 1 - Q T̃_s`, equivalently
//! `T̃_s^{-1} = T̃_s + Q`, and `T̃_x T̃_y = T̃_{xy}` whenever lengths add.

use std::collections::{BTreeMap, HashMap};

use serde::{Deserialize, Serialize};

use crate::affine_weyl::{AffineWeylElt, AffineWeylGroup};
use crate::error::Result;
use crate::ring::RingElt;
use crate::root_datum::Coweight;

/// A finite combination `sum_x c_x T̃_x`.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct HeckeElt {
    terms: BTreeMap<AffineWeylElt, RingElt>,
}

impl HeckeElt {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn coeff(&self, x: &AffineWeylElt) -> RingElt {
        self.terms.get(x).cloned().unwrap_or_default()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&AffineWeylElt, &RingElt)> {
        self.terms.iter()
    }

    pub fn support(&self) -> impl Iterator<Item = &AffineWeylElt> {
        self.terms.keys()
    }

    pub fn add_term(&mut self, x: AffineWeylElt, c: &RingElt) {
        if c.is_zero() {
            return;
        }
        match self.terms.get_mut(&x) {
            Some(e) => {
                *e += c;
                if e.is_zero() {
                    self.terms.remove(&x);
                }
            }
            None => {
                self.terms.insert(x, c.clone());
            }
        }
    }

    pub fn add(&mut self, other: &HeckeElt) {
        for (x, c) in &other.terms {
            self.add_term(x.clone(), c);
        }
    }

    pub fn scale(&self, c: &RingElt) -> HeckeElt {
        let mut out = HeckeElt::zero();
        for (x, a) in &self.terms {
            out.add_term(x.clone(), &(a * c));
        }
        out
    }

    /// Value of the associated function at `x`: the coefficient of `T_x`,
    /// which is `v^{-l(x)}` times the coefficient of `T̃_x`.
    pub fn t_basis_value(&self, g: &AffineWeylGroup, x: &AffineWeylElt) -> RingElt {
        self.coeff(x).shift(-(g.length(x) as i32))
    }

    /// `(x, T-basis value)` pairs.
    pub fn t_basis_values(&self, g: &AffineWeylGroup) -> BTreeMap<AffineWeylElt, RingElt> {
        self.terms.iter().map(|(x, c)| (x.clone(), c.shift(-(g.length(x) as i32)))).collect()
    }
}

/// `T̃_x`.
pub fn t_tilde(x: &AffineWeylElt) -> HeckeElt {
    let mut h = HeckeElt::zero();
    h.add_term(x.clone(), &RingElt::one());
    h
}

/// `h T̃_{s_i}`.
pub fn mul_simple_right(g: &AffineWeylGroup, h: &HeckeElt, i: usize) -> HeckeElt {
    let minus_q = -RingElt::big_q();
    let mut out = HeckeElt::zero();
    for (x, c) in h.terms() {
        let xs = g.mul_simple(x, i);
        let up = g.length(&xs) > g.length(x);
        out.add_term(xs, c);
        if !up {
            out.add_term(x.clone(), &(c * &minus_q));
        }
    }
    out
}

/// `T̃_{s_i} h`.
pub fn mul_simple_left(g: &AffineWeylGroup, i: usize, h: &HeckeElt) -> HeckeElt {
    let minus_q = -RingElt::big_q();
    let mut out = HeckeElt::zero();
    for (x, c) in h.terms() {
        let sx = g.simple_mul(i, x);
        let up = g.length(&sx) > g.length(x);
        out.add_term(sx, c);
        if !up {
            out.add_term(x.clone(), &(c * &minus_q));
        }
    }
    out
}

/// `h T̃_tau` for `tau` of length zero.
fn mul_length_zero_right(g: &AffineWeylGroup, h: &HeckeElt, tau: &AffineWeylElt) -> HeckeElt {
    HeckeElt { terms: h.terms.iter().map(|(x, c)| (g.mul(x, tau), c.clone())).collect() }
}

/// `T̃_tau h` for `tau` of length zero.
fn mul_length_zero_left(g: &AffineWeylGroup, tau: &AffineWeylElt, h: &HeckeElt) -> HeckeElt {
    HeckeElt { terms: h.terms.iter().map(|(x, c)| (g.mul(tau, x), c.clone())).collect() }
}

/// `h (T̃_s + Q)`, i.e. `h T̃_s^{-1}`.
fn mul_simple_inverse_right(g: &AffineWeylGroup, h: &HeckeElt, i: usize) -> HeckeElt {
    let mut out = mul_simple_right(g, h, i);
    out.add(&h.scale(&RingElt::big_q()));
    out
}

/// `(T̃_s + Q) h`.
#[cfg(test)]
fn mul_simple_inverse_left(g: &AffineWeylGroup, i: usize, h: &HeckeElt) -> HeckeElt {
    let mut out = mul_simple_left(g, i, h);
    out.add(&h.scale(&RingElt::big_q()));
    out
}

/// Product in the Hecke algebra: each basis element `T̃_y` of `b` is
/// factored as `T̃_tau T̃_{s_1} ... T̃_{s_m}` along a reduced word.
pub fn mul(g: &AffineWeylGroup, a: &HeckeElt, b: &HeckeElt) -> HeckeElt {
    let mut out = HeckeElt::zero();
    for (y, c) in b.terms() {
        let (tau, word) = g.omega_part_and_reduced_word(y);
        let mut acc = mul_length_zero_right(g, a, &tau);
        for &i in &word {
            acc = mul_simple_right(g, &acc, i as usize);
        }
        out.add(&acc.scale(c));
    }
    out
}

/// Product with a results cache for repeated right factors.
pub struct HeckeMultiplier<'g> {
    group: &'g AffineWeylGroup,
    words: HashMap<AffineWeylElt, (AffineWeylElt, Vec<u8>)>,
}

impl<'g> HeckeMultiplier<'g> {
    pub fn new(group: &'g AffineWeylGroup) -> Self {
        Self { group, words: HashMap::new() }
    }

    pub fn mul(&mut self, a: &HeckeElt, b: &HeckeElt) -> HeckeElt {
        let g = self.group;
        let mut out = HeckeElt::zero();
        for (y, c) in b.terms() {
            let (tau, word) = self
                .words
                .entry(y.clone())
                .or_insert_with(|| g.omega_part_and_reduced_word(y))
                .clone();
            let mut acc = mul_length_zero_right(g, a, &tau);
            for &i in &word {
                acc = mul_simple_right(g, &acc, i as usize);
            }
            out.add(&acc.scale(c));
        }
        out
    }
}

/// `T̃_x^{-1} = (T̃_{s_m} + Q) ... (T̃_{s_1} + Q) T̃_{tau^{-1}}` for
/// `x = tau s_1 ... s_m`.
pub fn t_tilde_inv(g: &AffineWeylGroup, x: &AffineWeylElt) -> HeckeElt {
    let (tau, word) = g.omega_part_and_reduced_word(x);
    let mut h = t_tilde(&g.identity());
    for &i in word.iter().rev() {
        h = mul_simple_inverse_right(g, &h, i as usize);
    }
    mul_length_zero_right(g, &h, &g.inverse(&tau))
}

/// The Wakimoto function `T̃_u T̃_{v^{-1}}^{-1}`.
///
/// Starts from `T̃_{v^{-1}}^{-1}` and multiplies on the left by the letters
/// of a reduced word of `u`, last letter first, then by its length-zero part.
pub fn wakimoto(g: &AffineWeylGroup, u: &AffineWeylElt, v: &AffineWeylElt) -> HeckeElt {
    let mut h = t_tilde_inv(g, &g.inverse(v));
    let (tau, word) = g.omega_part_and_reduced_word(u);
    for &i in word.iter().rev() {
        h = mul_simple_left(g, i as usize, &h);
    }
    mul_length_zero_left(g, &tau, &h)
}

/// `T̃_u T̃_{v^{-1}}^{-1}` computed by expanding `T̃_{v^{-1}}^{-1}` on the left
/// of `T̃_u` instead; an independent route used for cross-checks.
pub fn wakimoto_by_product(g: &AffineWeylGroup, u: &AffineWeylElt, v: &AffineWeylElt) -> HeckeElt {
    mul(g, &t_tilde(u), &t_tilde_inv(g, &g.inverse(v)))
}

/// `T̃_x^{-1}` built by left multiplication instead of right.
#[cfg(test)]
fn t_tilde_inv_left(g: &AffineWeylGroup, x: &AffineWeylElt) -> HeckeElt {
    let (tau, word) = g.omega_part_and_reduced_word(x);
    let mut h = t_tilde(&g.inverse(&tau));
    for &i in &word {
        h = mul_simple_inverse_left(g, i as usize, &h);
    }
    h
}

/// The coefficients `R^u_{x,v}(Q)` of a Wakimoto function, with each
/// coefficient rewritten as a polynomial in `Q` of parity `l(uv) - l(x)`.
pub fn wakimoto_r_polynomials(
    g: &AffineWeylGroup,
    u: &AffineWeylElt,
    v: &AffineWeylElt,
) -> Result<Vec<(AffineWeylElt, Vec<i64>)>> {
    let h = wakimoto(g, u, v);
    let luv = g.length(&g.mul(u, v)) as i64;
    h.terms()
        .map(|(x, c)| Ok((x.clone(), c.as_poly_in_big_q(luv - g.length(x) as i64)?)))
        .collect()
}

/// Bernstein's `Θ_lambda = T̃_{t_{lambda1}} T̃_{t_{lambda2}}^{-1}` for the
/// canonical dominant decomposition `lambda = lambda1 - lambda2`.
pub fn theta(g: &AffineWeylGroup, lambda: &Coweight) -> HeckeElt {
    let (l1, l2) = g.datum().dominant_decomposition(lambda);
    theta_with(g, &l1, &l2)
}

/// `T̃_{t_{l1}} T̃_{t_{l2}}^{-1}` for an explicit decomposition.
pub fn theta_with(g: &AffineWeylGroup, l1: &Coweight, l2: &Coweight) -> HeckeElt {
    wakimoto(g, &g.translation(l1.clone()), &g.translation(-l2))
}

/// Whether `f = (-1)^{d + l(y)} q^{d - l(y)} bar(f)` for a function value
/// `f` at an element of length `len`.
pub fn property_p_holds(value: &RingElt, len: usize, d: i64) -> bool {
    let len = len as i64;
    let sign = if (d + len).rem_euclid(2) == 0 { 1 } else { -1 };
    let rhs = value.bar().shift((2 * (d - len)) as i32).scale(sign);
    *value == rhs
}

/// Outcome of checking property `(P)_d` elementwise.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PropertyPReport {
    pub d: i64,
    pub holds: bool,
    pub violations: Vec<AffineWeylElt>,
}

/// Checks `(P)_d` at every element in the support of `h`, reading function
/// values from the `T` basis.
pub fn check_property_p(g: &AffineWeylGroup, h: &HeckeElt, d: i64) -> PropertyPReport {
    let violations: Vec<AffineWeylElt> = h
        .t_basis_values(g)
        .into_iter()
        .filter(|(x, f)| !property_p_holds(f, g.length(x), d))
        .map(|(x, _)| x)
        .collect();
    PropertyPReport { d, holds: violations.is_empty(), violations }
}

/// One term of the JSON form of a Hecke element.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct HeckeTermJson {
    pub element: String,
    pub coeff_v: RingElt,
    #[serde(rename = "coeff_Q", default, skip_serializing_if = "Option::is_none")]
    pub coeff_q: Option<Vec<i64>>,
}

/// Terms in canonical element order. `parity_base`, when given, adds the
/// `Q`-expansion of each coefficient with parity `parity_base - l(x)`.
pub fn to_json(g: &AffineWeylGroup, h: &HeckeElt, parity_base: Option<i64>) -> Vec<HeckeTermJson> {
    let mut xs: Vec<AffineWeylElt> = h.support().cloned().collect();
    g.sort_canonical(&mut xs);
    xs.into_iter()
        .map(|x| {
            let c = h.coeff(&x);
            let coeff_q = parity_base.and_then(|b| c.as_poly_in_big_q(b - g.length(&x) as i64).ok());
            HeckeTermJson { element: g.format(&x), coeff_v: c, coeff_q }
        })
        .collect()
}

pub fn from_json(g: &AffineWeylGroup, terms: &[HeckeTermJson]) -> Result<HeckeElt> {
    let mut h = HeckeElt::zero();
    for t in terms {
        let x = crate::expr::parse_element(g, &t.element)?;
        h.add_term(x, &t.coeff_v);
    }
    Ok(h)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::root_datum::{Preset, RootDatum};

    fn group(p: Preset) -> AffineWeylGroup {
        AffineWeylGroup::new(RootDatum::preset(p).unwrap())
    }

    fn q() -> RingElt {
        RingElt::big_q()
    }

    fn from(terms: &[(&AffineWeylElt, RingElt)]) -> HeckeElt {
        let mut h = HeckeElt::zero();
        for (x, c) in terms {
            h.add_term((*x).clone(), c);
        }
        h
    }

    #[test]
    fn quadratic_relation() {
        let g = group(Preset::Sl(2));
        let e = g.identity();
        for i in 0..2 {
            let s = g.simple_reflection(i).clone();
            let sq = mul(&g, &t_tilde(&s), &t_tilde(&s));
            assert_eq!(sq, from(&[(&e, RingElt::one()), (&s, -q())]));
        }
    }

    #[test]
    fn length_additive_products() {
        let g = group(Preset::Sl(2));
        let s0 = g.simple_reflection(0).clone();
        let s1 = g.simple_reflection(1).clone();
        let p = mul(&g, &t_tilde(&s1), &t_tilde(&s0));
        assert_eq!(p, t_tilde(&g.translation(Coweight::new(&[1]))));
    }

    #[test]
    fn inverse_examples() {
        let g = group(Preset::Sl(2));
        let e = g.identity();
        let s0 = g.simple_reflection(0).clone();
        let s1 = g.simple_reflection(1).clone();
        assert_eq!(t_tilde_inv(&g, &s1), from(&[(&s1, RingElt::one()), (&e, q())]));
        assert_eq!(t_tilde_inv(&g, &e), t_tilde(&e));
        let x = g.mul(&s1, &s0);
        let want = from(&[
            (&g.mul(&s0, &s1), RingElt::one()),
            (&s0, q()),
            (&s1, q()),
            (&e, &q() * &q()),
        ]);
        assert_eq!(t_tilde_inv(&g, &x), want);
        assert_eq!(mul(&g, &t_tilde(&x), &t_tilde_inv(&g, &x)), t_tilde(&e));
        assert_eq!(t_tilde_inv_left(&g, &x), t_tilde_inv(&g, &x));
    }

    #[test]
    fn length_zero_basis_element() {
        let g = group(Preset::Gl(2));
        let tau = g.omega_element(1).unwrap();
        let h = t_tilde(&tau);
        assert_eq!(h.t_basis_value(&g, &tau), RingElt::one());
        let inv = t_tilde_inv(&g, &tau);
        assert_eq!(inv, t_tilde(&g.inverse(&tau)));
    }

    #[test]
    fn wakimoto_examples() {
        let g = group(Preset::Sl(2));
        let e = g.identity();
        let s0 = g.simple_reflection(0).clone();
        let s1 = g.simple_reflection(1).clone();
        for s in [&s0, &s1] {
            assert_eq!(wakimoto(&g, s, s), t_tilde(&e));
        }
        let w = wakimoto(&g, &s1, &s0);
        assert_eq!(w, from(&[(&g.mul(&s1, &s0), RingElt::one()), (&s1, q())]));
        let r = wakimoto_r_polynomials(&g, &s1, &s0).unwrap();
        assert!(r.contains(&(g.mul(&s1, &s0), vec![1])));
        assert!(r.contains(&(s1.clone(), vec![0, 1])));
        let v = g.mul(&s0, &s1);
        assert_eq!(wakimoto(&g, &e, &v), t_tilde_inv(&g, &g.inverse(&v)));
        assert_eq!(wakimoto(&g, &s1, &v), wakimoto_by_product(&g, &s1, &v));
    }

    #[test]
    fn theta_examples() {
        let g = group(Preset::Gl(2));
        let t = |c: &[i64]| g.translation(Coweight::new(c));
        assert_eq!(theta(&g, &Coweight::new(&[1, 0])), t_tilde(&t(&[1, 0])));
        assert_eq!(theta(&g, &Coweight::new(&[0, 0])), t_tilde(&g.identity()));
        let tau = g.omega_element(1).unwrap();
        assert_eq!(
            theta(&g, &Coweight::new(&[0, 1])),
            from(&[(&t(&[0, 1]), RingElt::one()), (&tau, q())])
        );
        assert!(g.bruhat_leq(&tau, &t(&[1, 0])));
    }

    #[test]
    fn property_p_examples() {
        let g = group(Preset::Gl(2));
        let e = g.identity();
        assert!(check_property_p(&g, &t_tilde(&e), 0).holds);
        let bad = from(&[(&e, RingElt::q())]);
        let report = check_property_p(&g, &bad, 0);
        assert!(!report.holds);
        assert_eq!(report.violations, vec![e]);
        assert!(property_p_holds(&RingElt::from_q_coeffs(&[-1, 1]), 0, 1));
    }

    #[test]
    fn json_round_trip() {
        let g = group(Preset::Gl(2));
        let h = theta(&g, &Coweight::new(&[-1, 2]));
        let json = to_json(&g, &h, Some(2));
        let text = serde_json::to_string(&json).unwrap();
        let back: Vec<HeckeTermJson> = serde_json::from_str(&text).unwrap();
        assert_eq!(serde_json::to_string(&back).unwrap(), text);
        assert_eq!(from_json(&g, &back).unwrap(), h);
    }
}
