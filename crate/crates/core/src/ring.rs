//! Laurent polynomials in `v = q^{1/2}` with integer coefficients.
//!
//! Every scalar in the Hecke algebra lives here: `q = v^2`, the square root
//! `q^{1/2} = v`, and `Q = v^{-1} - v` (so that `q^{1/2} Q = 1 - q`).

use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, AddAssign, Mul, Neg, Sub, SubAssign};

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// `sum c_m v^m`, stored sparsely without zero coefficients.
#[derive(Debug, Clone, Default, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(transparent)]
pub struct RingElt {
    terms: BTreeMap<i32, i64>,
}

/// Result of reading a ring element as a polynomial in `q`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum QDegree {
    /// The zero polynomial.
    Zero,
    Degree(i32),
    /// Some monomial `v^m` has `m` odd or negative.
    NotPolynomial { exponent: i32 },
}

impl QDegree {
    /// True when this is a polynomial in `q` of degree at most `bound`.
    /// The zero polynomial satisfies every bound.
    pub fn within(self, bound: i64) -> bool {
        match self {
            QDegree::Zero => true,
            QDegree::Degree(d) => i64::from(d) <= bound,
            QDegree::NotPolynomial { .. } => false,
        }
    }
}

impl RingElt {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn one() -> Self {
        Self::monomial(1, 0)
    }

    pub fn constant(c: i64) -> Self {
        Self::monomial(c, 0)
    }

    /// `c v^m`.
    pub fn monomial(c: i64, m: i32) -> Self {
        let mut terms = BTreeMap::new();
        if c != 0 {
            terms.insert(m, c);
        }
        Self { terms }
    }

    /// `v = q^{1/2}`.
    pub fn v() -> Self {
        Self::monomial(1, 1)
    }

    pub fn v_pow(m: i32) -> Self {
        Self::monomial(1, m)
    }

    pub fn q() -> Self {
        Self::monomial(1, 2)
    }

    /// `Q = v^{-1} - v`.
    pub fn big_q() -> Self {
        Self::from_pairs([(-1, 1), (1, -1)])
    }

    /// `Q^n`.
    pub fn big_q_pow(n: u32) -> Self {
        let q = Self::big_q();
        (0..n).fold(Self::one(), |acc, _| &acc * &q)
    }

    pub fn from_pairs<I: IntoIterator<Item = (i32, i64)>>(pairs: I) -> Self {
        let mut out = Self::zero();
        for (m, c) in pairs {
            out.add_term(m, c);
        }
        out
    }

    /// Polynomial in `q` from its coefficient list, constant term first.
    pub fn from_q_coeffs(coeffs: &[i64]) -> Self {
        Self::from_pairs(coeffs.iter().enumerate().map(|(i, &c)| (2 * i as i32, c)))
    }

    /// Polynomial in `Q` from its coefficient list, constant term first.
    pub fn from_big_q_coeffs(coeffs: &[i64]) -> Self {
        let q = Self::big_q();
        let mut power = Self::one();
        let mut out = Self::zero();
        for &c in coeffs {
            if c != 0 {
                out += &power.scale(c);
            }
            power = &power * &q;
        }
        out
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn coeff(&self, m: i32) -> i64 {
        self.terms.get(&m).copied().unwrap_or(0)
    }

    /// Nonzero `(exponent, coefficient)` pairs in increasing exponent order.
    pub fn terms(&self) -> impl Iterator<Item = (i32, i64)> + '_ {
        self.terms.iter().map(|(&m, &c)| (m, c))
    }

    pub fn min_exponent(&self) -> Option<i32> {
        self.terms.keys().next().copied()
    }

    pub fn max_exponent(&self) -> Option<i32> {
        self.terms.keys().next_back().copied()
    }

    pub fn add_term(&mut self, m: i32, c: i64) {
        if c == 0 {
            return;
        }
        let e = self.terms.entry(m).or_insert(0);
        *e += c;
        if *e == 0 {
            self.terms.remove(&m);
        }
    }

    pub fn scale(&self, c: i64) -> Self {
        if c == 0 {
            return Self::zero();
        }
        Self {
            terms: self.terms.iter().map(|(&m, &x)| (m, x * c)).collect(),
        }
    }

    /// Multiplication by `v^k`.
    pub fn shift(&self, k: i32) -> Self {
        Self {
            terms: self.terms.iter().map(|(&m, &c)| (m + k, c)).collect(),
        }
    }

    /// The involution `v -> v^{-1}`.
    pub fn bar(&self) -> Self {
        Self {
            terms: self.terms.iter().map(|(&m, &c)| (-m, c)).collect(),
        }
    }

    /// Reads the element as a polynomial in `q = v^2`.
    pub fn degree_in_q(&self) -> QDegree {
        if let Some((&m, _)) = self.terms.iter().find(|(&m, _)| m < 0 || m % 2 != 0) {
            return QDegree::NotPolynomial { exponent: m };
        }
        match self.max_exponent() {
            None => QDegree::Zero,
            Some(m) => QDegree::Degree(m / 2),
        }
    }

    /// Coefficients in `q` (constant first) when this is a polynomial in `q`.
    pub fn q_coeffs(&self) -> Option<Vec<i64>> {
        match self.degree_in_q() {
            QDegree::Zero => Some(Vec::new()),
            QDegree::Degree(d) => Some((0..=d).map(|i| self.coeff(2 * i)).collect()),
            QDegree::NotPolynomial { .. } => None,
        }
    }

    /// Rewrites the element as `sum_i c_i Q^i` with every nonzero `c_i`
    /// at an index `i` congruent to `parity` mod 2.
    ///
    /// `Q^i` has lowest term `v^{-i}` with coefficient 1, so the expansion is
    /// found by repeatedly cancelling the lowest monomial.
    pub fn as_poly_in_big_q(&self, parity: i64) -> Result<Vec<i64>> {
        let mut rest = self.clone();
        let mut out: Vec<i64> = Vec::new();
        while let Some(m) = rest.min_exponent() {
            if m > 0 {
                return Err(Error::NotExpressible(format!(
                    "{self} is not a polynomial in Q (residual monomial v^{m})"
                )));
            }
            let i = (-m) as usize;
            if (i as i64 - parity).rem_euclid(2) != 0 {
                return Err(Error::NotExpressible(format!(
                    "{self} has a Q^{i} term of parity opposite to {parity}"
                )));
            }
            let c = rest.coeff(m);
            if out.len() <= i {
                out.resize(i + 1, 0);
            }
            out[i] += c;
            rest -= &Self::big_q_pow(i as u32).scale(c);
        }
        while out.last() == Some(&0) {
            out.pop();
        }
        Ok(out)
    }

    /// Evaluation at an integer value of `v`, when all exponents are nonnegative.
    pub fn eval_at(&self, v: i64) -> Option<i64> {
        let mut acc = 0i64;
        for (m, c) in self.terms() {
            let e = u32::try_from(m).ok()?;
            acc = acc.checked_add(c.checked_mul(v.checked_pow(e)?)?)?;
        }
        Some(acc)
    }

    /// True when every coefficient is nonnegative.
    pub fn is_nonnegative(&self) -> bool {
        self.terms.values().all(|&c| c >= 0)
    }
}

impl fmt::Display for RingElt {
    /// Polynomials in `q` print in `q`, anything else in `v`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let in_q = self.q_coeffs().is_some();
        let mut first = true;
        for (m, c) in self.terms.iter().rev().map(|(&m, &c)| (m, c)) {
            let (var, e) = if in_q { ("q", m / 2) } else { ("v", m) };
            let sign = if c < 0 { "-" } else { "+" };
            if first {
                if c < 0 {
                    write!(f, "-")?;
                }
            } else {
                write!(f, " {sign} ")?;
            }
            first = false;
            let a = c.abs();
            match e {
                0 => write!(f, "{a}")?,
                _ => {
                    if a != 1 {
                        write!(f, "{a}*")?;
                    }
                    if e == 1 {
                        write!(f, "{var}")?;
                    } else {
                        write!(f, "{var}^{e}")?;
                    }
                }
            }
        }
        Ok(())
    }
}

impl AddAssign<&RingElt> for RingElt {
    fn add_assign(&mut self, rhs: &RingElt) {
        for (&m, &c) in &rhs.terms {
            self.add_term(m, c);
        }
    }
}

impl SubAssign<&RingElt> for RingElt {
    fn sub_assign(&mut self, rhs: &RingElt) {
        for (&m, &c) in &rhs.terms {
            self.add_term(m, -c);
        }
    }
}

impl Add for &RingElt {
    type Output = RingElt;
    fn add(self, rhs: &RingElt) -> RingElt {
        let mut out = self.clone();
        out += rhs;
        out
    }
}

impl Sub for &RingElt {
    type Output = RingElt;
    fn sub(self, rhs: &RingElt) -> RingElt {
        let mut out = self.clone();
        out -= rhs;
        out
    }
}

impl Mul for &RingElt {
    type Output = RingElt;
    fn mul(self, rhs: &RingElt) -> RingElt {
        let mut out = RingElt::zero();
        for (&a, &x) in &self.terms {
            for (&b, &y) in &rhs.terms {
                out.add_term(a + b, x * y);
            }
        }
        out
    }
}

impl Neg for &RingElt {
    type Output = RingElt;
    fn neg(self) -> RingElt {
        self.scale(-1)
    }
}

impl Add for RingElt {
    type Output = RingElt;
    fn add(mut self, rhs: RingElt) -> RingElt {
        self += &rhs;
        self
    }
}

impl Sub for RingElt {
    type Output = RingElt;
    fn sub(mut self, rhs: RingElt) -> RingElt {
        self -= &rhs;
        self
    }
}

impl Mul for RingElt {
    type Output = RingElt;
    fn mul(self, rhs: RingElt) -> RingElt {
        &self * &rhs
    }
}

impl Neg for RingElt {
    type Output = RingElt;
    fn neg(self) -> RingElt {
        self.scale(-1)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn q_poly(c: &[i64]) -> RingElt {
        RingElt::from_q_coeffs(c)
    }

    #[test]
    fn big_q_relation() {
        // q^{1/2} Q = 1 - q
        let lhs = &RingElt::v() * &RingElt::big_q();
        assert_eq!(lhs, q_poly(&[1, -1]));
    }

    #[test]
    fn bar_examples() {
        assert_eq!(RingElt::one().bar(), RingElt::one());
        assert_eq!(RingElt::v().bar(), RingElt::v_pow(-1));
        assert_eq!(RingElt::big_q().bar(), -RingElt::big_q());
    }

    #[test]
    fn degree_in_q_examples() {
        assert_eq!(q_poly(&[1, 1]).degree_in_q(), QDegree::Degree(1));
        assert_eq!(
            RingElt::v().degree_in_q(),
            QDegree::NotPolynomial { exponent: 1 }
        );
        assert_eq!(
            RingElt::v_pow(-2).degree_in_q(),
            QDegree::NotPolynomial { exponent: -2 }
        );
        assert_eq!(RingElt::zero().degree_in_q(), QDegree::Zero);
        assert!(QDegree::Zero.within(-3));
    }

    #[test]
    fn as_poly_in_big_q_examples() {
        assert_eq!(RingElt::big_q().as_poly_in_big_q(1).unwrap(), vec![0, 1]);
        assert_eq!(RingElt::one().as_poly_in_big_q(0).unwrap(), vec![1]);
        // v^-2 - 2 + v^2 is exactly Q^2
        let r = RingElt::from_pairs([(-2, 1), (0, -2), (2, 1)]);
        assert_eq!(r.as_poly_in_big_q(0).unwrap(), vec![0, 0, 1]);
        // 1 - q = vQ is not a polynomial in Q
        assert!(q_poly(&[1, -1]).as_poly_in_big_q(0).is_err());
        assert!(RingElt::big_q().as_poly_in_big_q(0).is_err());
        assert_eq!(RingElt::zero().as_poly_in_big_q(1).unwrap(), Vec::<i64>::new());
    }

    #[test]
    fn display() {
        assert_eq!(q_poly(&[1, 1]).to_string(), "q + 1");
        assert_eq!(q_poly(&[-1, 0, 2]).to_string(), "2*q^2 - 1");
        assert_eq!(RingElt::big_q().to_string(), "-v + v^-1");
        assert_eq!(RingElt::zero().to_string(), "0");
    }

    fn arb_ring() -> impl Strategy<Value = RingElt> {
        proptest::collection::vec((-6i32..6, -5i64..5), 0..6).prop_map(RingElt::from_pairs)
    }

    proptest! {
        #[test]
        fn bar_is_ring_involution(a in arb_ring(), b in arb_ring()) {
            prop_assert_eq!(a.bar().bar(), a.clone());
            prop_assert_eq!((&a * &b).bar(), &a.bar() * &b.bar());
            prop_assert_eq!((&a + &b).bar(), &a.bar() + &b.bar());
        }

        #[test]
        fn big_q_expansion_round_trips(coeffs in proptest::collection::vec(-4i64..4, 0..6), parity in 0i64..2) {
            let masked: Vec<i64> = coeffs
                .iter()
                .enumerate()
                .map(|(i, &c)| if (i as i64 - parity) % 2 == 0 { c } else { 0 })
                .collect();
            let r = RingElt::from_big_q_coeffs(&masked);
            let mut back = r.as_poly_in_big_q(parity).unwrap();
            let mut want = masked.clone();
            while want.last() == Some(&0) { want.pop(); }
            while back.last() == Some(&0) { back.pop(); }
            prop_assert_eq!(back, want);
        }
    }
}
