//! The extended affine Weyl group `X_*(T) ⋊ W`.
//!
//! Elements are pairs `t_lambda w`. The simple affine reflections are the
//! reflections through the walls of the alcove `A⁻ = w_0(A)`: the finite
//! simple reflections `s_1, ..., s_l` and `s_0 = t_{-θ^vee} s_θ` for the
//! highest root `θ`. Simple reflections are indexed `0..=l`, with `0` for `s_0`.

use std::cmp::Ordering;
use std::collections::{BTreeSet, HashMap, VecDeque};

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::root_datum::{Coweight, FiniteWeylElt, RootDatum, RootIdx};

/// `t_lambda w`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct AffineWeylElt {
    pub translation: Coweight,
    pub finite: FiniteWeylElt,
}

/// The affine function `alpha + k` on the apartment.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct AffineRoot {
    pub root: RootIdx,
    pub offset: i64,
}

/// The simple affine reflections, index `0` being `s_0`.
#[derive(Debug, Clone)]
pub struct SimpleReflectionSet {
    pub elements: Vec<AffineWeylElt>,
    pub labels: Vec<String>,
    /// The B̄-positive simple affine root of each reflection.
    pub roots: Vec<AffineRoot>,
}

/// Extended affine Weyl group of a root datum.
#[derive(Debug, Clone)]
pub struct AffineWeylGroup {
    datum: RootDatum,
    simple: SimpleReflectionSet,
    omega_generator: Option<AffineWeylElt>,
}

impl AffineWeylGroup {
    pub fn new(datum: RootDatum) -> Self {
        let l = datum.semisimple_rank();
        let theta = datum.highest_root();
        let mut elements = Vec::with_capacity(l + 1);
        let mut labels = Vec::with_capacity(l + 1);
        let mut roots = Vec::with_capacity(l + 1);
        elements.push(AffineWeylElt {
            translation: -&datum.root(theta).coroot,
            finite: datum.reflection(theta),
        });
        labels.push("s0".to_string());
        roots.push(AffineRoot { root: theta, offset: 1 });
        for i in 1..=l {
            elements.push(AffineWeylElt {
                translation: Coweight::zero(datum.rank()),
                finite: datum.simple_reflection(i),
            });
            labels.push(format!("s{i}"));
            roots.push(AffineRoot { root: datum.negate_root(datum.simple_root_index(i)), offset: 0 });
        }
        let mut group = AffineWeylGroup {
            datum,
            simple: SimpleReflectionSet { elements, labels, roots },
            omega_generator: None,
        };
        group.omega_generator = group
            .datum
            .omega_generator()
            .cloned()
            .map(|g| group.omega_part(&group.translation(g)));
        group
    }

    pub fn from_preset_name(name: &str) -> Result<Self> {
        Ok(Self::new(RootDatum::from_preset_name(name)?))
    }

    pub fn datum(&self) -> &RootDatum {
        &self.datum
    }

    pub fn rank(&self) -> usize {
        self.datum.rank()
    }

    pub fn simple_reflections(&self) -> &SimpleReflectionSet {
        &self.simple
    }

    /// Number of simple affine reflections, `l + 1`.
    pub fn num_simple(&self) -> usize {
        self.simple.elements.len()
    }

    pub fn simple_reflection(&self, i: usize) -> &AffineWeylElt {
        &self.simple.elements[i]
    }

    // ---- group law ----

    pub fn identity(&self) -> AffineWeylElt {
        AffineWeylElt { translation: Coweight::zero(self.rank()), finite: FiniteWeylElt::IDENTITY }
    }

    pub fn translation(&self, lambda: Coweight) -> AffineWeylElt {
        AffineWeylElt { translation: lambda, finite: FiniteWeylElt::IDENTITY }
    }

    pub fn finite(&self, w: FiniteWeylElt) -> AffineWeylElt {
        AffineWeylElt { translation: Coweight::zero(self.rank()), finite: w }
    }

    /// Checks that `x` is an element of this group.
    pub fn check(&self, x: &AffineWeylElt) -> Result<()> {
        if x.translation.len() != self.rank() || x.finite.index() >= self.datum.weyl_order() {
            return Err(Error::DatumMismatch);
        }
        Ok(())
    }

    /// `(lambda1, w1)(lambda2, w2) = (lambda1 + w1 lambda2, w1 w2)`.
    pub fn mul(&self, x: &AffineWeylElt, y: &AffineWeylElt) -> AffineWeylElt {
        AffineWeylElt {
            translation: &x.translation + &self.datum.act_coweight(x.finite, &y.translation),
            finite: self.datum.weyl_mul(x.finite, y.finite),
        }
    }

    pub fn checked_mul(&self, x: &AffineWeylElt, y: &AffineWeylElt) -> Result<AffineWeylElt> {
        self.check(x)?;
        self.check(y)?;
        Ok(self.mul(x, y))
    }

    pub fn inverse(&self, x: &AffineWeylElt) -> AffineWeylElt {
        let w_inv = self.datum.weyl_inverse(x.finite);
        AffineWeylElt { translation: -&self.datum.act_coweight(w_inv, &x.translation), finite: w_inv }
    }

    pub fn pow(&self, x: &AffineWeylElt, n: i64) -> AffineWeylElt {
        let base = if n < 0 { self.inverse(x) } else { x.clone() };
        (0..n.unsigned_abs()).fold(self.identity(), |acc, _| self.mul(&acc, &base))
    }

    /// `x s_i`.
    pub fn mul_simple(&self, x: &AffineWeylElt, i: usize) -> AffineWeylElt {
        self.mul(x, &self.simple.elements[i])
    }

    /// `s_i x`.
    pub fn simple_mul(&self, i: usize, x: &AffineWeylElt) -> AffineWeylElt {
        self.mul(&self.simple.elements[i], x)
    }

    pub fn from_word(&self, word: &[u8]) -> AffineWeylElt {
        word.iter().fold(self.identity(), |acc, &i| self.mul_simple(&acc, i as usize))
    }

    // ---- affine roots ----

    /// `x . (alpha + k) = (alpha + k) ∘ x^{-1}`; for `x = t_lambda w` this is
    /// `w alpha + (k - <w alpha, lambda>)`.
    pub fn act_on_affine_root(&self, x: &AffineWeylElt, beta: AffineRoot) -> AffineRoot {
        let image = self.datum.act_root(x.finite, beta.root);
        let shift = self.datum.pairing(&self.datum.root(image).weight, &x.translation);
        AffineRoot { root: image, offset: beta.offset - shift }
    }

    /// Positive on `A⁻`: `k >= 1`, or `k = 0` and `alpha` is a negative root for `B`.
    pub fn is_positive_affine_root(&self, beta: AffineRoot) -> bool {
        beta.offset >= 1 || (beta.offset == 0 && !self.datum.is_positive_root(beta.root))
    }

    /// `s_{alpha + k} = t_{-k alpha^vee} s_alpha`.
    pub fn affine_reflection(&self, beta: AffineRoot) -> AffineWeylElt {
        let root = self.datum.root(beta.root);
        AffineWeylElt { translation: root.coroot.scale(-beta.offset), finite: self.datum.reflection(beta.root) }
    }

    // ---- length ----

    /// Number of affine root hyperplanes separating `A⁻` from `x A⁻`.
    ///
    /// A point `p` of `A⁻` can be chosen with `<beta, p> = -ht(beta)/h`, so
    /// `floor(<alpha, p>) = -1` for every positive root `alpha`, while
    /// `<alpha, x p> = <alpha, lambda> + <w^{-1} alpha, p>` has floor
    /// `<alpha, lambda> - [w^{-1} alpha > 0]`. The hyperplanes `alpha = n`
    /// crossed are counted by the difference of floors.
    pub fn length(&self, x: &AffineWeylElt) -> usize {
        let d = &self.datum;
        let w_inv = d.weyl_inverse(x.finite);
        let mut total = 0usize;
        for (i, alpha) in d.positive_roots().iter().enumerate() {
            let pair = d.pairing(&alpha.weight, &x.translation);
            let below = i64::from(!d.is_positive_root(d.act_root(w_inv, i)));
            total += (pair + below).unsigned_abs() as usize;
        }
        total
    }

    pub fn is_right_descent(&self, x: &AffineWeylElt, i: usize) -> bool {
        self.length(&self.mul_simple(x, i)) < self.length(x)
    }

    pub fn is_left_descent(&self, i: usize, x: &AffineWeylElt) -> bool {
        self.length(&self.simple_mul(i, x)) < self.length(x)
    }

    /// `x = tau s_{i_1} ... s_{i_m}` with `tau` of length zero and `m = l(x)`,
    /// by repeatedly stripping the smallest-index right descent.
    pub fn omega_part_and_reduced_word(&self, x: &AffineWeylElt) -> (AffineWeylElt, Vec<u8>) {
        let mut cur = x.clone();
        let mut len = self.length(&cur);
        let mut word = Vec::with_capacity(len);
        while len > 0 {
            let (i, next, next_len) = (0..self.num_simple())
                .find_map(|i| {
                    let y = self.mul_simple(&cur, i);
                    let ly = self.length(&y);
                    (ly < len).then_some((i, y, ly))
                })
                .expect("an element of positive length has a right descent");
            word.push(i as u8);
            cur = next;
            len = next_len;
        }
        word.reverse();
        (cur, word)
    }

    pub fn reduced_word(&self, x: &AffineWeylElt) -> Vec<u8> {
        self.omega_part_and_reduced_word(x).1
    }

    /// The length-zero element `tau` with `x in tau W_aff`.
    pub fn omega_part(&self, x: &AffineWeylElt) -> AffineWeylElt {
        self.omega_part_and_reduced_word(x).0
    }

    /// `omega(j)`: the `j`-th power of the length-zero element lying over the
    /// datum's omega generator.
    pub fn omega_element(&self, j: i64) -> Result<AffineWeylElt> {
        match &self.omega_generator {
            Some(tau) => Ok(self.pow(tau, j)),
            None if j == 0 => Ok(self.identity()),
            None => Err(Error::InvalidDatum(format!(
                "{} has no omega generator, only omega(0) is defined",
                self.datum.name()
            ))),
        }
    }

    // ---- Bruhat order ----

    /// Bruhat order, comparable only inside one `Omega`-coset. Uses
    /// `x <= y  <=>  min(x, s x) <= s y` for a left descent `s` of `y`.
    pub fn bruhat_leq(&self, x: &AffineWeylElt, y: &AffineWeylElt) -> bool {
        let mut x = x.clone();
        let mut y = y.clone();
        let mut lx = self.length(&x);
        let mut ly = self.length(&y);
        loop {
            if lx >= ly {
                return lx == ly && x == y;
            }
            let (s, sy) = (0..self.num_simple())
                .map(|i| (i, self.simple_mul(i, &y)))
                .find(|(_, sy)| self.length(sy) < ly)
                .expect("positive length has a left descent");
            let sx = self.simple_mul(s, &x);
            let lsx = self.length(&sx);
            if lsx < lx {
                x = sx;
                lx = lsx;
            }
            y = sy;
            ly -= 1;
        }
    }

    pub fn bruhat_lt(&self, x: &AffineWeylElt, y: &AffineWeylElt) -> bool {
        x != y && self.bruhat_leq(x, y)
    }

    /// `{x : x <= y}` from the subwords of one reduced word of `y`.
    pub fn bruhat_lower_set(&self, y: &AffineWeylElt) -> BTreeSet<AffineWeylElt> {
        let (tau, word) = self.omega_part_and_reduced_word(y);
        let mut set: BTreeSet<AffineWeylElt> = BTreeSet::from([tau]);
        for &i in &word {
            let extended: Vec<AffineWeylElt> = set.iter().map(|x| self.mul_simple(x, i as usize)).collect();
            set.extend(extended);
        }
        set
    }

    /// `Adm(mu)`: the union of the lower sets of `t_lambda`, `lambda` in `W mu`.
    pub fn admissible_set(&self, mu: &Coweight) -> Result<BTreeSet<AffineWeylElt>> {
        if mu.len() != self.rank() {
            return Err(Error::RankMismatch { expected: self.rank(), got: mu.len() });
        }
        if !self.datum.is_dominant(mu) {
            return Err(Error::NotDominant(mu.to_vec()));
        }
        let mut out = BTreeSet::new();
        for lambda in self.datum.finite_weyl_orbit(mu) {
            out.extend(self.bruhat_lower_set(&self.translation(lambda)));
        }
        Ok(out)
    }

    /// Elements of `W_aff` of length at most `max_len`, with their lengths,
    /// in breadth-first order.
    pub fn affine_ball(&self, max_len: usize) -> Vec<(AffineWeylElt, usize)> {
        let mut dist: HashMap<AffineWeylElt, usize> = HashMap::from([(self.identity(), 0)]);
        let mut order = vec![(self.identity(), 0)];
        let mut queue = VecDeque::from([self.identity()]);
        while let Some(x) = queue.pop_front() {
            let dx = dist[&x];
            if dx == max_len {
                continue;
            }
            for i in 0..self.num_simple() {
                let y = self.mul_simple(&x, i);
                if !dist.contains_key(&y) {
                    dist.insert(y.clone(), dx + 1);
                    order.push((y.clone(), dx + 1));
                    queue.push_back(y);
                }
            }
        }
        order
    }

    /// `tau^j w` for `w` of length at most `max_len` and `j` in `omega_powers`.
    pub fn extended_ball(&self, max_len: usize, omega_powers: &[i64]) -> Result<Vec<AffineWeylElt>> {
        let ball = self.affine_ball(max_len);
        let mut out = Vec::new();
        let mut seen = BTreeSet::new();
        for &j in omega_powers {
            let tau = self.omega_element(j)?;
            for (w, _) in &ball {
                let x = self.mul(&tau, w);
                if seen.insert(x.clone()) {
                    out.push(x);
                }
            }
        }
        Ok(out)
    }

    // ---- canonical text form and ordering ----

    /// `e`, or `t[l1,...,ln]` followed by ` * s_i` letters of the finite part.
    pub fn format(&self, x: &AffineWeylElt) -> String {
        let mut parts: Vec<String> = Vec::new();
        if !x.translation.is_zero() {
            let coords: Vec<String> = x.translation.iter().map(|c| c.to_string()).collect();
            parts.push(format!("t[{}]", coords.join(",")));
        }
        for &i in self.datum.weyl_word(x.finite) {
            parts.push(format!("s{i}"));
        }
        if parts.is_empty() {
            "e".to_string()
        } else {
            parts.join(" * ")
        }
    }

    /// Output order: length, then translation coordinates, then finite word.
    pub fn canonical_cmp(&self, a: &AffineWeylElt, b: &AffineWeylElt) -> Ordering {
        self.length(a)
            .cmp(&self.length(b))
            .then_with(|| a.translation.cmp(&b.translation))
            .then_with(|| self.datum.weyl_word(a.finite).cmp(self.datum.weyl_word(b.finite)))
    }

    pub fn sort_canonical(&self, xs: &mut [AffineWeylElt]) {
        xs.sort_by_cached_key(|x| (self.length(x), x.translation.clone(), self.datum.weyl_word(x.finite).to_vec()));
    }
}
