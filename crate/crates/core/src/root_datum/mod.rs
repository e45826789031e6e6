//! Based root data, the finite Weyl group, and weights of dual-group modules.
//!
//! All lattices are `Z^rank`. A weight (element of `X^*(T)`) and a coweight
//! (element of `X_*(T)`) are both integer vectors and the pairing
//! `<weight, coweight>` is the dot product. Per-preset coordinates are
//! documented on [`Preset`].

mod config;
mod presets;
mod weights;

use std::collections::{HashMap, VecDeque};
use std::fmt;
use std::ops::{Add, Deref, Neg, Sub};

use num_rational::Rational64;
use serde::{Deserialize, Serialize};
use smallvec::SmallVec;

use crate::error::{Error, Result};

pub use config::DatumConfig;
pub use presets::Preset;

/// Largest finite Weyl group we are willing to tabulate.
const MAX_WEYL_ORDER: usize = 1440;
const MAX_ROOTS: usize = 512;

/// An element of the coweight lattice `X_*(T)`.
#[derive(Debug, Clone, Default, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(transparent)]
pub struct Coweight(pub SmallVec<[i64; 4]>);

impl Coweight {
    pub fn new(coords: &[i64]) -> Self {
        Coweight(SmallVec::from_slice(coords))
    }

    pub fn zero(rank: usize) -> Self {
        Coweight(SmallVec::from_elem(0, rank))
    }

    pub fn is_zero(&self) -> bool {
        self.0.iter().all(|&c| c == 0)
    }

    pub fn scale(&self, k: i64) -> Self {
        Coweight(self.0.iter().map(|&c| c * k).collect())
    }
}

impl Deref for Coweight {
    type Target = [i64];
    fn deref(&self) -> &[i64] {
        &self.0
    }
}

impl From<Vec<i64>> for Coweight {
    fn from(v: Vec<i64>) -> Self {
        Coweight(SmallVec::from_vec(v))
    }
}

impl Add for &Coweight {
    type Output = Coweight;
    fn add(self, rhs: &Coweight) -> Coweight {
        Coweight(self.0.iter().zip(rhs.0.iter()).map(|(a, b)| a + b).collect())
    }
}

impl Sub for &Coweight {
    type Output = Coweight;
    fn sub(self, rhs: &Coweight) -> Coweight {
        Coweight(self.0.iter().zip(rhs.0.iter()).map(|(a, b)| a - b).collect())
    }
}

impl Neg for &Coweight {
    type Output = Coweight;
    fn neg(self) -> Coweight {
        Coweight(self.0.iter().map(|a| -a).collect())
    }
}

impl fmt::Display for Coweight {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(")?;
        for (i, c) in self.0.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{c}")?;
        }
        write!(f, ")")
    }
}

/// Handle to an element of the finite Weyl group, an index into the
/// datum's element table. Index 0 is the identity.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct FiniteWeylElt(pub u16);

impl FiniteWeylElt {
    pub const IDENTITY: FiniteWeylElt = FiniteWeylElt(0);

    pub fn index(self) -> usize {
        self.0 as usize
    }
}

/// Index into [`RootDatum::roots`].
pub type RootIdx = usize;

/// A root together with its coroot.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Root {
    pub weight: Vec<i64>,
    pub coroot: Coweight,
    /// Coordinates in the basis of simple roots.
    pub simple_coords: Vec<i64>,
}

impl Root {
    pub fn height(&self) -> i64 {
        self.simple_coords.iter().sum()
    }

    pub fn is_positive(&self) -> bool {
        self.height() > 0
    }
}

#[derive(Debug, Clone)]
struct WeylTable {
    /// Row-major `rank x rank` matrices acting on coweights.
    matrices: Vec<Vec<i64>>,
    /// Shortlex-minimal reduced words in the simple reflections `1..=l`.
    words: Vec<Vec<u8>>,
    mul: Vec<u16>,
    inverse: Vec<u16>,
    /// `root_perm[w * n_roots + r]` is the index of `w(root r)`.
    root_perm: Vec<u16>,
}

/// A based root datum with its finite Weyl group.
#[derive(Debug, Clone)]
pub struct RootDatum {
    name: String,
    rank: usize,
    simple_roots: Vec<Vec<i64>>,
    simple_coroots: Vec<Coweight>,
    /// Positive roots (ordered by height) followed by their negatives.
    roots: Vec<Root>,
    n_pos: usize,
    highest_root: RootIdx,
    cartan: Vec<Vec<i64>>,
    cartan_inv: Vec<Vec<Rational64>>,
    fundamental_coweights: Option<Vec<Coweight>>,
    omega_generator: Option<Coweight>,
    weyl: WeylTable,
    reflection_of_root: Vec<u16>,
    root_index: HashMap<Vec<i64>, RootIdx>,
    two_rho_coroot: Coweight,
}

impl RootDatum {
    /// Builds and validates a datum from explicit simple roots and coroots.
    ///
    /// `fundamental_coweights`, when given, must satisfy
    /// `<alpha_j, omega_i> = delta_ij`; it fixes the canonical dominant
    /// decomposition. `omega_generator` is a coweight whose translation's
    /// length-zero part generates the cyclic group addressed by `omega(j)`.
    pub fn from_simple_data(
        name: &str,
        rank: usize,
        simple_roots: Vec<Vec<i64>>,
        simple_coroots: Vec<Vec<i64>>,
        fundamental_coweights: Option<Vec<Vec<i64>>>,
        omega_generator: Option<Vec<i64>>,
    ) -> Result<Self> {
        let l = simple_roots.len();
        if rank == 0 {
            return Err(Error::InvalidDatum("rank must be positive".into()));
        }
        if l == 0 {
            return Err(Error::NoHighestRoot(format!(
                "{name} has no roots, so there is no affine simple reflection"
            )));
        }
        if simple_coroots.len() != l {
            return Err(Error::InvalidDatum(format!(
                "{l} simple roots but {} simple coroots",
                simple_coroots.len()
            )));
        }
        for v in simple_roots.iter().chain(simple_coroots.iter()) {
            if v.len() != rank {
                return Err(Error::RankMismatch { expected: rank, got: v.len() });
            }
        }
        let simple_coroots: Vec<Coweight> = simple_coroots.into_iter().map(Coweight::from).collect();
        let cartan: Vec<Vec<i64>> = (0..l)
            .map(|i| (0..l).map(|j| dot(&simple_roots[i], &simple_coroots[j])).collect())
            .collect();
        validate_cartan(&cartan)?;
        if !dynkin_connected(&cartan) {
            return Err(Error::NoHighestRoot(format!(
                "{name} is not almost simple; give one datum per simple factor"
            )));
        }
        let cartan_inv = invert(&cartan)
            .ok_or_else(|| Error::InvalidDatum("Cartan matrix is singular".into()))?;

        let (roots, n_pos) = close_roots(&simple_roots, &simple_coroots)?;
        let root_index: HashMap<Vec<i64>, RootIdx> =
            roots.iter().enumerate().map(|(i, r)| (r.weight.clone(), i)).collect();
        let highest_root = (0..n_pos)
            .max_by_key(|&i| roots[i].height())
            .expect("at least one positive root");
        if (0..n_pos).filter(|&i| roots[i].height() == roots[highest_root].height()).count() != 1 {
            return Err(Error::NoHighestRoot(format!("{name}: highest root is not unique")));
        }

        let fundamental_coweights = match fundamental_coweights {
            None => None,
            Some(fw) => {
                if fw.len() != l {
                    return Err(Error::InvalidDatum(format!(
                        "expected {l} fundamental coweights, got {}",
                        fw.len()
                    )));
                }
                for (i, w) in fw.iter().enumerate() {
                    if w.len() != rank {
                        return Err(Error::RankMismatch { expected: rank, got: w.len() });
                    }
                    for (j, a) in simple_roots.iter().enumerate() {
                        if dot(a, w) != i64::from(i == j) {
                            return Err(Error::InvalidDatum(format!(
                                "fundamental coweight {i} pairs to {} with simple root {j}",
                                dot(a, w)
                            )));
                        }
                    }
                }
                Some(fw.into_iter().map(Coweight::from).collect())
            }
        };
        if let Some(g) = &omega_generator {
            if g.len() != rank {
                return Err(Error::RankMismatch { expected: rank, got: g.len() });
            }
        }

        let mut two_rho_coroot = Coweight::zero(rank);
        for r in &roots[..n_pos] {
            two_rho_coroot = &two_rho_coroot + &r.coroot;
        }

        let mut datum = RootDatum {
            name: name.to_string(),
            rank,
            simple_roots,
            simple_coroots,
            roots,
            n_pos,
            highest_root,
            cartan,
            cartan_inv,
            fundamental_coweights,
            omega_generator: omega_generator.map(Coweight::from),
            weyl: WeylTable {
                matrices: Vec::new(),
                words: Vec::new(),
                mul: Vec::new(),
                inverse: Vec::new(),
                root_perm: Vec::new(),
            },
            reflection_of_root: Vec::new(),
            root_index,
            two_rho_coroot,
        };
        datum.build_weyl_table()?;
        Ok(datum)
    }

    /// One of the built-in groups.
    pub fn preset(p: Preset) -> Result<Self> {
        presets::build(p)
    }

    /// Parses a preset name such as `GL3`, `SL(2)`, `PGL2`, `Sp4`, `GSp4`.
    pub fn from_preset_name(name: &str) -> Result<Self> {
        Self::preset(name.parse()?)
    }

    fn build_weyl_table(&mut self) -> Result<()> {
        let r = self.rank;
        let l = self.simple_roots.len();
        let identity: Vec<i64> = (0..r * r).map(|k| i64::from(k / r == k % r)).collect();
        let gens: Vec<Vec<i64>> = (0..l).map(|i| self.reflection_matrix(&self.simple_roots[i], &self.simple_coroots[i])).collect();

        let mut matrices = vec![identity.clone()];
        let mut words: Vec<Vec<u8>> = vec![Vec::new()];
        let mut index: HashMap<Vec<i64>, u16> = HashMap::new();
        index.insert(identity, 0);
        let mut queue = VecDeque::from([0usize]);
        while let Some(w) = queue.pop_front() {
            for (i, g) in gens.iter().enumerate() {
                let m = matmul(&matrices[w], g, r);
                if !index.contains_key(&m) {
                    if matrices.len() >= MAX_WEYL_ORDER {
                        return Err(Error::InvalidDatum(format!(
                            "finite Weyl group has more than {MAX_WEYL_ORDER} elements"
                        )));
                    }
                    let id = matrices.len();
                    index.insert(m.clone(), id as u16);
                    matrices.push(m);
                    let mut word = words[w].clone();
                    word.push(i as u8 + 1);
                    words.push(word);
                    queue.push_back(id);
                }
            }
        }
        let n = matrices.len();
        let mut mul = vec![0u16; n * n];
        for a in 0..n {
            for b in 0..n {
                let m = matmul(&matrices[a], &matrices[b], r);
                mul[a * n + b] = *index.get(&m).ok_or_else(|| {
                    Error::InvalidDatum("Weyl group is not closed under products".into())
                })?;
            }
        }
        let inverse: Vec<u16> = (0..n)
            .map(|a| (0..n).find(|&b| mul[a * n + b] == 0).expect("inverse exists") as u16)
            .collect();

        let nr = self.roots.len();
        let mut root_perm = vec![0u16; n * nr];
        for w in 0..n {
            let inv = &matrices[inverse[w] as usize];
            for (ri, root) in self.roots.iter().enumerate() {
                // (w alpha)(lambda) = alpha(w^{-1} lambda)
                let image: Vec<i64> = (0..r)
                    .map(|c| (0..r).map(|k| root.weight[k] * inv[k * r + c]).sum())
                    .collect();
                let idx = self.root_index.get(&image).ok_or_else(|| {
                    Error::InvalidDatum("Weyl group does not permute the roots".into())
                })?;
                root_perm[w * nr + ri] = *idx as u16;
            }
        }
        let reflection_of_root = self
            .roots
            .iter()
            .map(|root| {
                let m = self.reflection_matrix(&root.weight, &root.coroot);
                index.get(&m).copied().ok_or_else(|| {
                    Error::InvalidDatum("root reflection missing from Weyl group".into())
                })
            })
            .collect::<Result<Vec<_>>>()?;

        self.weyl = WeylTable { matrices, words, mul, inverse, root_perm };
        self.reflection_of_root = reflection_of_root;
        Ok(())
    }

    fn reflection_matrix(&self, root: &[i64], coroot: &[i64]) -> Vec<i64> {
        let r = self.rank;
        let mut m = vec![0i64; r * r];
        for a in 0..r {
            for b in 0..r {
                m[a * r + b] = i64::from(a == b) - coroot[a] * root[b];
            }
        }
        m
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn rank(&self) -> usize {
        self.rank
    }

    /// Number of simple roots.
    pub fn semisimple_rank(&self) -> usize {
        self.simple_roots.len()
    }

    pub fn simple_roots(&self) -> &[Vec<i64>] {
        &self.simple_roots
    }

    pub fn simple_coroots(&self) -> &[Coweight] {
        &self.simple_coroots
    }

    pub fn cartan_matrix(&self) -> &[Vec<i64>] {
        &self.cartan
    }

    /// All roots: the positive ones first, then their negatives in the same order.
    pub fn roots(&self) -> &[Root] {
        &self.roots
    }

    pub fn positive_roots(&self) -> &[Root] {
        &self.roots[..self.n_pos]
    }

    pub fn num_positive_roots(&self) -> usize {
        self.n_pos
    }

    pub fn root(&self, i: RootIdx) -> &Root {
        &self.roots[i]
    }

    pub fn root_index(&self, weight: &[i64]) -> Option<RootIdx> {
        self.root_index.get(weight).copied()
    }

    pub fn is_positive_root(&self, i: RootIdx) -> bool {
        i < self.n_pos
    }

    pub fn negate_root(&self, i: RootIdx) -> RootIdx {
        if i < self.n_pos {
            i + self.n_pos
        } else {
            i - self.n_pos
        }
    }

    /// Index of the simple root `alpha_i`, `i` in `1..=l`.
    pub fn simple_root_index(&self, i: usize) -> RootIdx {
        self.root_index[&self.simple_roots[i - 1]]
    }

    /// The highest root.
    pub fn highest_root(&self) -> RootIdx {
        self.highest_root
    }

    /// Coxeter number `ht(highest root) + 1`.
    pub fn coxeter_number(&self) -> i64 {
        self.roots[self.highest_root].height() + 1
    }

    pub fn omega_generator(&self) -> Option<&Coweight> {
        self.omega_generator.as_ref()
    }

    /// Sum of the positive coroots.
    pub fn two_rho_coroot(&self) -> &Coweight {
        &self.two_rho_coroot
    }

    pub fn pairing(&self, weight: &[i64], coweight: &[i64]) -> i64 {
        dot(weight, coweight)
    }

    pub fn coweight(&self, coords: &[i64]) -> Result<Coweight> {
        if coords.len() != self.rank {
            return Err(Error::RankMismatch { expected: self.rank, got: coords.len() });
        }
        Ok(Coweight::new(coords))
    }

    // ---- finite Weyl group ----

    pub fn weyl_order(&self) -> usize {
        self.weyl.matrices.len()
    }

    pub fn weyl_elements(&self) -> impl Iterator<Item = FiniteWeylElt> {
        (0..self.weyl_order() as u16).map(FiniteWeylElt)
    }

    pub fn weyl_mul(&self, a: FiniteWeylElt, b: FiniteWeylElt) -> FiniteWeylElt {
        FiniteWeylElt(self.weyl.mul[a.index() * self.weyl_order() + b.index()])
    }

    pub fn weyl_inverse(&self, a: FiniteWeylElt) -> FiniteWeylElt {
        FiniteWeylElt(self.weyl.inverse[a.index()])
    }

    /// The simple reflection `s_i`, `i` in `1..=l`.
    pub fn simple_reflection(&self, i: usize) -> FiniteWeylElt {
        self.reflection(self.simple_root_index(i))
    }

    /// The reflection `s_alpha`.
    pub fn reflection(&self, root: RootIdx) -> FiniteWeylElt {
        FiniteWeylElt(self.reflection_of_root[root])
    }

    /// Shortlex-minimal reduced word, letters in `1..=l`.
    pub fn weyl_word(&self, w: FiniteWeylElt) -> &[u8] {
        &self.weyl.words[w.index()]
    }

    pub fn weyl_length(&self, w: FiniteWeylElt) -> usize {
        self.weyl.words[w.index()].len()
    }

    /// The longest element `w_0`.
    pub fn longest_element(&self) -> FiniteWeylElt {
        self.weyl_elements().max_by_key(|&w| self.weyl_length(w)).expect("nonempty")
    }

    pub fn weyl_matrix(&self, w: FiniteWeylElt) -> &[i64] {
        &self.weyl.matrices[w.index()]
    }

    pub fn weyl_from_word(&self, word: &[u8]) -> Result<FiniteWeylElt> {
        let mut w = FiniteWeylElt::IDENTITY;
        for &i in word {
            if i == 0 || i as usize > self.semisimple_rank() {
                return Err(Error::InvalidDatum(format!("no simple reflection s{i}")));
            }
            w = self.weyl_mul(w, self.simple_reflection(i as usize));
        }
        Ok(w)
    }

    /// `w(lambda)`.
    pub fn act_coweight(&self, w: FiniteWeylElt, lambda: &Coweight) -> Coweight {
        let r = self.rank;
        let m = self.weyl_matrix(w);
        Coweight((0..r).map(|a| (0..r).map(|b| m[a * r + b] * lambda[b]).sum()).collect())
    }

    /// `w(alpha)` for a root index.
    pub fn act_root(&self, w: FiniteWeylElt, root: RootIdx) -> RootIdx {
        self.weyl.root_perm[w.index() * self.roots.len() + root] as usize
    }

    // ---- coweights ----

    pub fn is_dominant(&self, lambda: &Coweight) -> bool {
        self.simple_roots.iter().all(|a| dot(a, lambda) >= 0)
    }

    fn require_dominant(&self, lambda: &Coweight) -> Result<()> {
        if lambda.len() != self.rank {
            return Err(Error::RankMismatch { expected: self.rank, got: lambda.len() });
        }
        if !self.is_dominant(lambda) {
            return Err(Error::NotDominant(lambda.to_vec()));
        }
        Ok(())
    }

    /// The unique dominant coweight in the W-orbit of `lambda`.
    pub fn dominant_representative(&self, lambda: &Coweight) -> Coweight {
        let mut cur = lambda.clone();
        loop {
            let Some(i) = self.simple_roots.iter().position(|a| dot(a, &cur) < 0) else {
                return cur;
            };
            let c = dot(&self.simple_roots[i], &cur);
            cur = &cur - &self.simple_coroots[i].scale(c);
        }
    }

    /// Writes `lambda = lambda1 - lambda2` with both parts dominant and
    /// `lambda2` minimal.
    ///
    /// With fundamental coweights `omega_i` available, `lambda2` is
    /// `sum_i max(0, -<alpha_i, lambda>) omega_i`. Otherwise `lambda2` is the
    /// smallest multiple of `2 rho^vee` that works.
    pub fn dominant_decomposition(&self, lambda: &Coweight) -> (Coweight, Coweight) {
        let lambda2 = match &self.fundamental_coweights {
            Some(fw) => {
                let mut acc = Coweight::zero(self.rank);
                for (a, w) in self.simple_roots.iter().zip(fw) {
                    let c = (-dot(a, lambda)).max(0);
                    acc = &acc + &w.scale(c);
                }
                acc
            }
            None => {
                let worst = self.simple_roots.iter().map(|a| (-dot(a, lambda)).max(0)).max().unwrap_or(0);
                self.two_rho_coroot.scale((worst + 1) / 2)
            }
        };
        (lambda + &lambda2, lambda2)
    }

    /// `{w lambda : w in W}` in sorted order.
    pub fn finite_weyl_orbit(&self, lambda: &Coweight) -> Vec<Coweight> {
        let mut out: Vec<Coweight> = self.weyl_elements().map(|w| self.act_coweight(w, lambda)).collect();
        out.sort();
        out.dedup();
        out
    }

    /// Coordinates of `v` in the basis of simple coroots, when `v` lies in the
    /// coroot lattice.
    pub fn coroot_coordinates(&self, v: &Coweight) -> Option<Vec<i64>> {
        let l = self.semisimple_rank();
        let b: Vec<i64> = self.simple_roots.iter().map(|a| dot(a, v)).collect();
        let mut coords = Vec::with_capacity(l);
        for i in 0..l {
            let mut acc = Rational64::from_integer(0);
            for (j, &bj) in b.iter().enumerate() {
                acc += self.cartan_inv[i][j] * Rational64::from_integer(bj);
            }
            if !acc.is_integer() {
                return None;
            }
            coords.push(acc.to_integer());
        }
        let mut back = Coweight::zero(self.rank);
        for (c, cr) in coords.iter().zip(&self.simple_coroots) {
            back = &back + &cr.scale(*c);
        }
        (back == *v).then_some(coords)
    }

    /// `lambda <= mu` in dominance order: `mu - lambda` is a nonnegative
    /// integer combination of simple coroots.
    pub fn dominance_leq(&self, lambda: &Coweight, mu: &Coweight) -> bool {
        self.coroot_coordinates(&(mu - lambda))
            .is_some_and(|c| c.iter().all(|&x| x >= 0))
    }

    /// `Omega(mu)`, the weights of the irreducible dual-group module with
    /// highest weight `mu`, in sorted order.
    pub fn omega_set(&self, mu: &Coweight) -> Result<Vec<Coweight>> {
        self.require_dominant(mu)?;
        let mut seen = std::collections::BTreeSet::new();
        seen.insert(mu.clone());
        let mut queue = VecDeque::from([mu.clone()]);
        while let Some(nu) = queue.pop_front() {
            for cr in &self.simple_coroots {
                let next = &nu - cr;
                if seen.contains(&next) {
                    continue;
                }
                if self.dominance_leq(&self.dominant_representative(&next), mu) {
                    seen.insert(next.clone());
                    queue.push_back(next);
                }
            }
        }
        Ok(seen.into_iter().collect())
    }

    /// `m_mu(lambda)` by Freudenthal's recursion.
    pub fn weight_multiplicity(&self, mu: &Coweight, lambda: &Coweight) -> Result<u64> {
        self.require_dominant(mu)?;
        if lambda.len() != self.rank {
            return Err(Error::RankMismatch { expected: self.rank, got: lambda.len() });
        }
        let table = weights::freudenthal(self, mu);
        Ok(table.get(&self.dominant_representative(lambda)).copied().unwrap_or(0))
    }

    /// All of `Omega(mu)` with multiplicities.
    pub fn character(&self, mu: &Coweight) -> Result<Vec<(Coweight, u64)>> {
        self.require_dominant(mu)?;
        let table = weights::freudenthal(self, mu);
        Ok(self
            .omega_set(mu)?
            .into_iter()
            .map(|l| {
                let m = table[&self.dominant_representative(&l)];
                (l, m)
            })
            .collect())
    }

    /// Weyl dimension formula for the dual-group module of highest weight `mu`.
    pub fn weyl_dimension(&self, mu: &Coweight) -> Result<u64> {
        self.require_dominant(mu)?;
        let shifted = &mu.scale(2) + &self.two_rho_coroot;
        let mut num = Rational64::from_integer(1);
        for a in self.positive_roots() {
            num *= Rational64::new(dot(&a.weight, &shifted), dot(&a.weight, &self.two_rho_coroot));
        }
        debug_assert!(num.is_integer());
        Ok(num.to_integer() as u64)
    }
}

fn dot(a: &[i64], b: &[i64]) -> i64 {
    a.iter().zip(b).map(|(x, y)| x * y).sum()
}

fn matmul(a: &[i64], b: &[i64], r: usize) -> Vec<i64> {
    let mut out = vec![0i64; r * r];
    for i in 0..r {
        for k in 0..r {
            let aik = a[i * r + k];
            if aik == 0 {
                continue;
            }
            for j in 0..r {
                out[i * r + j] += aik * b[k * r + j];
            }
        }
    }
    out
}

fn validate_cartan(a: &[Vec<i64>]) -> Result<()> {
    let l = a.len();
    for i in 0..l {
        if a[i][i] != 2 {
            return Err(Error::InvalidDatum(format!(
                "Cartan entry <alpha_{0}, alpha_{0}^vee> = {1}, expected 2",
                i + 1,
                a[i][i]
            )));
        }
        for j in 0..l {
            if i == j {
                continue;
            }
            if a[i][j] > 0 {
                return Err(Error::InvalidDatum(format!(
                    "positive off-diagonal Cartan entry at ({}, {})",
                    i + 1,
                    j + 1
                )));
            }
            if (a[i][j] == 0) != (a[j][i] == 0) {
                return Err(Error::InvalidDatum(format!(
                    "Cartan entries ({0}, {1}) and ({1}, {0}) are not simultaneously zero",
                    i + 1,
                    j + 1
                )));
            }
            if a[i][j] * a[j][i] > 3 {
                return Err(Error::InvalidDatum(format!(
                    "simple roots {} and {} generate an infinite dihedral group",
                    i + 1,
                    j + 1
                )));
            }
        }
    }
    Ok(())
}

fn dynkin_connected(a: &[Vec<i64>]) -> bool {
    let l = a.len();
    let mut seen = vec![false; l];
    let mut stack = vec![0];
    seen[0] = true;
    while let Some(i) = stack.pop() {
        for j in 0..l {
            if !seen[j] && a[i][j] != 0 {
                seen[j] = true;
                stack.push(j);
            }
        }
    }
    seen.into_iter().all(|s| s)
}

fn invert(a: &[Vec<i64>]) -> Option<Vec<Vec<Rational64>>> {
    let n = a.len();
    let mut m: Vec<Vec<Rational64>> = a
        .iter()
        .enumerate()
        .map(|(i, row)| {
            let mut r: Vec<Rational64> = row.iter().map(|&x| Rational64::from_integer(x)).collect();
            r.extend((0..n).map(|j| Rational64::from_integer(i64::from(i == j))));
            r
        })
        .collect();
    for col in 0..n {
        let pivot = (col..n).find(|&r| m[r][col] != Rational64::from_integer(0))?;
        m.swap(col, pivot);
        let p = m[col][col];
        for x in m[col].iter_mut() {
            *x /= p;
        }
        for r in 0..n {
            if r != col {
                let f = m[r][col];
                if f != Rational64::from_integer(0) {
                    for c in 0..2 * n {
                        let t = m[col][c];
                        m[r][c] -= f * t;
                    }
                }
            }
        }
    }
    Some(m.into_iter().map(|row| row[n..].to_vec()).collect())
}

/// Positive roots by closure of the simple roots under simple reflections,
/// sorted by height, followed by their negatives.
fn close_roots(simple_roots: &[Vec<i64>], simple_coroots: &[Coweight]) -> Result<(Vec<Root>, usize)> {
    let l = simple_roots.len();
    let mut pos: Vec<Root> = (0..l)
        .map(|i| Root {
            weight: simple_roots[i].clone(),
            coroot: simple_coroots[i].clone(),
            simple_coords: (0..l).map(|j| i64::from(i == j)).collect(),
        })
        .collect();
    let mut seen: HashMap<Vec<i64>, ()> = pos.iter().map(|r| (r.simple_coords.clone(), ())).collect();
    let mut k = 0;
    while k < pos.len() {
        for i in 0..l {
            let beta = pos[k].clone();
            if beta.simple_coords.iter().enumerate().all(|(j, &c)| c == i64::from(i == j)) {
                continue;
            }
            let c = dot(&beta.weight, &simple_coroots[i]);
            let d = dot(&simple_roots[i], &beta.coroot);
            let mut coords = beta.simple_coords.clone();
            coords[i] -= c;
            if coords.iter().any(|&x| x < 0) {
                return Err(Error::InvalidDatum("root closure produced a non-positive root".into()));
            }
            if seen.contains_key(&coords) {
                continue;
            }
            seen.insert(coords.clone(), ());
            let weight: Vec<i64> = beta.weight.iter().zip(&simple_roots[i]).map(|(b, a)| b - c * a).collect();
            let coroot = &beta.coroot - &simple_coroots[i].scale(d);
            pos.push(Root { weight, coroot, simple_coords: coords });
            if pos.len() > MAX_ROOTS {
                return Err(Error::InvalidDatum("root system is not of finite type".into()));
            }
        }
        k += 1;
    }
    pos.sort_by(|a, b| a.height().cmp(&b.height()).then_with(|| b.simple_coords.cmp(&a.simple_coords)));
    let n_pos = pos.len();
    let neg: Vec<Root> = pos
        .iter()
        .map(|r| Root {
            weight: r.weight.iter().map(|x| -x).collect(),
            coroot: -&r.coroot,
            simple_coords: r.simple_coords.iter().map(|x| -x).collect(),
        })
        .collect();
    pos.extend(neg);
    Ok((pos, n_pos))
}
