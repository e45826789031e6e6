//! Kazhdan-Lusztig polynomials of the extended affine Weyl group.
//!
//! `P_{tau x, tau w} = P_{x, w}` for `tau` of length zero; elements in
//! different `Omega`-cosets give `0`. Polynomials in `q` are stored as
//! [`RingElt`] with even exponents.

use std::collections::{BTreeMap, BTreeSet, HashMap};
use std::path::Path;

use serde::{Deserialize, Serialize};

use crate::affine_weyl::{AffineWeylElt, AffineWeylGroup};
use crate::error::{Error, Result};
use crate::ring::{QDegree, RingElt};

/// Memo table for `P_{x,w}`. Entries are keyed by the `W_aff`-parts, so a
/// table must only ever be used with one group.
#[derive(Debug, Default, Clone)]
pub struct KlTable {
    memo: HashMap<(AffineWeylElt, AffineWeylElt), RingElt>,
    lower: HashMap<AffineWeylElt, Vec<AffineWeylElt>>,
}

#[derive(Debug, Serialize, Deserialize)]
struct CacheFile {
    group: String,
    entries: Vec<CacheEntry>,
}

#[derive(Debug, Serialize, Deserialize)]
struct CacheEntry {
    x: String,
    w: String,
    coeffs: Vec<i64>,
}

impl KlTable {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn len(&self) -> usize {
        self.memo.len()
    }

    pub fn is_empty(&self) -> bool {
        self.memo.is_empty()
    }

    /// `P_{x,w}(q)`.
    pub fn polynomial(&mut self, g: &AffineWeylGroup, x: &AffineWeylElt, w: &AffineWeylElt) -> RingElt {
        let tx = g.omega_part(x);
        let tw = g.omega_part(w);
        if tx != tw {
            return RingElt::zero();
        }
        let t_inv = g.inverse(&tx);
        self.affine(g, &g.mul(&t_inv, x), &g.mul(&t_inv, w))
    }

    /// Coefficient of `q^{(l(w)-l(x)-1)/2}` in `P_{x,w}`, zero when the
    /// length difference is even or `x` is not below `w`.
    pub fn mu(&mut self, g: &AffineWeylGroup, x: &AffineWeylElt, w: &AffineWeylElt) -> i64 {
        let (lx, lw) = (g.length(x), g.length(w));
        if lw <= lx || (lw - lx) % 2 == 0 {
            return 0;
        }
        self.polynomial(g, x, w).coeff((lw - lx - 1) as i32)
    }

    fn lower_set(&mut self, g: &AffineWeylGroup, y: &AffineWeylElt) -> Vec<AffineWeylElt> {
        self.lower
            .entry(y.clone())
            .or_insert_with(|| g.bruhat_lower_set(y).into_iter().collect())
            .clone()
    }

    /// `P_{x,w}` for `x, w` in `W_aff`, by the recursion on a left descent
    /// `s` of `w` with `v = s w`:
    ///
    /// `P_{x,w} = q^{1-c} P_{sx,v} + q^c P_{x,v}
    ///            - sum_{z < v, sz < z} mu(z,v) q^{(l(w)-l(z))/2} P_{x,z}`
    ///
    /// where `c = 1` if `sx < x` and `c = 0` otherwise.
    fn affine(&mut self, g: &AffineWeylGroup, x: &AffineWeylElt, w: &AffineWeylElt) -> RingElt {
        if x == w {
            return RingElt::one();
        }
        let key = (x.clone(), w.clone());
        if let Some(p) = self.memo.get(&key) {
            return p.clone();
        }
        let (lx, lw) = (g.length(x), g.length(w));
        let p = if lx >= lw || !g.bruhat_leq(x, w) {
            RingElt::zero()
        } else if lw - lx <= 2 {
            RingElt::one()
        } else {
            let s = (0..g.num_simple())
                .find(|&i| g.is_left_descent(i, w))
                .expect("positive length has a left descent");
            let v = g.simple_mul(s, w);
            let sx = g.simple_mul(s, x);
            let c = u32::from(g.length(&sx) < lx);
            let mut p = &self.affine(g, &sx, &v).shift(2 * (1 - c as i32))
                + &self.affine(g, x, &v).shift(2 * c as i32);
            let lv = lw - 1;
            for z in self.lower_set(g, &v) {
                let lz = g.length(&z);
                if lz >= lv || lz < lx || (lv - lz).is_multiple_of(2) || !g.is_left_descent(s, &z) {
                    continue;
                }
                let m = self.mu_affine(g, &z, &v);
                if m == 0 {
                    continue;
                }
                let pxz = self.affine(g, x, &z);
                p -= &pxz.shift((lw - lz) as i32).scale(m);
            }
            p
        };
        self.memo.insert(key, p.clone());
        p
    }

    fn mu_affine(&mut self, g: &AffineWeylGroup, z: &AffineWeylElt, v: &AffineWeylElt) -> i64 {
        let (lz, lv) = (g.length(z), g.length(v));
        self.affine(g, z, v).coeff((lv - lz - 1) as i32)
    }

    /// Checks every memo entry: constant term 1, nonnegative coefficients,
    /// and `deg_q P_{x,w} < (l(w) - l(x))/2`. Returns the offending pairs.
    pub fn check_invariants(&self, g: &AffineWeylGroup) -> Vec<(AffineWeylElt, AffineWeylElt)> {
        let mut bad = Vec::new();
        for ((x, w), p) in &self.memo {
            if p.is_zero() {
                continue;
            }
            let diff = (g.length(w) - g.length(x)) as i64;
            let ok = match p.degree_in_q() {
                QDegree::Degree(d) => 2 * i64::from(d) < diff,
                _ => false,
            } && p.coeff(0) == 1
                && p.is_nonnegative();
            if !ok {
                bad.push((x.clone(), w.clone()));
            }
        }
        bad.sort();
        bad
    }

    /// Nonzero memo entries `(x, w, P_{x,w})`.
    pub fn entries(&self) -> impl Iterator<Item = (&AffineWeylElt, &AffineWeylElt, &RingElt)> {
        self.memo.iter().filter(|(_, p)| !p.is_zero()).map(|((x, w), p)| (x, w, p))
    }

    /// Writes the nonzero entries as JSON, sorted for reproducibility.
    pub fn save(&self, g: &AffineWeylGroup, path: &Path) -> Result<()> {
        let mut entries: BTreeMap<(String, String), Vec<i64>> = BTreeMap::new();
        for (x, w, p) in self.entries() {
            let coeffs = p.q_coeffs().expect("KL polynomials are polynomials in q");
            entries.insert((g.format(x), g.format(w)), coeffs);
        }
        let file = CacheFile {
            group: g.datum().name().to_string(),
            entries: entries.into_iter().map(|((x, w), coeffs)| CacheEntry { x, w, coeffs }).collect(),
        };
        let text = serde_json::to_string_pretty(&file).map_err(|e| Error::Io(e.to_string()))?;
        std::fs::write(path, text)?;
        Ok(())
    }

    /// Loads a cache written by [`KlTable::save`]. A missing file yields an
    /// empty table; a cache for another group is ignored, and so is any entry
    /// that is not a pair of `W_aff` elements with a polynomial satisfying
    /// the KL invariants.
    pub fn load(g: &AffineWeylGroup, path: &Path) -> Result<Self> {
        let mut table = Self::new();
        let text = match std::fs::read_to_string(path) {
            Ok(t) => t,
            Err(e) if e.kind() == std::io::ErrorKind::NotFound => return Ok(table),
            Err(e) => return Err(e.into()),
        };
        let file: CacheFile =
            serde_json::from_str(&text).map_err(|e| Error::Config(format!("{}: {e}", path.display())))?;
        if file.group != g.datum().name() {
            return Ok(table);
        }
        for e in file.entries {
            let x = crate::expr::parse_element(g, &e.x)?;
            let w = crate::expr::parse_element(g, &e.w)?;
            let diff = g.length(&w) as i64 - g.length(&x) as i64;
            let plausible = g.omega_part(&x) == g.identity()
                && g.omega_part(&w) == g.identity()
                && e.coeffs.first() == Some(&1)
                && e.coeffs.iter().all(|&c| c >= 0)
                && (x == w || 2 * (e.coeffs.len() as i64 - 1) < diff);
            if plausible {
                table.memo.insert((x, w), RingElt::from_q_coeffs(&e.coeffs));
            }
        }
        Ok(table)
    }
}

/// `{x : x <= w}` for a set of tops, as one set.
pub fn union_of_lower_sets<'a, I>(g: &AffineWeylGroup, tops: I) -> BTreeSet<AffineWeylElt>
where
    I: IntoIterator<Item = &'a AffineWeylElt>,
{
    let mut out = BTreeSet::new();
    for y in tops {
        out.extend(g.bruhat_lower_set(y));
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::expr::parse_element;
    use crate::root_datum::{Preset, RootDatum};

    fn group(p: Preset) -> AffineWeylGroup {
        AffineWeylGroup::new(RootDatum::preset(p).unwrap())
    }

    #[test]
    fn diagonal_and_short_intervals() {
        let g = group(Preset::Sl(3));
        let mut kl = KlTable::new();
        for (x, _) in g.affine_ball(3) {
            assert_eq!(kl.polynomial(&g, &x, &x), RingElt::one());
        }
        let w = parse_element(&g, "s1 * s2").unwrap();
        assert_eq!(kl.polynomial(&g, &g.identity(), &w), RingElt::one());
        assert_eq!(kl.polynomial(&g, &w, &g.identity()), RingElt::zero());
    }

    #[test]
    fn dihedral_all_ones() {
        let g = group(Preset::Sl(2));
        let mut kl = KlTable::new();
        for (w, lw) in g.affine_ball(6) {
            for x in g.bruhat_lower_set(&w) {
                assert_eq!(kl.polynomial(&g, &x, &w), RingElt::one());
                let lx = g.length(&x);
                let expected = i64::from(lw > lx && (lw - lx) == 1);
                assert_eq!(kl.mu(&g, &x, &w), expected);
            }
        }
        let w = parse_element(&g, "s0 * s1 * s0").unwrap();
        assert_eq!(kl.mu(&g, &g.identity(), &w), 0);
        assert!(kl.check_invariants(&g).is_empty());
    }

    #[test]
    fn a2_has_a_nontrivial_polynomial() {
        // In affine A2 the first non-constant KL polynomial 1 + q appears.
        let g = group(Preset::Sl(3));
        let mut kl = KlTable::new();
        let mut nontrivial = false;
        for (w, _) in g.affine_ball(6) {
            for x in g.bruhat_lower_set(&w) {
                if kl.polynomial(&g, &x, &w) != RingElt::one() {
                    nontrivial = true;
                }
            }
        }
        assert!(nontrivial);
        assert!(kl.check_invariants(&g).is_empty());
    }

    #[test]
    fn extended_elements() {
        let g = group(Preset::Gl(2));
        let mut kl = KlTable::new();
        let tau = g.omega_element(1).unwrap();
        let t10 = g.translation(crate::Coweight::new(&[1, 0]));
        assert_eq!(kl.polynomial(&g, &tau, &t10), RingElt::one());
        assert_eq!(kl.polynomial(&g, &g.identity(), &t10), RingElt::zero());
    }

    #[test]
    fn cache_round_trip() {
        let g = group(Preset::Sl(3));
        let mut kl = KlTable::new();
        for (w, _) in g.affine_ball(5) {
            for x in g.bruhat_lower_set(&w) {
                kl.polynomial(&g, &x, &w);
            }
        }
        let dir = tempfile::tempdir().unwrap();
        let path = dir.path().join("kl.json");
        kl.save(&g, &path).unwrap();
        let mut loaded = KlTable::load(&g, &path).unwrap();
        assert_eq!(loaded.entries().count(), kl.entries().count());
        for (w, _) in g.affine_ball(5) {
            for x in g.bruhat_lower_set(&w) {
                assert_eq!(loaded.polynomial(&g, &x, &w), kl.polynomial(&g, &x, &w));
            }
        }
        assert!(KlTable::load(&group(Preset::Sl(2)), &path).unwrap().is_empty());
        assert!(KlTable::load(&g, &dir.path().join("missing.json")).unwrap().is_empty());

        let bogus = r#"{"group": "SL3", "entries": [{"x": "e", "w": "s1 * s2 * s1", "coeffs": [1, 0, 5]}]}"#;
        std::fs::write(&path, bogus).unwrap();
        let mut loaded = KlTable::load(&g, &path).unwrap();
        assert!(loaded.is_empty());
        let w = parse_element(&g, "s1 * s2 * s1").unwrap();
        assert_eq!(loaded.polynomial(&g, &g.identity(), &w), RingElt::one());
    }
}
