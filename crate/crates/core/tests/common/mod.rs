//! Independent oracles shared by the integration tests.
#![allow(dead_code)]

use std::collections::{BTreeSet, HashMap, VecDeque};

use affhecke::{AffineRoot, AffineWeylElt, AffineWeylGroup, Coweight, Preset, RingElt, RootDatum};

pub fn group(p: Preset) -> AffineWeylGroup {
    AffineWeylGroup::new(RootDatum::preset(p).unwrap())
}

/// Distances in the Cayley graph on the simple reflections (and their
/// length-zero conjugates), from the identity, up to `radius`.
pub fn bfs_distances(g: &AffineWeylGroup, radius: usize) -> HashMap<AffineWeylElt, usize> {
    let gens: Vec<AffineWeylElt> = (0..g.num_simple()).map(|i| g.simple_reflection(i).clone()).collect();
    let mut dist = HashMap::from([(g.identity(), 0usize)]);
    let mut queue = VecDeque::from([g.identity()]);
    while let Some(x) = queue.pop_front() {
        let d = dist[&x];
        if d == radius {
            continue;
        }
        for s in &gens {
            let y = g.mul(&x, s);
            dist.entry(y.clone()).or_insert_with(|| {
                queue.push_back(y);
                d + 1
            });
        }
    }
    dist
}

/// A reduced word of a `W_aff` element read off a BFS tree.
pub fn bfs_word(g: &AffineWeylGroup, dist: &HashMap<AffineWeylElt, usize>, x: &AffineWeylElt) -> Vec<usize> {
    let mut word = Vec::new();
    let mut cur = x.clone();
    while dist[&cur] > 0 {
        let i = (0..g.num_simple())
            .find(|&i| dist.get(&g.mul(&cur, g.simple_reflection(i))) == Some(&(dist[&cur] - 1)))
            .expect("BFS tree parent");
        word.push(i);
        cur = g.mul(&cur, g.simple_reflection(i));
    }
    word.reverse();
    word
}

/// All products of subwords of `word`.
pub fn subword_products(g: &AffineWeylGroup, word: &[usize]) -> BTreeSet<AffineWeylElt> {
    let mut out = BTreeSet::from([g.identity()]);
    for &i in word {
        let s = g.simple_reflection(i);
        let next: Vec<AffineWeylElt> = out.iter().map(|x| g.mul(x, s)).collect();
        out.extend(next);
    }
    out
}

/// The length-zero element `tau` in the coset of `x`, found by peeling off
/// simple reflections that lower the length.
pub fn omega_part(g: &AffineWeylGroup, x: &AffineWeylElt) -> AffineWeylElt {
    let mut cur = x.clone();
    loop {
        let l = g.length(&cur);
        if l == 0 {
            return cur;
        }
        let i = (0..g.num_simple())
            .find(|&i| g.length(&g.mul(&cur, g.simple_reflection(i))) < l)
            .expect("some right descent");
        cur = g.mul(&cur, g.simple_reflection(i));
    }
}

/// `x <= y` by the subword property, after splitting off length-zero parts.
pub fn subword_leq(g: &AffineWeylGroup, x: &AffineWeylElt, y: &AffineWeylElt) -> bool {
    let (tx, ty) = (omega_part(g, x), omega_part(g, y));
    if tx != ty {
        return false;
    }
    let ti = g.inverse(&ty);
    let (x0, y0) = (g.mul(&ti, x), g.mul(&ti, y));
    let dist = bfs_distances(g, g.length(&y0));
    subword_products(g, &bfs_word(g, &dist, &y0)).contains(&x0)
}

/// Paper positivity: `k >= 1`, or `k = 0` and `alpha` negative for `B`.
pub fn bbar_positive(g: &AffineWeylGroup, beta: AffineRoot) -> bool {
    beta.offset >= 1 || (beta.offset == 0 && !g.datum().is_positive_root(beta.root))
}

/// `x . (alpha + k) = (alpha + k) o x^{-1}`; for `x = t_lambda w` this is
/// `w alpha + k - <w alpha, lambda>`.
pub fn act(g: &AffineWeylGroup, x: &AffineWeylElt, beta: AffineRoot) -> AffineRoot {
    let d = g.datum();
    let root = d.act_root(x.finite, beta.root);
    let offset = beta.offset - d.pairing(&d.root(root).weight, &x.translation);
    AffineRoot { root, offset }
}

/// `s_{alpha + k} = t_{-k alpha^vee} s_alpha`.
pub fn reflection(g: &AffineWeylGroup, beta: AffineRoot) -> AffineWeylElt {
    let d = g.datum();
    AffineWeylElt { translation: d.root(beta.root).coroot.scale(-beta.offset), finite: d.reflection(beta.root) }
}

/// `R_{x,w}(q)` on `W_aff` by the two-case recursion on a left descent of `w`:
/// `R_{x,w} = R_{sx,sw}` if `sx < x`, else `(q-1) R_{x,sw} + q R_{sx,sw}`.
pub struct ROracle<'g> {
    g: &'g AffineWeylGroup,
    memo: HashMap<(AffineWeylElt, AffineWeylElt), RingElt>,
}

impl<'g> ROracle<'g> {
    pub fn new(g: &'g AffineWeylGroup) -> Self {
        Self { g, memo: HashMap::new() }
    }

    pub fn r(&mut self, x: &AffineWeylElt, w: &AffineWeylElt) -> RingElt {
        let g = self.g;
        let (lx, lw) = (g.length(x), g.length(w));
        if lw == 0 {
            return if x == w { RingElt::one() } else { RingElt::zero() };
        }
        if lx > lw {
            return RingElt::zero();
        }
        let key = (x.clone(), w.clone());
        if let Some(r) = self.memo.get(&key) {
            return r.clone();
        }
        let s = (0..g.num_simple())
            .find(|&i| g.length(&g.mul(g.simple_reflection(i), w)) < lw)
            .expect("left descent");
        let sx = g.mul(g.simple_reflection(s), x);
        let sw = g.mul(g.simple_reflection(s), w);
        let r = if g.length(&sx) < lx {
            self.r(&sx, &sw)
        } else {
            let q = RingElt::q();
            &(&(&q - &RingElt::one()) * &self.r(x, &sw)) + &(&q * &self.r(&sx, &sw))
        };
        self.memo.insert(key, r.clone());
        r
    }

    /// `P_{x,w}` for all `x <= w` (lower set from the subword oracle), from
    /// `q^{l(w)-l(x)} bar(P_{x,w}) - P_{x,w} = sum_{x < y <= w} R_{x,y} P_{y,w}`.
    /// Panics if the high-degree half of the identity fails.
    pub fn kl_column(&mut self, w: &AffineWeylElt) -> HashMap<AffineWeylElt, RingElt> {
        let g = self.g;
        let dist = bfs_distances(g, g.length(w));
        let mut lower: Vec<AffineWeylElt> = subword_products(g, &bfs_word(g, &dist, w)).into_iter().collect();
        lower.sort_by_key(|x| std::cmp::Reverse(g.length(x)));
        let lw = g.length(w) as i32;
        let mut p: HashMap<AffineWeylElt, RingElt> = HashMap::new();
        for x in &lower {
            if x == w {
                p.insert(x.clone(), RingElt::one());
                continue;
            }
            let mut s = RingElt::zero();
            for (y, pyw) in &p {
                s += &(&self.r(x, y) * pyw);
            }
            let d = lw - g.length(x) as i32;
            let low = RingElt::from_pairs(s.terms().filter(|&(m, _)| m < d));
            let high = RingElt::from_pairs(s.terms().filter(|&(m, _)| m >= d));
            let pxw = -&low;
            assert_eq!(pxw.bar().shift(2 * d), high, "inversion identity at {} <= {}", g.format(x), g.format(w));
            p.insert(x.clone(), pxw);
        }
        p
    }
}

pub fn cw(c: &[i64]) -> Coweight {
    Coweight::new(c)
}
