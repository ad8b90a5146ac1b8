//! Binary matroids as multisets of vectors of GF(2)^r, and their canonical
//! forms under GL(r,2) together with relabelling.
//!
//! A vector is a `u8` whose coordinate `i` is bit `r - 1 - i`, so numeric
//! order is lexicographic order with the first coordinate most significant,
//! and a nonzero value `v` is point `v - 1` of [`crate::gf::projective_points`].

use std::cmp::Ordering;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::gf::binary_rank;
use crate::matroid::Matroid;

/// Largest rank handled by point-set code.
pub const MAX_RANK: usize = 8;

/// A multiset of vectors of GF(2)^r, in element order. The zero vector is a loop.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct PointSet {
    rank: usize,
    points: Vec<u8>,
}

/// Sorted images of the elements under a canonical choice of coordinates.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct BinaryCanonicalForm {
    pub rank: usize,
    pub values: Vec<u8>,
}

impl BinaryCanonicalForm {
    /// Indices into `projective_points(rank, GF(2))`; loops are skipped.
    pub fn point_indices(&self) -> Vec<usize> {
        self.values.iter().filter(|&&v| v != 0).map(|&v| v as usize - 1).collect()
    }

    pub fn to_point_set(&self) -> PointSet {
        PointSet { rank: self.rank, points: self.values.clone() }
    }
}

/// Isomorphism key of a binary matroid: the canonical form of whichever of
/// M and M* has the smaller rank (M on ties).
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct BinaryKey {
    pub n: usize,
    pub rank: usize,
    pub dual: bool,
    pub form: BinaryCanonicalForm,
}

pub fn binary_key(m: &Matroid) -> Result<BinaryKey> {
    let (n, r) = (m.len(), m.rank());
    let dual = n - r < r;
    let side = if dual { m.binary_matroid()?.dual()? } else { m.clone() };
    let form = PointSet::from_matroid(&side)?.canonical_form()?.0;
    Ok(BinaryKey { n, rank: r, dual, form })
}

impl PointSet {
    pub fn new(rank: usize, points: Vec<u8>) -> Result<PointSet> {
        if rank > MAX_RANK {
            return Err(Error::TooLarge { n: rank, limit: MAX_RANK, what: "point-set rank" });
        }
        if points.len() > 64 {
            return Err(Error::TooLarge { n: points.len(), limit: 64, what: "ground set" });
        }
        if let Some(&v) = points.iter().find(|&&v| (v as usize) >> rank != 0) {
            return Err(Error::EntryOutOfRange { value: v as u32, q: 1 << rank });
        }
        Ok(PointSet { rank, points })
    }

    /// Full-row-rank representation of a binary matroid.
    pub fn from_matroid(m: &Matroid) -> Result<PointSet> {
        let a = m.binary_representation().ok_or(Error::NotBinary)?;
        let (red, r, _) = a.rref();
        if r > MAX_RANK {
            return Err(Error::TooLarge { n: r, limit: MAX_RANK, what: "point-set rank" });
        }
        let points = (0..red.cols())
            .map(|j| (0..r).fold(0u8, |acc, i| acc | red.get(i, j) << (r - 1 - i)))
            .collect();
        Ok(PointSet { rank: r, points })
    }

    pub fn rank(&self) -> usize {
        self.rank
    }

    pub fn points(&self) -> &[u8] {
        &self.points
    }

    pub fn len(&self) -> usize {
        self.points.len()
    }

    pub fn is_empty(&self) -> bool {
        self.points.is_empty()
    }

    pub fn with_point(&self, p: u8) -> PointSet {
        let mut points = self.points.clone();
        points.push(p);
        PointSet { rank: self.rank, points }
    }

    /// Rank of the matroid, i.e. the dimension of the span.
    pub fn span_rank(&self) -> usize {
        binary_rank(self.points.iter().map(|&v| v as u64))
    }

    pub fn to_matroid(&self, labels: Option<Vec<String>>) -> Result<Matroid> {
        let r = self.rank;
        let cols: Vec<u64> = self
            .points
            .iter()
            .map(|&v| (0..r).fold(0u64, |acc, i| acc | (((v >> (r - 1 - i)) & 1) as u64) << i))
            .collect();
        Matroid::binary(r, &cols, labels)
    }

    fn counts(&self) -> Vec<u16> {
        let mut c = vec![0u16; 1 << self.rank];
        for &v in &self.points {
            c[v as usize] += 1;
        }
        c
    }

    /// No loops and no repeated vectors.
    pub fn is_simple(&self) -> bool {
        let c = self.counts();
        c[0] == 0 && c.iter().all(|&x| x <= 1)
    }

    /// No coloops and no series pairs.
    pub fn is_cosimple(&self) -> bool {
        let r = self.span_rank();
        let n = self.points.len();
        let without = |skip: &[usize]| {
            binary_rank(self.points.iter().enumerate().filter(|(i, _)| !skip.contains(i)).map(|(_, &v)| v as u64))
        };
        (0..n).all(|a| without(&[a]) == r && (a + 1..n).all(|b| without(&[a, b]) == r))
    }

    /// Tutte 3-connectivity: λ(X) >= min(|X|, |E - X|, 2) for every proper
    /// nonempty X.
    pub fn is_3connected(&self) -> Result<bool> {
        let n = self.points.len();
        if n > 30 {
            return Err(Error::TooLarge { n, limit: 30, what: "3-connectivity check" });
        }
        if n <= 1 {
            return Ok(true);
        }
        let r = self.span_rank();
        let rank_of = |x: u64| binary_rank((0..n).filter(|&i| x >> i & 1 == 1).map(|i| self.points[i] as u64));
        let full = (1u64 << n) - 1;
        for rest in 0..1u64 << (n - 1) {
            let x = (rest << 1) | 1;
            if x == full {
                continue;
            }
            let s = x.count_ones() as usize;
            let need = s.min(n - s).min(2);
            if rank_of(x) + rank_of(full & !x) - r < need {
                return Ok(false);
            }
        }
        Ok(true)
    }

    /// Whether every flat of rank r - k has nullity below `l`.
    pub fn is_kl_uniform(&self, k: usize, l: usize) -> bool {
        let r = self.span_rank();
        if k > r {
            return true;
        }
        let counts = self.counts();
        let distinct = distinct_nonzero(&counts);
        let t = r - k;
        let mut ok = true;
        for_each_independent(&distinct, t, &mut Span::new(self.rank), 0, &mut |span| {
            let inside: usize = span.members.iter().map(|&v| counts[v as usize] as usize).sum();
            if inside >= t + l {
                ok = false;
            }
            ok
        });
        ok
    }

    /// Whether adding `p` keeps a (k,l)-uniform set (k,l)-uniform, assuming
    /// `p` lies in the current span. Only flats through `p` are examined.
    pub fn kl_uniform_after_adding(&self, p: u8, k: usize, l: usize) -> bool {
        let r = self.span_rank();
        if k > r {
            return true;
        }
        let t = r - k;
        if p == 0 || t == 0 {
            return self.with_point(p).is_kl_uniform(k, l);
        }
        let mut counts = self.counts();
        counts[p as usize] += 1;
        let distinct: Vec<u8> = distinct_nonzero(&counts).into_iter().filter(|&v| v != p).collect();
        let mut start = Span::new(self.rank);
        start.add(p);
        let mut ok = true;
        for_each_independent(&distinct, t - 1, &mut start, 0, &mut |span| {
            let inside: usize = span.members.iter().map(|&v| counts[v as usize] as usize).sum();
            if inside >= t + l {
                ok = false;
            }
            ok
        });
        ok
    }

    /// Canonical form and the image of every element under the canonical
    /// coordinates. The points must span GF(2)^r.
    pub fn canonical_form(&self) -> Result<(BinaryCanonicalForm, Vec<u8>)> {
        if self.span_rank() != self.rank {
            return Err(Error::Precondition("point set does not span its ambient space".into()));
        }
        let counts = self.counts();
        let mut c = Canon::new(self.rank, &counts);
        c.dfs(0, true);
        let images: Vec<u8> = self.points.iter().map(|&v| c.best_img[v as usize]).collect();
        let mut values = images.clone();
        values.sort_unstable();
        Ok((BinaryCanonicalForm { rank: self.rank, values }, images))
    }
}

fn distinct_nonzero(counts: &[u16]) -> Vec<u8> {
    (1..counts.len()).filter(|&v| counts[v] > 0).map(|v| v as u8).collect()
}

struct Span {
    members: Vec<u8>,
    inside: Vec<bool>,
}

impl Span {
    fn new(rank: usize) -> Span {
        let mut inside = vec![false; 1 << rank];
        inside[0] = true;
        Span { members: vec![0], inside }
    }

    fn add(&mut self, b: u8) {
        let len = self.members.len();
        for i in 0..len {
            let w = self.members[i] ^ b;
            self.inside[w as usize] = true;
            self.members.push(w);
        }
    }

    fn truncate(&mut self, len: usize) {
        for &w in &self.members[len..] {
            self.inside[w as usize] = false;
        }
        self.members.truncate(len);
    }
}

/// Calls `f` on the span of every independent `need`-subset of `pool`
/// (extending `span`), stopping early when `f` returns false.
fn for_each_independent(pool: &[u8], need: usize, span: &mut Span, from: usize, f: &mut dyn FnMut(&Span) -> bool) -> bool {
    if need == 0 {
        return f(span);
    }
    for i in from..pool.len() {
        if pool.len() - i < need {
            break;
        }
        let v = pool[i];
        if span.inside[v as usize] {
            continue;
        }
        let len = span.members.len();
        span.add(v);
        let go = for_each_independent(pool, need - 1, span, i + 1, f);
        span.truncate(len);
        if !go {
            return false;
        }
    }
    true
}

struct Step {
    inv: u64,
    chunk: Vec<u8>,
}

/// Chunks compare as if followed by an infinite sentinel: a proper prefix is
/// larger, since the remaining images of any completion are larger still.
fn cmp_chunk(a: &[u8], b: &[u8]) -> Ordering {
    for (x, y) in a.iter().zip(b) {
        if x != y {
            return x.cmp(y);
        }
    }
    b.len().cmp(&a.len())
}

fn cmp_step(a: &Step, b: &Step) -> Ordering {
    a.inv.cmp(&b.inv).then_with(|| cmp_chunk(&a.chunk, &b.chunk))
}

/// Branch and bound over ordered bases. Basis element `d` is sent to the
/// vector `1 << d`, so after depth `d` the images of all points in the
/// current span are final and smaller than every later image.
struct Canon<'a> {
    rank: usize,
    counts: &'a [u16],
    cands: Vec<u8>,
    inv: Vec<u64>,
    span: Span,
    img: Vec<u8>,
    best: Vec<Step>,
    best_img: Vec<u8>,
}

impl<'a> Canon<'a> {
    fn new(rank: usize, counts: &'a [u16]) -> Canon<'a> {
        let size = 1usize << rank;
        let distinct = distinct_nonzero(counts);
        // multiplicity and weighted triangle count, then rarer classes first
        let mut base = vec![0u64; size];
        for &v in &distinct {
            let mut tri = 0u64;
            for &u in &distinct {
                let w = u ^ v;
                if u != v && u < w && counts[w as usize] > 0 {
                    tri += counts[u as usize] as u64 * counts[w as usize] as u64;
                }
            }
            base[v as usize] = (counts[v as usize] as u64) << 32 | tri;
        }
        let mut inv = vec![0u64; size];
        for &v in &distinct {
            let class = distinct.iter().filter(|&&u| base[u as usize] == base[v as usize]).count() as u64;
            inv[v as usize] = class << 48 | base[v as usize];
        }
        let mut cands = distinct;
        cands.sort_by_key(|&v| (inv[v as usize], v));
        Canon { rank, counts, cands, inv, span: Span::new(rank), img: vec![0; size], best: Vec::new(), best_img: Vec::new() }
    }

    /// `fresh` is set when the current path is strictly better than every
    /// complete path seen so far.
    fn dfs(&mut self, depth: usize, fresh: bool) {
        if depth == self.rank {
            if fresh {
                self.best_img = self.img.clone();
            }
            return;
        }
        let bit = 1u8 << depth;
        for ci in 0..self.cands.len() {
            let b = self.cands[ci];
            if self.span.inside[b as usize] {
                continue;
            }
            let mut chunk = Vec::new();
            for &v in &self.span.members {
                let w = (v ^ b) as usize;
                for _ in 0..self.counts[w] {
                    chunk.push(self.img[v as usize] | bit);
                }
            }
            chunk.sort_unstable();
            let step = Step { inv: self.inv[b as usize], chunk };
            let ord = match self.best.get(depth) {
                Some(cur) => cmp_step(&step, cur),
                None => Ordering::Less,
            };
            let child_fresh = match ord {
                Ordering::Greater => continue,
                Ordering::Less => {
                    self.best.truncate(depth);
                    self.best.push(step);
                    true
                }
                Ordering::Equal => false,
            };
            let len = self.span.members.len();
            for i in 0..len {
                let v = self.span.members[i];
                self.img[(v ^ b) as usize] = self.img[v as usize] | bit;
            }
            self.span.add(b);
            self.dfs(depth + 1, child_fresh);
            self.span.truncate(len);
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::seq::SliceRandom;
    use rand::{Rng, SeedableRng};

    fn random_gl(rank: usize, rng: &mut impl Rng) -> Vec<u8> {
        loop {
            let cols: Vec<u8> = (0..rank).map(|_| rng.gen_range(0..1u16 << rank) as u8).collect();
            if binary_rank(cols.iter().map(|&c| c as u64)) == rank {
                return cols;
            }
        }
    }

    fn apply(g: &[u8], v: u8) -> u8 {
        let r = g.len();
        (0..r).filter(|&i| v >> (r - 1 - i) & 1 == 1).fold(0, |acc, i| acc ^ g[i])
    }

    fn fano() -> PointSet {
        PointSet::new(3, (1..8).collect()).unwrap()
    }

    #[test]
    fn invariant_under_gl_and_relabelling() {
        let mut rng = rand::rngs::StdRng::seed_from_u64(7);
        let sets = [
            fano(),
            PointSet::new(4, vec![1, 2, 4, 8, 15, 3, 3, 0]).unwrap(),
            PointSet::new(5, vec![1, 2, 4, 8, 16, 31, 7, 25, 14]).unwrap(),
            PointSet::new(4, (1..16).filter(|v: &u8| v.count_ones() % 2 == 1).collect()).unwrap(),
        ];
        for s in &sets {
            let (form, _) = s.canonical_form().unwrap();
            for _ in 0..20 {
                let g = random_gl(s.rank(), &mut rng);
                let mut pts: Vec<u8> = s.points().iter().map(|&v| apply(&g, v)).collect();
                pts.shuffle(&mut rng);
                let t = PointSet::new(s.rank(), pts).unwrap();
                assert_eq!(t.canonical_form().unwrap().0, form);
            }
        }
    }

    #[test]
    fn form_is_an_image_of_the_set() {
        let s = PointSet::new(4, vec![1, 2, 4, 8, 3, 12, 15]).unwrap();
        let (form, images) = s.canonical_form().unwrap();
        let mut sorted = images.clone();
        sorted.sort_unstable();
        assert_eq!(sorted, form.values);
        // the images realise the same matroid
        let a = s.to_matroid(None).unwrap();
        let b = PointSet::new(4, images).unwrap().to_matroid(None).unwrap();
        assert!(a.same_rank_function(&b, 0));
    }

    #[test]
    fn distinguishes_non_isomorphic_sets() {
        // a triangle plus a point versus four independent-in-pairs points
        let a = PointSet::new(3, vec![1, 2, 4, 3]).unwrap();
        let b = PointSet::new(3, vec![1, 2, 4, 7]).unwrap();
        assert_ne!(a.canonical_form().unwrap().0, b.canonical_form().unwrap().0);
        // a parallel pair is not a loop
        let c = PointSet::new(2, vec![1, 2, 2]).unwrap();
        let d = PointSet::new(2, vec![1, 2, 0]).unwrap();
        assert_ne!(c.canonical_form().unwrap().0, d.canonical_form().unwrap().0);
    }

    #[test]
    fn exhaustive_rank3_classes() {
        // simple rank-3 binary matroids: subsets of PG(2,2) spanning GF(2)^3
        let mut forms = std::collections::BTreeSet::new();
        for m in 1u32..128 {
            let pts: Vec<u8> = (0..7).filter(|i| m >> i & 1 == 1).map(|i| i as u8 + 1).collect();
            let s = PointSet::new(3, pts).unwrap();
            if s.span_rank() == 3 {
                forms.insert(s.canonical_form().unwrap().0);
            }
        }
        // sizes 3..7 give 1, 2, 1, 1, 1 classes
        assert_eq!(forms.len(), 6);
    }

    #[test]
    fn not_spanning_is_rejected() {
        assert!(PointSet::new(3, vec![1, 2, 3]).unwrap().canonical_form().is_err());
        assert!(PointSet::new(2, vec![4]).is_err());
    }

    #[test]
    fn kl_checks() {
        // Fano and AG(3,2) are sparse paving but not uniform
        let f = fano();
        assert!(f.is_kl_uniform(2, 1) && f.is_kl_uniform(1, 2));
        assert!(!f.is_kl_uniform(1, 1));
        let ag = PointSet::new(4, (1..16).filter(|v: &u8| v.count_ones() % 2 == 1).collect()).unwrap();
        assert!(ag.is_kl_uniform(2, 1) && ag.is_kl_uniform(1, 2));
        assert!(!ag.is_kl_uniform(1, 1));
        // two points on a line of PG(3,2) with their sum
        let tri = PointSet::new(4, vec![8, 4, 2, 1, 3]).unwrap();
        assert!(!tri.is_kl_uniform(2, 1));
        assert!(tri.is_kl_uniform(1, 2));
        let mut rng = rand::rngs::StdRng::seed_from_u64(3);
        for _ in 0..300 {
            let mut pts = vec![8u8, 4, 2, 1];
            for _ in 0..rng.gen_range(0..6) {
                pts.push(rng.gen_range(0..16));
            }
            let base = PointSet::new(4, pts).unwrap();
            let p = rng.gen_range(0..16);
            for (k, l) in [(1, 1), (1, 2), (2, 1), (2, 2), (3, 1), (1, 3), (4, 2)] {
                if base.is_kl_uniform(k, l) {
                    assert_eq!(base.kl_uniform_after_adding(p, k, l), base.with_point(p).is_kl_uniform(k, l));
                }
            }
        }
    }

    #[test]
    fn cosimplicity() {
        assert!(fano().is_cosimple());
        assert!(!PointSet::new(3, vec![1, 2, 4, 7]).unwrap().is_cosimple());
        assert!(PointSet::new(3, vec![1, 2, 4, 7]).unwrap().is_simple());
        assert!(!PointSet::new(2, vec![1, 2, 2]).unwrap().is_simple());
    }

    #[test]
    fn key_uses_smaller_side() {
        let f = fano().to_matroid(None).unwrap();
        let fd = f.dual().unwrap();
        let k = binary_key(&f).unwrap();
        let kd = binary_key(&fd).unwrap();
        assert!(!k.dual && kd.dual);
        assert_ne!(k, kd);
        assert_eq!(binary_key(&fd.dual().unwrap()).unwrap(), k);
    }
}
