//! Isomorphism and minor testing. Binary matroids go through canonical
//! forms; everything else through a circuit-preserving backtracking search.

use std::collections::{BTreeMap, HashSet};

use serde::{Deserialize, Serialize};

use crate::binary::{BinaryCanonicalForm, PointSet, MAX_RANK};
use crate::catalog;
use crate::error::{Error, Result};
use crate::mask::{self, Mask};
use crate::matroid::{Matroid, MinorSpec, CIRCUIT_LIMIT};

/// Largest ground set accepted by the generic isomorphism search.
pub const GENERIC_LIMIT: usize = 31;

const VERIFY_SAMPLES: usize = 10_000;

/// Isomorphism invariants used to reject non-isomorphic pairs quickly.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Fingerprint {
    pub n: usize,
    pub rank: usize,
    pub loops: usize,
    pub coloops: usize,
    /// ((rank, size), count) over all flats of rank at most 3.
    pub flats: Vec<((usize, usize), usize)>,
    /// (size, count) over circuits up to the size cap.
    pub circuits: Vec<(usize, usize)>,
    /// Sorted per-element counts of small circuits through the element.
    pub elements: Vec<Vec<usize>>,
}

fn circuit_cap(m: &Matroid) -> usize {
    if m.len() <= 16 {
        6
    } else {
        4
    }
}

/// Per-element vectors: entry s counts circuits of size s + 1 through e.
fn element_profiles(m: &Matroid, circuits: &[Mask], cap: usize) -> Vec<Vec<usize>> {
    let mut prof = vec![vec![0usize; cap]; m.len()];
    for &c in circuits {
        let s = mask::size(c) - 1;
        for e in mask::elements(c) {
            prof[e][s] += 1;
        }
    }
    prof
}

pub fn fingerprint(m: &Matroid) -> Result<Fingerprint> {
    let cap = circuit_cap(m);
    let mut flats = BTreeMap::new();
    for k in 0..=m.rank().min(3) {
        for f in m.flats_of_rank(k)? {
            *flats.entry((k, mask::size(f))).or_insert(0) += 1;
        }
    }
    let cs = m.circuits(Some(cap))?;
    let mut sizes = BTreeMap::new();
    for &c in &cs {
        *sizes.entry(mask::size(c)).or_insert(0) += 1;
    }
    let mut elements = element_profiles(m, &cs, cap);
    elements.sort();
    Ok(Fingerprint {
        n: m.len(),
        rank: m.rank(),
        loops: mask::size(m.loops()),
        coloops: mask::size(m.coloops()),
        flats: flats.into_iter().collect(),
        circuits: sizes.into_iter().collect(),
        elements,
    })
}

/// A bijection from the elements of one matroid to those of another.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct IsoCertificate {
    pub map: Vec<usize>,
}

impl IsoCertificate {
    /// Rank preservation: exhaustive for n <= 12, sampled above.
    pub fn verify(&self, a: &Matroid, b: &Matroid) -> bool {
        a.rank_preserving_under(b, &self.map, VERIFY_SAMPLES)
    }

    /// Composition: first `self`, then `next`.
    pub fn then(&self, next: &IsoCertificate) -> IsoCertificate {
        IsoCertificate { map: self.map.iter().map(|&i| next.map[i]).collect() }
    }
}

/// Canonical form of a simple binary matroid.
pub fn binary_canonical_form(m: &Matroid) -> Result<BinaryCanonicalForm> {
    if !m.is_binary() {
        return Err(Error::NotBinary);
    }
    if !m.is_simple() {
        return Err(Error::NotSimple);
    }
    Ok(PointSet::from_matroid(m)?.canonical_form()?.0)
}

/// Canonical images of a binary matroid's elements, using M or M*
/// (whichever has the smaller rank), or None if that rank is too large.
fn binary_images(m: &Matroid) -> Result<Option<(bool, BinaryCanonicalForm, Vec<u8>)>> {
    let dual = m.corank() < m.rank();
    if m.rank().min(m.corank()) > MAX_RANK {
        return Ok(None);
    }
    let side = if dual { m.binary_matroid()?.dual()? } else { m.binary_matroid()? };
    let (form, images) = PointSet::from_matroid(&side)?.canonical_form()?;
    Ok(Some((dual, form, images)))
}

/// An isomorphism a -> b if one exists.
pub fn are_isomorphic(a: &Matroid, b: &Matroid) -> Result<Option<IsoCertificate>> {
    if a.len() != b.len() || a.rank() != b.rank() {
        return Ok(None);
    }
    let (ba, bb) = (a.is_binary(), b.is_binary());
    if ba != bb {
        return Ok(None);
    }
    if ba {
        if let (Some((_, fa, ia)), Some((_, fb, ib))) = (binary_images(a)?, binary_images(b)?) {
            if fa != fb {
                return Ok(None);
            }
            let mut used = vec![false; b.len()];
            let mut map = Vec::with_capacity(a.len());
            for &v in &ia {
                let j = (0..b.len()).find(|&j| !used[j] && ib[j] == v).ok_or_else(|| Error::Internal("canonical images do not match".into()))?;
                used[j] = true;
                map.push(j);
            }
            let cert = IsoCertificate { map };
            if !cert.verify(a, b) {
                return Err(Error::Internal("binary isomorphism fails rank check".into()));
            }
            return Ok(Some(cert));
        }
    }
    generic_isomorphism(a, b)
}

fn generic_isomorphism(a: &Matroid, b: &Matroid) -> Result<Option<IsoCertificate>> {
    let n = a.len();
    if n > GENERIC_LIMIT {
        return Err(Error::TooLarge { n, limit: GENERIC_LIMIT, what: "generic isomorphism search" });
    }
    if fingerprint(a)? != fingerprint(b)? {
        return Ok(None);
    }
    let cap = if n <= CIRCUIT_LIMIT { None } else { Some(circuit_cap(a)) };
    let ca = a.circuits(cap)?;
    let cb: HashSet<Mask> = b.circuits(cap)?.into_iter().collect();
    let width = cap.unwrap_or(a.rank() + 1);
    let pa = element_profiles(a, &ca, width);
    let pb = element_profiles(b, &cb.iter().copied().collect::<Vec<_>>(), width);
    // rarest profile classes first, then by index
    let class_size = |p: &Vec<usize>| pa.iter().filter(|q| *q == p).count();
    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by_key(|&e| (class_size(&pa[e]), pa[e].clone(), e));
    let pos: Vec<usize> = {
        let mut p = vec![0; n];
        for (i, &e) in order.iter().enumerate() {
            p[e] = i;
        }
        p
    };
    // circuits checked once their last element (in search order) is placed
    let mut due: Vec<Vec<Mask>> = vec![Vec::new(); n];
    for &c in &ca {
        let last = mask::elements(c).map(|e| pos[e]).max().unwrap_or(0);
        due[last].push(c);
    }
    let mut s = Backtrack { a, b, order: &order, due: &due, cb: &cb, pa: &pa, pb: &pb, map: vec![usize::MAX; n], used: 0 };
    if s.search(0) {
        let cert = IsoCertificate { map: s.map };
        if cert.verify(a, b) {
            return Ok(Some(cert));
        }
        return Err(Error::Internal("circuit-preserving bijection fails rank check".into()));
    }
    Ok(None)
}

struct Backtrack<'a> {
    a: &'a Matroid,
    b: &'a Matroid,
    order: &'a [usize],
    due: &'a [Vec<Mask>],
    cb: &'a HashSet<Mask>,
    pa: &'a [Vec<usize>],
    pb: &'a [Vec<usize>],
    map: Vec<usize>,
    used: Mask,
}

impl Backtrack<'_> {
    fn search(&mut self, i: usize) -> bool {
        if i == self.order.len() {
            return self.a.rank_preserving_under(self.b, &self.map, VERIFY_SAMPLES);
        }
        let e = self.order[i];
        for f in 0..self.b.len() {
            if self.used & mask::single(f) != 0 || self.pa[e] != self.pb[f] {
                continue;
            }
            self.map[e] = f;
            let ok = self.due[i].iter().all(|&c| {
                let img = mask::elements(c).fold(0, |acc, x| acc | mask::single(self.map[x]));
                self.cb.contains(&img)
            });
            if ok {
                self.used |= mask::single(f);
                if self.search(i + 1) {
                    return true;
                }
                self.used &= !mask::single(f);
            }
            self.map[e] = usize::MAX;
        }
        false
    }
}

/// Three-valued minor search result.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum MinorOutcome {
    Found(MinorSpec),
    NotFound,
    BudgetExhausted,
}

pub const DEFAULT_MINOR_BUDGET: u64 = 2_000_000;

/// Searches for C independent and D coindependent with M/C\D ≅ N, trying
/// contract sets then delete sets in increasing mask order. `budget` caps the
/// number of (C, D) candidates examined.
pub fn has_minor(m: &Matroid, n: &Matroid, budget: u64) -> Result<MinorOutcome> {
    if n.len() > m.len() || n.rank() > m.rank() || n.corank() > m.corank() {
        return Ok(MinorOutcome::NotFound);
    }
    let c_size = m.rank() - n.rank();
    let d_size = m.corank() - n.corank();
    let g = m.ground();
    let binary_target = if m.is_binary() && n.is_binary() && n.rank() <= MAX_RANK {
        if n.rank() == 0 {
            None
        } else {
            Some(PointSet::from_matroid(n)?.canonical_form()?.0)
        }
    } else {
        None
    };
    let mut spent = 0u64;
    for c in mask::subsets_of_size(g, c_size) {
        if !m.is_independent(c) {
            continue;
        }
        let mc = m.contract(c)?;
        let rest = g & !c;
        let pts = match &binary_target {
            Some(_) => Some(PointSet::from_matroid(&mc)?),
            None => None,
        };
        for d in mask::subsets_of_size(mc.ground(), d_size) {
            spent += 1;
            if spent > budget {
                return Ok(MinorOutcome::BudgetExhausted);
            }
            if mc.rank_of(mc.ground() & !d) != mc.rank() {
                continue;
            }
            let found = match (&binary_target, &pts) {
                (Some(target), Some(p)) => {
                    let kept: Vec<u8> = p.points().iter().enumerate().filter(|(i, _)| d & mask::single(*i) == 0).map(|(_, &v)| v).collect();
                    PointSet::new(p.rank(), kept)?.canonical_form()?.0 == *target
                }
                _ => are_isomorphic(&mc.delete(d)?, n)?.is_some(),
            };
            if found {
                return Ok(MinorOutcome::Found(MinorSpec { contract: c, delete: mask::expand(d, rest) }));
            }
        }
    }
    Ok(MinorOutcome::NotFound)
}

/// Which member of the M(W4)-free list a matroid matched.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub enum Mw4FreeClass {
    Spike(usize),
    SpikeDual(usize),
    SpikeMinusY(usize),
    SpikeMinusTip(usize),
    SmallUniform(usize, usize),
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Mw4Report {
    pub has_mw4_minor: bool,
    /// For minor-free inputs, the list member it is isomorphic to.
    pub class: Option<Mw4FreeClass>,
    /// False when the input is minor-free but matches nothing on the list.
    pub consistent: bool,
}

/// For a 3-connected binary matroid, decides whether it has an M(W4) minor
/// and, if not, identifies it among Z_r, Z_r*, Z_r\y, Z_r\t (r >= 3) and
/// U(0,0), U(0,1), U(1,1), U(1,2), U(1,3), U(2,3).
pub fn mw4_free_check(m: &Matroid) -> Result<Mw4Report> {
    if m.len() > GENERIC_LIMIT {
        return Err(Error::TooLarge { n: m.len(), limit: GENERIC_LIMIT, what: "M(W4) check" });
    }
    if !m.is_binary() {
        return Err(Error::NotBinary);
    }
    if !m.is_3connected()? {
        return Err(Error::Precondition("matroid is not 3-connected".into()));
    }
    let w4 = catalog::named("MW4")?;
    let outcome = has_minor(m, &w4, DEFAULT_MINOR_BUDGET)?;
    match outcome {
        MinorOutcome::BudgetExhausted => return Err(Error::BudgetExhausted(DEFAULT_MINOR_BUDGET)),
        MinorOutcome::Found(_) => return Ok(Mw4Report { has_mw4_minor: true, class: None, consistent: true }),
        MinorOutcome::NotFound => {}
    }
    let (n, r) = (m.len(), m.rank());
    let mut candidates: Vec<(Mw4FreeClass, Matroid)> = Vec::new();
    for (ur, un) in [(0, 0), (0, 1), (1, 1), (1, 2), (1, 3), (2, 3)] {
        if (ur, un) == (r, n) {
            candidates.push((Mw4FreeClass::SmallUniform(ur, un), catalog::uniform(ur, un)?));
        }
    }
    if n % 2 == 1 && n >= 7 {
        let s = (n - 1) / 2;
        if r == s {
            candidates.push((Mw4FreeClass::Spike(s), catalog::spike(s)?));
        }
        if r == s + 1 {
            candidates.push((Mw4FreeClass::SpikeDual(s), catalog::spike(s)?.dual()?));
        }
    }
    if n % 2 == 0 && n >= 6 && r == n / 2 {
        candidates.push((Mw4FreeClass::SpikeMinusY(r), catalog::spike_minus_y(r)?));
        candidates.push((Mw4FreeClass::SpikeMinusTip(r), catalog::spike_minus_tip(r)?));
    }
    for (class, z) in candidates {
        if are_isomorphic(m, &z)?.is_some() {
            return Ok(Mw4Report { has_mw4_minor: false, class: Some(class), consistent: true });
        }
    }
    Ok(Mw4Report { has_mw4_minor: false, class: None, consistent: false })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::catalog::{lookup, named, uniform};
    use rand::seq::SliceRandom;
    use rand::SeedableRng;

    fn permuted(m: &Matroid, seed: u64) -> (Matroid, Vec<usize>) {
        let mut rng = rand::rngs::StdRng::seed_from_u64(seed);
        let mut perm: Vec<usize> = (0..m.len()).collect();
        perm.shuffle(&mut rng);
        // element i of the result is element perm[i] of m
        let p = Matroid::from_rank_fn(m.len(), |x| m.rank_of(mask::elements(x).fold(0, |a, e| a | mask::single(perm[e]))), None).unwrap();
        (p, perm)
    }

    #[test]
    fn binary_certificates() {
        let p10 = named("P10").unwrap();
        let cert = are_isomorphic(&p10, &p10.dual().unwrap()).unwrap().unwrap();
        assert!(cert.verify(&p10, &p10.dual().unwrap()));
        let f7 = named("F7").unwrap();
        assert!(are_isomorphic(&f7, &named("F7*").unwrap()).unwrap().is_none());
    }

    #[test]
    fn generic_path_on_relabelled_tables() {
        let u24 = lookup("U24").unwrap();
        let (p, _) = permuted(&u24, 1);
        assert!(are_isomorphic(&u24, &p).unwrap().is_some());
        let k4 = named("MW3").unwrap();
        let pc = k4.parallel_connection(0, &u24, 0).unwrap();
        let (q, _) = permuted(&pc, 2);
        let cert = are_isomorphic(&pc, &q).unwrap().unwrap();
        assert!(cert.verify(&pc, &q));
        let other = uniform(2, 3).unwrap().direct_sum(&uniform(0, 1).unwrap()).unwrap();
        assert!(are_isomorphic(&u24, &other).unwrap().is_none());
    }

    #[test]
    fn fingerprints_agree_on_isomorphs() {
        let p9 = named("P9").unwrap();
        let (q, _) = permuted(&p9, 3);
        assert_eq!(fingerprint(&p9).unwrap(), fingerprint(&q).unwrap());
    }

    #[test]
    fn simple_binary_form() {
        assert!(binary_canonical_form(&lookup("U24").unwrap()).is_err());
        assert!(binary_canonical_form(&uniform(1, 2).unwrap()).is_err());
        let a = binary_canonical_form(&named("AG32").unwrap()).unwrap();
        let s = binary_canonical_form(&named("S8").unwrap()).unwrap();
        assert_ne!(a, s);
    }

    #[test]
    fn minors() {
        let f7 = named("F7").unwrap();
        let u24 = lookup("U24").unwrap();
        assert_eq!(has_minor(&f7, &u24, 1_000_000).unwrap(), MinorOutcome::NotFound);
        let p10 = named("P10").unwrap();
        let w4 = named("MW4").unwrap();
        match has_minor(&p10, &w4, 1_000_000).unwrap() {
            MinorOutcome::Found(spec) => assert!(are_isomorphic(&p10.minor(spec).unwrap(), &w4).unwrap().is_some()),
            other => panic!("{other:?}"),
        }
        let empty = uniform(0, 0).unwrap();
        assert_eq!(
            has_minor(&f7, &empty, 10).unwrap(),
            MinorOutcome::Found(MinorSpec { contract: 0b111, delete: 0b111_1000 })
        );
        assert_eq!(has_minor(&p10, &w4, 3).unwrap(), MinorOutcome::BudgetExhausted);
    }

    #[test]
    fn mw4_free_examples() {
        let z5t = lookup("Z5t").unwrap();
        let r = mw4_free_check(&z5t).unwrap();
        assert_eq!(r.class, Some(Mw4FreeClass::SpikeMinusTip(5)));
        assert!(mw4_free_check(&named("P9").unwrap()).unwrap().has_mw4_minor);
        let u23 = uniform(2, 3).unwrap();
        assert_eq!(mw4_free_check(&u23).unwrap().class, Some(Mw4FreeClass::SmallUniform(2, 3)));
    }
}
