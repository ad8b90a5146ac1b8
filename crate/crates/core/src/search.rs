//! Isomorph-free enumeration of binary (k,l)-uniform matroids of a fixed
//! rank, grown one point at a time from a basis, plus extension and
//! coextension searches and the f(k,l,2) computations built on them.
//!
//! Every spanning set contains a basis and (k,l)-uniformity is closed under
//! deletion, so growing level by level from the standard basis and pruning
//! each child that fails the property reaches every class. Levels are
//! deduplicated by canonical form.

use std::collections::{BTreeMap, BTreeSet, HashMap, VecDeque};
use std::path::Path;
use std::time::Instant;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::binary::{binary_key, BinaryCanonicalForm, BinaryKey, PointSet, MAX_RANK};
use crate::catalog;
use crate::error::{Error, Result};
use crate::mask;
use crate::matroid::Matroid;
use crate::uniformity::KlPair;

pub const DEFAULT_NODE_BUDGET: u64 = 50_000_000;

/// Largest rank accepted by the enumeration.
pub const SEARCH_MAX_RANK: usize = 6;

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct SearchConfig {
    pub rank: usize,
    pub kl: KlPair,
    /// When false, loops and repeated points are allowed and `max_size` must be set.
    pub require_simple: bool,
    pub require_cosimple: bool,
    pub require_3connected: bool,
    /// Stop growing after this many elements.
    pub max_size: Option<usize>,
    pub node_budget: u64,
    /// Thread count; 0 uses the rayon default. Not part of the report.
    #[serde(skip)]
    pub workers: usize,
}

impl SearchConfig {
    pub fn new(rank: usize, kl: KlPair) -> SearchConfig {
        SearchConfig {
            rank,
            kl,
            require_simple: true,
            require_cosimple: false,
            require_3connected: false,
            max_size: None,
            node_budget: DEFAULT_NODE_BUDGET,
            workers: 0,
        }
    }

    pub fn cosimple(mut self) -> Self {
        self.require_cosimple = true;
        self
    }

    pub fn three_connected(mut self) -> Self {
        self.require_3connected = true;
        self
    }

    pub fn workers(mut self, w: usize) -> Self {
        self.workers = w;
        self
    }

    fn validate(&self) -> Result<()> {
        if self.rank == 0 || self.rank > SEARCH_MAX_RANK {
            return Err(Error::Precondition(format!("search rank must be in 1..={SEARCH_MAX_RANK}, got {}", self.rank)));
        }
        if !self.require_simple && self.max_size.is_none() {
            return Err(Error::Precondition("non-simple searches need a size cap".into()));
        }
        Ok(())
    }

    fn size_cap(&self) -> usize {
        let full = (1usize << self.rank) - 1;
        match (self.max_size, self.require_simple) {
            (Some(m), true) => m.min(full),
            (Some(m), false) => m,
            (None, _) => full,
        }
    }

    /// Whether a grown set passes the leaf filters.
    pub fn accepts(&self, s: &PointSet) -> Result<bool> {
        if self.require_simple && !s.is_simple() {
            return Ok(false);
        }
        if self.require_cosimple && !s.is_cosimple() {
            return Ok(false);
        }
        if self.require_3connected && !s.is_3connected()? {
            return Ok(false);
        }
        Ok(true)
    }
}

#[derive(Debug, Clone, Copy, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct SearchStats {
    /// Canonical forms computed.
    pub nodes: u64,
    /// Children rejected by the incremental (k,l) check.
    pub pruned: u64,
    /// Children whose canonical form was already present.
    pub duplicates: u64,
    /// Sets kept across all levels.
    pub classes: u64,
    pub levels: u64,
}

impl SearchStats {
    fn merge(mut self, o: SearchStats) -> SearchStats {
        self.nodes += o.nodes;
        self.pruned += o.pruned;
        self.duplicates += o.duplicates;
        self.classes += o.classes;
        self.levels += o.levels;
        self
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct SizeCount {
    pub rank: usize,
    pub size: usize,
    pub count: usize,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct SearchReport {
    pub config: SearchConfig,
    /// Sets passing the leaf filters, sorted by (size, form).
    pub representatives: Vec<BinaryCanonicalForm>,
    pub counts: Vec<SizeCount>,
    /// The configured rank when the family is nonempty.
    pub max_nonempty_rank: Option<usize>,
    pub stats: SearchStats,
    /// Excluded from equality checks between runs.
    #[serde(default)]
    pub wall_ms: u64,
}

impl SearchReport {
    /// Report with the timing field cleared.
    pub fn without_timing(&self) -> SearchReport {
        let mut r = SearchReport { wall_ms: 0, ..self.clone() };
        r.config.workers = 0;
        r
    }

    pub fn is_empty(&self) -> bool {
        self.representatives.is_empty()
    }
}

/// Resumable state written after every completed level.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct Checkpoint {
    pub schema: u32,
    pub config: SearchConfig,
    pub frontier: Vec<BinaryCanonicalForm>,
    pub found: Vec<BinaryCanonicalForm>,
    pub stats: SearchStats,
}

impl Checkpoint {
    pub fn load(path: &Path) -> Result<Checkpoint> {
        let text = std::fs::read_to_string(path)?;
        serde_json::from_str(&text).map_err(|e| Error::Parse { line: e.line(), msg: e.to_string() })
    }

    pub fn save(&self, path: &Path) -> Result<()> {
        let tmp = path.with_extension("tmp");
        let text = serde_json::to_string(self).map_err(|e| Error::Internal(e.to_string()))?;
        std::fs::write(&tmp, text)?;
        std::fs::rename(&tmp, path)?;
        Ok(())
    }
}

fn pool(workers: usize) -> Result<rayon::ThreadPool> {
    rayon::ThreadPoolBuilder::new().num_threads(workers).build().map_err(|e| Error::Internal(e.to_string()))
}

fn candidates(cfg: &SearchConfig, set: &PointSet) -> Vec<u8> {
    let top = 1u16 << cfg.rank;
    if cfg.require_simple {
        let mut used = vec![false; top as usize];
        for &v in set.points() {
            used[v as usize] = true;
        }
        (1..top).filter(|&v| !used[v as usize]).map(|v| v as u8).collect()
    } else {
        (0..top).map(|v| v as u8).collect()
    }
}

/// Children of a set that stay (k,l)-uniform, canonicalized, and those that
/// were pruned.
pub fn children(cfg: &SearchConfig, set: &PointSet) -> Result<(Vec<BinaryCanonicalForm>, Vec<PointSet>)> {
    let mut kept = Vec::new();
    let mut pruned = Vec::new();
    for p in candidates(cfg, set) {
        if set.kl_uniform_after_adding(p, cfg.kl.k, cfg.kl.l) {
            kept.push(set.with_point(p).canonical_form()?.0);
        } else {
            pruned.push(set.with_point(p));
        }
    }
    Ok((kept, pruned))
}

fn root(rank: usize) -> Result<BinaryCanonicalForm> {
    let basis: Vec<u8> = (0..rank).map(|i| 1u8 << i).collect();
    Ok(PointSet::new(rank, basis)?.canonical_form()?.0)
}

/// Enumerates every (k,l)-uniform spanning set of the configured rank up to
/// GL(r,2) and relabelling, keeping those that pass the leaf filters.
pub fn enumerate_kl_uniform(cfg: &SearchConfig) -> Result<SearchReport> {
    run(cfg, None, None)
}

/// As [`enumerate_kl_uniform`], saving a checkpoint after each level and
/// optionally resuming from one.
pub fn enumerate_with_checkpoint(cfg: &SearchConfig, checkpoint: &Path, resume: bool) -> Result<SearchReport> {
    let start = if resume && checkpoint.exists() {
        let c = Checkpoint::load(checkpoint)?;
        let mut expected = cfg.clone();
        expected.workers = 0;
        let mut stored = c.config.clone();
        stored.workers = 0;
        // the budget may be raised on resume
        stored.node_budget = expected.node_budget;
        if stored != expected {
            return Err(Error::Precondition("checkpoint was written for a different configuration".into()));
        }
        Some(c)
    } else {
        None
    };
    run(cfg, start, Some(checkpoint))
}

fn run(cfg: &SearchConfig, resume: Option<Checkpoint>, checkpoint: Option<&Path>) -> Result<SearchReport> {
    cfg.validate()?;
    let started = Instant::now();
    let pool = pool(cfg.workers)?;
    let (mut frontier, mut found, mut stats) = match resume {
        Some(c) => (c.frontier, c.found, c.stats),
        None => {
            let r = root(cfg.rank)?;
            let mut found = Vec::new();
            if cfg.accepts(&r.to_point_set())? {
                found.push(r.clone());
            }
            (vec![r], found, SearchStats { nodes: 1, classes: 1, levels: 1, ..Default::default() })
        }
    };
    let cap = cfg.size_cap();
    while !frontier.is_empty() && frontier[0].values.len() < cap {
        let results: Vec<Result<(Vec<BinaryCanonicalForm>, u64)>> = pool.install(|| {
            frontier
                .par_iter()
                .map(|f| children(cfg, &f.to_point_set()).map(|(k, p)| (k, p.len() as u64)))
                .collect()
        });
        let mut next = BTreeSet::new();
        let mut level = SearchStats { levels: 1, ..Default::default() };
        for r in results {
            let (kept, pruned) = r?;
            level.pruned += pruned;
            level.nodes += kept.len() as u64;
            for k in kept {
                if !next.insert(k) {
                    level.duplicates += 1;
                }
            }
        }
        level.classes = next.len() as u64;
        frontier = next.into_iter().collect();
        let accepted: Vec<Result<bool>> = pool.install(|| frontier.par_iter().map(|f| cfg.accepts(&f.to_point_set())).collect());
        for (f, ok) in frontier.iter().zip(accepted) {
            if ok? {
                found.push(f.clone());
            }
        }
        stats = stats.merge(level);
        if let Some(path) = checkpoint {
            Checkpoint { schema: 1, config: cfg.clone(), frontier: frontier.clone(), found: found.clone(), stats }.save(path)?;
        }
        if stats.nodes > cfg.node_budget {
            return Err(Error::BudgetExhausted(cfg.node_budget));
        }
    }
    let mut counts: BTreeMap<usize, usize> = BTreeMap::new();
    for f in &found {
        *counts.entry(f.values.len()).or_insert(0) += 1;
    }
    Ok(SearchReport {
        config: cfg.clone(),
        max_nonempty_rank: if found.is_empty() { None } else { Some(cfg.rank) },
        counts: counts.into_iter().map(|(size, count)| SizeCount { rank: cfg.rank, size, count }).collect(),
        representatives: found,
        stats,
        wall_ms: started.elapsed().as_millis() as u64,
    })
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum FRoute {
    /// Largest rank with a nonempty simple cosimple family.
    Direct,
    /// For k = 1: largest |E| - r over simple cosimple (l,1)-uniform matroids.
    Dual,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct RankSummary {
    pub rank: usize,
    pub count: usize,
    /// Largest |E| - r in the family.
    pub max_corank: Option<usize>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct FReport {
    pub kl: KlPair,
    pub r_max: usize,
    pub route: FRoute,
    pub value: Option<usize>,
    /// True when the searched family at rank `r_max` was empty, so the value
    /// is not merely a lower bound from the rank cap.
    pub top_rank_empty: bool,
    pub per_rank: Vec<RankSummary>,
    /// Members attaining the value (of the searched family, not dualized).
    pub attainers: Vec<BinaryCanonicalForm>,
    pub stats: SearchStats,
}

/// f(k,l,2) over ranks 1..=r_max. For k = 1 and l >= 2 the dual route is used.
pub fn compute_f(kl: KlPair, r_max: usize, workers: usize) -> Result<FReport> {
    if r_max == 0 || r_max > SEARCH_MAX_RANK {
        return Err(Error::Precondition(format!("r_max must be in 1..={SEARCH_MAX_RANK}")));
    }
    let (route, searched) = if kl.k == 1 && kl.l >= 2 { (FRoute::Dual, kl.dual()) } else { (FRoute::Direct, kl) };
    let mut per_rank = Vec::new();
    let mut stats = SearchStats::default();
    let mut best: Option<usize> = None;
    let mut attainers = Vec::new();
    let mut top_rank_empty = false;
    for r in 1..=r_max {
        let cfg = SearchConfig::new(r, searched).cosimple().workers(workers);
        let rep = enumerate_kl_uniform(&cfg)?;
        stats = stats.merge(rep.stats);
        let max_corank = rep.representatives.iter().map(|f| f.values.len() - r).max();
        per_rank.push(RankSummary { rank: r, count: rep.representatives.len(), max_corank });
        top_rank_empty = rep.is_empty();
        let value = match route {
            FRoute::Direct => (!rep.is_empty()).then_some(r),
            FRoute::Dual => max_corank,
        };
        if let Some(v) = value {
            let members: Vec<BinaryCanonicalForm> = match route {
                FRoute::Direct => rep.representatives.clone(),
                FRoute::Dual => rep.representatives.iter().filter(|f| f.values.len() - r == v).cloned().collect(),
            };
            match best {
                Some(b) if v < b => {}
                Some(b) if v == b => attainers.extend(members),
                _ => {
                    best = Some(v);
                    attainers = members;
                }
            }
        }
    }
    Ok(FReport { kl, r_max, route, value: best, top_rank_empty, per_rank, attainers, stats })
}

/// A search result: a set in element order together with its canonical form.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Representative {
    pub form: BinaryCanonicalForm,
    pub points: PointSet,
}

impl Representative {
    pub fn to_matroid(&self) -> Result<Matroid> {
        self.points.to_matroid(None)
    }
}

fn dedupe(items: Vec<PointSet>) -> Result<Vec<Representative>> {
    let mut seen = BTreeMap::new();
    for points in items {
        let form = points.canonical_form()?.0;
        seen.entry(form.clone()).or_insert(Representative { form, points });
    }
    Ok(seen.into_values().collect())
}

/// Every extension of a simple binary matroid by a projective point it does
/// not use, with the added point; not deduplicated.
pub fn extension_candidates(m: &Matroid) -> Result<Vec<(u8, PointSet)>> {
    let set = PointSet::from_matroid(m)?;
    if !set.is_simple() {
        return Err(Error::NotSimple);
    }
    if set.rank() > SEARCH_MAX_RANK {
        return Err(Error::TooLarge { n: set.rank(), limit: SEARCH_MAX_RANK, what: "extension rank" });
    }
    let cfg = SearchConfig::new(set.rank().max(1), KlPair { k: 1, l: 1 });
    Ok(candidates(&cfg, &set).into_iter().map(|p| (p, set.with_point(p))).collect())
}

/// Single-element simple extensions passing `pred`, up to isomorphism.
pub fn extensions<P>(m: &Matroid, pred: P) -> Result<Vec<Representative>>
where
    P: Fn(&PointSet) -> bool + Sync,
{
    let kept: Vec<PointSet> = extension_candidates(m)?.into_par_iter().map(|(_, s)| s).filter(|s| pred(s)).collect();
    dedupe(kept)
}

/// The coextension of `set` by a new element x: a new coordinate is appended
/// with entries `beta` on the old elements and x the new unit vector.
pub fn coextend(set: &PointSet, beta: u64) -> Result<PointSet> {
    let mut points: Vec<u8> = set.points().iter().enumerate().map(|(i, &v)| (v << 1) | (beta >> i & 1) as u8).collect();
    points.push(1);
    PointSet::new(set.rank() + 1, points)
}

/// Single-element binary coextensions passing `pred`, up to isomorphism.
/// All 2^n choices of the new row are tried.
pub fn coextensions<P>(m: &Matroid, pred: P) -> Result<Vec<Representative>>
where
    P: Fn(&PointSet) -> bool + Sync,
{
    let set = PointSet::from_matroid(m)?;
    if set.rank() + 1 > MAX_RANK {
        return Err(Error::TooLarge { n: set.rank(), limit: MAX_RANK - 1, what: "coextension rank" });
    }
    let n = set.len();
    if n > 24 {
        return Err(Error::TooLarge { n, limit: 24, what: "coextension search" });
    }
    let kept: Vec<Result<Option<PointSet>>> = (0..1u64 << n)
        .into_par_iter()
        .map(|beta| {
            let s = coextend(&set, beta)?;
            Ok(pred(&s).then_some(s))
        })
        .collect();
    let mut out = Vec::new();
    for k in kept {
        if let Some(s) = k? {
            out.push(s);
        }
    }
    dedupe(out)
}

/// Predicate for (k,l)-uniformity on point sets.
pub fn kl_predicate(kl: KlPair) -> impl Fn(&PointSet) -> bool + Sync {
    move |s: &PointSet| s.is_kl_uniform(kl.k, kl.l)
}

fn simplify(m: &Matroid) -> Result<Matroid> {
    let mut keep = 0;
    for e in mask::elements(m.ground()) {
        if m.rank_of(mask::single(e)) == 0 {
            continue;
        }
        if mask::elements(keep).any(|f| m.rank_of(mask::single(e) | mask::single(f)) == 1) {
            continue;
        }
        keep |= mask::single(e);
    }
    m.restrict(keep)
}

/// Repeated simplification and cosimplification; every simple cosimple
/// minor of `m` is a minor of the result.
pub fn simple_cosimple_core(m: &Matroid) -> Result<Matroid> {
    let mut cur = simplify(m)?;
    loop {
        let next = simplify(&simplify(&cur.dual()?)?.dual()?)?;
        if next.len() == cur.len() {
            return Ok(next);
        }
        cur = next;
    }
}

/// All simple cosimple minors of `tops` up to isomorphism, keyed.
pub fn simple_cosimple_minors(tops: &[Matroid]) -> Result<BTreeMap<BinaryKey, Matroid>> {
    let mut seen: BTreeMap<BinaryKey, Matroid> = BTreeMap::new();
    let mut queue = VecDeque::new();
    for t in tops {
        let c = simple_cosimple_core(&t.binary_matroid()?)?;
        if seen.insert(binary_key(&c)?, c.clone()).is_none() {
            queue.push_back(c);
        }
    }
    while let Some(m) = queue.pop_front() {
        let kids: Vec<Result<Vec<Matroid>>> = (0..m.len())
            .into_par_iter()
            .map(|e| {
                let d = simple_cosimple_core(&m.delete(mask::single(e))?)?;
                let c = simple_cosimple_core(&m.contract(mask::single(e))?)?;
                Ok(vec![d, c])
            })
            .collect();
        for k in kids {
            for c in k? {
                let key = binary_key(&c)?;
                if let std::collections::btree_map::Entry::Vacant(v) = seen.entry(key) {
                    v.insert(c.clone());
                    queue.push_back(c);
                }
            }
        }
    }
    Ok(seen)
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CensusMember {
    pub key: BinaryKey,
    pub n: usize,
    pub rank: usize,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CensusReport {
    /// 3-connected simple cosimple minors of Z5\t, P10, AG(4,2), AG(4,2)*.
    pub members: Vec<CensusMember>,
    /// Size of the independently enumerated family (before dualizing).
    pub enumerated_primal: usize,
    pub stats: SearchStats,
}

fn member(m: &Matroid) -> Result<CensusMember> {
    Ok(CensusMember { key: binary_key(m)?, n: m.len(), rank: m.rank() })
}

/// The 3-connected simple cosimple binary (2,2)-uniform matroids with
/// min(r, r*) <= 5, computed twice: as minors of the four maximal matroids
/// and by enumeration of ranks 1..=5 closed under duality. The two sets
/// must coincide.
pub fn three_connected_census_22(workers: usize) -> Result<CensusReport> {
    let ag = catalog::lookup("AG42")?;
    let tops = [catalog::lookup("Z5t")?, catalog::named("P10")?, ag.clone(), ag.dual()?];
    let pool = pool(workers)?;
    let minors = pool.install(|| simple_cosimple_minors(&tops))?;
    let mut from_minors = BTreeMap::new();
    for (k, m) in minors {
        // 3-connectivity is invariant under duality, so the key's side will do
        if !m.is_empty() && k.form.to_point_set().is_3connected()? {
            from_minors.insert(k, m);
        }
    }
    let kl = KlPair { k: 2, l: 2 };
    let mut from_search: BTreeMap<BinaryKey, Matroid> = BTreeMap::new();
    let mut stats = SearchStats::default();
    let mut primal = 0;
    for r in 1..=5 {
        let cfg = SearchConfig::new(r, kl).cosimple().three_connected().workers(workers);
        let rep = enumerate_kl_uniform(&cfg)?;
        stats = stats.merge(rep.stats);
        primal += rep.representatives.len();
        for f in &rep.representatives {
            let m = f.to_point_set().to_matroid(None)?;
            let d = m.dual()?;
            for x in [m, d] {
                from_search.insert(binary_key(&x)?, x);
            }
        }
    }
    let a: BTreeSet<&BinaryKey> = from_minors.keys().collect();
    let b: BTreeSet<&BinaryKey> = from_search.keys().collect();
    if a != b {
        let only_a = a.difference(&b).count();
        let only_b = b.difference(&a).count();
        return Err(Error::Internal(format!(
            "census mismatch: {only_a} classes only among minors, {only_b} only among enumerated"
        )));
    }
    let members = from_minors.values().map(member).collect::<Result<Vec<_>>>()?;
    Ok(CensusReport { members, enumerated_primal: primal, stats })
}

/// Outcome of the exhaustive check that every small non-3-connected binary
/// (2,2)-uniform matroid belongs to the known family.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CompletenessReport {
    pub max_n: usize,
    /// Non-3-connected (2,2)-uniform classes found, ranks 0..=4 (duals cover the rest).
    pub checked: usize,
    /// Keys found by enumeration but missing from the family.
    pub missing: Vec<BinaryKey>,
}

/// Enumerates binary (2,2)-uniform matroids (loops and parallel elements
/// allowed) with 1 <= n <= `max_n` and rank 0..=4 and checks each
/// non-3-connected one against `family`. For n <= 9, ranks of at least 5
/// have corank at most 4 and are covered because the family is closed
/// under duality.
pub fn not_3connected_completeness(max_n: usize, family: &HashMap<BinaryKey, String>, workers: usize) -> Result<CompletenessReport> {
    let kl = KlPair { k: 2, l: 2 };
    let mut checked = 0;
    let mut missing = Vec::new();
    // rank 0: U(0,n), whose duals are the free matroids
    for n in 1..=max_n {
        let m = catalog::uniform(0, n)?.binary_matroid()?;
        if PointSet::from_matroid(&m)?.is_3connected()? {
            continue;
        }
        checked += 1;
        let key = binary_key(&m)?;
        if !family.contains_key(&key) {
            missing.push(key);
        }
    }
    for r in 1..=4.min(max_n) {
        let cfg = SearchConfig { require_simple: false, max_size: Some(max_n), ..SearchConfig::new(r, kl).workers(workers) };
        let rep = enumerate_kl_uniform(&cfg)?;
        for f in rep.representatives {
            let s = f.to_point_set();
            if s.is_3connected()? {
                continue;
            }
            checked += 1;
            let key = binary_key(&s.to_matroid(None)?)?;
            if !family.contains_key(&key) {
                missing.push(key);
            }
        }
    }
    Ok(CompletenessReport { max_n, checked, missing })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::catalog::{lookup, named};
    use crate::uniformity::is_kl_uniform_flats;
    use rand::seq::SliceRandom;
    use rand::{Rng, SeedableRng};

    fn kl(k: usize, l: usize) -> KlPair {
        KlPair::new(k, l).unwrap()
    }

    fn form_of(m: &Matroid) -> BinaryCanonicalForm {
        PointSet::from_matroid(m).unwrap().canonical_form().unwrap().0
    }

    #[test]
    fn rank_two_simple() {
        let rep = enumerate_kl_uniform(&SearchConfig::new(2, kl(1, 1))).unwrap();
        let sizes: Vec<usize> = rep.representatives.iter().map(|f| f.values.len()).collect();
        assert_eq!(sizes, vec![2, 3]);
    }

    #[test]
    fn rank_three_simple_count() {
        // simple spanning rank-3 binary matroids: 6 classes
        let rep = enumerate_kl_uniform(&SearchConfig::new(3, kl(3, 1))).unwrap();
        assert_eq!(rep.representatives.len(), 6);
    }

    #[test]
    fn small_f_values() {
        let f = compute_f(kl(2, 1), 5, 0).unwrap();
        assert_eq!(f.value, Some(4));
        assert!(f.top_rank_empty);
        assert!(f.attainers.contains(&form_of(&named("AG32").unwrap())));
        let g = compute_f(kl(1, 2), 5, 0).unwrap();
        assert_eq!(g.value, Some(4));
        assert_eq!(g.route, FRoute::Dual);
    }

    #[test]
    fn workers_do_not_change_reports() {
        let cfg = SearchConfig::new(4, kl(2, 2)).cosimple();
        let a = enumerate_kl_uniform(&cfg.clone().workers(1)).unwrap();
        let b = enumerate_kl_uniform(&cfg.workers(3)).unwrap();
        assert_eq!(a.without_timing(), b.without_timing());
    }

    #[test]
    fn pruned_children_fail() {
        let mut pruned = Vec::new();
        for cfg in [SearchConfig::new(4, kl(2, 1)), SearchConfig { max_size: Some(9), ..SearchConfig::new(5, kl(2, 2)) }] {
            let rep = enumerate_kl_uniform(&cfg).unwrap();
            for f in &rep.representatives {
                pruned.extend(children(&cfg, &f.to_point_set()).unwrap().1.into_iter().map(|p| (cfg.kl, p)));
            }
        }
        let mut rng = rand::rngs::StdRng::seed_from_u64(5);
        let sample: Vec<_> = pruned.choose_multiple(&mut rng, 100).collect();
        assert_eq!(sample.len(), 100);
        for (k, p) in sample {
            let m = p.to_matroid(None).unwrap();
            assert!(!is_kl_uniform_flats(&m, *k).unwrap().uniform);
        }
    }

    #[test]
    fn representatives_are_canonical() {
        let rep = enumerate_kl_uniform(&SearchConfig::new(4, kl(2, 2))).unwrap();
        let mut rng = rand::rngs::StdRng::seed_from_u64(9);
        let distinct: BTreeSet<_> = rep.representatives.iter().collect();
        assert_eq!(distinct.len(), rep.representatives.len());
        for f in &rep.representatives {
            let mut pts = f.values.clone();
            pts.shuffle(&mut rng);
            // random invertible change of coordinates
            let cols: Vec<u8> = loop {
                let c: Vec<u8> = (0..4).map(|_| rng.gen_range(1..16)).collect();
                if crate::gf::binary_rank(c.iter().map(|&v| v as u64)) == 4 {
                    break c;
                }
            };
            let moved: Vec<u8> = pts.iter().map(|&v| (0..4).filter(|i| v >> i & 1 == 1).fold(0, |a, i| a ^ cols[i])).collect();
            assert_eq!(&PointSet::new(4, moved).unwrap().canonical_form().unwrap().0, f);
        }
    }

    #[test]
    fn checkpoint_resume_matches() {
        let dir = std::env::temp_dir().join(format!("klsearch-{}", std::process::id()));
        std::fs::create_dir_all(&dir).unwrap();
        let path = dir.join("state.json");
        let cfg = SearchConfig::new(4, kl(2, 2));
        let full = enumerate_kl_uniform(&cfg).unwrap();
        let small = SearchConfig { node_budget: 10, ..cfg.clone() };
        assert_eq!(enumerate_with_checkpoint(&small, &path, false), Err(Error::BudgetExhausted(10)));
        let resumed = enumerate_with_checkpoint(&cfg, &path, true).unwrap();
        assert_eq!(resumed.representatives, full.representatives);
        std::fs::remove_dir_all(&dir).unwrap();
    }

    #[test]
    fn extension_searches() {
        let u23 = crate::catalog::uniform(2, 3).unwrap();
        assert!(extensions(&u23, |_| true).unwrap().is_empty());
        let k33 = named("MK33").unwrap();
        assert_eq!(extension_candidates(&k33).unwrap().len(), 22);
        let all = extensions(&k33, |_| true).unwrap();
        assert_eq!(all.len(), 4);
        let good = extensions(&k33, kl_predicate(kl(2, 2))).unwrap();
        let forms: BTreeSet<_> = good.iter().map(|r| r.form.clone()).collect();
        let expected: BTreeSet<_> = ["R10", "L10"].iter().map(|n| form_of(&named(n).unwrap())).collect();
        assert_eq!(forms, expected);
        assert!(coextensions(&k33, |_| false).unwrap().is_empty());
    }

    #[test]
    fn coextension_searches() {
        let l10 = form_of(&named("L10").unwrap());
        let p10 = form_of(&named("P10").unwrap());
        let a = coextensions(&named("MK5e").unwrap(), kl_predicate(kl(2, 2))).unwrap();
        assert_eq!(a.iter().map(|r| r.form.clone()).collect::<Vec<_>>(), vec![l10.clone()]);
        let b = coextensions(&named("P9").unwrap(), kl_predicate(kl(2, 2))).unwrap();
        let got: BTreeSet<_> = b.iter().map(|r| r.form.clone()).collect();
        assert_eq!(got, [l10, p10].into_iter().collect());
    }

    #[test]
    fn core_of_non_simple() {
        let m = crate::catalog::uniform(1, 3).unwrap().direct_sum(&named("F7").unwrap()).unwrap();
        let c = simple_cosimple_core(&m).unwrap();
        assert_eq!(c.len(), 7);
        let z = lookup("Z4").unwrap();
        assert_eq!(simple_cosimple_core(&z).unwrap().len(), 9);
    }
}
