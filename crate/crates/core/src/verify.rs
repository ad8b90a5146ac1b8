//! Replays the published claims about binary (k,l)-uniform matroids as
//! named, deterministic checks.

use std::collections::{BTreeSet, HashMap};

use rand::{Rng, SeedableRng};
use serde::{Deserialize, Serialize};

use crate::binary::{binary_key, BinaryCanonicalForm, PointSet};
use crate::catalog::{self, lookup, named};
use crate::error::{Error, Result};
use crate::gf::{FieldSpec, GfMatrix};
use crate::iso::{are_isomorphic, has_minor, mw4_free_check, MinorOutcome, Mw4FreeClass};
use crate::mask;
use crate::matroid::Matroid;
use crate::search::{self, compute_f, kl_predicate, FRoute, SearchConfig};
use crate::uniformity::{
    classify_connected_not3_22, classify_disconnected_22, is_22_uniform_circuits, is_kl_uniform, is_kl_uniform_flats,
    is_kl_uniform_minor, simple_iff_uniform_check, KlPair,
};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct CheckInfo {
    pub id: &'static str,
    pub description: &'static str,
    /// Excluded from `run_all` unless slow checks are requested.
    pub slow: bool,
}

const fn info(id: &'static str, description: &'static str, slow: bool) -> CheckInfo {
    CheckInfo { id, description, slow }
}

pub const CHECKS: &[CheckInfo] = &[
    info("oracles", "flats, minor and circuit-pair deciders agree", false),
    info("duality", "(k,l)-uniformity of M equals (l,k)-uniformity of M*, and is upward monotone", false),
    info("simple-iff", "a matroid of rank r >= 2 is simple iff it is (r-1,1)-uniform", false),
    info("f-21-12", "f(2,1,2) = f(1,2,2) = 4", false),
    info("f-31-13", "f(3,1,2) = 5 and f(1,3,2) = 11", true),
    info("rank-corank-bound", "simple cosimple binary (2,2)-uniform matroids of rank <= 6 have min(r, r*) <= 5", true),
    info("recursion-bound", "f(2,2,2) <= max(f(1,3,2), f(1,2,2) + 1) = 11, attained by AG(4,2)*", true),
    info("circuit-pairs", "(2,2)-uniform iff every two circuits span a set of rank >= r - 1", false),
    info("disconnected-22", "disconnected (2,2)-uniform matroids fall under the D clauses", false),
    info("connected-22", "connected non-3-connected (2,2)-uniform matroids fall under the C clauses", false),
    info("binary-22-list", "the non-3-connected binary (2,2)-uniform list is sound, and complete for n <= 9", false),
    info("mw4-free", "3-connected binary matroids without an M(W4) minor are spikes or tiny uniform matroids", false),
    info("spikes", "Z_r, Z_r\\y are (2,2)-uniform iff r <= 4; Z_r\\t iff r <= 5", false),
    info("ag42-maximal", "AG(4,2) has no binary (2,2)-uniform extension or coextension", false),
    info("k33-extensions", "a simple rank-5 binary extension of M(K33) is (2,2)-uniform iff affine", false),
    info("coextensions", "(2,2)-uniform coextensions of M(K5\\e) and P9 are {L10} and {P10, L10}", false),
    info("census", "3-connected binary (2,2)-uniform = 3-connected minors of Z5\\t, P10, AG(4,2), AG(4,2)*", false),
    info("p10-facts", "P10 is self-dual, P10/5\\10 = M(W4), P10/8 = Z4", false),
    info("grafts", "graft descriptions of P9, R10 and L10", false),
    info("three-sum-p10", "P10 is the 3-sum of P9 and F7 across exactly four triangles of P9", false),
];

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CheckResult {
    pub id: String,
    pub description: String,
    pub passed: bool,
    pub details: Vec<String>,
}

pub fn find_check(id: &str) -> Option<&'static CheckInfo> {
    CHECKS.iter().find(|c| c.id == id)
}

struct Log {
    passed: bool,
    details: Vec<String>,
}

impl Log {
    fn new() -> Log {
        Log { passed: true, details: Vec::new() }
    }

    fn expect(&mut self, ok: bool, what: impl Into<String>) {
        let what = what.into();
        self.details.push(format!("{} {what}", if ok { "ok  " } else { "FAIL" }));
        self.passed &= ok;
    }

    fn note(&mut self, what: impl Into<String>) {
        self.details.push(what.into());
    }
}

/// Runs one check by id.
pub fn run_check(id: &str, workers: usize) -> Result<CheckResult> {
    let info = find_check(id).ok_or_else(|| Error::Precondition(format!("unknown check `{id}`")))?;
    let mut log = Log::new();
    match id {
        "oracles" => oracles(&mut log)?,
        "duality" => duality(&mut log)?,
        "simple-iff" => simple_iff(&mut log)?,
        "f-21-12" => f_small(&mut log, workers)?,
        "f-31-13" => f_large(&mut log, workers)?,
        "rank-corank-bound" => rank_corank(&mut log, workers)?,
        "recursion-bound" => recursion(&mut log, workers)?,
        "circuit-pairs" => circuit_pairs(&mut log)?,
        "disconnected-22" => clauses(&mut log, false)?,
        "connected-22" => clauses(&mut log, true)?,
        "binary-22-list" => binary_list(&mut log, workers)?,
        "mw4-free" => mw4(&mut log, workers)?,
        "spikes" => spikes(&mut log)?,
        "ag42-maximal" => ag42(&mut log)?,
        "k33-extensions" => k33(&mut log)?,
        "coextensions" => coext(&mut log)?,
        "census" => census(&mut log, workers)?,
        "p10-facts" => p10(&mut log)?,
        "grafts" => grafts(&mut log)?,
        "three-sum-p10" => three_sum(&mut log)?,
        _ => unreachable!(),
    }
    Ok(CheckResult { id: info.id.into(), description: info.description.into(), passed: log.passed, details: log.details })
}

/// Runs every check, skipping slow ones unless `slow` is set.
pub fn run_all(slow: bool, workers: usize) -> Result<Vec<CheckResult>> {
    CHECKS.iter().filter(|c| slow || !c.slow).map(|c| run_check(c.id, workers)).collect()
}

fn kl(k: usize, l: usize) -> KlPair {
    KlPair { k, l }
}

/// Random linear matroids over GF(q) with 1..=max_rows rows and up to
/// `max_n` columns, from a fixed seed.
pub fn random_linear(count: usize, max_n: usize, fields: &[u32], seed: u64) -> Result<Vec<Matroid>> {
    let mut rng = rand::rngs::StdRng::seed_from_u64(seed);
    let mut out = Vec::with_capacity(count);
    for i in 0..count {
        let q = fields[i % fields.len()];
        let field = FieldSpec::new(q)?;
        let n = rng.gen_range(1..=max_n);
        let rows = rng.gen_range(1..=n.min(5));
        let mut a = GfMatrix::zeros(field, rows, n)?;
        for r in 0..rows {
            for c in 0..n {
                // sparse-ish entries give loops and parallel classes often enough
                if rng.gen_bool(0.55) {
                    a.set(r, c, rng.gen_range(1..q) as u8);
                }
            }
        }
        out.push(Matroid::linear(a, None)?);
    }
    Ok(out)
}

/// Catalog matroids with at most `max_n` elements plus `random` random
/// linear matroids over GF(2) and GF(3) with at most 10 elements.
pub fn corpus(max_n: usize, random: usize, seed: u64) -> Result<Vec<(String, Matroid)>> {
    let mut out: Vec<(String, Matroid)> =
        catalog::entries()?.into_iter().filter(|e| e.size <= max_n).map(|e| (e.name, e.matroid)).collect();
    for (i, m) in random_linear(random, 10, &[2, 3], seed)?.into_iter().enumerate() {
        out.push((format!("random#{i}"), m));
    }
    Ok(out)
}

/// Pairs (k, l) with k + l <= 6.
pub fn small_pairs() -> Vec<KlPair> {
    (1..=5).flat_map(|k| (1..=6 - k).map(move |l| kl(k, l))).collect()
}

#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct OracleSummary {
    pub matroids: usize,
    pub comparisons: usize,
    pub disagreements: Vec<String>,
}

/// Compares the flats and minor deciders on every (k,l) with k + l <= 6,
/// plus the circuit-pair decider at (2,2) when circuits are enumerable.
pub fn oracle_agreement(corpus: &[(String, Matroid)]) -> Result<OracleSummary> {
    let mut s = OracleSummary { matroids: corpus.len(), ..Default::default() };
    for (name, m) in corpus {
        for p in small_pairs() {
            let a = is_kl_uniform_flats(m, p)?;
            let b = is_kl_uniform_minor(m, p)?;
            s.comparisons += 1;
            if a.uniform != b.uniform {
                s.disagreements.push(format!("{name} {p}: flats {} minor {}", a.uniform, b.uniform));
            }
            for w in a.witness.iter().chain(b.witness.iter()) {
                if !w.verify(m, p) {
                    s.disagreements.push(format!("{name} {p}: witness does not verify"));
                }
            }
            if p == kl(2, 2) && m.len() <= crate::matroid::CIRCUIT_LIMIT {
                s.comparisons += 1;
                if is_22_uniform_circuits(m)? != a.uniform {
                    s.disagreements.push(format!("{name} (2,2): circuit-pair decider disagrees"));
                }
            }
        }
    }
    Ok(s)
}

/// Duality and upward monotonicity over k + l <= 6; returns violations.
pub fn duality_violations(corpus: &[(String, Matroid)]) -> Result<Vec<String>> {
    let mut bad = Vec::new();
    for (name, m) in corpus {
        let d = m.dual()?;
        for p in small_pairs() {
            let here = is_kl_uniform(m, p)?;
            if here != is_kl_uniform(&d, p.dual())? {
                bad.push(format!("{name} {p}: differs from the dual"));
            }
            if here {
                for up in [kl(p.k + 1, p.l), kl(p.k, p.l + 1)] {
                    if !is_kl_uniform(m, up)? {
                        bad.push(format!("{name}: {p} holds but {up} fails"));
                    }
                }
            }
        }
    }
    Ok(bad)
}

fn oracles(log: &mut Log) -> Result<()> {
    let c = corpus(16, 100, 0x5eed)?;
    let s = oracle_agreement(&c)?;
    log.expect(s.disagreements.is_empty(), format!("{} matroids, {} comparisons, {} disagreements", s.matroids, s.comparisons, s.disagreements.len()));
    for d in s.disagreements.iter().take(10) {
        log.note(d.clone());
    }
    Ok(())
}

fn duality(log: &mut Log) -> Result<()> {
    let c = corpus(16, 100, 0x5eed)?;
    let bad = duality_violations(&c)?;
    log.expect(bad.is_empty(), format!("{} matroids, {} violations", c.len(), bad.len()));
    for d in bad.iter().take(10) {
        log.note(d.clone());
    }
    Ok(())
}

fn simple_iff(log: &mut Log) -> Result<()> {
    let c = corpus(16, 100, 0x51)?;
    let mut tested = 0;
    let mut simple = 0;
    for (name, m) in &c {
        if m.rank() < 2 {
            continue;
        }
        match simple_iff_uniform_check(m) {
            Ok(s) => {
                tested += 1;
                simple += s as usize;
            }
            Err(e) => log.expect(false, format!("{name}: {e}")),
        }
    }
    log.expect(tested > 0, format!("{tested} matroids of rank >= 2 agree ({simple} simple)"));
    Ok(())
}

fn describe_f(f: &search::FReport) -> String {
    let ranks: Vec<String> = f.per_rank.iter().map(|r| format!("r{}:{}", r.rank, r.count)).collect();
    format!("f{} = {:?} via {:?} route; family sizes {}", f.kl, f.value, f.route, ranks.join(" "))
}

fn f_small(log: &mut Log, workers: usize) -> Result<()> {
    for p in [kl(2, 1), kl(1, 2)] {
        let f = compute_f(p, 5, workers)?;
        log.expect(f.value == Some(4) && f.top_rank_empty, describe_f(&f));
    }
    let f = compute_f(kl(2, 1), 4, workers)?;
    let ag32 = form_of(&named("AG32")?)?;
    log.expect(f.attainers.contains(&ag32), "AG(3,2) is a rank-4 simple cosimple (2,1)-uniform matroid");
    Ok(())
}

fn form_of(m: &Matroid) -> Result<BinaryCanonicalForm> {
    Ok(PointSet::from_matroid(m)?.canonical_form()?.0)
}

fn f_large(log: &mut Log, workers: usize) -> Result<()> {
    let f31 = compute_f(kl(3, 1), 6, workers)?;
    log.expect(f31.value == Some(5) && f31.top_rank_empty, describe_f(&f31));
    let f13 = compute_f(kl(1, 3), 5, workers)?;
    log.expect(f13.value == Some(11) && f13.route == FRoute::Dual, describe_f(&f13));
    let attainers: BTreeSet<_> = f13.attainers.iter().cloned().collect();
    let expected: BTreeSet<_> = [form_of(&lookup("PG32")?)?, form_of(&lookup("AG42")?)?].into_iter().collect();
    log.expect(attainers == expected, "attained exactly by PG(3,2)* (15 - 4) and AG(4,2)* (16 - 5)");
    Ok(())
}

fn rank_corank(log: &mut Log, workers: usize) -> Result<()> {
    let mut worst = 0;
    let mut total = 0;
    for r in 1..=6 {
        let rep = search::enumerate_kl_uniform(&SearchConfig::new(r, kl(2, 2)).cosimple().workers(workers))?;
        for f in &rep.representatives {
            total += 1;
            worst = worst.max(r.min(f.values.len() - r));
        }
    }
    log.expect(worst <= 5, format!("{total} classes over ranks 1..=6, largest min(r, r*) = {worst}"));
    Ok(())
}

fn recursion(log: &mut Log, workers: usize) -> Result<()> {
    let f13 = compute_f(kl(1, 3), 5, workers)?.value.unwrap_or(0);
    let f12 = compute_f(kl(1, 2), 5, workers)?.value.unwrap_or(0);
    let bound = f13.max(f12 + 1);
    log.expect(bound == 11, format!("max(f(1,3,2), f(1,2,2) + 1) = max({f13}, {}) = {bound}", f12 + 1));
    let c = search::three_connected_census_22(workers)?;
    let top = c.members.iter().map(|m| m.rank).max().unwrap_or(0);
    log.expect(top <= bound, format!("largest rank among 3-connected (2,2)-uniform matroids is {top}"));
    let ag_star = binary_key(&lookup("AG42*")?)?;
    log.expect(c.members.iter().any(|m| m.key == ag_star && m.rank == 11), "AG(4,2)* has rank 11");
    Ok(())
}

fn circuit_pairs(log: &mut Log) -> Result<()> {
    let c = corpus(16, 100, 0xc1)?;
    let mut bad = 0;
    for (name, m) in &c {
        let a = is_22_uniform_circuits(m)?;
        let b = is_kl_uniform(m, kl(2, 2))?;
        if a != b {
            bad += 1;
            log.note(format!("{name}: circuits {a}, flats {b}"));
        }
    }
    log.expect(bad == 0, format!("{} matroids, {bad} disagreements", c.len()));
    Ok(())
}

fn non_binary_clause_example() -> Result<Matroid> {
    let u24 = lookup("U24")?;
    // the basepoint is element 0 of the result
    named("MW3")?.parallel_connection(0, &u24, 0)?.delete(mask::single(0))
}

fn clauses(log: &mut Log, connected: bool) -> Result<()> {
    let mut counts: std::collections::BTreeMap<String, usize> = Default::default();
    let mut items: Vec<(String, Matroid)> =
        catalog::cor33_family(7)?.into_iter().map(|(m, _)| (format!("{} [{}]", m.name, m.item), m.matroid)).collect();
    if connected {
        items.push(("P(M(K4),U24)\\p".into(), non_binary_clause_example()?));
    }
    for (name, m) in items {
        if m.is_connected() != connected || m.is_3connected()? {
            continue;
        }
        let class = if connected { classify_connected_not3_22(&m) } else { classify_disconnected_22(&m) };
        match class {
            Ok(c) => {
                let ok = c.verify(&m)?;
                if !ok {
                    log.expect(false, format!("{name}: {} does not re-verify", c.clause));
                }
                *counts.entry(c.clause.to_string()).or_insert(0) += 1;
            }
            Err(e) => log.expect(false, format!("{name}: {e}")),
        }
    }
    let summary: Vec<String> = counts.iter().map(|(c, n)| format!("{c}:{n}")).collect();
    log.expect(!counts.is_empty(), format!("clauses assigned and re-verified: {}", summary.join(" ")));
    Ok(())
}

fn binary_list(log: &mut Log, workers: usize) -> Result<()> {
    let family = catalog::cor33_family(9)?;
    let mut bad = 0;
    for (m, _) in &family {
        let x = &m.matroid;
        let ok = x.is_binary() && is_kl_uniform(x, kl(2, 2))? && !x.is_3connected()? && {
            let c = if x.is_connected() { classify_connected_not3_22(x)? } else { classify_disconnected_22(x)? };
            c.verify(x)?
        };
        if !ok {
            bad += 1;
            log.note(format!("unsound member {}", m.name));
        }
    }
    log.expect(bad == 0, format!("{} members and duals: binary, (2,2)-uniform, not 3-connected, clause re-verified", family.len()));
    let keys: HashMap<_, _> = family.into_iter().map(|(m, k)| (k, m.name)).collect();
    let c = search::not_3connected_completeness(9, &keys, workers)?;
    log.expect(c.missing.is_empty(), format!("{} enumerated classes with n <= 9, {} outside the list", c.checked, c.missing.len()));
    // the basepoint of S8 in P(S8, U23)\t
    let s8 = named("S8")?;
    let good: Vec<&str> = (0..s8.len())
        .filter(|&p| {
            catalog::connect_triangle_minus_base(&s8, p).and_then(|m| is_kl_uniform(&m, kl(2, 2))).unwrap_or(false)
        })
        .map(|p| s8.labels()[p].as_str())
        .collect();
    log.note(format!("P(S8,U23)\\p is (2,2)-uniform for p in {{{}}}", good.join(",")));
    log.expect(good.contains(&"t"), "the tip t of S8 gives a (2,2)-uniform result");
    Ok(())
}

fn mw4(log: &mut Log, _workers: usize) -> Result<()> {
    for r in 3..=6 {
        for (name, class) in [
            (format!("Z{r}"), Mw4FreeClass::Spike(r)),
            (format!("Z{r}*"), Mw4FreeClass::SpikeDual(r)),
            (format!("Z{r}y"), Mw4FreeClass::SpikeMinusY(r)),
            (format!("Z{r}t"), Mw4FreeClass::SpikeMinusTip(r)),
        ] {
            let m = if let Some(base) = name.strip_suffix('*') { lookup(base)?.dual()? } else { lookup(&name)? };
            let rep = mw4_free_check(&m)?;
            // Z3\t and Z3\y are both M(K4)
            let same = r == 3 && matches!(rep.class, Some(Mw4FreeClass::SpikeMinusY(3) | Mw4FreeClass::SpikeMinusTip(3)));
            let ok = rep.class.as_ref() == Some(&class) || (same && matches!(class, Mw4FreeClass::SpikeMinusY(_) | Mw4FreeClass::SpikeMinusTip(_)));
            log.expect(!rep.has_mw4_minor && ok, format!("{name}: {:?}", rep.class));
        }
    }
    for (r, n) in [(0, 1), (1, 1), (1, 2), (1, 3), (2, 3)] {
        let rep = mw4_free_check(&catalog::uniform(r, n)?.binary_matroid()?)?;
        log.expect(rep.class == Some(Mw4FreeClass::SmallUniform(r, n)), format!("U({r},{n}): {:?}", rep.class));
    }
    let mut with_minor = 0;
    let mut free = 0;
    let mut inconsistent = 0;
    for name in ["MW4", "P9", "P10", "L10", "R10", "MK5e", "MK33", "MK33*", "F7", "F7*", "AG32", "S8", "MW3"] {
        let rep = mw4_free_check(&named(name)?)?;
        if !rep.consistent {
            inconsistent += 1;
            log.note(format!("{name}: M(W4)-free but not on the list"));
        }
        if rep.has_mw4_minor {
            with_minor += 1;
        } else {
            free += 1;
        }
    }
    log.expect(inconsistent == 0, format!("named matroids: {with_minor} with an M(W4) minor, {free} without, {inconsistent} off the list"));
    Ok(())
}

/// (r, is_22(Z_r), is_22(Z_r\y), is_22(Z_r\t)) for r = 3..=6.
pub fn spike_table() -> Result<Vec<(usize, bool, bool, bool)>> {
    let p = kl(2, 2);
    (3..=6)
        .map(|r| {
            let both = |m: &Matroid| -> Result<bool> {
                let a = is_kl_uniform_flats(m, p)?.uniform;
                let b = is_kl_uniform_minor(m, p)?.uniform;
                if a != b {
                    return Err(Error::Internal(format!("deciders disagree on a rank-{r} spike")));
                }
                Ok(a)
            };
            Ok((r, both(&catalog::spike(r)?)?, both(&catalog::spike_minus_y(r)?)?, both(&catalog::spike_minus_tip(r)?)?))
        })
        .collect()
}

fn spikes(log: &mut Log) -> Result<()> {
    for (r, z, zy, zt) in spike_table()? {
        log.expect(z == (r <= 4) && zy == (r <= 4) && zt == (r <= 5), format!("r = {r}: Z {z}, Z\\y {zy}, Z\\t {zt}"));
    }
    Ok(())
}

fn ag42(log: &mut Log) -> Result<()> {
    let ag = lookup("AG42")?;
    let cands = search::extension_candidates(&ag)?;
    let passing = cands.iter().filter(|(_, s)| s.is_kl_uniform(2, 2)).count();
    log.expect(cands.len() == 15 && passing == 0, format!("{} extensions, {passing} (2,2)-uniform", cands.len()));
    let co = search::coextensions(&ag, kl_predicate(kl(2, 2)))?;
    log.expect(co.is_empty(), format!("{} (2,2)-uniform coextensions out of 2^16", co.len()));
    Ok(())
}

fn k33(log: &mut Log) -> Result<()> {
    let m = named("MK33")?;
    let cands = search::extension_candidates(&m)?;
    let mut mismatches = 0;
    for (_, s) in &cands {
        if s.is_kl_uniform(2, 2) != s.to_matroid(None)?.is_binary_affine()? {
            mismatches += 1;
        }
    }
    log.expect(cands.len() == 22 && mismatches == 0, format!("{} candidate points; (2,2)-uniform iff affine with {mismatches} exceptions", cands.len()));
    let all = search::extensions(&m, |_| true)?;
    log.expect(all.len() == 4, format!("{} isomorphism classes of extensions", all.len()));
    let good: BTreeSet<_> = search::extensions(&m, kl_predicate(kl(2, 2)))?.into_iter().map(|r| r.form).collect();
    let expected: BTreeSet<_> = [form_of(&named("R10")?)?, form_of(&named("L10")?)?].into_iter().collect();
    log.expect(good == expected, format!("{} passing classes, equal to {{R10, L10}}", good.len()));
    Ok(())
}

fn coext(log: &mut Log) -> Result<()> {
    let l10 = form_of(&named("L10")?)?;
    let p10 = form_of(&named("P10")?)?;
    for (name, alpha, expected) in [("MK5e", 0, vec![l10.clone()]), ("P9", 1, vec![l10, p10])] {
        let base = named(name)?;
        log.expect(are_isomorphic(&catalog::matrix_a(alpha)?, &base)?.is_some(), format!("matrix A with alpha = {alpha} represents {name}"));
        let got: BTreeSet<_> = search::coextensions(&base, kl_predicate(kl(2, 2)))?.into_iter().map(|r| r.form).collect();
        let want: BTreeSet<_> = expected.into_iter().collect();
        log.expect(got == want, format!("{name}: {} classes of (2,2)-uniform coextensions", got.len()));
    }
    Ok(())
}

fn census(log: &mut Log, workers: usize) -> Result<()> {
    let c = match search::three_connected_census_22(workers) {
        Ok(c) => c,
        Err(e) => {
            log.expect(false, e.to_string());
            return Ok(());
        }
    };
    log.expect(true, format!("{} classes from minors equal the enumerated ones ({} of rank <= 5 before dualizing)", c.members.len(), c.enumerated_primal));
    let keys: BTreeSet<_> = c.members.iter().map(|m| &m.key).collect();
    for name in ["Z5t", "P10", "AG42", "AG42*", "MW4"] {
        log.expect(keys.contains(&binary_key(&lookup(name)?)?), format!("contains {name}"));
    }
    let mut bad = 0;
    for m in &c.members {
        let x = if m.key.dual { m.key.form.to_point_set().to_matroid(None)?.dual()? } else { m.key.form.to_point_set().to_matroid(None)? };
        let a = is_kl_uniform_flats(&x, kl(2, 2))?.uniform;
        let b = is_kl_uniform_minor(&x, kl(2, 2))?.uniform;
        let d = is_22_uniform_circuits(&x)?;
        bad += !(a && b && d) as usize;
    }
    log.expect(bad == 0, "every member is (2,2)-uniform by all three deciders");
    Ok(())
}

fn p10(log: &mut Log) -> Result<()> {
    let p10 = named("P10")?;
    let dual = p10.dual()?;
    let c = are_isomorphic(&p10, &dual)?;
    log.expect(c.as_ref().is_some_and(|c| c.verify(&p10, &dual)), "P10 is isomorphic to its dual");
    let w4 = named("MW4")?;
    let minor = p10.contract(p10.mask_of(&["5"])?)?;
    let minor = minor.delete(minor.mask_of(&["10"])?)?;
    let c = are_isomorphic(&minor, &w4)?;
    log.expect(c.as_ref().is_some_and(|c| c.verify(&minor, &w4)), "P10/5\\10 is isomorphic to M(W4)");
    let z4 = lookup("Z4")?;
    let m8 = p10.contract(p10.mask_of(&["8"])?)?;
    let c = are_isomorphic(&m8, &z4)?;
    log.expect(c.as_ref().is_some_and(|c| c.verify(&m8, &z4)), "P10/8 is isomorphic to Z4");
    log.expect(matches!(has_minor(&p10, &w4, 1_000_000)?, MinorOutcome::Found(_)), "the minor search finds M(W4) in P10");
    Ok(())
}

/// The ten vectors of GF(2)^5 with exactly three ones.
fn weight_three_r10() -> Result<Matroid> {
    let cols: Vec<u64> = (0u64..32).filter(|v| v.count_ones() == 3).collect();
    Matroid::binary(5, &cols, None)
}

fn grafts(log: &mut Log) -> Result<()> {
    let pairs = [
        ("P9", catalog::w4_graft()?, named("P9")?),
        ("R10", catalog::k33_graft(&[0, 1, 2, 3, 4, 5])?, weight_three_r10()?),
        ("L10", catalog::k33_graft(&[0, 1, 2, 3])?, named("L10")?),
    ];
    for (name, g, m) in pairs {
        log.expect(form_of(&g)? == form_of(&m)?, format!("graft of {name} has the canonical form of its matrix"));
    }
    Ok(())
}

/// Triangles as label triples.
pub type Triangles = Vec<Vec<String>>;

/// Triangles of P9 across which the 3-sum with F7 is P10, and the rest.
pub fn three_sum_triangles() -> Result<(Triangles, Triangles)> {
    let p9 = named("P9")?;
    let f7 = named("F7")?;
    let p10 = named("P10")?;
    let ft: Vec<usize> = mask::elements(f7.circuits(Some(3))?[0]).collect();
    let mut yes = Vec::new();
    let mut no = Vec::new();
    for t in p9.circuits(Some(3))? {
        let ts: Vec<usize> = mask::elements(t).collect();
        let sum = p9.binary_three_sum([ts[0], ts[1], ts[2]], &f7, [ft[0], ft[1], ft[2]])?;
        let labels: Vec<String> = ts.iter().map(|&e| p9.labels()[e].clone()).collect();
        if are_isomorphic(&sum, &p10)?.is_some() {
            yes.push(labels);
        } else {
            no.push(labels);
        }
    }
    Ok((yes, no))
}

fn three_sum(log: &mut Log) -> Result<()> {
    let (yes, no) = three_sum_triangles()?;
    let show = |v: &[Vec<String>]| v.iter().map(|t| format!("{{{}}}", t.join(","))).collect::<Vec<_>>().join(" ");
    log.note(format!("giving P10: {}", show(&yes)));
    log.note(format!("not giving P10: {}", show(&no)));
    let mut no_sorted: Vec<Vec<String>> = no.clone();
    no_sorted.sort();
    let expected = vec![vec!["1".to_string(), "4".into(), "8".into()], vec!["3".to_string(), "4".into(), "7".into()]];
    log.expect(yes.len() == 4 && no_sorted == expected, "exactly the four triangles other than {1,4,8} and {3,4,7}");
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn ids_are_unique() {
        let ids: BTreeSet<_> = CHECKS.iter().map(|c| c.id).collect();
        assert_eq!(ids.len(), CHECKS.len());
        assert!(run_check("nope", 0).is_err());
    }

    #[test]
    fn quick_checks_pass() {
        for id in ["p10-facts", "grafts", "spikes", "three-sum-p10"] {
            let r = run_check(id, 0).unwrap();
            assert!(r.passed, "{id}: {:?}", r.details);
        }
    }
}
