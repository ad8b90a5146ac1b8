//! (k,l)-uniformity: three independent deciders, paving tests, and the
//! structure classifiers for (2,2)-uniform matroids that are not 3-connected.

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::mask::{self, Mask};
use crate::matroid::{Matroid, MinorSpec};

/// A pair of positive integers (k, l).
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct KlPair {
    pub k: usize,
    pub l: usize,
}

impl KlPair {
    pub fn new(k: usize, l: usize) -> Result<KlPair> {
        if k == 0 || l == 0 {
            return Err(Error::Precondition(format!("(k, l) = ({k}, {l}) must be positive")));
        }
        Ok(KlPair { k, l })
    }

    pub fn dual(self) -> KlPair {
        KlPair { k: self.l, l: self.k }
    }
}

impl fmt::Display for KlPair {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({},{})", self.k, self.l)
    }
}

/// Why a matroid fails to be (k,l)-uniform.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum UniformityWitness {
    /// A flat of rank r(M) - k with nullity at least l.
    Flat(Mask),
    /// M / contract \ delete is isomorphic to U(k,k) ⊕ U(0,l).
    Minor(MinorSpec),
}

impl UniformityWitness {
    /// Re-checks the witness against `m` from scratch.
    pub fn verify(&self, m: &Matroid, kl: KlPair) -> bool {
        if m.rank() < kl.k {
            return false;
        }
        match *self {
            UniformityWitness::Flat(f) => {
                m.check_mask(f).is_ok() && m.is_flat(f) && m.rank_of(f) == m.rank() - kl.k && m.nullity(f) >= kl.l
            }
            UniformityWitness::Minor(spec) => {
                spec.contract & spec.delete == 0
                    && m.check_mask(spec.contract | spec.delete).is_ok()
                    && m.minor(spec).map(|n| is_free_plus_loops(&n, kl)).unwrap_or(false)
            }
        }
    }
}

/// Whether `n` is U(k,k) ⊕ U(0,l): k coloops, l loops and nothing else.
fn is_free_plus_loops(n: &Matroid, kl: KlPair) -> bool {
    n.len() == kl.k + kl.l
        && n.rank() == kl.k
        && mask::size(n.loops()) == kl.l
        && mask::size(n.coloops()) == kl.k
}

/// Outcome of a decider: uniform, or a witness of failure.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct Verdict {
    pub uniform: bool,
    pub witness: Option<UniformityWitness>,
}

impl Verdict {
    fn uniform() -> Verdict {
        Verdict { uniform: true, witness: None }
    }

    fn fails(w: UniformityWitness) -> Verdict {
        Verdict { uniform: false, witness: Some(w) }
    }
}

/// Decides (k,l)-uniformity from the flats of rank r(M) - k. The witness is
/// the numerically least flat with nullity at least l.
pub fn is_kl_uniform_flats(m: &Matroid, kl: KlPair) -> Result<Verdict> {
    if kl.k > m.rank() {
        return Ok(Verdict::uniform());
    }
    let flats = m.flats_of_rank(m.rank() - kl.k)?;
    Ok(match flats.into_iter().find(|&f| m.nullity(f) >= kl.l) {
        Some(f) => Verdict::fails(UniformityWitness::Flat(f)),
        None => Verdict::uniform(),
    })
}

/// Decides (k,l)-uniformity by searching for the forbidden minor directly:
/// contract an independent set X of size r(M) - k, and if M/X has at least
/// l loops keep l of them beside a basis of M/X. Independent sets are tried
/// in increasing mask order.
pub fn is_kl_uniform_minor(m: &Matroid, kl: KlPair) -> Result<Verdict> {
    if kl.k > m.rank() {
        return Ok(Verdict::uniform());
    }
    let t = m.rank() - kl.k;
    let g = m.ground();
    for x in mask::subsets_of_size(g, t) {
        if !m.is_independent(x) {
            continue;
        }
        let loops: Vec<usize> = mask::elements(g & !x).filter(|&e| m.rank_of(x | mask::single(e)) == t).collect();
        if loops.len() < kl.l {
            continue;
        }
        let z = mask::from_elements(loops[..kl.l].iter().copied());
        // a basis of M/X among the remaining elements
        let rest = g & !x & !z;
        let mut b = 0;
        for e in mask::elements(rest) {
            if m.rank_of(x | b | mask::single(e)) > m.rank_of(x | b) {
                b |= mask::single(e);
            }
        }
        let spec = MinorSpec { contract: x, delete: rest & !b };
        let w = UniformityWitness::Minor(spec);
        if !w.verify(m, kl) {
            return Err(Error::Internal(format!("minor witness {spec:?} does not verify")));
        }
        return Ok(Verdict::fails(w));
    }
    Ok(Verdict::uniform())
}

/// (2,2)-uniformity via circuit pairs: every two distinct circuits have a
/// union of rank at least r(M) - 1.
pub fn is_22_uniform_circuits(m: &Matroid) -> Result<bool> {
    let cs = m.circuits(None)?;
    let need = m.rank().saturating_sub(1);
    for (i, &a) in cs.iter().enumerate() {
        for &b in &cs[i + 1..] {
            if m.rank_of(a | b) < need {
                return Ok(false);
            }
        }
    }
    Ok(true)
}

/// (k,l)-uniformity by whichever exact decider is cheaper: the flats
/// decider walks the lattice up to rank r(M) - k, which explodes when the
/// rank is large relative to |E|, so above r(M) > r*(M) the minor search is used.
pub fn is_kl_uniform(m: &Matroid, kl: KlPair) -> Result<bool> {
    if m.rank() > m.corank() {
        return Ok(is_kl_uniform_minor(m, kl)?.uniform);
    }
    Ok(is_kl_uniform_flats(m, kl)?.uniform)
}

fn kl(k: usize, l: usize) -> KlPair {
    KlPair { k, l }
}

/// Paving: (2,1)-uniform.
pub fn is_paving(m: &Matroid) -> Result<bool> {
    is_kl_uniform(m, kl(2, 1))
}

/// Sparse paving: (2,1)- and (1,2)-uniform.
pub fn is_sparse_paving(m: &Matroid) -> Result<bool> {
    Ok(is_paving(m)? && is_kl_uniform(m, kl(1, 2))?)
}

/// Simplicity, cross-checked against (r-1,1)-uniformity.
pub fn simple_iff_uniform_check(m: &Matroid) -> Result<bool> {
    if m.rank() < 2 {
        return Err(Error::Precondition(format!("rank {} is below 2", m.rank())));
    }
    let simple = m.is_simple();
    let uniform = is_kl_uniform(m, kl(m.rank() - 1, 1))?;
    if simple != uniform {
        return Err(Error::Internal(format!("simple = {simple} but (r-1,1)-uniform = {uniform}")));
    }
    Ok(simple)
}

/// The minimal pairs (k, l) <= (k_max, l_max) for which `m` is (k,l)-uniform.
/// Upward closure inside the box is checked and any violation reported.
pub fn minimal_kl_frontier(m: &Matroid, k_max: usize, l_max: usize) -> Result<Vec<KlPair>> {
    if k_max == 0 || l_max == 0 {
        return Err(Error::Precondition("frontier bounds must be positive".into()));
    }
    let mut table = vec![vec![false; l_max + 1]; k_max + 1];
    for k in 1..=k_max {
        for l in 1..=l_max {
            table[k][l] = is_kl_uniform(m, kl(k, l))?;
        }
    }
    let mut out = Vec::new();
    for k in 1..=k_max {
        for l in 1..=l_max {
            if !table[k][l] {
                continue;
            }
            if (k < k_max && !table[k + 1][l]) || (l < l_max && !table[k][l + 1]) {
                return Err(Error::Internal(format!("uniformity not upward closed at ({k},{l})")));
            }
            if !table[k - 1][l] && !table[k][l - 1] {
                out.push(kl(k, l));
            }
        }
    }
    Ok(out)
}

/// Structural clauses for (2,2)-uniform matroids that are
/// disconnected (D) or connected but not 3-connected (C).
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum Clause {
    DI,
    DII,
    DIII,
    CI,
    CII,
    CIII,
    CIV,
}

impl fmt::Display for Clause {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = match self {
            Clause::DI => "D-i",
            Clause::DII => "D-ii",
            Clause::DIII => "D-iii",
            Clause::CI => "C-i",
            Clause::CII => "C-ii",
            Clause::CIII => "C-iii",
            Clause::CIV => "C-iv",
        };
        f.write_str(s)
    }
}

/// Decomposition data backing a clause. Element indices refer to M.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub enum Decomposition {
    /// M (or M* when `dual`) is paving.
    Paving { dual: bool },
    /// M = M\e ⊕ U(0,1) with e a loop, or M = M\e ⊕ U(1,1) with e a coloop;
    /// the paving matroid is M\e or (M\e)* respectively.
    LoopOrColoop { element: usize, coloop: bool },
    /// M = M\P ⊕ U(1,2) with M\P sparse paving.
    ParallelComponent { pair: Mask },
    /// M (or M*) has rank 3 with parallel classes of size at most two.
    RankThree { dual: bool },
    /// {p, q} is a parallel or series pair and M\p/q is sparse paving.
    PairMinor { p: usize, q: usize, series: bool },
    /// M = P(N, U(2,4))\p with N = M/t1\t2, where t3 plays the basepoint p,
    /// N connected and N/p, N*/p paving.
    ParallelConnection { triangle: [usize; 3] },
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct StructureClass {
    pub clause: Clause,
    pub decomposition: Decomposition,
}

impl StructureClass {
    /// Re-checks the clause's connectivity condition and its decomposition on `m`.
    pub fn verify(&self, m: &Matroid) -> Result<bool> {
        let disconnected = matches!(self.clause, Clause::DI | Clause::DII | Clause::DIII);
        if disconnected == m.is_connected() || (!disconnected && m.is_3connected()?) {
            return Ok(false);
        }
        let side = |dual: bool| if dual { m.dual() } else { Ok(m.clone()) };
        Ok(match (self.clause, &self.decomposition) {
            (Clause::DI | Clause::CI, Decomposition::Paving { dual }) => is_paving(&side(*dual)?)?,
            (Clause::DII, &Decomposition::LoopOrColoop { element, coloop }) => {
                let e = mask::single(element);
                let rest = m.delete(e)?;
                if coloop {
                    m.coloops() & e != 0 && is_paving(&rest.dual()?)?
                } else {
                    m.loops() & e != 0 && is_paving(&rest)?
                }
            }
            (Clause::DIII, &Decomposition::ParallelComponent { pair }) => {
                mask::size(pair) == 2 && m.rank_of(pair) == 1 && m.lambda(pair) == 0 && is_sparse_paving(&m.delete(pair)?)?
            }
            (Clause::CII, Decomposition::RankThree { dual }) => rank_three_small_classes(&side(*dual)?),
            (Clause::CIII, &Decomposition::PairMinor { p, q, series }) => {
                let pair = mask::single(p) | mask::single(q);
                let dependent = if series { m.dual()?.rank_of(pair) } else { m.rank_of(pair) } == 1;
                p != q && dependent && is_sparse_paving(&m.delete(mask::single(p))?.contract(mask::single(reindex(q, mask::single(p))))?)?
            }
            (Clause::CIV, &Decomposition::ParallelConnection { triangle: [t1, t2, t3] }) => {
                let t = mask::single(t1) | mask::single(t2) | mask::single(t3);
                m.is_triangle(t) && m.lambda(t) == 1 && rebuilds_from_u24(m, t1, t2, t3)?
            }
            _ => false,
        })
    }
}

fn require_22(m: &Matroid) -> Result<()> {
    if !is_kl_uniform(m, kl(2, 2))? {
        return Err(Error::Precondition("matroid is not (2,2)-uniform".into()));
    }
    Ok(())
}

fn paving_side(m: &Matroid) -> Result<Option<bool>> {
    if is_paving(m)? {
        return Ok(Some(false));
    }
    if is_paving(&m.dual()?)? {
        return Ok(Some(true));
    }
    Ok(None)
}

/// First applicable clause for a disconnected (2,2)-uniform matroid.
pub fn classify_disconnected_22(m: &Matroid) -> Result<StructureClass> {
    if m.is_connected() {
        return Err(Error::Precondition("matroid is connected".into()));
    }
    require_22(m)?;
    if let Some(dual) = paving_side(m)? {
        return Ok(StructureClass { clause: Clause::DI, decomposition: Decomposition::Paving { dual } });
    }
    let g = m.ground();
    for e in mask::elements(m.loops()) {
        if is_paving(&m.delete(mask::single(e))?)? {
            let decomposition = Decomposition::LoopOrColoop { element: e, coloop: false };
            return Ok(StructureClass { clause: Clause::DII, decomposition });
        }
    }
    for e in mask::elements(m.coloops()) {
        if is_paving(&m.delete(mask::single(e))?.dual()?)? {
            let decomposition = Decomposition::LoopOrColoop { element: e, coloop: true };
            return Ok(StructureClass { clause: Clause::DII, decomposition });
        }
    }
    for c in m.components() {
        if mask::size(c) == 2 && m.rank_of(c) == 1 && m.lambda(c) == 0 && is_sparse_paving(&m.delete(c)?)? {
            debug_assert!(m.lambda(g & !c) == 0);
            let decomposition = Decomposition::ParallelComponent { pair: c };
            return Ok(StructureClass { clause: Clause::DIII, decomposition });
        }
    }
    Err(Error::Internal("disconnected (2,2)-uniform matroid matches no clause".into()))
}

/// Parallel classes of the non-loop elements.
fn parallel_classes(m: &Matroid) -> Vec<Mask> {
    let mut seen = m.loops();
    let mut out = Vec::new();
    for e in mask::elements(m.ground()) {
        if seen & mask::single(e) != 0 {
            continue;
        }
        let class = m.closure(mask::single(e)) & !m.loops();
        seen |= class;
        out.push(class);
    }
    out
}

fn rank_three_small_classes(m: &Matroid) -> bool {
    m.rank() == 3 && parallel_classes(m).iter().all(|&c| mask::size(c) <= 2)
}

/// First applicable clause for a connected, not 3-connected, (2,2)-uniform
/// matroid.
pub fn classify_connected_not3_22(m: &Matroid) -> Result<StructureClass> {
    if !m.is_connected() {
        return Err(Error::Precondition("matroid is disconnected".into()));
    }
    if m.is_3connected()? {
        return Err(Error::Precondition("matroid is 3-connected".into()));
    }
    require_22(m)?;
    if let Some(dual) = paving_side(m)? {
        return Ok(StructureClass { clause: Clause::CI, decomposition: Decomposition::Paving { dual } });
    }
    let d = m.dual()?;
    for (side, dual) in [(m, false), (&d, true)] {
        if rank_three_small_classes(side) {
            return Ok(StructureClass { clause: Clause::CII, decomposition: Decomposition::RankThree { dual } });
        }
    }
    let n = m.len();
    for p in 0..n {
        for q in 0..n {
            if p == q {
                continue;
            }
            let pair = mask::single(p) | mask::single(q);
            let parallel = m.rank_of(pair) == 1;
            let series = d.rank_of(pair) == 1;
            if !(parallel || series) {
                continue;
            }
            if is_sparse_paving(&m.delete(mask::single(p))?.contract(mask::single(if q > p { q - 1 } else { q }))?)? {
                let decomposition = Decomposition::PairMinor { p, q, series: !parallel };
                return Ok(StructureClass { clause: Clause::CIII, decomposition });
            }
        }
    }
    if let Some(triangle) = find_u24_connection(m)? {
        let decomposition = Decomposition::ParallelConnection { triangle };
        return Ok(StructureClass { clause: Clause::CIV, decomposition });
    }
    Err(Error::Internal("connected (2,2)-uniform matroid matches no clause".into()))
}

/// Looks for a triangle T = {t1, t2, t3} with λ(T) = 1 such that
/// N = M/t1\t2 (basepoint t3) is connected, N/p and N*/p are paving, and
/// P(N, U(2,4))\p rebuilds M.
fn find_u24_connection(m: &Matroid) -> Result<Option<[usize; 3]>> {
    let g = m.ground();
    for t in mask::subsets_of_size(g, 3) {
        if !m.is_triangle(t) || m.lambda(t) != 1 || mask::size(g) < 5 {
            continue;
        }
        let ts: Vec<usize> = mask::elements(t).collect();
        for i in 0..3 {
            let t3 = ts[i];
            let others: Vec<usize> = ts.iter().copied().filter(|&x| x != t3).collect();
            let (t1, t2) = (others[0], others[1]);
            if rebuilds_from_u24(m, t1, t2, t3)? {
                return Ok(Some([t1, t2, t3]));
            }
        }
    }
    Ok(None)
}

/// Index of `e` in the ground set left after removing the elements of `gone`.
fn reindex(e: usize, gone: Mask) -> usize {
    e - mask::size(gone & (mask::single(e) - 1))
}

fn rebuilds_from_u24(m: &Matroid, t1: usize, t2: usize, t3: usize) -> Result<bool> {
    let n = m.contract(mask::single(t1))?.delete(mask::single(reindex(t2, mask::single(t1))))?;
    let gone = mask::single(t1) | mask::single(t2);
    let p = reindex(t3, gone);
    let np = mask::single(p);
    if !n.is_connected() || !is_paving(&n.contract(np)?)? || !is_paving(&n.dual()?.contract(np)?)? {
        return Ok(false);
    }
    let u24 = Matroid::from_rank_fn(4, |x| mask::size(x).min(2), None)?;
    let pc = n.parallel_connection(p, &u24, 0)?;
    let rebuilt = pc.delete(np)?;
    // rebuilt: E(N) - p in order, then the three U(2,4) elements
    let mut map: Vec<usize> = mask::elements(m.ground() & !(gone | mask::single(t3))).collect();
    map.extend([t1, t2, t3]);
    Ok(rebuilt.rank_preserving_under(m, &map, 20_000))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::gf::{FieldSpec, GfMatrix};
    use crate::graph::Graph;

    fn uniform(r: usize, n: usize) -> Matroid {
        Matroid::from_rank_fn(n, |x| mask::size(x).min(r), None).unwrap()
    }

    fn fano() -> Matroid {
        Matroid::linear(GfMatrix::parse("2 3 7\n1 0 0 0 1 1 1\n0 1 0 1 0 1 1\n0 0 1 1 1 0 1\n").unwrap(), None).unwrap()
    }

    fn both(m: &Matroid, k: usize, l: usize) -> bool {
        let a = is_kl_uniform_flats(m, kl(k, l)).unwrap();
        let b = is_kl_uniform_minor(m, kl(k, l)).unwrap();
        assert_eq!(a.uniform, b.uniform);
        for w in [a.witness, b.witness].into_iter().flatten() {
            assert!(w.verify(m, kl(k, l)));
        }
        a.uniform
    }

    #[test]
    fn basic_verdicts() {
        assert!(both(&uniform(3, 6), 1, 1));
        assert!(both(&fano(), 2, 1));
        assert!(!both(&fano(), 1, 1));
        // two loops beside a rank-2 free matroid
        let m = uniform(2, 2).direct_sum(&uniform(0, 2)).unwrap();
        assert!(!both(&m, 2, 2));
        let w = is_kl_uniform_minor(&m, kl(2, 2)).unwrap().witness.unwrap();
        assert_eq!(w, UniformityWitness::Minor(MinorSpec { contract: 0, delete: 0 }));
        let f = is_kl_uniform_flats(&m, kl(2, 2)).unwrap().witness.unwrap();
        assert_eq!(f, UniformityWitness::Flat(m.loops()));
        // k above the rank is vacuous
        assert!(both(&uniform(1, 4), 2, 1));
    }

    #[test]
    fn circuit_pairs() {
        let w3 = Matroid::graphic(Graph::wheel(3), None).unwrap();
        let two = w3.direct_sum(&w3).unwrap();
        assert!(!is_22_uniform_circuits(&two).unwrap());
        assert!(!both(&two, 2, 2));
        assert!(is_22_uniform_circuits(&uniform(4, 4)).unwrap());
        assert!(is_22_uniform_circuits(&w3).unwrap());
    }

    #[test]
    fn paving_and_simple() {
        assert!(is_paving(&uniform(1, 5)).unwrap());
        assert!(is_sparse_paving(&fano()).unwrap());
        assert!(simple_iff_uniform_check(&fano()).unwrap());
        assert!(!simple_iff_uniform_check(&uniform(1, 2).direct_sum(&uniform(1, 1)).unwrap()).unwrap());
        assert!(simple_iff_uniform_check(&uniform(1, 2)).is_err());
    }

    #[test]
    fn frontier() {
        assert_eq!(minimal_kl_frontier(&uniform(2, 5), 3, 3).unwrap(), vec![kl(1, 1)]);
        // Fano is paving and its dual is paving
        assert_eq!(minimal_kl_frontier(&fano(), 3, 3).unwrap(), vec![kl(1, 2), kl(2, 1)]);
        let m = uniform(2, 2).direct_sum(&uniform(0, 2)).unwrap();
        let f = minimal_kl_frontier(&m, 3, 3).unwrap();
        assert!(!f.contains(&kl(2, 2)));
        assert!(f.contains(&kl(3, 1)));
    }

    #[test]
    fn disconnected_clauses() {
        let f7 = fano();
        let c = classify_disconnected_22(&f7.direct_sum(&uniform(0, 1)).unwrap()).unwrap();
        assert_eq!(c.clause, Clause::DII);
        let ag: Vec<u64> = (1u64..16).filter(|v| v.count_ones() % 2 == 1).collect();
        let ag32 = Matroid::binary(4, &ag, None).unwrap();
        let m = ag32.direct_sum(&uniform(1, 2)).unwrap();
        let c = classify_disconnected_22(&m).unwrap();
        assert!(c.verify(&m).unwrap());
        assert_eq!(c.clause, Clause::DIII);
        assert_eq!(c.decomposition, Decomposition::ParallelComponent { pair: 0b11 << 8 });
        let c = classify_disconnected_22(&uniform(1, 1).direct_sum(&uniform(1, 1)).unwrap()).unwrap();
        assert_eq!(c.clause, Clause::DI);
        assert!(classify_disconnected_22(&f7).is_err());
    }

    #[test]
    fn connected_clauses() {
        // Fano with one element doubled
        let f = Matroid::binary(3, &[1, 2, 4, 3, 5, 6, 7, 7], None).unwrap();
        assert_eq!(classify_connected_not3_22(&f).unwrap().clause, Clause::CII);
        // P(M(K4), U(2,4)) \ p is not binary and falls under the last clause
        let k4 = Matroid::graphic(Graph::complete(4), None).unwrap();
        let pc = k4.parallel_connection(0, &uniform(2, 4), 0).unwrap().delete(1).unwrap();
        assert_eq!(pc.len(), 8);
        assert!(!pc.is_binary());
        let c = classify_connected_not3_22(&pc).unwrap();
        assert_eq!(c.clause, Clause::CIV);
        assert!(c.verify(&pc).unwrap());
        let wrong = StructureClass { clause: Clause::CIII, decomposition: Decomposition::PairMinor { p: 0, q: 1, series: false } };
        assert!(!wrong.verify(&pc).unwrap());
        assert!(classify_connected_not3_22(&fano()).is_err());
    }

    #[test]
    fn ternary_u24_has_expected_flats() {
        let f3 = FieldSpec::new(3).unwrap();
        let m = Matroid::linear(GfMatrix::from_rows(f3, &[vec![1, 0, 1, 1], vec![0, 1, 1, 2]]).unwrap(), None).unwrap();
        assert!(both(&m, 1, 1));
        assert!(!both(&m.direct_sum(&uniform(0, 1)).unwrap(), 2, 1));
    }
}
