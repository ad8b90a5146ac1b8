//! Matroids as rank oracles over a labelled ground set of at most 64 elements.
//!
//! Four backends share one interface: vector matroids of a [`GfMatrix`],
//! precomputed rank tables, cycle matroids of graphs, and graft matroids.

mod connectivity;
mod ops;

use std::collections::HashSet;

use crate::error::{Error, Result};
use crate::gf::{binary_rank, GfMatrix};
use crate::graph::Graph;
use crate::mask::{self, Mask};

/// Largest ground set a [`Backend::RankTable`] may cover.
pub const TABLE_LIMIT: usize = 25;
/// Largest ground set for which full circuit enumeration runs without a size cap.
pub const CIRCUIT_LIMIT: usize = 20;
/// Largest ground set for brute-force connectivity.
pub const CONNECTIVITY_LIMIT: usize = 25;

#[derive(Clone, Debug)]
pub enum Backend {
    /// Element `i` is column `i`. `binary` caches the columns as bit masks over GF(2).
    Linear { matrix: GfMatrix, binary: Option<Vec<u64>> },
    /// `table[X]` is the rank of subset `X`.
    RankTable(Vec<u8>),
    /// Element `i` is edge `i`.
    Graphic(Graph),
    /// Elements are the edges followed by one element for the coloured set.
    Graft { graph: Graph, gamma: Vec<usize>, columns: Vec<u64> },
}

#[derive(Clone, Debug)]
pub struct Matroid {
    labels: Vec<String>,
    backend: Backend,
    rank: usize,
}

/// A minor `M / contract \ delete`, in the element indices of `M`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, serde::Serialize, serde::Deserialize)]
pub struct MinorSpec {
    pub contract: Mask,
    pub delete: Mask,
}

pub(crate) fn default_labels(n: usize) -> Vec<String> {
    (1..=n).map(|i| i.to_string()).collect()
}

impl Matroid {
    fn build(labels: Vec<String>, backend: Backend) -> Matroid {
        let mut m = Matroid { labels, backend, rank: 0 };
        m.rank = m.rank_of(m.ground());
        m
    }

    fn check_labels(n: usize, labels: &Option<Vec<String>>) -> Result<()> {
        if n > 64 {
            return Err(Error::TooLarge { n, limit: 64, what: "ground set" });
        }
        match labels {
            Some(l) if l.len() != n => {
                Err(Error::Precondition(format!("{} labels for {n} elements", l.len())))
            }
            Some(l) if l.iter().collect::<HashSet<_>>().len() != n => {
                Err(Error::Precondition("duplicate element labels".into()))
            }
            _ => Ok(()),
        }
    }

    /// Vector matroid of the columns of `matrix`. Labels default to `1..=n`.
    pub fn linear(matrix: GfMatrix, labels: Option<Vec<String>>) -> Result<Matroid> {
        Self::check_labels(matrix.cols(), &labels)?;
        let labels = labels.unwrap_or_else(|| default_labels(matrix.cols()));
        let binary = matrix.binary_columns();
        Ok(Self::build(labels, Backend::Linear { matrix, binary }))
    }

    /// Binary matroid from column bit masks (bit `i` = row `i`).
    pub fn binary(rows: usize, columns: &[u64], labels: Option<Vec<String>>) -> Result<Matroid> {
        Self::linear(GfMatrix::from_binary_columns(rows, columns)?, labels)
    }

    /// Builds a rank table from a table of `2^n` ranks.
    pub fn from_rank_table(n: usize, table: Vec<u8>, labels: Option<Vec<String>>) -> Result<Matroid> {
        if n > TABLE_LIMIT {
            return Err(Error::TooLarge { n, limit: TABLE_LIMIT, what: "rank table" });
        }
        Self::check_labels(n, &labels)?;
        if table.len() != 1 << n {
            return Err(Error::Precondition(format!("rank table has {} entries, expected {}", table.len(), 1u64 << n)));
        }
        let labels = labels.unwrap_or_else(|| default_labels(n));
        Ok(Self::build(labels, Backend::RankTable(table)))
    }

    /// Tabulates an arbitrary rank function.
    pub fn from_rank_fn<F: Fn(Mask) -> usize>(n: usize, f: F, labels: Option<Vec<String>>) -> Result<Matroid> {
        if n > TABLE_LIMIT {
            return Err(Error::TooLarge { n, limit: TABLE_LIMIT, what: "rank table" });
        }
        let table = (0..1u64 << n).map(|x| f(x) as u8).collect();
        Self::from_rank_table(n, table, labels)
    }

    /// Cycle matroid of a graph. Labels default to `1..=|E|`.
    pub fn graphic(graph: Graph, labels: Option<Vec<String>>) -> Result<Matroid> {
        Self::check_labels(graph.edges().len(), &labels)?;
        let labels = labels.unwrap_or_else(|| default_labels(graph.edges().len()));
        Ok(Self::build(labels, Backend::Graphic(graph)))
    }

    /// Graft matroid: the binary matroid of the incidence matrix of `graph`
    /// with the incidence vector of `gamma` adjoined as a final column.
    pub fn graft(graph: Graph, gamma: Vec<usize>, labels: Option<Vec<String>>) -> Result<Matroid> {
        let n = graph.edges().len() + 1;
        Self::check_labels(n, &labels)?;
        if let Some(&v) = gamma.iter().find(|&&v| v >= graph.vertices()) {
            return Err(Error::Precondition(format!("coloured vertex {v} out of range")));
        }
        let mut columns = graph.incidence_columns();
        columns.push(gamma.iter().fold(0u64, |acc, &v| acc ^ (1 << v)));
        let labels = labels.unwrap_or_else(|| {
            let mut l = default_labels(n - 1);
            l.push("g".into());
            l
        });
        Ok(Self::build(labels, Backend::Graft { graph, gamma, columns }))
    }

    #[inline]
    pub fn len(&self) -> usize {
        self.labels.len()
    }

    #[inline]
    pub fn is_empty(&self) -> bool {
        self.labels.is_empty()
    }

    #[inline]
    pub fn ground(&self) -> Mask {
        mask::full(self.len())
    }

    /// r(M).
    #[inline]
    pub fn rank(&self) -> usize {
        self.rank
    }

    /// r*(M) = |E| - r(M).
    #[inline]
    pub fn corank(&self) -> usize {
        self.len() - self.rank
    }

    pub fn labels(&self) -> &[String] {
        &self.labels
    }

    pub fn backend(&self) -> &Backend {
        &self.backend
    }

    pub fn element(&self, label: &str) -> Option<usize> {
        self.labels.iter().position(|l| l == label)
    }

    /// Mask of the elements with the given labels.
    pub fn mask_of(&self, labels: &[&str]) -> Result<Mask> {
        labels.iter().try_fold(0, |acc, l| {
            self.element(l)
                .map(|e| acc | mask::single(e))
                .ok_or_else(|| Error::Precondition(format!("no element labelled `{l}`")))
        })
    }

    pub fn labels_of(&self, x: Mask) -> Vec<&str> {
        mask::elements(x).map(|e| self.labels[e].as_str()).collect()
    }

    pub fn with_labels(mut self, labels: Vec<String>) -> Result<Matroid> {
        let l = Some(labels);
        Self::check_labels(self.len(), &l)?;
        if let Some(l) = l {
            self.labels = l;
        }
        Ok(self)
    }

    pub fn check_mask(&self, x: Mask) -> Result<()> {
        if x & !self.ground() != 0 {
            Err(Error::MaskOutOfRange { mask: x, n: self.len() })
        } else {
            Ok(())
        }
    }

    /// Rank of `x`. Bits outside the ground set must be clear.
    #[inline]
    pub fn rank_of(&self, x: Mask) -> usize {
        debug_assert!(x & !self.ground() == 0);
        match &self.backend {
            Backend::Linear { binary: Some(cols), .. } => binary_rank(mask::elements(x).map(|e| cols[e])),
            Backend::Linear { matrix, .. } => matrix.rank_of_columns(x).unwrap_or(0),
            Backend::RankTable(t) => t[x as usize] as usize,
            Backend::Graphic(g) => g.edge_rank(x),
            Backend::Graft { columns, .. } => binary_rank(mask::elements(x).map(|e| columns[e])),
        }
    }

    /// |X| - r(X).
    #[inline]
    pub fn nullity(&self, x: Mask) -> usize {
        mask::size(x) - self.rank_of(x)
    }

    #[inline]
    pub fn is_independent(&self, x: Mask) -> bool {
        self.rank_of(x) == mask::size(x)
    }

    pub fn closure(&self, x: Mask) -> Mask {
        let r = self.rank_of(x);
        mask::elements(self.ground() & !x).fold(x, |acc, e| {
            if self.rank_of(x | mask::single(e)) == r {
                acc | mask::single(e)
            } else {
                acc
            }
        })
    }

    pub fn is_flat(&self, x: Mask) -> bool {
        self.closure(x) == x
    }

    pub fn loops(&self) -> Mask {
        self.closure(0)
    }

    pub fn coloops(&self) -> Mask {
        let e = self.ground();
        mask::elements(e)
            .filter(|&i| self.rank_of(e & !mask::single(i)) < self.rank)
            .fold(0, |acc, i| acc | mask::single(i))
    }

    /// A basis, chosen greedily in element order.
    pub fn basis(&self) -> Mask {
        self.greedy_basis_of(self.ground())
    }

    /// A maximal independent subset of `x`, chosen greedily in element order.
    pub fn greedy_basis_of(&self, x: Mask) -> Mask {
        let mut b = 0;
        let mut r = 0;
        for e in mask::elements(x) {
            if self.rank_of(b | mask::single(e)) > r {
                b |= mask::single(e);
                r += 1;
            }
        }
        b
    }

    /// Every flat of rank exactly `k`, each once, in increasing mask order.
    pub fn flats_of_rank(&self, k: usize) -> Result<Vec<Mask>> {
        if k > self.rank {
            return Err(Error::RankOutOfRange { k, rank: self.rank });
        }
        let mut level = vec![self.loops()];
        for _ in 0..k {
            let mut next = HashSet::new();
            for &f in &level {
                let mut covered = f;
                for e in mask::elements(self.ground() & !f) {
                    if covered & mask::single(e) != 0 {
                        continue;
                    }
                    let g = self.closure(f | mask::single(e));
                    covered |= g;
                    next.insert(g);
                }
            }
            level = next.into_iter().collect();
        }
        level.sort_unstable();
        Ok(level)
    }

    /// All circuits (minimal dependent sets), optionally only those of size at
    /// most `max_size`. Sorted by size, then mask.
    pub fn circuits(&self, max_size: Option<usize>) -> Result<Vec<Mask>> {
        if max_size.is_none() && self.len() > CIRCUIT_LIMIT {
            return Err(Error::TooLarge { n: self.len(), limit: CIRCUIT_LIMIT, what: "uncapped circuit enumeration" });
        }
        let cap = max_size.unwrap_or(self.rank + 1);
        let mut out = Vec::new();
        self.circuit_dfs(0, 0, 0, cap, &mut out);
        out.sort_unstable_by_key(|&c| (mask::size(c), c));
        Ok(out)
    }

    // Each circuit C is found exactly once: from the independent set C - max(C).
    fn circuit_dfs(&self, indep: Mask, size: usize, start: usize, cap: usize, out: &mut Vec<Mask>) {
        for e in start..self.len() {
            let t = indep | mask::single(e);
            if self.rank_of(t) == size + 1 {
                if size + 2 <= cap {
                    self.circuit_dfs(t, size + 1, e + 1, cap, out);
                }
            } else if size < cap && mask::elements(indep).all(|x| self.rank_of(t & !mask::single(x)) == size) {
                out.push(t);
            }
        }
    }

    /// Exhaustively (n <= 12) or on `samples` random subsets, checks that two
    /// matroids on the same number of elements have the same rank function.
    pub fn same_rank_function(&self, other: &Matroid, samples: usize) -> bool {
        if self.len() != other.len() {
            return false;
        }
        if self.len() <= 12 {
            return (0..1u64 << self.len()).all(|x| self.rank_of(x) == other.rank_of(x));
        }
        use rand::{Rng, SeedableRng};
        let mut rng = rand::rngs::StdRng::seed_from_u64(0x5eed);
        let g = self.ground();
        (0..samples).all(|_| {
            let x = rng.gen::<u64>() & g;
            self.rank_of(x) == other.rank_of(x)
        })
    }

    /// Whether the bijection `map` (element `i` of `self` to element `map[i]`
    /// of `other`) preserves rank: exhaustively for n <= 12, otherwise on
    /// `samples` random subsets plus every set of size at most 3.
    pub fn rank_preserving_under(&self, other: &Matroid, map: &[usize], samples: usize) -> bool {
        let n = self.len();
        if other.len() != n || map.len() != n || self.rank != other.rank {
            return false;
        }
        let image = mask::from_elements(map.iter().copied());
        if image != other.ground() {
            return false;
        }
        let apply = |x: Mask| mask::elements(x).fold(0, |acc, e| acc | mask::single(map[e]));
        let ok = |x: Mask| self.rank_of(x) == other.rank_of(apply(x));
        if n <= 12 {
            return (0..1u64 << n).all(ok);
        }
        use rand::{Rng, SeedableRng};
        let g = self.ground();
        if !(1..=3).all(|k| mask::subsets_of_size(g, k).into_iter().all(ok)) {
            return false;
        }
        let mut rng = rand::rngs::StdRng::seed_from_u64(0xb17e);
        (0..samples).all(|_| ok(rng.gen::<u64>() & g))
    }

    /// Verifies normalization, unit increase and submodularity: exhaustively
    /// for n <= 10, otherwise on `samples` random (X, Y) pairs.
    pub fn check_rank_axioms(&self, samples: usize) -> bool {
        if self.rank_of(0) != 0 {
            return false;
        }
        let n = self.len();
        let g = self.ground();
        let check = |x: Mask, y: Mask| {
            let (rx, ry) = (self.rank_of(x), self.rank_of(y));
            let (ru, ri) = (self.rank_of(x | y), self.rank_of(x & y));
            if ru + ri > rx + ry || rx > mask::size(x) {
                return false;
            }
            mask::elements(g & !x).take(2).all(|e| {
                let r = self.rank_of(x | mask::single(e));
                r == rx || r == rx + 1
            })
        };
        if n <= 10 {
            (0..1u64 << n).all(|x| (0..1u64 << n).step_by(7).all(|y| check(x, y)) && check(x, g))
        } else {
            use rand::{Rng, SeedableRng};
            let mut rng = rand::rngs::StdRng::seed_from_u64(0xa81);
            (0..samples).all(|_| check(rng.gen::<u64>() & g, rng.gen::<u64>() & g))
        }
    }

    /// Materializes the rank function as a table.
    pub fn to_rank_table(&self) -> Result<Matroid> {
        Matroid::from_rank_fn(self.len(), |x| self.rank_of(x), Some(self.labels.clone()))
    }

    pub fn is_linear_over_gf2(&self) -> bool {
        matches!(self.backend, Backend::Linear { binary: Some(_), .. } | Backend::Graft { .. } | Backend::Graphic(_))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::gf::FieldSpec;

    pub(crate) fn fano() -> Matroid {
        let m = GfMatrix::parse("2 3 7\n1 0 0 0 1 1 1\n0 1 0 1 0 1 1\n0 0 1 1 1 0 1\n").unwrap();
        Matroid::linear(m, None).unwrap()
    }

    fn uniform(r: usize, n: usize) -> Matroid {
        Matroid::from_rank_fn(n, |x| mask::size(x).min(r), None).unwrap()
    }

    /// Brute-force flats: subsets X with cl(X) = X, checked element by element.
    fn brute_flats(m: &Matroid, k: usize) -> Vec<Mask> {
        (0..1u64 << m.len())
            .filter(|&x| m.rank_of(x) == k)
            .filter(|&x| mask::elements(m.ground() & !x).all(|e| m.rank_of(x | mask::single(e)) > k))
            .collect()
    }

    /// Brute-force circuits: dependent sets all of whose proper subsets are independent.
    fn brute_circuits(m: &Matroid) -> Vec<Mask> {
        let mut v: Vec<Mask> = (1..1u64 << m.len())
            .filter(|&x| !m.is_independent(x))
            .filter(|&x| mask::elements(x).all(|e| m.is_independent(x & !mask::single(e))))
            .collect();
        v.sort_unstable_by_key(|&c| (mask::size(c), c));
        v
    }

    #[test]
    fn fano_basics() {
        let f = fano();
        assert_eq!(f.rank(), 3);
        assert_eq!(f.rank_of(0), 0);
        assert_eq!(f.nullity(f.ground()), 4);
        let hyperplanes = f.flats_of_rank(2).unwrap();
        assert_eq!(hyperplanes, brute_flats(&f, 2));
        assert_eq!(hyperplanes.len(), 7);
        let circuits = f.circuits(None).unwrap();
        assert_eq!(circuits, brute_circuits(&f));
        assert_eq!(circuits.iter().filter(|&&c| mask::size(c) == 3).count(), 7);
        assert_eq!(f.flats_of_rank(3).unwrap(), vec![f.ground()]);
        assert!(f.flats_of_rank(4).is_err());
    }

    #[test]
    fn uniform_flats_and_circuits() {
        let u34 = uniform(3, 4);
        assert_eq!(u34.flats_of_rank(2).unwrap().len(), 6);
        assert!(u34.flats_of_rank(2).unwrap().iter().all(|&f| mask::size(f) == 2));
        assert!(uniform(3, 3).circuits(None).unwrap().is_empty());
        let loops = uniform(0, 3);
        assert_eq!(loops.circuits(None).unwrap(), vec![1, 2, 4]);
        assert_eq!(loops.loops(), 0b111);
    }

    #[test]
    fn closure_examples() {
        let f = fano();
        assert_eq!(f.closure(0), 0);
        assert_eq!(f.closure(f.basis()), f.ground());
        let x = 0b11;
        assert_eq!(f.closure(f.closure(x)), f.closure(x));
    }

    #[test]
    fn capped_circuits_and_limits() {
        let f = fano();
        let small = f.circuits(Some(3)).unwrap();
        assert_eq!(small.len(), 7);
        let big = Matroid::from_rank_fn(21, |x| mask::size(x).min(1), None).unwrap();
        assert!(big.circuits(None).is_err());
        assert_eq!(big.circuits(Some(2)).unwrap().len(), 210);
    }

    #[test]
    fn rank_axioms_on_small_matroids() {
        assert!(fano().check_rank_axioms(1000));
        assert!(uniform(2, 5).check_rank_axioms(1000));
        let bad = Matroid::from_rank_fn(3, |x| if x == 0b111 { 1 } else { mask::size(x).min(2) }, None).unwrap();
        assert!(!bad.check_rank_axioms(1000));
    }

    #[test]
    fn ternary_rank() {
        let f3 = FieldSpec::new(3).unwrap();
        let m = GfMatrix::from_rows(f3, &[vec![1, 0, 1, 1], vec![0, 1, 1, 2]]).unwrap();
        let u24 = Matroid::linear(m, None).unwrap();
        for x in 0..16u64 {
            assert_eq!(u24.rank_of(x), mask::size(x).min(2));
        }
    }

    #[test]
    fn labels_and_masks() {
        let f = fano();
        assert_eq!(f.mask_of(&["1", "3"]).unwrap(), 0b101);
        assert!(f.mask_of(&["9"]).is_err());
        assert_eq!(f.labels_of(0b110), vec!["2", "3"]);
        assert!(f.check_mask(1 << 7).is_err());
        assert!(Matroid::linear(GfMatrix::identity(FieldSpec::binary(), 2).unwrap(), Some(vec!["a".into(), "a".into()])).is_err());
    }
}
