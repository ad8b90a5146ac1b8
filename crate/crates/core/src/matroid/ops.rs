use std::collections::HashSet;

use super::{Backend, Matroid, CIRCUIT_LIMIT, TABLE_LIMIT};
use crate::error::{Error, Result};
use crate::gf::{FieldSpec, GfMatrix};
use crate::mask::{self, Mask};

fn disjoint_labels(left: &[String], right: &[String]) -> Vec<String> {
    let mut taken: HashSet<String> = left.iter().cloned().collect();
    right
        .iter()
        .map(|l| {
            let mut l = l.clone();
            while taken.contains(&l) {
                l.push('\'');
            }
            taken.insert(l.clone());
            l
        })
        .collect()
}

impl Matroid {
    /// The dual matroid, r*(X) = |X| + r(E - X) - r(E), on the same labels.
    pub fn dual(&self) -> Result<Matroid> {
        match &self.backend {
            Backend::Linear { matrix, .. } => {
                let (r, rank, pivots) = matrix.rref();
                let f = matrix.field().clone();
                let n = matrix.cols();
                let free: Vec<usize> = (0..n).filter(|j| !pivots.contains(j)).collect();
                let mut d = GfMatrix::zeros(f.clone(), n - rank, n)?;
                for (t, &j) in free.iter().enumerate() {
                    d.set(t, j, 1);
                    for (i, &p) in pivots.iter().enumerate() {
                        d.set(t, p, f.neg(r.get(i, j)));
                    }
                }
                Matroid::linear(d, Some(self.labels.clone()))
            }
            _ => {
                let g = self.ground();
                let r = self.rank;
                Matroid::from_rank_fn(
                    self.len(),
                    |x| mask::size(x) + self.rank_of(g & !x) - r,
                    Some(self.labels.clone()),
                )
            }
        }
    }

    /// M \ D.
    pub fn delete(&self, d: Mask) -> Result<Matroid> {
        self.check_mask(d)?;
        if d == 0 {
            return Ok(self.clone());
        }
        let keep = self.ground() & !d;
        let labels: Vec<String> = mask::elements(keep).map(|e| self.labels[e].clone()).collect();
        let kept: Vec<usize> = mask::elements(keep).collect();
        match &self.backend {
            Backend::Linear { matrix, .. } => Matroid::linear(matrix.select_columns(&kept), Some(labels)),
            Backend::Graphic(g) => Matroid::graphic(g.delete_edges(d), Some(labels)),
            Backend::Graft { graph, gamma, .. } => {
                let gamma_elem = graph.edges().len();
                let edge_d = d & !mask::single(gamma_elem);
                if d & mask::single(gamma_elem) != 0 {
                    Matroid::graphic(graph.delete_edges(edge_d), Some(labels))
                } else {
                    Matroid::graft(graph.delete_edges(edge_d), gamma.clone(), Some(labels))
                }
            }
            Backend::RankTable(t) => Matroid::from_rank_fn(
                kept.len(),
                |y| t[mask::expand(y, keep) as usize] as usize,
                Some(labels),
            ),
        }
    }

    /// M / C, with r_{M/C}(X) = r(X ∪ C) - r(C).
    pub fn contract(&self, c: Mask) -> Result<Matroid> {
        self.check_mask(c)?;
        if c == 0 {
            return Ok(self.clone());
        }
        let keep = self.ground() & !c;
        let labels: Vec<String> = mask::elements(keep).map(|e| self.labels[e].clone()).collect();
        let kept: Vec<usize> = mask::elements(keep).collect();
        match &self.backend {
            Backend::Linear { matrix, .. } => {
                let mut m = matrix.clone();
                let mut row = 0;
                for e in mask::elements(self.greedy_basis_of(c)) {
                    if m.pivot_on(e, row).is_some() {
                        row += 1;
                    }
                }
                let rows: Vec<usize> = (row..m.rows()).collect();
                Matroid::linear(m.select_rows(&rows).select_columns(&kept), Some(labels))
            }
            Backend::Graphic(g) => Matroid::graphic(g.contract_edges(c).0, Some(labels)),
            Backend::Graft { .. } => self.binary_matroid()?.contract(c),
            Backend::RankTable(t) => {
                let rc = t[c as usize] as usize;
                Matroid::from_rank_fn(
                    kept.len(),
                    |y| t[(mask::expand(y, keep) | c) as usize] as usize - rc,
                    Some(labels),
                )
            }
        }
    }

    /// M / C \ D, both given in the indices of `self`.
    pub fn minor(&self, spec: super::MinorSpec) -> Result<Matroid> {
        if spec.contract & spec.delete != 0 {
            return Err(Error::Precondition("contract and delete sets overlap".into()));
        }
        let after = self.delete(spec.delete)?;
        after.contract(mask::compress(spec.contract, self.ground() & !spec.delete))
    }

    /// Restriction M | X.
    pub fn restrict(&self, x: Mask) -> Result<Matroid> {
        self.delete(self.ground() & !x)
    }

    /// Direct sum; clashing labels of `other` get primes appended.
    pub fn direct_sum(&self, other: &Matroid) -> Result<Matroid> {
        let (n1, n2) = (self.len(), other.len());
        let mut labels = self.labels.clone();
        labels.extend(disjoint_labels(&self.labels, &other.labels));
        if let (Backend::Linear { matrix: a, .. }, Backend::Linear { matrix: b, .. }) = (&self.backend, &other.backend) {
            if a.field() == b.field() {
                let mut m = GfMatrix::zeros(a.field().clone(), a.rows() + b.rows(), n1 + n2)?;
                for i in 0..a.rows() {
                    for j in 0..n1 {
                        m.set(i, j, a.get(i, j));
                    }
                }
                for i in 0..b.rows() {
                    for j in 0..n2 {
                        m.set(a.rows() + i, n1 + j, b.get(i, j));
                    }
                }
                return Matroid::linear(m, Some(labels));
            }
        }
        let m1 = mask::full(n1);
        Matroid::from_rank_fn(n1 + n2, |x| self.rank_of(x & m1) + other.rank_of(x >> n1), Some(labels))
    }

    /// Parallel connection across basepoints `p1` of `self` and `p2` of
    /// `other`. The ground set is `E1` followed by `E2 - p2`; the basepoint
    /// keeps its label from `self`. The result is a rank table built from the
    /// circuit family C1 ∪ C2 ∪ {(C1 - p) ∪ (C2 - p)}.
    pub fn parallel_connection(&self, p1: usize, other: &Matroid, p2: usize) -> Result<Matroid> {
        for (m, p) in [(self, p1), (other, p2)] {
            if p >= m.len() {
                return Err(Error::Precondition(format!("basepoint {p} out of range")));
            }
            if m.loops() & mask::single(p) != 0 || m.coloops() & mask::single(p) != 0 {
                return Err(Error::BadBasepoint(p));
            }
        }
        let (n1, n2) = (self.len(), other.len());
        let n = n1 + n2 - 1;
        if n > TABLE_LIMIT {
            return Err(Error::TooLarge { n, limit: TABLE_LIMIT, what: "parallel connection" });
        }
        let map2 = |x: Mask| -> Mask {
            mask::elements(x).fold(0, |acc, e| {
                acc | match e.cmp(&p2) {
                    std::cmp::Ordering::Equal => mask::single(p1),
                    std::cmp::Ordering::Less => mask::single(n1 + e),
                    std::cmp::Ordering::Greater => mask::single(n1 + e - 1),
                }
            })
        };
        let c1 = self.circuits(None)?;
        let c2: Vec<Mask> = other.circuits(None)?.into_iter().map(map2).collect();
        let bp = mask::single(p1);
        let mut family: Vec<Mask> = c1.clone();
        family.extend(&c2);
        for &a in c1.iter().filter(|&&a| a & bp != 0) {
            for &b in c2.iter().filter(|&&b| b & bp != 0) {
                family.push((a | b) & !bp);
            }
        }
        let mut labels = self.labels.clone();
        let rest: Vec<String> = other
            .labels
            .iter()
            .enumerate()
            .filter(|&(i, _)| i != p2)
            .map(|(_, l)| l.clone())
            .collect();
        labels.extend(disjoint_labels(&self.labels, &rest));
        Matroid::from_rank_table(n, rank_table_from_circuits(n, &family), Some(labels))
    }

    /// Binary 3-sum across the triangle `t1` of `self` identified elementwise
    /// with the triangle `t2` of `other`. The result lives on
    /// `(E1 - T) ∪ (E2 - T)` and its cycle space is the set of `C1 Δ C2`
    /// for cycles `Ci` of `Mi` agreeing on `T`.
    pub fn binary_three_sum(&self, t1: [usize; 3], other: &Matroid, t2: [usize; 3]) -> Result<Matroid> {
        let a1 = self.binary_matrix().ok_or(Error::NotBinary)?;
        let a2 = other.binary_matrix().ok_or(Error::NotBinary)?;
        for (m, t) in [(self, t1), (other, t2)] {
            if m.len() < 7 {
                return Err(Error::Precondition("3-sum needs at least 7 elements on each side".into()));
            }
            let tm = mask::from_elements(t);
            if mask::size(tm) != 3 || tm & !m.ground() != 0 || !m.is_triangle(tm) {
                return Err(Error::Precondition(format!("{:?} is not a triangle", m.labels_of(tm))));
            }
        }
        let (n1, n2) = (self.len(), other.len());
        let rest1: Vec<usize> = (0..n1).filter(|e| !t1.contains(e)).collect();
        let rest2: Vec<usize> = (0..n2).filter(|e| !t2.contains(e)).collect();
        let n = rest1.len() + rest2.len();
        if n > 64 {
            return Err(Error::TooLarge { n, limit: 64, what: "3-sum" });
        }
        // coordinates: rest1, rest2, then the three triangle positions on top
        let tbit = |i: usize| 1u128 << (n + i);
        let mut gens: Vec<u128> = Vec::new();
        for z in a1.null_space() {
            let mut v = 0u128;
            for (pos, &e) in rest1.iter().enumerate() {
                v |= (z[e] as u128) << pos;
            }
            for (i, &e) in t1.iter().enumerate() {
                if z[e] == 1 {
                    v |= tbit(i);
                }
            }
            gens.push(v);
        }
        for z in a2.null_space() {
            let mut v = 0u128;
            for (pos, &e) in rest2.iter().enumerate() {
                v |= (z[e] as u128) << (rest1.len() + pos);
            }
            for (i, &e) in t2.iter().enumerate() {
                if z[e] == 1 {
                    v |= tbit(i);
                }
            }
            gens.push(v);
        }
        // echelon basis keyed by highest bit; vectors leading below the
        // triangle coordinates span the cycles that avoid T
        let mut basis = [0u128; 128];
        for g in gens {
            let mut x = g;
            while x != 0 {
                let top = 127 - x.leading_zeros() as usize;
                if basis[top] == 0 {
                    basis[top] = x;
                    break;
                }
                x ^= basis[top];
            }
        }
        let cycles: Vec<Vec<u8>> = basis[..n]
            .iter()
            .filter(|&&v| v != 0)
            .map(|&v| (0..n).map(|j| (v >> j & 1) as u8).collect())
            .collect();
        let rep_rows = if cycles.is_empty() {
            (0..n).map(|i| (0..n).map(|j| (i == j) as u8).collect()).collect()
        } else {
            GfMatrix::from_rows(FieldSpec::binary(), &cycles)?.null_space()
        };
        let rep = if rep_rows.is_empty() {
            GfMatrix::zeros(FieldSpec::binary(), 0, n)?
        } else {
            GfMatrix::from_rows(FieldSpec::binary(), &rep_rows)?
        };
        let mut labels: Vec<String> = rest1.iter().map(|&e| self.labels[e].clone()).collect();
        let l2: Vec<String> = rest2.iter().map(|&e| other.labels[e].clone()).collect();
        labels.extend(disjoint_labels(&labels.clone(), &l2));
        Matroid::linear(rep, Some(labels))
    }

    pub fn is_triangle(&self, t: Mask) -> bool {
        mask::size(t) == 3 && self.rank_of(t) == 2 && mask::elements(t).all(|e| self.rank_of(t & !mask::single(e)) == 2)
    }

    /// A GF(2) representation when the backend already carries one.
    pub fn binary_matrix(&self) -> Option<GfMatrix> {
        match &self.backend {
            Backend::Linear { matrix, binary: Some(_) } => Some(matrix.clone()),
            Backend::Graphic(g) => GfMatrix::from_binary_columns(g.vertices(), &g.incidence_columns()).ok(),
            Backend::Graft { graph, columns, .. } => GfMatrix::from_binary_columns(graph.vertices(), columns).ok(),
            _ => None,
        }
    }

    /// Same matroid with a [`Backend::Linear`] GF(2) backend, if binary.
    pub fn binary_matroid(&self) -> Result<Matroid> {
        if let Backend::Linear { binary: Some(_), .. } = self.backend {
            return Ok(self.clone());
        }
        let m = self.binary_representation().ok_or(Error::NotBinary)?;
        Matroid::linear(m, Some(self.labels.clone()))
    }

    /// Finds a GF(2) representation from the rank oracle alone: the standard
    /// form [I | A] with A read off fundamental circuits, then verified
    /// against the oracle (exhaustively for n <= 20, sampled above).
    pub fn binary_representation(&self) -> Option<GfMatrix> {
        if let Some(m) = self.binary_matrix() {
            return Some(m);
        }
        let b = self.basis();
        let basis: Vec<usize> = mask::elements(b).collect();
        let r = basis.len();
        let mut cols = vec![0u64; self.len()];
        for (i, &e) in basis.iter().enumerate() {
            cols[e] = 1 << i;
        }
        for e in mask::elements(self.ground() & !b) {
            cols[e] = basis
                .iter()
                .enumerate()
                .filter(|&(_, &x)| self.rank_of((b & !mask::single(x)) | mask::single(e)) == r)
                .fold(0u64, |acc, (i, _)| acc | 1 << i);
        }
        let m = GfMatrix::from_binary_columns(r, &cols).ok()?;
        let cand = Matroid::linear(m.clone(), None).ok()?;
        let ok = if self.len() <= CIRCUIT_LIMIT {
            (0..1u64 << self.len()).all(|x| self.rank_of(x) == cand.rank_of(x))
        } else {
            self.same_rank_function(&cand, 20_000)
        };
        ok.then_some(m)
    }

    pub fn is_binary(&self) -> bool {
        self.binary_representation().is_some()
    }
}

/// Rank table of the matroid on `n` elements whose dependent sets are the
/// supersets of members of `circuits`.
pub(crate) fn rank_table_from_circuits(n: usize, circuits: &[Mask]) -> Vec<u8> {
    let size = 1usize << n;
    let mut dependent = vec![false; size];
    for &c in circuits {
        dependent[c as usize] = true;
    }
    let mut rank = vec![0u8; size];
    for x in 1..size {
        let xm = x as Mask;
        if !dependent[x] {
            dependent[x] = mask::elements(xm).any(|e| dependent[x & !(1 << e)]);
        }
        rank[x] = if dependent[x] {
            mask::elements(xm).map(|e| rank[x & !(1 << e)]).max().unwrap_or(0)
        } else {
            mask::size(xm) as u8
        };
    }
    rank
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::Graph;
    use crate::matroid::MinorSpec;

    fn uniform(r: usize, n: usize) -> Matroid {
        Matroid::from_rank_fn(n, |x| mask::size(x).min(r), None).unwrap()
    }

    fn fano() -> Matroid {
        Matroid::linear(GfMatrix::parse("2 3 7\n1 0 0 0 1 1 1\n0 1 0 1 0 1 1\n0 0 1 1 1 0 1\n").unwrap(), None).unwrap()
    }

    #[test]
    fn dual_rank_formula_all_backends() {
        let ms = [
            fano(),
            uniform(2, 5),
            Matroid::graphic(Graph::wheel(3), None).unwrap(),
            Matroid::graft(Graph::complete(4), vec![0, 1], None).unwrap(),
        ];
        for m in &ms {
            let d = m.dual().unwrap();
            assert_eq!(d.rank(), m.len() - m.rank());
            for x in 0..1u64 << m.len() {
                assert_eq!(d.rank_of(x), mask::size(x) + m.rank_of(m.ground() & !x) - m.rank());
            }
            assert!(d.dual().unwrap().same_rank_function(m, 0));
        }
    }

    #[test]
    fn ternary_dual() {
        let f3 = FieldSpec::new(3).unwrap();
        let m = GfMatrix::from_rows(f3, &[vec![1, 0, 1, 1], vec![0, 1, 1, 2]]).unwrap();
        let u24 = Matroid::linear(m, None).unwrap();
        assert!(u24.dual().unwrap().same_rank_function(&uniform(2, 4), 0));
    }

    #[test]
    fn minors_commute_and_match_formula() {
        let f = fano();
        for c in 0..1u64 << 7 {
            let mc = f.contract(c).unwrap();
            let keep = f.ground() & !c;
            for y in 0..1u64 << mc.len() {
                assert_eq!(mc.rank_of(y), f.rank_of(mask::expand(y, keep) | c) - f.rank_of(c));
            }
        }
        let w = Matroid::graphic(Graph::wheel(3), None).unwrap();
        let t = w.to_rank_table().unwrap();
        for (c, d) in [(0b1, 0b10), (0b101, 0b1000), (0b11_0000, 0b1)] {
            let a = w.minor(MinorSpec { contract: c, delete: d }).unwrap();
            let b = w.contract(c).unwrap().delete(mask::compress(d, w.ground() & !c)).unwrap();
            let tt = t.minor(MinorSpec { contract: c, delete: d }).unwrap();
            assert!(a.same_rank_function(&b, 0));
            assert!(a.same_rank_function(&tt, 0));
            assert_eq!(a.labels(), tt.labels());
        }
        assert!(f.contract(0).unwrap().same_rank_function(&f, 0));
    }

    #[test]
    fn direct_sum_examples() {
        let s = uniform(2, 2).direct_sum(&uniform(0, 1)).unwrap();
        assert_eq!(s.rank(), 2);
        assert_eq!(s.loops(), 0b100);
        assert_eq!(s.labels(), ["1", "2", "1'"]);
        let f = fano();
        let e = f.direct_sum(&uniform(0, 0)).unwrap();
        assert!(e.same_rank_function(&f, 0));
        // circuits of a direct sum are the circuits of the parts
        let a = uniform(1, 3);
        let b = uniform(2, 3);
        let sum = a.direct_sum(&b).unwrap();
        let mut expect: Vec<Mask> = a.circuits(None).unwrap();
        expect.extend(b.circuits(None).unwrap().into_iter().map(|c| c << 3));
        expect.sort_unstable_by_key(|&c| (mask::size(c), c));
        assert_eq!(sum.circuits(None).unwrap(), expect);
    }

    #[test]
    fn parallel_connection_examples() {
        let p = uniform(1, 2).parallel_connection(0, &uniform(1, 2), 0).unwrap();
        assert!(p.same_rank_function(&uniform(1, 3), 0));
        let w3 = Matroid::graphic(Graph::wheel(3), None).unwrap();
        let u23 = uniform(2, 3);
        let pc = w3.parallel_connection(0, &u23, 0).unwrap();
        assert_eq!(pc.len(), 8);
        assert_eq!(pc.rank(), w3.rank() + u23.rank() - 1);
        assert!(pc.check_rank_axioms(1000));
        assert!(matches!(uniform(0, 2).parallel_connection(0, &u23, 0), Err(Error::BadBasepoint(0))));
        assert!(matches!(uniform(2, 2).parallel_connection(0, &u23, 0), Err(Error::BadBasepoint(0))));
    }

    #[test]
    fn binary_representation_round_trip() {
        let t = fano().to_rank_table().unwrap();
        let rep = t.binary_representation().unwrap();
        let m = Matroid::linear(rep, None).unwrap();
        assert!(m.same_rank_function(&t, 0));
        assert!(!uniform(2, 4).is_binary());
        assert!(uniform(2, 3).is_binary());
    }
}
