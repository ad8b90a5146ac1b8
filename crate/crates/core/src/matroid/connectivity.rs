use super::{Matroid, CIRCUIT_LIMIT, CONNECTIVITY_LIMIT};
use crate::error::{Error, Result};
use crate::gf::binary_rank;
use crate::mask::{self, Mask};

impl Matroid {
    /// No loops and no parallel pairs.
    pub fn is_simple(&self) -> bool {
        if self.loops() != 0 {
            return false;
        }
        let n = self.len();
        (0..n).all(|a| (a + 1..n).all(|b| self.rank_of(mask::single(a) | mask::single(b)) == 2))
    }

    /// No coloops and no series pairs, i.e. the dual is simple.
    pub fn is_cosimple(&self) -> bool {
        if self.coloops() != 0 {
            return false;
        }
        let (n, g, r) = (self.len(), self.ground(), self.rank);
        (0..n).all(|a| (a + 1..n).all(|b| self.rank_of(g & !(mask::single(a) | mask::single(b))) == r))
    }

    /// Connectivity function λ(X) = r(X) + r(E - X) - r(M).
    pub fn lambda(&self, x: Mask) -> usize {
        self.rank_of(x) + self.rank_of(self.ground() & !x) - self.rank
    }

    /// Connected components, as masks ordered by least element. Uses the
    /// fundamental-circuit graph of a basis; loops and coloops are singletons.
    pub fn components(&self) -> Vec<Mask> {
        let n = self.len();
        let b = self.basis();
        let r = self.rank;
        let mut parent: Vec<usize> = (0..n).collect();
        fn find(p: &mut [usize], mut a: usize) -> usize {
            while p[a] != a {
                p[a] = p[p[a]];
                a = p[a];
            }
            a
        }
        for e in mask::elements(self.ground() & !b) {
            for x in mask::elements(b) {
                if self.rank_of((b & !mask::single(x)) | mask::single(e)) == r {
                    let (u, v) = (find(&mut parent, e), find(&mut parent, x));
                    parent[u] = v;
                }
            }
        }
        let mut comps: Vec<Mask> = Vec::new();
        let mut root_of = vec![usize::MAX; n];
        for e in 0..n {
            let root = find(&mut parent, e);
            if root_of[root] == usize::MAX {
                root_of[root] = comps.len();
                comps.push(0);
            }
            comps[root_of[root]] |= mask::single(e);
        }
        comps
    }

    pub fn is_connected(&self) -> bool {
        self.components().len() <= 1
    }

    /// Brute-force Tutte 3-connectivity: connected, and every partition with
    /// both sides of size at least 2 has λ >= 2.
    pub fn is_3connected(&self) -> Result<bool> {
        let n = self.len();
        if n > CONNECTIVITY_LIMIT {
            return Err(Error::TooLarge { n, limit: CONNECTIVITY_LIMIT, what: "3-connectivity check" });
        }
        if !self.is_connected() {
            return Ok(false);
        }
        if n < 4 {
            return Ok(true);
        }
        // λ is symmetric, so fix element 0 on the X side
        let g = self.ground();
        for rest in 0..1u64 << (n - 1) {
            let x = (rest << 1) | 1;
            let s = mask::size(x);
            if s >= 2 && n - s >= 2 && self.lambda(x & g) < 2 {
                return Ok(false);
            }
        }
        Ok(true)
    }

    /// Whether a binary matroid is affine. Computed twice: every circuit has
    /// even size, and the all-ones vector lies in the row space of a
    /// representation. The two must agree; the circuit route is skipped
    /// above the circuit enumeration limit.
    pub fn is_binary_affine(&self) -> Result<bool> {
        let a = self.binary_representation().ok_or(Error::NotBinary)?;
        let n = a.cols();
        let rows: Vec<u64> = (0..a.rows())
            .map(|i| a.row(i).iter().enumerate().fold(0u64, |acc, (j, &v)| acc | (v as u64) << j))
            .collect();
        let r = binary_rank(rows.iter().copied());
        let by_rows = binary_rank(rows.iter().copied().chain([mask::full(n)])) == r;
        if self.loops() != 0 {
            // a loop is an odd circuit; the row test also fails on a zero column
            debug_assert!(!by_rows);
        }
        if n <= CIRCUIT_LIMIT {
            let by_circuits = self.circuits(None)?.iter().all(|&c| mask::size(c).is_multiple_of(2));
            if by_circuits != by_rows {
                return Err(Error::Internal(format!(
                    "affine tests disagree: circuits={by_circuits} rows={by_rows}"
                )));
            }
        }
        Ok(by_rows)
    }
}

#[cfg(test)]
mod tests {
    use crate::gf::GfMatrix;
    use crate::graph::Graph;
    use crate::mask;
    use crate::matroid::Matroid;

    fn uniform(r: usize, n: usize) -> Matroid {
        Matroid::from_rank_fn(n, |x| mask::size(x).min(r), None).unwrap()
    }

    #[test]
    fn simplicity() {
        assert!(!uniform(1, 2).is_simple());
        // U(1,3) has a parallel class of size 3, but its dual U(2,3) is simple
        assert!(!uniform(1, 3).is_simple());
        assert!(uniform(1, 3).is_cosimple());
        assert!(!uniform(2, 3).is_cosimple());
        assert_eq!(uniform(1, 3).dual().unwrap().is_cosimple(), uniform(1, 3).is_simple());
        assert!(uniform(2, 4).is_simple() && uniform(2, 4).is_cosimple());
    }

    #[test]
    fn lambda_is_symmetric() {
        let w = Matroid::graphic(Graph::wheel(4), None).unwrap();
        assert_eq!(w.lambda(0), 0);
        for x in 0..1u64 << 8 {
            assert_eq!(w.lambda(x), w.lambda(w.ground() & !x));
        }
    }

    #[test]
    fn connectivity() {
        let w4 = Matroid::graphic(Graph::wheel(4), None).unwrap();
        assert!(w4.is_3connected().unwrap());
        let split = w4.direct_sum(&uniform(0, 1)).unwrap();
        assert!(!split.is_connected());
        assert_eq!(split.components().len(), 2);
        assert!(!split.is_3connected().unwrap());
        // a 4-cycle is connected but not 3-connected
        let c4 = Matroid::graphic(Graph::new(4, vec![(0, 1), (1, 2), (2, 3), (3, 0)]).unwrap(), None).unwrap();
        assert!(c4.is_connected());
        assert!(!c4.is_3connected().unwrap());
        assert!(uniform(1, 3).is_3connected().unwrap());
    }

    #[test]
    fn affine() {
        let fano = Matroid::linear(GfMatrix::parse("2 3 7\n1 0 0 0 1 1 1\n0 1 0 1 0 1 1\n0 0 1 1 1 0 1\n").unwrap(), None).unwrap();
        assert!(!fano.is_binary_affine().unwrap());
        // AG(3,2): the odd-weight vectors of GF(2)^4
        let cols: Vec<u64> = (1u64..16).filter(|v| v.count_ones() % 2 == 1).collect();
        let ag32 = Matroid::binary(4, &cols, None).unwrap();
        assert!(ag32.is_binary_affine().unwrap());
        assert!(uniform(2, 4).is_binary_affine().is_err());
    }
}
