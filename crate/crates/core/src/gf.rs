//! Arithmetic over the small fields GF(2), GF(3), GF(4), GF(5), GF(7) and the
//! dense linear algebra the rest of the crate is built on.
//!
//! Elements are stored as `u8` in `0..q`. For GF(4) the encoding is
//! `0, 1, 2 = w, 3 = w + 1` with `w^2 = w + 1`.

use std::fmt;

use crate::error::{Error, Result};
use crate::mask::{self, Mask};

#[derive(Clone, PartialEq, Eq)]
pub struct FieldSpec {
    q: u8,
    p: u8,
    add: Vec<u8>,
    mul: Vec<u8>,
    neg: Vec<u8>,
    inv: Vec<u8>,
}

impl fmt::Debug for FieldSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "GF({})", self.q)
    }
}

impl FieldSpec {
    pub fn new(q: u32) -> Result<Self> {
        let (q, p) = match q {
            2 | 3 | 5 | 7 => (q as u8, q as u8),
            4 => (4, 2),
            _ => return Err(Error::UnsupportedField(q)),
        };
        let n = q as usize;
        let mut add = vec![0u8; n * n];
        let mut mul = vec![0u8; n * n];
        for a in 0..n {
            for b in 0..n {
                if q == 4 {
                    add[a * n + b] = (a ^ b) as u8;
                    mul[a * n + b] = gf4_mul(a as u8, b as u8);
                } else {
                    add[a * n + b] = ((a + b) % n) as u8;
                    mul[a * n + b] = ((a * b) % n) as u8;
                }
            }
        }
        let mut neg = vec![0u8; n];
        let mut inv = vec![0u8; n];
        for a in 0..n {
            for b in 0..n {
                if add[a * n + b] == 0 {
                    neg[a] = b as u8;
                }
                if mul[a * n + b] == 1 {
                    inv[a] = b as u8;
                }
            }
        }
        Ok(FieldSpec { q, p, add, mul, neg, inv })
    }

    pub fn binary() -> Self {
        FieldSpec::new(2).expect("GF(2) is supported")
    }

    #[inline]
    pub fn order(&self) -> u8 {
        self.q
    }

    #[inline]
    pub fn characteristic(&self) -> u8 {
        self.p
    }

    #[inline]
    pub fn is_binary(&self) -> bool {
        self.q == 2
    }

    #[inline]
    pub fn add(&self, a: u8, b: u8) -> u8 {
        self.add[a as usize * self.q as usize + b as usize]
    }

    #[inline]
    pub fn mul(&self, a: u8, b: u8) -> u8 {
        self.mul[a as usize * self.q as usize + b as usize]
    }

    #[inline]
    pub fn neg(&self, a: u8) -> u8 {
        self.neg[a as usize]
    }

    #[inline]
    pub fn sub(&self, a: u8, b: u8) -> u8 {
        self.add(a, self.neg(b))
    }

    /// Multiplicative inverse. `inv(0)` is 0.
    #[inline]
    pub fn inv(&self, a: u8) -> u8 {
        self.inv[a as usize]
    }
}

fn gf4_mul(a: u8, b: u8) -> u8 {
    // polynomials over GF(2) modulo x^2 + x + 1
    let mut r = 0u8;
    for i in 0..2 {
        if b >> i & 1 == 1 {
            r ^= a << i;
        }
    }
    if r & 0b100 != 0 {
        r ^= 0b111;
    }
    r
}

/// Dense matrix over a small finite field, at most 64 x 64.
#[derive(Clone, PartialEq, Eq)]
pub struct GfMatrix {
    field: FieldSpec,
    rows: usize,
    cols: usize,
    data: Vec<u8>,
}

impl fmt::Debug for GfMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.to_text())
    }
}

impl GfMatrix {
    pub fn zeros(field: FieldSpec, rows: usize, cols: usize) -> Result<Self> {
        if rows > 64 || cols > 64 {
            return Err(Error::MatrixTooLarge { rows, cols });
        }
        Ok(GfMatrix { field, rows, cols, data: vec![0; rows * cols] })
    }

    pub fn identity(field: FieldSpec, n: usize) -> Result<Self> {
        let mut m = GfMatrix::zeros(field, n, n)?;
        for i in 0..n {
            m.set(i, i, 1);
        }
        Ok(m)
    }

    pub fn from_rows(field: FieldSpec, rows: &[Vec<u8>]) -> Result<Self> {
        let r = rows.len();
        let c = rows.first().map_or(0, Vec::len);
        let mut m = GfMatrix::zeros(field, r, c)?;
        for (i, row) in rows.iter().enumerate() {
            if row.len() != c {
                return Err(Error::Precondition(format!(
                    "row {i} has {} entries, expected {c}",
                    row.len()
                )));
            }
            for (j, &v) in row.iter().enumerate() {
                if v >= m.field.q {
                    return Err(Error::EntryOutOfRange { value: v as u32, q: m.field.q });
                }
                m.set(i, j, v);
            }
        }
        Ok(m)
    }

    /// Builds a GF(2) matrix with `rows` rows from column bit masks (bit `i` = row `i`).
    pub fn from_binary_columns(rows: usize, cols: &[u64]) -> Result<Self> {
        let mut m = GfMatrix::zeros(FieldSpec::binary(), rows, cols.len())?;
        for (j, &c) in cols.iter().enumerate() {
            if rows < 64 && c >> rows != 0 {
                return Err(Error::Precondition(format!("column {j} has bits beyond row {rows}")));
            }
            for i in 0..rows {
                m.set(i, j, (c >> i & 1) as u8);
            }
        }
        Ok(m)
    }

    #[inline]
    pub fn field(&self) -> &FieldSpec {
        &self.field
    }

    #[inline]
    pub fn rows(&self) -> usize {
        self.rows
    }

    #[inline]
    pub fn cols(&self) -> usize {
        self.cols
    }

    #[inline]
    pub fn get(&self, i: usize, j: usize) -> u8 {
        self.data[i * self.cols + j]
    }

    #[inline]
    pub fn set(&mut self, i: usize, j: usize, v: u8) {
        self.data[i * self.cols + j] = v;
    }

    pub fn row(&self, i: usize) -> &[u8] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    pub fn column(&self, j: usize) -> Vec<u8> {
        (0..self.rows).map(|i| self.get(i, j)).collect()
    }

    pub fn transpose(&self) -> GfMatrix {
        let mut t = GfMatrix {
            field: self.field.clone(),
            rows: self.cols,
            cols: self.rows,
            data: vec![0; self.data.len()],
        };
        for i in 0..self.rows {
            for j in 0..self.cols {
                t.set(j, i, self.get(i, j));
            }
        }
        t
    }

    /// Columns of a GF(2) matrix as bit masks (bit `i` = row `i`).
    pub fn binary_columns(&self) -> Option<Vec<u64>> {
        if !self.field.is_binary() {
            return None;
        }
        Some(
            (0..self.cols)
                .map(|j| (0..self.rows).fold(0u64, |acc, i| acc | (self.get(i, j) as u64) << i))
                .collect(),
        )
    }

    pub fn select_columns(&self, cols: &[usize]) -> GfMatrix {
        let mut m = GfMatrix {
            field: self.field.clone(),
            rows: self.rows,
            cols: cols.len(),
            data: vec![0; self.rows * cols.len()],
        };
        for i in 0..self.rows {
            for (jj, &j) in cols.iter().enumerate() {
                m.set(i, jj, self.get(i, j));
            }
        }
        m
    }

    pub fn select_rows(&self, rows: &[usize]) -> GfMatrix {
        let mut data = Vec::with_capacity(rows.len() * self.cols);
        for &i in rows {
            data.extend_from_slice(self.row(i));
        }
        GfMatrix { field: self.field.clone(), rows: rows.len(), cols: self.cols, data }
    }

    fn swap_rows(&mut self, a: usize, b: usize) {
        if a != b {
            for j in 0..self.cols {
                self.data.swap(a * self.cols + j, b * self.cols + j);
            }
        }
    }

    fn scale_row(&mut self, i: usize, s: u8) {
        for j in 0..self.cols {
            let v = self.field.mul(self.get(i, j), s);
            self.set(i, j, v);
        }
    }

    /// row[target] -= factor * row[source]
    fn eliminate(&mut self, target: usize, source: usize, factor: u8) {
        if factor == 0 {
            return;
        }
        for j in 0..self.cols {
            let v = self.field.sub(self.get(target, j), self.field.mul(factor, self.get(source, j)));
            self.set(target, j, v);
        }
    }

    /// Pivots on column `col` using a row at index `>= first_row`. Returns the
    /// pivot row if the column had a nonzero entry there.
    pub(crate) fn pivot_on(&mut self, col: usize, first_row: usize) -> Option<usize> {
        let p = (first_row..self.rows).find(|&i| self.get(i, col) != 0)?;
        self.swap_rows(p, first_row);
        let inv = self.field.inv(self.get(first_row, col));
        self.scale_row(first_row, inv);
        for i in 0..self.rows {
            if i != first_row {
                let f = self.get(i, col);
                self.eliminate(i, first_row, f);
            }
        }
        Some(first_row)
    }

    /// Reduced row-echelon form, rank and pivot columns.
    pub fn rref(&self) -> (GfMatrix, usize, Vec<usize>) {
        let mut m = self.clone();
        let mut pivots = Vec::new();
        let mut row = 0;
        for col in 0..m.cols {
            if row == m.rows {
                break;
            }
            if m.pivot_on(col, row).is_some() {
                pivots.push(col);
                row += 1;
            }
        }
        (m, row, pivots)
    }

    pub fn rank(&self) -> usize {
        match self.binary_columns() {
            Some(cols) => binary_rank(cols.iter().copied()),
            None => self.rref().1,
        }
    }

    /// Rank of the columns selected by `s`.
    pub fn rank_of_columns(&self, s: Mask) -> Result<usize> {
        if self.cols < 64 && s >> self.cols != 0 {
            return Err(Error::MaskOutOfRange { mask: s, n: self.cols });
        }
        if s == 0 {
            return Ok(0);
        }
        if self.field.is_binary() {
            let cols = self.binary_columns().unwrap_or_default();
            return Ok(binary_rank(mask::elements(s).map(|j| cols[j])));
        }
        let cols: Vec<usize> = mask::elements(s).collect();
        Ok(self.select_columns(&cols).rref().1)
    }

    /// Basis of `{x : self * x = 0}`.
    pub fn null_space(&self) -> Vec<Vec<u8>> {
        let (r, rank, pivots) = self.rref();
        let f = &self.field;
        let mut is_pivot = vec![None; self.cols];
        for (i, &p) in pivots.iter().enumerate() {
            is_pivot[p] = Some(i);
        }
        let mut basis = Vec::with_capacity(self.cols - rank);
        for free in 0..self.cols {
            if is_pivot[free].is_some() {
                continue;
            }
            let mut v = vec![0u8; self.cols];
            v[free] = 1;
            for (i, &p) in pivots.iter().enumerate() {
                v[p] = f.neg(r.get(i, free));
            }
            basis.push(v);
        }
        basis
    }

    /// `self * x` for a column vector `x`.
    pub fn mul_vec(&self, x: &[u8]) -> Vec<u8> {
        let f = &self.field;
        (0..self.rows)
            .map(|i| (0..self.cols).fold(0u8, |acc, j| f.add(acc, f.mul(self.get(i, j), x[j]))))
            .collect()
    }

    /// Parses the text format: `q r n` then `r` lines of `n` digits.
    pub fn parse(text: &str) -> Result<Self> {
        let mut lines = text
            .lines()
            .enumerate()
            .map(|(i, l)| (i + 1, l.trim()))
            .filter(|(_, l)| !l.is_empty() && !l.starts_with('#'));
        let (ln, header) = lines.next().ok_or(Error::Parse { line: 1, msg: "empty input".into() })?;
        let nums = parse_numbers(ln, header)?;
        if nums.len() != 3 {
            return Err(Error::Parse { line: ln, msg: "header must be `q r n`".into() });
        }
        let field = FieldSpec::new(nums[0]).map_err(|e| Error::Parse { line: ln, msg: e.to_string() })?;
        let (r, n) = (nums[1] as usize, nums[2] as usize);
        let mut rows = Vec::with_capacity(r);
        for _ in 0..r {
            let (ln, l) = lines.next().ok_or(Error::Parse { line: ln, msg: format!("expected {r} rows") })?;
            let row = parse_numbers(ln, l)?;
            if row.len() != n {
                return Err(Error::Parse { line: ln, msg: format!("expected {n} entries, found {}", row.len()) });
            }
            if let Some(&bad) = row.iter().find(|&&v| v >= field.order() as u32) {
                return Err(Error::Parse { line: ln, msg: format!("entry {bad} out of range for GF({})", field.order()) });
            }
            rows.push(row.into_iter().map(|v| v as u8).collect());
        }
        if let Some((ln, _)) = lines.next() {
            return Err(Error::Parse { line: ln, msg: "trailing data after matrix".into() });
        }
        if r == 0 {
            return GfMatrix::zeros(field, 0, n);
        }
        GfMatrix::from_rows(field, &rows)
    }

    pub fn to_text(&self) -> String {
        let mut s = format!("{} {} {}\n", self.field.q, self.rows, self.cols);
        for i in 0..self.rows {
            let row: Vec<String> = self.row(i).iter().map(|v| v.to_string()).collect();
            s.push_str(&row.join(" "));
            s.push('\n');
        }
        s
    }
}

fn parse_numbers(line: usize, s: &str) -> Result<Vec<u32>> {
    s.split_whitespace()
        .map(|t| t.parse::<u32>().map_err(|_| Error::Parse { line, msg: format!("bad number `{t}`") }))
        .collect()
}

/// Rank of a set of GF(2) vectors given as bit masks.
#[inline]
pub fn binary_rank<I: IntoIterator<Item = u64>>(vectors: I) -> usize {
    let mut basis = [0u64; 64];
    let mut rank = 0;
    for v in vectors {
        let mut x = v;
        while x != 0 {
            let top = 63 - x.leading_zeros() as usize;
            if basis[top] == 0 {
                basis[top] = x;
                rank += 1;
                break;
            }
            x ^= basis[top];
        }
    }
    rank
}

/// One representative per 1-dimensional subspace of GF(q)^r, normalized so
/// the leading nonzero entry is 1, in lexicographic order.
pub fn projective_points(r: usize, field: &FieldSpec) -> Result<Vec<Vec<u8>>> {
    if r == 0 {
        return Err(Error::ZeroRank);
    }
    let q = field.order() as u64;
    let total = q.checked_pow(r as u32).filter(|&t| t <= 1 << 24).ok_or(Error::TooLarge {
        n: r,
        limit: 24,
        what: "projective point enumeration",
    })?;
    let mut out = Vec::with_capacity(((total - 1) / (q - 1)) as usize);
    for code in 0..total {
        // first coordinate most significant
        let mut v = vec![0u8; r];
        let mut c = code;
        for i in (0..r).rev() {
            v[i] = (c % q) as u8;
            c /= q;
        }
        if v.iter().find(|&&x| x != 0) == Some(&1) {
            out.push(v);
        }
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p10() -> GfMatrix {
        GfMatrix::parse(
            "2 5 10\n\
             1 0 0 0 0 1 0 0 1 1\n\
             0 1 0 0 0 1 1 0 0 1\n\
             0 0 1 0 0 0 1 1 0 1\n\
             0 0 0 1 0 0 0 1 1 0\n\
             0 0 0 0 1 1 1 1 0 0\n",
        )
        .unwrap()
    }

    #[test]
    fn field_axioms_hold_exhaustively() {
        for q in [2, 3, 4, 5, 7] {
            let f = FieldSpec::new(q).unwrap();
            let n = f.order();
            for a in 0..n {
                assert_eq!(f.add(a, 0), a);
                assert_eq!(f.mul(a, 1), a);
                assert_eq!(f.add(a, f.neg(a)), 0);
                if a != 0 {
                    assert_eq!(f.mul(a, f.inv(a)), 1, "q={q} a={a}");
                }
                for b in 0..n {
                    assert_eq!(f.add(a, b), f.add(b, a));
                    assert_eq!(f.mul(a, b), f.mul(b, a));
                    for c in 0..n {
                        assert_eq!(f.add(f.add(a, b), c), f.add(a, f.add(b, c)));
                        assert_eq!(f.mul(f.mul(a, b), c), f.mul(a, f.mul(b, c)));
                        assert_eq!(f.mul(a, f.add(b, c)), f.add(f.mul(a, b), f.mul(a, c)));
                    }
                }
            }
        }
        assert_eq!(FieldSpec::new(4).unwrap().characteristic(), 2);
        assert!(FieldSpec::new(6).is_err());
        assert!(FieldSpec::new(8).is_err());
    }

    #[test]
    fn rref_examples() {
        let (_, r, _) = p10().rref();
        assert_eq!(r, 5);
        let z = GfMatrix::zeros(FieldSpec::binary(), 3, 4).unwrap();
        assert_eq!(z.rref().1, 0);
        let id = GfMatrix::identity(FieldSpec::new(3).unwrap(), 4).unwrap();
        let (m, r, piv) = id.rref();
        assert_eq!((r, piv), (4, vec![0, 1, 2, 3]));
        assert_eq!(m, id);
    }

    #[test]
    fn rank_of_columns_examples() {
        let m = p10();
        assert_eq!(m.rank_of_columns(0).unwrap(), 0);
        assert!(m.rank_of_columns(1 << 10).is_err());
        let mk33 = GfMatrix::parse(
            "2 5 9\n1 0 0 0 0 1 0 0 1\n0 1 0 0 0 1 1 0 0\n0 0 1 0 0 0 1 1 0\n0 0 0 1 0 0 0 1 1\n1 1 1 1 1 1 1 1 1\n",
        )
        .unwrap();
        assert_eq!(mk33.rank_of_columns(0b11111).unwrap(), 5);
        let p9 = GfMatrix::parse(
            "2 4 9\n1 0 0 0 1 0 0 1 1\n0 1 0 0 1 1 0 0 1\n0 0 1 0 0 1 1 0 1\n0 0 0 1 0 0 1 1 0\n",
        )
        .unwrap();
        // labels 1, 4, 8 are columns 0, 3, 7
        assert_eq!(p9.rank_of_columns(0b1000_1001).unwrap(), 2);
    }

    #[test]
    fn null_space_examples() {
        let id = GfMatrix::identity(FieldSpec::new(5).unwrap(), 3).unwrap();
        assert!(id.null_space().is_empty());
        let ones = GfMatrix::parse("2 1 3\n1 1 1\n").unwrap();
        let ns = ones.null_space();
        assert_eq!(ns.len(), 2);
        assert!(ns.iter().all(|v| v.iter().filter(|&&x| x == 1).count() % 2 == 0));
    }

    #[test]
    fn p10_kernel_matches_brute_force() {
        let m = p10();
        let cols = m.binary_columns().unwrap();
        // brute-force kernel over GF(2)^10
        let kernel = (0u32..1 << 10)
            .filter(|&x| (0..10).filter(|&j| x >> j & 1 == 1).fold(0u64, |a, j| a ^ cols[j]) == 0)
            .count();
        assert_eq!(kernel, 32);
        let ns = m.null_space();
        assert_eq!(ns.len(), 5);
        for v in &ns {
            assert!(m.mul_vec(v).iter().all(|&x| x == 0));
        }
    }

    #[test]
    fn projective_point_counts() {
        let f2 = FieldSpec::binary();
        assert_eq!(projective_points(5, &f2).unwrap().len(), 31);
        // direct count of nonzero vectors in GF(2)^4
        let nonzero = (1u32..16).count();
        assert_eq!(projective_points(4, &f2).unwrap().len(), nonzero);
        for q in [2, 3, 4, 5, 7] {
            let f = FieldSpec::new(q).unwrap();
            assert_eq!(projective_points(1, &f).unwrap().len(), 1);
        }
        assert_eq!(projective_points(0, &f2), Err(Error::ZeroRank));
    }

    #[test]
    fn projective_points_pairwise_independent() {
        for q in [2u32, 3, 4, 5, 7] {
            let f = FieldSpec::new(q).unwrap();
            for r in 1..=3 {
                let pts = projective_points(r, &f).unwrap();
                let qq = q as usize;
                assert_eq!(pts.len(), (qq.pow(r as u32) - 1) / (qq - 1));
                for (a, pa) in pts.iter().enumerate() {
                    for pb in pts.iter().skip(a + 1) {
                        for s in 1..f.order() {
                            let scaled: Vec<u8> = pa.iter().map(|&x| f.mul(x, s)).collect();
                            assert_ne!(&scaled, pb);
                        }
                    }
                }
                assert!(pts.windows(2).all(|w| w[0] < w[1]));
            }
        }
    }

    #[test]
    fn text_round_trip_gf4() {
        let text = "4 2 3\n1 2 3\n0 1 2\n";
        let m = GfMatrix::parse(text).unwrap();
        assert_eq!(m.to_text(), text);
        assert!(GfMatrix::parse("4 1 2\n1 4\n").is_err());
        assert!(GfMatrix::parse("2 2 2\n1 0\n").is_err());
    }
}
