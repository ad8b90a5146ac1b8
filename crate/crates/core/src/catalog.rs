//! Named matroids with fixed element labels, and the list of binary
//! (2,2)-uniform matroids that are not 3-connected.

use crate::binary::{binary_key, BinaryKey};
use crate::error::{Error, Result};
use crate::gf::{projective_points, FieldSpec, GfMatrix};
use crate::graph::Graph;
use crate::mask;
use crate::matroid::Matroid;

pub fn uniform(r: usize, n: usize) -> Result<Matroid> {
    if r > n {
        return Err(Error::RankOutOfRange { k: r, rank: n });
    }
    Matroid::from_rank_fn(n, |x| mask::size(x).min(r), None)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Geometry {
    Projective,
    Affine,
}

/// PG(dim, 2), or AG(dim, 2) as the points of PG(dim, 2) whose last
/// coordinate is 1. Both have rank `dim + 1`.
pub fn geometry(kind: Geometry, dim: usize) -> Result<Matroid> {
    let r = dim + 1;
    if r > 6 {
        return Err(Error::TooLarge { n: r, limit: 6, what: "binary geometry rank" });
    }
    let pts = projective_points(r, &FieldSpec::binary())?;
    let cols: Vec<u64> = pts
        .iter()
        .filter(|v| kind == Geometry::Projective || v[r - 1] == 1)
        .map(|v| v.iter().enumerate().fold(0u64, |acc, (i, &x)| acc | (x as u64) << i))
        .collect();
    Matroid::binary(r, &cols, None)
}

/// The rank-r binary spike Z_r: the columns of [I | J - I | 1], labelled
/// x1..xr, y1..yr and the tip t.
pub fn spike(r: usize) -> Result<Matroid> {
    if !(3..=32).contains(&r) {
        return Err(Error::Precondition(format!("spike rank {r} must be between 3 and 32")));
    }
    let ones = mask::full(r);
    let mut cols: Vec<u64> = (0..r).map(|i| 1u64 << i).collect();
    cols.extend((0..r).map(|i| ones & !(1u64 << i)));
    cols.push(ones);
    let mut labels: Vec<String> = (1..=r).map(|i| format!("x{i}")).collect();
    labels.extend((1..=r).map(|i| format!("y{i}")));
    labels.push("t".into());
    Matroid::binary(r, &cols, Some(labels))
}

/// Z_r \ t, the tipless spike.
pub fn spike_minus_tip(r: usize) -> Result<Matroid> {
    let z = spike(r)?;
    z.delete(mask::single(2 * r))
}

/// Z_r \ y1, a non-tip deletion.
pub fn spike_minus_y(r: usize) -> Result<Matroid> {
    let z = spike(r)?;
    z.delete(mask::single(r))
}

fn from_rows(rows: &[&str], labels: Option<Vec<String>>) -> Matroid {
    let rows: Vec<Vec<u8>> = rows.iter().map(|r| r.bytes().map(|b| b - b'0').collect()).collect();
    let m = GfMatrix::from_rows(FieldSpec::binary(), &rows).expect("literal matrix");
    Matroid::linear(m, labels).expect("literal matrix")
}

const P10_ROWS: [&str; 5] = ["1000010011", "0100011001", "0010001101", "0001000110", "0000111100"];
const P9_ROWS: [&str; 4] = ["100010011", "010011001", "001001101", "000100110"];
const L10_ROWS: [&str; 5] = ["1000010011", "0100011001", "0010001101", "0001000110", "1111111111"];
const MK33_ROWS: [&str; 5] = ["100001001", "010001100", "001000110", "000100011", "111111111"];

fn e_labels(n: usize) -> Vec<String> {
    (1..=n).map(|i| format!("e{i}")).collect()
}

/// The 4 x 9 matrix whose second row ends in `alpha`: M(K5\e) for 0, P9 for 1.
/// Elements are labelled e1..e9.
pub fn matrix_a(alpha: u8) -> Result<Matroid> {
    if alpha > 1 {
        return Err(Error::EntryOutOfRange { value: alpha as u32, q: 2 });
    }
    let row2 = format!("01001100{alpha}");
    Ok(from_rows(&["100010011", &row2, "001001101", "000100110"], Some(e_labels(9))))
}

/// K_{3,3} with top vertices 1, 2, 3 (indices 0..3) and bottom vertices
/// 1', 2', 3' (indices 3..6).
pub fn k33() -> Graph {
    let edges = vec![(0, 3), (3, 1), (1, 4), (4, 2), (2, 5), (5, 0), (0, 4), (3, 2), (1, 5)];
    Graph::new(6, edges).expect("K33")
}

fn k33_labels() -> Vec<String> {
    let name = |v: usize| if v < 3 { format!("{}", v + 1) } else { format!("{}'", v - 2) };
    k33().edges().iter().map(|&(u, v)| format!("{}-{}", name(u), name(v))).collect()
}

/// Graft matroid of K_{3,3} with the given coloured vertices; the graft
/// element is labelled g.
pub fn k33_graft(gamma: &[usize]) -> Result<Matroid> {
    let mut labels = k33_labels();
    labels.push("g".into());
    Matroid::graft(k33(), gamma.to_vec(), Some(labels))
}

/// Graft of the 4-wheel with the hub and three rim vertices coloured.
pub fn w4_graft() -> Result<Matroid> {
    Matroid::graft(Graph::wheel(4), vec![0, 1, 2, 3], None)
}

pub const NAMES: [&str; 13] = ["F7", "F7*", "AG32", "S8", "P9", "P10", "L10", "R10", "MK5e", "MK33", "MK33*", "MW3", "MW4"];

/// The named matroids of [`NAMES`].
pub fn named(name: &str) -> Result<Matroid> {
    Ok(match name {
        "F7" => from_rows(&["1000111", "0101011", "0011101"], None),
        "F7*" => named("F7")?.dual()?,
        "AG32" => geometry(Geometry::Affine, 3)?,
        "S8" => spike_minus_y(4)?,
        "P9" => from_rows(&P9_ROWS, None),
        "P10" => from_rows(&P10_ROWS, None),
        "L10" => from_rows(&L10_ROWS, None),
        "R10" => k33_graft(&[0, 1, 2, 3, 4, 5])?,
        "MK5e" => {
            let g = Graph::complete(5);
            let edges = g.edges()[1..].to_vec();
            Matroid::graphic(Graph::new(5, edges)?, None)?
        }
        "MK33" => from_rows(&MK33_ROWS, None),
        "MK33*" => named("MK33")?.dual()?,
        "MW3" => Matroid::graphic(Graph::wheel(3), None)?,
        "MW4" => Matroid::graphic(Graph::wheel(4), None)?,
        _ => return Err(Error::UnknownName(name.into())),
    })
}

/// Resolves a catalog name: one of [`NAMES`], `U<r>,<n>` (or `U<r><n>` for
/// single digits), `Z<r>`, `Z<r>t`, `Z<r>y`, `AG<d>2`, `PG<d>2`, or any of
/// these followed by `*` for the dual.
pub fn lookup(name: &str) -> Result<Matroid> {
    if let Ok(m) = named(name) {
        return Ok(m);
    }
    if let Some(base) = name.strip_suffix('*') {
        return lookup(base)?.dual();
    }
    let unknown = || Error::UnknownName(name.to_string());
    let num = |s: &str| s.parse::<usize>().map_err(|_| unknown());
    if let Some(rest) = name.strip_prefix('U') {
        let (r, n) = match rest.split_once(',') {
            Some((r, n)) => (num(r)?, num(n)?),
            None if rest.len() == 2 => (num(&rest[..1])?, num(&rest[1..])?),
            None => return Err(unknown()),
        };
        return uniform(r, n);
    }
    if let Some(rest) = name.strip_prefix('Z') {
        return match rest.char_indices().last() {
            Some((i, 't')) => spike_minus_tip(num(&rest[..i])?),
            Some((i, 'y')) => spike_minus_y(num(&rest[..i])?),
            Some(_) => spike(num(rest)?),
            None => Err(unknown()),
        };
    }
    for (prefix, kind) in [("AG", Geometry::Affine), ("PG", Geometry::Projective)] {
        if let Some(rest) = name.strip_prefix(prefix) {
            let d = rest.strip_suffix('2').ok_or_else(unknown)?;
            return geometry(kind, num(d)?);
        }
    }
    Err(unknown())
}

/// A named matroid with the properties it is expected to have.
#[derive(Debug, Clone)]
pub struct CatalogEntry {
    pub name: String,
    pub description: String,
    pub matroid: Matroid,
    pub rank: usize,
    pub size: usize,
    pub simple: bool,
    pub cosimple: bool,
    pub binary: bool,
}

impl CatalogEntry {
    /// Whether the matroid has the declared rank, size, simplicity,
    /// cosimplicity and binarity.
    pub fn check(&self) -> bool {
        let m = &self.matroid;
        m.rank() == self.rank
            && m.len() == self.size
            && m.is_simple() == self.simple
            && m.is_cosimple() == self.cosimple
            && m.is_binary() == self.binary
    }
}

fn entry(name: &str, description: &str, rank: usize, size: usize) -> Result<CatalogEntry> {
    Ok(CatalogEntry {
        name: name.into(),
        description: description.into(),
        matroid: lookup(name)?,
        rank,
        size,
        simple: true,
        cosimple: true,
        binary: true,
    })
}

/// Every named matroid, plus the spikes and geometries used elsewhere.
pub fn entries() -> Result<Vec<CatalogEntry>> {
    let mut out = vec![
        entry("F7", "Fano plane PG(2,2)", 3, 7)?,
        entry("F7*", "dual of the Fano plane", 4, 7)?,
        entry("AG32", "binary affine geometry AG(3,2)", 4, 8)?,
        entry("S8", "non-tip deletion Z4\\y1 of the binary 4-spike", 4, 8)?,
        entry("P9", "simple binary extension of M(W4), from its 4x9 matrix", 4, 9)?,
        entry("P10", "self-dual rank-5 binary matroid, from its 5x10 matrix", 5, 10)?,
        entry("L10", "affine rank-5 extension of M(K33), from its 5x10 matrix", 5, 10)?,
        entry("R10", "graft of K33 with every vertex coloured", 5, 10)?,
        entry("MK5e", "cycle matroid of K5 minus an edge", 4, 9)?,
        entry("MK33", "M(K33), from its 5x9 matrix with an all-ones row", 5, 9)?,
        entry("MK33*", "bond matroid of K33", 4, 9)?,
        entry("MW3", "cycle matroid of the 3-wheel, M(K4)", 3, 6)?,
        entry("MW4", "cycle matroid of the 4-wheel", 4, 8)?,
        entry("AG42", "binary affine geometry AG(4,2)", 5, 16)?,
        entry("AG42*", "dual of AG(4,2)", 11, 16)?,
        entry("PG32", "binary projective geometry PG(3,2)", 4, 15)?,
        entry("PG42", "binary projective geometry PG(4,2)", 5, 31)?,
    ];
    for r in 3..=6 {
        out.push(entry(&format!("Z{r}"), &format!("binary {r}-spike with tip t"), r, 2 * r + 1)?);
        out.push(entry(&format!("Z{r}t"), &format!("tipless binary {r}-spike"), r, 2 * r)?);
        out.push(entry(&format!("Z{r}y"), &format!("binary {r}-spike minus the non-tip y1"), r, 2 * r)?);
    }
    let mut u24 = entry("U24", "four points on a line", 2, 4)?;
    u24.binary = false;
    out.push(u24);
    Ok(out)
}

/// One member of the list of non-3-connected binary (2,2)-uniform matroids.
#[derive(Debug, Clone)]
pub struct FamilyMember {
    /// Item of the list, "i" to "vii".
    pub item: &'static str,
    pub name: String,
    pub matroid: Matroid,
}

/// P(M, U(2,3)) with basepoint `p` of M; the U(2,3) elements are labelled a, b.
pub fn connect_triangle(m: &Matroid, p: usize) -> Result<Matroid> {
    let u23 = uniform(2, 3)?.with_labels(vec!["p".into(), "a".into(), "b".into()])?;
    m.parallel_connection(p, &u23, 0)?.binary_matroid()
}

/// P(M, U(2,3)) \ p.
pub fn connect_triangle_minus_base(m: &Matroid, p: usize) -> Result<Matroid> {
    connect_triangle(m, p)?.delete(mask::single(p))
}

const PAVING_FOUR: [&str; 4] = ["MW3", "F7", "F7*", "AG32"];

/// Explicit members of items (iv) to (vii), with the basepoint of the
/// transitive matroids fixed at their first element and the tip of Z4
/// (and of S8 = Z4\y1) used in item (v).
pub fn cor33_explicit() -> Result<Vec<FamilyMember>> {
    let mut out = Vec::new();
    for name in PAVING_FOUR {
        let mp = named(name)?;
        out.push(FamilyMember { item: "iv", name: format!("{name}+U01"), matroid: mp.direct_sum(&uniform(0, 1)?)?.binary_matroid()? });
        out.push(FamilyMember { item: "iv", name: format!("{name}+U12"), matroid: mp.direct_sum(&uniform(1, 2)?)?.binary_matroid()? });
    }
    let z4 = spike(4)?;
    let s8 = named("S8")?;
    for (name, m) in [("Z4", &z4), ("S8", &s8)] {
        let t = m.element("t").expect("spike tip");
        out.push(FamilyMember { item: "v", name: format!("P({name},U23)\\t"), matroid: connect_triangle_minus_base(m, t)? });
    }
    for name in ["F7", "AG32"] {
        out.push(FamilyMember { item: "vi", name: format!("P({name},U23)\\p"), matroid: connect_triangle_minus_base(&named(name)?, 0)? });
    }
    for name in PAVING_FOUR {
        out.push(FamilyMember { item: "vii", name: format!("P({name},U23)"), matroid: connect_triangle(&named(name)?, 0)? });
    }
    Ok(out)
}

/// Binary matroid with the given parallel-class sizes over the listed
/// vectors of GF(2)^r, plus `loops` loops.
fn with_classes(r: usize, classes: &[(u64, usize)], loops: usize) -> Result<Matroid> {
    let mut cols = Vec::new();
    for &(v, s) in classes {
        cols.extend(std::iter::repeat_n(v, s));
    }
    cols.extend(std::iter::repeat_n(0, loops));
    Matroid::binary(r.max(1), &cols, None)
}

/// Representatives of the low-rank items (i) to (iii) with at most `max_n`
/// elements, deduplicated up to isomorphism.
pub fn cor33_low_rank(max_n: usize) -> Result<Vec<FamilyMember>> {
    let mut out = Vec::new();
    let mut seen = std::collections::HashSet::new();
    let mut push = |item: &'static str, name: String, m: Matroid, out: &mut Vec<FamilyMember>| -> Result<()> {
        if seen.insert(binary_key(&m)?) {
            out.push(FamilyMember { item, name, matroid: m });
        }
        Ok(())
    };
    // (i): rank 0 with at least two loops, rank 1 other than U11, U12, U13
    for n in 2..=max_n {
        push("i", format!("U0,{n}"), uniform(0, n)?.binary_matroid()?, &mut out)?;
    }
    for s in 1..=max_n {
        for z in 0..=max_n - s {
            if z == 0 && s <= 3 {
                continue;
            }
            push("i", format!("U1,{s}+{z} loops"), with_classes(1, &[(1, s)], z)?, &mut out)?;
        }
    }
    // (ii): rank 2, non-simple, at most one loop
    for a in 1..=max_n {
        for b in 1..=a {
            for c in 0..=b {
                for z in 0..=1 {
                    if a + b + c + z > max_n || (a == 1 && z == 0) {
                        continue;
                    }
                    let m = with_classes(2, &[(1, a), (2, b), (3, c)], z)?;
                    push("ii", format!("rank 2 classes {a},{b},{c} + {z} loops"), m, &mut out)?;
                }
            }
        }
    }
    // (iii): rank 3, loopless, non-simple, parallel classes of size at most 2
    for support in 1u32..128 {
        let pts: Vec<u64> = (0..7u64).filter(|i| support >> i & 1 == 1).map(|i| i + 1).collect();
        if crate::gf::binary_rank(pts.iter().copied()) != 3 {
            continue;
        }
        for doubled in 1u32..1 << pts.len() {
            let classes: Vec<(u64, usize)> = pts.iter().enumerate().map(|(i, &v)| (v, 1 + (doubled >> i & 1) as usize)).collect();
            let n: usize = classes.iter().map(|c| c.1).sum();
            if n > max_n {
                continue;
            }
            push("iii", format!("rank 3 support {support:07b} doubled {doubled:b}"), with_classes(3, &classes, 0)?, &mut out)?;
        }
    }
    Ok(out)
}

/// Members of items (i) to (vii) together with all their duals, keyed for
/// isomorphism. Low-rank items are limited to `max_low_n` elements.
pub fn cor33_family(max_low_n: usize) -> Result<Vec<(FamilyMember, BinaryKey)>> {
    let mut base = cor33_low_rank(max_low_n)?;
    base.extend(cor33_explicit()?);
    let mut out = Vec::new();
    let mut seen = std::collections::HashSet::new();
    for m in base {
        let dual = FamilyMember { item: m.item, name: format!("({})*", m.name), matroid: m.matroid.dual()? };
        for x in [m, dual] {
            let key = binary_key(&x.matroid)?;
            if seen.insert(key.clone()) {
                out.push((x, key));
            }
        }
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::binary::PointSet;

    #[test]
    fn declared_properties_hold() {
        for e in entries().unwrap() {
            assert!(e.check(), "{}", e.name);
        }
    }

    #[test]
    fn stored_matrices_verbatim() {
        let p10 = named("P10").unwrap();
        let text = p10.binary_matrix().unwrap().to_text();
        assert_eq!(text.lines().nth(1), Some("1 0 0 0 0 1 0 0 1 1"));
        assert_eq!(text.lines().nth(5), Some("0 0 0 0 1 1 1 1 0 0"));
        let p9 = named("P9").unwrap();
        assert_eq!(p9.binary_matrix().unwrap().to_text().lines().nth(2), Some("0 1 0 0 1 1 0 0 1"));
        assert!(matrix_a(1).unwrap().same_rank_function(&p9, 0));
    }

    #[test]
    fn geometry_sizes() {
        assert_eq!(geometry(Geometry::Projective, 4).unwrap().len(), 31);
        let ag1 = geometry(Geometry::Affine, 1).unwrap();
        assert!(ag1.same_rank_function(&uniform(2, 2).unwrap(), 0));
        let ag = geometry(Geometry::Affine, 4).unwrap();
        assert_eq!((ag.len(), ag.rank()), (16, 5));
        assert!(ag.is_binary_affine().unwrap());
    }

    #[test]
    fn spike_three_is_fano() {
        let z3 = PointSet::from_matroid(&spike(3).unwrap()).unwrap().canonical_form().unwrap().0;
        let f7 = PointSet::from_matroid(&named("F7").unwrap()).unwrap().canonical_form().unwrap().0;
        assert_eq!(z3, f7);
    }

    #[test]
    fn lookup_names() {
        assert_eq!(lookup("U24").unwrap().len(), 4);
        assert_eq!(lookup("U2,10").unwrap().len(), 10);
        assert_eq!(lookup("Z5t").unwrap().len(), 10);
        assert_eq!(lookup("Z12").unwrap().len(), 25);
        assert_eq!(lookup("AG42*").unwrap().rank(), 11);
        assert_eq!(lookup("P10*").unwrap().rank(), 5);
        assert!(lookup("Q7").is_err());
        assert!(lookup("U43").is_err());
    }

    #[test]
    fn matrix_a_gives_k5_minus_edge() {
        let a0 = PointSet::from_matroid(&matrix_a(0).unwrap()).unwrap().canonical_form().unwrap().0;
        let k5e = PointSet::from_matroid(&named("MK5e").unwrap()).unwrap().canonical_form().unwrap().0;
        assert_eq!(a0, k5e);
    }

    #[test]
    fn k33_matrix_matches_graph() {
        let g = Matroid::graphic(k33(), None).unwrap();
        let a = PointSet::from_matroid(&g).unwrap().canonical_form().unwrap().0;
        let b = PointSet::from_matroid(&named("MK33").unwrap()).unwrap().canonical_form().unwrap().0;
        assert_eq!(a, b);
    }
}
