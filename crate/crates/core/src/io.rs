//! Text formats: `q r n` matrices and `graph V E` graphs with an optional
//! `gamma` line for grafts.

use crate::error::{Error, Result};
use crate::gf::{FieldSpec, GfMatrix};
use crate::graph::Graph;
use crate::mask;
use crate::matroid::{Backend, Matroid};

/// Parses either text format, choosing by the first token.
pub fn parse_matroid(text: &str) -> Result<Matroid> {
    let first = text
        .lines()
        .map(str::trim)
        .find(|l| !l.is_empty() && !l.starts_with('#'))
        .and_then(|l| l.split_whitespace().next());
    match first {
        Some("graph") => {
            let (g, gamma) = Graph::parse(text)?;
            match gamma {
                Some(gamma) => Matroid::graft(g, gamma, None),
                None => Matroid::graphic(g, None),
            }
        }
        _ => Matroid::linear(GfMatrix::parse(text)?, None),
    }
}

/// Writes `m` in a text format: graphs and grafts as graphs, everything
/// else as a matrix. Non-binary rank tables are exported only when they
/// are uniform, through a Vandermonde matrix.
pub fn to_text(m: &Matroid) -> Result<String> {
    match m.backend() {
        Backend::Graphic(g) => Ok(g.to_text(None)),
        Backend::Graft { graph, gamma, .. } => Ok(graph.to_text(Some(gamma))),
        Backend::Linear { matrix, .. } => Ok(matrix.to_text()),
        Backend::RankTable(_) => {
            if let Some(a) = m.binary_representation() {
                return Ok(a.to_text());
            }
            let (r, n) = (m.rank(), m.len());
            if (0..=n).all(|k| mask::subsets_of_size(m.ground(), k).into_iter().all(|x| m.rank_of(x) == k.min(r))) {
                return Ok(uniform_representation(r, n)?.to_text());
            }
            Err(Error::Precondition("no matrix or graph representation is known for this matroid".into()))
        }
    }
}

/// A matrix for U(r, n) over the smallest supported field with n <= q + 1.
pub fn uniform_representation(r: usize, n: usize) -> Result<GfMatrix> {
    if r > n {
        return Err(Error::RankOutOfRange { k: r, rank: n });
    }
    for q in [2u32, 3, 4, 5, 7] {
        let f = FieldSpec::new(q)?;
        if r >= 2 && r < n && n > q as usize + 1 {
            continue;
        }
        let mut a = GfMatrix::zeros(f.clone(), r, n)?;
        if r == n || r <= 1 {
            for j in 0..n {
                if r == n {
                    a.set(j, j, 1);
                } else if r == 1 {
                    a.set(0, j, 1);
                }
            }
        } else {
            // columns (1, x, ..., x^(r-1)) for field elements x, then (0, ..., 0, 1)
            for j in 0..n {
                if j == q as usize {
                    a.set(r - 1, j, 1);
                    continue;
                }
                let x = j as u8;
                let mut p = 1u8;
                for i in 0..r {
                    a.set(i, j, p);
                    p = f.mul(p, x);
                }
            }
        }
        return Ok(a);
    }
    Err(Error::Precondition(format!("U({r},{n}) needs a field with at least {} elements", n - 1)))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::catalog::{self, lookup};

    #[test]
    fn catalog_round_trips() {
        for e in catalog::entries().unwrap() {
            let text = to_text(&e.matroid).unwrap();
            let back = parse_matroid(&text).unwrap();
            assert!(back.same_rank_function(&e.matroid, 4096), "{}", e.name);
        }
    }

    #[test]
    fn uniform_matrices() {
        for (r, n) in [(0, 3), (1, 4), (2, 4), (3, 6), (2, 8), (4, 4), (3, 8)] {
            let m = Matroid::linear(uniform_representation(r, n).unwrap(), None).unwrap();
            assert!(m.same_rank_function(&catalog::uniform(r, n).unwrap(), 4096), "U({r},{n})");
        }
        assert!(uniform_representation(2, 9).is_err());
    }

    #[test]
    fn graft_text() {
        let m = parse_matroid("graph 3 3\n0 1\n1 2\n0 2\ngamma 0 1\n").unwrap();
        assert_eq!((m.len(), m.rank()), (4, 2));
        assert!(to_text(&m).unwrap().ends_with("gamma 0 1\n"));
        let u24 = lookup("U24").unwrap();
        assert!(to_text(&u24).unwrap().starts_with("3 2 4"));
    }
}
