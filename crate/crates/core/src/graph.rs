//! Multigraphs (loops and parallel edges allowed) and their text format.

use crate::error::{Error, Result};
use crate::mask::{self, Mask};

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Graph {
    vertices: usize,
    edges: Vec<(usize, usize)>,
}

impl Graph {
    pub fn new(vertices: usize, edges: Vec<(usize, usize)>) -> Result<Self> {
        if vertices > 64 || edges.len() > 64 {
            return Err(Error::TooLarge { n: vertices.max(edges.len()), limit: 64, what: "graph" });
        }
        if let Some(&(u, v)) = edges.iter().find(|&&(u, v)| u >= vertices || v >= vertices) {
            return Err(Error::Precondition(format!("edge ({u}, {v}) has an endpoint >= {vertices}")));
        }
        Ok(Graph { vertices, edges })
    }

    pub fn vertices(&self) -> usize {
        self.vertices
    }

    pub fn edges(&self) -> &[(usize, usize)] {
        &self.edges
    }

    pub fn complete(n: usize) -> Self {
        let mut e = Vec::new();
        for u in 0..n {
            for v in u + 1..n {
                e.push((u, v));
            }
        }
        Graph::new(n, e).expect("small complete graph")
    }

    /// Wheel with `spokes` rim vertices; vertex 0 is the hub.
    pub fn wheel(spokes: usize) -> Self {
        let mut e = Vec::new();
        for i in 0..spokes {
            e.push((0, i + 1));
        }
        for i in 0..spokes {
            e.push((i + 1, (i + 1) % spokes + 1));
        }
        Graph::new(spokes + 1, e).expect("small wheel")
    }

    /// Vertex-edge incidence vectors over GF(2), one bit per vertex.
    pub fn incidence_columns(&self) -> Vec<u64> {
        self.edges.iter().map(|&(u, v)| (1u64 << u) ^ (1u64 << v)).collect()
    }

    /// Rank of an edge subset in the cycle matroid: the number of edges in a
    /// spanning forest of `(V, X)`.
    pub fn edge_rank(&self, x: Mask) -> usize {
        let mut parent: Vec<usize> = (0..self.vertices).collect();
        fn find(p: &mut [usize], mut a: usize) -> usize {
            while p[a] != a {
                p[a] = p[p[a]];
                a = p[a];
            }
            a
        }
        let mut rank = 0;
        for e in mask::elements(x) {
            let (u, v) = self.edges[e];
            let (a, b) = (find(&mut parent, u), find(&mut parent, v));
            if a != b {
                parent[a] = b;
                rank += 1;
            }
        }
        rank
    }

    /// Drops the edges in `d`.
    pub fn delete_edges(&self, d: Mask) -> Graph {
        let edges = self
            .edges
            .iter()
            .enumerate()
            .filter(|(i, _)| d & mask::single(*i) == 0)
            .map(|(_, &e)| e)
            .collect();
        Graph { vertices: self.vertices, edges }
    }

    /// Contracts the edges in `c`, returning the new graph and the vertex map.
    pub fn contract_edges(&self, c: Mask) -> (Graph, Vec<usize>) {
        let mut parent: Vec<usize> = (0..self.vertices).collect();
        fn find(p: &mut [usize], mut a: usize) -> usize {
            while p[a] != a {
                p[a] = p[p[a]];
                a = p[a];
            }
            a
        }
        for e in mask::elements(c) {
            let (u, v) = self.edges[e];
            let (a, b) = (find(&mut parent, u), find(&mut parent, v));
            if a != b {
                parent[a.max(b)] = a.min(b);
            }
        }
        let mut id = vec![usize::MAX; self.vertices];
        let mut next = 0;
        let mut vmap = vec![0; self.vertices];
        for v in 0..self.vertices {
            let r = find(&mut parent, v);
            if id[r] == usize::MAX {
                id[r] = next;
                next += 1;
            }
            vmap[v] = id[r];
        }
        let edges = self
            .edges
            .iter()
            .enumerate()
            .filter(|(i, _)| c & mask::single(*i) == 0)
            .map(|(_, &(u, v))| (vmap[u], vmap[v]))
            .collect();
        (Graph { vertices: next, edges }, vmap)
    }

    /// Parses `graph V E`, then `E` lines `u v`, then an optional `gamma v1 v2 ...`.
    pub fn parse(text: &str) -> Result<(Graph, Option<Vec<usize>>)> {
        let mut lines = text
            .lines()
            .enumerate()
            .map(|(i, l)| (i + 1, l.trim()))
            .filter(|(_, l)| !l.is_empty() && !l.starts_with('#'));
        let (ln, header) = lines.next().ok_or(Error::Parse { line: 1, msg: "empty input".into() })?;
        let toks: Vec<&str> = header.split_whitespace().collect();
        if toks.len() != 3 || toks[0] != "graph" {
            return Err(Error::Parse { line: ln, msg: "header must be `graph V E`".into() });
        }
        let num = |t: &str, line| t.parse::<usize>().map_err(|_| Error::Parse { line, msg: format!("bad number `{t}`") });
        let v = num(toks[1], ln)?;
        let e = num(toks[2], ln)?;
        let mut edges = Vec::with_capacity(e);
        for _ in 0..e {
            let (ln, l) = lines.next().ok_or(Error::Parse { line: ln, msg: format!("expected {e} edges") })?;
            let t: Vec<&str> = l.split_whitespace().collect();
            if t.len() != 2 {
                return Err(Error::Parse { line: ln, msg: "edge line must be `u v`".into() });
            }
            edges.push((num(t[0], ln)?, num(t[1], ln)?));
        }
        let mut gamma = None;
        if let Some((ln, l)) = lines.next() {
            let mut t = l.split_whitespace();
            if t.next() != Some("gamma") {
                return Err(Error::Parse { line: ln, msg: "expected `gamma v1 v2 ...`".into() });
            }
            let g = t.map(|x| num(x, ln)).collect::<Result<Vec<_>>>()?;
            if let Some(&bad) = g.iter().find(|&&x| x >= v) {
                return Err(Error::Parse { line: ln, msg: format!("gamma vertex {bad} out of range") });
            }
            gamma = Some(g);
            if let Some((ln, _)) = lines.next() {
                return Err(Error::Parse { line: ln, msg: "trailing data after gamma".into() });
            }
        }
        let g = Graph::new(v, edges).map_err(|e| Error::Parse { line: 1, msg: e.to_string() })?;
        Ok((g, gamma))
    }

    pub fn to_text(&self, gamma: Option<&[usize]>) -> String {
        let mut s = format!("graph {} {}\n", self.vertices, self.edges.len());
        for &(u, v) in &self.edges {
            s.push_str(&format!("{u} {v}\n"));
        }
        if let Some(g) = gamma {
            s.push_str("gamma");
            for v in g {
                s.push_str(&format!(" {v}"));
            }
            s.push('\n');
        }
        s
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn wheel_rank() {
        let w4 = Graph::wheel(4);
        assert_eq!(w4.edges().len(), 8);
        assert_eq!(w4.edge_rank(mask::full(8)), 4);
        // the rim is a 4-cycle
        assert_eq!(w4.edge_rank(0b1111_0000), 3);
    }

    #[test]
    fn loops_and_parallel_edges() {
        let g = Graph::new(2, vec![(0, 0), (0, 1), (1, 0)]).unwrap();
        assert_eq!(g.edge_rank(0b001), 0);
        assert_eq!(g.edge_rank(0b110), 1);
        assert!(Graph::new(2, vec![(0, 2)]).is_err());
    }

    #[test]
    fn contraction_merges_vertices() {
        let (g, _) = Graph::complete(4).contract_edges(0b1);
        assert_eq!(g.vertices(), 3);
        assert_eq!(g.edges().len(), 5);
        assert_eq!(g.edge_rank(mask::full(5)), 2);
    }

    #[test]
    fn text_format() {
        let text = "graph 3 2\n0 1\n1 2\ngamma 0 2\n";
        let (g, gamma) = Graph::parse(text).unwrap();
        assert_eq!(gamma.as_deref(), Some(&[0usize, 2][..]));
        assert_eq!(g.to_text(gamma.as_deref()), text);
        assert!(Graph::parse("graph 2 1\n0 5\n").is_err());
        assert!(Graph::parse("graph 2 1\n0 1\ncolour 1\n").is_err());
    }
}
