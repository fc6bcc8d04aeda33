use std::fmt::Write as _;

use serde::Serialize;

use super::CountMatrix;
use crate::base::{Digit, ParryProfile};

/// A vertex `(i, n)`: shift index `i` and gap letter `n`.
pub type Vertex = (usize, usize);

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
pub struct Edge {
    pub from: Vertex,
    pub to: Vertex,
    pub label: Digit,
}

/// The graph reading quasi-greedy prefixes over `{0..p-1} × {0..ℓp+mp-1}`.
///
/// From `(i, n)` the prescribed digit `d_{i+n+1,n+1}` leads to `(i-1, n+1)`,
/// or to `(i-1, ℓp)` when `n` is the last letter; every smaller digit leads to
/// `(i-1, 0)`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ParryAutomaton {
    p: usize,
    letters: usize,
    vertices: Vec<Vertex>,
    edges: Vec<Edge>,
}

impl ParryAutomaton {
    pub fn build(profile: &ParryProfile) -> Self {
        let p = profile.period();
        let k = profile.alphabet_size();
        let lp = profile.preperiod_len();
        let vertices: Vec<Vertex> =
            (0..p).rev().flat_map(|i| (0..k).map(move |n| (i, n))).collect();
        let mut edges = Vec::new();
        for &(i, n) in &vertices {
            let prev = (i + p - 1) % p;
            let label = profile.d((i + n + 1) as i64, n + 1);
            let next = if n + 1 == k { lp } else { n + 1 };
            edges.push(Edge { from: (i, n), to: (prev, next), label });
            for s in 0..label {
                edges.push(Edge { from: (i, n), to: (prev, 0), label: s });
            }
        }
        ParryAutomaton { p, letters: k, vertices, edges }
    }

    pub fn period(&self) -> usize {
        self.p
    }

    /// Vertices in matrix order: first component descending, second ascending.
    pub fn vertices(&self) -> &[Vertex] {
        &self.vertices
    }

    pub fn edges(&self) -> &[Edge] {
        &self.edges
    }

    fn index(&self, v: Vertex) -> usize {
        (self.p - 1 - v.0) * self.letters + v.1
    }

    /// `M[a][b]` counts the edges from `a` to `b`.
    pub fn adjacency(&self) -> CountMatrix {
        let mut m = CountMatrix::zeros(self.vertices.len());
        for e in &self.edges {
            let (a, b) = (self.index(e.from), self.index(e.to));
            m.set(a, b, m.get(a, b) + 1);
        }
        m
    }

    /// The block `M_i` of edges leaving first component `i`.
    pub fn block(&self, i: usize) -> CountMatrix {
        let k = self.letters;
        let row = (self.p - 1 - i) * k;
        let col = (self.p - 1 - (i + self.p - 1) % self.p) * k;
        self.adjacency().block(row, col, k)
    }

    /// `D_{p-1} = M_{p-1}⋯M_1M_0`.
    pub fn cycle_product(&self) -> CountMatrix {
        (0..self.p)
            .rev()
            .fold(CountMatrix::identity(self.letters), |acc, i| {
                acc.try_mul(&self.block(i)).expect("blocks share a size")
            })
    }

    pub fn strongly_connected(&self) -> bool {
        let n = self.vertices.len();
        let adj = self.adjacency();
        let reach = |forward: bool| {
            let mut seen = vec![false; n];
            let mut stack = vec![0usize];
            seen[0] = true;
            while let Some(a) = stack.pop() {
                for b in 0..n {
                    let hit = if forward { adj.get(a, b) } else { adj.get(b, a) };
                    if hit > 0 && !seen[b] {
                        seen[b] = true;
                        stack.push(b);
                    }
                }
            }
            seen.into_iter().all(|s| s)
        };
        n > 0 && reach(true) && reach(false)
    }

    /// Graphviz text with vertices labelled `i,n` and edges labelled by digit.
    pub fn to_dot(&self) -> String {
        let mut out = String::from("digraph parry {\n  rankdir=LR;\n  node [shape=box];\n");
        for &(i, n) in &self.vertices {
            writeln!(out, "  \"{i},{n}\";").unwrap();
        }
        for e in &self.edges {
            writeln!(
                out,
                "  \"{},{}\" -> \"{},{}\" [label=\"{}\"];",
                e.from.0, e.from.1, e.to.0, e.to.1, e.label
            )
            .unwrap();
        }
        out.push_str("}\n");
        out
    }
}
