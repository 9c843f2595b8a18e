//! Named graphs and parametrised families used as fixtures and as the
//! known members of the uniform family.

use crate::graph::Graph;

fn build(n: usize, edges: impl IntoIterator<Item = (usize, usize)>) -> Graph {
    Graph::from_edges(n, edges).expect("fixture edges are valid")
}

/// The cycle `C_n` on `0..n` in cyclic order. `n >= 3`.
pub fn cycle(n: usize) -> Graph {
    assert!(n >= 3, "a cycle needs at least three vertices");
    build(n, (0..n).map(|i| (i, (i + 1) % n)))
}

/// The path on `n` vertices.
pub fn path(n: usize) -> Graph {
    build(n, (1..n).map(|i| (i - 1, i)))
}

/// `K_{1,t}` with centre 0.
pub fn star(t: usize) -> Graph {
    build(t + 1, (1..=t).map(|i| (0, i)))
}

pub fn complete(n: usize) -> Graph {
    build(n, (0..n).flat_map(|u| (u + 1..n).map(move |v| (u, v))))
}

pub fn complete_bipartite(a: usize, b: usize) -> Graph {
    build(a + b, (0..a).flat_map(|u| (a..a + b).map(move |v| (u, v))))
}

pub fn petersen() -> Graph {
    let outer = (0..5).map(|i| (i, (i + 1) % 5));
    let spokes = (0..5).map(|i| (i, i + 5));
    let inner = (0..5).map(|i| (5 + i, 5 + (i + 2) % 5));
    build(10, outer.chain(spokes).chain(inner))
}

/// Triangle 0-1-2 (apex 2) and quadrangle 0-1-3-4 sharing the edge 0-1.
pub fn house() -> Graph {
    case1_fixture(3)
}

/// The weight-gap family: a triangle `v1 v2 v3` where `v3` has degree two,
/// and `k - 2` quadrangles `v1 y x v2` hanging on the edge `v1 v2`, so
/// that both `v1` and `v2` have degree `k`.
///
/// Vertices: `v1 = 0`, `v2 = 1`, `v3 = 2`, then pairs `(y_i, x_i)` with
/// `y_i ~ v1` and `x_i ~ v2`. `k = 3` is the house graph.
pub fn case1_fixture(k: usize) -> Graph {
    assert!(k >= 3, "the family starts at k = 3");
    let mut edges = vec![(0, 1), (0, 2), (1, 2)];
    for i in 0..k - 2 {
        let y = 3 + 2 * i;
        let x = y + 1;
        edges.extend([(0, y), (y, x), (x, 1)]);
    }
    build(3 + 2 * (k - 2), edges)
}

/// Disjoint union, `h` relabelled after `g`.
pub fn disjoint_union(g: &Graph, h: &Graph) -> Graph {
    let off = g.order();
    let edges = g.edges().into_iter().map(|e| (e.0, e.1)).chain(h.edges().into_iter().map(|e| (e.0 + off, e.1 + off)));
    build(off + h.order(), edges)
}
