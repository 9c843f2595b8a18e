//! Canonical labelling for small graphs.
//!
//! Individualisation-refinement: the partition is refined to an equitable
//! one by neighbour counts, the first non-singleton cell is branched on,
//! and among the discrete leaves the one whose relabelled adjacency rows are
//! lexicographically smallest wins. Automorphisms found at leaves prune
//! sibling branches by orbit, and an automorphism against the first leaf
//! lets the search jump back to where the current path left the first one.
//!
//! Fast up to about 16 vertices; larger inputs are still exact but can get
//! slow on highly regular graphs.

use std::fmt;

use crate::format::to_graph6;
use crate::graph::{bits, Graph};

/// Isomorphism-invariant key: the graph6 bytes of the canonically
/// relabelled graph, so equal keys imply equal orders and adjacency.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct CanonicalForm(Box<[u8]>);

impl CanonicalForm {
    pub fn as_bytes(&self) -> &[u8] {
        &self.0
    }

    pub fn as_graph6(&self) -> &str {
        std::str::from_utf8(&self.0).expect("graph6 is ASCII")
    }

    /// The canonical representative itself.
    pub fn to_graph(&self) -> Graph {
        crate::format::parse_graph6(self.as_graph6()).expect("canonical form is valid graph6")
    }
}

impl fmt::Debug for CanonicalForm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "CanonicalForm({})", self.as_graph6())
    }
}

impl fmt::Display for CanonicalForm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_graph6())
    }
}

pub fn canonical_form(g: &Graph) -> CanonicalForm {
    let (canon, _) = canonical_labeling(g);
    CanonicalForm(to_graph6(&canon).into_bytes().into_boxed_slice())
}

/// The canonical graph and the labelling `lab` with `lab[v]` the new label
/// of vertex `v`.
pub fn canonical_labeling(g: &Graph) -> (Graph, Vec<usize>) {
    let n = g.order();
    if n == 0 {
        return (g.clone(), Vec::new());
    }
    let mut search = Search {
        adj: g.adjacency(),
        first: None,
        best: None,
        autos: Vec::new(),
        path: Vec::with_capacity(n),
        first_path: Vec::new(),
    };
    let mut root = vec![g.vertex_mask()];
    refine(search.adj, &mut root, vec![g.vertex_mask()]);
    search.descend(root);

    let best = search.best.expect("search visits at least one leaf");
    let mut lab = vec![0; n];
    for (pos, &v) in best.order.iter().enumerate() {
        lab[v] = pos;
    }
    (Graph::from_adjacency_unchecked(best.rows), lab)
}

pub fn are_isomorphic(g: &Graph, h: &Graph) -> bool {
    g.order() == h.order() && g.size() == h.size() && canonical_form(g) == canonical_form(h)
}

struct Leaf {
    /// `order[pos]` is the vertex placed at position `pos`.
    order: Vec<usize>,
    rows: Vec<u64>,
}

struct Search<'a> {
    adj: &'a [u64],
    first: Option<Leaf>,
    best: Option<Leaf>,
    autos: Vec<Vec<u8>>,
    path: Vec<usize>,
    first_path: Vec<usize>,
}

impl Search<'_> {
    /// Explores the subtree under `cells`. Returns `Some(d)` when the caller
    /// should unwind to depth `d`.
    fn descend(&mut self, cells: Vec<u64>) -> Option<usize> {
        let Some(target) = cells.iter().position(|c| c.count_ones() > 1) else {
            return self.leaf(&cells);
        };
        let cell = cells[target];
        let depth = self.path.len();
        let mut tried = 0u64;
        for v in bits(cell) {
            if tried != 0 && self.orbit_hits(v, tried) {
                continue;
            }
            tried |= 1 << v;
            let mut child = cells.clone();
            child[target] = 1 << v;
            child.insert(target + 1, cell & !(1 << v));
            refine(self.adj, &mut child, vec![1 << v]);
            self.path.push(v);
            let jump = self.descend(child);
            self.path.pop();
            if let Some(d) = jump {
                if d < depth {
                    return Some(d);
                }
            }
        }
        None
    }

    /// Whether `v` shares an orbit with a tried vertex under the known
    /// automorphisms that fix the current path pointwise.
    fn orbit_hits(&self, v: usize, tried: u64) -> bool {
        let n = self.adj.len();
        let mut parent: Vec<usize> = (0..n).collect();
        fn find(p: &mut [usize], mut x: usize) -> usize {
            while p[x] != x {
                p[x] = p[p[x]];
                x = p[x];
            }
            x
        }
        let mut any = false;
        for a in &self.autos {
            if self.path.iter().all(|&x| a[x] as usize == x) {
                any = true;
                for (x, &y) in a.iter().enumerate() {
                    let (rx, ry) = (find(&mut parent, x), find(&mut parent, y as usize));
                    if rx != ry {
                        parent[rx] = ry;
                    }
                }
            }
        }
        if !any {
            return false;
        }
        let rv = find(&mut parent, v);
        bits(tried).any(|t| find(&mut parent, t) == rv)
    }

    fn leaf(&mut self, cells: &[u64]) -> Option<usize> {
        let n = self.adj.len();
        let order: Vec<usize> = cells.iter().map(|c| c.trailing_zeros() as usize).collect();
        let mut pos = vec![0usize; n];
        for (p, &v) in order.iter().enumerate() {
            pos[v] = p;
        }
        let rows: Vec<u64> = order.iter().map(|&v| bits(self.adj[v]).fold(0u64, |r, u| r | 1 << pos[u])).collect();
        let leaf = Leaf { order, rows };

        let Some(first) = &self.first else {
            self.best = Some(Leaf { order: leaf.order.clone(), rows: leaf.rows.clone() });
            self.first = Some(leaf);
            self.first_path = self.path.clone();
            return None;
        };
        if leaf.rows == first.rows {
            self.autos.push(automorphism(&first.order, &leaf.order));
            let common = self.first_path.len().min(self.path.len());
            let diverge = (0..common).find(|&i| self.first_path[i] != self.path[i]).unwrap_or(common);
            return Some(diverge);
        }
        let best = self.best.as_ref().expect("set with first");
        match leaf.rows.cmp(&best.rows) {
            std::cmp::Ordering::Less => self.best = Some(leaf),
            std::cmp::Ordering::Equal => self.autos.push(automorphism(&best.order, &leaf.order)),
            std::cmp::Ordering::Greater => {}
        }
        None
    }
}

fn automorphism(from: &[usize], to: &[usize]) -> Vec<u8> {
    let mut a = vec![0u8; from.len()];
    for (&x, &y) in from.iter().zip(to) {
        a[x] = y as u8;
    }
    a
}

/// Refines `cells` in place to the coarsest equitable partition finer than
/// it, splitting against every mask in `queue` (and every fragment that
/// results). Fragments are ordered by increasing neighbour count, which
/// keeps the procedure label-invariant.
fn refine(adj: &[u64], cells: &mut Vec<u64>, mut queue: Vec<u64>) {
    let mut head = 0;
    let mut counts = [0u32; 64];
    while head < queue.len() {
        let splitter = queue[head];
        head += 1;
        let mut i = 0;
        while i < cells.len() {
            let cell = cells[i];
            if cell.count_ones() == 1 {
                i += 1;
                continue;
            }
            let mut lo = u32::MAX;
            let mut hi = 0;
            for v in bits(cell) {
                let c = (adj[v] & splitter).count_ones();
                counts[v] = c;
                lo = lo.min(c);
                hi = hi.max(c);
            }
            if lo == hi {
                i += 1;
                continue;
            }
            let mut frags = Vec::new();
            let mut rest = cell;
            while rest != 0 {
                let min = bits(rest).map(|v| counts[v]).min().expect("nonempty");
                let frag = bits(rest).filter(|&v| counts[v] == min).fold(0u64, |m, v| m | 1 << v);
                frags.push(frag);
                rest &= !frag;
            }
            let k = frags.len();
            cells.splice(i..=i, frags.iter().copied());
            queue.extend(frags);
            i += k;
        }
    }
}
