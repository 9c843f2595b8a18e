//! Star-factors: spanning subgraphs whose every component is a star
//! `K_{1,t}` with `t >= 1`.
//!
//! Enumeration assigns each vertex, in index order, either the role of a
//! centre or that of a satellite of a neighbouring centre. A satellite may
//! point forward to a neighbour not yet visited, which then has to become
//! a centre. A star with a single edge has two possible centres; only the
//! assignment whose centre is the smaller endpoint is produced, so every
//! edge set comes out exactly once without a seen-set.

use crate::graph::{Edge, EdgeSet, Graph, Vertex};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct StarFactor {
    edges: EdgeSet,
    centers: Vec<Vertex>,
    center_of: Vec<Vertex>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Star {
    pub center: Vertex,
    pub leaves: Vec<Vertex>,
}

impl StarFactor {
    pub(crate) fn from_assignment(center_of: &[Vertex]) -> Self {
        let mut edges: EdgeSet =
            center_of.iter().enumerate().filter(|&(v, &c)| v != c).map(|(v, &c)| Edge::new(v, c)).collect();
        edges.sort_unstable();
        let centers = center_of.iter().enumerate().filter(|&(v, &c)| v == c).map(|(v, _)| v).collect();
        StarFactor { edges, centers, center_of: center_of.to_vec() }
    }

    pub fn edges(&self) -> &[Edge] {
        &self.edges
    }

    /// Star centres in increasing order; a `K_{1,1}` is centred on its
    /// smaller endpoint.
    pub fn centers(&self) -> &[Vertex] {
        &self.centers
    }

    /// Centre of the star containing `v`.
    pub fn center_of(&self, v: Vertex) -> Vertex {
        self.center_of[v]
    }

    pub fn component_count(&self) -> usize {
        self.centers.len()
    }

    /// Weight under the all-ones weighting.
    pub fn size(&self) -> usize {
        self.edges.len()
    }

    pub fn stars(&self) -> Vec<Star> {
        self.centers
            .iter()
            .map(|&c| Star {
                center: c,
                leaves: (0..self.center_of.len()).filter(|&v| v != c && self.center_of[v] == c).collect(),
            })
            .collect()
    }
}

/// Whether `edges` spans `g` with every component a star on at least two
/// vertices. Edges outside `g` make the answer `false`.
pub fn is_star_factor(g: &Graph, edges: &[Edge]) -> bool {
    if edges.iter().any(|e| !g.has_edge(e.0, e.1)) {
        return false;
    }
    let Ok(h) = Graph::from_edges(g.order(), edges.iter().map(|e| (e.0, e.1))) else {
        return false;
    };
    if !h.isolated_vertices().is_empty() {
        return false;
    }
    h.components().into_iter().all(|comp| {
        let k = comp.count_ones() as usize;
        let m: usize = crate::graph::bits(comp).map(|v| h.degree(v)).sum::<usize>() / 2;
        m == k - 1 && crate::graph::bits(comp).any(|v| h.degree(v) == k - 1)
    })
}

/// Every graph without isolated vertices has a star-factor; the empty graph
/// has exactly one, the empty factor.
pub fn has_star_factor(g: &Graph) -> bool {
    g.isolated_vertices().is_empty()
}

/// Whether a star-factor with at most `max_leaves` leaves per star exists.
pub fn has_bounded_star_factor(g: &Graph, max_leaves: usize) -> bool {
    StarFactors::new(g, Some(max_leaves)).next().is_some()
}

/// All star-factors, sorted lexicographically by edge set.
pub fn enumerate_star_factors(g: &Graph, max_leaves: Option<usize>) -> Vec<StarFactor> {
    let mut all: Vec<StarFactor> = StarFactors::new(g, max_leaves).collect();
    all.sort_by(|a, b| a.edges.cmp(&b.edges));
    all
}

const UNSET: usize = usize::MAX;

struct Frame {
    options: Vec<Vertex>,
    next: usize,
    applied: Option<Vertex>,
}

/// Lazy star-factor stream in a fixed, deterministic (but not sorted)
/// order. Besides the [`Iterator`] interface, [`StarFactors::advance`]
/// steps without allocating and exposes the current assignment.
pub struct StarFactors<'g> {
    g: &'g Graph,
    max_leaves: usize,
    center_of: Vec<Vertex>,
    satellites: Vec<usize>,
    claims: Vec<usize>,
    /// Vertex after whose assignment the star centred here is complete.
    settles_at: Vec<usize>,
    centers: usize,
    frames: Vec<Frame>,
    started: bool,
    done: bool,
}

impl<'g> StarFactors<'g> {
    /// `max_leaves = None` means unbounded; `Some(0)` admits nothing.
    pub fn new(g: &'g Graph, max_leaves: Option<usize>) -> Self {
        let n = g.order();
        let settles_at = (0..n).map(|v| g.neighbors(v).max().map_or(v, |m| m.max(v))).collect();
        StarFactors {
            g,
            max_leaves: max_leaves.unwrap_or(usize::MAX),
            center_of: vec![UNSET; n],
            satellites: vec![0; n],
            claims: vec![0; n],
            settles_at,
            centers: 0,
            frames: Vec::with_capacity(n),
            started: false,
            done: false,
        }
    }

    /// Moves to the next star-factor; `false` once exhausted.
    pub fn advance(&mut self) -> bool {
        if self.done {
            return false;
        }
        let n = self.g.order();
        if !self.started {
            self.started = true;
            if n == 0 {
                return true;
            }
            if !has_star_factor(self.g) || self.max_leaves == 0 {
                self.done = true;
                return false;
            }
            let opts = self.options_for(0);
            self.frames.push(Frame { options: opts, next: 0, applied: None });
        } else if n == 0 {
            self.done = true;
            return false;
        }

        loop {
            let v = match self.frames.len() {
                0 => {
                    self.done = true;
                    return false;
                }
                len => len - 1,
            };
            if let Some(u) = self.frames[v].applied.take() {
                self.unassign(v, u);
            }
            let mut placed = false;
            while self.frames[v].next < self.frames[v].options.len() {
                let u = self.frames[v].options[self.frames[v].next];
                self.frames[v].next += 1;
                self.assign(v, u);
                if self.settled_ok(v) {
                    self.frames[v].applied = Some(u);
                    placed = true;
                    break;
                }
                self.unassign(v, u);
            }
            if !placed {
                self.frames.pop();
                continue;
            }
            if v + 1 == n {
                return true;
            }
            let opts = self.options_for(v + 1);
            self.frames.push(Frame { options: opts, next: 0, applied: None });
        }
    }

    /// Centre of each vertex's star in the current factor.
    pub fn assignment(&self) -> &[Vertex] {
        &self.center_of
    }

    /// Number of stars in the current factor.
    pub fn component_count(&self) -> usize {
        self.centers
    }

    pub fn current(&self) -> StarFactor {
        StarFactor::from_assignment(&self.center_of)
    }

    fn options_for(&self, v: Vertex) -> Vec<Vertex> {
        if self.claims[v] > 0 {
            return vec![v];
        }
        let mut opts = Vec::new();
        if self.settles_at[v] > v {
            opts.push(v);
        }
        for u in self.g.neighbors(v) {
            let open = self.satellites[u] < self.max_leaves;
            // earlier neighbours only take satellites once they are centres
            if open && (u > v || self.center_of[u] == u) {
                opts.push(u);
            }
        }
        opts
    }

    fn assign(&mut self, v: Vertex, u: Vertex) {
        self.center_of[v] = u;
        if u == v {
            self.centers += 1;
        } else {
            self.satellites[u] += 1;
            if u > v {
                self.claims[u] += 1;
            }
        }
    }

    fn unassign(&mut self, v: Vertex, u: Vertex) {
        self.center_of[v] = UNSET;
        if u == v {
            self.centers -= 1;
        } else {
            self.satellites[u] -= 1;
            if u > v {
                self.claims[u] -= 1;
            }
        }
    }

    /// Checks every centre whose star became final with `v`'s assignment:
    /// it needs a satellite, and a lone satellite must not have the smaller
    /// index.
    fn settled_ok(&self, v: Vertex) -> bool {
        let ok = |c: Vertex| {
            self.center_of[c] != c
                || self.settles_at[c] != v
                || (self.satellites[c] >= 1 && !(self.satellites[c] == 1 && self.claims[c] == 1))
        };
        ok(v) && self.g.neighbors(v).take_while(|&c| c < v).all(ok)
    }
}

impl Iterator for StarFactors<'_> {
    type Item = StarFactor;

    fn next(&mut self) -> Option<StarFactor> {
        if self.advance() {
            Some(self.current())
        } else {
            None
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::families::*;

    /// Filters every edge subset through `is_star_factor`.
    fn brute_force(g: &Graph) -> Vec<EdgeSet> {
        let edges = g.edges();
        assert!(edges.len() <= 20);
        let mut out = Vec::new();
        for mask in 0u32..1 << edges.len() {
            let sub: EdgeSet = edges.iter().enumerate().filter(|(i, _)| mask >> i & 1 == 1).map(|(_, &e)| e).collect();
            if is_star_factor(g, &sub) {
                out.push(sub);
            }
        }
        out.sort();
        out
    }

    fn edge_sets(g: &Graph) -> Vec<EdgeSet> {
        enumerate_star_factors(g, None).into_iter().map(|f| f.edges).collect()
    }

    #[test]
    fn is_star_factor_examples() {
        let c4 = cycle(4);
        assert!(is_star_factor(&c4, &[Edge(0, 1), Edge(2, 3)]));
        assert!(!is_star_factor(&c4, &[Edge(0, 1), Edge(1, 2)]));
        assert!(!is_star_factor(&cycle(5), &cycle(5).edges()));
        assert!(!is_star_factor(&c4, &[Edge(0, 2), Edge(1, 3)]));
        assert!(is_star_factor(&star(3), &star(3).edges()));
        assert!(is_star_factor(&Graph::empty(0).unwrap(), &[]));
    }

    #[test]
    fn cycle_counts_match_brute_force() {
        let c4 = edge_sets(&cycle(4));
        assert_eq!(c4, brute_force(&cycle(4)));
        assert_eq!(c4.len(), 2);
        assert!(c4.iter().all(|s| s.len() == 2));

        let c5 = edge_sets(&cycle(5));
        assert_eq!(c5, brute_force(&cycle(5)));
        assert_eq!(c5.len(), 5);
        assert!(c5.iter().all(|s| s.len() == 3));

        assert_eq!(edge_sets(&cycle(6)).len(), 5);
    }

    #[test]
    fn isolated_vertex_means_no_factor() {
        let g = Graph::from_edges(3, [(0, 1)]).unwrap();
        assert!(enumerate_star_factors(&g, None).is_empty());
        assert!(!has_star_factor(&g));
        assert!(!has_star_factor(&Graph::empty(1).unwrap()));
        assert!(has_star_factor(&cycle(7)));
    }

    #[test]
    fn empty_graph_has_the_empty_factor() {
        let g = Graph::empty(0).unwrap();
        let all = enumerate_star_factors(&g, None);
        assert_eq!(all.len(), 1);
        assert!(all[0].edges().is_empty());
        assert!(has_star_factor(&g));
    }

    #[test]
    fn bounded_existence() {
        assert!(!has_bounded_star_factor(&star(3), 1));
        assert!(!has_bounded_star_factor(&star(3), 2));
        assert!(has_bounded_star_factor(&star(3), 3));
        assert!(!has_bounded_star_factor(&cycle(7), 1));
        assert!(has_bounded_star_factor(&cycle(7), 2));
        assert!(has_bounded_star_factor(&cycle(6), 1));
    }

    #[test]
    fn single_edge_centred_on_smaller_endpoint() {
        let all = enumerate_star_factors(&path(2), None);
        assert_eq!(all.len(), 1);
        assert_eq!(all[0].centers(), &[0]);
        // 1-2 matched with 1 the centre even though 1 picks 2 first
        let g = Graph::from_edges(4, [(0, 3), (1, 2), (0, 1)]).unwrap();
        for f in enumerate_star_factors(&g, None) {
            for s in f.stars() {
                if s.leaves.len() == 1 {
                    assert!(s.center < s.leaves[0], "{f:?}");
                }
            }
        }
    }

    #[test]
    fn factor_invariants_on_petersen() {
        let g = petersen();
        let all = enumerate_star_factors(&g, None);
        let maxdeg = g.max_degree().unwrap();
        for f in &all {
            assert!(is_star_factor(&g, f.edges()));
            assert_eq!(f.size(), g.order() - f.component_count());
            for s in f.stars() {
                assert!((1..=maxdeg).contains(&s.leaves.len()));
            }
        }
        let mut sets: Vec<_> = all.iter().map(|f| f.edges.clone()).collect();
        sets.dedup();
        assert_eq!(sets.len(), all.len());
    }

    #[test]
    fn oracle_equivalence_on_assorted_graphs() {
        let graphs = [
            house(),
            case1_fixture(4),
            complete(5),
            complete_bipartite(2, 4),
            path(7),
            star(5),
            disjoint_union(&cycle(3), &path(4)),
            petersen().delete_edges(&[Edge(0, 1), Edge(5, 7), Edge(2, 3)]).unwrap().0,
        ];
        for g in graphs {
            assert_eq!(edge_sets(&g), brute_force(&g), "{g:?}");
        }
    }

    #[test]
    fn bounded_enumeration_respects_bound() {
        let g = complete(5);
        for b in 1..=4 {
            let bounded = enumerate_star_factors(&g, Some(b));
            let filtered: Vec<_> = enumerate_star_factors(&g, None)
                .into_iter()
                .filter(|f| f.stars().iter().all(|s| s.leaves.len() <= b))
                .collect();
            assert_eq!(bounded, filtered, "bound {b}");
        }
    }

    #[test]
    fn advance_exposes_component_count() {
        let g = cycle(9);
        let mut s = StarFactors::new(&g, None);
        let mut counts = std::collections::BTreeSet::new();
        while s.advance() {
            counts.insert(s.component_count());
            assert_eq!(s.current().component_count(), s.component_count());
        }
        assert_eq!(counts.into_iter().collect::<Vec<_>>(), vec![3, 4]);
        assert!(!s.advance());
    }
}
