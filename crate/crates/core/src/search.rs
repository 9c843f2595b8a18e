//! Isomorph-free generation of small graphs and the uniform-graph census.
//!
//! Graphs are grown one vertex at a time: every representative on `k - 1`
//! vertices is extended by a new vertex joined to each subset of the old
//! ones, and a child is kept only if its canonical form has not been seen
//! at level `k`. Levels are built in parallel and sorted by canonical form,
//! so the output does not depend on the worker count.
//!
//! Connectivity and a lower girth bound are pruned on during growth: every
//! connected graph has a vertex whose removal leaves it connected, and
//! deleting a vertex never shortens the shortest cycle. Minimum degree and
//! an exact girth only filter the emitted graphs.

use std::fmt::Write as _;

use dashmap::DashSet;
use rayon::prelude::*;

use crate::canon::{canonical_form, CanonicalForm};
use crate::graph::{Girth, Graph};
use crate::uniformity::{lemma2_witness, lemma3_violation, uniformity_report, UniformityReport};

/// Documented practical limit for exhaustive generation.
pub const MAX_CENSUS_ORDER: usize = 10;

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Hash)]
pub enum GirthConstraint {
    #[default]
    Any,
    Exact(usize),
    AtLeast(usize),
}

impl GirthConstraint {
    pub fn admits(self, g: Girth) -> bool {
        match self {
            GirthConstraint::Any => true,
            GirthConstraint::Exact(k) => g == Girth::Finite(k),
            GirthConstraint::AtLeast(k) => g.is_at_least(k),
        }
    }
}

/// Structural filter for generation; `n` is the target order.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Hash)]
pub struct Constraints {
    pub n: usize,
    pub min_degree: usize,
    pub girth: GirthConstraint,
    pub connected: bool,
}

impl Constraints {
    pub fn admits(&self, g: &Graph) -> bool {
        if g.order() != self.n {
            return false;
        }
        if self.min_degree > 0 && (0..g.order()).any(|v| g.degree(v) < self.min_degree) {
            return false;
        }
        if self.connected && !g.is_connected() {
            return false;
        }
        matches!(self.girth, GirthConstraint::Any) || self.girth.admits(g.girth())
    }

    fn at_order(self, n: usize) -> Self {
        Constraints { n, ..self }
    }

    fn girth_floor(&self) -> Option<usize> {
        match self.girth {
            GirthConstraint::AtLeast(k) if k > 3 => Some(k),
            _ => None,
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct SearchOptions {
    /// Worker threads; `0` lets rayon decide.
    pub jobs: usize,
    /// Discard graphs carrying a lemma witness before enumerating their
    /// factors. Never used for catalog builds.
    pub prune_lemmas: bool,
}

impl Default for SearchOptions {
    fn default() -> Self {
        SearchOptions { jobs: 1, prune_lemmas: false }
    }
}

fn with_pool<T: Send>(jobs: usize, f: impl FnOnce() -> T + Send) -> T {
    let pool = rayon::ThreadPoolBuilder::new().num_threads(jobs).build().expect("thread pool");
    pool.install(f)
}

/// One representative per isomorphism class on `c.n` vertices satisfying
/// `c`, each in canonical labelling, sorted by canonical form.
pub fn enumerate_graphs(c: &Constraints) -> Vec<Graph> {
    enumerate_graphs_with(c, &SearchOptions::default())
}

pub fn enumerate_graphs_with(c: &Constraints, opts: &SearchOptions) -> Vec<Graph> {
    with_pool(opts.jobs, || {
        let mut out = Vec::new();
        grow(c, c.n, |_, emitted| out = emitted.to_vec());
        out.into_iter().map(|(_, g)| g).collect()
    })
}

type Level = Vec<(CanonicalForm, Graph)>;

/// Builds levels `0..=n_max`, calling `visit(k, emitted)` with the sorted
/// members of level `k` that satisfy `c` at order `k`. Must run inside a
/// rayon pool.
fn grow(c: &Constraints, n_max: usize, mut visit: impl FnMut(usize, &[(CanonicalForm, Graph)])) {
    let empty = Graph::empty(0).expect("empty graph");
    let mut level: Level = vec![(canonical_form(&empty), empty)];
    emit(c, 0, &level, &mut visit);
    for k in 1..=n_max {
        let last = k == n_max;
        let target = c.at_order(k);
        let seen: DashSet<CanonicalForm> = DashSet::new();
        level.par_iter().for_each(|(_, parent)| {
            let first_subset = if c.connected && k > 1 { 1 } else { 0 };
            for nbrs in first_subset..1u64 << (k - 1) {
                let child = parent.with_vertex(nbrs).expect("order within bounds");
                if !keep_growing(c, &child) {
                    continue;
                }
                if last && !target.admits(&child) {
                    continue;
                }
                seen.insert(canonical_form(&child));
            }
        });
        let mut forms: Vec<CanonicalForm> = seen.into_iter().collect();
        forms.par_sort_unstable();
        level = forms
            .into_par_iter()
            .map(|f| {
                let g = f.to_graph();
                (f, g)
            })
            .collect();
        emit(c, k, &level, &mut visit);
    }
}

fn keep_growing(c: &Constraints, g: &Graph) -> bool {
    match c.girth_floor() {
        Some(k) => g.girth().is_at_least(k),
        None => true,
    }
}

fn emit(c: &Constraints, k: usize, level: &Level, visit: &mut impl FnMut(usize, &[(CanonicalForm, Graph)])) {
    let target = c.at_order(k);
    let emitted: Level = level.iter().filter(|(_, g)| target.admits(g)).cloned().collect();
    visit(k, &emitted);
}

#[derive(Clone, Debug)]
pub struct CensusEntry {
    pub form: CanonicalForm,
    pub graph: Graph,
    pub report: UniformityReport,
}

#[derive(Clone, Debug)]
pub struct Census {
    /// Constraints with `n` ignored; every order up to `n_max` is covered.
    pub constraints: Constraints,
    pub n_max: usize,
    pub prune_lemmas: bool,
    /// Uniform classes in order of vertex count, then canonical form.
    pub entries: Vec<CensusEntry>,
    /// Classes meeting the constraints at each order `1..=n_max`.
    pub examined: Vec<usize>,
}

/// Every isomorphism class with at most `n_max` vertices that satisfies
/// `c` (whose `n` is ignored) and whose star-factors all have one size.
/// Survivors are re-checked with a complete enumeration.
pub fn census_uniform(n_max: usize, c: &Constraints, opts: &SearchOptions) -> Census {
    with_pool(opts.jobs, || {
        let mut entries = Vec::new();
        let mut examined = Vec::new();
        grow(c, n_max, |k, level| {
            // the vertexless graph satisfies every degree bound vacuously
            if k == 0 {
                return;
            }
            examined.push(level.len());
            let found: Vec<CensusEntry> = level
                .par_iter()
                .filter(|(_, g)| !(opts.prune_lemmas && (lemma2_witness(g).is_some() || lemma3_violation(g).is_some())))
                .filter(|(_, g)| crate::uniformity::is_uniform(g).uniform)
                .map(|(f, g)| CensusEntry { form: f.clone(), graph: g.clone(), report: uniformity_report(g, true) })
                .collect();
            entries.extend(found);
        });
        Census { constraints: *c, n_max, prune_lemmas: opts.prune_lemmas, entries, examined }
    })
}

impl Census {
    pub fn graphs(&self) -> impl Iterator<Item = &Graph> {
        self.entries.iter().map(|e| &e.graph)
    }

    /// Census file: `#` header lines, then one graph6 string per line.
    /// Worker count is deliberately absent so reruns compare byte for byte.
    pub fn to_file(&self, extra_header: &[String]) -> String {
        let c = &self.constraints;
        let girth = match c.girth {
            GirthConstraint::Any => "any".to_string(),
            GirthConstraint::Exact(k) => format!("{k}"),
            GirthConstraint::AtLeast(k) => format!(">={k}"),
        };
        let mut s = String::new();
        let _ = writeln!(s, "# starfactor uniform census");
        let _ = writeln!(s, "# tool: starfactor {}", env!("CARGO_PKG_VERSION"));
        let _ = writeln!(
            s,
            "# constraints: n_max={} girth={} min_degree={} connected={} prune_lemmas={}",
            self.n_max, girth, c.min_degree, c.connected, self.prune_lemmas
        );
        let examined: Vec<String> = self.examined.iter().map(|x| x.to_string()).collect();
        let _ = writeln!(s, "# examined per order: {}", examined.join(","));
        let _ = writeln!(s, "# members: {}", self.entries.len());
        for line in extra_header {
            let _ = writeln!(s, "# {line}");
        }
        for e in &self.entries {
            let _ = writeln!(s, "{}", e.form);
        }
        s
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::canon::are_isomorphic;
    use crate::families::*;
    use std::collections::HashSet;

    fn connected(n: usize) -> Constraints {
        Constraints { n, connected: true, ..Default::default() }
    }

    /// Labelled-orbit oracle: canonical keys of every labelled graph on
    /// `n` vertices, computed by minimising graph6 over all permutations.
    fn orbit_count(n: usize, keep: impl Fn(&Graph) -> bool) -> usize {
        let pairs: Vec<(usize, usize)> = (0..n).flat_map(|u| (u + 1..n).map(move |v| (u, v))).collect();
        let perms = perms(n);
        let mut reps = HashSet::new();
        for mask in 0u32..1 << pairs.len() {
            let g = Graph::from_edges(n, pairs.iter().enumerate().filter(|(i, _)| mask >> i & 1 == 1).map(|(_, &e)| e))
                .unwrap();
            if keep(&g) {
                reps.insert(perms.iter().map(|p| crate::format::to_graph6(&g.permuted(p))).min().unwrap());
            }
        }
        reps.len()
    }

    fn perms(n: usize) -> Vec<Vec<usize>> {
        if n == 0 {
            return vec![vec![]];
        }
        let mut out = Vec::new();
        for p in perms(n - 1) {
            for i in 0..n {
                let mut q = p.clone();
                q.insert(i, n - 1);
                out.push(q);
            }
        }
        out
    }

    #[test]
    fn three_vertices_min_degree_two() {
        let gs = enumerate_graphs(&Constraints { n: 3, min_degree: 2, connected: true, ..Default::default() });
        assert_eq!(gs.len(), 1);
        assert!(are_isomorphic(&gs[0], &cycle(3)));
    }

    #[test]
    fn four_vertices() {
        let gs = enumerate_graphs(&Constraints { n: 4, min_degree: 2, connected: true, ..Default::default() });
        assert_eq!(gs.len(), 3);
        let diamond = complete(4).delete_edges(&[crate::graph::Edge(0, 1)]).unwrap().0;
        for h in [cycle(4), diamond, complete(4)] {
            assert!(gs.iter().any(|g| are_isomorphic(g, &h)));
        }
        assert_eq!(orbit_count(4, |g| g.is_connected() && g.min_degree().unwrap() >= 2), 3);
        assert_eq!(enumerate_graphs(&connected(4)).len(), 6);
    }

    #[test]
    fn counts_match_orbit_oracle() {
        for n in 1..=5 {
            assert_eq!(enumerate_graphs(&connected(n)).len(), orbit_count(n, |g| g.is_connected()), "connected n={n}");
            let all = Constraints { n, ..Default::default() };
            assert_eq!(enumerate_graphs(&all).len(), orbit_count(n, |_| true), "all n={n}");
        }
        assert_eq!(enumerate_graphs(&connected(5)).len(), 21);
    }

    #[test]
    fn known_class_counts() {
        // OEIS A000088 and A001349
        let all: Vec<usize> =
            (1..=7).map(|n| enumerate_graphs(&Constraints { n, ..Default::default() }).len()).collect();
        assert_eq!(all, vec![1, 2, 4, 11, 34, 156, 1044]);
        let conn: Vec<usize> = (1..=7).map(|n| enumerate_graphs(&connected(n)).len()).collect();
        assert_eq!(conn, vec![1, 1, 2, 6, 21, 112, 853]);
    }

    #[test]
    fn isomorph_free_and_worker_independent() {
        let c = Constraints { n: 6, min_degree: 1, ..Default::default() };
        let one = enumerate_graphs_with(&c, &SearchOptions { jobs: 1, prune_lemmas: false });
        let four = enumerate_graphs_with(&c, &SearchOptions { jobs: 4, prune_lemmas: false });
        assert_eq!(one, four);
        let forms: HashSet<_> = one.iter().map(canonical_form).collect();
        assert_eq!(forms.len(), one.len());
        assert!(one.iter().all(|g| c.admits(g)));
    }

    #[test]
    fn girth_floor_pruning_is_complete() {
        for n in 3..=7 {
            let pruned = enumerate_graphs(&Constraints {
                n,
                girth: GirthConstraint::AtLeast(5),
                connected: true,
                ..Default::default()
            });
            let filtered: Vec<Graph> =
                enumerate_graphs(&connected(n)).into_iter().filter(|g| g.girth().is_at_least(5)).collect();
            assert_eq!(pruned, filtered, "n={n}");
        }
    }

    #[test]
    fn small_census_contains_triangle_and_house() {
        let c = Constraints { min_degree: 2, girth: GirthConstraint::Exact(3), connected: true, ..Default::default() };
        let census = census_uniform(5, &c, &SearchOptions::default());
        let gs: Vec<&Graph> = census.graphs().collect();
        assert!(gs.iter().any(|g| are_isomorphic(g, &cycle(3))));
        assert!(gs.iter().any(|g| are_isomorphic(g, &house())));
        for e in &census.entries {
            assert!(e.report.uniform && e.report.factor_count.is_some());
        }
    }

    #[test]
    fn census_file_lists_members() {
        let c =
            Constraints { min_degree: 2, girth: GirthConstraint::AtLeast(5), connected: true, ..Default::default() };
        let census = census_uniform(7, &c, &SearchOptions::default());
        let text = census.to_file(&[]);
        let body: Vec<&str> = text.lines().filter(|l| !l.starts_with('#')).collect();
        assert_eq!(body.len(), 2);
        assert!(text.contains("girth=>=5"));
    }
}
