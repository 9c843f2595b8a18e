//! Recognition of uniform graphs among connected graphs of minimum degree
//! at least two.
//!
//! For girth at least five the uniform members are exactly `C5` and `C7`.
//! For girth three they are the graphs of a catalog produced by the census
//! and shipped as a graph6 file; the catalog is re-verified on load.
//! Everything else (girth four, leaves, isolated vertices) goes through
//! brute-force enumeration and is marked as outside the characterisation.

use thiserror::Error;

use crate::canon::{canonical_form, CanonicalForm};
use crate::error::ParseError;
use crate::factors::{has_star_factor, StarFactor};
use crate::families::cycle;
use crate::format::parse_graph6;
use crate::graph::{Girth, Graph};
use crate::uniformity::{is_uniform, uniformity_report};

/// Catalog shipped with the crate: the girth-three census to nine vertices.
pub const BUILTIN_CATALOG: &str = include_str!("../data/girth3_catalog.g6");

/// Member count the girth-three catalog is expected to reach by order nine.
pub const EXPECTED_GIRTH3_MEMBERS: usize = 5;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum CatalogError {
    #[error("catalog line {line}: {source}")]
    Parse { line: usize, source: ParseError },
    #[error("catalog member {graph6} violates the hypotheses: {reason}")]
    Hypothesis { graph6: String, reason: String },
    #[error("catalog member {0} is not uniform")]
    NotUniform(String),
    #[error("catalog members {0} and {1} are isomorphic")]
    Duplicate(String, String),
    #[error("catalog does not contain the triangle")]
    MissingTriangle,
}

#[derive(Clone, Debug)]
pub struct CatalogEntry {
    pub form: CanonicalForm,
    pub graph: Graph,
}

impl CatalogEntry {
    fn new(graph: Graph) -> Self {
        CatalogEntry { form: canonical_form(&graph), graph }
    }
}

#[derive(Clone, Debug)]
pub struct Catalog {
    pub girth3: Vec<CatalogEntry>,
    pub girth5plus: Vec<CatalogEntry>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CatalogReport {
    pub girth3_members: usize,
    pub girth5plus_members: usize,
    /// Set when the girth-three slice does not have the expected size.
    pub discrepancy: Option<String>,
}

impl Catalog {
    /// The shipped catalog, verified.
    pub fn builtin() -> Result<Catalog, CatalogError> {
        Catalog::from_text(BUILTIN_CATALOG)
    }

    /// Parses a census file (`#` comments, one graph6 per line) as the
    /// girth-three slice and verifies the result.
    pub fn from_text(text: &str) -> Result<Catalog, CatalogError> {
        let catalog = Catalog::parse_unverified(text)?;
        verify_catalog(&catalog)?;
        Ok(catalog)
    }

    pub fn parse_unverified(text: &str) -> Result<Catalog, CatalogError> {
        let mut graphs = Vec::new();
        for (i, line) in text.lines().enumerate() {
            let line = line.trim();
            if line.is_empty() || line.starts_with('#') {
                continue;
            }
            graphs.push(parse_graph6(line).map_err(|source| CatalogError::Parse { line: i + 1, source })?);
        }
        Ok(Catalog::unverified(graphs))
    }

    /// Girth-three members as given, with `C5` and `C7` as the girth-five
    /// slice. Nothing is checked.
    pub fn unverified(girth3: Vec<Graph>) -> Catalog {
        Catalog {
            girth3: girth3.into_iter().map(CatalogEntry::new).collect(),
            girth5plus: vec![CatalogEntry::new(cycle(5)), CatalogEntry::new(cycle(7))],
        }
    }

    fn find(slice: &[CatalogEntry], g: &Graph) -> bool {
        let candidates: Vec<&CatalogEntry> =
            slice.iter().filter(|e| e.graph.order() == g.order() && e.graph.size() == g.size()).collect();
        if candidates.is_empty() {
            return false;
        }
        let form = canonical_form(g);
        candidates.iter().any(|e| e.form == form)
    }
}

/// Re-checks hypotheses and uniformity (by complete enumeration) of every
/// member, and pairwise non-isomorphism.
pub fn verify_catalog(catalog: &Catalog) -> Result<CatalogReport, CatalogError> {
    let slices = [(&catalog.girth3, true), (&catalog.girth5plus, false)];
    for (slice, girth_three) in slices {
        for e in slice.iter() {
            let g6 = e.form.to_string();
            let fail = |reason: &str| CatalogError::Hypothesis { graph6: g6.clone(), reason: reason.into() };
            if !e.graph.is_connected() || e.graph.order() == 0 {
                return Err(fail("not connected"));
            }
            if e.graph.min_degree().unwrap_or(0) < 2 {
                return Err(fail("minimum degree below two"));
            }
            let girth = e.graph.girth();
            if girth_three && girth != Girth::Finite(3) {
                return Err(fail("girth is not three"));
            }
            if !girth_three && !girth.is_at_least(5) {
                return Err(fail("girth below five"));
            }
            if !uniformity_report(&e.graph, true).uniform {
                return Err(CatalogError::NotUniform(g6));
            }
        }
        for (i, a) in slice.iter().enumerate() {
            if let Some(b) = slice[i + 1..].iter().find(|b| b.form == a.form) {
                return Err(CatalogError::Duplicate(a.graph_string(), b.graph_string()));
            }
        }
    }
    if !Catalog::find(&catalog.girth3, &cycle(3)) {
        return Err(CatalogError::MissingTriangle);
    }
    let n3 = catalog.girth3.len();
    let discrepancy = (n3 != EXPECTED_GIRTH3_MEMBERS)
        .then(|| format!("girth-three slice has {n3} members, expected {EXPECTED_GIRTH3_MEMBERS}"));
    Ok(CatalogReport { girth3_members: n3, girth5plus_members: catalog.girth5plus.len(), discrepancy })
}

impl CatalogEntry {
    fn graph_string(&self) -> String {
        crate::format::to_graph6(&self.graph)
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Status {
    InU,
    NotInU,
    NoFactor,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Method {
    Theorem1,
    Theorem2Catalog,
    BruteForce,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Scope {
    InsideCharacterization,
    OutsideCharacterization,
}

impl Status {
    pub fn as_str(self) -> &'static str {
        match self {
            Status::InU => "in_U",
            Status::NotInU => "not_in_U",
            Status::NoFactor => "no_factor",
        }
    }
}

impl Method {
    pub fn as_str(self) -> &'static str {
        match self {
            Method::Theorem1 => "theorem1",
            Method::Theorem2Catalog => "theorem2_catalog",
            Method::BruteForce => "brute_force",
        }
    }
}

impl Scope {
    pub fn as_str(self) -> &'static str {
        match self {
            Scope::InsideCharacterization => "inside_characterization",
            Scope::OutsideCharacterization => "outside_characterization",
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Classification {
    pub status: Status,
    pub method: Method,
    pub scope: Scope,
    /// Two factors of different size; only produced on the brute-force
    /// path.
    pub witness: Option<(StarFactor, StarFactor)>,
}

pub fn classify(g: &Graph, catalog: &Catalog) -> Classification {
    if !has_star_factor(g) {
        return Classification {
            status: Status::NoFactor,
            method: Method::BruteForce,
            scope: Scope::OutsideCharacterization,
            witness: None,
        };
    }
    let components = g.components();
    if components.len() > 1 {
        return classify_components(g, &components, catalog);
    }
    let min_degree = g.min_degree().unwrap_or(0);
    if g.order() > 0 && min_degree >= 2 {
        match g.girth() {
            Girth::Finite(3) => {
                return by_theorem(Catalog::find(&catalog.girth3, g), Method::Theorem2Catalog);
            }
            girth if girth.is_at_least(5) => {
                return by_theorem(Catalog::find(&catalog.girth5plus, g), Method::Theorem1);
            }
            _ => {}
        }
    }
    brute_force(g, Scope::OutsideCharacterization)
}

fn by_theorem(member: bool, method: Method) -> Classification {
    Classification {
        status: if member { Status::InU } else { Status::NotInU },
        method,
        scope: Scope::InsideCharacterization,
        witness: None,
    }
}

fn brute_force(g: &Graph, scope: Scope) -> Classification {
    let report = is_uniform(g);
    Classification {
        status: if report.uniform { Status::InU } else { Status::NotInU },
        method: Method::BruteForce,
        scope,
        witness: report.witness,
    }
}

/// A star-factor of a disconnected graph is a union of factors of its
/// components, so the graph is uniform iff every component is.
fn classify_components(g: &Graph, components: &[u64], catalog: &Catalog) -> Classification {
    let parts: Vec<(Graph, Vec<usize>)> = components.iter().map(|&c| g.induced(c)).collect();
    let results: Vec<Classification> = parts.iter().map(|(h, _)| classify(h, catalog)).collect();
    let uniform = results.iter().all(|r| r.status == Status::InU);
    let scope = if results.iter().all(|r| r.scope == Scope::InsideCharacterization) {
        Scope::InsideCharacterization
    } else {
        Scope::OutsideCharacterization
    };

    let witness = results.iter().position(|r| r.status == Status::NotInU).map(|bad| {
        let (h, _) = &parts[bad];
        let local = match &results[bad].witness {
            Some(w) => w.clone(),
            None => is_uniform(h).witness.expect("non-uniform component has a witness"),
        };
        let mut a = vec![0usize; g.order()];
        let mut b = vec![0usize; g.order()];
        for (i, (h, labels)) in parts.iter().enumerate() {
            let (fa, fb) = if i == bad {
                (local.0.clone(), local.1.clone())
            } else {
                let f = crate::factors::StarFactors::new(h, None).next().expect("component has a factor");
                (f.clone(), f)
            };
            for (v, &old) in labels.iter().enumerate() {
                a[old] = labels[fa.center_of(v)];
                b[old] = labels[fb.center_of(v)];
            }
        }
        (StarFactor::from_assignment(&a), StarFactor::from_assignment(&b))
    });

    Classification {
        status: if uniform { Status::InU } else { Status::NotInU },
        method: Method::BruteForce,
        scope,
        witness,
    }
}
