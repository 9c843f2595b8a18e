use std::collections::BTreeSet;
use std::fs;
use std::io::{self, Read, Write};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde_json::{json, Map, Value};

use starfactor::classifier::{classify, verify_catalog, Catalog};
use starfactor::format::{parse_edge_list, parse_graph6_with, Padding};
use starfactor::search::{census_uniform, Census, Constraints, GirthConstraint, SearchOptions, MAX_CENSUS_ORDER};
use starfactor::uniformity::{lemma2_witness, lemma3_violation, uniformity_report};
use starfactor::weighting::{solve_uniform_weighting_with, SolverOptions, DEFAULT_FACTOR_CAP};
use starfactor::{canonical_form, CanonicalForm, Graph, StarFactors};

mod report;

const EXIT_INPUT: u8 = 2;
const EXIT_DISCREPANCY: u8 = 3;

/// Star-factor analysis of small graphs.
#[derive(Parser, Debug)]
#[command(name = "starfactor", version)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Uniformity report: factor sizes, a witness pair, lemma configurations.
    Analyze {
        #[command(flatten)]
        input: InputArgs,
        /// Enumerate every factor so the spectrum and count are exact.
        #[arg(long)]
        full: bool,
    },
    /// List star-factors in lexicographic order.
    Factors {
        #[command(flatten)]
        input: InputArgs,
        /// Stop after this many factors.
        #[arg(long)]
        limit: Option<usize>,
        /// Only stars with at most this many leaves.
        #[arg(long)]
        max_leaves: Option<usize>,
    },
    /// Decide membership in the uniform family.
    Classify {
        #[command(flatten)]
        input: InputArgs,
        /// Girth-three catalog in census format; `-` reads it from standard
        /// input, whose graphs are then also the ones classified.
        #[arg(long)]
        catalog: Option<String>,
    },
    /// Exhaustive search for uniform graphs; prints a census file.
    Census(CensusArgs),
    /// Look for positive edge weights under which all factors weigh the same.
    WeightSolve {
        #[command(flatten)]
        input: InputArgs,
        /// Stop enumerating factors after this many.
        #[arg(long, default_value_t = DEFAULT_FACTOR_CAP)]
        factor_cap: usize,
    },
}

#[derive(Args, Debug)]
struct InputArgs {
    /// Input file; standard input when absent or `-`.
    input: Option<String>,
    #[arg(long, value_enum, default_value_t = Format::Graph6)]
    format: Format,
    /// Reject graph6 strings with nonzero padding bits.
    #[arg(long)]
    strict_g6: bool,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum Format {
    Graph6,
    Edgelist,
}

#[derive(Args, Debug)]
struct CensusArgs {
    #[arg(long, default_value_t = 9)]
    n_max: usize,
    /// Exact girth.
    #[arg(long, conflicts_with = "girth_min")]
    girth: Option<usize>,
    /// Lower bound on the girth.
    #[arg(long)]
    girth_min: Option<usize>,
    #[arg(long, default_value_t = 0)]
    min_degree: usize,
    /// Include disconnected graphs.
    #[arg(long)]
    allow_disconnected: bool,
    /// Skip graphs with a known non-uniformity configuration before
    /// enumerating their factors.
    #[arg(long)]
    prune_lemmas: bool,
    /// Worker threads; 0 picks one per CPU.
    #[arg(long, env = "STARFACTOR_JOBS", default_value_t = 1)]
    jobs: usize,
    /// Add a generation date line to the header.
    #[arg(long)]
    date: bool,
    /// Catalog the result is checked against; the built-in one by default.
    #[arg(long)]
    catalog: Option<String>,
}

/// Failure reported as JSON on standard error.
struct Failure {
    code: u8,
    body: Value,
}

impl Failure {
    fn input(msg: impl ToString) -> Self {
        Failure { code: EXIT_INPUT, body: json!({ "error": msg.to_string() }) }
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) if !e.use_stderr() => {
            let _ = e.print();
            return ExitCode::SUCCESS;
        }
        Err(e) => {
            let msg = e.render().to_string();
            eprintln!("{}", json!({ "error": msg.trim_end() }));
            return ExitCode::from(EXIT_INPUT);
        }
    };
    let stdout = io::stdout();
    let mut out = io::BufWriter::new(stdout.lock());
    let result = run(cli.command, &mut out);
    let _ = out.flush();
    match result {
        Ok(()) => ExitCode::SUCCESS,
        Err(f) => {
            eprintln!("{}", f.body);
            ExitCode::from(f.code)
        }
    }
}

fn run(command: Command, out: &mut impl Write) -> Result<(), Failure> {
    match command {
        Command::Analyze { input, full } => for_each_graph(&input, None, out, |g| {
            let r = uniformity_report(g, full);
            Ok(report::uniformity(&r, lemma2_witness(g), lemma3_violation(g)))
        }),
        Command::Factors { input, limit, max_leaves } => for_each_graph(&input, None, out, |g| {
            let mut stream = StarFactors::new(g, max_leaves);
            let mut factors = Vec::new();
            let mut truncated = false;
            while stream.advance() {
                if limit.is_some_and(|l| factors.len() == l) {
                    truncated = true;
                    break;
                }
                factors.push(stream.current());
            }
            // the stream order depends on the search; reports list factors sorted
            factors.sort_by(|a, b| a.edges().cmp(b.edges()));
            let mut m = Map::new();
            m.insert("count".into(), json!(factors.len()));
            m.insert("truncated".into(), json!(truncated));
            m.insert("factors".into(), factors.iter().map(report::factor).collect());
            Ok(m)
        }),
        Command::Classify { input, catalog } => {
            let (catalog, stdin_text) = load_catalog(catalog.as_deref())?;
            let stdin_text = stdin_text.filter(|_| matches!(input.input.as_deref(), None | Some("-")));
            for_each_graph(&input, stdin_text, out, |g| Ok(report::classification(&classify(g, &catalog))))
        }
        Command::Census(args) => census(&args, out),
        Command::WeightSolve { input, factor_cap } => for_each_graph(&input, None, out, |g| {
            let opts = SolverOptions { factor_cap, ..Default::default() };
            let s = solve_uniform_weighting_with(g, opts).map_err(Failure::input)?;
            Ok(report::weighting(g, &s))
        }),
    }
}

fn read_stdin() -> Result<String, Failure> {
    let mut s = String::new();
    io::stdin().read_to_string(&mut s).map_err(|e| Failure::input(format!("reading standard input: {e}")))?;
    Ok(s)
}

fn read_input(input: &InputArgs) -> Result<String, Failure> {
    match input.input.as_deref() {
        None | Some("-") => read_stdin(),
        Some(path) => fs::read_to_string(path).map_err(|e| Failure::input(format!("reading {path}: {e}"))),
    }
}

/// Returns the catalog, plus the consumed standard input when the catalog
/// came from there.
fn load_catalog(path: Option<&str>) -> Result<(Catalog, Option<String>), Failure> {
    let (text, stdin_text) = match path {
        None => return Catalog::builtin().map(|c| (c, None)).map_err(Failure::input),
        Some("-") => {
            let text = read_stdin()?;
            (text.clone(), Some(text))
        }
        Some(p) => (fs::read_to_string(p).map_err(|e| Failure::input(format!("reading {p}: {e}")))?, None),
    };
    let catalog = Catalog::parse_unverified(&text).map_err(|e| Failure::input(format!("catalog: {e}")))?;
    let verified = verify_catalog(&catalog).map_err(|e| Failure::input(format!("catalog: {e}")))?;
    if let Some(d) = verified.discrepancy {
        eprintln!("{}", json!({ "warning": d }));
    }
    Ok((catalog, stdin_text))
}

/// Runs `f` on each input graph and prints one JSON line per graph. Bad
/// lines are reported on standard error and processing continues; the
/// exit code then signals the input error.
fn for_each_graph(
    input: &InputArgs,
    preread: Option<String>,
    out: &mut impl Write,
    mut f: impl FnMut(&Graph) -> Result<Map<String, Value>, Failure>,
) -> Result<(), Failure> {
    let text = match preread {
        Some(t) => t,
        None => read_input(input)?,
    };
    let graphs: Vec<(usize, Result<Graph, String>)> = match input.format {
        Format::Edgelist => vec![(1, parse_edge_list(&text).map_err(|e| e.to_string()))],
        Format::Graph6 => {
            let padding = if input.strict_g6 { Padding::Strict } else { Padding::Lenient };
            text.lines()
                .enumerate()
                .filter(|(_, l)| !l.trim().is_empty() && !l.starts_with('#'))
                .map(|(i, l)| (i + 1, parse_graph6_with(l.trim(), padding).map_err(|e| e.to_string())))
                .collect()
        }
    };
    if graphs.is_empty() {
        return Err(Failure::input("no graphs in input"));
    }
    let mut failed = None;
    for (line, g) in graphs {
        let payload = g.map_err(Failure::input).and_then(|g| f(&g).map(|p| (g, p)));
        match payload {
            Ok((g, p)) => {
                let mut doc = report::header(&g);
                doc.extend(p);
                writeln!(out, "{}", Value::Object(doc)).map_err(Failure::input)?;
            }
            Err(mut e) => {
                if let Value::Object(m) = &mut e.body {
                    m.insert("line".into(), json!(line));
                }
                eprintln!("{}", e.body);
                failed = Some(Failure { code: e.code, body: json!({ "error": "some inputs failed" }) });
            }
        }
    }
    failed.map_or(Ok(()), Err)
}

fn census(args: &CensusArgs, out: &mut impl Write) -> Result<(), Failure> {
    if args.n_max > MAX_CENSUS_ORDER {
        return Err(Failure::input(format!("--n-max above {MAX_CENSUS_ORDER} is not supported")));
    }
    let (catalog, _) = load_catalog(args.catalog.as_deref())?;
    let girth = match (args.girth, args.girth_min) {
        (Some(k), _) => GirthConstraint::Exact(k),
        (None, Some(k)) => GirthConstraint::AtLeast(k),
        (None, None) => GirthConstraint::Any,
    };
    let constraints = Constraints { n: 0, min_degree: args.min_degree, girth, connected: !args.allow_disconnected };
    let opts = SearchOptions { jobs: args.jobs, prune_lemmas: args.prune_lemmas };
    let result = census_uniform(args.n_max, &constraints, &opts);

    let mut extra = Vec::new();
    if args.n_max > 9 {
        extra.push("experimental: orders above 9".to_string());
    }
    if args.date {
        extra.push(format!("generated: {}", chrono::Utc::now().format("%Y-%m-%d")));
    }
    out.write_all(result.to_file(&extra).as_bytes()).map_err(Failure::input)?;
    out.flush().map_err(Failure::input)?;

    match discrepancy(&result, &catalog) {
        None => Ok(()),
        Some(body) => Err(Failure { code: EXIT_DISCREPANCY, body }),
    }
}

/// Compares a census that falls under one of the two characterisations
/// with the members the catalog predicts.
fn discrepancy(census: &Census, catalog: &Catalog) -> Option<Value> {
    let c = &census.constraints;
    let characterised = c.connected
        && c.min_degree >= 2
        && matches!(c.girth, GirthConstraint::Exact(3) | GirthConstraint::Exact(5..) | GirthConstraint::AtLeast(5..));
    if !characterised {
        return None;
    }
    let expected: BTreeSet<CanonicalForm> = catalog
        .girth3
        .iter()
        .chain(&catalog.girth5plus)
        .filter(|e| e.graph.order() <= census.n_max && Constraints { n: e.graph.order(), ..*c }.admits(&e.graph))
        .map(|e| e.form.clone())
        .collect();
    let found: BTreeSet<CanonicalForm> = census.graphs().map(canonical_form).collect();
    if found == expected {
        return None;
    }
    let names = |s: &BTreeSet<CanonicalForm>| s.iter().map(|f| f.to_string()).collect::<Vec<_>>();
    Some(json!({
        "discrepancy": "census members differ from the catalog",
        "missing": names(&expected.difference(&found).cloned().collect()),
        "unexpected": names(&found.difference(&expected).cloned().collect()),
    }))
}
