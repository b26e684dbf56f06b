use clap::{Args, Parser, Subcommand, ValueEnum};
use copart::dsl::parse_cotree;
use copart::enumerate::enumerate_cographs;
use copart::io::{from_edge_list, from_graph6_any, to_graph6};
use copart::obstructions::{
    all_oi, count_oi, family_a2, family_ap, is_minimal_obstruction, search_minimal_obstructions, TripleGoalSet,
};
use copart::oracle::{brute_force_partitionable_with, default_order, OracleBudget};
use copart::solver::{chromatic_number, min_deletions, min_q_feedback, parse_triple_list, vertex_arboricity};
use copart::strength::strength_profile;
use copart::{
    check_partition, extract_certificate, feasible_set, recognize, Certificate, Cotree, Graph, P4Witness, Triple,
};
use serde_json::{json, Value};
use std::io::Read;
use std::path::PathBuf;
use std::process::ExitCode;

#[derive(Parser)]
#[command(name = "copart", version, about = "Forest/independent-set/deletion partitions of cographs")]
struct Cli {
    /// Print aligned text instead of JSON
    #[arg(long, global = true)]
    human: bool,
    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Args, Clone)]
#[group(required = true, multiple = false)]
struct Input {
    /// graph6 or sparse6 string
    #[arg(long)]
    graph6: Option<String>,
    /// Edge-list file (`n` on the first line, then `u v` pairs); `-` reads stdin
    #[arg(long)]
    edges: Option<PathBuf>,
    /// Cotree expression such as `J(U(2*K(3)),I(2))`
    #[arg(long)]
    dsl: Option<String>,
}

#[derive(Clone, Copy, ValueEnum)]
enum Format {
    Dsl,
    Graph6,
}

#[derive(Clone, Copy, ValueEnum)]
enum Family {
    A2,
    Ap,
    Oi,
}

#[derive(Subcommand)]
enum Cmd {
    /// Decide whether the input is a cograph and print its cotree
    Recognize(Input),
    /// Print the graph6 encoding and edge list of the input
    Realize(Input),
    /// Decide whether a (p,q,r)-partition exists
    Solve {
        #[command(flatten)]
        input: Input,
        #[arg(long)]
        triple: Triple,
        /// Include a certificate when feasible
        #[arg(long)]
        certificate: bool,
    },
    /// Minimal feasible triples inside a box
    Frontier {
        #[command(flatten)]
        input: Input,
        #[arg(long = "box")]
        bounds: Triple,
    },
    /// Vertex arboricity
    Arboricity(Input),
    /// Chromatic number
    Chromatic(Input),
    /// Least number of deletions for a (p,q,r)-partition
    Mindel {
        #[command(flatten)]
        input: Input,
        #[arg(long, default_value_t = 0)]
        p: usize,
        #[arg(long, default_value_t = 0)]
        q: usize,
    },
    /// Least q with a q-colourable feedback vertex set
    IfvsQ(Input),
    /// Thin and thick clique sizes
    Strength(Input),
    /// A labelled partition witnessing a triple
    Certificate {
        #[command(flatten)]
        input: Input,
        #[arg(long)]
        triple: Triple,
    },
    /// Validate a certificate file against a graph and triple
    Check {
        #[command(flatten)]
        input: Input,
        #[arg(long)]
        triple: Triple,
        /// JSON certificate, `-` reads stdin
        #[arg(long)]
        cert: PathBuf,
    },
    /// Obstruction families, checks and searches
    #[command(subcommand)]
    Obstructions(ObCmd),
    /// List every cograph on n vertices, one per line
    Enumerate {
        #[arg(long)]
        n: usize,
        #[arg(long, value_enum, default_value_t = Format::Dsl)]
        format: Format,
    },
    /// Brute-force partition search, for any graph up to 12 vertices
    Oracle {
        #[command(flatten)]
        input: Input,
        #[arg(long)]
        triple: Triple,
        #[arg(long, default_value_t = OracleBudget::default().max_assignments)]
        max_assignments: u64,
    },
}

#[derive(Subcommand)]
enum ObCmd {
    /// Print a built-in obstruction family
    Families {
        #[arg(long, value_enum, default_value_t = Family::A2)]
        family: Family,
        #[arg(long, default_value_t = 2)]
        p: usize,
        /// Number of star forests, for the `oi` family
        #[arg(long, default_value_t = 0)]
        i: usize,
        #[arg(long, value_enum, default_value_t = Format::Dsl)]
        format: Format,
    },
    /// Decide whether the input is a minimal obstruction for a goal set
    Check {
        #[command(flatten)]
        input: Input,
        /// Triple list, e.g. `(2,0,0)` or `(1,1,0),(0,3,0)`
        #[arg(long)]
        goal: String,
    },
    /// All minimal obstructions with at most n vertices
    Search {
        #[arg(long)]
        n: usize,
        #[arg(long)]
        goal: String,
        #[arg(long, default_value_t = 1)]
        jobs: usize,
    },
    /// Count the star-forest family for (p, i) against the closed formula
    Count {
        #[arg(long)]
        p: usize,
        #[arg(long)]
        i: usize,
    },
}

enum Failure {
    Input(String),
    NotCograph(P4Witness),
}

impl<E: std::fmt::Display> From<E> for Failure {
    fn from(e: E) -> Self {
        Failure::Input(e.to_string())
    }
}

/// Payload plus verdict: `false` maps to exit code 1.
struct Reply {
    lines: Vec<Value>,
    verdict: bool,
}

impl Reply {
    fn one(v: Value) -> Self {
        Reply { lines: vec![v], verdict: true }
    }

    fn verdict(v: Value, ok: bool) -> Self {
        Reply { lines: vec![v], verdict: ok }
    }
}

fn read_source(path: &PathBuf) -> Result<String, Failure> {
    let mut text = String::new();
    if path.as_os_str() == "-" {
        std::io::stdin().read_to_string(&mut text)?;
    } else {
        text = std::fs::read_to_string(path).map_err(|e| Failure::Input(format!("{}: {e}", path.display())))?;
    }
    Ok(text)
}

impl Input {
    fn graph(&self) -> Result<Graph, Failure> {
        if let Some(s) = &self.graph6 {
            return Ok(from_graph6_any(s)?);
        }
        if let Some(path) = &self.edges {
            return Ok(from_edge_list(&read_source(path)?)?);
        }
        let expr = self.dsl.as_deref().expect("clap enforces one input");
        Ok(parse_cotree(expr)?.realize())
    }

    fn cotree(&self) -> Result<Cotree, Failure> {
        if let Some(expr) = &self.dsl {
            return Ok(parse_cotree(expr)?);
        }
        recognize(&self.graph()?).map_err(Failure::NotCograph)
    }
}

fn triple_json(t: Triple) -> Value {
    json!([t.p, t.q, t.r])
}

fn goal_set(s: &str) -> Result<TripleGoalSet, Failure> {
    Ok(TripleGoalSet::new(parse_triple_list(s)?)?)
}

fn formatted(t: &Cotree, format: Format) -> Value {
    match format {
        Format::Dsl => json!(t.to_dsl()),
        Format::Graph6 => json!(to_graph6(&t.realize())),
    }
}

fn run(cmd: Cmd) -> Result<Reply, Failure> {
    Ok(match cmd {
        Cmd::Recognize(input) => {
            let g = input.graph()?;
            match recognize(&g) {
                Ok(t) => Reply::one(json!({
                    "cograph": true,
                    "n": t.order(),
                    "dsl": t.to_dsl(),
                    "height": t.height(),
                    "canonical": t.canonical_code().to_hex(),
                })),
                Err(w) => Reply::verdict(json!({"cograph": false, "p4": w.0}), false),
            }
        }
        Cmd::Realize(input) => {
            let g = input.graph()?;
            Reply::one(json!({"n": g.order(), "graph6": to_graph6(&g), "edges": g.edges()}))
        }
        Cmd::Solve { input, triple, certificate } => {
            let t = input.cotree()?;
            let feasible = feasible_set(&t, triple).contains(triple);
            let mut out = json!({"triple": triple_json(triple), "feasible": feasible});
            if feasible && certificate {
                out["certificate"] = extract_certificate(&t, triple)?.to_json()["labels"].clone();
            }
            Reply::verdict(out, feasible)
        }
        Cmd::Frontier { input, bounds } => Reply::one(feasible_set(&input.cotree()?, bounds).to_json()),
        Cmd::Arboricity(input) => Reply::one(json!({"rho": vertex_arboricity(&input.cotree()?)})),
        Cmd::Chromatic(input) => Reply::one(json!({"chi": chromatic_number(&input.cotree()?)})),
        Cmd::Mindel { input, p, q } => Reply::one(json!({"p": p, "q": q, "r": min_deletions(&input.cotree()?, p, q)})),
        Cmd::IfvsQ(input) => Reply::one(json!({"q": min_q_feedback(&input.cotree()?)})),
        Cmd::Strength(input) => {
            let s = strength_profile(&input.cotree()?)?;
            Reply::one(json!({
                "omega": s.omega,
                "tau": s.tau,
                "strength": s.strength,
                "q": s.strength.saturating_sub(2),
            }))
        }
        Cmd::Certificate { input, triple } => match extract_certificate(&input.cotree()?, triple) {
            Ok(cert) => Reply::one(cert.to_json()),
            Err(copart::SolveError::Infeasible(_)) => {
                Reply::verdict(json!({"triple": triple_json(triple), "feasible": false}), false)
            }
            Err(e) => return Err(e.into()),
        },
        Cmd::Check { input, triple, cert } => {
            let g = input.graph()?;
            let value: Value = serde_json::from_str(&read_source(&cert)?)?;
            let cert = Certificate::from_json(&value)?;
            let valid = check_partition(&g, &cert, triple)?;
            Reply::verdict(json!({"triple": triple_json(triple), "valid": valid}), valid)
        }
        Cmd::Obstructions(ob) => run_obstructions(ob)?,
        Cmd::Enumerate { n, format } => {
            Reply { lines: enumerate_cographs(n).map(|t| formatted(&t, format)).collect(), verdict: true }
        }
        Cmd::Oracle { input, triple, max_assignments } => {
            let g = input.graph()?;
            let budget = OracleBudget { max_assignments, ..OracleBudget::default() };
            let feasible = brute_force_partitionable_with(&g, triple, budget, &default_order(&g))?;
            Reply::verdict(json!({"triple": triple_json(triple), "feasible": feasible}), feasible)
        }
    })
}

fn run_obstructions(cmd: ObCmd) -> Result<Reply, Failure> {
    Ok(match cmd {
        ObCmd::Families { family, p, i, format } => {
            let trees = match family {
                Family::A2 => family_a2(),
                Family::Ap => family_ap(p)?,
                Family::Oi => all_oi(p, i)?,
            };
            Reply { lines: trees.iter().map(|t| formatted(t, format)).collect(), verdict: true }
        }
        ObCmd::Check { input, goal } => {
            let report = is_minimal_obstruction(&input.cotree()?, &goal_set(&goal)?);
            let minimal = report.is_minimal;
            Reply::verdict(report.to_json(), minimal)
        }
        ObCmd::Search { n, goal, jobs } => {
            let found = search_minimal_obstructions(n, &goal_set(&goal)?, Some(jobs.max(1)))?;
            Reply { lines: found.iter().map(|r| r.to_json()).collect(), verdict: true }
        }
        ObCmd::Count { p, i } => Reply::one(serde_json::to_value(count_oi(p, i)?)?),
    })
}

fn human(v: &Value) -> String {
    match v {
        Value::Object(map) => {
            let width = map.keys().map(String::len).max().unwrap_or(0);
            map.iter().map(|(k, x)| format!("{k:<width$}  {}", human_scalar(x))).collect::<Vec<_>>().join("\n")
        }
        other => human_scalar(other),
    }
}

fn human_scalar(v: &Value) -> String {
    match v {
        Value::String(s) => s.clone(),
        other => other.to_string(),
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli.cmd) {
        Ok(reply) => {
            for line in &reply.lines {
                if cli.human {
                    println!("{}", human(line));
                } else {
                    println!("{line}");
                }
            }
            ExitCode::from(if reply.verdict { 0 } else { 1 })
        }
        Err(Failure::Input(msg)) => {
            eprintln!("{}", json!({"error": msg}));
            ExitCode::from(2)
        }
        Err(Failure::NotCograph(w)) => {
            eprintln!("{}", json!({"error": format!("input is not a cograph: vertices {w} induce a P4"), "p4": w.0}));
            ExitCode::from(2)
        }
    }
}
