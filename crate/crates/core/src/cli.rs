//! Command-line front end.
//!
//! Exit codes: 0 computed, 2 input error, 3 resource cap hit.

use std::ffi::OsString;
use std::io::Write;
use std::path::PathBuf;

use clap::{Args, Parser, Subcommand};
use serde::Serialize;

use crate::automata::Limits;
use crate::degrees::{
    self, theoretical_bounds, Decision, DegreeOptions, DegreeSolver, DegreesJson, SearchCaps,
};
use crate::error::{Error, Result};
use crate::folding::{fold, subgroup_graph};
use crate::graphs::LabeledGraph;
use crate::ideal::{self, EquationGraph, HBasis, IdealOptions, IdealPresentation, Problem};
use crate::moves::{cancellation_trace, insertion_words, KernelPath};
use crate::oracle::enumerate_kernel_loops;
use crate::words::{Alphabet, Equation, FreeWord};

#[derive(Debug, Parser)]
#[command(name = "eqideal", version, about = "Equations over free groups: ideals, degrees, foldings")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Args, Clone)]
pub struct ProblemArgs {
    /// Rank of the ambient free group.
    #[arg(short = 'n', long = "rank")]
    pub n: usize,
    /// Comma-separated generators of H; "" for the trivial subgroup.
    #[arg(long = "h", allow_hyphen_values = true)]
    pub h: String,
    /// Comma-separated values of the variables.
    #[arg(long = "g", allow_hyphen_values = true)]
    pub g: String,
    /// Emit JSON instead of text.
    #[arg(long)]
    pub json: bool,
    /// Path length cap for brute-force searches.
    #[arg(long = "cap-len", default_value_t = 16)]
    pub cap_len: usize,
    /// Length cap for enumerated insertion words.
    #[arg(long = "cap-insert", default_value_t = 6)]
    pub cap_insert: usize,
    /// State cap for intermediate automata.
    #[arg(long = "max-states", default_value_t = 400_000)]
    pub max_states: usize,
    /// Worker threads for the degree computation.
    #[arg(long, default_value_t = 1)]
    pub jobs: usize,
    /// Work in the ambient group instead of rewriting over a basis of <H, g>.
    #[arg(long)]
    pub absolute: bool,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Whether g depends on H.
    Depends(ProblemArgs),
    /// Normal generators of the ideal of g.
    Generators(ProblemArgs),
    /// Minimum degree with a witness.
    Mindeg(ProblemArgs),
    /// Whether an equation of the given degree exists ("4", or "2,1" for
    /// several variables).
    Degree {
        degree: String,
        #[command(flatten)]
        args: ProblemArgs,
    },
    /// The set of degrees realized in the ideal.
    Degset(ProblemArgs),
    /// Kernel equations of one degree up to the path length cap.
    Equations {
        degree: usize,
        #[command(flatten)]
        args: ProblemArgs,
    },
    /// Stallings folding of the subgroup graph, or of G when --g is given.
    Fold {
        #[arg(short = 'n', long = "rank")]
        n: usize,
        #[arg(long = "h", allow_hyphen_values = true)]
        h: String,
        #[arg(long = "g", allow_hyphen_values = true)]
        g: Option<String>,
        /// Write stage_%03d.dot files into this directory.
        #[arg(long = "emit-stages")]
        emit_stages: Option<PathBuf>,
        #[arg(long)]
        json: bool,
    },
    /// Cancellation moves on the path of an equation.
    Moves {
        #[command(subcommand)]
        action: MovesAction,
    },
    #[command(hide = true)]
    Oracle(ProblemArgs),
}

#[derive(Debug, Subcommand)]
pub enum MovesAction {
    /// Cancels parallel pairs until none remain, printing each move.
    Trace {
        /// Equation over h1.., x (as printed by `generators`).
        #[arg(long = "w", allow_hyphen_values = true)]
        w: String,
        #[command(flatten)]
        args: ProblemArgs,
    },
}

fn split_list(s: &str) -> Vec<&str> {
    if s.trim().is_empty() {
        Vec::new()
    } else {
        s.split(',').map(str::trim).collect()
    }
}

impl ProblemArgs {
    fn problem(&self) -> Result<Problem> {
        let g = split_list(&self.g);
        if g.is_empty() {
            return Err(Error::Arity { what: "variable values", expected: 1, got: 0 });
        }
        Problem::parse(self.n, &split_list(&self.h), &g)
    }

    fn presentation(&self) -> Result<(Problem, IdealPresentation)> {
        let p = self.problem()?;
        let pres = ideal::normal_generators_with(&p, IdealOptions { relative_ambient: !self.absolute })?;
        Ok((p, pres))
    }

    fn degree_options(&self) -> DegreeOptions {
        DegreeOptions {
            limits: Limits { max_states: self.max_states },
            jobs: self.jobs.max(1),
        }
    }
}

/// Parses `args` and runs; returns the process exit code.
pub fn run<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { 2 } else { 0 };
            let _ = if e.use_stderr() { write!(err, "{e}") } else { write!(out, "{e}") };
            return code;
        }
    };
    match execute(&cli.command, out) {
        Ok(code) => code,
        Err(e) => {
            let _ = writeln!(err, "error: {e}");
            match e {
                Error::ResourceCap(_) => 3,
                _ => 2,
            }
        }
    }
}

fn emit<T: Serialize>(out: &mut dyn Write, v: &T) -> Result<()> {
    let s = serde_json::to_string_pretty(v).expect("serializable");
    writeln!(out, "{s}").map_err(io_err)
}

fn io_err(e: std::io::Error) -> Error {
    Error::InvalidPath(format!("output: {e}"))
}

macro_rules! say {
    ($out:expr, $($t:tt)*) => {
        writeln!($out, $($t)*).map_err(io_err)?
    };
}

fn bounds_line(l: usize, d: usize) -> String {
    let (short, preserving) = theoretical_bounds(l, d);
    format!("bounds: L={l} d={d} 16L^2d={short} 32L^4d^2+16L^3d={preserving}")
}

fn execute(cmd: &Command, out: &mut dyn Write) -> Result<i32> {
    match cmd {
        Command::Depends(a) => {
            let p = a.problem()?;
            let dep = ideal::depends(&p);
            if a.json {
                emit(out, &serde_json::json!({ "depends": dep }))?;
            } else {
                say!(out, "{dep}");
            }
            Ok(0)
        }
        Command::Generators(a) => {
            let (_, pres) = a.presentation()?;
            if a.json {
                emit(out, &pres.to_json())?;
            } else {
                let basis: Vec<String> = pres.h_basis.iter().map(|w| w.to_string()).collect();
                say!(out, "h_basis: {}", basis.join(", "));
                say!(out, "L={} rank(H)={} rank(<H,g>)={}", pres.edge_count, pres.rank_h, pres.rank_join);
                say!(out, "generators: {}", pres.generators.len());
                for e in &pres.generators {
                    say!(out, "{e}");
                }
            }
            Ok(0)
        }
        Command::Mindeg(a) => {
            let (_, pres) = a.presentation()?;
            if pres.num_vars() != 1 {
                return Err(Error::Arity { what: "variables for mindeg", expected: 1, got: pres.num_vars() });
            }
            let m = degrees::min_degree_with(&pres, a.degree_options())?;
            let caps = format!("caps: automaton max_states={}", a.max_states);
            if a.json {
                emit(
                    out,
                    &serde_json::json!({
                        "d_min": m.d_min,
                        "witness": m.witness.to_string(),
                        "bounds": bounds_json(pres.edge_count, m.d_min),
                        "max_states": a.max_states,
                    }),
                )?;
            } else {
                say!(out, "d_min={}", m.d_min);
                say!(out, "witness: {}", m.witness);
                say!(out, "{}", bounds_line(pres.edge_count, m.d_min));
                say!(out, "{caps}");
            }
            Ok(0)
        }
        Command::Degree { degree, args: a } => {
            let (_, pres) = a.presentation()?;
            let dvec = parse_degree(degree)?;
            let solver = DegreeSolver::new(&pres, a.degree_options())?;
            let decision = solver.multi_degree_exists(&dvec);
            let total: usize = dvec.iter().sum();
            let answer = match &decision {
                Decision::Yes(_) => "true",
                Decision::No => "false",
                Decision::Unknown(_) => "unknown",
            };
            if a.json {
                let witness = match &decision {
                    Decision::Yes(w) => Some(w.to_string()),
                    _ => None,
                };
                emit(
                    out,
                    &serde_json::json!({
                        "degree": dvec,
                        "exists": answer,
                        "witness": witness,
                        "bounds": bounds_json(pres.edge_count, total),
                    }),
                )?;
            } else {
                say!(out, "degree {degree}: {answer}");
                match &decision {
                    Decision::Yes(w) => say!(out, "witness: {w}"),
                    Decision::Unknown(why) => say!(out, "reason: {why}"),
                    Decision::No => {}
                }
                say!(out, "{}", bounds_line(pres.edge_count, total));
                say!(out, "caps: automaton max_states={}", a.max_states);
            }
            Ok(if matches!(decision, Decision::Unknown(_)) { 3 } else { 0 })
        }
        Command::Degset(a) => {
            let (_, pres) = a.presentation()?;
            if pres.num_vars() != 1 {
                return Err(Error::Arity { what: "variables for degset", expected: 1, got: pres.num_vars() });
            }
            let opts = a.degree_options();
            let set = degrees::degree_set_with(&pres, opts)?;
            let m = degrees::min_degree_with(&pres, opts)?;
            if a.json {
                emit(out, &DegreesJson::new(&m, &set))?;
            } else {
                let base = match set.base {
                    degrees::DegreeBase::Naturals => "N",
                    degrees::DegreeBase::Evens => "2N",
                };
                let case = serde_json::to_value(set.case).expect("serializable");
                let ex: Vec<String> = set.exceptional.iter().map(|d| d.to_string()).collect();
                say!(out, "case: {}", case.as_str().unwrap_or_default());
                say!(out, "D = {base} minus {{0{}{}}}", if ex.is_empty() { "" } else { ", " }, ex.join(", "));
                say!(out, "d_min={}", m.d_min);
                say!(out, "witness: {}", m.witness);
                say!(out, "verified up to {}", set.verified_up_to);
            }
            Ok(0)
        }
        Command::Equations { degree, args: a } => {
            let (_, pres) = a.presentation()?;
            let caps = SearchCaps { path_len: a.cap_len, ..SearchCaps::default() };
            let found = degrees::equations_of_degree(&pres, *degree, caps)?;
            if a.json {
                emit(
                    out,
                    &serde_json::json!({
                        "degree": degree,
                        "bases": found.bases.iter().map(|e| e.to_string()).collect::<Vec<_>>(),
                        "path_len_cap": found.path_len_cap,
                        "theoretical_bound": found.theoretical_bound.to_string(),
                        "exhaustive": found.exhaustive,
                        "truncated": found.truncated,
                    }),
                )?;
            } else {
                for e in &found.bases {
                    say!(out, "{e}");
                }
                say!(
                    out,
                    "cap: path length {} (theoretical bound {}), exhaustive={} truncated={}",
                    found.path_len_cap,
                    found.theoretical_bound,
                    found.exhaustive,
                    found.truncated
                );
            }
            Ok(if found.truncated { 3 } else { 0 })
        }
        Command::Fold { n, h, g, emit_stages, json } => {
            let hs = split_list(h);
            let graph = match g {
                Some(g) => ideal::build_g(&Problem::parse(*n, &hs, &split_list(g))?)?,
                None => {
                    let words = parse_words(*n, &hs)?;
                    let words: Vec<_> = words.into_iter().filter(|w| !w.is_empty()).collect();
                    if words.is_empty() {
                        LabeledGraph::new(*n, 1, Vec::new(), Some(0))?
                    } else {
                        LabeledGraph::wedge_of_words(*n, &words)?
                    }
                }
            };
            fold_command(out, &graph, emit_stages.as_deref(), *json)?;
            if g.is_none() && !json {
                let core = subgroup_graph(*n, &parse_words(*n, &hs)?);
                say!(out, "subgroup graph: {} vertices, {} edges", core.num_vertices(), core.num_edges());
            }
            Ok(0)
        }
        Command::Moves { action: MovesAction::Trace { w, args: a } } => {
            let (p, pres) = a.presentation()?;
            let eg = EquationGraph::with_basis(&p, HBasis::new(p.n, &pres.h_basis))?;
            let e = Equation::parse(pres.h_basis.len(), p.num_vars(), w)?;
            let kp = KernelPath::of_equation(&eg, &e)
                .ok_or_else(|| Error::InvalidPath("equation is trivial or not in the ideal".into()))?;
            let (steps, last) = cancellation_trace(&eg, &kp)?;
            say!(out, "start: length {} degree {}", kp.len(), kp.degree(&eg));
            for s in &steps {
                say!(
                    out,
                    "cancel ({}, {}) word {} length {} -> {} degree {}{}",
                    s.pair.alpha,
                    s.pair.beta,
                    s.word,
                    s.len_before,
                    s.len_after,
                    s.degree_after,
                    if s.degree_preserving { " (degree-preserving)" } else { "" }
                );
            }
            say!(out, "end: {} length {}", last.equation(&eg), last.len());
            let mut slots = 0;
            for c in 0..last.process.couples.len() {
                let ws = insertion_words(&eg, &last, c, a.cap_insert)?;
                if !ws.is_empty() {
                    slots += 1;
                    let shown: Vec<String> = ws.iter().take(4).map(|w| w.to_string()).collect();
                    say!(out, "insert at {c}: {} word(s) up to length {}: {}", ws.len(), a.cap_insert, shown.join(" "));
                }
            }
            if slots == 0 {
                say!(out, "no insertion words up to length {}", a.cap_insert);
            }
            Ok(0)
        }
        Command::Oracle(a) => {
            let (p, pres) = a.presentation()?;
            let eg = EquationGraph::with_basis(&p, HBasis::new(p.n, &pres.h_basis))?;
            for k in enumerate_kernel_loops(&eg, a.cap_len) {
                say!(out, "{} {} {}", k.path.len(), k.degree, k.equation);
            }
            Ok(0)
        }
    }
}

fn parse_words(n: usize, ws: &[&str]) -> Result<Vec<FreeWord>> {
    ws.iter().map(|w| FreeWord::parse(Alphabet::ambient(n), w)).collect()
}

fn bounds_json(l: usize, d: usize) -> serde_json::Value {
    let (short, preserving) = theoretical_bounds(l, d);
    serde_json::json!({ "L": l, "short": short.to_string(), "degree_preserving": preserving.to_string() })
}

fn parse_degree(s: &str) -> Result<Vec<usize>> {
    s.split(',')
        .map(|t| {
            t.trim().parse::<usize>().map_err(|_| Error::Parse {
                token: t.to_string(),
                reason: "degree must be a nonnegative integer".into(),
            })
        })
        .collect()
}

fn fold_command(out: &mut dyn Write, graph: &LabeledGraph, dir: Option<&std::path::Path>, json: bool) -> Result<()> {
    let trace = fold(graph);
    if let Some(dir) = dir {
        std::fs::create_dir_all(dir).map_err(io_err)?;
        for i in 0..=trace.steps.len() {
            let dot = trace.stage_graph(i).to_dot(&format!("stage_{i:03}"));
            std::fs::write(dir.join(format!("stage_{i:03}.dot")), dot).map_err(io_err)?;
        }
    }
    if json {
        let steps: Vec<_> = trace
            .steps
            .iter()
            .map(|s| serde_json::json!({ "kept": s.kept_edge, "removed": s.removed_edge, "rank_preserving": s.rank_preserving }))
            .collect();
        emit(
            out,
            &serde_json::json!({
                "initial": { "vertices": graph.num_vertices(), "edges": graph.num_edges() },
                "steps": steps,
                "k": trace.k,
                "final": { "vertices": trace.final_graph.num_vertices(), "edges": trace.final_graph.num_edges() },
            }),
        )?;
        return Ok(());
    }
    say!(out, "initial: {} vertices, {} edges", graph.num_vertices(), graph.num_edges());
    for (i, s) in trace.steps.iter().enumerate() {
        say!(
            out,
            "step {}: edge {} onto {} ({})",
            i + 1,
            s.removed_edge,
            s.kept_edge,
            if s.rank_preserving { "rank-preserving" } else { "not rank-preserving" }
        );
    }
    say!(out, "k={}", trace.k);
    say!(out, "folded: {} vertices, {} edges", trace.final_graph.num_vertices(), trace.final_graph.num_edges());
    Ok(())
}
