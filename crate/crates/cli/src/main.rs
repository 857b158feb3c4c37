//! Command-line front end.
//!
//! Exit codes: 0 success, 1 negative answer, 2 usage, input or validation error.

use std::collections::BTreeSet;
use std::fmt::Write as _;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use trickle::confluence::{
    bounded_strata, random_piling, random_strategy_check, verify, DEFAULT_MAX_EXP, DEFAULT_MAX_SUPPORT,
};
use trickle::examples::{cactus, cycle_edges, dual_cactus_s3, gar3, graph_product, path_edges, uniform_product};
use trickle::garside::{
    atom_left_divisors, atom_right_divisors, garside_element, is_garside, is_pregarside_graph, lcm_atoms,
    square_free, PositiveElement,
};
use trickle::graph::vertex;
use trickle::graph_file::{load, to_json};
use trickle::parabolic::ParabolicSubgraph;
use trickle::thompson::{eval_word, f_graph};
use trickle::tits::{format_syllabic, m_reduce, parse_syllabic, syllabic_reduce, DEFAULT_ORBIT_BOUND};
use trickle::virtual_cactus::{kjn_graph, vjn_encode};
use trickle::{is_finite, parse_word, validate, FiniteGraph, GroupElement, Mu, TrickleGraph};

#[derive(Parser)]
#[command(name = "trickle", version, about = "Trickle groups: normal forms, word problems and structure")]
struct Cli {
    /// Replace the vertex ranking by this comma-separated list, smallest first.
    #[arg(long, global = true, value_name = "V1,V2,...")]
    order_override: Option<String>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Check the trickle-graph axioms.
    Validate { graph: PathBuf },
    /// Print the normal form of a word.
    Nf { graph: PathBuf, word: String },
    /// Decide whether two words are equal.
    Eq { graph: PathBuf, w1: String, w2: String },
    /// Decide finiteness and print the order.
    Order { graph: PathBuf },
    /// Decide membership in the parabolic subgroup on a vertex set.
    Member {
        graph: PathBuf,
        #[arg(long, value_name = "V1,V2,...")]
        vertices: String,
        word: String,
    },
    /// Reduce a syllabic word.
    TitsReduce {
        graph: PathBuf,
        word: String,
        /// Use II-orbit search instead of the piling engine.
        #[arg(long)]
        search: bool,
        #[arg(long, default_value_t = DEFAULT_ORBIT_BOUND)]
        bound: usize,
    },
    /// Print preGarside and Garside data.
    Garside { graph: PathBuf },
    /// Atom divisors of a positive word.
    Divisors {
        graph: PathBuf,
        word: String,
        #[arg(long, value_enum, default_value_t = Side::Left)]
        side: Side,
    },
    /// The left lcm of a set of atoms.
    Lcm {
        graph: PathBuf,
        #[arg(long, value_name = "V1,V2,...")]
        atoms: String,
    },
    /// Resolve bounded critical pairs and compare random rewriting strategies.
    Confluence {
        graph: PathBuf,
        #[arg(long, default_value_t = DEFAULT_MAX_SUPPORT)]
        max_support: usize,
        #[arg(long, default_value_t = DEFAULT_MAX_EXP)]
        max_exp: i64,
        /// Random pilings, each normalized with 20 random strategies.
        #[arg(long, default_value_t = 1000)]
        samples: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
    },
    /// Emit the JSON of a built-in graph family.
    Example {
        #[arg(value_enum)]
        family: Family,
        #[arg(long, default_value_t = 3)]
        n: usize,
        /// Base graph for raag, racg and gp; a path on n vertices otherwise.
        #[arg(long)]
        graph: Option<PathBuf>,
        /// Use a cycle on n vertices as the base graph.
        #[arg(long)]
        cycle: bool,
    },
    /// Virtual cactus group queries.
    Vjn {
        #[command(subcommand)]
        command: VjnCommand,
    },
    /// Thompson's group F.
    F {
        #[command(subcommand)]
        command: FCommand,
    },
}

#[derive(Subcommand)]
enum VjnCommand {
    /// Decide equality of two words in `x[p,q]` and `r<i>`.
    Eq {
        #[arg(long)]
        n: usize,
        w1: String,
        w2: String,
    },
    /// Print the kernel normal form and the permutation.
    Encode {
        #[arg(long)]
        n: usize,
        word: String,
    },
}

#[derive(Subcommand)]
enum FCommand {
    Nf { word: String },
    Eq { w1: String, w2: String },
    /// Evaluate the piecewise-linear action of a word at a dyadic point.
    Eval { word: String, point: String },
}

#[derive(Clone, Copy, ValueEnum)]
enum Side {
    Left,
    Right,
}

#[derive(Clone, Copy, ValueEnum)]
enum Family {
    Raag,
    Racg,
    Gp,
    Cactus,
    Cstar,
    Gar3,
}

/// Outcome of a subcommand: exit code and report.
struct Out {
    code: u8,
    text: String,
}

impl Out {
    fn ok(text: impl Into<String>) -> Out {
        Out { code: 0, text: text.into() }
    }

    fn answer(yes: bool, text: impl Into<String>) -> Out {
        Out {
            code: if yes { 0 } else { 1 },
            text: text.into(),
        }
    }
}

type Res = Result<Out, String>;

fn err(e: trickle::Error) -> String {
    e.to_string()
}

fn graph(path: &PathBuf, order: &Option<String>) -> Result<FiniteGraph, String> {
    let g = load(path).map_err(err)?;
    match order {
        None => Ok(g),
        Some(list) => {
            g.with_ranking(&split_list(list)).map_err(err)
        }
    }
}

fn ranking_line(g: &FiniteGraph) -> String {
    let names: Vec<&str> = g.ranking().into_iter().map(|v| g.name(v)).collect();
    format!("ranking (ascending): {}", names.join(" "))
}

/// Splits at commas outside brackets and parentheses, so `[1,2],[2,3]` has two items.
fn split_list(list: &str) -> Vec<&str> {
    let mut out = Vec::new();
    let (mut depth, mut start) = (0i32, 0);
    for (i, c) in list.char_indices() {
        match c {
            '[' | '(' => depth += 1,
            ']' | ')' => depth -= 1,
            ',' if depth == 0 => {
                out.push(&list[start..i]);
                start = i + 1;
            }
            _ => {}
        }
    }
    out.push(&list[start..]);
    out.into_iter().map(str::trim).filter(|s| !s.is_empty()).collect()
}

fn vertex_set(g: &FiniteGraph, list: &str) -> Result<BTreeSet<trickle::VertexId>, String> {
    split_list(list).into_iter().map(|s| vertex(g, s).map_err(err)).collect()
}

fn run(cli: Cli) -> Res {
    let order = &cli.order_override;
    match cli.command {
        Command::Validate { graph: path } => {
            let g = graph(&path, order)?;
            let r = validate(&g);
            Ok(Out {
                code: if r.is_valid() { 0 } else { 2 },
                text: format!("{}\n{r}", ranking_line(&g)),
            })
        }
        Command::Nf { graph: path, word } => {
            let g = graph(&path, order)?;
            let e = GroupElement::parse(&g, &word).map_err(err)?;
            Ok(Out::ok(format!("{}\n{e}", ranking_line(&g))))
        }
        Command::Eq { graph: path, w1, w2 } => {
            let g = graph(&path, order)?;
            let a = GroupElement::parse(&g, &w1).map_err(err)?;
            let b = GroupElement::parse(&g, &w2).map_err(err)?;
            Ok(if a == b { Out::ok("equal") } else { Out::answer(false, "not equal") })
        }
        Command::Order { graph: path } => {
            let g = graph(&path, order)?;
            Ok(Out::ok(is_finite(&g).to_string()))
        }
        Command::Member { graph: path, vertices, word } => {
            let g = graph(&path, order)?;
            let p = ParabolicSubgraph::new(&g, vertex_set(&g, &vertices)?).map_err(err)?;
            let e = GroupElement::parse(&g, &word).map_err(err)?;
            let yes = p.contains_element(&e);
            Ok(Out::answer(yes, format!("{}\nnf: {e}", if yes { "member" } else { "not member" })))
        }
        Command::TitsReduce { graph: path, word, search, bound } => {
            let g = graph(&path, order)?;
            let w = parse_syllabic(&g, &word).map_err(err)?;
            let reduced = if search {
                m_reduce(&g, &w, bound)
                    .map_err(err)?
                    .ok_or_else(|| format!("orbit exceeded {bound} words"))?
            } else {
                syllabic_reduce(&g, &w).map_err(err)?
            };
            Ok(Out::ok(format!("{}\n{}", ranking_line(&g), format_syllabic(&g, &reduced))))
        }
        Command::Garside { graph: path } => {
            let g = graph(&path, order)?;
            let mut text = ranking_line(&g);
            if !is_pregarside_graph(&g) {
                text.push_str("\npreGarside: no (some mu is finite)");
                return Ok(Out::ok(text));
            }
            let garside = is_garside(&g).map_err(err)?;
            write!(text, "\npreGarside: yes\nGarside: {}", if garside { "yes" } else { "no" }).unwrap();
            if let Ok(delta) = garside_element(&g) {
                write!(text, "\nDelta: {delta}").unwrap();
                let sf = square_free(&g).map_err(err)?;
                let top = sf.iter().map(|h| h.norm()).max().unwrap_or(0);
                for p in 0..=top {
                    let layer: Vec<String> = sf.iter().filter(|h| h.norm() == p).map(|h| h.to_string()).collect();
                    write!(text, "\nSF_{p} ({}): {}", layer.len(), layer.join(", ")).unwrap();
                }
            }
            Ok(Out::ok(text))
        }
        Command::Divisors { graph: path, word, side } => {
            let g = graph(&path, order)?;
            let e = PositiveElement::parse(&g, &word).map_err(err)?;
            let divs = match side {
                Side::Left => atom_left_divisors(&e),
                Side::Right => atom_right_divisors(&e).map_err(err)?,
            };
            let names: Vec<String> = divs.iter().map(|v| g.vertex_name(v)).collect();
            Ok(Out::ok(format!("{}\n{{{}}}", ranking_line(&g), names.join(", "))))
        }
        Command::Lcm { graph: path, atoms } => {
            let g = graph(&path, order)?;
            let l = lcm_atoms(&g, &vertex_set(&g, &atoms)?).map_err(err)?;
            Ok(Out::ok(format!("{}\n{l}", ranking_line(&g))))
        }
        Command::Confluence { graph: path, max_support, max_exp, samples, seed } => {
            let g = graph(&path, order)?;
            let r = verify(&g, max_support, max_exp).map_err(err)?;
            let mut text = format!(
                "strata: {}\ncritical pairs: {} (C1 {}, C2 {}, C3 {})\nunresolved: {}",
                r.strata,
                r.checked(),
                r.c1,
                r.c2,
                r.c3,
                r.failed
            );
            for f in &r.failures {
                write!(text, "\n  {f}").unwrap();
            }
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            let pool = bounded_strata(&g, max_support, max_exp).map_err(err)?;
            let pilings: Vec<_> = (0..samples)
                .map(|i| random_piling(&pool, 1 + i % 5, &mut rng))
                .collect();
            let strategies = random_strategy_check(&g, &pilings, 20, &mut rng).map_err(err)?;
            match &strategies {
                None => write!(text, "\nrandom strategies: {samples} pilings x 20 agree").unwrap(),
                Some((p, a, b)) => write!(text, "\nrandom strategies: {p} reaches {a} and {b}").unwrap(),
            }
            let ok = r.is_confluent() && strategies.is_none();
            write!(text, "\n{}", if ok { "confluent within bounds" } else { "NOT confluent" }).unwrap();
            Ok(Out::answer(ok, text))
        }
        Command::Example { family, n, graph: base, cycle } => {
            let edges = if cycle { cycle_edges(n) } else { path_edges(n) };
            let g = match family {
                Family::Cactus => cactus(n).map_err(err)?,
                Family::Cstar => dual_cactus_s3(),
                Family::Gar3 => gar3(),
                Family::Raag | Family::Racg | Family::Gp => {
                    let forced = match family {
                        Family::Raag => Some(Mu::Infinite),
                        Family::Racg => Some(Mu::Finite(2)),
                        _ => None,
                    };
                    match (base, forced) {
                        (Some(path), _) => {
                            let b = load(&path).map_err(err)?;
                            let vs: Vec<(&str, Mu)> =
                                b.ids().map(|v| (b.name(v), forced.unwrap_or_else(|| b.mu(&v)))).collect();
                            let es: Vec<(&str, &str)> =
                                b.edges().into_iter().map(|(x, y)| (b.name(x), b.name(y))).collect();
                            graph_product(&vs, &es).map_err(err)?
                        }
                        (None, Some(mu)) => uniform_product(n, &edges, mu).map_err(err)?,
                        (None, None) => return Err("gp needs --graph with the base graph".into()),
                    }
                }
            };
            Ok(Out::ok(to_json(&g)))
        }
        Command::Vjn { command } => match command {
            VjnCommand::Eq { n, w1, w2 } => {
                let g = kjn_graph(n).map_err(err)?;
                let a = vjn_encode(&g, &w1).map_err(err)?;
                let b = vjn_encode(&g, &w2).map_err(err)?;
                Ok(if a == b { Out::ok("equal") } else { Out::answer(false, "not equal") })
            }
            VjnCommand::Encode { n, word } => {
                let g = kjn_graph(n).map_err(err)?;
                Ok(Out::ok(vjn_encode(&g, &word).map_err(err)?.to_string()))
            }
        },
        Command::F { command } => {
            let g = f_graph();
            match command {
                FCommand::Nf { word } => {
                    let e = GroupElement::parse(&g, &word).map_err(err)?;
                    Ok(Out::ok(e.to_string()))
                }
                FCommand::Eq { w1, w2 } => {
                    let a = GroupElement::parse(&g, &w1).map_err(err)?;
                    let b = GroupElement::parse(&g, &w2).map_err(err)?;
                    Ok(if a == b { Out::ok("equal") } else { Out::answer(false, "not equal") })
                }
                FCommand::Eval { word, point } => {
                    let w = parse_word(&g, &word).map_err(err)?;
                    let t = point.parse().map_err(|e| format!("{e}"))?;
                    Ok(Out::ok(eval_word(&w, t).to_string()))
                }
            }
        }
    }
}

fn main() -> ExitCode {
    match run(Cli::parse()) {
        Ok(out) => {
            println!("{}", out.text);
            ExitCode::from(out.code)
        }
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(2)
        }
    }
}
