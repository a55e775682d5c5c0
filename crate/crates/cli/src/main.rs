//! `cdc`: command-line front end for constructible directed complexes.

mod check;
mod io;

use anyhow::anyhow;
use cdc_core::chain::adc_of;
use cdc_core::constructions::{gray_product, j_dual, join, suspension, DualitySet, Generator};
use cdc_core::document::{to_dot, Document};
use cdc_core::molecules::{Budget, Side};
use cdc_core::omega::enumerate_molecules;
use cdc_core::rewriting::{cell, merge_to_atom, standard_merger, substitute};
use cdc_core::topology::{boundary_set, homology, nerve};
use cdc_core::{fixtures, Error};
use clap::{Parser, Subcommand, ValueEnum};
use io::{emit_complex, emit_json, load, Outcome};
use std::collections::BTreeSet;
use std::process::ExitCode;

#[derive(Parser)]
#[command(
    name = "cdc",
    version,
    about = "Constructible directed complexes: generate, check, rewrite, measure"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Emit a generator shape or a named fixture as a document.
    Generate {
        #[arg(value_enum)]
        kind: Kind,
        /// Sizes for globe/path/cube/simplex/atom2, or the fixture name.
        params: Vec<String>,
    },
    /// Parse and validate a document.
    Validate { file: String },
    /// Decide a property of the complex or of its declared subset.
    Check {
        #[arg(long, value_enum)]
        property: check::Property,
        file: String,
    },
    /// The `k`-boundary of the declared subset, as a subset document.
    Boundary {
        #[arg(long, value_enum, default_value = "both")]
        sign: SignArg,
        /// Defaults to one below the dimension of the subset.
        #[arg(long)]
        k: Option<usize>,
        file: String,
    },
    /// Merge a constructible molecule down to an atom.
    Merge {
        #[arg(
            long,
            conflicts_with = "standard",
            required_unless_present = "standard"
        )]
        to_atom: bool,
        /// Merge and rename onto the globe of the same dimension.
        #[arg(long)]
        standard: bool,
        /// Print the merger steps alongside the result.
        #[arg(long)]
        trace: bool,
        file: String,
    },
    /// Replace the submolecule `v` of `u` by `w`.
    Substitute {
        file: String,
        /// Document whose element ids pick the submolecule inside `file`.
        v: String,
        w: String,
    },
    /// A new top cell with input `u` and output `v`.
    Cell { u: String, v: String },
    /// Lax Gray product.
    Product { a: String, b: String },
    /// Join of two complexes
    Join { a: String, b: String },
    /// Suspension: every dimension shifts up past two new points
    Suspend { file: String },
    /// Flip signs of covers whose upper element has a dimension in `J`.
    Dual {
        /// `odd`, `even`, `all`, or a comma-separated list of dimensions.
        #[arg(long = "J", short = 'J')]
        j: String,
        file: String,
    },
    /// The augmented directed complex of the complex.
    Adc { file: String },
    /// f-vector and Euler characteristic of the nerve of the subset.
    Nerve {
        /// Also list simplices as tuples of ids.
        #[arg(long)]
        simplices: bool,
        file: String,
    },
    /// Reduced integer homology of the nerve of the subset.
    Homology {
        /// Use the boundary of the subset instead.
        #[arg(long)]
        boundary: bool,
        file: String,
    },
    /// List the molecules generated from atoms by gluing.
    Molecules {
        #[arg(long, required = true)]
        enumerate: bool,
        /// Composite limit; defaults to the search budget.
        #[arg(long)]
        budget: Option<usize>,
        file: String,
    },
    /// Graphviz rendering of the Hasse diagram.
    Dot { file: String },
}

#[derive(Clone, Copy, ValueEnum)]
enum Kind {
    Point,
    Globe,
    Path,
    Atom2,
    Cube,
    Simplex,
    Fixture,
}

#[derive(Clone, Copy, ValueEnum)]
enum SignArg {
    #[value(name = "-", alias = "minus", alias = "input")]
    Minus,
    #[value(name = "+", alias = "plus", alias = "output")]
    Plus,
    Both,
}

fn number(params: &[String], i: usize, what: &str) -> anyhow::Result<usize> {
    let raw = params
        .get(i)
        .ok_or_else(|| anyhow!("missing parameter {what}"))?;
    raw.parse()
        .map_err(|_| anyhow!("{what} must be a natural number, got {raw:?}"))
}

fn generate(kind: Kind, params: &[String]) -> anyhow::Result<Outcome> {
    let g = match kind {
        Kind::Point => Generator::Point,
        Kind::Globe => Generator::Globe(number(params, 0, "n")?),
        Kind::Path => Generator::Path(number(params, 0, "k")?),
        Kind::Atom2 => Generator::Atom2(number(params, 0, "n")?, number(params, 1, "m")?),
        Kind::Cube => Generator::Cube(number(params, 0, "n")?),
        Kind::Simplex => Generator::Simplex(number(params, 0, "n")?),
        Kind::Fixture => {
            let name = params
                .first()
                .ok_or_else(|| anyhow!("missing fixture name"))?;
            let c = fixtures::by_name(name).ok_or_else(|| {
                let known: Vec<String> = fixtures::corpus().into_iter().map(|f| f.name).collect();
                anyhow!("unknown fixture {name:?}; known: {}", known.join(", "))
            })?;
            return Ok(emit_complex(&c));
        }
    };
    Ok(emit_complex(&g.build()?))
}

fn duality(spec: &str) -> anyhow::Result<DualitySet> {
    Ok(match spec {
        "odd" => DualitySet::Odd,
        "even" => DualitySet::Even,
        "all" => DualitySet::All,
        list => DualitySet::Explicit(
            list.split(',')
                .map(|d| {
                    d.trim()
                        .parse::<usize>()
                        .map_err(|_| anyhow!("bad dimension {d:?} in --J"))
                })
                .collect::<anyhow::Result<BTreeSet<usize>>>()?,
        ),
    })
}

fn run(cli: Cli) -> anyhow::Result<Outcome> {
    match cli.command {
        Command::Generate { kind, params } => generate(kind, &params),
        Command::Validate { file } => {
            let (c, u) = load(&file)?;
            Ok(emit_json(serde_json::json!({
                "valid": true,
                "elements": c.len(),
                "dimension": c.dimension(),
                "dim_counts": c.dim_counts(),
                "oriented_thin": c.is_oriented_thin(),
                "subset_closed": c.is_closed(&u),
            })))
        }
        Command::Check { property, file } => check::run(property, &file),
        Command::Boundary { sign, k, file } => {
            let (c, u) = load(&file)?;
            c.require_closed(&u)?;
            let side = match sign {
                SignArg::Minus => Side::Input,
                SignArg::Plus => Side::Output,
                SignArg::Both => Side::Both,
            };
            let b = c.boundary_spec(&u, cdc_core::molecules::BoundarySpec { side, k });
            Ok(Outcome::json(Document::with_subset(&c, &b).to_json()))
        }
        Command::Merge {
            standard,
            trace,
            file,
            ..
        } => {
            let (c, u) = load(&file)?;
            let (c, _) = c.restrict(&u)?;
            let (result, steps) = if standard {
                let seq = standard_merger(&c)?;
                (seq.result().clone(), seq.to_json())
            } else {
                let (result, seq) = merge_to_atom(&c)?;
                (result, seq.to_json())
            };
            if trace {
                let doc = serde_json::to_value(Document::from_complex(&result))?;
                Ok(emit_json(
                    serde_json::json!({ "complex": doc, "steps": steps }),
                ))
            } else {
                Ok(emit_complex(&result))
            }
        }
        Command::Substitute { file, v, w } => {
            let (c, _) = load(&file)?;
            let (vc, _) = load(&v)?;
            let (wc, _) = load(&w)?;
            let ids: Vec<&str> = vc.ids().iter().map(String::as_str).collect();
            let sub = c.set_of_ids(&ids)?;
            Ok(emit_complex(&substitute(&c, &sub, &wc)?.complex))
        }
        Command::Cell { u, v } => {
            let (uc, _) = load(&u)?;
            let (vc, _) = load(&v)?;
            Ok(emit_complex(&cell(&uc, &vc)?))
        }
        Command::Product { a, b } => Ok(emit_complex(&gray_product(&load(&a)?.0, &load(&b)?.0)?)),
        Command::Join { a, b } => Ok(emit_complex(&join(&load(&a)?.0, &load(&b)?.0)?)),
        Command::Suspend { file } => Ok(emit_complex(&suspension(&load(&file)?.0)?)),
        Command::Dual { j, file } => Ok(emit_complex(&j_dual(&load(&file)?.0, &duality(&j)?)?)),
        Command::Adc { file } => {
            let (c, _) = load(&file)?;
            Ok(emit_json(serde_json::to_value(adc_of(&c)?)?))
        }
        Command::Nerve { simplices, file } => {
            let (c, u) = load(&file)?;
            let s = nerve(&c, &u)?;
            let mut out = serde_json::json!({
                "f_vector": s.f_vector(),
                "euler_characteristic": s.euler_characteristic(),
            });
            if simplices {
                let named: Vec<Vec<Vec<&str>>> = s
                    .simplices
                    .iter()
                    .map(|level| {
                        level
                            .iter()
                            .map(|t| t.iter().map(|&i| s.vertices[i].as_str()).collect())
                            .collect()
                    })
                    .collect();
                out["simplices"] = serde_json::to_value(named)?;
            }
            Ok(emit_json(out))
        }
        Command::Homology { boundary, file } => {
            let (c, u) = load(&file)?;
            let u = if boundary {
                c.require_closed(&u)?;
                boundary_set(&c, &u)
            } else {
                u
            };
            Ok(emit_json(serde_json::to_value(homology(&nerve(&c, &u)?)?)?))
        }
        Command::Molecules { budget, file, .. } => {
            let (c, _) = load(&file)?;
            let mut b = Budget::default();
            if let Some(n) = budget {
                b.composites = n;
            }
            let found = enumerate_molecules(&c, b);
            let list: Vec<serde_json::Value> = found
                .molecules
                .iter()
                .map(|(m, tree)| serde_json::json!({ "elements": c.sorted_ids(m), "tree": tree.to_json(&c) }))
                .collect();
            let out = emit_json(serde_json::json!({
                "count": list.len(),
                "truncated": found.truncated,
                "composites_tried": found.composites_tried,
                "molecules": list,
            }));
            Ok(if found.truncated {
                out.with_code(3)
            } else {
                out
            })
        }
        Command::Dot { file } => Ok(Outcome::text(to_dot(&load(&file)?.0))),
    }
}

fn exit_code_for(err: &anyhow::Error) -> u8 {
    match err.downcast_ref::<Error>() {
        Some(Error::BudgetExceeded(_)) => 3,
        _ => 2,
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(out) => {
            print!("{}", out.stdout);
            ExitCode::from(out.code)
        }
        Err(err) => {
            eprintln!("error: {err:#}");
            ExitCode::from(exit_code_for(&err))
        }
    }
}
