// SPDX-License-Identifier: Apache-2.0

//! Command-line front end: refine and coarsen mesh files, render SVG, run
//! the demos and the scaling benchmark.

use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use adamesh::bench::{bench_scaling, doubling_factors, to_csv};
use adamesh::demo::{circle_marks, demo_circle, demo_local_coarsening, Circle};
use adamesh::io::{load_mesh, save_mesh, save_svg, SvgOptions};
use adamesh::{MarkPolicy, Mesh, Strategy};
use clap::{Args, Parser, Subcommand, ValueEnum};

#[derive(Parser)]
#[command(name = "adamesh", version, about = "Adaptive refinement and coarsening of 2D meshes")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Refine the marked elements of a mesh.
    Refine(MeshArgs),
    /// Coarsen around the marked elements of a mesh.
    Coarsen {
        #[command(flatten)]
        mesh: MeshArgs,
        /// How element marks become marks on parents or nodes.
        #[arg(long, value_enum, default_value_t = PolicyArg::Any)]
        policy: PolicyArg,
        /// Repeat until the mesh stops changing (marks are recomputed each
        /// step; not allowed with an id list).
        #[arg(long)]
        iterate: bool,
    },
    /// Run a demo and write SVG output.
    Demo {
        #[command(subcommand)]
        demo: Demo,
    },
    /// Timing benchmarks.
    Bench {
        #[command(subcommand)]
        bench: Bench,
    },
    /// Render a mesh file as SVG.
    ExportSvg {
        #[arg(long)]
        input: PathBuf,
        #[arg(long)]
        out: PathBuf,
        /// Do not draw hanging nodes.
        #[arg(long)]
        no_hanging: bool,
        /// Draw every element in the same color.
        #[arg(long)]
        no_fill: bool,
    },
}

#[derive(Args)]
struct MeshArgs {
    /// Strategy tag (t-r, t-rg, t-rgb, t-nvb, q-r, q-rg, q-rb); defaults to
    /// the one recorded in the input file.
    #[arg(long)]
    strategy: Option<Strategy>,
    /// Input mesh file; defaults to the strategy's initial mesh.
    #[arg(long)]
    input: Option<PathBuf>,
    /// `all`, a list of 1-based element ids (spaces or commas), or
    /// `circle CX CY R` for the elements crossed by a circle.
    #[arg(long, num_args = 1.., required = true, allow_negative_numbers = true)]
    marked: Vec<String>,
    #[arg(long)]
    out: PathBuf,
}

#[derive(Clone, Copy, ValueEnum)]
enum PolicyArg {
    Any,
    All,
}

#[derive(Subcommand)]
enum Demo {
    /// Refine along a circle, then coarsen everything back.
    Circle {
        #[arg(long)]
        strategy: Strategy,
        #[arg(long, default_value_t = 6)]
        steps: usize,
        #[arg(long, num_args = 3, value_names = ["CX", "CY", "R"], allow_negative_numbers = true)]
        circle: Option<Vec<f64>>,
        /// Directory for one SVG frame per step and `log.csv`.
        #[arg(long, default_value = "demo-circle")]
        out_dir: PathBuf,
    },
    /// Refine uniformly, then coarsen only inside a disc.
    Local {
        #[arg(long)]
        strategy: Strategy,
        #[arg(long, default_value_t = 5)]
        levels: usize,
        #[arg(long, default_value_t = 2)]
        rounds: usize,
        #[arg(long, num_args = 3, value_names = ["CX", "CY", "R"], allow_negative_numbers = true)]
        circle: Option<Vec<f64>>,
        #[arg(long, default_value = "local-coarsening.svg")]
        out: PathBuf,
    },
}

#[derive(Subcommand)]
enum Bench {
    /// Time all-marked coarsening steps from a uniformly refined mesh.
    Scaling {
        #[arg(long)]
        strategy: Strategy,
        #[arg(long)]
        max_level: usize,
        #[arg(long, default_value_t = 5)]
        reps: usize,
        /// CSV output; printed to stdout if omitted.
        #[arg(long)]
        out: Option<PathBuf>,
    },
}

type CliResult<T> = Result<T, String>;

#[derive(Debug, Clone, PartialEq)]
enum Marking {
    All,
    Ids(Vec<usize>),
    Circle(Circle),
}

fn parse_marking(words: &[String]) -> CliResult<Marking> {
    let tokens: Vec<&str> = words
        .iter()
        .flat_map(|w| w.split(','))
        .map(str::trim)
        .filter(|t| !t.is_empty())
        .collect();
    match tokens.as_slice() {
        ["all"] => Ok(Marking::All),
        ["circle", rest @ ..] => {
            let v: Vec<f64> = rest
                .iter()
                .map(|t| t.parse::<f64>().map_err(|_| format!("`{t}` is not a number")))
                .collect::<CliResult<_>>()?;
            match v.as_slice() {
                &[cx, cy, r] if r > 0.0 => Ok(Marking::Circle(Circle {
                    center: [cx, cy],
                    radius: r,
                })),
                _ => Err("`circle` takes CX CY R with R > 0".into()),
            }
        }
        [] => Err("no elements marked".into()),
        ids => ids
            .iter()
            .map(|t| match t.parse::<usize>() {
                Ok(0) => Err("element ids are 1-based; found 0".to_string()),
                Ok(v) => Ok(v - 1),
                Err(_) => Err(format!("`{t}` is not an element id, `all` or `circle`")),
            })
            .collect::<CliResult<Vec<_>>>()
            .map(Marking::Ids),
    }
}

fn marks(mesh: &Mesh, marking: &Marking) -> CliResult<Vec<usize>> {
    match marking {
        Marking::All => Ok((0..mesh.num_elements()).collect()),
        Marking::Ids(ids) => match ids.iter().find(|&&id| id >= mesh.num_elements()) {
            Some(id) => Err(format!(
                "element id {} is out of range (mesh has {} elements)",
                id + 1,
                mesh.num_elements()
            )),
            None => Ok(ids.clone()),
        },
        Marking::Circle(c) => Ok(circle_marks(mesh, *c)),
    }
}

fn circle_arg(v: Option<Vec<f64>>) -> CliResult<Circle> {
    match v.as_deref() {
        None => Ok(Circle::default()),
        Some(&[cx, cy, r]) if r > 0.0 => Ok(Circle {
            center: [cx, cy],
            radius: r,
        }),
        Some(_) => Err("--circle takes CX CY R with R > 0".into()),
    }
}

/// Input mesh and strategy from the arguments and the file's metadata.
fn open(args: &MeshArgs) -> CliResult<(Mesh, Strategy)> {
    let (mesh, recorded) = match &args.input {
        Some(path) => {
            let f = load_mesh(path).map_err(|e| format!("{}: {e}", path.display()))?;
            (Some(f.mesh), f.strategy)
        }
        None => (None, None),
    };
    let strategy = match (args.strategy, recorded) {
        (Some(s), Some(r)) if s != r => {
            return Err(format!(
                "--strategy {s} conflicts with strategy {r} recorded in the input file"
            ))
        }
        (Some(s), _) | (None, Some(s)) => s,
        (None, None) => return Err("no strategy given and none recorded in the input file".into()),
    };
    Ok((mesh.unwrap_or_else(|| strategy.initial_mesh()), strategy))
}

fn write(mesh: &Mesh, strategy: Strategy, path: &Path) -> CliResult<()> {
    save_mesh(mesh, Some(strategy), path).map_err(|e| e.to_string())?;
    println!(
        "{}: {} nodes, {} elements",
        path.display(),
        mesh.num_nodes(),
        mesh.num_elements()
    );
    Ok(())
}

fn create_dir(dir: &Path) -> CliResult<()> {
    fs::create_dir_all(dir).map_err(|e| format!("cannot create {}: {e}", dir.display()))
}

fn run(cli: Cli) -> CliResult<()> {
    match cli.command {
        Command::Refine(args) => {
            let (mesh, s) = open(&args)?;
            let marking = parse_marking(&args.marked)?;
            let out = s.refine(&mesh, &marks(&mesh, &marking)?).map_err(|e| e.to_string())?;
            write(&out, s, &args.out)
        }
        Command::Coarsen {
            mesh: args,
            policy,
            iterate,
        } => {
            let (mut mesh, s) = open(&args)?;
            let marking = parse_marking(&args.marked)?;
            if iterate && matches!(marking, Marking::Ids(_)) {
                return Err("--iterate needs `all` or `circle` marking; ids change between steps".into());
            }
            let policy = match policy {
                PolicyArg::Any => MarkPolicy::AnyOf,
                PolicyArg::All => MarkPolicy::AllOf,
            };
            let mut steps = 0;
            loop {
                let next = s
                    .coarsen(&mesh, &marks(&mesh, &marking)?, policy)
                    .map_err(|e| e.to_string())?;
                let changed = next != mesh;
                mesh = next;
                if !changed || !iterate {
                    steps += usize::from(changed);
                    break;
                }
                steps += 1;
            }
            println!("{steps} coarsening step(s) changed the mesh");
            write(&mesh, s, &args.out)
        }
        Command::Demo {
            demo:
                Demo::Circle {
                    strategy,
                    steps,
                    circle,
                    out_dir,
                },
        } => {
            let run = demo_circle(strategy, steps, circle_arg(circle)?).map_err(|e| e.to_string())?;
            create_dir(&out_dir)?;
            let opts = SvgOptions::default();
            let mut log = String::from("frame,phase,nodes,elements,seconds\n");
            for (i, (frame, row)) in run.frames.iter().zip(&run.log).enumerate() {
                let path = out_dir.join(format!("frame-{i:03}.svg"));
                save_svg(frame, &opts, &path).map_err(|e| format!("{}: {e}", path.display()))?;
                log.push_str(&format!(
                    "{i},{:?},{},{},{:.9}\n",
                    row.phase, row.nodes, row.elements, row.seconds
                ));
            }
            let path = out_dir.join("log.csv");
            fs::write(&path, log).map_err(|e| format!("{}: {e}", path.display()))?;
            let restored = run.frames.last().is_some_and(|m| *m == strategy.initial_mesh());
            println!(
                "{strategy}: {} refinement steps, {} coarsening steps, initial mesh restored: {restored}; frames in {}",
                run.refine_steps,
                run.coarsen_steps,
                out_dir.display()
            );
            Ok(())
        }
        Command::Demo {
            demo:
                Demo::Local {
                    strategy,
                    levels,
                    rounds,
                    circle,
                    out,
                },
        } => {
            let (fine, coarse) =
                demo_local_coarsening(strategy, levels, rounds, circle_arg(circle)?).map_err(|e| e.to_string())?;
            save_svg(&coarse, &SvgOptions::default(), &out).map_err(|e| format!("{}: {e}", out.display()))?;
            println!(
                "{strategy}: {} -> {} elements; written to {}",
                fine.num_elements(),
                coarse.num_elements(),
                out.display()
            );
            Ok(())
        }
        Command::Bench {
            bench:
                Bench::Scaling {
                    strategy,
                    max_level,
                    reps,
                    out,
                },
        } => {
            let rows = bench_scaling(strategy, max_level, reps).map_err(|e| e.to_string())?;
            let csv = to_csv(&rows);
            match out {
                Some(path) => {
                    fs::write(&path, &csv).map_err(|e| format!("{}: {e}", path.display()))?;
                    for (n, f) in doubling_factors(&rows, 1000) {
                        eprintln!("time growth per node doubling above {n} nodes: {f:.2}");
                    }
                }
                None => print!("{csv}"),
            }
            Ok(())
        }
        Command::ExportSvg {
            input,
            out,
            no_hanging,
            no_fill,
        } => {
            let mesh = load_mesh(&input).map_err(|e| format!("{}: {e}", input.display()))?.mesh;
            let opts = SvgOptions {
                show_hanging: !no_hanging,
                fill_blocks: !no_fill,
                ..SvgOptions::default()
            };
            save_svg(&mesh, &opts, &out).map_err(|e| format!("{}: {e}", out.display()))
        }
    }
}

fn main() -> ExitCode {
    match run(Cli::parse()) {
        Ok(()) => ExitCode::SUCCESS,
        Err(msg) => {
            eprintln!("error: {msg}");
            ExitCode::FAILURE
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn words(s: &str) -> Vec<String> {
        s.split_whitespace().map(String::from).collect()
    }

    #[test]
    fn marking_forms() {
        assert_eq!(parse_marking(&words("all")), Ok(Marking::All));
        assert_eq!(parse_marking(&words("1 3,4")), Ok(Marking::Ids(vec![0, 2, 3])));
        assert_eq!(
            parse_marking(&words("circle 0.5 0.5 0.25")),
            Ok(Marking::Circle(Circle {
                center: [0.5, 0.5],
                radius: 0.25
            }))
        );
        assert!(parse_marking(&words("0")).is_err());
        assert!(parse_marking(&words("circle 1 2")).is_err());
        assert!(parse_marking(&words("some")).is_err());
    }
}
