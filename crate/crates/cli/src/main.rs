//! Batch command-line front end for the projline library. Every subcommand
//! maps onto exactly one library operation; the CLI only parses, formats and
//! sets exit codes: 0 on success, 1 on a domain error (the library's error
//! name goes to stderr), 2 on usage errors.

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand};

use projline_core::abstract_line::{
    build_coordinate_model, ArrowRepr, CoordinateModel, FiniteLine, PointId, VerifyOptions,
};
use projline_core::bundles::{affine_cocycle, gf3_all_permutations, gf3_unique_structure};
use projline_core::coordinate_line::{compose, cross_ratio, Arrow, ProjPoint};
use projline_core::fundamental::{transport_projectivity, uniqueness_census};
use projline_core::moebius::enumerate_pgl;
use projline_core::punctured::{affine_combine, vector_add, vector_scale};
use projline_core::scalars::FieldContext;
use projline_core::Error;

#[derive(Parser)]
#[command(
    name = "projline",
    version,
    about = "Exact projective lines: models, axiom checking, projectivities, PGL, cocycles"
)]
struct Cli {
    /// Prime modulus selecting the field GF(p).
    #[arg(short = 'p', long = "prime", global = true)]
    prime: Option<u64>,

    /// Work over the exact rationals (crossratio and compose only).
    #[arg(long, global = true)]
    rational: bool,

    /// Emit machine-readable JSON instead of text.
    #[arg(long, global = true)]
    json: bool,

    /// Seed for sampled workloads; accepted everywhere for reproducible
    /// scripting, though the current subcommands are fully deterministic.
    #[arg(long, global = true, default_value_t = 0)]
    seed: u64,

    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Build the coordinate model over GF(p) and write its structure file.
    #[command(name = "build-model")]
    BuildModel {
        /// Output path for the structure file.
        #[arg(short = 'o', long = "output")]
        output: PathBuf,
    },
    /// Check a structure file against every axiom group.
    Verify { file: PathBuf },
    /// The cross ratio (A,B;C,D) of four points, given as "a1:a2" (or the
    /// affine shorthand "x" for "1:x").
    Crossratio {
        a: String,
        b: String,
        c: String,
        d: String,
    },
    /// Compose arrows left to right. Labeled arrows are "dir,src,dst";
    /// scalar loops are "lambda@point".
    Compose {
        #[arg(long = "arrow", required = true)]
        arrows: Vec<String>,
    },
    /// The unique projectivity carrying one point triple to another.
    #[command(name = "find-projectivity")]
    FindProjectivity {
        src: PathBuf,
        dst: PathBuf,
        /// Source triple "A,B,C" (point names from the source file).
        #[arg(long)]
        triple: String,
        /// Target triple "A',B',C'".
        #[arg(long)]
        to: String,
    },
    /// Count the functorial bijections extending a triple assignment.
    Census {
        src: PathBuf,
        dst: PathBuf,
        #[arg(long)]
        triple: String,
        #[arg(long)]
        to: String,
    },
    /// Enumerate PGL(2,p).
    Pgl {
        /// Print only the group order (the default).
        #[arg(long)]
        count: bool,
        /// Print one canonical matrix per line.
        #[arg(long)]
        list: bool,
        /// Print the multiplication table as indices into the list order.
        #[arg(long)]
        cayley: bool,
    },
    /// Affine combinations on the line punctured at one point.
    Affine {
        /// The removed point.
        #[arg(long)]
        puncture: String,
        /// Terms "w1:P1,w2:P2,..."; the weights must sum to 1.
        #[arg(long)]
        combine: String,
    },
    /// Vector arithmetic on the punctured line with a chosen zero.
    #[command(name = "vec")]
    VecOp {
        #[arg(long)]
        puncture: String,
        #[arg(long)]
        zero: String,
        /// Add two points.
        #[arg(long, num_args = 2, value_names = ["X", "Y"])]
        add: Option<Vec<String>>,
        /// Scale a point: a scalar followed by a point.
        #[arg(long, num_args = 2, value_names = ["LAMBDA", "X"])]
        scale: Option<Vec<String>>,
    },
    /// The affine-bundle transition between two chart sections over a
    /// common puncture; prints translation t and slope s.
    Cocycle {
        #[arg(long)]
        base: String,
        /// First section "B,C".
        #[arg(long)]
        from: String,
        /// Second section "B',C'".
        #[arg(long)]
        to: String,
    },
    /// The 4-point line over GF(3): uniqueness search and permutation check.
    #[command(name = "gf3-demo")]
    Gf3Demo,
}

enum CliError {
    Usage(String),
    Domain(Error),
}

impl From<Error> for CliError {
    fn from(e: Error) -> Self {
        CliError::Domain(e)
    }
}

type CliResult<T> = Result<T, CliError>;

fn usage(msg: impl Into<String>) -> CliError {
    CliError::Usage(msg.into())
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(CliError::Usage(msg)) => {
            eprintln!("usage error: {msg}");
            ExitCode::from(2)
        }
        Err(CliError::Domain(e)) => {
            eprintln!("{}: {e}", e.name());
            ExitCode::from(1)
        }
    }
}

fn field(cli: &Cli) -> CliResult<FieldContext> {
    match (cli.prime, cli.rational) {
        (Some(_), true) => Err(usage("choose either --prime or --rational, not both")),
        (Some(p), false) => Ok(FieldContext::prime(p)?),
        (None, true) => Ok(FieldContext::rational()),
        (None, false) => Err(usage("a field is required: -p <prime> or --rational")),
    }
}

fn prime_model(cli: &Cli) -> CliResult<CoordinateModel> {
    if cli.rational {
        return Err(usage("this subcommand needs a finite field: -p <prime>"));
    }
    let p = cli
        .prime
        .ok_or_else(|| usage("a prime modulus is required: -p <prime>"))?;
    Ok(build_coordinate_model(p)?)
}

fn parse_arrow(ctx: &FieldContext, s: &str) -> CliResult<Arrow> {
    if let Some((lambda, at)) = s.split_once('@') {
        let arrow =
            Arrow::scalar_loop(ProjPoint::parse(ctx, at)?, ctx.parse_scalar(lambda)?)?;
        return Ok(arrow);
    }
    let parts: Vec<&str> = s.split(',').collect();
    if parts.len() != 3 {
        return Err(usage(format!(
            "arrow {s:?} must be \"dir,src,dst\" or \"lambda@point\""
        )));
    }
    let dir = ProjPoint::parse(ctx, parts[0])?;
    let src = ProjPoint::parse(ctx, parts[1])?;
    let dst = ProjPoint::parse(ctx, parts[2])?;
    Ok(Arrow::labeled(src, dst, dir)?)
}

fn arrow_repr(a: &Arrow) -> ArrowRepr {
    match a {
        Arrow::Scalar { at, lambda } => ArrowRepr::Scalar {
            at: at.to_string(),
            lambda: lambda.to_string(),
        },
        Arrow::Labeled { src, dst, dir } => ArrowRepr::Labeled {
            src: src.to_string(),
            dst: dst.to_string(),
            dir: dir.to_string(),
        },
    }
}

fn parse_name_triple(line: &FiniteLine, s: &str) -> CliResult<(PointId, PointId, PointId)> {
    let names: Vec<&str> = s.split(',').collect();
    if names.len() != 3 {
        return Err(usage(format!("triple {s:?} must be \"A,B,C\"")));
    }
    Ok((
        line.point_index(names[0])?,
        line.point_index(names[1])?,
        line.point_index(names[2])?,
    ))
}

fn model_point(model: &CoordinateModel, s: &str) -> CliResult<PointId> {
    let ctx = model.context();
    Ok(model.point_id(&ProjPoint::parse(&ctx, s)?)?)
}

fn load_line(path: &PathBuf) -> CliResult<FiniteLine> {
    let text = std::fs::read_to_string(path)
        .map_err(|e| usage(format!("cannot read {}: {e}", path.display())))?;
    Ok(FiniteLine::from_json(&text)?)
}

fn run(cli: Cli) -> CliResult<()> {
    match &cli.command {
        Command::BuildModel { output } => {
            let model = prime_model(&cli)?;
            let json = model.line().to_json();
            std::fs::write(output, &json)
                .map_err(|e| usage(format!("cannot write {}: {e}", output.display())))?;
            let points = model.line().point_count();
            if cli.json {
                println!(
                    "{}",
                    serde_json::json!({
                        "written": output.display().to_string(),
                        "points": points,
                    })
                );
            } else {
                println!("wrote {} ({} points)", output.display(), points);
            }
            Ok(())
        }
        Command::Verify { file } => {
            let line = load_line(file)?;
            let report = line.verify_axioms(&VerifyOptions::default())?;
            if cli.json {
                let violations: Vec<serde_json::Value> = report
                    .violations
                    .iter()
                    .map(|v| {
                        serde_json::json!({
                            "axiom": v.axiom.name(),
                            "witness": v.witness,
                        })
                    })
                    .collect();
                println!(
                    "{}",
                    serde_json::json!({
                        "passed": report.passed(),
                        "groups": projline_core::AxiomReport::group_count(),
                        "truncated": report.truncated,
                        "violations": violations,
                    })
                );
            } else if report.passed() {
                println!(
                    "PASS ({} axiom groups)",
                    projline_core::AxiomReport::group_count()
                );
            } else {
                println!("FAIL ({} violations)", report.violations.len());
                for v in &report.violations {
                    println!("  {}: {}", v.axiom.name(), v.witness);
                }
            }
            if report.passed() {
                Ok(())
            } else {
                Err(CliError::Domain(Error::NoSolution(
                    "structure file failed verification".into(),
                )))
            }
        }
        Command::Crossratio { a, b, c, d } => {
            let ctx = field(&cli)?;
            let value = cross_ratio(
                &ProjPoint::parse(&ctx, a)?,
                &ProjPoint::parse(&ctx, b)?,
                &ProjPoint::parse(&ctx, c)?,
                &ProjPoint::parse(&ctx, d)?,
            )?;
            if cli.json {
                println!("{}", serde_json::json!({ "value": value.to_string() }));
            } else {
                println!("{value}");
            }
            Ok(())
        }
        Command::Compose { arrows } => {
            let ctx = field(&cli)?;
            let parsed: Vec<Arrow> = arrows
                .iter()
                .map(|s| parse_arrow(&ctx, s))
                .collect::<CliResult<_>>()?;
            let mut acc = parsed[0].clone();
            for next in &parsed[1..] {
                acc = compose(&acc, next)?;
            }
            if cli.json {
                println!("{}", serde_json::to_string(&arrow_repr(&acc)).unwrap());
            } else {
                println!("{acc}");
            }
            Ok(())
        }
        Command::FindProjectivity {
            src,
            dst,
            triple,
            to,
        } => {
            let src_line = load_line(src)?;
            let dst_line = load_line(dst)?;
            let from = parse_name_triple(&src_line, triple)?;
            let to = parse_name_triple(&dst_line, to)?;
            let phi = transport_projectivity(&src_line, &dst_line, from, to)?;
            if cli.json {
                let map: Vec<[String; 2]> = (0..src_line.point_count())
                    .map(|i| {
                        [
                            src_line.point_name(i).to_string(),
                            dst_line.point_name(phi.apply(i)).to_string(),
                        ]
                    })
                    .collect();
                println!("{}", serde_json::json!({ "map": map }));
            } else {
                for i in 0..src_line.point_count() {
                    println!(
                        "{} -> {}",
                        src_line.point_name(i),
                        dst_line.point_name(phi.apply(i))
                    );
                }
            }
            Ok(())
        }
        Command::Census {
            src,
            dst,
            triple,
            to,
        } => {
            let src_line = load_line(src)?;
            let dst_line = load_line(dst)?;
            let from = parse_name_triple(&src_line, triple)?;
            let to = parse_name_triple(&dst_line, to)?;
            let count = uniqueness_census(&src_line, &dst_line, from, to)?;
            if cli.json {
                println!("{}", serde_json::json!({ "count": count }));
            } else {
                println!("{count}");
            }
            Ok(())
        }
        Command::Pgl { count, list, cayley } => {
            if [*count, *list, *cayley].iter().filter(|&&b| b).count() > 1 {
                return Err(usage("choose one of --count, --list, --cayley"));
            }
            if cli.rational {
                return Err(usage("PGL enumeration needs a finite field: -p <prime>"));
            }
            let p = cli
                .prime
                .ok_or_else(|| usage("a prime modulus is required: -p <prime>"))?;
            let all = enumerate_pgl(p)?;
            if *list {
                if cli.json {
                    let items: Vec<String> = all.iter().map(|m| m.to_string()).collect();
                    println!("{}", serde_json::json!({ "matrices": items }));
                } else {
                    for m in &all {
                        println!("{m}");
                    }
                }
            } else if *cayley {
                let index: std::collections::HashMap<_, _> = all
                    .iter()
                    .enumerate()
                    .map(|(i, m)| (m.clone(), i))
                    .collect();
                let mut rows = Vec::with_capacity(all.len());
                for m in &all {
                    let mut row = Vec::with_capacity(all.len());
                    for n in &all {
                        row.push(index[&m.then(n)?]);
                    }
                    rows.push(row);
                }
                if cli.json {
                    println!("{}", serde_json::json!({ "table": rows }));
                } else {
                    for row in rows {
                        let cells: Vec<String> = row.iter().map(|k| k.to_string()).collect();
                        println!("{}", cells.join(" "));
                    }
                }
            } else if cli.json {
                println!("{}", serde_json::json!({ "count": all.len() }));
            } else {
                println!("{}", all.len());
            }
            Ok(())
        }
        Command::Affine { puncture, combine } => {
            let model = prime_model(&cli)?;
            let ctx = model.context();
            let a = model_point(&model, puncture)?;
            let mut terms = Vec::new();
            for part in combine.split(',') {
                let (w, pt) = part
                    .split_once(':')
                    .ok_or_else(|| usage(format!("term {part:?} must be \"weight:point\"")))?;
                terms.push((ctx.parse_scalar(w)?, model_point(&model, pt)?));
            }
            let result = affine_combine(model.line(), a, &terms)?;
            let point = model.proj_point(result);
            if cli.json {
                println!("{}", serde_json::json!({ "point": point.to_string() }));
            } else {
                println!("{point}");
            }
            Ok(())
        }
        Command::VecOp {
            puncture,
            zero,
            add,
            scale,
        } => {
            let model = prime_model(&cli)?;
            let ctx = model.context();
            let a = model_point(&model, puncture)?;
            let b = model_point(&model, zero)?;
            let result = match (add, scale) {
                (Some(ops), None) => {
                    let x = model_point(&model, &ops[0])?;
                    let y = model_point(&model, &ops[1])?;
                    vector_add(model.line(), a, b, x, y)?
                }
                (None, Some(ops)) => {
                    let lambda = ctx.parse_scalar(&ops[0])?;
                    let x = model_point(&model, &ops[1])?;
                    vector_scale(model.line(), a, b, &lambda, x)?
                }
                _ => return Err(usage("choose exactly one of --add or --scale")),
            };
            let point = model.proj_point(result);
            if cli.json {
                println!("{}", serde_json::json!({ "point": point.to_string() }));
            } else {
                println!("{point}");
            }
            Ok(())
        }
        Command::Cocycle { base, from, to } => {
            let model = prime_model(&cli)?;
            let a = model_point(&model, base)?;
            let parse_section = |s: &str| -> CliResult<(PointId, PointId)> {
                let (b, c) = s
                    .split_once(',')
                    .ok_or_else(|| usage(format!("section {s:?} must be \"B,C\"")))?;
                Ok((model_point(&model, b)?, model_point(&model, c)?))
            };
            let (b, c) = parse_section(from)?;
            let (b2, c2) = parse_section(to)?;
            let cocycle = affine_cocycle(model.line(), (a, b, c), (a, b2, c2))?;
            if cli.json {
                println!(
                    "{}",
                    serde_json::json!({
                        "t": cocycle.translation().to_string(),
                        "s": cocycle.slope().to_string(),
                    })
                );
            } else {
                println!("t = {}", cocycle.translation());
                println!("s = {}", cocycle.slope());
            }
            Ok(())
        }
        Command::Gf3Demo => {
            let (line, cert) = gf3_unique_structure()?;
            let all_perms = gf3_all_permutations()?;
            let pgl_order = enumerate_pgl(3)?.len();
            let cross = line.cross_ratio(0, 1, 2, 3)?;
            if cli.json {
                println!(
                    "{}",
                    serde_json::json!({
                        "points": line.point_count(),
                        "hom_set_size": line.hom_labels(0, 1)?.len(),
                        "valid_tables": cert.valid_tables,
                        "search_nodes": cert.nodes_explored,
                        "matches_coordinate_model": cert.matches_coordinate_model,
                        "all_permutations_are_projectivities": all_perms,
                        "pgl_order": pgl_order,
                        "cross_ratio": cross.to_string(),
                    })
                );
            } else {
                println!("points: {}", line.point_count());
                println!("hom-set size: {}", line.hom_labels(0, 1)?.len());
                println!("valid composition tables: {}", cert.valid_tables);
                println!("search nodes: {}", cert.nodes_explored);
                println!("matches coordinate model: {}", cert.matches_coordinate_model);
                println!("all permutations are projectivities: {all_perms}");
                println!("|PGL(2,3)|: {pgl_order}");
                println!("cross ratio of the four points (any order): {cross}");
            }
            Ok(())
        }
    }
}
