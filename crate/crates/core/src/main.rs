use std::fs;
use std::io::Write;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use serde::Deserialize;
use serde_json::{json, Value};

use layered_model::assembly::{assemble_model_detailed, knotted_certificate, validate_splitting, SplittingDescriptor};
use layered_model::disk_oracle::CurveWordMarking;
use layered_model::io::{from_json, read_json, to_canonical_json, Manifest};
use layered_model::model::{build_product_model, validate_complex, ModelComplex};
use layered_model::moves::{random_path, validate_path, MovePath};
use layered_model::pants_graph::{enumerate_pants_graphs, CurveId, Leg, PantsGraph};
use layered_model::spines::{
    build_fat_spine, handlebody_trees, induced_boundary_decomposition, layer_model, layer_number_lower_bound_seeded,
    SpineTree,
};
use layered_model::Error;

#[derive(Parser)]
#[command(name = "layered-model", version, about = "Pants decompositions, layered models and their assembly")]
struct Cli {
    #[command(subcommand)]
    command: Command,
    /// Write output here instead of standard output.
    #[arg(long, global = true)]
    out: Option<PathBuf>,
    #[arg(long, global = true, value_enum, default_value_t = Format::Json)]
    format: Format,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Json,
    Dot,
}

#[derive(Subcommand)]
enum Command {
    /// List the isomorphism classes of pants graphs of a genus.
    Enumerate {
        #[arg(long)]
        genus: u32,
    },
    /// Product model of a move path, a spine layered by a path, or a random
    /// walk from the chain decomposition.
    BuildModel {
        #[arg(long)]
        path: Option<PathBuf>,
        /// Layer the path onto this spine tree instead of a product.
        #[arg(long, requires = "path")]
        spine: Option<PathBuf>,
        #[arg(long, conflicts_with = "path")]
        genus: Option<u32>,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long, default_value_t = 10)]
        steps: usize,
        #[arg(long, default_value_t = 1)]
        twist_bound: u32,
    },
    /// Fat spine of a spine tree, or of the `index`-th handlebody tree of a genus.
    FatSpine {
        #[arg(long, conflicts_with = "genus")]
        tree: Option<PathBuf>,
        #[arg(long)]
        genus: Option<u32>,
        #[arg(long, default_value_t = 0)]
        index: usize,
    },
    /// Lower bound on the layer number of a decomposition.
    LayerNumber {
        #[arg(long)]
        target: PathBuf,
        #[arg(long)]
        genus: Option<u32>,
        #[arg(long, default_value_t = 4)]
        max_depth: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
    },
    /// Assemble the models listed in a manifest into one closed complex.
    Assemble {
        #[arg(long)]
        manifest: PathBuf,
        /// Attach a knotted-loop certificate.
        #[arg(long)]
        certify: bool,
    },
    /// Validate a graph, path, model, spine tree, splitting, marking or manifest.
    Check { file: PathBuf },
    /// Re-emit a graph, path, model or spine tree as canonical JSON or DOT.
    Export { file: PathBuf },
}

/// Result of a command: text to emit and whether it reports violations.
struct Output {
    text: String,
    violations: bool,
}

impl Output {
    fn ok(text: String) -> Self {
        Output { text, violations: false }
    }
}

const SCHEMA_HELP: &str = "\
expected JSON kinds:
  graph     {\"curve_ids\", \"matching\": [[[v, s], [v, s]], ...], \"vertices\"}
  path      {\"base\": graph, \"moves\": [{\"kind\", \"new_curve\", \"repairing\", \"target\", \"twist\"}]}
  model     {\"blocks\", \"closed\", \"faces\", \"genus\", \"links\", \"origin\", \"stages\"}
  spine     {\"leaf\": {...}} or {\"attach\": {...}}
  splitting {\"bodies\": [{\"plus\", \"minus\"}], \"strongly_irreducible\"}
  marking   {\"rank\", \"words\": {link: word}}
  manifest  {\"models\", \"splitting\", \"thick_matchings\", \"thin_paths\", ...}";

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(c) => c,
        Err(e) => {
            let _ = e.print();
            return ExitCode::from(if e.use_stderr() { 2 } else { 0 });
        }
    };
    let result = run(&cli);
    match result {
        Ok(out) => {
            if let Err(e) = emit(cli.out.as_deref(), &out.text) {
                eprintln!("error: {e}");
                return ExitCode::from(2);
            }
            ExitCode::from(if out.violations { 1 } else { 0 })
        }
        Err(e) => {
            eprintln!("error: {e}");
            let code = exit_code(&e);
            if code == 2 && matches!(e, Error::SchemaViolation { .. }) {
                eprintln!("{SCHEMA_HELP}");
            }
            ExitCode::from(code)
        }
    }
}

fn exit_code(e: &Error) -> u8 {
    match e {
        Error::SchemaViolation { .. } | Error::Io(_) | Error::GenusBelowTwo | Error::BadSymbol(_) => 2,
        _ => 1,
    }
}

fn emit(out: Option<&Path>, text: &str) -> std::io::Result<()> {
    match out {
        Some(p) => fs::write(p, text),
        None => std::io::stdout().lock().write_all(text.as_bytes()),
    }
}

fn usage(msg: &str) -> Error {
    Error::SchemaViolation { path: String::new(), message: msg.into() }
}

fn run(cli: &Cli) -> layered_model::Result<Output> {
    let dot = cli.format == Format::Dot;
    match &cli.command {
        Command::Enumerate { genus } => {
            let classes = enumerate_pants_graphs(*genus)?;
            if dot {
                return Ok(Output::ok(classes.iter().map(|g| g.to_dot()).collect()));
            }
            let list: Vec<Value> =
                classes.iter().map(|g| json!({"canonical_form": g.canonical_form(), "graph": g})).collect();
            Ok(Output::ok(to_canonical_json(&json!({"classes": list, "count": classes.len(), "genus": genus}))?))
        }
        Command::BuildModel { path, spine, genus, seed, steps, twist_bound } => {
            let m = match (path, genus) {
                (Some(p), _) => {
                    let path: MovePath = read_json(p)?;
                    match spine {
                        Some(s) => layer_model(&build_fat_spine(&read_json::<SpineTree>(s)?)?, &path)?,
                        None => build_product_model(&path)?,
                    }
                }
                (None, Some(g)) => {
                    build_product_model(&random_path(&PantsGraph::chain(*g)?, *steps, *seed, *twist_bound))?
                }
                (None, None) => return Err(usage("build-model needs --path or --genus")),
            };
            model_output(&m, dot)
        }
        Command::FatSpine { tree, genus, index } => {
            let t = match (tree, genus) {
                (Some(p), _) => read_json(p)?,
                (None, Some(g)) => {
                    let trees = handlebody_trees(*g)?;
                    let n = trees.len();
                    trees
                        .into_iter()
                        .nth(*index)
                        .ok_or_else(|| usage(&format!("--index {index} out of range: genus {g} has {n} trees")))?
                }
                (None, None) => return Err(usage("fat-spine needs --tree or --genus")),
            };
            model_output(&build_fat_spine(&t)?, dot)
        }
        Command::LayerNumber { target, genus, max_depth, seed } => {
            let g: PantsGraph = read_json(target)?;
            let genus = genus.unwrap_or(g.genus());
            let bound = layer_number_lower_bound_seeded(&g, genus, *max_depth, *seed)?;
            Ok(Output::ok(to_canonical_json(&json!({
                "genus": genus,
                "lower_bound": bound,
                "max_depth": max_depth,
                "seed": seed,
                "target": g.canonical_form(),
            }))?))
        }
        Command::Assemble { manifest, certify } => {
            let m = Manifest::load(manifest)?;
            let a = assemble_model_detailed(&m.splitting, &m.models, &m.thick_matchings, &m.thin_paths)?;
            if dot {
                return Ok(Output::ok(a.model.to_dot()));
            }
            let certificate =
                if *certify { Some(knotted_certificate(&a.model, m.marking.as_ref(), &m.attestations)?) } else { None };
            Ok(Output::ok(to_canonical_json(&json!({
                "annulus": a.annulus,
                "certificate": certificate,
                "euler_characteristic": a.model.euler_characteristic()?,
                "model": a.model,
                "settings": m.settings,
                "thin_path_lengths": a.thin_path_lengths,
                "tori_crushed": a.tori_crushed,
            }))?))
        }
        Command::Check { file } => check(file),
        Command::Export { file } => export(file, dot),
    }
}

fn model_output(m: &ModelComplex, dot: bool) -> layered_model::Result<Output> {
    Ok(Output::ok(if dot { m.to_dot() } else { to_canonical_json(m)? }))
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
enum Kind {
    Graph,
    Path,
    Model,
    Spine,
    Splitting,
    Marking,
    Manifest,
}

fn read_value(file: &Path) -> layered_model::Result<(String, Kind)> {
    let s = fs::read_to_string(file).map_err(|e| Error::Io(format!("{}: {e}", file.display())))?;
    let v: Value = from_json(&s)?;
    let has = |k: &str| v.get(k).is_some();
    let kind = if has("blocks") && has("faces") {
        Kind::Model
    } else if has("base") && has("moves") {
        Kind::Path
    } else if has("matching") && has("vertices") {
        Kind::Graph
    } else if has("models") && has("splitting") {
        Kind::Manifest
    } else if has("bodies") {
        Kind::Splitting
    } else if has("leaf") || has("attach") {
        Kind::Spine
    } else if has("words") {
        Kind::Marking
    } else {
        return Err(usage(&format!("{}: unrecognized document kind", file.display())));
    };
    Ok((s, kind))
}

/// Graph fields before the matching is checked, so that a malformed
/// matching is reported as a violation rather than a parse failure.
#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct RawGraph {
    curve_ids: Vec<CurveId>,
    matching: Vec<(Leg, Leg)>,
    vertices: usize,
}

fn report(kind: &str, violations: Vec<Value>, extra: Value) -> layered_model::Result<Output> {
    let mut v = json!({"kind": kind, "valid": violations.is_empty(), "violations": violations});
    if let (Value::Object(m), Value::Object(e)) = (&mut v, extra) {
        m.extend(e);
    }
    Ok(Output { violations: !v["valid"].as_bool().unwrap_or(false), text: to_canonical_json(&v)? })
}

fn check(file: &Path) -> layered_model::Result<Output> {
    let (s, kind) = read_value(file)?;
    match kind {
        Kind::Graph => {
            let r: RawGraph = from_json(&s)?;
            match PantsGraph::with_curve_ids(r.vertices, &r.matching, &r.curve_ids) {
                Ok(g) => report("graph", vec![], json!({"canonical_form": g.canonical_form(), "genus": g.genus()})),
                Err(e) => report("graph", vec![json!(e.to_string())], json!({})),
            }
        }
        Kind::Path => {
            let p: MovePath = from_json(&s)?;
            let r = validate_path(&p);
            let v = r.first_invalid.iter().map(|x| json!(x)).collect();
            report("path", v, json!({"lifetimes": r.lifetimes, "steps": r.steps}))
        }
        Kind::Model => {
            let m: ModelComplex = from_json(&s)?;
            let r = validate_complex(&m);
            let mut extra = json!({"block_counts": m.block_counts(), "internal_faces": m.internal_face_count()});
            if r.valid {
                extra["euler_characteristic"] = json!(m.euler_characteristic()?);
            }
            report("model", r.violations.iter().map(|x| json!(x)).collect(), extra)
        }
        Kind::Spine => {
            let t: SpineTree = from_json(&s)?;
            match build_fat_spine(&t) {
                Ok(m) => {
                    let induced = induced_boundary_decomposition(&m)?;
                    report(
                        "spine",
                        vec![],
                        json!({
                            "euler_characteristic": m.euler_characteristic()?,
                            "genus": t.genus(),
                            "induced_decomposition": induced.canonical_form(),
                        }),
                    )
                }
                Err(e) => report("spine", vec![json!(e.to_string())], json!({})),
            }
        }
        Kind::Splitting => {
            let sd: SplittingDescriptor = from_json(&s)?;
            let r = validate_splitting(&sd);
            report("splitting", r.violations.iter().map(|x| json!(x)).collect(), json!({"k": r.k}))
        }
        Kind::Marking => {
            let m: CurveWordMarking = from_json(&s)?;
            let v = match m.validate() {
                Ok(()) => vec![],
                Err(e) => vec![json!(e.to_string())],
            };
            report("marking", v, json!({}))
        }
        Kind::Manifest => {
            let m = Manifest::load(file)?;
            match assemble_model_detailed(&m.splitting, &m.models, &m.thick_matchings, &m.thin_paths) {
                Ok(a) => {
                    report("manifest", vec![], json!({"links": a.model.links.len(), "tori_crushed": a.tori_crushed}))
                }
                Err(e @ (Error::SchemaViolation { .. } | Error::Io(_))) => Err(e),
                Err(e) => report("manifest", vec![json!(e.to_string())], json!({})),
            }
        }
    }
}

fn export(file: &Path, dot: bool) -> layered_model::Result<Output> {
    let (s, kind) = read_value(file)?;
    let text = match kind {
        Kind::Graph => {
            let g: PantsGraph = from_json(&s)?;
            if dot {
                g.to_dot()
            } else {
                to_canonical_json(&g)?
            }
        }
        Kind::Path => {
            let p: MovePath = from_json(&s)?;
            if dot {
                build_product_model(&p)?.to_dot()
            } else {
                to_canonical_json(&p)?
            }
        }
        Kind::Model => {
            let m: ModelComplex = from_json(&s)?;
            if dot {
                m.to_dot()
            } else {
                to_canonical_json(&m)?
            }
        }
        Kind::Spine => {
            let t: SpineTree = from_json(&s)?;
            if dot {
                build_fat_spine(&t)?.to_dot()
            } else {
                to_canonical_json(&t)?
            }
        }
        _ => return Err(usage("export handles graphs, paths, models and spine trees")),
    };
    Ok(Output::ok(text))
}
