//! Argument parsing and command dispatch.

use std::ffi::OsString;
use std::io::{self, Write};
use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};
use thiserror::Error;

use bonsai_core::cohomology::{
    class_cohomology, cohomology_dims, decomposition, effective_variant, h4_representatives, predicted_thread_dims,
};
use bonsai_core::complex::{differential, DiffKind};
use bonsai_core::deviation::{star1, star2};
use bonsai_core::hopf::{antipode, coproduct, counit};
use bonsai_core::linalg::RankField;
use bonsai_core::prelie::{appending_positions, associator, bracket, compose_at, star};
use bonsai_core::tree::enumerate_upto;
use bonsai_core::{AlgebraElement, Bonsai, Forest, Gf2, Scalar, TreeElement, Variant, Q};

use crate::render::{element_json, graded_json, report_json, report_text, table_json, table_text};
use crate::suites::{Overrides, Suite, SuiteReport};

#[derive(Parser, Debug)]
#[command(name = "bonsai", version, about = "Hopf algebras, pre-Lie products and cohomology of m-bonsais")]
pub struct Cli {
    #[command(flatten)]
    pub config: Config,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Args, Debug, Clone)]
pub struct Config {
    /// Tree family: labeled:M, clear:M or clear:inf [default: labeled:2]
    #[arg(long, global = true)]
    pub variant: Option<Variant>,
    /// Coefficient field [default: q]
    #[arg(long, global = true, value_enum)]
    pub field: Option<Field>,
    /// Differential: bf (branch-fixed) or va (vertex-appending) [default: va]
    #[arg(long, global = true)]
    pub kind: Option<DiffKind>,
    /// Largest number of edges per tree
    #[arg(long, global = true, value_parser = clap::value_parser!(u16).range(1..))]
    pub max_edges: Option<u16>,
    /// Largest grade for which cochains are built
    #[arg(long, global = true, value_parser = clap::value_parser!(u16).range(1..))]
    pub max_grade: Option<u16>,
    /// Seed for the randomized checks of `verify`
    #[arg(long, global = true, default_value_t = 0)]
    pub seed: u64,
    /// Print JSON instead of text
    #[arg(long, global = true)]
    pub json: bool,
    /// Write the output to this file instead of stdout
    #[arg(long, global = true)]
    pub out: Option<PathBuf>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Field {
    Q,
    Gf2,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// List every tree up to --max-edges (default 3)
    Enumerate,
    /// Coproduct, antipode and counit of a forest (`|`-separated, `1` is empty)
    Hopf {
        #[command(subcommand)]
        op: HopfOp,
    },
    /// Appending product and partial compositions
    Prelie {
        #[command(subcommand)]
        op: PrelieOp,
    },
    /// Apply a differential to a tree
    Diff { tree: String },
    /// First and second deviations over gf2
    Deviation {
        #[command(subcommand)]
        op: DeviationOp,
    },
    /// Cohomology dimensions, threads or representatives (default: dims)
    Cohomology {
        #[command(subcommand)]
        view: Option<View>,
    },
    /// Run a verification suite
    Verify {
        #[arg(value_enum)]
        suite: SuiteArg,
    },
}

#[derive(Subcommand, Debug)]
pub enum HopfOp {
    Coproduct { forest: String },
    Antipode { forest: String },
    Counit { forest: String },
}

#[derive(Subcommand, Debug)]
pub enum PrelieOp {
    /// a * b: graft the root of a onto b
    Star { a: String, b: String },
    /// a * b - b * a
    Bracket { a: String, b: String },
    /// a * (b * c) - (a * b) * c
    Assoc { a: String, b: String, c: String },
    /// Hang a at slot `index` of b
    Compose { a: String, index: usize, b: String },
    /// Numbered appending positions of a tree
    Positions { tree: String },
}

#[derive(Subcommand, Debug)]
pub enum DeviationOp {
    Star1 { a: String, b: String },
    Star2 { a: String, b: String },
}

#[derive(Subcommand, Debug, Clone, Copy, PartialEq, Eq)]
pub enum View {
    Dims,
    Threads,
    Representatives,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum SuiteArg {
    Hopf,
    Prelie,
    Operad,
    Bf,
    Va,
    Cohomology,
    Deviations,
    All,
}

#[derive(Debug, Error)]
pub enum CliError {
    #[error("{0}")]
    Usage(String),
    #[error("cannot write output: {0}")]
    Io(#[from] io::Error),
}

/// What a command produced: text, the JSON equivalent and the exit code.
struct Output {
    text: String,
    json: Value,
    code: i32,
}

impl Output {
    fn ok(text: String, json: Value) -> Output {
        Output { text, json, code: 0 }
    }
}

/// Run the command line `args` (program name first), writing to `out` and
/// `err`. Returns the exit code.
pub fn run<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let code = e.exit_code();
            let target: &mut dyn Write = if code == 0 { out } else { err };
            let _ = write!(target, "{}", e.render());
            return code;
        }
    };
    configure_threads();
    match execute(&cli) {
        Ok(o) => match emit(&cli.config, &o, out) {
            Ok(()) => o.code,
            Err(e) => {
                let _ = writeln!(err, "error: {e}");
                1
            }
        },
        Err(CliError::Usage(msg)) => {
            let _ = writeln!(err, "error: {msg}\n\nFor more information, try '--help'.");
            2
        }
        Err(e) => {
            let _ = writeln!(err, "error: {e}");
            1
        }
    }
}

/// Cap rayon's pool at `BONSAI_THREADS` when set.
fn configure_threads() {
    if let Some(n) = std::env::var("BONSAI_THREADS").ok().and_then(|s| s.parse::<usize>().ok()) {
        // A second call within one process keeps the first pool.
        let _ = rayon::ThreadPoolBuilder::new().num_threads(n).build_global();
    }
}

fn emit(config: &Config, o: &Output, out: &mut dyn Write) -> Result<(), CliError> {
    let body = if config.json {
        let mut s = serde_json::to_string_pretty(&o.json).expect("JSON values serialize");
        s.push('\n');
        s
    } else {
        o.text.clone()
    };
    match &config.out {
        Some(path) => std::fs::write(path, body)?,
        None => out.write_all(body.as_bytes())?,
    }
    Ok(())
}

fn variant(c: &Config) -> Variant {
    c.variant.unwrap_or(Variant::Labeled(2))
}

fn field(c: &Config) -> Field {
    c.field.unwrap_or(Field::Q)
}

fn field_name(f: Field) -> &'static str {
    match f {
        Field::Q => Q::NAME,
        Field::Gf2 => Gf2::NAME,
    }
}

fn kind(c: &Config) -> DiffKind {
    c.kind.unwrap_or(DiffKind::VertexAppending)
}

fn parse_tree(s: &str, v: Variant) -> Result<Bonsai, CliError> {
    Bonsai::parse(s, v).map_err(|e| CliError::Usage(format!("invalid {v} tree `{s}`: {e}")))
}

fn parse_forest(s: &str, v: Variant) -> Result<Forest, CliError> {
    Forest::parse(s, v).map_err(|e| CliError::Usage(format!("invalid {v} forest `{s}`: {e}")))
}

/// Metadata shared by every JSON document.
fn header(command: &str, c: &Config, field: Option<Field>) -> serde_json::Map<String, Value> {
    let mut m = serde_json::Map::new();
    m.insert("command".into(), json!(command));
    m.insert("variant".into(), json!(variant(c).to_string()));
    if let Some(f) = field {
        m.insert("field".into(), json!(field_name(f)));
    }
    m
}

fn with(mut m: serde_json::Map<String, Value>, entries: Value) -> Value {
    if let Value::Object(e) = entries {
        m.extend(e);
    }
    Value::Object(m)
}

fn execute(cli: &Cli) -> Result<Output, CliError> {
    let c = &cli.config;
    match &cli.command {
        Command::Enumerate => enumerate_cmd(c),
        Command::Hopf { op } => match field(c) {
            Field::Q => hopf_cmd::<Q>(c, op),
            Field::Gf2 => hopf_cmd::<Gf2>(c, op),
        },
        Command::Prelie { op } => match field(c) {
            Field::Q => prelie_cmd::<Q>(c, op),
            Field::Gf2 => prelie_cmd::<Gf2>(c, op),
        },
        Command::Diff { tree } => match field(c) {
            Field::Q => diff_cmd::<Q>(c, tree),
            Field::Gf2 => diff_cmd::<Gf2>(c, tree),
        },
        Command::Deviation { op } => deviation_cmd(c, op),
        Command::Cohomology { view } => match field(c) {
            Field::Q => cohomology_cmd::<Q>(c, view.unwrap_or(View::Dims)),
            Field::Gf2 => cohomology_cmd::<Gf2>(c, view.unwrap_or(View::Dims)),
        },
        Command::Verify { suite } => Ok(verify_cmd(c, *suite)),
    }
}

fn enumerate_cmd(c: &Config) -> Result<Output, CliError> {
    let v = variant(c);
    let n = c.max_edges.unwrap_or(3) as usize;
    let table = enumerate_upto(v, n);
    let mut text = String::new();
    for (k, row) in table.iter().enumerate() {
        text += &format!("# {k} edges: {} trees\n", row.len());
        for t in row {
            text += &format!("{t}\n");
        }
    }
    let counts: Vec<(usize, usize)> = table.iter().map(Vec::len).enumerate().collect();
    let trees: serde_json::Map<String, Value> = table
        .iter()
        .enumerate()
        .map(|(k, row)| (k.to_string(), row.iter().map(|t| t.to_string()).collect()))
        .collect();
    let j = with(header("enumerate", c, None), json!({ "max_edges": n, "counts": graded_json(&counts), "trees": trees }));
    Ok(Output::ok(text, j))
}

fn hopf_cmd<K: Scalar + std::fmt::Display>(c: &Config, op: &HopfOp) -> Result<Output, CliError> {
    let v = variant(c);
    let h = |name: &str| header(name, c, Some(field(c)));
    match op {
        HopfOp::Coproduct { forest } => {
            let x: AlgebraElement<K> = AlgebraElement::basis(parse_forest(forest, v)?);
            let r = coproduct(&x);
            let j = with(h("hopf coproduct"), json!({ "input": forest, "result": tensor_json(&r) }));
            Ok(Output::ok(format!("{r}\n"), j))
        }
        HopfOp::Antipode { forest } => {
            let x: AlgebraElement<K> = AlgebraElement::basis(parse_forest(forest, v)?);
            let r = antipode(&x);
            let j = with(h("hopf antipode"), json!({ "input": forest, "result": element_json(&r, "forest") }));
            Ok(Output::ok(format!("{r}\n"), j))
        }
        HopfOp::Counit { forest } => {
            let x: AlgebraElement<K> = AlgebraElement::basis(parse_forest(forest, v)?);
            let r = counit(&x);
            let j = with(h("hopf counit"), json!({ "input": forest, "result": r.to_string() }));
            Ok(Output::ok(format!("{r}\n"), j))
        }
    }
}

fn tensor_json<K: Scalar + std::fmt::Display>(x: &bonsai_core::TensorElement<K>) -> Value {
    Value::Array(
        x.iter()
            .map(|(p, k)| json!({ "coeff": k.to_string(), "left": p.0.to_string(), "right": p.1.to_string() }))
            .collect(),
    )
}

fn prelie_cmd<K: Scalar + std::fmt::Display>(c: &Config, op: &PrelieOp) -> Result<Output, CliError> {
    let v = variant(c);
    let z = |s: &str| -> Result<TreeElement<K>, CliError> { Ok(TreeElement::basis(parse_tree(s, v)?)) };
    let element = |name: &str, inputs: &[&String], r: TreeElement<K>| {
        let j = with(header(name, c, Some(field(c))), json!({ "inputs": inputs, "result": element_json(&r, "tree") }));
        Output::ok(format!("{r}\n"), j)
    };
    match op {
        PrelieOp::Star { a, b } => Ok(element("prelie star", &[a, b], star(&z(a)?, &z(b)?, v))),
        PrelieOp::Bracket { a, b } => Ok(element("prelie bracket", &[a, b], bracket(&z(a)?, &z(b)?, v))),
        PrelieOp::Assoc { a, b, c: t3 } => {
            Ok(element("prelie assoc", &[a, b, t3], associator(&z(a)?, &z(b)?, &z(t3)?, v)))
        }
        PrelieOp::Compose { a, index, b } => {
            let r = compose_at(&parse_tree(a, v)?, *index, &parse_tree(b, v)?, v)
                .map_err(|e| CliError::Usage(e.to_string()))?;
            let j = with(header("prelie compose", c, None), json!({ "inputs": [a, index, b], "result": r.to_string() }));
            Ok(Output::ok(format!("{r}\n"), j))
        }
        PrelieOp::Positions { tree } => {
            let Variant::Labeled(m) = v else {
                return Err(CliError::Usage(String::from("appending positions need a labeled variant")));
            };
            let t = parse_tree(tree, v)?;
            let pos = appending_positions(&t, m);
            let text: String = pos.iter().map(|p| format!("{}: vertex {} label {}\n", p.ordinal, p.vertex, p.label)).collect();
            let list: Vec<Value> =
                pos.iter().map(|p| json!({ "ordinal": p.ordinal, "vertex": p.vertex, "label": p.label })).collect();
            let j = with(header("prelie positions", c, None), json!({ "input": tree, "positions": list }));
            Ok(Output::ok(text, j))
        }
    }
}

fn diff_cmd<K: Scalar + std::fmt::Display>(c: &Config, tree: &str) -> Result<Output, CliError> {
    let v = variant(c);
    let k = kind(c);
    if k == DiffKind::BranchFixed && !v.is_labeled() {
        return Err(CliError::Usage(String::from("the branch-fixed differential needs a labeled variant")));
    }
    let t = parse_tree(tree, v)?;
    let x: TreeElement<K> = TreeElement::basis(t.clone());
    let r = differential(&x, effective_variant(v, t.edge_count() + 1), k);
    let j = with(
        header("diff", c, Some(field(c))),
        json!({ "kind": k.to_string(), "input": tree, "result": element_json(&r, "tree") }),
    );
    Ok(Output::ok(format!("{r}\n"), j))
}

fn deviation_cmd(c: &Config, op: &DeviationOp) -> Result<Output, CliError> {
    if field(c) != Field::Gf2 && c.field.is_some() {
        return Err(CliError::Usage(String::from("deviations are defined over gf2 only")));
    }
    let v = variant(c);
    let (name, a, b) = match op {
        DeviationOp::Star1 { a, b } => ("deviation star1", a, b),
        DeviationOp::Star2 { a, b } => ("deviation star2", a, b),
    };
    let (ta, tb) = (parse_tree(a, v)?, parse_tree(b, v)?);
    let v = effective_variant(v, ta.edge_count() + tb.edge_count() + 3);
    let x = TreeElement::<Gf2>::basis(ta);
    let y = TreeElement::<Gf2>::basis(tb);
    let r = match op {
        DeviationOp::Star1 { .. } => star1(&x, &y, v),
        DeviationOp::Star2 { .. } => star2(&x, &y, v),
    };
    let j = with(header(name, c, Some(Field::Gf2)), json!({ "inputs": [a, b], "result": element_json(&r, "tree") }));
    Ok(Output::ok(format!("{r}\n"), j))
}

fn cohomology_cmd<K: RankField + std::fmt::Display>(c: &Config, view: View) -> Result<Output, CliError> {
    let v = variant(c);
    let f = field(c);
    let k = kind(c);
    if k == DiffKind::BranchFixed && !v.is_labeled() {
        return Err(CliError::Usage(String::from("the branch-fixed differential needs a labeled variant")));
    }
    let max_grade = c.max_grade.unwrap_or(6) as usize;
    match view {
        View::Dims => {
            let t = cohomology_dims::<K>(v, k, max_grade);
            let j = with(header("cohomology dims", c, Some(f)), table_json(&t, max_grade));
            Ok(Output::ok(table_text(&t), j))
        }
        View::Threads => threads_view::<K>(c, max_grade),
        View::Representatives => {
            if v != Variant::Labeled(2) || k != DiffKind::VertexAppending {
                return Err(CliError::Usage(String::from(
                    "representatives are available for labeled:2 with --kind va",
                )));
            }
            let reps = h4_representatives();
            let text: String = reps.iter().map(|r| format!("H^4: {r}\n")).collect();
            let list: Vec<Value> =
                reps.iter().map(|r| json!({ "grade": 4, "cocycle": element_json(r, "tree") })).collect();
            let j = with(header("cohomology representatives", c, Some(Field::Q)), json!({ "representatives": list }));
            Ok(Output::ok(text, j))
        }
    }
}

fn threads_view<K: RankField + std::fmt::Display>(c: &Config, max_grade: usize) -> Result<Output, CliError> {
    let v = variant(c);
    let dims_text = |d: &[(usize, usize)]| {
        d.iter().filter(|x| x.1 > 0).map(|(i, h)| format!("H^{i}={h}")).collect::<Vec<_>>().join(" ")
    };
    match v {
        Variant::Labeled(_) => {
            if kind(c) != DiffKind::VertexAppending {
                return Err(CliError::Usage(String::from("threads are defined for --kind va")));
            }
            let classes = class_cohomology::<K>(v, max_grade);
            let mut text = String::new();
            let mut list = Vec::new();
            for cl in classes.iter().filter(|cl| cl.dims.iter().any(|d| d.1 > 0)) {
                text += &format!("{}: {}\n", cl.seedling, dims_text(&cl.dims));
            }
            for cl in &classes {
                list.push(json!({ "seedling": cl.seedling.to_string(), "closed": cl.closed, "dims": graded_json(&cl.dims) }));
            }
            text += &format!("{} classes, {} with nonzero cohomology\n", classes.len(), text.lines().count());
            let j = with(header("cohomology threads", c, Some(field(c))), json!({ "max_grade": max_grade, "classes": list }));
            Ok(Output::ok(text, j))
        }
        Variant::Clear(bound) => {
            if field(c) != Field::Q || kind(c) != DiffKind::VertexAppending {
                return Err(CliError::Usage(String::from("grafting-seedling threads use --field q --kind va")));
            }
            let m = bound.unwrap_or((max_grade + 2) as u16);
            let dec = decomposition(m, max_grade);
            let mut text = String::new();
            let mut list = Vec::new();
            for (s, th) in &dec.threads {
                let predicted = predicted_thread_dims(s, m, max_grade);
                if th.dims.iter().any(|d| d.1 > 0) {
                    text += &format!("{s}: {}\n", dims_text(&th.dims));
                }
                let predicted = predicted.map(|p| Value::Object(p.iter().map(|(i, d)| (i.to_string(), json!(d))).collect()));
                list.push(json!({ "seedling": s.to_string(), "dims": graded_json(&th.dims), "predicted": predicted }));
            }
            text += &format!("global: {}\n", dims_text(&dec.global.dims));
            text += &format!("sum over {} threads: {}\n", dec.threads.len(), dims_text(&dec.summed));
            let j = with(
                header("cohomology threads", c, Some(Field::Q)),
                json!({
                    "max_grade": max_grade,
                    "effective_m": m,
                    "global": graded_json(&dec.global.dims),
                    "summed": graded_json(&dec.summed),
                    "decomposition_holds": dec.holds(),
                    "threads": list,
                }),
            );
            Ok(Output::ok(text, j))
        }
    }
}

fn verify_cmd(c: &Config, suite: SuiteArg) -> Output {
    let o = Overrides {
        variant: c.variant,
        max_edges: c.max_edges.map(usize::from),
        max_grade: c.max_grade.map(usize::from),
        seed: c.seed,
    };
    let suites: Vec<Suite> = match suite {
        SuiteArg::Hopf => vec![Suite::Hopf],
        SuiteArg::Prelie => vec![Suite::Prelie],
        SuiteArg::Operad => vec![Suite::Operad],
        SuiteArg::Bf => vec![Suite::Bf],
        SuiteArg::Va => vec![Suite::Va],
        SuiteArg::Cohomology => vec![Suite::Cohomology],
        SuiteArg::Deviations => vec![Suite::Deviations],
        SuiteArg::All => Suite::ALL.to_vec(),
    };
    let reports: Vec<SuiteReport> = suites.iter().map(|s| s.run(&o)).collect();
    let passed = reports.iter().all(SuiteReport::passed);
    let text: String = reports.iter().map(report_text).collect();
    let mut meta = serde_json::Map::new();
    meta.insert("command".into(), json!("verify"));
    meta.insert("variant".into(), json!(c.variant.map(|v| v.to_string())));
    let j = with(
        meta,
        json!({
            "max_edges": o.max_edges,
            "max_grade": o.max_grade,
            "seed": o.seed,
            "passed": passed,
            "suites": reports.iter().map(report_json).collect::<Vec<_>>(),
        }),
    );
    Output { text, json: j, code: if passed { 0 } else { 1 } }
}
