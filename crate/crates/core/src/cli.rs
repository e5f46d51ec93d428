//! The `cdx` command line.

use std::ffi::OsString;
use std::fs;
use std::io::Write;
use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};
use rayon::prelude::*;
use serde::Deserialize;
use serde_json::{json, Map, Value};

use crate::cache::{poly_to_json, CacheFile};
use crate::catalog;
use crate::corpus::{self, Family};
use crate::cuspidal::{cd_cuspidal, CuspidalKey};
use crate::engine::{cd_index, cd_sparse_paving, w_term, EngineOptions, WKey};
use crate::error::{CdError, Result};
use crate::hypersimplex::cd_hypersimplex;
use crate::matroid::{CyclicFlat, Matroid};
use crate::memo::Memo;
use crate::ncpoly::{cd_to_ab, cd_to_flag_f, NcPoly};
use crate::oracle::{self, oracle_cd_index};
use crate::reference;

#[derive(Parser, Debug)]
#[command(
    name = "cdx",
    version,
    about = "Exact cd-indices of matroid base polytopes"
)]
pub struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Compute the cd-index of one matroid base polytope.
    Compute(ComputeArgs),
    /// Compare the formulas with the brute-force oracle and the published values.
    Verify(VerifyArgs),
}

#[derive(Args, Debug)]
struct ComputeArgs {
    #[arg(
        long,
        value_enum,
        conflicts_with = "file",
        required_unless_present = "file"
    )]
    builtin: Option<Builtin>,
    #[arg(long)]
    k: Option<usize>,
    #[arg(long)]
    n: Option<usize>,
    #[arg(long)]
    r: Option<usize>,
    #[arg(long)]
    h: Option<usize>,
    /// Matroid JSON file with 1-based elements.
    #[arg(long)]
    file: Option<PathBuf>,
    #[arg(long, value_enum, default_value_t = Format::Text)]
    format: Format,
    /// Also print the flag f-vector.
    #[arg(long)]
    flag_f: bool,
    /// Also print the f-vector.
    #[arg(long)]
    f_vector: bool,
    /// Fall back to the oracle for components that are not split.
    #[arg(long)]
    oracle_fallback: bool,
    #[command(flatten)]
    common: CommonArgs,
}

#[derive(Args, Debug)]
struct VerifyArgs {
    #[arg(long, default_value_t = 6)]
    max_n: usize,
    #[arg(long, value_enum)]
    only: Option<Selector>,
    #[command(flatten)]
    common: CommonArgs,
}

#[derive(Args, Debug)]
struct CommonArgs {
    /// Persistent memo store (JSON lines).
    #[arg(long, env = "CDX_CACHE")]
    cache: Option<PathBuf>,
    /// Recompute every cached value before use.
    #[arg(long)]
    cache_verify: bool,
    #[arg(long)]
    threads: Option<usize>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum Builtin {
    Uniform,
    Hypersimplex,
    Cuspidal,
    Fano,
    Vamos,
    Mk4,
    ExampleM1,
    ExampleM2,
    ExampleM3,
    #[value(name = "example-535")]
    Example535,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum Format {
    Text,
    Json,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum Selector {
    #[value(alias = "uniform")]
    Hypersimplex,
    Cuspidal,
    SparsePaving,
    #[value(name = "example-535")]
    Example535,
    RankTwo,
    PaperValues,
}

/// Parses `args` (including the program name), runs, and returns the exit code.
pub fn run<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let code = e.exit_code();
            let _ = if e.use_stderr() {
                write!(err, "{e}")
            } else {
                write!(out, "{e}")
            };
            return code;
        }
    };
    let result = match cli.command {
        Command::Compute(args) => compute(&args, out),
        Command::Verify(args) => verify(&args, out),
    };
    match result {
        Ok(code) => code,
        Err(e) => {
            let _ = writeln!(err, "error: {}", describe(&e));
            exit_code(&e)
        }
    }
}

pub fn exit_code(e: &CdError) -> i32 {
    match e {
        CdError::NotAMatroid { .. }
        | CdError::PresentationMismatch { .. }
        | CdError::EmptyMatroid => 2,
        CdError::UnsupportedMatroid(_) | CdError::NotSplit(_) => 3,
        CdError::ScaleExceeded { .. } => 4,
        _ => 1,
    }
}

/// Error text with 1-based element labels.
fn describe(e: &CdError) -> String {
    let one_based = |s: &[usize]| s.iter().map(|x| x + 1).collect::<Vec<_>>();
    match e {
        CdError::NotAMatroid { basis, element } => format!(
            "not a matroid: exchange fails for basis {:?} and element {}",
            one_based(basis),
            element + 1
        ),
        CdError::PresentationMismatch { set, rank } => format!(
            "invalid presentation: cyclic flat {:?} of rank {rank} is not reproduced",
            one_based(set)
        ),
        other => other.to_string(),
    }
}

fn setup(common: &CommonArgs, memo: &Memo) -> Result<Option<CacheFile>> {
    if let Some(threads) = common.threads {
        // a second configuration in the same process keeps the first pool
        let _ = rayon::ThreadPoolBuilder::new()
            .num_threads(threads)
            .build_global();
    }
    let Some(path) = &common.cache else {
        if common.cache_verify {
            return Err(CdError::InvalidParams(
                "--cache-verify needs --cache or CDX_CACHE".into(),
            ));
        }
        return Ok(None);
    };
    let cache = CacheFile::load(path)?;
    if common.cache_verify {
        cache.verify()?;
    }
    cache.seed(memo);
    Ok(Some(cache))
}

fn finish(cache: Option<CacheFile>, memo: &Memo) -> Result<()> {
    if let Some(mut cache) = cache {
        cache.append_new(memo)?;
    }
    Ok(())
}

fn need(value: Option<usize>, name: &str) -> Result<usize> {
    value.ok_or_else(|| CdError::InvalidParams(format!("this builtin needs --{name}")))
}

fn compute(args: &ComputeArgs, out: &mut dyn Write) -> Result<i32> {
    let memo = Memo::new();
    let cache = setup(&args.common, &memo)?;
    let (poly, dim) = match args.builtin {
        Some(Builtin::Hypersimplex) => {
            let (k, n) = (need(args.k, "k")?, need(args.n, "n")?);
            let p = cd_hypersimplex(&memo, k, n)?;
            let dim = if k == 0 || k == n { 0 } else { n - 1 };
            ((*p).clone(), dim)
        }
        Some(Builtin::Cuspidal) => {
            let key = CuspidalKey::new(
                need(args.k, "k")?,
                need(args.n, "n")?,
                need(args.r, "r")?,
                need(args.h, "h")?,
            )?;
            ((*cd_cuspidal(&memo, key)?).clone(), key.n - 1)
        }
        _ => {
            let m = load_matroid(args)?;
            let options = EngineOptions {
                oracle_fallback: args.oracle_fallback.then_some(oracle::DEFAULT_MAX_N),
            };
            let p = cd_index(&memo, &m, options)?;
            (p, m.n() - m.connected_components().len())
        }
    };
    finish(cache, &memo)?;

    let flags = if args.flag_f || args.f_vector {
        Some(cd_to_flag_f(&poly, dim)?)
    } else {
        None
    };
    let io = |e| CdError::io("<stdout>", e);
    match args.format {
        Format::Text => {
            writeln!(out, "{poly}").map_err(io)?;
            if let Some(f) = &flags {
                if args.f_vector {
                    let fv: Vec<String> = f.f_vector().iter().map(|x| x.to_string()).collect();
                    writeln!(out, "f-vector: ({})", fv.join(", ")).map_err(io)?;
                }
                if args.flag_f {
                    for (set, count) in f.iter() {
                        writeln!(out, "f{{{}}} = {count}", join(&set)).map_err(io)?;
                    }
                }
            }
        }
        Format::Json => {
            let mut obj = Map::new();
            obj.insert("dim".into(), json!(dim));
            obj.insert("cd".into(), Value::Object(poly_to_json(&poly)));
            if let Some(f) = &flags {
                if args.f_vector {
                    let fv: Vec<Value> =
                        f.f_vector().iter().map(|x| json!(x.to_string())).collect();
                    obj.insert("f_vector".into(), Value::Array(fv));
                }
                if args.flag_f {
                    let ff: Map<String, Value> = f
                        .iter()
                        .map(|(set, count)| (join(&set), json!(count.to_string())))
                        .collect();
                    obj.insert("flag_f".into(), Value::Object(ff));
                }
            }
            writeln!(out, "{}", Value::Object(obj)).map_err(io)?;
        }
    }
    Ok(0)
}

fn join(set: &[usize]) -> String {
    set.iter()
        .map(usize::to_string)
        .collect::<Vec<_>>()
        .join(",")
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct MatroidFile {
    n: usize,
    rank: usize,
    bases: Option<Vec<Vec<usize>>>,
    cyclic_flats: Option<Vec<FlatFile>>,
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct FlatFile {
    set: Vec<usize>,
    rank: usize,
}

fn load_matroid(args: &ComputeArgs) -> Result<Matroid> {
    if let Some(path) = &args.file {
        let text = fs::read_to_string(path).map_err(|e| CdError::io(path, e))?;
        return parse_matroid_json(&text);
    }
    Ok(match args.builtin.expect("clap requires a source") {
        Builtin::Uniform => Matroid::uniform(need(args.k, "k")?, need(args.n, "n")?)?,
        Builtin::Fano => catalog::fano(),
        Builtin::Vamos => catalog::vamos(),
        Builtin::Mk4 => catalog::mk4(),
        Builtin::ExampleM1 => catalog::example_m(1),
        Builtin::ExampleM2 => catalog::example_m(2),
        Builtin::ExampleM3 => catalog::example_m(3),
        Builtin::Example535 => catalog::example_535(),
        Builtin::Hypersimplex | Builtin::Cuspidal => unreachable!("handled by compute"),
    })
}

/// Reads the matroid file schema; elements are 1-based.
pub fn parse_matroid_json(text: &str) -> Result<Matroid> {
    let file: MatroidFile =
        serde_json::from_str(text).map_err(|e| CdError::Parse(e.to_string()))?;
    let n = file.n;
    let zero_based = |set: &[usize]| -> Result<Vec<usize>> {
        set.iter()
            .map(|&e| {
                if e == 0 || e > n {
                    Err(CdError::InvalidParams(format!(
                        "element {e} outside 1..={n}"
                    )))
                } else {
                    Ok(e - 1)
                }
            })
            .collect()
    };
    match (file.bases, file.cyclic_flats) {
        (Some(bases), None) => {
            let bases = bases
                .iter()
                .map(|b| zero_based(b))
                .collect::<Result<Vec<_>>>()?;
            Matroid::from_basis_lists(n, file.rank, &bases)
        }
        (None, Some(flats)) => {
            let flats = flats
                .iter()
                .map(|f| Ok(CyclicFlat::new(&zero_based(&f.set)?, f.rank)))
                .collect::<Result<Vec<_>>>()?;
            Matroid::from_cyclic_flats(n, file.rank, &flats)
        }
        _ => Err(CdError::Parse(
            "give exactly one of \"bases\" and \"cyclic_flats\"".into(),
        )),
    }
}

struct Check {
    name: String,
    passed: bool,
    detail: String,
}

fn verify(args: &VerifyArgs, out: &mut dyn Write) -> Result<i32> {
    if args.max_n > oracle::DEFAULT_MAX_N {
        return Err(CdError::ScaleExceeded {
            n: args.max_n,
            bound: oracle::DEFAULT_MAX_N,
        });
    }
    let memo = Memo::new();
    let cache = setup(&args.common, &memo)?;
    let families: Vec<Family> = match args.only {
        None => Family::ALL.to_vec(),
        Some(Selector::Hypersimplex) => vec![Family::Uniform],
        Some(Selector::Cuspidal) => vec![Family::Cuspidal],
        Some(Selector::SparsePaving) => vec![Family::SparsePaving],
        Some(Selector::Example535) => vec![Family::Example535],
        Some(Selector::RankTwo) => vec![Family::RankTwo],
        Some(Selector::PaperValues) => Vec::new(),
    };
    let instances = corpus::generate(args.max_n, &families)?;
    let mut checks: Vec<Check> = instances
        .par_iter()
        .map(|inst| {
            let formula = cd_index(&memo, &inst.matroid, EngineOptions::default())?;
            let oracle = oracle_cd_index(&inst.matroid, oracle::DEFAULT_MAX_N)?;
            Ok(Check {
                name: inst.name.clone(),
                passed: formula == oracle,
                detail: format!("formula: {formula}\n  oracle:  {oracle}"),
            })
        })
        .collect::<Result<Vec<_>>>()?;
    if matches!(args.only, None | Some(Selector::PaperValues)) {
        checks.extend(published_checks(&memo)?);
    }
    finish(cache, &memo)?;

    let io = |e| CdError::io("<stdout>", e);
    let failed = checks.iter().filter(|c| !c.passed).count();
    for c in &checks {
        if c.passed {
            writeln!(out, "PASS {}", c.name).map_err(io)?;
        } else {
            writeln!(out, "FAIL {}\n  {}", c.name, c.detail).map_err(io)?;
        }
    }
    writeln!(
        out,
        "verify: {} passed, {failed} failed",
        checks.len() - failed
    )
    .map_err(io)?;
    Ok(if failed == 0 { 0 } else { 1 })
}

fn published_checks(memo: &Memo) -> Result<Vec<Check>> {
    let printed = reference::parse_printed;
    let mut checks = Vec::new();
    let mut compare = |name: &str, got: &NcPoly, want: &NcPoly| {
        checks.push(Check {
            name: name.to_string(),
            passed: got == want,
            detail: format!("computed: {got}\n  printed:  {want}"),
        });
    };
    let u25 = cd_hypersimplex(memo, 2, 5)?;
    compare(
        "published hypersimplex(2,5)",
        &u25,
        &printed(reference::U25_CD)?,
    );
    compare(
        "published ab-index hypersimplex(2,5)",
        &cd_to_ab(&u25)?,
        &printed(reference::U25_AB)?,
    );
    let options = EngineOptions::default();
    let m1 = cd_index(memo, &catalog::example_m(1), options)?;
    let m2 = cd_index(memo, &catalog::example_m(2), options)?;
    compare("published example-m1", &m1, &printed(reference::M1_CD)?);
    compare("published example-m2", &m2, &printed(reference::M2_CD)?);
    compare(
        "published example-m3",
        &cd_index(memo, &catalog::example_m(3), options)?,
        &printed(reference::M2_CD)?,
    );
    let w = w_term(memo, WKey::new(1, 1, 2, 2, 8)?)?;
    compare("published m2 - m1 = W(1,1,2,2,8)", &(&m2 - &m1), &w);
    for (name, m, text) in [
        ("fano", catalog::fano(), reference::FANO_CD),
        ("vamos", catalog::vamos(), reference::VAMOS_CD),
    ] {
        let general = cd_index(memo, &m, options)?;
        compare(&format!("published {name}"), &general, &printed(text)?);
        compare(
            &format!("published {name} sparse paving"),
            &cd_sparse_paving(memo, &m)?,
            &general,
        );
    }
    Ok(checks)
}
