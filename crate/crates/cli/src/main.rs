mod cache;
mod json;

use cache::DiskCache;
use clap::{Args, Parser, Subcommand};
use serde_json::{json, Value};
use std::path::PathBuf;
use std::process::ExitCode;
use std::time::Instant;
use vpf_core::counting::{self, CountStatus, Enumerate, MnsSource, Options};
use vpf_core::exact_core::{rat, Rational};
use vpf_core::exec::Exec;
use vpf_core::mpns::{deform_vector, residue_path, Block, Mns};
use vpf_core::oracle;
use vpf_core::root_systems::{self, Family, RootSystemType};
use vpf_core::walls::enumerate_chambers;
use vpf_core::Error;

#[derive(Parser)]
#[command(name = "vpf", version, about = "Exact vector partition functions for classical root systems")]
struct Cli {
    /// Print JSON instead of plain values.
    #[arg(long, global = true)]
    json: bool,
    /// Worker threads for the nested-set fan-out (default: available parallelism).
    #[arg(long, global = true)]
    threads: Option<usize>,
    /// Directory of the nested-set cache; falls back to VPF_CACHE_DIR.
    #[arg(long, global = true, env = "VPF_CACHE_DIR")]
    cache_dir: Option<PathBuf>,
    /// Recompute with the brute-force oracle and fail on mismatch.
    #[arg(long, global = true)]
    oracle_check: bool,
    #[command(subcommand)]
    command: Command,
}

#[derive(Args, Clone)]
struct Target {
    /// Root system family: A, B, C or D.
    #[arg(long = "type")]
    family: String,
    #[arg(long)]
    rank: usize,
    /// Comma-separated coordinates (integers, or rationals where allowed).
    #[arg(long, allow_hyphen_values = true)]
    vector: String,
}

#[derive(Subcommand)]
enum Command {
    /// Number of ways to write the vector as a sum of positive roots.
    Count(Target),
    /// Normalized volume of the partition polytope.
    Volume(Target),
    /// Quasipolynomial valid on the chamber of a generic vector.
    Parametric(Target),
    /// k -> N(k h) as a quasipolynomial.
    Ehrhart(Target),
    /// Maximal proper nested sets adapted to the vector.
    Mpns(Target),
    /// Chambers of the cone (rank at most 4).
    Chambers {
        #[arg(long = "type")]
        family: String,
        #[arg(long)]
        rank: usize,
        #[arg(long)]
        count_only: bool,
    },
    /// Brute-force reference values.
    Oracle {
        #[command(subcommand)]
        what: OracleCommand,
    },
    /// Turn an H-representation JSON file into partition-polytope data.
    Convert {
        /// JSON file with {"C": [[..]], "lambda": [..]} or {"Q": [[..]], "b": [..]}; "-" reads stdin.
        input: PathBuf,
    },
}

#[derive(Subcommand)]
enum OracleCommand {
    Count {
        #[command(flatten)]
        target: Target,
        /// Bound on the sum of |h_i|.
        #[arg(long, default_value_t = oracle::DEFAULT_GUARD)]
        guard: u64,
    },
    Volume {
        #[command(flatten)]
        target: Target,
        #[arg(long, default_value_t = oracle::DEFAULT_GUARD)]
        guard: u64,
    },
}

/// Failure with its exit code and one-line diagnostic.
struct Failure {
    code: u8,
    message: String,
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        let code = match e {
            Error::TooLarge { .. } | Error::RankTooLarge { .. } => 3,
            Error::InvalidRank { .. }
            | Error::DimensionMismatch { .. }
            | Error::NonGenericVector
            | Error::LatticeViolation
            | Error::InvalidInput(_)
            | Error::SingularBasisBlock
            | Error::NoGenericDirection => 2,
            _ => 1,
        };
        Failure { code, message: e.to_string() }
    }
}

fn input_error(message: impl Into<String>) -> Failure {
    Failure { code: 2, message: message.into() }
}

type Outcome = Result<String, Failure>;

fn parse_type(family: &str, rank: usize) -> Result<RootSystemType, Failure> {
    let f = Family::parse(family).ok_or_else(|| input_error(format!("unknown type {family:?}")))?;
    Ok(RootSystemType::new(f, rank)?)
}

fn parse_rationals(s: &str) -> Result<Vec<Rational>, Failure> {
    s.split(',')
        .map(|x| {
            let x = x.trim().replace('\u{2212}', "-");
            x.parse::<Rational>().map_err(|_| input_error(format!("bad coordinate {x:?}")))
        })
        .collect()
}

fn parse_integers(s: &str) -> Result<Vec<i64>, Failure> {
    s.split(',')
        .map(|x| {
            let x = x.trim().replace('\u{2212}', "-");
            x.parse::<i64>().map_err(|_| input_error(format!("bad integer coordinate {x:?}")))
        })
        .collect()
}

fn check_len(t: RootSystemType, len: usize) -> Result<(), Failure> {
    if len != t.dim() {
        return Err(Error::DimensionMismatch { expected: t.dim(), got: len }.into());
    }
    Ok(())
}

fn integer_target(target: &Target) -> Result<(RootSystemType, Vec<i64>), Failure> {
    let t = parse_type(&target.family, target.rank)?;
    let h = parse_integers(&target.vector)?;
    check_len(t, h.len())?;
    if t.family == Family::A && h.iter().sum::<i64>() != 0 {
        return Err(Error::LatticeViolation.into());
    }
    Ok((t, h))
}

fn rational_target(target: &Target) -> Result<(RootSystemType, Vec<Rational>), Failure> {
    let t = parse_type(&target.family, target.rank)?;
    let v = parse_rationals(&target.vector)?;
    check_len(t, v.len())?;
    if t.family == Family::A && v.iter().sum::<Rational>() != rat(0) {
        return Err(input_error("type A vectors must have zero coordinate sum"));
    }
    Ok((t, v))
}

fn header(t: RootSystemType, vector: Value) -> serde_json::Map<String, Value> {
    let mut m = serde_json::Map::new();
    m.insert("type".into(), json!(t.family.letter().to_string()));
    m.insert("rank".into(), json!(t.rank));
    m.insert("vector".into(), vector);
    m
}

fn finish(mut m: serde_json::Map<String, Value>, start: Instant) -> String {
    m.insert("elapsed_ms".into(), json!(start.elapsed().as_millis() as u64));
    Value::Object(m).to_string()
}

fn oracle_mismatch(what: &str, ours: &str, reference: &str) -> Failure {
    Failure { code: 4, message: format!("oracle mismatch for {what}: computed {ours}, oracle {reference}") }
}

struct Ctx<'a> {
    json: bool,
    oracle_check: bool,
    opts: Options<'a>,
}

fn run_count(ctx: &Ctx, target: &Target) -> Outcome {
    let start = Instant::now();
    let (t, h) = integer_target(target)?;
    let r = counting::count_points_with(t, &h, &ctx.opts)?;
    if r.status == CountStatus::LatticeViolation {
        return Err(Error::LatticeViolation.into());
    }
    if ctx.oracle_check {
        let reference = oracle::brute_count(t, &h)?;
        if reference != r.value {
            return Err(oracle_mismatch("count", &r.value.to_string(), &reference.to_string()));
        }
    }
    if !ctx.json {
        return Ok(r.value.to_string());
    }
    let mut m = header(t, json!(h));
    m.insert("value".into(), json!(r.value.to_string()));
    m.insert("chamber_signature".into(), json!(r.signature.map(|s| s.key())));
    m.insert("mns_count".into(), json!(r.mns_count));
    m.insert("status".into(), json!(r.status.as_str()));
    Ok(finish(m, start))
}

fn run_volume(ctx: &Ctx, target: &Target) -> Outcome {
    let start = Instant::now();
    let (t, v) = rational_target(target)?;
    let inside = root_systems::cone_contains(t, &v)?;
    let value = counting::volume_with(t, &v, &ctx.opts)?;
    if ctx.oracle_check {
        let h: Vec<i64> = v
            .iter()
            .map(vpf_core::exact_core::to_i64)
            .collect::<Option<_>>()
            .ok_or_else(|| input_error("the volume oracle needs an integer vector"))?;
        let reference = if inside { oracle::volume_leading(t, &h)? } else { rat(0) };
        if reference != value {
            return Err(oracle_mismatch("volume", &value.to_string(), &reference.to_string()));
        }
    }
    if !ctx.json {
        return Ok(value.to_string());
    }
    let (signature, mns_count) = if inside {
        let g = deform_vector(t, &v)?;
        let sig = vpf_core::walls::chamber_signature(t, &g.point)?.key();
        (Some(sig), ctx.opts.source.mns_list(t, &g)?.len())
    } else {
        (None, 0)
    };
    let mut m = header(t, json::rationals(&v));
    m.insert("value".into(), json::rational(&value));
    m.insert("chamber_signature".into(), json!(signature));
    m.insert("mns_count".into(), json!(mns_count));
    m.insert("status".into(), json!(if inside { "inside_cone" } else { "outside_cone" }));
    Ok(finish(m, start))
}

fn run_parametric(ctx: &Ctx, target: &Target) -> Outcome {
    let start = Instant::now();
    let (t, v) = rational_target(target)?;
    if ctx.oracle_check {
        return Err(input_error("--oracle-check is available for count, volume and ehrhart"));
    }
    let q = counting::parametric_count_with(t, &v, &ctx.opts)?;
    if !ctx.json {
        return Ok(q.to_string());
    }
    let mut m = header(t, json::rationals(&v));
    m.insert("chamber_signature".into(), json!(q.chamber.as_ref().map(|s| s.key())));
    m.insert("value".into(), json::quasipolynomial(&q));
    m.insert("status".into(), json!("inside_cone"));
    Ok(finish(m, start))
}

fn run_ehrhart(ctx: &Ctx, target: &Target) -> Outcome {
    let start = Instant::now();
    let (t, h) = integer_target(target)?;
    let q = counting::ehrhart_with(t, &h, &ctx.opts)?;
    if ctx.oracle_check {
        let degree = t.num_roots() - t.rank;
        for k in 0..=(2 * degree + 2) as i64 {
            let hk: Vec<i64> = h.iter().map(|x| x * k).collect();
            let reference = Rational::from(oracle::brute_count(t, &hk)?);
            let ours = q.eval(&[k]);
            if ours != reference {
                return Err(oracle_mismatch(&format!("k = {k}"), &ours.to_string(), &reference.to_string()));
            }
        }
    }
    if !ctx.json {
        return Ok(q.to_string());
    }
    let mut m = header(t, json!(h));
    m.insert("chamber_signature".into(), json!(q.chamber.as_ref().map(|s| s.key())));
    m.insert("value".into(), json::quasipolynomial(&q));
    m.insert("status".into(), json!("inside_cone"));
    Ok(finish(m, start))
}

/// Nested sets as trees: each block hangs under the smallest block containing it.
fn mns_tree(t: RootSystemType, m: &Mns) -> Value {
    let n = t.dim();
    let blocks = m.tree_order(t);
    let root_sets: Vec<Vec<Vec<i64>>> = blocks.iter().map(|b| b.roots(n)).collect();
    let parent: Vec<Option<usize>> = (0..blocks.len())
        .map(|i| {
            (i + 1..blocks.len())
                .filter(|&j| root_sets[i].iter().all(|r| root_sets[j].contains(r)))
                .min_by_key(|&j| root_sets[j].len())
        })
        .collect();
    fn node(i: usize, blocks: &[&Block], parent: &[Option<usize>], t: RootSystemType) -> Value {
        let children: Vec<Value> = (0..blocks.len())
            .filter(|&j| parent[j] == Some(i))
            .map(|j| node(j, blocks, parent, t))
            .collect();
        json!({"block": blocks[i].to_string(), "theta": blocks[i].theta(t).to_string(), "children": children})
    }
    let top = (0..blocks.len()).find(|&i| parent[i].is_none()).unwrap_or(0);
    node(top, &blocks, &parent, t)
}

fn run_mpns(ctx: &Ctx, target: &Target) -> Outcome {
    let start = Instant::now();
    let (t, v) = rational_target(target)?;
    let g = deform_vector(t, &v)?;
    let list = ctx.opts.source.mns_list(t, &g)?;
    let mut rows = Vec::with_capacity(list.len());
    for m in &list {
        let p = residue_path(t, m)?;
        rows.push((m, p));
    }
    if !ctx.json {
        let mut out = vec![list.len().to_string()];
        for (m, p) in &rows {
            let thetas: Vec<String> = p.steps.iter().map(|s| s.root.to_string()).collect();
            let blocks: Vec<String> = m.tree_order(t).iter().map(|b| b.to_string()).collect();
            out.push(format!("{} | theta {} | vol {} | sign {}", blocks.join(" "), thetas.join(", "), p.vol, p.sign));
        }
        return Ok(out.join("\n"));
    }
    let items: Vec<Value> = rows
        .iter()
        .map(|(m, p)| {
            json!({
                "tree": mns_tree(t, m),
                "theta": p.steps.iter().map(|s| s.root.to_string()).collect::<Vec<_>>(),
                "vol": p.vol.to_string(),
                "sign": p.sign,
            })
        })
        .collect();
    let mut m = header(t, json::rationals(&v));
    m.insert("point".into(), json::rationals(&g.point));
    m.insert("mns_count".into(), json!(list.len()));
    m.insert("mns".into(), Value::Array(items));
    Ok(finish(m, start))
}

fn run_chambers(ctx: &Ctx, family: &str, rank: usize, count_only: bool) -> Outcome {
    let t = parse_type(family, rank)?;
    let e = enumerate_chambers(t)?;
    if ctx.json {
        let mut m = serde_json::Map::new();
        m.insert("type".into(), json!(t.family.letter().to_string()));
        m.insert("rank".into(), json!(t.rank));
        m.insert("count".into(), json!(e.count));
        if !count_only {
            m.insert("representatives".into(), json!(e.representatives));
        }
        return Ok(Value::Object(m).to_string());
    }
    if count_only {
        return Ok(e.count.to_string());
    }
    let mut out = vec![e.count.to_string()];
    out.extend(e.representatives.iter().map(|r| {
        r.iter().map(|x| x.to_string()).collect::<Vec<_>>().join(",")
    }));
    Ok(out.join("\n"))
}

fn run_oracle(ctx: &Ctx, what: &OracleCommand) -> Outcome {
    let start = Instant::now();
    let (target, guard, is_count) = match what {
        OracleCommand::Count { target, guard } => (target, *guard, true),
        OracleCommand::Volume { target, guard } => (target, *guard, false),
    };
    let (t, h) = integer_target(target)?;
    if !root_systems::lattice_contains(t, &h) {
        return Err(Error::LatticeViolation.into());
    }
    let inside = root_systems::cone_contains_int(t, &h)?;
    let value = if is_count {
        oracle::brute_count_with_guard(t, &h, guard)?.to_string()
    } else if inside {
        oracle::volume_leading_with_guard(t, &h, guard)?.to_string()
    } else {
        "0".to_string()
    };
    if !ctx.json {
        return Ok(value);
    }
    let mut m = header(t, json!(h));
    m.insert("value".into(), json!(value));
    m.insert("chamber_signature".into(), Value::Null);
    m.insert("mns_count".into(), Value::Null);
    m.insert("status".into(), json!(if inside { "inside_cone" } else { "outside_cone" }));
    Ok(finish(m, start))
}

#[derive(serde::Deserialize)]
struct Hrep {
    #[serde(rename = "C")]
    c: Option<Vec<Vec<String>>>,
    lambda: Option<Vec<String>>,
    #[serde(rename = "Q")]
    q: Option<Vec<Vec<String>>>,
    b: Option<Vec<String>>,
}

fn to_rationals(v: &[String]) -> Result<Vec<Rational>, Failure> {
    parse_rationals(&v.join(","))
}

fn run_convert(ctx: &Ctx, input: &PathBuf) -> Outcome {
    let text = if input.as_os_str() == "-" {
        std::io::read_to_string(std::io::stdin()).map_err(|e| input_error(e.to_string()))?
    } else {
        std::fs::read_to_string(input).map_err(|e| input_error(format!("{}: {e}", input.display())))?
    };
    // numbers may be given as JSON numbers or strings
    let raw: Value = serde_json::from_str(&text).map_err(|e| input_error(e.to_string()))?;
    let normalized = stringify_numbers(raw);
    let h: Hrep = serde_json::from_value(normalized).map_err(|e| input_error(e.to_string()))?;
    let matrix = |rows: &[Vec<String>]| rows.iter().map(|r| to_rationals(r)).collect::<Result<Vec<_>, _>>();
    let poly = match (&h.c, &h.lambda, &h.q, &h.b) {
        (Some(c), Some(l), None, None) => root_systems::hrep_to_partition_polytope(&matrix(c)?, &to_rationals(l)?)?,
        (None, None, Some(q), Some(b)) => root_systems::hrep_raw_to_partition_polytope(&matrix(q)?, &to_rationals(b)?)?,
        _ => return Err(input_error("expected either C and lambda, or Q and b")),
    };
    if ctx.json {
        let gens: Vec<Value> = poly.generators.iter().map(|r| json::rationals(r)).collect();
        return Ok(json!({"generators": gens, "rhs": json::rationals(&poly.rhs)}).to_string());
    }
    let mut out: Vec<String> = poly
        .generators
        .iter()
        .map(|r| r.iter().map(|x| x.to_string()).collect::<Vec<_>>().join(" "))
        .collect();
    out.push(format!("rhs {}", poly.rhs.iter().map(|x| x.to_string()).collect::<Vec<_>>().join(" ")));
    Ok(out.join("\n"))
}

fn stringify_numbers(v: Value) -> Value {
    match v {
        Value::Number(n) => Value::String(n.to_string()),
        Value::Array(a) => Value::Array(a.into_iter().map(stringify_numbers).collect()),
        Value::Object(o) => Value::Object(o.into_iter().map(|(k, v)| (k, stringify_numbers(v))).collect()),
        other => other,
    }
}

fn dispatch(cli: &Cli, source: &dyn MnsSource) -> Outcome {
    let ctx = Ctx {
        json: cli.json,
        oracle_check: cli.oracle_check,
        opts: Options { exec: Exec::Parallel, source },
    };
    match &cli.command {
        Command::Count(t) => run_count(&ctx, t),
        Command::Volume(t) => run_volume(&ctx, t),
        Command::Parametric(t) => run_parametric(&ctx, t),
        Command::Ehrhart(t) => run_ehrhart(&ctx, t),
        Command::Mpns(t) => run_mpns(&ctx, t),
        Command::Chambers { family, rank, count_only } => run_chambers(&ctx, family, *rank, *count_only),
        Command::Oracle { what } => run_oracle(&ctx, what),
        Command::Convert { input } => run_convert(&ctx, input),
    }
}

#[cfg(feature = "parallel")]
fn with_pool(threads: Option<usize>, f: impl FnOnce() -> Outcome + Send) -> Outcome {
    match threads {
        Some(n) => {
            let pool = rayon::ThreadPoolBuilder::new()
                .num_threads(n.max(1))
                .build()
                .map_err(|e| Failure { code: 1, message: e.to_string() })?;
            pool.install(f)
        }
        None => f(),
    }
}

#[cfg(not(feature = "parallel"))]
fn with_pool(_threads: Option<usize>, f: impl FnOnce() -> Outcome + Send) -> Outcome {
    f()
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let result = with_pool(cli.threads, || match &cli.cache_dir {
        Some(dir) => dispatch(&cli, &DiskCache::new(dir.clone())),
        None => dispatch(&cli, &Enumerate),
    });
    match result {
        Ok(text) => {
            use std::io::Write;
            // a closed pipe downstream is not an error of ours
            let _ = writeln!(std::io::stdout().lock(), "{text}");
            ExitCode::SUCCESS
        }
        Err(f) => {
            eprintln!("error: {}", f.message);
            ExitCode::from(f.code)
        }
    }
}
