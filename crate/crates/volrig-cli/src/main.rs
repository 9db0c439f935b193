//! Command-line front end: rank reports, named claim checkers, the formula
//! grid runner, and JSON dumps of complexes and labeled matrices.
//!
//! stdout carries machine-parseable JSON only; human-readable tables go to
//! stderr under `--pretty`. Exit codes: 0 pass, 1 fail, 2 malformed input or
//! unknown claim, 3 parameter violation, 4 computed but uncertified.

use std::io::{Read as _, Write as _};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use volrig::complex::{braced_hinge, SimplicialComplex};
use volrig::geometry::{random_rational_embedding, LengthTable};
use volrig::matching::DeficiencyCfg;
use volrig::matrices::{altitude_factorization, cm_jacobian, rigidity_matrix, volume_rigidity_matrix};
use volrig::rank::{
    generic_rank_altitude, generic_rank_cm, generic_rank_rigidity, generic_rank_volume,
    LengthMode,
};
use volrig::rng::derive_seed;
use volrig::verify::{self, Verdict};
use volrig::{Error, RankCfg, RankMode};

const EXIT_FAIL: u8 = 1;
const EXIT_MALFORMED: u8 = 2;
const EXIT_PARAM: u8 = 3;
const EXIT_UNCERTIFIED: u8 = 4;

#[derive(Parser)]
#[command(name = "volrig", about = "Exact-arithmetic volume rigidity workbench", version)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Generic-rank report for one of the rigidity-type matrices.
    Rank(RankArgs),
    /// Run a named claim checker and print its verdict.
    Check(CheckArgs),
    /// Run the rank-formula checkers over a (d, k, n) grid.
    Grid(GridArgs),
    /// Dump a complex (or one of its matrices) as JSON.
    Dump(DumpArgs),
}

#[derive(Args)]
struct InputArgs {
    /// Path to a complex JSON file ({"n", "dim", "facets"}); "-" for stdin.
    #[arg(long, conflicts_with = "builtin")]
    input: Option<String>,
    /// Builtin complex: delta:N:K, complete-graph:N, or braced-hinge.
    #[arg(long)]
    builtin: Option<String>,
}

impl InputArgs {
    fn load(&self) -> Result<SimplicialComplex, CliError> {
        match (&self.input, &self.builtin) {
            (Some(path), None) => {
                let mut text = String::new();
                if path == "-" {
                    std::io::stdin()
                        .read_to_string(&mut text)
                        .map_err(|e| CliError::Malformed(e.to_string()))?;
                } else {
                    text = std::fs::read_to_string(path)
                        .map_err(|e| CliError::Malformed(format!("{path}: {e}")))?;
                }
                let value: serde_json::Value = serde_json::from_str(&text)
                    .map_err(|e| CliError::Malformed(e.to_string()))?;
                Ok(SimplicialComplex::from_json(&value)?)
            }
            (None, Some(spec)) => builtin_complex(spec),
            _ => Err(CliError::Malformed(
                "exactly one of --input or --builtin is required".into(),
            )),
        }
    }
}

fn builtin_complex(spec: &str) -> Result<SimplicialComplex, CliError> {
    let parts: Vec<&str> = spec.split(':').collect();
    match parts.as_slice() {
        ["delta", n, k] => {
            let n = parse_num(n)?;
            let k = parse_num(k)?;
            Ok(SimplicialComplex::complete(n, k)?)
        }
        ["complete-graph", n] => Ok(SimplicialComplex::complete(parse_num(n)?, 1)?),
        ["braced-hinge"] => Ok(braced_hinge().0),
        _ => Err(CliError::Malformed(format!("unknown builtin {spec:?}"))),
    }
}

fn parse_num(s: &str) -> Result<usize, CliError> {
    s.parse()
        .map_err(|_| CliError::Malformed(format!("bad number {s:?}")))
}

#[derive(Clone, Copy, ValueEnum)]
#[value(rename_all = "UPPER")]
enum MatrixKind {
    #[value(alias = "b")]
    B,
    #[value(alias = "c")]
    C,
    #[value(alias = "r")]
    R,
    #[value(alias = "l")]
    L,
    #[value(alias = "d")]
    D,
    #[value(alias = "p")]
    P,
}

#[derive(Args)]
struct RankArgs {
    #[command(flatten)]
    input: InputArgs,
    /// Which matrix to rank.
    #[arg(long, value_enum)]
    matrix: MatrixKind,
    /// Ambient dimension (required for B, R, L and embedded C).
    #[arg(long)]
    d: Option<usize>,
    #[arg(long, default_value_t = 3)]
    trials: usize,
    #[arg(long)]
    seed: Option<u64>,
    /// Trial backend; modp confirms the best trial exactly.
    #[arg(long, value_enum, default_value_t = CliMode::Modp)]
    mode: CliMode,
    /// Sample the length Jacobian at free random lengths instead of lengths
    /// induced by an embedding.
    #[arg(long)]
    free_lengths: bool,
    /// Coordinate size of sampled embeddings.
    #[arg(long, default_value_t = 20, value_parser = clap::value_parser!(u32).range(1..=48))]
    bits: u32,
}

#[derive(Clone, Copy, ValueEnum)]
enum CliMode {
    Exact,
    Modp,
}

#[derive(Args)]
struct CheckArgs {
    /// Claim name: complete-rank, skeleton-rank, top-rank, vertex-addition,
    /// volume-quadratic, braced-hinge, chain-rule, altitude-factorization,
    /// scaling-reduction, matching-rank, hall-deficiency, cm-matching.
    #[arg(long)]
    claim: String,
    #[command(flatten)]
    input: InputArgs,
    #[arg(long)]
    d: Option<usize>,
    #[arg(long)]
    k: Option<usize>,
    #[arg(long)]
    n: Option<usize>,
    /// Vertex argument (vertex-addition).
    #[arg(long)]
    v: Option<usize>,
    #[arg(long)]
    seed: Option<u64>,
    #[arg(long, default_value_t = 3)]
    trials: usize,
    /// Subset budget for the deficiency scan.
    #[arg(long, default_value_t = 1 << 16)]
    budget: usize,
    /// Restrict the deficiency scan to subsets of at most this size.
    #[arg(long)]
    max_size: Option<usize>,
    #[arg(long, default_value_t = 20, value_parser = clap::value_parser!(u32).range(1..=48))]
    bits: u32,
    /// Extra off-by-default identities for volume-quadratic.
    #[arg(long)]
    stretch: bool,
    /// Human-readable summary on stderr.
    #[arg(long)]
    pretty: bool,
}

#[derive(Args)]
struct GridArgs {
    #[arg(long, default_value_t = 4)]
    dmax: usize,
    #[arg(long, default_value_t = 8)]
    nmax: usize,
    #[arg(long)]
    seed: Option<u64>,
    /// Concurrent cells.
    #[arg(long, default_value_t = 2)]
    jobs: usize,
    /// Override the desk-scale guardrails (dmax <= 6, nmax <= 10).
    #[arg(long)]
    force: bool,
    #[arg(long)]
    pretty: bool,
}

#[derive(Args)]
struct DumpArgs {
    #[command(flatten)]
    input: InputArgs,
    /// Dump a labeled matrix instead of the complex itself.
    #[arg(long, value_enum)]
    matrix: Option<MatrixKind>,
    /// Dump the embedding the given seed samples (for reproducibility).
    #[arg(long, conflicts_with = "matrix")]
    embedding: bool,
    #[arg(long)]
    d: Option<usize>,
    #[arg(long)]
    seed: Option<u64>,
    #[arg(long, default_value_t = 20, value_parser = clap::value_parser!(u32).range(1..=48))]
    bits: u32,
}

enum CliError {
    Lib(Error),
    Malformed(String),
}

impl From<Error> for CliError {
    fn from(e: Error) -> Self {
        CliError::Lib(e)
    }
}

impl CliError {
    fn exit_code(&self) -> u8 {
        match self {
            CliError::Malformed(_) => EXIT_MALFORMED,
            CliError::Lib(e) => match e {
                Error::Parse(_) | Error::BadRational(_) | Error::EmptyFacets => EXIT_MALFORMED,
                Error::OracleAudit(_) | Error::BadPrime(_) => EXIT_FAIL,
                _ => EXIT_PARAM,
            },
        }
    }

    fn message(&self) -> String {
        match self {
            CliError::Malformed(m) => m.clone(),
            CliError::Lib(e) => e.to_string(),
        }
    }
}

fn env_seed() -> u64 {
    std::env::var("VOLRIG_SEED")
        .ok()
        .and_then(|s| s.parse().ok())
        .unwrap_or(1)
}

fn rank_cfg(seed: Option<u64>, trials: usize, mode: CliMode, bits: u32) -> RankCfg {
    RankCfg {
        trials,
        seed: seed.unwrap_or_else(env_seed),
        mode: match mode {
            CliMode::Exact => RankMode::Exact,
            CliMode::Modp => RankMode::ModP,
        },
        bits,
    }
}

fn emit(value: &serde_json::Value) {
    let mut out = std::io::stdout().lock();
    serde_json::to_writer(&mut out, value).expect("stdout");
    let _ = out.write_all(b"\n");
}

fn cmd_rank(args: RankArgs) -> Result<u8, CliError> {
    let x = args.input.load()?;
    let cfg = rank_cfg(args.seed, args.trials, args.mode, args.bits);
    let need_d = || {
        args.d.ok_or_else(|| {
            CliError::Lib(Error::ParamRange("--d is required for this matrix".into()))
        })
    };
    let report = match args.matrix {
        MatrixKind::B => generic_rank_volume(&x, need_d()?, &cfg)?,
        MatrixKind::R => generic_rank_rigidity(&x.one_skeleton()?, need_d()?, &cfg)?,
        MatrixKind::L => generic_rank_altitude(&x, need_d()?, &cfg)?,
        MatrixKind::C => {
            let mode = if args.free_lengths {
                LengthMode::Free
            } else {
                LengthMode::FromEmbedding(need_d()?)
            };
            generic_rank_cm(&x, mode, &cfg)?
        }
        MatrixKind::D | MatrixKind::P => {
            return Err(CliError::Lib(Error::ParamRange(
                "rank reports cover B, C, R, L".into(),
            )))
        }
    };
    emit(&serde_json::to_value(&report).expect("report serializes"));
    Ok(0)
}

fn verdict_exit(v: &Verdict) -> u8 {
    if !v.pass {
        EXIT_FAIL
    } else if verify::verdict_is_certified(v) {
        0
    } else {
        EXIT_UNCERTIFIED
    }
}

fn cmd_check(args: CheckArgs) -> Result<u8, CliError> {
    let seed = args.seed.unwrap_or_else(env_seed);
    let cfg = RankCfg {
        trials: args.trials,
        seed,
        mode: RankMode::ModP,
        bits: args.bits,
    };
    let need = |name: &str, v: Option<usize>| {
        v.ok_or_else(|| CliError::Lib(Error::ParamRange(format!("--{name} is required"))))
    };
    let verdict = match args.claim.as_str() {
        "complete-rank" => verify::check_complete_rank(
            need("d", args.d)?,
            need("k", args.k)?,
            need("n", args.n)?,
            &cfg,
        )?,
        "skeleton-rank" => verify::check_simplex_skeleton_rank(need("d", args.d)?, &cfg)?,
        "top-rank" => verify::check_top_rank(need("d", args.d)?, need("n", args.n)?, &cfg)?,
        "vertex-addition" => {
            let x = args.input.load()?;
            verify::check_vertex_addition(&x, need("v", args.v)?, need("d", args.d)?, &cfg)?
        }
        "volume-quadratic" => {
            let k = need("k", args.k)?;
            if k < 2 {
                return Err(CliError::Lib(Error::ParamRange("need k >= 2".into())));
            }
            let table = LengthTable::regular_unit(k + 1);
            if args.stretch {
                verify::check_volume_quadratic_stretch(&table)?
            } else {
                verify::check_volume_quadratic(&table)?
            }
        }
        "braced-hinge" => verify::check_braced_hinge(&cfg)?,
        "chain-rule" => {
            let x = args.input.load()?;
            verify::check_chain_rule(&x, need("d", args.d)?, seed)?
        }
        "altitude-factorization" => {
            let x = args.input.load()?;
            verify::check_altitude_factorization(&x, need("d", args.d)?, seed)?
        }
        "scaling-reduction" => verify::check_scaling_reduction(need("d", args.d)?)?,
        "matching-rank" => {
            let x = args.input.load()?;
            verify::check_matching_rank(&x, need("d", args.d)?, &cfg)?
        }
        "hall-deficiency" => {
            let x = args.input.load()?;
            let dc = DeficiencyCfg {
                seed,
                bits: args.bits,
                budget: args.budget,
                max_size: args.max_size,
                stop_at_first_negative: false,
            };
            verify::check_hall_deficiency(&x, need("d", args.d)?, &dc)?
        }
        "cm-matching" => {
            let x = args.input.load()?;
            verify::check_cm_matching(&x, &cfg)?
        }
        other => return Err(CliError::Malformed(format!("unknown claim {other:?}"))),
    };
    if args.pretty {
        eprintln!(
            "{}: {} (mode {}, {} ms)",
            verdict.claim,
            if verdict.pass { "pass" } else { "FAIL" },
            verdict.mode,
            verdict.runtime_ms
        );
    }
    emit(&serde_json::to_value(&verdict).expect("verdict serializes"));
    Ok(verdict_exit(&verdict))
}

fn grid_cells(dmax: usize, nmax: usize) -> Vec<(usize, usize, usize)> {
    let mut cells = Vec::new();
    for d in 2..=dmax {
        for k in 1..=d {
            let n_min = d + 1;
            for n in n_min..=nmax {
                if k + 1 == d && n == d + 1 {
                    cells.push((d, k, n)); // routed to the skeleton checker
                } else if k == d || k + 1 < d || n >= d + 2 {
                    cells.push((d, k, n));
                }
            }
        }
    }
    cells
}

fn cmd_grid(args: GridArgs) -> Result<u8, CliError> {
    if !args.force && (args.dmax > 6 || args.nmax > 10) {
        return Err(CliError::Lib(Error::ParamRange(
            "desk-scale guardrails: dmax <= 6 and nmax <= 10 (use --force to override)".into(),
        )));
    }
    let seed = args.seed.unwrap_or_else(env_seed);
    let cells = grid_cells(args.dmax, args.nmax);
    let jobs = args.jobs.max(1);
    let mut results: Vec<(usize, Verdict)> = Vec::with_capacity(cells.len());

    // cells share nothing but the seed derivation
    std::thread::scope(|scope| {
        let mut handles = Vec::new();
        for chunk in cells.chunks(cells.len().div_ceil(jobs).max(1)) {
            let chunk: Vec<(usize, (usize, usize, usize))> = cells
                .iter()
                .enumerate()
                .filter(|(_, c)| chunk.contains(c))
                .map(|(i, c)| (i, *c))
                .collect();
            handles.push(scope.spawn(move || {
                chunk
                    .into_iter()
                    .map(|(i, (d, k, n))| {
                        let cfg = RankCfg {
                            seed: derive_seed(seed, i as u64),
                            ..RankCfg::default()
                        };
                        let verdict = if k == d {
                            verify::check_top_rank(d, n, &cfg)
                        } else {
                            verify::check_complete_rank(d, k, n, &cfg)
                        };
                        (i, verdict)
                    })
                    .collect::<Vec<_>>()
            }));
        }
        for handle in handles {
            for (i, verdict) in handle.join().expect("grid worker") {
                match verdict {
                    Ok(v) => results.push((i, v)),
                    Err(e) => results.push((
                        i,
                        Verdict {
                            claim: "grid-cell-error".into(),
                            params: serde_json::json!({ "cell": i }),
                            computed: serde_json::json!(e.to_string()),
                            expected: serde_json::Value::Null,
                            pass: false,
                            mode: "error".into(),
                            seed,
                            runtime_ms: 0,
                        },
                    )),
                }
            }
        }
    });
    results.sort_by_key(|(i, _)| *i);

    let mut all_pass = true;
    for (i, v) in &results {
        let (d, k, n) = cells[*i];
        let mut value = serde_json::to_value(v).expect("verdict serializes");
        value["params"] = serde_json::json!({ "d": d, "k": k, "n": n });
        emit(&value);
        if args.pretty {
            eprintln!(
                "d={d} k={k} n={n}: {} ({})",
                if v.pass { "pass" } else { "FAIL" },
                v.mode
            );
        }
        all_pass &= v.pass;
    }
    if args.pretty {
        eprintln!(
            "{} cells, {}",
            results.len(),
            if all_pass { "all pass" } else { "FAILURES" }
        );
    }
    Ok(if all_pass { 0 } else { EXIT_FAIL })
}

fn cmd_dump(args: DumpArgs) -> Result<u8, CliError> {
    let x = args.input.load()?;
    if args.matrix.is_none() && !args.embedding {
        emit(&x.to_json());
        return Ok(0);
    }
    let d = args.d.ok_or_else(|| {
        CliError::Lib(Error::ParamRange(
            "--d is required for matrix and embedding dumps".into(),
        ))
    })?;
    let seed = args.seed.unwrap_or_else(env_seed);
    let p = random_rational_embedding(x.n_vertices(), d, derive_seed(seed, 0), args.bits);
    let Some(kind) = args.matrix else {
        emit(&p.to_json());
        return Ok(0);
    };
    let m = match kind {
        MatrixKind::B => volume_rigidity_matrix(&x, &p)?,
        MatrixKind::R => rigidity_matrix(&x.one_skeleton()?, &p)?,
        MatrixKind::C => {
            let lengths = volrig::geometry::squared_edge_lengths(&x, &p)?;
            cm_jacobian(&x, &lengths)?
        }
        MatrixKind::L => altitude_factorization(&x, &p)?.0,
        MatrixKind::D => altitude_factorization(&x, &p)?.1,
        MatrixKind::P => altitude_factorization(&x, &p)?.2,
    };
    emit(&m.to_json());
    Ok(0)
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let outcome = match cli.command {
        Command::Rank(args) => cmd_rank(args),
        Command::Check(args) => cmd_check(args),
        Command::Grid(args) => cmd_grid(args),
        Command::Dump(args) => cmd_dump(args),
    };
    match outcome {
        Ok(code) => ExitCode::from(code),
        Err(e) => {
            eprintln!("error: {}", e.message());
            ExitCode::from(e.exit_code())
        }
    }
}
