use std::fs;
use std::io::{self, Read, Write};
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use rankforge::bases::{base_graph, enumerate_bases, has_augmentation_property};
use rankforge::constructions::{self, Fixture};
use rankforge::properties::{find_disjoint_in_rows_base, has_unique_base_rows_sums_in, rows_of_a_decomposition_in};
use rankforge::verify::{self, VerifyOptions};
use rankforge::{config, ranks, BinaryMatrix, Error, RankResult, Semiring};

/// Exact binary, boolean and real rank of 0/1 matrices, their bases and
/// the augmentation property.
#[derive(Parser)]
#[command(name = "rankforge", version)]
struct Cli {
    /// Largest matrix (rows x cols) the exact solvers accept.
    #[arg(long, global = true, env = "RANKFORGE_MAX_CELLS")]
    max_cells: Option<usize>,

    /// Run every solver on one thread.
    #[arg(long, global = true)]
    sequential: bool,

    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum RankSemiring {
    Binary,
    Boolean,
    Real,
}

#[derive(Clone, Copy, ValueEnum)]
enum SemiringArg {
    Binary,
    Boolean,
}

impl From<SemiringArg> for Semiring {
    fn from(s: SemiringArg) -> Self {
        match s {
            SemiringArg::Binary => Semiring::Binary,
            SemiringArg::Boolean => Semiring::Boolean,
        }
    }
}

#[derive(Clone, Copy, ValueEnum)]
enum GraphFormat {
    Dot,
    Json,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Property {
    Augmentation,
    DisjointBase,
    UniqueSums,
    RowsOfA,
}

#[derive(Subcommand)]
enum Command {
    /// Print the rank of a matrix.
    Rank {
        /// Matrix file, or `-` for standard input.
        input: String,
        #[arg(long, value_enum, default_value = "binary")]
        semiring: RankSemiring,
        /// Also print the rectangles of an optimal partition or cover.
        #[arg(long)]
        witness: bool,
        #[arg(long)]
        json: bool,
    },
    /// List the bases of a matrix, or print its base graph.
    Bases {
        input: String,
        #[arg(long, value_enum, default_value = "binary")]
        semiring: SemiringArg,
        #[arg(long, value_enum)]
        graph: Option<GraphFormat>,
    },
    /// Test a property; exit status 1 when it does not hold.
    Check {
        input: String,
        #[arg(long, value_enum)]
        property: Property,
        #[arg(long, value_enum, default_value = "binary")]
        semiring: SemiringArg,
        #[arg(long)]
        json: bool,
    },
    /// Emit a named fixture or family member, fully augmented.
    Construct {
        /// One of the fixture names, `gap_binary` or `gap_boolean`.
        name: String,
        #[arg(long)]
        d: Option<usize>,
        #[arg(long)]
        k: Option<usize>,
        /// Write the matrix here and the claims to `<file>.json`; without
        /// it the matrix goes to standard out and the claims to standard
        /// error.
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Check the main results end to end and print a PASS/FAIL table.
    Verify {
        #[arg(long, default_value = "all")]
        theorem: TheoremArg,
        #[arg(long, default_value_t = 2)]
        max_d: usize,
        #[arg(long, default_value_t = 5)]
        max_k: usize,
        /// Flip one fixture entry so that the run must fail.
        #[arg(long, hide = true)]
        corrupt_fixture: bool,
    },
}

#[derive(Clone)]
struct TheoremArg(Vec<u8>);

impl std::str::FromStr for TheoremArg {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, String> {
        if s == "all" {
            return Ok(TheoremArg(verify::THEOREMS.to_vec()));
        }
        match s.parse::<u8>() {
            Ok(t) if verify::THEOREMS.contains(&t) => Ok(TheoremArg(vec![t])),
            _ => Err(format!("expected 1-6 or all, got {s:?}")),
        }
    }
}

enum Failure {
    Lib(Error),
    Usage(String),
    Io(String),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        Failure::Lib(e)
    }
}

impl From<io::Error> for Failure {
    fn from(e: io::Error) -> Self {
        Failure::Io(e.to_string())
    }
}

type Outcome = Result<bool, Failure>;

fn read_matrix(input: &str) -> Result<BinaryMatrix, Failure> {
    let text = if input == "-" {
        let mut buf = String::new();
        io::stdin().read_to_string(&mut buf)?;
        buf
    } else {
        fs::read_to_string(input).map_err(|e| Failure::Io(format!("{input}: {e}")))?
    };
    Ok(text.parse()?)
}

fn emit(out: &mut impl Write, text: &str) -> Result<(), Failure> {
    out.write_all(text.as_bytes())?;
    Ok(())
}

fn json_line(value: &serde_json::Value) -> String {
    format!("{}\n", serde_json::to_string_pretty(value).expect("json value serializes"))
}

fn rank_cmd(input: &str, semiring: RankSemiring, witness: bool, json: bool) -> Outcome {
    let a = read_matrix(input)?;
    let result = match semiring {
        RankSemiring::Real => RankResult::real(ranks::real_rank(&a)),
        RankSemiring::Binary => ranks::binary_rank(&a)?,
        RankSemiring::Boolean => ranks::boolean_rank(&a)?,
    };
    let mut out = io::stdout().lock();
    if json {
        emit(&mut out, &json_line(&result.to_json()))?;
        return Ok(true);
    }
    emit(&mut out, &format!("{}\n", result.rank))?;
    if witness {
        if let Some(w) = &result.witness {
            for rect in &w.rectangles {
                emit(&mut out, &format!("{rect}\n"))?;
            }
        }
    }
    Ok(true)
}

fn bases_cmd(input: &str, s: Semiring, graph: Option<GraphFormat>) -> Outcome {
    let a = read_matrix(input)?;
    let mut out = io::stdout().lock();
    match graph {
        None => {
            for (i, base) in enumerate_bases(&a, s)?.iter().enumerate() {
                emit(&mut out, &format!("{i}: {}\n", base.labels().join(" ")))?;
            }
        }
        Some(GraphFormat::Dot) => emit(&mut out, &base_graph(&a, s)?.to_dot())?,
        Some(GraphFormat::Json) => emit(&mut out, &json_line(&base_graph(&a, s)?.to_json()))?,
    }
    Ok(true)
}

fn check_cmd(input: &str, property: Property, s: Semiring, json: bool) -> Outcome {
    let a = read_matrix(input)?;
    let (holds, value, text) = match property {
        Property::Augmentation => {
            let v = has_augmentation_property(&a, s)?;
            let text = match (&v.spanning_base, &v.counterexample_sources) {
                (_, Some((u, w))) => format!(
                    "augmentation property fails under {s}: {} sources\nsource: {}\nsource: {}\nrank {} -> {} with both appended\n",
                    v.source_count,
                    u.labels().join(" "),
                    w.labels().join(" "),
                    v.rank,
                    v.augmented_rank.unwrap_or(v.rank)
                ),
                (Some(b), None) => format!(
                    "augmentation property holds under {s}\nspanning base: {}\n",
                    b.labels().join(" ")
                ),
                (None, None) => format!("augmentation property holds under {s} (no bases)\n"),
            };
            (v.holds, serde_json::to_value(&v), text)
        }
        Property::DisjointBase => {
            if s != Semiring::Binary {
                return Err(Failure::Usage("disjoint-base is defined for the binary semiring only".into()));
            }
            let base = find_disjoint_in_rows_base(&a)?;
            let text = match &base {
                Some(b) => format!("disjoint-in-rows base: {}\n", b.labels().join(" ")),
                None => "no disjoint-in-rows base\n".to_string(),
            };
            (base.is_some(), serde_json::to_value(serde_json::json!({ "base": base })), text)
        }
        Property::UniqueSums => {
            let v = has_unique_base_rows_sums_in(&a, s)?;
            let text = match &v.counterexample {
                None => {
                    format!("unique base rows sums holds under {s} ({} decompositions)\n", v.decompositions_checked)
                }
                Some(cx) => format!(
                    "unique base rows sums fails under {s}\nV rows {:?} and {:?} have equal sums\nV =\n{}",
                    cx.plus_rows, cx.minus_rows, cx.decomposition.v
                ),
            };
            (v.holds, serde_json::to_value(&v), text)
        }
        Property::RowsOfA => {
            let d = rows_of_a_decomposition_in(&a, s)?;
            let text = match &d {
                Some(d) => format!("rows-of-A decomposition under {s}\nU =\n{}V =\n{}", d.u, d.v),
                None => format!("no rows-of-A decomposition under {s}\n"),
            };
            (d.is_some(), serde_json::to_value(serde_json::json!({ "decomposition": d })), text)
        }
    };
    let mut out = io::stdout().lock();
    if json {
        let mut value = value.expect("verdict serializes");
        if let Some(obj) = value.as_object_mut() {
            obj.insert("holds".into(), holds.into());
        }
        emit(&mut out, &json_line(&value))?;
    } else {
        emit(&mut out, &text)?;
    }
    Ok(holds)
}

fn build_fixture(name: &str, d: Option<usize>, k: Option<usize>) -> Result<Fixture, Failure> {
    let wants_d = matches!(name, "gap_binary" | "gap_boolean");
    if d.is_some() && !wants_d {
        return Err(Failure::Usage(format!("--d does not apply to {name}")));
    }
    if k.is_some() && name != "a_k" {
        return Err(Failure::Usage(format!("--k does not apply to {name}")));
    }
    let fx = match name {
        "gap_binary" => constructions::build_gap_binary(d.unwrap_or(1)),
        "gap_boolean" => constructions::build_gap_boolean(d.unwrap_or(1)),
        "a_k" => constructions::build_ak(k.unwrap_or(3)),
        other => constructions::fixture(other),
    };
    Ok(fx?)
}

fn construct_cmd(name: &str, d: Option<usize>, k: Option<usize>, out: Option<PathBuf>) -> Outcome {
    let fx = build_fixture(name, d, k)?;
    let matrix = fx.fully_augmented()?;
    let mut sidecar = fx.claims_json();
    sidecar["augmented_cols"] = matrix.n_cols().into();
    let sidecar = json_line(&sidecar);
    match out {
        Some(path) => {
            fs::write(&path, matrix.serialize())?;
            let mut claims = path.into_os_string();
            claims.push(".json");
            fs::write(claims, sidecar)?;
        }
        None => {
            emit(&mut io::stdout().lock(), &matrix.serialize())?;
            emit(&mut io::stderr().lock(), &sidecar)?;
        }
    }
    Ok(true)
}

fn verify_cmd(theorems: Vec<u8>, max_d: usize, max_k: usize, corrupt_fixture: bool) -> Outcome {
    let rows = verify::run(&VerifyOptions { theorems, max_d, max_k, corrupt_fixture });
    let mut out = io::stdout().lock();
    let width = rows.iter().map(|r| r.label.len()).max().unwrap_or(0);
    for r in &rows {
        let status = if r.passed { "PASS" } else { "FAIL" };
        emit(&mut out, &format!("{status}  T{}  {:width$}  {}\n", r.theorem, r.label, r.detail))?;
    }
    let failed = rows.iter().filter(|r| !r.passed).count();
    emit(&mut out, &format!("{} checks, {failed} failed\n", rows.len()))?;
    Ok(failed == 0)
}

fn exit_code(failure: &Failure) -> u8 {
    match failure {
        Failure::Usage(_) | Failure::Io(_) => 2,
        Failure::Lib(Error::ResourceLimit(_)) => 3,
        Failure::Lib(Error::Format(_) | Error::Dimension(_) | Error::InvalidArgument(_) | Error::NotFound(_)) => 2,
        Failure::Lib(_) => 4,
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    if let Some(cells) = cli.max_cells {
        if cells != config::DEFAULT_MAX_CELLS {
            eprintln!(
                "warning: size cap set to {} cells (default {}); exact solving is exponential in the worst case",
                cells.min(64 * 64),
                config::DEFAULT_MAX_CELLS
            );
        }
        config::set_max_cells(cells);
    }
    if cli.sequential {
        config::set_parallel(false);
    }
    let outcome = match cli.command {
        Command::Rank { input, semiring, witness, json } => rank_cmd(&input, semiring, witness, json),
        Command::Bases { input, semiring, graph } => bases_cmd(&input, semiring.into(), graph),
        Command::Check { input, property, semiring, json } => check_cmd(&input, property, semiring.into(), json),
        Command::Construct { name, d, k, out } => construct_cmd(&name, d, k, out),
        Command::Verify { theorem, max_d, max_k, corrupt_fixture } => {
            verify_cmd(theorem.0, max_d, max_k, corrupt_fixture)
        }
    };
    match outcome {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => ExitCode::from(1),
        Err(failure) => {
            let message = match &failure {
                Failure::Lib(e) => e.to_string(),
                Failure::Usage(m) | Failure::Io(m) => m.clone(),
            };
            eprintln!("error: {message}");
            ExitCode::from(exit_code(&failure))
        }
    }
}
