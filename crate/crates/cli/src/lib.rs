//! The `hrsft` command line.
//!
//! Exit codes: 0 on success or when every check passes, 1 when a check fails
//! or a bounded search comes up empty, 2 on usage or input errors.

use std::ffi::OsString;
use std::io::Write;
use std::path::{Path, PathBuf};

use clap::{Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};

use hrsft_core::af::{self, BratteliDiagram};
use hrsft_core::builders::{redecorate_by_shape, tensor};
use hrsft_core::completion::{extend_unit, product};
use hrsft_core::enumerate;
use hrsft_core::format::{load_system, save_system, FormatError};
use hrsft_core::verify::{verify_report, VerifyOptions};
use hrsft_core::witness::{self, WitnessOptions};
use hrsft_core::word::parse_compact;
use hrsft_core::{DecoratedWord, DecorationMap, Error, Letter, Shape, TileSystem, Word};

pub const EXIT_OK: i32 = 0;
pub const EXIT_CHECK_FAILED: i32 = 1;
pub const EXIT_USAGE: i32 = 2;

#[derive(Parser, Debug)]
#[command(name = "hrsft", version, about = "Rank-r subshifts of finite type")]
struct Cli {
    /// Read matrices as M[a][b] (rows are sources) instead of M[b][a].
    #[arg(long, global = true)]
    transpose: bool,

    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Check H0, H1a-H1c, H1 (exhaustive), H2, H3* and bounded H3.
    Verify {
        system: PathBuf,
        /// Shape bound for the exhaustive unique-completion check.
        #[arg(long, value_name = "SHAPE", default_value = "1")]
        h1_oracle_bound: String,
        /// Skip the exhaustive unique-completion check.
        #[arg(long)]
        no_h1_oracle: bool,
        /// Translates p with |p| at most this are tested for H3.
        #[arg(long, value_name = "SHAPE", default_value = "1")]
        h3_p_bound: String,
        /// Largest word shape searched for non-periodic witnesses.
        #[arg(long, value_name = "SHAPE", default_value = "3")]
        h3_shape_bound: String,
        /// Most subsets stored by the H3* fixed point per direction.
        #[arg(long, default_value_t = 100_000)]
        h3_star_cap: usize,
        /// Emit the JSON report instead of text.
        #[arg(long)]
        json: bool,
    },
    /// Count decorated words of a shape.
    Count {
        system: PathBuf,
        #[arg(long, value_name = "SHAPE")]
        shape: String,
        /// Also print the count ending at each letter.
        #[arg(long)]
        per_letter: bool,
    },
    /// List words of a shape, one per line in lexicographic order.
    Enumerate {
        system: PathBuf,
        #[arg(long, value_name = "SHAPE")]
        shape: String,
        /// Only words starting at this letter.
        #[arg(long)]
        origin: Option<String>,
        /// Stop after this many words.
        #[arg(long, default_value_t = 10_000)]
        limit: usize,
    },
    /// Extend a word by one unit step.
    Extend {
        system: PathBuf,
        #[arg(long)]
        word: String,
        /// Direction, 1-based.
        #[arg(long)]
        direction: usize,
        /// Letter at the new terminus.
        #[arg(long)]
        letter: String,
    },
    /// Product of two words with t(u) = o(v).
    Product {
        system: PathBuf,
        u: String,
        v: String,
    },
    /// Constructive witnesses built from the standing conditions.
    #[command(subcommand)]
    Witness(WitnessCommand),
    /// Bratteli diagram of the AF core on the shape box [0, upto].
    Bratteli {
        system: PathBuf,
        #[arg(long, value_name = "SHAPE")]
        upto: String,
        #[arg(long, value_enum, default_value_t = DiagramFormat::Dot)]
        format: DiagramFormat,
        /// Only the chain along the diagonal k(1,...,1).
        #[arg(long)]
        diagonal: bool,
    },
    /// Tensor product of rank-1 systems, written as a system file.
    Tensor {
        #[arg(required = true)]
        systems: Vec<PathBuf>,
        #[arg(long, short)]
        output: Option<PathBuf>,
    },
    /// Replace each decoration d by the decorated words of shape l(d).
    Redecorate {
        system: PathBuf,
        /// One shape per decoration, or a single shape used for all.
        #[arg(long = "shape", value_name = "SHAPE", required = true)]
        shapes: Vec<String>,
        #[arg(long, short)]
        output: Option<PathBuf>,
    },
}

#[derive(Subcommand, Debug)]
enum WitnessCommand {
    /// A word from LETTER that is not p-periodic for any 0 < |p| <= M.
    Nonperiodic {
        system: PathBuf,
        #[arg(long, value_name = "SHAPE")]
        m: String,
        #[arg(long)]
        letter: String,
        #[command(flatten)]
        opts: WitnessArgs,
    },
    /// A word from FROM to TO of shape at least MIN.
    Connect {
        system: PathBuf,
        #[arg(long)]
        from: String,
        #[arg(long)]
        to: String,
        #[arg(long, value_name = "SHAPE")]
        min: Option<String>,
    },
    /// Two distinct words with the same shape and origin.
    DistinctPair {
        system: PathBuf,
        #[arg(long, default_value_t = 2)]
        max_degree: usize,
    },
    /// A translate-separated family, one word per letter.
    #[command(name = "set-s")]
    SetS {
        system: PathBuf,
        #[arg(long, value_name = "SHAPE")]
        m: String,
        #[command(flatten)]
        opts: WitnessArgs,
    },
    /// Decorated words of shape M + l whose [M, M + l] block lies in the separated family.
    QSupport {
        system: PathBuf,
        #[arg(long, value_name = "SHAPE")]
        m: String,
        #[command(flatten)]
        opts: WitnessArgs,
    },
}

#[derive(clap::Args, Debug)]
struct WitnessArgs {
    /// Room beyond M per coordinate for the non-periodic word search.
    #[arg(long, default_value_t = 2)]
    slack: usize,
    /// Largest degree tried when looking for a distinct pair.
    #[arg(long, default_value_t = 2)]
    max_pair_degree: usize,
}

impl WitnessArgs {
    fn options(&self) -> WitnessOptions {
        WitnessOptions {
            slack: self.slack,
            max_pair_degree: self.max_pair_degree,
        }
    }
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum DiagramFormat {
    Dot,
    Json,
}

/// A failure with its exit code.
struct Failure {
    code: i32,
    message: String,
}

impl From<FormatError> for Failure {
    fn from(e: FormatError) -> Self {
        Failure {
            code: EXIT_USAGE,
            message: e.to_string(),
        }
    }
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        let code = match e {
            Error::MissingWitness { .. }
            | Error::NoDistinctPair { .. }
            | Error::Unreachable { .. }
            | Error::FillFailure { .. }
            | Error::NonUniqueProduct => EXIT_CHECK_FAILED,
            _ => EXIT_USAGE,
        };
        Failure {
            code,
            message: e.to_string(),
        }
    }
}

impl From<std::io::Error> for Failure {
    fn from(e: std::io::Error) -> Self {
        Failure {
            code: EXIT_USAGE,
            message: e.to_string(),
        }
    }
}

fn usage(message: impl Into<String>) -> Failure {
    Failure {
        code: EXIT_USAGE,
        message: message.into(),
    }
}

type CliResult = Result<i32, Failure>;

/// Parses `"1,2"` into a shape of the given rank. A single number is
/// repeated in every coordinate.
fn parse_shape(text: &str, rank: usize) -> Result<Shape, Failure> {
    let parts = text
        .split(',')
        .map(|p| p.trim().parse::<usize>())
        .collect::<Result<Vec<_>, _>>()
        .map_err(|_| {
            usage(format!(
                "`{text}` is not a shape (comma-separated nonnegative integers)"
            ))
        })?;
    match parts.len() {
        1 => Ok(Shape::uniform(rank, parts[0])),
        n if n == rank => Ok(Shape::new(parts)),
        n => Err(usage(format!(
            "shape `{text}` has {n} coordinates, the system has rank {rank}"
        ))),
    }
}

fn letter(ts: &TileSystem, name: &str) -> Result<Letter, Failure> {
    Ok(ts.alphabet().letter(name)?)
}

fn load(path: &Path, transpose: bool) -> Result<(TileSystem, DecorationMap), Failure> {
    Ok(load_system(path, transpose)?)
}

fn write_or_print(out: &mut dyn Write, text: &str, output: Option<&Path>) -> Result<(), Failure> {
    match output {
        Some(p) => std::fs::write(p, text).map_err(|e| usage(format!("{}: {e}", p.display()))),
        None => Ok(out.write_all(text.as_bytes())?),
    }
}

/// Runs the command line and returns the exit code.
pub fn run<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_USAGE } else { EXIT_OK };
            let text = e.render().to_string();
            let _ = if e.use_stderr() {
                err.write_all(text.as_bytes())
            } else {
                out.write_all(text.as_bytes())
            };
            return code;
        }
    };
    match dispatch(cli, out) {
        Ok(code) => code,
        Err(f) => {
            let _ = writeln!(err, "error: {}", f.message);
            f.code
        }
    }
}

fn dispatch(cli: Cli, out: &mut dyn Write) -> CliResult {
    let tr = cli.transpose;
    match cli.command {
        Command::Verify {
            system,
            h1_oracle_bound,
            no_h1_oracle,
            h3_p_bound,
            h3_shape_bound,
            h3_star_cap,
            json,
        } => {
            let (ts, _) = load(&system, tr)?;
            let r = ts.rank();
            let opts = VerifyOptions {
                h1_oracle_bound: if no_h1_oracle {
                    None
                } else {
                    Some(parse_shape(&h1_oracle_bound, r)?)
                },
                h3_p_bound: parse_shape(&h3_p_bound, r)?,
                h3_shape_bound: parse_shape(&h3_shape_bound, r)?,
                h3_star_cap,
            };
            let report = verify_report(&ts, &opts);
            if json {
                let text = serde_json::to_string_pretty(&report).expect("report serializes");
                writeln!(out, "{text}")?;
            } else {
                write!(out, "{report}")?;
            }
            Ok(if report.passed() {
                EXIT_OK
            } else {
                EXIT_CHECK_FAILED
            })
        }
        Command::Count {
            system,
            shape,
            per_letter,
        } => {
            let (ts, d) = load(&system, tr)?;
            let m = parse_shape(&shape, ts.rank())?;
            let dims = af::dim_vector(&ts, &d, &m)?;
            let mut parts: Vec<String> = Vec::new();
            if per_letter {
                for a in ts.letters() {
                    parts.push(format!("{}:{}", ts.alphabet().name(a), dims[a.0]));
                }
            }
            parts.push(format!("total:{}", af::total(&dims)));
            writeln!(out, "{}", parts.join(" "))?;
            Ok(EXIT_OK)
        }
        Command::Enumerate {
            system,
            shape,
            origin,
            limit,
        } => {
            let (ts, _) = load(&system, tr)?;
            let m = parse_shape(&shape, ts.rank())?;
            let origin = origin.map(|o| letter(&ts, &o)).transpose()?;
            let mut printed = 0usize;
            let mut io_err = None;
            let _ = enumerate::for_each_word(&ts, &m, origin, |cells| {
                if printed == limit {
                    return std::ops::ControlFlow::Break(());
                }
                let w = hrsft_core::word::validate_word(&ts, m.clone(), cells.to_vec())
                    .expect("enumerated words are valid");
                if let Err(e) = writeln!(out, "{}", w.to_compact(ts.alphabet())) {
                    io_err = Some(e);
                    return std::ops::ControlFlow::Break(());
                }
                printed += 1;
                std::ops::ControlFlow::Continue(())
            });
            if let Some(e) = io_err {
                return Err(e.into());
            }
            Ok(EXIT_OK)
        }
        Command::Extend {
            system,
            word,
            direction,
            letter: a,
        } => {
            let (ts, _) = load(&system, tr)?;
            if direction == 0 || direction > ts.rank() {
                return Err(usage(format!(
                    "direction must be between 1 and {}",
                    ts.rank()
                )));
            }
            let w = parse_compact(&ts, &word)?;
            let a = letter(&ts, &a)?;
            let v = extend_unit(&ts, &w, direction - 1, a)?;
            writeln!(out, "{}", v.to_compact(ts.alphabet()))?;
            Ok(EXIT_OK)
        }
        Command::Product { system, u, v } => {
            let (ts, _) = load(&system, tr)?;
            let u = parse_compact(&ts, &u)?;
            let v = parse_compact(&ts, &v)?;
            let w = product(&ts, &u, &v)?;
            writeln!(out, "{}", w.to_compact(ts.alphabet()))?;
            Ok(EXIT_OK)
        }
        Command::Witness(w) => run_witness(w, tr, out),
        Command::Bratteli {
            system,
            upto,
            format,
            diagonal,
        } => {
            let (ts, d) = load(&system, tr)?;
            let upto = parse_shape(&upto, ts.rank())?;
            let diagram = af::bratteli(&ts, &d, &upto)?;
            let text = match (format, diagonal) {
                (DiagramFormat::Dot, false) => diagram_dot(&ts, &diagram),
                (DiagramFormat::Dot, true) => diagonal_dot(&ts, &diagram),
                (DiagramFormat::Json, diag) => {
                    let mut v = diagram_json(&ts, &diagram, !diag);
                    if diag {
                        v["diagonal"] = diagonal_json(&diagram);
                    }
                    serde_json::to_string_pretty(&v).expect("json") + "\n"
                }
            };
            out.write_all(text.as_bytes())?;
            Ok(EXIT_OK)
        }
        Command::Tensor { systems, output } => {
            let factors = systems
                .iter()
                .map(|p| load(p, tr).map(|(ts, _)| ts))
                .collect::<Result<Vec<_>, _>>()?;
            let ts = tensor(&factors)?;
            let text = save_system(&ts, &DecorationMap::identity(ts.alphabet()));
            write_or_print(out, &text, output.as_deref())?;
            Ok(EXIT_OK)
        }
        Command::Redecorate {
            system,
            shapes,
            output,
        } => {
            let (ts, d) = load(&system, tr)?;
            let parsed = shapes
                .iter()
                .map(|s| parse_shape(s, ts.rank()))
                .collect::<Result<Vec<_>, _>>()?;
            let per: Vec<Shape> = match parsed.len() {
                1 => vec![parsed[0].clone(); d.len()],
                n if n == d.len() => parsed,
                n => {
                    return Err(usage(format!(
                        "{n} shapes given for {} decorations",
                        d.len()
                    )))
                }
            };
            let red = redecorate_by_shape(&ts, &d, &per)?;
            let text = save_system(&ts, &red.map);
            write_or_print(out, &text, output.as_deref())?;
            Ok(EXIT_OK)
        }
    }
}

fn run_witness(cmd: WitnessCommand, tr: bool, out: &mut dyn Write) -> CliResult {
    match cmd {
        WitnessCommand::Nonperiodic {
            system,
            m,
            letter: a,
            opts,
        } => {
            let (ts, _) = load(&system, tr)?;
            let m = parse_shape(&m, ts.rank())?;
            let a = letter(&ts, &a)?;
            let w = witness::nonperiodic_all(&ts, &m, a, &opts.options())?;
            print_word(out, &ts, &w)?;
            Ok(EXIT_OK)
        }
        WitnessCommand::Connect {
            system,
            from,
            to,
            min,
        } => {
            let (ts, _) = load(&system, tr)?;
            let a = letter(&ts, &from)?;
            let b = letter(&ts, &to)?;
            let n = match min {
                Some(s) => parse_shape(&s, ts.rank())?,
                None => Shape::zero(ts.rank()),
            };
            let w = witness::connect(&ts, a, b, &n)?;
            print_word(out, &ts, &w)?;
            Ok(EXIT_OK)
        }
        WitnessCommand::DistinctPair { system, max_degree } => {
            let (ts, _) = load(&system, tr)?;
            let (u, v) = witness::distinct_pair(&ts, max_degree)?;
            print_word(out, &ts, &u)?;
            print_word(out, &ts, &v)?;
            Ok(EXIT_OK)
        }
        WitnessCommand::SetS { system, m, opts } => {
            let (ts, _) = load(&system, tr)?;
            let m = parse_shape(&m, ts.rank())?;
            let set = witness::build_separated_set(&ts, &m, &opts.options())?;
            writeln!(out, "shape {}", set.shape)?;
            for a in ts.letters() {
                writeln!(
                    out,
                    "{}: {}",
                    ts.alphabet().name(a),
                    set.word(a).to_compact(ts.alphabet())
                )?;
            }
            Ok(EXIT_OK)
        }
        WitnessCommand::QSupport { system, m, opts } => {
            let (ts, d) = load(&system, tr)?;
            let m = parse_shape(&m, ts.rank())?;
            let set = witness::build_separated_set(&ts, &m, &opts.options())?;
            let sup = witness::q_support(&ts, &d, &m, &set)?;
            writeln!(out, "shape {} size {}", &m + &set.shape, sup.len())?;
            for w in &sup {
                print_decorated(out, &ts, &d, w)?;
            }
            Ok(EXIT_OK)
        }
    }
}

fn print_word(out: &mut dyn Write, ts: &TileSystem, w: &Word) -> Result<(), Failure> {
    writeln!(out, "{} {}", w.shape(), w.to_compact(ts.alphabet()))?;
    Ok(())
}

fn print_decorated(
    out: &mut dyn Write,
    ts: &TileSystem,
    d: &DecorationMap,
    w: &DecoratedWord,
) -> Result<(), Failure> {
    writeln!(
        out,
        "{}: {}",
        d.name(w.decoration()),
        w.word().to_compact(ts.alphabet())
    )?;
    Ok(())
}

fn dims_label(d: &[num_bigint::BigUint]) -> String {
    let parts: Vec<String> = d.iter().map(|x| x.to_string()).collect();
    format!("({})", parts.join(","))
}

fn dot_id(m: &Shape, name: &str) -> String {
    serde_json::to_string(&format!("{m}:{name}")).expect("string")
}

fn diagram_dot(ts: &TileSystem, b: &BratteliDiagram) -> String {
    let al = ts.alphabet();
    let mut s = String::from("digraph bratteli {\n  rankdir=LR;\n");
    for (i, (m, dims)) in b.ordered_levels().into_iter().enumerate() {
        s.push_str(&format!(
            "  subgraph cluster_{i} {{\n    label=\"{m} dims {}\";\n",
            dims_label(dims)
        ));
        for a in ts.letters() {
            s.push_str(&format!(
                "    {} [label=\"{}: {}\"];\n",
                dot_id(m, al.name(a)),
                al.name(a),
                dims[a.0]
            ));
        }
        s.push_str("  }\n");
    }
    for e in &b.edges {
        let mult = b.multiplicity(e.direction);
        for a in ts.letters() {
            for x in ts.letters() {
                if mult.get(x.0, a.0) {
                    s.push_str(&format!(
                        "  {} -> {} [label=\"e{}\"];\n",
                        dot_id(&e.from, al.name(a)),
                        dot_id(&e.to, al.name(x)),
                        e.direction + 1
                    ));
                }
            }
        }
    }
    s.push_str("}\n");
    s
}

fn diagonal_dot(ts: &TileSystem, b: &BratteliDiagram) -> String {
    let al = ts.alphabet();
    let (chain, composite) = b.diagonal_chain();
    let mut s = String::from("digraph diagonal {\n  rankdir=LR;\n");
    for (m, dims) in &chain {
        for a in ts.letters() {
            s.push_str(&format!(
                "  {} [label=\"{m} {}: {}\"];\n",
                dot_id(m, al.name(a)),
                al.name(a),
                dims[a.0]
            ));
        }
    }
    if let Some(c) = composite {
        for pair in chain.windows(2) {
            for a in ts.letters() {
                for x in ts.letters() {
                    let k = c.get(x.0, a.0);
                    if k > 0 {
                        s.push_str(&format!(
                            "  {} -> {} [label=\"{k}\"];\n",
                            dot_id(&pair[0].0, al.name(a)),
                            dot_id(&pair[1].0, al.name(x))
                        ));
                    }
                }
            }
        }
    }
    s.push_str("}\n");
    s
}

fn matrix_json(rows: Vec<Vec<u64>>) -> Value {
    Value::from(rows)
}

fn diagram_json(ts: &TileSystem, b: &BratteliDiagram, with_edges: bool) -> Value {
    let levels: Vec<Value> = b
        .ordered_levels()
        .into_iter()
        .map(|(m, d)| json!({ "shape": m, "dims": d.iter().map(|x| x.to_string()).collect::<Vec<_>>() }))
        .collect();
    let mut v = json!({
        "upto": b.upto,
        "alphabet": ts.alphabet().names(),
        "levels": levels,
    });
    if with_edges {
        let mults: Vec<Value> = (0..ts.rank())
            .map(|j| {
                let m = b.multiplicity(j);
                matrix_json(
                    m.rows()
                        .iter()
                        .map(|r| r.iter().map(|&x| x as u64).collect())
                        .collect(),
                )
            })
            .collect();
        let edges: Vec<Value> = b
            .edges
            .iter()
            .map(|e| json!({ "from": e.from, "direction": e.direction + 1, "to": e.to }))
            .collect();
        v["multiplicities"] = Value::from(mults);
        v["edges"] = Value::from(edges);
    }
    v
}

fn diagonal_json(b: &BratteliDiagram) -> Value {
    let (chain, composite) = b.diagonal_chain();
    let levels: Vec<Value> = chain
        .iter()
        .map(|(m, d)| json!({ "shape": m, "dims": d.iter().map(|x| x.to_string()).collect::<Vec<_>>() }))
        .collect();
    let comp = composite.map(|c| {
        let n = c.size();
        matrix_json(
            (0..n)
                .map(|r| (0..n).map(|a| c.get(r, a)).collect())
                .collect(),
        )
    });
    json!({ "levels": levels, "multiplicity": comp })
}
