//! The `fdqe` command line: argument parsing, dispatch and output formatting.
//!
//! [`run`] never panics on bad input and never exits the process, so tests can
//! drive it with arbitrary argument vectors.

use std::ffi::OsString;
use std::fs;
use std::io::Write;
use std::path::{Path, PathBuf};

use clap::{Args, Parser, Subcommand};
use fdqe_core::bratteli::{to_dot, EdgeStyle, MatrixFile, FILTERS};
use fdqe_core::numeric::{
    check_preservation, OptimizerConfig, PredicateKind, PredicateValue, PREDICATES,
};
use fdqe_core::{
    decide_qe, enumerate_embedding_matrices, sweep, BlockSizes, Element, ElementFile,
    LanguageVariant, MultiplicityMatrix, Verdict,
};
use serde::Serialize;

pub const EXIT_OK: i32 = 0;
pub const EXIT_USAGE: i32 = 1;
pub const EXIT_NOT_CONVERGED: i32 = 2;

#[derive(Debug, Parser)]
#[command(
    name = "fdqe",
    version,
    about = "Quantifier elimination for finite-dimensional C*-algebras"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Decide quantifier elimination for one algebra, e.g. `3,2` for M_3 ⊕ M_2.
    Check {
        #[arg(value_parser = parse_algebra)]
        algebra: BlockSizes,
        #[command(flatten)]
        lang: LangArg,
        #[arg(long)]
        json: bool,
        /// Write the certificate pair as DOT (first solid, second dashed).
        #[arg(long, value_name = "PATH")]
        dot: Option<PathBuf>,
    },
    /// Decide every algebra with block sizes summing to at most N.
    Sweep {
        #[arg(long, value_name = "N", value_parser = clap::value_parser!(u64).range(1..=64))]
        bound: u64,
        #[command(flatten)]
        lang: LangArg,
        #[arg(long)]
        json: bool,
    },
    /// List admissible embedding matrices C → A.
    Embeddings {
        #[arg(value_parser = parse_algebra)]
        source: BlockSizes,
        #[arg(value_parser = parse_algebra)]
        target: BlockSizes,
        #[command(flatten)]
        lang: LangArg,
        #[arg(long)]
        json: bool,
        /// Write one DOT digraph per matrix.
        #[arg(long, value_name = "PATH")]
        dot: Option<PathBuf>,
        #[arg(long, default_value = "solid", value_parser = parse_style)]
        style: EdgeStyle,
    },
    /// Render a matrix file as a DOT Bratteli diagram.
    Render {
        matrix: PathBuf,
        #[arg(long, default_value = "solid", value_parser = parse_style)]
        style: EdgeStyle,
        /// Write to PATH instead of standard output.
        #[arg(long, value_name = "PATH")]
        dot: Option<PathBuf>,
    },
    /// Evaluate a distance predicate on elements read from a file.
    Predicates {
        #[arg(long, value_parser = parse_algebra)]
        algebra: BlockSizes,
        #[arg(long, value_parser = parse_predicate)]
        op: PredicateKind,
        /// One element object for rho-min, an array of two for rho-sim.
        #[arg(long, value_name = "FILE")]
        input: PathBuf,
        #[command(flatten)]
        optimizer: OptimizerArgs,
        #[arg(long)]
        json: bool,
    },
    /// Probe whether an embedding preserves a predicate on seeded inputs.
    Preserve {
        #[arg(value_parser = parse_algebra)]
        source: BlockSizes,
        #[arg(value_parser = parse_algebra)]
        target: BlockSizes,
        #[arg(long, value_name = "FILE")]
        matrix: PathBuf,
        #[arg(long, value_parser = parse_predicate)]
        predicate: PredicateKind,
        #[arg(long, default_value_t = 50, value_parser = clap::value_parser!(u64).range(1..=100_000))]
        samples: u64,
        #[command(flatten)]
        optimizer: OptimizerArgs,
        #[arg(long)]
        json: bool,
    },
}

#[derive(Debug, Args)]
struct LangArg {
    /// Language: base, min, sim or star.
    #[arg(long = "lang", default_value = "star", value_parser = parse_lang)]
    lang: LanguageVariant,
}

#[derive(Debug, Args)]
struct OptimizerArgs {
    #[arg(long, default_value_t = 0)]
    seed: u64,
    #[arg(long, default_value_t = 32, value_parser = clap::value_parser!(u64).range(1..=10_000))]
    restarts: u64,
    #[arg(long, default_value_t = 500, value_parser = clap::value_parser!(u64).range(1..=1_000_000))]
    max_iterations: u64,
    /// Exit with status 2 if any optimizer run hit its iteration limit.
    #[arg(long)]
    strict: bool,
}

impl OptimizerArgs {
    fn config(&self) -> OptimizerConfig {
        OptimizerConfig {
            restarts: self.restarts as usize,
            max_iterations: self.max_iterations as usize,
            seed: self.seed,
            ..OptimizerConfig::default()
        }
    }
}

fn parse_algebra(s: &str) -> Result<BlockSizes, String> {
    BlockSizes::parse(s).map_err(|e| e.to_string())
}

fn parse_lang(s: &str) -> Result<LanguageVariant, String> {
    match FILTERS.get(s) {
        Some(filter) => filter
            .name()
            .parse()
            .map_err(|e: fdqe_core::Error| e.to_string()),
        None => Err(format!(
            "expected one of {}",
            FILTERS.names().collect::<Vec<_>>().join(", ")
        )),
    }
}

fn parse_predicate(s: &str) -> Result<PredicateKind, String> {
    PREDICATES
        .by_name(s)
        .map(|p| p.kind())
        .map_err(|_| "expected rho-min or rho-sim".to_string())
}

fn parse_style(s: &str) -> Result<EdgeStyle, String> {
    match s {
        "solid" => Ok(EdgeStyle::Solid),
        "dashed" => Ok(EdgeStyle::Dashed),
        _ => Err("expected solid or dashed".into()),
    }
}

/// A failure that ends the command with a one-line diagnostic.
struct Failure {
    code: i32,
    message: String,
}

impl Failure {
    fn usage(message: impl Into<String>) -> Self {
        Self {
            code: EXIT_USAGE,
            message: message.into(),
        }
    }
}

impl From<fdqe_core::Error> for Failure {
    fn from(e: fdqe_core::Error) -> Self {
        Self::usage(e.to_string())
    }
}

impl From<std::io::Error> for Failure {
    fn from(e: std::io::Error) -> Self {
        Self::usage(e.to_string())
    }
}

type Outcome = Result<i32, Failure>;

/// Parses `argv` (program name first) and runs the command, writing results to
/// `out` and diagnostics to `err`. Returns the process exit status.
pub fn run<I, T>(argv: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(argv) {
        Ok(cli) => cli,
        Err(e) => {
            use clap::error::ErrorKind;
            if matches!(e.kind(), ErrorKind::DisplayHelp | ErrorKind::DisplayVersion) {
                let _ = write!(out, "{}", e.render());
                return EXIT_OK;
            }
            if e.kind() == ErrorKind::DisplayHelpOnMissingArgumentOrSubcommand {
                let _ = writeln!(err, "fdqe: a subcommand is required (try --help)");
                return EXIT_USAGE;
            }
            // first paragraph of clap's report, folded onto one line
            let rendered = e.render().to_string();
            let first: Vec<&str> = rendered
                .lines()
                .skip_while(|l| l.trim().is_empty())
                .take_while(|l| !l.trim().is_empty())
                .map(str::trim)
                .collect();
            let line = first.join(" ");
            let line = line.trim_start_matches("error: ");
            let _ = writeln!(
                err,
                "fdqe: {}",
                if line.is_empty() {
                    "invalid arguments"
                } else {
                    line
                }
            );
            return EXIT_USAGE;
        }
    };
    match dispatch(cli.command, out, err) {
        Ok(code) => code,
        Err(f) => {
            let _ = writeln!(err, "fdqe: {}", f.message.lines().next().unwrap_or(""));
            f.code
        }
    }
}

fn dispatch(command: Command, out: &mut dyn Write, err: &mut dyn Write) -> Outcome {
    match command {
        Command::Check {
            algebra,
            lang,
            json,
            dot,
        } => check(&algebra, lang.lang, json, dot.as_deref(), out),
        Command::Sweep { bound, lang, json } => sweep_cmd(bound as usize, lang.lang, json, out),
        Command::Embeddings {
            source,
            target,
            lang,
            json,
            dot,
            style,
        } => embeddings(
            &source,
            &target,
            lang.lang,
            json,
            dot.as_deref(),
            style,
            out,
        ),
        Command::Render { matrix, style, dot } => render(&matrix, style, dot.as_deref(), out),
        Command::Predicates {
            algebra,
            op,
            input,
            optimizer,
            json,
        } => predicates(&algebra, op, &input, &optimizer, json, out, err),
        Command::Preserve {
            source,
            target,
            matrix,
            predicate,
            samples,
            optimizer,
            json,
        } => preserve(
            &source,
            &target,
            &matrix,
            predicate,
            samples as usize,
            &optimizer,
            json,
            out,
            err,
        ),
    }
}

fn json_line<T: Serialize>(out: &mut dyn Write, value: &T) -> Result<(), Failure> {
    let text = serde_json::to_string(value).map_err(|e| Failure::usage(e.to_string()))?;
    writeln!(out, "{text}")?;
    Ok(())
}

fn read_file(path: &Path) -> Result<String, Failure> {
    fs::read_to_string(path)
        .map_err(|e| Failure::usage(format!("cannot read {}: {e}", path.display())))
}

fn write_file(path: &Path, contents: &str) -> Result<(), Failure> {
    fs::write(path, contents)
        .map_err(|e| Failure::usage(format!("cannot write {}: {e}", path.display())))
}

fn parse_json<T: serde::de::DeserializeOwned>(path: &Path, text: &str) -> Result<T, Failure> {
    serde_json::from_str(text).map_err(|e| Failure::usage(format!("{}: {e}", path.display())))
}

fn check(
    a: &BlockSizes,
    lang: LanguageVariant,
    json: bool,
    dot: Option<&Path>,
    out: &mut dyn Write,
) -> Outcome {
    let v = decide_qe(a, lang);
    if let Some(path) = dot {
        let text = match &v.certificate {
            Some(c) => format!(
                "{}{}",
                to_dot(&c.e1, EdgeStyle::Solid),
                to_dot(&c.e2, EdgeStyle::Dashed)
            ),
            None => String::new(),
        };
        write_file(path, &text)?;
    }
    if json {
        json_line(out, &v)?;
    } else {
        write_verdict(&v, out)?;
    }
    Ok(EXIT_OK)
}

fn write_verdict(v: &Verdict, out: &mut dyn Write) -> Result<(), Failure> {
    writeln!(out, "algebra:  {}", v.algebra)?;
    writeln!(out, "language: {}", v.language)?;
    writeln!(out, "QE: {}", if v.qe { "yes" } else { "no" })?;
    if let Some(c) = &v.certificate {
        writeln!(out, "certificate: C = {}", c.sub_dims)?;
        writeln!(out, "  e1 = {}", c.e1)?;
        writeln!(out, "  e2 = {}", c.e2)?;
    }
    writeln!(
        out,
        "examined {} candidate subalgebras, {} matrices (Bratteli-level amalgamation criterion)",
        v.stats.candidates, v.stats.matrices
    )?;
    Ok(())
}

fn sweep_cmd(bound: usize, lang: LanguageVariant, json: bool, out: &mut dyn Write) -> Outcome {
    let report = sweep(bound, lang)?;
    if json {
        for row in &report.rows {
            json_line(out, row)?;
        }
        return Ok(EXIT_OK);
    }
    let header = ["algebra", "verdict", "#candidates", "#matrices"];
    let rows: Vec<[String; 4]> = report
        .rows
        .iter()
        .map(|r| {
            [
                r.algebra.to_string(),
                if r.qe { "yes" } else { "no" }.to_string(),
                r.stats.candidates.to_string(),
                r.stats.matrices.to_string(),
            ]
        })
        .collect();
    let mut widths = header.map(str::len);
    for row in &rows {
        for (w, cell) in widths.iter_mut().zip(row) {
            *w = (*w).max(cell.len());
        }
    }
    writeln!(
        out,
        "{:<w0$}  {:<w1$}  {:>w2$}  {:>w3$}",
        header[0],
        header[1],
        header[2],
        header[3],
        w0 = widths[0],
        w1 = widths[1],
        w2 = widths[2],
        w3 = widths[3]
    )?;
    for row in rows {
        writeln!(
            out,
            "{:<w0$}  {:<w1$}  {:>w2$}  {:>w3$}",
            row[0],
            row[1],
            row[2],
            row[3],
            w0 = widths[0],
            w1 = widths[1],
            w2 = widths[2],
            w3 = widths[3]
        )?;
    }
    Ok(EXIT_OK)
}

#[derive(Serialize)]
struct EmbeddingList<'a> {
    source: &'a BlockSizes,
    target: &'a BlockSizes,
    language: LanguageVariant,
    count: usize,
    matrices: &'a [MultiplicityMatrix],
}

fn embeddings(
    c: &BlockSizes,
    a: &BlockSizes,
    lang: LanguageVariant,
    json: bool,
    dot: Option<&Path>,
    style: EdgeStyle,
    out: &mut dyn Write,
) -> Outcome {
    let found = enumerate_embedding_matrices(c, a, lang);
    if let Some(path) = dot {
        let text: String = found.iter().map(|e| to_dot(e, style)).collect();
        write_file(path, &text)?;
    }
    if json {
        json_line(
            out,
            &EmbeddingList {
                source: c,
                target: a,
                language: lang,
                count: found.len(),
                matrices: &found,
            },
        )?;
    } else {
        for e in &found {
            writeln!(out, "{e}")?;
        }
        writeln!(out, "count: {}", found.len())?;
    }
    Ok(EXIT_OK)
}

fn load_matrix(path: &Path) -> Result<MultiplicityMatrix, Failure> {
    let file: MatrixFile = parse_json(path, &read_file(path)?)?;
    Ok(file.into_matrix()?)
}

fn render(path: &Path, style: EdgeStyle, dot: Option<&Path>, out: &mut dyn Write) -> Outcome {
    let e = load_matrix(path)?;
    if !e.is_unital_injective() {
        return Err(Failure::usage(format!(
            "{e} is not a unital injective embedding"
        )));
    }
    let text = to_dot(&e, style);
    match dot {
        Some(p) => write_file(p, &text)?,
        None => write!(out, "{text}")?,
    }
    Ok(EXIT_OK)
}

fn load_element(algebra: &BlockSizes, file: ElementFile) -> Result<Element, Failure> {
    let (declared, x) = file.into_element()?;
    if &declared != algebra {
        return Err(Failure::usage(format!(
            "element belongs to {declared}, expected {algebra}"
        )));
    }
    Ok(x)
}

fn not_converged(strict: bool, err: &mut dyn Write) -> Result<i32, Failure> {
    if strict {
        return Err(Failure {
            code: EXIT_NOT_CONVERGED,
            message: "optimizer hit its iteration limit; values are upper bounds only".into(),
        });
    }
    writeln!(
        err,
        "fdqe: warning: optimizer hit its iteration limit; values are upper bounds only"
    )?;
    Ok(EXIT_OK)
}

fn predicates(
    algebra: &BlockSizes,
    kind: PredicateKind,
    input: &Path,
    opts: &OptimizerArgs,
    json: bool,
    out: &mut dyn Write,
    err: &mut dyn Write,
) -> Outcome {
    let cfg = opts.config();
    cfg.validate()?;
    let text = read_file(input)?;
    let args = match kind {
        PredicateKind::RhoMin => vec![load_element(algebra, parse_json(input, &text)?)?],
        PredicateKind::RhoSim => {
            let files: Vec<ElementFile> = parse_json(input, &text)?;
            if files.len() != 2 {
                return Err(Failure::usage(format!(
                    "rho-sim needs exactly 2 elements, {} given",
                    files.len()
                )));
            }
            files
                .into_iter()
                .map(|f| load_element(algebra, f))
                .collect::<Result<_, _>>()?
        }
    };
    let value = PREDICATES.by_name(kind.cli_name())?.evaluate(&args, &cfg)?;
    if json {
        json_line(out, &value)?;
    } else {
        match value {
            PredicateValue::Point { value, .. } => writeln!(out, "rho_min = {value:.9}")?,
            PredicateValue::Interval { lower, upper, .. } => {
                writeln!(out, "rho_sim in [{lower:.9}, {upper:.9}]")?
            }
        }
    }
    if value.converged() {
        Ok(EXIT_OK)
    } else {
        not_converged(opts.strict, err)
    }
}

#[allow(clippy::too_many_arguments)]
fn preserve(
    c: &BlockSizes,
    a: &BlockSizes,
    matrix: &Path,
    kind: PredicateKind,
    samples: usize,
    opts: &OptimizerArgs,
    json: bool,
    out: &mut dyn Write,
    err: &mut dyn Write,
) -> Outcome {
    let cfg = opts.config();
    cfg.validate()?;
    let e = load_matrix(matrix)?;
    if e.source() != c || e.target() != a {
        return Err(Failure::usage(format!(
            "matrix file describes {} -> {}, expected {c} -> {a}",
            e.source(),
            e.target()
        )));
    }
    if !e.is_unital_injective() {
        return Err(Failure::usage(format!(
            "{e} is not a unital injective embedding"
        )));
    }
    let report = check_preservation(&e, kind, samples, &cfg)?;
    if json {
        json_line(out, &report)?;
    } else {
        writeln!(out, "embedding:       {} -> {} {}", c, a, report.embedding)?;
        writeln!(out, "predicate:       {}", report.predicate)?;
        writeln!(
            out,
            "samples:         {} (seed {})",
            report.samples, report.seed
        )?;
        writeln!(out, "max discrepancy: {:.9}", report.max_discrepancy)?;
    }
    if report.converged {
        Ok(EXIT_OK)
    } else {
        not_converged(opts.strict, err)
    }
}
