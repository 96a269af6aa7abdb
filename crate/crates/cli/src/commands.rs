use std::path::{Path, PathBuf};

use clap::{Args, Parser, Subcommand, ValueEnum};

use elliptope::{
    check_extreme, truncation_scan, validate_correlation, ConstructionKind, ConstructionSpec, Error, Field,
    MatrixGenerator, Tolerances, Verdict,
};

use crate::format::{read_matrix_file, to_json, GeneratorFile, GeneratorKind, MatrixFile, ReportFile, ScanFile};

pub const EXIT_EXTREME: u8 = 0;
pub const EXIT_NOT_EXTREME: u8 = 1;
pub const EXIT_INVALID: u8 = 2;
pub const EXIT_NUMERICAL: u8 = 3;

#[derive(Debug, Parser)]
#[command(
    name = "elliptope",
    about = "Extremality of correlation matrices",
    disable_version_flag = true
)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Decide whether a correlation matrix is an extreme point.
    Check(CheckArgs),
    /// Write a constructed correlation matrix.
    Generate(GenerateArgs),
    /// Report ranks and verdicts along truncations of an infinite matrix.
    Scan(ScanArgs),
    /// Print the version.
    Version,
}

#[derive(Debug, Args, Default)]
pub struct TolArgs {
    #[arg(long)]
    pub tol_herm: Option<f64>,
    #[arg(long)]
    pub tol_diag: Option<f64>,
    #[arg(long)]
    pub tol_psd: Option<f64>,
    #[arg(long)]
    pub tol_entry: Option<f64>,
    #[arg(long)]
    pub tol_rank: Option<f64>,
    #[arg(long)]
    pub tol_recon: Option<f64>,
}

impl TolArgs {
    pub fn resolve(&self) -> Tolerances {
        let d = Tolerances::default();
        Tolerances {
            herm: self.tol_herm.unwrap_or(d.herm),
            diag: self.tol_diag.unwrap_or(d.diag),
            psd: self.tol_psd.unwrap_or(d.psd),
            entry: self.tol_entry.unwrap_or(d.entry),
            rank: self.tol_rank.unwrap_or(d.rank),
            recon: self.tol_recon.unwrap_or(d.recon),
        }
    }
}

fn parse_field(s: &str) -> Result<Field, String> {
    s.parse::<Field>().map_err(|e| e.to_string())
}

#[derive(Debug, Args)]
pub struct CheckArgs {
    /// Matrix file in JSON.
    pub input: PathBuf,
    /// Field to decide extremality over, overriding the file.
    #[arg(long, value_parser = parse_field)]
    pub field: Option<Field>,
    #[arg(long, conflicts_with = "human")]
    pub json: bool,
    #[arg(long)]
    pub human: bool,
    #[command(flatten)]
    pub tol: TolArgs,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum KindArg {
    LitamComplex,
    LitamReal,
    Prop1,
    AllOnes,
    Identity,
    Random,
}

impl KindArg {
    fn kind(self) -> ConstructionKind {
        match self {
            KindArg::LitamComplex => ConstructionKind::LiTamComplex,
            KindArg::LitamReal => ConstructionKind::LiTamReal,
            KindArg::Prop1 => ConstructionKind::Proposition1,
            KindArg::AllOnes => ConstructionKind::AllOnes,
            KindArg::Identity => ConstructionKind::Identity,
            KindArg::Random => ConstructionKind::RandomGram,
        }
    }
}

#[derive(Debug, Args)]
pub struct GenerateArgs {
    #[arg(long, value_enum)]
    pub kind: KindArg,
    /// Rank, or the dimension of the sampled vectors for prop1 and random.
    #[arg(long)]
    pub rank: Option<usize>,
    #[arg(long)]
    pub size: usize,
    #[arg(long, value_parser = parse_field)]
    pub field: Option<Field>,
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
    /// Write the matrix here instead of stdout.
    #[arg(long)]
    pub out: Option<PathBuf>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum GenArg {
    Prop1,
    Ones,
    Cycled,
}

#[derive(Debug, Args)]
pub struct ScanArgs {
    #[arg(long = "gen", value_enum)]
    pub generator: GenArg,
    #[arg(long)]
    pub dim: Option<usize>,
    #[arg(long, value_parser = parse_field)]
    pub field: Option<Field>,
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
    /// Finite matrix file for the cycled generator.
    #[arg(long)]
    pub base: Option<PathBuf>,
    /// Smallest truncation; defaults to 1, or the base size for cycled.
    #[arg(long)]
    pub min: Option<usize>,
    #[arg(long, default_value_t = 32)]
    pub max: usize,
    #[arg(long, default_value_t = 1)]
    pub step: usize,
    #[command(flatten)]
    pub tol: TolArgs,
}

/// What a command printed and how it exits.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Outcome {
    pub stdout: String,
    pub stderr: String,
    pub code: u8,
}

impl Outcome {
    fn ok(stdout: String, code: u8) -> Self {
        Outcome {
            stdout,
            stderr: String::new(),
            code,
        }
    }

    fn fail(message: impl std::fmt::Display, code: u8) -> Self {
        Outcome {
            stdout: String::new(),
            stderr: format!("error: {message}\n"),
            code,
        }
    }

    fn from_error(e: &Error) -> Self {
        let code = if e.is_numerical() { EXIT_NUMERICAL } else { EXIT_INVALID };
        Outcome::fail(format!("{}: {e}", e.code()), code)
    }

    /// Input problems outside the library (I/O, JSON, shape).
    fn from_anyhow(e: &anyhow::Error) -> Self {
        match e.downcast_ref::<Error>() {
            Some(inner) => Outcome::from_error(inner),
            None => Outcome::fail(format!("{e:#}"), EXIT_INVALID),
        }
    }
}

/// Parse `args` (program name first) and run the command.
pub fn run<I, T>(args: I) -> Outcome
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_INVALID } else { 0 };
            let text = e.render().to_string();
            return if e.use_stderr() {
                Outcome {
                    stdout: String::new(),
                    stderr: text,
                    code,
                }
            } else {
                Outcome::ok(text, code)
            };
        }
    };
    match cli.command {
        Command::Check(a) => check(&a),
        Command::Generate(a) => generate(&a),
        Command::Scan(a) => scan(&a),
        Command::Version => Outcome::ok(format!("elliptope {}\n", env!("CARGO_PKG_VERSION")), 0),
    }
}

pub fn check(args: &CheckArgs) -> Outcome {
    let tol = args.tol.resolve();
    if let Err(e) = tol.validate() {
        return Outcome::from_error(&e);
    }
    let matrix = match read_matrix_file(&args.input).and_then(|f| f.to_matrix()) {
        Ok(m) => m,
        Err(e) => return Outcome::from_anyhow(&e),
    };
    let matrix = match args.field {
        Some(field) => matrix.with_field(field),
        None => matrix,
    };
    let c = match validate_correlation(&matrix, &tol) {
        Ok(c) => c,
        Err(e) => return Outcome::from_error(&e),
    };
    let report = match check_extreme(&c, &tol) {
        Ok(r) => r,
        Err(e) => return Outcome::from_error(&e),
    };
    let file = ReportFile::new(&report, c.psd_floor(), tol);
    let text = if args.json { to_json(&file) } else { file.human() };
    let code = match report.verdict {
        Verdict::Extreme => EXIT_EXTREME,
        Verdict::NotExtreme => EXIT_NOT_EXTREME,
    };
    Outcome::ok(text, code)
}

fn default_field(kind: KindArg) -> Field {
    match kind {
        KindArg::LitamComplex => Field::Complex,
        _ => Field::Real,
    }
}

pub fn generate(args: &GenerateArgs) -> Outcome {
    let rank = match (args.rank, args.kind) {
        (Some(r), _) => r,
        (None, KindArg::AllOnes | KindArg::Identity) => 1,
        (None, _) => return Outcome::fail("--rank is required for this kind", EXIT_INVALID),
    };
    let spec = ConstructionSpec {
        kind: args.kind.kind(),
        field: args.field.unwrap_or(default_field(args.kind)),
        rank_target: rank,
        n: args.size,
        seed: args.seed,
    };
    let built = match spec.build(&Tolerances::default()) {
        Ok(b) => b,
        Err(e) => return Outcome::from_error(&e),
    };
    let json = to_json(&MatrixFile::from_matrix(built.matrix.matrix()));
    let label = format!("label: {}\n", built.label.map_or("unlabeled", Verdict::as_str));
    match &args.out {
        Some(path) => match std::fs::write(path, json) {
            Ok(()) => Outcome::ok(label, 0),
            Err(e) => Outcome::fail(format!("cannot write {}: {e}", path.display()), EXIT_INVALID),
        },
        None => Outcome {
            stdout: json,
            stderr: label,
            code: 0,
        },
    }
}

fn load_base(path: &Path, field: Option<Field>, tol: &Tolerances) -> anyhow::Result<elliptope::CorrelationMatrix> {
    let m = read_matrix_file(path)?.to_matrix()?;
    let m = match field {
        Some(f) => m.with_field(f),
        None => m,
    };
    Ok(validate_correlation(&m, tol)?)
}

pub fn scan(args: &ScanArgs) -> Outcome {
    let tol = args.tol.resolve();
    if let Err(e) = tol.validate() {
        return Outcome::from_error(&e);
    }
    let (generator, file) = match args.generator {
        GenArg::Prop1 => {
            let Some(dim) = args.dim else {
                return Outcome::fail("--dim is required for the prop1 generator", EXIT_INVALID);
            };
            let field = args.field.unwrap_or(Field::Real);
            (
                MatrixGenerator::Proposition1Stream {
                    dim,
                    field,
                    seed: args.seed,
                },
                GeneratorFile {
                    kind: GeneratorKind::Prop1,
                    field,
                    dim: Some(dim),
                    seed: Some(args.seed),
                    base: None,
                },
            )
        }
        GenArg::Ones => {
            let field = args.field.unwrap_or(Field::Real);
            (
                MatrixGenerator::ConstantOnes { field },
                GeneratorFile {
                    kind: GeneratorKind::Ones,
                    field,
                    dim: None,
                    seed: None,
                    base: None,
                },
            )
        }
        GenArg::Cycled => {
            let Some(path) = &args.base else {
                return Outcome::fail("--base is required for the cycled generator", EXIT_INVALID);
            };
            let base = match load_base(path, args.field, &tol) {
                Ok(b) => b,
                Err(e) => return Outcome::from_anyhow(&e),
            };
            let file = GeneratorFile {
                kind: GeneratorKind::Cycled,
                field: base.field(),
                dim: None,
                seed: None,
                base: Some(MatrixFile::from_matrix(base.matrix())),
            };
            (MatrixGenerator::FromFiniteCycled { base }, file)
        }
    };
    let n_min = args.min.unwrap_or(match &generator {
        MatrixGenerator::FromFiniteCycled { base } => base.n(),
        _ => 1,
    });
    match truncation_scan(&generator, n_min, args.max, args.step, &tol) {
        Ok(trace) => Outcome::ok(
            to_json(&ScanFile {
                generator: file,
                n_min,
                n_max: args.max,
                step: args.step,
                tolerances: tol,
                trace,
            }),
            0,
        ),
        Err(e) => Outcome::from_error(&e),
    }
}
