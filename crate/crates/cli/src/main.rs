//! `quiverbench`: command-line front end.
//!
//! Exit status: 0 when every check passed, 1 when a mathematical check failed
//! (invalid representation, formula inequality, failed gallery suite, no
//! isomorphism), 2 on usage or parse errors and on formula inputs with
//! `[M] != [N]`.

mod inputs;
mod verbs;

use std::io::Write;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use quiverbench::{Error, Field};

use verbs::Report;

#[derive(Parser)]
#[command(name = "quiverbench", version, about = "Exact computations with bound quiver algebras and their modules")]
struct Cli {
    /// Seed for randomized isomorphism search.
    #[arg(long, global = true, default_value_t = 0)]
    seed: u64,
    #[arg(long, global = true, value_enum, default_value_t = Format::Text)]
    format: Format,
    /// Write the report here instead of standard output.
    #[arg(long, global = true)]
    out: Option<PathBuf>,
    /// Field for gallery selectors (gf2, gf5, q, ...); files carry their own.
    #[arg(long, global = true, default_value = "q", value_parser = parse_field)]
    field: Field,
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, ValueEnum)]
enum Format {
    Text,
    Json,
}

fn parse_field(s: &str) -> Result<Field, String> {
    s.parse().map_err(|e: Error| e.to_string())
}

#[derive(clap::Args)]
struct One {
    /// Algebra file or selector (gallery:H:5, gallery:Hstar:5, gallery:Lambda:5).
    #[arg(long)]
    a: Option<String>,
    /// Module file or selector (simple:3, projective:3, injective:3, gallery:E:1, gallery:Estar:1).
    #[arg(long)]
    m: String,
}

#[derive(clap::Args)]
struct Two {
    #[arg(long)]
    a: Option<String>,
    #[arg(long)]
    m: String,
    #[arg(long)]
    n: String,
}

#[derive(Subcommand)]
enum Command {
    /// Dimension, nilpotency degree and basis counts of an algebra.
    AlgebraInfo {
        #[arg(long)]
        a: String,
        /// Also build T(A) and check its symmetric form.
        #[arg(long)]
        trivial_extension: bool,
    },
    /// Check a representation against the algebra's relations.
    RepValidate(One),
    /// Dimension vector, radical, top and socle classes.
    Dimvec(One),
    /// dim Hom(M, N), optionally with a basis.
    Hom {
        #[command(flatten)]
        args: Two,
        /// Include a basis of Hom(M, N).
        #[arg(long)]
        basis: bool,
    },
    /// dim Ext¹(M, N).
    Ext1(Two),
    /// Auslander-Reiten translate τM = D Tr M.
    Tau {
        #[command(flatten)]
        args: One,
        /// Write the result as a representation file.
        #[arg(long)]
        emit: Option<PathBuf>,
    },
    /// Inverse translate τ⁻M = Tr D M.
    TauMinus {
        #[command(flatten)]
        args: One,
        #[arg(long)]
        emit: Option<PathBuf>,
    },
    /// Isomorphism test with a witness.
    Iso(Two),
    /// Check a length formula for X against the pair (M, N).
    Formula {
        #[arg(long, value_parser = ["i", "ii"])]
        which: String,
        #[arg(long)]
        a: Option<String>,
        #[arg(long)]
        x: String,
        #[arg(long)]
        m: String,
        #[arg(long)]
        n: String,
    },
    /// Brick, orthogonality, τ-orbit and pd checks on the mouth modules.
    GalleryTube {
        #[arg(long)]
        n: usize,
        /// Replace E_l and E*_l by the same spaces with zero maps.
        #[arg(long)]
        corrupt: Option<usize>,
    },
    /// Class, Hom, top/socle and formula checks on the pairs (E_l, E*_l) over Λ_n.
    GalleryShortCycle {
        #[arg(long)]
        n: usize,
        /// Replace E_l by the same spaces with zero maps.
        #[arg(long)]
        corrupt: Option<usize>,
    },
    /// Write the gallery algebras and modules as JSON files.
    ExportGallery {
        #[arg(long)]
        n: usize,
        #[arg(long)]
        dir: PathBuf,
    },
}

fn run(cli: &Cli) -> quiverbench::Result<Report> {
    let f = cli.field;
    match &cli.command {
        Command::AlgebraInfo { a, trivial_extension } => verbs::algebra_info(a, f, *trivial_extension),
        Command::RepValidate(x) => verbs::rep_validate(x.a.as_deref(), &x.m, f),
        Command::Dimvec(x) => verbs::dimvec(x.a.as_deref(), &x.m, f),
        Command::Hom { args, basis } => verbs::hom(args.a.as_deref(), &args.m, &args.n, f, *basis),
        Command::Ext1(x) => verbs::ext1(x.a.as_deref(), &x.m, &x.n, f),
        Command::Tau { args, emit } => verbs::translate(args.a.as_deref(), &args.m, f, false, emit.as_deref()),
        Command::TauMinus { args, emit } => verbs::translate(args.a.as_deref(), &args.m, f, true, emit.as_deref()),
        Command::Iso(x) => verbs::iso(x.a.as_deref(), &x.m, &x.n, f, cli.seed),
        Command::Formula { which, a, x, m, n } => verbs::formula(a.as_deref(), which, x, m, n, f),
        Command::GalleryTube { n, corrupt } => verbs::gallery_tube(*n, f, cli.seed, *corrupt),
        Command::GalleryShortCycle { n, corrupt } => verbs::gallery_short_cycle(*n, f, *corrupt),
        Command::ExportGallery { n, dir } => verbs::export(*n, f, dir),
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let report = match run(&cli) {
        Ok(r) => r,
        Err(e) => {
            eprintln!("error: {e}");
            return ExitCode::from(match e {
                Error::InvalidRepresentation(_) => 1,
                _ => 2,
            });
        }
    };
    let text = match cli.format {
        Format::Json => serde_json::to_string_pretty(&report.to_json()).expect("report serializes") + "\n",
        Format::Text => report.to_text(),
    };
    let written = match &cli.out {
        Some(path) => std::fs::write(path, &text),
        None => std::io::stdout().write_all(text.as_bytes()),
    };
    if let Err(e) = written {
        eprintln!("error: cannot write report: {e}");
        return ExitCode::from(2);
    }
    ExitCode::from(report.exit_code())
}
