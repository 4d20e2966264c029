use std::io::Write;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use homleib_cli::render::render_text;
use homleib_cli::{
    cmd_cohomology, cmd_deform, cmd_verify, load, AlgebraDocument, DeformOp, Outcome, Report,
};

#[derive(Debug, Clone, Copy, ValueEnum)]
enum Format {
    Text,
    Json,
}

/// Cohomology and deformations of finite-dimensional Hom-Leibniz algebras.
#[derive(Debug, Parser)]
#[command(name = "homleib", version)]
struct Cli {
    /// Report format.
    #[arg(long, global = true, value_enum, default_value_t = Format::Text)]
    format: Format,
    /// Write the report to this file instead of standard output.
    #[arg(long, global = true)]
    output: Option<PathBuf>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Check the Hom-Leibniz identity, multiplicativity and any group action.
    Verify { file: PathBuf },
    /// Tabulate cohomology in degrees 1 through --max-degree.
    Cohomology {
        file: PathBuf,
        #[arg(long, default_value_t = 3)]
        max_degree: usize,
        /// Use the invariant cochains of the document's group action.
        #[arg(long, conflicts_with = "cheng_cai")]
        equivariant: bool,
        /// Use the subcomplex of α-compatible bilinear-type cochains.
        #[arg(long)]
        cheng_cai: bool,
    },
    /// Work with the deformation block; a group block switches to
    /// equivariant mode.
    Deform {
        #[command(subcommand)]
        op: DeformCommand,
    },
}

#[derive(Debug, Subcommand)]
enum DeformCommand {
    /// Check the deformation equations order by order.
    Verify { file: PathBuf },
    /// The first nonzero jet pair and whether it is a 2-cocycle.
    Infinitesimal { file: PathBuf },
    /// The obstruction to extending by one order.
    Obstruct { file: PathBuf },
    /// Extend order by order, stopping at the first obstruction.
    Extend {
        file: PathBuf,
        /// Target order; defaults to one more than the current order.
        #[arg(long)]
        to: Option<usize>,
    },
    /// Apply the gauge block to the deformation.
    Gauge { file: PathBuf },
    /// Remove coboundary infinitesimals by gauge transformations.
    Reduce { file: PathBuf },
    /// Rigidity verdict from the second and third cohomology.
    Rigidity { file: PathBuf },
}

fn title(path: &Path, name: Option<&str>) -> String {
    name.map(str::to_string).unwrap_or_else(|| {
        path.file_name()
            .map_or_else(String::new, |n| n.to_string_lossy().into_owned())
    })
}

type Job<'a> = Box<dyn Fn(&AlgebraDocument) -> Outcome + 'a>;

fn execute(command: &Command) -> (Outcome, String) {
    let (file, job): (&Path, Job) = match command {
        Command::Verify { file } => (file, Box::new(cmd_verify)),
        Command::Cohomology {
            file,
            max_degree,
            equivariant,
            cheng_cai,
        } => (
            file,
            Box::new(move |d| cmd_cohomology(d, *max_degree, *equivariant, *cheng_cai)),
        ),
        Command::Deform { op } => {
            let (file, op) = match op {
                DeformCommand::Verify { file } => (file, DeformOp::Verify),
                DeformCommand::Infinitesimal { file } => (file, DeformOp::Infinitesimal),
                DeformCommand::Obstruct { file } => (file, DeformOp::Obstruct),
                DeformCommand::Extend { file, to } => (file, DeformOp::Extend { to: *to }),
                DeformCommand::Gauge { file } => (file, DeformOp::Gauge),
                DeformCommand::Reduce { file } => (file, DeformOp::Reduce),
                DeformCommand::Rigidity { file } => (file, DeformOp::Rigidity),
            };
            (file, Box::new(move |d| cmd_deform(d, op)))
        }
    };
    match load(file) {
        Ok(doc) => {
            let t = title(file, doc.name.as_deref());
            (job(&doc), t)
        }
        Err(outcome) => (outcome, title(file, None)),
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let (outcome, title) = execute(&cli.command);
    let body = match cli.format {
        Format::Json => outcome.report.to_json(),
        Format::Text => render_text(&outcome.report, &title),
    };
    let is_error = matches!(outcome.report, Report::Error { .. });
    let written = match (&cli.output, is_error && matches!(cli.format, Format::Text)) {
        (_, true) => std::io::stderr().write_all(body.as_bytes()),
        (Some(path), false) => std::fs::write(path, body.as_bytes()),
        (None, false) => std::io::stdout().write_all(body.as_bytes()),
    };
    if let Err(e) = written {
        eprintln!("error: cannot write report: {e}");
        return ExitCode::from(homleib_cli::EXIT_USAGE);
    }
    ExitCode::from(outcome.exit)
}
