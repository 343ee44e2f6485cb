use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Parser, Subcommand};

use tfan::commands;
use tfan::report::Report;

/// Exact polyhedral divisors on P¹: validation, smoothness, and certified
/// coverings by affine-space charts.
#[derive(Parser)]
#[command(name = "tfan", version, about)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Check properness, the slice rule, and the degree rule of a fan file.
    Validate {
        file: PathBuf,
        /// Write the report here instead of stdout.
        #[arg(long)]
        out: Option<PathBuf>,
        /// Add all pairwise member intersections before checking.
        #[arg(long)]
        close_intersections: bool,
    },
    /// Decide smoothness of the encoded complete variety.
    Smooth {
        file: PathBuf,
        #[arg(long)]
        out: Option<PathBuf>,
        #[arg(long)]
        close_intersections: bool,
    },
    /// Construct and certify a covering by affine-space charts.
    Acover {
        file: PathBuf,
        #[arg(long)]
        out: Option<PathBuf>,
        #[arg(long)]
        close_intersections: bool,
    },
    /// Downgrade a complete toric fan to a divisorial fan document.
    Downgrade {
        file: PathBuf,
        #[arg(long)]
        out: Option<PathBuf>,
        /// Height coordinate to project along (default: the last).
        #[arg(long)]
        project: Option<usize>,
    },
    /// Re-validate an acover report against its fan.
    VerifyAcover {
        fan: PathBuf,
        charts: PathBuf,
        #[arg(long)]
        out: Option<PathBuf>,
    },
}

fn read(path: &Path) -> Result<String, Report> {
    fs::read_to_string(path).map_err(|e| {
        Report::input_error(
            "io",
            vec![tfan::report::Finding::new(
                "io",
                path.display().to_string(),
                e.to_string(),
            )],
        )
    })
}

/// Single atomic write: a sibling temp file renamed into place.
fn write_output(out: Option<&Path>, content: &str) -> std::io::Result<()> {
    match out {
        None => {
            print!("{content}");
            Ok(())
        }
        Some(path) => {
            let tmp = path.with_extension("tmp");
            fs::write(&tmp, content)?;
            fs::rename(&tmp, path)
        }
    }
}

fn finish(report: Report, out: Option<&Path>) -> ExitCode {
    for finding in &report.findings {
        eprintln!("{finding}");
    }
    eprintln!("status: {}", report.status);
    if write_output(out, &report.to_pretty_string()).is_err() {
        return ExitCode::from(2);
    }
    ExitCode::from(report.exit_code() as u8)
}

fn main() -> ExitCode {
    if let Ok(threads) = std::env::var("TFAN_THREADS") {
        if let Ok(n) = threads.parse::<usize>() {
            let _ = rayon::ThreadPoolBuilder::new()
                .num_threads(n.max(1))
                .build_global();
        }
    }
    let cli = Cli::parse();
    match cli.command {
        Command::Validate {
            file,
            out,
            close_intersections,
        } => match read(&file) {
            Ok(text) => finish(
                commands::cmd_validate(&text, close_intersections),
                out.as_deref(),
            ),
            Err(r) => finish(r, out.as_deref()),
        },
        Command::Smooth {
            file,
            out,
            close_intersections,
        } => match read(&file) {
            Ok(text) => finish(
                commands::cmd_smooth(&text, close_intersections),
                out.as_deref(),
            ),
            Err(r) => finish(r, out.as_deref()),
        },
        Command::Acover {
            file,
            out,
            close_intersections,
        } => match read(&file) {
            Ok(text) => finish(
                commands::cmd_acover(&text, close_intersections),
                out.as_deref(),
            ),
            Err(r) => finish(r, out.as_deref()),
        },
        Command::Downgrade { file, out, project } => match read(&file) {
            Ok(text) => match commands::cmd_downgrade(&text, project) {
                Ok(document) => {
                    if write_output(out.as_deref(), &document).is_err() {
                        return ExitCode::from(2);
                    }
                    eprintln!("status: pass");
                    ExitCode::SUCCESS
                }
                Err(report) => finish(report, out.as_deref()),
            },
            Err(r) => finish(r, out.as_deref()),
        },
        Command::VerifyAcover { fan, charts, out } => {
            let fan_text = match read(&fan) {
                Ok(t) => t,
                Err(r) => return finish(r, out.as_deref()),
            };
            let charts_text = match read(&charts) {
                Ok(t) => t,
                Err(r) => return finish(r, out.as_deref()),
            };
            finish(
                commands::cmd_verify_acover(&fan_text, &charts_text),
                out.as_deref(),
            )
        }
    }
}
