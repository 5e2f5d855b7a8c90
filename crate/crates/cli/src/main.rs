//! `knotfloer`: knot Floer homology of braid closures.

mod commands;
mod verify;

use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use hfk_core::resolution::{RelationMode, DEFAULT_SUBSET_CAP};

#[derive(Parser)]
#[command(name = "knotfloer", version, about = "Knot Floer homology of braid closures from a cube of resolutions")]
struct Cli {
    /// Worker threads; defaults to one per core.
    #[arg(long, global = true, env = "HFK_THREADS")]
    threads: Option<usize>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Bigraded homology of the closure with oracle verdicts.
    Hfk {
        braid: String,
        #[command(flatten)]
        cube: CubeArgs,
        #[command(flatten)]
        out: OutputArgs,
        /// Largest grid tried by the grid oracle.
        #[arg(long, default_value_t = hfk_core::grid::DEFAULT_MAX_SIZE)]
        max_size: usize,
    },
    /// Quotient algebra of one complete resolution.
    Algebra {
        braid: String,
        /// One bit per crossing, e.g. `010`.
        resolution: String,
        #[command(flatten)]
        cube: CubeArgs,
        #[command(flatten)]
        out: OutputArgs,
    },
    /// Symmetrized Alexander polynomial from the Burau representation.
    Alexander {
        braid: String,
        #[command(flatten)]
        out: OutputArgs,
    },
    /// Grid diagram homology over GF(2), from a braid or a grid file.
    Grid {
        /// Braid word; omit when `--file` is given.
        braid: Option<String>,
        /// Grid JSON `{"n", "O", "X", "XX"}`.
        #[arg(long, conflicts_with = "braid")]
        file: Option<std::path::PathBuf>,
        #[arg(long, default_value_t = hfk_core::grid::DEFAULT_MAX_SIZE)]
        max_size: usize,
        /// Also build a special grid and check the corner maps.
        #[arg(long, requires = "braid")]
        special: bool,
        #[command(flatten)]
        out: OutputArgs,
    },
    /// Runs every structural check and prints a pass/fail matrix.
    Verify {
        braid: String,
        #[command(flatten)]
        cube: CubeArgs,
        #[command(flatten)]
        out: OutputArgs,
        #[arg(long, default_value_t = hfk_core::grid::DEFAULT_MAX_SIZE)]
        max_size: usize,
        /// Test fixture: replaces the edge signs by all plus signs.
        #[arg(long, hide = true)]
        corrupt_signs: bool,
    },
}

#[derive(Args, Clone)]
struct CubeArgs {
    /// Relation family; defaults to `all` up to 6 crossings.
    #[arg(long, value_parser = parse_mode)]
    mode: Option<RelationMode>,
    #[arg(long, default_value_t = DEFAULT_SUBSET_CAP, value_parser = positive)]
    subset_cap: usize,
    /// Highest U-degree computed; defaults to `2n + 2`.
    #[arg(long, value_parser = positive)]
    degree_cap: Option<usize>,
    /// Verify every 2-face of the cube; on by default up to 8 crossings.
    #[arg(long, overrides_with = "no_check_faces")]
    check_faces: bool,
    #[arg(long)]
    no_check_faces: bool,
}

#[derive(Args, Clone)]
struct OutputArgs {
    /// Shorthand for `--output json`.
    #[arg(long)]
    json: bool,
    #[arg(long, value_enum, default_value_t = Format::Text)]
    output: Format,
}

impl OutputArgs {
    fn format(&self) -> Format {
        if self.json { Format::Json } else { self.output }
    }
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Text,
    Json,
}

fn parse_mode(s: &str) -> Result<RelationMode, String> {
    s.parse()
}

fn positive(s: &str) -> Result<usize, String> {
    match s.parse::<usize>() {
        Ok(0) => Err("must be positive".into()),
        Ok(v) => Ok(v),
        Err(e) => Err(e.to_string()),
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    if let Some(t) = cli.threads {
        if let Err(e) = rayon::ThreadPoolBuilder::new().num_threads(t).build_global() {
            eprintln!("error: thread pool: {e}");
            return ExitCode::FAILURE;
        }
    }
    let result = match cli.command {
        Command::Hfk { braid, cube, out, max_size } => commands::hfk(&braid, &cube, out.format(), max_size),
        Command::Algebra { braid, resolution, cube, out } => commands::algebra(&braid, &resolution, &cube, out.format()),
        Command::Alexander { braid, out } => commands::alexander(&braid, out.format()),
        Command::Grid { braid, file, max_size, special, out } => commands::grid(braid.as_deref(), file.as_deref(), max_size, special, out.format()),
        Command::Verify { braid, cube, out, max_size, corrupt_signs } => verify::run(&braid, &cube, out.format(), max_size, corrupt_signs),
    };
    match result {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => ExitCode::FAILURE,
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(2)
        }
    }
}
