use anyhow::{bail, Result};
use clap::{ArgGroup, Args, Parser, Subcommand, ValueEnum};

use confspace::engine::Family;
use confspace::Surface;
use confspace_cli::{
    cmd_betti, cmd_dump_block, cmd_polys, cmd_series, cmd_stable_table, run_suite, OutputFormat,
    SeriesKind, Suite, VerifyOptions,
};

/// Exact Betti numbers of unordered configuration spaces of surfaces.
#[derive(Parser)]
#[command(name = "confspace", version, about)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Args)]
#[command(group(ArgGroup::new("surface").required(true).multiple(false)))]
struct SurfaceArgs {
    /// Closed orientable surface of genus G
    #[arg(long, value_name = "G", group = "surface")]
    closed_orientable: Option<usize>,
    /// Orientable surface of genus G with N punctures (N >= 1)
    #[arg(long, num_args = 2, value_names = ["G", "N"], group = "surface")]
    open_orientable: Option<Vec<usize>>,
    /// Closed nonorientable surface with H crosscaps (H >= 1)
    #[arg(long, value_name = "H", group = "surface")]
    closed_nonorientable: Option<usize>,
    /// Nonorientable surface with H crosscaps and N punctures
    #[arg(long, num_args = 2, value_names = ["H", "N"], group = "surface")]
    open_nonorientable: Option<Vec<usize>>,
}

impl SurfaceArgs {
    fn to_surface(&self) -> Result<Surface> {
        if let Some(g) = self.closed_orientable {
            return Ok(Surface::closed_orientable(g));
        }
        if let Some(gn) = &self.open_orientable {
            return Ok(Surface::open_orientable(gn[0], gn[1])?);
        }
        if let Some(h) = self.closed_nonorientable {
            return Ok(Surface::closed_nonorientable(h)?);
        }
        if let Some(hn) = &self.open_nonorientable {
            return Ok(Surface::open_nonorientable(hn[0], hn[1])?);
        }
        bail!("a surface is required");
    }
}

#[derive(Debug, Clone, Copy, ValueEnum)]
enum FamilyArg {
    Stable,
    Diag,
    Top,
}

impl From<FamilyArg> for Family {
    fn from(f: FamilyArg) -> Family {
        match f {
            FamilyArg::Stable => Family::Stable,
            FamilyArg::Diag => Family::Diag,
            FamilyArg::Top => Family::Top,
        }
    }
}

#[derive(Subcommand)]
enum Command {
    /// Compute one Betti number beta_i(B_k) of the given surface
    Betti {
        #[command(flatten)]
        surface: SurfaceArgs,
        /// Homological degree
        #[arg(short)]
        i: usize,
        /// Number of points
        #[arg(short)]
        k: usize,
        #[arg(long, value_enum, default_value_t = OutputFormat::Plain)]
        format: OutputFormat,
    },
    /// Table of stable Betti numbers of closed orientable surfaces
    StableTable {
        #[arg(long, default_value_t = 6)]
        max_g: usize,
        #[arg(long, default_value_t = 43)]
        max_i: usize,
        #[arg(long, value_enum, default_value_t = OutputFormat::Csv)]
        format: OutputFormat,
    },
    /// Fixed-genus polynomials giving one Betti family in high degrees
    Polys {
        #[arg(long, short)]
        genus: usize,
        #[arg(long, value_enum)]
        family: FamilyArg,
        #[arg(long, value_enum, default_value_t = OutputFormat::Plain)]
        format: OutputFormat,
    },
    /// Dump a Poincaré series with exact rational coefficients
    Series {
        #[arg(long, value_enum)]
        which: SeriesKind,
        #[arg(long, short, default_value_t = 0)]
        genus: usize,
        /// Puncture parameter (pair series only)
        #[arg(long, default_value_t = 1)]
        n: usize,
        #[arg(long, default_value_t = 20)]
        trunc: usize,
        #[arg(long, value_enum, default_value_t = OutputFormat::Plain)]
        format: OutputFormat,
    },
    /// Dump one basis block and its differential as JSON
    DumpBlock {
        #[command(flatten)]
        surface: SurfaceArgs,
        #[arg(short)]
        i: usize,
        #[arg(short)]
        k: usize,
        #[arg(long, env = "CONFSPACE_MAX_BLOCK_DIM", default_value_t = 50_000)]
        max_block_dim: usize,
    },
    /// Run a verification suite; exits 1 on any mathematical mismatch
    Verify {
        #[arg(value_enum)]
        suite: Suite,
        /// Genus bound override (capped per suite)
        #[arg(long)]
        max_g: Option<usize>,
        /// Weight bound override for the oracle grid (capped)
        #[arg(long)]
        max_k: Option<usize>,
        /// Truncation override for the series identities (capped)
        #[arg(long)]
        trunc: Option<usize>,
        #[arg(long, env = "CONFSPACE_MAX_BLOCK_DIM")]
        max_block_dim: Option<usize>,
    },
}

fn run(cli: Cli) -> Result<i32> {
    match cli.command {
        Command::Betti {
            surface,
            i,
            k,
            format,
        } => {
            println!("{}", cmd_betti(surface.to_surface()?, i, k, format)?);
            Ok(0)
        }
        Command::StableTable {
            max_g,
            max_i,
            format,
        } => {
            println!("{}", cmd_stable_table(max_g, max_i, format)?);
            Ok(0)
        }
        Command::Polys {
            genus,
            family,
            format,
        } => {
            println!("{}", cmd_polys(genus, family.into(), format)?);
            Ok(0)
        }
        Command::Series {
            which,
            genus,
            n,
            trunc,
            format,
        } => {
            println!("{}", cmd_series(which, genus, n, trunc, format)?);
            Ok(0)
        }
        Command::DumpBlock {
            surface,
            i,
            k,
            max_block_dim,
        } => {
            println!(
                "{}",
                cmd_dump_block(surface.to_surface()?, i, k, max_block_dim)?
            );
            Ok(0)
        }
        Command::Verify {
            suite,
            max_g,
            max_k,
            trunc,
            max_block_dim,
        } => {
            let opts = VerifyOptions {
                max_g,
                max_k,
                trunc,
                max_block_dim,
            };
            let report = run_suite(suite, &opts)?;
            for entry in &report.entries {
                if entry.passed {
                    println!("PASS {}", entry.name);
                } else {
                    println!("FAIL {}: {}", entry.name, entry.detail);
                }
            }
            let failed = report.entries.iter().filter(|e| !e.passed).count();
            println!("{} checks, {} failed", report.entries.len(), failed);
            Ok(if report.all_passed() { 0 } else { 1 })
        }
    }
}

fn main() {
    // clap itself exits with code 2 on malformed invocations
    let cli = Cli::parse();
    match run(cli) {
        Ok(code) => std::process::exit(code),
        Err(e) => {
            eprintln!("error: {e:#}");
            std::process::exit(2);
        }
    }
}
