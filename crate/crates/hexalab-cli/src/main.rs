//! `hexalab`: exact deciders for homometry and hexachordal phenomena on
//! finite spaces, rhythmic tiling canons, Z-relation enumeration, and
//! seeded Monte Carlo experiments on spheres, tori and Klein bottles.

mod load;
mod mc_cmd;
mod output;
mod space_cmd;
mod symbolic_cmd;
mod tiling_cmd;
mod zrel_cmd;

use clap::{Parser, Subcommand};
use output::{Format, RunConfig, EXIT_INPUT};
use std::path::PathBuf;

#[derive(Parser)]
#[command(
    name = "hexalab",
    about = "exact homometry, hexachordal and tiling analysis",
    version
)]
struct Cli {
    /// Seed recorded in every output header and used by randomized commands.
    #[arg(long, global = true, default_value_t = 0)]
    seed: u64,
    /// Worker count for parallel commands (recorded in every output header).
    #[arg(long, global = true, default_value_t = 1)]
    threads: usize,
    #[arg(long, global = true, value_enum, default_value_t = Format::Text)]
    format: Format,
    /// Write the output to a file instead of stdout.
    #[arg(long, global = true)]
    out: Option<PathBuf>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Finite metric measure spaces: validation, laws, volume verdicts.
    #[command(subcommand)]
    Space(SpaceCommand),
    /// Abstract interval tables and their independence properties.
    #[command(subcommand)]
    Symbolic(SymbolicCommand),
    /// Tilings of cyclic groups via DFT zero sets.
    #[command(subcommand)]
    Tiling(TilingCommand),
    /// Interval content and homometry classes of cyclic subsets.
    #[command(subcommand)]
    Zrel(ZrelCommand),
    /// Seeded Monte Carlo experiments on continuous spaces.
    #[command(subcommand)]
    Mc(McCommand),
}

#[derive(Subcommand)]
enum SpaceCommand {
    /// Structural checks: symmetry, diagonal, measure, triangle inequality.
    Validate {
        /// Recipe JSON (inline or a file path).
        #[arg(long)]
        recipe: String,
        /// Treat triangle violations as errors instead of warnings.
        #[arg(long)]
        require_triangle: bool,
    },
    /// Distance distribution of the space or of a subset.
    Dist {
        #[arg(long)]
        recipe: String,
        /// Restrict both coordinates to this subset.
        #[arg(long)]
        subset: Option<String>,
        /// Normalize the restricted law to total mass 1.
        #[arg(long)]
        normalize: bool,
    },
    /// Constant volume condition.
    Cvc {
        #[arg(long)]
        recipe: String,
    },
    /// Hexachordal property of a half-measure subset.
    Hex {
        #[arg(long)]
        recipe: String,
        #[arg(long)]
        subset: String,
    },
    /// Patterson function equality (group-backed recipes only).
    Patterson {
        #[arg(long)]
        recipe: String,
        #[arg(long)]
        subset: String,
    },
    /// Transitivity under measure-preserving isometries.
    Transitive {
        #[arg(long)]
        recipe: String,
    },
    /// Materialize a recipe into explicit space JSON.
    Export {
        #[arg(long)]
        recipe: String,
    },
}

#[derive(Subcommand)]
enum SymbolicCommand {
    /// Pairwise independence of the two coordinates and the interval value.
    Ind { table: String },
    /// Shared-decomposition interval-law equality.
    Hexprime { table: String },
    /// Double-decomposition interval-law equality.
    Hexdd { table: String },
    /// Latin-square check, optionally with the associativity test.
    Latin {
        table: String,
        #[arg(long)]
        group_check: bool,
    },
    /// Is the table the Cayley table of a group (identity in the headers)?
    Group { table: String },
    /// Randomized cross-check of the decomposition properties.
    Oracle {
        table: String,
        #[arg(long, value_enum, default_value_t = symbolic_cmd::OracleModeArg::Prime)]
        mode: symbolic_cmd::OracleModeArg,
        #[arg(long, default_value_t = 1000)]
        trials: usize,
    },
    /// Conditional law of the interval value given both coordinates in a
    /// subset.
    Fdist {
        table: String,
        #[arg(long)]
        subset: String,
    },
}

#[derive(Subcommand)]
enum TilingCommand {
    /// Zero set of the DFT of the characteristic function.
    Zeros {
        #[arg(long)]
        n: u32,
        #[arg(long)]
        a: String,
    },
    /// Tiling verdict by both the zero-set criterion and the direct sum.
    Check {
        #[arg(long)]
        n: u32,
        #[arg(long)]
        a: String,
        #[arg(long)]
        b: String,
    },
    /// All tiling complements of a subset.
    Complements {
        #[arg(long)]
        n: u32,
        #[arg(long)]
        a: String,
        /// Report the whole translation orbit instead of normalizing to
        /// complements containing 0.
        #[arg(long)]
        full_orbit: bool,
    },
    /// A spectrum (set with all pairwise differences in the zero set).
    Spectrum {
        #[arg(long)]
        n: u32,
        #[arg(long)]
        a: String,
    },
    /// Aperiodic-factorization checks and the opt-in search.
    Vuza {
        #[arg(long)]
        n: u32,
        #[arg(long)]
        a: Option<String>,
        #[arg(long)]
        b: Option<String>,
        /// Scan aperiodic subsets for an aperiodic complement (slow).
        #[arg(long)]
        search: bool,
        /// Factor size for the search.
        #[arg(long, default_value_t = 6)]
        size: u32,
        #[arg(long, default_value_t = 50_000_000)]
        max_candidates: u64,
    },
}

#[derive(Subcommand)]
enum ZrelCommand {
    /// Interval vector and dihedral canonical form of a subset.
    Ivec {
        #[arg(long)]
        n: u32,
        #[arg(long)]
        a: String,
    },
    /// Group all k-subsets into homometry classes.
    Classes {
        #[arg(long)]
        n: u32,
        #[arg(long)]
        k: u32,
        /// Only report classes with at least this many dihedral classes.
        #[arg(long, default_value_t = 1)]
        min_size: usize,
        /// Subset budget (defaults to 5,000,000 enumerated subsets).
        #[arg(long)]
        budget: Option<u128>,
        /// Ignore the budget.
        #[arg(long)]
        force: bool,
    },
    /// Check that every half-size subset shares its complement's interval
    /// vector.
    Babbitt {
        #[arg(long)]
        n: u32,
    },
}

#[derive(Subcommand)]
enum McCommand {
    /// The latitude-band experiment on the 2-sphere.
    SphereBand {
        #[arg(long, default_value_t = 1_000_000)]
        n: usize,
        /// Radius probed on both strata (default: pole-to-equator chord).
        #[arg(long, default_value_t = std::f64::consts::SQRT_2)]
        r: f64,
    },
    /// Volume-function estimates on a radius grid.
    Volume {
        #[arg(long)]
        spec: String,
        /// Radius grid start:end:step (inclusive).
        #[arg(long)]
        grid: String,
        #[arg(long, default_value_t = 1_000_000)]
        n: usize,
    },
    /// Two-sample Kolmogorov-Smirnov comparison of distance files.
    Ks {
        /// Compare a sample file against itself.
        #[arg(long)]
        same: Option<String>,
        #[arg(long)]
        s1: Option<String>,
        #[arg(long)]
        s2: Option<String>,
        #[arg(long, default_value_t = 0.01)]
        alpha: f64,
    },
    /// The three-sample argument: augment both conditional samples by the
    /// cross sample and compare.
    ThreeSample {
        #[arg(long)]
        spec: String,
        /// band:<z> | hemisphere | strip:<axis>.
        #[arg(long)]
        predicate: String,
        #[arg(long, default_value_t = 1_000_000)]
        n: usize,
        #[arg(long, default_value_t = 0.01)]
        alpha: f64,
    },
    /// Mean distance between two random points.
    Mean {
        #[arg(long)]
        spec: String,
        #[arg(long, default_value_t = 1_000_000)]
        n: usize,
    },
}

fn command_name(command: &Command) -> String {
    match command {
        Command::Space(c) => format!(
            "space {}",
            match c {
                SpaceCommand::Validate { .. } => "validate",
                SpaceCommand::Dist { .. } => "dist",
                SpaceCommand::Cvc { .. } => "cvc",
                SpaceCommand::Hex { .. } => "hex",
                SpaceCommand::Patterson { .. } => "patterson",
                SpaceCommand::Transitive { .. } => "transitive",
                SpaceCommand::Export { .. } => "export",
            }
        ),
        Command::Symbolic(c) => format!(
            "symbolic {}",
            match c {
                SymbolicCommand::Ind { .. } => "ind",
                SymbolicCommand::Hexprime { .. } => "hexprime",
                SymbolicCommand::Hexdd { .. } => "hexdd",
                SymbolicCommand::Latin { .. } => "latin",
                SymbolicCommand::Group { .. } => "group",
                SymbolicCommand::Oracle { .. } => "oracle",
                SymbolicCommand::Fdist { .. } => "fdist",
            }
        ),
        Command::Tiling(c) => format!(
            "tiling {}",
            match c {
                TilingCommand::Zeros { .. } => "zeros",
                TilingCommand::Check { .. } => "check",
                TilingCommand::Complements { .. } => "complements",
                TilingCommand::Spectrum { .. } => "spectrum",
                TilingCommand::Vuza { .. } => "vuza",
            }
        ),
        Command::Zrel(c) => format!(
            "zrel {}",
            match c {
                ZrelCommand::Ivec { .. } => "ivec",
                ZrelCommand::Classes { .. } => "classes",
                ZrelCommand::Babbitt { .. } => "babbitt",
            }
        ),
        Command::Mc(c) => format!(
            "mc {}",
            match c {
                McCommand::SphereBand { .. } => "sphere-band",
                McCommand::Volume { .. } => "volume",
                McCommand::Ks { .. } => "ks",
                McCommand::ThreeSample { .. } => "three-sample",
                McCommand::Mean { .. } => "mean",
            }
        ),
    }
}

fn run(cli: Cli) -> Result<i32, String> {
    let config = RunConfig {
        command: command_name(&cli.command),
        seed: cli.seed,
        threads: cli.threads.max(1),
        format: cli.format,
        out: cli.out.clone(),
    };
    match &cli.command {
        Command::Space(cmd) => match cmd {
            SpaceCommand::Validate {
                recipe,
                require_triangle,
            } => space_cmd::validate(&config, recipe, *require_triangle),
            SpaceCommand::Dist {
                recipe,
                subset,
                normalize,
            } => space_cmd::dist(&config, recipe, subset.as_deref(), *normalize),
            SpaceCommand::Cvc { recipe } => space_cmd::cvc(&config, recipe),
            SpaceCommand::Hex { recipe, subset } => space_cmd::hex(&config, recipe, subset),
            SpaceCommand::Patterson { recipe, subset } => {
                space_cmd::patterson(&config, recipe, subset)
            }
            SpaceCommand::Transitive { recipe } => space_cmd::transitive(&config, recipe),
            SpaceCommand::Export { recipe } => space_cmd::export(&config, recipe),
        },
        Command::Symbolic(cmd) => match cmd {
            SymbolicCommand::Ind { table } => symbolic_cmd::ind(&config, table),
            SymbolicCommand::Hexprime { table } => symbolic_cmd::hexprime(&config, table),
            SymbolicCommand::Hexdd { table } => symbolic_cmd::hexdd(&config, table),
            SymbolicCommand::Latin { table, group_check } => {
                symbolic_cmd::latin(&config, table, *group_check)
            }
            SymbolicCommand::Group { table } => symbolic_cmd::group(&config, table),
            SymbolicCommand::Oracle {
                table,
                mode,
                trials,
            } => symbolic_cmd::oracle(&config, table, *mode, *trials),
            SymbolicCommand::Fdist { table, subset } => {
                symbolic_cmd::fdist(&config, table, subset)
            }
        },
        Command::Tiling(cmd) => match cmd {
            TilingCommand::Zeros { n, a } => tiling_cmd::zeros(&config, *n, a),
            TilingCommand::Check { n, a, b } => tiling_cmd::check(&config, *n, a, b),
            TilingCommand::Complements { n, a, full_orbit } => {
                tiling_cmd::complements(&config, *n, a, *full_orbit)
            }
            TilingCommand::Spectrum { n, a } => tiling_cmd::spectrum(&config, *n, a),
            TilingCommand::Vuza {
                n,
                a,
                b,
                search,
                size,
                max_candidates,
            } => tiling_cmd::vuza(
                &config,
                *n,
                a.as_deref(),
                b.as_deref(),
                *search,
                *size,
                *max_candidates,
            ),
        },
        Command::Zrel(cmd) => match cmd {
            ZrelCommand::Ivec { n, a } => zrel_cmd::ivec(&config, *n, a),
            ZrelCommand::Classes {
                n,
                k,
                min_size,
                budget,
                force,
            } => zrel_cmd::classes(&config, *n, *k, *min_size, *budget, *force),
            ZrelCommand::Babbitt { n } => zrel_cmd::babbitt(&config, *n),
        },
        Command::Mc(cmd) => match cmd {
            McCommand::SphereBand { n, r } => mc_cmd::sphere_band(&config, *n, *r),
            McCommand::Volume { spec, grid, n } => mc_cmd::volume(&config, spec, grid, *n),
            McCommand::Ks {
                same,
                s1,
                s2,
                alpha,
            } => mc_cmd::ks(&config, same.as_deref(), s1.as_deref(), s2.as_deref(), *alpha),
            McCommand::ThreeSample {
                spec,
                predicate,
                n,
                alpha,
            } => mc_cmd::three_sample(&config, spec, predicate, *n, *alpha),
            McCommand::Mean { spec, n } => mc_cmd::mean(&config, spec, *n),
        },
    }
}

fn main() {
    let cli = Cli::parse();
    match run(cli) {
        Ok(code) => std::process::exit(code),
        Err(message) => {
            eprintln!("error: {message}");
            std::process::exit(EXIT_INPUT);
        }
    }
}
