use std::io::Read;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};

mod commands;

use commands::CliError;

#[derive(Parser)]
#[command(
    name = "germs",
    version,
    about = "Germs, germ closures and germ extensible subsets of finite posets and lattices"
)]
struct Args {
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Text,
    Json,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum OrientationArg {
    /// Germ closure of the input poset.
    E,
    /// Germ closure of its opposite.
    Eop,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum VerifyKind {
    Posets,
    Lattices,
    All,
}

#[derive(clap::Args)]
struct Input {
    /// Poset document (`.json` for JSON, `-` for standard input).
    file: PathBuf,
    #[arg(long, value_enum, default_value_t = Format::Text)]
    format: Format,
}

#[derive(Subcommand)]
enum Command {
    /// List germs with their cogerms and chains.
    Grm(Input),
    /// Print the germ closure G(U) with its classification.
    Closure(Input),
    /// Tabulate ΛE, the r/σ fixpoints and G_T of a lattice.
    Gt(Input),
    /// Decide whether a subset of a lattice is germ extensible.
    Extensible {
        #[command(flatten)]
        input: Input,
        /// Comma separated labels, e.g. `a,b` or `{a,b}`.
        #[arg(long, allow_hyphen_values = true)]
        subset: String,
    },
    /// Unique germ extensible base of a subset of a lattice.
    Base {
        #[command(flatten)]
        input: Input,
        #[arg(long, allow_hyphen_values = true)]
        subset: String,
    },
    /// Partition of the power set of a lattice into intervals [U, Ḡ(U)].
    Partition {
        #[command(flatten)]
        input: Input,
        /// Largest lattice size accepted.
        #[arg(long, default_value_t = germs::embed::DEFAULT_PARTITION_CAP)]
        cap: usize,
    },
    /// Dimension table of simple correspondence functors.
    Dim {
        #[command(flatten)]
        input: Input,
        #[arg(long, default_value_t = 0)]
        x_min: u32,
        #[arg(long, default_value_t = 5)]
        x_max: u32,
        /// Dimension of the simple module V.
        #[arg(long, default_value = "1")]
        dim_v: String,
        /// Poset whose germ closure gives |G|.
        #[arg(long, value_enum, default_value_t = OrientationArg::E)]
        orientation: OrientationArg,
    },
    /// Run the theorem predicates over enumerated corpora.
    Verify {
        #[arg(long, value_enum, default_value_t = VerifyKind::All)]
        kind: VerifyKind,
        /// Largest poset size (posets, all) or lattice size (lattices).
        #[arg(long)]
        max_size: Option<usize>,
        /// Largest S for pairs U ⊆ S.
        #[arg(long)]
        pair_max: Option<usize>,
        /// Largest lattice size when `--kind all`.
        #[arg(long)]
        lattice_max: Option<usize>,
        /// Deduplicate by isomorphism; `--up-to-iso false` enumerates labelled corpora.
        #[arg(long, default_value_t = true, num_args = 0..=1, default_missing_value = "true", action = clap::ArgAction::Set)]
        up_to_iso: bool,
        /// Restrict to the named predicates (repeatable).
        #[arg(long = "predicate")]
        predicates: Vec<String>,
        #[arg(long, value_enum, default_value_t = Format::Text)]
        format: Format,
    },
    /// Graphviz Hasse diagram: germs boxed, irreducibles filled.
    Dot {
        /// Poset document (`.json` for JSON, `-` for standard input).
        file: PathBuf,
    },
}

fn read_input(path: &PathBuf) -> Result<(String, String), CliError> {
    let name = path.to_string_lossy().into_owned();
    let text = if name == "-" {
        let mut s = String::new();
        std::io::stdin()
            .read_to_string(&mut s)
            .map_err(|e| CliError::Domain(format!("reading standard input: {e}")))?;
        s
    } else {
        std::fs::read_to_string(path).map_err(|e| CliError::Domain(format!("reading {name}: {e}")))?
    };
    Ok((name, text))
}

fn run(args: Args) -> Result<String, CliError> {
    match args.command {
        Command::Grm(i) => {
            let (path, text) = read_input(&i.file)?;
            commands::grm(&commands::load(&path, &text)?, i.format)
        }
        Command::Closure(i) => {
            let (path, text) = read_input(&i.file)?;
            commands::closure(&commands::load(&path, &text)?, i.format)
        }
        Command::Gt(i) => {
            let (path, text) = read_input(&i.file)?;
            commands::gt(&commands::load(&path, &text)?, i.format)
        }
        Command::Extensible { input, subset } => {
            let (path, text) = read_input(&input.file)?;
            commands::extensible(&commands::load(&path, &text)?, &subset, input.format)
        }
        Command::Base { input, subset } => {
            let (path, text) = read_input(&input.file)?;
            commands::base(&commands::load(&path, &text)?, &subset, input.format)
        }
        Command::Partition { input, cap } => {
            let (path, text) = read_input(&input.file)?;
            commands::partition(&commands::load(&path, &text)?, cap, input.format)
        }
        Command::Dim {
            input,
            x_min,
            x_max,
            dim_v,
            orientation,
        } => {
            let (path, text) = read_input(&input.file)?;
            let orientation = match orientation {
                OrientationArg::E => germs::Orientation::E,
                OrientationArg::Eop => germs::Orientation::Eop,
            };
            commands::dim(
                &commands::load(&path, &text)?,
                x_min,
                x_max,
                &dim_v,
                orientation,
                input.format,
            )
        }
        Command::Verify {
            kind,
            max_size,
            pair_max,
            lattice_max,
            up_to_iso,
            predicates,
            format,
        } => {
            let defaults = germs::SuiteSpec::default();
            let mut spec = germs::SuiteSpec { up_to_iso, ..defaults };
            match kind {
                VerifyKind::All => {
                    spec.poset_max = max_size.unwrap_or(defaults.poset_max);
                    spec.pair_max = pair_max.unwrap_or(spec.poset_max.min(defaults.pair_max));
                    spec.lattice_max = lattice_max.unwrap_or(defaults.lattice_max);
                }
                VerifyKind::Posets => {
                    spec.poset_max = max_size.unwrap_or(defaults.poset_max);
                    spec.pair_max = pair_max.unwrap_or(spec.poset_max.min(defaults.pair_max));
                    spec.lattice_max = 0;
                }
                VerifyKind::Lattices => {
                    spec.poset_max = 0;
                    spec.pair_max = 0;
                    spec.lattice_max = max_size.or(lattice_max).unwrap_or(defaults.lattice_max);
                }
            }
            commands::verify(&spec, kind, &predicates, format)
        }
        Command::Dot { file } => {
            let (path, text) = read_input(&file)?;
            commands::dot(&commands::load(&path, &text)?)
        }
    }
}

fn main() -> ExitCode {
    match run(Args::parse()) {
        Ok(out) => {
            print!("{out}");
            ExitCode::SUCCESS
        }
        Err(CliError::Failed(out)) => {
            print!("{out}");
            ExitCode::from(1)
        }
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(e.code())
        }
    }
}
