use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use continuity::commands::{self, Command, Props, SymMode, Target};

#[derive(Parser)]
#[command(name = "contsp", version, about = "Quantale-valued distances on finite sets and the topologies they generate")]
struct Cli {
    #[command(subcommand)]
    command: Cmd,
}

#[derive(Args)]
struct Io {
    /// Input document.
    file: PathBuf,
    /// Write the result back as a document.
    #[arg(long, value_name = "PATH")]
    emit: Option<PathBuf>,
}

#[derive(Clone, Copy, ValueEnum)]
enum Mode {
    Join,
    Plus,
    Path,
}

#[derive(Args)]
struct Checks {
    #[arg(long)]
    t0: bool,
    #[arg(long)]
    t1: bool,
    #[arg(long)]
    regular: bool,
    #[arg(long)]
    connected: bool,
    #[arg(long)]
    symmetric: bool,
    #[arg(long)]
    completely_regular: bool,
}

#[derive(Subcommand)]
enum Cmd {
    /// Complete distributivity and positives of a lattice.
    CheckLattice {
        #[command(flatten)]
        io: Io,
        #[arg(long)]
        name: Option<String>,
    },
    /// Value-quantale axioms of a lattice with addition.
    CheckQuantale {
        #[command(flatten)]
        io: Io,
        #[arg(long)]
        name: Option<String>,
    },
    /// The topology generated by a space's balls.
    GenTopology {
        #[command(flatten)]
        io: Io,
        #[arg(long)]
        space: Option<String>,
        /// Report the interior of a set, e.g. `--interior "a b d"`.
        #[arg(long, value_name = "POINTS")]
        interior: Option<String>,
        /// Report the ball of a radius around a point.
        #[arg(long, num_args = 2, value_names = ["RADIUS", "POINT"])]
        ball: Option<Vec<String>>,
    },
    /// The canonical distance of a topology, and whether it generates it back.
    Metrize {
        #[command(flatten)]
        io: Io,
        #[arg(long)]
        topology: Option<String>,
    },
    /// Metrize and regenerate a topology, or every topology on N points.
    Roundtrip {
        /// Input document; omit with `--all`.
        file: Option<PathBuf>,
        #[arg(long)]
        topology: Option<String>,
        #[arg(long, value_name = "N", conflicts_with_all = ["file", "topology"])]
        all: Option<usize>,
    },
    /// Product of spaces, checked against the product topology.
    Product {
        #[command(flatten)]
        io: Io,
        #[arg(long = "space", required = true)]
        spaces: Vec<String>,
    },
    /// Disjoint sum of spaces, checked against the sum topology.
    Sum {
        #[command(flatten)]
        io: Io,
        #[arg(long = "space", required = true)]
        spaces: Vec<String>,
    },
    /// Quotient of a space by an equivalence.
    Quotient {
        #[command(flatten)]
        io: Io,
        #[arg(long)]
        space: Option<String>,
        #[arg(long)]
        equiv: Option<String>,
    },
    /// Restriction of a space to some of its points.
    Subspace {
        #[command(flatten)]
        io: Io,
        #[arg(long)]
        space: Option<String>,
        #[arg(long, value_name = "POINTS")]
        points: String,
    },
    /// A symmetric distance built from a space.
    Symmetrize {
        #[command(flatten)]
        io: Io,
        #[arg(long)]
        space: Option<String>,
        #[arg(long, value_enum)]
        mode: Mode,
    },
    /// Separation, connectedness and symmetry of a space or a metrized topology.
    Check {
        #[command(flatten)]
        io: Io,
        #[arg(long, conflicts_with = "topology")]
        space: Option<String>,
        #[arg(long)]
        topology: Option<String>,
        #[command(flatten)]
        checks: Checks,
    },
    /// A continuous function separating a point from the complement of an open set.
    Separate {
        #[command(flatten)]
        io: Io,
        #[arg(long)]
        space: Option<String>,
        #[arg(long)]
        point: String,
        #[arg(long, value_name = "POINTS")]
        open: String,
    },
    /// Metrize a completely regular topology by its continuous functions.
    Gamma {
        #[command(flatten)]
        io: Io,
        #[arg(long)]
        topology: Option<String>,
        /// Use these functions instead of every separating grid function.
        #[arg(long)]
        functions: Option<String>,
    },
    /// Compare distance-based predicates with their topological definitions.
    OracleCompare {
        #[command(flatten)]
        io: Io,
        #[arg(long, conflicts_with = "topology")]
        space: Option<String>,
        #[arg(long)]
        topology: Option<String>,
    },
}

fn points(s: &str) -> Vec<String> {
    s.trim_matches(|c| c == '{' || c == '}')
        .split(|c: char| c.is_whitespace() || c == ',')
        .filter(|p| !p.is_empty())
        .map(str::to_string)
        .collect()
}

fn target(space: Option<String>, topology: Option<String>) -> Target {
    match topology {
        Some(t) => Target::Topology(t),
        None => Target::Space(space),
    }
}

fn translate(cmd: Cmd) -> (Command, Option<PathBuf>, Option<PathBuf>) {
    let with = |io: Io, c: Command| (c, Some(io.file), io.emit);
    match cmd {
        Cmd::CheckLattice { io, name } => with(io, Command::CheckLattice { name }),
        Cmd::CheckQuantale { io, name } => with(io, Command::CheckQuantale { name }),
        Cmd::GenTopology { io, space, interior, ball } => with(
            io,
            Command::GenTopology {
                space,
                interior: interior.as_deref().map(points),
                ball: ball.map(|b| (b[0].clone(), b[1].clone())),
            },
        ),
        Cmd::Metrize { io, topology } => with(io, Command::Metrize { topology }),
        Cmd::Roundtrip { file, topology, all } => (Command::Roundtrip { topology, all }, file, None),
        Cmd::Product { io, spaces } => with(io, Command::Product { spaces }),
        Cmd::Sum { io, spaces } => with(io, Command::Sum { spaces }),
        Cmd::Quotient { io, space, equiv } => with(io, Command::Quotient { space, equiv }),
        Cmd::Subspace { io, space, points: p } => with(io, Command::Subspace { space, points: points(&p) }),
        Cmd::Symmetrize { io, space, mode } => {
            let mode = match mode {
                Mode::Join => SymMode::Join,
                Mode::Plus => SymMode::Plus,
                Mode::Path => SymMode::Path,
            };
            with(io, Command::Symmetrize { space, mode })
        }
        Cmd::Check { io, space, topology, checks } => {
            let props = Props {
                t0: checks.t0,
                t1: checks.t1,
                regular: checks.regular,
                connected: checks.connected,
                symmetric: checks.symmetric,
                completely_regular: checks.completely_regular,
            };
            with(io, Command::Check { target: target(space, topology), props })
        }
        Cmd::Separate { io, space, point, open } => with(io, Command::Separate { space, point, open: points(&open) }),
        Cmd::Gamma { io, topology, functions } => with(io, Command::Gamma { topology, functions }),
        Cmd::OracleCompare { io, space, topology } => with(io, Command::OracleCompare { target: target(space, topology) }),
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let (command, file, emit) = translate(cli.command);
    let input = match &file {
        Some(path) => match std::fs::read_to_string(path) {
            Ok(text) => Some(text),
            Err(e) => {
                eprintln!("error: cannot read {}: {e}", path.display());
                return ExitCode::from(commands::INPUT_ERROR as u8);
            }
        },
        None => None,
    };
    let outcome = commands::run(&command, input.as_deref());
    if outcome.code == commands::INPUT_ERROR {
        eprint!("{}", outcome.report);
    } else {
        print!("{}", outcome.report);
    }
    if let (Some(path), Some(doc)) = (&emit, &outcome.emit) {
        if let Err(e) = std::fs::write(path, doc) {
            eprintln!("error: cannot write {}: {e}", path.display());
            return ExitCode::from(commands::INPUT_ERROR as u8);
        }
    }
    ExitCode::from(outcome.code as u8)
}
