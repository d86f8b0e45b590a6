use clap::{Parser, Subcommand};

use pauli_puzzles_cli::commands::{
    cmd_angles, cmd_classify, cmd_enumerate, cmd_relations, cmd_render, cmd_ringset,
    cmd_validate, EnumerateArgs, GroupChoice,
};

/// Verify, enumerate, classify, and render Pauli ring puzzles.
#[derive(Parser)]
#[command(name = "pauli-puzzles", version)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Check the defining relations of the Pauli matrices in the matrix
    /// representation.
    Relations,
    /// Print the ring set of a group with marked involutions.
    Ringset {
        /// pauli, s3, or a group specification file.
        #[arg(long, default_value = "pauli")]
        group: String,
    },
    /// Print the kernel-word lengths, the angles, and the link graph data.
    Angles,
    /// Enumerate all puzzles on a region, optionally from a seed file.
    Enumerate {
        /// ball:R or torus:x1,y1,x2,y2.
        #[arg(long)]
        region: Option<String>,
        /// pauli, s3, or a group specification file.
        #[arg(long, default_value = "pauli")]
        group: String,
        /// Partial puzzle file to complete.
        #[arg(long)]
        seed: Option<String>,
        /// Stop after this many puzzles.
        #[arg(long)]
        limit: Option<usize>,
        /// Write one file per symmetry class into this directory.
        #[arg(long)]
        out: Option<String>,
    },
    /// Check a puzzle file against the two puzzle conditions.
    Validate {
        file: String,
        #[arg(long, default_value = "pauli")]
        group: String,
    },
    /// Classify a total puzzle: union of parallel T-strips or M-puzzle core.
    Classify { file: String },
    /// Render a puzzle file.
    Render {
        file: String,
        /// svg or ascii.
        #[arg(long, default_value = "svg")]
        format: String,
        /// Output path (stdout when omitted).
        #[arg(short, long)]
        output: Option<String>,
    },
}

fn main() {
    let cli = Cli::parse();
    let (text, code) = match cli.command {
        Command::Relations => cmd_relations(),
        Command::Ringset { group } => cmd_ringset(&GroupChoice::parse(&group)),
        Command::Angles => cmd_angles(),
        Command::Enumerate { region, group, seed, limit, out } => cmd_enumerate(&EnumerateArgs {
            region,
            group: GroupChoice::parse(&group),
            seed,
            limit,
            out_dir: out,
        }),
        Command::Validate { file, group } => cmd_validate(&file, &GroupChoice::parse(&group)),
        Command::Classify { file } => cmd_classify(&file),
        Command::Render { file, format, output } => {
            let (text, code) = cmd_render(&file, &format);
            if code == 0 {
                if let Some(path) = output {
                    if let Err(e) = std::fs::write(&path, &text) {
                        eprintln!("error=cannot write {path}: {e}");
                        std::process::exit(1);
                    }
                    std::process::exit(0);
                }
            }
            (text, code)
        }
    };
    print!("{text}");
    std::process::exit(code);
}
