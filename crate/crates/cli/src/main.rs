use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};

use hopfsieve_cli::{
    parse_focus, parse_group, parse_pin, run, CommandKind, Format, RunConfig, UsageError, EXIT_FAILURE, EXIT_USAGE,
    OUTPUT_DIR_ENV,
};
use hopfsieve_core::fusion::DEFAULT_BUDGET;

/// Type enumeration and character-ring elimination for semisimple Hopf
/// algebras of dimension p^2 q^2.
#[derive(Parser)]
#[command(name = "hopfsieve", version)]
struct Cli {
    #[command(flatten)]
    global: Global,
    #[command(subcommand)]
    command: Command,
}

#[derive(Args)]
struct Global {
    /// Report format.
    #[arg(long, value_enum, default_value = "json", global = true)]
    format: FormatArg,
    /// Node budget per fusion search.
    #[arg(long, default_value_t = DEFAULT_BUDGET, global = true)]
    budget: u64,
    /// Report path; defaults to $HOPFSIEVE_OUTPUT_DIR/<command>.<ext>, else stdout.
    #[arg(long, global = true)]
    output: Option<PathBuf>,
    /// Leave wall times out of the report.
    #[arg(long, global = true)]
    no_timings: bool,
}

#[derive(Clone, Copy, ValueEnum)]
enum FormatArg {
    Json,
    Markdown,
}

#[derive(Subcommand)]
enum Command {
    /// List the solutions of the dimension equation for one group-like order.
    Enumerate {
        #[arg(long)]
        p: u64,
        #[arg(long)]
        q: u64,
        /// Order of the group of group-likes of the dual.
        #[arg(long)]
        g: u64,
        /// Pin a count: a (degree p), b (degree p^2) or c (degree q), as `a=0`.
        #[arg(long)]
        pin: Vec<String>,
    },
    /// Search for a consistent character table of one algebra type.
    Eliminate {
        /// Algebra type such as (1,2;4,3;5,2).
        #[arg(long = "type")]
        ty: String,
        /// Expected dimension, checked against the type.
        #[arg(long)]
        dim: Option<u64>,
        /// Abelian group class of the group-likes, as `2x2`, or `all`.
        #[arg(long, default_value = "all")]
        group: String,
        /// Products to decompose fully, as `4,4;4,5`.
        #[arg(long)]
        focus: Option<String>,
    },
    /// Give one verdict per possible group-like order.
    Classify {
        #[arg(long)]
        p: u64,
        #[arg(long)]
        q: u64,
    },
    /// Run the full reproduction suite.
    VerifyPaper,
}

fn config(cli: Cli) -> Result<RunConfig, UsageError> {
    let kind = match &cli.command {
        Command::Enumerate { .. } => CommandKind::Enumerate,
        Command::Eliminate { .. } => CommandKind::Eliminate,
        Command::Classify { .. } => CommandKind::Classify,
        Command::VerifyPaper => CommandKind::VerifyPaper,
    };
    let mut c = RunConfig::new(kind);
    c.format = match cli.global.format {
        FormatArg::Json => Format::Json,
        FormatArg::Markdown => Format::Markdown,
    };
    c.budget = cli.global.budget;
    c.output = cli.global.output;
    c.timings = !cli.global.no_timings;
    match cli.command {
        Command::Enumerate { p, q, g, pin } => {
            c.p = Some(p);
            c.q = Some(q);
            c.g_order = Some(g);
            for s in pin {
                let (k, n) = parse_pin(&s)?;
                c.pins.insert(k, n);
            }
        }
        Command::Eliminate { ty, dim, group, focus } => {
            c.type_string = Some(ty);
            c.dim = dim;
            c.group = parse_group(&group)?;
            c.focus = focus.as_deref().map(parse_focus).transpose()?;
        }
        Command::Classify { p, q } => {
            c.p = Some(p);
            c.q = Some(q);
        }
        Command::VerifyPaper => {}
    }
    Ok(c)
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let c = match config(cli) {
        Ok(c) => c,
        Err(e) => {
            eprintln!("hopfsieve: {e}");
            return ExitCode::from(EXIT_USAGE as u8);
        }
    };
    let report = match run(&c) {
        Ok(r) => r,
        Err(e) => {
            eprintln!("hopfsieve: {e}");
            return ExitCode::from(EXIT_USAGE as u8);
        }
    };
    let text = match c.format {
        Format::Json => report.to_json(),
        Format::Markdown => report.to_markdown(),
    };
    let path = c.output.clone().or_else(|| {
        std::env::var_os(OUTPUT_DIR_ENV).map(|d| PathBuf::from(d).join(format!("{}.{}", c.command, c.format.extension())))
    });
    match path {
        Some(path) => {
            if let Err(e) = std::fs::write(&path, text) {
                eprintln!("hopfsieve: cannot write {}: {e}", path.display());
                return ExitCode::from(EXIT_FAILURE as u8);
            }
        }
        None => print!("{text}"),
    }
    ExitCode::from(report.exit_code() as u8)
}
