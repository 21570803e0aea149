use std::io::Write;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, ValueEnum};
use satake_cli::{execute, Command, Format, Options, Source};

#[derive(Clone, Copy, Debug, ValueEnum)]
enum CommandArg {
    Validate,
    Kottwitz,
    Compact,
    Cocycle,
    Classify,
    Equal,
    Fold,
    VerifyKs,
    Modulus,
    Orbits,
}

impl From<CommandArg> for Command {
    fn from(c: CommandArg) -> Self {
        match c {
            CommandArg::Validate => Command::Validate,
            CommandArg::Kottwitz => Command::Kottwitz,
            CommandArg::Compact => Command::Compact,
            CommandArg::Cocycle => Command::Cocycle,
            CommandArg::Classify => Command::Classify,
            CommandArg::Equal => Command::Equal,
            CommandArg::Fold => Command::Fold,
            CommandArg::VerifyKs => Command::VerifyKs,
            CommandArg::Modulus => Command::Modulus,
            CommandArg::Orbits => Command::Orbits,
        }
    }
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum FormatArg {
    Text,
    Json,
}

/// Kottwitz groups, Satake parameter classes and folding checks for tamely
/// ramified quasi-split groups.
#[derive(Parser, Debug)]
#[command(name = "satake", version)]
struct Cli {
    command: CommandArg,
    /// Group description file.
    #[arg(long, conflicts_with = "preset", required_unless_present = "preset")]
    config: Option<PathBuf>,
    /// Preset id, e.g. "split SL2 q=5" or "ramified A3 sc".
    #[arg(long)]
    preset: Option<String>,
    /// Residue field order; overrides the config.
    #[arg(long)]
    q: Option<u64>,
    /// `orbits`: enumerate parameters with values in the n-th roots of unity.
    #[arg(long)]
    torsion: Option<u64>,
    #[arg(long, value_enum, default_value = "text")]
    format: FormatArg,
    /// Cap on enumerated Weyl group elements and characters.
    #[arg(long)]
    max_orbit: Option<usize>,
    /// `classify`, `equal`: values on the generators of T/T0, "(a, b); …" or "i=(a, b); …".
    #[arg(long, allow_hyphen_values = true)]
    character: Option<String>,
    /// `equal`: the second parameter.
    #[arg(long, allow_hyphen_values = true)]
    other: Option<String>,
    /// `cocycle`: value "(a, b)" at the positive generator.
    #[arg(long, allow_hyphen_values = true)]
    value: Option<String>,
    /// `modulus`: coordinates of an element of T/T0.
    #[arg(long, allow_hyphen_values = true)]
    element: Option<String>,
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { 1 } else { 0 };
            let _ = e.print();
            return ExitCode::from(code);
        }
    };
    let source = match (cli.config, cli.preset) {
        (Some(p), _) => Source::File(p),
        (None, Some(p)) => Source::Preset(p),
        (None, None) => unreachable!("clap requires a source"),
    };
    let options = Options {
        source,
        q: cli.q,
        torsion: cli.torsion,
        format: match cli.format {
            FormatArg::Text => Format::Text,
            FormatArg::Json => Format::Json,
        },
        max_orbit: cli.max_orbit,
        character: cli.character,
        other: cli.other,
        value: cli.value,
        element: cli.element,
    };
    let out = execute(cli.command.into(), &options);
    let _ = std::io::stdout().write_all(out.stdout.as_bytes());
    let _ = std::io::stderr().write_all(out.stderr.as_bytes());
    ExitCode::from(out.code as u8)
}
