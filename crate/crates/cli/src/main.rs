use std::io::Read;
use std::process::ExitCode;

use clap::{Parser, Subcommand};
use kundt_cli::commands::{self, Options, Outcome, EXIT_INPUT};

#[derive(Parser)]
#[command(name = "kundt", version, about = "Analyze null congruences and classify Kundt spaces")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(clap::Args)]
struct Flags {
    /// Seed for the randomized zero test.
    #[arg(long, default_value_t = 0)]
    seed: u64,
    /// Sampling interval for every coordinate, e.g. `--box=-1,1`.
    #[arg(long = "box", value_parser = parse_box, allow_hyphen_values = true)]
    sample_box: Option<(f64, f64)>,
    /// Emit a JSON report.
    #[arg(long)]
    json: bool,
}

#[derive(Subcommand)]
enum Command {
    /// Check whether a null field generates a Kundt congruence.
    Check {
        /// Metric file, or `-` for stdin.
        file: String,
        #[arg(long, default_value = "V")]
        field: String,
        #[command(flatten)]
        flags: Flags,
    },
    /// Place an adapted metric in the Kundt hierarchy.
    Classify {
        file: String,
        #[command(flatten)]
        flags: Flags,
    },
    /// Built-in example spaces.
    Catalog {
        #[command(subcommand)]
        action: CatalogAction,
    },
}

#[derive(Subcommand)]
enum CatalogAction {
    List {
        #[arg(long)]
        json: bool,
    },
    /// Print an entry as a metric file.
    Show {
        name: String,
        /// Parameter override `name=value`, repeatable.
        #[arg(long = "param", value_parser = parse_kv)]
        params: Vec<(String, String)>,
    },
    /// Analyze every entry and compare with its expectations.
    Run {
        #[command(flatten)]
        flags: Flags,
    },
}

fn parse_box(s: &str) -> Result<(f64, f64), String> {
    let (a, b) = s.split_once(',').ok_or("expected lo,hi")?;
    let lo: f64 = a.trim().parse().map_err(|_| format!("bad number '{}'", a))?;
    let hi: f64 = b.trim().parse().map_err(|_| format!("bad number '{}'", b))?;
    if lo.partial_cmp(&hi) != Some(std::cmp::Ordering::Less) {
        return Err("need lo < hi".into());
    }
    Ok((lo, hi))
}

fn parse_kv(s: &str) -> Result<(String, String), String> {
    let (k, v) = s.split_once('=').ok_or("expected name=value")?;
    Ok((k.trim().into(), v.trim().into()))
}

fn read_input(path: &str) -> std::io::Result<String> {
    if path == "-" {
        let mut s = String::new();
        std::io::stdin().read_to_string(&mut s)?;
        Ok(s)
    } else {
        std::fs::read_to_string(path)
    }
}

fn options(flags: Flags, field: String) -> Options {
    Options { seed: flags.seed, sample_box: flags.sample_box, json: flags.json, field }
}

fn with_file(path: &str, run: impl FnOnce(&str) -> Outcome) -> Outcome {
    match read_input(path) {
        Ok(text) => run(&text),
        Err(e) => Outcome { code: EXIT_INPUT, stdout: String::new(), stderr: format!("error: {}: {}\n", path, e) },
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let out = match cli.command {
        Command::Check { file, field, flags } => {
            let opts = options(flags, field);
            with_file(&file, |t| commands::check(t, &opts))
        }
        Command::Classify { file, flags } => {
            let opts = options(flags, "V".into());
            with_file(&file, |t| commands::classify(t, &opts))
        }
        Command::Catalog { action } => match action {
            CatalogAction::List { json } => commands::catalog_list(json),
            CatalogAction::Show { name, params } => commands::catalog_show(&name, &params),
            CatalogAction::Run { flags } => commands::catalog_run(&options(flags, "V".into())),
        },
    };
    print!("{}", out.stdout);
    eprint!("{}", out.stderr);
    ExitCode::from(out.code as u8)
}
