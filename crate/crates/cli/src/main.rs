mod args;
mod cache;
mod commands;
mod render;

use std::io::Write;
use std::process::ExitCode;

use clap::Parser;
use serde::Serialize;

use args::{Cli, Command, Format};
use cache::Cache;
use commands::CliError;

/// Everything that determines the printed report.
#[derive(Serialize)]
struct Request<'a> {
    command: &'a Command,
    format: Format,
    audit: bool,
}

/// Whitespace in polynomial and action arguments does not change the request.
fn normalized(cmd: &Command) -> Command {
    let squeeze = |s: &str| s.chars().filter(|c| !c.is_whitespace()).collect::<String>();
    let mut cmd = cmd.clone();
    if let Command::Compute(c) = &mut cmd {
        c.f = squeeze(&c.f);
        for s in [&mut c.phi, &mut c.phi2, &mut c.action].into_iter().flatten() {
            *s = squeeze(s);
        }
    }
    cmd
}

fn run(cli: &Cli) -> Result<(String, i32), CliError> {
    let (report, code) = match &cli.command {
        Command::Compute(a) => commands::compute(a)?,
        Command::Verify(v) => commands::verify(v)?,
        Command::Classify(c) => commands::classify(c, cli.global.audit)?,
        Command::Brieskorn { a, b, c } => commands::brieskorn(*a, *b, *c)?,
        Command::Families(f) => commands::families(f)?,
    };
    Ok((report.render(cli.global.format), code))
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    if let Some(j) = cli.global.jobs {
        if let Err(e) = rayon::ThreadPoolBuilder::new().num_threads(j.max(1)).build_global() {
            eprintln!("warning: {e}");
        }
    }
    let cache = cli.global.cache_dir.as_deref().and_then(|d| match Cache::new(d) {
        Ok(c) => Some(c),
        Err(e) => {
            eprintln!("warning: cache disabled: {e}");
            None
        }
    });
    let cmd = normalized(&cli.command);
    let key = Cache::key(&Request { command: &cmd, format: cli.global.format, audit: cli.global.audit });

    let hit = cache.as_ref().and_then(|c| c.get(&key));
    let (stdout, code) = match hit {
        Some(e) => (e.stdout, e.exit_code),
        None => match run(&cli) {
            Ok((out, code)) => {
                if let Some(c) = &cache {
                    if let Err(e) = c.put(&key, code, &out) {
                        eprintln!("warning: cache write failed: {e}");
                    }
                }
                (out, code)
            }
            Err(e) => {
                eprintln!("error: {}", e.message);
                return ExitCode::from(e.code as u8);
            }
        },
    };
    let mut so = std::io::stdout().lock();
    let _ = so.write_all(stdout.as_bytes());
    let _ = so.flush();
    ExitCode::from(code as u8)
}
