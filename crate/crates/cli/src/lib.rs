//! Command-line front end: load a group spec, inspect its cohomology,
//! enumerate packets, evaluate transfer factors, and run the property suite.

pub mod commands;
pub mod render;
pub mod spec;
pub mod verify;

use std::path::PathBuf;

use clap::{Args, Parser, Subcommand};
use endo_core::{Error, Result};

use crate::spec::parse_vector_arg;

#[derive(Parser, Debug)]
#[command(name = "endo", about = "Combinatorics of real endoscopic transfer")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Cmd,
}

#[derive(Args, Debug, Default)]
pub struct CommonArgs {
    /// Group spec file (JSON). `verify` runs on the whole fixture
    /// directory when omitted.
    #[arg(long)]
    pub spec: Option<PathBuf>,
    /// Inner form name from the spec file.
    #[arg(long)]
    pub form: Option<String>,
    /// Parameter name from the spec file.
    #[arg(long)]
    pub param: Option<String>,
    /// Semisimple invariant as comma-separated rationals, e.g. "1/2,0".
    #[arg(long)]
    pub s: Option<String>,
    /// Emit JSON instead of text.
    #[arg(long)]
    pub json: bool,
}

#[derive(Subcommand, Debug)]
pub enum Cmd {
    /// Validate a spec file and classify its parameters.
    Check(CommonArgs),
    /// Tate cohomology of the fundamental torus and the form's invariants.
    Cohomology(CommonArgs),
    /// Enumerate the packet of a parameter on an inner form.
    Packet(CommonArgs),
    /// Endoscopic datum, related pair, and transfer factors for an invariant.
    Transfer(CommonArgs),
    /// Run the property suite over one spec file or the fixture directory.
    Verify(CommonArgs),
}

fn load(args: &CommonArgs) -> Result<endo_core::Fixture> {
    let path = args
        .spec
        .as_ref()
        .ok_or_else(|| Error::validation("--spec is required"))?;
    spec::load_spec(path).map(|(_, f)| f)
}

fn fixture_dir() -> PathBuf {
    std::env::var_os("ENDO_FIXTURES")
        .map(PathBuf::from)
        .unwrap_or_else(|| PathBuf::from("fixtures"))
}

fn verify_all() -> Result<String> {
    let dir = fixture_dir();
    let mut paths: Vec<PathBuf> = std::fs::read_dir(&dir)
        .map_err(|e| Error::parse(format!("cannot read {}: {e}", dir.display())))?
        .filter_map(|e| e.ok().map(|e| e.path()))
        .filter(|p| p.extension().is_some_and(|x| x == "json"))
        .collect();
    paths.sort();
    if paths.is_empty() {
        return Err(Error::validation(format!(
            "no spec files in {}",
            dir.display()
        )));
    }
    let mut out = String::new();
    for p in paths {
        let (_, f) = spec::load_spec(&p)?;
        out.push_str(&verify::verify_fixture(&f)?);
        out.push('\n');
    }
    Ok(out)
}

pub fn run(cli: &Cli) -> Result<String> {
    match &cli.command {
        Cmd::Check(args) => commands::check(&load(args)?),
        Cmd::Cohomology(args) => commands::cohomology(&load(args)?, args.form.as_deref()),
        Cmd::Packet(args) => {
            let fixture = load(args)?;
            let s = args.s.as_deref().map(parse_vector_arg).transpose()?;
            let out = commands::packet_output(&fixture, &args.form, &args.param, &s)?;
            if args.json {
                commands::to_json(&out)
            } else {
                Ok(commands::packet_text(&out))
            }
        }
        Cmd::Transfer(args) => {
            let fixture = load(args)?;
            let s = args.s.as_deref().map(parse_vector_arg).transpose()?;
            let out = commands::transfer_output(&fixture, &args.form, &args.param, &s)?;
            if args.json {
                commands::to_json(&out)
            } else {
                Ok(commands::transfer_text(&out))
            }
        }
        Cmd::Verify(args) => match &args.spec {
            Some(_) => {
                let f = load(args)?;
                verify::verify_fixture(&f).map(|line| format!("{line}\n"))
            }
            None => verify_all(),
        },
    }
}

/// Process exit code for an error: parse errors are 2, rejected input is 3,
/// broken invariants are 4.
pub fn exit_code(e: &Error) -> i32 {
    match e {
        Error::Parse(_) => 2,
        Error::Validation(_) => 3,
        Error::Internal(_) => 4,
    }
}
