//! Command-line front end: single-point evaluations, sweeps, figure data
//! and a self-test, written as CSV or JSON Lines.

pub mod cli;
pub mod commands;
pub mod error;
pub mod figures;
pub mod parallel;
pub mod params;
pub mod selftest;
pub mod table;

use std::collections::BTreeMap;
use std::ffi::OsString;
use std::io::Write;
use std::path::PathBuf;

use clap::error::ErrorKind;
use clap::ArgMatches;

use crate::commands::{Axis, Scale};
use crate::error::{CliError, EXIT_CONFIG, EXIT_NUMERIC, EXIT_OK};
use crate::params::{Model, Params};
use crate::table::{Format, Table};

/// Runs the program and returns its exit code.
pub fn run<I, T>(args: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let matches = match cli::command().try_get_matches_from(args) {
        Ok(m) => m,
        Err(e) => {
            let _ = e.print();
            return match e.kind() {
                ErrorKind::DisplayHelp | ErrorKind::DisplayVersion => EXIT_OK,
                _ => EXIT_CONFIG,
            };
        }
    };
    match execute(&matches) {
        Ok(code) => code,
        Err(e) => {
            eprintln!("vacshift: {e}");
            EXIT_CONFIG
        }
    }
}

struct Output {
    path: Option<PathBuf>,
    format: Format,
}

impl Output {
    fn resolve(m: &ArgMatches, config: &BTreeMap<String, String>) -> Result<Self, CliError> {
        let format = match m.get_one::<String>("format").or_else(|| config.get("format")) {
            Some(f) => Format::parse(f).ok_or_else(|| CliError::config(format!("unknown format `{f}`")))?,
            None => Format::Csv,
        };
        let path = m
            .get_one::<String>("output")
            .or_else(|| config.get("output"))
            .map(PathBuf::from);
        Ok(Output { path, format })
    }

    fn emit(&self, table: &Table) -> Result<(), CliError> {
        let mut buf = Vec::new();
        table.write(&mut buf, self.format)?;
        match &self.path {
            Some(p) => std::fs::write(p, buf)?,
            None => {
                let stdout = std::io::stdout();
                let mut lock = stdout.lock();
                lock.write_all(&buf)?;
                lock.flush()?;
            }
        }
        Ok(())
    }
}

fn flags(model: Model, m: &ArgMatches) -> BTreeMap<&'static str, String> {
    model
        .keys()
        .iter()
        .filter_map(|k| m.get_one::<String>(k.name).map(|v| (k.name, v.clone())))
        .collect()
}

fn axis(model: Model, m: &ArgMatches, suffix: &str) -> Result<Option<Axis>, CliError> {
    let id = |base: &str| format!("{base}{suffix}");
    let Some(key) = m.get_one::<String>(&id("param")) else {
        return Ok(None);
    };
    let bound = |name: &str| {
        m.get_one::<f64>(&id(name))
            .copied()
            .ok_or_else(|| CliError::config(format!("--{} is required with --{}", id(name), id("param"))))
    };
    let scale = m.get_one::<String>(&id("scale")).map(String::as_str).unwrap_or("lin");
    let points = m.get_one::<usize>(&id("points")).copied().unwrap_or(11);
    Axis::new(
        model,
        key,
        bound("from")?,
        bound("to")?,
        points,
        Scale::parse(scale).unwrap_or(Scale::Linear),
    )
    .map(Some)
}

fn model_of(name: &str) -> Model {
    if name == "sphere" {
        Model::Sphere
    } else {
        Model::Plates
    }
}

fn execute(m: &ArgMatches) -> Result<i32, CliError> {
    let config = match m.get_one::<String>("config") {
        Some(p) => params::read_config(p.as_ref())?,
        None => BTreeMap::new(),
    };
    let jobs = parallel::resolve_jobs(m.get_one::<usize>("jobs").copied())?;
    let (name, sub) = m.subcommand().expect("a subcommand is required");
    let out = Output::resolve(sub, &config)?;

    let table = match name {
        "plates" | "sphere" => {
            let model = model_of(name);
            let p = Params::resolve(model, &config, &flags(model, sub))?;
            p.setup_check()?;
            commands::single(&p)
        }
        "sweep" => {
            let (model_name, sm) = sub.subcommand().expect("a sweep model is required");
            let model = model_of(model_name);
            let p = Params::resolve(model, &config, &flags(model, sm))?;
            let axes: Vec<Axis> = [axis(model, sm, "")?, axis(model, sm, "2")?].into_iter().flatten().collect();
            commands::sweep(&p, &axes, jobs)?
        }
        "figure" => {
            reject_config(&config)?;
            let fig = sub.get_one::<String>("name").expect("required");
            figures::figure(fig, jobs).ok_or_else(|| CliError::config(format!("unknown figure `{fig}`")))?
        }
        "selftest" => {
            reject_config(&config)?;
            let (t, ok) = selftest::selftest();
            out.emit(&t)?;
            eprintln!("selftest: {}", if ok { "PASS" } else { "FAIL" });
            return Ok(if ok { EXIT_OK } else { EXIT_NUMERIC });
        }
        other => return Err(CliError::config(format!("unknown command `{other}`"))),
    };
    out.emit(&table)?;
    let failed = table.failures();
    if failed > 0 {
        eprintln!("vacshift: {failed} of {} rows failed; see the error column", table.len());
        return Ok(EXIT_NUMERIC);
    }
    Ok(EXIT_OK)
}

/// Commands without physical parameters accept only output settings.
fn reject_config(config: &BTreeMap<String, String>) -> Result<(), CliError> {
    match config.keys().find(|k| !params::OUTPUT_KEYS.contains(&k.as_str())) {
        Some(k) => Err(CliError::config(format!("unknown config key `{k}` for this command"))),
        None => Ok(()),
    }
}
