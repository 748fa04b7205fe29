//! Command-line grammar.

use clap::{value_parser, Arg, Command};

use crate::figures::NAMES;
use crate::params::Model;

fn param_args(model: Model) -> Vec<Arg> {
    model
        .keys()
        .iter()
        .map(|k| {
            let help = match k.default {
                Some(d) => format!("{} [default: {d}]", k.help),
                None => k.help.to_string(),
            };
            Arg::new(k.name).long(k.name).value_name("VALUE").allow_negative_numbers(true).help(help)
        })
        .collect()
}

fn axis_args() -> Vec<Arg> {
    vec![
        Arg::new("param").long("param").required(true).help("parameter to sweep, e.g. d-nm"),
        Arg::new("from").long("from").allow_negative_numbers(true).required(true).value_parser(value_parser!(f64)),
        Arg::new("to").long("to").allow_negative_numbers(true).required(true).value_parser(value_parser!(f64)),
        Arg::new("points").long("points").default_value("11").value_parser(value_parser!(usize)),
        Arg::new("scale").long("scale").default_value("lin").value_parser(["lin", "log"]),
        Arg::new("param2").long("param2").help("optional second, faster-varying axis"),
        Arg::new("from2").long("from2").allow_negative_numbers(true).requires("param2").value_parser(value_parser!(f64)),
        Arg::new("to2").long("to2").allow_negative_numbers(true).requires("param2").value_parser(value_parser!(f64)),
        Arg::new("points2").long("points2").default_value("11").value_parser(value_parser!(usize)),
        Arg::new("scale2").long("scale2").default_value("lin").value_parser(["lin", "log"]),
    ]
}

pub fn command() -> Command {
    let sweep_model = |m: Model| {
        Command::new(m.name())
            .about(format!("sweep the {} setup over one or two parameters", m.name()))
            .args(param_args(m))
            .args(axis_args())
    };
    Command::new("vacshift")
        .version(env!("CARGO_PKG_VERSION"))
        .about("Ground-state vacuum shifts of a dipole in a cavity")
        .subcommand_required(true)
        .arg_required_else_help(true)
        .arg(
            Arg::new("config")
                .long("config")
                .short('c')
                .global(true)
                .value_name("FILE")
                .help("flat `key = value` file; flags override it"),
        )
        .arg(
            Arg::new("output")
                .long("output")
                .short('o')
                .global(true)
                .value_name("FILE")
                .help("write the table here instead of standard output"),
        )
        .arg(
            Arg::new("format")
                .long("format")
                .global(true)
                .value_parser(["csv", "jsonl"])
                .help("output format [default: csv]"),
        )
        .arg(
            Arg::new("jobs")
                .long("jobs")
                .short('j')
                .global(true)
                .value_parser(value_parser!(usize))
                .help("worker threads; 0 means one per core [env: VACSHIFT_JOBS]"),
        )
        .subcommand(
            Command::new("plates")
                .about("dipole between two plates closed by an LC resonator")
                .args(param_args(Model::Plates)),
        )
        .subcommand(
            Command::new("sphere")
                .about("dipole above a plasmonic nanosphere")
                .args(param_args(Model::Sphere)),
        )
        .subcommand(
            Command::new("sweep")
                .about("parameter sweep, one row per point")
                .subcommand_required(true)
                .subcommand(sweep_model(Model::Plates))
                .subcommand(sweep_model(Model::Sphere)),
        )
        .subcommand(
            Command::new("figure")
                .about("data behind a published figure")
                .arg(Arg::new("name").required(true).value_parser(NAMES.to_vec())),
        )
        .subcommand(Command::new("selftest").about("check the reference constants"))
        .disable_help_subcommand(true)
}
