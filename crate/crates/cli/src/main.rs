//! `rfsquid` command-line front end.
//!
//! Exit codes: 0 success, 1 usage error (flags, config file, units, missing
//! seed), 2 domain error (the simulation rejected the parameters, or output
//! could not be written).

// Flag values are read back through `ArgMatches` so they can be merged with
// the config file; the derive structs only define the interface.
#[allow(dead_code)]
mod args;
mod commands;
mod error;
mod output;
mod settings;
mod units;

use std::collections::BTreeMap;
use std::ffi::OsString;
use std::path::Path;

use clap::error::ErrorKind;
use clap::parser::ValueSource;
use clap::{ArgMatches, CommandFactory};

use crate::args::Cli;
use crate::error::CliError;
use crate::settings::Settings;

/// Every long-flag id of every subcommand: the keys a config file may use.
fn known_keys() -> Vec<String> {
    let mut keys: Vec<String> = Cli::command()
        .get_subcommands()
        .flat_map(|c| c.get_arguments().map(|a| a.get_id().to_string()).collect::<Vec<_>>())
        .filter(|k| k != "help" && k != "version")
        .collect();
    keys.sort();
    keys.dedup();
    keys
}

fn command_line_values(m: &ArgMatches) -> BTreeMap<String, String> {
    m.ids()
        .filter(|id| m.value_source(id.as_str()) == Some(ValueSource::CommandLine))
        .filter_map(|id| {
            let v = m.get_raw(id.as_str())?.next()?;
            Some((id.to_string(), v.to_string_lossy().into_owned()))
        })
        .collect()
}

fn run<I, T>(argv: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let matches = match Cli::command().try_get_matches_from(argv) {
        Ok(m) => m,
        Err(e) => {
            let _ = e.print();
            return match e.kind() {
                ErrorKind::DisplayHelp | ErrorKind::DisplayVersion => 0,
                _ => 1,
            };
        }
    };
    let Some((name, sub)) = matches.subcommand() else {
        eprintln!("rfsquid: a subcommand is required");
        return 1;
    };
    let result = (|| -> Result<(), CliError> {
        let flags = command_line_values(sub);
        let config = match flags.get("config") {
            Some(path) => Settings::load_config(Path::new(path), &known_keys())?,
            None => BTreeMap::new(),
        };
        log::debug!("{name}: flags {flags:?}, config {config:?}");
        commands::run(name, &Settings::new(flags, config))
    })();
    match result {
        Ok(()) => 0,
        Err(e) => {
            eprintln!("rfsquid: {e}");
            e.exit_code()
        }
    }
}

fn main() {
    env_logger::init();
    std::process::exit(run(std::env::args_os()));
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn interface_is_consistent() {
        Cli::command().debug_assert();
    }

    #[test]
    fn config_keys() {
        let k = known_keys();
        for key in ["seed", "li0", "ec_over_ej", "nx", "transit_time", "far_field", "sequential"] {
            assert!(k.contains(&key.to_string()), "{key}");
        }
        assert!(!k.contains(&"help".to_string()));
    }

    #[test]
    fn exit_codes() {
        assert_eq!(run(["rfsquid", "--help"]), 0);
        assert_eq!(run(["rfsquid", "bogus"]), 1);
        assert_eq!(run(["rfsquid", "detect", "--trials", "10"]), 1);
        assert_eq!(run(["rfsquid", "error-budget", "--beta", "0.9", "--out", "/dev/null"]), 2);
    }
}
