//! `--config` files: one `key = value` per line, keys are long flag names
//! (underscores allowed), `#` starts a comment, boolean flags take true/false.

use std::ffi::OsString;
use std::fs;

use clap::CommandFactory;
use coulomb2d::Error;

use crate::args::Cli;

const ENERGY_KEYS: [&str; 2] = ["energy-ratio", "v-over-c"];

fn config_error(reason: String) -> Error {
    Error::InvalidParameter { name: "config", reason }
}

fn config_path<'a>(args: &[&'a str]) -> Option<&'a str> {
    args.iter().enumerate().find_map(|(n, a)| match a.strip_prefix("--config") {
        Some("") => args.get(n + 1).copied(),
        Some(rest) => rest.strip_prefix('='),
        None => None,
    })
}

fn given(args: &[&str], key: &str) -> bool {
    let flag = format!("--{key}");
    args.iter().any(|a| *a == flag || a.strip_prefix(&flag).is_some_and(|r| r.starts_with('=')))
}

/// Inserts the file's settings directly after the subcommand name, so that
/// any flag repeated on the command line overrides them.
pub fn expand(args: Vec<OsString>) -> Result<Vec<OsString>, Error> {
    let Some(strs) = args.iter().map(|a| a.to_str()).collect::<Option<Vec<&str>>>() else {
        return Ok(args);
    };
    let Some(path) = config_path(&strs) else {
        return Ok(args);
    };
    let cli = Cli::command();
    let Some(sub) = strs.get(1).and_then(|s| cli.find_subcommand(s)) else {
        return Ok(args);
    };
    let text = fs::read_to_string(path).map_err(|e| config_error(format!("cannot read {path}: {e}")))?;
    let user_energy = ENERGY_KEYS.iter().any(|k| given(&strs, k));

    let mut injected = Vec::new();
    for (n, raw) in text.lines().enumerate() {
        let line = raw.split('#').next().unwrap_or_default().trim();
        if line.is_empty() {
            continue;
        }
        let at = || format!("{path}:{}", n + 1);
        let (key, value) =
            line.split_once('=').ok_or_else(|| config_error(format!("{}: expected key = value", at())))?;
        let key = key.trim().replace('_', "-");
        let value = value.trim().trim_matches('"');
        if key == "config" {
            return Err(config_error(format!("{}: nested config files are not supported", at())));
        }
        let arg = sub
            .get_arguments()
            .find(|a| {
                a.get_long() == Some(key.as_str()) || a.get_all_aliases().is_some_and(|al| al.contains(&key.as_str()))
            })
            .ok_or_else(|| config_error(format!("{}: unknown key {key:?} for {}", at(), sub.get_name())))?;
        let long = arg.get_long().unwrap_or(&key);
        if user_energy && ENERGY_KEYS.contains(&long) {
            continue;
        }
        if arg.get_action().takes_values() {
            injected.push(format!("--{long}={value}"));
        } else {
            match value {
                "true" => injected.push(format!("--{long}")),
                "false" => {}
                other => return Err(config_error(format!("{}: {key} expects true or false, got {other:?}", at()))),
            }
        }
    }

    let mut out = Vec::with_capacity(args.len() + injected.len());
    out.extend(args[..2].iter().cloned());
    out.extend(injected.into_iter().map(OsString::from));
    out.extend(args[2..].iter().cloned());
    Ok(out)
}
