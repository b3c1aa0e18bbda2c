//! Command-line experiment runner. Every subcommand resolves a flat
//! configuration, runs inside its own worker pool and leaves CSV/JSON/SVG
//! artifacts plus a `manifest.json` in one output directory.

pub mod commands;
pub mod config;
pub mod error;
pub mod output;

use std::collections::BTreeMap;
use std::ffi::OsString;
use std::path::PathBuf;

use clap::{Arg, ArgAction, Command};

use config::{parse_config_text, Settings, RUN_KEYS, SECTIONS};
use output::{config_hash, now_stamp, Artifacts, RunManifest, MANIFEST_NAME};

pub use error::CliError;

pub const RESULTS_ENV: &str = "RESULTS_DIR";

fn flag_name(key: &str) -> String {
    key.replace('_', "-")
}

fn build_cli() -> Command {
    let mut cmd = Command::new("extremal")
        .version(env!("CARGO_PKG_VERSION"))
        .about("Extreme values of zeta and L-functions: random-matrix and numerical experiments")
        .subcommand_required(true)
        .arg_required_else_help(true);
    for (name, about, keys) in SECTIONS {
        let mut sub = Command::new(*name).about(*about).arg(
            Arg::new("config")
                .long("config")
                .value_name("FILE")
                .help("flat section.key=value file; flags override it"),
        );
        for k in RUN_KEYS.iter().chain(keys.iter()) {
            let help = if k.default.is_empty() {
                k.help.to_string()
            } else {
                format!("{} [default: {}]", k.help, k.default)
            };
            sub = sub.arg(Arg::new(k.name).long(flag_name(k.name)).value_name("VALUE").help(help).action(ArgAction::Set));
        }
        cmd = cmd.subcommand(sub);
    }
    cmd
}

/// Parses `args` (program name first), runs the subcommand and returns its manifest.
pub fn run<I, T>(args: I) -> Result<RunManifest, CliError>
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let matches = build_cli().try_get_matches_from(args)?;
    let (sub, m) = matches.subcommand().expect("subcommand required");
    let keys = config::section(sub).expect("registered subcommand");

    let file = match m.get_one::<String>("config") {
        Some(path) => {
            let text = std::fs::read_to_string(path)
                .map_err(|e| CliError::Config(format!("cannot read config file {path}: {e}")))?;
            parse_config_text(&text).map_err(|e| match e {
                CliError::Config(msg) => CliError::Config(format!("{path}: {msg}")),
                other => other,
            })?
        }
        None => BTreeMap::new(),
    };
    let mut flags = Vec::new();
    for k in RUN_KEYS {
        if let Some(v) = m.get_one::<String>(k.name) {
            flags.push((format!("run.{}", k.name), v.clone()));
        }
    }
    for k in keys {
        if let Some(v) = m.get_one::<String>(k.name) {
            flags.push((format!("{sub}.{}", k.name), v.clone()));
        }
    }
    let settings = Settings::resolve(sub, &file, &flags)?;
    run_settings(sub, &settings)
}

/// Runs an already-resolved configuration.
pub fn run_settings(sub: &str, settings: &Settings) -> Result<RunManifest, CliError> {
    let out_dir = match settings.raw("run.out").trim() {
        "" => match std::env::var_os(RESULTS_ENV).filter(|v| !v.is_empty()) {
            Some(root) => PathBuf::from(root).join(sub),
            None => PathBuf::from("results").join(sub),
        },
        dir => PathBuf::from(dir),
    };
    let workers: usize = settings.get("run.workers")?;
    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(workers)
        .build()
        .map_err(|e| CliError::Config(format!("key 'run.workers': {e}")))?;

    let started = now_stamp();
    let mut artifacts = Artifacts::create(&out_dir)?;
    pool.install(|| dispatch(sub, settings, &mut artifacts))?;

    let snapshot = settings.snapshot();
    let root_seed = match settings.raw(&format!("{sub}.seed")) {
        "" => None,
        _ => Some(settings.get(&format!("{sub}.seed"))?),
    };
    let manifest = RunManifest {
        subcommand: sub.to_string(),
        config_hash: config_hash(&snapshot),
        config: snapshot,
        root_seed,
        tool_version: env!("CARGO_PKG_VERSION").to_string(),
        started,
        finished: now_stamp(),
        outputs: artifacts.files().to_vec(),
    };
    let mut text = serde_json::to_string_pretty(&manifest)?;
    text.push('\n');
    std::fs::write(artifacts.dir().join(MANIFEST_NAME), text)?;
    Ok(manifest)
}

fn dispatch(sub: &str, cfg: &Settings, out: &mut Artifacts) -> Result<(), CliError> {
    match sub {
        "tail" => commands::tail(cfg, out),
        "maxens" => commands::maxens(cfg, out),
        "primes" => commands::primes(cfg, out),
        "zeros" => commands::zeros(cfg, out),
        "scan" => commands::scan(cfg, out),
        "hybrid" => commands::hybrid(cfg, out),
        "stat" => commands::stat(cfg, out),
        "moments" => commands::moments(cfg, out),
        "bounds" => commands::bounds(cfg, out),
        "saddle" => commands::saddle(cfg, out),
        "family" => commands::family(cfg, out),
        other => Err(CliError::Config(format!("unknown subcommand '{other}'"))),
    }
}
