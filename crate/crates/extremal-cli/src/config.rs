//! Flat `section.key = value` configuration with defaults, file values and flag overrides.

use std::collections::BTreeMap;
use std::str::FromStr;

use crate::error::CliError;

pub struct Key {
    pub name: &'static str,
    pub default: &'static str,
    pub help: &'static str,
}

const fn key(name: &'static str, default: &'static str, help: &'static str) -> Key {
    Key { name, default, help }
}

/// Keys shared by every subcommand, under the `run` prefix.
pub const RUN_KEYS: &[Key] = &[
    key("out", "", "output directory (default: $RESULTS_DIR/<subcommand> or results/<subcommand>)"),
    key("workers", "0", "worker threads; 0 uses the hardware parallelism"),
];

pub const SECTIONS: &[(&str, &str, &[Key])] = &[
    ("tail", "tail probability of a characteristic-polynomial statistic", &[
        key("kind", "unitary", "unitary, symplectic or orthogonal"),
        key("n", "50", "matrix dimension"),
        key("lambda", "0.3", "comma list of λ with log K = N^λ"),
        key("log_k", "", "comma list of log K; overrides lambda when set"),
        key("trials", "1000000", "number of matrices"),
        key("seed", "7", "root seed"),
        key("statistic", "at-point-zero", "max-over-theta, at-point-zero, im-log-at-zero or charpoly-at-one"),
    ]),
    ("maxens", "maximum of a statistic over M matrices, repeated", &[
        key("kind", "unitary", "unitary, symplectic or orthogonal"),
        key("n", "100", "matrix dimension"),
        key("m", "22026", "matrices per repeat"),
        key("repeats", "20", "independent repeats"),
        key("seed", "1", "root seed; repeat r uses a seed derived from it"),
        key("statistic", "max-over-theta", "statistic to maximize"),
    ]),
    ("primes", "random prime-phase model moments", &[
        key("x", "10000", "prime cutoff X"),
        key("trials", "100000", "samples"),
        key("seed", "1", "root seed"),
        key("keep_samples", "false", "also write every sample"),
    ]),
    ("zeros", "zeros of Z(t) up to a height", &[key("t_max", "1000", "largest ordinate")]),
    ("scan", "running maximum of |ζ(1/2+it)|", &[
        key("t0", "0", "start of the range"),
        key("t1", "100", "end of the range"),
        key("a", "0.5", "step constant A in the spacing A/log t1"),
        key("segments", "10", "nested ranges reported"),
        key("zeros", "", "zero table file (default: $ZERO_TABLE_PATH, else none)"),
    ]),
    ("hybrid", "ζ against P_X·Z_X on a grid of heights", &[
        key("t_start", "200", "first height"),
        key("t_end", "1000", "last height"),
        key("t_step", "100", "height step"),
        key("x", "10,20,40", "comma list of crossover values X"),
        key("window_tol", "1e-9", "per-term tolerance that sets the zero window"),
        key("n_constant", "", "c in the matched matrix size log t/(c log X); default e^γ"),
        key("zeros", "", "zero table file (default: $ZERO_TABLE_PATH, else computed)"),
    ]),
    ("stat", "samples of S(t)", &[
        key("t0", "10", "first height"),
        key("t1", "100", "last height"),
        key("step", "0.5", "sample spacing"),
        key("zeros", "", "zero table file (default: $ZERO_TABLE_PATH, else computed)"),
    ]),
    ("moments", "moment-conjecture and random-matrix moment tables", &[
        key("log_t", "1e6", "log T for the moment conjecture"),
        key("k", "0.5,1,2,3", "comma list of moment orders"),
        key("n", "10,20,50", "comma list of matrix dimensions"),
        key("s", "0.5,1,2", "comma list of MGF arguments"),
    ]),
    ("bounds", "upper and lower bounds for log max|ζ| from moments", &[
        key("log_t", "1e8", "log T"),
        key("constant", "1", "constant of the short-interval lemma"),
        key("model", "full", "full (with a(k)) or rmt (Barnes factor only)"),
    ]),
    ("saddle", "saddle point of the convolved tails", &[
        key("log_t", "1e8", "log T"),
        key("alpha", "0.1,0.25,0.4", "comma list of α in (0, 1/2)"),
        key("d", "0.7071067811865476", "comma list of d"),
    ]),
    ("family", "maximum of L(1/2, χ_d) over fundamental discriminants", &[
        key("d_max", "10000", "largest |d|"),
        key("dump", "false", "also write every value"),
    ]),
];

pub fn section(name: &str) -> Option<&'static [Key]> {
    SECTIONS.iter().find(|(n, _, _)| *n == name).map(|(_, _, k)| *k)
}

fn known(full: &str) -> bool {
    match full.split_once('.') {
        Some(("run", k)) => RUN_KEYS.iter().any(|x| x.name == k),
        Some((s, k)) => section(s).is_some_and(|keys| keys.iter().any(|x| x.name == k)),
        None => false,
    }
}

#[derive(Debug, Clone, PartialEq)]
pub enum Origin {
    Default,
    File(usize),
    Flag,
}

#[derive(Debug, Clone)]
pub struct Settings {
    values: BTreeMap<String, (String, Origin)>,
}

/// Parses `section.key = value` lines; '#' starts a comment line.
pub fn parse_config_text(text: &str) -> Result<BTreeMap<String, (String, usize)>, CliError> {
    let mut out = BTreeMap::new();
    for (idx, raw) in text.lines().enumerate() {
        let line = raw.trim();
        let lineno = idx + 1;
        if line.is_empty() || line.starts_with('#') {
            continue;
        }
        let Some((k, v)) = line.split_once('=') else {
            return Err(CliError::Config(format!("line {lineno}: expected key=value, got {line:?}")));
        };
        let k = k.trim();
        if !known(k) {
            return Err(CliError::Config(format!("line {lineno}: unknown key '{k}'")));
        }
        out.insert(k.to_string(), (v.trim().to_string(), lineno));
    }
    Ok(out)
}

impl Settings {
    /// Defaults for `sub` and `run`, then file values, then flag overrides.
    pub fn resolve(
        sub: &str,
        file: &BTreeMap<String, (String, usize)>,
        flags: &[(String, String)],
    ) -> Result<Self, CliError> {
        let keys = section(sub).ok_or_else(|| CliError::Config(format!("unknown subcommand '{sub}'")))?;
        let mut values = BTreeMap::new();
        for k in keys {
            values.insert(format!("{sub}.{}", k.name), (k.default.to_string(), Origin::Default));
        }
        for k in RUN_KEYS {
            values.insert(format!("run.{}", k.name), (k.default.to_string(), Origin::Default));
        }
        for (k, (v, line)) in file {
            if values.contains_key(k) {
                values.insert(k.clone(), (v.clone(), Origin::File(*line)));
            }
        }
        for (k, v) in flags {
            if !values.contains_key(k) {
                return Err(CliError::Config(format!("unknown key '{k}'")));
            }
            values.insert(k.clone(), (v.clone(), Origin::Flag));
        }
        Ok(Self { values })
    }

    pub fn raw(&self, key: &str) -> &str {
        self.values.get(key).map(|(v, _)| v.as_str()).unwrap_or("")
    }

    fn bad(&self, key: &str, msg: impl std::fmt::Display) -> CliError {
        let place = match self.values.get(key).map(|(_, o)| o) {
            Some(Origin::File(line)) => format!(" (config line {line})"),
            Some(Origin::Flag) => " (command line)".to_string(),
            _ => String::new(),
        };
        CliError::Config(format!("key '{key}'{place}: {msg}"))
    }

    pub fn get<T: FromStr>(&self, key: &str) -> Result<T, CliError>
    where
        T::Err: std::fmt::Display,
    {
        let raw = self.raw(key);
        parse_value(raw).map_err(|e| self.bad(key, format!("cannot parse {raw:?}: {e}")))
    }

    pub fn list<T: FromStr>(&self, key: &str) -> Result<Vec<T>, CliError>
    where
        T::Err: std::fmt::Display,
    {
        let raw = self.raw(key);
        if raw.trim().is_empty() {
            return Ok(Vec::new());
        }
        raw.split(',')
            .map(|p| parse_value(p.trim()).map_err(|e| self.bad(key, format!("cannot parse {p:?}: {e}"))))
            .collect()
    }

    /// Integer keys also accept scientific notation such as 1e6.
    pub fn count(&self, key: &str) -> Result<u64, CliError> {
        let raw = self.raw(key);
        if let Ok(v) = raw.parse::<u64>() {
            return Ok(v);
        }
        match raw.parse::<f64>() {
            Ok(f) if f >= 0.0 && f.fract() == 0.0 && f < 1.8e19 => Ok(f as u64),
            _ => Err(self.bad(key, format!("expected a nonnegative integer, got {raw:?}"))),
        }
    }

    /// Resolved `key=value` pairs in key order.
    pub fn snapshot(&self) -> BTreeMap<String, String> {
        self.values.iter().map(|(k, (v, _))| (k.clone(), v.clone())).collect()
    }
}

fn parse_value<T: FromStr>(raw: &str) -> Result<T, T::Err> {
    raw.trim().parse()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn file_then_flags() {
        let file = parse_config_text("# comment\ntail.n = 60\ntail.seed=3\nrun.workers=2\n").unwrap();
        let s = Settings::resolve("tail", &file, &[("tail.seed".into(), "9".into())]).unwrap();
        assert_eq!(s.get::<usize>("tail.n").unwrap(), 60);
        assert_eq!(s.get::<u64>("tail.seed").unwrap(), 9);
        assert_eq!(s.get::<usize>("run.workers").unwrap(), 2);
        assert_eq!(s.raw("tail.kind"), "unitary");
    }

    #[test]
    fn unknown_key_names_line() {
        let err = parse_config_text("tail.n=5\ntail.bogus=1\n").unwrap_err().to_string();
        assert!(err.contains("line 2") && err.contains("tail.bogus"), "{err}");
        assert!(parse_config_text("nodot=1").is_err());
        assert!(parse_config_text("tail.n").is_err());
    }

    #[test]
    fn bad_value_names_key_and_line() {
        let file = parse_config_text("\ntail.n = many\n").unwrap();
        let s = Settings::resolve("tail", &file, &[]).unwrap();
        let err = s.get::<usize>("tail.n").unwrap_err().to_string();
        assert!(err.contains("tail.n") && err.contains("line 2"), "{err}");
    }

    #[test]
    fn counts_accept_scientific() {
        let s = Settings::resolve("tail", &BTreeMap::new(), &[("tail.trials".into(), "1e6".into())]).unwrap();
        assert_eq!(s.count("tail.trials").unwrap(), 1_000_000);
        let s = Settings::resolve("tail", &BTreeMap::new(), &[("tail.trials".into(), "1.5".into())]).unwrap();
        assert!(s.count("tail.trials").is_err());
    }

    #[test]
    fn every_section_default_parses_keys() {
        for (name, _, keys) in SECTIONS {
            for k in *keys {
                assert!(known(&format!("{name}.{}", k.name)));
            }
        }
    }
}
