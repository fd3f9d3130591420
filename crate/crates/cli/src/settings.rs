//! Size guards and budgets. Precedence: flag, then config file, then the
//! `TURANPACK_GUARD_N` environment variable, then the built-in default.

use std::path::Path;

use turanpack::packing::{SearchConfig, DEFAULT_GUARD_N};
use turanpack::shifting::ResolveConfig;

use crate::error::CliError;

pub const GUARD_ENV: &str = "TURANPACK_GUARD_N";

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Settings {
    pub guard_n: usize,
    /// Shifting-phase rebuild budget; `None` means the engine default.
    pub budget: Option<usize>,
}

impl Default for Settings {
    fn default() -> Self {
        Self {
            guard_n: DEFAULT_GUARD_N,
            budget: None,
        }
    }
}

#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct Overrides {
    pub guard_n: Option<usize>,
    pub budget: Option<usize>,
}

fn parse_number(key: &str, raw: &str) -> Result<usize, CliError> {
    raw.trim()
        .parse()
        .map_err(|_| CliError::Input(format!("{key}: expected a non-negative integer, got {raw:?}")))
}

/// Parses `key = value` lines; `#` starts a comment.
pub fn parse_config(text: &str) -> Result<Overrides, CliError> {
    let mut out = Overrides::default();
    for (index, line) in text.lines().enumerate() {
        let line = line.split('#').next().unwrap_or("").trim();
        if line.is_empty() {
            continue;
        }
        let (key, value) = line
            .split_once('=')
            .ok_or_else(|| CliError::Input(format!("config line {}: expected key = value", index + 1)))?;
        match key.trim().replace('-', "_").as_str() {
            "guard_n" => out.guard_n = Some(parse_number("guard_n", value)?),
            "budget" => out.budget = Some(parse_number("budget", value)?),
            other => return Err(CliError::Input(format!("config line {}: unknown key {other:?}", index + 1))),
        }
    }
    Ok(out)
}

impl Settings {
    pub fn load(flags: &Overrides, config: Option<&Path>, env: Option<&str>) -> Result<Self, CliError> {
        let file = match config {
            Some(path) => parse_config(&std::fs::read_to_string(path)?)?,
            None => Overrides::default(),
        };
        let env_guard = env.map(|raw| parse_number(GUARD_ENV, raw)).transpose()?;
        Ok(Self {
            guard_n: flags
                .guard_n
                .or(file.guard_n)
                .or(env_guard)
                .unwrap_or(DEFAULT_GUARD_N),
            budget: flags.budget.or(file.budget),
        })
    }

    pub fn search(&self) -> SearchConfig {
        SearchConfig {
            guard_n: self.guard_n,
            ..SearchConfig::default()
        }
    }

    pub fn resolve(&self) -> ResolveConfig {
        ResolveConfig {
            budget: self.budget,
            search: self.search(),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn precedence() {
        let dir = std::env::temp_dir().join(format!("turanpack-settings-{}", std::process::id()));
        std::fs::write(&dir, "# guards\nguard-n = 40\nbudget=7\n").unwrap();
        let flags = Overrides { guard_n: Some(12), budget: None };
        let s = Settings::load(&flags, Some(&dir), Some("30")).unwrap();
        assert_eq!((s.guard_n, s.budget), (12, Some(7)));
        let s = Settings::load(&Overrides::default(), Some(&dir), Some("30")).unwrap();
        assert_eq!(s.guard_n, 40);
        let s = Settings::load(&Overrides::default(), None, Some("30")).unwrap();
        assert_eq!(s.guard_n, 30);
        assert_eq!(Settings::load(&Overrides::default(), None, None).unwrap(), Settings::default());
        std::fs::remove_file(dir).unwrap();
    }

    #[test]
    fn rejects_bad_lines() {
        assert!(parse_config("guard_n 5").is_err());
        assert!(parse_config("colour = 5").is_err());
        assert!(parse_config("budget = many").is_err());
    }
}
