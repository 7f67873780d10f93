//! Library side of the `hopfsieve` command: run configuration, the four
//! commands, report rendering and the reproduction suite.

pub mod commands;
pub mod criteria;
pub mod report;

use std::collections::BTreeMap;
use std::fmt;
use std::path::PathBuf;

use serde::{Deserialize, Serialize};

use hopfsieve_core::fusion::DEFAULT_BUDGET;
use hopfsieve_core::AlgebraType;

pub use commands::{cmd_classify, cmd_eliminate, cmd_enumerate, cmd_verify_paper, run};
pub use report::Report;

/// Environment variable naming the directory reports are written to when
/// no `--output` is given.
pub const OUTPUT_DIR_ENV: &str = "HOPFSIEVE_OUTPUT_DIR";

pub const EXIT_OK: i32 = 0;
pub const EXIT_FAILURE: i32 = 1;
pub const EXIT_USAGE: i32 = 2;
pub const EXIT_EXHAUSTED: i32 = 3;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Format {
    Json,
    Markdown,
}

impl Format {
    pub fn extension(self) -> &'static str {
        match self {
            Format::Json => "json",
            Format::Markdown => "md",
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum CommandKind {
    Enumerate,
    Eliminate,
    Classify,
    VerifyPaper,
}

impl fmt::Display for CommandKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            CommandKind::Enumerate => "enumerate",
            CommandKind::Eliminate => "eliminate",
            CommandKind::Classify => "classify",
            CommandKind::VerifyPaper => "verify-paper",
        })
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct RunConfig {
    pub command: CommandKind,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub p: Option<u64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub q: Option<u64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub g_order: Option<u64>,
    #[serde(default, rename = "type", skip_serializing_if = "Option::is_none")]
    pub type_string: Option<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub dim: Option<u64>,
    /// Pinned counts by letter: `a` (degree p), `b` (p^2), `c` (q).
    #[serde(default, skip_serializing_if = "BTreeMap::is_empty")]
    pub pins: BTreeMap<String, u64>,
    pub format: Format,
    pub budget: u64,
    /// Abelian group class as cyclic factors; `None` searches every class.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub group: Option<Vec<u64>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub focus: Option<Vec<(usize, usize)>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub output: Option<PathBuf>,
    pub timings: bool,
}

impl RunConfig {
    pub fn new(command: CommandKind) -> Self {
        RunConfig {
            command,
            p: None,
            q: None,
            g_order: None,
            type_string: None,
            dim: None,
            pins: BTreeMap::new(),
            format: Format::Json,
            budget: DEFAULT_BUDGET,
            group: None,
            focus: None,
            output: None,
            timings: true,
        }
    }

    /// Checks everything that can be checked before computing.
    pub fn validate(&self) -> Result<(), UsageError> {
        if self.budget < 1 {
            return Err(UsageError("budget must be at least 1".into()));
        }
        let need = |v: Option<u64>, name: &str| v.map(|_| ()).ok_or_else(|| UsageError(format!("--{name} is required")));
        match self.command {
            CommandKind::Enumerate => {
                need(self.p, "p")?;
                need(self.q, "q")?;
                need(self.g_order, "g")?;
                for k in self.pins.keys() {
                    if !matches!(k.as_str(), "a" | "b" | "c") {
                        return Err(UsageError(format!("unknown pin `{k}`; use a, b or c")));
                    }
                }
            }
            CommandKind::Eliminate => {
                self.algebra_type()?;
            }
            CommandKind::Classify => {
                need(self.p, "p")?;
                need(self.q, "q")?;
            }
            CommandKind::VerifyPaper => {}
        }
        Ok(())
    }

    pub fn algebra_type(&self) -> Result<AlgebraType, UsageError> {
        let s = self.type_string.as_deref().ok_or_else(|| UsageError("--type is required".into()))?;
        AlgebraType::parse(s, self.dim).map_err(|e| UsageError(format!("invalid type {s}: {e}")))
    }
}

/// A bad invocation; reported on stderr with exit status 2.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct UsageError(pub String);

impl fmt::Display for UsageError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.0)
    }
}

impl std::error::Error for UsageError {}

/// Parses `a=0`.
pub fn parse_pin(s: &str) -> Result<(String, u64), UsageError> {
    let (k, v) = s.split_once('=').ok_or_else(|| UsageError(format!("pin `{s}` is not of the form a=N")))?;
    let n = v.parse().map_err(|_| UsageError(format!("pin `{s}` has a bad count")))?;
    Ok((k.to_string(), n))
}

/// Parses `all`, `4`, `2x2` or `Z2xZ2`.
pub fn parse_group(s: &str) -> Result<Option<Vec<u64>>, UsageError> {
    if s == "all" {
        return Ok(None);
    }
    s.split('x')
        .map(|f| f.trim_start_matches('Z').parse::<u64>().ok().filter(|&n| n >= 2))
        .collect::<Option<Vec<u64>>>()
        .map(Some)
        .ok_or_else(|| UsageError(format!("group `{s}` is not `all` or a list like 2x2")))
}

/// Parses `4,4;4,5`.
pub fn parse_focus(s: &str) -> Result<Vec<(usize, usize)>, UsageError> {
    s.split(';')
        .map(|pair| {
            let (a, b) = pair.split_once(',')?;
            Some((a.trim().parse().ok()?, b.trim().parse().ok()?))
        })
        .collect::<Option<Vec<_>>>()
        .ok_or_else(|| UsageError(format!("focus `{s}` is not a list like 4,4;4,5")))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn flag_parsers() {
        assert_eq!(parse_pin("a=0").unwrap(), ("a".to_string(), 0));
        assert!(parse_pin("a").is_err());
        assert_eq!(parse_group("all").unwrap(), None);
        assert_eq!(parse_group("Z2xZ2").unwrap(), Some(vec![2, 2]));
        assert_eq!(parse_group("11").unwrap(), Some(vec![11]));
        assert!(parse_group("2xfoo").is_err());
        assert_eq!(parse_focus("4,4;4,5").unwrap(), vec![(4, 4), (4, 5)]);
        assert!(parse_focus("4").is_err());
    }

    #[test]
    fn validation() {
        let mut c = RunConfig::new(CommandKind::Eliminate);
        c.type_string = Some("(1,2;4,3;5,2)".into());
        assert!(c.validate().is_ok());
        c.dim = Some(99);
        assert!(c.validate().is_err());
        c.dim = None;
        c.budget = 0;
        assert!(c.validate().is_err());
        let mut c = RunConfig::new(CommandKind::Enumerate);
        c.p = Some(2);
        c.q = Some(5);
        c.g_order = Some(2);
        c.pins.insert("z".into(), 0);
        assert!(c.validate().is_err());
    }
}
