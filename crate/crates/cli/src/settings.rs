//! Optional `key = value` run files. Every key mirrors a long flag name;
//! a flag given on the command line always wins over the file.

use std::collections::BTreeMap;
use std::fs;
use std::path::Path;
use std::str::FromStr;

use crate::Failure;

const KNOWN_KEYS: [&str; 15] = [
    "gamma",
    "alpha",
    "alpha-a",
    "rmin",
    "rmax",
    "rcount",
    "rscale",
    "shape",
    "shape-param",
    "lambdas",
    "radius",
    "abs-tol",
    "rel-tol",
    "out",
    "max-refinement",
];

#[derive(Debug, Default)]
pub struct RunFile {
    entries: BTreeMap<String, String>,
}

impl RunFile {
    pub fn load(path: &Path) -> Result<Self, Failure> {
        let text = fs::read_to_string(path)
            .map_err(|e| Failure::usage(format!("cannot read config file {}: {e}", path.display())))?;
        Self::parse(&text).map_err(|msg| Failure::usage(format!("{}: {msg}", path.display())))
    }

    pub fn parse(text: &str) -> Result<Self, String> {
        let mut entries = BTreeMap::new();
        for (number, raw) in text.lines().enumerate() {
            let line = raw.split('#').next().unwrap_or("").trim();
            if line.is_empty() {
                continue;
            }
            let (key, value) = line
                .split_once('=')
                .ok_or_else(|| format!("line {}: expected `key = value`", number + 1))?;
            let key = key.trim().replace('_', "-");
            if !KNOWN_KEYS.contains(&key.as_str()) {
                return Err(format!("line {}: unknown key `{key}`", number + 1));
            }
            entries.insert(key, value.trim().to_string());
        }
        Ok(Self { entries })
    }

    pub fn contains(&self, key: &str) -> bool {
        self.entries.contains_key(key)
    }

    /// The flag value if given, else the file value parsed as `V`.
    pub fn pick<V: FromStr>(&self, flag: Option<V>, key: &str) -> Result<Option<V>, Failure> {
        if flag.is_some() {
            return Ok(flag);
        }
        match self.entries.get(key) {
            None => Ok(None),
            Some(text) => text
                .parse()
                .map(Some)
                .map_err(|_| Failure::usage(format!("config file: invalid value `{text}` for `{key}`"))),
        }
    }

    pub fn pick_or<V: FromStr>(&self, flag: Option<V>, key: &str, default: V) -> Result<V, Failure> {
        Ok(self.pick(flag, key)?.unwrap_or(default))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parses_comments_and_underscores() {
        let f = RunFile::parse("# defaults\ngamma = 2\n\nabs_tol=1e-9  # tighter\n").unwrap();
        assert_eq!(f.pick::<f64>(None, "gamma").unwrap(), Some(2.0));
        assert_eq!(f.pick::<f64>(None, "abs-tol").unwrap(), Some(1e-9));
        assert_eq!(f.pick(Some(3.0), "gamma").unwrap(), Some(3.0));
        assert_eq!(f.pick_or(None, "rmin", 0.5).unwrap(), 0.5);
    }

    #[test]
    fn rejects_unknown_keys_and_bad_lines() {
        assert!(RunFile::parse("colour = red").is_err());
        assert!(RunFile::parse("gamma").is_err());
        let f = RunFile::parse("gamma = x").unwrap();
        assert!(f.pick::<f64>(None, "gamma").is_err());
    }
}
