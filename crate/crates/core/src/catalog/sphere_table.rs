//! Homotopy groups of spheres loaded from a versioned text asset.
//!
//! Unstable entries cover `π_k(S^n)` for the shipped `(n, k)` range; a
//! stable-stem section answers queries in the stable range `n ≥ i + 2`
//! for stem `i = k − n`. Anything else is unknown.

use std::collections::BTreeMap;
use std::path::Path;

use crate::abgroup::{parse_cyclic_sum, FgAbGroup};
use crate::error::AlgebraError;

use super::CatalogError;

const BUNDLED: &str = include_str!("../../data/sphere_table.txt");
/// The only table format this parser understands.
const FORMAT_VERSION: u32 = 1;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SphereTable {
    version: u32,
    entries: BTreeMap<(u32, u32), FgAbGroup>,
    stable: BTreeMap<u32, FgAbGroup>,
}

impl Default for SphereTable {
    fn default() -> Self {
        SphereTable::parse(BUNDLED).expect("bundled sphere table is well formed")
    }
}

impl SphereTable {
    pub fn load(path: &Path) -> Result<Self, CatalogError> {
        let text = std::fs::read_to_string(path).map_err(|e| CatalogError::Io {
            path: path.display().to_string(),
            message: e.to_string(),
        })?;
        SphereTable::parse(&text)
    }

    /// Parses the table format. Errors report 1-based line and column.
    pub fn parse(text: &str) -> Result<Self, CatalogError> {
        let mut version = None;
        let mut entries = BTreeMap::new();
        let mut stable = BTreeMap::new();
        for (idx, raw) in text.lines().enumerate() {
            let line = idx + 1;
            let content = raw.split('#').next().unwrap_or("");
            let tokens = tokenize(content);
            let Some(&(col, head)) = tokens.first() else {
                continue;
            };
            let err = |column: usize, message: String| CatalogError::Table { line, column, message };
            let number = |i: usize| -> Result<u32, CatalogError> {
                let &(c, t) = tokens
                    .get(i)
                    .ok_or_else(|| err(raw.len() + 1, "missing field".into()))?;
                t.parse().map_err(|_| err(c, format!("expected a non-negative integer, found `{t}`")))
            };
            let group = |i: usize| -> Result<FgAbGroup, CatalogError> {
                let &(c, t) = tokens
                    .get(i)
                    .ok_or_else(|| err(raw.len() + 1, "missing group literal".into()))?;
                if let Some(&(extra, _)) = tokens.get(i + 1) {
                    return Err(err(extra, "unexpected trailing field".into()));
                }
                parse_cyclic_sum(t, c - 1)
                    .map(|s| s.canonical())
                    .map_err(|e| match e {
                        AlgebraError::Literal { column, message } => err(column, message),
                        other => err(c, other.to_string()),
                    })
            };
            match head {
                "version" => {
                    if version.is_some() {
                        return Err(err(col, "duplicate version line".into()));
                    }
                    let v = number(1)?;
                    if v != FORMAT_VERSION {
                        return Err(err(tokens[1].0, format!("unsupported table version {v}, expected {FORMAT_VERSION}")));
                    }
                    version = Some(v);
                }
                "stable" => {
                    let stem = number(1)?;
                    if stable.insert(stem, group(2)?).is_some() {
                        return Err(err(col, format!("duplicate stable stem {stem}")));
                    }
                }
                _ => {
                    let n = number(0)?;
                    let k = number(1)?;
                    if n == 0 || k == 0 {
                        return Err(err(col, "sphere dimension and degree must be positive".into()));
                    }
                    let g = group(2)?;
                    let forced = forced_value(n, k);
                    if let Some(f) = forced.filter(|f| f != &g) {
                        return Err(err(tokens[2].0, format!("pi_{k}(S^{n}) must be {f}, found {g}")));
                    }
                    if entries.insert((n, k), g).is_some() {
                        return Err(err(col, format!("duplicate entry for pi_{k}(S^{n})")));
                    }
                }
            }
        }
        let version = version.ok_or(CatalogError::Table {
            line: 1,
            column: 1,
            message: "missing version line".into(),
        })?;
        Ok(SphereTable { version, entries, stable })
    }

    pub fn version(&self) -> u32 {
        self.version
    }

    /// `π_k(S^n)`, or `None` when the value is not available.
    pub fn lookup(&self, n: u32, k: u32) -> Option<FgAbGroup> {
        if n == 0 || k == 0 {
            return None;
        }
        if let Some(g) = forced_value(n, k) {
            return Some(g);
        }
        if let Some(g) = self.entries.get(&(n, k)) {
            return Some(g.clone());
        }
        let stem = k - n;
        (n >= stem + 2).then(|| self.stable.get(&stem).cloned()).flatten()
    }
}

/// Values fixed by connectivity, the Hurewicz degree, and the contractible
/// universal cover of `S^1`.
fn forced_value(n: u32, k: u32) -> Option<FgAbGroup> {
    if k < n || (n == 1 && k > 1) {
        Some(FgAbGroup::trivial())
    } else if k == n {
        Some(FgAbGroup::integers())
    } else {
        None
    }
}

/// Whitespace-separated tokens with their 1-based starting columns.
fn tokenize(s: &str) -> Vec<(usize, &str)> {
    let mut out = Vec::new();
    let mut start = None;
    for (i, c) in s.char_indices() {
        match (c.is_whitespace(), start) {
            (true, Some(st)) => {
                out.push((st + 1, &s[st..i]));
                start = None;
            }
            (false, None) => start = Some(i),
            _ => {}
        }
    }
    if let Some(st) = start {
        out.push((st + 1, &s[st..]));
    }
    out
}
