//! Plain-text data files shipped with the crate: the ray table, the gamma
//! table and the frozen catalog counts. The embedded copies are used unless
//! a directory override is supplied.

use std::collections::BTreeMap;
use std::fs;
use std::path::Path;

use crate::error::FixtureError;
use crate::{DIM, RAY_COUNT};

pub const TABLE1_FILE: &str = "table1.txt";
pub const TABLE2_FILE: &str = "table2.txt";
pub const COUNTS_FILE: &str = "catalog_counts.txt";

const TABLE1: &str = include_str!("../fixtures/table1.txt");
const TABLE2: &str = include_str!("../fixtures/table2.txt");
const COUNTS: &str = include_str!("../fixtures/catalog_counts.txt");

/// One cell of the gamma table: column, row, four ray ids.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct GammaCell {
    pub column: usize,
    pub row: usize,
    pub rays: [u8; 4],
}

/// Frozen per-signature proof counts, keyed by rendered signature.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct CatalogCounts {
    pub all: BTreeMap<String, usize>,
    pub minimal: BTreeMap<String, usize>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Fixtures {
    pub rays: Vec<[i8; DIM]>,
    pub gamma: Vec<GammaCell>,
    pub counts: CatalogCounts,
}

impl Fixtures {
    pub fn embedded() -> Self {
        Fixtures {
            rays: parse_table1(TABLE1, TABLE1_FILE).expect("embedded table1 parses"),
            gamma: parse_table2(TABLE2, TABLE2_FILE).expect("embedded table2 parses"),
            counts: parse_counts(COUNTS, COUNTS_FILE).expect("embedded counts parse"),
        }
    }

    /// Loads fixtures from `dir`; files absent from the directory fall back
    /// to the embedded copies.
    pub fn from_dir(dir: &Path) -> Result<Self, FixtureError> {
        let read = |name: &str| -> Result<Option<String>, FixtureError> {
            let path = dir.join(name);
            if !path.exists() {
                return Ok(None);
            }
            fs::read_to_string(&path)
                .map(Some)
                .map_err(|e| FixtureError::Io(path.display().to_string(), e.to_string()))
        };
        let mut fx = Self::embedded();
        if let Some(text) = read(TABLE1_FILE)? {
            fx.rays = parse_table1(&text, TABLE1_FILE)?;
        }
        if let Some(text) = read(TABLE2_FILE)? {
            fx.gamma = parse_table2(&text, TABLE2_FILE)?;
        }
        if let Some(text) = read(COUNTS_FILE)? {
            fx.counts = parse_counts(&text, COUNTS_FILE)?;
        }
        Ok(fx)
    }
}

fn content_lines(text: &str) -> impl Iterator<Item = (usize, &str)> {
    text.lines()
        .enumerate()
        .map(|(i, l)| (i + 1, l.trim()))
        .filter(|(_, l)| !l.is_empty() && !l.starts_with('#'))
}

fn err(file: &str, line: usize, msg: impl Into<String>) -> FixtureError {
    FixtureError::Parse {
        file: file.to_string(),
        line,
        msg: msg.into(),
    }
}

pub fn parse_table1(text: &str, file: &str) -> Result<Vec<[i8; DIM]>, FixtureError> {
    let mut rays = Vec::with_capacity(RAY_COUNT);
    for (n, line) in content_lines(text) {
        let mut fields = line.split_whitespace();
        let label = fields.next().unwrap_or_default();
        let expected = format!("R{}", rays.len() + 1);
        if label != expected {
            return Err(err(
                file,
                n,
                format!("expected {expected}, found {label:?}"),
            ));
        }
        let comps: Vec<i8> = fields
            .map(|f| match f {
                "1" => Ok(1),
                "0" => Ok(0),
                "-1" => Ok(-1),
                other => Err(err(file, n, format!("bad component {other:?}"))),
            })
            .collect::<Result<_, _>>()?;
        let comps: [i8; DIM] = comps.try_into().map_err(|v: Vec<i8>| {
            err(file, n, format!("expected 8 components, got {}", v.len()))
        })?;
        rays.push(comps);
    }
    if rays.len() != RAY_COUNT {
        return Err(err(
            file,
            0,
            format!("expected 40 rays, got {}", rays.len()),
        ));
    }
    Ok(rays)
}

pub fn parse_table2(text: &str, file: &str) -> Result<Vec<GammaCell>, FixtureError> {
    let mut cells = Vec::new();
    for (n, line) in content_lines(text) {
        let nums: Vec<usize> = line
            .split_whitespace()
            .map(|f| {
                f.parse()
                    .map_err(|_| err(file, n, format!("bad number {f:?}")))
            })
            .collect::<Result<_, _>>()?;
        let [column, row, a, b, c, d] = nums[..] else {
            return Err(err(file, n, "expected: column row r1 r2 r3 r4"));
        };
        if !(1..=5).contains(&column) || !(1..=8).contains(&row) {
            return Err(err(file, n, "column must be 1..5 and row 1..8"));
        }
        let rays = [a, b, c, d];
        if rays.iter().any(|&r| !(1..=RAY_COUNT).contains(&r)) {
            return Err(err(file, n, "ray id out of range"));
        }
        cells.push(GammaCell {
            column,
            row,
            rays: rays.map(|r| r as u8),
        });
    }
    if cells.len() != 40 {
        return Err(err(
            file,
            0,
            format!("expected 40 cells, got {}", cells.len()),
        ));
    }
    Ok(cells)
}

pub fn parse_counts(text: &str, file: &str) -> Result<CatalogCounts, FixtureError> {
    let mut counts = CatalogCounts::default();
    for (n, line) in content_lines(text) {
        let parts: Vec<&str> = line.split('|').map(str::trim).collect();
        let [scope, sig, count] = parts[..] else {
            return Err(err(file, n, "expected: scope | signature | count"));
        };
        let count: usize = count
            .parse()
            .map_err(|_| err(file, n, format!("bad count {count:?}")))?;
        let map = match scope {
            "all" => &mut counts.all,
            "minimal" => &mut counts.minimal,
            other => return Err(err(file, n, format!("unknown scope {other:?}"))),
        };
        map.insert(sig.to_string(), count);
    }
    Ok(counts)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn embedded_fixtures_load() {
        let fx = Fixtures::embedded();
        assert_eq!(fx.rays.len(), 40);
        assert_eq!(fx.rays[0], [1, 0, 0, 0, 0, 0, 0, 0]);
        assert_eq!(fx.rays[32], [1, 0, 0, 1, 0, 1, -1, 0]);
        assert_eq!(fx.gamma[0].rays, [1, 2, 3, 5]);
        assert_eq!(fx.counts.all.values().sum::<usize>(), 1024);
    }

    #[test]
    fn rejects_bad_component() {
        let text = TABLE1.replacen("R1   1", "R1   2", 1);
        assert!(matches!(
            parse_table1(&text, "t"),
            Err(FixtureError::Parse { line: 4, .. })
        ));
    }

    #[test]
    fn rejects_short_gamma_row() {
        assert!(parse_table2("1 1 1 2 3\n", "t").is_err());
    }

    #[test]
    fn directory_override_falls_back() {
        let dir = std::env::temp_dir().join(format!("ksforge-fx-{}", std::process::id()));
        fs::create_dir_all(&dir).unwrap();
        fs::write(dir.join(COUNTS_FILE), "all | 28_2 8_4 - 11_8 | 1\n").unwrap();
        let fx = Fixtures::from_dir(&dir).unwrap();
        assert_eq!(fx.counts.all.len(), 1);
        assert_eq!(fx.rays, Fixtures::embedded().rays);
        fs::remove_dir_all(&dir).unwrap();
    }
}
