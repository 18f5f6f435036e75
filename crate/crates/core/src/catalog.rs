//! Molecule catalog: `key=value` lines, one block per molecule, each block
//! opened by `name=`. `#` starts a comment.
//!
//! ```text
//! name=HF
//! re_A=0.917
//! bh_invA=1.94207
//! # D, μ and c_h are not tabulated; entries without them are threshold-only
//! ```

use std::collections::HashMap;
use std::path::Path;

use thiserror::Error;

use crate::model::{MoleculeParams, Regime};

#[derive(Debug, Error)]
pub enum CatalogError {
    #[error("line {line}: {msg}")]
    Parse { line: usize, msg: String },
    #[error("line {line}: invalid {field}: {reason}")]
    Invalid {
        line: usize,
        field: &'static str,
        reason: String,
    },
    #[error("line {line}: duplicate molecule name {name:?} (first defined on line {first})")]
    Duplicate {
        name: String,
        line: usize,
        first: usize,
    },
    #[error("molecule {name:?} is threshold-only: {missing} is not given")]
    Incomplete { name: String, missing: &'static str },
    #[error("cannot read {path}: {source}")]
    Io {
        path: String,
        source: std::io::Error,
    },
}

#[derive(Debug, Clone, PartialEq)]
pub struct CatalogEntry {
    pub name: String,
    /// Well depth, cm⁻¹.
    pub d: Option<f64>,
    pub r_e: f64,
    pub b_h: f64,
    pub c_h: Option<f64>,
    pub mu: Option<f64>,
    pub source: Option<String>,
    /// Line of the `name=` key.
    pub line: usize,
}

impl CatalogEntry {
    /// Missing D, μ or c_h: only the c_h threshold can be computed.
    pub fn is_threshold_only(&self) -> bool {
        self.d.is_none() || self.mu.is_none() || self.c_h.is_none()
    }

    fn ch_or(&self, ch_override: Option<f64>) -> Result<f64, CatalogError> {
        ch_override.or(self.c_h).ok_or_else(|| CatalogError::Incomplete {
            name: self.name.clone(),
            missing: "ch",
        })
    }

    /// Regime classification, which needs only b_h, r_e and c_h.
    pub fn regime(&self, ch_override: Option<f64>) -> Result<Regime, CatalogError> {
        let ch = self.ch_or(ch_override)?;
        check_ch(ch, self.line)?;
        Ok(Regime::from_shape(self.b_h, self.r_e, ch))
    }

    pub fn params(&self, ch_override: Option<f64>) -> Result<MoleculeParams, CatalogError> {
        let missing = |what| CatalogError::Incomplete {
            name: self.name.clone(),
            missing: what,
        };
        let d = self.d.ok_or_else(|| missing("D_cm1"))?;
        let mu = self.mu.ok_or_else(|| missing("mu_amu"))?;
        let ch = self.ch_or(ch_override)?;
        MoleculeParams::new(self.name.clone(), d, self.r_e, self.b_h, ch, mu).map_err(|e| {
            CatalogError::Invalid {
                line: self.line,
                field: "parameters",
                reason: e.to_string(),
            }
        })
    }
}

fn check_ch(ch: f64, line: usize) -> Result<(), CatalogError> {
    if ch.is_finite() && ch.abs() < 1.0 {
        Ok(())
    } else {
        Err(CatalogError::Invalid {
            line,
            field: "ch",
            reason: format!("|c_h| < 1 required, got {ch}"),
        })
    }
}

#[derive(Default)]
struct Block {
    line: usize,
    name: String,
    values: HashMap<&'static str, (f64, usize)>,
    source: Option<String>,
}

const NUMERIC_KEYS: [&str; 5] = ["D_cm1", "re_A", "bh_invA", "ch", "mu_amu"];

impl Block {
    fn finish(self) -> Result<CatalogEntry, CatalogError> {
        let get = |k: &str| self.values.get(k).copied();
        let positive = |k: &'static str| -> Result<Option<f64>, CatalogError> {
            match get(k) {
                Some((v, line)) if !(v.is_finite() && v > 0.0) => Err(CatalogError::Invalid {
                    line,
                    field: k,
                    reason: format!("must be finite and > 0, got {v}"),
                }),
                other => Ok(other.map(|(v, _)| v)),
            }
        };
        let required = |k: &'static str| -> Result<f64, CatalogError> {
            positive(k)?.ok_or_else(|| CatalogError::Invalid {
                line: self.line,
                field: k,
                reason: "missing".into(),
            })
        };
        let r_e = required("re_A")?;
        let b_h = required("bh_invA")?;
        let d = positive("D_cm1")?;
        let mu = positive("mu_amu")?;
        let c_h = match get("ch") {
            Some((v, line)) => {
                check_ch(v, line)?;
                Some(v)
            }
            None => None,
        };
        if (d.is_some() || mu.is_some()) && self.source.is_none() {
            return Err(CatalogError::Invalid {
                line: self.line,
                field: "source",
                reason: "required when D_cm1 or mu_amu is given".into(),
            });
        }
        Ok(CatalogEntry {
            name: self.name,
            d,
            r_e,
            b_h,
            c_h,
            mu,
            source: self.source,
            line: self.line,
        })
    }
}

pub fn parse_catalog(text: &str) -> Result<Vec<CatalogEntry>, CatalogError> {
    let mut entries = Vec::new();
    let mut seen: HashMap<String, usize> = HashMap::new();
    let mut current: Option<Block> = None;
    for (idx, raw) in text.lines().enumerate() {
        let line = idx + 1;
        let content = raw.split('#').next().unwrap_or("").trim();
        if content.is_empty() {
            continue;
        }
        let (key, value) = content.split_once('=').ok_or_else(|| CatalogError::Parse {
            line,
            msg: format!("expected key=value, got {content:?}"),
        })?;
        let (key, value) = (key.trim(), value.trim());
        if key == "name" {
            if value.is_empty() {
                return Err(CatalogError::Parse {
                    line,
                    msg: "empty molecule name".into(),
                });
            }
            if let Some(&first) = seen.get(value) {
                return Err(CatalogError::Duplicate {
                    name: value.to_string(),
                    line,
                    first,
                });
            }
            seen.insert(value.to_string(), line);
            if let Some(b) = current.take() {
                entries.push(b.finish()?);
            }
            current = Some(Block {
                line,
                name: value.to_string(),
                ..Block::default()
            });
            continue;
        }
        let block = current.as_mut().ok_or_else(|| CatalogError::Parse {
            line,
            msg: format!("{key}= before any name= line"),
        })?;
        if key == "source" {
            block.source = Some(value.to_string());
            continue;
        }
        let Some(&k) = NUMERIC_KEYS.iter().find(|&&k| k == key) else {
            return Err(CatalogError::Parse {
                line,
                msg: format!("unknown key {key:?}"),
            });
        };
        let v: f64 = value.parse().map_err(|_| CatalogError::Parse {
            line,
            msg: format!("{key}: cannot parse {value:?} as a number"),
        })?;
        if block.values.insert(k, (v, line)).is_some() {
            return Err(CatalogError::Parse {
                line,
                msg: format!("{key} given twice for {}", block.name),
            });
        }
    }
    if let Some(b) = current {
        entries.push(b.finish()?);
    }
    Ok(entries)
}

pub fn load_catalog(path: &Path) -> Result<Vec<CatalogEntry>, CatalogError> {
    let text = std::fs::read_to_string(path).map_err(|source| CatalogError::Io {
        path: path.display().to_string(),
        source,
    })?;
    parse_catalog(&text)
}

/// The six shape-parameter pairs of the reference threshold table.
pub const TABLE1_FIXTURE: &str = include_str!("../fixtures/table1.cat");

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn fixture_is_threshold_only() {
        let entries = parse_catalog(TABLE1_FIXTURE).unwrap();
        assert_eq!(entries.len(), 6);
        assert!(entries.iter().all(CatalogEntry::is_threshold_only));
        assert_eq!(entries[0].name, "HF");
        assert!(matches!(
            entries[0].params(None),
            Err(CatalogError::Incomplete { .. })
        ));
    }

    #[test]
    fn empty_and_comment_only() {
        assert!(parse_catalog("").unwrap().is_empty());
        assert!(parse_catalog("# nothing\n\n").unwrap().is_empty());
    }

    #[test]
    fn full_entry() {
        let text = "name=toy\nD_cm1=40000\nre_A=1\nbh_invA=2\nch=0.3\nmu_amu=1\nsource=synthetic\n";
        let e = &parse_catalog(text).unwrap()[0];
        assert!(!e.is_threshold_only());
        let p = e.params(None).unwrap();
        assert_eq!((p.d, p.c_h), (40000.0, 0.3));
        assert_eq!(e.params(Some(-0.1)).unwrap().c_h, -0.1);
    }

    #[test]
    fn rejects_bad_ch() {
        let err = parse_catalog("name=x\nre_A=1\nbh_invA=1\nch=1.5\n").unwrap_err();
        let msg = err.to_string();
        assert!(msg.contains("|c_h| < 1") && msg.contains("line 4"), "{msg}");
    }

    #[test]
    fn errors_name_their_line() {
        let dup = "name=a\nre_A=1\nbh_invA=1\nname=a\nre_A=1\nbh_invA=1\n";
        assert!(matches!(
            parse_catalog(dup),
            Err(CatalogError::Duplicate { line: 4, first: 1, .. })
        ));
        assert!(matches!(
            parse_catalog("name=a\nre_A\n"),
            Err(CatalogError::Parse { line: 2, .. })
        ));
        assert!(matches!(
            parse_catalog("re_A=1\n"),
            Err(CatalogError::Parse { line: 1, .. })
        ));
        assert!(matches!(
            parse_catalog("name=a\nre_A=1\nbh_invA=1\ncolor=3\n"),
            Err(CatalogError::Parse { line: 4, .. })
        ));
        let neg = parse_catalog("name=a\nre_A=-1\nbh_invA=1\n").unwrap_err();
        assert!(matches!(neg, CatalogError::Invalid { line: 2, field: "re_A", .. }));
    }

    #[test]
    fn depth_needs_a_source() {
        let err = parse_catalog("name=a\nre_A=1\nbh_invA=1\nD_cm1=100\nmu_amu=1\n").unwrap_err();
        assert!(matches!(err, CatalogError::Invalid { field: "source", .. }));
    }
}
