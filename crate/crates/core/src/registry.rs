//! Embedded table of named scales.
//!
//! The text format is line oriented: a `# scale name registry v1` header,
//! `#` comments, then one row per scale:
//!
//! ```text
//! mask-hex|convention|table|spelled notes|name
//! ```
//!
//! `name` may be empty for unnamed table rows.

use std::collections::BTreeMap;
use std::sync::OnceLock;

use thiserror::Error;

use crate::scales::{parse_scale, ActionMode, Scale, Spelling};

const EMBEDDED: &str = include_str!("../data/registry.txt");
const HEADER: &str = "# scale name registry v1";

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum RegistryError {
    #[error("missing or unsupported registry header")]
    Header,
    #[error("line {line}: {msg}")]
    Row { line: usize, msg: String },
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RegistryEntry {
    pub scale: Scale,
    pub convention: Spelling,
    pub table: String,
    pub spelled: String,
    pub name: Option<String>,
}

#[derive(Debug, Clone, Default)]
pub struct NameRegistry {
    entries: Vec<RegistryEntry>,
    by_mask: BTreeMap<u16, Vec<usize>>,
}

impl NameRegistry {
    pub fn parse(text: &str) -> Result<Self, RegistryError> {
        let mut lines = text.lines().enumerate();
        match lines.next() {
            Some((_, l)) if l.trim() == HEADER => {}
            _ => return Err(RegistryError::Header),
        }
        let mut reg = Self::default();
        for (i, line) in lines {
            let line = line.trim();
            if line.is_empty() || line.starts_with('#') {
                continue;
            }
            let row = |msg: String| RegistryError::Row { line: i + 1, msg };
            let fields: Vec<&str> = line.split('|').collect();
            if fields.len() != 5 {
                return Err(row(format!("expected 5 fields, found {}", fields.len())));
            }
            let mask = u16::from_str_radix(fields[0], 16).map_err(|e| row(e.to_string()))?;
            let scale = Scale::tonic(mask).map_err(|e| row(e.to_string()))?;
            let convention: Spelling = fields[1].parse().map_err(row)?;
            let parsed = parse_scale(fields[3], ActionMode::Tonic).map_err(|e| row(e.to_string()))?;
            if parsed != scale {
                return Err(row(format!("spelled notes do not match mask {mask:03x}")));
            }
            let name = (!fields[4].trim().is_empty()).then(|| fields[4].trim().to_string());
            reg.by_mask.entry(mask).or_default().push(reg.entries.len());
            reg.entries.push(RegistryEntry {
                scale,
                convention,
                table: fields[2].to_string(),
                spelled: fields[3].to_string(),
                name,
            });
        }
        Ok(reg)
    }

    /// The registry shipped with the crate.
    pub fn embedded() -> &'static NameRegistry {
        static REG: OnceLock<NameRegistry> = OnceLock::new();
        REG.get_or_init(|| NameRegistry::parse(EMBEDDED).expect("embedded registry is valid"))
    }

    pub fn entries(&self) -> &[RegistryEntry] {
        &self.entries
    }

    /// Rows of one table, in file order.
    pub fn table<'a>(&'a self, tag: &'a str) -> impl Iterator<Item = &'a RegistryEntry> + 'a {
        self.entries.iter().filter(move |e| e.table == tag)
    }

    pub fn table_masks(&self, tag: &str) -> Vec<u16> {
        let mut v: Vec<u16> = self.table(tag).map(|e| e.scale.mask()).collect();
        v.sort_unstable();
        v
    }

    /// All names registered for the pitch-class set of `s` (any mode).
    pub fn lookup_names(&self, s: Scale) -> Vec<&str> {
        self.by_mask
            .get(&s.mask())
            .into_iter()
            .flatten()
            .filter_map(|&i| self.entries[i].name.as_deref())
            .collect()
    }

    /// Looks up a scale by exact registered name.
    pub fn find(&self, name: &str) -> Option<Scale> {
        self.entries
            .iter()
            .find(|e| e.name.as_deref() == Some(name))
            .map(|e| e.scale)
    }

    pub fn to_text(&self) -> String {
        let mut out = format!("{HEADER}\n# mask-hex|convention|table|spelled notes|name\n");
        for e in &self.entries {
            out.push_str(&format!(
                "{:03x}|{}|{}|{}|{}\n",
                e.scale.mask(),
                e.convention,
                e.table,
                e.spelled,
                e.name.as_deref().unwrap_or("")
            ));
        }
        out
    }
}

pub fn lookup_names(s: Scale) -> Vec<&'static str> {
    NameRegistry::embedded().lookup_names(s)
}
