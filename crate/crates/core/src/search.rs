//! Sweeps over families of groups, ranked by t-power diameter.
//!
//! Young subgroups are swept with the closed-form orbit multiset; arbitrary
//! groups come from a catalog file and are swept by orbit enumeration.
//!
//! Catalog format, one group per line:
//!
//! ```text
//! # comment
//! label ; (1 2) ; (3 4)(5 6) ; order=8
//! ```
//!
//! The trailing `order=N` field is optional; when present the computed group
//! order must match it.

use std::cmp::Ordering;
use std::collections::HashMap;
use std::fmt;
use std::sync::Arc;

use rayon::prelude::*;
use thiserror::Error;

use crate::means::{diam_t, MeanError, TParam};
use crate::orbits::{orbit_partition, OrbitMultiset};
use crate::perm::{GeneratorSet, DEGREE};
use crate::scales::{ActionMode, ScaleError, ScaleUniverse};
use crate::young::{
    enumerate_set_partitions, enumerate_signatures, integer_partitions, orbit_multiset_closed_form, Signature,
    YoungError,
};

/// Tolerance on diameters when collecting ties for the maximum.
pub const ARGMAX_TOLERANCE: f64 = 1e-9;

pub const SAMPLE_TONIC_CATALOG: &str = include_str!("../data/named_tonic.catalog");
pub const SAMPLE_ATONIC_CATALOG: &str = include_str!("../data/named_atonic.catalog");

#[derive(Debug, Clone, PartialEq, Error)]
pub enum SearchError {
    #[error(transparent)]
    Young(#[from] YoungError),
    #[error(transparent)]
    Mean(#[from] MeanError),
    #[error(transparent)]
    Scale(#[from] ScaleError),
    #[error("t list is empty")]
    NoT,
    #[error("thread pool: {0}")]
    Pool(String),
}

/// Which Young subgroups a sweep covers.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Dedupe {
    /// One row per isomorphism type (sorted block sizes).
    ByType,
    /// One row per signature: the groups without crossings.
    AllSignatures,
    /// One row per set partition: every Young subgroup.
    AllPartitions,
}

/// Orbit data shared by all rows of one block-size type.
#[derive(Debug, Clone, PartialEq)]
pub struct RowStats {
    pub multiset: OrbitMultiset,
    pub diams: Vec<f64>,
}

#[derive(Debug, Clone, PartialEq)]
pub struct SweepRow {
    pub descriptor: String,
    pub order: u128,
    /// Number of groups this row stands for (more than one for `ByType`).
    pub covers: u64,
    pub stats: Arc<RowStats>,
}

impl SweepRow {
    pub fn multiset(&self) -> &OrbitMultiset {
        &self.stats.multiset
    }

    pub fn diams(&self) -> &[f64] {
        &self.stats.diams
    }

    pub fn max_orbit(&self) -> u64 {
        self.stats.multiset.max_size().unwrap_or(0)
    }

    pub fn n_orbits(&self) -> u64 {
        self.stats.multiset.total_orbits()
    }
}

/// A catalog line that could not be used.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Diagnostic {
    pub line: Option<usize>,
    pub label: Option<String>,
    pub message: String,
}

impl fmt::Display for Diagnostic {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if let Some(line) = self.line {
            write!(f, "line {line}: ")?;
        }
        if let Some(label) = &self.label {
            write!(f, "{label}: ")?;
        }
        f.write_str(&self.message)
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct SweepReport {
    pub family: String,
    pub k: usize,
    pub mode: ActionMode,
    pub t_list: Vec<TParam>,
    pub rows: Vec<SweepRow>,
    /// Skipped catalog entries.
    pub diagnostics: Vec<Diagnostic>,
}

impl SweepReport {
    /// Row indices by descending diameter at `t_list[t_index]`, ties by
    /// descriptor.
    pub fn ranking(&self, t_index: usize) -> Vec<usize> {
        let mut idx: Vec<usize> = (0..self.rows.len()).collect();
        idx.sort_by(|&a, &b| {
            let (ra, rb) = (&self.rows[a], &self.rows[b]);
            rb.diams()[t_index]
                .total_cmp(&ra.diams()[t_index])
                .then_with(|| ra.descriptor.cmp(&rb.descriptor))
        });
        idx
    }

    /// Rows whose diameter at `t_list[t_index]` is within `tol` of the best.
    pub fn argmax(&self, t_index: usize, tol: f64) -> Vec<usize> {
        let best = self
            .rows
            .iter()
            .map(|r| r.diams()[t_index])
            .fold(f64::NEG_INFINITY, f64::max);
        let mut out: Vec<usize> = (0..self.rows.len())
            .filter(|&i| self.rows[i].diams()[t_index] >= best - tol)
            .collect();
        out.sort_by(|&a, &b| self.rows[a].descriptor.cmp(&self.rows[b].descriptor));
        out
    }

    pub fn row(&self, descriptor: &str) -> Option<&SweepRow> {
        self.rows.iter().find(|r| r.descriptor == descriptor)
    }

    /// Total number of groups represented by the rows.
    pub fn groups_covered(&self) -> u64 {
        self.rows.iter().map(|r| r.covers).sum()
    }

    /// `family,descriptor,max_orbit,n_orbits,diam_<t>…`, one line per row in
    /// report order.
    pub fn to_csv(&self, precision: usize) -> String {
        let mut out = String::from("family,descriptor,max_orbit,n_orbits");
        for t in &self.t_list {
            out.push_str(&format!(",diam_{t}"));
        }
        out.push('\n');
        for r in &self.rows {
            out.push_str(&format!(
                "{},{},{},{}",
                csv_field(&self.family),
                csv_field(&r.descriptor),
                r.max_orbit(),
                r.n_orbits()
            ));
            for d in r.diams() {
                out.push_str(&format!(",{d:.precision$}"));
            }
            out.push('\n');
        }
        out
    }
}

fn csv_field(s: &str) -> String {
    if s.contains([',', '"', '\n']) {
        format!("\"{}\"", s.replace('"', "\"\""))
    } else {
        s.to_string()
    }
}

fn diams_of(m: &OrbitMultiset, t_list: &[TParam]) -> Result<Vec<f64>, MeanError> {
    t_list.iter().map(|&t| diam_t(m, t)).collect()
}

fn factorial(n: usize) -> u64 {
    (1..=n as u64).product()
}

/// Number of set partitions whose sorted block sizes are `sorted_type`.
pub fn partitions_of_type(sorted_type: &[usize]) -> u64 {
    let n: usize = sorted_type.iter().sum();
    let mut denom: u64 = sorted_type.iter().map(|&b| factorial(b)).product();
    let mut i = 0;
    while i < sorted_type.len() {
        let j = sorted_type[i..].iter().take_while(|&&b| b == sorted_type[i]).count();
        denom *= factorial(j);
        i += j;
    }
    factorial(n) / denom
}

/// Sweeps Young subgroups on k-note scales with the closed-form multiset.
///
/// Orbit data depends only on the sorted block sizes, so it is computed once
/// per type. With `ByType` each row's `covers` counts the set partitions of
/// that type, and the rows together cover every Young subgroup.
pub fn sweep_young(k: usize, mode: ActionMode, t_list: &[TParam], dedupe: Dedupe) -> Result<SweepReport, SearchError> {
    if t_list.is_empty() {
        return Err(SearchError::NoT);
    }
    let n = mode.moved_points();
    if mode.free_notes(k).is_none_or(|f| f > n) {
        return Err(YoungError::BadK { k, mode }.into());
    }
    let mut memo: HashMap<Vec<usize>, Arc<RowStats>> = HashMap::new();
    let mut stats_for = |sorted: Vec<usize>| -> Result<Arc<RowStats>, SearchError> {
        if let Some(s) = memo.get(&sorted) {
            return Ok(s.clone());
        }
        let multiset = orbit_multiset_closed_form(&sorted, k, mode)?;
        let diams = diams_of(&multiset, t_list)?;
        let s = Arc::new(RowStats { multiset, diams });
        memo.insert(sorted, s.clone());
        Ok(s)
    };
    let mut rows = Vec::new();
    let family = match dedupe {
        Dedupe::ByType => {
            for ty in integer_partitions(n) {
                rows.push(SweepRow {
                    descriptor: ty.to_string(),
                    order: ty.group_order(),
                    covers: partitions_of_type(ty.blocks()),
                    stats: stats_for(ty.blocks().to_vec())?,
                });
            }
            "young-types"
        }
        Dedupe::AllSignatures => {
            for sig in enumerate_signatures(n) {
                rows.push(SweepRow {
                    descriptor: sig.to_string(),
                    order: sig.group_order(),
                    covers: 1,
                    stats: stats_for(sig.sorted_type().blocks().to_vec())?,
                });
            }
            "young-signatures"
        }
        Dedupe::AllPartitions => {
            for p in enumerate_set_partitions(n) {
                let mut sizes = p.block_sizes();
                sizes.sort_unstable_by(|a, b| b.cmp(a));
                let sig = Signature::new(sizes.clone())?;
                rows.push(SweepRow {
                    descriptor: rgs_descriptor(p.labels()),
                    order: sig.group_order(),
                    covers: 1,
                    stats: stats_for(sizes)?,
                });
            }
            "young-partitions"
        }
    };
    Ok(SweepReport {
        family: family.to_string(),
        k,
        mode,
        t_list: t_list.to_vec(),
        rows,
        diagnostics: Vec::new(),
    })
}

/// Restricted-growth string with one base-36 digit per point, e.g.
/// `rgs:00112`.
fn rgs_descriptor(labels: &[u8]) -> String {
    let digits: String = labels
        .iter()
        .map(|&l| char::from_digit(l as u32, 36).expect("label below 36"))
        .collect();
    format!("rgs:{digits}")
}

/// One group of a catalog file.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CatalogEntry {
    pub label: String,
    pub generators: Vec<String>,
    pub expected_order: Option<u128>,
    /// 1-based source line, when read from text.
    pub line: Option<usize>,
}

impl CatalogEntry {
    pub fn new(label: impl Into<String>, generators: &[&str]) -> Self {
        Self {
            label: label.into(),
            generators: generators.iter().map(|g| g.to_string()).collect(),
            expected_order: None,
            line: None,
        }
    }

    pub fn with_order(mut self, order: u128) -> Self {
        self.expected_order = Some(order);
        self
    }

    /// Parses the generators and checks the expected order.
    pub fn generator_set(&self) -> Result<GeneratorSet, String> {
        let gens = GeneratorSet::parse(&self.generators, DEGREE)
            .map_err(|e| e.to_string())?
            .with_label(self.label.clone());
        if let Some(expected) = self.expected_order {
            let got = gens.order();
            if got != expected {
                return Err(format!("group order {got} does not match order={expected}"));
            }
        }
        Ok(gens)
    }

    fn diagnostic(&self, message: String) -> Diagnostic {
        Diagnostic {
            line: self.line,
            label: Some(self.label.clone()),
            message,
        }
    }
}

/// Reads a catalog; malformed lines become diagnostics and are skipped.
pub fn parse_catalog(text: &str) -> (Vec<CatalogEntry>, Vec<Diagnostic>) {
    let mut entries = Vec::new();
    let mut diags = Vec::new();
    for (i, raw) in text.lines().enumerate() {
        let line = raw.trim();
        if line.is_empty() || line.starts_with('#') {
            continue;
        }
        let mut fields: Vec<&str> = line.split(';').map(str::trim).collect();
        let label = fields.remove(0).to_string();
        let fail = |message: String| Diagnostic {
            line: Some(i + 1),
            label: (!label.is_empty()).then(|| label.clone()),
            message,
        };
        if label.is_empty() {
            diags.push(fail("missing label".into()));
            continue;
        }
        let mut expected_order = None;
        if let Some(last) = fields.last() {
            if let Some(n) = last.strip_prefix("order=") {
                match n.trim().parse::<u128>() {
                    Ok(n) => expected_order = Some(n),
                    Err(_) => {
                        diags.push(fail(format!("bad order field {last:?}")));
                        continue;
                    }
                }
                fields.pop();
            }
        }
        let generators: Vec<String> = fields.into_iter().filter(|f| !f.is_empty()).map(String::from).collect();
        entries.push(CatalogEntry {
            label,
            generators,
            expected_order,
            line: Some(i + 1),
        });
    }
    (entries, diags)
}

/// Sweeps catalog groups on k-note scales by orbit enumeration, using
/// `jobs` worker threads (0 picks the default). Entries that fail to parse,
/// have the wrong order, or move the tonic in tonic mode are skipped with a
/// diagnostic. Row order follows the catalog regardless of `jobs`.
pub fn sweep_catalog(
    entries: &[CatalogEntry],
    k: usize,
    mode: ActionMode,
    t_list: &[TParam],
    jobs: usize,
) -> Result<SweepReport, SearchError> {
    if t_list.is_empty() {
        return Err(SearchError::NoT);
    }
    let universe = ScaleUniverse::enumerate(k, mode)?;
    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(jobs)
        .build()
        .map_err(|e| SearchError::Pool(e.to_string()))?;
    let results: Vec<Result<SweepRow, Diagnostic>> = pool.install(|| {
        entries
            .par_iter()
            .map(|e| {
                let gens = e.generator_set().map_err(|m| e.diagnostic(m))?;
                let partition = orbit_partition(&gens, &universe).map_err(|err| e.diagnostic(err.to_string()))?;
                let multiset = partition.multiset();
                let diams = diams_of(&multiset, t_list).map_err(|err| e.diagnostic(err.to_string()))?;
                Ok(SweepRow {
                    descriptor: e.label.clone(),
                    order: gens.order(),
                    covers: 1,
                    stats: Arc::new(RowStats { multiset, diams }),
                })
            })
            .collect()
    });
    let mut rows = Vec::new();
    let mut diagnostics = Vec::new();
    for r in results {
        match r {
            Ok(row) => rows.push(row),
            Err(d) => diagnostics.push(d),
        }
    }
    Ok(SweepReport {
        family: "catalog".to_string(),
        k,
        mode,
        t_list: t_list.to_vec(),
        rows,
        diagnostics,
    })
}

/// Compares `diam_1 = max·N / Σx²` exactly.
fn cmp_diam1(a: &OrbitMultiset, b: &OrbitMultiset) -> Ordering {
    let num = |m: &OrbitMultiset| m.max_size().unwrap_or(0) as u128 * m.total_points() as u128;
    (num(a) * b.sum_of_squares()).cmp(&(num(b) * a.sum_of_squares()))
}

/// The 56 Young types on 7-note tonic scales at t = 1, 0, −1, by
/// descending `diam_1` (exact), ties by descending block sizes.
pub fn reproduce_table2() -> SweepReport {
    let t = [TParam::ONE, TParam::ZERO, TParam::MINUS_ONE];
    let mut report = sweep_young(7, ActionMode::Tonic, &t, Dedupe::ByType).expect("k = 7 is valid");
    // integer_partitions is already in descending order; the stable sort
    // keeps it for ties
    report.rows.sort_by(|a, b| cmp_diam1(b.multiset(), a.multiset()));
    report.family = "table2".to_string();
    report
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::named::group;

    fn t3() -> Vec<TParam> {
        vec![TParam::ONE, TParam::ZERO, TParam::MINUS_ONE]
    }

    #[test]
    fn by_type_counts() {
        let r = sweep_young(7, ActionMode::Tonic, &t3(), Dedupe::ByType).unwrap();
        assert_eq!(r.rows.len(), 56);
        assert_eq!(r.groups_covered(), 678_570);
        let a = sweep_young(7, ActionMode::Atonic, &t3(), Dedupe::ByType).unwrap();
        assert_eq!(a.rows.len(), 77);
        assert_eq!(a.groups_covered(), 4_213_597);
    }

    #[test]
    fn top_row() {
        let r = sweep_young(7, ActionMode::Tonic, &t3(), Dedupe::ByType).unwrap();
        let top = &r.rows[r.ranking(0)[0]];
        assert_eq!(top.descriptor, "(2, 2, 2, 2, 2, 1)");
        assert_eq!(top.multiset().max_description(), "1 of size 32");
        assert_eq!(top.n_orbits(), 96);
        for (d, want) in top.diams().iter().zip([3.5250, 4.8324, 6.6494]) {
            assert!((d - want).abs() < 5e-5);
        }
        let last = r.row("(1, 1, 1, 1, 1, 1, 1, 1, 1, 1, 1)").unwrap();
        assert!(last.diams().iter().all(|&d| d == 1.0));
        let row = r.row("(4, 2, 2, 2, 1)").unwrap();
        assert_eq!(row.multiset().max_description(), "1 of size 48");
        assert_eq!(row.n_orbits(), 48);
    }

    #[test]
    fn argmax_is_a_set() {
        let r = sweep_young(7, ActionMode::Tonic, &t3(), Dedupe::AllSignatures).unwrap();
        assert_eq!(r.rows.len(), 1024);
        // the six arrangements of (2,2,2,2,2,1) tie
        let best = r.argmax(0, ARGMAX_TOLERANCE);
        assert_eq!(best.len(), 6);
        assert!(best.iter().any(|&i| r.rows[i].descriptor == "(2, 2, 2, 1, 2, 2)"));
    }

    #[test]
    fn partitions_of_type_sums_to_bell() {
        let total: u64 = integer_partitions(11)
            .iter()
            .map(|t| partitions_of_type(t.blocks()))
            .sum();
        assert_eq!(total, 678_570);
        assert_eq!(partitions_of_type(&[2, 2, 2, 2, 2, 1]), 10395);
    }

    #[test]
    fn bad_k() {
        assert!(matches!(
            sweep_young(0, ActionMode::Tonic, &t3(), Dedupe::ByType),
            Err(SearchError::Young(YoungError::BadK { .. }))
        ));
        assert_eq!(
            sweep_young(5, ActionMode::Tonic, &[], Dedupe::ByType),
            Err(SearchError::NoT)
        );
    }

    #[test]
    fn catalog_parse() {
        let text = "# demo\nsig ; (2 3) ; (4 5) ; order=4\n ; (1 2)\nbad ; (1 2) ; order=x\nempty ;\n";
        let (entries, diags) = parse_catalog(text);
        assert_eq!(entries.len(), 2);
        assert_eq!(entries[0].expected_order, Some(4));
        assert_eq!(entries[0].generators, vec!["(2 3)", "(4 5)"]);
        assert!(entries[1].generators.is_empty());
        assert_eq!(diags.len(), 2);
        assert_eq!(diags[0].line, Some(3));
    }

    #[test]
    fn catalog_skips_bad_entries() {
        let entries = vec![
            CatalogEntry::new("ok", &["(1 2)"]).with_order(2),
            CatalogEntry::new("wrong order", &["(1 2)"]).with_order(3),
            CatalogEntry::new("garbage", &["(1 x)"]),
            CatalogEntry::new("moves tonic", &["(0 1)"]),
        ];
        let r = sweep_catalog(&entries, 7, ActionMode::Tonic, &t3(), 2).unwrap();
        assert_eq!(r.rows.len(), 1);
        assert_eq!(r.diagnostics.len(), 3);
        assert!(r.diagnostics[0].message.contains("order"));
    }

    #[test]
    fn catalog_sigma_ranking() {
        let entries = vec![
            CatalogEntry::new("Σ", &["(2 3)", "(4 5)", "(7 8)", "(9 10)"]),
            CatalogEntry::new("Σ₁", &["(2 3)", "(4 5)", "(7 8)", "(9 10)(6 11)", "(9 11)(6 10)"]),
        ];
        let r = sweep_catalog(&entries, 5, ActionMode::Tonic, &[TParam::ONE], 1).unwrap();
        let rank = r.ranking(0);
        assert_eq!(r.rows[rank[0]].descriptor, "Σ₁");
        assert!((r.rows[rank[0]].diams()[0] - 3.1731).abs() < 5e-5);
        assert!((r.rows[rank[1]].diams()[0] - 3.1391).abs() < 5e-5);
    }

    #[test]
    fn sample_catalogs_parse() {
        for text in [SAMPLE_TONIC_CATALOG, SAMPLE_ATONIC_CATALOG] {
            let (entries, diags) = parse_catalog(text);
            assert!(diags.is_empty());
            for e in &entries {
                e.generator_set().unwrap();
            }
        }
        let r = sweep_catalog(&parse_catalog(SAMPLE_TONIC_CATALOG).0, 7, ActionMode::Tonic, &t3(), 0).unwrap();
        assert!(r.diagnostics.is_empty());
        let gamma = orbit_partition(
            &group("gamma"),
            &ScaleUniverse::enumerate(7, ActionMode::Tonic).unwrap(),
        )
        .unwrap()
        .multiset();
        assert_eq!(r.row("Γ").unwrap().multiset(), &gamma);
    }

    #[test]
    fn csv_layout() {
        let r = sweep_young(7, ActionMode::Tonic, &t3(), Dedupe::ByType).unwrap();
        let csv = r.to_csv(4);
        let mut lines = csv.lines();
        assert_eq!(
            lines.next(),
            Some("family,descriptor,max_orbit,n_orbits,diam_1,diam_0,diam_-1")
        );
        assert_eq!(lines.next(), Some("young-types,(11),462,1,1.0000,1.0000,1.0000"));
    }

    #[test]
    fn table2_order() {
        let r = reproduce_table2();
        assert_eq!(r.rows.len(), 56);
        assert_eq!(r.rows[0].descriptor, "(2, 2, 2, 2, 2, 1)");
        assert_eq!(r.rows[55].descriptor, "(1, 1, 1, 1, 1, 1, 1, 1, 1, 1, 1)");
    }
}
