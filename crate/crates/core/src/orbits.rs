//! Orbits of scale universes under generator sets.
//!
//! Orbits are found by breadth-first closure over the generators on a
//! visited array indexed by mask. No group elements are enumerated, so the
//! cost does not depend on the group order.

use std::collections::BTreeMap;
use std::fmt;
use std::io;

use serde::Serialize;

use crate::perm::GeneratorSet;
use crate::registry::NameRegistry;
use crate::scales::{act_mask, check_mode, Scale, ScaleError, ScaleUniverse};

/// Partition of a universe into orbits, numbered by least member mask.
#[derive(Debug, Clone)]
pub struct OrbitPartition {
    universe: ScaleUniverse,
    orbit_id: Vec<u32>,
    orbits: Vec<Vec<u32>>,
}

impl OrbitPartition {
    pub fn universe(&self) -> &ScaleUniverse {
        &self.universe
    }

    /// Orbit index of every universe member.
    pub fn orbit_ids(&self) -> &[u32] {
        &self.orbit_id
    }

    /// Member indices per orbit, each ascending.
    pub fn orbits(&self) -> &[Vec<u32>] {
        &self.orbits
    }

    pub fn len(&self) -> usize {
        self.orbits.len()
    }

    pub fn is_empty(&self) -> bool {
        self.orbits.is_empty()
    }

    pub fn orbit_scales(&self, orbit: usize) -> Vec<Scale> {
        self.orbits[orbit]
            .iter()
            .map(|&i| self.universe.members()[i as usize])
            .collect()
    }

    /// Orbit containing `s`, if `s` is in the universe.
    pub fn orbit_containing(&self, s: Scale) -> Option<usize> {
        if !self.universe.contains(s) {
            return None;
        }
        let i = self.universe.index_of(s.mask())?;
        Some(self.orbit_id[i] as usize)
    }

    pub fn orbit_size_of(&self, s: Scale) -> Option<usize> {
        self.orbit_containing(s).map(|o| self.orbits[o].len())
    }

    pub fn multiset(&self) -> OrbitMultiset {
        OrbitMultiset::from_sizes(self.orbits.iter().map(Vec::len).map(|n| n as u64))
    }

    pub fn max_orbit_size(&self) -> usize {
        self.orbits.iter().map(Vec::len).max().unwrap_or(0)
    }

    /// Union of all orbits of maximal size, ascending by mask.
    pub fn maximal_orbit_scales(&self) -> Vec<Scale> {
        let max = self.max_orbit_size();
        let mut out: Vec<Scale> = self
            .orbits
            .iter()
            .filter(|o| o.len() == max)
            .flatten()
            .map(|&i| self.universe.members()[i as usize])
            .collect();
        out.sort_unstable();
        out
    }

    /// CSV dump: `orbit_id,size,member_masks,names`. Masks are hex and
    /// `;`-joined; names come from the registry, `;`-joined.
    pub fn write_csv<W: io::Write>(&self, out: W, registry: &NameRegistry) -> csv::Result<()> {
        write_rows_csv(&self.rows(registry), out)
    }

    /// One serializable row per orbit, in orbit-id order.
    pub fn rows(&self, registry: &NameRegistry) -> Vec<OrbitRow> {
        self.orbits
            .iter()
            .enumerate()
            .map(|(id, members)| {
                let scales: Vec<Scale> = members.iter().map(|&i| self.universe.members()[i as usize]).collect();
                OrbitRow {
                    orbit_id: id,
                    size: members.len(),
                    member_masks: scales.iter().map(|s| format!("{:03x}", s.mask())).collect(),
                    names: scales
                        .iter()
                        .flat_map(|&s| registry.lookup_names(s))
                        .map(str::to_string)
                        .collect(),
                }
            })
            .collect()
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct OrbitRow {
    pub orbit_id: usize,
    pub size: usize,
    pub member_masks: Vec<String>,
    pub names: Vec<String>,
}

/// Writes rows in the given order, same columns as [`OrbitPartition::write_csv`].
pub fn write_rows_csv<W: io::Write>(rows: &[OrbitRow], out: W) -> csv::Result<()> {
    let mut w = csv::Writer::from_writer(out);
    w.write_record(["orbit_id", "size", "member_masks", "names"])?;
    for row in rows {
        w.write_record([
            row.orbit_id.to_string(),
            row.size.to_string(),
            row.member_masks.join(";"),
            row.names.join(";"),
        ])?;
    }
    w.flush()?;
    Ok(())
}

/// Computes the orbit partition of `universe` under `gens`.
pub fn orbit_partition(gens: &GeneratorSet, universe: &ScaleUniverse) -> Result<OrbitPartition, ScaleError> {
    check_mode(gens, universe.mode())?;
    let n = universe.len();
    let mut orbit_id = vec![u32::MAX; n];
    let mut orbits: Vec<Vec<u32>> = Vec::new();
    let mut queue: Vec<u32> = Vec::new();
    for start in 0..n {
        if orbit_id[start] != u32::MAX {
            continue;
        }
        let id = orbits.len() as u32;
        orbit_id[start] = id;
        queue.clear();
        queue.push(start as u32);
        let mut head = 0;
        while head < queue.len() {
            let mask = universe.members()[queue[head] as usize].mask();
            head += 1;
            for g in gens.generators() {
                let j = universe
                    .index_of(act_mask(g, mask))
                    .expect("the action preserves cardinality and mode");
                if orbit_id[j] == u32::MAX {
                    orbit_id[j] = id;
                    queue.push(j as u32);
                }
            }
        }
        let mut members = queue.clone();
        members.sort_unstable();
        orbits.push(members);
    }
    Ok(OrbitPartition {
        universe: universe.clone(),
        orbit_id,
        orbits,
    })
}

/// The orbit of a single scale, ascending by mask.
pub fn orbit_of(gens: &GeneratorSet, s: Scale) -> Result<Vec<Scale>, ScaleError> {
    check_mode(gens, s.mode())?;
    let mut seen = vec![false; 1 << 12];
    seen[s.mask() as usize] = true;
    let mut queue = vec![s.mask()];
    let mut head = 0;
    while head < queue.len() {
        let mask = queue[head];
        head += 1;
        for g in gens.generators() {
            let image = act_mask(g, mask);
            if !std::mem::replace(&mut seen[image as usize], true) {
                queue.push(image);
            }
        }
    }
    queue.sort_unstable();
    Ok(queue
        .into_iter()
        .map(|m| Scale::new(m, s.mode()).expect("the action preserves mode"))
        .collect())
}

/// Multiset of orbit sizes with totals.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Default, Serialize)]
pub struct OrbitMultiset {
    size_counts: BTreeMap<u64, u64>,
    total_points: u64,
    total_orbits: u64,
}

impl OrbitMultiset {
    pub fn from_sizes(sizes: impl IntoIterator<Item = u64>) -> Self {
        let mut m = Self::default();
        for s in sizes {
            m.insert(s, 1);
        }
        m
    }

    /// Builds from `(size, multiplicity)` pairs.
    pub fn from_counts(counts: impl IntoIterator<Item = (u64, u64)>) -> Self {
        let mut m = Self::default();
        for (s, c) in counts {
            m.insert(s, c);
        }
        m
    }

    fn insert(&mut self, size: u64, count: u64) {
        assert!(size > 0, "orbit sizes are positive");
        if count == 0 {
            return;
        }
        *self.size_counts.entry(size).or_insert(0) += count;
        self.total_points += size * count;
        self.total_orbits += count;
    }

    pub fn size_counts(&self) -> &BTreeMap<u64, u64> {
        &self.size_counts
    }

    pub fn total_points(&self) -> u64 {
        self.total_points
    }

    pub fn total_orbits(&self) -> u64 {
        self.total_orbits
    }

    pub fn is_empty(&self) -> bool {
        self.total_orbits == 0
    }

    pub fn max_size(&self) -> Option<u64> {
        self.size_counts.keys().next_back().copied()
    }

    pub fn min_size(&self) -> Option<u64> {
        self.size_counts.keys().next().copied()
    }

    pub fn count_of(&self, size: u64) -> u64 {
        self.size_counts.get(&size).copied().unwrap_or(0)
    }

    /// Number of orbits of maximal size.
    pub fn max_count(&self) -> u64 {
        self.max_size().map_or(0, |s| self.count_of(s))
    }

    /// `Σ |O|²`, the numerator of the mean orbit size of an element.
    pub fn sum_of_squares(&self) -> u128 {
        self.size_counts
            .iter()
            .map(|(&s, &c)| s as u128 * s as u128 * c as u128)
            .sum()
    }

    /// `"1 of size 32"`-style description of the maximal orbits.
    pub fn max_description(&self) -> String {
        format!("{} of size {}", self.max_count(), self.max_size().unwrap_or(0))
    }
}

impl fmt::Display for OrbitMultiset {
    /// `{32:1, 16:5, ...}` with sizes descending.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.size_counts.iter().rev().map(|(s, c)| format!("{s}:{c}")).collect();
        write!(f, "{{{}}}", parts.join(", "))
    }
}

pub fn multiset(partition: &OrbitPartition) -> OrbitMultiset {
    partition.multiset()
}

pub fn maximal_orbit_scales(partition: &OrbitPartition) -> Vec<Scale> {
    partition.maximal_orbit_scales()
}
