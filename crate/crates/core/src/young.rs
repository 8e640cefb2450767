//! Young subgroups: direct products of full symmetric groups on the blocks
//! of a partition of the moved points. Blocks of consecutive points give a
//! group without crossings (described by a signature); arbitrary blocks
//! (described by a set partition) give its conjugates with crossings.
//!
//! The orbit-size multiset of a Young subgroup on k-note scales depends
//! only on the block sizes: one orbit of size `Π C(n_i, k_i)` for every
//! choice `0 ≤ k_i ≤ n_i` with `Σ k_i` equal to the number of free notes.

use std::fmt;

use serde::Serialize;
use thiserror::Error;

use crate::orbits::OrbitMultiset;
use crate::perm::{GeneratorSet, Permutation, DEGREE};
use crate::scales::{binomial, ActionMode};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum YoungError {
    #[error("block sizes sum to {got}, expected {expected} for {mode} mode")]
    BadSum {
        got: usize,
        expected: usize,
        mode: ActionMode,
    },
    #[error("blocks must be nonempty")]
    EmptyBlock,
    #[error("set partition is not in restricted-growth form")]
    NotRestrictedGrowth,
    #[error("k = {k} is out of range for {mode} scales")]
    BadK { k: usize, mode: ActionMode },
}

/// Composition `(n_1, …, n_d)` of the moved points into consecutive blocks.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub struct Signature(Vec<usize>);

impl Signature {
    pub fn new(blocks: Vec<usize>) -> Result<Self, YoungError> {
        if blocks.contains(&0) {
            return Err(YoungError::EmptyBlock);
        }
        Ok(Self(blocks))
    }

    pub fn blocks(&self) -> &[usize] {
        &self.0
    }

    pub fn total(&self) -> usize {
        self.0.iter().sum()
    }

    /// Block sizes sorted descending: the isomorphism type.
    pub fn sorted_type(&self) -> Signature {
        let mut b = self.0.clone();
        b.sort_unstable_by(|a, b| b.cmp(a));
        Signature(b)
    }

    /// Group order `Π n_i!`.
    pub fn group_order(&self) -> u128 {
        self.0.iter().map(|&n| (1..=n as u128).product::<u128>()).product()
    }
}

impl fmt::Display for Signature {
    /// `(2, 2, 2, 1, 2, 2)`
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.0.iter().map(ToString::to_string).collect();
        write!(f, "({})", parts.join(", "))
    }
}

/// Set partition of `n` points as a restricted-growth string: entry `i` is
/// the block label of point `i`, and label `j + 1` first appears after
/// label `j`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct SetPartition(Vec<u8>);

impl SetPartition {
    pub fn new(labels: Vec<u8>) -> Result<Self, YoungError> {
        let mut next = 0u8;
        for &l in &labels {
            if l > next {
                return Err(YoungError::NotRestrictedGrowth);
            }
            if l == next {
                next += 1;
            }
        }
        Ok(Self(labels))
    }

    /// Consecutive blocks of the given sizes.
    pub fn from_signature(sig: &Signature) -> Self {
        let labels = sig
            .blocks()
            .iter()
            .enumerate()
            .flat_map(|(i, &n)| std::iter::repeat_n(i as u8, n))
            .collect();
        Self(labels)
    }

    pub fn labels(&self) -> &[u8] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn block_count(&self) -> usize {
        self.0.iter().map(|&l| l as usize + 1).max().unwrap_or(0)
    }

    /// Point offsets grouped by block, in label order.
    pub fn blocks(&self) -> Vec<Vec<usize>> {
        let mut out = vec![Vec::new(); self.block_count()];
        for (i, &l) in self.0.iter().enumerate() {
            out[l as usize].push(i);
        }
        out
    }

    pub fn block_sizes(&self) -> Vec<usize> {
        self.blocks().iter().map(Vec::len).collect()
    }

    /// Whether every block is a run of consecutive points.
    pub fn without_crossings(&self) -> bool {
        self.0.windows(2).all(|w| w[1] == w[0] || w[1] == w[0] + 1)
    }
}

/// Where the blocks of a Young subgroup come from.
#[derive(Debug, Clone)]
pub enum Blocks<'a> {
    Signature(&'a Signature),
    Partition(&'a SetPartition),
}

impl<'a> From<&'a Signature> for Blocks<'a> {
    fn from(s: &'a Signature) -> Self {
        Blocks::Signature(s)
    }
}

impl<'a> From<&'a SetPartition> for Blocks<'a> {
    fn from(p: &'a SetPartition) -> Self {
        Blocks::Partition(p)
    }
}

/// Generators of the Young subgroup on the moved points of `mode` (1..=11
/// tonic, 0..=11 atonic): transpositions of neighbouring members within
/// each block.
pub fn young_generators<'a>(blocks: impl Into<Blocks<'a>>, mode: ActionMode) -> Result<GeneratorSet, YoungError> {
    let blocks = blocks.into();
    let (partition, label) = match blocks {
        Blocks::Signature(s) => (SetPartition::from_signature(s), s.to_string()),
        Blocks::Partition(p) => (p.clone(), format!("{:?}", p.labels())),
    };
    let expected = mode.moved_points();
    if partition.len() != expected {
        return Err(YoungError::BadSum {
            got: partition.len(),
            expected,
            mode,
        });
    }
    let offset = mode.first_point();
    let mut gens = Vec::new();
    for block in partition.blocks() {
        for w in block.windows(2) {
            gens.push(Permutation::transposition(DEGREE, w[0] + offset, w[1] + offset));
        }
    }
    Ok(GeneratorSet::new(DEGREE, gens)
        .expect("generators share the degree")
        .with_label(label))
}

/// Orbit-size multiset of the Young subgroup with these block sizes on the
/// k-note scales of `mode`, without building the group.
pub fn orbit_multiset_closed_form(
    block_sizes: &[usize],
    k: usize,
    mode: ActionMode,
) -> Result<OrbitMultiset, YoungError> {
    if block_sizes.contains(&0) {
        return Err(YoungError::EmptyBlock);
    }
    let points = mode.moved_points();
    let got: usize = block_sizes.iter().sum();
    if got != points {
        return Err(YoungError::BadSum {
            got,
            expected: points,
            mode,
        });
    }
    let free = match mode.free_notes(k) {
        Some(f) if f <= points => f,
        _ => return Err(YoungError::BadK { k, mode }),
    };
    let mut counts = std::collections::BTreeMap::new();
    // bounded odometer over (k_1, …, k_d)
    let d = block_sizes.len();
    let mut choice = vec![0usize; d];
    loop {
        if choice.iter().sum::<usize>() == free {
            let size: u64 = block_sizes
                .iter()
                .zip(&choice)
                .map(|(&n, &c)| binomial(n as u64, c as u64))
                .product();
            *counts.entry(size).or_insert(0u64) += 1;
        }
        let mut i = 0;
        loop {
            if i == d {
                return Ok(OrbitMultiset::from_counts(counts));
            }
            if choice[i] < block_sizes[i] {
                choice[i] += 1;
                break;
            }
            choice[i] = 0;
            i += 1;
        }
    }
}

/// All `2^(n-1)` compositions of `n`, lexicographic ascending.
pub fn enumerate_signatures(n: usize) -> impl Iterator<Item = Signature> {
    let cuts = n.saturating_sub(1);
    let count: u64 = if n == 0 { 0 } else { 1 << cuts };
    // cut bit i set ⇔ a block boundary after point i; more cuts early in the
    // word come first lexicographically, so walk masks from high to low with
    // bit 0 as the most significant cut
    (0..count).rev().map(move |m| {
        let mut blocks = Vec::new();
        let mut len = 1;
        for i in 0..cuts {
            if m >> (cuts - 1 - i) & 1 == 1 {
                blocks.push(len);
                len = 1;
            } else {
                len += 1;
            }
        }
        blocks.push(len);
        Signature(blocks)
    })
}

/// Integer partitions of `n` (sorted block-size types), descending
/// lexicographic.
pub fn integer_partitions(n: usize) -> Vec<Signature> {
    fn rec(n: usize, max: usize, cur: &mut Vec<usize>, out: &mut Vec<Signature>) {
        if n == 0 {
            out.push(Signature(cur.clone()));
            return;
        }
        for part in (1..=n.min(max)).rev() {
            cur.push(part);
            rec(n - part, part, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    rec(n, n, &mut Vec::new(), &mut out);
    out
}

/// Iterator over all set partitions of `n` points in restricted-growth
/// order, starting from the single block.
pub struct SetPartitions {
    labels: Vec<u8>,
    /// `prefix_max[i]` = max of `labels[..=i]`
    prefix_max: Vec<u8>,
    done: bool,
}

impl Iterator for SetPartitions {
    type Item = SetPartition;

    fn next(&mut self) -> Option<SetPartition> {
        if self.done {
            return None;
        }
        let out = SetPartition(self.labels.clone());
        let n = self.labels.len();
        // rightmost position that can grow
        let mut i = n;
        loop {
            if i <= 1 {
                self.done = true;
                break;
            }
            i -= 1;
            if self.labels[i] <= self.prefix_max[i - 1] {
                self.labels[i] += 1;
                self.prefix_max[i] = self.prefix_max[i - 1].max(self.labels[i]);
                for j in i + 1..n {
                    self.labels[j] = 0;
                    self.prefix_max[j] = self.prefix_max[i];
                }
                break;
            }
        }
        Some(out)
    }
}

pub fn enumerate_set_partitions(n: usize) -> SetPartitions {
    SetPartitions {
        labels: vec![0; n],
        prefix_max: vec![0; n],
        done: n == 0,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::collections::BTreeSet;

    fn sig(b: &[usize]) -> Signature {
        Signature::new(b.to_vec()).unwrap()
    }

    #[test]
    fn gamma_generators() {
        let g = young_generators(&sig(&[2, 2, 2, 1, 2, 2]), ActionMode::Tonic).unwrap();
        let expected = GeneratorSet::parse_list("(1 2);(3 4);(5 6);(8 9);(10 11)", 12).unwrap();
        assert_eq!(g.generators(), expected.generators());
        assert_eq!(g.label(), Some("(2, 2, 2, 1, 2, 2)"));
    }

    #[test]
    fn trivial_and_delta() {
        let g = young_generators(&sig(&[1; 11]), ActionMode::Tonic).unwrap();
        assert!(g.generators().is_empty());
        assert_eq!(g.order(), 1);
        let delta = young_generators(&sig(&[4, 2, 1, 4]), ActionMode::Tonic).unwrap();
        assert_eq!(delta.order(), 24 * 2 * 24);
        assert_eq!(sig(&[4, 2, 1, 4]).group_order(), 1152);
    }

    #[test]
    fn atonic_generators_start_at_zero() {
        let g = young_generators(&sig(&[2, 10]), ActionMode::Atonic).unwrap();
        assert_eq!(g.generators()[0], Permutation::transposition(12, 0, 1));
        assert!(!g.tonic_fixing());
        assert!(young_generators(&sig(&[2, 9]), ActionMode::Atonic).is_err());
        assert!(matches!(
            young_generators(&sig(&[2, 10]), ActionMode::Tonic),
            Err(YoungError::BadSum {
                got: 12,
                expected: 11,
                ..
            })
        ));
    }

    #[test]
    fn crossed_partition_generators() {
        // blocks {1,4} and {2,3}, everything else single
        let p = SetPartition::new(vec![0, 1, 1, 0, 2, 3, 4, 5, 6, 7, 8]).unwrap();
        assert!(!p.without_crossings());
        let g = young_generators(&p, ActionMode::Tonic).unwrap();
        let expected = GeneratorSet::parse_list("(1 4);(2 3)", 12).unwrap();
        assert_eq!(g.generators(), expected.generators());
    }

    #[test]
    fn closed_form_examples() {
        let gamma = orbit_multiset_closed_form(&[2, 2, 2, 1, 2, 2], 7, ActionMode::Tonic).unwrap();
        assert_eq!(
            gamma,
            OrbitMultiset::from_counts([(32, 1), (16, 5), (8, 20), (4, 30), (2, 30), (1, 10)])
        );
        let whole = orbit_multiset_closed_form(&[11], 7, ActionMode::Tonic).unwrap();
        assert_eq!(whole, OrbitMultiset::from_counts([(462, 1)]));
        let d1 = orbit_multiset_closed_form(&[4, 3, 4], 7, ActionMode::Tonic).unwrap();
        assert_eq!(d1.max_size(), Some(108));
        assert_eq!(d1.total_orbits(), 16);
        assert_eq!(d1.sum_of_squares(), 28458);
    }

    #[test]
    fn closed_form_errors() {
        assert!(matches!(
            orbit_multiset_closed_form(&[2, 2], 3, ActionMode::Tonic),
            Err(YoungError::BadSum { .. })
        ));
        assert!(matches!(
            orbit_multiset_closed_form(&[11], 0, ActionMode::Tonic),
            Err(YoungError::BadK { .. })
        ));
        assert!(matches!(
            orbit_multiset_closed_form(&[12], 13, ActionMode::Atonic),
            Err(YoungError::BadK { .. })
        ));
        assert_eq!(
            orbit_multiset_closed_form(&[11, 0], 3, ActionMode::Tonic),
            Err(YoungError::EmptyBlock)
        );
    }

    #[test]
    fn closed_form_totals_for_all_signatures() {
        for s in enumerate_signatures(11) {
            for k in 1..=12 {
                let m = orbit_multiset_closed_form(s.blocks(), k, ActionMode::Tonic).unwrap();
                assert_eq!(m.total_points(), binomial(11, k as u64 - 1), "{s} k={k}");
            }
        }
    }

    #[test]
    fn signature_counts() {
        assert_eq!(enumerate_signatures(11).count(), 1024);
        let two: Vec<Signature> = enumerate_signatures(2).collect();
        assert_eq!(two, vec![sig(&[1, 1]), sig(&[2])]);
        let types: BTreeSet<Signature> = enumerate_signatures(11).map(|s| s.sorted_type()).collect();
        assert_eq!(types.len(), 56);
        assert_eq!(integer_partitions(11).len(), 56);
        assert_eq!(types, integer_partitions(11).into_iter().collect());
    }

    #[test]
    fn signatures_are_lexicographic_compositions() {
        let all: Vec<Signature> = enumerate_signatures(5).collect();
        assert!(all.windows(2).all(|w| w[0] < w[1]));
        assert!(all.iter().all(|s| s.total() == 5));
        assert_eq!(all.len(), 16);
    }

    #[test]
    fn set_partition_counts() {
        assert_eq!(enumerate_set_partitions(1).count(), 1);
        assert_eq!(enumerate_set_partitions(3).count(), 5);
        let p4: Vec<SetPartition> = enumerate_set_partitions(4).collect();
        assert_eq!(p4.len(), 15);
        assert!(p4.windows(2).all(|w| w[0] < w[1]));
        assert_eq!(p4[0].labels(), &[0, 0, 0, 0]);
        assert_eq!(p4[14].labels(), &[0, 1, 2, 3]);
    }

    #[test]
    fn restricted_growth_validation() {
        assert!(SetPartition::new(vec![0, 2]).is_err());
        assert!(SetPartition::new(vec![1]).is_err());
        assert!(SetPartition::new(vec![0, 1, 0, 2]).is_ok());
        let p = SetPartition::from_signature(&sig(&[2, 1, 3]));
        assert_eq!(p.labels(), &[0, 0, 1, 2, 2, 2]);
        assert!(p.without_crossings());
        assert_eq!(p.block_sizes(), vec![2, 1, 3]);
    }
}
