//! Closed forms and sweeps checked against brute-force orbit enumeration
//! and textbook counting recurrences.

use std::collections::BTreeMap;

use rand::rngs::StdRng;
use rand::seq::IndexedRandom;
use rand::{Rng, SeedableRng};

use scaleorb::means::{musicality, TParam};
use scaleorb::named::group;
use scaleorb::orbits::orbit_partition;
use scaleorb::scales::{ActionMode, Scale, ScaleUniverse};
use scaleorb::search::{
    parse_catalog, partitions_of_type, sweep_catalog, sweep_young, Dedupe, SAMPLE_ATONIC_CATALOG, SAMPLE_TONIC_CATALOG,
};
use scaleorb::young::{
    enumerate_set_partitions, enumerate_signatures, integer_partitions, orbit_multiset_closed_form, young_generators,
    SetPartition, Signature,
};

fn brute(blocks: &SetPartition, k: usize, mode: ActionMode) -> scaleorb::OrbitMultiset {
    let gens = young_generators(blocks, mode).unwrap();
    let u = ScaleUniverse::enumerate(k, mode).unwrap();
    orbit_partition(&gens, &u).unwrap().multiset()
}

fn bell_triangle(n: usize) -> Vec<u64> {
    // bell[i] = number of set partitions of i points
    let mut bell = vec![1u64];
    let mut row = vec![1u64];
    for _ in 0..n {
        let mut next = vec![*row.last().unwrap()];
        for &x in &row {
            next.push(next.last().unwrap() + x);
        }
        bell.push(next[0]);
        row = next;
    }
    bell
}

fn partition_counts(n: usize) -> Vec<u64> {
    let mut p = vec![0u64; n + 1];
    p[0] = 1;
    for part in 1..=n {
        for m in part..=n {
            p[m] += p[m - part];
        }
    }
    p
}

fn binomial(n: u64, k: u64) -> u64 {
    (0..k).fold(1, |acc, i| acc * (n - i) / (i + 1))
}

fn random_partition(rng: &mut StdRng, n: usize) -> SetPartition {
    // random labels, then renumbered in order of first appearance
    let blocks = rng.random_range(1..=n);
    let raw: Vec<usize> = (0..n).map(|_| rng.random_range(0..blocks)).collect();
    let mut seen = BTreeMap::new();
    let labels = raw
        .iter()
        .map(|r| {
            let next = seen.len() as u8;
            *seen.entry(*r).or_insert(next)
        })
        .collect();
    SetPartition::new(labels).unwrap()
}

#[test]
fn closed_form_matches_enumeration_for_every_tonic_type() {
    for ty in integer_partitions(11) {
        let sp = SetPartition::from_signature(&ty);
        for k in [5, 6, 7] {
            let closed = orbit_multiset_closed_form(ty.blocks(), k, ActionMode::Tonic).unwrap();
            assert_eq!(closed, brute(&sp, k, ActionMode::Tonic), "type {ty}, k = {k}");
        }
    }
}

#[test]
fn closed_form_matches_enumeration_for_random_atonic_types() {
    let mut rng = StdRng::seed_from_u64(12);
    let types = integer_partitions(12);
    for _ in 0..20 {
        let ty = types.choose(&mut rng).unwrap();
        let k = rng.random_range(1..=12);
        let closed = orbit_multiset_closed_form(ty.blocks(), k, ActionMode::Atonic).unwrap();
        assert_eq!(
            closed,
            brute(&SetPartition::from_signature(ty), k, ActionMode::Atonic),
            "{ty}, k = {k}"
        );
    }
}

#[test]
fn closed_form_matches_enumeration_for_crossed_partitions() {
    let mut rng = StdRng::seed_from_u64(7);
    let mut crossed = 0;
    for _ in 0..50 {
        let sp = random_partition(&mut rng, 11);
        crossed += usize::from(!sp.without_crossings());
        let k = rng.random_range(1..=12);
        let closed = orbit_multiset_closed_form(&sp.block_sizes(), k, ActionMode::Tonic).unwrap();
        assert_eq!(closed, brute(&sp, k, ActionMode::Tonic), "{:?}, k = {k}", sp.labels());
    }
    assert!(crossed > 25, "sample should be mostly crossed partitions");
}

#[test]
fn closed_form_totals_are_binomials() {
    let sigs: Vec<Signature> = enumerate_signatures(11).collect();
    assert_eq!(sigs.len(), 1 << 10);
    for sig in &sigs {
        for k in 1..=12 {
            let m = orbit_multiset_closed_form(sig.blocks(), k, ActionMode::Tonic).unwrap();
            assert_eq!(m.total_points(), binomial(11, k as u64 - 1));
        }
    }
}

#[test]
fn counts_match_recurrences() {
    let bell = bell_triangle(12);
    assert_eq!(bell[11], 678_570);
    assert_eq!(bell[12], 4_213_597);
    let p = partition_counts(12);
    for n in 1..=12 {
        assert_eq!(
            enumerate_signatures(n).count() as u64,
            1 << (n - 1),
            "signatures of {n}"
        );
        assert_eq!(integer_partitions(n).len() as u64, p[n], "types of {n}");
        if n <= 10 {
            assert_eq!(
                enumerate_set_partitions(n).count() as u64,
                bell[n],
                "set partitions of {n}"
            );
        }
        let by_type: u64 = integer_partitions(n)
            .iter()
            .map(|t| partitions_of_type(t.blocks()))
            .sum();
        assert_eq!(by_type, bell[n], "sum of type counts for {n}");
    }
}

#[test]
fn set_partitions_by_type_match_formula() {
    let mut seen: BTreeMap<Vec<usize>, u64> = BTreeMap::new();
    for sp in enumerate_set_partitions(9) {
        let mut sizes = sp.block_sizes();
        sizes.sort_unstable_by(|a, b| b.cmp(a));
        *seen.entry(sizes).or_default() += 1;
    }
    for (ty, count) in seen {
        assert_eq!(partitions_of_type(&ty), count, "{ty:?}");
    }
}

#[test]
fn signature_sweep_agrees_with_type_sweep() {
    let t = [TParam::ONE, TParam::ZERO, TParam::MINUS_ONE];
    for k in [5, 7] {
        let by_type = sweep_young(k, ActionMode::Tonic, &t, Dedupe::ByType).unwrap();
        let all = sweep_young(k, ActionMode::Tonic, &t, Dedupe::AllSignatures).unwrap();
        assert_eq!(all.rows.len(), 1024);
        for row in &all.rows {
            let sig: Vec<usize> = row
                .descriptor
                .trim_matches(|c| c == '(' || c == ')')
                .split(", ")
                .map(|s| s.parse().unwrap())
                .collect();
            let ty = Signature::new(sig).unwrap().sorted_type();
            let rep = by_type.row(&ty.to_string()).unwrap();
            assert_eq!(row.multiset(), rep.multiset(), "{}", row.descriptor);
            assert_eq!(row.diams(), rep.diams());
        }
        assert_eq!(by_type.groups_covered(), 678_570);
        assert_eq!(all.groups_covered(), 1024);
    }
}

#[test]
fn catalog_sweep_is_deterministic_across_thread_counts() {
    let t = [TParam::ONE, TParam::ZERO, TParam::MINUS_ONE];
    for (text, k, mode) in [
        (SAMPLE_TONIC_CATALOG, 7, ActionMode::Tonic),
        (SAMPLE_ATONIC_CATALOG, 7, ActionMode::Atonic),
    ] {
        let (entries, diags) = parse_catalog(text);
        assert!(diags.is_empty(), "{diags:?}");
        let one = sweep_catalog(&entries, k, mode, &t, 1).unwrap();
        let four = sweep_catalog(&entries, k, mode, &t, 4).unwrap();
        assert!(one.diagnostics.is_empty(), "{:?}", one.diagnostics);
        assert_eq!(one.to_csv(6), four.to_csv(6));
        let labels: Vec<&str> = one.rows.iter().map(|r| r.descriptor.as_str()).collect();
        let expected: Vec<&str> = entries.iter().map(|e| e.label.as_str()).collect();
        assert_eq!(labels, expected);
    }
}

#[test]
fn major_scale_musicality() {
    let major = Scale::from_pitches(&[0, 2, 4, 5, 7, 9, 11], ActionMode::Tonic).unwrap();
    let gamma = musicality(&group("gamma"), TParam::ONE, major).unwrap();
    let delta = musicality(&group("delta"), TParam::ONE, major).unwrap();
    assert!((gamma - 3.5250).abs() < 5e-5, "{gamma}");
    assert!((delta - 2.0182).abs() < 5e-5, "{delta}");
    // under the trivial group every scale is equally musical
    let trivial = scaleorb::GeneratorSet::trivial(12);
    assert_eq!(musicality(&trivial, TParam::ONE, major).unwrap(), 1.0);
}
