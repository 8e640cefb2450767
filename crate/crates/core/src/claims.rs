//! Registry of quantitative statements about the named groups, each
//! recomputed from scratch and compared with its published value.
//!
//! Numeric values published to four decimals are compared with tolerance
//! [`NUMERIC_TOLERANCE`]; counts and scale sets must match exactly.

use std::collections::BTreeSet;
use std::fmt;

use serde::Serialize;
use thiserror::Error;

use crate::means::{diam_t, linspace, musicality, orb_t, power_mean, TParam};
use crate::named::group;
use crate::orbits::{orbit_of, orbit_partition, OrbitMultiset, OrbitPartition};
use crate::perm::{parse_cycles, GeneratorSet, StabilizerChain, DEGREE};
use crate::registry::NameRegistry;
use crate::scales::{binomial, ActionMode, Complement, Scale, ScaleUniverse};
use crate::search::{
    parse_catalog, reproduce_table2, sweep_catalog, sweep_young, CatalogEntry, Dedupe, SweepReport, ARGMAX_TOLERANCE,
    SAMPLE_ATONIC_CATALOG,
};
use crate::young::{
    enumerate_set_partitions, enumerate_signatures, integer_partitions, orbit_multiset_closed_form, young_generators,
};

pub const NUMERIC_TOLERANCE: f64 = 5e-5;

const TABLE2: &str = include_str!("../data/table2.txt");

#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("unknown claim {0:?}")]
pub struct UnknownClaim(pub String);

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct VerdictRecord {
    pub claim_id: String,
    pub description: String,
    pub expected: String,
    pub computed: String,
    pub pass: bool,
    /// 0 for claims checked exactly.
    pub tolerance: f64,
    /// Labels of the failed sub-checks.
    pub failures: Vec<String>,
    pub note: Option<String>,
}

impl fmt::Display for VerdictRecord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let verdict = if self.pass { "PASS" } else { "FAIL" };
        write!(f, "{verdict} {}: {}", self.claim_id, self.description)?;
        if !self.failures.is_empty() {
            write!(f, " [failed: {}]", self.failures.join(", "))?;
        }
        if let Some(note) = &self.note {
            write!(f, " (note: {note})")?;
        }
        Ok(())
    }
}

struct Item {
    label: String,
    expected: String,
    computed: String,
    pass: bool,
}

#[derive(Default)]
struct Checker {
    items: Vec<Item>,
    numeric: bool,
    note: Option<String>,
}

impl Checker {
    fn item(&mut self, label: &str, expected: String, computed: String, pass: bool) {
        self.items.push(Item {
            label: label.to_string(),
            expected,
            computed,
            pass,
        });
    }

    fn exact<T: PartialEq + fmt::Display>(&mut self, label: &str, expected: T, computed: T) {
        let pass = expected == computed;
        self.item(label, expected.to_string(), computed.to_string(), pass);
    }

    fn holds(&mut self, label: &str, cond: bool) {
        self.exact(label, true, cond);
    }

    fn num(&mut self, label: &str, expected: f64, computed: f64) {
        self.numeric = true;
        let pass = (expected - computed).abs() <= NUMERIC_TOLERANCE;
        self.item(label, format!("{expected:.4}"), format!("{computed:.6}"), pass);
    }

    fn nums(&mut self, label: &str, ts: &[&str], expected: &[f64], computed: &[f64]) {
        for ((t, &e), &c) in ts.iter().zip(expected).zip(computed) {
            self.num(&format!("{label} t={t}"), e, c);
        }
    }

    fn set(&mut self, label: &str, expected: &BTreeSet<u16>, computed: &BTreeSet<u16>) {
        let missing = expected.difference(computed).count();
        let extra = computed.difference(expected).count();
        let shown = if missing + extra == 0 {
            format!("{} scales", computed.len())
        } else {
            format!("{} scales ({missing} missing, {extra} extra)", computed.len())
        };
        self.item(label, format!("{} scales", expected.len()), shown, missing + extra == 0);
    }

    fn finish(self, id: &str, description: &str) -> VerdictRecord {
        let join = |f: fn(&Item) -> &str| {
            self.items
                .iter()
                .map(|i| format!("{}: {}", i.label, f(i)))
                .collect::<Vec<_>>()
                .join("; ")
        };
        VerdictRecord {
            claim_id: id.to_string(),
            description: description.to_string(),
            expected: join(|i| &i.expected),
            computed: join(|i| &i.computed),
            pass: self.items.iter().all(|i| i.pass),
            tolerance: if self.numeric { NUMERIC_TOLERANCE } else { 0.0 },
            failures: self.items.iter().filter(|i| !i.pass).map(|i| i.label.clone()).collect(),
            note: self.note,
        }
    }
}

pub struct Claim {
    pub id: &'static str,
    pub description: &'static str,
    check: fn(&mut Checker),
}

pub const CLAIMS: &[Claim] = &[
    Claim {
        id: "PASCAL-ROWS",
        description: "number of k-note tonic and atonic scales",
        check: pascal_rows,
    },
    Claim {
        id: "PROP41",
        description: "1024 signatures, 678570 set partitions of 11 points, 56 types; 4213597 partitions of 12",
        check: prop41,
    },
    Claim {
        id: "GROUP-ORDERS",
        description: "orders of the named groups",
        check: group_orders,
    },
    Claim {
        id: "ACTION-EXAMPLE",
        description: "(3 4)(8 9) swaps the major and harmonic minor scales",
        check: action_example,
    },
    Claim {
        id: "GAMMA-DIST",
        description: "orbit sizes and diameters of Γ on 7-note tonic scales",
        check: gamma_dist,
    },
    Claim {
        id: "GAMMA-THATS",
        description: "the maximal Γ-orbit is the 32 thāts",
        check: gamma_thats,
    },
    Claim {
        id: "GAMMA1-UNION",
        description: "maximal Γ₁-orbit is the union of the maximal Γ- and Γ₋-orbits (48 = 32+32−16)",
        check: gamma1_union,
    },
    Claim {
        id: "DELTA-MELAKARTA",
        description: "the maximal Δ-orbit is the 72 mēḷakarta ragas",
        check: delta_melakarta,
    },
    Claim {
        id: "DELTA-INTERSECT",
        description: "maximal Δ- and Δ₋-orbits meet in 36 scales",
        check: delta_intersect,
    },
    Claim {
        id: "DELTA1-NEW20",
        description: "maximal Δ₁-orbit (108 = 72+72−36) adds 20 new scales",
        check: delta1_new20,
    },
    Claim {
        id: "LATTICE-DIAM",
        description: "diam_1 of the eight heptatonic lattice groups",
        check: lattice_diam,
    },
    Claim {
        id: "T7-EQUALITIES",
        description: "maximal-orbit scales of Γ₀ and Γ₁ agree, as do those of Δ₀ and Δ₁",
        check: t7_equalities,
    },
    Claim {
        id: "MUSICALITY",
        description: "musicality of the major scale under Γ and Δ",
        check: musicality_claim,
    },
    Claim {
        id: "TABLE2",
        description: "diameters of all 56 maximal twelve tone groups on 7-note tonic scales",
        check: table2,
    },
    Claim {
        id: "THM12-YOUNG",
        description: "(2,2,2,2,2,1) is the strict diam_t maximizer among Young subgroups on 7-note scales, t in [−1,1]",
        check: thm12_young,
    },
    Claim {
        id: "THM61",
        description: "Γ on 6-note tonic scales mirrors 7-note scales by complementarity",
        check: thm61,
    },
    Claim {
        id: "HEXA",
        description: "hexatonic scales in the maximal Λ- and Λ′-orbits",
        check: hexa,
    },
    Claim {
        id: "HEXA-BLUES",
        description: "the blues hexatonic scales have Λ- and Λ′-orbits of size 16",
        check: hexa_blues,
    },
    Claim {
        id: "SIGMA-PENTA",
        description: "the maximal Σ-orbit is the 16 pentatonic scales of the table",
        check: sigma_penta,
    },
    Claim {
        id: "SIGMA-DIST",
        description: "orbit sizes and diameters of Σ on 5-note tonic scales",
        check: sigma_dist,
    },
    Claim {
        id: "SIGMA1-DIST",
        description: "orbit sizes and diameters of Σ₁ on 5-note tonic scales",
        check: sigma1_dist,
    },
    Claim {
        id: "SIGMA-RANK",
        description: "Σ₁ outranks Σ on [−1,1]; Σ's type leads the Young subgroups on [0,1]",
        check: sigma_rank,
    },
    Claim {
        id: "TABLE4",
        description: "the three subgroups of S_12 with largest diameter on 7-note atonic scales",
        check: table4,
    },
    Claim {
        id: "ATONIC-PENTA",
        description: "⟨(11 0),(2 3),(4 5),(7 8),(9 10)⟩ on 5-note atonic scales: largest orbit 32, half tonic",
        check: atonic_penta,
    },
    Claim {
        id: "FIG1",
        description: "M_t(2,2,7,8,10) is an increasing sigmoid from 2 to 10",
        check: fig1,
    },
    Claim {
        id: "FIG2",
        description: "orb_t and diam_t for orbit sizes 2, 2, 7, 8, 10",
        check: fig2,
    },
];

pub fn claim_ids() -> impl Iterator<Item = &'static str> {
    CLAIMS.iter().map(|c| c.id)
}

pub fn verify_claim(id: &str) -> Result<VerdictRecord, UnknownClaim> {
    let claim = CLAIMS
        .iter()
        .find(|c| c.id.eq_ignore_ascii_case(id))
        .ok_or_else(|| UnknownClaim(id.to_string()))?;
    let mut checker = Checker::default();
    (claim.check)(&mut checker);
    Ok(checker.finish(claim.id, claim.description))
}

pub fn verify_all() -> Vec<VerdictRecord> {
    CLAIMS
        .iter()
        .map(|c| verify_claim(c.id).expect("registered claim"))
        .collect()
}

// ---- helpers ----

const T_CRIT: [&str; 3] = ["1", "0", "-1"];

fn t_crit() -> [TParam; 3] {
    [TParam::ONE, TParam::ZERO, TParam::MINUS_ONE]
}

/// 41 evenly spaced points on [−1, 1].
fn t_grid() -> Vec<TParam> {
    linspace(-1.0, 1.0, 41)
        .into_iter()
        .map(|t| TParam::new(t).expect("finite"))
        .collect()
}

fn universe(k: usize, mode: ActionMode) -> ScaleUniverse {
    ScaleUniverse::enumerate(k, mode).expect("valid k")
}

fn partition_of(gens: &GeneratorSet, k: usize, mode: ActionMode) -> OrbitPartition {
    orbit_partition(gens, &universe(k, mode)).expect("mode matches")
}

fn tonic_partition(key: &str, k: usize) -> OrbitPartition {
    partition_of(&group(key), k, ActionMode::Tonic)
}

fn max_set(p: &OrbitPartition) -> BTreeSet<u16> {
    p.maximal_orbit_scales().iter().map(|s| s.mask()).collect()
}

fn diams(m: &OrbitMultiset) -> Vec<f64> {
    t_crit().iter().map(|&t| diam_t(m, t).expect("nonempty")).collect()
}

fn counts(c: &[(u64, u64)]) -> OrbitMultiset {
    OrbitMultiset::from_counts(c.iter().copied())
}

fn table_set(tag: &str) -> BTreeSet<u16> {
    NameRegistry::embedded().table_masks(tag).into_iter().collect()
}

fn named_scale(name: &str) -> Scale {
    NameRegistry::embedded()
        .find(name)
        .unwrap_or_else(|| panic!("registry has {name}"))
}

fn pitches(p: &[u8]) -> Scale {
    Scale::from_pitches(p, ActionMode::Tonic).expect("valid pitches")
}

/// Scales built by choosing exactly `n` pitches from each group, e.g.
/// `{0} ∪ {two of 1,2,3,4} ∪ …`.
fn build(groups: &[(&[u8], usize)]) -> BTreeSet<u16> {
    let mut out = BTreeSet::from([1u16]);
    for &(pool, n) in groups {
        let mut next = BTreeSet::new();
        for pick in 0u32..1 << pool.len() {
            if pick.count_ones() as usize != n {
                continue;
            }
            let bits = pool
                .iter()
                .enumerate()
                .filter(|(i, _)| pick >> i & 1 == 1)
                .fold(0u16, |m, (_, &p)| m | 1 << p);
            next.extend(out.iter().map(|m| m | bits));
        }
        out = next;
    }
    out
}

fn union(a: &BTreeSet<u16>, b: &BTreeSet<u16>) -> BTreeSet<u16> {
    a.union(b).copied().collect()
}

fn inter(a: &BTreeSet<u16>, b: &BTreeSet<u16>) -> BTreeSet<u16> {
    a.intersection(b).copied().collect()
}

fn minus(a: &BTreeSet<u16>, b: &BTreeSet<u16>) -> BTreeSet<u16> {
    a.difference(b).copied().collect()
}

fn contains_group(big: &GeneratorSet, small: &GeneratorSet) -> bool {
    let chain = StabilizerChain::new(big);
    small.generators().iter().all(|g| chain.contains(g))
}

fn row_list(v: &[u64]) -> String {
    v.iter().map(u64::to_string).collect::<Vec<_>>().join(" ")
}

// ---- claims ----

fn pascal_rows(c: &mut Checker) {
    let tonic: Vec<u64> = (1..=12).map(|k| universe(k, ActionMode::Tonic).len() as u64).collect();
    c.exact(
        "tonic k=1..12",
        "1 11 55 165 330 462 462 330 165 55 11 1".to_string(),
        row_list(&tonic),
    );
    let atonic: Vec<u64> = (1..=12).map(|k| universe(k, ActionMode::Atonic).len() as u64).collect();
    let pascal: Vec<u64> = (1..=12).map(|k| binomial(12, k)).collect();
    c.exact("atonic k=1..12", row_list(&pascal), row_list(&atonic));
    c.exact("all atonic scales", 4096, atonic.iter().sum::<u64>() + 1);
    c.exact("heptatonic", 462, tonic[6]);
    c.exact("pentatonic", 330, tonic[4]);
}

fn prop41(c: &mut Checker) {
    c.exact("signatures of 11", 1024, enumerate_signatures(11).count());
    c.exact("set partitions of 11", 678_570, enumerate_set_partitions(11).count());
    c.exact("types p(11)", 56, integer_partitions(11).len());
    c.exact("set partitions of 12", 4_213_597, enumerate_set_partitions(12).count());
    let sweep = sweep_young(7, ActionMode::Tonic, &[TParam::ONE], Dedupe::ByType).expect("valid");
    c.exact("partitions covered by the 56 types", 678_570, sweep.groups_covered());
}

fn group_orders(c: &mut Checker) {
    c.exact("Γ", 32, group("gamma").order());
    c.exact("Δ = S4×S2×S1×S4", 1152, group("delta").order());
    c.exact("Σ ≅ Z2^4", 16, group("sigma").order());
    c.exact("Σ₁ ≅ Z2^5", 32, group("sigma1").order());
    c.exact("S11", 39_916_800, group("s11").order());
    let elementary = |gens: &GeneratorSet| {
        gens.generators().iter().all(|g| {
            g.compose(g).expect("same degree").is_identity()
                && gens.generators().iter().all(|h| g.compose(h).ok() == h.compose(g).ok())
        })
    };
    c.holds("Σ₁ elementary abelian", elementary(&group("sigma1")));
    // so Σ ≅ Z2^4 embeds in Σ₁ ≅ Z2^5 as an abstract group; it is not a
    // subgroup of Σ₁ as a permutation group, since (9 10) ∉ Σ₁
    c.holds("Σ elementary abelian", elementary(&group("sigma")));
}

fn action_example(c: &mut Checker) {
    let p = parse_cycles("(3 4)(8 9)", DEGREE).expect("valid cycles");
    let major = pitches(&[0, 2, 4, 5, 7, 9, 11]);
    let harmonic = pitches(&[0, 2, 3, 5, 7, 8, 11]);
    c.exact("image of major", harmonic, major.act(&p).expect("fixes 0"));
    c.exact("image of harmonic minor", major, harmonic.act(&p).expect("fixes 0"));
    c.holds(
        "harmonic minor is named",
        NameRegistry::embedded()
            .lookup_names(harmonic)
            .contains(&"harmonic minor"),
    );
}

fn gamma_dist(c: &mut Checker) {
    let m = tonic_partition("gamma", 7).multiset();
    c.exact(
        "multiset",
        counts(&[(32, 1), (16, 5), (8, 20), (4, 30), (2, 30), (1, 10)]),
        m.clone(),
    );
    c.exact("orbits", 96, m.total_orbits());
    c.exact("Σ size²", 4194, m.sum_of_squares());
    c.nums("diam", &T_CRIT, &[3.5250, 4.8324, 6.6494], &diams(&m));
}

fn gamma_thats(c: &mut Checker) {
    let thats = table_set("T1");
    let major = pitches(&[0, 2, 4, 5, 7, 9, 11]);
    let orbit: BTreeSet<u16> = orbit_of(&group("gamma"), major)
        .expect("tonic")
        .iter()
        .map(|s| s.mask())
        .collect();
    c.set("orbit of the major scale", &thats, &orbit);
    let p = tonic_partition("gamma", 7);
    c.set("maximal orbit", &thats, &max_set(&p));
    c.exact("maximal orbits", 1, p.multiset().count_of(32));
    let built = build(&[
        (&[1, 2], 1),
        (&[3, 4], 1),
        (&[5, 6], 1),
        (&[7], 1),
        (&[8, 9], 1),
        (&[10, 11], 1),
    ]);
    c.set("{0, 1|2, 3|4, 5|6, 7, 8|9, 10|11}", &thats, &built);
}

fn gamma1_union(c: &mut Checker) {
    let g = max_set(&tonic_partition("gamma", 7));
    let gm = tonic_partition("gamma-", 7);
    let g1 = tonic_partition("gamma1", 7);
    c.exact(
        "Γ₋ multiset equals Γ multiset",
        tonic_partition("gamma", 7).multiset(),
        gm.multiset(),
    );
    let gm_max = max_set(&gm);
    let built = build(&[
        (&[1, 2], 1),
        (&[3, 4], 1),
        (&[5], 1),
        (&[6, 7], 1),
        (&[8, 9], 1),
        (&[10, 11], 1),
    ]);
    c.set("maximal Γ₋-orbit {0, 1|2, 3|4, 5, 6|7, 8|9, 10|11}", &built, &gm_max);
    c.holds("major scale in maximal Γ₋-orbit", gm_max.contains(&0xab5));
    let meet = build(&[(&[1, 2], 1), (&[3, 4], 1), (&[5, 7], 2), (&[8, 9], 1), (&[10, 11], 1)]);
    c.set("Γ ∩ Γ₋ maximal orbits", &meet, &inter(&g, &gm_max));
    c.set(
        "Γ₋ extras = the 16 scales with G♭",
        &table_set("T3"),
        &minus(&gm_max, &g),
    );
    let g1_max = max_set(&g1);
    c.set("maximal Γ₁-orbit = union", &union(&g, &gm_max), &g1_max);
    c.exact("48 = 32+32−16", 48, g1_max.len());
    let m = g1.multiset();
    c.exact(
        "Γ₁ multiset",
        counts(&[
            (48, 1),
            (24, 4),
            (12, 12),
            (8, 4),
            (6, 12),
            (4, 6),
            (3, 6),
            (2, 12),
            (1, 4),
        ]),
        m.clone(),
    );
    c.exact("Γ₁ orbits", 61, m.total_orbits());
    c.exact("Γ₁ Σ size²", 7226, m.sum_of_squares());
    let d1 = diams(&m);
    c.nums("Γ₁ diam", &T_CRIT, &[3.0689, 4.3060, 6.3377], &d1);
    let d = diams(&tonic_partition("gamma", 7).multiset());
    c.num("diam_1 ratio Γ/Γ₁", 1.1486, d[0] / d1[0]);
    c.num("diam_-1 ratio Γ/Γ₁", 1.0492, d[2] / d1[2]);
}

fn melakarta() -> BTreeSet<u16> {
    build(&[(&[1, 2, 3, 4], 2), (&[5, 6], 1), (&[7], 1), (&[8, 9, 10, 11], 2)])
}

fn delta_minus_built() -> BTreeSet<u16> {
    build(&[(&[1, 2, 3, 4], 2), (&[5], 1), (&[6, 7], 1), (&[8, 9, 10, 11], 2)])
}

fn delta_melakarta(c: &mut Checker) {
    let p = tonic_partition("delta", 7);
    let m = p.multiset();
    c.exact(
        "multiset",
        counts(&[
            (72, 1),
            (48, 2),
            (36, 1),
            (32, 2),
            (24, 4),
            (16, 3),
            (8, 2),
            (6, 2),
            (4, 4),
            (2, 2),
            (1, 2),
        ]),
        m.clone(),
    );
    c.exact("orbits", 25, m.total_orbits());
    c.exact("Σ size²", 16482, m.sum_of_squares());
    c.nums("diam", &T_CRIT, &[2.0182, 2.5229, 3.8961], &diams(&m));
    let d = max_set(&p);
    c.set("maximal orbit = 72 mēḷakarta", &melakarta(), &d);
    c.holds("all contain 0 and 7", d.iter().all(|m| m & 0x81 == 0x81));
    c.holds("thāts are mēḷakarta", table_set("T1").is_subset(&d));
    c.exact(
        "in maximal Γ₁-orbit",
        32,
        inter(&d, &max_set(&tonic_partition("gamma1", 7))).len(),
    );
    c.exact(
        "in maximal Γ₋-orbit",
        16,
        inter(&d, &max_set(&tonic_partition("gamma-", 7))).len(),
    );
}

fn delta_intersect(c: &mut Checker) {
    let d = max_set(&tonic_partition("delta", 7));
    let dm = tonic_partition("delta-", 7);
    c.exact(
        "Δ₋ multiset equals Δ multiset",
        tonic_partition("delta", 7).multiset(),
        dm.multiset(),
    );
    let dm_max = max_set(&dm);
    c.set("maximal Δ₋-orbit", &delta_minus_built(), &dm_max);
    let meet = build(&[(&[1, 2, 3, 4], 2), (&[5, 7], 2), (&[8, 9, 10, 11], 2)]);
    c.set(
        "Δ ∩ Δ₋ = {0} ∪ two of 1-4 ∪ {5,7} ∪ two of 8-11",
        &meet,
        &inter(&d, &dm_max),
    );
    c.exact("36", 36, meet.len());
}

fn delta1_new20(c: &mut Checker) {
    let d = max_set(&tonic_partition("delta", 7));
    let dm = max_set(&tonic_partition("delta-", 7));
    let gm = max_set(&tonic_partition("gamma-", 7));
    let g1 = max_set(&tonic_partition("gamma1", 7));
    let p = tonic_partition("delta1", 7);
    let d1 = max_set(&p);
    let built = build(&[(&[1, 2, 3, 4], 2), (&[5, 6, 7], 2), (&[8, 9, 10, 11], 2)]);
    c.set("maximal Δ₁-orbit", &built, &d1);
    c.set("108 = 72+72−36 (union of Δ and Δ₋)", &union(&d, &dm), &d1);
    c.holds("contains maximal Γ₋-orbit", gm.is_subset(&d1));
    c.holds("contains maximal Γ₁-orbit", g1.is_subset(&d1));
    c.exact("|Δ ∪ Γ₋| = 88", 88, union(&d, &gm).len());
    let new20 = minus(&d1, &union(&d, &gm));
    c.exact("new scales beyond Δ ∪ Γ₋", 20, new20.len());
    let new20_g1 = minus(&d1, &union(&d, &g1));
    c.set("same 20 beyond Δ ∪ Γ₁", &new20, &new20_g1);
    let families = [
        build(&[(&[1, 2], 2), (&[5, 6], 2), (&[8, 9, 10, 11], 2)]),
        build(&[(&[3, 4], 2), (&[5, 6], 2), (&[8, 9, 10, 11], 2)]),
        build(&[(&[1, 2, 3, 4], 2), (&[5, 6], 2), (&[8, 9], 2)]),
        build(&[(&[1, 2, 3, 4], 2), (&[5, 6], 2), (&[10, 11], 2)]),
    ];
    let listed = families.iter().fold(BTreeSet::new(), |acc, f| union(&acc, f));
    c.set("the four listed families", &listed, &new20);
    c.exact(
        "listed with repeats",
        24,
        families.iter().map(BTreeSet::len).sum::<usize>(),
    );
    let mut doubled = BTreeSet::new();
    for low in [[1u8, 2], [3, 4]] {
        for high in [[8u8, 9], [10, 11]] {
            doubled.insert(pitches(&[0, low[0], low[1], 5, 6, high[0], high[1]]).mask());
        }
    }
    let repeated: BTreeSet<u16> = listed
        .iter()
        .copied()
        .filter(|m| families.iter().filter(|f| f.contains(m)).count() == 2)
        .collect();
    c.set("4 scales listed twice", &doubled, &repeated);
    let m = p.multiset();
    c.exact(
        "multiset",
        counts(&[
            (108, 1),
            (72, 2),
            (48, 2),
            (24, 2),
            (16, 1),
            (12, 2),
            (6, 2),
            (4, 2),
            (3, 2),
        ]),
        m.clone(),
    );
    c.exact("orbits", 16, m.total_orbits());
    c.exact("Σ size²", 28458, m.sum_of_squares());
    let dd1 = diams(&m);
    c.num("diam t=1", 1.7533, dd1[0]);
    c.num("diam t=-1", 3.7403, dd1[2]);
    let dd = diams(&tonic_partition("delta", 7).multiset());
    c.num("diam_1 ratio Δ/Δ₁", 1.1511, dd[0] / dd1[0]);
    c.num("diam_-1 ratio Δ/Δ₁", 1.0417, dd[2] / dd1[2]);
}

fn lattice_diam(c: &mut Checker) {
    for (key, want) in [
        ("delta1", 1.7533),
        ("delta", 2.0182),
        ("gamma1", 3.0689),
        ("delta-", 2.0182),
        ("gamma", 3.5250),
        ("delta0", 1.5849),
        ("gamma-", 3.5250),
        ("gamma0", 2.7603),
    ] {
        let m = tonic_partition(key, 7).multiset();
        c.num(key, want, diam_t(&m, TParam::ONE).expect("nonempty"));
    }
    c.holds("Γ₀ ≤ Γ", contains_group(&group("gamma"), &group("gamma0")));
    c.holds("Γ₀ ≤ Γ₋", contains_group(&group("gamma-"), &group("gamma0")));
    c.holds("Γ, Γ₋ ≤ Γ₁", {
        let g1 = group("gamma1");
        contains_group(&g1, &group("gamma")) && contains_group(&g1, &group("gamma-"))
    });
    c.holds("Δ, Δ₋, Γ₁ ≤ Δ₁", {
        let d1 = group("delta1");
        ["delta", "delta-", "gamma1"]
            .iter()
            .all(|k| contains_group(&d1, &group(k)))
    });
}

fn t7_equalities(c: &mut Checker) {
    let g0 = tonic_partition("gamma0", 7);
    let d0 = tonic_partition("delta0", 7);
    c.exact(
        "Γ₀ maximal orbits",
        "3 of size 16".to_string(),
        g0.multiset().max_description(),
    );
    c.exact(
        "Δ₀ maximal orbits",
        "3 of size 36".to_string(),
        d0.multiset().max_description(),
    );
    c.set(
        "T_7,Γ₀ = T_7,Γ₁",
        &max_set(&tonic_partition("gamma1", 7)),
        &max_set(&g0),
    );
    c.set(
        "T_7,Δ₀ = T_7,Δ₁",
        &max_set(&tonic_partition("delta1", 7)),
        &max_set(&d0),
    );
}

fn musicality_claim(c: &mut Checker) {
    let major = pitches(&[0, 2, 4, 5, 7, 9, 11]);
    c.num(
        "Γ, t=1",
        3.5250,
        musicality(&group("gamma"), TParam::ONE, major).expect("valid"),
    );
    c.num(
        "Δ, t=1",
        2.0182,
        musicality(&group("delta"), TParam::ONE, major).expect("valid"),
    );
    let delta = group("delta");
    let top = max_set(&tonic_partition("delta", 7));
    let m = tonic_partition("delta", 7).multiset();
    let best = |t: TParam| 72.0 / orb_t(&m, t).expect("nonempty");
    let ok = [
        TParam::NEG_INFINITY,
        TParam::MINUS_ONE,
        TParam::ZERO,
        TParam::ONE,
        TParam::INFINITY,
    ]
    .iter()
    .all(|&t| {
        universe(7, ActionMode::Tonic).members().iter().all(|&s| {
            let v = musicality(&delta, t, s).expect("valid");
            (v >= best(t) - 1e-12) == top.contains(&s.mask())
        })
    });
    c.holds("mēḷakarta are exactly the most Δ-musical scales", ok);
}

struct PublishedRow {
    descriptor: String,
    maximal: String,
    orbits: u64,
    diams: [f64; 3],
}

fn published_table2() -> Vec<PublishedRow> {
    TABLE2
        .lines()
        .filter(|l| !l.starts_with('#') && !l.trim().is_empty())
        .map(|l| {
            let f: Vec<&str> = l.split('|').collect();
            let parts: Vec<&str> = f[0].split(',').collect();
            PublishedRow {
                descriptor: format!("({})", parts.join(", ")),
                maximal: f[1].to_string(),
                orbits: f[2].parse().expect("integer"),
                diams: [0, 1, 2].map(|i| f[3 + i].parse().expect("number")),
            }
        })
        .collect()
}

fn table2(c: &mut Checker) {
    let published = published_table2();
    let report = reproduce_table2();
    c.exact("rows", published.len(), report.rows.len());
    let order: Vec<&str> = report.rows.iter().map(|r| r.descriptor.as_str()).collect();
    let want: Vec<&str> = published.iter().map(|r| r.descriptor.as_str()).collect();
    c.holds("row order", order == want);
    let mut bad_int = Vec::new();
    let mut bad_num = Vec::new();
    for p in &published {
        let Some(r) = report.row(&p.descriptor) else {
            bad_int.push(p.descriptor.clone());
            continue;
        };
        if r.multiset().max_description() != p.maximal || r.n_orbits() != p.orbits {
            bad_int.push(p.descriptor.clone());
        }
        for (i, (&want, &got)) in p.diams.iter().zip(r.diams()).enumerate() {
            if (want - got).abs() > NUMERIC_TOLERANCE {
                bad_num.push(format!("{} t={}", p.descriptor, T_CRIT[i]));
            }
        }
    }
    c.numeric = true;
    let show = |v: &[String]| if v.is_empty() { "none".to_string() } else { v.join(", ") };
    c.item("integer cells off", "none".into(), show(&bad_int), bad_int.is_empty());
    c.item("diameter cells off", "none".into(), show(&bad_num), bad_num.is_empty());
    if bad_int == ["(11)"] {
        c.note = Some(
            "the (11) row prints 462 orbits next to \"1 of size 462\"; S11 is transitive on the 462 scales, \
             so the orbit count is 1"
                .into(),
        );
    }
}

/// Checks on a by-type sweep over `grid` that `winner` is the unique best
/// type at every point; returns (points won, smallest margin).
fn strict_wins(report: &SweepReport, winner: &str) -> (usize, f64) {
    let mut won = 0;
    let mut margin = f64::INFINITY;
    for ti in 0..report.t_list.len() {
        let rank = report.ranking(ti);
        let best = &report.rows[rank[0]];
        let second = &report.rows[rank[1]];
        if best.descriptor == winner && report.argmax(ti, ARGMAX_TOLERANCE).len() == 1 {
            won += 1;
        }
        margin = margin.min(best.diams()[ti] - second.diams()[ti]);
    }
    (won, margin)
}

fn thm12_young(c: &mut Checker) {
    let grid = t_grid();
    let by_type = sweep_young(7, ActionMode::Tonic, &grid, Dedupe::ByType).expect("valid");
    let (won, margin) = strict_wins(&by_type, "(2, 2, 2, 2, 2, 1)");
    c.exact("grid points won strictly", grid.len(), won);
    c.holds("positive margin over runner-up", margin > ARGMAX_TOLERANCE);
    c.exact("crossed partitions covered", 678_570, by_type.groups_covered());
    let sigs = sweep_young(7, ActionMode::Tonic, &grid, Dedupe::AllSignatures).expect("valid");
    let six = (0..grid.len())
        .filter(|&ti| {
            let best = sigs.argmax(ti, ARGMAX_TOLERANCE);
            best.len() == 6
                && best.iter().all(|&i| {
                    let d = &sigs.rows[i].descriptor;
                    d.matches('2').count() == 5 && d.matches('1').count() == 1
                })
        })
        .count();
    c.exact(
        "grid points where the 6 arrangements of (2,2,2,2,2,1) tie for first",
        grid.len(),
        six,
    );
    let agree = sigs.rows.iter().all(|r| {
        let ty = by_type.rows.iter().find(|b| b.multiset() == r.multiset());
        ty.is_some_and(|b| b.diams() == r.diams())
    });
    c.holds("signature rows agree with their type rows", agree);
    // every 13571st partition of the 11 points, checked by orbit enumeration
    let u = universe(7, ActionMode::Tonic);
    let mut checked = 0;
    let mut equal = 0;
    for p in enumerate_set_partitions(11).step_by(13_571).take(50) {
        let mut sizes = p.block_sizes();
        sizes.sort_unstable_by(|a, b| b.cmp(a));
        let gens = young_generators(&p, ActionMode::Tonic).expect("11 points");
        let bfs = orbit_partition(&gens, &u).expect("tonic").multiset();
        let closed = orbit_multiset_closed_form(&sizes, 7, ActionMode::Tonic).expect("valid");
        checked += 1;
        equal += usize::from(bfs == closed);
    }
    c.exact("sampled crossed partitions matching orbit enumeration", checked, equal);
    c.exact("sample size", 50, checked);
}

fn thm61(c: &mut Checker) {
    let p6 = tonic_partition("gamma", 6);
    c.exact(
        "multiset on 6 notes equals 7 notes",
        tonic_partition("gamma", 7).multiset(),
        p6.multiset(),
    );
    let complements: BTreeSet<u16> = table_set("T1")
        .iter()
        .map(|&m| {
            Scale::tonic(m)
                .and_then(|s| s.complement(Complement::Tonic))
                .expect("tonic")
                .mask()
        })
        .collect();
    let max6 = max_set(&p6);
    c.set("maximal orbit = complements of the thāts", &complements, &max6);
    c.holds("no scale of it contains 7", max6.iter().all(|m| m & 0x80 == 0));
    let gamma = group("gamma");
    let dual = universe(7, ActionMode::Tonic).members().iter().all(|&s| {
        gamma.generators().iter().all(|g| {
            let lhs = s.act(g).and_then(|x| x.complement(Complement::Tonic));
            let rhs = s.complement(Complement::Tonic).and_then(|x| x.act(g));
            lhs.is_ok() && lhs == rhs
        })
    });
    c.holds("complement commutes with the action", dual);
    let grid = t_grid();
    let by_type = sweep_young(6, ActionMode::Tonic, &grid, Dedupe::ByType).expect("valid");
    let (won, margin) = strict_wins(&by_type, "(2, 2, 2, 2, 2, 1)");
    c.exact("6-note grid points won strictly by (2,2,2,2,2,1)", grid.len(), won);
    c.holds("positive margin", margin > ARGMAX_TOLERANCE);
}

fn hexa(c: &mut Checker) {
    let lam = max_set(&tonic_partition("lambda", 6));
    let lamp = max_set(&tonic_partition("lambda'", 6));
    c.set(
        "maximal Λ-orbit {0, 2|3, 4|5, 6|7, 8|9, 10|11}",
        &build(&[(&[2, 3], 1), (&[4, 5], 1), (&[6, 7], 1), (&[8, 9], 1), (&[10, 11], 1)]),
        &lam,
    );
    c.set(
        "maximal Λ′-orbit {0, 1|2, 3|4, 5|6, 7|8, 9|10}",
        &build(&[(&[1, 2], 1), (&[3, 4], 1), (&[5, 6], 1), (&[7, 8], 1), (&[9, 10], 1)]),
        &lamp,
    );
    for name in ["whole tone", "Prometheus", "augmented"] {
        c.holds(&format!("{name} in Λ-orbit"), lam.contains(&named_scale(name).mask()));
    }
    for name in ["whole tone", "major hexatonic", "minor hexatonic", "tritone"] {
        c.holds(&format!("{name} in Λ′-orbit"), lamp.contains(&named_scale(name).mask()));
    }
    c.set(
        "only the whole tone scale lies in both",
        &BTreeSet::from([named_scale("whole tone").mask()]),
        &inter(&lam, &lamp),
    );
    let whole = named_scale("whole tone");
    let neapolitan_major = pitches(&[0, 1, 3, 5, 7, 9, 11]);
    c.exact(
        "whole tone is the complement of Neapolitan major",
        whole,
        neapolitan_major.complement(Complement::Tonic).expect("tonic"),
    );
    for name in ["major blues hexatonic", "minor blues hexatonic"] {
        let m = named_scale(name).mask();
        c.holds(&format!("{name} in neither"), !lam.contains(&m) && !lamp.contains(&m));
    }
}

fn hexa_blues(c: &mut Checker) {
    let lam = tonic_partition("lambda", 6);
    let lamp = tonic_partition("lambda'", 6);
    for name in ["major blues hexatonic", "minor blues hexatonic"] {
        let s = named_scale(name);
        c.exact(&format!("{name} Λ-orbit"), 16, lam.orbit_size_of(s).expect("6 notes"));
        c.exact(&format!("{name} Λ′-orbit"), 16, lamp.orbit_size_of(s).expect("6 notes"));
    }
    c.note = Some(
        "each blues hexatonic meets exactly three of the five transposition pairs of Λ and of Λ′ in one note, \
         so its orbit has 2^3 = 8 scales under both groups"
            .into(),
    );
}

fn sigma_penta(c: &mut Checker) {
    let p = tonic_partition("sigma", 5);
    let table = table_set("T5");
    c.set("maximal orbit = table", &table, &max_set(&p));
    c.exact(
        "maximal orbits",
        "1 of size 16".to_string(),
        p.multiset().max_description(),
    );
    c.set(
        "{0, 2|3, 4|5, 7|8, 9|10}",
        &table,
        &build(&[(&[2, 3], 1), (&[4, 5], 1), (&[7, 8], 1), (&[9, 10], 1)]),
    );
    let black_keys = [
        "major",
        "minor",
        "Blues major, or Ritsusen, or yo",
        "Blues minor, or Man Gong",
        "Egyptian, or suspended",
    ];
    for name in black_keys {
        c.holds(
            &format!("{name} pentatonic in orbit"),
            table.contains(&named_scale(name).mask()),
        );
    }
    // all five are rotations of the black-key set {1,3,6,8,10}
    let black: u16 = [1u16, 3, 6, 8, 10].iter().fold(0, |m, p| m | 1 << p);
    let rotations: BTreeSet<u16> = [1u32, 3, 6, 8, 10]
        .iter()
        .map(|&r| ((black as u32 >> r | (black as u32) << (12 - r)) & 0xFFF) as u16)
        .collect();
    let named: BTreeSet<u16> = black_keys.iter().map(|n| named_scale(n).mask()).collect();
    c.set("they are the modes of the black keys", &rotations, &named);
}

fn sigma_dist(c: &mut Checker) {
    let m = tonic_partition("sigma", 5).multiset();
    c.exact(
        "multiset",
        counts(&[(16, 1), (8, 12), (4, 30), (2, 40), (1, 18)]),
        m.clone(),
    );
    c.exact(
        "closed form agrees",
        orbit_multiset_closed_form(&[1, 2, 2, 1, 2, 2, 1], 5, ActionMode::Tonic).expect("valid"),
        m.clone(),
    );
    c.exact("orbits", 101, m.total_orbits());
    c.exact("scales", 330, m.total_points());
    c.nums("diam", &T_CRIT, &[3.1391, 3.9004, 4.8970], &diams(&m));
    let printed = counts(&[(16, 1), (8, 12), (4, 20), (2, 40), (1, 18)]);
    c.note = Some(format!(
        "erratum: the published list has 20 orbits of size 4, which accounts for {} scales in {} orbits; \
         30 orbits of size 4 gives 330 scales in 101 orbits and reproduces the published diameters",
        printed.total_points(),
        printed.total_orbits()
    ));
}

fn sigma1_dist(c: &mut Checker) {
    let m = tonic_partition("sigma1", 5).multiset();
    c.exact(
        "multiset",
        counts(&[(32, 1), (16, 3), (8, 19), (4, 16), (2, 15), (1, 4)]),
        m.clone(),
    );
    c.exact("orbits", 58, m.total_orbits());
    c.nums("diam", &T_CRIT, &[3.1731, 4.2068, 5.6242], &diams(&m));
}

fn sigma_rank(c: &mut Checker) {
    let grid = t_grid();
    let entries = vec![
        CatalogEntry::new("Σ₁", &["(2 3)", "(4 5)", "(7 8)", "(9 10)(6 11)", "(9 11)(6 10)"]),
        CatalogEntry::new("Σ", &["(2 3)", "(4 5)", "(7 8)", "(9 10)"]),
    ];
    let r = sweep_catalog(&entries, 5, ActionMode::Tonic, &grid, 1).expect("valid");
    let first = (0..grid.len())
        .filter(|&ti| r.rows[r.ranking(ti)[0]].descriptor == "Σ₁")
        .count();
    c.exact("grid points where Σ₁ beats Σ", grid.len(), first);
    let young = sweep_young(5, ActionMode::Tonic, &grid, Dedupe::ByType).expect("valid");
    let upper: Vec<usize> = (0..grid.len()).filter(|&i| grid[i].value() >= -1e-12).collect();
    let led = upper
        .iter()
        .filter(|&&ti| {
            let best = young.argmax(ti, ARGMAX_TOLERANCE);
            best.len() == 1 && young.rows[best[0]].descriptor == "(2, 2, 2, 2, 1, 1, 1)"
        })
        .count();
    c.exact("points of [0,1] where Σ's type leads the Young types", upper.len(), led);
}

fn table4(c: &mut Checker) {
    let (entries, _) = parse_catalog(SAMPLE_ATONIC_CATALOG);
    let r = sweep_catalog(&entries, 7, ActionMode::Atonic, &t_crit(), 1).expect("valid");
    c.exact("rows", 3, r.rows.len());
    let want = [
        ("1 of size 64", [3.9501, 5.5199, 7.8384]),
        ("1 of size 32", [3.7917, 5.0929, 6.9091]),
        ("1 of size 64", [3.7183, 5.0397, 7.0303]),
    ];
    for (row, (maximal, d)) in r.rows.iter().zip(want) {
        c.exact(
            &format!("{} maximal orbits", row.descriptor),
            maximal.to_string(),
            row.multiset().max_description(),
        );
        c.nums(&row.descriptor, &T_CRIT, &d, row.diams());
    }
    let grid = t_grid();
    let g = sweep_catalog(&entries, 7, ActionMode::Atonic, &grid, 1).expect("valid");
    let first = (0..grid.len()).filter(|&ti| g.ranking(ti)[0] == 0).count();
    c.exact("grid points where the first group leads", grid.len(), first);
    let upper: Vec<usize> = (0..grid.len()).filter(|&i| grid[i].value() >= -1e-12).collect();
    let second = upper.iter().filter(|&&ti| g.ranking(ti)[1] == 1).count();
    c.exact("points of [0,1] where Γ is second", upper.len(), second);
    c.holds(
        "third group passes Γ at t = −1",
        g.rows[2].diams()[0] > g.rows[1].diams()[0],
    );
    c.note = Some("rankings are among these three groups only".into());
}

fn atonic_penta(c: &mut Checker) {
    let gens = GeneratorSet::parse_list("(11 0);(2 3);(4 5);(7 8);(9 10)", DEGREE).expect("valid");
    let p = partition_of(&gens, 5, ActionMode::Atonic);
    c.exact(
        "maximal orbits",
        "1 of size 32".to_string(),
        p.multiset().max_description(),
    );
    let tonic = p.maximal_orbit_scales().iter().filter(|s| s.contains(0)).count();
    c.exact("tonic members", 16, tonic);
}

const FIG_VALUES: [f64; 5] = [2.0, 2.0, 7.0, 8.0, 10.0];

fn fig1(c: &mut Checker) {
    let m = |t: f64| power_mean(&FIG_VALUES, None, TParam::new(t).expect("not NaN")).expect("positive");
    c.num("t=1", 5.8, m(1.0));
    c.num("t=0", 2240f64.powf(0.2), m(0.0));
    c.exact("t=+inf", 10.0, m(f64::INFINITY));
    c.exact("t=-inf", 2.0, m(f64::NEG_INFINITY));
    let grid = linspace(-10.0, 10.0, 201);
    let vals: Vec<f64> = grid.iter().map(|&t| m(t)).collect();
    c.holds("strictly increasing on [−10,10]", vals.windows(2).all(|w| w[0] < w[1]));
    c.holds("between 2 and 10", vals.iter().all(|&v| 2.0 < v && v < 10.0));
}

fn fig2(c: &mut Checker) {
    let m = OrbitMultiset::from_sizes([2, 2, 7, 8, 10]);
    let d = |t: f64| diam_t(&m, TParam::new(t).expect("not NaN")).expect("nonempty");
    c.num("diam t=1", 1.3122, d(1.0));
    c.num("diam t=-1", 1.7241, d(-1.0));
    c.num(
        "orb t=1 = 221/29",
        221.0 / 29.0,
        orb_t(&m, TParam::ONE).expect("nonempty"),
    );
    c.exact("diam t=+inf", 1.0, d(f64::INFINITY));
    c.exact("diam t=-inf", 5.0, d(f64::NEG_INFINITY));
    let grid = linspace(-10.0, 10.0, 201);
    let vals: Vec<f64> = grid.iter().map(|&t| d(t)).collect();
    c.holds(
        "diam strictly decreasing on [−10,10]",
        vals.windows(2).all(|w| w[0] > w[1]),
    );
}
