//! The named groups used throughout: the heptatonic lattice Γ, Γ₋, Γ₁, Γ₀,
//! Δ, Δ₋, Δ₁, Δ₀, the hexatonic Λ and Λ′, the pentatonic Σ and Σ₁, and the
//! two non-Young subgroups of S_12 with the largest atonic diameters.

use crate::perm::{GeneratorSet, DEGREE};
use crate::young::Signature;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct NamedGroup {
    /// Short ASCII key, e.g. `gamma1`.
    pub key: &'static str,
    /// Display name, e.g. `Γ₁`.
    pub display: &'static str,
    /// `;`-separated cycle-notation generators.
    pub generators: &'static str,
    /// Signature when the group is a Young subgroup without crossings.
    pub signature: Option<&'static [usize]>,
    pub order: u128,
}

impl NamedGroup {
    pub fn generator_set(&self) -> GeneratorSet {
        GeneratorSet::parse_list(self.generators, DEGREE)
            .expect("named generators parse")
            .with_label(self.display)
    }

    pub fn signature(&self) -> Option<Signature> {
        self.signature
            .map(|s| Signature::new(s.to_vec()).expect("valid signature"))
    }
}

pub const NAMED_GROUPS: &[NamedGroup] = &[
    NamedGroup {
        key: "gamma",
        display: "Γ",
        generators: "(1 2);(3 4);(5 6);(8 9);(10 11)",
        signature: Some(&[2, 2, 2, 1, 2, 2]),
        order: 32,
    },
    NamedGroup {
        key: "gamma-",
        display: "Γ₋",
        generators: "(1 2);(3 4);(6 7);(8 9);(10 11)",
        signature: Some(&[2, 2, 1, 2, 2, 2]),
        order: 32,
    },
    NamedGroup {
        key: "gamma1",
        display: "Γ₁",
        generators: "(1 2);(3 4);(5 6);(6 7);(8 9);(10 11)",
        signature: Some(&[2, 2, 3, 2, 2]),
        order: 96,
    },
    NamedGroup {
        key: "gamma0",
        display: "Γ₀",
        generators: "(1 2);(3 4);(8 9);(10 11)",
        signature: Some(&[2, 2, 1, 1, 1, 2, 2]),
        order: 16,
    },
    NamedGroup {
        key: "delta",
        display: "Δ",
        generators: "(1 2);(2 3);(3 4);(5 6);(8 9);(9 10);(10 11)",
        signature: Some(&[4, 2, 1, 4]),
        order: 1152,
    },
    NamedGroup {
        key: "delta-",
        display: "Δ₋",
        generators: "(1 2);(2 3);(3 4);(6 7);(8 9);(9 10);(10 11)",
        signature: Some(&[4, 1, 2, 4]),
        order: 1152,
    },
    NamedGroup {
        key: "delta1",
        display: "Δ₁",
        generators: "(1 2);(2 3);(3 4);(5 6);(6 7);(8 9);(9 10);(10 11)",
        signature: Some(&[4, 3, 4]),
        order: 3456,
    },
    NamedGroup {
        key: "delta0",
        display: "Δ₀",
        generators: "(1 2);(2 3);(3 4);(8 9);(9 10);(10 11)",
        signature: Some(&[4, 1, 1, 1, 4]),
        order: 576,
    },
    NamedGroup {
        key: "lambda",
        display: "Λ",
        generators: "(2 3);(4 5);(6 7);(8 9);(10 11)",
        signature: Some(&[1, 2, 2, 2, 2, 2]),
        order: 32,
    },
    NamedGroup {
        key: "lambda'",
        display: "Λ′",
        generators: "(1 2);(3 4);(5 6);(7 8);(9 10)",
        signature: Some(&[2, 2, 2, 2, 2, 1]),
        order: 32,
    },
    NamedGroup {
        key: "sigma",
        display: "Σ",
        generators: "(2 3);(4 5);(7 8);(9 10)",
        signature: Some(&[1, 2, 2, 1, 2, 2, 1]),
        order: 16,
    },
    NamedGroup {
        key: "sigma1",
        display: "Σ₁",
        generators: "(2 3);(4 5);(7 8);(9 10)(6 11);(9 11)(6 10)",
        signature: None,
        order: 32,
    },
    NamedGroup {
        key: "atonic-best",
        display: "⟨(0 1),(2 3),(4 5),(7 8),(9 10)(6 11),(9 11)(6 10)⟩",
        generators: "(0 1);(2 3);(4 5);(7 8);(9 10)(6 11);(9 11)(6 10)",
        signature: None,
        order: 64,
    },
    NamedGroup {
        key: "atonic-third",
        display: "⟨(0 1),(2 3),(4 5),(7 8)(9 10),(9 10)(6 11),(9 11)(6 10)⟩",
        generators: "(0 1);(2 3);(4 5);(7 8)(9 10);(9 10)(6 11);(9 11)(6 10)",
        signature: None,
        order: 64,
    },
    NamedGroup {
        key: "s11",
        display: "S₁₁",
        generators: "(1 2);(1 2 3 4 5 6 7 8 9 10 11)",
        signature: None,
        order: 39_916_800,
    },
];

/// Looks up a named group by key (case-insensitive).
pub fn named(key: &str) -> Option<&'static NamedGroup> {
    NAMED_GROUPS.iter().find(|g| g.key.eq_ignore_ascii_case(key))
}

/// Generator set of a named group; panics on an unknown key.
pub fn group(key: &str) -> GeneratorSet {
    named(key)
        .unwrap_or_else(|| panic!("unknown named group {key}"))
        .generator_set()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scales::ActionMode;
    use crate::young::young_generators;

    #[test]
    fn orders_match() {
        for g in NAMED_GROUPS {
            assert_eq!(g.generator_set().order(), g.order, "{}", g.key);
        }
    }

    #[test]
    fn young_groups_match_their_signature() {
        for g in NAMED_GROUPS {
            let Some(sig) = g.signature() else { continue };
            let y = young_generators(&sig, ActionMode::Tonic).unwrap();
            assert_eq!(y.generators(), g.generator_set().generators(), "{}", g.key);
            assert_eq!(sig.group_order(), g.order);
        }
    }

    #[test]
    fn lookup() {
        assert_eq!(named("GAMMA").unwrap().display, "Γ");
        assert!(named("nope").is_none());
        assert!(group("sigma1").tonic_fixing());
        assert!(!group("atonic-best").tonic_fixing());
    }
}
