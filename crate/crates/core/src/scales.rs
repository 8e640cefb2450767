//! Scales as 12-bit pitch-class masks, scale universes, the permutation
//! action on scales, tonic complements, and note-name spelling/parsing.

use std::fmt;
use std::str::FromStr;

use serde::Serialize;
use thiserror::Error;

use crate::perm::{GeneratorSet, Permutation, DEGREE};

const FULL: u16 = (1 << DEGREE) - 1;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ScaleError {
    #[error("k = {k} is out of range for {mode} scales")]
    KOutOfRange { k: usize, mode: ActionMode },
    #[error("permutation {0} moves the tonic 0")]
    MovesTonic(String),
    #[error("tonic scale must contain 0 (C)")]
    MissingTonic,
    #[error("mask {0:#05x} does not fit in 12 bits")]
    BadMask(u32),
    #[error("duplicate pitch class {0}")]
    Duplicate(u8),
    #[error("unknown token {0:?}")]
    UnknownToken(String),
    #[error("tonic complement needs a tonic scale")]
    NotTonic,
    #[error("mode mismatch: generators move 0 but the scale is tonic")]
    ModeMismatch,
    #[error("permutation has degree {0}, expected 12")]
    Degree(usize),
}

/// Whether the acting group fixes the tonic 0 (tonic) or acts on all twelve
/// pitch classes (atonic).
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum ActionMode {
    Tonic,
    Atonic,
}

impl ActionMode {
    /// Number of points the acting group moves: 11 or 12.
    pub fn moved_points(self) -> usize {
        match self {
            ActionMode::Tonic => DEGREE - 1,
            ActionMode::Atonic => DEGREE,
        }
    }

    /// First point the acting group may move.
    pub fn first_point(self) -> usize {
        match self {
            ActionMode::Tonic => 1,
            ActionMode::Atonic => 0,
        }
    }

    /// Number of freely chosen notes in a k-note scale.
    pub fn free_notes(self, k: usize) -> Option<usize> {
        match self {
            ActionMode::Tonic => k.checked_sub(1),
            ActionMode::Atonic => Some(k),
        }
    }

    pub fn universe_size(self, k: usize) -> Option<u64> {
        let free = self.free_notes(k)?;
        let n = self.moved_points();
        (free <= n).then(|| binomial(n as u64, free as u64))
    }
}

impl fmt::Display for ActionMode {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            ActionMode::Tonic => "tonic",
            ActionMode::Atonic => "atonic",
        })
    }
}

impl FromStr for ActionMode {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s.to_ascii_lowercase().as_str() {
            "tonic" => Ok(ActionMode::Tonic),
            "atonic" => Ok(ActionMode::Atonic),
            other => Err(format!("unknown mode {other:?} (expected tonic or atonic)")),
        }
    }
}

pub fn binomial(n: u64, k: u64) -> u64 {
    if k > n {
        return 0;
    }
    let k = k.min(n - k);
    (0..k).fold(1u64, |acc, i| acc * (n - i) / (i + 1))
}

/// A set of pitch classes; bit `i` set means pitch class `i` is present.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub struct Scale {
    mask: u16,
    mode: ActionMode,
}

impl Scale {
    pub fn new(mask: u16, mode: ActionMode) -> Result<Self, ScaleError> {
        if mask & !FULL != 0 {
            return Err(ScaleError::BadMask(mask as u32));
        }
        if mode == ActionMode::Tonic && mask & 1 == 0 {
            return Err(ScaleError::MissingTonic);
        }
        Ok(Self { mask, mode })
    }

    pub fn tonic(mask: u16) -> Result<Self, ScaleError> {
        Self::new(mask, ActionMode::Tonic)
    }

    pub fn atonic(mask: u16) -> Result<Self, ScaleError> {
        Self::new(mask, ActionMode::Atonic)
    }

    pub fn from_pitches(pitches: &[u8], mode: ActionMode) -> Result<Self, ScaleError> {
        let mut mask = 0u16;
        for &p in pitches {
            if p as usize >= DEGREE {
                return Err(ScaleError::UnknownToken(p.to_string()));
            }
            if mask & (1 << p) != 0 {
                return Err(ScaleError::Duplicate(p));
            }
            mask |= 1 << p;
        }
        Self::new(mask, mode)
    }

    pub fn mask(self) -> u16 {
        self.mask
    }

    pub fn mode(self) -> ActionMode {
        self.mode
    }

    pub fn len(self) -> usize {
        self.mask.count_ones() as usize
    }

    pub fn is_empty(self) -> bool {
        self.mask == 0
    }

    pub fn contains(self, pitch: usize) -> bool {
        pitch < DEGREE && self.mask & (1 << pitch) != 0
    }

    pub fn pitches(self) -> impl Iterator<Item = u8> {
        (0..DEGREE as u8).filter(move |&i| self.mask & (1 << i) != 0)
    }

    /// Image `{σ(x) : x ∈ s}`.
    pub fn act(self, p: &Permutation) -> Result<Self, ScaleError> {
        if p.degree() != DEGREE {
            return Err(ScaleError::Degree(p.degree()));
        }
        if self.mode == ActionMode::Tonic && !p.fixes(0) {
            return Err(ScaleError::MovesTonic(p.to_string()));
        }
        Ok(Self {
            mask: act_mask(p, self.mask),
            mode: self.mode,
        })
    }

    /// Complement of the scale. The tonic kind keeps 0 and maps k-tonic
    /// scales to (13−k)-tonic scales; the plain kind is the set complement.
    pub fn complement(self, kind: Complement) -> Result<Self, ScaleError> {
        match kind {
            Complement::Tonic => {
                if self.mode != ActionMode::Tonic {
                    return Err(ScaleError::NotTonic);
                }
                Ok(Self {
                    mask: (!self.mask & FULL) | 1,
                    mode: ActionMode::Tonic,
                })
            }
            Complement::Plain => Ok(Self {
                mask: !self.mask & FULL,
                mode: ActionMode::Atonic,
            }),
        }
    }

    pub fn spell(self, convention: Spelling) -> String {
        spell(self, convention)
    }

    /// Integer-set form, e.g. `{0,2,4,5,7,9,11}`.
    pub fn to_set_string(self) -> String {
        let parts: Vec<String> = self.pitches().map(|p| p.to_string()).collect();
        format!("{{{}}}", parts.join(","))
    }
}

impl fmt::Display for Scale {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.to_set_string())
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Complement {
    Tonic,
    Plain,
}

#[inline]
pub(crate) fn act_mask(p: &Permutation, mask: u16) -> u16 {
    let mut out = 0u16;
    let mut m = mask;
    while m != 0 {
        let i = m.trailing_zeros() as usize;
        out |= 1 << p.apply(i);
        m &= m - 1;
    }
    out
}

/// Checks that a generator set may act on scales of the given mode.
pub fn check_mode(gens: &GeneratorSet, mode: ActionMode) -> Result<(), ScaleError> {
    if gens.degree() != DEGREE {
        return Err(ScaleError::Degree(gens.degree()));
    }
    if mode == ActionMode::Tonic && !gens.tonic_fixing() {
        return Err(ScaleError::ModeMismatch);
    }
    Ok(())
}

/// All k-note scales of one mode in ascending mask order.
#[derive(Debug, Clone)]
pub struct ScaleUniverse {
    k: usize,
    mode: ActionMode,
    members: Vec<Scale>,
    index: Vec<u32>,
}

const NOT_MEMBER: u32 = u32::MAX;

impl ScaleUniverse {
    pub fn enumerate(k: usize, mode: ActionMode) -> Result<Self, ScaleError> {
        let ok = match mode {
            ActionMode::Tonic => (1..=DEGREE).contains(&k),
            ActionMode::Atonic => k <= DEGREE,
        };
        if !ok {
            return Err(ScaleError::KOutOfRange { k, mode });
        }
        let mut members = Vec::new();
        let mut index = vec![NOT_MEMBER; 1 << DEGREE];
        for mask in 0..=FULL {
            if mask.count_ones() as usize != k || (mode == ActionMode::Tonic && mask & 1 == 0) {
                continue;
            }
            index[mask as usize] = members.len() as u32;
            members.push(Scale { mask, mode });
        }
        Ok(Self {
            k,
            mode,
            members,
            index,
        })
    }

    pub fn k(&self) -> usize {
        self.k
    }

    pub fn mode(&self) -> ActionMode {
        self.mode
    }

    pub fn members(&self) -> &[Scale] {
        &self.members
    }

    pub fn len(&self) -> usize {
        self.members.len()
    }

    pub fn is_empty(&self) -> bool {
        self.members.is_empty()
    }

    /// Position of a mask in the universe.
    pub fn index_of(&self, mask: u16) -> Option<usize> {
        match self.index.get(mask as usize) {
            Some(&i) if i != NOT_MEMBER => Some(i as usize),
            _ => None,
        }
    }

    pub fn contains(&self, s: Scale) -> bool {
        s.mode == self.mode && self.index_of(s.mask).is_some()
    }
}

pub fn enumerate_universe(k: usize, mode: ActionMode) -> Result<ScaleUniverse, ScaleError> {
    ScaleUniverse::enumerate(k, mode)
}

/// Accidental convention for spelling pitch classes.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Spelling {
    Flats,
    Sharps,
}

impl Spelling {
    /// Default convention by scale size: sharps for pentatonic scales,
    /// flats otherwise.
    pub fn default_for(k: usize) -> Self {
        if k == 5 {
            Spelling::Sharps
        } else {
            Spelling::Flats
        }
    }
}

impl fmt::Display for Spelling {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Spelling::Flats => "flats",
            Spelling::Sharps => "sharps",
        })
    }
}

impl FromStr for Spelling {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "flats" => Ok(Spelling::Flats),
            "sharps" => Ok(Spelling::Sharps),
            other => Err(format!("unknown spelling convention {other:?}")),
        }
    }
}

const FLAT_NAMES: [&str; 12] = ["C", "D♭", "D", "E♭", "E", "F", "G♭", "G", "A♭", "A", "B♭", "B"];
const SHARP_NAMES: [&str; 12] = ["C", "C♯", "D", "D♯", "E", "F", "F♯", "G", "G♯", "A", "A♯", "B"];

/// Note names starting from C = 0.
///
/// With flats, pitch class 6 is F♯ when G is present and F is absent, and
/// G♭ otherwise, so that no letter repeats in diatonic-like scales.
pub fn spell(s: Scale, convention: Spelling) -> String {
    let names: Vec<&str> = s
        .pitches()
        .map(|p| match convention {
            Spelling::Sharps => SHARP_NAMES[p as usize],
            Spelling::Flats if p == 6 && s.contains(7) && !s.contains(5) => "F♯",
            Spelling::Flats => FLAT_NAMES[p as usize],
        })
        .collect();
    names.join(" ")
}

fn parse_note(token: &str) -> Result<u8, ScaleError> {
    let unknown = || ScaleError::UnknownToken(token.to_string());
    let mut chars = token.chars();
    let base: i32 = match chars.next().ok_or_else(unknown)? {
        'C' => 0,
        'D' => 2,
        'E' => 4,
        'F' => 5,
        'G' => 7,
        'A' => 9,
        'B' => 11,
        _ => return Err(unknown()),
    };
    let mut offset = 0i32;
    for c in chars {
        match c {
            '♭' | 'b' => offset -= 1,
            '♯' | '#' => offset += 1,
            '♮' => {}
            _ => return Err(unknown()),
        }
    }
    Ok((base + offset).rem_euclid(DEGREE as i32) as u8)
}

/// Parses `{0,2,4,...}` or note names such as `C D♭ E F♯ G A B`.
///
/// ASCII `b`/`#` are accepted for ♭/♯. Enharmonic spellings map to the same
/// pitch class; a repeated pitch class is an error.
pub fn parse_scale(text: &str, mode: ActionMode) -> Result<Scale, ScaleError> {
    let text = text.trim();
    let pitches: Vec<u8> = if let Some(inner) = text.strip_prefix('{') {
        let inner = inner
            .strip_suffix('}')
            .ok_or_else(|| ScaleError::UnknownToken(text.to_string()))?;
        inner
            .split(',')
            .map(str::trim)
            .filter(|t| !t.is_empty())
            .map(|t| match t.parse::<u8>() {
                Ok(p) if (p as usize) < DEGREE => Ok(p),
                _ => Err(ScaleError::UnknownToken(t.to_string())),
            })
            .collect::<Result<_, _>>()?
    } else {
        text.split(|c: char| c.is_whitespace() || c == ',')
            .filter(|t| !t.is_empty())
            .map(parse_note)
            .collect::<Result<_, _>>()?
    };
    Scale::from_pitches(&pitches, mode)
}

impl FromStr for Scale {
    type Err = ScaleError;

    /// Parses in tonic mode when the scale contains 0, atonic otherwise.
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let atonic = parse_scale(s, ActionMode::Atonic)?;
        if atonic.contains(0) {
            Scale::tonic(atonic.mask)
        } else {
            Ok(atonic)
        }
    }
}
