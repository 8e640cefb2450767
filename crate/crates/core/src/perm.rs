//! Permutations of `{0..degree-1}` in one-line form, cycle-notation parsing
//! and rendering, and group orders via a stabilizer chain.

use std::fmt;

use thiserror::Error;

/// Number of points every permutation in this crate acts on (the pitch
/// classes of Z_12).
pub const DEGREE: usize = 12;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum PermError {
    #[error("malformed cycle notation at byte {pos}: {msg}")]
    Malformed { pos: usize, msg: String },
    #[error("point {point} appears more than once")]
    RepeatedPoint { point: usize },
    #[error("point {point} is out of range for degree {degree}")]
    OutOfRange { point: usize, degree: usize },
    #[error("degree mismatch: {0} vs {1}")]
    DegreeMismatch(usize, usize),
    #[error("images do not form a bijection")]
    NotBijection,
    #[error("relabeling moves the tonic 0 in a tonic-fixing generator set")]
    MovesTonic,
}

/// A bijection of `{0..degree-1}`; `images[i]` is the image of `i`.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Permutation {
    images: Box<[u8]>,
}

impl Permutation {
    pub fn identity(degree: usize) -> Self {
        Self {
            images: (0..degree as u8).collect(),
        }
    }

    pub fn from_images(images: &[usize]) -> Result<Self, PermError> {
        let degree = images.len();
        let mut seen = vec![false; degree];
        for &x in images {
            if x >= degree {
                return Err(PermError::OutOfRange { point: x, degree });
            }
            if std::mem::replace(&mut seen[x], true) {
                return Err(PermError::NotBijection);
            }
        }
        Ok(Self {
            images: images.iter().map(|&x| x as u8).collect(),
        })
    }

    /// Builds a permutation from disjoint cycles given as point lists.
    pub fn from_cycles(degree: usize, cycles: &[&[usize]]) -> Result<Self, PermError> {
        let mut images: Vec<u8> = (0..degree as u8).collect();
        let mut used = vec![false; degree];
        for cycle in cycles {
            for &p in cycle.iter() {
                if p >= degree {
                    return Err(PermError::OutOfRange { point: p, degree });
                }
                if std::mem::replace(&mut used[p], true) {
                    return Err(PermError::RepeatedPoint { point: p });
                }
            }
            for (i, &p) in cycle.iter().enumerate() {
                images[p] = cycle[(i + 1) % cycle.len()] as u8;
            }
        }
        Ok(Self { images: images.into() })
    }

    /// A transposition swapping `a` and `b`.
    pub fn transposition(degree: usize, a: usize, b: usize) -> Self {
        let mut images: Vec<u8> = (0..degree as u8).collect();
        images.swap(a, b);
        Self { images: images.into() }
    }

    #[inline]
    pub fn degree(&self) -> usize {
        self.images.len()
    }

    #[inline]
    pub fn apply(&self, point: usize) -> usize {
        self.images[point] as usize
    }

    pub fn images(&self) -> impl Iterator<Item = usize> + '_ {
        self.images.iter().map(|&x| x as usize)
    }

    pub fn is_identity(&self) -> bool {
        self.images.iter().enumerate().all(|(i, &x)| i == x as usize)
    }

    pub fn fixes(&self, point: usize) -> bool {
        self.apply(point) == point
    }

    /// First point not fixed, if any.
    pub fn first_moved(&self) -> Option<usize> {
        self.images
            .iter()
            .enumerate()
            .find(|(i, &x)| *i != x as usize)
            .map(|(i, _)| i)
    }

    /// `self ∘ other`: apply `other` first, then `self`.
    pub fn compose(&self, other: &Self) -> Result<Self, PermError> {
        if self.degree() != other.degree() {
            return Err(PermError::DegreeMismatch(self.degree(), other.degree()));
        }
        Ok(self.compose_unchecked(other))
    }

    pub(crate) fn compose_unchecked(&self, other: &Self) -> Self {
        Self {
            images: other.images.iter().map(|&x| self.images[x as usize]).collect(),
        }
    }

    pub fn inverse(&self) -> Self {
        let mut inv = vec![0u8; self.degree()];
        for (i, &x) in self.images.iter().enumerate() {
            inv[x as usize] = i as u8;
        }
        Self { images: inv.into() }
    }

    /// Disjoint cycles of length at least two, each starting at its least
    /// point, ordered by that point.
    pub fn cycles(&self) -> Vec<Vec<usize>> {
        let mut seen = vec![false; self.degree()];
        let mut out = Vec::new();
        for start in 0..self.degree() {
            if seen[start] || self.fixes(start) {
                continue;
            }
            let mut cycle = vec![start];
            seen[start] = true;
            let mut x = self.apply(start);
            while x != start {
                seen[x] = true;
                cycle.push(x);
                x = self.apply(x);
            }
            out.push(cycle);
        }
        out
    }
}

impl fmt::Display for Permutation {
    /// Cycle notation, `()` for the identity.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let cycles = self.cycles();
        if cycles.is_empty() {
            return f.write_str("()");
        }
        for c in cycles {
            f.write_str("(")?;
            for (i, p) in c.iter().enumerate() {
                if i > 0 {
                    f.write_str(" ")?;
                }
                write!(f, "{p}")?;
            }
            f.write_str(")")?;
        }
        Ok(())
    }
}

impl fmt::Debug for Permutation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

/// Parses a product of disjoint cycles such as `(1 2)(3 4)`.
///
/// The empty string and `()` denote the identity. Commas are accepted as
/// separators inside a cycle.
pub fn parse_cycles(text: &str, degree: usize) -> Result<Permutation, PermError> {
    let bytes = text.as_bytes();
    let mut pos = 0;
    let mut cycles: Vec<Vec<usize>> = Vec::new();
    let skip_ws = |pos: &mut usize| {
        while *pos < bytes.len() && (bytes[*pos].is_ascii_whitespace() || bytes[*pos] == b',') {
            *pos += 1;
        }
    };
    loop {
        skip_ws(&mut pos);
        if pos == bytes.len() {
            break;
        }
        if bytes[pos] != b'(' {
            return Err(PermError::Malformed {
                pos,
                msg: format!("expected '(' but found {:?}", text[pos..].chars().next().unwrap()),
            });
        }
        let open = pos;
        pos += 1;
        let mut cycle = Vec::new();
        loop {
            skip_ws(&mut pos);
            match bytes.get(pos) {
                None => {
                    return Err(PermError::Malformed {
                        pos: open,
                        msg: "unclosed '('".into(),
                    })
                }
                Some(b')') => {
                    pos += 1;
                    break;
                }
                Some(c) if c.is_ascii_digit() => {
                    let start = pos;
                    while pos < bytes.len() && bytes[pos].is_ascii_digit() {
                        pos += 1;
                    }
                    let point: usize = text[start..pos].parse().map_err(|_| PermError::Malformed {
                        pos: start,
                        msg: "integer too large".into(),
                    })?;
                    if point >= degree {
                        return Err(PermError::OutOfRange { point, degree });
                    }
                    cycle.push(point);
                }
                Some(_) => {
                    return Err(PermError::Malformed {
                        pos,
                        msg: format!("unexpected {:?}", text[pos..].chars().next().unwrap()),
                    })
                }
            }
        }
        match cycle.len() {
            // "()" is the identity
            0 => {}
            1 => {
                return Err(PermError::Malformed {
                    pos: open,
                    msg: "a cycle needs at least two points".into(),
                })
            }
            _ => cycles.push(cycle),
        }
    }
    let refs: Vec<&[usize]> = cycles.iter().map(Vec::as_slice).collect();
    Permutation::from_cycles(degree, &refs)
}

/// Generators of a permutation group, optionally labelled.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GeneratorSet {
    degree: usize,
    generators: Vec<Permutation>,
    label: Option<String>,
}

impl GeneratorSet {
    pub fn new(degree: usize, generators: Vec<Permutation>) -> Result<Self, PermError> {
        if let Some(g) = generators.iter().find(|g| g.degree() != degree) {
            return Err(PermError::DegreeMismatch(degree, g.degree()));
        }
        Ok(Self {
            degree,
            generators,
            label: None,
        })
    }

    pub fn trivial(degree: usize) -> Self {
        Self {
            degree,
            generators: Vec::new(),
            label: None,
        }
    }

    /// Parses a list of cycle-notation generators.
    pub fn parse<S: AsRef<str>>(gens: &[S], degree: usize) -> Result<Self, PermError> {
        let generators = gens
            .iter()
            .map(|g| parse_cycles(g.as_ref(), degree))
            .collect::<Result<Vec<_>, _>>()?;
        Self::new(degree, generators)
    }

    /// Parses `;`-separated generators, e.g. `"(1 2);(3 4)"`.
    pub fn parse_list(text: &str, degree: usize) -> Result<Self, PermError> {
        let parts: Vec<&str> = text.split(';').map(str::trim).filter(|s| !s.is_empty()).collect();
        Self::parse(&parts, degree)
    }

    pub fn with_label(mut self, label: impl Into<String>) -> Self {
        self.label = Some(label.into());
        self
    }

    pub fn label(&self) -> Option<&str> {
        self.label.as_deref()
    }

    pub fn degree(&self) -> usize {
        self.degree
    }

    pub fn generators(&self) -> &[Permutation] {
        &self.generators
    }

    /// Whether every generator fixes point 0.
    pub fn tonic_fixing(&self) -> bool {
        self.generators.iter().all(|g| g.fixes(0))
    }

    /// Conjugates every generator: `g ↦ π ∘ g ∘ π⁻¹`.
    ///
    /// A tonic-fixing set stays tonic-fixing, so `π` must fix 0 then.
    pub fn relabel(&self, relabeling: &Permutation) -> Result<Self, PermError> {
        if relabeling.degree() != self.degree {
            return Err(PermError::DegreeMismatch(self.degree, relabeling.degree()));
        }
        if self.tonic_fixing() && !relabeling.fixes(0) {
            return Err(PermError::MovesTonic);
        }
        let inv = relabeling.inverse();
        let generators = self
            .generators
            .iter()
            .map(|g| relabeling.compose_unchecked(&g.compose_unchecked(&inv)))
            .collect();
        Ok(Self {
            degree: self.degree,
            generators,
            label: self.label.clone(),
        })
    }

    /// Order of the generated group.
    pub fn order(&self) -> u128 {
        StabilizerChain::new(self).order()
    }
}

impl fmt::Display for GeneratorSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if let Some(label) = &self.label {
            return f.write_str(label);
        }
        let parts: Vec<String> = self.generators.iter().map(ToString::to_string).collect();
        write!(f, "{{{}}}", parts.join(", "))
    }
}

/// Order of the group generated by `gens`.
pub fn group_order(gens: &GeneratorSet) -> u128 {
    gens.order()
}

struct Level {
    base: usize,
    gens: Vec<Permutation>,
    /// `transversal[p]` maps the base point to `p`.
    transversal: Vec<Option<Permutation>>,
    orbit: Vec<usize>,
}

impl Level {
    fn new(base: usize, degree: usize) -> Self {
        let mut transversal = vec![None; degree];
        transversal[base] = Some(Permutation::identity(degree));
        Self {
            base,
            gens: Vec::new(),
            transversal,
            orbit: vec![base],
        }
    }

    /// Extends the orbit of the base point under the current generators.
    /// Existing transversal entries are never replaced, so earlier sifts
    /// stay valid.
    fn extend_orbit(&mut self) {
        let mut i = 0;
        while i < self.orbit.len() {
            let p = self.orbit[i];
            for g in &self.gens {
                let q = g.apply(p);
                if self.transversal[q].is_none() {
                    let u = self.transversal[p].as_ref().unwrap();
                    self.transversal[q] = Some(g.compose_unchecked(u));
                    self.orbit.push(q);
                }
            }
            i += 1;
        }
    }
}

/// Base and strong generating set built by the deterministic Schreier–Sims
/// algorithm.
pub struct StabilizerChain {
    degree: usize,
    levels: Vec<Level>,
}

impl StabilizerChain {
    pub fn new(gens: &GeneratorSet) -> Self {
        let mut chain = Self {
            degree: gens.degree(),
            levels: Vec::new(),
        };
        for g in gens.generators() {
            chain.insert(0, g.clone());
        }
        chain
    }

    /// Strips `g` through the levels starting at `from`; returns the residue
    /// and the level where stripping stopped.
    fn sift(&self, mut g: Permutation, from: usize) -> (Permutation, usize) {
        for (j, level) in self.levels.iter().enumerate().skip(from) {
            let image = g.apply(level.base);
            match &level.transversal[image] {
                Some(u) => g = u.inverse().compose_unchecked(&g),
                None => return (g, j),
            }
        }
        (g, self.levels.len())
    }

    /// Adds `g`, an element of the stabilizer of the first `from` base
    /// points, unless the chain already generates it.
    fn insert(&mut self, from: usize, g: Permutation) {
        let (residue, at) = self.sift(g, from);
        if residue.is_identity() {
            return;
        }
        if at == self.levels.len() {
            let base = residue.first_moved().expect("non-identity residue");
            self.levels.push(Level::new(base, self.degree));
        }
        for j in (from..=at).rev() {
            self.levels[j].gens.push(residue.clone());
            self.close(j);
        }
    }

    /// Extends the orbit of level `j` and sifts its Schreier generators into
    /// the deeper levels.
    fn close(&mut self, j: usize) {
        self.levels[j].extend_orbit();
        let mut k = 0;
        while k < self.levels[j].orbit.len() {
            let p = self.levels[j].orbit[k];
            let mut s = 0;
            while s < self.levels[j].gens.len() {
                let level = &self.levels[j];
                let gen = &level.gens[s];
                let u_p = level.transversal[p].as_ref().unwrap();
                let u_sp = level.transversal[gen.apply(p)].as_ref().unwrap();
                let schreier = u_sp.inverse().compose_unchecked(&gen.compose_unchecked(u_p));
                if !schreier.is_identity() {
                    self.insert(j + 1, schreier);
                }
                s += 1;
            }
            k += 1;
        }
    }

    pub fn base(&self) -> Vec<usize> {
        self.levels.iter().map(|l| l.base).collect()
    }

    /// Basic orbit lengths along the base.
    pub fn orbit_lengths(&self) -> Vec<usize> {
        self.levels.iter().map(|l| l.orbit.len()).collect()
    }

    pub fn order(&self) -> u128 {
        self.levels.iter().map(|l| l.orbit.len() as u128).product()
    }

    /// Membership test by sifting.
    pub fn contains(&self, g: &Permutation) -> bool {
        g.degree() == self.degree && self.sift(g.clone(), 0).0.is_identity()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(s: &str) -> Permutation {
        parse_cycles(s, DEGREE).unwrap()
    }

    fn factorial(n: u128) -> u128 {
        (1..=n).product()
    }

    #[test]
    fn parse_two_transpositions() {
        let s = p("(1 2)(3 4)");
        assert_eq!(s.apply(1), 2);
        assert_eq!(s.apply(2), 1);
        assert_eq!(s.apply(3), 4);
        assert_eq!(s.apply(4), 3);
        for i in [0, 5, 6, 7, 8, 9, 10, 11] {
            assert_eq!(s.apply(i), i);
        }
    }

    #[test]
    fn parse_identity_forms() {
        assert!(p("").is_identity());
        assert!(p("()").is_identity());
        assert!(p("  ").is_identity());
    }

    #[test]
    fn parse_sigma1_generator() {
        let s = p("(9 10)(6 11)");
        assert_eq!(s.apply(9), 10);
        assert_eq!(s.apply(10), 9);
        assert_eq!(s.apply(6), 11);
        assert_eq!(s.apply(11), 6);
        assert_eq!(s.cycles().len(), 2);
    }

    #[test]
    fn parse_errors() {
        assert!(matches!(parse_cycles("(1 2", 12), Err(PermError::Malformed { .. })));
        assert!(matches!(parse_cycles("1 2)", 12), Err(PermError::Malformed { .. })));
        assert!(matches!(parse_cycles("(1 x)", 12), Err(PermError::Malformed { .. })));
        assert!(matches!(parse_cycles("(3)", 12), Err(PermError::Malformed { .. })));
        assert_eq!(
            parse_cycles("(1 2)(2 3)", 12),
            Err(PermError::RepeatedPoint { point: 2 })
        );
        assert_eq!(parse_cycles("(1 1)", 12), Err(PermError::RepeatedPoint { point: 1 }));
        assert_eq!(
            parse_cycles("(1 12)", 12),
            Err(PermError::OutOfRange { point: 12, degree: 12 })
        );
    }

    #[test]
    fn compose_laws() {
        let s = p("(1 4)(3 5)(8 7 9 10)");
        let id = Permutation::identity(12);
        assert_eq!(s.compose(&id).unwrap(), s);
        assert_eq!(id.compose(&s).unwrap(), s);
        assert!(p("(1 2)").compose(&p("(1 2)")).unwrap().is_identity());
    }

    #[test]
    fn compose_applies_right_factor_first() {
        // r(i) = p(q(i)) with p = (1 2), q = (2 3): 1→2, 2→3, 3→1
        let r = p("(1 2)").compose(&p("(2 3)")).unwrap();
        assert_eq!((r.apply(1), r.apply(2), r.apply(3)), (2, 3, 1));
        assert_eq!(r, p("(1 2 3)"));
        // the opposite order gives 2→1, 3→2, 1→3
        let r = p("(2 3)").compose(&p("(1 2)")).unwrap();
        assert_eq!((r.apply(2), r.apply(3), r.apply(1)), (1, 2, 3));
    }

    #[test]
    fn compose_degree_mismatch() {
        let a = Permutation::identity(12);
        let b = Permutation::identity(11);
        assert_eq!(a.compose(&b), Err(PermError::DegreeMismatch(12, 11)));
    }

    #[test]
    fn inverses() {
        let id = Permutation::identity(12);
        assert_eq!(id.inverse(), id);
        assert_eq!(p("(1 2)").inverse(), p("(1 2)"));
        assert_eq!(p("(1 2 3)").inverse(), p("(1 3 2)"));
        assert!(p("(1 2 3)").compose(&p("(1 3 2)")).unwrap().is_identity());
    }

    #[test]
    fn render_round_trip() {
        for s in ["()", "(1 2)(3 4)", "(1 4)(3 5)(7 9 10 8)", "(0 11 5)(1 2 3 4)"] {
            let q = p(s);
            assert_eq!(p(&q.to_string()), q);
        }
        assert_eq!(p("(8 7 9 10)").to_string(), "(7 9 10 8)");
    }

    #[test]
    fn from_images_rejects_non_bijection() {
        assert_eq!(Permutation::from_images(&[0, 0, 2]), Err(PermError::NotBijection));
        assert!(Permutation::from_images(&[2, 0, 1]).is_ok());
    }

    #[test]
    fn order_of_trivial_group() {
        assert_eq!(GeneratorSet::trivial(12).order(), 1);
        let g = GeneratorSet::parse(&["()"], 12).unwrap();
        assert_eq!(g.order(), 1);
    }

    #[test]
    fn order_of_gamma() {
        let g = GeneratorSet::parse_list("(1 2);(3 4);(5 6);(8 9);(10 11)", 12).unwrap();
        assert_eq!(group_order(&g), 32);
    }

    #[test]
    fn order_of_s11_and_s12() {
        let s11 = GeneratorSet::parse(&["(1 2)", "(1 2 3 4 5 6 7 8 9 10 11)"], 12).unwrap();
        assert_eq!(s11.order(), 39_916_800);
        let s12 = GeneratorSet::parse(&["(0 1)", "(0 1 2 3 4 5 6 7 8 9 10 11)"], 12).unwrap();
        assert_eq!(s12.order(), factorial(12));
    }

    #[test]
    fn order_of_small_groups() {
        // alternating group A_5 on {1..5}
        let a5 = GeneratorSet::parse(&["(1 2 3)", "(1 2 3 4 5)"], 12).unwrap();
        assert_eq!(a5.order(), 60);
        // cyclic group of order 12
        let c12 = GeneratorSet::parse(&["(0 1 2 3 4 5 6 7 8 9 10 11)"], 12).unwrap();
        assert_eq!(c12.order(), 12);
        // dihedral group of the 12-gon
        let d12 = GeneratorSet::parse(&["(0 1 2 3 4 5 6 7 8 9 10 11)", "(1 11)(2 10)(3 9)(4 8)(5 7)"], 12).unwrap();
        assert_eq!(d12.order(), 24);
        // Sigma_1 is elementary abelian of rank 5
        let sigma1 = GeneratorSet::parse(&["(2 3)", "(4 5)", "(7 8)", "(9 10)(6 11)", "(9 11)(6 10)"], 12).unwrap();
        assert_eq!(sigma1.order(), 32);
    }

    #[test]
    fn chain_membership() {
        let gamma = GeneratorSet::parse_list("(1 2);(3 4);(5 6);(8 9);(10 11)", 12).unwrap();
        let chain = StabilizerChain::new(&gamma);
        assert!(chain.contains(&p("(1 2)(10 11)")));
        assert!(!chain.contains(&p("(2 3)")));
        assert_eq!(chain.orbit_lengths().iter().product::<usize>(), 32);
    }

    #[test]
    fn relabel_gamma_to_gamma_minus() {
        let gamma = GeneratorSet::parse_list("(1 2);(3 4);(5 6);(8 9);(10 11)", 12).unwrap();
        assert_eq!(gamma.relabel(&Permutation::identity(12)).unwrap(), gamma);
        // 5→6→7→5 sends the block {5,6} to {6,7} and the fixed 7 to 5
        let pi = p("(5 6 7)");
        let minus = gamma.relabel(&pi).unwrap();
        let expected = GeneratorSet::parse_list("(1 2);(3 4);(6 7);(8 9);(10 11)", 12).unwrap();
        assert_eq!(minus, expected);
        assert_eq!(minus.order(), 32);
    }

    #[test]
    fn relabel_rejects_tonic_move() {
        let gamma = GeneratorSet::parse_list("(1 2)", 12).unwrap();
        assert_eq!(gamma.relabel(&p("(0 3)")), Err(PermError::MovesTonic));
        let atonic = GeneratorSet::parse_list("(0 1)", 12).unwrap();
        assert!(atonic.relabel(&p("(0 3)")).is_ok());
        assert_eq!(
            gamma.relabel(&Permutation::identity(11)),
            Err(PermError::DegreeMismatch(12, 11))
        );
    }

    #[test]
    fn generator_degree_mismatch() {
        let r = GeneratorSet::new(12, vec![Permutation::identity(11)]);
        assert_eq!(r, Err(PermError::DegreeMismatch(12, 11)));
    }
}
