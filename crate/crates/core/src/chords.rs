//! Oriented chord diagrams on `2n` circle nodes.

use std::cmp::Ordering;
use std::fmt;
use std::str::FromStr;

use rand::seq::SliceRandom;
use rand::Rng;

use crate::error::{Result, WernerError};

/// Largest `n` accepted by the enumeration routines.
pub const MAX_ENUM_N: usize = 6;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct OrientedChord {
    pub a: usize,
    pub b: usize,
}

impl OrientedChord {
    pub fn new(a: usize, b: usize) -> Self {
        Self { a, b }
    }

    pub fn reversed(self) -> Self {
        Self {
            a: self.b,
            b: self.a,
        }
    }

    fn low_high(self) -> (usize, usize) {
        (self.a.min(self.b), self.a.max(self.b))
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct ChordDiagram {
    n: usize,
    chords: Vec<OrientedChord>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Symmetry {
    /// Equal to its half-turn rotation as an unoriented diagram.
    HalfTurn,
    NonRotational,
}

impl ChordDiagram {
    /// Builds a diagram, checking that the chords form a perfect matching of `1..=2n`.
    pub fn new(n: usize, chords: Vec<OrientedChord>) -> Result<Self> {
        if n == 0 {
            return Err(WernerError::InvalidDiagram("n must be at least 1".into()));
        }
        if chords.len() != n {
            return Err(WernerError::InvalidDiagram(format!(
                "expected {n} chords, got {}",
                chords.len()
            )));
        }
        let mut seen = vec![false; 2 * n + 1];
        for c in &chords {
            if c.a == c.b {
                return Err(WernerError::InvalidDiagram(format!("loop at node {}", c.a)));
            }
            for v in [c.a, c.b] {
                if v == 0 || v > 2 * n {
                    return Err(WernerError::InvalidDiagram(format!(
                        "node {v} outside 1..={}",
                        2 * n
                    )));
                }
                if seen[v] {
                    return Err(WernerError::InvalidDiagram(format!("node {v} used twice")));
                }
                seen[v] = true;
            }
        }
        Ok(Self { n, chords })
    }

    pub fn from_pairs(n: usize, pairs: &[(usize, usize)]) -> Result<Self> {
        Self::new(
            n,
            pairs
                .iter()
                .map(|&(a, b)| OrientedChord::new(a, b))
                .collect(),
        )
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn nodes(&self) -> usize {
        2 * self.n
    }

    pub fn chords(&self) -> &[OrientedChord] {
        &self.chords
    }

    pub fn is_canonical(&self) -> bool {
        self.chords.iter().all(|c| c.a < c.b) && self.chords.windows(2).all(|w| w[0].a < w[1].a)
    }

    /// Canonical orientation and order, plus the sign `(−1)^{#reversed chords}`
    /// relating the two diagram states.
    pub fn canonicalize(&self) -> (ChordDiagram, i8) {
        let mut sign = 1i8;
        let mut chords: Vec<OrientedChord> = self
            .chords
            .iter()
            .map(|&c| {
                if c.a > c.b {
                    sign = -sign;
                    c.reversed()
                } else {
                    c
                }
            })
            .collect();
        chords.sort_by_key(|c| c.a);
        (Self { n: self.n, chords }, sign)
    }

    pub fn is_noncrossing(&self) -> bool {
        let spans: Vec<_> = self.chords.iter().map(|c| c.low_high()).collect();
        for (i, &(a, b)) in spans.iter().enumerate() {
            for &(c, d) in &spans[i + 1..] {
                if (a < c && c < b && b < d) || (c < a && a < d && d < b) {
                    return false;
                }
            }
        }
        true
    }

    /// `R₁₈₀`: every node shifted by `n` modulo `2n`, orientation kept.
    pub fn rotate_half_turn(&self) -> ChordDiagram {
        let n = self.n;
        let shift = |v: usize| (v + n - 1) % (2 * n) + 1;
        Self {
            n,
            chords: self
                .chords
                .iter()
                .map(|c| OrientedChord::new(shift(c.a), shift(c.b)))
                .collect(),
        }
    }

    /// Equality of the underlying unoriented diagrams.
    pub fn same_unoriented(&self, other: &ChordDiagram) -> bool {
        self.canonicalize().0 == other.canonicalize().0
    }

    pub fn has_half_turn_symmetry(&self) -> bool {
        self.same_unoriented(&self.rotate_half_turn())
    }

    pub fn symmetry(&self) -> Symmetry {
        if self.has_half_turn_symmetry() {
            Symmetry::HalfTurn
        } else {
            Symmetry::NonRotational
        }
    }

    /// Chords with one end in `1..=n` and the other in `n+1..=2n`.
    pub fn midline_crossing_count(&self) -> usize {
        self.chords
            .iter()
            .filter(|c| (c.a <= self.n) != (c.b <= self.n))
            .count()
    }

    /// `a₁,b₁,…,aₙ,bₙ` of the canonical form.
    pub fn index_string(&self) -> Vec<usize> {
        self.canonicalize()
            .0
            .chords
            .iter()
            .flat_map(|c| [c.a, c.b])
            .collect()
    }

    /// Lexicographic order on the canonical index strings.
    pub fn lex_compare(&self, other: &ChordDiagram) -> Result<Ordering> {
        if self.n != other.n {
            return Err(WernerError::SizeMismatch(self.n, other.n));
        }
        Ok(self.index_string().cmp(&other.index_string()))
    }
}

impl fmt::Display for ChordDiagram {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{};", self.n)?;
        for (i, c) in self.chords.iter().enumerate() {
            let sep = if i == 0 { " " } else { ", " };
            write!(f, "{sep}{}-{}", c.a, c.b)?;
        }
        Ok(())
    }
}

impl FromStr for ChordDiagram {
    type Err = WernerError;

    /// Parses `n; a1-b1, a2-b2, ...`.
    fn from_str(s: &str) -> Result<Self> {
        let bad = |msg: &str| WernerError::Parse(format!("diagram `{s}`: {msg}"));
        let (head, body) = s.split_once(';').ok_or_else(|| bad("missing `;`"))?;
        let n: usize = head.trim().parse().map_err(|_| bad("bad n"))?;
        let mut chords = Vec::new();
        for part in body.split(',').map(str::trim).filter(|p| !p.is_empty()) {
            let (a, b) = part
                .split_once('-')
                .ok_or_else(|| bad("chord needs `a-b`"))?;
            let a = a.trim().parse().map_err(|_| bad("bad node"))?;
            let b = b.trim().parse().map_err(|_| bad("bad node"))?;
            chords.push(OrientedChord::new(a, b));
        }
        ChordDiagram::new(n, chords)
    }
}

fn check_enum_n(n: usize) -> Result<()> {
    if (1..=MAX_ENUM_N).contains(&n) {
        Ok(())
    } else {
        Err(WernerError::OutOfRange {
            name: "n",
            value: n,
            min: 1,
            max: MAX_ENUM_N,
        })
    }
}

fn noncrossing_matchings(nodes: &[usize]) -> Vec<Vec<OrientedChord>> {
    if nodes.is_empty() {
        return vec![Vec::new()];
    }
    let first = nodes[0];
    let mut out = Vec::new();
    for k in (1..nodes.len()).step_by(2) {
        let inside = noncrossing_matchings(&nodes[1..k]);
        let outside = noncrossing_matchings(&nodes[k + 1..]);
        for i in &inside {
            for o in &outside {
                let mut m = Vec::with_capacity(nodes.len() / 2);
                m.push(OrientedChord::new(first, nodes[k]));
                m.extend_from_slice(i);
                m.extend_from_slice(o);
                out.push(m);
            }
        }
    }
    out
}

/// All noncrossing diagrams on `2n` nodes in canonical orientation, sorted
/// lexicographically by index string.
pub fn enumerate_noncrossing(n: usize) -> Result<Vec<ChordDiagram>> {
    check_enum_n(n)?;
    let nodes: Vec<usize> = (1..=2 * n).collect();
    let mut out: Vec<ChordDiagram> = noncrossing_matchings(&nodes)
        .into_iter()
        .map(|chords| ChordDiagram { n, chords }.canonicalize().0)
        .collect();
    out.sort_by_key(|d| d.index_string());
    Ok(out)
}

/// The pizza diagram `{(i, i+n)}`.
pub fn pizza_diagram(n: usize) -> Result<ChordDiagram> {
    ChordDiagram::from_pairs(n, &(1..=n).map(|i| (i, i + n)).collect::<Vec<_>>())
}

/// One diagram from each non-symmetric `{D, R₁₈₀D}` pair: the lexicographically smaller.
pub fn representative_set(n: usize) -> Result<Vec<ChordDiagram>> {
    Ok(enumerate_noncrossing(n)?
        .into_iter()
        .filter(|d| {
            !d.has_half_turn_symmetry()
                && d.lex_compare(&d.rotate_half_turn()).expect("same n") == Ordering::Less
        })
        .collect())
}

/// Uniformly random perfect matching with random orientations, possibly crossing.
pub fn random_diagram<R: Rng + ?Sized>(n: usize, rng: &mut R) -> Result<ChordDiagram> {
    let mut nodes: Vec<usize> = (1..=2 * n).collect();
    nodes.shuffle(rng);
    let chords = nodes
        .chunks(2)
        .map(|p| {
            let c = OrientedChord::new(p[0], p[1]);
            if rng.random_bool(0.5) {
                c.reversed()
            } else {
                c
            }
        })
        .collect();
    ChordDiagram::new(n, chords)
}

pub fn catalan(n: usize) -> u64 {
    let mut c = 1u64;
    for k in 0..n as u64 {
        c = c * 2 * (2 * k + 1) / (k + 2);
    }
    c
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    fn d(n: usize, pairs: &[(usize, usize)]) -> ChordDiagram {
        ChordDiagram::from_pairs(n, pairs).unwrap()
    }

    // Every perfect matching of 1..=2n, by recursion on the smallest free node.
    fn all_matchings(free: &[usize]) -> Vec<Vec<(usize, usize)>> {
        if free.is_empty() {
            return vec![vec![]];
        }
        let mut out = vec![];
        for i in 1..free.len() {
            let rest: Vec<usize> = free[1..]
                .iter()
                .copied()
                .filter(|&v| v != free[i])
                .collect();
            for mut m in all_matchings(&rest) {
                m.push((free[0], free[i]));
                out.push(m);
            }
        }
        out
    }

    #[test]
    fn catalan_counts_match_brute_force() {
        for n in 1..=5 {
            let nodes: Vec<usize> = (1..=2 * n).collect();
            let brute = all_matchings(&nodes)
                .into_iter()
                .filter(|m| d(n, m).is_noncrossing())
                .count();
            assert_eq!(enumerate_noncrossing(n).unwrap().len(), brute);
            assert_eq!(brute as u64, catalan(n));
        }
        assert_eq!(
            (1..=5).map(catalan).collect::<Vec<_>>(),
            vec![1, 2, 5, 14, 42]
        );
        assert_eq!(enumerate_noncrossing(6).unwrap().len(), 132);
    }

    #[test]
    fn enumeration_n3_order() {
        let got = enumerate_noncrossing(3).unwrap();
        let expected = vec![
            d(3, &[(1, 2), (3, 4), (5, 6)]),
            d(3, &[(1, 2), (3, 6), (4, 5)]),
            d(3, &[(1, 4), (2, 3), (5, 6)]),
            d(3, &[(1, 6), (2, 3), (4, 5)]),
            d(3, &[(1, 6), (2, 5), (3, 4)]),
        ];
        assert_eq!(got, expected);
        assert!(got.iter().all(|x| x.is_canonical() && x.is_noncrossing()));
        assert_eq!(enumerate_noncrossing(1).unwrap(), vec![d(1, &[(1, 2)])]);
    }

    #[test]
    fn enumeration_bounds() {
        assert!(enumerate_noncrossing(0).is_err());
        assert!(enumerate_noncrossing(7).is_err());
    }

    #[test]
    fn crossing_detection() {
        assert!(d(2, &[(1, 2), (3, 4)]).is_noncrossing());
        assert!(!d(2, &[(1, 3), (2, 4)]).is_noncrossing());
        assert!(!d(2, &[(3, 1), (4, 2)]).is_noncrossing());
    }

    #[test]
    fn validation() {
        assert!(ChordDiagram::from_pairs(2, &[(1, 2), (2, 3)]).is_err());
        assert!(ChordDiagram::from_pairs(2, &[(1, 2)]).is_err());
        assert!(ChordDiagram::from_pairs(1, &[(1, 1)]).is_err());
        assert!(ChordDiagram::from_pairs(1, &[(1, 3)]).is_err());
        assert!(ChordDiagram::from_pairs(0, &[]).is_err());
    }

    #[test]
    fn pizza() {
        assert_eq!(pizza_diagram(3).unwrap(), d(3, &[(1, 4), (2, 5), (3, 6)]));
        assert_eq!(pizza_diagram(1).unwrap(), d(1, &[(1, 2)]));
        for n in 1..=6 {
            let p = pizza_diagram(n).unwrap();
            assert_eq!(p.midline_crossing_count(), n);
            assert!(p.has_half_turn_symmetry());
        }
    }

    #[test]
    fn half_turn_rotation() {
        let x = d(3, &[(1, 2), (3, 4), (5, 6)]);
        let r = x.rotate_half_turn();
        assert_eq!(
            r.chords(),
            &[
                OrientedChord::new(4, 5),
                OrientedChord::new(6, 1),
                OrientedChord::new(2, 3)
            ]
        );
        assert!(r.same_unoriented(&d(3, &[(1, 6), (2, 3), (4, 5)])));
        assert!(r.rotate_half_turn().same_unoriented(&x));
        assert!(!x.has_half_turn_symmetry());
        assert!(d(3, &[(1, 2), (3, 6), (4, 5)]).has_half_turn_symmetry());
        let pz = pizza_diagram(3).unwrap();
        assert!(pz.rotate_half_turn().same_unoriented(&pz));
    }

    #[test]
    fn canonical_sign() {
        let (c, s) = d(1, &[(2, 1)]).canonicalize();
        assert_eq!((c, s), (d(1, &[(1, 2)]), -1));
        let x = d(2, &[(1, 2), (3, 4)]);
        assert_eq!(x.canonicalize(), (x.clone(), 1));
        assert_eq!(d(2, &[(4, 3), (2, 1)]).canonicalize(), (x, 1));
    }

    #[test]
    fn lex_order() {
        let a = d(3, &[(1, 2), (3, 4), (5, 6)]);
        let b = d(3, &[(1, 6), (2, 3), (4, 5)]);
        assert_eq!(a.lex_compare(&b).unwrap(), Ordering::Less);
        assert_eq!(b.lex_compare(&a).unwrap(), Ordering::Greater);
        assert_eq!(a.lex_compare(&a).unwrap(), Ordering::Equal);
        assert!(a.lex_compare(&d(1, &[(1, 2)])).is_err());
    }

    #[test]
    fn representatives() {
        assert_eq!(
            representative_set(3).unwrap(),
            vec![d(3, &[(1, 2), (3, 4), (5, 6)])]
        );
        assert!(representative_set(1).unwrap().is_empty());
        for n in 1..=6 {
            let all = enumerate_noncrossing(n).unwrap();
            let symm = all.iter().filter(|x| x.has_half_turn_symmetry()).count();
            let r = representative_set(n).unwrap();
            assert_eq!(symm + 2 * r.len(), catalan(n) as usize);
            for x in &r {
                let rot = x.rotate_half_turn();
                assert!(!r.iter().any(|y| y.same_unoriented(&rot)));
            }
        }
    }

    #[test]
    fn midline_parity_on_random_matchings() {
        let mut rng = ChaCha8Rng::seed_from_u64(7);
        for _ in 0..500 {
            let n = rng.random_range(1..=8);
            let x = random_diagram(n, &mut rng).unwrap();
            assert_eq!(x.midline_crossing_count() % 2, n % 2);
        }
        assert_eq!(d(3, &[(1, 2), (3, 4), (5, 6)]).midline_crossing_count(), 1);
    }

    #[test]
    fn rotation_is_involution_on_random() {
        let mut rng = ChaCha8Rng::seed_from_u64(11);
        for _ in 0..200 {
            let n = rng.random_range(1..=6);
            let x = random_diagram(n, &mut rng).unwrap();
            assert_eq!(x.rotate_half_turn().rotate_half_turn(), x);
        }
    }

    #[test]
    fn text_format_roundtrip() {
        let x: ChordDiagram = "3; 1-2, 3-6, 4-5".parse().unwrap();
        assert_eq!(x, d(3, &[(1, 2), (3, 6), (4, 5)]));
        assert_eq!(x.to_string(), "3; 1-2, 3-6, 4-5");
        assert!("3 1-2".parse::<ChordDiagram>().is_err());
        assert!("2; 1-2, 2-3".parse::<ChordDiagram>().is_err());
    }
}
