//! Reduced indecomposable root systems of rank 2 to 8.
//!
//! Roots are stored in the usual Bourbaki coordinates multiplied by two, so
//! every coordinate (including the half-integers of `E_8` and `F_4`) is an
//! exact integer. Positive roots are indexed `0..m` in height order, ties
//! broken by ascending lexicographic order of the coordinates; the negative
//! of positive root `i` has index `m + i`.

use std::collections::{HashMap, HashSet, VecDeque};
use std::fmt;
use std::str::FromStr;

use crate::error::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Family {
    A,
    B,
    C,
    D,
    E,
    F,
    G,
}

impl Family {
    pub fn letter(self) -> char {
        match self {
            Family::A => 'A',
            Family::B => 'B',
            Family::C => 'C',
            Family::D => 'D',
            Family::E => 'E',
            Family::F => 'F',
            Family::G => 'G',
        }
    }
}

/// Family and rank of an indecomposable root system, e.g. `C2`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct RootSystemId {
    pub family: Family,
    pub rank: usize,
}

impl RootSystemId {
    pub fn new(family: Family, rank: usize) -> Result<Self> {
        let legal = match family {
            Family::A => rank >= 2,
            Family::B | Family::C => rank >= 2,
            Family::D => rank >= 4,
            Family::E => (6..=8).contains(&rank),
            Family::F => rank == 4,
            Family::G => rank == 2,
        };
        if legal {
            Ok(RootSystemId { family, rank })
        } else {
            Err(Error::IllegalRank { family: family.letter(), rank })
        }
    }
}

impl fmt::Display for RootSystemId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}{}", self.family.letter(), self.rank)
    }
}

impl FromStr for RootSystemId {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let s = s.trim();
        let mut chars = s.chars();
        let family = match chars.next().map(|c| c.to_ascii_uppercase()) {
            Some('A') => Family::A,
            Some('B') => Family::B,
            Some('C') => Family::C,
            Some('D') => Family::D,
            Some('E') => Family::E,
            Some('F') => Family::F,
            Some('G') => Family::G,
            _ => return Err(Error::UnknownSystem(s.to_string())),
        };
        let rank: usize = chars
            .as_str()
            .parse()
            .map_err(|_| Error::UnknownSystem(s.to_string()))?;
        RootSystemId::new(family, rank)
    }
}

/// A root with doubled coordinates and its expansion over the simple roots.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Root {
    pub coords: Vec<i32>,
    pub coeffs: Vec<i32>,
    pub height: i32,
}

impl Root {
    pub fn is_positive(&self) -> bool {
        self.height > 0
    }

    pub fn norm2(&self) -> i32 {
        dot(&self.coords, &self.coords)
    }
}

fn dot(a: &[i32], b: &[i32]) -> i32 {
    a.iter().zip(b).map(|(x, y)| x * y).sum()
}

/// `<a, b> = 2 (a, b) / (b, b)`.
pub fn cartan_pairing(a: &Root, b: &Root) -> i32 {
    let num = 2 * dot(&a.coords, &b.coords);
    let den = b.norm2();
    debug_assert_eq!(num % den, 0);
    num / den
}

#[derive(Debug, Clone)]
pub struct RootSystem {
    pub id: RootSystemId,
    roots: Vec<Root>,
    simple: Vec<usize>,
    index: HashMap<Vec<i32>, usize>,
    m: usize,
    // pairing[i * n + j] = <root i, root j>
    pairing: Vec<i8>,
}

fn unit(dim: usize, i: usize, scale: i32) -> Vec<i32> {
    let mut v = vec![0; dim];
    v[i] = scale;
    v
}

fn simple_roots(id: RootSystemId) -> Vec<Vec<i32>> {
    let l = id.rank;
    let diff = |dim: usize, i: usize, j: usize| {
        let mut v = vec![0; dim];
        v[i] = 2;
        v[j] = -2;
        v
    };
    match id.family {
        Family::A => (0..l).map(|i| diff(l + 1, i, i + 1)).collect(),
        Family::B | Family::C | Family::D => {
            let mut s: Vec<_> = (0..l - 1).map(|i| diff(l, i, i + 1)).collect();
            s.push(match id.family {
                Family::B => unit(l, l - 1, 2),
                Family::C => unit(l, l - 1, 4),
                _ => {
                    let mut v = vec![0; l];
                    v[l - 2] = 2;
                    v[l - 1] = 2;
                    v
                }
            });
            s
        }
        Family::G => vec![vec![2, -2, 0], vec![-4, 2, 2]],
        Family::F => vec![vec![0, 2, -2, 0], vec![0, 0, 2, -2], vec![0, 0, 0, 2], vec![1, -1, -1, -1]],
        Family::E => {
            let mut s = vec![vec![1, -1, -1, -1, -1, -1, -1, 1], vec![2, 2, 0, 0, 0, 0, 0, 0]];
            for i in 0..6 {
                s.push(diff(8, i + 1, i));
            }
            s.truncate(l);
            s
        }
    }
}

/// Builds the full root system for `id`.
pub fn build_root_system(id: RootSystemId) -> Result<RootSystem> {
    let id = RootSystemId::new(id.family, id.rank)?;
    let simple = simple_roots(id);
    let l = simple.len();
    let norms: Vec<i32> = simple.iter().map(|a| dot(a, a)).collect();

    // Weyl-orbit closure of the simple roots, tracking simple-root coefficients.
    let mut seen: HashMap<Vec<i32>, Vec<i32>> = HashMap::new();
    let mut queue = VecDeque::new();
    for (i, a) in simple.iter().enumerate() {
        let c = unit(l, i, 1);
        seen.insert(a.clone(), c.clone());
        queue.push_back((a.clone(), c));
    }
    while let Some((v, c)) = queue.pop_front() {
        for (i, a) in simple.iter().enumerate() {
            let p = 2 * dot(&v, a) / norms[i];
            if p == 0 {
                continue;
            }
            let w: Vec<i32> = v.iter().zip(a).map(|(x, y)| x - p * y).collect();
            if !seen.contains_key(&w) {
                let mut wc = c.clone();
                wc[i] -= p;
                seen.insert(w.clone(), wc.clone());
                queue.push_back((w, wc));
            }
        }
    }

    let mut positives: Vec<Root> = seen
        .into_iter()
        .filter(|(_, c)| c.iter().all(|&x| x >= 0))
        .map(|(coords, coeffs)| {
            let height = coeffs.iter().sum();
            Root { coords, coeffs, height }
        })
        .collect();
    positives.sort_by(|a, b| a.height.cmp(&b.height).then_with(|| a.coords.cmp(&b.coords)));
    let m = positives.len();
    let negatives: Vec<Root> = positives
        .iter()
        .map(|r| Root {
            coords: r.coords.iter().map(|x| -x).collect(),
            coeffs: r.coeffs.iter().map(|x| -x).collect(),
            height: -r.height,
        })
        .collect();
    let roots: Vec<Root> = positives.into_iter().chain(negatives).collect();
    let index: HashMap<Vec<i32>, usize> =
        roots.iter().enumerate().map(|(i, r)| (r.coords.clone(), i)).collect();
    let simple_idx: Vec<usize> = simple.iter().map(|a| index[a]).collect();
    let n = roots.len();
    let mut pairing = vec![0i8; n * n];
    for i in 0..n {
        for j in 0..n {
            pairing[i * n + j] = cartan_pairing(&roots[i], &roots[j]) as i8;
        }
    }
    Ok(RootSystem { id, roots, simple: simple_idx, index, m, pairing })
}

impl RootSystem {
    pub fn rank(&self) -> usize {
        self.id.rank
    }

    /// `|Φ^+|`.
    pub fn num_positive(&self) -> usize {
        self.m
    }

    pub fn len(&self) -> usize {
        self.roots.len()
    }

    pub fn is_empty(&self) -> bool {
        self.roots.is_empty()
    }

    pub fn root(&self, i: usize) -> &Root {
        &self.roots[i]
    }

    pub fn roots(&self) -> &[Root] {
        &self.roots
    }

    pub fn positive_roots(&self) -> &[Root] {
        &self.roots[..self.m]
    }

    /// Indices of the simple roots `a1..al`.
    pub fn simple(&self) -> &[usize] {
        &self.simple
    }

    pub fn is_positive(&self, i: usize) -> bool {
        i < self.m
    }

    pub fn neg(&self, i: usize) -> usize {
        if i < self.m {
            i + self.m
        } else {
            i - self.m
        }
    }

    pub fn index_of(&self, coords: &[i32]) -> Option<usize> {
        self.index.get(coords).copied()
    }

    pub fn highest_root(&self) -> usize {
        self.m - 1
    }

    pub fn height(&self, i: usize) -> i32 {
        self.roots[i].height
    }

    pub fn norm2(&self, i: usize) -> i32 {
        self.roots[i].norm2()
    }

    pub fn is_long(&self, i: usize) -> bool {
        let max = self.roots.iter().map(Root::norm2).max().unwrap_or(0);
        self.norm2(i) == max
    }

    pub fn inner(&self, i: usize, j: usize) -> i32 {
        dot(&self.roots[i].coords, &self.roots[j].coords)
    }

    /// `<root i, root j>`.
    pub fn pairing(&self, i: usize, j: usize) -> i32 {
        self.pairing[i * self.roots.len() + j] as i32
    }

    /// Index of `i·root a + j·root b` when that is a root.
    pub fn combo(&self, a: usize, i: i32, b: usize, j: i32) -> Option<usize> {
        let v: Vec<i32> = self.roots[a]
            .coords
            .iter()
            .zip(&self.roots[b].coords)
            .map(|(x, y)| i * x + j * y)
            .collect();
        self.index_of(&v)
    }

    pub fn sum(&self, a: usize, b: usize) -> Option<usize> {
        self.combo(a, 1, b, 1)
    }

    /// `w_a(b) = b - <b, a> a`.
    pub fn reflect(&self, a: usize, b: usize) -> usize {
        let p = self.pairing(b, a);
        if p == 0 {
            return b;
        }
        self.combo(b, 1, a, -p).expect("root systems are closed under reflections")
    }

    /// The reflection `w_a` as a permutation of root indices.
    pub fn reflection_perm(&self, a: usize) -> Vec<u16> {
        (0..self.len()).map(|b| self.reflect(a, b) as u16).collect()
    }

    /// `max{k : b - k a ∈ Φ}`.
    pub fn string_down(&self, a: usize, b: usize) -> i32 {
        let mut k = 0;
        while self.combo(b, 1, a, -(k + 1)).is_some() {
            k += 1;
        }
        k
    }

    pub fn are_independent(&self, a: usize, b: usize) -> bool {
        a != b && a != self.neg(b)
    }

    /// Name of a root as a combination of simple roots, e.g. `a1+2a2`, `-a1`.
    pub fn name(&self, i: usize) -> String {
        let mut out = String::new();
        for (k, &c) in self.roots[i].coeffs.iter().enumerate() {
            if c == 0 {
                continue;
            }
            if c < 0 {
                out.push('-');
            } else if !out.is_empty() {
                out.push('+');
            }
            if c.abs() != 1 {
                out.push_str(&c.abs().to_string());
            }
            out.push_str(&format!("a{}", k + 1));
        }
        out
    }

    /// Coordinates in the usual (undoubled) basis, e.g. `[1,-1,0]`.
    pub fn coord_string(&self, i: usize) -> String {
        let parts: Vec<String> = self.roots[i]
            .coords
            .iter()
            .map(|&x| if x % 2 == 0 { (x / 2).to_string() } else { format!("{}/2", x) })
            .collect();
        format!("[{}]", parts.join(","))
    }

    /// Parses `a1+a2`, `-2a1+a2`, `e1+e2`, `2e1`, `e2-e1` or `[1,-1,0]`.
    pub fn parse_root(&self, text: &str) -> Result<usize> {
        let s: String = text.chars().filter(|c| !c.is_whitespace()).collect();
        let unknown = || Error::UnknownSymbol(text.to_string());
        let dim = self.roots[0].coords.len();
        if let Some(inner) = s.strip_prefix('[').and_then(|x| x.strip_suffix(']')) {
            let mut coords = Vec::new();
            for part in inner.split(',') {
                let doubled = if let Some((num, den)) = part.split_once('/') {
                    if den != "2" {
                        return Err(unknown());
                    }
                    num.parse::<i32>().map_err(|_| unknown())?
                } else {
                    2 * part.parse::<i32>().map_err(|_| unknown())?
                };
                coords.push(doubled);
            }
            return self.index_of(&coords).ok_or_else(unknown);
        }
        let mut coords = vec![0i32; dim];
        let bytes = s.as_bytes();
        let mut pos = 0;
        if bytes.is_empty() {
            return Err(unknown());
        }
        while pos < bytes.len() {
            let mut sign = 1;
            if bytes[pos] == b'+' || bytes[pos] == b'-' {
                if bytes[pos] == b'-' {
                    sign = -1;
                }
                pos += 1;
            }
            let start = pos;
            while pos < bytes.len() && bytes[pos].is_ascii_digit() {
                pos += 1;
            }
            let coef: i32 = if start == pos { 1 } else { s[start..pos].parse().map_err(|_| unknown())? };
            let basis = *bytes.get(pos).ok_or_else(unknown)?;
            pos += 1;
            let start = pos;
            while pos < bytes.len() && bytes[pos].is_ascii_digit() {
                pos += 1;
            }
            let k: usize = s[start..pos].parse().map_err(|_| unknown())?;
            if k == 0 {
                return Err(unknown());
            }
            match basis {
                b'a' => {
                    let a = *self.simple.get(k - 1).ok_or_else(unknown)?;
                    for (c, x) in coords.iter_mut().zip(&self.roots[a].coords) {
                        *c += sign * coef * x;
                    }
                }
                b'e' => {
                    if k > dim {
                        return Err(unknown());
                    }
                    coords[k - 1] += 2 * sign * coef;
                }
                _ => return Err(unknown()),
            }
        }
        self.index_of(&coords).ok_or_else(unknown)
    }
}

/// A Weyl group element as a permutation of root indices.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct WeylElement {
    pub perm: Vec<u16>,
    /// Simple-reflection positions (0-based into `RootSystem::simple`), leftmost first.
    pub reduced_word: Vec<usize>,
}

impl WeylElement {
    pub fn identity(rs: &RootSystem) -> Self {
        WeylElement { perm: (0..rs.len() as u16).collect(), reduced_word: Vec::new() }
    }

    /// Product of simple reflections `s_{w[0]} s_{w[1]} ...` (not checked for reducedness).
    pub fn from_word(rs: &RootSystem, word: &[usize]) -> Self {
        let mut w = WeylElement::identity(rs);
        for &i in word {
            w = w.times_simple(rs, i);
        }
        w
    }

    pub fn apply(&self, root: usize) -> usize {
        self.perm[root] as usize
    }

    pub fn len(&self) -> usize {
        self.reduced_word.len()
    }

    pub fn is_empty(&self) -> bool {
        self.reduced_word.is_empty()
    }

    pub fn is_identity(&self) -> bool {
        self.perm.iter().enumerate().all(|(i, &p)| i == p as usize)
    }

    /// `self · s_i`.
    pub fn times_simple(&self, rs: &RootSystem, i: usize) -> Self {
        let s = rs.reflection_perm(rs.simple()[i]);
        let perm = s.iter().map(|&b| self.perm[b as usize]).collect();
        let mut reduced_word = self.reduced_word.clone();
        reduced_word.push(i);
        WeylElement { perm, reduced_word }
    }

    /// Number of positive roots sent to negative roots.
    pub fn inversions(&self, rs: &RootSystem) -> usize {
        (0..rs.num_positive()).filter(|&i| !rs.is_positive(self.apply(i))).count()
    }
}

/// Closure of the simple reflections, in breadth-first (length) order.
pub fn generate_weyl(rs: &RootSystem, cap: usize) -> Result<Vec<WeylElement>> {
    let id = WeylElement::identity(rs);
    let mut seen: HashSet<Vec<u16>> = HashSet::new();
    seen.insert(id.perm.clone());
    let mut out = vec![id];
    let mut head = 0;
    while head < out.len() {
        let w = out[head].clone();
        head += 1;
        for i in 0..rs.rank() {
            let next = w.times_simple(rs, i);
            if seen.insert(next.perm.clone()) {
                if out.len() >= cap {
                    return Err(Error::CapExceeded(cap));
                }
                out.push(next);
            }
        }
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn sys(s: &str) -> RootSystem {
        build_root_system(s.parse().unwrap()).unwrap()
    }

    #[test]
    fn root_counts() {
        for (name, n) in [
            ("A2", 6),
            ("A3", 12),
            ("B2", 8),
            ("C2", 8),
            ("B3", 18),
            ("C3", 18),
            ("D4", 24),
            ("G2", 12),
            ("F4", 48),
            ("E6", 72),
            ("E7", 126),
            ("E8", 240),
        ] {
            assert_eq!(sys(name).len(), n, "{name}");
        }
        assert_eq!(sys("G2").num_positive(), 6);
    }

    #[test]
    fn illegal_ranks() {
        assert!("A1".parse::<RootSystemId>().is_err());
        assert!("D3".parse::<RootSystemId>().is_err());
        assert!("E5".parse::<RootSystemId>().is_err());
        assert!("G3".parse::<RootSystemId>().is_err());
        assert!(matches!(
            RootSystemId::new(Family::F, 3),
            Err(Error::IllegalRank { family: 'F', rank: 3 })
        ));
    }

    #[test]
    fn pairings() {
        let a2 = sys("A2");
        let (a1, a2s) = (a2.simple()[0], a2.simple()[1]);
        assert_eq!(a2.pairing(a1, a1), 2);
        assert_eq!(a2.pairing(a1, a2s), -1);
        assert_eq!(a2.pairing(a1, a2.neg(a1)), -2);
        let g2 = sys("G2");
        let (short, long) = (g2.simple()[0], g2.simple()[1]);
        assert!(g2.is_long(long) && !g2.is_long(short));
        assert_eq!(g2.pairing(long, short), -3);
    }

    #[test]
    fn reflections() {
        let a2 = sys("A2");
        let (a1, a2s) = (a2.simple()[0], a2.simple()[1]);
        assert_eq!(a2.reflect(a1, a1), a2.neg(a1));
        assert_eq!(Some(a2.reflect(a1, a2s)), a2.sum(a1, a2s));
        let c2 = sys("C2");
        let e1 = c2.parse_root("2e1").unwrap();
        let e2 = c2.parse_root("2e2").unwrap();
        assert_eq!(c2.reflect(e1, e2), e2);
    }

    #[test]
    fn highest_roots() {
        let a2 = sys("A2");
        assert_eq!(a2.coord_string(a2.highest_root()), "[1,0,-1]");
        let c2 = sys("C2");
        assert_eq!(c2.coord_string(c2.highest_root()), "[2,0]");
        let g2 = sys("G2");
        // 3 short + 2 long in the a1 (short), a2 (long) labelling
        assert_eq!(g2.root(g2.highest_root()).coeffs, vec![3, 2]);
        assert_eq!(g2.name(g2.highest_root()), "3a1+2a2");
    }

    #[test]
    fn ordering_and_negation() {
        for name in ["A3", "B3", "C3", "D4", "G2", "F4", "E6"] {
            let rs = sys(name);
            let m = rs.num_positive();
            for w in rs.positive_roots().windows(2) {
                assert!(w[0].height <= w[1].height);
            }
            for &s in rs.simple() {
                assert!(s < rs.rank(), "{name}: simple roots come first");
            }
            for i in 0..rs.len() {
                assert_ne!(rs.neg(i), i);
                assert_eq!(rs.neg(rs.neg(i)), i);
                assert_eq!(rs.root(i).is_positive(), i < m);
            }
            let lens: HashSet<i32> = rs.roots().iter().map(Root::norm2).collect();
            assert!(lens.len() <= 2);
        }
    }

    #[test]
    fn reflection_and_pairing_closure() {
        for name in ["A2", "A3", "B2", "B3", "C3", "D4", "G2", "F4", "E6"] {
            let rs = sys(name);
            for a in 0..rs.len() {
                for b in 0..rs.len() {
                    let _ = rs.reflect(a, b);
                    if rs.are_independent(a, b) {
                        let pp = rs.pairing(a, b) * rs.pairing(b, a);
                        assert!((0..=3).contains(&pp), "{name}");
                    }
                }
            }
        }
    }

    #[test]
    fn weyl_orders() {
        let order = |s: &str| generate_weyl(&sys(s), 100_000).unwrap().len();
        assert_eq!(order("A2"), 6);
        assert_eq!(order("C2"), 8);
        assert_eq!(order("G2"), 12);
        assert_eq!(order("A3"), 24);
        assert_eq!(order("B3"), 48);
        assert_eq!(order("F4"), 1152);
        assert!(matches!(generate_weyl(&sys("A3"), 10), Err(Error::CapExceeded(10))));
    }

    #[test]
    fn weyl_words_reproduce_action() {
        let rs = sys("B3");
        let ws = generate_weyl(&rs, 1000).unwrap();
        assert!(ws[0].reduced_word.is_empty());
        for w in &ws {
            let rebuilt = WeylElement::from_word(&rs, &w.reduced_word);
            assert_eq!(rebuilt.perm, w.perm);
            assert_eq!(w.inversions(&rs), w.len());
        }
        let again = generate_weyl(&rs, 1000).unwrap();
        assert_eq!(ws, again);
    }

    #[test]
    fn parse_root_syntax() {
        let c2 = sys("C2");
        let a = c2.parse_root("e1+e2").unwrap();
        assert_eq!(c2.coord_string(a), "[1,1]");
        assert_eq!(c2.parse_root("a1+a2").unwrap(), a);
        assert_eq!(c2.parse_root("[1,1]").unwrap(), a);
        assert_eq!(c2.parse_root("e2-e1").unwrap(), c2.neg(c2.simple()[0]));
        assert!(c2.parse_root("e1").is_err());
        let f4 = sys("F4");
        assert!(f4.parse_root("[1/2,-1/2,-1/2,-1/2]").is_ok());
    }
}
