//! Sparse permutations, cycle notation, generating sets and orbits.
//!
//! A [`Permutation`] stores only its moved points, so reading, writing and
//! composing costs time proportional to the support rather than the degree.
//! External labels are 1-based; the internal domain is `0..degree`.

use std::fmt;

use petgraph::unionfind::UnionFind;
use serde::{Deserialize, Serialize};
use thiserror::Error;

/// A point of a permutation domain.
pub type Point = u32;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum PermError {
    #[error("degree mismatch: {left} vs {right}")]
    DegreeMismatch { left: usize, right: usize },
    #[error("point {point} is outside the domain of degree {degree}")]
    OutOfRange { point: Point, degree: usize },
    #[error("point {point} has more than one preimage")]
    NotBijective { point: Point },
    #[error("point set is not closed under the permutation (point {point} leaves it)")]
    NotClosed { point: Point },
}

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum CycleParseError {
    #[error("unexpected {found:?} at position {pos}")]
    Syntax { pos: usize, found: char },
    #[error("unexpected end of input at position {pos}")]
    UnexpectedEnd { pos: usize },
    #[error("label {label} at position {pos} is not a point of the domain")]
    InvalidLabel { pos: usize, label: i64 },
    #[error("label {label} at position {pos} appears more than once")]
    Duplicate { pos: usize, label: i64 },
}

/// Error from a generator file, tagged with its 1-based line number.
#[derive(Debug, Error, Clone, PartialEq, Eq)]
#[error("line {line}: {source}")]
pub struct GeneratorFileError {
    pub line: usize,
    #[source]
    pub source: CycleParseError,
}

/// A permutation of `0..degree` stored as its sorted list of moved points.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct Permutation {
    degree: usize,
    moved: Vec<(Point, Point)>,
}

impl Permutation {
    pub fn identity(degree: usize) -> Self {
        Permutation {
            degree,
            moved: Vec::new(),
        }
    }

    /// Builds a permutation from `(point, image)` pairs; fixed pairs are dropped.
    pub fn from_pairs(degree: usize, pairs: impl IntoIterator<Item = (Point, Point)>) -> Result<Self, PermError> {
        let mut moved: Vec<(Point, Point)> = pairs.into_iter().filter(|(x, y)| x != y).collect();
        for &(x, y) in &moved {
            for p in [x, y] {
                if p as usize >= degree {
                    return Err(PermError::OutOfRange { point: p, degree });
                }
            }
        }
        moved.sort_unstable();
        if let Some(w) = moved.windows(2).find(|w| w[0].0 == w[1].0) {
            return Err(PermError::NotBijective { point: w[0].0 });
        }
        let mut images: Vec<Point> = moved.iter().map(|&(_, y)| y).collect();
        images.sort_unstable();
        for (k, &y) in images.iter().enumerate() {
            if k > 0 && images[k - 1] == y {
                return Err(PermError::NotBijective { point: y });
            }
            if moved.binary_search_by_key(&y, |&(x, _)| x).is_err() {
                return Err(PermError::NotBijective { point: y });
            }
        }
        Ok(Permutation { degree, moved })
    }

    /// Builds a permutation from a dense image array.
    pub fn from_images(images: &[Point]) -> Result<Self, PermError> {
        let degree = images.len();
        let mut seen = vec![false; degree];
        for &y in images {
            if y as usize >= degree {
                return Err(PermError::OutOfRange { point: y, degree });
            }
            if std::mem::replace(&mut seen[y as usize], true) {
                return Err(PermError::NotBijective { point: y });
            }
        }
        let moved = images
            .iter()
            .enumerate()
            .filter(|&(x, &y)| x as Point != y)
            .map(|(x, &y)| (x as Point, y))
            .collect();
        Ok(Permutation { degree, moved })
    }

    /// Builds a permutation from disjoint cycles.
    pub fn from_cycles(degree: usize, cycles: &[Vec<Point>]) -> Result<Self, PermError> {
        let pairs = cycles
            .iter()
            .flat_map(|c| (0..c.len()).map(move |k| (c[k], c[(k + 1) % c.len()])));
        Self::from_pairs(degree, pairs)
    }

    pub fn degree(&self) -> usize {
        self.degree
    }

    pub fn is_identity(&self) -> bool {
        self.moved.is_empty()
    }

    /// Number of moved points, `|supp(p)|`.
    pub fn support_len(&self) -> usize {
        self.moved.len()
    }

    /// Moved points in ascending order.
    pub fn support(&self) -> impl Iterator<Item = Point> + '_ {
        self.moved.iter().map(|&(x, _)| x)
    }

    /// `(point, image)` pairs of the moved points in ascending point order.
    pub fn pairs(&self) -> &[(Point, Point)] {
        &self.moved
    }

    pub fn moves(&self, x: Point) -> bool {
        self.moved.binary_search_by_key(&x, |&(p, _)| p).is_ok()
    }

    pub fn apply(&self, x: Point) -> Point {
        match self.moved.binary_search_by_key(&x, |&(p, _)| p) {
            Ok(k) => self.moved[k].1,
            Err(_) => x,
        }
    }

    pub fn to_images(&self) -> Vec<Point> {
        let mut images: Vec<Point> = (0..self.degree as Point).collect();
        for &(x, y) in &self.moved {
            images[x as usize] = y;
        }
        images
    }

    /// The permutation `x ↦ other(self(x))`: `self` is applied first.
    pub fn compose(&self, other: &Permutation) -> Result<Permutation, PermError> {
        if self.degree != other.degree {
            return Err(PermError::DegreeMismatch {
                left: self.degree,
                right: other.degree,
            });
        }
        let (a, b) = (&self.moved, &other.moved);
        let mut moved = Vec::with_capacity(a.len() + b.len());
        let (mut i, mut j) = (0, 0);
        while i < a.len() || j < b.len() {
            let x = match (a.get(i), b.get(j)) {
                (Some(&(p, _)), Some(&(q, _))) => p.min(q),
                (Some(&(p, _)), None) => p,
                (None, Some(&(q, _))) => q,
                (None, None) => unreachable!(),
            };
            let mid = if a.get(i).is_some_and(|&(p, _)| p == x) {
                i += 1;
                a[i - 1].1
            } else {
                x
            };
            if b.get(j).is_some_and(|&(q, _)| q == x) {
                j += 1;
            }
            let y = other.apply(mid);
            if y != x {
                moved.push((x, y));
            }
        }
        Ok(Permutation {
            degree: self.degree,
            moved,
        })
    }

    pub fn inverse(&self) -> Permutation {
        let mut moved: Vec<(Point, Point)> = self.moved.iter().map(|&(x, y)| (y, x)).collect();
        moved.sort_unstable();
        Permutation {
            degree: self.degree,
            moved,
        }
    }

    /// Disjoint cycles of length at least two, each starting at its minimum,
    /// sorted by minimum.
    pub fn cycles(&self) -> Vec<Vec<Point>> {
        let mut done = vec![false; self.moved.len()];
        let mut cycles = Vec::new();
        for k in 0..self.moved.len() {
            if done[k] {
                continue;
            }
            let start = self.moved[k].0;
            let mut cycle = vec![start];
            done[k] = true;
            let mut x = self.moved[k].1;
            while x != start {
                let idx = self.moved.binary_search_by_key(&x, |&(p, _)| p).unwrap();
                done[idx] = true;
                cycle.push(x);
                x = self.moved[idx].1;
            }
            cycles.push(cycle);
        }
        cycles
    }

    /// Lengths of the non-trivial cycles.
    pub fn cycle_lengths(&self) -> Vec<usize> {
        self.cycles().iter().map(Vec::len).collect()
    }

    pub fn parity(&self) -> Parity {
        let even_cycles = self.cycles().iter().filter(|c| c.len() % 2 == 0).count();
        if even_cycles % 2 == 1 {
            Parity::Odd
        } else {
            Parity::Even
        }
    }

    /// Restriction to an invariant point set, re-indexed so that the sorted
    /// set becomes `0..points.len()`.
    pub fn restrict(&self, points: &[Point]) -> Result<Permutation, PermError> {
        let mut sorted = points.to_vec();
        sorted.sort_unstable();
        sorted.dedup();
        let index_of = |p: Point| sorted.binary_search(&p).ok();
        let mut pairs = Vec::new();
        for &x in &sorted {
            if x as usize >= self.degree {
                return Err(PermError::OutOfRange {
                    point: x,
                    degree: self.degree,
                });
            }
            let y = self.apply(x);
            match index_of(y) {
                Some(j) => pairs.push((index_of(x).unwrap() as Point, j as Point)),
                None => return Err(PermError::NotClosed { point: x }),
            }
        }
        Permutation::from_pairs(sorted.len(), pairs)
    }

    /// The part of the permutation acting on `points` (assumed invariant),
    /// identity elsewhere, on the original domain.
    pub fn cut(&self, keep: impl Fn(Point) -> bool) -> Permutation {
        Permutation {
            degree: self.degree,
            moved: self.moved.iter().copied().filter(|&(x, _)| keep(x)).collect(),
        }
    }
}

impl fmt::Debug for Permutation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "Permutation[{}]{}",
            self.degree,
            format_cycles_with(self, |p| p as i64)
        )
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Parity {
    Even,
    Odd,
}

impl std::ops::BitXor for Parity {
    type Output = Parity;
    fn bitxor(self, rhs: Parity) -> Parity {
        if self == rhs {
            Parity::Even
        } else {
            Parity::Odd
        }
    }
}

/// Tokenizes `(a,b,c)(d,e)` into cycles of raw integer labels with positions.
fn tokenize_cycles(text: &str) -> Result<Vec<Vec<(usize, i64)>>, CycleParseError> {
    let bytes = text.as_bytes();
    let mut pos = 0;
    let mut cycles = Vec::new();
    let skip_ws = |pos: &mut usize| {
        while *pos < bytes.len() && bytes[*pos].is_ascii_whitespace() {
            *pos += 1;
        }
    };
    let char_at = |pos: usize| text[pos..].chars().next().unwrap();
    loop {
        skip_ws(&mut pos);
        if pos == bytes.len() {
            return Ok(cycles);
        }
        if bytes[pos] != b'(' {
            return Err(CycleParseError::Syntax {
                pos,
                found: char_at(pos),
            });
        }
        pos += 1;
        let mut cycle = Vec::new();
        loop {
            skip_ws(&mut pos);
            let start = pos;
            if pos < bytes.len() && (bytes[pos] == b'-' || bytes[pos] == b'+') {
                pos += 1;
            }
            while pos < bytes.len() && bytes[pos].is_ascii_digit() {
                pos += 1;
            }
            let token = &text[start..pos];
            let label: i64 = match token.parse() {
                Ok(v) => v,
                Err(_) if pos == bytes.len() => return Err(CycleParseError::UnexpectedEnd { pos }),
                Err(_) => {
                    return Err(CycleParseError::Syntax {
                        pos,
                        found: char_at(pos),
                    })
                }
            };
            cycle.push((start, label));
            skip_ws(&mut pos);
            match bytes.get(pos) {
                None => return Err(CycleParseError::UnexpectedEnd { pos }),
                Some(b',') => pos += 1,
                Some(b')') => {
                    pos += 1;
                    break;
                }
                Some(_) => {
                    return Err(CycleParseError::Syntax {
                        pos,
                        found: char_at(pos),
                    })
                }
            }
        }
        cycles.push(cycle);
    }
}

/// Parses cycle notation, mapping each raw label through `point_of`.
pub fn parse_cycles_with(
    text: &str,
    degree: usize,
    point_of: impl Fn(i64) -> Option<Point>,
) -> Result<Permutation, CycleParseError> {
    let cycles = tokenize_cycles(text)?;
    let mut seen = vec![false; degree];
    let mut pairs = Vec::new();
    for cycle in &cycles {
        let mut points = Vec::with_capacity(cycle.len());
        for &(pos, label) in cycle {
            let p = point_of(label)
                .filter(|&p| (p as usize) < degree)
                .ok_or(CycleParseError::InvalidLabel { pos, label })?;
            if std::mem::replace(&mut seen[p as usize], true) {
                return Err(CycleParseError::Duplicate { pos, label });
            }
            points.push(p);
        }
        for k in 0..points.len() {
            pairs.push((points[k], points[(k + 1) % points.len()]));
        }
    }
    Ok(Permutation::from_pairs(degree, pairs).expect("validated cycles form a bijection"))
}

/// Parses 1-based cycle notation such as `(1,2,3)(4,5)`.
pub fn parse_cycles(text: &str, degree: usize) -> Result<Permutation, CycleParseError> {
    parse_cycles_with(text, degree, |l| if l >= 1 { Some((l - 1) as Point) } else { None })
}

/// Canonical cycle notation with each point rendered by `label_of`.
pub fn format_cycles_with(p: &Permutation, label_of: impl Fn(Point) -> i64) -> String {
    let mut out = String::new();
    for cycle in p.cycles() {
        out.push('(');
        for (k, &x) in cycle.iter().enumerate() {
            if k > 0 {
                out.push(',');
            }
            out.push_str(&label_of(x).to_string());
        }
        out.push(')');
    }
    out
}

/// Canonical 1-based cycle notation; the identity formats as the empty string.
pub fn format_cycles(p: &Permutation) -> String {
    format_cycles_with(p, |x| x as i64 + 1)
}

/// An ordered list of generators on a shared domain.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct GeneratingSet {
    degree: usize,
    gens: Vec<Permutation>,
}

impl GeneratingSet {
    pub fn new(degree: usize, gens: Vec<Permutation>) -> Result<Self, PermError> {
        if let Some(g) = gens.iter().find(|g| g.degree() != degree) {
            return Err(PermError::DegreeMismatch {
                left: degree,
                right: g.degree(),
            });
        }
        Ok(GeneratingSet { degree, gens })
    }

    pub fn empty(degree: usize) -> Self {
        GeneratingSet {
            degree,
            gens: Vec::new(),
        }
    }

    /// Reads one permutation per line; blank lines and `#` comments are skipped.
    pub fn parse_with(
        text: &str,
        degree: usize,
        point_of: impl Fn(i64) -> Option<Point>,
    ) -> Result<Self, GeneratorFileError> {
        let mut gens = Vec::new();
        for (k, line) in text.lines().enumerate() {
            let trimmed = line.trim();
            if trimmed.is_empty() || trimmed.starts_with('#') {
                continue;
            }
            let g = parse_cycles_with(trimmed, degree, &point_of)
                .map_err(|source| GeneratorFileError { line: k + 1, source })?;
            gens.push(g);
        }
        Ok(GeneratingSet { degree, gens })
    }

    pub fn parse(text: &str, degree: usize) -> Result<Self, GeneratorFileError> {
        Self::parse_with(text, degree, |l| if l >= 1 { Some((l - 1) as Point) } else { None })
    }

    pub fn degree(&self) -> usize {
        self.degree
    }

    pub fn gens(&self) -> &[Permutation] {
        &self.gens
    }

    pub fn len(&self) -> usize {
        self.gens.len()
    }

    pub fn is_empty(&self) -> bool {
        self.gens.is_empty()
    }

    /// `enc(S)`: total support size of the generators.
    pub fn encoding_size(&self) -> usize {
        self.gens.iter().map(Permutation::support_len).sum()
    }

    pub fn iter(&self) -> std::slice::Iter<'_, Permutation> {
        self.gens.iter()
    }
}

impl<'a> IntoIterator for &'a GeneratingSet {
    type Item = &'a Permutation;
    type IntoIter = std::slice::Iter<'a, Permutation>;
    fn into_iter(self) -> Self::IntoIter {
        self.gens.iter()
    }
}

/// A partition of `0..degree` whose classes are numbered by ascending minimum.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct OrbitPartition {
    class_of: Vec<u32>,
    classes: Vec<Vec<Point>>,
}

impl OrbitPartition {
    /// Builds the partition from arbitrary per-point labels.
    pub fn from_labels<L: Eq + std::hash::Hash + Copy>(labels: &[L]) -> Self {
        let mut id_of = std::collections::HashMap::new();
        let mut classes: Vec<Vec<Point>> = Vec::new();
        let mut class_of = Vec::with_capacity(labels.len());
        for (x, l) in labels.iter().enumerate() {
            let id = *id_of.entry(*l).or_insert_with(|| {
                classes.push(Vec::new());
                classes.len() as u32 - 1
            });
            classes[id as usize].push(x as Point);
            class_of.push(id);
        }
        OrbitPartition { class_of, classes }
    }

    /// Builds the partition from explicit classes, which must cover `0..degree` exactly once.
    pub fn from_classes(degree: usize, classes: &[Vec<Point>]) -> Result<Self, PermError> {
        let mut label = vec![u32::MAX; degree];
        for (k, class) in classes.iter().enumerate() {
            for &x in class {
                let slot = label
                    .get_mut(x as usize)
                    .ok_or(PermError::OutOfRange { point: x, degree })?;
                if *slot != u32::MAX {
                    return Err(PermError::NotBijective { point: x });
                }
                *slot = k as u32;
            }
        }
        if let Some(x) = label.iter().position(|&l| l == u32::MAX) {
            return Err(PermError::OutOfRange {
                point: x as Point,
                degree,
            });
        }
        Ok(Self::from_labels(&label))
    }

    pub fn discrete(degree: usize) -> Self {
        OrbitPartition {
            class_of: (0..degree as u32).collect(),
            classes: (0..degree as Point).map(|x| vec![x]).collect(),
        }
    }

    pub fn degree(&self) -> usize {
        self.class_of.len()
    }

    pub fn num_classes(&self) -> usize {
        self.classes.len()
    }

    pub fn class_of(&self, x: Point) -> u32 {
        self.class_of[x as usize]
    }

    pub fn class_ids(&self) -> &[u32] {
        &self.class_of
    }

    /// Sorted members of class `id`.
    pub fn class(&self, id: u32) -> &[Point] {
        &self.classes[id as usize]
    }

    pub fn classes(&self) -> &[Vec<Point>] {
        &self.classes
    }

    pub fn class_size(&self, id: u32) -> usize {
        self.classes[id as usize].len()
    }
}

/// Orbit partition of `<S>`, by union-find over `x ~ g(x)` for every moved point.
pub fn orbits(s: &GeneratingSet) -> OrbitPartition {
    let mut uf = UnionFind::<u32>::new(s.degree());
    for g in s {
        for &(x, y) in g.pairs() {
            uf.union(x, y);
        }
    }
    OrbitPartition::from_labels(&uf.into_labeling())
}

/// Union of the generator supports, sorted.
pub fn support_of_set(s: &GeneratingSet) -> Vec<Point> {
    let mut moved = vec![false; s.degree()];
    for g in s {
        for x in g.support() {
            moved[x as usize] = true;
        }
    }
    (0..s.degree() as Point).filter(|&x| moved[x as usize]).collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(text: &str, degree: usize) -> Permutation {
        parse_cycles(text, degree).unwrap()
    }

    #[test]
    fn parses_the_standard_example() {
        let phi = p("(1,2,3)(4,5)", 5);
        assert_eq!(phi.to_images(), vec![1, 2, 0, 4, 3]);
        assert_eq!(phi, p("(1,2,3)(5,4)", 5));
        assert_eq!(phi, p("(3,1,2)(4,5)", 5));
        assert!(p("", 7).is_identity());
        assert_eq!(p(" (1, 2)\t(3,4) ", 4), p("(1,2)(3,4)", 4));
    }

    #[test]
    fn parse_errors_carry_positions() {
        assert_eq!(
            parse_cycles("(1,2)(2,3)", 3),
            Err(CycleParseError::Duplicate { pos: 6, label: 2 })
        );
        assert_eq!(
            parse_cycles("(1,1)", 3),
            Err(CycleParseError::Duplicate { pos: 3, label: 1 })
        );
        assert_eq!(
            parse_cycles("(1,6)", 5),
            Err(CycleParseError::InvalidLabel { pos: 3, label: 6 })
        );
        assert_eq!(
            parse_cycles("(0,1)", 5),
            Err(CycleParseError::InvalidLabel { pos: 1, label: 0 })
        );
        assert_eq!(parse_cycles("(1,2", 5), Err(CycleParseError::UnexpectedEnd { pos: 4 }));
        assert_eq!(
            parse_cycles("1,2)", 5),
            Err(CycleParseError::Syntax { pos: 0, found: '1' })
        );
        assert_eq!(
            parse_cycles("(1;2)", 5),
            Err(CycleParseError::Syntax { pos: 2, found: ';' })
        );
        assert_eq!(
            parse_cycles("()", 5),
            Err(CycleParseError::Syntax { pos: 1, found: ')' })
        );
    }

    #[test]
    fn formats_canonically() {
        assert_eq!(format_cycles(&p("(3,1,2)(5,4)", 5)), "(1,2,3)(4,5)");
        assert_eq!(format_cycles(&Permutation::identity(4)), "");
        assert_eq!(format_cycles(&p("(5,4)", 5)), "(4,5)");
        assert_eq!(format_cycles(&p("(4,5)(1,3)", 5)), "(1,3)(4,5)");
    }

    #[test]
    fn composes_first_argument_first() {
        let t = p("(1,2)", 3);
        assert!(t.compose(&t).unwrap().is_identity());
        assert_eq!(p("(1,2,3)", 3).compose(&t).unwrap(), p("(2,3)", 3));
        let c = p("(1,2,3)(4,5)", 5);
        assert_eq!(c.compose(&Permutation::identity(5)).unwrap(), c);
        assert_eq!(
            c.compose(&Permutation::identity(4)),
            Err(PermError::DegreeMismatch { left: 5, right: 4 })
        );
    }

    #[test]
    fn inverts() {
        assert_eq!(p("(1,2,3)", 3).inverse(), p("(1,3,2)", 3));
        assert!(Permutation::identity(3).inverse().is_identity());
        assert_eq!(format_cycles(&p("(1,2,3)(4,5)", 5).inverse()), "(1,3,2)(4,5)");
    }

    #[test]
    fn orbit_examples() {
        let none = orbits(&GeneratingSet::empty(4));
        assert_eq!(none.classes(), &[vec![0], vec![1], vec![2], vec![3]]);
        let s = GeneratingSet::new(4, vec![p("(1,2)", 4), p("(2,3)", 4)]).unwrap();
        let o = orbits(&s);
        assert_eq!(o.classes(), &[vec![0, 1, 2], vec![3]]);
        assert_eq!(o.class_of(2), 0);
    }

    #[test]
    fn parity_examples() {
        assert_eq!(p("(1,2)", 4).parity(), Parity::Odd);
        assert_eq!(p("(1,2,3)", 4).parity(), Parity::Even);
        assert_eq!(p("(1,2)(3,4)", 4).parity(), Parity::Even);
        assert_eq!(Permutation::identity(0).parity(), Parity::Even);
    }

    #[test]
    fn restrict_examples() {
        let g = p("(1,2)(4,5)", 5);
        assert_eq!(g.restrict(&[0, 1]).unwrap(), p("(1,2)", 2));
        assert_eq!(g.restrict(&[0, 3]), Err(PermError::NotClosed { point: 0 }));
        assert_eq!(g.restrict(&[3, 4]).unwrap(), p("(1,2)", 2));
    }

    #[test]
    fn support_examples() {
        assert!(support_of_set(&GeneratingSet::empty(3)).is_empty());
        let s = GeneratingSet::new(5, vec![p("(1,2)", 5), p("(3,4)", 5)]).unwrap();
        assert_eq!(support_of_set(&s), vec![0, 1, 2, 3]);
        assert_eq!(s.encoding_size(), 4);
    }

    #[test]
    fn generator_files_skip_comments() {
        let text = "# two generators\n(1,2)\n\n(2,3)\n";
        let s = GeneratingSet::parse(text, 3).unwrap();
        assert_eq!(s.len(), 2);
        let err = GeneratingSet::parse("(1,2)\n(1,9)\n", 3).unwrap_err();
        assert_eq!(err.line, 2);
    }

    #[test]
    fn degenerate_domains() {
        assert!(parse_cycles("", 0).unwrap().is_identity());
        assert_eq!(orbits(&GeneratingSet::empty(0)).num_classes(), 0);
        let one = GeneratingSet::new(1, vec![Permutation::identity(1)]).unwrap();
        assert_eq!(one.len(), 1);
        assert_eq!(orbits(&one).num_classes(), 1);
    }

    #[test]
    fn rejects_non_bijections() {
        assert!(Permutation::from_pairs(3, [(0, 1), (1, 1)]).is_err());
        assert!(Permutation::from_pairs(3, [(0, 1), (2, 1), (1, 0)]).is_err());
        assert!(Permutation::from_images(&[0, 0, 1]).is_err());
    }
}
