//! Cycle type graphs, canonical cycles and the detection of equivalent orbits,
//! plus the assembly of interchangeable variable matrices.

use std::collections::{BTreeMap, BTreeSet, HashMap};

use serde::Serialize;
use thiserror::Error;

use crate::cnf::{lit_of_index, negate_index, ModelGraph};
use crate::graph::{color_refinement, ColoredGraph, Coloring, GraphBuilder, GraphError};
use crate::perm::{GeneratingSet, OrbitPartition, Permutation, Point};
use crate::symmetric_action::{restrictions_by_orbit, ActionReport};

/// Vertex label of a cycle type graph; colors are the labels in sorted order.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum Label {
    Base,
    Gadget {
        generator: u32,
        cycle_len: u32,
    },
    Subdivision {
        generator: u32,
        cycle_len: u32,
        distance: u32,
    },
    Canonical {
        size: u32,
    },
}

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum OverlapError {
    #[error("point {0} occurs twice")]
    Repeated(Point),
    #[error("cycle {0} shares no point with the base cycle")]
    Disjoint(usize),
    #[error("empty cycle")]
    Empty,
}

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum EquivalenceError {
    #[error(transparent)]
    Overlap(#[from] OverlapError),
    #[error("cycle point {point} lies outside the orbit")]
    OutsideOrbit { point: Point },
    #[error("canonical cycle of orbit {orbit} covers {covered} of {size} points")]
    NotCovering { orbit: u32, covered: usize, size: usize },
    #[error("orbits {0} and {1} are not known to be equivalent")]
    NotEquivalent(u32, u32),
    #[error("orbit partition has degree {got}, generators have degree {expected}")]
    DegreeMismatch { got: usize, expected: usize },
    #[error(transparent)]
    Graph(#[from] GraphError),
}

/// A cycle type graph, plain or enhanced.
///
/// Base vertex of point `x` is `x`. Each generator contributes one gadget
/// vertex per moved point, joined to its base vertex and carrying the arcs
/// `x -> g(x)`.
#[derive(Debug, Clone)]
pub struct CycleTypeGraph {
    pub graph: ColoredGraph,
    labels: Vec<Label>,
    degree: usize,
    supports: Vec<Vec<Point>>,
    gadget_offsets: Vec<u32>,
    canonical_offsets: Vec<Option<u32>>,
}

impl CycleTypeGraph {
    pub fn degree(&self) -> usize {
        self.degree
    }

    pub fn base_vertex(&self, x: Point) -> u32 {
        x
    }

    /// Gadget vertex of `x` for generator `i`, if the generator moves `x`.
    pub fn gadget_vertex(&self, i: usize, x: Point) -> Option<u32> {
        let k = self.supports[i].binary_search(&x).ok()?;
        Some(self.gadget_offsets[i] + k as u32)
    }

    /// First vertex of the canonical gadget of an orbit (enhanced graphs only).
    pub fn canonical_vertex(&self, orbit: u32) -> Option<u32> {
        self.canonical_offsets.get(orbit as usize).copied().flatten()
    }

    /// Label of a color id.
    pub fn label(&self, color: u32) -> Label {
        self.labels[color as usize]
    }

    pub fn vertex_label(&self, v: u32) -> Label {
        self.label(self.graph.color(v))
    }
}

struct Draft {
    labels: Vec<Label>,
    edges: Vec<(u32, u32)>,
    arcs: Vec<(u32, u32)>,
}

impl Draft {
    fn vertex(&mut self, label: Label) -> u32 {
        self.labels.push(label);
        self.labels.len() as u32 - 1
    }
}

/// Cycle length of every moved point, aligned with `g.pairs()`.
fn cycle_lengths_by_point(g: &Permutation) -> Vec<u32> {
    let mut lens = vec![0u32; g.support_len()];
    for c in g.cycles() {
        for &x in &c {
            let k = g.pairs().binary_search_by_key(&x, |&(p, _)| p).unwrap();
            lens[k] = c.len() as u32;
        }
    }
    lens
}

fn build(
    s: &GeneratingSet,
    canonical: Option<(&OrbitPartition, &[Option<Vec<Point>>])>,
) -> Result<CycleTypeGraph, EquivalenceError> {
    let n = s.degree();
    let mut d = Draft {
        labels: vec![Label::Base; n],
        edges: Vec::new(),
        arcs: Vec::new(),
    };
    let mut supports = Vec::with_capacity(s.len());
    let mut gadget_offsets = Vec::with_capacity(s.len());
    let mut lens_by_gen = Vec::with_capacity(s.len());
    for (i, g) in s.iter().enumerate() {
        let lens = cycle_lengths_by_point(g);
        gadget_offsets.push(d.labels.len() as u32);
        for (k, &(x, _)) in g.pairs().iter().enumerate() {
            let v = d.vertex(Label::Gadget {
                generator: i as u32,
                cycle_len: lens[k],
            });
            d.edges.push((v, x));
        }
        supports.push(g.support().collect::<Vec<_>>());
        lens_by_gen.push(lens);
    }

    // Position of each point along its orbit's canonical cycle.
    let mut position: Vec<Option<(u32, u32)>> = vec![None; n];
    let mut canonical_offsets = Vec::new();
    if let Some((orbits, cycles)) = canonical {
        if orbits.degree() != n {
            return Err(EquivalenceError::DegreeMismatch {
                got: orbits.degree(),
                expected: n,
            });
        }
        canonical_offsets = vec![None; orbits.num_classes()];
        for (o, cycle) in cycles.iter().enumerate() {
            let Some(cycle) = cycle else { continue };
            check_covers(orbits, o as u32, cycle)?;
            let size = cycle.len() as u32;
            let first = d.labels.len() as u32;
            canonical_offsets[o] = Some(first);
            for (k, &x) in cycle.iter().enumerate() {
                let v = d.vertex(Label::Canonical { size });
                d.edges.push((v, x));
                position[x as usize] = Some((size, k as u32));
            }
            if size > 1 {
                for k in 0..size {
                    d.arcs.push((first + k, first + (k + 1) % size));
                }
            }
        }
    }

    for (i, g) in s.iter().enumerate() {
        let offset = gadget_offsets[i];
        for (k, &(x, y)) in g.pairs().iter().enumerate() {
            let from = offset + k as u32;
            let to = offset + supports[i].binary_search(&y).unwrap() as u32;
            if canonical.is_none() {
                d.arcs.push((from, to));
                continue;
            }
            let distance = match (position[x as usize], position[y as usize]) {
                (Some((size, px)), Some((_, py))) => (py + size - px) % size,
                _ => 0,
            };
            let mid = d.vertex(Label::Subdivision {
                generator: i as u32,
                cycle_len: lens_by_gen[i][k],
                distance,
            });
            d.arcs.push((from, mid));
            d.arcs.push((mid, to));
        }
    }

    let interned: BTreeSet<Label> = d.labels.iter().copied().collect();
    let labels: Vec<Label> = interned.into_iter().collect();
    let mut b = GraphBuilder::new();
    for l in &d.labels {
        b.add_vertex(labels.binary_search(l).unwrap() as u64);
    }
    for (u, v) in d.edges {
        b.add_edge(u, v);
    }
    for (u, v) in d.arcs {
        b.add_arc(u, v);
    }
    Ok(CycleTypeGraph {
        graph: b.build()?,
        labels,
        degree: n,
        supports,
        gadget_offsets,
        canonical_offsets,
    })
}

fn check_covers(orbits: &OrbitPartition, orbit: u32, cycle: &[Point]) -> Result<(), EquivalenceError> {
    let members = orbits.class(orbit);
    let mut seen = vec![false; members.len()];
    for &x in cycle {
        let k = members
            .binary_search(&x)
            .map_err(|_| EquivalenceError::OutsideOrbit { point: x })?;
        if std::mem::replace(&mut seen[k], true) {
            return Err(OverlapError::Repeated(x).into());
        }
    }
    if cycle.len() != members.len() {
        return Err(EquivalenceError::NotCovering {
            orbit,
            covered: cycle.len(),
            size: members.len(),
        });
    }
    Ok(())
}

pub fn cycle_type_graph(s: &GeneratingSet) -> CycleTypeGraph {
    build(s, None).expect("plain cycle type graphs have no failure modes")
}

/// Cycle type graph with one canonical gadget per labelled orbit and every
/// generator arc subdivided by a vertex recording the distance from `x` to
/// `g(x)` along the canonical cycle (zero for unlabelled orbits).
pub fn enhanced_cycle_type_graph(
    s: &GeneratingSet,
    orbits: &OrbitPartition,
    canonical: &[Option<Vec<Point>>],
) -> Result<CycleTypeGraph, EquivalenceError> {
    build(s, Some((orbits, canonical)))
}

/// Linked-list cycle over local indices `0..len`.
struct Splicer {
    next: Vec<u32>,
    in_cycle: Vec<bool>,
    batch_mark: Vec<bool>,
    len: usize,
}

impl Splicer {
    fn new(size: usize, seed: &[u32]) -> Self {
        let mut s = Splicer {
            next: vec![u32::MAX; size],
            in_cycle: vec![false; size],
            batch_mark: vec![false; size],
            len: seed.len(),
        };
        for (k, &x) in seed.iter().enumerate() {
            s.next[x as usize] = seed[(k + 1) % seed.len()];
            s.in_cycle[x as usize] = true;
        }
        s
    }

    /// Splices a batch of pairwise disjoint cycles; returns the points added.
    fn splice(&mut self, batch: &[&[u32]]) -> Result<Vec<u32>, OverlapError> {
        let mut touched = Vec::new();
        let result = self.splice_marked(batch, &mut touched);
        for x in touched {
            self.batch_mark[x as usize] = false;
        }
        result
    }

    fn splice_marked(&mut self, batch: &[&[u32]], touched: &mut Vec<u32>) -> Result<Vec<u32>, OverlapError> {
        for (i, d) in batch.iter().enumerate() {
            if d.is_empty() {
                return Err(OverlapError::Empty);
            }
            let mut hits = false;
            for &x in d.iter() {
                if std::mem::replace(&mut self.batch_mark[x as usize], true) {
                    return Err(OverlapError::Repeated(x));
                }
                touched.push(x);
                hits |= self.in_cycle[x as usize];
            }
            if !hits {
                return Err(OverlapError::Disjoint(i));
            }
        }
        let mut added = Vec::new();
        for d in batch {
            let anchors: Vec<usize> = (0..d.len()).filter(|&k| self.in_cycle[d[k] as usize]).collect();
            for (t, &start) in anchors.iter().enumerate() {
                let end = anchors[(t + 1) % anchors.len()];
                let span = (end + d.len() - start - 1) % d.len();
                let c = d[start];
                let after = self.next[c as usize];
                let mut prev = c;
                for step in 1..=span {
                    let x = d[(start + step) % d.len()];
                    self.next[prev as usize] = x;
                    prev = x;
                    added.push(x);
                }
                self.next[prev as usize] = after;
            }
        }
        for &x in &added {
            self.in_cycle[x as usize] = true;
        }
        self.len += added.len();
        Ok(added)
    }

    fn walk(&self, start: u32) -> Vec<u32> {
        let mut out = Vec::with_capacity(self.len);
        let mut x = start;
        loop {
            out.push(x);
            x = self.next[x as usize];
            if x == start {
                return out;
            }
        }
    }
}

/// Merges the cycles `d` into the cycle `c`: after every point of `c` that
/// lies on some cycle of `d`, the run of that cycle up to its next point in
/// `c` is inserted. The result does not depend on the order of `d`.
pub fn cycle_overlap(c: &[Point], d: &[Vec<Point>]) -> Result<Vec<Point>, OverlapError> {
    if c.is_empty() {
        return Err(OverlapError::Empty);
    }
    let mut points: Vec<Point> = c.iter().chain(d.iter().flatten()).copied().collect();
    points.sort_unstable();
    points.dedup();
    let local = |x: Point| points.binary_search(&x).unwrap() as u32;
    let seed: Vec<u32> = c.iter().map(|&x| local(x)).collect();
    let mut seen = vec![false; points.len()];
    for (&x, &l) in c.iter().zip(&seed) {
        if std::mem::replace(&mut seen[l as usize], true) {
            return Err(OverlapError::Repeated(x));
        }
    }
    let mut splicer = Splicer::new(points.len(), &seed);
    let batch: Vec<Vec<u32>> = d.iter().map(|cy| cy.iter().map(|&x| local(x)).collect()).collect();
    let refs: Vec<&[u32]> = batch.iter().map(Vec::as_slice).collect();
    splicer.splice(&refs).map_err(|e| match e {
        OverlapError::Repeated(l) => OverlapError::Repeated(points[l as usize]),
        other => other,
    })?;
    Ok(splicer.walk(seed[0]).into_iter().map(|l| points[l as usize]).collect())
}

/// Grows `unique` into a cycle through the whole orbit by overlapping it with
/// generator cycles that meet it. Generators are visited round-robin in index
/// order; each visit merges all of that generator's pending cycles at once.
fn canonical_from_restrictions(
    orbit: &[Point],
    restrictions: &[(usize, Permutation)],
    unique: &[Point],
    orbit_id: u32,
) -> Result<Vec<Point>, EquivalenceError> {
    let local = |x: Point| {
        orbit
            .binary_search(&x)
            .map(|k| k as u32)
            .map_err(|_| EquivalenceError::OutsideOrbit { point: x })
    };
    if unique.is_empty() {
        return Err(OverlapError::Empty.into());
    }
    let seed = unique.iter().map(|&x| local(x)).collect::<Result<Vec<_>, _>>()?;
    let mut seen = vec![false; orbit.len()];
    for (&l, &x) in seed.iter().zip(unique) {
        if std::mem::replace(&mut seen[l as usize], true) {
            return Err(OverlapError::Repeated(x).into());
        }
    }

    let mut cycles: Vec<(usize, Vec<u32>)> = Vec::new();
    let mut through: Vec<Vec<u32>> = vec![Vec::new(); orbit.len()];
    for (pos, (_, g)) in restrictions.iter().enumerate() {
        for c in g.cycles() {
            let c = c.into_iter().map(local).collect::<Result<Vec<_>, _>>()?;
            for &x in &c {
                through[x as usize].push(cycles.len() as u32);
            }
            cycles.push((pos, c));
        }
    }
    let mut queued = vec![false; cycles.len()];
    let mut pending: Vec<Vec<u32>> = vec![Vec::new(); restrictions.len()];
    let enqueue = |points: &[u32], queued: &mut Vec<bool>, pending: &mut Vec<Vec<u32>>| {
        for &x in points {
            for &k in &through[x as usize] {
                if !std::mem::replace(&mut queued[k as usize], true) {
                    pending[cycles[k as usize].0].push(k);
                }
            }
        }
    };
    let mut splicer = Splicer::new(orbit.len(), &seed);
    enqueue(&seed, &mut queued, &mut pending);
    loop {
        let mut progressed = false;
        for pos in 0..restrictions.len() {
            if pending[pos].is_empty() {
                continue;
            }
            progressed = true;
            let batch_ids = std::mem::take(&mut pending[pos]);
            let batch: Vec<&[u32]> = batch_ids.iter().map(|&k| cycles[k as usize].1.as_slice()).collect();
            let added = splicer.splice(&batch)?;
            enqueue(&added, &mut queued, &mut pending);
        }
        if !progressed {
            break;
        }
    }
    if splicer.len != orbit.len() {
        return Err(EquivalenceError::NotCovering {
            orbit: orbit_id,
            covered: splicer.len,
            size: orbit.len(),
        });
    }
    Ok(splicer.walk(seed[0]).into_iter().map(|l| orbit[l as usize]).collect())
}

/// Canonical cycle of a single orbit grown from a unique cycle.
pub fn canonical_cycle(s: &GeneratingSet, orbit: &[Point], unique: &[Point]) -> Result<Vec<Point>, EquivalenceError> {
    let mut sorted = orbit.to_vec();
    sorted.sort_unstable();
    let inside = |x: Point| sorted.binary_search(&x).is_ok();
    let restrictions: Vec<(usize, Permutation)> = s
        .iter()
        .enumerate()
        .map(|(i, g)| (i, g.cut(inside)))
        .filter(|(_, g)| !g.is_identity())
        .collect();
    canonical_from_restrictions(&sorted, &restrictions, unique, 0)
}

/// Canonical cycles for all orbits with a unique cycle; singleton orbits get
/// their point as a one-element cycle.
pub fn canonical_cycles(
    s: &GeneratingSet,
    orbits: &OrbitPartition,
    unique: &[Option<Vec<Point>>],
) -> Result<Vec<Option<Vec<Point>>>, EquivalenceError> {
    let restrictions = restrictions_by_orbit(s, orbits);
    (0..orbits.num_classes())
        .map(|o| {
            let orbit = orbits.class(o as u32);
            if orbit.len() == 1 {
                return Ok(Some(orbit.to_vec()));
            }
            match unique.get(o).and_then(Option::as_ref) {
                Some(u) => canonical_from_restrictions(orbit, &restrictions[o], u, o as u32).map(Some),
                None => Ok(None),
            }
        })
        .collect()
}

/// Partition of orbits into equivalence classes.
#[derive(Debug, Clone)]
pub struct EquivalenceResult {
    /// Classes of orbit ids ordered by their least member; orbits without a
    /// canonical cycle form singleton classes.
    pub classes: Vec<Vec<u32>>,
    /// Orbits without a canonical cycle.
    pub undetermined: Vec<u32>,
    /// Stable coloring of the enhanced cycle type graph.
    pub coloring: Coloring,
    pub graph: CycleTypeGraph,
    class_of: Vec<u32>,
    canonical: Vec<Option<Vec<Point>>>,
}

impl EquivalenceResult {
    pub fn class_of(&self, orbit: u32) -> u32 {
        self.class_of[orbit as usize]
    }

    pub fn are_equivalent(&self, a: u32, b: u32) -> bool {
        a == b || (self.canonical[a as usize].is_some() && self.class_of(a) == self.class_of(b))
    }

    pub fn canonical_cycle(&self, orbit: u32) -> Option<&[Point]> {
        self.canonical[orbit as usize].as_deref()
    }

    /// Stable color of a domain point's base vertex.
    pub fn point_color(&self, x: Point) -> u32 {
        self.coloring.color(self.graph.base_vertex(x))
    }
}

/// Orbits are equivalent when color refinement on the enhanced cycle type
/// graph gives their base vertices the same set of colors.
pub fn equivalent_orbits(
    s: &GeneratingSet,
    orbits: &OrbitPartition,
    canonical: &[Option<Vec<Point>>],
) -> Result<EquivalenceResult, EquivalenceError> {
    let graph = enhanced_cycle_type_graph(s, orbits, canonical)?;
    let coloring = color_refinement(&graph.graph, &graph.graph.coloring())?;
    let mut by_key: BTreeMap<Vec<u32>, Vec<u32>> = BTreeMap::new();
    let mut classes: Vec<Vec<u32>> = Vec::new();
    let mut undetermined = Vec::new();
    for o in 0..orbits.num_classes() as u32 {
        if canonical.get(o as usize).and_then(Option::as_ref).is_none() {
            undetermined.push(o);
            classes.push(vec![o]);
            continue;
        }
        let mut key: Vec<u32> = orbits.class(o).iter().map(|&x| coloring.color(x)).collect();
        key.sort_unstable();
        key.dedup();
        by_key.entry(key).or_default().push(o);
    }
    classes.extend(by_key.into_values());
    classes.sort_unstable_by_key(|c| c[0]);
    let mut class_of = vec![0; orbits.num_classes()];
    for (k, c) in classes.iter().enumerate() {
        for &o in c {
            class_of[o as usize] = k as u32;
        }
    }
    Ok(EquivalenceResult {
        classes,
        undetermined,
        coloring,
        graph,
        class_of,
        canonical: canonical.to_vec(),
    })
}

/// A bijection between two equivalent orbits commuting with the group, as
/// `(point, image)` pairs sorted by point. Built by aligning the canonical
/// cycles from two equally colored points.
pub fn orbit_bijection(eq: &EquivalenceResult, a: u32, b: u32) -> Result<Vec<(Point, Point)>, EquivalenceError> {
    if !eq.are_equivalent(a, b) {
        return Err(EquivalenceError::NotEquivalent(a, b));
    }
    let ca = eq.canonical_cycle(a).ok_or(EquivalenceError::NotEquivalent(a, b))?;
    let mut pairs: Vec<(Point, Point)> = if a == b {
        ca.iter().map(|&x| (x, x)).collect()
    } else {
        let cb = eq.canonical_cycle(b).ok_or(EquivalenceError::NotEquivalent(a, b))?;
        let target = eq.point_color(ca[0]);
        let offset = cb
            .iter()
            .position(|&y| eq.point_color(y) == target)
            .ok_or(EquivalenceError::NotEquivalent(a, b))?;
        (0..ca.len()).map(|k| (ca[k], cb[(offset + k) % cb.len()])).collect()
    };
    pairs.sort_unstable();
    Ok(pairs)
}

/// True iff `g(b(x)) = b(g(x))` for every generator and every mapped point.
pub fn bijection_commutes(s: &GeneratingSet, pairs: &[(Point, Point)]) -> bool {
    let map: HashMap<Point, Point> = pairs.iter().copied().collect();
    s.iter().all(|g| {
        pairs
            .iter()
            .all(|&(x, y)| map.get(&g.apply(x)).is_some_and(|&gy| gy == g.apply(y)))
    })
}

/// A matrix of literals whose columns are interchangeable by formula
/// symmetries: every row is an orbit, rows are aligned by orbit bijections.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct RowMatrix {
    /// Signed DIMACS literals.
    pub rows: Vec<Vec<i32>>,
    /// Orbit id of each row.
    pub orbits: Vec<u32>,
    /// Whether a column swap and a column rotation, applied alone, are formula symmetries.
    pub pure_lift: bool,
}

impl RowMatrix {
    /// Literal permutation moving column `k` to `perm[k]` in every row, with negations.
    pub fn column_permutation(&self, n_vars: usize, perm: &[usize]) -> Permutation {
        let mut pairs = Vec::new();
        for row in &self.rows {
            for (k, &lit) in row.iter().enumerate() {
                let (from, to) = (crate::cnf::lit_index(lit), crate::cnf::lit_index(row[perm[k]]));
                pairs.push((from, to));
                pairs.push((negate_index(from), negate_index(to)));
            }
        }
        Permutation::from_pairs(2 * n_vars, pairs).expect("rows hold distinct variables")
    }
}

/// Variable matrices from classes of equivalent, naturally symmetric literal
/// orbits whose negation orbits are distinct and in the same class. Each pair
/// `(orbit, negation orbit)` becomes one row.
pub fn row_interchangeability_groups(
    m: &ModelGraph,
    literal_orbits: &OrbitPartition,
    action: &ActionReport,
    eq: &EquivalenceResult,
) -> Vec<RowMatrix> {
    let mut out = Vec::new();
    for class in &eq.classes {
        let mut reps: Vec<u32> = Vec::new();
        for &o in class {
            let orbit = literal_orbits.class(o);
            if orbit.len() < 2 || !action.is_natural_symmetric(o) || !eq.are_equivalent(o, o) {
                continue;
            }
            let neg = literal_orbits.class_of(negate_index(orbit[0]));
            if neg == o || !eq.are_equivalent(o, neg) {
                continue;
            }
            let rep = if orbit[0] < literal_orbits.class(neg)[0] {
                o
            } else {
                neg
            };
            if !reps.contains(&rep) {
                reps.push(rep);
            }
        }
        if reps.is_empty() {
            continue;
        }
        reps.sort_unstable_by_key(|&o| literal_orbits.class(o)[0]);
        let first = literal_orbits.class(reps[0]).to_vec();
        let rows: Vec<Vec<i32>> = reps
            .iter()
            .map(|&r| {
                let b = orbit_bijection(eq, reps[0], r).expect("rows come from one class");
                first
                    .iter()
                    .map(|&x| {
                        let k = b.binary_search_by_key(&x, |&(p, _)| p).unwrap();
                        lit_of_index(b[k].1)
                    })
                    .collect()
            })
            .collect();
        let mut matrix = RowMatrix {
            rows,
            orbits: reps,
            pure_lift: false,
        };
        let width = first.len();
        let swap: Vec<usize> = (0..width).map(|k| if k < 2 { 1 - k } else { k }).collect();
        let rotate: Vec<usize> = (0..width).map(|k| (k + 1) % width).collect();
        matrix.pure_lift = [swap, rotate]
            .iter()
            .all(|p| m.lift_literal_perm(&matrix.column_permutation(m.n_vars(), p)).is_ok());
        out.push(matrix);
    }
    out
}
