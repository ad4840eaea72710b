//! Orbit graphs, finest disjoint direct decompositions of joint graph/group
//! pairs, and the literal-partition test for model graphs.

use std::collections::{BTreeMap, HashMap, HashSet};

use serde::Serialize;
use thiserror::Error;

use crate::cnf::{negate_index, CnfFormula, ModelGraph};
use crate::graph::{
    connected_components, induced_subgraph, is_automorphism, is_equitable, ColoredGraph, Coloring, GraphBuilder,
    InducedSubgraph, Relation,
};
use crate::perm::{GeneratingSet, OrbitPartition, PermError, Permutation, Point};

type Pairs = Vec<(Point, Point)>;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum DecompositionError {
    #[error("orbit partition has degree {got}, graph has {n} vertices")]
    PartitionSize { got: usize, n: usize },
    #[error("orbit coloring is not equitable, so it cannot be an orbit partition of Aut(G)")]
    NotEquitable,
    #[error("generating set has degree {got}, graph has {n} vertices")]
    GeneratorDegree { got: usize, n: usize },
    #[error(transparent)]
    Perm(#[from] PermError),
}

/// Graph on orbit ids with an edge wherever two orbits are not homogeneously connected.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct OrbitGraph {
    num_orbits: usize,
    edges: Vec<(u32, u32)>,
}

impl OrbitGraph {
    pub fn num_orbits(&self) -> usize {
        self.num_orbits
    }

    /// Sorted edges `(a, b)` with `a < b`.
    pub fn edges(&self) -> &[(u32, u32)] {
        &self.edges
    }

    pub fn has_edge(&self, a: u32, b: u32) -> bool {
        self.edges.binary_search(&(a.min(b), a.max(b))).is_ok()
    }

    pub fn to_graph(&self) -> ColoredGraph {
        let mut b = GraphBuilder::new();
        b.add_vertices(self.num_orbits, 0);
        for &(u, v) in &self.edges {
            b.add_edge(u, v);
        }
        b.build().expect("orbit graph edges join distinct orbits")
    }

    pub fn components(&self) -> OrbitPartition {
        connected_components(&self.to_graph())
    }
}

fn check_orbits(g: &ColoredGraph, orbits: &OrbitPartition) -> Result<(), DecompositionError> {
    if orbits.degree() != g.num_vertices() {
        return Err(DecompositionError::PartitionSize {
            got: orbits.degree(),
            n: g.num_vertices(),
        });
    }
    if !is_equitable(g, &Coloring::from_labels(orbits.class_ids())) {
        return Err(DecompositionError::NotEquitable);
    }
    Ok(())
}

/// For one representative per orbit, counts its neighbors in every other
/// orbit per edge relation; a count strictly between zero and the orbit size
/// is a non-homogeneous connection.
pub fn orbit_graph(g: &ColoredGraph, orbits: &OrbitPartition) -> Result<OrbitGraph, DecompositionError> {
    check_orbits(g, orbits)?;
    let k = orbits.num_classes();
    let mut count = vec![0u32; k];
    let mut touched: Vec<u32> = Vec::new();
    let mut edges = Vec::new();
    for id in 0..k as u32 {
        let rep = orbits.class(id)[0];
        for rel in Relation::ALL {
            for &u in g.neighbors(rep, rel) {
                let o = orbits.class_of(u);
                if count[o as usize] == 0 {
                    touched.push(o);
                }
                count[o as usize] += 1;
            }
            for o in touched.drain(..) {
                let c = std::mem::take(&mut count[o as usize]) as usize;
                if o != id && c < orbits.class_size(o) {
                    edges.push((id.min(o), id.max(o)));
                }
            }
        }
    }
    edges.sort_unstable();
    edges.dedup();
    Ok(OrbitGraph { num_orbits: k, edges })
}

/// One factor of a decomposition.
#[derive(Debug, Clone)]
pub struct Factor {
    /// Sorted points of the factor.
    pub points: Vec<Point>,
    /// Orbit ids whose union is `points`.
    pub orbits: Vec<u32>,
    /// Generator pieces on the original domain, identity outside `points`.
    pub generators: GeneratingSet,
    /// Index of the source generator of each piece.
    pub sources: Vec<usize>,
    /// The subgraph induced by `points`, with its vertex map.
    pub subgraph: InducedSubgraph,
    /// Generator pieces re-indexed to the subgraph's vertices.
    pub local_generators: GeneratingSet,
}

/// A disjoint direct decomposition of a joint pair, ordered by minimum point.
#[derive(Debug, Clone)]
pub struct Decomposition {
    pub factors: Vec<Factor>,
    factor_of: Vec<u32>,
    /// `(factor, piece)` indices of split generators that are not automorphisms
    /// of the source graph; non-empty only if the input was not a joint pair.
    pub contract_violations: Vec<(usize, usize)>,
}

impl Decomposition {
    pub fn factor_of(&self, x: Point) -> usize {
        self.factor_of[x as usize] as usize
    }

    pub fn num_factors(&self) -> usize {
        self.factors.len()
    }

    /// Factor supports as point lists.
    pub fn parts(&self) -> Vec<Vec<Point>> {
        self.factors.iter().map(|f| f.points.clone()).collect()
    }

    /// All split generators on the original domain.
    pub fn separable_generators(&self) -> GeneratingSet {
        let degree = self.factor_of.len();
        let gens = self.factors.iter().flat_map(|f| f.generators.iter().cloned()).collect();
        GeneratingSet::new(degree, gens).expect("pieces share the source degree")
    }
}

/// Splits a joint pair along the connected components of its orbit graph.
pub fn finest_decomposition(
    g: &ColoredGraph,
    s: &GeneratingSet,
    orbits: &OrbitPartition,
) -> Result<Decomposition, DecompositionError> {
    if s.degree() != g.num_vertices() {
        return Err(DecompositionError::GeneratorDegree {
            got: s.degree(),
            n: g.num_vertices(),
        });
    }
    let og = orbit_graph(g, orbits)?;
    let components = og.components();
    let n = g.num_vertices();
    let mut factor_of = vec![0u32; n];
    let mut factors = Vec::with_capacity(components.num_classes());
    for (f, orbit_ids) in components.classes().iter().enumerate() {
        let mut points: Vec<Point> = orbit_ids
            .iter()
            .flat_map(|&o| orbits.class(o).iter().copied())
            .collect();
        points.sort_unstable();
        for &x in &points {
            factor_of[x as usize] = f as u32;
        }
        factors.push((points, orbit_ids.clone()));
    }

    let mut pieces: Vec<Vec<(usize, Pairs)>> = vec![Vec::new(); factors.len()];
    for (i, gen) in s.iter().enumerate() {
        let mut by_factor: BTreeMap<u32, Vec<(Point, Point)>> = BTreeMap::new();
        for &(x, y) in gen.pairs() {
            by_factor.entry(factor_of[x as usize]).or_default().push((x, y));
        }
        for (f, pairs) in by_factor {
            pieces[f as usize].push((i, pairs));
        }
    }

    let mut out = Vec::with_capacity(factors.len());
    let mut contract_violations = Vec::new();
    for (f, ((points, orbit_ids), pieces)) in factors.into_iter().zip(pieces).enumerate() {
        let mut gens = Vec::with_capacity(pieces.len());
        let mut sources = Vec::with_capacity(pieces.len());
        for (src, pairs) in pieces {
            gens.push(Permutation::from_pairs(n, pairs)?);
            sources.push(src);
        }
        for (k, piece) in gens.iter().enumerate() {
            if !is_automorphism(g, piece)? {
                contract_violations.push((f, k));
            }
        }
        let subgraph = induced_subgraph(g, &points).expect("factor points are vertices");
        let local_index = |x: Point| subgraph.new_index(x).expect("pieces stay inside their factor");
        let local = gens
            .iter()
            .map(|p| {
                let pairs = p.pairs().iter().map(|&(x, y)| (local_index(x), local_index(y)));
                Permutation::from_pairs(points.len(), pairs)
            })
            .collect::<Result<Vec<_>, _>>()?;
        out.push(Factor {
            generators: GeneratingSet::new(n, gens)?,
            local_generators: GeneratingSet::new(points.len(), local)?,
            points,
            orbits: orbit_ids,
            sources,
            subgraph,
        });
    }
    Ok(Decomposition {
        factors: out,
        factor_of,
        contract_violations,
    })
}

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum LiteralPartitionError {
    #[error("literal index {lit} is out of range")]
    OutOfRange { lit: Point },
    #[error("literal index {lit} appears in more than one part")]
    Overlap { lit: Point },
    #[error("literal index {lit} is in no part")]
    Missing { lit: Point },
    #[error("orbit partition has degree {got}, model graph has {n} vertices")]
    PartitionSize { got: usize, n: usize },
}

/// Why a literal partition does not induce a disjoint direct product.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(tag = "reason", rename_all = "snake_case")]
pub enum PartitionRejection {
    /// The part holds `lit` but not all of its orbit.
    NotUnionOfOrbits { part: usize, lit: Point },
    /// The part holds a moved literal but not its negation.
    NotNegationClosed { part: usize, lit: Point },
    /// The clause orbit has fewer clauses than the product of distinct projections.
    ProductMismatch {
        clause_orbit: u32,
        orbit_size: usize,
        product: u128,
    },
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct PartitionVerdict {
    pub accepted: bool,
    pub rejection: Option<PartitionRejection>,
}

fn part_labels(n_lits: usize, parts: &[Vec<Point>]) -> Result<Vec<u32>, LiteralPartitionError> {
    let mut part_of = vec![u32::MAX; n_lits];
    for (i, part) in parts.iter().enumerate() {
        for &l in part {
            let slot = part_of
                .get_mut(l as usize)
                .ok_or(LiteralPartitionError::OutOfRange { lit: l })?;
            if *slot != u32::MAX {
                return Err(LiteralPartitionError::Overlap { lit: l });
            }
            *slot = i as u32;
        }
    }
    if let Some(l) = part_of.iter().position(|&p| p == u32::MAX) {
        return Err(LiteralPartitionError::Missing { lit: l as Point });
    }
    Ok(part_of)
}

/// Number of distinct sets `C ∩ part` over the clauses of one orbit, the
/// empty intersection included.
fn distinct_projections<'a>(clauses: impl Iterator<Item = &'a [Point]>, in_part: impl Fn(Point) -> bool) -> usize {
    let mut seen: HashSet<Vec<Point>> = HashSet::new();
    for c in clauses {
        seen.insert(c.iter().copied().filter(|&l| in_part(l)).collect());
    }
    seen.len()
}

/// Clause orbits (orbit ids holding clause vertices) with their clause indices.
fn clause_orbits(m: &ModelGraph, orbits: &OrbitPartition) -> BTreeMap<u32, Vec<usize>> {
    let n_lits = m.n_literals();
    let mut out: BTreeMap<u32, Vec<usize>> = BTreeMap::new();
    for j in 0..m.n_clauses() {
        out.entry(orbits.class_of((n_lits + j) as u32)).or_default().push(j);
    }
    out
}

/// Decides whether a partition of the literals induces a disjoint direct
/// product of the formula's symmetry group.
///
/// Every part must be a union of literal orbits containing the negations of
/// its moved literals. Then for every clause orbit, the number of clauses must
/// equal the product over parts of the number of distinct intersections.
pub fn check_literal_partition(
    f: &CnfFormula,
    m: &ModelGraph,
    orbits: &OrbitPartition,
    parts: &[Vec<Point>],
) -> Result<PartitionVerdict, LiteralPartitionError> {
    let n_lits = f.n_literals();
    if orbits.degree() != m.graph().num_vertices() {
        return Err(LiteralPartitionError::PartitionSize {
            got: orbits.degree(),
            n: m.graph().num_vertices(),
        });
    }
    let part_of = part_labels(n_lits, parts)?;
    let reject = |r| {
        Ok(PartitionVerdict {
            accepted: false,
            rejection: Some(r),
        })
    };

    for (i, part) in parts.iter().enumerate() {
        for &l in part {
            let orbit = orbits.class(orbits.class_of(l));
            if orbit.iter().any(|&x| part_of[x as usize] != i as u32) {
                return reject(PartitionRejection::NotUnionOfOrbits { part: i, lit: l });
            }
            if orbit.len() > 1 && part_of[negate_index(l) as usize] != i as u32 {
                return reject(PartitionRejection::NotNegationClosed { part: i, lit: l });
            }
        }
    }

    let clauses = f.clauses();
    for (orbit_id, members) in clause_orbits(m, orbits) {
        let mut seen: HashMap<u32, HashSet<Vec<Point>>> = HashMap::new();
        let mut hits: HashMap<u32, usize> = HashMap::new();
        for &j in &members {
            let mut split: BTreeMap<u32, Vec<Point>> = BTreeMap::new();
            for &l in &clauses[j] {
                split.entry(part_of[l as usize]).or_default().push(l);
            }
            for (p, lits) in split {
                seen.entry(p).or_default().insert(lits);
                *hits.entry(p).or_default() += 1;
            }
        }
        let mut product: u128 = 1;
        for (p, set) in &seen {
            let empty = usize::from(hits[p] < members.len());
            product = product.saturating_mul((set.len() + empty) as u128);
        }
        if product != members.len() as u128 {
            return reject(PartitionRejection::ProductMismatch {
                clause_orbit: orbit_id,
                orbit_size: members.len(),
                product,
            });
        }
    }
    Ok(PartitionVerdict {
        accepted: true,
        rejection: None,
    })
}

/// Greedy candidate partition of the literals: starts from the literal parts
/// of the graph decomposition and splits off negation-closed orbit units one
/// at a time whenever the product test still holds. Heuristic: the result is
/// valid but not necessarily the finest valid partition.
pub fn heuristic_literal_partition(
    f: &CnfFormula,
    m: &ModelGraph,
    orbits: &OrbitPartition,
    decomposition: &Decomposition,
) -> Vec<Vec<Point>> {
    let n_lits = f.n_literals() as Point;
    let clause_orbit_members = clause_orbits(m, orbits);
    let clauses = f.clauses();
    let mut out = Vec::new();
    for factor in &decomposition.factors {
        let lits: Vec<Point> = factor.points.iter().copied().filter(|&x| x < n_lits).collect();
        if lits.is_empty() {
            continue;
        }
        // Units: a literal orbit joined with its negation orbit.
        let mut units: BTreeMap<Point, Vec<Point>> = BTreeMap::new();
        for &l in &lits {
            let a = orbits.class_of(l);
            let b = orbits.class_of(negate_index(l));
            let key = orbits.class(a)[0].min(orbits.class(b)[0]);
            units.entry(key).or_default().push(l);
        }
        let mut remaining: Vec<Point> = lits;
        for unit in units.into_values() {
            if unit.len() == remaining.len() {
                break;
            }
            let in_unit: HashSet<Point> = unit.iter().copied().collect();
            let in_rest: HashSet<Point> = remaining.iter().copied().filter(|l| !in_unit.contains(l)).collect();
            let touched: HashSet<u32> = remaining
                .iter()
                .flat_map(|&l| m.occurrences(l).iter())
                .map(|&j| orbits.class_of(m.clause_vertex(j as usize)))
                .collect();
            let separable = touched.iter().all(|o| {
                let members = &clause_orbit_members[o];
                let cl = || members.iter().map(|&j| clauses[j].as_slice());
                let whole = distinct_projections(cl(), |l| in_unit.contains(&l) || in_rest.contains(&l));
                let a = distinct_projections(cl(), |l| in_unit.contains(&l));
                let b = distinct_projections(cl(), |l| in_rest.contains(&l));
                a * b == whole
            });
            if separable {
                out.push(unit);
                remaining.retain(|l| !in_unit.contains(l));
            }
        }
        out.push(remaining);
    }
    for part in &mut out {
        part.sort_unstable();
    }
    out.sort_unstable_by_key(|p| p[0]);
    out
}
