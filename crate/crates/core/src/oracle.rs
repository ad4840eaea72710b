//! Brute-force ground truth for small instances.
//!
//! Everything here enumerates groups element by element and is bounded by
//! [`OracleBounds`]; exceeding a bound is an error, never a silent slowdown.

use std::collections::{BTreeMap, HashMap, HashSet, VecDeque};

use itertools::Itertools;
use thiserror::Error;

use crate::cnf::{negate_index, CnfFormula, ModelGraph};
use crate::graph::{ColoredGraph, Relation};
use crate::perm::{GeneratingSet, OrbitPartition, Permutation, Point};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct OracleBounds {
    pub max_vertices: usize,
    pub max_elements: usize,
    pub max_degree: usize,
    pub max_orbit_size: usize,
    pub max_moving_orbits: usize,
    pub max_search_nodes: usize,
}

impl Default for OracleBounds {
    fn default() -> Self {
        OracleBounds {
            max_vertices: 24,
            max_elements: 100_000,
            max_degree: 24,
            max_orbit_size: 8,
            max_moving_orbits: 20,
            max_search_nodes: 20_000_000,
        }
    }
}

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum OracleError {
    #[error("graph has {n} vertices, oracle bound is {bound}")]
    TooManyVertices { n: usize, bound: usize },
    #[error("group has more than {bound} elements")]
    TooManyElements { bound: usize },
    #[error("degree {n} exceeds oracle bound {bound}")]
    DegreeTooLarge { n: usize, bound: usize },
    #[error("orbit of size {n} exceeds oracle bound {bound}")]
    OrbitTooLarge { n: usize, bound: usize },
    #[error("{n} moved orbits exceed oracle bound {bound}")]
    TooManyOrbits { n: usize, bound: usize },
    #[error("search exceeded {bound} nodes")]
    SearchBudget { bound: usize },
}

/// An explicit permutation group stored as dense image arrays.
#[derive(Debug, Clone)]
pub struct ElementSet {
    degree: usize,
    elements: Vec<Vec<u32>>,
    index: HashSet<Vec<u32>>,
}

fn dense(p: &Permutation) -> Vec<u32> {
    p.to_images()
}

impl ElementSet {
    fn from_dense(degree: usize, elements: Vec<Vec<u32>>) -> Self {
        let index = elements.iter().cloned().collect();
        ElementSet {
            degree,
            elements,
            index,
        }
    }

    /// All products of the generators, by breadth-first closure.
    pub fn closure(s: &GeneratingSet, max_elements: usize) -> Result<Self, OracleError> {
        let gens: Vec<Vec<u32>> = s.iter().map(dense).collect();
        Self::closure_dense(s.degree(), &gens, max_elements)
    }

    fn closure_dense(degree: usize, gens: &[Vec<u32>], max_elements: usize) -> Result<Self, OracleError> {
        let identity: Vec<u32> = (0..degree as u32).collect();
        let mut index: HashSet<Vec<u32>> = HashSet::from([identity.clone()]);
        let mut elements = vec![identity.clone()];
        let mut queue = VecDeque::from([identity]);
        while let Some(e) = queue.pop_front() {
            for g in gens {
                let next: Vec<u32> = e.iter().map(|&x| g[x as usize]).collect();
                if index.insert(next.clone()) {
                    if index.len() > max_elements {
                        return Err(OracleError::TooManyElements { bound: max_elements });
                    }
                    elements.push(next.clone());
                    queue.push_back(next);
                }
            }
        }
        Ok(ElementSet {
            degree,
            elements,
            index,
        })
    }

    pub fn degree(&self) -> usize {
        self.degree
    }

    pub fn len(&self) -> usize {
        self.elements.len()
    }

    pub fn is_empty(&self) -> bool {
        self.elements.is_empty()
    }

    pub fn contains(&self, p: &Permutation) -> bool {
        p.degree() == self.degree && self.index.contains(&dense(p))
    }

    pub fn contains_images(&self, images: &[u32]) -> bool {
        self.index.contains(images)
    }

    pub fn iter(&self) -> impl Iterator<Item = Permutation> + '_ {
        self.elements
            .iter()
            .map(|e| Permutation::from_images(e).expect("stored elements are bijections"))
    }

    /// Elements in lexicographic order of their image arrays.
    pub fn sorted(&self) -> Vec<Permutation> {
        let mut e = self.elements.clone();
        e.sort_unstable();
        e.iter().map(|x| Permutation::from_images(x).unwrap()).collect()
    }

    /// Identity present, closed under composition and inverses. Quadratic.
    pub fn is_closed(&self) -> bool {
        let identity: Vec<u32> = (0..self.degree as u32).collect();
        if !self.index.contains(&identity) {
            return false;
        }
        for a in &self.elements {
            let mut inv = vec![0u32; self.degree];
            for (x, &y) in a.iter().enumerate() {
                inv[y as usize] = x as u32;
            }
            if !self.index.contains(&inv) {
                return false;
            }
            for b in &self.elements {
                let ab: Vec<u32> = a.iter().map(|&x| b[x as usize]).collect();
                if !self.index.contains(&ab) {
                    return false;
                }
            }
        }
        true
    }

    /// Number of distinct restrictions of the elements to `points`.
    pub fn restriction_count(&self, points: &[Point]) -> usize {
        let seen: HashSet<Vec<u32>> = self
            .elements
            .iter()
            .map(|e| points.iter().map(|&x| e[x as usize]).collect())
            .collect();
        seen.len()
    }

    /// A generating set chosen greedily from the elements in lexicographic order.
    pub fn generators(&self) -> GeneratingSet {
        let mut sorted = self.elements.clone();
        sorted.sort_unstable();
        let mut gens: Vec<Vec<u32>> = Vec::new();
        let mut sub = ElementSet::from_dense(self.degree, vec![(0..self.degree as u32).collect()]);
        for e in sorted {
            if sub.index.contains(&e) {
                continue;
            }
            gens.push(e);
            sub = Self::closure_dense(self.degree, &gens, usize::MAX).expect("unbounded");
            if sub.len() == self.len() {
                break;
            }
        }
        let perms = gens.iter().map(|e| Permutation::from_images(e).unwrap()).collect();
        GeneratingSet::new(self.degree, perms).expect("dense images share the degree")
    }

    /// Orbit partition of the element set.
    pub fn orbits(&self) -> OrbitPartition {
        let mut label: Vec<u32> = (0..self.degree as u32).collect();
        for x in 0..self.degree {
            let m = self.elements.iter().map(|e| e[x]).min().unwrap_or(x as u32);
            label[x] = m;
        }
        OrbitPartition::from_labels(&label)
    }
}

/// Color refinement that names colors by their sorted signatures, so equal
/// names mean equal iterated-degree information on any two graphs.
type Signature = (u32, Vec<(u8, u32)>);

pub fn naive_refinement(g: &ColoredGraph) -> Vec<u32> {
    let n = g.num_vertices();
    let mut color: Vec<u32> = g.colors().to_vec();
    let mut classes = color.iter().collect::<HashSet<_>>().len();
    loop {
        let sigs: Vec<Signature> = (0..n as u32)
            .map(|v| {
                let mut s: Vec<(u8, u32)> = Relation::ALL
                    .iter()
                    .enumerate()
                    .flat_map(|(r, &rel)| g.neighbors(v, rel).iter().map(move |&u| (r as u8, u)))
                    .map(|(r, u)| (r, color[u as usize]))
                    .collect();
                s.sort_unstable();
                (color[v as usize], s)
            })
            .collect();
        let names: BTreeMap<&Signature, u32> = sigs
            .iter()
            .sorted()
            .dedup()
            .enumerate()
            .map(|(k, s)| (s, k as u32))
            .collect();
        let next: Vec<u32> = sigs.iter().map(|s| names[s]).collect();
        let count = names.len();
        color = next;
        if count == classes {
            return color;
        }
        classes = count;
    }
}

/// All automorphisms of a colored graph, by backtracking over vertex images
/// restricted to equally refined colors and consistent with adjacency.
pub fn enumerate_automorphisms(g: &ColoredGraph, bounds: &OracleBounds) -> Result<ElementSet, OracleError> {
    let n = g.num_vertices();
    if n > bounds.max_vertices {
        return Err(OracleError::TooManyVertices {
            n,
            bound: bounds.max_vertices,
        });
    }
    let color = naive_refinement(g);
    let mut class_size: HashMap<u32, usize> = HashMap::new();
    for &c in &color {
        *class_size.entry(c).or_default() += 1;
    }
    // Order: breadth-first from roots in the smallest color classes; each
    // non-root remembers a placed neighbor and the relation leading to it.
    let mut order: Vec<u32> = Vec::with_capacity(n);
    let mut anchor: Vec<Option<(u32, usize)>> = vec![None; n];
    let mut placed = vec![false; n];
    let mut roots: Vec<u32> = (0..n as u32).collect();
    roots.sort_by_key(|&v| (class_size[&color[v as usize]], v));
    for root in roots {
        if placed[root as usize] {
            continue;
        }
        placed[root as usize] = true;
        let mut queue = VecDeque::from([root]);
        while let Some(u) = queue.pop_front() {
            order.push(u);
            for (r, rel) in Relation::ALL.iter().enumerate() {
                for &w in g.neighbors(u, *rel) {
                    if !placed[w as usize] {
                        placed[w as usize] = true;
                        anchor[w as usize] = Some((u, r));
                        queue.push_back(w);
                    }
                }
            }
        }
    }

    struct Search<'a> {
        g: &'a ColoredGraph,
        color: Vec<u32>,
        order: Vec<u32>,
        anchor: Vec<Option<(u32, usize)>>,
        image: Vec<u32>,
        used: Vec<bool>,
        found: Vec<Vec<u32>>,
        nodes: usize,
        bounds: OracleBounds,
    }

    impl Search<'_> {
        fn consistent(&self, v: u32, w: u32) -> bool {
            if self.color[v as usize] != self.color[w as usize] {
                return false;
            }
            for rel in Relation::ALL {
                let mut mapped = 0;
                for &u in self.g.neighbors(v, rel) {
                    let iu = self.image[u as usize];
                    if iu != u32::MAX {
                        mapped += 1;
                        if self.g.neighbors(w, rel).binary_search(&iu).is_err() {
                            return false;
                        }
                    }
                }
                let hit = self
                    .g
                    .neighbors(w, rel)
                    .iter()
                    .filter(|&&x| self.used[x as usize])
                    .count();
                if hit != mapped {
                    return false;
                }
            }
            true
        }

        fn run(&mut self, depth: usize) -> Result<(), OracleError> {
            self.nodes += 1;
            if self.nodes > self.bounds.max_search_nodes {
                return Err(OracleError::SearchBudget {
                    bound: self.bounds.max_search_nodes,
                });
            }
            if depth == self.order.len() {
                self.found.push(self.image.clone());
                if self.found.len() > self.bounds.max_elements {
                    return Err(OracleError::TooManyElements {
                        bound: self.bounds.max_elements,
                    });
                }
                return Ok(());
            }
            let v = self.order[depth];
            let candidates: Vec<u32> = match self.anchor[v as usize] {
                Some((u, r)) => self.g.neighbors(self.image[u as usize], Relation::ALL[r]).to_vec(),
                None => (0..self.g.num_vertices() as u32).collect(),
            };
            for w in candidates {
                if self.used[w as usize] || !self.consistent(v, w) {
                    continue;
                }
                self.image[v as usize] = w;
                self.used[w as usize] = true;
                self.run(depth + 1)?;
                self.image[v as usize] = u32::MAX;
                self.used[w as usize] = false;
            }
            Ok(())
        }
    }

    let mut search = Search {
        g,
        color,
        order,
        anchor,
        image: vec![u32::MAX; n],
        used: vec![false; n],
        found: Vec::new(),
        nodes: 0,
        bounds: *bounds,
    };
    search.run(0)?;
    Ok(ElementSet::from_dense(n, search.found))
}

/// Partial map extended by `c(g(x)) = g(c(x))` for every generator and its inverse.
struct CommutingMap<'a> {
    forward: &'a [Vec<u32>],
    backward: &'a [Vec<u32>],
    map: Vec<u32>,
    used: Vec<bool>,
    trail: Vec<u32>,
}

impl<'a> CommutingMap<'a> {
    fn new(degree: usize, forward: &'a [Vec<u32>], backward: &'a [Vec<u32>]) -> Self {
        CommutingMap {
            forward,
            backward,
            map: vec![u32::MAX; degree],
            used: vec![false; degree],
            trail: Vec::new(),
        }
    }

    /// Sets `c(x) = y` and propagates; on conflict undoes its own work.
    fn assign(&mut self, x: u32, y: u32) -> bool {
        let mark = self.trail.len();
        let mut queue = vec![(x, y)];
        while let Some((a, b)) = queue.pop() {
            let current = self.map[a as usize];
            if current == b {
                continue;
            }
            if current != u32::MAX || self.used[b as usize] {
                self.undo(mark);
                return false;
            }
            self.map[a as usize] = b;
            self.used[b as usize] = true;
            self.trail.push(a);
            for g in self.forward.iter().chain(self.backward) {
                queue.push((g[a as usize], g[b as usize]));
            }
        }
        true
    }

    fn undo(&mut self, mark: usize) {
        while self.trail.len() > mark {
            let a = self.trail.pop().unwrap();
            self.used[self.map[a as usize] as usize] = false;
            self.map[a as usize] = u32::MAX;
        }
    }
}

fn dense_with_inverses(s: &GeneratingSet) -> (Vec<Vec<u32>>, Vec<Vec<u32>>) {
    let forward: Vec<Vec<u32>> = s.iter().map(dense).collect();
    let backward = s.iter().map(|g| dense(&g.inverse())).collect();
    (forward, backward)
}

/// All permutations of the domain commuting with every generator.
pub fn brute_centralizer(s: &GeneratingSet, bounds: &OracleBounds) -> Result<ElementSet, OracleError> {
    let n = s.degree();
    if n > bounds.max_degree {
        return Err(OracleError::DegreeTooLarge {
            n,
            bound: bounds.max_degree,
        });
    }
    let (forward, backward) = dense_with_inverses(s);
    let mut cm = CommutingMap::new(n, &forward, &backward);
    let mut found = Vec::new();
    fn go(cm: &mut CommutingMap, found: &mut Vec<Vec<u32>>, n: usize, max: usize) -> Result<(), OracleError> {
        let Some(x) = (0..n).find(|&x| cm.map[x] == u32::MAX) else {
            found.push(cm.map.clone());
            return if found.len() > max {
                Err(OracleError::TooManyElements { bound: max })
            } else {
                Ok(())
            };
        };
        for y in 0..n as u32 {
            if cm.used[y as usize] {
                continue;
            }
            let mark = cm.trail.len();
            if cm.assign(x as u32, y) {
                go(cm, found, n, max)?;
                cm.undo(mark);
            }
        }
        Ok(())
    }
    go(&mut cm, &mut found, n, bounds.max_elements)?;
    Ok(ElementSet::from_dense(n, found))
}

/// Ground-truth orbit equivalence.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BruteEquivalence {
    /// Classes of orbit ids, ordered by least member.
    pub classes: Vec<Vec<u32>>,
    /// A commuting bijection from each class's least orbit to every other member.
    pub bijections: BTreeMap<(u32, u32), Vec<(Point, Point)>>,
}

/// Finds, for each pair of equally sized orbits, a bijection commuting with
/// every generator, trying every image of the first point.
pub fn brute_equivalent_orbits(
    s: &GeneratingSet,
    orbits: &OrbitPartition,
    bounds: &OracleBounds,
) -> Result<BruteEquivalence, OracleError> {
    if let Some(big) = orbits.classes().iter().find(|c| c.len() > bounds.max_orbit_size) {
        return Err(OracleError::OrbitTooLarge {
            n: big.len(),
            bound: bounds.max_orbit_size,
        });
    }
    let (forward, backward) = dense_with_inverses(s);
    let n = s.degree();
    let k = orbits.num_classes() as u32;
    let mut class_rep: Vec<u32> = (0..k).collect();
    let mut bijections = BTreeMap::new();
    for a in 0..k {
        if class_rep[a as usize] != a {
            continue;
        }
        let da = orbits.class(a);
        for b in a + 1..k {
            let db = orbits.class(b);
            if class_rep[b as usize] != b || db.len() != da.len() {
                continue;
            }
            for &y in db {
                let mut cm = CommutingMap::new(n, &forward, &backward);
                if cm.assign(da[0], y) {
                    let pairs: Vec<(Point, Point)> = da.iter().map(|&x| (x, cm.map[x as usize])).collect();
                    class_rep[b as usize] = a;
                    bijections.insert((a, b), pairs);
                    break;
                }
            }
        }
    }
    let mut classes: BTreeMap<u32, Vec<u32>> = BTreeMap::new();
    for o in 0..k {
        classes.entry(class_rep[o as usize]).or_default().push(o);
    }
    Ok(BruteEquivalence {
        classes: classes.into_values().collect(),
        bijections,
    })
}

/// The finest partition of the orbits into parts that split the group as a
/// direct product, as classes of orbit ids ordered by least member.
///
/// A set of orbits `A` splits the group iff cutting every generator to `A`
/// stays inside the group. Split sets are closed under intersection, so the
/// smallest split set containing a given orbit is its part.
pub fn brute_finest_decomposition(
    s: &GeneratingSet,
    orbits: &OrbitPartition,
    bounds: &OracleBounds,
) -> Result<Vec<Vec<u32>>, OracleError> {
    let group = ElementSet::closure(s, bounds.max_elements)?;
    let mut parts: Vec<Vec<u32>> = Vec::new();
    let mut moving: Vec<u32> = Vec::new();
    for o in 0..orbits.num_classes() as u32 {
        if orbits.class_size(o) == 1 {
            parts.push(vec![o]);
        } else {
            moving.push(o);
        }
    }
    if moving.len() > bounds.max_moving_orbits {
        return Err(OracleError::TooManyOrbits {
            n: moving.len(),
            bound: bounds.max_moving_orbits,
        });
    }
    let splits = |set: &[u32]| {
        let mut inside = vec![false; s.degree()];
        for &o in set {
            for &x in orbits.class(o) {
                inside[x as usize] = true;
            }
        }
        s.iter().all(|g| group.contains(&g.cut(|x| inside[x as usize])))
    };
    while let Some(&first) = moving.first() {
        let rest = &moving[1..];
        let part = (0..=rest.len())
            .flat_map(|k| rest.iter().copied().combinations(k))
            .map(|mut extra| {
                extra.insert(0, first);
                extra
            })
            .find(|set| splits(set))
            .expect("the whole remainder always splits");
        moving.retain(|o| !part.contains(o));
        parts.push(part);
    }
    for p in &mut parts {
        p.sort_unstable();
    }
    parts.sort_unstable_by_key(|p| p[0]);
    let product: u128 = parts
        .iter()
        .map(|p| {
            let points: Vec<Point> = p.iter().flat_map(|&o| orbits.class(o).iter().copied()).collect();
            group.restriction_count(&points) as u128
        })
        .product();
    assert_eq!(product, group.len() as u128, "finest partition must split the group");
    Ok(parts)
}

/// Symmetries of a formula as literal permutations: automorphisms of its
/// model graph restricted to the literal vertices.
pub fn formula_symmetries(m: &ModelGraph, bounds: &OracleBounds) -> Result<ElementSet, OracleError> {
    let all = enumerate_automorphisms(m.graph(), bounds)?;
    let n_lits = m.n_literals();
    let lits: Vec<Vec<u32>> = all.elements.iter().map(|e| e[..n_lits].to_vec()).collect();
    Ok(ElementSet::from_dense(n_lits, lits))
}

/// True iff `p` is negation-consistent and maps the clause set onto itself.
pub fn is_formula_symmetry(f: &CnfFormula, p: &Permutation) -> bool {
    if p.degree() != f.n_literals() {
        return false;
    }
    if (0..f.n_literals() as Point).any(|l| p.apply(negate_index(l)) != negate_index(p.apply(l))) {
        return false;
    }
    let clauses: HashSet<&Vec<Point>> = f.clauses().iter().collect();
    f.clauses().iter().all(|c| {
        let mut image: Vec<Point> = c.iter().map(|&l| p.apply(l)).collect();
        image.sort_unstable();
        clauses.contains(&image)
    })
}

/// Direct-product test for a partition of the domain: the group is the
/// product of its restrictions to the parts.
pub fn partition_is_product(group: &ElementSet, parts: &[Vec<Point>]) -> bool {
    let product: u128 = parts.iter().map(|p| group.restriction_count(p) as u128).product();
    product == group.len() as u128
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::cnf::{model_graph, parse_dimacs_str};
    use crate::graph::GraphBuilder;
    use crate::perm::{orbits as orbits_of, parse_cycles};

    fn gens(lines: &[&str], n: usize) -> GeneratingSet {
        GeneratingSet::parse(&lines.join("\n"), n).unwrap()
    }

    #[test]
    fn triangle_and_rigid_path() {
        let mut b = GraphBuilder::new();
        b.add_vertices(3, 0);
        b.add_edge(0, 1);
        b.add_edge(1, 2);
        b.add_edge(2, 0);
        let tri = b.build().unwrap();
        let aut = enumerate_automorphisms(&tri, &OracleBounds::default()).unwrap();
        assert_eq!(aut.len(), 6);
        assert!(aut.is_closed());
        let mut b = GraphBuilder::new();
        b.add_vertex(0);
        b.add_vertex(1);
        b.add_vertex(2);
        b.add_edge(0, 1);
        b.add_edge(1, 2);
        assert_eq!(
            enumerate_automorphisms(&b.build().unwrap(), &OracleBounds::default())
                .unwrap()
                .len(),
            1
        );
    }

    #[test]
    fn running_example_group_order() {
        let f = parse_dimacs_str("p cnf 8 4\n1 -4 0\n2 -5 0\n3 -6 0\n1 2 3 7 8 0\n").unwrap();
        let m = model_graph(&f);
        let bounds = OracleBounds {
            max_vertices: 20,
            ..Default::default()
        };
        let aut = enumerate_automorphisms(m.graph(), &bounds).unwrap();
        assert_eq!(aut.len(), 12);
        let lits = formula_symmetries(&m, &bounds).unwrap();
        assert_eq!(lits.len(), 12);
        assert!(lits.iter().all(|p| is_formula_symmetry(&f, &p)));
        let too_small = OracleBounds {
            max_vertices: 19,
            ..Default::default()
        };
        assert!(matches!(
            enumerate_automorphisms(m.graph(), &too_small),
            Err(OracleError::TooManyVertices { .. })
        ));
    }

    #[test]
    fn centralizers() {
        let b = OracleBounds::default();
        assert_eq!(
            brute_centralizer(&GeneratingSet::new(3, vec![Permutation::identity(3)]).unwrap(), &b)
                .unwrap()
                .len(),
            6
        );
        assert_eq!(brute_centralizer(&gens(&["(1,2,3)", "(1,2)"], 3), &b).unwrap().len(), 1);
        // <(1,2)(3,4)> is centralized by the dihedral group of order 8.
        let c = brute_centralizer(&gens(&["(1,2)(3,4)"], 4), &b).unwrap();
        assert_eq!(c.len(), 8);
        assert!(c.is_closed());
        assert!(c.contains(&parse_cycles("(1,3)(2,4)", 4).unwrap()));
    }

    #[test]
    fn equivalence_oracle() {
        let s = gens(&["(1,2,3)(4,5,6)", "(1,2)(4,5)", "(7,8)"], 8);
        let orbits = orbits_of(&s);
        let eq = brute_equivalent_orbits(&s, &orbits, &OracleBounds::default()).unwrap();
        assert_eq!(eq.classes, vec![vec![0, 1], vec![2]]);
        assert_eq!(eq.bijections[&(0, 1)], vec![(0, 3), (1, 4), (2, 5)]);
    }

    #[test]
    fn decomposition_oracle() {
        let b = OracleBounds::default();
        let lock = gens(&["(1,2,3)(4,5,6)", "(1,2)(4,5)"], 6);
        assert_eq!(
            brute_finest_decomposition(&lock, &orbits_of(&lock), &b).unwrap(),
            vec![vec![0, 1]]
        );
        let free = gens(&["(1,2,3)", "(1,2)", "(4,5)"], 6);
        assert_eq!(
            brute_finest_decomposition(&free, &orbits_of(&free), &b).unwrap(),
            vec![vec![0], vec![1], vec![2]]
        );
        let trivial = GeneratingSet::empty(3);
        assert_eq!(
            brute_finest_decomposition(&trivial, &orbits_of(&trivial), &b)
                .unwrap()
                .len(),
            3
        );
    }

    #[test]
    fn greedy_generators_regenerate() {
        let s = gens(&["(1,2,3,4,5)", "(1,2)"], 5);
        let g = ElementSet::closure(&s, 1000).unwrap();
        assert_eq!(g.len(), 120);
        let again = ElementSet::closure(&g.generators(), 1000).unwrap();
        assert_eq!(again.len(), 120);
        assert!(matches!(
            ElementSet::closure(&s, 100),
            Err(OracleError::TooManyElements { bound: 100 })
        ));
    }
}
