//! Vertex-colored graphs with undirected and directed edges, color
//! refinement, connected components and induced subgraphs.

use std::collections::{HashMap, VecDeque};
use std::fmt::Write as _;

use petgraph::unionfind::UnionFind;
use thiserror::Error;

use crate::perm::{OrbitPartition, PermError, Permutation, Point};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum GraphError {
    #[error("self-loop at vertex {0}")]
    SelfLoop(u32),
    #[error("vertex {vertex} out of range for a graph on {n} vertices")]
    VertexOutOfRange { vertex: u32, n: usize },
    #[error("coloring covers {got} vertices, graph has {n}")]
    ColoringSize { got: usize, n: usize },
}

/// Edge relations seen by refinement and homogeneity tests.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Relation {
    Undirected,
    /// `v -> u`: counts out-neighbors.
    Out,
    /// `u -> v`: counts in-neighbors.
    In,
}

impl Relation {
    pub const ALL: [Relation; 3] = [Relation::Undirected, Relation::Out, Relation::In];
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ColoredGraph {
    undirected: Vec<Vec<u32>>,
    out_arcs: Vec<Vec<u32>>,
    in_arcs: Vec<Vec<u32>>,
    color: Vec<u32>,
    num_colors: usize,
}

/// Accumulates edges and colors; duplicates are merged on [`GraphBuilder::build`].
#[derive(Debug, Clone, Default)]
pub struct GraphBuilder {
    labels: Vec<u64>,
    edges: Vec<(u32, u32)>,
    arcs: Vec<(u32, u32)>,
}

impl GraphBuilder {
    pub fn new() -> Self {
        Self::default()
    }

    /// Adds a vertex with an arbitrary color label and returns its index.
    pub fn add_vertex(&mut self, label: u64) -> u32 {
        self.labels.push(label);
        self.labels.len() as u32 - 1
    }

    pub fn add_vertices(&mut self, count: usize, label: u64) {
        self.labels.extend(std::iter::repeat_n(label, count));
    }

    pub fn num_vertices(&self) -> usize {
        self.labels.len()
    }

    pub fn add_edge(&mut self, u: u32, v: u32) {
        self.edges.push(if u < v { (u, v) } else { (v, u) });
    }

    pub fn add_arc(&mut self, from: u32, to: u32) {
        self.arcs.push((from, to));
    }

    /// Finalizes the graph; color labels are renumbered to `0..c` preserving order.
    pub fn build(mut self) -> Result<ColoredGraph, GraphError> {
        let n = self.labels.len();
        for &(u, v) in self.edges.iter().chain(&self.arcs) {
            for x in [u, v] {
                if x as usize >= n {
                    return Err(GraphError::VertexOutOfRange { vertex: x, n });
                }
            }
            if u == v {
                return Err(GraphError::SelfLoop(u));
            }
        }
        self.edges.sort_unstable();
        self.edges.dedup();
        self.arcs.sort_unstable();
        self.arcs.dedup();
        let mut undirected = vec![Vec::new(); n];
        for &(u, v) in &self.edges {
            undirected[u as usize].push(v);
            undirected[v as usize].push(u);
        }
        let mut out_arcs = vec![Vec::new(); n];
        let mut in_arcs = vec![Vec::new(); n];
        for &(u, v) in &self.arcs {
            out_arcs[u as usize].push(v);
            in_arcs[v as usize].push(u);
        }
        for list in undirected.iter_mut().chain(&mut in_arcs) {
            list.sort_unstable();
        }
        let coloring = Coloring::from_labels(&self.labels);
        Ok(ColoredGraph {
            undirected,
            out_arcs,
            in_arcs,
            num_colors: coloring.num_classes(),
            color: coloring.color,
        })
    }
}

impl ColoredGraph {
    pub fn num_vertices(&self) -> usize {
        self.color.len()
    }

    pub fn num_undirected_edges(&self) -> usize {
        self.undirected.iter().map(Vec::len).sum::<usize>() / 2
    }

    pub fn num_arcs(&self) -> usize {
        self.out_arcs.iter().map(Vec::len).sum()
    }

    /// Undirected edges plus arcs.
    pub fn num_edges(&self) -> usize {
        self.num_undirected_edges() + self.num_arcs()
    }

    pub fn color(&self, v: u32) -> u32 {
        self.color[v as usize]
    }

    pub fn colors(&self) -> &[u32] {
        &self.color
    }

    pub fn num_colors(&self) -> usize {
        self.num_colors
    }

    pub fn coloring(&self) -> Coloring {
        Coloring::from_labels(&self.color)
    }

    /// Sorted neighbors of `v` under `rel`.
    pub fn neighbors(&self, v: u32, rel: Relation) -> &[u32] {
        match rel {
            Relation::Undirected => &self.undirected[v as usize],
            Relation::Out => &self.out_arcs[v as usize],
            Relation::In => &self.in_arcs[v as usize],
        }
    }

    pub fn has_edge(&self, u: u32, v: u32) -> bool {
        self.undirected[u as usize].binary_search(&v).is_ok()
    }

    pub fn has_arc(&self, from: u32, to: u32) -> bool {
        self.out_arcs[from as usize].binary_search(&to).is_ok()
    }

    /// Sorted undirected edge list `(u, v)` with `u < v`.
    pub fn edges(&self) -> Vec<(u32, u32)> {
        let mut out = Vec::new();
        for (u, list) in self.undirected.iter().enumerate() {
            out.extend(list.iter().filter(|&&v| v > u as u32).map(|&v| (u as u32, v)));
        }
        out
    }

    pub fn arcs(&self) -> Vec<(u32, u32)> {
        let mut out = Vec::new();
        for (u, list) in self.out_arcs.iter().enumerate() {
            out.extend(list.iter().map(|&v| (u as u32, v)));
        }
        out
    }

    /// Debug dump in DOT format.
    pub fn to_dot(&self) -> String {
        let mut out = String::from("digraph G {\n");
        for (v, c) in self.color.iter().enumerate() {
            let _ = writeln!(out, "  {v} [label=\"{v}:{c}\"];");
        }
        for (u, v) in self.edges() {
            let _ = writeln!(out, "  {u} -> {v} [dir=none];");
        }
        for (u, v) in self.arcs() {
            let _ = writeln!(out, "  {u} -> {v};");
        }
        out.push_str("}\n");
        out
    }
}

/// True iff `p` preserves colors, undirected edges and arcs of `g`.
///
/// Only edges incident to `supp(p)` are inspected; since `p` is a bijection
/// on a finite edge set this also preserves non-edges.
pub fn is_automorphism(g: &ColoredGraph, p: &Permutation) -> Result<bool, PermError> {
    if p.degree() != g.num_vertices() {
        return Err(PermError::DegreeMismatch {
            left: g.num_vertices(),
            right: p.degree(),
        });
    }
    for &(v, pv) in p.pairs() {
        if g.color(v) != g.color(pv) {
            return Ok(false);
        }
        for u in g.neighbors(v, Relation::Undirected) {
            if !g.has_edge(pv, p.apply(*u)) {
                return Ok(false);
            }
        }
        for u in g.neighbors(v, Relation::Out) {
            if !g.has_arc(pv, p.apply(*u)) {
                return Ok(false);
            }
        }
        for u in g.neighbors(v, Relation::In) {
            if !g.has_arc(p.apply(*u), pv) {
                return Ok(false);
            }
        }
    }
    Ok(true)
}

/// A vertex coloring with contiguous class ids.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Coloring {
    color: Vec<u32>,
    sizes: Vec<usize>,
}

impl Coloring {
    /// Renumbers arbitrary labels to `0..c`, preserving their relative order.
    pub fn from_labels<L: Ord + Copy>(labels: &[L]) -> Self {
        let mut distinct: Vec<L> = labels.to_vec();
        distinct.sort_unstable();
        distinct.dedup();
        let color: Vec<u32> = labels
            .iter()
            .map(|l| distinct.binary_search(l).unwrap() as u32)
            .collect();
        let mut sizes = vec![0; distinct.len()];
        for &c in &color {
            sizes[c as usize] += 1;
        }
        Coloring { color, sizes }
    }

    pub fn uniform(n: usize) -> Self {
        Coloring {
            color: vec![0; n],
            sizes: if n == 0 { vec![] } else { vec![n] },
        }
    }

    /// Renumbers classes by ascending minimum vertex.
    pub fn canonical(&self) -> Self {
        let mut remap = vec![u32::MAX; self.sizes.len()];
        let mut next = 0;
        let mut color = Vec::with_capacity(self.color.len());
        for &c in &self.color {
            if remap[c as usize] == u32::MAX {
                remap[c as usize] = next;
                next += 1;
            }
            color.push(remap[c as usize]);
        }
        let mut sizes = vec![0; next as usize];
        for &c in &color {
            sizes[c as usize] += 1;
        }
        Coloring { color, sizes }
    }

    pub fn len(&self) -> usize {
        self.color.len()
    }

    pub fn is_empty(&self) -> bool {
        self.color.is_empty()
    }

    pub fn color(&self, v: u32) -> u32 {
        self.color[v as usize]
    }

    pub fn colors(&self) -> &[u32] {
        &self.color
    }

    pub fn num_classes(&self) -> usize {
        self.sizes.len()
    }

    pub fn class_size(&self, c: u32) -> usize {
        self.sizes[c as usize]
    }

    /// True iff every class of `self` lies inside a class of `coarser`.
    pub fn refines(&self, coarser: &Coloring) -> bool {
        let mut parent = vec![u32::MAX; self.num_classes()];
        for (v, &c) in self.color.iter().enumerate() {
            let p = coarser.color[v];
            match parent[c as usize] {
                u32::MAX => parent[c as usize] = p,
                q if q != p => return false,
                _ => {}
            }
        }
        true
    }

    pub fn to_partition(&self) -> OrbitPartition {
        OrbitPartition::from_labels(&self.color)
    }
}

/// Cell-array partition used by refinement.
struct Partition {
    elems: Vec<u32>,
    pos: Vec<usize>,
    cell_of: Vec<usize>,
    start: Vec<usize>,
    end: Vec<usize>,
}

impl Partition {
    fn new(initial: &Coloring) -> Self {
        let n = initial.len();
        let k = initial.num_classes();
        let start: Vec<usize> = initial
            .sizes
            .iter()
            .scan(0, |acc, &size| {
                let s = *acc;
                *acc += size;
                Some(s)
            })
            .collect();
        let end: Vec<usize> = (0..k).map(|c| start[c] + initial.sizes[c]).collect();
        let mut fill = start.clone();
        let mut elems = vec![0; n];
        let mut pos = vec![0; n];
        for (v, &c) in initial.color.iter().enumerate() {
            let c = c as usize;
            elems[fill[c]] = v as u32;
            pos[v] = fill[c];
            fill[c] += 1;
        }
        Partition {
            elems,
            pos,
            cell_of: initial.color.iter().map(|&c| c as usize).collect(),
            start,
            end,
        }
    }

    fn size(&self, cell: usize) -> usize {
        self.end[cell] - self.start[cell]
    }

    fn swap_to(&mut self, v: u32, target: usize) {
        let from = self.pos[v as usize];
        let other = self.elems[target];
        self.elems.swap(from, target);
        self.pos[v as usize] = target;
        self.pos[other as usize] = from;
    }
}

/// Coarsest equitable refinement of `initial`, with classes numbered by
/// ascending minimum vertex.
///
/// Splitting uses the smaller-half rule: when a cell not waiting in the
/// worklist splits, every fragment except one largest (lowest id on ties)
/// is queued.
pub fn color_refinement(g: &ColoredGraph, initial: &Coloring) -> Result<Coloring, GraphError> {
    let n = g.num_vertices();
    if initial.len() != n {
        return Err(GraphError::ColoringSize { got: initial.len(), n });
    }
    let mut part = Partition::new(initial);
    let mut queue: VecDeque<usize> = (0..part.start.len()).collect();
    let mut in_queue = vec![true; part.start.len()];

    let mut count = vec![0usize; n];
    let mut touched_vertices: Vec<u32> = Vec::new();
    let mut touched_cells: Vec<usize> = Vec::new();
    let mut members_of: HashMap<usize, Vec<u32>> = HashMap::new();

    while let Some(splitter) = queue.pop_front() {
        in_queue[splitter] = false;
        let members: Vec<u32> = part.elems[part.start[splitter]..part.end[splitter]].to_vec();
        for rel in Relation::ALL {
            // v is counted once per member u with v -rel-> u.
            let reverse = match rel {
                Relation::Undirected => Relation::Undirected,
                Relation::Out => Relation::In,
                Relation::In => Relation::Out,
            };
            for &u in &members {
                for &v in g.neighbors(u, reverse) {
                    if count[v as usize] == 0 {
                        touched_vertices.push(v);
                    }
                    count[v as usize] += 1;
                }
            }
            if touched_vertices.is_empty() {
                continue;
            }
            for &v in &touched_vertices {
                let c = part.cell_of[v as usize];
                members_of
                    .entry(c)
                    .or_insert_with(|| {
                        touched_cells.push(c);
                        Vec::new()
                    })
                    .push(v);
            }
            touched_cells.sort_unstable();
            for &cell in &touched_cells {
                let mut touched = members_of.remove(&cell).unwrap();
                let size = part.size(cell);
                let first = count[touched[0] as usize];
                if touched.len() == size && touched.iter().all(|&v| count[v as usize] == first) {
                    continue;
                }
                // Move touched vertices to the tail of the cell, sorted by count.
                touched.sort_unstable_by_key(|&v| (count[v as usize], v));
                let tail = part.end[cell] - touched.len();
                for (k, &v) in touched.iter().enumerate() {
                    part.swap_to(v, tail + k);
                }
                let mut bounds = Vec::new();
                if tail > part.start[cell] {
                    bounds.push(part.start[cell]);
                }
                for k in 0..touched.len() {
                    if k == 0 || count[touched[k] as usize] != count[touched[k - 1] as usize] {
                        bounds.push(tail + k);
                    }
                }
                let cell_end = part.end[cell];
                let mut fragments = Vec::with_capacity(bounds.len());
                for (k, &b) in bounds.iter().enumerate() {
                    let e = bounds.get(k + 1).copied().unwrap_or(cell_end);
                    let id = if k == 0 {
                        part.end[cell] = e;
                        cell
                    } else {
                        part.start.push(b);
                        part.end.push(e);
                        in_queue.push(false);
                        let id = part.start.len() - 1;
                        for idx in b..e {
                            part.cell_of[part.elems[idx] as usize] = id;
                        }
                        id
                    };
                    fragments.push(id);
                }
                if in_queue[cell] {
                    for &f in &fragments[1..] {
                        in_queue[f] = true;
                        queue.push_back(f);
                    }
                } else {
                    let largest = *fragments
                        .iter()
                        .max_by(|&&a, &&b| part.size(a).cmp(&part.size(b)).then(b.cmp(&a)))
                        .unwrap();
                    for &f in &fragments {
                        if f != largest {
                            in_queue[f] = true;
                            queue.push_back(f);
                        }
                    }
                }
            }
            for &v in &touched_vertices {
                count[v as usize] = 0;
            }
            touched_vertices.clear();
            touched_cells.clear();
        }
    }
    Ok(Coloring::from_labels(&part.cell_of).canonical())
}

/// True iff within every class all vertices have equal neighbor counts into
/// every class, for every edge relation.
pub fn is_equitable(g: &ColoredGraph, coloring: &Coloring) -> bool {
    let n = g.num_vertices();
    if coloring.len() != n {
        return false;
    }
    let mut reference: Vec<Option<Vec<(u8, u32, u32)>>> = vec![None; coloring.num_classes()];
    for v in 0..n as u32 {
        let mut sig: Vec<(u8, u32, u32)> = Vec::new();
        for (r, rel) in Relation::ALL.iter().enumerate() {
            let mut cs: Vec<u32> = g.neighbors(v, *rel).iter().map(|&u| coloring.color(u)).collect();
            cs.sort_unstable();
            for chunk in cs.chunk_by(|a, b| a == b) {
                sig.push((r as u8, chunk[0], chunk.len() as u32));
            }
        }
        let slot = &mut reference[coloring.color(v) as usize];
        match slot {
            None => *slot = Some(sig),
            Some(s) if *s != sig => return false,
            _ => {}
        }
    }
    true
}

/// Connected components, treating arcs as undirected.
pub fn connected_components(g: &ColoredGraph) -> OrbitPartition {
    let mut uf = UnionFind::<u32>::new(g.num_vertices());
    for (u, v) in g.edges().into_iter().chain(g.arcs()) {
        uf.union(u, v);
    }
    OrbitPartition::from_labels(&uf.into_labeling())
}

/// An induced subgraph together with its vertex map.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct InducedSubgraph {
    pub graph: ColoredGraph,
    /// `vertices[new] = old`, ascending.
    pub vertices: Vec<u32>,
}

impl InducedSubgraph {
    pub fn new_index(&self, old: u32) -> Option<u32> {
        self.vertices.binary_search(&old).ok().map(|k| k as u32)
    }
}

/// Subgraph induced by `keep`; colors are renumbered contiguously in their
/// original relative order.
pub fn induced_subgraph(g: &ColoredGraph, keep: &[Point]) -> Result<InducedSubgraph, GraphError> {
    let mut vertices = keep.to_vec();
    vertices.sort_unstable();
    vertices.dedup();
    if let Some(&v) = vertices.iter().find(|&&v| v as usize >= g.num_vertices()) {
        return Err(GraphError::VertexOutOfRange {
            vertex: v,
            n: g.num_vertices(),
        });
    }
    let index = |v: u32| vertices.binary_search(&v).ok().map(|k| k as u32);
    let mut b = GraphBuilder::new();
    for &v in &vertices {
        b.add_vertex(g.color(v) as u64);
    }
    for (new_u, &u) in vertices.iter().enumerate() {
        for &w in g.neighbors(u, Relation::Undirected) {
            if let Some(new_w) = index(w) {
                b.add_edge(new_u as u32, new_w);
            }
        }
        for &w in g.neighbors(u, Relation::Out) {
            if let Some(new_w) = index(w) {
                b.add_arc(new_u as u32, new_w);
            }
        }
    }
    Ok(InducedSubgraph {
        graph: b.build()?,
        vertices,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn graph(n: usize, edges: &[(u32, u32)]) -> ColoredGraph {
        let mut b = GraphBuilder::new();
        b.add_vertices(n, 0);
        for &(u, v) in edges {
            b.add_edge(u, v);
        }
        b.build().unwrap()
    }

    #[test]
    fn path_splits_the_middle() {
        let g = graph(3, &[(0, 1), (1, 2)]);
        let c = color_refinement(&g, &g.coloring()).unwrap();
        assert_eq!(c.colors(), &[0, 1, 0]);
        assert!(is_equitable(&g, &c));
    }

    #[test]
    fn equitable_input_is_a_fixed_point() {
        let g = graph(6, &[(0, 1), (1, 2), (2, 0), (3, 4), (4, 5), (5, 3)]);
        let c = color_refinement(&g, &g.coloring()).unwrap();
        assert_eq!(c.num_classes(), 1);
        let again = color_refinement(&g, &c).unwrap();
        assert_eq!(again, c);
    }

    #[test]
    fn directed_cycle_with_tail_is_discrete() {
        let mut b = GraphBuilder::new();
        b.add_vertices(4, 0);
        b.add_arc(0, 1);
        b.add_arc(1, 2);
        b.add_arc(2, 0);
        b.add_arc(3, 0);
        let g = b.build().unwrap();
        let c = color_refinement(&g, &g.coloring()).unwrap();
        assert_eq!(c.num_classes(), 4);
    }

    #[test]
    fn arc_direction_matters() {
        let mut b = GraphBuilder::new();
        b.add_vertices(2, 0);
        b.add_arc(0, 1);
        let g = b.build().unwrap();
        let c = color_refinement(&g, &g.coloring()).unwrap();
        assert_eq!(c.colors(), &[0, 1]);
        let swap = Permutation::from_cycles(2, &[vec![0, 1]]).unwrap();
        assert!(!is_automorphism(&g, &swap).unwrap());
    }

    #[test]
    fn automorphism_checks() {
        let g = graph(3, &[(0, 1), (1, 2)]);
        assert!(is_automorphism(&g, &Permutation::identity(3)).unwrap());
        let flip = Permutation::from_cycles(3, &[vec![0, 2]]).unwrap();
        assert!(is_automorphism(&g, &flip).unwrap());
        let bad = Permutation::from_cycles(3, &[vec![0, 1]]).unwrap();
        assert!(!is_automorphism(&g, &bad).unwrap());
        assert!(is_automorphism(&g, &Permutation::identity(4)).is_err());
    }

    #[test]
    fn components() {
        let g = graph(6, &[(0, 1), (1, 2), (2, 0), (3, 4), (4, 5), (5, 3)]);
        assert_eq!(connected_components(&g).num_classes(), 2);
        assert_eq!(connected_components(&graph(5, &[])).num_classes(), 5);
    }

    #[test]
    fn induced_subgraphs() {
        let mut b = GraphBuilder::new();
        b.add_vertex(5);
        b.add_vertex(9);
        b.add_vertex(7);
        b.add_edge(0, 1);
        b.add_edge(1, 2);
        let g = b.build().unwrap();
        let all = induced_subgraph(&g, &[2, 1, 0]).unwrap();
        assert_eq!(all.graph, g);
        let none = induced_subgraph(&g, &[]).unwrap();
        assert_eq!(none.graph.num_vertices(), 0);
        let part = induced_subgraph(&g, &[0, 2]).unwrap();
        assert_eq!(part.graph.colors(), &[0, 1]);
        assert_eq!(part.graph.num_edges(), 0);
        assert_eq!(part.new_index(2), Some(1));
    }

    #[test]
    fn builder_rejects_self_loops() {
        let mut b = GraphBuilder::new();
        b.add_vertices(2, 0);
        b.add_edge(1, 1);
        assert_eq!(b.build(), Err(GraphError::SelfLoop(1)));
    }
}
