//! DIMACS CNF input and the model graph of a formula.
//!
//! Literal `+v` is literal index `2(v-1)`, literal `-v` is `2(v-1)+1`; in the
//! model graph literal index and vertex coincide, and clause `j` is vertex
//! `2·n_vars + j`.

use std::collections::HashMap;
use std::io::BufRead;

use thiserror::Error;

use crate::graph::{ColoredGraph, GraphBuilder};
use crate::perm::{
    format_cycles_with, parse_cycles_with, CycleParseError, GeneratingSet, GeneratorFileError, Permutation, Point,
};

/// Literal index of a signed DIMACS literal.
pub fn lit_index(lit: i32) -> Point {
    let v = lit.unsigned_abs() - 1;
    2 * v + u32::from(lit < 0)
}

/// Signed DIMACS literal of a literal index.
pub fn lit_of_index(index: Point) -> i32 {
    let v = (index / 2 + 1) as i32;
    if index.is_multiple_of(2) {
        v
    } else {
        -v
    }
}

/// Index of the complementary literal.
pub fn negate_index(index: Point) -> Point {
    index ^ 1
}

#[derive(Debug, Error)]
pub enum DimacsError {
    #[error("io error: {0}")]
    Io(#[from] std::io::Error),
    #[error("missing `p cnf` header")]
    MissingHeader,
    #[error("line {line}: malformed header")]
    MalformedHeader { line: usize },
    #[error("line {line}: invalid token {token:?}")]
    InvalidToken { line: usize, token: String },
    #[error("line {line}: literal {lit} out of range for {n_vars} variables")]
    LiteralOutOfRange { line: usize, lit: i64, n_vars: usize },
    #[error("last clause is missing its terminating 0")]
    MissingTerminator,
    #[error("clause {clause} is tautological (contains {var} and -{var})")]
    Tautology { clause: usize, var: u32 },
    #[error("clauses {first} and {second} are duplicates")]
    DuplicateClause { first: usize, second: usize },
    #[error("header declares {expected} clauses, found {found}")]
    ClauseCountMismatch { expected: usize, found: usize },
}

/// A CNF formula whose clauses are sorted literal-index sets.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CnfFormula {
    n_vars: usize,
    clauses: Vec<Vec<Point>>,
}

impl CnfFormula {
    /// Validates and normalizes clauses of signed literals (1-based clause numbers in errors).
    pub fn new(n_vars: usize, clauses: Vec<Vec<i32>>) -> Result<Self, DimacsError> {
        let mut normalized = Vec::with_capacity(clauses.len());
        let mut seen: HashMap<Vec<Point>, usize> = HashMap::new();
        for (j, clause) in clauses.into_iter().enumerate() {
            let mut lits = Vec::with_capacity(clause.len());
            for lit in clause {
                if lit == 0 || lit.unsigned_abs() as usize > n_vars {
                    return Err(DimacsError::LiteralOutOfRange {
                        line: 0,
                        lit: lit as i64,
                        n_vars,
                    });
                }
                lits.push(lit_index(lit));
            }
            lits.sort_unstable();
            lits.dedup();
            if let Some(w) = lits.windows(2).find(|w| w[0] ^ 1 == w[1]) {
                return Err(DimacsError::Tautology {
                    clause: j + 1,
                    var: w[0] / 2 + 1,
                });
            }
            if let Some(&first) = seen.get(&lits) {
                return Err(DimacsError::DuplicateClause {
                    first: first + 1,
                    second: j + 1,
                });
            }
            seen.insert(lits.clone(), j);
            normalized.push(lits);
        }
        Ok(CnfFormula {
            n_vars,
            clauses: normalized,
        })
    }

    pub fn n_vars(&self) -> usize {
        self.n_vars
    }

    pub fn n_literals(&self) -> usize {
        2 * self.n_vars
    }

    pub fn clauses(&self) -> &[Vec<Point>] {
        &self.clauses
    }

    /// Clause `j` as signed DIMACS literals.
    pub fn clause_lits(&self, j: usize) -> Vec<i32> {
        self.clauses[j].iter().map(|&l| lit_of_index(l)).collect()
    }

    /// Total number of literal occurrences.
    pub fn size(&self) -> usize {
        self.clauses.iter().map(Vec::len).sum()
    }

    pub fn to_dimacs(&self) -> String {
        let mut out = format!("p cnf {} {}\n", self.n_vars, self.clauses.len());
        for j in 0..self.clauses.len() {
            for lit in self.clause_lits(j) {
                out.push_str(&lit.to_string());
                out.push(' ');
            }
            out.push_str("0\n");
        }
        out
    }
}

/// Parses DIMACS CNF: `c` comments, a `p cnf V C` header, then 0-terminated
/// clauses that may span lines. A line starting with `%` ends the input.
pub fn parse_dimacs<R: BufRead>(reader: R) -> Result<CnfFormula, DimacsError> {
    let mut header: Option<(usize, usize)> = None;
    let mut clauses: Vec<Vec<i32>> = Vec::new();
    let mut current: Vec<i32> = Vec::new();
    let mut open = false;
    for (k, line) in reader.lines().enumerate() {
        let line = line?;
        let lineno = k + 1;
        let trimmed = line.trim();
        if trimmed.is_empty() || trimmed.starts_with('c') {
            continue;
        }
        if trimmed.starts_with('%') {
            break;
        }
        if trimmed.starts_with('p') {
            if header.is_some() {
                return Err(DimacsError::MalformedHeader { line: lineno });
            }
            let fields: Vec<&str> = trimmed.split_whitespace().collect();
            let parsed = match fields.as_slice() {
                ["p", "cnf", v, c] => v.parse().ok().zip(c.parse().ok()),
                _ => None,
            };
            header = Some(parsed.ok_or(DimacsError::MalformedHeader { line: lineno })?);
            continue;
        }
        let (n_vars, _) = header.ok_or(DimacsError::MissingHeader)?;
        for token in trimmed.split_whitespace() {
            let lit: i64 = token.parse().map_err(|_| DimacsError::InvalidToken {
                line: lineno,
                token: token.to_string(),
            })?;
            if lit == 0 {
                clauses.push(std::mem::take(&mut current));
                open = false;
                continue;
            }
            if lit.unsigned_abs() as usize > n_vars {
                return Err(DimacsError::LiteralOutOfRange {
                    line: lineno,
                    lit,
                    n_vars,
                });
            }
            current.push(lit as i32);
            open = true;
        }
    }
    let (n_vars, n_clauses) = header.ok_or(DimacsError::MissingHeader)?;
    if open {
        return Err(DimacsError::MissingTerminator);
    }
    if clauses.len() != n_clauses {
        return Err(DimacsError::ClauseCountMismatch {
            expected: n_clauses,
            found: clauses.len(),
        });
    }
    CnfFormula::new(n_vars, clauses)
}

pub fn parse_dimacs_str(text: &str) -> Result<CnfFormula, DimacsError> {
    parse_dimacs(text.as_bytes())
}

/// Reads generators over literals written with signed DIMACS labels.
pub fn parse_literal_generators(text: &str, n_vars: usize) -> Result<GeneratingSet, GeneratorFileError> {
    GeneratingSet::parse_with(text, 2 * n_vars, literal_point)
}

/// Parses one literal permutation written with signed DIMACS labels.
pub fn parse_literal_cycles(text: &str, n_vars: usize) -> Result<Permutation, CycleParseError> {
    parse_cycles_with(text, 2 * n_vars, literal_point)
}

fn literal_point(label: i64) -> Option<Point> {
    if label == 0 || label.unsigned_abs() > i32::MAX as u64 {
        None
    } else {
        Some(lit_index(label as i32))
    }
}

/// Canonical cycle notation over signed DIMACS literals.
pub fn format_literal_cycles(p: &Permutation) -> String {
    format_cycles_with(p, |x| lit_of_index(x) as i64)
}

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum ModelError {
    #[error("permutation has degree {got}, expected {expected}")]
    DegreeMismatch { got: usize, expected: usize },
    #[error("literal {lit} violates negation consistency")]
    NotNegationConsistent { lit: i32 },
    #[error("clause {clause} is mapped to a literal set that is not a clause")]
    NotASymmetry { clause: usize },
    #[error("vertex {vertex} is mapped across the literal/clause bipartition")]
    BipartitionViolated { vertex: u32 },
}

/// The model graph: literal vertices (color 1) joined to their complements
/// and to the clause vertices (color 0) containing them.
#[derive(Debug, Clone)]
pub struct ModelGraph {
    graph: ColoredGraph,
    n_vars: usize,
    occurrences: Vec<Vec<u32>>,
    clause_by_lits: HashMap<Vec<Point>, u32>,
    clauses: Vec<Vec<Point>>,
}

pub fn model_graph(f: &CnfFormula) -> ModelGraph {
    let n_lits = f.n_literals();
    let mut b = GraphBuilder::new();
    b.add_vertices(n_lits, 1);
    b.add_vertices(f.clauses().len(), 0);
    let mut occurrences = vec![Vec::new(); n_lits];
    for l in (0..n_lits as Point).step_by(2) {
        b.add_edge(l, l + 1);
    }
    let mut clause_by_lits = HashMap::with_capacity(f.clauses().len());
    for (j, clause) in f.clauses().iter().enumerate() {
        let cv = (n_lits + j) as u32;
        for &l in clause {
            b.add_edge(l, cv);
            occurrences[l as usize].push(j as u32);
        }
        clause_by_lits.insert(clause.clone(), j as u32);
    }
    ModelGraph {
        graph: b.build().expect("model graph is simple"),
        n_vars: f.n_vars(),
        occurrences,
        clause_by_lits,
        clauses: f.clauses().to_vec(),
    }
}

impl ModelGraph {
    pub fn graph(&self) -> &ColoredGraph {
        &self.graph
    }

    pub fn n_vars(&self) -> usize {
        self.n_vars
    }

    pub fn n_literals(&self) -> usize {
        2 * self.n_vars
    }

    pub fn n_clauses(&self) -> usize {
        self.clauses.len()
    }

    pub fn lit_vertex(&self, lit: i32) -> u32 {
        lit_index(lit)
    }

    pub fn clause_vertex(&self, j: usize) -> u32 {
        (self.n_literals() + j) as u32
    }

    pub fn is_literal_vertex(&self, v: u32) -> bool {
        (v as usize) < self.n_literals()
    }

    /// Clause indices containing the literal with index `lit`.
    pub fn occurrences(&self, lit: Point) -> &[u32] {
        &self.occurrences[lit as usize]
    }

    /// Extends a literal symmetry to the clause vertices.
    pub fn lift_literal_perm(&self, p: &Permutation) -> Result<Permutation, ModelError> {
        let n_lits = self.n_literals();
        if p.degree() != n_lits {
            return Err(ModelError::DegreeMismatch {
                got: p.degree(),
                expected: n_lits,
            });
        }
        for &(l, img) in p.pairs() {
            if p.apply(negate_index(l)) != negate_index(img) {
                return Err(ModelError::NotNegationConsistent { lit: lit_of_index(l) });
            }
        }
        let mut pairs: Vec<(Point, Point)> = p.pairs().to_vec();
        let mut visited = std::collections::HashSet::new();
        for l in p.support() {
            for &j in &self.occurrences[l as usize] {
                if !visited.insert(j) {
                    continue;
                }
                let mut image: Vec<Point> = self.clauses[j as usize].iter().map(|&x| p.apply(x)).collect();
                image.sort_unstable();
                let target = *self
                    .clause_by_lits
                    .get(&image)
                    .ok_or(ModelError::NotASymmetry { clause: j as usize + 1 })?;
                pairs.push(((n_lits as u32) + j, (n_lits as u32) + target));
            }
        }
        Ok(Permutation::from_pairs(self.graph.num_vertices(), pairs)
            .expect("clause images of a literal bijection are a bijection"))
    }

    /// Restricts a graph permutation to the literal vertices.
    pub fn project_vertex_perm(&self, p: &Permutation) -> Result<Permutation, ModelError> {
        if p.degree() != self.graph.num_vertices() {
            return Err(ModelError::DegreeMismatch {
                got: p.degree(),
                expected: self.graph.num_vertices(),
            });
        }
        let n_lits = self.n_literals() as u32;
        for &(x, y) in p.pairs() {
            if (x < n_lits) != (y < n_lits) {
                return Err(ModelError::BipartitionViolated { vertex: x });
            }
        }
        Ok(
            Permutation::from_pairs(n_lits as usize, p.pairs().iter().copied().filter(|&(x, _)| x < n_lits))
                .expect("literal part of a bipartition-preserving bijection"),
        )
    }

    /// Lifts every generator; fails on the first non-symmetry.
    pub fn lift_generators(&self, s: &GeneratingSet) -> Result<GeneratingSet, ModelError> {
        let gens = s
            .iter()
            .map(|g| self.lift_literal_perm(g))
            .collect::<Result<Vec<_>, _>>()?;
        Ok(GeneratingSet::new(self.graph.num_vertices(), gens).expect("lifted degrees agree"))
    }

    pub fn project_generators(&self, s: &GeneratingSet) -> Result<GeneratingSet, ModelError> {
        let gens = s
            .iter()
            .map(|g| self.project_vertex_perm(g))
            .collect::<Result<Vec<_>, _>>()?;
        Ok(GeneratingSet::new(self.n_literals(), gens).expect("projected degrees agree"))
    }
}
