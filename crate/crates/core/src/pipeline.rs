//! End-to-end analysis of a formula with a symmetry generating set.

use std::fmt::Write as _;
use std::time::Instant;

use serde::Serialize;
use thiserror::Error;

use crate::cnf::{
    format_literal_cycles, lit_of_index, model_graph, parse_literal_generators, CnfFormula, DimacsError, ModelError,
    ModelGraph,
};
use crate::decomposition::{
    check_literal_partition, finest_decomposition, heuristic_literal_partition, orbit_graph, DecompositionError,
    LiteralPartitionError, PartitionVerdict,
};
use crate::graph::is_automorphism;
use crate::oracle::{
    brute_equivalent_orbits, brute_finest_decomposition, formula_symmetries, partition_is_product, ElementSet,
    OracleBounds, OracleError,
};
use crate::orbit_equivalence::{
    bijection_commutes, canonical_cycles, equivalent_orbits, orbit_bijection, row_interchangeability_groups,
    EquivalenceError, RowMatrix,
};
use crate::perm::{orbits, GeneratingSet, GeneratorFileError, OrbitPartition, Permutation, Point};
use crate::symmetric_action::{
    harvest_unique_cycles, new_source, symmetric_action_orbits, witness_is_valid, ActionError, ActionReport,
    Certificate, OrbitAction, Verdict, DEFAULT_GIANT_C,
};

pub const SCHEMA_VERSION: u32 = 1;

#[derive(Debug, Error)]
pub enum PipelineError {
    #[error("{0}")]
    Io(String),
    #[error("parse error: {0}")]
    Parse(String),
    #[error("contract violation: {0}")]
    Contract(String),
    #[error("oracle bound: {0}")]
    OracleBound(#[from] OracleError),
    #[error("{0}")]
    Other(String),
}

impl PipelineError {
    /// Process exit code: 1 for I/O and other failures, 2 for malformed input,
    /// 3 for contract violations, 4 for exceeded oracle bounds.
    pub fn exit_code(&self) -> i32 {
        match self {
            PipelineError::Io(_) | PipelineError::Other(_) => 1,
            PipelineError::Parse(_) => 2,
            PipelineError::Contract(_) => 3,
            PipelineError::OracleBound(_) => 4,
        }
    }
}

impl From<DimacsError> for PipelineError {
    fn from(e: DimacsError) -> Self {
        match e {
            DimacsError::Io(e) => PipelineError::Io(e.to_string()),
            other => PipelineError::Parse(other.to_string()),
        }
    }
}

impl From<GeneratorFileError> for PipelineError {
    fn from(e: GeneratorFileError) -> Self {
        PipelineError::Parse(format!("generator file: {e}"))
    }
}

impl From<ModelError> for PipelineError {
    fn from(e: ModelError) -> Self {
        PipelineError::Contract(e.to_string())
    }
}

impl From<DecompositionError> for PipelineError {
    fn from(e: DecompositionError) -> Self {
        PipelineError::Contract(e.to_string())
    }
}

impl From<EquivalenceError> for PipelineError {
    fn from(e: EquivalenceError) -> Self {
        PipelineError::Contract(e.to_string())
    }
}

impl From<ActionError> for PipelineError {
    fn from(e: ActionError) -> Self {
        PipelineError::Contract(e.to_string())
    }
}

impl From<LiteralPartitionError> for PipelineError {
    fn from(e: LiteralPartitionError) -> Self {
        PipelineError::Parse(format!("partition: {e}"))
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Stages {
    pub decomposition: bool,
    pub action: bool,
    pub equivalence: bool,
    pub rows: bool,
}

impl Stages {
    pub const ALL: Stages = Stages {
        decomposition: true,
        action: true,
        equivalence: true,
        rows: true,
    };
    pub const ORBITS: Stages = Stages {
        decomposition: false,
        action: false,
        equivalence: false,
        rows: false,
    };
    pub const DECOMPOSE: Stages = Stages {
        decomposition: true,
        ..Self::ORBITS
    };
    pub const ACTION: Stages = Stages {
        action: true,
        ..Self::ORBITS
    };
    pub const EQUIV: Stages = Stages {
        action: true,
        equivalence: true,
        ..Self::ORBITS
    };
    pub const ROWS: Stages = Stages {
        action: true,
        equivalence: true,
        rows: true,
        ..Self::ORBITS
    };
}

#[derive(Debug, Clone)]
pub struct AnalysisConfig {
    pub seed: u64,
    pub giant_c: f64,
    pub oracle: bool,
    /// Generator cycles use 1-based model-graph vertex labels instead of signed literals.
    pub graph_domain: bool,
    pub bounds: OracleBounds,
    pub timings: bool,
    pub stages: Stages,
}

impl Default for AnalysisConfig {
    fn default() -> Self {
        AnalysisConfig {
            seed: 0,
            giant_c: DEFAULT_GIANT_C,
            oracle: false,
            graph_domain: false,
            bounds: OracleBounds {
                max_vertices: 64,
                ..OracleBounds::default()
            },
            timings: false,
            stages: Stages::ALL,
        }
    }
}

impl AnalysisConfig {
    pub fn validate(&self) -> Result<(), PipelineError> {
        if self.giant_c.is_nan() || self.giant_c <= 2.0 * std::f64::consts::LN_2 {
            return Err(PipelineError::Parse(format!(
                "--giant-c {} must exceed 2 ln 2",
                self.giant_c
            )));
        }
        Ok(())
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct FormulaSummary {
    pub variables: usize,
    pub clauses: usize,
    pub literal_occurrences: usize,
}

#[derive(Debug, Clone, Serialize)]
pub struct GraphSummary {
    pub vertices: usize,
    pub edges: usize,
}

#[derive(Debug, Clone, Serialize)]
pub struct GeneratorSummary {
    /// `file` or `oracle`.
    pub source: &'static str,
    pub count: usize,
    pub encoding_size: usize,
    pub literal_generators: Vec<String>,
}

#[derive(Debug, Clone, Serialize)]
pub struct OrbitEntry {
    pub id: u32,
    pub points: Vec<String>,
}

#[derive(Debug, Clone, Serialize)]
pub struct OrbitsSection {
    /// Orbits on model-graph vertices; literals are signed, clauses are `c<j>`.
    pub graph: Vec<OrbitEntry>,
    /// Orbits on literals; ids are used by the action and equivalence sections.
    pub literal: Vec<OrbitEntry>,
}

#[derive(Debug, Clone, Serialize)]
pub struct FactorEntry {
    pub points: Vec<String>,
    pub orbits: Vec<u32>,
    pub generators: Vec<String>,
}

#[derive(Debug, Clone, Serialize)]
pub struct DecompositionSection {
    pub orbit_graph_edges: Vec<[u32; 2]>,
    pub factors: Vec<FactorEntry>,
    /// Split generators that are not automorphisms, as `[factor, generator]`.
    pub contract_violations: Vec<[usize; 2]>,
    /// Greedy literal partition accepted by the product test; not necessarily finest.
    pub literal_parts: Vec<Vec<i32>>,
}

#[derive(Debug, Clone, Serialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum CertificateEntry {
    Trivial,
    ExactClosure { order: u64 },
    PrimeCycle { prime: usize, witness: String },
}

#[derive(Debug, Clone, Serialize)]
pub struct ActionEntry {
    pub orbit: u32,
    pub size: usize,
    pub verdict: Verdict,
    pub certificate: Option<CertificateEntry>,
}

#[derive(Debug, Clone, Serialize)]
pub struct ActionSection {
    pub seed: u64,
    pub giant_c: f64,
    pub draws: usize,
    pub orbits: Vec<ActionEntry>,
}

#[derive(Debug, Clone, Serialize)]
pub struct EquivalenceClassEntry {
    pub orbits: Vec<u32>,
    /// Some member lacks a certified symmetric action, so the claim is unverified.
    pub heuristic: bool,
}

#[derive(Debug, Clone, Serialize)]
pub struct EquivalenceSection {
    pub classes: Vec<EquivalenceClassEntry>,
    pub undetermined: Vec<u32>,
}

#[derive(Debug, Clone, Serialize)]
pub struct OracleSection {
    pub automorphism_group_order: usize,
    pub generators_generate: bool,
    pub orbits_match: bool,
    pub decomposition_match: Option<bool>,
    pub equivalence_match: Option<bool>,
    pub bijections_commute: Option<bool>,
    pub certificates_valid: Option<bool>,
    pub literal_partition_match: Option<bool>,
}

#[derive(Debug, Clone, Serialize)]
pub struct Timings {
    pub parse_ms: f64,
    pub orbits_ms: f64,
    pub decomposition_ms: f64,
    pub action_ms: f64,
    pub equivalence_ms: f64,
    pub rows_ms: f64,
    pub oracle_ms: f64,
}

#[derive(Debug, Clone, Serialize)]
pub struct AnalysisReport {
    pub schema_version: u32,
    pub formula: FormulaSummary,
    pub graph: GraphSummary,
    pub generators: GeneratorSummary,
    pub orbits: OrbitsSection,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub decomposition: Option<DecompositionSection>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub action: Option<ActionSection>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub equivalence: Option<EquivalenceSection>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub row_matrices: Option<Vec<RowMatrix>>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub oracle: Option<OracleSection>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub timings: Option<Timings>,
}

/// Model graph vertex name: signed literal or `c<j>` for clause `j` (1-based).
pub fn vertex_name(m: &ModelGraph, v: u32) -> String {
    if m.is_literal_vertex(v) {
        lit_of_index(v).to_string()
    } else {
        format!("c{}", v as usize - m.n_literals() + 1)
    }
}

fn format_named_cycles(p: &Permutation, name: impl Fn(Point) -> String) -> String {
    let mut out = String::new();
    for c in p.cycles() {
        out.push('(');
        out.push_str(&c.iter().map(|&x| name(x)).collect::<Vec<_>>().join(","));
        out.push(')');
    }
    out
}

/// The formula, its model graph and the generators on both domains.
pub struct Instance {
    pub formula: CnfFormula,
    pub model: ModelGraph,
    pub graph_gens: GeneratingSet,
    pub literal_gens: GeneratingSet,
    pub from_oracle: bool,
}

/// Reads generators (signed literal cycles, or 1-based vertex cycles in graph
/// domain); without a generator text, falls back to oracle enumeration.
pub fn prepare(
    formula: CnfFormula,
    generators: Option<&str>,
    config: &AnalysisConfig,
) -> Result<Instance, PipelineError> {
    let model = model_graph(&formula);
    let (graph_gens, literal_gens, from_oracle) = match generators {
        Some(text) if config.graph_domain => {
            let g = GeneratingSet::parse(text, model.graph().num_vertices())?;
            for (i, p) in g.iter().enumerate() {
                if !is_automorphism(model.graph(), p).expect("degrees agree") {
                    return Err(PipelineError::Contract(format!(
                        "generator {} is not an automorphism",
                        i + 1
                    )));
                }
            }
            let lits = model.project_generators(&g)?;
            (g, lits, false)
        }
        Some(text) => {
            let lits = parse_literal_generators(text, formula.n_vars())?;
            let g = model.lift_generators(&lits)?;
            (g, lits, false)
        }
        None => {
            let group = formula_symmetries(&model, &config.bounds)?;
            let lits = group.generators();
            let g = model.lift_generators(&lits)?;
            (g, lits, true)
        }
    };
    Ok(Instance {
        formula,
        model,
        graph_gens,
        literal_gens,
        from_oracle,
    })
}

/// Runs the configured stages.
pub fn run_pipeline(
    formula: CnfFormula,
    generators: Option<&str>,
    config: &AnalysisConfig,
) -> Result<AnalysisReport, PipelineError> {
    config.validate()?;
    let clock = Instant::now();
    let inst = prepare(formula, generators, config)?;
    let mut timings = Timings {
        parse_ms: ms(clock),
        orbits_ms: 0.0,
        decomposition_ms: 0.0,
        action_ms: 0.0,
        equivalence_ms: 0.0,
        rows_ms: 0.0,
        oracle_ms: 0.0,
    };
    let m = &inst.model;
    let name = |v: u32| vertex_name(m, v);

    let clock = Instant::now();
    let graph_orbits = orbits(&inst.graph_gens);
    let lit_orbits = orbits(&inst.literal_gens);
    timings.orbits_ms = ms(clock);
    let orbit_entries = |o: &OrbitPartition| -> Vec<OrbitEntry> {
        (0..o.num_classes() as u32)
            .map(|id| OrbitEntry {
                id,
                points: o.class(id).iter().map(|&x| name(x)).collect(),
            })
            .collect()
    };

    let mut report = AnalysisReport {
        schema_version: SCHEMA_VERSION,
        formula: FormulaSummary {
            variables: inst.formula.n_vars(),
            clauses: inst.formula.clauses().len(),
            literal_occurrences: inst.formula.size(),
        },
        graph: GraphSummary {
            vertices: m.graph().num_vertices(),
            edges: m.graph().num_edges(),
        },
        generators: GeneratorSummary {
            source: if inst.from_oracle { "oracle" } else { "file" },
            count: inst.literal_gens.len(),
            encoding_size: inst.graph_gens.encoding_size(),
            literal_generators: inst.literal_gens.iter().map(format_literal_cycles).collect(),
        },
        orbits: OrbitsSection {
            graph: orbit_entries(&graph_orbits),
            literal: orbit_entries(&lit_orbits),
        },
        decomposition: None,
        action: None,
        equivalence: None,
        row_matrices: None,
        oracle: None,
        timings: None,
    };

    let mut decomposition = None;
    let mut literal_parts = None;
    let st = config.stages;
    if st.decomposition || st.action || st.equivalence || st.rows {
        let clock = Instant::now();
        let d = finest_decomposition(m.graph(), &inst.graph_gens, &graph_orbits)?;
        if st.decomposition {
            let og = orbit_graph(m.graph(), &graph_orbits)?;
            let parts = heuristic_literal_partition(&inst.formula, m, &graph_orbits, &d);
            report.decomposition = Some(DecompositionSection {
                orbit_graph_edges: og.edges().iter().map(|&(a, b)| [a, b]).collect(),
                factors: d
                    .factors
                    .iter()
                    .map(|f| FactorEntry {
                        points: f.points.iter().map(|&x| name(x)).collect(),
                        orbits: f.orbits.clone(),
                        generators: f.generators.iter().map(|g| format_named_cycles(g, name)).collect(),
                    })
                    .collect(),
                contract_violations: d.contract_violations.iter().map(|&(f, k)| [f, k]).collect(),
                literal_parts: parts
                    .iter()
                    .map(|p| p.iter().map(|&l| lit_of_index(l)).collect())
                    .collect(),
            });
            literal_parts = Some(parts);
        }
        timings.decomposition_ms = ms(clock);
        decomposition = Some(d);
    }

    let mut action = None;
    let mut unique = None;
    if let Some(d) = &decomposition {
        if st.action || st.equivalence || st.rows {
            let fa = factor_stages(m, d, &lit_orbits, config, st.equivalence || st.rows)?;
            timings.action_ms = fa.action_ms;
            timings.equivalence_ms = fa.harvest_ms;
            let a = fa.action;
            report.action = Some(ActionSection {
                seed: config.seed,
                giant_c: config.giant_c,
                draws: a.draws,
                orbits: a
                    .orbits
                    .iter()
                    .map(|o| ActionEntry {
                        orbit: o.orbit,
                        size: o.size,
                        verdict: o.verdict,
                        certificate: o.certificate.as_ref().map(|c| match c {
                            Certificate::Trivial => CertificateEntry::Trivial,
                            Certificate::ExactClosure { order } => CertificateEntry::ExactClosure { order: *order },
                            Certificate::PrimeCycle { witness, prime } => CertificateEntry::PrimeCycle {
                                prime: *prime,
                                witness: format_literal_cycles(witness),
                            },
                        }),
                    })
                    .collect(),
            });
            action = Some(a);
            unique = fa.unique;
        }
    }

    let mut equivalence = None;
    if let Some(unique) = &unique {
        let clock = Instant::now();
        let canonical = canonical_cycles(&inst.literal_gens, &lit_orbits, unique)?;
        let eq = equivalent_orbits(&inst.literal_gens, &lit_orbits, &canonical)?;
        timings.equivalence_ms += ms(clock);
        let symmetric = |o: u32| action.as_ref().is_some_and(|a| a.is_natural_symmetric(o));
        report.equivalence = Some(EquivalenceSection {
            classes: eq
                .classes
                .iter()
                .map(|c| EquivalenceClassEntry {
                    orbits: c.clone(),
                    heuristic: !c.iter().all(|&o| symmetric(o)),
                })
                .collect(),
            undetermined: eq.undetermined.clone(),
        });
        equivalence = Some(eq);
    }

    if config.stages.rows {
        let clock = Instant::now();
        let (Some(a), Some(eq)) = (&action, &equivalence) else {
            unreachable!("row stage requires action and equivalence");
        };
        report.row_matrices = Some(row_interchangeability_groups(m, &lit_orbits, a, eq));
        timings.rows_ms = ms(clock);
    }

    if config.oracle {
        let clock = Instant::now();
        let group = crate::oracle::enumerate_automorphisms(m.graph(), &config.bounds)?;
        let generated = ElementSet::closure(&inst.graph_gens, config.bounds.max_elements)?;
        let mut section = OracleSection {
            automorphism_group_order: group.len(),
            generators_generate: generated.len() == group.len(),
            orbits_match: group.orbits() == graph_orbits,
            decomposition_match: None,
            equivalence_match: None,
            bijections_commute: None,
            certificates_valid: None,
            literal_partition_match: None,
        };
        if let Some(d) = &decomposition {
            let ours: Vec<Vec<u32>> = d.factors.iter().map(|f| f.orbits.clone()).collect();
            section.decomposition_match = brute_finest_decomposition(&inst.graph_gens, &graph_orbits, &config.bounds)
                .ok()
                .map(|b| b == ours);
        }
        if let Some(parts) = &literal_parts {
            let lit_group = formula_symmetries(m, &config.bounds)?;
            let verdict = check_literal_partition(&inst.formula, m, &graph_orbits, parts)?;
            section.literal_partition_match = Some(verdict.accepted == partition_is_product(&lit_group, parts));
        }
        if let Some(a) = &action {
            section.certificates_valid = Some(a.orbits.iter().all(|o| match &o.certificate {
                Some(c) => witness_is_valid(c, lit_orbits.class(o.orbit)),
                None => o.verdict != Verdict::NaturalSymmetric,
            }));
        }
        if let Some(eq) = &equivalence {
            let mut commute = true;
            for class in &eq.classes {
                for &o in &class[1..] {
                    let b = orbit_bijection(eq, class[0], o)?;
                    commute &= bijection_commutes(&inst.literal_gens, &b);
                }
            }
            section.bijections_commute = Some(commute);
            if let Ok(brute) = brute_equivalent_orbits(&inst.literal_gens, &lit_orbits, &config.bounds) {
                let k = lit_orbits.num_classes() as u32;
                let brute_class = |o: u32| brute.classes.iter().position(|c| c.contains(&o));
                let determined = |o: u32| !eq.undetermined.contains(&o);
                let agree = (0..k).all(|a| {
                    (0..k).all(|b| {
                        !determined(a)
                            || !determined(b)
                            || eq.are_equivalent(a, b) == (brute_class(a) == brute_class(b))
                    })
                });
                section.equivalence_match = Some(agree);
            }
        }
        timings.oracle_ms = ms(clock);
        report.oracle = Some(section);
    }

    if config.timings {
        report.timings = Some(timings);
    }
    Ok(report)
}

/// Runs the literal-partition test for the given parts (signed literals).
pub fn run_check_partition(
    formula: CnfFormula,
    generators: Option<&str>,
    parts: &[Vec<i32>],
    config: &AnalysisConfig,
) -> Result<PartitionVerdict, PipelineError> {
    let inst = prepare(formula, generators, config)?;
    let n_vars = inst.formula.n_vars() as i32;
    let mut index_parts = Vec::with_capacity(parts.len());
    for part in parts {
        let mut p = Vec::with_capacity(part.len());
        for &lit in part {
            if lit == 0 || lit.abs() > n_vars {
                return Err(PipelineError::Parse(format!("partition: literal {lit} out of range")));
            }
            p.push(crate::cnf::lit_index(lit));
        }
        index_parts.push(p);
    }
    let graph_orbits = orbits(&inst.graph_gens);
    Ok(check_literal_partition(
        &inst.formula,
        &inst.model,
        &graph_orbits,
        &index_parts,
    )?)
}

/// Parses a partition file: one part per line, signed literals separated by
/// whitespace or commas; blank lines and `#` comments are skipped.
pub fn parse_partition(text: &str) -> Result<Vec<Vec<i32>>, PipelineError> {
    let mut parts = Vec::new();
    for (k, line) in text.lines().enumerate() {
        let line = line.trim();
        if line.is_empty() || line.starts_with('#') {
            continue;
        }
        let part = line
            .split(|c: char| c.is_whitespace() || c == ',')
            .filter(|t| !t.is_empty())
            .map(|t| {
                t.parse::<i32>()
                    .map_err(|_| PipelineError::Parse(format!("partition line {}: bad literal {t:?}", k + 1)))
            })
            .collect::<Result<Vec<_>, _>>()?;
        parts.push(part);
    }
    Ok(parts)
}

struct FactorStages {
    action: ActionReport,
    unique: Option<Vec<Option<Vec<Point>>>>,
    action_ms: f64,
    harvest_ms: f64,
}

/// Seed of factor `k`, so factors draw independent streams.
fn factor_seed(seed: u64, k: usize) -> u64 {
    let mut z = seed ^ (k as u64).wrapping_add(1).wrapping_mul(0x9E37_79B9_7F4A_7C15);
    z = (z ^ (z >> 30)).wrapping_mul(0xBF58_476D_1CE4_E5B9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94D0_49BB_1331_11EB);
    z ^ (z >> 31)
}

/// Symmetric action and unique cycles per decomposition factor, each factor
/// relabelled to its own literal points with its own random source.
fn factor_stages(
    m: &ModelGraph,
    d: &crate::decomposition::Decomposition,
    lit_orbits: &OrbitPartition,
    config: &AnalysisConfig,
    harvest: bool,
) -> Result<FactorStages, PipelineError> {
    let n_lits = m.n_literals();
    let k = lit_orbits.num_classes();
    let mut orbits_out: Vec<OrbitAction> = (0..k as u32)
        .map(|o| {
            let size = lit_orbits.class_size(o);
            let (verdict, certificate) = if size == 1 {
                (Verdict::NaturalSymmetric, Some(Certificate::Trivial))
            } else {
                (Verdict::Undetermined, None)
            };
            OrbitAction {
                orbit: o,
                size,
                verdict,
                certificate,
            }
        })
        .collect();
    let mut unique: Vec<Option<Vec<Point>>> = vec![None; k];
    let mut draws = 0;
    let (mut action_ms, mut harvest_ms) = (0.0, 0.0);
    for (fi, f) in d.factors.iter().enumerate() {
        if f.generators.is_empty() {
            continue;
        }
        let clock = Instant::now();
        let points: Vec<Point> = f.points.iter().copied().filter(|&v| (v as usize) < n_lits).collect();
        let mut local = Vec::with_capacity(f.generators.len());
        for g in &f.generators {
            let r = g
                .restrict(&points)
                .map_err(|e| PipelineError::Contract(e.to_string()))?;
            if !r.is_identity() {
                local.push(r);
            }
        }
        if local.is_empty() {
            continue;
        }
        let local = GeneratingSet::new(points.len(), local).expect("restrictions share a degree");
        let local_orbits = orbits(&local);
        let global = |o: u32| lit_orbits.class_of(points[local_orbits.class(o)[0] as usize]);
        let to_global = |p: &Permutation| {
            let pairs = p.pairs().iter().map(|&(x, y)| (points[x as usize], points[y as usize]));
            Permutation::from_pairs(n_lits, pairs).expect("relabelled restriction")
        };
        let mut source = new_source(&local, factor_seed(config.seed, fi));
        let a = symmetric_action_orbits(&local, &local_orbits, config.giant_c, &mut source)?;
        draws += a.draws;
        for o in a.orbits {
            if o.size < 2 {
                continue;
            }
            let g = global(o.orbit) as usize;
            orbits_out[g].verdict = o.verdict;
            orbits_out[g].certificate = o.certificate.map(|c| match c {
                Certificate::PrimeCycle { witness, prime } => Certificate::PrimeCycle {
                    witness: to_global(&witness),
                    prime,
                },
                other => other,
            });
        }
        action_ms += ms(clock);
        if harvest {
            let clock = Instant::now();
            let targets: Vec<u32> = (0..local_orbits.num_classes() as u32).collect();
            let found = harvest_unique_cycles(&local, &local_orbits, &targets, &mut source);
            for (o, c) in found.into_iter().enumerate() {
                if let Some(c) = c {
                    unique[global(o as u32) as usize] = Some(c.iter().map(|&x| points[x as usize]).collect());
                }
            }
            harvest_ms += ms(clock);
        }
    }
    Ok(FactorStages {
        action: ActionReport {
            orbits: orbits_out,
            draws,
            giant_c: config.giant_c,
        },
        unique: harvest.then_some(unique),
        action_ms,
        harvest_ms,
    })
}

fn ms(since: Instant) -> f64 {
    since.elapsed().as_secs_f64() * 1000.0
}

fn join<T: ToString>(xs: &[T]) -> String {
    xs.iter().map(ToString::to_string).collect::<Vec<_>>().join(" ")
}

fn verdict_name(v: Verdict) -> &'static str {
    match v {
        Verdict::NaturalSymmetric => "natural_symmetric",
        Verdict::AlternatingAtMost => "alternating_at_most",
        Verdict::NotSymmetric => "not_symmetric",
        Verdict::Undetermined => "undetermined",
    }
}

/// Report sections selectable by the stage subcommands.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Section {
    Summary,
    Orbits,
    Decomposition,
    Action,
    Equivalence,
    Rows,
    Oracle,
    Timings,
}

impl Section {
    pub const ALL: [Section; 8] = [
        Section::Summary,
        Section::Orbits,
        Section::Decomposition,
        Section::Action,
        Section::Equivalence,
        Section::Rows,
        Section::Oracle,
        Section::Timings,
    ];

    /// Top-level JSON keys carried by the section.
    pub fn keys(self) -> &'static [&'static str] {
        match self {
            Section::Summary => &["formula", "graph", "generators"],
            Section::Orbits => &["orbits"],
            Section::Decomposition => &["decomposition"],
            Section::Action => &["action"],
            Section::Equivalence => &["equivalence"],
            Section::Rows => &["row_matrices"],
            Section::Oracle => &["oracle"],
            Section::Timings => &["timings"],
        }
    }
}

/// Human-readable rendering carrying the same fields as the JSON report.
pub fn render_text(r: &AnalysisReport) -> String {
    render_sections(r, &Section::ALL)
}

/// Text rendering restricted to `sections`; absent sections print nothing.
pub fn render_sections(r: &AnalysisReport, sections: &[Section]) -> String {
    let mut out = String::new();
    let _ = writeln!(out, "schema_version {}", r.schema_version);
    for &section in sections {
        render_section(&mut out, r, section);
    }
    out
}

fn render_section(out: &mut String, r: &AnalysisReport, section: Section) {
    match section {
        Section::Summary => {
            let _ = writeln!(
                out,
                "formula: {} variables, {} clauses, {} literal occurrences",
                r.formula.variables, r.formula.clauses, r.formula.literal_occurrences
            );
            let _ = writeln!(
                out,
                "model graph: {} vertices, {} edges",
                r.graph.vertices, r.graph.edges
            );
            let _ = writeln!(
                out,
                "generators ({}): {} generators, encoding size {}",
                r.generators.source, r.generators.count, r.generators.encoding_size
            );
            for g in &r.generators.literal_generators {
                let _ = writeln!(out, "  {g}");
            }
        }
        Section::Orbits => {
            let _ = writeln!(out, "graph orbits: {}", r.orbits.graph.len());
            for o in &r.orbits.graph {
                let _ = writeln!(out, "  [{}] {}", o.id, o.points.join(" "));
            }
            let _ = writeln!(out, "literal orbits: {}", r.orbits.literal.len());
            for o in &r.orbits.literal {
                let _ = writeln!(out, "  [{}] {}", o.id, o.points.join(" "));
            }
        }
        Section::Decomposition => {
            if let Some(d) = &r.decomposition {
                let edges: Vec<String> = d.orbit_graph_edges.iter().map(|[a, b]| format!("{a}-{b}")).collect();
                let _ = writeln!(out, "orbit graph edges: {}", edges.join(" "));
                let _ = writeln!(out, "factors: {}", d.factors.len());
                for (k, f) in d.factors.iter().enumerate() {
                    let _ = writeln!(
                        out,
                        "  factor {k}: orbits {} points {}",
                        join(&f.orbits),
                        f.points.join(" ")
                    );
                    for g in &f.generators {
                        let _ = writeln!(out, "    {g}");
                    }
                }
                let v: Vec<String> = d.contract_violations.iter().map(|[f, k]| format!("{f}:{k}")).collect();
                let _ = writeln!(
                    out,
                    "contract violations: {}",
                    if v.is_empty() { "none".into() } else { v.join(" ") }
                );
                let parts: Vec<String> = d.literal_parts.iter().map(|p| format!("{{{}}}", join(p))).collect();
                let _ = writeln!(out, "literal parts (heuristic): {}", parts.join(" "));
            }
        }
        Section::Action => {
            if let Some(a) = &r.action {
                let _ = writeln!(
                    out,
                    "symmetric action: seed {} giant_c {} draws {}",
                    a.seed, a.giant_c, a.draws
                );
                for o in &a.orbits {
                    let cert = match &o.certificate {
                        None => String::new(),
                        Some(CertificateEntry::Trivial) => " trivial".into(),
                        Some(CertificateEntry::ExactClosure { order }) => format!(" exact_closure order {order}"),
                        Some(CertificateEntry::PrimeCycle { prime, witness }) => {
                            format!(" prime_cycle {prime} witness {witness}")
                        }
                    };
                    let _ = writeln!(
                        out,
                        "  orbit {} size {}: {}{}",
                        o.orbit,
                        o.size,
                        verdict_name(o.verdict),
                        cert
                    );
                }
            }
        }
        Section::Equivalence => {
            if let Some(e) = &r.equivalence {
                let _ = writeln!(out, "equivalence classes: {}", e.classes.len());
                for c in &e.classes {
                    let tag = if c.heuristic { " (heuristic)" } else { "" };
                    let _ = writeln!(out, "  {{{}}}{}", join(&c.orbits), tag);
                }
                let _ = writeln!(
                    out,
                    "undetermined: {}",
                    if e.undetermined.is_empty() {
                        "none".into()
                    } else {
                        join(&e.undetermined)
                    }
                );
            }
        }
        Section::Rows => {
            if let Some(rows) = &r.row_matrices {
                let _ = writeln!(out, "row matrices: {}", rows.len());
                for mtx in rows {
                    let _ = writeln!(out, "  orbits {} pure_lift {}", join(&mtx.orbits), mtx.pure_lift);
                    for row in &mtx.rows {
                        let _ = writeln!(out, "    {}", join(row));
                    }
                }
            }
        }
        Section::Oracle => {
            if let Some(o) = &r.oracle {
                let opt = |b: Option<bool>| b.map_or("skipped".to_string(), |b| b.to_string());
                let _ = writeln!(out, "oracle: automorphism group order {}", o.automorphism_group_order);
                let _ = writeln!(out, "  generators_generate {}", o.generators_generate);
                let _ = writeln!(out, "  orbits_match {}", o.orbits_match);
                let _ = writeln!(out, "  decomposition_match {}", opt(o.decomposition_match));
                let _ = writeln!(out, "  equivalence_match {}", opt(o.equivalence_match));
                let _ = writeln!(out, "  bijections_commute {}", opt(o.bijections_commute));
                let _ = writeln!(out, "  certificates_valid {}", opt(o.certificates_valid));
                let _ = writeln!(out, "  literal_partition_match {}", opt(o.literal_partition_match));
            }
        }
        Section::Timings => {
            if let Some(t) = &r.timings {
                let _ = writeln!(
                    out,
                    "timings (ms): parse {:.3} orbits {:.3} decomposition {:.3} action {:.3} equivalence {:.3} rows {:.3} oracle {:.3}",
                    t.parse_ms, t.orbits_ms, t.decomposition_ms, t.action_ms, t.equivalence_ms, t.rows_ms, t.oracle_ms
                );
            }
        }
    }
}
