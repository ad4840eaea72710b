//! Randomized detection of orbits on which the group acts as the full
//! symmetric group, and harvesting of unique cycles.

use std::collections::{HashSet, VecDeque};

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;
use thiserror::Error;

use crate::perm::{support_of_set, GeneratingSet, OrbitPartition, Permutation, Point};

type Pairs = Vec<(Point, Point)>;

/// Default constant in the number of random draws.
pub const DEFAULT_GIANT_C: f64 = 20.0;
/// Orbits up to this size are decided exactly by closure.
pub const EXACT_ORBIT_LIMIT: usize = 7;
/// Random elements inspected when no generator yields a unique cycle.
pub const UNIQUE_CYCLE_DRAWS: usize = 64;

const BURN_IN: usize = 50;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum ActionError {
    #[error("giant constant {0} must exceed 2 ln 2")]
    InvalidConstant(f64),
    #[error("orbit partition has degree {got}, generators have degree {expected}")]
    DegreeMismatch { got: usize, expected: usize },
}

/// Product replacement with an accumulator over the moved points of a generating set.
#[derive(Debug, Clone)]
pub struct RandomElementSource {
    degree: usize,
    support: Vec<Point>,
    local: Vec<u32>,
    slots: Vec<Vec<u32>>,
    acc: Vec<u32>,
    scratch: Vec<u32>,
    rng: ChaCha8Rng,
    seed: u64,
}

impl RandomElementSource {
    pub fn new(s: &GeneratingSet, seed: u64) -> Self {
        let support = support_of_set(s);
        let mut local = vec![u32::MAX; s.degree()];
        for (k, &x) in support.iter().enumerate() {
            local[x as usize] = k as u32;
        }
        let m = support.len();
        let identity: Vec<u32> = (0..m as u32).collect();
        let dense: Vec<Vec<u32>> = s
            .iter()
            .map(|g| {
                let mut img = identity.clone();
                for &(x, y) in g.pairs() {
                    img[local[x as usize] as usize] = local[y as usize];
                }
                img
            })
            .collect();
        let r = 10.max(2 * s.len());
        let slots = if dense.is_empty() {
            vec![identity.clone(); r]
        } else {
            (0..r).map(|k| dense[k % dense.len()].clone()).collect()
        };
        let mut source = RandomElementSource {
            degree: s.degree(),
            support,
            local,
            slots,
            acc: identity,
            scratch: vec![0; m],
            rng: ChaCha8Rng::seed_from_u64(seed),
            seed,
        };
        for _ in 0..BURN_IN {
            source.step();
        }
        source
    }

    pub fn seed(&self) -> u64 {
        self.seed
    }

    pub fn degree(&self) -> usize {
        self.degree
    }

    /// Moved points of the generators; dense images index into this list.
    pub fn support(&self) -> &[Point] {
        &self.support
    }

    /// Position of `x` in [`support`](Self::support), if moved.
    pub fn local_index(&self, x: Point) -> Option<u32> {
        self.local.get(x as usize).copied().filter(|&k| k != u32::MAX)
    }

    fn step(&mut self) {
        let r = self.slots.len();
        let i = self.rng.random_range(0..r);
        let mut j = self.rng.random_range(0..r - 1);
        if j >= i {
            j += 1;
        }
        let invert = self.rng.random::<bool>();
        let before = self.rng.random::<bool>();
        let other = &self.slots[j];
        let scratch = &mut self.scratch;
        if invert {
            for (x, &y) in other.iter().enumerate() {
                scratch[y as usize] = x as u32;
            }
        } else {
            scratch.copy_from_slice(other);
        }
        let slot = &mut self.slots[i];
        if before {
            // other first, then slot
            for v in scratch.iter_mut() {
                *v = slot[*v as usize];
            }
            slot.copy_from_slice(scratch);
        } else {
            for v in slot.iter_mut() {
                *v = scratch[*v as usize];
            }
        }
        let slot = &self.slots[i];
        for v in self.acc.iter_mut() {
            *v = slot[*v as usize];
        }
    }

    /// Next element as dense images over [`support`](Self::support).
    pub fn next_dense(&mut self) -> &[u32] {
        self.step();
        &self.acc
    }

    /// Next element on the original domain.
    pub fn next_element(&mut self) -> Permutation {
        self.step();
        self.current()
    }

    fn current(&self) -> Permutation {
        let pairs = self
            .acc
            .iter()
            .enumerate()
            .map(|(k, &y)| (self.support[k], self.support[y as usize]));
        Permutation::from_pairs(self.degree, pairs).expect("accumulator is a permutation")
    }
}

pub fn new_source(s: &GeneratingSet, seed: u64) -> RandomElementSource {
    RandomElementSource::new(s, seed)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Verdict {
    NaturalSymmetric,
    /// Every generator is even on the orbit.
    AlternatingAtMost,
    /// Decided exactly: the induced group is neither symmetric nor inside the alternating group.
    NotSymmetric,
    Undetermined,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Certificate {
    /// Orbit of size one.
    Trivial,
    /// Order of the induced group, computed by closure.
    ExactClosure { order: u64 },
    /// Group element restricted to the orbit, carrying a cycle of prime length
    /// `prime` with `n/2 < prime < n-2`.
    PrimeCycle { witness: Permutation, prime: usize },
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct OrbitAction {
    pub orbit: u32,
    pub size: usize,
    pub verdict: Verdict,
    pub certificate: Option<Certificate>,
}

#[derive(Debug, Clone)]
pub struct ActionReport {
    pub orbits: Vec<OrbitAction>,
    /// Random elements drawn by the probabilistic phase.
    pub draws: usize,
    pub giant_c: f64,
}

impl ActionReport {
    pub fn verdict(&self, orbit: u32) -> Verdict {
        self.orbits[orbit as usize].verdict
    }

    pub fn is_natural_symmetric(&self, orbit: u32) -> bool {
        self.verdict(orbit) == Verdict::NaturalSymmetric
    }
}

pub fn is_prime(n: usize) -> bool {
    if n < 2 {
        return false;
    }
    let mut d = 2;
    while d * d <= n {
        if n.is_multiple_of(d) {
            return false;
        }
        d += 1;
    }
    true
}

/// Prime-cycle window for an orbit of size `n`.
pub fn in_giant_window(p: usize, n: usize) -> bool {
    is_prime(p) && 2 * p > n && p + 2 < n
}

/// Re-checks a prime-cycle certificate against its orbit.
pub fn witness_is_valid(cert: &Certificate, orbit: &[Point]) -> bool {
    match cert {
        Certificate::PrimeCycle { witness, prime } => {
            in_giant_window(*prime, orbit.len())
                && witness.support().all(|x| orbit.binary_search(&x).is_ok())
                && witness.cycle_lengths().contains(prime)
        }
        Certificate::Trivial => orbit.len() == 1,
        Certificate::ExactClosure { .. } => orbit.len() <= EXACT_ORBIT_LIMIT,
    }
}

/// Generator restrictions per orbit, as `(generator index, restriction)`.
pub fn restrictions_by_orbit(s: &GeneratingSet, orbits: &OrbitPartition) -> Vec<Vec<(usize, Permutation)>> {
    let mut out: Vec<Vec<(usize, Pairs)>> = vec![Vec::new(); orbits.num_classes()];
    for (i, g) in s.iter().enumerate() {
        for &(x, y) in g.pairs() {
            let bucket = &mut out[orbits.class_of(x) as usize];
            match bucket.last_mut() {
                Some((k, pairs)) if *k == i => pairs.push((x, y)),
                _ => bucket.push((i, vec![(x, y)])),
            }
        }
    }
    out.into_iter()
        .map(|bucket| {
            bucket
                .into_iter()
                .map(|(i, pairs)| {
                    (
                        i,
                        Permutation::from_pairs(s.degree(), pairs).expect("orbit restriction"),
                    )
                })
                .collect()
        })
        .collect()
}

fn factorial(n: usize) -> u64 {
    (1..=n as u64).product()
}

/// Order of the group generated by small dense permutations.
fn closure_order(n: usize, gens: &[Vec<u8>]) -> u64 {
    let identity: Vec<u8> = (0..n as u8).collect();
    let mut seen: HashSet<Vec<u8>> = HashSet::from([identity.clone()]);
    let mut queue = VecDeque::from([identity]);
    while let Some(e) = queue.pop_front() {
        for g in gens {
            let next: Vec<u8> = e.iter().map(|&x| g[x as usize]).collect();
            if seen.insert(next.clone()) {
                queue.push_back(next);
            }
        }
    }
    seen.len() as u64
}

fn exact_verdict(orbit: &[Point], gens: &[(usize, Permutation)]) -> (Verdict, Certificate) {
    let n = orbit.len();
    let local = |x: Point| orbit.binary_search(&x).expect("restriction stays in its orbit") as u8;
    let dense: Vec<Vec<u8>> = gens
        .iter()
        .map(|(_, g)| {
            let mut img: Vec<u8> = (0..n as u8).collect();
            for &(x, y) in g.pairs() {
                img[local(x) as usize] = local(y);
            }
            img
        })
        .collect();
    let order = closure_order(n, &dense);
    let verdict = if order == factorial(n) {
        Verdict::NaturalSymmetric
    } else if gens.iter().all(|(_, g)| g.parity() == crate::perm::Parity::Even) {
        Verdict::AlternatingAtMost
    } else {
        Verdict::NotSymmetric
    };
    (verdict, Certificate::ExactClosure { order })
}

/// Number of random draws for a domain of `n` points.
pub fn giant_draws(c: f64, n: usize) -> usize {
    if n < 2 {
        return 0;
    }
    let l = (n as f64).ln();
    (c * l * l).ceil() as usize
}

/// Decides for every orbit whether the group induces the full symmetric group on it.
///
/// Orbits of size at most [`EXACT_ORBIT_LIMIT`] are decided exactly. Larger
/// orbits on which every generator is even are filtered out; the rest are
/// certified by a random element whose longest cycle on the orbit has prime
/// length in the window `(n/2, n-2)`. Certificates are always correct; a
/// symmetric orbit may remain undetermined.
pub fn symmetric_action_orbits(
    s: &GeneratingSet,
    orbits: &OrbitPartition,
    c: f64,
    source: &mut RandomElementSource,
) -> Result<ActionReport, ActionError> {
    if c.is_nan() || c <= 2.0 * std::f64::consts::LN_2 {
        return Err(ActionError::InvalidConstant(c));
    }
    if orbits.degree() != s.degree() {
        return Err(ActionError::DegreeMismatch {
            got: orbits.degree(),
            expected: s.degree(),
        });
    }
    let restrictions = restrictions_by_orbit(s, orbits);
    let mut report: Vec<OrbitAction> = Vec::with_capacity(orbits.num_classes());
    let mut pending: Vec<u32> = Vec::new();
    for id in 0..orbits.num_classes() as u32 {
        let orbit = orbits.class(id);
        let gens = &restrictions[id as usize];
        let (verdict, certificate) = if orbit.len() == 1 {
            (Verdict::NaturalSymmetric, Some(Certificate::Trivial))
        } else if orbit.len() <= EXACT_ORBIT_LIMIT {
            let (v, cert) = exact_verdict(orbit, gens);
            (v, Some(cert))
        } else if gens.iter().all(|(_, g)| g.parity() == crate::perm::Parity::Even) {
            (Verdict::AlternatingAtMost, None)
        } else {
            pending.push(id);
            (Verdict::Undetermined, None)
        };
        report.push(OrbitAction {
            orbit: id,
            size: orbit.len(),
            verdict,
            certificate,
        });
    }

    let draws = if pending.is_empty() {
        0
    } else {
        giant_draws(c, source.support().len())
    };
    let mut drawn = 0;
    let mut mark = vec![false; source.support().len()];
    while drawn < draws && !pending.is_empty() {
        drawn += 1;
        let element = source.next_dense().to_vec();
        pending.retain(|&id| {
            let orbit = orbits.class(id);
            let (length, start) = longest_cycle(&element, orbit, source, &mut mark);
            if !in_giant_window(length, orbit.len()) {
                return true;
            }
            let mut cycle = Vec::with_capacity(length);
            let mut k = start;
            loop {
                cycle.push(source.support()[k as usize]);
                k = element[k as usize];
                if k == start {
                    break;
                }
            }
            let pairs = orbit.iter().map(|&x| {
                let y = element[source.local_index(x).unwrap() as usize];
                (x, source.support()[y as usize])
            });
            let witness = Permutation::from_pairs(s.degree(), pairs).expect("orbit restriction");
            report[id as usize].verdict = Verdict::NaturalSymmetric;
            report[id as usize].certificate = Some(Certificate::PrimeCycle { witness, prime: length });
            false
        });
    }
    Ok(ActionReport {
        orbits: report,
        draws: drawn,
        giant_c: c,
    })
}

/// Longest cycle of a dense element on an orbit: `(length, local start)`.
fn longest_cycle(element: &[u32], orbit: &[Point], source: &RandomElementSource, mark: &mut [bool]) -> (usize, u32) {
    let mut best = (0, 0);
    for &x in orbit {
        let start = source.local_index(x).expect("non-trivial orbits are moved");
        if mark[start as usize] {
            continue;
        }
        let mut len = 0;
        let mut k = start;
        while !mark[k as usize] {
            mark[k as usize] = true;
            len += 1;
            k = element[k as usize];
        }
        if len > best.0 {
            best = (len, start);
        }
    }
    for &x in orbit {
        mark[source.local_index(x).unwrap() as usize] = false;
    }
    best
}

/// Cycles of length at least two whose length occurs once, as `(length, cycle)`;
/// returns the shortest.
fn shortest_unique(cycles: Vec<Vec<Point>>) -> Option<(usize, Vec<Point>)> {
    let mut count = std::collections::BTreeMap::<usize, usize>::new();
    for c in &cycles {
        *count.entry(c.len()).or_default() += 1;
    }
    let (&len, _) = count.iter().find(|&(&len, &k)| len > 1 && k == 1)?;
    cycles.into_iter().find(|c| c.len() == len).map(|c| (len, c))
}

/// For each requested orbit, a cycle occurring as the only cycle of its
/// length in some group element restricted to the orbit.
///
/// Generators are tried first, taking the shortest such cycle over all
/// generators (ties to the lower generator index); then up to
/// [`UNIQUE_CYCLE_DRAWS`] random elements, shared by all orbits, taking the
/// first element with a unique cycle. The shared sequence keeps the choice
/// consistent across equivalent orbits.
pub fn harvest_unique_cycles(
    s: &GeneratingSet,
    orbits: &OrbitPartition,
    targets: &[u32],
    source: &mut RandomElementSource,
) -> Vec<Option<Vec<Point>>> {
    let restrictions = restrictions_by_orbit(s, orbits);
    let mut found: Vec<Option<Vec<Point>>> = vec![None; targets.len()];
    let mut open = Vec::new();
    for (t, &id) in targets.iter().enumerate() {
        if orbits.class_size(id) == 1 {
            continue;
        }
        let best = restrictions[id as usize]
            .iter()
            .filter_map(|(i, g)| shortest_unique(g.cycles()).map(|(len, c)| ((len, *i), c)))
            .min_by_key(|(key, _)| *key);
        match best {
            Some((_, c)) => found[t] = Some(c),
            None => open.push(t),
        }
    }
    for _ in 0..UNIQUE_CYCLE_DRAWS {
        if open.is_empty() {
            break;
        }
        let element = source.next_element();
        let mut by_orbit: std::collections::HashMap<u32, Vec<Vec<Point>>> = std::collections::HashMap::new();
        for c in element.cycles() {
            by_orbit.entry(orbits.class_of(c[0])).or_default().push(c);
        }
        open.retain(|&t| {
            let cycles = by_orbit.remove(&targets[t]).unwrap_or_default();
            match shortest_unique(cycles) {
                Some((_, c)) => {
                    found[t] = Some(c);
                    false
                }
                None => true,
            }
        });
    }
    found
}

/// Unique cycle of a single orbit.
pub fn harvest_unique_cycle(
    s: &GeneratingSet,
    orbits: &OrbitPartition,
    orbit: u32,
    source: &mut RandomElementSource,
) -> Option<Vec<Point>> {
    harvest_unique_cycles(s, orbits, &[orbit], source).pop().flatten()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::perm::{orbits as orbits_of, parse_cycles};

    fn gens(lines: &[&str], n: usize) -> GeneratingSet {
        GeneratingSet::parse(&lines.join("\n"), n).unwrap()
    }

    #[test]
    fn identity_source_stays_identity() {
        let s = GeneratingSet::new(4, vec![Permutation::identity(4)]).unwrap();
        let mut src = new_source(&s, 7);
        for _ in 0..20 {
            assert!(src.next_element().is_identity());
        }
        let mut empty = new_source(&GeneratingSet::empty(3), 1);
        assert!(empty.next_element().is_identity());
    }

    #[test]
    fn source_is_deterministic() {
        let s = gens(&["(1,2,3,4,5)", "(1,2)"], 5);
        let a: Vec<_> = {
            let mut src = new_source(&s, 42);
            (0..10).map(|_| src.next_element()).collect()
        };
        let mut src = new_source(&s, 42);
        let b: Vec<_> = (0..10).map(|_| src.next_element()).collect();
        assert_eq!(a, b);
        let mut other = new_source(&s, 43);
        let c: Vec<_> = (0..10).map(|_| other.next_element()).collect();
        assert_ne!(a, c);
    }

    #[test]
    fn window_and_primes() {
        assert!(in_giant_window(5, 8));
        assert!(!in_giant_window(5, 7));
        assert!(!in_giant_window(4, 7));
        assert!(in_giant_window(7, 12));
        assert!(!in_giant_window(3, 5));
        assert_eq!(giant_draws(20.0, 1), 0);
        assert_eq!(giant_draws(20.0, 8), 87);
    }

    #[test]
    fn rejects_small_constant() {
        let s = gens(&["(1,2)"], 2);
        let mut src = new_source(&s, 0);
        let err = symmetric_action_orbits(&s, &orbits_of(&s), 1.0, &mut src).unwrap_err();
        assert_eq!(err, ActionError::InvalidConstant(1.0));
    }

    #[test]
    fn cyclic_nine_is_filtered_by_parity() {
        let s = gens(&["(1,2,3,4,5,6,7,8,9)"], 9);
        let mut src = new_source(&s, 0);
        let r = symmetric_action_orbits(&s, &orbits_of(&s), DEFAULT_GIANT_C, &mut src).unwrap();
        assert_eq!(r.verdict(0), Verdict::AlternatingAtMost);
        assert_eq!(r.draws, 0);
    }

    #[test]
    fn small_orbits_are_exact() {
        let s = gens(&["(1,2,3)", "(1,2)", "(4,5,6,7)", "(8,9,10)"], 10);
        let orbits = orbits_of(&s);
        let mut src = new_source(&s, 0);
        let r = symmetric_action_orbits(&s, &orbits, DEFAULT_GIANT_C, &mut src).unwrap();
        assert_eq!(r.verdict(0), Verdict::NaturalSymmetric);
        assert_eq!(r.orbits[0].certificate, Some(Certificate::ExactClosure { order: 6 }));
        assert_eq!(r.verdict(1), Verdict::NotSymmetric);
        assert_eq!(r.verdict(2), Verdict::AlternatingAtMost);
    }

    #[test]
    fn sym_twelve_is_certified() {
        let s = gens(&["(1,2,3,4,5,6,7,8,9,10,11,12)", "(1,2)"], 12);
        let orbits = orbits_of(&s);
        let mut src = new_source(&s, 3);
        let r = symmetric_action_orbits(&s, &orbits, DEFAULT_GIANT_C, &mut src).unwrap();
        assert_eq!(r.verdict(0), Verdict::NaturalSymmetric);
        let cert = r.orbits[0].certificate.as_ref().unwrap();
        assert!(witness_is_valid(cert, orbits.class(0)));
    }

    #[test]
    fn generator_transposition_is_harvested() {
        let s = gens(&["(1,2,3)(4,5,6)", "(1,2)(4,5)"], 6);
        let orbits = orbits_of(&s);
        let mut src = new_source(&s, 0);
        let found = harvest_unique_cycles(&s, &orbits, &[0, 1], &mut src);
        assert_eq!(found, vec![Some(vec![0, 1]), Some(vec![3, 4])]);
    }

    #[test]
    fn double_transposition_is_not_unique() {
        assert_eq!(shortest_unique(parse_cycles("(1,2)(3,4)", 4).unwrap().cycles()), None);
        assert_eq!(
            shortest_unique(parse_cycles("(1,2)(3,4)(5,6,7)", 7).unwrap().cycles()),
            Some((3, vec![4, 5, 6]))
        );
    }
}
