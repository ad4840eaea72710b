#![allow(dead_code)]

use std::collections::{BTreeSet, HashSet, VecDeque};

use rand::seq::SliceRandom;
use rand::Rng;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use symscope::cnf::CnfFormula;
use symscope::oracle::OracleBounds;
use symscope::perm::{GeneratingSet, Permutation, Point};

pub const XYZ: &str = "p cnf 8 4\n1 -4 0\n2 -5 0\n3 -6 0\n1 2 3 7 8 0\n";
pub const XYZ_GENS: &str = "(1,2,3)(-1,-2,-3)(4,5,6)(-4,-5,-6)\n(1,2)(-1,-2)(4,5)(-4,-5)\n(7,8)(-7,-8)\n";

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// Bounds wide enough for model graphs of formulas with 10 variables and 12 clauses.
pub fn small_formula_bounds() -> OracleBounds {
    OracleBounds {
        max_vertices: 40,
        max_degree: 40,
        ..OracleBounds::default()
    }
}

fn random_clause(rng: &mut ChaCha8Rng, vars: &[i32]) -> Vec<i32> {
    let width = rng.random_range(1..=3.min(vars.len()));
    let mut vars = vars.to_vec();
    vars.shuffle(rng);
    vars[..width]
        .iter()
        .map(|&v| if rng.random::<bool>() { v } else { -v })
        .collect()
}

fn normalized(c: &[i32]) -> Vec<i32> {
    let mut c = c.to_vec();
    c.sort_unstable();
    c
}

/// Random signed permutation of the variables in `vars`, as a literal map.
fn signed_permutation(rng: &mut ChaCha8Rng, n: usize, vars: &[i32]) -> Vec<i32> {
    let mut map: Vec<i32> = (0..=n as i32).collect();
    let mut shuffled = vars.to_vec();
    shuffled.shuffle(rng);
    for (&v, &w) in vars.iter().zip(&shuffled) {
        map[v as usize] = if rng.random_range(0..4) == 0 { -w } else { w };
    }
    map
}

fn close_under(clauses: &mut BTreeSet<Vec<i32>>, perms: &[Vec<i32>], limit: usize) {
    let mut queue: Vec<Vec<i32>> = clauses.iter().cloned().collect();
    while let Some(c) = queue.pop() {
        if clauses.len() > limit {
            return;
        }
        for p in perms {
            let image = normalized(
                &c.iter()
                    .map(|&l| p[l.unsigned_abs() as usize] * l.signum())
                    .collect::<Vec<_>>(),
            );
            if clauses.insert(image.clone()) {
                queue.push(image);
            }
        }
    }
}

/// Random formula on at most `max_vars` variables and at most `max_clauses`
/// clauses, using every variable. Most formulas are closed under random
/// signed variable permutations to plant symmetry, either one permutation of
/// all variables or independent permutations of variable groups (with an
/// occasional clause coupling groups).
pub fn random_formula(rng: &mut ChaCha8Rng, max_vars: usize, max_clauses: usize) -> CnfFormula {
    loop {
        let n = rng.random_range(2..=max_vars);
        let all: Vec<i32> = (1..=n as i32).collect();
        let mut clauses: BTreeSet<Vec<i32>> = BTreeSet::new();
        match rng.random_range(0..3) {
            0 => {
                for _ in 0..rng.random_range(1..=max_clauses) {
                    clauses.insert(normalized(&random_clause(rng, &all)));
                }
            }
            1 => {
                let perm = signed_permutation(rng, n, &all);
                for _ in 0..rng.random_range(1..=3) {
                    clauses.insert(normalized(&random_clause(rng, &all)));
                }
                close_under(&mut clauses, &[perm], max_clauses);
            }
            _ => {
                let mut shuffled = all.clone();
                shuffled.shuffle(rng);
                let k = rng.random_range(2..=3.min(n));
                let groups: Vec<Vec<i32>> = (0..k)
                    .map(|g| shuffled.iter().skip(g).step_by(k).copied().collect())
                    .collect();
                let perms: Vec<Vec<i32>> = groups.iter().map(|g| signed_permutation(rng, n, g)).collect();
                for g in &groups {
                    clauses.insert(normalized(&random_clause(rng, g)));
                }
                if rng.random_range(0..3) == 0 {
                    clauses.insert(normalized(&random_clause(rng, &all)));
                }
                close_under(&mut clauses, &perms, max_clauses);
            }
        }
        let used: HashSet<u32> = clauses.iter().flatten().map(|l| l.unsigned_abs()).collect();
        if clauses.len() > max_clauses || used.len() != n {
            continue;
        }
        return CnfFormula::new(n, clauses.into_iter().collect()).expect("generated clauses are valid");
    }
}

fn closure_size(k: usize, gens: &[Vec<usize>]) -> usize {
    let id: Vec<usize> = (0..k).collect();
    let mut seen = HashSet::from([id.clone()]);
    let mut queue = VecDeque::from([id]);
    while let Some(e) = queue.pop_front() {
        for g in gens {
            let next: Vec<usize> = e.iter().map(|&x| g[x]).collect();
            if seen.insert(next.clone()) {
                queue.push_back(next);
            }
        }
    }
    seen.len()
}

/// `t` random permutations of `0..k` generating the full symmetric group.
pub fn symmetric_tuple(rng: &mut ChaCha8Rng, k: usize, t: usize) -> Vec<Vec<usize>> {
    let full: usize = (1..=k).product();
    loop {
        let tuple: Vec<Vec<usize>> = (0..t)
            .map(|_| {
                let mut p: Vec<usize> = (0..k).collect();
                p.shuffle(rng);
                p
            })
            .collect();
        if closure_size(k, &tuple) == full {
            return tuple;
        }
    }
}

/// A generating set whose orbits all carry the natural symmetric action.
///
/// Blocks are grouped into clusters; blocks of a cluster follow the same
/// permutation tuple through their own random labelling, so they are
/// equivalent. Some blocks get an independent tuple of the same size.
pub fn planted_lockstep(rng: &mut ChaCha8Rng, max_domain: usize, max_block: usize) -> GeneratingSet {
    let t = rng.random_range(2..=3);
    let mut blocks: Vec<(usize, Vec<Vec<usize>>)> = Vec::new();
    let mut used = 0;
    while used < max_domain {
        let k = rng.random_range(2..=max_block);
        let copies = rng.random_range(1..=3);
        if used + k > max_domain {
            break;
        }
        let shared = symmetric_tuple(rng, k, t);
        for _ in 0..copies {
            if used + k > max_domain {
                break;
            }
            let tuple = if rng.random_range(0..4) == 0 {
                symmetric_tuple(rng, k, t)
            } else {
                shared.clone()
            };
            blocks.push((k, tuple));
            used += k;
        }
        if rng.random_range(0..3) == 0 {
            break;
        }
    }
    let fixed = rng.random_range(0..=(max_domain - used).min(2));
    let n = used + fixed;
    let mut domain: Vec<Point> = (0..n as Point).collect();
    domain.shuffle(rng);
    let mut images: Vec<Vec<Point>> = vec![(0..n as Point).collect(); t];
    let mut at = 0;
    for (k, tuple) in &blocks {
        let pts = &domain[at..at + k];
        for (i, p) in tuple.iter().enumerate() {
            for x in 0..*k {
                images[i][pts[x] as usize] = pts[p[x]];
            }
        }
        at += k;
    }
    let gens = images
        .iter()
        .map(|img| Permutation::from_images(img).unwrap())
        .filter(|p| !p.is_identity())
        .collect();
    GeneratingSet::new(n, gens).unwrap()
}

/// Generators of the natural symmetric group on `n` points, randomly relabelled.
pub fn symmetric_generators(rng: &mut ChaCha8Rng, n: usize) -> GeneratingSet {
    let mut label: Vec<Point> = (0..n as Point).collect();
    label.shuffle(rng);
    let cycle: Vec<Point> = label.clone();
    let swap = vec![label[0], label[1]];
    let gens = vec![
        Permutation::from_cycles(n, &[cycle]).unwrap(),
        Permutation::from_cycles(n, &[swap]).unwrap(),
    ];
    GeneratingSet::new(n, gens).unwrap()
}

/// Lockstep formula family: `blocks` independent copies of rows `x`, `y` of
/// width `k` with clauses `x_i or not y_i` and `x_1 or ... or x_k`.
pub fn lockstep_family(blocks: usize, k: usize) -> (CnfFormula, String) {
    let mut clauses = Vec::new();
    let mut gens = String::new();
    for b in 0..blocks {
        let x = |i: usize| (b * 2 * k + i + 1) as i32;
        let y = |i: usize| (b * 2 * k + k + i + 1) as i32;
        for i in 0..k {
            clauses.push(vec![x(i), -y(i)]);
        }
        clauses.push((0..k).map(x).collect());
        let cyc = |f: &dyn Fn(usize) -> i32, s: i32| {
            format!(
                "({})",
                (0..k).map(|i| (s * f(i)).to_string()).collect::<Vec<_>>().join(",")
            )
        };
        let swap = |f: &dyn Fn(usize) -> i32, s: i32| format!("({},{})", s * f(0), s * f(1));
        gens.push_str(&format!("{}{}{}{}\n", cyc(&x, 1), cyc(&x, -1), cyc(&y, 1), cyc(&y, -1)));
        gens.push_str(&format!(
            "{}{}{}{}\n",
            swap(&x, 1),
            swap(&x, -1),
            swap(&y, 1),
            swap(&y, -1)
        ));
    }
    (CnfFormula::new(blocks * 2 * k, clauses).unwrap(), gens)
}
