mod common;

use proptest::prelude::*;
use rand::seq::SliceRandom;
use rand::Rng;

use symscope::cnf::{model_graph, CnfFormula};
use symscope::decomposition::finest_decomposition;
use symscope::graph::{color_refinement, is_automorphism, is_equitable, Coloring, GraphBuilder};
use symscope::oracle::{brute_centralizer, enumerate_automorphisms, formula_symmetries, OracleBounds};
use symscope::orbit_equivalence::cycle_type_graph;
use symscope::perm::{orbits, GeneratingSet, Parity, Permutation, Point};
use symscope::pipeline::{run_pipeline, AnalysisConfig};
use symscope::symmetric_action::new_source;

use common::*;

fn perm_strategy(n: usize) -> impl Strategy<Value = Permutation> {
    Just((0..n as Point).collect::<Vec<_>>())
        .prop_shuffle()
        .prop_map(|img| Permutation::from_images(&img).unwrap())
}

fn random_perm(rng: &mut rand_chacha::ChaCha8Rng, n: usize, moved: usize) -> Permutation {
    let mut pts: Vec<Point> = (0..n as Point).collect();
    pts.shuffle(rng);
    let k = moved.min(n);
    let mut img: Vec<Point> = (0..n as Point).collect();
    let mut target = pts[..k].to_vec();
    target.shuffle(rng);
    for (i, &x) in pts[..k].iter().enumerate() {
        img[x as usize] = target[i];
    }
    Permutation::from_images(&img).unwrap()
}

/// A graph whose edge set is a union of orbits under `s`, so `s` acts by automorphisms.
fn invariant_graph(rng: &mut rand_chacha::ChaCha8Rng, s: &GeneratingSet) -> symscope::graph::ColoredGraph {
    let n = s.degree();
    let mut edges = std::collections::BTreeSet::new();
    for _ in 0..rng.random_range(1..=n) {
        let (u, v) = (rng.random_range(0..n as Point), rng.random_range(0..n as Point));
        if u == v {
            continue;
        }
        let mut queue = vec![(u.min(v), u.max(v))];
        while let Some((a, b)) = queue.pop() {
            if edges.insert((a, b)) {
                for g in s.iter() {
                    let (x, y) = (g.apply(a), g.apply(b));
                    queue.push((x.min(y), x.max(y)));
                }
            }
        }
    }
    let o = orbits(s);
    let mut b = GraphBuilder::new();
    for x in 0..n as Point {
        b.add_vertex((o.class_of(x) % 2) as u64);
    }
    for (u, v) in edges {
        b.add_edge(u, v);
    }
    b.build().unwrap()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn group_laws(p in perm_strategy(9), q in perm_strategy(9), r in perm_strategy(9)) {
        let id = Permutation::identity(9);
        prop_assert_eq!(p.compose(&q).unwrap().compose(&r).unwrap(), p.compose(&q.compose(&r).unwrap()).unwrap());
        prop_assert_eq!(p.compose(&p.inverse()).unwrap(), id.clone());
        prop_assert_eq!(p.compose(&id).unwrap(), p.clone());
        for x in 0..9 {
            prop_assert_eq!(p.compose(&q).unwrap().apply(x), q.apply(p.apply(x)));
        }
    }

    #[test]
    fn parity_is_a_homomorphism(p in perm_strategy(8), q in perm_strategy(8)) {
        let pq = p.compose(&q).unwrap();
        let expected = if p.parity() == q.parity() { Parity::Even } else { Parity::Odd };
        prop_assert_eq!(pq.parity(), expected);
        prop_assert_eq!(p.inverse().parity(), p.parity());
    }

    #[test]
    fn cycles_round_trip(p in perm_strategy(10)) {
        let back = Permutation::from_cycles(10, &p.cycles()).unwrap();
        prop_assert_eq!(&back, &p);
        prop_assert_eq!(p.cycle_lengths().iter().sum::<usize>(), p.support_len());
    }

    #[test]
    fn refinement_is_equitable_idempotent_and_keeps_orbits(seed in any::<u64>()) {
        let mut rng = rng(seed);
        let n = rng.random_range(2..=14);
        let gens = (0..rng.random_range(1..=2)).map(|_| random_perm(&mut rng, n, 4)).collect();
        let s = GeneratingSet::new(n, gens).unwrap();
        let g = invariant_graph(&mut rng, &s);
        for p in s.iter() {
            prop_assert!(is_automorphism(&g, p).unwrap());
        }
        let stable = color_refinement(&g, &g.coloring()).unwrap();
        prop_assert!(is_equitable(&g, &stable));
        prop_assert!(stable.refines(&g.coloring()));
        let again = color_refinement(&g, &stable).unwrap();
        prop_assert_eq!(again.canonical(), stable.canonical());
        let o = orbits(&s);
        for x in 0..n as Point {
            for &y in o.class(o.class_of(x)) {
                prop_assert_eq!(stable.color(x), stable.color(y));
            }
        }
        let uniform = color_refinement(&g, &Coloring::uniform(n)).unwrap();
        prop_assert!(stable.refines(&uniform));
    }

    #[test]
    fn lift_and_project_are_inverse(seed in any::<u64>()) {
        let mut rng = rng(seed);
        let f = random_formula(&mut rng, 6, 8);
        let m = model_graph(&f);
        let bounds = small_formula_bounds();
        let Ok(group) = formula_symmetries(&m, &bounds) else { return Ok(()) };
        for p in group.iter().take(50) {
            let lifted = m.lift_literal_perm(&p).unwrap();
            prop_assert!(is_automorphism(m.graph(), &lifted).unwrap());
            prop_assert_eq!(m.project_vertex_perm(&lifted).unwrap(), p);
        }
    }

    #[test]
    fn random_elements_are_automorphisms(seed in any::<u64>()) {
        let mut rng = rng(seed);
        let f = random_formula(&mut rng, 8, 10);
        let m = model_graph(&f);
        let Ok(group) = formula_symmetries(&m, &small_formula_bounds()) else { return Ok(()) };
        let s = m.lift_generators(&group.generators()).unwrap();
        let mut source = new_source(&s, seed);
        for _ in 0..20 {
            prop_assert!(is_automorphism(m.graph(), &source.next_element()).unwrap());
        }
    }

    #[test]
    fn relabelling_preserves_decomposition_shape(seed in any::<u64>()) {
        let mut rng = rng(seed);
        let n = rng.random_range(3..=14);
        let gens = (0..rng.random_range(1..=3)).map(|_| random_perm(&mut rng, n, 3)).collect();
        let s = GeneratingSet::new(n, gens).unwrap();
        let g = invariant_graph(&mut rng, &s);
        let sigma = random_perm(&mut rng, n, n);
        let conj = |p: &Permutation| sigma.inverse().compose(p).unwrap().compose(&sigma).unwrap();
        let t = GeneratingSet::new(n, s.iter().map(conj).collect()).unwrap();
        let mut b = GraphBuilder::new();
        let inv = sigma.inverse();
        for x in 0..n as Point {
            b.add_vertex(g.color(inv.apply(x)) as u64);
        }
        for (u, v) in g.edges() {
            b.add_edge(sigma.apply(u), sigma.apply(v));
        }
        let h = b.build().unwrap();
        let (os, ot) = (orbits(&s), orbits(&t));
        for x in 0..n as Point {
            prop_assert_eq!(os.class_size(os.class_of(x)), ot.class_size(ot.class_of(sigma.apply(x))));
        }
        let ds = finest_decomposition(&g, &s, &os).unwrap();
        let dt = finest_decomposition(&h, &t, &ot).unwrap();
        let mut a: Vec<usize> = ds.factors.iter().map(|f| f.points.len()).collect();
        let mut b: Vec<usize> = dt.factors.iter().map(|f| f.points.len()).collect();
        a.sort_unstable();
        b.sort_unstable();
        prop_assert_eq!(a, b);
        for x in 0..n as Point {
            for y in 0..n as Point {
                prop_assert_eq!(
                    ds.factor_of(x) == ds.factor_of(y),
                    dt.factor_of(sigma.apply(x)) == dt.factor_of(sigma.apply(y))
                );
            }
        }
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(24))]

    #[test]
    fn cycle_type_graph_automorphisms_are_the_centralizer(seed in any::<u64>()) {
        let mut rng = rng(seed);
        let n = rng.random_range(2..=6);
        let gens = (0..rng.random_range(1..=2)).map(|_| random_perm(&mut rng, n, 4)).collect();
        let s = GeneratingSet::new(n, gens).unwrap();
        let bounds = OracleBounds { max_vertices: 64, ..OracleBounds::default() };
        let centralizer = brute_centralizer(&s, &bounds).unwrap();
        for c in centralizer.iter() {
            for g in s.iter() {
                prop_assert_eq!(c.compose(g).unwrap(), g.compose(&c).unwrap());
            }
        }
        let ct = cycle_type_graph(&s);
        let aut = enumerate_automorphisms(&ct.graph, &bounds).unwrap();
        let base: std::collections::BTreeSet<Vec<Point>> =
            aut.iter().map(|a| (0..n as Point).map(|x| a.apply(ct.base_vertex(x))).collect()).collect();
        let expected: std::collections::BTreeSet<Vec<Point>> = centralizer.iter().map(|c| c.to_images()).collect();
        prop_assert_eq!(base, expected);
        prop_assert_eq!(aut.len(), centralizer.len());
    }

    #[test]
    fn same_seed_gives_identical_reports(seed in any::<u64>()) {
        let mut rng = rng(seed);
        let (f, gens) = lockstep_family(rng.random_range(1..=3), rng.random_range(3..=9));
        let config = AnalysisConfig { seed, ..AnalysisConfig::default() };
        let a = serde_json::to_string(&run_pipeline(f.clone(), Some(&gens), &config).unwrap()).unwrap();
        let b = serde_json::to_string(&run_pipeline(f, Some(&gens), &config).unwrap()).unwrap();
        prop_assert_eq!(a, b);
    }
}

#[test]
fn long_cycle_proportion_in_sym8() {
    let mut rng = rng(8);
    let s = symmetric_generators(&mut rng, 8);
    let mut source = new_source(&s, 8);
    let draws = 4000;
    let long = (0..draws)
        .filter(|_| source.next_element().cycle_lengths().iter().any(|&l| l > 4))
        .count();
    let expected = 1.0 / 5.0 + 1.0 / 6.0 + 1.0 / 7.0 + 1.0 / 8.0;
    let observed = long as f64 / draws as f64;
    assert!(
        (observed - expected).abs() < 0.1,
        "observed {observed}, expected {expected}"
    );
}

#[test]
fn empty_formula_and_trivial_group() {
    let f = CnfFormula::new(3, vec![vec![1, 2, 3], vec![-1]]).unwrap();
    let r = run_pipeline(f, Some(""), &AnalysisConfig::default()).unwrap();
    assert!(r.orbits.literal.iter().all(|o| o.points.len() == 1));
    assert_eq!(r.row_matrices.as_ref().map(Vec::len), Some(0));
}
