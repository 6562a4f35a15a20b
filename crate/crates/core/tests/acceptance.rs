//! Acceptance sweep. Each test covers one contract item end to end and
//! prints a single PASS line with the numbers it checked (visible with
//! `--nocapture`); a failure anywhere trips the assert instead.

use freecayley::cayley::{
    cover_structure, free_connection_set, free_generators, quotient_connection_set,
    sum_distinctness_of, verify_induced_copy, verify_lift, CayleySpec, CoverStructure, GroupKind,
    DEFAULT_VERTEX_CAP,
};
use freecayley::codes::{bch, goppa, Distance, GoppaInputs, LinearCode, DEFAULT_DISTANCE_BUDGET};
use freecayley::ensemble::{seeded_graphs, DEFAULT_SEED};
use freecayley::fplinalg::extend_to_basis;
use freecayley::gf::FieldContext;
use freecayley::graph::Graph;
use freecayley::group::{cauchy_element, GroupTable};
use freecayley::reduce::{
    approx_clique_driver, embed_cubelike, gadget, reduce_and_recover, reduce_clique,
    CliqueWitnessOracle,
};
use freecayley::solve::{self, DEFAULT_MAX_NODES};
use std::sync::Arc;

fn ensemble() -> Vec<Graph> {
    seeded_graphs(DEFAULT_SEED, 200, 2, 8)
}

fn omega(g: &Graph) -> usize {
    solve::max_clique(g, DEFAULT_MAX_NODES).unwrap().len()
}

/// The piecewise law for the free spec's clique number in terms of the
/// graph's, by prime.
fn ladder(omega_x: usize, p: u64) -> usize {
    match (p, omega_x) {
        (2, 3) => 4,
        (3, 2) => 3,
        _ => omega_x,
    }
}

#[test]
fn omega_ladder_on_seeded_ensemble() {
    let graphs = ensemble();
    let mut checked = 0;
    for x in &graphs {
        let w = omega(x);
        for p in [2u64, 3, 5] {
            let spec = free_connection_set(x, p).unwrap();
            let got = spec.clique_number(DEFAULT_MAX_NODES).unwrap().size;
            assert_eq!(
                got,
                ladder(w, p),
                "ladder broke at v={}, |E|={}, p={p}, omega(x)={w}",
                x.order(),
                x.size()
            );
            checked += 1;
        }
    }
    println!(
        "PASS omega ladder: {checked} spec/prime pairs over {} graphs",
        graphs.len()
    );
}

fn certified(p: u64, n: usize, rows: &[Vec<u64>]) -> LinearCode {
    let mut code = LinearCode::from_generator(p, n, rows).unwrap();
    code.certify_distance(DEFAULT_DISTANCE_BUDGET).unwrap();
    code
}

#[test]
fn distance_ladder_on_explicit_codes() {
    // d >= 3: every nonzero codeword misses the connection set, so the
    // code is an independent set in the free spec.
    let rep3 = certified(2, 3, &[vec![1, 1, 1]]);
    assert_eq!(rep3.distance_cert().unwrap().distance, Distance::Finite(3));
    for x in [Graph::complete(3), Graph::from_edges(3, &[(0, 1), (1, 2)])] {
        let spec = free_connection_set(&x, 2).unwrap();
        for idx in 1..(1u64 << rep3.k()) {
            let word = rep3.codeword(&[idx]).unwrap();
            assert!(
                !spec.contains_connection(&word),
                "codeword {word:?} is an edge of the free spec"
            );
        }
    }

    // d >= 5: the quotient contains the graph as an induced subgraph.
    let rep5 = certified(2, 5, &[vec![1, 1, 1, 1, 1]]);
    assert_eq!(rep5.distance_cert().unwrap().distance, Distance::Finite(5));
    for x in [Graph::cycle(5), Graph::complete(5)] {
        let spec = free_connection_set(&x, 2).unwrap();
        let basis = extend_to_basis(2, 5, &rep5.generator().row_vecs()).unwrap();
        let q = quotient_connection_set(&spec, &rep5, &basis).unwrap();
        let copy = verify_induced_copy(&x, &q, &rep5, &basis).unwrap();
        assert!(copy.holds, "no induced copy at v=5: {:?}", copy.mismatches);
    }

    // d >= 7: the quotient keeps the free spec's clique number.
    let rep7 = certified(2, 7, &[vec![1; 7]]);
    assert_eq!(rep7.distance_cert().unwrap().distance, Distance::Finite(7));
    let mut seeded7 = seeded_graphs(DEFAULT_SEED + 7, 1, 7, 7);
    let mut graphs7 = vec![Graph::cycle(7), Graph::complete(7)];
    graphs7.append(&mut seeded7);
    for x in &graphs7 {
        let spec = free_connection_set(x, 2).unwrap();
        let basis = extend_to_basis(2, 7, &rep7.generator().row_vecs()).unwrap();
        let q = quotient_connection_set(&spec, &rep7, &basis).unwrap();
        assert_eq!(
            q.clique_number(DEFAULT_MAX_NODES).unwrap().size,
            spec.clique_number(DEFAULT_MAX_NODES).unwrap().size,
            "quotient changed the clique number"
        );
    }

    // d infinite: the zero code quotients to the spec itself.
    let trivial = LinearCode::trivial(2, 5).unwrap();
    assert_eq!(
        trivial.distance_cert().unwrap().distance,
        Distance::Infinite
    );
    let x = Graph::cycle(5);
    let spec = free_connection_set(&x, 2).unwrap();
    let basis = extend_to_basis(2, 5, &[]).unwrap();
    let q = quotient_connection_set(&spec, &trivial, &basis).unwrap();
    assert_eq!(q, spec);

    println!("PASS distance ladder: coclique at d=3, induced copy at d=5, clique number at d=7");
}

#[test]
fn goppa_certification() {
    let ctx = FieldContext::new(2, 3).unwrap();
    let support: Vec<_> = (1..8).map(|i| ctx.element_from_index(i)).collect();

    let inputs = GoppaInputs::new(&ctx, vec![ctx.zero(), ctx.one()], support.clone()).unwrap();
    let mut degree_one = goppa(&inputs).unwrap();
    assert!(degree_one.k() >= 4);
    let cert = degree_one
        .certify_distance(DEFAULT_DISTANCE_BUDGET)
        .unwrap();
    assert!(cert.distance.at_least(2));

    let inputs = GoppaInputs::new(&ctx, vec![ctx.zero(), ctx.zero(), ctx.one()], support).unwrap();
    let mut degree_two = goppa(&inputs).unwrap();
    let cert = degree_two
        .certify_distance(DEFAULT_DISTANCE_BUDGET)
        .unwrap();
    assert!(cert.distance.at_least(3));

    for code in [&degree_one, &degree_two] {
        let product = code.generator().mul(&code.parity().transpose()).unwrap();
        assert!(
            product.is_zero(),
            "generator times parity transpose is nonzero"
        );
    }
    println!(
        "PASS goppa certification: degree-1 code ({}, {}) d>=2, degree-2 d>=3, annihilation exact",
        degree_one.n(),
        degree_one.k()
    );
}

#[test]
fn bch_parameters() {
    let small = bch(3, 1).unwrap();
    assert_eq!((small.n(), small.k()), (7, 4));
    assert_eq!(small.distance_cert().unwrap().distance, Distance::Finite(3));

    let wide = bch(4, 2).unwrap();
    assert_eq!((wide.n(), wide.k()), (15, 7));
    assert_eq!(wide.distance_cert().unwrap().distance, Distance::Finite(5));

    for (code, m, t) in [(&small, 3usize, 1u64), (&wide, 4, 2)] {
        let dist = code.distance_cert().unwrap().distance;
        assert!(dist.at_least(2 * t + 1));
        assert!(code.k() as u64 >= code.n() as u64 - (m as u64) * t);
    }
    println!("PASS bch parameters: (7,4,3) and (15,7,5) certified by enumeration");
}

/// Every inverse-closed identity-free connection set over Z_p^n.
fn all_bases(p: u64, n: usize) -> Vec<CayleySpec> {
    let kind = GroupKind::ZpPower { p, n };
    let probe = CayleySpec::new(kind.clone(), vec![]).unwrap();
    let mut orbits: Vec<Vec<Vec<u64>>> = Vec::new();
    let mut seen = std::collections::HashSet::new();
    for idx in 1..probe.order() {
        let c = probe.element_of_index(idx);
        if seen.contains(&c) {
            continue;
        }
        let inv = probe.inv(&c);
        seen.insert(c.clone());
        seen.insert(inv.clone());
        orbits.push(if inv == c { vec![c] } else { vec![c, inv] });
    }
    (0..(1usize << orbits.len()))
        .map(|mask| {
            let mut connection = Vec::new();
            for (bit, orbit) in orbits.iter().enumerate() {
                if mask & (1 << bit) != 0 {
                    connection.extend(orbit.iter().cloned());
                }
            }
            CayleySpec::new(kind.clone(), connection).unwrap()
        })
        .collect()
}

#[test]
fn gadget_law_exhaustive_on_small_bases() {
    let mut checked = 0;
    for (p, n) in [(2u64, 1usize), (2, 2), (3, 1)] {
        for base in all_bases(p, n) {
            let w = base.clique_number(DEFAULT_MAX_NODES).unwrap().size as u128;
            let colors = base.order();
            for i in 1..=n {
                let g = gadget(&base, i).unwrap();
                let mat = g.composite.materialize(DEFAULT_VERTEX_CAP).unwrap();
                let alpha = solve::max_independent_set(&mat, DEFAULT_MAX_NODES)
                    .unwrap()
                    .len() as u128;
                let chi = solve::chromatic_number(&mat, DEFAULT_MAX_NODES)
                    .unwrap()
                    .count as u128;
                let level = (p as u128).pow(i as u32);
                assert_eq!(
                    alpha,
                    level.min(w),
                    "independence law failed at p={p} n={n} i={i}"
                );
                assert_eq!(
                    chi == colors,
                    w >= level,
                    "coloring law failed at p={p} n={n} i={i}"
                );
                checked += 1;
            }
        }
    }
    println!("PASS gadget law: {checked} (base, level) pairs by exact solvers");
}

#[test]
fn driver_bracket_on_seeded_ensemble() {
    let graphs = ensemble();
    let mut oracle = CliqueWitnessOracle {
        max_nodes: DEFAULT_MAX_NODES,
    };
    for x in &graphs {
        let report = approx_clique_driver(x, 2, &mut oracle).unwrap();
        let spec = if x.order() < 4 {
            free_connection_set(x, 2).unwrap()
        } else {
            reduce_clique(x, 2).unwrap().quotient
        };
        let w = spec.clique_number(DEFAULT_MAX_NODES).unwrap().size as u128;
        assert!(
            report.bound_low <= w && w < report.bound_high,
            "bracket [{}, {}) missed omega={w} at v={}",
            report.bound_low,
            report.bound_high,
            x.order()
        );
    }
    println!(
        "PASS driver bracket: {} runs, ratio within 2 throughout",
        graphs.len()
    );
}

#[test]
fn quadratic_embedding_of_small_graphs() {
    let mut checked = 0;
    for v in [5usize, 7, 11, 15] {
        for x in seeded_graphs(DEFAULT_SEED + v as u64, 3, v, v) {
            let embedding = embed_cubelike(&x).unwrap();
            assert!(embedding.copy.holds);
            assert!(embedding.report.spec_order <= embedding.report.size_bound);
            checked += 1;
        }
    }
    println!("PASS quadratic embedding: {checked} graphs, all copies induced, size within bound");
}

#[test]
fn cover_structure_on_seeded_ensemble() {
    let graphs: Vec<Graph> = ensemble().into_iter().filter(|g| g.order() <= 6).collect();
    assert!(!graphs.is_empty());
    for x in &graphs {
        assert!(matches!(
            cover_structure(x, 2).unwrap(),
            CoverStructure::Isomorphism { .. }
        ));
        assert!(matches!(
            cover_structure(x, 5).unwrap(),
            CoverStructure::DoubleCover { .. }
        ));
        assert!(matches!(
            cover_structure(x, 3).unwrap(),
            CoverStructure::MatchingThenDoubleCover { .. }
        ));
    }
    println!(
        "PASS cover structure: {} graphs, isomorphism at p=2, double covers at p=3 and 5",
        graphs.len()
    );
}

#[test]
fn sum_distinctness_exhaustive() {
    let mut checked = 0;
    for v in 1..=8usize {
        let generators = free_generators(v);
        for p in [2u64, 3, 5] {
            let report = sum_distinctness_of(&generators, p);
            assert!(
                report.is_clean(),
                "violations at v={v}, p={p}: {:?}",
                report.violations
            );
            if p == 5 {
                assert!(
                    report.permitted.is_empty(),
                    "p=5 admits no collisions at all"
                );
            }
            checked += 1;
        }
    }
    println!("PASS sum distinctness: {checked} (v, p) pairs, 2-sums and 3-sums exhaustive");
}

#[test]
fn lifting_into_supplied_groups() {
    let z4 = Arc::new(GroupTable::cyclic(4));
    let z6 = Arc::new(GroupTable::cyclic(6));
    let s3 = Arc::new(GroupTable::symmetric3());

    // Connected inputs of each dimension and prime.
    let input = |p: u64, n: usize| -> CayleySpec {
        let connection: Vec<Vec<u64>> = match (p, n) {
            (2, 1) => vec![vec![1]],
            (2, 2) => vec![vec![0, 1], vec![1, 0], vec![1, 1]],
            (3, 1) => vec![vec![1], vec![2]],
            (3, 2) => vec![vec![0, 1], vec![0, 2], vec![1, 0], vec![2, 0]],
            _ => unreachable!(),
        };
        CayleySpec::new(GroupKind::ZpPower { p, n }, connection).unwrap()
    };

    let mut runs = 0;
    for (table, p) in [
        (z4.clone(), 2u64),
        (z6.clone(), 2),
        (z6.clone(), 3),
        (s3.clone(), 2),
        (s3.clone(), 3),
    ] {
        let h = cauchy_element(&table, p).unwrap();
        for n in [1usize, 2] {
            let spec = input(p, n);
            let report = verify_lift(
                &spec,
                table.clone(),
                h,
                DEFAULT_VERTEX_CAP,
                DEFAULT_MAX_NODES,
            )
            .unwrap();
            let expected_copies = ((table.order() as u128) / p as u128).pow(n as u32);
            assert_eq!(report.copies, expected_copies);
            assert_eq!(report.components_input, 1, "inputs are connected by choice");
            assert_eq!(report.components_lifted as u128, expected_copies);
            assert_eq!(report.cross_edges, 0);
            assert!(report.copies_isomorphic);
            assert_eq!(report.omega_input, report.omega_lifted);
            runs += 1;
        }
    }
    println!("PASS lifting: {runs} lifts into cyclic and symmetric tables, copy counts exact");
}

#[test]
fn end_to_end_clique_recovery() {
    let graphs = seeded_graphs(DEFAULT_SEED + 11, 25, 4, 16);
    for x in &graphs {
        let (_, recovery) = reduce_and_recover(x, 2, DEFAULT_MAX_NODES).unwrap();
        assert_eq!(
            recovery.omega_x,
            omega(x),
            "pipeline missed the clique number at v={}",
            x.order()
        );
    }
    println!("PASS end to end: 25 reductions recovered the exact clique number");
}
