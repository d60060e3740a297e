//! Acceptance suite: one test per criterion, each printing a pass/fail line
//! (visible with `cargo test --test acceptance -- --nocapture`).

use std::collections::BTreeSet;
use std::panic::{catch_unwind, resume_unwind, UnwindSafe};

use rand::prelude::*;
use rand_chacha::ChaCha8Rng;

use holescope::chroma::{chi_of_set, chromatic_number};
use holescope::constructions::{
    build_levelling, find_5_hole, find_6_hole, hole_from_extended_trellis,
    hole_from_type2_cable, monochromatic_subcable, Outcome,
};
use holescope::generators::{
    canonical_cable, canonical_cable_with_types, canonical_extended_trellis,
    canonical_shower_fixture, complete_bipartite, groetzsch, mycielski, petersen,
    random_triangle_free, ShowerFixture,
};
use holescope::graph::{cycle, emit_graph6, is_induced_cycle, parse_graph6, Graph};
use holescope::holes::{hole_spectrum, spectrum_oracle, DEFAULT_HOLE_BUDGET};
use holescope::structures::{
    classify_cable, jetset, solidity, verify_levelling, verify_shower, verify_sprinkler,
    verify_trellis, verify_wubend, BendKind, PairType, StabilityCheck, WUBend,
};

fn criterion(n: usize, label: &str, body: impl FnOnce() + UnwindSafe) {
    let result = catch_unwind(body);
    println!("criterion {n} ({label}): {}", if result.is_ok() { "pass" } else { "fail" });
    if let Err(e) = result {
        resume_unwind(e);
    }
}

fn random_graph(n: usize, p: f64, rng: &mut ChaCha8Rng) -> Graph {
    let mut edges = Vec::new();
    for u in 0..n {
        for v in u + 1..n {
            if rng.gen_bool(p) {
                edges.push((u, v));
            }
        }
    }
    Graph::from_edges(n, &edges).unwrap()
}

fn corpus() -> Vec<(String, Graph)> {
    let mut out: Vec<(String, Graph)> =
        (4..=12).map(|n| (format!("cycle{n}"), cycle(n))).collect();
    out.push(("petersen".into(), petersen()));
    out.push(("groetzsch".into(), groetzsch()));
    let mut m = Graph::from_edges(2, &[(0, 1)]).unwrap();
    for i in 1..=3 {
        m = mycielski(&m);
        out.push((format!("mycielski{i}"), m.clone()));
    }
    for seed in 0..50u64 {
        let n = 20 + (seed as usize % 11);
        out.push((format!("rtf{n}-{seed}"), random_triangle_free(n, seed)));
    }
    out
}

#[test]
fn criterion_1_spectrum_oracle_equivalence() {
    criterion(1, "spectrum oracle equivalence", || {
        let mut rng = ChaCha8Rng::seed_from_u64(11);
        for case in 0..220 {
            let n = 5 + case % 6;
            let p = 0.15 + 0.1 * ((case % 7) as f64);
            let g = random_graph(n, p, &mut rng);
            let spectrum = hole_spectrum(&g, n, DEFAULT_HOLE_BUDGET).unwrap();
            assert_eq!(spectrum.lengths(), spectrum_oracle(&g, n), "case {case}");
        }
    });
}

#[test]
fn criterion_2_trellis_assembly() {
    criterion(2, "trellis assembly", || {
        for k in [1usize, 2] {
            for ell in 8..=20usize {
                let adj_settings: &[bool] =
                    if ell == 11 && k == 1 { &[false, true] } else { &[false] };
                for &adj in adj_settings {
                    let (g, t) = canonical_extended_trellis(ell, k, adj);
                    let hole = hole_from_extended_trellis(&g, &t, k, ell)
                        .unwrap()
                        .success()
                        .unwrap_or_else(|| panic!("k={k} ell={ell} adj={adj}"));
                    assert_eq!(hole.len(), ell);
                    assert!(is_induced_cycle(&g, &hole));
                }
            }
        }
    });
}

#[test]
fn criterion_3_type2_cable_assembly() {
    criterion(3, "type-2 cable assembly", || {
        for t in 2..=9 {
            let (g, c) = canonical_cable(t, 2, 1);
            let hole = hole_from_type2_cable(&g, &c).unwrap().success().unwrap();
            assert_eq!(hole.len(), t + 3);
            assert!(is_induced_cycle(&g, &hole));
        }
    });
}

#[test]
fn criterion_4_ramsey_subcable() {
    criterion(4, "ramsey subcable", || {
        let pairs: Vec<(usize, usize)> =
            (0..6).flat_map(|i| (i + 1..6).map(move |j| (i, j))).collect();
        for mask in 0u32..(1 << 15) {
            let typer = |i: usize, j: usize| {
                let idx = pairs.iter().position(|&p| p == (i, j)).unwrap();
                if mask & (1 << idx) != 0 {
                    PairType::Two
                } else {
                    PairType::One
                }
            };
            let (g, c) = canonical_cable_with_types(6, &typer);
            let (sub, kind) = monochromatic_subcable(&g, &c, 3, 3)
                .unwrap()
                .success()
                .unwrap_or_else(|| panic!("typing {mask:#x}"));
            let report = classify_cable(&g, &sub);
            assert!(report.is_valid());
            assert_eq!(
                report.uniform_type(),
                Some(if kind == 1 { PairType::One } else { PairType::Two })
            );
        }
    });
}

#[test]
fn criterion_5_levelling_guarantee() {
    criterion(5, "levelling guarantee", || {
        for (name, g) in corpus() {
            let l = build_levelling(&g).unwrap();
            assert_eq!(verify_levelling(&g, &l), vec![], "{name}");
            let chi = chromatic_number(&g).unwrap();
            let base_chi = chi_of_set(&g, l.base().unwrap()).unwrap();
            assert!(2 * base_chi >= chi, "{name}: 2*{base_chi} < {chi}");
        }
    });
}

/// Exhaustive k-colorability by backtracking, independent of the library's
/// DSATUR solver.
fn colorable(g: &Graph, k: usize) -> bool {
    fn go(g: &Graph, k: usize, colors: &mut Vec<usize>, v: usize) -> bool {
        if v == g.n() {
            return true;
        }
        for c in 0..k {
            if g.neighbors(v).iter().all(|&u| u >= v || colors[u] != c) {
                colors[v] = c;
                if go(g, k, colors, v + 1) {
                    return true;
                }
            }
        }
        false
    }
    go(g, k, &mut vec![0; g.n()], 0)
}

#[test]
fn criterion_6_exact_chromatic_numbers() {
    criterion(6, "exact chromatic numbers", || {
        for n in [5, 7, 9] {
            let g = cycle(n);
            assert_eq!(chromatic_number(&g).unwrap(), 3);
            assert!(!colorable(&g, 2));
            assert!(colorable(&g, 3));
        }
        let p = petersen();
        assert_eq!(chromatic_number(&p).unwrap(), 3);
        assert!(!colorable(&p, 2));
        assert!(colorable(&p, 3));
        let mut m = Graph::from_edges(2, &[(0, 1)]).unwrap();
        for i in 1..=3 {
            m = mycielski(&m);
            assert_eq!(chromatic_number(&m).unwrap(), i + 2);
            if m.n() <= 9 {
                assert!(!colorable(&m, i + 1));
                assert!(colorable(&m, i + 2));
            }
        }
    });
}

/// Rebuild `g` with the edge u-v toggled.
fn toggle(g: &Graph, u: usize, v: usize) -> Graph {
    let mut edges = g.edges();
    if g.has_edge(u, v) {
        edges.retain(|&(a, b)| (a, b) != (u.min(v), u.max(v)));
    } else {
        edges.push((u, v));
    }
    Graph::from_edges(g.n(), &edges).unwrap()
}

fn pick<T: Copy>(items: &[T], rng: &mut ChaCha8Rng) -> T {
    items[rng.gen_range(0..items.len())]
}

fn wubend_fixture() -> (Graph, WUBend) {
    let g = Graph::from_edges(
        8,
        &[(0, 1), (0, 2), (1, 3), (1, 4), (2, 5), (3, 4), (4, 5), (2, 6), (6, 7)],
    )
    .unwrap();
    let b = WUBend {
        levels: vec![
            BTreeSet::from([0]),
            BTreeSet::from([1, 2]),
            BTreeSet::from([3, 4, 5]),
        ],
        u_path: vec![6, 7],
        kind: BendKind::U,
    };
    (g, b)
}

#[test]
fn criterion_7_mutation_fuzz() {
    criterion(7, "verifier mutation fuzz", || {
        let rounds = 100;

        // levelling on C9
        let g = cycle(9);
        let l = build_levelling(&g).unwrap();
        assert_eq!(verify_levelling(&g, &l), vec![]);
        let mut rng = ChaCha8Rng::seed_from_u64(70);
        for _ in 0..rounds {
            let (mutated_g, mutated_l) = match rng.gen_range(0..3) {
                0 => {
                    // cut a vertex off from its unique parent
                    let i = rng.gen_range(1..l.levels.len());
                    let v = pick(&l.levels[i].iter().copied().collect::<Vec<_>>(), &mut rng);
                    let p = *g
                        .neighbors(v)
                        .iter()
                        .find(|u| l.levels[i - 1].contains(u))
                        .unwrap();
                    (toggle(&g, v, p), l.clone())
                }
                1 => {
                    // skip edge two levels down
                    let i = rng.gen_range(0..l.levels.len() - 2);
                    let u = pick(&l.levels[i].iter().copied().collect::<Vec<_>>(), &mut rng);
                    let w = pick(&l.levels[i + 2].iter().copied().collect::<Vec<_>>(), &mut rng);
                    (toggle(&g, u, w), l.clone())
                }
                _ => {
                    // break the singleton head
                    let mut levels = l.levels.clone();
                    let v = pick(&levels[1].iter().copied().collect::<Vec<_>>(), &mut rng);
                    levels[1].remove(&v);
                    levels[0].insert(v);
                    (g.clone(), holescope::structures::Levelling::new(levels))
                }
            };
            assert!(!verify_levelling(&mutated_g, &mutated_l).is_empty());
        }

        // shower on the C6 fixture
        let (g, s) = canonical_shower_fixture(ShowerFixture::C6Basic);
        assert!(verify_shower(&g, &s, StabilityCheck::None).violations.is_empty());
        let mut rng = ChaCha8Rng::seed_from_u64(71);
        for _ in 0..rounds {
            let mutated = match rng.gen_range(0..3) {
                0 => toggle(&g, 0, pick(&[1, 2], &mut rng)),
                1 => toggle(&g, 0, pick(&[3, 4, 5], &mut rng)),
                _ => {
                    let (u, v) = pick(&[(3, 4), (4, 5)], &mut rng);
                    toggle(&g, u, v)
                }
            };
            assert!(!verify_shower(&mutated, &s, StabilityCheck::None).violations.is_empty());
        }

        // trellis
        let (g, t) = canonical_extended_trellis(3, 1, false);
        assert_eq!(verify_trellis(&g, &t), vec![]);
        let mut rng = ChaCha8Rng::seed_from_u64(72);
        for _ in 0..rounds {
            let mutated = match rng.gen_range(0..3) {
                0 => {
                    // drop a required spoke edge
                    let r = rng.gen_range(0..3);
                    let j = rng.gen_range(0..=3);
                    let spoke = t.a_map[&(r, j)];
                    let end = if rng.gen_bool(0.5) {
                        t.x[r]
                    } else if j == 0 {
                        t.ext.as_ref().unwrap().a0
                    } else {
                        t.a[j - 1]
                    };
                    toggle(&g, spoke, end)
                }
                1 => toggle(&g, t.x[0], t.x[rng.gen_range(1..3)]),
                _ => toggle(&g, t.a[0], t.a[rng.gen_range(1..3)]),
            };
            assert!(!verify_trellis(&mutated, &t).is_empty());
        }

        // multicover read off a type-1 cable
        let (g, c) = canonical_cable(3, 1, 2);
        let mc = holescope::constructions::cable_type1_to_multicover(&g, &c).unwrap();
        assert_eq!(holescope::structures::verify_multicover(&g, &mc), vec![]);
        let mut rng = ChaCha8Rng::seed_from_u64(73);
        for _ in 0..rounds {
            let i = rng.gen_range(0..mc.covers.len());
            let (x_i, ref n_i) = mc.covers[i];
            let n_vec: Vec<usize> = n_i.iter().copied().collect();
            let base_vec: Vec<usize> = mc.base.iter().copied().collect();
            let mutated = match rng.gen_range(0..4) {
                0 => toggle(&g, x_i, pick(&n_vec, &mut rng)),
                1 => toggle(&g, x_i, pick(&base_vec, &mut rng)),
                2 => {
                    let j = (i + 1) % mc.covers.len();
                    toggle(&g, x_i, mc.covers[j].0)
                }
                _ => {
                    let b = pick(&base_vec, &mut rng);
                    let y = *n_vec.iter().find(|&&y| g.has_edge(y, b)).unwrap();
                    toggle(&g, y, b)
                }
            };
            assert!(!holescope::structures::verify_multicover(&mutated, &mc).is_empty());
        }

        // cable, uniformly type 2
        let (g, c) = canonical_cable(3, 2, 1);
        assert!(classify_cable(&g, &c).is_valid());
        let mut rng = ChaCha8Rng::seed_from_u64(74);
        for _ in 0..rounds {
            let mutated = match rng.gen_range(0..3) {
                0 => {
                    let i = rng.gen_range(0..c.t());
                    let y = pick(&c.y[i].iter().copied().collect::<Vec<_>>(), &mut rng);
                    toggle(&g, c.x[i], y)
                }
                1 => {
                    let b = pick(&c.base.iter().copied().collect::<Vec<_>>(), &mut rng);
                    toggle(&g, pick(&c.x, &mut rng), b)
                }
                _ => {
                    let i = rng.gen_range(0..c.t() - 1);
                    let j = rng.gen_range(i + 1..c.t());
                    let z = pick(&c.z_of(i, j).iter().copied().collect::<Vec<_>>(), &mut rng);
                    let n = pick(&c.n_sets[j].iter().copied().collect::<Vec<_>>(), &mut rng);
                    toggle(&g, z, n)
                }
            };
            let report = classify_cable(&mutated, &c);
            assert!(!report.is_valid() || report.uniform_type() != Some(PairType::Two));
        }

        // w/u-bend
        let (g, b) = wubend_fixture();
        assert!(verify_wubend(&g, &b).violations.is_empty());
        let mut rng = ChaCha8Rng::seed_from_u64(75);
        for _ in 0..rounds {
            let mutated = match rng.gen_range(0..4) {
                0 => toggle(&g, 6, 7),
                1 => toggle(&g, 7, pick(&[3, 4, 5], &mut rng)),
                2 => toggle(&g, 2, 6),
                _ => toggle(&g, 1, 6),
            };
            assert!(!verify_wubend(&mutated, &b).violations.is_empty());
        }

        // sprinkler
        let mut rng = ChaCha8Rng::seed_from_u64(76);
        for _ in 0..rounds {
            let nu = rng.gen_range(2..=4usize);
            let (g, s) = canonical_shower_fixture(ShowerFixture::CombSprinkler(nu));
            assert!(verify_sprinkler(&g, &s, nu));
            let mutated = match rng.gen_range(0..3) {
                0 => {
                    let i = rng.gen_range(1..=nu);
                    toggle(&g, nu + i, nu + i + 1)
                }
                1 => {
                    let i = rng.gen_range(2..=nu + 1);
                    toggle(&g, i - 1, nu + i)
                }
                _ => {
                    // parent loses privacy: extra edge to another base vertex
                    let i = rng.gen_range(2..=nu + 1);
                    let mut j = rng.gen_range(1..=nu + 1);
                    if j == i {
                        j = if i == nu + 1 { 1 } else { i + 1 };
                    }
                    toggle(&g, i - 1, nu + j)
                }
            };
            assert!(!verify_sprinkler(&mutated, &s, nu));
        }
    });
}

#[test]
fn criterion_8_jetset_oracle() {
    criterion(8, "jetset definition oracle", || {
        let (g, s) = canonical_shower_fixture(ShowerFixture::C6Basic);
        assert_eq!(jetset(&g, &s, None, 10).unwrap(), BTreeSet::from([3]));
        let (g, s) = canonical_shower_fixture(ShowerFixture::TwoJet);
        assert_eq!(jetset(&g, &s, None, 10).unwrap(), BTreeSet::from([3, 4]));
        assert_eq!(solidity(&BTreeSet::from([3i64, 4])).max_solid, 2);
        assert_eq!(solidity(&BTreeSet::from([3i64, 6])).max_solid, 1);
    });
}

#[test]
fn criterion_9_five_and_six_hole_procedures() {
    criterion(9, "5-/6-hole procedures", || {
        for g in [cycle(5), petersen(), groetzsch()] {
            let hole = find_5_hole(&g).unwrap().success().unwrap();
            assert_eq!(hole.len(), 5);
            assert!(is_induced_cycle(&g, &hole));
        }
        let mut bipartite: Vec<Graph> = [4usize, 6, 8, 10, 12].iter().map(|&n| cycle(n)).collect();
        bipartite.push(complete_bipartite(3, 3));
        bipartite.push(complete_bipartite(2, 4));
        for g in bipartite {
            assert!(matches!(
                find_5_hole(&g).unwrap(),
                Outcome::ThresholdNotMet { .. }
            ));
        }
        let p = petersen();
        let hole = find_6_hole(&p).unwrap().success().unwrap();
        assert_eq!(hole.len(), 6);
        assert!(is_induced_cycle(&p, &hole));
    });
}

#[test]
fn criterion_10_format_fidelity() {
    criterion(10, "graph6 format fidelity", || {
        assert_eq!(emit_graph6(&cycle(5)), "Dhc");
        for (name, g) in corpus() {
            let text = emit_graph6(&g);
            assert_eq!(parse_graph6(&text).unwrap(), g, "{name}");
        }
    });
}
