use std::collections::BTreeSet;

use proptest::prelude::*;

use necklace_memory::encoder::{
    constraint_set, source_target, target_source, ConstraintKind, GateString, PearlNecklace,
};
use necklace_memory::gf2::{
    brute_force_min_memory, conv_matrix, default_margin, interior_equal, pearl_matrix, BruteForce,
};
use necklace_memory::graph::{
    build_graph, build_negative, build_positive, edge_count_bound_check, CommutativityGraph, Edge,
    EdgeOrigin, Mode,
};
use necklace_memory::longest_path::{
    conv_encoder_gates, frame_assignment, longest_path_weights, minimal_memory,
};
use necklace_memory::parser::{parse, render};

fn gate(
    max_width: u32,
    degrees: std::ops::RangeInclusive<i64>,
) -> impl Strategy<Value = (u32, u32, i64)> {
    (1..=max_width, 1..=max_width, degrees)
}

fn encoder_with(
    max_strings: usize,
    degrees: std::ops::RangeInclusive<i64>,
    distinct_indices: bool,
) -> impl Strategy<Value = PearlNecklace> {
    let min_width = if distinct_indices { 2 } else { 1 };
    (min_width..=4u32).prop_flat_map(move |width| {
        proptest::collection::vec(gate(width, degrees.clone()), 0..=max_strings).prop_map(
            move |raw| {
                let strings = raw
                    .into_iter()
                    .filter(|&(a, b, _)| !(distinct_indices && a == b))
                    .filter_map(|(a, b, l)| GateString::new(a, b, l).ok())
                    .collect();
                PearlNecklace::new(strings, width).unwrap()
            },
        )
    })
}

fn small_encoder() -> impl Strategy<Value = PearlNecklace> {
    encoder_with(6, -3..=3, false)
}

/// Placement of gate `k` at offset `w`, written out from the frame
/// conventions rather than taken from the library.
fn place(l: i64, w: i64) -> (i64, i64) {
    if l >= 0 {
        (w + l, w)
    } else {
        (w, w - l)
    }
}

/// Plain enumeration of all offset vectors, with the pair conditions
/// re-derived from the gate fields.
fn exhaustive_min_memory(enc: &PearlNecklace, bound: i64) -> Option<i64> {
    let gs = enc.strings();
    let n = gs.len();
    let mut w = vec![0i64; n];
    let mut best: Option<i64> = None;
    loop {
        let frames: Vec<(i64, i64)> = gs
            .iter()
            .zip(&w)
            .map(|(g, &w)| place(g.degree(), w))
            .collect();
        let mut ok = true;
        for i in 0..n {
            for j in i + 1..n {
                if gs[i].source() == gs[j].target() && frames[i].0 > frames[j].1 {
                    ok = false;
                }
                if gs[i].target() == gs[j].source() && frames[i].1 > frames[j].0 {
                    ok = false;
                }
            }
        }
        if ok {
            let m = frames.iter().map(|&(s, t)| s.max(t)).max().unwrap_or(0);
            best = Some(best.map_or(m, |b| b.min(m)));
        }
        let mut k = 0;
        loop {
            if k == n {
                return best;
            }
            if w[k] < bound {
                w[k] += 1;
                break;
            }
            w[k] = 0;
            k += 1;
        }
    }
}

/// Longest START->v weight for every vertex by enumerating every path.
fn enumerate_longest(g: &CommutativityGraph) -> Vec<Option<i64>> {
    let mut out_edges: Vec<Vec<&Edge>> = vec![Vec::new(); g.vertex_count()];
    for e in g.edges() {
        out_edges[e.from].push(e);
    }
    let mut best = vec![None; g.vertex_count()];
    fn walk(v: usize, acc: i64, out_edges: &[Vec<&Edge>], best: &mut [Option<i64>]) {
        if best[v].is_none_or(|b| acc > b) {
            best[v] = Some(acc);
        }
        for e in &out_edges[v] {
            walk(e.to, acc + e.weight, out_edges, best);
        }
    }
    walk(0, 0, &out_edges, &mut best);
    best
}

fn random_dag() -> impl Strategy<Value = CommutativityGraph> {
    (0usize..=8).prop_flat_map(|gates| {
        let last = gates + 1;
        proptest::collection::vec((0..=last, 0..=last, -4i64..=4), 0..=3 * (gates + 1)).prop_map(
            move |raw| {
                let edges = raw
                    .into_iter()
                    .filter(|&(a, b, _)| a != b)
                    .map(|(a, b, weight)| Edge {
                        from: a.min(b),
                        to: a.max(b),
                        weight,
                        origin: EdgeOrigin::Pair(ConstraintKind::SourceTarget),
                    })
                    .collect();
                CommutativityGraph::from_edges(gates, edges, Mode::Mixed).unwrap()
            },
        )
    })
}

fn edge_key(e: &Edge) -> (usize, usize, i64) {
    (e.from, e.to, e.weight)
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(256))]

    #[test]
    fn dp_matches_path_enumeration_on_random_dags(g in random_dag()) {
        let dp = longest_path_weights(&g);
        let truth = enumerate_longest(&g);
        for (v, reach) in truth.iter().enumerate().take(g.end()).skip(1) {
            if let Some(w) = *reach {
                prop_assert_eq!(dp.weight(v), w, "vertex {}", v);
            }
        }
        prop_assert_eq!(dp.end_weight(), truth[g.end()].unwrap_or(0));
        prop_assert_eq!(dp.relaxations, g.edges().len());
    }

    #[test]
    fn dp_matches_path_enumeration_on_encoder_graphs(enc in small_encoder()) {
        let g = build_graph(&enc);
        let dp = longest_path_weights(&g);
        let truth = enumerate_longest(&g);
        for (v, &reach) in truth.iter().enumerate().take(g.end()) {
            prop_assert_eq!(Some(dp.weight(v)), reach);
        }
        // Without gates END has no incoming edge and is pinned to 0.
        prop_assert_eq!(dp.end_weight(), truth[g.end()].unwrap_or(0));
        let path = dp.path_to_end();
        prop_assert_eq!(path.first(), Some(&g.start()));
        prop_assert_eq!(path.last(), Some(&g.end()));
        if enc.is_empty() {
            return Ok(());
        }
        let along: i64 = path
            .windows(2)
            .map(|p| {
                g.edges()
                    .iter()
                    .filter(|e| e.from == p[0] && e.to == p[1])
                    .map(|e| e.weight)
                    .max()
                    .expect("consecutive path vertices are joined by an edge")
            })
            .sum();
        prop_assert_eq!(along, dp.end_weight());
    }

    #[test]
    fn assignment_is_feasible_and_achieves_memory(enc in small_encoder()) {
        let fa = frame_assignment(&enc);
        let pairs = fa.pairs();
        for c in constraint_set(&enc) {
            prop_assert!(c.holds(&pairs), "{:?} fails", c);
        }
        for (g, f) in enc.strings().iter().zip(&fa.frames) {
            prop_assert!(f.w >= 0);
            prop_assert_eq!(place(g.degree(), f.w), (f.sigma, f.tau));
        }
        let top = pairs.iter().map(|&(s, t)| s.max(t)).max().unwrap_or(0);
        prop_assert_eq!(top, fa.memory);
        prop_assert_eq!(fa.memory_qubits, fa.memory * enc.frame_width() as i64);
        prop_assert_eq!(fa.memory, minimal_memory(&enc));
    }

    #[test]
    fn graph_memory_is_optimal(enc in small_encoder()) {
        let m = minimal_memory(&enc);
        prop_assert_eq!(brute_force_min_memory(&enc, m + 1), BruteForce::Minimum(m));
        if m > 0 {
            let tighter = brute_force_min_memory(&enc, m - 1).min_or_none();
            prop_assert!(tighter.is_none_or(|t| t >= m));
        }
    }

    #[test]
    fn library_brute_force_matches_plain_enumeration(enc in encoder_with(4, -3..=3, false)) {
        let m = minimal_memory(&enc);
        let bound = m + 1;
        let truth = exhaustive_min_memory(&enc, bound);
        prop_assert_eq!(truth, Some(m));
        prop_assert_eq!(brute_force_min_memory(&enc, bound), BruteForce::Minimum(m));
    }

    #[test]
    fn appending_never_lowers_memory(
        enc in small_encoder(),
        extra in gate(4, -3..=3),
    ) {
        let (a, b, l) = extra;
        if let Ok(g) = GateString::new(a.min(enc.frame_width().max(1)), b.min(enc.frame_width().max(1)), l) {
            if let Ok(longer) = enc.appended(g) {
                prop_assert!(minimal_memory(&longer) >= minimal_memory(&enc));
            }
        }
    }

    #[test]
    fn conv_form_is_stream_equivalent(enc in small_encoder()) {
        let fa = frame_assignment(&enc);
        let margin = default_margin(&enc, fa.memory).max(1);
        let frames = 3 * margin;
        let pearl = pearl_matrix(&enc, frames);
        let conv = conv_matrix(&enc, &conv_encoder_gates(&enc, &fa), fa.memory, frames).unwrap();
        prop_assert!(interior_equal(&pearl, &conv, margin).unwrap());
        prop_assert!(pearl.matrix().is_invertible());
        prop_assert!(conv.matrix().is_invertible());
    }

    #[test]
    fn constraints_match_non_commutation(
        first in gate(4, -3..=3),
        second in gate(4, -3..=3),
    ) {
        let (g1, g2) = match (GateString::new(first.0, first.1, first.2), GateString::new(second.0, second.1, second.2)) {
            (Ok(g1), Ok(g2)) if g1.source() != g1.target() && g2.source() != g2.target() => (g1, g2),
            _ => return Ok(()),
        };
        let forward = PearlNecklace::new(vec![g1, g2], 4).unwrap();
        let backward = PearlNecklace::new(vec![g2, g1], 4).unwrap();
        let commute = (1..=8).all(|f| pearl_matrix(&forward, f) == pearl_matrix(&backward, f));
        prop_assert_eq!(constraint_set(&forward).is_empty(), commute);
    }

    #[test]
    fn render_then_parse_is_identity(enc in small_encoder()) {
        let text = render(&enc);
        let back = parse(&text).unwrap();
        prop_assert_eq!(&back, &enc);
        prop_assert_eq!(render(&back).content, text.content);
    }

    #[test]
    fn gate_edges_and_constraints_correspond(enc in small_encoder()) {
        let g = build_graph(&enc);
        let constraints: BTreeSet<_> = constraint_set(&enc)
            .into_iter()
            .map(|c| (c.earlier, c.later, c.kind))
            .collect();
        let pairs_with_edges: BTreeSet<_> = g.gate_edges().map(|e| (e.from, e.to)).collect();
        for e in g.gate_edges() {
            let EdgeOrigin::Pair(kind) = e.origin else { unreachable!() };
            prop_assert!(constraints.contains(&(e.from, e.to, kind)));
        }
        for &(i, j, _) in &constraints {
            prop_assert!(pairs_with_edges.contains(&(i, j)));
        }
        prop_assert!(edge_count_bound_check(&g, enc.len()));
        prop_assert_eq!(g.pair_inspections(), (enc.len() * enc.len().saturating_sub(1) / 2) as u64);
    }

    #[test]
    fn predicates_read_only_indices(
        (a1, b1, l1) in gate(5, -3..=3),
        (a2, b2, l2) in gate(5, -3..=3),
        (m1, m2) in (-5i64..=5, -5i64..=5),
    ) {
        let mk = |a, b, l| GateString::new(a, b, l).or_else(|_| GateString::new(a, b, 1)).unwrap();
        let (g1, g2) = (mk(a1, b1, l1), mk(a2, b2, l2));
        let (h1, h2) = (mk(a1, b1, m1), mk(a2, b2, m2));
        prop_assert_eq!(source_target(&g1, &g2), a1 == b2);
        prop_assert_eq!(target_source(&g1, &g2), b1 == a2);
        prop_assert_eq!(source_target(&g1, &g2), source_target(&h1, &h2));
        prop_assert_eq!(target_source(&g1, &g2), target_source(&h1, &h2));
    }

    #[test]
    fn mixed_builder_specializes(
        pos in encoder_with(8, 0..=3, false),
        neg in encoder_with(8, -3..=-1, false),
    ) {
        let key = |g: &CommutativityGraph| g.edges().iter().map(edge_key).collect::<Vec<_>>();
        prop_assert_eq!(key(&build_graph(&pos)), key(&build_positive(&pos).unwrap()));
        prop_assert_eq!(key(&build_graph(&neg)), key(&build_negative(&neg).unwrap()));
    }
}

trait MinOrNone {
    fn min_or_none(self) -> Option<i64>;
}

impl MinOrNone for BruteForce {
    fn min_or_none(self) -> Option<i64> {
        match self {
            BruteForce::Minimum(m) => Some(m),
            BruteForce::ExceedsBound => None,
        }
    }
}

#[test]
fn edge_bound_holds_at_fifty_strings() {
    use necklace_memory::random::{random_encoder_of, EncoderFamily};
    use rand::SeedableRng;
    let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(50);
    let fam = EncoderFamily::small();
    for width in [1, 2, 4] {
        let enc = random_encoder_of(&mut rng, &fam, width, 50);
        let g = build_graph(&enc);
        assert!(edge_count_bound_check(&g, 50));
        assert_eq!(g.pair_inspections(), 50 * 49 / 2);
    }
}
