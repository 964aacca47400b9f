//! Acceptance suite: one test per exit criterion, each printing a single
//! `criterion N: PASS|FAIL` line. Run with `--nocapture` to see the lines.

use std::time::{Duration, Instant};

use spanlab::families::{FamilySpec, NamedGraph};
use spanlab::io::emit_graph6;
use spanlab::verify::{
    check_theorems, cut_edge_bound, enumerate_connected, is_isomorphic, oracle_span, random_graphs,
    CheckOptions,
};
use spanlab::{
    compute_span, compute_spans, direct_to_lazy, extract_witness_tracks, lazy_to_direct,
    validate_tracks, Graph, MovementRule, Spans,
};

const RANDOM_COUNT: usize = 500;
const RANDOM_SEED: u64 = 42;
const RANDOM_ORDERS: std::ops::RangeInclusive<usize> = 6..=12;
const RANDOM_P: f64 = 0.3;

fn verdict(criterion: u32, title: &str, started: Instant, limit: Duration, failures: &[String]) {
    let elapsed = started.elapsed();
    let in_time = elapsed <= limit;
    let ok = failures.is_empty() && in_time;
    println!(
        "\ncriterion {criterion}: {} {title} ({:.2?}, limit {:?}){}",
        if ok { "PASS" } else { "FAIL" },
        elapsed,
        limit,
        if failures.is_empty() {
            String::new()
        } else {
            format!(" -- {}", failures.join("; "))
        }
    );
    assert!(
        in_time,
        "criterion {criterion} exceeded {limit:?}: {elapsed:?}"
    );
    assert!(
        failures.is_empty(),
        "criterion {criterion} failed: {failures:?}"
    );
}

fn classic_specs() -> Vec<FamilySpec> {
    let mut specs = Vec::new();
    specs.extend((2..=10).map(FamilySpec::Path));
    specs.extend((3..=10).map(FamilySpec::Cycle));
    specs.extend((2..=4).map(FamilySpec::Hypercube));
    for r in 2..=4 {
        specs.extend((2..=4).map(move |s| FamilySpec::CompleteBipartite(r, s)));
    }
    specs.extend((3..=8).map(FamilySpec::Complete));
    specs.extend((4..=8).map(FamilySpec::Star));
    specs.extend((4..=8).map(FamilySpec::Wheel));
    specs
}

/// Closed forms restated here, independent of `FamilySpec::expected_spans`.
fn classic_value(spec: FamilySpec) -> Spans {
    match spec {
        FamilySpec::Path(_) => Spans::new(1, 1, 0),
        FamilySpec::Cycle(n) => {
            let half = (n / 2) as u32;
            Spans::new(half, half, if n % 2 == 1 { half } else { half - 1 })
        }
        FamilySpec::Hypercube(n) => Spans::new(n as u32, n as u32, n as u32 - 1),
        FamilySpec::CompleteBipartite(..) => Spans::new(2, 2, 1),
        FamilySpec::Complete(_) | FamilySpec::Star(_) | FamilySpec::Wheel(_) => Spans::new(1, 1, 1),
        other => panic!("{other} is not a classic family"),
    }
}

fn paramecium_specs() -> Vec<FamilySpec> {
    (3..=9).map(FamilySpec::Paramecium).collect()
}

fn binary_tree_specs() -> Vec<FamilySpec> {
    (1..=4).map(FamilySpec::PerfectBinaryTree).collect()
}

fn exhaustive(max_n: usize) -> impl Iterator<Item = Graph> {
    (1..=max_n).flat_map(|n| enumerate_connected(n, false).expect("order within limit"))
}

fn random_corpus() -> impl Iterator<Item = Graph> {
    random_graphs(RANDOM_COUNT, RANDOM_ORDERS, RANDOM_P, RANDOM_SEED)
}

/// Every graph named in criteria 1 to 6.
fn full_corpus() -> Vec<Graph> {
    let mut corpus: Vec<Graph> = classic_specs()
        .into_iter()
        .chain(paramecium_specs())
        .chain(binary_tree_specs())
        .map(|s| s.generate().unwrap())
        .collect();
    corpus.extend(exhaustive(6));
    corpus.extend(random_corpus());
    corpus.extend(NamedGraph::ALL.iter().map(|g| g.graph()));
    corpus
}

#[test]
fn criterion_01_classic_families() {
    let started = Instant::now();
    let mut failures = Vec::new();
    for spec in classic_specs() {
        let g = spec.generate().unwrap();
        let computed = compute_spans(&g);
        let expected = classic_value(spec);
        if computed != expected {
            failures.push(format!("{spec}: computed {computed}, expected {expected}"));
        }
        if g.radius() != spec.expected_radius().unwrap() {
            failures.push(format!("{spec}: radius {}", g.radius()));
        }
    }
    verdict(
        1,
        "classic family closed forms",
        started,
        Duration::from_secs(60),
        &failures,
    );
}

#[test]
fn criterion_02_paramecium() {
    let started = Instant::now();
    let mut failures = Vec::new();
    for spec in paramecium_specs() {
        let FamilySpec::Paramecium(n) = spec else {
            unreachable!()
        };
        let expected = Spans::new(n.div_ceil(2) as u32, (n / 2) as u32, n.div_ceil(2) as u32);
        let computed = compute_spans(&spec.generate().unwrap());
        if computed != expected {
            failures.push(format!("{spec}: computed {computed}, expected {expected}"));
        }
    }
    verdict(
        2,
        "paramecium PC_3..PC_9",
        started,
        Duration::from_secs(10),
        &failures,
    );
}

#[test]
fn criterion_03_binary_trees() {
    let started = Instant::now();
    let mut failures = Vec::new();
    for spec in binary_tree_specs() {
        let FamilySpec::PerfectBinaryTree(h) = spec else {
            unreachable!()
        };
        let v = h as u32 - 1;
        let expected = Spans::new(v, v, v);
        let computed = compute_spans(&spec.generate().unwrap());
        if computed != expected {
            failures.push(format!("{spec}: computed {computed}, expected {expected}"));
        }
    }
    verdict(
        3,
        "perfect binary trees BT_1..BT_4",
        started,
        Duration::from_secs(30),
        &failures,
    );
}

#[test]
fn criterion_04_relations_exhaustive_and_random() {
    let started = Instant::now();
    let options = CheckOptions::default();
    let exhaustive = check_theorems(exhaustive(6), &options);
    let random = check_theorems(random_corpus(), &options);
    let mut failures = Vec::new();
    for (name, report) in [("exhaustive n<=6", &exhaustive), ("random", &random)] {
        for c in &report.counterexamples {
            failures.push(format!("{name}: {} violates {}", c.graph6, c.property));
        }
    }
    // 1 + 1 + 4 + 38 + 728 + 26704 labeled connected graphs
    if exhaustive.graphs_checked != 27476 {
        failures.push(format!(
            "exhaustive corpus has {} graphs",
            exhaustive.graphs_checked
        ));
    }
    if random.graphs_checked != RANDOM_COUNT {
        failures.push(format!(
            "random corpus has {} graphs",
            random.graphs_checked
        ));
    }
    verdict(
        4,
        "strong >= max and |direct - cartesian| <= 1 on 27476 + 500 graphs",
        started,
        Duration::from_secs(15 * 60),
        &failures,
    );
}

#[test]
fn criterion_05_smallest_order_with_cartesian_above_direct() {
    let started = Instant::now();
    let mut failures = Vec::new();
    let small = check_theorems(exhaustive(5), &CheckOptions::default());
    if !small.cartesian_gt_direct.is_empty() {
        failures.push(format!("n<=5 positives: {:?}", small.cartesian_gt_direct));
    }
    let six = check_theorems(
        enumerate_connected(6, false).unwrap(),
        &CheckOptions::default(),
    );
    let pc3 = FamilySpec::Paramecium(3).generate().unwrap();
    let pc3_found = six.cartesian_gt_direct.iter().any(|code| {
        let g = spanlab::io::parse_graph6(code).unwrap();
        is_isomorphic(&g, &pc3).unwrap()
    });
    if !pc3_found {
        failures.push("PC_3 not among the order-6 positives".into());
    }
    let spans = compute_spans(&pc3);
    if (spans.cartesian, spans.direct) != (2, 1) {
        failures.push(format!("PC_3 spans {spans}"));
    }
    verdict(
        5,
        "no order <= 5 graph has cartesian > direct; PC_3 does",
        started,
        Duration::from_secs(15 * 60),
        &failures,
    );
}

#[test]
fn criterion_06_order_five_radius_two() {
    let started = Instant::now();
    let mut failures = Vec::new();
    let classes: Vec<Graph> = enumerate_connected(5, true)
        .unwrap()
        .filter(|g| g.radius() == 2)
        .collect();
    if classes.len() != 10 {
        failures.push(format!("{} classes of radius 2", classes.len()));
    }
    let mut printed: Vec<(String, Graph, (u32, u32))> = vec![
        (
            "P_5".into(),
            FamilySpec::Path(5).generate().unwrap(),
            (1, 0),
        ),
        (
            "C_5".into(),
            FamilySpec::Cycle(5).generate().unwrap(),
            (2, 2),
        ),
    ];
    printed.extend(NamedGraph::FIG7.iter().map(|g| {
        (
            g.id().to_string(),
            g.graph(),
            g.printed_direct_cartesian()
                .expect("fig7 graphs carry span labels"),
        )
    }));
    // Each class must match exactly one printed graph, and vice versa.
    let mut used = vec![false; printed.len()];
    for class in &classes {
        let matches: Vec<usize> = (0..printed.len())
            .filter(|&i| is_isomorphic(class, &printed[i].1).unwrap())
            .collect();
        let [i] = matches[..] else {
            failures.push(format!(
                "{} matches {} printed graphs",
                emit_graph6(class),
                matches.len()
            ));
            continue;
        };
        used[i] = true;
        let spans = compute_spans(class);
        let (direct, cartesian) = printed[i].2;
        if (spans.direct, spans.cartesian) != (direct, cartesian) {
            failures.push(format!(
                "{}: computed ({}, {}), printed ({direct}, {cartesian})",
                printed[i].0, spans.direct, spans.cartesian
            ));
        }
    }
    for (i, u) in used.iter().enumerate() {
        if !u {
            failures.push(format!("{} matched no class", printed[i].0));
        }
    }
    verdict(
        6,
        "order-5 radius-2 classes and their printed span pairs",
        started,
        Duration::from_secs(5),
        &failures,
    );
}

#[test]
fn criterion_07_oracle_equivalence() {
    let started = Instant::now();
    let mut failures = Vec::new();
    let mut checked = 0;
    for g in exhaustive(5) {
        for rule in MovementRule::ALL {
            let engine = compute_span(&g, rule).value;
            let oracle = oracle_span(&g, rule).unwrap();
            checked += 1;
            if engine != oracle {
                failures.push(format!(
                    "{} {rule}: engine {engine}, oracle {oracle}",
                    emit_graph6(&g)
                ));
            }
        }
    }
    // 3 rules x (1 + 1 + 4 + 38 + 728) graphs
    if checked != 3 * 772 {
        failures.push(format!("only {checked} comparisons"));
    }
    verdict(
        7,
        "engine = oracle on all connected graphs n <= 5",
        started,
        Duration::from_secs(5 * 60),
        &failures,
    );
}

#[test]
fn criterion_08_witness_validity() {
    let started = Instant::now();
    let mut failures = Vec::new();
    let corpus = full_corpus();
    for g in &corpus {
        for rule in MovementRule::ALL {
            let report = compute_span(g, rule);
            let tracks = extract_witness_tracks(g, &report);
            let v = validate_tracks(g, &tracks).unwrap();
            if !(v.is_valid() && v.min_distance == report.value && tracks.rule() == rule) {
                failures.push(format!(
                    "{} {rule}: {v:?} for span {}",
                    emit_graph6(g),
                    report.value
                ));
            }
        }
    }
    verdict(
        8,
        &format!("witnesses valid on {} graphs x 3 rules", corpus.len()),
        started,
        Duration::from_secs(15 * 60),
        &failures,
    );
}

#[test]
fn criterion_09_transformation_contracts() {
    let started = Instant::now();
    let mut failures = Vec::new();
    let corpus = full_corpus();
    for g in &corpus {
        let active = compute_span(g, MovementRule::Active);
        let tracks = extract_witness_tracks(g, &active);
        let lazy = direct_to_lazy(g, &tracks).unwrap();
        let v = validate_tracks(g, &lazy).unwrap();
        if !(lazy.rule() == MovementRule::Lazy
            && v.is_valid()
            && v.min_distance + 1 >= active.value
            && lazy.len() == 2 * tracks.len() - 1)
        {
            failures.push(format!("{} direct->lazy: {v:?}", emit_graph6(g)));
        }

        let lazy_report = compute_span(g, MovementRule::Lazy);
        let tracks = extract_witness_tracks(g, &lazy_report);
        let direct = lazy_to_direct(g, &tracks).unwrap();
        let v = validate_tracks(g, &direct).unwrap();
        if !(direct.rule() == MovementRule::Active
            && v.is_valid()
            && v.min_distance + 1 >= lazy_report.value)
        {
            failures.push(format!("{} lazy->direct: {v:?}", emit_graph6(g)));
        }
    }
    verdict(
        9,
        &format!(
            "track transformations lose at most 1 on {} graphs",
            corpus.len()
        ),
        started,
        Duration::from_secs(15 * 60),
        &failures,
    );
}

#[test]
fn criterion_10_bounds() {
    let started = Instant::now();
    let mut failures = Vec::new();
    let corpus = full_corpus();
    let mut bridged = 0;
    for g in &corpus {
        let strong = compute_span(g, MovementRule::Traditional).value;
        if strong > g.radius() {
            failures.push(format!("{}: strong {strong} > radius", emit_graph6(g)));
        }
        if let Ok(Some(cut)) = cut_edge_bound(g) {
            bridged += 1;
            if strong > cut {
                failures.push(format!(
                    "{}: strong {strong} > cut bound {cut}",
                    emit_graph6(g)
                ));
            }
        }
    }
    if bridged == 0 {
        failures.push("no bridged graphs in the corpus".into());
    }
    for (fig, expected) in [
        (NamedGraph::Fig6Left, (2, 1)),
        (NamedGraph::Fig6Right, (3, 4)),
    ] {
        let g = fig.graph();
        let got = (g.radius(), cut_edge_bound(&g).unwrap().unwrap_or(u32::MAX));
        if got != expected {
            failures.push(format!(
                "{}: (rad, cut) = {got:?}, expected {expected:?}",
                fig.id()
            ));
        }
    }
    // The two bounds are incomparable: each fig6 graph has one strictly below the other.
    let left = NamedGraph::Fig6Left.graph();
    let right = NamedGraph::Fig6Right.graph();
    if !(cut_edge_bound(&left).unwrap().unwrap() < left.radius()
        && cut_edge_bound(&right).unwrap().unwrap() > right.radius())
    {
        failures.push("fig6 graphs do not show incomparability".into());
    }
    verdict(
        10,
        &format!("radius and cut-edge bounds dominate the strong span ({bridged} bridged graphs)"),
        started,
        Duration::from_secs(15 * 60),
        &failures,
    );
}
