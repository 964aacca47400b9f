use proptest::prelude::*;

use spanlab::io::{emit_edge_list, emit_graph6, parse_edge_list, parse_graph6};
use spanlab::verify::enumerate_connected;
use spanlab::Graph;

/// A connected graph on up to `max_n` vertices: a random tree plus random extra edges.
fn connected_graph(max_n: usize) -> impl Strategy<Value = Graph> {
    (1..=max_n).prop_flat_map(|n| {
        let parents: Vec<BoxedStrategy<usize>> = (1..n).map(|v| (0..v).boxed()).collect();
        let slots = n * n.saturating_sub(1) / 2;
        (
            Just(n),
            parents,
            proptest::collection::vec(any::<bool>(), slots),
        )
            .prop_map(|(n, parents, extra)| {
                let mut edges: Vec<(usize, usize)> = parents
                    .iter()
                    .enumerate()
                    .map(|(i, &p)| (p, i + 1))
                    .collect();
                let mut k = 0;
                for v in 1..n {
                    for u in 0..v {
                        if extra[k] && !edges.contains(&(u, v)) {
                            edges.push((u, v));
                        }
                        k += 1;
                    }
                }
                Graph::new(n, edges).unwrap()
            })
    })
}

fn floyd_warshall(g: &Graph) -> Vec<Vec<u32>> {
    let n = g.n();
    let inf = u32::MAX / 2;
    let mut d = vec![vec![inf; n]; n];
    for u in 0..n {
        d[u][u] = 0;
        for &v in g.neighbors(u) {
            d[u][v] = 1;
        }
    }
    for k in 0..n {
        for i in 0..n {
            for j in 0..n {
                d[i][j] = d[i][j].min(d[i][k] + d[k][j]);
            }
        }
    }
    d
}

fn connected_without(g: &Graph, removed: (usize, usize)) -> bool {
    let mut seen = vec![false; g.n()];
    let mut stack = vec![0];
    seen[0] = true;
    while let Some(u) = stack.pop() {
        for &v in g.neighbors(u) {
            if (u.min(v), u.max(v)) != removed && !seen[v] {
                seen[v] = true;
                stack.push(v);
            }
        }
    }
    seen.into_iter().all(|s| s)
}

proptest! {
    #[test]
    fn distances_match_floyd_warshall(g in connected_graph(8)) {
        let fw = floyd_warshall(&g);
        for u in g.vertices() {
            for v in g.vertices() {
                prop_assert_eq!(g.distance(u, v), fw[u][v]);
                prop_assert_eq!(g.distance(u, v), g.distance(v, u));
            }
        }
    }

    #[test]
    fn radius_and_diameter_are_consistent(g in connected_graph(10)) {
        let ecc: Vec<u32> = g.vertices().map(|u| g.eccentricity(u)).collect();
        prop_assert_eq!(g.radius(), *ecc.iter().min().unwrap());
        prop_assert_eq!(g.diameter(), *ecc.iter().max().unwrap());
        prop_assert!(g.diameter() <= 2 * g.radius());
    }

    #[test]
    fn bridges_match_brute_force(g in connected_graph(9)) {
        let brute: Vec<(usize, usize)> = g.edges().filter(|&e| !connected_without(&g, e)).collect();
        prop_assert_eq!(g.bridges(), brute);
    }

    #[test]
    fn bridge_split_partitions_the_vertices(g in connected_graph(9)) {
        for (x, y) in g.bridges() {
            let split = g.split_at_bridge(x, y).unwrap();
            let mut all: Vec<usize> = split.x_vertices.iter().chain(&split.y_vertices).copied().collect();
            all.sort_unstable();
            prop_assert_eq!(all, g.vertices().collect::<Vec<_>>());
            prop_assert_eq!(split.side_x.n() + split.side_y.n(), g.n());
        }
    }

    #[test]
    fn graph6_round_trips(g in connected_graph(20)) {
        let code = emit_graph6(&g);
        prop_assert_eq!(parse_graph6(&code).unwrap(), g);
    }

    #[test]
    fn edge_list_round_trips(g in connected_graph(30)) {
        let text = emit_edge_list(&g);
        let back = parse_edge_list(&text).unwrap();
        prop_assert_eq!(back.n(), g.n());
        prop_assert_eq!(back.edges().collect::<Vec<_>>(), g.edges().collect::<Vec<_>>());
    }
}

/// Decodes the upper triangle bit by bit, without the library.
fn unpack_graph6(code: &str) -> (usize, Vec<(usize, usize)>) {
    let bytes: Vec<u8> = code.bytes().map(|b| b - 63).collect();
    let n = bytes[0] as usize;
    let bits: Vec<bool> = bytes[1..]
        .iter()
        .flat_map(|b| (0..6).rev().map(move |i| b >> i & 1 == 1))
        .collect();
    let mut edges = Vec::new();
    let mut k = 0;
    for v in 1..n {
        for u in 0..v {
            if bits[k] {
                edges.push((u, v));
            }
            k += 1;
        }
    }
    (n, edges)
}

#[test]
fn graph6_agrees_with_independent_unpacker() {
    for code in ["D?{", "A_", "Bw", "Cs", "E@UW", "Ch"] {
        let (n, mut edges) = unpack_graph6(code);
        edges.sort_unstable();
        let g = parse_graph6(code).unwrap();
        assert_eq!(g.n(), n, "{code}");
        assert_eq!(g.edges().collect::<Vec<_>>(), edges, "{code}");
        assert_eq!(emit_graph6(&g), code);
    }
}

#[test]
fn graph6_d_q_brace_is_the_star_on_five() {
    let g = parse_graph6("D?{").unwrap();
    assert_eq!(
        g.edges().collect::<Vec<_>>(),
        vec![(0, 4), (1, 4), (2, 4), (3, 4)]
    );
}

#[test]
fn graph6_round_trips_on_every_connected_graph_up_to_seven() {
    let mut total = 0;
    for n in 1..=7 {
        for g in enumerate_connected(n, false).unwrap() {
            assert_eq!(parse_graph6(&emit_graph6(&g)).unwrap(), g);
            total += 1;
        }
    }
    assert_eq!(total, 1 + 1 + 4 + 38 + 728 + 26704 + 1866256);
}
