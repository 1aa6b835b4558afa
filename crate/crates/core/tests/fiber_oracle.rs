//! The fiber builder against the brute-force reference in `common`.

mod common;

use std::collections::{BTreeMap, BTreeSet};

use common::*;
use koszul::fiber::{fiber_element, fiber_element_with_order, flowchart};
use koszul::{build_fiber, BlockSet, MultiGraph, Sign, TOPartition};
use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

fn graph(vertices: usize, edges: &[(usize, usize)]) -> MultiGraph {
    MultiGraph::new(vertices, edges.to_vec()).unwrap()
}

fn to_partition(n: usize, blocks: &[Vec<usize>]) -> TOPartition {
    TOPartition::new(
        n,
        blocks
            .iter()
            .map(|b| b.iter().copied().collect::<BlockSet>())
            .collect(),
    )
    .unwrap()
}

fn permutations(items: &[usize]) -> Vec<Vec<usize>> {
    if items.len() <= 1 {
        return vec![items.to_vec()];
    }
    let mut out = Vec::new();
    for i in 0..items.len() {
        let mut rest = items.to_vec();
        let head = rest.remove(i);
        for mut tail in permutations(&rest) {
            tail.insert(0, head);
            out.push(tail);
        }
    }
    out
}

#[test]
fn flowcharts_match_vertex_merging() {
    for (name, v, edges) in corpus().into_iter().filter(|(_, _, e)| e.len() <= 5) {
        let g = graph(v, &edges);
        let singletons: Vec<usize> = (0..edges.len()).collect();
        for order in permutations(&(1..=edges.len()).collect::<Vec<_>>()) {
            let (expected, _) = tree_for_order(v, &edges, &order, &singletons);
            assert_eq!(
                flowchart(&g, &order).unwrap().label(),
                expected,
                "{name} {order:?}"
            );
        }
    }
}

#[test]
fn fiber_bases_match_enumeration() {
    for (name, v, edges) in corpus() {
        let fiber = build_fiber(&graph(v, &edges)).unwrap();
        let oracle = fiber_basis(v, &edges);
        for k in 1..=edges.len() {
            let ours: BTreeSet<String> =
                fiber.trees(-(k as i32)).iter().map(|t| t.label()).collect();
            assert_eq!(
                ours,
                oracle.get(&k).cloned().unwrap_or_default(),
                "{name} with {k} blocks"
            );
        }
    }
}

#[test]
fn closed_form_counts() {
    for n in 1..=5 {
        let path: Vec<u128> = (1..=n).map(|k| kirkman_cayley(n + 2, k - 1)).collect();
        let fiber = build_fiber(&MultiGraph::path(n)).unwrap();
        assert_eq!(
            fiber
                .dims_by_blocks()
                .iter()
                .map(|&d| d as u128)
                .collect::<Vec<_>>(),
            path
        );

        let star: Vec<u128> = (1..=n).map(|k| factorial(k) * stirling2(n, k)).collect();
        let fiber = build_fiber(&MultiGraph::star(n)).unwrap();
        assert_eq!(
            fiber
                .dims_by_blocks()
                .iter()
                .map(|&d| d as u128)
                .collect::<Vec<_>>(),
            star
        );
    }
    // Dissections of polygons, counted directly.
    assert_eq!(polygon_dissections(5), vec![1, 5, 5]);
    assert_eq!(polygon_dissections(6), vec![1, 9, 21, 14]);
    assert_eq!(
        build_fiber(&MultiGraph::path(4)).unwrap().dims_by_blocks(),
        polygon_dissections(6)
    );
}

#[test]
fn tree_sign_is_block_order_parity() {
    for (name, v, edges) in corpus().into_iter().filter(|(_, _, e)| e.len() <= 4) {
        let g = graph(v, &edges);
        for blocks in ordered_partitions(edges.len()) {
            let alpha = to_partition(edges.len(), &blocks);
            let e = fiber_element(&g, &alpha).unwrap();
            if e.degenerate {
                continue;
            }
            let mins: Vec<usize> = blocks.iter().map(|b| *b.iter().min().unwrap()).collect();
            let inversions = (0..mins.len())
                .flat_map(|i| (i + 1..mins.len()).map(move |j| (i, j)))
                .filter(|&(i, j)| mins[i] > mins[j])
                .count();
            assert_eq!(
                e.tree.sign(),
                Sign::from_parity(inversions % 2 == 1),
                "{name} {alpha}"
            );
        }
    }
}

fn random_graph(rng: &mut ChaCha8Rng) -> MultiGraph {
    loop {
        let vertices = rng.gen_range(1..=5);
        let n = rng.gen_range(1..=6);
        let edges: Vec<(usize, usize)> = (0..n)
            .map(|_| (rng.gen_range(0..vertices), rng.gen_range(0..vertices)))
            .collect();
        if let Ok(g) = MultiGraph::new(vertices, edges) {
            return g;
        }
    }
}

#[test]
fn refinement_independence_on_random_triples() {
    let mut rng = ChaCha8Rng::seed_from_u64(0x5eed);
    for _ in 0..1000 {
        let g = random_graph(&mut rng);
        let n = g.edge_count();
        let mut elements: Vec<usize> = (1..=n).collect();
        elements.shuffle(&mut rng);
        let mut blocks: Vec<Vec<usize>> = Vec::new();
        for e in elements {
            if blocks.is_empty() || rng.gen_bool(0.5) {
                blocks.push(vec![e]);
            } else {
                let i = rng.gen_range(0..blocks.len());
                blocks[i].push(e);
            }
        }
        let alpha = to_partition(n, &blocks);
        let mut order = Vec::new();
        let mut block_of = Vec::new();
        for (b, block) in blocks.iter().enumerate() {
            let mut shuffled = block.clone();
            shuffled.shuffle(&mut rng);
            block_of.extend(std::iter::repeat_n(b, shuffled.len()));
            order.extend(shuffled);
        }
        let canonical = fiber_element(&g, &alpha).unwrap();
        let refined = fiber_element_with_order(&g, &alpha, &order).unwrap();
        assert_eq!(
            canonical.tree.shape(),
            refined.tree.shape(),
            "{g:?} {alpha} {order:?}"
        );
        assert_eq!(canonical.degenerate, refined.degenerate);
        // Only nondegenerate trees carry a meaningful block order.
        if !refined.degenerate {
            assert_eq!(canonical.tree.sign(), refined.tree.sign());
        }
        let (label, size) = tree_for_order(g.vertex_count(), g.edges(), &order, &block_of);
        assert_eq!(refined.tree.label(), label);
        assert_eq!(refined.degenerate, size != blocks.len());
    }
}

#[test]
fn degenerate_cells_push_forward_to_zero() {
    for (name, v, edges) in corpus() {
        let fiber = build_fiber(&graph(v, &edges)).unwrap();
        assert!(
            fiber.degenerate_push_forward_failures().unwrap().is_empty(),
            "{name}"
        );
    }
}

#[test]
fn star_and_touching_graphs_are_never_degenerate() {
    for (v, edges) in [
        (6, MultiGraph::star(5).edges().to_vec()),
        (2, vec![(0, 1); 4]),
        (1, vec![(0, 0); 3]),
    ] {
        let g = graph(v, &edges);
        for blocks in ordered_partitions(edges.len()) {
            assert!(
                !fiber_element(&g, &to_partition(edges.len(), &blocks))
                    .unwrap()
                    .degenerate
            );
        }
    }
}

#[test]
fn cycle_counts_from_enumeration() {
    // Oracle counts for cycles, so the manifest entries have a second source.
    let manifest = std::fs::read_to_string(format!("{CORPUS}/manifest.csv")).unwrap();
    let mut expected: BTreeMap<(String, i32), usize> = BTreeMap::new();
    for line in manifest.lines().skip(1) {
        let f: Vec<&str> = line.split(',').collect();
        expected.insert(
            (f[0].to_string(), f[1].parse().unwrap()),
            f[2].parse().unwrap(),
        );
    }
    for (name, v, edges) in corpus() {
        for (k, trees) in fiber_basis(v, &edges) {
            assert_eq!(
                expected[&(name.clone(), -(k as i32))],
                trees.len(),
                "{name} k={k}"
            );
        }
    }
}
