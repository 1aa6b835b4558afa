//! Reference implementations shared by the integration tests. Nothing here
//! calls into the library's fiber or rank code.
#![allow(dead_code)]

use std::collections::{BTreeMap, BTreeSet, HashMap};

use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

pub const CORPUS: &str = concat!(env!("CARGO_MANIFEST_DIR"), "/corpus");

/// Rank by textbook Gaussian elimination over ℚ.
pub fn gauss_rank(rows: &[Vec<i64>]) -> usize {
    let mut m: Vec<Vec<BigRational>> = rows
        .iter()
        .map(|r| {
            r.iter()
                .map(|&x| BigRational::from_integer(x.into()))
                .collect()
        })
        .collect();
    let cols = m.first().map_or(0, Vec::len);
    let mut rank = 0;
    for c in 0..cols {
        let Some(p) = (rank..m.len()).find(|&i| !m[i][c].is_zero()) else {
            continue;
        };
        m.swap(rank, p);
        let pivot = m[rank][c].clone();
        for i in 0..m.len() {
            if i != rank && !m[i][c].is_zero() {
                let factor = &m[i][c] / &pivot;
                let pivot_row = m[rank].clone();
                for (x, y) in m[i].iter_mut().zip(&pivot_row).skip(c) {
                    *x -= &factor * y;
                }
            }
        }
        rank += 1;
    }
    rank
}

/// Every ordered set partition of `{1..n}`, blocks listed left to right.
pub fn ordered_partitions(n: usize) -> Vec<Vec<Vec<usize>>> {
    fn go(rest: &[usize], acc: &mut Vec<Vec<usize>>, out: &mut Vec<Vec<Vec<usize>>>) {
        if rest.is_empty() {
            out.push(acc.clone());
            return;
        }
        for mask in 1u32..(1 << rest.len()) {
            let block: Vec<usize> = (0..rest.len())
                .filter(|i| mask >> i & 1 == 1)
                .map(|i| rest[i])
                .collect();
            let remaining: Vec<usize> = (0..rest.len())
                .filter(|i| mask >> i & 1 == 0)
                .map(|i| rest[i])
                .collect();
            acc.push(block);
            go(&remaining, acc, out);
            acc.pop();
        }
    }
    let mut out = Vec::new();
    go(&(1..=n).collect::<Vec<_>>(), &mut Vec::new(), &mut out);
    out
}

/// Parent event of each event when the edges are contracted in `order`,
/// tracking explicitly which original vertices have been merged.
pub fn flow_parents(
    vertices: usize,
    edges: &[(usize, usize)],
    order: &[usize],
) -> Vec<Option<usize>> {
    let mut label: Vec<usize> = (0..vertices).collect();
    let mut last: HashMap<usize, usize> = HashMap::new();
    let mut parent = vec![None; order.len()];
    for (t, &e) in order.iter().enumerate() {
        let (u, v) = edges[e - 1];
        let (a, b) = (label[u], label[v]);
        let mut kids = vec![last.remove(&a)];
        if a != b {
            kids.push(last.remove(&b));
        }
        for k in kids.into_iter().flatten() {
            parent[k] = Some(t);
        }
        for x in label.iter_mut() {
            if *x == b {
                *x = a;
            }
        }
        last.insert(a, t);
    }
    parent
}

/// The block tree of `blocks` (applied left to right, each in increasing
/// order) as a nested label, plus its number of vertices.
pub fn block_tree(
    vertices: usize,
    edges: &[(usize, usize)],
    blocks: &[Vec<usize>],
) -> (String, usize) {
    let mut order = Vec::new();
    let mut block_of = Vec::new();
    for (b, block) in blocks.iter().enumerate() {
        let mut sorted = block.clone();
        sorted.sort();
        block_of.extend(std::iter::repeat_n(b, sorted.len()));
        order.extend(sorted);
    }
    tree_for_order(vertices, edges, &order, &block_of)
}

/// Same as [`block_tree`] for an explicit refinement `order`.
pub fn tree_for_order(
    vertices: usize,
    edges: &[(usize, usize)],
    order: &[usize],
    block_of: &[usize],
) -> (String, usize) {
    let parent = flow_parents(vertices, edges, order);
    let m = order.len();
    // Components of the flow chart after keeping only same-block edges.
    let mut comp: Vec<usize> = (0..m).collect();
    loop {
        let mut changed = false;
        for t in 0..m {
            if let Some(p) = parent[t] {
                if block_of[p] == block_of[t] {
                    let low = comp[t].min(comp[p]);
                    if comp[t] != low || comp[p] != low {
                        comp[t] = low;
                        comp[p] = low;
                        changed = true;
                    }
                }
            }
        }
        if !changed {
            break;
        }
    }
    let mut members: BTreeMap<usize, BTreeSet<usize>> = BTreeMap::new();
    for t in 0..m {
        members.entry(comp[t]).or_default().insert(order[t]);
    }
    let mut up: BTreeMap<usize, usize> = BTreeMap::new();
    let mut root = None;
    for t in 0..m {
        match parent[t] {
            Some(p) if comp[p] != comp[t] => {
                up.insert(comp[t], comp[p]);
            }
            None => root = Some(comp[t]),
            _ => {}
        }
    }
    fn render(
        c: usize,
        members: &BTreeMap<usize, BTreeSet<usize>>,
        up: &BTreeMap<usize, usize>,
    ) -> String {
        let block: Vec<String> = members[&c].iter().map(|e| e.to_string()).collect();
        let mut kids: Vec<usize> = up
            .iter()
            .filter(|(_, &p)| p == c)
            .map(|(&k, _)| k)
            .collect();
        kids.sort_by_key(|k| *members[k].iter().next().unwrap());
        let mut s = format!("({{{}}}", block.join(","));
        for k in kids {
            s.push(' ');
            s.push_str(&render(k, members, up));
        }
        s.push(')');
        s
    }
    (
        render(root.expect("connected graph"), &members, &up),
        members.len(),
    )
}

/// Distinct nondegenerate block trees, grouped by block count.
pub fn fiber_basis(vertices: usize, edges: &[(usize, usize)]) -> BTreeMap<usize, BTreeSet<String>> {
    let mut out: BTreeMap<usize, BTreeSet<String>> = BTreeMap::new();
    for alpha in ordered_partitions(edges.len()) {
        let (label, size) = block_tree(vertices, edges, &alpha);
        if size == alpha.len() {
            out.entry(size).or_default().insert(label);
        }
    }
    out
}

/// Counts of sets of pairwise non-crossing diagonals of a convex `m`-gon,
/// indexed by the number of diagonals.
pub fn polygon_dissections(m: usize) -> Vec<usize> {
    let diagonals: Vec<(usize, usize)> = (0..m)
        .flat_map(|i| (i + 2..m).map(move |j| (i, j)))
        .filter(|&(i, j)| !(i == 0 && j == m - 1))
        .collect();
    let cross = |(a, b): (usize, usize), (c, d): (usize, usize)| {
        (a < c && c < b && b < d) || (c < a && a < d && d < b)
    };
    let mut counts = vec![0; m.saturating_sub(2)];
    for mask in 0u64..(1 << diagonals.len()) {
        let chosen: Vec<_> = (0..diagonals.len())
            .filter(|i| mask >> i & 1 == 1)
            .map(|i| diagonals[i])
            .collect();
        let ok = chosen
            .iter()
            .enumerate()
            .all(|(i, &x)| chosen[i + 1..].iter().all(|&y| !cross(x, y)));
        if ok {
            counts[chosen.len()] += 1;
        }
    }
    counts
}

/// Kirkman–Cayley count of dissections of an `m`-gon by `j` diagonals.
pub fn kirkman_cayley(m: usize, j: usize) -> u128 {
    binom(m - 3, j) * binom(m + j - 1, j) / (j as u128 + 1)
}

pub fn binom(n: usize, k: usize) -> u128 {
    if k > n {
        return 0;
    }
    (0..k).fold(1u128, |acc, i| acc * (n - i) as u128 / (i as u128 + 1))
}

pub fn factorial(n: usize) -> u128 {
    (1..=n as u128).product()
}

pub fn stirling2(n: usize, k: usize) -> u128 {
    let mut s = vec![vec![0u128; k + 1]; n + 1];
    s[0][0] = 1;
    for i in 1..=n {
        for j in 1..=k.min(i) {
            s[i][j] = j as u128 * s[i - 1][j] + s[i - 1][j - 1];
        }
    }
    s[n][k]
}

pub type Edges = Vec<(usize, usize)>;

/// `(name, vertices, edges)` for every corpus file, sorted by name.
pub fn corpus() -> Vec<(String, usize, Edges)> {
    let mut out = Vec::new();
    for entry in std::fs::read_dir(CORPUS).unwrap() {
        let path = entry.unwrap().path();
        if path.extension().is_some_and(|x| x == "edges") {
            let text = std::fs::read_to_string(&path).unwrap();
            let raw: Vec<(usize, usize)> = text
                .lines()
                .map(|l| l.split('#').next().unwrap().trim())
                .filter(|l| !l.is_empty())
                .map(|l| {
                    let mut it = l.split_whitespace().map(|x| x.parse::<usize>().unwrap());
                    (it.next().unwrap(), it.next().unwrap())
                })
                .collect();
            let vertices = raw.iter().map(|&(u, v)| u.max(v)).max().unwrap() + 1;
            out.push((
                path.file_stem().unwrap().to_string_lossy().into_owned(),
                vertices,
                raw,
            ));
        }
    }
    out.sort();
    out
}

pub fn is_one(x: &BigRational) -> bool {
    x.abs().is_one()
}
