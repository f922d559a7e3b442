//! Stable graphs and spin weightings.

use std::collections::{BTreeSet, HashMap};
use std::sync::{Arc, OnceLock, RwLock};

use crate::error::{Error, Result};

/// A connected stable graph with `n` numbered leaves.
///
/// Half-edges are numbered: leaves `0..n`, then edge `e` contributes `n+2e` at its
/// first vertex and `n+2e+1` at its second.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct StableGraph {
    pub genera: Vec<u32>,
    /// Vertex pairs `(u, v)` with `u ≤ v`, sorted; loops have `u = v`.
    pub edges: Vec<(usize, usize)>,
    /// Vertex carrying each leaf.
    pub leaves: Vec<usize>,
    aut: u64,
}

impl StableGraph {
    pub fn num_vertices(&self) -> usize {
        self.genera.len()
    }

    pub fn num_half_edges(&self) -> usize {
        self.leaves.len() + 2 * self.edges.len()
    }

    pub fn h1(&self) -> u32 {
        (self.edges.len() + 1 - self.genera.len()) as u32
    }

    pub fn genus(&self) -> u32 {
        self.genera.iter().sum::<u32>() + self.h1()
    }

    pub fn aut_order(&self) -> u64 {
        self.aut
    }

    /// Vertex of half-edge `h`.
    pub fn vertex_of(&self, h: usize) -> usize {
        let n = self.leaves.len();
        if h < n {
            return self.leaves[h];
        }
        let (u, v) = self.edges[(h - n) / 2];
        if (h - n) % 2 == 0 {
            u
        } else {
            v
        }
    }

    pub fn half_edges_at(&self, v: usize) -> Vec<usize> {
        (0..self.num_half_edges())
            .filter(|&h| self.vertex_of(h) == v)
            .collect()
    }

    /// `3g(v) − 3 + n(v)`.
    pub fn vertex_dimension(&self, v: usize) -> u32 {
        (3 * self.genera[v] as i64 - 3 + self.half_edges_at(v).len() as i64) as u32
    }
}

fn permutations(k: usize) -> Vec<Vec<usize>> {
    if k == 0 {
        return vec![vec![]];
    }
    let mut out = Vec::new();
    for p in permutations(k - 1) {
        for pos in 0..k {
            let mut q = p.clone();
            q.insert(pos, k - 1);
            out.push(q);
        }
    }
    out
}

type Encoding = (Vec<u32>, Vec<(usize, usize)>, Vec<usize>);

fn encode(genera: &[u32], edges: &[(usize, usize)], leaves: &[usize], perm: &[usize]) -> Encoding {
    let mut g = vec![0; genera.len()];
    for (v, &p) in perm.iter().enumerate() {
        g[p] = genera[v];
    }
    let mut e: Vec<(usize, usize)> = edges
        .iter()
        .map(|&(u, v)| {
            let (a, b) = (perm[u], perm[v]);
            (a.min(b), a.max(b))
        })
        .collect();
    e.sort_unstable();
    (g, e, leaves.iter().map(|&v| perm[v]).collect())
}

fn factorial(n: usize) -> u64 {
    (1..=n as u64).product()
}

fn automorphisms(enc: &Encoding, perms: &[Vec<usize>]) -> u64 {
    let (genera, edges, leaves) = enc;
    let mut lifts = 1u64;
    let mut i = 0;
    while i < edges.len() {
        let j = (i..edges.len())
            .take_while(|&j| edges[j] == edges[i])
            .count();
        lifts *= factorial(j);
        if edges[i].0 == edges[i].1 {
            lifts *= 1 << j;
        }
        i += j;
    }
    let fixing = perms
        .iter()
        .filter(|p| &encode(genera, edges, leaves, p) == enc)
        .count() as u64;
    fixing * lifts
}

fn connected(k: usize, edges: &[(usize, usize)]) -> bool {
    let mut seen = vec![false; k];
    let mut stack = vec![0];
    seen[0] = true;
    while let Some(x) = stack.pop() {
        for &(u, v) in edges {
            for (a, b) in [(u, v), (v, u)] {
                if a == x && !seen[b] {
                    seen[b] = true;
                    stack.push(b);
                }
            }
        }
    }
    seen.into_iter().all(|s| s)
}

fn multisets(
    pairs: &[(usize, usize)],
    count: usize,
    start: usize,
    cur: &mut Vec<(usize, usize)>,
    out: &mut Vec<Vec<(usize, usize)>>,
) {
    if count == 0 {
        out.push(cur.clone());
        return;
    }
    for i in start..pairs.len() {
        cur.push(pairs[i]);
        multisets(pairs, count - 1, i, cur, out);
        cur.pop();
    }
}

fn genus_vectors(k: usize, budget: u32) -> Vec<Vec<u32>> {
    if k == 0 {
        return vec![vec![]];
    }
    let mut out = Vec::new();
    for first in 0..=budget {
        for mut rest in genus_vectors(k - 1, budget - first) {
            rest.insert(0, first);
            out.push(rest);
        }
    }
    out
}

fn cache() -> &'static RwLock<HashMap<(u32, usize), Arc<Vec<StableGraph>>>> {
    static CACHE: OnceLock<RwLock<HashMap<(u32, usize), Arc<Vec<StableGraph>>>>> = OnceLock::new();
    CACHE.get_or_init(|| RwLock::new(HashMap::new()))
}

/// All stable graphs of type `(g, n)` up to isomorphism, for `g ≤ 2`, `1 ≤ n ≤ 3`.
pub fn enumerate_stable_graphs(g: u32, n: usize) -> Result<Arc<Vec<StableGraph>>> {
    if n == 0 || n > 3 || g > 2 || 2 * g as i64 - 2 + n as i64 <= 0 {
        return Err(Error::Scope(format!(
            "stable graphs are enumerated for g ≤ 2, 1 ≤ n ≤ 3; got ({g},{n})"
        )));
    }
    if let Some(list) = cache().read().expect("graph cache").get(&(g, n)) {
        return Ok(list.clone());
    }
    let euler = (2 * g + n as u32 - 2) as usize;
    let mut found: BTreeSet<Encoding> = BTreeSet::new();
    for k in 1..=euler {
        let perms = permutations(k);
        let pairs: Vec<(usize, usize)> = (0..k).flat_map(|u| (u..k).map(move |v| (u, v))).collect();
        for genera in genus_vectors(k, g) {
            let gsum: u32 = genera.iter().sum();
            let edge_count = (g - gsum) as usize + k - 1;
            let mut edge_sets = Vec::new();
            multisets(&pairs, edge_count, 0, &mut Vec::new(), &mut edge_sets);
            for edges in edge_sets {
                if !connected(k, &edges) {
                    continue;
                }
                let mut valence = vec![0usize; k];
                for &(u, v) in &edges {
                    valence[u] += 1;
                    valence[v] += 1;
                }
                for code in 0..k.pow(n as u32) {
                    let leaves: Vec<usize> = (0..n).map(|i| code / k.pow(i as u32) % k).collect();
                    let mut val = valence.clone();
                    for &v in &leaves {
                        val[v] += 1;
                    }
                    if (0..k).any(|v| 2 * genera[v] as usize + val[v] < 3) {
                        continue;
                    }
                    let canonical = perms
                        .iter()
                        .map(|p| encode(&genera, &edges, &leaves, p))
                        .min()
                        .expect("k ≥ 1");
                    found.insert(canonical);
                }
            }
        }
    }
    let list: Vec<StableGraph> = found
        .into_iter()
        .map(|enc| {
            let perms = permutations(enc.0.len());
            let aut = automorphisms(&enc, &perms);
            StableGraph {
                genera: enc.0,
                edges: enc.1,
                leaves: enc.2,
                aut,
            }
        })
        .collect();
    let list = Arc::new(list);
    cache()
        .write()
        .expect("graph cache")
        .insert((g, n), list.clone());
    Ok(list)
}

/// Weights `w: half-edges → {0,…,s−1}` satisfying the vertex, edge and leaf conditions.
pub fn enumerate_spin_weightings(graph: &StableGraph, a: &[u32], s: u32) -> Vec<Vec<u32>> {
    let n = graph.leaves.len();
    let e = graph.edges.len();
    let mut out = Vec::new();
    if a.len() != n || a.iter().any(|&x| x >= s) {
        return out;
    }
    let total = (s as usize).pow(e as u32);
    for code in 0..total {
        let mut w = a.to_vec();
        for i in 0..e {
            let x = (code / (s as usize).pow(i as u32) % s as usize) as u32;
            w.push(x);
            w.push((2 * s - 1 - x) % s);
        }
        let ok = (0..graph.num_vertices()).all(|v| {
            let sum: i64 = graph.half_edges_at(v).iter().map(|&h| w[h] as i64).sum();
            (sum - graph.genera[v] as i64 + 1).rem_euclid(s as i64) == 0
        });
        if ok {
            out.push(w);
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn graph_counts() {
        assert_eq!(enumerate_stable_graphs(0, 3).unwrap().len(), 1);
        let g11 = enumerate_stable_graphs(1, 1).unwrap();
        assert_eq!(g11.len(), 2);
        let mut auts: Vec<u64> = g11.iter().map(|g| g.aut_order()).collect();
        auts.sort_unstable();
        assert_eq!(auts, vec![1, 2]);
        assert_eq!(enumerate_stable_graphs(1, 2).unwrap().len(), 5);
        assert!(enumerate_stable_graphs(2, 0).is_err());
        for (g, n) in [(1, 3), (2, 1), (2, 2)] {
            for graph in enumerate_stable_graphs(g, n).unwrap().iter() {
                assert_eq!(graph.genus(), g);
                assert!((0..graph.num_vertices())
                    .all(|v| 2 * graph.genera[v] + graph.half_edges_at(v).len() as u32 >= 3));
            }
        }
    }

    #[test]
    fn weightings_on_genus_one() {
        let graphs = enumerate_stable_graphs(1, 1).unwrap();
        let lp = graphs.iter().find(|g| g.edges.len() == 1).unwrap();
        let single = graphs.iter().find(|g| g.edges.is_empty()).unwrap();
        for s in 1..5 {
            let ws = enumerate_spin_weightings(lp, &[0], s);
            assert_eq!(ws.len(), s as usize);
            assert!(ws.iter().all(|w| (w[1] + w[2]) == s - 1));
            if s > 1 {
                assert!(enumerate_spin_weightings(single, &[1], s).is_empty());
                for graph in graphs.iter() {
                    assert!(enumerate_spin_weightings(graph, &[1], s).is_empty());
                }
            }
        }
    }
}
