use std::collections::{HashMap, VecDeque};
use std::fmt::Write as _;

use serde_json::json;

use super::partition::{compare, partitions, MajorizationRelation, Partition};
use crate::error::{Error, Result};

/// Largest `N` for which the full lattice is materialized.
pub const LATTICE_MAX_N: usize = 30;

/// Partitions reachable from `p` by moving one box to a higher row.
fn upward_moves(p: &Partition) -> Vec<Partition> {
    let parts = p.parts();
    let mut out = Vec::new();
    for j in 1..parts.len() {
        // the donor row must stay at least as long as the row below it
        if parts[j] - 1 < parts.get(j + 1).copied().unwrap_or(0) {
            continue;
        }
        for i in 0..j {
            if i > 0 && parts[i - 1] < parts[i] + 1 {
                continue;
            }
            let mut next = parts.to_vec();
            next[i] += 1;
            next[j] -= 1;
            if next[j] == 0 {
                next.pop();
            }
            out.push(Partition::from_sorted(next));
        }
    }
    out
}

/// Partitions covering `p` in the dominance order.
///
/// A single-box move is a cover unless another move from `p` lands strictly
/// between `p` and its target.
pub fn covers(p: &Partition) -> Vec<Partition> {
    let moves = upward_moves(p);
    moves
        .iter()
        .filter(|mu| {
            !moves
                .iter()
                .any(|nu| nu != *mu && mu.dominates(nu))
        })
        .cloned()
        .collect()
}

/// Hasse diagram of the dominance order on partitions of `N`.
#[derive(Debug, Clone)]
pub struct DominanceLattice {
    n: usize,
    nodes: Vec<Partition>,
    edges: Vec<(usize, usize)>,
    index: HashMap<Partition, usize>,
}

/// Builds the dominance lattice of all partitions of `n`.
///
/// Edges point from the majorized partition to the one covering it.
pub fn build_lattice(n: usize) -> Result<DominanceLattice> {
    if n == 0 || n > LATTICE_MAX_N {
        return Err(Error::SizeLimit(format!(
            "lattice size must be in 1..={LATTICE_MAX_N}, got {n}"
        )));
    }
    let nodes = partitions(n);
    let index: HashMap<Partition, usize> =
        nodes.iter().cloned().enumerate().map(|(i, p)| (p, i)).collect();
    let mut edges = Vec::new();
    for (i, p) in nodes.iter().enumerate() {
        for c in covers(p) {
            edges.push((i, index[&c]));
        }
    }
    edges.sort_unstable();
    Ok(DominanceLattice {
        n,
        nodes,
        edges,
        index,
    })
}

impl DominanceLattice {
    pub fn n(&self) -> usize {
        self.n
    }

    /// Nodes from `(N)` down to `(1^N)` in reverse lexicographic order.
    pub fn nodes(&self) -> &[Partition] {
        &self.nodes
    }

    /// Cover relations as `(lower, upper)` node indices.
    pub fn edges(&self) -> &[(usize, usize)] {
        &self.edges
    }

    pub fn index_of(&self, p: &Partition) -> Option<usize> {
        self.index.get(p).copied()
    }

    /// A longest chain from `(1^N)` up to `(N)`.
    pub fn longest_chain(&self) -> Vec<Partition> {
        // nodes are in reverse-lex order, a linear extension of dominance,
        // so walking indices downward visits every lower node first
        let count = self.nodes.len();
        let mut up: Vec<Vec<usize>> = vec![Vec::new(); count];
        for &(lo, hi) in &self.edges {
            up[lo].push(hi);
        }
        let mut best = vec![0usize; count];
        let mut next = vec![usize::MAX; count];
        for i in 0..count {
            for &h in &up[i] {
                if best[h] + 1 > best[i] {
                    best[i] = best[h] + 1;
                    next[i] = h;
                }
            }
        }
        let mut chain = vec![self.nodes[count - 1].clone()];
        let mut at = count - 1;
        while next[at] != usize::MAX {
            at = next[at];
            chain.push(self.nodes[at].clone());
        }
        chain
    }

    pub fn to_json(&self) -> serde_json::Value {
        json!({
            "N": self.n,
            "nodes": self.nodes,
            "edges": self.edges,
        })
    }

    pub fn to_dot(&self) -> String {
        let mut out = format!("digraph dominance_{} {{\n  rankdir=BT;\n", self.n);
        for (i, p) in self.nodes.iter().enumerate() {
            let _ = writeln!(out, "  n{i} [label=\"{p}\"];");
        }
        for (lo, hi) in &self.edges {
            let _ = writeln!(out, "  n{lo} -> n{hi};");
        }
        out.push_str("}\n");
        out
    }
}

/// Number of cover steps on a shortest path from the lower to the upper of
/// two comparable partitions.
pub fn majorization_difference(a: &Partition, b: &Partition) -> Result<usize> {
    let (lower, upper) = match compare(a, b)? {
        MajorizationRelation::EqualUpToPermutation => return Ok(0),
        MajorizationRelation::LeftMajorized => (a, b),
        MajorizationRelation::RightMajorized => (b, a),
        MajorizationRelation::Incomparable => {
            return Err(Error::IncomparableInput(a.to_string(), b.to_string()));
        }
    };
    // breadth-first search restricted to the interval [lower, upper]
    let mut dist: HashMap<Partition, usize> = HashMap::from([(lower.clone(), 0)]);
    let mut queue = VecDeque::from([lower.clone()]);
    while let Some(p) = queue.pop_front() {
        let d = dist[&p];
        for c in covers(&p) {
            if !upper.dominates(&c) || dist.contains_key(&c) {
                continue;
            }
            if &c == upper {
                return Ok(d + 1);
            }
            dist.insert(c.clone(), d + 1);
            queue.push_back(c);
        }
    }
    unreachable!("{upper} dominates {lower} so a cover path exists")
}
