//! Deterministic witness families and random graph models.

use std::collections::HashSet;

use rand::seq::SliceRandom;
use rand::Rng;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::estimators::VertexDistribution;
use crate::metric::Graph;

/// Default number of whole pairings tried by [`gen_rrg`].
pub const DEFAULT_RRG_BUDGET: usize = 10_000;

/// A graph whose vertices carry role names such as `a_3` or `b_1_2_5`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct LabeledGraph {
    pub graph: Graph,
    pub labels: Vec<String>,
}

impl LabeledGraph {
    /// Label sidecar: `id role` per line.
    pub fn labels_text(&self) -> String {
        self.labels
            .iter()
            .enumerate()
            .map(|(i, l)| format!("{i} {l}\n"))
            .collect()
    }

    pub fn find(&self, label: &str) -> Option<u32> {
        self.labels
            .iter()
            .position(|l| l == label)
            .map(|i| i as u32)
    }

    /// Ids of all vertices whose label starts with `prefix`.
    pub fn with_prefix(&self, prefix: &str) -> Vec<u32> {
        self.labels
            .iter()
            .enumerate()
            .filter(|(_, l)| l.starts_with(prefix))
            .map(|(i, _)| i as u32)
            .collect()
    }
}

/// Chain length parameter `2 floor(sqrt n) + 1` of the complete-graph subdivision.
pub fn gn_chain_interior(n: usize) -> usize {
    2 * (n as f64).sqrt().floor() as usize + 1
}

/// `K_n` with every edge subdivided by `m = 2 floor(sqrt n) + 1` new vertices.
pub fn gen_gn(n: usize) -> Result<LabeledGraph> {
    if n < 3 {
        return Err(Error::InvalidParameter(format!(
            "G_n needs n >= 3, got {n}"
        )));
    }
    let m = gn_chain_interior(n);
    let mut labels: Vec<String> = (1..=n).map(|i| format!("a_{i}")).collect();
    let mut edges = Vec::new();
    for i in 0..n {
        for j in (i + 1)..n {
            let mut prev = i as u32;
            for k in 1..=m {
                let v = labels.len() as u32;
                labels.push(format!("b_{}_{}_{}", i + 1, j + 1, k));
                edges.push((prev, v));
                prev = v;
            }
            edges.push((prev, j as u32));
        }
    }
    Ok(LabeledGraph {
        graph: Graph::from_edges(labels.len(), edges)?,
        labels,
    })
}

/// A chain of junctions `c_1..c_n`, consecutive ones joined by two disjoint paths
/// with `2M` interior vertices each, and `M n` leaves hanging off every junction.
pub fn gen_hmn(m: usize, n: usize) -> Result<LabeledGraph> {
    if m < 1 || n < 2 {
        return Err(Error::InvalidParameter(format!(
            "H_(M,n) needs M >= 1 and n >= 2, got M={m}, n={n}"
        )));
    }
    let mut labels: Vec<String> = (1..=n).map(|i| format!("c_{i}")).collect();
    let mut edges = Vec::new();
    for i in 0..n - 1 {
        for j in 1..=2 {
            let mut prev = i as u32;
            for k in 1..=2 * m {
                let v = labels.len() as u32;
                labels.push(format!("b_{}_{}_{}", i + 1, j, k));
                edges.push((prev, v));
                prev = v;
            }
            edges.push((prev, i as u32 + 1));
        }
    }
    for i in 0..n {
        for s in 1..=m * n {
            let v = labels.len() as u32;
            labels.push(format!("a_{}_{}", i + 1, s));
            edges.push((i as u32, v));
        }
    }
    Ok(LabeledGraph {
        graph: Graph::from_edges(labels.len(), edges)?,
        labels,
    })
}

/// Connected simple `d`-regular graph from the configuration model, redrawing the
/// whole pairing on any loop, multi-edge, or disconnection.
pub fn gen_rrg<R: Rng + ?Sized>(n: usize, d: usize, rng: &mut R) -> Result<Graph> {
    gen_rrg_with_budget(n, d, DEFAULT_RRG_BUDGET, rng)
}

pub fn gen_rrg_with_budget<R: Rng + ?Sized>(
    n: usize,
    d: usize,
    budget: usize,
    rng: &mut R,
) -> Result<Graph> {
    if (n * d) % 2 == 1 {
        return Err(Error::InvalidParameter("n·d must be even".into()));
    }
    if d >= n || d == 0 {
        return Err(Error::InvalidParameter(format!(
            "degree must satisfy 0 < d < n, got d={d}, n={n}"
        )));
    }
    let mut stubs: Vec<u32> = (0..n as u32)
        .flat_map(|v| std::iter::repeat_n(v, d))
        .collect();
    let mut seen = HashSet::with_capacity(n * d / 2);
    'attempt: for _ in 0..budget {
        stubs.sort_unstable();
        stubs.shuffle(rng);
        seen.clear();
        for pair in stubs.chunks_exact(2) {
            let (u, v) = (pair[0].min(pair[1]), pair[0].max(pair[1]));
            if u == v || !seen.insert((u, v)) {
                continue 'attempt;
            }
        }
        let g = Graph::from_edges(n, stubs.chunks_exact(2).map(|p| (p[0], p[1])))?;
        if g.is_connected() {
            return Ok(g);
        }
    }
    Err(Error::BudgetExhausted {
        attempts: budget,
        reason: format!("no simple connected {d}-regular graph on {n} vertices"),
    })
}

/// Erdős–Rényi graph: every pair joined independently with probability `lambda / n`.
pub fn gen_er<R: Rng + ?Sized>(n: usize, lambda: f64, rng: &mut R) -> Result<Graph> {
    if !lambda.is_finite() || lambda <= 0.0 {
        return Err(Error::InvalidParameter(format!(
            "lambda must be positive, got {lambda}"
        )));
    }
    let p = lambda / n as f64;
    if p > 1.0 {
        return Err(Error::InvalidParameter(format!(
            "edge probability lambda/n = {p} exceeds 1"
        )));
    }
    let mut edges = Vec::new();
    for u in 0..n as u32 {
        for v in (u + 1)..n as u32 {
            if rng.gen::<f64>() < p {
                edges.push((u, v));
            }
        }
    }
    Graph::from_edges(n, edges)
}

/// The largest component of a graph, extracted with its id mapping.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ComponentMap {
    /// Component id of every vertex of the original graph.
    pub component: Vec<u32>,
    pub component_count: usize,
    /// Induced subgraph on the largest component, relabelled `0..k`.
    pub graph: Graph,
    /// Original id of each extracted vertex.
    pub new_to_old: Vec<u32>,
    /// Extracted id of each original vertex, if it lies in the component.
    pub old_to_new: Vec<Option<u32>>,
}

/// Extracts the largest component; among equal sizes the one holding the smallest id wins.
pub fn giant_component(g: &Graph) -> ComponentMap {
    let (component, count) = g.components();
    let mut sizes = vec![0usize; count];
    for &c in &component {
        sizes[c as usize] += 1;
    }
    // Component ids are assigned in order of their smallest vertex.
    let best = (0..count)
        .max_by_key(|&c| (sizes[c], std::cmp::Reverse(c)))
        .unwrap_or(0) as u32;
    let new_to_old: Vec<u32> = (0..g.vertex_count() as u32)
        .filter(|&v| component[v as usize] == best)
        .collect();
    let mut old_to_new = vec![None; g.vertex_count()];
    for (i, &v) in new_to_old.iter().enumerate() {
        old_to_new[v as usize] = Some(i as u32);
    }
    ComponentMap {
        graph: g.induced(&new_to_old),
        component,
        component_count: count,
        new_to_old,
        old_to_new,
    }
}

/// Vertex distribution proportional to `weights`.
pub fn atom_distribution(weights: &[f64]) -> Result<VertexDistribution> {
    VertexDistribution::from_weights(weights)
}
