//! Graphs, hop distances, and the four-point condition.
//!
//! Graph distances are small integers, so every graph quantity here is exact.
//! Gromov products and four-point values are half-integers on graphs; they are
//! carried as [`HalfInt`] (a doubled integer) and only turned into `f64` at the
//! edges of the API.

use std::collections::VecDeque;
use std::fmt;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Default cap on the number of vertices that get a dense distance matrix.
pub const DEFAULT_VERTEX_CAP: usize = 20_000;

/// A half-integer stored as twice its value.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct HalfInt(i64);

impl HalfInt {
    pub const ZERO: HalfInt = HalfInt(0);

    pub const fn from_doubled(doubled: i64) -> Self {
        HalfInt(doubled)
    }

    pub const fn from_int(value: i64) -> Self {
        HalfInt(2 * value)
    }

    pub const fn doubled(self) -> i64 {
        self.0
    }

    pub fn to_f64(self) -> f64 {
        self.0 as f64 / 2.0
    }

    /// Largest integer not above this value.
    pub fn floor(self) -> i64 {
        self.0.div_euclid(2)
    }

    pub fn is_integer(self) -> bool {
        self.0 % 2 == 0
    }
}

impl fmt::Display for HalfInt {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_integer() {
            write!(f, "{}", self.0 / 2)
        } else {
            write!(f, "{}", self.to_f64())
        }
    }
}

impl Serialize for HalfInt {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.serialize_f64(self.to_f64())
    }
}

impl<'de> Deserialize<'de> for HalfInt {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let value = f64::deserialize(d)?;
        let doubled = 2.0 * value;
        if doubled.fract() != 0.0 || !doubled.is_finite() {
            return Err(serde::de::Error::custom(format!(
                "{value} is not a half-integer"
            )));
        }
        Ok(HalfInt(doubled as i64))
    }
}

impl std::ops::Add for HalfInt {
    type Output = HalfInt;
    fn add(self, rhs: HalfInt) -> HalfInt {
        HalfInt(self.0 + rhs.0)
    }
}

impl std::ops::Sub for HalfInt {
    type Output = HalfInt;
    fn sub(self, rhs: HalfInt) -> HalfInt {
        HalfInt(self.0 - rhs.0)
    }
}

/// Simple undirected graph on vertices `0..vertex_count`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Graph {
    adjacency: Vec<Vec<u32>>,
}

impl Graph {
    pub fn empty(vertex_count: usize) -> Self {
        Graph {
            adjacency: vec![Vec::new(); vertex_count],
        }
    }

    /// Builds a graph from an edge iterator. Duplicate edges collapse; self-loops are rejected.
    pub fn from_edges<I>(vertex_count: usize, edges: I) -> Result<Self>
    where
        I: IntoIterator<Item = (u32, u32)>,
    {
        let mut adjacency = vec![Vec::new(); vertex_count];
        for (u, v) in edges {
            for w in [u, v] {
                if w as usize >= vertex_count {
                    return Err(Error::VertexOutOfRange {
                        vertex: w,
                        vertex_count,
                    });
                }
            }
            if u == v {
                return Err(Error::SelfLoop { line: 0, vertex: u });
            }
            adjacency[u as usize].push(v);
            adjacency[v as usize].push(u);
        }
        for list in &mut adjacency {
            list.sort_unstable();
            list.dedup();
        }
        Ok(Graph { adjacency })
    }

    pub fn vertex_count(&self) -> usize {
        self.adjacency.len()
    }

    pub fn edge_count(&self) -> usize {
        self.adjacency.iter().map(Vec::len).sum::<usize>() / 2
    }

    pub fn neighbors(&self, v: u32) -> &[u32] {
        &self.adjacency[v as usize]
    }

    pub fn degree(&self, v: u32) -> usize {
        self.adjacency[v as usize].len()
    }

    pub fn has_edge(&self, u: u32, v: u32) -> bool {
        self.adjacency[u as usize].binary_search(&v).is_ok()
    }

    /// Edges as `(u, v)` with `u < v`, in lexicographic order.
    pub fn edges(&self) -> impl Iterator<Item = (u32, u32)> + '_ {
        self.adjacency.iter().enumerate().flat_map(|(u, list)| {
            let u = u as u32;
            list.iter()
                .copied()
                .filter(move |&v| u < v)
                .map(move |v| (u, v))
        })
    }

    /// Component id per vertex plus the number of components. Ids follow the
    /// smallest vertex of each component.
    pub fn components(&self) -> (Vec<u32>, usize) {
        let n = self.vertex_count();
        let mut comp = vec![u32::MAX; n];
        let mut count = 0u32;
        let mut queue = VecDeque::new();
        for start in 0..n {
            if comp[start] != u32::MAX {
                continue;
            }
            comp[start] = count;
            queue.push_back(start as u32);
            while let Some(v) = queue.pop_front() {
                for &w in self.neighbors(v) {
                    if comp[w as usize] == u32::MAX {
                        comp[w as usize] = count;
                        queue.push_back(w);
                    }
                }
            }
            count += 1;
        }
        (comp, count as usize)
    }

    pub fn is_connected(&self) -> bool {
        self.components().1 <= 1
    }

    /// BFS hop distances from `source`; `u32::MAX` marks unreachable vertices.
    pub fn bfs(&self, source: u32) -> Vec<u32> {
        let mut dist = vec![u32::MAX; self.vertex_count()];
        bfs_into(&self.adjacency, source, &mut dist);
        dist
    }

    /// Renders the graph in the edge-list format accepted by [`load_graph`].
    pub fn to_edge_list(&self) -> String {
        let mut out = format!(
            "# vertices {} edges {}\n",
            self.vertex_count(),
            self.edge_count()
        );
        for (u, v) in self.edges() {
            out.push_str(&format!("{u} {v}\n"));
        }
        out
    }

    /// Induced subgraph on `vertices` (relabelled in the given order).
    pub fn induced(&self, vertices: &[u32]) -> Graph {
        let mut new_id = vec![u32::MAX; self.vertex_count()];
        for (i, &v) in vertices.iter().enumerate() {
            new_id[v as usize] = i as u32;
        }
        let adjacency = vertices
            .iter()
            .map(|&v| {
                let mut list: Vec<u32> = self
                    .neighbors(v)
                    .iter()
                    .map(|&w| new_id[w as usize])
                    .filter(|&w| w != u32::MAX)
                    .collect();
                list.sort_unstable();
                list
            })
            .collect();
        Graph { adjacency }
    }
}

fn bfs_into(adjacency: &[Vec<u32>], source: u32, dist: &mut [u32]) {
    let mut queue = VecDeque::new();
    dist[source as usize] = 0;
    queue.push_back(source);
    while let Some(v) = queue.pop_front() {
        let next = dist[v as usize] + 1;
        for &w in &adjacency[v as usize] {
            if dist[w as usize] == u32::MAX {
                dist[w as usize] = next;
                queue.push_back(w);
            }
        }
    }
}

/// Parses an edge-list document: one `u v` pair per line, `#` comments. A
/// `# vertices N` comment keeps trailing isolated vertices.
pub fn load_graph(text: &str) -> Result<Graph> {
    let mut edges = Vec::new();
    let mut declared: Option<usize> = None;
    let mut max_id: Option<u32> = None;
    for (index, raw) in text.lines().enumerate() {
        let line_no = index + 1;
        let line = raw.trim();
        if let Some(comment) = line.strip_prefix('#') {
            let mut words = comment.split_whitespace();
            if words.next() == Some("vertices") {
                declared = words.next().and_then(|w| w.parse().ok());
            }
            continue;
        }
        if line.is_empty() {
            continue;
        }
        let mut tokens = line.split_whitespace();
        let mut next_id = || -> Result<u32> {
            let tok = tokens.next().ok_or_else(|| Error::Parse {
                line: line_no,
                message: format!("expected two vertex ids, got {line:?}"),
            })?;
            tok.parse::<u32>().map_err(|_| Error::Parse {
                line: line_no,
                message: format!("invalid vertex id {tok:?}"),
            })
        };
        let u = next_id()?;
        let v = next_id()?;
        if tokens.next().is_some() {
            return Err(Error::Parse {
                line: line_no,
                message: format!("expected two vertex ids, got {line:?}"),
            });
        }
        if u == v {
            return Err(Error::SelfLoop {
                line: line_no,
                vertex: u,
            });
        }
        max_id = Some(max_id.map_or(u.max(v), |m| m.max(u).max(v)));
        edges.push((u, v));
    }
    let n = max_id
        .map_or(0, |m| m as usize + 1)
        .max(declared.unwrap_or(0));
    Graph::from_edges(n, edges)
}

/// Dense all-pairs hop distances.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DistanceMatrix {
    n: usize,
    dist: Vec<u16>,
}

impl DistanceMatrix {
    pub const UNREACHABLE: u16 = u16::MAX;

    /// Wraps raw row-major distances; used to inject hand-made (even invalid) matrices.
    pub fn from_rows(rows: &[Vec<u32>]) -> Result<Self> {
        let n = rows.len();
        let mut dist = Vec::with_capacity(n * n);
        for row in rows {
            if row.len() != n {
                return Err(Error::InvalidParameter(
                    "distance matrix must be square".into(),
                ));
            }
            for &d in row {
                dist.push(if d >= Self::UNREACHABLE as u32 {
                    Self::UNREACHABLE
                } else {
                    d as u16
                });
            }
        }
        Ok(DistanceMatrix { n, dist })
    }

    pub fn size(&self) -> usize {
        self.n
    }

    pub fn get(&self, u: u32, v: u32) -> Option<u32> {
        let d = self.dist[u as usize * self.n + v as usize];
        (d != Self::UNREACHABLE).then_some(d as u32)
    }

    #[inline]
    pub(crate) fn raw(&self, u: u32, v: u32) -> u16 {
        self.dist[u as usize * self.n + v as usize]
    }

    pub fn row(&self, u: u32) -> &[u16] {
        let start = u as usize * self.n;
        &self.dist[start..start + self.n]
    }
}

/// All-pairs shortest paths by one BFS per source.
pub fn apsp(g: &Graph) -> Result<DistanceMatrix> {
    apsp_with_cap(g, DEFAULT_VERTEX_CAP)
}

pub fn apsp_with_cap(g: &Graph, cap: usize) -> Result<DistanceMatrix> {
    let n = g.vertex_count();
    let cap = cap.min(DistanceMatrix::UNREACHABLE as usize - 1);
    if n > cap {
        return Err(Error::TooLarge { vertices: n, cap });
    }
    let mut dist = vec![DistanceMatrix::UNREACHABLE; n * n];
    if n > 0 {
        dist.par_chunks_mut(n).enumerate().for_each_init(
            || vec![u32::MAX; n],
            |scratch, (source, row)| {
                scratch.fill(u32::MAX);
                bfs_into(&g.adjacency, source as u32, scratch);
                for (slot, &d) in row.iter_mut().zip(scratch.iter()) {
                    if d != u32::MAX {
                        *slot = d as u16;
                    }
                }
            },
        );
    }
    Ok(DistanceMatrix { n, dist })
}

/// A finite metric space with real-valued distances. Unreachable pairs report infinity.
pub trait FiniteMetric: Sync {
    fn size(&self) -> usize;
    fn distance(&self, i: u32, j: u32) -> f64;

    /// Largest pairwise distance (infinite if some pair is disconnected).
    fn max_distance(&self) -> f64 {
        let n = self.size() as u32;
        let mut best: f64 = 0.0;
        for i in 0..n {
            for j in (i + 1)..n {
                best = best.max(self.distance(i, j));
            }
        }
        best
    }

    /// Whether `i` and `j` are at finite distance.
    fn connected(&self, i: u32, j: u32) -> bool {
        self.distance(i, j).is_finite()
    }
}

/// An integer-valued graph metric.
pub trait HopMetric: Sync {
    fn vertex_count(&self) -> usize;
    fn hops(&self, u: u32, v: u32) -> Option<u32>;
}

impl HopMetric for DistanceMatrix {
    fn vertex_count(&self) -> usize {
        self.n
    }
    fn hops(&self, u: u32, v: u32) -> Option<u32> {
        self.get(u, v)
    }
}

impl FiniteMetric for DistanceMatrix {
    fn size(&self) -> usize {
        self.n
    }
    fn distance(&self, i: u32, j: u32) -> f64 {
        self.get(i, j).map_or(f64::INFINITY, f64::from)
    }
}

/// Shortest-path metric of a graph.
///
/// Pendant vertices (degree one, hanging off a vertex of degree at least two) are
/// never interior to a geodesic, so they are stripped before the dense matrix is
/// built and their distances are recovered from their anchor. This keeps graphs
/// with huge leaf clusters within the matrix cap.
#[derive(Clone, Debug)]
pub struct GraphMetric {
    graph: Graph,
    /// Per vertex: core index of its anchor and 1 if the vertex is pendant.
    slot: Vec<(u32, u32)>,
    core_vertices: Vec<u32>,
    core_graph: Graph,
    core_dist: DistanceMatrix,
    component: Vec<u32>,
    component_count: usize,
}

impl GraphMetric {
    pub fn new(graph: Graph) -> Result<Self> {
        Self::with_cap(graph, DEFAULT_VERTEX_CAP)
    }

    pub fn with_cap(graph: Graph, cap: usize) -> Result<Self> {
        let n = graph.vertex_count();
        let pendant: Vec<bool> = (0..n as u32)
            .map(|v| graph.degree(v) == 1 && graph.degree(graph.neighbors(v)[0]) >= 2)
            .collect();
        let core_vertices: Vec<u32> = (0..n as u32).filter(|&v| !pendant[v as usize]).collect();
        let mut core_index = vec![u32::MAX; n];
        for (i, &v) in core_vertices.iter().enumerate() {
            core_index[v as usize] = i as u32;
        }
        let slot = (0..n as u32)
            .map(|v| {
                if pendant[v as usize] {
                    (core_index[graph.neighbors(v)[0] as usize], 1)
                } else {
                    (core_index[v as usize], 0)
                }
            })
            .collect();
        let core_graph = graph.induced(&core_vertices);
        let core_dist = apsp_with_cap(&core_graph, cap)?;
        let (component, component_count) = graph.components();
        Ok(GraphMetric {
            graph,
            slot,
            core_vertices,
            core_graph,
            core_dist,
            component,
            component_count,
        })
    }

    /// Uses `dist` verbatim as the metric of `graph`, with no reduction or validation
    /// beyond the size. Lets audits be run against deliberately broken matrices.
    pub fn with_distances(graph: Graph, dist: DistanceMatrix) -> Result<Self> {
        let n = graph.vertex_count();
        if dist.size() != n {
            return Err(Error::InvalidParameter(format!(
                "distance matrix has size {} but graph has {} vertices",
                dist.size(),
                n
            )));
        }
        let (component, component_count) = graph.components();
        Ok(GraphMetric {
            slot: (0..n as u32).map(|v| (v, 0)).collect(),
            core_vertices: (0..n as u32).collect(),
            core_graph: graph.clone(),
            graph,
            core_dist: dist,
            component,
            component_count,
        })
    }

    pub fn graph(&self) -> &Graph {
        &self.graph
    }

    pub fn vertex_count(&self) -> usize {
        self.graph.vertex_count()
    }

    /// Hop distance assuming both vertices share a component.
    #[inline]
    pub fn hop(&self, u: u32, v: u32) -> u32 {
        if u == v {
            return 0;
        }
        let (cu, pu) = self.slot[u as usize];
        let (cv, pv) = self.slot[v as usize];
        self.core_dist.raw(cu, cv) as u32 + pu + pv
    }

    pub fn is_pendant(&self, v: u32) -> bool {
        self.slot[v as usize].1 == 1
    }

    /// The core vertex a pendant vertex hangs from; core vertices are their own anchor.
    pub fn anchor(&self, v: u32) -> u32 {
        self.core_vertices[self.slot[v as usize].0 as usize]
    }

    pub(crate) fn core_index(&self, v: u32) -> u32 {
        self.slot[v as usize].0
    }

    pub(crate) fn core_vertex(&self, index: u32) -> u32 {
        self.core_vertices[index as usize]
    }

    pub(crate) fn core_graph(&self) -> &Graph {
        &self.core_graph
    }

    pub(crate) fn core_dist(&self) -> &DistanceMatrix {
        &self.core_dist
    }

    pub fn component_of(&self, v: u32) -> u32 {
        self.component[v as usize]
    }

    pub fn component_count(&self) -> usize {
        self.component_count
    }

    pub fn same_component(&self, u: u32, v: u32) -> bool {
        self.component[u as usize] == self.component[v as usize]
    }

    pub fn is_connected(&self) -> bool {
        self.component_count <= 1
    }

    pub(crate) fn check_vertex(&self, v: u32) -> Result<()> {
        if (v as usize) < self.vertex_count() {
            Ok(())
        } else {
            Err(Error::VertexOutOfRange {
                vertex: v,
                vertex_count: self.vertex_count(),
            })
        }
    }

    /// Materialises the full distance matrix (for small graphs and tests).
    pub fn to_matrix(&self) -> DistanceMatrix {
        let n = self.vertex_count() as u32;
        let rows: Vec<Vec<u32>> = (0..n)
            .map(|u| {
                (0..n)
                    .map(|v| self.hops(u, v).unwrap_or(u32::MAX))
                    .collect()
            })
            .collect();
        DistanceMatrix::from_rows(&rows).expect("square by construction")
    }
}

impl HopMetric for GraphMetric {
    fn vertex_count(&self) -> usize {
        self.graph.vertex_count()
    }
    fn hops(&self, u: u32, v: u32) -> Option<u32> {
        if u == v {
            return Some(0);
        }
        let (cu, pu) = self.slot[u as usize];
        let (cv, pv) = self.slot[v as usize];
        let base = self.core_dist.raw(cu, cv);
        (base != DistanceMatrix::UNREACHABLE).then(|| base as u32 + pu + pv)
    }
}

impl FiniteMetric for GraphMetric {
    fn size(&self) -> usize {
        self.vertex_count()
    }
    fn distance(&self, i: u32, j: u32) -> f64 {
        self.hops(i, j).map_or(f64::INFINITY, f64::from)
    }

    fn max_distance(&self) -> f64 {
        self.diameter().map_or(f64::INFINITY, f64::from)
    }

    fn connected(&self, i: u32, j: u32) -> bool {
        self.same_component(i, j)
    }
}

fn hops_checked<M: HopMetric + ?Sized>(m: &M, u: u32, v: u32) -> Result<i64> {
    for w in [u, v] {
        if w as usize >= m.vertex_count() {
            return Err(Error::VertexOutOfRange {
                vertex: w,
                vertex_count: m.vertex_count(),
            });
        }
    }
    m.hops(u, v)
        .map(i64::from)
        .ok_or(Error::Disconnected { a: u, b: v })
}

fn distance_checked<M: FiniteMetric + ?Sized>(m: &M, u: u32, v: u32) -> Result<f64> {
    for w in [u, v] {
        if w as usize >= m.size() {
            return Err(Error::VertexOutOfRange {
                vertex: w,
                vertex_count: m.size(),
            });
        }
    }
    let d = m.distance(u, v);
    if d.is_finite() {
        Ok(d)
    } else {
        Err(Error::Disconnected { a: u, b: v })
    }
}

/// Gromov product `<x,y>_w = (d(x,w) + d(y,w) - d(x,y)) / 2`.
pub fn gromov_product<M: FiniteMetric + ?Sized>(m: &M, x: u32, y: u32, w: u32) -> Result<f64> {
    let xw = distance_checked(m, x, w)?;
    let yw = distance_checked(m, y, w)?;
    let xy = distance_checked(m, x, y)?;
    Ok(0.5 * (xw + yw - xy))
}

/// Exact Gromov product on a graph metric.
pub fn gromov_product_hops<M: HopMetric + ?Sized>(
    m: &M,
    x: u32,
    y: u32,
    w: u32,
) -> Result<HalfInt> {
    let xw = hops_checked(m, x, w)?;
    let yw = hops_checked(m, y, w)?;
    let xy = hops_checked(m, x, y)?;
    Ok(HalfInt::from_doubled(xw + yw - xy))
}

/// The three pairwise distance sums of a quadruple and its four-point value.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct FpBreakdown {
    pub p: f64,
    pub q: f64,
    pub r: f64,
    pub fp: f64,
}

/// Half the gap between the largest and the median of three sums.
#[inline]
pub(crate) fn top_gap<T: PartialOrd + Copy + std::ops::Sub<Output = T>>(p: T, q: T, r: T) -> T {
    let (mut a, mut b, mut c) = (p, q, r);
    if a < b {
        std::mem::swap(&mut a, &mut b);
    }
    if b < c {
        std::mem::swap(&mut b, &mut c);
    }
    if a < b {
        std::mem::swap(&mut a, &mut b);
    }
    a - b
}

pub fn four_point<M: FiniteMetric + ?Sized>(
    m: &M,
    x: u32,
    y: u32,
    z: u32,
    w: u32,
) -> Result<FpBreakdown> {
    let p = distance_checked(m, x, y)? + distance_checked(m, z, w)?;
    let q = distance_checked(m, x, z)? + distance_checked(m, y, w)?;
    let r = distance_checked(m, x, w)? + distance_checked(m, y, z)?;
    Ok(FpBreakdown {
        p,
        q,
        r,
        fp: 0.5 * top_gap(p, q, r),
    })
}

/// Exact four-point value on a graph metric.
pub fn four_point_hops<M: HopMetric + ?Sized>(
    m: &M,
    x: u32,
    y: u32,
    z: u32,
    w: u32,
) -> Result<HalfInt> {
    let p = hops_checked(m, x, y)? + hops_checked(m, z, w)?;
    let q = hops_checked(m, x, z)? + hops_checked(m, y, w)?;
    let r = hops_checked(m, x, w)? + hops_checked(m, y, z)?;
    Ok(HalfInt::from_doubled(top_gap(p, q, r)))
}

/// Worst-case four-point value and a quadruple attaining it.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct HypWitness {
    pub value: f64,
    pub quadruple: [u32; 4],
}

/// Maximum four-point value over all quadruples. Quartic; meant for a few hundred points.
pub fn hyp_exact<M: FiniteMetric + ?Sized>(m: &M) -> Result<HypWitness> {
    let n = m.size() as u32;
    for i in 0..n {
        for j in (i + 1)..n {
            if !m.distance(i, j).is_finite() {
                return Err(Error::Disconnected { a: i, b: j });
            }
        }
    }
    let best = (0..n)
        .into_par_iter()
        .map(|i| {
            let mut best = HypWitness {
                value: 0.0,
                quadruple: [i; 4],
            };
            for j in (i + 1)..n {
                let dij = m.distance(i, j);
                for k in (j + 1)..n {
                    let dik = m.distance(i, k);
                    let djk = m.distance(j, k);
                    for l in (k + 1)..n {
                        let p = dij + m.distance(k, l);
                        let q = dik + m.distance(j, l);
                        let r = m.distance(i, l) + djk;
                        let fp = 0.5 * top_gap(p, q, r);
                        if fp > best.value {
                            best = HypWitness {
                                value: fp,
                                quadruple: [i, j, k, l],
                            };
                        }
                    }
                }
            }
            best
        })
        .reduce_with(|a, b| if b.value > a.value { b } else { a });
    Ok(best.unwrap_or(HypWitness {
        value: 0.0,
        quadruple: [0; 4],
    }))
}

/// Largest finite pairwise distance; errors if the metric is disconnected.
pub fn diameter<M: HopMetric + ?Sized>(m: &M) -> Result<u32> {
    let n = m.vertex_count() as u32;
    let mut best = 0;
    for u in 0..n {
        for v in (u + 1)..n {
            match m.hops(u, v) {
                Some(d) => best = best.max(d),
                None => return Err(Error::Disconnected { a: u, b: v }),
            }
        }
    }
    Ok(best)
}

impl GraphMetric {
    /// Diameter computed on the core matrix, accounting for pendant vertices.
    pub fn diameter(&self) -> Result<u32> {
        if !self.is_connected() {
            return Err(Error::NotConnected {
                components: self.component_count,
            });
        }
        let k = self.core_vertices.len();
        let mut pendants_at = vec![0u32; k];
        for &(core, pend) in &self.slot {
            pendants_at[core as usize] += pend;
        }
        let mut best = 0;
        for a in 0..k {
            let wa = pendants_at[a].min(1);
            best = best.max(pendants_at[a].min(2));
            for (b, &d) in self.core_dist.row(a as u32).iter().enumerate().skip(a + 1) {
                best = best.max(d as u32 + wa + pendants_at[b].min(1));
            }
        }
        Ok(best)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    pub(crate) fn path(n: u32) -> Graph {
        Graph::from_edges(n as usize, (1..n).map(|i| (i - 1, i))).unwrap()
    }

    pub(crate) fn cycle(n: u32) -> Graph {
        Graph::from_edges(n as usize, (0..n).map(|i| (i, (i + 1) % n))).unwrap()
    }

    #[test]
    fn load_path_and_collapse_duplicates() {
        let g = load_graph("0 1\n1 2").unwrap();
        assert_eq!(g.vertex_count(), 3);
        assert_eq!(g.edge_count(), 2);
        let g = load_graph("# comment\n0 1\n1 0\n").unwrap();
        assert_eq!(g.vertex_count(), 2);
        assert_eq!(g.edge_count(), 1);
    }

    #[test]
    fn load_rejects_self_loop_and_garbage() {
        assert_eq!(
            load_graph("0 0"),
            Err(Error::SelfLoop { line: 1, vertex: 0 })
        );
        match load_graph("0 1\n1 x\n") {
            Err(Error::Parse { line, .. }) => assert_eq!(line, 2),
            other => panic!("unexpected {other:?}"),
        }
        assert!(matches!(
            load_graph("0 1 2"),
            Err(Error::Parse { line: 1, .. })
        ));
        assert!(matches!(load_graph("0"), Err(Error::Parse { line: 1, .. })));
    }

    #[test]
    fn edge_list_round_trips() {
        let g = cycle(7);
        assert_eq!(load_graph(&g.to_edge_list()).unwrap(), g);
    }

    #[test]
    fn apsp_basics() {
        let d = apsp(&path(4)).unwrap();
        assert_eq!(d.get(0, 3), Some(3));
        let d = apsp(&cycle(4)).unwrap();
        assert_eq!(d.get(0, 2), Some(2));
        let g = Graph::from_edges(4, [(0, 1), (2, 3)]).unwrap();
        let d = apsp(&g).unwrap();
        assert_eq!(d.get(0, 2), None);
        assert_eq!(d.raw(1, 3), DistanceMatrix::UNREACHABLE);
    }

    #[test]
    fn apsp_respects_cap() {
        assert!(matches!(
            apsp_with_cap(&path(10), 5),
            Err(Error::TooLarge {
                vertices: 10,
                cap: 5
            })
        ));
    }

    #[test]
    fn gromov_products() {
        let d = apsp(&path(4)).unwrap();
        assert_eq!(gromov_product_hops(&d, 0, 3, 0).unwrap(), HalfInt::ZERO);
        assert_eq!(
            gromov_product_hops(&d, 1, 3, 0).unwrap(),
            HalfInt::from_int(1)
        );
        let d = apsp(&cycle(5)).unwrap();
        assert_eq!(
            gromov_product_hops(&d, 1, 3, 0).unwrap(),
            HalfInt::from_doubled(1)
        );
        assert_eq!(gromov_product(&d, 1, 3, 0).unwrap(), 0.5);
    }

    #[test]
    fn four_point_examples() {
        let d = apsp(&cycle(4)).unwrap();
        let b = four_point(&d, 0, 1, 2, 3).unwrap();
        assert_eq!((b.p, b.q, b.r, b.fp), (2.0, 4.0, 2.0, 1.0));
        assert_eq!(
            four_point_hops(&d, 0, 1, 2, 3).unwrap(),
            HalfInt::from_int(1)
        );
        assert_eq!(four_point_hops(&d, 0, 0, 2, 3).unwrap(), HalfInt::ZERO);
    }

    #[test]
    fn cross_component_is_an_error() {
        let g = Graph::from_edges(4, [(0, 1), (2, 3)]).unwrap();
        let m = GraphMetric::new(g).unwrap();
        assert!(matches!(
            four_point(&m, 0, 1, 2, 3),
            Err(Error::Disconnected { .. })
        ));
        assert!(gromov_product_hops(&m, 0, 2, 1).is_err());
        assert!(hyp_exact(&m).is_err());
        assert!(diameter(&m).is_err());
        assert!(m.diameter().is_err());
    }

    #[test]
    fn hyp_exact_examples() {
        let star = Graph::from_edges(5, (1..5).map(|i| (0, i))).unwrap();
        assert_eq!(hyp_exact(&apsp(&star).unwrap()).unwrap().value, 0.0);
        let w = hyp_exact(&apsp(&cycle(4)).unwrap()).unwrap();
        assert_eq!(w.value, 1.0);
        assert_eq!(hyp_exact(&apsp(&cycle(6)).unwrap()).unwrap().value, 1.0);
    }

    #[test]
    fn diameters() {
        let complete =
            Graph::from_edges(4, [(0, 1), (0, 2), (0, 3), (1, 2), (1, 3), (2, 3)]).unwrap();
        for (g, want) in [(path(4), 3), (cycle(6), 3), (complete, 1)] {
            assert_eq!(diameter(&apsp(&g).unwrap()).unwrap(), want);
            assert_eq!(GraphMetric::new(g).unwrap().diameter().unwrap(), want);
        }
    }

    #[test]
    fn pendant_reduction_matches_dense_distances() {
        // a star with a tail plus a cycle with leaves
        let g = Graph::from_edges(
            9,
            [
                (0, 1),
                (1, 2),
                (2, 0),
                (0, 3),
                (0, 4),
                (1, 5),
                (5, 6),
                (6, 7),
                (2, 8),
            ],
        )
        .unwrap();
        let m = GraphMetric::new(g.clone()).unwrap();
        assert!(m.is_pendant(3) && m.is_pendant(7) && !m.is_pendant(6));
        let dense = apsp(&g).unwrap();
        for u in 0..9 {
            for v in 0..9 {
                assert_eq!(m.hops(u, v), dense.get(u, v), "{u} {v}");
            }
        }
        assert_eq!(m.diameter().unwrap(), diameter(&dense).unwrap());
    }

    #[test]
    fn single_edge_is_not_reduced() {
        let m = GraphMetric::new(path(2)).unwrap();
        assert!(!m.is_pendant(0) && !m.is_pendant(1));
        assert_eq!(m.hops(0, 1), Some(1));
    }
}
