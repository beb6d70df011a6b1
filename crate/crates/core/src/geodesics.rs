//! Shortest-path DAGs with exact path counts, uniform geodesic sampling, and
//! geodesic triangles with their internal points.

use std::cell::RefCell;
use std::collections::VecDeque;

use num_bigint::{BigUint, RandBigInt};
use num_traits::{One, ToPrimitive, Zero};
use rand::Rng;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::metric::{gromov_product_hops, GraphMetric, HalfInt};

/// Path counts, kept in machine words until they overflow.
#[derive(Clone, Debug)]
enum Counts {
    Small(Vec<u128>),
    Big(Vec<BigUint>),
}

/// Shortest-path DAG rooted at `source`, restricted to a set of vertices.
///
/// Built either from a full BFS ([`GeodesicDag::build`]) or only over the vertices
/// lying on geodesics between two endpoints ([`GeodesicDag::between`]).
#[derive(Clone, Debug)]
pub struct GeodesicDag {
    source: u32,
    vertices: Vec<u32>,
    dist: Vec<u32>,
    pred_start: Vec<u32>,
    preds: Vec<u32>,
    counts: Counts,
}

#[derive(Default)]
struct Scratch {
    stamp: u32,
    seen: Vec<u32>,
    local: Vec<u32>,
}

thread_local! {
    static SCRATCH: RefCell<Scratch> = RefCell::new(Scratch::default());
}

impl GeodesicDag {
    /// Full BFS DAG of `source` over its component.
    pub fn build(g: &GraphMetric, source: u32) -> Result<Self> {
        g.check_vertex(source)?;
        let graph = g.graph();
        let n = graph.vertex_count();
        let mut local = vec![u32::MAX; n];
        let mut vertices = vec![source];
        let mut dist = vec![0u32];
        local[source as usize] = 0;
        let mut queue = VecDeque::from([source]);
        while let Some(v) = queue.pop_front() {
            let dv = dist[local[v as usize] as usize];
            for &w in graph.neighbors(v) {
                if local[w as usize] == u32::MAX {
                    local[w as usize] = vertices.len() as u32;
                    vertices.push(w);
                    dist.push(dv + 1);
                    queue.push_back(w);
                }
            }
        }
        let mut pred_start = Vec::with_capacity(vertices.len() + 1);
        let mut preds = Vec::new();
        pred_start.push(0);
        for (i, &v) in vertices.iter().enumerate() {
            for &u in graph.neighbors(v) {
                let lu = local[u as usize];
                if lu != u32::MAX && dist[lu as usize] + 1 == dist[i] {
                    preds.push(lu);
                }
            }
            pred_start.push(preds.len() as u32);
        }
        Ok(Self::finish(source, vertices, dist, pred_start, preds))
    }

    /// DAG of all geodesics from `x` to `y`.
    pub fn between(g: &GraphMetric, x: u32, y: u32) -> Result<Self> {
        g.check_vertex(x)?;
        g.check_vertex(y)?;
        if !g.same_component(x, y) {
            return Err(Error::Disconnected { a: x, b: y });
        }
        if x == y {
            return Ok(Self::finish(x, vec![x], vec![0], vec![0, 0], Vec::new()));
        }
        let core = g.core_graph();
        let cd = g.core_dist();
        let a = g.core_index(x);
        let b = g.core_index(y);
        let total = cd.raw(a, b) as u32;
        let row_a = cd.row(a);
        let row_b = cd.row(b);

        let mut vertices = Vec::new();
        let mut dist = Vec::new();
        let mut pred_start = vec![0u32];
        let mut preds = Vec::new();
        let offset = if g.is_pendant(x) {
            vertices.push(x);
            dist.push(0);
            pred_start.push(0);
            1
        } else {
            0
        };

        SCRATCH.with(|cell| {
            let mut s = cell.borrow_mut();
            let s = &mut *s;
            let k = core.vertex_count();
            if s.seen.len() < k {
                s.seen.resize(k, 0);
                s.local.resize(k, 0);
            }
            s.stamp = s.stamp.wrapping_add(1);
            if s.stamp == 0 {
                s.seen.fill(0);
                s.stamp = 1;
            }
            let stamp = s.stamp;

            // Layered expansion restricted to the interval between a and b.
            let first = vertices.len();
            let mut order = vec![a];
            s.seen[a as usize] = stamp;
            s.local[a as usize] = first as u32;
            let mut head = 0;
            while head < order.len() {
                let w = order[head];
                head += 1;
                let level = row_a[w as usize] as u32;
                if level == total {
                    continue;
                }
                for &nb in core.neighbors(w) {
                    if s.seen[nb as usize] != stamp
                        && row_a[nb as usize] as u32 == level + 1
                        && row_b[nb as usize] as u32 + level + 1 == total
                    {
                        s.seen[nb as usize] = stamp;
                        s.local[nb as usize] = (first + order.len()) as u32;
                        order.push(nb);
                    }
                }
            }
            for &w in &order {
                let level = row_a[w as usize] as u32;
                vertices.push(g.core_vertex(w));
                dist.push(level + offset);
                if w == a {
                    if offset == 1 {
                        preds.push(0);
                    }
                } else {
                    for &nb in core.neighbors(w) {
                        if s.seen[nb as usize] == stamp && row_a[nb as usize] as u32 + 1 == level {
                            preds.push(s.local[nb as usize]);
                        }
                    }
                }
                pred_start.push(preds.len() as u32);
            }
        });

        if g.is_pendant(y) {
            // The anchor of y is the unique deepest core vertex.
            let last = (vertices.len() - 1) as u32;
            vertices.push(y);
            dist.push(dist[last as usize] + 1);
            preds.push(last);
            pred_start.push(preds.len() as u32);
        }
        Ok(Self::finish(x, vertices, dist, pred_start, preds))
    }

    fn finish(
        source: u32,
        vertices: Vec<u32>,
        dist: Vec<u32>,
        pred_start: Vec<u32>,
        preds: Vec<u32>,
    ) -> Self {
        let mut dag = GeodesicDag {
            source,
            vertices,
            dist,
            pred_start,
            preds,
            counts: Counts::Small(Vec::new()),
        };
        dag.counts = dag.count_small().unwrap_or_else(|| dag.count_big());
        dag
    }

    fn count_small(&self) -> Option<Counts> {
        let mut sigma = vec![0u128; self.vertices.len()];
        sigma[0] = 1;
        for i in 1..sigma.len() {
            let mut total = 0u128;
            for &p in self.pred_slice(i) {
                total = total.checked_add(sigma[p as usize])?;
            }
            sigma[i] = total;
        }
        Some(Counts::Small(sigma))
    }

    fn count_big(&self) -> Counts {
        let mut sigma = vec![BigUint::zero(); self.vertices.len()];
        sigma[0] = BigUint::one();
        for i in 1..sigma.len() {
            let mut total = BigUint::zero();
            for &p in self.pred_slice(i) {
                total += &sigma[p as usize];
            }
            sigma[i] = total;
        }
        Counts::Big(sigma)
    }

    #[inline]
    fn pred_slice(&self, i: usize) -> &[u32] {
        &self.preds[self.pred_start[i] as usize..self.pred_start[i + 1] as usize]
    }

    fn local_of(&self, v: u32) -> Option<usize> {
        self.vertices.iter().position(|&w| w == v)
    }

    pub fn source(&self) -> u32 {
        self.source
    }

    /// Vertices of the DAG in nondecreasing distance from the source.
    pub fn vertices(&self) -> &[u32] {
        &self.vertices
    }

    pub fn dist(&self, v: u32) -> Option<u32> {
        self.local_of(v).map(|i| self.dist[i])
    }

    pub fn predecessors(&self, v: u32) -> Option<Vec<u32>> {
        self.local_of(v).map(|i| {
            self.pred_slice(i)
                .iter()
                .map(|&p| self.vertices[p as usize])
                .collect()
        })
    }

    /// Exact number of shortest paths from the source to `v` inside the DAG.
    pub fn path_count(&self, v: u32) -> Option<BigUint> {
        self.local_of(v).map(|i| self.count_at(i))
    }

    fn count_at(&self, i: usize) -> BigUint {
        match &self.counts {
            Counts::Small(s) => BigUint::from(s[i]),
            Counts::Big(s) => s[i].clone(),
        }
    }

    fn target_index(&self, target: u32) -> Result<usize> {
        self.local_of(target).ok_or(Error::Disconnected {
            a: self.source,
            b: target,
        })
    }

    /// Writes the geodesic of rank `rank` ending at local node `i` (source first).
    fn unrank_small(&self, sigma: &[u128], mut i: usize, mut rank: u128) -> Vec<u32> {
        let mut path = Vec::with_capacity(self.dist[i] as usize + 1);
        path.push(self.vertices[i]);
        while i != 0 {
            let mut next = usize::MAX;
            for &p in self.pred_slice(i) {
                let c = sigma[p as usize];
                if rank < c {
                    next = p as usize;
                    break;
                }
                rank -= c;
            }
            i = next;
            path.push(self.vertices[i]);
        }
        path.reverse();
        path
    }

    fn unrank_big(&self, sigma: &[BigUint], mut i: usize, mut rank: BigUint) -> Vec<u32> {
        let mut path = Vec::with_capacity(self.dist[i] as usize + 1);
        path.push(self.vertices[i]);
        while i != 0 {
            let mut next = usize::MAX;
            for &p in self.pred_slice(i) {
                let c = &sigma[p as usize];
                if &rank < c {
                    next = p as usize;
                    break;
                }
                rank -= c;
            }
            i = next;
            path.push(self.vertices[i]);
        }
        path.reverse();
        path
    }
}

/// A shortest path `v_0 = x, ..., v_L = y`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct GeodesicSegment {
    pub vertices: Vec<u32>,
}

impl GeodesicSegment {
    pub fn new(vertices: Vec<u32>) -> Self {
        assert!(!vertices.is_empty(), "a segment has at least one vertex");
        GeodesicSegment { vertices }
    }

    pub fn start(&self) -> u32 {
        self.vertices[0]
    }

    pub fn end(&self) -> u32 {
        *self.vertices.last().expect("nonempty")
    }

    /// Number of edges.
    pub fn len(&self) -> usize {
        self.vertices.len() - 1
    }

    pub fn is_empty(&self) -> bool {
        self.vertices.len() == 1
    }

    pub fn reversed(&self) -> Self {
        let mut vertices = self.vertices.clone();
        vertices.reverse();
        GeodesicSegment { vertices }
    }

    /// Consecutive vertices adjacent and `d(start, v_i) = i` for every `i`.
    pub fn is_valid(&self, g: &GraphMetric) -> bool {
        let x = self.start();
        self.vertices
            .windows(2)
            .all(|w| g.graph().has_edge(w[0], w[1]))
            && self
                .vertices
                .iter()
                .enumerate()
                .all(|(i, &v)| g.hop(x, v) as usize == i)
    }
}

/// Draws one geodesic from the source to `target`, uniformly among all of them.
pub fn sample_geodesic<R: Rng + ?Sized>(
    dag: &GeodesicDag,
    target: u32,
    rng: &mut R,
) -> Result<GeodesicSegment> {
    let i = dag.target_index(target)?;
    Ok(GeodesicSegment::new(sample_at(dag, i, rng)))
}

fn sample_at<R: Rng + ?Sized>(dag: &GeodesicDag, i: usize, rng: &mut R) -> Vec<u32> {
    match &dag.counts {
        Counts::Small(s) => {
            let rank = if s[i] == 1 { 0 } else { rng.gen_range(0..s[i]) };
            dag.unrank_small(s, i, rank)
        }
        Counts::Big(s) => {
            let rank = rng.gen_biguint_below(&s[i]);
            dag.unrank_big(s, i, rank)
        }
    }
}

/// All geodesics from the source to `target`, in rank order.
pub fn enumerate_geodesics(
    dag: &GeodesicDag,
    target: u32,
    cap: u64,
) -> Result<Vec<GeodesicSegment>> {
    let i = dag.target_index(target)?;
    let sigma = dag.count_at(i);
    let count = sigma
        .to_u64()
        .filter(|&c| c <= cap)
        .ok_or_else(|| Error::Capacity {
            what: format!("geodesics between {} and {}", dag.source, target),
            count: sigma.to_string(),
            cap: cap.to_string(),
        })?;
    Ok((0..count)
        .map(|k| {
            let path = match &dag.counts {
                Counts::Small(s) => dag.unrank_small(s, i, k as u128),
                Counts::Big(s) => dag.unrank_big(s, i, BigUint::from(k)),
            };
            GeodesicSegment::new(path)
        })
        .collect())
}

/// Number of geodesics between `x` and `y`.
pub fn geodesic_count(g: &GraphMetric, x: u32, y: u32) -> Result<BigUint> {
    let dag = GeodesicDag::between(g, x, y)?;
    Ok(dag.count_at(dag.vertices.len() - 1))
}

/// Uniformly random geodesic between `x` and `y`.
pub fn sample_segment<R: Rng + ?Sized>(
    g: &GraphMetric,
    x: u32,
    y: u32,
    rng: &mut R,
) -> Result<GeodesicSegment> {
    let dag = GeodesicDag::between(g, x, y)?;
    let last = dag.vertices.len() - 1;
    Ok(GeodesicSegment::new(sample_at(&dag, last, rng)))
}

/// Every geodesic between `x` and `y`, failing if there are more than `cap`.
pub fn enumerate_segments(
    g: &GraphMetric,
    x: u32,
    y: u32,
    cap: u64,
) -> Result<Vec<GeodesicSegment>> {
    let dag = GeodesicDag::between(g, x, y)?;
    enumerate_geodesics(&dag, y, cap)
}

/// Three geodesics `[x,y]`, `[y,z]`, `[z,x]`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct GeodesicTriangle {
    pub corners: [u32; 3],
    pub sides: [GeodesicSegment; 3],
    pub degenerate: bool,
}

impl GeodesicTriangle {
    /// Assembles a triangle from three sides, checking that they join up.
    pub fn new(sides: [GeodesicSegment; 3]) -> Result<Self> {
        let corners = [sides[0].start(), sides[1].start(), sides[2].start()];
        for i in 0..3 {
            if sides[i].end() != corners[(i + 1) % 3] {
                return Err(Error::InvalidParameter(format!(
                    "side {i} ends at {} but the next side starts at {}",
                    sides[i].end(),
                    corners[(i + 1) % 3]
                )));
            }
        }
        let degenerate =
            corners[0] == corners[1] || corners[1] == corners[2] || corners[0] == corners[2];
        Ok(GeodesicTriangle {
            corners,
            sides,
            degenerate,
        })
    }

    pub fn is_valid(&self, g: &GraphMetric) -> bool {
        self.sides.iter().all(|s| s.is_valid(g))
    }
}

/// Triangle on `x, y, z` with each side drawn independently and uniformly.
pub fn sample_triangle<R: Rng + ?Sized>(
    g: &GraphMetric,
    x: u32,
    y: u32,
    z: u32,
    rng: &mut R,
) -> Result<GeodesicTriangle> {
    let xy = sample_segment(g, x, y, rng)?;
    let yz = sample_segment(g, y, z, rng)?;
    let zx = sample_segment(g, z, x, rng)?;
    GeodesicTriangle::new([xy, yz, zx])
}

/// A point of the metric realization: a vertex or the midpoint of an edge.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Point {
    Vertex(u32),
    Midpoint(u32, u32),
}

/// A point on side `side` of a triangle, `offset` along it from the side's start.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SegmentPoint {
    pub side: usize,
    pub offset: HalfInt,
}

impl SegmentPoint {
    pub fn resolve(&self, tri: &GeodesicTriangle) -> Point {
        let seg = &tri.sides[self.side];
        let k = self.offset.floor() as usize;
        if self.offset.is_integer() {
            Point::Vertex(seg.vertices[k])
        } else {
            Point::Midpoint(seg.vertices[k], seg.vertices[k + 1])
        }
    }
}

/// The balance points `m_xy`, `m_yz`, `m_zx` on sides `[x,y]`, `[y,z]`, `[z,x]`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct InternalPoints {
    pub m_xy: SegmentPoint,
    pub m_yz: SegmentPoint,
    pub m_zx: SegmentPoint,
}

impl InternalPoints {
    pub fn as_array(&self) -> [SegmentPoint; 3] {
        [self.m_xy, self.m_yz, self.m_zx]
    }
}

/// Places each internal point at the Gromov product of the far corners, measured
/// from the start of its side (so `m_yz` sits `<x,z>_y` away from `y`).
pub fn locate_internal_points(g: &GraphMetric, tri: &GeodesicTriangle) -> Result<InternalPoints> {
    if tri.degenerate {
        return Err(Error::DegenerateTriangle);
    }
    let [x, y, z] = tri.corners;
    Ok(InternalPoints {
        m_xy: SegmentPoint {
            side: 0,
            offset: gromov_product_hops(g, y, z, x)?,
        },
        m_yz: SegmentPoint {
            side: 1,
            offset: gromov_product_hops(g, z, x, y)?,
        },
        m_zx: SegmentPoint {
            side: 2,
            offset: gromov_product_hops(g, x, y, z)?,
        },
    })
}

/// Distance between two points of the metric realization (unit-length edges).
pub fn point_distance(g: &GraphMetric, p: Point, q: Point) -> HalfInt {
    fn same_edge(a: (u32, u32), b: (u32, u32)) -> bool {
        a == b || a == (b.1, b.0)
    }
    match (p, q) {
        (Point::Vertex(u), Point::Vertex(v)) => HalfInt::from_int(g.hop(u, v) as i64),
        (Point::Vertex(u), Point::Midpoint(a, b)) | (Point::Midpoint(a, b), Point::Vertex(u)) => {
            HalfInt::from_doubled(1 + 2 * g.hop(u, a).min(g.hop(u, b)) as i64)
        }
        (Point::Midpoint(a, b), Point::Midpoint(c, e)) => {
            if same_edge((a, b), (c, e)) {
                HalfInt::ZERO
            } else {
                let m = g
                    .hop(a, c)
                    .min(g.hop(a, e))
                    .min(g.hop(b, c))
                    .min(g.hop(b, e));
                HalfInt::from_int(1 + m as i64)
            }
        }
    }
}
