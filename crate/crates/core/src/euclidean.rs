//! Gaussian point clouds and the hyperbolicity measures of Euclidean triangles.
//!
//! Three points span at most a plane, so every triangle is first laid out in 2-D
//! from its side lengths.

use rand::Rng;
use rand_distr::{Distribution, Normal};
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::estimators::{
    sample_rng, Estimate, SampleConfig, TriangleAverages, MODEL_STREAMS, TRIANGLE_STREAMS,
};
use crate::metric::FiniteMetric;

/// Default absolute tolerance of the numeric optimisations.
pub const DEFAULT_TOL: f64 = 1e-9;

/// Points in `R^dim`.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct PointCloud {
    pub dim: usize,
    pub points: Vec<Vec<f64>>,
}

impl PointCloud {
    pub fn new(dim: usize, points: Vec<Vec<f64>>) -> Result<Self> {
        if let Some(i) = points.iter().position(|p| p.len() != dim) {
            return Err(Error::InvalidParameter(format!(
                "point {i} has {} coordinates, expected {dim}",
                points[i].len()
            )));
        }
        Ok(PointCloud { dim, points })
    }

    pub fn len(&self) -> usize {
        self.points.len()
    }

    pub fn is_empty(&self) -> bool {
        self.points.is_empty()
    }

    /// CSV with header `x0,...,x{dim-1}` and one row per point.
    pub fn to_csv(&self) -> String {
        let mut w = csv::Writer::from_writer(Vec::new());
        w.write_record((0..self.dim).map(|i| format!("x{i}")))
            .expect("in-memory write");
        for p in &self.points {
            w.write_record(p.iter().map(|v| format!("{v:?}")))
                .expect("in-memory write");
        }
        String::from_utf8(w.into_inner().expect("in-memory flush")).expect("ascii")
    }

    pub fn from_csv(text: &str) -> Result<Self> {
        let mut r = csv::Reader::from_reader(text.as_bytes());
        let dim = r
            .headers()
            .map_err(|e| Error::Parse {
                line: 1,
                message: e.to_string(),
            })?
            .len();
        let mut points = Vec::new();
        for (i, rec) in r.records().enumerate() {
            let rec = rec.map_err(|e| Error::Parse {
                line: i + 2,
                message: e.to_string(),
            })?;
            let p = rec
                .iter()
                .map(|v| {
                    v.trim().parse::<f64>().map_err(|_| Error::Parse {
                        line: i + 2,
                        message: format!("invalid coordinate {v:?}"),
                    })
                })
                .collect::<Result<Vec<f64>>>()?;
            points.push(p);
        }
        PointCloud::new(dim, points)
    }
}

fn euclid(a: &[f64], b: &[f64]) -> f64 {
    a.iter()
        .zip(b)
        .map(|(x, y)| (x - y) * (x - y))
        .sum::<f64>()
        .sqrt()
}

impl FiniteMetric for PointCloud {
    fn size(&self) -> usize {
        self.points.len()
    }
    fn distance(&self, i: u32, j: u32) -> f64 {
        euclid(&self.points[i as usize], &self.points[j as usize])
    }
}

/// I.i.d. centred Gaussian points with per-coordinate variance `1/dim`, so that
/// `E|x - y|^2 = 2`. Point `i` has its own stream of `seed`, apart from the sampling streams.
pub fn sample_gaussian_cloud(count: usize, dim: usize, seed: u64) -> Result<PointCloud> {
    if count == 0 || dim == 0 {
        return Err(Error::InvalidParameter(
            "count and dim must be at least 1".into(),
        ));
    }
    let normal = Normal::new(0.0, (1.0 / dim as f64).sqrt()).expect("positive deviation");
    let points = (0..count as u64)
        .into_par_iter()
        .map(|i| {
            let mut rng = sample_rng(seed, MODEL_STREAMS + 1 + i);
            (0..dim).map(|_| normal.sample(&mut rng)).collect()
        })
        .collect();
    Ok(PointCloud { dim, points })
}

type P2 = [f64; 2];

fn d2(p: P2, q: P2) -> f64 {
    ((p[0] - q[0]).powi(2) + (p[1] - q[1]).powi(2)).sqrt()
}

fn lerp(p: P2, q: P2, t: f64) -> P2 {
    [p[0] + t * (q[0] - p[0]), p[1] + t * (q[1] - p[1])]
}

fn dist_to_segment(p: P2, a: P2, b: P2) -> f64 {
    let (vx, vy) = (b[0] - a[0], b[1] - a[1]);
    let len2 = vx * vx + vy * vy;
    let t = if len2 == 0.0 {
        0.0
    } else {
        (((p[0] - a[0]) * vx + (p[1] - a[1]) * vy) / len2).clamp(0.0, 1.0)
    };
    d2(p, lerp(a, b, t))
}

/// Planar layout `A = (0,0)`, `B = (c,0)`, `C` above the axis, from side lengths.
fn layout(a: f64, b: f64, c: f64) -> [P2; 3] {
    if c == 0.0 {
        return [[0.0, 0.0], [0.0, 0.0], [b, 0.0]];
    }
    let cx = (b * b + c * c - a * a) / (2.0 * c);
    let cy = (b * b - cx * cx).max(0.0).sqrt();
    [[0.0, 0.0], [c, 0.0], [cx, cy]]
}

/// A Euclidean triangle given by its three side lengths.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct EuclidTriangle {
    /// `|BC|`, `|CA|`, `|AB|`.
    pub sides: [f64; 3],
    corners: [P2; 3],
}

impl EuclidTriangle {
    pub fn from_points(a: &[f64], b: &[f64], c: &[f64]) -> Self {
        Self::from_sides(euclid(b, c), euclid(c, a), euclid(a, b))
    }

    pub fn from_sides(a: f64, b: f64, c: f64) -> Self {
        EuclidTriangle {
            sides: [a, b, c],
            corners: layout(a, b, c),
        }
    }

    fn is_degenerate(&self) -> bool {
        self.sides.contains(&0.0)
    }

    /// Segments `[B,C]`, `[C,A]`, `[A,B]` as endpoint pairs.
    fn segments(&self) -> [(P2, P2); 3] {
        let [a, b, c] = self.corners;
        [(b, c), (c, a), (a, b)]
    }
}

/// Measures of one Euclidean triangle.
#[derive(Clone, Copy, Debug, Default, PartialEq, Serialize, Deserialize)]
pub struct EuclidTriangleReport {
    pub slim: f64,
    pub thin: f64,
    pub minsize: f64,
    pub insize: f64,
    pub a: f64,
    pub b: f64,
    pub c: f64,
}

/// Angle at the corner opposite side `opp`, adjacent to sides `u` and `v`.
fn corner_angle(opp: f64, u: f64, v: f64) -> f64 {
    ((u * u + v * v - opp * opp) / (2.0 * u * v))
        .clamp(-1.0, 1.0)
        .acos()
}

/// Thinness: at each corner the equal-offset points are farthest apart at the
/// Gromov product, where they are `2 <,> sin(angle/2)` apart.
pub fn euclid_thin(t: &EuclidTriangle) -> f64 {
    if t.is_degenerate() {
        return 0.0;
    }
    let [a, b, c] = t.sides;
    let mut best: f64 = 0.0;
    for (opp, u, v) in [(a, b, c), (b, c, a), (c, a, b)] {
        let product = (0.5 * (u + v - opp)).max(0.0);
        best = best.max(2.0 * product * (0.5 * corner_angle(opp, u, v)).sin());
    }
    best
}

/// Insize from side lengths: the incircle contact points on the two sides at a
/// corner are `s - opp` away from it.
pub fn euclid_insize(t: &EuclidTriangle) -> f64 {
    if t.is_degenerate() {
        return 0.0;
    }
    let [a, b, c] = t.sides;
    let s = 0.5 * (a + b + c);
    let mut best: f64 = 0.0;
    for (opp, u, v) in [(a, b, c), (b, c, a), (c, a, b)] {
        let ratio = ((s - u).max(0.0) * (s - v).max(0.0) / (u * v)).sqrt();
        best = best.max(2.0 * (s - opp).max(0.0) * ratio);
    }
    best
}

const INV_PHI: f64 = 0.618_033_988_749_894_8;

/// Maximiser of a function on `[lo, hi]` assumed unimodal there.
fn golden_max(f: impl Fn(f64) -> f64, mut lo: f64, mut hi: f64, tol: f64) -> (f64, f64) {
    let mut x1 = hi - INV_PHI * (hi - lo);
    let mut x2 = lo + INV_PHI * (hi - lo);
    let (mut f1, mut f2) = (f(x1), f(x2));
    while hi - lo > tol {
        if f1 < f2 {
            lo = x1;
            x1 = x2;
            f1 = f2;
            x2 = lo + INV_PHI * (hi - lo);
            f2 = f(x2);
        } else {
            hi = x2;
            x2 = x1;
            f2 = f1;
            x1 = hi - INV_PHI * (hi - lo);
            f1 = f(x1);
        }
    }
    let x = 0.5 * (lo + hi);
    let fx = f(x);
    [(x, fx), (x1, f1), (x2, f2)]
        .into_iter()
        .fold((x, fx), |acc, p| if p.1 > acc.1 { p } else { acc })
}

fn golden_min(f: impl Fn(f64) -> f64, lo: f64, hi: f64, tol: f64) -> (f64, f64) {
    let (x, v) = golden_max(|t| -f(t), lo, hi, tol);
    (x, -v)
}

const SLIM_GRID: usize = 64;

/// Slimness: the farthest any point of a side gets from the other two sides.
pub fn euclid_slim(t: &EuclidTriangle, tol: f64) -> f64 {
    if t.is_degenerate() {
        return 0.0;
    }
    let segs = t.segments();
    let mut best: f64 = 0.0;
    for i in 0..3 {
        let (p, q) = segs[i];
        let (o1, o2) = (segs[(i + 1) % 3], segs[(i + 2) % 3]);
        let len = d2(p, q);
        if len == 0.0 {
            continue;
        }
        let f = |s: f64| {
            let w = lerp(p, q, s);
            dist_to_segment(w, o1.0, o1.1).min(dist_to_segment(w, o2.0, o2.1))
        };
        let grid: Vec<f64> = (0..=SLIM_GRID)
            .map(|k| f(k as f64 / SLIM_GRID as f64))
            .collect();
        let top = grid.iter().cloned().fold(0.0, f64::max);
        let step = len / SLIM_GRID as f64;
        best = best.max(top);
        for k in 0..=SLIM_GRID {
            let left = if k > 0 {
                grid[k - 1]
            } else {
                f64::NEG_INFINITY
            };
            let right = if k < SLIM_GRID {
                grid[k + 1]
            } else {
                f64::NEG_INFINITY
            };
            // f is 1-Lipschitz in arc length, so only peaks near the top can win.
            if grid[k] >= left && grid[k] >= right && grid[k] + step >= top {
                let lo = k.saturating_sub(1) as f64 / SLIM_GRID as f64;
                let hi = (k + 1).min(SLIM_GRID) as f64 / SLIM_GRID as f64;
                best = best.max(golden_max(f, lo, hi, tol / len).1);
            }
        }
    }
    best
}

/// Minsize: the smallest diameter of a triple with one point on each side.
///
/// The diameter is jointly convex in the three positions and partial minima of
/// convex functions stay convex, so nested golden-section searches are exact up
/// to the tolerance.
pub fn euclid_minsize(t: &EuclidTriangle, tol: f64) -> f64 {
    if t.is_degenerate() {
        return 0.0;
    }
    let [(b, c), (c2, a), (a2, b2)] = t.segments();
    let tol = tol / t.sides.iter().cloned().fold(1.0, f64::max);
    let inner = |x: P2, y: P2| {
        let xy = d2(x, y);
        let (_, v) = golden_min(
            |s| {
                let z = lerp(a2, b2, s);
                d2(x, z).max(d2(y, z))
            },
            0.0,
            1.0,
            tol,
        );
        v.max(xy)
    };
    let middle = |x: P2| golden_min(|s| inner(x, lerp(c2, a, s)), 0.0, 1.0, tol).1;
    golden_min(|s| middle(lerp(b, c, s)), 0.0, 1.0, tol).1
}

pub fn euclid_measure_all(t: &EuclidTriangle, tol: f64) -> EuclidTriangleReport {
    let [a, b, c] = t.sides;
    EuclidTriangleReport {
        slim: euclid_slim(t, tol),
        thin: euclid_thin(t),
        minsize: euclid_minsize(t, tol),
        insize: euclid_insize(t),
        a,
        b,
        c,
    }
}

/// Triangle measures averaged over i.i.d. uniform triples of cloud points.
/// Repeated points give a degenerate triangle scoring zero.
pub fn estimate_euclid_triangles(
    cloud: &PointCloud,
    config: &SampleConfig,
    tol: f64,
) -> Result<TriangleAverages> {
    if cloud.is_empty() || config.samples == 0 {
        return Err(Error::InvalidParameter(
            "need a nonempty cloud and at least one sample".into(),
        ));
    }
    let n = cloud.len() as u32;
    let reports: Vec<(EuclidTriangleReport, bool)> = (0..config.samples)
        .into_par_iter()
        .map(|i| {
            let mut rng = sample_rng(config.seed, TRIANGLE_STREAMS + i);
            let [x, y, z]: [u32; 3] = std::array::from_fn(|_| rng.gen_range(0..n));
            if x == y || y == z || x == z {
                return (EuclidTriangleReport::default(), true);
            }
            let p = &cloud.points;
            let t = EuclidTriangle::from_points(&p[x as usize], &p[y as usize], &p[z as usize]);
            (euclid_measure_all(&t, tol), false)
        })
        .collect();
    let diam = cloud.max_distance();
    let column = |f: fn(&EuclidTriangleReport) -> f64| {
        reports.iter().map(|(r, _)| f(r)).collect::<Vec<f64>>()
    };
    let seed = config.seed;
    Ok(TriangleAverages {
        slim: Estimate::from_values(&column(|r| r.slim), diam, seed),
        thin: Estimate::from_values(&column(|r| r.thin), diam, seed),
        minsize: Estimate::from_values(&column(|r| r.minsize), diam, seed),
        insize: Estimate::from_values(&column(|r| r.insize), diam, seed),
        degenerate: reports.iter().filter(|(_, d)| *d).count() as u64,
    })
}
