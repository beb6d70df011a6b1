//! Slim, thin, minsize, and insize of a single geodesic triangle on a graph.
//!
//! Distances to a geodesic change by at most one per step along it, so the scans
//! below jump ahead whenever the current value rules out the next few positions.

use serde::{Deserialize, Serialize};

use crate::geodesics::{locate_internal_points, point_distance, GeodesicTriangle, Point};
use crate::metric::{GraphMetric, HalfInt};

/// The four measures of one triangle.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct TriangleReport {
    pub slim: u32,
    pub thin: u32,
    pub minsize: u32,
    pub insize: HalfInt,
    pub degenerate: bool,
}

/// Smallest distance from `w` to a vertex of `side`, or any value `<= floor`
/// as soon as one is found.
///
/// Since `side` is a geodesic, `d(w, side[j]) >= |d(w, side[0]) - j|` and likewise
/// from the far end, which confines the search to a window around the foot of `w`.
fn dist_to_side(g: &GraphMetric, w: u32, side: &[u32], floor: u32, cur: u32) -> u32 {
    let last = side.len() - 1;
    let ds = g.hop(w, side[0]) as i64;
    let de = g.hop(w, side[last]) as i64;
    let l = last as i64;
    let centre = ((ds + l - de) / 2).clamp(0, l);
    let mut cur = cur.min(g.hop(w, side[centre as usize]));
    if cur <= floor {
        return cur;
    }
    let window = |cur: u32| {
        let c = cur as i64;
        let lo = (ds - c + 1).max(l - de - c + 1).max(0);
        let hi = (ds + c - 1).min(l - de + c - 1).min(l);
        (lo, hi)
    };
    let (mut j, _) = window(cur);
    loop {
        let (_, hi) = window(cur);
        if j > hi {
            return cur;
        }
        let t = g.hop(w, side[j as usize]);
        if t < cur {
            cur = t;
            if cur <= floor {
                return cur;
            }
        }
        j += (t - cur) as i64 + 1;
    }
}

/// Largest distance from a vertex on one side to the union of the other two.
pub fn slim(g: &GraphMetric, tri: &GeodesicTriangle) -> u32 {
    if tri.degenerate {
        return 0;
    }
    let mut best = 0;
    for i in 0..3 {
        let side = &tri.sides[i].vertices;
        let a = &tri.sides[(i + 1) % 3].vertices;
        let b = &tri.sides[(i + 2) % 3].vertices;
        let mut k = 0;
        while k < side.len() {
            let w = side[k];
            let m = dist_to_side(g, w, a, best, u32::MAX);
            let m = if m <= best {
                m
            } else {
                dist_to_side(g, w, b, best, m)
            };
            if m > best {
                best = m;
            }
            k += (best - m) as usize + 1;
        }
    }
    best
}

/// Largest distance between equal-offset vertices on the two sides leaving a
/// corner, up to the Gromov product at that corner.
pub fn thin(g: &GraphMetric, tri: &GeodesicTriangle) -> u32 {
    if tri.degenerate {
        return 0;
    }
    let mut best = 0;
    for c in 0..3 {
        let out = &tri.sides[c].vertices;
        let back = &tri.sides[(c + 2) % 3].vertices;
        // Gromov product of the far corners seen from this corner.
        let p = out.len() - 1;
        let q = back.len() - 1;
        let far = g.hop(out[p], back[0]) as usize;
        let reach = (p + q - far) / 2;
        for r in 0..=reach {
            best = best.max(g.hop(out[r], back[q - r]));
        }
    }
    best
}

/// Smallest diameter of a vertex triple with one vertex on each side.
pub fn minsize(g: &GraphMetric, tri: &GeodesicTriangle) -> u32 {
    if tri.degenerate {
        return 0;
    }
    let [s0, s1, s2] = [
        &tri.sides[0].vertices,
        &tri.sides[1].vertices,
        &tri.sides[2].vertices,
    ];
    if has_common_vertex(s0, s1, s2) {
        return 0;
    }
    let mut best = seed_minsize(g, tri);
    if best <= 1 {
        return best;
    }
    for &a in s1.iter() {
        let mut j = 0;
        while j < s2.len() {
            let b = s2[j];
            let ab = g.hop(a, b);
            if ab >= best {
                j += (ab - best) as usize + 1;
                continue;
            }
            let mut k = 0;
            while k < s0.len() {
                let c = s0[k];
                let h = g.hop(a, c).max(g.hop(b, c));
                if h >= best {
                    k += (h - best) as usize + 1;
                    continue;
                }
                best = h.max(ab);
                if best <= 1 {
                    return best;
                }
                k += 1;
            }
            j += 1;
        }
    }
    best
}

fn has_common_vertex(s0: &[u32], s1: &[u32], s2: &[u32]) -> bool {
    let (short, others) = if s0.len() <= s1.len() && s0.len() <= s2.len() {
        (s0, [s1, s2])
    } else if s1.len() <= s2.len() {
        (s1, [s0, s2])
    } else {
        (s2, [s0, s1])
    };
    short
        .iter()
        .any(|v| others[0].contains(v) && others[1].contains(v))
}

/// Diameter of the vertices at (floored) internal-point offsets: an upper bound.
fn seed_minsize(g: &GraphMetric, tri: &GeodesicTriangle) -> u32 {
    let Ok(pts) = locate_internal_points(g, tri) else {
        return u32::MAX;
    };
    let v: Vec<u32> = pts
        .as_array()
        .iter()
        .map(|p| tri.sides[p.side].vertices[p.offset.floor() as usize])
        .collect();
    g.hop(v[0], v[1])
        .max(g.hop(v[1], v[2]))
        .max(g.hop(v[0], v[2]))
}

/// Diameter of the three internal points in the metric realization.
pub fn insize(g: &GraphMetric, tri: &GeodesicTriangle) -> HalfInt {
    if tri.degenerate {
        return HalfInt::ZERO;
    }
    let pts = locate_internal_points(g, tri).expect("non-degenerate triangle");
    let p: Vec<Point> = pts.as_array().iter().map(|s| s.resolve(tri)).collect();
    point_distance(g, p[0], p[1])
        .max(point_distance(g, p[1], p[2]))
        .max(point_distance(g, p[0], p[2]))
}

/// All four measures; degenerate triangles score zero everywhere.
pub fn measure_all(g: &GraphMetric, tri: &GeodesicTriangle) -> TriangleReport {
    if tri.degenerate {
        return TriangleReport {
            degenerate: true,
            ..TriangleReport::default()
        };
    }
    TriangleReport {
        slim: slim(g, tri),
        thin: thin(g, tri),
        minsize: minsize(g, tri),
        insize: insize(g, tri),
        degenerate: false,
    }
}
