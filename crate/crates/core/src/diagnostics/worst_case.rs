//! Exact suprema of the five measures by exhaustive enumeration.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::geodesics::{enumerate_segments, GeodesicSegment, GeodesicTriangle};
use crate::metric::{hyp_exact, GraphMetric, HalfInt};
use crate::triangle::{measure_all, TriangleReport};

/// Worst-case values, each with a triangle (or quadruple) attaining it.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct WorstCase {
    pub hyp: HalfInt,
    pub slim: u32,
    pub thin: u32,
    pub minsize: u32,
    pub insize: HalfInt,
    pub hyp_quadruple: [u32; 4],
    pub slim_triangle: Option<GeodesicTriangle>,
    pub thin_triangle: Option<GeodesicTriangle>,
    pub minsize_triangle: Option<GeodesicTriangle>,
    pub insize_triangle: Option<GeodesicTriangle>,
}

/// All geodesics between every pair, indexed `[x][y]`.
pub fn all_geodesics(g: &GraphMetric, cap: u64) -> Result<Vec<Vec<Vec<GeodesicSegment>>>> {
    let n = g.vertex_count() as u32;
    let mut table = vec![vec![Vec::new(); n as usize]; n as usize];
    for x in 0..n {
        for y in x..n {
            let forward = enumerate_segments(g, x, y, cap)?;
            table[y as usize][x as usize] = forward.iter().map(GeodesicSegment::reversed).collect();
            table[x as usize][y as usize] = forward;
        }
    }
    Ok(table)
}

/// Calls `visit` on every triangle with corners `x < y < z`, over every choice of geodesic sides.
pub fn for_each_triangle(
    g: &GraphMetric,
    geodesic_cap: u64,
    mut visit: impl FnMut(GeodesicTriangle, &TriangleReport),
) -> Result<()> {
    let table = all_geodesics(g, geodesic_cap)?;
    let n = g.vertex_count();
    // Every measure is invariant under relabelling the corners, so unordered triples suffice.
    for x in 0..n {
        for y in (x + 1)..n {
            for z in (y + 1)..n {
                for a in &table[x][y] {
                    for b in &table[y][z] {
                        for c in &table[z][x] {
                            let t = GeodesicTriangle::new([a.clone(), b.clone(), c.clone()])?;
                            let r = measure_all(g, &t);
                            visit(t, &r);
                        }
                    }
                }
            }
        }
    }
    Ok(())
}

/// Suprema over every quadruple and every geodesic triangle of a small connected graph.
pub fn worst_case_measures(g: &GraphMetric, geodesic_cap: u64) -> Result<WorstCase> {
    if !g.is_connected() {
        return Err(Error::NotConnected {
            components: g.component_count(),
        });
    }
    let hyp = hyp_exact(g)?;
    let mut wc = WorstCase {
        hyp: HalfInt::from_doubled((2.0 * hyp.value) as i64),
        slim: 0,
        thin: 0,
        minsize: 0,
        insize: HalfInt::ZERO,
        hyp_quadruple: hyp.quadruple,
        slim_triangle: None,
        thin_triangle: None,
        minsize_triangle: None,
        insize_triangle: None,
    };
    for_each_triangle(g, geodesic_cap, |t, r| {
        if r.slim > wc.slim || wc.slim_triangle.is_none() {
            wc.slim = r.slim;
            wc.slim_triangle = Some(t.clone());
        }
        if r.thin > wc.thin || wc.thin_triangle.is_none() {
            wc.thin = r.thin;
            wc.thin_triangle = Some(t.clone());
        }
        if r.minsize > wc.minsize || wc.minsize_triangle.is_none() {
            wc.minsize = r.minsize;
            wc.minsize_triangle = Some(t.clone());
        }
        if r.insize > wc.insize || wc.insize_triangle.is_none() {
            wc.insize = r.insize;
            wc.insize_triangle = Some(t);
        }
    })?;
    Ok(wc)
}
