//! The four triangle measures and the internal points of one geodesic triangle.

use hypavg::geodesics::{locate_internal_points, GeodesicSegment, GeodesicTriangle};
use hypavg::metric::{Graph, GraphMetric};
use hypavg::triangle::measure_all;

fn main() -> hypavg::Result<()> {
    let n = 12;
    let g = GraphMetric::new(Graph::from_edges(
        n as usize,
        (0..n).map(|i| (i, (i + 1) % n)),
    )?)?;
    let side = |a: u32, len: u32| GeodesicSegment::new((0..=len).map(|k| (a + k) % n).collect());
    let tri = GeodesicTriangle::new([side(0, 4), side(4, 4), side(8, 4)])?;

    let r = measure_all(&g, &tri);
    println!("C_12 triangle on 0, 4, 8");
    println!(
        "slim {} thin {} minsize {} insize {}",
        r.slim, r.thin, r.minsize, r.insize
    );

    for p in locate_internal_points(&g, &tri)?.as_array() {
        println!(
            "  internal point on side {} at offset {}: {:?}",
            p.side,
            p.offset,
            p.resolve(&tri)
        );
    }
    Ok(())
}
