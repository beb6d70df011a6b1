//! Counting and sampling shortest paths in a graph with exponentially many of them.

use hypavg::estimators::sample_rng;
use hypavg::generators::gen_hmn;
use hypavg::geodesics::{geodesic_count, sample_segment, GeodesicDag};
use hypavg::metric::GraphMetric;

fn main() -> hypavg::Result<()> {
    let h = gen_hmn(3, 40)?;
    let g = GraphMetric::new(h.graph.clone())?;
    let first = h.find("a_1_1").expect("leaf label");
    let last = h.find("a_40_1").expect("leaf label");

    println!("H_(3,40): {} vertices", g.vertex_count());
    println!("d(a_1_1, a_40_1) = {}", g.hop(first, last));
    println!(
        "geodesics between them: {}",
        geodesic_count(&g, first, last)?
    );

    let dag = GeodesicDag::between(&g, first, last)?;
    println!("interval holds {} vertices", dag.vertices().len());

    let mut rng = sample_rng(7, 0);
    for _ in 0..3 {
        let path = sample_segment(&g, first, last, &mut rng)?;
        let names: Vec<&str> = path
            .vertices
            .iter()
            .take(6)
            .map(|&v| h.labels[v as usize].as_str())
            .collect();
        println!("  {} ...", names.join(" "));
    }
    Ok(())
}
