//! Monte Carlo and exact average hyperbolicity on the subdivided complete graph G_n.

use hypavg::estimators::{
    estimate_all, exact_avg_fp, exact_avg_triangles, SampleConfig, VertexDistribution,
    DEFAULT_EXACT_CAP,
};
use hypavg::generators::gen_gn;
use hypavg::metric::{Graph, GraphMetric};

fn main() -> hypavg::Result<()> {
    for n in [9, 16, 25] {
        let g = GraphMetric::new(gen_gn(n)?.graph)?;
        let dist = VertexDistribution::uniform(g.vertex_count());
        let r = estimate_all(&format!("G_{n}"), &g, &dist, &SampleConfig::new(20_000, 1))?;
        println!(
            "G_{n:<3} hyp {:.3} ± {:.3}   slim {:.3} ± {:.3}   minsize {:.3}",
            r.hyp.mean, r.hyp.std_error, r.slim.mean, r.slim.std_error, r.minsize.mean
        );
    }

    let c6 = GraphMetric::new(Graph::from_edges(6, (0..6).map(|i| (i, (i + 1) % 6)))?)?;
    let dist = VertexDistribution::uniform(6);
    let hyp = exact_avg_fp(&c6, &dist, DEFAULT_EXACT_CAP)?;
    let tri = exact_avg_triangles(&c6, &dist, 1_000, DEFAULT_EXACT_CAP)?;
    println!(
        "C_6 exact: hyp {hyp}, slim {}, thin {}, minsize {}, insize {}",
        tri.slim, tri.thin, tri.minsize, tri.insize
    );
    Ok(())
}
