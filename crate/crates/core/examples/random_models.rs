//! Random regular and Erdős–Rényi graphs: distances, traffic and the giant component.

use hypavg::diagnostics::{
    dspl_stats, regular_traffic_bound, rrg_dspl_variance, solve_conjugate, solve_giant_fraction,
    traffic_all,
};
use hypavg::estimators::model_rng;
use hypavg::generators::{gen_er, gen_rrg, giant_component};
use hypavg::metric::GraphMetric;

fn main() -> hypavg::Result<()> {
    let g = GraphMetric::new(gen_rrg(2000, 3, &mut model_rng(1))?)?;
    let s = dspl_stats(&g, 100_000, 1)?;
    println!(
        "RRG(2000, 3): mean distance {:.3}, variance {:.3} (limit {:.3})",
        s.mean,
        s.variance,
        rrg_dspl_variance(3)
    );

    let small = GraphMetric::new(gen_rrg(500, 3, &mut model_rng(2))?)?;
    let max = traffic_all(&small).into_iter().max().unwrap_or(0);
    let diam = small.diameter()?;
    println!(
        "RRG(500, 3): max traffic {max}, bound {:.0} at diameter {diam}",
        regular_traffic_bound(3, diam)
    );

    let lambda = 5.0;
    let er = gen_er(4000, lambda, &mut model_rng(3))?;
    let giant = giant_component(&er);
    println!(
        "ER(4000, 5/n): giant holds {:.4} of the vertices, predicted {:.4}; conjugate {:.5}",
        giant.graph.vertex_count() as f64 / 4000.0,
        solve_giant_fraction(lambda)?,
        solve_conjugate(lambda)?
    );
    Ok(())
}
