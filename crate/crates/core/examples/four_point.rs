//! Four-point values and the exact hyperbolicity constant of a small graph.

use hypavg::metric::{four_point_hops, gromov_product_hops, hyp_exact, Graph, GraphMetric};

fn main() -> hypavg::Result<()> {
    let petersen = Graph::from_edges(
        10,
        [
            (0, 1),
            (1, 2),
            (2, 3),
            (3, 4),
            (4, 0),
            (0, 5),
            (1, 6),
            (2, 7),
            (3, 8),
            (4, 9),
            (5, 7),
            (7, 9),
            (9, 6),
            (6, 8),
            (8, 5),
        ],
    )?;
    let g = GraphMetric::new(petersen)?;

    let fp = four_point_hops(&g, 0, 2, 5, 9)?;
    println!("fp(0, 2, 5, 9) = {fp}");
    println!("<2,5>_0 = {}", gromov_product_hops(&g, 2, 5, 0)?);

    let hyp = hyp_exact(&g)?;
    println!(
        "hyperbolicity {} attained at {:?}",
        hyp.value, hyp.quadruple
    );
    println!("diameter {}", g.diameter()?);
    Ok(())
}
