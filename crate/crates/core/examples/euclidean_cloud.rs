//! Average hyperbolicity of Gaussian point clouds as the dimension grows.

use hypavg::estimators::{estimate_avg_fp, SampleConfig, VertexDistribution};
use hypavg::euclidean::{
    estimate_euclid_triangles, euclid_measure_all, sample_gaussian_cloud, EuclidTriangle,
    DEFAULT_TOL,
};

fn main() -> hypavg::Result<()> {
    let t = EuclidTriangle::from_sides(1.0, 1.0, 1.0);
    let r = euclid_measure_all(&t, DEFAULT_TOL);
    println!(
        "unit equilateral: slim {:.4} thin {:.4} minsize {:.4} insize {:.4}",
        r.slim, r.thin, r.minsize, r.insize
    );

    let config = SampleConfig::new(5_000, 3);
    for dim in [2, 10, 100, 1000] {
        let cloud = sample_gaussian_cloud(200, dim, 3)?;
        let hyp = estimate_avg_fp(&cloud, &VertexDistribution::uniform(200), &config)?;
        let tri = estimate_euclid_triangles(&cloud, &config, DEFAULT_TOL)?;
        println!(
            "dim {dim:>4}: fp {:.4}  slim {:.4}  thin {:.4}  insize {:.4}",
            hyp.mean, tri.slim.mean, tri.thin.mean, tri.insize.mean
        );
    }
    Ok(())
}
