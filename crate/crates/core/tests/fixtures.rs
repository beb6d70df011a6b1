mod common;

use hypavg::diagnostics::{audit_graph, AuditOptions, Witness, WitnessKind};
use hypavg::estimators::{exact_avg_fp, exact_avg_triangles, DEFAULT_EXACT_CAP};
use hypavg::generators::atom_distribution;
use hypavg::geodesics::{enumerate_segments, GeodesicTriangle};
use hypavg::metric::{load_graph, GraphMetric, HalfInt};
use hypavg::triangle::slim;
use num_rational::BigRational;
use num_traits::Zero;

fn graph(name: &str) -> GraphMetric {
    let path = common::fixtures()
        .join("graphs")
        .join(format!("{name}.edges"));
    GraphMetric::new(load_graph(&std::fs::read_to_string(path).unwrap()).unwrap()).unwrap()
}

#[test]
fn witnesses_measure_as_claimed() {
    let dir = common::fixtures().join("witnesses");
    let w = Witness::load(&dir, WitnessKind::Slim1Thin4).unwrap();
    let r = w.verify().unwrap();
    assert_eq!((r.slim, r.thin), (1, 4));
    let w = Witness::load(&dir, WitnessKind::Minsize1Insize3).unwrap();
    let r = w.verify().unwrap();
    assert_eq!((r.minsize, r.insize), (1, HalfInt::from_int(3)));
    for n in [6, 10] {
        let w = Witness::load(&dir, WitnessKind::FatInsize1(n)).unwrap();
        let r = w.verify().unwrap();
        assert!(2 * r.slim >= n && r.insize <= HalfInt::from_int(1));
    }
}

#[test]
fn graph_fixtures_pass_the_audit() {
    let opts = AuditOptions {
        samples: 2_000,
        ..AuditOptions::default()
    };
    for name in [
        "path6", "star5", "tree20", "c5", "c6", "c9", "k4", "petersen", "grid4",
    ] {
        let report = audit_graph(name, &graph(name), &opts).unwrap().finish();
        assert!(report.passed(), "{name}: {report:?}");
    }
}

#[test]
fn three_atoms_give_two_ninths_of_the_slimness() {
    let g = graph("c9");
    let mut weights = vec![0.0; 9];
    for v in [0, 3, 6] {
        weights[v] = 1.0;
    }
    let dist = atom_distribution(&weights).unwrap();
    assert!(exact_avg_fp(&g, &dist, DEFAULT_EXACT_CAP)
        .unwrap()
        .is_zero());
    let side = |x, y| enumerate_segments(&g, x, y, 10).unwrap().remove(0);
    let t = GeodesicTriangle::new([side(0, 3), side(3, 6), side(6, 0)]).unwrap();
    let s = slim(&g, &t);
    assert!(s > 0);
    let avg = exact_avg_triangles(&g, &dist, 10, DEFAULT_EXACT_CAP).unwrap();
    assert_eq!(avg.slim, BigRational::new((2 * s as i64).into(), 9.into()));
}
