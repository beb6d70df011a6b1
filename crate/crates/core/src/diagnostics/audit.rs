//! Checks of the inequalities relating the five measures, with witnesses for violations.

use std::collections::BTreeMap;

use num_rational::BigRational;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};
use serde_json::{json, Value};

use crate::diagnostics::catalog::connected_graphs;
use crate::diagnostics::worst_case::{for_each_triangle, worst_case_measures, WorstCase};
use crate::error::{Error, Result};
use crate::estimators::{
    exact_avg_fp, exact_avg_triangles, sample_indexed_triangle, ExactTriangleAverages,
    SampleConfig, VertexDistribution, DEFAULT_EXACT_CAP,
};
use crate::metric::{GraphMetric, HalfInt};
use crate::triangle::{measure_all, TriangleReport};

/// Version tag written into every audit JSON document.
pub const AUDIT_REPORT_SCHEMA: &str = "hypavg.audit_report.v1";

/// Violations kept per inequality; further ones are only counted.
const KEPT_VIOLATIONS: usize = 20;

/// One failed instance of an inequality.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Violation {
    pub detail: String,
    pub witness: Value,
}

/// Outcome of one inequality across all instances checked.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct InequalityResult {
    pub id: String,
    pub checked: u64,
    pub violation_count: u64,
    pub violations: Vec<Violation>,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct AuditReport {
    pub schema_version: String,
    pub inequalities: Vec<InequalityResult>,
}

impl AuditReport {
    pub fn passed(&self) -> bool {
        self.inequalities.iter().all(|i| i.violation_count == 0)
    }

    pub fn total_violations(&self) -> u64 {
        self.inequalities.iter().map(|i| i.violation_count).sum()
    }

    pub fn total_checked(&self) -> u64 {
        self.inequalities.iter().map(|i| i.checked).sum()
    }
}

/// Accumulates inequality checks; `witness` closures run only on failure.
#[derive(Clone, Debug, Default)]
pub struct Auditor {
    results: BTreeMap<String, InequalityResult>,
}

impl Auditor {
    pub fn new() -> Self {
        Self::default()
    }

    /// Records one instance of inequality `id`.
    pub fn check(
        &mut self,
        id: &str,
        holds: bool,
        detail: impl FnOnce() -> String,
        witness: impl FnOnce() -> Value,
    ) {
        let entry = self
            .results
            .entry(id.to_string())
            .or_insert_with(|| InequalityResult {
                id: id.to_string(),
                checked: 0,
                violation_count: 0,
                violations: Vec::new(),
            });
        entry.checked += 1;
        if !holds {
            entry.violation_count += 1;
            if entry.violations.len() < KEPT_VIOLATIONS {
                entry.violations.push(Violation {
                    detail: detail(),
                    witness: witness(),
                });
            }
        }
    }

    /// Per-triangle relations between the four triangle measures.
    pub fn triangle(&mut self, r: &TriangleReport, witness: impl Fn() -> Value) {
        if r.degenerate {
            return;
        }
        let ins = r.insize.doubled();
        let min2 = 2 * r.minsize as i64;
        let thin2 = 2 * r.thin as i64;
        let show = || format!("{r:?}");
        self.check("triangle: slim <= thin", r.slim <= r.thin, show, &witness);
        self.check(
            "triangle: thin <= 4 slim",
            r.thin <= 4 * r.slim,
            show,
            &witness,
        );
        self.check("triangle: minsize <= insize", min2 <= ins, show, &witness);
        self.check(
            "triangle: insize <= 3 minsize",
            ins <= 3 * min2,
            show,
            &witness,
        );
        self.check(
            "triangle: insize <= thin + 1",
            ins <= thin2 + 2,
            show,
            &witness,
        );
    }

    /// Relations between the worst-case constants of one graph.
    pub fn worst_case(&mut self, wc: &WorstCase, witness: impl Fn() -> Value) {
        let hyp = wc.hyp.doubled();
        let slim2 = 2 * wc.slim as i64;
        let thin2 = 2 * wc.thin as i64;
        let show = || {
            format!(
                "hyp {} slim {} thin {} minsize {} insize {}",
                wc.hyp, wc.slim, wc.thin, wc.minsize, wc.insize
            )
        };
        self.check(
            "worst: hyp <= 2 slim + 1/2",
            hyp <= 2 * slim2 + 1,
            show,
            &witness,
        );
        self.check("worst: hyp <= thin + 1/2", hyp <= thin2 + 1, show, &witness);
        self.check(
            "worst: slim <= 3 hyp + 1/2",
            slim2 <= 3 * hyp + 1,
            show,
            &witness,
        );
        self.check(
            "worst: thin <= 4 slim",
            wc.thin <= 4 * wc.slim,
            show,
            &witness,
        );
        self.check(
            "worst: minsize <= insize",
            HalfInt::from_int(wc.minsize as i64) <= wc.insize,
            show,
            &witness,
        );
    }

    /// Relations between exact averages.
    pub fn expectations(
        &mut self,
        hyp: &BigRational,
        tri: &ExactTriangleAverages,
        witness: impl Fn() -> Value,
    ) {
        let half = BigRational::new(1.into(), 2.into());
        let k = |n: i64| BigRational::from_integer(n.into());
        let (z, t, e, i) = (&tri.slim, &tri.thin, &tri.minsize, &tri.insize);
        let show = || format!("hyp {hyp} slim {z} thin {t} minsize {e} insize {i}");
        let mut c = |id: &str, holds: bool| self.check(id, holds, show, &witness);
        c("mean: hyp <= 2 slim + 1/2", hyp <= &(k(2) * z + &half));
        c("mean: hyp <= thin + 1/2", hyp <= &(t + &half));
        c("mean: hyp <= 2 minsize", hyp <= &(k(2) * e));
        c("mean: minsize <= insize", e <= i);
        c("mean: insize <= 3 minsize", i <= &(k(3) * e));
        c("mean: slim <= thin", z <= t);
        c("mean: thin <= 4 slim", t <= &(k(4) * z));
        c("mean: insize <= thin + 1", i <= &(t + k(1)));
    }

    /// Merges another auditor's counts into this one.
    pub fn merge(&mut self, other: Auditor) {
        for (id, r) in other.results {
            match self.results.get_mut(&id) {
                Some(mine) => {
                    mine.checked += r.checked;
                    mine.violation_count += r.violation_count;
                    let room = KEPT_VIOLATIONS.saturating_sub(mine.violations.len());
                    mine.violations.extend(r.violations.into_iter().take(room));
                }
                None => {
                    self.results.insert(id, r);
                }
            }
        }
    }

    pub fn finish(self) -> AuditReport {
        AuditReport {
            schema_version: AUDIT_REPORT_SCHEMA.into(),
            inequalities: self.results.into_values().collect(),
        }
    }
}

/// What [`audit_graph`] runs on one graph.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct AuditOptions {
    /// Uniformly sampled triangles checked individually.
    pub samples: u64,
    pub seed: u64,
    pub geodesic_cap: u64,
    /// Graphs with at most this many vertices also get the worst-case and exact-average checks.
    pub exhaustive_vertices: usize,
}

impl Default for AuditOptions {
    fn default() -> Self {
        AuditOptions {
            samples: 10_000,
            seed: 1,
            geodesic_cap: 10_000,
            exhaustive_vertices: 10,
        }
    }
}

/// Checks that the metric is the shortest-path metric of its graph: zero on the
/// diagonal, changing by at most one along each edge, and every positive
/// distance dropping by one at some neighbour.
pub fn audit_metric(a: &mut Auditor, name: &str, g: &GraphMetric) {
    let graph = g.graph();
    let n = graph.vertex_count() as u32;
    for u in 0..n {
        for v in 0..n {
            let d = g.hop(u, v);
            let ok = if u == v {
                d == 0
            } else if !g.same_component(u, v) {
                true
            } else {
                let around = graph.neighbors(v).iter().map(|&w| g.hop(u, w));
                d > 0
                    && around.clone().all(|e| e.abs_diff(d) <= 1)
                    && around.into_iter().any(|e| e + 1 == d)
            };
            a.check(
                "metric: distances are shortest-path lengths",
                ok,
                || format!("d({u}, {v}) = {d}"),
                || json!({ "graph": name, "pair": [u, v], "distance": d }),
            );
        }
    }
}

/// Metric consistency, sampled per-triangle checks, and for small graphs the
/// worst-case and exact-average checks (skipped once the metric is found broken).
pub fn audit_graph(name: &str, g: &GraphMetric, opts: &AuditOptions) -> Result<Auditor> {
    let mut a = Auditor::new();
    audit_metric(&mut a, name, g);
    let dist = VertexDistribution::uniform(g.vertex_count());
    let config = SampleConfig::new(opts.samples, opts.seed);
    let parts: Vec<Auditor> = (0..opts.samples)
        .into_par_iter()
        .map(|i| {
            let mut part = Auditor::new();
            match sample_indexed_triangle(g, &dist, &config, i) {
                Ok(t) => part.triangle(
                    &measure_all(g, &t),
                    || json!({ "graph": name, "sample": i, "triangle": t }),
                ),
                Err(e @ (Error::Capacity { .. } | Error::TooLarge { .. })) => return Err(e),
                Err(e) => part.check(
                    "metric: geodesics follow the distances",
                    false,
                    || e.to_string(),
                    || json!({ "graph": name, "sample": i }),
                ),
            }
            Ok(part)
        })
        .collect::<Result<_>>()?;
    parts.into_iter().for_each(|p| a.merge(p));
    if g.vertex_count() <= opts.exhaustive_vertices
        && a.results.values().all(|r| r.violation_count == 0)
    {
        a.merge(audit_small(name, g, opts.geodesic_cap)?);
    }
    Ok(a)
}

/// Every triangle, the worst-case constants, and the exact uniform averages of a small graph.
pub fn audit_small(name: &str, g: &GraphMetric, geodesic_cap: u64) -> Result<Auditor> {
    let mut a = Auditor::new();
    for_each_triangle(g, geodesic_cap, |t, r| {
        a.triangle(r, || json!({ "graph": name, "triangle": t }));
    })?;
    let edges = || json!({ "graph": name, "edges": g.graph().edges().collect::<Vec<_>>() });
    let wc = worst_case_measures(g, geodesic_cap)?;
    a.worst_case(&wc, edges);
    let dist = VertexDistribution::uniform(g.vertex_count());
    let hyp = exact_avg_fp(g, &dist, DEFAULT_EXACT_CAP)?;
    let tri = exact_avg_triangles(g, &dist, geodesic_cap, DEFAULT_EXACT_CAP)?;
    a.expectations(&hyp, &tri, edges);
    Ok(a)
}

/// [`audit_small`] on every connected graph with at most `max_vertices` vertices.
pub fn audit_catalog(max_vertices: usize, geodesic_cap: u64) -> Result<Auditor> {
    let graphs: Vec<_> = connected_graphs(max_vertices)?
        .into_iter()
        .flatten()
        .collect();
    let parts: Vec<Auditor> = graphs
        .par_iter()
        .enumerate()
        .map(|(i, graph)| {
            let g = GraphMetric::new(graph.clone())?;
            let mut a = Auditor::new();
            audit_metric(&mut a, &format!("catalog-{i}"), &g);
            a.merge(audit_small(&format!("catalog-{i}"), &g, geodesic_cap)?);
            Ok(a)
        })
        .collect::<Result<_>>()?;
    let mut all = Auditor::new();
    parts.into_iter().for_each(|p| all.merge(p));
    Ok(all)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::metric::{apsp, DistanceMatrix, Graph};

    #[test]
    fn flags_bad_triangle() {
        let mut a = Auditor::new();
        let good = TriangleReport {
            slim: 1,
            thin: 2,
            minsize: 2,
            insize: HalfInt::from_int(2),
            degenerate: false,
        };
        a.triangle(&good, || json!("good"));
        let bad = TriangleReport { thin: 5, ..good };
        a.triangle(&bad, || json!("bad"));
        let report = a.finish();
        assert!(!report.passed());
        let thin = report
            .inequalities
            .iter()
            .find(|i| i.id == "triangle: thin <= 4 slim")
            .unwrap();
        assert_eq!((thin.checked, thin.violation_count), (2, 1));
        assert_eq!(thin.violations[0].witness, json!("bad"));
    }

    #[test]
    fn merge_adds_counts() {
        let mut a = Auditor::new();
        a.check("x", true, String::new, || Value::Null);
        let mut b = Auditor::new();
        b.check("x", false, String::new, || Value::Null);
        a.merge(b);
        let r = a.finish();
        assert_eq!(
            (r.inequalities[0].checked, r.inequalities[0].violation_count),
            (2, 1)
        );
    }

    #[test]
    fn small_catalog_passes() {
        let r = audit_catalog(5, 1_000).unwrap().finish();
        assert!(r.passed(), "{r:?}");
        assert!(r.total_checked() > 100);
    }

    #[test]
    fn corrupted_matrix_is_caught() {
        let graph = Graph::from_edges(6, (0..6).map(|i| (i, (i + 1) % 6))).unwrap();
        let mut rows: Vec<Vec<u32>> = {
            let d = apsp(&graph).unwrap();
            (0..6)
                .map(|u| (0..6).map(|v| d.get(u, v).unwrap()).collect())
                .collect()
        };
        let opts = AuditOptions {
            samples: 50,
            ..AuditOptions::default()
        };
        let clean =
            GraphMetric::with_distances(graph.clone(), DistanceMatrix::from_rows(&rows).unwrap())
                .unwrap();
        assert!(audit_graph("c6", &clean, &opts).unwrap().finish().passed());
        rows[0][3] = 5;
        rows[3][0] = 5;
        let bad =
            GraphMetric::with_distances(graph, DistanceMatrix::from_rows(&rows).unwrap()).unwrap();
        let report = audit_graph("c6", &bad, &opts).unwrap().finish();
        assert!(!report.passed());
        let metric = report
            .inequalities
            .iter()
            .find(|i| i.id.starts_with("metric"))
            .unwrap();
        assert!(metric.violations[0].witness["pair"].is_array());
    }
}
