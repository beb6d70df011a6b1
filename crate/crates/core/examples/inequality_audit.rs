//! Exhaustive audit of the inequalities between the measures on every small connected graph.

use hypavg::diagnostics::{audit_catalog, connected_graphs, worst_case_measures};
use hypavg::metric::GraphMetric;

fn main() -> hypavg::Result<()> {
    let levels = connected_graphs(6)?;
    let mut worst = (0, 0);
    for g in levels.iter().flatten() {
        let wc = worst_case_measures(&GraphMetric::new(g.clone())?, 10_000)?;
        worst = worst.max((wc.thin, wc.slim));
    }
    println!("largest (thin, slim) on up to 6 vertices: {worst:?}");

    let report = audit_catalog(7, 10_000)?.finish();
    for r in &report.inequalities {
        println!(
            "{:<48} {:>9} checked, {} violations",
            r.id, r.checked, r.violation_count
        );
    }
    println!("passed: {}", report.passed());
    Ok(())
}
