//! Search for triangles where the measures disagree as much as possible.

use hypavg::diagnostics::{find_witness, WitnessKind};

fn main() -> hypavg::Result<()> {
    for kind in [
        WitnessKind::Slim1Thin4,
        WitnessKind::Minsize1Insize3,
        WitnessKind::FatInsize1(6),
    ] {
        let w = find_witness(kind, 100_000)?;
        let r = w.verify()?;
        println!(
            "{kind}: {} vertices, sides {:?}",
            w.graph.graph.vertex_count(),
            w.triangle.sides.each_ref().map(|s| &s.vertices)
        );
        println!(
            "  slim {} thin {} minsize {} insize {}",
            r.slim, r.thin, r.minsize, r.insize
        );
    }
    Ok(())
}
