//! Search for small triangles where the measures are as far apart as they can be.

use std::fmt;
use std::path::Path;
use std::str::FromStr;

use serde::{Deserialize, Serialize};
use serde_json::json;

use crate::diagnostics::catalog::connected_graphs;
use crate::error::{Error, Result};
use crate::generators::LabeledGraph;
use crate::geodesics::{enumerate_segments, GeodesicSegment, GeodesicTriangle};
use crate::metric::{load_graph, Graph, GraphMetric, HalfInt};
use crate::triangle::{measure_all, TriangleReport};

/// Largest catalog size searched for the extremal pairs.
const SEARCH_VERTICES: usize = 8;
const GEODESIC_CAP: u64 = 10_000;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum WitnessKind {
    /// slim 1 and thin 4.
    Slim1Thin4,
    /// minsize 1 and insize 3.
    Minsize1Insize3,
    /// slim at least `n / 2` and insize at most 1.
    FatInsize1(u32),
}

impl WitnessKind {
    pub fn accepts(&self, r: &TriangleReport) -> bool {
        match *self {
            WitnessKind::Slim1Thin4 => r.slim == 1 && r.thin == 4,
            WitnessKind::Minsize1Insize3 => r.minsize == 1 && r.insize == HalfInt::from_int(3),
            WitnessKind::FatInsize1(n) => {
                2 * r.slim >= n && r.insize <= HalfInt::from_int(1) && !r.degenerate
            }
        }
    }
}

impl fmt::Display for WitnessKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            WitnessKind::Slim1Thin4 => f.write_str("slim1-thin4"),
            WitnessKind::Minsize1Insize3 => f.write_str("minsize1-insize3"),
            WitnessKind::FatInsize1(n) => write!(f, "fat-insize1-{n}"),
        }
    }
}

impl FromStr for WitnessKind {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "slim1-thin4" => Ok(WitnessKind::Slim1Thin4),
            "minsize1-insize3" => Ok(WitnessKind::Minsize1Insize3),
            _ => {
                let n = s
                    .strip_prefix("fat-insize1-")
                    .or_else(|| {
                        s.strip_prefix("fat-insize1(")
                            .and_then(|r| r.strip_suffix(')'))
                    })
                    .and_then(|n| n.parse().ok())
                    .ok_or_else(|| {
                        Error::InvalidParameter(format!("unknown witness kind '{s}'"))
                    })?;
                Ok(WitnessKind::FatInsize1(n))
            }
        }
    }
}

/// A graph with a triangle achieving the measures of its kind.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Witness {
    pub kind: WitnessKind,
    pub graph: LabeledGraph,
    pub triangle: GeodesicTriangle,
    pub report: TriangleReport,
}

impl Witness {
    /// Recomputes the measures and checks them against the kind.
    pub fn verify(&self) -> Result<TriangleReport> {
        let g = GraphMetric::new(self.graph.graph.clone())?;
        if !self.triangle.is_valid(&g) {
            return Err(Error::InvalidParameter(
                "triangle sides are not geodesics".into(),
            ));
        }
        let r = measure_all(&g, &self.triangle);
        if r != self.report || !self.kind.accepts(&r) {
            return Err(Error::InvalidParameter(format!(
                "{} witness measures {r:?}",
                self.kind
            )));
        }
        Ok(r)
    }

    /// Writes `<kind>.edges` and `<kind>.json` into `dir`.
    pub fn save(&self, dir: &Path) -> Result<()> {
        std::fs::create_dir_all(dir).map_err(io)?;
        let stem = dir.join(self.kind.to_string());
        std::fs::write(
            stem.with_extension("edges"),
            self.graph.graph.to_edge_list(),
        )
        .map_err(io)?;
        std::fs::write(stem.with_extension("json"), self.to_json()).map_err(io)
    }

    /// Flat JSON document, one field per line.
    pub fn to_json(&self) -> String {
        let r = &self.report;
        let fields = [
            ("kind", json!(self.kind.to_string())),
            ("vertices", json!(self.graph.graph.vertex_count())),
            ("labels", json!(self.graph.labels)),
            ("edges", json!(self.graph.graph.edges().collect::<Vec<_>>())),
            ("corners", json!(self.triangle.corners)),
            (
                "sides",
                json!(self.triangle.sides.each_ref().map(|s| &s.vertices)),
            ),
            ("slim", json!(r.slim)),
            ("thin", json!(r.thin)),
            ("minsize", json!(r.minsize)),
            ("insize", json!(r.insize)),
        ];
        let body: Vec<String> = fields
            .iter()
            .map(|(k, v)| format!("  \"{k}\": {v}"))
            .collect();
        format!("{{\n{}\n}}\n", body.join(",\n"))
    }

    /// Parses [`Witness::to_json`] output.
    pub fn from_json(text: &str) -> Result<Self> {
        #[derive(Deserialize)]
        struct Doc {
            kind: String,
            vertices: usize,
            labels: Vec<String>,
            edges: Vec<(u32, u32)>,
            sides: [Vec<u32>; 3],
            slim: u32,
            thin: u32,
            minsize: u32,
            insize: HalfInt,
        }
        let d: Doc = serde_json::from_str(text)
            .map_err(|e| Error::InvalidParameter(format!("bad witness json: {e}")))?;
        let [a, b, c] = d.sides.map(GeodesicSegment::new);
        let triangle = GeodesicTriangle::new([a, b, c])?;
        Ok(Witness {
            kind: d.kind.parse()?,
            graph: LabeledGraph {
                graph: Graph::from_edges(d.vertices, d.edges)?,
                labels: d.labels,
            },
            report: TriangleReport {
                slim: d.slim,
                thin: d.thin,
                minsize: d.minsize,
                insize: d.insize,
                degenerate: triangle.degenerate,
            },
            triangle,
        })
    }

    /// Reads a witness saved by [`Witness::save`], checking the two files agree.
    pub fn load(dir: &Path, kind: WitnessKind) -> Result<Self> {
        let stem = dir.join(kind.to_string());
        let w =
            Witness::from_json(&std::fs::read_to_string(stem.with_extension("json")).map_err(io)?)?;
        let edges =
            load_graph(&std::fs::read_to_string(stem.with_extension("edges")).map_err(io)?)?;
        if edges != w.graph.graph || w.kind != kind {
            return Err(Error::InvalidParameter(
                "edge list and json disagree".into(),
            ));
        }
        Ok(w)
    }
}

fn io(e: std::io::Error) -> Error {
    Error::InvalidParameter(e.to_string())
}

/// First triangle on the given corners, over every choice of geodesic sides,
/// whose report satisfies `accept`.
fn search_corners(
    g: &GraphMetric,
    [x, y, z]: [u32; 3],
    accept: impl Fn(&TriangleReport) -> bool,
) -> Result<Option<(GeodesicTriangle, TriangleReport)>> {
    let xy = enumerate_segments(g, x, y, GEODESIC_CAP)?;
    let yz = enumerate_segments(g, y, z, GEODESIC_CAP)?;
    let zx = enumerate_segments(g, z, x, GEODESIC_CAP)?;
    for a in &xy {
        for b in &yz {
            for c in &zx {
                let t = GeodesicTriangle::new([a.clone(), b.clone(), c.clone()])?;
                let r = measure_all(g, &t);
                if accept(&r) {
                    return Ok(Some((t, r)));
                }
            }
        }
    }
    Ok(None)
}

fn search_graph(
    g: &Graph,
    kind: WitnessKind,
) -> Result<Option<(GeodesicTriangle, TriangleReport)>> {
    let m = GraphMetric::new(g.clone())?;
    let n = g.vertex_count() as u32;
    for x in 0..n {
        for y in (x + 1)..n {
            for z in (y + 1)..n {
                if let Some(hit) = search_corners(&m, [x, y, z], |r| kind.accepts(r))? {
                    return Ok(Some(hit));
                }
            }
        }
    }
    Ok(None)
}

/// Odd cycle `0..2a` with `y` on `a`, `z` on `a + 1`, and a hub joined to
/// `a`, `a + 1`, `y`, `z`. The corners are `0`, `y`, `z`.
fn fat_candidate(a: u32) -> LabeledGraph {
    let cycle = 2 * a + 1;
    let (y, z, hub) = (cycle, cycle + 1, cycle + 2);
    let mut edges: Vec<(u32, u32)> = (0..cycle).map(|i| (i, (i + 1) % cycle)).collect();
    edges.extend([
        (y, a),
        (z, a + 1),
        (hub, a),
        (hub, a + 1),
        (hub, y),
        (hub, z),
    ]);
    let mut labels: Vec<String> = (0..cycle).map(|i| format!("c_{i}")).collect();
    labels[0] = "x".into();
    labels.extend(["y".into(), "z".into(), "hub".into()]);
    LabeledGraph {
        graph: Graph::from_edges(cycle as usize + 3, edges).expect("valid construction"),
        labels,
    }
}

/// Searches for a witness of `kind`, examining at most `budget` candidate graphs.
pub fn find_witness(kind: WitnessKind, budget: u64) -> Result<Witness> {
    let mut examined = 0u64;
    match kind {
        WitnessKind::FatInsize1(_) => {
            for a in 1.. {
                if examined == budget {
                    break;
                }
                examined += 1;
                let lg = fat_candidate(a);
                let g = GraphMetric::new(lg.graph.clone())?;
                let corners = [0, 2 * a + 1, 2 * a + 2];
                if let Some((triangle, report)) = search_corners(&g, corners, |r| kind.accepts(r))?
                {
                    return Ok(Witness {
                        kind,
                        graph: lg,
                        triangle,
                        report,
                    });
                }
            }
        }
        _ => {
            let levels = connected_graphs(SEARCH_VERTICES)?;
            for g in levels.iter().flatten() {
                if examined == budget {
                    break;
                }
                examined += 1;
                if let Some((triangle, report)) = search_graph(g, kind)? {
                    let labels = (0..g.vertex_count()).map(|i| format!("v{i}")).collect();
                    let graph = LabeledGraph {
                        graph: g.clone(),
                        labels,
                    };
                    return Ok(Witness {
                        kind,
                        graph,
                        triangle,
                        report,
                    });
                }
            }
        }
    }
    Err(Error::BudgetExhausted {
        attempts: examined as usize,
        reason: format!("no {kind} witness among the candidates examined"),
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn kinds_round_trip() {
        for k in [
            WitnessKind::Slim1Thin4,
            WitnessKind::Minsize1Insize3,
            WitnessKind::FatInsize1(6),
        ] {
            assert_eq!(k.to_string().parse::<WitnessKind>().unwrap(), k);
        }
        assert_eq!(
            "fat-insize1(10)".parse::<WitnessKind>().unwrap(),
            WitnessKind::FatInsize1(10)
        );
        assert!("fat".parse::<WitnessKind>().is_err());
    }

    #[test]
    fn fat_search() {
        for n in [6, 10] {
            let w = find_witness(WitnessKind::FatInsize1(n), 100).unwrap();
            assert!(2 * w.report.slim >= n);
            assert!(w.report.insize <= HalfInt::from_int(1));
            w.verify().unwrap();
        }
        assert!(matches!(
            find_witness(WitnessKind::FatInsize1(6), 2),
            Err(Error::BudgetExhausted { attempts: 2, .. })
        ));
    }

    #[test]
    fn save_and_load() {
        let w = find_witness(WitnessKind::FatInsize1(4), 100).unwrap();
        let dir = tempfile::tempdir().unwrap();
        w.save(dir.path()).unwrap();
        let back = Witness::load(dir.path(), w.kind).unwrap();
        assert_eq!(back, w);
    }
}
