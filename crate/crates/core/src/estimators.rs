//! Monte Carlo and exact averages of the five hyperbolicity quantities under a
//! vertex distribution.
//!
//! Every sample index draws from its own ChaCha stream derived from the master
//! seed, and sums are reduced pairwise in index order, so results do not depend
//! on the number of worker threads.

use std::collections::HashMap;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, ToPrimitive, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::geodesics::{enumerate_segments, sample_triangle, GeodesicSegment, GeodesicTriangle};
use crate::metric::{four_point_hops, FiniteMetric, GraphMetric, HopMetric};
use crate::triangle::{measure_all, TriangleReport};

/// Version tag written into every JSON report.
pub const AVG_REPORT_SCHEMA: &str = "hypavg.avg_report.v1";

/// Default cap on weighted terms for exact averages.
pub const DEFAULT_EXACT_CAP: u64 = 100_000_000;

const FP_STREAMS: u64 = 0;
pub(crate) const TRIANGLE_STREAMS: u64 = 1 << 62;
pub(crate) const MODEL_STREAMS: u64 = 3 << 62;

/// Random stream for sample `index` of the run seeded with `seed`.
pub fn sample_rng(seed: u64, index: u64) -> ChaCha8Rng {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(index);
    rng
}

/// Random stream used to generate the graph or point cloud of the run seeded with `seed`,
/// disjoint from every sampling stream.
pub fn model_rng(seed: u64) -> ChaCha8Rng {
    sample_rng(seed, MODEL_STREAMS)
}

/// A probability distribution over the vertices (or points) of a metric.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct VertexDistribution {
    raw: Vec<f64>,
    support: Vec<u32>,
    cumulative: Vec<f64>,
    uniform: bool,
}

impl VertexDistribution {
    pub fn uniform(n: usize) -> Self {
        let raw = vec![1.0; n];
        Self::from_weights(&raw).expect("positive weights")
    }

    /// Normalises nonnegative weights; fails on negative, non-finite, or all-zero input.
    pub fn from_weights(weights: &[f64]) -> Result<Self> {
        if let Some((i, w)) = weights
            .iter()
            .enumerate()
            .find(|(_, w)| !w.is_finite() || **w < 0.0)
        {
            return Err(Error::InvalidParameter(format!(
                "weight {w} of vertex {i} is not a nonnegative number"
            )));
        }
        let support: Vec<u32> = (0..weights.len() as u32)
            .filter(|&v| weights[v as usize] > 0.0)
            .collect();
        if support.is_empty() {
            return Err(Error::InvalidParameter("all weights are zero".into()));
        }
        let mut acc = 0.0;
        let cumulative = support
            .iter()
            .map(|&v| {
                acc += weights[v as usize];
                acc
            })
            .collect();
        let first = weights[support[0] as usize];
        let uniform = support.len() == weights.len() && weights.iter().all(|&w| w == first);
        Ok(VertexDistribution {
            raw: weights.to_vec(),
            support,
            cumulative,
            uniform,
        })
    }

    pub fn len(&self) -> usize {
        self.raw.len()
    }

    pub fn is_empty(&self) -> bool {
        self.raw.is_empty()
    }

    pub fn support(&self) -> &[u32] {
        &self.support
    }

    pub fn is_uniform(&self) -> bool {
        self.uniform
    }

    pub fn probability(&self, v: u32) -> f64 {
        self.raw[v as usize] / self.cumulative.last().expect("nonempty support")
    }

    pub fn sample<R: Rng + ?Sized>(&self, rng: &mut R) -> u32 {
        if self.uniform {
            return rng.gen_range(0..self.raw.len() as u32);
        }
        let total = *self.cumulative.last().expect("nonempty support");
        let u = rng.gen::<f64>() * total;
        let i = self.cumulative.partition_point(|&c| c <= u);
        self.support[i.min(self.support.len() - 1)]
    }

    /// Draws `k` vertices without repeats (requires `k` support vertices).
    fn sample_distinct<R: Rng + ?Sized, const K: usize>(&self, rng: &mut R) -> [u32; K] {
        let mut out = [0u32; K];
        let mut filled = 0;
        while filled < K {
            let v = self.sample(rng);
            if !out[..filled].contains(&v) {
                out[filled] = v;
                filled += 1;
            }
        }
        out
    }

    fn draw<R: Rng + ?Sized, const K: usize>(&self, rng: &mut R, distinct: bool) -> [u32; K] {
        if distinct {
            self.sample_distinct(rng)
        } else {
            std::array::from_fn(|_| self.sample(rng))
        }
    }

    /// Weights as integers over a common denominator, with their total.
    fn integer_weights(&self) -> (Vec<BigInt>, BigInt) {
        let rationals: Vec<BigRational> = self
            .support
            .iter()
            .map(|&v| BigRational::from_float(self.raw[v as usize]).expect("finite weight"))
            .collect();
        let denom = rationals
            .iter()
            .fold(BigInt::one(), |acc, r| acc.lcm(r.denom()));
        let ints: Vec<BigInt> = rationals
            .iter()
            .map(|r| (r * BigRational::from_integer(denom.clone())).to_integer())
            .collect();
        let g = ints.iter().fold(BigInt::zero(), |acc, a| acc.gcd(a));
        let ints: Vec<BigInt> = ints.into_iter().map(|a| a / &g).collect();
        let total = ints.iter().sum();
        (ints, total)
    }

    pub fn describe(&self) -> String {
        if self.uniform {
            format!("uniform over {} vertices", self.raw.len())
        } else {
            format!(
                "weighted, support {} of {} vertices",
                self.support.len(),
                self.raw.len()
            )
        }
    }

    fn check_size(&self, n: usize) -> Result<()> {
        if self.raw.len() != n {
            return Err(Error::InvalidParameter(format!(
                "distribution covers {} points but the metric has {n}",
                self.raw.len()
            )));
        }
        Ok(())
    }

    fn check_connected<M: FiniteMetric + ?Sized>(&self, m: &M) -> Result<()> {
        self.check_size(m.size())?;
        let first = self.support[0];
        match self.support.iter().find(|&&v| !m.connected(first, v)) {
            Some(&v) => Err(Error::Disconnected { a: first, b: v }),
            None => Ok(()),
        }
    }
}

/// Sampling parameters shared by the Monte Carlo estimators.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SampleConfig {
    pub samples: u64,
    pub seed: u64,
    /// Draw pairwise distinct points instead of i.i.d. ones. Off by default.
    pub distinct: bool,
}

impl SampleConfig {
    pub fn new(samples: u64, seed: u64) -> Self {
        SampleConfig {
            samples,
            seed,
            distinct: false,
        }
    }

    fn check(&self, support: usize, k: usize) -> Result<()> {
        if self.samples == 0 {
            return Err(Error::InvalidParameter("samples must be at least 1".into()));
        }
        if self.distinct && support < k {
            return Err(Error::InvalidParameter(format!(
                "distinct sampling needs {k} support points, have {support}"
            )));
        }
        Ok(())
    }
}

/// Sample mean with a normal 95% interval and a Hoeffding 99% half-width.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct Estimate {
    pub mean: f64,
    pub std_error: f64,
    pub ci95: (f64, f64),
    pub hoeffding99: f64,
    pub samples: u64,
    pub seed: u64,
}

/// Sum in a fixed pairwise order.
pub fn pairwise_sum(values: &[f64]) -> f64 {
    if values.len() <= 32 {
        return values.iter().sum();
    }
    let mid = values.len() / 2;
    pairwise_sum(&values[..mid]) + pairwise_sum(&values[mid..])
}

impl Estimate {
    /// Summarises per-sample values known to lie in `[0, bound]`.
    pub fn from_values(values: &[f64], bound: f64, seed: u64) -> Self {
        let n = values.len() as f64;
        let mean = pairwise_sum(values) / n;
        let dev: Vec<f64> = values.iter().map(|v| (v - mean) * (v - mean)).collect();
        let var = if values.len() > 1 {
            pairwise_sum(&dev) / (n - 1.0)
        } else {
            0.0
        };
        let std_error = (var / n).sqrt();
        Estimate {
            mean,
            std_error,
            ci95: (mean - 1.96 * std_error, mean + 1.96 * std_error),
            hoeffding99: bound * ((2.0f64 / 0.01).ln() / (2.0 * n)).sqrt(),
            samples: values.len() as u64,
            seed,
        }
    }

    pub fn contains(&self, value: f64, std_errors: f64) -> bool {
        (self.mean - value).abs() <= std_errors * self.std_error
    }
}

/// Mean four-point value over i.i.d. quadruples.
pub fn estimate_avg_fp<M: FiniteMetric + ?Sized>(
    m: &M,
    dist: &VertexDistribution,
    config: &SampleConfig,
) -> Result<Estimate> {
    dist.check_connected(m)?;
    config.check(dist.support().len(), 4)?;
    let values: Vec<f64> = (0..config.samples)
        .into_par_iter()
        .map(|i| {
            let mut rng = sample_rng(config.seed, FP_STREAMS + i);
            let [x, y, z, w] = dist.draw::<_, 4>(&mut rng, config.distinct);
            let p = m.distance(x, y) + m.distance(z, w);
            let q = m.distance(x, z) + m.distance(y, w);
            let r = m.distance(x, w) + m.distance(y, z);
            0.5 * crate::metric::top_gap(p, q, r)
        })
        .collect();
    Ok(Estimate::from_values(
        &values,
        0.5 * m.max_distance(),
        config.seed,
    ))
}

/// The four triangle estimates computed on one shared set of sampled triangles.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct TriangleAverages {
    pub slim: Estimate,
    pub thin: Estimate,
    pub minsize: Estimate,
    pub insize: Estimate,
    pub degenerate: u64,
}

/// Draws a triangle for sample `index`: corners from `dist`, then one uniform geodesic per side.
pub fn sample_indexed_triangle(
    g: &GraphMetric,
    dist: &VertexDistribution,
    config: &SampleConfig,
    index: u64,
) -> Result<GeodesicTriangle> {
    let mut rng = sample_rng(config.seed, TRIANGLE_STREAMS + index);
    let [x, y, z] = dist.draw::<_, 3>(&mut rng, config.distinct);
    sample_triangle(g, x, y, z, &mut rng)
}

/// Per-sample reports for triangles `0..config.samples`, in index order.
pub fn sample_triangle_reports(
    g: &GraphMetric,
    dist: &VertexDistribution,
    config: &SampleConfig,
) -> Result<Vec<TriangleReport>> {
    dist.check_connected(g)?;
    config.check(dist.support().len(), 3)?;
    (0..config.samples)
        .into_par_iter()
        .map(|i| sample_indexed_triangle(g, dist, config, i).map(|t| measure_all(g, &t)))
        .collect()
}

pub fn estimate_avg_triangles(
    g: &GraphMetric,
    dist: &VertexDistribution,
    config: &SampleConfig,
) -> Result<TriangleAverages> {
    let reports = sample_triangle_reports(g, dist, config)?;
    let diam = g.max_distance();
    Ok(summarize_reports(&reports, diam, config.seed))
}

/// Folds per-triangle reports into estimates; `diam` bounds every measure.
pub fn summarize_reports(reports: &[TriangleReport], diam: f64, seed: u64) -> TriangleAverages {
    let column = |f: fn(&TriangleReport) -> f64| reports.iter().map(f).collect::<Vec<f64>>();
    TriangleAverages {
        slim: Estimate::from_values(&column(|r| r.slim as f64), diam, seed),
        thin: Estimate::from_values(&column(|r| r.thin as f64), diam, seed),
        minsize: Estimate::from_values(&column(|r| r.minsize as f64), diam, seed),
        insize: Estimate::from_values(&column(|r| r.insize.to_f64()), diam + 1.0, seed),
        degenerate: reports.iter().filter(|r| r.degenerate).count() as u64,
    }
}

fn cap_error(what: String, count: impl ToString, cap: u64) -> Error {
    Error::Capacity {
        what,
        count: count.to_string(),
        cap: cap.to_string(),
    }
}

/// Exact mean four-point value over i.i.d. quadruples from `dist`.
pub fn exact_avg_fp<M: HopMetric + FiniteMetric + ?Sized>(
    m: &M,
    dist: &VertexDistribution,
    cap: u64,
) -> Result<BigRational> {
    dist.check_connected(m)?;
    let support = dist.support();
    let s = support.len() as u128;
    let terms = s.pow(4);
    if terms > cap as u128 {
        return Err(cap_error("weighted quadruples".into(), terms, cap));
    }
    let (weights, total) = dist.integer_weights();
    let small: Option<Vec<u128>> = weights
        .iter()
        .map(|w| w.to_u128().filter(|&w| w <= 1 << 20))
        .collect();
    let hop = |a: u32, b: u32| m.hops(a, b).expect("connected support") as i64;
    // the value is symmetric and vanishes when two points coincide, so strictly
    // increasing index quadruples cover every nonzero ordered term 24 times
    let n = support.len();
    let numerator: BigInt = match small {
        Some(w) => {
            let acc: u128 = (0..n)
                .into_par_iter()
                .map(|i| {
                    let x = support[i];
                    let mut acc = 0u128;
                    for j in i + 1..n {
                        let y = support[j];
                        let wxy = w[i] * w[j];
                        let dxy = hop(x, y);
                        for k in j + 1..n {
                            let z = support[k];
                            let (dxz, dyz) = (hop(x, z), hop(y, z));
                            let mut inner = 0u128;
                            for l in k + 1..n {
                                let v = support[l];
                                let gap = crate::metric::top_gap(
                                    dxy + hop(z, v),
                                    dxz + hop(y, v),
                                    hop(x, v) + dyz,
                                );
                                inner += w[l] * gap as u128;
                            }
                            acc += wxy * w[k] * inner;
                        }
                    }
                    acc
                })
                .sum();
            BigInt::from(acc) * 24
        }
        None => {
            let mut acc = BigInt::zero();
            for i in 0..n {
                for j in i + 1..n {
                    for k in j + 1..n {
                        for l in k + 1..n {
                            let [x, y, z, v] = [i, j, k, l].map(|t| support[t]);
                            let gap = four_point_hops(m, x, y, z, v)?.doubled();
                            if gap != 0 {
                                acc += &weights[i] * &weights[j] * &weights[k] * &weights[l] * gap;
                            }
                        }
                    }
                }
            }
            acc * 24
        }
    };
    let denom = BigInt::from(2) * total.pow(4);
    Ok(BigRational::new(numerator, denom))
}

/// Exact expectations of the four triangle measures.
#[derive(Clone, Debug, PartialEq)]
pub struct ExactTriangleAverages {
    pub slim: BigRational,
    pub thin: BigRational,
    pub minsize: BigRational,
    pub insize: BigRational,
}

/// Exact expectation over i.i.d. corners and uniformly chosen geodesics, by full enumeration.
pub fn exact_avg_triangles(
    g: &GraphMetric,
    dist: &VertexDistribution,
    geodesic_cap: u64,
    budget: u64,
) -> Result<ExactTriangleAverages> {
    dist.check_connected(g)?;
    let support = dist.support();
    let s = support.len();
    let mut segments: HashMap<(u32, u32), Vec<GeodesicSegment>> = HashMap::new();
    for (i, &x) in support.iter().enumerate() {
        for &y in &support[i..] {
            let forward = enumerate_segments(g, x, y, geodesic_cap).map_err(|e| match e {
                Error::Capacity { count, .. } => cap_error(
                    format!("geodesics between {x} and {y}"),
                    count,
                    geodesic_cap,
                ),
                other => other,
            })?;
            let backward = forward.iter().map(GeodesicSegment::reversed).collect();
            segments.insert((y, x), backward);
            segments.insert((x, y), forward);
        }
    }
    let count = |a: u32, b: u32| segments[&(a, b)].len() as u128;
    let mut combos = 0u128;
    for &x in support {
        for &y in support {
            for &z in support {
                combos += count(x, y) * count(y, z) * count(z, x);
            }
        }
    }
    if combos > budget as u128 {
        return Err(cap_error("geodesic triangles".into(), combos, budget));
    }

    let (weights, total) = dist.integer_weights();
    // Numerators grouped by the number of geodesic combinations of each triple.
    let mut groups: HashMap<u128, [BigInt; 4]> = HashMap::new();
    for i in 0..s {
        for j in 0..s {
            for k in 0..s {
                let (x, y, z) = (support[i], support[j], support[k]);
                if x == y || y == z || x == z {
                    continue;
                }
                let sums = triple_sums(
                    g,
                    &segments[&(x, y)],
                    &segments[&(y, z)],
                    &segments[&(z, x)],
                );
                if sums.iter().all(|&v| v == 0) {
                    continue;
                }
                let w = &weights[i] * &weights[j] * &weights[k];
                let entry = groups
                    .entry(count(x, y) * count(y, z) * count(z, x))
                    .or_insert_with(|| std::array::from_fn(|_| BigInt::zero()));
                for (slot, v) in entry.iter_mut().zip(sums) {
                    *slot += &w * v;
                }
            }
        }
    }
    let mut out: [BigRational; 4] = std::array::from_fn(|_| BigRational::zero());
    for (denom, numer) in groups {
        for (slot, v) in out.iter_mut().zip(numer) {
            *slot += BigRational::new(v, BigInt::from(denom));
        }
    }
    let scale = BigRational::from_integer(total.pow(3));
    let [slim, thin, minsize, insize] = out.map(|v| v / &scale);
    Ok(ExactTriangleAverages {
        slim,
        thin,
        minsize,
        insize: insize / BigRational::from_integer(BigInt::from(2)),
    })
}

/// Sums of slim, thin, minsize, and doubled insize over every geodesic combination.
fn triple_sums(
    g: &GraphMetric,
    xy: &[GeodesicSegment],
    yz: &[GeodesicSegment],
    zx: &[GeodesicSegment],
) -> [u64; 4] {
    let mut sums = [0u64; 4];
    for a in xy {
        for b in yz {
            for c in zx {
                let t = GeodesicTriangle::new([a.clone(), b.clone(), c.clone()])
                    .expect("sides share corners");
                let r = measure_all(g, &t);
                sums[0] += r.slim as u64;
                sums[1] += r.thin as u64;
                sums[2] += r.minsize as u64;
                sums[3] += r.insize.doubled() as u64;
            }
        }
    }
    sums
}

/// An exact rational average, also given as a float.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct ExactValue {
    pub rational: String,
    pub value: f64,
}

impl From<&BigRational> for ExactValue {
    fn from(r: &BigRational) -> Self {
        ExactValue {
            rational: r.to_string(),
            value: r.to_f64().unwrap_or(f64::NAN),
        }
    }
}

/// Exact averages of all five quantities.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct ExactReport {
    pub hyp: ExactValue,
    pub slim: ExactValue,
    pub thin: ExactValue,
    pub minsize: ExactValue,
    pub insize: ExactValue,
}

impl ExactReport {
    pub fn new(hyp: &BigRational, tri: &ExactTriangleAverages) -> Self {
        ExactReport {
            hyp: hyp.into(),
            slim: (&tri.slim).into(),
            thin: (&tri.thin).into(),
            minsize: (&tri.minsize).into(),
            insize: (&tri.insize).into(),
        }
    }
}

/// Size summary of the measured graph.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct GraphDescriptor {
    pub name: String,
    pub vertices: usize,
    pub edges: usize,
    pub diameter: u32,
}

/// JSON-serialisable summary of one estimation run.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct AvgReport {
    pub schema_version: String,
    pub graph: GraphDescriptor,
    pub distribution: String,
    pub hyp: Estimate,
    pub slim: Estimate,
    pub thin: Estimate,
    pub minsize: Estimate,
    pub insize: Estimate,
    pub samples: u64,
    pub seed: u64,
    pub degenerate_triangles: u64,
    pub wall_time_ms: u64,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub exact: Option<ExactReport>,
}

/// Runs both estimators on a graph and bundles the result.
pub fn estimate_all(
    name: &str,
    g: &GraphMetric,
    dist: &VertexDistribution,
    config: &SampleConfig,
) -> Result<AvgReport> {
    let start = std::time::Instant::now();
    let hyp = estimate_avg_fp(g, dist, config)?;
    let tri = estimate_avg_triangles(g, dist, config)?;
    Ok(AvgReport {
        schema_version: AVG_REPORT_SCHEMA.into(),
        graph: GraphDescriptor {
            name: name.into(),
            vertices: g.vertex_count(),
            edges: g.graph().edge_count(),
            diameter: g.diameter()?,
        },
        distribution: dist.describe(),
        hyp,
        slim: tri.slim,
        thin: tri.thin,
        minsize: tri.minsize,
        insize: tri.insize,
        samples: config.samples,
        seed: config.seed,
        degenerate_triangles: tri.degenerate,
        wall_time_ms: start.elapsed().as_millis() as u64,
        exact: None,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::metric::Graph;

    fn metric(n: usize, edges: &[(u32, u32)]) -> GraphMetric {
        GraphMetric::new(Graph::from_edges(n, edges.iter().copied()).unwrap()).unwrap()
    }

    fn cycle(n: u32) -> GraphMetric {
        let edges: Vec<_> = (0..n).map(|i| (i, (i + 1) % n)).collect();
        metric(n as usize, &edges)
    }

    fn ratio(a: i64, b: i64) -> BigRational {
        BigRational::new(a.into(), b.into())
    }

    #[test]
    fn distribution_validation() {
        assert!(VertexDistribution::from_weights(&[0.0, 0.0]).is_err());
        assert!(VertexDistribution::from_weights(&[1.0, -1.0]).is_err());
        let d = VertexDistribution::from_weights(&[1.0, 1.0, 1.0, 0.0, 0.0]).unwrap();
        assert_eq!(d.support(), &[0, 1, 2]);
        assert!((d.probability(1) - 1.0 / 3.0).abs() < 1e-15);
        let u = VertexDistribution::uniform(4);
        assert!(u.is_uniform() && u.probability(3) == 0.25);
    }

    #[test]
    fn weighted_sampling_frequencies() {
        let d = VertexDistribution::from_weights(&[1.0, 0.0, 3.0]).unwrap();
        let mut rng = sample_rng(1, 0);
        let hits = (0..40_000).filter(|_| d.sample(&mut rng) == 2).count();
        assert!((29_000..31_000).contains(&hits), "{hits}");
    }

    #[test]
    fn estimate_statistics() {
        let e = Estimate::from_values(&[0.0, 1.0, 0.0, 1.0], 1.0, 5);
        assert_eq!(e.mean, 0.5);
        assert!((e.std_error - (1.0f64 / 3.0 / 4.0).sqrt()).abs() < 1e-12);
        assert!(e.ci95.0 <= e.mean && e.mean <= e.ci95.1);
        assert!((e.hoeffding99 - (200f64.ln() / 8.0).sqrt()).abs() < 1e-12);
    }

    #[test]
    fn exact_fp_on_c4() {
        // 24 of the 256 ordered quadruples are permutations of (0,1,2,3) with fp 1;
        // repeated-point quadruples score 0 except those mixing antipodes, which
        // on C_4 also score 0.
        let g = cycle(4);
        let v = exact_avg_fp(&g, &VertexDistribution::uniform(4), DEFAULT_EXACT_CAP).unwrap();
        assert_eq!(v, ratio(24, 256));
    }

    #[test]
    fn exact_fp_single_atom() {
        let g = cycle(5);
        let d = VertexDistribution::from_weights(&[0.0, 2.0, 0.0, 0.0, 0.0]).unwrap();
        assert!(exact_avg_fp(&g, &d, DEFAULT_EXACT_CAP).unwrap().is_zero());
    }

    #[test]
    fn exact_fp_weights_scale_invariant() {
        let g = cycle(6);
        let a = VertexDistribution::from_weights(&[1.0, 2.0, 0.5, 1.0, 3.0, 0.25]).unwrap();
        let b = VertexDistribution::from_weights(&[4.0, 8.0, 2.0, 4.0, 12.0, 1.0]).unwrap();
        assert_eq!(
            exact_avg_fp(&g, &a, DEFAULT_EXACT_CAP).unwrap(),
            exact_avg_fp(&g, &b, DEFAULT_EXACT_CAP).unwrap()
        );
    }

    #[test]
    fn exact_caps() {
        let g = cycle(6);
        assert!(matches!(
            exact_avg_fp(&g, &VertexDistribution::uniform(6), 100),
            Err(Error::Capacity { .. })
        ));
        assert!(matches!(
            exact_avg_triangles(&g, &VertexDistribution::uniform(6), 1, DEFAULT_EXACT_CAP),
            Err(Error::Capacity { .. })
        ));
    }

    #[test]
    fn tree_averages_are_zero() {
        let g = metric(6, &[(0, 1), (1, 2), (1, 3), (3, 4), (4, 5)]);
        let d = VertexDistribution::uniform(6);
        let cfg = SampleConfig::new(2000, 3);
        assert_eq!(estimate_avg_fp(&g, &d, &cfg).unwrap().mean, 0.0);
        let t = estimate_avg_triangles(&g, &d, &cfg).unwrap();
        for e in [t.slim, t.thin, t.minsize, t.insize] {
            assert_eq!(e.mean, 0.0);
        }
        let ex = exact_avg_triangles(&g, &d, 10, DEFAULT_EXACT_CAP).unwrap();
        assert!(
            ex.slim.is_zero() && ex.thin.is_zero() && ex.minsize.is_zero() && ex.insize.is_zero()
        );
    }

    #[test]
    fn monte_carlo_matches_exact_on_c6() {
        let g = cycle(6);
        let d = VertexDistribution::uniform(6);
        let cfg = SampleConfig::new(100_000, 11);
        let ex = exact_avg_triangles(&g, &d, 10, DEFAULT_EXACT_CAP).unwrap();
        let mc = estimate_avg_triangles(&g, &d, &cfg).unwrap();
        for (e, x) in [
            (mc.slim, &ex.slim),
            (mc.thin, &ex.thin),
            (mc.minsize, &ex.minsize),
            (mc.insize, &ex.insize),
        ] {
            assert!(e.contains(x.to_f64().unwrap(), 4.0), "{e:?} vs {x}");
        }
        let fp = exact_avg_fp(&g, &d, DEFAULT_EXACT_CAP).unwrap();
        let mc = estimate_avg_fp(&g, &d, &cfg).unwrap();
        assert!(mc.contains(fp.to_f64().unwrap(), 4.0));
    }

    #[test]
    fn deterministic_across_thread_counts() {
        let g = cycle(9);
        let d = VertexDistribution::uniform(9);
        let cfg = SampleConfig::new(5000, 42);
        let run = |threads| {
            rayon::ThreadPoolBuilder::new()
                .num_threads(threads)
                .build()
                .unwrap()
                .install(|| {
                    (
                        estimate_avg_fp(&g, &d, &cfg).unwrap(),
                        estimate_avg_triangles(&g, &d, &cfg).unwrap(),
                    )
                })
        };
        assert_eq!(run(1), run(4));
    }

    #[test]
    fn disconnected_support_is_rejected() {
        let g = metric(4, &[(0, 1), (2, 3)]);
        let cfg = SampleConfig::new(10, 0);
        assert!(estimate_avg_fp(&g, &VertexDistribution::uniform(4), &cfg).is_err());
        let d = VertexDistribution::from_weights(&[1.0, 1.0, 0.0, 0.0]).unwrap();
        assert!(estimate_avg_fp(&g, &d, &cfg).is_ok());
    }

    #[test]
    fn distinct_sampling_avoids_degenerate_triangles() {
        let g = cycle(5);
        let cfg = SampleConfig {
            distinct: true,
            ..SampleConfig::new(500, 1)
        };
        let t = estimate_avg_triangles(&g, &VertexDistribution::uniform(5), &cfg).unwrap();
        assert_eq!(t.degenerate, 0);
    }
}
