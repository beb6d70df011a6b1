//! Empirical checks for the random graph models: traffic counts, distance
//! statistics, neighbourhood growth, the colour-count inequality, and the two
//! scalar equations governing Erdős–Rényi graphs.

use std::collections::{HashMap, HashSet};

use num_rational::Ratio;
use rand::Rng;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::estimators::{pairwise_sum, sample_rng};
use crate::metric::{Graph, GraphMetric};

/// Number of ordered pairs `(x, y)` having some geodesic through `w`.
pub fn traffic(g: &GraphMetric, w: u32) -> u64 {
    let n = g.vertex_count() as u32;
    let dw: Vec<u32> = (0..n).map(|v| g.hop(w, v)).collect();
    let mut count = 0u64;
    for x in 0..n {
        let dx = dw[x as usize];
        for y in 0..n {
            if dx + dw[y as usize] == g.hop(x, y) {
                count += 1;
            }
        }
    }
    count
}

/// Traffic of every vertex.
pub fn traffic_all(g: &GraphMetric) -> Vec<u64> {
    (0..g.vertex_count() as u32)
        .into_par_iter()
        .map(|w| traffic(g, w))
        .collect()
}

/// Upper bound `d^2/(d-2)^2 (d-1)^D` on the traffic of a `d`-regular graph of diameter `D`.
pub fn regular_traffic_bound(d: u32, diameter: u32) -> f64 {
    let d = d as f64;
    d * d / ((d - 2.0) * (d - 2.0)) * (d - 1.0).powi(diameter as i32)
}

/// Mean and variance of the distance between two random distinct vertices.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct DsplStats {
    pub mean: f64,
    pub variance: f64,
    pub pairs: u64,
    pub exhaustive: bool,
}

/// Distance statistics over `pair_samples` uniform ordered pairs of distinct
/// vertices, or over all of them when that is no more work.
pub fn dspl_stats(g: &GraphMetric, pair_samples: u64, seed: u64) -> Result<DsplStats> {
    if !g.is_connected() {
        return Err(Error::NotConnected {
            components: g.component_count(),
        });
    }
    let n = g.vertex_count() as u64;
    if n < 2 {
        return Err(Error::InvalidParameter("need at least two vertices".into()));
    }
    let all = n * (n - 1);
    let (values, exhaustive): (Vec<f64>, bool) = if pair_samples >= all {
        let v = (0..n as u32)
            .flat_map(|x| (0..n as u32).filter(move |&y| y != x).map(move |y| (x, y)))
            .map(|(x, y)| g.hop(x, y) as f64)
            .collect();
        (v, true)
    } else {
        let v = (0..pair_samples)
            .into_par_iter()
            .map(|i| {
                let mut rng = sample_rng(seed, i);
                let x = rng.gen_range(0..n as u32);
                let mut y = rng.gen_range(0..n as u32 - 1);
                if y >= x {
                    y += 1;
                }
                g.hop(x, y) as f64
            })
            .collect();
        (v, false)
    };
    let k = values.len() as f64;
    let mean = pairwise_sum(&values) / k;
    let dev: Vec<f64> = values.iter().map(|v| (v - mean) * (v - mean)).collect();
    let variance = if values.len() > 1 {
        pairwise_sum(&dev) / (k - 1.0)
    } else {
        0.0
    };
    Ok(DsplStats {
        mean,
        variance,
        pairs: values.len() as u64,
        exhaustive,
    })
}

/// Limiting variance `pi^2 / (6 ln^2 (d-1)) + 1/12` of the distance in a random `d`-regular graph.
pub fn rrg_dspl_variance(d: u32) -> f64 {
    let l = ((d - 1) as f64).ln();
    std::f64::consts::PI.powi(2) / (6.0 * l * l) + 1.0 / 12.0
}

/// Sizes of the BFS spheres and balls around a vertex.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct NeighborhoodProfile {
    /// `layers[r]` vertices at distance exactly `r`.
    pub layers: Vec<u64>,
    /// `cumulative[r]` vertices within distance `r`.
    pub cumulative: Vec<u64>,
}

impl NeighborhoodProfile {
    /// Sphere sizes never exceed `d (d-1)^(r-1)`.
    pub fn within_regular_bound(&self, d: u64) -> bool {
        self.layers
            .iter()
            .enumerate()
            .skip(1)
            .all(|(r, &size)| size as f64 <= d as f64 * ((d - 1) as f64).powi(r as i32 - 1))
    }

    /// Sphere sizes never exceed `(r+1)^2 lambda^r ln n`.
    pub fn within_er_bound(&self, lambda: f64, n: usize) -> bool {
        let ln_n = (n as f64).ln();
        self.layers.iter().enumerate().skip(1).all(|(r, &size)| {
            size as f64 <= ((r + 1) * (r + 1)) as f64 * lambda.powi(r as i32) * ln_n
        })
    }
}

pub fn neighborhood_profile(g: &Graph, x: u32) -> NeighborhoodProfile {
    let dist = g.bfs(x);
    let radius = dist
        .iter()
        .filter(|&&d| d != u32::MAX)
        .max()
        .copied()
        .unwrap_or(0);
    let mut layers = vec![0u64; radius as usize + 1];
    for &d in &dist {
        if d != u32::MAX {
            layers[d as usize] += 1;
        }
    }
    let cumulative = layers
        .iter()
        .scan(0, |acc, &s| {
            *acc += s;
            Some(*acc)
        })
        .collect();
    NeighborhoodProfile { layers, cumulative }
}

/// A bipartite graph `U x V` with a colour on every edge.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ColoredBipartite {
    pub left: usize,
    pub right: usize,
    /// `(u, v, colour)` with `u < left`, `v < right`.
    pub edges: Vec<(u32, u32, u32)>,
}

impl ColoredBipartite {
    /// `K_{a,b}` with every edge its own colour.
    pub fn rainbow(a: usize, b: usize) -> Self {
        let edges = (0..a as u32)
            .flat_map(|u| (0..b as u32).map(move |v| (u, v, u * b as u32 + v)))
            .collect();
        ColoredBipartite {
            left: a,
            right: b,
            edges,
        }
    }

    /// Random bipartite graph with edge density `p` and `colors` colours.
    pub fn random<R: Rng + ?Sized>(
        left: usize,
        right: usize,
        p: f64,
        colors: u32,
        rng: &mut R,
    ) -> Self {
        let mut edges = Vec::new();
        for u in 0..left as u32 {
            for v in 0..right as u32 {
                if rng.gen::<f64>() < p {
                    edges.push((u, v, rng.gen_range(0..colors.max(1))));
                }
            }
        }
        ColoredBipartite { left, right, edges }
    }
}

/// `max_c |E_c| - |E|^2 / (sum_U t(u) * sum_V t(v))`, where `t` counts the distinct
/// colours at a vertex. The inequality says this is never negative.
pub fn verify_colors_bound(inst: &ColoredBipartite) -> Result<Ratio<i128>> {
    if inst.edges.is_empty() {
        return Err(Error::InvalidParameter("instance has no edges".into()));
    }
    let mut seen = HashSet::new();
    let mut left_colors = vec![HashSet::new(); inst.left];
    let mut right_colors = vec![HashSet::new(); inst.right];
    let mut per_color = HashMap::new();
    for &(u, v, c) in &inst.edges {
        if u as usize >= inst.left || v as usize >= inst.right {
            return Err(Error::InvalidParameter(format!(
                "edge ({u}, {v}) outside {}x{}",
                inst.left, inst.right
            )));
        }
        if !seen.insert((u, v)) {
            return Err(Error::InvalidParameter(format!(
                "duplicate edge ({u}, {v})"
            )));
        }
        left_colors[u as usize].insert(c);
        right_colors[v as usize].insert(c);
        *per_color.entry(c).or_insert(0i128) += 1;
    }
    let e = inst.edges.len() as i128;
    let tu: i128 = left_colors.iter().map(|s| s.len() as i128).sum();
    let tv: i128 = right_colors.iter().map(|s| s.len() as i128).sum();
    let largest = per_color.values().copied().max().unwrap_or(0);
    Ok(Ratio::from_integer(largest) - Ratio::new(e * e, tu * tv))
}

fn bisect(f: impl Fn(f64) -> f64, mut lo: f64, mut hi: f64, tol: f64) -> f64 {
    let flo = f(lo);
    while hi - lo > tol {
        let mid = 0.5 * (lo + hi);
        if (f(mid) > 0.0) == (flo > 0.0) {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    0.5 * (lo + hi)
}

/// The `mu` in `(0, 1)` with `mu e^(-mu) = lambda e^(-lambda)`.
pub fn solve_conjugate(lambda: f64) -> Result<f64> {
    if !lambda.is_finite() || lambda <= 1.0 {
        return Err(Error::InvalidParameter(format!(
            "lambda must exceed 1, got {lambda}"
        )));
    }
    let target = lambda * (-lambda).exp();
    Ok(bisect(|x| x * (-x).exp() - target, 0.0, 1.0, 1e-12))
}

/// The positive root of `gamma = 1 - e^(-lambda gamma)`: the giant component fraction.
pub fn solve_giant_fraction(lambda: f64) -> Result<f64> {
    if !lambda.is_finite() || lambda <= 1.0 {
        return Err(Error::InvalidParameter(format!(
            "lambda must exceed 1, got {lambda}"
        )));
    }
    // The map is positive just above 0 and nonpositive at 1.
    Ok(bisect(|g| -(-lambda * g).exp_m1() - g, 1e-300, 1.0, 1e-12))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::generators::gen_rrg;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    fn metric(n: usize, edges: &[(u32, u32)]) -> GraphMetric {
        GraphMetric::new(Graph::from_edges(n, edges.iter().copied()).unwrap()).unwrap()
    }

    #[test]
    fn traffic_examples() {
        let star = metric(4, &[(0, 1), (0, 2), (0, 3)]);
        assert_eq!(traffic(&star, 0), 13);
        let path = metric(3, &[(0, 1), (1, 2)]);
        assert_eq!(traffic(&path, 0), 5);
    }

    #[test]
    fn traffic_floor_and_geodetic_identity() {
        // an odd cycle with a pendant path is geodetic
        let g = metric(
            8,
            &[
                (0, 1),
                (1, 2),
                (2, 3),
                (3, 4),
                (4, 0),
                (2, 5),
                (5, 6),
                (6, 7),
            ],
        );
        let n = g.vertex_count() as u64;
        let all = traffic_all(&g);
        assert!(all.iter().all(|&t| t >= 2 * n - 1));
        let total: u64 = all.iter().sum();
        let pairs: u64 = (0..n as u32)
            .flat_map(|x| (0..n as u32).map(move |y| (x, y)))
            .map(|(x, y)| g.hop(x, y) as u64 + 1)
            .sum();
        assert_eq!(total, pairs);
    }

    #[test]
    fn dspl_examples() {
        let k5 = metric(
            5,
            &[
                (0, 1),
                (0, 2),
                (0, 3),
                (0, 4),
                (1, 2),
                (1, 3),
                (1, 4),
                (2, 3),
                (2, 4),
                (3, 4),
            ],
        );
        let s = dspl_stats(&k5, 1_000, 1).unwrap();
        assert!(s.exhaustive);
        assert_eq!((s.mean, s.variance), (1.0, 0.0));
        let n = 12u32;
        let path = metric(n as usize, &(1..n).map(|i| (i - 1, i)).collect::<Vec<_>>());
        let s = dspl_stats(&path, u64::MAX, 1).unwrap();
        let d: Vec<f64> = (0..n)
            .flat_map(|i| {
                (0..n)
                    .filter(move |&j| j != i)
                    .map(move |j| (i as f64 - j as f64).abs())
            })
            .collect();
        let mean = d.iter().sum::<f64>() / d.len() as f64;
        let var = d.iter().map(|x| (x - mean).powi(2)).sum::<f64>() / (d.len() as f64 - 1.0);
        assert!((s.mean - mean).abs() < 1e-12 && (s.variance - var).abs() < 1e-12);
        assert!((rrg_dspl_variance(3) - 3.507).abs() < 1e-3);
    }

    #[test]
    fn neighborhoods() {
        // 3-regular tree truncated at depth 3
        let mut edges = Vec::new();
        let mut frontier = vec![0u32];
        let mut next_id = 1u32;
        for depth in 0..3 {
            let mut next = Vec::new();
            for &v in &frontier {
                for _ in 0..if depth == 0 { 3 } else { 2 } {
                    edges.push((v, next_id));
                    next.push(next_id);
                    next_id += 1;
                }
            }
            frontier = next;
        }
        let g = Graph::from_edges(next_id as usize, edges).unwrap();
        let p = neighborhood_profile(&g, 0);
        assert_eq!(p.layers, vec![1, 3, 6, 12]);
        assert_eq!(*p.cumulative.last().unwrap(), next_id as u64);
        assert!(p.within_regular_bound(3));
        let rrg = gen_rrg(1000, 3, &mut ChaCha8Rng::seed_from_u64(3)).unwrap();
        assert!((0..1000).all(|x| neighborhood_profile(&rrg, x).within_regular_bound(3)));
    }

    #[test]
    fn colors_bound() {
        for (a, b) in [(1, 1), (2, 3), (4, 4), (5, 2)] {
            assert_eq!(
                verify_colors_bound(&ColoredBipartite::rainbow(a, b)).unwrap(),
                Ratio::from_integer(0)
            );
        }
        let mut rng = ChaCha8Rng::seed_from_u64(5);
        for _ in 0..500 {
            let inst = ColoredBipartite::random(
                rng.gen_range(1..8),
                rng.gen_range(1..8),
                0.6,
                rng.gen_range(1..6),
                &mut rng,
            );
            if inst.edges.is_empty() {
                continue;
            }
            assert!(verify_colors_bound(&inst).unwrap() >= Ratio::from_integer(0));
        }
        let bad = ColoredBipartite {
            left: 1,
            right: 1,
            edges: vec![(0, 3, 0)],
        };
        assert!(verify_colors_bound(&bad).is_err());
    }

    #[test]
    fn solvers() {
        let mu = solve_conjugate(2.0).unwrap();
        assert!((mu - 0.40637).abs() < 1e-5);
        assert!((mu * (-mu).exp() - 2.0 * (-2.0f64).exp()).abs() < 1e-12);
        let g = solve_giant_fraction(5.0).unwrap();
        assert!((g - (1.0 - (-5.0 * g).exp())).abs() < 1e-11);
        assert!((g - 0.9930).abs() < 1e-3);
        assert!(solve_conjugate(1.0001).unwrap() > 0.97);
        assert!(solve_giant_fraction(1.0001).unwrap() < 1e-3);
        assert!(solve_conjugate(0.5).is_err());
        assert!(solve_giant_fraction(1.0).is_err());
    }
}
