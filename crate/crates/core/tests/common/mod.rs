//! Brute-force re-implementations used as oracles. They share nothing with the
//! library beyond the `Graph` edge list.

#![allow(dead_code)]

use std::path::PathBuf;

use hypavg::metric::Graph;
use num_bigint::BigInt;
use num_rational::BigRational;
use rand::Rng;

const INF: u32 = u32::MAX / 4;

/// Distances on the graph with every edge split at its midpoint, in half-edge units.
pub struct Naive {
    pub n: usize,
    adjacency: Vec<Vec<u32>>,
    midpoint: std::collections::HashMap<(u32, u32), usize>,
    half: Vec<Vec<u32>>,
}

impl Naive {
    pub fn new(g: &Graph) -> Self {
        let n = g.vertex_count();
        let edges: Vec<(u32, u32)> = g.edges().collect();
        let size = n + edges.len();
        let mut half = vec![vec![INF; size]; size];
        let mut adjacency = vec![Vec::new(); n];
        let mut midpoint = std::collections::HashMap::new();
        for (i, row) in half.iter_mut().enumerate() {
            row[i] = 0;
        }
        for (k, &(u, v)) in edges.iter().enumerate() {
            let m = n + k;
            for w in [u as usize, v as usize] {
                half[w][m] = 1;
                half[m][w] = 1;
            }
            adjacency[u as usize].push(v);
            adjacency[v as usize].push(u);
            midpoint.insert((u.min(v), u.max(v)), m);
        }
        for k in 0..size {
            for i in 0..size {
                let ik = half[i][k];
                if ik == INF {
                    continue;
                }
                let (row_i, row_k) = if i < k {
                    let (a, b) = half.split_at_mut(k);
                    (&mut a[i], &b[0])
                } else if i > k {
                    let (a, b) = half.split_at_mut(i);
                    (&mut b[0], &a[k])
                } else {
                    continue;
                };
                for (target, &kj) in row_i.iter_mut().zip(row_k.iter()) {
                    *target = (*target).min(ik + kj);
                }
            }
        }
        Naive {
            n,
            adjacency,
            midpoint,
            half,
        }
    }

    pub fn d(&self, u: u32, v: u32) -> u32 {
        self.half[u as usize][v as usize] / 2
    }

    /// Every shortest path from `x` to `y`, by depth-first search.
    pub fn paths(&self, x: u32, y: u32) -> Vec<Vec<u32>> {
        let mut out = Vec::new();
        let mut stack = vec![x];
        self.extend(y, &mut stack, &mut out);
        out
    }

    fn extend(&self, y: u32, stack: &mut Vec<u32>, out: &mut Vec<Vec<u32>>) {
        let v = *stack.last().unwrap();
        if v == y {
            out.push(stack.clone());
            return;
        }
        for &w in &self.adjacency[v as usize] {
            if self.d(w, y) + 1 == self.d(v, y) {
                stack.push(w);
                self.extend(y, stack, out);
                stack.pop();
            }
        }
    }

    /// Twice the four-point value.
    pub fn fp2(&self, x: u32, y: u32, z: u32, w: u32) -> u32 {
        let mut s = [
            self.d(x, y) + self.d(z, w),
            self.d(x, z) + self.d(y, w),
            self.d(x, w) + self.d(y, z),
        ];
        s.sort_unstable();
        s[2] - s[1]
    }

    /// Twice the worst four-point value over all quadruples.
    pub fn hyp2(&self) -> u32 {
        let n = self.n as u32;
        let mut best = 0;
        for a in 0..n {
            for b in a + 1..n {
                for c in b + 1..n {
                    for d in c + 1..n {
                        best = best.max(self.fp2(a, b, c, d));
                    }
                }
            }
        }
        best
    }

    /// The subdivided-graph point at `h2` half-steps along `side`.
    fn point(&self, side: &[u32], h2: u32) -> usize {
        let k = (h2 / 2) as usize;
        if h2.is_multiple_of(2) {
            side[k] as usize
        } else {
            let (a, b) = (side[k], side[k + 1]);
            self.midpoint[&(a.min(b), a.max(b))]
        }
    }

    /// `(slim, thin, minsize, 2 insize)` of the triangle with the given sides.
    pub fn measures(&self, sides: [&[u32]; 3]) -> (u32, u32, u32, u32) {
        let [xy, yz, zx] = sides;
        let (x, y, z) = (xy[0], yz[0], zx[0]);
        if x == y || y == z || x == z {
            return (0, 0, 0, 0);
        }
        let mut slim = 0;
        for i in 0..3 {
            for &w in sides[i] {
                let near = sides[(i + 1) % 3]
                    .iter()
                    .chain(sides[(i + 2) % 3])
                    .map(|&u| self.d(w, u))
                    .min()
                    .unwrap();
                slim = slim.max(near);
            }
        }
        let rev = |s: &[u32]| s.iter().rev().copied().collect::<Vec<u32>>();
        let mut thin = 0;
        for (c, p, q, a, b) in [
            (x, y, z, xy.to_vec(), rev(zx)),
            (y, z, x, yz.to_vec(), rev(xy)),
            (z, x, y, zx.to_vec(), rev(yz)),
        ] {
            let product2 = self.d(c, p) + self.d(c, q) - self.d(p, q);
            for t in 0..=(product2 / 2) as usize {
                thin = thin.max(self.d(a[t], b[t]));
            }
        }
        let mut minsize = u32::MAX;
        for &a in xy {
            for &b in yz {
                for &c in zx {
                    minsize = minsize.min(self.d(a, b).max(self.d(b, c)).max(self.d(a, c)));
                }
            }
        }
        // the point on side (s, e) sits <e, o>_s from s, with o the opposite corner
        let at = |side: &[u32], s: u32, e: u32, o: u32| {
            self.point(side, self.d(s, e) + self.d(s, o) - self.d(e, o))
        };
        let pts = [at(xy, x, y, z), at(yz, y, z, x), at(zx, z, x, y)];
        let mut insize2 = 0;
        for i in 0..3 {
            for j in i + 1..3 {
                insize2 = insize2.max(self.half[pts[i]][pts[j]]);
            }
        }
        (slim, thin, minsize, insize2)
    }

    /// Worst `(slim, thin, minsize, 2 insize)` over every triangle.
    pub fn worst(&self) -> (u32, u32, u32, u32) {
        let n = self.n as u32;
        let mut best = (0, 0, 0, 0);
        for x in 0..n {
            for y in x + 1..n {
                for z in y + 1..n {
                    for a in self.paths(x, y) {
                        for b in self.paths(y, z) {
                            for c in self.paths(z, x) {
                                let m = self.measures([&a, &b, &c]);
                                best = (
                                    best.0.max(m.0),
                                    best.1.max(m.1),
                                    best.2.max(m.2),
                                    best.3.max(m.3),
                                );
                            }
                        }
                    }
                }
            }
        }
        best
    }

    /// Exact uniform averages `(fp, slim, thin, minsize, insize)` over i.i.d. points.
    pub fn averages(&self) -> [BigRational; 5] {
        let n = self.n as u32;
        let mut fp2 = 0u64;
        for a in 0..n {
            for b in 0..n {
                for c in 0..n {
                    for d in 0..n {
                        fp2 += self.fp2(a, b, c, d) as u64;
                    }
                }
            }
        }
        let hyp = BigRational::new(fp2.into(), (2 * (n as u64).pow(4)).into());
        let mut sums: [BigRational; 4] = Default::default();
        for x in 0..n {
            for y in 0..n {
                for z in 0..n {
                    let (pa, pb, pc) = (self.paths(x, y), self.paths(y, z), self.paths(z, x));
                    let mut local = [0u64; 4];
                    for a in &pa {
                        for b in &pb {
                            for c in &pc {
                                let m = self.measures([a, b, c]);
                                for (l, v) in local.iter_mut().zip([m.0, m.1, m.2, m.3]) {
                                    *l += v as u64;
                                }
                            }
                        }
                    }
                    let combos = (pa.len() * pb.len() * pc.len()) as u64;
                    for (s, l) in sums.iter_mut().zip(local) {
                        *s += BigRational::new(l.into(), combos.into());
                    }
                }
            }
        }
        let cube = BigRational::from_integer(BigInt::from((n as u64).pow(3)));
        let [slim, thin, minsize, insize2] = sums.map(|s| s / &cube);
        let insize = insize2 / BigRational::from_integer(2.into());
        [hyp, slim, thin, minsize, insize]
    }
}

pub fn cycle(n: u32) -> Graph {
    Graph::from_edges(n as usize, (0..n).map(|i| (i, (i + 1) % n))).unwrap()
}

/// Random recursive tree: vertex `i` joins a uniform earlier vertex.
pub fn random_tree<R: Rng>(n: usize, rng: &mut R) -> Graph {
    Graph::from_edges(n, (1..n as u32).map(|i| (i, rng.gen_range(0..i)))).unwrap()
}

pub fn fixtures() -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("fixtures")
}
