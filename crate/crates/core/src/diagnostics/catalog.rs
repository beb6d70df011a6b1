//! All connected graphs on a few vertices, one per isomorphism class.
//!
//! Graphs on `n` vertices are grown from those on `n - 1` by attaching a new
//! vertex to every nonempty subset (every connected graph has a vertex whose
//! removal keeps it connected), then deduplicated by a canonical adjacency code.

use std::collections::HashSet;

use crate::error::{Error, Result};
use crate::metric::Graph;

/// Largest vertex count supported by the 64-bit canonical code.
pub const MAX_CATALOG_VERTICES: usize = 10;

/// Adjacency as bit masks, one per vertex.
type Masks = Vec<u16>;

fn to_masks(g: &Graph) -> Masks {
    (0..g.vertex_count() as u32)
        .map(|v| g.neighbors(v).iter().fold(0u16, |m, &w| m | (1 << w)))
        .collect()
}

fn from_masks(masks: &[u16]) -> Graph {
    let n = masks.len();
    let edges = (0..n as u32).flat_map(|u| {
        (u + 1..n as u32)
            .filter(move |&v| masks[u as usize] >> v & 1 == 1)
            .map(move |v| (u, v))
    });
    Graph::from_edges(n, edges).expect("valid masks")
}

/// Stable colouring by iterated neighbour-colour multisets, with colour ids
/// assigned in sorted signature order so they do not depend on vertex labels.
fn refine(masks: &[u16]) -> Vec<u32> {
    let n = masks.len();
    let mut colors: Vec<u32> = masks.iter().map(|m| m.count_ones()).collect();
    loop {
        let signatures: Vec<(u32, Vec<u32>)> = (0..n)
            .map(|v| {
                let mut around: Vec<u32> = (0..n)
                    .filter(|&w| masks[v] >> w & 1 == 1)
                    .map(|w| colors[w])
                    .collect();
                around.sort_unstable();
                (colors[v], around)
            })
            .collect();
        let mut distinct = signatures.clone();
        distinct.sort();
        distinct.dedup();
        let next: Vec<u32> = signatures
            .iter()
            .map(|s| distinct.binary_search(s).expect("present") as u32)
            .collect();
        let before = colors.iter().collect::<HashSet<_>>().len();
        if distinct.len() == before {
            return next;
        }
        colors = next;
    }
}

fn code_of(masks: &[u16], order: &[usize]) -> u64 {
    let mut code = 0u64;
    for i in 0..order.len() {
        for j in (i + 1)..order.len() {
            code = (code << 1) | u64::from(masks[order[i]] >> order[j] & 1);
        }
    }
    code
}

/// Smallest adjacency code over all vertex orders that respect the refined colouring.
pub fn canonical_code(g: &Graph) -> u64 {
    let masks = to_masks(g);
    let colors = refine(&masks);
    let mut cells: Vec<Vec<usize>> = Vec::new();
    let max = colors.iter().copied().max().map_or(0, |c| c + 1);
    for c in 0..max {
        let cell: Vec<usize> = (0..masks.len()).filter(|&v| colors[v] == c).collect();
        if !cell.is_empty() {
            cells.push(cell);
        }
    }
    let mut order = Vec::with_capacity(masks.len());
    let mut best = u64::MAX;
    search(&masks, &cells, 0, &mut order, &mut best);
    best
}

fn search(
    masks: &[u16],
    cells: &[Vec<usize>],
    cell: usize,
    order: &mut Vec<usize>,
    best: &mut u64,
) {
    if cell == cells.len() {
        *best = (*best).min(code_of(masks, order));
        return;
    }
    let mut members = cells[cell].clone();
    permute(&mut members, 0, &mut |perm| {
        let len = order.len();
        order.extend_from_slice(perm);
        search(masks, cells, cell + 1, order, best);
        order.truncate(len);
    });
}

fn permute(items: &mut Vec<usize>, k: usize, visit: &mut dyn FnMut(&[usize])) {
    if k == items.len() {
        visit(items);
        return;
    }
    for i in k..items.len() {
        items.swap(k, i);
        permute(items, k + 1, visit);
        items.swap(k, i);
    }
}

/// Connected graphs on exactly `n` vertices for every `n` in `1..=max_n`;
/// entry `n - 1` lists those on `n` vertices.
pub fn connected_graphs(max_n: usize) -> Result<Vec<Vec<Graph>>> {
    if max_n == 0 || max_n > MAX_CATALOG_VERTICES {
        return Err(Error::InvalidParameter(format!(
            "catalog size must be in 1..={MAX_CATALOG_VERTICES}, got {max_n}"
        )));
    }
    let mut levels = vec![vec![Graph::empty(1)]];
    for n in 2..=max_n {
        let mut seen = HashSet::new();
        let mut level = Vec::new();
        for g in &levels[n - 2] {
            let base = to_masks(g);
            for subset in 1u16..(1 << (n - 1)) {
                let mut masks = base.clone();
                for (v, m) in masks.iter_mut().enumerate() {
                    if subset >> v & 1 == 1 {
                        *m |= 1 << (n - 1);
                    }
                }
                masks.push(subset);
                let candidate = from_masks(&masks);
                if seen.insert(canonical_code(&candidate)) {
                    level.push(candidate);
                }
            }
        }
        levels.push(level);
    }
    Ok(levels)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn counts_match_known_sequence() {
        let levels = connected_graphs(7).unwrap();
        let counts: Vec<usize> = levels.iter().map(Vec::len).collect();
        assert_eq!(counts, vec![1, 1, 2, 6, 21, 112, 853]);
        assert!(levels.iter().flatten().all(Graph::is_connected));
    }

    #[test]
    fn code_is_label_invariant() {
        let a = Graph::from_edges(5, [(0, 1), (1, 2), (2, 3), (3, 4), (4, 0), (0, 2)]).unwrap();
        let b = Graph::from_edges(5, [(3, 4), (4, 0), (0, 1), (1, 2), (2, 3), (3, 0)]).unwrap();
        assert_eq!(canonical_code(&a), canonical_code(&b));
        let c = Graph::from_edges(5, [(0, 1), (1, 2), (2, 3), (3, 4), (4, 0), (1, 3)]).unwrap();
        let path = Graph::from_edges(5, [(0, 1), (1, 2), (2, 3), (3, 4)]).unwrap();
        assert_ne!(canonical_code(&c), canonical_code(&path));
    }
}
