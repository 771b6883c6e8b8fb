//! Naive reference implementations used as oracles, plus generators.

#![allow(dead_code)]

use gallai_books::coloring::{find_mono_book, pair_count, Color, EdgeColoring};
use proptest::prelude::*;

/// Color matrix with `0` on the diagonal.
pub fn matrix(g: &EdgeColoring) -> Vec<Vec<Color>> {
    (0..g.n()).map(|u| (0..g.n()).map(|v| if u == v { 0 } else { g.color(u, v) }).collect()).collect()
}

pub fn naive_rainbow(g: &EdgeColoring) -> Option<[usize; 3]> {
    let c = matrix(g);
    let n = g.n();
    for u in 0..n {
        for v in u + 1..n {
            for w in v + 1..n {
                let (a, b, d) = (c[u][v], c[u][w], c[v][w]);
                if a != b && a != d && b != d {
                    return Some([u, v, w]);
                }
            }
        }
    }
    None
}

/// Largest number of common same-colored neighbors over all spines.
pub fn naive_max_pages(g: &EdgeColoring) -> usize {
    let c = matrix(g);
    let n = g.n();
    let mut best = 0;
    for u in 0..n {
        for v in u + 1..n {
            let col = c[u][v];
            let pages = (0..n).filter(|&w| w != u && w != v && c[u][w] == col && c[v][w] == col).count();
            best = best.max(pages);
        }
    }
    best
}

pub fn naive_book_count(g: &EdgeColoring, m: usize) -> u128 {
    let c = matrix(g);
    let n = g.n();
    let mut total = 0u128;
    for u in 0..n {
        for v in u + 1..n {
            let col = c[u][v];
            let s = (0..n).filter(|&w| w != u && w != v && c[u][w] == col && c[v][w] == col).count();
            // C(s, m) by the multiplicative formula.
            let mut x = 1u128;
            if s >= m {
                for i in 0..m {
                    x = x * (s - i) as u128 / (i + 1) as u128;
                }
                total += x;
            }
        }
    }
    total
}

pub fn naive_max_star(g: &EdgeColoring) -> usize {
    let c = matrix(g);
    (0..g.n())
        .flat_map(|u| (1..=g.k() as Color).map(move |col| (u, col)))
        .map(|(u, col)| c[u].iter().filter(|&&x| x == col).count())
        .max()
        .unwrap_or(0)
}

pub fn arb_coloring(max_n: usize, max_k: usize) -> impl Strategy<Value = EdgeColoring> {
    (2..=max_n, 1..=max_k).prop_flat_map(|(n, k)| {
        prop::collection::vec(1..=k as Color, pair_count(n))
            .prop_map(move |colors| EdgeColoring::from_upper_triangle(n, k, colors).unwrap())
    })
}

/// Random Gallai coloring built by substitution: a 2-colored reduced graph on
/// `t` parts, each part colored recursively.
pub fn gallai_from_seed(n: usize, k: usize, seed: &[u8]) -> EdgeColoring {
    let mut colors = vec![0 as Color; n * n];
    let mut cursor = 0usize;
    let mut next = |bound: usize| {
        let b = seed[cursor % seed.len()] as usize;
        cursor += 1;
        b % bound
    };
    fn fill(verts: &[usize], k: usize, n: usize, colors: &mut [Color], next: &mut dyn FnMut(usize) -> usize) {
        if verts.len() < 2 {
            return;
        }
        let t = 2 + next(verts.len() - 1);
        let t = t.min(verts.len());
        let mut parts: Vec<Vec<usize>> = vec![Vec::new(); t];
        for (i, &v) in verts.iter().enumerate() {
            // Every part gets at least one vertex.
            let p = if i < t { i } else { next(t) };
            parts[p].push(v);
        }
        let c1 = 1 + next(k) as Color;
        let c2 = 1 + next(k) as Color;
        for i in 0..t {
            for j in i + 1..t {
                let c = if next(2) == 0 { c1 } else { c2 };
                for &u in &parts[i] {
                    for &v in &parts[j] {
                        colors[u * n + v] = c;
                        colors[v * n + u] = c;
                    }
                }
            }
        }
        for part in &parts {
            fill(part, k, n, colors, next);
        }
    }
    let verts: Vec<usize> = (0..n).collect();
    fill(&verts, k, n, &mut colors, &mut next);
    EdgeColoring::from_fn(n, k, |u, v| colors[u * n + v]).unwrap()
}

pub fn arb_gallai(max_n: usize, max_k: usize) -> impl Strategy<Value = EdgeColoring> {
    (2..=max_n, 1..=max_k, prop::collection::vec(any::<u8>(), 1..64))
        .prop_map(|(n, k, seed)| gallai_from_seed(n, k, &seed))
}

/// Whether every coloring of the parts' interiors, with two colors not used
/// between parts, leaves a monochromatic `B_m` when the quotient is in color 1.
pub fn forced_by_enumeration(sizes: &[usize], m: usize) -> bool {
    let n: usize = sizes.iter().sum();
    let mut part_of = Vec::new();
    for (i, &s) in sizes.iter().enumerate() {
        part_of.extend(std::iter::repeat_n(i, s));
    }
    let inside: Vec<(usize, usize)> =
        (0..n).flat_map(|u| (u + 1..n).map(move |v| (u, v))).filter(|&(u, v)| part_of[u] == part_of[v]).collect();
    (0u64..1 << inside.len()).all(|mask| {
        let g = EdgeColoring::from_fn(n, 3, |u, v| match inside.iter().position(|&e| e == (u, v)) {
            Some(i) => 2 + (mask >> i & 1) as Color,
            None => 1,
        })
        .unwrap();
        find_mono_book(&g, m).is_some()
    })
}
