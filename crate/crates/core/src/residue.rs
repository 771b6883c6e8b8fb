//! Quadratic-residue (Paley) 2-colorings over GF(q).
//!
//! Only prime fields and quadratic extensions of prime fields are needed here,
//! which covers every order used for base colorings (5, 9, 13, 17).

use std::collections::BTreeSet;

use crate::coloring::{ColoringError, EdgeColoring};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
struct Field {
    p: usize,
    /// 1 for GF(p), 2 for GF(p^2).
    degree: u32,
    /// Non-residue `r` with `x^2 = r` in the extension.
    nonresidue: usize,
}

impl Field {
    fn new(q: usize) -> Option<Self> {
        if is_prime(q) {
            return Some(Self { p: q, degree: 1, nonresidue: 0 });
        }
        let p = (2..q).find(|d| q.is_multiple_of(*d))?;
        if p * p != q || !is_prime(p) {
            return None;
        }
        let squares: BTreeSet<usize> = (1..p).map(|x| x * x % p).collect();
        let nonresidue = (1..p).find(|r| !squares.contains(r))?;
        Some(Self { p, degree: 2, nonresidue })
    }

    fn order(&self) -> usize {
        self.p.pow(self.degree)
    }

    /// Element `i` is `a + b*x` with `a = i % p`, `b = i / p`.
    fn split(&self, i: usize) -> (usize, usize) {
        (i % self.p, i / self.p)
    }

    fn join(&self, a: usize, b: usize) -> usize {
        a + b * self.p
    }

    fn sub(&self, x: usize, y: usize) -> usize {
        let p = self.p;
        let ((a, b), (c, d)) = (self.split(x), self.split(y));
        self.join((a + p - c) % p, (b + p - d) % p)
    }

    fn square(&self, x: usize) -> usize {
        let p = self.p;
        let (a, b) = self.split(x);
        let re = (a * a + b * b % p * self.nonresidue) % p;
        let im = 2 * a * b % p;
        self.join(re, im)
    }
}

fn is_prime(n: usize) -> bool {
    n >= 2 && (2..).take_while(|d| d * d <= n).all(|d| !n.is_multiple_of(d))
}

/// Whether a symmetric residue coloring exists on `q` vertices.
pub fn supports(q: usize) -> bool {
    q % 4 == 1 && Field::new(q).is_some()
}

/// Color 1 on `{u, v}` iff `u - v` is a nonzero square in GF(q), else color 2.
/// Requires `q ≡ 1 (mod 4)` so that the relation is symmetric.
pub fn residue_coloring(q: usize) -> Result<EdgeColoring, ColoringError> {
    let field = match Field::new(q) {
        Some(f) if q % 4 == 1 => f,
        _ => return Err(ColoringError::VertexCount { n: q }),
    };
    debug_assert_eq!(field.order(), q);
    let squares: BTreeSet<usize> = (1..q).map(|x| field.square(x)).collect();
    EdgeColoring::from_fn(q, 2, |u, v| if squares.contains(&field.sub(u, v)) { 1 } else { 2 })
}
