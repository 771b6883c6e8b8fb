/// Disjoint sets with path halving and union by size.
#[derive(Debug, Clone)]
pub struct DisjointSets {
    parent: Vec<usize>,
    size: Vec<usize>,
}

impl DisjointSets {
    pub fn new(n: usize) -> Self {
        Self { parent: (0..n).collect(), size: vec![1; n] }
    }

    pub fn find(&mut self, mut x: usize) -> usize {
        while self.parent[x] != x {
            self.parent[x] = self.parent[self.parent[x]];
            x = self.parent[x];
        }
        x
    }

    /// Returns `true` if `a` and `b` were in different sets.
    pub fn union(&mut self, a: usize, b: usize) -> bool {
        let (mut ra, mut rb) = (self.find(a), self.find(b));
        if ra == rb {
            return false;
        }
        if self.size[ra] < self.size[rb] {
            std::mem::swap(&mut ra, &mut rb);
        }
        self.parent[rb] = ra;
        self.size[ra] += self.size[rb];
        true
    }

    /// Dense labels `0..t`, numbered in order of each set's smallest element.
    pub fn labels(&mut self) -> (Vec<usize>, usize) {
        let n = self.parent.len();
        let mut by_root = vec![usize::MAX; n];
        let mut t = 0;
        let labels = (0..n)
            .map(|x| {
                let r = self.find(x);
                if by_root[r] == usize::MAX {
                    by_root[r] = t;
                    t += 1;
                }
                by_root[r]
            })
            .collect();
        (labels, t)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn merges_and_labels() {
        let mut d = DisjointSets::new(6);
        assert!(d.union(4, 1));
        assert!(d.union(1, 5));
        assert!(!d.union(5, 4));
        assert!(d.union(2, 3));
        let (labels, t) = d.labels();
        assert_eq!(t, 3);
        assert_eq!(labels, vec![0, 1, 2, 2, 1, 1]);
    }
}
