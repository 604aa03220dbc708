//! Single-linkage grouping of roots drawn from many indices.

use crate::numerics::{ComplexValue, Real};

/// A group of roots, each tagged with the index `n` of the `W_n` it came
/// from.
#[derive(Clone, Debug)]
pub struct ZeroCluster {
    /// The member from the lowest index.
    pub center: ComplexValue,
    pub members: Vec<(u64, ComplexValue)>,
    /// Largest distance from a member to the center.
    pub radius: Real,
}

impl ZeroCluster {
    /// Distinct indices among the members, ascending.
    pub fn indices(&self) -> Vec<u64> {
        let mut out: Vec<u64> = self.members.iter().map(|(n, _)| *n).collect();
        out.dedup();
        out
    }
}

struct DisjointSets {
    parent: Vec<usize>,
}

impl DisjointSets {
    fn new(n: usize) -> Self {
        DisjointSets { parent: (0..n).collect() }
    }

    fn find(&mut self, mut x: usize) -> usize {
        while self.parent[x] != x {
            self.parent[x] = self.parent[self.parent[x]];
            x = self.parent[x];
        }
        x
    }

    fn union(&mut self, a: usize, b: usize) {
        let (ra, rb) = (self.find(a), self.find(b));
        // Keep the smaller position as the root so output order is stable.
        if ra != rb {
            let (lo, hi) = if ra < rb { (ra, rb) } else { (rb, ra) };
            self.parent[hi] = lo;
        }
    }
}

/// Groups `points` (ordered by index) into single-linkage clusters at
/// distance `tol`. Singletons are dropped.
///
/// Candidate pairs come from a sweep over the real parts in `f64`; each is
/// then confirmed at full precision.
pub fn cluster_points(points: &[(u64, ComplexValue)], tol: f64) -> Vec<ZeroCluster> {
    let n = points.len();
    let approx: Vec<(f64, f64)> = points.iter().map(|(_, z)| (z.re.to_f64(), z.im.to_f64())).collect();
    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by(|&a, &b| approx[a].0.total_cmp(&approx[b].0).then(a.cmp(&b)));
    let mut sets = DisjointSets::new(n);
    let window = 2.0 * tol;
    for (pos, &i) in order.iter().enumerate() {
        for &j in &order[pos + 1..] {
            if approx[j].0 - approx[i].0 > window {
                break;
            }
            if (approx[j].1 - approx[i].1).abs() > window {
                continue;
            }
            if points[i].1.dist(&points[j].1).to_f64() <= tol {
                sets.union(i, j);
            }
        }
    }
    let mut groups: Vec<Vec<usize>> = vec![Vec::new(); n];
    for i in 0..n {
        let root = sets.find(i);
        groups[root].push(i);
    }
    groups
        .into_iter()
        .filter(|g| g.len() > 1)
        .map(|g| {
            let members: Vec<(u64, ComplexValue)> = g.iter().map(|&i| points[i].clone()).collect();
            let center = members[0].1.clone();
            let radius = members.iter().map(|(_, z)| z.dist(&center)).reduce(Real::max).expect("nonempty");
            ZeroCluster { center, members, radius }
        })
        .collect()
}
