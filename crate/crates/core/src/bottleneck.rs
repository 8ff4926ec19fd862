//! Exact bottleneck distance between persistence diagrams.
//!
//! Matchings pair points with equal dimension labels; any point may instead
//! be matched to its diagonal projection at cost half its persistence. The
//! distance is computed per label as the smallest feasible value from the
//! finite candidate set (all pairwise sup-norm distances plus all diagonal
//! gaps), located by binary search with an augmenting-path perfect-matching
//! decision at each probe. Everything is exact rational arithmetic; the
//! result is infinite precisely when some label carries different numbers of
//! infinite-death points in the two diagrams.

use crate::diagram::{diagonal_gap, linf_distance, PersistenceDiagram};
use crate::rational::{ExtReal, Rational};

/// One dimension label's matching instance: pairwise distances and diagonal
/// gaps, precomputed so the matching probes are cheap comparisons.
struct LabelInstance {
    n1: usize,
    n2: usize,
    dists: Vec<Vec<ExtReal>>,
    gaps1: Vec<ExtReal>,
    gaps2: Vec<ExtReal>,
}

impl LabelInstance {
    fn build(d1: &PersistenceDiagram, d2: &PersistenceDiagram, dim: usize) -> LabelInstance {
        let p1 = d1.points_in_dim(dim);
        let p2 = d2.points_in_dim(dim);
        let dists = p1
            .iter()
            .map(|p| p2.iter().map(|q| linf_distance(p, q)).collect())
            .collect();
        let gaps1 = p1.iter().map(|p| diagonal_gap(p)).collect();
        let gaps2 = p2.iter().map(|q| diagonal_gap(q)).collect();
        LabelInstance {
            n1: p1.len(),
            n2: p2.len(),
            dists,
            gaps1,
            gaps2,
        }
    }

    /// Left side: the `n1` points of the first diagram followed by one
    /// diagonal copy per point of the second. Right side symmetrically. A
    /// point is adjacent to its own diagonal copy only; diagonal copies are
    /// mutually adjacent for free.
    fn adjacent(&self, left: usize, right: usize, delta: &ExtReal) -> bool {
        match (left < self.n1, right < self.n2) {
            (true, true) => self.dists[left][right] <= *delta,
            (true, false) => right - self.n2 == left && self.gaps1[left] <= *delta,
            (false, true) => left - self.n1 == right && self.gaps2[right] <= *delta,
            (false, false) => true,
        }
    }

    /// True when a perfect matching of the diagonal-augmented instance exists
    /// at threshold `delta`.
    fn feasible(&self, delta: &ExtReal) -> bool {
        let size = self.n1 + self.n2;
        let mut match_right: Vec<Option<usize>> = vec![None; size];
        let mut matched = 0usize;
        for left in 0..size {
            let mut visited = vec![false; size];
            if self.augment(left, delta, &mut visited, &mut match_right) {
                matched += 1;
            }
        }
        matched == size
    }

    fn augment(
        &self,
        left: usize,
        delta: &ExtReal,
        visited: &mut [bool],
        match_right: &mut [Option<usize>],
    ) -> bool {
        for right in 0..match_right.len() {
            if visited[right] || !self.adjacent(left, right, delta) {
                continue;
            }
            visited[right] = true;
            let free = match match_right[right] {
                None => true,
                Some(prev) => self.augment(prev, delta, visited, match_right),
            };
            if free {
                match_right[right] = Some(left);
                return true;
            }
        }
        false
    }

    /// Exact per-label bottleneck value.
    fn min_feasible(&self) -> ExtReal {
        let inf1 = self.gaps1.iter().filter(|g| g.is_infinite()).count();
        let inf2 = self.gaps2.iter().filter(|g| g.is_infinite()).count();
        if inf1 != inf2 {
            return ExtReal::Infinity;
        }
        // The optimum is attained at a pairwise distance or a diagonal gap.
        let mut candidates: Vec<Rational> = Vec::new();
        candidates.push(Rational::from_integer(0.into()));
        for row in &self.dists {
            for d in row {
                if let ExtReal::Finite(v) = d {
                    candidates.push(v.clone());
                }
            }
        }
        for g in self.gaps1.iter().chain(self.gaps2.iter()) {
            if let ExtReal::Finite(v) = g {
                candidates.push(v.clone());
            }
        }
        candidates.sort();
        candidates.dedup();
        // Feasibility is monotone in delta and holds at the largest
        // candidate, so binary search finds the least feasible one.
        let (mut lo, mut hi) = (0usize, candidates.len() - 1);
        while lo < hi {
            let mid = lo + (hi - lo) / 2;
            if self.feasible(&ExtReal::Finite(candidates[mid].clone())) {
                hi = mid;
            } else {
                lo = mid + 1;
            }
        }
        ExtReal::Finite(candidates[lo].clone())
    }
}

fn shared_labels(d1: &PersistenceDiagram, d2: &PersistenceDiagram) -> Vec<usize> {
    let mut labels = d1.dims();
    labels.extend(d2.dims());
    labels.sort_unstable();
    labels.dedup();
    labels
}

/// True iff the two diagrams admit a perfect label-respecting matching in
/// which every matched pair is within sup-norm `delta` and every unmatched
/// point is within `delta` of the diagonal.
pub fn bottleneck_decision(
    d1: &PersistenceDiagram,
    d2: &PersistenceDiagram,
    delta: &Rational,
) -> bool {
    let delta = ExtReal::Finite(delta.clone());
    shared_labels(d1, d2)
        .into_iter()
        .all(|dim| LabelInstance::build(d1, d2, dim).feasible(&delta))
}

/// Exact bottleneck distance: the largest per-label optimum. Infinite iff
/// some label has unequal counts of infinite-death points.
pub fn bottleneck_distance(d1: &PersistenceDiagram, d2: &PersistenceDiagram) -> ExtReal {
    let mut best = ExtReal::zero();
    for dim in shared_labels(d1, d2) {
        let value = LabelInstance::build(d1, d2, dim).min_feasible();
        if value.is_infinite() {
            return ExtReal::Infinity;
        }
        best = best.max(value);
    }
    best
}
