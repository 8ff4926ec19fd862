//! Zigzag modules over GF(2) and their interval decomposition.
//!
//! A module is a sequence of finite-dimensional GF(2) spaces joined by
//! alternating-direction linear maps. Positions are 1-based. The multiset of
//! interval summands is recovered without any explicit basis tracking: for
//! every window `[i, j]` the rank of the canonical map from the limit to the
//! colimit of the restricted diagram counts the summands whose support
//! contains the whole window, and inclusion-exclusion over the four windows
//! around `[b, d]` isolates the multiplicity of the summand `[b, d]`.

use crate::error::{Error, Result};
use crate::gf2::GF2Matrix;

/// Direction of one structure map relative to the position order.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum ArrowDirection {
    /// Maps position `t` into position `t + 1`.
    Forward,
    /// Maps position `t + 1` into position `t`.
    Backward,
}

/// One structure map. A forward arrow between positions of dimensions
/// `(a, b)` has shape `b x a`; a backward arrow has shape `a x b`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Arrow {
    pub direction: ArrowDirection,
    pub matrix: GF2Matrix,
}

/// An interval `[b, d]` of 1-based positions, `b <= d`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct IndexInterval {
    pub b: usize,
    pub d: usize,
}

impl IndexInterval {
    pub fn new(b: usize, d: usize) -> Result<IndexInterval> {
        if b == 0 || d < b {
            return Err(Error::InvalidInput(format!(
                "index interval [{b}, {d}] is not a valid 1-based interval"
            )));
        }
        Ok(IndexInterval { b, d })
    }

    pub fn contains(&self, pos: usize) -> bool {
        self.b <= pos && pos <= self.d
    }
}

/// A zigzag module: space dimensions plus one arrow per adjacent pair.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ZigzagModule {
    dims: Vec<usize>,
    arrows: Vec<Arrow>,
}

impl ZigzagModule {
    /// Validates that every arrow's shape matches the dimensions it joins.
    pub fn new(dims: Vec<usize>, arrows: Vec<Arrow>) -> Result<ZigzagModule> {
        if dims.is_empty() {
            return Err(Error::InvalidInput("module with no positions".into()));
        }
        if arrows.len() + 1 != dims.len() {
            return Err(Error::InvalidInput(format!(
                "{} positions require {} arrows, got {}",
                dims.len(),
                dims.len() - 1,
                arrows.len()
            )));
        }
        for (t, arrow) in arrows.iter().enumerate() {
            let (want_rows, want_cols) = match arrow.direction {
                ArrowDirection::Forward => (dims[t + 1], dims[t]),
                ArrowDirection::Backward => (dims[t], dims[t + 1]),
            };
            if arrow.matrix.rows() != want_rows || arrow.matrix.cols() != want_cols {
                return Err(Error::InvalidInput(format!(
                    "arrow {} has shape {}x{}, expected {}x{}",
                    t,
                    arrow.matrix.rows(),
                    arrow.matrix.cols(),
                    want_rows,
                    want_cols
                )));
            }
        }
        Ok(ZigzagModule { dims, arrows })
    }

    /// Number of positions.
    pub fn len(&self) -> usize {
        self.dims.len()
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    pub fn dims(&self) -> &[usize] {
        &self.dims
    }

    pub fn arrows(&self) -> &[Arrow] {
        &self.arrows
    }

    /// Dimension at a 1-based position.
    pub fn dim_at(&self, pos: usize) -> usize {
        self.dims[pos - 1]
    }

    /// Builds the direct sum of interval modules over a fixed direction
    /// pattern: each interval contributes one basis vector to every position
    /// it contains, and every arrow acts as the identity on the vectors
    /// shared between its endpoints.
    pub fn interval_sum(
        n: usize,
        directions: &[ArrowDirection],
        intervals: &[IndexInterval],
    ) -> Result<ZigzagModule> {
        if n == 0 {
            return Err(Error::InvalidInput("module with no positions".into()));
        }
        if directions.len() + 1 != n {
            return Err(Error::InvalidInput(format!(
                "{n} positions require {} directions, got {}",
                n - 1,
                directions.len()
            )));
        }
        if let Some(bad) = intervals.iter().find(|iv| iv.d > n) {
            return Err(Error::InvalidInput(format!(
                "interval [{}, {}] exceeds {} positions",
                bad.b, bad.d, n
            )));
        }
        // basis of position p = the intervals containing p, in input order
        let basis: Vec<Vec<usize>> = (1..=n)
            .map(|p| {
                intervals
                    .iter()
                    .enumerate()
                    .filter(|(_, iv)| iv.contains(p))
                    .map(|(k, _)| k)
                    .collect()
            })
            .collect();
        let dims: Vec<usize> = basis.iter().map(|b| b.len()).collect();
        let arrows = directions
            .iter()
            .enumerate()
            .map(|(t, &direction)| {
                let (target, source) = match direction {
                    ArrowDirection::Forward => (&basis[t + 1], &basis[t]),
                    ArrowDirection::Backward => (&basis[t], &basis[t + 1]),
                };
                let matrix = GF2Matrix::from_fn(target.len(), source.len(), |r, c| {
                    target[r] == source[c]
                });
                Arrow { direction, matrix }
            })
            .collect();
        ZigzagModule::new(dims, arrows)
    }

    fn check_window(&self, i: usize, j: usize) -> Result<()> {
        if i == 0 || j < i || j > self.len() {
            return Err(Error::InvalidInput(format!(
                "window [{i}, {j}] is not inside positions 1..={}",
                self.len()
            )));
        }
        Ok(())
    }

    /// The sub-module on positions `i..=j` (1-based, inclusive).
    pub fn restrict(&self, i: usize, j: usize) -> Result<ZigzagModule> {
        self.check_window(i, j)?;
        ZigzagModule::new(
            self.dims[i - 1..j].to_vec(),
            self.arrows[i - 1..j - 1].to_vec(),
        )
    }
}

/// The sub-module on positions `i..=j`.
pub fn restrict_module(module: &ZigzagModule, i: usize, j: usize) -> Result<ZigzagModule> {
    module.restrict(i, j)
}

/// Rank of the canonical map from the limit to the colimit of the diagram
/// restricted to positions `i..=j`. For an interval-decomposable module this
/// counts the interval summands whose support contains all of `[i, j]`.
pub fn generalized_rank(module: &ZigzagModule, i: usize, j: usize) -> Result<usize> {
    module.check_window(i, j)?;
    Ok(window_rank(module, i - 1, j - 1))
}

/// `generalized_rank` on 0-based inclusive window `[lo, hi]`.
fn window_rank(module: &ZigzagModule, lo: usize, hi: usize) -> usize {
    let dims = &module.dims;
    // offsets of each position's block inside the stacked space
    let mut offset = vec![0usize; hi - lo + 2];
    for (k, p) in (lo..=hi).enumerate() {
        offset[k + 1] = offset[k] + dims[p];
    }
    let total = offset[hi - lo + 1];

    // The limit is the kernel of the compatibility constraints: one block row
    // per arrow in the window, tying the two adjacent position blocks.
    let constraint_rows: usize = (lo..hi)
        .map(|t| match module.arrows[t].direction {
            ArrowDirection::Forward => dims[t + 1],
            ArrowDirection::Backward => dims[t],
        })
        .sum();
    let mut constraints = GF2Matrix::zero(constraint_rows, total);
    // The colimit is the cokernel of one relation column per source basis
    // vector of each arrow.
    let relation_cols: usize = (lo..hi)
        .map(|t| match module.arrows[t].direction {
            ArrowDirection::Forward => dims[t],
            ArrowDirection::Backward => dims[t + 1],
        })
        .sum();
    let mut relations = GF2Matrix::zero(total, relation_cols);

    let mut row = 0;
    let mut col = 0;
    for t in lo..hi {
        let arrow = &module.arrows[t];
        let m = &arrow.matrix;
        let (left, right) = (offset[t - lo], offset[t + 1 - lo]);
        match arrow.direction {
            ArrowDirection::Forward => {
                // constraint f(x_t) + x_{t+1} = 0; relation x ~ f(x)
                for r in 0..dims[t + 1] {
                    constraints.set(row + r, right + r, true);
                    for c in 0..dims[t] {
                        if m.get(r, c) {
                            constraints.set(row + r, left + c, true);
                        }
                    }
                }
                for c in 0..dims[t] {
                    relations.set(left + c, col + c, true);
                    for r in 0..dims[t + 1] {
                        if m.get(r, c) {
                            relations.set(right + r, col + c, true);
                        }
                    }
                }
                row += dims[t + 1];
                col += dims[t];
            }
            ArrowDirection::Backward => {
                // constraint x_t + g(x_{t+1}) = 0; relation y ~ g(y)
                for r in 0..dims[t] {
                    constraints.set(row + r, left + r, true);
                    for c in 0..dims[t + 1] {
                        if m.get(r, c) {
                            constraints.set(row + r, right + c, true);
                        }
                    }
                }
                for c in 0..dims[t + 1] {
                    relations.set(right + c, col + c, true);
                    for r in 0..dims[t] {
                        if m.get(r, c) {
                            relations.set(left + r, col + c, true);
                        }
                    }
                }
                row += dims[t];
                col += dims[t + 1];
            }
        }
    }

    // Canonical map: a compatible section, projected to its first block and
    // read in the colimit. Its rank is rank([P | D]) - rank(D).
    let sections = constraints.kernel_basis();
    let mut image = GF2Matrix::zero(total, sections.rows());
    for k in 0..sections.rows() {
        for s in 0..dims[lo] {
            if sections.get(k, s) {
                image.set(s, k, true);
            }
        }
    }
    image.hstack(&relations).rank() - relations.rank()
}

/// The multiset of interval summands, sorted, repeats meaning multiplicity.
///
/// Multiplicities come from inclusion-exclusion over generalized ranks:
/// `m[b,d] = r(b,d) - r(b-1,d) - r(b,d+1) + r(b-1,d+1)`, with out-of-range
/// ranks zero.
pub fn interval_decomposition(module: &ZigzagModule) -> Vec<IndexInterval> {
    let n = module.len();
    // rank table indexed by 1-based (i, j); entries outside i <= j unused
    let mut rank = vec![vec![0usize; n + 2]; n + 2];
    for i in 1..=n {
        for j in i..=n {
            rank[i][j] = window_rank(module, i - 1, j - 1);
        }
    }
    let r = |i: usize, j: usize| -> isize {
        if i >= 1 && j >= i && j <= n {
            rank[i][j] as isize
        } else {
            0
        }
    };
    let mut intervals = Vec::new();
    for b in 1..=n {
        for d in b..=n {
            let m = r(b, d) - r(b - 1, d) - r(b, d + 1) + r(b - 1, d + 1);
            assert!(
                m >= 0,
                "negative multiplicity {m} at [{b}, {d}]: not a module over a field?"
            );
            for _ in 0..m {
                intervals.push(IndexInterval { b, d });
            }
        }
    }
    intervals.sort();
    intervals
}
