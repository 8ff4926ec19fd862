//! Persistence diagrams over exact rationals, and restriction of a diagram to
//! a bounded interval of the parameter line.
//!
//! A diagram is a finite multiset of points `(birth, death, dim)` with
//! `birth <= death`; `death` may be infinite. Restriction to `[lo, hi]` clips
//! each point's interval `[birth, death]` to the window: points whose
//! interval misses the window collapse to the diagonal and are dropped,
//! everything else keeps its dimension label. The projection never increases
//! pairwise sup-norm distances, which is what makes the restricted bottleneck
//! distance a lower bound for the full one.

use crate::error::{Error, Result};
use crate::rational::{rat_int, ExtReal, Rational};
use num_traits::Signed;

/// A single diagram point. `dim` is the homological dimension label carried
/// through every operation in this crate.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct DiagramPoint {
    pub dim: usize,
    pub birth: Rational,
    pub death: ExtReal,
}

impl DiagramPoint {
    /// Builds a point, rejecting `death < birth`.
    pub fn new(birth: Rational, death: ExtReal, dim: usize) -> Result<DiagramPoint> {
        if let ExtReal::Finite(d) = &death {
            if d < &birth {
                return Err(Error::InvalidInput(format!(
                    "diagram point with death {} before birth {}",
                    d, birth
                )));
            }
        }
        Ok(DiagramPoint { dim, birth, death })
    }

    /// Convenience constructor for a finite point.
    pub fn finite(birth: Rational, death: Rational, dim: usize) -> Result<DiagramPoint> {
        DiagramPoint::new(birth, ExtReal::Finite(death), dim)
    }

    /// True when the point lies on the diagonal (`birth == death`).
    pub fn is_diagonal(&self) -> bool {
        match &self.death {
            ExtReal::Finite(d) => d == &self.birth,
            ExtReal::Infinity => false,
        }
    }
}

/// Sup-norm distance between two points, with the death conventions
/// `inf - inf = 0` and `finite vs inf = inf`.
pub fn linf_distance(p: &DiagramPoint, q: &DiagramPoint) -> ExtReal {
    let births = ExtReal::Finite((&p.birth - &q.birth).abs());
    let deaths = p.death.abs_diff(&q.death);
    births.max(deaths)
}

/// Half the persistence of a point: its sup-norm distance to the diagonal.
/// Infinite for essential classes, which can never be matched away.
pub fn diagonal_gap(p: &DiagramPoint) -> ExtReal {
    match &p.death {
        ExtReal::Finite(d) => ExtReal::Finite((d - &p.birth) / rat_int(2)),
        ExtReal::Infinity => ExtReal::Infinity,
    }
}

/// A finite multiset of diagram points, kept in a canonical sorted order so
/// that equality is multiset equality and serialization is deterministic.
/// Diagonal points are dropped on construction.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct PersistenceDiagram {
    points: Vec<DiagramPoint>,
}

impl PersistenceDiagram {
    /// Builds a diagram from points, dropping diagonal points and sorting
    /// into canonical `(dim, birth, death)` order.
    pub fn new(points: Vec<DiagramPoint>) -> PersistenceDiagram {
        let mut points: Vec<DiagramPoint> =
            points.into_iter().filter(|p| !p.is_diagonal()).collect();
        points.sort();
        PersistenceDiagram { points }
    }

    pub fn empty() -> PersistenceDiagram {
        PersistenceDiagram { points: Vec::new() }
    }

    pub fn points(&self) -> &[DiagramPoint] {
        &self.points
    }

    pub fn len(&self) -> usize {
        self.points.len()
    }

    pub fn is_empty(&self) -> bool {
        self.points.is_empty()
    }

    /// Dimension labels present, ascending and deduplicated.
    pub fn dims(&self) -> Vec<usize> {
        let mut d: Vec<usize> = self.points.iter().map(|p| p.dim).collect();
        d.sort_unstable();
        d.dedup();
        d
    }

    /// The points carrying a given dimension label.
    pub fn points_in_dim(&self, dim: usize) -> Vec<&DiagramPoint> {
        self.points.iter().filter(|p| p.dim == dim).collect()
    }

    /// Restricts the diagram to a window, dropping points that project to
    /// the diagonal. Dimension labels are preserved.
    pub fn restrict(&self, window: &RestrictionInterval) -> PersistenceDiagram {
        PersistenceDiagram::new(self.points.iter().map(|p| window.project(p)).collect())
    }
}

/// A bounded window `[lo, hi]` of the parameter line, `lo <= hi`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RestrictionInterval {
    lo: Rational,
    hi: Rational,
}

impl RestrictionInterval {
    pub fn new(lo: Rational, hi: Rational) -> Result<RestrictionInterval> {
        if lo > hi {
            return Err(Error::InvalidInput(format!(
                "restriction interval with lo {} > hi {}",
                lo, hi
            )));
        }
        Ok(RestrictionInterval { lo, hi })
    }

    pub fn lo(&self) -> &Rational {
        &self.lo
    }

    pub fn hi(&self) -> &Rational {
        &self.hi
    }

    /// True when `self` is contained in `outer`.
    pub fn nested_in(&self, outer: &RestrictionInterval) -> bool {
        outer.lo <= self.lo && self.hi <= outer.hi
    }

    /// Clips one point's interval to the window. The six configurations of
    /// `[birth, death]` against `[lo, hi]` reduce to: intersect the two
    /// intervals, and collapse an empty intersection to the nearest diagonal
    /// point. An infinite death behaves as `death >= hi`. The result always
    /// has a finite death and the same dimension label; callers that build
    /// diagrams drop the diagonal outputs.
    pub fn project(&self, p: &DiagramPoint) -> DiagramPoint {
        let b = &p.birth;
        let dim = p.dim;
        let death_le_hi = match &p.death {
            ExtReal::Finite(d) => d <= &self.hi,
            ExtReal::Infinity => false,
        };
        let death_ge_lo = match &p.death {
            ExtReal::Finite(d) => d >= &self.lo,
            ExtReal::Infinity => true,
        };
        let (birth, death) = if b >= &self.lo {
            if death_le_hi {
                // fully inside the window
                (b.clone(), p.death.finite().unwrap().clone())
            } else if b <= &self.hi {
                // entered inside, survives past the window
                (b.clone(), self.hi.clone())
            } else {
                // entirely to the right
                (b.clone(), b.clone())
            }
        } else if death_ge_lo {
            if death_le_hi {
                // born before the window, dies inside
                (self.lo.clone(), p.death.finite().unwrap().clone())
            } else {
                // spans the whole window
                (self.lo.clone(), self.hi.clone())
            }
        } else {
            // entirely to the left; death is finite here
            let d = p.death.finite().unwrap().clone();
            (d.clone(), d)
        };
        DiagramPoint {
            dim,
            birth,
            death: ExtReal::Finite(death),
        }
    }
}
