//! Two-parameter persistence via one-critical bifiltrations: each simplex
//! carries one grade in the plane, lines of positive slope slice the module
//! into ordinary filtrations, and the matching distance is the supremum of
//! weighted bottleneck distances over slicing lines.
//!
//! The supremum is evaluated over a finite line grid, so reported values are
//! exact lower bounds of the true matching distance. A box-restricted
//! variant clips every slice to the parameter window the line spends inside
//! the box.

use rayon::prelude::*;

use crate::bottleneck::bottleneck_distance;
use crate::complex::{facets, normalize_simplex, standard_persistence, FilteredComplex};
use crate::diagram::{PersistenceDiagram, RestrictionInterval};
use crate::error::{Error, Result};
use crate::rational::{rat, ExtReal, Rational};
use num_traits::Zero;
use std::collections::BTreeMap;

/// A one-critical bifiltration: every simplex enters at a single grade in
/// the plane, and faces enter no later than cofaces in either coordinate.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Bifiltration {
    simplices: Vec<(Vec<usize>, [Rational; 2])>,
}

fn grade_le(a: &[Rational; 2], b: &[Rational; 2]) -> bool {
    a[0] <= b[0] && a[1] <= b[1]
}

impl Bifiltration {
    pub fn new(simplices: Vec<(Vec<usize>, [Rational; 2])>) -> Result<Bifiltration> {
        let mut by_simplex: BTreeMap<Vec<usize>, [Rational; 2]> = BTreeMap::new();
        for (verts, grade) in simplices {
            let verts = normalize_simplex(&verts)?;
            if by_simplex.insert(verts.clone(), grade).is_some() {
                return Err(Error::InvalidInput(format!(
                    "simplex {verts:?} graded twice; one grade per simplex"
                )));
            }
        }
        for (verts, grade) in &by_simplex {
            if verts.len() < 2 {
                continue;
            }
            for facet in facets(verts) {
                match by_simplex.get(&facet) {
                    None => {
                        return Err(Error::InvalidInput(format!(
                            "face {facet:?} of {verts:?} is missing"
                        )))
                    }
                    Some(fg) if !grade_le(fg, grade) => {
                        return Err(Error::InvalidInput(format!(
                            "face {facet:?} enters after {verts:?}"
                        )))
                    }
                    Some(_) => {}
                }
            }
        }
        // sorted (dimension, vertices) for deterministic slicing
        let mut simplices: Vec<(Vec<usize>, [Rational; 2])> = by_simplex.into_iter().collect();
        simplices.sort_by(|a, b| (a.0.len(), &a.0).cmp(&(b.0.len(), &b.0)));
        Ok(Bifiltration { simplices })
    }

    pub fn simplices(&self) -> &[(Vec<usize>, [Rational; 2])] {
        &self.simplices
    }

    pub fn is_empty(&self) -> bool {
        self.simplices.is_empty()
    }

    /// Componentwise min and max over all grades, or None when empty.
    pub fn grade_bounds(&self) -> Option<([Rational; 2], [Rational; 2])> {
        let mut it = self.simplices.iter().map(|(_, g)| g);
        let first = it.next()?;
        let mut lo = first.clone();
        let mut hi = first.clone();
        for g in it {
            for i in 0..2 {
                if g[i] < lo[i] {
                    lo[i] = g[i].clone();
                }
                if g[i] > hi[i] {
                    hi[i] = g[i].clone();
                }
            }
        }
        Some((lo, hi))
    }
}

/// A slicing line `p0 + t * m` with strictly positive direction, stored with
/// `max(m1, m2) = 1` so the weight `min(m1, m2)` lies in (0, 1].
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord)]
pub struct Line {
    p0: [Rational; 2],
    m: [Rational; 2],
}

impl Line {
    pub fn new(p0: [Rational; 2], m: [Rational; 2]) -> Result<Line> {
        if m[0] <= Rational::zero() || m[1] <= Rational::zero() {
            return Err(Error::InvalidInput(
                "line direction must be strictly positive in both coordinates".into(),
            ));
        }
        let scale = m[0].clone().max(m[1].clone());
        let m = [&m[0] / &scale, &m[1] / &scale];
        Ok(Line { p0, m })
    }

    pub fn basepoint(&self) -> &[Rational; 2] {
        &self.p0
    }

    pub fn direction(&self) -> &[Rational; 2] {
        &self.m
    }

    pub fn weight(&self) -> Rational {
        self.m[0].clone().min(self.m[1].clone())
    }

    /// Entry time of a grade on this line: the first `t` with
    /// `p0 + t*m` coordinatewise at or above the grade.
    pub fn entry_time(&self, grade: &[Rational; 2]) -> Rational {
        let t0 = (&grade[0] - &self.p0[0]) / &self.m[0];
        let t1 = (&grade[1] - &self.p0[1]) / &self.m[1];
        t0.max(t1)
    }
}

/// Restriction of a bifiltration to a line, as an ordinary filtration in
/// the line parameter.
pub fn slice_filtration(bf: &Bifiltration, line: &Line) -> Result<FilteredComplex> {
    FilteredComplex::new(
        bf.simplices
            .iter()
            .map(|(verts, grade)| (verts.clone(), line.entry_time(grade)))
            .collect(),
    )
}

/// Persistence diagram of the slice in dimension `p`.
pub fn diagram_along_line(bf: &Bifiltration, line: &Line, p: usize) -> Result<PersistenceDiagram> {
    Ok(standard_persistence(&slice_filtration(bf, line)?, p))
}

/// A finite, nonempty family of slicing lines standing in for the supremum
/// over all lines.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LineSample {
    lines: Vec<Line>,
}

impl LineSample {
    pub fn new(lines: Vec<Line>) -> Result<LineSample> {
        if lines.is_empty() {
            return Err(Error::EmptyInput("line sample".into()));
        }
        Ok(LineSample { lines })
    }

    pub fn lines(&self) -> &[Line] {
        &self.lines
    }

    /// A grid of `dirs x offsets` lines sweeping the box: directions fan
    /// from shallow to steep and always include the diagonal (1,1); offsets
    /// run along the box's falling diagonal and always include its center.
    pub fn grid_in_box(
        dirs: usize,
        offsets: usize,
        lo: &[Rational; 2],
        hi: &[Rational; 2],
    ) -> Result<LineSample> {
        if dirs == 0 || offsets == 0 {
            return Err(Error::EmptyInput("line grid".into()));
        }
        let mut directions = Vec::with_capacity(dirs);
        let shallow = dirs.div_ceil(2);
        for j in 1..=shallow {
            directions.push([rat(1, 1), rat(j as i64, shallow as i64)]);
        }
        let steep = dirs - shallow;
        for j in (1..=steep).rev() {
            directions.push([rat(j as i64, steep as i64 + 1), rat(1, 1)]);
        }
        let mut fractions = Vec::with_capacity(offsets);
        let near = offsets.div_ceil(2);
        for j in 1..=near {
            fractions.push(rat(j as i64, 2 * near as i64));
        }
        let far = offsets - near;
        for j in 1..=far {
            fractions.push(rat(far as i64 + 1 + j as i64, 2 * (far as i64 + 1)));
        }
        let mut lines = Vec::with_capacity(dirs * offsets);
        for m in &directions {
            for u in &fractions {
                // from the top-left to the bottom-right corner
                let p0 = [
                    &lo[0] + u * (&hi[0] - &lo[0]),
                    &hi[1] - u * (&hi[1] - &lo[1]),
                ];
                let line = Line::new(p0, m.clone())?;
                if !lines.contains(&line) {
                    lines.push(line);
                }
            }
        }
        LineSample::new(lines)
    }

    /// Default grid spanning both bifiltrations' grades, padded to a unit
    /// box when degenerate.
    pub fn grid_for(
        b1: &Bifiltration,
        b2: &Bifiltration,
        dirs: usize,
        offsets: usize,
    ) -> Result<LineSample> {
        let bounds = match (b1.grade_bounds(), b2.grade_bounds()) {
            (Some((lo1, hi1)), Some((lo2, hi2))) => Some((
                [lo1[0].clone().min(lo2[0].clone()), lo1[1].clone().min(lo2[1].clone())],
                [hi1[0].clone().max(hi2[0].clone()), hi1[1].clone().max(hi2[1].clone())],
            )),
            (Some(b), None) | (None, Some(b)) => Some(b),
            (None, None) => None,
        };
        let (lo, hi) = bounds.unwrap_or(([Rational::zero(), Rational::zero()], [rat(1, 1), rat(1, 1)]));
        LineSample::grid_in_box(dirs, offsets, &lo, &hi)
    }
}

/// Largest weighted bottleneck distance between slice diagrams over the
/// sample: a certified lower bound of the true matching distance.
pub fn matching_distance(
    b1: &Bifiltration,
    b2: &Bifiltration,
    p: usize,
    sample: &LineSample,
) -> Result<ExtReal> {
    let per_line: Vec<ExtReal> = sample
        .lines
        .par_iter()
        .map(|line| -> Result<ExtReal> {
            let d1 = diagram_along_line(b1, line, p)?;
            let d2 = diagram_along_line(b2, line, p)?;
            Ok(bottleneck_distance(&d1, &d2).scale(&line.weight()))
        })
        .collect::<Result<_>>()?;
    Ok(per_line.into_iter().max().expect("sample is nonempty"))
}

/// Parameter window a line spends inside the box, or None if it misses it.
pub fn line_box_clip(line: &Line, lo: &[Rational; 2], hi: &[Rational; 2]) -> Option<RestrictionInterval> {
    let mut t_lo: Option<Rational> = None;
    let mut t_hi: Option<Rational> = None;
    for i in 0..2 {
        let a = (&lo[i] - &line.p0[i]) / &line.m[i];
        let b = (&hi[i] - &line.p0[i]) / &line.m[i];
        t_lo = Some(match t_lo {
            Some(t) => t.max(a.clone()),
            None => a,
        });
        t_hi = Some(match t_hi {
            Some(t) => t.min(b.clone()),
            None => b,
        });
    }
    let (a, b) = (t_lo.unwrap(), t_hi.unwrap());
    if a <= b {
        Some(RestrictionInterval::new(a, b).expect("ordered endpoints"))
    } else {
        None
    }
}

/// Matching distance with every slice diagram first projected into the
/// line's parameter window inside the box; lines missing the box
/// contribute zero.
pub fn restricted_matching_distance(
    b1: &Bifiltration,
    b2: &Bifiltration,
    p: usize,
    sample: &LineSample,
    lo: &[Rational; 2],
    hi: &[Rational; 2],
) -> Result<ExtReal> {
    if lo[0] > hi[0] || lo[1] > hi[1] {
        return Err(Error::InvalidInput("box corners out of order".into()));
    }
    let per_line: Vec<ExtReal> = sample
        .lines
        .par_iter()
        .map(|line| -> Result<ExtReal> {
            let Some(window) = line_box_clip(line, lo, hi) else {
                return Ok(ExtReal::Finite(Rational::zero()));
            };
            let d1 = diagram_along_line(b1, line, p)?.restrict(&window);
            let d2 = diagram_along_line(b2, line, p)?.restrict(&window);
            Ok(bottleneck_distance(&d1, &d2).scale(&line.weight()))
        })
        .collect::<Result<_>>()?;
    Ok(per_line.into_iter().max().expect("sample is nonempty"))
}
