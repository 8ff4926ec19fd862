//! Persistence distortion between metric graphs: every base point is mapped
//! to the level-set diagram of its geodesic distance function, and two
//! graphs are compared by the Hausdorff distance between their diagram
//! clouds under the bottleneck metric.
//!
//! The continuum supremum is replaced by a finite base-point sample; the
//! map is 1-Lipschitz (bottleneck vs geodesic distance), so the sampled
//! value is within the sample spacing of the true one. The spacing is
//! reported alongside every estimate.

use rayon::prelude::*;

use crate::bottleneck::bottleneck_distance;
use crate::diagram::{PersistenceDiagram, RestrictionInterval};
use crate::error::{Error, Result};
use crate::graph::{GraphPoint, MetricGraph};
use crate::levelset::lzz_diagram;
use crate::rational::{ExtReal, Rational};
use num_traits::Zero;

/// The diagram of the geodesic distance function from `base`, optionally
/// restricted to the window `[0, radius]` for local comparison.
pub fn phi(
    graph: &MetricGraph,
    base: &GraphPoint,
    radius: Option<&Rational>,
) -> Result<PersistenceDiagram> {
    let f = graph.distance_function(base)?;
    let diagram = lzz_diagram(graph, &f)?;
    match radius {
        Some(r) => {
            let window = RestrictionInterval::new(Rational::zero(), r.clone())?;
            Ok(diagram.restrict(&window))
        }
        None => Ok(diagram),
    }
}

/// A nonempty family of base points with their diagrams, all produced at
/// one radius setting.
#[derive(Debug, Clone)]
pub struct DiagramCloud {
    entries: Vec<(GraphPoint, PersistenceDiagram)>,
}

impl DiagramCloud {
    pub fn new(entries: Vec<(GraphPoint, PersistenceDiagram)>) -> Result<DiagramCloud> {
        if entries.is_empty() {
            return Err(Error::EmptyInput("diagram cloud".into()));
        }
        Ok(DiagramCloud { entries })
    }

    /// Diagrams of all vertices plus `k` evenly spaced points per edge,
    /// computed in parallel.
    pub fn from_samples(
        graph: &MetricGraph,
        k: usize,
        radius: Option<&Rational>,
    ) -> Result<DiagramCloud> {
        let entries = graph
            .sample_base_points(k)
            .into_par_iter()
            .map(|p| phi(graph, &p, radius).map(|d| (p, d)))
            .collect::<Result<Vec<_>>>()?;
        DiagramCloud::new(entries)
    }

    pub fn entries(&self) -> &[(GraphPoint, PersistenceDiagram)] {
        &self.entries
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }
}

/// Hausdorff distance between two diagram clouds under the bottleneck
/// metric: the larger of the two directed sup-inf values, exact.
pub fn hausdorff_bottleneck(a: &DiagramCloud, b: &DiagramCloud) -> ExtReal {
    let table: Vec<Vec<ExtReal>> = a
        .entries
        .par_iter()
        .map(|(_, da)| {
            b.entries
                .iter()
                .map(|(_, db)| bottleneck_distance(da, db))
                .collect()
        })
        .collect();
    let a_to_b = table
        .iter()
        .map(|row| row.iter().min().expect("cloud is nonempty").clone())
        .max()
        .expect("cloud is nonempty");
    let b_to_a = (0..b.entries.len())
        .map(|j| {
            table
                .iter()
                .map(|row| row[j].clone())
                .min()
                .expect("cloud is nonempty")
        })
        .max()
        .expect("cloud is nonempty");
    a_to_b.max(b_to_a)
}

/// A sampled distortion value together with the sample spacing that bounds
/// its distance from the exact supremum.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DistortionEstimate {
    pub distance: ExtReal,
    pub spacing: Rational,
}

/// Persistence distortion between two graphs, sampled with `k` interior
/// points per edge, optionally localized to radius-`r` neighborhoods.
pub fn persistence_distortion(
    g1: &MetricGraph,
    g2: &MetricGraph,
    k: usize,
    radius: Option<&Rational>,
) -> Result<DistortionEstimate> {
    let a = DiagramCloud::from_samples(g1, k, radius)?;
    let b = DiagramCloud::from_samples(g2, k, radius)?;
    let spacing = g1.sample_spacing(k).max(g2.sample_spacing(k));
    Ok(DistortionEstimate {
        distance: hausdorff_bottleneck(&a, &b),
        spacing,
    })
}
