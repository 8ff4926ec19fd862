//! Metric graphs: geodesic distances between arbitrary realization points,
//! geodesic distance functions as piecewise-linear edge profiles, critical
//! values, sup-norm differences, and base-point sampling.
//!
//! Edge lengths are exact positive rationals; multi-edges and self-loops are
//! allowed; graphs must be connected. Vertex-to-vertex distances are computed
//! once at construction by exhaustive shortest paths, and distances involving
//! interior points enumerate the ways of exiting and entering the host edges
//! (plus the same-edge direct segment).

use crate::error::{Error, Result};
use crate::rational::Rational;
use num_traits::{Signed, Zero};

/// One edge `u -- v` of a positive rational length. `u == v` is a self-loop.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Edge {
    pub u: usize,
    pub v: usize,
    pub length: Rational,
}

/// A point of the geometric realization: a vertex, or an interior point of
/// an edge at a given offset from the edge's `u` endpoint.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum GraphPoint {
    Vertex(usize),
    OnEdge { edge: usize, offset: Rational },
}

/// A finite connected metric graph with named vertices.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MetricGraph {
    vertex_names: Vec<String>,
    edges: Vec<Edge>,
    // all-pairs vertex distances, filled at construction
    dist: Vec<Vec<Rational>>,
}

impl MetricGraph {
    /// Validates names, indices, and positive lengths, then computes all
    /// vertex-to-vertex distances. Disconnected graphs are rejected.
    pub fn new(vertex_names: Vec<String>, edges: Vec<Edge>) -> Result<MetricGraph> {
        let n = vertex_names.len();
        if n == 0 {
            return Err(Error::InvalidInput("graph with no vertices".into()));
        }
        let mut sorted = vertex_names.clone();
        sorted.sort();
        sorted.dedup();
        if sorted.len() != n {
            return Err(Error::InvalidInput("duplicate vertex names".into()));
        }
        for (i, e) in edges.iter().enumerate() {
            if e.u >= n || e.v >= n {
                return Err(Error::InvalidInput(format!(
                    "edge {i} touches a vertex out of range"
                )));
            }
            if e.length <= Rational::zero() {
                return Err(Error::InvalidInput(format!(
                    "edge {i} has non-positive length {}",
                    e.length
                )));
            }
        }
        // exhaustive shortest paths on the vertex skeleton
        let mut dist: Vec<Vec<Option<Rational>>> = vec![vec![None; n]; n];
        for (i, row) in dist.iter_mut().enumerate() {
            row[i] = Some(Rational::zero());
        }
        for e in &edges {
            if e.u == e.v {
                continue;
            }
            let better = match &dist[e.u][e.v] {
                Some(d) => e.length < *d,
                None => true,
            };
            if better {
                dist[e.u][e.v] = Some(e.length.clone());
                dist[e.v][e.u] = Some(e.length.clone());
            }
        }
        for k in 0..n {
            for i in 0..n {
                for j in 0..n {
                    let (Some(ik), Some(kj)) = (&dist[i][k], &dist[k][j]) else {
                        continue;
                    };
                    let through = ik + kj;
                    let better = match &dist[i][j] {
                        Some(d) => through < *d,
                        None => true,
                    };
                    if better {
                        dist[i][j] = Some(through);
                    }
                }
            }
        }
        let mut filled = Vec::with_capacity(n);
        for row in dist {
            let row: Option<Vec<Rational>> = row.into_iter().collect();
            filled.push(row.ok_or(Error::DisconnectedGraph)?);
        }
        Ok(MetricGraph {
            vertex_names,
            edges,
            dist: filled,
        })
    }

    pub fn vertex_count(&self) -> usize {
        self.vertex_names.len()
    }

    pub fn vertex_names(&self) -> &[String] {
        &self.vertex_names
    }

    pub fn vertex_index(&self, name: &str) -> Option<usize> {
        self.vertex_names.iter().position(|n| n == name)
    }

    pub fn edges(&self) -> &[Edge] {
        &self.edges
    }

    /// Distance between two vertices.
    pub fn vertex_distance(&self, u: usize, v: usize) -> &Rational {
        &self.dist[u][v]
    }

    /// Builds a validated point, normalizing offsets `0` and `length` to the
    /// endpoint vertices.
    pub fn point_on_edge(&self, edge: usize, offset: Rational) -> Result<GraphPoint> {
        let e = self
            .edges
            .get(edge)
            .ok_or_else(|| Error::InvalidInput(format!("edge {edge} out of range")))?;
        if offset < Rational::zero() || offset > e.length {
            return Err(Error::InvalidInput(format!(
                "offset {} outside edge of length {}",
                offset, e.length
            )));
        }
        if offset.is_zero() {
            Ok(GraphPoint::Vertex(e.u))
        } else if offset == e.length {
            Ok(GraphPoint::Vertex(e.v))
        } else {
            Ok(GraphPoint::OnEdge { edge, offset })
        }
    }

    pub fn vertex_point(&self, vertex: usize) -> Result<GraphPoint> {
        if vertex >= self.vertex_count() {
            return Err(Error::InvalidInput(format!("vertex {vertex} out of range")));
        }
        Ok(GraphPoint::Vertex(vertex))
    }

    fn check_point(&self, p: &GraphPoint) -> Result<()> {
        match p {
            GraphPoint::Vertex(v) if *v < self.vertex_count() => Ok(()),
            GraphPoint::Vertex(v) => {
                Err(Error::InvalidInput(format!("vertex {v} out of range")))
            }
            GraphPoint::OnEdge { edge, offset } => match self.edges.get(*edge) {
                Some(e) if offset > &Rational::zero() && offset < &e.length => Ok(()),
                Some(e) => Err(Error::InvalidInput(format!(
                    "offset {} not interior to edge of length {}",
                    offset, e.length
                ))),
                None => Err(Error::InvalidInput(format!("edge {edge} out of range"))),
            },
        }
    }

    /// The vertices a point can reach without crossing another point of its
    /// host edge, with the cost of getting there.
    fn exits(&self, p: &GraphPoint) -> Vec<(usize, Rational)> {
        match p {
            GraphPoint::Vertex(v) => vec![(*v, Rational::zero())],
            GraphPoint::OnEdge { edge, offset } => {
                let e = &self.edges[*edge];
                vec![(e.u, offset.clone()), (e.v, &e.length - offset)]
            }
        }
    }

    /// Shortest-path distance between any two realization points.
    pub fn geodesic_distance(&self, x: &GraphPoint, y: &GraphPoint) -> Result<Rational> {
        self.check_point(x)?;
        self.check_point(y)?;
        let mut best: Option<Rational> = None;
        if let (
            GraphPoint::OnEdge { edge: ex, offset: ox },
            GraphPoint::OnEdge { edge: ey, offset: oy },
        ) = (x, y)
        {
            if ex == ey {
                best = Some((ox - oy).abs());
            }
        }
        for (a, ca) in self.exits(x) {
            for (b, cb) in self.exits(y) {
                let cand = &ca + &self.dist[a][b] + &cb;
                if best.as_ref().map_or(true, |d| cand < *d) {
                    best = Some(cand);
                }
            }
        }
        Ok(best.expect("exit enumeration is never empty"))
    }

    /// The geodesic distance function from a base point, as per-edge
    /// piecewise-linear profiles. On every edge the profile is the lower
    /// envelope of distance cones from the edge's endpoints (plus, on the
    /// base's own edge, the cone of the base itself), so each edge carries at
    /// most one interior local maximum at offset
    /// `(length + d(v,b) - d(v,a)) / 2` per rising/falling pair.
    pub fn distance_function(&self, base: &GraphPoint) -> Result<PLGraphFunction> {
        self.check_point(base)?;
        let vertex_values: Vec<Rational> = (0..self.vertex_count())
            .map(|w| self.geodesic_distance(base, &GraphPoint::Vertex(w)))
            .collect::<Result<_>>()?;
        let mut edge_profiles = Vec::with_capacity(self.edges.len());
        for (idx, e) in self.edges.iter().enumerate() {
            // distance cones (apex offset, apex value) seen from this edge
            let mut cones = vec![
                (Rational::zero(), vertex_values[e.u].clone()),
                (e.length.clone(), vertex_values[e.v].clone()),
            ];
            if let GraphPoint::OnEdge { edge, offset } = base {
                if *edge == idx {
                    cones.push((offset.clone(), Rational::zero()));
                }
            }
            edge_profiles.push(cone_envelope(&cones, &e.length));
        }
        PLGraphFunction::new(self, vertex_values, edge_profiles)
    }

    /// All vertices plus `k` evenly spaced interior points per edge.
    pub fn sample_base_points(&self, k: usize) -> Vec<GraphPoint> {
        let mut points: Vec<GraphPoint> =
            (0..self.vertex_count()).map(GraphPoint::Vertex).collect();
        for (idx, e) in self.edges.iter().enumerate() {
            for j in 1..=k {
                let offset = &e.length * Rational::new(j.into(), (k + 1).into());
                points.push(GraphPoint::OnEdge { edge: idx, offset });
            }
        }
        points
    }

    /// The sample spacing bound for `sample_base_points(k)`: no point of the
    /// realization is farther than half this from a sample; reported with
    /// sampled distortion values.
    pub fn sample_spacing(&self, k: usize) -> Rational {
        self.edges
            .iter()
            .map(|e| &e.length / Rational::from_integer((k as i64 + 1).into()))
            .max()
            .unwrap_or_else(Rational::zero)
    }
}

/// Lower envelope of `d_i + |t - a_i|` cones over `[0, length]`, returned as
/// breakpoints with collinear interior points removed.
fn cone_envelope(cones: &[(Rational, Rational)], length: &Rational) -> Vec<(Rational, Rational)> {
    let value_at = |t: &Rational| -> Rational {
        cones
            .iter()
            .map(|(a, d)| d + (t - a).abs())
            .min()
            .expect("at least two cones")
    };
    let mut candidates: Vec<Rational> = vec![Rational::zero(), length.clone()];
    for (a, _) in cones {
        candidates.push(a.clone());
    }
    let two = Rational::from_integer(2.into());
    for (i, (ai, di)) in cones.iter().enumerate() {
        for (aj, dj) in cones.iter().skip(i + 1) {
            // crossings of the rising branch of one with the falling branch
            // of the other, in both orders
            candidates.push((ai + aj + dj - di) / &two);
            candidates.push((ai + aj + di - dj) / &two);
        }
    }
    candidates.retain(|t| t >= &Rational::zero() && t <= length);
    candidates.sort();
    candidates.dedup();
    let profile: Vec<(Rational, Rational)> = candidates
        .into_iter()
        .map(|t| {
            let v = value_at(&t);
            (t, v)
        })
        .collect();
    simplify_profile(profile)
}

/// Drops interior breakpoints where the slope does not change.
fn simplify_profile(profile: Vec<(Rational, Rational)>) -> Vec<(Rational, Rational)> {
    let mut out: Vec<(Rational, Rational)> = Vec::with_capacity(profile.len());
    for bp in profile {
        while out.len() >= 2 {
            let (t0, v0) = &out[out.len() - 2];
            let (t1, v1) = &out[out.len() - 1];
            // collinear iff (v1-v0)*(t2-t1) == (v2-v1)*(t1-t0)
            let lhs = (v1 - v0) * (&bp.0 - t1);
            let rhs = (&bp.1 - v1) * (t1 - t0);
            if lhs == rhs {
                out.pop();
            } else {
                break;
            }
        }
        out.push(bp);
    }
    out
}

/// A piecewise-linear function on a metric graph's realization: one value
/// per vertex and one breakpoint profile per edge, linear between
/// breakpoints, consistent at shared vertices.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PLGraphFunction {
    vertex_values: Vec<Rational>,
    // per edge: (offset, value) breakpoints including both endpoints, offsets
    // strictly increasing from 0 to the edge length
    edge_profiles: Vec<Vec<(Rational, Rational)>>,
    edge_lengths: Vec<Rational>,
}

impl PLGraphFunction {
    pub fn new(
        graph: &MetricGraph,
        vertex_values: Vec<Rational>,
        edge_profiles: Vec<Vec<(Rational, Rational)>>,
    ) -> Result<PLGraphFunction> {
        if vertex_values.len() != graph.vertex_count() {
            return Err(Error::InvalidInput(format!(
                "{} vertex values for {} vertices",
                vertex_values.len(),
                graph.vertex_count()
            )));
        }
        if edge_profiles.len() != graph.edges().len() {
            return Err(Error::InvalidInput(format!(
                "{} edge profiles for {} edges",
                edge_profiles.len(),
                graph.edges().len()
            )));
        }
        for (idx, (profile, e)) in edge_profiles.iter().zip(graph.edges()).enumerate() {
            if profile.len() < 2 {
                return Err(Error::InvalidInput(format!(
                    "edge {idx} profile needs both endpoints"
                )));
            }
            if profile[0].0 != Rational::zero() || profile[profile.len() - 1].0 != e.length {
                return Err(Error::InvalidInput(format!(
                    "edge {idx} profile must span offsets 0 to {}",
                    e.length
                )));
            }
            if profile.windows(2).any(|w| w[0].0 >= w[1].0) {
                return Err(Error::InvalidInput(format!(
                    "edge {idx} breakpoints not strictly increasing"
                )));
            }
            if profile[0].1 != vertex_values[e.u] || profile[profile.len() - 1].1 != vertex_values[e.v]
            {
                return Err(Error::InvalidInput(format!(
                    "edge {idx} profile disagrees with its vertex values"
                )));
            }
        }
        Ok(PLGraphFunction {
            vertex_values,
            edge_profiles,
            edge_lengths: graph.edges().iter().map(|e| e.length.clone()).collect(),
        })
    }

    pub fn vertex_values(&self) -> &[Rational] {
        &self.vertex_values
    }

    pub fn edge_profiles(&self) -> &[Vec<(Rational, Rational)>] {
        &self.edge_profiles
    }

    /// True when the two functions live on structurally identical graphs.
    fn same_shape(&self, other: &PLGraphFunction) -> bool {
        self.vertex_values.len() == other.vertex_values.len()
            && self.edge_lengths == other.edge_lengths
    }

    /// Value at a point, by linear interpolation on the host edge.
    pub fn evaluate(&self, p: &GraphPoint) -> Result<Rational> {
        match p {
            GraphPoint::Vertex(v) => self
                .vertex_values
                .get(*v)
                .cloned()
                .ok_or_else(|| Error::InvalidInput(format!("vertex {v} out of range"))),
            GraphPoint::OnEdge { edge, offset } => {
                let profile = self
                    .edge_profiles
                    .get(*edge)
                    .ok_or_else(|| Error::InvalidInput(format!("edge {edge} out of range")))?;
                evaluate_profile(profile, offset)
            }
        }
    }

    /// Vertex values plus interior-breakpoint values at local extrema
    /// (including flat junctions), sorted and deduplicated. Values where the
    /// function merely changes slope without turning around are not critical:
    /// level sets do not change topology there.
    pub fn critical_values(&self) -> Vec<Rational> {
        let mut values = self.vertex_values.clone();
        for profile in &self.edge_profiles {
            for w in profile.windows(3) {
                let (t0, v0) = &w[0];
                let (t1, v1) = &w[1];
                let (t2, v2) = &w[2];
                let rising_in = (v1 - v0) * (t2 - t1);
                let rising_out = (v2 - v1) * (t1 - t0);
                // extremum or plateau junction: slope signs not both
                // strictly positive or both strictly negative
                let monotone = (rising_in > Rational::zero() && rising_out > Rational::zero())
                    || (rising_in < Rational::zero() && rising_out < Rational::zero());
                if !monotone {
                    values.push(v1.clone());
                }
            }
        }
        values.sort();
        values.dedup();
        values
    }

    /// Exact `max |f - g|` over the realization: the difference is PL, so
    /// the maximum is attained at a breakpoint of either profile.
    pub fn sup_norm_difference(&self, other: &PLGraphFunction) -> Result<Rational> {
        if !self.same_shape(other) {
            return Err(Error::MismatchedGraphs);
        }
        let mut best = Rational::zero();
        for (a, b) in self.vertex_values.iter().zip(&other.vertex_values) {
            best = best.max((a - b).abs());
        }
        for (pa, pb) in self.edge_profiles.iter().zip(&other.edge_profiles) {
            let mut offsets: Vec<&Rational> = pa.iter().map(|(t, _)| t).collect();
            offsets.extend(pb.iter().map(|(t, _)| t));
            offsets.sort();
            offsets.dedup();
            for t in offsets {
                let va = evaluate_profile(pa, t).expect("offset lies on both profiles");
                let vb = evaluate_profile(pb, t).expect("offset lies on both profiles");
                best = best.max((va - vb).abs());
            }
        }
        Ok(best)
    }
}

fn evaluate_profile(profile: &[(Rational, Rational)], t: &Rational) -> Result<Rational> {
    let last = &profile[profile.len() - 1];
    if t < &profile[0].0 || t > &last.0 {
        return Err(Error::InvalidInput(format!(
            "offset {t} outside profile range"
        )));
    }
    for w in profile.windows(2) {
        let (t0, v0) = &w[0];
        let (t1, v1) = &w[1];
        if t >= t0 && t <= t1 {
            return Ok(v0 + (v1 - v0) * (t - t0) / (t1 - t0));
        }
    }
    Ok(last.1.clone())
}
