//! File formats and small text syntaxes shared by the command-line tools.
//!
//! All rationals travel as strings ("5", "3/2", "inf" for infinite deaths)
//! to keep round-trips exact; bare JSON integers are accepted on input.
//! Output is deterministic: diagrams and interval lists are emitted in
//! their canonical sorted order.

use serde::{Deserialize, Serialize};

use crate::complex::SimplicialComplex;
use crate::diagram::{DiagramPoint, PersistenceDiagram, RestrictionInterval};
use crate::error::{Error, Result};
use crate::graph::{Edge, GraphPoint, MetricGraph};
use crate::multiparam::Bifiltration;
use crate::rational::{format_rational, parse_rational, ExtReal, Rational};
use crate::zigzag::{Arrow, ArrowDirection, IndexInterval, ZigzagModule};
use crate::gf2::GF2Matrix;

#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(untagged)]
enum NumberOrString {
    Int(i64),
    Str(String),
}

impl NumberOrString {
    fn to_rational(&self) -> Result<Rational> {
        match self {
            NumberOrString::Int(n) => Ok(Rational::from_integer((*n).into())),
            NumberOrString::Str(s) => parse_rational(s),
        }
    }

    fn to_ext_real(&self) -> Result<ExtReal> {
        match self {
            NumberOrString::Int(n) => Ok(ExtReal::Finite(Rational::from_integer((*n).into()))),
            NumberOrString::Str(s) if s.trim() == "inf" => Ok(ExtReal::Infinity),
            NumberOrString::Str(s) => Ok(ExtReal::Finite(parse_rational(s)?)),
        }
    }
}

fn json_err(e: serde_json::Error) -> Error {
    Error::InvalidInput(format!("malformed json: {e}"))
}

pub fn format_ext_real(v: &ExtReal) -> String {
    match v {
        ExtReal::Finite(r) => format_rational(r),
        ExtReal::Infinity => "inf".into(),
    }
}

// -------- persistence diagrams --------

#[derive(Serialize, Deserialize)]
struct PointDto {
    birth: NumberOrString,
    death: NumberOrString,
    #[serde(default)]
    dim: usize,
}

#[derive(Serialize, Deserialize)]
struct DiagramDto {
    points: Vec<PointDto>,
}

pub fn diagram_from_json(s: &str) -> Result<PersistenceDiagram> {
    let dto: DiagramDto = serde_json::from_str(s).map_err(json_err)?;
    let points = dto
        .points
        .iter()
        .map(|p| DiagramPoint::new(p.birth.to_rational()?, p.death.to_ext_real()?, p.dim))
        .collect::<Result<Vec<_>>>()?;
    Ok(PersistenceDiagram::new(points))
}

pub fn diagram_to_json(d: &PersistenceDiagram) -> String {
    let dto = DiagramDto {
        points: d
            .points()
            .iter()
            .map(|p| PointDto {
                birth: NumberOrString::Str(format_rational(&p.birth)),
                death: NumberOrString::Str(format_ext_real(&p.death)),
                dim: p.dim,
            })
            .collect(),
    };
    serde_json::to_string(&dto).expect("diagram serialization cannot fail")
}

/// Scatter plot of a diagram for quick visual inspection. Coordinates are
/// rounded to floats for layout only; infinite deaths sit on the top edge.
pub fn diagram_to_svg(d: &PersistenceDiagram) -> String {
    use num_traits::ToPrimitive;
    let finite: Vec<f64> = d
        .points()
        .iter()
        .flat_map(|p| {
            let mut v = vec![p.birth.to_f64().unwrap_or(0.0)];
            if let ExtReal::Finite(death) = &p.death {
                v.push(death.to_f64().unwrap_or(0.0));
            }
            v
        })
        .collect();
    let hi = finite.iter().cloned().fold(1.0_f64, f64::max);
    let lo = finite.iter().cloned().fold(0.0_f64, f64::min);
    let span = (hi - lo).max(1e-9);
    let size = 320.0;
    let pad = 30.0;
    let sx = |v: f64| pad + (v - lo) / span * (size - 2.0 * pad);
    let sy = |v: f64| size - pad - (v - lo) / span * (size - 2.0 * pad);
    let mut out = String::new();
    out.push_str(&format!(
        "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"{size}\" height=\"{size}\" \
         viewBox=\"0 0 {size} {size}\">\n"
    ));
    out.push_str(&format!(
        "  <rect width=\"{size}\" height=\"{size}\" fill=\"white\"/>\n"
    ));
    out.push_str(&format!(
        "  <line x1=\"{}\" y1=\"{}\" x2=\"{}\" y2=\"{}\" stroke=\"#999\"/>\n",
        sx(lo),
        sy(lo),
        sx(lo + span),
        sy(lo + span)
    ));
    for p in d.points() {
        let x = sx(p.birth.to_f64().unwrap_or(0.0));
        let (y, fill) = match &p.death {
            ExtReal::Finite(death) => (sy(death.to_f64().unwrap_or(0.0)), "#1f6fb2"),
            ExtReal::Infinity => (pad / 2.0, "#b23a1f"),
        };
        let shape = if p.dim == 0 { "circle" } else { "rect" };
        if shape == "circle" {
            out.push_str(&format!(
                "  <circle cx=\"{x:.2}\" cy=\"{y:.2}\" r=\"4\" fill=\"{fill}\"/>\n"
            ));
        } else {
            out.push_str(&format!(
                "  <rect x=\"{:.2}\" y=\"{:.2}\" width=\"8\" height=\"8\" fill=\"{fill}\"/>\n",
                x - 4.0,
                y - 4.0
            ));
        }
    }
    out.push_str("</svg>\n");
    out
}

// -------- metric graphs --------

#[derive(Serialize, Deserialize)]
struct EdgeDto {
    u: String,
    v: String,
    length: NumberOrString,
}

#[derive(Serialize, Deserialize)]
struct GraphDto {
    vertices: Vec<String>,
    edges: Vec<EdgeDto>,
}

pub fn graph_from_json(s: &str) -> Result<MetricGraph> {
    let dto: GraphDto = serde_json::from_str(s).map_err(json_err)?;
    let find = |name: &str| {
        dto.vertices
            .iter()
            .position(|n| n == name)
            .ok_or_else(|| Error::InvalidInput(format!("unknown vertex \"{name}\"")))
    };
    let edges = dto
        .edges
        .iter()
        .map(|e| {
            Ok(Edge {
                u: find(&e.u)?,
                v: find(&e.v)?,
                length: e.length.to_rational()?,
            })
        })
        .collect::<Result<Vec<_>>>()?;
    MetricGraph::new(dto.vertices, edges)
}

/// "vertex:a" or "edge:1@3/2" (edge index, offset from its `u` end).
pub fn graph_point_from_str(graph: &MetricGraph, s: &str) -> Result<GraphPoint> {
    let s = s.trim();
    if let Some(name) = s.strip_prefix("vertex:") {
        let v = graph
            .vertex_index(name.trim())
            .ok_or_else(|| Error::InvalidInput(format!("unknown vertex \"{name}\"")))?;
        graph.vertex_point(v)
    } else if let Some(rest) = s.strip_prefix("edge:") {
        let (idx, offset) = rest
            .split_once('@')
            .ok_or_else(|| Error::InvalidInput(format!("expected edge:<index>@<offset>: \"{s}\"")))?;
        let idx: usize = idx
            .trim()
            .parse()
            .map_err(|_| Error::InvalidInput(format!("bad edge index \"{idx}\"")))?;
        graph.point_on_edge(idx, parse_rational(offset)?)
    } else {
        Err(Error::InvalidInput(format!(
            "expected vertex:<name> or edge:<index>@<offset>: \"{s}\""
        )))
    }
}

/// "lo:hi" with rational endpoints.
pub fn interval_from_str(s: &str) -> Result<RestrictionInterval> {
    let (lo, hi) = s
        .split_once(':')
        .ok_or_else(|| Error::InvalidInput(format!("expected lo:hi, got \"{s}\"")))?;
    RestrictionInterval::new(parse_rational(lo)?, parse_rational(hi)?)
}

/// "x1:x2,y1:y2" box corners, lower-left and upper-right.
pub fn box_from_str(s: &str) -> Result<([Rational; 2], [Rational; 2])> {
    let (xs, ys) = s
        .split_once(',')
        .ok_or_else(|| Error::InvalidInput(format!("expected x1:x2,y1:y2, got \"{s}\"")))?;
    let x = interval_from_str(xs)?;
    let y = interval_from_str(ys)?;
    Ok(([x.lo().clone(), y.lo().clone()], [x.hi().clone(), y.hi().clone()]))
}

// -------- zigzag modules and intervals --------

#[derive(Serialize, Deserialize)]
struct ArrowDto {
    dir: String,
    matrix: Vec<Vec<u8>>,
}

#[derive(Serialize, Deserialize)]
struct ZigzagDto {
    dims: Vec<usize>,
    arrows: Vec<ArrowDto>,
}

pub fn zigzag_from_json(s: &str) -> Result<ZigzagModule> {
    let dto: ZigzagDto = serde_json::from_str(s).map_err(json_err)?;
    if dto.dims.is_empty() {
        return Err(Error::EmptyInput("zigzag module".into()));
    }
    if dto.arrows.len() + 1 != dto.dims.len() {
        return Err(Error::InvalidInput(format!(
            "{} spaces need {} arrows, found {}",
            dto.dims.len(),
            dto.dims.len() - 1,
            dto.arrows.len()
        )));
    }
    let arrows = dto
        .arrows
        .iter()
        .enumerate()
        .map(|(j, a)| {
            let direction = match a.dir.as_str() {
                "fwd" => ArrowDirection::Forward,
                "bwd" => ArrowDirection::Backward,
                other => {
                    return Err(Error::InvalidInput(format!(
                        "arrow {j}: dir must be \"fwd\" or \"bwd\", got \"{other}\""
                    )))
                }
            };
            let cols = match direction {
                ArrowDirection::Forward => dto.dims[j],
                ArrowDirection::Backward => dto.dims[j + 1],
            };
            let matrix = GF2Matrix::from_rows(&a.matrix, cols)?;
            Ok(Arrow { direction, matrix })
        })
        .collect::<Result<Vec<_>>>()?;
    ZigzagModule::new(dto.dims, arrows)
}

#[derive(Serialize, Deserialize)]
struct IntervalDto {
    b: usize,
    d: usize,
}

#[derive(Serialize, Deserialize)]
struct IntervalsDto {
    intervals: Vec<IntervalDto>,
}

pub fn intervals_to_json(intervals: &[IndexInterval]) -> String {
    let dto = IntervalsDto {
        intervals: intervals
            .iter()
            .map(|iv| IntervalDto { b: iv.b, d: iv.d })
            .collect(),
    };
    serde_json::to_string(&dto).expect("interval serialization cannot fail")
}

// -------- bifiltrations --------

#[derive(Serialize, Deserialize)]
struct GradedSimplexDto {
    verts: Vec<usize>,
    grade: Vec<NumberOrString>,
}

#[derive(Serialize, Deserialize)]
struct BifiltrationDto {
    simplices: Vec<GradedSimplexDto>,
}

pub fn bifiltration_from_json(s: &str) -> Result<Bifiltration> {
    let dto: BifiltrationDto = serde_json::from_str(s).map_err(json_err)?;
    let simplices = dto
        .simplices
        .iter()
        .map(|gs| {
            if gs.grade.len() != 2 {
                return Err(Error::InvalidInput(format!(
                    "simplex {:?}: grade must have exactly two coordinates",
                    gs.verts
                )));
            }
            Ok((
                gs.verts.clone(),
                [gs.grade[0].to_rational()?, gs.grade[1].to_rational()?],
            ))
        })
        .collect::<Result<Vec<_>>>()?;
    Bifiltration::new(simplices)
}

// -------- snapshot sequences --------

#[derive(Serialize, Deserialize)]
struct SnapshotDto {
    simplices: Vec<Vec<usize>>,
}

#[derive(Serialize, Deserialize)]
struct SnapshotsDto {
    snapshots: Vec<SnapshotDto>,
}

pub fn snapshots_from_json(s: &str) -> Result<Vec<SimplicialComplex>> {
    let dto: SnapshotsDto = serde_json::from_str(s).map_err(json_err)?;
    dto.snapshots
        .iter()
        .map(|snap| SimplicialComplex::new(snap.simplices.clone()))
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::{rat, rat_int};

    #[test]
    fn diagram_roundtrip() {
        let d = PersistenceDiagram::new(vec![
            DiagramPoint::finite(rat_int(0), rat(5, 2), 0).unwrap(),
            DiagramPoint::new(rat_int(1), ExtReal::Infinity, 1).unwrap(),
        ]);
        let json = diagram_to_json(&d);
        assert_eq!(
            json,
            r#"{"points":[{"birth":"0","death":"5/2","dim":0},{"birth":"1","death":"inf","dim":1}]}"#
        );
        assert_eq!(diagram_from_json(&json).unwrap(), d);
    }

    #[test]
    fn diagram_accepts_bare_integers_and_defaults_dim() {
        let d = diagram_from_json(r#"{"points":[{"birth":0,"death":5}]}"#).unwrap();
        assert_eq!(d.points()[0].dim, 0);
        assert_eq!(d.points()[0].death, ExtReal::Finite(rat_int(5)));
    }

    #[test]
    fn diagram_rejects_garbage() {
        assert!(diagram_from_json("{").is_err());
        assert!(diagram_from_json(r#"{"points":[{"birth":"x","death":"1"}]}"#).is_err());
        assert!(diagram_from_json(r#"{"points":[{"birth":"2","death":"1"}]}"#).is_err());
    }

    #[test]
    fn graph_parsing() {
        let g = graph_from_json(
            r#"{"vertices":["a","b"],"edges":[{"u":"a","v":"b","length":"3"}]}"#,
        )
        .unwrap();
        assert_eq!(g.vertex_count(), 2);
        assert_eq!(g.edges()[0].length, rat_int(3));
        assert!(graph_from_json(r#"{"vertices":["a"],"edges":[{"u":"a","v":"z","length":1}]}"#)
            .is_err());
    }

    #[test]
    fn graph_point_syntax() {
        let g = graph_from_json(
            r#"{"vertices":["a","b"],"edges":[{"u":"a","v":"b","length":"4"}]}"#,
        )
        .unwrap();
        assert_eq!(graph_point_from_str(&g, "vertex:a").unwrap(), GraphPoint::Vertex(0));
        assert_eq!(
            graph_point_from_str(&g, "edge:0@3/2").unwrap(),
            GraphPoint::OnEdge {
                edge: 0,
                offset: rat(3, 2)
            }
        );
        assert_eq!(graph_point_from_str(&g, "edge:0@4").unwrap(), GraphPoint::Vertex(1));
        assert!(graph_point_from_str(&g, "vertex:z").is_err());
        assert!(graph_point_from_str(&g, "edge:0").is_err());
        assert!(graph_point_from_str(&g, "midpoint").is_err());
    }

    #[test]
    fn interval_and_box_syntax() {
        let w = interval_from_str("0:5/2").unwrap();
        assert_eq!((w.lo().clone(), w.hi().clone()), (rat_int(0), rat(5, 2)));
        assert!(interval_from_str("3:1").is_err());
        let (lo, hi) = box_from_str("0:1,2:3").unwrap();
        assert_eq!(lo, [rat_int(0), rat_int(2)]);
        assert_eq!(hi, [rat_int(1), rat_int(3)]);
        assert!(box_from_str("0:1").is_err());
    }

    #[test]
    fn zigzag_parsing() {
        let m = zigzag_from_json(
            r#"{"dims":[1,2,1],"arrows":[{"dir":"fwd","matrix":[[1],[1]]},{"dir":"bwd","matrix":[[1],[1]]}]}"#,
        )
        .unwrap();
        assert_eq!(m.dims(), &[1, 2, 1]);
        assert!(zigzag_from_json(r#"{"dims":[1,2],"arrows":[]}"#).is_err());
        assert!(zigzag_from_json(
            r#"{"dims":[1,1],"arrows":[{"dir":"sideways","matrix":[[1]]}]}"#
        )
        .is_err());
        assert!(zigzag_from_json(
            r#"{"dims":[1,2],"arrows":[{"dir":"fwd","matrix":[[1]]}]}"#
        )
        .is_err());
    }

    #[test]
    fn intervals_emission() {
        let intervals = vec![
            IndexInterval::new(1, 3).unwrap(),
            IndexInterval::new(2, 2).unwrap(),
        ];
        assert_eq!(
            intervals_to_json(&intervals),
            r#"{"intervals":[{"b":1,"d":3},{"b":2,"d":2}]}"#
        );
    }

    #[test]
    fn bifiltration_parsing() {
        let b = bifiltration_from_json(
            r#"{"simplices":[{"verts":[0],"grade":["0","0"]},{"verts":[1],"grade":[1,1]},{"verts":[0,1],"grade":["3/2","2"]}]}"#,
        )
        .unwrap();
        assert_eq!(b.simplices().len(), 3);
        assert!(bifiltration_from_json(r#"{"simplices":[{"verts":[0],"grade":["1"]}]}"#).is_err());
    }

    #[test]
    fn snapshots_parsing() {
        let s = snapshots_from_json(r#"{"snapshots":[{"simplices":[[0],[1]]},{"simplices":[[0,1]]}]}"#)
            .unwrap();
        assert_eq!(s.len(), 2);
        // closure adds the endpoints of [0,1]
        assert_eq!(s[1].simplices().len(), 3);
    }

    #[test]
    fn svg_emission_is_well_formed() {
        let d = PersistenceDiagram::new(vec![
            DiagramPoint::finite(rat_int(0), rat_int(3), 0).unwrap(),
            DiagramPoint::new(rat_int(1), ExtReal::Infinity, 1).unwrap(),
        ]);
        let svg = diagram_to_svg(&d);
        assert!(svg.starts_with("<svg"));
        assert!(svg.ends_with("</svg>\n"));
        assert!(svg.contains("circle"));
        assert!(svg.contains("rect x="));
    }
}
