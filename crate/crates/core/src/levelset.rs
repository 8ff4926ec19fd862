//! Level-set zigzag persistence of piecewise-linear functions on metric
//! graphs.
//!
//! For a function with critical values `a_1 < ... < a_n`, regular values
//! `s_k` are interleaved between them and the sequence
//! `f^{-1}(s_0) -> f^{-1}([s_0,s_1]) <- f^{-1}(s_1) -> ...` of 2n+1 spaces
//! is built. Connected components of each space give a zigzag module over
//! GF(2); its interval decomposition, pushed back through the index-to-value
//! conversion, is the labeled level-set diagram. Intervals with a closed
//! left end are dimension 0, open left end dimension 1 (loops and merges).

use std::collections::{BTreeMap, BTreeSet};

use crate::diagram::{DiagramPoint, PersistenceDiagram, RestrictionInterval};
use crate::error::{Error, Result};
use crate::gf2::GF2Matrix;
use crate::graph::{MetricGraph, PLGraphFunction};
use crate::rational::{rat_int, ExtReal, Rational};
use crate::uf::UnionFind;
use crate::zigzag::{interval_decomposition, Arrow, ArrowDirection, IndexInterval, ZigzagModule};
use num_traits::Zero;

/// The critical values of a function, with the interleaved regular values
/// used to position the zigzag's slices.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CriticalSequence {
    criticals: Vec<Rational>,
}

impl CriticalSequence {
    /// Sorts and deduplicates; at least one value is required.
    pub fn new(values: Vec<Rational>) -> Result<CriticalSequence> {
        if values.is_empty() {
            return Err(Error::EmptyInput("critical value list".into()));
        }
        let mut criticals = values;
        criticals.sort();
        criticals.dedup();
        Ok(CriticalSequence { criticals })
    }

    pub fn from_function(f: &PLGraphFunction) -> Result<CriticalSequence> {
        CriticalSequence::new(f.critical_values())
    }

    /// `a_1 < ... < a_n`, ascending.
    pub fn criticals(&self) -> &[Rational] {
        &self.criticals
    }

    pub fn len(&self) -> usize {
        self.criticals.len()
    }

    pub fn is_empty(&self) -> bool {
        self.criticals.is_empty()
    }

    /// `a_k` for 1-based `k`.
    pub fn critical(&self, k: usize) -> &Rational {
        &self.criticals[k - 1]
    }

    /// Regular values `s_0 < a_1 < s_1 < ... < a_n < s_n`: midpoints between
    /// consecutive criticals, padded by one unit at both ends.
    pub fn regulars(&self) -> Vec<Rational> {
        let n = self.criticals.len();
        let mut s = Vec::with_capacity(n + 1);
        s.push(&self.criticals[0] - rat_int(1));
        for w in self.criticals.windows(2) {
            s.push((&w[0] + &w[1]) / rat_int(2));
        }
        s.push(&self.criticals[n - 1] + rat_int(1));
        s
    }
}

/// Whether an interval endpoint includes its value.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum EndpointKind {
    Closed,
    Open,
}

/// A decomposition interval in function-value terms, with endpoint types.
/// Closed-left intervals are component features (dimension 0); open-left
/// intervals are loop and merge features (dimension 1).
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord)]
pub struct TypedInterval {
    pub birth: Rational,
    pub death: Rational,
    pub left: EndpointKind,
    pub right: EndpointKind,
}

impl TypedInterval {
    pub fn dim(&self) -> usize {
        match self.left {
            EndpointKind::Closed => 0,
            EndpointKind::Open => 1,
        }
    }

    pub fn to_point(&self) -> DiagramPoint {
        DiagramPoint::new(self.birth.clone(), ExtReal::Finite(self.death.clone()), self.dim())
            .expect("typed interval has birth <= death")
    }
}

/// Translates an index interval of the 2n+1 position zigzag into values and
/// endpoint types: even positions sit on critical values with closed ends,
/// odd positions sit strictly between them with open ends.
fn typed_interval(iv: &IndexInterval, crit: &CriticalSequence) -> TypedInterval {
    let n = crit.len();
    assert!(iv.b > 1 && iv.d < 2 * n + 1, "interval touches an empty end space");
    let (birth, left) = if iv.b % 2 == 0 {
        (crit.critical(iv.b / 2).clone(), EndpointKind::Closed)
    } else {
        (crit.critical((iv.b - 1) / 2).clone(), EndpointKind::Open)
    };
    let (death, right) = if iv.d % 2 == 0 {
        (crit.critical(iv.d / 2).clone(), EndpointKind::Closed)
    } else {
        (crit.critical((iv.d - 1) / 2 + 1).clone(), EndpointKind::Open)
    };
    assert!(
        birth < death || (birth == death && left == EndpointKind::Closed && right == EndpointKind::Closed),
        "degenerate interval must be closed on both ends"
    );
    TypedInterval { birth, death, left, right }
}

/// A point of a slice complex: a graph vertex, or a point at an exact offset
/// on an edge.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord)]
enum NodeKey {
    Vertex(usize),
    EdgePoint(usize, Rational),
}

/// The preimage `f^{-1}([lo,hi])` as a combinatorial graph: nodes are
/// preimage boundary points, vertices, and breakpoints; arcs are the maximal
/// sub-edge segments between them. Components are precomputed.
struct SliceComplex {
    keys: Vec<NodeKey>,
    comp_of_node: Vec<usize>,
    component_count: usize,
    // per edge: (alpha, beta, node index at alpha), alpha < beta
    edge_arcs: Vec<Vec<(Rational, Rational, usize)>>,
}

/// Preimage of `[lo,hi]` under the linear piece `t0..t1` with values
/// `v0..v1`, as an offset interval.
fn piece_preimage(
    t0: &Rational,
    v0: &Rational,
    t1: &Rational,
    v1: &Rational,
    lo: &Rational,
    hi: &Rational,
) -> Option<(Rational, Rational)> {
    if v0 == v1 {
        if v0 >= lo && v0 <= hi {
            Some((t0.clone(), t1.clone()))
        } else {
            None
        }
    } else {
        let (vmin, vmax) = if v0 < v1 { (v0, v1) } else { (v1, v0) };
        let wlo = if lo > vmin { lo } else { vmin };
        let whi = if hi < vmax { hi } else { vmax };
        if wlo > whi {
            return None;
        }
        let t_at = |v: &Rational| t0 + (v - v0) * (t1 - t0) / (v1 - v0);
        let (ta, tb) = (t_at(wlo), t_at(whi));
        if ta <= tb {
            Some((ta, tb))
        } else {
            Some((tb, ta))
        }
    }
}

impl SliceComplex {
    fn build(
        graph: &MetricGraph,
        f: &PLGraphFunction,
        lo: &Rational,
        hi: &Rational,
    ) -> Result<SliceComplex> {
        let mut key_set: BTreeSet<NodeKey> = BTreeSet::new();
        for (v, value) in f.vertex_values().iter().enumerate() {
            if value >= lo && value <= hi {
                key_set.insert(NodeKey::Vertex(v));
            }
        }
        // (edge, alpha, beta, key_a, key_b) with alpha < beta
        let mut arcs: Vec<(usize, Rational, Rational, NodeKey, NodeKey)> = Vec::new();
        for (idx, e) in graph.edges().iter().enumerate() {
            let profile = &f.edge_profiles()[idx];
            let key_at = |t: &Rational| -> NodeKey {
                if t.is_zero() {
                    NodeKey::Vertex(e.u)
                } else if t == &e.length {
                    NodeKey::Vertex(e.v)
                } else {
                    NodeKey::EdgePoint(idx, t.clone())
                }
            };
            for w in profile.windows(2) {
                let (t0, v0) = &w[0];
                let (t1, v1) = &w[1];
                let Some((a, b)) = piece_preimage(t0, v0, t1, v1, lo, hi) else {
                    continue;
                };
                let ka = key_at(&a);
                let kb = key_at(&b);
                key_set.insert(ka.clone());
                key_set.insert(kb.clone());
                if a < b {
                    arcs.push((idx, a, b, ka, kb));
                }
            }
        }
        let keys: Vec<NodeKey> = key_set.into_iter().collect();
        let index: BTreeMap<&NodeKey, usize> =
            keys.iter().enumerate().map(|(i, k)| (k, i)).collect();
        let mut uf = UnionFind::new(keys.len());
        let mut edge_arcs: Vec<Vec<(Rational, Rational, usize)>> =
            vec![Vec::new(); graph.edges().len()];
        for (idx, a, b, ka, kb) in &arcs {
            let na = index[ka];
            let nb = index[kb];
            uf.union(na, nb);
            edge_arcs[*idx].push((a.clone(), b.clone(), na));
        }
        // stable component ids in node-key order
        let mut comp_ids: BTreeMap<usize, usize> = BTreeMap::new();
        let mut comp_of_node = Vec::with_capacity(keys.len());
        for i in 0..keys.len() {
            let root = uf.find(i);
            let next = comp_ids.len();
            comp_of_node.push(*comp_ids.entry(root).or_insert(next));
        }
        let component_count = comp_ids.len();
        // arcs - nodes + components > 0 means the preimage carries a cycle,
        // which a components-only zigzag cannot represent
        if arcs.len() + component_count > keys.len() {
            return Err(Error::UnsupportedInput(
                "function is constant on a cycle: a level set contains a loop".into(),
            ));
        }
        Ok(SliceComplex {
            keys,
            comp_of_node,
            component_count,
            edge_arcs,
        })
    }

    /// Component containing a point, or None if outside the preimage.
    fn component_of(&self, key: &NodeKey) -> Option<usize> {
        if let Ok(i) = self.keys.binary_search(key) {
            return Some(self.comp_of_node[i]);
        }
        if let NodeKey::EdgePoint(e, t) = key {
            for (a, b, na) in &self.edge_arcs[*e] {
                if t >= a && t <= b {
                    return Some(self.comp_of_node[*na]);
                }
            }
        }
        None
    }
}

/// Component map induced by the inclusion of `sub`'s window into `sup`'s.
fn inclusion_map(sub: &SliceComplex, sup: &SliceComplex) -> GF2Matrix {
    let mut m = GF2Matrix::zero(sup.component_count, sub.component_count);
    let mut assigned: Vec<Option<usize>> = vec![None; sub.component_count];
    for (i, key) in sub.keys.iter().enumerate() {
        let c = sub.comp_of_node[i];
        let d = sup
            .component_of(key)
            .expect("every point of the smaller window lies in the larger");
        match assigned[c] {
            None => {
                assigned[c] = Some(d);
                m.set(d, c, true);
            }
            Some(prev) => assert_eq!(prev, d, "component map must be well defined"),
        }
    }
    m
}

fn check_shapes(graph: &MetricGraph, f: &PLGraphFunction) -> Result<()> {
    if graph.edges().len() != f.edge_profiles().len()
        || graph.vertex_count() != f.vertex_values().len()
    {
        return Err(Error::MismatchedGraphs);
    }
    for (e, profile) in graph.edges().iter().zip(f.edge_profiles()) {
        if profile.last().map(|(t, _)| t) != Some(&e.length) {
            return Err(Error::MismatchedGraphs);
        }
    }
    Ok(())
}

/// Builds the 2n+1 space level-set zigzag of components: even 0-based
/// positions are level sets at regular values, odd positions are slices
/// between consecutive regular values; arrows are inclusion-induced.
pub fn build_lzz_sequence(
    graph: &MetricGraph,
    f: &PLGraphFunction,
) -> Result<(ZigzagModule, CriticalSequence)> {
    check_shapes(graph, f)?;
    let crit = CriticalSequence::from_function(f)?;
    let s = crit.regulars();
    let n = crit.len();
    let windows: Vec<(Rational, Rational)> = (0..2 * n + 1)
        .map(|i| {
            if i % 2 == 0 {
                (s[i / 2].clone(), s[i / 2].clone())
            } else {
                (s[i / 2].clone(), s[i / 2 + 1].clone())
            }
        })
        .collect();
    let complexes: Vec<SliceComplex> = windows
        .iter()
        .map(|(lo, hi)| SliceComplex::build(graph, f, lo, hi))
        .collect::<Result<_>>()?;
    assert_eq!(
        complexes[0].component_count, 0,
        "level set below the minimum must be empty"
    );
    assert_eq!(
        complexes[2 * n].component_count, 0,
        "level set above the maximum must be empty"
    );
    let dims: Vec<usize> = complexes.iter().map(|c| c.component_count).collect();
    let mut arrows = Vec::with_capacity(2 * n);
    for j in 0..2 * n {
        if j % 2 == 0 {
            arrows.push(Arrow {
                direction: ArrowDirection::Forward,
                matrix: inclusion_map(&complexes[j], &complexes[j + 1]),
            });
        } else {
            arrows.push(Arrow {
                direction: ArrowDirection::Backward,
                matrix: inclusion_map(&complexes[j + 1], &complexes[j]),
            });
        }
    }
    Ok((ZigzagModule::new(dims, arrows)?, crit))
}

/// Decomposes the level-set zigzag and converts every interval to values
/// and endpoint types, sorted.
pub fn lzz_intervals(graph: &MetricGraph, f: &PLGraphFunction) -> Result<Vec<TypedInterval>> {
    let (module, crit) = build_lzz_sequence(graph, f)?;
    let mut out: Vec<TypedInterval> = interval_decomposition(&module)
        .iter()
        .map(|iv| typed_interval(iv, &crit))
        .collect();
    out.sort();
    Ok(out)
}

/// The labeled level-set diagram: one point per decomposition interval,
/// dimension 0 for closed-left intervals, 1 for open-left.
pub fn lzz_diagram(graph: &MetricGraph, f: &PLGraphFunction) -> Result<PersistenceDiagram> {
    let points = lzz_intervals(graph, f)?
        .iter()
        .map(TypedInterval::to_point)
        .collect();
    Ok(PersistenceDiagram::new(points))
}

/// Level-set diagram with every point projected into the window.
pub fn restricted_lzz_diagram(
    graph: &MetricGraph,
    f: &PLGraphFunction,
    window: &RestrictionInterval,
) -> Result<PersistenceDiagram> {
    Ok(lzz_diagram(graph, f)?.restrict(window))
}
