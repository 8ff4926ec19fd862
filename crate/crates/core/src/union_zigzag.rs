//! The union zigzag of a sequence of simplicial snapshots:
//! `X_1 -> X_1 u X_2 <- X_2 -> X_2 u X_3 <- ...` in homology dimension `p`,
//! with all maps induced by inclusion.

use crate::complex::SimplicialComplex;
use crate::error::{Error, Result};
use crate::gf2::GF2Matrix;
use crate::uf::UnionFind;
use crate::zigzag::{Arrow, ArrowDirection, ZigzagModule};
use std::collections::HashMap;

/// Connected components of a complex: a stable component index per vertex,
/// ordered by smallest member vertex.
struct Components {
    count: usize,
    of_vertex: HashMap<usize, usize>,
}

fn components(cx: &SimplicialComplex) -> Components {
    let verts = cx.vertices();
    let index: HashMap<usize, usize> = verts.iter().enumerate().map(|(i, &v)| (v, i)).collect();
    let mut uf = UnionFind::new(verts.len());
    for s in cx.p_simplices(1) {
        uf.union(index[&s[0]], index[&s[1]]);
    }
    let mut of_vertex = HashMap::new();
    let mut root_index: HashMap<usize, usize> = HashMap::new();
    for (i, &v) in verts.iter().enumerate() {
        let root = uf.find(i);
        let next = root_index.len();
        let c = *root_index.entry(root).or_insert(next);
        of_vertex.insert(v, c);
    }
    Components {
        count: root_index.len(),
        of_vertex,
    }
}

/// The inclusion-induced map on `H_0`: each component of `sub` lands in the
/// component of `sup` containing any of its vertices.
fn h0_map(sub: &SimplicialComplex, sup: &SimplicialComplex) -> GF2Matrix {
    let csub = components(sub);
    let csup = components(sup);
    let mut m = GF2Matrix::zero(csup.count, csub.count);
    for (v, &c) in &csub.of_vertex {
        m.set(csup.of_vertex[v], c, true);
    }
    m
}

/// The inclusion-induced map on `H_p`, `p >= 1`: each representative cycle of
/// `sub` is re-indexed into `sup` and expressed in `sup`'s homology basis
/// modulo boundaries.
fn hp_map(sub: &SimplicialComplex, sup: &SimplicialComplex, p: usize) -> GF2Matrix {
    let sub_basis = sub.homology_basis(p);
    let sup_basis = sup.homology_basis(p);
    let sup_index = sup.p_simplex_index(p);
    let n_sup = sup.p_simplices(p).len();
    // columns: sup homology representatives, then (p+1)-boundaries of sup
    let bnd = sup.boundary_matrix(p + 1);
    let mut system = GF2Matrix::zero(n_sup, sup_basis.rows() + bnd.cols());
    for r in 0..sup_basis.rows() {
        for j in 0..n_sup {
            if sup_basis.get(r, j) {
                system.set(j, r, true);
            }
        }
    }
    for c in 0..bnd.cols() {
        for j in 0..n_sup {
            if bnd.get(j, c) {
                system.set(j, sup_basis.rows() + c, true);
            }
        }
    }
    // right-hand sides: sub representatives as chains of sup
    let sub_simplices = sub.p_simplices(p);
    let mut rhs = GF2Matrix::zero(n_sup, sub_basis.rows());
    for r in 0..sub_basis.rows() {
        for (j, s) in sub_simplices.iter().enumerate() {
            if sub_basis.get(r, j) {
                rhs.set(sup_index[*s], r, true);
            }
        }
    }
    let solution = system
        .solve(&rhs)
        .expect("a cycle of a subcomplex is a cycle of the complex");
    // homology coordinates are the first block of the solution
    GF2Matrix::from_fn(sup_basis.rows(), sub_basis.rows(), |i, j| {
        solution.get(i, j)
    })
}

fn induced_map(sub: &SimplicialComplex, sup: &SimplicialComplex, p: usize) -> GF2Matrix {
    if p == 0 {
        h0_map(sub, sup)
    } else {
        hp_map(sub, sup, p)
    }
}

/// Builds the union zigzag module of the snapshots in homology dimension
/// `p`: positions alternate snapshot, pairwise union, snapshot, ... with
/// forward arrows into each union from the left and backward arrows from the
/// right.
pub fn build_union_zigzag(snapshots: &[SimplicialComplex], p: usize) -> Result<ZigzagModule> {
    if snapshots.is_empty() {
        return Err(Error::EmptyInput("no snapshots".into()));
    }
    let mut spaces: Vec<SimplicialComplex> = Vec::with_capacity(2 * snapshots.len() - 1);
    for (k, snap) in snapshots.iter().enumerate() {
        if k > 0 {
            spaces.push(snapshots[k - 1].union(snap));
        }
        spaces.push(snap.clone());
    }
    // spaces is now S_1, U_1, S_2, U_2, ..., S_m
    let dims: Vec<usize> = spaces
        .iter()
        .map(|cx| {
            if p == 0 {
                components(cx).count
            } else {
                cx.homology_basis(p).rows()
            }
        })
        .collect();
    let mut arrows = Vec::with_capacity(spaces.len().saturating_sub(1));
    for t in 0..spaces.len() - 1 {
        // even slots: snapshot -> union; odd slots: union <- snapshot
        let arrow = if t % 2 == 0 {
            Arrow {
                direction: ArrowDirection::Forward,
                matrix: induced_map(&spaces[t], &spaces[t + 1], p),
            }
        } else {
            Arrow {
                direction: ArrowDirection::Backward,
                matrix: induced_map(&spaces[t + 1], &spaces[t], p),
            }
        };
        arrows.push(arrow);
    }
    ZigzagModule::new(dims, arrows)
}
