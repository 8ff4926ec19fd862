//! Simplicial complexes over GF(2): boundary matrices, Betti numbers,
//! homology bases, and standard persistence of a one-critical filtration by
//! boundary-matrix column reduction.

use crate::diagram::{DiagramPoint, PersistenceDiagram};
use crate::error::{Error, Result};
use crate::gf2::{Echelon, GF2Matrix};
use crate::rational::{ExtReal, Rational};
use std::collections::{BTreeMap, BTreeSet, HashMap};

/// An abstract simplicial complex on integer vertices. Simplices are stored
/// with sorted vertex lists, closed under faces, in canonical
/// (dimension, lexicographic) order.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SimplicialComplex {
    simplices: Vec<Vec<usize>>,
}

pub(crate) fn normalize_simplex(verts: &[usize]) -> Result<Vec<usize>> {
    let mut v = verts.to_vec();
    v.sort_unstable();
    let before = v.len();
    v.dedup();
    if v.len() != before {
        return Err(Error::InvalidInput(format!(
            "simplex {verts:?} repeats a vertex"
        )));
    }
    if v.is_empty() {
        return Err(Error::InvalidInput("empty simplex".into()));
    }
    Ok(v)
}

pub(crate) fn facets(simplex: &[usize]) -> Vec<Vec<usize>> {
    (0..simplex.len())
        .map(|skip| {
            simplex
                .iter()
                .enumerate()
                .filter(|(k, _)| *k != skip)
                .map(|(_, &v)| v)
                .collect()
        })
        .collect()
}

impl SimplicialComplex {
    /// Builds the downward closure of the given simplices.
    pub fn new(simplices: Vec<Vec<usize>>) -> Result<SimplicialComplex> {
        let mut set: BTreeSet<Vec<usize>> = BTreeSet::new();
        let mut queue: Vec<Vec<usize>> = simplices
            .iter()
            .map(|s| normalize_simplex(s))
            .collect::<Result<_>>()?;
        while let Some(s) = queue.pop() {
            if s.len() > 1 && set.insert(s.clone()) {
                queue.extend(facets(&s));
            } else if s.len() == 1 {
                set.insert(s);
            }
        }
        let mut simplices: Vec<Vec<usize>> = set.into_iter().collect();
        simplices.sort_by(|a, b| (a.len(), a).cmp(&(b.len(), b)));
        Ok(SimplicialComplex { simplices })
    }

    pub fn simplices(&self) -> &[Vec<usize>] {
        &self.simplices
    }

    /// Simplices of dimension `p` (so with `p + 1` vertices), in canonical
    /// order.
    pub fn p_simplices(&self, p: usize) -> Vec<&Vec<usize>> {
        self.simplices.iter().filter(|s| s.len() == p + 1).collect()
    }

    pub fn vertices(&self) -> Vec<usize> {
        self.simplices
            .iter()
            .filter(|s| s.len() == 1)
            .map(|s| s[0])
            .collect()
    }

    /// Union of two complexes sharing a vertex universe.
    pub fn union(&self, other: &SimplicialComplex) -> SimplicialComplex {
        let mut all = self.simplices.clone();
        all.extend(other.simplices.iter().cloned());
        all.sort_by(|a, b| (a.len(), a).cmp(&(b.len(), b)));
        all.dedup();
        SimplicialComplex { simplices: all }
    }

    /// The GF(2) boundary map from `p`-chains to `(p-1)`-chains, with rows
    /// and columns in canonical simplex order. `p = 0` yields a zero-row
    /// matrix (unreduced homology).
    pub fn boundary_matrix(&self, p: usize) -> GF2Matrix {
        let cols = self.p_simplices(p);
        if p == 0 {
            return GF2Matrix::zero(0, cols.len());
        }
        let rows = self.p_simplices(p - 1);
        let row_index: HashMap<&Vec<usize>, usize> =
            rows.iter().enumerate().map(|(i, s)| (*s, i)).collect();
        let mut m = GF2Matrix::zero(rows.len(), cols.len());
        for (j, s) in cols.iter().enumerate() {
            for facet in facets(s) {
                m.set(row_index[&facet], j, true);
            }
        }
        m
    }

    /// The `p`-th GF(2) Betti number: `dim ker(boundary_p) - rank(boundary_{p+1})`.
    pub fn betti(&self, p: usize) -> usize {
        let cycles = self.p_simplices(p).len() - self.boundary_matrix(p).rank();
        cycles - self.boundary_matrix(p + 1).rank()
    }

    /// Representative `p`-cycles whose classes form a basis of `H_p`, one per
    /// row, coordinates over the canonical `p`-simplex order.
    pub fn homology_basis(&self, p: usize) -> GF2Matrix {
        let n = self.p_simplices(p).len();
        let cycles = self.boundary_matrix(p).kernel_basis();
        let boundaries = self.boundary_matrix(p + 1);
        let mut echelon = Echelon::new(n);
        for j in 0..boundaries.cols() {
            echelon.insert(boundaries.column_words(j));
        }
        let mut reps = Vec::new();
        for i in 0..cycles.rows() {
            if echelon.insert(cycles.row_words(i)) {
                reps.push(i);
            }
        }
        let mut basis = GF2Matrix::zero(reps.len(), n);
        for (r, &i) in reps.iter().enumerate() {
            for j in 0..n {
                if cycles.get(i, j) {
                    basis.set(r, j, true);
                }
            }
        }
        basis
    }

    /// Index of each `p`-simplex in canonical order, for chain re-indexing
    /// under inclusions.
    pub fn p_simplex_index(&self, p: usize) -> HashMap<Vec<usize>, usize> {
        self.p_simplices(p)
            .into_iter()
            .enumerate()
            .map(|(i, s)| (s.clone(), i))
            .collect()
    }
}

/// A one-critical filtered complex: every simplex enters exactly once, at a
/// rational grade, and no later than any of its cofaces.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FilteredComplex {
    // sorted by (grade, dimension, vertices): a valid filtration order
    simplices: Vec<(Vec<usize>, Rational)>,
}

impl FilteredComplex {
    pub fn new(simplices: Vec<(Vec<usize>, Rational)>) -> Result<FilteredComplex> {
        let mut normalized: Vec<(Vec<usize>, Rational)> = simplices
            .into_iter()
            .map(|(s, g)| Ok((normalize_simplex(&s)?, g)))
            .collect::<Result<_>>()?;
        normalized.sort_by(|(sa, ga), (sb, gb)| (ga, sa.len(), sa).cmp(&(gb, sb.len(), sb)));
        let grades: BTreeMap<&Vec<usize>, &Rational> =
            normalized.iter().map(|(s, g)| (s, g)).collect();
        if grades.len() != normalized.len() {
            return Err(Error::InvalidInput(
                "a simplex enters the filtration more than once".into(),
            ));
        }
        for (s, g) in &normalized {
            if s.len() == 1 {
                continue;
            }
            for facet in facets(s) {
                match grades.get(&facet) {
                    Some(fg) if *fg <= g => {}
                    Some(_) => {
                        return Err(Error::InvalidInput(format!(
                            "face {facet:?} enters after its coface {s:?}"
                        )))
                    }
                    None => {
                        return Err(Error::InvalidInput(format!(
                            "face {facet:?} of {s:?} is missing"
                        )))
                    }
                }
            }
        }
        Ok(FilteredComplex {
            simplices: normalized,
        })
    }

    pub fn simplices(&self) -> &[(Vec<usize>, Rational)] {
        &self.simplices
    }

    /// The subcomplex of simplices with grade at most `t`.
    pub fn sublevel(&self, t: &Rational) -> SimplicialComplex {
        SimplicialComplex::new(
            self.simplices
                .iter()
                .filter(|(_, g)| g <= t)
                .map(|(s, _)| s.clone())
                .collect(),
        )
        .expect("sublevel of a valid filtration is a valid complex")
    }

    /// All distinct grades, ascending.
    pub fn grades(&self) -> Vec<Rational> {
        let mut g: Vec<Rational> = self.simplices.iter().map(|(_, g)| g.clone()).collect();
        g.sort();
        g.dedup();
        g
    }
}

/// Persistence diagram of the sublevel filtration in homology dimension `p`,
/// by GF(2) boundary-matrix column reduction. Zero-persistence pairs are
/// dropped; unpaired classes die at infinity.
pub fn standard_persistence(fc: &FilteredComplex, p: usize) -> PersistenceDiagram {
    let simplices = fc.simplices();
    let index: HashMap<&Vec<usize>, usize> = simplices
        .iter()
        .enumerate()
        .map(|(i, (s, _))| (s, i))
        .collect();
    // reduced columns, kept for later eliminations; low -> owning column
    let mut columns: Vec<Vec<usize>> = Vec::with_capacity(simplices.len());
    let mut pivot_owner: HashMap<usize, usize> = HashMap::new();
    for (j, (s, _)) in simplices.iter().enumerate() {
        let mut col: Vec<usize> = if s.len() == 1 {
            Vec::new()
        } else {
            let mut f: Vec<usize> = facets(s).iter().map(|f| index[f]).collect();
            f.sort_unstable();
            f
        };
        while let Some(&low) = col.last() {
            match pivot_owner.get(&low) {
                Some(&owner) => col = xor_sorted(&col, &columns[owner]),
                None => {
                    pivot_owner.insert(low, j);
                    break;
                }
            }
        }
        columns.push(col);
    }
    let mut points = Vec::new();
    for (&low, &j) in &pivot_owner {
        let (birth_simplex, birth) = &simplices[low];
        let (_, death) = &simplices[j];
        if birth_simplex.len() == p + 1 && birth != death {
            points.push(
                DiagramPoint::new(birth.clone(), ExtReal::Finite(death.clone()), p)
                    .expect("filtration grades are ordered"),
            );
        }
    }
    for (j, (s, g)) in simplices.iter().enumerate() {
        let positive = columns[j].is_empty();
        if positive && s.len() == p + 1 && !pivot_owner.contains_key(&j) {
            points.push(DiagramPoint::new(g.clone(), ExtReal::Infinity, p).unwrap());
        }
    }
    PersistenceDiagram::new(points)
}

fn xor_sorted(a: &[usize], b: &[usize]) -> Vec<usize> {
    let mut out = Vec::with_capacity(a.len() + b.len());
    let (mut i, mut j) = (0, 0);
    while i < a.len() && j < b.len() {
        match a[i].cmp(&b[j]) {
            std::cmp::Ordering::Less => {
                out.push(a[i]);
                i += 1;
            }
            std::cmp::Ordering::Greater => {
                out.push(b[j]);
                j += 1;
            }
            std::cmp::Ordering::Equal => {
                i += 1;
                j += 1;
            }
        }
    }
    out.extend_from_slice(&a[i..]);
    out.extend_from_slice(&b[j..]);
    out
}
