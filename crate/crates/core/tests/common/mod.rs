//! Shared generators and the exhaustive matching oracle for the acceptance
//! suite. Everything is seeded; nothing here depends on wall-clock state.

use rand::Rng;
use zzlocal_core::diagram::{diagonal_gap, linf_distance};
use zzlocal_core::rational::{rat, rat_int};
use zzlocal_core::{
    Bifiltration, DiagramPoint, Edge, ExtReal, GraphPoint, MetricGraph, PersistenceDiagram,
    Rational,
};

/// Minimum over every diagonal-augmented matching of the largest displaced
/// pair, by direct recursion. Exponential; only for tiny diagrams.
pub fn exhaustive_bottleneck(d1: &PersistenceDiagram, d2: &PersistenceDiagram) -> ExtReal {
    let mut labels = d1.dims();
    labels.extend(d2.dims());
    labels.sort_unstable();
    labels.dedup();
    let mut worst = ExtReal::zero();
    for dim in labels {
        let p1 = d1.points_in_dim(dim);
        let p2 = d2.points_in_dim(dim);
        let mut used = vec![false; p2.len()];
        worst = worst.max(best_matching(&p1, &p2, 0, &mut used));
    }
    worst
}

fn best_matching(
    p1: &[&DiagramPoint],
    p2: &[&DiagramPoint],
    i: usize,
    used: &mut [bool],
) -> ExtReal {
    if i == p1.len() {
        let mut cost = ExtReal::zero();
        for (j, q) in p2.iter().enumerate() {
            if !used[j] {
                cost = cost.max(diagonal_gap(q));
            }
        }
        return cost;
    }
    // send p1[i] to the diagonal, or to any unused partner
    let mut best = best_matching(p1, p2, i + 1, used).max(diagonal_gap(p1[i]));
    for j in 0..p2.len() {
        if used[j] {
            continue;
        }
        used[j] = true;
        let cost = best_matching(p1, p2, i + 1, used).max(linf_distance(p1[i], p2[j]));
        used[j] = false;
        best = best.min(cost);
    }
    best
}

/// A rational in `[lo, hi]` with denominator 1, 2, or 4.
pub fn rand_rational(rng: &mut impl Rng, lo: i64, hi: i64) -> Rational {
    let denom = 1i64 << rng.gen_range(0..3);
    rat(rng.gen_range(lo * denom..=hi * denom), denom)
}

/// Diagram with up to `n0` label-0 points and up to `n1` label-1 points,
/// coordinates in `[-10, 10]`, occasional infinite deaths.
pub fn random_diagram(rng: &mut impl Rng, n0: usize, n1: usize) -> PersistenceDiagram {
    let mut points = Vec::new();
    for dim in 0..2usize {
        let count = rng.gen_range(0..=if dim == 0 { n0 } else { n1 });
        for _ in 0..count {
            let birth = rand_rational(rng, -10, 6);
            let death = if rng.gen_ratio(1, 8) {
                ExtReal::Infinity
            } else {
                ExtReal::Finite(&birth + rand_rational(rng, 0, 4))
            };
            points.push(DiagramPoint::new(birth, death, dim).unwrap());
        }
    }
    PersistenceDiagram::new(points)
}

fn rand_length(rng: &mut impl Rng) -> Rational {
    match rng.gen_range(0..6) {
        0 => rat(3, 2),
        1 => rat(5, 2),
        k => rat_int(k - 1),
    }
}

/// Connected graph: a random spanning tree plus a few extra edges, which may
/// be loops or parallels. Always has at least one edge.
pub fn random_graph(rng: &mut impl Rng, max_v: usize, max_e: usize) -> MetricGraph {
    let nv = rng.gen_range(1..=max_v);
    let names = (0..nv).map(|i| format!("v{i}")).collect();
    let mut edges: Vec<Edge> = (1..nv)
        .map(|v| Edge {
            u: rng.gen_range(0..v),
            v,
            length: rand_length(rng),
        })
        .collect();
    let extra = rng.gen_range(0..=max_e.saturating_sub(edges.len()).min(5));
    for _ in 0..extra.max(usize::from(edges.is_empty())) {
        edges.push(Edge {
            u: rng.gen_range(0..nv),
            v: rng.gen_range(0..nv),
            length: rand_length(rng),
        });
    }
    MetricGraph::new(names, edges).unwrap()
}

/// A vertex or a quarter-point of an edge.
pub fn random_point(rng: &mut impl Rng, g: &MetricGraph) -> GraphPoint {
    if rng.gen_bool(0.5) {
        GraphPoint::Vertex(rng.gen_range(0..g.vertex_count()))
    } else {
        let e = rng.gen_range(0..g.edges().len());
        let offset = &g.edges()[e].length * rat(rng.gen_range(1..=3), 4);
        g.point_on_edge(e, offset).unwrap()
    }
}

fn grade_in(rng: &mut impl Rng, lo: i64, hi: i64) -> Rational {
    rat(rng.gen_range(lo * 4..=hi * 4), 4)
}

/// One-critical bifiltration on up to five vertices with random monotone
/// grades; at most 15 simplices.
pub fn random_bifiltration(rng: &mut impl Rng) -> Bifiltration {
    let nv = rng.gen_range(2..=5usize);
    let mut simplices: Vec<(Vec<usize>, [Rational; 2])> = (0..nv)
        .map(|v| (vec![v], [grade_in(rng, 0, 2), grade_in(rng, 0, 2)]))
        .collect();
    let grade_of = |simplices: &[(Vec<usize>, [Rational; 2])], verts: &[usize]| {
        simplices
            .iter()
            .find(|(s, _)| s == verts)
            .map(|(_, g)| g.clone())
    };
    let mut pairs: Vec<(usize, usize)> = (0..nv)
        .flat_map(|u| (u + 1..nv).map(move |v| (u, v)))
        .collect();
    for k in (1..pairs.len()).rev() {
        pairs.swap(k, rng.gen_range(0..=k));
    }
    let ne = rng.gen_range(0..=pairs.len().min(15 - nv));
    for &(u, v) in &pairs[..ne] {
        let gu = grade_of(&simplices, &[u]).unwrap();
        let gv = grade_of(&simplices, &[v]).unwrap();
        let g = [
            gu[0].clone().max(gv[0].clone()) + grade_in(rng, 0, 1),
            gu[1].clone().max(gv[1].clone()) + grade_in(rng, 0, 1),
        ];
        simplices.push((vec![u, v], g));
    }
    // fill in a few triangles whose edges are all present
    let mut room = 15usize.saturating_sub(simplices.len());
    for a in 0..nv {
        for b in a + 1..nv {
            for c in b + 1..nv {
                if room == 0 || !rng.gen_bool(0.4) {
                    continue;
                }
                let faces = [
                    grade_of(&simplices, &[a, b]),
                    grade_of(&simplices, &[a, c]),
                    grade_of(&simplices, &[b, c]),
                ];
                if let [Some(ab), Some(ac), Some(bc)] = faces {
                    let g = [
                        ab[0].clone().max(ac[0].clone()).max(bc[0].clone())
                            + grade_in(rng, 0, 1),
                        ab[1].clone().max(ac[1].clone()).max(bc[1].clone())
                            + grade_in(rng, 0, 1),
                    ];
                    simplices.push((vec![a, b, c], g));
                    room -= 1;
                }
            }
        }
    }
    Bifiltration::new(simplices).unwrap()
}
