//! Seeded input builders shared by the benchmark targets. Everything here is
//! deterministic so runs are comparable across machines and commits.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use zzlocal_core::rational::{rat, rat_int};
use zzlocal_core::{
    Arrow, ArrowDirection, Bifiltration, DiagramPoint, Edge, ExtReal, GF2Matrix, IndexInterval,
    MetricGraph, PersistenceDiagram, Rational, ZigzagModule,
};

fn rand_rational(rng: &mut impl Rng, lo: i64, hi: i64) -> Rational {
    let denom = 1i64 << rng.gen_range(0..3);
    rat(rng.gen_range(lo * denom..=hi * denom), denom)
}

/// A diagram with `points` label-0 points, coordinates in `[-10, 10]`.
pub fn diagram(seed: u64, points: usize) -> PersistenceDiagram {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let pts = (0..points)
        .map(|_| {
            let birth = rand_rational(&mut rng, -10, 6);
            let death = ExtReal::Finite(&birth + rand_rational(&mut rng, 1, 4));
            DiagramPoint::new(birth, death, 0).unwrap()
        })
        .collect();
    PersistenceDiagram::new(pts)
}

fn random_invertible(rng: &mut impl Rng, k: usize) -> GF2Matrix {
    loop {
        let m = GF2Matrix::from_fn(k, k, |_, _| rng.gen_bool(0.5));
        if m.inverse().is_some() {
            return m;
        }
    }
}

/// A planted interval direct sum over `positions` spaces, hidden behind
/// random basis changes. Per-position dimension stays at or below `cap`.
pub fn planted_module(seed: u64, positions: usize, cap: usize) -> ZigzagModule {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let directions: Vec<ArrowDirection> = (1..positions)
        .map(|_| {
            if rng.gen_bool(0.5) {
                ArrowDirection::Forward
            } else {
                ArrowDirection::Backward
            }
        })
        .collect();
    let mut dims = vec![0usize; positions + 1];
    let mut intervals = Vec::new();
    for _ in 0..positions * cap {
        let b = rng.gen_range(1..=positions);
        let d = rng.gen_range(b..=positions);
        if (b..=d).all(|p| dims[p] < cap) {
            for p in b..=d {
                dims[p] += 1;
            }
            intervals.push(IndexInterval::new(b, d).unwrap());
        }
    }
    let module = ZigzagModule::interval_sum(positions, &directions, &intervals).unwrap();
    let change: Vec<GF2Matrix> = module
        .dims()
        .iter()
        .map(|&k| random_invertible(&mut rng, k))
        .collect();
    let arrows = module
        .arrows()
        .iter()
        .enumerate()
        .map(|(t, a)| {
            let matrix = match a.direction {
                ArrowDirection::Forward => change[t + 1]
                    .mul(&a.matrix)
                    .mul(&change[t].inverse().unwrap()),
                ArrowDirection::Backward => change[t]
                    .mul(&a.matrix)
                    .mul(&change[t + 1].inverse().unwrap()),
            };
            Arrow {
                direction: a.direction,
                matrix,
            }
        })
        .collect();
    ZigzagModule::new(module.dims().to_vec(), arrows).unwrap()
}

/// Ring on eight vertices with two chords, a loop, and a parallel edge.
pub fn ring_graph() -> MetricGraph {
    let names = (0..8).map(|i| format!("v{i}")).collect();
    let len = [1, 2, 1, 3, 2, 1, 2, 3];
    let mut edges: Vec<Edge> = (0..8)
        .map(|i| Edge {
            u: i,
            v: (i + 1) % 8,
            length: rat_int(len[i]),
        })
        .collect();
    edges.push(Edge { u: 0, v: 4, length: rat_int(2) });
    edges.push(Edge { u: 1, v: 5, length: rat(5, 2) });
    edges.push(Edge { u: 2, v: 2, length: rat_int(2) });
    edges.push(Edge { u: 6, v: 7, length: rat_int(3) });
    MetricGraph::new(names, edges).unwrap()
}

/// A two-parameter filtration of the complete complex on `vertices` points,
/// with random monotone grades, up to the 2-skeleton.
pub fn bifiltration(seed: u64, vertices: usize) -> Bifiltration {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut grade = |floor: &[Rational]| -> [Rational; 2] {
        let base = floor
            .iter()
            .cloned()
            .fold(Rational::from_integer(0.into()), |a, b| a.max(b));
        [
            &base + rand_rational(&mut rng, 0, 2),
            &base + rand_rational(&mut rng, 0, 2),
        ]
    };
    let mut simplices: Vec<(Vec<usize>, [Rational; 2])> = Vec::new();
    for v in 0..vertices {
        simplices.push((vec![v], grade(&[])));
    }
    let lookup = |simplices: &[(Vec<usize>, [Rational; 2])], verts: &[usize]| {
        simplices
            .iter()
            .find(|(s, _)| s == verts)
            .map(|(_, g)| g.clone().into_iter().collect::<Vec<_>>())
            .unwrap()
    };
    for u in 0..vertices {
        for v in u + 1..vertices {
            let floor = [lookup(&simplices, &[u]), lookup(&simplices, &[v])].concat();
            simplices.push((vec![u, v], grade(&floor)));
        }
    }
    for u in 0..vertices {
        for v in u + 1..vertices {
            for w in v + 1..vertices {
                let floor = [
                    lookup(&simplices, &[u, v]),
                    lookup(&simplices, &[u, w]),
                    lookup(&simplices, &[v, w]),
                ]
                .concat();
                simplices.push((vec![u, v, w], grade(&floor)));
            }
        }
    }
    Bifiltration::new(simplices).unwrap()
}
