//! Acceptance gate: one test per release criterion. Each test prints a
//! single pass line on success (visible with `--nocapture`); a failed
//! criterion fails its test. All randomness is seeded, so the suite is
//! reproducible run to run.

mod common;

use std::sync::OnceLock;
use std::time::{Duration, Instant};

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use zzlocal_core::diagram::linf_distance;
use zzlocal_core::multiparam::diagram_along_line;
use zzlocal_core::rational::{rat, rat_int};
use zzlocal_core::{
    bottleneck_distance, interval_decomposition, line_box_clip, lzz_diagram, matching_distance,
    persistence_distortion, restricted_matching_distance, Arrow, ArrowDirection, DiagramCloud,
    DiagramPoint, Edge, ExtReal, GF2Matrix, GraphPoint, IndexInterval, LineSample, MetricGraph,
    PersistenceDiagram, Rational, RestrictionInterval, ZigzagModule,
};

fn finite(r: Rational) -> ExtReal {
    ExtReal::Finite(r)
}

fn window(lo: i64, hi: i64) -> RestrictionInterval {
    RestrictionInterval::new(rat_int(lo), rat_int(hi)).unwrap()
}

fn done(name: &str, started: Instant, budget: Duration) {
    let elapsed = started.elapsed();
    assert!(
        elapsed < budget,
        "{name} took {elapsed:?}, budget {budget:?}"
    );
    println!("acceptance: {name}: pass ({elapsed:?})");
}

#[test]
fn criterion_01_projection_is_contractive_across_all_cases() {
    let started = Instant::now();
    let win = window(0, 5);
    // one point per projection case: interior, death beyond, birth before,
    // spanning, entirely right of the window, entirely left of it
    let grid: Vec<(DiagramPoint, DiagramPoint)> = [
        ((1, 3), (1, 3)),
        ((2, 7), (2, 5)),
        ((-2, 3), (0, 3)),
        ((-1, 8), (0, 5)),
        ((6, 8), (6, 6)),
        ((-4, -1), (-1, -1)),
    ]
    .iter()
    .map(|&((b, d), (pb, pd))| {
        (
            DiagramPoint::finite(rat_int(b), rat_int(d), 0).unwrap(),
            DiagramPoint::finite(rat_int(pb), rat_int(pd), 0).unwrap(),
        )
    })
    .collect();

    let mut pairings = 0;
    for (i, (p, image_p)) in grid.iter().enumerate() {
        assert_eq!(&win.project(p), image_p, "wrong image for point {i}");
        for (q, image_q) in grid.iter().skip(i) {
            assert!(
                linf_distance(image_p, image_q) <= linf_distance(p, q),
                "projection expanded the pair ({p:?}, {q:?})"
            );
            pairings += 1;
        }
    }
    assert_eq!(pairings, 21);
    done(
        "01 window projection contracts every point pairing",
        started,
        Duration::from_secs(1),
    );
}

#[test]
fn criterion_02_restriction_never_increases_bottleneck() {
    let started = Instant::now();
    let mut rng = ChaCha8Rng::seed_from_u64(2);
    for case in 0..500 {
        let d1 = common::random_diagram(&mut rng, 10, 3);
        let d2 = common::random_diagram(&mut rng, 10, 3);
        let full = bottleneck_distance(&d1, &d2);
        for _ in 0..10 {
            let lo = common::rand_rational(&mut rng, -12, 10);
            let hi = &lo + common::rand_rational(&mut rng, 0, 10);
            let win = RestrictionInterval::new(lo, hi).unwrap();
            let restricted = bottleneck_distance(&d1.restrict(&win), &d2.restrict(&win));
            assert!(
                restricted <= full,
                "case {case}: restriction to {win:?} grew the distance"
            );
        }
    }
    done(
        "02 restricted bottleneck bounded by full bottleneck on 500x10 cases",
        started,
        Duration::from_secs(30),
    );
}

#[test]
fn criterion_03_bottleneck_matches_exhaustive_matching() {
    let started = Instant::now();
    let mut rng = ChaCha8Rng::seed_from_u64(3);
    for case in 0..200 {
        let d1 = common::random_diagram(&mut rng, 4, 1);
        let d2 = common::random_diagram(&mut rng, 4, 1);
        assert_eq!(
            bottleneck_distance(&d1, &d2),
            common::exhaustive_bottleneck(&d1, &d2),
            "case {case} disagrees with the exhaustive oracle"
        );
    }
    done(
        "03 bottleneck equals the exhaustive oracle on 200 cases",
        started,
        Duration::from_secs(30),
    );
}

fn random_invertible(rng: &mut impl Rng, k: usize) -> GF2Matrix {
    loop {
        let m = GF2Matrix::from_fn(k, k, |_, _| rng.gen_bool(0.5));
        if m.inverse().is_some() {
            return m;
        }
    }
}

/// Conjugates every arrow by random invertible changes of basis, preserving
/// the isomorphism class while hiding the planted summands.
fn scramble(rng: &mut impl Rng, module: &ZigzagModule) -> ZigzagModule {
    let change: Vec<GF2Matrix> = module
        .dims()
        .iter()
        .map(|&k| random_invertible(rng, k))
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

#[test]
fn criterion_04_planted_interval_sums_are_recovered() {
    let started = Instant::now();
    let mut rng = ChaCha8Rng::seed_from_u64(4);
    for case in 0..200 {
        let n = rng.gen_range(1..=8);
        let directions: Vec<ArrowDirection> = (1..n)
            .map(|_| {
                if rng.gen_bool(0.5) {
                    ArrowDirection::Forward
                } else {
                    ArrowDirection::Backward
                }
            })
            .collect();
        let mut planted: Vec<IndexInterval> = Vec::new();
        let mut dims = vec![0usize; n + 1];
        for _ in 0..rng.gen_range(0..=10) {
            let b = rng.gen_range(1..=n);
            let d = rng.gen_range(b..=n);
            if (b..=d).all(|p| dims[p] < 5) {
                for p in b..=d {
                    dims[p] += 1;
                }
                planted.push(IndexInterval::new(b, d).unwrap());
            }
        }
        let module = ZigzagModule::interval_sum(n, &directions, &planted).unwrap();
        let hidden = scramble(&mut rng, &module);
        for p in 1..=n {
            assert_eq!(hidden.dim_at(p), dims[p], "case {case}: scramble changed a dimension");
        }
        let mut recovered = interval_decomposition(&hidden);
        recovered.sort();
        planted.sort();
        assert_eq!(recovered, planted, "case {case}: wrong summands");
    }
    done(
        "04 decomposition recovers 200 planted interval sums",
        started,
        Duration::from_secs(60),
    );
}

#[test]
fn criterion_05_worked_level_set_diagrams() {
    let started = Instant::now();

    let loop10 = MetricGraph::new(
        vec!["v".into()],
        vec![Edge {
            u: 0,
            v: 0,
            length: rat_int(10),
        }],
    )
    .unwrap();
    let f = loop10
        .distance_function(&GraphPoint::Vertex(0))
        .unwrap();
    let expected = PersistenceDiagram::new(vec![
        DiagramPoint::finite(rat_int(0), rat_int(5), 0).unwrap(),
        DiagramPoint::finite(rat_int(0), rat_int(5), 1).unwrap(),
    ]);
    assert_eq!(lzz_diagram(&loop10, &f).unwrap(), expected);

    let path3 = MetricGraph::new(
        vec!["a".into(), "b".into()],
        vec![Edge {
            u: 0,
            v: 1,
            length: rat_int(3),
        }],
    )
    .unwrap();
    let mid = path3.point_on_edge(0, rat(3, 2)).unwrap();
    let f = path3.distance_function(&mid).unwrap();
    let expected = PersistenceDiagram::new(vec![
        DiagramPoint::finite(rat_int(0), rat(3, 2), 0).unwrap(),
        DiagramPoint::finite(rat_int(0), rat(3, 2), 1).unwrap(),
    ]);
    assert_eq!(lzz_diagram(&path3, &f).unwrap(), expected);

    let f = path3
        .distance_function(&GraphPoint::Vertex(0))
        .unwrap();
    let expected = PersistenceDiagram::new(vec![DiagramPoint::finite(
        rat_int(0),
        rat_int(3),
        0,
    )
    .unwrap()]);
    assert_eq!(lzz_diagram(&path3, &f).unwrap(), expected);

    done(
        "05 frozen level-set diagrams for the loop and path examples",
        started,
        Duration::from_secs(10),
    );
}

struct GraphCase {
    dist_uv: Rational,
    sup_diff: Rational,
    dg_u: PersistenceDiagram,
    dg_v: PersistenceDiagram,
}

/// Ring on eight vertices with chords, a loop, and a parallel edge: the
/// largest shape the corpus admits.
fn dense_graph() -> MetricGraph {
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

static GRAPH_CORPUS: OnceLock<Vec<GraphCase>> = OnceLock::new();

fn graph_corpus() -> &'static [GraphCase] {
    GRAPH_CORPUS.get_or_init(|| {
        let mut rng = ChaCha8Rng::seed_from_u64(6);
        (0..100)
            .map(|i| {
                let g = if i == 0 {
                    dense_graph()
                } else {
                    common::random_graph(&mut rng, 8, 12)
                };
                let u = common::random_point(&mut rng, &g);
                let v = common::random_point(&mut rng, &g);
                let fu = g.distance_function(&u).unwrap();
                let fv = g.distance_function(&v).unwrap();
                GraphCase {
                    dist_uv: g.geodesic_distance(&u, &v).unwrap(),
                    sup_diff: fu.sup_norm_difference(&fv).unwrap(),
                    dg_u: lzz_diagram(&g, &fu).unwrap(),
                    dg_v: lzz_diagram(&g, &fv).unwrap(),
                }
            })
            .collect()
    })
}

#[test]
fn criterion_06_base_point_change_bounds_local_diagrams() {
    let started = Instant::now();
    for (i, case) in graph_corpus().iter().enumerate() {
        let bound = finite(case.dist_uv.clone());
        for r in [1, 2, 5] {
            let win = window(0, r);
            let d = bottleneck_distance(&case.dg_u.restrict(&win), &case.dg_v.restrict(&win));
            assert!(d <= bound, "case {i}, radius {r}: moved base point too far");
        }
        let d = bottleneck_distance(&case.dg_u, &case.dg_v);
        assert!(d <= bound, "case {i}, unrestricted: moved base point too far");
    }

    // tight case: path of length 3, endpoint against midpoint
    let path3 = MetricGraph::new(
        vec!["a".into(), "b".into()],
        vec![Edge {
            u: 0,
            v: 1,
            length: rat_int(3),
        }],
    )
    .unwrap();
    let u = GraphPoint::Vertex(0);
    let v = path3.point_on_edge(0, rat(3, 2)).unwrap();
    let du = lzz_diagram(&path3, &path3.distance_function(&u).unwrap()).unwrap();
    let dv = lzz_diagram(&path3, &path3.distance_function(&v).unwrap()).unwrap();
    assert_eq!(path3.geodesic_distance(&u, &v).unwrap(), rat(3, 2));
    assert_eq!(bottleneck_distance(&du, &dv), finite(rat(3, 2)));

    done(
        "06 base-point move bounds diagram distance at four radii, tight on the path",
        started,
        Duration::from_secs(120),
    );
}

#[test]
fn criterion_07_diagram_distance_bounded_by_sup_norm() {
    let started = Instant::now();
    for (i, case) in graph_corpus().iter().enumerate() {
        let d = bottleneck_distance(&case.dg_u, &case.dg_v);
        assert!(
            d <= finite(case.sup_diff.clone()),
            "case {i}: diagrams moved more than the functions"
        );
    }
    done(
        "07 diagram distance within sup-norm on the 100-graph corpus",
        started,
        Duration::from_secs(120),
    );
}

#[test]
fn criterion_08_distortion_nondecreasing_in_radius() {
    let started = Instant::now();
    let mut rng = ChaCha8Rng::seed_from_u64(8);
    let radii = [
        rat(1, 2),
        rat_int(1),
        rat(3, 2),
        rat_int(2),
        rat_int(3),
        rat_int(4),
        rat_int(6),
        rat_int(10),
    ];
    for pair in 0..20 {
        let g1 = common::random_graph(&mut rng, 4, 5);
        let g2 = common::random_graph(&mut rng, 4, 5);
        let c1 = DiagramCloud::from_samples(&g1, 0, None).unwrap();
        let c2 = DiagramCloud::from_samples(&g2, 0, None).unwrap();
        let at_radius = |r: &Rational| {
            let win = RestrictionInterval::new(rat_int(0), r.clone()).unwrap();
            let clip = |c: &DiagramCloud| {
                DiagramCloud::new(
                    c.entries()
                        .iter()
                        .map(|(p, d)| (p.clone(), d.restrict(&win)))
                        .collect(),
                )
                .unwrap()
            };
            zzlocal_core::hausdorff_bottleneck(&clip(&c1), &clip(&c2))
        };
        let values: Vec<ExtReal> = radii.iter().map(at_radius).collect();
        for (k, pair_vals) in values.windows(2).enumerate() {
            assert!(
                pair_vals[0] <= pair_vals[1],
                "pair {pair}: distortion dropped between radii {k} and {}",
                k + 1
            );
        }
        let full = zzlocal_core::hausdorff_bottleneck(&c1, &c2);
        assert!(*values.last().unwrap() <= full, "pair {pair}: exceeded global value");

        if pair == 0 {
            // the shortcut above must agree with the public entry point
            let via_api = persistence_distortion(&g1, &g2, 0, Some(&rat_int(2)))
                .unwrap()
                .distance;
            assert_eq!(values[3], via_api);
        }
    }
    done(
        "08 local distortion nondecreasing over an eight-step radius grid",
        started,
        Duration::from_secs(120),
    );
}

#[test]
fn criterion_09_box_restriction_never_increases_matching_distance() {
    let started = Instant::now();
    let mut rng = ChaCha8Rng::seed_from_u64(9);
    for pair in 0..50 {
        let b1 = common::random_bifiltration(&mut rng);
        let b2 = common::random_bifiltration(&mut rng);
        let p = rng.gen_range(0..=1);
        let sample = LineSample::grid_for(&b1, &b2, 16, 16).unwrap();
        let per_line: Vec<(ExtReal, PersistenceDiagram, PersistenceDiagram)> = sample
            .lines()
            .iter()
            .map(|line| {
                let d1 = diagram_along_line(&b1, line, p).unwrap();
                let d2 = diagram_along_line(&b2, line, p).unwrap();
                (bottleneck_distance(&d1, &d2), d1, d2)
            })
            .collect();
        let full = sample
            .lines()
            .iter()
            .zip(&per_line)
            .map(|(line, (d, _, _))| d.scale(&line.weight()))
            .max()
            .unwrap();
        assert_eq!(full, matching_distance(&b1, &b2, p, &sample).unwrap());

        for case in 0..5 {
            let mut xs = [
                common::rand_rational(&mut rng, -1, 4),
                common::rand_rational(&mut rng, -1, 4),
            ];
            let mut ys = [
                common::rand_rational(&mut rng, -1, 4),
                common::rand_rational(&mut rng, -1, 4),
            ];
            xs.sort();
            ys.sort();
            let (lo, hi) = ([xs[0].clone(), ys[0].clone()], [xs[1].clone(), ys[1].clone()]);

            let mut aggregate = ExtReal::zero();
            for (line, (d_full, d1, d2)) in sample.lines().iter().zip(&per_line) {
                let d_restricted = match line_box_clip(line, &lo, &hi) {
                    None => ExtReal::zero(),
                    Some(win) => bottleneck_distance(&d1.restrict(&win), &d2.restrict(&win)),
                };
                assert!(
                    d_restricted <= *d_full,
                    "pair {pair}, box {case}: a single line grew under restriction"
                );
                aggregate = aggregate.max(d_restricted.scale(&line.weight()));
            }
            assert!(aggregate <= full, "pair {pair}, box {case}: aggregate grew");
            if case == 0 {
                let via_api =
                    restricted_matching_distance(&b1, &b2, p, &sample, &lo, &hi).unwrap();
                assert_eq!(aggregate, via_api);
                assert!(via_api <= matching_distance(&b1, &b2, p, &sample).unwrap());
            }
        }
    }
    done(
        "09 box-restricted matching distance within the unrestricted one, per line and overall",
        started,
        Duration::from_secs(120),
    );
}

#[test]
fn criterion_10_distance_axioms() {
    let started = Instant::now();
    let mut rng = ChaCha8Rng::seed_from_u64(10);

    for _ in 0..25 {
        let g = common::random_graph(&mut rng, 6, 8);
        for _ in 0..4 {
            let x = common::random_point(&mut rng, &g);
            let y = common::random_point(&mut rng, &g);
            let z = common::random_point(&mut rng, &g);
            let dxy = g.geodesic_distance(&x, &y).unwrap();
            let dyx = g.geodesic_distance(&y, &x).unwrap();
            let dyz = g.geodesic_distance(&y, &z).unwrap();
            let dxz = g.geodesic_distance(&x, &z).unwrap();
            assert_eq!(g.geodesic_distance(&x, &x).unwrap(), rat_int(0));
            assert_eq!(dxy, dyx);
            assert!(dxz <= &dxy + &dyz, "geodesic triangle inequality failed");
        }
    }

    for case in 0..100 {
        let a = common::random_diagram(&mut rng, 5, 2);
        let b = common::random_diagram(&mut rng, 5, 2);
        let c = common::random_diagram(&mut rng, 5, 2);
        assert_eq!(bottleneck_distance(&a, &a), ExtReal::zero());
        assert_eq!(bottleneck_distance(&a, &b), bottleneck_distance(&b, &a));
        let ac = bottleneck_distance(&a, &c);
        let through_b = bottleneck_distance(&a, &b).add(&bottleneck_distance(&b, &c));
        assert!(ac <= through_b, "case {case}: bottleneck triangle inequality failed");
    }

    done(
        "10 geodesic and bottleneck distance axioms on sampled triples",
        started,
        Duration::from_secs(120),
    );
}
