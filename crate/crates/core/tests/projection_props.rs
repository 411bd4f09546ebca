mod common;

use common::{non_uniqueness_witness, EXACT};
use rand::Rng;
use rand_chacha::ChaCha8Rng;
use smpa::metrics::{from_magnitude, magnitude};
use smpa::oracle::random;
use smpa::{
    d1, d2, distance_to_set, is_chebyshev, is_connected, is_geometrically_convex, project_box,
    project_box_max, project_ray, project_segment_set, project_union, semimodule_segment, Base,
    BoxSet, Combine, Error, Interval, MetricId, RaySet, SElem, SVector, Sign,
};

const BASES: [Base; 2] = [Base::D1, Base::D2];

fn ones() -> RaySet {
    RaySet::from_points(&[SElem::plus(0.0), SElem::minus(0.0), SElem::balanced(0.0)])
}

fn close(a: f64, b: f64) -> bool {
    (a - b).abs() <= 1e-12 * a.abs().max(b.abs()).max(1.0)
}

/// Query points: random elements plus the origin and every interval end.
fn queries(rng: &mut ChaCha8Rng, c: &RaySet, count: usize) -> Vec<SElem> {
    let mut out: Vec<SElem> = (0..count).map(|_| random::selem(rng)).collect();
    out.push(SElem::ZERO);
    for p in c.endpoints() {
        for s in Sign::ALL {
            out.push(from_magnitude(s, magnitude(p)));
        }
    }
    out
}

#[test]
fn projection_results_are_consistent() {
    let mut rng = random::rng(41);
    for _ in 0..300 {
        let c = random::rayset(&mut rng);
        for x in queries(&mut rng, &c, 20) {
            for base in BASES {
                let p = project_ray(x, &c, base).unwrap();
                assert!(!p.is_empty());
                assert_eq!(p.singleton, p.len() == 1);
                assert_eq!(p.distance, distance_to_set(x, &c, base).unwrap());
                for (i, &y) in p.points.iter().enumerate() {
                    assert!(c.contains(y), "{y} ∉ {c}");
                    assert!((base.dist(x, y) - p.distance).abs() <= 1e-9);
                    assert!(!p.points[..i].contains(&y));
                }
            }
        }
    }
}

#[test]
fn projection_examples() {
    let plus = RaySet::interval(Sign::Plus, 1.0, 2.0).unwrap();
    let p = project_ray(SElem::minus(0.0), &plus, Base::D2).unwrap();
    assert_eq!(p.points, vec![SElem::plus(0.0)]);
    assert!(close(p.distance, 2.0));
    assert!(close(distance_to_set(SElem::minus(0.0), &plus, Base::D1).unwrap(), 3f64.sqrt()));
    assert_eq!(distance_to_set(SElem::plus(0.5), &plus, Base::D2).unwrap(), 0.0);

    let balanced = RaySet::interval(Sign::Balanced, 2.0, 3.0).unwrap();
    assert!(close(distance_to_set(SElem::ZERO, &balanced, Base::D2).unwrap(), 2.0));

    for base in BASES {
        let p = project_ray(SElem::ZERO, &ones(), base).unwrap();
        assert_eq!(p.len(), 3);
        assert!(close(p.distance, 1.0));
    }
    assert_eq!(project_ray(SElem::ZERO, &RaySet::empty(), Base::D1), Err(Error::EmptySet));

    // The segment from ⊕1 to ⊖0 misses ⊕0, so only two nearest points remain.
    let seg = semimodule_segment(&SVector::from(SElem::plus(1.0)), &SVector::from(SElem::minus(0.0))).unwrap();
    for id in [MetricId::D1, MetricId::D2] {
        let p = project_segment_set(&SVector::zero(1), &seg, id).unwrap();
        let mut got: Vec<SElem> = p.points.iter().map(|v| v.get(0)).collect();
        got.sort();
        let mut want = vec![SElem::minus(0.0), SElem::balanced(0.0)];
        want.sort();
        assert_eq!(got, want);
        assert!(close(p.distance, 1.0));
    }
    let closure = RaySet::closure_of(&seg).unwrap();
    assert_eq!(project_ray(SElem::ZERO, &closure, Base::D2).unwrap().len(), 3);
}

#[test]
fn connected_sets_have_one_nearest_point_for_both_metrics() {
    let mut rng = random::rng(42);
    for _ in 0..200 {
        let c = random::connected_rayset(&mut rng);
        for x in queries(&mut rng, &c, 200) {
            let (p1, p2) = (project_ray(x, &c, Base::D1).unwrap(), project_ray(x, &c, Base::D2).unwrap());
            assert!(p1.singleton && p2.singleton, "{x} onto {c}: {p1:?} {p2:?}");
            assert_eq!(p1.points, p2.points, "{x} onto {c}");
        }
    }
}

#[test]
fn chebyshev_sets_are_the_geometrically_convex_ones() {
    let mut rng = random::rng(43);
    let mut witnessed = 0;
    for k in 0..300 {
        let c = if k % 2 == 0 { random::rayset(&mut rng) } else { random::connected_rayset(&mut rng) };
        let cheb = is_chebyshev(&c).unwrap();
        assert_eq!(cheb, is_geometrically_convex(&c).unwrap());
        if !cheb {
            for base in BASES {
                let (x, p) = non_uniqueness_witness(&c, base).unwrap_or_else(|| panic!("no witness for {c}"));
                assert!(p.len() >= 2, "{x} onto {c}");
            }
            witnessed += 1;
        }
    }
    assert!(witnessed >= 50);
}

#[test]
fn semimodule_convex_sets_have_at_most_three_nearest_points() {
    let mut rng = random::rng(44);
    let mut three = 0;
    for _ in 0..300 {
        let c = random::semimodule_convex_rayset(&mut rng);
        for x in queries(&mut rng, &c, 50) {
            for base in BASES {
                let n = project_ray(x, &c, base).unwrap().len();
                assert!(n <= 3, "{x} onto {c}: {n} points");
                three += usize::from(n == 3);
            }
        }
    }
    assert!(three > 0);
}

#[test]
fn boxes_of_semimodule_convex_sets_have_at_most_3_to_the_n_nearest_points() {
    let mut rng = random::rng(45);
    for n in 1..=3 {
        let a = BoxSet::power(&ones(), n).unwrap();
        for id in MetricId::all().into_iter().filter(|id| id.combine != Combine::Max) {
            let p = project_box(&SVector::zero(n), &a, id).unwrap();
            assert_eq!(p.len(), 3usize.pow(n as u32));
        }
        for _ in 0..300 {
            let a = random::boxset(&mut rng, n, random::semimodule_convex_rayset);
            let mut x = random::svector(&mut rng, n);
            if rng.gen_bool(0.3) {
                x = SVector::zero(n);
            }
            for id in MetricId::all().into_iter().filter(|id| id.combine != Combine::Max) {
                let p = project_box(&x, &a, id).unwrap();
                assert!(p.len() <= 3usize.pow(n as u32));
            }
        }
    }
}

#[test]
fn box_projection_is_the_product_of_coordinate_projections() {
    let mut rng = random::rng(46);
    for n in 1..=3 {
        for _ in 0..300 {
            let a = random::boxset(&mut rng, n, random::rayset);
            let x = random::svector(&mut rng, n);
            for base in BASES {
                let per: Vec<_> =
                    a.factors.iter().zip(x.coords()).map(|(f, &xi)| project_ray(xi, f, base).unwrap()).collect();
                for combine in [Combine::Euclid, Combine::Sum] {
                    let id = MetricId::new(combine, base);
                    let p = project_box(&x, &a, id).unwrap();
                    assert_eq!(p.len(), per.iter().map(|q| q.len()).product::<usize>());
                    for y in &p.points {
                        assert!(a.contains(y));
                        for (i, q) in per.iter().enumerate() {
                            assert!(q.points.contains(&y.get(i)));
                        }
                        assert!((smpa::rho(id, &x, y).unwrap() - p.distance).abs() <= 1e-9);
                    }
                    let parts = per.iter().map(|q| q.distance);
                    let want = match combine {
                        Combine::Sum => parts.sum::<f64>(),
                        _ => parts.map(|d| d * d).sum::<f64>().sqrt(),
                    };
                    assert!(close(p.distance, want));
                }
                let p = project_box(&x, &a, MetricId::new(Combine::Max, base));
                assert_eq!(p, Err(Error::MaxCombineNotFactorizable));
            }
            if a.factors.iter().all(|f| is_connected(f).unwrap()) {
                for id in MetricId::all().into_iter().filter(|id| id.combine != Combine::Max) {
                    assert!(project_box(&x, &a, id).unwrap().singleton);
                }
            }
        }
    }
    let err = project_box(&SVector::zero(2), &BoxSet::power(&ones(), 3).unwrap(), MetricId::D2);
    assert_eq!(err, Err(Error::DimensionMismatch { left: 2, right: 3 }));
}

#[test]
fn max_combine_box_projection_trivial_cases() {
    let point = SVector::new(vec![SElem::plus(1.0), SElem::balanced(-1.0)]).unwrap();
    let single = BoxSet::new(point.coords().iter().map(|&c| RaySet::from_points(&[c])).collect()).unwrap();
    let x = SVector::new(vec![SElem::minus(0.5), SElem::ZERO]).unwrap();
    let interval = BoxSet::new(vec![
        RaySet::interval(Sign::Minus, 0.0, 5.0).unwrap(),
        RaySet::interval(Sign::Plus, 0.0, 1.0).unwrap(),
    ])
    .unwrap();
    for base in BASES {
        let p = project_box_max(&x, &single, base, 1e-2).unwrap();
        assert_eq!(p.points, vec![point.clone()]);
        let p = project_box_max(&x, &interval, base, 1e-2).unwrap();
        assert_eq!(p.points, vec![x.clone()]);
        assert_eq!(p.distance, 0.0);
        assert!(matches!(project_box_max(&x, &single, base, 0.0), Err(Error::InvalidValue(_))));
        assert!(matches!(project_box_max(&x, &single, base, f64::NAN), Err(Error::InvalidValue(_))));
    }
}

/// A random connected subset of the star with the given reach on each ray.
fn connected_part(rng: &mut ChaCha8Rng, reach: [f64; 3]) -> RaySet {
    let mut lists: [Vec<Interval>; 3] = Default::default();
    if rng.gen_bool(0.5) {
        let s = rng.gen_range(0..3);
        let (p, q) = (rng.gen_range(0.0..=reach[s]), rng.gen_range(0.0..=reach[s]));
        lists[s].push(Interval { lo: p.min(q), hi: p.max(q) });
    } else {
        for (s, list) in lists.iter_mut().enumerate() {
            if rng.gen_bool(0.7) {
                list.push(Interval { lo: 0.0, hi: rng.gen_range(0.0..=reach[s]) });
            }
        }
        if lists.iter().all(Vec::is_empty) {
            lists[0].push(Interval { lo: 0.0, hi: reach[0] });
        }
    }
    let [p, m, b] = lists;
    RaySet::new(p, m, b)
}

#[test]
fn unions_of_chebyshev_sets() {
    let plus = |lo, hi| RaySet::interval(Sign::Plus, lo, hi).unwrap();
    for base in BASES {
        assert_eq!(project_union(SElem::plus(3f64.ln()), &plus(0.0, 1.0), &plus(1.0, 2.0), base).unwrap(), SElem::plus(2f64.ln()));
        assert_eq!(project_union(SElem::plus(0.0), &plus(0.0, 1.0), &plus(1.0, 2.0), base).unwrap(), SElem::plus(0.0));
        let err = project_union(SElem::ZERO, &plus(0.5, 1.0), &plus(2.0, 3.0), base);
        assert!(matches!(err, Err(Error::Precondition(_))));
        assert!(matches!(project_union(SElem::ZERO, &ones(), &ones(), base), Err(Error::Precondition(_))));
    }

    let mut rng = random::rng(47);
    let mut checked = 0;
    for _ in 0..500 {
        let reach = [0; 3].map(|_| random::magnitude(&mut rng));
        let parts: Vec<RaySet> = (0..rng.gen_range(2..=4)).map(|_| connected_part(&mut rng, reach)).collect();
        let union = parts.iter().skip(1).fold(parts[0].clone(), |u, p| u.union(p));
        if !is_chebyshev(&union).unwrap() {
            continue;
        }
        checked += 1;
        for x in queries(&mut rng, &union, 10) {
            for base in BASES {
                let a = project_ray(x, &union, base).unwrap();
                assert!(a.singleton);
                let a = a.points[0];
                // The nearest point of the union is the nearest point of every
                // part that contains it.
                for part in parts.iter().filter(|p| p.contains(a)) {
                    let q = project_ray(x, part, base).unwrap().points[0];
                    assert!(base.dist(a, q) <= 1e-9 * magnitude(a).max(1.0), "{x}: {a} vs {q} on {part}");
                }
                if is_chebyshev(&parts[0].union(&parts[1])).unwrap() {
                    let pair = parts[0].union(&parts[1]);
                    let got = project_union(x, &parts[0], &parts[1], base).unwrap();
                    let want = project_ray(x, &pair, base).unwrap();
                    assert!((base.dist(x, got) - want.distance).abs() <= 1e-9);
                }
            }
        }
    }
    assert!(checked > 200);
}

#[test]
fn nested_chebyshev_families_have_chebyshev_unions() {
    let mut rng = random::rng(48);
    for _ in 0..200 {
        // Growing stars (or growing intervals on one ray): each member
        // contains the previous one.
        let star = rng.gen_bool(0.5);
        let s = rng.gen_range(0..3);
        let mut reach = [0.0; 3];
        let mut lo = random::magnitude(&mut rng);
        let mut union = RaySet::empty();
        for _ in 0..rng.gen_range(2..=6) {
            let mut lists: [Vec<Interval>; 3] = Default::default();
            if star {
                for (r, list) in reach.iter_mut().zip(lists.iter_mut()) {
                    *r += rng.gen_range(0.0..1.0);
                    list.push(Interval { lo: 0.0, hi: *r });
                }
            } else {
                lo = (lo - rng.gen_range(0.0..0.5)).max(0.0);
                reach[s] = reach[s].max(lo) + rng.gen_range(0.0..1.0);
                lists[s].push(Interval { lo, hi: reach[s] });
            }
            let [p, m, b] = lists;
            let member = RaySet::new(p, m, b);
            assert!(is_chebyshev(&member).unwrap());
            union = union.union(&member);
        }
        assert!(is_chebyshev(&union).unwrap(), "{union}");
        for x in queries(&mut rng, &union, 20) {
            for base in BASES {
                assert!(project_ray(x, &union, base).unwrap().singleton);
            }
        }
    }
}

/// `x` moved by `t ≥ 0` in magnitude along a ray (away from the origin when
/// `x` is the origin itself).
fn nudge(x: SElem, ray: Sign, t: f64) -> SElem {
    if x.is_zero() {
        from_magnitude(ray, t)
    } else {
        from_magnitude(x.sign(), magnitude(x) + t)
    }
}

#[test]
fn graph_of_the_projection_is_closed() {
    let mut rng = random::rng(49);
    for _ in 0..300 {
        let c = random::rayset(&mut rng);
        let mut starts: Vec<SElem> = (0..5).map(|_| random::selem(&mut rng)).collect();
        for base in BASES {
            if let Some((x, _)) = non_uniqueness_witness(&c, base) {
                starts.push(x);
            }
        }
        for x in starts {
            // Directions of approach: outwards along every ray from the
            // origin, or both ways along the ray of x.
            let paths: Vec<(Sign, f64)> = if x.is_zero() {
                Sign::ALL.into_iter().map(|s| (s, 1.0)).collect()
            } else {
                vec![(x.sign(), 1.0), (x.sign(), -1.0)]
            };
            for base in BASES {
                let limit = project_ray(x, &c, base).unwrap();
                for &(ray, side) in &paths {
                    // x_k → x from one side; the nearest points y_k of x_k
                    // converge, and their limit must be nearest to x.
                    let mut last = None;
                    for k in 20..=40 {
                        let t = side * magnitude(x).max(1.0) * 2f64.powi(-k);
                        if magnitude(x) + t <= 0.0 {
                            break;
                        }
                        let yk = project_ray(nudge(x, ray, t), &c, base).unwrap().points[0];
                        last = Some(yk);
                    }
                    let Some(y) = last else { continue };
                    let gap = limit.points.iter().map(|&p| base.dist(p, y)).fold(f64::INFINITY, f64::min);
                    assert!(gap <= 1e-6 * magnitude(y).max(1.0), "{x} onto {c}: limit {y} not in {limit:?}");
                    assert!((base.dist(x, y) - limit.distance).abs() <= 1e-6 * limit.distance.max(1.0));
                }
            }
        }
    }
}

#[test]
fn projection_onto_connected_sets_is_continuous() {
    let mut rng = random::rng(50);
    for base in BASES {
        let mut omega = [0.0f64; 3];
        for _ in 0..100 {
            let c = random::connected_rayset(&mut rng);
            let x = random::selem(&mut rng);
            let p = project_ray(x, &c, base).unwrap().points[0];
            for (w, delta) in omega.iter_mut().zip([1e-2, 1e-3, 1e-4]) {
                for ray in Sign::ALL {
                    for t in [delta, -delta] {
                        if magnitude(x) + t < 0.0 || (x.is_zero() && t < 0.0) {
                            continue;
                        }
                        let moved = nudge(x, ray, t);
                        assert!(d2(x, moved) <= delta * (1.0 + 1e-9));
                        let q = project_ray(moved, &c, base).unwrap().points[0];
                        *w = w.max(base.dist(p, q));
                    }
                }
            }
        }
        assert!(omega[0] >= omega[1] && omega[1] >= omega[2], "{base:?}: {omega:?}");
        assert!(omega[2] <= 2e-4, "{base:?}: {omega:?}");
    }
}

#[test]
fn tie_points_across_rays_are_exact() {
    // Equal magnitudes on two rays tie exactly under both metrics.
    let c = RaySet::from_points(&[SElem::plus(1.0), SElem::minus(1.0)]);
    for x in [SElem::ZERO, SElem::balanced(0.3), SElem::balanced(2.0)] {
        let (p1, p2) = (project_ray(x, &c, Base::D1).unwrap(), project_ray(x, &c, Base::D2).unwrap());
        assert_eq!(p1.len(), 2);
        assert_eq!(p2.len(), 2);
        assert!((d1(x, SElem::plus(1.0)) - p1.distance).abs() <= EXACT * p1.distance);
    }
}
