use proptest::prelude::*;
use smpa::metrics::{magnitude, phi, phi_n};
use smpa::oracle::{oracle_dist, oracle_rho, random};
use smpa::{d1, d2, rho, Base, Combine, ComplexPoint, Error, MetricId, SElem, SVector, Sign};

fn selem() -> impl Strategy<Value = SElem> {
    prop_oneof![
        1 => Just(SElem::ZERO),
        8 => (0usize..3, -4.0f64..4.0).prop_map(|(s, e)| SElem::new(Sign::ALL[s], smpa::ExtReal::real(e))),
    ]
}

fn svector(n: usize) -> impl Strategy<Value = SVector> {
    proptest::collection::vec(selem(), n).prop_map(|c| SVector::new(c).unwrap())
}

fn close(a: f64, b: f64) -> bool {
    (a - b).abs() <= 1e-12 * a.abs().max(b.abs()).max(1.0)
}

#[test]
fn embedding_values() {
    assert_eq!(phi(SElem::ZERO), ComplexPoint::new(0.0, 0.0));
    let one = phi(SElem::balanced(0.0));
    assert!(close(one.re, 1.0) && close(one.im, 0.0));
    let p = phi(SElem::plus(0.0));
    assert!(close(p.re, -0.5) && close(p.im, 3f64.sqrt() / 2.0));
    let a = SVector::new(vec![SElem::plus(0.0), SElem::minus(3f64.ln()), SElem::balanced(2f64.ln())]).unwrap();
    let img = phi_n(&a);
    assert!(close(img[1].re, -1.5) && close(img[1].im, -1.5 * 3f64.sqrt()));
    assert!(close(img[2].re, 2.0) && close(img[2].im, 0.0));
}

#[test]
fn distance_values() {
    assert!(close(d1(SElem::plus(1.0), SElem::plus(2.0)), 2f64.exp() - 1f64.exp()));
    assert!(close(d1(SElem::plus(0.0), SElem::minus(0.0)), 3f64.sqrt()));
    assert!(close(d1(SElem::ZERO, SElem::balanced(1.5)), 1.5f64.exp()));
    assert!(close(d2(SElem::plus(0.0), SElem::minus(3f64.ln())), 4.0));
    assert!(close(d2(SElem::ZERO, SElem::plus(0.7)), 0.7f64.exp()));
    let a = SVector::new(vec![SElem::plus(0.0), SElem::minus(3f64.ln()), SElem::balanced(2f64.ln())]).unwrap();
    let b = SVector::new(vec![SElem::minus(0.0), SElem::balanced(0.0), SElem::plus(0.0)]).unwrap();
    assert!(close(rho(MetricId::D2, &a, &b).unwrap(), 29f64.sqrt()));
    assert!(close(rho(MetricId::new(Combine::Sum, Base::D2), &a, &b).unwrap(), 9.0));
    assert!(close(rho(MetricId::new(Combine::Max, Base::D2), &a, &b).unwrap(), 4.0));
    assert_eq!(
        rho(MetricId::D1, &a, &SVector::zero(2)),
        Err(Error::DimensionMismatch { left: 3, right: 2 })
    );
}

#[test]
fn metric_ids_parse_and_print() {
    for id in MetricId::all() {
        assert_eq!(id.to_string().parse::<MetricId>().unwrap(), id);
    }
    assert_eq!("D1".parse::<MetricId>().unwrap(), "rho11".parse().unwrap());
    assert_eq!("D2".parse::<MetricId>().unwrap(), "rho12".parse().unwrap());
    assert!("rho31".parse::<MetricId>().is_err());
    assert!("d3".parse::<Base>().is_err());
}

#[test]
fn equivalence_constant() {
    // Across rays d₂/d₁ = (m + m′)/√(m² + m′² + mm′) peaks at m = m′.
    let mut rng = random::rng(3);
    let bound = 2.0 / 3f64.sqrt();
    let mut worst: f64 = 0.0;
    for _ in 0..100_000 {
        let (a, b) = (random::selem(&mut rng), random::selem(&mut rng));
        if a != b {
            worst = worst.max(d2(a, b) / d1(a, b));
        }
    }
    assert!(worst <= bound + 1e-12, "{worst}");
    assert!(close(d2(SElem::plus(1.0), SElem::minus(1.0)) / d1(SElem::plus(1.0), SElem::minus(1.0)), bound));
}

#[test]
fn product_is_continuous() {
    let mut rng = random::rng(37);
    for _ in 0..1000 {
        let (a, b) = (random::selem(&mut rng), random::selem(&mut rng));
        let mut last = f64::INFINITY;
        for k in 1..=6 {
            let delta = 10f64.powi(-k);
            let nudge = |x: SElem| match x.abs().value() {
                Some(e) => SElem::new(x.sign(), smpa::ExtReal::real(e + delta)),
                None => x,
            };
            let gap = d2(a.otimes(b), nudge(a).otimes(nudge(b)));
            assert!(gap <= last + 1e-12, "{a} ⊗ {b}: {gap} after {last}");
            last = gap;
        }
        assert!(last <= 1e-4 * (magnitude(a) * magnitude(b)).max(1.0), "{a} ⊗ {b}: {last}");
    }
}

#[test]
fn sum_has_separated_one_sided_limits() {
    for r in [-1.0, 0.0, 0.5, 2.0] {
        let from_below = SElem::plus(r - 1e-6).oplus(SElem::balanced(r));
        let from_above = SElem::plus(r + 1e-6).oplus(SElem::balanced(r));
        assert_eq!(from_below, SElem::balanced(r));
        assert!(d2(from_above, SElem::plus(r)) < 1e-5 * r.exp().max(1.0));
        assert!(close(d2(SElem::balanced(r), SElem::plus(r)), 2.0 * f64::exp(r)));
    }
}

proptest! {
    #[test]
    fn distances_match_independent_models(a in selem(), b in selem()) {
        prop_assert!(close(d1(a, b), oracle_dist(Base::D1, a, b)));
        prop_assert!(close(d2(a, b), oracle_dist(Base::D2, a, b)));
        prop_assert!(close(d1(a, b), phi(a).dist(phi(b))));
    }

    #[test]
    fn metric_axioms(a in selem(), b in selem(), c in selem()) {
        for d in [d1 as fn(SElem, SElem) -> f64, d2] {
            prop_assert_eq!(d(a, a), 0.0);
            prop_assert_eq!(d(a, b), d(b, a));
            prop_assert_eq!(d(a, b) == 0.0, a == b);
            prop_assert!(d(a, c) <= d(a, b) + d(b, c) + 1e-9);
        }
        prop_assert!(d1(a, b) <= d2(a, b) + 1e-12);
        if a.sign() == b.sign() || a.is_zero() || b.is_zero() {
            prop_assert!(close(d1(a, b), d2(a, b)));
        }
    }

    #[test]
    fn product_metrics(n in 1usize..4, seed in any::<u64>()) {
        let mut rng = random::rng(seed);
        let (x, y, z) = (random::svector(&mut rng, n), random::svector(&mut rng, n), random::svector(&mut rng, n));
        for id in MetricId::all() {
            let r = |p: &SVector, q: &SVector| rho(id, p, q).unwrap();
            prop_assert_eq!(r(&x, &x), 0.0);
            prop_assert!(close(r(&x, &y), r(&y, &x)));
            prop_assert!(r(&x, &z) <= r(&x, &y) + r(&y, &z) + 1e-9);
            prop_assert!(close(r(&x, &y), oracle_rho(id, &x, &y)));
        }
        for base in [Base::D1, Base::D2] {
            let r = |c| rho(MetricId::new(c, base), &x, &y).unwrap();
            prop_assert!(r(Combine::Max) <= r(Combine::Euclid) + 1e-12);
            prop_assert!(r(Combine::Euclid) <= r(Combine::Sum) + 1e-12);
        }
    }

    #[test]
    fn embedding_is_an_isometry_for_d1(x in svector(2), y in svector(2)) {
        let (px, py) = (phi_n(&x), phi_n(&y));
        let chord = px.iter().zip(&py).map(|(p, q)| p.dist(*q).powi(2)).sum::<f64>().sqrt();
        prop_assert!(close(rho(MetricId::D1, &x, &y).unwrap(), chord));
    }
}
