use proptest::prelude::*;

use wedge_planner::probes::random_configuration;
use wedge_planner::retraction::{cylinder_move, square_move};
use wedge_planner::*;

fn circle() -> impl Strategy<Value = CircleId> {
    (1i64..=3).prop_map(|i| CircleId::new(i).unwrap())
}

fn point() -> impl Strategy<Value = PhysPoint> {
    prop_oneof![
        1 => Just(PhysPoint::Vertex),
        8 => (circle(), 1e-6..1.0 - 1e-6).prop_map(|(c, t)| PhysPoint::on_circle(c, t)),
    ]
}

fn state() -> impl Strategy<Value = Configuration> {
    (point(), point()).prop_filter_map("robots collide", |(a, b)| Configuration::new(a, b).ok())
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(1000))]

    #[test]
    fn metric_axioms(p in point(), q in point(), r in point()) {
        let d = gamma_distance(&p, &q);
        prop_assert!(d >= 0.0);
        prop_assert_eq!(d, gamma_distance(&q, &p));
        prop_assert!(gamma_distance(&p, &r) <= d + gamma_distance(&q, &r) + 1e-12);
        prop_assert_eq!(gamma_distance(&p, &p), 0.0);
    }

    #[test]
    fn moves_invert(c in circle(), t in 1e-3..0.999f64, d in -2.0..2.0f64) {
        let p = PhysPoint::on_circle(c, t);
        let back = move_on_circle(&move_on_circle(&p, c, d).unwrap(), c, -d).unwrap();
        prop_assert!(gamma_distance(&back, &p) < 1e-9);
    }

    #[test]
    fn antipode_is_an_involution(c in circle(), t in 1e-3..0.999f64) {
        let p = PhysPoint::on_circle(c, t);
        let q = antipode_on(c, &antipode_on(c, &p).unwrap()).unwrap();
        prop_assert!(gamma_distance(&p, &q) < 1e-12);
    }

    #[test]
    fn charts_agree_at_the_vertex(c in circle(), t in 1e-6..1.0 - 1e-6, a_at_vertex: bool) {
        let p = PhysPoint::on_circle(c, t);
        let s = if a_at_vertex {
            Configuration::new(PhysPoint::Vertex, p)
        } else {
            Configuration::new(p, PhysPoint::Vertex)
        }
        .unwrap();
        let d = config_distance(&cylinder_move(c, &s).end, &square_move(&s).end);
        prop_assert!(d <= 1e-12, "disagreement {d:e} at {s}");
    }

    #[test]
    fn retraction_lands_in_the_network(s in state()) {
        let end = retract(&s).end;
        prop_assert!(classify_network(&end, 1e-9).in_network(), "{s} -> {end}");
        let again = retract(&end).end;
        prop_assert!(config_distance(&again, &end) <= 1e-12);
    }

    #[test]
    fn retraction_traces_avoid_collisions(s in state()) {
        let m = retract(&s);
        for k in 0..=200 {
            let x = m.at(k as f64 / 200.0);
            prop_assert!(x.separation() > 0.0, "{s} collides at step {k}");
        }
    }

    #[test]
    fn plans_connect_their_endpoints(s in state(), t in state()) {
        let p = plan(&s, &t).unwrap();
        prop_assert!(config_distance(&p.state_at(0.0), &s) <= 1e-9);
        prop_assert!(config_distance(&p.state_at(1.0), &t) <= 1e-9);
        prop_assert!(p.validate(1e-2).ok);
    }
}

#[test]
fn chart_round_trip_on_mixed_states() {
    let mut rng = probes::trial_rng(1, 0);
    for _ in 0..10_000 {
        let s = random_configuration(&mut rng);
        let back = Configuration::from_chart(&s.to_chart()).unwrap();
        assert!(config_distance(&s, &back) < 1e-12, "{s}");
    }
}
