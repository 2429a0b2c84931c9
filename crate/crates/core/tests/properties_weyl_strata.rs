use std::collections::BTreeSet;

use lie_cert::chevalley::build_chevalley;
use lie_cert::rootdata::{enumerate_weyl, RootSystem, SUPPORTED_TYPES};
use lie_cert::scalar::{rat, rat_int};
use lie_cert::strata::{graded_piece, period_degrees, ApartmentPoint};
use lie_cert::weyleigen::{count_n, enumerate_flats, v_b_class_components};
use lie_cert::{CycloNum, Rational};
use num_traits::Zero;
use proptest::prelude::*;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

#[test]
fn root_count_is_weyl_invariant() {
    for l in SUPPORTED_TYPES {
        let rs = RootSystem::from_label(l).unwrap();
        let g = enumerate_weyl(&rs, 100_000).unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(0x1d);
        for _ in 0..100 {
            let w = g.element(&rs, rng.gen_range(0..g.len()));
            // small entries so that walls are hit often
            let x: Vec<Rational> = (0..rs.rank()).map(|_| rat_int(rng.gen_range(-1..=1))).collect();
            assert_eq!(count_n(&rs, &w.act(&x)), count_n(&rs, &x), "{l}");
        }
    }
}

fn vanishing(rs: &RootSystem, x: &[CycloNum]) -> BTreeSet<usize> {
    (0..rs.num_roots()).filter(|&a| rs.pair(a, x).is_zero()).collect()
}

#[test]
fn flats_carry_their_exact_vanishing_sets() {
    for l in ["A3", "B3"] {
        let rs = RootSystem::from_label(l).unwrap();
        let g = enumerate_weyl(&rs, 100_000).unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(5);
        let mut flats_seen = 0;
        for b in 1..=rs.coxeter_number() {
            for e in v_b_class_components(&rs, &g, b) {
                for f in enumerate_flats(&rs, &e, 9).unwrap() {
                    flats_seen += 1;
                    let recorded: BTreeSet<usize> = f.vanishing.iter().copied().collect();
                    assert_eq!(vanishing(&rs, &f.generic_point), recorded, "{l} b={b}");
                    assert_eq!(f.n, rs.num_roots() - recorded.len());
                    // a fresh random point of the flat: contains the recorded
                    // set, and equals it for wide coefficient ranges
                    let y = f.basis.iter().fold(vec![CycloNum::zero(); rs.rank()], |acc, v| {
                        let c = CycloNum::from_rational(rat(rng.gen_range(1..10_000), rng.gen_range(1..97)));
                        acc.into_iter().zip(v).map(|(p, q)| p + q.clone() * c.clone()).collect()
                    });
                    let vy = vanishing(&rs, &y);
                    assert!(vy.is_superset(&recorded));
                    assert_eq!(vy, recorded, "{l} b={b}: random point lies on a smaller flat");
                }
            }
        }
        assert!(flats_seen > 0);
    }
}

const TYPES: [&str; 6] = ["A1", "A2", "A3", "B2", "G2", "C3"];

fn point() -> impl Strategy<Value = (usize, Vec<(i64, i64)>)> {
    (0..TYPES.len(), prop::collection::vec((-12i64..=12, 1i64..=12), 3))
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(50))]

    #[test]
    fn pieces_are_periodic((t, x) in point(), r in (-24i64..=24, 1i64..=12)) {
        let rs = RootSystem::from_label(TYPES[t]).unwrap();
        let alg = build_chevalley(&rs).unwrap();
        let x = ApartmentPoint::new(x[..rs.rank()].iter().map(|&(n, d)| rat(n, d)).collect());
        let r = rat(r.0, r.1);
        let p = graded_piece(&alg, &x, &r);
        let q = graded_piece(&alg, &x, &(r + rat_int(1)));
        let shifted: Vec<(usize, i64)> = p.basis.iter().map(|&(j, m)| (j, m + 1)).collect();
        prop_assert_eq!(q.basis, shifted);
    }

    #[test]
    fn one_period_accounts_for_every_dimension((t, x) in point()) {
        let rs = RootSystem::from_label(TYPES[t]).unwrap();
        let alg = build_chevalley(&rs).unwrap();
        let x = ApartmentPoint::new(x[..rs.rank()].iter().map(|&(n, d)| rat(n, d)).collect());
        let degrees = period_degrees(&rs, &x);
        prop_assert!(degrees.iter().all(|r| *r >= rat_int(0) && *r < rat_int(1)));
        let total: usize = degrees.iter().map(|r| graded_piece(&alg, &x, r).dim()).sum();
        prop_assert_eq!(total, alg.dim());
    }
}
