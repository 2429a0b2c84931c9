use lie_cert::chevalley::{build_chevalley, AlgebraElement, ChevalleyAlgebra};
use lie_cert::rootdata::{enumerate_weyl, standard_parabolics, CartanType, RootSystem, SUPPORTED_TYPES};
use lie_cert::scalar::rat_int;
use lie_cert::{Rational, Ring, F61};
use num_traits::Zero;
use proptest::prelude::*;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

/// Root count of an irreducible type from the closed formulas.
fn roots_of(label: &str) -> usize {
    let ct = CartanType::parse(label).unwrap();
    let n = ct.rank;
    match ct.family {
        'A' => n * (n + 1),
        'B' | 'C' => 2 * n * n,
        'D' => 2 * n * (n - 1),
        'G' => 12,
        'F' => 48,
        'E' => [72, 126, 240][n - 6],
        _ => unreachable!(),
    }
}

#[test]
fn numerology_and_group_order() {
    for l in SUPPORTED_TYPES {
        let rs = RootSystem::from_label(l).unwrap();
        assert_eq!(rs.num_roots(), rs.coxeter_number() as usize * rs.rank(), "{l}");
        assert_eq!(rs.num_roots(), roots_of(l), "{l}");
        let w = enumerate_weyl(&rs, 100_000).unwrap();
        let prod: u64 = rs.degrees().iter().map(|&d| d as u64).product();
        assert_eq!(w.len() as u64, prod, "{l}");
    }
}

#[test]
fn parabolic_root_counts_add_up() {
    for l in SUPPORTED_TYPES {
        let rs = RootSystem::from_label(l).unwrap();
        for p in standard_parabolics(&rs) {
            let total: usize = p.components.iter().map(|c| roots_of(c)).sum();
            assert_eq!(total, p.root_count, "{l} {:?}", p.subset);
            let direct = (0..rs.num_roots())
                .filter(|&a| {
                    rs.root(a)
                        .iter()
                        .enumerate()
                        .all(|(i, &c)| c == 0 || p.subset.contains(&i))
                })
                .count();
            assert_eq!(direct, p.root_count, "{l} {:?}", p.subset);
        }
    }
}

#[test]
fn coxeter_elements_fix_nothing() {
    for l in SUPPORTED_TYPES {
        let rs = RootSystem::from_label(l).unwrap();
        let c = rs.coxeter_element();
        assert_eq!(c.order(), rs.coxeter_number(), "{l}");
        let chi = c.matrix().charpoly();
        assert!(!chi.eval(&rat_int(1)).is_zero(), "{l}: 1 is an eigenvalue");
    }
}

#[test]
fn reflections_permute_roots() {
    for l in SUPPORTED_TYPES {
        let rs = RootSystem::from_label(l).unwrap();
        let vecs: Vec<Vec<i64>> = (0..rs.num_roots()).map(|a| rs.root(a).to_vec()).collect();
        for a in 0..rs.num_roots() {
            let aa: Rational = rs.pair(a, &vecs[a].iter().map(|&c| rat_int(c)).collect::<Vec<_>>());
            let mut image: Vec<Vec<i64>> = vecs
                .iter()
                .map(|b| {
                    let ab: Rational = rs.pair(a, &b.iter().map(|&c| rat_int(c)).collect::<Vec<_>>());
                    let k = (rat_int(2) * ab / aa.clone()).to_integer();
                    let k: i64 = k.try_into().unwrap();
                    b.iter().zip(&vecs[a]).map(|(x, y)| x - k * y).collect()
                })
                .collect();
            image.sort();
            let mut sorted = vecs.clone();
            sorted.sort();
            assert_eq!(image, sorted, "{l}: reflection in root {a}");
        }
    }
}

fn random_element<R: Rng>(rng: &mut R, alg: &ChevalleyAlgebra) -> AlgebraElement<F61> {
    AlgebraElement::from_terms((0..alg.dim()).map(|j| (j, F61::from_i64(rng.gen_range(-1_000_000..1_000_000)))))
}

#[test]
fn adjoint_is_a_representation() {
    for l in SUPPORTED_TYPES {
        let alg = build_chevalley(&RootSystem::from_label(l).unwrap()).unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(l.len() as u64 * 1000 + l.as_bytes()[1] as u64);
        // dense random pairs over F_p; the identity has integer coefficients
        for _ in 0..100 {
            let x = random_element(&mut rng, &alg);
            let y = random_element(&mut rng, &alg);
            let (ax, ay) = (alg.ad_matrix(&x), alg.ad_matrix(&y));
            let lhs = alg.ad_matrix(&alg.bracket(&x, &y));
            assert_eq!(lhs, ax.mul(&ay).sub(&ay.mul(&ax)), "{l}");
        }
    }
}

const SMALL: [&str; 5] = ["A1", "A2", "A3", "B2", "G2"];

fn small_element() -> impl Strategy<Value = (usize, Vec<(usize, i64)>)> {
    (0..SMALL.len()).prop_flat_map(|t| {
        let dim = build_chevalley(&RootSystem::from_label(SMALL[t]).unwrap())
            .unwrap()
            .dim();
        (Just(t), prop::collection::vec((0..dim, -3i64..=3), 1..5))
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(96))]

    #[test]
    fn nilpotent_and_regular_semisimple_are_exclusive((t, terms) in small_element(), nilpotent_only in any::<bool>()) {
        let rs = RootSystem::from_label(SMALL[t]).unwrap();
        let alg = build_chevalley(&rs).unwrap();
        let np = rs.num_positive();
        let x: AlgebraElement<Rational> = AlgebraElement::from_terms(terms.into_iter().map(|(j, c)| {
            // fold onto positive root vectors to get nilpotent elements half the time
            let j = if nilpotent_only { j % np } else { j };
            (j, rat_int(c))
        }));
        prop_assume!(!x.is_zero());
        prop_assert!(!(alg.is_nilpotent(&x) && alg.is_regular_semisimple(&x)));
        if nilpotent_only {
            prop_assert!(alg.is_nilpotent(&x));
        }
    }

    #[test]
    fn cartan_regularity_matches_root_values(t in 0..SMALL.len(), x in prop::collection::vec(-2i64..=2, 3)) {
        let rs = RootSystem::from_label(SMALL[t]).unwrap();
        let alg = build_chevalley(&rs).unwrap();
        let x: Vec<Rational> = x[..rs.rank()].iter().map(|&c| rat_int(c)).collect();
        let h = alg.cartan_element(&x);
        let by_roots = (0..rs.num_roots()).all(|a| !rs.eval_on_coroots(a, &x).is_zero());
        prop_assert_eq!(alg.is_regular_semisimple(&h), by_roots);
        prop_assert_eq!(alg.centralizer_dim(&h) == rs.rank(), by_roots);
    }
}
