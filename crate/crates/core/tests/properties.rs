use proptest::prelude::*;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use apollonian::circle::{circle_from_matrix, reorient, Circle, Window};
use apollonian::explorer::{example_coset, explore_palace, random_unimodular, strip_generators, ExplorationConfig};
use apollonian::gaussian::{
    coset_class, gauss_gcd, gi, mobius_apply, CosetClass, GaussMatrix2, GaussianInt, ProjectivePoint,
};
use apollonian::lax::lax_canonical;
use apollonian::minkowski::{base_quadruple, lorentz_apply, lorentz_apply_quadruple, pedoe, spinor};
use apollonian::render::{read_jsonl, to_jsonl};
use apollonian::verify::{self, default_strip_window, Source};

fn matrix(seed: u64, len: usize) -> GaussMatrix2 {
    random_unimodular(&mut ChaCha8Rng::seed_from_u64(seed), len)
}

fn gauss() -> impl Strategy<Value = GaussianInt> {
    (-50i64..=50, -50i64..=50).prop_map(|(a, b)| gi(a, b))
}

/// Words in the generators of SL₂(ℤ).
fn real_unimodular() -> impl Strategy<Value = GaussMatrix2> {
    prop::collection::vec(0usize..4, 0..10).prop_map(|word| {
        let (o, z) = (GaussianInt::ONE, GaussianInt::ZERO);
        let letters = [
            GaussMatrix2::from_rows(o, o, z, o),
            GaussMatrix2::from_rows(o, -o, z, o),
            GaussMatrix2::from_rows(o, z, o, o),
            GaussMatrix2::from_rows(o, z, -o, o),
        ];
        word.iter().fold(GaussMatrix2::IDENTITY, |m, &k| m.mul(&letters[k]))
    })
}

proptest! {
    #[test]
    fn mobius_composes(s1 in any::<u64>(), s2 in any::<u64>(), l1 in 0usize..8, l2 in 0usize..8, p in gauss(), q in gauss()) {
        prop_assume!(!(p.is_zero() && q.is_zero()));
        let (a, b) = (matrix(s1, l1), matrix(s2, l2));
        let x = ProjectivePoint::new(p, q).unwrap();
        let lhs = mobius_apply(&a.mul(&b), &x).unwrap();
        let rhs = mobius_apply(&a, &mobius_apply(&b, &x).unwrap()).unwrap();
        prop_assert_eq!(lhs, rhs);
    }

    #[test]
    fn coset_is_multiplicative(s1 in any::<u64>(), s2 in any::<u64>(), l1 in 0usize..10, l2 in 0usize..10) {
        let (a, b) = (matrix(s1, l1), matrix(s2, l2));
        let same = |x: CosetClass, y: CosetClass| if x == y { CosetClass::Psl } else { CosetClass::NonPsl };
        let expected = same(coset_class(&a).unwrap(), coset_class(&b).unwrap());
        prop_assert_eq!(coset_class(&a.mul(&b)).unwrap(), expected);
    }

    #[test]
    fn canonical_forms_are_idempotent(a in gauss(), p in gauss(), q in gauss()) {
        prop_assert_eq!(a.canonical().canonical(), a.canonical());
        prop_assume!(!(p.is_zero() && q.is_zero()));
        let x = ProjectivePoint::new(p, q).unwrap();
        prop_assert_eq!(ProjectivePoint::new(x.p(), x.q()).unwrap(), x);
        for u in GaussianInt::UNITS {
            prop_assert_eq!(ProjectivePoint::new(p * u, q * u).unwrap(), x);
        }
        let g = gauss_gcd(p, q).unwrap();
        prop_assert!(g.divides(p) && g.divides(q));
        prop_assert!(lax_canonical(x.as_vec()).is_ok());
    }

    #[test]
    fn circle_ignores_real_change_of_basis(s in any::<u64>(), l in 0usize..10, p in real_unimodular()) {
        let m = matrix(s, l);
        let c = circle_from_matrix(&m).unwrap();
        prop_assert_eq!(circle_from_matrix(&m.mul(&p)).unwrap(), c);
        let flip = GaussMatrix2::from_rows(GaussianInt::ONE, GaussianInt::ZERO, GaussianInt::ZERO, -GaussianInt::ONE);
        prop_assert_eq!(circle_from_matrix(&m.mul(&p).mul(&flip)).unwrap(), reorient(&c));
    }

    #[test]
    fn spinor_is_equivariant(s1 in any::<u64>(), s2 in any::<u64>(), l1 in 0usize..10, l2 in 0usize..10) {
        let (a, b) = (matrix(s1, l1), matrix(s2, l2));
        prop_assert_eq!(spinor(&a.mul(&b)).unwrap(), spinor(&a).unwrap().mul(&spinor(&b).unwrap()));
        let c = circle_from_matrix(&b).unwrap();
        prop_assert_eq!(lorentz_apply(&spinor(&a).unwrap(), &pedoe(&c)), pedoe(&circle_from_matrix(&a.mul(&b)).unwrap()));
    }

    #[test]
    fn jsonl_round_trips(seeds in prop::collection::vec((any::<u64>(), 0usize..10), 0..20)) {
        let circles: Vec<Circle> = seeds.iter().map(|&(s, l)| circle_from_matrix(&matrix(s, l)).unwrap()).collect();
        prop_assert_eq!(read_jsonl(to_jsonl(&circles).as_bytes()).unwrap(), circles);
    }
}

#[test]
fn components_are_disjoint() {
    let strip = verify::packing(Source::Strip, 40, None).unwrap();
    let coset = verify::packing(Source::Coset(example_coset()), 40, None).unwrap();
    assert!(strip.circles.is_disjoint(&coset.circles));
}

#[test]
fn strip_group_moves_chambers_within_the_strip() {
    let [g, h] = strip_generators();
    let words = [g, h, g.mul(&h), h.mul(&g), g.mul(&g).mul(&h), h.mul(&h).mul(&g).mul(&h)];
    for n in words {
        let seed = lorentz_apply_quadruple(&spinor(&n).unwrap(), &base_quadruple()).key();
        let extent = seed.iter().filter_map(Window::of_disk).fold(default_strip_window(), |a, b| a.hull(&b));
        let bound = seed.iter().map(|c| c.b.abs()).max().unwrap();
        let cfg = ExplorationConfig::with_curvature(bound).window(extent);
        let strip = explore_palace(&base_quadruple(), &cfg).unwrap();
        assert!(strip.chambers.contains_key(&seed), "{n}");
    }
}
