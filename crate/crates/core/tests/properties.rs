//! Property tests of the algebraic invariants, driven by proptest.

use proptest::prelude::*;

use resforge::arith::{divisors, parse_elem, power_residue_char, LocalField};
use resforge::extension::{cocycle, comm_symbol_scalar, corrected_symbol};
use resforge::lattice::{lat_includes, lat_intersect, lat_sum, matrix, rel_dim, Lattice};
use resforge::muset::{aut_compose, aut_delta, aut_inverse, MuSet, MuSetAut};
use resforge::symbols::power_residue_symbol;
use resforge::torsor::DetCtx;
use resforge::verify::{gen, random_module_aut, run_suite, Suite, VerifyConfig};
use resforge::lattice::FiniteModule;

fn small_field() -> impl Strategy<Value = LocalField> {
    prop::sample::select(vec![(3u64, 1u32), (5, 1), (7, 1), (13, 1), (3, 2), (2, 2)])
        .prop_map(|(p, f)| LocalField::new(p, f).unwrap())
}

fn odd_prime_field() -> impl Strategy<Value = LocalField> {
    prop::sample::select(vec![3u64, 5, 7]).prop_map(|p| LocalField::new(p, 1).unwrap())
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn valuations_add_and_division_undoes_multiplication(lf in small_field(), seed: u64) {
        let mut rng = gen::rng(seed);
        let prec = 6.min(lf.nmax());
        let a = gen::kelem(&lf, &mut rng, 4, prec);
        let b = gen::kelem(&lf, &mut rng, 4, prec);
        let ab = lf.k_mul(&a, &b);
        prop_assert_eq!(ab.valuation().unwrap(), a.valuation().unwrap() + b.valuation().unwrap());
        let back = lf.k_div(&ab, &b).unwrap();
        prop_assert!(lf.k_approx_eq(&back, &a));
    }

    #[test]
    fn formatting_round_trips(lf in small_field(), seed: u64) {
        let mut rng = gen::rng(seed);
        let a = gen::kelem(&lf, &mut rng, 3, 5.min(lf.nmax()));
        let again = parse_elem(&lf, &lf.format(&a), a.prec()).unwrap();
        prop_assert_eq!(again, a);
    }

    #[test]
    fn residue_character_is_multiplicative(lf in small_field(), x in 1u32..1000, y in 1u32..1000) {
        let k = &lf.residue;
        let (x, y) = (1 + x % (k.q() as u32 - 1), 1 + y % (k.q() as u32 - 1));
        for n in divisors(k.q() - 1) {
            let lhs = power_residue_char(k, k.mul(x, y), n).unwrap();
            let rhs = power_residue_char(k, x, n).unwrap().mul(&power_residue_char(k, y, n).unwrap());
            prop_assert_eq!(lhs, rhs);
        }
    }

    #[test]
    fn delta_is_a_class_function_and_inverts(n in 1u64..=6, t in 0usize..=20, seed: u64) {
        let mut rng = gen::rng(seed);
        let x = MuSet::new(n, t);
        let f = MuSetAut::random(&x, &mut rng);
        let h = MuSetAut::random(&x, &mut rng);
        let conj = aut_compose(&aut_compose(&h, &f).unwrap(), &aut_inverse(&h)).unwrap();
        prop_assert_eq!(aut_delta(&conj), aut_delta(&f));
        prop_assert!(aut_delta(&f).mul(&aut_delta(&aut_inverse(&f))).is_one());
    }

    #[test]
    fn canonical_basis_ignores_the_chosen_basis(lf in odd_prime_field(), m in 1usize..=3, seed: u64) {
        let mut rng = gen::rng(seed);
        let b = gen::gl(&lf, &mut rng, m, 2);
        let u = gen::gl_o(&lf, &mut rng, m);
        let l1 = Lattice::from_basis(&lf, &b).unwrap();
        let l2 = Lattice::from_basis(&lf, &matrix::mul(&lf, &b, &u)).unwrap();
        prop_assert_eq!(l1, l2);
    }

    #[test]
    fn sums_and_intersections_are_lattice_operations(lf in odd_prime_field(), m in 1usize..=3, seed: u64) {
        let mut rng = gen::rng(seed);
        let a = gen::lattice(&lf, &mut rng, m, 2);
        let b = gen::lattice(&lf, &mut rng, m, 2);
        let meet = lat_intersect(&lf, &a, &b).unwrap();
        let join = lat_sum(&lf, &a, &b).unwrap();
        prop_assert_eq!(&meet, &lat_intersect(&lf, &b, &a).unwrap());
        prop_assert_eq!(&join, &lat_sum(&lf, &b, &a).unwrap());
        prop_assert!(lat_includes(&lf, &join, &meet).unwrap());
        // absorption
        prop_assert_eq!(lat_sum(&lf, &a, &meet).unwrap(), a.clone());
        prop_assert_eq!(lat_intersect(&lf, &a, &join).unwrap(), a.clone());
        for n in divisors(lf.q() - 1) {
            prop_assert_eq!(rel_dim(&lf, &a, &b, n).unwrap(), -rel_dim(&lf, &b, &a, n).unwrap());
        }
    }

    #[test]
    fn filtration_and_enumeration_agree(lf in small_field(), rank in 1usize..=2, e in 1u32..=2, seed: u64) {
        let mut rng = gen::rng(seed);
        let t = FiniteModule::new(&lf, &vec![e; rank]);
        let g = random_module_aut(&lf, &mut rng, &t);
        for n in divisors(lf.q() - 1) {
            let dc = DetCtx::new(lf.clone(), n).unwrap();
            prop_assert_eq!(dc.det_of_module_aut(&g).unwrap(), dc.det_of_module_aut_brute(&g).unwrap());
        }
    }

    #[test]
    fn direct_symbol_is_bimultiplicative(lf in odd_prime_field(), seed: u64) {
        let mut rng = gen::rng(seed);
        let prec = 8;
        let [a, a2, b] = [0; 3].map(|_| gen::kelem(&lf, &mut rng, 2, prec));
        for n in divisors(lf.q() - 1) {
            let s = |x, y| power_residue_symbol(&lf, x, y, n).unwrap();
            let aa2 = lf.k_mul(&a, &a2);
            prop_assert_eq!(s(&aa2, &b), s(&a, &b).mul(&s(&a2, &b)));
            prop_assert_eq!(s(&b, &aa2), s(&b, &a).mul(&s(&b, &a2)));
            prop_assert!(s(&a, &b).mul(&s(&b, &a)).is_one());
        }
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(24))]

    #[test]
    fn scalar_cocycle_identity(lf in odd_prime_field(), seed: u64) {
        let mut rng = gen::rng(seed);
        let [f, g, h] = [0; 3].map(|_| vec![vec![gen::kelem(&lf, &mut rng, 2, lf.nmax())]]);
        for n in divisors(lf.q() - 1) {
            let dc = DetCtx::new(lf.clone(), n).unwrap();
            let gh = matrix::mul(&lf, &g, &h);
            let fg = matrix::mul(&lf, &f, &g);
            let lhs = cocycle(&dc, &f, &gh).unwrap().mul(&cocycle(&dc, &g, &h).unwrap());
            let rhs = cocycle(&dc, &fg, &h).unwrap().mul(&cocycle(&dc, &f, &g).unwrap());
            prop_assert_eq!(lhs, rhs);
        }
    }

    #[test]
    fn extension_symbol_matches_direct_symbol(lf in odd_prime_field(), seed: u64) {
        let mut rng = gen::rng(seed);
        let a = gen::kelem(&lf, &mut rng, 2, lf.nmax());
        let b = gen::kelem(&lf, &mut rng, 2, lf.nmax());
        for n in divisors(lf.q() - 1) {
            let dc = DetCtx::new(lf.clone(), n).unwrap();
            prop_assert_eq!(corrected_symbol(&dc, &a, &b).unwrap(), power_residue_symbol(&lf, &a, &b, n).unwrap());
            prop_assert!(comm_symbol_scalar(&dc, &a, &a).unwrap().is_one());
        }
    }
}

#[test]
fn identical_seeds_give_identical_reports() {
    let cfg = VerifyConfig {
        p: 5,
        samples: 10,
        ..VerifyConfig::default()
    };
    for suite in [Suite::Muset, Suite::Lattice, Suite::Torsor] {
        let a = serde_json::to_string(&run_suite(suite, &cfg).unwrap()).unwrap();
        let b = serde_json::to_string(&run_suite(suite, &cfg).unwrap()).unwrap();
        assert_eq!(a, b);
    }
}
