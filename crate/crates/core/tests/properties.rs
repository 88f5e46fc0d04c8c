use num_integer::Integer;
use proptest::prelude::*;

use kunneth::abelian::tor_order_oracle;
use kunneth::complex::builtin::point;
use kunneth::complex::{tensor_fp, ComplexDocument};
use kunneth::exactness::{interchange, FlipPair};
use kunneth::linalg::smith_normal_form;
use kunneth::random::{
    random_fp_complex, random_free_complex, random_matrix, random_torsion_complex, seeded, ComplexParams, FpParams,
};
use kunneth::{ChainMap, FpAbGroup, Int, IntMatrix, KunnethPair, KunnethSplitting, TorProduct};

fn small_matrix() -> impl Strategy<Value = IntMatrix> {
    (1usize..=4, 1usize..=4, any::<u64>()).prop_map(|(r, c, s)| random_matrix(&mut seeded(s), r, c, 9))
}

fn cyclic_orders() -> impl Strategy<Value = Vec<i64>> {
    prop::collection::vec(0i64..=12, 0..=3)
}

fn group(orders: &[i64]) -> FpAbGroup {
    FpAbGroup::from_orders(&orders.iter().map(|&x| Int::from(x)).collect::<Vec<_>>())
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn smith_form_factors_the_matrix(a in small_matrix()) {
        let d = smith_normal_form(&a);
        prop_assert_eq!(d.u.mul(&a).mul(&d.v), d.s.clone());
        prop_assert_eq!(d.u.mul(&d.u_inv), IntMatrix::identity(a.rows()));
        prop_assert_eq!(d.v.mul(&d.v_inv), IntMatrix::identity(a.cols()));
        let f = d.invariant_factors();
        for w in f.windows(2) {
            prop_assert!(w[0] > Int::from(0) && w[1].is_multiple_of(&w[0]));
        }
    }

    #[test]
    fn tor_order_matches_gcd_formula(x in cyclic_orders(), y in cyclic_orders()) {
        let (a, b) = (group(&x), group(&y));
        let t = TorProduct::new(&a, &b);
        let s = TorProduct::new(&b, &a);
        prop_assert_eq!(t.group().order(), Some(tor_order_oracle(&a, &b)));
        prop_assert_eq!(t.group().canonical_orders(), s.group().canonical_orders());
    }

    #[test]
    fn documents_round_trip(seed in any::<u64>()) {
        let c = random_fp_complex(&mut seeded(seed), &FpParams::default());
        let text = ComplexDocument::from_complex("c", &c).render();
        let back = ComplexDocument::parse(&text).unwrap();
        prop_assert_eq!(back.render(), text);
        prop_assert!(back.to_complex().unwrap().same_data(&c));
    }

    #[test]
    fn tensoring_with_a_point_keeps_homology(seed in any::<u64>()) {
        let c = random_fp_complex(&mut seeded(seed), &FpParams::default());
        let t = tensor_fp(&c, point().as_fp());
        for n in c.degrees() {
            prop_assert_eq!(t.complex.homology(n).group.canonical_orders().to_vec(), c.homology(n).group.canonical_orders().to_vec());
        }
    }

    #[test]
    fn interchange_is_an_involution(seed in any::<u64>()) {
        let mut rng = seeded(seed);
        let p = ComplexParams::new(3, 2, 6);
        let (c, d) = (random_torsion_complex(&mut rng, &p), random_torsion_complex(&mut rng, &p));
        let fp = FlipPair::new(&c, &d).unwrap();
        let back = interchange(fp.backward.tensor(), fp.forward.tensor()).unwrap();
        prop_assert!(fp.t.then(&back).equals(&ChainMap::identity(fp.forward.product())));
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(24))]

    #[test]
    fn lambda_splits_mu(seed in any::<u64>()) {
        let mut rng = seeded(seed);
        let p = ComplexParams::new(3, 3, 6);
        let (c, d) = (random_free_complex(&mut rng, &p), random_free_complex(&mut rng, &p));
        let pair = KunnethPair::new(c.as_fp(), d.as_fp()).unwrap();
        let s = KunnethSplitting::weak(c.as_fp(), d.as_fp());
        for n in pair.product().degrees() {
            let dec = pair.decomposition(n, Some(&s)).unwrap();
            prop_assert!(dec.check().is_ok());
            prop_assert!(dec.splitting_map().unwrap().is_iso());
        }
    }
}
