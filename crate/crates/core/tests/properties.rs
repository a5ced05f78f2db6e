//! Property tests over the algebraic identities and the JSON encodings.

use proptest::prelude::*;

use sl2o::invariants::{det_rho, f_ab, mu, Rho};
use sl2o::lorentz::{lorentz_form, LorentzVector};
use sl2o::octonion::Octonion;
use sl2o::twistor::Twistor;

fn oct_strategy() -> impl Strategy<Value = Octonion> {
    prop::array::uniform8(-1.0f64..1.0).prop_map(Octonion)
}

fn twistor_strategy() -> impl Strategy<Value = Twistor> {
    (oct_strategy(), oct_strategy()).prop_map(|(m, p)| Twistor::primal(m, p))
}

fn rho_strategy() -> impl Strategy<Value = Rho> {
    (twistor_strategy(), twistor_strategy()).prop_map(|(a, b)| Rho::new(a, b).unwrap())
}

proptest! {
    #[test]
    fn norm_is_multiplicative(x in oct_strategy(), y in oct_strategy()) {
        let lhs = (x * y).norm();
        let rhs = x.norm() * y.norm();
        prop_assert!((lhs - rhs).abs() <= 1e-12 * rhs.max(1.0));
    }

    #[test]
    fn alternativity(x in oct_strategy(), y in oct_strategy()) {
        let d = x * (x * y) - (x * x) * y;
        prop_assert!(d.norm() <= 1e-12 * (x.norm_sq() * y.norm()).max(1.0));
    }

    #[test]
    fn conjugation_reverses_products(x in oct_strategy(), y in oct_strategy()) {
        let d = (x * y).conj() - y.conj() * x.conj();
        prop_assert!(d.norm() <= 1e-12 * (x.norm() * y.norm()).max(1.0));
    }

    #[test]
    fn f_ab_is_symmetric(a in twistor_strategy(), b in twistor_strategy()) {
        let fab = f_ab(&a, &b);
        let fba = f_ab(&b, &a);
        prop_assert!(fab.sub(&fba).euclid_norm() <= 1e-13);
    }

    #[test]
    fn det_is_quartic_and_nonnegative(r in rho_strategy(), t in 0.25f64..4.0) {
        let d = det_rho(&r);
        prop_assert!(d >= -1e-10 * r.norm().powi(4));
        let scaled = det_rho(&r.scale(t));
        prop_assert!((scaled - t.powi(4) * d).abs() <= 1e-10 * (t.powi(4) * d.abs()).max(1.0));
    }

    #[test]
    fn mu_is_minus_three_det(r in rho_strategy()) {
        prop_assert!((mu(&r) + 3.0 * det_rho(&r)).abs() <= 1e-10 * mu(&r).abs().max(1.0));
    }

    #[test]
    fn lorentz_form_polarizes(
        a1 in -1.0f64..1.0, c1 in -1.0f64..1.0, b1 in oct_strategy(),
        a2 in -1.0f64..1.0, c2 in -1.0f64..1.0, b2 in oct_strategy(),
    ) {
        let f = LorentzVector::new(a1, b1, c1);
        let g = LorentzVector::new(a2, b2, c2);
        let sum = f.add(&g);
        let lhs = sum.norm_l();
        let rhs = f.norm_l() + 2.0 * lorentz_form(&f, &g) + g.norm_l();
        prop_assert!((lhs - rhs).abs() <= 1e-12 * lhs.abs().max(1.0));
    }

    #[test]
    fn rho_json_roundtrip_and_matrix_form(r in rho_strategy()) {
        let text = serde_json::to_string(&r).unwrap();
        let back: Rho = serde_json::from_str(&text).unwrap();
        prop_assert!(back.sub(&r).norm() <= 1e-15);

        // the matrix encoding parses to the same point
        let e = r.entries();
        let as_matrix = serde_json::json!({ "matrix": [[e[0][0], e[0][1]], [e[1][0], e[1][1]]] });
        let from_matrix: Rho = serde_json::from_value(as_matrix).unwrap();
        prop_assert!(from_matrix.sub(&r).norm() <= 1e-15);
    }
}
