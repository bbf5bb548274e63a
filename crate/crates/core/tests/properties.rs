use proptest::prelude::*;
use sl2pf::certificate::{omega_eval, Certificate};
use sl2pf::decompose::{decompose, DecomposeOptions};
use sl2pf::selftest::field_of_order;
use sl2pf::words::{Side, Word};
use sl2pf::{Error, Mat2, Poly, PolyRing};

fn ring(q: u32) -> PolyRing {
    PolyRing::new(field_of_order(q))
}

fn poly(r: &PolyRing, c: &[i64]) -> Poly {
    r.from_ints(c)
}

fn coeffs() -> impl Strategy<Value = Vec<i64>> {
    prop::collection::vec(0i64..9, 0..4)
}

fn factors() -> impl Strategy<Value = Vec<(bool, Vec<i64>)>> {
    prop::collection::vec((any::<bool>(), coeffs()), 1..6)
}

fn word(r: &PolyRing, f: &[(bool, Vec<i64>)]) -> Word {
    Word::raw(f.iter().map(|(up, c)| (if *up { Side::Upper } else { Side::Lower }, poly(r, c))).collect())
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn xgcd_is_a_bezout_identity(q in prop::sample::select(vec![3u32, 5, 9]), f in coeffs(), g in coeffs()) {
        let r = ring(q);
        let (f, g) = (poly(&r, &f), poly(&r, &g));
        if f.is_zero() && g.is_zero() {
            prop_assert!(matches!(r.xgcd(&f, &g), Err(Error::BothZero)));
            return Ok(());
        }
        let (d, s, t) = r.xgcd(&f, &g).unwrap();
        prop_assert_eq!(r.add(&r.mul(&s, &f), &r.mul(&t, &g)), d.clone());
        if !d.is_zero() {
            prop_assert!(d.is_monic());
            prop_assert!(r.divides(&d, &f) && r.divides(&d, &g));
        }
    }

    #[test]
    fn parse_inverts_format(q in prop::sample::select(vec![3u32, 5, 9]), f in coeffs()) {
        let r = ring(q);
        let f = poly(&r, &f);
        prop_assert_eq!(r.parse(&r.format(&f)).unwrap(), f);
    }

    #[test]
    fn words_evaluate_to_sl2(q in prop::sample::select(vec![3u32, 5, 9]), f in factors(), g in factors()) {
        let r = ring(q);
        let (x, y) = (word(&r, &f), word(&r, &g));
        let m = x.eval(&r);
        prop_assert!(m.is_sl2(&r));
        prop_assert_eq!(x.invert(&r).eval(&r).mul(&r, &m), Mat2::identity());
        prop_assert_eq!(x.compose(&r, &y).unwrap().eval(&r), m.mul(&r, &y.eval(&r)));
    }

    #[test]
    fn certificates_round_trip_or_refuse(q in prop::sample::select(vec![3u32, 5]), f in factors(), seed in 0u64..1000) {
        let r = ring(q);
        let alpha = word(&r, &f).eval(&r);
        match decompose(&r, &alpha, seed, &DecomposeOptions::default()) {
            Ok((cert, _)) => {
                prop_assert_eq!(cert.flatten().len(), 52);
                prop_assert_eq!(omega_eval(&r, &cert).unwrap(), alpha);
                let (r2, back) = Certificate::from_json(&cert.to_json(&r)).unwrap();
                prop_assert_eq!(&back, &cert);
                prop_assert_eq!(Certificate::unflatten(&r2, &cert.flatten()).unwrap(), cert);
            }
            Err(e) => prop_assert!(matches!(e, Error::DegreeCapExceeded { .. }), "{}", e),
        }
    }
}
