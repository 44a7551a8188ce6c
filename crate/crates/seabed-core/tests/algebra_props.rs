use proptest::prelude::*;

use seabed_core::algebra::{golden_phi_pow, COS, SIN};
use seabed_core::{GoldenNumber, LatticePoint};

const PHI: f64 = 1.618_033_988_749_895;
const SIN36: f64 = 0.587_785_252_292_473_1;

fn golden() -> impl Strategy<Value = GoldenNumber> {
    (-10_000i64..10_000, -10_000i64..10_000).prop_map(|(a, b)| GoldenNumber::new(a, b))
}

fn point() -> impl Strategy<Value = LatticePoint> {
    prop::array::uniform4(-1000i64..1000).prop_map(|c| LatticePoint::new(c[0], c[1], c[2], c[3]))
}

fn mul(x: GoldenNumber, y: GoldenNumber) -> GoldenNumber {
    x.checked_mul(y).unwrap()
}

fn add(x: GoldenNumber, y: GoldenNumber) -> GoldenNumber {
    x.checked_add(y).unwrap()
}

fn near(a: f64, b: f64) -> bool {
    (a - b).abs() <= 1e-9 * (1.0 + a.abs().max(b.abs()))
}

/// Complex coordinates straight from the trig tables.
fn complex(p: LatticePoint) -> (f64, f64) {
    let mut z = (0.0, 0.0);
    for k in 0..4 {
        z.0 += p.c[k] as f64 * COS[k];
        z.1 += p.c[k] as f64 * SIN[k];
    }
    z
}

proptest! {
    #[test]
    fn golden_ring_laws(x in golden(), y in golden(), z in golden()) {
        prop_assert_eq!(add(x, y), add(y, x));
        prop_assert_eq!(mul(x, y), mul(y, x));
        prop_assert_eq!(mul(mul(x, y), z), mul(x, mul(y, z)));
        prop_assert_eq!(mul(x, add(y, z)), add(mul(x, y), mul(x, z)));
        prop_assert_eq!(mul(x, GoldenNumber::ONE), x);
    }

    #[test]
    fn golden_agrees_with_floats(x in golden(), y in golden()) {
        prop_assert!(near(x.to_f64(), x.a as f64 + x.b as f64 * PHI));
        prop_assert!(near(mul(x, y).to_f64(), x.to_f64() * y.to_f64()));
    }

    #[test]
    fn golden_sign_and_order_are_exact(x in golden(), y in golden()) {
        let v = x.a as f64 + x.b as f64 * PHI;
        if v.abs() > 1e-6 {
            prop_assert_eq!(x.signum(), if v > 0.0 { 1 } else { -1 });
        }
        let d = y.checked_sub(x).unwrap();
        prop_assert_eq!(x < y, d.signum() > 0);
        prop_assert_eq!(x == y, d.is_zero());
    }

    #[test]
    fn phi_powers_are_fibonacci(n in 2u32..60) {
        let s = add(golden_phi_pow(n - 1).unwrap(), golden_phi_pow(n - 2).unwrap());
        prop_assert_eq!(golden_phi_pow(n).unwrap(), s);
    }

    #[test]
    fn rotation_is_a_group_action(p in point(), j in -20i64..20, k in -20i64..20) {
        prop_assert_eq!(p.rotate(j).rotate(k), p.rotate(j + k));
        prop_assert_eq!(p.rotate(10), p);
        prop_assert_eq!(p.rotate(5), -p);
    }

    #[test]
    fn embedding_is_a_ring_map(p in point(), q in point()) {
        let (a, b) = (complex(p), complex(q));
        let w = complex(p.checked_mul(q).unwrap());
        prop_assert!(near(w.0, a.0 * b.0 - a.1 * b.1));
        prop_assert!(near(w.1, a.0 * b.1 + a.1 * b.0));
        prop_assert_eq!(p.embed(), a);
    }

    #[test]
    fn conjugation_is_an_involution(p in point()) {
        let c = p.checked_conj().unwrap();
        prop_assert_eq!(c.checked_conj().unwrap(), p);
        let (z, w) = (complex(p), complex(c));
        prop_assert!(near(z.0, w.0) && near(z.1, -w.1));
    }

    #[test]
    fn cross_and_dot_match_floats(p in point(), q in point()) {
        let (a, b) = (complex(p), complex(q));
        let cr = p.cross(q).unwrap();
        prop_assert!(near(cr.to_f64(), (a.0 * b.1 - a.1 * b.0) / SIN36));
        prop_assert_eq!(q.cross(p).unwrap(), cr.checked_neg().unwrap());
        prop_assert!(p.cross(p).unwrap().is_zero());
        let d = p.dot2(q).unwrap();
        prop_assert!(near(d.to_f64(), 2.0 * (a.0 * b.0 + a.1 * b.1)));
        prop_assert_eq!(q.dot2(p).unwrap(), d);
    }

    #[test]
    fn golden_scaling_matches_floats(p in point(), s in golden()) {
        let (a, w) = (complex(p), complex(p.scale_golden(s).unwrap()));
        let f = s.to_f64();
        prop_assert!(near(w.0, a.0 * f) && near(w.1, a.1 * f));
    }
}
