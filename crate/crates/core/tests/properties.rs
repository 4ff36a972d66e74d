//! Randomized identities for the products and bilinear forms induced by a
//! 3-form. Every suite runs a fixed number of cases from a fixed seed.

mod common;

use common::{apply, config, form, ints, pair, scale};
use proptest::prelude::*;
use stabform::classify::{orbit_sample, random_form};
use stabform::exterior::{
    interior, pullback, vector_from_coform, wedge, KForm, LinMap, TopFrame, VectorN,
};
use stabform::invariants::{
    bilinear7, compatibility_defect, hitchin_endo, lie_bracket, malcev_product, s_mult, stabilizer,
    trace_form, trace_form_by_constants, trace_form_by_operators,
};
use stabform::Scalar;

const PHI: [&str; 3] = ["phi1", "phi2", "phi3"];
const OMEGA: [&str; 2] = ["omega1", "omega2"];
const GAMMA: [&str; 2] = ["gamma1", "gamma2"];

fn group_element(base: &KForm, seed: u64) -> (LinMap, KForm) {
    orbit_sample(base, seed, 1).unwrap().pop().unwrap()
}

fn vector(n: usize) -> impl Strategy<Value = Vec<i64>> {
    prop::collection::vec(-3i64..=3, n)
}

proptest! {
    #![proptest_config(config(32, 0x5eed_0001))]

    /// (X·Y) under g*ω equals det(g)·g⁻¹((gX)·(gY)) under ω.
    #[test]
    fn product_equivariance(which in 0usize..3, seed: u64, x in vector(8), y in vector(8)) {
        let omega = form(PHI[which]);
        let (g, moved) = group_element(omega, seed);
        let (x, y) = (ints(&x), ints(&y));
        let lhs = s_mult(&moved).unwrap().product(&x, &y);
        let inner = s_mult(omega).unwrap().product(&apply(&g, &x), &apply(&g, &y));
        let rhs = scale(&g.det(), &apply(&g.inverse().unwrap(), &inner));
        prop_assert_eq!(lhs, rhs);
    }

    /// B under g*ω equals det(g)²·B(gX, gY) under ω.
    #[test]
    fn trace_form_equivariance(which in 0usize..3, seed: u64, x in vector(8), y in vector(8)) {
        let omega = form(PHI[which]);
        let (g, moved) = group_element(omega, seed);
        let (x, y) = (ints(&x), ints(&y));
        let lhs = pair(&trace_form(&moved).unwrap().gram, &x, &y);
        let base = pair(&trace_form(omega).unwrap().gram, &apply(&g, &x), &apply(&g, &y));
        prop_assert_eq!(lhs, g.det().pow(2) * base);
    }

    /// det(g)²·[X,Y] under g*φ equals g⁻¹[gX, gY] under φ.
    #[test]
    fn bracket_equivariance(which in 0usize..3, seed: u64, x in vector(8), y in vector(8)) {
        let phi = form(PHI[which]);
        let (g, moved) = group_element(phi, seed);
        let (x, y) = (ints(&x), ints(&y));
        let lhs = scale(&g.det().pow(2), &lie_bracket(&moved).unwrap().product(&x, &y));
        let inner = lie_bracket(phi).unwrap().product(&apply(&g, &x), &apply(&g, &y));
        prop_assert_eq!(lhs, apply(&g.inverse().unwrap(), &inner));
    }

    /// The 7-dimensional form picks up one factor of det(g); the Malcev
    /// product correspondingly loses one.
    #[test]
    fn dim7_equivariance(which in 0usize..2, seed: u64, x in vector(7), y in vector(7)) {
        let phi = form(OMEGA[which]);
        let (g, moved) = group_element(phi, seed);
        let (x, y) = (ints(&x), ints(&y));
        let (gx, gy) = (apply(&g, &x), apply(&g, &y));
        let lhs = pair(&bilinear7(&moved).unwrap().gram, &x, &y);
        prop_assert_eq!(lhs, g.det() * pair(&bilinear7(phi).unwrap().gram, &gx, &gy));

        let lhs = scale(&g.det(), &malcev_product(&moved).unwrap().product(&x, &y));
        let inner = malcev_product(phi).unwrap().product(&gx, &gy);
        prop_assert_eq!(lhs, apply(&g.inverse().unwrap(), &inner));
    }

    /// λ(g*γ) = det(g)²·λ(γ), so its sign is an orbit invariant.
    #[test]
    fn hitchin_scaling(which in 0usize..2, seed: u64) {
        let gamma = form(GAMMA[which]);
        let (g, moved) = group_element(gamma, seed);
        let lambda = hitchin_endo(gamma).unwrap().lambda_sq.unwrap();
        let moved_lambda = hitchin_endo(&moved).unwrap().lambda_sq.unwrap();
        prop_assert_eq!(moved_lambda, g.det().pow(2) * lambda);
    }

    /// B(ab, c) = B(a, bc) on all basis triples, along whole orbits.
    #[test]
    fn compatibility_on_orbits(which in 0usize..3, seed: u64) {
        let (_, moved) = group_element(form(PHI[which]), seed);
        let sc = s_mult(&moved).unwrap();
        let gram = trace_form_by_operators(&sc).unwrap();
        prop_assert!(compatibility_defect(&sc, &gram).is_empty());
    }

    /// B(cω) = c⁶·B(ω).
    #[test]
    fn trace_form_scaling(which in 0usize..3, num in -5i64..=5, den in 1i64..=4) {
        prop_assume!(num != 0);
        let c = Scalar::ratio(num, den);
        let omega = form(PHI[which]);
        let scaled = trace_form(&omega.scale(&c)).unwrap().gram;
        prop_assert_eq!(scaled, trace_form(omega).unwrap().gram.scale(&c.pow(6)));
    }

    /// v⌟(a∧b) = (v⌟a)∧b + (−1)^p a∧(v⌟b) for a of degree p.
    #[test]
    fn interior_is_antiderivation(
        n in 3usize..=7, p in 1usize..=3, q in 1usize..=3, seed: u64, v in vector(7),
    ) {
        prop_assume!(p + q <= n);
        let a = random_form(n, p, 5, -3..=3, seed);
        let b = random_form(n, q, 5, -3..=3, seed.wrapping_add(1));
        let v = VectorN::new(ints(&v[..n]));
        let lhs = interior(&v, &wedge(&a, &b).unwrap()).unwrap();
        let first = wedge(&interior(&v, &a).unwrap(), &b).unwrap();
        let second = wedge(&a, &interior(&v, &b).unwrap()).unwrap();
        let sign = Scalar::from_int(if p % 2 == 0 { 1 } else { -1 });
        prop_assert_eq!(lhs, first.add(&second.scale(&sign)).unwrap());
    }

    /// u ↦ u⌟θ ↦ u.
    #[test]
    fn coform_round_trip(n in 1usize..=9, u in vector(9)) {
        let frame = TopFrame::new(n);
        let u = VectorN::new(ints(&u[..n]));
        let eta = interior(&u, &frame.theta()).unwrap();
        prop_assert_eq!(vector_from_coform(&eta, &frame).unwrap(), u);
    }

    /// Trace of composed operators agrees with the structure-constant sum,
    /// for arbitrary (mostly degenerate) forms as well as stable ones.
    #[test]
    fn trace_routes_agree(seed: u64, terms in 1usize..=20) {
        let random = random_form(8, 3, terms, -2..=2, seed);
        let (_, moved) = group_element(form(PHI[(seed % 3) as usize]), seed);
        for omega in [random, moved] {
            let sc = s_mult(&omega).unwrap();
            prop_assert_eq!(
                trace_form_by_operators(&sc).unwrap(),
                trace_form_by_constants(&sc)
            );
        }
    }
}

proptest! {
    #![proptest_config(config(25, 0x5eed_0002))]

    /// Stabilizers of stable forms lie in sl(n).
    #[test]
    fn stabilizers_are_traceless(which in 0usize..7, seed: u64) {
        let names = ["gamma1", "gamma2", "omega1", "omega2", "phi1", "phi2", "phi3"];
        let base = form(names[which]);
        let (_, moved) = group_element(base, seed);
        let report = stabilizer(&moved).unwrap();
        prop_assert!(report.all_traceless);
        prop_assert_eq!(report.dim, stabilizer(base).unwrap().dim);
        for a in &report.basis {
            prop_assert!(stabilizer_annihilates(a, &moved));
        }
    }
}

fn stabilizer_annihilates(a: &LinMap, gamma: &KForm) -> bool {
    stabform::exterior::lie_action(a, gamma).unwrap().is_zero()
}

#[test]
fn compatibility_on_normal_forms() {
    for name in PHI.iter().chain(["rho3"].iter()) {
        let sc = s_mult(form(name)).unwrap();
        let gram = trace_form(form(name)).unwrap().gram;
        assert!(compatibility_defect(&sc, &gram).is_empty(), "{name}");
    }
}

#[test]
fn trace_routes_agree_in_dimension_11() {
    for seed in 0..4 {
        let omega = random_form(11, 3, 30, -1..=1, seed);
        let sc = s_mult(&omega).unwrap();
        assert_eq!(
            trace_form_by_operators(&sc).unwrap(),
            trace_form_by_constants(&sc)
        );
    }
}

#[test]
fn pullback_composes() {
    let phi = form("phi2");
    let samples = orbit_sample(phi, 9, 6).unwrap();
    for pair in samples.windows(2) {
        let (g, h) = (&pair[0].0, &pair[1].0);
        // (gh)*φ = h*(g*φ)
        let lhs = pullback(&g.compose(h).unwrap(), phi).unwrap();
        let rhs = pullback(h, &pullback(g, phi).unwrap()).unwrap();
        assert_eq!(lhs, rhs);
    }
}
