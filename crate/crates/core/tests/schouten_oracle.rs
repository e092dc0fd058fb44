#[path = "support/superfunction.rs"]
mod superfunction;

use homcat_core::poly_geometry::{de_rham_d, lie_derivative, schouten};
use homcat_core::random::{form, multivector, seeded};
use homcat_core::Rational;
use num_traits::One;
use superfunction::schouten_oracle;

fn sign(neg: bool) -> Rational {
    if neg {
        -Rational::one()
    } else {
        Rational::one()
    }
}

#[test]
fn schouten_matches_superfunction_oracle() {
    let mut nonzero = 0;
    for seed in 0..40u64 {
        let mut rng = seeded(seed);
        let n = 1 + (seed % 3) as usize;
        let p = 1 + (seed as usize / 3) % n;
        let q = 1 + (seed as usize / 7) % n;
        let x = multivector(&mut rng, n, p.min(3), 2);
        let y = multivector(&mut rng, n, q.min(3), 2);
        let got = schouten(&x, &y).unwrap();
        assert_eq!(got, schouten_oracle(&x, &y), "seed {seed}: [{x}, {y}]");
        nonzero += usize::from(!got.is_zero());
    }
    assert!(nonzero >= 20, "only {nonzero} nonzero brackets");
}

#[test]
fn schouten_is_graded_skew_and_leibniz() {
    for seed in 100..130u64 {
        let mut rng = seeded(seed);
        let n = 2 + (seed % 2) as usize;
        let (p, q, r) = (1 + seed as usize % 3, seed as usize / 3 % 3, seed as usize / 9 % 3);
        let (p, q, r) = (p.min(n), q.min(n), r.min(n));
        let x = multivector(&mut rng, n, p, 2);
        let y = multivector(&mut rng, n, q, 2);
        let z = multivector(&mut rng, n, r, 1);
        let xy = schouten(&x, &y).unwrap();
        let yx = schouten(&y, &x).unwrap();
        let s = (p + 1) * (q + 1) % 2 == 1;
        assert_eq!(xy, yx.scale(&-sign(s)), "seed {seed}");
        // [X, Y ∧ Z] = [X, Y] ∧ Z + (-1)^((p-1) q) Y ∧ [X, Z]
        let lhs = schouten(&x, &y.wedge(&z)).unwrap();
        let t = (p + 1) * q % 2 == 1;
        let rhs = xy.wedge(&z).add(&y.wedge(&schouten(&x, &z).unwrap()).scale(&sign(t)));
        assert_eq!(lhs, rhs, "seed {seed}");
    }
}

#[test]
fn d_squared_vanishes_and_commutes_with_lie_derivative() {
    for seed in 200..230u64 {
        let mut rng = seeded(seed);
        let n = 1 + (seed % 3) as usize;
        let w = form(&mut rng, n, seed as usize % (n + 1), 3);
        assert!(de_rham_d(&de_rham_d(&w)).is_zero(), "seed {seed}");
        let x = multivector(&mut rng, n, 1, 2);
        let lhs = lie_derivative(&x, &de_rham_d(&w)).unwrap();
        let rhs = de_rham_d(&lie_derivative(&x, &w).unwrap());
        assert_eq!(lhs, rhs, "seed {seed}");
    }
}
