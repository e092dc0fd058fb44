//! Seeded generators for property suites.
//!
//! Every generator takes the caller's RNG, so a run is reproduced by its seed.

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::hom_algebras::HomLieAlgebra;
use crate::hom_algebras::check_hom_jacobi;
use crate::multilinear::{ExtIndex, QMatrix, StructureConstants};
use crate::poly::{MultiIndex, Polynomial};
use crate::poly_geometry::{PolyForm, PolyMultivectorField};
use crate::rational::{frac, int, Rational};

pub type SeededRng = ChaCha8Rng;

pub fn seeded(seed: u64) -> SeededRng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// `p/q` with `|p| <= 3`, `1 <= q <= 3`.
pub fn small_rational(rng: &mut impl Rng) -> Rational {
    frac(rng.gen_range(-3..=3), rng.gen_range(1..=3))
}

fn nonzero_rational(rng: &mut impl Rng) -> Rational {
    loop {
        let q = small_rational(rng);
        if q != int(0) {
            return q;
        }
    }
}

/// At most `max_terms` monomials of degree `<= max_degree`.
pub fn polynomial(rng: &mut impl Rng, n: usize, max_degree: u32, max_terms: usize) -> Polynomial {
    let mons = MultiIndex::all_up_to(n, max_degree);
    let count = rng.gen_range(0..=max_terms);
    let mut out = Polynomial::zero(n);
    for _ in 0..count {
        let m = mons.choose(rng).expect("at least the constant monomial").clone();
        out.add_term(m, nonzero_rational(rng));
    }
    out
}

fn graded_terms(rng: &mut impl Rng, n: usize, degree: usize, poly_degree: u32) -> Vec<(ExtIndex, Polynomial)> {
    let words: Vec<ExtIndex> = ExtIndex::all_up_to(n, degree)
        .into_iter()
        .filter(|w| w.degree() == degree)
        .collect();
    let mut out = Vec::new();
    for w in words {
        if rng.gen_bool(0.7) {
            let f = loop {
                let f = polynomial(rng, n, poly_degree, 3);
                if !f.is_zero() {
                    break f;
                }
            };
            out.push((w, f));
        }
    }
    out
}

/// A homogeneous multivector field of the given degree on `Q^n`.
pub fn multivector(rng: &mut impl Rng, n: usize, degree: usize, poly_degree: u32) -> PolyMultivectorField {
    PolyMultivectorField::from_terms(n, graded_terms(rng, n, degree, poly_degree)).expect("indices below n")
}

/// A homogeneous form of the given degree on `Q^n`.
pub fn form(rng: &mut impl Rng, n: usize, degree: usize, poly_degree: u32) -> PolyForm {
    PolyForm::from_terms(n, graded_terms(rng, n, degree, poly_degree)).expect("indices below n")
}

/// Eigenvalues drawn so that products often coincide with other draws.
const EIGENVALUES: [(i64, i64); 6] = [(0, 1), (1, 1), (-1, 1), (2, 1), (1, 2), (4, 1)];

/// A skew bracket and a twisting map with `α[x, y] = [αx, αy]`.
///
/// `α` is `P^-1 diag(λ) P` for a random unipotent `P`, and `[e_i, e_j]` of
/// the diagonal model may only have an `e_k` component when
/// `λ_k = λ_i λ_j`. The bracket need not satisfy any Jacobi identity.
pub fn compatible_pair(rng: &mut impl Rng, dim: usize) -> (StructureConstants, QMatrix) {
    let lambda: Vec<Rational> = (0..dim)
        .map(|_| {
            let (p, q) = *EIGENVALUES.choose(rng).expect("nonempty");
            frac(p, q)
        })
        .collect();
    let mut c = StructureConstants::zero(dim);
    for i in 0..dim {
        for j in i + 1..dim {
            for k in 0..dim {
                if lambda[k] == &lambda[i] * &lambda[j] && rng.gen_bool(0.6) {
                    let v = int(rng.gen_range(-2..=2));
                    c.set(i, j, k, v.clone());
                    c.set(j, i, k, -v);
                }
            }
        }
    }
    let alpha = QMatrix::diag(&lambda);
    if dim < 2 || rng.gen_bool(0.5) {
        return (c, alpha);
    }
    let mut p = QMatrix::identity(dim);
    for r in 0..dim {
        for s in r + 1..dim {
            p.set(r, s, int(rng.gen_range(-1..=1)));
        }
    }
    let p_inv = p.inverse().expect("unipotent");
    let conj = |m: &QMatrix| p_inv.mul(m).and_then(|pm| pm.mul(&p)).expect("square");
    let c = c.conjugate(&p, &p_inv).expect("same dimension");
    (c, conj(&alpha))
}

/// A compatible pair that fails hom-Jacobi as a hom-Lie algebra, or `None`
/// when `attempts` draws all satisfy it.
pub fn non_hom_lie_pair(rng: &mut impl Rng, dim: usize, attempts: usize) -> Option<HomLieAlgebra> {
    (0..attempts).find_map(|_| {
        let (c, alpha) = compatible_pair(rng, dim);
        let g = HomLieAlgebra::new(c, alpha).expect("square");
        (!check_hom_jacobi(&g).passed).then_some(g)
    })
}
