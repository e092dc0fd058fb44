//! Named example structures shared by tests, the CLI and the bundled files.

use crate::hom_algebras::{composition_hom_associative, composition_hom_lie, HomAssociativeAlgebra, HomLieAlgebra};
use crate::hom_algebroids::{
    action_algebroid, cotangent_algebroid, line_bundle_algebroid, point_algebroid, HomLieAlgebroidModel,
    PhiDerivation,
};
use crate::multilinear::{QMatrix, QVec, StructureConstants};
use crate::poly::{PolySubstitution, Polynomial};
use crate::poly_geometry::{PolyMap, PolyMultivectorField};
use crate::rational::{frac, int};

fn v(dim: usize, coeffs: &[i64]) -> QVec {
    debug_assert_eq!(coeffs.len(), dim);
    QVec::new(coeffs.iter().map(|&c| int(c)).collect())
}

fn x(n: usize, i: usize) -> Polynomial {
    Polynomial::var(n, i)
}

/// `sl2` on `h = e0, e = e1, f = e2` with the identity twist.
pub fn sl2() -> HomLieAlgebra {
    let b = StructureConstants::zero(3)
        .with_skew(0, 1, &v(3, &[0, 2, 0]))
        .with_skew(0, 2, &v(3, &[0, 0, -2]))
        .with_skew(1, 2, &v(3, &[1, 0, 0]));
    HomLieAlgebra::new(b, QMatrix::identity(3)).expect("square")
}

/// `h -> h, e -> 4e, f -> f/4`.
pub fn sl2_automorphism() -> QMatrix {
    QMatrix::diag(&[int(1), int(4), frac(1, 4)])
}

pub fn sl2_composition() -> HomLieAlgebra {
    composition_hom_lie(sl2().bracket(), &sl2_automorphism()).expect("automorphism")
}

/// `[e0, e1] = e2`, identity twist.
pub fn heisenberg() -> HomLieAlgebra {
    let b = StructureConstants::zero(3).with_skew(0, 1, &v(3, &[0, 0, 1]));
    HomLieAlgebra::new(b, QMatrix::identity(3)).expect("square")
}

/// Heisenberg bracket with `α = diag(2, 3, 6)`.
pub fn heisenberg_twisted() -> HomLieAlgebra {
    HomLieAlgebra::new(heisenberg().bracket().clone(), QMatrix::diag(&[int(2), int(3), int(6)])).expect("square")
}

fn non_lie_bracket() -> StructureConstants {
    StructureConstants::zero(3)
        .with_skew(0, 1, &v(3, &[0, 0, 1]))
        .with_skew(0, 2, &v(3, &[1, 0, 0]))
}

/// `[e0, e1] = e2`, `[e0, e2] = e0`, identity twist. The Jacobiator of
/// `(e0, e1, e2)` is `e2`.
pub fn non_lie() -> HomLieAlgebra {
    HomLieAlgebra::new(non_lie_bracket(), QMatrix::identity(3)).expect("square")
}

/// The non-Lie bracket with the projection onto `span(e1)`.
pub fn non_lie_with_abelian_projection() -> (StructureConstants, QMatrix) {
    let mut p = QMatrix::zero(3, 3);
    p.set(1, 1, int(1));
    (non_lie_bracket(), p)
}

fn matrix_product(basis: &[(usize, usize)]) -> StructureConstants {
    StructureConstants::from_basis_fn(basis.len(), |a, b| {
        let ((i, j), (k, l)) = (basis[a], basis[b]);
        let mut out = QVec::zero(basis.len());
        if j == k {
            let c = basis.iter().position(|&e| e == (i, l)).expect("closed under products");
            out = QVec::basis(basis.len(), c);
        }
        out
    })
}

/// `M_2(Q)` on `E11, E12, E21, E22`, identity twist.
pub fn matrix_algebra_2x2() -> HomAssociativeAlgebra {
    HomAssociativeAlgebra::new(matrix_product(&[(0, 0), (0, 1), (1, 0), (1, 1)]), QMatrix::identity(4))
        .expect("square")
}

/// Upper triangular `2x2` matrices on `E11, E12, E22`, composed with
/// conjugation by `[[1, 1], [0, 1]]`.
pub fn upper_triangular_composed() -> HomAssociativeAlgebra {
    let alpha = QMatrix::from_ints(&[&[1, 0, 0], &[-1, 1, 1], &[0, 0, 1]]);
    composition_hom_associative(&matrix_product(&[(0, 0), (0, 1), (1, 1)]), &alpha).expect("automorphism")
}

/// `e0 e0 = e1`, `e1 e0 = e0`, identity twist.
pub fn non_hom_associative() -> HomAssociativeAlgebra {
    let p = StructureConstants::from_entries(2, [((0, 0, 1), int(1)), ((1, 0, 0), int(1))]).expect("in range");
    HomAssociativeAlgebra::new(p, QMatrix::identity(2)).expect("square")
}

/// `∂0 ∧ ∂1` on `Q^2`.
pub fn pi2_bivector() -> PolyMultivectorField {
    PolyMultivectorField::bivector(2, &[(0, 1, Polynomial::one(2))]).expect("in range")
}

/// `(x0 + x1^2, x1)`, which preserves [`pi2_bivector`].
pub fn pi2_map() -> PolyMap {
    PolySubstitution::new(vec![&x(2, 0) + &x(2, 1).pow(2), x(2, 1)]).expect("two images")
}

/// `x1 ∂1∧∂2 + ∂0∧∂1` on `Q^3`; `[π, π] = 2 ∂0∧∂1∧∂2`.
pub fn non_poisson_bivector() -> PolyMultivectorField {
    PolyMultivectorField::bivector(3, &[(1, 2, x(3, 1)), (0, 1, Polynomial::one(3))]).expect("in range")
}

/// `(x0, x1, 0)`.
pub fn projection_map() -> PolyMap {
    PolySubstitution::new(vec![x(3, 0), x(3, 1), Polynomial::zero(3)]).expect("three images")
}

/// `TQ^2` with `φ = id`, `α = id`.
pub fn tangent_plane() -> HomLieAlgebroidModel {
    let id = || vec![vec![Polynomial::one(2), Polynomial::zero(2)], vec![Polynomial::zero(2), Polynomial::one(2)]];
    HomLieAlgebroidModel::new(PolySubstitution::identity(2), id(), id(), std::iter::empty()).expect("shapes")
}

/// Heisenberg acting on `Q^1` through `δ(e0) = ∂`, everything untwisted.
pub fn heisenberg_action() -> HomLieAlgebroidModel {
    let phi = PolySubstitution::identity(1);
    let delta = vec![
        PhiDerivation::new(phi.clone(), vec![Polynomial::one(1)]).expect("one component"),
        PhiDerivation::zero(phi.clone()),
        PhiDerivation::zero(phi.clone()),
    ];
    action_algebroid(&heisenberg(), &phi, &delta, 3).expect("representation")
}

/// Twisted Heisenberg acting on `Q^1` with `φ(x) = 2x`, `δ(e0) = x^2 φ*∂`.
pub fn heisenberg_twisted_action() -> HomLieAlgebroidModel {
    let phi = PolySubstitution::new(vec![x(1, 0).scale(&int(2))]).expect("one image");
    let delta = vec![
        PhiDerivation::new(phi.clone(), vec![x(1, 0).pow(2)]).expect("one component"),
        PhiDerivation::zero(phi.clone()),
        PhiDerivation::zero(phi.clone()),
    ];
    action_algebroid(&heisenberg_twisted(), &phi, &delta, 3).expect("representation")
}

fn d0() -> PolyMultivectorField {
    PolyMultivectorField::linear(&[Polynomial::one(2), Polynomial::zero(2)])
}

/// Line bundle of `∂0` on `Q^2` with `φ = id`.
pub fn line_bundle_identity() -> HomLieAlgebroidModel {
    line_bundle_algebroid(&d0(), &PolySubstitution::identity(2)).expect("preserved")
}

/// Line bundle of `∂0` on `Q^2` with `φ = (x0 + 1, 2 x1)`.
pub fn line_bundle() -> HomLieAlgebroidModel {
    let phi = PolySubstitution::new(vec![&x(2, 0) + &Polynomial::one(2), x(2, 1).scale(&int(2))]).expect("two images");
    line_bundle_algebroid(&d0(), &phi).expect("preserved")
}

/// Cotangent algebroid of [`pi2_bivector`] twisted by [`pi2_map`].
pub fn cotangent_pi2() -> HomLieAlgebroidModel {
    cotangent_algebroid(&pi2_bivector(), &pi2_map()).expect("hom-Poisson manifold")
}

/// `x2 ∂0∧∂1` on `Q^3`, the linear Poisson structure of the Heisenberg algebra.
pub fn heisenberg_bivector() -> PolyMultivectorField {
    PolyMultivectorField::bivector(3, &[(0, 1, x(3, 2))]).expect("in range")
}

/// `(2 x0, 3 x1, 6 x2)`.
pub fn heisenberg_scaling() -> PolyMap {
    PolySubstitution::new(vec![x(3, 0).scale(&int(2)), x(3, 1).scale(&int(3)), x(3, 2).scale(&int(6))])
        .expect("three images")
}

/// Cotangent algebroid of [`heisenberg_bivector`] twisted by [`heisenberg_scaling`].
pub fn cotangent_heisenberg() -> HomLieAlgebroidModel {
    cotangent_algebroid(&heisenberg_bivector(), &heisenberg_scaling()).expect("hom-Poisson manifold")
}

/// [`sl2_composition`] over a point.
pub fn point_base() -> HomLieAlgebroidModel {
    point_algebroid(&sl2_composition())
}

pub fn hom_lie_algebras() -> Vec<(&'static str, HomLieAlgebra)> {
    vec![
        ("sl2", sl2()),
        ("sl2_composition", sl2_composition()),
        ("heisenberg", heisenberg()),
        ("heisenberg_twisted", heisenberg_twisted()),
        ("non_lie", non_lie()),
    ]
}

pub fn algebroids() -> Vec<(&'static str, HomLieAlgebroidModel)> {
    vec![
        ("tangent_plane", tangent_plane()),
        ("heisenberg_action", heisenberg_action()),
        ("heisenberg_twisted_action", heisenberg_twisted_action()),
        ("line_bundle_identity", line_bundle_identity()),
        ("line_bundle", line_bundle()),
        ("cotangent_pi2", cotangent_pi2()),
        ("cotangent_heisenberg", cotangent_heisenberg()),
        ("point_base", point_base()),
    ]
}
