//! The files under `fixtures/`, generated from the core fixture set.

use homcat_core::fixtures;
use homcat_core::hom_algebras::adjoint_rep;
use homcat_core::hom_algebroids::{HomLieAlgebroidModel, PhiDerivation};
use homcat_core::poly_geometry::PolyMultivectorField;
use homcat_core::rational::int;
use homcat_core::{PolySubstitution, Polynomial};

use crate::format::{emit, Structure, StructureFile};

fn file(name: &str, structure: Structure) -> (String, String) {
    let text = emit(&StructureFile {
        name: name.to_string(),
        structure,
    });
    (format!("{name}.json"), text)
}

/// The line bundle fixture with its anchor moved off `φ*∂0`; fails axiom 4.
pub fn corrupted_line_bundle() -> HomLieAlgebroidModel {
    let m = fixtures::line_bundle();
    let mut anchor = m.anchor_mat().to_vec();
    anchor[0][1] = &anchor[0][1] + &Polynomial::one(2);
    HomLieAlgebroidModel::new(m.phi().clone(), m.alpha_mat().to_vec(), anchor, m.bracket_consts().clone())
        .expect("same shapes")
}

/// `(file name, canonical contents)` for every bundled fixture.
pub fn bundled_fixtures() -> Vec<(String, String)> {
    let mut out = Vec::new();
    for (name, g) in fixtures::hom_lie_algebras() {
        out.push(file(name, Structure::HomLie(g)));
    }
    out.push(file("matrix_algebra_2x2", Structure::HomAssociative(fixtures::matrix_algebra_2x2())));
    out.push(file(
        "upper_triangular_composed",
        Structure::HomAssociative(fixtures::upper_triangular_composed()),
    ));
    out.push(file("non_hom_associative", Structure::HomAssociative(fixtures::non_hom_associative())));
    let g = fixtures::sl2_composition();
    out.push(file("adjoint_sl2_composition", Structure::Representation(g.clone(), adjoint_rep(&g, 1))));
    let h = fixtures::heisenberg_twisted();
    out.push(file("adjoint_heisenberg_twisted", Structure::Representation(h.clone(), adjoint_rep(&h, 1))));

    out.push(file("pi2", Structure::BivectorAndMap(fixtures::pi2_bivector(), fixtures::pi2_map())));
    let scale = PolySubstitution::new(vec![Polynomial::var(2, 0).scale(&int(2)), Polynomial::var(2, 1)])
        .expect("two images");
    out.push(file("pi2_scaled", Structure::BivectorAndMap(fixtures::pi2_bivector(), scale)));
    out.push(file(
        "non_poisson_projection",
        Structure::BivectorAndMap(fixtures::non_poisson_bivector(), fixtures::projection_map()),
    ));

    let d0 = PolyMultivectorField::linear(&[Polynomial::one(2), Polynomial::zero(2)]);
    let phi = fixtures::line_bundle().phi().clone();
    out.push(file("line_bundle_data", Structure::VectorFieldAndMap(d0, phi)));
    let phi = fixtures::heisenberg_twisted_action().phi().clone();
    let delta = vec![
        PhiDerivation::new(phi.clone(), vec![Polynomial::var(1, 0).pow(2)]).expect("one component"),
        PhiDerivation::zero(phi.clone()),
        PhiDerivation::zero(phi.clone()),
    ];
    out.push(file("heisenberg_twisted_action_data", Structure::Action(h, phi, delta)));

    for (name, m) in fixtures::algebroids() {
        out.push(file(name, Structure::Algebroid(m)));
    }
    out.push(file("corrupted_line_bundle", Structure::Algebroid(corrupted_line_bundle())));
    out.sort();
    out
}
