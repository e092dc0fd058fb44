//! Hom-Lie, hom-associative and hom-Poisson structures.
//!
//! Finite-dimensional structures are given by structure constants and are
//! checked exhaustively on basis tuples. Polynomial models (hom-Poisson
//! algebras on `Q[x0..xn]`) are checked on all monomial tuples up to a degree
//! bound; that is evidence for the identities, not a proof.

use std::collections::HashMap;
use std::fmt;
use std::sync::{Arc, Mutex};

use num_traits::{One, Zero};
use rayon::prelude::*;

use crate::error::{HomError, Result};
use crate::multilinear::{basis_names, check_square, is_bracket_automorphism, QMatrix, QVec, StructureConstants};
use crate::poly::{MultiIndex, PolySubstitution, Polynomial};
use crate::rational::Rational;
use crate::report::CheckReport;

/// A skew bracket with a twisting map; the axioms are checked, not enforced.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct HomLieAlgebra {
    bracket: StructureConstants,
    alpha: QMatrix,
}

impl HomLieAlgebra {
    pub fn new(bracket: StructureConstants, alpha: QMatrix) -> Result<Self> {
        check_square(&alpha, bracket.dim(), "twisting map")?;
        Ok(HomLieAlgebra { bracket, alpha })
    }

    pub fn dim(&self) -> usize {
        self.bracket.dim()
    }

    pub fn bracket(&self) -> &StructureConstants {
        &self.bracket
    }

    pub fn alpha(&self) -> &QMatrix {
        &self.alpha
    }

    pub fn alpha_apply(&self, x: &QVec) -> QVec {
        self.alpha.mul_vec(x).expect("dimension checked at construction")
    }

    pub fn bracket_apply(&self, x: &QVec, y: &QVec) -> QVec {
        self.bracket.apply(x, y).expect("dimension checked by caller")
    }

    /// `[alpha x, [y, z]] + [alpha y, [z, x]] + [alpha z, [x, y]]`.
    pub fn hom_jacobiator(&self, x: &QVec, y: &QVec, z: &QVec) -> QVec {
        let term = |a: &QVec, b: &QVec, c: &QVec| self.bracket_apply(&self.alpha_apply(a), &self.bracket_apply(b, c));
        term(x, y, z).add(&term(y, z, x)).add(&term(z, x, y))
    }
}

/// Full hom-Lie axiom suite: skew-symmetry, `alpha` compatibility and the
/// hom-Jacobi identity.
///
/// For a skew bracket the hom-Jacobiator is alternating, so basis triples
/// `i < j < k` suffice once skew-symmetry has been checked.
pub fn check_hom_jacobi(g: &HomLieAlgebra) -> CheckReport {
    let n = g.dim();
    let mut report = g.bracket.check_skew();
    report.merge(is_bracket_automorphism(&g.bracket, &g.alpha).expect("dimension checked at construction"));
    let basis: Vec<QVec> = (0..n).map(|i| QVec::basis(n, i)).collect();
    for i in 0..n {
        for j in i + 1..n {
            for k in j + 1..n {
                let jac = g.hom_jacobiator(&basis[i], &basis[j], &basis[k]);
                report.expect_eq("hom_jacobi", || basis_names(&[i, j, k]), &jac, &QVec::zero(n));
            }
        }
    }
    report
}

/// The hom-Lie algebra `(g, alpha ∘ [ , ], alpha)` obtained by composition.
///
/// Rejects `alpha` that is not compatible with the bracket. Whether the
/// result satisfies hom-Jacobi is decided by [`is_lie_on_image`].
pub fn composition_hom_lie(bracket: &StructureConstants, alpha: &QMatrix) -> Result<HomLieAlgebra> {
    let compat = is_bracket_automorphism(bracket, alpha)?;
    if !compat.passed {
        return Err(HomError::AxiomFailure {
            what: "twisting map compatibility",
            report: compat,
        });
    }
    HomLieAlgebra::new(bracket.compose_left(alpha)?, alpha.clone())
}

/// Checks that the bracket restricted to the image of `alpha^2` is a Lie
/// bracket: skew-symmetric and satisfying the plain Jacobi identity on a
/// basis of that image.
pub fn is_lie_on_image(bracket: &StructureConstants, alpha: &QMatrix) -> Result<CheckReport> {
    let compat = is_bracket_automorphism(bracket, alpha)?;
    if !compat.passed {
        return Err(HomError::AxiomFailure {
            what: "twisting map compatibility",
            report: compat,
        });
    }
    let image = alpha.pow(2)?.image_basis();
    let name = |a: usize| format!("u{a}={}", image[a]);
    let mut report = CheckReport::new();
    let br = |x: &QVec, y: &QVec| bracket.apply(x, y).expect("same dimension");
    for a in 0..image.len() {
        for b in a..image.len() {
            let lhs = br(&image[a], &image[b]);
            let rhs = br(&image[b], &image[a]).scale(&-Rational::one());
            report.expect_eq("skew_symmetry_on_image", || vec![name(a), name(b)], &lhs, &rhs);
        }
    }
    for a in 0..image.len() {
        for b in a + 1..image.len() {
            for c in b + 1..image.len() {
                let (x, y, z) = (&image[a], &image[b], &image[c]);
                let jac = br(x, &br(y, z)).add(&br(y, &br(z, x))).add(&br(z, &br(x, y)));
                report.expect_eq(
                    "jacobi_on_image",
                    || vec![name(a), name(b), name(c)],
                    &jac,
                    &QVec::zero(bracket.dim()),
                );
            }
        }
    }
    Ok(report)
}

/// A bilinear product with a twisting map (no symmetry assumed).
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct HomAssociativeAlgebra {
    product: StructureConstants,
    alpha: QMatrix,
}

impl HomAssociativeAlgebra {
    pub fn new(product: StructureConstants, alpha: QMatrix) -> Result<Self> {
        check_square(&alpha, product.dim(), "twisting map")?;
        Ok(HomAssociativeAlgebra { product, alpha })
    }

    pub fn dim(&self) -> usize {
        self.product.dim()
    }

    pub fn product(&self) -> &StructureConstants {
        &self.product
    }

    pub fn alpha(&self) -> &QMatrix {
        &self.alpha
    }

    fn mul(&self, x: &QVec, y: &QVec) -> QVec {
        self.product.apply(x, y).expect("same dimension")
    }
}

/// `(A, alpha ∘ mu, alpha)` for an associative `mu` and an algebra map `alpha`.
pub fn composition_hom_associative(product: &StructureConstants, alpha: &QMatrix) -> Result<HomAssociativeAlgebra> {
    let compat = is_bracket_automorphism(product, alpha)?;
    if !compat.passed {
        return Err(HomError::AxiomFailure {
            what: "twisting map compatibility",
            report: compat,
        });
    }
    HomAssociativeAlgebra::new(product.compose_left(alpha)?, alpha.clone())
}

/// `alpha` multiplicativity and `mu(alpha x, mu(y, z)) = mu(mu(x, y), alpha z)`
/// on all ordered basis triples.
pub fn check_hom_associativity(a: &HomAssociativeAlgebra) -> CheckReport {
    let n = a.dim();
    let mut report = is_bracket_automorphism(&a.product, &a.alpha).expect("dimension checked at construction");
    for v in &mut report.checks {
        v.identity = "alpha_multiplicative".into();
    }
    let basis: Vec<QVec> = (0..n).map(|i| QVec::basis(n, i)).collect();
    let images: Vec<QVec> = (0..n).map(|i| a.alpha.column(i)).collect();
    for i in 0..n {
        for j in 0..n {
            for k in 0..n {
                let lhs = a.mul(&images[i], &a.mul(&basis[j], &basis[k]));
                let rhs = a.mul(&a.mul(&basis[i], &basis[j]), &images[k]);
                report.expect_eq("hom_associativity", || basis_names(&[i, j, k]), &lhs, &rhs);
            }
        }
    }
    report
}

/// The commutator bracket `mu(x, y) - mu(y, x)` with the same twisting map.
pub fn commutator_bracket(a: &HomAssociativeAlgebra) -> HomLieAlgebra {
    let n = a.dim();
    let bracket = StructureConstants::from_basis_fn(n, |i, j| {
        a.product.bracket_basis(i, j).sub(&a.product.bracket_basis(j, i))
    });
    HomLieAlgebra {
        bracket,
        alpha: a.alpha.clone(),
    }
}

/// A representation `(rho, alpha_V)`: one `m x m` matrix per basis vector.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct Representation {
    rho: Vec<QMatrix>,
    alpha_v: QMatrix,
}

impl Representation {
    pub fn new(rho: Vec<QMatrix>, alpha_v: QMatrix) -> Result<Self> {
        if !alpha_v.is_square() {
            return Err(HomError::NotSquare {
                rows: alpha_v.rows(),
                cols: alpha_v.cols(),
            });
        }
        for r in &rho {
            check_square(r, alpha_v.rows(), "representation matrix")?;
        }
        Ok(Representation { rho, alpha_v })
    }

    /// Dimension of the represented space `V`.
    pub fn module_dim(&self) -> usize {
        self.alpha_v.rows()
    }

    pub fn rho(&self) -> &[QMatrix] {
        &self.rho
    }

    pub fn alpha_v(&self) -> &QMatrix {
        &self.alpha_v
    }

    /// `rho(x) = sum_i x_i rho(e_i)`.
    pub fn rho_of(&self, x: &QVec) -> QMatrix {
        let m = self.module_dim();
        let mut out = QMatrix::zero(m, m);
        for (i, c) in x.coeffs().iter().enumerate() {
            if !c.is_zero() {
                out = out.add(&self.rho[i].scale(c)).expect("square matrices");
            }
        }
        out
    }
}

/// Checks `rho(alpha x) alpha_V = alpha_V rho(x)` and
/// `rho([x, y]) alpha_V = rho(alpha x) rho(y) - rho(alpha y) rho(x)` on basis
/// elements and pairs.
pub fn check_representation(g: &HomLieAlgebra, r: &Representation) -> Result<CheckReport> {
    let n = g.dim();
    if r.rho.len() != n {
        return Err(HomError::dim("representation", n, r.rho.len()));
    }
    let av = &r.alpha_v;
    let mut report = CheckReport::new();
    let basis: Vec<QVec> = (0..n).map(|i| QVec::basis(n, i)).collect();
    let rho_alpha: Vec<QMatrix> = basis.iter().map(|e| r.rho_of(&g.alpha_apply(e))).collect();
    for i in 0..n {
        let lhs = rho_alpha[i].mul(av)?;
        let rhs = av.mul(&r.rho[i])?;
        report.expect_eq("rep_alpha_compatibility", || basis_names(&[i]), &lhs, &rhs);
    }
    for i in 0..n {
        for j in 0..n {
            let lhs = r.rho_of(&g.bracket.bracket_basis(i, j)).mul(av)?;
            let rhs = rho_alpha[i].mul(&r.rho[j])?.sub(&rho_alpha[j].mul(&r.rho[i])?)?;
            report.expect_eq("rep_bracket_compatibility", || basis_names(&[i, j]), &lhs, &rhs);
        }
    }
    Ok(report)
}

/// Matrix of `y -> [alpha^s x, y]`.
fn ad_matrix(g: &HomLieAlgebra, alpha_s: &QMatrix, x: &QVec) -> QMatrix {
    let n = g.dim();
    let ax = alpha_s.mul_vec(x).expect("same dimension");
    let cols: Vec<QVec> = (0..n).map(|k| g.bracket_apply(&ax, &QVec::basis(n, k))).collect();
    QMatrix::from_columns(&cols)
}

/// The `alpha^s`-adjoint representation `(ad^s, alpha)` on `g` itself.
pub fn adjoint_rep(g: &HomLieAlgebra, s: u32) -> Representation {
    let n = g.dim();
    let alpha_s = g.alpha.pow(s).expect("square");
    let rho = (0..n).map(|i| ad_matrix(g, &alpha_s, &QVec::basis(n, i))).collect();
    Representation {
        rho,
        alpha_v: g.alpha.clone(),
    }
}

/// `ad^s_[x,y] ∘ alpha = ad^s_(alpha x) ∘ ad^s_y - ad^s_(alpha y) ∘ ad^s_x`
/// on basis pairs, with every operator built directly from the bracket.
pub fn check_adjoint_identity(g: &HomLieAlgebra, s: u32) -> CheckReport {
    let n = g.dim();
    let alpha_s = g.alpha.pow(s).expect("square");
    let ad = |x: &QVec| ad_matrix(g, &alpha_s, x);
    let mut report = CheckReport::new();
    for i in 0..n {
        for j in 0..n {
            let (x, y) = (QVec::basis(n, i), QVec::basis(n, j));
            let lhs = ad(&g.bracket_apply(&x, &y)).mul(&g.alpha).expect("square");
            let rhs = ad(&g.alpha_apply(&x))
                .mul(&ad(&y))
                .and_then(|a| a.sub(&ad(&g.alpha_apply(&y)).mul(&ad(&x))?))
                .expect("square");
            report.expect_eq("adjoint_identity", || basis_names(&[i, j]), &lhs, &rhs);
        }
    }
    report
}

/// Which product a polynomial hom-Poisson model uses.
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum ProductMode {
    /// The ordinary product of polynomials.
    Plain,
    /// `alpha ∘ mu`.
    Composed,
}

pub type PolyBracket = Arc<dyn Fn(&Polynomial, &Polynomial) -> Polynomial + Send + Sync>;

/// A hom-Poisson candidate on `Q[x0..xn]`: a product mode, a twisting algebra
/// map `alpha` (a substitution) and a bracket given as an evaluable function.
#[derive(Clone)]
pub struct HomPoissonPolyModel {
    num_vars: usize,
    product_mode: ProductMode,
    alpha: PolySubstitution,
    bracket: PolyBracket,
}

impl fmt::Debug for HomPoissonPolyModel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("HomPoissonPolyModel")
            .field("num_vars", &self.num_vars)
            .field("product_mode", &self.product_mode)
            .field("alpha", &self.alpha.to_string())
            .finish_non_exhaustive()
    }
}

impl HomPoissonPolyModel {
    pub fn new(product_mode: ProductMode, alpha: PolySubstitution, bracket: PolyBracket) -> Self {
        HomPoissonPolyModel {
            num_vars: alpha.nvars(),
            product_mode,
            alpha,
            bracket,
        }
    }

    pub fn num_vars(&self) -> usize {
        self.num_vars
    }

    pub fn product_mode(&self) -> ProductMode {
        self.product_mode
    }

    pub fn alpha(&self) -> &PolySubstitution {
        &self.alpha
    }

    pub fn alpha_apply(&self, f: &Polynomial) -> Polynomial {
        self.alpha.apply(f).expect("model polynomials share the variable count")
    }

    pub fn product(&self, f: &Polynomial, g: &Polynomial) -> Polynomial {
        let p = f * g;
        match self.product_mode {
            ProductMode::Plain => p,
            ProductMode::Composed => self.alpha_apply(&p),
        }
    }

    pub fn bracket(&self, f: &Polynomial, g: &Polynomial) -> Polynomial {
        (self.bracket)(f, g)
    }

    /// Same bracket and twisting map with the given product.
    pub fn with_product_mode(&self, mode: ProductMode) -> Self {
        HomPoissonPolyModel {
            product_mode: mode,
            ..self.clone()
        }
    }

    /// The variant with the plain product.
    pub fn purely_variant(&self) -> Self {
        self.with_product_mode(ProductMode::Plain)
    }
}

fn monomial_sample(n: usize, degree_bound: u32) -> Vec<Polynomial> {
    MultiIndex::all_up_to(n, degree_bound)
        .into_iter()
        .map(|m| Polynomial::monomial(m, Rational::one()))
        .collect()
}

fn names(polys: &[&Polynomial]) -> Vec<String> {
    polys.iter().map(|p| p.to_string()).collect()
}

/// Precomputed values shared by the hom-Poisson checkers.
struct PoissonSample<'a> {
    m: &'a HomPoissonPolyModel,
    mons: Vec<Polynomial>,
    alpha: Vec<Polynomial>,
    brackets: Vec<Vec<Polynomial>>,
}

impl<'a> PoissonSample<'a> {
    fn new(m: &'a HomPoissonPolyModel, degree_bound: u32) -> Self {
        let mons = monomial_sample(m.num_vars, degree_bound);
        let alpha = mons.par_iter().map(|x| m.alpha_apply(x)).collect();
        let brackets = mons
            .par_iter()
            .map(|x| mons.iter().map(|y| m.bracket(x, y)).collect())
            .collect();
        PoissonSample { m, mons, alpha, brackets }
    }

    fn len(&self) -> usize {
        self.mons.len()
    }

    /// Skew-symmetry, `alpha` compatibility and hom-Jacobi of the bracket.
    fn hom_lie(&self) -> CheckReport {
        let (m, n) = (self.m, self.len());
        let reports: Vec<CheckReport> = (0..n)
            .into_par_iter()
            .map(|i| {
                let mut r = CheckReport::new();
                let x = &self.mons[i];
                for j in i..n {
                    let y = &self.mons[j];
                    let rhs = -&self.brackets[j][i];
                    r.expect_eq("skew_symmetry", || names(&[x, y]), &self.brackets[i][j], &rhs);
                    let lhs = m.alpha_apply(&self.brackets[i][j]);
                    let rhs = m.bracket(&self.alpha[i], &self.alpha[j]);
                    r.expect_eq("alpha_automorphism", || names(&[x, y]), &lhs, &rhs);
                    for k in j + 1..n {
                        if j == i {
                            break;
                        }
                        let z = &self.mons[k];
                        let mut jac = m.bracket(&self.alpha[i], &self.brackets[j][k]);
                        jac += &m.bracket(&self.alpha[j], &self.brackets[k][i]);
                        jac += &m.bracket(&self.alpha[k], &self.brackets[i][j]);
                        r.expect_eq("hom_jacobi", || names(&[x, y, z]), &jac, &Polynomial::zero(m.num_vars));
                    }
                }
                r
            })
            .collect();
        CheckReport::concat(reports)
    }
}

/// Checks the three hom-Poisson items on all monomial triples whose members
/// have degree `<= degree_bound`:
/// 1. the product is commutative, `alpha`-multiplicative and hom-associative;
/// 2. the bracket is hom-Lie;
/// 3. `{alpha x, mu(y, z)} = mu(alpha y, {x, z}) + mu({x, y}, alpha z)`.
pub fn check_hom_poisson(m: &HomPoissonPolyModel, degree_bound: u32) -> CheckReport {
    let s = PoissonSample::new(m, degree_bound);
    let n = s.len();
    let products: Vec<Vec<Polynomial>> = s
        .mons
        .par_iter()
        .map(|x| s.mons.iter().map(|y| m.product(x, y)).collect())
        .collect();
    let assoc: Vec<CheckReport> = (0..n)
        .into_par_iter()
        .map(|i| {
            let mut r = CheckReport::new();
            let x = &s.mons[i];
            for j in 0..n {
                let y = &s.mons[j];
                if j > i {
                    r.expect_eq("commutativity", || names(&[x, y]), &products[i][j], &products[j][i]);
                }
                if j >= i {
                    let lhs = m.alpha_apply(&products[i][j]);
                    let rhs = m.product(&s.alpha[i], &s.alpha[j]);
                    r.expect_eq("alpha_multiplicative", || names(&[x, y]), &lhs, &rhs);
                }
                for k in 0..n {
                    let z = &s.mons[k];
                    let lhs = m.product(&s.alpha[i], &products[j][k]);
                    let rhs = m.product(&products[i][j], &s.alpha[k]);
                    r.expect_eq("hom_associativity", || names(&[x, y, z]), &lhs, &rhs);
                }
            }
            r
        })
        .collect();
    let mut report = CheckReport::concat(assoc);
    report.merge(s.hom_lie());
    report.merge(leibniz(&s, &products, LeibnizKind::Hom));
    report
}

/// The purely hom-Poisson items: the product is commutative and associative,
/// the bracket is hom-Lie, and `{x, mu(y, z)} = mu(alpha y, {x, z}) + mu({x, y}, alpha z)`.
pub fn check_purely_hom_poisson(m: &HomPoissonPolyModel, degree_bound: u32) -> CheckReport {
    let s = PoissonSample::new(m, degree_bound);
    let n = s.len();
    let products: Vec<Vec<Polynomial>> = s
        .mons
        .par_iter()
        .map(|x| s.mons.iter().map(|y| m.product(x, y)).collect())
        .collect();
    let assoc: Vec<CheckReport> = (0..n)
        .into_par_iter()
        .map(|i| {
            let mut r = CheckReport::new();
            let x = &s.mons[i];
            for j in 0..n {
                let y = &s.mons[j];
                if j > i {
                    r.expect_eq("commutativity", || names(&[x, y]), &products[i][j], &products[j][i]);
                }
                for k in 0..n {
                    let z = &s.mons[k];
                    let lhs = m.product(x, &products[j][k]);
                    let rhs = m.product(&products[i][j], z);
                    r.expect_eq("associativity", || names(&[x, y, z]), &lhs, &rhs);
                }
            }
            r
        })
        .collect();
    let mut report = CheckReport::concat(assoc);
    report.merge(s.hom_lie());
    report.merge(leibniz(&s, &products, LeibnizKind::Purely));
    report
}

#[derive(Clone, Copy)]
enum LeibnizKind {
    Hom,
    Purely,
}

fn leibniz(s: &PoissonSample<'_>, products: &[Vec<Polynomial>], kind: LeibnizKind) -> CheckReport {
    let (m, n) = (s.m, s.len());
    let reports: Vec<CheckReport> = (0..n)
        .into_par_iter()
        .map(|i| {
            let mut r = CheckReport::new();
            let x = &s.mons[i];
            let (identity, first) = match kind {
                LeibnizKind::Hom => ("hom_leibniz", &s.alpha[i]),
                LeibnizKind::Purely => ("purely_hom_leibniz", x),
            };
            // the right-hand side is symmetric in (y, z) for a commutative product
            for j in 0..n {
                for k in j..n {
                    let (y, z) = (&s.mons[j], &s.mons[k]);
                    let lhs = m.bracket(first, &products[j][k]);
                    let rhs = &m.product(&s.alpha[j], &s.brackets[i][k]) + &m.product(&s.brackets[i][j], &s.alpha[k]);
                    r.expect_eq(identity, || names(&[x, y, z]), &lhs, &rhs);
                }
            }
            r
        })
        .collect();
    CheckReport::concat(reports)
}

/// Bracket of `S(g)` viewed as polynomials on `g*`:
/// `{x1...xp, y1...yq} = sum_ij [x_i, y_j] alpha(product of the other factors)`.
///
/// Summands of the double sum that repeat the same basis factor are equal, so
/// they are collected with their multiplicity.
struct SymBracket {
    n: usize,
    linear: Vec<Vec<Polynomial>>,
    alpha: PolySubstitution,
    cache: Mutex<HashMap<MultiIndex, Polynomial>>,
}

impl SymBracket {
    fn alpha_monomial(&self, m: &MultiIndex) -> Polynomial {
        if let Some(p) = self.cache.lock().expect("cache lock").get(m) {
            return p.clone();
        }
        let p = self
            .alpha
            .apply(&Polynomial::monomial(m.clone(), Rational::one()))
            .expect("same variable count");
        self.cache.lock().expect("cache lock").insert(m.clone(), p.clone());
        p
    }

    fn eval(&self, f: &Polynomial, g: &Polynomial) -> Polynomial {
        let mut out = Polynomial::zero(self.n);
        for (m1, c1) in f.terms() {
            for (m2, c2) in g.terms() {
                let c12 = c1 * c2;
                for a in 0..self.n {
                    let Some(r1) = m1.lower(a) else { continue };
                    let ea = Rational::from_integer(m1.exponents()[a].into());
                    for b in 0..self.n {
                        if self.linear[a][b].is_zero() {
                            continue;
                        }
                        let Some(r2) = m2.lower(b) else { continue };
                        let eb = Rational::from_integer(m2.exponents()[b].into());
                        let rest = self.alpha_monomial(&r1.add(&r2));
                        let term = (&self.linear[a][b] * &rest).scale(&(&c12 * &ea * eb));
                        out += &term;
                    }
                }
            }
        }
        out
    }
}

/// `[e_a, e_b]` as a linear polynomial on `g*`.
fn linear_brackets(g: &HomLieAlgebra) -> Vec<Vec<Polynomial>> {
    let n = g.dim();
    (0..n)
        .map(|a| {
            (0..n)
                .map(|b| {
                    let v = g.bracket.bracket_basis(a, b);
                    let mut p = Polynomial::zero(n);
                    for (k, c) in v.coeffs().iter().enumerate() {
                        p.add_term(MultiIndex::unit(n, k), c.clone());
                    }
                    p
                })
                .collect()
        })
        .collect()
}

/// The hom-Poisson algebra `(S(g), alpha ∘ mu, { , }, alpha)` of a hom-Lie algebra.
///
/// Rejects `g` when it fails [`check_hom_jacobi`].
pub fn sym_poisson_from_hom_lie(g: &HomLieAlgebra) -> Result<HomPoissonPolyModel> {
    let report = check_hom_jacobi(g);
    if !report.passed {
        return Err(HomError::AxiomFailure {
            what: "hom-Lie axioms",
            report,
        });
    }
    Ok(sym_poisson_unchecked(g))
}

pub(crate) fn sym_poisson_unchecked(g: &HomLieAlgebra) -> HomPoissonPolyModel {
    let alpha = PolySubstitution::from_linear(&g.alpha).expect("square");
    let sb = Arc::new(SymBracket {
        n: g.dim(),
        linear: linear_brackets(g),
        alpha: alpha.clone(),
        cache: Mutex::new(HashMap::new()),
    });
    HomPoissonPolyModel::new(ProductMode::Composed, alpha, Arc::new(move |f, h| sb.eval(f, h)))
}

/// Compares the `S(g)` bracket with the dual-pairing expression
/// `{F, G}(a) = < [dF at alpha*(a), dG at alpha*(a)], a >` on monomial pairs.
///
/// `alpha*` is the transpose of `alpha`; differentials of functions on `g*`
/// are read as elements of `g`.
pub fn check_dual_formula(g: &HomLieAlgebra, degree_bound: u32) -> CheckReport {
    let n = g.dim();
    let model = sym_poisson_unchecked(g);
    let at = g.alpha.transpose();
    // F -> (a -> F(alpha* a)): coordinate k of alpha* a is row k of alpha^T applied to a
    let pullback = PolySubstitution::new(
        (0..n)
            .map(|k| {
                let mut p = Polynomial::zero(n);
                for j in 0..n {
                    p.add_term(MultiIndex::unit(n, j), at.get(k, j).clone());
                }
                p
            })
            .collect(),
    )
    .expect("n images in n variables");
    let linear = linear_brackets(g);
    let dual = |f: &Polynomial, h: &Polynomial| {
        let df: Vec<Polynomial> = (0..n)
            .map(|a| pullback.apply(&f.partial(a).expect("in range")).expect("same n"))
            .collect();
        let dh: Vec<Polynomial> = (0..n)
            .map(|b| pullback.apply(&h.partial(b).expect("in range")).expect("same n"))
            .collect();
        let mut out = Polynomial::zero(n);
        for a in 0..n {
            for b in 0..n {
                if !df[a].is_zero() && !dh[b].is_zero() && !linear[a][b].is_zero() {
                    out += &(&(&df[a] * &dh[b]) * &linear[a][b]);
                }
            }
        }
        out
    };
    let mons = monomial_sample(n, degree_bound);
    let reports: Vec<CheckReport> = mons
        .par_iter()
        .map(|f| {
            let mut r = CheckReport::new();
            for h in &mons {
                r.expect_eq("dual_formula", || names(&[f, h]), &model.bracket(f, h), &dual(f, h));
            }
            r
        })
        .collect();
    CheckReport::concat(reports)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures;
    use crate::rational::{frac, int};

    fn v(n: usize, i: usize) -> QVec {
        QVec::basis(n, i)
    }

    #[test]
    fn abelian_is_hom_lie_for_any_alpha() {
        let g = HomLieAlgebra::new(
            StructureConstants::zero(3),
            QMatrix::from_ints(&[&[1, 2, 3], &[0, 0, 1], &[5, 0, 0]]),
        )
        .unwrap();
        assert!(check_hom_jacobi(&g).passed);
    }

    #[test]
    fn sl2_composition_is_hom_lie() {
        let g = fixtures::sl2_composition();
        let r = check_hom_jacobi(&g);
        assert!(r.passed, "{r}");
        assert!(r.evaluated > 0);
    }

    #[test]
    fn non_lie_fixture_witness() {
        let r = check_hom_jacobi(&fixtures::non_lie());
        assert!(!r.passed);
        let w = r.checks.iter().find(|v| v.identity == "hom_jacobi").unwrap();
        assert_eq!(w.witness, ["e0", "e1", "e2"]);
        assert_eq!(w.lhs, "e2");
        assert_eq!(r.failures, 1);
    }

    #[test]
    fn composition_examples() {
        let sl2 = fixtures::sl2();
        let g = composition_hom_lie(sl2.bracket(), &fixtures::sl2_automorphism()).unwrap();
        assert_eq!(g, fixtures::sl2_composition());
        let zero = composition_hom_lie(sl2.bracket(), &QMatrix::zero(3, 3)).unwrap();
        assert!(zero.bracket().is_zero());
        assert!(check_hom_jacobi(&zero).passed);
        let bad = composition_hom_lie(
            fixtures::heisenberg().bracket(),
            &QMatrix::diag(&[int(2), int(3), int(5)]),
        );
        assert!(matches!(bad, Err(HomError::AxiomFailure { .. })));
    }

    /// A non-Lie bracket that becomes Lie on the image of alpha^2.
    #[test]
    fn projection_onto_abelian_subspace() {
        let (bracket, alpha) = fixtures::non_lie_with_abelian_projection();
        assert!(!check_hom_jacobi(&HomLieAlgebra::new(bracket.clone(), QMatrix::identity(3)).unwrap()).passed);
        assert!(is_lie_on_image(&bracket, &alpha).unwrap().passed);
        assert!(check_hom_jacobi(&composition_hom_lie(&bracket, &alpha).unwrap()).passed);
    }

    #[test]
    fn lie_on_image_examples() {
        let sl2 = fixtures::sl2();
        assert!(is_lie_on_image(sl2.bracket(), &fixtures::sl2_automorphism()).unwrap().passed);
        assert!(is_lie_on_image(sl2.bracket(), &QMatrix::zero(3, 3)).unwrap().passed);
        let r = is_lie_on_image(fixtures::non_lie().bracket(), &QMatrix::identity(3)).unwrap();
        assert!(!r.passed);
        assert_eq!(r.first().unwrap().lhs, "e2");
    }

    #[test]
    fn hom_associativity_examples() {
        let m2 = fixtures::matrix_algebra_2x2();
        assert!(check_hom_associativity(&m2).passed);
        let ut = fixtures::upper_triangular_composed();
        let r = check_hom_associativity(&ut);
        assert!(r.passed, "{r}");
        let bad = fixtures::non_hom_associative();
        let r = check_hom_associativity(&bad);
        assert!(!r.passed);
        let w = r.first().unwrap();
        assert_eq!(w.witness, ["e0", "e0", "e0"]);
        assert_eq!((w.lhs.as_str(), w.rhs.as_str()), ("0", "e0"));
    }

    #[test]
    fn commutator_examples() {
        let comm = HomAssociativeAlgebra::new(
            StructureConstants::from_basis_fn(2, |i, j| v(2, (i + j) % 2)),
            QMatrix::identity(2),
        )
        .unwrap();
        assert!(commutator_bracket(&comm).bracket().is_zero());
        // E11, E12, E21, E22: [E12, E21] = E11 - E22, [E11, E12] = E12, ...
        let g = commutator_bracket(&fixtures::matrix_algebra_2x2());
        let b = g.bracket();
        assert_eq!(b.bracket_basis(1, 2), QVec::new(vec![int(1), int(0), int(0), int(-1)]));
        assert_eq!(b.bracket_basis(0, 1), v(4, 1));
        assert_eq!(b.bracket_basis(0, 2), v(4, 2).scale(&int(-1)));
        assert_eq!(b.bracket_basis(1, 3), v(4, 1));
        assert_eq!(b.bracket_basis(0, 3), QVec::zero(4));
        assert!(check_hom_jacobi(&g).passed);
        assert!(check_hom_jacobi(&commutator_bracket(&fixtures::upper_triangular_composed())).passed);
    }

    #[test]
    fn representation_examples() {
        let g = fixtures::sl2_composition();
        let zero = Representation::new(vec![QMatrix::zero(2, 2); 3], QMatrix::from_ints(&[&[1, 2], &[3, 4]])).unwrap();
        assert!(check_representation(&g, &zero).unwrap().passed);
        let ad = adjoint_rep(&g, 1);
        assert!(check_representation(&g, &ad).unwrap().passed);
        let mut rho = ad.rho().to_vec();
        let mut m = rho[0].clone();
        m.set(0, 0, m.get(0, 0) + int(1));
        rho[0] = m;
        let r = check_representation(&g, &Representation::new(rho, g.alpha().clone()).unwrap()).unwrap();
        assert!(!r.passed);
        assert!(check_representation(&g, &Representation::new(vec![], QMatrix::identity(1)).unwrap()).is_err());
    }

    #[test]
    fn adjoint_examples() {
        let ab = HomLieAlgebra::new(StructureConstants::zero(2), QMatrix::identity(2)).unwrap();
        assert!(adjoint_rep(&ab, 0).rho().iter().all(QMatrix::is_zero));
        let h = fixtures::heisenberg_twisted();
        let ad = adjoint_rep(&h, 1);
        assert_eq!(ad.rho()[0].mul_vec(&v(3, 1)).unwrap(), v(3, 2).scale(&int(2)));
        for s in 0..=2 {
            assert!(check_adjoint_identity(&fixtures::sl2_composition(), s).passed);
            assert!(check_adjoint_identity(&h, s).passed);
        }
        assert!(!check_adjoint_identity(&fixtures::non_lie(), 0).passed);
    }

    fn xp(_n: usize, e: &[u32]) -> Polynomial {
        Polynomial::monomial(MultiIndex::new(e.to_vec()), int(1))
    }

    #[test]
    fn sym_poisson_examples() {
        let h = fixtures::heisenberg_twisted();
        let m = sym_poisson_from_hom_lie(&h).unwrap();
        assert_eq!(m.bracket(&xp(3, &[1, 0, 0]), &xp(3, &[0, 1, 0])), xp(3, &[0, 0, 1]));
        assert_eq!(
            m.bracket(&xp(3, &[2, 0, 0]), &xp(3, &[0, 1, 0])),
            xp(3, &[1, 0, 1]).scale(&int(4))
        );
        let ab = HomLieAlgebra::new(StructureConstants::zero(2), QMatrix::identity(2)).unwrap();
        let m = sym_poisson_from_hom_lie(&ab).unwrap();
        assert!(m.bracket(&xp(2, &[1, 1]), &xp(2, &[0, 2])).is_zero());
        assert!(sym_poisson_from_hom_lie(&fixtures::non_lie()).is_err());
    }

    /// Literal double sum over factor positions, used as an oracle.
    fn literal_sym_bracket(g: &HomLieAlgebra, f: &MultiIndex, h: &MultiIndex) -> Polynomial {
        let n = g.dim();
        let alpha = PolySubstitution::from_linear(g.alpha()).unwrap();
        let lin = linear_brackets(g);
        let (xs, ys) = (f.factors(), h.factors());
        let mut out = Polynomial::zero(n);
        for i in 0..xs.len() {
            for j in 0..ys.len() {
                let mut rest = Polynomial::one(n);
                for (p, &a) in xs.iter().enumerate() {
                    if p != i {
                        rest = &rest * &alpha.apply(&Polynomial::var(n, a)).unwrap();
                    }
                }
                for (q, &b) in ys.iter().enumerate() {
                    if q != j {
                        rest = &rest * &alpha.apply(&Polynomial::var(n, b)).unwrap();
                    }
                }
                out += &(&lin[xs[i]][ys[j]] * &rest);
            }
        }
        out
    }

    #[test]
    fn grouped_bracket_matches_literal_double_sum() {
        for g in [fixtures::sl2_composition(), fixtures::heisenberg_twisted(), fixtures::sl2()] {
            let m = sym_poisson_unchecked(&g);
            let mons = MultiIndex::all_up_to(3, 3);
            for f in &mons {
                for h in &mons {
                    let lhs = m.bracket(&Polynomial::monomial(f.clone(), int(1)), &Polynomial::monomial(h.clone(), int(1)));
                    assert_eq!(lhs, literal_sym_bracket(&g, f, h), "{f} {h}");
                }
            }
        }
    }

    #[test]
    fn dual_formula_examples() {
        let h = fixtures::heisenberg_twisted();
        assert!(check_dual_formula(&h, 3).passed);
        let m = sym_poisson_unchecked(&h);
        assert!(m.bracket(&Polynomial::constant(3, frac(5, 2)), &xp(3, &[1, 1, 0])).is_zero());
    }

    #[test]
    fn hom_poisson_zero_bracket() {
        let m = HomPoissonPolyModel::new(
            ProductMode::Plain,
            PolySubstitution::identity(2),
            Arc::new(|_: &Polynomial, _: &Polynomial| Polynomial::zero(2)),
        );
        assert!(check_hom_poisson(&m, 2).passed);
        assert!(check_purely_hom_poisson(&m, 2).passed);
    }

    #[test]
    fn sym_poisson_passes_hom_poisson() {
        let m = sym_poisson_from_hom_lie(&fixtures::heisenberg_twisted()).unwrap();
        let r = check_hom_poisson(&m, 2);
        assert!(r.passed, "{r}");
    }
}
