//! Hom-Lie algebroids on trivial bundles over `Q^n`.
//!
//! Sections are `X = sum_a X^a e_a` with polynomial coefficients. The data
//! are read against the frame at `φ(m)`:
//!
//! * `α(F e_a) = φ*(F) sum_b A_a^b e_b`
//! * `ρ(F e_a)[G] = φ*(F) sum_i ρ_a^i φ*(∂_i G)`
//! * `[e_a, e_b] = sum_c C_ab^c e_c`, extended by the hom-Leibniz rule.

use std::collections::BTreeMap;
use std::fmt;

use num_traits::Zero;
use rayon::prelude::*;

use crate::error::{HomError, Result};
use crate::graded::MixedElement;
use crate::hom_algebras::HomLieAlgebra;
use crate::hom_gerstenhaber::{check_gerstenhaber, extract_anchor_rep_unchecked, HomGerstenhaberModel, SampleBounds};
use crate::multilinear::ExtIndex;
use crate::poly::{MultiIndex, PolySubstitution, Polynomial};
use crate::poly_geometry::{
    check_hom_poisson_manifold, cotangent_bracket, differential, pi_entry, pullback_form, PolyForm, PolyMap,
    PolyMultivectorField,
};
use crate::rational::Rational;
use crate::report::CheckReport;

/// A section `sum_a X^a e_a`.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct Section(Vec<Polynomial>);

impl Section {
    pub fn new(coeffs: Vec<Polynomial>) -> Self {
        Section(coeffs)
    }

    pub fn zero(r: usize, n: usize) -> Self {
        Section(vec![Polynomial::zero(n); r])
    }

    /// `F e_a`.
    pub fn basis(r: usize, a: usize, f: Polynomial) -> Self {
        let n = f.nvars();
        let mut s = Section::zero(r, n);
        s.0[a] = f;
        s
    }

    pub fn rank(&self) -> usize {
        self.0.len()
    }

    pub fn coeffs(&self) -> &[Polynomial] {
        &self.0
    }

    pub fn is_zero(&self) -> bool {
        self.0.iter().all(Polynomial::is_zero)
    }

    pub fn add(&self, other: &Section) -> Section {
        Section(self.0.iter().zip(&other.0).map(|(a, b)| a + b).collect())
    }

    pub fn sub(&self, other: &Section) -> Section {
        Section(self.0.iter().zip(&other.0).map(|(a, b)| a - b).collect())
    }

    pub fn mul_poly(&self, f: &Polynomial) -> Section {
        Section(self.0.iter().map(|a| a * f).collect())
    }
}

impl fmt::Display for Section {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let n = self.0.first().map_or(0, Polynomial::nvars);
        let e = MixedElement::linear(self.rank(), n, &self.0);
        write!(f, "{e}")
    }
}

/// A `φ*`-derivation `δ(F) = sum_i δ^i φ*(∂_i F)`.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct PhiDerivation {
    phi: PolyMap,
    components: Vec<Polynomial>,
}

impl PhiDerivation {
    pub fn new(phi: PolyMap, components: Vec<Polynomial>) -> Result<Self> {
        if components.len() != phi.nvars() {
            return Err(HomError::dim("derivation components", phi.nvars(), components.len()));
        }
        Ok(PhiDerivation { phi, components })
    }

    pub fn zero(phi: PolyMap) -> Self {
        let n = phi.nvars();
        PhiDerivation {
            phi,
            components: vec![Polynomial::zero(n); n],
        }
    }

    pub fn phi(&self) -> &PolyMap {
        &self.phi
    }

    pub fn components(&self) -> &[Polynomial] {
        &self.components
    }

    pub fn apply(&self, f: &Polynomial) -> Polynomial {
        let mut out = Polynomial::zero(f.nvars());
        for (i, d) in self.components.iter().enumerate() {
            if !d.is_zero() {
                out += &(d * &self.phi.apply(&f.partial(i).expect("in range")).expect("same n"));
            }
        }
        out
    }
}

/// Bracket, anchor and twisting data of a hom-Lie algebroid candidate.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct HomLieAlgebroidModel {
    n: usize,
    r: usize,
    phi: PolyMap,
    alpha_mat: Vec<Vec<Polynomial>>,
    anchor_mat: Vec<Vec<Polynomial>>,
    bracket_consts: BTreeMap<(usize, usize, usize), Polynomial>,
}

impl HomLieAlgebroidModel {
    /// `alpha_mat[a][b] = A_a^b`, `anchor_mat[a][i] = ρ_a^i`,
    /// `bracket_consts[(a, b, c)] = C_ab^c`. Zero entries are dropped.
    pub fn new(
        phi: PolyMap,
        alpha_mat: Vec<Vec<Polynomial>>,
        anchor_mat: Vec<Vec<Polynomial>>,
        bracket_consts: impl IntoIterator<Item = ((usize, usize, usize), Polynomial)>,
    ) -> Result<Self> {
        let n = phi.nvars();
        let r = alpha_mat.len();
        let check = |what: &'static str, want: usize, got: usize| {
            if want == got {
                Ok(())
            } else {
                Err(HomError::dim(what, want, got))
            }
        };
        check("anchor rows", r, anchor_mat.len())?;
        for row in &alpha_mat {
            check("twisting matrix columns", r, row.len())?;
            for f in row {
                check("twisting matrix variables", n, f.nvars())?;
            }
        }
        for row in &anchor_mat {
            check("anchor columns", n, row.len())?;
            for f in row {
                check("anchor variables", n, f.nvars())?;
            }
        }
        let mut consts = BTreeMap::new();
        for ((a, b, c), f) in bracket_consts {
            let top = a.max(b).max(c);
            if top >= r {
                return Err(HomError::IndexOutOfRange {
                    context: "structure function index",
                    index: top,
                    size: r,
                });
            }
            check("structure function variables", n, f.nvars())?;
            let slot: &mut Polynomial = consts.entry((a, b, c)).or_insert_with(|| Polynomial::zero(n));
            *slot += &f;
        }
        consts.retain(|_, f: &mut Polynomial| !f.is_zero());
        Ok(HomLieAlgebroidModel {
            n,
            r,
            phi,
            alpha_mat,
            anchor_mat,
            bracket_consts: consts,
        })
    }

    pub fn num_vars(&self) -> usize {
        self.n
    }

    pub fn rank(&self) -> usize {
        self.r
    }

    pub fn phi(&self) -> &PolyMap {
        &self.phi
    }

    pub fn alpha_mat(&self) -> &[Vec<Polynomial>] {
        &self.alpha_mat
    }

    pub fn anchor_mat(&self) -> &[Vec<Polynomial>] {
        &self.anchor_mat
    }

    pub fn bracket_consts(&self) -> &BTreeMap<(usize, usize, usize), Polynomial> {
        &self.bracket_consts
    }

    pub fn structure_function(&self, a: usize, b: usize, c: usize) -> Polynomial {
        self.bracket_consts
            .get(&(a, b, c))
            .cloned()
            .unwrap_or_else(|| Polynomial::zero(self.n))
    }

    pub fn generator(&self, a: usize) -> Section {
        Section::basis(self.r, a, Polynomial::one(self.n))
    }

    fn pull(&self, f: &Polynomial) -> Polynomial {
        self.phi.apply(f).expect("same variable count")
    }

    fn check_section(&self, x: &Section) -> Result<()> {
        if x.rank() != self.r {
            return Err(HomError::dim("section rank", self.r, x.rank()));
        }
        if let Some(f) = x.0.iter().find(|f| f.nvars() != self.n) {
            return Err(HomError::dim("section variables", self.n, f.nvars()));
        }
        Ok(())
    }

    /// `[e_a, e_b]`.
    pub fn bracket_generators(&self, a: usize, b: usize) -> Section {
        Section((0..self.r).map(|c| self.structure_function(a, b, c)).collect())
    }

    /// `α(X) = sum_a φ*(X^a) sum_b A_a^b e_b`.
    pub fn alpha_apply(&self, x: &Section) -> Section {
        let mut out = Section::zero(self.r, self.n);
        for (a, xa) in x.0.iter().enumerate() {
            if xa.is_zero() {
                continue;
            }
            let p = self.pull(xa);
            for b in 0..self.r {
                out.0[b] += &(&p * &self.alpha_mat[a][b]);
            }
        }
        out
    }

    /// `ρ(X)[F] = sum_a φ*(X^a) sum_i ρ_a^i φ*(∂_i F)`.
    pub fn anchor_apply(&self, x: &Section, f: &Polynomial) -> Result<Polynomial> {
        self.check_section(x)?;
        if f.nvars() != self.n {
            return Err(HomError::dim("function variables", self.n, f.nvars()));
        }
        Ok(self.anchor_unchecked(x, f))
    }

    fn anchor_unchecked(&self, x: &Section, f: &Polynomial) -> Polynomial {
        let df: Vec<Polynomial> = (0..self.n).map(|i| self.pull(&f.partial(i).expect("in range"))).collect();
        let mut out = Polynomial::zero(self.n);
        for (a, xa) in x.0.iter().enumerate() {
            if xa.is_zero() {
                continue;
            }
            let mut inner = Polynomial::zero(self.n);
            for i in 0..self.n {
                inner += &(&self.anchor_mat[a][i] * &df[i]);
            }
            out += &(&self.pull(xa) * &inner);
        }
        out
    }

    /// `[F e_a, G e_b] = φ*(F)φ*(G)[e_a, e_b] + φ*(F) ρ(e_a)[G] α(e_b) - φ*(G) ρ(e_b)[F] α(e_a)`,
    /// extended bilinearly.
    pub fn bracket_sections(&self, x: &Section, y: &Section) -> Result<Section> {
        self.check_section(x)?;
        self.check_section(y)?;
        Ok(self.bracket_unchecked(x, y))
    }

    fn bracket_unchecked(&self, x: &Section, y: &Section) -> Section {
        let mut out = Section::zero(self.r, self.n);
        let alpha_gen: Vec<Section> = (0..self.r).map(|a| self.alpha_apply(&self.generator(a))).collect();
        for (a, f) in x.0.iter().enumerate() {
            if f.is_zero() {
                continue;
            }
            let pf = self.pull(f);
            for (b, g) in y.0.iter().enumerate() {
                if g.is_zero() {
                    continue;
                }
                let pg = self.pull(g);
                out = out.add(&self.bracket_generators(a, b).mul_poly(&(&pf * &pg)));
                let rg = self.anchor_unchecked(&self.generator(a), g);
                out = out.add(&alpha_gen[b].mul_poly(&(&pf * &rg)));
                let rf = self.anchor_unchecked(&self.generator(b), f);
                out = out.sub(&alpha_gen[a].mul_poly(&(&pg * &rf)));
            }
        }
        out
    }

    fn hom_jacobiator(&self, x: &Section, y: &Section, z: &Section) -> Section {
        let br = |p: &Section, q: &Section| self.bracket_unchecked(p, q);
        let t1 = br(&self.alpha_apply(x), &br(y, z));
        let t2 = br(&self.alpha_apply(y), &br(z, x));
        let t3 = br(&self.alpha_apply(z), &br(x, y));
        t1.add(&t2).add(&t3)
    }
}

fn monomials(n: usize, lo: u32, hi: u32) -> Vec<Polynomial> {
    MultiIndex::all_up_to(n, hi)
        .into_iter()
        .filter(|m| m.degree() >= lo)
        .map(|m| Polynomial::monomial(m, Rational::from_integer(1.into())))
        .collect()
}

/// Checks the four axioms on generators and generator-times-monomial
/// sections, which suffices once brackets are extended by Leibniz; `F` ranges
/// over monomials of degree `<= degree_bound`:
///
/// 1. `α(F e_a) = φ*(F) α(e_a)`;
/// 2. skew-symmetry of `C`, `α` compatibility on `(e_a, e_b)` and
///    `(e_a, F e_b)`, hom-Jacobi on `(e_a, e_b, e_c)` and `(e_a, e_b, F e_c)`;
/// 3. `[e_a, F e_b] = φ*(F)[e_a, e_b] + ρ(e_a)[F] α(e_b)`;
/// 4. `ρ(α e_a)[φ* F] = φ*(ρ(e_a)[F])` and
///    `ρ([e_a, e_b])[φ* F] = ρ(α e_a)ρ(e_b)F - ρ(α e_b)ρ(e_a)F`.
pub fn check_algebroid(m: &HomLieAlgebroidModel, degree_bound: u32) -> CheckReport {
    let (r, n) = (m.r, m.n);
    let gens: Vec<Section> = (0..r).map(|a| m.generator(a)).collect();
    let alpha_gens: Vec<Section> = gens.iter().map(|x| m.alpha_apply(x)).collect();
    let funcs = monomials(n, 0, degree_bound);
    let nonconst = monomials(n, 1, degree_bound);
    let g = |a: usize| format!("e{a}");
    let fe = |f: &Polynomial, a: usize| format!("{f}*e{a}");
    let mut report = CheckReport::new();

    for a in 0..r {
        for b in a..r {
            for c in 0..r {
                let lhs = m.structure_function(a, b, c);
                let rhs = -&m.structure_function(b, a, c);
                report.expect_eq("skew_symmetry", || vec![g(a), g(b), g(c)], &lhs, &rhs);
            }
        }
    }
    for a in 0..r {
        for f in &funcs {
            let lhs = m.alpha_apply(&Section::basis(r, a, f.clone()));
            let rhs = alpha_gens[a].mul_poly(&m.pull(f));
            report.expect_eq("alpha_linearity", || vec![fe(f, a)], &lhs, &rhs);
        }
    }
    for a in 0..r {
        for b in 0..r {
            for f in &funcs {
                let y = Section::basis(r, b, f.clone());
                let lhs = m.alpha_apply(&m.bracket_unchecked(&gens[a], &y));
                let rhs = m.bracket_unchecked(&alpha_gens[a], &m.alpha_apply(&y));
                report.expect_eq("alpha_automorphism", || vec![g(a), fe(f, b)], &lhs, &rhs);
                let rhs = m
                    .bracket_generators(a, b)
                    .mul_poly(&m.pull(f))
                    .add(&alpha_gens[b].mul_poly(&m.anchor_unchecked(&gens[a], f)));
                let lhs = m.bracket_unchecked(&gens[a], &y);
                report.expect_eq("hom_leibniz", || vec![g(a), fe(f, b)], &lhs, &rhs);
            }
        }
    }
    let zero = Section::zero(r, n);
    for a in 0..r {
        for b in a + 1..r {
            for c in b + 1..r {
                let jac = m.hom_jacobiator(&gens[a], &gens[b], &gens[c]);
                report.expect_eq("hom_jacobi", || vec![g(a), g(b), g(c)], &jac, &zero);
            }
        }
    }
    let triples: Vec<(usize, usize, usize)> = (0..r)
        .flat_map(|a| (a..r).flat_map(move |b| (0..r).map(move |c| (a, b, c))))
        .collect();
    let jacobi: Vec<CheckReport> = triples
        .par_iter()
        .map(|&(a, b, c)| {
            let mut rep = CheckReport::new();
            for f in &nonconst {
                let z = Section::basis(r, c, f.clone());
                let jac = m.hom_jacobiator(&gens[a], &gens[b], &z);
                rep.expect_eq("hom_jacobi", || vec![g(a), g(b), fe(f, c)], &jac, &zero);
            }
            rep
        })
        .collect();
    report.merge(CheckReport::concat(jacobi));

    for a in 0..r {
        for f in &funcs {
            let lhs = m.anchor_unchecked(&alpha_gens[a], &m.pull(f));
            let rhs = m.pull(&m.anchor_unchecked(&gens[a], f));
            report.expect_eq("anchor_alpha_compatibility", || vec![g(a), f.to_string()], &lhs, &rhs);
        }
    }
    for a in 0..r {
        for b in 0..r {
            let ab = m.bracket_generators(a, b);
            for f in &funcs {
                let lhs = m.anchor_unchecked(&ab, &m.pull(f));
                let rb = m.anchor_unchecked(&gens[b], f);
                let ra = m.anchor_unchecked(&gens[a], f);
                let rhs = &m.anchor_unchecked(&alpha_gens[a], &rb) - &m.anchor_unchecked(&alpha_gens[b], &ra);
                report.expect_eq("anchor_bracket_compatibility", || vec![g(a), g(b), f.to_string()], &lhs, &rhs);
            }
        }
    }
    report
}

/// The hom-Gerstenhaber model on sections of `∧A`, without checking axioms.
pub fn gerstenhaber_model_of(m: &HomLieAlgebroidModel) -> HomGerstenhaberModel {
    let (r, n) = (m.r, m.n);
    let as_element = |s: &Section| MixedElement::linear(r, n, s.coeffs());
    let odd = (0..r)
        .map(|a| (0..r).map(|b| as_element(&m.bracket_generators(a, b))).collect())
        .collect();
    let alpha_odd = (0..r)
        .map(|a| MixedElement::linear(r, n, &m.alpha_mat[a]))
        .collect();
    HomGerstenhaberModel::new(r, n, odd, m.anchor_mat.clone(), alpha_odd, m.phi.clone()).expect("consistent shapes")
}

/// The hom-Gerstenhaber bracket on `Γ(∧A)` of an algebroid that passes
/// [`check_algebroid`] at `degree_bound`.
pub fn algebroid_to_gerstenhaber(m: &HomLieAlgebroidModel, degree_bound: u32) -> Result<HomGerstenhaberModel> {
    let report = check_algebroid(m, degree_bound);
    if !report.passed {
        return Err(HomError::AxiomFailure {
            what: "hom-Lie algebroid axioms",
            report,
        });
    }
    Ok(gerstenhaber_model_of(m))
}

/// Restricts the bracket to sections and reads `ρ(e_a)[x_i] = {e_a, x_i}`,
/// without checking axioms.
pub fn algebroid_of(gm: &HomGerstenhaberModel) -> Result<HomLieAlgebroidModel> {
    let rep = extract_anchor_rep_unchecked(gm);
    let r = gm.rank();
    let mut consts = Vec::new();
    for a in 0..r {
        for b in 0..r {
            let v = &rep.bracket[a][b];
            if let Some(d) = v.degree().filter(|&d| d != 1) {
                return Err(HomError::DegreeMismatch(format!("bracket of sections has degree {d}")));
            }
            for c in 0..r {
                consts.push(((a, b, c), v.coefficient(&ExtIndex::single(c))));
            }
        }
    }
    let alpha_mat = rep.alpha_odd.iter().map(MixedElement::linear_coefficients).collect();
    HomLieAlgebroidModel::new(rep.alpha_even, alpha_mat, rep.anchor, consts)
}

/// The algebroid induced by a model that passes both graded suites.
pub fn gerstenhaber_to_algebroid(gm: &HomGerstenhaberModel, bounds: SampleBounds) -> Result<HomLieAlgebroidModel> {
    let report = check_gerstenhaber(gm, bounds);
    if !report.passed {
        return Err(HomError::AxiomFailure {
            what: "hom-Gerstenhaber axioms",
            report,
        });
    }
    algebroid_of(gm)
}

/// `(δ, φ*)` is a representation of `g` on polynomials, on basis elements
/// and pairs and monomials of degree `<= degree_bound`.
pub fn check_action(g: &HomLieAlgebra, phi: &PolyMap, delta: &[PhiDerivation], degree_bound: u32) -> Result<CheckReport> {
    let d = g.dim();
    if delta.len() != d {
        return Err(HomError::dim("derivations", d, delta.len()));
    }
    if let Some(x) = delta.iter().find(|x| x.phi != *phi) {
        return Err(HomError::Unsupported(format!("derivation twisted by {} instead of {phi}", x.phi)));
    }
    let n = phi.nvars();
    // δ(v) for v = sum v_b e_b
    let act = |v: &crate::multilinear::QVec, f: &Polynomial| {
        let mut out = Polynomial::zero(n);
        for (b, c) in v.coeffs().iter().enumerate() {
            if !c.is_zero() {
                out += &delta[b].apply(f).scale(c);
            }
        }
        out
    };
    let pull = |f: &Polynomial| phi.apply(f).expect("same n");
    let funcs = monomials(n, 0, degree_bound);
    let mut report = CheckReport::new();
    for a in 0..d {
        let ea = crate::multilinear::QVec::basis(d, a);
        let aea = g.alpha_apply(&ea);
        for f in &funcs {
            let lhs = act(&aea, &pull(f));
            let rhs = pull(&act(&ea, f));
            report.expect_eq("action_alpha_compatibility", || vec![format!("e{a}"), f.to_string()], &lhs, &rhs);
        }
        for b in 0..d {
            let eb = crate::multilinear::QVec::basis(d, b);
            let aeb = g.alpha_apply(&eb);
            let ab = g.bracket_apply(&ea, &eb);
            for f in &funcs {
                let lhs = act(&ab, &pull(f));
                let rhs = &act(&aea, &act(&eb, f)) - &act(&aeb, &act(&ea, f));
                report.expect_eq(
                    "action_bracket_compatibility",
                    || vec![format!("e{a}"), format!("e{b}"), f.to_string()],
                    &lhs,
                    &rhs,
                );
            }
        }
    }
    Ok(report)
}

/// The action algebroid `Q^n × g`:
/// `[F c_v, G c_w] = φ*(FG) c_[v,w] + φ*(F) ρ(v)[G] c_α(w) - φ*(G) ρ(w)[F] c_α(v)`.
pub fn action_algebroid(
    g: &HomLieAlgebra,
    phi: &PolyMap,
    delta: &[PhiDerivation],
    degree_bound: u32,
) -> Result<HomLieAlgebroidModel> {
    let report = check_action(g, phi, delta, degree_bound)?;
    if !report.passed {
        return Err(HomError::AxiomFailure {
            what: "action representation",
            report,
        });
    }
    let (d, n) = (g.dim(), phi.nvars());
    let c = |q: &Rational| Polynomial::constant(n, q.clone());
    let alpha_mat = (0..d)
        .map(|a| (0..d).map(|b| c(g.alpha().get(b, a))).collect())
        .collect();
    let anchor = delta.iter().map(|x| x.components.clone()).collect();
    let consts = g.bracket().entries().map(|(&k, q)| (k, c(q))).collect::<Vec<_>>();
    HomLieAlgebroidModel::new(phi.clone(), alpha_mat, anchor, consts)
}

/// `φ*(V^k) = V[φ^k]` for every coordinate: `φ` preserves `V`.
pub fn check_preserves_vector_field(v: &PolyMultivectorField, phi: &PolyMap) -> Result<CheckReport> {
    if !v.is_zero() && v.degree() != Some(1) {
        return Err(HomError::DegreeMismatch(format!("expected a vector field, got {v}")));
    }
    let n = phi.nvars();
    if v.num_vars() != n {
        return Err(HomError::dim("vector field variables", n, v.num_vars()));
    }
    let comps = v.element().linear_coefficients();
    let mut report = CheckReport::new();
    for k in 0..n {
        let lhs = phi.apply(&comps[k])?;
        let rhs = v.apply(phi.image(k));
        report.expect_eq("vector_field_preserved", || vec![format!("x{k}")], &lhs, &rhs);
    }
    Ok(report)
}

/// The line bundle algebroid of `V` composed with `φ*`: rank 1,
/// `[F, G] = φ*(F V[G] - G V[F])`, `α = φ*`, anchor row `φ*(V^i)`.
pub fn line_bundle_algebroid(v: &PolyMultivectorField, phi: &PolyMap) -> Result<HomLieAlgebroidModel> {
    let report = check_preserves_vector_field(v, phi)?;
    if !report.passed {
        return Err(HomError::AxiomFailure {
            what: "vector field preservation",
            report,
        });
    }
    let n = phi.nvars();
    let anchor = v
        .element()
        .linear_coefficients()
        .iter()
        .map(|c| phi.apply(c))
        .collect::<Result<Vec<_>>>()?;
    HomLieAlgebroidModel::new(
        phi.clone(),
        vec![vec![Polynomial::one(n)]],
        vec![anchor],
        std::iter::empty(),
    )
}

/// `T*Q^n` on the frame `dx_0..dx_(n-1)` with the composed bracket
/// `φ*[a, b]_π`, `α = φ*` on 1-forms and `ρ(a)[F] = φ*(π(a, dF))`.
pub fn cotangent_algebroid(pi: &PolyMultivectorField, phi: &PolyMap) -> Result<HomLieAlgebroidModel> {
    let report = check_hom_poisson_manifold(pi, phi)?;
    if !report.passed {
        return Err(HomError::AxiomFailure {
            what: "hom-Poisson manifold",
            report,
        });
    }
    let n = pi.num_vars();
    let frame: Vec<PolyForm> = (0..n).map(|i| differential(&Polynomial::var(n, i))).collect();
    let one_form = |w: &PolyForm| w.element().linear_coefficients();
    let alpha_mat = frame
        .iter()
        .map(|dx| pullback_form(dx, phi).map(|w| one_form(&w)))
        .collect::<Result<Vec<_>>>()?;
    let anchor = (0..n)
        .map(|a| (0..n).map(|j| phi.apply(&pi_entry(pi, a, j))).collect::<Result<Vec<_>>>())
        .collect::<Result<Vec<_>>>()?;
    let mut consts = Vec::new();
    for a in 0..n {
        for b in 0..n {
            let w = pullback_form(&cotangent_bracket(pi, &frame[a], &frame[b])?, phi)?;
            for (c, f) in one_form(&w).into_iter().enumerate() {
                consts.push(((a, b, c), f));
            }
        }
    }
    HomLieAlgebroidModel::new(phi.clone(), alpha_mat, anchor, consts)
}

/// A hom-Lie algebra as an algebroid over the point `n = 0`.
pub fn point_algebroid(g: &HomLieAlgebra) -> HomLieAlgebroidModel {
    action_algebroid(g, &PolySubstitution::identity(0), &vec![PhiDerivation::zero(PolySubstitution::identity(0)); g.dim()], 0)
        .expect("the zero action on a point is a representation")
}

/// The first entry where two algebroids differ, as `(field, left, right)`.
pub fn first_difference(a: &HomLieAlgebroidModel, b: &HomLieAlgebroidModel) -> Option<(String, String, String)> {
    if (a.n, a.r) != (b.n, b.r) {
        return Some(("shape".into(), format!("n={} r={}", a.n, a.r), format!("n={} r={}", b.n, b.r)));
    }
    if a.phi != b.phi {
        return Some(("phi".into(), a.phi.to_string(), b.phi.to_string()));
    }
    for i in 0..a.r {
        for j in 0..a.r {
            if a.alpha_mat[i][j] != b.alpha_mat[i][j] {
                return Some((format!("alpha_mat[{i}][{j}]"), a.alpha_mat[i][j].to_string(), b.alpha_mat[i][j].to_string()));
            }
        }
        for j in 0..a.n {
            if a.anchor_mat[i][j] != b.anchor_mat[i][j] {
                return Some((format!("anchor_mat[{i}][{j}]"), a.anchor_mat[i][j].to_string(), b.anchor_mat[i][j].to_string()));
            }
        }
    }
    for i in 0..a.r {
        for j in 0..a.r {
            for k in 0..a.r {
                let (x, y) = (a.structure_function(i, j, k), b.structure_function(i, j, k));
                if x != y {
                    return Some((format!("bracket_consts[{i}][{j}][{k}]"), x.to_string(), y.to_string()));
                }
            }
        }
    }
    None
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures;
    use crate::hom_gerstenhaber::{check_anchor_representation, extract_anchor_rep};
    use crate::rational::int;

    fn x(n: usize, i: usize) -> Polynomial {
        Polynomial::var(n, i)
    }

    #[test]
    fn anchor_examples() {
        let m = fixtures::line_bundle_identity();
        let f = &(&x(2, 0) * &x(2, 0)) * &x(2, 1);
        let one = m.generator(0);
        assert_eq!(m.anchor_apply(&one, &f).unwrap(), f.partial(0).unwrap());
        assert!(m.anchor_apply(&one, &Polynomial::constant(2, int(7))).unwrap().is_zero());
        let m = fixtures::heisenberg_twisted_action();
        let xe = Section::basis(3, 0, x(1, 0));
        let f = x(1, 0).pow(3);
        let lhs = m.anchor_apply(&xe, &f).unwrap();
        let rhs = &m.phi().apply(&x(1, 0)).unwrap() * &m.anchor_apply(&m.generator(0), &f).unwrap();
        assert_eq!(lhs, rhs);
    }

    #[test]
    fn bracket_examples() {
        let m = fixtures::line_bundle_identity();
        let (f, g) = (Section::new(vec![x(2, 0)]), Section::new(vec![x(2, 1)]));
        assert_eq!(m.bracket_sections(&f, &g).unwrap(), Section::new(vec![-&x(2, 1)]));
        assert!(m.bracket_sections(&f, &f).unwrap().is_zero());
        let m = fixtures::cotangent_pi2();
        let xs = Section::new(vec![&x(2, 0) * &x(2, 1), x(2, 1).pow(2)]);
        assert!(m.bracket_sections(&xs, &xs).unwrap().is_zero());
        let h = fixtures::heisenberg_action();
        assert_eq!(h.bracket_sections(&h.generator(0), &h.generator(1)).unwrap(), h.generator(2));
    }

    #[test]
    fn fixtures_pass() {
        for (name, m) in fixtures::algebroids() {
            let r = check_algebroid(&m, 3);
            assert!(r.passed, "{name}: {r}");
        }
    }

    #[test]
    fn corrupted_anchor_fails_axiom_four() {
        let m = fixtures::line_bundle();
        let mut anchor = m.anchor_mat().to_vec();
        anchor[0][1] = &anchor[0][1] + &Polynomial::one(2);
        let bad = HomLieAlgebroidModel::new(
            m.phi().clone(),
            m.alpha_mat().to_vec(),
            anchor,
            m.bracket_consts().clone(),
        )
        .unwrap();
        let r = check_algebroid(&bad, 3);
        assert!(r.failed_identity("anchor_alpha_compatibility") || r.failed_identity("anchor_bracket_compatibility"));
    }

    #[test]
    fn round_trips() {
        for (name, m) in fixtures::algebroids() {
            let gm = algebroid_to_gerstenhaber(&m, 3).unwrap();
            let back = gerstenhaber_to_algebroid(&gm, SampleBounds::default()).unwrap();
            assert_eq!(first_difference(&m, &back), None, "{name}");
            let rep = extract_anchor_rep(&gm, SampleBounds::default()).unwrap();
            assert_eq!(rep.anchor, m.anchor_mat(), "{name}");
            assert!(check_anchor_representation(&gm, &rep, 2).passed, "{name}");
        }
    }

    #[test]
    fn generated_bracket_reduces_to_sections_and_anchor() {
        let m = fixtures::heisenberg_twisted_action();
        let gm = gerstenhaber_model_of(&m);
        let f = x(1, 0).pow(2);
        let (xs, ys) = (Section::basis(3, 0, f.clone()), Section::basis(3, 1, x(1, 0)));
        let el = |s: &Section| MixedElement::linear(3, 1, s.coeffs());
        let lhs = gm.bracket(&el(&xs), &el(&ys));
        assert_eq!(lhs, el(&m.bracket_sections(&xs, &ys).unwrap()));
        let fun = gm.function(x(1, 0).pow(3));
        assert_eq!(gm.bracket(&el(&xs), &fun).function_part(), m.anchor_apply(&xs, &x(1, 0).pow(3)).unwrap());
    }

    #[test]
    fn point_base_is_a_hom_lie_algebra() {
        let g = fixtures::sl2_composition();
        let m = point_algebroid(&g);
        assert!(check_algebroid(&m, 3).passed);
        let back = algebroid_of(&gerstenhaber_model_of(&m)).unwrap();
        let rep = extract_anchor_rep_unchecked(&gerstenhaber_model_of(&back));
        assert_eq!(rep.degree_one_hom_lie().unwrap(), g);
    }

    #[test]
    fn construction_preconditions() {
        let v = PolyMultivectorField::linear(&[Polynomial::one(2), Polynomial::zero(2)]);
        let scale = PolySubstitution::new(vec![x(2, 0).scale(&int(2)), x(2, 1)]).unwrap();
        assert!(line_bundle_algebroid(&v, &scale).is_err());
        let pi = fixtures::pi2_bivector();
        let err = cotangent_algebroid(&pi, &scale).unwrap_err();
        assert!(err.report().unwrap().failed_identity("bivector_pushforward"));
        let zero = cotangent_algebroid(&PolyMultivectorField::zero(2), &PolySubstitution::identity(2)).unwrap();
        assert!(zero.bracket_consts().is_empty());
        assert!(zero.anchor_mat().iter().flatten().all(Polynomial::is_zero));
    }

    #[test]
    fn cotangent_linear_pi_structure_functions() {
        // [dx0, dx1] = φ*(d x2) = 6 dx2, the rest vanish
        let m = fixtures::cotangent_heisenberg();
        let consts: Vec<_> = m.bracket_consts().iter().map(|(k, f)| (*k, f.clone())).collect();
        let six = Polynomial::constant(3, int(6));
        assert_eq!(consts, vec![((0, 1, 2), six.clone()), ((1, 0, 2), -&six)]);
        assert_eq!(m.anchor_mat()[0][1], x(3, 2).scale(&int(6)));
    }

    #[test]
    fn cotangent_constant_pi_has_zero_bracket() {
        let m = cotangent_algebroid(&fixtures::pi2_bivector(), &PolySubstitution::identity(2)).unwrap();
        assert!(m.bracket_consts().is_empty());
    }

    #[test]
    fn anchor_is_a_phi_derivation() {
        for (name, m) in fixtures::algebroids() {
            let mons = monomials(m.num_vars(), 0, 2);
            for a in 0..m.rank() {
                let x = m.generator(a);
                for f in &mons {
                    for g in &mons {
                        let lhs = m.anchor_apply(&x, &(f * g)).unwrap();
                        let rhs = &(&m.phi().apply(f).unwrap() * &m.anchor_apply(&x, g).unwrap())
                            + &(&m.phi().apply(g).unwrap() * &m.anchor_apply(&x, f).unwrap());
                        assert_eq!(lhs, rhs, "{name}");
                    }
                }
            }
        }
    }
}
