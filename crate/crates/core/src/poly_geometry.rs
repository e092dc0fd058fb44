//! Cartan and Schouten calculus on `Q^n` with polynomial coefficients.
//!
//! Multivector fields and forms are both [`MixedElement`]s of rank `n` over
//! `n` variables; the newtypes keep them apart. The Schouten bracket is the
//! Gerstenhaber bracket generated by `{∂_i, ∂_j} = 0` and `{∂_i, x_k} = δ_ik`
//! with `α = id`, so that on vector fields it is the Lie bracket and
//! `[X, F] = X[F]`.
//!
//! Interior products contract from the left: `ι_{∂_I}(dx_I ∧ dx_K) = dx_K`.

use std::fmt;

use crate::error::{HomError, Result};
use crate::graded::MixedElement;
use crate::hom_algebras::{HomPoissonPolyModel, ProductMode};
use crate::hom_gerstenhaber::HomGerstenhaberModel;
use crate::multilinear::ExtIndex;
use crate::poly::{PolySubstitution, Polynomial};
use crate::rational::Rational;
use crate::report::CheckReport;

/// A polynomial map `Q^n -> Q^n`, stored as the images of the coordinates.
pub type PolyMap = PolySubstitution;

macro_rules! graded_newtype {
    ($name:ident, $symbol:expr) => {
        #[derive(Clone, PartialEq, Eq, Hash, Debug)]
        pub struct $name(MixedElement);

        impl $name {
            pub fn zero(n: usize) -> Self {
                $name(MixedElement::zero(n, n))
            }

            /// Errors unless the element has rank equal to its variable count.
            pub fn from_element(x: MixedElement) -> Result<Self> {
                if x.rank() != x.nvars() {
                    return Err(HomError::dim("exterior rank", x.nvars(), x.rank()));
                }
                Ok($name(x))
            }

            pub fn from_terms(n: usize, terms: impl IntoIterator<Item = (ExtIndex, Polynomial)>) -> Result<Self> {
                MixedElement::from_terms(n, n, terms).map($name)
            }

            pub fn function(f: Polynomial) -> Self {
                $name(MixedElement::function(f.nvars(), f))
            }

            /// Degree-1 element with the given components.
            pub fn linear(components: &[Polynomial]) -> Self {
                let n = components.len();
                $name(MixedElement::linear(n, n, components))
            }

            pub fn num_vars(&self) -> usize {
                self.0.nvars()
            }

            pub fn element(&self) -> &MixedElement {
                &self.0
            }

            pub fn into_element(self) -> MixedElement {
                self.0
            }

            pub fn terms(&self) -> impl Iterator<Item = (&ExtIndex, &Polynomial)> {
                self.0.terms()
            }

            pub fn coefficient(&self, idx: &ExtIndex) -> Polynomial {
                self.0.coefficient(idx)
            }

            pub fn degree(&self) -> Option<usize> {
                self.0.degree()
            }

            pub fn is_zero(&self) -> bool {
                self.0.is_zero()
            }

            pub fn add(&self, other: &Self) -> Self {
                $name(&self.0 + &other.0)
            }

            pub fn sub(&self, other: &Self) -> Self {
                $name(&self.0 - &other.0)
            }

            pub fn scale(&self, c: &Rational) -> Self {
                $name(self.0.scale(c))
            }

            pub fn mul_poly(&self, f: &Polynomial) -> Self {
                $name(self.0.mul_poly(f))
            }

            pub fn wedge(&self, other: &Self) -> Self {
                $name(self.0.wedge(&other.0))
            }
        }

        impl fmt::Display for $name {
            fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
                f.write_str(&self.0.display_with($symbol))
            }
        }
    };
}

graded_newtype!(PolyMultivectorField, "d");
graded_newtype!(PolyForm, "dx");

impl PolyMultivectorField {
    /// `sum_{i<j} π^{ij} ∂_i ∧ ∂_j` from `(i, j, π^{ij})` entries; entries
    /// with `i > j` are stored with the opposite sign.
    pub fn bivector(n: usize, entries: &[(usize, usize, Polynomial)]) -> Result<Self> {
        let mut out = MixedElement::zero(n, n);
        for (i, j, f) in entries {
            let (s, k) = ExtIndex::single(*i)
                .wedge_sign(&ExtIndex::single(*j))
                .ok_or_else(|| HomError::DegreeMismatch(format!("∂{i}∧∂{i} vanishes")))?;
            if k.max_index().is_some_and(|m| m >= n) {
                return Err(HomError::IndexOutOfRange {
                    context: "bivector index",
                    index: (*i).max(*j),
                    size: n,
                });
            }
            out.add_term(k, if s < 0 { -f } else { f.clone() });
        }
        Ok(PolyMultivectorField(out))
    }

    /// `X[F]` for a vector field `X`.
    pub fn apply(&self, f: &Polynomial) -> Polynomial {
        let mut out = Polynomial::zero(f.nvars());
        for (i, xi) in self.0.linear_coefficients().iter().enumerate() {
            if !xi.is_zero() {
                out += &(xi * &f.partial(i).expect("in range"));
            }
        }
        out
    }
}

fn check_same(n: usize, m: usize, context: &'static str) -> Result<()> {
    if n == m {
        Ok(())
    } else {
        Err(HomError::dim(context, n, m))
    }
}

/// The Gerstenhaber model whose bracket is the Schouten bracket on `Q^n`.
pub fn schouten_model(n: usize) -> HomGerstenhaberModel {
    let odd = vec![vec![MixedElement::zero(n, n); n]; n];
    let mixed = (0..n)
        .map(|i| {
            (0..n)
                .map(|k| if i == k { Polynomial::one(n) } else { Polynomial::zero(n) })
                .collect()
        })
        .collect();
    let alpha = (0..n).map(|i| MixedElement::generator(n, n, i)).collect();
    HomGerstenhaberModel::new(n, n, odd, mixed, alpha, PolySubstitution::identity(n)).expect("consistent shapes")
}

/// The Schouten–Nijenhuis bracket; `deg [X, Y] = deg X + deg Y - 1`.
pub fn schouten(x: &PolyMultivectorField, y: &PolyMultivectorField) -> Result<PolyMultivectorField> {
    check_same(x.num_vars(), y.num_vars(), "schouten arguments")?;
    let m = schouten_model(x.num_vars());
    Ok(PolyMultivectorField(m.bracket(&x.0, &y.0)))
}

/// Exterior derivative.
pub fn de_rham_d(w: &PolyForm) -> PolyForm {
    let n = w.num_vars();
    let mut out = MixedElement::zero(n, n);
    for (idx, f) in w.terms() {
        for k in 0..n {
            let dk = f.partial(k).expect("in range");
            if dk.is_zero() {
                continue;
            }
            if let Some((s, j)) = ExtIndex::single(k).wedge_sign(idx) {
                out.add_term(j, if s < 0 { -&dk } else { dk });
            }
        }
    }
    PolyForm(out)
}

/// `d F` for a function.
pub fn differential(f: &Polynomial) -> PolyForm {
    de_rham_d(&PolyForm::function(f.clone()))
}

/// Left contraction under `<∂_I, dx_J> = δ_IJ`; zero when `deg X > deg w`.
pub fn interior(x: &PolyMultivectorField, w: &PolyForm) -> Result<PolyForm> {
    check_same(x.num_vars(), w.num_vars(), "interior product")?;
    let n = w.num_vars();
    let mut out = MixedElement::zero(n, n);
    for (i, g) in x.terms() {
        for (j, f) in w.terms() {
            if !i.indices().iter().all(|a| j.contains(*a)) {
                continue;
            }
            let rest: Vec<usize> = j.indices().iter().copied().filter(|a| !i.contains(*a)).collect();
            let k = ExtIndex::new(rest).expect("subsequence of a sorted list");
            let (s, _) = i.wedge_sign(&k).expect("disjoint");
            let c = g * f;
            out.add_term(k, if s < 0 { -&c } else { c });
        }
    }
    Ok(PolyForm(out))
}

/// `L_X = ι_X d + d ι_X` for a vector field `X`.
pub fn lie_derivative(x: &PolyMultivectorField, w: &PolyForm) -> Result<PolyForm> {
    if !x.is_zero() && x.degree() != Some(1) {
        return Err(HomError::DegreeMismatch(format!("Lie derivative along a non-vector field {x}")));
    }
    let a = interior(x, &de_rham_d(w))?;
    let b = de_rham_d(&interior(x, w)?);
    Ok(a.add(&b))
}

/// `π^{ij}` with `π^{ji} = -π^{ij}`.
pub fn pi_entry(pi: &PolyMultivectorField, i: usize, j: usize) -> Polynomial {
    match ExtIndex::single(i).wedge_sign(&ExtIndex::single(j)) {
        None => Polynomial::zero(pi.num_vars()),
        Some((s, k)) => {
            let c = pi.coefficient(&k);
            if s < 0 {
                -&c
            } else {
                c
            }
        }
    }
}

fn check_bivector(pi: &PolyMultivectorField) -> Result<()> {
    if pi.is_zero() || pi.degree() == Some(2) {
        Ok(())
    } else {
        Err(HomError::DegreeMismatch(format!("expected a bivector field, got {pi}")))
    }
}

/// `(π# a)^j = sum_i a_i π^{ij}`, so that `(π# a)[F] = π(a, dF)`.
pub fn pi_sharp(pi: &PolyMultivectorField, a: &PolyForm) -> Result<PolyMultivectorField> {
    check_bivector(pi)?;
    check_same(pi.num_vars(), a.num_vars(), "pi_sharp")?;
    if !a.is_zero() && a.degree() != Some(1) {
        return Err(HomError::DegreeMismatch(format!("expected a 1-form, got {a}")));
    }
    let n = pi.num_vars();
    let ai = a.0.linear_coefficients();
    let comps: Vec<Polynomial> = (0..n)
        .map(|j| {
            let mut s = Polynomial::zero(n);
            for (i, c) in ai.iter().enumerate() {
                if !c.is_zero() {
                    s += &(c * &pi_entry(pi, i, j));
                }
            }
            s
        })
        .collect();
    Ok(PolyMultivectorField::linear(&comps))
}

/// `{F, G} = π(dF, dG) = sum_ij π^{ij} ∂_i F ∂_j G`.
pub fn poisson_bracket(pi: &PolyMultivectorField, f: &Polynomial, g: &Polynomial) -> Polynomial {
    let n = pi.num_vars();
    let mut out = Polynomial::zero(n);
    for (idx, p) in pi.terms() {
        if let [i, j] = idx.indices() {
            let (fi, fj) = (f.partial(*i).expect("in range"), f.partial(*j).expect("in range"));
            let (gi, gj) = (g.partial(*i).expect("in range"), g.partial(*j).expect("in range"));
            out += &(p * &(&(&fi * &gj) - &(&fj * &gi)));
        }
    }
    out
}

/// `{F, {G, H}} + {G, {H, F}} + {H, {F, G}}` for `{ , } = π(d, d)`.
pub fn poisson_jacobiator(pi: &PolyMultivectorField, f: &Polynomial, g: &Polynomial, h: &Polynomial) -> Polynomial {
    let br = |a: &Polynomial, b: &Polynomial| poisson_bracket(pi, a, b);
    &(&br(f, &br(g, h)) + &br(g, &br(h, f))) + &br(h, &br(f, g))
}

/// `<T, dF ∧ dG ∧ dH>` for a trivector `T`.
pub fn trivector_pairing(t: &PolyMultivectorField, f: &Polynomial, g: &Polynomial, h: &Polynomial) -> Result<Polynomial> {
    let w = differential(f).wedge(&differential(g)).wedge(&differential(h));
    Ok(interior(t, &w)?.0.function_part())
}

/// The constant `c` with `Jac(F, G, H) = c <[π, π], dF ∧ dG ∧ dH>` for the
/// Schouten convention fixed by this module, measured once on a fixture.
pub fn jacobiator_schouten_constant() -> Rational {
    crate::rational::frac(1, 2)
}

/// `φ*(f dx_I) = (f∘φ) dφ_{i1} ∧ ... ∧ dφ_{ip}`.
pub fn pullback_form(w: &PolyForm, phi: &PolyMap) -> Result<PolyForm> {
    check_same(w.num_vars(), phi.nvars(), "pullback")?;
    let n = w.num_vars();
    let dphi: Vec<PolyForm> = phi.images().iter().map(differential).collect();
    let mut out = PolyForm::zero(n);
    for (idx, f) in w.terms() {
        let mut acc = PolyForm::function(phi.apply(f)?);
        for &i in idx.indices() {
            acc = acc.wedge(&dphi[i]);
        }
        out = out.add(&acc);
    }
    Ok(out)
}

/// `π^{kl}∘φ = sum_ij (∂_i φ^k)(∂_j φ^l) π^{ij}` for all `k < l`.
pub fn bivector_pushforward_check(pi: &PolyMultivectorField, phi: &PolyMap) -> Result<CheckReport> {
    check_bivector(pi)?;
    check_same(pi.num_vars(), phi.nvars(), "bivector pushforward")?;
    let n = pi.num_vars();
    let mut report = CheckReport::new();
    for k in 0..n {
        for l in k + 1..n {
            let lhs = phi.apply(&pi_entry(pi, k, l))?;
            let mut rhs = Polynomial::zero(n);
            for i in 0..n {
                for j in 0..n {
                    let p = pi_entry(pi, i, j);
                    if !p.is_zero() {
                        rhs += &(&(&phi.jacobian(k, i) * &phi.jacobian(l, j)) * &p);
                    }
                }
            }
            report.expect_eq("bivector_pushforward", || vec![format!("d{k}^d{l}")], &lhs, &rhs);
        }
    }
    Ok(report)
}

/// `f∘φ∘φ = 0`, i.e. `f` vanishes on the image of `φ²`.
pub fn vanishes_on_image(f: &Polynomial, phi: &PolyMap) -> Result<bool> {
    Ok(phi.apply(&phi.apply(f)?)?.is_zero())
}

/// `φ` preserves `π` and every coefficient of `[π, π]` vanishes on the image of `φ²`.
pub fn check_hom_poisson_manifold(pi: &PolyMultivectorField, phi: &PolyMap) -> Result<CheckReport> {
    let mut report = bivector_pushforward_check(pi, phi)?;
    let pp = schouten(pi, pi)?;
    for (idx, f) in pp.terms() {
        let composite = phi.apply(&phi.apply(f)?)?;
        let zero = Polynomial::zero(pi.num_vars());
        report.expect_eq("schouten_vanishes_on_image", || vec![idx.name_with("d")], &composite, &zero);
    }
    Ok(report)
}

/// `(Q[x], μ_φ*, φ*∘{ , }, φ*)` with `{F, G} = π(dF, dG)`; the purely
/// variant is [`HomPoissonPolyModel::purely_variant`].
pub fn hom_poisson_by_composition(pi: &PolyMultivectorField, phi: &PolyMap) -> Result<HomPoissonPolyModel> {
    let report = check_hom_poisson_manifold(pi, phi)?;
    if !report.passed {
        return Err(HomError::AxiomFailure {
            what: "hom-Poisson manifold",
            report,
        });
    }
    let (pi2, phi2) = (pi.clone(), phi.clone());
    Ok(HomPoissonPolyModel::new(
        ProductMode::Composed,
        phi.clone(),
        std::sync::Arc::new(move |f: &Polynomial, g: &Polynomial| {
            phi2.apply(&poisson_bracket(&pi2, f, g)).expect("same variable count")
        }),
    ))
}

/// `[a, b]_π = L_{π# a} b - L_{π# b} a - d ι_π(a ∧ b)`.
///
/// With the pairing and `π#` conventions of this module this sign gives
/// `[dF, dG]_π = d{F, G}`.
pub fn cotangent_bracket(pi: &PolyMultivectorField, a: &PolyForm, b: &PolyForm) -> Result<PolyForm> {
    let la = lie_derivative(&pi_sharp(pi, a)?, b)?;
    let lb = lie_derivative(&pi_sharp(pi, b)?, a)?;
    let contraction = de_rham_d(&interior(pi, &a.wedge(b))?);
    Ok(la.sub(&lb).sub(&contraction))
}
