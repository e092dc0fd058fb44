//! Hom-Gerstenhaber brackets on `∧(e0..er) ⊗ Q[x0..xn]`.
//!
//! A model stores the bracket on generators (`{e_a, e_b}` of degree 1 and
//! `{e_a, x_k}` of degree 0, with `{x_k, x_l} = 0`) and the twisting map on
//! generators. The bracket of two basis words is obtained from the
//! hom-Leibniz rule in the second slot and graded skew-symmetry:
//!
//! ```text
//! {u1..up, w1..wq} = sum_{i,j} s_ij  α(w<j) α(u<i) {u_i, w_j} α(u>i) α(w>j)
//! s_ij = (-1)^((|U|-1)|w<j|) (-1)^(|u>i| (|w_j|-1))
//! ```
//!
//! On `∧g` this is the double sum with signs `(-1)^(i+j)`. A function
//! argument gets the sign `(-1)^(p-i)` for the `i`-th of `p` odd factors.

use std::collections::{BTreeMap, HashMap};
use std::fmt;
use std::sync::Mutex;

use num_traits::One;
use rayon::prelude::*;

use crate::error::{HomError, Result};
use crate::graded::MixedElement;
use crate::hom_algebras::{check_representation, HomLieAlgebra, Representation};
use crate::multilinear::{is_bracket_automorphism, ExtIndex, QMatrix, StructureConstants};
use crate::poly::{MultiIndex, PolySubstitution, Polynomial};
use crate::rational::Rational;
use crate::report::CheckReport;

/// A basis element `x^m e_I`.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Debug)]
pub struct BasisElement {
    pub ext: ExtIndex,
    pub mon: MultiIndex,
}

impl BasisElement {
    pub fn new(mon: MultiIndex, ext: ExtIndex) -> Self {
        BasisElement { ext, mon }
    }

    pub fn degree(&self) -> usize {
        self.ext.degree()
    }

    pub fn to_element(&self, rank: usize) -> MixedElement {
        MixedElement::basis(rank, self.mon.clone(), self.ext.clone())
    }
}

impl fmt::Display for BasisElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match (self.mon.degree(), self.ext.degree()) {
            (0, _) => write!(f, "{}", self.ext),
            (_, 0) => write!(f, "{}", self.mon),
            _ => write!(f, "{}*{}", self.mon, self.ext),
        }
    }
}

/// Finite sampling window for the graded checkers.
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub struct SampleBounds {
    /// Bound on the sum of exterior degrees of the arguments of one identity.
    pub max_degree: usize,
    /// Bound on the monomial degree of each argument's coefficient.
    pub poly_degree: u32,
}

impl Default for SampleBounds {
    fn default() -> Self {
        SampleBounds {
            max_degree: 3,
            poly_degree: 1,
        }
    }
}

/// A bracket of degree -1 with a twisting algebra map, both given on generators.
pub struct HomGerstenhaberModel {
    rank: usize,
    nvars: usize,
    odd_brackets: Vec<Vec<MixedElement>>,
    mixed_brackets: Vec<Vec<Polynomial>>,
    alpha_odd: Vec<MixedElement>,
    alpha_even: PolySubstitution,
    overrides: BTreeMap<(BasisElement, BasisElement), MixedElement>,
    alpha_cache: Mutex<HashMap<MultiIndex, Polynomial>>,
    bracket_cache: Mutex<HashMap<(BasisElement, BasisElement), MixedElement>>,
}

impl Clone for HomGerstenhaberModel {
    fn clone(&self) -> Self {
        HomGerstenhaberModel {
            rank: self.rank,
            nvars: self.nvars,
            odd_brackets: self.odd_brackets.clone(),
            mixed_brackets: self.mixed_brackets.clone(),
            alpha_odd: self.alpha_odd.clone(),
            alpha_even: self.alpha_even.clone(),
            overrides: self.overrides.clone(),
            alpha_cache: Mutex::new(HashMap::new()),
            bracket_cache: Mutex::new(HashMap::new()),
        }
    }
}

impl fmt::Debug for HomGerstenhaberModel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("HomGerstenhaberModel")
            .field("rank", &self.rank)
            .field("nvars", &self.nvars)
            .field("odd_brackets", &self.odd_brackets)
            .field("mixed_brackets", &self.mixed_brackets)
            .field("alpha_odd", &self.alpha_odd)
            .field("alpha_even", &self.alpha_even)
            .field("overrides", &self.overrides.len())
            .finish()
    }
}

impl PartialEq for HomGerstenhaberModel {
    fn eq(&self, other: &Self) -> bool {
        self.rank == other.rank
            && self.nvars == other.nvars
            && self.odd_brackets == other.odd_brackets
            && self.mixed_brackets == other.mixed_brackets
            && self.alpha_odd == other.alpha_odd
            && self.alpha_even == other.alpha_even
            && self.overrides == other.overrides
    }
}

fn sign(odd: bool) -> Rational {
    if odd {
        -Rational::one()
    } else {
        Rational::one()
    }
}

impl HomGerstenhaberModel {
    /// `odd_brackets[a][b] = {e_a, e_b}` (degree 1), `mixed_brackets[a][k] =
    /// {e_a, x_k}`, `alpha_odd[a] = α(e_a)` (degree 1), `alpha_even` = α on
    /// the coefficient ring.
    pub fn new(
        rank: usize,
        nvars: usize,
        odd_brackets: Vec<Vec<MixedElement>>,
        mixed_brackets: Vec<Vec<Polynomial>>,
        alpha_odd: Vec<MixedElement>,
        alpha_even: PolySubstitution,
    ) -> Result<Self> {
        let shape = |what: &'static str, got: usize, want: usize| {
            if got == want {
                Ok(())
            } else {
                Err(HomError::dim(what, want, got))
            }
        };
        shape("generator bracket rows", odd_brackets.len(), rank)?;
        shape("anchor rows", mixed_brackets.len(), rank)?;
        shape("twisting images", alpha_odd.len(), rank)?;
        shape("coefficient map variables", alpha_even.nvars(), nvars)?;
        let degree_one = |v: &MixedElement, what: &'static str| -> Result<()> {
            shape(what, v.rank(), rank)?;
            shape(what, v.nvars(), nvars)?;
            if !v.is_zero() && v.degree() != Some(1) {
                return Err(HomError::DegreeMismatch(format!("{what} must have degree 1, got {v}")));
            }
            Ok(())
        };
        for row in &odd_brackets {
            shape("generator bracket columns", row.len(), rank)?;
            for v in row {
                degree_one(v, "generator bracket")?;
            }
        }
        for row in &mixed_brackets {
            shape("anchor columns", row.len(), nvars)?;
            for f in row {
                shape("anchor variables", f.nvars(), nvars)?;
            }
        }
        for v in &alpha_odd {
            degree_one(v, "twisting image")?;
        }
        Ok(HomGerstenhaberModel {
            rank,
            nvars,
            odd_brackets,
            mixed_brackets,
            alpha_odd,
            alpha_even,
            overrides: BTreeMap::new(),
            alpha_cache: Mutex::new(HashMap::new()),
            bracket_cache: Mutex::new(HashMap::new()),
        })
    }

    /// Replaces the bracket of two basis elements by an explicit value,
    /// leaving every other basis pair to the extension rule.
    pub fn with_override(mut self, u: BasisElement, w: BasisElement, value: MixedElement) -> Self {
        self.overrides.insert((u, w), value);
        self.bracket_cache.lock().expect("cache lock").clear();
        self
    }

    pub fn rank(&self) -> usize {
        self.rank
    }

    pub fn nvars(&self) -> usize {
        self.nvars
    }

    pub fn odd_brackets(&self) -> &[Vec<MixedElement>] {
        &self.odd_brackets
    }

    pub fn mixed_brackets(&self) -> &[Vec<Polynomial>] {
        &self.mixed_brackets
    }

    pub fn alpha_odd(&self) -> &[MixedElement] {
        &self.alpha_odd
    }

    pub fn alpha_even(&self) -> &PolySubstitution {
        &self.alpha_even
    }

    pub fn generator(&self, a: usize) -> MixedElement {
        MixedElement::generator(self.rank, self.nvars, a)
    }

    pub fn function(&self, f: Polynomial) -> MixedElement {
        MixedElement::function(self.rank, f)
    }

    pub fn basis_element(&self, b: &BasisElement) -> MixedElement {
        b.to_element(self.rank)
    }

    fn alpha_monomial(&self, m: &MultiIndex) -> Polynomial {
        if let Some(p) = self.alpha_cache.lock().expect("cache lock").get(m) {
            return p.clone();
        }
        let p = self
            .alpha_even
            .apply(&Polynomial::monomial(m.clone(), Rational::one()))
            .expect("same variable count");
        self.alpha_cache.lock().expect("cache lock").insert(m.clone(), p.clone());
        p
    }

    /// α on coefficients.
    pub fn alpha_poly(&self, f: &Polynomial) -> Polynomial {
        let mut out = Polynomial::zero(self.nvars);
        for (m, c) in f.terms() {
            out += &self.alpha_monomial(m).scale(c);
        }
        out
    }

    fn alpha_word(&self, idx: &[usize]) -> MixedElement {
        let mut acc = MixedElement::scalar(self.rank, self.nvars, Rational::one());
        for &a in idx {
            acc = acc.wedge(&self.alpha_odd[a]);
        }
        acc
    }

    /// The algebra map α: `α(F e_I) = α(F) α(e_i1) ∧ ... ∧ α(e_ip)`.
    pub fn alpha(&self, x: &MixedElement) -> MixedElement {
        let mut out = MixedElement::zero(self.rank, self.nvars);
        for (idx, f) in x.terms() {
            out += &self.alpha_word(idx.indices()).mul_poly(&self.alpha_poly(f));
        }
        out
    }

    pub fn alpha_power(&self, x: &MixedElement, k: u32) -> MixedElement {
        (0..k).fold(x.clone(), |acc, _| self.alpha(&acc))
    }

    /// Bilinear extension of [`Self::bracket_basis`].
    pub fn bracket(&self, x: &MixedElement, y: &MixedElement) -> MixedElement {
        let mut out = MixedElement::zero(self.rank, self.nvars);
        for (i, f) in x.terms() {
            for (m1, c1) in f.terms() {
                let u = BasisElement::new(m1.clone(), i.clone());
                for (j, g) in y.terms() {
                    for (m2, c2) in g.terms() {
                        let w = BasisElement::new(m2.clone(), j.clone());
                        out += &self.bracket_basis(&u, &w).scale(&(c1 * c2));
                    }
                }
            }
        }
        out
    }

    pub fn bracket_basis(&self, u: &BasisElement, w: &BasisElement) -> MixedElement {
        if let Some(v) = self.overrides.get(&(u.clone(), w.clone())) {
            return v.clone();
        }
        let key = (u.clone(), w.clone());
        if let Some(v) = self.bracket_cache.lock().expect("cache lock").get(&key) {
            return v.clone();
        }
        let v = self.bracket_words(u, w);
        self.bracket_cache.lock().expect("cache lock").insert(key, v.clone());
        v
    }

    fn prefix_suffix(&self, idx: &[usize]) -> (Vec<MixedElement>, Vec<MixedElement>) {
        let one = MixedElement::scalar(self.rank, self.nvars, Rational::one());
        let mut pre = vec![one.clone()];
        for &a in idx {
            let next = pre.last().expect("nonempty").wedge(&self.alpha_odd[a]);
            pre.push(next);
        }
        let mut suf = vec![one; idx.len() + 1];
        for s in (0..idx.len()).rev() {
            suf[s] = self.alpha_odd[idx[s]].wedge(&suf[s + 1]);
        }
        (pre, suf)
    }

    /// The word formula of the module docs. Words list the even factors of
    /// `x^m` first, then the odd factors of `e_I`; copies of the same even
    /// factor give equal summands and are counted by multiplicity.
    fn bracket_words(&self, u: &BasisElement, w: &BasisElement) -> MixedElement {
        let (r, n) = (self.rank, self.nvars);
        let (ui, wj) = (u.ext.indices(), w.ext.indices());
        let (p, q) = (ui.len(), wj.len());
        let (pre_u, suf_u) = self.prefix_suffix(ui);
        let (pre_w, suf_w) = self.prefix_suffix(wj);
        let ax_u = self.alpha_monomial(&u.mon);
        let ax_w = self.alpha_monomial(&w.mon);
        let mut out = MixedElement::zero(r, n);
        // the sign (-1)^((|U|-1) t) for an odd w_j preceded by t odd factors
        let first_sign = |t: usize| sign((p + 1) % 2 == 1 && t % 2 == 1);

        // even u-factor x_k against odd w_t: {x_k, e_b} = -{e_b, x_k}
        for k in 0..n {
            let Some(rest) = u.mon.lower(k) else { continue };
            let mult = Rational::from_integer(u.mon.exponents()[k].into());
            let coeff = &self.alpha_monomial(&rest) * &ax_w;
            for t in 0..q {
                let gb = &self.mixed_brackets[wj[t]][k];
                if gb.is_zero() {
                    continue;
                }
                let word = pre_w[t].wedge(&pre_u[p]).wedge(&suf_w[t + 1]);
                let c = -(&mult * first_sign(t));
                out += &word.mul_poly(&(&coeff * gb)).scale(&c);
            }
        }
        // odd u_s against even w-factor x_l
        for l in 0..n {
            let Some(rest) = w.mon.lower(l) else { continue };
            let mult = Rational::from_integer(w.mon.exponents()[l].into());
            let coeff = &ax_u * &self.alpha_monomial(&rest);
            for s in 0..p {
                let gb = &self.mixed_brackets[ui[s]][l];
                if gb.is_zero() {
                    continue;
                }
                let word = pre_u[s].wedge(&suf_u[s + 1]).wedge(&pre_w[q]);
                let c = &mult * sign((p - 1 - s) % 2 == 1);
                out += &word.mul_poly(&(&coeff * gb)).scale(&c);
            }
        }
        // odd against odd
        if p > 0 && q > 0 {
            let coeff = &ax_u * &ax_w;
            for s in 0..p {
                for t in 0..q {
                    let gb = &self.odd_brackets[ui[s]][wj[t]];
                    if gb.is_zero() {
                        continue;
                    }
                    let word = pre_w[t]
                        .wedge(&pre_u[s])
                        .wedge(gb)
                        .wedge(&suf_u[s + 1])
                        .wedge(&suf_w[t + 1]);
                    out += &word.mul_poly(&coeff).scale(&first_sign(t));
                }
            }
        }
        out
    }

    /// The cyclic hom-Jacobiator with signs `(-1)^((i-1)(k-1))`,
    /// `(-1)^((j-1)(i-1))`, `(-1)^((k-1)(j-1))`.
    pub fn hom_jacobiator(&self, x: &MixedElement, y: &MixedElement, z: &MixedElement) -> Result<MixedElement> {
        for v in [x, y, z] {
            if !v.is_homogeneous() {
                return Err(HomError::NonHomogeneous);
            }
        }
        let zero = MixedElement::zero(self.rank, self.nvars);
        let (Some(i), Some(j), Some(k)) = (x.degree(), y.degree(), z.degree()) else {
            return Ok(zero);
        };
        let shifted_odd = |a: usize, b: usize| (a + 1) % 2 == 1 && (b + 1) % 2 == 1;
        let term = |a: &MixedElement, b: &MixedElement, c: &MixedElement| self.bracket(&self.alpha(a), &self.bracket(b, c));
        let mut out = term(x, y, z).scale(&sign(shifted_odd(i, k)));
        out += &term(y, z, x).scale(&sign(shifted_odd(j, i)));
        out += &term(z, x, y).scale(&sign(shifted_odd(k, j)));
        Ok(out)
    }

    /// All `x^m e_I` with `|m| <= poly_degree` and `|I| <= max_degree`.
    pub fn sample_basis(&self, bounds: SampleBounds) -> Vec<BasisElement> {
        let mons = MultiIndex::all_up_to(self.nvars, bounds.poly_degree);
        let mut out = Vec::new();
        for ext in ExtIndex::all_up_to(self.rank, bounds.max_degree) {
            for m in &mons {
                out.push(BasisElement::new(m.clone(), ext.clone()));
            }
        }
        out
    }
}

fn graded_skew_sign(i: usize, j: usize) -> Rational {
    // {X, Y} = -(-1)^((i-1)(j-1)) {Y, X}
    -sign(i.is_multiple_of(2) && j.is_multiple_of(2))
}

fn names(items: &[&BasisElement]) -> Vec<String> {
    items.iter().map(|b| b.to_string()).collect()
}

/// Graded skew-symmetry and `α`-compatibility on basis pairs and the graded
/// hom-Jacobi identity on basis triples, all with total degree
/// `<= bounds.max_degree`.
///
/// The Jacobiator is invariant under cyclic permutations, so only triples
/// whose first entry is minimal in the sample order are evaluated.
pub fn check_graded_hom_jacobi(m: &HomGerstenhaberModel, bounds: SampleBounds) -> CheckReport {
    let basis = m.sample_basis(bounds);
    let elems: Vec<MixedElement> = basis.iter().map(|b| m.basis_element(b)).collect();
    let alphas: Vec<MixedElement> = elems.iter().map(|x| m.alpha(x)).collect();
    let nb = basis.len();
    let reports: Vec<CheckReport> = (0..nb)
        .into_par_iter()
        .map(|a| {
            let mut r = CheckReport::new();
            let (da, x) = (basis[a].degree(), &elems[a]);
            for b in a..nb {
                let db = basis[b].degree();
                if da + db > bounds.max_degree {
                    continue;
                }
                let y = &elems[b];
                let xy = m.bracket(x, y);
                let yx = m.bracket(y, x);
                let rhs = yx.scale(&graded_skew_sign(da, db));
                r.expect_eq("graded_skew_symmetry", || names(&[&basis[a], &basis[b]]), &xy, &rhs);
                let lhs = m.alpha(&xy);
                let rhs = m.bracket(&alphas[a], &alphas[b]);
                r.expect_eq("alpha_automorphism", || names(&[&basis[a], &basis[b]]), &lhs, &rhs);
                for c in a..nb {
                    if da + db + basis[c].degree() > bounds.max_degree {
                        continue;
                    }
                    let jac = m.hom_jacobiator(x, y, &elems[c]).expect("basis elements are homogeneous");
                    let zero = MixedElement::zero(m.rank, m.nvars);
                    r.expect_eq("hom_jacobi", || names(&[&basis[a], &basis[b], &basis[c]]), &jac, &zero);
                }
            }
            r
        })
        .collect();
    CheckReport::concat(reports)
}

/// `{X, Y ∧ Z} = {X, Y} ∧ α(Z) + (-1)^((i-1) j) α(Y) ∧ {X, Z}` on basis triples.
pub fn check_hom_leibniz(m: &HomGerstenhaberModel, bounds: SampleBounds) -> CheckReport {
    let basis = m.sample_basis(bounds);
    let elems: Vec<MixedElement> = basis.iter().map(|b| m.basis_element(b)).collect();
    let alphas: Vec<MixedElement> = elems.iter().map(|x| m.alpha(x)).collect();
    let nb = basis.len();
    let reports: Vec<CheckReport> = (0..nb)
        .into_par_iter()
        .map(|a| {
            let mut r = CheckReport::new();
            let (i, x) = (basis[a].degree(), &elems[a]);
            for b in 0..nb {
                let j = basis[b].degree();
                for c in 0..nb {
                    if i + j + basis[c].degree() > bounds.max_degree {
                        continue;
                    }
                    let (y, z) = (&elems[b], &elems[c]);
                    let lhs = m.bracket(x, &y.wedge(z));
                    let mut rhs = m.bracket(x, y).wedge(&alphas[c]);
                    let s = sign(i % 2 == 0 && j % 2 == 1);
                    rhs += &alphas[b].wedge(&m.bracket(x, z)).scale(&s);
                    r.expect_eq("hom_leibniz", || names(&[&basis[a], &basis[b], &basis[c]]), &lhs, &rhs);
                }
            }
            r
        })
        .collect();
    CheckReport::concat(reports)
}

/// Both graded suites.
pub fn check_gerstenhaber(m: &HomGerstenhaberModel, bounds: SampleBounds) -> CheckReport {
    let mut r = check_graded_hom_jacobi(m, bounds);
    r.merge(check_hom_leibniz(m, bounds));
    r
}

/// `Jac(XY, Z, T) = α²(X) Jac(Y, Z, T) + (-1)^(ij) α²(Y) Jac(X, Z, T)` on basis
/// quadruples with total degree `<= bounds.max_degree`.
pub fn check_jacobiator_leibniz(m: &HomGerstenhaberModel, bounds: SampleBounds) -> CheckReport {
    let basis = m.sample_basis(bounds);
    let elems: Vec<MixedElement> = basis.iter().map(|b| m.basis_element(b)).collect();
    let alpha2: Vec<MixedElement> = elems.iter().map(|x| m.alpha_power(x, 2)).collect();
    let nb = basis.len();
    let reports: Vec<CheckReport> = (0..nb)
        .into_par_iter()
        .map(|a| {
            let mut r = CheckReport::new();
            let i = basis[a].degree();
            for b in 0..nb {
                let j = basis[b].degree();
                for c in 0..nb {
                    for d in 0..nb {
                        if i + j + basis[c].degree() + basis[d].degree() > bounds.max_degree {
                            continue;
                        }
                        let (x, y, z, t) = (&elems[a], &elems[b], &elems[c], &elems[d]);
                        let jac = |p: &MixedElement| m.hom_jacobiator(p, z, t).expect("homogeneous");
                        let lhs = jac(&x.wedge(y));
                        let mut rhs = alpha2[a].wedge(&jac(y));
                        rhs += &alpha2[b].wedge(&jac(x)).scale(&sign(i % 2 == 1 && j % 2 == 1));
                        r.expect_eq(
                            "jacobiator_leibniz",
                            || names(&[&basis[a], &basis[b], &basis[c], &basis[d]]),
                            &lhs,
                            &rhs,
                        );
                    }
                }
            }
            r
        })
        .collect();
    CheckReport::concat(reports)
}

/// Graded skew-symmetry of the Jacobiator in its first two slots.
///
/// The cyclic sum `Jac` picks up the extra factor `(-1)^((i-1)(k-1))` under
/// a swap of `X` and `Y`; the normalized `(-1)^((i-1)(k-1)) Jac(X, Y, Z)`
/// satisfies `J(Y, X, Z) = -(-1)^((i-1)(j-1)) J(X, Y, Z)`, which is checked.
pub fn check_jacobiator_skew(m: &HomGerstenhaberModel, bounds: SampleBounds) -> CheckReport {
    let basis = m.sample_basis(bounds);
    let elems: Vec<MixedElement> = basis.iter().map(|b| m.basis_element(b)).collect();
    let nb = basis.len();
    let normalized = |x: &MixedElement, y: &MixedElement, z: &MixedElement, i: usize, k: usize| {
        m.hom_jacobiator(x, y, z)
            .expect("homogeneous")
            .scale(&sign(i.is_multiple_of(2) && k.is_multiple_of(2)))
    };
    let reports: Vec<CheckReport> = (0..nb)
        .into_par_iter()
        .map(|a| {
            let mut r = CheckReport::new();
            let i = basis[a].degree();
            for b in a..nb {
                let j = basis[b].degree();
                for c in 0..nb {
                    let k = basis[c].degree();
                    if i + j + k > bounds.max_degree {
                        continue;
                    }
                    let (x, y, z) = (&elems[a], &elems[b], &elems[c]);
                    let lhs = normalized(y, x, z, j, k);
                    let rhs = normalized(x, y, z, i, k).scale(&graded_skew_sign(i, j));
                    r.expect_eq("jacobiator_skew", || names(&[&basis[a], &basis[b], &basis[c]]), &lhs, &rhs);
                }
            }
            r
        })
        .collect();
    CheckReport::concat(reports)
}

/// `α(x1 ∧ ... ∧ xp) = α(x1) ∧ ... ∧ α(xp)` and the exterior double-sum bracket on `∧g`.
///
/// Only compatibility of `α` with the bracket is required; hom-Jacobi of `g`
/// is what the graded checkers decide.
pub fn exterior_gerstenhaber(g: &HomLieAlgebra) -> Result<HomGerstenhaberModel> {
    let compat = is_bracket_automorphism(g.bracket(), g.alpha())?;
    if !compat.passed {
        return Err(HomError::AxiomFailure {
            what: "twisting map compatibility",
            report: compat,
        });
    }
    Ok(exterior_unchecked(g.bracket(), g.alpha(), 0))
}

fn vec_element(v: &crate::multilinear::QVec, nvars: usize) -> MixedElement {
    let coeffs: Vec<Polynomial> = v.coeffs().iter().map(|c| Polynomial::constant(nvars, c.clone())).collect();
    MixedElement::linear(v.dim(), nvars, &coeffs)
}

fn exterior_unchecked(bracket: &StructureConstants, alpha: &QMatrix, nvars: usize) -> HomGerstenhaberModel {
    let r = bracket.dim();
    let odd = (0..r)
        .map(|a| (0..r).map(|b| vec_element(&bracket.bracket_basis(a, b), nvars)).collect())
        .collect();
    let alpha_odd = (0..r).map(|a| vec_element(&alpha.column(a), nvars)).collect();
    HomGerstenhaberModel::new(
        r,
        nvars,
        odd,
        vec![vec![Polynomial::zero(nvars); nvars]; r],
        alpha_odd,
        PolySubstitution::identity(nvars),
    )
    .expect("shapes are consistent")
}

/// `∧g ⊗ S(V)` for a representation `(ρ, α_V)`: `S(V)` is the polynomial ring
/// in the coordinates `x0..x(m-1)` of `V`, `{x, v} = ρ(x) v` and
/// `α(v) = α_V(v)`.
pub fn mixed_gerstenhaber(g: &HomLieAlgebra, rep: &Representation) -> Result<HomGerstenhaberModel> {
    let report = check_representation(g, rep)?;
    if !report.passed {
        return Err(HomError::AxiomFailure {
            what: "representation",
            report,
        });
    }
    let m = rep.module_dim();
    let mut model = exterior_unchecked(g.bracket(), g.alpha(), m);
    model.mixed_brackets = rep
        .rho()
        .iter()
        .map(|rho| {
            (0..m)
                .map(|k| {
                    let col = rho.column(k);
                    let mut p = Polynomial::zero(m);
                    for (l, c) in col.coeffs().iter().enumerate() {
                        p.add_term(MultiIndex::unit(m, l), c.clone());
                    }
                    p
                })
                .collect()
        })
        .collect();
    model.alpha_even = PolySubstitution::from_linear(rep.alpha_v())?;
    Ok(model)
}

/// The data a hom-Gerstenhaber model induces in degrees 0 and 1.
#[derive(Clone, PartialEq, Debug)]
pub struct AnchorRep {
    /// `{e_a, e_b}`.
    pub bracket: Vec<Vec<MixedElement>>,
    /// `anchor[a][k] = ρ(e_a)[x_k] = {e_a, x_k}`.
    pub anchor: Vec<Vec<Polynomial>>,
    /// `α(e_a)`.
    pub alpha_odd: Vec<MixedElement>,
    /// α restricted to degree 0.
    pub alpha_even: PolySubstitution,
}

impl AnchorRep {
    pub fn rank(&self) -> usize {
        self.bracket.len()
    }

    /// `ρ(X)[F] = sum_a α(X^a) sum_k anchor[a][k] α(∂_k F)`: the unique
    /// α-derivation with the extracted values on coordinates.
    pub fn rho(&self, x: &MixedElement, f: &Polynomial) -> Polynomial {
        let n = f.nvars();
        let mut out = Polynomial::zero(n);
        let df: Vec<Polynomial> = (0..n)
            .map(|k| self.alpha_even.apply(&f.partial(k).expect("in range")).expect("same n"))
            .collect();
        for (a, xa) in x.linear_coefficients().iter().enumerate() {
            if xa.is_zero() {
                continue;
            }
            let mut inner = Polynomial::zero(n);
            for k in 0..n {
                inner += &(&self.anchor[a][k] * &df[k]);
            }
            out += &(&self.alpha_even.apply(xa).expect("same n") * &inner);
        }
        out
    }

    /// The degree-1 hom-Lie algebra when all data have constant coefficients.
    pub fn degree_one_hom_lie(&self) -> Result<HomLieAlgebra> {
        let r = self.rank();
        let constant = |v: &MixedElement| {
            v.to_graded()
                .ok_or_else(|| HomError::Unsupported(format!("non-constant degree-1 data: {v}")))
        };
        let mut sc = StructureConstants::zero(r);
        for a in 0..r {
            for b in 0..r {
                for (idx, c) in constant(&self.bracket[a][b])?.terms() {
                    sc.set(a, b, idx.indices()[0], c.clone());
                }
            }
        }
        let mut alpha = QMatrix::zero(r, r);
        for a in 0..r {
            for (idx, c) in constant(&self.alpha_odd[a])?.terms() {
                alpha.set(idx.indices()[0], a, c.clone());
            }
        }
        HomLieAlgebra::new(sc, alpha)
    }
}

/// Reads off bracket, anchor and twisting data by evaluating the model's
/// bracket on generators, without checking axioms.
pub fn extract_anchor_rep_unchecked(m: &HomGerstenhaberModel) -> AnchorRep {
    let (r, n) = (m.rank, m.nvars);
    let bracket = (0..r)
        .map(|a| (0..r).map(|b| m.bracket(&m.generator(a), &m.generator(b))).collect())
        .collect();
    let anchor = (0..r)
        .map(|a| {
            (0..n)
                .map(|k| m.bracket(&m.generator(a), &m.function(Polynomial::var(n, k))).function_part())
                .collect()
        })
        .collect();
    let alpha_odd = (0..r).map(|a| m.alpha(&m.generator(a))).collect();
    let alpha_even = PolySubstitution::new(
        (0..n)
            .map(|k| m.alpha(&m.function(Polynomial::var(n, k))).function_part())
            .collect(),
    )
    .unwrap_or_else(|_| PolySubstitution::identity(n));
    AnchorRep {
        bracket,
        anchor,
        alpha_odd,
        alpha_even,
    }
}

/// Degree-1 bracket, anchor `ρ(X)[F] = {X, F}` and α restrictions of a model
/// that passes both graded suites within `bounds`.
pub fn extract_anchor_rep(m: &HomGerstenhaberModel, bounds: SampleBounds) -> Result<AnchorRep> {
    let report = check_gerstenhaber(m, bounds);
    if !report.passed {
        return Err(HomError::AxiomFailure {
            what: "hom-Gerstenhaber axioms",
            report,
        });
    }
    Ok(extract_anchor_rep_unchecked(m))
}

/// For generators `X, Y` and monomials `F` of degree `<= degree_bound`:
/// the extracted `ρ` agrees with `{X, F}`, is an α-derivation, and satisfies
/// `α(ρ(X)[F]) = ρ(αX)[αF]` and `ρ({X, Y})[αF] = ρ(αX)ρ(Y)F - ρ(αY)ρ(X)F`.
pub fn check_anchor_representation(m: &HomGerstenhaberModel, rep: &AnchorRep, degree_bound: u32) -> CheckReport {
    let (r, n) = (m.rank, m.nvars);
    let mons: Vec<Polynomial> = MultiIndex::all_up_to(n, degree_bound)
        .into_iter()
        .map(|e| Polynomial::monomial(e, Rational::one()))
        .collect();
    let mut report = CheckReport::new();
    let rho = |x: &MixedElement, f: &Polynomial| rep.rho(x, f);
    for a in 0..r {
        let x = m.generator(a);
        let ax = m.alpha(&x);
        for f in &mons {
            let w = || vec![format!("e{a}"), f.to_string()];
            let direct = m.bracket(&x, &m.function(f.clone())).function_part();
            report.expect_eq("anchor_matches_bracket", w, &direct, &rho(&x, f));
            let lhs = m.alpha_poly(&rho(&x, f));
            let rhs = rho(&ax, &m.alpha_poly(f));
            report.expect_eq("rep_alpha_compatibility", w, &lhs, &rhs);
            for g in &mons {
                let lhs = rho(&x, &(f * g));
                let rhs = &(&m.alpha_poly(f) * &rho(&x, g)) + &(&m.alpha_poly(g) * &rho(&x, f));
                report.expect_eq("anchor_derivation", || vec![format!("e{a}"), f.to_string(), g.to_string()], &lhs, &rhs);
            }
        }
        for b in 0..r {
            let y = m.generator(b);
            let ay = m.alpha(&y);
            let xy = m.bracket(&x, &y);
            for f in &mons {
                let lhs = rho(&xy, &m.alpha_poly(f));
                let rhs = &rho(&ax, &rho(&y, f)) - &rho(&ay, &rho(&x, f));
                report.expect_eq(
                    "rep_bracket_compatibility",
                    || vec![format!("e{a}"), format!("e{b}"), f.to_string()],
                    &lhs,
                    &rhs,
                );
            }
        }
    }
    report
}
