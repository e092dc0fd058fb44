//! Elements of `∧(e0..er) ⊗ Q[x0..xn]`: exterior words with polynomial
//! coefficients.
//!
//! The same type models multivector fields and forms on `Q^n` (with
//! `r = n`), sections of `∧A` over a polynomial base, and `∧g ⊗ S(V)`.

use std::collections::BTreeMap;
use std::fmt::{self, Display};
use std::ops::{Add, AddAssign, Neg, Sub, SubAssign};

use num_traits::{One, Zero};

use crate::error::{HomError, Result};
use crate::multilinear::{write_linear_combination, ExtIndex, GradedElement};
use crate::poly::{MultiIndex, Polynomial};
use crate::rational::Rational;

/// Sparse map from exterior basis words to nonzero polynomial coefficients.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct MixedElement {
    rank: usize,
    nvars: usize,
    terms: BTreeMap<ExtIndex, Polynomial>,
}

impl MixedElement {
    pub fn zero(rank: usize, nvars: usize) -> Self {
        MixedElement {
            rank,
            nvars,
            terms: BTreeMap::new(),
        }
    }

    /// A degree-0 element.
    pub fn function(rank: usize, f: Polynomial) -> Self {
        MixedElement::term(rank, ExtIndex::empty(), f)
    }

    pub fn scalar(rank: usize, nvars: usize, c: Rational) -> Self {
        MixedElement::function(rank, Polynomial::constant(nvars, c))
    }

    pub fn term(rank: usize, idx: ExtIndex, f: Polynomial) -> Self {
        let mut out = MixedElement::zero(rank, f.nvars());
        out.add_term(idx, f);
        out
    }

    /// The odd generator `e_a`.
    pub fn generator(rank: usize, nvars: usize, a: usize) -> Self {
        MixedElement::term(rank, ExtIndex::single(a), Polynomial::one(nvars))
    }

    /// `x^m e_I` with coefficient 1.
    pub fn basis(rank: usize, mon: MultiIndex, idx: ExtIndex) -> Self {
        MixedElement::term(rank, idx, Polynomial::monomial(mon, Rational::one()))
    }

    /// `sum_a coeffs[a] e_a`.
    pub fn linear(rank: usize, nvars: usize, coeffs: &[Polynomial]) -> Self {
        let mut out = MixedElement::zero(rank, nvars);
        for (a, c) in coeffs.iter().enumerate() {
            out.add_term(ExtIndex::single(a), c.clone());
        }
        out
    }

    pub fn from_graded(x: &GradedElement, nvars: usize) -> Self {
        let mut out = MixedElement::zero(x.dim(), nvars);
        for (idx, c) in x.terms() {
            out.add_term(idx.clone(), Polynomial::constant(nvars, c.clone()));
        }
        out
    }

    /// Errors with [`HomError::IndexOutOfRange`] on an index `>= rank`.
    pub fn from_terms(
        rank: usize,
        nvars: usize,
        terms: impl IntoIterator<Item = (ExtIndex, Polynomial)>,
    ) -> Result<Self> {
        let mut out = MixedElement::zero(rank, nvars);
        for (idx, f) in terms {
            if let Some(i) = idx.max_index().filter(|&i| i >= rank) {
                return Err(HomError::IndexOutOfRange {
                    context: "exterior index",
                    index: i,
                    size: rank,
                });
            }
            if f.nvars() != nvars {
                return Err(HomError::dim("coefficient variables", nvars, f.nvars()));
            }
            out.add_term(idx, f);
        }
        Ok(out)
    }

    pub fn rank(&self) -> usize {
        self.rank
    }

    pub fn nvars(&self) -> usize {
        self.nvars
    }

    pub fn terms(&self) -> impl Iterator<Item = (&ExtIndex, &Polynomial)> {
        self.terms.iter()
    }

    pub fn coefficient(&self, idx: &ExtIndex) -> Polynomial {
        self.terms
            .get(idx)
            .cloned()
            .unwrap_or_else(|| Polynomial::zero(self.nvars))
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    /// Exterior degree when homogeneous; `None` for zero or mixed degrees.
    pub fn degree(&self) -> Option<usize> {
        let mut it = self.terms.keys().map(ExtIndex::degree);
        let d = it.next()?;
        it.all(|e| e == d).then_some(d)
    }

    pub fn is_homogeneous(&self) -> bool {
        self.is_zero() || self.degree().is_some()
    }

    /// Largest coefficient degree, `None` for zero.
    pub fn poly_degree(&self) -> Option<u32> {
        self.terms.values().filter_map(Polynomial::degree).max()
    }

    pub fn add_term(&mut self, idx: ExtIndex, f: Polynomial) {
        if f.is_zero() {
            return;
        }
        match self.terms.get_mut(&idx) {
            Some(g) => {
                *g += &f;
                if g.is_zero() {
                    self.terms.remove(&idx);
                }
            }
            None => {
                self.terms.insert(idx, f);
            }
        }
    }

    pub fn scale(&self, c: &Rational) -> MixedElement {
        if c.is_zero() {
            return MixedElement::zero(self.rank, self.nvars);
        }
        MixedElement {
            rank: self.rank,
            nvars: self.nvars,
            terms: self.terms.iter().map(|(k, f)| (k.clone(), f.scale(c))).collect(),
        }
    }

    /// Multiplication by a degree-0 coefficient.
    pub fn mul_poly(&self, g: &Polynomial) -> MixedElement {
        let mut out = MixedElement::zero(self.rank, self.nvars);
        if g.is_zero() {
            return out;
        }
        for (k, f) in &self.terms {
            out.add_term(k.clone(), f * g);
        }
        out
    }

    /// Graded commutative product; even coefficients commute with everything.
    pub fn wedge(&self, other: &MixedElement) -> MixedElement {
        let mut out = MixedElement::zero(self.rank, self.nvars);
        for (i, f) in &self.terms {
            for (j, g) in &other.terms {
                if let Some((s, k)) = i.wedge_sign(j) {
                    let p = f * g;
                    out.add_term(k, if s < 0 { -&p } else { p });
                }
            }
        }
        out
    }

    /// The component of exterior degree `d`.
    pub fn homogeneous_part(&self, d: usize) -> MixedElement {
        MixedElement {
            rank: self.rank,
            nvars: self.nvars,
            terms: self
                .terms
                .iter()
                .filter(|(k, _)| k.degree() == d)
                .map(|(k, f)| (k.clone(), f.clone()))
                .collect(),
        }
    }

    /// Degree-0 part as a polynomial.
    pub fn function_part(&self) -> Polynomial {
        self.coefficient(&ExtIndex::empty())
    }

    /// Coefficients of `e_0 .. e_{r-1}` in the degree-1 part.
    pub fn linear_coefficients(&self) -> Vec<Polynomial> {
        (0..self.rank).map(|a| self.coefficient(&ExtIndex::single(a))).collect()
    }

    /// Same element with coefficients viewed in more variables.
    pub fn embed(&self, nvars: usize) -> Result<MixedElement> {
        let mut out = MixedElement::zero(self.rank, nvars);
        for (k, f) in &self.terms {
            out.add_term(k.clone(), f.embed(nvars)?);
        }
        Ok(out)
    }

    /// The element with constant coefficients, if it has them.
    pub fn to_graded(&self) -> Option<GradedElement> {
        let mut out = GradedElement::zero(self.rank);
        for (k, f) in &self.terms {
            if !f.is_constant() {
                return None;
            }
            out.add_term(k.clone(), f.constant_term());
        }
        Some(out)
    }

    /// Display with a chosen symbol for the odd generators, e.g. `d` for
    /// `∂` or `dx` for forms.
    pub fn display_with(&self, symbol: &str) -> String {
        struct W<'a>(&'a MixedElement, &'a str);
        impl Display for W<'_> {
            fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
                let items = self.0.terms.iter().flat_map(|(idx, p)| {
                    let ext = idx.name_with(self.1);
                    p.terms().rev().map(move |(m, c)| {
                        let mon = m.to_string();
                        let name = match (mon.as_str(), ext.as_str()) {
                            ("1", e) => e.to_string(),
                            (m, "1") => m.to_string(),
                            (m, e) => format!("{m}*{e}"),
                        };
                        (name, c)
                    })
                });
                write_linear_combination(f, items)
            }
        }
        W(self, symbol).to_string()
    }
}

impl Display for MixedElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.display_with("e"))
    }
}

impl Add for &MixedElement {
    type Output = MixedElement;
    fn add(self, rhs: &MixedElement) -> MixedElement {
        let mut out = self.clone();
        out += rhs;
        out
    }
}

impl AddAssign<&MixedElement> for MixedElement {
    fn add_assign(&mut self, rhs: &MixedElement) {
        for (k, f) in &rhs.terms {
            self.add_term(k.clone(), f.clone());
        }
    }
}

impl SubAssign<&MixedElement> for MixedElement {
    fn sub_assign(&mut self, rhs: &MixedElement) {
        for (k, f) in &rhs.terms {
            self.add_term(k.clone(), -f);
        }
    }
}

impl Sub for &MixedElement {
    type Output = MixedElement;
    fn sub(self, rhs: &MixedElement) -> MixedElement {
        let mut out = self.clone();
        out -= rhs;
        out
    }
}

impl Neg for &MixedElement {
    type Output = MixedElement;
    fn neg(self) -> MixedElement {
        self.scale(&-Rational::one())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::int;

    fn x(n: usize, i: usize) -> Polynomial {
        Polynomial::var(n, i)
    }

    fn e(r: usize, n: usize, a: usize) -> MixedElement {
        MixedElement::generator(r, n, a)
    }

    #[test]
    fn odd_generators_anticommute() {
        let (a, b) = (e(3, 1, 0), e(3, 1, 2).mul_poly(&x(1, 0)));
        assert_eq!(a.wedge(&b), -&b.wedge(&a));
        assert!(a.wedge(&a).is_zero());
        assert_eq!(a.wedge(&b).degree(), Some(2));
    }

    #[test]
    fn display_examples() {
        let v = &e(2, 2, 0).mul_poly(&x(2, 1).scale(&int(3))) - &e(2, 2, 1);
        assert_eq!(v.to_string(), "3*x1*e0 - e1");
        assert_eq!(v.display_with("d"), "3*x1*d0 - d1");
        assert_eq!(MixedElement::zero(2, 2).to_string(), "0");
        let f = MixedElement::function(2, &x(2, 0) + &Polynomial::one(2));
        assert_eq!(f.to_string(), "x0 + 1");
    }

    #[test]
    fn mixed_degrees_have_no_degree() {
        let v = &e(2, 0, 0) + &MixedElement::scalar(2, 0, int(1));
        assert_eq!(v.degree(), None);
        assert!(!v.is_homogeneous());
        assert_eq!(v.homogeneous_part(1), e(2, 0, 0));
    }
}
