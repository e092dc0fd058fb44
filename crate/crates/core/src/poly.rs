//! Sparse multivariate polynomials over the rationals.
//!
//! Polynomials carry their number of variables and are never truncated in
//! degree, so derivatives and substitutions are exact ring operations.
//! Terms are kept in graded-lexicographic order, which makes equality,
//! hashing and serialization canonical.

use std::cmp::Ordering;
use std::collections::BTreeMap;
use std::fmt::{self, Display};
use std::ops::{Add, AddAssign, Mul, Neg, Sub, SubAssign};

use num_traits::{One, Signed, Zero};

use crate::error::{HomError, Result};
use crate::rational::Rational;

/// Exponent vector of a monomial.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct MultiIndex(Vec<u32>);

impl MultiIndex {
    pub fn new(exponents: Vec<u32>) -> Self {
        MultiIndex(exponents)
    }

    pub fn zero(nvars: usize) -> Self {
        MultiIndex(vec![0; nvars])
    }

    /// The exponent vector of the single variable `x_i`.
    pub fn unit(nvars: usize, i: usize) -> Self {
        let mut e = vec![0; nvars];
        e[i] = 1;
        MultiIndex(e)
    }

    pub fn exponents(&self) -> &[u32] {
        &self.0
    }

    pub fn nvars(&self) -> usize {
        self.0.len()
    }

    pub fn degree(&self) -> u32 {
        self.0.iter().sum()
    }

    pub fn add(&self, other: &MultiIndex) -> MultiIndex {
        MultiIndex(self.0.iter().zip(&other.0).map(|(a, b)| a + b).collect())
    }

    /// `self - x_i`, or `None` if `x_i` does not divide the monomial.
    pub fn lower(&self, i: usize) -> Option<MultiIndex> {
        if self.0[i] == 0 {
            return None;
        }
        let mut e = self.0.clone();
        e[i] -= 1;
        Some(MultiIndex(e))
    }

    /// All exponent vectors in `nvars` variables of total degree `<= max_degree`,
    /// in ascending graded-lexicographic order.
    pub fn all_up_to(nvars: usize, max_degree: u32) -> Vec<MultiIndex> {
        let mut out = Vec::new();
        for d in 0..=max_degree {
            let mut of_degree = Vec::new();
            let mut cur = vec![0; nvars];
            compositions(nvars, d, 0, &mut cur, &mut of_degree);
            of_degree.sort();
            out.extend(of_degree);
        }
        out
    }

    /// The variables `x_i` with multiplicity, e.g. `x0^2 x2 -> [0, 0, 2]`.
    pub fn factors(&self) -> Vec<usize> {
        let mut out = Vec::with_capacity(self.degree() as usize);
        for (i, &e) in self.0.iter().enumerate() {
            out.extend(std::iter::repeat_n(i, e as usize));
        }
        out
    }
}

fn compositions(nvars: usize, left: u32, pos: usize, cur: &mut Vec<u32>, out: &mut Vec<MultiIndex>) {
    if nvars == 0 {
        if left == 0 {
            out.push(MultiIndex(Vec::new()));
        }
        return;
    }
    if pos == nvars - 1 {
        cur[pos] = left;
        out.push(MultiIndex(cur.clone()));
        cur[pos] = 0;
        return;
    }
    for e in 0..=left {
        cur[pos] = e;
        compositions(nvars, left - e, pos + 1, cur, out);
    }
    cur[pos] = 0;
}

impl Ord for MultiIndex {
    /// Graded lexicographic: total degree first, then `x0 > x1 > ...`.
    fn cmp(&self, other: &Self) -> Ordering {
        self.degree()
            .cmp(&other.degree())
            .then_with(|| self.0.cmp(&other.0))
    }
}

impl PartialOrd for MultiIndex {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Display for MultiIndex {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut first = true;
        for (i, &e) in self.0.iter().enumerate() {
            if e == 0 {
                continue;
            }
            if !first {
                f.write_str("*")?;
            }
            first = false;
            if e == 1 {
                write!(f, "x{i}")?;
            } else {
                write!(f, "x{i}^{e}")?;
            }
        }
        if first {
            f.write_str("1")?;
        }
        Ok(())
    }
}

/// Exact sparse polynomial in a fixed number of variables.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct Polynomial {
    nvars: usize,
    terms: BTreeMap<MultiIndex, Rational>,
}

impl Polynomial {
    pub fn zero(nvars: usize) -> Self {
        Polynomial {
            nvars,
            terms: BTreeMap::new(),
        }
    }

    pub fn one(nvars: usize) -> Self {
        Self::constant(nvars, Rational::one())
    }

    pub fn constant(nvars: usize, c: Rational) -> Self {
        Self::monomial(MultiIndex::zero(nvars), c)
    }

    /// The coordinate function `x_i`. Panics if `i >= nvars`.
    pub fn var(nvars: usize, i: usize) -> Self {
        assert!(i < nvars, "variable x{i} out of range for {nvars} variables");
        Self::monomial(MultiIndex::unit(nvars, i), Rational::one())
    }

    pub fn monomial(m: MultiIndex, c: Rational) -> Self {
        let nvars = m.nvars();
        let mut terms = BTreeMap::new();
        if !c.is_zero() {
            terms.insert(m, c);
        }
        Polynomial { nvars, terms }
    }

    /// Builds a polynomial from possibly repeated terms; zero sums are dropped.
    pub fn from_terms(nvars: usize, terms: impl IntoIterator<Item = (MultiIndex, Rational)>) -> Result<Self> {
        let mut p = Polynomial::zero(nvars);
        for (m, c) in terms {
            if m.nvars() != nvars {
                return Err(HomError::dim("monomial exponents", nvars, m.nvars()));
            }
            p.add_term(m, c);
        }
        Ok(p)
    }

    pub fn nvars(&self) -> usize {
        self.nvars
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_constant(&self) -> bool {
        self.terms.keys().all(|m| m.degree() == 0)
    }

    pub fn constant_term(&self) -> Rational {
        self.terms
            .get(&MultiIndex::zero(self.nvars))
            .cloned()
            .unwrap_or_else(Rational::zero)
    }

    pub fn coefficient(&self, m: &MultiIndex) -> Rational {
        self.terms.get(m).cloned().unwrap_or_else(Rational::zero)
    }

    /// Terms in ascending graded-lexicographic order.
    pub fn terms(&self) -> impl DoubleEndedIterator<Item = (&MultiIndex, &Rational)> {
        self.terms.iter()
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    /// Total degree, `None` for the zero polynomial.
    pub fn degree(&self) -> Option<u32> {
        self.terms.keys().next_back().map(|m| m.degree())
    }

    pub fn add_term(&mut self, m: MultiIndex, c: Rational) {
        debug_assert_eq!(m.nvars(), self.nvars);
        if c.is_zero() {
            return;
        }
        match self.terms.get_mut(&m) {
            Some(v) => {
                *v += c;
                if v.is_zero() {
                    self.terms.remove(&m);
                }
            }
            None => {
                self.terms.insert(m, c);
            }
        }
    }

    pub fn scale(&self, c: &Rational) -> Polynomial {
        if c.is_zero() {
            return Polynomial::zero(self.nvars);
        }
        Polynomial {
            nvars: self.nvars,
            terms: self.terms.iter().map(|(m, v)| (m.clone(), v * c)).collect(),
        }
    }

    fn check_same(&self, other: &Polynomial, context: &'static str) -> Result<()> {
        if self.nvars != other.nvars {
            return Err(HomError::dim(context, self.nvars, other.nvars));
        }
        Ok(())
    }

    pub fn checked_add(&self, other: &Polynomial) -> Result<Polynomial> {
        self.check_same(other, "polynomial sum")?;
        Ok(self + other)
    }

    /// Exact product; errors when the variable counts differ.
    pub fn checked_mul(&self, other: &Polynomial) -> Result<Polynomial> {
        self.check_same(other, "polynomial product")?;
        Ok(self.mul_unchecked(other))
    }

    fn mul_unchecked(&self, other: &Polynomial) -> Polynomial {
        let mut out = Polynomial::zero(self.nvars);
        for (m1, c1) in &self.terms {
            for (m2, c2) in &other.terms {
                out.add_term(m1.add(m2), c1 * c2);
            }
        }
        out
    }

    pub fn pow(&self, e: u32) -> Polynomial {
        let mut acc = Polynomial::one(self.nvars);
        for _ in 0..e {
            acc = &acc * self;
        }
        acc
    }

    /// Partial derivative with respect to `x_i`.
    pub fn partial(&self, i: usize) -> Result<Polynomial> {
        if i >= self.nvars {
            return Err(HomError::IndexOutOfRange {
                context: "partial derivative",
                index: i,
                size: self.nvars,
            });
        }
        let mut out = Polynomial::zero(self.nvars);
        for (m, c) in &self.terms {
            let e = m.exponents()[i];
            if let Some(lowered) = m.lower(i) {
                out.add_term(lowered, c * Rational::from_integer(e.into()));
            }
        }
        Ok(out)
    }

    /// `self ∘ phi`, the pullback of `self` along the polynomial map `phi`.
    pub fn substitute(&self, phi: &PolySubstitution) -> Result<Polynomial> {
        phi.apply(self)
    }

    /// Same polynomial viewed in `nvars` variables; the existing variables keep
    /// their indices. Errors if a variable that is used would be dropped.
    pub fn embed(&self, nvars: usize) -> Result<Polynomial> {
        let mut out = Polynomial::zero(nvars);
        for (m, c) in &self.terms {
            let e = m.exponents();
            if e.iter().skip(nvars).any(|&x| x > 0) {
                return Err(HomError::dim("polynomial embedding", self.nvars, nvars));
            }
            let mut v = vec![0; nvars];
            for (i, &x) in e.iter().take(nvars).enumerate() {
                v[i] = x;
            }
            out.add_term(MultiIndex(v), c.clone());
        }
        Ok(out)
    }
}

impl Display for Polynomial {
    /// Leading term first, e.g. `3/2*x0^2*x1 - x1 + 1`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return f.write_str("0");
        }
        for (k, (m, c)) in self.terms.iter().rev().enumerate() {
            let neg = c.is_negative();
            let abs = c.abs();
            if k == 0 {
                if neg {
                    f.write_str("-")?;
                }
            } else {
                f.write_str(if neg { " - " } else { " + " })?;
            }
            if m.degree() == 0 {
                write!(f, "{abs}")?;
            } else if abs.is_one() {
                write!(f, "{m}")?;
            } else {
                write!(f, "{abs}*{m}")?;
            }
        }
        Ok(())
    }
}

impl Add for &Polynomial {
    type Output = Polynomial;
    fn add(self, rhs: &Polynomial) -> Polynomial {
        assert_eq!(self.nvars, rhs.nvars, "polynomial sum with different variable counts");
        let mut out = self.clone();
        out += rhs;
        out
    }
}

impl AddAssign<&Polynomial> for Polynomial {
    fn add_assign(&mut self, rhs: &Polynomial) {
        assert_eq!(self.nvars, rhs.nvars, "polynomial sum with different variable counts");
        for (m, c) in &rhs.terms {
            self.add_term(m.clone(), c.clone());
        }
    }
}

impl SubAssign<&Polynomial> for Polynomial {
    fn sub_assign(&mut self, rhs: &Polynomial) {
        assert_eq!(self.nvars, rhs.nvars, "polynomial difference with different variable counts");
        for (m, c) in &rhs.terms {
            self.add_term(m.clone(), -c.clone());
        }
    }
}

impl Sub for &Polynomial {
    type Output = Polynomial;
    fn sub(self, rhs: &Polynomial) -> Polynomial {
        let mut out = self.clone();
        out -= rhs;
        out
    }
}

impl Neg for &Polynomial {
    type Output = Polynomial;
    fn neg(self) -> Polynomial {
        Polynomial {
            nvars: self.nvars,
            terms: self.terms.iter().map(|(m, c)| (m.clone(), -c.clone())).collect(),
        }
    }
}

impl Mul for &Polynomial {
    type Output = Polynomial;
    /// Panics on mismatched variable counts; use [`Polynomial::checked_mul`]
    /// for a fallible product.
    fn mul(self, rhs: &Polynomial) -> Polynomial {
        assert_eq!(self.nvars, rhs.nvars, "polynomial product with different variable counts");
        self.mul_unchecked(rhs)
    }
}

macro_rules! forward_owned {
    ($tr:ident, $m:ident) => {
        impl $tr for Polynomial {
            type Output = Polynomial;
            fn $m(self, rhs: Polynomial) -> Polynomial {
                (&self).$m(&rhs)
            }
        }
    };
}
forward_owned!(Add, add);
forward_owned!(Sub, sub);
forward_owned!(Mul, mul);

/// A polynomial self-map of `Q^n`, stored as the images of the coordinates.
///
/// Acting on polynomials it is the pullback `f -> f ∘ phi`.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct PolySubstitution {
    nvars: usize,
    images: Vec<Polynomial>,
}

impl PolySubstitution {
    pub fn new(images: Vec<Polynomial>) -> Result<Self> {
        let nvars = images.len();
        for p in &images {
            if p.nvars() != nvars {
                return Err(HomError::dim("substitution image", nvars, p.nvars()));
            }
        }
        Ok(PolySubstitution { nvars, images })
    }

    pub fn identity(nvars: usize) -> Self {
        PolySubstitution {
            nvars,
            images: (0..nvars).map(|i| Polynomial::var(nvars, i)).collect(),
        }
    }

    /// The algebra map of `S(g)` induced by a linear map of `g`: the image of
    /// `x_i` is column `i` of `m`, i.e. `sum_j m[j][i] x_j`.
    pub fn from_linear(m: &crate::multilinear::QMatrix) -> Result<Self> {
        if m.rows() != m.cols() {
            return Err(HomError::NotSquare {
                rows: m.rows(),
                cols: m.cols(),
            });
        }
        let n = m.rows();
        let images = (0..n)
            .map(|i| {
                let mut p = Polynomial::zero(n);
                for j in 0..n {
                    p.add_term(MultiIndex::unit(n, j), m.get(j, i).clone());
                }
                p
            })
            .collect();
        Ok(PolySubstitution { nvars: n, images })
    }

    pub fn nvars(&self) -> usize {
        self.nvars
    }

    pub fn images(&self) -> &[Polynomial] {
        &self.images
    }

    pub fn image(&self, i: usize) -> &Polynomial {
        &self.images[i]
    }

    pub fn is_identity(&self) -> bool {
        *self == PolySubstitution::identity(self.nvars)
    }

    /// `f ∘ self`.
    pub fn apply(&self, f: &Polynomial) -> Result<Polynomial> {
        if f.nvars() != self.nvars {
            return Err(HomError::dim("substitution", self.nvars, f.nvars()));
        }
        // powers[i][k] = images[i]^k, built on demand
        let mut powers: Vec<Vec<Polynomial>> = self
            .images
            .iter()
            .map(|_| vec![Polynomial::one(self.nvars)])
            .collect();
        let mut out = Polynomial::zero(self.nvars);
        for (m, c) in f.terms() {
            let mut term = Polynomial::constant(self.nvars, c.clone());
            for (i, &e) in m.exponents().iter().enumerate() {
                if e == 0 {
                    continue;
                }
                while powers[i].len() <= e as usize {
                    let next = powers[i].last().unwrap() * &self.images[i];
                    powers[i].push(next);
                }
                term = &term * &powers[i][e as usize];
            }
            out += &term;
        }
        Ok(out)
    }

    /// The map `self ∘ other`, so that pulling back along it equals pulling
    /// back along `self` first and then along `other`:
    /// `f.substitute(compose(phi, psi)) == f.substitute(phi).substitute(psi)`.
    pub fn compose(&self, other: &PolySubstitution) -> Result<PolySubstitution> {
        if self.nvars != other.nvars {
            return Err(HomError::dim("substitution composition", self.nvars, other.nvars));
        }
        let images = self
            .images
            .iter()
            .map(|p| other.apply(p))
            .collect::<Result<Vec<_>>>()?;
        Ok(PolySubstitution {
            nvars: self.nvars,
            images,
        })
    }

    /// `self` composed with itself `k` times (`k = 0` gives the identity).
    pub fn power(&self, k: u32) -> PolySubstitution {
        let mut acc = PolySubstitution::identity(self.nvars);
        for _ in 0..k {
            acc = acc.compose(self).expect("same variable count");
        }
        acc
    }

    /// Jacobian entry `d phi_k / d x_i`.
    pub fn jacobian(&self, k: usize, i: usize) -> Polynomial {
        self.images[k].partial(i).expect("index in range")
    }
}

impl Display for PolySubstitution {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("(")?;
        for (i, p) in self.images.iter().enumerate() {
            if i > 0 {
                f.write_str(", ")?;
            }
            write!(f, "{p}")?;
        }
        f.write_str(")")
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::multilinear::QMatrix;
    use crate::rational::{frac, int};

    fn x(n: usize, i: usize) -> Polynomial {
        Polynomial::var(n, i)
    }
    fn c(n: usize, v: i64) -> Polynomial {
        Polynomial::constant(n, int(v))
    }

    #[test]
    fn product_examples() {
        let x1 = x(2, 0);
        assert_eq!(&(&x1 + &c(2, 1)) * &(&x1 - &c(2, 1)), &(&x1 * &x1) - &c(2, 1));
        let f = &(&x1 * &x(2, 1)) + &c(2, 3);
        assert_eq!(&Polynomial::one(2) * &f, f);
        let lhs = &(&x1 * &x(2, 1)) * &x(2, 1);
        assert_eq!(lhs, Polynomial::monomial(MultiIndex::new(vec![1, 2]), int(1)));
    }

    #[test]
    fn product_dimension_error() {
        let err = x(2, 0).checked_mul(&x(3, 0)).unwrap_err();
        assert!(matches!(err, HomError::DimensionMismatch { .. }));
    }

    #[test]
    fn partial_examples() {
        let f = Polynomial::monomial(MultiIndex::new(vec![2, 1]), int(1));
        assert_eq!(
            f.partial(0).unwrap(),
            Polynomial::monomial(MultiIndex::new(vec![1, 1]), int(2))
        );
        assert!(x(2, 0).partial(1).unwrap().is_zero());
        let g = Polynomial::monomial(MultiIndex::new(vec![3]), frac(3, 2));
        assert_eq!(
            g.partial(0).unwrap(),
            Polynomial::monomial(MultiIndex::new(vec![2]), frac(9, 2))
        );
        assert!(matches!(f.partial(2), Err(HomError::IndexOutOfRange { .. })));
    }

    #[test]
    fn substitution_examples() {
        let f = Polynomial::monomial(MultiIndex::new(vec![1, 2]), int(1));
        let swap = PolySubstitution::new(vec![x(2, 1), x(2, 0)]).unwrap();
        assert_eq!(
            f.substitute(&swap).unwrap(),
            Polynomial::monomial(MultiIndex::new(vec![2, 1]), int(1))
        );
        assert_eq!(f.substitute(&PolySubstitution::identity(2)).unwrap(), f);
        let phi = PolySubstitution::new(vec![&x(2, 0) + &x(2, 1).pow(2), x(2, 1)]).unwrap();
        assert_eq!(x(2, 0).substitute(&phi).unwrap(), &x(2, 0) + &x(2, 1).pow(2));
        assert!(x(3, 0).substitute(&phi).is_err());
    }

    #[test]
    fn composition_examples() {
        let phi = PolySubstitution::new(vec![&x(2, 0) + &x(2, 1).pow(2), x(2, 1)]).unwrap();
        let twice = phi.compose(&phi).unwrap();
        let expected = PolySubstitution::new(vec![&x(2, 0) + &x(2, 1).pow(2).scale(&int(2)), x(2, 1)]).unwrap();
        assert_eq!(twice, expected);
        assert_eq!(PolySubstitution::identity(2).compose(&phi).unwrap(), phi);
        assert_eq!(phi.power(2), expected);
    }

    #[test]
    fn linear_substitutions_compose_as_matrices() {
        // x -> A x as a pullback has image of x_i = column i; composing the
        // maps A then B must give the pullback along A∘B... as maps on points,
        // which is the matrix product taken column-wise against the oracle below.
        let a = QMatrix::from_ints(&[&[1, 2], &[3, 4]]);
        let b = QMatrix::from_ints(&[&[0, 1], &[-1, 5]]);
        let pa = PolySubstitution::from_linear(&a).unwrap();
        let pb = PolySubstitution::from_linear(&b).unwrap();
        let composed = pa.compose(&pb).unwrap();
        // oracle: image of x_i under pa is sum_j a[j][i] x_j; substituting pb
        // gives sum_j a[j][i] sum_k b[k][j] x_k = sum_k (b a)[k][i] x_k.
        let mut prod = vec![vec![0i64; 2]; 2];
        let av = [[1, 2], [3, 4]];
        let bv = [[0, 1], [-1, 5]];
        for k in 0..2 {
            for i in 0..2 {
                for j in 0..2 {
                    prod[k][i] += bv[k][j] * av[j][i];
                }
            }
        }
        let rows: Vec<&[i64]> = prod.iter().map(|r| r.as_slice()).collect();
        assert_eq!(composed, PolySubstitution::from_linear(&QMatrix::from_ints(&rows)).unwrap());
    }

    #[test]
    fn monomial_enumeration_is_graded() {
        let ms = MultiIndex::all_up_to(2, 2);
        let shown: Vec<String> = ms.iter().map(|m| m.to_string()).collect();
        assert_eq!(shown, ["1", "x1", "x0", "x1^2", "x0*x1", "x0^2"]);
        assert_eq!(MultiIndex::all_up_to(0, 3).len(), 1);
        assert_eq!(MultiIndex::all_up_to(3, 3).len(), 20);
    }

    #[test]
    fn display() {
        let f = &(&Polynomial::monomial(MultiIndex::new(vec![2, 1]), frac(3, 2)) - &x(2, 1)) + &c(2, 1);
        assert_eq!(f.to_string(), "3/2*x0^2*x1 - x1 + 1");
        assert_eq!(Polynomial::zero(2).to_string(), "0");
        assert_eq!((-&x(1, 0)).to_string(), "-x0");
    }
}
