//! Finite-dimensional linear algebra over Q: vectors, matrices, structure
//! constants and the exterior algebra of a based vector space.
//!
//! Conventions: a matrix acts on column vectors, so the image of the basis
//! vector `e_i` under `A` is column `i` of `A`. A bilinear map is stored as
//! structure constants `[e_i, e_j] = sum_k c[i][j][k] e_k`.
//!
//! Bilinear identities are checked on pairs of basis vectors only: both
//! sides of such an identity are bilinear, so agreement on a basis implies
//! agreement everywhere. The same holds for trilinear identities on basis
//! triples.

use std::collections::BTreeMap;
use std::fmt::{self, Display};

use num_traits::{One, Signed, Zero};

use crate::error::{HomError, Result};
use crate::rational::Rational;
use crate::report::CheckReport;

/// A vector of `Q^n` in the standard basis `e0, e1, ...`.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct QVec(Vec<Rational>);

impl QVec {
    pub fn new(coeffs: Vec<Rational>) -> Self {
        QVec(coeffs)
    }

    pub fn zero(dim: usize) -> Self {
        QVec(vec![Rational::zero(); dim])
    }

    pub fn basis(dim: usize, i: usize) -> Self {
        let mut v = Self::zero(dim);
        v.0[i] = Rational::one();
        v
    }

    pub fn dim(&self) -> usize {
        self.0.len()
    }

    pub fn coeffs(&self) -> &[Rational] {
        &self.0
    }

    pub fn get(&self, i: usize) -> &Rational {
        &self.0[i]
    }

    pub fn is_zero(&self) -> bool {
        self.0.iter().all(Zero::is_zero)
    }

    pub fn add(&self, other: &QVec) -> QVec {
        QVec(self.0.iter().zip(&other.0).map(|(a, b)| a + b).collect())
    }

    pub fn sub(&self, other: &QVec) -> QVec {
        QVec(self.0.iter().zip(&other.0).map(|(a, b)| a - b).collect())
    }

    pub fn scale(&self, c: &Rational) -> QVec {
        QVec(self.0.iter().map(|a| a * c).collect())
    }

    pub fn add_scaled(&mut self, other: &QVec, c: &Rational) {
        for (a, b) in self.0.iter_mut().zip(&other.0) {
            *a += b * c;
        }
    }
}

impl Display for QVec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write_linear_combination(f, self.0.iter().enumerate().map(|(i, c)| (format!("e{i}"), c)))
    }
}

/// Writes `2*e0 - e2`, or `0` for an empty combination.
pub(crate) fn write_linear_combination<'a>(
    f: &mut fmt::Formatter<'_>,
    items: impl Iterator<Item = (String, &'a Rational)>,
) -> fmt::Result {
    let mut first = true;
    for (name, c) in items {
        if c.is_zero() {
            continue;
        }
        let abs = c.abs();
        if first {
            if c.is_negative() {
                f.write_str("-")?;
            }
        } else {
            f.write_str(if c.is_negative() { " - " } else { " + " })?;
        }
        first = false;
        if abs.is_one() {
            f.write_str(&name)?;
        } else if name == "1" {
            write!(f, "{abs}")?;
        } else {
            write!(f, "{abs}*{name}")?;
        }
    }
    if first {
        f.write_str("0")?;
    }
    Ok(())
}

/// Dense rectangular rational matrix, row-major.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct QMatrix {
    rows: usize,
    cols: usize,
    data: Vec<Rational>,
}

impl QMatrix {
    pub fn zero(rows: usize, cols: usize) -> Self {
        QMatrix {
            rows,
            cols,
            data: vec![Rational::zero(); rows * cols],
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zero(n, n);
        for i in 0..n {
            m.set(i, i, Rational::one());
        }
        m
    }

    pub fn diag(entries: &[Rational]) -> Self {
        let mut m = Self::zero(entries.len(), entries.len());
        for (i, d) in entries.iter().enumerate() {
            m.set(i, i, d.clone());
        }
        m
    }

    pub fn from_rows(rows: Vec<Vec<Rational>>) -> Result<Self> {
        let r = rows.len();
        let c = rows.first().map_or(0, Vec::len);
        let mut data = Vec::with_capacity(r * c);
        for row in rows {
            if row.len() != c {
                return Err(HomError::dim("matrix row", c, row.len()));
            }
            data.extend(row);
        }
        Ok(QMatrix { rows: r, cols: c, data })
    }

    /// Small integer matrices for fixtures and tests.
    pub fn from_ints(rows: &[&[i64]]) -> Self {
        let rows = rows
            .iter()
            .map(|r| r.iter().map(|&v| Rational::from_integer(v.into())).collect())
            .collect();
        Self::from_rows(rows).expect("rectangular literal")
    }

    /// The matrix whose column `i` is `cols[i]`.
    pub fn from_columns(cols: &[QVec]) -> Self {
        let c = cols.len();
        let r = cols.first().map_or(0, QVec::dim);
        let mut m = Self::zero(r, c);
        for (j, v) in cols.iter().enumerate() {
            for i in 0..r {
                m.set(i, j, v.get(i).clone());
            }
        }
        m
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }

    pub fn get(&self, r: usize, c: usize) -> &Rational {
        &self.data[r * self.cols + c]
    }

    pub fn set(&mut self, r: usize, c: usize, v: Rational) {
        self.data[r * self.cols + c] = v;
    }

    pub fn row(&self, r: usize) -> &[Rational] {
        &self.data[r * self.cols..(r + 1) * self.cols]
    }

    pub fn column(&self, c: usize) -> QVec {
        QVec((0..self.rows).map(|r| self.get(r, c).clone()).collect())
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(Zero::is_zero)
    }

    pub fn mul(&self, other: &QMatrix) -> Result<QMatrix> {
        if self.cols != other.rows {
            return Err(HomError::dim("matrix product", self.cols, other.rows));
        }
        let mut out = QMatrix::zero(self.rows, other.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self.get(i, k);
                if a.is_zero() {
                    continue;
                }
                for j in 0..other.cols {
                    let b = other.get(k, j);
                    if !b.is_zero() {
                        out.data[i * other.cols + j] += a * b;
                    }
                }
            }
        }
        Ok(out)
    }

    pub fn mul_vec(&self, v: &QVec) -> Result<QVec> {
        if self.cols != v.dim() {
            return Err(HomError::dim("matrix-vector product", self.cols, v.dim()));
        }
        Ok(QVec(
            (0..self.rows)
                .map(|i| {
                    self.row(i)
                        .iter()
                        .zip(v.coeffs())
                        .filter(|(a, b)| !a.is_zero() && !b.is_zero())
                        .map(|(a, b)| a * b)
                        .sum()
                })
                .collect(),
        ))
    }

    pub fn add(&self, other: &QMatrix) -> Result<QMatrix> {
        if (self.rows, self.cols) != (other.rows, other.cols) {
            return Err(HomError::dim("matrix sum", self.rows * self.cols, other.rows * other.cols));
        }
        Ok(QMatrix {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().zip(&other.data).map(|(a, b)| a + b).collect(),
        })
    }

    pub fn sub(&self, other: &QMatrix) -> Result<QMatrix> {
        self.add(&other.scale(&-Rational::one()))
    }

    pub fn scale(&self, c: &Rational) -> QMatrix {
        QMatrix {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().map(|a| a * c).collect(),
        }
    }

    pub fn transpose(&self) -> QMatrix {
        let mut out = QMatrix::zero(self.cols, self.rows);
        for i in 0..self.rows {
            for j in 0..self.cols {
                out.set(j, i, self.get(i, j).clone());
            }
        }
        out
    }

    pub fn pow(&self, k: u32) -> Result<QMatrix> {
        if !self.is_square() {
            return Err(HomError::NotSquare {
                rows: self.rows,
                cols: self.cols,
            });
        }
        let mut acc = QMatrix::identity(self.rows);
        for _ in 0..k {
            acc = acc.mul(self)?;
        }
        Ok(acc)
    }

    /// Reduced row echelon form and the pivot columns.
    fn rref(&self) -> (QMatrix, Vec<usize>) {
        let mut m = self.clone();
        let mut pivots = Vec::new();
        let mut row = 0;
        for col in 0..m.cols {
            if row == m.rows {
                break;
            }
            let Some(p) = (row..m.rows).find(|&r| !m.get(r, col).is_zero()) else {
                continue;
            };
            for j in 0..m.cols {
                m.data.swap(p * m.cols + j, row * m.cols + j);
            }
            let inv = m.get(row, col).recip();
            for j in 0..m.cols {
                let v = m.get(row, j) * &inv;
                m.set(row, j, v);
            }
            for r in 0..m.rows {
                if r == row {
                    continue;
                }
                let factor = m.get(r, col).clone();
                if factor.is_zero() {
                    continue;
                }
                for j in 0..m.cols {
                    let v = m.get(r, j) - &factor * m.get(row, j);
                    m.set(r, j, v);
                }
            }
            pivots.push(col);
            row += 1;
        }
        (m, pivots)
    }

    pub fn rank(&self) -> usize {
        self.rref().1.len()
    }

    pub fn is_invertible(&self) -> bool {
        self.is_square() && self.rank() == self.rows
    }

    pub fn inverse(&self) -> Option<QMatrix> {
        if !self.is_square() {
            return None;
        }
        let n = self.rows;
        let mut aug = QMatrix::zero(n, 2 * n);
        for i in 0..n {
            for j in 0..n {
                aug.set(i, j, self.get(i, j).clone());
            }
            aug.set(i, n + i, Rational::one());
        }
        let (r, pivots) = aug.rref();
        if pivots.len() < n || pivots[n - 1] >= n {
            return None;
        }
        let mut out = QMatrix::zero(n, n);
        for i in 0..n {
            for j in 0..n {
                out.set(i, j, r.get(i, n + j).clone());
            }
        }
        Some(out)
    }

    /// A basis of the column space (the image of the matrix), taken from the
    /// pivot columns.
    pub fn image_basis(&self) -> Vec<QVec> {
        let (_, pivots) = self.rref();
        pivots.into_iter().map(|c| self.column(c)).collect()
    }
}

impl Display for QMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("[")?;
        for i in 0..self.rows {
            if i > 0 {
                f.write_str(", ")?;
            }
            f.write_str("[")?;
            for j in 0..self.cols {
                if j > 0 {
                    f.write_str(", ")?;
                }
                write!(f, "{}", self.get(i, j))?;
            }
            f.write_str("]")?;
        }
        f.write_str("]")
    }
}

/// A bilinear map `Q^n x Q^n -> Q^n` given by its structure constants.
///
/// Skew-symmetry is not enforced, so non-examples are representable.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct StructureConstants {
    dim: usize,
    entries: BTreeMap<(usize, usize, usize), Rational>,
}

impl StructureConstants {
    pub fn zero(dim: usize) -> Self {
        StructureConstants {
            dim,
            entries: BTreeMap::new(),
        }
    }

    pub fn from_entries(
        dim: usize,
        entries: impl IntoIterator<Item = ((usize, usize, usize), Rational)>,
    ) -> Result<Self> {
        let mut c = Self::zero(dim);
        for ((i, j, k), v) in entries {
            for idx in [i, j, k] {
                if idx >= dim {
                    return Err(HomError::IndexOutOfRange {
                        context: "structure constant",
                        index: idx,
                        size: dim,
                    });
                }
            }
            c.add(i, j, k, v);
        }
        Ok(c)
    }

    /// Sets `[e_i, e_j] = v` and `[e_j, e_i] = -v`.
    pub fn with_skew(mut self, i: usize, j: usize, v: &QVec) -> Self {
        for (k, c) in v.coeffs().iter().enumerate() {
            self.set(i, j, k, c.clone());
            self.set(j, i, k, -c.clone());
        }
        self
    }

    /// Structure constants of an arbitrary bilinear map given on basis pairs.
    pub fn from_basis_fn(dim: usize, mut f: impl FnMut(usize, usize) -> QVec) -> Self {
        let mut c = Self::zero(dim);
        for i in 0..dim {
            for j in 0..dim {
                let v = f(i, j);
                for (k, val) in v.coeffs().iter().enumerate() {
                    c.set(i, j, k, val.clone());
                }
            }
        }
        c
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn get(&self, i: usize, j: usize, k: usize) -> Rational {
        self.entries.get(&(i, j, k)).cloned().unwrap_or_else(Rational::zero)
    }

    pub fn set(&mut self, i: usize, j: usize, k: usize, v: Rational) {
        if v.is_zero() {
            self.entries.remove(&(i, j, k));
        } else {
            self.entries.insert((i, j, k), v);
        }
    }

    pub fn add(&mut self, i: usize, j: usize, k: usize, v: Rational) {
        let cur = self.get(i, j, k);
        self.set(i, j, k, cur + v);
    }

    /// Nonzero entries in `(i, j, k)` order.
    pub fn entries(&self) -> impl Iterator<Item = (&(usize, usize, usize), &Rational)> {
        self.entries.iter()
    }

    pub fn is_zero(&self) -> bool {
        self.entries.is_empty()
    }

    /// `[e_i, e_j]`.
    pub fn bracket_basis(&self, i: usize, j: usize) -> QVec {
        let mut v = QVec::zero(self.dim);
        for ((_, _, k), c) in self.entries.range((i, j, 0)..=(i, j, usize::MAX)) {
            v.0[*k] = c.clone();
        }
        v
    }

    /// Bilinear expansion `sum_ij x_i y_j [e_i, e_j]`.
    pub fn apply(&self, x: &QVec, y: &QVec) -> Result<QVec> {
        if x.dim() != self.dim {
            return Err(HomError::dim("bracket argument", self.dim, x.dim()));
        }
        if y.dim() != self.dim {
            return Err(HomError::dim("bracket argument", self.dim, y.dim()));
        }
        let mut out = QVec::zero(self.dim);
        for ((i, j, k), c) in &self.entries {
            let (a, b) = (x.get(*i), y.get(*j));
            if !a.is_zero() && !b.is_zero() {
                out.0[*k] += a * b * c;
            }
        }
        Ok(out)
    }

    pub fn is_skew(&self) -> bool {
        self.entries.iter().all(|(&(i, j, k), c)| self.get(j, i, k) == -c.clone())
    }

    /// Reports every basis pair violating `[e_i, e_j] = -[e_j, e_i]`.
    pub fn check_skew(&self) -> CheckReport {
        let mut report = CheckReport::new();
        for i in 0..self.dim {
            for j in i..self.dim {
                let lhs = self.bracket_basis(i, j);
                let rhs = self.bracket_basis(j, i).scale(&-Rational::one());
                report.expect_eq("skew_symmetry", || basis_names(&[i, j]), &lhs, &rhs);
            }
        }
        report
    }

    /// `alpha ∘ [ , ]`.
    pub fn compose_left(&self, alpha: &QMatrix) -> Result<StructureConstants> {
        check_square(alpha, self.dim, "twisting map")?;
        let mut out = Self::zero(self.dim);
        for i in 0..self.dim {
            for j in 0..self.dim {
                let v = alpha.mul_vec(&self.bracket_basis(i, j))?;
                for (k, c) in v.coeffs().iter().enumerate() {
                    out.set(i, j, k, c.clone());
                }
            }
        }
        Ok(out)
    }

    /// The bracket transported along a change of basis: `p^-1 [p x, p y]`.
    pub fn conjugate(&self, p: &QMatrix, p_inv: &QMatrix) -> Result<StructureConstants> {
        check_square(p, self.dim, "change of basis")?;
        let mut err = None;
        let c = Self::from_basis_fn(self.dim, |i, j| {
            let r = self
                .apply(&p.column(i), &p.column(j))
                .and_then(|v| p_inv.mul_vec(&v));
            r.unwrap_or_else(|e| {
                err = Some(e);
                QVec::zero(self.dim)
            })
        });
        match err {
            Some(e) => Err(e),
            None => Ok(c),
        }
    }
}

pub(crate) fn check_square(m: &QMatrix, n: usize, context: &'static str) -> Result<()> {
    if !m.is_square() {
        return Err(HomError::NotSquare {
            rows: m.rows(),
            cols: m.cols(),
        });
    }
    if m.rows() != n {
        return Err(HomError::dim(context, n, m.rows()));
    }
    Ok(())
}

pub(crate) fn basis_names(idx: &[usize]) -> Vec<String> {
    idx.iter().map(|i| format!("e{i}")).collect()
}

/// Checks `alpha([e_i, e_j]) = [alpha(e_i), alpha(e_j)]` on all basis pairs.
///
/// Invertibility of `alpha` is not required; see [`QMatrix::is_invertible`].
pub fn is_bracket_automorphism(c: &StructureConstants, alpha: &QMatrix) -> Result<CheckReport> {
    check_square(alpha, c.dim(), "twisting map")?;
    let mut report = CheckReport::new();
    let images: Vec<QVec> = (0..c.dim()).map(|i| alpha.column(i)).collect();
    for i in 0..c.dim() {
        for j in 0..c.dim() {
            let lhs = alpha.mul_vec(&c.bracket_basis(i, j))?;
            let rhs = c.apply(&images[i], &images[j])?;
            report.expect_eq("alpha_automorphism", || basis_names(&[i, j]), &lhs, &rhs);
        }
    }
    Ok(report)
}

/// A basis element `e_{i1} ∧ ... ∧ e_{ip}` of the exterior algebra, stored as
/// the strictly increasing index list. The empty list is the unit `1`.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct ExtIndex(Vec<usize>);

impl ExtIndex {
    /// Errors unless `indices` is strictly increasing.
    pub fn new(indices: Vec<usize>) -> Result<Self> {
        if indices.windows(2).any(|w| w[0] >= w[1]) {
            return Err(HomError::DegreeMismatch(format!(
                "exterior index {indices:?} is not strictly increasing"
            )));
        }
        Ok(ExtIndex(indices))
    }

    pub fn empty() -> Self {
        ExtIndex(Vec::new())
    }

    pub fn single(i: usize) -> Self {
        ExtIndex(vec![i])
    }

    pub fn indices(&self) -> &[usize] {
        &self.0
    }

    pub fn degree(&self) -> usize {
        self.0.len()
    }

    pub fn max_index(&self) -> Option<usize> {
        self.0.last().copied()
    }

    pub fn contains(&self, i: usize) -> bool {
        self.0.binary_search(&i).is_ok()
    }

    /// `e_I ∧ e_J = sign * e_K`, or `None` when `I` and `J` share an index.
    /// The sign is the parity of the shuffle that sorts `I ++ J`.
    pub fn wedge_sign(&self, other: &ExtIndex) -> Option<(i8, ExtIndex)> {
        let mut inversions = 0usize;
        let mut merged = Vec::with_capacity(self.0.len() + other.0.len());
        let (mut a, mut b) = (0, 0);
        while a < self.0.len() || b < other.0.len() {
            if b == other.0.len() || (a < self.0.len() && self.0[a] < other.0[b]) {
                merged.push(self.0[a]);
                a += 1;
            } else if a < self.0.len() && self.0[a] == other.0[b] {
                return None;
            } else {
                // other[b] jumps over the remaining entries of self
                inversions += self.0.len() - a;
                merged.push(other.0[b]);
                b += 1;
            }
        }
        let sign = if inversions.is_multiple_of(2) { 1 } else { -1 };
        Some((sign, ExtIndex(merged)))
    }

    /// `self` with the entry at `pos` removed.
    pub fn without_position(&self, pos: usize) -> ExtIndex {
        let mut v = self.0.clone();
        v.remove(pos);
        ExtIndex(v)
    }

    /// All subsets of `{0..n}` of size `<= max_degree`, graded order.
    pub fn all_up_to(n: usize, max_degree: usize) -> Vec<ExtIndex> {
        let mut out = vec![ExtIndex::empty()];
        let mut layer = vec![ExtIndex::empty()];
        for _ in 0..max_degree.min(n) {
            let mut next = Vec::new();
            for s in &layer {
                let start = s.0.last().map_or(0, |l| l + 1);
                for i in start..n {
                    let mut v = s.0.clone();
                    v.push(i);
                    next.push(ExtIndex(v));
                }
            }
            out.extend(next.iter().cloned());
            layer = next;
        }
        out
    }

    pub fn name_with(&self, symbol: &str) -> String {
        if self.0.is_empty() {
            return "1".to_string();
        }
        self.0
            .iter()
            .map(|i| format!("{symbol}{i}"))
            .collect::<Vec<_>>()
            .join("^")
    }
}

impl Ord for ExtIndex {
    fn cmp(&self, other: &Self) -> std::cmp::Ordering {
        self.0.len().cmp(&other.0.len()).then_with(|| self.0.cmp(&other.0))
    }
}

impl PartialOrd for ExtIndex {
    fn partial_cmp(&self, other: &Self) -> Option<std::cmp::Ordering> {
        Some(self.cmp(other))
    }
}

impl Display for ExtIndex {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.name_with("e"))
    }
}

/// An element of the exterior algebra `∧ Q^n` with rational coefficients.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct GradedElement {
    dim: usize,
    terms: BTreeMap<ExtIndex, Rational>,
}

impl GradedElement {
    pub fn zero(dim: usize) -> Self {
        GradedElement {
            dim,
            terms: BTreeMap::new(),
        }
    }

    pub fn scalar(dim: usize, c: Rational) -> Self {
        Self::term(dim, ExtIndex::empty(), c)
    }

    pub fn basis(dim: usize, idx: ExtIndex) -> Self {
        Self::term(dim, idx, Rational::one())
    }

    pub fn term(dim: usize, idx: ExtIndex, c: Rational) -> Self {
        let mut g = Self::zero(dim);
        g.add_term(idx, c);
        g
    }

    /// A degree-one element.
    pub fn from_vec(v: &QVec) -> Self {
        let mut g = Self::zero(v.dim());
        for (i, c) in v.coeffs().iter().enumerate() {
            g.add_term(ExtIndex::single(i), c.clone());
        }
        g
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn terms(&self) -> impl Iterator<Item = (&ExtIndex, &Rational)> {
        self.terms.iter()
    }

    pub fn coefficient(&self, idx: &ExtIndex) -> Rational {
        self.terms.get(idx).cloned().unwrap_or_else(Rational::zero)
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    /// The common degree of all terms; `Some(0)` for zero, `None` if mixed.
    pub fn degree(&self) -> Option<usize> {
        let mut degs = self.terms.keys().map(ExtIndex::degree);
        match degs.next() {
            None => Some(0),
            Some(d) => degs.all(|e| e == d).then_some(d),
        }
    }

    pub fn add_term(&mut self, idx: ExtIndex, c: Rational) {
        if c.is_zero() {
            return;
        }
        let e = self.terms.entry(idx.clone()).or_insert_with(Rational::zero);
        *e += c;
        if e.is_zero() {
            self.terms.remove(&idx);
        }
    }

    pub fn add(&self, other: &GradedElement) -> GradedElement {
        let mut out = self.clone();
        for (k, c) in &other.terms {
            out.add_term(k.clone(), c.clone());
        }
        out
    }

    pub fn scale(&self, c: &Rational) -> GradedElement {
        let mut out = Self::zero(self.dim);
        for (k, v) in &self.terms {
            out.add_term(k.clone(), v * c);
        }
        out
    }

    pub fn wedge(&self, other: &GradedElement) -> GradedElement {
        let mut out = Self::zero(self.dim);
        for (i, a) in &self.terms {
            for (j, b) in &other.terms {
                if let Some((s, k)) = i.wedge_sign(j) {
                    let c = a * b;
                    out.add_term(k, if s < 0 { -c } else { c });
                }
            }
        }
        out
    }
}

impl Display for GradedElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write_linear_combination(f, self.terms.iter().map(|(k, c)| (k.to_string(), c)))
    }
}

/// The degree-preserving algebra endomorphism of `∧ Q^n` extending a linear map.
#[derive(Clone, Debug)]
pub struct ExteriorEndo {
    images: Vec<GradedElement>,
}

/// Extends `alpha` to `∧ Q^n`: identity on scalars, `alpha` on degree one,
/// multiplicative on wedges.
pub fn extend_endo_exterior(alpha: &QMatrix) -> Result<ExteriorEndo> {
    if !alpha.is_square() {
        return Err(HomError::NotSquare {
            rows: alpha.rows(),
            cols: alpha.cols(),
        });
    }
    let images = (0..alpha.cols())
        .map(|i| GradedElement::from_vec(&alpha.column(i)))
        .collect();
    Ok(ExteriorEndo { images })
}

impl ExteriorEndo {
    pub fn dim(&self) -> usize {
        self.images.len()
    }

    pub fn apply_basis(&self, idx: &ExtIndex) -> GradedElement {
        let mut acc = GradedElement::scalar(self.dim(), Rational::one());
        for &i in idx.indices() {
            acc = acc.wedge(&self.images[i]);
        }
        acc
    }

    pub fn apply(&self, x: &GradedElement) -> GradedElement {
        let mut out = GradedElement::zero(self.dim());
        for (idx, c) in x.terms() {
            out = out.add(&self.apply_basis(idx).scale(c));
        }
        out
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::int;

    fn idx(v: &[usize]) -> ExtIndex {
        ExtIndex::new(v.to_vec()).unwrap()
    }

    #[test]
    fn wedge_sign_examples() {
        assert_eq!(idx(&[0, 2]).wedge_sign(&idx(&[1])), Some((-1, idx(&[0, 1, 2]))));
        assert_eq!(idx(&[0]).wedge_sign(&idx(&[0])), None);
        assert_eq!(ExtIndex::empty().wedge_sign(&idx(&[1])), Some((1, idx(&[1]))));
    }

    #[test]
    fn ext_index_rejects_unsorted() {
        assert!(ExtIndex::new(vec![1, 0]).is_err());
        assert!(ExtIndex::new(vec![1, 1]).is_err());
    }

    // Exhaustive associativity and graded commutativity for n <= 4.
    #[test]
    fn wedge_is_associative_and_graded_commutative() {
        for n in 0..=4 {
            let all = ExtIndex::all_up_to(n, n);
            assert_eq!(all.len(), 1 << n);
            for a in &all {
                for b in &all {
                    let ea = GradedElement::basis(n, a.clone());
                    let eb = GradedElement::basis(n, b.clone());
                    let sign = if (a.degree() * b.degree()) % 2 == 0 { 1 } else { -1 };
                    assert_eq!(ea.wedge(&eb), eb.wedge(&ea).scale(&int(sign)));
                    for c in &all {
                        let ec = GradedElement::basis(n, c.clone());
                        assert_eq!(ea.wedge(&eb.wedge(&ec)), ea.wedge(&eb).wedge(&ec));
                    }
                }
            }
        }
    }

    #[test]
    fn exterior_extension_examples() {
        let e01 = GradedElement::basis(2, idx(&[0, 1]));
        let d = extend_endo_exterior(&QMatrix::diag(&[int(2), int(3)])).unwrap();
        assert_eq!(d.apply(&e01), e01.scale(&int(6)));
        let id = extend_endo_exterior(&QMatrix::identity(2)).unwrap();
        for b in ExtIndex::all_up_to(2, 2) {
            assert_eq!(id.apply_basis(&b), GradedElement::basis(2, b.clone()));
        }
        let swap = extend_endo_exterior(&QMatrix::from_ints(&[&[0, 1], &[1, 0]])).unwrap();
        assert_eq!(swap.apply(&e01), e01.scale(&int(-1)));
        assert!(extend_endo_exterior(&QMatrix::zero(2, 3)).is_err());
    }

    #[test]
    fn exterior_extension_is_functorial() {
        let a = QMatrix::from_ints(&[&[1, 2, 0], &[0, -1, 3], &[4, 0, 1]]);
        let b = QMatrix::from_ints(&[&[0, 1, 1], &[2, 0, -1], &[1, 1, 0]]);
        let ab = extend_endo_exterior(&a.mul(&b).unwrap()).unwrap();
        let (ea, eb) = (extend_endo_exterior(&a).unwrap(), extend_endo_exterior(&b).unwrap());
        for i in ExtIndex::all_up_to(3, 3) {
            assert_eq!(ab.apply_basis(&i), ea.apply(&eb.apply_basis(&i)));
        }
    }

    fn heisenberg() -> StructureConstants {
        StructureConstants::zero(3).with_skew(0, 1, &QVec::basis(3, 2))
    }

    #[test]
    fn bracket_apply_examples() {
        let c = heisenberg();
        assert_eq!(c.apply(&QVec::basis(3, 0), &QVec::basis(3, 1)).unwrap(), QVec::basis(3, 2));
        let x = QVec::new(vec![int(1), int(-2), int(5)]);
        assert!(c.apply(&x, &x).unwrap().is_zero());
        assert!(StructureConstants::zero(3).apply(&x, &x).unwrap().is_zero());
        assert!(c.apply(&x, &QVec::zero(2)).is_err());
    }

    #[test]
    fn automorphism_examples() {
        let c = heisenberg();
        assert!(is_bracket_automorphism(&c, &QMatrix::identity(3)).unwrap().passed);
        assert!(is_bracket_automorphism(&c, &QMatrix::diag(&[int(2), int(3), int(6)])).unwrap().passed);
        let r = is_bracket_automorphism(&c, &QMatrix::diag(&[int(2), int(3), int(5)])).unwrap();
        assert!(!r.passed);
        let w = r.first().unwrap();
        assert_eq!(w.witness, ["e0", "e1"]);
        assert_eq!(w.lhs, "5*e2");
        assert_eq!(w.rhs, "6*e2");
    }

    #[test]
    fn matrix_inverse_and_image() {
        let a = QMatrix::from_ints(&[&[1, 2], &[3, 4]]);
        let inv = a.inverse().unwrap();
        assert_eq!(a.mul(&inv).unwrap(), QMatrix::identity(2));
        let singular = QMatrix::from_ints(&[&[1, 2], &[2, 4]]);
        assert!(singular.inverse().is_none());
        assert_eq!(singular.image_basis().len(), 1);
        assert_eq!(QMatrix::zero(3, 3).image_basis().len(), 0);
    }
}
