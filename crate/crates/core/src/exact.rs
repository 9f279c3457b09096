//! Exact rational scalars, vectors, linear forms and the Gaussian
//! elimination toolkit every other module is built on.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};
use crate::reduce::{PivotExpr, Substitution};

/// Exact arbitrary-precision fraction. `BigRational` keeps the canonical
/// reduced form (positive denominator, gcd 1) as a structural invariant.
pub type Rational = num_rational::BigRational;

pub fn rat(n: i64) -> Rational {
    Rational::from_integer(BigInt::from(n))
}

pub fn ratio(n: i64, d: i64) -> Rational {
    Rational::new(BigInt::from(n), BigInt::from(d))
}

/// Vector of rationals of a fixed ambient dimension. Ordering is
/// lexicographic on the entries.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct QVector {
    entries: Vec<Rational>,
}

impl QVector {
    pub fn new(entries: Vec<Rational>) -> Self {
        Self { entries }
    }

    pub fn from_i64(entries: &[i64]) -> Self {
        Self::new(entries.iter().map(|&e| rat(e)).collect())
    }

    pub fn zeros(n: usize) -> Self {
        Self::new(vec![Rational::zero(); n])
    }

    pub fn unit(n: usize, index: usize) -> Self {
        let mut entries = vec![Rational::zero(); n];
        entries[index] = Rational::one();
        Self::new(entries)
    }

    pub fn standard_basis(n: usize) -> Vec<Self> {
        (0..n).map(|i| Self::unit(n, i)).collect()
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    pub fn entries(&self) -> &[Rational] {
        &self.entries
    }

    pub fn iter(&self) -> std::slice::Iter<'_, Rational> {
        self.entries.iter()
    }

    pub fn is_zero(&self) -> bool {
        self.entries.iter().all(|e| e.is_zero())
    }

    pub fn scaled(&self, k: &Rational) -> Self {
        Self::new(self.entries.iter().map(|e| e * k).collect())
    }

    pub fn negated(&self) -> Self {
        Self::new(self.entries.iter().map(|e| -e).collect())
    }

    /// `a*x + b*y`, the workhorse of every pair combination.
    pub fn linear_combination(a: &Rational, x: &Self, b: &Rational, y: &Self) -> Result<Self> {
        if x.len() != y.len() {
            return Err(Error::DimensionMismatch {
                expected: x.len(),
                got: y.len(),
            });
        }
        Ok(Self::new(
            x.iter()
                .zip(y.iter())
                .map(|(xe, ye)| a * xe + b * ye)
                .collect(),
        ))
    }

    pub fn dot(&self, other: &Self) -> Result<Rational> {
        if self.len() != other.len() {
            return Err(Error::DimensionMismatch {
                expected: self.len(),
                got: other.len(),
            });
        }
        Ok(self
            .iter()
            .zip(other.iter())
            .fold(Rational::zero(), |acc, (a, b)| acc + a * b))
    }
}

impl std::ops::Index<usize> for QVector {
    type Output = Rational;
    fn index(&self, i: usize) -> &Rational {
        &self.entries[i]
    }
}

/// Left-hand side of one inequality `l(x) <= 0`.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct LinearForm {
    coefficients: QVector,
}

impl LinearForm {
    pub fn new(coefficients: QVector) -> Self {
        Self { coefficients }
    }

    pub fn from_i64(coefficients: &[i64]) -> Self {
        Self::new(QVector::from_i64(coefficients))
    }

    pub fn dimension(&self) -> usize {
        self.coefficients.len()
    }

    pub fn coefficients(&self) -> &QVector {
        &self.coefficients
    }

    pub fn is_zero(&self) -> bool {
        self.coefficients.is_zero()
    }
}

/// System `l_j(x) <= 0, j = 1..m` over `Q^n`. Form order is the iteration
/// order of the algorithm and is preserved.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct InequalitySystem {
    dimension: usize,
    forms: Vec<LinearForm>,
}

impl InequalitySystem {
    pub fn new(dimension: usize, forms: Vec<LinearForm>) -> Result<Self> {
        for (row, form) in forms.iter().enumerate() {
            if form.dimension() != dimension {
                return Err(Error::RaggedRows {
                    row,
                    expected: dimension,
                    got: form.dimension(),
                });
            }
        }
        Ok(Self { dimension, forms })
    }

    pub fn from_rows(dimension: usize, rows: &[&[i64]]) -> Self {
        let forms = rows.iter().map(|r| LinearForm::from_i64(r)).collect();
        Self::new(dimension, forms).expect("row lengths match dimension")
    }

    pub fn dimension(&self) -> usize {
        self.dimension
    }

    pub fn forms(&self) -> &[LinearForm] {
        &self.forms
    }

    pub fn len(&self) -> usize {
        self.forms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.forms.is_empty()
    }

    pub fn rank(&self) -> usize {
        let rows: Vec<QVector> = self.forms.iter().map(|f| f.coefficients().clone()).collect();
        rank(&rows).expect("system rows share one dimension")
    }
}

/// `l(x) = sum a_i x_i`, exactly.
pub fn evaluate(form: &LinearForm, x: &QVector) -> Result<Rational> {
    form.coefficients().dot(x)
}

/// Incremental reduced row echelon form over the rationals. Pivots are the
/// first nonzero column of each inserted row, rows are kept normalized with
/// pivot entry 1 and fully back-eliminated.
#[derive(Clone, Debug)]
pub(crate) struct Rref {
    width: usize,
    rows: Vec<QVector>,
    pivots: Vec<usize>,
}

impl Rref {
    pub fn new(width: usize) -> Self {
        Self {
            width,
            rows: Vec::new(),
            pivots: Vec::new(),
        }
    }

    pub fn rank(&self) -> usize {
        self.rows.len()
    }

    pub fn rows(&self) -> &[QVector] {
        &self.rows
    }

    pub fn pivots(&self) -> &[usize] {
        &self.pivots
    }

    /// Eliminates the pivot coordinates of `v` against the stored rows.
    pub fn reduce(&self, v: &QVector) -> QVector {
        let mut out = v.clone();
        for (row, &p) in self.rows.iter().zip(self.pivots.iter()) {
            if !out[p].is_zero() {
                let factor = out[p].clone();
                out = QVector::linear_combination(&Rational::one(), &out, &(-factor), row)
                    .expect("widths agree inside Rref");
            }
        }
        out
    }

    /// Inserts `v` if it is independent of the stored rows. Returns true
    /// when the rank grew.
    pub fn insert(&mut self, v: &QVector) -> Result<bool> {
        if v.len() != self.width {
            return Err(Error::RaggedRows {
                row: self.rows.len(),
                expected: self.width,
                got: v.len(),
            });
        }
        let reduced = self.reduce(v);
        let Some(pivot) = reduced.iter().position(|e| !e.is_zero()) else {
            return Ok(false);
        };
        let inv = reduced[pivot].recip();
        let new_row = reduced.scaled(&inv);
        // back-eliminate the new pivot column from the existing rows
        for row in self.rows.iter_mut() {
            if !row[pivot].is_zero() {
                let factor = row[pivot].clone();
                *row = QVector::linear_combination(&Rational::one(), row, &(-factor), &new_row)
                    .expect("widths agree inside Rref");
            }
        }
        let pos = self.pivots.partition_point(|&p| p < pivot);
        self.pivots.insert(pos, pivot);
        self.rows.insert(pos, new_row);
        Ok(true)
    }

    pub fn from_rows_iter<'a, I: IntoIterator<Item = &'a QVector>>(
        width: usize,
        rows: I,
    ) -> Result<Self> {
        let mut rref = Self::new(width);
        for row in rows {
            rref.insert(row)?;
        }
        Ok(rref)
    }
}

/// Rank of a list of rows via exact Gaussian elimination. Empty input has
/// rank 0; ragged rows are rejected.
pub fn rank(rows: &[QVector]) -> Result<usize> {
    let Some(first) = rows.first() else {
        return Ok(0);
    };
    let rref = Rref::from_rows_iter(first.len(), rows)?;
    Ok(rref.rank())
}

/// Indices of a maximal linearly independent subsystem, chosen greedily in
/// list order: the first form whose addition increases the rank is taken.
pub fn max_independent_subset(forms: &[LinearForm]) -> Vec<usize> {
    let Some(first) = forms.first() else {
        return Vec::new();
    };
    let mut rref = Rref::new(first.dimension());
    let mut chosen = Vec::new();
    for (i, form) in forms.iter().enumerate() {
        if rref
            .insert(form.coefficients())
            .expect("forms share one dimension")
        {
            chosen.push(i);
        }
    }
    chosen
}

/// Basis of `{x : row . x = 0 for all rows}`, canonicalized by
/// [`canonicalize_line`] and sorted lexicographically.
pub fn null_space(rows: &[QVector], dimension: usize) -> Result<Vec<QVector>> {
    let mut rref = Rref::new(dimension);
    for row in rows {
        rref.insert(row)?;
    }
    let mut basis = Vec::with_capacity(dimension - rref.rank());
    for free in 0..dimension {
        if rref.pivots().contains(&free) {
            continue;
        }
        let mut entries = vec![Rational::zero(); dimension];
        entries[free] = Rational::one();
        for (row, &p) in rref.rows().iter().zip(rref.pivots().iter()) {
            // x_p + sum_{free f} row[f] x_f = 0
            entries[p] = -row[free].clone();
        }
        basis.push(canonicalize_line(&QVector::new(entries))?);
    }
    basis.sort();
    Ok(basis)
}

/// Unique positive multiple of `v` with integer entries of gcd 1. The
/// direction is preserved.
pub fn canonicalize_ray(v: &QVector) -> Result<QVector> {
    if v.is_zero() {
        return Err(Error::ZeroVector);
    }
    let mut denom_lcm = BigInt::one();
    for e in v.iter() {
        denom_lcm = denom_lcm.lcm(e.denom());
    }
    let ints: Vec<BigInt> = v
        .iter()
        .map(|e| e.numer() * (&denom_lcm / e.denom()))
        .collect();
    let mut g = BigInt::zero();
    for i in &ints {
        g = g.gcd(i);
    }
    Ok(QVector::new(
        ints.into_iter()
            .map(|i| Rational::from_integer(i / &g))
            .collect(),
    ))
}

/// [`canonicalize_ray`] with the sign normalized so the first nonzero entry
/// is positive. Lineality basis vectors are direction-free.
pub fn canonicalize_line(u: &QVector) -> Result<QVector> {
    let ray = canonicalize_ray(u)?;
    let first = ray
        .iter()
        .find(|e| !e.is_zero())
        .expect("canonical ray is nonzero");
    if first.is_negative() {
        Ok(ray.negated())
    } else {
        Ok(ray)
    }
}

/// Solves `{l_j(x) = -y_j, j = 1..r}` for `r` pivot variables by exact
/// Gaussian elimination with first-nonzero-column pivoting. The remaining
/// `n - r` variables stay free.
pub fn solve_for_substitution(base_forms: &[LinearForm], n: usize) -> Result<Substitution> {
    let r = base_forms.len();
    // augmented rows over the variables (x_1..x_n, y_1..y_r):
    // l_j(x) + y_j = 0
    let mut rref = Rref::new(n + r);
    for (j, form) in base_forms.iter().enumerate() {
        if form.dimension() != n {
            return Err(Error::RaggedRows {
                row: j,
                expected: n,
                got: form.dimension(),
            });
        }
        let mut entries: Vec<Rational> = form.coefficients().entries().to_vec();
        entries.extend((0..r).map(|k| {
            if k == j {
                Rational::one()
            } else {
                Rational::zero()
            }
        }));
        rref.insert(&QVector::new(entries))?;
    }
    if rref.rank() != r || rref.pivots().iter().any(|&p| p >= n) {
        return Err(Error::DependentBase);
    }

    let pivot_indices: Vec<usize> = rref.pivots().to_vec();
    let free_indices: Vec<usize> = (0..n).filter(|i| !pivot_indices.contains(i)).collect();
    let mut expressions = Vec::with_capacity(r);
    for row in rref.rows() {
        // x_p + sum_f c_f x_f + sum_j d_j y_j = 0
        let y_coefficients: Vec<Rational> = (0..r).map(|j| -row[n + j].clone()).collect();
        let free_coefficients: Vec<Rational> =
            free_indices.iter().map(|&f| -row[f].clone()).collect();
        expressions.push(PivotExpr {
            y_coefficients,
            free_coefficients,
        });
    }
    Ok(Substitution {
        rank: r,
        pivot_indices,
        free_indices,
        expressions,
    })
}
