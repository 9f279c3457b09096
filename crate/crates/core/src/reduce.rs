//! Preprocessing: strip unused variables, change variables so the reduced
//! iteration starts from `U = {}` and `V = E_r`, and map results back to
//! the original coordinates.

use num_traits::Zero;

use crate::error::{Error, Result};
use crate::exact::{
    canonicalize_line, canonicalize_ray, max_independent_subset, InequalitySystem, LinearForm,
    QVector, Rational,
};
use crate::mb::ConeDescription;

/// Exact linear expression of one pivot variable:
/// `x_pivot = sum_j y_coefficients[j] * y_j + sum_t free_coefficients[t] * x_free_t`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PivotExpr {
    pub y_coefficients: Vec<Rational>,
    pub free_coefficients: Vec<Rational>,
}

/// Record of the change of variables: which variables were solved for,
/// which stayed free, and the expressions needed for back-substitution.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Substitution {
    pub rank: usize,
    pub pivot_indices: Vec<usize>,
    pub free_indices: Vec<usize>,
    pub expressions: Vec<PivotExpr>,
}

impl Substitution {
    pub fn ambient_dimension(&self) -> usize {
        self.pivot_indices.len() + self.free_indices.len()
    }

    /// Evaluates the identities at `y` (length r) and the free variables
    /// (length n - r), producing the full `x` vector.
    pub fn image(&self, y: &QVector, free: &QVector) -> Result<QVector> {
        if y.len() != self.rank {
            return Err(Error::DimensionMismatch {
                expected: self.rank,
                got: y.len(),
            });
        }
        if free.len() != self.free_indices.len() {
            return Err(Error::DimensionMismatch {
                expected: self.free_indices.len(),
                got: free.len(),
            });
        }
        let n = self.ambient_dimension();
        let mut entries = vec![Rational::zero(); n];
        for (t, &f) in self.free_indices.iter().enumerate() {
            entries[f] = free[t].clone();
        }
        for (expr, &p) in self.expressions.iter().zip(self.pivot_indices.iter()) {
            let mut value = Rational::zero();
            for (j, c) in expr.y_coefficients.iter().enumerate() {
                value += c * &y[j];
            }
            for (t, c) in expr.free_coefficients.iter().enumerate() {
                value += c * &free[t];
            }
            entries[p] = value;
        }
        Ok(QVector::new(entries))
    }

    /// Substitutes the identities into `form`, returning its coefficients
    /// over `(y_1..y_r)` and over the free variables.
    pub fn substitute_form(&self, form: &LinearForm) -> Result<(QVector, QVector)> {
        let n = self.ambient_dimension();
        if form.dimension() != n {
            return Err(Error::DimensionMismatch {
                expected: n,
                got: form.dimension(),
            });
        }
        let a = form.coefficients();
        let mut y_part = vec![Rational::zero(); self.rank];
        let mut free_part: Vec<Rational> = self
            .free_indices
            .iter()
            .map(|&f| a[f].clone())
            .collect();
        for (expr, &p) in self.expressions.iter().zip(self.pivot_indices.iter()) {
            let coeff = &a[p];
            if coeff.is_zero() {
                continue;
            }
            for (j, c) in expr.y_coefficients.iter().enumerate() {
                y_part[j] += coeff * c;
            }
            for (t, c) in expr.free_coefficients.iter().enumerate() {
                free_part[t] += coeff * c;
            }
        }
        Ok((QVector::new(y_part), QVector::new(free_part)))
    }
}

/// Variables absent from every form, plus the substitution used (when the
/// preprocessed path ran).
#[derive(Clone, Debug)]
pub struct ReductionRecord {
    pub bad_indices: Vec<usize>,
    pub original_dimension: usize,
    pub substitution: Option<Substitution>,
}

/// Projects the system onto the variables that actually occur in it.
/// Returns the projected system and the indices of the dropped variables.
pub fn strip_unused_variables(system: &InequalitySystem) -> (InequalitySystem, Vec<usize>) {
    let n = system.dimension();
    let used: Vec<usize> = (0..n)
        .filter(|&i| system.forms().iter().any(|f| !f.coefficients()[i].is_zero()))
        .collect();
    let bad: Vec<usize> = (0..n).filter(|i| !used.contains(i)).collect();
    if bad.is_empty() {
        return (system.clone(), bad);
    }
    let forms = system
        .forms()
        .iter()
        .map(|f| {
            LinearForm::new(QVector::new(
                used.iter().map(|&i| f.coefficients()[i].clone()).collect(),
            ))
        })
        .collect();
    let stripped =
        InequalitySystem::new(used.len(), forms).expect("projection preserves row lengths");
    (stripped, bad)
}

/// Change of variables `y_j = -l_j(x)` over a maximal independent Base.
/// Returns the reduced system over `y_1..y_r` holding only the `m - r`
/// substituted forms (the Base rows become `-y_i <= 0` and are absorbed
/// into the initial `V = E_r`), plus the substitution record.
pub fn change_of_variables(
    system: &InequalitySystem,
) -> Result<(InequalitySystem, Substitution)> {
    let base_indices = max_independent_subset(system.forms());
    let r = base_indices.len();
    if r == 0 {
        return Err(Error::RankZero);
    }
    let base: Vec<LinearForm> = base_indices
        .iter()
        .map(|&i| system.forms()[i].clone())
        .collect();
    let sub = crate::exact::solve_for_substitution(&base, system.dimension())?;

    let mut reduced_forms = Vec::with_capacity(system.len() - r);
    for (i, form) in system.forms().iter().enumerate() {
        if base_indices.contains(&i) {
            continue;
        }
        let (y_part, free_part) = sub.substitute_form(form)?;
        if !free_part.is_zero() {
            return Err(Error::Internal(format!(
                "substituted form {i} still depends on a free variable"
            )));
        }
        reduced_forms.push(LinearForm::new(y_part));
    }
    let reduced = InequalitySystem::new(r, reduced_forms)?;
    Ok((reduced, sub))
}

/// Maps a cone computed in the reduced `y` coordinates back to the original
/// space: the free-variable directions (plus one line per stripped
/// variable) span the lineality space, the reduced rays map through the
/// substitution with free variables set to zero.
pub fn back_substitute(
    cone_y: &ConeDescription,
    sub: &Substitution,
    bad_indices: &[usize],
    original_n: usize,
) -> Result<ConeDescription> {
    if cone_y.dimension() != sub.rank {
        return Err(Error::DimensionMismatch {
            expected: sub.rank,
            got: cone_y.dimension(),
        });
    }
    if !cone_y.lineality_basis().is_empty() {
        return Err(Error::Internal(
            "reduced cone carries a nonempty lineality basis".into(),
        ));
    }
    let stripped_n = sub.ambient_dimension();
    if stripped_n + bad_indices.len() != original_n {
        return Err(Error::DimensionMismatch {
            expected: original_n,
            got: stripped_n + bad_indices.len(),
        });
    }
    let used: Vec<usize> = (0..original_n)
        .filter(|i| !bad_indices.contains(i))
        .collect();
    let embed = |v: &QVector| -> QVector {
        let mut entries = vec![Rational::zero(); original_n];
        for (t, &i) in used.iter().enumerate() {
            entries[i] = v[t].clone();
        }
        QVector::new(entries)
    };

    let free_count = sub.free_indices.len();
    let zero_y = QVector::zeros(sub.rank);
    let mut lineality = Vec::with_capacity(free_count + bad_indices.len());
    for t in 0..free_count {
        let image = sub.image(&zero_y, &QVector::unit(free_count, t))?;
        lineality.push(canonicalize_line(&embed(&image))?);
    }
    for &b in bad_indices {
        lineality.push(QVector::unit(original_n, b));
    }
    lineality.sort();

    let zero_free = QVector::zeros(free_count);
    let mut rays = Vec::with_capacity(cone_y.rays().len());
    for v in cone_y.rays() {
        let image = sub.image(v, &zero_free)?;
        rays.push(canonicalize_ray(&embed(&image))?);
    }
    rays.sort();
    rays.dedup();

    ConeDescription::new(original_n, lineality, rays)
}
