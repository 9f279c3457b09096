//! One Motzkin-Burger iteration: extend a cone description `(U, V)` by a
//! single new inequality.
//!
//! The step has two branches. If the new form is nonzero on some lineality
//! basis vector, the basis is rotated into the new hyperplane and the rays
//! are mapped into the feasible halfspace. Otherwise the rays split by
//! sign, adjacent negative/positive pairs are combined onto the hyperplane
//! and the positive rays are dropped.

use std::collections::BTreeMap;

use num_traits::Zero;

use crate::error::{Error, Result};
use crate::exact::{
    canonicalize_line, canonicalize_ray, evaluate, rank, LinearForm, QVector, Rational,
};

/// Which adjacency criterion `mb_step` uses when pairing rays.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Default)]
pub enum AdjacencyTest {
    /// No third generator zeroes every form the pair has in common.
    #[default]
    Combinatorial,
    /// The common tight set contains r - 2 linearly independent forms.
    Rank,
}

/// Pair `(U, V)`: basis of the lineality space and generators of the
/// strongly convex part. Both lists are canonicalized and sorted.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ConeDescription {
    dimension: usize,
    lineality: Vec<QVector>,
    rays: Vec<QVector>,
}

impl ConeDescription {
    pub fn new(dimension: usize, lineality: Vec<QVector>, rays: Vec<QVector>) -> Result<Self> {
        for v in lineality.iter().chain(rays.iter()) {
            if v.len() != dimension {
                return Err(Error::DimensionMismatch {
                    expected: dimension,
                    got: v.len(),
                });
            }
        }
        Ok(Self {
            dimension,
            lineality,
            rays,
        })
    }

    /// Initial state of the iteration: the whole space.
    pub fn whole_space(dimension: usize) -> Self {
        let mut lineality = QVector::standard_basis(dimension);
        lineality.sort();
        Self {
            dimension,
            lineality,
            rays: Vec::new(),
        }
    }

    pub fn dimension(&self) -> usize {
        self.dimension
    }

    /// Basis `U` of the lineality space.
    pub fn lineality_basis(&self) -> &[QVector] {
        &self.lineality
    }

    /// Generators `V` of the strongly convex part.
    pub fn rays(&self) -> &[QVector] {
        &self.rays
    }
}

/// Exact values `l_j(v)` for every processed form `l_j` and generator `v`,
/// kept so the adjacency checks never re-evaluate a form.
#[derive(Clone, Debug, Default)]
pub struct EvalTableau {
    // values[ray_index][form_index]
    values: Vec<Vec<Rational>>,
}

impl EvalTableau {
    pub fn empty() -> Self {
        Self::default()
    }

    pub fn build(processed: &[LinearForm], rays: &[QVector]) -> Result<Self> {
        let values = rays
            .iter()
            .map(|v| {
                processed
                    .iter()
                    .map(|l| evaluate(l, v))
                    .collect::<Result<Vec<_>>>()
            })
            .collect::<Result<Vec<_>>>()?;
        Ok(Self { values })
    }

    pub fn value(&self, ray: usize, form: usize) -> &Rational {
        &self.values[ray][form]
    }

    pub fn ray_count(&self) -> usize {
        self.values.len()
    }

    pub fn form_count(&self) -> usize {
        self.values.first().map_or(0, Vec::len)
    }
}

/// Rotates the lineality basis into the hyperplane of `l`. Picks the first
/// `u` with `l(u) != 0`, returns the reduced basis together with the new
/// ray `-sign(l(u)) * u` (which satisfies `l < 0`).
pub fn transform_lineality(
    basis: &[QVector],
    l: &LinearForm,
) -> Result<(Vec<QVector>, QVector)> {
    let mut pivot = None;
    for u in basis {
        let value = evaluate(l, u)?;
        if !value.is_zero() {
            pivot = Some((u, value));
            break;
        }
    }
    let Some((u, lu)) = pivot else {
        return Err(Error::NoLinealityPivot);
    };
    let mut reduced = Vec::with_capacity(basis.len() - 1);
    for other in basis {
        if std::ptr::eq(other, u) {
            continue;
        }
        let l_other = evaluate(l, other)?;
        let rotated = QVector::linear_combination(&lu, other, &(-l_other), u)?;
        reduced.push(canonicalize_line(&rotated)?);
    }
    reduced.sort();
    let n_ray = if lu.is_zero() || lu > Rational::zero() {
        canonicalize_ray(&u.negated())?
    } else {
        canonicalize_ray(u)?
    };
    Ok((reduced, n_ray))
}

/// Maps every ray into the halfspace `l <= 0` through the pivot ray
/// `n_ray`, which must satisfy `l(n_ray) < 0`.
pub fn transform_rays(
    rays: &[QVector],
    n_ray: &QVector,
    l: &LinearForm,
) -> Result<Vec<QVector>> {
    let l_n = evaluate(l, n_ray)?;
    if l_n >= Rational::zero() {
        return Err(Error::SignPrecondition("transform_rays needs l(n_ray) < 0"));
    }
    let mut out = vec![canonicalize_ray(n_ray)?];
    for v in rays {
        let l_v = evaluate(l, v)?;
        let mapped = QVector::linear_combination(&(-l_n.clone()), v, &l_v, n_ray)?;
        out.push(canonicalize_ray(&mapped)?);
    }
    out.sort();
    out.dedup();
    Ok(out)
}

/// Combination of a strictly negative and a strictly positive ray landing
/// exactly on the hyperplane of `l`.
pub fn combine(v_minus: &QVector, v_plus: &QVector, l: &LinearForm) -> Result<QVector> {
    let l_minus = evaluate(l, v_minus)?;
    let l_plus = evaluate(l, v_plus)?;
    if l_minus >= Rational::zero() || l_plus <= Rational::zero() {
        return Err(Error::SignPrecondition(
            "combine needs l(v_minus) < 0 and l(v_plus) > 0",
        ));
    }
    let combined = QVector::linear_combination(&(-l_minus), v_plus, &l_plus, v_minus)?;
    canonicalize_ray(&combined)
}

fn common_tight_indices(
    v_minus: &QVector,
    v_plus: &QVector,
    processed: &[LinearForm],
) -> Result<Vec<usize>> {
    let mut tight = Vec::new();
    for (j, form) in processed.iter().enumerate() {
        if evaluate(form, v_minus)?.is_zero() && evaluate(form, v_plus)?.is_zero() {
            tight.push(j);
        }
    }
    Ok(tight)
}

/// Adjacency by the combinatorial criterion: the pair is adjacent iff no
/// third generator zeroes every form the pair has in common. With an empty
/// common tight set any third generator qualifies vacuously; with no third
/// generator the pair is vacuously adjacent.
pub fn adjacent_combinatorial(
    v_minus: &QVector,
    v_plus: &QVector,
    rays: &[QVector],
    processed: &[LinearForm],
) -> Result<bool> {
    let tight = common_tight_indices(v_minus, v_plus, processed)?;
    for v in rays {
        if v == v_minus || v == v_plus {
            continue;
        }
        let mut zeroes_all = true;
        for &j in &tight {
            if !evaluate(&processed[j], v)?.is_zero() {
                zeroes_all = false;
                break;
            }
        }
        if zeroes_all {
            return Ok(false);
        }
    }
    Ok(true)
}

/// Adjacency by the rank criterion: the common tight set contains `r - 2`
/// linearly independent forms. Vacuously true for `r < 2`.
pub fn adjacent_rank(
    v_minus: &QVector,
    v_plus: &QVector,
    processed: &[LinearForm],
    r: usize,
) -> Result<bool> {
    let needed = r.saturating_sub(2);
    if needed == 0 {
        return Ok(true);
    }
    let tight = common_tight_indices(v_minus, v_plus, processed)?;
    let rows: Vec<QVector> = tight
        .iter()
        .map(|&j| processed[j].coefficients().clone())
        .collect();
    Ok(rank(&rows)? >= needed)
}

/// Extends the cone by one inequality. `processed` are the forms already
/// folded in; `tableau` must hold their values on `cone.rays()`. Returns
/// the new description together with a tableau over `processed + [l]`.
pub fn mb_step(
    cone: &ConeDescription,
    processed: &[LinearForm],
    l: &LinearForm,
    tableau: &EvalTableau,
    adjacency: AdjacencyTest,
) -> Result<(ConeDescription, EvalTableau)> {
    let n = cone.dimension();
    if l.dimension() != n {
        return Err(Error::DimensionMismatch {
            expected: n,
            got: l.dimension(),
        });
    }

    let lineality_hit = cone
        .lineality_basis()
        .iter()
        .map(|u| evaluate(l, u))
        .collect::<Result<Vec<_>>>()?
        .iter()
        .any(|v| !v.is_zero());

    if lineality_hit {
        let (lineality, n_ray) = transform_lineality(cone.lineality_basis(), l)?;
        let rays = transform_rays(cone.rays(), &n_ray, l)?;
        let mut all_forms: Vec<LinearForm> = processed.to_vec();
        all_forms.push(l.clone());
        let new_tableau = EvalTableau::build(&all_forms, &rays)?;
        return Ok((ConeDescription::new(n, lineality, rays)?, new_tableau));
    }

    // second branch: the lineality space already lies in the hyperplane
    let l_values: Vec<Rational> = cone
        .rays()
        .iter()
        .map(|v| evaluate(l, v))
        .collect::<Result<Vec<_>>>()?;

    // kept rays carry their cached tableau row forward
    let mut new_rays: BTreeMap<QVector, Vec<Rational>> = BTreeMap::new();
    for (i, v) in cone.rays().iter().enumerate() {
        if l_values[i] <= Rational::zero() {
            let mut row: Vec<Rational> =
                (0..tableau.form_count()).map(|j| tableau.value(i, j).clone()).collect();
            row.push(l_values[i].clone());
            new_rays.insert(v.clone(), row);
        }
    }

    let negatives: Vec<usize> = (0..cone.rays().len())
        .filter(|&i| l_values[i] < Rational::zero())
        .collect();
    let positives: Vec<usize> = (0..cone.rays().len())
        .filter(|&i| l_values[i] > Rational::zero())
        .collect();

    let r_processed = match adjacency {
        AdjacencyTest::Rank => {
            let rows: Vec<QVector> = processed
                .iter()
                .map(|f| f.coefficients().clone())
                .collect();
            rank(&rows)?
        }
        AdjacencyTest::Combinatorial => 0,
    };

    let mut all_forms: Vec<LinearForm> = processed.to_vec();
    all_forms.push(l.clone());

    for &i_minus in &negatives {
        for &i_plus in &positives {
            let adjacent = match adjacency {
                AdjacencyTest::Combinatorial => is_adjacent_cached(
                    i_minus,
                    i_plus,
                    cone.rays().len(),
                    processed.len(),
                    tableau,
                ),
                AdjacencyTest::Rank => adjacent_rank(
                    &cone.rays()[i_minus],
                    &cone.rays()[i_plus],
                    processed,
                    r_processed,
                )?,
            };
            if !adjacent {
                continue;
            }
            let v_minus = &cone.rays()[i_minus];
            let v_plus = &cone.rays()[i_plus];
            let combined = QVector::linear_combination(
                &(-l_values[i_minus].clone()),
                v_plus,
                &l_values[i_plus],
                v_minus,
            )?;
            let combined = canonicalize_ray(&combined)?;
            if !new_rays.contains_key(&combined) {
                let row = all_forms
                    .iter()
                    .map(|f| evaluate(f, &combined))
                    .collect::<Result<Vec<_>>>()?;
                new_rays.insert(combined, row);
            }
        }
    }

    let (rays, rows): (Vec<QVector>, Vec<Vec<Rational>>) = new_rays.into_iter().unzip();
    Ok((
        ConeDescription::new(n, cone.lineality_basis().to_vec(), rays)?,
        EvalTableau { values: rows },
    ))
}

/// Combinatorial adjacency over the cached tableau values.
fn is_adjacent_cached(
    i_minus: usize,
    i_plus: usize,
    ray_count: usize,
    form_count: usize,
    tableau: &EvalTableau,
) -> bool {
    let tight: Vec<usize> = (0..form_count)
        .filter(|&j| tableau.value(i_minus, j).is_zero() && tableau.value(i_plus, j).is_zero())
        .collect();
    for v in 0..ray_count {
        if v == i_minus || v == i_plus {
            continue;
        }
        if tight.iter().all(|&j| tableau.value(v, j).is_zero()) {
            return false;
        }
    }
    true
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::InequalitySystem;

    fn qv(entries: &[i64]) -> QVector {
        QVector::from_i64(entries)
    }

    fn lf(entries: &[i64]) -> LinearForm {
        LinearForm::from_i64(entries)
    }

    #[test]
    fn transform_lineality_rotates_basis() {
        let basis = vec![qv(&[1, 0]), qv(&[0, 1])];
        let (reduced, n_ray) = transform_lineality(&basis, &lf(&[1, 0])).unwrap();
        assert_eq!(reduced, vec![qv(&[0, 1])]);
        assert_eq!(n_ray, qv(&[-1, 0]));
    }

    #[test]
    fn transform_lineality_negative_pivot() {
        let basis = vec![qv(&[1, 0])];
        let (reduced, n_ray) = transform_lineality(&basis, &lf(&[-3, 0])).unwrap();
        assert!(reduced.is_empty());
        assert_eq!(n_ray, qv(&[1, 0]));
    }

    #[test]
    fn transform_lineality_needs_pivot() {
        let basis = vec![qv(&[0, 1])];
        assert!(matches!(
            transform_lineality(&basis, &lf(&[1, 0])),
            Err(Error::NoLinealityPivot)
        ));
    }

    #[test]
    fn transform_rays_empty() {
        let out = transform_rays(&[], &qv(&[-1, 0]), &lf(&[1, 0])).unwrap();
        assert_eq!(out, vec![qv(&[-1, 0])]);
    }

    #[test]
    fn transform_rays_fixes_hyperplane_rays() {
        let out = transform_rays(&[qv(&[-1, 0])], &qv(&[0, -1]), &lf(&[0, 1])).unwrap();
        assert_eq!(out, vec![qv(&[-1, 0]), qv(&[0, -1])]);
    }

    #[test]
    fn transform_rays_maps_violating_ray() {
        let out = transform_rays(&[qv(&[1, 1])], &qv(&[0, -1]), &lf(&[0, 1])).unwrap();
        assert_eq!(out, vec![qv(&[0, -1]), qv(&[1, 0])]);
    }

    #[test]
    fn transform_rays_checks_pivot_sign() {
        assert!(matches!(
            transform_rays(&[], &qv(&[1, 0]), &lf(&[1, 0])),
            Err(Error::SignPrecondition(_))
        ));
    }

    #[test]
    fn combine_diagonal() {
        let w = combine(&qv(&[0, 1]), &qv(&[1, 0]), &lf(&[1, -1])).unwrap();
        assert_eq!(w, qv(&[1, 1]));
    }

    #[test]
    fn combine_other_diagonal() {
        let w = combine(&qv(&[-1, 0]), &qv(&[0, 1]), &lf(&[1, 1])).unwrap();
        assert_eq!(w, qv(&[-1, 1]));
    }

    #[test]
    fn combine_is_homogeneous() {
        let l = lf(&[1, -1]);
        let a = combine(&qv(&[0, 2]), &qv(&[1, 0]), &l).unwrap();
        let b = combine(&qv(&[0, 1]), &qv(&[1, 0]), &l).unwrap();
        assert_eq!(a, b);
    }

    #[test]
    fn combine_checks_signs() {
        assert!(matches!(
            combine(&qv(&[1, 0]), &qv(&[0, 1]), &lf(&[1, -1])),
            Err(Error::SignPrecondition(_))
        ));
    }

    #[test]
    fn adjacency_vacuous_without_third_ray() {
        let rays = vec![qv(&[1, 0]), qv(&[0, 1])];
        let processed = vec![lf(&[-1, 0]), lf(&[0, -1])];
        assert!(
            adjacent_combinatorial(&rays[0], &rays[1], &rays, &processed).unwrap()
        );
    }

    #[test]
    fn adjacency_third_ray_misses_tight_set() {
        let rays = vec![qv(&[1, 0, 0]), qv(&[0, 1, 0]), qv(&[0, 0, 1])];
        let processed = vec![lf(&[-1, 0, 0]), lf(&[0, -1, 0]), lf(&[0, 0, -1])];
        // pair (e1, e2): tight set {-x3}, and l_3(e3) = -1 != 0
        assert!(
            adjacent_combinatorial(&rays[0], &rays[1], &rays, &processed).unwrap()
        );
    }

    fn square_cone() -> (Vec<QVector>, Vec<LinearForm>) {
        let rays = vec![
            qv(&[1, 1, 1]),
            qv(&[1, -1, 1]),
            qv(&[-1, 1, 1]),
            qv(&[-1, -1, 1]),
        ];
        let processed = vec![
            lf(&[1, 0, -1]),
            lf(&[-1, 0, -1]),
            lf(&[0, 1, -1]),
            lf(&[0, -1, -1]),
        ];
        (rays, processed)
    }

    #[test]
    fn adjacency_rejects_opposite_square_rays() {
        let (rays, processed) = square_cone();
        // opposite corners share no facet: empty tight set, third rays exist
        assert!(
            !adjacent_combinatorial(&rays[0], &rays[3], &rays, &processed).unwrap()
        );
    }

    #[test]
    fn rank_adjacency_shared_facet() {
        let (rays, processed) = square_cone();
        assert!(adjacent_rank(&rays[0], &rays[1], &processed, 3).unwrap());
    }

    #[test]
    fn rank_adjacency_opposite_rays() {
        let (rays, processed) = square_cone();
        assert!(!adjacent_rank(&rays[0], &rays[3], &processed, 3).unwrap());
    }

    #[test]
    fn rank_adjacency_vacuous_at_low_rank() {
        let (rays, processed) = square_cone();
        assert!(adjacent_rank(&rays[0], &rays[3], &processed, 2).unwrap());
    }

    #[test]
    fn mb_step_first_branch() {
        let cone = ConeDescription::whole_space(2);
        let tableau = EvalTableau::empty();
        let (next, _) =
            mb_step(&cone, &[], &lf(&[1, 0]), &tableau, AdjacencyTest::Combinatorial).unwrap();
        assert_eq!(next.lineality_basis(), &[qv(&[0, 1])]);
        assert_eq!(next.rays(), &[qv(&[-1, 0])]);
    }

    #[test]
    fn mb_step_second_branch_combines_pair() {
        let cone = ConeDescription::new(2, vec![], vec![qv(&[0, 1]), qv(&[1, 0])]).unwrap();
        let processed = vec![lf(&[-1, 0]), lf(&[0, -1])];
        let tableau = EvalTableau::build(&processed, cone.rays()).unwrap();
        let (next, next_tab) = mb_step(
            &cone,
            &processed,
            &lf(&[1, -1]),
            &tableau,
            AdjacencyTest::Combinatorial,
        )
        .unwrap();
        assert!(next.lineality_basis().is_empty());
        assert_eq!(next.rays(), &[qv(&[0, 1]), qv(&[1, 1])]);
        assert_eq!(next_tab.form_count(), 3);
        assert_eq!(next_tab.ray_count(), 2);
    }

    #[test]
    fn mb_step_zero_form_is_identity() {
        let rays = vec![qv(&[1, 0, 0]), qv(&[0, 1, 0]), qv(&[0, 0, 1])];
        let mut sorted = rays.clone();
        sorted.sort();
        let cone = ConeDescription::new(3, vec![], sorted.clone()).unwrap();
        let processed = vec![lf(&[-1, 0, 0]), lf(&[0, -1, 0]), lf(&[0, 0, -1])];
        let tableau = EvalTableau::build(&processed, cone.rays()).unwrap();
        let (next, _) = mb_step(
            &cone,
            &processed,
            &lf(&[0, 0, 0]),
            &tableau,
            AdjacencyTest::Combinatorial,
        )
        .unwrap();
        assert_eq!(next.rays(), sorted.as_slice());
        assert!(next.lineality_basis().is_empty());
    }

    #[test]
    fn mb_step_dimension_mismatch() {
        let cone = ConeDescription::whole_space(2);
        assert!(matches!(
            mb_step(
                &cone,
                &[],
                &lf(&[1, 0, 0]),
                &EvalTableau::empty(),
                AdjacencyTest::Combinatorial
            ),
            Err(Error::DimensionMismatch { .. })
        ));
    }

    #[test]
    fn mb_step_preserves_prior_forms() {
        // fold the square cone system and check feasibility after each step
        let system = InequalitySystem::from_rows(
            3,
            &[&[1, 0, -1], &[-1, 0, -1], &[0, 1, -1], &[0, -1, -1]],
        );
        let mut cone = ConeDescription::whole_space(3);
        let mut tableau = EvalTableau::empty();
        let mut processed: Vec<LinearForm> = Vec::new();
        for l in system.forms() {
            let (next, next_tab) =
                mb_step(&cone, &processed, l, &tableau, AdjacencyTest::Combinatorial).unwrap();
            processed.push(l.clone());
            cone = next;
            tableau = next_tab;
            for form in &processed {
                for u in cone.lineality_basis() {
                    assert!(evaluate(form, u).unwrap().is_zero());
                }
                for v in cone.rays() {
                    assert!(evaluate(form, v).unwrap() <= Rational::zero());
                }
            }
        }
        assert_eq!(cone.rays().len(), 4);
        assert!(cone.lineality_basis().is_empty());
    }
}
