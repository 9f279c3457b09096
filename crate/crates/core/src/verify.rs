//! Correctness tooling: the solution checker, a brute-force enumeration
//! oracle for small instances, and exact cone equality.

use std::collections::BTreeSet;

use num_traits::Zero;

use crate::error::{Error, Result};
use crate::exact::{
    canonicalize_ray, evaluate, null_space, rank, InequalitySystem, QVector, Rational, Rref,
};
use crate::mb::ConeDescription;

pub const ORACLE_MAX_DIMENSION: usize = 6;
pub const ORACLE_MAX_FORMS: usize = 10;

/// Split of candidate vectors into true solutions and violators, each
/// violator carrying the first form it breaks.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CheckReport {
    pub valid: Vec<QVector>,
    pub invalid: Vec<(QVector, usize)>,
}

/// A candidate is valid iff every form evaluates to at most zero on it.
pub fn check_solutions(
    system: &InequalitySystem,
    candidates: &[QVector],
) -> Result<CheckReport> {
    let mut valid = Vec::new();
    let mut invalid = Vec::new();
    for candidate in candidates {
        let mut witness = None;
        for (j, form) in system.forms().iter().enumerate() {
            if evaluate(form, candidate)? > Rational::zero() {
                witness = Some(j);
                break;
            }
        }
        match witness {
            None => valid.push(candidate.clone()),
            Some(j) => invalid.push((candidate.clone(), j)),
        }
    }
    Ok(CheckReport { valid, invalid })
}

/// Brute-force generator enumeration over all subsets of form indices.
/// Independent of the iterative solver; intended for desk-size instances.
pub fn oracle_enumerate(system: &InequalitySystem) -> Result<ConeDescription> {
    oracle_enumerate_with_limits(system, ORACLE_MAX_DIMENSION, ORACLE_MAX_FORMS)
}

pub fn oracle_enumerate_with_limits(
    system: &InequalitySystem,
    max_n: usize,
    max_m: usize,
) -> Result<ConeDescription> {
    let n = system.dimension();
    let m = system.len();
    if n > max_n || m > max_m {
        return Err(Error::OracleLimit {
            n,
            m,
            max_n,
            max_m,
        });
    }

    let all_rows: Vec<QVector> = system
        .forms()
        .iter()
        .map(|f| f.coefficients().clone())
        .collect();
    let lineality = null_space(&all_rows, n)?;
    let lineality_rref = Rref::from_rows_iter(n, lineality.iter())?;
    let target_dim = lineality.len() + 1;

    let mut rays: BTreeSet<QVector> = BTreeSet::new();
    for mask in 0u32..(1u32 << m) {
        let subset: Vec<QVector> = (0..m)
            .filter(|j| mask & (1 << j) != 0)
            .map(|j| all_rows[j].clone())
            .collect();
        let basis = null_space(&subset, n)?;
        if basis.len() != target_dim {
            continue;
        }
        // direction transverse to the lineality space
        let mut transverse = None;
        for b in &basis {
            let reduced = lineality_rref.reduce(b);
            if !reduced.is_zero() {
                transverse = Some(reduced);
                break;
            }
        }
        let Some(w) = transverse else { continue };
        let oriented = if satisfies_all(system, &w)? {
            w
        } else {
            let neg = w.negated();
            if satisfies_all(system, &neg)? {
                neg
            } else {
                continue;
            }
        };
        rays.insert(canonicalize_ray(&oriented)?);
    }

    // drop rays whose tight set is contained in a distinct ray's tight set
    let rays: Vec<QVector> = rays.into_iter().collect();
    let tight_masks: Vec<u32> = rays
        .iter()
        .map(|v| {
            let mut mask = 0u32;
            for (j, form) in system.forms().iter().enumerate() {
                if evaluate(form, v)?.is_zero() {
                    mask |= 1 << j;
                }
            }
            Ok(mask)
        })
        .collect::<Result<Vec<_>>>()?;
    let extreme: Vec<QVector> = rays
        .iter()
        .enumerate()
        .filter(|&(i, _)| {
            !tight_masks
                .iter()
                .enumerate()
                .any(|(j, &other)| j != i && tight_masks[i] & other == tight_masks[i])
        })
        .map(|(_, v)| v.clone())
        .collect();

    ConeDescription::new(n, lineality, extreme)
}

fn satisfies_all(system: &InequalitySystem, v: &QVector) -> Result<bool> {
    for form in system.forms() {
        if evaluate(form, v)? > Rational::zero() {
            return Ok(false);
        }
    }
    Ok(true)
}

/// Exact cone equality: same lineality row space and same ray set once the
/// rays are reduced modulo the shared lineality basis.
pub fn cones_equal(
    a: &ConeDescription,
    b: &ConeDescription,
    system: &InequalitySystem,
) -> Result<bool> {
    let n = system.dimension();
    if a.dimension() != n || b.dimension() != n {
        return Err(Error::DimensionMismatch {
            expected: n,
            got: if a.dimension() != n {
                a.dimension()
            } else {
                b.dimension()
            },
        });
    }
    let ra = rank(a.lineality_basis())?;
    let rb = rank(b.lineality_basis())?;
    let joined: Vec<QVector> = a
        .lineality_basis()
        .iter()
        .chain(b.lineality_basis())
        .cloned()
        .collect();
    if ra != rb || rank(&joined)? != ra {
        return Ok(false);
    }

    let rref = Rref::from_rows_iter(n, a.lineality_basis().iter())?;
    let reduce_set = |rays: &[QVector]| -> Result<BTreeSet<QVector>> {
        let mut out = BTreeSet::new();
        for v in rays {
            let reduced = rref.reduce(v);
            if reduced.is_zero() {
                out.insert(reduced);
            } else {
                out.insert(canonicalize_ray(&reduced)?);
            }
        }
        Ok(out)
    };
    Ok(reduce_set(a.rays())? == reduce_set(b.rays())?)
}
