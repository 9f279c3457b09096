//! Top-level drivers: the direct iteration over the input forms, and the
//! preprocessed pipeline that strips unused variables, changes variables to
//! kill the lineality space, runs the reduced iteration and maps back.

use crate::error::{Error, Result};
use crate::exact::{InequalitySystem, LinearForm, QVector};
use crate::mb::{mb_step, AdjacencyTest, ConeDescription, EvalTableau};
use crate::reduce::{back_substitute, change_of_variables, strip_unused_variables};

/// Folds the Motzkin-Burger step over the forms in system order, starting
/// from the whole space.
pub fn solve_direct(system: &InequalitySystem) -> Result<ConeDescription> {
    solve_direct_with(system, AdjacencyTest::default())
}

pub fn solve_direct_with(
    system: &InequalitySystem,
    adjacency: AdjacencyTest,
) -> Result<ConeDescription> {
    let mut cone = ConeDescription::whole_space(system.dimension());
    let mut tableau = EvalTableau::empty();
    let mut processed: Vec<LinearForm> = Vec::new();
    for l in system.forms() {
        let (next, next_tab) = mb_step(&cone, &processed, l, &tableau, adjacency)?;
        processed.push(l.clone());
        cone = next;
        tableau = next_tab;
    }
    Ok(cone)
}

/// Computes the generator description of the solution cone. With `as_is`
/// the system is solved directly; otherwise unused variables are stripped,
/// the change of variables reduces the iteration to rank many coordinates
/// starting from `U = {}` and `V = E_r`, and the result is mapped back.
pub fn conehull(system: &InequalitySystem, as_is: bool) -> Result<ConeDescription> {
    conehull_with(system, as_is, AdjacencyTest::default())
}

pub fn conehull_with(
    system: &InequalitySystem,
    as_is: bool,
    adjacency: AdjacencyTest,
) -> Result<ConeDescription> {
    if as_is {
        return solve_direct_with(system, adjacency);
    }
    let n = system.dimension();
    if system.rank() == 0 {
        // all-zero system: the whole space solves it
        return Ok(ConeDescription::whole_space(n));
    }
    let (stripped, bad) = strip_unused_variables(system);
    let (reduced, sub) = change_of_variables(&stripped)?;
    let r = sub.rank;

    // reduced start: the effaced Base rows become -y_i <= 0 with the known
    // solution V = E_r and empty lineality
    let mut rays = QVector::standard_basis(r);
    rays.sort();
    let mut cone = ConeDescription::new(r, Vec::new(), rays)?;
    let mut processed: Vec<LinearForm> = (0..r)
        .map(|i| LinearForm::new(QVector::unit(r, i).negated()))
        .collect();
    let mut tableau = EvalTableau::build(&processed, cone.rays())?;

    for l in reduced.forms() {
        let (next, next_tab) = mb_step(&cone, &processed, l, &tableau, adjacency)?;
        if !next.lineality_basis().is_empty() {
            return Err(Error::Internal(
                "reduced iteration grew a lineality basis".into(),
            ));
        }
        processed.push(l.clone());
        cone = next;
        tableau = next_tab;
    }

    back_substitute(&cone, &sub, &bad, n)
}
