//! Seeded random systems with a prescribed rank: `r` independent rows with
//! small integer coefficients, `m - r` random integer combinations of them,
//! and a final seeded shuffle of the row order.

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::error::{Error, Result};
use crate::exact::{rank, rat, InequalitySystem, LinearForm, QVector};

pub fn random_system(
    n: usize,
    m: usize,
    r: usize,
    coeff_bound: i64,
    seed: u64,
) -> Result<InequalitySystem> {
    if r < 1 || r > n.min(m) {
        return Err(Error::InvalidParameters(format!(
            "need 1 <= r <= min(n, m), got n = {n}, m = {m}, r = {r}"
        )));
    }
    if coeff_bound < 1 {
        return Err(Error::InvalidParameters(format!(
            "coefficient bound must be >= 1, got {coeff_bound}"
        )));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let draw = move |rng: &mut ChaCha8Rng| rng.gen_range(-coeff_bound..=coeff_bound);

    let base: Vec<QVector> = loop {
        let candidate: Vec<QVector> = (0..r)
            .map(|_| QVector::new((0..n).map(|_| rat(draw(&mut rng))).collect()))
            .collect();
        if rank(&candidate)? == r {
            break candidate;
        }
    };

    let mut rows = base.clone();
    for _ in r..m {
        let mut combo = QVector::zeros(n);
        for row in &base {
            let k = rat(draw(&mut rng));
            combo = QVector::linear_combination(&rat(1), &combo, &k, row)?;
        }
        rows.push(combo);
    }
    rows.shuffle(&mut rng);

    let forms = rows.into_iter().map(LinearForm::new).collect();
    InequalitySystem::new(n, forms)
}
