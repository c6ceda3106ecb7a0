use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use super::Cage;
use crate::error::{Error, Result};
use crate::field::{Field, FieldElement};
use crate::poly::LinearForm;

/// Random coefficients are integers in `[-RANDOM_COEFF_BOUND, RANDOM_COEFF_BOUND]`.
pub const RANDOM_COEFF_BOUND: i64 = 5;
pub const RANDOM_MAX_ATTEMPTS: usize = 1000;

/// Axis-parallel cage of `d` points in affine `n`-space: color `j` holds the
/// hyperplanes `x_j = z_j(q_i)`, homogenized by the last coordinate.
pub fn axis_cage(field: &Field, points: &[Vec<FieldElement>]) -> Result<Cage> {
    let d = points.len();
    let n = points
        .first()
        .map(Vec::len)
        .ok_or_else(|| Error::NotInGeneralPosition("empty configuration".into()))?;
    if n == 0 || points.iter().any(|p| p.len() != n) {
        return Err(Error::Shape("points must share a positive dimension".into()));
    }
    let mut groups = Vec::with_capacity(n);
    for j in 0..n {
        let values: Vec<&FieldElement> = points.iter().map(|p| &p[j]).collect();
        for a in 0..d {
            for b in a + 1..d {
                if values[a] == values[b] {
                    return Err(Error::NotInGeneralPosition(format!(
                        "coordinate {} repeats the value {} (points {} and {})",
                        j + 1,
                        values[a],
                        a + 1,
                        b + 1
                    )));
                }
            }
        }
        let group = values
            .iter()
            .map(|&v| {
                let mut coeffs = vec![field.zero(); n + 1];
                coeffs[j] = field.one();
                coeffs[n] = -v;
                LinearForm::new(coeffs)
            })
            .collect::<Result<Vec<_>>>()?;
        groups.push(group);
    }
    Cage::new_validated(field, groups)
}

/// A seeded random cage and the number of samples it took.
#[derive(Clone, Debug)]
pub struct RandomCage {
    pub cage: Cage,
    pub attempts: usize,
}

/// Samples whole cages with small integer coefficients until one validates.
pub fn random_cage(seed: u64, d: usize, n: usize, field: &Field) -> Result<RandomCage> {
    if d == 0 || n == 0 {
        return Err(Error::Shape("random cage needs d >= 1 and n >= 1".into()));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    for attempt in 1..=RANDOM_MAX_ATTEMPTS {
        let groups = (0..n)
            .map(|_| (0..d).map(|_| random_form(&mut rng, n + 1, field)).collect())
            .collect();
        let mut cage = Cage::new(field, groups)?;
        if cage.validate().is_valid() {
            return Ok(RandomCage {
                cage,
                attempts: attempt,
            });
        }
    }
    Err(Error::MaxAttemptsExceeded {
        attempts: RANDOM_MAX_ATTEMPTS,
    })
}

fn random_form(rng: &mut ChaCha8Rng, vars: usize, field: &Field) -> LinearForm {
    loop {
        let coeffs: Vec<i64> = (0..vars)
            .map(|_| rng.gen_range(-RANDOM_COEFF_BOUND..=RANDOM_COEFF_BOUND))
            .collect();
        if let Ok(form) = LinearForm::from_ints(field, &coeffs) {
            return form;
        }
    }
}
