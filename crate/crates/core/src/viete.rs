//! Elementary symmetric (Viète) map and cages in coefficient space.
//!
//! A coefficient point `e = (e_1, ..., e_n)` stands for the monic polynomial
//! `x^n - e_1 x^{n-1} + e_2 x^{n-2} - ... + (-1)^n e_n`. Coefficient space is
//! homogenized by a last coordinate, as everywhere else.

use crate::cage::Cage;
use crate::error::{Error, Result};
use crate::field::{Field, FieldElement};
use crate::poly::LinearForm;

/// `d` points of affine `n`-space with pairwise distinct values in every coordinate.
#[derive(Clone, Debug, PartialEq)]
pub struct Configuration {
    field: Field,
    points: Vec<Vec<FieldElement>>,
}

impl Configuration {
    pub fn new(field: &Field, points: Vec<Vec<FieldElement>>) -> Result<Self> {
        let n = points
            .first()
            .map(Vec::len)
            .ok_or_else(|| Error::InvalidConfiguration("no points".into()))?;
        if n == 0 || points.iter().any(|p| p.len() != n) {
            return Err(Error::InvalidConfiguration("points must share a positive dimension".into()));
        }
        if points.iter().flatten().any(|x| x.field() != field) {
            return Err(Error::FieldMismatch);
        }
        for j in 0..n {
            for a in 0..points.len() {
                for b in a + 1..points.len() {
                    if points[a][j] == points[b][j] {
                        return Err(Error::InvalidConfiguration(format!(
                            "points {} and {} share coordinate {} = {}",
                            a + 1,
                            b + 1,
                            j + 1,
                            points[a][j]
                        )));
                    }
                }
            }
        }
        Ok(Configuration {
            field: field.clone(),
            points,
        })
    }

    pub fn field(&self) -> &Field {
        &self.field
    }

    pub fn points(&self) -> &[Vec<FieldElement>] {
        &self.points
    }

    pub fn n(&self) -> usize {
        self.points[0].len()
    }

    pub fn d(&self) -> usize {
        self.points.len()
    }
}

/// Signed coefficients `(e_1, ..., e_n)` of a monic polynomial.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CoefficientPoint(pub Vec<FieldElement>);

impl CoefficientPoint {
    pub fn coords(&self) -> &[FieldElement] {
        &self.0
    }

    /// Value at `c` of the monic polynomial.
    pub fn evaluate_monic(&self, c: &FieldElement) -> FieldElement {
        // Horner on x^n - e_1 x^{n-1} + ... with alternating signs
        let mut acc = c.field().one();
        for (k, e) in self.0.iter().enumerate() {
            let term = if k % 2 == 0 { -e } else { e.clone() };
            acc = &(&acc * c) + &term;
        }
        acc
    }

    /// Projective representative `(e_1, ..., e_n, 1)`.
    pub fn homogeneous(&self, field: &Field) -> Vec<FieldElement> {
        let mut out = self.0.clone();
        out.push(field.one());
        out
    }
}

/// `e_k` = `k`-th elementary symmetric function of `values`.
pub fn elementary_symmetric(field: &Field, values: &[FieldElement]) -> CoefficientPoint {
    let mut e = vec![field.one()];
    for x in values {
        e.push(field.zero());
        for k in (1..e.len()).rev() {
            let add = &e[k - 1] * x;
            e[k] = &e[k] + &add;
        }
    }
    CoefficientPoint(e.split_off(1))
}

/// The Viète map on an affine point.
pub fn viete_image(field: &Field, z: &[FieldElement]) -> CoefficientPoint {
    elementary_symmetric(field, z)
}

/// Homogenized form `c^n z - c^{n-1} w_1 + c^{n-2} w_2 - ... + (-1)^n w_n` on
/// coefficient space; a coefficient point lies on it iff `c` is a root.
pub fn root_hyperplane(c: &FieldElement, n: usize) -> Result<LinearForm> {
    let mut coeffs = Vec::with_capacity(n + 1);
    for k in 1..=n {
        let power = c.pow((n - k) as u32);
        coeffs.push(if k % 2 == 1 { -power } else { power });
    }
    coeffs.push(c.pow(n as u32));
    LinearForm::new(coeffs)
}

/// Cage whose color `j` holds the root hyperplanes of the `j`-th coordinates.
/// Validation failures (possible when values repeat across colors) are errors.
pub fn coefficient_cage(config: &Configuration) -> Result<Cage> {
    let n = config.n();
    let groups = (0..n)
        .map(|j| {
            config
                .points()
                .iter()
                .map(|p| root_hyperplane(&p[j], n))
                .collect::<Result<Vec<_>>>()
        })
        .collect::<Result<Vec<_>>>()?;
    Cage::new_validated(config.field(), groups)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::cage::{axis_cage, canonical_representative};
    use proptest::prelude::*;

    fn q() -> Field {
        Field::rationals()
    }

    fn v(values: &[i64]) -> Vec<FieldElement> {
        values.iter().map(|&x| q().from_int(x)).collect()
    }

    #[test]
    fn symmetric_examples() {
        assert_eq!(elementary_symmetric(&q(), &v(&[1, 2])).0, v(&[3, 2]));
        assert_eq!(elementary_symmetric(&q(), &v(&[1, 1, 1])).0, v(&[3, 3, 1]));
        assert_eq!(elementary_symmetric(&q(), &v(&[0, 0, 0, 0])).0, v(&[0, 0, 0, 0]));
        assert_eq!(viete_image(&q(), &v(&[2, 1])), viete_image(&q(), &v(&[1, 2])));
    }

    #[test]
    fn root_hyperplane_examples() {
        let e = CoefficientPoint(v(&[3, 2]));
        let one = root_hyperplane(&q().one(), 2).unwrap();
        assert_eq!(one.coeffs(), v(&[-1, 1, 1]).as_slice());
        assert!(one.evaluate(&e.homogeneous(&q())).unwrap().is_zero());
        let five = root_hyperplane(&q().from_int(5), 2).unwrap();
        assert_eq!(five.evaluate(&e.homogeneous(&q())).unwrap(), q().from_int(12));
        assert_eq!(e.evaluate_monic(&q().from_int(5)), q().from_int(12));
    }

    #[test]
    fn coefficient_cage_example() {
        let config = Configuration::new(&q(), vec![v(&[1, 3]), v(&[2, 4])]).unwrap();
        let cage = coefficient_cage(&config).unwrap();
        let node = cage.node(&"1,2".parse().unwrap()).unwrap();
        assert_eq!(node.point(), v(&[5, 4, 1]).as_slice());
        assert!(Configuration::new(&q(), vec![v(&[1, 3]), v(&[1, 4])]).is_err());
        // a value shared across colors collapses two hyperplanes
        let shared = Configuration::new(&q(), vec![v(&[1, 2]), v(&[2, 3])]).unwrap();
        assert!(matches!(coefficient_cage(&shared), Err(Error::InvalidCage(_))));
    }

    #[test]
    fn commuting_diagram_small() {
        let config = Configuration::new(&q(), vec![v(&[0, 5, -3]), v(&[1, 7, 9]), v(&[-2, 4, 11])]).unwrap();
        let axis = axis_cage(&q(), config.points()).unwrap();
        let sigma = coefficient_cage(&config).unwrap();
        for (a, b) in axis.nodes().unwrap().iter().zip(sigma.nodes().unwrap()) {
            assert_eq!(a.index(), b.index());
            let image = viete_image(&q(), &a.affine_coords()).homogeneous(&q());
            assert_eq!(canonical_representative(&image).unwrap(), b.point());
            assert!(b.point().iter().all(FieldElement::is_integral));
        }
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(500))]
        #[test]
        fn membership_iff_root(
            c in -6i64..=6,
            roots in proptest::collection::vec(-6i64..=6, 1..5),
        ) {
            let e = elementary_symmetric(&q(), &v(&roots));
            let n = roots.len();
            let form = root_hyperplane(&q().from_int(c), n).unwrap();
            let on = form.evaluate(&e.homogeneous(&q())).unwrap().is_zero();
            prop_assert_eq!(on, roots.contains(&c));
            // direct product of (c - r) as an independent evaluation
            let direct = roots.iter().fold(q().one(), |acc, &r| &acc * &q().from_int(c - r));
            prop_assert_eq!(e.evaluate_monic(&q().from_int(c)), direct);
        }
    }
}
