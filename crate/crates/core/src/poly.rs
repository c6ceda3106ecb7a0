//! Sparse homogeneous polynomials in `n + 1` variables.
//!
//! Monomials of a fixed degree are ordered lexicographically with the first
//! variable highest (`x0^d` comes first). This order is global: every matrix
//! column indexed by monomials follows [`monomial_basis`].
//!
//! The last variable plays the role of the homogenizing coordinate in
//! [`homogenize`], so the affine chart `x_n = 1` is the default chart.

use std::cmp::Ordering;
use std::collections::BTreeMap;
use std::fmt;

use crate::error::{Error, Result};
use crate::field::{Field, FieldElement};
use crate::linalg::Matrix;

/// Exponent vector of a monomial.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Monomial(Vec<u32>);

impl Monomial {
    pub fn new(exponents: Vec<u32>) -> Self {
        Monomial(exponents)
    }

    pub fn exponents(&self) -> &[u32] {
        &self.0
    }

    pub fn degree(&self) -> u32 {
        self.0.iter().sum()
    }

    pub fn num_vars(&self) -> usize {
        self.0.len()
    }

    /// Value at `point` using a table `powers[var][e] = point[var]^e`.
    fn eval_with(&self, powers: &[Vec<FieldElement>]) -> FieldElement {
        let mut acc: Option<FieldElement> = None;
        for (var, &e) in self.0.iter().enumerate() {
            if e == 0 {
                continue;
            }
            let p = &powers[var][e as usize];
            acc = Some(match acc {
                None => p.clone(),
                Some(a) => &a * p,
            });
        }
        acc.unwrap_or_else(|| powers[0][0].clone())
    }

    pub fn evaluate(&self, point: &[FieldElement]) -> FieldElement {
        let powers = power_table(point, self.degree());
        self.eval_with(&powers)
    }
}

impl Ord for Monomial {
    fn cmp(&self, other: &Self) -> Ordering {
        self.degree()
            .cmp(&other.degree())
            .then_with(|| other.0.cmp(&self.0))
    }
}

impl PartialOrd for Monomial {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

pub(crate) fn power_table(point: &[FieldElement], max_degree: u32) -> Vec<Vec<FieldElement>> {
    point
        .iter()
        .map(|x| {
            let mut row = Vec::with_capacity(max_degree as usize + 1);
            row.push(x.field().one());
            for e in 1..=max_degree as usize {
                let next = &row[e - 1] * x;
                row.push(next);
            }
            row
        })
        .collect()
}

/// Binomial coefficient `C(n, k)`.
pub fn binomial(n: usize, k: usize) -> usize {
    if k > n {
        return 0;
    }
    let k = k.min(n - k);
    (0..k).fold(1usize, |acc, i| acc * (n - i) / (i + 1))
}

/// All monomials of total degree `degree` in `vars` variables, in the global
/// order. There are `C(degree + vars - 1, vars - 1)` of them.
pub fn monomial_basis(degree: u32, vars: usize) -> Vec<Monomial> {
    fn fill(prefix: &mut Vec<u32>, remaining: u32, vars_left: usize, out: &mut Vec<Monomial>) {
        if vars_left == 1 {
            prefix.push(remaining);
            out.push(Monomial(prefix.clone()));
            prefix.pop();
            return;
        }
        for e in (0..=remaining).rev() {
            prefix.push(e);
            fill(prefix, remaining - e, vars_left - 1, out);
            prefix.pop();
        }
    }
    let mut out = Vec::with_capacity(binomial(degree as usize + vars - 1, vars - 1));
    if vars > 0 {
        fill(&mut Vec::with_capacity(vars), degree, vars, &mut out);
    }
    out
}

fn check_point(point: &[FieldElement], vars: usize) -> Result<()> {
    if point.len() != vars {
        return Err(Error::Shape(format!(
            "point has {} coordinates, expected {vars}",
            point.len()
        )));
    }
    if point.iter().all(FieldElement::is_zero) {
        return Err(Error::InvalidPoint);
    }
    Ok(())
}

/// A homogeneous polynomial with a declared degree. The zero polynomial is
/// allowed and keeps its declared degree.
#[derive(Clone, Debug, PartialEq)]
pub struct HomogPoly {
    num_vars: usize,
    degree: u32,
    terms: BTreeMap<Monomial, FieldElement>,
    field: Field,
}

impl HomogPoly {
    pub fn zero(field: &Field, num_vars: usize, degree: u32) -> Self {
        HomogPoly {
            num_vars,
            degree,
            terms: BTreeMap::new(),
            field: field.clone(),
        }
    }

    /// Collects terms, summing repeated monomials and dropping zeros.
    pub fn from_terms(
        field: &Field,
        num_vars: usize,
        degree: u32,
        terms: impl IntoIterator<Item = (Monomial, FieldElement)>,
    ) -> Result<Self> {
        let mut p = HomogPoly::zero(field, num_vars, degree);
        for (m, c) in terms {
            if m.num_vars() != num_vars {
                return Err(Error::Shape(format!(
                    "monomial in {} variables, expected {num_vars}",
                    m.num_vars()
                )));
            }
            if m.degree() != degree {
                return Err(Error::NotHomogeneous(degree));
            }
            if c.field() != field {
                return Err(Error::FieldMismatch);
            }
            p.add_term(m, c);
        }
        Ok(p)
    }

    fn add_term(&mut self, m: Monomial, c: FieldElement) {
        if c.is_zero() {
            return;
        }
        match self.terms.entry(m) {
            std::collections::btree_map::Entry::Vacant(e) => {
                e.insert(c);
            }
            std::collections::btree_map::Entry::Occupied(mut e) => {
                let sum = e.get() + &c;
                if sum.is_zero() {
                    e.remove();
                } else {
                    *e.get_mut() = sum;
                }
            }
        }
    }

    pub fn num_vars(&self) -> usize {
        self.num_vars
    }

    pub fn degree(&self) -> u32 {
        self.degree
    }

    pub fn field(&self) -> &Field {
        &self.field
    }

    pub fn terms(&self) -> &BTreeMap<Monomial, FieldElement> {
        &self.terms
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn coefficient(&self, m: &Monomial) -> FieldElement {
        self.terms.get(m).cloned().unwrap_or_else(|| self.field.zero())
    }

    fn check_compatible(&self, other: &HomogPoly) -> Result<()> {
        if self.field != other.field {
            return Err(Error::FieldMismatch);
        }
        if self.num_vars != other.num_vars || self.degree != other.degree {
            return Err(Error::Shape(format!(
                "cannot add degree-{} poly in {} vars to degree-{} poly in {} vars",
                self.degree, self.num_vars, other.degree, other.num_vars
            )));
        }
        Ok(())
    }

    pub fn add(&self, other: &HomogPoly) -> Result<HomogPoly> {
        self.check_compatible(other)?;
        let mut out = self.clone();
        for (m, c) in &other.terms {
            out.add_term(m.clone(), c.clone());
        }
        Ok(out)
    }

    pub fn sub(&self, other: &HomogPoly) -> Result<HomogPoly> {
        self.add(&other.scale(&-other.field.one()))
    }

    pub fn scale(&self, c: &FieldElement) -> HomogPoly {
        let mut out = HomogPoly::zero(&self.field, self.num_vars, self.degree);
        if c.is_zero() {
            return out;
        }
        for (m, a) in &self.terms {
            out.terms.insert(m.clone(), a * c);
        }
        out
    }

    pub fn mul(&self, other: &HomogPoly) -> Result<HomogPoly> {
        if self.field != other.field {
            return Err(Error::FieldMismatch);
        }
        if self.num_vars != other.num_vars {
            return Err(Error::Shape("variable count mismatch".into()));
        }
        let mut out = HomogPoly::zero(&self.field, self.num_vars, self.degree + other.degree);
        for (ma, ca) in &self.terms {
            for (mb, cb) in &other.terms {
                let exps = ma.0.iter().zip(&mb.0).map(|(a, b)| a + b).collect();
                out.add_term(Monomial(exps), ca * cb);
            }
        }
        Ok(out)
    }

    /// Linear combination `sum_k coeffs[k] * polys[k]`.
    pub fn linear_combination(coeffs: &[FieldElement], polys: &[HomogPoly]) -> Result<HomogPoly> {
        let first = polys
            .first()
            .ok_or_else(|| Error::Shape("empty linear combination".into()))?;
        if coeffs.len() != polys.len() {
            return Err(Error::Shape(format!(
                "{} coefficients for {} polynomials",
                coeffs.len(),
                polys.len()
            )));
        }
        let mut acc = HomogPoly::zero(&first.field, first.num_vars, first.degree);
        for (c, p) in coeffs.iter().zip(polys) {
            acc = acc.add(&p.scale(c))?;
        }
        Ok(acc)
    }

    /// Value at the given representative of a projective point.
    pub fn evaluate(&self, point: &[FieldElement]) -> Result<FieldElement> {
        check_point(point, self.num_vars)?;
        if point.iter().any(|x| x.field() != &self.field) {
            return Err(Error::FieldMismatch);
        }
        let powers = power_table(point, self.degree);
        let mut acc = self.field.zero();
        for (m, c) in &self.terms {
            acc = &acc + &(c * &m.eval_with(&powers));
        }
        Ok(acc)
    }

    /// Partial derivative with respect to variable `var`.
    pub fn partial(&self, var: usize) -> HomogPoly {
        let mut out = HomogPoly::zero(&self.field, self.num_vars, self.degree.saturating_sub(1));
        for (m, c) in &self.terms {
            let e = m.0[var];
            if e == 0 {
                continue;
            }
            let mut exps = m.0.clone();
            exps[var] -= 1;
            out.add_term(Monomial(exps), c.scale(&crate::field::int(e as i64)));
        }
        out
    }

    /// Gradient `(∂_0 P, ..., ∂_n P)` at the point.
    pub fn gradient_at(&self, point: &[FieldElement]) -> Result<Vec<FieldElement>> {
        check_point(point, self.num_vars)?;
        if self.degree == 0 {
            return Ok(vec![self.field.zero(); self.num_vars]);
        }
        (0..self.num_vars)
            .map(|v| self.partial(v).evaluate(point))
            .collect()
    }

    /// Coefficients in the order of `monomial_basis(degree, num_vars)`.
    pub fn coefficient_vector(&self) -> Vec<FieldElement> {
        monomial_basis(self.degree, self.num_vars)
            .iter()
            .map(|m| self.coefficient(m))
            .collect()
    }

    pub fn from_coefficient_vector(
        field: &Field,
        num_vars: usize,
        degree: u32,
        coeffs: &[FieldElement],
    ) -> Result<HomogPoly> {
        let basis = monomial_basis(degree, num_vars);
        if basis.len() != coeffs.len() {
            return Err(Error::Shape(format!(
                "{} coefficients for {} monomials",
                coeffs.len(),
                basis.len()
            )));
        }
        HomogPoly::from_terms(field, num_vars, degree, basis.into_iter().zip(coeffs.iter().cloned()))
    }

    /// Divides every coefficient by the first nonzero one (in monomial order).
    pub fn monic(&self) -> HomogPoly {
        match self.terms.values().next() {
            Some(lead) => self.scale(&lead.inverse().expect("nonzero")),
            None => self.clone(),
        }
    }
}

impl fmt::Display for HomogPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        for (i, (m, c)) in self.terms.iter().enumerate() {
            if i > 0 {
                write!(f, " + ")?;
            }
            write!(f, "({c})")?;
            for (v, &e) in m.0.iter().enumerate() {
                match e {
                    0 => {}
                    1 => write!(f, "*x{v}")?,
                    _ => write!(f, "*x{v}^{e}")?,
                }
            }
        }
        Ok(())
    }
}

/// A nonzero linear form `sum_k c_k x_k`.
#[derive(Clone, Debug, PartialEq)]
pub struct LinearForm {
    coeffs: Vec<FieldElement>,
}

impl LinearForm {
    pub fn new(coeffs: Vec<FieldElement>) -> Result<Self> {
        let Some(first) = coeffs.first() else {
            return Err(Error::Shape("linear form with no coefficients".into()));
        };
        if coeffs.iter().any(|c| c.field() != first.field()) {
            return Err(Error::FieldMismatch);
        }
        if coeffs.iter().all(FieldElement::is_zero) {
            return Err(Error::Shape("linear form is identically zero".into()));
        }
        Ok(LinearForm { coeffs })
    }

    pub fn from_ints(field: &Field, coeffs: &[i64]) -> Result<Self> {
        LinearForm::new(coeffs.iter().map(|&c| field.from_int(c)).collect())
    }

    pub fn coeffs(&self) -> &[FieldElement] {
        &self.coeffs
    }

    pub fn num_vars(&self) -> usize {
        self.coeffs.len()
    }

    pub fn field(&self) -> &Field {
        self.coeffs[0].field()
    }

    pub fn evaluate(&self, point: &[FieldElement]) -> Result<FieldElement> {
        crate::linalg::dot(&self.coeffs, point)
    }

    pub fn to_poly(&self) -> HomogPoly {
        let n = self.coeffs.len();
        let terms = self.coeffs.iter().enumerate().map(|(k, c)| {
            let mut e = vec![0; n];
            e[k] = 1;
            (Monomial(e), c.clone())
        });
        HomogPoly::from_terms(self.field(), n, 1, terms).expect("well-formed linear terms")
    }

    /// Whether the two forms define the same hyperplane.
    pub fn is_proportional(&self, other: &LinearForm) -> bool {
        let m = Matrix::from_rows(
            self.field(),
            self.num_vars(),
            vec![self.coeffs.clone(), other.coeffs.clone()],
        );
        m.is_ok_and(|m| m.rank() == 1)
    }
}

/// Product of the given forms, a homogeneous polynomial of degree `forms.len()`.
pub fn product_of_linear_forms(forms: &[LinearForm]) -> Result<HomogPoly> {
    let (first, rest) = forms.split_first().ok_or(Error::EmptyProduct)?;
    let mut acc = first.to_poly();
    for form in rest {
        if form.num_vars() != first.num_vars() {
            return Err(Error::Shape("linear forms in different variable counts".into()));
        }
        acc = acc.mul(&form.to_poly())?;
    }
    Ok(acc)
}

/// `polys.len() × (n+1)` matrix of partial derivatives at `point`.
pub fn jacobian_at(polys: &[HomogPoly], point: &[FieldElement]) -> Result<Matrix> {
    let first = polys
        .first()
        .ok_or_else(|| Error::Shape("Jacobian of no polynomials".into()))?;
    let rows = polys
        .iter()
        .map(|p| p.gradient_at(point))
        .collect::<Result<Vec<_>>>()?;
    Matrix::from_rows(&first.field, first.num_vars, rows)
}

/// A not necessarily homogeneous polynomial in affine coordinates.
#[derive(Clone, Debug, PartialEq)]
pub struct AffinePoly {
    num_vars: usize,
    terms: BTreeMap<Monomial, FieldElement>,
    field: Field,
}

impl AffinePoly {
    pub fn from_terms(
        field: &Field,
        num_vars: usize,
        terms: impl IntoIterator<Item = (Vec<u32>, FieldElement)>,
    ) -> Result<Self> {
        let mut out = AffinePoly {
            num_vars,
            terms: BTreeMap::new(),
            field: field.clone(),
        };
        for (e, c) in terms {
            if e.len() != num_vars {
                return Err(Error::Shape("exponent vector length mismatch".into()));
            }
            if c.is_zero() {
                continue;
            }
            let m = Monomial(e);
            let sum = match out.terms.remove(&m) {
                Some(prev) => &prev + &c,
                None => c,
            };
            if !sum.is_zero() {
                out.terms.insert(m, sum);
            }
        }
        Ok(out)
    }

    pub fn num_vars(&self) -> usize {
        self.num_vars
    }

    pub fn terms(&self) -> &BTreeMap<Monomial, FieldElement> {
        &self.terms
    }

    /// Total degree; `None` for the zero polynomial.
    pub fn degree(&self) -> Option<u32> {
        self.terms.keys().map(Monomial::degree).max()
    }

    pub fn evaluate(&self, point: &[FieldElement]) -> Result<FieldElement> {
        if point.len() != self.num_vars {
            return Err(Error::Shape("point dimension mismatch".into()));
        }
        let powers = power_table(point, self.degree().unwrap_or(0));
        let mut acc = self.field.zero();
        for (m, c) in &self.terms {
            let v = if m.degree() == 0 {
                self.field.one()
            } else {
                m.eval_with(&powers)
            };
            acc = &acc + &(c * &v);
        }
        Ok(acc)
    }
}

/// Homogenizes to total degree `degree`, appending the homogenizing variable last.
pub fn homogenize(p: &AffinePoly, degree: u32) -> Result<HomogPoly> {
    if let Some(actual) = p.degree() {
        if actual > degree {
            return Err(Error::DegreeOverflow {
                actual,
                requested: degree,
            });
        }
    }
    let terms = p.terms.iter().map(|(m, c)| {
        let mut e = m.0.clone();
        e.push(degree - m.degree());
        (Monomial(e), c.clone())
    });
    HomogPoly::from_terms(&p.field, p.num_vars + 1, degree, terms)
}

/// Sets variable `chart_var` to 1 and drops it.
pub fn dehomogenize(p: &HomogPoly, chart_var: usize) -> Result<AffinePoly> {
    if chart_var >= p.num_vars {
        return Err(Error::IndexOutOfRange(format!(
            "chart variable {chart_var} of {}",
            p.num_vars
        )));
    }
    let terms = p.terms.iter().map(|(m, c)| {
        let mut e = m.0.clone();
        e.remove(chart_var);
        (e, c.clone())
    });
    AffinePoly::from_terms(&p.field, p.num_vars - 1, terms)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::{int, rational};
    use proptest::prelude::*;

    fn q() -> Field {
        Field::rationals()
    }

    fn pt(values: &[i64]) -> Vec<FieldElement> {
        values.iter().map(|&v| q().from_int(v)).collect()
    }

    fn poly(vars: usize, degree: u32, terms: &[(&[u32], i64)]) -> HomogPoly {
        HomogPoly::from_terms(
            &q(),
            vars,
            degree,
            terms
                .iter()
                .map(|(e, c)| (Monomial::new(e.to_vec()), q().from_int(*c))),
        )
        .unwrap()
    }

    fn circle() -> HomogPoly {
        poly(3, 2, &[(&[2, 0, 0], 1), (&[0, 2, 0], 1), (&[0, 0, 2], -1)])
    }

    #[test]
    fn basis_sizes() {
        assert_eq!(monomial_basis(2, 3).len(), 6);
        assert_eq!(monomial_basis(4, 4).len(), 35);
        assert_eq!(monomial_basis(3, 4).len(), 20);
        assert_eq!(monomial_basis(0, 3), vec![Monomial::new(vec![0, 0, 0])]);
        let b = monomial_basis(2, 3);
        assert_eq!(b[0].exponents(), &[2, 0, 0]);
        assert_eq!(b[5].exponents(), &[0, 0, 2]);
        assert!(b.windows(2).all(|w| w[0] < w[1]));
        for d in 0..7u32 {
            for v in 1..6 {
                assert_eq!(
                    monomial_basis(d, v).len(),
                    binomial(d as usize + v - 1, v - 1)
                );
            }
        }
    }

    #[test]
    fn evaluate_examples() {
        assert!(circle().evaluate(&pt(&[3, 4, 5])).unwrap().is_zero());
        // x(x - z) at [1:1:1]
        let l1 = poly(3, 2, &[(&[2, 0, 0], 1), (&[1, 0, 1], -1)]);
        assert!(l1.evaluate(&pt(&[1, 1, 1])).unwrap().is_zero());
        assert_eq!(
            circle().evaluate(&pt(&[0, 0, 0])).unwrap_err(),
            Error::InvalidPoint
        );
        let p = poly(3, 3, &[(&[3, 0, 0], 2), (&[1, 1, 1], -5), (&[0, 0, 3], 7)]);
        let base = p.evaluate(&pt(&[1, 2, 3])).unwrap();
        let scaled = p.evaluate(&pt(&[2, 4, 6])).unwrap();
        assert_eq!(scaled, base.scale(&int(8)));
    }

    #[test]
    fn products() {
        let l = LinearForm::from_ints(&q(), &[1, 0, -1]).unwrap();
        assert_eq!(product_of_linear_forms(std::slice::from_ref(&l)).unwrap(), l.to_poly());
        let m = LinearForm::from_ints(&q(), &[1, 0, 1]).unwrap();
        let p = product_of_linear_forms(&[l, m]).unwrap();
        assert_eq!(p, poly(3, 2, &[(&[2, 0, 0], 1), (&[0, 0, 2], -1)]));
        assert_eq!(product_of_linear_forms(&[]).unwrap_err(), Error::EmptyProduct);
        assert!(LinearForm::from_ints(&q(), &[0, 0]).is_err());
    }

    #[test]
    fn cube_roots_of_unity_product() {
        // prod_k (u + w^k v) = u^3 + v^3 over Q[t]/(t^2 + t + 1)
        let f = Field::extension(vec![int(1), int(1), int(1)], "Q(w)").unwrap();
        let w = f.generator().unwrap();
        let forms: Vec<LinearForm> = (0..3)
            .map(|k| LinearForm::new(vec![f.one(), w.pow(k)]).unwrap())
            .collect();
        let p = product_of_linear_forms(&forms).unwrap();
        let expected = HomogPoly::from_terms(
            &f,
            2,
            3,
            [
                (Monomial::new(vec![3, 0]), f.one()),
                (Monomial::new(vec![0, 3]), f.one()),
            ],
        )
        .unwrap();
        assert_eq!(p, expected);
    }

    #[test]
    fn jacobian_examples() {
        let j = jacobian_at(&[circle()], &pt(&[3, 4, 5])).unwrap();
        assert_eq!(j.row(0), pt(&[6, 8, -10]).as_slice());
        assert!(jacobian_at(&[circle()], &pt(&[0, 0, 0])).is_err());
    }

    #[test]
    fn homogenize_round_trip() {
        let affine = AffinePoly::from_terms(
            &q(),
            2,
            [
                (vec![2, 0], q().one()),
                (vec![0, 2], q().one()),
                (vec![0, 0], q().from_int(-1)),
            ],
        )
        .unwrap();
        let h = homogenize(&affine, 2).unwrap();
        assert_eq!(h, circle());
        assert_eq!(dehomogenize(&h, 2).unwrap(), affine);
        assert!(matches!(
            homogenize(&affine, 1),
            Err(Error::DegreeOverflow { actual: 2, requested: 1 })
        ));

        // x1^4 + x2^4 + x3^4 + 1  <->  y0^4 + y1^4 + y2^4 + y3^4
        let k3 = AffinePoly::from_terms(
            &q(),
            3,
            [
                (vec![4, 0, 0], q().one()),
                (vec![0, 4, 0], q().one()),
                (vec![0, 0, 4], q().one()),
                (vec![0, 0, 0], q().one()),
            ],
        )
        .unwrap();
        let fermat = poly(
            4,
            4,
            &[
                (&[4, 0, 0, 0], 1),
                (&[0, 4, 0, 0], 1),
                (&[0, 0, 4, 0], 1),
                (&[0, 0, 0, 4], 1),
            ],
        );
        assert_eq!(homogenize(&k3, 4).unwrap(), fermat);
        assert_eq!(dehomogenize(&fermat, 3).unwrap(), k3);
        // dehomogenizing any other variable gives the same shape up to naming
        assert_eq!(dehomogenize(&fermat, 0).unwrap(), k3);
    }

    fn small_poly(vars: usize, degree: u32) -> impl Strategy<Value = HomogPoly> {
        let basis = monomial_basis(degree, vars);
        proptest::collection::vec(-4i64..=4, basis.len()).prop_map(move |cs| {
            let f = Field::rationals();
            let coeffs: Vec<_> = cs.iter().map(|&c| f.from_int(c)).collect();
            HomogPoly::from_coefficient_vector(&f, vars, degree, &coeffs).unwrap()
        })
    }

    fn small_point(vars: usize) -> impl Strategy<Value = Vec<FieldElement>> {
        proptest::collection::vec((-5i64..=5, 1i64..=3), vars).prop_map(|v| {
            v.into_iter()
                .map(|(n, d)| Field::rationals().from_rational(rational(n, d)))
                .collect()
        })
    }

    proptest! {
        #[test]
        fn euler_identity(p in small_poly(4, 3), x in small_point(4)) {
            prop_assume!(!x.iter().all(FieldElement::is_zero));
            let grad = p.gradient_at(&x).unwrap();
            let lhs = crate::linalg::dot(&grad, &x).unwrap();
            let rhs = p.evaluate(&x).unwrap().scale(&int(3));
            prop_assert_eq!(lhs, rhs);
        }

        #[test]
        fn evaluation_is_multiplicative(
            forms in proptest::collection::vec(proptest::collection::vec(-3i64..=3, 3), 1..5),
            x in small_point(3),
        ) {
            prop_assume!(!x.iter().all(FieldElement::is_zero));
            let forms: Vec<LinearForm> = forms
                .iter()
                .filter_map(|c| LinearForm::from_ints(&q(), c).ok())
                .collect();
            prop_assume!(!forms.is_empty());
            let product = product_of_linear_forms(&forms).unwrap();
            let expected = forms
                .iter()
                .fold(q().one(), |acc, l| &acc * &l.evaluate(&x).unwrap());
            prop_assert_eq!(product.evaluate(&x).unwrap(), expected);
            prop_assert_eq!(product.degree() as usize, forms.len());
        }

        #[test]
        fn coefficient_vector_round_trip(p in small_poly(3, 4)) {
            let v = p.coefficient_vector();
            let back = HomogPoly::from_coefficient_vector(&q(), 3, 4, &v).unwrap();
            prop_assert_eq!(back, p);
        }
    }
}
