//! Dense exact linear algebra over a [`Field`].
//!
//! Pivots are always the first nonzero entry in column order, so identical
//! inputs give identical reduced forms and kernel bases.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::field::{Field, FieldElement};

#[derive(Clone, Debug, PartialEq)]
pub struct Matrix {
    rows: usize,
    cols: usize,
    entries: Vec<FieldElement>,
    field: Field,
}

/// Result of [`Matrix::solve`].
#[derive(Clone, Debug, PartialEq)]
pub enum Solution {
    /// A solution; free variables (if any) are set to zero.
    Solved(Vec<FieldElement>),
    NoSolution,
}

/// Reduced row echelon form together with its pivot columns.
#[derive(Clone, Debug)]
pub struct Rref {
    pub matrix: Matrix,
    pub pivots: Vec<usize>,
}

impl Matrix {
    pub fn new(field: &Field, rows: usize, cols: usize, entries: Vec<FieldElement>) -> Result<Self> {
        if entries.len() != rows * cols {
            return Err(Error::Shape(format!(
                "{} entries for a {rows}x{cols} matrix",
                entries.len()
            )));
        }
        if entries.iter().any(|e| e.field() != field) {
            return Err(Error::FieldMismatch);
        }
        Ok(Matrix {
            rows,
            cols,
            entries,
            field: field.clone(),
        })
    }

    pub fn zeros(field: &Field, rows: usize, cols: usize) -> Self {
        Matrix {
            rows,
            cols,
            entries: vec![field.zero(); rows * cols],
            field: field.clone(),
        }
    }

    pub fn identity(field: &Field, n: usize) -> Self {
        let mut m = Self::zeros(field, n, n);
        for i in 0..n {
            m.set(i, i, field.one());
        }
        m
    }

    /// Builds a matrix from row vectors, which must all have length `cols`.
    pub fn from_rows(field: &Field, cols: usize, rows: Vec<Vec<FieldElement>>) -> Result<Self> {
        let n_rows = rows.len();
        let mut entries = Vec::with_capacity(n_rows * cols);
        for (r, row) in rows.into_iter().enumerate() {
            if row.len() != cols {
                return Err(Error::Shape(format!(
                    "row {r} has length {}, expected {cols}",
                    row.len()
                )));
            }
            entries.extend(row);
        }
        Matrix::new(field, n_rows, cols, entries)
    }

    /// Integer-valued matrix over `field`, handy for tests and fixtures.
    pub fn from_ints(field: &Field, rows: &[&[i64]]) -> Result<Self> {
        let cols = rows.first().map_or(0, |r| r.len());
        let rows = rows
            .iter()
            .map(|r| r.iter().map(|&v| field.from_int(v)).collect())
            .collect();
        Matrix::from_rows(field, cols, rows)
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn field(&self) -> &Field {
        &self.field
    }

    pub fn get(&self, r: usize, c: usize) -> &FieldElement {
        &self.entries[r * self.cols + c]
    }

    pub fn set(&mut self, r: usize, c: usize, value: FieldElement) {
        self.entries[r * self.cols + c] = value;
    }

    pub fn row(&self, r: usize) -> &[FieldElement] {
        &self.entries[r * self.cols..(r + 1) * self.cols]
    }

    pub fn row_vectors(&self) -> Vec<Vec<FieldElement>> {
        (0..self.rows).map(|r| self.row(r).to_vec()).collect()
    }

    pub fn transpose(&self) -> Matrix {
        let mut entries = Vec::with_capacity(self.entries.len());
        for c in 0..self.cols {
            for r in 0..self.rows {
                entries.push(self.get(r, c).clone());
            }
        }
        Matrix {
            rows: self.cols,
            cols: self.rows,
            entries,
            field: self.field.clone(),
        }
    }

    /// Keeps only the listed columns, in the given order.
    pub fn select_columns(&self, columns: &[usize]) -> Matrix {
        let mut entries = Vec::with_capacity(self.rows * columns.len());
        for r in 0..self.rows {
            for &c in columns {
                entries.push(self.get(r, c).clone());
            }
        }
        Matrix {
            rows: self.rows,
            cols: columns.len(),
            entries,
            field: self.field.clone(),
        }
    }

    pub fn mul(&self, other: &Matrix) -> Result<Matrix> {
        if self.cols != other.rows {
            return Err(Error::Shape(format!(
                "cannot multiply {}x{} by {}x{}",
                self.rows, self.cols, other.rows, other.cols
            )));
        }
        if self.field != other.field {
            return Err(Error::FieldMismatch);
        }
        let mut out = Matrix::zeros(&self.field, self.rows, other.cols);
        for r in 0..self.rows {
            for k in 0..self.cols {
                let a = self.get(r, k);
                if a.is_zero() {
                    continue;
                }
                for c in 0..other.cols {
                    let b = other.get(k, c);
                    if !b.is_zero() {
                        let idx = r * out.cols + c;
                        out.entries[idx] = &out.entries[idx] + &(a * b);
                    }
                }
            }
        }
        Ok(out)
    }

    pub fn mul_vec(&self, v: &[FieldElement]) -> Result<Vec<FieldElement>> {
        if v.len() != self.cols {
            return Err(Error::Shape(format!(
                "vector of length {} against {} columns",
                v.len(),
                self.cols
            )));
        }
        (0..self.rows)
            .map(|r| dot(self.row(r), v))
            .collect::<Result<Vec<_>>>()
    }

    /// Gauss-Jordan reduction to reduced row echelon form.
    pub fn rref(&self) -> Rref {
        let mut m = self.clone();
        let mut pivots = Vec::new();
        let mut pivot_row = 0;
        for col in 0..m.cols {
            if pivot_row == m.rows {
                break;
            }
            let Some(found) = (pivot_row..m.rows).find(|&r| !m.get(r, col).is_zero()) else {
                continue;
            };
            m.swap_rows(found, pivot_row);
            let inv = m
                .get(pivot_row, col)
                .inverse()
                .expect("pivot is nonzero");
            for c in col..m.cols {
                let idx = pivot_row * m.cols + c;
                if !m.entries[idx].is_zero() {
                    m.entries[idx] = &m.entries[idx] * &inv;
                }
            }
            for r in 0..m.rows {
                if r == pivot_row {
                    continue;
                }
                let factor = m.get(r, col).clone();
                if factor.is_zero() {
                    continue;
                }
                for c in col..m.cols {
                    let p = m.get(pivot_row, c);
                    if p.is_zero() {
                        continue;
                    }
                    let delta = &factor * p;
                    let idx = r * m.cols + c;
                    m.entries[idx] = &m.entries[idx] - &delta;
                }
            }
            pivots.push(col);
            pivot_row += 1;
        }
        Rref { matrix: m, pivots }
    }

    fn swap_rows(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        for c in 0..self.cols {
            self.entries.swap(a * self.cols + c, b * self.cols + c);
        }
    }

    /// Exact rank. Over `Q` this runs fraction-free Bareiss elimination on
    /// an integer matrix with row denominators cleared.
    pub fn rank(&self) -> usize {
        if self.field.is_rationals() {
            bareiss_rank(self.integer_rows())
        } else {
            self.rref().pivots.len()
        }
    }

    /// Rank by Gauss-Jordan over the field, regardless of the field kind.
    pub fn rank_by_elimination(&self) -> usize {
        self.rref().pivots.len()
    }

    fn integer_rows(&self) -> Vec<Vec<BigInt>> {
        (0..self.rows)
            .map(|r| {
                let row = self.row(r);
                let lcm = row
                    .iter()
                    .fold(BigInt::one(), |acc, e| acc.lcm(e.coeffs()[0].denom()));
                row.iter()
                    .map(|e| {
                        let q = &e.coeffs()[0];
                        q.numer() * (&lcm / q.denom())
                    })
                    .collect()
            })
            .collect()
    }

    /// Basis of `{x : self * x = 0}` read off the reduced row echelon form:
    /// one vector per free column, with a 1 in that column and 0 in the
    /// other free columns.
    pub fn kernel_basis(&self) -> SubspaceBasis {
        let Rref { matrix, pivots } = self.rref();
        let mut is_pivot = vec![false; self.cols];
        for &p in &pivots {
            is_pivot[p] = true;
        }
        let vectors = (0..self.cols)
            .filter(|&c| !is_pivot[c])
            .map(|free| {
                let mut v = vec![self.field.zero(); self.cols];
                v[free] = self.field.one();
                for (r, &p) in pivots.iter().enumerate() {
                    v[p] = -matrix.get(r, free);
                }
                v
            })
            .collect();
        SubspaceBasis {
            ambient_dim: self.cols,
            vectors,
            field: self.field.clone(),
        }
    }

    /// Solves `self * x = b`.
    pub fn solve(&self, b: &[FieldElement]) -> Result<Solution> {
        if b.len() != self.rows {
            return Err(Error::Shape(format!(
                "right-hand side of length {} for {} rows",
                b.len(),
                self.rows
            )));
        }
        let mut augmented = Matrix::zeros(&self.field, self.rows, self.cols + 1);
        for r in 0..self.rows {
            for c in 0..self.cols {
                augmented.set(r, c, self.get(r, c).clone());
            }
            augmented.set(r, self.cols, b[r].clone());
        }
        let Rref { matrix, pivots } = augmented.rref();
        if pivots.last() == Some(&self.cols) {
            return Ok(Solution::NoSolution);
        }
        let mut x = vec![self.field.zero(); self.cols];
        for (r, &p) in pivots.iter().enumerate() {
            x[p] = matrix.get(r, self.cols).clone();
        }
        Ok(Solution::Solved(x))
    }

    pub fn inverse(&self) -> Result<Matrix> {
        if self.rows != self.cols {
            return Err(Error::Shape("inverse of a non-square matrix".into()));
        }
        let n = self.rows;
        let mut augmented = Matrix::zeros(&self.field, n, 2 * n);
        for r in 0..n {
            for c in 0..n {
                augmented.set(r, c, self.get(r, c).clone());
            }
            augmented.set(r, n + r, self.field.one());
        }
        let Rref { matrix, pivots } = augmented.rref();
        if pivots.len() < n || pivots[n - 1] != n - 1 {
            return Err(Error::NotInvertible);
        }
        Ok(matrix.select_columns(&(n..2 * n).collect::<Vec<_>>()))
    }
}

/// Exact dot product of two equally long vectors.
pub fn dot(a: &[FieldElement], b: &[FieldElement]) -> Result<FieldElement> {
    if a.len() != b.len() {
        return Err(Error::Shape(format!(
            "dot product of lengths {} and {}",
            a.len(),
            b.len()
        )));
    }
    let Some(first) = a.first() else {
        return Err(Error::Shape("dot product of empty vectors".into()));
    };
    let mut acc = first.field().zero();
    for (x, y) in a.iter().zip(b) {
        if !x.is_zero() && !y.is_zero() {
            acc = acc.checked_add(&x.checked_mul(y)?)?;
        }
    }
    Ok(acc)
}

/// Rank of an integer matrix by fraction-free (Bareiss) elimination.
pub fn bareiss_rank(mut rows: Vec<Vec<BigInt>>) -> usize {
    let n_rows = rows.len();
    let n_cols = rows.first().map_or(0, Vec::len);
    let mut prev = BigInt::one();
    let mut rank = 0;
    for col in 0..n_cols {
        if rank == n_rows {
            break;
        }
        let Some(found) = (rank..n_rows).find(|&r| !rows[r][col].is_zero()) else {
            continue;
        };
        rows.swap(found, rank);
        let (pivot_rows, rest) = rows.split_at_mut(rank + 1);
        let pivot_row = &pivot_rows[rank];
        let pivot = &pivot_row[col];
        for row in rest.iter_mut() {
            let factor = row[col].clone();
            for c in col + 1..n_cols {
                let num = pivot * &row[c] - &factor * &pivot_row[c];
                debug_assert!((&num % &prev).is_zero());
                row[c] = num / &prev;
            }
            row[col] = BigInt::zero();
        }
        prev = pivot.clone();
        rank += 1;
    }
    rank
}

/// A list of linearly independent vectors spanning a subspace of `F^ambient_dim`.
#[derive(Clone, Debug, PartialEq)]
pub struct SubspaceBasis {
    ambient_dim: usize,
    vectors: Vec<Vec<FieldElement>>,
    field: Field,
}

impl SubspaceBasis {
    /// Wraps `vectors`, which must be independent and of length `ambient_dim`.
    pub fn new(field: &Field, ambient_dim: usize, vectors: Vec<Vec<FieldElement>>) -> Result<Self> {
        let count = vectors.len();
        let m = Matrix::from_rows(field, ambient_dim, vectors.clone())?;
        let rank = m.rank();
        if rank != count {
            return Err(Error::Shape(format!(
                "{count} vectors of rank {rank} are not independent"
            )));
        }
        Ok(SubspaceBasis {
            ambient_dim,
            vectors,
            field: field.clone(),
        })
    }

    /// Canonical basis (nonzero rows of the reduced echelon form) of the span
    /// of arbitrary vectors.
    pub fn span_of(field: &Field, ambient_dim: usize, vectors: Vec<Vec<FieldElement>>) -> Result<Self> {
        let count = vectors.len();
        let m = Matrix::from_rows(field, ambient_dim, vectors)?;
        let Rref { matrix, pivots } = m.rref();
        let vectors = (0..pivots.len()).map(|r| matrix.row(r).to_vec()).collect();
        debug_assert!(pivots.len() <= count);
        Ok(SubspaceBasis {
            ambient_dim,
            vectors,
            field: field.clone(),
        })
    }

    pub fn zero(field: &Field, ambient_dim: usize) -> Self {
        SubspaceBasis {
            ambient_dim,
            vectors: Vec::new(),
            field: field.clone(),
        }
    }

    pub fn dim(&self) -> usize {
        self.vectors.len()
    }

    pub fn ambient_dim(&self) -> usize {
        self.ambient_dim
    }

    pub fn vectors(&self) -> &[Vec<FieldElement>] {
        &self.vectors
    }

    pub fn field(&self) -> &Field {
        &self.field
    }

    pub fn into_vectors(self) -> Vec<Vec<FieldElement>> {
        self.vectors
    }

    /// Matrix whose rows are the basis vectors.
    pub fn to_matrix(&self) -> Matrix {
        Matrix::from_rows(&self.field, self.ambient_dim, self.vectors.clone())
            .expect("basis vectors have ambient length")
    }

    /// Whether `v` is a linear combination of the basis.
    pub fn contains(&self, v: &[FieldElement]) -> Result<bool> {
        if v.len() != self.ambient_dim {
            return Err(Error::Shape(format!(
                "vector of length {} in ambient dimension {}",
                v.len(),
                self.ambient_dim
            )));
        }
        if v.iter().all(FieldElement::is_zero) {
            return Ok(true);
        }
        let mut rows = self.vectors.clone();
        rows.push(v.to_vec());
        let m = Matrix::from_rows(&self.field, self.ambient_dim, rows)?;
        Ok(m.rank() == self.vectors.len())
    }

    pub fn contains_all(&self, other: &SubspaceBasis) -> Result<bool> {
        for v in &other.vectors {
            if !self.contains(v)? {
                return Ok(false);
            }
        }
        Ok(true)
    }

    /// Equality of spans, tested by mutual containment.
    pub fn same_span(&self, other: &SubspaceBasis) -> Result<bool> {
        Ok(self.dim() == other.dim() && self.contains_all(other)? && other.contains_all(self)?)
    }
}

/// Whether `v` lies in the span of `basis`.
pub fn in_span(v: &[FieldElement], basis: &SubspaceBasis) -> Result<bool> {
    basis.contains(v)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::{int, rational, Rational};
    use proptest::prelude::*;

    fn q() -> Field {
        Field::rationals()
    }

    fn vecq(values: &[i64]) -> Vec<FieldElement> {
        values.iter().map(|&v| q().from_int(v)).collect()
    }

    /// Plain fraction-based row reduction, independent of `rref`/`bareiss_rank`:
    /// repeatedly pick any nonzero entry, eliminate its column from every
    /// other row, and drop the row.
    fn oracle_rank(rows: &[Vec<Rational>]) -> usize {
        let mut rows: Vec<Vec<Rational>> = rows.to_vec();
        let mut rank = 0;
        while let Some((r, c)) = rows.iter().enumerate().find_map(|(r, row)| {
            row.iter().position(|x| !x.is_zero()).map(|c| (r, c))
        }) {
            let pivot_row = rows.remove(r);
            for row in rows.iter_mut() {
                let f = &row[c] / &pivot_row[c];
                for (x, p) in row.iter_mut().zip(&pivot_row) {
                    *x -= &f * p;
                }
            }
            rank += 1;
        }
        rank
    }

    #[test]
    fn rank_examples() {
        assert_eq!(Matrix::identity(&q(), 3).rank(), 3);
        assert_eq!(Matrix::zeros(&q(), 2, 5).rank(), 0);

        // degree-2 monomials x^2, xy, xz, y^2, yz, z^2 at (0,0),(1,0),(0,1),(1,1) with z = 1
        let points = [(0, 0), (1, 0), (0, 1), (1, 1)];
        let rows: Vec<Vec<i64>> = points
            .iter()
            .map(|&(x, y)| vec![x * x, x * y, x, y * y, y, 1])
            .collect();
        let refs: Vec<&[i64]> = rows.iter().map(Vec::as_slice).collect();
        let m = Matrix::from_ints(&q(), &refs).unwrap();
        let as_rationals: Vec<Vec<Rational>> = rows
            .iter()
            .map(|r| r.iter().map(|&v| int(v)).collect())
            .collect();
        assert_eq!(oracle_rank(&as_rationals), 4);
        assert_eq!(m.rank(), 4);
        assert_eq!(m.rank_by_elimination(), 4);

        let kernel = m.kernel_basis();
        assert_eq!(kernel.dim(), 2);
        // x(x - z) and y(y - z)
        assert!(kernel.contains(&vecq(&[1, 0, -1, 0, 0, 0])).unwrap());
        assert!(kernel.contains(&vecq(&[0, 0, 0, 1, -1, 0])).unwrap());
    }

    #[test]
    fn kernel_examples() {
        assert_eq!(Matrix::identity(&q(), 4).kernel_basis().dim(), 0);
        let m = Matrix::from_ints(&q(), &[&[1, 1]]).unwrap();
        let k = m.kernel_basis();
        assert_eq!(k.dim(), 1);
        assert!(k.contains(&vecq(&[1, -1])).unwrap());
        assert_eq!(k.vectors()[0], vecq(&[-1, 1]));
    }

    #[test]
    fn in_span_examples() {
        let basis = SubspaceBasis::new(&q(), 2, vec![vecq(&[0, 1])]).unwrap();
        assert!(in_span(&vecq(&[0, 0]), &basis).unwrap());
        assert!(!in_span(&vecq(&[1, 0]), &basis).unwrap());
        let basis = SubspaceBasis::new(&q(), 2, vec![vecq(&[1, -1])]).unwrap();
        assert!(in_span(&vecq(&[2, -2]), &basis).unwrap());
        assert!(matches!(
            in_span(&vecq(&[1, 2, 3]), &basis),
            Err(Error::Shape(_))
        ));
        assert!(SubspaceBasis::new(&q(), 2, vec![vecq(&[1, 1]), vecq(&[2, 2])]).is_err());
    }

    #[test]
    fn solve_examples() {
        let id = Matrix::identity(&q(), 3);
        let b = vecq(&[4, 5, 6]);
        assert_eq!(id.solve(&b).unwrap(), Solution::Solved(b.clone()));

        let a = Matrix::from_ints(&q(), &[&[1, 1], &[1, -1]]).unwrap();
        assert_eq!(
            a.solve(&vecq(&[2, 0])).unwrap(),
            Solution::Solved(vecq(&[1, 1]))
        );

        let singular = Matrix::from_ints(&q(), &[&[1, 1], &[2, 2]]).unwrap();
        assert_eq!(singular.solve(&vecq(&[1, 3])).unwrap(), Solution::NoSolution);
        assert!(matches!(singular.solve(&vecq(&[1])), Err(Error::Shape(_))));
    }

    #[test]
    fn inverse_round_trip() {
        let a = Matrix::from_ints(&q(), &[&[2, 1, 0], &[0, 1, 3], &[1, 0, 1]]).unwrap();
        let inv = a.inverse().unwrap();
        assert_eq!(a.mul(&inv).unwrap(), Matrix::identity(&q(), 3));
        let singular = Matrix::from_ints(&q(), &[&[1, 2], &[2, 4]]).unwrap();
        assert_eq!(singular.inverse().unwrap_err(), Error::NotInvertible);
    }

    #[test]
    fn extension_field_elimination() {
        let f = Field::extension(vec![int(-2), int(0), int(1)], "Q(sqrt2)").unwrap();
        let t = f.generator().unwrap();
        // [[1, t], [t, 2]] has rank 1 since 2 - t^2 = 0
        let m = Matrix::from_rows(
            &f,
            2,
            vec![vec![f.one(), t.clone()], vec![t.clone(), f.from_int(2)]],
        )
        .unwrap();
        assert_eq!(m.rank(), 1);
        let k = m.kernel_basis();
        assert_eq!(k.dim(), 1);
        assert!(m.mul_vec(&k.vectors()[0]).unwrap().iter().all(|e| e.is_zero()));
    }

    fn random_matrix() -> impl Strategy<Value = Vec<Vec<Rational>>> {
        (1usize..=20, 1usize..=20, 0usize..=3).prop_flat_map(|(r, c, sparsity)| {
            let entry = (-3i64..=3, 1i64..=4).prop_map(move |(n, d)| {
                // sparsity biases towards zeros and thus rank deficiency
                if n.unsigned_abs() as usize <= sparsity {
                    int(0)
                } else {
                    rational(n, d)
                }
            });
            proptest::collection::vec(proptest::collection::vec(entry, c), r)
        })
    }

    fn to_matrix(rows: &[Vec<Rational>]) -> Matrix {
        let f = q();
        let cols = rows[0].len();
        Matrix::from_rows(
            &f,
            cols,
            rows.iter()
                .map(|r| r.iter().map(|x| f.from_rational(x.clone())).collect())
                .collect(),
        )
        .unwrap()
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(200))]

        #[test]
        fn rank_properties(rows in random_matrix()) {
            let m = to_matrix(&rows);
            let rank = m.rank();
            prop_assert_eq!(rank, m.transpose().rank());
            prop_assert_eq!(rank, m.rank_by_elimination());
            prop_assert_eq!(rank, oracle_rank(&rows));
            let kernel = m.kernel_basis();
            prop_assert_eq!(kernel.dim() + rank, m.cols());
            for v in kernel.vectors() {
                prop_assert!(m.mul_vec(v).unwrap().iter().all(FieldElement::is_zero));
            }
        }
    }
}
