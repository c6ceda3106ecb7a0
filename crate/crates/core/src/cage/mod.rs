//! Cages of hyperplanes in projective `n`-space and their nodes.
//!
//! A `d^n`-cage is `n` ordered groups ("colors") of `d` linear forms in
//! `n + 1` variables. Choosing one hyperplane of each color gives a node; a
//! cage is valid when all `d^n` choices meet transversally in distinct points
//! and each node lies on exactly one hyperplane of each color.
//!
//! Hyperplane positions inside a color are 1-based (as in [`MultiIndex`]);
//! colors themselves are 0-based in method arguments.

mod generators;
mod slice;

pub use generators::{axis_cage, random_cage, RandomCage, RANDOM_COEFF_BOUND, RANDOM_MAX_ATTEMPTS};
pub use slice::Slice;

use std::collections::HashMap;
use std::fmt;
use std::str::FromStr;

use crate::error::{Error, Result};
use crate::field::{Field, FieldElement};
use crate::linalg::Matrix;
use crate::poly::{binomial, product_of_linear_forms, HomogPoly, LinearForm};

/// Multi-index `I = (i_1, ..., i_n)` with `1 <= i_j <= d`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct MultiIndex(Vec<usize>);

impl MultiIndex {
    pub fn new(entries: Vec<usize>, d: usize) -> Result<Self> {
        if let Some(&bad) = entries.iter().find(|&&i| i == 0 || i > d) {
            return Err(Error::IndexOutOfRange(format!("entry {bad} not in [1, {d}]")));
        }
        Ok(MultiIndex(entries))
    }

    pub fn entries(&self) -> &[usize] {
        &self.0
    }

    /// `‖I‖ = Σ i_j`.
    pub fn norm(&self) -> usize {
        self.0.iter().sum()
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    /// Position in the lexicographic enumeration of `[1, d]^n`.
    pub fn rank_in(&self, d: usize) -> usize {
        self.0.iter().fold(0, |acc, &i| acc * d + (i - 1))
    }
}

impl fmt::Display for MultiIndex {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.0.iter().map(usize::to_string).collect();
        write!(f, "{}", parts.join(","))
    }
}

impl FromStr for MultiIndex {
    type Err = Error;

    /// Parses `"1,2,3"` without a bound check; see [`Cage::node`].
    fn from_str(s: &str) -> Result<Self> {
        let entries = s
            .split(',')
            .map(|p| {
                p.trim()
                    .parse::<usize>()
                    .map_err(|_| Error::IndexOutOfRange(format!("bad multi-index {s:?}")))
            })
            .collect::<Result<Vec<_>>>()?;
        if entries.contains(&0) {
            return Err(Error::IndexOutOfRange(format!("multi-index {s:?} has a zero entry")));
        }
        Ok(MultiIndex(entries))
    }
}

/// All of `[1, d]^n` in lexicographic order.
pub fn all_indices(d: usize, n: usize) -> Vec<MultiIndex> {
    let total = d.pow(n as u32);
    (0..total)
        .map(|mut r| {
            let mut e = vec![0; n];
            for slot in e.iter_mut().rev() {
                *slot = r % d + 1;
                r /= d;
            }
            MultiIndex(e)
        })
        .collect()
}

/// Scales a nonzero vector so its last nonzero coordinate is 1.
pub fn canonical_representative(point: &[FieldElement]) -> Result<Vec<FieldElement>> {
    let last = point
        .iter()
        .rposition(|x| !x.is_zero())
        .ok_or(Error::InvalidPoint)?;
    let inv = point[last].inverse()?;
    Ok(point.iter().map(|x| x * &inv).collect())
}

/// A cage node with its canonical projective representative.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Node {
    index: MultiIndex,
    point: Vec<FieldElement>,
}

impl Node {
    pub fn new(index: MultiIndex, point: &[FieldElement]) -> Result<Self> {
        Ok(Node {
            index,
            point: canonical_representative(point)?,
        })
    }

    pub fn index(&self) -> &MultiIndex {
        &self.index
    }

    pub fn point(&self) -> &[FieldElement] {
        &self.point
    }

    /// Coordinate normalized to 1; the affine chart used for tangents.
    pub fn chart(&self) -> usize {
        self.point
            .iter()
            .rposition(FieldElement::is_one)
            .expect("canonical representative")
    }

    /// Coordinates in [`Node::chart`], i.e. the point with the chart coordinate dropped.
    pub fn affine_coords(&self) -> Vec<FieldElement> {
        let c = self.chart();
        self.point
            .iter()
            .enumerate()
            .filter(|&(k, _)| k != c)
            .map(|(_, x)| x.clone())
            .collect()
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum SelectionKind {
    All,
    Simplicial,
    SupraSimplicial,
    Custom,
}

/// A set of multi-indices, kept sorted lexicographically.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct NodeSelection {
    kind: SelectionKind,
    indices: Vec<MultiIndex>,
}

impl NodeSelection {
    pub fn all(d: usize, n: usize) -> Self {
        NodeSelection {
            kind: SelectionKind::All,
            indices: all_indices(d, n),
        }
    }

    pub fn custom(mut indices: Vec<MultiIndex>) -> Self {
        indices.sort();
        indices.dedup();
        NodeSelection {
            kind: SelectionKind::Custom,
            indices,
        }
    }

    fn by_norm(d: usize, n: usize, max_norm: usize, kind: SelectionKind) -> Self {
        NodeSelection {
            kind,
            indices: all_indices(d, n)
                .into_iter()
                .filter(|i| i.norm() <= max_norm)
                .collect(),
        }
    }

    pub fn kind(&self) -> SelectionKind {
        self.kind
    }

    pub fn indices(&self) -> &[MultiIndex] {
        &self.indices
    }

    pub fn len(&self) -> usize {
        self.indices.len()
    }

    pub fn is_empty(&self) -> bool {
        self.indices.is_empty()
    }

    pub fn contains(&self, index: &MultiIndex) -> bool {
        self.indices.binary_search(index).is_ok()
    }

    /// Complement inside `[1, d]^n`.
    pub fn complement(&self, d: usize, n: usize) -> NodeSelection {
        NodeSelection::custom(
            all_indices(d, n)
                .into_iter()
                .filter(|i| !self.contains(i))
                .collect(),
        )
    }
}

/// Nodes with `‖I‖ <= d + n - 1`; there are `C(d+n-1, n)` of them.
pub fn simplicial_indices(d: usize, n: usize) -> NodeSelection {
    NodeSelection::by_norm(d, n, d + n - 1, SelectionKind::Simplicial)
}

/// Nodes with `‖I‖ <= d + n`; there are `C(d+n, n) - n` of them.
pub fn supra_simplicial_indices(d: usize, n: usize) -> NodeSelection {
    NodeSelection::by_norm(d, n, d + n, SelectionKind::SupraSimplicial)
}

pub fn simplicial_count(d: usize, n: usize) -> usize {
    binomial(d + n - 1, n)
}

pub fn supra_simplicial_count(d: usize, n: usize) -> usize {
    binomial(d + n, n) - n
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum FailureKind {
    /// The chosen hyperplanes do not meet in a single point.
    NotTransversal { rank: usize },
    /// The node also lies on another hyperplane of `color` at `position`.
    ExtraIncidence { color: usize, position: usize },
    /// Two index tuples give the same point.
    Coincident { other: MultiIndex },
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ValidationFailure {
    pub index: MultiIndex,
    pub kind: FailureKind,
}

impl fmt::Display for ValidationFailure {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match &self.kind {
            FailureKind::NotTransversal { rank } => write!(
                f,
                "hyperplanes {} are not transversal (rank {rank})",
                self.index
            ),
            FailureKind::ExtraIncidence { color, position } => write!(
                f,
                "node {} also lies on hyperplane {position} of color {}",
                self.index,
                color + 1
            ),
            FailureKind::Coincident { other } => {
                write!(f, "nodes {} and {other} coincide", self.index)
            }
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ValidationReport {
    pub failures: Vec<ValidationFailure>,
    pub node_count: usize,
}

impl ValidationReport {
    pub fn is_valid(&self) -> bool {
        self.failures.is_empty()
    }
}

/// `n` colors of `d` linear forms in `n + 1` variables.
#[derive(Clone, Debug)]
pub struct Cage {
    n: usize,
    d: usize,
    field: Field,
    groups: Vec<Vec<LinearForm>>,
    nodes: Option<Vec<Node>>,
}

impl PartialEq for Cage {
    fn eq(&self, other: &Self) -> bool {
        self.field == other.field && self.groups == other.groups
    }
}

impl Cage {
    /// Checks shapes only; call [`Cage::validate`] before using nodes.
    pub fn new(field: &Field, groups: Vec<Vec<LinearForm>>) -> Result<Self> {
        let n = groups.len();
        if n == 0 {
            return Err(Error::InvalidCage("no colors".into()));
        }
        let d = groups[0].len();
        if d == 0 {
            return Err(Error::InvalidCage("empty color group".into()));
        }
        for (j, g) in groups.iter().enumerate() {
            if g.len() != d {
                return Err(Error::InvalidCage(format!(
                    "color {} has {} hyperplanes, expected {d}",
                    j + 1,
                    g.len()
                )));
            }
            for form in g {
                if form.num_vars() != n + 1 {
                    return Err(Error::InvalidCage(format!(
                        "form in {} variables, expected {}",
                        form.num_vars(),
                        n + 1
                    )));
                }
                if form.field() != field {
                    return Err(Error::FieldMismatch);
                }
            }
        }
        Ok(Cage {
            n,
            d,
            field: field.clone(),
            groups,
            nodes: None,
        })
    }

    /// Builds and validates, failing with the first validation failure.
    pub fn new_validated(field: &Field, groups: Vec<Vec<LinearForm>>) -> Result<Self> {
        let mut cage = Cage::new(field, groups)?;
        let report = cage.validate();
        match report.failures.first() {
            None => Ok(cage),
            Some(f) => Err(Error::InvalidCage(f.to_string())),
        }
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn d(&self) -> usize {
        self.d
    }

    pub fn field(&self) -> &Field {
        &self.field
    }

    pub fn groups(&self) -> &[Vec<LinearForm>] {
        &self.groups
    }

    /// Form `L_{color+1, position}` (position 1-based).
    pub fn form(&self, color: usize, position: usize) -> &LinearForm {
        &self.groups[color][position - 1]
    }

    pub fn is_validated(&self) -> bool {
        self.nodes.is_some()
    }

    /// Enumerates all index tuples, solving each exactly. Caches the nodes on success.
    pub fn validate(&mut self) -> ValidationReport {
        let mut failures = Vec::new();
        let mut nodes = Vec::with_capacity(self.d.pow(self.n as u32));
        let mut seen: HashMap<Vec<FieldElement>, MultiIndex> = HashMap::new();
        for index in all_indices(self.d, self.n) {
            let rows: Vec<Vec<FieldElement>> = index
                .entries()
                .iter()
                .enumerate()
                .map(|(j, &i)| self.form(j, i).coeffs().to_vec())
                .collect();
            let system = Matrix::from_rows(&self.field, self.n + 1, rows).expect("shape checked");
            let kernel = system.kernel_basis();
            if kernel.dim() != 1 {
                failures.push(ValidationFailure {
                    index,
                    kind: FailureKind::NotTransversal {
                        rank: self.n + 1 - kernel.dim(),
                    },
                });
                continue;
            }
            let node = Node::new(index.clone(), &kernel.vectors()[0]).expect("nonzero kernel vector");
            for (j, group) in self.groups.iter().enumerate() {
                for (pos, form) in group.iter().enumerate() {
                    if pos + 1 == index.entries()[j] {
                        continue;
                    }
                    if form.evaluate(node.point()).expect("shape").is_zero() {
                        failures.push(ValidationFailure {
                            index: index.clone(),
                            kind: FailureKind::ExtraIncidence {
                                color: j,
                                position: pos + 1,
                            },
                        });
                    }
                }
            }
            if let Some(other) = seen.get(node.point()) {
                failures.push(ValidationFailure {
                    index: index.clone(),
                    kind: FailureKind::Coincident {
                        other: other.clone(),
                    },
                });
            } else {
                seen.insert(node.point().to_vec(), index);
            }
            nodes.push(node);
        }
        let report = ValidationReport {
            node_count: nodes.len(),
            failures,
        };
        self.nodes = report.is_valid().then_some(nodes);
        report
    }

    /// All `d^n` nodes in lexicographic index order.
    pub fn nodes(&self) -> Result<&[Node]> {
        self.nodes.as_deref().ok_or(Error::NotValidated)
    }

    pub fn node(&self, index: &MultiIndex) -> Result<&Node> {
        let nodes = self.nodes()?;
        if index.len() != self.n || index.entries().iter().any(|&i| i == 0 || i > self.d) {
            return Err(Error::IndexOutOfRange(format!(
                "node {index} in a {}^{} cage",
                self.d, self.n
            )));
        }
        Ok(&nodes[index.rank_in(self.d)])
    }

    pub fn select(&self, selection: &NodeSelection) -> Result<Vec<Node>> {
        selection
            .indices()
            .iter()
            .map(|i| self.node(i).cloned())
            .collect()
    }

    /// `ℒ_j`, the product of the forms of color `color`.
    pub fn group_polynomial(&self, color: usize) -> Result<HomogPoly> {
        let group = self.groups.get(color).ok_or_else(|| {
            Error::IndexOutOfRange(format!("color {color} of {}", self.n))
        })?;
        product_of_linear_forms(group)
    }

    pub fn group_polynomials(&self) -> Vec<HomogPoly> {
        (0..self.n)
            .map(|j| self.group_polynomial(j).expect("color in range"))
            .collect()
    }

    /// `Σ_j λ_j ℒ_j`.
    pub fn pencil(&self, lambda: &[FieldElement]) -> Result<HomogPoly> {
        if lambda.len() != self.n {
            return Err(Error::Shape(format!(
                "pencil needs {} coefficients, got {}",
                self.n,
                lambda.len()
            )));
        }
        if lambda.iter().all(FieldElement::is_zero) {
            return Err(Error::DegeneratePencil);
        }
        HomogPoly::linear_combination(lambda, &self.group_polynomials())
    }

    /// Composes every form with `g^{-1}`, so nodes move by `g`. Validates the
    /// result if `self` is validated.
    pub fn transform(&self, g: &Matrix) -> Result<Cage> {
        if g.rows() != self.n + 1 || g.cols() != self.n + 1 {
            return Err(Error::Shape(format!(
                "transform must be {0}x{0}",
                self.n + 1
            )));
        }
        let g_inv = g.inverse().map_err(|_| Error::SingularTransform)?;
        let groups = self
            .groups
            .iter()
            .map(|group| {
                group
                    .iter()
                    .map(|form| {
                        let row = Matrix::from_rows(&self.field, self.n + 1, vec![form.coeffs().to_vec()])?;
                        LinearForm::new(row.mul(&g_inv)?.row(0).to_vec())
                    })
                    .collect::<Result<Vec<_>>>()
            })
            .collect::<Result<Vec<_>>>()?;
        self.rebuild(groups)
    }

    /// Reorders the hyperplanes of one color: new position `k` holds old position `perm[k]` (1-based).
    pub fn permute_color(&self, color: usize, perm: &[usize]) -> Result<Cage> {
        let mut sorted = perm.to_vec();
        sorted.sort_unstable();
        if color >= self.n || sorted != (1..=self.d).collect::<Vec<_>>() {
            return Err(Error::Shape("not a permutation of the color group".into()));
        }
        let mut groups = self.groups.clone();
        groups[color] = perm.iter().map(|&p| self.groups[color][p - 1].clone()).collect();
        self.rebuild(groups)
    }

    fn rebuild(&self, groups: Vec<Vec<LinearForm>>) -> Result<Cage> {
        let mut out = Cage::new(&self.field, groups)?;
        if self.is_validated() {
            let report = out.validate();
            if let Some(f) = report.failures.first() {
                return Err(Error::InvalidCage(f.to_string()));
            }
        }
        Ok(out)
    }

    /// Slice inside `H_{1,s}` keeping the first `d - s + 1` forms of colors `2..n`.
    pub fn slice(&self, s: usize) -> Result<Slice> {
        if s == 0 || s > self.d {
            return Err(Error::IndexOutOfRange(format!("slice {s} not in [1, {}]", self.d)));
        }
        Slice::new(self, s, self.d - s + 1)
    }

    /// Slice inside `H_{1,s}` keeping the first `width` forms of colors `2..n`.
    pub fn slice_sized(&self, s: usize, width: usize) -> Result<Slice> {
        if s == 0 || s > self.d || width == 0 || width > self.d {
            return Err(Error::IndexOutOfRange(format!(
                "slice {s} of width {width} in a cage with d = {}",
                self.d
            )));
        }
        Slice::new(self, s, width)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn q() -> Field {
        Field::rationals()
    }

    fn lines(coeffs: &[[i64; 3]]) -> Vec<LinearForm> {
        coeffs
            .iter()
            .map(|c| LinearForm::from_ints(&q(), c).unwrap())
            .collect()
    }

    fn pt(values: &[i64]) -> Vec<FieldElement> {
        values.iter().map(|&v| q().from_int(v)).collect()
    }

    fn unit_square() -> Cage {
        let groups = vec![lines(&[[1, 0, 0], [1, 0, -1]]), lines(&[[0, 1, 0], [0, 1, -1]])];
        Cage::new_validated(&q(), groups).unwrap()
    }

    #[test]
    fn index_enumeration() {
        let all = all_indices(3, 2);
        assert_eq!(all.len(), 9);
        assert_eq!(all[0].entries(), &[1, 1]);
        assert_eq!(all[1].entries(), &[1, 2]);
        assert_eq!(all[8].entries(), &[3, 3]);
        for (r, i) in all.iter().enumerate() {
            assert_eq!(i.rank_in(3), r);
        }
        let parsed: MultiIndex = "2, 3".parse().unwrap();
        assert_eq!(parsed.entries(), &[2, 3]);
        assert_eq!(parsed.to_string(), "2,3");
        assert!("0,1".parse::<MultiIndex>().is_err());
        assert!(MultiIndex::new(vec![1, 4], 3).is_err());
    }

    #[test]
    fn selection_counts() {
        for (d, n, s, a) in [(3, 3, 10, 17), (2, 3, 4, 7), (3, 2, 6, 8), (2, 2, 3, 4)] {
            assert_eq!(simplicial_indices(d, n).len(), s, "simplicial {d},{n}");
            assert_eq!(supra_simplicial_indices(d, n).len(), a, "supra {d},{n}");
        }
        for d in 1..=8 {
            for n in 1..=5 {
                let simp = simplicial_indices(d, n);
                let supra = supra_simplicial_indices(d, n);
                assert_eq!(simp.len(), simplicial_count(d, n));
                assert_eq!(supra.len(), supra_simplicial_count(d, n));
                let rim = all_indices(d, n)
                    .iter()
                    .filter(|i| i.norm() == d + n)
                    .count();
                assert_eq!(simp.len() + rim, supra.len());
                assert_eq!(
                    supra.len(),
                    crate::poly::monomial_basis(d as u32, n + 1).len() - n
                );
                assert!(simp.indices().iter().all(|i| supra.contains(i)));
            }
        }
    }

    #[test]
    fn unit_square_nodes() {
        let cage = unit_square();
        let nodes = cage.nodes().unwrap();
        assert_eq!(nodes.len(), 4);
        assert_eq!(nodes[0].point(), pt(&[0, 0, 1]).as_slice());
        assert_eq!(nodes[3].point(), pt(&[1, 1, 1]).as_slice());
        assert_eq!(nodes[3].chart(), 2);
        assert_eq!(nodes[3].affine_coords(), pt(&[1, 1]));
    }

    #[test]
    fn grid_nodes() {
        let groups = vec![
            lines(&[[1, 0, 0], [1, 0, -1], [1, 0, -2]]),
            lines(&[[0, 1, 0], [0, 1, -1], [0, 1, -2]]),
        ];
        let cage = Cage::new_validated(&q(), groups).unwrap();
        for node in cage.nodes().unwrap() {
            let i = node.index().entries();
            assert_eq!(node.point(), pt(&[i[0] as i64 - 1, i[1] as i64 - 1, 1]).as_slice());
        }
    }

    #[test]
    fn invalid_cages() {
        let mut dup = Cage::new(
            &q(),
            vec![lines(&[[1, 0, 0], [1, 0, 0]]), lines(&[[0, 1, 0], [0, 1, -1]])],
        )
        .unwrap();
        let report = dup.validate();
        assert!(!report.is_valid());
        assert!(report
            .failures
            .iter()
            .any(|f| matches!(f.kind, FailureKind::Coincident { .. })));
        assert_eq!(dup.nodes().unwrap_err(), Error::NotValidated);

        // x = 0 meets y = 0 at the origin, which y = x also passes through.
        let mut concurrent = Cage::new(
            &q(),
            vec![lines(&[[1, 0, 0], [1, 0, -1]]), lines(&[[0, 1, 0], [1, -1, 0]])],
        )
        .unwrap();
        let report = concurrent.validate();
        assert!(report.failures.iter().any(|f| f.index.entries() == [1, 1]
            && f.kind == FailureKind::ExtraIncidence { color: 1, position: 2 }));

        // parallel red and blue lines meet at infinity on a shared point
        let mut parallel = Cage::new(
            &q(),
            vec![lines(&[[1, 0, 0], [1, 0, -1]]), lines(&[[1, 0, -2], [0, 1, 0]])],
        )
        .unwrap();
        assert!(!parallel.validate().is_valid());
    }

    #[test]
    fn unvalidated_access() {
        let cage = Cage::new(
            &q(),
            vec![lines(&[[1, 0, 0], [1, 0, -1]]), lines(&[[0, 1, 0], [0, 1, -1]])],
        )
        .unwrap();
        assert_eq!(cage.nodes().unwrap_err(), Error::NotValidated);
        assert!(Cage::new(&q(), vec![lines(&[[1, 0, 0]]), lines(&[[0, 1, 0], [0, 1, 1]])]).is_err());
    }

    #[test]
    fn group_polynomials_and_pencil() {
        let cage = unit_square();
        let l1 = cage.group_polynomial(0).unwrap();
        let expected = crate::poly::homogenize(
            &crate::poly::AffinePoly::from_terms(
                &q(),
                2,
                [(vec![2, 0], q().one()), (vec![1, 0], q().from_int(-1))],
            )
            .unwrap(),
            2,
        )
        .unwrap();
        assert_eq!(l1, expected);
        let p = cage.pencil(&[q().one(), q().from_int(-1)]).unwrap();
        // (x - y)(x + y - z)
        let factored = product_of_linear_forms(&lines(&[[1, -1, 0], [1, 1, -1]])).unwrap();
        assert_eq!(p, factored);
        assert_eq!(cage.pencil(&[q().one(), q().zero()]).unwrap(), l1);
        assert_eq!(
            cage.pencil(&[q().zero(), q().zero()]).unwrap_err(),
            Error::DegeneratePencil
        );
        for node in cage.nodes().unwrap() {
            assert!(p.evaluate(node.point()).unwrap().is_zero());
        }
    }

    #[test]
    fn transform_moves_nodes() {
        let cage = unit_square();
        let g = Matrix::from_ints(&q(), &[&[2, 1, 0], &[0, 1, 3], &[1, 0, 1]]).unwrap();
        let moved = cage.transform(&g).unwrap();
        for (a, b) in cage.nodes().unwrap().iter().zip(moved.nodes().unwrap()) {
            let image = canonical_representative(&g.mul_vec(a.point()).unwrap()).unwrap();
            assert_eq!(b.point(), image.as_slice());
            assert_eq!(a.index(), b.index());
        }
        assert_eq!(cage.transform(&Matrix::identity(&q(), 3)).unwrap(), cage);
        let singular = Matrix::from_ints(&q(), &[&[1, 1, 0], &[1, 1, 0], &[0, 0, 1]]).unwrap();
        assert_eq!(cage.transform(&singular).unwrap_err(), Error::SingularTransform);
    }

    #[test]
    fn permuted_color() {
        let cage = unit_square();
        let swapped = cage.permute_color(0, &[2, 1]).unwrap();
        let a = cage.node(&MultiIndex(vec![1, 2])).unwrap();
        let b = swapped.node(&MultiIndex(vec![2, 2])).unwrap();
        assert_eq!(a.point(), b.point());
        assert!(cage.permute_color(0, &[1, 1]).is_err());
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(40))]
        #[test]
        fn random_cage_invariants(seed in any::<u64>(), n in 2usize..=3, d in 1usize..=3) {
            let generated = random_cage(seed, d, n, &q()).unwrap();
            let cage = generated.cage;
            let nodes = cage.nodes().unwrap();
            prop_assert_eq!(nodes.len(), d.pow(n as u32));
            for node in nodes {
                for (j, group) in cage.groups().iter().enumerate() {
                    let zeros = group
                        .iter()
                        .filter(|l| l.evaluate(node.point()).unwrap().is_zero())
                        .count();
                    prop_assert_eq!(zeros, 1);
                    let on = cage.form(j, node.index().entries()[j]);
                    prop_assert!(on.evaluate(node.point()).unwrap().is_zero());
                }
                for l in cage.group_polynomials() {
                    prop_assert!(l.evaluate(node.point()).unwrap().is_zero());
                }
            }
            let coeffs: Vec<Vec<FieldElement>> = cage
                .group_polynomials()
                .iter()
                .map(HomogPoly::coefficient_vector)
                .collect();
            let cols = coeffs[0].len();
            prop_assert_eq!(Matrix::from_rows(&q(), cols, coeffs).unwrap().rank(), n);
        }
    }

    #[test]
    fn canonical_form() {
        let p = canonical_representative(&pt(&[2, 4, 0])).unwrap();
        assert_eq!(p, vec![q().from_rational(crate::field::rational(1, 2)), q().one(), q().zero()]);
        assert_eq!(canonical_representative(&pt(&[0, 0])).unwrap_err(), Error::InvalidPoint);
    }
}
