//! Complete intersections inscribed in a cage with a prescribed tangent space at a node.
//!
//! Tangent spaces live in the affine chart of their node ([`Node::chart`]):
//! a tangent vector at `p` is a vector in `F^n` indexed by the coordinates
//! other than the chart coordinate.

use std::collections::BTreeMap;

use crate::cage::{canonical_representative, Cage, MultiIndex, Node};
use crate::error::{Error, Result};
use crate::field::{Field, FieldElement};
use crate::linalg::{Matrix, SubspaceBasis};
use crate::poly::HomogPoly;

/// `s` independent coefficient vectors `λ^(r)`; row `r` defines `Σ_j λ^(r)_j ℒ_j`.
#[derive(Clone, Debug, PartialEq)]
pub struct LambdaMatrix {
    rows: Vec<Vec<FieldElement>>,
    n: usize,
    field: Field,
}

impl LambdaMatrix {
    pub fn new(field: &Field, n: usize, rows: Vec<Vec<FieldElement>>) -> Result<Self> {
        let s = rows.len();
        let m = Matrix::from_rows(field, n, rows.clone())?;
        let rank = m.rank();
        if s == 0 || rank < s {
            return Err(Error::DegenerateVariety { rank, rows: s });
        }
        Ok(LambdaMatrix {
            rows,
            n,
            field: field.clone(),
        })
    }

    pub fn rows(&self) -> &[Vec<FieldElement>] {
        &self.rows
    }

    pub fn s(&self) -> usize {
        self.rows.len()
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn field(&self) -> &Field {
        &self.field
    }

    pub fn to_matrix(&self) -> Matrix {
        Matrix::from_rows(&self.field, self.n, self.rows.clone()).expect("checked shape")
    }

    pub fn row_span(&self) -> SubspaceBasis {
        SubspaceBasis::new(&self.field, self.n, self.rows.clone()).expect("independent rows")
    }

    pub fn same_span(&self, other: &LambdaMatrix) -> Result<bool> {
        self.row_span().same_span(&other.row_span())
    }

    /// The defining polynomials.
    pub fn pencils(&self, cage: &Cage) -> Result<Vec<HomogPoly>> {
        self.rows.iter().map(|r| cage.pencil(r)).collect()
    }
}

/// A linear subspace of the chart-local tangent space at a node.
#[derive(Clone, Debug, PartialEq)]
pub struct TangentSubspace {
    node: MultiIndex,
    chart: usize,
    basis: SubspaceBasis,
}

impl TangentSubspace {
    /// Subspace spanned by independent `vectors` in the chart of `node`.
    pub fn new(node: &Node, vectors: Vec<Vec<FieldElement>>) -> Result<Self> {
        let n = node.point().len() - 1;
        let field = node.point()[0].field();
        Ok(TangentSubspace {
            node: node.index().clone(),
            chart: node.chart(),
            basis: SubspaceBasis::new(field, n, vectors)?,
        })
    }

    fn from_basis(node: &Node, basis: SubspaceBasis) -> Self {
        TangentSubspace {
            node: node.index().clone(),
            chart: node.chart(),
            basis,
        }
    }

    pub fn node(&self) -> &MultiIndex {
        &self.node
    }

    pub fn chart(&self) -> usize {
        self.chart
    }

    pub fn basis(&self) -> &SubspaceBasis {
        &self.basis
    }

    pub fn dim(&self) -> usize {
        self.basis.dim()
    }

    /// Codimension `s = n - dim`.
    pub fn codim(&self) -> usize {
        self.basis.ambient_dim() - self.basis.dim()
    }

    pub fn same_as(&self, other: &TangentSubspace) -> Result<bool> {
        Ok(self.node == other.node && self.chart == other.chart && self.basis.same_span(&other.basis)?)
    }

    /// Homogeneous tangent vectors at the node's canonical representative:
    /// the chart coordinate is 0.
    pub fn to_homogeneous(&self) -> Vec<Vec<FieldElement>> {
        self.basis
            .vectors()
            .iter()
            .map(|v| {
                let mut w = v.clone();
                w.insert(self.chart, self.basis.field().zero());
                w
            })
            .collect()
    }

    /// Tangent subspace at `node` given homogeneous vectors `vectors` paired with
    /// the (not necessarily canonical) representative `rep` of the node.
    pub fn from_homogeneous(node: &Node, rep: &[FieldElement], vectors: &[Vec<FieldElement>]) -> Result<Self> {
        if canonical_representative(rep)? != node.point() {
            return Err(Error::Precondition(format!(
                "representative is not the point of node {}",
                node.index()
            )));
        }
        let c = node.chart();
        let pc_inv = rep[c].inverse()?;
        let local = vectors
            .iter()
            .map(|w| {
                let ratio = &w[c] * &pc_inv;
                (0..w.len())
                    .filter(|&k| k != c)
                    .map(|k| &(&w[k] - &(&ratio * &rep[k])) * &pc_inv)
                    .collect()
            })
            .collect();
        TangentSubspace::new(node, local)
    }

    /// Pushes the subspace forward along `g`, landing at the node of `target`
    /// with the same index.
    pub fn transform(&self, g: &Matrix, source: &Cage, target: &Cage) -> Result<TangentSubspace> {
        let p = source.node(&self.node)?;
        let image_rep = g.mul_vec(p.point())?;
        let vectors = self
            .to_homogeneous()
            .iter()
            .map(|w| g.mul_vec(w))
            .collect::<Result<Vec<_>>>()?;
        TangentSubspace::from_homogeneous(target.node(&self.node)?, &image_rep, &vectors)
    }
}

/// Row `j`: the chart-local differential of `ℒ_j` at `p`, computed by the product
/// rule as `(Π_{i≠I_j} L_{j,i}(p)) · dL_{j,I_j}`.
pub fn node_differentials(cage: &Cage, p: &Node) -> Result<Matrix> {
    let chart = p.chart();
    let index = p.index().entries();
    let rows = cage
        .groups()
        .iter()
        .enumerate()
        .map(|(j, group)| {
            let mut scale = cage.field().one();
            for (pos, form) in group.iter().enumerate() {
                if pos + 1 != index[j] {
                    scale = &scale * &form.evaluate(p.point())?;
                }
            }
            Ok(cage
                .form(j, index[j])
                .coeffs()
                .iter()
                .enumerate()
                .filter(|&(k, _)| k != chart)
                .map(|(_, a)| a * &scale)
                .collect())
        })
        .collect::<Result<Vec<_>>>()?;
    Matrix::from_rows(cage.field(), cage.n(), rows)
}

fn tangent_at(cage: &Cage, p: &Node, tau: &TangentSubspace) -> Result<TangentSubspace> {
    if tau.node() != p.index() {
        return Err(Error::Precondition(format!(
            "tangent given at node {} but inscribing at {}",
            tau.node(),
            p.index()
        )));
    }
    if tau.basis().ambient_dim() != cage.n() {
        return Err(Error::Shape(format!(
            "tangent vectors have {} coordinates, expected {}",
            tau.basis().ambient_dim(),
            cage.n()
        )));
    }
    if tau.chart() == p.chart() {
        return Ok(tau.clone());
    }
    Err(Error::Precondition(format!(
        "tangent is expressed in chart {} but node {} uses chart {}",
        tau.chart(),
        p.index(),
        p.chart()
    )))
}

/// The unique complete intersection `{Σ_j λ^(r)_j ℒ_j = 0}` of codimension
/// `s = n - dim tau` through all nodes whose tangent space at `p` is `tau`.
/// Rows are returned in reduced echelon form.
pub fn inscribe_with_tangent(cage: &Cage, p: &Node, tau: &TangentSubspace) -> Result<LambdaMatrix> {
    let tau = tangent_at(cage, p, tau)?;
    if tau.codim() == 0 {
        return Err(Error::NothingToInscribe);
    }
    let diff = node_differentials(cage, p)?;
    let n = cage.n();
    let field = cage.field();
    if tau.dim() == 0 {
        return LambdaMatrix::new(field, n, Matrix::identity(field, n).row_vectors());
    }
    // columns of t span tau; λ must annihilate diff · t
    let t = tau.basis().to_matrix().transpose();
    let restricted = diff.mul(&t)?;
    let left_kernel = restricted.transpose().kernel_basis();
    let canonical = SubspaceBasis::span_of(field, n, left_kernel.into_vectors())?;
    if canonical.dim() != tau.codim() {
        return Err(Error::SingularNode {
            index: p.index().to_string(),
            rank: diff.rank(),
            expected: n,
        });
    }
    LambdaMatrix::new(field, n, canonical.into_vectors())
}

/// Tangent space at `q` of the variety defined by `lambda`.
pub fn tangent_at_node(lambda: &LambdaMatrix, cage: &Cage, q: &Node) -> Result<TangentSubspace> {
    if lambda.n() != cage.n() {
        return Err(Error::Shape("lambda width does not match the cage".into()));
    }
    let jac = lambda.to_matrix().mul(&node_differentials(cage, q)?)?;
    let rank = jac.rank();
    if rank < lambda.s() {
        return Err(Error::SingularNode {
            index: q.index().to_string(),
            rank,
            expected: lambda.s(),
        });
    }
    let kernel = jac.kernel_basis();
    let basis = SubspaceBasis::span_of(cage.field(), cage.n(), kernel.into_vectors())?;
    Ok(TangentSubspace::from_basis(q, basis))
}

/// Inscribed variety and its tangent space at every node.
#[derive(Clone, Debug)]
pub struct Propagation {
    pub lambda: LambdaMatrix,
    pub tangents: BTreeMap<MultiIndex, TangentSubspace>,
}

/// Inscribes once at `p` and reads the tangent back at every node.
pub fn propagate_tangents(cage: &Cage, p: &Node, tau: &TangentSubspace) -> Result<Propagation> {
    let lambda = inscribe_with_tangent(cage, p, tau)?;
    let tangents = cage
        .nodes()?
        .iter()
        .map(|q| Ok((q.index().clone(), tangent_at_node(&lambda, cage, q)?)))
        .collect::<Result<BTreeMap<_, _>>>()?;
    Ok(Propagation { lambda, tangents })
}
