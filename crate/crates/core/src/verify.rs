//! Interpolation checks on cage nodes.
//!
//! Every check returns a [`CheckReport`] whose numbers can be recomputed from
//! the cage alone. A failing check carries a witness polynomial or a
//! human-readable detail naming the offending node.

use std::collections::{BTreeMap, HashSet};
use std::time::Instant;

use crate::cage::{
    all_indices, axis_cage, simplicial_indices, supra_simplicial_indices, Cage, MultiIndex, Node,
    NodeSelection,
};
use crate::error::{Error, Result};
use crate::field::{Field, FieldElement};
use crate::linalg::{Matrix, SubspaceBasis};
use crate::poly::{jacobian_at, monomial_basis, power_table, product_of_linear_forms, HomogPoly, LinearForm};

/// Monomial evaluations: one row per point, one column per degree-`k` monomial.
#[derive(Clone, Debug)]
pub struct EvalMatrix {
    pub matrix: Matrix,
    pub degree: u32,
    pub indices: Vec<MultiIndex>,
}

pub fn evaluation_matrix(nodes: &[Node], k: u32) -> Result<EvalMatrix> {
    let first = nodes
        .first()
        .ok_or_else(|| Error::Precondition("evaluation matrix of an empty node list".into()))?;
    let field = first.point()[0].field().clone();
    let points: Vec<&[FieldElement]> = nodes.iter().map(Node::point).collect();
    Ok(EvalMatrix {
        matrix: point_evaluation_matrix(&field, &points, k)?,
        degree: k,
        indices: nodes.iter().map(|n| n.index().clone()).collect(),
    })
}

/// Evaluation matrix of arbitrary points of the same dimension.
pub fn point_evaluation_matrix(field: &Field, points: &[&[FieldElement]], k: u32) -> Result<Matrix> {
    let vars = points.first().map_or(1, |p| p.len());
    let basis = monomial_basis(k, vars);
    let mut rows = Vec::with_capacity(points.len());
    for p in points {
        if p.len() != vars {
            return Err(Error::Shape("points of different dimensions".into()));
        }
        let powers = power_table(p, k);
        rows.push(
            basis
                .iter()
                .map(|m| {
                    m.exponents()
                        .iter()
                        .enumerate()
                        .fold(field.one(), |acc, (v, &e)| &acc * &powers[v][e as usize])
                })
                .collect(),
        );
    }
    Matrix::from_rows(field, basis.len(), rows)
}

fn check_distinct(nodes: &[Node]) -> Result<()> {
    let mut seen = HashSet::with_capacity(nodes.len());
    for n in nodes {
        if !seen.insert(n.point()) {
            return Err(Error::DuplicatePoint);
        }
    }
    Ok(())
}

/// `h_X(k)`: rank of the degree-`k` evaluation matrix; 0 for an empty set.
pub fn hilbert_function(points: &[Node], k: u32) -> Result<usize> {
    check_distinct(points)?;
    if points.is_empty() {
        return Ok(0);
    }
    Ok(evaluation_matrix(points, k)?.matrix.rank())
}

/// `h_X(0..=max_k)`. Once `h` reaches `|X|` it stays there, so later degrees are not recomputed.
pub fn hilbert_table(points: &[Node], max_k: u32) -> Result<Vec<usize>> {
    check_distinct(points)?;
    let mut out = Vec::with_capacity(max_k as usize + 1);
    for k in 0..=max_k {
        let h = match out.last() {
            Some(&prev) if prev == points.len() => prev,
            _ if points.is_empty() => 0,
            _ => evaluation_matrix(points, k)?.matrix.rank(),
        };
        out.push(h);
    }
    Ok(out)
}

/// Outcome of a single check.
#[derive(Clone, Debug, PartialEq)]
pub struct CheckReport {
    pub name: String,
    pub pass: bool,
    pub ranks: BTreeMap<String, usize>,
    pub witness: Option<HomogPoly>,
    pub detail: Option<String>,
}

impl CheckReport {
    fn new(name: &str) -> Self {
        CheckReport {
            name: name.to_string(),
            pass: true,
            ranks: BTreeMap::new(),
            witness: None,
            detail: None,
        }
    }

    fn record(&mut self, key: &str, value: usize) {
        self.ranks.insert(key.to_string(), value);
    }

    fn fail(&mut self, detail: String) {
        if self.pass {
            self.detail = Some(detail);
        }
        self.pass = false;
    }

    fn fail_with(&mut self, detail: String, witness: HomogPoly) {
        if self.witness.is_none() {
            self.witness = Some(witness);
        }
        self.fail(detail);
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CageSummary {
    pub n: usize,
    pub d: usize,
    pub field: String,
}

impl CageSummary {
    pub fn of(cage: &Cage) -> Self {
        CageSummary {
            n: cage.n(),
            d: cage.d(),
            field: cage.field().descriptor().label().to_string(),
        }
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct VerificationReport {
    pub cage: CageSummary,
    pub checks: Vec<CheckReport>,
    pub timing_ms: Option<u128>,
}

impl VerificationReport {
    pub fn pass(&self) -> bool {
        self.checks.iter().all(|c| c.pass)
    }

    pub fn check(&self, name: &str) -> Option<&CheckReport> {
        self.checks.iter().find(|c| c.name == name)
    }
}

fn group_span(cage: &Cage) -> Result<SubspaceBasis> {
    let vectors = cage
        .group_polynomials()
        .iter()
        .map(HomogPoly::coefficient_vector)
        .collect();
    SubspaceBasis::span_of(cage.field(), monomial_basis(cage.d() as u32, cage.n() + 1).len(), vectors)
}

fn poly_of(cage: &Cage, degree: u32, coeffs: &[FieldElement]) -> HomogPoly {
    HomogPoly::from_coefficient_vector(cage.field(), cage.n() + 1, degree, coeffs).expect("basis length")
}

fn first_nonvanishing<'a>(p: &HomogPoly, nodes: &'a [Node]) -> Option<&'a Node> {
    nodes
        .iter()
        .find(|n| !p.evaluate(n.point()).expect("node dimension").is_zero())
}

/// Kernel of degree-`d` evaluation at `selection` must be exactly `span{ℒ_j}`
/// and vanish on every node. With `expect_full_rank` the selection must also
/// impose independent conditions.
fn kernel_is_group_span(
    name: &str,
    cage: &Cage,
    selection: &NodeSelection,
    expect_full_rank: bool,
) -> Result<CheckReport> {
    let mut report = CheckReport::new(name);
    let nodes = cage.select(selection)?;
    let all = cage.nodes()?;
    let d = cage.d() as u32;
    let eval = evaluation_matrix(&nodes, d)?;
    let rank = eval.matrix.rank();
    let kernel = eval.matrix.kernel_basis();
    report.record("nodes", nodes.len());
    report.record("monomials", eval.matrix.cols());
    report.record("rank", rank);
    report.record("kernel_dim", kernel.dim());
    if expect_full_rank && rank != nodes.len() {
        report.fail(format!("rank {rank} < {} selected nodes", nodes.len()));
    }
    if kernel.dim() != cage.n() {
        report.fail(format!("kernel dimension {} != n = {}", kernel.dim(), cage.n()));
    }
    let span = group_span(cage)?;
    for v in kernel.vectors() {
        if !span.contains(v)? {
            report.fail_with("kernel element outside span of the group products".into(), poly_of(cage, d, v));
        }
    }
    if !kernel.contains_all(&span)? {
        report.fail("a group product is not in the kernel".into());
    }
    for v in kernel.vectors() {
        let p = poly_of(cage, d, v);
        if let Some(node) = first_nonvanishing(&p, all) {
            report.fail_with(format!("kernel element does not vanish at node {}", node.index()), p);
        }
    }
    Ok(report)
}

/// Degree-`d` forms through the supra-simplicial nodes are exactly the pencils `Σ λ_j ℒ_j`.
pub fn verify_supra_interpolation(cage: &Cage) -> Result<CheckReport> {
    kernel_is_group_span(
        "supra_interpolation",
        cage,
        &supra_simplicial_indices(cage.d(), cage.n()),
        true,
    )
}

/// Degree-`d` forms through all nodes are exactly the pencils.
pub fn verify_all_nodes_kernel(cage: &Cage) -> Result<CheckReport> {
    kernel_is_group_span("all_nodes_kernel", cage, &NodeSelection::all(cage.d(), cage.n()), false)
}

fn trivial_kernel_at_simplicial(name: &str, cage: &Cage) -> Result<CheckReport> {
    let mut report = CheckReport::new(name);
    let nodes = cage.select(&simplicial_indices(cage.d(), cage.n()))?;
    let degree = cage.d() as u32 - 1;
    let eval = evaluation_matrix(&nodes, degree)?;
    let rank = eval.matrix.rank();
    report.record("nodes", nodes.len());
    report.record("monomials", eval.matrix.cols());
    report.record("rank", rank);
    if eval.matrix.rows() != eval.matrix.cols() {
        report.fail(format!(
            "{} simplicial nodes but {} monomials",
            eval.matrix.rows(),
            eval.matrix.cols()
        ));
    }
    if rank != eval.matrix.cols() {
        let kernel = eval.matrix.kernel_basis();
        let witness = poly_of(cage, degree, &kernel.vectors()[0]);
        report.fail_with(
            format!("a nonzero degree-{degree} form vanishes on the simplicial nodes"),
            witness,
        );
    }
    Ok(report)
}

/// For a `(d+1)`-cage: no nonzero degree-`d` form vanishes on the simplicial set.
pub fn verify_simplicial_rigidity(cage: &Cage) -> Result<CheckReport> {
    trivial_kernel_at_simplicial("simplicial_rigidity", cage)
}

/// No nonzero form of degree `d - 1` vanishes on the simplicial set of a `d`-cage.
/// Vacuous for `d = 1`.
pub fn verify_degree_minimality(cage: &Cage) -> Result<CheckReport> {
    if cage.d() == 1 {
        let mut r = CheckReport::new("degree_minimality");
        r.detail = Some("vacuous for d = 1".into());
        return Ok(r);
    }
    trivial_kernel_at_simplicial("degree_minimality", cage)
}

/// `h_X(k) - h_{X1}(k) = |X2| - h_{X2}(d + e - 3 - k)` with the terms recorded.
fn cb_identity(
    name: &str,
    x: &[Node],
    x1: &[Node],
    x2: &[Node],
    k: usize,
    dual: usize,
) -> Result<CheckReport> {
    let mut report = CheckReport::new(name);
    let hx = hilbert_function(x, k as u32)?;
    let hx1 = hilbert_function(x1, k as u32)?;
    let hx2 = hilbert_function(x2, dual as u32)?;
    report.record("k", k);
    report.record("h_X", hx);
    report.record("h_X1", hx1);
    report.record("X2", x2.len());
    report.record("h_X2_dual", hx2);
    let lhs = hx as i64 - hx1 as i64;
    let rhs = x2.len() as i64 - hx2 as i64;
    if lhs != rhs {
        report.fail(format!("{hx} - {hx1} = {lhs} but {} - {hx2} = {rhs}", x2.len()));
    }
    Ok(report)
}

/// Cayley–Bacharach for the `d^2` nodes of a plane cage split as `X1 ⊔ X2`, where
/// `x2` selects `X2`. Admissible degrees are `0 <= k <= 2d - 3`.
pub fn cayley_bacharach_check(cage: &Cage, x2: &NodeSelection, k: usize) -> Result<CheckReport> {
    if cage.n() != 2 {
        return Err(Error::Precondition("Cayley-Bacharach check needs a plane cage".into()));
    }
    let top = (2 * cage.d()).checked_sub(3).ok_or(Error::DegreeOutOfRange { k, max: 0 })?;
    if k > top {
        return Err(Error::DegreeOutOfRange { k, max: top });
    }
    let all = cage.nodes()?;
    let (part2, part1): (Vec<Node>, Vec<Node>) =
        all.iter().cloned().partition(|n| x2.contains(n.index()));
    cb_identity("cayley_bacharach", all, &part1, &part2, k, top - k)
}

/// Cayley–Bacharach for `X = {f = 0} ∩ {g = 0}` with `f`, `g` products of
/// lines of degrees `d` and `e`. `in_x2(i, j)` decides whether the point
/// `f_i ∩ g_j` belongs to `X2`.
pub fn cayley_bacharach_lines(
    f: &[LinearForm],
    g: &[LinearForm],
    in_x2: impl Fn(usize, usize) -> bool,
    k: usize,
) -> Result<CheckReport> {
    let (d, e) = (f.len(), g.len());
    if d == 0 || e == 0 {
        return Err(Error::EmptyProduct);
    }
    if f.iter().chain(g).any(|l| l.num_vars() != 3) {
        return Err(Error::Precondition("curves must be plane line products".into()));
    }
    let top = (d + e).checked_sub(3).ok_or(Error::DegreeOutOfRange { k, max: 0 })?;
    if k > top {
        return Err(Error::DegreeOutOfRange { k, max: top });
    }
    let field = f[0].field();
    let mut x = Vec::with_capacity(d * e);
    let mut x1 = Vec::new();
    let mut x2 = Vec::new();
    for (i, fi) in f.iter().enumerate() {
        for (j, gj) in g.iter().enumerate() {
            let m = Matrix::from_rows(field, 3, vec![fi.coeffs().to_vec(), gj.coeffs().to_vec()])?;
            let kernel = m.kernel_basis();
            if kernel.dim() != 1 {
                return Err(Error::Precondition(format!("lines f{} and g{} coincide", i + 1, j + 1)));
            }
            let node = Node::new(MultiIndex::new(vec![i + 1, j + 1], d.max(e))?, &kernel.vectors()[0])?;
            let on_f = f.iter().filter(|l| l.evaluate(node.point()).unwrap().is_zero()).count();
            let on_g = g.iter().filter(|l| l.evaluate(node.point()).unwrap().is_zero()).count();
            if on_f != 1 || on_g != 1 {
                return Err(Error::Precondition(format!(
                    "intersection f{} ∩ g{} is not a simple point of X",
                    i + 1,
                    j + 1
                )));
            }
            if in_x2(i, j) {
                x2.push(node.clone());
            } else {
                x1.push(node.clone());
            }
            x.push(node);
        }
    }
    cb_identity("cayley_bacharach", &x, &x1, &x2, k, top - k)
}

/// `h_X(k) = Σ_s h_{X ∩ H_{1,s}}(k - s + 1)` for `0 <= k <= |X|`, `X` the node set.
pub fn fubini_slice_check(cage: &Cage) -> Result<CheckReport> {
    let mut report = CheckReport::new("fubini_slice");
    let all = cage.nodes()?;
    let max_k = all.len() as u32;
    let whole = hilbert_table(all, max_k)?;
    let parts = (1..=cage.d())
        .map(|s| {
            let layer: Vec<Node> = all
                .iter()
                .filter(|n| n.index().entries()[0] == s)
                .cloned()
                .collect();
            hilbert_table(&layer, max_k)
        })
        .collect::<Result<Vec<_>>>()?;
    report.record("degrees_checked", whole.len());
    report.record("regularity", whole.iter().position(|&h| h == all.len()).unwrap_or(whole.len()));
    for k in 0..=max_k as usize {
        let sum: usize = parts
            .iter()
            .enumerate()
            .filter(|(s, _)| *s <= k)
            .map(|(s, table)| table[k - s])
            .sum();
        if sum != whole[k] {
            report.fail(format!("k = {k}: h_X = {} but slice sum = {sum}", whole[k]));
        }
    }
    Ok(report)
}

/// Indices excluded in the counterexample: `(4,2), (4,3), (4,4)`.
pub fn counterexample_excluded() -> NodeSelection {
    NodeSelection::custom(
        [2, 3, 4]
            .iter()
            .map(|&j| MultiIndex::new(vec![4, j], 4).expect("in range"))
            .collect(),
    )
}

/// The 4x4 grid cage on `{0,1,2,3}^2`.
pub fn counterexample_cage() -> Cage {
    let q = Field::rationals();
    let points: Vec<Vec<FieldElement>> = (0..4).map(|v| vec![q.from_int(v), q.from_int(v)]).collect();
    axis_cage(&q, &points).expect("grid cage is valid")
}

/// A 13-node set other than the supra-simplicial one that fails to impose
/// independent conditions on quartics, with an explicit witness.
pub fn independence_counterexample() -> Result<CheckReport> {
    let cage = counterexample_cage();
    let mut report = CheckReport::new("independence_counterexample");
    let excluded = counterexample_excluded();
    let b = excluded.complement(4, 2);
    let b_nodes = cage.select(&b)?;
    let c_nodes = cage.select(&excluded)?;
    let a_nodes = cage.select(&supra_simplicial_indices(4, 2))?;
    let kb = evaluation_matrix(&b_nodes, 4)?.matrix.kernel_basis();
    let ka = evaluation_matrix(&a_nodes, 4)?.matrix.kernel_basis();
    report.record("B", b_nodes.len());
    report.record("A", a_nodes.len());
    report.record("kernel_dim_B", kb.dim());
    report.record("kernel_dim_A", ka.dim());

    let mut forms: Vec<LinearForm> = (1..=3).map(|i| cage.form(0, i).clone()).collect();
    forms.push(cage.form(1, 1).clone());
    let witness = product_of_linear_forms(&forms)?;
    if b_nodes.len() != 13 || a_nodes.len() != 13 {
        report.fail("B and A must both have 13 nodes".into());
    }
    if kb.dim() < 3 {
        report.fail(format!("kernel at B has dimension {} < 3", kb.dim()));
    }
    if ka.dim() != 2 {
        report.fail(format!("kernel at A has dimension {} != 2", ka.dim()));
    }
    if let Some(n) = first_nonvanishing(&witness, &b_nodes) {
        report.fail(format!("witness does not vanish at {}", n.index()));
    }
    for n in &c_nodes {
        if witness.evaluate(n.point())?.is_zero() {
            report.fail(format!("witness vanishes at excluded node {}", n.index()));
        }
    }
    if !kb.contains(&witness.coefficient_vector())? {
        report.fail("witness is not in the kernel at B".into());
    }
    report.witness = Some(witness);
    Ok(report)
}

/// The `s` pencils given by `rows` vanish at every node and their Jacobian has rank `s` there.
pub fn smoothness_check(cage: &Cage, rows: &[Vec<FieldElement>]) -> Result<CheckReport> {
    let mut report = CheckReport::new("smoothness");
    let s = rows.len();
    let lambda = Matrix::from_rows(cage.field(), cage.n(), rows.to_vec())?;
    let rank = lambda.rank();
    if s == 0 || rank < s {
        return Err(Error::DegenerateVariety { rank, rows: s });
    }
    let pencils = rows
        .iter()
        .map(|r| cage.pencil(r))
        .collect::<Result<Vec<_>>>()?;
    let nodes = cage.nodes()?;
    let mut min_rank = s;
    for node in nodes {
        for p in &pencils {
            if !p.evaluate(node.point())?.is_zero() {
                report.fail_with(format!("pencil does not vanish at node {}", node.index()), p.clone());
            }
        }
        let r = jacobian_at(&pencils, node.point())?.rank();
        min_rank = min_rank.min(r);
        if r != s {
            report.fail(format!("Jacobian rank {r} < {s} at node {}", node.index()));
        }
    }
    report.record("s", s);
    report.record("min_jacobian_rank", min_rank);
    report.record("nodes", nodes.len());
    Ok(report)
}

/// Whether every polynomial (each vanishing on all nodes) lies in `span{ℒ_j}`.
pub fn complete_intersection_span_check(polys: &[HomogPoly], cage: &Cage) -> Result<bool> {
    let nodes = cage.nodes()?;
    let span = group_span(cage)?;
    let mut all_in = true;
    for p in polys {
        if p.degree() as usize != cage.d() || p.num_vars() != cage.n() + 1 {
            return Err(Error::Precondition(format!(
                "expected a degree-{} form in {} variables",
                cage.d(),
                cage.n() + 1
            )));
        }
        if let Some(node) = first_nonvanishing(p, nodes) {
            return Err(Error::Precondition(format!(
                "polynomial does not vanish at node {}",
                node.index()
            )));
        }
        all_in &= span.contains(&p.coefficient_vector())?;
    }
    Ok(all_in)
}

/// Plane-cage partition used by [`verify_cage`]: `X2` is the last node.
fn default_partition(cage: &Cage) -> NodeSelection {
    let last = all_indices(cage.d(), cage.n()).pop().expect("nonempty");
    NodeSelection::custom(vec![last])
}

/// Validation plus every check that applies to the cage's shape.
pub fn verify_cage(cage: &Cage) -> Result<VerificationReport> {
    run_suite(cage, true)
}

/// [`verify_cage`] without the Hilbert-function identities (Fubini, Cayley–Bacharach).
pub fn verify_cage_basic(cage: &Cage) -> Result<VerificationReport> {
    run_suite(cage, false)
}

fn run_suite(cage: &Cage, hilbert: bool) -> Result<VerificationReport> {
    let start = Instant::now();
    let mut cage = cage.clone();
    let validation = cage.validate();
    let mut checks = Vec::new();
    let mut v = CheckReport::new("validation");
    v.record("nodes", validation.node_count);
    v.record("failures", validation.failures.len());
    if let Some(f) = validation.failures.first() {
        v.fail(f.to_string());
    }
    checks.push(v);
    if validation.is_valid() {
        checks.push(verify_supra_interpolation(&cage)?);
        checks.push(verify_all_nodes_kernel(&cage)?);
        checks.push(verify_degree_minimality(&cage)?);
        if hilbert && cage.n() >= 2 {
            checks.push(fubini_slice_check(&cage)?);
        }
        if hilbert && cage.n() == 2 && cage.d() >= 2 {
            let x2 = default_partition(&cage);
            let mut cb = CheckReport::new("cayley_bacharach");
            for k in 0..=2 * cage.d() - 3 {
                let r = cayley_bacharach_check(&cage, &x2, k)?;
                if !r.pass {
                    cb.fail(r.detail.clone().unwrap_or_default());
                }
                cb.record(&format!("h_X({k})"), r.ranks["h_X"]);
            }
            checks.push(cb);
        }
        let f = cage.field();
        let ones = vec![vec![f.one(); cage.n()]];
        let mut hyper = smoothness_check(&cage, &ones)?;
        hyper.name = "smoothness_hypersurface".into();
        checks.push(hyper);
        let identity = Matrix::identity(f, cage.n()).row_vectors();
        let mut points = smoothness_check(&cage, &identity)?;
        points.name = "smoothness_complete_intersection".into();
        checks.push(points);
    }
    Ok(VerificationReport {
        cage: CageSummary::of(&cage),
        checks,
        timing_ms: Some(start.elapsed().as_millis()),
    })
}
