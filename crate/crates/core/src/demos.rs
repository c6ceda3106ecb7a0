//! Worked examples over explicit number fields.

use std::collections::BTreeMap;

use serde_json::Value;

use crate::cage::{axis_cage, supra_simplicial_indices, Cage, MultiIndex};
use crate::error::{Error, Result};
use crate::field::{parse_rational, Field, FieldElement, Rational};
use crate::inscribe::{inscribe_with_tangent, TangentSubspace};
use crate::linalg::Matrix;
use crate::poly::{HomogPoly, LinearForm, Monomial};
use crate::verify::{
    complete_intersection_span_check, evaluation_matrix, smoothness_check, verify_cage_basic, CheckReport,
    VerificationReport,
};

const FIELD_DATA: &str = include_str!("../data/fields.json");

pub const DEMO_NAMES: [&str; 4] = ["fermat-conic", "k3-quartic", "fermat-cubic-surface", "cube-elliptic"];

/// A number field with named elements and the image of its generator under
/// complex conjugation.
#[derive(Clone, Debug)]
pub struct DemoField {
    pub field: Field,
    pub elements: BTreeMap<String, FieldElement>,
    pub conjugate_t: FieldElement,
}

impl DemoField {
    pub fn get(&self, name: &str) -> &FieldElement {
        &self.elements[name]
    }

    /// Complex conjugation applied coefficientwise.
    pub fn conjugate(&self, x: &FieldElement) -> Result<FieldElement> {
        x.apply_endomorphism(&self.conjugate_t)
    }
}

fn rationals_at(entry: &Value, key: &str) -> Result<Vec<Rational>> {
    entry[key]
        .as_array()
        .ok_or_else(|| Error::schema(format!("fields.json/{key}"), "expected an array"))?
        .iter()
        .map(|v| {
            v.as_str()
                .ok_or_else(|| Error::schema(format!("fields.json/{key}"), "expected strings"))
                .and_then(parse_rational)
        })
        .collect()
}

/// Loads `"k3"` or `"cubic"` from the shipped data.
pub fn demo_field(key: &str) -> Result<DemoField> {
    let data: Value =
        serde_json::from_str(FIELD_DATA).map_err(|e| Error::schema("fields.json", e.to_string()))?;
    let entry = &data[key];
    let label = entry["label"]
        .as_str()
        .ok_or_else(|| Error::schema(format!("fields.json/{key}"), "missing label"))?;
    let field = Field::extension(rationals_at(entry, "min_poly")?, label)?;
    let names: &[&str] = match key {
        "k3" => &["theta", "i"],
        "cubic" => &["cbrt3", "omega"],
        _ => return Err(Error::UnknownDemo(key.to_string())),
    };
    let elements = names
        .iter()
        .map(|&n| Ok((n.to_string(), field.element(rationals_at(entry, n)?))))
        .collect::<Result<_>>()?;
    let conjugate_t = field.element(rationals_at(entry, "conjugate_t")?);
    Ok(DemoField {
        field,
        elements,
        conjugate_t,
    })
}

/// A named demo: a cage, target polynomials and the coefficients expressing them.
#[derive(Clone, Debug)]
pub struct DemoSpec {
    pub name: &'static str,
    pub cage: Cage,
    /// Each target equals the pencil with the matching row of `lambda`.
    pub targets: Vec<HomogPoly>,
    pub lambda: Vec<Vec<FieldElement>>,
    pub field: Option<DemoField>,
}

fn sum_of_powers(field: &Field, vars: usize, degree: u32, last_coeff: FieldElement) -> Result<HomogPoly> {
    let terms = (0..vars).map(|k| {
        let mut e = vec![0; vars];
        e[k] = degree;
        let c = if k + 1 == vars { last_coeff.clone() } else { field.one() };
        (Monomial::new(e), c)
    });
    HomogPoly::from_terms(field, vars, degree, terms)
}

/// Forms `x_j - r w` for each root `r`, one color per affine coordinate.
fn root_cage(field: &Field, n: usize, roots: &[FieldElement]) -> Result<Cage> {
    let groups = (0..n)
        .map(|j| {
            roots
                .iter()
                .map(|r| {
                    let mut c = vec![field.zero(); n + 1];
                    c[j] = field.one();
                    c[n] = -r;
                    LinearForm::new(c)
                })
                .collect::<Result<Vec<_>>>()
        })
        .collect::<Result<Vec<_>>>()?;
    Cage::new_validated(field, groups)
}

fn fermat_conic() -> Result<DemoSpec> {
    let field = Field::extension(vec![crate::field::int(-2), crate::field::int(0), crate::field::int(1)], "Q(sqrt 2)")?;
    let half_root = field.generator()?.scale(&crate::field::rational(1, 2));
    let cage = root_cage(&field, 2, &[half_root.clone(), -&half_root])?;
    let target = sum_of_powers(&field, 3, 2, -field.one())?;
    Ok(DemoSpec {
        name: "fermat-conic",
        cage,
        targets: vec![target],
        lambda: vec![vec![field.one(), field.one()]],
        field: None,
    })
}

fn k3_quartic() -> Result<DemoSpec> {
    let k3 = demo_field("k3")?;
    let field = k3.field.clone();
    let theta = k3.get("theta");
    let i = k3.get("i");
    let roots: Vec<FieldElement> = (0..4).map(|k| theta * &i.pow(k)).collect();
    let cage = root_cage(&field, 3, &roots)?;
    Ok(DemoSpec {
        name: "k3-quartic",
        cage,
        targets: vec![sum_of_powers(&field, 4, 4, field.one())?],
        lambda: vec![vec![field.one(); 3]],
        field: Some(k3),
    })
}

fn fermat_cubic_surface() -> Result<DemoSpec> {
    let cubic = demo_field("cubic")?;
    let field = cubic.field.clone();
    let inv_cbrt3 = cubic.get("cbrt3").inverse()?;
    let omega = cubic.get("omega");
    // x_j + 3^(-1/3) ω^k w  is  x_j - r w  with r = -3^(-1/3) ω^k
    let roots: Vec<FieldElement> = (0..3).map(|k| -(&inv_cbrt3 * &omega.pow(k))).collect();
    let cage = root_cage(&field, 3, &roots)?;
    Ok(DemoSpec {
        name: "fermat-cubic-surface",
        cage,
        targets: vec![sum_of_powers(&field, 4, 3, field.one())?],
        lambda: vec![vec![field.one(); 3]],
        field: Some(cubic),
    })
}

/// Index of the node of the cube cage where the inscribed curve is built.
const CUBE_BASE: &str = "1,1,1";

fn cube_elliptic() -> Result<DemoSpec> {
    let q = Field::rationals();
    let cage = axis_cage(&q, &[vec![q.zero(); 3], vec![q.one(); 3]])?;
    let base: MultiIndex = CUBE_BASE.parse()?;
    let p = cage.node(&base)?;
    let tau = TangentSubspace::new(p, vec![vec![q.from_int(1), q.from_int(2), q.from_int(3)]])?;
    let lambda = inscribe_with_tangent(&cage, p, &tau)?;
    let targets = lambda.pencils(&cage)?;
    Ok(DemoSpec {
        name: "cube-elliptic",
        cage,
        targets,
        lambda: lambda.rows().to_vec(),
        field: None,
    })
}

pub fn demo_spec(name: &str) -> Result<DemoSpec> {
    match name {
        "fermat-conic" => fermat_conic(),
        "k3-quartic" => k3_quartic(),
        "fermat-cubic-surface" => fermat_cubic_surface(),
        "cube-elliptic" => cube_elliptic(),
        other => Err(Error::UnknownDemo(other.to_string())),
    }
}

fn named(name: &str, pass: bool, detail: Option<String>) -> CheckReport {
    CheckReport {
        name: name.to_string(),
        pass,
        ranks: BTreeMap::new(),
        witness: None,
        detail,
    }
}

/// Every node has a coordinate moved by complex conjugation.
fn real_invisibility(spec: &DemoSpec, df: &DemoField) -> Result<CheckReport> {
    let nodes = spec.cage.nodes()?;
    let mut fixed = 0;
    for node in nodes {
        let conj = node
            .point()
            .iter()
            .map(|x| df.conjugate(x))
            .collect::<Result<Vec<_>>>()?;
        if conj == node.point() {
            fixed += 1;
        }
    }
    let mut r = named("real_invisibility", fixed == 0, None);
    r.ranks.insert("nodes".into(), nodes.len());
    r.ranks.insert("real_nodes".into(), fixed);
    Ok(r)
}

/// Every quadric through the 7 supra-simplicial nodes of the 2^3 cage passes through the 8th.
fn eighth_node(cage: &Cage) -> Result<CheckReport> {
    let a = cage.select(&supra_simplicial_indices(2, 3))?;
    let last = cage.node(&"2,2,2".parse()?)?;
    let kernel = evaluation_matrix(&a, 2)?.matrix.kernel_basis();
    let mut r = named("eighth_node", true, None);
    r.ranks.insert("nodes".into(), a.len());
    r.ranks.insert("kernel_dim".into(), kernel.dim());
    for v in kernel.vectors() {
        let p = HomogPoly::from_coefficient_vector(cage.field(), 4, 2, v)?;
        if !p.evaluate(last.point())?.is_zero() {
            r.pass = false;
            r.detail = Some("a quadric through the 7 nodes misses the 8th".into());
            r.witness = Some(p);
        }
    }
    if a.len() != 7 || kernel.dim() != 3 {
        r.pass = false;
    }
    Ok(r)
}

/// Builds the demo, runs the suite and certifies its targets.
pub fn run_demo(name: &str) -> Result<VerificationReport> {
    let spec = demo_spec(name)?;
    let mut report = verify_cage_basic(&spec.cage)?;
    let start = std::time::Instant::now();
    let cage = &spec.cage;

    let mut documented = named("documented_lambda", true, None);
    for (row, target) in spec.lambda.iter().zip(&spec.targets) {
        if &cage.pencil(row)? != target {
            documented.pass = false;
            documented.detail = Some("pencil with the documented coefficients differs from the target".into());
            documented.witness = Some(target.clone());
        }
    }
    report.checks.push(documented);

    let in_span = complete_intersection_span_check(&spec.targets, cage)?;
    report.checks.push(named("target_in_span", in_span, None));

    let mut smooth = smoothness_check(cage, &spec.lambda)?;
    smooth.name = "target_smoothness".into();
    report.checks.push(smooth);

    if name == "k3-quartic" {
        let df = spec.field.as_ref().expect("k3 field");
        report.checks.push(real_invisibility(&spec, df)?);
    }
    if name == "cube-elliptic" {
        report.checks.push(eighth_node(cage)?);
        let lambda = Matrix::from_rows(cage.field(), 3, spec.lambda.clone())?;
        let mut s = named("inscribed_codimension", lambda.rank() == 2, None);
        s.ranks.insert("s".into(), lambda.rank());
        report.checks.push(s);
    }
    if let Some(t) = report.timing_ms.as_mut() {
        *t += start.elapsed().as_millis();
    }
    Ok(report)
}
