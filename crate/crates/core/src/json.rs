//! JSON encoding of fields, cages, polynomials, varieties, tangents and reports.
//!
//! Every document carries `"schema": "cagekit/1"`. Rationals are strings
//! `"p/q"` (or `"p"`); elements of an extension field are arrays of such
//! strings, the coefficients of `1, t, t^2, ...`. Decoding errors name the
//! JSON path of the offending value.

use serde_json::{json, Map, Value};

use crate::cage::{Cage, MultiIndex};
use crate::error::{Error, Result};
use crate::field::{format_rational, parse_rational, Field, FieldElement, FieldKind, Rational};
use crate::inscribe::{LambdaMatrix, TangentSubspace};
use crate::poly::{HomogPoly, LinearForm, Monomial};
use crate::verify::{CageSummary, CheckReport, VerificationReport};
use crate::viete::Configuration;

pub const SCHEMA: &str = "cagekit/1";

fn obj<'a>(v: &'a Value, path: &str) -> Result<&'a Map<String, Value>> {
    v.as_object().ok_or_else(|| Error::schema(path, "expected an object"))
}

fn arr<'a>(v: &'a Value, path: &str) -> Result<&'a Vec<Value>> {
    v.as_array().ok_or_else(|| Error::schema(path, "expected an array"))
}

fn field_of<'a>(m: &'a Map<String, Value>, key: &str, path: &str) -> Result<&'a Value> {
    m.get(key)
        .ok_or_else(|| Error::schema(format!("{path}.{key}"), "missing field"))
}

fn usize_of(m: &Map<String, Value>, key: &str, path: &str) -> Result<usize> {
    field_of(m, key, path)?
        .as_u64()
        .map(|x| x as usize)
        .ok_or_else(|| Error::schema(format!("{path}.{key}"), "expected a non-negative integer"))
}

fn check_schema(m: &Map<String, Value>, path: &str) -> Result<()> {
    match m.get("schema").and_then(Value::as_str) {
        Some(SCHEMA) => Ok(()),
        Some(other) => Err(Error::schema(format!("{path}.schema"), format!("unsupported schema {other:?}"))),
        None => Err(Error::schema(format!("{path}.schema"), format!("missing, expected {SCHEMA:?}"))),
    }
}

fn rational_from(v: &Value, path: &str) -> Result<Rational> {
    match v {
        Value::String(s) => parse_rational(s).map_err(|e| Error::schema(path, e.to_string())),
        Value::Number(n) if n.is_i64() => Ok(crate::field::int(n.as_i64().expect("checked"))),
        _ => Err(Error::schema(path, "expected a rational string such as \"-3/4\"")),
    }
}

pub fn field_to_json(field: &Field) -> Value {
    let d = field.descriptor();
    match d.kind() {
        FieldKind::Rationals => json!({"kind": "rationals"}),
        FieldKind::Extension => json!({
            "kind": "extension",
            "label": d.label(),
            "min_poly": d.min_poly().iter().map(format_rational).collect::<Vec<_>>(),
        }),
    }
}

pub fn field_from_json(v: &Value, path: &str) -> Result<Field> {
    let m = obj(v, path)?;
    match field_of(m, "kind", path)?.as_str() {
        Some("rationals") => Ok(Field::rationals()),
        Some("extension") => {
            let mp = arr(field_of(m, "min_poly", path)?, &format!("{path}.min_poly"))?
                .iter()
                .enumerate()
                .map(|(i, c)| rational_from(c, &format!("{path}.min_poly[{i}]")))
                .collect::<Result<Vec<_>>>()?;
            let label = m.get("label").and_then(Value::as_str).unwrap_or("extension");
            Field::extension(mp, label).map_err(|e| Error::schema(format!("{path}.min_poly"), e.to_string()))
        }
        _ => Err(Error::schema(format!("{path}.kind"), "expected \"rationals\" or \"extension\"")),
    }
}

pub fn scalar_to_json(x: &FieldElement) -> Value {
    match x.to_rational() {
        Some(r) if x.field().is_rationals() => Value::String(format_rational(r)),
        _ => Value::Array(
            x.coeffs()
                .iter()
                .map(|c| Value::String(format_rational(c)))
                .collect(),
        ),
    }
}

pub fn scalar_from_json(v: &Value, field: &Field, path: &str) -> Result<FieldElement> {
    if field.is_rationals() {
        return Ok(field.from_rational(rational_from(v, path)?));
    }
    match v {
        Value::Array(items) => {
            if items.len() > field.degree() {
                return Err(Error::schema(
                    path,
                    format!("{} coefficients for a degree-{} field", items.len(), field.degree()),
                ));
            }
            let coeffs = items
                .iter()
                .enumerate()
                .map(|(i, c)| rational_from(c, &format!("{path}[{i}]")))
                .collect::<Result<Vec<_>>>()?;
            Ok(field.element(coeffs))
        }
        _ => Ok(field.from_rational(rational_from(v, path)?)),
    }
}

fn vector_to_json(v: &[FieldElement]) -> Value {
    Value::Array(v.iter().map(scalar_to_json).collect())
}

fn vector_from_json(v: &Value, field: &Field, path: &str) -> Result<Vec<FieldElement>> {
    arr(v, path)?
        .iter()
        .enumerate()
        .map(|(i, x)| scalar_from_json(x, field, &format!("{path}[{i}]")))
        .collect()
}

fn matrix_from_json(v: &Value, field: &Field, path: &str) -> Result<Vec<Vec<FieldElement>>> {
    arr(v, path)?
        .iter()
        .enumerate()
        .map(|(i, r)| vector_from_json(r, field, &format!("{path}[{i}]")))
        .collect()
}

pub fn cage_to_json(cage: &Cage) -> Value {
    json!({
        "schema": SCHEMA,
        "n": cage.n(),
        "d": cage.d(),
        "field": field_to_json(cage.field()),
        "groups": cage
            .groups()
            .iter()
            .map(|g| g.iter().map(|l| vector_to_json(l.coeffs())).collect::<Vec<_>>())
            .collect::<Vec<_>>(),
    })
}

/// Decodes a cage without validating it.
pub fn cage_from_json(v: &Value) -> Result<Cage> {
    cage_from_json_at(v, "$")
}

fn cage_from_json_at(v: &Value, path: &str) -> Result<Cage> {
    let m = obj(v, path)?;
    check_schema(m, path)?;
    let field = field_from_json(field_of(m, "field", path)?, &format!("{path}.field"))?;
    let n = usize_of(m, "n", path)?;
    let d = usize_of(m, "d", path)?;
    let gpath = format!("{path}.groups");
    let groups_v = arr(field_of(m, "groups", path)?, &gpath)?;
    if groups_v.len() != n {
        return Err(Error::schema(&gpath, format!("{} colors but n = {n}", groups_v.len())));
    }
    let mut groups = Vec::with_capacity(n);
    for (j, g) in groups_v.iter().enumerate() {
        let cpath = format!("{gpath}[{j}]");
        let forms_v = arr(g, &cpath)?;
        if forms_v.len() != d {
            return Err(Error::schema(&cpath, format!("{} hyperplanes but d = {d}", forms_v.len())));
        }
        let mut forms = Vec::with_capacity(d);
        for (i, f) in forms_v.iter().enumerate() {
            let fpath = format!("{cpath}[{i}]");
            let coeffs = vector_from_json(f, &field, &fpath)?;
            if coeffs.len() != n + 1 {
                return Err(Error::schema(&fpath, format!("{} coefficients, expected {}", coeffs.len(), n + 1)));
            }
            forms.push(LinearForm::new(coeffs).map_err(|e| Error::schema(&fpath, e.to_string()))?);
        }
        groups.push(forms);
    }
    Cage::new(&field, groups)
}

/// Node list of a validated cage.
pub fn nodes_to_json(cage: &Cage) -> Result<Value> {
    Ok(json!({
        "schema": SCHEMA,
        "nodes": cage
            .nodes()?
            .iter()
            .map(|p| json!({"index": p.index().to_string(), "coords": vector_to_json(p.point())}))
            .collect::<Vec<_>>(),
    }))
}

pub fn poly_to_json(p: &HomogPoly) -> Value {
    json!({
        "field": field_to_json(p.field()),
        "vars": p.num_vars(),
        "degree": p.degree(),
        "terms": p
            .terms()
            .iter()
            .map(|(m, c)| json!({"exp": m.exponents(), "coeff": scalar_to_json(c)}))
            .collect::<Vec<_>>(),
    })
}

pub fn poly_from_json(v: &Value, path: &str) -> Result<HomogPoly> {
    let m = obj(v, path)?;
    let field = field_from_json(field_of(m, "field", path)?, &format!("{path}.field"))?;
    let vars = usize_of(m, "vars", path)?;
    let degree = usize_of(m, "degree", path)? as u32;
    let tpath = format!("{path}.terms");
    let terms = arr(field_of(m, "terms", path)?, &tpath)?
        .iter()
        .enumerate()
        .map(|(i, t)| {
            let ipath = format!("{tpath}[{i}]");
            let tm = obj(t, &ipath)?;
            let exps = arr(field_of(tm, "exp", &ipath)?, &format!("{ipath}.exp"))?
                .iter()
                .map(|e| {
                    e.as_u64()
                        .map(|x| x as u32)
                        .ok_or_else(|| Error::schema(format!("{ipath}.exp"), "expected exponents"))
                })
                .collect::<Result<Vec<_>>>()?;
            let c = scalar_from_json(field_of(tm, "coeff", &ipath)?, &field, &format!("{ipath}.coeff"))?;
            Ok((Monomial::new(exps), c))
        })
        .collect::<Result<Vec<_>>>()?;
    HomogPoly::from_terms(&field, vars, degree, terms).map_err(|e| Error::schema(tpath, e.to_string()))
}

pub fn variety_to_json(cage: &Cage, lambda: &LambdaMatrix) -> Value {
    json!({
        "schema": SCHEMA,
        "cage": cage_to_json(cage),
        "lambda": lambda.rows().iter().map(|r| vector_to_json(r)).collect::<Vec<_>>(),
        "s": lambda.s(),
    })
}

/// Decodes and validates the cage, then the coefficient rows.
pub fn variety_from_json(v: &Value) -> Result<(Cage, LambdaMatrix)> {
    let m = obj(v, "$")?;
    check_schema(m, "$")?;
    let mut cage = cage_from_json_at(field_of(m, "cage", "$")?, "$.cage")?;
    if let Some(f) = cage.validate().failures.first() {
        return Err(Error::InvalidCage(f.to_string()));
    }
    let rows = matrix_from_json(field_of(m, "lambda", "$")?, cage.field(), "$.lambda")?;
    if let Some(s) = m.get("s").and_then(Value::as_u64) {
        if s as usize != rows.len() {
            return Err(Error::schema("$.s", format!("s = {s} but {} lambda rows", rows.len())));
        }
    }
    if let Some((i, _)) = rows.iter().enumerate().find(|(_, r)| r.len() != cage.n()) {
        return Err(Error::schema(format!("$.lambda[{i}]"), format!("expected {} entries", cage.n())));
    }
    let lambda = LambdaMatrix::new(cage.field(), cage.n(), rows)?;
    Ok((cage, lambda))
}

pub fn tangent_to_json(t: &TangentSubspace) -> Value {
    json!({
        "node": t.node().to_string(),
        "chart": t.chart(),
        "basis": t.basis().vectors().iter().map(|v| vector_to_json(v)).collect::<Vec<_>>(),
    })
}

pub fn tangent_from_json(v: &Value, cage: &Cage, path: &str) -> Result<TangentSubspace> {
    let m = obj(v, path)?;
    let index: MultiIndex = field_of(m, "node", path)?
        .as_str()
        .ok_or_else(|| Error::schema(format!("{path}.node"), "expected a string like \"1,2\""))?
        .parse()?;
    let node = cage.node(&index)?;
    let basis = matrix_from_json(field_of(m, "basis", path)?, cage.field(), &format!("{path}.basis"))?;
    if let Some(c) = m.get("chart").and_then(Value::as_u64) {
        if c as usize != node.chart() {
            return Err(Error::schema(format!("{path}.chart"), "chart does not match the node"));
        }
    }
    TangentSubspace::new(node, basis)
}

fn check_to_json(c: &CheckReport) -> Value {
    let mut m = Map::new();
    m.insert("name".into(), json!(c.name));
    m.insert("pass".into(), json!(c.pass));
    m.insert("ranks".into(), json!(c.ranks));
    if let Some(w) = &c.witness {
        m.insert("witness".into(), poly_to_json(w));
    }
    if let Some(d) = &c.detail {
        m.insert("detail".into(), json!(d));
    }
    Value::Object(m)
}

fn check_from_json(v: &Value, path: &str) -> Result<CheckReport> {
    let m = obj(v, path)?;
    let name = field_of(m, "name", path)?
        .as_str()
        .ok_or_else(|| Error::schema(format!("{path}.name"), "expected a string"))?
        .to_string();
    let pass = field_of(m, "pass", path)?
        .as_bool()
        .ok_or_else(|| Error::schema(format!("{path}.pass"), "expected a boolean"))?;
    let rpath = format!("{path}.ranks");
    let ranks = obj(field_of(m, "ranks", path)?, &rpath)?
        .iter()
        .map(|(k, v)| {
            v.as_u64()
                .map(|x| (k.clone(), x as usize))
                .ok_or_else(|| Error::schema(format!("{rpath}.{k}"), "expected an integer"))
        })
        .collect::<Result<_>>()?;
    let witness = m
        .get("witness")
        .map(|w| poly_from_json(w, &format!("{path}.witness")))
        .transpose()?;
    let detail = m.get("detail").and_then(Value::as_str).map(str::to_string);
    Ok(CheckReport {
        name,
        pass,
        ranks,
        witness,
        detail,
    })
}

/// Report document; `cage` is embedded when given, timing only when `timing` is set.
pub fn report_to_json(report: &VerificationReport, cage: Option<&Cage>, timing: bool) -> Value {
    let mut m = Map::new();
    m.insert("schema".into(), json!(SCHEMA));
    m.insert(
        "summary".into(),
        json!({"n": report.cage.n, "d": report.cage.d, "field": report.cage.field}),
    );
    if let Some(c) = cage {
        m.insert("cage".into(), cage_to_json(c));
    }
    m.insert("checks".into(), Value::Array(report.checks.iter().map(check_to_json).collect()));
    m.insert("pass".into(), json!(report.pass()));
    if timing {
        if let Some(t) = report.timing_ms {
            m.insert("timing_ms".into(), json!(t as u64));
        }
    }
    Value::Object(m)
}

pub fn report_from_json(v: &Value) -> Result<VerificationReport> {
    let m = obj(v, "$")?;
    check_schema(m, "$")?;
    let s = obj(field_of(m, "summary", "$")?, "$.summary")?;
    let cage = CageSummary {
        n: usize_of(s, "n", "$.summary")?,
        d: usize_of(s, "d", "$.summary")?,
        field: field_of(s, "field", "$.summary")?
            .as_str()
            .ok_or_else(|| Error::schema("$.summary.field", "expected a string"))?
            .to_string(),
    };
    let checks = arr(field_of(m, "checks", "$")?, "$.checks")?
        .iter()
        .enumerate()
        .map(|(i, c)| check_from_json(c, &format!("$.checks[{i}]")))
        .collect::<Result<Vec<_>>>()?;
    let timing_ms = m.get("timing_ms").and_then(Value::as_u64).map(u128::from);
    Ok(VerificationReport {
        cage,
        checks,
        timing_ms,
    })
}

pub fn configuration_to_json(config: &Configuration) -> Value {
    json!({
        "schema": SCHEMA,
        "field": field_to_json(config.field()),
        "points": config.points().iter().map(|p| vector_to_json(p)).collect::<Vec<_>>(),
    })
}

/// `"schema"` and `"field"` are optional here; the field defaults to the rationals.
pub fn configuration_from_json(v: &Value) -> Result<Configuration> {
    let m = obj(v, "$")?;
    if m.contains_key("schema") {
        check_schema(m, "$")?;
    }
    let field = match m.get("field") {
        Some(f) => field_from_json(f, "$.field")?,
        None => Field::rationals(),
    };
    let points = matrix_from_json(field_of(m, "points", "$")?, &field, "$.points")?;
    Configuration::new(&field, points)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::cage::{axis_cage, random_cage};
    use crate::demos::demo_spec;
    use crate::inscribe::inscribe_with_tangent;
    use crate::verify::verify_cage;

    fn q() -> Field {
        Field::rationals()
    }

    #[test]
    fn cage_round_trip() {
        for seed in 0..5 {
            let cage = random_cage(seed, 3, 2, &q()).unwrap().cage;
            let text = serde_json::to_string(&cage_to_json(&cage)).unwrap();
            let back = cage_from_json(&serde_json::from_str(&text).unwrap()).unwrap();
            assert_eq!(back, cage);
        }
        let k3 = demo_spec("k3-quartic").unwrap().cage;
        let back = cage_from_json(&cage_to_json(&k3)).unwrap();
        assert_eq!(back, k3);
        assert_eq!(back.field(), k3.field());
    }

    #[test]
    fn schema_errors_name_paths() {
        let cage = random_cage(1, 2, 2, &q()).unwrap().cage;
        let mut v = cage_to_json(&cage);
        v["groups"][1][0][2] = json!("x/y");
        match cage_from_json(&v) {
            Err(Error::Schema { path, .. }) => assert_eq!(path, "$.groups[1][0][2]"),
            other => panic!("{other:?}"),
        }
        let mut v = cage_to_json(&cage);
        v["schema"] = json!("other/2");
        assert!(matches!(cage_from_json(&v), Err(Error::Schema { .. })));
        let mut v = cage_to_json(&cage);
        v.as_object_mut().unwrap().remove("field");
        match cage_from_json(&v) {
            Err(Error::Schema { path, .. }) => assert_eq!(path, "$.field"),
            other => panic!("{other:?}"),
        }
    }

    #[test]
    fn variety_and_tangent_round_trip() {
        let cage = axis_cage(&q(), &[vec![q().zero(); 2], vec![q().one(); 2]]).unwrap();
        let p = &cage.nodes().unwrap()[0];
        let tau = TangentSubspace::new(p, vec![vec![q().one(), q().from_int(2)]]).unwrap();
        let lambda = inscribe_with_tangent(&cage, p, &tau).unwrap();
        let (c2, l2) = variety_from_json(&variety_to_json(&cage, &lambda)).unwrap();
        assert_eq!(c2, cage);
        assert_eq!(l2, lambda);
        let t2 = tangent_from_json(&tangent_to_json(&tau), &cage, "$").unwrap();
        assert_eq!(t2, tau);
    }

    #[test]
    fn report_round_trip() {
        let cage = random_cage(3, 2, 2, &q()).unwrap().cage;
        let report = verify_cage(&cage).unwrap();
        let back = report_from_json(&report_to_json(&report, Some(&cage), true)).unwrap();
        assert_eq!(back, report);
        let no_time = report_to_json(&report, None, false);
        assert!(no_time.get("timing_ms").is_none());
    }

    #[test]
    fn poly_and_configuration_round_trip() {
        let spec = demo_spec("fermat-cubic-surface").unwrap();
        let p = &spec.targets[0];
        assert_eq!(&poly_from_json(&poly_to_json(p), "$").unwrap(), p);
        let config: Configuration = configuration_from_json(&json!({"points": [["1", "3"], [2, "4"]]})).unwrap();
        assert_eq!(configuration_from_json(&configuration_to_json(&config)).unwrap(), config);
    }
}
