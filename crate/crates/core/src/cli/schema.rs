//! JSON documents for presentations, modules, theta shapes and delta maps.
//!
//! Parsing walks a `serde_json::Value` by hand so that a rejected document
//! lists every violation with a path into it.

use serde_json::{json, Map, Value};

use crate::bridge::{BridgeContext, DeltaMap};
use crate::error::{Error, Result};
use crate::exactla::{Field, FieldSpec, Mat};
use crate::kron::{KroneckerModule, Submodule, ThetaShape};
use crate::polygraded::{Form, FreeModule, GradedMap, HilbPoly, Presentation};

/// Accumulates schema violations as `path: message` lines.
#[derive(Default)]
pub struct Violations(Vec<String>);

impl Violations {
    fn push(&mut self, path: &str, msg: impl Into<String>) {
        self.0.push(format!("{path}: {}", msg.into()));
    }

    fn finish<T>(self, source: &str, value: Option<T>) -> Result<T> {
        match (self.0.is_empty(), value) {
            (true, Some(v)) => Ok(v),
            (_, _) if !self.0.is_empty() => Err(Error::parse(source, self.0.join("; "))),
            _ => Err(Error::parse(source, "invalid document")),
        }
    }
}

fn get<'a>(v: &'a Value, key: &str, path: &str, errs: &mut Violations) -> Option<&'a Value> {
    let r = v.get(key);
    if r.is_none() {
        errs.push(path, format!("missing key {key:?}"));
    }
    r
}

fn as_usize(v: &Value, path: &str, errs: &mut Violations) -> Option<usize> {
    let r = v.as_u64().map(|x| x as usize);
    if r.is_none() {
        errs.push(path, "expected a nonnegative integer");
    }
    r
}

fn as_i64(v: &Value, path: &str, errs: &mut Violations) -> Option<i64> {
    let r = v.as_i64();
    if r.is_none() {
        errs.push(path, "expected an integer");
    }
    r
}

fn as_array<'a>(v: &'a Value, path: &str, errs: &mut Violations) -> Option<&'a Vec<Value>> {
    let r = v.as_array();
    if r.is_none() {
        errs.push(path, "expected an array");
    }
    r
}

fn scalar<F: Field>(field: &F, v: &Value, path: &str, errs: &mut Violations) -> Option<F::Elem> {
    let s = match v {
        Value::String(s) => s.clone(),
        Value::Number(n) if n.is_i64() => n.to_string(),
        _ => {
            errs.push(path, "expected a scalar string");
            return None;
        }
    };
    match field.parse(&s) {
        Ok(x) => Some(x),
        Err(e) => {
            errs.push(path, e.to_string());
            None
        }
    }
}

fn matrix<F: Field>(field: &F, v: &Value, rows: usize, cols: usize, path: &str, errs: &mut Violations) -> Option<Mat<F>> {
    let rs = as_array(v, path, errs)?;
    if rs.len() != rows {
        errs.push(path, format!("expected {rows} rows, got {}", rs.len()));
        return None;
    }
    let mut out = Mat::zeros(field, rows, cols);
    let mut ok = true;
    for (i, r) in rs.iter().enumerate() {
        let p = format!("{path}[{i}]");
        let Some(cs) = as_array(r, &p, errs) else {
            ok = false;
            continue;
        };
        if cs.len() != cols {
            errs.push(&p, format!("expected {cols} entries, got {}", cs.len()));
            ok = false;
            continue;
        }
        for (j, x) in cs.iter().enumerate() {
            match scalar(field, x, &format!("{p}[{j}]"), errs) {
                Some(x) => out[(i, j)] = x,
                None => ok = false,
            }
        }
    }
    ok.then_some(out)
}

/// The field named by a document, if any.
pub fn field_of(doc: &Value, source: &str) -> Result<Option<FieldSpec>> {
    match doc.get("field") {
        None | Some(Value::Null) => Ok(None),
        Some(f) => serde_json::from_value(f.clone())
            .map(Some)
            .map_err(|e| Error::parse(source, format!("$.field: {e}"))),
    }
}

fn check_field<F: Field>(field: &F, doc: &Value, source: &str, errs: &mut Violations) {
    match field_of(doc, source) {
        Ok(Some(s)) if !same_field(&s, &field.spec()) => {
            errs.push("$.field", format!("document field {s:?} differs from {:?}", field.spec()))
        }
        Err(Error::Parse { msg, .. }) => errs.0.push(msg),
        _ => {}
    }
}

fn same_field(a: &FieldSpec, b: &FieldSpec) -> bool {
    match (a, b) {
        (FieldSpec::Extension { p, e, min_poly: m1 }, FieldSpec::Extension { p: q, e: f, min_poly: m2 }) => {
            p == q && e == f && (m1.is_none() || m2.is_none() || m1 == m2)
        }
        _ => a == b,
    }
}

fn form<F: Field>(field: &F, nv: usize, v: &Value, path: &str, errs: &mut Violations) -> Option<Form<F>> {
    let deg = as_i64(get(v, "degree", path, errs)?, &format!("{path}.degree"), errs)?;
    let terms = as_array(get(v, "terms", path, errs)?, &format!("{path}.terms"), errs)?;
    let mut out = Vec::new();
    let mut ok = true;
    for (t, term) in terms.iter().enumerate() {
        let p = format!("{path}.terms[{t}]");
        let exp = get(term, "exp", &p, errs).and_then(|e| as_array(e, &format!("{p}.exp"), errs));
        let c = get(term, "coeff", &p, errs).and_then(|c| scalar(field, c, &format!("{p}.coeff"), errs));
        let (Some(exp), Some(c)) = (exp, c) else {
            ok = false;
            continue;
        };
        let e: Option<Vec<u32>> = exp.iter().map(|x| x.as_u64().map(|x| x as u32)).collect();
        match e {
            Some(e) if e.len() == nv && e.iter().map(|&x| x as i64).sum::<i64>() == deg => out.push((e, c)),
            Some(_) => {
                errs.push(&format!("{p}.exp"), format!("not a monomial of degree {deg} in {nv} variables"));
                ok = false;
            }
            None => {
                errs.push(&format!("{p}.exp"), "expected nonnegative integers");
                ok = false;
            }
        }
    }
    if !ok {
        return None;
    }
    Form::from_terms(field, nv, deg, out).ok()
}

pub fn form_to_json<F: Field>(field: &F, f: &Form<F>) -> Value {
    let terms: Vec<Value> = f
        .terms()
        .map(|(e, c)| json!({"exp": e, "coeff": field.format(c)}))
        .collect();
    json!({"degree": f.degree(), "terms": terms})
}

fn mat_to_json<F: Field>(m: &Mat<F>) -> Value {
    json!(m.to_strings())
}

/// `relations[i][j]` is the component of relation i on generator j.
pub fn parse_presentation<F: Field>(field: &F, doc: &Value, source: &str) -> Result<Presentation<F>> {
    let mut errs = Violations::default();
    check_field(field, doc, source, &mut errs);
    let nv = get(doc, "num_vars", "$", &mut errs).and_then(|v| as_usize(v, "$.num_vars", &mut errs));
    let degs = |key: &str, errs: &mut Violations| -> Option<Vec<i64>> {
        let p = format!("$.{key}");
        let arr = as_array(get(doc, key, "$", errs)?, &p, errs)?;
        arr.iter()
            .enumerate()
            .map(|(i, x)| as_i64(x, &format!("{p}[{i}]"), errs))
            .collect::<Vec<_>>()
            .into_iter()
            .collect()
    };
    let gens = degs("gen_degrees", &mut errs);
    let rels = degs("rel_degrees", &mut errs);
    let relations = get(doc, "relations", "$", &mut errs).and_then(|v| as_array(v, "$.relations", &mut errs));
    let (Some(nv), Some(gens), Some(rels), Some(relations)) = (nv, gens, rels, relations) else {
        return errs.finish(source, None);
    };
    if nv == 0 {
        errs.push("$.num_vars", "must be positive");
    }
    if relations.len() != rels.len() {
        errs.push(
            "$.relations",
            format!("{} relations for {} relation degrees", relations.len(), rels.len()),
        );
    }
    let mut entries = vec![vec![Form::zero(nv, 0); rels.len()]; gens.len()];
    for (i, rel) in relations.iter().enumerate().take(rels.len()) {
        let p = format!("$.relations[{i}]");
        let Some(row) = as_array(rel, &p, &mut errs) else { continue };
        if row.len() != gens.len() {
            errs.push(&p, format!("expected {} entries, got {}", gens.len(), row.len()));
            continue;
        }
        for (j, x) in row.iter().enumerate() {
            let Some(f) = form(field, nv, x, &format!("{p}[{j}]"), &mut errs) else { continue };
            if f.degree() != rels[i] - gens[j] {
                errs.push(&format!("{p}[{j}]"), format!("degree mismatch at ({i},{j})"));
            }
            entries[j][i] = f;
        }
    }
    if !errs.0.is_empty() {
        return errs.finish(source, None);
    }
    let map = GradedMap::new(field, FreeModule::new(nv, rels), FreeModule::new(nv, gens), entries)
        .map_err(|e| Error::parse(source, e.to_string()))?;
    Ok(Presentation::new(map))
}

pub fn presentation_to_json<F: Field>(p: &Presentation<F>) -> Value {
    let f = p.field();
    let map = p.map();
    let relations: Vec<Value> = (0..p.rels().rank())
        .map(|i| {
            Value::Array(
                (0..p.gens().rank())
                    .map(|j| form_to_json(f, map.entry(j, i)))
                    .collect(),
            )
        })
        .collect();
    json!({
        "num_vars": p.num_vars(),
        "field": f.spec(),
        "gen_degrees": p.gens().degrees,
        "rel_degrees": p.rels().degrees,
        "relations": relations,
    })
}

pub fn parse_module<F: Field>(field: &F, doc: &Value, source: &str) -> Result<KroneckerModule<F>> {
    let mut errs = Violations::default();
    check_field(field, doc, source, &mut errs);
    let a = get(doc, "a", "$", &mut errs).and_then(|v| as_usize(v, "$.a", &mut errs));
    let b = get(doc, "b", "$", &mut errs).and_then(|v| as_usize(v, "$.b", &mut errs));
    let dh = get(doc, "dimH", "$", &mut errs).and_then(|v| as_usize(v, "$.dimH", &mut errs));
    let action = get(doc, "action", "$", &mut errs).and_then(|v| as_array(v, "$.action", &mut errs));
    let (Some(a), Some(b), Some(dh), Some(action)) = (a, b, dh, action) else {
        return errs.finish(source, None);
    };
    if action.len() != dh {
        errs.push("$.action", format!("expected {dh} matrices, got {}", action.len()));
    }
    let mats: Vec<Option<Mat<F>>> = action
        .iter()
        .enumerate()
        .map(|(k, m)| matrix(field, m, b, a, &format!("$.action[{k}]"), &mut errs))
        .collect();
    if !errs.0.is_empty() {
        return errs.finish(source, None);
    }
    KroneckerModule::new(field, a, b, mats.into_iter().flatten().collect())
        .map_err(|e| Error::parse(source, e.to_string()))
}

pub fn module_to_json<F: Field>(m: &KroneckerModule<F>) -> Value {
    json!({
        "field": m.field().spec(),
        "a": m.a(),
        "b": m.b(),
        "dimH": m.dim_h(),
        "action": m.action().iter().map(mat_to_json).collect::<Vec<_>>(),
    })
}

pub fn parse_theta_shape<F: Field>(field: &F, doc: &Value, source: &str) -> Result<ThetaShape<F>> {
    let mut errs = Violations::default();
    check_field(field, doc, source, &mut errs);
    let u0 = get(doc, "u0", "$", &mut errs).and_then(|v| as_usize(v, "$.u0", &mut errs));
    let u1 = get(doc, "u1", "$", &mut errs).and_then(|v| as_usize(v, "$.u1", &mut errs));
    let g = get(doc, "G", "$", &mut errs).and_then(|v| as_array(v, "$.G", &mut errs));
    let (Some(u0), Some(u1), Some(g)) = (u0, u1, g) else {
        return errs.finish(source, None);
    };
    let mats: Vec<Option<Mat<F>>> = g
        .iter()
        .enumerate()
        .map(|(k, m)| matrix(field, m, u0, u1, &format!("$.G[{k}]"), &mut errs))
        .collect();
    if g.is_empty() {
        errs.push("$.G", "needs at least one matrix");
    }
    if !errs.0.is_empty() {
        return errs.finish(source, None);
    }
    ThetaShape::new(u0, u1, mats.into_iter().flatten().collect()).map_err(|e| Error::parse(source, e.to_string()))
}

pub fn theta_shape_to_json<F: Field>(field: &F, g: &ThetaShape<F>) -> Value {
    json!({
        "field": field.spec(),
        "u0": g.u0,
        "u1": g.u1,
        "G": g.g.iter().map(mat_to_json).collect::<Vec<_>>(),
    })
}

/// `entries` is a u0 × u1 array of forms of degree m - n.
pub fn parse_delta<F: Field>(doc: &Value, source: &str, ctx: &BridgeContext<F>) -> Result<DeltaMap<F>> {
    let field = &ctx.field;
    let mut errs = Violations::default();
    check_field(field, doc, source, &mut errs);
    let u0 = get(doc, "u0", "$", &mut errs).and_then(|v| as_usize(v, "$.u0", &mut errs));
    let u1 = get(doc, "u1", "$", &mut errs).and_then(|v| as_usize(v, "$.u1", &mut errs));
    let rows = get(doc, "entries", "$", &mut errs).and_then(|v| as_array(v, "$.entries", &mut errs));
    let (Some(u0), Some(u1), Some(rows)) = (u0, u1, rows) else {
        return errs.finish(source, None);
    };
    if rows.len() != u0 {
        errs.push("$.entries", format!("expected {u0} rows, got {}", rows.len()));
    }
    let e = ctx.m - ctx.n;
    let mut entries = vec![vec![Form::zero(ctx.nv(), e); u1]; u0];
    for (i, row) in rows.iter().enumerate().take(u0) {
        let p = format!("$.entries[{i}]");
        let Some(row) = as_array(row, &p, &mut errs) else { continue };
        if row.len() != u1 {
            errs.push(&p, format!("expected {u1} entries, got {}", row.len()));
            continue;
        }
        for (j, x) in row.iter().enumerate() {
            let Some(f) = form(field, ctx.nv(), x, &format!("{p}[{j}]"), &mut errs) else { continue };
            if f.degree() != e {
                errs.push(&format!("{p}[{j}]"), format!("degree mismatch at ({i},{j})"));
            }
            entries[i][j] = f;
        }
    }
    if !errs.0.is_empty() {
        return errs.finish(source, None);
    }
    DeltaMap::new(ctx, u0, u1, entries).map_err(|e| Error::parse(source, e.to_string()))
}

pub fn delta_to_json<F: Field>(field: &F, d: &DeltaMap<F>) -> Value {
    json!({
        "field": field.spec(),
        "u0": d.u0,
        "u1": d.u1,
        "entries": d.entries.iter()
            .map(|r| r.iter().map(|f| form_to_json(field, f)).collect::<Vec<_>>())
            .collect::<Vec<_>>(),
    })
}

/// Bases of V' ⊆ V and W' ⊆ W as row-major row vectors.
pub fn submodule_to_json<F: Field>(s: &Submodule<F>) -> Value {
    let (v, w) = s.dims();
    json!({"dim_v": v, "dim_w": w, "v": mat_to_json(&s.v), "w": mat_to_json(&s.w)})
}

pub fn hp_to_json(p: &HilbPoly) -> Value {
    serde_json::to_value(p).unwrap_or(Value::Null)
}

pub fn ctx_to_json<F: Field>(ctx: &BridgeContext<F>) -> Value {
    let mut m = Map::new();
    m.insert("r".into(), json!(ctx.r));
    m.insert("field".into(), json!(ctx.field.spec()));
    m.insert("n".into(), json!(ctx.n));
    m.insert("m".into(), json!(ctx.m));
    m.insert("degree_cap".into(), json!(ctx.degree_cap));
    m.insert("theta_budget".into(), json!(ctx.theta_budget));
    m.insert("max_power".into(), json!(ctx.max_power));
    m.insert("seed".into(), json!(ctx.seed));
    Value::Object(m)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactla::{ExtField, PrimeField};

    #[test]
    fn round_trips() {
        let f = PrimeField::new(5).unwrap();
        let x = Form::var(&f, 2, 0);
        let y = Form::var(&f, 2, 1);
        let p = Presentation::quotient(&f, 2, vec![x.mul(&f, &y), y.scale(&f, &3).mul(&f, &y)]).unwrap();
        let back = parse_presentation(&f, &presentation_to_json(&p), "p").unwrap();
        assert_eq!(back, p);
        let m = KroneckerModule::from_i64(&f, 1, 2, &[&[&[1], &[0]], &[&[0], &[4]]]).unwrap();
        assert_eq!(parse_module(&f, &module_to_json(&m), "m").unwrap(), m);
        let q = ExtField::new(2, 3).unwrap();
        let mut rng = <rand_chacha::ChaCha8Rng as rand_chacha::rand_core::SeedableRng>::seed_from_u64(1);
        let g = ThetaShape::random(&q, 2, 1, 3, &mut rng);
        assert_eq!(parse_theta_shape(&q, &theta_shape_to_json(&q, &g), "g").unwrap(), g);
        let ctx = BridgeContext::new(&f, 1, 0, 1).unwrap();
        let d = DeltaMap::new(&ctx, 1, 2, vec![vec![x.clone(), y.clone()]]).unwrap();
        assert_eq!(parse_delta(&delta_to_json(&f, &d), "d", &ctx).unwrap(), d);
    }

    #[test]
    fn rejections_name_the_offending_place() {
        let f = PrimeField::new(2).unwrap();
        let doc = json!({"a": 1, "b": 2, "dimH": 2, "action": [[["1"], ["0"]], [["1", "0"]]]});
        let Err(Error::Parse { msg, .. }) = parse_module(&f, &doc, "m.json") else {
            panic!()
        };
        assert!(msg.contains("$.action[1]"), "{msg}");
        let doc = json!({
            "num_vars": 2, "gen_degrees": [0], "rel_degrees": [2],
            "relations": [[{"degree": 1, "terms": [{"exp": [1, 0], "coeff": "1"}]}]]
        });
        let Err(Error::Parse { msg, .. }) = parse_presentation(&f, &doc, "p.json") else {
            panic!()
        };
        assert!(msg.contains("degree mismatch at (0,0)"), "{msg}");
        let doc = json!({"b": -1, "dimH": 1, "action": []});
        let Err(Error::Parse { msg, .. }) = parse_module(&f, &doc, "m.json") else {
            panic!()
        };
        assert!(msg.contains("\"a\"") && msg.contains("$.b"), "{msg}");
    }
}
