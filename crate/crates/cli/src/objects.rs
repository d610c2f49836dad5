//! Named constructions, addressable from the CLI and the check registry.
//!
//! * base functions: `0`, `x1`, `x2`, `x1x2`
//! * vector fields: `C`, `S0`, `vlift:<i>`, `E-dy1`, `half-y1-C`, `half-F-C`
//! * vector 1-forms: `zero`, `wagner-form:<f>`, `jv:<field>`, `fvJ:<f>`,
//!   `fvJ-over-2E:<f>`
//! * connections: `berwald`, `wagner:<f>`, `l:<form>`

use finslerlab_core::calculus::{BaseFunction, SampleGrid, ScalarField, TangentPoint, VectorField};
use finslerlab_core::connection::{berwald, l_ehresmann_connection, wagner_connection, wagner_form, EhresmannConnection};
use finslerlab_core::tangent::{fn_bracket, liouville_field, vertical_endomorphism, vertical_lift_coordinate, VectorForm};
use finslerlab_core::{FinslerStructure, GeomError, Result};
use serde_json::{json, Value};

fn unknown(kind: &str, id: &str) -> GeomError {
    GeomError::BadConfig(format!("unknown {kind} id `{id}`"))
}

pub fn base_function(id: &str) -> Result<BaseFunction> {
    Ok(match id {
        "0" => BaseFunction::constant(2, 0.0),
        "x1" => BaseFunction::coordinate(2, 0),
        "x2" => BaseFunction::coordinate(2, 1),
        "x1x2" => BaseFunction::new(2, |x| Ok(x[0] * x[1])),
        _ => return Err(unknown("base function", id)),
    })
}

/// `F = √(2E)`.
pub fn finsler_norm(f: &FinslerStructure) -> ScalarField {
    f.energy().scale(2.0).sqrt()
}

pub fn field(f: &FinslerStructure, id: &str) -> Result<VectorField> {
    let n = f.dim();
    if let Some(i) = id.strip_prefix("vlift:") {
        return match i.parse::<usize>() {
            Ok(i) if (1..=n).contains(&i) => Ok(vertical_lift_coordinate(n, i - 1)),
            _ => Err(unknown("vector field", id)),
        };
    }
    Ok(match id {
        "C" => liouville_field(n),
        "S0" => f.canonical_spray(),
        "E-dy1" => vertical_lift_coordinate(n, 0).scaled_by(f.energy()),
        "half-y1-C" => liouville_field(n).scaled_by(&ScalarField::coordinate(n, n)).scale(0.5),
        "half-F-C" => liouville_field(n).scaled_by(&finsler_norm(f)).scale(0.5),
        _ => return Err(unknown("vector field", id)),
    })
}

pub fn form(f: &FinslerStructure, id: &str) -> Result<VectorForm> {
    let n = f.dim();
    let j = vertical_endomorphism(n);
    if id == "zero" {
        return Ok(VectorForm::zero(n, 1));
    }
    if let Some(g) = id.strip_prefix("wagner-form:") {
        return Ok(wagner_form(&base_function(g)?));
    }
    if let Some(v) = id.strip_prefix("jv:") {
        return fn_bracket(&j, &field(f, v)?.into());
    }
    if let Some(g) = id.strip_prefix("fvJ-over-2E:") {
        let scale = base_function(g)?.vertical_lift() / f.energy().scale(2.0);
        return Ok(j.scaled_by(&scale));
    }
    if let Some(g) = id.strip_prefix("fvJ:") {
        return Ok(j.scaled_by(&base_function(g)?.vertical_lift()));
    }
    Err(unknown("vector form", id))
}

pub fn connection(f: &FinslerStructure, id: &str, grid: &SampleGrid) -> Result<EhresmannConnection> {
    if id == "berwald" {
        return Ok(berwald(f));
    }
    if let Some(g) = id.strip_prefix("wagner:") {
        return Ok(wagner_connection(f, &base_function(g)?).0);
    }
    if let Some(l) = id.strip_prefix("l:") {
        return l_ehresmann_connection(f, &form(f, l)?, grid);
    }
    Err(unknown("connection", id))
}

/// Evaluates a named object at `p`: fields give a vector, forms and
/// connections the matrix of their values on the coordinate frame
/// (`matrix[a][b]` is the `a`-component of the image of `e_b`).
pub fn evaluate(f: &FinslerStructure, id: &str, p: &TangentPoint) -> Result<Value> {
    let grid = SampleGrid::from_points(vec![p.clone()]);
    if let Ok(x) = field(f, id) {
        return Ok(json!({ "object": id, "kind": "vector-field", "value": x.at(p)? }));
    }
    if let Ok(k) = form(f, id) {
        return Ok(json!({ "object": id, "kind": "vector-form", "matrix": k.matrix_at(p)? }));
    }
    if let Ok(b) = base_function(id) {
        return Ok(json!({ "object": id, "kind": "base-function", "value": b.vertical_lift().evaluate(p)? }));
    }
    match connection(f, id, &grid) {
        Ok(h) => Ok(json!({ "object": id, "kind": "connection", "matrix": h.form().matrix_at(p)? })),
        Err(GeomError::BadConfig(_)) => Err(unknown("object", id)),
        Err(e) => Err(e),
    }
}
