use serde_json::{json, Map, Value};
use stabform::classify::{ClassificationReport, Discriminant};
use stabform::invariants::{render_vector, StructureConstants};
use stabform::{Inertia, Matrix, Scalar};

/// The outcome of one command: a JSON document, its text rendering, and
/// an optional one-line diagnostic for stderr.
#[derive(Debug, Clone, PartialEq)]
pub struct ReportDoc {
    pub value: Value,
    pub text: String,
    pub json: bool,
    pub diagnostic: Option<String>,
}

impl ReportDoc {
    pub fn new(value: Value, text: String, json: bool) -> Self {
        ReportDoc {
            value,
            text,
            json,
            diagnostic: None,
        }
    }

    pub fn error(msg: String, json: bool) -> Self {
        ReportDoc {
            value: json!({ "error": msg }),
            text: String::new(),
            json,
            diagnostic: Some(msg),
        }
    }

    /// What goes to stdout.
    pub fn output(&self) -> String {
        if self.json {
            let mut s = serde_json::to_string_pretty(&self.value).expect("values serialize");
            s.push('\n');
            s
        } else {
            self.text.clone()
        }
    }
}

pub fn scalar(s: &Scalar) -> Value {
    Value::String(s.to_string())
}

pub fn scalars(v: &[Scalar]) -> Value {
    Value::Array(v.iter().map(scalar).collect())
}

pub fn matrix(m: &Matrix) -> Value {
    Value::Array((0..m.rows()).map(|i| scalars(m.row(i))).collect())
}

pub fn inertia(i: &Inertia) -> Value {
    json!({ "positive": i.positive, "negative": i.negative, "zero": i.zero })
}

pub fn discriminant(d: &Discriminant) -> Value {
    match d {
        Discriminant::LambdaSign(s) => json!({ "kind": "lambda_sign", "sign": s }),
        Discriminant::Signature7(i) => {
            json!({ "kind": "signature7", "pair": [i.negative, i.positive] })
        }
        Discriminant::Signature8 { inertia, flipped } => json!({
            "kind": "signature8",
            "p": inertia.positive,
            "q": inertia.negative,
            "sign_normalized": flipped,
        }),
        Discriminant::None => json!({ "kind": "none" }),
    }
}

pub fn classification(r: &ClassificationReport) -> Value {
    json!({
        "n": r.n,
        "k": r.k,
        "dualized": r.dualized,
        "rank": r.rank,
        "multisymplectic": r.multisymplectic,
        "stabilizer_dim": r.stabilizer_dim,
        "stable": r.stable,
        "discriminant": discriminant(&r.discriminant),
        "type": r.form_type.as_str(),
    })
}

pub fn classification_text(r: &ClassificationReport) -> String {
    let mut out = String::new();
    let mut line = |k: &str, v: String| out.push_str(&format!("{k:<16}{v}\n"));
    line("type", r.form_type.to_string());
    line("dimension", r.n.to_string());
    line(
        "degree",
        if r.dualized {
            format!("{} (classified through its Hodge dual)", r.k)
        } else {
            r.k.to_string()
        },
    );
    line("rank", r.rank.to_string());
    line("multisymplectic", r.multisymplectic.to_string());
    line("stabilizer_dim", r.stabilizer_dim.to_string());
    line("stable", r.stable.to_string());
    line("discriminant", r.discriminant.to_string());
    out
}

/// Product table entries `e_i e_j`, rendered.
pub fn product_table(sc: &StructureConstants) -> Vec<Vec<String>> {
    let n = sc.dim();
    (0..n)
        .map(|i| {
            (0..n)
                .map(|j| render_vector(sc.basis_product(i, j)))
                .collect()
        })
        .collect()
}

pub fn structure_constants(sc: &StructureConstants) -> Value {
    let n = sc.dim();
    Value::Array(
        (0..n)
            .map(|i| Value::Array((0..n).map(|j| scalars(sc.basis_product(i, j))).collect()))
            .collect(),
    )
}

pub fn string_grid(rows: &[Vec<String>]) -> Value {
    Value::Array(
        rows.iter()
            .map(|r| Value::Array(r.iter().cloned().map(Value::String).collect()))
            .collect(),
    )
}

/// Column-aligned grid of cells, rows in basis order.
pub fn grid_text(rows: &[Vec<String>]) -> String {
    let cols = rows.first().map_or(0, Vec::len);
    let widths: Vec<usize> = (0..cols)
        .map(|j| rows.iter().map(|r| r[j].chars().count()).max().unwrap_or(0))
        .collect();
    let mut out = String::new();
    for row in rows {
        let cells: Vec<String> = row
            .iter()
            .zip(&widths)
            .map(|(c, w)| format!("{c:>w$}"))
            .collect();
        out.push_str(cells.join("  ").trim_end());
        out.push('\n');
    }
    out
}

pub fn matrix_cells(m: &Matrix) -> Vec<Vec<String>> {
    (0..m.rows())
        .map(|i| m.row(i).iter().map(|s| s.to_string()).collect())
        .collect()
}

pub fn object(entries: Vec<(&str, Value)>) -> Value {
    let mut map = Map::new();
    for (k, v) in entries {
        map.insert(k.to_string(), v);
    }
    Value::Object(map)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn grid_alignment() {
        let rows = vec![
            vec!["0".to_string(), "-e1".to_string()],
            vec!["3e2 - 3e3".to_string(), "1".to_string()],
        ];
        assert_eq!(grid_text(&rows), "        0  -e1\n3e2 - 3e3    1\n");
    }

    #[test]
    fn json_scalars_are_exact_strings() {
        let m = Matrix::from_ints(&[&[1, 0], &[0, -2]]).unwrap();
        assert_eq!(matrix(&m), json!([["1", "0"], ["0", "-2"]]));
        assert_eq!(scalar(&Scalar::ratio(3, 2)), json!("3/2"));
    }

    #[test]
    fn keys_are_sorted() {
        let v = object(vec![
            ("type", json!(1)),
            ("gram", json!(2)),
            ("n", json!(3)),
        ]);
        assert_eq!(v.to_string(), r#"{"gram":2,"n":3,"type":1}"#);
    }
}
