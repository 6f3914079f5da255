//! Deterministic text rendering of vectors.

use super::value::{Op, Value};
use crate::linalg::fmt_q;

/// Renders a value; `point` names base points and entries of kets.
pub fn render(v: &Value, point: &dyn Fn(&Value) -> String) -> String {
    match v {
        Value::Zero => "0".into(),
        Value::Vector(x) => format!("({})", x.iter().map(fmt_q).collect::<Vec<_>>().join(", ")),
        Value::With(_) => match (v.project(0, 2), v.project(1, 2)) {
            (Ok(a), Ok(b)) => format!("<{}, {}>", render(&a, point), render(&b, point)),
            _ => "<error>".into(),
        },
        Value::Tensor(ts) => ts
            .iter()
            .map(|(c, a, b)| format!("{} * ({} (x) {})", fmt_q(c), render(a, point), render(b, point)))
            .collect::<Vec<_>>()
            .join(" + "),
        Value::Kets(ks) => ks
            .iter()
            .map(|(c, k)| {
                let entries: Vec<String> = k.entries.iter().map(point).collect();
                format!("{} * |{}>_{}", fmt_q(c), entries.join(","), point(&k.point))
            })
            .collect::<Vec<_>>()
            .join(" + "),
        Value::Op(Op::Matrix { m, .. }) => {
            let rows: Vec<String> = (0..m.rows())
                .map(|i| format!("[{}]", (0..m.cols()).map(|j| fmt_q(m.get(i, j))).collect::<Vec<_>>().join(" ")))
                .collect();
            format!("[{}]", rows.join(" "))
        }
        Value::Op(o) => format!("{o:?}"),
    }
}

/// Renders with generic names for non-vector points.
pub fn render_plain(v: &Value) -> String {
    fn point(p: &Value) -> String {
        render(p, &point)
    }
    render(v, &point)
}
