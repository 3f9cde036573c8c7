//! Plain-text rendering of reports.

use serde_json::Value;

fn is_matrix(v: &Value) -> bool {
    v.get("entries").is_some() && v.get("rows").is_some()
}

fn scalar(v: &Value) -> String {
    match v {
        Value::String(s) => s.clone(),
        other => other.to_string(),
    }
}

fn matrix(v: &Value, indent: &str, out: &mut String) {
    let rows: Vec<Vec<String>> = v["entries"]
        .as_array()
        .map(|rows| rows.iter().map(|r| r.as_array().map_or(vec![], |r| r.iter().map(scalar).collect())).collect())
        .unwrap_or_default();
    let width = rows.iter().flatten().map(String::len).max().unwrap_or(1);
    for r in rows {
        let cells: Vec<String> = r.iter().map(|c| format!("{c:>width$}")).collect();
        out.push_str(&format!("{indent}{}\n", cells.join(" ")));
    }
}

fn value(key: &str, v: &Value, indent: &str, out: &mut String) {
    match v {
        Value::Object(_) if is_matrix(v) => {
            out.push_str(&format!("{indent}{key}:\n"));
            matrix(v, &format!("{indent}  "), out);
        }
        Value::Object(map) => {
            out.push_str(&format!("{indent}{key}:\n"));
            for (k, inner) in map {
                value(k, inner, &format!("{indent}  "), out);
            }
        }
        Value::Array(items) if items.iter().all(|i| !i.is_object()) => {
            let parts: Vec<String> = items.iter().map(scalar).collect();
            out.push_str(&format!("{indent}{key}: [{}]\n", parts.join(", ")));
        }
        Value::Array(items) => {
            out.push_str(&format!("{indent}{key}:\n"));
            for (i, inner) in items.iter().enumerate() {
                value(&i.to_string(), inner, &format!("{indent}  "), out);
            }
        }
        other => out.push_str(&format!("{indent}{key}: {}\n", scalar(other))),
    }
}

fn checks(report: &Value, out: &mut String) {
    for c in report["checks"].as_array().into_iter().flatten() {
        let status = scalar(&c["status"]).to_uppercase();
        out.push_str(&format!("{status:<4} {}\n", scalar(&c["name"])));
        if status != "PASS" {
            if let Some(r) = c.get("reason") {
                out.push_str(&format!("     reason: {}\n", scalar(r)));
            } else {
                out.push_str(&format!(
                    "     expected: {}\n     actual:   {}\n",
                    scalar(&c["expected"]),
                    scalar(&c["actual"])
                ));
            }
        }
    }
}

/// Text form of any report; verification reports list one line per check.
pub fn text(report: &Value) -> String {
    let mut out = String::new();
    let Some(map) = report.as_object() else {
        return scalar(report) + "\n";
    };
    for (k, v) in map {
        if k == "checks" {
            continue;
        }
        value(k, v, "", &mut out);
    }
    if report.get("checks").is_some() {
        checks(report, &mut out);
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use serde_json::json;

    #[test]
    fn matrices_render_as_grids() {
        let t = text(&json!({ "x": { "rows": 2, "cols": 2, "entries": [[1, 10], [0, 1]] } }));
        assert_eq!(t, "x:\n   1 10\n   0  1\n");
    }

    #[test]
    fn failing_checks_show_both_sides() {
        let t = text(&json!({ "checks": [
            { "name": "a", "status": "pass", "expected": "1", "actual": "1" },
            { "name": "b", "status": "fail", "expected": "1", "actual": "2" },
        ] }));
        assert!(t.contains("PASS a\n"));
        assert!(t.contains("FAIL b\n     expected: 1\n     actual:   2\n"));
    }
}
