//! Deterministic CSV/JSON writers. Numerics print at 17 significant digits
//! so emitted values round-trip to the exact f64.

use crate::columns::Cell;

/// 17-significant-digit scientific notation (round-trip exact for f64).
pub fn fmt17(x: f64) -> String {
    format!("{x:.16e}")
}

pub fn cell_to_csv(cell: &Cell) -> String {
    match cell {
        Cell::Number(x) => fmt17(*x),
        Cell::Text(s) => s.clone(),
    }
}

pub fn cell_to_json(cell: &Cell) -> serde_json::Value {
    match cell {
        Cell::Number(x) => serde_json::json!(x),
        Cell::Text(s) => serde_json::json!(s),
    }
}

/// A `# key = value` metadata block (kept out of the data table proper).
pub fn metadata_block(entries: &[(String, String)]) -> String {
    let mut out = String::new();
    for (k, v) in entries {
        out.push_str(&format!("# {k} = {v}\n"));
    }
    out
}

/// Assemble a CSV table: metadata comments, header, then rows.
pub fn csv_table(
    metadata: &[(String, String)],
    header: &[&str],
    rows: &[Vec<Cell>],
) -> String {
    let mut out = metadata_block(metadata);
    out.push_str(&header.join(","));
    out.push('\n');
    for row in rows {
        let fields: Vec<String> = row.iter().map(cell_to_csv).collect();
        out.push_str(&fields.join(","));
        out.push('\n');
    }
    out
}

/// Assemble the JSON equivalent: {"meta": {...}, "rows": [{col: val}, ...]}.
pub fn json_table(
    metadata: &[(String, String)],
    header: &[&str],
    rows: &[Vec<Cell>],
) -> String {
    let meta: serde_json::Map<String, serde_json::Value> = metadata
        .iter()
        .map(|(k, v)| (k.clone(), serde_json::json!(v)))
        .collect();
    let json_rows: Vec<serde_json::Value> = rows
        .iter()
        .map(|row| {
            let obj: serde_json::Map<String, serde_json::Value> = header
                .iter()
                .zip(row.iter())
                .map(|(name, cell)| (name.to_string(), cell_to_json(cell)))
                .collect();
            serde_json::Value::Object(obj)
        })
        .collect();
    let doc = serde_json::json!({ "meta": meta, "rows": json_rows });
    serde_json::to_string_pretty(&doc).expect("serializable")
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn fmt17_round_trips() {
        for x in [0.1, 1.0 / 3.0, 6.464750120708624e-4, 1e-300, -2.5e17] {
            let s = fmt17(x);
            let back: f64 = s.parse().unwrap();
            assert_eq!(back, x, "{s}");
        }
    }
}
