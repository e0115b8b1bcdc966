use std::io::Write;
use std::path::Path;

use serde_json::Value;

use crate::error::{Error, Result};

/// Canonical form: object keys sorted, two-space indent, trailing newline.
pub fn canonical(doc: &Value) -> String {
    let mut s = serde_json::to_string_pretty(doc).expect("json values serialize");
    s.push('\n');
    s
}

/// Writes to `out`, or to stdout when absent.
pub fn write_report(doc: &Value, out: Option<&Path>) -> Result<()> {
    let text = canonical(doc);
    match out {
        Some(p) => std::fs::write(p, text).map_err(|e| Error::Io(format!("{}: {e}", p.display()))),
        None => std::io::stdout()
            .lock()
            .write_all(text.as_bytes())
            .map_err(|e| Error::Io(e.to_string())),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use serde_json::json;

    #[test]
    fn keys_are_sorted() {
        let a = canonical(&json!({"z": 1, "a": {"y": 2, "b": 3}}));
        assert!(a.find("\"a\"").unwrap() < a.find("\"z\"").unwrap());
        assert!(a.find("\"b\"").unwrap() < a.find("\"y\"").unwrap());
        assert_eq!(canonical(&json!({})), "{}\n");
    }
}
