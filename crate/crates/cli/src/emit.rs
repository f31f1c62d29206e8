//! Deterministic rendering: JSON with a fixed key order and floats at 12
//! significant digits, CSV per RFC 4180. Identical inputs give identical
//! bytes, so outputs can be diffed and cached.

/// Floats print as `{:.11e}` (12 significant digits); zero prints as `0`.
pub fn float(x: f64) -> String {
    if x == 0.0 {
        return "0".to_string();
    }
    format!("{x:.11e}")
}

pub fn float_array(xs: &[f64]) -> String {
    let parts: Vec<String> = xs.iter().map(|&x| float(x)).collect();
    format!("[{}]", parts.join(","))
}

/// Row-major complex entries as [re, im] pairs.
pub fn complex_array(entries: &[(f64, f64)]) -> String {
    let parts: Vec<String> = entries
        .iter()
        .map(|&(re, im)| format!("[{},{}]", float(re), float(im)))
        .collect();
    format!("[{}]", parts.join(","))
}

pub fn string(s: &str) -> String {
    let mut out = String::with_capacity(s.len() + 2);
    out.push('"');
    for c in s.chars() {
        match c {
            '"' => out.push_str("\\\""),
            '\\' => out.push_str("\\\\"),
            '\n' => out.push_str("\\n"),
            '\r' => out.push_str("\\r"),
            '\t' => out.push_str("\\t"),
            c if (c as u32) < 0x20 => out.push_str(&format!("\\u{:04x}", c as u32)),
            c => out.push(c),
        }
    }
    out.push('"');
    out
}

/// One flat JSON object; keys appear exactly in insertion order.
pub struct JsonObject {
    parts: Vec<String>,
}

impl JsonObject {
    pub fn new() -> Self {
        Self { parts: Vec::new() }
    }

    pub fn raw(mut self, key: &str, rendered: &str) -> Self {
        self.parts.push(format!("{}:{}", string(key), rendered));
        self
    }

    pub fn float(self, key: &str, x: f64) -> Self {
        let rendered = float(x);
        self.raw(key, &rendered)
    }

    pub fn floats(self, key: &str, xs: &[f64]) -> Self {
        let rendered = float_array(xs);
        self.raw(key, &rendered)
    }

    pub fn integer(self, key: &str, n: u64) -> Self {
        let rendered = n.to_string();
        self.raw(key, &rendered)
    }

    pub fn text(self, key: &str, s: &str) -> Self {
        let rendered = string(s);
        self.raw(key, &rendered)
    }

    pub fn render(&self) -> String {
        format!("{{{}}}\n", self.parts.join(","))
    }

    pub fn render_inline(&self) -> String {
        format!("{{{}}}", self.parts.join(","))
    }
}

/// Quotes a CSV field when RFC 4180 requires it.
pub fn csv_field(s: &str) -> String {
    if s.contains(',') || s.contains('"') || s.contains('\n') || s.contains('\r') {
        format!("\"{}\"", s.replace('"', "\"\""))
    } else {
        s.to_string()
    }
}

/// Header plus rows, comma-separated, one trailing newline.
pub fn csv_table(header: &[&str], rows: &[Vec<String>]) -> String {
    let mut out = String::new();
    let quoted: Vec<String> = header.iter().map(|h| csv_field(h)).collect();
    out.push_str(&quoted.join(","));
    out.push('\n');
    for row in rows {
        let quoted: Vec<String> = row.iter().map(|f| csv_field(f)).collect();
        out.push_str(&quoted.join(","));
        out.push('\n');
    }
    out
}
