use serde_json::Value;

use crate::args::Format;

/// A command's result: the JSON document plus a flat row view for csv and
/// table output.
pub struct Report {
    pub json: Value,
    /// Print each element of `json` on its own line instead of one document.
    pub json_lines: bool,
    pub header: Vec<&'static str>,
    pub rows: Vec<Vec<String>>,
}

impl Report {
    pub fn render(&self, format: Format) -> String {
        match format {
            Format::Json if self.json_lines => {
                let items = self.json.as_array().map(Vec::as_slice).unwrap_or_default();
                items.iter().map(|v| format!("{v}\n")).collect()
            }
            Format::Json => format!("{}\n", self.json),
            Format::Csv => {
                let mut w = csv::Writer::from_writer(Vec::new());
                w.write_record(&self.header).expect("in-memory write");
                for r in &self.rows {
                    w.write_record(r).expect("in-memory write");
                }
                String::from_utf8(w.into_inner().expect("in-memory flush")).expect("utf-8 input")
            }
            Format::Table => table(&self.header, &self.rows),
        }
    }
}

fn table(header: &[&str], rows: &[Vec<String>]) -> String {
    let mut width: Vec<usize> = header.iter().map(|h| h.chars().count()).collect();
    for r in rows {
        for (w, c) in width.iter_mut().zip(r) {
            *w = (*w).max(c.chars().count());
        }
    }
    let line = |cells: Vec<&str>| {
        let padded: Vec<String> = cells.iter().zip(&width).map(|(c, w)| format!("{c:<w$}")).collect();
        format!("{}\n", padded.join("  ").trim_end())
    };
    let mut out = line(header.to_vec());
    out += &line(width.iter().map(|&w| "-".repeat(w)).collect::<Vec<_>>().iter().map(String::as_str).collect());
    for r in rows {
        out += &line(r.iter().map(String::as_str).collect());
    }
    out
}
