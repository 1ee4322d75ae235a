//! Minimal CSV writer with stable numeric formatting: 12 significant
//! digits in scientific notation, comma separated, LF line endings.

use std::fmt::Write;

/// One numeric cell; `None` renders as an empty field.
pub fn number(value: Option<f64>) -> String {
    match value {
        Some(v) => format!("{v:.11e}"),
        None => String::new(),
    }
}

#[derive(Debug, Clone, Default)]
pub struct Table {
    header: Vec<String>,
    rows: Vec<Vec<String>>,
}

impl Table {
    pub fn new<S: Into<String>>(header: impl IntoIterator<Item = S>) -> Self {
        Self {
            header: header.into_iter().map(Into::into).collect(),
            rows: Vec::new(),
        }
    }

    pub fn header(&self) -> &[String] {
        &self.header
    }

    pub fn push(&mut self, row: Vec<String>) {
        debug_assert_eq!(row.len(), self.header.len());
        self.rows.push(row);
    }

    pub fn rows(&self) -> &[Vec<String>] {
        &self.rows
    }

    /// Index of a column by name.
    pub fn column(&self, name: &str) -> Option<usize> {
        self.header.iter().position(|h| h == name)
    }

    pub fn render(&self) -> String {
        let mut out = String::new();
        for line in std::iter::once(&self.header).chain(&self.rows) {
            let _ = writeln!(out, "{}", line.join(","));
        }
        out
    }
}

/// Parses CSV text produced by [`Table::render`].
pub fn parse(text: &str) -> Table {
    let mut lines = text.lines();
    let header: Vec<String> = lines.next().unwrap_or("").split(',').map(str::to_owned).collect();
    let rows = lines.map(|l| l.split(',').map(str::to_owned).collect()).collect();
    Table { header, rows }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn fixed_formatting() {
        assert_eq!(number(Some(0.529_4)), "5.29400000000e-1");
        assert_eq!(number(Some(1.0 / 3.0)), "3.33333333333e-1");
        assert_eq!(number(Some(0.0)), "0.00000000000e0");
        assert_eq!(number(None), "");
    }

    #[test]
    fn render_and_parse() {
        let mut t = Table::new(["a", "b"]);
        t.push(vec![number(Some(1.0)), number(None)]);
        let text = t.render();
        assert_eq!(text, "a,b\n1.00000000000e0,\n");
        let back = parse(&text);
        assert_eq!(back.column("b"), Some(1));
        assert_eq!(back.rows()[0][1], "");
    }
}
