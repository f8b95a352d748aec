//! Output formats for tabular results.

use clap::ValueEnum;
use serde_json::{json, Value};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, ValueEnum)]
pub enum Format {
    #[default]
    Plain,
    Json,
    Csv,
    Markdown,
}

#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct Cell {
    pub text: String,
    /// Rendered bold in markdown and as `*x*` in plain text.
    pub emphasis: bool,
}

impl Cell {
    pub fn blank() -> Self {
        Cell::default()
    }

    pub fn emphasized(text: impl ToString) -> Self {
        Cell {
            text: text.to_string(),
            emphasis: true,
        }
    }
}

impl<T: ToString> From<T> for Cell {
    fn from(v: T) -> Self {
        Cell {
            text: v.to_string(),
            emphasis: false,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Table {
    pub title: String,
    pub headers: Vec<String>,
    pub rows: Vec<Vec<Cell>>,
}

impl Table {
    pub fn new(title: impl Into<String>, headers: Vec<String>) -> Self {
        Table {
            title: title.into(),
            headers,
            rows: Vec::new(),
        }
    }

    pub fn push(&mut self, row: Vec<Cell>) {
        debug_assert_eq!(row.len(), self.headers.len());
        self.rows.push(row);
    }

    pub fn render(&self, format: Format) -> String {
        match format {
            Format::Plain => self.plain(),
            Format::Csv => self.csv(),
            Format::Markdown => self.markdown(),
            Format::Json => serde_json::to_string_pretty(&self.to_json()).unwrap() + "\n",
        }
    }

    fn markdown(&self) -> String {
        let mut out = String::new();
        let line = |cells: Vec<String>| format!("| {} |\n", cells.join(" | "));
        out.push_str(&line(self.headers.clone()));
        out.push_str(&line(
            self.headers.iter().map(|_| "---".to_string()).collect(),
        ));
        for row in &self.rows {
            out.push_str(&line(
                row.iter()
                    .map(|c| match (c.emphasis, c.text.is_empty()) {
                        (true, false) => format!("**{}**", c.text),
                        _ => c.text.clone(),
                    })
                    .collect(),
            ));
        }
        out
    }

    fn csv(&self) -> String {
        let mut w = csv::Writer::from_writer(Vec::new());
        w.write_record(&self.headers).unwrap();
        for row in &self.rows {
            w.write_record(row.iter().map(|c| &c.text)).unwrap();
        }
        String::from_utf8(w.into_inner().unwrap()).unwrap()
    }

    fn plain(&self) -> String {
        let texts: Vec<Vec<String>> = self
            .rows
            .iter()
            .map(|row| {
                row.iter()
                    .map(|c| match (c.emphasis, c.text.is_empty()) {
                        (true, false) => format!("*{}*", c.text),
                        _ => c.text.clone(),
                    })
                    .collect()
            })
            .collect();
        let widths: Vec<usize> = (0..self.headers.len())
            .map(|i| {
                texts
                    .iter()
                    .map(|r| r[i].len())
                    .chain([self.headers[i].len()])
                    .max()
                    .unwrap_or(0)
            })
            .collect();
        let line = |cells: &[String]| {
            let padded: Vec<String> = cells
                .iter()
                .zip(&widths)
                .map(|(c, &w)| format!("{c:>w$}"))
                .collect();
            padded.join("  ").trim_end().to_string() + "\n"
        };
        let mut out = format!("{}\n", self.title);
        out.push_str(&line(&self.headers));
        for row in &texts {
            out.push_str(&line(row));
        }
        out
    }

    pub fn to_json(&self) -> Value {
        let value = |t: &str| -> Value {
            if t.is_empty() {
                Value::Null
            } else if let Ok(n) = t.parse::<u64>() {
                json!(n)
            } else {
                json!(t)
            }
        };
        let rows: Vec<Value> = self
            .rows
            .iter()
            .map(|r| Value::Array(r.iter().map(|c| value(&c.text)).collect()))
            .collect();
        let emphasis: Vec<Value> = self
            .rows
            .iter()
            .enumerate()
            .flat_map(|(i, r)| {
                r.iter()
                    .enumerate()
                    .filter(|(_, c)| c.emphasis && !c.text.is_empty())
                    .map(move |(j, _)| json!([i, j]))
            })
            .collect();
        json!({
            "title": self.title,
            "headers": self.headers,
            "rows": rows,
            "emphasis": emphasis,
        })
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn sample() -> Table {
        let mut t = Table::new("demo", vec!["g".into(), "N(4,g)".into()]);
        t.push(vec![Cell::from(3), Cell::emphasized(1)]);
        t.push(vec![Cell::from(4), Cell::blank()]);
        t
    }

    #[test]
    fn markdown_bolds() {
        let md = sample().render(Format::Markdown);
        assert_eq!(
            md,
            "| g | N(4,g) |\n| --- | --- |\n| 3 | **1** |\n| 4 |  |\n"
        );
    }

    #[test]
    fn csv_quotes_commas() {
        assert_eq!(sample().render(Format::Csv), "g,\"N(4,g)\"\n3,1\n4,\n");
    }

    #[test]
    fn plain_marks_with_asterisks() {
        let p = sample().render(Format::Plain);
        assert!(p.contains("*1*"), "{p}");
        assert!(p.starts_with("demo\n"));
    }

    #[test]
    fn json_cells() {
        let j = sample().to_json();
        assert_eq!(j["rows"][0][1], 1);
        assert!(j["rows"][1][1].is_null());
        assert_eq!(j["emphasis"], json!([[0, 1]]));
    }
}
