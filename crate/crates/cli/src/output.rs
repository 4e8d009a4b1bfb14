//! Output formats shared by all subcommands. Numbers are always exact
//! decimal strings and rationals render as `p/q`.

use clap::ValueEnum;

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum OutputFormat {
    Plain,
    Csv,
    Json,
    Markdown,
}

/// Render rows as CSV with the given header; plain joins cells with spaces
/// and drops the header, markdown draws a pipe table.
pub fn render_table(format: OutputFormat, header: &[String], rows: &[Vec<String>]) -> String {
    match format {
        OutputFormat::Plain => rows
            .iter()
            .map(|r| r.join(" "))
            .collect::<Vec<_>>()
            .join("\n"),
        OutputFormat::Csv => {
            let mut out = String::new();
            out.push_str(&header.join(","));
            out.push('\n');
            for r in rows {
                out.push_str(&r.join(","));
                out.push('\n');
            }
            out.pop();
            out
        }
        OutputFormat::Markdown => {
            let mut out = String::new();
            out.push_str(&format!("| {} |\n", header.join(" | ")));
            out.push_str(&format!("|{}\n", " --- |".repeat(header.len())));
            for r in rows {
                out.push_str(&format!("| {} |\n", r.join(" | ")));
            }
            out.pop();
            out
        }
        OutputFormat::Json => unreachable!("JSON tables are rendered by the caller"),
    }
}
