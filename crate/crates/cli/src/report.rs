use std::fs;
use std::io::Write;
use std::path::Path;

use clap::ValueEnum;
use serde::Serialize;

use crate::error::CliResult;

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Json,
    Csv,
}

/// A command's output in both renderings, plus any contradictions that
/// should turn the exit status into a failure after printing.
pub struct Report {
    pub json: serde_json::Value,
    pub header: Vec<&'static str>,
    pub rows: Vec<Vec<String>>,
    pub contradictions: Vec<String>,
}

impl Report {
    pub fn new(json: &impl Serialize, header: Vec<&'static str>, rows: Vec<Vec<String>>) -> CliResult<Self> {
        Ok(Report { json: serde_json::to_value(json)?, header, rows, contradictions: Vec::new() })
    }

    pub fn render(&self, format: Format) -> CliResult<Vec<u8>> {
        match format {
            Format::Json => {
                let mut out = serde_json::to_vec_pretty(&self.json)?;
                out.push(b'\n');
                Ok(out)
            }
            Format::Csv => {
                let mut w = csv::WriterBuilder::new().terminator(csv::Terminator::CRLF).from_writer(Vec::new());
                w.write_record(&self.header)?;
                for row in &self.rows {
                    w.write_record(row)?;
                }
                w.into_inner().map_err(|e| crate::error::CliError::Failure(e.to_string()))
            }
        }
    }

    pub fn emit(&self, format: Format, output: Option<&Path>) -> CliResult<()> {
        let bytes = self.render(format)?;
        match output {
            Some(path) => fs::write(path, bytes)?,
            None => match std::io::stdout().lock().write_all(&bytes) {
                // a closed pipe (`| head`) is not an error for us
                Err(e) if e.kind() == std::io::ErrorKind::BrokenPipe => {}
                other => other?,
            },
        }
        Ok(())
    }
}

/// An element's coordinate vector as compact JSON text, e.g. `[1,0]`.
pub fn coords_text(coords: &[u32]) -> String {
    serde_json::to_string(coords).expect("integer arrays serialise")
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn csv_quotes_fields_with_commas() {
        let r = Report::new(&serde_json::json!({}), vec!["a", "b"], vec![vec!["[1,0]".into(), "x".into()]]).unwrap();
        let text = String::from_utf8(r.render(Format::Csv).unwrap()).unwrap();
        assert_eq!(text, "a,b\r\n\"[1,0]\",x\r\n");
    }
}
