//! Reading documents and shaping command output.

use anyhow::Context;
use cdc_core::document::Document;
use cdc_core::{Complex, ElementSet};
use std::io::Read;

/// What a command prints and the status it exits with.
pub struct Outcome {
    pub stdout: String,
    pub code: u8,
}

impl Outcome {
    pub fn text(stdout: String) -> Self {
        Outcome { stdout, code: 0 }
    }

    pub fn json(mut body: String) -> Self {
        body.push('\n');
        Outcome::text(body)
    }

    pub fn with_code(self, code: u8) -> Self {
        Outcome { code, ..self }
    }
}

pub fn emit_json(v: serde_json::Value) -> Outcome {
    Outcome::json(serde_json::to_string_pretty(&v).expect("values serialize"))
}

pub fn emit_complex(c: &Complex) -> Outcome {
    Outcome::json(Document::from_complex(c).to_json())
}

/// Reads a document from a path, or from stdin when the path is `-`.
pub fn load(path: &str) -> anyhow::Result<(Complex, ElementSet)> {
    let text = if path == "-" {
        let mut buf = String::new();
        std::io::stdin()
            .read_to_string(&mut buf)
            .context("reading stdin")?;
        buf
    } else {
        std::fs::read_to_string(path).with_context(|| format!("reading {path}"))?
    };
    let doc = Document::parse(&text).with_context(|| format!("parsing {path}"))?;
    Ok(doc.to_complex_and_subset()?)
}
