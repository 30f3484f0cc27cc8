//! Rendering and atomic file output.
//!
//! CSV values are written with 17 significant digits so every float
//! round-trips exactly; JSON carries the same values as numbers. Files are
//! written to a temporary sibling and renamed into place, so a failed run
//! leaves no partial output behind.

use std::io::Write;
use std::path::Path;

use crate::CliError;

/// Lossless decimal rendering of an f64 (17 significant digits).
pub fn num(x: f64) -> String {
    format!("{x:.16e}")
}

pub fn bool_str(b: bool) -> &'static str {
    if b {
        "true"
    } else {
        "false"
    }
}

/// Write to the path atomically, or to stdout when no path is given.
pub fn emit(out: Option<&Path>, bytes: &[u8]) -> Result<(), CliError> {
    match out {
        None => {
            std::io::stdout().write_all(bytes)?;
            Ok(())
        }
        Some(path) => {
            let dir = match path.parent() {
                Some(p) if !p.as_os_str().is_empty() => p,
                _ => Path::new("."),
            };
            let mut tmp = tempfile::NamedTempFile::new_in(dir)?;
            tmp.write_all(bytes)?;
            tmp.persist(path).map_err(|e| e.error)?;
            Ok(())
        }
    }
}

/// Incremental CSV builder with a mandatory header per section.
pub struct Csv {
    buf: String,
}

impl Csv {
    pub fn new(header: &str) -> Self {
        let mut buf = String::new();
        buf.push_str(header);
        buf.push('\n');
        Self { buf }
    }

    pub fn row(&mut self, fields: &[String]) {
        self.buf.push_str(&fields.join(","));
        self.buf.push('\n');
    }

    /// A `#`-prefixed comment line (section separators, summary footers).
    pub fn comment(&mut self, text: &str) {
        self.buf.push_str("# ");
        self.buf.push_str(text);
        self.buf.push('\n');
    }

    /// Start a new titled section with its own header row.
    pub fn section(&mut self, title: &str, header: &str) {
        self.comment(title);
        self.buf.push_str(header);
        self.buf.push('\n');
    }

    pub fn into_bytes(self) -> Vec<u8> {
        self.buf.into_bytes()
    }
}
