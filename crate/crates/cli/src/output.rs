//! Row-oriented CSV/TSV output with `#`-prefixed config comments.

use std::fs::File;
use std::io::{self, BufWriter, Write};
use std::path::PathBuf;

#[derive(Clone, Copy, Debug, PartialEq, Eq, clap::ValueEnum)]
pub enum OutputFormat {
    Csv,
    Tsv,
}

impl OutputFormat {
    fn separator(&self) -> char {
        match self {
            OutputFormat::Csv => ',',
            OutputFormat::Tsv => '\t',
        }
    }
}

pub struct Output {
    writer: BufWriter<Box<dyn Write>>,
    sep: char,
}

impl Output {
    pub fn open(path: &Option<PathBuf>, format: OutputFormat) -> io::Result<Self> {
        let inner: Box<dyn Write> = match path {
            Some(p) => Box::new(File::create(p)?),
            None => Box::new(io::stdout()),
        };
        Ok(Output { writer: BufWriter::new(inner), sep: format.separator() })
    }

    /// Emits one `# key=value` reproducibility comment.
    pub fn config(&mut self, key: &str, value: impl std::fmt::Display) -> io::Result<()> {
        writeln!(self.writer, "# {key}={value}")
    }

    pub fn comment(&mut self, text: &str) -> io::Result<()> {
        writeln!(self.writer, "# {text}")
    }

    pub fn row<S: AsRef<str>>(&mut self, cells: &[S]) -> io::Result<()> {
        let line: Vec<&str> = cells.iter().map(|c| c.as_ref()).collect();
        writeln!(self.writer, "{}", line.join(&self.sep.to_string()))
    }

    /// Raw text block (the map-spec format is not CSV).
    pub fn raw(&mut self, text: &str) -> io::Result<()> {
        self.writer.write_all(text.as_bytes())
    }

    pub fn finish(mut self) -> io::Result<()> {
        self.writer.flush()
    }
}
