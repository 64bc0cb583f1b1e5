//! CSV emission: comma separated, LF line endings, UTF-8, one header row,
//! numeric cells with 17 significant digits so identical invocations produce
//! byte-identical files.

use std::fs;
use std::io::Write;
use std::path::Path;

pub fn fmt(x: f64) -> String {
    format!("{x:.16e}")
}

pub fn fmt_flag(b: bool) -> String {
    if b { "1".into() } else { "0".into() }
}

pub struct Csv {
    buf: String,
}

impl Csv {
    pub fn new(comments: &[String], header: &[&str]) -> Self {
        let mut buf = String::new();
        for c in comments {
            buf.push_str("# ");
            buf.push_str(c);
            buf.push('\n');
        }
        buf.push_str(&header.join(","));
        buf.push('\n');
        Csv { buf }
    }

    pub fn row(&mut self, cells: &[String]) {
        self.buf.push_str(&cells.join(","));
        self.buf.push('\n');
    }

    /// Writes to the path, or to standard output when no path is given.
    pub fn write(self, out: Option<&Path>) -> anyhow::Result<()> {
        match out {
            Some(path) => fs::write(path, self.buf.as_bytes())
                .map_err(|e| anyhow::anyhow!("cannot write {}: {e}", path.display())),
            None => {
                std::io::stdout()
                    .write_all(self.buf.as_bytes())
                    .map_err(|e| anyhow::anyhow!("cannot write to stdout: {e}"))
            }
        }
    }
}
