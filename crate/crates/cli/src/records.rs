//! Record-CSV input for `fit`: columns (k, delta) or (k, tan_delta_over_k),
//! auto-detected from the header row.  Lines starting with `#` are comments.

use anyhow::{anyhow, bail, Context};
use erange_core::PhaseRecord;
use std::path::Path;

pub fn read_records(path: &Path) -> anyhow::Result<Vec<PhaseRecord>> {
    let content = std::fs::read_to_string(path)
        .map_err(|e| anyhow!("cannot read {}: {e}", path.display()))?;
    let mut lines = content
        .lines()
        .map(str::trim)
        .filter(|l| !l.is_empty() && !l.starts_with('#'));
    let header = lines.next().ok_or_else(|| anyhow!("{} is empty", path.display()))?;
    let cols: Vec<&str> = header.split(',').map(str::trim).collect();
    let k_col = cols
        .iter()
        .position(|c| *c == "k")
        .ok_or_else(|| anyhow!("{} has no `k` column", path.display()))?;
    // prefer the value column when both are present
    let (val_col, is_tan) = if let Some(i) = cols.iter().position(|c| *c == "tan_delta_over_k") {
        (i, true)
    } else if let Some(i) = cols.iter().position(|c| *c == "delta") {
        (i, false)
    } else {
        bail!("{} has neither `tan_delta_over_k` nor `delta` columns", path.display());
    };

    let mut records = Vec::new();
    for (line_no, line) in lines.enumerate() {
        let cells: Vec<&str> = line.split(',').collect();
        if cells.len() <= k_col.max(val_col) {
            bail!("{}: line {} has too few columns", path.display(), line_no + 2);
        }
        let parse = |s: &str, what: &str| -> anyhow::Result<f64> {
            s.trim()
                .parse()
                .with_context(|| format!("{}: line {}: bad {what} `{s}`", path.display(), line_no + 2))
        };
        let k = parse(cells[k_col], "k")?;
        if !(k > 0.0) {
            bail!("{}: line {}: k must be positive", path.display(), line_no + 2);
        }
        let value = parse(cells[val_col], "value")?;
        records.push(if is_tan {
            PhaseRecord::from_tan_delta_over_k(k, value)
        } else {
            PhaseRecord::from_delta(k, value)
        });
    }
    if records.is_empty() {
        bail!("{} contains no data rows", path.display());
    }
    Ok(records)
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::io::Write;

    fn write_tmp(content: &str) -> tempfile::NamedTempFile {
        let mut f = tempfile::NamedTempFile::new().unwrap();
        f.write_all(content.as_bytes()).unwrap();
        f
    }

    #[test]
    fn detects_both_schemas() {
        let f = write_tmp("k,delta\n0.1,-0.03\n0.2,-0.06\n");
        let recs = read_records(f.path()).unwrap();
        assert_eq!(recs.len(), 2);
        assert!((recs[0].tan_delta_over_k - (-0.03f64).tan() / 0.1).abs() < 1e-15);

        let f = write_tmp("# comment\nkk,k,tan_delta_over_k\n0.01,0.1,-0.29\n0.04,0.2,-0.28\n");
        let recs = read_records(f.path()).unwrap();
        assert_eq!(recs[1].tan_delta_over_k, -0.28);
    }

    #[test]
    fn rejects_missing_columns() {
        let f = write_tmp("kk,value\n0.1,0.0\n");
        assert!(read_records(f.path()).is_err());
        let f = write_tmp("k,kcot\n0.1,0.0\n");
        assert!(read_records(f.path()).is_err());
    }
}
