//! The Cayley-table text format and human-readable table rendering.
//!
//! Format: the first non-comment line is the size `n`, followed by `n` lines
//! of `n` space-separated zero-based indices (row `i` lists `i*0 .. i*(n-1)`).
//! Lines starting with `#` are comments. Writing a parsed table reproduces
//! the canonical bytes exactly.

use std::path::Path;

use crate::{Error, MulTable, Result};

/// Parses the text format into rows of indices.
pub fn parse_table_text(text: &str) -> Result<Vec<Vec<usize>>> {
    let mut lines = text
        .lines()
        .map(str::trim)
        .filter(|l| !l.is_empty() && !l.starts_with('#'));
    let n: usize = lines
        .next()
        .ok_or_else(|| Error::Parse { message: "empty table file".into() })?
        .parse()
        .map_err(|e| Error::Parse { message: format!("bad size line: {e}") })?;
    if n == 0 {
        return Err(Error::ZeroOrder);
    }
    let mut rows = Vec::with_capacity(n);
    for _ in 0..n {
        let line = lines
            .next()
            .ok_or_else(|| Error::Parse { message: format!("expected {n} rows") })?;
        let row: std::result::Result<Vec<usize>, _> =
            line.split_whitespace().map(str::parse).collect();
        rows.push(row.map_err(|e| Error::Parse { message: format!("bad row entry: {e}") })?);
    }
    if let Some(extra) = lines.next() {
        return Err(Error::Parse { message: format!("unexpected trailing line '{extra}'") });
    }
    Ok(rows)
}

pub fn read_table(path: &Path) -> Result<Vec<Vec<usize>>> {
    parse_table_text(&std::fs::read_to_string(path)?)
}

/// Canonical bytes of a table: size line plus space-separated rows.
pub fn table_to_text<T: MulTable + ?Sized>(t: &T) -> String {
    let n = t.size();
    let mut out = format!("{n}\n");
    for a in 0..n {
        let row: Vec<String> = (0..n).map(|b| t.cell(a, b).to_string()).collect();
        out.push_str(&row.join(" "));
        out.push('\n');
    }
    out
}

pub fn write_table<T: MulTable + ?Sized>(path: &Path, t: &T) -> Result<()> {
    Ok(std::fs::write(path, table_to_text(t))?)
}

/// Renders a table with 1-based labels and aligned columns. When `split` is
/// given, a vertical and horizontal rule separates the blocks `0..split` and
/// `split..size`, imitating the block structure of a doubled extension.
pub fn render_table<T: MulTable + ?Sized>(t: &T, split: Option<usize>) -> String {
    let n = t.size();
    let w = n.to_string().len();
    let mut out = String::new();
    for a in 0..n {
        let mut row = String::new();
        for b in 0..n {
            if b > 0 {
                row.push(' ');
            }
            if split == Some(b) {
                row.push_str("| ");
            }
            row.push_str(&format!("{:>w$}", t.cell(a, b) + 1));
        }
        out.push_str(&row);
        out.push('\n');
        if let Some(s) = split {
            if a + 1 == s {
                // the '+' sits under the '|', one past the left block
                out.push_str(&"-".repeat((w + 1) * s));
                out.push('+');
                out.push_str(&"-".repeat((w + 1) * (n - s)));
                out.push('\n');
            }
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::extension::{build, ExtensionSpec};
    use crate::group::{make_cyclic, FiniteGroup};
    use std::sync::Arc;

    #[test]
    fn text_round_trip_is_bit_exact() {
        let c4 = make_cyclic(4).unwrap();
        let text = table_to_text(&c4);
        assert_eq!(text, "4\n0 1 2 3\n1 2 3 0\n2 3 0 1\n3 0 1 2\n");
        let rows = parse_table_text(&text).unwrap();
        let again = FiniteGroup::from_cayley_table(&rows).unwrap();
        assert_eq!(table_to_text(&again), text);
    }

    #[test]
    fn comments_and_blanks_are_skipped() {
        let rows = parse_table_text("# cyclic of order 2\n\n2\n0 1\n# middle comment\n1 0\n").unwrap();
        assert_eq!(rows, vec![vec![0, 1], vec![1, 0]]);
        assert!(parse_table_text("2\n0 1\n").is_err());
        assert!(parse_table_text("").is_err());
        assert!(parse_table_text("0\n").is_err());
    }

    #[test]
    fn block_rendering_shape() {
        let c4 = Arc::new(make_cyclic(4).unwrap());
        let spec = ExtensionSpec::from_tuple(
            Arc::clone(&c4),
            ExtensionSpec::parse_tuple("xy,xy,xy,x-y").unwrap(),
        );
        let rendered = render_table(&build(&spec), Some(4));
        let lines: Vec<&str> = rendered.lines().collect();
        assert_eq!(lines.len(), 9);
        assert_eq!(lines[0], "1 2 3 4 | 5 6 7 8");
        assert_eq!(lines[4], "--------+--------");
        assert!(lines.iter().all(|l| l.len() == lines[0].len()));
    }
}
