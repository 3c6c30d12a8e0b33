//! OEIS b-files: one `index value` pair per line, `#` comments, consecutive
//! indices. Values may also be written as `num/den`.

use std::path::Path;

use crate::error::{Error, Result};
use crate::numerics::{parse_rational, Rational};

/// Returns the first index and the values.
pub fn parse_bfile(text: &str) -> Result<(i64, Vec<Rational>)> {
    let mut offset = None;
    let mut values = Vec::new();
    for (k, raw) in text.lines().enumerate() {
        let line_no = k + 1;
        let line = raw.trim();
        if line.is_empty() || line.starts_with('#') {
            continue;
        }
        let parse_err = |message: String| Error::Parse { line: line_no, message };
        let mut fields = line.split_whitespace();
        let (Some(index), Some(value), None) = (fields.next(), fields.next(), fields.next()) else {
            return Err(parse_err(format!("expected `index value`, found `{line}`")));
        };
        let index: i64 = index
            .parse()
            .map_err(|_| parse_err(format!("bad index `{index}`")))?;
        let value = parse_rational(value).map_err(|e| parse_err(e.to_string()))?;
        let expected = offset.map(|o: i64| o + values.len() as i64).unwrap_or(index);
        if index != expected {
            return Err(Error::NonConsecutiveIndex {
                line: line_no,
                expected,
                found: index,
            });
        }
        offset.get_or_insert(index);
        values.push(value);
    }
    match offset {
        Some(o) => Ok((o, values)),
        None => Err(Error::Parse {
            line: 0,
            message: "b-file has no data lines".into(),
        }),
    }
}

pub fn load_bfile(path: &Path) -> Result<(i64, Vec<Rational>)> {
    parse_bfile(&std::fs::read_to_string(path)?)
}

pub fn format_bfile(offset: i64, values: &[Rational]) -> String {
    values
        .iter()
        .enumerate()
        .map(|(i, v)| format!("{} {}\n", offset + i as i64, v))
        .collect()
}

pub fn write_bfile(path: &Path, offset: i64, values: &[Rational]) -> Result<()> {
    std::fs::write(path, format_bfile(offset, values))?;
    Ok(())
}
