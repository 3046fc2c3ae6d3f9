use std::path::Path;

use crate::CliError;

/// Parse a single-column CSV. Blank lines are skipped and the first
/// non-blank line may be a `value` header.
pub fn parse_samples(text: &str) -> Result<Vec<f64>, CliError> {
    let mut out = Vec::new();
    let mut first = true;
    for (i, raw) in text.lines().enumerate() {
        let line = raw.trim();
        if line.is_empty() {
            continue;
        }
        if first && line.eq_ignore_ascii_case("value") {
            first = false;
            continue;
        }
        first = false;
        let bad = |message: String| CliError::Parse { line: i + 1, message };
        if line.contains(',') {
            return Err(bad(format!("expected one value, found '{line}'")));
        }
        let v: f64 = line.parse().map_err(|_| bad(format!("'{line}' is not a number")))?;
        if !v.is_finite() {
            return Err(bad(format!("'{line}' is not finite")));
        }
        out.push(v);
    }
    if out.is_empty() {
        return Err(CliError::Parse {
            line: 0,
            message: "no samples".into(),
        });
    }
    Ok(out)
}

pub fn read_samples(path: &Path, n: Option<usize>) -> Result<Vec<f64>, CliError> {
    let text = std::fs::read_to_string(path).map_err(|source| CliError::Io {
        path: path.display().to_string(),
        source,
    })?;
    let mut x = parse_samples(&text)?;
    if let Some(n) = n {
        if n == 0 || n > x.len() {
            return Err(CliError::Args(format!("--n {n} is outside 1..={}", x.len())));
        }
        x.truncate(n);
    }
    Ok(x)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn header_and_blank_lines() {
        assert_eq!(parse_samples("value\n1\n\n-2.5e0\n").unwrap(), vec![1.0, -2.5]);
        assert_eq!(parse_samples("3\n4").unwrap(), vec![3.0, 4.0]);
    }

    #[test]
    fn reports_line_numbers() {
        match parse_samples("value\n1\n2\nabc\n") {
            Err(CliError::Parse { line, .. }) => assert_eq!(line, 4),
            other => panic!("{other:?}"),
        }
        assert!(matches!(parse_samples("1,2\n"), Err(CliError::Parse { line: 1, .. })));
        assert!(matches!(parse_samples("1\nNaN\n"), Err(CliError::Parse { line: 2, .. })));
        assert!(matches!(parse_samples("value\n"), Err(CliError::Parse { .. })));
    }
}
