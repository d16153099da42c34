//! Plain-text matrix files: one row per line, whitespace-separated
//! complex literals of the form `a`, `a+bi`, `a-bi`, or `bi` with
//! decimal reals.

use qbsim::linalg::{ComplexMatrix, C64};
use qbsim::{Error, Result};

/// Splits `a+bi` / `a-bi` bodies at the sign that separates the real
/// and imaginary parts, ignoring exponent signs like `1e-3`.
fn split_at_separator(body: &str) -> Option<(&str, &str)> {
    let bytes = body.as_bytes();
    for k in (1..bytes.len()).rev() {
        if (bytes[k] == b'+' || bytes[k] == b'-') && !matches!(bytes[k - 1], b'e' | b'E') {
            return Some((&body[..k], &body[k..]));
        }
    }
    None
}

fn parse_real(text: &str) -> Option<f64> {
    let v: f64 = text.parse().ok()?;
    v.is_finite().then_some(v)
}

/// Parses one complex literal.
pub fn parse_complex(token: &str) -> Option<C64> {
    if let Some(body) = token.strip_suffix(['i', 'I']) {
        if let Some((re, im)) = split_at_separator(body) {
            return Some(C64::new(parse_real(re)?, parse_real(im)?));
        }
        return Some(C64::new(0.0, parse_real(body)?));
    }
    Some(C64::new(parse_real(token)?, 0.0))
}

/// Canonical text form: `a` for real entries, `a+bi` / `a-bi` otherwise.
#[cfg(test)]
pub fn format_complex(z: C64) -> String {
    if z.im == 0.0 {
        format!("{}", z.re)
    } else if z.im < 0.0 {
        format!("{}-{}i", z.re, -z.im)
    } else {
        format!("{}+{}i", z.re, z.im)
    }
}

/// Parses a whole matrix file, rejecting ragged rows and malformed
/// literals with the offending line number. The matrix must be square.
pub fn parse_matrix_file(text: &str) -> Result<ComplexMatrix> {
    let mut rows: Vec<Vec<C64>> = Vec::new();
    for (idx, line) in text.lines().enumerate() {
        let lineno = idx + 1;
        if line.trim().is_empty() {
            continue;
        }
        let mut row = Vec::new();
        for token in line.split_whitespace() {
            let z = parse_complex(token).ok_or_else(|| {
                Error::InvalidInput(format!(
                    "line {lineno}: malformed complex literal '{token}'"
                ))
            })?;
            row.push(z);
        }
        if let Some(first) = rows.first() {
            if row.len() != first.len() {
                return Err(Error::InvalidInput(format!(
                    "line {lineno}: ragged row ({} entries, expected {})",
                    row.len(),
                    first.len()
                )));
            }
        }
        rows.push(row);
    }
    let matrix = ComplexMatrix::from_rows(&rows)?;
    if !matrix.is_square() {
        return Err(Error::InvalidInput(format!(
            "matrix must be square, got {} rows of {} entries",
            matrix.rows(),
            matrix.cols()
        )));
    }
    Ok(matrix)
}
