//! String parsers for the command-line surfaces: signature triples and
//! complex numbers. Total functions: any input yields `Ok` or a parse error,
//! never a panic.

use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::signature::TriangleSignature;

/// Parses `"n0,n1,ninf"` (whitespace around the parts allowed).
pub fn parse_signature(s: &str) -> Result<TriangleSignature> {
    let parts: Vec<&str> = s.split(',').collect();
    if parts.len() != 3 {
        return Err(Error::Parse(format!(
            "expected three comma-separated parts, got {:?}",
            s
        )));
    }
    let mut vals = [0i64; 3];
    for (slot, part) in vals.iter_mut().zip(&parts) {
        *slot = part
            .trim()
            .parse::<i64>()
            .map_err(|e| Error::Parse(format!("bad integer {:?}: {e}", part.trim())))?;
    }
    TriangleSignature::new(vals[0], vals[1], vals[2])
}

/// Parses `"re,im"` into a complex number.
pub fn parse_complex(s: &str) -> Result<Complex64> {
    let parts: Vec<&str> = s.split(',').collect();
    if parts.len() != 2 {
        return Err(Error::Parse(format!(
            "expected \"re,im\", got {:?}",
            s
        )));
    }
    let re: f64 = parts[0]
        .trim()
        .parse()
        .map_err(|e| Error::Parse(format!("bad real part {:?}: {e}", parts[0].trim())))?;
    let im: f64 = parts[1]
        .trim()
        .parse()
        .map_err(|e| Error::Parse(format!("bad imaginary part {:?}: {e}", parts[1].trim())))?;
    if !re.is_finite() || !im.is_finite() {
        return Err(Error::Parse("components must be finite".into()));
    }
    Ok(Complex64::new(re, im))
}
