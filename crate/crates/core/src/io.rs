//! Plain-text state and subspace files.
//!
//! ```text
//! # comments start with '#'; blank lines are ignored
//! dims: 2 2 2
//! 0 0.7071067811865476 0
//! 7 0.7071067811865476 0
//! ```
//!
//! * The first non-comment line is the header `dims: d1 d2 ... dN` (every `d_i >= 2`).
//! * Every other line is `index real imag`: a flat row-major index (first site slowest)
//!   and the amplitude's real and imaginary parts. Fields are separated by
//!   whitespace; trailing `# ...` comments are allowed.
//! * Indices must be in range and may not repeat. Omitted indices are zero.
//! * The amplitudes must have norm 1 within `1e-6`; they are then rescaled to
//!   unit norm exactly.
//!
//! A subspace file has the same header followed by one block per basis vector,
//! each introduced by a line holding the single word `vector`. Blocks must be
//! orthonormal; deviations up to `1e-6` are repaired (see [`Subspace::new`]).
//!
//! Writers emit nonzero amplitudes only, in increasing index order, using the
//! shortest decimal form that round-trips each `f64`.

use std::collections::BTreeMap;
use std::fmt::Write as _;

use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::tensor::{PureState, Subspace, SystemShape, MAX_TOTAL_DIM};

/// Norm deviation tolerated (and corrected) on input.
pub const INPUT_NORM_TOL: f64 = 1e-6;

fn content_lines(text: &str) -> impl Iterator<Item = (usize, &str)> {
    text.lines().enumerate().filter_map(|(i, raw)| {
        let line = raw.split('#').next().unwrap_or("").trim();
        (!line.is_empty()).then_some((i + 1, line))
    })
}

fn parse_header(line_no: usize, line: &str, max_total_dim: usize) -> Result<SystemShape> {
    let rest = line
        .strip_prefix("dims:")
        .ok_or_else(|| Error::parse(line_no, "expected header `dims: d1 d2 ...`"))?;
    let dims = rest
        .split_whitespace()
        .map(|t| t.parse::<usize>().map_err(|_| Error::parse(line_no, format!("bad dimension `{t}`"))))
        .collect::<Result<Vec<_>>>()?;
    let shape = SystemShape::new(dims).map_err(|e| Error::parse(line_no, e.to_string()))?;
    if shape.total_dim() > max_total_dim {
        return Err(Error::parse(line_no, format!("total dimension {} exceeds limit {max_total_dim}", shape.total_dim())));
    }
    Ok(shape)
}

fn parse_entry(line_no: usize, line: &str, total: usize) -> Result<(usize, Complex64)> {
    let fields: Vec<&str> = line.split_whitespace().collect();
    let [idx, re, im] = fields[..] else {
        return Err(Error::parse(line_no, format!("expected `index real imag`, got {} fields", fields.len())));
    };
    let idx: usize = idx.parse().map_err(|_| Error::parse(line_no, format!("bad index `{idx}`")))?;
    if idx >= total {
        return Err(Error::parse(line_no, format!("index {idx} out of range (total dimension {total})")));
    }
    let num = |t: &str| -> Result<f64> {
        let v: f64 = t.parse().map_err(|_| Error::parse(line_no, format!("bad number `{t}`")))?;
        if !v.is_finite() {
            return Err(Error::parse(line_no, format!("non-finite number `{t}`")));
        }
        Ok(v)
    };
    Ok((idx, Complex64::new(num(re)?, num(im)?)))
}

fn build_state(shape: &SystemShape, entries: BTreeMap<usize, Complex64>, line_no: usize) -> Result<PureState> {
    let norm = entries.values().map(|a| a.norm_sqr()).sum::<f64>().sqrt();
    if !((norm - 1.0).abs() <= INPUT_NORM_TOL) {
        return Err(Error::parse(line_no, format!("amplitudes have norm {norm}, expected 1")));
    }
    let mut amps = vec![Complex64::new(0.0, 0.0); shape.total_dim()];
    for (i, a) in entries {
        amps[i] = a;
    }
    PureState::normalized(shape.clone(), amps)
}

pub fn parse_state(text: &str) -> Result<PureState> {
    parse_state_with_limit(text, MAX_TOTAL_DIM)
}

/// Like [`parse_state`] but rejects headers whose total dimension exceeds `max_total_dim`.
pub fn parse_state_with_limit(text: &str, max_total_dim: usize) -> Result<PureState> {
    let mut lines = content_lines(text);
    let (hdr_no, hdr) = lines.next().ok_or_else(|| Error::parse(0, "empty state file"))?;
    let shape = parse_header(hdr_no, hdr, max_total_dim)?;
    let mut entries = BTreeMap::new();
    let mut last = hdr_no;
    for (no, line) in lines {
        if line == "vector" {
            return Err(Error::parse(no, "`vector` blocks belong in subspace files"));
        }
        let (i, a) = parse_entry(no, line, shape.total_dim())?;
        if entries.insert(i, a).is_some() {
            return Err(Error::parse(no, format!("duplicate index {i}")));
        }
        last = no;
    }
    build_state(&shape, entries, last)
}

pub fn parse_subspace(text: &str) -> Result<Subspace> {
    parse_subspace_with_limit(text, MAX_TOTAL_DIM)
}

pub fn parse_subspace_with_limit(text: &str, max_total_dim: usize) -> Result<Subspace> {
    let mut lines = content_lines(text);
    let (hdr_no, hdr) = lines.next().ok_or_else(|| Error::parse(0, "empty subspace file"))?;
    let shape = parse_header(hdr_no, hdr, max_total_dim)?;
    let mut blocks: Vec<(usize, BTreeMap<usize, Complex64>)> = Vec::new();
    for (no, line) in lines {
        if line == "vector" {
            blocks.push((no, BTreeMap::new()));
            continue;
        }
        let Some((_, current)) = blocks.last_mut() else {
            return Err(Error::parse(no, "amplitude before the first `vector` line"));
        };
        let (i, a) = parse_entry(no, line, shape.total_dim())?;
        if current.insert(i, a).is_some() {
            return Err(Error::parse(no, format!("duplicate index {i}")));
        }
    }
    if blocks.is_empty() {
        return Err(Error::parse(hdr_no, "subspace file has no `vector` blocks"));
    }
    let basis = blocks
        .into_iter()
        .map(|(no, entries)| build_state(&shape, entries, no))
        .collect::<Result<Vec<_>>>()?;
    Subspace::new(basis)
}

fn write_header(out: &mut String, shape: &SystemShape) {
    let dims: Vec<String> = shape.dims().iter().map(|d| d.to_string()).collect();
    let _ = writeln!(out, "dims: {}", dims.join(" "));
}

fn write_amplitudes(out: &mut String, psi: &PureState) {
    for (i, a) in psi.amplitudes().iter().enumerate() {
        if a.re != 0.0 || a.im != 0.0 {
            let _ = writeln!(out, "{i} {} {}", a.re, a.im);
        }
    }
}

pub fn format_state(psi: &PureState) -> String {
    let mut out = String::new();
    write_header(&mut out, psi.shape());
    write_amplitudes(&mut out, psi);
    out
}

pub fn format_subspace(v: &Subspace) -> String {
    let mut out = String::new();
    write_header(&mut out, v.shape());
    for b in v.basis() {
        out.push_str("vector\n");
        write_amplitudes(&mut out, b);
    }
    out
}

/// Parses `key=value` pairs separated by commas, e.g. `n=3,d=2,kvec=1:1:1`.
pub fn parse_params(text: &str) -> Result<BTreeMap<String, String>> {
    let mut out = BTreeMap::new();
    for item in text.split(',').map(str::trim).filter(|s| !s.is_empty()) {
        let (k, v) = item
            .split_once('=')
            .ok_or_else(|| Error::parse(1, format!("parameter `{item}` is not key=value")))?;
        let (k, v) = (k.trim(), v.trim());
        if k.is_empty() || !k.chars().all(|c| c.is_ascii_alphanumeric() || c == '_') {
            return Err(Error::parse(1, format!("bad parameter name `{k}`")));
        }
        if out.insert(k.to_string(), v.to_string()).is_some() {
            return Err(Error::parse(1, format!("parameter `{k}` given twice")));
        }
    }
    Ok(out)
}

/// Parses a `:`-separated list of nonnegative integers, e.g. `1:1:1`.
pub fn parse_index_list(text: &str) -> Result<Vec<usize>> {
    text.split([':', ' '])
        .filter(|s| !s.is_empty())
        .map(|t| t.parse::<usize>().map_err(|_| Error::parse(1, format!("bad integer `{t}`"))))
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::states;
    use proptest::prelude::*;

    #[test]
    fn parses_documented_example() {
        let text = "# GHZ\ndims: 2 2 2\n0 0.7071067811865476 0\n7 0.7071067811865476 0 # tail\n";
        let psi = parse_state(text).unwrap();
        assert!((psi.inner(&states::ghz(3, 2).unwrap()).unwrap().norm() - 1.0).abs() < 1e-15);
    }

    #[test]
    fn rejects_malformed_input() {
        let cases = [
            "",
            "dims: 2 1\n0 1 0\n",
            "dims 2 2\n0 1 0\n",
            "dims: 2 2\n4 1 0\n",
            "dims: 2 2\n0 1 0\n0 1 0\n",
            "dims: 2 2\n0 1\n",
            "dims: 2 2\n0 1 NaN\n",
            "dims: 2 2\n0 0.5 0\n",
            "dims: 2 2\n",
            "dims: 2 2\nvector\n0 1 0\n",
        ];
        for c in cases {
            assert!(parse_state(c).is_err(), "accepted {c:?}");
        }
        assert!(parse_state_with_limit("dims: 2 2 2 2\n0 1 0\n", 8).is_err());
    }

    #[test]
    fn subspace_files() {
        let v = states::bell_subspace(3, &[0, 2]).unwrap();
        let text = format_subspace(&v);
        assert_eq!(text.matches("vector").count(), 2);
        let back = parse_subspace(&text).unwrap();
        assert_eq!(back, v);
        assert!(parse_subspace("dims: 2 2\n0 1 0\n").is_err());
        assert!(parse_subspace("dims: 2 2\n").is_err());
        assert!(parse_subspace("dims: 2 2\nvector\n0 1 0\nvector\n0 1 0\n").is_err());
    }

    #[test]
    fn params() {
        let p = parse_params("n=3, d=2,kvec=1:1:1").unwrap();
        assert_eq!(p["n"], "3");
        assert_eq!(parse_index_list(&p["kvec"]).unwrap(), vec![1, 1, 1]);
        assert!(parse_params("n=3,n=4").is_err());
        assert!(parse_params("n").is_err());
        assert!(parse_params("=3").is_err());
        assert!(parse_params("").unwrap().is_empty());
    }

    proptest! {
        #[test]
        fn state_files_round_trip(re in prop::collection::vec(-1.0f64..1.0, 12), im in prop::collection::vec(-1.0f64..1.0, 12)) {
            let amps: Vec<Complex64> = re.iter().zip(&im).map(|(&a, &b)| Complex64::new(a, b)).collect();
            prop_assume!(amps.iter().map(|a| a.norm_sqr()).sum::<f64>() > 1e-6);
            let shape = SystemShape::new(vec![2, 3, 2]).unwrap();
            let psi = PureState::normalized(shape, amps).unwrap();
            let back = parse_state(&format_state(&psi)).unwrap();
            for (a, b) in back.amplitudes().iter().zip(psi.amplitudes()) {
                prop_assert!((a - b).norm() < 1e-15);
            }
        }

        #[test]
        fn parser_never_panics(text in ".{0,200}") {
            let _ = parse_state(&text);
            let _ = parse_subspace(&text);
            let _ = parse_params(&text);
        }
    }
}
