//! Replays the checked-in fuzz seeds through the parsers on stable.

use std::path::{Path, PathBuf};

use subspace_ent::criterion::Claim;
use subspace_ent::io::{
    format_state, format_subspace, parse_index_list, parse_params, parse_state_with_limit, parse_subspace_with_limit,
};
use subspace_ent::measures::MeasureSpec;

const MAX_DIM: usize = 4096;

fn seeds(target: &str) -> Vec<(PathBuf, String)> {
    let dir = Path::new(env!("CARGO_MANIFEST_DIR")).join("../../fuzz/corpus").join(target);
    let mut out: Vec<(PathBuf, String)> = std::fs::read_dir(&dir)
        .unwrap_or_else(|e| panic!("{}: {e}", dir.display()))
        .map(|entry| {
            let path = entry.unwrap().path();
            let text = String::from_utf8_lossy(&std::fs::read(&path).unwrap()).into_owned();
            (path, text)
        })
        .collect();
    out.sort();
    assert!(!out.is_empty(), "no seeds for {target}");
    out
}

#[test]
fn state_seeds() {
    let mut accepted = 0;
    for (path, text) in seeds("parse_state") {
        if let Ok(psi) = parse_state_with_limit(&text, MAX_DIM) {
            let again = parse_state_with_limit(&format_state(&psi), MAX_DIM).unwrap();
            assert_eq!(again.shape(), psi.shape(), "{}", path.display());
            accepted += 1;
        }
    }
    assert!(accepted >= 2);
}

#[test]
fn subspace_seeds() {
    let mut accepted = 0;
    for (path, text) in seeds("parse_subspace") {
        if let Ok(v) = parse_subspace_with_limit(&text, MAX_DIM) {
            let again = parse_subspace_with_limit(&format_subspace(&v), MAX_DIM).unwrap();
            assert_eq!(again.dim(), v.dim(), "{}", path.display());
            accepted += 1;
        }
    }
    assert!(accepted >= 2);
}

#[test]
fn param_seeds() {
    for (_, text) in seeds("parse_params") {
        if let Ok(map) = parse_params(&text) {
            for value in map.values() {
                let _ = parse_index_list(value);
            }
        }
        let _ = parse_index_list(&text);
    }
}

#[test]
fn spec_seeds() {
    let mut claims = 0;
    for (_, text) in seeds("parse_spec") {
        if let Ok(claim) = text.parse::<Claim>() {
            let _ = claim.measure();
            claims += 1;
        }
        let _ = text.parse::<MeasureSpec>();
    }
    assert!(claims >= 4);
}
