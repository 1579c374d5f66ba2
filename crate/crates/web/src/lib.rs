//! Browser bindings. Every export takes and returns plain strings; results
//! are JSON.

use qnlp_core::corpus::generate_cyclic_code;
use qnlp_core::encoder::encode;
use qnlp_core::hamming::represent as represent_memory;
use qnlp_core::overlap::{analytic_overlap, swap_test_overlap};
use qnlp_core::patterns::PatternFile;
use qnlp_core::Result;
use wasm_bindgen::prelude::*;

/// Cyclic code of `2n` words, each `n` bits wide.
pub fn cyclic_code_json(n: usize) -> Result<String> {
    let code = generate_cyclic_code(n)?;
    let words: Vec<String> = code.codewords.iter().map(|c| c.to_string()).collect();
    Ok(serde_json::to_string(&words).expect("strings serialize"))
}

/// Distribution over the stored patterns for `test`, sampled when `shots > 0`.
pub fn represent_json(patterns: &str, test: &str, shots: u64, seed: u64) -> Result<String> {
    let file = PatternFile::parse(patterns)?;
    let x = file.resolve(test)?;
    let mut rep = represent_memory(&encode(&file.patterns)?, x)?;
    if shots > 0 {
        rep.sample(shots, seed)?;
    }
    let mut dist = rep.distribution;
    for e in &mut dist.entries {
        if e.label.is_none() {
            e.label = file.label(e.pattern);
        }
    }
    dist.entries.sort_by_key(|e| (e.distance, e.pattern));
    Ok(serde_json::to_string(&dist).expect("distribution serializes"))
}

/// Overlap of the two weighted states; a SWAP-test estimate when `shots > 0`.
pub fn overlap_json(patterns: &str, a: &str, b: &str, shots: u64, seed: u64) -> Result<String> {
    let file = PatternFile::parse(patterns)?;
    let (x0, x1) = (file.resolve(a)?, file.resolve(b)?);
    let result = if shots > 0 {
        swap_test_overlap(&file.patterns, x0, x1, shots, seed)?
    } else {
        analytic_overlap(&file.patterns, x0, x1)?
    };
    Ok(serde_json::to_string(&result).expect("result serializes"))
}

fn js(r: Result<String>) -> std::result::Result<String, JsError> {
    r.map_err(|e| JsError::new(&e.to_string()))
}

#[wasm_bindgen(js_name = cyclicCode)]
pub fn cyclic_code(n: usize) -> std::result::Result<String, JsError> {
    js(cyclic_code_json(n))
}

#[wasm_bindgen]
pub fn represent(
    patterns: &str,
    test: &str,
    shots: u32,
    seed: u32,
) -> std::result::Result<String, JsError> {
    js(represent_json(patterns, test, shots.into(), seed.into()))
}

#[wasm_bindgen]
pub fn overlap(
    patterns: &str,
    a: &str,
    b: &str,
    shots: u32,
    seed: u32,
) -> std::result::Result<String, JsError> {
    js(overlap_json(patterns, a, b, shots.into(), seed.into()))
}
