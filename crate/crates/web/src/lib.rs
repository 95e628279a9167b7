//! wasm-bindgen entry points for the static demo page in `www/`.
//!
//! Every function takes plain strings and returns a string, so the page
//! needs no glue beyond the generated bindings.

use num_bigint::BigInt;
use wasm_bindgen::prelude::*;

use hilbert_cubes::cube::{canonicalize, CubeTuple};
use hilbert_cubes::families::{family_a1a2, family_general, family_same_prefix, family_t};
use hilbert_cubes::record::OutputRecord;
use hilbert_cubes::search::{search_cubes, SearchConfig};

/// Largest `entry_max` the page may ask for; keeps a search under a second.
pub const SEARCH_LIMIT: u64 = 1 << 19;

fn parse_ints(text: &str) -> Result<Vec<BigInt>, String> {
    text.split(|c: char| c == ',' || c == ';' || c.is_whitespace())
        .filter(|s| !s.is_empty())
        .map(|s| s.parse::<BigInt>().map_err(|_| format!("{s:?} is not an integer")))
        .collect()
}

fn describe(t: &CubeTuple) -> String {
    match OutputRecord::from_cube(t) {
        Ok(r) => {
            let canon = canonicalize(t).map(|c| c.cube.to_string()).unwrap_or_default();
            format!("{t}\nall {} sums are squares\ncanonical {canon}\n{}", r.witness.len(), r.to_line())
        }
        Err(f) => format!("{t}\nnot a cube: {f}"),
    }
}

/// Checks `a0 a1 a2 a3` (any number of parts) and reports the square roots.
#[wasm_bindgen]
pub fn verify(entries: &str) -> String {
    match parse_ints(entries) {
        Ok(v) if v.len() >= 2 => describe(&CubeTuple::new(v[0].clone(), v[1..].iter().cloned())),
        Ok(_) => "give a0 and at least one part".into(),
        Err(e) => e,
    }
}

/// Evaluates a family: `general` (c d G H), `t` (t), `a1a2` (c d) or `pair` (u v).
#[wasm_bindgen]
pub fn family(name: &str, params: &str) -> String {
    let p = match parse_ints(params) {
        Ok(p) => p,
        Err(e) => return e,
    };
    let arity = match name {
        "general" => 4,
        "t" => 1,
        "a1a2" | "pair" => 2,
        _ => return format!("unknown family {name:?}"),
    };
    if p.len() != arity {
        return format!("{name} takes {arity} parameters, got {}", p.len());
    }
    let p = |i: usize| p[i].clone();
    match name {
        "general" => describe(&family_general(p(0), p(1), p(2), p(3))),
        "t" => describe(&family_t(p(0))),
        "a1a2" => describe(&family_a1a2(p(0), p(1))),
        _ => {
            let (a, b) = family_same_prefix(p(0), p(1));
            format!("{}\n\n{}", describe(&a), describe(&b))
        }
    }
}

/// JSON lines for every cube with all entries at most `entry_max`.
#[wasm_bindgen]
pub fn search(entry_max: u32, reduced: bool) -> String {
    let n = u64::from(entry_max);
    if n > SEARCH_LIMIT {
        return format!("entry_max is limited to {SEARCH_LIMIT} here; use the hcube binary for more");
    }
    match search_cubes(&SearchConfig::with_entry_max(n).reduced_only(reduced)) {
        Ok(recs) => recs.iter().map(|r| OutputRecord::from_search(r).to_line() + "\n").collect(),
        Err(e) => e.to_string(),
    }
}
