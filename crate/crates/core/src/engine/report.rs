//! Canonical JSON rendering shared by the CLI and the HTTP service.
//!
//! Reals are rounded to 6 significant digits and written in shortest form
//! with at least one decimal (`3.0`, `0.5`, `1234570.0`). Output is
//! pretty-printed with 2-space indentation and a trailing newline.

use serde::{Serialize, Serializer};

/// Rounds to 6 significant digits; `-0.0` becomes `0.0`.
pub fn round_sig6(x: f64) -> f64 {
    if x == 0.0 {
        return 0.0;
    }
    if !x.is_finite() {
        return x;
    }
    format!("{x:.5e}").parse().expect("formatted float parses")
}

pub fn sig6<S: Serializer>(x: &f64, s: S) -> Result<S::Ok, S::Error> {
    s.serialize_f64(round_sig6(*x))
}

pub fn sig6_opt<S: Serializer>(x: &Option<f64>, s: S) -> Result<S::Ok, S::Error> {
    match x {
        Some(v) => s.serialize_f64(round_sig6(*v)),
        None => s.serialize_none(),
    }
}

pub fn sig6_map<S: Serializer>(
    m: &std::collections::BTreeMap<String, f64>,
    s: S,
) -> Result<S::Ok, S::Error> {
    use serde::ser::SerializeMap;
    let mut map = s.serialize_map(Some(m.len()))?;
    for (k, v) in m {
        map.serialize_entry(k, &round_sig6(*v))?;
    }
    map.end()
}

/// Pretty JSON with a trailing newline.
pub fn to_canonical_json<T: Serialize + ?Sized>(value: &T) -> String {
    let mut out = serde_json::to_string_pretty(value).expect("report serializes");
    out.push('\n');
    out
}

/// Human-friendly number: same rounding as the JSON output.
pub fn fmt_num(x: f64) -> String {
    serde_json::to_string(&round_sig6(x)).expect("finite")
}
