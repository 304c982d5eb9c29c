//! Instance files: one `key = value` pair per line, `#` starts a comment.
//!
//! ```text
//! variant = torus
//! m1 = 1
//! m2 = 2
//! r1_sq = 1/2
//! ```

use std::collections::BTreeMap;

use bihar_core::exactnum::Rational;
use bihar_core::geomcheck::HypersurfaceInstance;

pub fn parse_instance(text: &str) -> Result<HypersurfaceInstance, String> {
    let mut map = BTreeMap::new();
    for (n, raw) in text.lines().enumerate() {
        let line = raw.split('#').next().unwrap_or("").trim();
        if line.is_empty() {
            continue;
        }
        let (k, v) = line
            .split_once('=')
            .ok_or_else(|| format!("line {}: expected key = value", n + 1))?;
        if map.insert(k.trim().to_string(), v.trim().to_string()).is_some() {
            return Err(format!("line {}: duplicate key {}", n + 1, k.trim()));
        }
    }
    let get = |k: &str| map.get(k).ok_or_else(|| format!("missing key {k}"));
    let int = |k: &str| -> Result<u32, String> { get(k)?.parse().map_err(|_| format!("{k}: not a positive integer")) };
    let rat = |k: &str| -> Result<Rational, String> { get(k)?.parse().map_err(|e| format!("{k}: {e}")) };
    let c = match map.get("c") {
        Some(_) => rat("c")?,
        None => Rational::one(),
    };
    let allowed: &[&str] = match get("variant")?.as_str() {
        "sphere" => &["variant", "m", "a_sq", "c"],
        "torus" => &["variant", "m1", "m2", "r1_sq", "c"],
        other => return Err(format!("unknown variant {other}; expected sphere or torus")),
    };
    if let Some(k) = map.keys().find(|k| !allowed.contains(&k.as_str())) {
        return Err(format!("unexpected key {k}"));
    }
    let h = if allowed.contains(&"a_sq") {
        HypersurfaceInstance::sphere(int("m")?, rat("a_sq")?, c)
    } else if c.is_one() {
        HypersurfaceInstance::clifford_torus(int("m1")?, int("m2")?, rat("r1_sq")?)
    } else {
        return Err(format!("tori live in the unit sphere, got c = {c}"));
    };
    h.map_err(|e| e.to_string())
}

#[cfg(test)]
mod tests {
    use super::*;
    use bihar_core::exactnum::q;

    #[test]
    fn parses_both_variants() {
        let s = parse_instance("variant = sphere\nm = 3\na_sq = 1/2 # radius^2\nc = 1\n").unwrap();
        assert_eq!(s, HypersurfaceInstance::biharmonic_sphere());
        let t = parse_instance("variant=torus\nm1=1\nm2=2\nr1_sq=1/2").unwrap();
        assert_eq!(t, HypersurfaceInstance::clifford_torus(1, 2, q(1, 2)).unwrap());
    }

    #[test]
    fn rejects_malformed() {
        assert!(parse_instance("variant = cube").is_err());
        assert!(parse_instance("variant = sphere\nm = 3").is_err());
        assert!(parse_instance("variant = sphere\nm = 3\na_sq = x").is_err());
        assert!(parse_instance("variant = sphere\nm = 3\na_sq = 1/2\nr1_sq = 1/2").is_err());
        assert!(parse_instance("m 3").is_err());
    }
}
