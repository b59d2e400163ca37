//! Browser bindings for three operations: the deformed product, the symbol
//! interchange, and a power-closure experiment. The plain functions return
//! `Result<String, String>` and are tested natively; the `#[wasm_bindgen]`
//! wrappers only convert the error type.

use star_algebra::mathieu::{power_experiment, DEFAULT_DEGREE_CAP};
use star_algebra::{
    parse_poly, parse_weyl, print_poly, MembershipOracle, MultiIndex, PowerKind, Rat, StarContext, WeylOp,
};
use wasm_bindgen::prelude::*;

// cap on the experiment length so a page can't hang itself
const MAX_POWERS: u32 = 12;

fn rational(text: &str) -> Result<Rat, String> {
    text.trim().parse().map_err(|_| format!("t: expected a rational like -2/3, got '{text}'"))
}

fn check_n(n: usize) -> Result<(), String> {
    if (1..=4).contains(&n) {
        Ok(())
    } else {
        Err("n must be between 1 and 4".into())
    }
}

/// `f ∗_t g` in canonical text.
pub fn star_product(n: usize, t: &str, f: &str, g: &str) -> Result<String, String> {
    check_n(n)?;
    let ctx = StarContext::new(n, rational(t)?).map_err(|e| e.to_string())?;
    let f = parse_poly(f, n).map_err(|e| format!("f: {e}"))?;
    let g = parse_poly(g, n).map_err(|e| format!("g: {e}"))?;
    ctx.star(&f, &g).map(|p| print_poly(&p)).map_err(|e| e.to_string())
}

/// Symbol maps. `dir` is `left` or `right` (input is an operator in `z`, `d`),
/// `l2r` or `r2l` (input is a symbol in `x`, `z`).
pub fn symbol(n: usize, dir: &str, input: &str) -> Result<String, String> {
    check_n(n)?;
    let op = |text: &str| parse_weyl(text, n).map_err(|e| e.to_string());
    let poly = |text: &str| parse_poly(text, n).map_err(|e| e.to_string());
    let out = match dir {
        "left" => op(input)?.left_symbol(),
        "right" => op(input)?.right_symbol(),
        "l2r" => WeylOp::from_left_symbol(&poly(input)?).right_symbol(),
        "r2l" => WeylOp::from_right_symbol(&poly(input)?).left_symbol(),
        other => return Err(format!("unknown direction '{other}'")),
    };
    Ok(print_poly(&out))
}

/// Membership of `f^m` and `b·f^m`, one line per `m`. `oracle` is `image`
/// (star powers, `param` is `t`) or `laguerre` (ordinary powers, `param` is `k`
/// as comma-separated integers).
pub fn experiment(oracle: &str, n: usize, param: &str, f: &str, b: &str, mmax: u32) -> Result<String, String> {
    check_n(n)?;
    if !(1..=MAX_POWERS).contains(&mmax) {
        return Err(format!("mmax must be between 1 and {MAX_POWERS}"));
    }
    let (oracle, kind) = match oracle {
        "image" => (MembershipOracle::ImageEt { t: rational(param)? }, PowerKind::Star),
        "laguerre" => {
            let k: Result<Vec<u32>, _> = param.split(',').map(|s| s.trim().parse()).collect();
            let k = k.map_err(|_| "k: expected comma-separated non-negative integers".to_string())?;
            if k.len() != n {
                return Err(format!("k: expected {n} entries"));
            }
            (MembershipOracle::LaguerreSpan { k: MultiIndex::new(k) }, PowerKind::Ordinary)
        }
        other => return Err(format!("unknown oracle '{other}'")),
    };
    let f = parse_poly(f, n).map_err(|e| format!("f: {e}"))?;
    let b = parse_poly(b, n).map_err(|e| format!("b: {e}"))?;
    let report = power_experiment(&oracle, &f, &b, mmax, kind, DEFAULT_DEGREE_CAP).map_err(|e| e.to_string())?;
    let mut out = String::new();
    for v in &report.verdicts {
        let tag = |yes| if yes { "member" } else { "non-member" };
        out.push_str(&format!(
            "m={}  f^m: {:<10}  b·f^m: {:<10}  f^m = {}\n",
            v.m,
            tag(v.power_member),
            tag(v.product_member),
            print_poly(&v.power)
        ));
    }
    match (&report.aborted, report.first_stable_n) {
        (Some(e), _) => out.push_str(&format!("stopped early: {e}\n")),
        (None, Some(m)) => out.push_str(&format!("b·f^m is a member for all {m} ≤ m ≤ {mmax}\n")),
        (None, None) => out.push_str(&format!("b·f^{mmax} is not a member\n")),
    }
    Ok(out)
}

#[wasm_bindgen(js_name = starProduct)]
pub fn star_product_js(n: usize, t: &str, f: &str, g: &str) -> Result<String, JsValue> {
    star_product(n, t, f, g).map_err(|e| JsValue::from_str(&e))
}

#[wasm_bindgen(js_name = symbol)]
pub fn symbol_js(n: usize, dir: &str, input: &str) -> Result<String, JsValue> {
    symbol(n, dir, input).map_err(|e| JsValue::from_str(&e))
}

#[wasm_bindgen(js_name = experiment)]
pub fn experiment_js(oracle: &str, n: usize, param: &str, f: &str, b: &str, mmax: u32) -> Result<String, JsValue> {
    experiment(oracle, n, param, f, b, mmax).map_err(|e| JsValue::from_str(&e))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn star_examples() {
        assert_eq!(star_product(1, "1", "x1", "z1").unwrap(), "x1*z1 - 1");
        assert_eq!(star_product(1, "0", "x1", "z1").unwrap(), "x1*z1");
        assert_eq!(star_product(1, "1", "x1^3", "z1^2").unwrap(), "x1^3*z1^2 - 6*x1^2*z1 + 6*x1");
        assert!(star_product(1, "one", "x1", "z1").unwrap_err().starts_with("t:"));
        assert!(star_product(1, "1", "x2", "z1").unwrap_err().starts_with("f:"));
        assert!(star_product(0, "1", "x1", "z1").is_err());
    }

    #[test]
    fn symbol_examples() {
        assert_eq!(symbol(1, "left", "z1^2*d1^3").unwrap(), "x1^3*z1^2 - 6*x1^2*z1 + 6*x1");
        assert_eq!(symbol(1, "right", "z1^2*d1^3").unwrap(), "x1^3*z1^2");
        assert_eq!(symbol(1, "l2r", "x1*z1").unwrap(), "x1*z1 + 1");
        assert_eq!(symbol(1, "r2l", "x1*z1").unwrap(), "x1*z1 - 1");
        assert!(symbol(1, "sideways", "x1").is_err());
    }

    #[test]
    fn experiment_examples() {
        let out = experiment("image", 1, "0", "x1*z1", "z1", 3).unwrap();
        assert_eq!(out.lines().count(), 4);
        assert!(out.lines().take(3).all(|l| !l.contains("non-member")));
        assert!(out.ends_with("b·f^m is a member for all 1 ≤ m ≤ 3\n"));

        let out = experiment("laguerre", 1, "0", "z1 - 1", "1", 2).unwrap();
        assert!(out.starts_with("m=1  f^m: member"));
        assert!(out.ends_with("b·f^2 is not a member\n"));

        assert!(experiment("image", 1, "1", "x1", "1", 0).is_err());
        assert!(experiment("laguerre", 2, "0", "z1", "1", 2).is_err());
        assert!(experiment("bogus", 1, "0", "z1", "1", 2).is_err());
    }
}
