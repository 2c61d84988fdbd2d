//! Text renderings of polynomial systems: a CAS input script and JSON terms.

use std::cmp::Ordering;
use std::fmt::Write;
use std::str::FromStr;

use serde::Serialize;

use super::{var_name, Monomial, MultiPoly, LAMBDA_VAR, NVARS};
use crate::error::Error;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ExportFormat {
    CasScript,
    Structured,
}

impl FromStr for ExportFormat {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self, Error> {
        match s {
            "cas-script" => Ok(ExportFormat::CasScript),
            "structured" => Ok(ExportFormat::Structured),
            other => Err(Error::InvalidOptions(format!("unknown format '{other}'"))),
        }
    }
}

/// Degree-reverse-lexicographic comparison, variable 0 largest.
fn degrevlex(a: &Monomial, b: &Monomial) -> Ordering {
    let deg = |m: &Monomial| m.iter().map(|&e| e as u32).sum::<u32>();
    deg(a).cmp(&deg(b)).then_with(|| {
        for i in (0..NVARS).rev() {
            if a[i] != b[i] {
                return b[i].cmp(&a[i]);
            }
        }
        Ordering::Equal
    })
}

/// Terms from the leading one down.
fn sorted_terms(p: &MultiPoly) -> Vec<(&Monomial, i64)> {
    let mut terms: Vec<_> = p.terms().collect();
    terms.sort_by(|a, b| degrevlex(b.0, a.0));
    terms
}

fn render_monomial(m: &Monomial) -> String {
    m.iter()
        .enumerate()
        .filter(|(_, &e)| e > 0)
        .map(|(i, &e)| {
            if e == 1 {
                var_name(i)
            } else {
                format!("{}^{e}", var_name(i))
            }
        })
        .collect::<Vec<_>>()
        .join("*")
}

/// e.g. `d11^2+a12*b11` or `-a11*d12+3`.
pub(super) fn render_poly(p: &MultiPoly) -> String {
    if p.is_zero() {
        return "0".to_string();
    }
    let mut out = String::new();
    for (k, (m, c)) in sorted_terms(p).into_iter().enumerate() {
        let body = render_monomial(m);
        let sign = if c < 0 { "-" } else if k > 0 { "+" } else { "" };
        let mag = c.unsigned_abs();
        out.push_str(sign);
        match (body.is_empty(), mag) {
            (true, _) => write!(out, "{mag}").unwrap(),
            (false, 1) => out.push_str(&body),
            (false, _) => write!(out, "{mag}*{body}").unwrap(),
        }
    }
    out
}

#[derive(Serialize)]
struct TermLiteral {
    exponents: Vec<u8>,
    coeff: i64,
}

/// Renders `sys` over the variables `vars` (index order is kept).
///
/// Structured exponent vectors have 16 entries, or 17 when the weight
/// variable occurs anywhere in the system.
pub fn export_system(sys: &[MultiPoly], vars: &[usize], format: ExportFormat) -> String {
    match format {
        ExportFormat::CasScript => {
            let names: Vec<String> = vars.iter().map(|&v| var_name(v)).collect();
            let gens: Vec<String> = sys.iter().map(render_poly).collect();
            let ideal = if gens.is_empty() {
                "0".to_string()
            } else {
                gens.join(", ")
            };
            format!("ring r = 0, ({}), dp;\nideal I = {ideal};\n", names.join(","))
        }
        ExportFormat::Structured => {
            let symbolic = sys.iter().any(|p| p.var_mask() & (1 << LAMBDA_VAR) != 0);
            let width = if symbolic { NVARS } else { 16 };
            let polys: Vec<Vec<TermLiteral>> = sys
                .iter()
                .map(|p| {
                    sorted_terms(p)
                        .into_iter()
                        .map(|(m, c)| TermLiteral {
                            exponents: m[..width].to_vec(),
                            coeff: c,
                        })
                        .collect()
                })
                .collect();
            let mut s = serde_json::to_string(&polys).expect("plain data serializes");
            s.push('\n');
            s
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::polysys::parse_poly;

    #[test]
    fn renders_degrevlex() {
        let p = parse_poly("a12 + d11^2 - 3 + b11*a12 + a11*d12").unwrap();
        assert_eq!(render_poly(&p), "a12*b11+d11^2+a11*d12+a12-3");
        assert_eq!(render_poly(&parse_poly("-a11").unwrap()), "-a11");
    }

    #[test]
    fn script_shapes() {
        let p = parse_poly("a11*d12").unwrap();
        let s = export_system(std::slice::from_ref(&p), &[0, 13], ExportFormat::CasScript);
        assert_eq!(s, "ring r = 0, (a11,d12), dp;\nideal I = a11*d12;\n");
        let empty = export_system(&[], &[0], ExportFormat::CasScript);
        assert!(empty.contains("ideal I = 0;"));
        let js = export_system(&[p], &[0, 13], ExportFormat::Structured);
        let v: serde_json::Value = serde_json::from_str(&js).unwrap();
        assert_eq!(v[0][0]["coeff"], 1);
        assert_eq!(v[0][0]["exponents"].as_array().unwrap().len(), 16);
        let lam = parse_poly("lam*a11").unwrap();
        let js = export_system(&[lam], &[0, 16], ExportFormat::Structured);
        let v: serde_json::Value = serde_json::from_str(&js).unwrap();
        assert_eq!(v[0][0]["exponents"].as_array().unwrap().len(), 17);
    }
}
