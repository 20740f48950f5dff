//! Field bivectors written as short expressions, e.g. `a*g1g0` or
//! `0.5*g1^g2 - a*g3g0`.
//!
//! Grammar: a sum of terms, each a product of factors separated by `*`.
//! Exactly one factor per term is a basis bivector `gIgJ` (or `gI^gJ`) with
//! distinct indices in `0..=3`; the rest are numbers or the parameter `a`.

use stcga::cga7::SpacetimeModel;
use stcga::dynamics::FieldBivector;

#[derive(Debug, Clone, PartialEq)]
pub struct FieldTerm {
    pub i: usize,
    pub j: usize,
    pub coef: f64,
}

pub fn parse_field_terms(expr: &str, a: Option<f64>) -> Result<Vec<FieldTerm>, String> {
    let compact: String = expr.chars().filter(|c| !c.is_whitespace()).collect();
    if compact.is_empty() {
        return Err("empty field expression".into());
    }
    let mut terms = Vec::new();
    let mut sign = 1.0;
    let mut start = 0;
    let bytes = compact.as_bytes();
    for k in 0..=bytes.len() {
        let at_split = k == bytes.len()
            || ((bytes[k] == b'+' || bytes[k] == b'-') && k > 0 && !matches!(bytes[k - 1], b'e' | b'E' | b'*'));
        let leading_sign = k == 0 && k < bytes.len() && (bytes[k] == b'+' || bytes[k] == b'-');
        if leading_sign {
            sign = if bytes[k] == b'-' { -1.0 } else { 1.0 };
            start = 1;
            continue;
        }
        if at_split {
            let text = &compact[start..k];
            if text.is_empty() {
                return Err(format!("missing term in `{expr}`"));
            }
            let mut t = parse_term(text, a)?;
            t.coef *= sign;
            terms.push(t);
            if k < bytes.len() {
                sign = if bytes[k] == b'-' { -1.0 } else { 1.0 };
                start = k + 1;
            }
        }
    }
    Ok(terms)
}

fn parse_term(text: &str, a: Option<f64>) -> Result<FieldTerm, String> {
    let mut coef = 1.0;
    let mut blade = None;
    for factor in text.split('*') {
        if factor.is_empty() {
            return Err(format!("empty factor in `{text}`"));
        }
        if factor == "a" {
            coef *= a.ok_or_else(|| format!("`{text}` uses the parameter `a` but no value was given"))?;
        } else if factor.starts_with('g') {
            if blade.is_some() {
                return Err(format!("term `{text}` has more than one basis bivector"));
            }
            blade = Some(parse_blade(factor)?);
        } else {
            coef *= factor.parse::<f64>().map_err(|_| format!("cannot read factor `{factor}`"))?;
        }
    }
    let (i, j) = blade.ok_or_else(|| format!("term `{text}` has no basis bivector"))?;
    if !coef.is_finite() {
        return Err(format!("non-finite coefficient in `{text}`"));
    }
    Ok(FieldTerm { i, j, coef })
}

fn parse_blade(factor: &str) -> Result<(usize, usize), String> {
    let body = factor.replace('^', "");
    let b = body.as_bytes();
    let digit = |c: u8| (b'0'..=b'3').contains(&c).then(|| (c - b'0') as usize);
    match b {
        [b'g', x, b'g', y] => match (digit(*x), digit(*y)) {
            (Some(i), Some(j)) if i != j => Ok((i, j)),
            _ => Err(format!("`{factor}` is not a bivector g<i>g<j> with distinct i, j in 0..=3")),
        },
        _ => Err(format!("`{factor}` is not a bivector g<i>g<j>")),
    }
}

pub fn parse_field(model: &SpacetimeModel, expr: &str, a: Option<f64>) -> Result<FieldBivector, String> {
    let terms = parse_field_terms(expr, a)?;
    let pairs: Vec<(usize, usize, f64)> = terms.iter().map(|t| (t.i, t.j, t.coef)).collect();
    FieldBivector::from_pairs(model, &pairs).map_err(|e| e.to_string())
}
