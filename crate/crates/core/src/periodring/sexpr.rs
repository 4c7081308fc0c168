//! S-expression syntax for period scalars.
//!
//! ```text
//! expr  := atom | "(" op expr* ")"
//! op    := mul | div | inv | conj | pow
//! atom  := pi | twopii | i | sqrtD | sqrtmD | NAME[_INDEX][@s|@sb] | 1
//! ```
//!
//! `(pow x k)` takes a rational exponent such as `3` or `-1/2`.

use super::{Embedding, PeriodScalar};
use crate::error::{Error, Result};
use crate::linalg::Q;

#[derive(Debug, Clone, PartialEq)]
enum Tok {
    Open,
    Close,
    Word(String),
}

fn tokenize(s: &str) -> Vec<Tok> {
    let mut out = Vec::new();
    let mut cur = String::new();
    for ch in s.chars() {
        match ch {
            '(' | ')' | ' ' | '\t' | '\n' => {
                if !cur.is_empty() {
                    out.push(Tok::Word(std::mem::take(&mut cur)));
                }
                match ch {
                    '(' => out.push(Tok::Open),
                    ')' => out.push(Tok::Close),
                    _ => {}
                }
            }
            _ => cur.push(ch),
        }
    }
    if !cur.is_empty() {
        out.push(Tok::Word(cur));
    }
    out
}

/// Parses an s-expression into a [`PeriodScalar`].
pub fn parse_expr(s: &str) -> Result<PeriodScalar> {
    let toks = tokenize(s);
    let mut pos = 0;
    let value = parse(&toks, &mut pos)?;
    if pos != toks.len() {
        return Err(Error::Parse(format!("trailing input in `{s}`")));
    }
    Ok(value)
}

fn parse(toks: &[Tok], pos: &mut usize) -> Result<PeriodScalar> {
    match toks.get(*pos) {
        None => Err(Error::Parse("unexpected end of expression".into())),
        Some(Tok::Close) => Err(Error::Parse("unexpected `)`".into())),
        Some(Tok::Word(w)) => {
            *pos += 1;
            atom(w)
        }
        Some(Tok::Open) => {
            *pos += 1;
            let Some(Tok::Word(op)) = toks.get(*pos) else {
                return Err(Error::Parse("expected operator after `(`".into()));
            };
            *pos += 1;
            let result = match op.as_str() {
                "mul" => {
                    let mut acc = PeriodScalar::one();
                    while toks.get(*pos) != Some(&Tok::Close) {
                        acc = acc * parse(toks, pos)?;
                    }
                    acc
                }
                "div" => {
                    let a = parse(toks, pos)?;
                    let b = parse(toks, pos)?;
                    a / b
                }
                "inv" => parse(toks, pos)?.inv(),
                "conj" => parse(toks, pos)?.conj(),
                "pow" => {
                    let base = parse(toks, pos)?;
                    let Some(Tok::Word(k)) = toks.get(*pos) else {
                        return Err(Error::Parse("`pow` needs a rational exponent".into()));
                    };
                    *pos += 1;
                    let k: Q = k.parse().map_err(|_| Error::Parse(format!("bad exponent `{k}`")))?;
                    base.pow(&k)
                }
                other => return Err(Error::Parse(format!("unknown operator `{other}`"))),
            };
            if toks.get(*pos) != Some(&Tok::Close) {
                return Err(Error::Parse(format!("expected `)` to close `{op}`")));
            }
            *pos += 1;
            Ok(result)
        }
    }
}

fn atom(w: &str) -> Result<PeriodScalar> {
    Ok(match w {
        "1" => PeriodScalar::one(),
        "pi" => PeriodScalar::pi(),
        "twopii" => PeriodScalar::two_pi_i(),
        "i" => PeriodScalar::i(),
        "sqrtD" => PeriodScalar::sqrt_d(),
        "sqrtmD" => PeriodScalar::sqrt_minus_d(),
        _ => {
            let (body, emb) = match w.rsplit_once('@') {
                Some((b, "s")) => (b, Some(Embedding::Sigma)),
                Some((b, "sb")) => (b, Some(Embedding::SigmaBar)),
                Some(_) => return Err(Error::Parse(format!("bad embedding in `{w}`"))),
                None => (w, None),
            };
            let (name, index) = match body.rsplit_once('_') {
                Some((n, i)) if i.parse::<i64>().is_ok() => (n, Some(i.parse().unwrap())),
                _ => (body, None),
            };
            let valid = name.chars().next().is_some_and(char::is_alphabetic)
                && name.chars().all(|c| c.is_alphanumeric() || c == '_');
            if !valid {
                return Err(Error::Parse(format!("bad symbol `{w}`")));
            }
            PeriodScalar::sym(name, index, emb)
        }
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linalg::q;

    #[test]
    fn parses_nested_expression() {
        let x = parse_expr("(mul (pow pi 1/2) (conj Q_3@s) (inv twopii))").unwrap();
        let expected = PeriodScalar::pi().pow(&q(1, 2))
            * PeriodScalar::sym("Q", Some(3), Some(Embedding::SigmaBar))
            / PeriodScalar::two_pi_i();
        assert_eq!(x, expected);
    }

    #[test]
    fn display_round_trips_for_symbols() {
        let x = parse_expr("delta_Mpsi").unwrap();
        assert_eq!(x.to_string(), "delta_Mpsi");
        assert_eq!(parse_expr("R_-1@sb").unwrap().to_string(), "R_-1@sb");
    }

    #[test]
    fn rejects_garbage() {
        assert!(parse_expr("(mul pi").is_err());
        assert!(parse_expr("(frob pi)").is_err());
        assert!(parse_expr("(pow pi x)").is_err());
    }
}
