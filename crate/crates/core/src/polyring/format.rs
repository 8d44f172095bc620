use serde::{Deserialize, Serialize};

use super::{LaurentPoly, TPoly, TermKey};
use crate::error::{Error, Result};

/// One entry of the JSON term list.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct JsonTerm {
    pub x: Vec<i64>,
    pub t: i32,
    pub c: i128,
}

/// Term order for the pretty printer.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum PrettyStyle {
    /// Colexicographic in `x`: the last variable is compared first.
    Colex,
    /// Graded lexicographic.
    Graded,
}

fn graded_cmp(a: &[i64], b: &[i64]) -> std::cmp::Ordering {
    let da: i64 = a.iter().sum();
    let db: i64 = b.iter().sum();
    da.cmp(&db).then_with(|| a.cmp(b))
}

/// Variable names: `x, y` in rank 2 and `x1, ..., xr` otherwise.
pub fn variable_names(rank: usize) -> Vec<String> {
    if rank == 2 {
        vec!["x".into(), "y".into()]
    } else {
        (1..=rank).map(|i| format!("x{i}")).collect()
    }
}

fn monomial_text(x: &[i64], names: &[String]) -> String {
    x.iter()
        .zip(names)
        .filter(|(&e, _)| e != 0)
        .map(|(&e, n)| if e == 1 { n.clone() } else { format!("{n}^{e}") })
        .collect::<Vec<_>>()
        .join(" ")
}

impl LaurentPoly {
    /// Human-readable form in `q` and the `x` variables.
    pub fn pretty(&self, style: PrettyStyle) -> String {
        if self.is_zero() {
            return "0".into();
        }
        let names = variable_names(self.rank());
        let mut groups = self.by_x();
        match style {
            PrettyStyle::Colex => groups.sort_by(|a, b| {
                a.0.iter().rev().cmp(b.0.iter().rev())
            }),
            PrettyStyle::Graded => groups.sort_by(|a, b| graded_cmp(&a.0, &b.0)),
        }
        let mut out = String::new();
        for (idx, (x, coeff)) in groups.iter().enumerate() {
            let mono = monomial_text(x, &names);
            let (negative, body) = coefficient_text(coeff, mono.is_empty());
            let text = match (body.is_empty(), mono.is_empty()) {
                (true, true) => "1".to_string(),
                (true, false) => mono,
                (false, true) => body,
                (false, false) => format!("{body} {mono}"),
            };
            if idx == 0 {
                if negative {
                    out.push('-');
                    if text.starts_with('(') {
                        out.push(' ');
                    }
                }
            } else {
                out.push_str(if negative { " - " } else { " + " });
            }
            out.push_str(&text);
        }
        out
    }

    /// Term list sorted graded-lexicographically on the `x`-exponent, then by `t`.
    pub fn to_json_terms(&self) -> Vec<JsonTerm> {
        let mut terms: Vec<JsonTerm> = self
            .terms()
            .iter()
            .map(|(k, c)| JsonTerm {
                x: k.xexp(self.rank()),
                t: k.t,
                c: *c,
            })
            .collect();
        terms.sort_by(|a, b| graded_cmp(&a.x, &b.x).then(a.t.cmp(&b.t)));
        terms
    }

    pub fn from_json_terms(rank: usize, terms: &[JsonTerm]) -> Result<LaurentPoly> {
        for t in terms {
            if t.x.len() != rank {
                return Err(Error::Parse(format!(
                    "term {:?} has {} exponents, expected {rank}",
                    t.x,
                    t.x.len()
                )));
            }
            if t.x.iter().any(|&e| e.abs() > i16::MAX as i64) {
                return Err(Error::ExponentOverflow);
            }
        }
        Ok(LaurentPoly::from_terms(
            rank,
            terms.iter().map(|t| (TermKey::new(&t.x, t.t), t.c)),
        ))
    }
}

/// Parses the printed form back, e.g. `1 + (q - 1) x^2 y - q^2 x^3 y^4`.
///
/// Accepts `x, y` in rank 2 and `x1, ..., xr` otherwise, integer or
/// parenthesized coefficients in `q`, and half-integral powers `q^(k/2)`.
pub fn parse_pretty(rank: usize, text: &str) -> Result<LaurentPoly> {
    let chars: Vec<char> = text
        .chars()
        .filter(|c| !c.is_whitespace())
        .map(|c| if c == '\u{2212}' { '-' } else { c })
        .collect();
    let mut p = Parser { s: &chars, pos: 0, rank };
    let mut terms = Vec::new();
    let mut first = true;
    while p.pos < chars.len() || first {
        let sign = match p.peek() {
            Some('+') if !first => { p.pos += 1; 1 }
            Some('-') => { p.pos += 1; -1 }
            _ if first => 1,
            other => return Err(p.err(&format!("expected + or -, found {other:?}"))),
        };
        first = false;
        let coeff = p.coefficient()?;
        let x = p.monomial()?;
        if coeff.is_none() && x.iter().all(|&e| e == 0) {
            return Err(p.err("empty term"));
        }
        let coeff = coeff.unwrap_or_else(TPoly::one).scale(sign);
        for (t, c) in coeff.terms() {
            terms.push((TermKey::new(&x, t), c));
        }
    }
    Ok(LaurentPoly::from_terms(rank, terms))
}

struct Parser<'a> {
    s: &'a [char],
    pos: usize,
    rank: usize,
}

impl Parser<'_> {
    fn peek(&self) -> Option<char> {
        self.s.get(self.pos).copied()
    }

    fn err(&self, msg: &str) -> Error {
        Error::Parse(format!("{msg} at offset {}", self.pos))
    }

    fn integer(&mut self) -> Option<i128> {
        let start = self.pos;
        while self.peek().is_some_and(|c| c.is_ascii_digit()) {
            self.pos += 1;
        }
        if start == self.pos {
            return None;
        }
        self.s[start..self.pos].iter().collect::<String>().parse().ok()
    }

    fn signed_integer(&mut self) -> Result<i64> {
        let neg = self.peek() == Some('-');
        if neg {
            self.pos += 1;
        }
        let v = self.integer().ok_or_else(|| self.err("expected an integer"))? as i64;
        Ok(if neg { -v } else { v })
    }

    /// `[int] [q[^e]]`, returning `None` if neither part is present.
    fn q_monomial(&mut self) -> Result<Option<TPoly>> {
        let c = self.integer();
        if self.peek() != Some('q') {
            return Ok(c.map(TPoly::constant));
        }
        self.pos += 1;
        let mut texp = 2;
        if self.peek() == Some('^') {
            self.pos += 1;
            if self.peek() == Some('(') {
                self.pos += 1;
                let num = self.signed_integer()?;
                if self.peek() != Some('/') {
                    return Err(self.err("expected /"));
                }
                self.pos += 1;
                if self.integer() != Some(2) || self.peek() != Some(')') {
                    return Err(self.err("expected 2)"));
                }
                self.pos += 1;
                texp = num as i32;
            } else {
                texp = 2 * self.signed_integer()? as i32;
            }
        }
        Ok(Some(TPoly::monomial(texp, c.unwrap_or(1))))
    }

    fn coefficient(&mut self) -> Result<Option<TPoly>> {
        if self.peek() != Some('(') {
            return self.q_monomial();
        }
        self.pos += 1;
        let mut acc = TPoly::zero();
        let mut first = true;
        loop {
            let sign = match self.peek() {
                Some(')') if !first => {
                    self.pos += 1;
                    return Ok(Some(acc));
                }
                Some('+') if !first => { self.pos += 1; 1 }
                Some('-') => { self.pos += 1; -1 }
                _ if first => 1,
                other => return Err(self.err(&format!("unexpected {other:?} in coefficient"))),
            };
            first = false;
            let m = self.q_monomial()?.ok_or_else(|| self.err("expected a term in q"))?;
            acc = acc.add(&m.scale(sign));
        }
    }

    fn monomial(&mut self) -> Result<Vec<i64>> {
        let mut x = vec![0i64; self.rank];
        while let Some(c) = self.peek() {
            let var = match c {
                'x' | 'y' => {
                    self.pos += 1;
                    match (self.rank, c, self.integer()) {
                        (2, 'x', None) => 0,
                        (2, 'y', None) => 1,
                        (r, 'x', Some(i)) if r != 2 && i >= 1 && (i as usize) <= r => i as usize - 1,
                        _ => return Err(self.err("unknown variable")),
                    }
                }
                _ => break,
            };
            let mut e = 1;
            if self.peek() == Some('^') {
                self.pos += 1;
                e = self.signed_integer()?;
            }
            x[var] += e;
        }
        Ok(x)
    }
}

/// Splits a coefficient into a sign and the text printed in front of the monomial.
/// An empty body stands for a unit coefficient.
fn coefficient_text(c: &TPoly, standalone: bool) -> (bool, String) {
    if let Some((e, v)) = c.as_monomial() {
        let negative = v < 0;
        let mag = TPoly::monomial(e, v.abs());
        let body = if mag.is_one() && !standalone {
            String::new()
        } else {
            mag.to_string()
        };
        return (negative, body);
    }
    if c.leading_sign() < 0 {
        (true, format!("({})", c.neg()))
    } else {
        (false, format!("({c})"))
    }
}

#[cfg(test)]
mod tests {
    use super::super::poly;

    #[test]
    fn colex_style() {
        let n = poly(
            2,
            &[
                (&[0, 0], 0, 1),
                (&[1, 0], 0, 1),
                (&[0, 1], 0, 1),
                (&[2, 1], 0, -1),
                (&[1, 2], 0, -1),
                (&[2, 2], 0, -1),
            ],
        );
        assert_eq!(n.to_string(), "1 + x + y - x^2 y - x y^2 - x^2 y^2");
        let m = poly(
            2,
            &[(&[0, 0], 0, 1), (&[2, 1], 2, 1), (&[2, 1], 0, -1), (&[3, 3], 2, -1), (&[4, 2], 4, 1), (&[4, 2], 2, -1)],
        );
        assert_eq!(m.to_string(), "1 + (q - 1) x^2 y + (q^2 - q) x^4 y^2 - q x^3 y^3");
        let r1 = poly(1, &[(&[0], 0, 1), (&[1], 0, 1)]);
        assert_eq!(r1.to_string(), "1 + x1");
        let neg = poly(2, &[(&[1, 0], 2, 1), (&[1, 0], 4, -1)]);
        assert_eq!(neg.to_string(), "- (q^2 - q) x");
        for p in [&n, &m, &neg] {
            assert_eq!(&super::parse_pretty(2, &p.to_string()).unwrap(), p);
        }
        assert_eq!(super::parse_pretty(1, "1 + x1").unwrap(), r1);
    }

    #[test]
    fn parse_forms() {
        let p = super::parse_pretty(2, "1 + x + y - x^2y - xy^2 - x^2y^2").unwrap();
        assert_eq!(p.len(), 6);
        let h = super::parse_pretty(3, "q^(1/2) x1 x3^2 - 2q^3").unwrap();
        assert_eq!(h.coeff(&super::TermKey::new(&[1, 0, 2], 1)), 1);
        assert_eq!(h.coeff(&super::TermKey::new(&[0, 0, 0], 6)), -2);
        assert!(super::parse_pretty(2, "1 + z").is_err());
        assert!(super::parse_pretty(2, "1 +").is_err());
        assert!(super::parse_pretty(2, "(q - ").is_err());
    }

    #[test]
    fn json_round_trip() {
        let n = poly(3, &[(&[0, 0, 0], 0, 1), (&[1, 0, 2], 2, -3), (&[0, 1, 0], 0, 5)]);
        let terms = n.to_json_terms();
        assert_eq!(terms[0].x, vec![0, 0, 0]);
        assert_eq!(terms[1].x, vec![0, 1, 0]);
        let text = serde_json::to_string(&terms).unwrap();
        let back: Vec<super::JsonTerm> = serde_json::from_str(&text).unwrap();
        assert_eq!(super::LaurentPoly::from_json_terms(3, &back).unwrap(), n);
    }
}
