//! Concrete syntax for forms.
//!
//! ```text
//! form   := ['-'] term (('+' | '-') term)*
//! term   := [scalar ['*']] basis
//! basis  := 'e' digit+            one index per digit, 1..9
//!         | 'e[' int (',' int)* ']'
//! scalar := int ['/' int] ['r' int]   'r d' multiplies by √d
//! ```
//!
//! Whitespace is ignored between tokens. Unsorted index lists are sorted
//! with the permutation sign absorbed; duplicate blades are summed.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};
use crate::exterior::KForm;
use crate::field::{FieldDesc, Scalar};

/// One parsed term, before it is folded into a form.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Term {
    pub coeff: Scalar,
    /// 1-based indices in source order.
    pub indices: Vec<usize>,
    /// Column of the basis token, for diagnostics.
    pub pos: usize,
}

/// Parsed source text with its term list.
#[derive(Debug, Clone)]
pub struct FormExpr {
    pub source: String,
    pub terms: Vec<Term>,
}

struct Lexer<'a> {
    src: &'a [u8],
    at: usize,
    field: FieldDesc,
}

impl<'a> Lexer<'a> {
    fn err<T>(&self, pos: usize, msg: impl Into<String>) -> Result<T> {
        Err(Error::Parse {
            pos: pos + 1,
            msg: msg.into(),
        })
    }

    fn skip_ws(&mut self) {
        while self.at < self.src.len() && self.src[self.at].is_ascii_whitespace() {
            self.at += 1;
        }
    }

    fn peek(&mut self) -> Option<u8> {
        self.skip_ws();
        self.src.get(self.at).copied()
    }

    fn describe(&self, pos: usize) -> String {
        match self.src.get(pos) {
            Some(&c) => format!("'{}'", c as char),
            None => "end of input".into(),
        }
    }

    fn int(&mut self) -> Result<BigInt> {
        self.skip_ws();
        let start = self.at;
        while self.at < self.src.len() && self.src[self.at].is_ascii_digit() {
            self.at += 1;
        }
        if start == self.at {
            return self.err(
                start,
                format!("expected integer, found {}", self.describe(start)),
            );
        }
        let text = std::str::from_utf8(&self.src[start..self.at]).expect("ascii digits");
        Ok(text.parse().expect("digits parse"))
    }

    fn small_int(&mut self) -> Result<usize> {
        let start = {
            self.skip_ws();
            self.at
        };
        let v = self.int()?;
        v.try_into()
            .or_else(|_| self.err(start, "integer out of range"))
    }

    fn scalar(&mut self) -> Result<Scalar> {
        let start = self.at;
        let num = self.int()?;
        let mut value = BigRational::from_integer(num);
        if self.peek() == Some(b'/') {
            self.at += 1;
            let den_pos = {
                self.skip_ws();
                self.at
            };
            let den = self.int()?;
            if den.is_zero() {
                return self.err(den_pos, "zero denominator");
            }
            value /= BigRational::from_integer(den);
        }
        if self.peek() == Some(b'r') {
            let r_pos = self.at;
            self.at += 1;
            let d = self.small_int()?;
            match self.field.radicand() {
                None => {
                    return self.err(r_pos, format!("'r{d}' requires field qsqrt:{d}, got q"));
                }
                Some(fd) if fd as usize != d => {
                    return self.err(r_pos, format!("'r{d}' does not belong to field qsqrt:{fd}"));
                }
                Some(_) => {}
            }
            return Scalar::new(BigRational::zero(), value, self.field)
                .or_else(|e| self.err(start, e.to_string()));
        }
        Ok(Scalar::from_rational(value))
    }

    fn basis(&mut self) -> Result<Vec<usize>> {
        let pos = {
            self.skip_ws();
            self.at
        };
        if self.src.get(pos) != Some(&b'e') {
            return self.err(
                pos,
                format!("expected basis 'e…', found {}", self.describe(pos)),
            );
        }
        self.at += 1;
        let mut idx = Vec::new();
        if self.src.get(self.at) == Some(&b'[') {
            self.at += 1;
            loop {
                idx.push(self.small_int()?);
                match self.peek() {
                    Some(b',') => self.at += 1,
                    Some(b']') => {
                        self.at += 1;
                        break;
                    }
                    _ => {
                        let p = self.at;
                        return self.err(
                            p,
                            format!("expected ',' or ']', found {}", self.describe(p)),
                        );
                    }
                }
            }
        } else {
            while let Some(&c) = self.src.get(self.at) {
                if !c.is_ascii_digit() {
                    break;
                }
                idx.push((c - b'0') as usize);
                self.at += 1;
            }
            if idx.is_empty() {
                let p = self.at;
                return self.err(
                    p,
                    format!(
                        "expected index digits after 'e', found {}",
                        self.describe(p)
                    ),
                );
            }
        }
        Ok(idx)
    }

    fn term(&mut self, sign: i64) -> Result<Term> {
        let mut coeff = Scalar::from_int(sign);
        if matches!(self.peek(), Some(c) if c.is_ascii_digit()) {
            coeff = &coeff * &self.scalar()?;
            if self.peek() == Some(b'*') {
                self.at += 1;
            }
        }
        self.skip_ws();
        let pos = self.at + 1;
        let indices = self.basis()?;
        Ok(Term {
            coeff,
            indices,
            pos,
        })
    }
}

/// Tokenizes and parses `text` into a term list.
pub fn parse_expr(text: &str, field: FieldDesc) -> Result<FormExpr> {
    let mut lx = Lexer {
        src: text.as_bytes(),
        at: 0,
        field,
    };
    let mut terms = Vec::new();
    let mut sign = 1;
    if lx.peek() == Some(b'-') {
        lx.at += 1;
        sign = -1;
    } else if lx.peek() == Some(b'+') {
        lx.at += 1;
    }
    if lx.peek().is_none() {
        return lx.err(lx.at, "empty form");
    }
    loop {
        terms.push(lx.term(sign)?);
        match lx.peek() {
            None => break,
            Some(b'+') => sign = 1,
            Some(b'-') => sign = -1,
            Some(_) => {
                let p = lx.at;
                return lx.err(p, format!("expected '+' or '-', found {}", lx.describe(p)));
            }
        }
        lx.at += 1;
    }
    Ok(FormExpr {
        source: text.to_string(),
        terms,
    })
}

/// Parses a form. The dimension defaults to the largest index used.
pub fn parse_form(text: &str, dim: Option<usize>, field: FieldDesc) -> Result<KForm> {
    let expr = parse_expr(text, field)?;
    let k = expr.terms[0].indices.len();
    let max_index = expr
        .terms
        .iter()
        .flat_map(|t| t.indices.iter().copied())
        .max()
        .unwrap_or(0);
    let n = dim.unwrap_or(max_index);
    let mut form = KForm::zero(n, k);
    for t in &expr.terms {
        if t.indices.len() != k {
            return Err(Error::Parse {
                pos: t.pos,
                msg: format!("term has degree {}, expected {k}", t.indices.len()),
            });
        }
        if let Some(&bad) = t.indices.iter().find(|&&i| i == 0 || i > n) {
            return Err(Error::Parse {
                pos: t.pos,
                msg: format!("index {bad} outside 1..{n}"),
            });
        }
        let mut seen = t.indices.clone();
        seen.sort_unstable();
        if let Some(w) = seen.windows(2).find(|w| w[0] == w[1]) {
            return Err(Error::Parse {
                pos: t.pos,
                msg: format!("index {} repeated in one basis", w[0]),
            });
        }
        let zero_based: Vec<usize> = t.indices.iter().map(|i| i - 1).collect();
        form.add_unsorted(&zero_based, t.coeff.clone())?;
    }
    Ok(form)
}

fn blade_text(n: usize, blade: &[usize]) -> String {
    if n <= 9 {
        let digits: String = blade.iter().map(|i| char::from(b'1' + *i as u8)).collect();
        format!("e{digits}")
    } else {
        let list: Vec<String> = blade.iter().map(|i| (i + 1).to_string()).collect();
        format!("e[{}]", list.join(","))
    }
}

fn rational_text(r: &BigRational) -> String {
    if r.denom().is_one() {
        r.numer().to_string()
    } else {
        format!("{}/{}", r.numer(), r.denom())
    }
}

/// Renders a form in the grammar accepted by [`parse_form`]. A coefficient
/// `a + b√d` becomes two terms on the same blade.
pub fn render_form(form: &KForm) -> String {
    let mut out = String::new();
    let radicand = form.field().ok().and_then(FieldDesc::radicand);
    for (blade, c) in form.terms() {
        let basis = blade_text(form.dim(), blade);
        let parts = [(c.rational_part(), None), (c.irrational_part(), radicand)];
        for (value, root) in parts {
            if value.is_zero() {
                continue;
            }
            let negative = value.is_negative();
            if out.is_empty() {
                if negative {
                    out.push('-');
                }
            } else {
                out.push_str(if negative { " - " } else { " + " });
            }
            let mag = value.abs();
            match root {
                Some(d) => out.push_str(&format!("{}r{d}*", rational_text(&mag))),
                None if mag.is_one() => {}
                None => out.push_str(&format!("{}*", rational_text(&mag))),
            }
            out.push_str(&basis);
        }
    }
    if out.is_empty() {
        out.push('0');
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q() -> FieldDesc {
        FieldDesc::Rationals
    }

    #[test]
    fn digit_shorthand() {
        let f = parse_form("e124 + e134 + e256 + e378 + e157 + e468", Some(8), q()).unwrap();
        assert_eq!(f.dim(), 8);
        assert_eq!(f.degree(), 3);
        assert_eq!(f.len(), 6);
        assert_eq!(f.coeff(&[0, 1, 3]), Scalar::one());
    }

    #[test]
    fn bracket_form_absorbs_even_permutation() {
        let f = parse_form("e[8,4,5]", None, q()).unwrap();
        assert_eq!(f.dim(), 8);
        assert_eq!(f.coeff(&[3, 4, 7]), Scalar::one());
        let g = parse_form("e[2,1]", Some(3), q()).unwrap();
        assert_eq!(g.coeff(&[0, 1]), Scalar::from_int(-1));
    }

    #[test]
    fn scalars_and_radicals() {
        let f3 = FieldDesc::quad(3).unwrap();
        let f = parse_form("1/2r3*e[8,4,5] - 3/4 e123", None, f3).unwrap();
        assert_eq!(f.coeff(&[3, 4, 7]).to_string(), "1/2r3");
        assert_eq!(f.coeff(&[0, 1, 2]), Scalar::ratio(-3, 4));
        assert_eq!(f.field().unwrap(), f3);
    }

    #[test]
    fn duplicates_are_summed() {
        let f = parse_form("e12 + 2e12 - e21", None, q()).unwrap();
        assert_eq!(f.coeff(&[0, 1]), Scalar::from_int(4));
        let z = parse_form("e12 - e12", None, q()).unwrap();
        assert!(z.is_zero());
    }

    #[test]
    fn errors_carry_positions() {
        let cases = [
            ("e12 + e1", 7), // degree mismatch at the second basis
            ("e11", 1),      // repeated index
            ("e12 + x3", 7), // not a basis
            ("e12 e13", 5),  // missing operator
            ("e[1,2", 6),    // unterminated list
            ("1/0 e12", 3),  // zero denominator
            ("1r3 e12", 2),  // radical in Q
            ("e", 2),        // no digits
            ("", 1),         // empty
            ("e[0,1]", 1),   // index 0
        ];
        for (src, pos) in cases {
            match parse_form(src, None, q()) {
                Err(Error::Parse { pos: p, .. }) => assert_eq!(p, pos, "{src}"),
                other => panic!("{src}: {other:?}"),
            }
        }
        assert!(matches!(
            parse_form("e19", Some(8), q()),
            Err(Error::Parse { pos: 1, .. })
        ));
        assert!(parse_form("1r2*e12", None, FieldDesc::QuadExt(3)).is_err());
    }

    #[test]
    fn render_round_trip() {
        let f3 = FieldDesc::quad(3).unwrap();
        let src = "e123 + 1/2*e147 - 1/2*e156 + 1/2r3*e458 - 2*e567";
        let f = parse_form(src, Some(8), f3).unwrap();
        let text = render_form(&f);
        assert_eq!(parse_form(&text, Some(8), f3).unwrap(), f);
        let big = parse_form("e[1,5,11] - 2 e[2,3,10]", None, q()).unwrap();
        assert_eq!(render_form(&big), "e[1,5,11] - 2*e[2,3,10]");
    }
}
