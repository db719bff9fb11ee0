//! Literal exterior expressions such as `-a2^g3 - a3^(3g1 - g2)`.
//!
//! Grammar: a sum of terms, each an optional rational coefficient times a
//! wedge (`^` or `∧`) of factors; a factor is a generator label, optionally
//! preceded by a coefficient, or a parenthesized linear combination of
//! labels.

use fluxform::exterior::{wedge, Frame, KForm};
use fluxform::scalar::{from_rational, parse_rational};
use fluxform::{Error, Rational, Result, Scalar};

#[derive(Clone, Debug, PartialEq)]
enum Token {
    Number(Rational),
    Ident(String),
    Plus,
    Minus,
    Wedge,
    Open,
    Close,
}

fn tokenize(src: &str) -> Result<Vec<(usize, Token)>> {
    let chars: Vec<(usize, char)> = src.char_indices().collect();
    let mut out = Vec::new();
    let mut i = 0;
    while i < chars.len() {
        let (pos, c) = chars[i];
        match c {
            c if c.is_whitespace() => i += 1,
            '+' => {
                out.push((pos, Token::Plus));
                i += 1
            }
            '-' | '−' => {
                out.push((pos, Token::Minus));
                i += 1
            }
            '^' | '∧' => {
                out.push((pos, Token::Wedge));
                i += 1
            }
            '(' => {
                out.push((pos, Token::Open));
                i += 1
            }
            ')' => {
                out.push((pos, Token::Close));
                i += 1
            }
            c if c.is_ascii_digit() => {
                let start = i;
                while i < chars.len() && (chars[i].1.is_ascii_digit() || chars[i].1 == '.' || chars[i].1 == '/') {
                    i += 1;
                }
                let text: String = chars[start..i].iter().map(|(_, c)| c).collect();
                let value = parse_rational(&text)
                    .ok_or_else(|| Error::Invalid(format!("bad number '{text}' at offset {pos}")))?;
                out.push((pos, Token::Number(value)));
            }
            c if c.is_alphabetic() || c == '_' => {
                let start = i;
                while i < chars.len() && (chars[i].1.is_alphanumeric() || chars[i].1 == '_') {
                    i += 1;
                }
                out.push((pos, Token::Ident(chars[start..i].iter().map(|(_, c)| c).collect())));
            }
            other => return Err(Error::Invalid(format!("unexpected '{other}' at offset {pos}"))),
        }
    }
    Ok(out)
}

struct Parser<'a> {
    tokens: Vec<(usize, Token)>,
    at: usize,
    labels: &'a [String],
    len: usize,
}

impl Parser<'_> {
    fn peek(&self) -> Option<&Token> {
        self.tokens.get(self.at).map(|(_, t)| t)
    }

    fn offset(&self) -> usize {
        self.tokens.get(self.at).map(|(p, _)| *p).unwrap_or(self.len)
    }

    fn error(&self, what: &str) -> Error {
        Error::Invalid(format!("{what} at offset {}", self.offset()))
    }

    fn sign(&mut self) -> Option<bool> {
        match self.peek() {
            Some(Token::Plus) => {
                self.at += 1;
                Some(false)
            }
            Some(Token::Minus) => {
                self.at += 1;
                Some(true)
            }
            _ => None,
        }
    }

    fn coefficient(&mut self) -> Rational {
        if let Some(Token::Number(v)) = self.peek() {
            let v = v.clone();
            self.at += 1;
            v
        } else {
            Rational::one()
        }
    }

    fn label(&mut self) -> Result<usize> {
        match self.peek() {
            Some(Token::Ident(name)) => {
                let idx = self
                    .labels
                    .iter()
                    .position(|l| l == name)
                    .ok_or_else(|| self.error(&format!("unknown generator '{name}'")))?;
                self.at += 1;
                Ok(idx)
            }
            _ => Err(self.error("expected a generator")),
        }
    }

    /// Sum of signed terms; `one_forms` restricts terms to single labels.
    fn sum(&mut self, frame: Frame, one_forms: bool) -> Result<Option<KForm<Rational>>> {
        let mut acc: Option<KForm<Rational>> = None;
        let mut first = true;
        loop {
            let negative = match self.sign() {
                Some(neg) => neg,
                None if first => false,
                None => break,
            };
            first = false;
            let mut term = if one_forms { self.one_form_term(frame)? } else { self.term(frame)? };
            if negative {
                term = term.neg();
            }
            acc = Some(match acc {
                None => term,
                Some(a) => a.add(&term).map_err(|_| self.error("terms of different degree"))?,
            });
        }
        Ok(acc)
    }

    fn one_form_term(&mut self, frame: Frame) -> Result<KForm<Rational>> {
        let c = self.coefficient();
        let i = self.label()?;
        Ok(KForm::basis(frame, &[i])?.scale(&c))
    }

    fn factor(&mut self, frame: Frame) -> Result<KForm<Rational>> {
        if let Some(Token::Open) = self.peek() {
            self.at += 1;
            let inner = self.sum(frame, true)?.ok_or_else(|| self.error("empty parentheses"))?;
            if self.peek() != Some(&Token::Close) {
                return Err(self.error("expected ')'"));
            }
            self.at += 1;
            Ok(inner)
        } else {
            let i = self.label()?;
            KForm::basis(frame, &[i])
        }
    }

    fn term(&mut self, frame: Frame) -> Result<KForm<Rational>> {
        let c = self.coefficient();
        let mut acc = match self.peek() {
            Some(Token::Ident(_)) | Some(Token::Open) => self.factor(frame)?,
            // A bare number is a 0-form.
            _ => return Ok(KForm::constant(frame, c)),
        };
        while self.peek() == Some(&Token::Wedge) {
            self.at += 1;
            let next = self.factor(frame)?;
            acc = wedge(&acc, &next)?;
        }
        Ok(acc.scale(&c))
    }
}

/// Parse an expression over `labels` into a form of the given degree on
/// the Euclidean frame of that many generators. `"0"` is the zero form.
pub fn parse_form<S: Scalar>(src: &str, labels: &[String], degree: usize) -> Result<KForm<S>> {
    let frame = Frame::euclidean(labels.len());
    let mut parser = Parser { tokens: tokenize(src)?, at: 0, labels, len: src.len() };
    let parsed = parser.sum(frame, false)?;
    if parser.at != parser.tokens.len() {
        return Err(parser.error("unexpected token"));
    }
    let form = match parsed {
        None => return Err(Error::Invalid("empty expression".into())),
        Some(f) if f.is_zero() => KForm::zero(frame, degree),
        Some(f) if f.degree() != degree => return Err(Error::DegreeMismatch { expected: degree, found: f.degree() }),
        Some(f) => f,
    };
    let mut out = KForm::zero(frame, degree);
    for (mask, c) in form.terms() {
        out.add_term(mask, from_rational(c));
    }
    Ok(out)
}

/// Renders a form as an expression over `labels`, readable by [`parse_form`].
pub fn render_form<S: Scalar>(a: &KForm<S>, labels: &[String]) -> String {
    let mut out = String::new();
    for (n, (idx, c)) in a.sorted_terms().into_iter().enumerate() {
        let negative = c.to_f64() < 0.0;
        let mag = if negative { -c } else { c };
        out.push_str(match (n, negative) {
            (0, true) => "-",
            (0, false) => "",
            (_, true) => " - ",
            (_, false) => " + ",
        });
        if mag != S::one() || idx.is_empty() {
            out.push_str(&mag.render());
            if !idx.is_empty() {
                out.push(' ');
            }
        }
        let names: Vec<&str> = idx.iter().map(|&i| labels[i].as_str()).collect();
        out.push_str(&names.join("^"));
    }
    if out.is_empty() {
        out.push('0');
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    fn labels(names: &[&str]) -> Vec<String> {
        names.iter().map(|s| s.to_string()).collect()
    }

    #[test]
    fn distributes_parentheses() {
        let l = labels(&["a1", "a2", "a3", "g1", "g2", "g3"]);
        let f: KForm<Rational> = parse_form("-a2^g3 - a3^(3g1 - g2)", &l, 2).unwrap();
        assert_eq!(f.coeff(&[1, 5]), Rational::from_i64(-1));
        assert_eq!(f.coeff(&[2, 3]), Rational::from_i64(-3));
        assert_eq!(f.coeff(&[2, 4]), Rational::from_i64(1));
        assert_eq!(f.len(), 3);
    }

    #[test]
    fn coefficients_and_unicode() {
        let l = labels(&["β1", "β2", "β3"]);
        let f: KForm<Rational> = parse_form("1/2 β1∧β2 − 2β3∧β1", &l, 2).unwrap();
        assert_eq!(f.coeff(&[0, 1]), Rational::from_ratio(1, 2));
        assert_eq!(f.coeff(&[0, 2]), Rational::from_i64(2));
    }

    #[test]
    fn errors_carry_offsets() {
        let l = labels(&["a", "b"]);
        let err = parse_form::<Rational>("a^c", &l, 2).unwrap_err();
        assert!(format!("{err}").contains("offset 2"));
        assert!(parse_form::<Rational>("a^b", &l, 3).is_err());
        assert!(parse_form::<Rational>("0", &l, 2).unwrap().is_zero());
    }

    #[test]
    fn render_round_trips() {
        let l = labels(&["a1", "a2", "g1", "g2"]);
        let f: KForm<Rational> = parse_form("-a1^g2 + 1/3 a2^g1 + 2 g1^g2", &l, 2).unwrap();
        let text = render_form(&f, &l);
        assert_eq!(text, "-a1^g2 + 1/3 a2^g1 + 2 g1^g2");
        assert_eq!(parse_form::<Rational>(&text, &l, 2).unwrap(), f);
    }
}
