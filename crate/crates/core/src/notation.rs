//! Text formats: Salamon tuples such as `(0,0,12,13,14+23)` and linear
//! combinations of basis forms such as `e16 + 2*e25 - 1/2*e34` or `13+24`.
//!
//! Grammar (whitespace ignored, `−` accepted for `-`):
//!
//! ```text
//! spec  := "(" entry ("," entry)* ")"
//! entry := "0" | signed_term (("+"|"-") term)*
//! term  := [integer "*"] ["e"] digit digit
//! ```
//!
//! Forms use the same term syntax with a rational coefficient and as many
//! index digits as the degree; `e{1,10}` spells indices above 9.

use crate::error::{Error, Result};
use crate::exterior::ExteriorForm;
use crate::linalg::Scalar;

struct Cursor {
    chars: Vec<(usize, char)>,
    pos: usize,
    end: usize,
}

impl Cursor {
    fn new(text: &str) -> Self {
        let chars: Vec<(usize, char)> = text
            .char_indices()
            .filter(|(_, c)| !c.is_whitespace())
            .map(|(i, c)| (i, if c == '−' { '-' } else { c }))
            .collect();
        Cursor { chars, pos: 0, end: text.len() }
    }

    fn peek(&self) -> Option<char> {
        self.chars.get(self.pos).map(|&(_, c)| c)
    }

    fn offset(&self) -> usize {
        self.chars.get(self.pos).map_or(self.end, |&(i, _)| i)
    }

    fn bump(&mut self) -> Option<char> {
        let c = self.peek();
        self.pos += 1;
        c
    }

    fn eat(&mut self, c: char) -> bool {
        if self.peek() == Some(c) {
            self.pos += 1;
            true
        } else {
            false
        }
    }

    fn expect(&mut self, c: char) -> Result<()> {
        if self.eat(c) {
            Ok(())
        } else {
            Err(self.error(format!("expected '{c}'")))
        }
    }

    fn digits(&mut self) -> String {
        let mut s = String::new();
        while let Some(c) = self.peek().filter(char::is_ascii_digit) {
            s.push(c);
            self.pos += 1;
        }
        s
    }

    fn error(&self, message: impl Into<String>) -> Error {
        let found = match self.peek() {
            Some(c) => format!(" (found '{c}')"),
            None => " (found end of input)".to_string(),
        };
        Error::parse(self.offset(), format!("{}{}", message.into(), found))
    }
}

fn check_index(index: usize, dim: usize, position: usize) -> Result<usize> {
    if index == 0 || index > dim {
        Err(Error::IndexOutOfRange { index, dim, position })
    } else {
        Ok(index)
    }
}

/// One `[coeff "*"] ["e"] indices` term. The leading coefficient may be a
/// rational when `rational` is set.
fn term(cur: &mut Cursor, dim: usize, degree: usize, rational: bool) -> Result<ExteriorForm> {
    let start = cur.offset();
    let save = cur.pos;
    let mut coeff = Scalar::one();
    let lead = cur.digits();
    let mut index_digits = None;
    if !lead.is_empty() {
        if cur.peek() == Some('/') && rational {
            cur.bump();
            let den = cur.digits();
            if den.is_empty() {
                return Err(cur.error("expected denominator"));
            }
            coeff = format!("{lead}/{den}").parse().map_err(|_| Error::parse(start, "bad coefficient"))?;
            cur.expect('*')?;
        } else if cur.eat('*') {
            coeff = lead.parse().map_err(|_| Error::parse(start, "bad coefficient"))?;
        } else {
            index_digits = Some(lead);
        }
    }
    let indices: Vec<usize> = match index_digits {
        Some(d) => d.chars().map(|c| c.to_digit(10).unwrap() as usize).collect(),
        None => {
            let prefixed = cur.eat('e');
            if prefixed && cur.eat('{') {
                let mut idx = Vec::new();
                loop {
                    let d = cur.digits();
                    if d.is_empty() {
                        return Err(cur.error("expected index"));
                    }
                    idx.push(d.parse::<usize>().map_err(|_| cur.error("bad index"))?);
                    if cur.eat('}') {
                        break;
                    }
                    cur.expect(',')?;
                }
                idx
            } else {
                let d = cur.digits();
                if d.is_empty() {
                    cur.pos = save;
                    return Err(cur.error("expected a term"));
                }
                d.chars().map(|c| c.to_digit(10).unwrap() as usize).collect()
            }
        }
    };
    if indices.len() != degree {
        return Err(Error::parse(
            start,
            format!("term must name exactly {degree} indices, got {}", indices.len()),
        ));
    }
    for &i in &indices {
        check_index(i, dim, start)?;
    }
    let mut sorted = indices.clone();
    sorted.sort_unstable();
    sorted.dedup();
    if sorted.len() != indices.len() {
        return Err(Error::parse(start, "repeated index in term"));
    }
    Ok(ExteriorForm::basis_wedge(dim, &indices).scale(&coeff))
}

/// Sum of signed terms up to (not including) a terminator.
fn sum(cur: &mut Cursor, dim: usize, degree: usize, rational: bool, stop: &[char]) -> Result<ExteriorForm> {
    let mut acc = ExteriorForm::zero(dim, degree);
    let mut first = true;
    loop {
        let negative = if cur.eat('-') {
            true
        } else if cur.eat('+') {
            false
        } else if first {
            false
        } else {
            break;
        };
        let t = term(cur, dim, degree, rational)?;
        acc = if negative { acc.sub(&t) } else { acc.add(&t) };
        first = false;
        if cur.peek().is_none_or(|c| stop.contains(&c)) {
            break;
        }
        if !matches!(cur.peek(), Some('+') | Some('-')) {
            return Err(cur.error("expected '+', '-' or end of term list"));
        }
    }
    Ok(acc)
}

fn is_zero_entry(cur: &Cursor, stop: &[char]) -> bool {
    cur.peek() == Some('0')
        && cur.chars.get(cur.pos + 1).is_none_or(|&(_, c)| stop.contains(&c))
}

/// Parses a Salamon tuple into the images `d e^1, …, d e^n`.
pub fn parse_salamon(text: &str) -> Result<Vec<ExteriorForm>> {
    let mut cur = Cursor::new(text);
    cur.expect('(')?;
    // count entries first: indices may refer forward
    let dim = cur.chars.iter().filter(|&&(_, c)| c == ',').count() + 1;
    if dim > 9 {
        return Err(Error::parse(
            0,
            format!("Salamon notation supports at most 9 generators ({dim} given); use structure constants"),
        ));
    }
    let mut images = Vec::with_capacity(dim);
    loop {
        if is_zero_entry(&cur, &[',', ')']) {
            cur.bump();
            images.push(ExteriorForm::zero(dim, 2));
        } else {
            images.push(sum(&mut cur, dim, 2, false, &[',', ')'])?);
        }
        if cur.eat(')') {
            break;
        }
        cur.expect(',')?;
    }
    if cur.peek().is_some() {
        return Err(cur.error("trailing input after ')'"));
    }
    Ok(images)
}

/// Parses a homogeneous form of the given degree on a `dim`-dimensional space.
pub fn parse_form(text: &str, dim: usize, degree: usize) -> Result<ExteriorForm> {
    let mut cur = Cursor::new(text);
    if cur.peek().is_none() {
        return Err(cur.error("empty form"));
    }
    if is_zero_entry(&cur, &[]) {
        return Ok(ExteriorForm::zero(dim, degree));
    }
    let f = sum(&mut cur, dim, degree, true, &[])?;
    if cur.peek().is_some() {
        return Err(cur.error("unexpected input"));
    }
    Ok(f)
}
