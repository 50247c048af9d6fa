//! Matrix files.
//!
//! ```text
//! # comment
//! order = 30
//! a = -z^7 - z^6 + z^2
//! b = z^7 - z^2
//! c = 1
//! d = -z^6 - 1
//! ```
//!
//! `z` stands for `ζ_order`. Expressions use `+ - *`, parentheses, integer
//! powers of `z` and rationals `p/q`.

use cyclotorsion::curves::MobiusMap;
use cyclotorsion::CycloNum;
use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, ToPrimitive, Zero};

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum ParseError {
    #[error("line {line}, column {col}: {msg}")]
    Syntax {
        line: usize,
        col: usize,
        msg: String,
    },
    #[error("missing key `{0}`")]
    MissingKey(&'static str),
    #[error(transparent)]
    Math(#[from] cyclotorsion::Error),
}

fn syntax(line: usize, col: usize, msg: impl Into<String>) -> ParseError {
    ParseError::Syntax {
        line,
        col,
        msg: msg.into(),
    }
}

/// The raw contents of a matrix file.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MatrixFile {
    pub order: u64,
    /// `a, b, c, d` as written, at level `order`.
    pub entries: [CycloNum; 4],
}

impl MatrixFile {
    pub fn to_mobius(&self) -> Result<MobiusMap, ParseError> {
        let [a, b, c, d] = self.entries.clone();
        Ok(MobiusMap::new(a, b, c, d)?)
    }
}

const KEYS: [&str; 5] = ["order", "a", "b", "c", "d"];

pub fn parse_matrix_file(text: &str) -> Result<MatrixFile, ParseError> {
    let mut found: [Option<(usize, usize, &str)>; 5] = [None; 5];
    for (idx, raw) in text.lines().enumerate() {
        let line = idx + 1;
        let body = raw.split('#').next().unwrap_or("");
        if body.trim().is_empty() {
            continue;
        }
        let Some(eq) = body.find('=') else {
            let col = body.len() - body.trim_start().len() + 1;
            return Err(syntax(line, col, "expected `key = expression`"));
        };
        let key = body[..eq].trim();
        let key_col = body.len() - body.trim_start().len() + 1;
        let Some(slot) = KEYS.iter().position(|k| *k == key) else {
            return Err(syntax(line, key_col, format!("unknown key `{key}`")));
        };
        if found[slot].is_some() {
            return Err(syntax(line, key_col, format!("duplicate key `{key}`")));
        }
        let value_col = body[..eq + 1].chars().count() + 1;
        found[slot] = Some((line, value_col, &body[eq + 1..]));
    }
    let (line, col, order_src) = found[0].ok_or(ParseError::MissingKey("order"))?;
    let order_text = order_src.trim();
    let order: u64 = order_text.parse().ok().filter(|&n| n > 0).ok_or_else(|| {
        syntax(
            line,
            col + leading_ws(order_src),
            "order must be a positive integer",
        )
    })?;
    let mut entries = Vec::with_capacity(4);
    for (slot, key) in KEYS.iter().enumerate().skip(1) {
        let (line, col, src) = found[slot].ok_or(ParseError::MissingKey(key))?;
        entries.push(Parser::new(src, order, line, col).parse_all()?);
    }
    let entries: [CycloNum; 4] = entries.try_into().expect("four entries");
    Ok(MatrixFile { order, entries })
}

/// Parses a matrix file into a normalized Möbius map.
pub fn parse_matrix(text: &str) -> Result<MobiusMap, ParseError> {
    parse_matrix_file(text)?.to_mobius()
}

/// Parses a single expression with `z = ζ_order`.
pub fn parse_expr(src: &str, order: u64) -> Result<CycloNum, ParseError> {
    if order == 0 {
        return Err(cyclotorsion::Error::ZeroLevel.into());
    }
    Parser::new(src, order, 1, 1).parse_all()
}

fn leading_ws(s: &str) -> usize {
    s.chars().take_while(|c| c.is_whitespace()).count()
}

#[derive(Debug, Clone, PartialEq, Eq)]
enum Tok {
    Int(BigInt),
    Z,
    Caret,
    Plus,
    Minus,
    Star,
    Slash,
    Open,
    Close,
    End,
}

struct Parser {
    toks: Vec<(Tok, usize)>,
    pos: usize,
    order: u64,
    line: usize,
}

impl Parser {
    fn new(src: &str, order: u64, line: usize, col0: usize) -> Self {
        let mut toks = Vec::new();
        let chars: Vec<char> = src.chars().collect();
        let mut i = 0;
        while i < chars.len() {
            let c = chars[i];
            let col = col0 + i;
            let tok = match c {
                c if c.is_whitespace() => {
                    i += 1;
                    continue;
                }
                '0'..='9' => {
                    let start = i;
                    while i < chars.len() && chars[i].is_ascii_digit() {
                        i += 1;
                    }
                    let digits: String = chars[start..i].iter().collect();
                    toks.push((Tok::Int(digits.parse().expect("digits")), col));
                    continue;
                }
                'z' => Tok::Z,
                '^' => Tok::Caret,
                '+' => Tok::Plus,
                '-' => Tok::Minus,
                '*' => Tok::Star,
                '/' => Tok::Slash,
                '(' => Tok::Open,
                ')' => Tok::Close,
                // Anything else becomes a token no rule accepts.
                _ => Tok::End,
            };
            toks.push((tok, col));
            if toks.last().is_some_and(|t| t.0 == Tok::End) {
                break;
            }
            i += 1;
        }
        let end_col = col0 + chars.len();
        toks.push((Tok::End, end_col));
        Parser {
            toks,
            pos: 0,
            order,
            line,
        }
    }

    fn peek(&self) -> &Tok {
        &self.toks[self.pos].0
    }

    fn col(&self) -> usize {
        self.toks[self.pos].1
    }

    fn err<T>(&self, msg: &str) -> Result<T, ParseError> {
        let msg = match self.peek() {
            Tok::End if self.pos + 1 == self.toks.len() => {
                format!("{msg}, found end of expression")
            }
            Tok::End => format!("{msg}, found an invalid character"),
            _ => msg.to_string(),
        };
        Err(syntax(self.line, self.col(), msg))
    }

    fn bump(&mut self) -> Tok {
        let t = self.toks[self.pos].0.clone();
        if self.pos + 1 < self.toks.len() {
            self.pos += 1;
        }
        t
    }

    fn parse_all(mut self) -> Result<CycloNum, ParseError> {
        let v = self.expr()?;
        if self.pos + 1 != self.toks.len() {
            return self.err("unexpected token");
        }
        Ok(v)
    }

    fn expr(&mut self) -> Result<CycloNum, ParseError> {
        let mut acc = self.term()?;
        loop {
            match self.peek() {
                Tok::Plus => {
                    self.bump();
                    acc = acc.checked_add(&self.term()?)?;
                }
                Tok::Minus => {
                    self.bump();
                    acc = acc.checked_sub(&self.term()?)?;
                }
                _ => return Ok(acc),
            }
        }
    }

    fn term(&mut self) -> Result<CycloNum, ParseError> {
        let mut acc = self.factor()?;
        while *self.peek() == Tok::Star {
            self.bump();
            acc = acc.checked_mul(&self.factor()?)?;
        }
        Ok(acc)
    }

    fn factor(&mut self) -> Result<CycloNum, ParseError> {
        match self.peek().clone() {
            Tok::Minus => {
                self.bump();
                Ok(-self.factor()?)
            }
            Tok::Open => {
                self.bump();
                let v = self.expr()?;
                if *self.peek() != Tok::Close {
                    return self.err("expected `)`");
                }
                self.bump();
                Ok(v)
            }
            Tok::Z => {
                self.bump();
                let mut k: i64 = 1;
                if *self.peek() == Tok::Caret {
                    self.bump();
                    let neg = *self.peek() == Tok::Minus;
                    if neg {
                        self.bump();
                    }
                    let col = self.col();
                    let Tok::Int(e) = self.peek().clone() else {
                        return self.err("expected an integer exponent");
                    };
                    self.bump();
                    let e = if neg { -e } else { e };
                    let reduced = e % BigInt::from(self.order);
                    k = reduced
                        .to_i64()
                        .ok_or_else(|| syntax(self.line, col, "exponent out of range"))?;
                }
                Ok(CycloNum::zeta_pow(self.order, k)?)
            }
            Tok::Int(n) => {
                self.bump();
                let mut den = BigInt::one();
                if *self.peek() == Tok::Slash {
                    self.bump();
                    let Tok::Int(d) = self.peek().clone() else {
                        return self.err("expected a positive denominator");
                    };
                    if d.is_zero() {
                        return self.err("denominator must be positive");
                    }
                    self.bump();
                    den = d;
                }
                Ok(CycloNum::from_rational(BigRational::new(n, den)))
            }
            _ => self.err("expected a number, `z`, `(` or `-`"),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn identity_files() {
        let id = parse_matrix("order = 1\na = 1\nb = 0\nc = 0\nd = 1\n").unwrap();
        assert_eq!(id, MobiusMap::identity());
        let scalar = parse_matrix("order = 4\na = z\nb = 0\nc = 0\nd = z\n").unwrap();
        assert_eq!(scalar, MobiusMap::identity());
    }

    #[test]
    fn expressions() {
        let v = parse_expr("-z^7 - z^6 + z^2", 30).unwrap();
        assert_eq!(v.to_expression("z"), "-z^7 - z^6 + z^2");
        assert_eq!(
            parse_expr("(1 + z) * (1 - z)", 4).unwrap(),
            CycloNum::from_integer(2)
        );
        assert_eq!(parse_expr("3/6", 1).unwrap().to_expression("z"), "1/2");
        assert_eq!(parse_expr("z^-1", 4).unwrap(), parse_expr("-z", 4).unwrap());
        assert_eq!(parse_expr("- -z^30", 30).unwrap(), CycloNum::one());
    }

    #[test]
    fn errors_carry_positions() {
        let e = parse_matrix("order = 5\na = 1 +\nb = 0\nc = 0\nd = 1\n").unwrap_err();
        assert!(
            matches!(
                e,
                ParseError::Syntax {
                    line: 2,
                    col: 8,
                    ..
                }
            ),
            "{e}"
        );
        let e = parse_matrix("order = 5\na = 2 z\n").unwrap_err();
        assert!(
            matches!(
                e,
                ParseError::Syntax {
                    line: 2,
                    col: 7,
                    ..
                }
            ),
            "{e}"
        );
        let e = parse_matrix("order = 5\n  q = 1\n").unwrap_err();
        assert!(
            matches!(
                e,
                ParseError::Syntax {
                    line: 2,
                    col: 3,
                    ..
                }
            ),
            "{e}"
        );
        let e = parse_matrix("order = 5\na = 1/0\n").unwrap_err();
        assert!(
            matches!(
                e,
                ParseError::Syntax {
                    line: 2,
                    col: 7,
                    ..
                }
            ),
            "{e}"
        );
        let e = parse_matrix("order = 5\na = 1 & 2\n").unwrap_err();
        assert!(
            matches!(
                e,
                ParseError::Syntax {
                    line: 2,
                    col: 7,
                    ..
                }
            ),
            "{e}"
        );
        assert_eq!(
            parse_matrix("order = 5\na = 1\n").unwrap_err(),
            ParseError::MissingKey("b")
        );
        let e = parse_matrix("order = 0\n").unwrap_err();
        assert!(
            matches!(
                e,
                ParseError::Syntax {
                    line: 1,
                    col: 9,
                    ..
                }
            ),
            "{e}"
        );
        let singular = parse_matrix("order = 1\na = 1\nb = 1\nc = 1\nd = 1\n").unwrap_err();
        assert_eq!(
            singular,
            ParseError::Math(cyclotorsion::Error::SingularMatrix)
        );
    }

    #[test]
    fn comments_and_blank_lines() {
        let text = "# header\n\norder = 3 # cube roots\na = z\nb = 0\n\nc = 0 \nd = 1\n";
        let m = parse_matrix_file(text).unwrap();
        assert_eq!(m.order, 3);
        assert_eq!(m.entries[0], CycloNum::zeta(3).unwrap());
    }
}
