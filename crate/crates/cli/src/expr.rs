//! Knot expressions.
//!
//! ```text
//! expr   := term ('#' term)*
//! term   := INT '*' factor | factor
//! factor := 'T' '(' INT ',' INT ')'          | 'torus' INT INT
//!         | 'C' '(' INT ',' INT ';' expr ')' | 'cable' INT INT factor
//!         | 'Kn' '(' INT ')'                 | 'Kn' INT
//!         | '-' factor                       (only -T(2,5))
//!         | '(' expr ')'
//! ```

use std::fmt;

use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("parse error at column {column}: {message}")]
pub struct ParseError {
    /// 1-based character column.
    pub column: usize,
    pub message: String,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Knot {
    Torus(u64, u64),
    Cable { p: u64, q: u64, inner: Box<Knot> },
    Kn(u64),
    MirrorT25,
    Sum(Vec<Knot>),
}

impl Knot {
    /// Top-level summands, with nested sums flattened.
    pub fn summands(&self) -> Vec<&Knot> {
        match self {
            Knot::Sum(parts) => parts.iter().flat_map(Knot::summands).collect(),
            k => vec![k],
        }
    }

    pub fn uses_family(&self) -> bool {
        match self {
            Knot::Kn(_) => true,
            Knot::Cable { inner, .. } => inner.uses_family(),
            Knot::Sum(parts) => parts.iter().any(Knot::uses_family),
            _ => false,
        }
    }
}

impl fmt::Display for Knot {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Knot::Torus(p, q) => write!(f, "T({p},{q})"),
            Knot::Cable { p, q, inner } => write!(f, "C({p},{q}; {inner})"),
            Knot::Kn(n) => write!(f, "Kn({n})"),
            Knot::MirrorT25 => write!(f, "-T(2,5)"),
            Knot::Sum(parts) => {
                for (i, k) in parts.iter().enumerate() {
                    if i > 0 {
                        write!(f, " # ")?;
                    }
                    write!(f, "{k}")?;
                }
                Ok(())
            }
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
enum Tok {
    Int(u64),
    Word(String),
    Sym(char),
    End,
}

impl fmt::Display for Tok {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Tok::Int(n) => write!(f, "'{n}'"),
            Tok::Word(w) => write!(f, "'{w}'"),
            Tok::Sym(c) => write!(f, "'{c}'"),
            Tok::End => write!(f, "end of input"),
        }
    }
}

fn err<T>(column: usize, message: impl Into<String>) -> Result<T, ParseError> {
    Err(ParseError {
        column,
        message: message.into(),
    })
}

fn lex(src: &str) -> Result<Vec<(usize, Tok)>, ParseError> {
    let chars: Vec<char> = src.chars().collect();
    let mut out = Vec::new();
    let mut i = 0;
    while i < chars.len() {
        let c = chars[i];
        let col = i + 1;
        if c.is_whitespace() {
            i += 1;
        } else if c.is_ascii_digit() {
            let start = i;
            while i < chars.len() && chars[i].is_ascii_digit() {
                i += 1;
            }
            let text: String = chars[start..i].iter().collect();
            match text.parse() {
                Ok(n) => out.push((col, Tok::Int(n))),
                Err(_) => return err(col, format!("integer {text} is too large")),
            }
        } else if c.is_ascii_alphabetic() {
            let start = i;
            while i < chars.len() && chars[i].is_ascii_alphabetic() {
                i += 1;
            }
            out.push((col, Tok::Word(chars[start..i].iter().collect())));
        } else if "()#*,;-".contains(c) {
            out.push((col, Tok::Sym(c)));
            i += 1;
        } else {
            return err(col, format!("unexpected character '{c}'"));
        }
    }
    out.push((chars.len() + 1, Tok::End));
    Ok(out)
}

struct Parser {
    toks: Vec<(usize, Tok)>,
    pos: usize,
}

impl Parser {
    fn peek(&self) -> &Tok {
        &self.toks[self.pos].1
    }

    fn column(&self) -> usize {
        self.toks[self.pos].0
    }

    fn bump(&mut self) -> (usize, Tok) {
        let t = self.toks[self.pos].clone();
        if t.1 != Tok::End {
            self.pos += 1;
        }
        t
    }

    fn expect(&mut self, c: char) -> Result<(), ParseError> {
        match self.bump() {
            (_, Tok::Sym(s)) if s == c => Ok(()),
            (col, t) => err(col, format!("expected '{c}', found {t}")),
        }
    }

    fn int(&mut self) -> Result<(usize, u64), ParseError> {
        match self.bump() {
            (col, Tok::Int(n)) => Ok((col, n)),
            (col, t) => err(col, format!("expected an integer, found {t}")),
        }
    }

    fn expr(&mut self) -> Result<Knot, ParseError> {
        let mut parts = Vec::new();
        push_flat(&mut parts, self.term()?);
        while *self.peek() == Tok::Sym('#') {
            self.bump();
            push_flat(&mut parts, self.term()?);
        }
        Ok(if parts.len() == 1 {
            parts.pop().unwrap()
        } else {
            Knot::Sum(parts)
        })
    }

    fn term(&mut self) -> Result<Knot, ParseError> {
        if let Tok::Int(k) = *self.peek() {
            let col = self.column();
            self.bump();
            self.expect('*')?;
            if k == 0 {
                return err(col, "repeat count must be at least 1");
            }
            let f = self.factor()?;
            let mut parts = Vec::new();
            for _ in 0..k {
                push_flat(&mut parts, f.clone());
            }
            return Ok(if parts.len() == 1 {
                parts.pop().unwrap()
            } else {
                Knot::Sum(parts)
            });
        }
        self.factor()
    }

    fn torus_args(&mut self, delimited: bool) -> Result<(u64, u64), ParseError> {
        if delimited {
            self.expect('(')?;
        }
        let (col, p) = self.int()?;
        if delimited {
            self.expect(',')?;
        }
        let (_, q) = self.int()?;
        if p < 2 || q < 2 || gcd(p, q) != 1 {
            return err(col, format!("({p},{q}) needs coprime p, q >= 2"));
        }
        Ok((p, q))
    }

    fn factor(&mut self) -> Result<Knot, ParseError> {
        let (col, tok) = self.bump();
        match tok {
            Tok::Sym('-') => {
                let inner_col = self.column();
                match self.factor()? {
                    Knot::Torus(2, 5) | Knot::Torus(5, 2) => Ok(Knot::MirrorT25),
                    _ => err(inner_col, "only -T(2,5) may be mirrored"),
                }
            }
            Tok::Sym('(') => {
                let k = self.expr()?;
                self.expect(')')?;
                Ok(k)
            }
            Tok::Word(w) if w == "T" => {
                let (p, q) = self.torus_args(true)?;
                self.expect(')')?;
                Ok(Knot::Torus(p, q))
            }
            Tok::Word(w) if w == "torus" => {
                let (p, q) = self.torus_args(false)?;
                Ok(Knot::Torus(p, q))
            }
            Tok::Word(w) if w == "C" => {
                let (p, q) = self.torus_args(true)?;
                self.expect(';')?;
                let inner = Box::new(self.expr()?);
                self.expect(')')?;
                Ok(Knot::Cable { p, q, inner })
            }
            Tok::Word(w) if w == "cable" => {
                let (p, q) = self.torus_args(false)?;
                let inner = Box::new(self.factor()?);
                Ok(Knot::Cable { p, q, inner })
            }
            Tok::Word(w) if w == "Kn" || w == "kn" => {
                let delimited = *self.peek() == Tok::Sym('(');
                if delimited {
                    self.bump();
                }
                let (ncol, n) = self.int()?;
                if delimited {
                    self.expect(')')?;
                }
                if n == 0 {
                    return err(ncol, "family index must be at least 1");
                }
                Ok(Knot::Kn(n))
            }
            Tok::Word(w) => err(col, format!("unknown knot '{w}'")),
            t => err(col, format!("expected a knot, found {t}")),
        }
    }
}

fn push_flat(parts: &mut Vec<Knot>, k: Knot) {
    match k {
        Knot::Sum(inner) => parts.extend(inner),
        k => parts.push(k),
    }
}

fn gcd(a: u64, b: u64) -> u64 {
    if b == 0 {
        a
    } else {
        gcd(b, a % b)
    }
}

pub fn parse(src: &str) -> Result<Knot, ParseError> {
    let mut p = Parser {
        toks: lex(src)?,
        pos: 0,
    };
    let k = p.expr()?;
    match p.bump() {
        (_, Tok::End) => Ok(k),
        (col, t) => err(col, format!("unexpected {t} after expression")),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn symbolic_and_word_forms_agree() {
        assert_eq!(parse("T(4,5)").unwrap(), parse("torus 4 5").unwrap());
        assert_eq!(
            parse("C(2,7; T(2,5))").unwrap(),
            parse("cable 2 7 (torus 2 5)").unwrap()
        );
        assert_eq!(parse("Kn(3)").unwrap(), parse("Kn 3").unwrap());
    }

    #[test]
    fn repeats_and_sums_flatten() {
        let k = parse("2*Kn(1) # -T(2,5)").unwrap();
        assert_eq!(
            k,
            Knot::Sum(vec![Knot::Kn(1), Knot::Kn(1), Knot::MirrorT25])
        );
        assert_eq!(k.to_string(), "Kn(1) # Kn(1) # -T(2,5)");
        assert_eq!(
            parse("(T(2,3) # T(2,3)) # T(3,4)")
                .unwrap()
                .summands()
                .len(),
            3
        );
        assert_eq!(parse("2*-T(5,2)").unwrap().summands().len(), 2);
    }

    #[test]
    fn display_reparses() {
        for src in [
            "C(2,3; T(2,3) # Kn(2))",
            "3*T(2,3) # -T(2,5)",
            "cable 3 7 cable 2 5 torus 2 3",
        ] {
            let k = parse(src).unwrap();
            assert_eq!(parse(&k.to_string()).unwrap(), k);
        }
    }

    #[test]
    fn errors_carry_columns() {
        let col = |s: &str| parse(s).unwrap_err().column;
        assert_eq!(col("T(2,3"), 6);
        assert_eq!(col("T(2,3) # -T(2,3)"), 11);
        assert_eq!(col("T(2,4)"), 3);
        assert_eq!(col("Kn(0)"), 4);
        assert_eq!(col("T(2,3) $"), 8);
        assert_eq!(col("0*T(2,3)"), 1);
        assert_eq!(col("T(2,3) T(2,5)"), 8);
        assert_eq!(col("X(2,3)"), 1);
        assert_eq!(col(""), 1);
    }
}
