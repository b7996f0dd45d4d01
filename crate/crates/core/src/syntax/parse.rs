//! Recursive-descent parser for the ASCII formula grammar.
//!
//! ```text
//! formula := disj ( "->" formula )?
//! disj    := conj ( "\/" conj )*
//! conj    := unary ( "/\" unary )*
//! unary   := "~" unary | "[]" unary | leaf
//! leaf    := IDENT | "_|_" | "T" | "(" formula ")"
//! ```
//!
//! `~A` is sugar for `A -> _|_` and `T` for `_|_ -> _|_`.

use super::formula::{Formula, Logic, Sequent};
use crate::error::SyntaxError;

#[derive(Clone, Debug, PartialEq, Eq)]
enum Tok {
    Ident(String),
    Falsum,
    Verum,
    Not,
    Nec,
    And,
    Or,
    Imp,
    LParen,
    RParen,
}

impl Tok {
    fn describe(&self) -> String {
        match self {
            Tok::Ident(s) => format!("identifier `{s}`"),
            Tok::Falsum => "`_|_`".into(),
            Tok::Verum => "`T`".into(),
            Tok::Not => "`~`".into(),
            Tok::Nec => "`[]`".into(),
            Tok::And => "`/\\`".into(),
            Tok::Or => "`\\/`".into(),
            Tok::Imp => "`->`".into(),
            Tok::LParen => "`(`".into(),
            Tok::RParen => "`)`".into(),
        }
    }
}

fn tokenize(text: &str) -> Result<Vec<(usize, Tok)>, SyntaxError> {
    let bytes = text.as_bytes();
    let mut out = Vec::new();
    let mut i = 0;
    while i < bytes.len() {
        let c = bytes[i];
        if c.is_ascii_whitespace() {
            i += 1;
            continue;
        }
        let rest = &text[i..];
        let (tok, len) = if c.is_ascii_alphabetic() {
            let len = rest
                .bytes()
                .take_while(|b| b.is_ascii_alphanumeric() || *b == b'_')
                .count();
            let word = &rest[..len];
            let tok = if word == "T" {
                Tok::Verum
            } else {
                Tok::Ident(word.to_string())
            };
            (tok, len)
        } else if rest.starts_with("_|_") {
            (Tok::Falsum, 3)
        } else if rest.starts_with("[]") {
            (Tok::Nec, 2)
        } else if rest.starts_with("/\\") {
            (Tok::And, 2)
        } else if rest.starts_with("\\/") {
            (Tok::Or, 2)
        } else if rest.starts_with("->") {
            (Tok::Imp, 2)
        } else if c == b'~' {
            (Tok::Not, 1)
        } else if c == b'(' {
            (Tok::LParen, 1)
        } else if c == b')' {
            (Tok::RParen, 1)
        } else {
            let ch = rest.chars().next().unwrap_or('?');
            return Err(SyntaxError::Parse {
                position: i,
                message: format!("unexpected character `{ch}`"),
            });
        };
        out.push((i, tok));
        i += len;
    }
    Ok(out)
}

struct Parser {
    toks: Vec<(usize, Tok)>,
    pos: usize,
    end: usize,
    logic: Logic,
}

impl Parser {
    fn peek(&self) -> Option<&Tok> {
        self.toks.get(self.pos).map(|(_, t)| t)
    }

    fn offset(&self) -> usize {
        self.toks.get(self.pos).map_or(self.end, |(o, _)| *o)
    }

    fn eat(&mut self, tok: &Tok) -> bool {
        if self.peek() == Some(tok) {
            self.pos += 1;
            true
        } else {
            false
        }
    }

    fn error(&self, message: impl Into<String>) -> SyntaxError {
        SyntaxError::Parse {
            position: self.offset(),
            message: message.into(),
        }
    }

    fn formula(&mut self) -> Result<Formula, SyntaxError> {
        let left = self.disj()?;
        if self.eat(&Tok::Imp) {
            let right = self.formula()?;
            Ok(Formula::implies(left, right))
        } else {
            Ok(left)
        }
    }

    fn disj(&mut self) -> Result<Formula, SyntaxError> {
        let mut acc = self.conj()?;
        while self.eat(&Tok::Or) {
            let rhs = self.conj()?;
            acc = Formula::disj(acc, rhs);
        }
        Ok(acc)
    }

    fn conj(&mut self) -> Result<Formula, SyntaxError> {
        let mut acc = self.unary()?;
        while self.eat(&Tok::And) {
            let rhs = self.unary()?;
            acc = Formula::conj(acc, rhs);
        }
        Ok(acc)
    }

    fn unary(&mut self) -> Result<Formula, SyntaxError> {
        let at = self.offset();
        if self.eat(&Tok::Not) {
            return Ok(Formula::neg(self.unary()?));
        }
        if self.eat(&Tok::Nec) {
            if self.logic == Logic::Ip {
                return Err(SyntaxError::BoxInIp { position: Some(at) });
            }
            return Ok(Formula::boxed(self.unary()?));
        }
        self.leaf()
    }

    fn leaf(&mut self) -> Result<Formula, SyntaxError> {
        let Some(tok) = self.peek().cloned() else {
            return Err(self.error("unexpected end of input"));
        };
        match tok {
            Tok::Ident(name) => {
                self.pos += 1;
                Ok(Formula::atom(&name))
            }
            Tok::Falsum => {
                self.pos += 1;
                Ok(Formula::Falsum)
            }
            Tok::Verum => {
                self.pos += 1;
                Ok(Formula::verum())
            }
            Tok::LParen => {
                self.pos += 1;
                let inner = self.formula()?;
                if !self.eat(&Tok::RParen) {
                    return Err(self.error("expected `)`"));
                }
                Ok(inner)
            }
            other => Err(self.error(format!("unexpected {}", other.describe()))),
        }
    }
}

/// Parses a single formula. With `Logic::Ip`, any `[]` is rejected.
pub fn parse(text: &str, logic: Logic) -> Result<Formula, SyntaxError> {
    let toks = tokenize(text)?;
    let mut p = Parser {
        toks,
        pos: 0,
        end: text.len(),
        logic,
    };
    let f = p.formula()?;
    if let Some(tok) = p.peek() {
        return Err(p.error(format!("trailing input starting at {}", tok.describe())));
    }
    Ok(f)
}

/// Parses `A1, A2 |- B`. An empty left side (`|- B`) is allowed.
pub fn parse_sequent(text: &str, logic: Logic) -> Result<Sequent, SyntaxError> {
    let Some(split) = text.find("|-") else {
        return Err(SyntaxError::Parse {
            position: 0,
            message: "missing `|-`".into(),
        });
    };
    let (lhs, rhs) = (&text[..split], &text[split + 2..]);
    let shift = |e: SyntaxError, by: usize| match e {
        SyntaxError::Parse { position, message } => SyntaxError::Parse {
            position: position + by,
            message,
        },
        SyntaxError::BoxInIp { position } => SyntaxError::BoxInIp {
            position: position.map(|p| p + by),
        },
    };
    let mut assumptions = Vec::new();
    if !lhs.trim().is_empty() {
        let mut start = 0;
        for piece in lhs.split(',') {
            assumptions.push(parse(piece, logic).map_err(|e| shift(e, start))?);
            start += piece.len() + 1;
        }
    }
    let goal = parse(rhs, logic).map_err(|e| shift(e, split + 2))?;
    Sequent::new(assumptions, goal, logic)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p() -> Formula {
        Formula::atom("p")
    }
    fn q() -> Formula {
        Formula::atom("q")
    }
    fn r() -> Formula {
        Formula::atom("r")
    }

    #[test]
    fn implication_is_right_associative() {
        let f = parse("p -> q -> r", Logic::Ip).unwrap();
        assert_eq!(f, Formula::implies(p(), Formula::implies(q(), r())));
    }

    #[test]
    fn tilde_desugars_to_falsum() {
        assert_eq!(
            parse("~p", Logic::Ip).unwrap(),
            Formula::implies(p(), Formula::Falsum)
        );
    }

    #[test]
    fn box_rejected_in_ip() {
        let err = parse("[]p", Logic::Ip).unwrap_err();
        assert_eq!(err, SyntaxError::BoxInIp { position: Some(0) });
        assert_eq!(parse("[]p", Logic::Ep).unwrap(), Formula::boxed(p()));
    }

    #[test]
    fn precedence_and_left_associativity() {
        let f = parse("p \\/ q /\\ r -> p", Logic::Ip).unwrap();
        assert_eq!(
            f,
            Formula::implies(Formula::disj(p(), Formula::conj(q(), r())), p())
        );
        let g = parse("p /\\ q /\\ r", Logic::Ip).unwrap();
        assert_eq!(g, Formula::conj(Formula::conj(p(), q()), r()));
        let h = parse("~p /\\ []q", Logic::Ep).unwrap();
        assert_eq!(h, Formula::conj(Formula::neg(p()), Formula::boxed(q())));
    }

    #[test]
    fn verum_desugars() {
        assert_eq!(parse("T", Logic::Ip).unwrap(), Formula::verum());
        assert_eq!(parse("_|_", Logic::Ip).unwrap(), Formula::Falsum);
        assert_eq!(parse("Tx", Logic::Ip).unwrap(), Formula::atom("Tx"));
    }

    #[test]
    fn syntax_errors_carry_positions() {
        match parse("p -> (q /\\ ", Logic::Ip).unwrap_err() {
            SyntaxError::Parse { position, .. } => assert_eq!(position, 11),
            e => panic!("unexpected {e:?}"),
        }
        match parse("p $ q", Logic::Ip).unwrap_err() {
            SyntaxError::Parse { position, .. } => assert_eq!(position, 2),
            e => panic!("unexpected {e:?}"),
        }
        assert!(parse("p q", Logic::Ip).is_err());
        assert!(parse("", Logic::Ip).is_err());
        assert!(parse("1p", Logic::Ip).is_err());
    }

    #[test]
    fn sequents() {
        let s = parse_sequent("p, p -> q |- q", Logic::Ip).unwrap();
        assert_eq!(s.assumptions, vec![p(), Formula::implies(p(), q())]);
        assert_eq!(s.goal, q());
        let t = parse_sequent("|- p -> []p", Logic::Ep).unwrap();
        assert!(t.assumptions.is_empty());
        assert!(parse_sequent("|- []p", Logic::Ip).is_err());
        assert!(parse_sequent("p -> q", Logic::Ip).is_err());
        match parse_sequent("p, q /\\ |- r", Logic::Ip).unwrap_err() {
            SyntaxError::Parse { position, .. } => assert_eq!(position, 8),
            e => panic!("unexpected {e:?}"),
        }
    }
}
