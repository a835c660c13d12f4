//! Expression grammar for the `mult` command: terms `T(word)`,
//! `C(word)`, `Tinv(word)`, Laurent scalars (`q`, `q^-2`, integers),
//! operators `*` and `+`, unary minus, parentheses.

use kbraid::error::{Error, Result};
use kbraid::hecke::{HeckeAlgebra, HeckeElement, KLTable};
use kbraid::laurent::LaurentPoly;

#[derive(Clone, Debug, PartialEq)]
enum Token {
    Ident(String),
    Int(i64),
    LParen,
    RParen,
    Plus,
    Minus,
    Star,
    Caret,
}

struct Lexer {
    tokens: Vec<(usize, Token)>,
}

fn lex(input: &str) -> Result<Lexer> {
    let mut tokens = Vec::new();
    let chars: Vec<char> = input.chars().collect();
    let mut i = 0;
    while i < chars.len() {
        let c = chars[i];
        let start = i;
        match c {
            ' ' | '\t' | ',' => i += 1,
            '(' => {
                tokens.push((start, Token::LParen));
                i += 1;
            }
            ')' => {
                tokens.push((start, Token::RParen));
                i += 1;
            }
            '+' => {
                tokens.push((start, Token::Plus));
                i += 1;
            }
            '-' => {
                tokens.push((start, Token::Minus));
                i += 1;
            }
            '*' => {
                tokens.push((start, Token::Star));
                i += 1;
            }
            '^' => {
                tokens.push((start, Token::Caret));
                i += 1;
            }
            '0'..='9' => {
                let mut value = 0i64;
                while i < chars.len() && chars[i].is_ascii_digit() {
                    value = value * 10 + (chars[i] as i64 - '0' as i64);
                    i += 1;
                }
                tokens.push((start, Token::Int(value)));
            }
            c if c.is_ascii_alphabetic() => {
                let mut name = String::new();
                while i < chars.len() && chars[i].is_ascii_alphanumeric() {
                    name.push(chars[i]);
                    i += 1;
                }
                tokens.push((start, Token::Ident(name)));
            }
            other => {
                return Err(Error::Parse {
                    position: start,
                    message: format!("unexpected character {other:?}"),
                })
            }
        }
    }
    Ok(Lexer { tokens })
}

pub struct ExprParser<'a> {
    alg: &'a HeckeAlgebra,
    table: &'a KLTable,
    tokens: Vec<(usize, Token)>,
    pos: usize,
}

impl<'a> ExprParser<'a> {
    pub fn new(alg: &'a HeckeAlgebra, table: &'a KLTable) -> Self {
        ExprParser {
            alg,
            table,
            tokens: Vec::new(),
            pos: 0,
        }
    }

    pub fn parse(&mut self, input: &str) -> Result<HeckeElement> {
        self.tokens = lex(input)?.tokens;
        self.pos = 0;
        let value = self.expr()?;
        if let Some((at, tok)) = self.tokens.get(self.pos) {
            return Err(Error::Parse {
                position: *at,
                message: format!("unexpected trailing token {tok:?}"),
            });
        }
        Ok(value)
    }

    fn peek(&self) -> Option<&Token> {
        self.tokens.get(self.pos).map(|(_, t)| t)
    }

    fn at(&self) -> usize {
        self.tokens
            .get(self.pos)
            .or_else(|| self.tokens.last())
            .map(|(p, _)| *p)
            .unwrap_or(0)
    }

    fn bump(&mut self) -> Option<Token> {
        let t = self.tokens.get(self.pos).map(|(_, t)| t.clone());
        self.pos += 1;
        t
    }

    fn expect(&mut self, expected: Token) -> Result<()> {
        let at = self.at();
        match self.bump() {
            Some(t) if t == expected => Ok(()),
            Some(t) => Err(Error::Parse {
                position: at,
                message: format!("expected {expected:?}, found {t:?}"),
            }),
            None => Err(Error::Parse {
                position: at,
                message: format!("expected {expected:?}, found end of input"),
            }),
        }
    }

    fn expr(&mut self) -> Result<HeckeElement> {
        let mut out = self.term()?;
        while self.peek() == Some(&Token::Plus) {
            self.bump();
            let rhs = self.term()?;
            out = out.checked_add(&rhs)?;
        }
        Ok(out)
    }

    fn term(&mut self) -> Result<HeckeElement> {
        let mut out = self.factor()?;
        while self.peek() == Some(&Token::Star) {
            self.bump();
            let rhs = self.factor()?;
            out = out.mult(&rhs)?;
        }
        Ok(out)
    }

    fn factor(&mut self) -> Result<HeckeElement> {
        if self.peek() == Some(&Token::Minus) {
            self.bump();
            let inner = self.factor()?;
            return Ok(inner.scaled(&-LaurentPoly::one()));
        }
        self.atom()
    }

    fn atom(&mut self) -> Result<HeckeElement> {
        let at = self.at();
        match self.bump() {
            Some(Token::Ident(name)) => match name.as_str() {
                "T" => {
                    let w = self.word_argument()?;
                    self.alg.t_word(&w)
                }
                "C" => {
                    let word = self.word_argument()?;
                    let w = self.alg.group().from_word(&word)?;
                    self.alg.kl_basis_element(&w, self.table)
                }
                "Tinv" => {
                    let word = self.word_argument()?;
                    let w = self.alg.group().from_word(&word)?;
                    self.alg.t_inverse(&w)
                }
                "q" => {
                    let exponent = self.optional_exponent()?;
                    Ok(self.alg.unit().scaled(&LaurentPoly::q_pow(exponent)))
                }
                other => Err(Error::Parse {
                    position: at,
                    message: format!("unknown name {other:?}, expected T, C, Tinv or q"),
                }),
            },
            Some(Token::Int(n)) => Ok(self.alg.unit().scaled(&LaurentPoly::constant(n))),
            Some(Token::LParen) => {
                let inner = self.expr()?;
                self.expect(Token::RParen)?;
                Ok(inner)
            }
            Some(t) => Err(Error::Parse {
                position: at,
                message: format!("unexpected token {t:?}"),
            }),
            None => Err(Error::Parse {
                position: at,
                message: "unexpected end of input".into(),
            }),
        }
    }

    /// `( i j k )` with 1-based generator indices; empty for the
    /// identity.
    fn word_argument(&mut self) -> Result<Vec<usize>> {
        self.expect(Token::LParen)?;
        let mut word = Vec::new();
        loop {
            let at = self.at();
            match self.bump() {
                Some(Token::RParen) => return Ok(word),
                Some(Token::Int(n)) if n >= 1 => word.push(n as usize - 1),
                Some(t) => {
                    return Err(Error::Parse {
                        position: at,
                        message: format!("expected a 1-based generator index, found {t:?}"),
                    })
                }
                None => {
                    return Err(Error::Parse {
                        position: at,
                        message: "unterminated word argument".into(),
                    })
                }
            }
        }
    }

    fn optional_exponent(&mut self) -> Result<i64> {
        if self.peek() != Some(&Token::Caret) {
            return Ok(1);
        }
        self.bump();
        let negative = if self.peek() == Some(&Token::Minus) {
            self.bump();
            true
        } else {
            false
        };
        let at = self.at();
        match self.bump() {
            Some(Token::Int(n)) => Ok(if negative { -n } else { n }),
            Some(t) => Err(Error::Parse {
                position: at,
                message: format!("expected an integer exponent, found {t:?}"),
            }),
            None => Err(Error::Parse {
                position: at,
                message: "expected an integer exponent, found end of input".into(),
            }),
        }
    }
}
