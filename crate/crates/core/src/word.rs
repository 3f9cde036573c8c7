//! Words in the generators.
//!
//! Grammar (whitespace ignored):
//!
//! ```text
//! word   := factor*
//! factor := atom ('^' integer)?
//! atom   := 'x' | 'y' | 'Y' | 't' | 'τ' | 'T' | '(' word ')' | '[' word ',' word ']'
//! ```
//!
//! `Y = y^-1`, `t` (or `τ`) is `[x,y]^24` and `T = t^-1`. Products are read left to right,
//! powers bind tighter than juxtaposition, and the empty word is the identity.

use std::cell::OnceCell;
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::matrix::Matrix;

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum WordExpr {
    Letter(char),
    Product(Vec<WordExpr>),
    Power(Box<WordExpr>, i64),
    Commutator(Box<WordExpr>, Box<WordExpr>),
}

/// Orientation of `[u, v]`.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Commutator {
    /// `u^-1 v^-1 u v`
    #[default]
    InverseFirst,
    /// `u v u^-1 v^-1`
    InverseLast,
}

impl Commutator {
    pub fn apply(self, u: &Matrix, v: &Matrix) -> Result<Matrix> {
        let ui = u.inverse()?;
        let vi = v.inverse()?;
        Ok(match self {
            Commutator::InverseFirst => &(&(&ui * &vi) * u) * v,
            Commutator::InverseLast => &(&(u * v) * &ui) * &vi,
        })
    }

    pub fn other(self) -> Commutator {
        match self {
            Commutator::InverseFirst => Commutator::InverseLast,
            Commutator::InverseLast => Commutator::InverseFirst,
        }
    }

    pub fn describe(self) -> &'static str {
        match self {
            Commutator::InverseFirst => "[u,v] = u^-1 v^-1 u v",
            Commutator::InverseLast => "[u,v] = u v u^-1 v^-1",
        }
    }
}

impl fmt::Display for WordExpr {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            WordExpr::Letter(c) => write!(f, "{c}"),
            WordExpr::Product(items) => {
                for it in items {
                    match it {
                        WordExpr::Product(_) => write!(f, "({it})")?,
                        _ => write!(f, "{it}")?,
                    }
                }
                Ok(())
            }
            WordExpr::Power(base, e) => match **base {
                WordExpr::Letter(_) | WordExpr::Commutator(..) => write!(f, "{base}^{e}"),
                _ => write!(f, "({base})^{e}"),
            },
            WordExpr::Commutator(u, v) => write!(f, "[{u},{v}]"),
        }
    }
}

struct Parser<'a> {
    chars: Vec<(usize, char)>,
    pos: usize,
    src: &'a str,
}

impl<'a> Parser<'a> {
    fn new(src: &'a str) -> Self {
        let chars = src.char_indices().filter(|(_, c)| !c.is_whitespace()).collect();
        Parser { chars, pos: 0, src }
    }

    fn peek(&self) -> Option<char> {
        self.chars.get(self.pos).map(|&(_, c)| c)
    }

    fn offset(&self) -> usize {
        self.chars.get(self.pos).map_or(self.src.len(), |&(i, _)| i)
    }

    fn err(&self, msg: impl Into<String>) -> Error {
        Error::Parse { pos: self.offset(), msg: msg.into() }
    }

    fn word(&mut self) -> Result<WordExpr> {
        let mut items = Vec::new();
        while let Some(c) = self.peek() {
            if c == ')' || c == ']' || c == ',' {
                break;
            }
            items.push(self.factor()?);
        }
        Ok(if items.len() == 1 { items.pop().unwrap() } else { WordExpr::Product(items) })
    }

    fn factor(&mut self) -> Result<WordExpr> {
        let atom = self.atom()?;
        if self.peek() == Some('^') {
            self.pos += 1;
            let e = self.integer()?;
            return Ok(WordExpr::Power(Box::new(atom), e));
        }
        Ok(atom)
    }

    fn integer(&mut self) -> Result<i64> {
        let start = self.pos;
        let mut s = String::new();
        if self.peek() == Some('-') {
            s.push('-');
            self.pos += 1;
        }
        while let Some(c) = self.peek().filter(char::is_ascii_digit) {
            s.push(c);
            self.pos += 1;
        }
        s.parse().map_err(|_| {
            self.pos = start;
            self.err("expected an integer exponent")
        })
    }

    fn expect(&mut self, c: char) -> Result<()> {
        if self.peek() == Some(c) {
            self.pos += 1;
            Ok(())
        } else {
            Err(self.err(format!("expected '{c}'")))
        }
    }

    fn atom(&mut self) -> Result<WordExpr> {
        match self.peek() {
            Some(c @ ('x' | 'y' | 'Y' | 't' | 'T')) => {
                self.pos += 1;
                Ok(WordExpr::Letter(c))
            }
            Some('τ') => {
                self.pos += 1;
                Ok(WordExpr::Letter('t'))
            }
            Some('(') => {
                self.pos += 1;
                let w = self.word()?;
                self.expect(')')?;
                Ok(w)
            }
            Some('[') => {
                self.pos += 1;
                let u = self.word()?;
                self.expect(',')?;
                let v = self.word()?;
                self.expect(']')?;
                Ok(WordExpr::Commutator(Box::new(u), Box::new(v)))
            }
            Some(c) => Err(self.err(format!("unexpected '{c}'"))),
            None => Err(self.err("unexpected end of input")),
        }
    }
}

impl WordExpr {
    pub fn parse(src: &str) -> Result<WordExpr> {
        let mut p = Parser::new(src);
        let w = p.word()?;
        if p.peek().is_some() {
            return Err(p.err("trailing input"));
        }
        Ok(w)
    }

    pub fn uses(&self, letter: char) -> bool {
        match self {
            WordExpr::Letter(c) => *c == letter,
            WordExpr::Product(items) => items.iter().any(|w| w.uses(letter)),
            WordExpr::Power(b, _) => b.uses(letter),
            WordExpr::Commutator(u, v) => u.uses(letter) || v.uses(letter),
        }
    }
}

/// Generator matrices a word is evaluated against.
pub struct WordEnv {
    x: Matrix,
    y: Matrix,
    convention: Commutator,
    y_inv: OnceCell<Matrix>,
    tau: OnceCell<Matrix>,
    tau_inv: OnceCell<Matrix>,
}

impl WordEnv {
    pub fn new(x: &Matrix, y: &Matrix, convention: Commutator) -> Self {
        WordEnv {
            x: x.clone(),
            y: y.clone(),
            convention,
            y_inv: OnceCell::new(),
            tau: OnceCell::new(),
            tau_inv: OnceCell::new(),
        }
    }

    pub fn convention(&self) -> Commutator {
        self.convention
    }

    fn identity(&self) -> Matrix {
        Matrix::identity(self.x.field(), self.x.rows())
    }

    pub fn tau(&self) -> Result<Matrix> {
        if let Some(t) = self.tau.get() {
            return Ok(t.clone());
        }
        let t = self.convention.apply(&self.x, &self.y)?.pow_u(24);
        Ok(self.tau.get_or_init(|| t).clone())
    }

    fn letter(&self, c: char) -> Result<Matrix> {
        Ok(match c {
            'x' => self.x.clone(),
            'y' => self.y.clone(),
            'Y' => {
                if self.y_inv.get().is_none() {
                    let inv = self.y.inverse()?;
                    let _ = self.y_inv.set(inv);
                }
                self.y_inv.get().unwrap().clone()
            }
            't' => self.tau()?,
            'T' => {
                if self.tau_inv.get().is_none() {
                    let inv = self.tau()?.inverse()?;
                    let _ = self.tau_inv.set(inv);
                }
                self.tau_inv.get().unwrap().clone()
            }
            other => return Err(Error::Parse { pos: 0, msg: format!("unknown letter {other}") }),
        })
    }

    pub fn eval(&self, w: &WordExpr) -> Result<Matrix> {
        match w {
            WordExpr::Letter(c) => self.letter(*c),
            WordExpr::Product(items) => {
                let mut acc = self.identity();
                for it in items {
                    acc = &acc * &self.eval(it)?;
                }
                Ok(acc)
            }
            WordExpr::Power(b, e) => self.eval(b)?.pow(*e),
            WordExpr::Commutator(u, v) => self.convention.apply(&self.eval(u)?, &self.eval(v)?),
        }
    }

    pub fn eval_str(&self, src: &str) -> Result<Matrix> {
        self.eval(&WordExpr::parse(src)?)
    }
}

/// Parses and evaluates a word against `x`, `y`.
pub fn evaluate_word(word: &str, x: &Matrix, y: &Matrix, convention: Commutator) -> Result<Matrix> {
    WordEnv::new(x, y, convention).eval_str(word)
}
