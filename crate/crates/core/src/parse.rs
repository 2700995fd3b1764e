//! Surface syntax for groups.
//!
//! ```text
//! group  := term ('+' term)*
//! term   := 'Z' ('^' nat)? | 'Z/' nat | '0'
//! graded := '[' group ';' group ']'
//! ```
//!
//! Whitespace is ignored. Summands may come in any order; the result is
//! canonicalized. `Z/0` and `Z/1` are rejected. Error positions are
//! 1-based character columns.

use num_bigint::BigInt;
use num_traits::{One, Zero};

use crate::arith::factorize;
use crate::error::{Error, Result};
use crate::graded::GradedGroup;
use crate::group::FgaGroup;

/// Either kind of parsed expression.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum GroupExpr {
    Plain(FgaGroup),
    Graded(GradedGroup),
}

impl GroupExpr {
    /// A plain group is read as concentrated in even degree.
    pub fn into_graded(self) -> GradedGroup {
        match self {
            GroupExpr::Plain(g) => GradedGroup::even_only(g),
            GroupExpr::Graded(g) => g,
        }
    }

    pub fn into_plain(self) -> Result<FgaGroup> {
        match self {
            GroupExpr::Plain(g) => Ok(g),
            GroupExpr::Graded(g) => Err(Error::Validation(format!(
                "expected an ungraded group, found the graded group {g}"
            ))),
        }
    }
}

struct Parser {
    chars: Vec<char>,
    pos: usize,
}

impl Parser {
    fn new(src: &str) -> Self {
        Parser {
            chars: src.chars().collect(),
            pos: 0,
        }
    }

    fn err<T>(&self, message: impl Into<String>) -> Result<T> {
        Err(Error::Parse {
            position: self.pos + 1,
            message: message.into(),
        })
    }

    fn skip_ws(&mut self) {
        while self.pos < self.chars.len() && self.chars[self.pos].is_whitespace() {
            self.pos += 1;
        }
    }

    fn peek(&mut self) -> Option<char> {
        self.skip_ws();
        self.chars.get(self.pos).copied()
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
            match self.peek() {
                Some(found) => self.err(format!("expected '{c}', found '{found}'")),
                None => self.err(format!("expected '{c}', found end of input")),
            }
        }
    }

    fn nat(&mut self) -> Result<(BigInt, usize)> {
        self.skip_ws();
        let start = self.pos;
        while self.pos < self.chars.len() && self.chars[self.pos].is_ascii_digit() {
            self.pos += 1;
        }
        if start == self.pos {
            return self.err("expected a natural number");
        }
        let digits: String = self.chars[start..self.pos].iter().collect();
        Ok((digits.parse().expect("ascii digits"), start))
    }

    fn term(&mut self, free: &mut usize, torsion: &mut Vec<BigInt>) -> Result<()> {
        match self.peek() {
            Some('0') => {
                self.pos += 1;
                Ok(())
            }
            Some('Z') => {
                self.pos += 1;
                if self.eat('^') {
                    let (n, at) = self.nat()?;
                    let n: usize = n.try_into().map_err(|_| Error::Parse {
                        position: at + 1,
                        message: "exponent too large".into(),
                    })?;
                    *free += n;
                } else if self.eat('/') {
                    let (n, at) = self.nat()?;
                    if n.is_zero() || n.is_one() {
                        return Err(Error::Parse {
                            position: at + 1,
                            message: format!("modulus must be at least 2, got {n}"),
                        });
                    }
                    torsion.push(n);
                } else {
                    *free += 1;
                }
                Ok(())
            }
            Some(c) => self.err(format!("expected 'Z', 'Z^n', 'Z/n' or '0', found '{c}'")),
            None => self.err("expected a group term, found end of input"),
        }
    }

    fn group(&mut self) -> Result<FgaGroup> {
        let mut free = 0;
        let mut torsion = Vec::new();
        self.term(&mut free, &mut torsion)?;
        while self.eat('+') {
            self.term(&mut free, &mut torsion)?;
        }
        FgaGroup::from_orders(free, &torsion)
    }

    fn finish(&mut self) -> Result<()> {
        match self.peek() {
            None => Ok(()),
            Some(c) => self.err(format!("unexpected '{c}'")),
        }
    }
}

pub fn parse_group(text: &str) -> Result<FgaGroup> {
    let mut p = Parser::new(text);
    let g = p.group()?;
    p.finish()?;
    Ok(g)
}

pub fn parse_graded(text: &str) -> Result<GradedGroup> {
    let mut p = Parser::new(text);
    p.expect('[')?;
    let even = p.group()?;
    p.expect(';')?;
    let odd = p.group()?;
    p.expect(']')?;
    p.finish()?;
    Ok(GradedGroup::new(even, odd))
}

/// Graded if the text starts with `[`, plain otherwise.
pub fn parse_expr(text: &str) -> Result<GroupExpr> {
    if text.trim_start().starts_with('[') {
        parse_graded(text).map(GroupExpr::Graded)
    } else {
        parse_group(text).map(GroupExpr::Plain)
    }
}

/// Prime-power factors of the torsion part, ascending by prime then power.
pub fn primary_factors(g: &FgaGroup) -> Vec<BigInt> {
    let mut out: Vec<(BigInt, BigInt)> = g
        .torsion()
        .iter()
        .flat_map(|d| {
            factorize(d)
                .into_iter()
                .map(|(p, e)| (p.clone(), num_traits::pow(p, e as usize)))
        })
        .collect();
    out.sort();
    out.into_iter().map(|(_, q)| q).collect()
}

/// `Z^r + Z/q1 + ...` with prime-power `q`s.
pub fn format_primary(g: &FgaGroup) -> String {
    let mut parts = Vec::new();
    match g.free_rank() {
        0 => {}
        1 => parts.push("Z".to_string()),
        r => parts.push(format!("Z^{r}")),
    }
    parts.extend(primary_factors(g).iter().map(|q| format!("Z/{q}")));
    if parts.is_empty() {
        "0".into()
    } else {
        parts.join(" + ")
    }
}

pub fn format_group(g: &FgaGroup, primary: bool) -> String {
    if primary {
        format_primary(g)
    } else {
        g.to_string()
    }
}

pub fn format_graded(g: &GradedGroup, primary: bool) -> String {
    format!(
        "[{} ; {}]",
        format_group(&g.even, primary),
        format_group(&g.odd, primary)
    )
}
