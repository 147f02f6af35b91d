//! Text form of group words.
//!
//! ```text
//! word   := letter { "*" letter } ;
//! letter := "x(" ["+"|"-"] idx "," rat ")" | "xr(" "[" int {"," int} "]" "," rat ")"
//!         | "h(" idx "," rat ")" | "w(" idx [ "," rat ] ")" ;
//! rat    := int [ "/" posint ] ;
//! ```
//!
//! Indices are 1-based. `w(i)` is `w~_i(1)`. The empty string and `1` both
//! denote the empty word.

use num_bigint::BigInt;
use num_traits::{One, Zero};

use super::{GeneratorLetter, GroupWord, Sign};
use crate::error::{Error, Result};
use crate::rational::Q;
use crate::rootsys::RootVector;

struct Cursor<'a> {
    chars: Vec<char>,
    pos: usize,
    text: &'a str,
}

impl<'a> Cursor<'a> {
    fn new(text: &'a str) -> Self {
        Cursor { chars: text.chars().collect(), pos: 0, text }
    }

    fn location(&self, pos: usize) -> (usize, usize) {
        let mut line = 1;
        let mut column = 1;
        for &c in &self.chars[..pos.min(self.chars.len())] {
            if c == '\n' {
                line += 1;
                column = 1;
            } else {
                column += 1;
            }
        }
        (line, column)
    }

    fn error(&self, expected: &str) -> Error {
        let (line, column) = self.location(self.pos);
        Error::Syntax { line, column, expected: expected.to_string() }
    }

    fn skip_ws(&mut self) {
        while self.chars.get(self.pos).is_some_and(|c| c.is_whitespace()) {
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
            Err(self.error(&format!("'{c}'")))
        }
    }

    fn digits(&mut self) -> Option<BigInt> {
        self.skip_ws();
        let start = self.pos;
        while self.chars.get(self.pos).is_some_and(|c| c.is_ascii_digit()) {
            self.pos += 1;
        }
        if start == self.pos {
            return None;
        }
        self.chars[start..self.pos].iter().collect::<String>().parse().ok()
    }

    fn int(&mut self) -> Result<BigInt> {
        let negative = if self.eat('-') {
            true
        } else {
            self.eat('+');
            false
        };
        let n = self.digits().ok_or_else(|| self.error("integer"))?;
        Ok(if negative { -n } else { n })
    }

    fn idx(&mut self) -> Result<usize> {
        let n = self.digits().ok_or_else(|| self.error("index"))?;
        let n: usize = n.try_into().map_err(|_| self.error("index"))?;
        if n == 0 {
            return Err(self.error("index >= 1"));
        }
        Ok(n - 1)
    }

    fn rat(&mut self) -> Result<Q> {
        let p = self.int()?;
        if !self.eat('/') {
            return Ok(Q::from_integer(p));
        }
        self.skip_ws();
        let at = self.pos;
        let q = self.digits().ok_or_else(|| self.error("positive denominator"))?;
        if q.is_zero() {
            let (line, column) = self.location(at);
            return Err(Error::ZeroDenominator { line, column });
        }
        Ok(Q::new(p, q))
    }

    fn letter(&mut self) -> Result<GeneratorLetter> {
        let name_start = {
            self.skip_ws();
            self.pos
        };
        while self.chars.get(self.pos).is_some_and(|c| c.is_ascii_alphabetic()) {
            self.pos += 1;
        }
        let name: String = self.chars[name_start..self.pos].iter().collect();
        let letter = match name.as_str() {
            "x" => {
                self.expect('(')?;
                let sign = if self.eat('-') {
                    Sign::Minus
                } else {
                    self.eat('+');
                    Sign::Plus
                };
                let index = self.idx()?;
                self.expect(',')?;
                let t = self.rat()?;
                GeneratorLetter::ChiSimple { index, sign, t }
            }
            "xr" => {
                self.expect('(')?;
                self.expect('[')?;
                let mut coords = vec![self.int()?];
                while self.eat(',') {
                    coords.push(self.int()?);
                }
                self.expect(']')?;
                let coords = coords
                    .into_iter()
                    .map(|c| i64::try_from(c).map_err(|_| self.error("small integer")))
                    .collect::<Result<Vec<_>>>()?;
                self.expect(',')?;
                let t = self.rat()?;
                GeneratorLetter::ChiReal { root: RootVector(coords), t }
            }
            "h" => {
                self.expect('(')?;
                let index = self.idx()?;
                self.expect(',')?;
                let t = self.rat()?;
                GeneratorLetter::Torus { index, t }
            }
            "w" => {
                self.expect('(')?;
                let index = self.idx()?;
                let t = if self.eat(',') { self.rat()? } else { Q::one() };
                GeneratorLetter::WTilde { index, t }
            }
            _ => {
                self.pos = name_start;
                return Err(self.error("one of x(, xr(, h(, w("));
            }
        };
        self.expect(')')?;
        Ok(letter)
    }
}

pub fn parse_word(text: &str) -> Result<GroupWord> {
    let mut cur = Cursor::new(text);
    if cur.peek().is_none() {
        return Ok(GroupWord::default());
    }
    if cur.text.trim() == "1" {
        return Ok(GroupWord::default());
    }
    let mut letters = vec![cur.letter()?];
    while cur.eat('*') {
        letters.push(cur.letter()?);
    }
    if cur.peek().is_some() {
        return Err(cur.error("'*' or end of input"));
    }
    Ok(GroupWord(letters))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::{frac, int};

    #[test]
    fn round_trip() {
        let text = "x(+1,1/2)*x(-2,-3)*xr([1,1],2)*h(1,-1)*w(2)*w(1,3/4)";
        let w = parse_word(text).unwrap();
        assert_eq!(w.0.len(), 6);
        assert_eq!(w.0[0], GeneratorLetter::ChiSimple { index: 0, sign: Sign::Plus, t: frac(1, 2) });
        assert_eq!(w.0[4], GeneratorLetter::WTilde { index: 1, t: int(1) });
        assert_eq!(parse_word(&w.to_string()).unwrap(), w);
    }

    #[test]
    fn whitespace_and_identity() {
        assert_eq!(parse_word(" x( 1 , 2 ) * h(1, 1/3)").unwrap().0.len(), 2);
        assert!(parse_word("").unwrap().0.is_empty());
        assert!(parse_word("1").unwrap().0.is_empty());
    }

    #[test]
    fn errors() {
        assert!(matches!(parse_word("x(1,1/0)"), Err(Error::ZeroDenominator { line: 1, column: 7 })));
        assert!(matches!(parse_word("y(1,1)"), Err(Error::Syntax { line: 1, column: 1, .. })));
        assert!(matches!(parse_word("x(0,1)"), Err(Error::Syntax { .. })));
        assert!(matches!(parse_word("x(1,1)*"), Err(Error::Syntax { .. })));
        assert!(matches!(parse_word("x(1,1/-2)"), Err(Error::Syntax { .. })));
        assert!(matches!(parse_word("x(1,1) h(1,1)"), Err(Error::Syntax { .. })));
    }
}
