//! Text literals for elements, matrices, words and HNF triples.
//!
//! ```text
//! element := term (('+' | '-') term)*     e.g.  3+2L   -4L-2   L   0
//! term    := ['+' | '-'] ( INT ['*'] 'L' | INT | 'L' )
//! matrix  := '[' '[' element ',' element ']' ',' '[' element ',' element ']' ']'
//! word    := ('S' | 's' | 'T' | 't')*       s = S⁻¹, t = T⁻¹
//! hnf     := INT ',' INT ',' INT
//! ```
//!
//! Whitespace is ignored everywhere. Positions in errors are character
//! offsets into the original input.

use num_bigint::BigInt;

use crate::error::{Error, Result};
use crate::hecke::{Letter, Mat2, Word};
use crate::ideal::IdealHNF;
use crate::ring::RingElt;

struct Cursor<'a> {
    chars: Vec<(usize, char)>,
    pos: usize,
    _src: &'a str,
}

impl<'a> Cursor<'a> {
    fn new(src: &'a str) -> Self {
        let chars = src
            .chars()
            .enumerate()
            .filter(|(_, c)| !c.is_whitespace())
            .collect();
        Cursor {
            chars,
            pos: 0,
            _src: src,
        }
    }

    fn peek(&self) -> Option<char> {
        self.chars.get(self.pos).map(|&(_, c)| c)
    }

    /// Character offset of the next token (or end of input).
    fn offset(&self) -> usize {
        match self.chars.get(self.pos) {
            Some(&(i, _)) => i,
            None => self.chars.last().map_or(0, |&(i, _)| i + 1),
        }
    }

    fn bump(&mut self) -> Option<char> {
        let c = self.peek();
        if c.is_some() {
            self.pos += 1;
        }
        c
    }

    fn err<T>(&self, msg: impl Into<String>) -> Result<T> {
        Err(Error::Parse {
            pos: self.offset(),
            msg: msg.into(),
        })
    }

    fn expect(&mut self, want: char) -> Result<()> {
        match self.peek() {
            Some(c) if c == want => {
                self.pos += 1;
                Ok(())
            }
            Some(c) => self.err(format!("expected '{want}', found '{c}'")),
            None => self.err(format!("expected '{want}', found end of input")),
        }
    }

    fn finish(&self) -> Result<()> {
        match self.peek() {
            None => Ok(()),
            Some(c) => self.err(format!("unexpected trailing '{c}'")),
        }
    }

    fn digits(&mut self) -> Option<BigInt> {
        let start = self.pos;
        while matches!(self.peek(), Some(c) if c.is_ascii_digit()) {
            self.pos += 1;
        }
        if start == self.pos {
            return None;
        }
        let s: String = self.chars[start..self.pos]
            .iter()
            .map(|&(_, c)| c)
            .collect();
        Some(s.parse().expect("ascii digits"))
    }

    fn element(&mut self) -> Result<RingElt> {
        let mut acc = RingElt::zero();
        let mut first = true;
        loop {
            let negative = match self.peek() {
                Some('+') => {
                    self.bump();
                    false
                }
                Some('-') => {
                    self.bump();
                    true
                }
                _ if first => false,
                _ => break,
            };
            first = false;
            let coeff = self.digits();
            let term = match (coeff, self.peek()) {
                (Some(n), Some('*')) => {
                    self.bump();
                    self.expect('L')?;
                    RingElt::new(0, n)
                }
                (Some(n), Some('L')) => {
                    self.bump();
                    RingElt::new(0, n)
                }
                (Some(n), _) => RingElt::from_int(n),
                (None, Some('L')) => {
                    self.bump();
                    RingElt::lambda()
                }
                (None, Some(c)) => return self.err(format!("expected a term, found '{c}'")),
                (None, None) => return self.err("expected a term, found end of input"),
            };
            if negative {
                acc -= &term;
            } else {
                acc += &term;
            }
        }
        Ok(acc)
    }

    fn int(&mut self) -> Result<BigInt> {
        let negative = if self.peek() == Some('-') {
            self.bump();
            true
        } else {
            false
        };
        match self.digits() {
            Some(n) if negative => Ok(-n),
            Some(n) => Ok(n),
            None => self.err("expected an integer"),
        }
    }
}

/// Parses an element literal such as `3+2L`.
pub fn parse_element(s: &str) -> Result<RingElt> {
    let mut cur = Cursor::new(s);
    let x = cur.element()?;
    cur.finish()?;
    Ok(x)
}

/// Parses `[[a,b],[c,d]]`.
pub fn parse_matrix(s: &str) -> Result<Mat2> {
    let mut cur = Cursor::new(s);
    let mut rows = Vec::with_capacity(2);
    cur.expect('[')?;
    for i in 0..2 {
        if i > 0 {
            cur.expect(',')?;
        }
        cur.expect('[')?;
        let x = cur.element()?;
        cur.expect(',')?;
        let y = cur.element()?;
        cur.expect(']')?;
        rows.push((x, y));
    }
    cur.expect(']')?;
    cur.finish()?;
    let (r2, r1) = (rows.pop().unwrap(), rows.pop().unwrap());
    Ok(Mat2::new(r1.0, r1.1, r2.0, r2.1))
}

/// Parses a word over `S`, `s`, `T`, `t`.
pub fn parse_word(s: &str) -> Result<Word> {
    let mut cur = Cursor::new(s);
    let mut letters = Vec::new();
    while let Some(c) = cur.peek() {
        let l = match c {
            'S' => Letter::S,
            's' => Letter::SInv,
            'T' => Letter::T,
            't' => Letter::TInv,
            other => return cur.err(format!("unknown letter '{other}'")),
        };
        cur.bump();
        letters.push(l);
    }
    Ok(Word(letters))
}

/// Parses `d1,k,d2` into a validated ideal.
pub fn parse_hnf(s: &str) -> Result<IdealHNF> {
    let mut cur = Cursor::new(s);
    let mut vals = [0i64; 3];
    for (i, slot) in vals.iter_mut().enumerate() {
        if i > 0 {
            cur.expect(',')?;
        }
        let at = cur.offset();
        let n = cur.int()?;
        *slot = i64::try_from(n).map_err(|_| Error::Parse {
            pos: at,
            msg: "integer out of range".into(),
        })?;
    }
    cur.finish()?;
    IdealHNF::from_triple(vals[0], vals[1], vals[2])
}

/// Parses one `word<TAB>matrix` line of a coset file.
pub fn parse_coset_line(line: &str) -> Result<(Word, Mat2)> {
    let (w, m) = line.split_once('\t').ok_or(Error::Parse {
        pos: 0,
        msg: "missing tab separator".into(),
    })?;
    let word = parse_word(w)?;
    let offset = w.chars().count() + 1;
    let mat = parse_matrix(m).map_err(|e| match e {
        Error::Parse { pos, msg } => Error::Parse {
            pos: pos + offset,
            msg,
        },
        other => other,
    })?;
    Ok((word, mat))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn e(a: i64, b: i64) -> RingElt {
        RingElt::new(a, b)
    }

    #[test]
    fn element_forms() {
        assert_eq!(parse_element("3+2L").unwrap(), e(3, 2));
        assert_eq!(parse_element("-4L-2").unwrap(), e(-2, -4));
        assert_eq!(parse_element("0").unwrap(), e(0, 0));
        assert_eq!(parse_element(" L ").unwrap(), e(0, 1));
        assert_eq!(parse_element("-L").unwrap(), e(0, -1));
        assert_eq!(parse_element("2 * L + 1").unwrap(), e(1, 2));
        assert_eq!(parse_element("1+L+L").unwrap(), e(1, 2));
        assert_eq!(parse_element("0-1L").unwrap(), e(0, -1));
    }

    #[test]
    fn element_errors_carry_position() {
        assert_eq!(
            parse_element("3+x"),
            Err(Error::Parse {
                pos: 2,
                msg: "expected a term, found 'x'".into()
            })
        );
        assert!(matches!(
            parse_element(""),
            Err(Error::Parse { pos: 0, .. })
        ));
        assert!(matches!(
            parse_element("3+"),
            Err(Error::Parse { pos: 2, .. })
        ));
        assert_eq!(parse_element("3 3").unwrap(), e(33, 0));
    }

    #[test]
    fn matrix_literal() {
        let m = parse_matrix("[[1+2L, 2+2L],[2L,1+2L]]").unwrap();
        assert_eq!(m, Mat2::new(e(1, 2), e(2, 2), e(0, 2), e(1, 2)));
        assert!(matches!(
            parse_matrix("[[1,2],[3,4]"),
            Err(Error::Parse { pos: 12, .. })
        ));
    }

    #[test]
    fn word_literal() {
        assert_eq!(
            parse_word("STst").unwrap(),
            Word(vec![Letter::S, Letter::T, Letter::SInv, Letter::TInv])
        );
        assert_eq!(parse_word("").unwrap(), Word(vec![]));
        assert!(matches!(parse_word("SX"), Err(Error::Parse { pos: 1, .. })));
    }

    #[test]
    fn hnf_literal() {
        assert_eq!(
            parse_hnf("2,0,2").unwrap(),
            IdealHNF::from_triple(2, 0, 2).unwrap()
        );
        assert!(parse_hnf("2,1,2").is_err());
        assert!(parse_hnf("99999999999999999999,0,1").is_err());
    }

    #[test]
    fn coset_line() {
        let (w, m) = parse_coset_line("ST\t[[0+0L,1+0L],[-1+0L,0+0L]]").unwrap();
        assert_eq!(w.0.len(), 2);
        assert_eq!(m, Mat2::s());
        assert!(matches!(
            parse_coset_line("S\t[[0,1],[1,0]"),
            Err(Error::Parse { pos: 14, .. })
        ));
    }
}
