//! Text syntax for positions and sums.
//!
//! ```text
//! expr := term ('+' term)*
//! term := [INT '*'] atom
//! atom := '0' | 'star' | 'star(' INT ')' | 'one' | 'one_bar' | 'sigma' | 'sigma_bar'
//!       | 'rho' | 'rho_bar' | 'tau' | 'tau(' INT ')' | 'eta' | 'theta'
//!       | ('conj' | 'L' | 'R' | 'adj') '(' expr ')'
//!       | ('and' | 'or' | 'disand' | 'disor' | 'seq' | 'ord') '(' expr ',' expr ')'
//!       | '{' [expr (',' expr)*] '|' [expr (',' expr)*] '}'
//! ```

use crate::error::{Error, Result};
use crate::outcome::SumPosition;
use crate::position::{Engine, PositionId, SumKind};

pub const GRAMMAR: &str = "\
expr := term ('+' term)*
term := [INT '*'] atom
atom := 0 | star | star(k) | one | one_bar | sigma | sigma_bar | rho | rho_bar
      | tau | tau(k) | eta | theta
      | conj(expr) | L(expr) | R(expr) | adj(expr)
      | and(expr,expr) | or(..) | disand(..) | disor(..) | seq(..) | ord(..)
      | {expr,...|expr,...}    (either side may be empty)";

struct Parser<'a> {
    engine: &'a Engine,
    src: &'a [u8],
    pos: usize,
}

impl<'a> Parser<'a> {
    fn err<T>(&self, msg: impl Into<String>) -> Result<T> {
        Err(Error::Parse { pos: self.pos, msg: msg.into() })
    }

    fn skip_ws(&mut self) {
        while self.pos < self.src.len() && self.src[self.pos].is_ascii_whitespace() {
            self.pos += 1;
        }
    }

    fn peek(&mut self) -> Option<u8> {
        self.skip_ws();
        self.src.get(self.pos).copied()
    }

    fn eat(&mut self, c: u8) -> bool {
        if self.peek() == Some(c) {
            self.pos += 1;
            true
        } else {
            false
        }
    }

    fn expect(&mut self, c: u8) -> Result<()> {
        if self.eat(c) {
            Ok(())
        } else {
            self.err(format!("expected `{}`", c as char))
        }
    }

    fn number(&mut self) -> Result<u32> {
        self.skip_ws();
        let start = self.pos;
        while self.pos < self.src.len() && self.src[self.pos].is_ascii_digit() {
            self.pos += 1;
        }
        if start == self.pos {
            return self.err("expected an integer");
        }
        std::str::from_utf8(&self.src[start..self.pos])
            .unwrap()
            .parse()
            .or_else(|_| self.err("integer out of range"))
    }

    fn ident(&mut self) -> Result<&'a str> {
        self.skip_ws();
        let start = self.pos;
        while self.pos < self.src.len() && (self.src[self.pos].is_ascii_alphanumeric() || self.src[self.pos] == b'_') {
            self.pos += 1;
        }
        if start == self.pos {
            return self.err("expected a name");
        }
        Ok(std::str::from_utf8(&self.src[start..self.pos]).unwrap())
    }

    fn expr(&mut self) -> Result<SumPosition> {
        let mut sum = self.term()?;
        while self.eat(b'+') {
            sum = sum.add(&self.term()?);
        }
        Ok(sum)
    }

    fn term(&mut self) -> Result<SumPosition> {
        if self.peek().is_some_and(|c| c.is_ascii_digit()) {
            let save = self.pos;
            let n = self.number()?;
            if self.eat(b'*') {
                let atom = self.atom()?;
                return Ok(SumPosition::repeat(atom, n as usize));
            }
            self.pos = save;
        }
        Ok(SumPosition::single(self.atom()?))
    }

    fn position(&mut self) -> Result<PositionId> {
        let s = self.expr()?;
        Ok(self.engine.compile_sum(&s))
    }

    fn list(&mut self, end: u8) -> Result<Vec<PositionId>> {
        let mut out = Vec::new();
        if self.peek() == Some(end) {
            return Ok(out);
        }
        loop {
            out.push(self.position()?);
            if !self.eat(b',') {
                break;
            }
        }
        Ok(out)
    }

    fn index_arg(&mut self) -> Result<Option<u32>> {
        if self.eat(b'(') {
            let k = self.number()?;
            self.expect(b')')?;
            Ok(Some(k))
        } else {
            Ok(None)
        }
    }

    fn atom(&mut self) -> Result<PositionId> {
        let e = self.engine;
        match self.peek() {
            None => return self.err("unexpected end of input"),
            Some(b'{') => {
                self.pos += 1;
                let left = self.list(b'|')?;
                self.expect(b'|')?;
                let right = self.list(b'}')?;
                self.expect(b'}')?;
                return e.build(&left, &right);
            }
            Some(b'0') => {
                let n = self.number()?;
                if n != 0 {
                    return self.err("a bare integer must be 0");
                }
                return Ok(PositionId::ZERO);
            }
            Some(c) if c.is_ascii_digit() => return self.err("a bare integer must be 0"),
            _ => {}
        }
        let start = self.pos;
        let name = self.ident()?;
        let p = match name {
            "star" => match self.index_arg()? {
                None => e.star(),
                Some(0) => {
                    self.pos = start;
                    return self.err("star(k) needs k >= 1");
                }
                Some(k) => e.star_n(k),
            },
            "tau" => match self.index_arg()? {
                None => e.tau(),
                Some(k) => e.tau_n(k),
            },
            "zero" => PositionId::ZERO,
            "one" => e.one(),
            "one_bar" => e.one_bar(),
            "sigma" => e.sigma(),
            "sigma_bar" => e.sigma_bar(),
            "rho" => e.rho(),
            "rho_bar" => e.rho_bar(),
            "eta" => e.eta(),
            "theta" => e.theta(),
            "conj" | "L" | "R" | "adj" => {
                self.expect(b'(')?;
                let x = self.position()?;
                self.expect(b')')?;
                match name {
                    "conj" => e.conjugate(x),
                    "L" => e.left_of(x),
                    "R" => e.right_of(x),
                    _ => e.adjoint(x),
                }
            }
            other => match SumKind::from_keyword(other) {
                Some(kind) if kind != SumKind::Disjunctive => {
                    self.expect(b'(')?;
                    let a = self.position()?;
                    self.expect(b',')?;
                    let b = self.position()?;
                    self.expect(b')')?;
                    e.alt_sum(kind, a, b)?
                }
                _ => {
                    self.pos = start;
                    return self.err(format!("unknown atom `{other}`"));
                }
            },
        };
        Ok(p)
    }
}

impl Engine {
    pub fn parse_expression(&self, text: &str) -> Result<SumPosition> {
        let mut p = Parser { engine: self, src: text.as_bytes(), pos: 0 };
        let s = p.expr()?;
        if p.peek().is_some() {
            return p.err("trailing input");
        }
        Ok(s)
    }

    /// Parses and compiles a sum into one position.
    pub fn parse_position(&self, text: &str) -> Result<PositionId> {
        let s = self.parse_expression(text)?;
        Ok(self.compile_sum(&s))
    }

    /// Parses a comma separated list of expressions, each compiled to a position.
    pub fn parse_list(&self, text: &str) -> Result<Vec<PositionId>> {
        let mut p = Parser { engine: self, src: text.as_bytes(), pos: 0 };
        let v = p.list(0)?;
        if p.peek().is_some() {
            return p.err("trailing input");
        }
        Ok(v)
    }

    pub fn name_of(&self, p: PositionId) -> Option<String> {
        if p == PositionId::ZERO {
            return Some("0".into());
        }
        if let Some(k) = self.nim_index(p) {
            return Some(if k == 1 { "star".into() } else { format!("star({k})") });
        }
        if let Some(k) = self.tau_index(p) {
            return Some(if k == 1 { "tau".into() } else { format!("tau({k})") });
        }
        let table = [
            (self.one(), "one"),
            (self.one_bar(), "one_bar"),
            (self.sigma(), "sigma"),
            (self.sigma_bar(), "sigma_bar"),
            (self.rho(), "rho"),
            (self.rho_bar(), "rho_bar"),
            (self.eta(), "eta"),
            (self.theta(), "theta"),
        ];
        table.iter().find(|(q, _)| *q == p).map(|(_, n)| n.to_string())
    }

    pub fn format_position(&self, p: PositionId) -> String {
        if let Some(n) = self.name_of(p) {
            return n;
        }
        let node = self.node(p);
        let side = |opts: &[PositionId]| {
            let mut parts: Vec<(u32, String)> = opts.iter().map(|&o| (self.birthday(o), self.format_position(o))).collect();
            parts.sort();
            parts.into_iter().map(|(_, f)| f).collect::<Vec<_>>().join(",")
        };
        format!("{{{}|{}}}", side(&node.left), side(&node.right))
    }

    pub fn format_sum(&self, s: &SumPosition) -> String {
        if s.is_zero() {
            return "0".into();
        }
        let c = s.components();
        let mut parts = Vec::new();
        let mut i = 0;
        while i < c.len() {
            let mut j = i;
            while j < c.len() && c[j] == c[i] {
                j += 1;
            }
            let f = self.format_position(c[i]);
            parts.push((self.birthday(c[i]), if j - i == 1 { f.clone() } else { format!("{}*{}", j - i, f) }, f));
            i = j;
        }
        parts.sort_by(|a, b| (a.0, &a.2).cmp(&(b.0, &b.2)));
        parts.into_iter().map(|(_, s, _)| s).collect::<Vec<_>>().join(" + ")
    }
}
