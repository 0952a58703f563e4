//! `expr := term | term op term`, `term := <value>@<sort> | ( expr )`.
//! No precedence: each parenthesis level holds at most one operator.

use laysem_core::{Elem, Error, LayeredSemiring, Structure};

#[derive(Debug)]
enum Tok {
    Open,
    Close,
    Op(char),
    Atom(String),
}

fn lex(s: &str) -> Vec<Tok> {
    let mut out = Vec::new();
    let mut cur = String::new();
    let flush = |cur: &mut String, out: &mut Vec<Tok>| {
        if !cur.is_empty() {
            out.push(Tok::Atom(std::mem::take(cur)));
        }
    };
    for c in s.chars() {
        match c {
            '(' | ')' | '+' | '*' => {
                flush(&mut cur, &mut out);
                out.push(match c {
                    '(' => Tok::Open,
                    ')' => Tok::Close,
                    _ => Tok::Op(c),
                });
            }
            c if c.is_whitespace() => flush(&mut cur, &mut out),
            c => cur.push(c),
        }
    }
    flush(&mut cur, &mut out);
    out
}

struct Parser<'a> {
    toks: Vec<Tok>,
    pos: usize,
    r: &'a LayeredSemiring,
}

impl Parser<'_> {
    fn expr(&mut self) -> Result<Elem, Error> {
        let a = self.term()?;
        let Some(Tok::Op(op)) = self.toks.get(self.pos) else { return Ok(a) };
        let op = *op;
        self.pos += 1;
        let b = self.term()?;
        if let Some(Tok::Op(_)) = self.toks.get(self.pos) {
            return Err(Error::Parse("ambiguous expression: parenthesize each operation".into()));
        }
        Ok(if op == '+' { self.r.add(&a, &b) } else { self.r.mul(&a, &b) })
    }

    fn term(&mut self) -> Result<Elem, Error> {
        let tok = self.toks.get(self.pos).ok_or_else(|| Error::Parse("unexpected end of expression".into()))?;
        self.pos += 1;
        match tok {
            Tok::Open => {
                let v = self.expr()?;
                match self.toks.get(self.pos) {
                    Some(Tok::Close) => {
                        self.pos += 1;
                        Ok(v)
                    }
                    _ => Err(Error::Parse("expected ')'".into())),
                }
            }
            Tok::Atom(s) => {
                let e: Elem = s.parse()?;
                if !self.r.contains(&e) {
                    return Err(Error::Parse(format!("{e} is not in {}", self.r.name())));
                }
                Ok(e)
            }
            t => Err(Error::Parse(format!("unexpected {t:?}"))),
        }
    }
}

pub fn eval(r: &LayeredSemiring, s: &str) -> Result<Elem, Error> {
    let mut p = Parser { toks: lex(s), pos: 0, r };
    let v = p.expr()?;
    if p.pos != p.toks.len() {
        return Err(Error::Parse(format!("trailing input after token {}", p.pos)));
    }
    Ok(v)
}

#[cfg(test)]
mod tests {
    use super::*;
    use laysem_core::{IdealSpec, SortingSemiring, ValuedMonoid};

    #[test]
    fn grammar() {
        let r = LayeredSemiring::build(SortingSemiring::nat_inf(), ValuedMonoid::qmax(), IdealSpec::Auto).unwrap();
        assert_eq!(eval(&r, "(3@1 + 3@1) * 2@1").unwrap().to_string(), "5@2");
        assert_eq!(eval(&r, "0/1@1").unwrap().to_string(), "0@1");
        assert_eq!(eval(&r, "((1@1 * 1@1) + (2@1 + -1@3))").unwrap().to_string(), "2@2");
        for bad in ["1@1 + 2@1 + 3@1", "(1@1", "1@1 +", "x@1", "", "1@1 1@1", "-inf@0"] {
            assert!(eval(&r, bad).is_err(), "{bad}");
        }
    }
}
