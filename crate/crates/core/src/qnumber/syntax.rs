//! Prefix syntax for index sets and sequences.
//!
//! Sets: `nat`, `empty`, `res A M`, `thr M`, `fin {1 2 3}`, `cofin {4}`,
//! `and X Y`, `or X Y`, `not X`.
//!
//! Sequences: `const Q`, `id`, `ratfn C0 C1 .. / D0 D1 ..` (coefficients of
//! `n^0, n^1, ...`), `add X Y`, `sub X Y`, `mul X Y`, `div X Y`, `at N V X`
//! (X with its value at index N replaced by V).

use std::collections::BTreeSet;

use num::BigRational;

use super::index_set::IndexSet;
use super::poly::Poly;
use super::seq::{QNumber, SeqReal};
use super::QError;
use crate::rational::parse_rational;

struct Tokens {
    items: Vec<String>,
    pos: usize,
}

impl Tokens {
    fn new(text: &str) -> Self {
        let spaced = text.replace('{', " { ").replace('}', " } ").replace(',', " ");
        Tokens { items: spaced.split_whitespace().map(str::to_owned).collect(), pos: 0 }
    }

    fn next(&mut self, what: &str) -> Result<String, QError> {
        let tok = self.items.get(self.pos).cloned().ok_or_else(|| syntax(format!("expected {what}, found end of input")))?;
        self.pos += 1;
        Ok(tok)
    }

    fn peek(&self) -> Option<&str> {
        self.items.get(self.pos).map(String::as_str)
    }

    fn natural(&mut self, what: &str) -> Result<u64, QError> {
        let tok = self.next(what)?;
        tok.parse().map_err(|_| syntax(format!("expected {what}, found `{tok}`")))
    }

    fn rational(&mut self, what: &str) -> Result<BigRational, QError> {
        let tok = self.next(what)?;
        parse_rational(&tok).map_err(|_| syntax(format!("expected {what}, found `{tok}`")))
    }

    fn finish(&self) -> Result<(), QError> {
        match self.peek() {
            None => Ok(()),
            Some(t) => Err(syntax(format!("unexpected trailing `{t}`"))),
        }
    }
}

fn syntax(msg: String) -> QError {
    QError::Syntax(msg)
}

pub fn parse_index_set(text: &str) -> Result<IndexSet, QError> {
    let mut t = Tokens::new(text);
    let s = index_set(&mut t)?;
    t.finish()?;
    Ok(s)
}

fn elements(t: &mut Tokens) -> Result<BTreeSet<u64>, QError> {
    let open = t.next("`{`")?;
    if open != "{" {
        return Err(syntax(format!("expected `{{`, found `{open}`")));
    }
    let mut out = BTreeSet::new();
    loop {
        if t.peek() == Some("}") {
            t.pos += 1;
            return Ok(out);
        }
        let n = t.natural("a natural number or `}`")?;
        if n == 0 {
            return Err(syntax("set elements start at 1".into()));
        }
        out.insert(n);
    }
}

fn index_set(t: &mut Tokens) -> Result<IndexSet, QError> {
    let head = t.next("a set expression")?;
    Ok(match head.as_str() {
        "nat" => IndexSet::all(),
        "empty" => IndexSet::empty(),
        "res" => {
            let a = t.natural("a residue")?;
            let m = t.natural("a modulus")?;
            IndexSet::residue(a, m)?
        }
        "thr" => IndexSet::Threshold(t.natural("a threshold")?),
        "fin" => IndexSet::Finite(elements(t)?),
        "cofin" => IndexSet::Cofinite(elements(t)?),
        "and" => IndexSet::and(index_set(t)?, index_set(t)?),
        "or" => IndexSet::or(index_set(t)?, index_set(t)?),
        "not" => IndexSet::not(index_set(t)?),
        other => return Err(syntax(format!("unknown set form `{other}`"))),
    })
}

pub fn parse_seq(text: &str) -> Result<QNumber, QError> {
    let mut t = Tokens::new(text);
    let q = seq(&mut t)?;
    t.finish()?;
    Ok(q)
}

fn coefficients(t: &mut Tokens) -> Vec<BigRational> {
    let mut out = Vec::new();
    while let Some(c) = t.peek().and_then(|tok| parse_rational(tok).ok()) {
        out.push(c);
        t.pos += 1;
    }
    out
}

fn seq(t: &mut Tokens) -> Result<QNumber, QError> {
    let head = t.next("a sequence expression")?;
    Ok(match head.as_str() {
        "const" => QNumber::standard(t.rational("a rational constant")?),
        "id" => QNumber::identity(),
        "ratfn" => {
            let num = coefficients(t);
            let slash = t.next("`/`")?;
            if slash != "/" {
                return Err(syntax(format!("expected `/`, found `{slash}`")));
            }
            let den = coefficients(t);
            if num.is_empty() || den.is_empty() {
                return Err(syntax("ratfn needs coefficients on both sides of `/`".into()));
            }
            QNumber(SeqReal::rational_function(Poly::new(num), Poly::new(den))?)
        }
        "add" => seq(t)?.add(&seq(t)?)?,
        "sub" => seq(t)?.sub(&seq(t)?)?,
        "mul" => seq(t)?.mul(&seq(t)?)?,
        "div" => seq(t)?.div(&seq(t)?)?,
        "at" => {
            let n = t.natural("an index")?;
            let v = t.rational("a value")?;
            QNumber(seq(t)?.0.with_override(n, v)?)
        }
        other => return Err(syntax(format!("unknown sequence form `{other}`"))),
    })
}
