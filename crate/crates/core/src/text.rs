//! Text grammar for elements.
//!
//! ```text
//! element  := '0' | term (('+' | '-') term)*
//! term     := [coeff '*'] '[' blocklist ']'
//! tensor   := '0' | tterm (('+' | '-') tterm)*
//! tterm    := [coeff '*'] '[' blocklist ']' ('⊗' | '(x)') '[' blocklist ']'
//! blocklist:= block ('|' block)* | ε
//! block    := '{' int (',' int)* '}'
//! ```
//!
//! Coefficients are optionally signed decimal integers. Rendering is
//! canonical: terms in canonical basis order, every coefficient explicit.

use std::fmt;

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};

use crate::algebra::{Coeff, TDElement, TensorElement};
use crate::combinat::{FiniteSet, IntegerComposition, Permutation, SetComposition};
use crate::error::{Error, Result};
use crate::solomon::{DescentElement, GroupAlgebraElement};

/// Separator between tensor legs in text output.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub enum TensorStyle {
    #[default]
    Unicode,
    Ascii,
}

impl TensorStyle {
    pub fn separator(self) -> &'static str {
        match self {
            TensorStyle::Unicode => "⊗",
            TensorStyle::Ascii => "(x)",
        }
    }
}

struct Parser<'a> {
    src: &'a str,
    pos: usize,
}

impl<'a> Parser<'a> {
    fn new(src: &'a str) -> Self {
        Parser { src, pos: 0 }
    }

    fn rest(&self) -> &'a str {
        &self.src[self.pos..]
    }

    fn skip_ws(&mut self) {
        let trimmed = self.rest().trim_start();
        self.pos = self.src.len() - trimmed.len();
    }

    fn peek(&mut self) -> Option<char> {
        self.skip_ws();
        self.rest().chars().next()
    }

    fn eat(&mut self, token: &str) -> bool {
        self.skip_ws();
        if self.rest().starts_with(token) {
            self.pos += token.len();
            true
        } else {
            false
        }
    }

    fn expect(&mut self, token: &str) -> Result<()> {
        if self.eat(token) {
            Ok(())
        } else {
            Err(self.error(format!("expected '{token}'")))
        }
    }

    fn error(&self, msg: impl Into<String>) -> Error {
        let msg = msg.into();
        match self.rest().chars().next() {
            Some(c) => Error::parse(self.pos, format!("{msg}, found '{c}'")),
            None => Error::parse(self.pos, format!("{msg}, found end of input")),
        }
    }

    fn at_end(&mut self) -> bool {
        self.skip_ws();
        self.pos == self.src.len()
    }

    fn finish(&mut self) -> Result<()> {
        if self.at_end() {
            Ok(())
        } else {
            Err(self.error("unexpected trailing input"))
        }
    }

    fn digits(&mut self) -> Option<&'a str> {
        self.skip_ws();
        let len = self.rest().bytes().take_while(u8::is_ascii_digit).count();
        if len == 0 {
            return None;
        }
        let d = &self.rest()[..len];
        self.pos += len;
        Some(d)
    }

    fn uint(&mut self) -> Result<u32> {
        let start = self.pos;
        let d = self.digits().ok_or_else(|| self.error("expected an integer"))?;
        d.parse()
            .map_err(|_| Error::parse(start, format!("integer {d} out of range")))
    }

    /// `[sign] [digits '*']`, returning the coefficient (default 1).
    fn coefficient(&mut self) -> Result<Coeff> {
        let negative = if self.eat("-") {
            true
        } else {
            self.eat("+");
            false
        };
        let mut c = Coeff::one();
        let save = self.pos;
        if let Some(d) = self.digits() {
            if self.eat("*") {
                c = d.parse::<BigInt>().expect("ascii digits");
            } else {
                self.pos = save;
                return Err(self.error("expected '*' after coefficient"));
            }
        }
        Ok(if negative { -c } else { c })
    }

    fn block(&mut self) -> Result<FiniteSet> {
        self.expect("{")?;
        let mut elems = Vec::new();
        loop {
            self.skip_ws();
            let at = self.pos;
            let x = self.uint()?;
            if x == 0 {
                return Err(Error::parse(at, "set labels must be positive"));
            }
            if let Some(&prev) = elems.last() {
                if x <= prev {
                    let what = if x == prev { "duplicate" } else { "descending" };
                    return Err(Error::parse(at, format!("{what} element {x} in block")));
                }
            }
            elems.push(x);
            if self.eat("}") {
                break;
            }
            self.expect(",")?;
        }
        Ok(FiniteSet::from_sorted_unchecked(elems))
    }

    fn blocklist(&mut self, close: &str) -> Result<SetComposition> {
        self.skip_ws();
        let start = self.pos;
        let mut blocks = Vec::new();
        if !self.eat(close) {
            loop {
                blocks.push(self.block()?);
                if self.eat(close) {
                    break;
                }
                self.expect("|")?;
            }
        }
        SetComposition::new(blocks).map_err(|e| match e {
            Error::Domain(msg) => Error::parse(start, msg),
            other => other,
        })
    }

    fn bracket(&mut self) -> Result<SetComposition> {
        self.expect("[")?;
        self.blocklist("]")
    }

    fn sum<T>(&mut self, mut term: impl FnMut(&mut Self) -> Result<(T, Coeff)>, mut add: impl FnMut(T, Coeff)) -> Result<()> {
        self.skip_ws();
        if self.rest().trim_end() == "0" {
            self.pos = self.src.len();
            return Ok(());
        }
        let (t, c) = term(self)?;
        add(t, c);
        while !self.at_end() {
            let negate = if self.eat("-") {
                true
            } else if self.eat("+") {
                false
            } else {
                return Err(self.error("expected '+' or '-' between terms"));
            };
            let (t, c) = term(self)?;
            add(t, if negate { -c } else { c });
        }
        Ok(())
    }

    fn ints(&mut self) -> Result<Vec<u32>> {
        let mut out = Vec::new();
        if self.at_end() || self.peek() == Some(')') {
            return Ok(out);
        }
        loop {
            out.push(self.uint()?);
            if !self.eat(",") {
                break;
            }
        }
        Ok(out)
    }
}

pub fn parse_element(text: &str) -> Result<TDElement> {
    let mut p = Parser::new(text);
    let mut out = TDElement::zero();
    p.sum(
        |p| {
            let c = p.coefficient()?;
            Ok((p.bracket()?, c))
        },
        |sc, c| out.add_term(sc, c),
    )?;
    p.finish()?;
    Ok(out)
}

pub fn parse_tensor(text: &str) -> Result<TensorElement> {
    let mut p = Parser::new(text);
    let mut out = TensorElement::zero();
    p.sum(
        |p| {
            let c = p.coefficient()?;
            let l = p.bracket()?;
            if !(p.eat("⊗") || p.eat("(x)")) {
                return Err(p.error("expected '⊗' or '(x)'"));
            }
            let r = p.bracket()?;
            Ok(((l, r), c))
        },
        |(l, r), c| out.add_term(l, r, c),
    )?;
    p.finish()?;
    Ok(out)
}

/// A single set composition, with or without the enclosing brackets.
pub fn parse_set_composition(text: &str) -> Result<SetComposition> {
    let mut p = Parser::new(text);
    let sc = if p.eat("[") {
        p.blocklist("]")?
    } else {
        let mut blocks = Vec::new();
        let start = p.pos;
        loop {
            blocks.push(p.block()?);
            if !p.eat("|") {
                break;
            }
        }
        SetComposition::new(blocks).map_err(|e| match e {
            Error::Domain(msg) => Error::parse(start, msg),
            other => other,
        })?
    };
    p.finish()?;
    Ok(sc)
}

/// An integer composition such as `2,1,1` (parentheses optional).
pub fn parse_integer_composition(text: &str) -> Result<IntegerComposition> {
    let mut p = Parser::new(text);
    let paren = p.eat("(");
    let parts = p.ints()?;
    if paren {
        p.expect(")")?;
    }
    p.finish()?;
    IntegerComposition::new(parts).map_err(|e| match e {
        Error::Domain(msg) => Error::parse(0, msg),
        other => other,
    })
}

/// A permutation in one-line notation such as `3,1,2`.
pub fn parse_permutation(text: &str) -> Result<Permutation> {
    let mut p = Parser::new(text);
    let paren = p.eat("(");
    let images = p.ints()?;
    if paren {
        p.expect(")")?;
    }
    p.finish()?;
    Permutation::new(images).map_err(|e| match e {
        Error::Domain(msg) => Error::parse(0, msg),
        other => other,
    })
}

/// A sum of parenthesised integer tuples, e.g. `2*(1,1) - (2)`.
fn parse_tuple_sum(text: &str) -> Result<Vec<(Vec<u32>, Coeff)>> {
    let mut p = Parser::new(text);
    let mut out = Vec::new();
    p.sum(
        |p| {
            let c = p.coefficient()?;
            p.expect("(")?;
            let xs = p.ints()?;
            p.expect(")")?;
            Ok((xs, c))
        },
        |xs, c| out.push((xs, c)),
    )?;
    p.finish()?;
    Ok(out)
}

/// A descent element such as `2*(1,1) + (2)`; the weight is read off the
/// first term (`0` parses as the zero of weight 0).
pub fn parse_descent_element(text: &str) -> Result<DescentElement> {
    let terms = parse_tuple_sum(text)?;
    let weight = terms.first().map_or(0, |(xs, _)| xs.iter().map(|&x| x as usize).sum());
    let mut out = DescentElement::zero(weight);
    for (xs, c) in terms {
        out.add_term(IntegerComposition::new(xs)?, c)?;
    }
    Ok(out)
}

/// A group algebra element such as `1*(1,2) - 2*(2,1)`.
pub fn parse_group_element(text: &str) -> Result<GroupAlgebraElement> {
    let terms = parse_tuple_sum(text)?;
    let degree = terms.first().map_or(0, |(xs, _)| xs.len());
    let mut out = GroupAlgebraElement::zero(degree);
    for (xs, c) in terms {
        out.add_term(Permutation::new(xs)?, c)?;
    }
    Ok(out)
}

/// Writes `c1*t1 + c2*t2 - c3*t3`, or `0` for an empty sum.
pub(crate) fn write_sum<'a, T: 'a>(
    out: &mut impl fmt::Write,
    terms: impl IntoIterator<Item = (T, &'a Coeff)>,
    mut write_term: impl FnMut(&mut dyn fmt::Write, T) -> fmt::Result,
) -> fmt::Result {
    let mut first = true;
    for (t, c) in terms {
        debug_assert!(!c.is_zero());
        if first {
            if c.is_negative() {
                out.write_char('-')?;
            }
        } else if c.is_negative() {
            out.write_str(" - ")?;
        } else {
            out.write_str(" + ")?;
        }
        write!(out, "{}*", c.abs())?;
        write_term(out, t)?;
        first = false;
    }
    if first {
        out.write_char('0')?;
    }
    Ok(())
}

pub fn render_element(a: &TDElement) -> String {
    a.to_string()
}

pub fn render_tensor(x: &TensorElement, style: TensorStyle) -> String {
    let mut s = String::new();
    write_sum(&mut s, x.terms().map(|(l, r, c)| ((l, r), c)), |f, (l, r)| {
        write!(f, "{l}{}{r}", style.separator())
    })
    .expect("writing to a String");
    s
}

impl fmt::Display for TDElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write_sum(f, self.terms(), |f, sc| write!(f, "{sc}"))
    }
}

impl fmt::Display for TensorElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&render_tensor(self, TensorStyle::Unicode))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    #[test]
    fn parses_grammar_examples() {
        let x = parse_element("2*[{3,5}|{1,4}] - [{2}]").unwrap();
        assert_eq!(x.len(), 2);
        assert_eq!(x.to_string(), "-1*[{2}] + 2*[{3,5}|{1,4}]");
        assert_eq!(parse_element("[]").unwrap(), TDElement::one());
        assert!(parse_element("0").unwrap().is_zero());
        assert_eq!(parse_element("-3*[{1}]").unwrap().to_string(), "-3*[{1}]");
        assert_eq!(parse_element(" [ {1 , 2} ] + [{1}|{2}] ").unwrap().to_string(), "1*[{1}|{2}] + 1*[{1,2}]");
    }

    #[test]
    fn rejects_malformed_text() {
        let dup = parse_element("[{1,1}]").unwrap_err();
        assert!(matches!(dup, Error::Parse { pos: 4, .. }), "{dup}");
        assert!(parse_element("[{2,1}]").is_err());
        assert!(parse_element("[{1}|{1,2}]").is_err());
        assert!(parse_element("[{}]").is_err());
        assert!(parse_element("[{0}]").is_err());
        assert!(parse_element("2[{1}]").is_err());
        assert!(parse_element("[{1}] [{2}]").is_err());
        assert!(parse_element("[{1}").is_err());
        assert!(parse_element("").is_err());
    }

    #[test]
    fn overlapping_block_error_points_at_bracket() {
        let err = parse_element("[{1}] + [{1}|{1,2}]").unwrap_err();
        assert!(matches!(err, Error::Parse { pos: 9, .. }), "{err}");
    }

    #[test]
    fn tensors() {
        let t = parse_tensor("[]⊗[{1,2}] + 2*[{1}](x)[{2}]").unwrap();
        assert_eq!(t.to_string(), "1*[]⊗[{1,2}] + 2*[{1}]⊗[{2}]");
        assert_eq!(render_tensor(&t, TensorStyle::Ascii), "1*[](x)[{1,2}] + 2*[{1}](x)[{2}]");
        assert_eq!(parse_tensor("[]⊗[]").unwrap().to_string(), "1*[]⊗[]");
        assert!(parse_tensor("[{1}]").is_err());
    }

    #[test]
    fn compositions_and_permutations() {
        assert_eq!(parse_integer_composition("2,1,1").unwrap().parts(), &[2, 1, 1]);
        assert_eq!(parse_integer_composition("(3)").unwrap().parts(), &[3]);
        assert!(parse_integer_composition("2,0").is_err());
        assert_eq!(parse_permutation("3,1,2").unwrap().images(), &[3, 1, 2]);
        assert!(parse_permutation("3,1,1").is_err());
        assert_eq!(
            parse_set_composition("{3,5}|{1,4}").unwrap(),
            SetComposition::from_lists(&[&[3, 5][..], &[1, 4]]).unwrap()
        );
        assert_eq!(parse_set_composition("[]").unwrap(), SetComposition::empty());
    }

    #[test]
    fn descent_and_group_text() {
        let d = parse_descent_element("2*(1,1) + (2)").unwrap();
        assert_eq!(d.weight(), 2);
        assert_eq!(d.to_string(), "2*(1,1) + 1*(2)");
        assert!(parse_descent_element("(1,1) + (3)").is_err());
        let g = parse_group_element("(2,1) - 3*(1,2)").unwrap();
        assert_eq!(g.to_string(), "-3*(1,2) + 1*(2,1)");
        assert_eq!(parse_group_element(&g.to_string()).unwrap(), g);
    }

    fn arb_element() -> impl Strategy<Value = TDElement> {
        let block = proptest::collection::btree_set(1u32..9, 1..3);
        let sc = proptest::collection::vec(block, 0..4).prop_filter_map("disjoint", |blocks| {
            SetComposition::new(
                blocks
                    .into_iter()
                    .map(|b| FiniteSet::new(b.into_iter().collect()).unwrap())
                    .collect(),
            )
            .ok()
        });
        proptest::collection::vec((sc, -5i64..6), 0..6)
            .prop_map(|ts| TDElement::from_terms(ts.into_iter().map(|(s, c)| (s, BigInt::from(c)))))
    }

    proptest! {
        #[test]
        fn render_parse_round_trip(a in arb_element()) {
            let text = a.to_string();
            let back = parse_element(&text).unwrap();
            prop_assert_eq!(&back, &a);
            prop_assert_eq!(back.to_string(), text);
        }

        #[test]
        fn tensor_round_trip(a in arb_element(), b in arb_element()) {
            let t = TensorElement::tensor(&a, &b);
            prop_assert_eq!(parse_tensor(&t.to_string()).unwrap(), t.clone());
            prop_assert_eq!(parse_tensor(&render_tensor(&t, TensorStyle::Ascii)).unwrap(), t);
        }
    }
}
