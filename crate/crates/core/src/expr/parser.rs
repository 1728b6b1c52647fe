use crate::delta::DeltaWord;
use crate::error::{check_range, Error, Result};
use crate::gamma::BaseGen;

use super::ast::{DeltaAst, Expr, ExprKind, FactorAst, MixedAst, MixedTermAst, RingAst, SAst, STermAst};
use super::SyntaxError;

struct Parser {
    chars: Vec<char>,
    pos: usize,
}

impl Parser {
    fn new(text: &str) -> Self {
        Parser { chars: text.chars().collect(), pos: 0 }
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

    /// Next character without skipping whitespace.
    fn peek_raw(&self) -> Option<char> {
        self.chars.get(self.pos).copied()
    }

    fn error(&self, expected: &[&str]) -> Error {
        // At end of input point at the last character so the position stays inside the text.
        let at = if self.pos >= self.chars.len() { self.chars.len().saturating_sub(1) } else { self.pos };
        let (mut line, mut column) = (1, 1);
        for &c in &self.chars[..at.min(self.chars.len())] {
            if c == '\n' {
                line += 1;
                column = 1;
            } else {
                column += 1;
            }
        }
        let found = match self.chars.get(self.pos) {
            Some(c) => format!("`{c}`"),
            None => "end of input".to_string(),
        };
        Error::Syntax(SyntaxError {
            line,
            column,
            expected: expected.iter().map(|s| s.to_string()).collect(),
            found,
        })
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
            Err(self.error(&[&format!("`{c}`")]))
        }
    }

    /// An unsigned integer starting exactly at the cursor.
    fn int_here(&mut self) -> Result<u64> {
        let start = self.pos;
        while self.peek_raw().is_some_and(|c| c.is_ascii_digit()) {
            self.pos += 1;
        }
        if start == self.pos {
            return Err(self.error(&["integer"]));
        }
        let s: String = self.chars[start..self.pos].iter().collect();
        let v: u64 = s.parse().map_err(|_| Error::Range { value: u64::MAX })?;
        check_range(v)
    }

    fn int(&mut self) -> Result<u64> {
        self.skip_ws();
        self.int_here()
    }

    fn finish(&mut self) -> Result<()> {
        match self.peek() {
            None => Ok(()),
            Some(_) => Err(self.error(&["`+`", "end of input"])),
        }
    }

    /// True when the cursor sits on `c` standing alone (not the start of a longer token).
    fn lone(&mut self, c: char) -> bool {
        if self.peek() != Some(c) {
            return false;
        }
        !self.chars.get(self.pos + 1).is_some_and(|n| n.is_alphanumeric() || *n == '_')
    }

    fn d_index(&mut self) -> Result<u64> {
        self.pos += 1;
        let i = self.int_here()?;
        if i < 2 {
            return Err(Error::IndexBelowTwo { index: i });
        }
        Ok(i)
    }

    fn delta(&mut self) -> Result<DeltaAst> {
        if self.lone('0') {
            self.pos += 1;
            self.finish()?;
            return Ok(DeltaAst::default());
        }
        let mut words = Vec::new();
        loop {
            if self.lone('e') {
                self.pos += 1;
                words.push(DeltaWord::identity());
            } else {
                let mut w = Vec::new();
                while self.peek() == Some('d') {
                    w.push(self.d_index()?);
                }
                if w.is_empty() {
                    return Err(self.error(&["`d`", "`e`"]));
                }
                words.push(DeltaWord::new(w)?);
            }
            if !self.eat('+') {
                break;
            }
        }
        self.finish()?;
        Ok(DeltaAst { words })
    }

    fn genexpr(&mut self) -> Result<(DeltaWord, BaseGen)> {
        let mut w = Vec::new();
        loop {
            match self.peek() {
                Some('d') => w.push(self.d_index()?),
                Some('x') => break,
                _ => return Err(self.error(&["`d`", "`x`"])),
            }
        }
        self.pos += 1;
        let degree = self.int_here()?;
        if degree == 0 {
            return Err(Error::precondition("generator degree must be positive"));
        }
        let index = if self.peek_raw() == Some(':') {
            self.pos += 1;
            self.int_here()? as u32
        } else {
            0
        };
        Ok((DeltaWord::new(w)?, BaseGen::with_index(degree, index)))
    }

    fn factor(&mut self) -> Result<FactorAst> {
        if self.peek() == Some('g') {
            self.pos += 1;
            let gamma = self.int_here()?;
            if gamma == 0 {
                return Err(Error::precondition("divided power index must be positive"));
            }
            self.expect('(')?;
            let (word, base) = self.genexpr()?;
            self.expect(')')?;
            return Ok(FactorAst { gamma, word, base });
        }
        match self.peek() {
            Some('d') | Some('x') => {
                let (word, base) = self.genexpr()?;
                Ok(FactorAst { gamma: 1, word, base })
            }
            _ => Err(self.error(&["`g`", "`d`", "`x`", "`1`"])),
        }
    }

    fn s(&mut self) -> Result<SAst> {
        if self.lone('0') {
            self.pos += 1;
            self.finish()?;
            return Ok(SAst::default());
        }
        let mut terms = Vec::new();
        loop {
            if self.lone('1') {
                self.pos += 1;
                terms.push(STermAst::default());
            } else {
                let mut factors = vec![self.factor()?];
                while self.eat('*') {
                    factors.push(self.factor()?);
                }
                terms.push(STermAst { factors });
            }
            if !self.eat('+') {
                break;
            }
        }
        self.finish()?;
        Ok(SAst { terms })
    }

    fn ident(&mut self) -> Result<String> {
        self.skip_ws();
        let start = self.pos;
        if !self.peek_raw().is_some_and(|c| c.is_ascii_alphabetic() || c == '_') {
            return Err(self.error(&["identifier"]));
        }
        while self.peek_raw().is_some_and(|c| c.is_ascii_alphanumeric() || c == '_') {
            self.pos += 1;
        }
        Ok(self.chars[start..self.pos].iter().collect())
    }

    fn mono(&mut self) -> Result<Vec<(String, u32)>> {
        if self.lone('1') {
            self.pos += 1;
            return Ok(Vec::new());
        }
        let mut m = Vec::new();
        loop {
            let v = self.ident()?;
            let e = if self.eat('^') { self.int()? as u32 } else { 1 };
            m.push((v, e));
            if !self.eat('*') {
                return Ok(m);
            }
        }
    }

    fn ring(&mut self) -> Result<RingAst> {
        if self.lone('0') {
            self.pos += 1;
            self.finish()?;
            return Ok(RingAst::default());
        }
        let mut monomials = vec![self.mono()?];
        while self.eat('+') {
            monomials.push(self.mono()?);
        }
        self.finish()?;
        Ok(RingAst { monomials })
    }
}

pub fn parse_delta(text: &str) -> Result<DeltaAst> {
    Parser::new(text).delta()
}

pub fn parse_s(text: &str) -> Result<SAst> {
    Parser::new(text).s()
}

pub fn parse_ring(text: &str) -> Result<RingAst> {
    Parser::new(text).ring()
}

pub fn parse(text: &str, kind: ExprKind) -> Result<Expr> {
    Ok(match kind {
        ExprKind::Delta => Expr::Delta(parse_delta(text)?),
        ExprKind::SElement => Expr::S(parse_s(text)?),
        ExprKind::RingElement => Expr::Ring(parse_ring(text)?),
        ExprKind::Mixed => {
            let terms: Vec<MixedTermAst> = serde_json::from_str(text)?;
            for t in &terms {
                check_identifier(&t.gen)?;
                parse_ring(&t.coef)?;
            }
            Expr::Mixed(MixedAst { terms })
        }
    })
}

fn exponents(m: &[(String, u32)], vars: &[String]) -> Result<Vec<u32>> {
    let mut e = vec![0u32; vars.len()];
    for (v, k) in m {
        let i = vars.iter().position(|x| x == v).ok_or_else(|| Error::Unknown(v.clone()))?;
        e[i] = e[i].checked_add(*k).ok_or(Error::Range { value: u64::from(*k) })?;
    }
    Ok(e)
}

/// A single monomial over `vars` as an exponent vector.
pub fn parse_monomial(text: &str, vars: &[String]) -> Result<Vec<u32>> {
    let mut p = Parser::new(text);
    let m = p.mono()?;
    p.finish()?;
    exponents(&m, vars)
}

/// A sum of monomials over `vars`, repeats kept.
pub fn parse_ring_element(text: &str, vars: &[String]) -> Result<Vec<Vec<u32>>> {
    parse_ring(text)?.monomials.iter().map(|m| exponents(m, vars)).collect()
}

pub fn check_identifier(name: &str) -> Result<()> {
    let mut p = Parser::new(name);
    if p.peek_raw().is_some_and(|c| c.is_whitespace()) {
        return Err(p.error(&["identifier"]));
    }
    p.ident()?;
    if p.pos != p.chars.len() {
        return Err(p.error(&["end of identifier"]));
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::expr::{eval_delta, eval_s};

    fn syntax(e: Error) -> SyntaxError {
        match e {
            Error::Syntax(s) => s,
            other => panic!("expected a syntax error, got {other:?}"),
        }
    }

    #[test]
    fn delta_words() {
        let a = parse_delta("d5 d4").unwrap();
        assert_eq!(a.to_string(), "d5 d4");
        assert_eq!(eval_delta(&a).unwrap().to_string(), "d6 d3");
        assert_eq!(parse_delta("  d4 d2 +d3 ").unwrap().to_string(), "d4 d2 + d3");
        assert_eq!(parse_delta("e").unwrap().words, vec![DeltaWord::identity()]);
        assert!(parse_delta("0").unwrap().words.is_empty());
        assert!(eval_delta(&parse_delta("d3 + d3").unwrap()).unwrap().is_zero());
    }

    #[test]
    fn delta_rejects() {
        assert_eq!(parse_delta("d1"), Err(Error::IndexBelowTwo { index: 1 }));
        let e = syntax(parse_delta("d4 y2").unwrap_err());
        assert_eq!((e.line, e.column), (1, 4));
        assert_eq!(e.found, "`y`");
        let e = syntax(parse_delta("d4 +").unwrap_err());
        assert_eq!(e.found, "end of input");
        assert_eq!(e.column, 4);
        assert!(matches!(parse_delta("d4294967296"), Err(Error::Range { .. })));
        assert!(matches!(parse_delta("d99999999999999999999999"), Err(Error::Range { .. })));
        assert!(matches!(parse_delta(""), Err(Error::Syntax(_))));
        let e = syntax(parse_delta("d4\n d2 ?").unwrap_err());
        assert_eq!((e.line, e.column), (2, 5));
    }

    #[test]
    fn s_elements() {
        let a = parse_s("d4 d2 x3").unwrap();
        assert_eq!(a.terms[0].factors[0].word.indices(), &[4, 2]);
        assert_eq!(a.terms[0].factors[0].base, BaseGen::new(3));
        assert_eq!(a.to_string(), "d4 d2 x3");
        let b = parse_s("g2(d2 x3)*x5:1 + 1").unwrap();
        assert_eq!(b.to_string(), "g2(d2 x3) * x5:1 + 1");
        assert_eq!(eval_s(&parse_s("d3 x3").unwrap()).unwrap().to_string(), "g2(x3)");
        assert!(eval_s(&parse_s("d4 x3").unwrap()).unwrap().is_zero());
        assert!(matches!(parse_s("d1 x3"), Err(Error::IndexBelowTwo { index: 1 })));
        assert!(matches!(parse_s("g0(x3)"), Err(Error::Precondition(_))));
        assert!(matches!(parse_s("x0"), Err(Error::Precondition(_))));
        let e = syntax(parse_s("g2(x3").unwrap_err());
        assert_eq!(e.expected, vec!["`)`"]);
    }

    #[test]
    fn ring_elements() {
        let vars = vec!["u".to_string(), "v".to_string()];
        assert_eq!(parse_monomial("u^2*v", &vars).unwrap(), vec![2, 1]);
        assert_eq!(parse_monomial("1", &vars).unwrap(), vec![0, 0]);
        assert_eq!(parse_ring_element("u + v*u + 1", &vars).unwrap(), vec![vec![1, 0], vec![1, 1], vec![0, 0]]);
        assert!(parse_ring_element("0", &vars).unwrap().is_empty());
        assert_eq!(parse_ring_element("w", &vars), Err(Error::Unknown("w".into())));
        assert_eq!(parse_ring("u^2 * v").unwrap().to_string(), "u^2*v");
        assert!(matches!(parse_monomial("u + v", &vars), Err(Error::Syntax(_))));
    }

    #[test]
    fn identifiers() {
        assert!(check_identifier("x_1").is_ok());
        assert!(check_identifier("1x").is_err());
        assert!(check_identifier("a b").is_err());
        assert!(check_identifier("").is_err());
    }

    #[test]
    fn mixed_json() {
        let text = r#"[{"coef":"t","gen":"x"},{"coef":"t^2 + 1","gen":"y","degree":3}]"#;
        let e = parse(text, ExprKind::Mixed).unwrap();
        assert_eq!(parse(&e.to_string(), ExprKind::Mixed).unwrap(), e);
        assert!(parse(r#"[{"coef":"t","gen":"1x"}]"#, ExprKind::Mixed).is_err());
    }

    mod fuzz {
        use super::*;
        use proptest::prelude::*;

        fn word() -> impl Strategy<Value = DeltaWord> {
            prop::collection::vec(2u64..300, 0..5).prop_map(|v| DeltaWord::new(v).unwrap())
        }

        fn factor() -> impl Strategy<Value = FactorAst> {
            (1u64..12, word(), 1u64..64, 0u32..4).prop_map(|(gamma, word, d, i)| FactorAst {
                gamma,
                word,
                base: BaseGen::with_index(d, i),
            })
        }

        fn s_ast() -> impl Strategy<Value = SAst> {
            prop::collection::vec(prop::collection::vec(factor(), 0..4).prop_map(|factors| STermAst { factors }), 0..4)
                .prop_map(|terms| SAst { terms })
        }

        fn ring_ast() -> impl Strategy<Value = RingAst> {
            let power = ("[a-zA-Z_][a-zA-Z0-9_]{0,3}", 0u32..6);
            prop::collection::vec(prop::collection::vec(power, 0..4), 0..4).prop_map(|monomials| RingAst { monomials })
        }

        proptest! {
            #![proptest_config(ProptestConfig::with_cases(10_000))]

            #[test]
            fn delta_round_trip(words in prop::collection::vec(word(), 0..5)) {
                let a = DeltaAst { words };
                prop_assert_eq!(parse_delta(&a.to_string()).unwrap(), a);
            }

            #[test]
            fn s_round_trip(a in s_ast()) {
                prop_assert_eq!(parse_s(&a.to_string()).unwrap(), a);
            }

            #[test]
            fn ring_round_trip(a in ring_ast()) {
                prop_assert_eq!(parse_ring(&a.to_string()).unwrap(), a);
            }

            #[test]
            fn error_positions_inside_input(text in "[dxg0-9 ()*+:e^a-z?]{0,16}") {
                for r in [parse_delta(&text).map(|_| ()), parse_s(&text).map(|_| ()), parse_ring(&text).map(|_| ())] {
                    if let Err(Error::Syntax(e)) = r {
                        prop_assert_eq!(e.line, 1);
                        prop_assert!(e.column >= 1 && e.column <= text.chars().count().max(1));
                    }
                }
            }
        }
    }
}
