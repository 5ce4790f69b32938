//! Text form of algebra elements.  One small grammar serves every
//! subcommand: sums and differences associate to the left, products bind
//! tighter, exponents attach only to named atoms, and a bracketed pair is
//! a commutator.  Index entries inside brackets may be integers or names
//! bound on the command line.  The printer emits exactly the text the
//! parser accepts, so printing and re-parsing is the identity.

use std::collections::BTreeMap;
use std::fmt;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{ToPrimitive, Zero};

use crate::error::{Error, Result};
use crate::partitions::Partition;
use crate::Theory;

/// Values for index names bound with `--let`.
pub type Bindings = BTreeMap<String, i64>;

// ---- Syntax trees ----

/// A named generator or variable occurrence.
#[derive(Clone, PartialEq, Eq, Debug)]
pub enum Atom {
    /// `P[a,b]`, a torus power-sum generator.
    TorusP(i64, i64),
    /// `T[a,b]`, a bracket-theory torus generator.
    TorusT(i64, i64),
    /// `Q[..]`, a solid-torus basis closure.
    ModuleBasis(Partition),
    /// `h[n]`, a complete homogeneous generator.
    Complete(i64),
    /// `p[n]`, a power sum.
    PowerSum(i64),
    /// `S[..]`, an annulus Schur closure.
    Schur(Partition),
    /// `a`, the winding curve of the relative annulus.
    Winding,
    /// `e`, the boundary arc of the relative annulus.
    BoundaryArc,
    /// The ring variable `s`.
    S,
    /// The ring variable `v`.
    V,
}

/// Parsed expression; the shape mirrors the concrete grammar.
#[derive(Clone, PartialEq, Eq, Debug)]
pub enum Expression {
    Atom(Atom),
    /// An atom raised to an integer power.
    Power(Atom, i64),
    /// A nonnegative rational literal.
    Literal(BigRational),
    Add(Box<Expression>, Box<Expression>),
    Sub(Box<Expression>, Box<Expression>),
    Mul(Box<Expression>, Box<Expression>),
    Commutator(Box<Expression>, Box<Expression>),
}

// ---- Lexer ----

#[derive(Clone, PartialEq, Eq, Debug)]
enum Token {
    Plus,
    Minus,
    Star,
    Caret,
    LBracket,
    RBracket,
    LParen,
    RParen,
    Comma,
    Number(BigRational),
    Name(String),
}

impl Token {
    fn describe(&self) -> String {
        match self {
            Token::Plus => "'+'".into(),
            Token::Minus => "'-'".into(),
            Token::Star => "'*'".into(),
            Token::Caret => "'^'".into(),
            Token::LBracket => "'['".into(),
            Token::RBracket => "']'".into(),
            Token::LParen => "'('".into(),
            Token::RParen => "')'".into(),
            Token::Comma => "','".into(),
            Token::Number(q) => format!("number {q}"),
            Token::Name(n) => format!("name '{n}'"),
        }
    }
}

struct Lexed {
    token: Token,
    offset: usize,
}

fn syntax_error<T>(offset: usize, message: impl Into<String>) -> Result<T> {
    Err(Error::SyntaxError {
        offset,
        message: message.into(),
    })
}

fn lex(text: &str) -> Result<Vec<Lexed>> {
    let mut out = Vec::new();
    let mut chars = text.char_indices().peekable();
    while let Some(&(offset, ch)) = chars.peek() {
        if ch.is_whitespace() {
            chars.next();
            continue;
        }
        let simple = match ch {
            '+' => Some(Token::Plus),
            '-' | '\u{2212}' => Some(Token::Minus),
            '*' => Some(Token::Star),
            '^' => Some(Token::Caret),
            '[' => Some(Token::LBracket),
            ']' => Some(Token::RBracket),
            '(' => Some(Token::LParen),
            ')' => Some(Token::RParen),
            ',' => Some(Token::Comma),
            _ => None,
        };
        if let Some(token) = simple {
            chars.next();
            out.push(Lexed { token, offset });
            continue;
        }
        if ch.is_ascii_digit() {
            let mut digits = String::new();
            while let Some(&(_, d)) = chars.peek() {
                if d.is_ascii_digit() {
                    digits.push(d);
                    chars.next();
                } else {
                    break;
                }
            }
            let numerator: BigInt = digits.parse().expect("digit run");
            let mut value = BigRational::from_integer(numerator);
            if let Some(&(slash_at, '/')) = chars.peek() {
                chars.next();
                let mut lower = String::new();
                while let Some(&(_, d)) = chars.peek() {
                    if d.is_ascii_digit() {
                        lower.push(d);
                        chars.next();
                    } else {
                        break;
                    }
                }
                if lower.is_empty() {
                    return syntax_error(slash_at, "expected digits after '/'");
                }
                let denominator: BigInt = lower.parse().expect("digit run");
                if denominator.is_zero() {
                    return syntax_error(slash_at, "zero denominator");
                }
                value /= BigRational::from_integer(denominator);
            }
            out.push(Lexed {
                token: Token::Number(value),
                offset,
            });
            continue;
        }
        if ch.is_ascii_alphabetic() || ch == '_' {
            let mut name = String::new();
            while let Some(&(_, d)) = chars.peek() {
                if d.is_ascii_alphanumeric() || d == '_' {
                    name.push(d);
                    chars.next();
                } else {
                    break;
                }
            }
            out.push(Lexed {
                token: Token::Name(name),
                offset,
            });
            continue;
        }
        return syntax_error(offset, format!("unexpected character '{ch}'"));
    }
    Ok(out)
}

// ---- Parser ----

struct Parser<'a> {
    tokens: Vec<Lexed>,
    position: usize,
    end: usize,
    theory: Theory,
    bindings: &'a Bindings,
}

impl<'a> Parser<'a> {
    fn peek(&self) -> Option<&Token> {
        self.tokens.get(self.position).map(|l| &l.token)
    }

    fn here(&self) -> usize {
        self.tokens
            .get(self.position)
            .map(|l| l.offset)
            .unwrap_or(self.end)
    }

    fn advance(&mut self) -> Option<Token> {
        let lexed = self.tokens.get(self.position)?;
        self.position += 1;
        Some(lexed.token.clone())
    }

    fn eat(&mut self, expected: &Token, wanted: &str) -> Result<()> {
        let offset = self.here();
        match self.advance() {
            Some(token) if token == *expected => Ok(()),
            Some(token) => {
                let saw = token.describe();
                syntax_error(offset, format!("expected {wanted}, found {saw}"))
            }
            None => syntax_error(offset, format!("expected {wanted}, found end of input")),
        }
    }

    fn expression(&mut self) -> Result<Expression> {
        let mut lhs = self.term()?;
        loop {
            match self.peek() {
                Some(Token::Plus) => {
                    self.advance();
                    let rhs = self.term()?;
                    lhs = Expression::Add(Box::new(lhs), Box::new(rhs));
                }
                Some(Token::Minus) => {
                    self.advance();
                    let rhs = self.term()?;
                    lhs = Expression::Sub(Box::new(lhs), Box::new(rhs));
                }
                _ => return Ok(lhs),
            }
        }
    }

    fn term(&mut self) -> Result<Expression> {
        let mut lhs = self.factor()?;
        while self.peek() == Some(&Token::Star) {
            self.advance();
            let rhs = self.factor()?;
            lhs = Expression::Mul(Box::new(lhs), Box::new(rhs));
        }
        Ok(lhs)
    }

    fn factor(&mut self) -> Result<Expression> {
        let offset = self.here();
        match self.peek() {
            Some(Token::LBracket) => {
                self.advance();
                let lhs = self.expression()?;
                self.eat(&Token::Comma, "',' between commutator entries")?;
                let rhs = self.expression()?;
                self.eat(&Token::RBracket, "']' closing the commutator")?;
                self.reject_exponent()?;
                Ok(Expression::Commutator(Box::new(lhs), Box::new(rhs)))
            }
            Some(Token::LParen) => {
                self.advance();
                let inner = self.expression()?;
                self.eat(&Token::RParen, "')'")?;
                self.reject_exponent()?;
                Ok(inner)
            }
            Some(Token::Number(_)) => {
                let Some(Token::Number(value)) = self.advance() else {
                    unreachable!("peeked a number");
                };
                self.reject_exponent()?;
                Ok(Expression::Literal(value))
            }
            Some(Token::Name(_)) => {
                let Some(Token::Name(name)) = self.advance() else {
                    unreachable!("peeked a name");
                };
                let atom = self.atom(offset, &name)?;
                if self.peek() == Some(&Token::Caret) {
                    self.advance();
                    let exponent = self.signed_integer("an integer exponent")?;
                    Ok(Expression::Power(atom, exponent))
                } else {
                    Ok(Expression::Atom(atom))
                }
            }
            Some(token) => {
                let saw = token.describe();
                syntax_error(offset, format!("expected an expression, found {saw}"))
            }
            None => syntax_error(offset, "expected an expression, found end of input"),
        }
    }

    fn reject_exponent(&mut self) -> Result<()> {
        if self.peek() == Some(&Token::Caret) {
            return syntax_error(self.here(), "exponents attach only to named atoms");
        }
        Ok(())
    }

    fn atom(&mut self, offset: usize, name: &str) -> Result<Atom> {
        match name {
            "P" => {
                let (a, b) = self.index_pair()?;
                if self.theory == Theory::KauffmanBracket {
                    return Err(Error::TypeError(
                        "P[..] generators live in the Dubrovnik and HOMFLYPT theories; \
                         under theory K write T[..]"
                            .into(),
                    ));
                }
                Ok(Atom::TorusP(a, b))
            }
            "T" => {
                let (a, b) = self.index_pair()?;
                if self.theory != Theory::KauffmanBracket {
                    return Err(Error::TypeError(
                        "T[..] generators live in the Kauffman-bracket theory; \
                         under theories D and H write P[..]"
                            .into(),
                    ));
                }
                Ok(Atom::TorusT(a, b))
            }
            "Q" => Ok(Atom::ModuleBasis(self.partition()?)),
            "S" => Ok(Atom::Schur(self.partition()?)),
            "h" => Ok(Atom::Complete(self.single_index()?)),
            "p" => Ok(Atom::PowerSum(self.single_index()?)),
            "a" => Ok(Atom::Winding),
            "e" => Ok(Atom::BoundaryArc),
            "s" => Ok(Atom::S),
            "v" => Ok(Atom::V),
            _ => syntax_error(offset, format!("unknown name '{name}'")),
        }
    }

    fn index_pair(&mut self) -> Result<(i64, i64)> {
        self.eat(&Token::LBracket, "'[' opening an index pair")?;
        let a = self.index_entry()?;
        self.eat(&Token::Comma, "',' between indices")?;
        let b = self.index_entry()?;
        self.eat(&Token::RBracket, "']' closing the index pair")?;
        Ok((a, b))
    }

    fn single_index(&mut self) -> Result<i64> {
        self.eat(&Token::LBracket, "'[' opening an index")?;
        let n = self.index_entry()?;
        self.eat(&Token::RBracket, "']' closing the index")?;
        Ok(n)
    }

    fn partition(&mut self) -> Result<Partition> {
        self.eat(&Token::LBracket, "'[' opening a partition")?;
        let mut rows = Vec::new();
        if self.peek() == Some(&Token::RBracket) {
            self.advance();
            return Ok(Partition::empty());
        }
        loop {
            let offset = self.here();
            let row = self.index_entry()?;
            if row < 1 {
                return syntax_error(offset, "partition rows are positive");
            }
            if rows.last().is_some_and(|last| row > *last) {
                return syntax_error(offset, "partition rows must not increase");
            }
            rows.push(row);
            match self.advance() {
                Some(Token::Comma) => continue,
                Some(Token::RBracket) => break,
                Some(token) => {
                    let saw = token.describe();
                    return syntax_error(
                        offset,
                        format!("expected ',' or ']' in a partition, found {saw}"),
                    );
                }
                None => {
                    return syntax_error(self.end, "unclosed partition");
                }
            }
        }
        Ok(Partition::new(rows))
    }

    /// One index slot: an optionally negated integer or bound name.
    fn index_entry(&mut self) -> Result<i64> {
        let negate = if self.peek() == Some(&Token::Minus) {
            self.advance();
            true
        } else {
            false
        };
        let offset = self.here();
        let value = match self.advance() {
            Some(Token::Number(q)) => integer_value(&q, offset)?,
            Some(Token::Name(name)) => match self.bindings.get(&name) {
                Some(v) => *v,
                None => {
                    return syntax_error(
                        offset,
                        format!("unbound index name '{name}'; bind it with --let {name}=.."),
                    );
                }
            },
            Some(token) => {
                let saw = token.describe();
                return syntax_error(offset, format!("expected an index, found {saw}"));
            }
            None => return syntax_error(offset, "expected an index, found end of input"),
        };
        Ok(if negate { -value } else { value })
    }

    fn signed_integer(&mut self, wanted: &str) -> Result<i64> {
        let negate = if self.peek() == Some(&Token::Minus) {
            self.advance();
            true
        } else {
            false
        };
        let offset = self.here();
        match self.advance() {
            Some(Token::Number(q)) => {
                let value = integer_value(&q, offset)?;
                Ok(if negate { -value } else { value })
            }
            Some(token) => {
                let saw = token.describe();
                syntax_error(offset, format!("expected {wanted}, found {saw}"))
            }
            None => syntax_error(offset, format!("expected {wanted}, found end of input")),
        }
    }
}

fn integer_value(q: &BigRational, offset: usize) -> Result<i64> {
    if !q.is_integer() {
        return syntax_error(offset, format!("expected an integer, found {q}"));
    }
    match q.numer().to_i64() {
        Some(v) => Ok(v),
        None => syntax_error(offset, "integer out of range"),
    }
}

/// Parse an expression under a theory context, resolving bound names.
pub fn parse(text: &str, theory: Theory, bindings: &Bindings) -> Result<Expression> {
    let tokens = lex(text)?;
    let mut parser = Parser {
        tokens,
        position: 0,
        end: text.len(),
        theory,
        bindings,
    };
    let expression = parser.expression()?;
    if let Some(token) = parser.peek() {
        let saw = token.describe();
        return syntax_error(parser.here(), format!("unexpected {saw} after the expression"));
    }
    Ok(expression)
}

// ---- Printer ----

impl fmt::Display for Atom {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Atom::TorusP(a, b) => write!(f, "P[{a},{b}]"),
            Atom::TorusT(a, b) => write!(f, "T[{a},{b}]"),
            Atom::ModuleBasis(l) => write!(f, "Q{l}"),
            Atom::Complete(n) => write!(f, "h[{n}]"),
            Atom::PowerSum(n) => write!(f, "p[{n}]"),
            Atom::Schur(l) => write!(f, "S{l}"),
            Atom::Winding => write!(f, "a"),
            Atom::BoundaryArc => write!(f, "e"),
            Atom::S => write!(f, "s"),
            Atom::V => write!(f, "v"),
        }
    }
}

fn write_at(f: &mut fmt::Formatter<'_>, e: &Expression, level: u8) -> fmt::Result {
    let own = match e {
        Expression::Add(..) | Expression::Sub(..) => 1,
        Expression::Mul(..) => 2,
        _ => 3,
    };
    if own < level {
        write!(f, "(")?;
        write_at(f, e, 1)?;
        return write!(f, ")");
    }
    match e {
        Expression::Atom(atom) => write!(f, "{atom}"),
        Expression::Power(atom, k) => write!(f, "{atom}^{k}"),
        Expression::Literal(q) => write!(f, "{q}"),
        Expression::Add(l, r) => {
            write_at(f, l, 1)?;
            write!(f, " + ")?;
            write_at(f, r, 2)
        }
        Expression::Sub(l, r) => {
            write_at(f, l, 1)?;
            write!(f, " - ")?;
            write_at(f, r, 2)
        }
        Expression::Mul(l, r) => {
            write_at(f, l, 2)?;
            write!(f, "*")?;
            write_at(f, r, 3)
        }
        Expression::Commutator(l, r) => {
            write!(f, "[")?;
            write_at(f, l, 1)?;
            write!(f, ",")?;
            write_at(f, r, 1)?;
            write!(f, "]")
        }
    }
}

impl fmt::Display for Expression {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write_at(f, self, 1)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::rngs::StdRng;
    use rand::{Rng, SeedableRng};

    fn parse_d(text: &str) -> Result<Expression> {
        parse(text, Theory::Dubrovnik, &Bindings::new())
    }

    fn atom(a: Atom) -> Expression {
        Expression::Atom(a)
    }

    #[test]
    fn products_and_commutators() {
        assert_eq!(
            parse_d("P[1,0]*P[0,1]").unwrap(),
            Expression::Mul(
                Box::new(atom(Atom::TorusP(1, 0))),
                Box::new(atom(Atom::TorusP(0, 1)))
            )
        );

        let mut bindings = Bindings::new();
        bindings.insert("n".into(), 2);
        assert_eq!(
            parse("[P[1,0],P[0,n]]", Theory::Dubrovnik, &bindings).unwrap(),
            parse_d("[ P[1,0] , P[0,2] ]").unwrap()
        );
    }

    #[test]
    fn scalar_prefactors() {
        let parsed = parse_d("(s - s^-1)*p[2]").unwrap();
        let prefactor = Expression::Sub(
            Box::new(atom(Atom::S)),
            Box::new(Expression::Power(Atom::S, -1)),
        );
        assert_eq!(
            parsed,
            Expression::Mul(Box::new(prefactor), Box::new(atom(Atom::PowerSum(2))))
        );
        assert_eq!(format!("{}", parsed), "(s - s^-1)*p[2]");
    }

    #[test]
    fn sums_associate_to_the_left() {
        let parsed = parse_d("a - e + a").unwrap();
        let expect = Expression::Add(
            Box::new(Expression::Sub(
                Box::new(atom(Atom::Winding)),
                Box::new(atom(Atom::BoundaryArc)),
            )),
            Box::new(atom(Atom::Winding)),
        );
        assert_eq!(parsed, expect);
        assert_eq!(format!("{}", parsed), "a - e + a");
        // The right-leaning tree needs parentheses to survive a round trip.
        let leaning = Expression::Sub(
            Box::new(atom(Atom::Winding)),
            Box::new(Expression::Add(
                Box::new(atom(Atom::BoundaryArc)),
                Box::new(atom(Atom::Winding)),
            )),
        );
        assert_eq!(format!("{leaning}"), "a - (e + a)");
        assert_eq!(parse_d("a - (e + a)").unwrap(), leaning);
    }

    #[test]
    fn partitions_and_negative_indices() {
        assert_eq!(
            parse_d("Q[2,1] + Q[]").unwrap(),
            Expression::Add(
                Box::new(atom(Atom::ModuleBasis(Partition::new(vec![2, 1])))),
                Box::new(atom(Atom::ModuleBasis(Partition::empty())))
            )
        );
        assert_eq!(
            parse_d("P[1,-1]").unwrap(),
            atom(Atom::TorusP(1, -1))
        );
        assert_eq!(parse_d("h[-2]").unwrap(), atom(Atom::Complete(-2)));
        assert_eq!(
            parse_d("5/2").unwrap(),
            Expression::Literal(BigRational::new(5.into(), 2.into()))
        );
    }

    #[test]
    fn syntax_errors_carry_byte_offsets() {
        let cases = [
            ("P[1,0", 5, "expected"),
            ("3 + @", 4, "unexpected character"),
            ("x", 0, "unknown name"),
            ("P[0,n]", 4, "unbound index name"),
            ("Q[1/2]", 2, "expected an integer"),
            ("Q[1,2]", 4, "must not increase"),
            ("Q[0]", 2, "positive"),
            ("1/0", 1, "zero denominator"),
            ("(s)^2", 3, "attach only to named atoms"),
            ("s^2^3", 3, "unexpected"),
            ("P[1,0] P[0,1]", 7, "unexpected"),
        ];
        for (text, at, needle) in cases {
            match parse_d(text) {
                Err(Error::SyntaxError { offset, message }) => {
                    assert_eq!(offset, at, "offset for {text:?} ({message})");
                    assert!(message.contains(needle), "message for {text:?}: {message}");
                }
                other => panic!("expected a syntax error for {text:?}, got {other:?}"),
            }
        }
    }

    #[test]
    fn theory_mismatches_are_type_errors() {
        assert!(matches!(
            parse_d("T[1,0]"),
            Err(Error::TypeError(_))
        ));
        assert!(matches!(
            parse("P[1,0]", Theory::KauffmanBracket, &Bindings::new()),
            Err(Error::TypeError(_))
        ));
        assert!(parse("T[1,0] + T[0,1]", Theory::KauffmanBracket, &Bindings::new()).is_ok());
    }

    // ---- Generated round trips ----

    fn random_partition(rng: &mut StdRng) -> Partition {
        let rows = rng.gen_range(0..3);
        let mut parts: Vec<i64> = (0..rows).map(|_| rng.gen_range(1..5)).collect();
        parts.sort_unstable_by(|x, y| y.cmp(x));
        Partition::new(parts)
    }

    fn random_atom(rng: &mut StdRng, theory: Theory) -> Atom {
        if theory == Theory::KauffmanBracket {
            return match rng.gen_range(0..3) {
                0 => Atom::TorusT(rng.gen_range(-3..4), rng.gen_range(-3..4)),
                1 => Atom::S,
                _ => Atom::V,
            };
        }
        match rng.gen_range(0..9) {
            0 => Atom::TorusP(rng.gen_range(-3..4), rng.gen_range(-3..4)),
            1 => Atom::ModuleBasis(random_partition(rng)),
            2 => Atom::Complete(rng.gen_range(-2..6)),
            3 => Atom::PowerSum(rng.gen_range(1..6)),
            4 => Atom::Schur(random_partition(rng)),
            5 => Atom::Winding,
            6 => Atom::BoundaryArc,
            7 => Atom::S,
            _ => Atom::V,
        }
    }

    fn random_expression(rng: &mut StdRng, theory: Theory, depth: u8) -> Expression {
        let leaf = depth == 0 || rng.gen_bool(0.35);
        if leaf {
            return match rng.gen_range(0..3) {
                0 => Expression::Literal(BigRational::new(
                    rng.gen_range(0..20).into(),
                    rng.gen_range(1..6).into(),
                )),
                1 => Expression::Power(random_atom(rng, theory), rng.gen_range(-4..5)),
                _ => Expression::Atom(random_atom(rng, theory)),
            };
        }
        let l = Box::new(random_expression(rng, theory, depth - 1));
        let r = Box::new(random_expression(rng, theory, depth - 1));
        match rng.gen_range(0..4) {
            0 => Expression::Add(l, r),
            1 => Expression::Sub(l, r),
            2 => Expression::Mul(l, r),
            _ => Expression::Commutator(l, r),
        }
    }

    #[test]
    fn printing_then_parsing_is_the_identity() {
        let mut rng = StdRng::seed_from_u64(0x65787072);
        let theories = [
            Theory::Dubrovnik,
            Theory::Homflypt,
            Theory::KauffmanBracket,
        ];
        for round in 0..200 {
            let theory = theories[round % theories.len()];
            let tree = random_expression(&mut rng, theory, 4);
            let text = format!("{tree}");
            let reparsed = parse(&text, theory, &Bindings::new())
                .unwrap_or_else(|e| panic!("round {round}: {text:?} failed with {e:?}"));
            assert_eq!(reparsed, tree, "round {round}: {text:?}");
        }
    }
}
