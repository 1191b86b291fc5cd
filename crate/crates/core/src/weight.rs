//! Parser and evaluator for integer weight expressions in the variables
//! `k1..kd` (with `i`, `j`, `k` accepted as aliases for `k1`, `k2`, `k3`).
//!
//! Grammar:
//! ```text
//! expr   := term (('+' | '-') term)*
//! term   := factor ('*' factor)*
//! factor := '-' factor | base ('^' uint)?
//! base   := int | ident | '(' expr ')' | 'abs' '(' expr ')'
//! ```
//! Whitespace is insignificant; implicit multiplication is not supported.
//! Unary minus binds looser than '^', so `-k1^2` is `-(k1^2)`.
//! Evaluation is exact over big integers, with `0^0 = 1`.

use std::fmt;

use num_bigint::BigInt;
use num_traits::Pow;

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Expr {
    Int(BigInt),
    /// 1-based variable index.
    Var(usize),
    Neg(Box<Expr>),
    Add(Box<Expr>, Box<Expr>),
    Sub(Box<Expr>, Box<Expr>),
    Mul(Box<Expr>, Box<Expr>),
    Pow(Box<Expr>, u32),
    Abs(Box<Expr>),
}

/// A weight expression together with its declared arity. Every variable
/// index lies in `1..=arity`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct WeightExpr {
    arity: usize,
    root: Expr,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum WeightError {
    Syntax {
        pos: usize,
        msg: String,
    },
    UnknownVariable {
        pos: usize,
        name: String,
    },
    IndexOutOfRange {
        pos: usize,
        name: String,
        index: usize,
        arity: usize,
    },
    NonLiteralExponent {
        pos: usize,
    },
    ArityMismatch {
        expected: usize,
        got: usize,
    },
}

impl fmt::Display for WeightError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            WeightError::Syntax { pos, msg } => write!(f, "syntax error at byte {pos}: {msg}"),
            WeightError::UnknownVariable { pos, name } => {
                write!(f, "unknown variable '{name}' at byte {pos}")
            }
            WeightError::IndexOutOfRange {
                pos,
                name,
                index,
                arity,
            } => write!(
                f,
                "variable '{name}' (index {index}) at byte {pos} exceeds arity {arity}"
            ),
            WeightError::NonLiteralExponent { pos } => {
                write!(f, "non-literal exponent at byte {pos}")
            }
            WeightError::ArityMismatch { expected, got } => {
                write!(
                    f,
                    "arity mismatch: expression has arity {expected}, point has {got}"
                )
            }
        }
    }
}

impl std::error::Error for WeightError {}

#[derive(Debug, Clone, PartialEq, Eq)]
enum Tok {
    Int(BigInt),
    Ident(String),
    Plus,
    Minus,
    Star,
    Caret,
    LParen,
    RParen,
}

#[derive(Debug, Clone)]
struct Token {
    tok: Tok,
    pos: usize,
}

fn lex(src: &str) -> Result<Vec<Token>, WeightError> {
    let bytes = src.as_bytes();
    let mut out = Vec::new();
    let mut i = 0;
    while i < bytes.len() {
        let c = bytes[i] as char;
        match c {
            ' ' | '\t' | '\n' | '\r' => i += 1,
            '+' => {
                out.push(Token {
                    tok: Tok::Plus,
                    pos: i,
                });
                i += 1;
            }
            '-' => {
                out.push(Token {
                    tok: Tok::Minus,
                    pos: i,
                });
                i += 1;
            }
            '*' => {
                out.push(Token {
                    tok: Tok::Star,
                    pos: i,
                });
                i += 1;
            }
            '^' => {
                out.push(Token {
                    tok: Tok::Caret,
                    pos: i,
                });
                i += 1;
            }
            '(' => {
                out.push(Token {
                    tok: Tok::LParen,
                    pos: i,
                });
                i += 1;
            }
            ')' => {
                out.push(Token {
                    tok: Tok::RParen,
                    pos: i,
                });
                i += 1;
            }
            '0'..='9' => {
                let start = i;
                while i < bytes.len() && bytes[i].is_ascii_digit() {
                    i += 1;
                }
                let digits = &src[start..i];
                let value: BigInt = digits.parse().expect("digit run parses");
                out.push(Token {
                    tok: Tok::Int(value),
                    pos: start,
                });
            }
            'a'..='z' | 'A'..='Z' | '_' => {
                let start = i;
                while i < bytes.len() && (bytes[i].is_ascii_alphanumeric() || bytes[i] == b'_') {
                    i += 1;
                }
                out.push(Token {
                    tok: Tok::Ident(src[start..i].to_string()),
                    pos: start,
                });
            }
            _ => {
                return Err(WeightError::Syntax {
                    pos: i,
                    msg: format!("unexpected character '{c}'"),
                })
            }
        }
    }
    Ok(out)
}

struct Parser {
    tokens: Vec<Token>,
    cursor: usize,
    arity: usize,
    end: usize,
}

impl Parser {
    fn peek(&self) -> Option<&Tok> {
        self.tokens.get(self.cursor).map(|t| &t.tok)
    }

    fn pos(&self) -> usize {
        self.tokens.get(self.cursor).map_or(self.end, |t| t.pos)
    }

    fn advance(&mut self) -> Option<Token> {
        let t = self.tokens.get(self.cursor).cloned();
        if t.is_some() {
            self.cursor += 1;
        }
        t
    }

    fn expect_rparen(&mut self) -> Result<(), WeightError> {
        match self.peek() {
            Some(Tok::RParen) => {
                self.advance();
                Ok(())
            }
            _ => Err(WeightError::Syntax {
                pos: self.pos(),
                msg: "unbalanced parenthesis".to_string(),
            }),
        }
    }

    fn parse_expr(&mut self) -> Result<Expr, WeightError> {
        let mut lhs = self.parse_term()?;
        loop {
            match self.peek() {
                Some(Tok::Plus) => {
                    self.advance();
                    let rhs = self.parse_term()?;
                    lhs = Expr::Add(Box::new(lhs), Box::new(rhs));
                }
                Some(Tok::Minus) => {
                    self.advance();
                    let rhs = self.parse_term()?;
                    lhs = Expr::Sub(Box::new(lhs), Box::new(rhs));
                }
                _ => return Ok(lhs),
            }
        }
    }

    fn parse_term(&mut self) -> Result<Expr, WeightError> {
        let mut lhs = self.parse_factor()?;
        while self.peek() == Some(&Tok::Star) {
            self.advance();
            let rhs = self.parse_factor()?;
            lhs = Expr::Mul(Box::new(lhs), Box::new(rhs));
        }
        Ok(lhs)
    }

    fn parse_factor(&mut self) -> Result<Expr, WeightError> {
        if self.peek() == Some(&Tok::Minus) {
            // unary minus wraps the whole factor: -k1^2 = -(k1^2)
            self.advance();
            let inner = self.parse_factor()?;
            return Ok(Expr::Neg(Box::new(inner)));
        }
        let base = self.parse_base()?;
        if self.peek() == Some(&Tok::Caret) {
            self.advance();
            let pos = self.pos();
            match self.advance().map(|t| t.tok) {
                Some(Tok::Int(v)) => {
                    let exp = u32::try_from(&v).map_err(|_| WeightError::Syntax {
                        pos,
                        msg: "exponent out of range".to_string(),
                    })?;
                    return Ok(Expr::Pow(Box::new(base), exp));
                }
                _ => return Err(WeightError::NonLiteralExponent { pos }),
            }
        }
        Ok(base)
    }

    fn parse_base(&mut self) -> Result<Expr, WeightError> {
        let pos = self.pos();
        match self.advance().map(|t| t.tok) {
            Some(Tok::Int(v)) => Ok(Expr::Int(v)),
            Some(Tok::Ident(name)) if name == "abs" => {
                if self.peek() != Some(&Tok::LParen) {
                    return Err(WeightError::Syntax {
                        pos: self.pos(),
                        msg: "expected '(' after abs".to_string(),
                    });
                }
                self.advance();
                let inner = self.parse_expr()?;
                self.expect_rparen()?;
                Ok(Expr::Abs(Box::new(inner)))
            }
            Some(Tok::Ident(name)) => {
                let index = resolve_variable(&name).ok_or(WeightError::UnknownVariable {
                    pos,
                    name: name.clone(),
                })?;
                if index == 0 || index > self.arity {
                    return Err(WeightError::IndexOutOfRange {
                        pos,
                        name,
                        index,
                        arity: self.arity,
                    });
                }
                Ok(Expr::Var(index))
            }
            Some(Tok::LParen) => {
                let inner = self.parse_expr()?;
                self.expect_rparen()?;
                Ok(inner)
            }
            Some(other) => Err(WeightError::Syntax {
                pos,
                msg: format!("expected a value, found {other:?}"),
            }),
            None => Err(WeightError::Syntax {
                pos,
                msg: "unexpected end of input".to_string(),
            }),
        }
    }
}

fn resolve_variable(name: &str) -> Option<usize> {
    match name {
        "i" => Some(1),
        "j" => Some(2),
        "k" => Some(3),
        _ => {
            let digits = name.strip_prefix('k')?;
            if digits.is_empty() || !digits.bytes().all(|b| b.is_ascii_digit()) {
                return None;
            }
            digits.parse().ok()
        }
    }
}

impl WeightExpr {
    /// Parses `src` as a weight in the variables `k1..k{arity}`.
    pub fn parse(src: &str, arity: usize) -> Result<Self, WeightError> {
        assert!(arity >= 1, "weight arity must be at least 1");
        let tokens = lex(src)?;
        let mut parser = Parser {
            tokens,
            cursor: 0,
            arity,
            end: src.len(),
        };
        let root = parser.parse_expr()?;
        if let Some(tok) = parser.peek() {
            return Err(WeightError::Syntax {
                pos: parser.pos(),
                msg: format!("unexpected trailing token {tok:?}"),
            });
        }
        Ok(WeightExpr { arity, root })
    }

    /// Wraps a hand-built AST, validating that variable indices fit the arity.
    pub fn from_root(arity: usize, root: Expr) -> Result<Self, WeightError> {
        assert!(arity >= 1, "weight arity must be at least 1");
        fn check(e: &Expr, arity: usize) -> Result<(), WeightError> {
            match e {
                Expr::Int(_) => Ok(()),
                Expr::Var(i) => {
                    if *i == 0 || *i > arity {
                        Err(WeightError::IndexOutOfRange {
                            pos: 0,
                            name: format!("k{i}"),
                            index: *i,
                            arity,
                        })
                    } else {
                        Ok(())
                    }
                }
                Expr::Neg(x) | Expr::Abs(x) | Expr::Pow(x, _) => check(x, arity),
                Expr::Add(a, b) | Expr::Sub(a, b) | Expr::Mul(a, b) => {
                    check(a, arity)?;
                    check(b, arity)
                }
            }
        }
        check(&root, arity)?;
        Ok(WeightExpr { arity, root })
    }

    pub fn arity(&self) -> usize {
        self.arity
    }

    pub fn root(&self) -> &Expr {
        &self.root
    }

    /// Exact evaluation at an integer point, with `0^0 = 1`.
    pub fn eval(&self, point: &[BigInt]) -> Result<BigInt, WeightError> {
        if point.len() != self.arity {
            return Err(WeightError::ArityMismatch {
                expected: self.arity,
                got: point.len(),
            });
        }
        Ok(eval_node(&self.root, point))
    }
}

fn eval_node(e: &Expr, point: &[BigInt]) -> BigInt {
    use num_traits::Signed;
    match e {
        Expr::Int(v) => v.clone(),
        Expr::Var(i) => point[*i - 1].clone(),
        Expr::Neg(x) => -eval_node(x, point),
        Expr::Add(a, b) => eval_node(a, point) + eval_node(b, point),
        Expr::Sub(a, b) => eval_node(a, point) - eval_node(b, point),
        Expr::Mul(a, b) => eval_node(a, point) * eval_node(b, point),
        Expr::Pow(x, e) => Pow::pow(&eval_node(x, point), *e),
        Expr::Abs(x) => eval_node(x, point).abs(),
    }
}

// Precedence levels for the printer: add/sub 1, mul 2, neg 3, pow 4, atoms 5.
// Parentheses are emitted exactly where re-parsing would otherwise change
// the tree, so print -> parse is structure-preserving.
fn fmt_node(e: &Expr, f: &mut fmt::Formatter<'_>, min_prec: u8) -> fmt::Result {
    let prec = match e {
        Expr::Add(..) | Expr::Sub(..) => 1,
        Expr::Mul(..) => 2,
        Expr::Neg(_) => 3,
        Expr::Pow(..) => 4,
        Expr::Int(_) | Expr::Var(_) | Expr::Abs(_) => 5,
    };
    let parens = prec < min_prec;
    if parens {
        write!(f, "(")?;
    }
    match e {
        Expr::Int(v) => write!(f, "{v}")?,
        Expr::Var(i) => write!(f, "k{i}")?,
        Expr::Abs(x) => {
            write!(f, "abs(")?;
            fmt_node(x, f, 0)?;
            write!(f, ")")?;
        }
        Expr::Neg(x) => {
            write!(f, "-")?;
            fmt_node(x, f, 3)?;
        }
        Expr::Add(a, b) => {
            fmt_node(a, f, 1)?;
            write!(f, " + ")?;
            fmt_node(b, f, 2)?;
        }
        Expr::Sub(a, b) => {
            fmt_node(a, f, 1)?;
            write!(f, " - ")?;
            fmt_node(b, f, 2)?;
        }
        Expr::Mul(a, b) => {
            fmt_node(a, f, 2)?;
            write!(f, "*")?;
            fmt_node(b, f, 3)?;
        }
        Expr::Pow(x, e) => {
            fmt_node(x, f, 5)?;
            write!(f, "^{e}")?;
        }
    }
    if parens {
        write!(f, ")")?;
    }
    Ok(())
}

impl fmt::Display for WeightExpr {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt_node(&self.root, f, 0)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn pt(vals: &[i64]) -> Vec<BigInt> {
        vals.iter().map(|&v| BigInt::from(v)).collect()
    }

    fn b(e: Expr) -> Box<Expr> {
        Box::new(e)
    }

    #[test]
    fn parse_difference_of_squares() {
        let w = WeightExpr::parse("abs(k1^2-k2^2)", 2).unwrap();
        let expected = Expr::Abs(b(Expr::Sub(
            b(Expr::Pow(b(Expr::Var(1)), 2)),
            b(Expr::Pow(b(Expr::Var(2)), 2)),
        )));
        assert_eq!(w.root(), &expected);
    }

    #[test]
    fn parse_alias_weight() {
        // i, j alias k1, k2
        let w = WeightExpr::parse("abs(i*j*(i^2-j^2))", 2).unwrap();
        let expected = Expr::Abs(b(Expr::Mul(
            b(Expr::Mul(b(Expr::Var(1)), b(Expr::Var(2)))),
            b(Expr::Sub(
                b(Expr::Pow(b(Expr::Var(1)), 2)),
                b(Expr::Pow(b(Expr::Var(2)), 2)),
            )),
        )));
        assert_eq!(w.root(), &expected);
    }

    #[test]
    fn unbalanced_parenthesis() {
        let err = WeightExpr::parse("abs(k3", 3).unwrap_err();
        assert!(err.to_string().contains("unbalanced parenthesis"), "{err}");
    }

    #[test]
    fn variable_errors() {
        assert!(matches!(
            WeightExpr::parse("x", 2).unwrap_err(),
            WeightError::UnknownVariable { .. }
        ));
        assert!(matches!(
            WeightExpr::parse("k3", 2).unwrap_err(),
            WeightError::IndexOutOfRange {
                index: 3,
                arity: 2,
                ..
            }
        ));
        assert!(matches!(
            WeightExpr::parse("k0", 2).unwrap_err(),
            WeightError::IndexOutOfRange { index: 0, .. }
        ));
        assert!(matches!(
            WeightExpr::parse("k1^k2", 2).unwrap_err(),
            WeightError::NonLiteralExponent { .. }
        ));
        assert!(matches!(
            WeightExpr::parse("k1 k2", 2).unwrap_err(),
            WeightError::Syntax { .. }
        ));
    }

    #[test]
    fn unary_minus_binds_looser_than_pow() {
        // -k1^2 at k1 = 3 must be -9, not 9
        let w = WeightExpr::parse("-k1^2", 1).unwrap();
        assert_eq!(w.eval(&pt(&[3])).unwrap(), BigInt::from(-9));
        // but (-k1)^2 is 9
        let w = WeightExpr::parse("(-k1)^2", 1).unwrap();
        assert_eq!(w.eval(&pt(&[3])).unwrap(), BigInt::from(9));
    }

    #[test]
    fn eval_examples() {
        let w = WeightExpr::parse("abs(k1^2-k2^2)", 2).unwrap();
        assert_eq!(w.eval(&pt(&[1, 0])).unwrap(), BigInt::from(1));

        // 0^0 = 1
        let w = WeightExpr::parse("abs(k1-k2)^0", 2).unwrap();
        assert_eq!(w.eval(&pt(&[3, 3])).unwrap(), BigInt::from(1));

        let w = WeightExpr::parse("abs(k1*k2*(k1^2-k2^2))", 2).unwrap();
        assert_eq!(w.eval(&pt(&[2, 1])).unwrap(), BigInt::from(6));
    }

    #[test]
    fn eval_arity_mismatch() {
        let w = WeightExpr::parse("abs(k1)", 1).unwrap();
        assert!(matches!(
            w.eval(&pt(&[1, 2])).unwrap_err(),
            WeightError::ArityMismatch {
                expected: 1,
                got: 2
            }
        ));
    }

    // Independent evaluator used as the test oracle: same semantics,
    // written against i128 instead of the library's big-integer path.
    fn direct_eval(e: &Expr, point: &[i128]) -> i128 {
        match e {
            Expr::Int(v) => i128::try_from(v).unwrap(),
            Expr::Var(i) => point[*i - 1],
            Expr::Neg(x) => -direct_eval(x, point),
            Expr::Add(a, b) => direct_eval(a, point) + direct_eval(b, point),
            Expr::Sub(a, b) => direct_eval(a, point) - direct_eval(b, point),
            Expr::Mul(a, b) => direct_eval(a, point) * direct_eval(b, point),
            Expr::Pow(x, e) => {
                let base = direct_eval(x, point);
                (0..*e).fold(1i128, |acc, _| acc * base)
            }
            Expr::Abs(x) => direct_eval(x, point).abs(),
        }
    }

    fn arb_expr(depth: u32) -> BoxedStrategy<Expr> {
        let leaf = prop_oneof![
            (0i64..6).prop_map(|v| Expr::Int(BigInt::from(v))),
            (1usize..=3).prop_map(Expr::Var),
        ];
        leaf.prop_recursive(depth, 24, 2, |inner| {
            prop_oneof![
                (inner.clone(), inner.clone())
                    .prop_map(|(a, b)| Expr::Add(Box::new(a), Box::new(b))),
                (inner.clone(), inner.clone())
                    .prop_map(|(a, b)| Expr::Sub(Box::new(a), Box::new(b))),
                (inner.clone(), inner.clone())
                    .prop_map(|(a, b)| Expr::Mul(Box::new(a), Box::new(b))),
                inner.clone().prop_map(|x| Expr::Neg(Box::new(x))),
                inner.clone().prop_map(|x| Expr::Abs(Box::new(x))),
                (inner, 0u32..4).prop_map(|(x, e)| Expr::Pow(Box::new(x), e)),
            ]
        })
        .boxed()
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(64))]

        // print -> parse reproduces the AST node for node
        #[test]
        fn print_parse_round_trip(root in arb_expr(4)) {
            let w = WeightExpr::from_root(3, root).unwrap();
            let printed = w.to_string();
            let reparsed = WeightExpr::parse(&printed, 3).unwrap();
            prop_assert_eq!(reparsed.root(), w.root(), "printed: {}", printed);
        }

        // eval agrees with an AST-built oracle that bypasses the parser
        #[test]
        fn eval_matches_direct_oracle(root in arb_expr(3), p in proptest::array::uniform3(-4i64..=4)) {
            let w = WeightExpr::from_root(3, root).unwrap();
            let point: Vec<BigInt> = p.iter().map(|&v| BigInt::from(v)).collect();
            let direct: Vec<i128> = p.iter().map(|&v| v as i128).collect();
            let got = w.eval(&point).unwrap();
            let want = direct_eval(w.root(), &direct);
            prop_assert_eq!(got, BigInt::from(want));
        }

        // an outermost abs is never negative
        #[test]
        fn abs_wrapped_is_non_negative(root in arb_expr(3), p in proptest::array::uniform3(-5i64..=5)) {
            use num_traits::Signed as _;
            let w = WeightExpr::from_root(3, Expr::Abs(Box::new(root))).unwrap();
            let point: Vec<BigInt> = p.iter().map(|&v| BigInt::from(v)).collect();
            prop_assert!(!w.eval(&point).unwrap().is_negative());
        }
    }
}
