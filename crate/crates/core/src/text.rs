//! Concrete syntax for both term languages.
//!
//! ```text
//! term ::= atom | "L" term | "neg" term | term "." term | "(" term ")"
//! atom ::= "1[" nat "]" | "phi[" nat "]" | "gam[" nat "]" | "nr[" nat "]" | "nl[" nat "]"
//! ```
//!
//! Composition is right-associative and the prefix operators bind tighter
//! than `.`; `f . g` is `f ∘ g`.

use std::fmt;

use serde::Serialize;

use crate::error::ParseError;
use crate::term::{type_of, Sig, Term};

/// Largest object index accepted by the parser. Keeps every derived object
/// (`L`, `¬`, `+2` in generator types) far away from `u32` overflow.
pub const MAX_INDEX: u32 = 1 << 20;

/// Half-open byte range `start..end` into the parsed input.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
pub struct SourceSpan {
    pub start: usize,
    pub end: usize,
}

impl SourceSpan {
    pub fn new(start: usize, end: usize) -> Self {
        debug_assert!(start <= end);
        SourceSpan { start, end }
    }

    fn join(self, other: SourceSpan) -> SourceSpan {
        SourceSpan::new(self.start.min(other.start), self.end.max(other.end))
    }
}

impl fmt::Display for SourceSpan {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}..{}", self.start, self.end)
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
enum Tok {
    Word(String),
    Num(String),
    LBrack,
    RBrack,
    LParen,
    RParen,
    Dot,
    End,
}

impl fmt::Display for Tok {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Tok::Word(w) | Tok::Num(w) => write!(f, "`{w}`"),
            Tok::LBrack => f.write_str("`[`"),
            Tok::RBrack => f.write_str("`]`"),
            Tok::LParen => f.write_str("`(`"),
            Tok::RParen => f.write_str("`)`"),
            Tok::Dot => f.write_str("`.`"),
            Tok::End => f.write_str("end of input"),
        }
    }
}

fn tokenize(text: &str) -> Result<Vec<(Tok, SourceSpan)>, ParseError> {
    let bytes = text.as_bytes();
    let mut out = Vec::new();
    let mut i = 0;
    while i < bytes.len() {
        let c = bytes[i];
        let start = i;
        let tok = match c {
            b' ' | b'\t' | b'\r' | b'\n' => {
                i += 1;
                continue;
            }
            b'[' => Tok::LBrack,
            b']' => Tok::RBrack,
            b'(' => Tok::LParen,
            b')' => Tok::RParen,
            b'.' => Tok::Dot,
            b'0'..=b'9' => {
                while i < bytes.len() && bytes[i].is_ascii_digit() {
                    i += 1;
                }
                out.push((
                    Tok::Num(text[start..i].to_string()),
                    SourceSpan::new(start, i),
                ));
                continue;
            }
            c if c.is_ascii_alphabetic() || c == b'_' => {
                while i < bytes.len() && (bytes[i].is_ascii_alphanumeric() || bytes[i] == b'_') {
                    i += 1;
                }
                out.push((
                    Tok::Word(text[start..i].to_string()),
                    SourceSpan::new(start, i),
                ));
                continue;
            }
            _ => {
                let len = text[start..].chars().next().map_or(1, char::len_utf8);
                return Err(ParseError::Syntax {
                    span: SourceSpan::new(start, start + len),
                    message: format!("unexpected character {:?}", &text[start..start + len]),
                });
            }
        };
        i += 1;
        out.push((tok, SourceSpan::new(start, i)));
    }
    out.push((Tok::End, SourceSpan::new(text.len(), text.len())));
    Ok(out)
}

/// Spans of a parsed term, shaped like the term itself.
#[derive(Clone, Debug)]
pub struct SpanTree {
    pub span: SourceSpan,
    pub children: Vec<SpanTree>,
}

impl SpanTree {
    /// Span of the subterm at `path`, or of the deepest existing ancestor.
    pub fn lookup(&self, path: &[u8]) -> SourceSpan {
        let mut node = self;
        for &i in path {
            match node.children.get(i as usize) {
                Some(c) => node = c,
                None => break,
            }
        }
        node.span
    }
}

struct Parser<'a> {
    toks: Vec<(Tok, SourceSpan)>,
    pos: usize,
    sig: Sig,
    _text: &'a str,
}

impl Parser<'_> {
    fn peek(&self) -> &(Tok, SourceSpan) {
        &self.toks[self.pos]
    }

    fn bump(&mut self) -> (Tok, SourceSpan) {
        let t = self.toks[self.pos].clone();
        if self.pos + 1 < self.toks.len() {
            self.pos += 1;
        }
        t
    }

    fn expect(&mut self, want: Tok, what: &str) -> Result<SourceSpan, ParseError> {
        let (tok, span) = self.bump();
        if tok == want {
            Ok(span)
        } else {
            Err(ParseError::Syntax {
                span,
                message: format!("expected {what}, found {tok}"),
            })
        }
    }

    fn term(&mut self) -> Result<(Term, SpanTree), ParseError> {
        let (f, sf) = self.unary()?;
        if self.peek().0 == Tok::Dot {
            self.bump();
            let (g, sg) = self.term()?;
            let span = sf.span.join(sg.span);
            return Ok((
                Term::comp(f, g),
                SpanTree {
                    span,
                    children: vec![sf, sg],
                },
            ));
        }
        Ok((f, sf))
    }

    fn check_sig(&self, word: &str, span: SourceSpan) -> Result<(), ParseError> {
        let owner = match word {
            "L" | "phi" | "gam" => Sig::SelfAdj,
            "neg" | "nr" | "nl" => Sig::Involutive,
            _ => return Ok(()),
        };
        if owner != self.sig {
            return Err(ParseError::SignatureViolation {
                span,
                token: word.to_string(),
                sig: self.sig,
            });
        }
        Ok(())
    }

    fn unary(&mut self) -> Result<(Term, SpanTree), ParseError> {
        let (tok, span) = self.peek().clone();
        match tok {
            Tok::Word(w) if w == "L" || w == "neg" => {
                self.check_sig(&w, span)?;
                self.bump();
                let (f, sf) = self.unary()?;
                let whole = span.join(sf.span);
                let t = if w == "L" { Term::ell(f) } else { Term::neg(f) };
                Ok((
                    t,
                    SpanTree {
                        span: whole,
                        children: vec![sf],
                    },
                ))
            }
            Tok::LParen => {
                self.bump();
                let (t, mut st) = self.term()?;
                let close = self.expect(Tok::RParen, "`)`")?;
                st.span = span.join(close);
                Ok((t, st))
            }
            Tok::Word(_) | Tok::Num(_) => self.atom(),
            other => Err(ParseError::Syntax {
                span,
                message: format!("expected a term, found {other}"),
            }),
        }
    }

    fn atom(&mut self) -> Result<(Term, SpanTree), ParseError> {
        let (tok, head_span) = self.bump();
        let head = match &tok {
            Tok::Word(w) => {
                self.check_sig(w, head_span)?;
                match w.as_str() {
                    "phi" | "gam" | "nr" | "nl" => w.clone(),
                    _ => {
                        return Err(ParseError::Syntax {
                            span: head_span,
                            message: format!("unknown constructor {tok}"),
                        })
                    }
                }
            }
            Tok::Num(n) if n == "1" => "1".to_string(),
            _ => {
                return Err(ParseError::Syntax {
                    span: head_span,
                    message: format!("expected a generator, found {tok}"),
                })
            }
        };
        self.expect(Tok::LBrack, "`[`")?;
        let (tok, nspan) = self.bump();
        let n = match tok {
            Tok::Num(digits) => match digits.parse::<u32>() {
                Ok(n) if n <= MAX_INDEX => n,
                _ => {
                    return Err(ParseError::Syntax {
                        span: nspan,
                        message: format!("object index {digits} exceeds {MAX_INDEX}"),
                    })
                }
            },
            other => {
                return Err(ParseError::Syntax {
                    span: nspan,
                    message: format!("expected an object index, found {other}"),
                })
            }
        };
        let close = self.expect(Tok::RBrack, "`]`")?;
        let t = match head.as_str() {
            "1" => Term::id(n),
            "phi" => Term::phi(n),
            "gam" => Term::gamma(n),
            "nr" => Term::nr(n),
            _ => Term::nl(n),
        };
        Ok((
            t,
            SpanTree {
                span: head_span.join(close),
                children: Vec::new(),
            },
        ))
    }
}

/// Parses a term without typechecking it, returning its span tree.
pub fn parse_untyped(sig: Sig, text: &str) -> Result<(Term, SpanTree), ParseError> {
    let mut p = Parser {
        toks: tokenize(text)?,
        pos: 0,
        sig,
        _text: text,
    };
    let out = p.term()?;
    let (tok, span) = p.peek().clone();
    if tok != Tok::End {
        return Err(ParseError::Syntax {
            span,
            message: format!("unexpected {tok} after term"),
        });
    }
    Ok(out)
}

/// Parses and typechecks a term.
pub fn parse(sig: Sig, text: &str) -> Result<Term, ParseError> {
    parse_with_spans(sig, text).map(|(t, _)| t)
}

pub fn parse_with_spans(sig: Sig, text: &str) -> Result<(Term, SpanTree), ParseError> {
    let (t, spans) = parse_untyped(sig, text)?;
    if let Err(e) = type_of(sig, &t) {
        return Err(ParseError::Type {
            span: spans.lookup(e.path()),
            source: e,
        });
    }
    Ok((t, spans))
}

/// Prints a term in canonical form: single spaces, minimal parentheses.
pub fn print(t: &Term) -> String {
    let mut out = String::new();
    write_term(t, &mut out);
    out
}

fn write_term(t: &Term, out: &mut String) {
    match t {
        Term::Id(a) => out.push_str(&format!("1[{a}]")),
        Term::Phi(a) => out.push_str(&format!("phi[{a}]")),
        Term::Gamma(a) => out.push_str(&format!("gam[{a}]")),
        Term::Nr(a) => out.push_str(&format!("nr[{a}]")),
        Term::Nl(a) => out.push_str(&format!("nl[{a}]")),
        Term::Comp(f, g) => {
            write_operand(f, out);
            out.push_str(" . ");
            write_term(g, out);
        }
        Term::Ell(f) => {
            out.push_str("L ");
            write_operand(f, out);
        }
        Term::Neg(f) => {
            out.push_str("neg ");
            write_operand(f, out);
        }
    }
}

fn write_operand(t: &Term, out: &mut String) {
    if matches!(t, Term::Comp(..)) {
        out.push('(');
        write_term(t, out);
        out.push(')');
    } else {
        write_term(t, out);
    }
}

impl fmt::Display for Term {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&print(self))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::error::TypeError;

    #[test]
    fn parse_examples() {
        assert_eq!(
            parse(Sig::SelfAdj, "phi[0] . gam[0]").unwrap(),
            Term::comp(Term::phi(0), Term::gamma(0))
        );
        assert_eq!(
            parse(Sig::Involutive, "neg nr[1]").unwrap(),
            Term::neg(Term::nr(1))
        );
        assert!(matches!(
            parse(Sig::SelfAdj, "nr[0]"),
            Err(ParseError::SignatureViolation { span, .. }) if span == SourceSpan::new(0, 2)
        ));
    }

    #[test]
    fn print_examples() {
        let t = Term::comp(Term::phi(1), Term::ell(Term::gamma(0)));
        assert_eq!(print(&t), "phi[1] . L gam[0]");
        let t = Term::ell(Term::comp(Term::phi(0), Term::gamma(0)));
        assert_eq!(print(&t), "L (phi[0] . gam[0])");
        assert_eq!(print(&Term::neg(Term::neg(Term::id(2)))), "neg neg 1[2]");
    }

    #[test]
    fn composition_is_right_associative() {
        let t = parse(Sig::SelfAdj, "phi[0] . phi[2] . gam[2]").unwrap();
        assert_eq!(
            t,
            Term::comp(Term::phi(0), Term::comp(Term::phi(2), Term::gamma(2)))
        );
        let left = parse(Sig::SelfAdj, "(phi[0] . phi[2]) . gam[2]").unwrap();
        assert_eq!(print(&left), "(phi[0] . phi[2]) . gam[2]");
    }

    #[test]
    fn unary_binds_tighter_than_dot() {
        let t = parse(Sig::SelfAdj, "L phi[0] . gam[1]").unwrap();
        assert_eq!(t, Term::comp(Term::ell(Term::phi(0)), Term::gamma(1)));
    }

    #[test]
    fn whitespace_is_insignificant() {
        let t = parse(Sig::SelfAdj, "  phi [ 1 ]. L\tgam[0] ").unwrap();
        assert_eq!(print(&t), "phi[1] . L gam[0]");
    }

    #[test]
    fn type_error_carries_subterm_span() {
        let text = "L (phi[0] . phi[0])";
        match parse(Sig::SelfAdj, text) {
            Err(ParseError::Type { span, source }) => {
                assert!(matches!(source, TypeError::CompositionMismatch { .. }));
                assert_eq!(&text[span.start..span.end], "(phi[0] . phi[0])");
            }
            other => panic!("unexpected {other:?}"),
        }
    }

    #[test]
    fn syntax_errors_have_spans_inside_input() {
        for text in [
            "",
            "phi",
            "phi[",
            "phi[x]",
            "phi[0",
            "(phi[0]",
            "phi[0] .",
            "foo[1]",
            "2[0]",
            "phi[0] gam[0]",
            "L",
            "phi[0] ∘ gam[0]",
            "phi[99999999999]",
            ")",
        ] {
            let err = parse(Sig::SelfAdj, text).unwrap_err();
            let span = err.span();
            assert!(
                span.start <= span.end && span.end <= text.len(),
                "{text:?}: {err}"
            );
        }
    }

    #[test]
    fn neg_in_self_is_rejected() {
        assert!(matches!(
            parse(Sig::SelfAdj, "neg 1[0]"),
            Err(ParseError::SignatureViolation { .. })
        ));
        assert!(matches!(
            parse(Sig::Involutive, "nl[0] . L 1[0]"),
            Err(ParseError::SignatureViolation { span, .. }) if span == SourceSpan::new(8, 9)
        ));
    }
}
