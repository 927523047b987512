//! Lexer for definition text. Accepts the Unicode notation and the ASCII
//! aliases (`<` `>` for the brackets, `|` for the separator, `->` for `↦`,
//! `<=` `>=` `in` for relations, `R>=0`-style ranges, `forall`, `sum`,
//! `inf`, `...`, `*`, `(+1)` for `⊕1`).

use super::ast::{Name, RelOp, SourceSpan};
use crate::rat::Rat;
use std::fmt;

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Tok {
    LAngle,
    RAngle,
    Bar,
    Semi,
    Colon,
    Comma,
    LParen,
    RParen,
    LBrace,
    RBrace,
    MapsTo,
    Plus,
    Minus,
    Cdot,
    Slash,
    Star,
    Caret,
    Underscore,
    Ellipsis,
    Infty,
    ForallKw,
    SumKw,
    Or,
    Rel(RelOp),
    /// ⊕ with an attached number ("⊕1" or the "(+1)" alias).
    ExtTag(u32),
    /// Bare ⊕ without a number.
    ExtBare,
    /// Tight |ident_sub| cardinality, e.g. |V_S|.
    CardIdent(Name),
    Num(Rat),
    Ident(Name),
}

impl fmt::Display for Tok {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Tok::LAngle => write!(f, "⟨"),
            Tok::RAngle => write!(f, "⟩"),
            Tok::Bar => write!(f, "∣"),
            Tok::Semi => write!(f, ";"),
            Tok::Colon => write!(f, ":"),
            Tok::Comma => write!(f, ","),
            Tok::LParen => write!(f, "("),
            Tok::RParen => write!(f, ")"),
            Tok::LBrace => write!(f, "{{"),
            Tok::RBrace => write!(f, "}}"),
            Tok::MapsTo => write!(f, "↦"),
            Tok::Plus => write!(f, "+"),
            Tok::Minus => write!(f, "−"),
            Tok::Cdot => write!(f, "·"),
            Tok::Slash => write!(f, "/"),
            Tok::Star => write!(f, "*"),
            Tok::Caret => write!(f, "^"),
            Tok::Underscore => write!(f, "_"),
            Tok::Ellipsis => write!(f, "…"),
            Tok::Infty => write!(f, "∞"),
            Tok::ForallKw => write!(f, "∀"),
            Tok::SumKw => write!(f, "Σ"),
            Tok::Or => write!(f, "or"),
            Tok::Rel(op) => write!(f, "{}", op.symbol()),
            Tok::ExtTag(n) => write!(f, "⊕{n}"),
            Tok::ExtBare => write!(f, "⊕"),
            Tok::CardIdent(n) => write!(f, "|{}|", render_name(n)),
            Tok::Num(r) => write!(f, "{}", crate::rat::fmt_rat(r)),
            Tok::Ident(n) => write!(f, "{}", render_name(n)),
        }
    }
}

pub(crate) fn render_name(n: &Name) -> String {
    let mut s = n.base.clone();
    if n.bar {
        // Combining macron after the first character.
        let mut chars = s.chars();
        if let Some(first) = chars.next() {
            s = format!("{first}\u{304}{}", chars.as_str());
        }
    }
    if let Some(sub) = &n.sub {
        s.push('_');
        s.push_str(sub);
    }
    s
}

#[derive(Clone, Debug)]
pub struct Token {
    pub tok: Tok,
    pub span: SourceSpan,
}

#[derive(Clone, Debug, thiserror::Error, PartialEq, Eq)]
#[error("line {}, col {}: {msg}", span.line, span.col)]
pub struct SyntaxError {
    pub msg: String,
    pub span: SourceSpan,
}

impl SyntaxError {
    pub fn new(msg: impl Into<String>, span: SourceSpan) -> SyntaxError {
        SyntaxError {
            msg: msg.into(),
            span,
        }
    }
}

struct Lexer<'a> {
    text: &'a str,
    chars: Vec<(usize, char)>,
    pos: usize,
    line_starts: Vec<usize>,
    out: Vec<Token>,
    seen_any: bool,
}

pub fn lex(text: &str) -> Result<Vec<Token>, SyntaxError> {
    let mut line_starts = vec![0];
    for (i, b) in text.bytes().enumerate() {
        if b == b'\n' {
            line_starts.push(i + 1);
        }
    }
    let mut lx = Lexer {
        text,
        chars: text.char_indices().collect(),
        pos: 0,
        line_starts,
        out: Vec::new(),
        seen_any: false,
    };
    lx.run()?;
    Ok(lx.out)
}

impl<'a> Lexer<'a> {
    fn peek(&self) -> Option<char> {
        self.chars.get(self.pos).map(|&(_, c)| c)
    }

    fn peek_at(&self, off: usize) -> Option<char> {
        self.chars.get(self.pos + off).map(|&(_, c)| c)
    }

    fn byte_at(&self, idx: usize) -> usize {
        self.chars
            .get(idx)
            .map(|&(b, _)| b)
            .unwrap_or(self.text.len())
    }

    fn span_from(&self, start_idx: usize) -> SourceSpan {
        let begin = self.byte_at(start_idx);
        let end = self.byte_at(self.pos);
        let line = match self.line_starts.binary_search(&begin) {
            Ok(l) => l,
            Err(l) => l - 1,
        };
        SourceSpan {
            begin,
            end,
            line: (line + 1) as u32,
            col: (begin - self.line_starts[line] + 1) as u32,
        }
    }

    fn push(&mut self, tok: Tok, start_idx: usize) {
        let span = self.span_from(start_idx);
        self.out.push(Token { tok, span });
        self.seen_any = true;
    }

    fn run(&mut self) -> Result<(), SyntaxError> {
        while let Some(c) = self.peek() {
            let start = self.pos;
            match c {
                c if c.is_whitespace() => {
                    self.pos += 1;
                }
                '#' => {
                    while let Some(c) = self.peek() {
                        self.pos += 1;
                        if c == '\n' {
                            break;
                        }
                    }
                }
                '⟨' => {
                    self.pos += 1;
                    self.push(Tok::LAngle, start);
                }
                '⟩' => {
                    self.pos += 1;
                    self.push(Tok::RAngle, start);
                }
                '<' => {
                    self.pos += 1;
                    if self.peek() == Some('=') {
                        self.pos += 1;
                        self.push(Tok::Rel(RelOp::Le), start);
                    } else if !self.seen_any {
                        self.push(Tok::LAngle, start);
                    } else {
                        self.push(Tok::Rel(RelOp::Lt), start);
                    }
                }
                '>' => {
                    self.pos += 1;
                    if self.peek() == Some('=') {
                        self.pos += 1;
                        self.push(Tok::Rel(RelOp::Ge), start);
                    } else if self.closes_definition() {
                        self.push(Tok::RAngle, start);
                    } else {
                        self.push(Tok::Rel(RelOp::Gt), start);
                    }
                }
                '∣' | '|' => {
                    if let Some(name) = self.try_card_ident() {
                        self.push(Tok::CardIdent(name), start);
                    } else {
                        self.pos += 1;
                        self.push(Tok::Bar, start);
                    }
                }
                ';' => {
                    self.pos += 1;
                    self.push(Tok::Semi, start);
                }
                ':' => {
                    self.pos += 1;
                    self.push(Tok::Colon, start);
                }
                ',' => {
                    self.pos += 1;
                    self.push(Tok::Comma, start);
                }
                '(' => {
                    if let Some(n) = self.try_ascii_ext() {
                        self.push(Tok::ExtTag(n), start);
                    } else {
                        self.pos += 1;
                        self.push(Tok::LParen, start);
                    }
                }
                ')' => {
                    self.pos += 1;
                    self.push(Tok::RParen, start);
                }
                '{' => {
                    self.pos += 1;
                    self.push(Tok::LBrace, start);
                }
                '}' => {
                    self.pos += 1;
                    self.push(Tok::RBrace, start);
                }
                '↦' => {
                    self.pos += 1;
                    self.push(Tok::MapsTo, start);
                }
                '+' => {
                    self.pos += 1;
                    self.push(Tok::Plus, start);
                }
                '−' => {
                    self.pos += 1;
                    self.push(Tok::Minus, start);
                }
                '-' => {
                    self.pos += 1;
                    if self.peek() == Some('>') {
                        self.pos += 1;
                        self.push(Tok::MapsTo, start);
                    } else {
                        self.push(Tok::Minus, start);
                    }
                }
                '·' => {
                    self.pos += 1;
                    self.push(Tok::Cdot, start);
                }
                '*' => {
                    self.pos += 1;
                    self.push(Tok::Star, start);
                }
                '/' => {
                    self.pos += 1;
                    self.push(Tok::Slash, start);
                }
                '^' => {
                    self.pos += 1;
                    self.push(Tok::Caret, start);
                }
                '_' => {
                    self.pos += 1;
                    self.push(Tok::Underscore, start);
                }
                '…' => {
                    self.pos += 1;
                    self.push(Tok::Ellipsis, start);
                }
                '.' => {
                    if self.peek_at(1) == Some('.') && self.peek_at(2) == Some('.') {
                        self.pos += 3;
                        self.push(Tok::Ellipsis, start);
                    } else {
                        return Err(SyntaxError::new(
                            "unexpected '.'",
                            self.span_char(start),
                        ));
                    }
                }
                '∞' => {
                    self.pos += 1;
                    self.push(Tok::Infty, start);
                }
                '∀' => {
                    self.pos += 1;
                    self.push(Tok::ForallKw, start);
                }
                'Σ' | '∑' => {
                    self.pos += 1;
                    self.push(Tok::SumKw, start);
                }
                '⊕' => {
                    self.pos += 1;
                    let mut digits = String::new();
                    while let Some(d) = self.peek().filter(char::is_ascii_digit) {
                        digits.push(d);
                        self.pos += 1;
                    }
                    if digits.is_empty() {
                        self.push(Tok::ExtBare, start);
                    } else {
                        self.push(Tok::ExtTag(digits.parse().unwrap()), start);
                    }
                }
                '=' => {
                    self.pos += 1;
                    self.push(Tok::Rel(RelOp::Eq), start);
                }
                '≤' => {
                    self.pos += 1;
                    self.push(Tok::Rel(RelOp::Le), start);
                }
                '≥' => {
                    self.pos += 1;
                    self.push(Tok::Rel(RelOp::Ge), start);
                }
                '∈' => {
                    self.pos += 1;
                    self.push(Tok::Rel(RelOp::In), start);
                }
                c if c.is_ascii_digit() => {
                    let mut s = String::new();
                    while let Some(d) = self.peek().filter(char::is_ascii_digit) {
                        s.push(d);
                        self.pos += 1;
                    }
                    let r: Rat = s.parse::<i64>().map(crate::rat::rat).map_err(|_| {
                        SyntaxError::new("number too large", self.span_from(start))
                    })?;
                    self.push(Tok::Num(r), start);
                }
                c if is_ident_start(c) => {
                    let name = self.lex_ident();
                    let tok = match name.base.as_str() {
                        "in" if name.sub.is_none() && !name.bar => Tok::Rel(RelOp::In),
                        "or" if name.sub.is_none() && !name.bar => Tok::Or,
                        "forall" if name.sub.is_none() && !name.bar => Tok::ForallKw,
                        "inf" if name.sub.is_none() && !name.bar => Tok::Infty,
                        "sum" if name.sub.is_none() && !name.bar => Tok::SumKw,
                        _ => Tok::Ident(name),
                    };
                    self.push(tok, start);
                }
                other => {
                    return Err(SyntaxError::new(
                        format!("unexpected character '{other}'"),
                        self.span_char(start),
                    ));
                }
            }
        }
        Ok(())
    }

    fn span_char(&self, start_idx: usize) -> SourceSpan {
        let mut s = self.span_from(start_idx);
        s.end = self.byte_at(start_idx + 1);
        s
    }

    /// A '>' closes the definition when only an extension marker, comments,
    /// or annotation lines can follow.
    fn closes_definition(&self) -> bool {
        let mut i = self.pos;
        while let Some(&(_, c)) = self.chars.get(i) {
            if c.is_whitespace() {
                i += 1;
            } else {
                return matches!(c, '^' | '⊕' | '#')
                    || (c == '(' && self.chars.get(i + 1).map(|&(_, c)| c) == Some('+'));
            }
        }
        true
    }

    /// "(+1)" as an ASCII extension tag.
    fn try_ascii_ext(&mut self) -> Option<u32> {
        let mut i = self.pos + 1;
        if self.chars.get(i).map(|&(_, c)| c) != Some('+') {
            return None;
        }
        i += 1;
        let mut digits = String::new();
        while let Some(&(_, c)) = self.chars.get(i) {
            if c.is_ascii_digit() {
                digits.push(c);
                i += 1;
            } else {
                break;
            }
        }
        if digits.is_empty() || self.chars.get(i).map(|&(_, c)| c) != Some(')') {
            return None;
        }
        self.pos = i + 1;
        Some(digits.parse().unwrap())
    }

    /// Tight cardinality bars: |V_S| with a subscript, or a single-letter
    /// |T|. Longer bare words between bars stay field separators.
    fn try_card_ident(&mut self) -> Option<Name> {
        let mut i = self.pos + 1;
        let mut base = String::new();
        while let Some(&(_, c)) = self.chars.get(i) {
            if is_ident_continue(c) {
                base.push(c);
                i += 1;
            } else {
                break;
            }
        }
        if base.is_empty() {
            return None;
        }
        let next = self.chars.get(i).map(|&(_, c)| c);
        if next == Some('|') || next == Some('∣') {
            if base.chars().count() == 1 {
                self.pos = i + 1;
                return Some(Name {
                    base,
                    sub: None,
                    bar: false,
                });
            }
            return None;
        }
        if next != Some('_') {
            return None;
        }
        i += 1;
        let mut sub = String::new();
        while let Some(&(_, c)) = self.chars.get(i) {
            if is_ident_continue(c) {
                sub.push(c);
                i += 1;
            } else {
                break;
            }
        }
        let next = self.chars.get(i).map(|&(_, c)| c);
        if sub.is_empty() || (next != Some('|') && next != Some('∣')) {
            return None;
        }
        self.pos = i + 1;
        Some(Name {
            base,
            sub: Some(sub),
            bar: false,
        })
    }

    fn lex_ident(&mut self) -> Name {
        let mut base = String::new();
        let mut bar = false;
        while let Some(c) = self.peek() {
            if c == '\u{304}' || c == '\u{305}' {
                bar = true;
                self.pos += 1;
            } else if is_ident_continue(c) {
                base.push(c);
                self.pos += 1;
            } else {
                break;
            }
        }
        if self.peek() == Some('~') {
            bar = true;
            self.pos += 1;
        }
        // Hyphen compounds: k-partition, α-triangle and friends stay one name.
        if self.peek() == Some('-') {
            let mut i = self.pos + 1;
            let mut tail = String::new();
            while let Some(&(_, c)) = self.chars.get(i) {
                if is_ident_continue(c) {
                    tail.push(c);
                    i += 1;
                } else {
                    break;
                }
            }
            if tail == "partition" || tail == "triangle" {
                base.push('-');
                base.push_str(&tail);
                self.pos = i;
            }
        }
        // Simple subscript: letters and digits right after '_'.
        let mut sub = None;
        if self.peek() == Some('_') && self.peek_at(1).is_some_and(is_ident_continue) {
            self.pos += 1;
            let mut s = String::new();
            while let Some(c) = self.peek() {
                if is_ident_continue(c) {
                    s.push(c);
                    self.pos += 1;
                } else {
                    break;
                }
            }
            sub = Some(s);
        }
        Name { base, sub, bar }
    }
}

fn is_ident_start(c: char) -> bool {
    c.is_alphabetic()
}

fn is_ident_continue(c: char) -> bool {
    c.is_alphanumeric()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn kinds(text: &str) -> Vec<Tok> {
        lex(text).unwrap().into_iter().map(|t| t.tok).collect()
    }

    #[test]
    fn ascii_aliases_match_unicode() {
        assert_eq!(kinds("< =1 | =1 >"), kinds("⟨ =1 ∣ =1 ⟩"));
        assert_eq!(kinds("forall i in {0,...,k}"), kinds("∀ i ∈ {0,…,k}"));
        let ascii = kinds("c: E -> R>=0");
        assert!(ascii.contains(&Tok::MapsTo));
        assert!(ascii.contains(&Tok::Rel(RelOp::Ge)));
    }

    #[test]
    fn angle_heuristics() {
        let toks = kinds("⟨ =1 ∣ d: V -> Z>0 ⟩");
        assert!(toks.contains(&Tok::Rel(RelOp::Gt)));
        assert_eq!(toks.first(), Some(&Tok::LAngle));
        assert_eq!(toks.last(), Some(&Tok::RAngle));
        let toks = kinds("< =1 | d: V -> Z>0 >");
        assert_eq!(toks.first(), Some(&Tok::LAngle));
        assert_eq!(toks.last(), Some(&Tok::RAngle));
    }

    #[test]
    fn cardinality_bars_need_subscript() {
        let toks = kinds("max |V_S|");
        assert!(toks
            .iter()
            .any(|t| matches!(t, Tok::CardIdent(n) if n.base == "V")));
        let toks = kinds("<=1|always|circuit>");
        assert_eq!(toks.iter().filter(|t| **t == Tok::Bar).count(), 2);
    }

    #[test]
    fn hyphen_compound_only_for_known_tails() {
        let toks = kinds("k-partition");
        assert_eq!(toks.len(), 1);
        assert!(matches!(&toks[0], Tok::Ident(n) if n.base == "k-partition"));
        let toks = kinds("n-O(log n)");
        assert!(toks.contains(&Tok::Minus));
    }

    #[test]
    fn subscripts_and_bars() {
        let toks = kinds("p̄(S_V)");
        assert!(matches!(&toks[0], Tok::Ident(n) if n.base == "p" && n.bar));
        assert!(matches!(&toks[2], Tok::Ident(n) if n.base == "S" && n.sub.as_deref() == Some("V")));
        let toks = kinds("S_{<i}");
        assert_eq!(toks[1], Tok::Underscore);
        assert_eq!(toks[2], Tok::LBrace);
    }

    #[test]
    fn extension_tags() {
        assert_eq!(kinds("⟩^{⊕1}"), kinds(">^{(+1)}"));
        let toks = kinds("⟩⊕");
        assert_eq!(toks, vec![Tok::RAngle, Tok::ExtBare]);
    }

    #[test]
    fn comments_are_skipped() {
        assert_eq!(kinds("# note\n⟨ =1 ∣ x ⟩"), kinds("⟨ =1 ∣ x ⟩"));
    }
}
