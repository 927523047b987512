//! Recursive-descent parser for both notations.
//!
//! Longhand definitions label all five fields (α: … ε:) and close every
//! attribute with a semicolon, the last one included. Shorthand definitions
//! separate the five fields with bars, separate attributes inside a field
//! with semicolons, and forbid a trailing semicolon. `parse` detects the
//! notation when none is forced.

use super::ast::*;
use super::token::{lex, SyntaxError, Tok, Token};

pub fn parse(text: &str, notation: Option<Notation>) -> Result<VariantAst, SyntaxError> {
    let (body, annotations) = split_annotations(text);
    let tokens = lex(&body)?;
    if tokens.is_empty() {
        return Err(SyntaxError::new("empty definition", SourceSpan::default()));
    }
    let detected = detect(&tokens);
    let notation = notation.unwrap_or(detected);
    let mut p = Parser { tokens, pos: 0 };
    let mut ast = match notation {
        Notation::Longhand => p.longhand()?,
        Notation::Shorthand => p.shorthand()?,
    };
    ast.annotations = annotations;
    Ok(ast)
}

/// Pull "⊕n: …" annotation lines out of the text, blanking them so byte
/// offsets in spans still point into the original string.
fn split_annotations(text: &str) -> (String, Vec<Annotation>) {
    let mut body = String::with_capacity(text.len());
    let mut annotations = Vec::new();
    for line in text.split_inclusive('\n') {
        let stripped = line.strip_suffix('\n');
        let content = stripped.unwrap_or(line);
        if let Some(ann) = annotation_line(content) {
            annotations.push(ann);
            for c in content.chars() {
                body.push(if c == '\t' { '\t' } else { ' ' });
            }
        } else {
            body.push_str(content);
        }
        if stripped.is_some() {
            body.push('\n');
        }
    }
    (body, annotations)
}

fn annotation_line(line: &str) -> Option<Annotation> {
    let t = line.trim_start();
    let rest = if let Some(r) = t.strip_prefix('⊕') {
        r
    } else if let Some(r) = t.strip_prefix("(+") {
        let close = r.find(')')?;
        if !r[..close].chars().all(|c| c.is_ascii_digit()) || close == 0 {
            return None;
        }
        // Re-join so the shared digit-parsing path below sees "n) text".
        return annotation_tail(&r[..close], &r[close + 1..]);
    } else {
        return None;
    };
    let digits: String = rest.chars().take_while(char::is_ascii_digit).collect();
    annotation_tail(&digits, &rest[digits.len()..])
}

fn annotation_tail(digits: &str, rest: &str) -> Option<Annotation> {
    let num = if digits.is_empty() {
        None
    } else {
        Some(digits.parse().ok()?)
    };
    let rest = rest.trim_start();
    let rest = rest.strip_prefix(':').or_else(|| rest.strip_prefix('.')).unwrap_or(rest);
    Some(Annotation {
        num,
        text: rest.trim().to_string(),
    })
}

fn detect(tokens: &[Token]) -> Notation {
    let mut i = 0;
    if matches!(tokens.first().map(|t| &t.tok), Some(Tok::LAngle)) {
        i = 1;
    }
    if let (Some(a), Some(b)) = (tokens.get(i), tokens.get(i + 1)) {
        if let (Tok::Ident(name), Tok::Colon) = (&a.tok, &b.tok) {
            if label_kind(name).is_some() {
                return Notation::Longhand;
            }
        }
    }
    Notation::Shorthand
}

fn label_kind(name: &Name) -> Option<FieldKind> {
    if name.sub.is_some() || name.bar {
        return None;
    }
    match name.base.as_str() {
        "α" | "alpha" | "traveler" | "travelers" => Some(FieldKind::Alpha),
        "β" | "beta" | "target" | "targets" => Some(FieldKind::Beta),
        "γ" | "gamma" | "tour" => Some(FieldKind::Gamma),
        "δ" | "delta" | "cost" | "costs" => Some(FieldKind::Delta),
        "ε" | "epsilon" | "objective" | "objectives" => Some(FieldKind::Epsilon),
        _ => None,
    }
}

struct Parser {
    tokens: Vec<Token>,
    pos: usize,
}

impl Parser {
    fn peek(&self) -> Option<&Tok> {
        self.tokens.get(self.pos).map(|t| &t.tok)
    }

    fn peek_at(&self, off: usize) -> Option<&Tok> {
        self.tokens.get(self.pos + off).map(|t| &t.tok)
    }

    fn span(&self) -> SourceSpan {
        self.tokens
            .get(self.pos.min(self.tokens.len().saturating_sub(1)))
            .map(|t| t.span)
            .unwrap_or_default()
    }

    fn prev_span(&self) -> SourceSpan {
        self.tokens
            .get(self.pos.saturating_sub(1))
            .map(|t| t.span)
            .unwrap_or_default()
    }

    fn bump(&mut self) -> Token {
        let t = self.tokens[self.pos].clone();
        self.pos += 1;
        t
    }

    fn eat(&mut self, tok: &Tok) -> bool {
        if self.peek() == Some(tok) {
            self.pos += 1;
            true
        } else {
            false
        }
    }

    fn expect(&mut self, tok: Tok, what: &str) -> Result<SourceSpan, SyntaxError> {
        if self.peek() == Some(&tok) {
            Ok(self.bump().span)
        } else {
            Err(self.err_here(format!(
                "expected {what}, found {}",
                self.describe_here()
            )))
        }
    }

    fn describe_here(&self) -> String {
        match self.peek() {
            Some(t) => format!("'{t}'"),
            None => "end of input".to_string(),
        }
    }

    fn err_here(&self, msg: String) -> SyntaxError {
        SyntaxError::new(msg, self.span())
    }

    fn at_label(&self) -> Option<FieldKind> {
        if let (Some(Tok::Ident(name)), Some(Tok::Colon)) = (self.peek(), self.peek_at(1)) {
            label_kind(name)
        } else {
            None
        }
    }

    // ----- top level ------------------------------------------------------

    fn longhand(&mut self) -> Result<VariantAst, SyntaxError> {
        let open = self.expect(Tok::LAngle, "'⟨'")?;
        let mut ast = empty_ast(Notation::Longhand, open);
        for kind in FieldKind::ALL {
            match self.at_label() {
                Some(k) if k == kind => {
                    self.pos += 2;
                }
                Some(k) => {
                    return Err(self.err_here(format!(
                        "expected field {}: before {}:",
                        kind.greek(),
                        k.greek()
                    )));
                }
                None => {
                    return Err(self.err_here(format!(
                        "expected field label {}:, found {}",
                        kind.greek(),
                        self.describe_here()
                    )));
                }
            }
            while self.at_label().is_none() && self.peek() != Some(&Tok::RAngle) {
                if self.peek().is_none() {
                    return Err(self.err_here("definition not closed with '⟩'".into()));
                }
                match kind {
                    FieldKind::Delta => {
                        let c = self.cost_fn()?;
                        ast.delta.push(c);
                    }
                    FieldKind::Epsilon => {
                        let start = self.span();
                        let expr = self.expr()?;
                        let span = start.join(self.prev_span());
                        ast.epsilon.push(Objective { expr, span });
                    }
                    _ => {
                        let a = self.attribute(Notation::Longhand)?;
                        field_mut(&mut ast, kind).push(a);
                    }
                }
                self.expect(Tok::Semi, "';' after the entry")?;
            }
        }
        let close = self.expect(Tok::RAngle, "'⟩'")?;
        ast.extension = self.extension()?;
        self.expect_end()?;
        ast.span = open.join(close).join(self.prev_span());
        Ok(ast)
    }

    fn shorthand(&mut self) -> Result<VariantAst, SyntaxError> {
        let open = self.expect(Tok::LAngle, "'⟨'")?;
        let mut ast = empty_ast(Notation::Shorthand, open);
        for (i, kind) in FieldKind::ALL.into_iter().enumerate() {
            loop {
                if matches!(self.peek(), Some(Tok::Bar | Tok::RAngle) | None) {
                    if field_len(&ast, kind) == 0 {
                        return Err(self.err_here(format!(
                            "field {} must list at least one entry",
                            kind.greek()
                        )));
                    }
                    break;
                }
                match kind {
                    FieldKind::Delta => {
                        let c = self.cost_fn()?;
                        ast.delta.push(c);
                    }
                    FieldKind::Epsilon => {
                        let start = self.span();
                        let expr = self.expr()?;
                        let span = start.join(self.prev_span());
                        ast.epsilon.push(Objective { expr, span });
                    }
                    _ => {
                        let a = self.attribute(Notation::Shorthand)?;
                        field_mut(&mut ast, kind).push(a);
                    }
                }
                if self.eat(&Tok::Semi) {
                    if matches!(self.peek(), Some(Tok::Bar | Tok::RAngle)) {
                        return Err(self.err_here(
                            "shorthand forbids a trailing ';' at the end of a field".into(),
                        ));
                    }
                    continue;
                }
                break;
            }
            if i < 4 {
                if self.peek() == Some(&Tok::RAngle) {
                    return Err(self.err_here(format!(
                        "definition closed after field {}; all five fields are required",
                        kind.greek()
                    )));
                }
                self.expect(Tok::Bar, "'∣' between fields")?;
            }
        }
        let close = self.expect(Tok::RAngle, "'⟩'")?;
        ast.extension = self.extension()?;
        self.expect_end()?;
        ast.span = open.join(close).join(self.prev_span());
        Ok(ast)
    }

    fn extension(&mut self) -> Result<Option<ExtMark>, SyntaxError> {
        match self.peek() {
            Some(Tok::Caret) => {
                self.pos += 1;
                self.expect(Tok::LBrace, "'{' after '^'")?;
                let mut nums = Vec::new();
                loop {
                    match self.peek() {
                        Some(Tok::ExtTag(n)) => {
                            nums.push(*n);
                            self.pos += 1;
                        }
                        Some(Tok::ExtBare) => {
                            self.pos += 1;
                        }
                        _ => {
                            return Err(self.err_here(format!(
                                "expected '⊕n' in the extension marker, found {}",
                                self.describe_here()
                            )))
                        }
                    }
                    if !self.eat(&Tok::Comma) {
                        break;
                    }
                }
                self.expect(Tok::RBrace, "'}' closing the extension marker")?;
                Ok(Some(ExtMark { nums }))
            }
            Some(Tok::ExtTag(n)) => {
                let nums = vec![*n];
                self.pos += 1;
                Ok(Some(ExtMark { nums }))
            }
            Some(Tok::ExtBare) => {
                self.pos += 1;
                Ok(Some(ExtMark { nums: Vec::new() }))
            }
            _ => Ok(None),
        }
    }

    fn expect_end(&mut self) -> Result<(), SyntaxError> {
        if self.peek().is_some() {
            Err(self.err_here(format!(
                "unexpected {} after the definition",
                self.describe_here()
            )))
        } else {
            Ok(())
        }
    }

    // ----- attributes -----------------------------------------------------

    fn forall_binders(&mut self) -> Result<Vec<(Name, Expr)>, SyntaxError> {
        let mut binders = Vec::new();
        while self.peek() == Some(&Tok::ForallKw) {
            self.pos += 1;
            loop {
                let var = self.ident("binder variable")?;
                self.expect(Tok::Rel(RelOp::In), "'∈' in the binder")?;
                let set = self.additive()?;
                binders.push((var, set));
                if !(matches!(self.peek(), Some(Tok::Ident(_)))
                    && self.peek_at(1) == Some(&Tok::Rel(RelOp::In)))
                {
                    break;
                }
            }
        }
        if !binders.is_empty() {
            self.eat(&Tok::Colon);
        }
        Ok(binders)
    }

    fn attribute(&mut self, notation: Notation) -> Result<Attribute, SyntaxError> {
        let start = self.span();
        let quant = self.forall_binders()?;
        let attr = match self.peek() {
            Some(Tok::Rel(_)) => {
                if notation == Notation::Longhand {
                    return Err(self
                        .err_here("longhand attributes start with a name".into()));
                }
                let value = self.value_alts()?;
                Attribute {
                    quant,
                    name: None,
                    value: Some(value),
                    span: start,
                }
            }
            Some(Tok::Ident(_)) => {
                let name = self.ident_run()?;
                match self.peek() {
                    Some(Tok::Rel(_)) => {
                        let value = self.value_alts()?;
                        Attribute {
                            quant,
                            name: Some(name),
                            value: Some(value),
                            span: start,
                        }
                    }
                    Some(Tok::LParen) if notation == Notation::Shorthand => {
                        let call = self.call_on(name)?;
                        let expr = self.continue_alts(None, call)?;
                        Attribute {
                            quant,
                            name: None,
                            value: Some(expr),
                            span: start,
                        }
                    }
                    _ if notation == Notation::Longhand => {
                        return Err(self.err_here(format!(
                            "attribute '{}' needs a value, found {}",
                            super::token::render_name(&name),
                            self.describe_here()
                        )));
                    }
                    _ => Attribute {
                        quant,
                        name: Some(name),
                        value: None,
                        span: start,
                    },
                }
            }
            _ if notation == Notation::Shorthand => {
                let expr = self.min_max()?;
                let value = self.continue_alts(None, expr)?;
                Attribute {
                    quant,
                    name: None,
                    value: Some(value),
                    span: start,
                }
            }
            _ => {
                return Err(self.err_here(format!(
                    "expected an attribute, found {}",
                    self.describe_here()
                )))
            }
        };
        let mut attr = attr;
        attr.span = start.join(self.prev_span());
        Ok(attr)
    }

    /// Value alternatives: `[rel] expr { "or" [rel] expr }`.
    fn value_alts(&mut self) -> Result<Value, SyntaxError> {
        let rel = self.take_rel();
        let expr = self.alt_expr()?;
        self.continue_alts(rel, expr)
    }

    fn continue_alts(&mut self, rel: Option<RelOp>, expr: Expr) -> Result<Value, SyntaxError> {
        let mut alts = vec![ValueAlt { rel, expr }];
        while self.eat(&Tok::Or) {
            let rel = self.take_rel();
            let expr = self.alt_expr()?;
            alts.push(ValueAlt { rel, expr });
        }
        Ok(Value { alts })
    }

    /// Expression in value position; a word value may span several plain
    /// idents ("graphtype = strongly connected").
    fn alt_expr(&mut self) -> Result<Expr, SyntaxError> {
        let mut e = self.rel_chain()?;
        if let Expr::Ident(name) = &mut e {
            if name.sub.is_none() && !name.bar {
                while self.at_label().is_none() {
                    match self.peek() {
                        Some(Tok::Ident(next)) if next.sub.is_none() && !next.bar => {
                            name.base.push(' ');
                            let next = next.base.clone();
                            name.base.push_str(&next);
                            self.pos += 1;
                        }
                        _ => break,
                    }
                }
            }
        }
        Ok(e)
    }

    fn take_rel(&mut self) -> Option<RelOp> {
        if let Some(Tok::Rel(op)) = self.peek() {
            let op = *op;
            self.pos += 1;
            Some(op)
        } else {
            None
        }
    }

    fn ident(&mut self, what: &str) -> Result<Name, SyntaxError> {
        match self.peek() {
            Some(Tok::Ident(_)) => {
                if let Tok::Ident(n) = self.bump().tok {
                    Ok(n)
                } else {
                    unreachable!()
                }
            }
            _ => Err(self.err_here(format!(
                "expected {what}, found {}",
                self.describe_here()
            ))),
        }
    }

    /// One name, possibly spanning several words ("strongly connected").
    /// Later words must be plain; the run never crosses a field label.
    fn ident_run(&mut self) -> Result<Name, SyntaxError> {
        let mut name = self.ident("a name")?;
        while self.at_label().is_none() {
            match self.peek() {
                Some(Tok::Ident(next)) if next.sub.is_none() && !next.bar => {
                    name.base.push(' ');
                    name.base.push_str(&next.base.clone());
                    self.pos += 1;
                }
                _ => break,
            }
        }
        Ok(name)
    }

    // ----- cost functions ---------------------------------------------------

    fn cost_fn(&mut self) -> Result<CostFn, SyntaxError> {
        let start = self.span();
        let (name, family) = if self.peek() == Some(&Tok::LBrace) {
            self.pos += 1;
            let name = self.ident("the family name")?;
            self.expect(Tok::RBrace, "'}' after the family name")?;
            self.expect(Tok::Underscore, "'_' after the family braces")?;
            self.expect(Tok::LBrace, "'{' opening the index range")?;
            let var = self.ident("the index variable")?;
            self.expect(Tok::Rel(RelOp::Eq), "'=' in the index range")?;
            let lo = self.additive()?;
            self.expect(Tok::RBrace, "'}' closing the index range")?;
            self.expect(Tok::Caret, "'^' before the upper index")?;
            let hi = self.caret_operand()?;
            (
                name,
                Some(FamilyIndex {
                    var: var.base,
                    lo,
                    hi,
                }),
            )
        } else {
            (self.ident("a cost function name")?, None)
        };
        self.expect(Tok::Colon, "':' after the cost function name")?;
        let domain = self.additive()?;
        self.expect(Tok::MapsTo, "'↦' between domain and range")?;
        let range = self.range()?;
        let mut attrs = Vec::new();
        while self.eat(&Tok::Comma) {
            attrs.push(self.cost_attr()?);
        }
        Ok(CostFn {
            name,
            family,
            domain,
            range,
            attrs,
            span: start.join(self.prev_span()),
        })
    }

    fn range(&mut self) -> Result<RangeTag, SyntaxError> {
        match self.peek() {
            Some(Tok::Ident(n)) if matches!(n.base.as_str(), "ℝ" | "R" | "ℤ" | "Z") => {
                let real = matches!(n.base.as_str(), "ℝ" | "R");
                self.pos += 1;
                let rel = match self.peek() {
                    Some(Tok::Rel(RelOp::Ge)) => Some(RelOp::Ge),
                    Some(Tok::Rel(RelOp::Gt)) => Some(RelOp::Gt),
                    _ => None,
                };
                if let Some(rel) = rel {
                    self.pos += 1;
                    match self.peek() {
                        Some(Tok::Num(r)) if r == &crate::rat::rat(0) => {
                            self.pos += 1;
                        }
                        _ => {
                            return Err(self
                                .err_here("a range bound must be 0 (as in ℝ≥0)".into()))
                        }
                    }
                    Ok(match (real, rel) {
                        (true, RelOp::Ge) => RangeTag::RNonNeg,
                        (true, _) => RangeTag::RPos,
                        (false, RelOp::Ge) => RangeTag::ZNonNeg,
                        (false, _) => RangeTag::ZPos,
                    })
                } else {
                    Ok(if real { RangeTag::R } else { RangeTag::Z })
                }
            }
            Some(Tok::LBrace) => {
                self.pos += 1;
                let mut elems = vec![self.rel_chain()?];
                while self.eat(&Tok::Comma) {
                    elems.push(self.rel_chain()?);
                }
                self.expect(Tok::RBrace, "'}' closing the range set")?;
                Ok(RangeTag::Set(elems))
            }
            _ => Err(self.err_here(format!(
                "expected a range (ℝ, ℝ≥0, ℤ, …), found {}",
                self.describe_here()
            ))),
        }
    }

    fn cost_attr(&mut self) -> Result<CostAttr, SyntaxError> {
        match self.peek() {
            Some(Tok::LParen) => {
                self.pos += 1;
                let mut names = vec![self.ident_run()?];
                while self.eat(&Tok::Comma) {
                    names.push(self.ident_run()?);
                }
                self.expect(Tok::RParen, "')' closing the property list")?;
                Ok(CostAttr::Tuple(names))
            }
            Some(Tok::Star) => {
                self.pos += 1;
                Ok(CostAttr::Tag(Name::plain("*")))
            }
            Some(Tok::Ident(_)) => {
                let name = self.ident_run()?;
                match self.peek() {
                    Some(Tok::LParen) => {
                        self.pos += 1;
                        let mut args = Vec::new();
                        if self.peek() != Some(&Tok::RParen) {
                            args.push(self.call_arg()?);
                            while self.eat(&Tok::Comma) {
                                args.push(self.call_arg()?);
                            }
                        }
                        self.expect(Tok::RParen, "')' closing the arguments")?;
                        Ok(CostAttr::Call(name, args))
                    }
                    Some(Tok::Rel(RelOp::Eq)) => {
                        self.pos += 1;
                        let first = self.alt_expr()?;
                        let value = self.continue_alts(None, first)?;
                        Ok(CostAttr::Named(name, value))
                    }
                    _ => Ok(CostAttr::Tag(name)),
                }
            }
            _ => Err(self.err_here(format!(
                "expected a cost attribute, found {}",
                self.describe_here()
            ))),
        }
    }

    // ----- expressions ------------------------------------------------------

    fn expr(&mut self) -> Result<Expr, SyntaxError> {
        if self.peek() == Some(&Tok::ForallKw) {
            let binders = self.forall_binders()?;
            let body = self.rel_chain()?;
            return Ok(Expr::Forall {
                binders,
                body: Box::new(body),
            });
        }
        self.rel_chain()
    }

    fn rel_chain(&mut self) -> Result<Expr, SyntaxError> {
        let first = self.min_max()?;
        let mut ops = Vec::new();
        let mut terms = vec![first];
        while let Some(Tok::Rel(op)) = self.peek() {
            ops.push(*op);
            self.pos += 1;
            terms.push(self.min_max()?);
        }
        if ops.is_empty() {
            Ok(terms.pop().unwrap())
        } else {
            Ok(Expr::Rel(ops, terms))
        }
    }

    fn min_max(&mut self) -> Result<Expr, SyntaxError> {
        if let Some(Tok::Ident(n)) = self.peek() {
            if (n.base == "min" || n.base == "max")
                && !n.bar
                && (n.sub.is_none() || n.base == "max")
                && self.starts_operand(1)
            {
                let n = n.clone();
                self.pos += 1;
                if let Some(sub) = n.sub {
                    let body = self.min_max()?;
                    return Ok(Expr::MaxOver(Name::plain(&sub), Box::new(body)));
                }
                let body = self.min_max()?;
                return Ok(if n.base == "min" {
                    Expr::Min(Box::new(body))
                } else {
                    Expr::Max(Box::new(body))
                });
            }
        }
        self.additive()
    }

    /// True when the token at `off` can begin an operand of min/max.
    fn starts_operand(&self, off: usize) -> bool {
        matches!(
            self.peek_at(off),
            Some(
                Tok::Num(_)
                    | Tok::Ident(_)
                    | Tok::LParen
                    | Tok::LBrace
                    | Tok::CardIdent(_)
                    | Tok::Infty
                    | Tok::Star
                    | Tok::Minus
                    | Tok::SumKw
            )
        )
    }

    fn additive(&mut self) -> Result<Expr, SyntaxError> {
        let mut lhs = self.multiplicative()?;
        loop {
            let op = match self.peek() {
                Some(Tok::Plus) => BinOp::Add,
                Some(Tok::Minus) => BinOp::Sub,
                _ => break,
            };
            self.pos += 1;
            let rhs = self.multiplicative()?;
            lhs = Expr::Bin(op, Box::new(lhs), Box::new(rhs));
        }
        Ok(lhs)
    }

    fn multiplicative(&mut self) -> Result<Expr, SyntaxError> {
        let mut lhs = self.juxt()?;
        loop {
            let op = match self.peek() {
                Some(Tok::Cdot) => BinOp::Mul,
                Some(Tok::Slash) => BinOp::Div,
                _ => break,
            };
            self.pos += 1;
            let rhs = self.juxt()?;
            lhs = Expr::Bin(op, Box::new(lhs), Box::new(rhs));
        }
        Ok(lhs)
    }

    /// Implicit multiplication for "2ε" and "(1+ε)d(v_i)" shapes: the left
    /// part must be a number or a parenthesised expression.
    fn juxt(&mut self) -> Result<Expr, SyntaxError> {
        let first_tok = self.peek().cloned();
        let mut lhs = self.prefix()?;
        let mut left_glues = matches!(first_tok, Some(Tok::Num(_) | Tok::LParen));
        while left_glues
            && matches!(
                self.peek(),
                Some(Tok::Num(_) | Tok::Ident(_) | Tok::LParen | Tok::CardIdent(_))
            )
            && !self.min_max_follows()
            && self.at_label().is_none()
        {
            let next_tok = self.peek().cloned();
            let rhs = self.prefix()?;
            lhs = Expr::Bin(BinOp::Mul, Box::new(lhs), Box::new(rhs));
            left_glues = matches!(next_tok, Some(Tok::Num(_) | Tok::LParen));
    }
        Ok(lhs)
    }

    fn min_max_follows(&self) -> bool {
        matches!(self.peek(), Some(Tok::Ident(n)) if n.base == "min" || n.base == "max")
    }

    fn prefix(&mut self) -> Result<Expr, SyntaxError> {
        match self.peek() {
            Some(Tok::Minus) => {
                self.pos += 1;
                let e = self.prefix()?;
                Ok(Expr::Neg(Box::new(e)))
            }
            Some(Tok::SumKw) => self.sum(),
            _ => self.postfix(),
        }
    }

    fn sum(&mut self) -> Result<Expr, SyntaxError> {
        self.pos += 1;
        self.expect(Tok::Underscore, "'_' after 'Σ'")?;
        self.expect(Tok::LBrace, "'{' opening the Σ binder")?;
        let var = self.ident("the Σ index variable")?;
        match self.peek() {
            Some(Tok::Rel(RelOp::Eq)) => {
                self.pos += 1;
                let lo = self.additive()?;
                self.expect(Tok::RBrace, "'}' closing the Σ binder")?;
                self.expect(Tok::Caret, "'^' before the upper Σ bound")?;
                let hi = self.caret_operand()?;
                let body = self.multiplicative()?;
                Ok(Expr::Sum {
                    var,
                    lo: Box::new(lo),
                    hi: Box::new(hi),
                    body: Box::new(body),
                })
            }
            Some(Tok::Rel(RelOp::In)) => {
                self.pos += 1;
                let set = self.additive()?;
                self.expect(Tok::RBrace, "'}' closing the Σ binder")?;
                let body = self.multiplicative()?;
                Ok(Expr::SumIn {
                    var,
                    set: Box::new(set),
                    body: Box::new(body),
                })
            }
            _ => Err(self.err_here(format!(
                "expected '=' or '∈' in the Σ binder, found {}",
                self.describe_here()
            ))),
        }
    }

    fn caret_operand(&mut self) -> Result<Expr, SyntaxError> {
        match self.peek() {
            Some(Tok::LBrace) => {
                self.pos += 1;
                let e = self.additive()?;
                self.expect(Tok::RBrace, "'}' after the exponent")?;
                Ok(e)
            }
            Some(Tok::Num(_)) | Some(Tok::Ident(_)) => self.primary(),
            _ => Err(self.err_here(format!(
                "expected an index bound, found {}",
                self.describe_here()
            ))),
        }
    }

    fn postfix(&mut self) -> Result<Expr, SyntaxError> {
        let base_name = match self.peek() {
            Some(Tok::Ident(n)) => Some(n.clone()),
            _ => None,
        };
        let mut e = self.primary()?;
        loop {
            match self.peek() {
                Some(Tok::LParen) if matches!(e, Expr::Ident(_)) => {
                    let name = match &e {
                        Expr::Ident(n) => n.clone(),
                        _ => unreachable!(),
                    };
                    e = self.call_on(name)?;
                }
                Some(Tok::Underscore) if self.peek_at(1) == Some(&Tok::LBrace) => {
                    let name = base_name.as_ref().filter(|n| {
                        n.base == "S" && n.sub.is_none() && matches!(e, Expr::Walk(WalkRef::Whole))
                    });
                    if name.is_none() {
                        return Err(self.err_here(
                            "braced subscripts are only defined on the walk S".into(),
                        ));
                    }
                    self.pos += 2;
                    let walk = match self.peek() {
                        Some(Tok::Rel(RelOp::Lt)) => {
                            self.pos += 1;
                            let idx = self.additive()?;
                            WalkRef::PrefixLt(Box::new(idx))
                        }
                        Some(Tok::Rel(RelOp::Le)) => {
                            self.pos += 1;
                            let idx = self.additive()?;
                            WalkRef::PrefixLe(Box::new(idx))
                        }
                        _ => {
                            let idx = self.additive()?;
                            WalkRef::At(Box::new(idx))
                        }
                    };
                    self.expect(Tok::RBrace, "'}' closing the subscript")?;
                    e = Expr::Walk(walk);
                }
                _ => break,
            }
        }
        Ok(e)
    }

    fn call_on(&mut self, name: Name) -> Result<Expr, SyntaxError> {
        self.expect(Tok::LParen, "'('")?;
        let mut args = Vec::new();
        if self.peek() != Some(&Tok::RParen) {
            args.push(self.call_arg()?);
            while self.eat(&Tok::Comma) {
                args.push(self.call_arg()?);
            }
        }
        self.expect(Tok::RParen, "')' closing the arguments")?;
        Ok(Expr::Call(name, args))
    }

    fn call_arg(&mut self) -> Result<Expr, SyntaxError> {
        if let Some(Tok::Rel(op)) = self.peek() {
            let op = *op;
            self.pos += 1;
            let e = self.min_max()?;
            return Ok(Expr::HalfRel(op, Box::new(e)));
        }
        self.rel_chain()
    }

    fn primary(&mut self) -> Result<Expr, SyntaxError> {
        match self.peek().cloned() {
            Some(Tok::Num(r)) => {
                self.pos += 1;
                Ok(Expr::Num(r))
            }
            Some(Tok::Infty) => {
                self.pos += 1;
                Ok(Expr::Inf)
            }
            Some(Tok::Star) => {
                self.pos += 1;
                Ok(Expr::Star)
            }
            Some(Tok::CardIdent(n)) => {
                self.pos += 1;
                Ok(Expr::Bars(Box::new(walk_or_ident(n))))
            }
            Some(Tok::LParen) => {
                self.pos += 1;
                let e = self.rel_chain()?;
                self.expect(Tok::RParen, "')'")?;
                Ok(e)
            }
            Some(Tok::LBrace) => self.set(),
            Some(Tok::Ident(n)) => {
                self.pos += 1;
                if n.base == "log"
                    && n.sub.is_none()
                    && matches!(self.peek(), Some(Tok::Ident(_) | Tok::Num(_)))
                {
                    let arg = self.primary()?;
                    return Ok(Expr::Call(n, vec![arg]));
                }
                Ok(walk_or_ident(n))
            }
            _ => Err(self.err_here(format!(
                "expected an expression, found {}",
                self.describe_here()
            ))),
        }
    }

    fn set(&mut self) -> Result<Expr, SyntaxError> {
        self.expect(Tok::LBrace, "'{'")?;
        let first = self.rel_chain()?;
        if self.eat(&Tok::Colon) {
            let cond = self.rel_chain()?;
            self.expect(Tok::RBrace, "'}' closing the set builder")?;
            return Ok(Expr::SetBuilder(Box::new(first), Box::new(cond)));
        }
        let mut elems = vec![first];
        while self.eat(&Tok::Comma) {
            if self.peek() == Some(&Tok::Ellipsis) {
                self.pos += 1;
                self.expect(Tok::Comma, "',' after '…'")?;
                let hi = self.rel_chain()?;
                self.expect(Tok::RBrace, "'}' closing the range")?;
                if elems.len() != 1 {
                    return Err(self
                        .err_here("a range set has one element before '…'".into()));
                }
                return Ok(Expr::SetRange(
                    Box::new(elems.pop().unwrap()),
                    Box::new(hi),
                ));
            }
            elems.push(self.rel_chain()?);
        }
        self.expect(Tok::RBrace, "'}' closing the set")?;
        Ok(Expr::SetLit(elems))
    }
}

fn walk_or_ident(n: Name) -> Expr {
    match (n.base.as_str(), n.sub.as_deref(), n.bar) {
        ("S", None, false) => Expr::Walk(WalkRef::Whole),
        ("S", Some("V"), false) => Expr::Walk(WalkRef::VisitedSeq),
        ("V", Some("S"), false) => Expr::Walk(WalkRef::VisitedSet),
        ("S", Some("E"), false) => Expr::Walk(WalkRef::EdgeSeq),
        ("E", Some("S"), false) => Expr::Walk(WalkRef::EdgeSet),
        ("S", Some(sub), false) => {
            let idx = if let Ok(k) = sub.parse::<i64>() {
                Expr::num(k)
            } else {
                Expr::Ident(Name::plain(sub))
            };
            Expr::Walk(WalkRef::At(Box::new(idx)))
        }
        _ => Expr::Ident(n),
    }
}

fn empty_ast(notation: Notation, span: SourceSpan) -> VariantAst {
    VariantAst {
        notation,
        alpha: Vec::new(),
        beta: Vec::new(),
        gamma: Vec::new(),
        delta: Vec::new(),
        epsilon: Vec::new(),
        extension: None,
        annotations: Vec::new(),
        span,
    }
}

fn field_mut(ast: &mut VariantAst, kind: FieldKind) -> &mut Vec<Attribute> {
    match kind {
        FieldKind::Alpha => &mut ast.alpha,
        FieldKind::Beta => &mut ast.beta,
        FieldKind::Gamma => &mut ast.gamma,
        _ => unreachable!("δ and ε entries are not attributes"),
    }
}

fn field_len(ast: &VariantAst, kind: FieldKind) -> usize {
    match kind {
        FieldKind::Alpha => ast.alpha.len(),
        FieldKind::Beta => ast.beta.len(),
        FieldKind::Gamma => ast.gamma.len(),
        FieldKind::Delta => ast.delta.len(),
        FieldKind::Epsilon => ast.epsilon.len(),
    }
}
