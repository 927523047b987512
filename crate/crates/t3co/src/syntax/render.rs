//! Canonical printer. `render` prints an AST in its own notation; the
//! output parses back to a structurally identical AST, and rendering is
//! idempotent. `render_as` converts longhand to shorthand by the usual
//! abbreviation conventions (drop names with unique values, keep bare names
//! for True booleans, omit False ones). Rendering an unnamed attribute as
//! longhand is refused; resolution supplies the names first.

use super::ast::*;
use super::token::render_name;

#[derive(Clone, Debug, thiserror::Error, PartialEq, Eq)]
pub enum RenderError {
    #[error("longhand requires named attributes; resolve the definition first")]
    UnnamedAttribute,
}

pub fn render(ast: &VariantAst) -> String {
    match ast.notation {
        Notation::Longhand => longhand(ast),
        Notation::Shorthand => shorthand(ast),
    }
}

pub fn render_as(ast: &VariantAst, notation: Notation) -> Result<String, RenderError> {
    match (ast.notation, notation) {
        (Notation::Longhand, Notation::Shorthand) => Ok(shorthand(&abbreviate(ast))),
        (Notation::Shorthand, Notation::Longhand) => {
            let all_named = ast
                .alpha
                .iter()
                .chain(&ast.beta)
                .chain(&ast.gamma)
                .all(|a| a.name.is_some());
            if !all_named {
                return Err(RenderError::UnnamedAttribute);
            }
            let mut lh = ast.clone();
            lh.notation = Notation::Longhand;
            Ok(longhand(&lh))
        }
        _ => Ok(render(ast)),
    }
}

fn longhand(ast: &VariantAst) -> String {
    let mut lines = Vec::new();
    for kind in FieldKind::ALL {
        let mut line = String::new();
        line.push_str(kind.greek());
        line.push(':');
        match kind {
            FieldKind::Delta => {
                for c in &ast.delta {
                    line.push(' ');
                    line.push_str(&cost_fn(c));
                    line.push(';');
                }
            }
            FieldKind::Epsilon => {
                for o in &ast.epsilon {
                    line.push(' ');
                    line.push_str(&expr(&o.expr, 0));
                    line.push(';');
                }
            }
            _ => {
                for a in ast.attributes(kind) {
                    line.push(' ');
                    line.push_str(&attribute(a));
                    line.push(';');
                }
            }
        }
        lines.push(line);
    }
    let mut out = String::from("⟨ ");
    out.push_str(&lines.join("\n  "));
    out.push_str(" ⟩");
    finish(out, ast)
}

fn shorthand(ast: &VariantAst) -> String {
    let mut fields = Vec::new();
    for kind in FieldKind::ALL {
        let parts: Vec<String> = match kind {
            FieldKind::Delta => ast.delta.iter().map(cost_fn).collect(),
            FieldKind::Epsilon => ast.epsilon.iter().map(|o| expr(&o.expr, 0)).collect(),
            _ => ast.attributes(kind).iter().map(attribute).collect(),
        };
        fields.push(parts.join("; "));
    }
    let out = format!("⟨ {} ⟩", fields.join(" ∣ "));
    finish(out, ast)
}

fn finish(mut out: String, ast: &VariantAst) -> String {
    if let Some(ext) = &ast.extension {
        if ext.nums.is_empty() {
            out.push('⊕');
        } else {
            let tags: Vec<String> = ext.nums.iter().map(|n| format!("⊕{n}")).collect();
            out.push_str(&format!("^{{{}}}", tags.join(", ")));
        }
    }
    for ann in &ast.annotations {
        out.push('\n');
        match ann.num {
            Some(n) => out.push_str(&format!("⊕{n}: {}", ann.text)),
            None => out.push_str(&format!("⊕ {}", ann.text)),
        }
    }
    out
}

// ----- entries --------------------------------------------------------------

fn attribute(a: &Attribute) -> String {
    let mut out = String::new();
    for (var, set) in &a.quant {
        out.push_str(&format!("∀ {} ∈ {}", render_name(var), expr(set, 3)));
        out.push(' ');
    }
    if !a.quant.is_empty() {
        out.pop();
        out.push_str(": ");
    }
    match (&a.name, &a.value) {
        (Some(n), Some(v)) => {
            out.push_str(&render_name(n));
            out.push(' ');
            out.push_str(&value(v));
        }
        (Some(n), None) => out.push_str(&render_name(n)),
        (None, Some(v)) => out.push_str(&value(v)),
        (None, None) => {}
    }
    out
}

fn value(v: &Value) -> String {
    let alts: Vec<String> = v.alts.iter().map(alt).collect();
    alts.join(" or ")
}

fn alt(a: &ValueAlt) -> String {
    let body = expr(&a.expr, 1);
    match a.rel {
        Some(op) => join_rel(op, &body),
        None => body,
    }
}

/// The relation hugs numeric-looking values ("=1", "=Θ(1)", "=|T|") and
/// takes a space before words ("≤ once", "= True").
fn join_rel(op: RelOp, body: &str) -> String {
    let tight = body
        .chars()
        .next()
        .is_some_and(|c| c.is_ascii_digit() || matches!(c, 'Θ' | '∞' | '|'));
    if tight {
        format!("{}{body}", op.symbol())
    } else {
        format!("{} {body}", op.symbol())
    }
}

fn cost_fn(c: &CostFn) -> String {
    let mut out = String::new();
    match &c.family {
        Some(fam) => out.push_str(&format!(
            "{{{}}}_{{{}={}}}^{}",
            render_name(&c.name),
            fam.var,
            expr(&fam.lo, 3),
            caret(&fam.hi)
        )),
        None => out.push_str(&render_name(&c.name)),
    }
    out.push_str(" : ");
    out.push_str(&expr(&c.domain, 3));
    out.push_str(" ↦ ");
    out.push_str(&range(&c.range));
    for attr in &c.attrs {
        out.push_str(", ");
        out.push_str(&cost_attr(attr));
    }
    out
}

fn caret(e: &Expr) -> String {
    match e {
        Expr::Num(_) | Expr::Ident(_) => expr(e, 6),
        _ => format!("{{{}}}", expr(e, 0)),
    }
}

/// Renders a cost-function range lexeme ("ℝ≥0", "{0, ∞}").
pub fn render_range(r: &RangeTag) -> String {
    range(r)
}

fn range(r: &RangeTag) -> String {
    match r {
        RangeTag::R => "ℝ".into(),
        RangeTag::RNonNeg => "ℝ≥0".into(),
        RangeTag::RPos => "ℝ>0".into(),
        RangeTag::Z => "ℤ".into(),
        RangeTag::ZNonNeg => "ℤ≥0".into(),
        RangeTag::ZPos => "ℤ>0".into(),
        RangeTag::Set(elems) => {
            let parts: Vec<String> = elems.iter().map(|e| expr(e, 1)).collect();
            format!("{{{}}}", parts.join(", "))
        }
    }
}

fn cost_attr(a: &CostAttr) -> String {
    match a {
        CostAttr::Tag(n) => render_name(n),
        CostAttr::Call(n, args) => {
            let parts: Vec<String> = args.iter().map(|e| expr(e, 1)).collect();
            format!("{}({})", render_name(n), parts.join(", "))
        }
        CostAttr::Tuple(names) => {
            let parts: Vec<String> = names.iter().map(render_name).collect();
            format!("({})", parts.join(", "))
        }
        CostAttr::Named(n, v) => format!("{} = {}", render_name(n), value(v)),
    }
}

// ----- expressions -----------------------------------------------------------

fn prec(e: &Expr) -> u8 {
    match e {
        Expr::Forall { .. } => 0,
        Expr::Rel(..) | Expr::HalfRel(..) => 1,
        Expr::Min(_) | Expr::Max(_) | Expr::MaxOver(..) | Expr::Sum { .. } | Expr::SumIn { .. } => {
            2
        }
        Expr::Bin(BinOp::Add | BinOp::Sub, ..) => 3,
        Expr::Bin(BinOp::Mul | BinOp::Div, ..) => 4,
        Expr::Neg(_) => 5,
        _ => 6,
    }
}

/// Renders a single expression without surrounding notation context.
pub fn render_expr(e: &Expr) -> String {
    expr(e, 0)
}

pub(crate) fn expr(e: &Expr, min_prec: u8) -> String {
    let s = expr_raw(e);
    if prec(e) < min_prec {
        format!("({s})")
    } else {
        s
    }
}

fn expr_raw(e: &Expr) -> String {
    match e {
        Expr::Num(r) => crate::rat::fmt_rat(r),
        Expr::Inf => "∞".into(),
        Expr::Star => "*".into(),
        Expr::Ident(n) => render_name(n),
        Expr::Call(n, args) => {
            if n.base == "log" && n.sub.is_none() && args.len() == 1 {
                if let Expr::Ident(_) | Expr::Num(_) = &args[0] {
                    return format!("log {}", expr(&args[0], 6));
                }
            }
            let parts: Vec<String> = args.iter().map(|a| expr(a, 1)).collect();
            format!("{}({})", render_name(n), parts.join(", "))
        }
        Expr::Bars(inner) => format!("|{}|", expr(inner, 6)),
        Expr::Walk(w) => walk(w),
        Expr::Neg(x) => format!("−{}", expr(x, 6)),
        Expr::Bin(op, a, b) => {
            let (sym, lp, rp) = match op {
                BinOp::Add => (" + ", 3, 4),
                BinOp::Sub => (" − ", 3, 4),
                BinOp::Mul => (" · ", 4, 5),
                BinOp::Div => ("/", 4, 5),
            };
            format!("{}{sym}{}", expr(a, lp), expr(b, rp))
        }
        Expr::Rel(ops, terms) => {
            let mut out = expr(&terms[0], 2);
            for (op, term) in ops.iter().zip(&terms[1..]) {
                out.push_str(&format!(" {} {}", op.symbol(), expr(term, 2)));
            }
            out
        }
        Expr::HalfRel(op, x) => join_rel(*op, &expr(x, 2)),
        Expr::SetLit(elems) => {
            let parts: Vec<String> = elems.iter().map(|e| expr(e, 1)).collect();
            format!("{{{}}}", parts.join(", "))
        }
        Expr::SetRange(lo, hi) => format!("{{{},…,{}}}", expr(lo, 1), expr(hi, 1)),
        Expr::SetBuilder(body, cond) => {
            format!("{{{} : {}}}", expr(body, 1), expr(cond, 1))
        }
        Expr::Min(x) => format!("min {}", expr(x, 2)),
        Expr::Max(x) => format!("max {}", expr(x, 2)),
        Expr::MaxOver(var, x) => format!("max_{} {}", var.base, expr(x, 2)),
        Expr::Sum { var, lo, hi, body } => format!(
            "Σ_{{{}={}}}^{} {}",
            render_name(var),
            expr(lo, 3),
            caret(hi),
            expr(body, 4)
        ),
        Expr::SumIn { var, set, body } => format!(
            "Σ_{{{} ∈ {}}} {}",
            render_name(var),
            expr(set, 3),
            expr(body, 4)
        ),
        Expr::Forall { binders, body } => {
            let parts: Vec<String> = binders
                .iter()
                .map(|(v, s)| format!("∀ {} ∈ {}", render_name(v), expr(s, 3)))
                .collect();
            format!("{}: {}", parts.join(" "), expr(body, 1))
        }
    }
}

fn walk(w: &WalkRef) -> String {
    match w {
        WalkRef::Whole => "S".into(),
        WalkRef::VisitedSeq => "S_V".into(),
        WalkRef::VisitedSet => "V_S".into(),
        WalkRef::EdgeSeq => "S_E".into(),
        WalkRef::EdgeSet => "E_S".into(),
        WalkRef::PrefixLt(i) => format!("S_{{<{}}}", expr(i, 3)),
        WalkRef::PrefixLe(i) => format!("S_{{≤{}}}", expr(i, 3)),
        WalkRef::At(i) => match i.as_ref() {
            Expr::Num(r) => format!("S_{}", crate::rat::fmt_rat(r)),
            Expr::Ident(n) if n.sub.is_none() && !n.bar => format!("S_{}", n.base),
            other => format!("S_{{{}}}", expr(other, 0)),
        },
    }
}

// ----- longhand → shorthand abbreviation -------------------------------------

/// Attribute names whose word values identify them uniquely, so the
/// shorthand keeps only the value.
const BARE_VALUE_NAMES: [&str; 7] = [
    "graphtype",
    "edgetype",
    "precedences",
    "cluster",
    "group",
    "covering",
    "visits",
];

pub fn abbreviate(ast: &VariantAst) -> VariantAst {
    let mut out = ast.clone();
    out.notation = Notation::Shorthand;
    for attrs in [&mut out.alpha, &mut out.beta, &mut out.gamma] {
        let mut kept = Vec::new();
        for a in attrs.drain(..) {
            if let Some(short) = abbreviate_attr(a) {
                kept.push(short);
            }
        }
        *attrs = kept;
    }
    out
}

fn abbreviate_attr(a: Attribute) -> Option<Attribute> {
    let (Some(name), Some(v)) = (&a.name, &a.value) else {
        return Some(a);
    };
    // True booleans keep the bare name, False ones disappear.
    if v.alts.len() == 1 && v.alts[0].rel == Some(RelOp::Eq) {
        if let Expr::Ident(word) = &v.alts[0].expr {
            if word.base == "True" {
                return Some(Attribute {
                    quant: a.quant.clone(),
                    name: Some(name.clone()),
                    value: None,
                    span: a.span,
                });
            }
            if word.base == "False" {
                return None;
            }
        }
    }
    // count and traversals are value-led: their relation and quantity
    // identify them within their field ("=1", "≥1", "=k", "*"). Numeric
    // visit counts follow suit, since a number in β reads as a traversal
    // count either way.
    let numeric_visits =
        name.base == "visits" && v.alts.iter().all(|alt| matches!(alt.expr, Expr::Num(_)));
    if matches!(name.base.as_str(), "count" | "traversals") || numeric_visits {
        return Some(Attribute {
            quant: a.quant,
            name: None,
            value: a.value,
            span: a.span,
        });
    }
    // Identifying word values lose the name and the "=" as well; relations
    // other than "=" stay ("≥ once"). A wildcard keeps its name: a bare "*"
    // could belong to any attribute.
    let all_words = v
        .alts
        .iter()
        .all(|alt| matches!(&alt.expr, Expr::Ident(_) | Expr::Call(..)));
    if BARE_VALUE_NAMES.contains(&name.base.as_str()) && all_words {
        let alts = v
            .alts
            .iter()
            .map(|alt| {
                if matches!(alt.rel, None | Some(RelOp::Eq)) {
                    ValueAlt {
                        rel: None,
                        expr: alt.expr.clone(),
                    }
                } else {
                    alt.clone()
                }
            })
            .collect();
        return Some(Attribute {
            quant: a.quant,
            name: None,
            value: Some(Value { alts }),
            span: a.span,
        });
    }
    Some(a)
}
