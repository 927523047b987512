//! Style notes for parsed definitions. Lints never fail a parse; they
//! surface redundancies and conventions the resolver will normalise.

use super::ast::*;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum LintKind {
    DuplicateAttribute,
    MembershipWithoutSet,
    NumericVisits,
}

#[derive(Clone, Debug)]
pub struct Lint {
    pub kind: LintKind,
    pub message: String,
    pub span: SourceSpan,
}

pub fn lint(ast: &VariantAst) -> Vec<Lint> {
    let mut out = Vec::new();
    for kind in [FieldKind::Alpha, FieldKind::Beta, FieldKind::Gamma] {
        let attrs = ast.attributes(kind);
        for (i, a) in attrs.iter().enumerate() {
            if let Some(name) = &a.name {
                if attrs[..i]
                    .iter()
                    .any(|b| b.name.as_ref() == Some(name))
                {
                    out.push(Lint {
                        kind: LintKind::DuplicateAttribute,
                        message: format!(
                            "attribute '{}' listed more than once in {}",
                            super::token::render_name(name),
                            kind.greek()
                        ),
                        span: a.span,
                    });
                }
            }
            if kind == FieldKind::Beta {
                if let (Some(name), Some(v)) = (&a.name, &a.value) {
                    if name.base == "visits"
                        && v.alts
                            .iter()
                            .any(|alt| matches!(alt.expr, Expr::Num(_)))
                    {
                        out.push(Lint {
                            kind: LintKind::NumericVisits,
                            message: "numeric 'visits' is read as 'traversals'".into(),
                            span: a.span,
                        });
                    }
                }
            }
            for alt in a.value.iter().flat_map(|v| &v.alts) {
                check_membership(&alt.expr, a.span, &mut out);
            }
            for (_, set) in &a.quant {
                check_membership(set, a.span, &mut out);
            }
        }
    }
    for c in &ast.delta {
        for attr in &c.attrs {
            if let CostAttr::Named(_, v) = attr {
                for alt in &v.alts {
                    check_membership(&alt.expr, c.span, &mut out);
                }
            }
        }
    }
    for o in &ast.epsilon {
        check_membership(&o.expr, o.span, &mut out);
    }
    out
}

fn is_setlike(e: &Expr) -> bool {
    matches!(
        e,
        Expr::SetLit(_)
            | Expr::SetRange(..)
            | Expr::SetBuilder(..)
            | Expr::Ident(_)
            | Expr::Walk(WalkRef::VisitedSet | WalkRef::EdgeSet)
            | Expr::Star
    )
}

fn check_membership(e: &Expr, span: SourceSpan, out: &mut Vec<Lint>) {
    let mut flag = |rhs: &Expr| {
        if !is_setlike(rhs) {
            out.push(Lint {
                kind: LintKind::MembershipWithoutSet,
                message: "the right side of '∈' is not a set".into(),
                span,
            });
        }
    };
    match e {
        Expr::Rel(ops, terms) => {
            for (op, rhs) in ops.iter().zip(&terms[1..]) {
                if *op == RelOp::In {
                    flag(rhs);
                }
            }
            for t in terms {
                check_membership(t, span, out);
            }
        }
        Expr::HalfRel(op, rhs) => {
            if *op == RelOp::In {
                flag(rhs);
            }
            check_membership(rhs, span, out);
        }
        Expr::Call(_, args) | Expr::SetLit(args) => {
            for a in args {
                check_membership(a, span, out);
            }
        }
        Expr::Bars(x) | Expr::Neg(x) | Expr::Min(x) | Expr::Max(x) | Expr::MaxOver(_, x) => {
            check_membership(x, span, out)
        }
        Expr::Bin(_, a, b) | Expr::SetRange(a, b) | Expr::SetBuilder(a, b) => {
            check_membership(a, span, out);
            check_membership(b, span, out);
        }
        Expr::Sum { lo, hi, body, .. } => {
            check_membership(lo, span, out);
            check_membership(hi, span, out);
            check_membership(body, span, out);
        }
        Expr::SumIn { set, body, .. } => {
            flag(set);
            check_membership(body, span, out);
        }
        Expr::Forall { binders, body } => {
            for (_, set) in binders {
                flag(set);
            }
            check_membership(body, span, out);
        }
        Expr::Walk(WalkRef::PrefixLt(i) | WalkRef::PrefixLe(i) | WalkRef::At(i)) => {
            check_membership(i, span, out)
        }
        _ => {}
    }
}
