//! Classification of ε-field expressions into the closed objective catalog.
//!
//! The grammar admits arbitrary expressions in ε; semantics supports exactly
//! the statement forms that occur in variant definitions and rejects
//! anything else by naming the offending subtree.

use super::resolve::ResolveError;
use super::types::{
    ArrivalForm, CostDomain, CostSignature, LatenessSpec, ObjTerm, ObjectiveStmt, PurchaseKind,
    PurchaseSpec, TermAtom, TimeWindowSpec,
};
use crate::rat::{rat, Rat};
use crate::syntax::{render_expr, Expr, Name, Objective, RelOp, SourceSpan, WalkRef};

pub(crate) fn classify(
    objectives: &[Objective],
    costs: &[CostSignature],
) -> Result<Vec<ObjectiveStmt>, ResolveError> {
    objectives
        .iter()
        .map(|o| classify_one(o, costs))
        .collect()
}

fn unsupported(e: &Expr, span: SourceSpan) -> ResolveError {
    ResolveError::new(
        format!("unsupported objective '{}'", render_expr(e)),
        span,
    )
}

fn classify_one(obj: &Objective, costs: &[CostSignature]) -> Result<ObjectiveStmt, ResolveError> {
    let span = obj.span;
    match &obj.expr {
        Expr::Min(inner) => match inner.as_ref() {
            Expr::Max(set) => {
                let cost = edge_fold(set, span)?;
                Ok(ObjectiveStmt::MinMaxEdge(cost))
            }
            Expr::MaxOver(var, body) => {
                let lateness = lateness_body(body, span)?;
                Ok(ObjectiveStmt::MinMaxLateness(LatenessSpec {
                    var: var.base.clone(),
                    lateness,
                }))
            }
            e => Ok(ObjectiveStmt::Minimize(term(e, costs, span)?)),
        },
        Expr::Max(inner) => match inner.as_ref() {
            Expr::Min(set) => {
                let cost = edge_fold(set, span)?;
                Ok(ObjectiveStmt::MaxMinEdge(cost))
            }
            e => Ok(ObjectiveStmt::Maximize(term(e, costs, span)?)),
        },
        Expr::Rel(ops, terms) if ops.len() == 1 && terms.len() == 2 => {
            let lhs = term(&terms[0], costs, span)?;
            let bound = terms[1].clone();
            match ops[0] {
                RelOp::Le | RelOp::Lt => Ok(ObjectiveStmt::UpperBound { term: lhs, bound }),
                RelOp::Ge | RelOp::Gt => Ok(ObjectiveStmt::LowerBound { term: lhs, bound }),
                _ => Err(unsupported(&obj.expr, span)),
            }
        }
        Expr::Forall { binders, body } => forall_stmt(binders, body, costs, &obj.expr, span),
        e => Err(unsupported(e, span)),
    }
}

/// `max {c(e) : e ∈ E_S}` and its min twin share this shape.
fn edge_fold(set: &Expr, span: SourceSpan) -> Result<String, ResolveError> {
    let fail = || {
        ResolveError::new(
            format!(
                "unsupported objective: expected a fold like max {{c(e) : e ∈ E_S}}, \
                 found '{}'",
                render_expr(set)
            ),
            span,
        )
    };
    let Expr::SetBuilder(head, cond) = set else {
        return Err(fail());
    };
    let Expr::Call(cost, args) = head.as_ref() else {
        return Err(fail());
    };
    let [Expr::Ident(e_var)] = args.as_slice() else {
        return Err(fail());
    };
    let Expr::Rel(ops, terms) = cond.as_ref() else {
        return Err(fail());
    };
    if ops.as_slice() != [RelOp::In] || terms.len() != 2 {
        return Err(fail());
    }
    let Expr::Ident(bound_var) = &terms[0] else {
        return Err(fail());
    };
    if bound_var != e_var || !matches!(&terms[1], Expr::Walk(WalkRef::EdgeSet | WalkRef::EdgeSeq))
    {
        return Err(fail());
    }
    Ok(crate::syntax::token::render_name(cost))
}

/// `max {0, arrival − deadline}` inside a lateness objective.
fn lateness_body(body: &Expr, span: SourceSpan) -> Result<Expr, ResolveError> {
    let Expr::Max(set) = body else {
        return Err(ResolveError::new(
            format!(
                "unsupported objective: expected max {{0, …}} after max_i, found '{}'",
                render_expr(body)
            ),
            span,
        ));
    };
    let Expr::SetLit(elems) = set.as_ref() else {
        return Err(ResolveError::new(
            format!(
                "unsupported objective: expected max {{0, …}}, found '{}'",
                render_expr(set)
            ),
            span,
        ));
    };
    match elems.as_slice() {
        [Expr::Num(zero), late] if *zero == rat(0) => Ok(late.clone()),
        _ => Err(ResolveError::new(
            format!(
                "unsupported objective: lateness must compare against 0, found '{}'",
                render_expr(set)
            ),
            span,
        )),
    }
}

// ----- optimization terms ----------------------------------------------------

fn term(e: &Expr, costs: &[CostSignature], span: SourceSpan) -> Result<ObjTerm, ResolveError> {
    let mut atoms = Vec::new();
    add_terms(e, rat(1), &mut atoms, costs, span)?;
    Ok(ObjTerm { atoms })
}

fn add_terms(
    e: &Expr,
    coef: Rat,
    atoms: &mut Vec<(Rat, TermAtom)>,
    costs: &[CostSignature],
    span: SourceSpan,
) -> Result<(), ResolveError> {
    match e {
        Expr::Bin(crate::syntax::BinOp::Add, a, b) => {
            add_terms(a, coef.clone(), atoms, costs, span)?;
            add_terms(b, coef, atoms, costs, span)
        }
        Expr::Bin(crate::syntax::BinOp::Sub, a, b) => {
            add_terms(a, coef.clone(), atoms, costs, span)?;
            add_terms(b, -coef, atoms, costs, span)
        }
        Expr::Bin(crate::syntax::BinOp::Mul, a, b) => match (a.as_ref(), b.as_ref()) {
            (Expr::Num(n), x) => add_terms(x, coef * n, atoms, costs, span),
            (x, Expr::Num(n)) => add_terms(x, coef * n, atoms, costs, span),
            _ => Err(term_error(e, span)),
        },
        Expr::Neg(x) => add_terms(x, -coef, atoms, costs, span),
        _ => {
            atoms.push((coef, atom(e, costs, span)?));
            Ok(())
        }
    }
}

fn term_error(e: &Expr, span: SourceSpan) -> ResolveError {
    ResolveError::new(
        format!(
            "unsupported objective term '{}'; terms combine c(S), p̄(S), |V_S|, \
             and purchase sums linearly",
            render_expr(e)
        ),
        span,
    )
}

fn atom(e: &Expr, costs: &[CostSignature], span: SourceSpan) -> Result<TermAtom, ResolveError> {
    match e {
        Expr::Star => Ok(TermAtom::Wildcard),
        Expr::Bars(inner) if matches!(inner.as_ref(), Expr::Walk(WalkRef::VisitedSet)) => {
            Ok(TermAtom::CardinalityVisited)
        }
        Expr::Call(name, args) => {
            let [Expr::Walk(WalkRef::Whole | WalkRef::VisitedSeq | WalkRef::VisitedSet)] =
                args.as_slice()
            else {
                return Err(term_error(e, span));
            };
            let mut plain = name.clone();
            plain.bar = false;
            let text = crate::syntax::token::render_name(&plain);
            if name.bar {
                Ok(TermAtom::ComplementCost(text))
            } else {
                Ok(TermAtom::TotalCost(text))
            }
        }
        Expr::Ident(name) => {
            let text = crate::syntax::token::render_name(name);
            if costs.iter().any(|c| c.name == text) {
                Ok(TermAtom::TotalCost(text))
            } else {
                Err(ResolveError::new(
                    format!(
                        "objective term '{text}' does not name a declared cost function"
                    ),
                    span,
                ))
            }
        }
        Expr::Sum { var, lo, hi, body } => purchase_sum(var, lo, hi, body, span),
        _ => Err(term_error(e, span)),
    }
}

/// `Σ_{i=1}^m Σ_{v ∈ S_V} price_i(v) · share_i(v)`.
fn purchase_sum(
    var: &Name,
    lo: &Expr,
    hi: &Expr,
    body: &Expr,
    span: SourceSpan,
) -> Result<TermAtom, ResolveError> {
    let fail = |found: &Expr| {
        ResolveError::new(
            format!(
                "unsupported objective sum; expected \
                 Σ_{{i=1}}^m Σ_{{v ∈ S_V}} price_i(v) · share_i(v), found '{}'",
                render_expr(found)
            ),
            span,
        )
    };
    if !matches!(lo, Expr::Num(n) if *n == rat(1)) {
        return Err(fail(lo));
    }
    let Expr::SumIn {
        var: node_var,
        set,
        body: product,
    } = body
    else {
        return Err(fail(body));
    };
    if !matches!(set.as_ref(), Expr::Walk(WalkRef::VisitedSeq | WalkRef::VisitedSet)) {
        return Err(fail(set));
    }
    let Expr::Bin(crate::syntax::BinOp::Mul, left, right) = product.as_ref() else {
        return Err(fail(product));
    };
    let indexed_call = |e: &Expr| -> Option<String> {
        let Expr::Call(f, args) = e else { return None };
        if f.bar || f.sub.as_deref() != Some(var.base.as_str()) {
            return None;
        }
        match args.as_slice() {
            [Expr::Ident(v)] if v == node_var => Some(f.base.clone()),
            _ => None,
        }
    };
    let (Some(price), Some(share)) = (indexed_call(left), indexed_call(right)) else {
        return Err(fail(product));
    };
    Ok(TermAtom::PriceShareSum {
        index: var.base.clone(),
        hi: render_expr(hi),
        price,
        share,
    })
}

// ----- quantified statements --------------------------------------------------

fn forall_stmt(
    binders: &[(Name, Expr)],
    body: &Expr,
    costs: &[CostSignature],
    whole: &Expr,
    span: SourceSpan,
) -> Result<ObjectiveStmt, ResolveError> {
    match binders {
        [(var, range)] => {
            if let Some(stmt) = demand_met(var, range, body, span)? {
                return Ok(stmt);
            }
            time_window(var, range, body, costs, whole, span)
        }
        [(prod, range), (node, node_set)] => {
            within_availability(prod, range, node, node_set, body, whole, span)
        }
        _ => Err(unsupported(whole, span)),
    }
}

fn range_bounds<'e>(range: &'e Expr) -> Option<(&'e Expr, &'e Expr)> {
    match range {
        Expr::SetRange(lo, hi) => Some((lo, hi)),
        _ => None,
    }
}

/// `∀ i ∈ {1,…,m}: share_i(S_V) ≥ d_i` if the body matches, else None.
fn demand_met(
    var: &Name,
    range: &Expr,
    body: &Expr,
    span: SourceSpan,
) -> Result<Option<ObjectiveStmt>, ResolveError> {
    let Expr::Rel(ops, terms) = body else {
        return Ok(None);
    };
    if ops.as_slice() != [RelOp::Ge] || terms.len() != 2 {
        return Ok(None);
    }
    let Expr::Call(share, args) = &terms[0] else {
        return Ok(None);
    };
    if share.bar || share.sub.as_deref() != Some(var.base.as_str()) {
        return Ok(None);
    }
    if !matches!(
        args.as_slice(),
        [Expr::Walk(WalkRef::VisitedSeq | WalkRef::VisitedSet)]
    ) {
        return Ok(None);
    }
    let Some((lo, hi)) = range_bounds(range) else {
        return Err(ResolveError::new(
            format!(
                "a purchase demand quantifies over a range {{1,…,m}}, found '{}'",
                render_expr(range)
            ),
            span,
        ));
    };
    if !matches!(lo, Expr::Num(n) if *n == rat(1)) {
        return Err(ResolveError::new(
            format!(
                "a purchase demand range starts at 1, found '{}'",
                render_expr(lo)
            ),
            span,
        ));
    }
    Ok(Some(ObjectiveStmt::PurchaseDemand(PurchaseSpec {
        kind: PurchaseKind::DemandMet {
            demand: terms[1].clone(),
        },
        share: share.base.clone(),
        index: var.base.clone(),
        hi: render_expr(hi),
    })))
}

/// `∀ i ∈ {1,…,m} ∀ v ∈ V: share_i(v) ≤ avail_i(v)`.
fn within_availability(
    prod: &Name,
    range: &Expr,
    node: &Name,
    node_set: &Expr,
    body: &Expr,
    whole: &Expr,
    span: SourceSpan,
) -> Result<ObjectiveStmt, ResolveError> {
    let fail = || unsupported(whole, span);
    if !matches!(node_set, Expr::Ident(n) if n.base == "V" && n.sub.is_none()) {
        return Err(fail());
    }
    let Some((lo, hi)) = range_bounds(range) else {
        return Err(fail());
    };
    if !matches!(lo, Expr::Num(n) if *n == rat(1)) {
        return Err(fail());
    }
    let Expr::Rel(ops, terms) = body else {
        return Err(fail());
    };
    if ops.as_slice() != [RelOp::Le] || terms.len() != 2 {
        return Err(fail());
    }
    let indexed_call = |e: &Expr| -> Option<String> {
        let Expr::Call(f, args) = e else { return None };
        if f.bar || f.sub.as_deref() != Some(prod.base.as_str()) {
            return None;
        }
        match args.as_slice() {
            [Expr::Ident(v)] if v == node => Some(f.base.clone()),
            _ => None,
        }
    };
    let (Some(share), Some(avail)) = (indexed_call(&terms[0]), indexed_call(&terms[1])) else {
        return Err(fail());
    };
    Ok(ObjectiveStmt::PurchaseDemand(PurchaseSpec {
        kind: PurchaseKind::WithinAvailability {
            avail,
            node_var: node.base.clone(),
        },
        share,
        index: prod.base.clone(),
        hi: render_expr(hi),
    }))
}

/// Release/deadline chains over walk positions.
fn time_window(
    var: &Name,
    range: &Expr,
    body: &Expr,
    costs: &[CostSignature],
    whole: &Expr,
    span: SourceSpan,
) -> Result<ObjectiveStmt, ResolveError> {
    let Some((lo, hi)) = range_bounds(range) else {
        return Err(unsupported(whole, span));
    };
    if !matches!(lo, Expr::Num(n) if *n == rat(0)) {
        return Err(ResolveError::new(
            format!(
                "a time-window quantifier ranges over positions {{0,…,k}}, found '{}'",
                render_expr(range)
            ),
            span,
        ));
    }
    let Expr::Rel(ops, terms) = body else {
        return Err(unsupported(whole, span));
    };
    if !ops.iter().all(|op| *op == RelOp::Le) {
        return Err(unsupported(whole, span));
    }
    let (release, arrival_expr, deadline) = match terms.as_slice() {
        [a, b] if has_prefix_ref(a) => (None, a, Some(b.clone())),
        [a, b] if has_prefix_ref(b) => (Some(a.clone()), b, None),
        [a, b, c] if has_prefix_ref(b) => (Some(a.clone()), b, Some(c.clone())),
        _ => {
            return Err(ResolveError::new(
                format!(
                    "a time window bounds an arrival-time expression over a walk prefix; \
                     found '{}'",
                    render_expr(body)
                ),
                span,
            ))
        }
    };
    let arrival = arrival_form(arrival_expr, var, costs, span)?;
    Ok(ObjectiveStmt::TimeWindow(TimeWindowSpec {
        var: var.base.clone(),
        hi: render_expr(hi),
        release,
        deadline,
        arrival,
    }))
}

fn has_prefix_ref(e: &Expr) -> bool {
    use Expr::*;
    match e {
        Walk(WalkRef::PrefixLt(_) | WalkRef::PrefixLe(_)) => true,
        Walk(_) | Num(_) | Inf | Star | Ident(_) => false,
        Call(_, args) | SetLit(args) => args.iter().any(has_prefix_ref),
        Bars(x) | Neg(x) | Min(x) | Max(x) | HalfRel(_, x) | MaxOver(_, x) => has_prefix_ref(x),
        Bin(_, a, b) | SetRange(a, b) | SetBuilder(a, b) => {
            has_prefix_ref(a) || has_prefix_ref(b)
        }
        Rel(_, terms) => terms.iter().any(has_prefix_ref),
        Sum { lo, hi, body, .. } => {
            has_prefix_ref(lo) || has_prefix_ref(hi) || has_prefix_ref(body)
        }
        SumIn { set, body, .. } => has_prefix_ref(set) || has_prefix_ref(body),
        Forall { binders, body } => {
            binders.iter().any(|(_, s)| has_prefix_ref(s)) || has_prefix_ref(body)
        }
    }
}

/// Splits an arrival-time sum into travel, waiting, and handling components
/// by the domain and temporal tag of the summed functions.
fn arrival_form(
    e: &Expr,
    var: &Name,
    costs: &[CostSignature],
    span: SourceSpan,
) -> Result<ArrivalForm, ResolveError> {
    let mut travel = None;
    let mut waiting = None;
    let mut handling = None;
    for part in additive_parts(e) {
        let fail = || {
            ResolveError::new(
                format!(
                    "arrival term '{}' not recognized; expected c(S_{{<{v}}}), \
                     w(S_{{≤{v}}}), or h(S_{{<{v}}})",
                    render_expr(part),
                    v = var.base
                ),
                span,
            )
        };
        let Expr::Call(f, args) = part else {
            return Err(fail());
        };
        let name = crate::syntax::token::render_name(f);
        let sig = costs.iter().find(|c| c.name == name);
        match args.as_slice() {
            [Expr::Walk(WalkRef::PrefixLt(idx))] if index_is(idx, var) => {
                let slot = match sig.map(|c| &c.domain) {
                    Some(CostDomain::Nodes) => &mut handling,
                    _ => &mut travel,
                };
                if slot.replace(name).is_some() {
                    return Err(fail());
                }
            }
            [Expr::Walk(WalkRef::PrefixLe(idx))] if index_is(idx, var) => {
                if waiting.replace(name).is_some() {
                    return Err(fail());
                }
            }
            _ => return Err(fail()),
        }
    }
    let Some(travel) = travel else {
        return Err(ResolveError::new(
            format!(
                "arrival expression '{}' lacks a travel-cost term over the strict prefix",
                render_expr(e)
            ),
            span,
        ));
    };
    Ok(ArrivalForm {
        travel,
        waiting,
        handling,
    })
}

fn index_is(idx: &Expr, var: &Name) -> bool {
    matches!(idx, Expr::Ident(n) if n == var)
}

fn additive_parts(e: &Expr) -> Vec<&Expr> {
    let mut out = Vec::new();
    fn walk<'e>(e: &'e Expr, out: &mut Vec<&'e Expr>) {
        if let Expr::Bin(crate::syntax::BinOp::Add, a, b) = e {
            walk(a, out);
            walk(b, out);
        } else {
            out.push(e);
        }
    }
    walk(e, &mut out);
    out
}

#[cfg(test)]
mod tests {
    use crate::semantics::types::{
        ArrivalForm, ObjectiveStmt, PurchaseKind, PurchaseSpec, TermAtom, TimeWindowSpec,
    };
    use crate::semantics::{resolve, ResolvedVariant};
    use crate::syntax::parse;

    fn variant(text: &str) -> ResolvedVariant {
        let ast = parse(text, None).expect("parses");
        resolve(&ast).expect("resolves").variant
    }

    fn objective_err(text: &str) -> String {
        let ast = parse(text, None).expect("parses");
        resolve(&ast).expect_err("must not classify").msg
    }

    #[test]
    fn linear_sums_and_complements() {
        let v = variant(
            "⟨ =1 ∣ =1; always ∣ start; circuit; complete; directed ∣ c : E ↦ ℝ≥0; \
             w : V ↦ ℝ≥0; h : V ↦ ℝ≥0 ∣ min c(S) + w(S) + h(S) ⟩",
        );
        match &v.objectives[0] {
            ObjectiveStmt::Minimize(term) => {
                let names: Vec<_> = term
                    .atoms
                    .iter()
                    .map(|(_, a)| match a {
                        TermAtom::TotalCost(n) => n.as_str(),
                        other => panic!("expected plain totals, got {other:?}"),
                    })
                    .collect();
                assert_eq!(names, ["c", "w", "h"]);
            }
            other => panic!("expected a minimization, got {other:?}"),
        }

        let v = variant(
            "⟨ =1 ∣ ≥0; once ∣ start; end; complete; directed ∣ c : E ↦ ℝ≥0; p : V ↦ ℝ≥0 ∣ \
             min c(S) + p̄(S) ⟩",
        );
        match &v.objectives[0] {
            ObjectiveStmt::Minimize(term) => {
                assert_eq!(term.atoms.len(), 2);
                assert_eq!(term.atoms[1].1, TermAtom::ComplementCost("p".into()));
            }
            other => panic!("expected a minimization, got {other:?}"),
        }
    }

    #[test]
    fn bottleneck_folds() {
        let v = variant(
            "⟨ =1 ∣ =1 ∣ circuit; complete; undirected ∣ c : E ↦ ℝ≥0, (triangle) ∣ \
             min max {c(e) : e ∈ E_S} ⟩",
        );
        assert_eq!(v.objectives, vec![ObjectiveStmt::MinMaxEdge("c".into())]);

        let v = variant(
            "⟨ =1 ∣ =1 ∣ circuit; complete; undirected ∣ c : E ↦ ℝ≥0 ∣ \
             max min {c(e) : e ∈ E_S} ⟩",
        );
        assert_eq!(v.objectives, vec![ObjectiveStmt::MaxMinEdge("c".into())]);
    }

    #[test]
    fn cardinality_and_bounds() {
        let v = variant(
            "⟨ =1 ∣ ≥0; ≤once ∣ start; undirected ∣ c : E ↦ ℝ≥0, metric; q : V ↦ ℝ≥0 ∣ \
             min c(S); q(S) ≥ b ⟩",
        );
        assert!(matches!(v.objectives[0], ObjectiveStmt::Minimize(_)));
        match &v.objectives[1] {
            ObjectiveStmt::LowerBound { term, .. } => {
                assert_eq!(term.single(), Some(&TermAtom::TotalCost("q".into())));
            }
            other => panic!("expected a lower bound, got {other:?}"),
        }

        let v = variant(
            "⟨ =1 ∣ ≥0; ≤once ∣ start; undirected ∣ c : E ↦ ℝ≥0, metric ∣ \
             max |V_S|; c(S) ≤ b ⟩",
        );
        match &v.objectives[0] {
            ObjectiveStmt::Maximize(term) => {
                assert_eq!(term.single(), Some(&TermAtom::CardinalityVisited));
            }
            other => panic!("expected a maximization, got {other:?}"),
        }
        assert!(matches!(v.objectives[1], ObjectiveStmt::UpperBound { .. }));
    }

    #[test]
    fn purchase_objectives() {
        let v = variant(
            "⟨ =1 ∣ ≤1; always ∣ complete; directed ∣ c : E ↦ ℝ>0; \
             {avail_i}_{i=1}^m : V ↦ {0, ∞}, partial; {price_i}_{i=1}^m : V ↦ ℝ>0 ∣ \
             ∀ i ∈ {1,…,m}: share_i(S_V) ≥ d_i; \
             ∀ i ∈ {1,…,m} ∀ v ∈ V: share_i(v) ≤ avail_i(v); \
             min c(S) + Σ_{i=1}^m Σ_{v ∈ S_V} price_i(v) · share_i(v) ⟩",
        );
        assert_eq!(v.objectives.len(), 3);
        match &v.objectives[0] {
            ObjectiveStmt::PurchaseDemand(PurchaseSpec {
                kind: PurchaseKind::DemandMet { .. },
                share,
                ..
            }) => assert_eq!(share, "share"),
            other => panic!("expected a demand constraint, got {other:?}"),
        }
        match &v.objectives[1] {
            ObjectiveStmt::PurchaseDemand(PurchaseSpec {
                kind: PurchaseKind::WithinAvailability { avail, .. },
                ..
            }) => assert_eq!(avail, "avail"),
            other => panic!("expected an availability constraint, got {other:?}"),
        }
        match &v.objectives[2] {
            ObjectiveStmt::Minimize(term) => {
                assert!(term
                    .atoms
                    .iter()
                    .any(|(_, a)| matches!(a, TermAtom::PriceShareSum { price, .. } if price == "price")));
            }
            other => panic!("expected a minimization, got {other:?}"),
        }
    }

    #[test]
    fn time_window_chains() {
        let v = variant(
            "⟨ =1 ∣ =1; always ∣ start; circuit; complete; directed ∣ \
             c : E ↦ ℝ≥0; w : V ↦ ℝ≥0, waiting; h : V ↦ ℝ≥0 ∣ \
             ∀ i ∈ {0,…,k}: r(v_i) ≤ c(S_{<i}) + w(S_{≤i}) + h(S_{<i}) ≤ d(v_i) − h(S_i); \
             min c(S) + w(S) + h(S) ⟩",
        );
        match &v.objectives[0] {
            ObjectiveStmt::TimeWindow(TimeWindowSpec {
                release,
                deadline,
                arrival: ArrivalForm {
                    travel,
                    waiting,
                    handling,
                },
                ..
            }) => {
                assert!(release.is_some());
                assert!(deadline.is_some());
                assert_eq!(travel, "c");
                assert_eq!(waiting.as_deref(), Some("w"));
                assert_eq!(handling.as_deref(), Some("h"));
            }
            other => panic!("expected a time window, got {other:?}"),
        }

        let v = variant(
            "⟨ =1 ∣ =1; always ∣ start; circuit; complete; undirected ∣ c : E ↦ ℝ≥0, metric ∣ \
             ∀ i ∈ {0,…,n}: c(S_{<i}) ≤ d(v_i); min c(S) ⟩",
        );
        match &v.objectives[0] {
            ObjectiveStmt::TimeWindow(tw) => {
                assert!(tw.release.is_none());
                assert!(tw.deadline.is_some());
                assert!(tw.arrival.waiting.is_none());
            }
            other => panic!("expected a time window, got {other:?}"),
        }

        let v = variant(
            "⟨ =1 ∣ ≥0; ≤once ∣ start; undirected ∣ c : E ↦ ℝ≥0, metric ∣ \
             ∀ i ∈ {0,…,k}: r(v_i) ≤ c(S_{<i}) ≤ d; max |V_S| ⟩",
        );
        match &v.objectives[0] {
            ObjectiveStmt::TimeWindow(tw) => {
                assert!(tw.release.is_some());
                assert!(tw.deadline.is_some());
            }
            other => panic!("expected a time window, got {other:?}"),
        }

        let v = variant(
            "⟨ =1 ∣ ≥0; ≤once ∣ start; undirected; tree ∣ c : E ↦ ℤ≥0, metric; p : V ↦ ℤ>0 ∣ \
             ∀ i ∈ {0,…,k}: c(S_{<i}) ≤ (1 + 2ε) · d(v_i); max p(S) ⟩",
        );
        assert!(matches!(v.objectives[0], ObjectiveStmt::TimeWindow(_)));
    }

    #[test]
    fn lateness_fold() {
        let v = variant(
            "⟨ =1 ∣ =1; always ∣ start; end; path; undirected ∣ \
             c : E ↦ ℝ≥0; h : V ↦ ℝ≥0 ∣ \
             min max_i max {0, c(S_{<i}) + h(S_{<i}) − d(v_i)} ⟩",
        );
        assert!(matches!(v.objectives[0], ObjectiveStmt::MinMaxLateness(_)));
    }

    #[test]
    fn wildcard_objective_is_a_template() {
        let v = variant("⟨ =1 ∣ =1 ∣ circuit; complete; undirected ∣ c : E ↦ ℝ≥0 ∣ min * ⟩");
        match &v.objectives[0] {
            ObjectiveStmt::Minimize(term) => assert!(term.is_wildcard()),
            other => panic!("expected a minimization, got {other:?}"),
        }
        assert!(v.is_template());
    }

    #[test]
    fn unsupported_objectives_name_the_subtree() {
        let err = objective_err(
            "⟨ =1 ∣ =1 ∣ circuit; complete; undirected ∣ c : E ↦ ℝ≥0 ∣ min c(S) · c(S) ⟩",
        );
        assert!(err.contains("unsupported objective") || err.contains("c(S) · c(S)"), "got: {err}");

        let err = objective_err(
            "⟨ =1 ∣ =1 ∣ circuit; complete; undirected ∣ c : E ↦ ℝ≥0 ∣ b ≤ c(S) ≤ q ⟩",
        );
        assert!(err.contains("unsupported objective"), "got: {err}");
        assert!(err.contains("c(S)"), "got: {err}");
    }
}
