//! Consistency checks that go beyond resolution: every function symbol an
//! objective applies must be housed somewhere, and parameterized tags must
//! carry the right number of arguments.

use std::collections::HashSet;
use std::fmt;

use super::types::{CostDomain, PropertyTag, ResolvedVariant, Spec, TemporalTag};
use crate::syntax::{render_expr, Expr};

/// A non-fatal finding about a resolved variant.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Diagnostic {
    pub msg: String,
}

impl fmt::Display for Diagnostic {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.msg)
    }
}

/// Function symbols that need no declaration: release and deadline tables,
/// purchase shares held by the solution.
const BUILTIN_FNS: [&str; 3] = ["r", "d", "share"];

/// Checks a resolved variant for unhoused symbols and arity errors.
pub fn check_wellformed(v: &ResolvedVariant) -> Vec<Diagnostic> {
    let mut diags = Vec::new();
    let declared: HashSet<&str> = v.costs.iter().map(|c| c.name.as_str()).collect();
    let housed = |base: &str| declared.contains(base) || BUILTIN_FNS.contains(&base);

    for obj in &v.objective_src {
        scan(obj, &housed, &mut diags);
    }

    if let Some(Spec::Is(cov)) = &v.covering {
        match v.cost(&cov.cost) {
            None => diags.push(Diagnostic {
                msg: format!(
                    "covering measures distance under '{}', which no cost declaration houses",
                    cov.cost
                ),
            }),
            Some(sig) if sig.domain != CostDomain::Edges => diags.push(Diagnostic {
                msg: format!(
                    "covering measures shortest paths under '{}', which is not an edge cost",
                    cov.cost
                ),
            }),
            Some(_) => {}
        }
    }

    for sig in &v.costs {
        if let Some(spec) = &sig.property {
            for tag in spec_members(spec) {
                if let PropertyTag::Grid(dims) = tag {
                    if dims.len() != 2 {
                        diags.push(Diagnostic {
                            msg: format!(
                                "grid takes two parameters, rows and columns; '{}' gives {}",
                                sig.name,
                                dims.len()
                            ),
                        });
                    }
                }
            }
        }
        if let Some(spec) = &sig.temporal {
            for tag in spec_members(spec) {
                let (word, args) = match tag {
                    TemporalTag::CostZone(args) => ("costzone", args),
                    TemporalTag::PosZone(args) => ("poszone", args),
                    _ => continue,
                };
                if args.len() != 1 {
                    diags.push(Diagnostic {
                        msg: format!(
                            "{word} takes one parameter, the zone count; '{}' gives {}",
                            sig.name,
                            args.len()
                        ),
                    });
                }
            }
        }
    }

    diags
}

fn spec_members<T>(spec: &Spec<T>) -> impl Iterator<Item = &T> {
    match spec {
        Spec::Is(t) => std::slice::from_ref(t).iter(),
        Spec::Any => [].iter(),
        Spec::OneOf(ts) => ts.iter(),
    }
}

fn scan(e: &Expr, housed: &dyn Fn(&str) -> bool, diags: &mut Vec<Diagnostic>) {
    match e {
        Expr::Call(name, args) => {
            if !housed(&name.base) {
                diags.push(Diagnostic {
                    msg: format!(
                        "the objective applies '{}' but no cost declaration or instance \
                         parameter houses it",
                        render_expr(&Expr::Ident(name.clone()))
                    ),
                });
            }
            for a in args {
                scan(a, housed, diags);
            }
        }
        Expr::Num(_) | Expr::Inf | Expr::Star | Expr::Ident(_) => {}
        Expr::Walk(w) => match w {
            crate::syntax::WalkRef::PrefixLt(idx)
            | crate::syntax::WalkRef::PrefixLe(idx)
            | crate::syntax::WalkRef::At(idx) => scan(idx, housed, diags),
            _ => {}
        },
        Expr::Bars(inner) | Expr::Neg(inner) | Expr::Min(inner) | Expr::Max(inner) => {
            scan(inner, housed, diags)
        }
        Expr::Bin(_, a, b) => {
            scan(a, housed, diags);
            scan(b, housed, diags);
        }
        Expr::Rel(_, terms) => {
            for t in terms {
                scan(t, housed, diags);
            }
        }
        Expr::HalfRel(_, inner) => scan(inner, housed, diags),
        Expr::SetLit(items) => {
            for i in items {
                scan(i, housed, diags);
            }
        }
        Expr::SetRange(a, b) => {
            scan(a, housed, diags);
            scan(b, housed, diags);
        }
        Expr::SetBuilder(head, cond) => {
            scan(head, housed, diags);
            scan(cond, housed, diags);
        }
        Expr::MaxOver(_, body) => scan(body, housed, diags),
        Expr::Sum { lo, hi, body, .. } => {
            scan(lo, housed, diags);
            scan(hi, housed, diags);
            scan(body, housed, diags);
        }
        Expr::SumIn { set, body, .. } => {
            scan(set, housed, diags);
            scan(body, housed, diags);
        }
        Expr::Forall { binders, body } => {
            for (_, over) in binders {
                scan(over, housed, diags);
            }
            scan(body, housed, diags);
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::semantics::resolve;
    use crate::syntax::parse;

    fn diags(text: &str) -> Vec<Diagnostic> {
        let ast = parse(text, None).expect("parses");
        check_wellformed(&resolve(&ast).expect("resolves").variant)
    }

    #[test]
    fn unhoused_function_symbols_are_flagged() {
        let ds = diags("⟨ =1 ∣ =1 ∣ circuit; complete; undirected ∣ c : E ↦ ℝ≥0 ∣ min q(S) ⟩");
        assert_eq!(ds.len(), 1);
        assert!(ds[0].msg.contains("'q'"), "got: {}", ds[0].msg);
        assert!(ds[0].msg.contains("houses"), "got: {}", ds[0].msg);

        let ds = diags(
            "⟨ =1 ∣ ≥0; ≤once ∣ start; undirected ∣ c : E ↦ ℝ≥0, metric; q : V ↦ ℝ≥0 ∣ \
             min c(S); q(S) ≥ b ⟩",
        );
        assert!(ds.is_empty(), "got: {ds:?}");
    }

    #[test]
    fn release_deadline_and_share_tables_are_builtin() {
        let ds = diags(
            "⟨ =1 ∣ =1; always ∣ start; circuit; complete; directed ∣ \
             c : E ↦ ℝ≥0; w : V ↦ ℝ≥0, waiting; h : V ↦ ℝ≥0 ∣ \
             ∀ i ∈ {0,…,k}: r(v_i) ≤ c(S_{<i}) + w(S_{≤i}) + h(S_{<i}) ≤ d(v_i) − h(S_i); \
             min c(S) + w(S) + h(S) ⟩",
        );
        assert!(ds.is_empty(), "got: {ds:?}");

        let ds = diags(
            "⟨ =1 ∣ ≤1; always ∣ complete; directed ∣ c : E ↦ ℝ>0; \
             {avail_i}_{i=1}^m : V ↦ {0, ∞}, partial; {price_i}_{i=1}^m : V ↦ ℝ>0 ∣ \
             ∀ i ∈ {1,…,m}: share_i(S_V) ≥ d_i; \
             ∀ i ∈ {1,…,m} ∀ v ∈ V: share_i(v) ≤ avail_i(v); \
             min c(S) + Σ_{i=1}^m Σ_{v ∈ S_V} price_i(v) · share_i(v) ⟩",
        );
        assert!(ds.is_empty(), "got: {ds:?}");
    }

    #[test]
    fn direction_and_symmetry_do_not_conflict() {
        let ds = diags(
            "⟨ =1 ∣ =1 ∣ circuit; complete; directed ∣ c : E ↦ ℝ≥0, metric ∣ min c(S) ⟩",
        );
        assert!(ds.is_empty(), "got: {ds:?}");
    }

    #[test]
    fn tag_arity_is_checked() {
        let ds = diags(
            "⟨ =1 ∣ =1 ∣ circuit; complete; undirected ∣ c : E ↦ ℝ≥0, grid(4) ∣ min c(S) ⟩",
        );
        assert_eq!(ds.len(), 1);
        assert!(ds[0].msg.contains("grid takes two parameters"), "got: {}", ds[0].msg);

        let ds = diags(
            "⟨ =1 ∣ =1 ∣ circuit; complete; undirected ∣ c : E ↦ ℝ≥0, grid(m, n) ∣ min c(S) ⟩",
        );
        assert!(ds.is_empty(), "got: {ds:?}");

        let ds = diags(
            "⟨ =1 ∣ =1 ∣ circuit; complete; undirected ∣ c : E ↦ ℝ≥0, costzone(2, 3) ∣ \
             min c(S) ⟩",
        );
        assert_eq!(ds.len(), 1);
        assert!(ds[0].msg.contains("costzone takes one parameter"), "got: {}", ds[0].msg);
    }

    #[test]
    fn covering_must_reference_a_declared_edge_cost() {
        let ds = diags(
            "⟨ =1 ∣ =1; all(g, ≤ b) ∣ circuit; complete; undirected ∣ c : E ↦ ℝ≥0 ∣ min c(S) ⟩",
        );
        assert_eq!(ds.len(), 1);
        assert!(ds[0].msg.contains("'g'"), "got: {}", ds[0].msg);

        let ds = diags(
            "⟨ =1 ∣ =1; all(p, ≤ b) ∣ circuit; complete; undirected ∣ c : E ↦ ℝ≥0; \
             p : V ↦ ℝ≥0 ∣ min c(S) ⟩",
        );
        assert_eq!(ds.len(), 1);
        assert!(ds[0].msg.contains("not an edge cost"), "got: {}", ds[0].msg);

        let ds = diags(
            "⟨ =1 ∣ =1; all(c, ≤ b) ∣ circuit; complete; undirected ∣ c : E ↦ ℝ≥0, metric ∣ \
             min c(S) ⟩",
        );
        assert!(ds.is_empty(), "got: {ds:?}");
    }
}
