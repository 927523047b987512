//! Attribute resolution: binding parse-tree attributes and values to the
//! semantic slots of a [`ResolvedVariant`].
//!
//! Named attributes bind directly. Unnamed shorthand values bind by value
//! form, which is unambiguous within each field: numeric relations in β can
//! only be traversal demands, word values name the attribute they belong to.
//! Bare boolean names set True; absent booleans read False.

use thiserror::Error;

use super::objective;
use super::registry;
use super::types::{
    ClusterKind, ClusterSequence, ClusterSpec, CostDomain, CostSignature, CoverScope,
    CoveringSpec, EdgeType, FamilyFlag, FamilyRange, GraphType, GroupKind, GroupSpec, GroupVisit,
    MetricParam, PrecedenceKind, PropertyTag, ResolvedVariant, Spec, TemporalTag, TourSpec,
    TravelerCount, TraversalCount, TraversalSpec, VisitSpec,
};
use crate::rat::rat;
use crate::syntax::token::render_name;
use crate::syntax::{
    render_expr, Attribute, CostAttr, CostFn, Expr, FieldKind, Name, RelOp, SourceSpan, Value,
    ValueAlt, VariantAst,
};

#[derive(Clone, Debug, Error, PartialEq, Eq)]
#[error("{msg}")]
pub struct ResolveError {
    pub msg: String,
    pub span: SourceSpan,
}

impl ResolveError {
    pub(crate) fn new(msg: impl Into<String>, span: SourceSpan) -> ResolveError {
        ResolveError {
            msg: msg.into(),
            span,
        }
    }
}

/// A non-fatal observation made while resolving.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ResolveNote {
    pub msg: String,
    pub span: SourceSpan,
}

#[derive(Clone, Debug)]
pub struct Resolution {
    pub variant: ResolvedVariant,
    pub notes: Vec<ResolveNote>,
}

pub fn resolve(ast: &VariantAst) -> Result<Resolution, ResolveError> {
    let mut r = Resolver::default();
    for a in &ast.alpha {
        r.alpha_attr(a)?;
    }
    for a in &ast.beta {
        r.beta_attr(a)?;
    }
    for a in &ast.gamma {
        r.gamma_attr(a)?;
    }
    let mut costs = Vec::new();
    for cf in &ast.delta {
        costs.push(resolve_cost(cf)?);
    }
    let objectives = objective::classify(&ast.epsilon, &costs)?;

    let traveler = r.traveler.ok_or_else(|| {
        ResolveError::new("the α field needs a count attribute", ast.span)
    })?;
    let variant = ResolvedVariant {
        traveler,
        traversals: r.traversals,
        visits: r.visits,
        group: r.group,
        covering: r.covering,
        tour: TourSpec {
            start: r.start.unwrap_or(Spec::Is(false)),
            end: r.end.unwrap_or(Spec::Is(false)),
            circuit: r.circuit.unwrap_or(Spec::Is(false)),
            graphtype: r.graphtype.unwrap_or(Spec::Is(GraphType::Arbitrary)),
            edgetype: r.edgetype,
            precedences: r.precedences,
            cluster: r.cluster,
            family_flags: r.family_flags,
        },
        costs,
        objectives,
        objective_src: ast.epsilon.iter().map(|o| o.expr.clone()).collect(),
        extension: ast.extension.clone(),
        annotations: ast.annotations.clone(),
    };
    Ok(Resolution {
        variant,
        notes: r.notes,
    })
}

#[derive(Default)]
struct Resolver {
    traveler: Option<Spec<TravelerCount>>,
    traversals: Option<Spec<TraversalSpec>>,
    visits: Option<Spec<VisitSpec>>,
    group: Option<Spec<GroupSpec>>,
    covering: Option<Spec<CoveringSpec>>,
    start: Option<Spec<bool>>,
    end: Option<Spec<bool>>,
    circuit: Option<Spec<bool>>,
    graphtype: Option<Spec<GraphType>>,
    edgetype: Option<Spec<EdgeType>>,
    precedences: Option<Spec<PrecedenceKind>>,
    cluster: Option<Spec<ClusterSpec>>,
    family_flags: Vec<FamilyFlag>,
    notes: Vec<ResolveNote>,
}

fn set_slot<T>(
    slot: &mut Option<T>,
    value: T,
    what: &str,
    span: SourceSpan,
) -> Result<(), ResolveError> {
    if slot.is_some() {
        return Err(ResolveError::new(format!("duplicate {what} attribute"), span));
    }
    *slot = Some(value);
    Ok(())
}

/// Maps value alternatives through `f`, turning a lone `*` into `Any`.
fn spec_from<T>(
    value: &Value,
    span: SourceSpan,
    mut f: impl FnMut(&ValueAlt) -> Result<T, ResolveError>,
) -> Result<Spec<T>, ResolveError> {
    if value.alts.len() == 1 {
        let alt = &value.alts[0];
        if matches!(alt.expr, Expr::Star) {
            return Ok(Spec::Any);
        }
        return Ok(Spec::Is(f(alt)?));
    }
    let mut out = Vec::new();
    for alt in &value.alts {
        if matches!(alt.expr, Expr::Star) {
            return Err(ResolveError::new(
                "a wildcard cannot appear among \"or\" alternatives",
                span,
            ));
        }
        out.push(f(alt)?);
    }
    Ok(Spec::OneOf(out))
}

fn is_plain(n: &Name) -> bool {
    n.sub.is_none() && !n.bar
}

fn bool_word(e: &Expr) -> Option<bool> {
    if let Expr::Ident(n) = e {
        if is_plain(n) {
            match n.base.as_str() {
                "True" | "true" => return Some(true),
                "False" | "false" => return Some(false),
                _ => {}
            }
        }
    }
    None
}

fn bool_alt(alt: &ValueAlt, what: &str, span: SourceSpan) -> Result<bool, ResolveError> {
    if !matches!(alt.rel, None | Some(RelOp::Eq)) {
        return Err(ResolveError::new(
            format!("{what} takes a boolean, not a relation"),
            span,
        ));
    }
    bool_word(&alt.expr).ok_or_else(|| {
        ResolveError::new(
            format!("{what} must be True or False, found '{}'", render_expr(&alt.expr)),
            span,
        )
    })
}

impl Resolver {
    // ----- α ---------------------------------------------------------------

    fn alpha_attr(&mut self, a: &Attribute) -> Result<(), ResolveError> {
        if !a.quant.is_empty() {
            return Err(ResolveError::new(
                "quantified α attributes are not supported",
                a.span,
            ));
        }
        match (&a.name, &a.value) {
            (Some(n), Some(v)) if is_plain(n) && n.base == "count" => {
                let spec = spec_from(v, a.span, |alt| traveler_alt(alt, a.span))?;
                set_slot(&mut self.traveler, spec, "α count", a.span)
            }
            (Some(n), _) => Err(ResolveError::new(
                format!(
                    "unknown α attribute '{}'; α supports: count",
                    render_name(n)
                ),
                a.span,
            )),
            (None, Some(v)) => {
                let spec = spec_from(v, a.span, |alt| traveler_alt(alt, a.span))?;
                set_slot(&mut self.traveler, spec, "α count", a.span)
            }
            (None, None) => unreachable!("parser yields a name or a value"),
        }
    }

    // ----- β ---------------------------------------------------------------

    fn beta_attr(&mut self, a: &Attribute) -> Result<(), ResolveError> {
        if !a.quant.is_empty() {
            return Err(ResolveError::new(
                "quantified β attributes are not supported",
                a.span,
            ));
        }
        match (&a.name, &a.value) {
            (Some(n), Some(v)) if is_plain(n) => match n.base.as_str() {
                "traversals" => {
                    let spec = spec_from(v, a.span, |alt| traversal_alt(alt, a.span))?;
                    set_slot(&mut self.traversals, spec, "β traversals", a.span)
                }
                "visits" => self.visits_value(v, a.span),
                "group" => {
                    let spec = spec_from(v, a.span, |alt| group_alt(alt, a.span))?;
                    set_slot(&mut self.group, spec, "β group", a.span)
                }
                "covering" => {
                    let spec = spec_from(v, a.span, |alt| covering_alt(alt, a.span))?;
                    set_slot(&mut self.covering, spec, "β covering", a.span)
                }
                _ => Err(unknown_attr(FieldKind::Beta, n, a.span)),
            },
            (Some(n), Some(_)) => Err(unknown_attr(FieldKind::Beta, n, a.span)),
            (Some(n), None) => self.beta_bare(n, a.span),
            (None, Some(v)) => self.beta_value(v, a.span),
            (None, None) => unreachable!(),
        }
    }

    /// Bare β words: `once` and `always` name visit demands; a subscripted
    /// name like `d_v` is a per-node traversal demand.
    fn beta_bare(&mut self, n: &Name, span: SourceSpan) -> Result<(), ResolveError> {
        if is_plain(n) {
            let visit = match n.base.as_str() {
                "always" => Some(VisitSpec::Always),
                "once" => Some(VisitSpec::Once),
                _ => None,
            };
            if let Some(v) = visit {
                return set_slot(&mut self.visits, Spec::Is(v), "β visits", span);
            }
        }
        if let (Some(_), false) = (&n.sub, n.bar) {
            let spec = TraversalSpec {
                rel: RelOp::Eq,
                count: TraversalCount::PerNode(n.base.clone()),
                among: None,
            };
            return set_slot(&mut self.traversals, Spec::Is(spec), "β traversals", span);
        }
        Err(unknown_attr(FieldKind::Beta, n, span))
    }

    /// Unnamed β value: route by form. All alternatives must land on the
    /// same attribute.
    fn beta_value(&mut self, v: &Value, span: SourceSpan) -> Result<(), ResolveError> {
        #[derive(PartialEq, Clone, Copy)]
        enum Target {
            Traversals,
            Visits,
            Group,
            Covering,
        }
        let classify = |alt: &ValueAlt| -> Target {
            let word = match &alt.expr {
                Expr::Ident(n) if is_plain(n) => Some(n.base.as_str()),
                Expr::Call(n, _) if is_plain(n) => Some(n.base.as_str()),
                _ => None,
            };
            match word {
                Some("always" | "once") => Target::Visits,
                Some("partition" | "cover" | "bipartition" | "k-partition") => Target::Group,
                Some("all" | "subset") => Target::Covering,
                _ => Target::Traversals,
            }
        };
        let target = classify(&v.alts[0]);
        if v.alts.iter().any(|alt| classify(alt) != target) {
            return Err(ResolveError::new(
                "\"or\" alternatives must all belong to one attribute",
                span,
            ));
        }
        match target {
            Target::Traversals => {
                let spec = spec_from(v, span, |alt| traversal_alt(alt, span))?;
                set_slot(&mut self.traversals, spec, "β traversals", span)
            }
            Target::Visits => {
                let spec = spec_from(v, span, |alt| visits_alt(alt, span))?;
                self.note_at_most_once(&spec, span);
                set_slot(&mut self.visits, spec, "β visits", span)
            }
            Target::Group => {
                let spec = spec_from(v, span, |alt| group_alt(alt, span))?;
                set_slot(&mut self.group, spec, "β group", span)
            }
            Target::Covering => {
                let spec = spec_from(v, span, |alt| covering_alt(alt, span))?;
                set_slot(&mut self.covering, spec, "β covering", span)
            }
        }
    }

    /// Named `visits`: word values stay visit demands; numeric values are
    /// traversal demands in disguise and are recorded as such.
    fn visits_value(&mut self, v: &Value, span: SourceSpan) -> Result<(), ResolveError> {
        let numeric = v.alts.iter().all(|alt| {
            matches!(
                &alt.expr,
                Expr::Num(_) | Expr::Rel(..) | Expr::Call(..)
            ) || matches!(&alt.expr, Expr::Ident(n) if visits_word(n).is_none())
        });
        if numeric {
            let spec = spec_from(v, span, |alt| traversal_alt(alt, span))?;
            set_slot(&mut self.traversals, spec, "β traversals", span)?;
            self.notes.push(ResolveNote {
                msg: "numeric 'visits' value recorded as traversals, the int-valued β attribute"
                    .into(),
                span,
            });
            Ok(())
        } else {
            let spec = spec_from(v, span, |alt| visits_alt(alt, span))?;
            self.note_at_most_once(&spec, span);
            set_slot(&mut self.visits, spec, "β visits", span)
        }
    }

    fn note_at_most_once(&mut self, spec: &Spec<VisitSpec>, span: SourceSpan) {
        if spec.admits(|v| *v == VisitSpec::AtMostOnce) {
            self.notes.push(ResolveNote {
                msg: "visits ≤once is read as: every traversed node is visited at most once"
                    .into(),
                span,
            });
        }
    }

    // ----- γ ---------------------------------------------------------------

    fn gamma_attr(&mut self, a: &Attribute) -> Result<(), ResolveError> {
        if !a.quant.is_empty() {
            return self.gamma_family_flag(a);
        }
        match (&a.name, &a.value) {
            (Some(n), Some(v)) if is_plain(n) => match n.base.as_str() {
                "start" => {
                    let spec = spec_from(v, a.span, |alt| bool_alt(alt, "start", a.span))?;
                    set_slot(&mut self.start, spec, "γ start", a.span)
                }
                "end" => {
                    let spec = spec_from(v, a.span, |alt| bool_alt(alt, "end", a.span))?;
                    set_slot(&mut self.end, spec, "γ end", a.span)
                }
                "circuit" => {
                    let spec = spec_from(v, a.span, |alt| bool_alt(alt, "circuit", a.span))?;
                    set_slot(&mut self.circuit, spec, "γ circuit", a.span)
                }
                "graphtype" => {
                    let spec = spec_from(v, a.span, |alt| graphtype_alt(alt, a.span))?;
                    set_slot(&mut self.graphtype, spec, "γ graphtype", a.span)
                }
                "edgetype" => {
                    let spec = spec_from(v, a.span, |alt| edgetype_alt(alt, a.span))?;
                    set_slot(&mut self.edgetype, spec, "γ edgetype", a.span)
                }
                "precedences" => {
                    let spec = spec_from(v, a.span, |alt| precedences_alt(alt, a.span))?;
                    set_slot(&mut self.precedences, spec, "γ precedences", a.span)
                }
                "cluster" => {
                    let spec = spec_from(v, a.span, |alt| cluster_alt(alt, a.span))?;
                    set_slot(&mut self.cluster, spec, "γ cluster", a.span)
                }
                _ => {
                    // Value words double as boolean attribute names in
                    // longhand: "complete = True".
                    if gamma_word(n, &[]).is_some() {
                        if v.alts.len() == 1 {
                            if let Some(b) =
                                bool_word(&v.alts[0].expr).filter(|_| {
                                    matches!(v.alts[0].rel, None | Some(RelOp::Eq))
                                })
                            {
                                if b {
                                    return self.apply_gamma_word(n, &[], a.span);
                                }
                                return Ok(());
                            }
                        }
                        return Err(ResolveError::new(
                            format!(
                                "'{}' names a γ value; as an attribute it only takes True or False",
                                render_name(n)
                            ),
                            a.span,
                        ));
                    }
                    Err(unknown_attr(FieldKind::Gamma, n, a.span))
                }
            },
            (Some(n), Some(_)) => Err(unknown_attr(FieldKind::Gamma, n, a.span)),
            (Some(n), None) => {
                if is_plain(n) {
                    match n.base.as_str() {
                        "start" => {
                            return set_slot(&mut self.start, Spec::Is(true), "γ start", a.span)
                        }
                        "end" => return set_slot(&mut self.end, Spec::Is(true), "γ end", a.span),
                        "circuit" => {
                            return set_slot(
                                &mut self.circuit,
                                Spec::Is(true),
                                "γ circuit",
                                a.span,
                            )
                        }
                        _ => {}
                    }
                    if gamma_word(n, &[]).is_some() {
                        return self.apply_gamma_word(n, &[], a.span);
                    }
                }
                Err(unknown_attr(FieldKind::Gamma, n, a.span))
            }
            (None, Some(v)) => self.gamma_value(v, a.span),
            (None, None) => unreachable!(),
        }
    }

    /// Quantified boolean families, as in `∀ t ∈ T: circuit_t = True`. A
    /// bare name without a value reads as True, like other shorthand words.
    fn gamma_family_flag(&mut self, a: &Attribute) -> Result<(), ResolveError> {
        let Some(name) = &a.name else {
            return Err(ResolveError::new(
                "a quantified γ attribute needs a name and a boolean value",
                a.span,
            ));
        };
        if a.quant.len() != 1 {
            return Err(ResolveError::new(
                "a quantified γ attribute takes exactly one binder",
                a.span,
            ));
        }
        let (var, set) = &a.quant[0];
        let Some(sub) = &name.sub else {
            return Err(ResolveError::new(
                format!(
                    "quantified attribute '{}' needs a subscript matching the binder",
                    render_name(name)
                ),
                a.span,
            ));
        };
        if sub != &var.base {
            return Err(ResolveError::new(
                format!(
                    "subscript '{sub}' does not match the binder variable '{}'",
                    var.base
                ),
                a.span,
            ));
        }
        if !matches!(name.base.as_str(), "start" | "end" | "circuit") {
            return Err(ResolveError::new(
                format!(
                    "unknown quantified γ attribute '{}'; supported: start, end, circuit",
                    render_name(name)
                ),
                a.span,
            ));
        }
        let b = match &a.value {
            None => true,
            Some(value) if value.alts.len() == 1 => bool_alt(&value.alts[0], &name.base, a.span)?,
            Some(_) => {
                return Err(ResolveError::new(
                    "a quantified γ attribute takes a single boolean value",
                    a.span,
                ))
            }
        };
        self.family_flags.push(FamilyFlag {
            name: name.base.clone(),
            index: var.base.clone(),
            over: set.clone(),
            value: b,
        });
        Ok(())
    }

    /// Unnamed γ value: word values identify their attribute.
    fn gamma_value(&mut self, v: &Value, span: SourceSpan) -> Result<(), ResolveError> {
        #[derive(PartialEq, Clone, Copy)]
        enum Target {
            Graphtype,
            Edgetype,
            Precedences,
            Cluster,
        }
        let classify = |alt: &ValueAlt| -> Result<Target, ResolveError> {
            let (name, has_args) = match &alt.expr {
                Expr::Ident(n) if is_plain(n) => (n, false),
                Expr::Call(n, _) if is_plain(n) => (n, true),
                other => {
                    return Err(ResolveError::new(
                        format!("γ value '{}' is not recognized", render_expr(other)),
                        span,
                    ))
                }
            };
            match name.base.as_str() {
                "complete" | "strongly connected" | "planar" | "path" | "cycle"
                | "binary tree" | "tree" => Ok(Target::Graphtype),
                "undirected" | "directed" | "bidirected" => Ok(Target::Edgetype),
                "atomic" | "arbitrary" => Ok(Target::Precedences),
                "partition" | "cover" => Ok(Target::Cluster),
                _ => Err(ResolveError::new(
                    format!(
                        "γ value '{}'{} matches no attribute; admissible words: {}",
                        name.base,
                        if has_args { "(…)" } else { "" },
                        gamma_value_words()
                    ),
                    span,
                )),
            }
        };
        let target = classify(&v.alts[0])?;
        for alt in &v.alts[1..] {
            if classify(alt)? != target {
                return Err(ResolveError::new(
                    "\"or\" alternatives must all belong to one attribute",
                    span,
                ));
            }
        }
        match target {
            Target::Graphtype => {
                let spec = spec_from(v, span, |alt| graphtype_alt(alt, span))?;
                set_slot(&mut self.graphtype, spec, "γ graphtype", span)
            }
            Target::Edgetype => {
                let spec = spec_from(v, span, |alt| edgetype_alt(alt, span))?;
                set_slot(&mut self.edgetype, spec, "γ edgetype", span)
            }
            Target::Precedences => {
                let spec = spec_from(v, span, |alt| precedences_alt(alt, span))?;
                set_slot(&mut self.precedences, spec, "γ precedences", span)
            }
            Target::Cluster => {
                let spec = spec_from(v, span, |alt| cluster_alt(alt, span))?;
                set_slot(&mut self.cluster, spec, "γ cluster", span)
            }
        }
    }

    fn apply_gamma_word(
        &mut self,
        n: &Name,
        args: &[Expr],
        span: SourceSpan,
    ) -> Result<(), ResolveError> {
        match gamma_word(n, args) {
            Some(GammaWord::Graph(g)) => {
                set_slot(&mut self.graphtype, Spec::Is(g), "γ graphtype", span)
            }
            Some(GammaWord::Edge(e)) => {
                set_slot(&mut self.edgetype, Spec::Is(e), "γ edgetype", span)
            }
            Some(GammaWord::Precedence(p)) => {
                set_slot(&mut self.precedences, Spec::Is(p), "γ precedences", span)
            }
            Some(GammaWord::Cluster(kind)) => {
                let spec = cluster_from_args(kind, args, span)?;
                set_slot(&mut self.cluster, Spec::Is(spec), "γ cluster", span)
            }
            None => Err(unknown_attr(FieldKind::Gamma, n, span)),
        }
    }
}

enum GammaWord {
    Graph(GraphType),
    Edge(EdgeType),
    Precedence(PrecedenceKind),
    Cluster(ClusterKind),
}

fn gamma_word(n: &Name, args: &[Expr]) -> Option<GammaWord> {
    if !is_plain(n) {
        return None;
    }
    let g = |g| Some(GammaWord::Graph(g));
    match n.base.as_str() {
        "complete" => g(GraphType::Complete),
        "strongly connected" => g(GraphType::StronglyConnected),
        "planar" => g(GraphType::Planar),
        "path" => g(GraphType::Path),
        "cycle" => g(GraphType::Cycle),
        "binary tree" => g(GraphType::BinaryTree),
        "tree" => g(GraphType::Tree(args.first().cloned())),
        "undirected" => Some(GammaWord::Edge(EdgeType::Undirected)),
        "directed" => Some(GammaWord::Edge(EdgeType::Directed)),
        "bidirected" => Some(GammaWord::Edge(EdgeType::Bidirected)),
        "atomic" => Some(GammaWord::Precedence(PrecedenceKind::Atomic)),
        "arbitrary" => Some(GammaWord::Precedence(PrecedenceKind::Arbitrary)),
        "partition" => Some(GammaWord::Cluster(ClusterKind::Partition)),
        "cover" => Some(GammaWord::Cluster(ClusterKind::Cover)),
        _ => None,
    }
}

fn gamma_value_words() -> &'static str {
    "complete, strongly connected, planar, path, cycle, binary tree, tree(b), \
     undirected, directed, bidirected, atomic, arbitrary, partition(…), cover(…)"
}

fn unknown_attr(field: FieldKind, n: &Name, span: SourceSpan) -> ResolveError {
    let names = registry::field_names(field).join(", ");
    ResolveError::new(
        format!(
            "unknown {} attribute '{}'; {} supports: {}",
            field.greek(),
            render_name(n),
            field.greek(),
            names
        ),
        span,
    )
}

// ----- value parsers --------------------------------------------------------

fn traveler_alt(alt: &ValueAlt, span: SourceSpan) -> Result<TravelerCount, ResolveError> {
    let rel = alt.rel.unwrap_or(RelOp::Eq);
    match (rel, &alt.expr) {
        (RelOp::Eq, Expr::Num(n)) if *n == rat(1) => Ok(TravelerCount::One),
        (RelOp::Ge, Expr::Num(n)) if *n == rat(1) => Ok(TravelerCount::AtLeastOne),
        (RelOp::Eq, Expr::Call(n, args))
            if is_plain(n)
                && matches!(n.base.as_str(), "Θ" | "Theta")
                && args.len() == 1
                && matches!(&args[0], Expr::Num(k) if *k == rat(1)) =>
        {
            Ok(TravelerCount::FixedParam)
        }
        (RelOp::Eq, e) => Ok(TravelerCount::Param(e.clone())),
        _ => Err(ResolveError::new(
            format!(
                "α count value '{}{}' not recognized; expected =1, =Θ(1), =k, or ≥1",
                rel.symbol(),
                render_expr(&alt.expr)
            ),
            span,
        )),
    }
}

fn traversal_alt(alt: &ValueAlt, span: SourceSpan) -> Result<TraversalSpec, ResolveError> {
    let rel = alt.rel.unwrap_or(RelOp::Eq);
    let (core, among) = match &alt.expr {
        Expr::Rel(ops, terms) if ops.len() == 1 && ops[0] == RelOp::In && terms.len() == 2 => {
            let set = match &terms[1] {
                Expr::SetLit(elems) => {
                    let mut out = Vec::new();
                    for e in elems {
                        match e {
                            Expr::Num(n) => out.push(n.clone()),
                            other => {
                                return Err(ResolveError::new(
                                    format!(
                                        "traversal value restriction must list numbers, found '{}'",
                                        render_expr(other)
                                    ),
                                    span,
                                ))
                            }
                        }
                    }
                    out
                }
                other => {
                    return Err(ResolveError::new(
                        format!(
                            "traversal value restriction must be a set like {{0,1}}, found '{}'",
                            render_expr(other)
                        ),
                        span,
                    ))
                }
            };
            (&terms[0], Some(set))
        }
        e => (e, None),
    };
    let count = match core {
        Expr::Num(n) => TraversalCount::Num(n.clone()),
        Expr::Ident(n) if is_plain(n) => TraversalCount::Param(n.base.clone()),
        Expr::Ident(n) if n.sub.is_some() && !n.bar => TraversalCount::PerNode(n.base.clone()),
        Expr::Call(f, args) if is_plain(f) && args.len() == 1 => match &args[0] {
            Expr::Ident(v) if is_plain(v) => TraversalCount::PerNode(f.base.clone()),
            _ => {
                return Err(ResolveError::new(
                    format!(
                        "β traversal demand '{}' not recognized",
                        render_expr(&alt.expr)
                    ),
                    span,
                ))
            }
        },
        other => {
            return Err(ResolveError::new(
                format!("β traversal demand '{}' not recognized", render_expr(other)),
                span,
            ))
        }
    };
    Ok(TraversalSpec { rel, count, among })
}

fn visits_word(n: &Name) -> Option<&'static str> {
    if !is_plain(n) {
        return None;
    }
    match n.base.as_str() {
        "always" => Some("always"),
        "once" => Some("once"),
        _ => None,
    }
}

fn visits_alt(alt: &ValueAlt, span: SourceSpan) -> Result<VisitSpec, ResolveError> {
    let rel = alt.rel.unwrap_or(RelOp::Eq);
    let word = match &alt.expr {
        Expr::Ident(n) => visits_word(n),
        _ => None,
    };
    match (rel, word) {
        (RelOp::Eq, Some("always")) => Ok(VisitSpec::Always),
        (RelOp::Eq, Some("once")) => Ok(VisitSpec::Once),
        (RelOp::Ge, Some("once")) => Ok(VisitSpec::AtLeastOnce),
        (RelOp::Le, Some("once")) => Ok(VisitSpec::AtMostOnce),
        _ => Err(ResolveError::new(
            format!(
                "β visits value '{}{}' not recognized; admissible: always, once, ≥once, ≤once",
                alt.rel.map(|r| r.symbol()).unwrap_or(""),
                render_expr(&alt.expr)
            ),
            span,
        )),
    }
}

fn group_alt(alt: &ValueAlt, span: SourceSpan) -> Result<GroupSpec, ResolveError> {
    if !matches!(alt.rel, None | Some(RelOp::Eq)) {
        return Err(ResolveError::new(
            "β group takes a tagged value, not a relation",
            span,
        ));
    }
    let (name, args): (&Name, &[Expr]) = match &alt.expr {
        Expr::Call(n, args) => (n, args),
        Expr::Ident(n) => (n, &[]),
        other => {
            return Err(ResolveError::new(
                format!("β group value '{}' not recognized", render_expr(other)),
                span,
            ))
        }
    };
    let kind = match name.base.as_str() {
        "partition" if is_plain(name) => GroupKind::Partition,
        "cover" if is_plain(name) => GroupKind::Cover,
        "bipartition" if is_plain(name) => GroupKind::Bipartition,
        "k-partition" if is_plain(name) => GroupKind::KPartition,
        _ => {
            return Err(ResolveError::new(
                format!(
                    "β group value '{}' not recognized; admissible: partition, cover, \
                     bipartition, k-partition",
                    render_name(name)
                ),
                span,
            ))
        }
    };
    let mut visit = None;
    let mut params = Vec::new();
    for arg in args {
        let parsed = match arg {
            Expr::Ident(n) if visits_word(n) == Some("once") => Some(GroupVisit::Once),
            Expr::HalfRel(RelOp::Ge, inner) => match inner.as_ref() {
                Expr::Ident(n) if visits_word(n) == Some("once") => Some(GroupVisit::AtLeastOnce),
                _ => None,
            },
            _ => None,
        };
        match parsed {
            Some(v) => {
                if visit.replace(v).is_some() {
                    return Err(ResolveError::new(
                        "β group lists two visit demands",
                        span,
                    ));
                }
            }
            None => params.push(arg.clone()),
        }
    }
    Ok(GroupSpec {
        kind,
        visit,
        params,
    })
}

fn covering_alt(alt: &ValueAlt, span: SourceSpan) -> Result<CoveringSpec, ResolveError> {
    if !matches!(alt.rel, None | Some(RelOp::Eq)) {
        return Err(ResolveError::new(
            "β covering takes a tagged value, not a relation",
            span,
        ));
    }
    let Expr::Call(name, args) = &alt.expr else {
        return Err(ResolveError::new(
            format!(
                "β covering value '{}' not recognized; expected all(c, ≤b) or subset(c, ≤b)",
                render_expr(&alt.expr)
            ),
            span,
        ));
    };
    let scope = match name.base.as_str() {
        "all" if is_plain(name) => CoverScope::All,
        "subset" if is_plain(name) => CoverScope::Subset,
        _ => {
            return Err(ResolveError::new(
                format!(
                    "β covering value '{}' not recognized; expected all(…) or subset(…)",
                    render_name(name)
                ),
                span,
            ))
        }
    };
    let [cost_arg, bound_arg] = args.as_slice() else {
        return Err(ResolveError::new(
            "β covering takes two arguments: a cost function and a bound",
            span,
        ));
    };
    let Expr::Ident(cost) = cost_arg else {
        return Err(ResolveError::new(
            format!(
                "β covering needs a cost function name first, found '{}'",
                render_expr(cost_arg)
            ),
            span,
        ));
    };
    let Expr::HalfRel(rel, bound) = bound_arg else {
        return Err(ResolveError::new(
            format!(
                "β covering needs a bound like ≤b, found '{}'",
                render_expr(bound_arg)
            ),
            span,
        ));
    };
    Ok(CoveringSpec {
        scope,
        cost: render_name(cost),
        rel: *rel,
        bound: bound.as_ref().clone(),
    })
}

fn graphtype_alt(alt: &ValueAlt, span: SourceSpan) -> Result<GraphType, ResolveError> {
    if !matches!(alt.rel, None | Some(RelOp::Eq)) {
        return Err(ResolveError::new(
            "γ graphtype takes a tagged value, not a relation",
            span,
        ));
    }
    let (name, args): (&Name, &[Expr]) = match &alt.expr {
        Expr::Ident(n) => (n, &[]),
        Expr::Call(n, args) => (n, args),
        other => {
            return Err(ResolveError::new(
                format!("γ graphtype value '{}' not recognized", render_expr(other)),
                span,
            ))
        }
    };
    if name.base == "tree" && is_plain(name) {
        if args.len() > 1 {
            return Err(ResolveError::new(
                "tree takes at most one parameter, the leaf-count bound",
                span,
            ));
        }
        return Ok(GraphType::Tree(args.first().cloned()));
    }
    if !args.is_empty() {
        return Err(ResolveError::new(
            format!("γ graphtype value '{}' takes no parameters", name.base),
            span,
        ));
    }
    match gamma_word(name, &[]) {
        Some(GammaWord::Graph(g)) => Ok(g),
        _ => Err(ResolveError::new(
            format!(
                "γ graphtype value '{}' not recognized; admissible: complete, \
                 strongly connected, planar, path, cycle, binary tree, tree, tree(b)",
                render_name(name)
            ),
            span,
        )),
    }
}

fn edgetype_alt(alt: &ValueAlt, span: SourceSpan) -> Result<EdgeType, ResolveError> {
    if let Expr::Ident(n) = &alt.expr {
        if matches!(alt.rel, None | Some(RelOp::Eq)) {
            if let Some(GammaWord::Edge(e)) = gamma_word(n, &[]) {
                return Ok(e);
            }
        }
    }
    Err(ResolveError::new(
        format!(
            "γ edgetype value '{}' not recognized; admissible: undirected, directed, bidirected",
            render_expr(&alt.expr)
        ),
        span,
    ))
}

fn precedences_alt(alt: &ValueAlt, span: SourceSpan) -> Result<PrecedenceKind, ResolveError> {
    if let Expr::Ident(n) = &alt.expr {
        if matches!(alt.rel, None | Some(RelOp::Eq)) {
            if let Some(GammaWord::Precedence(p)) = gamma_word(n, &[]) {
                return Ok(p);
            }
        }
    }
    Err(ResolveError::new(
        format!(
            "γ precedences value '{}' not recognized; admissible: atomic, arbitrary",
            render_expr(&alt.expr)
        ),
        span,
    ))
}

fn cluster_alt(alt: &ValueAlt, span: SourceSpan) -> Result<ClusterSpec, ResolveError> {
    if !matches!(alt.rel, None | Some(RelOp::Eq)) {
        return Err(ResolveError::new(
            "γ cluster takes a tagged value, not a relation",
            span,
        ));
    }
    let (name, args): (&Name, &[Expr]) = match &alt.expr {
        Expr::Ident(n) => (n, &[]),
        Expr::Call(n, args) => (n, args),
        other => {
            return Err(ResolveError::new(
                format!("γ cluster value '{}' not recognized", render_expr(other)),
                span,
            ))
        }
    };
    let kind = match name.base.as_str() {
        "partition" if is_plain(name) => ClusterKind::Partition,
        "cover" if is_plain(name) => ClusterKind::Cover,
        _ => {
            return Err(ResolveError::new(
                format!(
                    "γ cluster value '{}' not recognized; admissible: partition(…), cover(…)",
                    render_name(name)
                ),
                span,
            ))
        }
    };
    cluster_from_args(kind, args, span)
}

fn cluster_from_args(
    kind: ClusterKind,
    args: &[Expr],
    span: SourceSpan,
) -> Result<ClusterSpec, ResolveError> {
    let mut ordered = false;
    let mut sequence = None;
    for arg in args {
        let word = match arg {
            Expr::Ident(n) if is_plain(n) => n.base.as_str(),
            other => {
                return Err(ResolveError::new(
                    format!(
                        "γ cluster parameter '{}' not recognized; admissible: ordered, \
                         unordered, start, startend, terminals",
                        render_expr(other)
                    ),
                    span,
                ))
            }
        };
        match word {
            "ordered" => ordered = true,
            "unordered" => ordered = false,
            "start" | "startend" | "terminals" => {
                let seq = match word {
                    "start" => ClusterSequence::Start,
                    "startend" => ClusterSequence::StartEnd,
                    _ => ClusterSequence::Terminals,
                };
                if sequence.replace(seq).is_some() {
                    return Err(ResolveError::new(
                        "γ cluster lists two sequence parameters",
                        span,
                    ));
                }
            }
            other => {
                return Err(ResolveError::new(
                    format!(
                        "γ cluster parameter '{other}' not recognized; admissible: ordered, \
                         unordered, start, startend, terminals"
                    ),
                    span,
                ))
            }
        }
    }
    Ok(ClusterSpec {
        kind,
        ordered,
        sequence,
    })
}

// ----- δ ---------------------------------------------------------------------

fn resolve_cost(cf: &CostFn) -> Result<CostSignature, ResolveError> {
    let span = cf.span;
    let (name, family) = match &cf.family {
        Some(fam) => (
            cf.name.base.clone(),
            Some(FamilyRange {
                var: fam.var.clone(),
                lo: fam.lo.clone(),
                hi: fam.hi.clone(),
            }),
        ),
        None => (render_name(&cf.name), None),
    };
    let domain = match &cf.domain {
        Expr::Ident(n) if is_plain(n) && n.base == "E" => CostDomain::Edges,
        Expr::Ident(n) if is_plain(n) && n.base == "V" => CostDomain::Nodes,
        other => CostDomain::Named(other.clone()),
    };

    let mut property_word: Option<PropertyTag> = None;
    let mut named_property: Option<Spec<PropertyTag>> = None;
    let mut params: Vec<MetricParam> = Vec::new();
    let mut partial: Option<Spec<bool>> = None;
    let mut temporal: Option<Spec<TemporalTag>> = None;

    for attr in &cf.attrs {
        match attr {
            CostAttr::Tag(n) if n.base == "*" => {
                if named_property.replace(Spec::Any).is_some() {
                    return Err(ResolveError::new("duplicate property attribute", span));
                }
            }
            CostAttr::Tag(n) => {
                if !is_plain(n) {
                    return Err(unknown_cost_attr(n, span));
                }
                if n.base == "partial" {
                    set_slot(&mut partial, Spec::Is(true), "δ partial", span)?;
                } else if let Some(t) = temporal_word(&n.base, &[]) {
                    set_slot(&mut temporal, Spec::Is(t), "δ temporal", span)?;
                } else if let Some(p) = property_word_tag(&n.base) {
                    if property_word.replace(p).is_some() {
                        return Err(ResolveError::new("duplicate property attribute", span));
                    }
                } else if let Some(p) = metric_param(n) {
                    params.push(p);
                } else {
                    return Err(unknown_cost_attr(n, span));
                }
            }
            CostAttr::Call(n, args) => match n.base.as_str() {
                "grid" if is_plain(n) => {
                    if property_word
                        .replace(PropertyTag::Grid(args.clone()))
                        .is_some()
                    {
                        return Err(ResolveError::new("duplicate property attribute", span));
                    }
                }
                "costzone" if is_plain(n) => {
                    set_slot(
                        &mut temporal,
                        Spec::Is(TemporalTag::CostZone(args.clone())),
                        "δ temporal",
                        span,
                    )?;
                }
                "poszone" if is_plain(n) => {
                    set_slot(
                        &mut temporal,
                        Spec::Is(TemporalTag::PosZone(args.clone())),
                        "δ temporal",
                        span,
                    )?;
                }
                _ => return Err(unknown_cost_attr(n, span)),
            },
            CostAttr::Tuple(names) => {
                for n in names {
                    match metric_param(n) {
                        Some(p) => params.push(p),
                        None => {
                            return Err(ResolveError::new(
                                format!(
                                    "property parameter '{}' not recognized; admissible: \
                                     identity, triangle, α-triangle, symmetric",
                                    render_name(n)
                                ),
                                span,
                            ))
                        }
                    }
                }
            }
            CostAttr::Named(n, value) => match n.base.as_str() {
                "property" if is_plain(n) => {
                    let spec = spec_from(value, span, |alt| property_alt(alt, span))?;
                    if named_property.replace(spec).is_some() {
                        return Err(ResolveError::new("duplicate property attribute", span));
                    }
                }
                "partial" if is_plain(n) => {
                    let spec = spec_from(value, span, |alt| bool_alt(alt, "partial", span))?;
                    set_slot(&mut partial, spec, "δ partial", span)?;
                }
                "temporal" if is_plain(n) => {
                    let spec = spec_from(value, span, |alt| temporal_alt(alt, span))?;
                    set_slot(&mut temporal, spec, "δ temporal", span)?;
                }
                _ => return Err(unknown_cost_attr(n, span)),
            },
        }
    }

    let property = match (named_property, property_word, params.is_empty()) {
        (Some(spec), None, true) => Some(spec),
        (None, Some(p), true) => Some(Spec::Is(p)),
        (None, None, false) => Some(Spec::Is(PropertyTag::Params(params))),
        (None, None, true) => None,
        _ => {
            return Err(ResolveError::new(
                "a cost function lists more than one property value",
                span,
            ))
        }
    };

    Ok(CostSignature {
        name,
        family,
        domain,
        range: cf.range.clone(),
        property,
        partial: partial.unwrap_or(Spec::Is(false)),
        temporal,
    })
}

fn unknown_cost_attr(n: &Name, span: SourceSpan) -> ResolveError {
    ResolveError::new(
        format!(
            "cost attribute '{}' not recognized; admissible: property values \
             (metric, graphic, planar, subset planar, euclidean, euclidean fixed dim, \
             euclidean plane, grid(m,n), shoreline), property parameters (identity, \
             triangle, α-triangle, symmetric), partial, and temporal values (time, \
             position, costzone(k), poszone(k), waiting, kinetic)",
            render_name(n)
        ),
        span,
    )
}

fn property_word_tag(word: &str) -> Option<PropertyTag> {
    match word {
        "metric" => Some(PropertyTag::Metric),
        "graphic" => Some(PropertyTag::Graphic),
        "planar" => Some(PropertyTag::Planar),
        "subset planar" => Some(PropertyTag::SubsetPlanar),
        "euclidean" | "euclid" => Some(PropertyTag::Euclidean),
        "euclidean fixed dim" => Some(PropertyTag::EuclideanFixedDim),
        "euclidean plane" => Some(PropertyTag::EuclideanPlane),
        "shoreline" => Some(PropertyTag::Shoreline),
        _ => None,
    }
}

fn metric_param(n: &Name) -> Option<MetricParam> {
    if !is_plain(n) {
        return None;
    }
    match n.base.as_str() {
        "identity" => Some(MetricParam::Identity),
        "triangle" => Some(MetricParam::Triangle),
        "symmetric" | "symmetry" => Some(MetricParam::Symmetric),
        word => word
            .strip_suffix("-triangle")
            .map(|factor| MetricParam::RelaxedTriangle(factor.to_string())),
    }
}

fn temporal_word(word: &str, args: &[Expr]) -> Option<TemporalTag> {
    match word {
        "time" => Some(TemporalTag::Time),
        "position" => Some(TemporalTag::Position),
        "waiting" => Some(TemporalTag::Waiting),
        "kinetic" => Some(TemporalTag::Kinetic),
        "costzone" => Some(TemporalTag::CostZone(args.to_vec())),
        "poszone" => Some(TemporalTag::PosZone(args.to_vec())),
        _ => None,
    }
}

fn property_alt(alt: &ValueAlt, span: SourceSpan) -> Result<PropertyTag, ResolveError> {
    if !matches!(alt.rel, None | Some(RelOp::Eq)) {
        return Err(ResolveError::new(
            "δ property takes a tagged value, not a relation",
            span,
        ));
    }
    match &alt.expr {
        Expr::Ident(n) if is_plain(n) => {
            if let Some(p) = property_word_tag(&n.base) {
                return Ok(p);
            }
            if let Some(p) = metric_param(n) {
                return Ok(PropertyTag::Params(vec![p]));
            }
            Err(bad_property(&n.base, span))
        }
        Expr::Call(n, args) if is_plain(n) && n.base == "grid" => {
            Ok(PropertyTag::Grid(args.clone()))
        }
        other => Err(bad_property(&render_expr(other), span)),
    }
}

fn bad_property(found: &str, span: SourceSpan) -> ResolveError {
    ResolveError::new(
        format!(
            "δ property value '{found}' not recognized; admissible: metric, graphic, planar, \
             subset planar, euclidean, euclidean fixed dim, euclidean plane, grid(m,n), \
             shoreline, or parameters (identity, triangle, α-triangle, symmetric)"
        ),
        span,
    )
}

fn temporal_alt(alt: &ValueAlt, span: SourceSpan) -> Result<TemporalTag, ResolveError> {
    if !matches!(alt.rel, None | Some(RelOp::Eq)) {
        return Err(ResolveError::new(
            "δ temporal takes a tagged value, not a relation",
            span,
        ));
    }
    let (name, args): (&Name, &[Expr]) = match &alt.expr {
        Expr::Ident(n) if is_plain(n) => (n, &[]),
        Expr::Call(n, args) if is_plain(n) => (n, args),
        other => {
            return Err(ResolveError::new(
                format!("δ temporal value '{}' not recognized", render_expr(other)),
                span,
            ))
        }
    };
    temporal_word(&name.base, args).ok_or_else(|| {
        ResolveError::new(
            format!(
                "δ temporal value '{}' not recognized; admissible: time, position, \
                 costzone(k), poszone(k), waiting, kinetic",
                name.base
            ),
            span,
        )
    })
}
