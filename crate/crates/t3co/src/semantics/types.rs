//! Resolved meaning of a variant definition.
//!
//! Resolution turns a parse tree into one record per semantic slot: who
//! travels, how often targets are traversed and visited, what shape the tour
//! takes, which cost functions exist, and what the objectives ask for.
//! Template definitions keep their wildcards and "or"-alternatives intact
//! through [`Spec`].

use std::fmt;

use crate::rat::{fmt_rat, Rat};
use crate::syntax::{render_expr, render_range, Annotation, Expr, ExtMark, RangeTag, RelOp};

/// A slot value, or the template forms that leave the slot open.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Spec<T> {
    Is(T),
    /// Wildcard `*`: any admissible value.
    Any,
    /// "or"-separated alternatives.
    OneOf(Vec<T>),
}

impl<T> Spec<T> {
    pub fn as_concrete(&self) -> Option<&T> {
        match self {
            Spec::Is(v) => Some(v),
            _ => None,
        }
    }

    pub fn is_open(&self) -> bool {
        !matches!(self, Spec::Is(_))
    }

    /// True when some admissible value satisfies `probe`.
    pub fn admits(&self, probe: impl Fn(&T) -> bool) -> bool {
        match self {
            Spec::Is(v) => probe(v),
            Spec::Any => true,
            Spec::OneOf(vs) => vs.iter().any(probe),
        }
    }
}

impl<T: fmt::Display> fmt::Display for Spec<T> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Spec::Is(v) => v.fmt(f),
            Spec::Any => f.write_str("*"),
            Spec::OneOf(vs) => {
                for (i, v) in vs.iter().enumerate() {
                    if i > 0 {
                        f.write_str(" or ")?;
                    }
                    v.fmt(f)?;
                }
                Ok(())
            }
        }
    }
}

/// How many walks form a solution.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum TravelerCount {
    /// Exactly one finite walk.
    One,
    /// A fixed number, a parameter of the variant rather than of the input.
    FixedParam,
    /// A named count that is part of the input.
    Param(Expr),
    /// One or more walks.
    AtLeastOne,
}

impl fmt::Display for TravelerCount {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            TravelerCount::One => f.write_str("=1"),
            TravelerCount::FixedParam => f.write_str("=Θ(1)"),
            TravelerCount::Param(k) => write!(f, "={}", render_expr(k)),
            TravelerCount::AtLeastOne => f.write_str("≥1"),
        }
    }
}

/// Demanded traversal count per node.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum TraversalCount {
    Num(Rat),
    /// Scalar parameter: the same demand at every node.
    Param(String),
    /// Per-node demand table, `d(v)`.
    PerNode(String),
}

impl fmt::Display for TraversalCount {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            TraversalCount::Num(n) => f.write_str(&fmt_rat(n)),
            TraversalCount::Param(p) => f.write_str(p),
            TraversalCount::PerNode(t) => write!(f, "{t}(v)"),
        }
    }
}

/// Relation every node's traversal count must satisfy.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TraversalSpec {
    pub rel: RelOp,
    pub count: TraversalCount,
    /// Membership restriction, as in `≥ d(v) ∈ {0,1}`: nodes with demand
    /// outside the set are unconstrained.
    pub among: Option<Vec<Rat>>,
}

impl fmt::Display for TraversalSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}{}", self.rel.symbol(), self.count)?;
        if let Some(set) = &self.among {
            let parts: Vec<String> = set.iter().map(fmt_rat).collect();
            write!(f, " ∈ {{{}}}", parts.join(", "))?;
        }
        Ok(())
    }
}

/// Relation between visits and traversals at each node.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum VisitSpec {
    /// Every traversal is a visit.
    Always,
    /// Every traversed node is visited exactly once.
    Once,
    /// Every traversed node is visited at least once.
    AtLeastOnce,
    /// Every traversed node is visited at most once.
    AtMostOnce,
}

impl fmt::Display for VisitSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            VisitSpec::Always => f.write_str("always"),
            VisitSpec::Once => f.write_str("once"),
            VisitSpec::AtLeastOnce => f.write_str("≥once"),
            VisitSpec::AtMostOnce => f.write_str("≤once"),
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum GroupKind {
    Partition,
    Cover,
    Bipartition,
    KPartition,
}

impl GroupKind {
    pub fn word(self) -> &'static str {
        match self {
            GroupKind::Partition => "partition",
            GroupKind::Cover => "cover",
            GroupKind::Bipartition => "bipartition",
            GroupKind::KPartition => "k-partition",
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum GroupVisit {
    Once,
    AtLeastOnce,
}

/// Node-group demand: visit one or more nodes of each cluster.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GroupSpec {
    pub kind: GroupKind,
    pub visit: Option<GroupVisit>,
    /// Extra parameters carried verbatim, like `k=O(log n)`.
    pub params: Vec<Expr>,
}

impl fmt::Display for GroupSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.kind.word())?;
        let mut args: Vec<String> = Vec::new();
        if let Some(v) = self.visit {
            args.push(
                match v {
                    GroupVisit::Once => "once",
                    GroupVisit::AtLeastOnce => "≥once",
                }
                .to_string(),
            );
        }
        args.extend(self.params.iter().map(render_expr));
        if !args.is_empty() {
            write!(f, "({})", args.join(", "))?;
        }
        Ok(())
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum CoverScope {
    /// Every node of the graph must be near the walk.
    All,
    /// Only a demanded subset must be near the walk.
    Subset,
}

/// Radius demand: each in-scope node lies within a distance bound of some
/// visited node, measured by shortest paths under a named cost function.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CoveringSpec {
    pub scope: CoverScope,
    pub cost: String,
    pub rel: RelOp,
    pub bound: Expr,
}

impl fmt::Display for CoveringSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let word = match self.scope {
            CoverScope::All => "all",
            CoverScope::Subset => "subset",
        };
        write!(
            f,
            "{word}({}, {}{})",
            self.cost,
            self.rel.symbol(),
            render_expr(&self.bound)
        )
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum GraphType {
    Arbitrary,
    Complete,
    StronglyConnected,
    Planar,
    Path,
    Cycle,
    BinaryTree,
    /// Tree, optionally with a leaf-count bound carried verbatim.
    Tree(Option<Expr>),
}

impl fmt::Display for GraphType {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            GraphType::Arbitrary => f.write_str("arbitrary"),
            GraphType::Complete => f.write_str("complete"),
            GraphType::StronglyConnected => f.write_str("strongly connected"),
            GraphType::Planar => f.write_str("planar"),
            GraphType::Path => f.write_str("path"),
            GraphType::Cycle => f.write_str("cycle"),
            GraphType::BinaryTree => f.write_str("binary tree"),
            GraphType::Tree(None) => f.write_str("tree"),
            GraphType::Tree(Some(b)) => write!(f, "tree({})", render_expr(b)),
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum EdgeType {
    Undirected,
    Directed,
    Bidirected,
}

impl EdgeType {
    pub fn word(self) -> &'static str {
        match self {
            EdgeType::Undirected => "undirected",
            EdgeType::Directed => "directed",
            EdgeType::Bidirected => "bidirected",
        }
    }
}

impl fmt::Display for EdgeType {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.word())
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum PrecedenceKind {
    /// A set of node pairs (u, v): u must be visited before v.
    Atomic,
    /// Constraints described outside the scheme, in an extension note.
    Arbitrary,
}

impl fmt::Display for PrecedenceKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            PrecedenceKind::Atomic => "atomic",
            PrecedenceKind::Arbitrary => "arbitrary",
        })
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ClusterKind {
    Partition,
    Cover,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ClusterSequence {
    /// Cluster entry points are prescribed.
    Start,
    /// Entry and exit points are prescribed.
    StartEnd,
    /// Entry and exit points must come from a per-cluster terminal set.
    Terminals,
}

/// Contiguity demand: the walk finishes each cluster before the next.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ClusterSpec {
    pub kind: ClusterKind,
    /// Clusters must appear in index order.
    pub ordered: bool,
    pub sequence: Option<ClusterSequence>,
}

impl fmt::Display for ClusterSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self.kind {
            ClusterKind::Partition => "partition",
            ClusterKind::Cover => "cover",
        })?;
        let mut args: Vec<&str> = Vec::new();
        if self.ordered {
            args.push("ordered");
        }
        match self.sequence {
            Some(ClusterSequence::Start) => args.push("start"),
            Some(ClusterSequence::StartEnd) => args.push("startend"),
            Some(ClusterSequence::Terminals) => args.push("terminals"),
            None => {}
        }
        if !args.is_empty() {
            write!(f, "({})", args.join(", "))?;
        }
        Ok(())
    }
}

/// A quantified boolean attribute, as in `∀ t ∈ T: circuit_t = True`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FamilyFlag {
    pub name: String,
    pub index: String,
    pub over: Expr,
    pub value: bool,
}

/// The γ field: endpoints, closure, and structural demands on the graph.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TourSpec {
    pub start: Spec<bool>,
    pub end: Spec<bool>,
    pub circuit: Spec<bool>,
    pub graphtype: Spec<GraphType>,
    pub edgetype: Option<Spec<EdgeType>>,
    pub precedences: Option<Spec<PrecedenceKind>>,
    pub cluster: Option<Spec<ClusterSpec>>,
    pub family_flags: Vec<FamilyFlag>,
}

impl Default for TourSpec {
    fn default() -> TourSpec {
        TourSpec {
            start: Spec::Is(false),
            end: Spec::Is(false),
            circuit: Spec::Is(false),
            graphtype: Spec::Is(GraphType::Arbitrary),
            edgetype: None,
            precedences: None,
            cluster: None,
            family_flags: Vec::new(),
        }
    }
}

/// One checkable property parameter of a cost function.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum MetricParam {
    /// c(u,v) > 0 exactly when u ≠ v.
    Identity,
    /// c(u,v) ≤ c(u,w) + c(w,v).
    Triangle,
    /// Triangle inequality relaxed by the named factor.
    RelaxedTriangle(String),
    /// Both directions exist and agree.
    Symmetric,
}

impl fmt::Display for MetricParam {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            MetricParam::Identity => f.write_str("identity"),
            MetricParam::Triangle => f.write_str("triangle"),
            MetricParam::RelaxedTriangle(a) => write!(f, "{a}-triangle"),
            MetricParam::Symmetric => f.write_str("symmetric"),
        }
    }
}

/// Declared structure of a cost function.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum PropertyTag {
    /// Explicit parameter list, `(identity, triangle)`.
    Params(Vec<MetricParam>),
    /// Symmetry, identity, and the triangle inequality together.
    Metric,
    /// Shortest-path hop counts of an unweighted graph.
    Graphic,
    Planar,
    SubsetPlanar,
    Euclidean,
    EuclideanFixedDim,
    EuclideanPlane,
    /// Distances on an m-by-n grid.
    Grid(Vec<Expr>),
    /// Distances between ordered points on a shore: moving either endpoint
    /// of a pair inward never increases the cost.
    Shoreline,
}

impl fmt::Display for PropertyTag {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            PropertyTag::Params(ps) => {
                let parts: Vec<String> = ps.iter().map(|p| p.to_string()).collect();
                write!(f, "({})", parts.join(", "))
            }
            PropertyTag::Metric => f.write_str("metric"),
            PropertyTag::Graphic => f.write_str("graphic"),
            PropertyTag::Planar => f.write_str("planar"),
            PropertyTag::SubsetPlanar => f.write_str("subset planar"),
            PropertyTag::Euclidean => f.write_str("euclidean"),
            PropertyTag::EuclideanFixedDim => f.write_str("euclidean fixed dim"),
            PropertyTag::EuclideanPlane => f.write_str("euclidean plane"),
            PropertyTag::Grid(dims) => {
                let parts: Vec<String> = dims.iter().map(render_expr).collect();
                write!(f, "grid({})", parts.join(", "))
            }
            PropertyTag::Shoreline => f.write_str("shoreline"),
        }
    }
}

/// Declared time or position dependence of a cost function.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum TemporalTag {
    /// Cost depends on the arrival time.
    Time,
    /// Cost depends on the number of steps taken so far.
    Position,
    /// Time-dependent with at most k−1 change points.
    CostZone(Vec<Expr>),
    /// Position-dependent with at most k−1 change points.
    PosZone(Vec<Expr>),
    /// The traveler may wait before visiting.
    Waiting,
    /// Nodes move with constant speed in a fixed direction.
    Kinetic,
}

impl fmt::Display for TemporalTag {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            TemporalTag::Time => f.write_str("time"),
            TemporalTag::Position => f.write_str("position"),
            TemporalTag::CostZone(args) => {
                let parts: Vec<String> = args.iter().map(render_expr).collect();
                write!(f, "costzone({})", parts.join(", "))
            }
            TemporalTag::PosZone(args) => {
                let parts: Vec<String> = args.iter().map(render_expr).collect();
                write!(f, "poszone({})", parts.join(", "))
            }
            TemporalTag::Waiting => f.write_str("waiting"),
            TemporalTag::Kinetic => f.write_str("kinetic"),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum CostDomain {
    Nodes,
    Edges,
    /// Pairs of edges, for quadratic costs.
    EdgePairs,
    /// Any other domain expression, carried verbatim.
    Named(Expr),
}

impl fmt::Display for CostDomain {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            CostDomain::Nodes => f.write_str("V"),
            CostDomain::Edges => f.write_str("E"),
            CostDomain::EdgePairs => f.write_str("E×E"),
            CostDomain::Named(e) => f.write_str(&render_expr(e)),
        }
    }
}

/// One resolved cost-function declaration.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CostSignature {
    pub name: String,
    /// Index variable and range for families like `{avail_i}_{i=1}^m`.
    pub family: Option<FamilyRange>,
    pub domain: CostDomain,
    pub range: RangeTag,
    pub property: Option<Spec<PropertyTag>>,
    pub partial: Spec<bool>,
    pub temporal: Option<Spec<TemporalTag>>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FamilyRange {
    pub var: String,
    pub lo: Expr,
    pub hi: Expr,
}

impl CostSignature {
    pub fn range_text(&self) -> String {
        render_range(&self.range)
    }

    /// True when a declared or admissible temporal tag matches `probe`.
    pub fn temporal_admits(&self, probe: impl Fn(&TemporalTag) -> bool) -> bool {
        self.temporal.as_ref().is_some_and(|t| t.admits(&probe))
    }
}

/// One additive atom of an optimization term.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum TermAtom {
    /// Named cost summed over the walk, `c(S)`.
    TotalCost(String),
    /// Named cost summed over everything the walk misses, `p̄(S)`.
    ComplementCost(String),
    /// Number of distinct visited nodes, `|V_S|`.
    CardinalityVisited,
    /// Purchase total, `Σ_i Σ_{v ∈ S_V} price_i(v)·share_i(v)`.
    PriceShareSum {
        index: String,
        hi: String,
        price: String,
        share: String,
    },
    /// Template wildcard.
    Wildcard,
}

impl fmt::Display for TermAtom {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            TermAtom::TotalCost(c) => write!(f, "{c}(S)"),
            TermAtom::ComplementCost(c) => write!(f, "{c}\u{304}(S)"),
            TermAtom::CardinalityVisited => f.write_str("|V_S|"),
            TermAtom::PriceShareSum {
                index,
                hi,
                price,
                share,
            } => write!(
                f,
                "Σ_{{{index}=1}}^{hi} Σ_{{v ∈ S_V}} {price}_{index}(v) · {share}_{index}(v)"
            ),
            TermAtom::Wildcard => f.write_str("*"),
        }
    }
}

/// A linear combination of term atoms.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ObjTerm {
    pub atoms: Vec<(Rat, TermAtom)>,
}

impl ObjTerm {
    pub fn of(a: TermAtom) -> ObjTerm {
        ObjTerm {
            atoms: vec![(crate::rat::rat(1), a)],
        }
    }

    /// The sole atom, when the term is a single unscaled quantity.
    pub fn single(&self) -> Option<&TermAtom> {
        match self.atoms.as_slice() {
            [(coef, atom)] if *coef == crate::rat::rat(1) => Some(atom),
            _ => None,
        }
    }

    pub fn is_wildcard(&self) -> bool {
        self.atoms
            .iter()
            .any(|(_, a)| matches!(a, TermAtom::Wildcard))
    }
}

impl fmt::Display for ObjTerm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (i, (coef, atom)) in self.atoms.iter().enumerate() {
            if i > 0 {
                f.write_str(" + ")?;
            }
            if *coef != crate::rat::rat(1) {
                write!(f, "{} · ", fmt_rat(coef))?;
            }
            atom.fmt(f)?;
        }
        Ok(())
    }
}

/// Which cost components add up to the arrival time at each visited node.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ArrivalForm {
    /// Edge-cost function summed over the strict prefix.
    pub travel: String,
    /// Waiting-time function, included up to and including the node.
    pub waiting: Option<String>,
    /// Handling-time function, summed over the strict prefix.
    pub handling: Option<String>,
}

/// A per-visit release/deadline demand quantified over walk positions.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TimeWindowSpec {
    /// Position variable of the quantifier.
    pub var: String,
    /// Upper end of the position range, carried verbatim ("k", "n").
    pub hi: String,
    /// Lower bound on the arrival time, if any.
    pub release: Option<Expr>,
    /// Upper bound on the arrival time, if any.
    pub deadline: Option<Expr>,
    pub arrival: ArrivalForm,
}

/// A per-product demand or availability constraint on purchases.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PurchaseSpec {
    pub kind: PurchaseKind,
    pub share: String,
    pub index: String,
    /// Upper end of the product range, carried verbatim ("m").
    pub hi: String,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum PurchaseKind {
    /// Σ over visited nodes of share_i meets the demand: share_i(S_V) ≥ d_i.
    DemandMet { demand: Expr },
    /// share_i(v) ≤ avail_i(v) at every node.
    WithinAvailability { avail: String, node_var: String },
}

/// Maximum lateness over walk positions must be minimized.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LatenessSpec {
    pub var: String,
    /// The lateness expression inside max{0, …}.
    pub lateness: Expr,
}

/// One resolved objective statement.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum ObjectiveStmt {
    Minimize(ObjTerm),
    Maximize(ObjTerm),
    UpperBound { term: ObjTerm, bound: Expr },
    LowerBound { term: ObjTerm, bound: Expr },
    /// Minimize the largest edge cost used, min max{c(e) : e ∈ E_S}.
    MinMaxEdge(String),
    /// Maximize the smallest edge cost used, max min{c(e) : e ∈ E_S}.
    MaxMinEdge(String),
    TimeWindow(TimeWindowSpec),
    PurchaseDemand(PurchaseSpec),
    MinMaxLateness(LatenessSpec),
}

impl ObjectiveStmt {
    /// True for statements that rank solutions rather than gate them.
    pub fn is_optimizing(&self) -> bool {
        matches!(
            self,
            ObjectiveStmt::Minimize(_)
                | ObjectiveStmt::Maximize(_)
                | ObjectiveStmt::MinMaxEdge(_)
                | ObjectiveStmt::MaxMinEdge(_)
                | ObjectiveStmt::MinMaxLateness(_)
        )
    }
}

impl fmt::Display for ObjectiveStmt {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ObjectiveStmt::Minimize(t) => write!(f, "min {t}"),
            ObjectiveStmt::Maximize(t) => write!(f, "max {t}"),
            ObjectiveStmt::UpperBound { term, bound } => {
                write!(f, "{term} ≤ {}", render_expr(bound))
            }
            ObjectiveStmt::LowerBound { term, bound } => {
                write!(f, "{term} ≥ {}", render_expr(bound))
            }
            ObjectiveStmt::MinMaxEdge(c) => write!(f, "min max {{{c}(e) : e ∈ E_S}}"),
            ObjectiveStmt::MaxMinEdge(c) => write!(f, "max min {{{c}(e) : e ∈ E_S}}"),
            ObjectiveStmt::TimeWindow(tw) => {
                let i = &tw.var;
                let mut chain = String::new();
                if let Some(r) = &tw.release {
                    chain.push_str(&render_expr(r));
                    chain.push_str(" ≤ ");
                }
                chain.push_str("arrival(");
                chain.push_str(i);
                chain.push(')');
                if let Some(d) = &tw.deadline {
                    chain.push_str(" ≤ ");
                    chain.push_str(&render_expr(d));
                }
                write!(f, "∀ {i} ∈ {{0,…,{}}}: {chain}", tw.hi)
            }
            ObjectiveStmt::PurchaseDemand(p) => match &p.kind {
                PurchaseKind::DemandMet { demand } => write!(
                    f,
                    "∀ {i} ∈ {{1,…,{m}}}: {s}_{i}(S_V) ≥ {d}",
                    i = p.index,
                    m = p.hi,
                    s = p.share,
                    d = render_expr(demand)
                ),
                PurchaseKind::WithinAvailability { avail, node_var } => write!(
                    f,
                    "∀ {i} ∈ {{1,…,{m}}} ∀ {v} ∈ V: {s}_{i}({v}) ≤ {a}_{i}({v})",
                    i = p.index,
                    m = p.hi,
                    v = node_var,
                    s = p.share,
                    a = avail
                ),
            },
            ObjectiveStmt::MinMaxLateness(l) => write!(
                f,
                "min max_{} max {{0, {}}}",
                l.var,
                render_expr(&l.lateness)
            ),
        }
    }
}

/// A fully resolved variant definition.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ResolvedVariant {
    pub traveler: Spec<TravelerCount>,
    pub traversals: Option<Spec<TraversalSpec>>,
    pub visits: Option<Spec<VisitSpec>>,
    pub group: Option<Spec<GroupSpec>>,
    pub covering: Option<Spec<CoveringSpec>>,
    pub tour: TourSpec,
    pub costs: Vec<CostSignature>,
    pub objectives: Vec<ObjectiveStmt>,
    /// Objective expressions as written, for faithful printing.
    pub objective_src: Vec<Expr>,
    pub extension: Option<ExtMark>,
    pub annotations: Vec<Annotation>,
}

impl ResolvedVariant {
    pub fn cost(&self, name: &str) -> Option<&CostSignature> {
        self.costs.iter().find(|c| c.name == name)
    }

    /// True when the tour field forces every cost to be symmetric: undirected
    /// edges are unordered pairs, so a cost on them cannot distinguish
    /// directions. Exposed for checkers; declarations are never rewritten.
    pub fn edge_symmetry_implied(&self) -> bool {
        matches!(self.tour.edgetype, Some(Spec::Is(EdgeType::Undirected)))
    }

    /// True when any slot is left open by a wildcard or alternatives.
    pub fn is_template(&self) -> bool {
        fn open<T>(s: &Spec<T>) -> bool {
            s.is_open()
        }
        open(&self.traveler)
            || self.traversals.as_ref().is_some_and(open)
            || self.visits.as_ref().is_some_and(open)
            || self.group.as_ref().is_some_and(open)
            || self.covering.as_ref().is_some_and(open)
            || open(&self.tour.start)
            || open(&self.tour.end)
            || open(&self.tour.circuit)
            || open(&self.tour.graphtype)
            || self.tour.edgetype.as_ref().is_some_and(open)
            || self.tour.precedences.as_ref().is_some_and(open)
            || self.tour.cluster.as_ref().is_some_and(open)
            || self.costs.iter().any(|c| {
                c.property.as_ref().is_some_and(open)
                    || open(&c.partial)
                    || c.temporal.as_ref().is_some_and(open)
            })
            || self.objectives.iter().any(|o| match o {
                ObjectiveStmt::Minimize(t) | ObjectiveStmt::Maximize(t) => t.is_wildcard(),
                ObjectiveStmt::UpperBound { term, .. } | ObjectiveStmt::LowerBound { term, .. } => {
                    term.is_wildcard()
                }
                _ => false,
            })
    }
}

/// Semantic equality of two resolved definitions, ignoring how the source
/// text happened to spell the objectives.
pub fn resolved_equal(a: &ResolvedVariant, b: &ResolvedVariant) -> bool {
    a.traveler == b.traveler
        && a.traversals == b.traversals
        && a.visits == b.visits
        && a.group == b.group
        && a.covering == b.covering
        && a.tour == b.tour
        && a.costs == b.costs
        && a.objectives == b.objectives
        && a.extension == b.extension
        && a.annotations == b.annotations
}
