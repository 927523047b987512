//! Parse trees for TSP-T3CO definitions in both notations.

use crate::rat::Rat;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Notation {
    Longhand,
    Shorthand,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord)]
pub enum FieldKind {
    Alpha,
    Beta,
    Gamma,
    Delta,
    Epsilon,
}

impl FieldKind {
    pub fn greek(self) -> &'static str {
        match self {
            FieldKind::Alpha => "α",
            FieldKind::Beta => "β",
            FieldKind::Gamma => "γ",
            FieldKind::Delta => "δ",
            FieldKind::Epsilon => "ε",
        }
    }

    pub fn keyword(self) -> &'static str {
        match self {
            FieldKind::Alpha => "traveler",
            FieldKind::Beta => "target",
            FieldKind::Gamma => "tour",
            FieldKind::Delta => "costs",
            FieldKind::Epsilon => "objective",
        }
    }

    pub const ALL: [FieldKind; 5] = [
        FieldKind::Alpha,
        FieldKind::Beta,
        FieldKind::Gamma,
        FieldKind::Delta,
        FieldKind::Epsilon,
    ];
}

/// Byte range plus the line/column of its start, attached to every node.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub struct SourceSpan {
    pub begin: usize,
    pub end: usize,
    pub line: u32,
    pub col: u32,
}

impl SourceSpan {
    pub fn join(self, other: SourceSpan) -> SourceSpan {
        SourceSpan {
            begin: self.begin.min(other.begin),
            end: self.end.max(other.end),
            line: self.line.min(other.line),
            col: if other.line < self.line || (other.line == self.line && other.col < self.col) {
                other.col
            } else {
                self.col
            },
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum RelOp {
    Eq,
    Le,
    Lt,
    Ge,
    Gt,
    In,
}

impl RelOp {
    pub fn symbol(self) -> &'static str {
        match self {
            RelOp::Eq => "=",
            RelOp::Le => "≤",
            RelOp::Lt => "<",
            RelOp::Ge => "≥",
            RelOp::Gt => ">",
            RelOp::In => "∈",
        }
    }
}

/// An identifier: base word, optional subscript, optional overbar (the
/// complement-cost notation p̄).
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Name {
    pub base: String,
    pub sub: Option<String>,
    pub bar: bool,
}

impl Name {
    pub fn plain(base: &str) -> Name {
        Name {
            base: base.to_string(),
            sub: None,
            bar: false,
        }
    }

    pub fn sub(base: &str, sub: &str) -> Name {
        Name {
            base: base.to_string(),
            sub: Some(sub.to_string()),
            bar: false,
        }
    }
}

/// Built-in walk accessors.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum WalkRef {
    /// The whole walk S.
    Whole,
    /// Visited-node sequence S_V.
    VisitedSeq,
    /// Visited-node set V_S.
    VisitedSet,
    /// Edge sequence S_E.
    EdgeSeq,
    /// Edge set E_S.
    EdgeSet,
    /// Prefix S_{<i}: edges up to the i-th visited node, node excluded.
    PrefixLt(Box<Expr>),
    /// Prefix S_{≤i}: edges and nodes up to the i-th visited node.
    PrefixLe(Box<Expr>),
    /// The i-th visited node S_i.
    At(Box<Expr>),
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum BinOp {
    Add,
    Sub,
    Mul,
    Div,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Expr {
    Num(Rat),
    Inf,
    /// Template wildcard.
    Star,
    Ident(Name),
    Call(Name, Vec<Expr>),
    /// Cardinality bars, |V_S|.
    Bars(Box<Expr>),
    Walk(WalkRef),
    Neg(Box<Expr>),
    Bin(BinOp, Box<Expr>, Box<Expr>),
    /// Relation chain: `terms.len() == ops.len() + 1`.
    Rel(Vec<RelOp>, Vec<Expr>),
    /// Relation with elided left side, as in covering arguments "≤ b".
    HalfRel(RelOp, Box<Expr>),
    SetLit(Vec<Expr>),
    /// {lo,…,hi}
    SetRange(Box<Expr>, Box<Expr>),
    /// {body : binder}
    SetBuilder(Box<Expr>, Box<Expr>),
    Min(Box<Expr>),
    Max(Box<Expr>),
    /// max_i body
    MaxOver(Name, Box<Expr>),
    /// Σ_{var=lo}^{hi} body
    Sum {
        var: Name,
        lo: Box<Expr>,
        hi: Box<Expr>,
        body: Box<Expr>,
    },
    /// Σ_{var ∈ set} body
    SumIn {
        var: Name,
        set: Box<Expr>,
        body: Box<Expr>,
    },
    /// ∀ binders body (the optional colon is not kept).
    Forall {
        binders: Vec<(Name, Expr)>,
        body: Box<Expr>,
    },
}

impl Expr {
    pub fn ident(base: &str) -> Expr {
        Expr::Ident(Name::plain(base))
    }

    pub fn num(n: i64) -> Expr {
        Expr::Num(crate::rat::rat(n))
    }
}

/// One alternative of an attribute value; plain values have exactly one.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ValueAlt {
    pub rel: Option<RelOp>,
    pub expr: Expr,
}

/// Attribute value: one or more "or"-separated alternatives (templates).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Value {
    pub alts: Vec<ValueAlt>,
}

impl Value {
    pub fn single(rel: Option<RelOp>, expr: Expr) -> Value {
        Value {
            alts: vec![ValueAlt { rel, expr }],
        }
    }

    pub fn is_template(&self) -> bool {
        self.alts.len() > 1 || matches!(self.alts[0].expr, Expr::Star)
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Attribute {
    /// Quantifier binders, as in "∀ t ∈ T: circuit_t = True".
    pub quant: Vec<(Name, Expr)>,
    /// Present for named attributes ("count =1") and bare names
    /// ("circuit"); absent for pure value forms ("=1", "partition(once)").
    pub name: Option<Name>,
    pub value: Option<Value>,
    pub span: SourceSpan,
}

/// Declared range of a cost function.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum RangeTag {
    R,
    RNonNeg,
    RPos,
    Z,
    ZNonNeg,
    ZPos,
    Set(Vec<Expr>),
}

/// Trailing attribute of a cost function signature.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum CostAttr {
    /// Bare word: metric, waiting, partial, symmetric, euclid, …
    Tag(Name),
    /// Parameterised: grid(m,n), costzone(k), poszone(k).
    Call(Name, Vec<Expr>),
    /// Parenthesised property parameters: (identity, triangle).
    Tuple(Vec<Name>),
    /// Named form used by templates: temporal = time or position.
    Named(Name, Value),
}

/// Index range of a cost-function family {avail_i}_{i=1}^m.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FamilyIndex {
    pub var: String,
    pub lo: Expr,
    pub hi: Expr,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CostFn {
    pub name: Name,
    pub family: Option<FamilyIndex>,
    pub domain: Expr,
    pub range: RangeTag,
    pub attrs: Vec<CostAttr>,
    pub span: SourceSpan,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Objective {
    pub expr: Expr,
    pub span: SourceSpan,
}

/// The ⊕ marker after the closing bracket; `nums` empty for a bare ⟩⊕.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ExtMark {
    pub nums: Vec<u32>,
}

/// A "⊕n: …" annotation line carried verbatim.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Annotation {
    pub num: Option<u32>,
    pub text: String,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct VariantAst {
    pub notation: Notation,
    pub alpha: Vec<Attribute>,
    pub beta: Vec<Attribute>,
    pub gamma: Vec<Attribute>,
    pub delta: Vec<CostFn>,
    pub epsilon: Vec<Objective>,
    pub extension: Option<ExtMark>,
    pub annotations: Vec<Annotation>,
    pub span: SourceSpan,
}

impl VariantAst {
    pub fn attributes(&self, field: FieldKind) -> &[Attribute] {
        match field {
            FieldKind::Alpha => &self.alpha,
            FieldKind::Beta => &self.beta,
            FieldKind::Gamma => &self.gamma,
            _ => &[],
        }
    }

    /// True when any value carries a wildcard or an "or"-alternative list.
    pub fn is_template(&self) -> bool {
        let attr_template = |attrs: &[Attribute]| {
            attrs
                .iter()
                .any(|a| a.value.as_ref().is_some_and(Value::is_template))
        };
        attr_template(&self.alpha)
            || attr_template(&self.beta)
            || attr_template(&self.gamma)
            || self.delta.iter().any(|c| {
                c.attrs.iter().any(|a| match a {
                    CostAttr::Named(_, v) => v.is_template(),
                    CostAttr::Tag(n) => n.base == "*",
                    _ => false,
                })
            })
            || self
                .epsilon
                .iter()
                .any(|o| contains_star(&o.expr))
    }
}

pub(crate) fn contains_star(e: &Expr) -> bool {
    match e {
        Expr::Star => true,
        Expr::Num(_) | Expr::Inf | Expr::Ident(_) | Expr::Walk(_) => false,
        Expr::Call(_, args) | Expr::SetLit(args) => args.iter().any(contains_star),
        Expr::Bars(x) | Expr::Neg(x) | Expr::Min(x) | Expr::Max(x) | Expr::HalfRel(_, x) => {
            contains_star(x)
        }
        Expr::MaxOver(_, x) => contains_star(x),
        Expr::Bin(_, a, b) | Expr::SetRange(a, b) | Expr::SetBuilder(a, b) => {
            contains_star(a) || contains_star(b)
        }
        Expr::Rel(_, terms) => terms.iter().any(contains_star),
        Expr::Sum { lo, hi, body, .. } => {
            contains_star(lo) || contains_star(hi) || contains_star(body)
        }
        Expr::SumIn { set, body, .. } => contains_star(set) || contains_star(body),
        Expr::Forall { binders, body } => {
            binders.iter().any(|(_, s)| contains_star(s)) || contains_star(body)
        }
    }
}
