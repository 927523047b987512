//! Printing a definition and parsing it back must reproduce the tree.
//! ASTs are generated bottom-up from the shapes the grammar admits; spans
//! are erased before comparing.

use proptest::prelude::*;
use t3co::rat::rat;
use t3co::syntax::*;

fn plain(b: &str) -> Name {
    Name::plain(b)
}

fn strip_spans(ast: &mut VariantAst) {
    let zero = SourceSpan::default();
    for a in ast
        .alpha
        .iter_mut()
        .chain(ast.beta.iter_mut())
        .chain(ast.gamma.iter_mut())
    {
        a.span = zero;
    }
    for c in &mut ast.delta {
        c.span = zero;
    }
    for o in &mut ast.epsilon {
        o.span = zero;
    }
    ast.span = zero;
}

fn fn_name() -> impl Strategy<Value = Name> {
    (
        prop::sample::select(vec!["c", "w", "q", "h", "p", "price", "share", "avail", "cap"]),
        prop::option::of(prop::sample::select(vec!["i", "t"])),
        any::<bool>(),
    )
        .prop_map(|(base, sub, bar)| Name {
            base: base.to_string(),
            sub: sub.map(str::to_string),
            bar,
        })
}

fn word() -> impl Strategy<Value = Name> {
    prop::sample::select(vec![
        "once",
        "always",
        "metric",
        "path",
        "cycle",
        "arbitrary",
        "atomic",
        "time",
        "position",
        "cover",
    ])
    .prop_map(Name::plain)
}

fn walk_ref() -> impl Strategy<Value = WalkRef> {
    prop_oneof![
        Just(WalkRef::Whole),
        Just(WalkRef::VisitedSeq),
        Just(WalkRef::VisitedSet),
        Just(WalkRef::EdgeSeq),
        Just(WalkRef::EdgeSet),
        Just(WalkRef::At(Box::new(Expr::ident("i")))),
        (0i64..5).prop_map(|k| WalkRef::At(Box::new(Expr::num(k)))),
        Just(WalkRef::PrefixLt(Box::new(Expr::ident("i")))),
        Just(WalkRef::PrefixLe(Box::new(Expr::ident("i")))),
    ]
}

fn expr() -> impl Strategy<Value = Expr> {
    let leaf = prop_oneof![
        (0i64..=12).prop_map(Expr::num),
        Just(Expr::Inf),
        word().prop_map(Expr::Ident),
        fn_name().prop_map(Expr::Ident),
        walk_ref().prop_map(Expr::Walk),
        Just(Expr::Bars(Box::new(Expr::Walk(WalkRef::VisitedSet)))),
        Just(Expr::Bars(Box::new(Expr::ident("T")))),
        Just(Expr::Call(plain("log"), vec![Expr::ident("n")])),
    ];
    leaf.prop_recursive(3, 24, 4, |inner| {
        let args = prop::collection::vec(inner.clone(), 1..=2);
        prop_oneof![
            (fn_name(), args.clone()).prop_map(|(n, a)| Expr::Call(n, a)),
            (
                prop::sample::select(vec![BinOp::Add, BinOp::Sub, BinOp::Mul, BinOp::Div]),
                inner.clone(),
                inner.clone()
            )
                .prop_map(|(op, a, b)| Expr::Bin(op, Box::new(a), Box::new(b))),
            inner.clone().prop_map(|e| Expr::Neg(Box::new(e))),
            inner.clone().prop_map(|e| Expr::Min(Box::new(e))),
            inner.clone().prop_map(|e| Expr::Max(Box::new(e))),
            inner
                .clone()
                .prop_map(|e| Expr::MaxOver(plain("i"), Box::new(e))),
            (0i64..3, inner.clone()).prop_map(|(lo, body)| Expr::Sum {
                var: plain("i"),
                lo: Box::new(Expr::num(lo)),
                hi: Box::new(Expr::ident("m")),
                body: Box::new(body),
            }),
            inner.clone().prop_map(|body| Expr::SumIn {
                var: plain("v"),
                set: Box::new(Expr::Walk(WalkRef::VisitedSeq)),
                body: Box::new(body),
            }),
            prop::collection::vec(inner.clone(), 1..=3).prop_map(Expr::SetLit),
            (inner.clone(), inner.clone())
                .prop_map(|(a, b)| Expr::SetRange(Box::new(a), Box::new(b))),
            inner.clone().prop_map(|body| Expr::SetBuilder(
                Box::new(body),
                Box::new(Expr::Rel(
                    vec![RelOp::In],
                    vec![Expr::ident("e"), Expr::Walk(WalkRef::EdgeSet)],
                )),
            )),
            (
                prop::collection::vec(
                    prop::sample::select(vec![
                        RelOp::Eq,
                        RelOp::Le,
                        RelOp::Lt,
                        RelOp::Ge,
                        RelOp::Gt
                    ]),
                    1..=2
                ),
                inner.clone()
            )
                .prop_map(|(ops, seed)| {
                    let terms = std::iter::repeat(seed).take(ops.len() + 1).collect();
                    Expr::Rel(ops, terms)
                }),
        ]
    })
}

fn rel_op() -> impl Strategy<Value = RelOp> {
    prop::sample::select(vec![RelOp::Eq, RelOp::Le, RelOp::Ge])
}

fn value(first_rel_required: bool) -> impl Strategy<Value = Value> {
    let first = if first_rel_required {
        (rel_op().prop_map(Some), expr()).boxed()
    } else {
        (prop::option::of(rel_op()), expr()).boxed()
    };
    (
        first,
        prop::collection::vec((prop::option::of(rel_op()), expr()), 0..=1),
    )
        .prop_map(|((rel, e), rest)| {
            let mut alts = vec![ValueAlt { rel, expr: e }];
            for (rel, e) in rest {
                alts.push(ValueAlt { rel, expr: e });
            }
            Value { alts }
        })
}

fn quant() -> impl Strategy<Value = Vec<(Name, Expr)>> {
    prop_oneof![
        4 => Just(Vec::new()),
        1 => Just(vec![(plain("t"), Expr::ident("T"))]),
    ]
}

fn attr_name() -> impl Strategy<Value = Name> {
    prop_oneof![
        prop::sample::select(vec![
            "count",
            "traversals",
            "visits",
            "start",
            "end",
            "circuit",
            "graphtype",
            "edgetype",
            "group",
            "cluster",
            "precedences",
            "covering",
            "strongly connected",
            "binary tree",
        ])
        .prop_map(Name::plain),
        Just(Name::sub("circuit", "t")),
    ]
}

fn longhand_attr() -> impl Strategy<Value = Attribute> {
    (quant(), attr_name(), value(true)).prop_map(|(quant, name, value)| Attribute {
        quant,
        name: Some(name),
        value: Some(value),
        span: SourceSpan::default(),
    })
}

fn shorthand_attr() -> impl Strategy<Value = Attribute> {
    prop_oneof![
        longhand_attr(),
        (quant(), attr_name()).prop_map(|(quant, name)| Attribute {
            quant,
            name: Some(name),
            value: None,
            span: SourceSpan::default(),
        }),
        (quant(), rel_op(), expr()).prop_map(|(quant, rel, e)| Attribute {
            quant,
            name: None,
            value: Some(Value::single(Some(rel), e)),
            span: SourceSpan::default(),
        }),
        (word(), prop::collection::vec(word().prop_map(Expr::Ident), 1..=2)).prop_map(
            |(name, args)| Attribute {
                quant: Vec::new(),
                name: None,
                value: Some(Value::single(None, Expr::Call(name, args))),
                span: SourceSpan::default(),
            }
        ),
    ]
}

fn range_tag() -> impl Strategy<Value = RangeTag> {
    prop_oneof![
        Just(RangeTag::R),
        Just(RangeTag::RNonNeg),
        Just(RangeTag::RPos),
        Just(RangeTag::Z),
        Just(RangeTag::ZNonNeg),
        Just(RangeTag::ZPos),
        Just(RangeTag::Set(vec![Expr::num(0), Expr::num(1)])),
    ]
}

fn cost_attr() -> impl Strategy<Value = CostAttr> {
    let named_value = prop::collection::vec(word().prop_map(Expr::Ident), 1..=2).prop_map(|es| {
        Value {
            alts: es
                .into_iter()
                .map(|expr| ValueAlt { rel: None, expr })
                .collect(),
        }
    });
    prop_oneof![
        word().prop_map(CostAttr::Tag),
        Just(CostAttr::Call(
            plain("grid"),
            vec![Expr::ident("m"), Expr::ident("n")],
        )),
        Just(CostAttr::Tuple(vec![plain("identity"), plain("triangle")])),
        named_value.prop_map(|v| CostAttr::Named(plain("temporal"), v)),
    ]
}

fn cost_fn() -> impl Strategy<Value = CostFn> {
    (
        fn_name(),
        prop::option::of(Just(FamilyIndex {
            var: "i".to_string(),
            lo: Expr::num(1),
            hi: Expr::ident("m"),
        })),
        prop::sample::select(vec!["E", "V"]),
        range_tag(),
        prop::collection::vec(cost_attr(), 0..=2),
    )
        .prop_map(|(name, family, domain, range, attrs)| CostFn {
            name,
            family,
            domain: Expr::ident(domain),
            range,
            attrs,
            span: SourceSpan::default(),
        })
}

fn objective() -> impl Strategy<Value = Objective> {
    let body = prop_oneof![
        expr().prop_map(|e| Expr::Min(Box::new(e))),
        expr().prop_map(|e| Expr::Max(Box::new(e))),
        (expr(), expr()).prop_map(|(a, b)| Expr::Rel(vec![RelOp::Ge], vec![a, b])),
        (expr(), expr(), expr()).prop_map(|(a, b, c)| Expr::Forall {
            binders: vec![(plain("i"), Expr::SetRange(
                Box::new(Expr::num(0)),
                Box::new(Expr::ident("k")),
            ))],
            body: Box::new(Expr::Rel(vec![RelOp::Le, RelOp::Le], vec![a, b, c])),
        }),
    ];
    body.prop_map(|expr| Objective {
        expr,
        span: SourceSpan::default(),
    })
}

fn annotation() -> impl Strategy<Value = Annotation> {
    (
        prop::option::of(1u32..4),
        "[a-zA-Z][a-zA-Z0-9 ,]{0,24}",
    )
        .prop_map(|(num, text)| Annotation {
            num,
            text: text.trim().to_string(),
        })
}

fn variant(notation: Notation) -> impl Strategy<Value = VariantAst> {
    let attrs = move || {
        let lo = usize::from(notation == Notation::Shorthand);
        match notation {
            Notation::Longhand => prop::collection::vec(longhand_attr(), lo..=2).boxed(),
            Notation::Shorthand => prop::collection::vec(shorthand_attr(), lo..=2).boxed(),
        }
    };
    let lo = usize::from(notation == Notation::Shorthand);
    (
        attrs(),
        attrs(),
        attrs(),
        prop::collection::vec(cost_fn(), lo..=2),
        prop::collection::vec(objective(), lo..=2),
        prop::option::of(prop::collection::vec(1u32..4, 0..=2).prop_map(|nums| ExtMark { nums })),
        prop::collection::vec(annotation(), 0..=2),
    )
        .prop_map(
            move |(alpha, beta, gamma, delta, epsilon, extension, annotations)| VariantAst {
                notation,
                alpha,
                beta,
                gamma,
                delta,
                epsilon,
                extension,
                annotations,
                span: SourceSpan::default(),
            },
        )
}

fn any_variant() -> impl Strategy<Value = VariantAst> {
    prop_oneof![
        variant(Notation::Longhand),
        variant(Notation::Shorthand),
    ]
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(256))]

    #[test]
    fn print_parse_is_identity(ast in any_variant()) {
        let text = render(&ast);
        let mut reparsed = parse(&text, None)
            .map_err(|e| TestCaseError::fail(format!("{e}\n---\n{text}")))?;
        strip_spans(&mut reparsed);
        let mut expect = ast.clone();
        strip_spans(&mut expect);
        prop_assert_eq!(&reparsed, &expect, "text was:\n{}", text);
        let again = render(&reparsed);
        prop_assert_eq!(&again, &text, "printing is not idempotent");
    }

    #[test]
    fn rationals_roundtrip(n in -9999i64..9999, d in 1i64..999) {
        let r = rat(n) / rat(d);
        let s = t3co::rat::fmt_rat(&r);
        let back = t3co::rat::parse_rat(&s).unwrap();
        prop_assert_eq!(r, back);
    }
}
