use proptest::prelude::*;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use traffic_cli::dsl::{parse_document, Document};
use traffic_cli::error::CliError;
use traffic_core::graph::random::random_test_graph;
use traffic_core::graph::{Coloring, Label};
use traffic_core::traffic::{FreeGaussian, MomentFunctional, MomentTable};

proptest! {
    #![proptest_config(ProptestConfig::with_cases(100))]

    #[test]
    fn parse_serialize_parse_is_isomorphic(seed in any::<u64>()) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let labels = [Label::new("x"), Label::starred("x"), Label::new("u2"), Label::starred("u2")];
        let mut doc = Document::default();
        for i in 0..rng.random_range(1..4) {
            let t = random_test_graph(&mut rng, 5, 6, &labels);
            let outs = (0..rng.random_range(0..3)).map(|_| rng.random_range(0..t.num_vertices())).collect();
            doc.graphs.push((format!("g{i}"), t.with_outputs(outs).unwrap()));
        }
        doc.colorings.push(("c".into(), Coloring::from_pairs([("x", 0), ("u2", rng.random_range(0..3))])));
        let back = parse_document(&doc.to_text()).unwrap();
        prop_assert_eq!(back.graphs.len(), doc.graphs.len());
        for ((n1, t1), (n2, t2)) in doc.graphs.iter().zip(&back.graphs) {
            prop_assert_eq!(n1, n2);
            prop_assert!(t1.is_isomorphic(t2), "{:?} vs {:?}", t1, t2);
        }
        prop_assert_eq!(back.coloring("c").unwrap(), doc.coloring("c").unwrap());
        // a second round is a fixed point of the text
        prop_assert_eq!(back.to_text(), parse_document(&back.to_text()).unwrap().to_text());
    }
}

#[test]
fn moment_tables_round_trip() {
    let phi = FreeGaussian::new().with_semicircle("s").with_circular("c");
    let letters = [Label::new("s"), Label::new("c"), Label::starred("c")];
    let table = MomentTable::from_functional(&phi, &letters, &["s"], 4).unwrap();
    let doc = Document { moments: vec![("t".into(), table.clone())], ..Document::default() };
    let back = parse_document(&doc.to_text()).unwrap();
    let again = back.table("t").unwrap();
    assert_eq!(again.degree(), 4);
    assert!(again.is_selfadjoint("s") && !again.is_selfadjoint("c"));
    assert_eq!(again.entries(), table.entries());
    let w = again.parse_word("cc*ss").unwrap();
    assert_eq!(again.moment(&w).unwrap(), phi.moment(&w).unwrap());
}

#[test]
fn spec_examples() {
    let doc = parse_document("graph c2 { a -> b : x ; b -> a : x ; }").unwrap();
    let t = doc.graph("c2").unwrap();
    assert_eq!((t.num_vertices(), t.num_edges(), t.outputs().len()), (2, 2, 0));
    let doc = parse_document("graph loop { a -> a : u* ; }").unwrap();
    assert_eq!(doc.graph("loop").unwrap().edges()[0].label, Label::starred("u"));
    match parse_document("graph bad { a -> b : x ; c -> d : y ; }").unwrap_err() {
        e @ CliError::Parse { .. } => {
            assert_eq!(e.code(), "disconnected_graph");
            assert!(e.to_string().starts_with("1:7:"), "{e}");
        }
        other => panic!("{other:?}"),
    }
}

#[test]
fn comments_and_whitespace() {
    let text = "# header\ngraph   g{a->b:x;# trailing\n\n  b -> a : x* ;\n}\n";
    let doc = parse_document(text).unwrap();
    assert_eq!(doc.graph("g").unwrap().num_edges(), 2);
    let err = parse_document("graph g {\n  a -> b : x\n}").unwrap_err();
    assert_eq!(err.code(), "syntax_error");
    assert!(err.to_string().starts_with("3:1:"), "{err}");
}
