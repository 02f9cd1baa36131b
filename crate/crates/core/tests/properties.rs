use freeadj::monoid::Element;
use freeadj::rewrite::{is_normal, normalize, normalize_trace, redexes, reduction_graph};
use freeadj::words::{parse, print, Generator, Word};
use proptest::prelude::*;

fn generator(max_index: u64) -> impl Strategy<Value = Generator> {
    (any::<bool>(), 0..=max_index).prop_map(|(eta, k)| {
        if eta {
            Generator::eta(k)
        } else {
            Generator::eps(k)
        }
    })
}

fn word(max_len: usize, max_index: u64) -> impl Strategy<Value = Word> {
    prop::collection::vec(generator(max_index), 0..=max_len).prop_map(Word::from)
}

proptest! {
    #[test]
    fn degree_is_additive(u in word(8, 6), v in word(8, 6)) {
        prop_assert_eq!(u.concat(&v).degree(), u.degree() + v.degree());
    }

    #[test]
    fn print_then_parse_is_identity(u in word(10, 1000)) {
        prop_assert_eq!(parse(&print(&u)).unwrap(), u);
    }

    #[test]
    fn normalize_is_idempotent_and_canonical(u in word(10, 5)) {
        let nf = normalize(&u);
        prop_assert!(is_normal(&nf));
        prop_assert_eq!(normalize(&nf), nf);
    }

    #[test]
    fn every_trace_step_lowers_degree(u in word(10, 5)) {
        let trace = normalize_trace(&u);
        for step in &trace.steps {
            let drop = step.before.degree() - step.after.degree();
            prop_assert_eq!(drop, step.rule.case.degree_drop());
        }
        prop_assert_eq!(trace.normal_form(), &normalize(&u));
    }

    #[test]
    fn normal_shape_means_no_redex(u in word(8, 4)) {
        prop_assert_eq!(is_normal(&u), redexes(&u).is_empty());
    }

    #[test]
    fn reduction_graph_has_one_sink(u in word(6, 3)) {
        let graph = reduction_graph(&u);
        let sinks = graph.sinks();
        prop_assert_eq!(sinks.len(), 1);
        prop_assert_eq!(sinks[0], &normalize(&u));
    }

    #[test]
    fn multiplication_is_associative(a in word(6, 4), b in word(6, 4), c in word(6, 4)) {
        let (a, b, c) = (Element::new(&a), Element::new(&b), Element::new(&c));
        prop_assert_eq!(a.mul(&b).mul(&c), a.mul(&b.mul(&c)));
    }

    #[test]
    fn shift_is_an_injective_endomorphism(a in word(6, 4), b in word(6, 4)) {
        let (x, y) = (Element::new(&a), Element::new(&b));
        prop_assert_eq!(x.mul(&y).apply_f(), x.apply_f().mul(&y.apply_f()));
        prop_assert_eq!(x.apply_f() == y.apply_f(), x == y);
    }
}
