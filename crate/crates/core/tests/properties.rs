use std::collections::{BTreeSet, HashSet};

use proptest::prelude::*;

use actl::algebra::{is_admissible, simple_diagram, stripped};
use actl::cli::text::{parse_diagram, serialize};
use actl::coxeter::{theta, CoxeterGraph, GraphKind};
use actl::decor::{reduce_cyclic, reduce_word, CyclicWord, Decoration, ScaledWord, Word};
use actl::diagram::{canonicalize, Diagram};
use actl::engine::{concat, eval_scaled, eval_word, is_confluent, multiply, stack_raw, Element};

fn decoration() -> impl Strategy<Value = Decoration> {
    prop::sample::select(Decoration::ALL.to_vec())
}

fn word(max: usize) -> impl Strategy<Value = Word> {
    prop::collection::vec(decoration(), 0..=max).prop_map(Word)
}

fn gen_word(n: usize, max: usize) -> impl Strategy<Value = Vec<usize>> {
    prop::collection::vec(1..=n + 1, 0..=max)
}

fn rank_and_words(count: usize, max: usize) -> impl Strategy<Value = (usize, Vec<Vec<usize>>)> {
    (2usize..=4).prop_flat_map(move |n| (Just(n), prop::collection::vec(gen_word(n, max), count)))
}

fn pair(a: Decoration, b: Decoration) -> Option<(u32, Decoration)> {
    use Decoration::*;
    match (a, b) {
        (Dot, Dot) => Some((0, Triangle)),
        (OpenDot, OpenDot) => Some((0, OpenTriangle)),
        (x, y) if x.same_type(y) => Some((1, if x.is_dot() || y.is_dot() { if x.is_open() { OpenDot } else { Dot } } else { x })),
        _ => None,
    }
}

/// Every terminal (scalar, word) reachable by single-rule rewrites in any order.
fn terminals(w: &Word) -> BTreeSet<(u32, Vec<Decoration>)> {
    let mut out = BTreeSet::new();
    let mut seen = HashSet::new();
    let mut stack = vec![(0u32, w.0.clone())];
    while let Some((e, v)) = stack.pop() {
        if !seen.insert((e, v.clone())) {
            continue;
        }
        let mut terminal = true;
        for i in 0..v.len().saturating_sub(1) {
            if let Some((de, c)) = pair(v[i], v[i + 1]) {
                terminal = false;
                let mut u = v[..i].to_vec();
                u.push(c);
                u.extend_from_slice(&v[i + 2..]);
                stack.push((e + de, u));
            }
        }
        if terminal {
            out.insert((e, v));
        }
    }
    out
}

fn open_pattern(w: &Word) -> Vec<bool> {
    let mut v: Vec<bool> = w.symbols().iter().map(|d| d.is_open()).collect();
    v.dedup();
    v
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(256))]

    #[test]
    fn word_rewriting_is_confluent(w in word(10)) {
        let t = terminals(&w);
        prop_assert_eq!(t.len(), 1);
        let r = reduce_word(&w);
        prop_assert_eq!(t.into_iter().next().unwrap(), (r.two_exp, r.word.0));
    }

    #[test]
    fn normalization_is_idempotent(w in word(12)) {
        let r = reduce_word(&w);
        prop_assert_eq!(reduce_word(&r.word), ScaledWord { two_exp: 0, word: r.word.clone() });
        prop_assert!(r.word.is_basis());
    }

    #[test]
    fn reduction_keeps_types_apart(w in word(12)) {
        let r = reduce_word(&w);
        prop_assert_eq!(open_pattern(&r.word), open_pattern(&w));
    }

    #[test]
    fn reduction_is_a_homomorphism(u in word(8), v in word(8)) {
        let (ru, rv) = (reduce_word(&u), reduce_word(&v));
        let inner = reduce_word(&ru.word.concat(&rv.word));
        let whole = reduce_word(&u.concat(&v));
        prop_assert_eq!(whole.word, inner.word);
        prop_assert_eq!(whole.two_exp, inner.two_exp + ru.two_exp + rv.two_exp);
    }

    #[test]
    fn loops_ignore_rotation_and_reversal(w in word(10), r in 0usize..10) {
        let base = reduce_cyclic(&w);
        let mut v = w.0.clone();
        if !v.is_empty() {
            let r = r % v.len();
            v.rotate_left(r);
        }
        prop_assert_eq!(reduce_cyclic(&Word(v)), base.clone());
        prop_assert_eq!(reduce_cyclic(&w.reversed()), base);
        prop_assert_eq!(CyclicWord::new(w.reversed()), CyclicWord::new(w));
    }

    #[test]
    fn partial_products_are_confluent((n, ws) in rank_and_words(2, 5)) {
        let a = eval_scaled(&ws[0], n).unwrap().diagram;
        let b = eval_scaled(&ws[1], n).unwrap().diagram;
        let raw = stack_raw(&a, &b).unwrap();
        prop_assume!(raw.height() <= 8);
        prop_assert!(is_confluent(&raw));
    }

    #[test]
    fn canonicalize_is_idempotent((n, ws) in rank_and_words(1, 10)) {
        let d = eval_scaled(&ws[0], n).unwrap().diagram;
        let again = canonicalize(&d.to_raw()).unwrap();
        prop_assert_eq!((again.two_exp, again.delta_exp), (0, 0));
        prop_assert_eq!(again.diagram, d);
    }

    #[test]
    fn text_round_trip((n, ws) in rank_and_words(1, 10)) {
        let d = eval_scaled(&ws[0], n).unwrap().diagram;
        let text = serialize(&d);
        let back = parse_diagram(&text).unwrap();
        prop_assert_eq!(serialize(&back), text);
        prop_assert_eq!(back, d);
    }

    #[test]
    fn evaluation_is_a_homomorphism((n, ws) in rank_and_words(2, 6)) {
        let x = eval_scaled(&ws[0], n).unwrap();
        let y = eval_scaled(&ws[1], n).unwrap();
        let xy = concat(&x.diagram, &y.diagram).unwrap();
        let whole = eval_scaled(&[ws[0].clone(), ws[1].clone()].concat(), n).unwrap();
        prop_assert_eq!(&whole.diagram, &xy.diagram);
        prop_assert_eq!(whole.two_exp, x.two_exp + y.two_exp + xy.two_exp);
        prop_assert_eq!(whole.delta_exp, x.delta_exp + y.delta_exp + xy.delta_exp);
    }

    #[test]
    fn multiplication_is_associative((n, ws) in rank_and_words(3, 3)) {
        let e: Vec<Element> = ws.iter().map(|w| eval_word(w, n).unwrap()).collect();
        let left = multiply(&multiply(&e[0], &e[1]).unwrap(), &e[2]).unwrap();
        let right = multiply(&e[0], &multiply(&e[1], &e[2]).unwrap()).unwrap();
        prop_assert_eq!(left, right);
    }

    #[test]
    fn identity_is_a_unit((n, ws) in rank_and_words(1, 8)) {
        let x = eval_word(&ws[0], n).unwrap();
        let id = Element::from_diagram(Diagram::identity(n + 2));
        prop_assert_eq!(multiply(&id, &x).unwrap(), x.clone());
        prop_assert_eq!(multiply(&x, &id).unwrap(), x);
    }

    #[test]
    fn alpha_never_drops((n, ws) in rank_and_words(2, 6)) {
        let a = eval_scaled(&ws[0], n).unwrap().diagram;
        let b = eval_scaled(&ws[1], n).unwrap().diagram;
        prop_assert!(concat(&a, &b).unwrap().diagram.alpha() >= a.alpha());
        prop_assert!(concat(&a, &b).unwrap().diagram.alpha() >= b.alpha());
    }

    #[test]
    fn products_stay_admissible((n, ws) in rank_and_words(1, 12)) {
        let d = stripped(&ws[0], n).unwrap();
        let r = is_admissible(&d);
        prop_assert!(r.verdict, "{:?}", r.violated);
    }

    #[test]
    fn one_sided_subalgebras(
        (n, w) in (2usize..=4).prop_flat_map(|n| (Just(n), prop::collection::vec(1..=n, 0..10))),
        prime in any::<bool>(),
    ) {
        let w: Vec<usize> = w.into_iter().map(|i| if prime { i + 1 } else { i }).collect();
        let d = stripped(&w, n).unwrap();
        let has = |open: bool| {
            d.edges().iter().any(|e| if open { e.word.has_open() } else { e.word.has_closed() })
                || d.interleave().iter().any(|b| if open { b.word.has_open() } else { b.word.has_closed() })
        };
        prop_assert!(!has(!prime));
    }

    #[test]
    fn theta_respects_commutation((n, ws) in rank_and_words(1, 8)) {
        let g = CoxeterGraph::new(GraphKind::Ct, n);
        let c = g.canonical(&ws[0]);
        prop_assert_eq!(theta(&c, n).unwrap(), theta(&ws[0], n).unwrap());
    }
}

#[test]
fn order_is_a_strict_partial_order() {
    let ds: Vec<Diagram> = actl::cli::suite::reachable(2, 6).into_keys().collect();
    for a in &ds {
        assert!(!a.order_lt(a));
        for b in &ds {
            if a.order_lt(b) {
                assert!(!b.order_lt(a));
                for c in &ds {
                    if b.order_lt(c) {
                        assert!(a.order_lt(c));
                    }
                }
            }
        }
    }
    assert!(!simple_diagram(1, 2).unwrap().order_lt(&simple_diagram(2, 2).unwrap()));
}

/// Compatibility holds for the unreduced product: stacking adds the same
/// decorations and loops to both sides. Reduced heights can cross over
/// when a loop of one product evaluates to δ.
#[test]
fn order_survives_multiplication() {
    let shape = |r: &actl::diagram::RawDiagram| canonicalize(r).unwrap().diagram.shape();
    for n in [2, 3] {
        let ds: Vec<Diagram> = actl::cli::suite::reachable(n, 6).into_keys().collect();
        let gens: Vec<Diagram> = (1..=n + 1).map(|i| simple_diagram(i, n).unwrap()).collect();
        let mut pairs = 0;
        for a in &ds {
            for b in ds.iter().filter(|b| a.order_lt(b)) {
                pairs += 1;
                for g in &gens {
                    for (x, y) in [
                        (stack_raw(g, a).unwrap(), stack_raw(g, b).unwrap()),
                        (stack_raw(a, g).unwrap(), stack_raw(b, g).unwrap()),
                    ] {
                        assert_eq!(shape(&x), shape(&y));
                        assert!(x.height() < y.height());
                        assert_eq!(y.height() - x.height(), b.height() - a.height());
                    }
                }
            }
        }
        assert!(pairs > 0);
    }
}
