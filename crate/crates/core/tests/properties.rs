use std::sync::OnceLock;

use proptest::prelude::*;
use trusskit_core::catalog::{named_ring, TOKENS};
use trusskit_core::classify::raw_truss_search;
use trusskit_core::group::enumerate_automorphisms;
use trusskit_core::homext::HomotheticDatum;
use trusskit_core::ring::GroupSymmetry;
use trusskit_core::serial::{datum_from_json, datum_to_json, parse_elem, ring_from_json, ring_to_json, truss_from_json, truss_to_json};
use trusskit_core::truss::canonical_table;
use trusskit_core::trussext::{normal_word, word_normalize, Letter, WordAlgebraElement};
use trusskit_core::{AdditiveMap, FinAbGroup, Heap, Truss};

const CARRIERS: [&[u64]; 4] = [&[2, 2], &[4], &[3], &[2]];

struct Carrier {
    group: FinAbGroup,
    auts: Vec<AdditiveMap>,
    sym: GroupSymmetry,
    trusses: Vec<Truss>,
}

fn carriers() -> &'static [Carrier] {
    static C: OnceLock<Vec<Carrier>> = OnceLock::new();
    C.get_or_init(|| {
        CARRIERS
            .iter()
            .map(|o| {
                let group = FinAbGroup::new(o).unwrap();
                Carrier {
                    auts: enumerate_automorphisms(&group),
                    sym: GroupSymmetry::new(&group),
                    trusses: raw_truss_search(&group).unwrap(),
                    group,
                }
            })
            .collect()
    })
}

fn small_group() -> impl Strategy<Value = FinAbGroup> {
    prop::sample::select(vec![vec![2u64], vec![5], vec![2, 2], vec![2, 4], vec![3, 3], vec![2, 2, 2], vec![6]])
        .prop_map(|o| FinAbGroup::new(&o).unwrap())
}

fn letters(n: usize) -> impl Strategy<Value = Vec<Letter>> {
    prop::collection::vec(prop_oneof![(0..n).prop_map(Letter::T), Just(Letter::Zero)], 0..6)
        .prop_map(|mut w| {
            if w.len() % 2 == 0 {
                w.push(Letter::Zero);
            }
            w
        })
}

proptest! {
    #[test]
    fn canonical_key_ignores_relabelling(c in 0..CARRIERS.len(), t in any::<prop::sample::Index>(),
                                          phi in any::<prop::sample::Index>(), shift in any::<prop::sample::Index>()) {
        let car = &carriers()[c];
        let t = t.get(&car.trusses);
        let phi = phi.get(&car.auts);
        let shift = shift.index(car.group.size());
        let psi: Vec<usize> = car.group.elements().map(|x| car.group.add(phi.apply(x), shift)).collect();
        let moved = t.transport(&psi, &car.group);
        prop_assert_eq!(canonical_table(&moved, &car.sym), canonical_table(t, &car.sym));
    }

    #[test]
    fn normal_form_survives_cancelling_pairs(w in letters(4), at in any::<prop::sample::Index>(), x in 0usize..4, e in 0usize..4) {
        let g = FinAbGroup::new(&[2, 2]).unwrap();
        let base = word_normalize(&g, &w, e).unwrap();
        // [.., x, x, ..] cancels in the heap wherever it is inserted.
        let mut longer = w.clone();
        let i = at.index(w.len() + 1);
        longer.splice(i..i, [Letter::T(x), Letter::T(x)]);
        prop_assert_eq!(word_normalize(&g, &longer, e).unwrap(), base);
    }

    #[test]
    fn normal_form_survives_same_parity_swaps(w in letters(6), at in any::<prop::sample::Index>(), e in 0usize..6) {
        let g = FinAbGroup::new(&[6]).unwrap();
        prop_assume!(w.len() >= 3);
        let i = at.index(w.len() - 2);
        let mut swapped = w.clone();
        swapped.swap(i, i + 2);
        prop_assert_eq!(word_normalize(&g, &swapped, e).unwrap(), word_normalize(&g, &w, e).unwrap());
    }

    #[test]
    fn normal_words_are_fixed(a in 0usize..9, n in -6i64..=6, e in 0usize..9) {
        let g = FinAbGroup::new(&[3, 3]).unwrap();
        let el = WordAlgebraElement { base: a, index: n };
        prop_assert_eq!(word_normalize(&g, &normal_word(el, e), e).unwrap(), el);
    }

    #[test]
    fn heap_laws(g in small_group(), xs in prop::collection::vec(any::<prop::sample::Index>(), 5)) {
        let h = Heap::new(g.clone());
        let [x, y, z, u, v] = [0, 1, 2, 3, 4].map(|i| xs[i].index(g.size()));
        prop_assert_eq!(h.eval(x, y, y), x);
        prop_assert_eq!(h.eval(y, y, x), x);
        prop_assert_eq!(h.eval(x, y, z), h.eval(z, y, x));
        prop_assert_eq!(h.eval(h.eval(x, y, z), u, v), h.eval(x, y, h.eval(z, u, v)));
        prop_assert_eq!(h.eval(x, h.eval(u, z, y), v), h.eval(h.eval(x, y, z), u, v));
        // Odd and even positions may be permuted among themselves.
        prop_assert_eq!(h.eval_word(&[x, y, z, u, v]).unwrap(), h.eval_word(&[v, u, x, y, z]).unwrap());
    }

    #[test]
    fn json_round_trips(token in prop::sample::select(TOKENS.to_vec()), p in prop::sample::select(vec![2u64, 3]),
                        x in any::<prop::sample::Index>()) {
        let r = named_ring(token, p).unwrap();
        let back = ring_from_json(&ring_to_json(&r)).unwrap();
        prop_assert_eq!(&back, &r);
        let d = HomotheticDatum::identity(&r);
        let back = datum_from_json(&datum_to_json(&d)).unwrap();
        prop_assert_eq!(&back, &d);
        let t = d.truss();
        let back = truss_from_json(&truss_to_json(&t)).unwrap();
        prop_assert_eq!(back.table(), t.table());
        let g = r.group();
        let a = x.index(g.size());
        let text = format!("{:?}", g.digits(a));
        prop_assert_eq!(parse_elem(&text, g).unwrap(), a);
    }
}
