//! Property tests over randomly chosen small trees, morphisms and
//! dendroidal sets.

use std::sync::Arc;

use dendroidal::dset::{self, representable, Bound};
use dendroidal::fibcheck;
use dendroidal::omega::{self, TreeMorphism};
use dendroidal::trees::{enumerate_trees, Tree};
use proptest::prelude::*;
use proptest::sample::Index;

fn small_trees() -> &'static [Tree] {
    use std::sync::OnceLock;
    static TREES: OnceLock<Vec<Tree>> = OnceLock::new();
    TREES.get_or_init(|| enumerate_trees(3, 3).unwrap())
}

/// A catalog tree with its edges renamed by a random injection into a
/// pool of names, so names are not in canonical order.
fn named_tree() -> impl Strategy<Value = Tree> {
    (any::<Index>(), Just(()).prop_perturb(|_, mut rng| {
        let mut pool: Vec<String> = (0..16).map(|i| format!("x{i}")).collect();
        for i in (1..pool.len()).rev() {
            let j = (rng.next_u32() as usize) % (i + 1);
            pool.swap(i, j);
        }
        pool
    }))
        .prop_map(|(i, pool)| {
            let t = i.get(small_trees());
            t.renamed(|n| pool[n[1..].parse::<usize>().unwrap()].clone()).unwrap()
        })
}

fn morphism() -> impl Strategy<Value = TreeMorphism> {
    (any::<Index>(), any::<Index>(), any::<Index>()).prop_filter_map("empty hom", |(a, b, c)| {
        let s = Arc::new(a.get(small_trees()).clone());
        let t = Arc::new(b.get(small_trees()).clone());
        let hom = omega::enumerate_hom(&s, &t);
        (!hom.is_empty()).then(|| c.get(&hom).clone())
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn display_parse_round_trip(t in named_tree()) {
        let text = t.to_string();
        let back = Tree::parse(&text).unwrap();
        prop_assert_eq!(back.to_string(), text);
        prop_assert_eq!(back, t);
    }

    #[test]
    fn shape_key_ignores_names(t in named_tree()) {
        let (canon, _) = t.canonical();
        prop_assert_eq!(t.shape_key(), canon.shape_key());
        prop_assert!(t.is_isomorphic(&canon));
    }

    #[test]
    fn factorization_composes_back(f in morphism()) {
        let fact = f.factorize();
        let g = fact.compose_all().unwrap();
        prop_assert_eq!(g.edge_map, f.edge_map);
    }

    #[test]
    fn representables_act_functorially(g in morphism(), a in any::<Index>(), c in any::<Index>()) {
        // x in rep(C_3) over g.target, acted on by g then by f: R -> g.source
        let r = Arc::new(a.get(small_trees()).clone());
        let hom = omega::enumerate_hom(&r, &g.source);
        prop_assume!(!hom.is_empty());
        let f = c.get(&hom);
        let x_set = representable(&Tree::corolla(3));
        for x in x_set.dendrices(&g.target) {
            let lhs = x_set.act(&x_set.act(&x, &g), f);
            let rhs = x_set.act(&x, &g.after(f).unwrap());
            prop_assert_eq!(lhs, rhs);
        }
    }

    #[test]
    fn faces_are_injective(t in named_tree()) {
        let t = Arc::new(t);
        for f in omega::faces(&t) {
            prop_assert!(f.map.is_injective());
        }
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(12))]

    #[test]
    fn representables_are_infty_operads(i in any::<Index>()) {
        let t = i.get(small_trees());
        prop_assume!(t.num_vertices() <= 2);
        let report = fibcheck::is_infty_operad(&representable(t), Bound::new(3, 2)).unwrap();
        prop_assert!(report.passed, "{:?}", report.failure);
    }

    #[test]
    fn presheaf_laws_for_horns(i in any::<Index>()) {
        let t = i.get(small_trees());
        for e in t.inner_edges() {
            let h = dset::inner_horn(t, t.name(e)).unwrap();
            prop_assert!(dset::check_presheaf_laws(h.as_ref(), Bound::new(3, 2)).unwrap().is_none());
        }
    }
}
