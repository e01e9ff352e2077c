//! Structural invariants across modules.

use proptest::prelude::*;
use qswd_core::arith::{QMono, Rat};
use qswd_core::functor::{compare_modules, functor_apply, SwdContext};
use qswd_core::klr_modules::{convolution, one_dim_module, FDModule};
use qswd_core::quiver::{build_quiver, cartan_and_type, SpectralIndex};
use qswd_core::rmatrix::{denominator, verify_unitarity};

fn arb_index(n: usize) -> impl Strategy<Value = Vec<SpectralIndex>> {
    prop::collection::btree_set((1..n, -5i64..=5), 1..=5)
        .prop_map(|v| v.into_iter().map(|(k, m)| SpectralIndex::new(k, QMono::neg_q(m))).collect())
}

fn shifted(index: &[SpectralIndex], by: &QMono) -> Vec<SpectralIndex> {
    index.iter().map(|s| SpectralIndex::new(s.s, s.x.mul(by))).collect()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(24))]

    #[test]
    fn quiver_depends_only_on_ratios(index in arb_index(4), m in -4i64..=4, c in prop::sample::select(vec![1i64, -1, 3])) {
        let by = QMono::new(Rat::new(c, 1), m);
        let q = build_quiver(&index, 4).unwrap();
        let q2 = build_quiver(&shifted(&index, &by), 4).unwrap();
        prop_assert_eq!(q2.vertices, shifted(&q.vertices, &by));
        prop_assert_eq!(q2.d, q.d);
    }

    #[test]
    fn quiver_has_no_loops_or_two_cycles(index in arb_index(4)) {
        let q = build_quiver(&index, 4).unwrap();
        prop_assert!(q.defects().is_empty(), "{:?}", q.defects());
    }

    #[test]
    fn arrows_come_from_poles(index in arb_index(3)) {
        let q = build_quiver(&index, 3).unwrap();
        for (i, j, _) in q.arrows() {
            let (a, b) = (&q.vertices[i], &q.vertices[j]);
            let d = denominator(a.s, b.s, 3).unwrap();
            let e = b.x.m - a.x.m;
            prop_assert!(d.to_string().contains(&format!("(-q)^{e})")), "{i}->{j}: {d}");
        }
    }
}

#[test]
fn denominators_are_symmetric_and_dual() {
    for n in 2..=5 {
        for k in 1..n {
            for l in 1..n {
                let d = denominator(k, l, n).unwrap();
                assert_eq!(d, denominator(l, k, n).unwrap(), "({k},{l},{n})");
                assert_eq!(d, denominator(n - k, n - l, n).unwrap(), "({k},{l},{n}) vs dual");
            }
        }
    }
}

#[test]
fn unitarity_for_mixed_pairs() {
    for (k, l, n) in [(1, 2, 3), (1, 3, 4), (2, 1, 4)] {
        assert!(verify_unitarity(k, l, n).unwrap(), "({k},{l},{n})");
    }
}

fn modules_a2() -> (SwdContext, Vec<FDModule>) {
    let index: Vec<SpectralIndex> = [0, 2].iter().map(|&m| SpectralIndex::new(1, QMono::neg_q(m))).collect();
    let ctx = SwdContext::new(2, index).unwrap();
    let ms = [vec![0], vec![1], vec![0, 1]].iter().filter_map(|nu| one_dim_module(&ctx.params, nu).ok()).collect();
    (ctx, ms)
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(8))]

    #[test]
    fn convolution_is_associative_on_characters(a in 0usize..3, b in 0usize..2, c in 0usize..2) {
        let (_, ms) = modules_a2();
        let (a, b, c) = (&ms[a], &ms[b], &ms[c]);
        let left = convolution(&convolution(a, b).unwrap(), c).unwrap();
        let right = convolution(a, &convolution(b, c).unwrap()).unwrap();
        prop_assert_eq!(left.dim(), right.dim());
        prop_assert_eq!(left.graded_character(), right.graded_character());
        prop_assert!(left.check_relations().is_clean());
    }
}

#[test]
fn pipeline_from_index_to_functor() {
    let (ctx, ms) = modules_a2();
    assert_eq!(cartan_and_type(&ctx.quiver).1.to_string(), "A_2");
    // one-dimensional modules go to two-dimensional evaluation modules
    for m in &ms[..2] {
        assert_eq!(functor_apply(&ctx, m).unwrap().module.dim(), 2);
    }
    // convolution in either order goes to a tensor square
    for (x, y) in [(0, 1), (1, 0)] {
        let conv = functor_apply(&ctx, &convolution(&ms[x], &ms[y]).unwrap()).unwrap();
        let fx = functor_apply(&ctx, &ms[x]).unwrap().module;
        let fy = functor_apply(&ctx, &ms[y]).unwrap().module;
        assert!(compare_modules(&conv.module, &fx.tensor(&fy)).is_isomorphic());
    }
}
