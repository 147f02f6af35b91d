use std::sync::Arc;

use super::*;
use crate::hwmod::{ModuleCollection, TruncatedModule};
use crate::linalg::QMatrix;
use crate::rational::{frac, int};
use crate::rootsys::{reflect, RootCatalog};

fn gcm(rows: &[&[i64]]) -> GeneralizedCartanMatrix {
    GeneralizedCartanMatrix::validate(rows.iter().map(|r| r.to_vec()).collect()).unwrap()
}

fn module(a: &GeneralizedCartanMatrix, lambda: &[i64], d: u32) -> Arc<TruncatedModule> {
    Arc::new(TruncatedModule::build(a, lambda, d).unwrap())
}

fn sl2() -> Evaluator {
    Evaluator::new(module(&gcm(&[&[2]]), &[1], 3))
}

fn q2(rows: [[Q; 2]; 2]) -> QMatrix {
    QMatrix::from_rows(rows.into_iter().map(|r| r.to_vec()).collect())
}

fn word(s: &str) -> GroupWord {
    s.parse().unwrap()
}

#[test]
fn sl2_matrices() {
    let ev = sl2();
    let t = frac(3, 5);
    let m = ev.module().clone();
    assert_eq!(BlockOperator::chi_simple(&m, 0, Sign::Plus, &t).unwrap().dense(1), q2([[int(1), t.clone()], [int(0), int(1)]]));
    assert_eq!(BlockOperator::chi_simple(&m, 0, Sign::Minus, &t).unwrap().dense(1), q2([[int(1), int(0)], [t.clone(), int(1)]]));
    assert_eq!(
        BlockOperator::wtilde(&m, 0, &t).unwrap().dense(1),
        q2([[int(0), t.clone()], [-t.recip(), int(0)]])
    );
    assert_eq!(BlockOperator::torus(&m, 0, &t).unwrap().dense(1), q2([[t.clone(), int(0)], [int(0), t.recip()]]));
    assert!(BlockOperator::chi_simple(&m, 0, Sign::Plus, &int(0)).unwrap().dense(3).is_identity());
    assert!(BlockOperator::torus(&m, 0, &int(1)).unwrap().dense(3).is_identity());
    assert!(matches!(BlockOperator::torus(&m, 0, &int(0)), Err(Error::ZeroTorusParameter)));
}

#[test]
fn sl2_words() {
    let ev = sl2();
    let target = q2([[int(1), int(1)], [int(1), int(2)]]);
    assert_eq!(ev.eval(&word("x(-1,1)*x(+1,1)")).unwrap().dense(1), target);
    assert_eq!(ev.eval(&word("x(+1,1/2)*h(1,1/2)*x(-1,1/2)")).unwrap().dense(1), target);
    assert!(ev.eval(&GroupWord::default()).unwrap().dense(3).is_identity());
    let w2 = ev.eval(&word("w(1)*w(1)")).unwrap();
    let h = ev.eval(&word("h(1,-1)")).unwrap();
    assert!(operator_eq(&w2, &h, 3).unwrap());
}

#[test]
fn truncation_overflow_and_valid_depth() {
    let a = gcm(&[&[2]]);
    let m = module(&a, &[2], 1);
    let down = BlockOperator::chi_simple(&m, 0, Sign::Minus, &int(1)).unwrap();
    assert_eq!(down.valid_depth(), None);
    assert!(matches!(operator_eq(&down, &down, 0), Err(Error::DepthOutOfRange { .. })));
    let m = module(&a, &[2], 4);
    let down = BlockOperator::chi_simple(&m, 0, Sign::Minus, &int(1)).unwrap();
    assert_eq!(down.valid_depth(), Some(4));
}

#[test]
fn torus_matches_product_definition() {
    let a = gcm(&[&[2, -1], &[-1, 2]]);
    let ev = Evaluator::new(module(&a, &[1, 1], 4));
    for i in 0..2 {
        for t in [frac(2, 3), int(-1), int(5)] {
            let diag = BlockOperator::torus(ev.module(), i, &t).unwrap();
            let prod = ev
                .eval(&GroupWord(vec![GeneratorLetter::wtilde(i, t.clone()), GeneratorLetter::wtilde(i, int(-1))]))
                .unwrap();
            let p = prod.valid_depth().unwrap();
            assert!(p >= 2);
            assert!(operator_eq(&diag, &prod, p).unwrap());
            // M4: w~(t) = h(t) w~(1)
            let lhs = BlockOperator::wtilde(ev.module(), i, &t).unwrap();
            let rhs = diag.compose(&BlockOperator::wtilde(ev.module(), i, &int(1)).unwrap());
            let p = lhs.valid_depth().unwrap().min(rhs.valid_depth().unwrap());
            assert!(operator_eq(&lhs, &rhs, p).unwrap());
        }
    }
}

#[test]
fn operator_eq_examples() {
    let a = gcm(&[&[2, -1], &[-1, 2]]);
    let m = module(&a, &[1, 0], 3);
    let one = BlockOperator::chi_simple(&m, 0, Sign::Plus, &int(1)).unwrap();
    let two = BlockOperator::chi_simple(&m, 0, Sign::Plus, &int(2)).unwrap();
    assert!(operator_eq(&one, &one, 3).unwrap());
    assert!(!operator_eq(&one, &two, 1).unwrap());
}

fn sample_gcms() -> Vec<(GeneralizedCartanMatrix, Vec<i64>)> {
    vec![
        (gcm(&[&[2, -1], &[-1, 2]]), vec![1, 1]),
        (gcm(&[&[2, -2], &[-2, 2]]), vec![1, 0]),
        (gcm(&[&[2, -3], &[-3, 2]]), vec![1, 1]),
    ]
}

#[test]
fn real_root_block_support_and_integrality() {
    for (a, lambda) in sample_gcms() {
        let ev = Evaluator::new(module(&a, &lambda, 6));
        let m = ev.module().clone();
        for r in RootCatalog::new(a.clone()).real_roots(3) {
            for root in [r.root.clone(), r.root.neg()] {
                let op = ev.chi_real(&root, &int(1)).unwrap();
                for w in 0..m.num_weights() {
                    if !op.is_complete_at(w) {
                        continue;
                    }
                    for (t, blk) in op.blocks_from(w) {
                        // target depth = source depth - i * root, i >= 0
                        let diff: Vec<i64> =
                            m.depth_of(w).iter().zip(m.depth_of(*t)).map(|(x, y)| x - y).collect();
                        let i = (0..a.rank())
                            .find(|&c| root.coords()[c] != 0)
                            .map(|c| diff[c] / root.coords()[c])
                            .unwrap();
                        assert!(i >= 0);
                        let expect: Vec<i64> = root.coords().iter().map(|c| c * i).collect();
                        assert_eq!(diff, expect, "root {root} source {:?}", m.depth_of(w));
                        assert!(blk.is_integral(), "root {root} not integral");
                    }
                }
            }
        }
    }
}

#[test]
fn one_parameter_law() {
    let (s, t) = (frac(1, 2), frac(-5, 3));
    for (a, lambda) in sample_gcms() {
        let ev = Evaluator::new(module(&a, &lambda, 6));
        for r in RootCatalog::new(a.clone()).real_roots(3) {
            for root in [r.root.clone(), r.root.neg()] {
                let lhs = ev.chi_real(&root, &s).unwrap().compose(&ev.chi_real(&root, &t).unwrap());
                let rhs = ev.chi_real(&root, &(&s + &t)).unwrap();
                let Some(p) = lhs.valid_depth().min(rhs.valid_depth()) else { continue };
                assert!(operator_eq(&lhs, &rhs, p).unwrap(), "root {root}");
            }
        }
    }
}

#[test]
fn a2_sum_root_example() {
    let a = gcm(&[&[2, -1], &[-1, 2]]);
    let ev = Evaluator::new(module(&a, &[1, 1], 4));
    let root = RootVector(vec![1, 1]);
    assert_eq!(ev.catalog().witness(&root).unwrap().word.0.len(), 1);
    let op = ev.chi_real(&root, &int(1)).unwrap();
    let m = ev.module();
    for w in 0..m.num_weights() {
        for (t, _) in op.blocks_from(w) {
            let diff: Vec<i64> = m.depth_of(w).iter().zip(m.depth_of(*t)).map(|(x, y)| x - y).collect();
            assert_eq!(diff[0], diff[1]);
        }
    }
    // simple roots evaluate exactly like the simple letters
    let simple = ev.chi_real(&RootVector(vec![0, 1]), &int(3)).unwrap();
    let direct = BlockOperator::chi_simple(m, 1, Sign::Plus, &int(3)).unwrap();
    assert!(operator_eq(&simple, &direct, 4).unwrap());
}

#[test]
fn wtilde_moves_highest_line() {
    let a = gcm(&[&[2, -1], &[-1, 2]]);
    let m = module(&a, &[1, 0], 3);
    let op = BlockOperator::wtilde(&m, 0, &int(1)).unwrap();
    let targets: Vec<&[i64]> = op.blocks_from(0).iter().map(|(t, _)| m.depth_of(*t)).collect();
    assert_eq!(targets, vec![&[1, 0][..]]);
}

#[test]
fn conjugation_law() {
    // w~_i(1) chi_j(t) w~_i(1)^{-1} = chi_{s_i alpha_j}(+-t)
    for (a, lambda) in sample_gcms() {
        let ev = Evaluator::new(module(&a, &lambda, 6));
        let t = frac(2, 7);
        for i in 0..2 {
            for j in 0..2 {
                if i == j {
                    continue;
                }
                let w = BlockOperator::wtilde(ev.module(), i, &int(1)).unwrap();
                let winv = BlockOperator::wtilde(ev.module(), i, &int(-1)).unwrap();
                let chi = BlockOperator::chi_simple(ev.module(), j, Sign::Plus, &t).unwrap();
                let lhs = w.compose(&chi).compose(&winv);
                let root = reflect(&a, i, &RootVector::simple(2, j));
                let plus = ev.chi_real(&root, &t).unwrap();
                let minus = ev.chi_real(&root, &-&t).unwrap();
                let p = lhs.valid_depth().unwrap().min(plus.valid_depth().unwrap()).min(minus.valid_depth().unwrap());
                assert!(p >= 1);
                assert!(operator_eq(&lhs, &plus, p).unwrap() || operator_eq(&lhs, &minus, p).unwrap());
            }
        }
    }
}

#[test]
fn torus_injective_on_fundamentals() {
    let a = gcm(&[&[2, -3], &[-3, 2]]);
    let coll = ModuleCollection::fundamental(&a, 2).unwrap();
    let id = CollectionOperator::eval(&coll, &GroupWord::default()).unwrap();
    for (t1, t2) in [(int(1), int(1)), (int(-1), int(1)), (int(1), int(-1)), (frac(1, 2), int(2)), (int(-1), int(-1))] {
        let w = GroupWord(vec![GeneratorLetter::torus(0, t1.clone()), GeneratorLetter::torus(1, t2.clone())]);
        let op = CollectionOperator::eval(&coll, &w).unwrap();
        let trivial = op.eq_through(&id, 1).unwrap();
        assert_eq!(trivial, t1 == int(1) && t2 == int(1));
    }
}

#[test]
fn letter_inverses() {
    let a = gcm(&[&[2, -2], &[-2, 2]]);
    let ev = Evaluator::new(module(&a, &[1, 1], 5));
    let w = word("x(+1,2/3)*w(2,-3)*h(1,5)*xr([1,2],4)*x(-2,1)");
    let prod = ev.eval(&w.concat(&w.inverse())).unwrap();
    let p = prod.valid_depth().unwrap();
    assert!(operator_eq(&prod, &ev.identity(), p).unwrap());
    assert!(w.validate(&a).is_ok());
    assert!(matches!(word("xr([1,1],1)").validate(&a), Err(Error::NotARealRoot(_))));
    assert!(matches!(word("h(3,1)").validate(&a), Err(Error::IndexOutOfRange { .. })));
}

#[test]
fn root_vectors_match_conjugation() {
    let cases = vec![
        (gcm(&[&[2, -1], &[-1, 2]]), vec![1, 1], 6, 3),
        (gcm(&[&[2, -2], &[-1, 2]]), vec![1, 1], 8, 4),
        (gcm(&[&[2, -1], &[-3, 2]]), vec![1, 1], 10, 5),
        (gcm(&[&[2, -2], &[-2, 2]]), vec![1, 1], 7, 3),
        (gcm(&[&[2, -3], &[-3, 2]]), vec![1, 1], 7, 4),
    ];
    let t = frac(3, 2);
    for (a, lambda, d, h) in cases {
        let ev = Evaluator::new(module(&a, &lambda, d));
        let mut compared = 0;
        for r in RootCatalog::new(a.clone()).real_roots(h) {
            for root in [r.root.clone(), r.root.neg()] {
                let fast = ev.chi_real(&root, &t).unwrap();
                let slow = ev.chi_real_by_conjugation(&root, &t).unwrap();
                if let Some(p) = fast.valid_depth().min(slow.valid_depth()) {
                    assert!(operator_eq(&fast, &slow, p).unwrap(), "{a:?} root {root}");
                    compared += 1;
                }
                if root.is_positive() {
                    assert_eq!(fast.valid_depth(), Some(d));
                }
            }
        }
        assert!(compared > 0);
    }
}

#[test]
fn sl2_coefficients() {
    // lowest vector of V(1): w~ (f v) = v = e (f v)
    assert_eq!(sl2_reflection_coefficient(1, -1), int(1));
    assert_eq!(sl2_reflection_coefficient(1, 1), int(-1));
    assert_eq!(sl2_reflection_coefficient(0, 0), int(1));
}
