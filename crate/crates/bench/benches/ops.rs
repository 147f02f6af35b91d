use std::sync::Arc;

use criterion::{black_box, criterion_group, criterion_main, Criterion};

use kmchev::arith::{bruhat_factor, mat2, sl2_step};
use kmchev::rational::frac;
use kmchev::{Evaluator, GeneralizedCartanMatrix, GroupWord, ModuleCollection, TruncatedModule};

fn hyperbolic() -> GeneralizedCartanMatrix {
    GeneralizedCartanMatrix::validate(vec![vec![2, -3], vec![-3, 2]]).unwrap()
}

fn module_build(c: &mut Criterion) {
    let a = hyperbolic();
    c.bench_function("build hyperbolic (1,0) depth 6", |b| {
        b.iter(|| TruncatedModule::build(black_box(&a), &[1, 0], 6).unwrap())
    });
}

fn word_eval(c: &mut Criterion) {
    let a = hyperbolic();
    let m = Arc::new(TruncatedModule::build(&a, &[1, 1], 6).unwrap());
    let ev = Evaluator::new(m);
    let w: GroupWord = "x(+1,2)*w(2,1)*x(-1,1/2)*h(2,3)*x(+2,-1)".parse().unwrap();
    c.bench_function("eval five-letter word", |b| b.iter(|| ev.eval(black_box(&w)).unwrap()));
}

fn rank_one(c: &mut Criterion) {
    let m = mat2(frac(355, 113), frac(7, 3), frac(-22, 7), frac(1, 1));
    let s = (frac(1, 1) + &m[0][1] * &m[1][0]) / &m[0][0];
    let m = mat2(m[0][0].clone(), m[0][1].clone(), m[1][0].clone(), s);
    c.bench_function("sl2_step", |b| b.iter(|| sl2_step(black_box(&m)).unwrap()));
}

fn bruhat(c: &mut Criterion) {
    let a = GeneralizedCartanMatrix::validate(vec![vec![2, -1], vec![-1, 2]]).unwrap();
    let coll = ModuleCollection::fundamental(&a, 4).unwrap();
    let g: GroupWord = "x(-1,2)*w(2,1)*x(+1,1/3)*x(-2,1/2)*h(1,2)".parse().unwrap();
    c.bench_function("bruhat_factor A2", |b| b.iter(|| bruhat_factor(&coll, black_box(&g), 10_000).unwrap()));
}

criterion_group!(benches, module_build, word_eval, rank_one, bruhat);
criterion_main!(benches);
