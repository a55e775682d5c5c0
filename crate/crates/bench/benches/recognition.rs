use cdc_core::chain::{adc_of, adc_tensor, based_iso};
use cdc_core::constructions::gray_product;
use cdc_core::fixtures;
use cdc_core::molecules::{Budget, MoleculeOracle};
use cdc_core::omega::{enumerate_molecules, SteinerOracle};
use cdc_core::rewriting::standard_merger;
use cdc_core::topology::{homology, nerve};
use criterion::{criterion_group, criterion_main, BenchmarkId, Criterion};
use std::hint::black_box;

fn corpus(name: &str) -> cdc_core::Complex {
    fixtures::corpus()
        .into_iter()
        .find(|f| f.name == name)
        .expect("corpus fixture")
        .complex
}

fn constructible(c: &mut Criterion) {
    let mut group = c.benchmark_group("constructible");
    let shapes = [
        ("K3", fixtures::cube(3)),
        ("K4", fixtures::cube(4)),
        ("D4", fixtures::simplex(4)),
        (
            "K2xTREE3",
            gray_product(&fixtures::cube(2), &corpus("TREE3")).unwrap(),
        ),
    ];
    for (name, x) in &shapes {
        // a fresh oracle each time, so nothing is served from the memo
        group.bench_with_input(BenchmarkId::from_parameter(name), x, |b, x| {
            b.iter(|| MoleculeOracle::new(x).is_molecule(&x.all()).unwrap())
        });
    }
    group.finish();
}

fn steiner(c: &mut Criterion) {
    let mut group = c.benchmark_group("steiner");
    for name in ["PW3", "TREE3", "D3"] {
        let x = corpus(name);
        group.bench_function(name, |b| {
            b.iter(|| SteinerOracle::new(&x).is_molecule(&x.all()).unwrap())
        });
    }
    let k3 = fixtures::cube(3);
    group.bench_function("enumerate K3", |b| {
        b.iter(|| enumerate_molecules(&k3, Budget::builtin()).molecules.len())
    });
    group.finish();
}

fn chains(c: &mut Criterion) {
    let (p, q) = (fixtures::cube(2), fixtures::simplex(2));
    let product = adc_of(&gray_product(&p, &q).unwrap()).unwrap();
    let formal = adc_tensor(&adc_of(&p).unwrap(), &adc_of(&q).unwrap());
    c.bench_function("based_iso K2xD2", |b| {
        b.iter(|| based_iso(black_box(&product), &formal).unwrap().is_some())
    });
}

fn topology(c: &mut Criterion) {
    let k3 = fixtures::cube(3);
    c.bench_function("nerve+homology K3", |b| {
        b.iter(|| {
            homology(&nerve(&k3, &k3.all()).unwrap())
                .unwrap()
                .euler_characteristic
        })
    });
}

fn merging(c: &mut Criterion) {
    let k3 = fixtures::cube(3);
    c.bench_function("standard merger K3", |b| {
        b.iter(|| standard_merger(black_box(&k3)).unwrap().steps.len())
    });
}

criterion_group!(benches, constructible, steiner, chains, topology, merging);
criterion_main!(benches);
