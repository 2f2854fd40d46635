use std::collections::BTreeSet;

use num_bigint::BigUint;
use omega_core::bounds::{lbt_lower, new_upper};
use omega_core::format::{parse_vertex_set, vertex_set_to_json};
use omega_core::{build_omega_h, enumerate_latin_squares, enumerate_vertices, validate, StochasticTensor};

#[test]
fn every_vertex_is_certified() {
    for n in 1..=3 {
        let h = build_omega_h(n).unwrap();
        let vs = enumerate_vertices(&h).unwrap();
        for t in vs.tensors().unwrap() {
            assert!(validate(n, t.entries()).is_ok());
            let cert = h.is_vertex(&t).unwrap();
            assert!(cert.is_vertex());
            assert_eq!(cert.active_rank, n * n * n);
        }
    }
}

#[test]
fn integral_vertices_are_the_latin_squares() {
    for n in 1..=3 {
        let vs = enumerate_vertices(&build_omega_h(n).unwrap()).unwrap();
        let integral: BTreeSet<StochasticTensor> = vs
            .tensors()
            .unwrap()
            .into_iter()
            .filter(StochasticTensor::is_integral)
            .collect();
        let latin: BTreeSet<StochasticTensor> =
            enumerate_latin_squares(n).iter().map(|l| l.to_tensor()).collect();
        assert_eq!(integral, latin, "n = {n}");
        for t in &integral {
            assert_eq!(t.to_latin().unwrap().to_tensor(), *t);
        }
    }
}

#[test]
fn nonintegral_vertices_of_omega_three() {
    let vs = enumerate_vertices(&build_omega_h(3).unwrap()).unwrap();
    let frac: Vec<StochasticTensor> = vs
        .tensors()
        .unwrap()
        .into_iter()
        .filter(|t| !t.is_integral())
        .collect();
    assert_eq!(frac.len(), 54);
    let h = build_omega_h(3).unwrap();
    for t in &frac {
        assert!(t.to_latin().is_none());
        assert!(h.is_vertex(t).unwrap().is_vertex());
    }
}

#[test]
fn enumeration_is_deterministic() {
    let h = build_omega_h(3).unwrap();
    let a = vertex_set_to_json(&enumerate_vertices(&h).unwrap()).unwrap();
    let b = vertex_set_to_json(&enumerate_vertices(&h).unwrap()).unwrap();
    assert_eq!(a, b);
}

#[test]
fn vertex_set_document_round_trips() {
    let vs = enumerate_vertices(&build_omega_h(3).unwrap()).unwrap();
    let text = vertex_set_to_json(&vs).unwrap();
    assert_eq!(parse_vertex_set(&text).unwrap(), vs);
}

#[test]
fn vertex_set_document_rejects_bad_counts() {
    let vs = enumerate_vertices(&build_omega_h(2).unwrap()).unwrap();
    let text = vertex_set_to_json(&vs).unwrap().replace("\"integral\": 2", "\"integral\": 1");
    assert!(parse_vertex_set(&text).is_err());
}

#[test]
fn sandwich_for_small_n() {
    let two = enumerate_vertices(&build_omega_h(2).unwrap()).unwrap().len();
    assert!(BigUint::from(two) <= new_upper(2).unwrap());
    let three = enumerate_vertices(&build_omega_h(3).unwrap()).unwrap().len();
    assert!(lbt_lower(3).unwrap() <= three);
    assert!(BigUint::from(three) <= new_upper(3).unwrap());
}
