//! Exhaustive sweep over three-dimensional tables whose unit products are
//! `0` or `+-e_k`, comparing the exact associativity check with a direct
//! floating-point evaluation.

use hhnn_core::laws::{basis_associator_re, check_real_part_associative, Verdict};
use hhnn_core::AlgebraSpec;

const DIM: usize = 3;

/// `0`, `+e_0`, `-e_0`, `+e_1`, ...
fn choice(c: usize) -> Vec<i64> {
    let mut v = vec![0; DIM];
    if c > 0 {
        v[(c - 1) / 2] = if c % 2 == 1 { 1 } else { -1 };
    }
    v
}

/// Product of basis elements under a raw table, as a coefficient vector.
fn basis_mul(table: &[Vec<Vec<i64>>], a: usize, b: usize) -> Vec<f64> {
    let mut out = vec![0.0; DIM];
    match (a, b) {
        (0, b) => out[b] = 1.0,
        (a, 0) => out[a] = 1.0,
        (a, b) => {
            for (o, &c) in out.iter_mut().zip(&table[a - 1][b - 1]) {
                *o = c as f64;
            }
        }
    }
    out
}

fn mul(table: &[Vec<Vec<i64>>], p: &[f64], q: &[f64]) -> Vec<f64> {
    let mut out = vec![0.0; DIM];
    for a in 0..DIM {
        for b in 0..DIM {
            for (o, c) in out.iter_mut().zip(basis_mul(table, a, b)) {
                *o += p[a] * q[b] * c;
            }
        }
    }
    out
}

fn unit(k: usize) -> Vec<f64> {
    let mut v = vec![0.0; DIM];
    v[k] = 1.0;
    v
}

fn oracle_associator(table: &[Vec<Vec<i64>>], a: usize, b: usize, c: usize) -> f64 {
    let left = mul(table, &mul(table, &unit(a), &unit(b)), &unit(c));
    let right = mul(table, &unit(a), &mul(table, &unit(b), &unit(c)));
    left[0] - right[0]
}

#[test]
fn exact_check_agrees_with_direct_evaluation_on_every_table() {
    let choices = 2 * DIM + 1;
    let mut failing = 0;
    let mut total = 0;
    for code in 0..choices.pow(4) {
        let digits = [code % choices, code / choices % choices, code / choices.pow(2) % choices, code / choices.pow(3)];
        let table = vec![
            vec![choice(digits[0]), choice(digits[1])],
            vec![choice(digits[2]), choice(digits[3])],
        ];
        let algebra = AlgebraSpec::from_unit_products("search", DIM, &table).unwrap();
        let any_oracle_failure = (0..DIM).any(|a| {
            (0..DIM).any(|b| (0..DIM).any(|c| oracle_associator(&table, a, b, c) != 0.0))
        });
        match check_real_part_associative(&algebra) {
            Verdict::Holds => assert!(!any_oracle_failure, "missed failure in {table:?}"),
            Verdict::Fails(w) => {
                failing += 1;
                let exact = basis_associator_re(&algebra, w.mu, w.nu, w.rho);
                let direct = oracle_associator(&table, w.mu, w.nu, w.rho);
                assert_eq!(*exact.numer() as f64 / *exact.denom() as f64, direct);
                assert_ne!(direct, 0.0);
            }
        }
        total += 1;
    }
    assert_eq!(total, 2401);
    assert!(failing > 0 && failing < total);
}
