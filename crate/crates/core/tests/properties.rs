use std::f64::consts::PI;

use hhnn_core::activation::{Activation, StateSet};
use hhnn_core::algebra::{builtin_algebra, cayley_dickson};
use hhnn_core::graph::{classify, enumerate_graph};
use hhnn_core::network::{check_conditions, random_hermitian_weights, Schedule, WeightMatrix};
use hhnn_core::realify::{left_mul_matrix, phi, phi_inv};
use hhnn_core::{HNumber, Network, NumberSystem, StateVector};
use num_rational::Rational64;
use proptest::prelude::*;

/// Systems that are real-part associative with the listed involution.
const SYSTEMS: [(&str, &str); 12] = [
    ("R", "identity"),
    ("C", "natural"),
    ("C", "identity"),
    ("U", "identity"),
    ("U", "natural"),
    ("D", "natural"),
    ("Q", "natural"),
    ("T", "tessarine"),
    ("T", "identity"),
    ("O", "natural"),
    ("cd:4", "natural"),
    ("cl2:1", "identity"),
];

fn sys(k: usize) -> NumberSystem {
    let (a, t) = SYSTEMS[k % SYSTEMS.len()];
    NumberSystem::from_ids(a, t).unwrap()
}

fn num(s: &NumberSystem, c: &[f64]) -> HNumber {
    HNumber::new(s.algebra(), c[..s.dim()].to_vec()).unwrap()
}

fn small_ints() -> impl Strategy<Value = Vec<f64>> {
    prop::collection::vec((-5i32..=5).prop_map(f64::from), 16)
}

fn reals() -> impl Strategy<Value = Vec<f64>> {
    prop::collection::vec(-3.0f64..3.0, 16)
}

fn dot(a: &[f64], b: &[f64]) -> f64 {
    a.iter().zip(b).map(|(x, y)| x * y).sum()
}

/// Cayley-Dickson product written directly on coefficient vectors, with
/// `(a, b)` stored interleaved: `a` at even and `b` at odd positions.
fn cd_oracle(p: &[f64], q: &[f64]) -> Vec<f64> {
    if p.len() == 1 {
        return vec![p[0] * q[0]];
    }
    let split = |v: &[f64]| -> (Vec<f64>, Vec<f64>) {
        (v.iter().step_by(2).copied().collect(), v.iter().skip(1).step_by(2).copied().collect())
    };
    let conj = |v: &[f64]| -> Vec<f64> {
        v.iter().enumerate().map(|(k, &c)| if k == 0 { c } else { -c }).collect()
    };
    let (a, b) = split(p);
    let (c, d) = split(q);
    // (a, b)(c, d) = (ac - d conj(b), conj(a) d + c b)
    let first: Vec<f64> = cd_oracle(&a, &c)
        .iter()
        .zip(cd_oracle(&d, &conj(&b)))
        .map(|(x, y)| x - y)
        .collect();
    let second: Vec<f64> = cd_oracle(&conj(&a), &d)
        .iter()
        .zip(cd_oracle(&c, &b))
        .map(|(x, y)| x + y)
        .collect();
    first.iter().zip(&second).flat_map(|(x, y)| [*x, *y]).collect()
}

fn hamilton(p: &[f64], q: &[f64]) -> Vec<f64> {
    vec![
        p[0] * q[0] - p[1] * q[1] - p[2] * q[2] - p[3] * q[3],
        p[0] * q[1] + p[1] * q[0] + p[2] * q[3] - p[3] * q[2],
        p[0] * q[2] - p[1] * q[3] + p[2] * q[0] + p[3] * q[1],
        p[0] * q[3] + p[1] * q[2] - p[2] * q[1] + p[3] * q[0],
    ]
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(200))]

    #[test]
    fn one_is_a_two_sided_identity(k in 0usize..12, c in reals()) {
        let s = sys(k);
        let p = num(&s, &c);
        let one = HNumber::one(s.algebra());
        prop_assert_eq!(p.mul(&one).unwrap(), p.clone());
        prop_assert_eq!(one.mul(&p).unwrap(), p);
    }

    #[test]
    fn multiplication_is_bilinear(k in 0usize..12, a in -4i32..4, p in small_ints(), q in small_ints(), r in small_ints()) {
        let s = sys(k);
        let (p, q, r) = (num(&s, &p), num(&s, &q), num(&s, &r));
        let alpha = f64::from(a);
        let lhs = p.scale(alpha).add(&q).unwrap().mul(&r).unwrap();
        let rhs = p.mul(&r).unwrap().scale(alpha).add(&q.mul(&r).unwrap()).unwrap();
        prop_assert_eq!(lhs, rhs);
        let lhs = r.mul(&p.scale(alpha).add(&q).unwrap()).unwrap();
        let rhs = r.mul(&p).unwrap().scale(alpha).add(&r.mul(&q).unwrap()).unwrap();
        prop_assert_eq!(lhs, rhs);
    }

    #[test]
    fn involution_keeps_real_part(k in 0usize..12, c in reals()) {
        let s = sys(k);
        let p = num(&s, &c);
        prop_assert_eq!(s.involute(&p).unwrap().re(), p.re());
    }

    #[test]
    fn bilinear_form_is_symmetric(k in 0usize..12, p in small_ints(), q in small_ints(), x in reals(), y in reals()) {
        let s = sys(k);
        let (p, q) = (num(&s, &p), num(&s, &q));
        prop_assert_eq!(s.bilinear(&p, &q).unwrap(), s.bilinear(&q, &p).unwrap());
        let (x, y) = (num(&s, &x), num(&s, &y));
        prop_assert!((s.bilinear(&x, &y).unwrap() - s.bilinear(&y, &x).unwrap()).abs() <= 1e-12);
    }

    #[test]
    fn weights_move_across_the_form(k in 0usize..12, p in reals(), q in reals(), r in reals()) {
        // B(pq, r) = B(q, tau(p) r)
        let s = sys(k);
        let (p, q, r) = (num(&s, &p), num(&s, &q), num(&s, &r));
        let lhs = s.bilinear(&p.mul(&q).unwrap(), &r).unwrap();
        let rhs = s.bilinear(&q, &s.involute(&p).unwrap().mul(&r).unwrap()).unwrap();
        let scale = p.abs() * q.abs() * r.abs();
        prop_assert!((lhs - rhs).abs() <= 1e-9 * scale.max(1.0));
    }

    #[test]
    fn cayley_dickson_form_is_euclidean(level in 1u32..=4, p in reals(), q in reals()) {
        let s = NumberSystem::from_ids(&format!("cd:{level}"), "natural").unwrap();
        let (p, q) = (num(&s, &p), num(&s, &q));
        prop_assert!((s.bilinear(&p, &q).unwrap() - dot(p.coeffs(), q.coeffs())).abs() <= 1e-12);
        // Cauchy-Schwarz
        prop_assert!(s.bilinear(&p, &q).unwrap() <= p.abs() * q.abs() + 1e-12);
    }

    #[test]
    fn cayley_dickson_matches_oracle(level in 1u32..=4, p in small_ints(), q in small_ints()) {
        let a = cayley_dickson(level).unwrap();
        let d = a.dim();
        let mut out = vec![0.0; d];
        a.mul_into(&p[..d], &q[..d], &mut out);
        prop_assert_eq!(out, cd_oracle(&p[..d], &q[..d]));
    }

    #[test]
    fn quaternions_match_hamilton_product(p in small_ints(), q in small_ints()) {
        let (h, _) = builtin_algebra("Q").unwrap();
        let mut out = vec![0.0; 4];
        h.mul_into(&p[..4], &q[..4], &mut out);
        prop_assert_eq!(out, hamilton(&p[..4], &q[..4]));
    }

    #[test]
    fn tessarine_form_splits_into_complex_pairs(p in reals(), q in reals()) {
        let t = NumberSystem::from_ids("T", "tessarine").unwrap();
        let c = NumberSystem::from_ids("C", "natural").unwrap();
        let b_t = t.bilinear_slices(&p[..4], &q[..4]);
        let b_c = c.bilinear_slices(&p[0..2], &q[0..2]) + c.bilinear_slices(&p[2..4], &q[2..4]);
        prop_assert!((b_t - b_c).abs() <= 1e-12);
    }

    #[test]
    fn csgn_phase_bound(k in 2u32..10, r in 0.1f64..5.0, theta in 0.0f64..(2.0 * PI)) {
        let f = Activation::Csgn(k);
        let q = [r * theta.cos(), r * theta.sin()];
        prop_assume!(f.boundary_distance(&q) > 1e-9);
        let s = f.apply_slice(&q).unwrap();
        prop_assert!(f.state_set(2).unwrap().contains(&s));
        let alpha = s[1].atan2(s[0]);
        let mut diff = (theta - alpha).rem_euclid(2.0 * PI);
        if diff > PI {
            diff = 2.0 * PI - diff;
        }
        prop_assert!(diff < PI / f64::from(k));
    }

    #[test]
    fn tsgn_is_csgn_on_each_half(k in 2u32..8, p in reals()) {
        let f = Activation::Tsgn(k);
        let g = Activation::Csgn(k);
        let (u, v) = (&p[0..2], &p[2..4]);
        match (f.apply_slice(&p[..4]), g.apply_slice(u), g.apply_slice(v)) {
            (Some(t), Some(a), Some(b)) => {
                prop_assert_eq!(&t[0..2], a.as_slice());
                prop_assert_eq!(&t[2..4], b.as_slice());
                prop_assert!(f.state_set(4).unwrap().contains(&t));
            }
            (None, a, b) => prop_assert!(a.is_none() || b.is_none()),
            _ => prop_assert!(false, "tsgn undefined while both halves are defined"),
        }
    }

    #[test]
    fn outputs_lie_in_the_state_set(which in 0usize..4, p in reals()) {
        let (f, dim) = [
            (Activation::Split, 8),
            (Activation::ConjSplit, 2),
            (Activation::Sigma, 8),
            (Activation::Csgn(5), 2),
        ][which];
        if let Some(s) = f.apply_slice(&p[..dim]) {
            prop_assert!(f.state_set(dim).unwrap().contains(&s));
        }
    }

    #[test]
    fn sigma_maximizes_the_form(level in 1u32..=3, q in reals(), s in reals()) {
        let sys = NumberSystem::from_ids(&format!("cd:{level}"), "natural").unwrap();
        let d = sys.dim();
        let q = &q[..d];
        let norm = dot(q, q).sqrt();
        prop_assume!(norm > 1e-6);
        let f = Activation::Sigma.apply_slice(q).unwrap();
        prop_assert!((sys.bilinear_slices(&f, q) - norm).abs() <= 1e-12 * norm.max(1.0));
        let sn = dot(&s[..d], &s[..d]).sqrt();
        prop_assume!(sn > 1e-6);
        let s: Vec<f64> = s[..d].iter().map(|c| c / sn).collect();
        prop_assert!(sys.bilinear_slices(&s, q) <= norm + 1e-12);
    }

    #[test]
    fn left_multiplication_is_linear(k in 0usize..12, a in -3i32..3, p in small_ints(), q in small_ints()) {
        let s = sys(k);
        let alpha = f64::from(a);
        let combo: Vec<f64> = p[..s.dim()].iter().zip(&q).map(|(x, y)| alpha * x + y).collect();
        let lhs = left_mul_matrix(s.algebra(), &combo);
        let rhs = left_mul_matrix(s.algebra(), &p[..s.dim()]) * alpha + left_mul_matrix(s.algebra(), &q[..s.dim()]);
        prop_assert_eq!(lhs, rhs);
    }

    #[test]
    fn left_multiplication_is_multiplicative_when_associative(which in 0usize..5, p in small_ints(), q in small_ints()) {
        let id = ["C", "U", "D", "Q", "T"][which];
        let s = NumberSystem::from_ids(id, "default").unwrap();
        let d = s.dim();
        let (p, q) = (num(&s, &p), num(&s, &q));
        let pq = p.mul(&q).unwrap();
        let lp = left_mul_matrix(s.algebra(), p.coeffs());
        let lq = left_mul_matrix(s.algebra(), q.coeffs());
        prop_assert_eq!(left_mul_matrix(s.algebra(), pq.coeffs()), lp.dot(&lq));
        prop_assert_eq!(lp.dot(&ndarray::Array1::from(q.coeffs().to_vec())).to_vec(), pq.coeffs()[..d].to_vec());
    }

    #[test]
    fn phi_round_trips(dim_index in 0usize..4, n in 1usize..6, c in prop::collection::vec(-2.0f64..2.0, 48)) {
        let dim = [1, 2, 4, 8][dim_index];
        let x = StateVector::from_flat(dim, c[..n * dim].to_vec()).unwrap();
        prop_assert_eq!(phi_inv(&phi(&x), dim).unwrap(), x);
    }
}

#[test]
fn involution_law_moves_weights_exactly_on_basis_triples() {
    for k in 0..SYSTEMS.len() {
        let s = sys(k);
        let a = s.algebra();
        let d = a.dim();
        let sign = |m: usize| Rational64::from_integer(i64::from(s.involution().signs()[m]));
        let gram = |m: usize, n: usize| sign(m) * a.constant(m, n, 0);
        for mu in 0..d {
            for nu in 0..d {
                for rho in 0..d {
                    // B(e_mu e_nu, e_rho) and B(e_nu, tau(e_mu) e_rho)
                    let lhs: Rational64 = (0..d).map(|k| a.constant(mu, nu, k) * gram(k, rho)).sum();
                    let rhs: Rational64 =
                        (0..d).map(|k| sign(mu) * a.constant(mu, rho, k) * gram(nu, k)).sum();
                    assert_eq!(lhs, rhs, "{:?} ({mu},{nu},{rho})", SYSTEMS[k]);
                }
            }
        }
    }
}

/// Hermitian networks whose activation is a B-projection.
fn stable_nets() -> Vec<Network> {
    let combos = [
        ("C", "natural", Activation::Csgn(3)),
        ("C", "natural", Activation::Split),
        ("U", "identity", Activation::Split),
        ("C", "identity", Activation::ConjSplit),
        ("T", "tessarine", Activation::Tsgn(2)),
        ("Q", "natural", Activation::Split),
    ];
    let mut nets = Vec::new();
    for (k, (a, t, f)) in combos.into_iter().enumerate() {
        for seed in 0..4u64 {
            let s = NumberSystem::from_ids(a, t).unwrap();
            let n = if s.dim() == 4 { 2 } else { 3 };
            let w = random_hermitian_weights(n, &s, 31 * k as u64 + seed, 0.0);
            nets.push(Network::new(s, w, f, Schedule::Cyclic).unwrap());
        }
    }
    nets
}

#[test]
fn graphs_of_stable_nets_are_sound_and_acyclic() {
    for net in stable_nets() {
        assert!(check_conditions(&net).convergence_guaranteed());
        let g = enumerate_graph(&net).unwrap();
        assert!(g.node_count() <= 10_000);
        for e in g.edges() {
            let (next, changed) = net.step(&g.decode(e.from), e.neuron).unwrap();
            assert!(changed);
            assert_eq!(next, g.decode(e.to));
        }
        assert!(classify(&g).cyclic_nodes.is_empty(), "{}", net.activation());
    }
}

#[test]
fn finite_runs_converge_within_state_count_sweeps() {
    for net in stable_nets() {
        let bound = match net.state_set() {
            StateSet::Finite(s) => s.len().pow(net.n() as u32),
            StateSet::UnitSphere { .. } => unreachable!(),
        };
        for seed in 0..5 {
            let trace = net.run(&net.random_state(seed), bound).unwrap();
            assert!(trace.converged);
        }
    }
}

#[test]
fn incremental_energy_matches_recomputation() {
    for (k, f) in [Activation::Split, Activation::Sigma, Activation::Csgn(4)].into_iter().enumerate() {
        let (a, t) = if k == 2 { ("C", "natural") } else { ("O", "natural") };
        let s = NumberSystem::from_ids(a, t).unwrap();
        let w = random_hermitian_weights(6, &s, 40 + k as u64, 0.5);
        let net = Network::new(s, w, f, Schedule::RandomPermutation { seed: 3 }).unwrap();
        let x0 = net.random_state(8);
        let trace = net.run(&x0, 1000).unwrap();
        assert!(trace.converged);
        let mut x = x0;
        let mut e = net.energy(&x);
        for ev in trace.events.iter().filter(|e| e.changed) {
            let predicted = net.hermitian_energy_change(&ev.old, &ev.new, &ev.potential, ev.neuron);
            x.set_neuron(ev.neuron, &ev.new);
            let after = net.energy(&x);
            assert!(((after - e) - predicted).abs() <= 1e-9 * e.abs().max(1.0));
            assert!((ev.energy - after).abs() <= 1e-9 * e.abs().max(1.0));
            e = after;
        }
    }
}

#[test]
fn zero_potential_holds_every_neuron() {
    for (a, f) in [("C", Activation::Split), ("C", Activation::Csgn(4)), ("Q", Activation::Sigma)] {
        let s = NumberSystem::from_ids(a, "natural").unwrap();
        let net = Network::new(s, WeightMatrix::zeros(3, if a == "C" { 2 } else { 4 }), f, Schedule::Cyclic)
            .unwrap();
        let x = net.random_state(1);
        for i in 0..3 {
            assert_eq!(net.step(&x, i).unwrap(), (x.clone(), false));
        }
    }
}
