//! Exact checks of the algebraic prerequisites for stable Hopfield dynamics.
//!
//! All checks run on basis elements in rational arithmetic. By linearity a
//! law that holds on every basis pair (or triple) holds everywhere, so a
//! passing check is a proof for the given table, not a sample.

use num_bigint::BigInt;
use num_rational::{BigRational, Rational64};
use num_traits::{Signed, Zero};
use serde::Serialize;

use crate::algebra::AlgebraSpec;
use crate::involution::Involution;

/// Outcome of a law check: either it holds or a witness is returned.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "status", content = "witness", rename_all = "snake_case")]
pub enum Verdict<W> {
    Holds,
    Fails(W),
}

impl<W> Verdict<W> {
    pub fn holds(&self) -> bool {
        matches!(self, Verdict::Holds)
    }

    pub fn witness(&self) -> Option<&W> {
        match self {
            Verdict::Holds => None,
            Verdict::Fails(w) => Some(w),
        }
    }
}

/// Basis pair `(mu, nu)` with `tau(e_mu e_nu) != tau(e_nu) tau(e_mu)`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct BasisPair {
    pub mu: usize,
    pub nu: usize,
}

/// Basis triple with `Re((e_mu e_nu) e_rho) != Re(e_mu (e_nu e_rho))`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct BasisTriple {
    pub mu: usize,
    pub nu: usize,
    pub rho: usize,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum ReahnWitness {
    DimensionMismatch,
    Involution(BasisPair),
    Associator(BasisTriple),
}

/// Checks that `tau` is a reverse-involution of `algebra`.
///
/// A diagonal `+-1` map is always linear and self-inverse, so only the
/// anti-homomorphism `tau(e_mu e_nu) = tau(e_nu) tau(e_mu)` needs checking.
pub fn check_reverse_involution(algebra: &AlgebraSpec, tau: &Involution) -> Verdict<BasisPair> {
    let dim = algebra.dim();
    if tau.dim() != dim {
        return Verdict::Fails(BasisPair { mu: 0, nu: 0 });
    }
    let sign = |k: usize| Rational64::from_integer(i64::from(tau.signs()[k]));
    for mu in 0..dim {
        for nu in 0..dim {
            let factor = sign(mu) * sign(nu);
            let ok = (0..dim).all(|k| {
                sign(k) * algebra.constant(mu, nu, k) == factor * algebra.constant(nu, mu, k)
            });
            if !ok {
                return Verdict::Fails(BasisPair { mu, nu });
            }
        }
    }
    Verdict::Holds
}

pub fn is_reverse_involution(algebra: &AlgebraSpec, tau: &Involution) -> bool {
    check_reverse_involution(algebra, tau).holds()
}

/// Exact `Re((e_mu e_nu) e_rho - e_mu (e_nu e_rho))`.
pub fn basis_associator_re(algebra: &AlgebraSpec, mu: usize, nu: usize, rho: usize) -> Rational64 {
    let dim = algebra.dim();
    let mut acc = Rational64::zero();
    for k in 0..dim {
        acc += algebra.constant(mu, nu, k) * algebra.constant(k, rho, 0);
        acc -= algebra.constant(nu, rho, k) * algebra.constant(mu, k, 0);
    }
    acc
}

/// Real-part associativity on all basis triples.
pub fn check_real_part_associative(algebra: &AlgebraSpec) -> Verdict<BasisTriple> {
    let dim = algebra.dim();
    for mu in 0..dim {
        for nu in 0..dim {
            for rho in 0..dim {
                if !basis_associator_re(algebra, mu, nu, rho).is_zero() {
                    return Verdict::Fails(BasisTriple { mu, nu, rho });
                }
            }
        }
    }
    Verdict::Holds
}

/// Real-part associative hypercomplex number system check: `tau` must be a
/// reverse-involution and the real part of every associator must vanish.
pub fn check_reahn(algebra: &AlgebraSpec, tau: &Involution) -> Verdict<ReahnWitness> {
    if tau.dim() != algebra.dim() {
        return Verdict::Fails(ReahnWitness::DimensionMismatch);
    }
    if let Verdict::Fails(pair) = check_reverse_involution(algebra, tau) {
        return Verdict::Fails(ReahnWitness::Involution(pair));
    }
    match check_real_part_associative(algebra) {
        Verdict::Holds => Verdict::Holds,
        Verdict::Fails(t) => Verdict::Fails(ReahnWitness::Associator(t)),
    }
}

pub fn is_reahn(algebra: &AlgebraSpec, tau: &Involution) -> bool {
    check_reahn(algebra, tau).holds()
}

/// Exact Gram matrix `G[mu][nu] = B(e_mu, e_nu) = sign(mu) c[mu][nu][0]`.
pub fn gram_matrix(algebra: &AlgebraSpec, tau: &Involution) -> Vec<Vec<Rational64>> {
    let dim = algebra.dim();
    (0..dim)
        .map(|mu| {
            (0..dim)
                .map(|nu| {
                    Rational64::from_integer(i64::from(tau.signs()[mu]))
                        * algebra.constant(mu, nu, 0)
                })
                .collect()
        })
        .collect()
}

/// Whether `B(p, p) >= 0` for every `p`, decided by exact symmetric
/// elimination of the Gram matrix.
pub fn is_positive_semidefinite(algebra: &AlgebraSpec, tau: &Involution) -> bool {
    if tau.dim() != algebra.dim() {
        return false;
    }
    let gram = gram_matrix(algebra, tau);
    let dim = gram.len();
    let big = |r: Rational64| {
        BigRational::new(BigInt::from(*r.numer()), BigInt::from(*r.denom()))
    };
    let two = BigRational::from_integer(BigInt::from(2));
    // only the symmetric part matters for the quadratic form
    let mut m: Vec<Vec<BigRational>> = (0..dim)
        .map(|i| {
            (0..dim)
                .map(|j| (big(gram[i][j]) + big(gram[j][i])) / two.clone())
                .collect()
        })
        .collect();
    is_psd_exact(&mut m)
}

fn is_psd_exact(m: &mut [Vec<BigRational>]) -> bool {
    let n = m.len();
    let mut active: Vec<usize> = (0..n).collect();
    while let Some(pos) = active.iter().position(|&i| !m[i][i].is_zero()) {
        let p = active.remove(pos);
        if m[p][p].is_negative() {
            return false;
        }
        let pivot = m[p][p].clone();
        for &i in &active {
            let factor = m[i][p].clone() / pivot.clone();
            for &j in &active {
                let delta = factor.clone() * m[p][j].clone();
                m[i][j] -= delta;
            }
        }
    }
    // every remaining diagonal entry is zero, so PSD requires the rest to vanish
    active
        .iter()
        .all(|&i| active.iter().all(|&j| m[i][j].is_zero()))
}
