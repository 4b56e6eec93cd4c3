//! Hypercomplex number systems given by their structure constants.
//!
//! An algebra of dimension `dim` has basis `e_0 = 1, e_1, ..., e_{dim-1}` and
//! the product of two basis elements is `e_mu e_nu = sum_k c[mu][nu][k] e_k`.
//! Constants are kept as exact rationals so that the law checks in
//! [`crate::laws`] can test identities literally; a sparse `f64` copy drives
//! the numeric hot paths.

use std::fmt;
use std::sync::Arc;

use num_rational::Rational64;
use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::involution::Involution;

/// Highest Cayley-Dickson level that can be built (dimension 64).
pub const MAX_CAYLEY_DICKSON_LEVEL: u32 = 6;

/// Shared handle to an algebra. Numbers, networks and systems hold one of these.
pub type Algebra = Arc<AlgebraSpec>;

#[derive(Clone, Copy, Debug, PartialEq)]
struct Term {
    mu: usize,
    nu: usize,
    k: usize,
    value: f64,
}

/// A finite-dimensional real algebra with unit `e_0`.
#[derive(Clone)]
pub struct AlgebraSpec {
    name: String,
    dim: usize,
    constants: Vec<Rational64>,
    terms: Vec<Term>,
}

impl AlgebraSpec {
    /// Builds an algebra from a flat `dim^3` tensor indexed `[mu][nu][k]`.
    ///
    /// Rejects tensors in which `e_0` is not a two-sided identity.
    pub fn new(name: impl Into<String>, dim: usize, constants: Vec<Rational64>) -> Result<Self> {
        if dim == 0 {
            return Err(Error::InvalidTable("dimension must be at least 1".into()));
        }
        if constants.len() != dim * dim * dim {
            return Err(Error::InvalidTable(format!(
                "expected {} structure constants, found {}",
                dim * dim * dim,
                constants.len()
            )));
        }
        let at = |mu: usize, nu: usize, k: usize| constants[(mu * dim + nu) * dim + k];
        for a in 0..dim {
            for k in 0..dim {
                let delta = if a == k { Rational64::one() } else { Rational64::zero() };
                if at(0, a, k) != delta || at(a, 0, k) != delta {
                    return Err(Error::InvalidTable(format!(
                        "e_0 is not a two-sided identity (basis element {a})"
                    )));
                }
            }
        }
        let mut terms = Vec::new();
        for mu in 0..dim {
            for nu in 0..dim {
                for k in 0..dim {
                    let c = at(mu, nu, k);
                    if !c.is_zero() {
                        terms.push(Term {
                            mu,
                            nu,
                            k,
                            value: *c.numer() as f64 / *c.denom() as f64,
                        });
                    }
                }
            }
        }
        Ok(Self {
            name: name.into(),
            dim,
            constants,
            terms,
        })
    }

    /// Builds an algebra from the products of the hyperimaginary units only.
    ///
    /// `unit_products[mu-1][nu-1]` is the coefficient vector (length `dim`) of
    /// `i_mu i_nu`; products with the real unit are filled in.
    pub fn from_unit_products(
        name: impl Into<String>,
        dim: usize,
        unit_products: &[Vec<Vec<i64>>],
    ) -> Result<Self> {
        let n = dim.saturating_sub(1);
        if unit_products.len() != n || unit_products.iter().any(|row| row.len() != n) {
            return Err(Error::InvalidTable(format!(
                "expected a {n}x{n} table of unit products"
            )));
        }
        let mut constants = vec![Rational64::zero(); dim * dim * dim];
        for a in 0..dim {
            constants[a * dim + a] = Rational64::one();
            constants[(a * dim) * dim + a] = Rational64::one();
        }
        for (mu, row) in unit_products.iter().enumerate() {
            for (nu, product) in row.iter().enumerate() {
                if product.len() != dim {
                    return Err(Error::InvalidTable(format!(
                        "product i_{} i_{} has {} coefficients, expected {dim}",
                        mu + 1,
                        nu + 1,
                        product.len()
                    )));
                }
                for (k, &c) in product.iter().enumerate() {
                    constants[((mu + 1) * dim + nu + 1) * dim + k] = Rational64::from_integer(c);
                }
            }
        }
        Self::new(name, dim, constants)
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    /// Structure constant `c[mu][nu][k]`.
    pub fn constant(&self, mu: usize, nu: usize, k: usize) -> Rational64 {
        self.constants[(mu * self.dim + nu) * self.dim + k]
    }

    pub fn constants(&self) -> &[Rational64] {
        &self.constants
    }

    /// Exact product of two basis elements as a coefficient vector.
    pub fn basis_product(&self, mu: usize, nu: usize) -> Vec<Rational64> {
        let start = (mu * self.dim + nu) * self.dim;
        self.constants[start..start + self.dim].to_vec()
    }

    /// `out = a * b` on raw coefficient slices.
    pub fn mul_into(&self, a: &[f64], b: &[f64], out: &mut [f64]) {
        out.iter_mut().for_each(|o| *o = 0.0);
        self.mul_acc(a, b, out);
    }

    /// `out += a * b` on raw coefficient slices.
    pub fn mul_acc(&self, a: &[f64], b: &[f64], out: &mut [f64]) {
        debug_assert!(a.len() == self.dim && b.len() == self.dim && out.len() == self.dim);
        for t in &self.terms {
            out[t.k] += t.value * a[t.mu] * b[t.nu];
        }
    }

    /// Real part of `a * b` without forming the full product.
    pub fn mul_re(&self, a: &[f64], b: &[f64]) -> f64 {
        self.terms
            .iter()
            .filter(|t| t.k == 0)
            .map(|t| t.value * a[t.mu] * b[t.nu])
            .sum()
    }

    /// Renders the unit multiplication table, one row per `i_mu`.
    pub fn table_string(&self) -> String {
        let labels: Vec<String> = (0..self.dim).map(basis_label).collect();
        let cells: Vec<Vec<String>> = (1..self.dim)
            .map(|mu| {
                (1..self.dim)
                    .map(|nu| format_exact(&self.basis_product(mu, nu), &labels))
                    .collect()
            })
            .collect();
        let width = cells
            .iter()
            .flatten()
            .map(String::len)
            .chain(labels.iter().map(String::len))
            .max()
            .unwrap_or(1);
        let mut out = format!("{:>width$} |", "x");
        for label in &labels[1..] {
            out.push_str(&format!(" {label:>width$}"));
        }
        out.push('\n');
        for (mu, row) in cells.iter().enumerate() {
            out.push_str(&format!("{:>width$} |", labels[mu + 1]));
            for cell in row {
                out.push_str(&format!(" {cell:>width$}"));
            }
            out.push('\n');
        }
        out
    }
}

impl PartialEq for AlgebraSpec {
    fn eq(&self, other: &Self) -> bool {
        self.dim == other.dim && self.constants == other.constants
    }
}

impl fmt::Debug for AlgebraSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("AlgebraSpec")
            .field("name", &self.name)
            .field("dim", &self.dim)
            .finish_non_exhaustive()
    }
}

/// True when both handles denote the same algebra (same dimension and tensor).
pub fn same_algebra(a: &Algebra, b: &Algebra) -> bool {
    Arc::ptr_eq(a, b) || **a == **b
}

/// Label of basis element `k`: `1`, `i`, `j`, `k` up to dimension 4, `i<k>` beyond.
pub fn basis_label(k: usize) -> String {
    match k {
        0 => "1".to_string(),
        1 => "i".to_string(),
        2 => "j".to_string(),
        3 => "k".to_string(),
        _ => format!("i{k}"),
    }
}

fn format_exact(coeffs: &[Rational64], labels: &[String]) -> String {
    let mut out = String::new();
    for (k, c) in coeffs.iter().enumerate() {
        if c.is_zero() {
            continue;
        }
        let negative = *c < Rational64::zero();
        let magnitude = if negative { -*c } else { *c };
        out.push(if negative { '-' } else { '+' });
        let unit = k > 0;
        if !(unit && magnitude.is_one()) {
            out.push_str(&magnitude.to_string());
        }
        if unit {
            out.push_str(&labels[k]);
        }
    }
    if out.is_empty() {
        return "0".to_string();
    }
    if out.starts_with('+') {
        out.remove(0);
    }
    out
}

fn table_from_rows(name: &str, dim: usize, rows: &[&[(i64, usize)]]) -> AlgebraSpec {
    // each entry is (sign, basis index) of a unit product; sign 0 means zero
    let products: Vec<Vec<Vec<i64>>> = rows
        .iter()
        .map(|row| {
            row.iter()
                .map(|&(sign, k)| {
                    let mut v = vec![0; dim];
                    v[k] = sign;
                    v
                })
                .collect()
        })
        .collect();
    AlgebraSpec::from_unit_products(name, dim, &products).expect("built-in table is valid")
}

/// Looks up one of the built-in systems `R, C, U, D, Q, T, O` together with
/// its default reverse-involution.
pub fn builtin_algebra(name: &str) -> Result<(Algebra, Involution)> {
    let spec = match name {
        "R" => cayley_dickson_named(0, "R")?,
        "C" => clifford2_named(-1, "C")?,
        "U" => clifford2_named(1, "U")?,
        "D" => clifford2_named(0, "D")?,
        "Q" => table_from_rows(
            "Q",
            4,
            &[
                &[(-1, 0), (1, 3), (-1, 2)],
                &[(-1, 3), (-1, 0), (1, 1)],
                &[(1, 2), (-1, 1), (-1, 0)],
            ],
        ),
        "T" => table_from_rows(
            "T",
            4,
            &[
                &[(-1, 0), (1, 3), (-1, 2)],
                &[(1, 3), (1, 0), (1, 1)],
                &[(-1, 2), (1, 1), (-1, 0)],
            ],
        ),
        "O" => cayley_dickson_named(3, "O")?,
        other => return Err(Error::UnknownAlgebra(other.to_string())),
    };
    let dim = spec.dim();
    let involution = match name {
        "R" => Involution::identity(dim),
        "T" => Involution::tessarine(),
        _ => Involution::natural(dim),
    };
    Ok((Arc::new(spec), involution))
}

/// Resolves an algebra id: a built-in name, `cd:<level>` or `cl2:<square>`.
pub fn algebra_from_id(id: &str) -> Result<(Algebra, Involution)> {
    if let Some(level) = id.strip_prefix("cd:") {
        let level: u32 = level
            .parse()
            .map_err(|_| Error::UnknownAlgebra(id.to_string()))?;
        let algebra = cayley_dickson(level)?;
        let involution = Involution::natural(algebra.dim());
        return Ok((algebra, involution));
    }
    if let Some(square) = id.strip_prefix("cl2:") {
        let square: i64 = square
            .parse()
            .map_err(|_| Error::UnknownAlgebra(id.to_string()))?;
        let algebra = clifford2(square)?;
        return Ok((algebra, Involution::natural(2)));
    }
    builtin_algebra(id)
}

/// The Cayley-Dickson algebra `A_k` of dimension `2^k`.
///
/// Basis ordering: at every doubling `(x, y)` the coefficients of `x` sit at
/// even positions and those of `y` at odd positions. With this ordering
/// levels 1 and 2 reproduce the complex and quaternion tables exactly.
pub fn cayley_dickson(level: u32) -> Result<Algebra> {
    let name = format!("cd:{level}");
    cayley_dickson_named(level, &name).map(Arc::new)
}

fn cayley_dickson_named(level: u32, name: &str) -> Result<AlgebraSpec> {
    if level > MAX_CAYLEY_DICKSON_LEVEL {
        return Err(Error::CayleyDicksonCap {
            level,
            max: MAX_CAYLEY_DICKSON_LEVEL,
        });
    }
    let dim = 1usize << level;
    let mut constants = Vec::with_capacity(dim * dim * dim);
    let mut a = vec![0i64; dim];
    let mut b = vec![0i64; dim];
    for mu in 0..dim {
        for nu in 0..dim {
            a.iter_mut().for_each(|x| *x = 0);
            b.iter_mut().for_each(|x| *x = 0);
            a[mu] = 1;
            b[nu] = 1;
            constants.extend(cd_mul(&a, &b).into_iter().map(Rational64::from_integer));
        }
    }
    AlgebraSpec::new(name, dim, constants)
}

fn split_pair(p: &[i64]) -> (Vec<i64>, Vec<i64>) {
    (
        p.iter().step_by(2).copied().collect(),
        p.iter().skip(1).step_by(2).copied().collect(),
    )
}

fn join_pair(x: &[i64], y: &[i64]) -> Vec<i64> {
    x.iter().zip(y).flat_map(|(&a, &b)| [a, b]).collect()
}

fn cd_conj(p: &[i64]) -> Vec<i64> {
    if p.len() == 1 {
        return p.to_vec();
    }
    let (x, y) = split_pair(p);
    let y: Vec<i64> = y.iter().map(|v| -v).collect();
    join_pair(&cd_conj(&x), &y)
}

/// (x1, y1)(x2, y2) = (x1 x2 - y2 conj(y1), conj(x1) y2 + x2 y1)
fn cd_mul(p: &[i64], q: &[i64]) -> Vec<i64> {
    if p.len() == 1 {
        return vec![p[0] * q[0]];
    }
    let (x1, y1) = split_pair(p);
    let (x2, y2) = split_pair(q);
    let first: Vec<i64> = cd_mul(&x1, &x2)
        .iter()
        .zip(cd_mul(&y2, &cd_conj(&y1)))
        .map(|(a, b)| a - b)
        .collect();
    let second: Vec<i64> = cd_mul(&cd_conj(&x1), &y2)
        .iter()
        .zip(cd_mul(&x2, &y1))
        .map(|(a, b)| a + b)
        .collect();
    join_pair(&first, &second)
}

/// Two-dimensional real Clifford algebra with `i^2 = square`.
pub fn clifford2(square: i64) -> Result<Algebra> {
    clifford2_named(square, &format!("cl2:{square}")).map(Arc::new)
}

fn clifford2_named(square: i64, name: &str) -> Result<AlgebraSpec> {
    if !(-1..=1).contains(&square) {
        return Err(Error::InvalidCliffordSquare(square));
    }
    AlgebraSpec::from_unit_products(name, 2, &[vec![vec![square, 0]]])
}

/// Serialized form of an algebra with an attached involution.
///
/// Constants are written as `"num/den"` strings so that rational tables
/// survive a round trip unchanged.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct AlgebraDocument {
    pub name: String,
    pub dim: usize,
    pub constants: Vec<String>,
    pub involution: Vec<i8>,
}

impl AlgebraDocument {
    pub fn from_parts(algebra: &AlgebraSpec, involution: &Involution) -> Self {
        Self {
            name: algebra.name().to_string(),
            dim: algebra.dim(),
            constants: algebra
                .constants()
                .iter()
                .map(|c| format!("{}/{}", c.numer(), c.denom()))
                .collect(),
            involution: involution.signs().to_vec(),
        }
    }

    pub fn into_parts(self) -> Result<(Algebra, Involution)> {
        let constants = self
            .constants
            .iter()
            .map(|s| parse_rational(s))
            .collect::<Result<Vec<_>>>()?;
        let algebra = AlgebraSpec::new(self.name, self.dim, constants)?;
        let involution = Involution::new(self.involution)?;
        if involution.dim() != algebra.dim() {
            return Err(Error::DimensionMismatch {
                expected: algebra.dim(),
                found: involution.dim(),
            });
        }
        Ok((Arc::new(algebra), involution))
    }

    pub fn to_json(&self) -> Result<String> {
        Ok(serde_json::to_string_pretty(self)?)
    }

    pub fn from_json(text: &str) -> Result<Self> {
        Ok(serde_json::from_str(text)?)
    }
}

fn parse_rational(s: &str) -> Result<Rational64> {
    let bad = || Error::InvalidTable(format!("bad rational `{s}`"));
    let (num, den) = match s.split_once('/') {
        Some((n, d)) => (n.trim(), d.trim()),
        None => (s.trim(), "1"),
    };
    let num: i64 = num.parse().map_err(|_| bad())?;
    let den: i64 = den.parse().map_err(|_| bad())?;
    if den == 0 {
        return Err(bad());
    }
    Ok(Rational64::new(num, den))
}
