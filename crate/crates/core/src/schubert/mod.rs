//! Two-row partitions, Schur polynomials and the classical cohomology of
//! Gr(2,n) and (P^{n-1})^2.
//!
//! Products in H*(Gr(2,n)) are computed from the Pieri rule for the special
//! classes σ_r plus the two-row Giambelli identity
//! σ_(a,b) = σ_a σ_b − σ_(a+1) σ_(b−1); nothing here touches torus weights.

mod quantum;

use std::collections::BTreeMap;
use std::fmt;
use std::str::FromStr;

use num_bigint::BigInt;
use num_traits::{One, Zero};
use thiserror::Error;

use crate::algebra::{Field, Rational};

pub use quantum::{quantum_pieri_oracle, QuantumTable};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum SchubertError {
    #[error("Gr(2,{0}) needs n >= 3")]
    InvalidDimension(u32),
    #[error("partition {0} does not fit in the 2 x {1} box")]
    OutsideBox(Partition2, u32),
    #[error("cannot parse partition from {0:?}")]
    Parse(String),
}

/// A partition `(mu1, mu2)` with `mu1 >= mu2 >= 0`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Partition2 {
    mu1: u32,
    mu2: u32,
}

impl Partition2 {
    /// Returns `None` unless `mu1 >= mu2`.
    pub fn new(mu1: u32, mu2: u32) -> Option<Self> {
        (mu1 >= mu2).then_some(Partition2 { mu1, mu2 })
    }

    /// Partition checked against the `2 x (n-2)` box of Gr(2,n).
    pub fn in_box(mu1: u32, mu2: u32, n: u32) -> Result<Self, SchubertError> {
        let p = Self::new(mu1, mu2).ok_or_else(|| SchubertError::Parse(format!("{mu1},{mu2}")))?;
        p.check_box(n)?;
        Ok(p)
    }

    pub fn empty() -> Self {
        Partition2 { mu1: 0, mu2: 0 }
    }

    pub fn mu1(&self) -> u32 {
        self.mu1
    }

    pub fn mu2(&self) -> u32 {
        self.mu2
    }

    pub fn codimension(&self) -> u32 {
        self.mu1 + self.mu2
    }

    pub fn fits(&self, width: u32) -> bool {
        self.mu1 <= width
    }

    pub fn check_box(&self, n: u32) -> Result<(), SchubertError> {
        if n < 3 {
            return Err(SchubertError::InvalidDimension(n));
        }
        if self.fits(n - 2) {
            Ok(())
        } else {
            Err(SchubertError::OutsideBox(*self, n - 2))
        }
    }

    /// Poincaré dual partition in Gr(2,n).
    pub fn dual(&self, n: u32) -> Self {
        let w = n - 2;
        Partition2 {
            mu1: w - self.mu2,
            mu2: w - self.mu1,
        }
    }

    /// The point class `(n-2, n-2)`.
    pub fn point(n: u32) -> Self {
        Partition2 { mu1: n - 2, mu2: n - 2 }
    }
}

impl fmt::Display for Partition2 {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({},{})", self.mu1, self.mu2)
    }
}

impl FromStr for Partition2 {
    type Err = SchubertError;

    /// Accepts `"a,b"`, `"(a,b)"` or a single part `"a"`.
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let err = || SchubertError::Parse(s.to_string());
        let body = s.trim();
        let body = body.strip_prefix('(').and_then(|b| b.strip_suffix(')')).unwrap_or(body);
        let mut parts = body.split(',').map(str::trim);
        let mu1: u32 = parts.next().ok_or_else(err)?.parse().map_err(|_| err())?;
        let mu2: u32 = match parts.next() {
            Some(p) => p.parse().map_err(|_| err())?,
            None => 0,
        };
        if parts.next().is_some() {
            return Err(err());
        }
        Self::new(mu1, mu2).ok_or_else(err)
    }
}

/// All partitions in the `2 x (n-2)` box, lexicographic.
pub fn partitions_in_box(n: u32) -> Result<Vec<Partition2>, SchubertError> {
    if n < 3 {
        return Err(SchubertError::InvalidDimension(n));
    }
    let w = n - 2;
    Ok((0..=w)
        .flat_map(|mu1| (0..=mu1).map(move |mu2| Partition2 { mu1, mu2 }))
        .collect())
}

/// `S_mu(x1, x2)`.
///
/// Bialternant off the diagonal, `(mu1 - mu2 + 1) x^(mu1 + mu2)` on it.
pub fn schur_eval<K: Field>(mu: Partition2, x1: &K, x2: &K) -> K {
    let diff = x1.clone() - x2.clone();
    let (a, b) = (mu.mu1 as i64, mu.mu2 as i64);
    let pow = |x: &K, e: i64| x.try_pow(e).expect("nonnegative exponent");
    if diff.is_zero() {
        return K::from_i64(a - b + 1) * pow(x1, a + b);
    }
    let num = pow(x1, a + 1) * pow(x2, b) - pow(x2, a + 1) * pow(x1, b);
    num.try_div(&diff).expect("x1 != x2")
}

/// Integer polynomial in the hyperplane classes `H1`, `H2`.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct Poly2 {
    terms: BTreeMap<(u32, u32), BigInt>,
}

impl Poly2 {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn one() -> Self {
        Self::monomial(1, 0, 0)
    }

    pub fn monomial(c: i64, e1: u32, e2: u32) -> Self {
        let mut p = Self::zero();
        p.add_term((e1, e2), BigInt::from(c));
        p
    }

    pub fn h1() -> Self {
        Self::monomial(1, 1, 0)
    }

    pub fn h2() -> Self {
        Self::monomial(1, 0, 1)
    }

    fn add_term(&mut self, exps: (u32, u32), c: BigInt) {
        if c.is_zero() {
            return;
        }
        let entry = self.terms.entry(exps).or_insert_with(BigInt::zero);
        *entry += c;
        if entry.is_zero() {
            self.terms.remove(&exps);
        }
    }

    pub fn coeff(&self, e1: u32, e2: u32) -> BigInt {
        self.terms.get(&(e1, e2)).cloned().unwrap_or_default()
    }

    pub fn add(&self, rhs: &Poly2) -> Poly2 {
        let mut out = self.clone();
        for (&e, c) in &rhs.terms {
            out.add_term(e, c.clone());
        }
        out
    }

    pub fn sub(&self, rhs: &Poly2) -> Poly2 {
        let mut out = self.clone();
        for (&e, c) in &rhs.terms {
            out.add_term(e, -c);
        }
        out
    }

    pub fn mul(&self, rhs: &Poly2) -> Poly2 {
        let mut out = Poly2::zero();
        for (&(a1, a2), c) in &self.terms {
            for (&(b1, b2), d) in &rhs.terms {
                out.add_term((a1 + b1, a2 + b2), c * d);
            }
        }
        out
    }

    /// `S_mu(H1, H2) = (H1 H2)^mu2 * h_(mu1 - mu2)(H1, H2)`.
    pub fn schur(mu: Partition2) -> Poly2 {
        let mut p = Poly2::zero();
        for i in 0..=(mu.mu1 - mu.mu2) {
            p.add_term((mu.mu2 + i, mu.mu1 - i), BigInt::one());
        }
        p
    }
}

/// Coefficient of `H1^(n-1) H2^(n-1)`, i.e. the integral over (P^{n-1})^2.
pub fn pp_integral(poly: &Poly2, n: u32) -> BigInt {
    poly.coeff(n - 1, n - 1)
}

/// A class in H*(Gr(2,n)) written in the Schubert basis.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct CohomologyVector {
    coeffs: BTreeMap<Partition2, i64>,
}

impl CohomologyVector {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn basis(mu: Partition2) -> Self {
        let mut v = Self::zero();
        v.add_term(mu, 1);
        v
    }

    pub fn add_term(&mut self, mu: Partition2, c: i64) {
        if c == 0 {
            return;
        }
        let e = self.coeffs.entry(mu).or_insert(0);
        *e += c;
        if *e == 0 {
            self.coeffs.remove(&mu);
        }
    }

    pub fn coeff(&self, mu: Partition2) -> i64 {
        self.coeffs.get(&mu).copied().unwrap_or(0)
    }

    pub fn terms(&self) -> impl Iterator<Item = (Partition2, i64)> + '_ {
        self.coeffs.iter().map(|(&p, &c)| (p, c))
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    fn axpy(&mut self, k: i64, other: &CohomologyVector) {
        for (p, c) in other.terms() {
            self.add_term(p, k * c);
        }
    }
}

/// Classical Pieri: σ_r · σ_(a,b) in Gr(2,n).
fn pieri_classical(r: i64, mu: Partition2, n: u32) -> CohomologyVector {
    let w = (n - 2) as i64;
    let mut out = CohomologyVector::zero();
    if r < 0 || r > w {
        return out;
    }
    let (a, b) = (mu.mu1 as i64, mu.mu2 as i64);
    let total = a + b + r;
    for c in a..=w {
        let e = total - c;
        if e >= b && e <= a {
            out.add_term(Partition2::new(c as u32, e as u32).unwrap(), 1);
        }
    }
    out
}

fn special_times(r: i64, x: &CohomologyVector, n: u32) -> CohomologyVector {
    let mut out = CohomologyVector::zero();
    for (p, c) in x.terms() {
        out.axpy(c, &pieri_classical(r, p, n));
    }
    out
}

/// σ_mu · x via two-row Giambelli.
fn basis_times(mu: Partition2, x: &CohomologyVector, n: u32) -> CohomologyVector {
    let (a, b) = (mu.mu1 as i64, mu.mu2 as i64);
    let mut out = special_times(a, &special_times(b, x, n), n);
    let correction = special_times(a + 1, &special_times(b - 1, x, n), n);
    out.axpy(-1, &correction);
    out
}

/// Cup product in H*(Gr(2,n)).
pub fn classical_product(a: &CohomologyVector, b: &CohomologyVector, n: u32) -> CohomologyVector {
    let mut out = CohomologyVector::zero();
    for (p, c) in a.terms() {
        out.axpy(c, &basis_times(p, b, n));
    }
    out
}

/// `∫_{Gr(2,n)} σ_{mu_1} ⋯ σ_{mu_k}`.
pub fn gr_integral(classes: &[Partition2], n: u32) -> i64 {
    let mut acc = CohomologyVector::basis(Partition2::empty());
    for &mu in classes {
        acc = basis_times(mu, &acc, n);
    }
    acc.coeff(Partition2::point(n))
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MartinReport {
    pub lhs: i64,
    pub rhs: Rational,
    pub equal: bool,
}

/// Degree-zero correspondence: `∫_Gr ∏σ = ½ ∫_{PP} ∏S_mu(H1,H2) · (H1−H2)(H2−H1)`.
pub fn martin_check(classes: &[Partition2], n: u32) -> MartinReport {
    let lhs = gr_integral(classes, n);
    let diff = Poly2::h1().sub(&Poly2::h2());
    let mut integrand = diff.mul(&diff).mul(&Poly2::monomial(-1, 0, 0));
    for &mu in classes {
        integrand = integrand.mul(&Poly2::schur(mu));
    }
    let rhs = Rational::new(pp_integral(&integrand, n), BigInt::from(2));
    let equal = rhs.is_integer() && rhs.to_integer() == BigInt::from(lhs);
    MartinReport { lhs, rhs, equal }
}
