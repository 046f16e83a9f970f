use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use super::{AlgebraError, Field, Rational};

/// Relative precision given to inverses of exact values unless set otherwise.
pub const DEFAULT_PRECISION: u32 = 16;

/// Truncated Laurent series in `ε` with exact rational coefficients.
///
/// A value is `Σ_k coeffs[k] ε^(val+k)`, either exactly (`prec == None`) or
/// modulo `ε^prec`. Inverting an exact value that is not a monomial
/// truncates to `rel` terms; constants carry `rel = 0` and defer to the
/// other operand, or to [`DEFAULT_PRECISION`].
#[derive(Clone, PartialEq)]
pub struct Series {
    val: i64,
    coeffs: Vec<Rational>,
    prec: Option<i64>,
    rel: u32,
}

impl Series {
    /// Exact `Σ coeffs[k] ε^k`.
    pub fn polynomial(coeffs: Vec<Rational>, rel: u32) -> Self {
        Self::normalized(0, coeffs, None, rel)
    }

    /// Exact `a + b ε`.
    pub fn linear(a: Rational, b: Rational, rel: u32) -> Self {
        Self::polynomial(vec![a, b], rel)
    }

    pub fn epsilon(rel: u32) -> Self {
        Self::linear(Rational::from_i64(0), Rational::from_i64(1), rel)
    }

    fn normalized(mut val: i64, mut coeffs: Vec<Rational>, prec: Option<i64>, rel: u32) -> Self {
        if let Some(p) = prec {
            coeffs.truncate((p - val).max(0) as usize);
        } else {
            while coeffs.last().is_some_and(|c| c.is_zero()) {
                coeffs.pop();
            }
        }
        let lead = coeffs.iter().position(|c| !c.is_zero()).unwrap_or(coeffs.len());
        coeffs.drain(..lead);
        val += lead as i64;
        if coeffs.is_empty() {
            val = prec.unwrap_or(0);
        }
        Series { val, coeffs, prec, rel }
    }

    pub fn is_exact(&self) -> bool {
        self.prec.is_none()
    }

    /// Order of the leading known term, or the precision if none is known.
    pub fn valuation(&self) -> i64 {
        self.val
    }

    pub fn precision(&self) -> Option<i64> {
        self.prec
    }

    /// The constant term, provided there is no pole and it is determined.
    pub fn eval_at_zero(&self) -> Result<Rational, AlgebraError> {
        if self.coeffs.is_empty() {
            return match self.prec {
                Some(p) if p <= 0 => Err(AlgebraError::PrecisionLoss),
                _ => Ok(Rational::from_i64(0)),
            };
        }
        match self.val {
            v if v < 0 => Err(AlgebraError::PoleAtZero),
            0 => Ok(self.coeffs[0].clone()),
            _ => Ok(Rational::from_i64(0)),
        }
    }

    fn coeff(&self, k: i64) -> Rational {
        let i = k - self.val;
        if i < 0 || i as usize >= self.coeffs.len() {
            Rational::from_i64(0)
        } else {
            self.coeffs[i as usize].clone()
        }
    }

    fn end(&self) -> i64 {
        self.val + self.coeffs.len() as i64
    }
}

fn min_prec(a: Option<i64>, b: Option<i64>) -> Option<i64> {
    match (a, b) {
        (Some(x), Some(y)) => Some(x.min(y)),
        (x, None) | (None, x) => x,
    }
}

impl Add for Series {
    type Output = Series;

    fn add(self, rhs: Series) -> Series {
        let prec = min_prec(self.prec, rhs.prec);
        let lo = self.val.min(rhs.val);
        let hi = prec.unwrap_or(self.end().max(rhs.end()));
        let coeffs = (lo..hi).map(|k| self.coeff(k) + rhs.coeff(k)).collect();
        Series::normalized(lo, coeffs, prec, self.rel.max(rhs.rel))
    }
}

impl Neg for Series {
    type Output = Series;

    fn neg(mut self) -> Series {
        for c in &mut self.coeffs {
            *c = -c.clone();
        }
        self
    }
}

impl Sub for Series {
    type Output = Series;

    fn sub(self, rhs: Series) -> Series {
        self + (-rhs)
    }
}

impl Mul for Series {
    type Output = Series;

    fn mul(self, rhs: Series) -> Series {
        let rel = self.rel.max(rhs.rel);
        let exact_zero = |s: &Series| s.is_exact() && s.coeffs.is_empty();
        if exact_zero(&self) || exact_zero(&rhs) {
            return Series::polynomial(Vec::new(), rel);
        }
        let val = self.val + rhs.val;
        let prec = min_prec(self.prec.map(|p| p + rhs.val), rhs.prec.map(|p| p + self.val));
        let len = match prec {
            Some(p) => (p - val).max(0) as usize,
            None => self.coeffs.len() + rhs.coeffs.len() - 1,
        };
        let mut coeffs = vec![Rational::from_i64(0); len];
        for (i, a) in self.coeffs.iter().enumerate().take(len) {
            for (j, b) in rhs.coeffs.iter().enumerate().take(len - i) {
                coeffs[i + j] += a * b;
            }
        }
        Series::normalized(val, coeffs, prec, rel)
    }
}

impl Field for Series {
    fn zero() -> Self {
        Series::polynomial(Vec::new(), 0)
    }

    fn one() -> Self {
        Self::from_i64(1)
    }

    fn is_zero(&self) -> bool {
        self.is_exact() && self.coeffs.is_empty()
    }

    fn from_rational(q: &Rational) -> Self {
        Series::polynomial(vec![q.clone()], 0)
    }

    fn try_inv(&self) -> Result<Self, AlgebraError> {
        if self.coeffs.is_empty() {
            return Err(if self.is_exact() {
                AlgebraError::DivisionByZero
            } else {
                AlgebraError::PrecisionLoss
            });
        }
        if self.is_exact() && self.coeffs.len() == 1 {
            return Ok(Series::normalized(
                -self.val,
                vec![self.coeffs[0].recip()],
                None,
                self.rel,
            ));
        }
        let n = match self.prec {
            Some(p) => (p - self.val) as usize,
            None if self.rel == 0 => DEFAULT_PRECISION as usize,
            None => self.rel as usize,
        };
        let inv0 = self.coeffs[0].recip();
        let mut out: Vec<Rational> = Vec::with_capacity(n);
        out.push(inv0.clone());
        for k in 1..n {
            let mut acc = Rational::from_i64(0);
            for j in 1..=k.min(self.coeffs.len() - 1) {
                acc += &self.coeffs[j] * &out[k - j];
            }
            out.push(-(acc * &inv0));
        }
        Ok(Series::normalized(-self.val, out, Some(n as i64 - self.val), self.rel))
    }
}

impl fmt::Debug for Series {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let terms: Vec<String> = self
            .coeffs
            .iter()
            .enumerate()
            .filter(|(_, c)| !c.is_zero())
            .map(|(k, c)| format!("{c}·ε^{}", self.val + k as i64))
            .collect();
        let body = if terms.is_empty() {
            "0".to_string()
        } else {
            terms.join(" + ")
        };
        match self.prec {
            Some(p) => write!(f, "{body} + O(ε^{p})"),
            None => write!(f, "{body}"),
        }
    }
}
