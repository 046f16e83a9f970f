use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_traits::{One, Zero};

use super::{AlgebraError, Poly, Rational};

/// Rational function in one variable `t` with exact rational coefficients.
///
/// Stored as `num / den` with `gcd(num, den) = 1` and `den` monic, so
/// structural equality is equality of functions. The zero function is `0/1`.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct TFunction {
    num: Poly,
    den: Poly,
}

impl TFunction {
    pub fn new(num: Poly, den: Poly) -> Result<Self, AlgebraError> {
        if den.is_zero() {
            return Err(AlgebraError::DivisionByZero);
        }
        Ok(Self::normalized(num, den))
    }

    fn normalized(num: Poly, den: Poly) -> Self {
        if num.is_zero() {
            return Self::zero();
        }
        let g = Poly::gcd(&num, &den);
        let (num, den) = if g.is_constant() {
            (num, den)
        } else {
            (num.div_rem(&g).0, den.div_rem(&g).0)
        };
        let lc = den.leading().expect("nonzero denominator").recip();
        TFunction {
            num: num.scale(&lc),
            den: den.scale(&lc),
        }
    }

    pub fn zero() -> Self {
        TFunction {
            num: Poly::zero(),
            den: Poly::one(),
        }
    }

    pub fn one() -> Self {
        Self::constant(Rational::one())
    }

    pub fn constant(c: Rational) -> Self {
        TFunction {
            num: Poly::constant(c),
            den: Poly::one(),
        }
    }

    pub fn polynomial(p: Poly) -> Self {
        TFunction {
            num: p,
            den: Poly::one(),
        }
    }

    /// The variable `t`.
    pub fn t() -> Self {
        Self::polynomial(Poly::var())
    }

    /// `t + c`.
    pub fn t_plus(c: Rational) -> Self {
        Self::polynomial(Poly::linear(c))
    }

    pub fn numerator(&self) -> &Poly {
        &self.num
    }

    pub fn denominator(&self) -> &Poly {
        &self.den
    }

    pub fn is_zero(&self) -> bool {
        self.num.is_zero()
    }

    pub fn is_constant(&self) -> bool {
        self.num.is_constant() && self.den.is_constant()
    }

    pub fn is_polynomial(&self) -> bool {
        self.den.is_constant()
    }

    /// Exact value at `t = 0`.
    pub fn eval_at_zero(&self) -> Result<Rational, AlgebraError> {
        self.eval(&Rational::zero())
    }

    pub fn eval(&self, t: &Rational) -> Result<Rational, AlgebraError> {
        let d = self.den.eval(t);
        if d.is_zero() {
            return Err(if t.is_zero() {
                AlgebraError::PoleAtZero
            } else {
                AlgebraError::DivisionByZero
            });
        }
        Ok(self.num.eval(t) / d)
    }

    /// Order of vanishing at `t = 0`, negative for a pole.
    pub fn valuation_at_zero(&self) -> Result<i64, AlgebraError> {
        let vn = self.num.valuation().ok_or(AlgebraError::ZeroFunction)?;
        let vd = self.den.valuation().expect("nonzero denominator");
        Ok(vn as i64 - vd as i64)
    }

    pub fn recip(&self) -> Result<Self, AlgebraError> {
        if self.is_zero() {
            return Err(AlgebraError::DivisionByZero);
        }
        Ok(Self::normalized(self.den.clone(), self.num.clone()))
    }

    pub fn checked_div(&self, rhs: &TFunction) -> Result<Self, AlgebraError> {
        Ok(self * &rhs.recip()?)
    }

    fn scale(&self, k: &Rational) -> Self {
        if k.is_zero() {
            return Self::zero();
        }
        TFunction {
            num: self.num.scale(k),
            den: self.den.clone(),
        }
    }
}

impl Add for &TFunction {
    type Output = TFunction;
    fn add(self, rhs: &TFunction) -> TFunction {
        if self.is_zero() {
            return rhs.clone();
        }
        if rhs.is_zero() {
            return self.clone();
        }
        if self.den == rhs.den {
            return TFunction::normalized(&self.num + &rhs.num, self.den.clone());
        }
        let num = &(&self.num * &rhs.den) + &(&rhs.num * &self.den);
        TFunction::normalized(num, &self.den * &rhs.den)
    }
}

impl Sub for &TFunction {
    type Output = TFunction;
    fn sub(self, rhs: &TFunction) -> TFunction {
        self + &(-rhs)
    }
}

impl Mul for &TFunction {
    type Output = TFunction;
    fn mul(self, rhs: &TFunction) -> TFunction {
        if self.is_zero() || rhs.is_zero() {
            return TFunction::zero();
        }
        if self.is_constant() {
            return rhs.scale(&self.num.coeff(0));
        }
        if rhs.is_constant() {
            return self.scale(&rhs.num.coeff(0));
        }
        if self.is_polynomial() && rhs.is_polynomial() {
            return TFunction::polynomial(&self.num * &rhs.num);
        }
        // Cross-cancel before multiplying to keep the gcd work small.
        let g1 = Poly::gcd(&self.num, &rhs.den);
        let g2 = Poly::gcd(&rhs.num, &self.den);
        let a = self.num.div_rem(&g1).0;
        let d = rhs.den.div_rem(&g1).0;
        let c = rhs.num.div_rem(&g2).0;
        let b = self.den.div_rem(&g2).0;
        TFunction::normalized(&a * &c, &b * &d)
    }
}

impl Neg for &TFunction {
    type Output = TFunction;
    fn neg(self) -> TFunction {
        TFunction {
            num: -&self.num,
            den: self.den.clone(),
        }
    }
}

macro_rules! forward_owned {
    ($tr:ident, $m:ident) => {
        impl $tr for TFunction {
            type Output = TFunction;
            fn $m(self, rhs: TFunction) -> TFunction {
                (&self).$m(&rhs)
            }
        }
    };
}
forward_owned!(Add, add);
forward_owned!(Sub, sub);
forward_owned!(Mul, mul);

impl Neg for TFunction {
    type Output = TFunction;
    fn neg(self) -> TFunction {
        -&self
    }
}

impl super::Field for TFunction {
    fn zero() -> Self {
        TFunction::zero()
    }

    fn one() -> Self {
        TFunction::one()
    }

    fn is_zero(&self) -> bool {
        TFunction::is_zero(self)
    }

    fn from_rational(q: &Rational) -> Self {
        TFunction::constant(q.clone())
    }

    fn try_inv(&self) -> Result<Self, AlgebraError> {
        self.recip()
    }
}

impl fmt::Display for TFunction {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.den.is_constant() {
            write!(f, "{}", self.num)
        } else {
            write!(f, "({}) / ({})", self.num, self.den)
        }
    }
}

impl fmt::Debug for TFunction {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "TFunction[{self}]")
    }
}
