use crate::algebra::{Field, Rational};

use super::LocalizationError;

/// Torus weights of `H^0` and `H^1` of a line bundle of degree `deg` on an
/// invariant P^1 with fiber weights `c0`, `cinf` at the two fixed points.
pub fn line_bundle_weights(deg: i64, c0: &Rational, cinf: &Rational) -> (Vec<Rational>, Vec<Rational>) {
    let a = deg.abs();
    let at = |s: i64| {
        if a == 0 {
            c0.clone()
        } else {
            (c0 * Rational::from_i64(a - s) + cinf * Rational::from_i64(s)) / Rational::from_i64(a)
        }
    };
    if deg >= 0 {
        ((0..=a).map(at).collect(), Vec::new())
    } else {
        (Vec::new(), (1..a).map(at).collect())
    }
}

/// `e(H^•(L ⊕ L^∨))` for `L` of degree `d`, computed from the weights and
/// checked against `(−1)^(d−1) c_1(L)|_0 c_1(L)|_∞`.
pub fn edge_bundle_oracle(d: u32, c0: &Rational, cinf: &Rational) -> Result<Rational, LocalizationError> {
    if d == 0 && c0 != cinf {
        return Err(LocalizationError::InvalidInput(
            "a degree-zero bundle has equal fiber weights".into(),
        ));
    }
    let d = d as i64;
    let (h0, h1) = line_bundle_weights(d, c0, cinf);
    let (h0d, h1d) = line_bundle_weights(-d, &-c0.clone(), &-cinf.clone());
    let num = Rational::product(h0.into_iter().chain(h0d));
    let den = Rational::product(h1.into_iter().chain(h1d));
    let ratio = num
        .try_div(&den)
        .map_err(|_| LocalizationError::DegenerateWeights("zero weight in H^1".into()))?;
    let closed = if (d - 1).rem_euclid(2) == 0 {
        c0 * cinf
    } else {
        -(c0 * cinf)
    };
    if ratio != closed {
        return Err(LocalizationError::OracleMismatch(format!(
            "d = {d}: weights give {ratio}, closed form {closed}"
        )));
    }
    Ok(closed)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn r(x: i64) -> Rational {
        Rational::from_i64(x)
    }

    #[test]
    fn examples() {
        assert_eq!(edge_bundle_oracle(1, &r(3), &r(-4)).unwrap(), r(-12));
        assert_eq!(edge_bundle_oracle(3, &r(2), &r(5)).unwrap(), r(10));
        assert_eq!(edge_bundle_oracle(0, &r(7), &r(7)).unwrap(), r(-49));
        assert!(edge_bundle_oracle(0, &r(7), &r(8)).is_err());
        assert!(matches!(
            edge_bundle_oracle(2, &r(1), &r(-1)),
            Err(LocalizationError::DegenerateWeights(_))
        ));
    }

    #[test]
    fn weights() {
        let (h0, h1) = line_bundle_weights(3, &r(2), &r(5));
        assert_eq!(h0, vec![r(2), r(3), r(4), r(5)]);
        assert!(h1.is_empty());
        let (h0, h1) = line_bundle_weights(-3, &r(-2), &r(-5));
        assert!(h0.is_empty());
        assert_eq!(h1, vec![r(-3), r(-4)]);
        assert_eq!(line_bundle_weights(-1, &r(1), &r(2)), (vec![], vec![]));
    }
}
