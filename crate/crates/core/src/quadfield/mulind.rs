//! Multiplicative independence of positive quadratic irrationals.
//!
//! Distinct quadratic fields force independence. Inside one field the
//! question is settled by a bounded exact search for a relation
//! `x^m = y^n`; past the bound the answer is reported as unknown rather
//! than guessed.

use core::cmp::Ordering;

use super::{QuadError, QuadExt};

/// Outcome of the bounded independence test.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum MultIndependence {
    Independent,
    /// A relation x^m = y^n (after normalizing both values above 1).
    Dependent { m: u32, n: u32 },
    /// No relation with exponents up to the bound; independence undecided.
    Unknown { bound: u32 },
}

/// Both irrational and generating the same quadratic field.
pub fn same_field(x: &QuadExt, y: &QuadExt) -> Result<bool, QuadError> {
    if x.is_rational() || y.is_rational() {
        return Err(QuadError::RationalInput);
    }
    Ok(x.radicand() == y.radicand())
}

pub fn mult_independent_quadratic(
    x: &QuadExt,
    y: &QuadExt,
    bound: u32,
) -> Result<MultIndependence, QuadError> {
    if x.is_rational() || y.is_rational() {
        return Err(QuadError::RationalInput);
    }
    if !x.is_positive() || !y.is_positive() {
        return Err(QuadError::NegativeInput);
    }
    if x.radicand() != y.radicand() {
        return Ok(MultIndependence::Independent);
    }
    // Normalize above 1; x^m y^n = 1 relations survive inversion.
    let above_one = |v: &QuadExt| -> Result<QuadExt, QuadError> {
        match v.cmp_exact(&QuadExt::one())? {
            Ordering::Greater => Ok(v.clone()),
            _ => v.inverse(),
        }
    };
    let xv = above_one(x)?;
    let yv = above_one(y)?;

    // Two-pointer walk over the merged sequences x¹, x², … and y¹, y², …
    let mut m = 1u32;
    let mut n = 1u32;
    let mut xp = xv.clone();
    let mut yp = yv.clone();
    loop {
        match xp.cmp_exact(&yp)? {
            Ordering::Equal => return Ok(MultIndependence::Dependent { m, n }),
            Ordering::Less => {
                m += 1;
                if m > bound {
                    return Ok(MultIndependence::Unknown { bound });
                }
                xp = xp.checked_mul(&xv)?;
            }
            Ordering::Greater => {
                n += 1;
                if n > bound {
                    return Ok(MultIndependence::Unknown { bound });
                }
                yp = yp.checked_mul(&yv)?;
            }
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::quadfield::quad;

    #[test]
    fn distinct_fields_are_independent() {
        let x = QuadExt::sqrt_of(2).unwrap();
        let y = QuadExt::sqrt_of(3).unwrap();
        assert_eq!(mult_independent_quadratic(&x, &y, 64).unwrap(), MultIndependence::Independent);
        assert!(!same_field(&x, &y).unwrap());
    }

    #[test]
    fn square_relation_found() {
        let x = QuadExt::one() + QuadExt::sqrt_of(2).unwrap();
        let y = quad((3, 1), (2, 1), 2);
        assert_eq!(
            mult_independent_quadratic(&x, &y, 64).unwrap(),
            MultIndependence::Dependent { m: 2, n: 1 }
        );
    }

    #[test]
    fn same_field_without_obvious_relation() {
        let x = QuadExt::sqrt_of(2).unwrap();
        let y = QuadExt::from_int(2) + QuadExt::sqrt_of(2).unwrap();
        assert!(same_field(&x, &y).unwrap());
        assert_eq!(
            mult_independent_quadratic(&x, &y, 12).unwrap(),
            MultIndependence::Unknown { bound: 12 }
        );
    }

    #[test]
    fn values_below_one_normalize() {
        let x = QuadExt::one() + QuadExt::sqrt_of(2).unwrap();
        let xinv = x.inverse().unwrap();
        let y = quad((3, 1), (2, 1), 2);
        assert_eq!(
            mult_independent_quadratic(&xinv, &y, 64).unwrap(),
            MultIndependence::Dependent { m: 2, n: 1 }
        );
    }

    #[test]
    fn rational_inputs_error() {
        let x = QuadExt::from_int(2);
        let y = QuadExt::sqrt_of(2).unwrap();
        assert!(mult_independent_quadratic(&x, &y, 8).is_err());
        assert!(same_field(&x, &y).is_err());
    }
}
