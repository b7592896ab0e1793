use crate::error::{Error, Result};

/// Coefficients of `prod_r (X - v_r)` in descending powers of `X`.
///
/// Expanded one root at a time; entry `i` equals `(-1)^i e_i(values)`.
pub fn monic_coefficients(values: &[f64]) -> Vec<f64> {
    let mut coeffs = Vec::with_capacity(values.len() + 1);
    coeffs.push(1.0);
    for &v in values {
        coeffs.push(0.0);
        for i in (1..coeffs.len()).rev() {
            coeffs[i] -= v * coeffs[i - 1];
        }
    }
    coeffs
}

/// The `i`-th elementary symmetric polynomial of `values` (`e_0 = 1`).
pub fn elementary_symmetric(values: &[f64], i: usize) -> Result<f64> {
    if i > values.len() {
        return Err(Error::SymmetricIndexOutOfRange {
            index: i,
            len: values.len(),
        });
    }
    let c = monic_coefficients(values)[i];
    Ok(if i % 2 == 0 { c } else { -c })
}

/// Evaluates a polynomial given in descending powers.
pub fn horner(coeffs: &[f64], x: f64) -> f64 {
    coeffs.iter().fold(0.0, |acc, &c| acc * x + c)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn empty_product_convention() {
        assert_eq!(elementary_symmetric(&[0.2, 0.4, 0.9], 0).unwrap(), 1.0);
        assert_eq!(elementary_symmetric(&[], 0).unwrap(), 1.0);
    }

    #[test]
    fn small_integer_values() {
        assert_eq!(elementary_symmetric(&[2.0, 3.0, 5.0], 1).unwrap(), 10.0);
        assert_eq!(elementary_symmetric(&[2.0, 3.0, 5.0], 2).unwrap(), 31.0);
        assert_eq!(elementary_symmetric(&[2.0, 3.0, 5.0], 3).unwrap(), 30.0);
    }

    #[test]
    fn index_out_of_range() {
        assert_eq!(
            elementary_symmetric(&[2.0, 3.0], 3),
            Err(Error::SymmetricIndexOutOfRange { index: 3, len: 2 })
        );
    }

    #[test]
    fn horner_matches_product() {
        let roots = [0.2, 0.45, 0.7];
        let coeffs = monic_coefficients(&roots);
        let x = 0.31;
        let direct: f64 = roots.iter().map(|r| x - r).product();
        assert!((horner(&coeffs, x) - direct).abs() < 1e-16);
    }
}
