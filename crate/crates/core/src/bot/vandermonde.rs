use crate::error::{Error, Result};
use crate::field::{dense, Field};

/// Solves `sum_j c_j v_j^i = a_i` for `i = 0..t-1`.
///
/// With `P(z) = prod_k (z - v_k)` and `P_j = P / (z - v_j)`, pairing the
/// equations with the coefficients of `P_j` isolates
/// `c_j = <P_j, a> / P_j(v_j)`. Quadratic in `t`.
pub fn solve_transposed_vandermonde<F: Field>(
    field: &F,
    nodes: &[F::Elem],
    values: &[F::Elem],
) -> Result<Vec<F::Elem>> {
    if nodes.len() != values.len() {
        return Err(Error::InvalidInput(format!(
            "{} nodes but {} values",
            nodes.len(),
            values.len()
        )));
    }
    let t = nodes.len();
    let master = dense::from_roots(field, nodes);
    let mut quotient = vec![field.zero(); t];
    nodes
        .iter()
        .map(|v| {
            // synthetic division of the master polynomial by (z - v)
            let mut carry = field.zero();
            for k in (0..t).rev() {
                carry = field.add(&master[k + 1], &field.mul(&carry, v));
                quotient[k] = carry.clone();
            }
            let denom = dense::eval(field, &quotient, v);
            if field.is_zero(&denom) {
                return Err(Error::DuplicateNodes);
            }
            field.div(&field.dot(&quotient, values), &denom)
        })
        .collect()
}
