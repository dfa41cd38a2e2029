//! The eight ring structures on `Z_p x Z_p`, addressable by token.
//!
//! An element `(a1, a2)` has index `a1 * p + a2`.

use crate::error::{Error, Result};
use crate::group::{is_prime, FinAbGroup};
use crate::ring::Ring;

pub const TOKENS: [&str; 8] = ["f4", "prod", "dual", "zero", "row", "col", "halfzero", "nilcubed"];

/// Least `(b, c)` in lexicographic order with `x^2 + bx + c` irreducible over `Z_p`.
pub fn first_irreducible_quadratic(p: u64) -> (u64, u64) {
    for b in 0..p {
        for c in 0..p {
            if (0..p).all(|t| (t * t + b * t + c) % p != 0) {
                return (b, c);
            }
        }
    }
    unreachable!("irreducible quadratics exist over every prime field")
}

fn pair_product(token: &str, p: u64) -> Result<impl Fn(u64, u64, u64, u64) -> (u64, u64)> {
    let (qb, qc) = first_irreducible_quadratic(p);
    let kind = TOKENS
        .iter()
        .position(|&t| t == token)
        .ok_or_else(|| Error::Parse(format!("unknown ring token {token:?}; expected one of {TOKENS:?}")))?;
    Ok(move |a1: u64, a2: u64, b1: u64, b2: u64| match kind {
        0 => {
            let hi = a2 * b2 % p;
            (
                (a1 * b1 + (p - qc) * hi) % p,
                (a1 * b2 + a2 * b1 + (p - qb) * hi) % p,
            )
        }
        1 => (a1 * b1 % p, a2 * b2 % p),
        2 => (a1 * b1 % p, (a1 * b2 + a2 * b1) % p),
        3 => (0, 0),
        4 => (a1 * b1 % p, a1 * b2 % p),
        5 => (a1 * b2 % p, a2 * b2 % p),
        6 => (a1 * b1 % p, 0),
        _ => (0, a1 * b1 % p),
    })
}

/// The ring named by `token` on `[p, p]`.
pub fn named_ring(token: &str, p: u64) -> Result<Ring> {
    if !is_prime(p) {
        return Err(Error::NotPrime(p));
    }
    let f = pair_product(token, p)?;
    let g = FinAbGroup::new(&[p, p])?;
    let split = |x: usize| ((x as u64) / p, (x as u64) % p);
    Ring::from_fn(g, |x, y| {
        let (a1, a2) = split(x);
        let (b1, b2) = split(y);
        let (c1, c2) = f(a1, a2, b1, b2);
        (c1 * p + c2) as usize
    })
}

/// All eight rings, in token order.
pub fn named_rings(p: u64) -> Result<Vec<(&'static str, Ring)>> {
    TOKENS.iter().map(|&t| Ok((t, named_ring(t, p)?))).collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ring::ring_iso_search;

    #[test]
    fn irreducible_quadratics() {
        assert_eq!(first_irreducible_quadratic(2), (1, 1));
        assert_eq!(first_irreducible_quadratic(3), (0, 1));
    }

    #[test]
    fn row_and_nilcubed_products() {
        let r = named_ring("row", 3).unwrap();
        // (1,2)(2,1) = (2, 1)
        assert_eq!(r.mul(5, 7), 7);
        let n = named_ring("nilcubed", 3).unwrap();
        // (2,1)(2,2) = (0, 1)
        assert_eq!(n.mul(7, 8), 1);
    }

    #[test]
    fn pairwise_non_isomorphic_at_two() {
        let rings = named_rings(2).unwrap();
        for i in 0..rings.len() {
            for j in 0..rings.len() {
                assert_eq!(ring_iso_search(&rings[i].1, &rings[j].1).is_some(), i == j, "{} {}", rings[i].0, rings[j].0);
            }
        }
    }

    #[test]
    fn field_has_inverses() {
        for p in [2, 3, 5] {
            let f = named_ring("f4", p).unwrap();
            let one = f.identity().unwrap();
            assert!((1..f.size()).all(|x| (0..f.size()).any(|y| f.mul(x, y) == one)));
        }
        assert_eq!(named_ring("row", 4).unwrap_err(), Error::NotPrime(4));
    }
}
