use num_traits::Zero;

use super::{Expansion, ExpansionRatio};
use crate::error::{Error, Result};
use crate::numerics::{rational_powi, Rational};

/// A series resummed in blocks: `X̃_n = x0 + Σ_{k=1..n} c_k·(r/s)^(block·k)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GroupedSeries {
    pub base: ExpansionRatio,
    pub block: usize,
    pub x0: Rational,
    /// `coefficients[k - 1] = c_k`.
    pub coefficients: Vec<Rational>,
    /// `partial_sums[n] = X̃_n`, starting with `x0`.
    pub partial_sums: Vec<Rational>,
}

/// Sums consecutive blocks of `block` signed terms of `e`.
///
/// Only complete blocks are kept. A terminated expansion counts as having
/// zero terms past its end, so it always yields at least one block.
pub fn regroup(e: &Expansion, block: usize) -> Result<GroupedSeries> {
    if block == 0 {
        return Err(Error::InvalidArgument("block size must be positive".into()));
    }
    let available = if e.terminated {
        e.terms_requested.max(e.terms())
    } else {
        e.terms()
    };
    if available < block {
        return Err(Error::InsufficientTerms { needed: block, available });
    }
    let blocks = available / block;
    let rho = e.ratio.value();
    let mut coefficients = Vec::with_capacity(blocks);
    let mut partial_sums = vec![e.x0.clone()];
    for k in 1..=blocks {
        let mut sum = Rational::zero();
        for n in (k - 1) * block + 1..=k * block {
            if n <= e.terms() {
                sum += e.term(n);
            }
        }
        let scale = rational_powi(&rho, (block * k) as i64)?;
        let next = partial_sums.last().unwrap() + &sum;
        coefficients.push(sum / scale);
        partial_sums.push(next);
    }
    Ok(GroupedSeries {
        base: e.ratio,
        block,
        x0: e.x0.clone(),
        coefficients,
        partial_sums,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::engine::{expand, Target, X0Policy};
    use crate::numerics::{int, rat};

    fn run(p: i64, q: i64, terms: usize) -> Expansion {
        let ratio = ExpansionRatio::new(1, 2).unwrap();
        expand(&Target::Exact(rat(p, q)), &ratio, X0Policy::AtZero, terms, 64).unwrap()
    }

    #[test]
    fn one_seventh_in_eighths() {
        let g = regroup(&run(1, 7, 15), 3).unwrap();
        assert_eq!(g.coefficients, vec![int(1); 5]);
        let scaled: Vec<Rational> = g
            .partial_sums
            .iter()
            .enumerate()
            .map(|(n, x)| x * rational_powi(&int(8), n as i64).unwrap())
            .collect();
        let expect: Vec<Rational> = [0, 1, 9, 73, 585, 4681].iter().map(|&v| int(v)).collect();
        assert_eq!(scaled, expect);
    }

    #[test]
    fn one_fifth_in_quarters_alternates() {
        let g = regroup(&run(1, 5, 10), 2).unwrap();
        assert_eq!(g.coefficients, vec![int(1), int(-1), int(1), int(-1), int(1)]);
    }

    #[test]
    fn block_one_is_identity() {
        let e = run(1, 3, 6);
        let g = regroup(&e, 1).unwrap();
        assert_eq!(g.partial_sums, e.partial_sums);
        assert_eq!(g.coefficients, vec![int(1), int(-1), int(1), int(-1), int(1), int(-1)]);
    }

    #[test]
    fn insufficient_terms() {
        assert_eq!(
            regroup(&run(1, 3, 2), 3).unwrap_err(),
            Error::InsufficientTerms { needed: 3, available: 2 }
        );
        assert!(regroup(&run(1, 3, 2), 0).is_err());
    }

    #[test]
    fn terminated_expansion_pads_with_zeros() {
        let g = regroup(&run(1, 4, 6), 4).unwrap();
        assert_eq!(g.partial_sums, vec![int(0), rat(1, 4)]);
    }
}
