//! Exact norm evaluation on finitely supported rational vectors.
//!
//! Three layers:
//!
//! * direct-formula norms (spreading norm, max-difference, `c_0 + l_1`,
//!   `l_1`, sup) implemented here;
//! * implicit norms defined by self-referential maxima over admissible
//!   families of sets, evaluated by interval-cut dynamic programs in
//!   [`implicit`];
//! * a brute-force [`oracle`] that re-evaluates the implicit norms by
//!   exhaustive enumeration over all families of disjoint ordered subsets
//!   of the support, used to validate the interval restriction.

pub mod implicit;
pub mod oracle;

use alloc::vec::Vec;
use num_traits::{Signed, Zero};

use crate::error::{Error, Result};
use crate::rat::{int, pow, q as frac, Rational};
use crate::vector::RationalVector;

/// Which norm the inner pieces of the truncated norms carry.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum TruncatedInner {
    /// The q-perturbed implicit norm (the reading adopted throughout).
    QNorm,
    /// The unperturbed implicit norm, exposed for comparison.
    Plain,
}

/// A norm to evaluate, with its exact rational parameters.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum NormSpec {
    /// The implicit norm with `1/2`-weighted admissible partitions.
    Tsirelson,
    /// The implicit norm with an extra `q * max-piece` bonus, `0 < q < 1/2`.
    TsirelsonQ(Rational),
    /// Truncated norm `|x|_n`: one admissible layer at level `n`.
    TruncJ(u64, Rational),
    /// Truncated norm `||x||_n`: as `|x|_n` plus the `q` bonus.
    TruncQ(u64, Rational),
    /// `sup_n |x|_n` (finitely many `n` matter).
    SupJ(Rational),
    /// `||x||_q + sup_n |x|_n`.
    Triple(Rational),
    /// Implicit norm with a `c`-weighted distinguished piece, `0 < c < 1`.
    N1(Rational),
    /// As `N1`, with the distinguished slot replaced by a `c`-weighted
    /// inner admissible family confined to the gap between its neighbors.
    N2(Rational),
    /// One admissible layer over `N2(., 1/2)` values, with sup-norm base.
    N3,
    /// Implicit norm allowing `3n` pieces at arity `n`.
    N4,
    /// `max_i (|a_i| + 1/2 * sum of the |a_j| after it)`.
    Spreading,
    /// Largest pairwise difference, with one implicit trailing zero.
    MaxDiff,
    /// Sup-norm plus `l_1`-norm.
    C0PlusL1,
    /// Sum of absolute coordinates.
    L1,
    /// Largest absolute coordinate.
    Sup,
}

/// Evaluates `spec` on `x`, exactly.
pub fn evaluate(spec: &NormSpec, x: &RationalVector) -> Result<Rational> {
    let coeffs = || -> Vec<Rational> { x.entries().iter().map(|(_, v)| v.clone()).collect() };
    match spec {
        NormSpec::Tsirelson => Ok(implicit::tsirelson_norm(x)),
        NormSpec::TsirelsonQ(q) => implicit::tsirelson_q_norm(x, q),
        NormSpec::TruncJ(n, q) => Ok(implicit::truncated_norms(x, *n, q, TruncatedInner::QNorm)?.0),
        NormSpec::TruncQ(n, q) => Ok(implicit::truncated_norms(x, *n, q, TruncatedInner::QNorm)?.1),
        NormSpec::SupJ(q) => implicit::sup_j_norm(x, q),
        NormSpec::Triple(q) => implicit::triple_norm(x, q),
        NormSpec::N1(c) => implicit::n1_norm(x, c),
        NormSpec::N2(c) => implicit::n2_norm(x, c),
        NormSpec::N3 => Ok(implicit::n3_norm(x)),
        NormSpec::N4 => Ok(implicit::n4_norm(x)),
        NormSpec::Spreading => Ok(spreading_norm(&coeffs())),
        NormSpec::MaxDiff => Ok(max_diff_norm(&coeffs())),
        NormSpec::C0PlusL1 => Ok(c0_plus_l1_norm(&coeffs())),
        NormSpec::L1 => Ok(x.l1()),
        NormSpec::Sup => Ok(x.sup_abs()),
    }
}

/// Evaluates `spec` on a bare coefficient list.
///
/// Only the specs whose value depends on the coefficient sequence alone
/// (not on where the coefficients sit) qualify; the implicit norms are
/// rejected because their value changes with the support positions.
pub fn sequence_norm(spec: &NormSpec, coeffs: &[Rational]) -> Result<Rational> {
    match spec {
        NormSpec::Spreading => Ok(spreading_norm(coeffs)),
        NormSpec::MaxDiff => Ok(max_diff_norm(coeffs)),
        NormSpec::C0PlusL1 => Ok(c0_plus_l1_norm(coeffs)),
        NormSpec::L1 => Ok(l1_norm(coeffs)),
        NormSpec::Sup => Ok(sup_norm(coeffs)),
        _ => Err(Error::InvalidParameter(
            "this operation requires a norm that ignores support positions",
        )),
    }
}

/// `max_i (|a_i| + 1/2 * sum_{j>i} |a_j|)`; zero on the empty list.
///
/// Depends only on the sequence of absolute values, not on where the
/// coefficients sit, so it is invariant under inserting zeros (a spreading
/// norm).
pub fn spreading_norm(coeffs: &[Rational]) -> Rational {
    let half = frac(1, 2);
    let mut tail = Rational::zero();
    let mut best = Rational::zero();
    for a in coeffs.iter().rev() {
        let cand = a.abs() + &half * &tail;
        if cand > best {
            best = cand;
        }
        tail += a.abs();
    }
    best
}

/// Largest pairwise difference `|a_i - a_j|` over `i < j`, with one
/// implicit trailing zero coordinate joining the list (so that constant
/// vectors do not collapse to zero). Equals the range of the values with
/// zero adjoined.
pub fn max_diff_norm(coeffs: &[Rational]) -> Rational {
    let mut lo = Rational::zero();
    let mut hi = Rational::zero();
    for a in coeffs {
        if *a < lo {
            lo = a.clone();
        }
        if *a > hi {
            hi = a.clone();
        }
    }
    hi - lo
}

/// Sup-norm plus `l_1`-norm of the coefficient list.
pub fn c0_plus_l1_norm(coeffs: &[Rational]) -> Rational {
    sup_norm(coeffs) + l1_norm(coeffs)
}

/// Sum of absolute values.
pub fn l1_norm(coeffs: &[Rational]) -> Rational {
    coeffs.iter().fold(Rational::zero(), |acc, a| acc + a.abs())
}

/// Largest absolute value; zero on the empty list.
pub fn sup_norm(coeffs: &[Rational]) -> Rational {
    coeffs
        .iter()
        .map(|a| a.abs())
        .max()
        .unwrap_or_else(Rational::zero)
}

/// The largest `l_1` mass on the unit sphere of the spreading norm in `n`
/// coordinates: returns `2 - 2^(1-n)` together with the witness
/// `a_i = 2^(i-n)` (ascending, so the largest coefficient is last), whose
/// spreading norm is exactly 1.
///
/// Maximality: at an optimum all `n` constraints
/// `|a_i| + 1/2 * sum_{j>i} |a_j| <= 1` bind, and back-substitution from
/// the last coordinate forces exactly the witness.
pub fn spreading_l1_constant(n: u64) -> (Rational, Vec<Rational>) {
    assert!(n >= 1, "need at least one coordinate");
    let value = int(2) - pow(&frac(1, 2), (n - 1) as u32);
    let witness: Vec<Rational> = (1..=n).map(|i| pow(&frac(1, 2), (n - i) as u32)).collect();
    (value, witness)
}

/// True iff `(1/2 + q)^2 < 1/2`, the parameter regime in which the
/// equivalence-chain constants are valid with `c = 1/2 + q`.
pub fn chain_regime(q: &Rational) -> bool {
    let c = frac(1, 2) + q;
    &c * &c < frac(1, 2)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rat::q;
    use alloc::vec;

    fn vecr(vals: &[(u64, Rational)]) -> RationalVector {
        RationalVector::from_entries(vals.to_vec()).unwrap()
    }

    #[test]
    fn spreading_norm_examples() {
        assert_eq!(spreading_norm(&[int(1)]), int(1));
        assert_eq!(spreading_norm(&[q(2, 3), q(2, 3)]), int(1));
        assert_eq!(spreading_norm(&[q(4, 9), q(4, 9), q(2, 3)]), int(1));
        assert_eq!(spreading_norm(&[]), int(0));
        // sign-invariance
        assert_eq!(spreading_norm(&[q(-2, 3), q(2, 3)]), int(1));
    }

    #[test]
    fn spreading_norm_ignores_inserted_zeros() {
        let with_zeros = [q(4, 9), int(0), q(4, 9), int(0), int(0), q(2, 3)];
        assert_eq!(spreading_norm(&with_zeros), int(1));
    }

    #[test]
    fn max_diff_examples() {
        assert_eq!(max_diff_norm(&[int(1)]), int(1));
        assert_eq!(max_diff_norm(&[int(1), int(1)]), int(1));
        assert_eq!(max_diff_norm(&[int(1), int(-1)]), int(2));
        assert_eq!(max_diff_norm(&[]), int(0));
    }

    #[test]
    fn c0_plus_l1_example() {
        assert_eq!(c0_plus_l1_norm(&[q(1, 2), q(1, 2)]), q(3, 2));
    }

    #[test]
    fn spreading_l1_constant_small_cases() {
        let (v1, w1) = spreading_l1_constant(1);
        assert_eq!(v1, int(1));
        assert_eq!(w1, vec![int(1)]);
        let (v2, w2) = spreading_l1_constant(2);
        assert_eq!(v2, q(3, 2));
        assert_eq!(w2, vec![q(1, 2), int(1)]);
        for n in 1..=12 {
            let (value, witness) = spreading_l1_constant(n);
            assert_eq!(spreading_norm(&witness), int(1), "n = {n}");
            assert_eq!(l1_norm(&witness), value, "n = {n}");
        }
    }

    #[test]
    fn chain_regime_boundaries() {
        assert!(chain_regime(&q(1, 5))); // (7/10)^2 = 49/100 < 1/2
        assert!(chain_regime(&q(1, 10)));
        assert!(!chain_regime(&q(2, 5))); // (9/10)^2 = 81/100
    }

    #[test]
    fn evaluate_dispatches_direct_formulas() {
        let x = vecr(&[(2, q(1, 2)), (5, q(-1, 2))]);
        assert_eq!(evaluate(&NormSpec::L1, &x).unwrap(), int(1));
        assert_eq!(evaluate(&NormSpec::Sup, &x).unwrap(), q(1, 2));
        assert_eq!(evaluate(&NormSpec::C0PlusL1, &x).unwrap(), q(3, 2));
        assert_eq!(evaluate(&NormSpec::MaxDiff, &x).unwrap(), int(1));
        assert_eq!(evaluate(&NormSpec::Spreading, &x).unwrap(), q(3, 4));
    }
}
