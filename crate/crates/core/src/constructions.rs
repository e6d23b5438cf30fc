//! Block sequences and desk-scale experiments on top of the norm engines.
//!
//! This module houses the concrete objects the rest of the crate reasons
//! about: normalized `l_1^m`-average blocks and block bases built from
//! them, the geometric witness family of spreading-norm-one vectors,
//! equality and distance in distribution for norms that ignore support
//! positions, an exhaustive extraction of near-`l_1` cores from such
//! families, finite-shift estimation of spreading-model values, and the
//! two-parameter mixing curve interpolating between sup-type and sum-type
//! behaviour.

use alloc::vec;
use alloc::vec::Vec;
use core::cmp::max;
use num_traits::{Signed, Zero};

use crate::error::{Error, Result};
use crate::norms::{self, implicit, NormSpec};
use crate::rat::{int, pow, q, Rational};
use crate::stream::IndexStream;
use crate::vector::RationalVector;

/// Cap on the combined nonzero length accepted by the alignment search.
pub const ALIGNMENT_SIZE_CAP: usize = 14;

/// Cap on the coefficient-list length accepted by the core extraction.
pub const EXTRACTION_LENGTH_CAP: usize = 10;

/// Default cap on the total support of a spreading-model estimate.
pub const DEFAULT_SUPPORT_BUDGET: u64 = 60;

/// A sequence of finitely supported vectors with strictly increasing
/// supports, each of implicit norm exactly one.
///
/// Blocks are laid out left to right: block `i` starts right after block
/// `i - 1` ends, but never before position `width(i)`, so that the
/// family of its own singletons is always admissible.
#[derive(Clone, Debug)]
pub enum BlockBasisSpec {
    /// Block `i` averages `m_i` consecutive unit vectors, where `m_i` is
    /// the `i`-th element of the stream.
    L1mAverages {
        /// Stream of block widths.
        m_stream: IndexStream,
    },
    /// Every block averages the same number of unit vectors.
    ConstantBlocks {
        /// The common width; must be positive.
        length: u64,
    },
}

impl BlockBasisSpec {
    /// Width of block `i` (`i >= 1`), before validation.
    fn width(&self, i: u64) -> u64 {
        match self {
            BlockBasisSpec::L1mAverages { m_stream } => m_stream.element(i as usize),
            BlockBasisSpec::ConstantBlocks { length } => *length,
        }
    }

    /// First support position of block `i` under the left-to-right layout.
    fn start(&self, i: u64) -> u64 {
        let mut prev_end = 0;
        let mut start = 1;
        for k in 1..=i {
            let m = self.width(k);
            start = max(prev_end + 1, m);
            prev_end = start + m - 1;
        }
        start
    }

    /// The `i`-th block (`i >= 1`): a normalized `l_1^m` average.
    pub fn block(&self, i: u64) -> Result<RationalVector> {
        if i == 0 {
            return Err(Error::InvalidParameter("block numbering starts at one"));
        }
        let m = self.width(i);
        if m == 0 {
            return Err(Error::InvalidParameter("block widths must be positive"));
        }
        l1m_average_block(m, self.start(i))
    }
}

/// The average of `m` consecutive unit vectors starting at `start`,
/// scaled to implicit norm exactly one.
///
/// For `start >= m` the sum of the `m` unit vectors has implicit norm
/// `max(1, m/2)`: no admissible family can beat half the `l_1` mass, and
/// the family of the `m` singletons (admissible because `m <= start`)
/// attains it. The returned vector is that sum divided by this norm, so
/// its coefficients are `2/m` each (or `1` when `m = 1`) and its `l_1`
/// mass is `2` for every `m >= 2`.
pub fn l1m_average_block(m: u64, start: u64) -> Result<RationalVector> {
    if m == 0 {
        return Err(Error::InvalidParameter(
            "an average needs at least one unit vector",
        ));
    }
    if start < m {
        return Err(Error::InvalidParameter(
            "the block must start no earlier than its own width",
        ));
    }
    let scale = if m == 1 {
        int(1)
    } else {
        Rational::new(int(2).numer().clone(), int(m as i64).numer().clone())
    };
    RationalVector::from_entries((0..m).map(|j| (start + j, scale.clone())).collect())
}

/// The `n`-th member of the geometric witness family (`n >= 1`): the
/// coefficient list `((2/3)^n, (2/3)^n, (2/3)^(n-1), ..., 2/3)` of length
/// `n + 1`.
///
/// Every member has spreading norm exactly one, and `l_1` mass exactly
/// `2 - (2/3)^n`, so the family walks toward the unit sphere's `l_1`-mass
/// supremum of `2` while staying normalized.
pub fn witness_vector(n: u64) -> Result<Vec<Rational>> {
    if n == 0 {
        return Err(Error::InvalidParameter("the witness family starts at one"));
    }
    let e = u32::try_from(n).map_err(|_| Error::InvalidParameter("witness index too large"))?;
    let r = q(2, 3);
    let mut out = Vec::with_capacity(n as usize + 1);
    out.push(pow(&r, e));
    for k in (1..=e).rev() {
        out.push(pow(&r, k));
    }
    Ok(out)
}

/// Whether two coefficient lists are equal in distribution: their
/// nonzero coefficients, read left to right, form identical tuples.
pub fn equals_in_distribution(x: &[Rational], y: &[Rational]) -> bool {
    let mut xs = x.iter().filter(|v| !v.is_zero());
    let mut ys = y.iter().filter(|v| !v.is_zero());
    loop {
        match (xs.next(), ys.next()) {
            (None, None) => return true,
            (Some(a), Some(b)) if a == b => {}
            _ => return false,
        }
    }
}

/// One merged placement of two coefficient lists, with the norm of the
/// difference it realizes.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AlignmentResult {
    /// Merged slots left to right. Each slot consumes the next nonzero
    /// coefficient of `x`, of `y`, or of both; the recorded indices point
    /// into the respective lists of nonzero coefficients.
    pub placement: Vec<(Option<usize>, Option<usize>)>,
    /// Norm of the aligned difference at this placement.
    pub achieved: Rational,
    /// Whether the enumeration was exhaustive (always true at the sizes
    /// the cap admits).
    pub optimal: bool,
}

/// Distance in distribution between two coefficient lists under a norm
/// that ignores support positions.
///
/// Zero coefficients are dropped first (they are not part of either
/// distribution), then every monotone merge of the two lists is
/// enumerated and the minimum norm of the merged difference is returned
/// together with the first placement attaining it. The enumeration order
/// is fixed — at each step: advance `x` alone, both, then `y` alone — so
/// the result is deterministic.
pub fn distance_in_distribution(
    x: &[Rational],
    y: &[Rational],
    spec: &NormSpec,
) -> Result<AlignmentResult> {
    let xs: Vec<&Rational> = x.iter().filter(|v| !v.is_zero()).collect();
    let ys: Vec<&Rational> = y.iter().filter(|v| !v.is_zero()).collect();
    let size = xs.len() + ys.len();
    if size > ALIGNMENT_SIZE_CAP {
        return Err(Error::SizeCap {
            size,
            cap: ALIGNMENT_SIZE_CAP,
        });
    }
    let mut best = None;
    let mut slots = Vec::new();
    let mut diff = Vec::new();
    align_search(&xs, &ys, spec, 0, 0, &mut slots, &mut diff, &mut best)?;
    Ok(best.expect("the all-separate merge is always enumerated"))
}

#[allow(clippy::too_many_arguments)]
fn align_search(
    xs: &[&Rational],
    ys: &[&Rational],
    spec: &NormSpec,
    i: usize,
    j: usize,
    slots: &mut Vec<(Option<usize>, Option<usize>)>,
    diff: &mut Vec<Rational>,
    best: &mut Option<AlignmentResult>,
) -> Result<()> {
    if i == xs.len() && j == ys.len() {
        let achieved = norms::sequence_norm(spec, diff)?;
        if best.as_ref().is_none_or(|b| achieved < b.achieved) {
            *best = Some(AlignmentResult {
                placement: slots.clone(),
                achieved,
                optimal: true,
            });
        }
        return Ok(());
    }
    if i < xs.len() {
        slots.push((Some(i), None));
        diff.push(xs[i].clone());
        align_search(xs, ys, spec, i + 1, j, slots, diff, best)?;
        slots.pop();
        diff.pop();
    }
    if i < xs.len() && j < ys.len() {
        slots.push((Some(i), Some(j)));
        diff.push(xs[i] - ys[j]);
        align_search(xs, ys, spec, i + 1, j + 1, slots, diff, best)?;
        slots.pop();
        diff.pop();
    }
    if j < ys.len() {
        slots.push((None, Some(j)));
        diff.push(-ys[j].clone());
        align_search(xs, ys, spec, i, j + 1, slots, diff, best)?;
        slots.pop();
        diff.pop();
    }
    Ok(())
}

/// Tail-by-tail Cauchy report for a finite list of coefficient vectors.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CauchyReport {
    /// `per_n0[k]` is the largest pairwise distance among the members
    /// with (1-based) index `> k`; entry `k` vouches for the tail
    /// starting at `n_0 = k + 1`. Tails with fewer than two members
    /// certify nothing, so the list has `len - 1` entries.
    pub per_n0: Vec<Rational>,
    /// Least 1-based `n_0` whose tail stays within the bound, if any.
    pub least_n0: Option<usize>,
}

/// Reports, for each candidate cut `n_0`, how far apart in distribution
/// the members beyond the cut can be, and the least cut meeting `eps`.
pub fn cauchy_in_distribution_check(
    xs: &[Vec<Rational>],
    eps: &Rational,
    spec: &NormSpec,
) -> Result<CauchyReport> {
    let n = xs.len();
    if n < 2 {
        return Ok(CauchyReport {
            per_n0: Vec::new(),
            least_n0: None,
        });
    }
    // worst[a] = largest distance from member a to any later member
    let mut worst = vec![Rational::zero(); n - 1];
    for (a, worst_a) in worst.iter_mut().enumerate() {
        for b in (a + 1)..n {
            let d = distance_in_distribution(&xs[a], &xs[b], spec)?.achieved;
            if d > *worst_a {
                *worst_a = d;
            }
        }
    }
    let mut per_n0 = vec![Rational::zero(); n - 1];
    let mut running = Rational::zero();
    for k in (0..n - 1).rev() {
        if worst[k] > running {
            running = worst[k].clone();
        }
        per_n0[k] = running.clone();
    }
    let least_n0 = per_n0.iter().position(|v| v <= eps).map(|k| k + 1);
    Ok(CauchyReport { per_n0, least_n0 })
}

/// Outcome of the near-`l_1` core extraction.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum ExtractOutcome {
    /// Cores were found for every member from the `n0`-th on.
    Success {
        /// 1-based index of the member all later cores are compared to.
        n0: usize,
        /// For each member from `n0` on (in order), the 0-based positions
        /// kept as its core.
        subsets: Vec<Vec<usize>>,
    },
    /// No starting index admits cores meeting every condition.
    Failure,
}

/// Searches a list of spreading-norm-one coefficient vectors for a tail
/// whose members all carry a common near-`l_1` core.
///
/// For each candidate start `n_0` (ascending) and each member `x_n` with
/// `n >= n_0`, the search looks for a set `F` of positions such that:
/// `|F| <= |x_{n_0}|`; the kept mass `sum_{i in F} |x_n(i)|` exceeds
/// `k_mass - eps`; the discarded mass is below `eps`; and the distance in
/// distribution (spreading norm) from the restriction to `x_{n_0}` is
/// below `eps`. Subsets are explored largest-coefficient-first with mass
/// pruning, and the first success is kept, so the outcome is
/// deterministic. The first `n_0` for which every member succeeds wins.
pub fn extract_l1_core(
    xs: &[Vec<Rational>],
    eps: &Rational,
    k_mass: &Rational,
) -> Result<ExtractOutcome> {
    let one = int(1);
    for x in xs {
        if x.len() > EXTRACTION_LENGTH_CAP {
            return Err(Error::SizeCap {
                size: x.len(),
                cap: EXTRACTION_LENGTH_CAP,
            });
        }
        if norms::spreading_norm(x) != one {
            return Err(Error::InvalidParameter(
                "every input must have spreading norm one",
            ));
        }
    }
    for n0 in 1..=xs.len() {
        let target = &xs[n0 - 1];
        let mut subsets = Vec::new();
        let mut all_found = true;
        for x in &xs[n0 - 1..] {
            match core_subset(x, target, target.len(), eps, k_mass)? {
                Some(f) => subsets.push(f),
                None => {
                    all_found = false;
                    break;
                }
            }
        }
        if all_found {
            return Ok(ExtractOutcome::Success { n0, subsets });
        }
    }
    Ok(ExtractOutcome::Failure)
}

/// First position set meeting all four core conditions, if any.
fn core_subset(
    coeffs: &[Rational],
    target: &[Rational],
    cap_size: usize,
    eps: &Rational,
    k_mass: &Rational,
) -> Result<Option<Vec<usize>>> {
    let mut order: Vec<usize> = (0..coeffs.len()).collect();
    order.sort_by(|&a, &b| coeffs[b].abs().cmp(&coeffs[a].abs()).then(a.cmp(&b)));
    // tails[i] = total mass of order[i..], for pruning
    let mut tails = vec![Rational::zero(); order.len() + 1];
    for i in (0..order.len()).rev() {
        tails[i] = &tails[i + 1] + coeffs[order[i]].abs();
    }
    let total = tails[0].clone();
    let threshold = k_mass - eps;

    struct Search<'a> {
        coeffs: &'a [Rational],
        target: &'a [Rational],
        order: &'a [usize],
        tails: &'a [Rational],
        total: &'a Rational,
        threshold: &'a Rational,
        eps: &'a Rational,
        cap_size: usize,
    }

    impl Search<'_> {
        /// Checks the mass, discard and distance conditions for `chosen`.
        fn accepts(&self, chosen: &[usize], mass: &Rational) -> Result<bool> {
            if !(mass > self.threshold) {
                return Ok(false);
            }
            if !(&(self.total - mass) < self.eps) {
                return Ok(false);
            }
            let mut kept: Vec<usize> = chosen.to_vec();
            kept.sort_unstable();
            let restricted: Vec<Rational> = kept.iter().map(|&i| self.coeffs[i].clone()).collect();
            let d =
                distance_in_distribution(&restricted, self.target, &NormSpec::Spreading)?.achieved;
            Ok(&d < self.eps)
        }

        fn dfs(
            &self,
            idx: usize,
            chosen: &mut Vec<usize>,
            mass: &Rational,
        ) -> Result<Option<Vec<usize>>> {
            if idx == self.order.len() || chosen.len() == self.cap_size {
                return Ok(None);
            }
            // even taking the heaviest admissible remainder cannot reach
            // the mass threshold: dead branch
            let room = self.cap_size - chosen.len();
            let reach = &self.tails[idx] - &self.tails[(idx + room).min(self.order.len())];
            if !(&(mass + reach) > self.threshold) {
                return Ok(None);
            }
            let pos = self.order[idx];
            chosen.push(pos);
            let with = mass + self.coeffs[pos].abs();
            if self.accepts(chosen, &with)? {
                let mut found = chosen.clone();
                found.sort_unstable();
                return Ok(Some(found));
            }
            if let Some(found) = self.dfs(idx + 1, chosen, &with)? {
                return Ok(Some(found));
            }
            chosen.pop();
            self.dfs(idx + 1, chosen, mass)
        }
    }

    let search = Search {
        coeffs,
        target,
        order: &order,
        tails: &tails,
        total: &total,
        threshold: &threshold,
        eps,
        cap_size,
    };
    // the empty set can only qualify when the mass threshold is vacuous
    if search.accepts(&[], &Rational::zero())? {
        return Ok(Some(Vec::new()));
    }
    search.dfs(0, &mut Vec::new(), &Rational::zero())
}

/// Exact implicit norm of a shifted block combination: the finite-shift
/// approximant of the spreading-model value of the coefficient list.
///
/// The combination is `sum_i coeffs[i] * block(shift + 1 + i)`; the shift
/// must be at least the number of coefficients so the first block used
/// sits beyond the combination's length, and the blocks' total width must
/// fit the support budget.
pub fn estimate_spreading_model(
    basis: &BlockBasisSpec,
    coeffs: &[Rational],
    shift: u64,
    support_budget: u64,
) -> Result<Rational> {
    if coeffs.is_empty() {
        return Err(Error::InvalidParameter(
            "the combination needs at least one coefficient",
        ));
    }
    if shift < coeffs.len() as u64 {
        return Err(Error::InvalidParameter(
            "the shift must be at least the number of coefficients",
        ));
    }
    let mut needed: u64 = 0;
    for i in 1..=coeffs.len() as u64 {
        needed += self_width_checked(basis, shift + i)?;
        if needed > support_budget {
            return Err(Error::SupportBudget {
                needed: needed as usize,
                budget: support_budget as usize,
            });
        }
    }
    let mut x = RationalVector::zero();
    for (i, c) in coeffs.iter().enumerate() {
        let block = basis.block(shift + 1 + i as u64)?;
        x = x.add(&block.scale(c));
    }
    Ok(implicit::tsirelson_norm(&x))
}

fn self_width_checked(basis: &BlockBasisSpec, i: u64) -> Result<u64> {
    let m = basis.width(i);
    if m == 0 {
        return Err(Error::InvalidParameter("block widths must be positive"));
    }
    Ok(m)
}

/// One sample of the mixing curve.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MixingCurvePoint {
    /// Position along the curve, in `[0, 1]`.
    pub t: Rational,
    /// Sup-part weight after unit normalization.
    pub alpha: Rational,
    /// Sum-part weight after unit normalization.
    pub beta: Rational,
    /// Model norm of two unit coefficients, `max(alpha, 2 beta)`.
    pub r: Rational,
}

/// The two-parameter model norm `max(alpha sup_i |a_i|, beta sum_i |a_i|)`.
pub fn mixing_model_norm(coeffs: &[Rational], alpha: &Rational, beta: &Rational) -> Rational {
    let mut sup = Rational::zero();
    let mut sum = Rational::zero();
    for c in coeffs {
        let a = c.abs();
        if a > sup {
            sup = a.clone();
        }
        sum += a;
    }
    max(alpha * sup, beta * sum)
}

/// `r(t)`: the two-unit-coefficient norm of the `(1 - t, t)` mix after
/// unit normalization, i.e. `max(1 - t, 2t) / max(1 - t, t)`.
pub fn mixing_r(t: &Rational) -> Result<Rational> {
    if t < &Rational::zero() || t > &int(1) {
        return Err(Error::InvalidParameter(
            "the curve parameter lives in [0, 1]",
        ));
    }
    let alpha = int(1) - t;
    let beta = t.clone();
    Ok(max(alpha.clone(), int(2) * &beta) / max(alpha, beta))
}

/// Samples the mixing curve at `samples >= 2` evenly spaced parameters.
///
/// Each point carries the normalized weights, chosen so a single unit
/// coefficient has model norm exactly one, and the resulting two-unit
/// norm `r`. The curve starts at the pure sup model (`r = 1`), ends at
/// the pure sum model (`r = 2`) and is nondecreasing in between.
pub fn mixing_curve(samples: u64) -> Result<Vec<MixingCurvePoint>> {
    if samples < 2 {
        return Err(Error::InvalidParameter(
            "the curve needs at least two samples",
        ));
    }
    let mut out = Vec::with_capacity(samples as usize);
    for k in 0..samples {
        let t = Rational::new(
            int(k as i64).numer().clone(),
            int(samples as i64 - 1).numer().clone(),
        );
        let raw_alpha = int(1) - &t;
        let raw_beta = t.clone();
        let unit = max(raw_alpha.clone(), raw_beta.clone());
        let alpha = raw_alpha / &unit;
        let beta = raw_beta / &unit;
        let r = max(alpha.clone(), int(2) * &beta);
        out.push(MixingCurvePoint { t, alpha, beta, r });
    }
    Ok(out)
}

/// Finds the exact `t` with `mixing_r(t) = target` for a target strictly
/// between one and two.
///
/// Bisection first: midpoints with `r = 1` move the left end, midpoints
/// with `r = 2` move the right end. The bracket always contains the
/// strictly increasing piece of the curve, so within a few halvings a
/// midpoint lands on it; there the defining equation is linear and the
/// solution `t = target / (2 + target)` is exact.
pub fn solve_mixing_target(target: &Rational) -> Result<Rational> {
    if target <= &int(1) || target >= &int(2) {
        return Err(Error::InvalidParameter(
            "the target must lie strictly between one and two",
        ));
    }
    let one = int(1);
    let two = int(2);
    let mut lo = Rational::zero();
    let mut hi = one.clone();
    loop {
        let mid = (&lo + &hi) / &two;
        let r = mixing_r(&mid)?;
        if r == one {
            lo = mid;
        } else if r == two {
            hi = mid;
        } else {
            let t = target / (&two + target);
            debug_assert_eq!(mixing_r(&t)?, *target);
            return Ok(t);
        }
    }
}
