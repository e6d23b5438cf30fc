//! Brute-force re-evaluation of the implicit norms.
//!
//! The engines in [`super::implicit`] restrict the admissible families to
//! consecutive interval cuts of the support. This oracle does not: it
//! enumerates *all* families of disjoint ordered subsets of the support
//! (ordered means each piece lies entirely below the next, so a family is
//! a choice of covered subset plus a division of it into consecutive runs),
//! recursing on subsets instead of intervals. Agreement between the two is
//! the evidence that the interval restriction loses nothing.
//!
//! Supports at most [`ORACLE_SUPPORT_CAP`] support points; the enumeration
//! is exponential by design.

use alloc::collections::BTreeMap;
use alloc::vec::Vec;
use num_traits::{Signed, Zero};

use crate::error::{Error, Result};
use crate::norms::implicit::{validate_c, validate_q};
use crate::norms::NormSpec;
use crate::rat::{q as frac, Rational};
use crate::vector::RationalVector;

/// Hard cap on the support size accepted by [`oracle_norm`].
pub const ORACLE_SUPPORT_CAP: usize = 8;

/// Evaluates an implicit-norm `spec` on `x` by exhaustive family
/// enumeration. Direct-formula specs are rejected: they have no family
/// structure to cross-check.
pub fn oracle_norm(spec: &NormSpec, x: &RationalVector) -> Result<Rational> {
    let k = x.entries().len();
    if k > ORACLE_SUPPORT_CAP {
        return Err(Error::SizeCap {
            size: k,
            cap: ORACLE_SUPPORT_CAP,
        });
    }
    let mut ctx = OracleCtx::new(x);
    let full = ctx.full_mask();
    match spec {
        NormSpec::Tsirelson => Ok(ctx.cap_norm(full, 1)),
        NormSpec::N4 => Ok(ctx.cap_norm(full, 3)),
        NormSpec::TsirelsonQ(q) => {
            validate_q(q)?;
            ctx.q = q.clone();
            Ok(ctx.tq_norm(full))
        }
        NormSpec::N1(c) => {
            validate_c(c)?;
            ctx.c = c.clone();
            Ok(ctx.n1_norm(full))
        }
        NormSpec::N2(c) => {
            validate_c(c)?;
            ctx.c = c.clone();
            Ok(ctx.n2_norm(full))
        }
        NormSpec::N3 => Ok(ctx.n3_norm(full)),
        NormSpec::TruncJ(n, q) => {
            validate_q(q)?;
            if *n == 0 {
                return Err(Error::InvalidParameter("truncation level must be >= 1"));
            }
            ctx.q = q.clone();
            Ok(ctx.truncated(full, *n).0)
        }
        NormSpec::TruncQ(n, q) => {
            validate_q(q)?;
            if *n == 0 {
                return Err(Error::InvalidParameter("truncation level must be >= 1"));
            }
            ctx.q = q.clone();
            Ok(ctx.truncated(full, *n).1)
        }
        NormSpec::SupJ(q) => {
            validate_q(q)?;
            ctx.q = q.clone();
            Ok(ctx.sup_j(full))
        }
        NormSpec::Triple(q) => {
            validate_q(q)?;
            ctx.q = q.clone();
            Ok(ctx.tq_norm(full) + ctx.sup_j(full))
        }
        _ => Err(Error::InvalidParameter(
            "the oracle only evaluates the implicit norms",
        )),
    }
}

/// One oracle evaluation: support arrays plus per-variant memo tables
/// keyed by position bitmask.
struct OracleCtx {
    idx: Vec<u64>,
    vals: Vec<Rational>,
    q: Rational,
    c: Rational,
    memo_t: BTreeMap<u16, Rational>,
    memo_n4: BTreeMap<u16, Rational>,
    memo_tq: BTreeMap<u16, Rational>,
    memo_n1: BTreeMap<u16, Rational>,
    memo_n2: BTreeMap<u16, Rational>,
    memo_e2: BTreeMap<u16, Rational>,
    memo_n2h: BTreeMap<u16, Rational>,
    memo_e2h: BTreeMap<u16, Rational>,
}

impl OracleCtx {
    fn new(x: &RationalVector) -> Self {
        OracleCtx {
            idx: x.entries().iter().map(|(i, _)| *i).collect(),
            vals: x.entries().iter().map(|(_, v)| v.abs()).collect(),
            q: Rational::zero(),
            c: Rational::zero(),
            memo_t: BTreeMap::new(),
            memo_n4: BTreeMap::new(),
            memo_tq: BTreeMap::new(),
            memo_n1: BTreeMap::new(),
            memo_n2: BTreeMap::new(),
            memo_e2: BTreeMap::new(),
            memo_n2h: BTreeMap::new(),
            memo_e2h: BTreeMap::new(),
        }
    }

    fn full_mask(&self) -> u16 {
        if self.idx.is_empty() {
            0
        } else {
            (1u16 << self.idx.len()) - 1
        }
    }

    fn max_abs(&self, mask: u16) -> Rational {
        let mut best = Rational::zero();
        for p in 0..self.idx.len() {
            if mask & (1 << p) != 0 && self.vals[p] > best {
                best = self.vals[p].clone();
            }
        }
        best
    }

    /// Index at the lowest support position of a nonempty mask.
    fn min_index(&self, mask: u16) -> u64 {
        self.idx[mask.trailing_zeros() as usize]
    }

    /// All families of disjoint ordered nonempty subsets with union inside
    /// `mask`: every choice of a covered submask and a division of its
    /// sorted positions into consecutive runs.
    fn families(&self, mask: u16) -> Vec<Vec<u16>> {
        let mut out = Vec::new();
        let mut u = mask;
        loop {
            if u != 0 {
                let positions: Vec<u32> = (0..16).filter(|b| u & (1 << b) != 0).collect();
                let cuts = positions.len() - 1;
                for cm in 0u32..(1 << cuts) {
                    let mut pieces: Vec<u16> = Vec::with_capacity(cuts + 1);
                    let mut cur: u16 = 1 << positions[0];
                    for (i, &b) in positions.iter().enumerate().skip(1) {
                        if cm & (1 << (i - 1)) != 0 {
                            pieces.push(cur);
                            cur = 0;
                        }
                        cur |= 1 << b;
                    }
                    pieces.push(cur);
                    out.push(pieces);
                }
            }
            if u == 0 {
                break;
            }
            u = (u - 1) & mask;
        }
        out
    }

    /// Positions of `mask` strictly between the end of `left` and the
    /// start of `right` (either bound absent at the family's ends).
    fn gap_mask(&self, mask: u16, left: Option<u16>, right: Option<u16>) -> u16 {
        let lo = left.map(|m| 15 - m.leading_zeros() as usize);
        let hi = right.map(|m| m.trailing_zeros() as usize);
        let mut g = 0u16;
        for p in 0..self.idx.len() {
            if mask & (1 << p) == 0 {
                continue;
            }
            if let Some(l) = lo {
                if p <= l {
                    continue;
                }
            }
            if let Some(h) = hi {
                if p >= h {
                    continue;
                }
            }
            g |= 1 << p;
        }
        g
    }

    /// The base norm (`factor` 1) and the `N4` variant (`factor` 3):
    /// `1/2 * sum` over families with at most `factor * min` pieces.
    fn cap_norm(&mut self, mask: u16, factor: u64) -> Rational {
        if mask == 0 {
            return Rational::zero();
        }
        let memo_key = if factor == 1 { 0 } else { 1 };
        let hit = if memo_key == 0 {
            self.memo_t.get(&mask)
        } else {
            self.memo_n4.get(&mask)
        };
        if let Some(v) = hit {
            return v.clone();
        }
        let half = frac(1, 2);
        let mut best = self.max_abs(mask);
        for family in self.families(mask) {
            let j = family.len() as u64;
            if j > self.min_index(family[0]).saturating_mul(factor) {
                continue;
            }
            if family.len() == 1 && family[0] == mask {
                continue; // whole-support single piece
            }
            let mut sum = Rational::zero();
            for &piece in &family {
                sum += self.cap_norm(piece, factor);
            }
            let cand = &half * &sum;
            if cand > best {
                best = cand;
            }
        }
        if memo_key == 0 {
            self.memo_t.insert(mask, best.clone());
        } else {
            self.memo_n4.insert(mask, best.clone());
        }
        best
    }

    /// The q-perturbed norm: `1/2 * sum + q * max` over admissible
    /// families.
    fn tq_norm(&mut self, mask: u16) -> Rational {
        if mask == 0 {
            return Rational::zero();
        }
        if let Some(v) = self.memo_tq.get(&mask) {
            return v.clone();
        }
        let half = frac(1, 2);
        let mut best = self.max_abs(mask);
        for family in self.families(mask) {
            let j = family.len() as u64;
            if j > self.min_index(family[0]) {
                continue;
            }
            if family.len() == 1 && family[0] == mask {
                continue;
            }
            let mut sum = Rational::zero();
            let mut piece_max = Rational::zero();
            for &piece in &family {
                let v = self.tq_norm(piece);
                if v > piece_max {
                    piece_max = v.clone();
                }
                sum += v;
            }
            let cand = &half * &sum + &self.q * &piece_max;
            if cand > best {
                best = cand;
            }
        }
        self.memo_tq.insert(mask, best.clone());
        best
    }

    /// The `N1` variant: one `c`-weighted distinguished piece (arity = the
    /// piece count), or an idle distinguished slot (arity = count + 1).
    fn n1_norm(&mut self, mask: u16) -> Rational {
        if mask == 0 {
            return Rational::zero();
        }
        if let Some(v) = self.memo_n1.get(&mask) {
            return v.clone();
        }
        let half = frac(1, 2);
        let c = self.c.clone();
        let mut best = self.max_abs(mask);
        for family in self.families(mask) {
            if family.len() == 1 && family[0] == mask {
                continue;
            }
            let j = family.len() as u64;
            let min1 = self.min_index(family[0]);
            let piece_vals: Vec<Rational> = family.iter().map(|&p| self.n1_norm(p)).collect();
            let total: Rational = piece_vals.iter().fold(Rational::zero(), |acc, v| acc + v);
            if j <= min1 {
                for v in &piece_vals {
                    let cand = &half * (&total - v) + &c * v;
                    if cand > best {
                        best = cand;
                    }
                }
            }
            // the idle slot still occupies an arity position: j + 1 <= min1
            if j < min1 {
                let cand = &half * &total;
                if cand > best {
                    best = cand;
                }
            }
        }
        self.memo_n1.insert(mask, best.clone());
        best
    }

    /// The `N2` variant with parameter `half_c = false` (uses `self.c`) or
    /// the fixed `c = 1/2` copy used inside `N3` (`half_c = true`).
    fn n2_norm_with(&mut self, mask: u16, half_c: bool) -> Rational {
        if mask == 0 {
            return Rational::zero();
        }
        let hit = if half_c {
            self.memo_n2h.get(&mask)
        } else {
            self.memo_n2.get(&mask)
        };
        if let Some(v) = hit {
            return v.clone();
        }
        let half = frac(1, 2);
        let c = if half_c { frac(1, 2) } else { self.c.clone() };
        let mut best = self.max_abs(mask);

        // slot-only family: no outer piece constrains anything, the inner
        // family may sit anywhere; the single inner piece covering all of
        // `mask` is excluded (self-reference, dominated by c < 1)
        let e_full = self.inner_excluding_full(mask, half_c);
        let cand = &c * &e_full;
        if cand > best {
            best = cand;
        }

        for family in self.families(mask) {
            if family.len() == 1 && family[0] == mask {
                // the real slot on this piece is the slot-only candidate
                // above; the phantom-slot reading is dominated
                continue;
            }
            let j = family.len() as u64;
            let min1 = self.min_index(family[0]);
            let piece_vals: Vec<Rational> = family
                .iter()
                .map(|&p| self.n2_norm_with(p, half_c))
                .collect();
            let total: Rational = piece_vals.iter().fold(Rational::zero(), |acc, v| acc + v);
            // real slot on piece i0 (its own coordinates rejoin the gap)
            if j <= min1 {
                for i0 in 0..family.len() {
                    let left = if i0 > 0 { Some(family[i0 - 1]) } else { None };
                    let right = if i0 + 1 < family.len() {
                        Some(family[i0 + 1])
                    } else {
                        None
                    };
                    let g = self.gap_mask(mask, left, right);
                    let inner = self.inner_value(mask, g, half_c);
                    let cand = &half * (&total - &piece_vals[i0]) + &c * &inner;
                    if cand > best {
                        best = cand;
                    }
                }
            }
            // phantom slot between pieces (or at either end); it occupies
            // an arity position, so j + 1 <= min1
            if j < min1 {
                for s in 0..=family.len() {
                    let left = if s > 0 { Some(family[s - 1]) } else { None };
                    let right = if s < family.len() {
                        Some(family[s])
                    } else {
                        None
                    };
                    let g = self.gap_mask(mask, left, right);
                    let inner = self.inner_value(mask, g, half_c);
                    let cand = &half * &total + &c * &inner;
                    if cand > best {
                        best = cand;
                    }
                }
            }
        }
        if half_c {
            self.memo_n2h.insert(mask, best.clone());
        } else {
            self.memo_n2.insert(mask, best.clone());
        }
        best
    }

    fn n2_norm(&mut self, mask: u16) -> Rational {
        self.n2_norm_with(mask, false)
    }

    /// Best inner-family value on gap `g`, where the candidate consisting
    /// of one piece covering all of `g` is added back only when `g` is a
    /// proper submask of the vector being evaluated.
    fn inner_value(&mut self, eval_mask: u16, g: u16, half_c: bool) -> Rational {
        if g == 0 {
            return Rational::zero();
        }
        let excluded = self.inner_excluding_full(g, half_c);
        if g == eval_mask {
            excluded
        } else {
            let full_piece = self.n2_norm_with(g, half_c);
            if full_piece > excluded {
                full_piece
            } else {
                excluded
            }
        }
    }

    /// Best value `sum of piece norms` over inner families inside `g`
    /// (piece count at most the min of the first piece), excluding the
    /// single piece equal to `g` itself; zero for the empty family.
    fn inner_excluding_full(&mut self, g: u16, half_c: bool) -> Rational {
        if g == 0 {
            return Rational::zero();
        }
        let hit = if half_c {
            self.memo_e2h.get(&g)
        } else {
            self.memo_e2.get(&g)
        };
        if let Some(v) = hit {
            return v.clone();
        }
        let mut best = Rational::zero();
        for family in self.families(g) {
            let m = family.len() as u64;
            if m > self.min_index(family[0]) {
                continue;
            }
            if family.len() == 1 && family[0] == g {
                continue;
            }
            let mut sum = Rational::zero();
            for &piece in &family {
                sum += self.n2_norm_with(piece, half_c);
            }
            if sum > best {
                best = sum;
            }
        }
        if half_c {
            self.memo_e2h.insert(g, best.clone());
        } else {
            self.memo_e2.insert(g, best.clone());
        }
        best
    }

    /// The `N3` variant: one admissible layer of `N2(., 1/2)` piece values
    /// over the sup-norm base (single-piece layers allowed — they refer to
    /// `N2`, not `N3`).
    fn n3_norm(&mut self, mask: u16) -> Rational {
        if mask == 0 {
            return Rational::zero();
        }
        let half = frac(1, 2);
        let mut best = self.max_abs(mask);
        for family in self.families(mask) {
            let j = family.len() as u64;
            if j > self.min_index(family[0]) {
                continue;
            }
            let mut sum = Rational::zero();
            for &piece in &family {
                sum += self.n2_norm_with(piece, true);
            }
            let cand = &half * &sum;
            if cand > best {
                best = cand;
            }
        }
        best
    }

    /// Truncated norms at level `n`: one layer, at most `n` pieces, first
    /// piece starting at an index `>= n`, pieces carrying the q-norm.
    fn truncated(&mut self, mask: u16, n: u64) -> (Rational, Rational) {
        let half = frac(1, 2);
        let mut j_n = Rational::zero();
        let mut qn_n = Rational::zero();
        if mask == 0 {
            return (j_n, qn_n);
        }
        for family in self.families(mask) {
            let j = family.len() as u64;
            if j > n || self.min_index(family[0]) < n {
                continue;
            }
            let mut sum = Rational::zero();
            let mut piece_max = Rational::zero();
            for &piece in &family {
                let v = self.tq_norm(piece);
                if v > piece_max {
                    piece_max = v.clone();
                }
                sum += v;
            }
            let plain = &half * &sum;
            let bonus = &plain + &self.q * &piece_max;
            if plain > j_n {
                j_n = plain;
            }
            if bonus > qn_n {
                qn_n = bonus;
            }
        }
        (j_n, qn_n)
    }

    /// `sup_n |x|_n`: distinct support indices are the only levels where
    /// the feasible-family set changes, and within a window the value grows
    /// with `n`, so scanning the support indices suffices.
    fn sup_j(&mut self, mask: u16) -> Rational {
        let mut best = Rational::zero();
        let levels: Vec<u64> = self.idx.clone();
        for n in levels {
            let (jn, _) = self.truncated(mask, n);
            if jn > best {
                best = jn;
            }
        }
        best
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::norms::implicit;
    use crate::norms::TruncatedInner;
    use crate::rat::{int, q};
    use alloc::vec;

    fn vecr(vals: &[(u64, i64)]) -> RationalVector {
        RationalVector::from_entries(vals.iter().map(|&(i, n)| (i, int(n))).collect()).unwrap()
    }

    #[test]
    fn oracle_spot_values() {
        let x = vecr(&[(3, 1), (4, 1), (5, 1)]);
        assert_eq!(oracle_norm(&NormSpec::Tsirelson, &x).unwrap(), q(3, 2));
        let y = vecr(&[(2, 1), (3, 1)]);
        assert_eq!(
            oracle_norm(&NormSpec::TsirelsonQ(q(1, 5)), &y).unwrap(),
            q(6, 5)
        );
        assert_eq!(
            oracle_norm(&NormSpec::Triple(q(1, 5)), &y).unwrap(),
            q(11, 5)
        );
    }

    #[test]
    fn oracle_rejects_oversize_and_direct_formulas() {
        let big = RationalVector::from_entries((1..=9).map(|i| (i, int(1))).collect()).unwrap();
        assert!(matches!(
            oracle_norm(&NormSpec::Tsirelson, &big),
            Err(Error::SizeCap { size: 9, cap: 8 })
        ));
        let x = vecr(&[(2, 1)]);
        assert!(oracle_norm(&NormSpec::Spreading, &x).is_err());
        assert!(oracle_norm(&NormSpec::L1, &x).is_err());
    }

    /// The load-bearing cross-check at unit scale: the interval-cut
    /// engines agree with subset enumeration on every small vector.
    #[test]
    fn oracle_agrees_with_interval_engines_exhaustively() {
        let coeff_pool = [int(1), int(-1), q(1, 2)];
        let fifth = q(1, 5);
        let c = q(7, 10);
        // all nonzero sign/value patterns on supports inside {1..4}
        for mask in 1u32..(1 << 4) {
            let positions: Vec<u64> = (0..4)
                .filter(|b| mask & (1 << b) != 0)
                .map(|b| b + 1)
                .collect();
            let n = positions.len();
            let mut assignment = vec![0usize; n];
            loop {
                let entries: Vec<(u64, Rational)> = positions
                    .iter()
                    .zip(&assignment)
                    .map(|(&i, &a)| (i, coeff_pool[a].clone()))
                    .collect();
                let x = RationalVector::from_entries(entries).unwrap();

                assert_eq!(
                    implicit::tsirelson_norm(&x),
                    oracle_norm(&NormSpec::Tsirelson, &x).unwrap(),
                    "T, x = {x:?}"
                );
                assert_eq!(
                    implicit::tsirelson_q_norm(&x, &fifth).unwrap(),
                    oracle_norm(&NormSpec::TsirelsonQ(fifth.clone()), &x).unwrap(),
                    "Tq, x = {x:?}"
                );
                assert_eq!(
                    implicit::n1_norm(&x, &c).unwrap(),
                    oracle_norm(&NormSpec::N1(c.clone()), &x).unwrap(),
                    "N1, x = {x:?}"
                );
                assert_eq!(
                    implicit::n2_norm(&x, &c).unwrap(),
                    oracle_norm(&NormSpec::N2(c.clone()), &x).unwrap(),
                    "N2, x = {x:?}"
                );
                assert_eq!(
                    implicit::n3_norm(&x),
                    oracle_norm(&NormSpec::N3, &x).unwrap(),
                    "N3, x = {x:?}"
                );
                assert_eq!(
                    implicit::n4_norm(&x),
                    oracle_norm(&NormSpec::N4, &x).unwrap(),
                    "N4, x = {x:?}"
                );
                let (jn, qn) =
                    implicit::truncated_norms(&x, 2, &fifth, TruncatedInner::QNorm).unwrap();
                assert_eq!(
                    jn,
                    oracle_norm(&NormSpec::TruncJ(2, fifth.clone()), &x).unwrap(),
                    "|.|_2, x = {x:?}"
                );
                assert_eq!(
                    qn,
                    oracle_norm(&NormSpec::TruncQ(2, fifth.clone()), &x).unwrap(),
                    "||.||_2, x = {x:?}"
                );
                assert_eq!(
                    implicit::sup_j_norm(&x, &fifth).unwrap(),
                    oracle_norm(&NormSpec::SupJ(fifth.clone()), &x).unwrap(),
                    "supJ, x = {x:?}"
                );

                // next coefficient assignment
                let mut pos = 0;
                while pos < n {
                    assignment[pos] += 1;
                    if assignment[pos] < coeff_pool.len() {
                        break;
                    }
                    assignment[pos] = 0;
                    pos += 1;
                }
                if pos == n {
                    break;
                }
            }
        }
    }
}
