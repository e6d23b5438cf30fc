//! Interval-cut dynamic programs for the implicit norms.
//!
//! ## Admissible families
//!
//! An admissible family for a vector `x` is a list of sets
//! `E_1 < E_2 < ...` (the max of each set below the min of the next)
//! together with an arity `n`: at most `n` of the sets are nonempty, and
//! `n` is at most the least element of the first nonempty set. Empty sets
//! are permissible padding — they contribute zero and never weaken a
//! constraint (in particular, the confinement of an inner family is always
//! read against the nearest *nonempty* neighbors, so padding can never be
//! used to double-count coordinates).
//!
//! ## Interval restriction
//!
//! Every norm here is 1-unconditional and solid, so a maximizing family
//! may be assumed to consist of consecutive intervals of support
//! positions: enlarge each set to the hull of the support it meets, then
//! absorb uncovered coordinates rightwards into the preceding set. Neither
//! step decreases a piece norm or tightens admissibility (the min of the
//! first set never moves down). The evaluators therefore search interval
//! partitions of `[p..end]` over all starting support positions `p`, with
//! the piece-count budget determined by the index at `p`.
//!
//! ## Self-reference guards
//!
//! Candidates consisting of the whole current interval as a single piece
//! are skipped everywhere. Their value carries a factor `< 1`, so they can
//! never exceed the maximum of the remaining candidates, and skipping them
//! makes every recursion well-founded (all other subproblems are strictly
//! shorter intervals).

use alloc::collections::BTreeMap;
use alloc::vec;
use alloc::vec::Vec;
use num_traits::{Signed, Zero};

use crate::error::{Error, Result};
use crate::norms::TruncatedInner;
use crate::rat::{q as frac, Rational};
use crate::vector::RationalVector;

/// The support of a vector as parallel arrays: actual indices (which drive
/// the admissibility budgets) and absolute coordinate values.
struct Prep {
    idx: Vec<u64>,
    vals: Vec<Rational>,
}

impl Prep {
    fn new(x: &RationalVector) -> Prep {
        Prep {
            idx: x.entries().iter().map(|(i, _)| *i).collect(),
            vals: x.entries().iter().map(|(_, v)| v.abs()).collect(),
        }
    }

    fn len(&self) -> usize {
        self.idx.len()
    }

    /// Largest absolute coordinate over positions `[l..=r]`.
    fn max_abs(&self, l: usize, r: usize) -> Rational {
        self.vals[l..=r]
            .iter()
            .max()
            .expect("nonempty range")
            .clone()
    }
}

fn half() -> Rational {
    frac(1, 2)
}

pub(crate) fn validate_q(q: &Rational) -> Result<()> {
    if q > &Rational::zero() && q < &half() {
        Ok(())
    } else {
        Err(Error::InvalidParameter("q must satisfy 0 < q < 1/2"))
    }
}

pub(crate) fn validate_c(c: &Rational) -> Result<()> {
    if c > &Rational::zero() && c < &crate::rat::int(1) {
        Ok(())
    } else {
        Err(Error::InvalidParameter("c must satisfy 0 < c < 1"))
    }
}

fn fold_max(slot: &mut Option<Rational>, cand: Rational) {
    if slot.as_ref().is_none_or(|cur| *cur < cand) {
        *slot = Some(cand);
    }
}

/// Piece-count rule for the suffix-table engine.
enum OuterMode {
    /// Up to `factor * (index at the start position)` pieces, each worth
    /// half its norm. `factor` 1 gives the base implicit norm, 3 the
    /// `N4` variant.
    PieceCap(u64),
    /// The `N1` variant: either one piece is distinguished and worth `c`
    /// times its norm (piece count up to the start index), or no piece is
    /// distinguished (the idle slot still occupies arity, so the count
    /// stays strictly below the start index).
    Slotted(Rational),
}

/// Norms of all support-position intervals `[l..=r]` under `mode`.
///
/// Works per right endpoint `r` with two suffix tables over `l`:
/// `s[l][j]` is the best sum of piece norms over exactly-`j`-piece interval
/// partitions of `[l..=r]`, and (for the slotted mode) `d[l][j]` the best
/// fully weighted value with exactly one distinguished piece.
#[allow(clippy::needless_range_loop)]
fn interval_norm_table(p: &Prep, mode: &OuterMode) -> Vec<Vec<Rational>> {
    let k = p.len();
    let h = half();
    let mut v: Vec<Vec<Rational>> = vec![vec![Rational::zero(); k]; k];
    for r in 0..k {
        let mut s: Vec<Vec<Option<Rational>>> = vec![vec![None; r + 2]; r + 1];
        let mut d: Vec<Vec<Option<Rational>>> = vec![vec![None; r + 2]; r + 1];
        for l in (0..=r).rev() {
            let len = r - l + 1;
            for j in 2..=len {
                let mut best_s: Option<Rational> = None;
                let mut best_d: Option<Rational> = None;
                // first piece [l..=c], then j-1 pieces on [c+1..=r]
                for c in l..=(r - (j - 1)) {
                    if let Some(rest) = &s[c + 1][j - 1] {
                        fold_max(&mut best_s, &v[l][c] + rest);
                        if let OuterMode::Slotted(cw) = mode {
                            // distinguish the first piece
                            fold_max(&mut best_d, cw * &v[l][c] + &h * rest);
                        }
                    }
                    if let OuterMode::Slotted(_) = mode {
                        if let Some(rest_d) = &d[c + 1][j - 1] {
                            // the distinguished piece lies further right
                            fold_max(&mut best_d, &h * &v[l][c] + rest_d);
                        }
                    }
                }
                s[l][j] = best_s;
                d[l][j] = best_d;
            }
            // value of the interval [l..=r]
            let mut val = p.vals[l].clone();
            if l < r && v[l + 1][r] > val {
                val = v[l + 1][r].clone();
            }
            let min_l = p.idx[l];
            match mode {
                OuterMode::PieceCap(factor) => {
                    let cap = core::cmp::min(len as u64, min_l.saturating_mul(*factor)) as usize;
                    for j in 2..=cap {
                        if let Some(sum) = &s[l][j] {
                            let cand = &h * sum;
                            if cand > val {
                                val = cand;
                            }
                        }
                    }
                }
                OuterMode::Slotted(_) => {
                    let cap_slot = core::cmp::min(len as u64, min_l) as usize;
                    for j in 2..=cap_slot {
                        if let Some(dv) = &d[l][j] {
                            if *dv > val {
                                val = dv.clone();
                            }
                        }
                    }
                    let cap_plain = core::cmp::min(len as u64, min_l.saturating_sub(1)) as usize;
                    for j in 2..=cap_plain {
                        if let Some(sum) = &s[l][j] {
                            let cand = &h * sum;
                            if cand > val {
                                val = cand;
                            }
                        }
                    }
                }
            }
            v[l][r] = val;
            s[l][1] = Some(v[l][r].clone());
            if let OuterMode::Slotted(cw) = mode {
                d[l][1] = Some(cw * &v[l][r]);
            }
        }
    }
    v
}

/// The base implicit norm: admissible partitions weighted `1/2` each.
pub fn tsirelson_norm(x: &RationalVector) -> Rational {
    let p = Prep::new(x);
    if p.len() == 0 {
        return Rational::zero();
    }
    let table = interval_norm_table(&p, &OuterMode::PieceCap(1));
    table[0][p.len() - 1].clone()
}

/// The `N4` variant: up to `3n` pieces at arity `n`.
pub fn n4_norm(x: &RationalVector) -> Rational {
    let p = Prep::new(x);
    if p.len() == 0 {
        return Rational::zero();
    }
    let table = interval_norm_table(&p, &OuterMode::PieceCap(3));
    table[0][p.len() - 1].clone()
}

/// The `N1` variant: one distinguished piece weighted `c`, `0 < c < 1`.
pub fn n1_norm(x: &RationalVector, c: &Rational) -> Result<Rational> {
    validate_c(c)?;
    let p = Prep::new(x);
    if p.len() == 0 {
        return Ok(Rational::zero());
    }
    let table = interval_norm_table(&p, &OuterMode::Slotted(c.clone()));
    Ok(table[0][p.len() - 1].clone())
}

/// Norms of all support-position intervals under the q-perturbed implicit
/// norm (`1/2 * sum + q * max` over each admissible family).
///
/// Computed bottom-up by interval length. For each interval, a composition
/// dynamic program walks the pieces left to right and assigns the `q`
/// bonus to exactly one piece. Assigning the bonus to a non-maximal piece
/// undershoots that family's true value, and the assignment to the actual
/// maximum is also enumerated, so the overall maximum is exact.
#[allow(clippy::needless_range_loop)]
fn tq_table(p: &Prep, q: &Rational) -> Vec<Vec<Rational>> {
    let k = p.len();
    let h = half();
    let bonus_w = &h + q;
    let mut v: Vec<Vec<Rational>> = vec![vec![Rational::zero(); k]; k];
    for len in 1..=k {
        for l in 0..=(k - len) {
            let r = l + len - 1;
            let mut best = p.max_abs(l, r);
            // g[pos - l][rem] = (value with bonus unassigned, assigned)
            // over compositions of [pos..=r] into at most rem nonempty
            // pieces; `None` = infeasible.
            let mut g: Vec<Vec<[Option<Rational>; 2]>> = vec![vec![[None, None]; len + 1]; len + 2];
            // terminal states (pos == r + 1): the empty suffix carries no
            // bonus, so only the bonus-unassigned entry is feasible; the
            // candidate read below demands the assigned entry, which makes
            // the bonus mandatory over the whole composition
            for rem in 0..=len {
                g[len][rem] = [Some(Rational::zero()), None];
            }
            for off in (0..len).rev() {
                let pos = l + off;
                for rem in 1..=len {
                    let mut no_bonus: Option<Rational> = None;
                    let mut with_bonus: Option<Rational> = None;
                    for c in pos..=r {
                        if pos == l && c == r {
                            continue; // whole-interval single piece
                        }
                        let piece = &v[pos][c];
                        let nxt = &g[c + 1 - l][rem - 1];
                        if let Some(t) = &nxt[1] {
                            fold_max(&mut with_bonus, &h * piece + t);
                        }
                        if let Some(t) = &nxt[0] {
                            fold_max(&mut no_bonus, &h * piece + t);
                            fold_max(&mut with_bonus, &bonus_w * piece + t);
                        }
                    }
                    g[off][rem] = [no_bonus, with_bonus];
                }
                g[off][0] = [None, None];
            }
            for start in l..=r {
                let cap = core::cmp::min(p.idx[start], (r - start + 1) as u64) as usize;
                if cap == 0 {
                    continue;
                }
                if let Some(cand) = &g[start - l][cap][1] {
                    if *cand > best {
                        best = cand.clone();
                    }
                }
            }
            v[l][r] = best;
        }
    }
    v
}

/// The q-perturbed implicit norm, `0 < q < 1/2`.
pub fn tsirelson_q_norm(x: &RationalVector, q: &Rational) -> Result<Rational> {
    validate_q(q)?;
    let p = Prep::new(x);
    if p.len() == 0 {
        return Ok(Rational::zero());
    }
    let table = tq_table(&p, q);
    Ok(table[0][p.len() - 1].clone())
}

/// Evaluator for the `N2` variant: the distinguished slot is replaced by
/// `c` times the best inner admissible family confined between the slot's
/// nearest nonempty neighbors.
struct N2Eval<'a> {
    p: &'a Prep,
    c: Rational,
    h: Rational,
    norm_memo: Vec<Vec<Option<Rational>>>,
    /// best sum of piece norms over exactly-j-piece partitions of [l..=r]
    msum_memo: BTreeMap<(usize, usize, usize), Rational>,
    /// best inner-family value on [lo..=hi]
    inner_memo: BTreeMap<(usize, usize), Rational>,
}

impl<'a> N2Eval<'a> {
    fn new(p: &'a Prep, c: Rational) -> Self {
        let k = p.len();
        N2Eval {
            p,
            c,
            h: half(),
            norm_memo: vec![vec![None; k]; k],
            msum_memo: BTreeMap::new(),
            inner_memo: BTreeMap::new(),
        }
    }

    /// `N2` of the restriction to positions `[l..=r]`.
    fn norm(&mut self, l: usize, r: usize) -> Rational {
        if let Some(v) = &self.norm_memo[l][r] {
            return v.clone();
        }
        let mut best = self.p.max_abs(l, r);
        let len = r - l + 1;

        // Slot-only families: no nonempty outer piece, so the arity
        // constraint on the outer family is vacuous and the inner family
        // may sit anywhere in [l..=r]. The single inner piece covering the
        // whole interval is skipped (self-reference; dominated by c < 1).
        for pp in l..=r {
            let m_cap = core::cmp::min(self.p.idx[pp], (r - pp + 1) as u64) as usize;
            for m in 1..=m_cap {
                if pp == l && m == 1 {
                    continue;
                }
                let ms = self.msum(pp, r, m);
                let cand = &self.c * &ms;
                if cand > best {
                    best = cand;
                }
            }
        }

        // Families with a nonempty left group: outer pieces partition
        // [start..=a], the slot's gap region is [a+1..=h2], and an optional
        // right group partitions [h2+1..=r]. The slot occupies one arity
        // position, so the nonempty-piece budget is (index at start) - 1.
        for start in l..=r {
            let budget = core::cmp::min(self.p.idx[start].saturating_sub(1), len as u64) as usize;
            if budget == 0 {
                continue;
            }
            for a in start..=r {
                for h2 in a..=r {
                    let inner = if h2 > a {
                        self.inner_best(a + 1, h2)
                    } else {
                        Rational::zero()
                    };
                    let len_l = a - start + 1;
                    let len_r = r - h2;
                    for t_l in 1..=core::cmp::min(len_l, budget) {
                        if start == l && a == r && t_l == 1 {
                            continue; // left piece would be the whole interval
                        }
                        let t_r = core::cmp::min(len_r, budget - t_l);
                        let mut sum = self.msum(start, a, t_l);
                        if t_r >= 1 {
                            sum += self.msum(h2 + 1, r, t_r);
                        }
                        let cand = &self.h * &sum + &self.c * &inner;
                        if cand > best {
                            best = cand;
                        }
                    }
                }
            }
        }

        // Families with an empty left group: the slot comes first, the gap
        // region is [l..=rs-1], and the right group partitions [rs..=r].
        // The first nonempty piece starts at rs, so the budget reads there.
        for rs in l..=r {
            let budget = core::cmp::min(self.p.idx[rs].saturating_sub(1), len as u64) as usize;
            if budget == 0 {
                continue;
            }
            let inner = if rs > l {
                self.inner_best(l, rs - 1)
            } else {
                Rational::zero()
            };
            for t_r in 1..=core::cmp::min(r - rs + 1, budget) {
                if rs == l && t_r == 1 {
                    continue; // right piece would be the whole interval
                }
                let sum = self.msum(rs, r, t_r);
                let cand = &self.h * &sum + &self.c * &inner;
                if cand > best {
                    best = cand;
                }
            }
        }

        self.norm_memo[l][r] = Some(best.clone());
        best
    }

    /// Best sum of `N2` piece norms over exactly-`j`-piece interval
    /// partitions of `[l..=r]`; caller guarantees `1 <= j <= r - l + 1`.
    fn msum(&mut self, l: usize, r: usize, j: usize) -> Rational {
        debug_assert!(j >= 1 && j <= r - l + 1);
        if j == 1 {
            return self.norm(l, r);
        }
        if let Some(v) = self.msum_memo.get(&(l, r, j)) {
            return v.clone();
        }
        let mut best: Option<Rational> = None;
        for c in l..=(r - (j - 1)) {
            let first = self.norm(l, c);
            let rest = self.msum(c + 1, r, j - 1);
            fold_max(&mut best, first + rest);
        }
        let best = best.expect("at least one cut exists");
        self.msum_memo.insert((l, r, j), best.clone());
        best
    }

    /// Best inner-family value on the gap `[lo..=hi]`: pieces are interval
    /// partitions of `[pp..=hi]` over inner starts `pp`, with piece count
    /// at most the index at `pp`; the empty family contributes zero.
    fn inner_best(&mut self, lo: usize, hi: usize) -> Rational {
        if let Some(v) = self.inner_memo.get(&(lo, hi)) {
            return v.clone();
        }
        let mut best = Rational::zero();
        for pp in lo..=hi {
            let m_cap = core::cmp::min(self.p.idx[pp], (hi - pp + 1) as u64) as usize;
            for m in 1..=m_cap {
                let cand = self.msum(pp, hi, m);
                if cand > best {
                    best = cand;
                }
            }
        }
        self.inner_memo.insert((lo, hi), best.clone());
        best
    }
}

/// The `N2` variant, `0 < c < 1`.
pub fn n2_norm(x: &RationalVector, c: &Rational) -> Result<Rational> {
    validate_c(c)?;
    let p = Prep::new(x);
    if p.len() == 0 {
        return Ok(Rational::zero());
    }
    let mut eval = N2Eval::new(&p, c.clone());
    Ok(eval.norm(0, p.len() - 1))
}

/// The `N3` variant: sup-norm base plus one admissible layer whose pieces
/// carry `N2(., 1/2)` values. The single-piece layer is allowed — it refers
/// to `N2`, not to `N3`, so there is no self-reference.
#[allow(clippy::needless_range_loop)]
pub fn n3_norm(x: &RationalVector) -> Rational {
    let p = Prep::new(x);
    let k = p.len();
    if k == 0 {
        return Rational::zero();
    }
    let h = half();
    let mut eval = N2Eval::new(&p, half());
    // suffix tables of best N2-piece sums: t[pos][j] over [pos..=k-1]
    let mut t: Vec<Vec<Option<Rational>>> = vec![vec![None; k + 1]; k + 1];
    for pos in (0..k).rev() {
        t[pos][1] = Some(eval.norm(pos, k - 1));
        for j in 2..=(k - pos) {
            let mut best: Option<Rational> = None;
            for c in pos..=(k - j) {
                let first = eval.norm(pos, c);
                if let Some(rest) = &t[c + 1][j - 1] {
                    fold_max(&mut best, first + rest);
                }
            }
            t[pos][j] = best;
        }
    }
    let mut best = p.max_abs(0, k - 1);
    for pos in 0..k {
        let cap = core::cmp::min(p.idx[pos], (k - pos) as u64) as usize;
        for j in 1..=cap {
            if let Some(sum) = &t[pos][j] {
                let cand = &h * sum;
                if cand > best {
                    best = cand;
                }
            }
        }
    }
    best
}

/// Shared scaffolding for the truncated norms: inner interval-norm table
/// plus suffix tables of the best piece sums, plain and with the `q` bonus
/// threaded through exactly one piece.
struct TruncTables {
    idx: Vec<u64>,
    /// ss[pos][j]: best plain piece-norm sum, exactly j pieces on [pos..].
    ss: Vec<Vec<Option<Rational>>>,
    /// gg[pos][j]: best half-weighted sum with the bonus assigned, exactly
    /// j pieces on [pos..]; paired with the bonus-not-yet-assigned state.
    gg: Vec<Vec<[Option<Rational>; 2]>>,
}

fn trunc_tables(x: &RationalVector, q: &Rational, inner: TruncatedInner) -> TruncTables {
    let p = Prep::new(x);
    let k = p.len();
    let v = match inner {
        TruncatedInner::QNorm => tq_table(&p, q),
        TruncatedInner::Plain => interval_norm_table(&p, &OuterMode::PieceCap(1)),
    };
    let h = half();
    let bonus_w = &h + q;
    let mut ss: Vec<Vec<Option<Rational>>> = vec![vec![None; k + 1]; k + 1];
    let mut gg: Vec<Vec<[Option<Rational>; 2]>> = vec![vec![[None, None]; k + 1]; k + 1];
    for pos in (0..k).rev() {
        ss[pos][1] = Some(v[pos][k - 1].clone());
        gg[pos][1] = [Some(&h * &v[pos][k - 1]), Some(&bonus_w * &v[pos][k - 1])];
        for j in 2..=(k - pos) {
            let mut best: Option<Rational> = None;
            let mut best_g: [Option<Rational>; 2] = [None, None];
            for c in pos..=(k - j) {
                let piece = &v[pos][c];
                if let Some(rest) = &ss[c + 1][j - 1] {
                    fold_max(&mut best, piece + rest);
                }
                let nxt = &gg[c + 1][j - 1];
                if let Some(t) = &nxt[0] {
                    fold_max(&mut best_g[0], &h * piece + t);
                    fold_max(&mut best_g[1], &bonus_w * piece + t);
                }
                if let Some(t) = &nxt[1] {
                    fold_max(&mut best_g[1], &h * piece + t);
                }
            }
            ss[pos][j] = best;
            gg[pos][j] = best_g;
        }
    }
    TruncTables { idx: p.idx, ss, gg }
}

/// The truncated norms at level `n >= 1`: one admissible layer whose
/// families have at most `n` nonempty pieces and a first piece starting at
/// an index `>= n`. Returns `(plain, with q-bonus)`; both are zero when no
/// support index reaches `n`. There is no sup-norm base term.
pub fn truncated_norms(
    x: &RationalVector,
    n: u64,
    q: &Rational,
    inner: TruncatedInner,
) -> Result<(Rational, Rational)> {
    if n == 0 {
        return Err(Error::InvalidParameter("truncation level must be >= 1"));
    }
    validate_q(q)?;
    let k = x.entries().len();
    if k == 0 {
        return Ok((Rational::zero(), Rational::zero()));
    }
    let tables = trunc_tables(x, q, inner);
    let h = half();
    let mut j_n = Rational::zero();
    let mut qn_n = Rational::zero();
    for pos in 0..k {
        if tables.idx[pos] < n {
            continue;
        }
        let cap = core::cmp::min(n, (k - pos) as u64) as usize;
        // the plain sum is nondecreasing in the piece count, so the top
        // count suffices
        if let Some(sum) = &tables.ss[pos][cap] {
            let cand = &h * sum;
            if cand > j_n {
                j_n = cand;
            }
        }
        // the bonus value is not monotone in the piece count (splitting
        // the maximal piece can lower the bonus), so scan all counts
        for j in 1..=cap {
            if let Some(val) = &tables.gg[pos][j][1] {
                if *val > qn_n {
                    qn_n = val.clone();
                }
            }
        }
    }
    Ok((j_n, qn_n))
}

/// `sup_n |x|_n` over `1 <= n <= max supp(x)`.
///
/// For a fixed start position `p`, the level-`n` value grows with `n`
/// until `n` reaches the index at `p` (larger `n` only raises the piece
/// budget) and `p` is infeasible beyond it, so the sup over `n` equals the
/// max over `p` of the level-`(index at p)` value.
pub fn sup_j_norm(x: &RationalVector, q: &Rational) -> Result<Rational> {
    validate_q(q)?;
    let k = x.entries().len();
    if k == 0 {
        return Ok(Rational::zero());
    }
    let tables = trunc_tables(x, q, TruncatedInner::QNorm);
    let h = half();
    let mut best = Rational::zero();
    for pos in 0..k {
        let cap = core::cmp::min(tables.idx[pos], (k - pos) as u64) as usize;
        if let Some(sum) = &tables.ss[pos][cap] {
            let cand = &h * sum;
            if cand > best {
                best = cand;
            }
        }
    }
    Ok(best)
}

/// The triple norm: q-perturbed norm plus `sup_n |x|_n`.
pub fn triple_norm(x: &RationalVector, q: &Rational) -> Result<Rational> {
    let base = tsirelson_q_norm(x, q)?;
    let sup_j = sup_j_norm(x, q)?;
    Ok(base + sup_j)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rat::{int, q};
    use alloc::vec;

    fn vecr(vals: &[(u64, i64)]) -> RationalVector {
        RationalVector::from_entries(vals.iter().map(|&(i, n)| (i, int(n))).collect()).unwrap()
    }

    #[test]
    fn tsirelson_examples() {
        assert_eq!(tsirelson_norm(&RationalVector::zero()), int(0));
        assert_eq!(tsirelson_norm(&RationalVector::unit(5)), int(1));
        assert_eq!(tsirelson_norm(&vecr(&[(3, 1), (4, 1), (5, 1)])), q(3, 2));
        assert_eq!(tsirelson_norm(&vecr(&[(2, 1), (3, 1)])), int(1));
        // sign-invariance
        assert_eq!(tsirelson_norm(&vecr(&[(3, -1), (4, 1), (5, -1)])), q(3, 2));
    }

    #[test]
    fn tsirelson_l1_sandwich_when_support_is_late() {
        // |supp| <= min supp: the singleton partition is admissible, so
        // the norm is pinched between half the l1 mass and the l1 mass.
        let x = RationalVector::from_entries(vec![
            (4, q(1, 2)),
            (5, q(2, 3)),
            (6, int(1)),
            (7, q(1, 4)),
        ])
        .unwrap();
        let t = tsirelson_norm(&x);
        let l1 = x.l1();
        assert!(&half() * &l1 <= t);
        assert!(t <= l1);
    }

    #[test]
    fn q_norm_examples() {
        let fifth = q(1, 5);
        assert_eq!(
            tsirelson_q_norm(&RationalVector::unit(7), &fifth).unwrap(),
            int(1)
        );
        assert_eq!(
            tsirelson_q_norm(&vecr(&[(2, 1), (3, 1)]), &fifth).unwrap(),
            q(6, 5)
        );
        assert!(tsirelson_q_norm(&vecr(&[(2, 1)]), &q(1, 2)).is_err());
        assert!(tsirelson_q_norm(&vecr(&[(2, 1)]), &int(0)).is_err());
    }

    #[test]
    fn n1_matches_q_norm_with_shifted_parameter() {
        let fifth = q(1, 5);
        let c = q(7, 10);
        for x in [
            vecr(&[(2, 1), (3, 1)]),
            vecr(&[(2, 1), (3, 1), (5, 1)]),
            vecr(&[(1, 1), (2, -1), (4, 1), (6, 1)]),
            RationalVector::from_entries(vec![(3, q(1, 2)), (4, int(1)), (7, q(-2, 3))]).unwrap(),
        ] {
            assert_eq!(
                tsirelson_q_norm(&x, &fifth).unwrap(),
                n1_norm(&x, &c).unwrap(),
                "x = {x:?}"
            );
        }
        assert_eq!(n1_norm(&vecr(&[(2, 1), (3, 1)]), &c).unwrap(), q(6, 5));
    }

    #[test]
    fn n4_shift_identity_spots() {
        assert_eq!(n4_norm(&RationalVector::unit(1)), int(1));
        assert_eq!(n4_norm(&RationalVector::unit(9)), int(1));
        let a = vecr(&[(1, 1), (2, 1), (3, 1)]);
        let shifted = vecr(&[(3, 1), (6, 1), (9, 1)]);
        assert_eq!(n4_norm(&a), tsirelson_norm(&shifted));
        assert_eq!(n4_norm(&a), q(3, 2));
    }

    #[test]
    fn n2_and_n3_spot_values() {
        let x = vecr(&[(2, 1), (3, 1)]);
        assert_eq!(n2_norm(&x, &q(1, 2)).unwrap(), int(1));
        assert_eq!(n2_norm(&x, &q(49, 100)).unwrap(), int(1));
        assert_eq!(n3_norm(&x), int(1));
        assert!(n2_norm(&x, &int(1)).is_err());
        let y = vecr(&[(3, 1), (4, 1), (5, 1)]);
        assert_eq!(n3_norm(&y), q(3, 2));
    }

    #[test]
    fn chain_spot_checks() {
        let c = q(7, 10);
        let c2 = q(49, 100);
        let h = q(1, 2);
        for x in [
            vecr(&[(2, 1), (3, 1)]),
            vecr(&[(3, 1), (4, 1), (5, 1)]),
            vecr(&[(1, 1), (2, 1), (3, -1), (4, 1), (5, 1), (6, 1)]),
            RationalVector::from_entries(vec![(1, q(1, 2)), (4, q(-1, 2)), (6, int(1))]).unwrap(),
        ] {
            let t = tsirelson_norm(&x);
            let n1 = n1_norm(&x, &c).unwrap();
            let n2c2 = n2_norm(&x, &c2).unwrap();
            let n2h = n2_norm(&x, &h).unwrap();
            let n3 = n3_norm(&x);
            let n4 = n4_norm(&x);
            assert!(t <= n1, "x = {x:?}");
            assert!(n1 <= int(2) * &n2c2, "x = {x:?}");
            assert!(n2c2 <= n2h, "x = {x:?}");
            assert!(n3 <= n4, "x = {x:?}");
            assert!(n2h <= int(2) * &n4, "x = {x:?}");
        }
    }

    #[test]
    fn truncated_norm_examples() {
        let fifth = q(1, 5);
        assert_eq!(
            truncated_norms(&RationalVector::unit(1), 2, &fifth, TruncatedInner::QNorm).unwrap(),
            (int(0), int(0))
        );
        assert_eq!(
            truncated_norms(&vecr(&[(2, 1), (3, 1)]), 2, &fifth, TruncatedInner::QNorm).unwrap(),
            (int(1), q(6, 5))
        );
        assert!(truncated_norms(&vecr(&[(2, 1)]), 0, &fifth, TruncatedInner::QNorm).is_err());
    }

    #[test]
    fn triple_norm_examples() {
        let fifth = q(1, 5);
        assert_eq!(
            triple_norm(&RationalVector::unit(5), &fifth).unwrap(),
            q(3, 2)
        );
        assert_eq!(
            triple_norm(&vecr(&[(2, 1), (3, 1)]), &fifth).unwrap(),
            q(11, 5)
        );
        // homogeneity
        let x = vecr(&[(2, 2), (3, 2)]);
        assert_eq!(triple_norm(&x, &fifth).unwrap(), q(22, 5));
        // the m < n ratio pattern behind the distance bound
        for (m, n) in [(2u64, 5u64), (3, 17), (29, 30)] {
            let pair = vecr(&[(m, 1), (n, 1)]);
            let single = vecr(&[(m, 1)]);
            let ratio = triple_norm(&pair, &fifth).unwrap() / triple_norm(&single, &fifth).unwrap();
            assert_eq!(ratio, q(22, 15), "m={m}, n={n}");
        }
    }

    #[test]
    fn sup_j_matches_direct_level_scan() {
        let fifth = q(1, 5);
        for x in [
            vecr(&[(2, 1), (3, 1)]),
            vecr(&[(1, 1), (3, 1), (4, -1), (7, 1)]),
            vecr(&[(5, 2), (9, 1), (12, -3)]),
        ] {
            let max_idx = x.max_support().unwrap();
            let mut direct = Rational::zero();
            for n in 1..=max_idx {
                let (jn, _) = truncated_norms(&x, n, &fifth, TruncatedInner::QNorm).unwrap();
                if jn > direct {
                    direct = jn;
                }
            }
            assert_eq!(sup_j_norm(&x, &fifth).unwrap(), direct, "x = {x:?}");
        }
    }
}
