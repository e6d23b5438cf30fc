//! The repeated-averages hierarchy over an index stream.
//!
//! A term at ordinal level `a` is built by consuming stream elements left
//! to right through a shared cursor:
//!
//! * level `0`: take the next element `m` and emit `e_m`;
//! * successor level `b+1`: peek the next element `r` (without consuming
//!   it), build `r` consecutive level-`b` terms, and average them with
//!   weight `1/r` — the peeked element doubles as count and denominator,
//!   and is consumed by the first sub-term;
//! * limit level: peek `r` and build one term at the level given by the
//!   canonical fundamental sequence at `r`.
//!
//! The `n`-th term at a fixed level continues where the `(n-1)`-st left
//! off, so the supports are consecutive blocks whose union is an initial
//! segment of the stream. Only `take` operations charge the element
//! budget; exceeding it signals that the stream grows too slowly for the
//! requested level at desk scale.

use alloc::vec;
use alloc::vec::Vec;
use num_traits::Zero;

use crate::error::{Error, Result};
use crate::ordinal::{OrdinalClass, OrdinalCnf};
use crate::rat::{int, q, Rational};
use crate::schreier::FiniteSet;
use crate::stream::{IndexStream, StreamCursor};
use crate::vector::RationalVector;

/// Cap on the support size accepted by the largeness witness search.
pub const LARGENESS_SUPPORT_CAP: usize = 24;

/// One repeated-average term.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AverageResult {
    /// The exact convex vector.
    pub vector: RationalVector,
    /// Its support.
    pub support: FiniteSet,
    /// Stream elements consumed from the start of the stream through this
    /// term (the supports of the terms so far tile exactly this prefix).
    pub consumed_prefix_length: u64,
}

/// One entry of the largeness report: the witness search for one
/// `(sub-stream, n)` pair.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LargenessEntry {
    /// Index into the supplied sub-stream list.
    pub stream: usize,
    /// The term number checked.
    pub n: u64,
    /// Support of the average that was searched.
    pub support: FiniteSet,
    /// A family member with pairing exceeding the threshold, if found.
    pub witness: Option<(FiniteSet, Rational)>,
}

fn build_term(cursor: &mut StreamCursor, a: &OrdinalCnf) -> Result<Vec<(u64, Rational)>> {
    match a.classify() {
        OrdinalClass::Zero => {
            let m = cursor.take()?;
            Ok(vec![(m, int(1))])
        }
        OrdinalClass::Successor(b) => {
            let r = cursor.peek();
            let weight = q(1, r as i64);
            let mut entries: Vec<(u64, Rational)> = Vec::new();
            for _ in 0..r {
                let sub = build_term(cursor, &b)?;
                entries.extend(sub.into_iter().map(|(i, v)| (i, v * &weight)));
            }
            Ok(entries)
        }
        OrdinalClass::Limit => {
            let r = cursor.peek();
            let b = a.fundamental_sequence(r)?;
            build_term(cursor, &b)
        }
    }
}

/// The first `n` terms at level `a` over `m`, sharing one cursor.
pub fn repeated_average_sequence(
    a: &OrdinalCnf,
    m: &IndexStream,
    n: u64,
    budget: u64,
) -> Result<Vec<AverageResult>> {
    if n == 0 {
        return Err(Error::InvalidParameter("term number must be >= 1"));
    }
    let mut cursor = StreamCursor::new(m, budget);
    let mut out = Vec::with_capacity(n as usize);
    for _ in 0..n {
        let entries = build_term(&mut cursor, a)?;
        let vector = RationalVector::from_entries(entries)
            .expect("terms consume strictly increasing elements");
        let support = vector.support();
        out.push(AverageResult {
            vector,
            support,
            consumed_prefix_length: cursor.consumed(),
        });
    }
    Ok(out)
}

/// The `n`-th term at level `a` over `m`.
pub fn repeated_average(
    a: &OrdinalCnf,
    m: &IndexStream,
    n: u64,
    budget: u64,
) -> Result<AverageResult> {
    let mut seq = repeated_average_sequence(a, m, n, budget)?;
    Ok(seq.pop().expect("sequence is nonempty"))
}

/// `sum of the coefficients of x over F`.
pub fn pairing(x: &RationalVector, f: &FiniteSet) -> Rational {
    f.elements()
        .iter()
        .fold(Rational::zero(), |acc, &i| acc + x.get(i))
}

/// Checks the subsequence identity: picking terms `n_1 < n_2 < ...` of the
/// level-`a` hierarchy over `m` and re-running the hierarchy over the
/// stream formed by the union of the picked supports reproduces the picked
/// terms in order. Both sides are computed independently and compared
/// exactly.
pub fn verify_subsequence_identity(
    a: &OrdinalCnf,
    m: &IndexStream,
    picks: &[u64],
    budget: u64,
) -> Result<bool> {
    if picks.is_empty() {
        return Err(Error::InvalidParameter("picks must be nonempty"));
    }
    if picks[0] == 0 || picks.windows(2).any(|w| w[0] >= w[1]) {
        return Err(Error::InvalidParameter(
            "picks must be strictly increasing and >= 1",
        ));
    }
    let max_pick = *picks.last().expect("nonempty");
    let terms = repeated_average_sequence(a, m, max_pick, budget)?;
    let mut union: Vec<u64> = Vec::new();
    for &p in picks {
        union.extend_from_slice(terms[(p - 1) as usize].support.elements());
    }
    let m_prime = IndexStream::explicit_then_arithmetic(union, 1)?;
    let rhs = repeated_average_sequence(a, &m_prime, picks.len() as u64, budget)?;
    Ok(picks
        .iter()
        .zip(&rhs)
        .all(|(&p, r)| terms[(p - 1) as usize].vector == r.vector))
}

/// Searches for family members with pairing above `eps` against the first
/// `n_max` averages over each supplied sub-stream of `m`.
///
/// A witness for every pair is a necessary condition for largeness over
/// the full (infinite) collection of sub-streams, never a proof: the
/// verdict covers only the streams supplied. The subset search walks
/// coefficients in decreasing order and prunes branches whose remaining
/// mass cannot reach `eps`.
pub fn largeness_witness(
    family: &dyn Fn(&FiniteSet) -> bool,
    m: &IndexStream,
    a: &OrdinalCnf,
    eps: &Rational,
    n_max: u64,
    sub_streams: &[IndexStream],
    budget: u64,
) -> Result<Vec<LargenessEntry>> {
    if n_max == 0 {
        return Err(Error::InvalidParameter("n_max must be >= 1"));
    }
    let mut out = Vec::new();
    for (si, stream) in sub_streams.iter().enumerate() {
        let terms = repeated_average_sequence(a, stream, n_max, budget)?;
        // the consumed prefix must come from m
        let consumed = terms.last().map(|t| t.consumed_prefix_length).unwrap_or(0);
        for i in 1..=consumed as usize {
            let e = stream.element(i);
            if m.position_of(e).is_none() {
                return Err(Error::NotInStream { element: e });
            }
        }
        for (ni, term) in terms.iter().enumerate() {
            let witness = subset_witness(family, &term.vector, eps)?;
            out.push(LargenessEntry {
                stream: si,
                n: (ni + 1) as u64,
                support: term.support.clone(),
                witness,
            });
        }
    }
    Ok(out)
}

fn subset_witness(
    family: &dyn Fn(&FiniteSet) -> bool,
    x: &RationalVector,
    eps: &Rational,
) -> Result<Option<(FiniteSet, Rational)>> {
    let k = x.entries().len();
    if k > LARGENESS_SUPPORT_CAP {
        return Err(Error::SizeCap {
            size: k,
            cap: LARGENESS_SUPPORT_CAP,
        });
    }
    // coefficients in decreasing order for tight pruning bounds
    let mut order: Vec<(u64, Rational)> = x.entries().to_vec();
    order.sort_by(|a, b| b.1.cmp(&a.1));
    let remaining_after: Vec<Rational> = {
        let mut acc = Rational::zero();
        let mut tails = vec![Rational::zero(); k + 1];
        for i in (0..k).rev() {
            acc += order[i].1.clone();
            tails[i] = acc.clone();
        }
        tails
    };
    let mut chosen: Vec<u64> = Vec::new();
    fn dfs(
        family: &dyn Fn(&FiniteSet) -> bool,
        order: &[(u64, Rational)],
        tails: &[Rational],
        eps: &Rational,
        i: usize,
        chosen: &mut Vec<u64>,
        sum: &Rational,
    ) -> Option<(FiniteSet, Rational)> {
        if sum > eps {
            let mut elems = chosen.clone();
            elems.sort_unstable();
            let f = FiniteSet::new(elems).expect("distinct support indices");
            if family(&f) {
                return Some((f, sum.clone()));
            }
        }
        if i == order.len() || sum + &tails[i] <= *eps {
            return None;
        }
        chosen.push(order[i].0);
        let with = sum + &order[i].1;
        if let Some(found) = dfs(family, order, tails, eps, i + 1, chosen, &with) {
            return Some(found);
        }
        chosen.pop();
        dfs(family, order, tails, eps, i + 1, chosen, sum)
    }
    Ok(dfs(
        family,
        &order,
        &remaining_after,
        eps,
        0,
        &mut chosen,
        &Rational::zero(),
    ))
}
