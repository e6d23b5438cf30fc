//! Computable strictly increasing index streams `M ⊆ ℕ` and a budgeted
//! consumption cursor.
//!
//! Streams are infinite by construction: an explicit prefix may be given,
//! but the tail is always arithmetic, so `element(i)` is defined for every
//! `i >= 1`. Constructions that eat a stream left to right do so through a
//! [`StreamCursor`], which counts consumed elements against an element
//! budget. A budget — rather than a timeout — keeps behaviour deterministic
//! across machines: the same inputs either produce the same value or the
//! same [`Error::BudgetExceeded`].

use alloc::vec::Vec;

use crate::error::{Error, Result};

/// Default element budget for stream-consuming constructions.
pub const DEFAULT_ELEMENT_BUDGET: u64 = 100_000;

/// A computable strictly increasing infinite sequence of positive integers.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum IndexStream {
    /// `1, 2, 3, ...`
    AllNaturals,
    /// `start, start+step, start+2*step, ...`
    Arithmetic { start: u64, step: u64 },
    /// The explicit prefix, then arithmetic continuation with `step` from
    /// the last prefix element.
    ExplicitThenArithmetic { prefix: Vec<u64>, step: u64 },
}

impl IndexStream {
    /// The stream of all naturals `1, 2, 3, ...`.
    pub fn naturals() -> Self {
        IndexStream::AllNaturals
    }

    /// The even numbers `2, 4, 6, ...`.
    pub fn evens() -> Self {
        IndexStream::Arithmetic { start: 2, step: 2 }
    }

    /// An arithmetic stream; `start >= 1`, `step >= 1`.
    pub fn arithmetic(start: u64, step: u64) -> Result<Self> {
        if start == 0 || step == 0 {
            return Err(Error::InvalidParameter(
                "arithmetic stream needs start >= 1 and step >= 1",
            ));
        }
        Ok(IndexStream::Arithmetic { start, step })
    }

    /// A stream given by an explicit strictly increasing prefix followed by
    /// steps of `step` from its last element.
    pub fn explicit_then_arithmetic(prefix: Vec<u64>, step: u64) -> Result<Self> {
        if prefix.is_empty() {
            return Err(Error::InvalidParameter("explicit prefix must be nonempty"));
        }
        if prefix[0] == 0 || step == 0 {
            return Err(Error::InvalidParameter(
                "stream elements must be >= 1 and step >= 1",
            ));
        }
        if prefix.windows(2).any(|w| w[0] >= w[1]) {
            return Err(Error::InvalidParameter(
                "explicit prefix must strictly increase",
            ));
        }
        Ok(IndexStream::ExplicitThenArithmetic { prefix, step })
    }

    /// The i-th element, 1-based.
    pub fn element(&self, i: usize) -> u64 {
        debug_assert!(i >= 1);
        let i = i as u64;
        match self {
            IndexStream::AllNaturals => i,
            IndexStream::Arithmetic { start, step } => start + step * (i - 1),
            IndexStream::ExplicitThenArithmetic { prefix, step } => {
                let len = prefix.len() as u64;
                if i <= len {
                    prefix[(i - 1) as usize]
                } else {
                    prefix[prefix.len() - 1] + step * (i - len)
                }
            }
        }
    }

    /// The 1-based position of `value` in the stream, if it occurs.
    pub fn position_of(&self, value: u64) -> Option<usize> {
        match self {
            IndexStream::AllNaturals => (value >= 1).then_some(value as usize),
            IndexStream::Arithmetic { start, step } => {
                if value < *start || !(value - start).is_multiple_of(*step) {
                    None
                } else {
                    Some(((value - start) / step + 1) as usize)
                }
            }
            IndexStream::ExplicitThenArithmetic { prefix, step } => {
                if let Ok(pos) = prefix.binary_search(&value) {
                    return Some(pos + 1);
                }
                let last = prefix[prefix.len() - 1];
                if value <= last || !(value - last).is_multiple_of(*step) {
                    None
                } else {
                    Some(prefix.len() + ((value - last) / step) as usize)
                }
            }
        }
    }
}

/// Left-to-right consumption of an [`IndexStream`] under an element budget.
///
/// `peek` inspects the next element without consuming it; `take` consumes
/// it, failing once the budget is exhausted. `consumed` reports how many
/// elements have been taken — by construction the initial segment of the
/// stream used so far.
#[derive(Debug)]
pub struct StreamCursor<'a> {
    stream: &'a IndexStream,
    next_pos: usize,
    taken: u64,
    budget: u64,
}

impl<'a> StreamCursor<'a> {
    /// A cursor at the start of `stream` with the given element budget.
    pub fn new(stream: &'a IndexStream, budget: u64) -> Self {
        StreamCursor {
            stream,
            next_pos: 1,
            taken: 0,
            budget,
        }
    }

    /// The next element, without consuming it or charging the budget.
    pub fn peek(&self) -> u64 {
        self.stream.element(self.next_pos)
    }

    /// Consumes and returns the next element, charging the budget.
    pub fn take(&mut self) -> Result<u64> {
        if self.taken >= self.budget {
            return Err(Error::BudgetExceeded {
                budget: self.budget,
            });
        }
        let v = self.stream.element(self.next_pos);
        self.next_pos += 1;
        self.taken += 1;
        Ok(v)
    }

    /// Number of elements consumed so far.
    pub fn consumed(&self) -> u64 {
        self.taken
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn elements_and_positions_are_inverse() {
        let streams = [
            IndexStream::naturals(),
            IndexStream::evens(),
            IndexStream::arithmetic(5, 3).unwrap(),
            IndexStream::explicit_then_arithmetic(alloc::vec![1, 4, 9], 1).unwrap(),
        ];
        for s in &streams {
            let mut prev = 0;
            for i in 1..=50 {
                let v = s.element(i);
                assert!(v > prev, "strictly increasing");
                prev = v;
                assert_eq!(s.position_of(v), Some(i));
            }
        }
    }

    #[test]
    fn positions_of_absent_values() {
        let evens = IndexStream::evens();
        assert_eq!(evens.position_of(3), None);
        assert_eq!(evens.position_of(1), None);
        let sq = IndexStream::explicit_then_arithmetic(alloc::vec![1, 4, 9], 1).unwrap();
        assert_eq!(sq.position_of(2), None);
        assert_eq!(sq.position_of(4), Some(2));
        assert_eq!(sq.position_of(10), Some(4));
        assert_eq!(sq.position_of(12), Some(6));
    }

    #[test]
    fn invalid_streams_are_rejected() {
        assert!(IndexStream::arithmetic(0, 1).is_err());
        assert!(IndexStream::arithmetic(1, 0).is_err());
        assert!(IndexStream::explicit_then_arithmetic(alloc::vec![], 1).is_err());
        assert!(IndexStream::explicit_then_arithmetic(alloc::vec![2, 2], 1).is_err());
        assert!(IndexStream::explicit_then_arithmetic(alloc::vec![3, 1], 1).is_err());
    }

    #[test]
    fn cursor_budget_is_enforced_and_peek_is_free() {
        let nat = IndexStream::naturals();
        let mut cur = StreamCursor::new(&nat, 3);
        assert_eq!(cur.peek(), 1);
        assert_eq!(cur.peek(), 1);
        assert_eq!(cur.take().unwrap(), 1);
        assert_eq!(cur.take().unwrap(), 2);
        assert_eq!(cur.peek(), 3);
        assert_eq!(cur.take().unwrap(), 3);
        assert_eq!(cur.consumed(), 3);
        assert_eq!(cur.take(), Err(Error::BudgetExceeded { budget: 3 }));
    }
}
