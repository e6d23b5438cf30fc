//! Ordinals below `w^w` in Cantor normal form.
//!
//! An ordinal is stored as its Cantor normal form
//! `w^e1*c1 + w^e2*c2 + ... + w^ek*ck` with strictly decreasing exponents
//! `e1 > e2 > ... > ek >= 0` and positive coefficients. The empty sum is 0.
//!
//! Two facts make this representation convenient:
//!
//! * lexicographic comparison of the term lists coincides with the ordinal
//!   order, so `#[derive(Ord)]` is the real order;
//! * the canonical fundamental sequence of a limit ordinal has a one-line
//!   description: writing `a = g + w^p` (splitting one copy off the least
//!   term, `p >= 1`), the n-th member is `g + w^(p-1)*n`. The sequence is
//!   strictly increasing with supremum `a`. Downstream constructions are
//!   insensitive to the choice of sequence, but fixing this one makes every
//!   output reproducible.
//!
//! Exponents are capped (default [`DEFAULT_EXPONENT_CAP`]) so recursion
//! depths stay desk-scale; the cap is configurable per parse.

use alloc::string::{String, ToString};
use alloc::vec::Vec;

use crate::error::{Error, Result};

/// Default maximum exponent: representable ordinals are below `w^5`.
pub const DEFAULT_EXPONENT_CAP: u32 = 4;

/// An ordinal below `w^w` in Cantor normal form.
///
/// The derived ordering is the ordinal order (lexicographic comparison of
/// term lists with strictly decreasing exponents).
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct OrdinalCnf {
    terms: Vec<(u32, u64)>,
}

/// Classification used to dispatch recursive definitions over ordinals.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum OrdinalClass {
    /// The ordinal 0.
    Zero,
    /// A successor ordinal, carrying its predecessor.
    Successor(OrdinalCnf),
    /// A limit ordinal (least term has exponent >= 1).
    Limit,
}

impl OrdinalCnf {
    /// The ordinal 0.
    pub fn zero() -> Self {
        OrdinalCnf { terms: Vec::new() }
    }

    /// The finite ordinal `n`.
    pub fn finite(n: u64) -> Self {
        if n == 0 {
            Self::zero()
        } else {
            OrdinalCnf {
                terms: alloc::vec![(0, n)],
            }
        }
    }

    /// Builds an ordinal from `(exponent, coefficient)` terms, validating
    /// the normal-form invariants (strictly decreasing exponents, positive
    /// coefficients).
    pub fn from_terms(terms: Vec<(u32, u64)>) -> Result<Self> {
        for window in terms.windows(2) {
            if window[0].0 <= window[1].0 {
                return Err(Error::OrdinalSyntax {
                    text: String::new(),
                    reason: "exponents must strictly decrease",
                });
            }
        }
        if terms.iter().any(|&(_, c)| c == 0) {
            return Err(Error::OrdinalSyntax {
                text: String::new(),
                reason: "coefficients must be positive",
            });
        }
        Ok(OrdinalCnf { terms })
    }

    /// The `(exponent, coefficient)` terms, exponents strictly decreasing.
    pub fn terms(&self) -> &[(u32, u64)] {
        &self.terms
    }

    /// True iff this is the ordinal 0.
    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    /// Zero / successor / limit dispatch. Successors carry the predecessor.
    pub fn classify(&self) -> OrdinalClass {
        match self.terms.last() {
            None => OrdinalClass::Zero,
            Some(&(0, c)) => {
                let mut terms = self.terms.clone();
                if c == 1 {
                    terms.pop();
                } else {
                    terms.last_mut().unwrap().1 = c - 1;
                }
                OrdinalClass::Successor(OrdinalCnf { terms })
            }
            Some(_) => OrdinalClass::Limit,
        }
    }

    /// The n-th member (n >= 1) of the canonical fundamental sequence of a
    /// limit ordinal: for `a = g + w^p` the result is `g + w^(p-1)*n`.
    ///
    /// Errors on zero and successor ordinals and on `n == 0`.
    pub fn fundamental_sequence(&self, n: u64) -> Result<OrdinalCnf> {
        if n == 0 {
            return Err(Error::InvalidParameter(
                "fundamental sequence index must be >= 1",
            ));
        }
        let &(p, c) = match self.terms.last() {
            Some(t) if t.0 >= 1 => t,
            _ => {
                return Err(Error::InvalidParameter(
                    "fundamental sequence of a non-limit ordinal",
                ))
            }
        };
        let mut terms = self.terms.clone();
        if c == 1 {
            terms.pop();
        } else {
            terms.last_mut().unwrap().1 = c - 1;
        }
        terms.push((p - 1, n));
        Ok(OrdinalCnf { terms })
    }

    /// Renders the ordinal in the textual grammar accepted by
    /// [`parse_ordinal`]; `parse . render` is the identity.
    pub fn render(&self) -> String {
        if self.terms.is_empty() {
            return "0".to_string();
        }
        let mut out = String::new();
        for (i, &(e, c)) in self.terms.iter().enumerate() {
            if i > 0 {
                out.push('+');
            }
            match (e, c) {
                (0, c) => out.push_str(&c.to_string()),
                (1, 1) => out.push('w'),
                (1, c) => {
                    out.push_str("w*");
                    out.push_str(&c.to_string());
                }
                (e, 1) => {
                    out.push_str("w^");
                    out.push_str(&e.to_string());
                }
                (e, c) => {
                    out.push_str("w^");
                    out.push_str(&e.to_string());
                    out.push('*');
                    out.push_str(&c.to_string());
                }
            }
        }
        out
    }
}

/// Parses an ordinal expression with the default exponent cap.
///
/// Grammar: `term ("+" term)*` with `term = w^E*C | w^E | w*C | w | N`,
/// `E`, `C` positive integers, `N` a non-negative integer (`0` only as the
/// whole expression). Terms must already be in normal form (strictly
/// decreasing exponents).
pub fn parse_ordinal(text: &str) -> Result<OrdinalCnf> {
    parse_ordinal_with_cap(text, DEFAULT_EXPONENT_CAP)
}

/// [`parse_ordinal`] with an explicit exponent cap.
pub fn parse_ordinal_with_cap(text: &str, cap: u32) -> Result<OrdinalCnf> {
    let bad = |reason: &'static str| Error::OrdinalSyntax {
        text: text.to_string(),
        reason,
    };
    let s = text.trim();
    if s.is_empty() {
        return Err(bad("empty ordinal expression"));
    }
    if s == "0" {
        return Ok(OrdinalCnf::zero());
    }
    let mut terms: Vec<(u32, u64)> = Vec::new();
    for raw in s.split('+') {
        let t = raw.trim();
        if t.is_empty() {
            return Err(bad("empty term"));
        }
        let (e, c) = if let Some(rest) = t.strip_prefix('w') {
            if let Some(rest) = rest.strip_prefix('^') {
                // w^E or w^E*C
                let (e_str, c_str) = match rest.split_once('*') {
                    Some((e, c)) => (e.trim(), Some(c.trim())),
                    None => (rest.trim(), None),
                };
                let e: u32 = e_str.parse().map_err(|_| bad("malformed exponent"))?;
                if e == 0 {
                    return Err(bad("exponent must be positive"));
                }
                let c: u64 = match c_str {
                    Some(c) => c.parse().map_err(|_| bad("malformed coefficient"))?,
                    None => 1,
                };
                (e, c)
            } else if let Some(c_str) = rest.strip_prefix('*') {
                let c: u64 = c_str
                    .trim()
                    .parse()
                    .map_err(|_| bad("malformed coefficient"))?;
                (1, c)
            } else if rest.is_empty() {
                (1, 1)
            } else {
                return Err(bad("malformed term after 'w'"));
            }
        } else {
            let n: u64 = t.parse().map_err(|_| bad("malformed finite term"))?;
            (0, n)
        };
        if c == 0 {
            return Err(bad("coefficients must be positive"));
        }
        if e > cap {
            return Err(Error::ExponentCap { exponent: e, cap });
        }
        if let Some(&(prev_e, _)) = terms.last() {
            if e >= prev_e {
                return Err(bad("exponents must strictly decrease"));
            }
        }
        terms.push((e, c));
    }
    Ok(OrdinalCnf { terms })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn ord(s: &str) -> OrdinalCnf {
        parse_ordinal(s).unwrap()
    }

    #[test]
    fn parse_examples() {
        assert_eq!(ord("0"), OrdinalCnf::zero());
        assert_eq!(ord("w*2+3").terms(), &[(1, 2), (0, 3)]);
        assert_eq!(ord("w^2+w+1").terms(), &[(2, 1), (1, 1), (0, 1)]);
        assert_eq!(ord("7"), OrdinalCnf::finite(7));
    }

    #[test]
    fn parse_rejects_non_normal_forms() {
        assert!(parse_ordinal("w+w").is_err());
        assert!(parse_ordinal("1+w").is_err());
        assert!(parse_ordinal("3+2").is_err());
        assert!(parse_ordinal("w*0").is_err());
        assert!(parse_ordinal("w^0").is_err());
        assert!(parse_ordinal("").is_err());
        assert!(parse_ordinal("x").is_err());
        assert!(matches!(
            parse_ordinal("w^5"),
            Err(Error::ExponentCap {
                exponent: 5,
                cap: 4
            })
        ));
        assert!(parse_ordinal_with_cap("w^5", 5).is_ok());
    }

    #[test]
    fn render_round_trip() {
        for s in ["0", "1", "w", "w*2", "w+4", "w^2", "w^3*2+w^2+w*5+9", "w^4"] {
            assert_eq!(ord(s).render(), s);
        }
    }

    #[test]
    fn classification() {
        assert_eq!(ord("0").classify(), OrdinalClass::Zero);
        assert_eq!(ord("3").classify(), OrdinalClass::Successor(ord("2")));
        assert_eq!(ord("1").classify(), OrdinalClass::Successor(ord("0")));
        assert_eq!(ord("w").classify(), OrdinalClass::Limit);
        assert_eq!(ord("w^2+w*3").classify(), OrdinalClass::Limit);
        assert_eq!(ord("w+1").classify(), OrdinalClass::Successor(ord("w")));
    }

    #[test]
    fn canonical_fundamental_sequences() {
        assert_eq!(ord("w").fundamental_sequence(3).unwrap(), ord("3"));
        assert_eq!(ord("w*2").fundamental_sequence(4).unwrap(), ord("w+4"));
        assert_eq!(ord("w^2").fundamental_sequence(2).unwrap(), ord("w*2"));
        assert_eq!(ord("w^2+w").fundamental_sequence(5).unwrap(), ord("w^2+5"));
        assert!(ord("3").fundamental_sequence(1).is_err());
        assert!(ord("0").fundamental_sequence(1).is_err());
        assert!(ord("w").fundamental_sequence(0).is_err());
    }

    #[test]
    fn derived_order_is_the_ordinal_order() {
        let sorted = [
            ord("0"),
            ord("1"),
            ord("5"),
            ord("w"),
            ord("w+1"),
            ord("w+9"),
            ord("w*2"),
            ord("w*3+1"),
            ord("w^2"),
            ord("w^2+w*9+4"),
            ord("w^2*2"),
            ord("w^3"),
        ];
        for pair in sorted.windows(2) {
            assert!(
                pair[0] < pair[1],
                "{} < {}",
                pair[0].render(),
                pair[1].render()
            );
        }
    }

    #[test]
    fn fundamental_sequence_is_increasing_with_supremum_below_the_ordinal() {
        // exhaustive over limit ordinals below w^3 with coefficients <= 3
        let mut limits: alloc::vec::Vec<OrdinalCnf> = alloc::vec::Vec::new();
        for c2 in 0..=3u64 {
            for c1 in 0..=3u64 {
                for c0 in 0..=3u64 {
                    let mut terms = alloc::vec::Vec::new();
                    if c2 > 0 {
                        terms.push((2, c2));
                    }
                    if c1 > 0 {
                        terms.push((1, c1));
                    }
                    if c0 > 0 {
                        terms.push((0, c0));
                    }
                    let o = OrdinalCnf::from_terms(terms).unwrap();
                    if matches!(o.classify(), OrdinalClass::Limit) {
                        limits.push(o);
                    }
                }
            }
        }
        assert!(!limits.is_empty());
        for a in limits {
            for n in 1..=20u64 {
                let fa_n = a.fundamental_sequence(n).unwrap();
                let fa_next = a.fundamental_sequence(n + 1).unwrap();
                assert!(fa_n < fa_next);
                assert!(fa_next < a);
            }
        }
    }
}
