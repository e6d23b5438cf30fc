//! Sparse vectors with exact rational coordinates over the unit basis
//! `e_1, e_2, ...`, in canonical form: entries sorted by strictly
//! increasing index with no explicit zeros.

use alloc::vec::Vec;
use num_traits::{Signed, Zero};

use crate::error::{Error, Result};
use crate::rat::Rational;
use crate::schreier::FiniteSet;

/// A finitely supported vector with rational coordinates.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RationalVector {
    entries: Vec<(u64, Rational)>,
}

impl RationalVector {
    /// The zero vector.
    pub fn zero() -> Self {
        RationalVector {
            entries: Vec::new(),
        }
    }

    /// The unit vector `e_i` (`i >= 1`).
    pub fn unit(i: u64) -> Self {
        assert!(i >= 1, "basis indices start at 1");
        RationalVector {
            entries: alloc::vec![(i, Rational::one_value())],
        }
    }

    /// Builds a vector from canonical entries: indices >= 1, strictly
    /// increasing, values nonzero.
    pub fn from_entries(entries: Vec<(u64, Rational)>) -> Result<Self> {
        if entries.iter().any(|(i, _)| *i == 0) {
            return Err(Error::NonCanonicalVector("indices must be >= 1"));
        }
        if entries.windows(2).any(|w| w[0].0 >= w[1].0) {
            return Err(Error::NonCanonicalVector("indices must strictly increase"));
        }
        if entries.iter().any(|(_, v)| v.is_zero()) {
            return Err(Error::NonCanonicalVector("entries must be nonzero"));
        }
        Ok(RationalVector { entries })
    }

    /// Builds a vector from arbitrary `(index, value)` pairs: pairs with the
    /// same index are summed, zeros dropped, and the result sorted.
    pub fn collect(pairs: impl IntoIterator<Item = (u64, Rational)>) -> Result<Self> {
        let mut acc: alloc::collections::BTreeMap<u64, Rational> =
            alloc::collections::BTreeMap::new();
        for (i, v) in pairs {
            if i == 0 {
                return Err(Error::NonCanonicalVector("indices must be >= 1"));
            }
            let slot = acc.entry(i).or_insert_with(Rational::zero);
            *slot += v;
        }
        Ok(RationalVector {
            entries: acc.into_iter().filter(|(_, v)| !v.is_zero()).collect(),
        })
    }

    /// The canonical entries, sorted by index.
    pub fn entries(&self) -> &[(u64, Rational)] {
        &self.entries
    }

    /// The support as a finite set of indices.
    pub fn support(&self) -> FiniteSet {
        FiniteSet::new(self.entries.iter().map(|(i, _)| *i).collect())
            .expect("entries are canonical")
    }

    /// The coordinate at index `i` (zero when outside the support).
    pub fn get(&self, i: u64) -> Rational {
        match self.entries.binary_search_by_key(&i, |(j, _)| *j) {
            Ok(pos) => self.entries[pos].1.clone(),
            Err(_) => Rational::zero(),
        }
    }

    /// True iff the vector is zero.
    pub fn is_zero(&self) -> bool {
        self.entries.is_empty()
    }

    /// Largest support index, if any.
    pub fn max_support(&self) -> Option<u64> {
        self.entries.last().map(|(i, _)| *i)
    }

    /// Smallest support index, if any.
    pub fn min_support(&self) -> Option<u64> {
        self.entries.first().map(|(i, _)| *i)
    }

    /// Scalar multiple (zero scalar gives the zero vector).
    pub fn scale(&self, c: &Rational) -> RationalVector {
        if c.is_zero() {
            return RationalVector::zero();
        }
        RationalVector {
            entries: self.entries.iter().map(|(i, v)| (*i, v * c)).collect(),
        }
    }

    /// Coordinatewise sum.
    pub fn add(&self, other: &RationalVector) -> RationalVector {
        let mut out: Vec<(u64, Rational)> =
            Vec::with_capacity(self.entries.len() + other.entries.len());
        let (mut a, mut b) = (
            self.entries.iter().peekable(),
            other.entries.iter().peekable(),
        );
        loop {
            match (a.peek(), b.peek()) {
                (Some((i, _)), Some((j, _))) if i < j => out.push(a.next().unwrap().clone()),
                (Some((i, _)), Some((j, _))) if i > j => out.push(b.next().unwrap().clone()),
                (Some(_), Some(_)) => {
                    let (i, u) = a.next().unwrap();
                    let (_, v) = b.next().unwrap();
                    let s = u + v;
                    if !s.is_zero() {
                        out.push((*i, s));
                    }
                }
                (Some(_), None) => out.push(a.next().unwrap().clone()),
                (None, Some(_)) => out.push(b.next().unwrap().clone()),
                (None, None) => break,
            }
        }
        RationalVector { entries: out }
    }

    /// Coordinatewise difference.
    pub fn sub(&self, other: &RationalVector) -> RationalVector {
        self.add(&other.scale(&crate::rat::int(-1)))
    }

    /// Restriction to the indices in `[lo, hi]` (an interval restriction).
    pub fn restrict_interval(&self, lo: u64, hi: u64) -> RationalVector {
        RationalVector {
            entries: self
                .entries
                .iter()
                .filter(|(i, _)| *i >= lo && *i <= hi)
                .cloned()
                .collect(),
        }
    }

    /// Restriction to an arbitrary index set.
    pub fn restrict_set(&self, set: &FiniteSet) -> RationalVector {
        RationalVector {
            entries: self
                .entries
                .iter()
                .filter(|(i, _)| set.elements().binary_search(i).is_ok())
                .cloned()
                .collect(),
        }
    }

    /// Sum of absolute values of the coordinates.
    pub fn l1(&self) -> Rational {
        self.entries
            .iter()
            .fold(Rational::zero(), |acc, (_, v)| acc + v.abs())
    }

    /// Largest absolute coordinate (zero for the zero vector).
    pub fn sup_abs(&self) -> Rational {
        self.entries
            .iter()
            .map(|(_, v)| v.abs())
            .max()
            .unwrap_or_else(Rational::zero)
    }

    /// The coordinatewise absolute value.
    pub fn abs(&self) -> RationalVector {
        RationalVector {
            entries: self.entries.iter().map(|(i, v)| (*i, v.abs())).collect(),
        }
    }

    /// The absolute coordinate values in support order, discarding indices.
    pub fn abs_values(&self) -> Vec<Rational> {
        self.entries.iter().map(|(_, v)| v.abs()).collect()
    }
}

/// Internal helper so `unit` can avoid naming `num_traits::One` publicly.
trait OneValue {
    fn one_value() -> Self;
}

impl OneValue for Rational {
    fn one_value() -> Self {
        crate::rat::int(1)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rat::{int, q};
    use alloc::vec;

    #[test]
    fn canonical_form_is_enforced() {
        assert!(RationalVector::from_entries(vec![(1, int(1)), (3, q(1, 2))]).is_ok());
        assert!(RationalVector::from_entries(vec![(0, int(1))]).is_err());
        assert!(RationalVector::from_entries(vec![(2, int(1)), (2, int(1))]).is_err());
        assert!(RationalVector::from_entries(vec![(3, int(1)), (2, int(1))]).is_err());
        assert!(RationalVector::from_entries(vec![(1, int(0))]).is_err());
    }

    #[test]
    fn collect_merges_and_drops_zeros() {
        let x = RationalVector::collect(vec![(3, q(1, 2)), (1, int(1)), (3, q(-1, 2))]).unwrap();
        assert_eq!(x.entries(), &[(1, int(1))]);
        assert!(RationalVector::collect(vec![(2, int(5)), (2, int(-5))])
            .unwrap()
            .is_zero());
    }

    #[test]
    fn arithmetic_and_restrictions() {
        let x =
            RationalVector::from_entries(vec![(1, int(1)), (2, q(1, 2)), (5, int(-2))]).unwrap();
        let y = RationalVector::from_entries(vec![(2, q(-1, 2)), (3, int(4))]).unwrap();
        let s = x.add(&y);
        assert_eq!(s.entries(), &[(1, int(1)), (3, int(4)), (5, int(-2))]);
        assert_eq!(x.sub(&x), RationalVector::zero());
        assert_eq!(x.get(2), q(1, 2));
        assert_eq!(x.get(4), int(0));
        assert_eq!(
            x.restrict_interval(2, 5).entries(),
            &[(2, q(1, 2)), (5, int(-2))]
        );
        let set = crate::schreier::FiniteSet::new(vec![1, 5]).unwrap();
        assert_eq!(x.restrict_set(&set).entries(), &[(1, int(1)), (5, int(-2))]);
        assert_eq!(x.l1(), q(7, 2));
        assert_eq!(x.sup_abs(), int(2));
        assert_eq!(x.abs().get(5), int(2));
        assert_eq!(x.scale(&int(0)), RationalVector::zero());
        assert_eq!(x.support().elements(), &[1, 2, 5]);
        assert_eq!(x.min_support(), Some(1));
        assert_eq!(x.max_support(), Some(5));
    }

    #[test]
    fn unit_vectors() {
        let e3 = RationalVector::unit(3);
        assert_eq!(e3.entries(), &[(3, int(1))]);
        assert_eq!(e3.l1(), int(1));
    }
}
