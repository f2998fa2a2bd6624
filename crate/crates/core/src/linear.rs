//! Finite formal sums with coefficients in a ring of characteristic zero.
//!
//! The coefficient type is generic; everything in this crate only ever
//! needs `0`, `1`, `+`, `-`, `*`, so exact types such as `i64`,
//! `Ratio<i64>` or [`crate::Rational`] all work. The CLI uses `Rational`.

use std::collections::btree_map::{self, BTreeMap};
use std::fmt;
use std::ops::{Add, AddAssign, Neg, Sub, SubAssign};

use num_traits::Signed;

/// Coefficient ring for [`LinComb`].
pub trait Coefficient: Clone + Signed + fmt::Debug {}

impl<C: Clone + Signed + fmt::Debug> Coefficient for C {}

/// A finite formal sum `Σ c_t · t` over canonical-form terms. Zero
/// coefficients are never stored, so structural equality is equality of
/// sums.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LinComb<T: Ord, C> {
    terms: BTreeMap<T, C>,
}

impl<T: Ord, C> Default for LinComb<T, C> {
    fn default() -> Self {
        LinComb { terms: BTreeMap::new() }
    }
}

impl<T: Ord, C: Coefficient> LinComb<T, C> {
    pub fn zero() -> Self {
        Self::default()
    }

    /// The single term `1 · t`.
    pub fn term(t: T) -> Self {
        let mut out = Self::zero();
        out.add_term(t, C::one());
        out
    }

    pub fn add_term(&mut self, t: T, c: C) {
        if c.is_zero() {
            return;
        }
        match self.terms.entry(t) {
            btree_map::Entry::Vacant(e) => {
                e.insert(c);
            }
            btree_map::Entry::Occupied(mut e) => {
                let sum = e.get().clone() + c;
                if sum.is_zero() {
                    e.remove();
                } else {
                    *e.get_mut() = sum;
                }
            }
        }
    }

    pub fn add_scaled(&mut self, other: &Self, c: &C)
    where
        T: Clone,
    {
        for (t, d) in &other.terms {
            self.add_term(t.clone(), d.clone() * c.clone());
        }
    }

    pub fn scaled(&self, c: &C) -> Self
    where
        T: Clone,
    {
        let mut out = Self::zero();
        out.add_scaled(self, c);
        out
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    /// Number of distinct terms.
    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn coeff(&self, t: &T) -> C {
        self.terms.get(t).cloned().unwrap_or_else(C::zero)
    }

    pub fn iter(&self) -> impl Iterator<Item = (&T, &C)> {
        self.terms.iter()
    }

    pub fn terms(&self) -> impl Iterator<Item = &T> {
        self.terms.keys()
    }

    /// Sum of all coefficients.
    pub fn mass(&self) -> C {
        self.terms.values().fold(C::zero(), |acc, c| acc + c.clone())
    }

    /// Pushes every term through `f`, merging terms that collide.
    pub fn map_terms<U: Ord>(&self, mut f: impl FnMut(&T) -> U) -> LinComb<U, C> {
        let mut out = LinComb::zero();
        for (t, c) in &self.terms {
            out.add_term(f(t), c.clone());
        }
        out
    }

    /// Re-expresses the coefficients in another ring.
    pub fn map_coeffs<D: Coefficient>(&self, mut f: impl FnMut(&C) -> D) -> LinComb<T, D>
    where
        T: Clone,
    {
        let mut out = LinComb::zero();
        for (t, c) in &self.terms {
            out.add_term(t.clone(), f(c));
        }
        out
    }
}

impl<T: Ord, C: Coefficient> FromIterator<(T, C)> for LinComb<T, C> {
    fn from_iter<I: IntoIterator<Item = (T, C)>>(iter: I) -> Self {
        let mut out = Self::zero();
        for (t, c) in iter {
            out.add_term(t, c);
        }
        out
    }
}

impl<T: Ord, C: Coefficient> Extend<(T, C)> for LinComb<T, C> {
    fn extend<I: IntoIterator<Item = (T, C)>>(&mut self, iter: I) {
        for (t, c) in iter {
            self.add_term(t, c);
        }
    }
}

impl<T: Ord, C> IntoIterator for LinComb<T, C> {
    type Item = (T, C);
    type IntoIter = btree_map::IntoIter<T, C>;

    fn into_iter(self) -> Self::IntoIter {
        self.terms.into_iter()
    }
}

impl<T: Ord + Clone, C: Coefficient> AddAssign<&LinComb<T, C>> for LinComb<T, C> {
    fn add_assign(&mut self, rhs: &LinComb<T, C>) {
        self.add_scaled(rhs, &C::one());
    }
}

impl<T: Ord + Clone, C: Coefficient> SubAssign<&LinComb<T, C>> for LinComb<T, C> {
    fn sub_assign(&mut self, rhs: &LinComb<T, C>) {
        self.add_scaled(rhs, &-C::one());
    }
}

impl<T: Ord + Clone, C: Coefficient> Add for &LinComb<T, C> {
    type Output = LinComb<T, C>;

    fn add(self, rhs: Self) -> LinComb<T, C> {
        let mut out = self.clone();
        out += rhs;
        out
    }
}

impl<T: Ord + Clone, C: Coefficient> Sub for &LinComb<T, C> {
    type Output = LinComb<T, C>;

    fn sub(self, rhs: Self) -> LinComb<T, C> {
        let mut out = self.clone();
        out -= rhs;
        out
    }
}

impl<T: Ord + Clone, C: Coefficient> Neg for &LinComb<T, C> {
    type Output = LinComb<T, C>;

    fn neg(self) -> LinComb<T, C> {
        self.scaled(&-C::one())
    }
}

impl<T: Ord + fmt::Display, C: Coefficient + fmt::Display> fmt::Display for LinComb<T, C> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        for (i, (t, c)) in self.terms.iter().enumerate() {
            if c.is_negative() {
                write!(f, "{}", if i == 0 { "-" } else { " - " })?;
            } else if i > 0 {
                write!(f, " + ")?;
            }
            let abs = c.abs();
            if abs.is_one() {
                write!(f, "{t}")?;
            } else {
                write!(f, "{abs}·{t}")?;
            }
        }
        Ok(())
    }
}
