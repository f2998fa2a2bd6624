//! Atoms are the elements of the ambient finite set. They are dense integer
//! ids; an [`Interner`] maps human-readable labels onto them.

use std::cmp::Ordering;
use std::collections::HashMap;
use std::fmt;

/// An element of the ambient set.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Atom(pub u32);

impl Atom {
    pub fn index(self) -> usize {
        self.0 as usize
    }
}

impl From<u32> for Atom {
    fn from(id: u32) -> Self {
        Atom(id)
    }
}

impl fmt::Display for Atom {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.0)
    }
}

/// Bidirectional map between string labels and [`Atom`] ids.
///
/// Ids are handed out in insertion order. Use [`Interner::from_labels`] to get
/// ids whose order agrees with [`natural_cmp`] on the labels, which keeps
/// canonical forms independent of the order labels were first seen in.
#[derive(Clone, Debug, Default)]
pub struct Interner {
    labels: Vec<String>,
    ids: HashMap<String, Atom>,
}

impl Interner {
    pub fn new() -> Self {
        Self::default()
    }

    /// Builds an interner over `labels` sorted by [`natural_cmp`].
    pub fn from_labels<I, S>(labels: I) -> Self
    where
        I: IntoIterator<Item = S>,
        S: Into<String>,
    {
        let mut all: Vec<String> = labels.into_iter().map(Into::into).collect();
        all.sort_by(|a, b| natural_cmp(a, b));
        all.dedup();
        let mut interner = Self::new();
        for label in all {
            interner.intern(&label);
        }
        interner
    }

    pub fn intern(&mut self, label: &str) -> Atom {
        if let Some(&atom) = self.ids.get(label) {
            return atom;
        }
        let atom = Atom(self.labels.len() as u32);
        self.labels.push(label.to_owned());
        self.ids.insert(label.to_owned(), atom);
        atom
    }

    pub fn get(&self, label: &str) -> Option<Atom> {
        self.ids.get(label).copied()
    }

    /// Label of `atom`; atoms not created by this interner render as `#id`.
    pub fn label(&self, atom: Atom) -> String {
        self.labels
            .get(atom.index())
            .cloned()
            .unwrap_or_else(|| format!("#{}", atom.0))
    }

    pub fn len(&self) -> usize {
        self.labels.len()
    }

    pub fn is_empty(&self) -> bool {
        self.labels.is_empty()
    }
}

/// Orders labels numerically when both are unsigned integers, puts numbers
/// before everything else, and falls back to byte order.
pub fn natural_cmp(a: &str, b: &str) -> Ordering {
    fn numeric(s: &str) -> Option<&str> {
        (!s.is_empty() && s.bytes().all(|c| c.is_ascii_digit())).then(|| s.trim_start_matches('0'))
    }
    match (numeric(a), numeric(b)) {
        (Some(x), Some(y)) => x.len().cmp(&y.len()).then_with(|| x.cmp(y)).then_with(|| a.cmp(b)),
        (Some(_), None) => Ordering::Less,
        (None, Some(_)) => Ordering::Greater,
        (None, None) => a.cmp(b),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn natural_order_puts_numbers_first_and_numeric() {
        let mut v = vec!["10", "b", "2", "a", "1", "02"];
        v.sort_by(|a, b| natural_cmp(a, b));
        assert_eq!(v, ["1", "02", "2", "10", "a", "b"]);
    }

    #[test]
    fn interner_is_order_insensitive_with_from_labels() {
        let a = Interner::from_labels(["3", "1", "e1", "2"]);
        let b = Interner::from_labels(["e1", "2", "3", "1", "1"]);
        for l in ["1", "2", "3", "e1"] {
            assert_eq!(a.get(l), b.get(l));
        }
        assert_eq!(a.get("1"), Some(Atom(0)));
        assert_eq!(a.label(Atom(3)), "e1");
        assert_eq!(a.label(Atom(9)), "#9");
    }
}
