use std::fmt;

use crate::atom::Atom;

/// A finite set of atoms, stored sorted and duplicate-free.
#[derive(Clone, Debug, Default, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Block(Vec<Atom>);

impl Block {
    pub fn empty() -> Self {
        Block(Vec::new())
    }

    pub fn new<I: IntoIterator<Item = Atom>>(atoms: I) -> Self {
        let mut v: Vec<Atom> = atoms.into_iter().collect();
        v.sort_unstable();
        v.dedup();
        Block(v)
    }

    /// Shorthand used heavily in tests: a block from raw ids.
    pub fn of(ids: &[u32]) -> Self {
        Self::new(ids.iter().copied().map(Atom))
    }

    pub fn atoms(&self) -> &[Atom] {
        &self.0
    }

    pub fn iter(&self) -> impl Iterator<Item = Atom> + '_ {
        self.0.iter().copied()
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn min_atom(&self) -> Option<Atom> {
        self.0.first().copied()
    }

    pub fn contains(&self, atom: Atom) -> bool {
        self.0.binary_search(&atom).is_ok()
    }

    pub fn is_subset(&self, other: &Block) -> bool {
        let mut it = other.0.iter();
        self.0.iter().all(|a| it.any(|b| b == a))
    }

    pub fn is_disjoint(&self, other: &Block) -> bool {
        let (mut i, mut j) = (0, 0);
        while i < self.0.len() && j < other.0.len() {
            match self.0[i].cmp(&other.0[j]) {
                std::cmp::Ordering::Less => i += 1,
                std::cmp::Ordering::Greater => j += 1,
                std::cmp::Ordering::Equal => return false,
            }
        }
        true
    }

    pub fn meets(&self, other: &Block) -> bool {
        !self.is_disjoint(other)
    }

    pub fn union(&self, other: &Block) -> Block {
        let mut out = Vec::with_capacity(self.0.len() + other.0.len());
        let (mut i, mut j) = (0, 0);
        while i < self.0.len() && j < other.0.len() {
            match self.0[i].cmp(&other.0[j]) {
                std::cmp::Ordering::Less => {
                    out.push(self.0[i]);
                    i += 1;
                }
                std::cmp::Ordering::Greater => {
                    out.push(other.0[j]);
                    j += 1;
                }
                std::cmp::Ordering::Equal => {
                    out.push(self.0[i]);
                    i += 1;
                    j += 1;
                }
            }
        }
        out.extend_from_slice(&self.0[i..]);
        out.extend_from_slice(&other.0[j..]);
        Block(out)
    }

    pub fn intersection(&self, other: &Block) -> Block {
        Block(self.0.iter().copied().filter(|&a| other.contains(a)).collect())
    }

    pub fn difference(&self, other: &Block) -> Block {
        Block(self.0.iter().copied().filter(|&a| !other.contains(a)).collect())
    }

    pub fn insert(&mut self, atom: Atom) {
        if let Err(pos) = self.0.binary_search(&atom) {
            self.0.insert(pos, atom);
        }
    }
}

impl FromIterator<Atom> for Block {
    fn from_iter<I: IntoIterator<Item = Atom>>(iter: I) -> Self {
        Block::new(iter)
    }
}

impl<'a> IntoIterator for &'a Block {
    type Item = &'a Atom;
    type IntoIter = std::slice::Iter<'a, Atom>;

    fn into_iter(self) -> Self::IntoIter {
        self.0.iter()
    }
}

impl fmt::Display for Block {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{{")?;
        for (i, a) in self.0.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{a}")?;
        }
        write!(f, "}}")
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn set_ops() {
        let a = Block::of(&[3, 1, 2, 2]);
        let b = Block::of(&[2, 5]);
        assert_eq!(a, Block::of(&[1, 2, 3]));
        assert_eq!(a.union(&b), Block::of(&[1, 2, 3, 5]));
        assert_eq!(a.intersection(&b), Block::of(&[2]));
        assert_eq!(a.difference(&b), Block::of(&[1, 3]));
        assert!(a.meets(&b));
        assert!(Block::of(&[1, 3]).is_subset(&a));
        assert!(!b.is_subset(&a));
        assert!(Block::empty().is_subset(&a));
        assert!(Block::of(&[7]).is_disjoint(&a));
    }
}
