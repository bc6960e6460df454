/// Fixed-capacity set of state indices, used for subset construction and CYK cells.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub(crate) struct StateSet {
    words: Vec<u64>,
}

impl StateSet {
    pub fn new(capacity: usize) -> Self {
        StateSet {
            words: vec![0; capacity.div_ceil(64).max(1)],
        }
    }

    pub fn insert(&mut self, i: usize) -> bool {
        let (w, b) = (i / 64, 1u64 << (i % 64));
        let fresh = self.words[w] & b == 0;
        self.words[w] |= b;
        fresh
    }

    pub fn contains(&self, i: usize) -> bool {
        self.words[i / 64] & (1u64 << (i % 64)) != 0
    }

    pub fn is_empty(&self) -> bool {
        self.words.iter().all(|&w| w == 0)
    }

    pub fn intersects(&self, other: &StateSet) -> bool {
        self.words.iter().zip(&other.words).any(|(a, b)| a & b != 0)
    }

    pub fn iter(&self) -> impl Iterator<Item = usize> + '_ {
        self.words.iter().enumerate().flat_map(|(wi, &w)| {
            let mut rest = w;
            std::iter::from_fn(move || {
                if rest == 0 {
                    return None;
                }
                let b = rest.trailing_zeros() as usize;
                rest &= rest - 1;
                Some(wi * 64 + b)
            })
        })
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn insert_iter_union() {
        let mut s = StateSet::new(130);
        assert!(s.is_empty());
        assert!(s.insert(3));
        assert!(!s.insert(3));
        s.insert(129);
        let mut t = StateSet::new(130);
        t.insert(64);
        assert!(!s.intersects(&t));
        s.insert(64);
        assert_eq!(s.iter().collect::<Vec<_>>(), vec![3, 64, 129]);
        assert!(s.intersects(&t));
    }
}
