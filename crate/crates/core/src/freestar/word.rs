use std::cmp::Ordering;

/// A free monomial; letters index an [`Alphabet`](super::Alphabet). Empty is the unit.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash)]
pub struct Word(pub Vec<u32>);

impl Word {
    pub fn unit() -> Self {
        Word(Vec::new())
    }

    pub fn letter(g: u32) -> Self {
        Word(vec![g])
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn letters(&self) -> &[u32] {
        &self.0
    }

    pub fn concat(&self, o: &Word) -> Word {
        let mut v = Vec::with_capacity(self.len() + o.len());
        v.extend_from_slice(&self.0);
        v.extend_from_slice(&o.0);
        Word(v)
    }

    pub fn reversed(&self) -> Word {
        Word(self.0.iter().rev().copied().collect())
    }

    pub fn slice(&self, from: usize, to: usize) -> Word {
        Word(self.0[from..to].to_vec())
    }

    /// Every word of length exactly `len` over `n` letters, in increasing order.
    pub fn all_of_length(n: u32, len: usize) -> Vec<Word> {
        let mut out = vec![Word::unit()];
        for _ in 0..len {
            out = out.into_iter().flat_map(|w| (0..n).map(move |g| w.concat(&Word::letter(g)))).collect();
        }
        out
    }

    /// Every word of length at most `len`, in increasing order.
    pub fn all_up_to(n: u32, len: usize) -> Vec<Word> {
        (0..=len).flat_map(|k| Word::all_of_length(n, k)).collect()
    }
}

impl From<Vec<u32>> for Word {
    fn from(v: Vec<u32>) -> Self {
        Word(v)
    }
}

/// Degree first, then lexicographic on letter indices.
impl Ord for Word {
    fn cmp(&self, o: &Self) -> Ordering {
        self.len().cmp(&o.len()).then_with(|| self.0.cmp(&o.0))
    }
}

impl PartialOrd for Word {
    fn partial_cmp(&self, o: &Self) -> Option<Ordering> {
        Some(self.cmp(o))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn deglex() {
        assert!(Word(vec![5]) < Word(vec![0, 0]));
        assert!(Word(vec![0, 1]) < Word(vec![1, 0]));
        assert!(Word::unit() < Word(vec![0]));
    }

    #[test]
    fn enumeration_counts() {
        assert_eq!(Word::all_up_to(2, 3).len(), 15);
        let w = Word::all_of_length(3, 2);
        assert!(w.windows(2).all(|p| p[0] < p[1]));
    }
}
