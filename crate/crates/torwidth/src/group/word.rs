//! Words in a free group, stored as letter sequences.
//!
//! Words are kept as given; free reduction is a separate operation, so a
//! relator entered as `a A b` survives verbatim until something asks for
//! its reduced form. Everything downstream (Fox derivatives, class
//! evaluation) is invariant under free reduction anyway.

/// One letter: a generator index, possibly inverted.
#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Debug)]
pub struct Letter {
    pub gen: usize,
    pub inverse: bool,
}

impl Letter {
    pub fn flipped(self) -> Letter {
        Letter { gen: self.gen, inverse: !self.inverse }
    }
}

#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Debug, Default)]
pub struct Word {
    letters: Vec<Letter>,
}

impl Word {
    pub fn identity() -> Word {
        Word { letters: Vec::new() }
    }

    /// The single-letter word `x_i`.
    pub fn generator(i: usize) -> Word {
        Word { letters: vec![Letter { gen: i, inverse: false }] }
    }

    pub fn from_letters(letters: Vec<Letter>) -> Word {
        Word { letters }
    }

    pub fn letters(&self) -> &[Letter] {
        &self.letters
    }

    pub fn len(&self) -> usize {
        self.letters.len()
    }

    pub fn is_empty(&self) -> bool {
        self.letters.is_empty()
    }

    pub fn push(&mut self, l: Letter) {
        self.letters.push(l);
    }

    pub fn concat(&self, other: &Word) -> Word {
        let mut letters = self.letters.clone();
        letters.extend_from_slice(&other.letters);
        Word { letters }
    }

    pub fn inverse(&self) -> Word {
        Word { letters: self.letters.iter().rev().map(|l| l.flipped()).collect() }
    }

    /// Cancels adjacent `x x^-1` pairs until none remain.
    pub fn free_reduce(&self) -> Word {
        let mut stack: Vec<Letter> = Vec::with_capacity(self.letters.len());
        for &l in &self.letters {
            if stack.last().is_some_and(|top| *top == l.flipped()) {
                stack.pop();
            } else {
                stack.push(l);
            }
        }
        Word { letters: stack }
    }

    /// The largest generator index used, if any letter is present.
    pub fn max_gen(&self) -> Option<usize> {
        self.letters.iter().map(|l| l.gen).max()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn w(spec: &[(usize, bool)]) -> Word {
        Word::from_letters(spec.iter().map(|&(gen, inverse)| Letter { gen, inverse }).collect())
    }

    #[test]
    fn free_reduction_examples() {
        assert_eq!(w(&[(0, false), (0, true)]).free_reduce(), Word::identity());
        assert_eq!(
            w(&[(0, false), (1, false), (1, true), (0, false)]).free_reduce(),
            w(&[(0, false), (0, false)])
        );
        let reduced = w(&[(0, false), (1, true), (0, false)]);
        assert_eq!(reduced.free_reduce(), reduced);
    }

    #[test]
    fn reduction_cascades_through_nesting() {
        let nested = w(&[(0, false), (1, false), (2, false), (2, true), (1, true), (0, true)]);
        assert_eq!(nested.free_reduce(), Word::identity());
    }

    #[test]
    fn inverse_reverses_and_flips() {
        let v = w(&[(0, false), (1, true)]);
        assert_eq!(v.inverse(), w(&[(1, false), (0, true)]));
        assert_eq!(v.concat(&v.inverse()).free_reduce(), Word::identity());
    }
}
