//! Group presentations and integral cohomology classes.
//!
//! A presentation is a list of named generators and a list of relator
//! words. The deficiency (generators minus relators) is what the torsion
//! routines dispatch on: deficiency one uses the column-deletion formula,
//! deficiency zero the closed-manifold one. A `CohomClass` assigns an
//! integer to each generator and must vanish on every relator.

use super::word::{Letter, Word};
use super::GroupError;

#[derive(Clone, PartialEq, Eq, Debug)]
pub struct Presentation {
    names: Vec<String>,
    relators: Vec<Word>,
}

impl Presentation {
    pub fn new(names: Vec<String>, relators: Vec<Word>) -> Result<Presentation, GroupError> {
        for (i, name) in names.iter().enumerate() {
            if name.is_empty() || names[..i].contains(name) {
                return Err(GroupError::BadGeneratorName(name.clone()));
            }
        }
        for (ri, r) in relators.iter().enumerate() {
            if let Some(max) = r.max_gen() {
                if max >= names.len() {
                    return Err(GroupError::LetterOutOfRange {
                        relator: ri,
                        index: max,
                        count: names.len(),
                    });
                }
            }
        }
        Ok(Presentation { names, relators })
    }

    /// Builds a presentation from single-letter generator names and relator
    /// strings in the case convention (`"a b A B"` or `"abAB"`, uppercase
    /// meaning inverse).
    pub fn parse(gen_names: &[&str], relator_strs: &[&str]) -> Result<Presentation, GroupError> {
        let names: Vec<String> = gen_names.iter().map(|s| s.to_string()).collect();
        let skeleton = Presentation::new(names, Vec::new())?;
        let relators = relator_strs
            .iter()
            .map(|s| skeleton.parse_word(s))
            .collect::<Result<Vec<Word>, GroupError>>()?;
        Presentation::new(skeleton.names, relators)
    }

    pub fn gens(&self) -> usize {
        self.names.len()
    }

    pub fn names(&self) -> &[String] {
        &self.names
    }

    pub fn relators(&self) -> &[Word] {
        &self.relators
    }

    pub fn deficiency(&self) -> i64 {
        self.names.len() as i64 - self.relators.len() as i64
    }

    /// Parses a word in the case convention. Whitespace separates tokens;
    /// each token is a run of letters, lowercase for a generator and
    /// uppercase for its inverse. Only works when every generator name is a
    /// single lowercase letter.
    pub fn parse_word(&self, s: &str) -> Result<Word, GroupError> {
        let mut letters = Vec::new();
        for token in s.split_whitespace() {
            for c in token.chars() {
                let lower = c.to_ascii_lowercase();
                let gen = self
                    .names
                    .iter()
                    .position(|n| n == &lower.to_string())
                    .ok_or_else(|| GroupError::WordParse(format!("unknown generator '{c}'")))?;
                if !c.is_ascii_alphabetic() {
                    return Err(GroupError::WordParse(format!("'{c}' is not a letter")));
                }
                letters.push(Letter { gen, inverse: c.is_ascii_uppercase() });
            }
        }
        Ok(Word::from_letters(letters))
    }

    /// Renders a word: compact case convention when all names are single
    /// lowercase letters, explicit `name^-1` tokens otherwise.
    pub fn word_to_string(&self, w: &Word) -> String {
        let compact = self
            .names
            .iter()
            .all(|n| n.len() == 1 && n.chars().next().unwrap().is_ascii_lowercase());
        if compact {
            w.letters()
                .iter()
                .map(|l| {
                    let c = self.names[l.gen].chars().next().unwrap();
                    if l.inverse {
                        c.to_ascii_uppercase()
                    } else {
                        c
                    }
                })
                .collect()
        } else {
            w.letters()
                .iter()
                .map(|l| {
                    if l.inverse {
                        format!("{}^-1", self.names[l.gen])
                    } else {
                        self.names[l.gen].clone()
                    }
                })
                .collect::<Vec<String>>()
                .join(" ")
        }
    }
}

/// An integral class: one value per generator, vanishing on relators.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct CohomClass {
    values: Vec<i64>,
}

impl CohomClass {
    pub fn new(values: Vec<i64>) -> CohomClass {
        CohomClass { values }
    }

    pub fn values(&self) -> &[i64] {
        &self.values
    }

    /// Signed sum of generator values over the word's letters.
    pub fn eval(&self, w: &Word) -> i64 {
        w.letters()
            .iter()
            .map(|l| if l.inverse { -self.values[l.gen] } else { self.values[l.gen] })
            .sum()
    }

    /// Checks the length and that the class vanishes on every relator.
    pub fn validate(&self, p: &Presentation) -> Result<(), GroupError> {
        if self.values.len() != p.gens() {
            return Err(GroupError::ClassLengthMismatch {
                got: self.values.len(),
                want: p.gens(),
            });
        }
        for (i, r) in p.relators().iter().enumerate() {
            let v = self.eval(r);
            if v != 0 {
                return Err(GroupError::ClassNotCocycle { relator: i, value: v });
            }
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn trefoil_presentation_parses_and_has_deficiency_one() {
        let p = Presentation::parse(&["a", "b"], &["a b a B A B"]).unwrap();
        assert_eq!(p.gens(), 2);
        assert_eq!(p.deficiency(), 1);
        assert_eq!(p.relators()[0].len(), 6);
        assert_eq!(p.word_to_string(&p.relators()[0]), "abaBAB");
        assert_eq!(p.parse_word("abaBAB").unwrap(), p.relators()[0]);
    }

    #[test]
    fn parse_rejects_unknown_letters() {
        let p = Presentation::parse(&["a", "b"], &[]).unwrap();
        assert!(matches!(p.parse_word("a c"), Err(GroupError::WordParse(_))));
    }

    #[test]
    fn class_evaluation_and_validation() {
        let p = Presentation::parse(&["a", "b"], &["a b a B A B"]).unwrap();
        let theta = CohomClass::new(vec![1, 1]);
        theta.validate(&p).unwrap();
        assert_eq!(theta.eval(&p.parse_word("ab").unwrap()), 2);
        assert_eq!(theta.eval(&p.parse_word("aB").unwrap()), 0);
        assert_eq!(theta.eval(&Word::identity()), 0);

        let bad = CohomClass::new(vec![1, 2]);
        assert!(matches!(
            bad.validate(&p),
            Err(GroupError::ClassNotCocycle { relator: 0, value: -1 })
        ));
        let short = CohomClass::new(vec![1]);
        assert!(matches!(short.validate(&p), Err(GroupError::ClassLengthMismatch { .. })));
    }

    #[test]
    fn duplicate_generator_names_are_rejected() {
        assert!(Presentation::parse(&["a", "a"], &[]).is_err());
    }
}
