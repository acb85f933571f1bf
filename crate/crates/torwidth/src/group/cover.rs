//! Finite-index covers via coset tables and Reidemeister-Schreier.
//!
//! A coset table records the right action of each generator on the cosets
//! of a finite-index subgroup; validation checks bijectivity, that every
//! relator acts trivially, and transitivity. From a table the subgroup gets
//! its own presentation: a breadth-first spanning tree of the coset graph
//! picks representative words, each non-tree edge contributes one Schreier
//! generator, and every base relator rewrites to one subgroup relator per
//! coset. Classes on the base pull back by evaluating on the Schreier
//! generators' words.

use super::presentation::{CohomClass, Presentation};
use super::word::{Letter, Word};
use super::GroupError;

/// The right action of each generator on cosets `0..index` (coset 0 is the
/// subgroup itself).
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct CosetTable {
    index: usize,
    action: Vec<Vec<usize>>,
    inverse_action: Vec<Vec<usize>>,
}

impl CosetTable {
    pub fn new(p: &Presentation, action: Vec<Vec<usize>>) -> Result<CosetTable, GroupError> {
        if action.len() != p.gens() {
            return Err(GroupError::TableShapeMismatch { got: action.len(), want: p.gens() });
        }
        let index = action.first().map_or(0, Vec::len).max(1);
        let mut inverse_action = Vec::with_capacity(action.len());
        for (g, perm) in action.iter().enumerate() {
            if perm.len() != index {
                return Err(GroupError::TableNotBijective { gen: g });
            }
            let mut inv = vec![usize::MAX; index];
            for (c, &img) in perm.iter().enumerate() {
                if img >= index || inv[img] != usize::MAX {
                    return Err(GroupError::TableNotBijective { gen: g });
                }
                inv[img] = c;
            }
            inverse_action.push(inv);
        }
        let table = CosetTable { index, action, inverse_action };
        for (ri, r) in p.relators().iter().enumerate() {
            for c in 0..index {
                if table.act_word(c, r) != c {
                    return Err(GroupError::TableRelatorBroken { relator: ri, coset: c });
                }
            }
        }
        if let Some(unreached) = table.first_unreachable() {
            return Err(GroupError::TableNotTransitive { coset: unreached });
        }
        Ok(table)
    }

    /// The table of the kernel-of-character cover: cosets are the image of
    /// the character in `Z/n`, acted on by addition.
    pub fn from_character(
        p: &Presentation,
        alpha: &[i64],
        n: u64,
    ) -> Result<CosetTable, GroupError> {
        if n == 0 {
            return Err(GroupError::BadModulus);
        }
        if alpha.len() != p.gens() {
            return Err(GroupError::ClassLengthMismatch { got: alpha.len(), want: p.gens() });
        }
        let n_i = n as i64;
        for (ri, r) in p.relators().iter().enumerate() {
            let v = CohomClass::new(alpha.to_vec()).eval(r).rem_euclid(n_i);
            if v != 0 {
                return Err(GroupError::CharacterNotHomomorphism {
                    relator: ri,
                    modulus: n,
                    value: v,
                });
            }
        }
        let mut d = n_i;
        for &v in alpha {
            d = gcd_i64(d, v.rem_euclid(n_i));
        }
        let index = (n_i / d) as usize;
        let action = alpha
            .iter()
            .map(|&v| {
                let shift = (v.rem_euclid(n_i) / d) as usize;
                (0..index).map(|c| (c + shift) % index).collect()
            })
            .collect();
        CosetTable::new(p, action)
    }

    pub fn index(&self) -> usize {
        self.index
    }

    pub fn act(&self, coset: usize, l: Letter) -> usize {
        if l.inverse {
            self.inverse_action[l.gen][coset]
        } else {
            self.action[l.gen][coset]
        }
    }

    pub fn act_word(&self, mut coset: usize, w: &Word) -> usize {
        for &l in w.letters() {
            coset = self.act(coset, l);
        }
        coset
    }

    pub fn action_rows(&self) -> &[Vec<usize>] {
        &self.action
    }

    fn first_unreachable(&self) -> Option<usize> {
        let mut seen = vec![false; self.index];
        let mut queue = vec![0usize];
        seen[0] = true;
        while let Some(c) = queue.pop() {
            for g in 0..self.action.len() {
                for next in [self.action[g][c], self.inverse_action[g][c]] {
                    if !seen[next] {
                        seen[next] = true;
                        queue.push(next);
                    }
                }
            }
        }
        seen.iter().position(|&s| !s)
    }
}

/// A subgroup presentation with the data needed to move words and classes
/// between the base group and the cover.
#[derive(Clone, Debug)]
pub struct SchreierData {
    /// Presentation of the subgroup on the Schreier generators.
    pub presentation: Presentation,
    /// Each Schreier generator as a freely reduced word in base generators.
    pub generator_words: Vec<Word>,
    /// Transversal: a representative word for each coset.
    pub coset_reps: Vec<Word>,
    table: CosetTable,
    edge_gen: Vec<Vec<Option<usize>>>,
}

/// Runs Reidemeister-Schreier on a validated coset table.
///
/// The spanning tree is breadth-first from coset 0, trying positive edges
/// in generator order before inverse edges; subgroup generators are named
/// `s1, s2, ..` in coset-major, generator-minor edge order.
pub fn reidemeister_schreier(p: &Presentation, table: &CosetTable) -> SchreierData {
    let m = table.index();
    let gens = p.gens();
    let mut coset_reps: Vec<Option<Word>> = vec![None; m];
    coset_reps[0] = Some(Word::identity());
    let mut tree_edge = vec![vec![false; m]; gens];
    let mut queue = std::collections::VecDeque::from([0usize]);
    while let Some(c) = queue.pop_front() {
        for g in 0..gens {
            for inverse in [false, true] {
                let l = Letter { gen: g, inverse };
                let next = table.act(c, l);
                if coset_reps[next].is_none() {
                    let mut w = coset_reps[c].clone().unwrap();
                    w.push(l);
                    coset_reps[next] = Some(w);
                    let (from, _to) = if inverse { (next, c) } else { (c, next) };
                    tree_edge[g][from] = true;
                    queue.push_back(next);
                }
            }
        }
    }
    let coset_reps: Vec<Word> = coset_reps.into_iter().map(Option::unwrap).collect();

    let mut edge_gen: Vec<Vec<Option<usize>>> = vec![vec![None; m]; gens];
    let mut generator_words = Vec::new();
    let mut names = Vec::new();
    for c in 0..m {
        for g in 0..gens {
            if tree_edge[g][c] {
                continue;
            }
            let l = Letter { gen: g, inverse: false };
            let target = table.act(c, l);
            let mut w = coset_reps[c].clone();
            w.push(l);
            let word = w.concat(&coset_reps[target].inverse()).free_reduce();
            edge_gen[g][c] = Some(generator_words.len());
            names.push(format!("s{}", generator_words.len() + 1));
            generator_words.push(word);
        }
    }

    let scratch = SchreierData {
        presentation: Presentation::new(names.clone(), Vec::new()).expect("fresh names"),
        generator_words: generator_words.clone(),
        coset_reps: coset_reps.clone(),
        table: table.clone(),
        edge_gen,
    };
    let mut relators = Vec::new();
    for r in p.relators() {
        for c in 0..m {
            relators.push(scratch.rewrite_from(r, c));
        }
    }
    SchreierData {
        presentation: Presentation::new(names, relators).expect("verified letters"),
        ..scratch
    }
}

impl SchreierData {
    pub fn table(&self) -> &CosetTable {
        &self.table
    }

    /// Rewrites a base word that starts (and, if it fixes the coset, ends)
    /// at `coset` into Schreier generators.
    pub fn rewrite_from(&self, w: &Word, coset: usize) -> Word {
        let mut out = Word::identity();
        let mut c = coset;
        for &l in w.letters() {
            if l.inverse {
                let from = self.table.act(c, l);
                if let Some(s) = self.edge_gen[l.gen][from] {
                    out.push(Letter { gen: s, inverse: true });
                }
                c = from;
            } else {
                if let Some(s) = self.edge_gen[l.gen][c] {
                    out.push(Letter { gen: s, inverse: false });
                }
                c = self.table.act(c, l);
            }
        }
        out
    }

    /// Pulls a class on the base back to the cover by evaluating it on each
    /// Schreier generator's word.
    pub fn pullback(&self, theta: &CohomClass) -> CohomClass {
        CohomClass::new(self.generator_words.iter().map(|w| theta.eval(w)).collect())
    }
}

fn gcd_i64(a: i64, b: i64) -> i64 {
    if b == 0 {
        a.abs()
    } else {
        gcd_i64(b, a % b)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn trefoil() -> Presentation {
        Presentation::parse(&["a", "b"], &["a b a B A B"]).unwrap()
    }

    #[test]
    fn index_one_cover_reproduces_the_group() {
        let p = trefoil();
        let table = CosetTable::from_character(&p, &[0, 0], 1).unwrap();
        assert_eq!(table.index(), 1);
        let data = reidemeister_schreier(&p, &table);
        assert_eq!(data.presentation.gens(), 2);
        assert_eq!(data.presentation.relators().len(), 1);
        assert_eq!(data.generator_words[0], p.parse_word("a").unwrap());
        assert_eq!(data.generator_words[1], p.parse_word("b").unwrap());
    }

    #[test]
    fn double_cover_of_the_trefoil_has_three_generators() {
        let p = trefoil();
        let table = CosetTable::from_character(&p, &[1, 1], 2).unwrap();
        assert_eq!(table.index(), 2);
        let data = reidemeister_schreier(&p, &table);
        assert_eq!(data.presentation.gens(), 3);
        assert_eq!(data.presentation.relators().len(), 2);
        let theta = CohomClass::new(vec![1, 1]);
        let pulled = data.pullback(&theta);
        for (w, v) in data.generator_words.iter().zip(pulled.values()) {
            assert_eq!(theta.eval(w), *v);
        }
        pulled.validate(&data.presentation).unwrap();
    }

    #[test]
    fn cyclic_cover_of_z_multiplies_the_class() {
        let p = Presentation::parse(&["a"], &[]).unwrap();
        let table = CosetTable::from_character(&p, &[1], 3).unwrap();
        let data = reidemeister_schreier(&p, &table);
        assert_eq!(data.presentation.gens(), 1);
        assert_eq!(data.generator_words[0], p.parse_word("aaa").unwrap());
        let pulled = data.pullback(&CohomClass::new(vec![1]));
        assert_eq!(pulled.values(), &[3]);
    }

    #[test]
    fn schreier_index_formula_for_free_groups() {
        let p = Presentation::parse(&["a", "b"], &[]).unwrap();
        for n in 1..=5u64 {
            let table = CosetTable::from_character(&p, &[1, 0], n).unwrap();
            let data = reidemeister_schreier(&p, &table);
            let m = n as i64;
            assert_eq!(data.presentation.gens() as i64, m * (2 - 1) + 1);
        }
    }

    #[test]
    fn non_homomorphic_character_is_rejected() {
        let p = trefoil();
        assert!(matches!(
            CosetTable::from_character(&p, &[1, 2], 3),
            Err(GroupError::CharacterNotHomomorphism { .. })
        ));
    }

    #[test]
    fn broken_tables_are_rejected() {
        let p = trefoil();
        assert!(matches!(
            CosetTable::new(&p, vec![vec![1, 1], vec![1, 0]]),
            Err(GroupError::TableNotBijective { gen: 0 })
        ));
        assert!(matches!(
            CosetTable::new(&p, vec![vec![1, 0], vec![0, 1]]),
            Err(GroupError::TableRelatorBroken { .. })
        ));
        let q = Presentation::parse(&["a"], &[]).unwrap();
        assert!(matches!(
            CosetTable::new(&q, vec![vec![0, 1]]),
            Err(GroupError::TableNotTransitive { coset: 1 })
        ));
    }

    #[test]
    fn rewriting_respects_subgroup_membership() {
        let p = trefoil();
        let table = CosetTable::from_character(&p, &[1, 1], 2).unwrap();
        let data = reidemeister_schreier(&p, &table);
        let sub_word = p.parse_word("ab").unwrap();
        let rewritten = data.rewrite_from(&sub_word, 0);
        let mut expanded = Word::identity();
        for l in rewritten.letters() {
            let gen_word = &data.generator_words[l.gen];
            expanded = expanded
                .concat(&if l.inverse { gen_word.inverse() } else { gen_word.clone() });
        }
        assert_eq!(expanded.free_reduce(), sub_word.free_reduce());
    }
}
