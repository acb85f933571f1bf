//! First homology of a presentation and its cyclic characters.
//!
//! The relator exponent matrix goes through an integer Smith normal form
//! with the left transform tracked, so each generator projects onto
//! explicit coordinates of `H_1 = Z^rank + sum Z/d_i`. Characters to `Z/n`
//! are enumerated by choosing a value for every coordinate: multiples of
//! `n/gcd(d, n)` on a `Z/d` coordinate, anything on a free one.

use super::presentation::Presentation;
use super::GroupError;

/// Smith normal form `U A V = D` with only `U` kept.
pub(crate) struct SmithForm {
    pub diag: Vec<i128>,
    pub left: Vec<Vec<i128>>,
}

pub(crate) fn smith_normal_form(mut a: Vec<Vec<i128>>) -> SmithForm {
    let rows = a.len();
    let cols = a.first().map_or(0, Vec::len);
    let mut u: Vec<Vec<i128>> = (0..rows)
        .map(|i| (0..rows).map(|j| i128::from(i == j)).collect())
        .collect();
    let limit = rows.min(cols);
    let mut t = 0;
    while t < limit {
        let mut pivot: Option<(usize, usize)> = None;
        for i in t..rows {
            for j in t..cols {
                if a[i][j] != 0
                    && pivot.is_none_or(|(pi, pj)| a[i][j].abs() < a[pi][pj].abs())
                {
                    pivot = Some((i, j));
                }
            }
        }
        let Some((pi, pj)) = pivot else { break };
        a.swap(t, pi);
        u.swap(t, pi);
        for row in a.iter_mut() {
            row.swap(t, pj);
        }
        'reduce: loop {
            for i in t + 1..rows {
                if a[i][t] != 0 {
                    let q = a[i][t].div_euclid(a[t][t]);
                    for j in 0..cols {
                        a[i][j] -= q * a[t][j];
                    }
                    for j in 0..rows {
                        u[i][j] -= q * u[t][j];
                    }
                    if a[i][t] != 0 {
                        a.swap(t, i);
                        u.swap(t, i);
                        continue 'reduce;
                    }
                }
            }
            for j in t + 1..cols {
                if a[t][j] != 0 {
                    let q = a[t][j].div_euclid(a[t][t]);
                    for row in a.iter_mut() {
                        let delta = q * row[t];
                        row[j] -= delta;
                    }
                    if a[t][j] != 0 {
                        for row in a.iter_mut() {
                            row.swap(t, j);
                        }
                        continue 'reduce;
                    }
                }
            }
            for i in t + 1..rows {
                for j in t + 1..cols {
                    if a[i][j] % a[t][t] != 0 {
                        for k in 0..cols {
                            a[t][k] += a[i][k];
                        }
                        for k in 0..rows {
                            u[t][k] += u[i][k];
                        }
                        continue 'reduce;
                    }
                }
            }
            break;
        }
        if a[t][t] < 0 {
            for j in 0..cols {
                a[t][j] = -a[t][j];
            }
            for j in 0..rows {
                u[t][j] = -u[t][j];
            }
        }
        t += 1;
    }
    SmithForm { diag: (0..limit).map(|i| a[i][i]).collect(), left: u }
}

/// `H_1` of a presentation with the projection of each generator.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct Homology {
    /// Rank of the free part.
    pub rank: usize,
    /// Torsion orders, each at least 2, in divisibility order.
    pub torsion: Vec<i128>,
    /// Per generator: its coordinates, torsion coordinates first (mod the
    /// matching order), then `rank` free coordinates.
    pub gen_images: Vec<Vec<i128>>,
}

/// Abelianizes the presentation and reads `H_1` off the Smith form of the
/// relator exponent matrix.
pub fn h1_smith(p: &Presentation) -> Homology {
    let g = p.gens();
    let mut a = vec![vec![0i128; p.relators().len()]; g];
    for (j, r) in p.relators().iter().enumerate() {
        for l in r.letters() {
            a[l.gen][j] += if l.inverse { -1 } else { 1 };
        }
    }
    let snf = smith_normal_form(a);
    let mut torsion_coords = Vec::new();
    let mut free_coords = Vec::new();
    for i in 0..g {
        match snf.diag.get(i).copied().unwrap_or(0) {
            0 => free_coords.push(i),
            1 => {}
            d => torsion_coords.push((i, d)),
        }
    }
    let gen_images = (0..g)
        .map(|j| {
            torsion_coords
                .iter()
                .map(|&(i, d)| snf.left[i][j].rem_euclid(d))
                .chain(free_coords.iter().map(|&i| snf.left[i][j]))
                .collect()
        })
        .collect();
    Homology {
        rank: free_coords.len(),
        torsion: torsion_coords.iter().map(|&(_, d)| d).collect(),
        gen_images,
    }
}

/// All homomorphisms from the presented group to `Z/n`, as value vectors
/// (one value in `[0, n)` per generator), sorted.
pub fn enumerate_characters(p: &Presentation, n: u64) -> Result<Vec<Vec<i64>>, GroupError> {
    if n == 0 {
        return Err(GroupError::BadModulus);
    }
    let h = h1_smith(p);
    let n_i = n as i128;
    let mut coord_choices: Vec<Vec<i128>> = Vec::new();
    for &d in &h.torsion {
        let g = gcd_i128(d, n_i);
        let step = n_i / g;
        coord_choices.push((0..g).map(|k| k * step).collect());
    }
    for _ in 0..h.rank {
        coord_choices.push((0..n_i).collect());
    }
    let mut out = Vec::new();
    let mut idx = vec![0usize; coord_choices.len()];
    loop {
        let values: Vec<i64> = h
            .gen_images
            .iter()
            .map(|coords| {
                let mut v: i128 = 0;
                for (k, c) in coords.iter().enumerate() {
                    v += c * coord_choices[k][idx[k]];
                }
                v.rem_euclid(n_i) as i64
            })
            .collect();
        out.push(values);
        let mut carry = coord_choices.len();
        while carry > 0 {
            idx[carry - 1] += 1;
            if idx[carry - 1] < coord_choices[carry - 1].len() {
                break;
            }
            idx[carry - 1] = 0;
            carry -= 1;
        }
        if carry == 0 {
            break;
        }
    }
    out.sort();
    out.dedup();
    Ok(out)
}

fn gcd_i128(a: i128, b: i128) -> i128 {
    if b == 0 {
        a.abs()
    } else {
        gcd_i128(b, a % b)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn trefoil_h1_is_z() {
        let p = Presentation::parse(&["a", "b"], &["a b a B A B"]).unwrap();
        let h = h1_smith(&p);
        assert_eq!(h.rank, 1);
        assert!(h.torsion.is_empty());
        assert_eq!(h.gen_images[0], h.gen_images[1]);
    }

    #[test]
    fn cyclic_group_h1() {
        let p = Presentation::parse(&["a"], &["aaaaa"]).unwrap();
        let h = h1_smith(&p);
        assert_eq!(h.rank, 0);
        assert_eq!(h.torsion, vec![5]);
    }

    #[test]
    fn free_group_h1() {
        let p = Presentation::parse(&["a", "b"], &[]).unwrap();
        let h = h1_smith(&p);
        assert_eq!(h.rank, 2);
        assert!(h.torsion.is_empty());
    }

    #[test]
    fn character_counts_match_hom_groups() {
        let trefoil = Presentation::parse(&["a", "b"], &["a b a B A B"]).unwrap();
        let chars = enumerate_characters(&trefoil, 5).unwrap();
        assert_eq!(chars.len(), 5);
        for c in &chars {
            assert_eq!(c[0], c[1]);
        }

        let z2 = Presentation::parse(&["a"], &["aa"]).unwrap();
        assert_eq!(enumerate_characters(&z2, 3).unwrap(), vec![vec![0]]);

        let free2 = Presentation::parse(&["a", "b"], &[]).unwrap();
        assert_eq!(enumerate_characters(&free2, 2).unwrap().len(), 4);
    }

    #[test]
    fn smith_form_diag_divisibility_and_shuffle_invariance() {
        let a = vec![vec![2i128, 4, 4], vec![-6, 6, 12], vec![10, 4, 16]];
        let snf = smith_normal_form(a.clone());
        for w in snf.diag.windows(2) {
            if w[1] != 0 {
                assert_eq!(w[1] % w[0].max(1), 0);
            }
        }
        let shuffled = vec![a[2].clone(), a[0].clone(), a[1].clone()];
        let snf2 = smith_normal_form(shuffled);
        assert_eq!(snf.diag, snf2.diag);
    }

    #[test]
    fn left_transform_is_unimodular() {
        let snf = smith_normal_form(vec![vec![3i128, 1], vec![1, 1]]);
        let det_u: i128 = snf.left[0][0] * snf.left[1][1] - snf.left[0][1] * snf.left[1][0];
        assert_eq!(det_u.abs(), 1);
    }

    #[test]
    fn characters_from_a_torsion_quotient_are_homomorphisms() {
        let p = Presentation::parse(&["a", "b"], &["aa", "aabbbb"]).unwrap();
        let h = h1_smith(&p);
        assert_eq!(h.rank, 0);
        assert_eq!(h.torsion, vec![2, 4]);
        let chars = enumerate_characters(&p, 4).unwrap();
        assert_eq!(chars.len(), 8);
        for c in &chars {
            for r in p.relators() {
                let class = crate::group::CohomClass::new(c.clone());
                assert_eq!(class.eval(r).rem_euclid(4), 0);
            }
        }
    }
}
