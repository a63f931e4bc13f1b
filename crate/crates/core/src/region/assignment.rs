//! Exact linear assignment (Hungarian method with potentials) over rationals.

use crate::rational::Rational;

/// Optimal assignment of a square cost matrix together with the dual
/// potentials that certify it.
#[derive(Debug, Clone)]
pub struct Assignment {
    /// `col_of_row[i]` is the column assigned to row `i`.
    pub col_of_row: Vec<usize>,
    pub total: Rational,
    row_potential: Vec<Rational>,
    col_potential: Vec<Rational>,
}

impl Assignment {
    /// Reduced cost of `(row, col)`; zero exactly on edges that can appear
    /// in some optimal assignment.
    pub fn reduced_cost(&self, cost: &[Vec<Rational>], row: usize, col: usize) -> Rational {
        &cost[row][col] - &self.row_potential[row] - &self.col_potential[col]
    }
}

/// Minimum-cost perfect matching of an `n × n` matrix in `O(n^3)`.
pub fn solve_min(cost: &[Vec<Rational>]) -> Assignment {
    let n = cost.len();
    debug_assert!(cost.iter().all(|row| row.len() == n));
    // 1-based internally, index 0 is the virtual source column
    let mut u = vec![Rational::zero(); n + 1];
    let mut v = vec![Rational::zero(); n + 1];
    let mut row_of_col = vec![0usize; n + 1];
    let mut way = vec![0usize; n + 1];

    for i in 1..=n {
        row_of_col[0] = i;
        let mut j0 = 0usize;
        let mut minv: Vec<Option<Rational>> = vec![None; n + 1];
        let mut used = vec![false; n + 1];
        loop {
            used[j0] = true;
            let i0 = row_of_col[j0];
            let mut delta: Option<Rational> = None;
            let mut j1 = 0usize;
            for j in 1..=n {
                if used[j] {
                    continue;
                }
                let cur = &cost[i0 - 1][j - 1] - &u[i0] - &v[j];
                if minv[j].as_ref().is_none_or(|m| cur < *m) {
                    minv[j] = Some(cur);
                    way[j] = j0;
                }
                let mj = minv[j].as_ref().unwrap();
                if delta.as_ref().is_none_or(|d| mj < d) {
                    delta = Some(mj.clone());
                    j1 = j;
                }
            }
            let delta = delta.expect("at least one free column");
            for j in 0..=n {
                if used[j] {
                    u[row_of_col[j]] += &delta;
                    v[j] -= &delta;
                } else if let Some(m) = minv[j].as_mut() {
                    *m -= &delta;
                }
            }
            j0 = j1;
            if row_of_col[j0] == 0 {
                break;
            }
        }
        loop {
            let j1 = way[j0];
            row_of_col[j0] = row_of_col[j1];
            j0 = j1;
            if j0 == 0 {
                break;
            }
        }
    }

    let mut col_of_row = vec![0usize; n];
    for j in 1..=n {
        col_of_row[row_of_col[j] - 1] = j - 1;
    }
    let total = col_of_row
        .iter()
        .enumerate()
        .map(|(i, &j)| cost[i][j].clone())
        .sum();
    Assignment {
        col_of_row,
        total,
        row_potential: u.into_iter().skip(1).collect(),
        col_potential: v.into_iter().skip(1).collect(),
    }
}

/// Among all minimum-cost assignments, the one whose sequence
/// `row_of_col[0], row_of_col[1], …` is lexicographically smallest.
/// Returns `row_of_col`.
pub fn lexicographic_min(cost: &[Vec<Rational>]) -> Vec<usize> {
    let n = cost.len();
    let opt = solve_min(cost);
    // tight[row][col]: edge usable by an optimal assignment
    let tight: Vec<Vec<bool>> = (0..n)
        .map(|i| (0..n).map(|j| opt.reduced_cost(cost, i, j).is_zero()).collect())
        .collect();

    let mut row_taken = vec![false; n];
    let mut row_of_col = Vec::with_capacity(n);
    for col in 0..n {
        let mut chosen = None;
        for row in 0..n {
            if row_taken[row] || !tight[row][col] {
                continue;
            }
            row_taken[row] = true;
            let ok = has_perfect_matching(&tight, &row_taken, col + 1);
            row_taken[row] = false;
            if ok {
                chosen = Some(row);
                break;
            }
        }
        let chosen = chosen.expect("optimal assignment restricted to tight edges");
        row_taken[chosen] = true;
        row_of_col.push(chosen);
    }
    row_of_col
}

/// Kuhn's augmenting paths on the free rows versus columns `first_col..n`.
fn has_perfect_matching(tight: &[Vec<bool>], row_taken: &[bool], first_col: usize) -> bool {
    let n = tight.len();
    let mut match_row: Vec<Option<usize>> = vec![None; n];

    fn augment(
        col: usize,
        tight: &[Vec<bool>],
        row_taken: &[bool],
        seen: &mut [bool],
        match_row: &mut [Option<usize>],
    ) -> bool {
        for row in 0..tight.len() {
            if row_taken[row] || !tight[row][col] || seen[row] {
                continue;
            }
            seen[row] = true;
            let free = match match_row[row] {
                None => true,
                Some(other) => augment(other, tight, row_taken, seen, match_row),
            };
            if free {
                match_row[row] = Some(col);
                return true;
            }
        }
        false
    }

    (first_col..n).all(|col| {
        let mut seen = vec![false; n];
        augment(col, tight, row_taken, &mut seen, &mut match_row)
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::ratio;
    use itertools::Itertools;

    fn m(rows: &[&[i64]]) -> Vec<Vec<Rational>> {
        rows.iter()
            .map(|r| r.iter().map(|&x| Rational::from(x)).collect())
            .collect()
    }

    fn brute(cost: &[Vec<Rational>]) -> Rational {
        (0..cost.len())
            .permutations(cost.len())
            .map(|p| p.iter().enumerate().map(|(i, &j)| cost[i][j].clone()).sum::<Rational>())
            .min()
            .unwrap()
    }

    #[test]
    fn classic_instance() {
        let c = m(&[&[4, 1, 3], &[2, 0, 5], &[3, 2, 2]]);
        let a = solve_min(&c);
        assert_eq!(a.total, Rational::from(5i64));
        assert_eq!(a.total, brute(&c));
    }

    #[test]
    fn single_element() {
        let c = vec![vec![ratio(-3, 7)]];
        assert_eq!(solve_min(&c).total, ratio(-3, 7));
        assert_eq!(lexicographic_min(&c), vec![0]);
    }

    #[test]
    fn all_ties_pick_identity() {
        let c = m(&[&[1, 1, 1], &[1, 1, 1], &[1, 1, 1]]);
        assert_eq!(lexicographic_min(&c), vec![0, 1, 2]);
    }

    #[test]
    fn matches_brute_force_on_small_grids() {
        // deterministic pseudo-random fill
        let mut state = 12345u64;
        for n in 1..=5 {
            for _ in 0..40 {
                let c: Vec<Vec<Rational>> = (0..n)
                    .map(|_| {
                        (0..n)
                            .map(|_| {
                                state = state.wrapping_mul(6364136223846793005).wrapping_add(1);
                                ratio(((state >> 33) % 7) as i64 - 3, 1 + ((state >> 50) % 3) as i64)
                            })
                            .collect()
                    })
                    .collect();
                let best = brute(&c);
                assert_eq!(solve_min(&c).total, best);
                let lex = lexicographic_min(&c);
                let val: Rational = lex.iter().enumerate().map(|(j, &i)| c[i][j].clone()).sum();
                assert_eq!(val, best);
                let brute_lex = (0..n)
                    .permutations(n)
                    .filter(|p| {
                        p.iter().enumerate().map(|(j, &i)| c[i][j].clone()).sum::<Rational>() == best
                    })
                    .min()
                    .unwrap();
                assert_eq!(lex, brute_lex);
            }
        }
    }
}
