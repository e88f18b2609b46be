//! Exhaustive enumeration of subspaces invariant under a family of commuting
//! nilpotent matrices.
//!
//! Every nonzero invariant subspace `S` has an invariant hyperplane (any
//! hyperplane containing `𝔪S`), so all invariant subspaces are reached from
//! `0` by adjoining one vector at a time. The vectors that may be adjoined to
//! `S` are those of `C_S = {v : g v ∈ S for all g}`; each line of `C_S / S`
//! gives one child. Children are deduplicated by their reduced echelon basis.

use std::collections::HashSet;

use super::linalg::{Field, Matrix, Subspace};
use crate::error::{Error, Result};

/// Traversal order. Both visit the same set of subspaces.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Schedule {
    /// Level by level in dimension.
    BreadthFirst,
    /// Depth first with a global visited set.
    DepthFirst,
}

pub(crate) struct Enumerator<'a> {
    pub field: Field,
    pub dim: usize,
    pub gens: &'a [Matrix],
    pub max_dim: usize,
    pub budget: u64,
    visited: u64,
}

impl<'a> Enumerator<'a> {
    pub fn new(field: Field, dim: usize, gens: &'a [Matrix], max_dim: usize, budget: u64) -> Self {
        Self {
            field,
            dim,
            gens,
            max_dim: max_dim.min(dim),
            budget,
            visited: 0,
        }
    }

    /// Calls `visit` once for every invariant subspace of dimension at most
    /// `max_dim`, the zero subspace included. Returns the number of candidate
    /// subspaces examined.
    pub fn run(mut self, schedule: Schedule, visit: &mut dyn FnMut(&Subspace)) -> Result<u64> {
        match schedule {
            Schedule::BreadthFirst => self.bfs(visit)?,
            Schedule::DepthFirst => self.dfs(visit)?,
        }
        Ok(self.visited)
    }

    fn bfs(&mut self, visit: &mut dyn FnMut(&Subspace)) -> Result<()> {
        let mut level: HashSet<Subspace> = HashSet::from([Subspace::zero()]);
        for k in 0..=self.max_dim {
            for s in &level {
                visit(s);
            }
            if k == self.max_dim {
                break;
            }
            let mut next = HashSet::new();
            for s in &level {
                for child in self.children(s, || format!("expanding dimension {k}"))? {
                    next.insert(child);
                }
            }
            if next.is_empty() {
                break;
            }
            level = next;
        }
        Ok(())
    }

    fn dfs(&mut self, visit: &mut dyn FnMut(&Subspace)) -> Result<()> {
        let mut seen: HashSet<Subspace> = HashSet::from([Subspace::zero()]);
        let mut stack = vec![Subspace::zero()];
        while let Some(s) = stack.pop() {
            visit(&s);
            if s.dim() >= self.max_dim {
                continue;
            }
            let found = seen.len();
            for child in self.children(&s, || format!("{found} subspaces found"))? {
                if !seen.contains(&child) {
                    seen.insert(child.clone());
                    stack.push(child);
                }
            }
        }
        Ok(())
    }

    /// Basis of `C_S / S`, as vectors reduced modulo `S`.
    fn socle_complement(&self, s: &Subspace) -> Matrix {
        let f = self.field;
        let n = self.dim;
        let mut stacked: Matrix = Vec::with_capacity(self.gens.len() * n);
        for g in self.gens {
            // column j of the map v -> g v mod S
            let cols: Matrix = (0..n)
                .map(|j| {
                    let mut c: Vec<u8> = g.iter().map(|row| row[j]).collect();
                    s.reduce(f, &mut c);
                    c
                })
                .collect();
            stacked.extend(Field::transpose(&cols));
        }
        let c_basis = f.nullspace(&stacked, n);
        let reduced: Matrix = c_basis
            .into_iter()
            .map(|mut v| {
                s.reduce(f, &mut v);
                v
            })
            .collect();
        Subspace::span(f, reduced).rows
    }

    fn children(&mut self, s: &Subspace, progress: impl Fn() -> String) -> Result<Vec<Subspace>> {
        let f = self.field;
        let basis = self.socle_complement(s);
        let c = basis.len();
        let mut out = Vec::new();
        if c == 0 {
            return Ok(out);
        }
        let p = f.p as u8;
        // projective points of F_p^c: first nonzero coordinate equal to 1
        let mut coords = vec![0u8; c];
        for lead in 0..c {
            coords.iter_mut().for_each(|x| *x = 0);
            coords[lead] = 1;
            loop {
                self.visited += 1;
                if self.visited > self.budget {
                    return Err(Error::Budget {
                        visited: self.visited,
                        cap: self.budget,
                        progress: progress(),
                    });
                }
                let mut v = vec![0u8; self.dim];
                for (a, b) in coords.iter().zip(&basis) {
                    f.axpy(&mut v, *a, b);
                }
                out.push(s.with(f, v));
                // odometer over the coordinates after `lead`
                let mut i = c;
                loop {
                    if i == lead + 1 {
                        break;
                    }
                    i -= 1;
                    coords[i] += 1;
                    if coords[i] < p {
                        break;
                    }
                    coords[i] = 0;
                }
                if coords[lead + 1..].iter().all(|&x| x == 0) {
                    break;
                }
            }
        }
        Ok(out)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn gaussian(n: u64, k: u64, p: u64) -> u64 {
        let num: u64 = (0..k).map(|i| p.pow((n - i) as u32) - 1).product();
        let den: u64 = (0..k).map(|i| p.pow((k - i) as u32) - 1).product();
        num / den
    }

    #[test]
    fn no_generators_gives_all_subspaces() {
        for p in [2u32, 3] {
            let f = Field::new(p);
            let zero = vec![vec![0u8; 4]; 4];
            let gens = vec![zero];
            for schedule in [Schedule::BreadthFirst, Schedule::DepthFirst] {
                let mut counts = [0u64; 5];
                Enumerator::new(f, 4, &gens, 4, 1_000_000)
                    .run(schedule, &mut |s| counts[s.dim()] += 1)
                    .unwrap();
                for k in 0..=4 {
                    assert_eq!(counts[k as usize], gaussian(4, k, p as u64), "p={p} k={k}");
                }
            }
        }
    }

    #[test]
    fn a_single_jordan_block_is_uniserial() {
        let f = Field::new(2);
        let mut t = vec![vec![0u8; 4]; 4];
        for i in 0..3 {
            t[i + 1][i] = 1;
        }
        let gens = vec![t];
        let mut counts = [0u64; 5];
        Enumerator::new(f, 4, &gens, 4, 1000)
            .run(Schedule::DepthFirst, &mut |s| counts[s.dim()] += 1)
            .unwrap();
        assert_eq!(counts, [1, 1, 1, 1, 1]);
    }

    #[test]
    fn budget_is_enforced() {
        let f = Field::new(3);
        let gens = vec![vec![vec![0u8; 5]; 5]];
        let err = Enumerator::new(f, 5, &gens, 5, 10)
            .run(Schedule::BreadthFirst, &mut |_| {})
            .unwrap_err();
        assert!(matches!(err, Error::Budget { cap: 10, .. }));
    }
}
