//! Reidemeister–Schreier rewriting over a complete coset table.

use std::collections::VecDeque;

use num_bigint::BigInt;

use super::coset::{column, CosetTable};
use crate::intmat::AbelianInvariants;
use crate::presentation::Presentation;
use crate::word::{reduce, Word};

/// Presentation of a finite-index subgroup on its Schreier generators.
#[derive(Debug, Clone)]
pub struct SchreierPresentation {
    /// `(coset, generator)` for each Schreier generator `t_c · g · t_{cg}⁻¹`.
    pub generators: Vec<(usize, usize)>,
    pub relators: Vec<Word>,
}

impl SchreierPresentation {
    pub fn abelian_invariants(&self) -> AbelianInvariants {
        let n = self.generators.len();
        let rows = self
            .relators
            .iter()
            .map(|r| {
                let mut row = vec![BigInt::from(0); n];
                for s in r.syllables() {
                    row[s.gen] += s.exp;
                }
                row
            })
            .collect();
        AbelianInvariants::from_relations(n, rows)
    }
}

pub fn reidemeister_schreier(p: &Presentation, table: &CosetTable) -> SchreierPresentation {
    let k = table.len();
    let ngens = p.rank();
    // spanning tree on cosets
    let mut tree_edge = vec![vec![false; ngens]; k];
    let mut seen = vec![false; k];
    seen[0] = true;
    let mut q = VecDeque::from([0usize]);
    while let Some(c) = q.pop_front() {
        for g in 0..ngens {
            for sign in [1i64, -1] {
                let d = table.act(c, column(g, sign));
                if !seen[d] {
                    seen[d] = true;
                    if sign > 0 {
                        tree_edge[c][g] = true;
                    } else {
                        tree_edge[d][g] = true;
                    }
                    q.push_back(d);
                }
            }
        }
    }
    let mut index = vec![vec![usize::MAX; ngens]; k];
    let mut generators = Vec::new();
    for c in 0..k {
        for g in 0..ngens {
            if !tree_edge[c][g] {
                index[c][g] = generators.len();
                generators.push((c, g));
            }
        }
    }
    let mut relators = Vec::new();
    for c0 in 0..k {
        for r in p.relators() {
            let mut c = c0;
            let mut out = Vec::new();
            for (g, s) in r.letters() {
                if s > 0 {
                    if index[c][g] != usize::MAX {
                        out.push((index[c][g], 1));
                    }
                    c = table.act(c, column(g, 1));
                } else {
                    let d = table.act(c, column(g, -1));
                    if index[d][g] != usize::MAX {
                        out.push((index[d][g], -1));
                    }
                    c = d;
                }
            }
            let w = reduce(out);
            if !w.is_identity() {
                relators.push(w);
            }
        }
    }
    SchreierPresentation { generators, relators }
}
