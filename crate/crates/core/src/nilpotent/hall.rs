//! Basic commutators of a free group, in the Lyndon form of the Hall basis.
//!
//! Basic commutators of weight `w` are indexed by Lyndon words of length
//! `w`; the bracketing is the standard factorisation `w = uv` with `v`
//! the longest proper Lyndon suffix. Ordering is by weight, then
//! lexicographically by Lyndon word.

use crate::error::{Error, Result};

/// Default cap on the number of basic commutators.
pub const DEFAULT_BASIS_BUDGET: usize = 5_000;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Bracket {
    Letter(usize),
    /// `[left, right]` as indices into the basis.
    Pair(usize, usize),
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BasicCommutator {
    pub word: Vec<u8>,
    pub weight: usize,
    pub bracket: Bracket,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct HallBasis {
    rank: usize,
    class: usize,
    elements: Vec<BasicCommutator>,
    /// `layer_start[w]` is the first index of weight `w` (1-based weights).
    layer_start: Vec<usize>,
}

fn mobius(n: usize) -> i64 {
    let mut n = n;
    let mut result = 1;
    let mut p = 2;
    while p * p <= n {
        if n % p == 0 {
            n /= p;
            if n % p == 0 {
                return 0;
            }
            result = -result;
        }
        p += 1;
    }
    if n > 1 {
        result = -result;
    }
    result
}

/// Necklace polynomial `W(r, w) = (1/w) Σ_{d | w} μ(d) r^{w/d}`.
pub fn witt_number(rank: usize, weight: usize) -> u128 {
    if weight == 0 {
        return 0;
    }
    let mut total: i128 = 0;
    for d in 1..=weight {
        if weight % d == 0 {
            total += mobius(d) as i128 * (rank as i128).pow((weight / d) as u32);
        }
    }
    (total / weight as i128) as u128
}

pub fn is_lyndon(w: &[u8]) -> bool {
    if w.is_empty() {
        return false;
    }
    (1..w.len()).all(|i| &w[i..] > w)
}

/// All Lyndon words of length ≤ `max_len` over `{0..rank}`, in
/// lexicographic order (Duval's generation algorithm).
fn lyndon_words(rank: usize, max_len: usize) -> Vec<Vec<u8>> {
    let mut out = Vec::new();
    if rank == 0 || max_len == 0 {
        return out;
    }
    let mut w: Vec<u8> = vec![0];
    loop {
        out.push(w.clone());
        let m = w.len();
        while w.len() < max_len {
            let c = w[w.len() - m];
            w.push(c);
        }
        while let Some(&last) = w.last() {
            if last as usize == rank - 1 {
                w.pop();
            } else {
                break;
            }
        }
        match w.last_mut() {
            Some(last) => *last += 1,
            None => break,
        }
    }
    out
}

fn standard_split(w: &[u8]) -> usize {
    (1..w.len()).find(|&i| is_lyndon(&w[i..])).expect("Lyndon word of length >= 2 has a Lyndon suffix")
}

impl HallBasis {
    pub fn new(rank: usize, class: usize, budget: usize) -> Result<Self> {
        if rank == 0 || class == 0 {
            return Err(Error::InvalidArgument("rank and class must be positive".into()));
        }
        let size: u128 = (1..=class).map(|w| witt_number(rank, w)).sum();
        if size > budget as u128 {
            let per: Vec<String> = (1..=class).map(|w| format!("W({rank},{w})={}", witt_number(rank, w))).collect();
            return Err(Error::BudgetExceeded(format!(
                "rank {rank} class {class} needs {size} basic commutators ({}), budget is {budget}",
                per.join(", ")
            )));
        }
        let mut words = lyndon_words(rank, class);
        words.sort_by(|a, b| a.len().cmp(&b.len()).then_with(|| a.cmp(b)));
        let position: std::collections::HashMap<Vec<u8>, usize> = words.iter().enumerate().map(|(i, w)| (w.clone(), i)).collect();
        let elements: Vec<BasicCommutator> = words
            .iter()
            .map(|w| {
                let bracket = if w.len() == 1 {
                    Bracket::Letter(w[0] as usize)
                } else {
                    let s = standard_split(w);
                    Bracket::Pair(position[&w[..s]], position[&w[s..]])
                };
                BasicCommutator { word: w.clone(), weight: w.len(), bracket }
            })
            .collect();
        let mut layer_start = vec![0; class + 2];
        for w in 1..=class + 1 {
            layer_start[w] = elements.iter().position(|e| e.weight >= w).unwrap_or(elements.len());
        }
        Ok(HallBasis { rank, class, elements, layer_start })
    }

    pub fn rank(&self) -> usize {
        self.rank
    }

    pub fn class(&self) -> usize {
        self.class
    }

    pub fn len(&self) -> usize {
        self.elements.len()
    }

    pub fn is_empty(&self) -> bool {
        self.elements.is_empty()
    }

    pub fn elements(&self) -> &[BasicCommutator] {
        &self.elements
    }

    pub fn weight_of(&self, i: usize) -> usize {
        self.elements[i].weight
    }

    /// Index range of the basic commutators of weight `w`.
    pub fn layer(&self, w: usize) -> std::ops::Range<usize> {
        self.layer_start[w]..self.layer_start[w + 1]
    }

    /// Bracket notation with letters named by `names`, e.g. `[a0,[a0,a1]]`.
    pub fn describe(&self, i: usize, names: &[String]) -> String {
        match self.elements[i].bracket {
            Bracket::Letter(g) => names[g].clone(),
            Bracket::Pair(l, r) => format!("[{},{}]", self.describe(l, names), self.describe(r, names)),
        }
    }
}
