//! Exact integer matrix reductions: row Hermite normal form, Smith normal
//! form, and the abelian invariants they produce.
//!
//! Pivots are always chosen by minimal absolute value to limit entry growth.

use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::ser::SerializeStruct;
use serde::{Serialize, Serializer};

pub type Row = Vec<BigInt>;

fn pivot_row(rows: &[Row], from: usize, col: usize) -> Option<usize> {
    (from..rows.len())
        .filter(|&i| !rows[i][col].is_zero())
        .min_by(|&a, &b| rows[a][col].abs().cmp(&rows[b][col].abs()))
}

/// Row-style Hermite normal form of the lattice spanned by `rows`.
///
/// Output rows are nonzero, pivots strictly move right, pivots are
/// positive, and entries above each pivot lie in `[0, pivot)`.
pub fn hermite_rows(mut rows: Vec<Row>, ncols: usize) -> Vec<Row> {
    rows.retain(|r| r.iter().any(|x| !x.is_zero()));
    let mut r = 0;
    for c in 0..ncols {
        if r >= rows.len() {
            break;
        }
        loop {
            let Some(p) = pivot_row(&rows, r, c) else { break };
            rows.swap(r, p);
            let mut done = true;
            for i in r + 1..rows.len() {
                if rows[i][c].is_zero() {
                    continue;
                }
                let q = rows[i][c].div_floor(&rows[r][c]);
                if !q.is_zero() {
                    let (head, tail) = rows.split_at_mut(i);
                    for (x, y) in tail[0].iter_mut().zip(head[r].iter()).skip(c) {
                        *x -= &q * y;
                    }
                }
                if !rows[i][c].is_zero() {
                    done = false;
                }
            }
            if done {
                break;
            }
        }
        if rows[r][c].is_zero() {
            continue;
        }
        if rows[r][c].is_negative() {
            for x in rows[r].iter_mut() {
                *x = -&*x;
            }
        }
        for i in 0..r {
            let q = rows[i][c].div_floor(&rows[r][c]);
            if !q.is_zero() {
                let (head, tail) = rows.split_at_mut(r);
                for (x, y) in head[i].iter_mut().zip(tail[0].iter()).skip(c) {
                    *x -= &q * y;
                }
            }
        }
        r += 1;
    }
    rows.truncate(r);
    rows.retain(|row| row.iter().any(|x| !x.is_zero()));
    rows
}

/// Nonzero diagonal entries of the Smith normal form, in divisibility order.
pub fn smith_diagonal(mut m: Vec<Row>, ncols: usize) -> Vec<BigInt> {
    m.retain(|r| r.iter().any(|x| !x.is_zero()));
    let nrows = m.len();
    let mut diag = Vec::new();
    let mut t = 0;
    while t < nrows.min(ncols) {
        // smallest nonzero entry in the remaining block
        let mut best: Option<(usize, usize)> = None;
        for i in t..nrows {
            for j in t..ncols {
                if !m[i][j].is_zero() && best.is_none_or(|(bi, bj)| m[i][j].abs() < m[bi][bj].abs()) {
                    best = Some((i, j));
                }
            }
        }
        let Some((pi, pj)) = best else { break };
        m.swap(t, pi);
        for row in m.iter_mut() {
            row.swap(t, pj);
        }
        loop {
            let mut changed = false;
            for i in t + 1..nrows {
                if m[i][t].is_zero() {
                    continue;
                }
                let q = m[i][t].div_floor(&m[t][t]);
                let (head, tail) = m.split_at_mut(i);
                for (x, y) in tail[0].iter_mut().zip(head[t].iter()).skip(t) {
                    *x -= &q * y;
                }
                if !m[i][t].is_zero() {
                    changed = true;
                }
            }
            for j in t + 1..ncols {
                if m[t][j].is_zero() {
                    continue;
                }
                let q = m[t][j].div_floor(&m[t][t]);
                for row in m.iter_mut() {
                    let y = row[t].clone();
                    row[j] -= &q * y;
                }
                if !m[t][j].is_zero() {
                    changed = true;
                }
            }
            if !changed {
                // pivot must divide the rest of the block
                let mut fix = None;
                'outer: for i in t + 1..nrows {
                    for j in t + 1..ncols {
                        if !m[i][j].is_multiple_of(&m[t][t]) {
                            fix = Some(i);
                            break 'outer;
                        }
                    }
                }
                match fix {
                    Some(i) => {
                        let (head, tail) = m.split_at_mut(i);
                        for (x, y) in head[t].iter_mut().zip(tail[0].iter()) {
                            *x += y;
                        }
                    }
                    None => break,
                }
            }
            // move the smallest entry of row/column t into the pivot
            let mut best = (t, t);
            for i in t..nrows {
                if !m[i][t].is_zero() && m[i][t].abs() < m[best.0][best.1].abs() {
                    best = (i, t);
                }
            }
            for j in t..ncols {
                if !m[t][j].is_zero() && m[t][j].abs() < m[best.0][best.1].abs() {
                    best = (t, j);
                }
            }
            if best.0 != t {
                m.swap(t, best.0);
            }
            if best.1 != t {
                for row in m.iter_mut() {
                    row.swap(t, best.1);
                }
            }
        }
        diag.push(m[t][t].abs());
        t += 1;
    }
    diag
}

/// Isomorphism type `Z^free_rank ⊕ Z/d₁ ⊕ … ⊕ Z/d_k` with `d₁ | d₂ | …`
/// and every `dᵢ ≥ 2`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Default)]
pub struct AbelianInvariants {
    pub free_rank: usize,
    pub torsion: Vec<BigInt>,
}

impl AbelianInvariants {
    pub fn trivial() -> Self {
        AbelianInvariants::default()
    }

    /// Invariants of `Z^ngens / ⟨rows⟩`.
    pub fn from_relations(ngens: usize, rows: Vec<Row>) -> Self {
        let diag = smith_diagonal(rows, ngens);
        let rank = diag.len();
        let torsion = diag.into_iter().filter(|d| !d.is_one()).collect();
        AbelianInvariants { free_rank: ngens - rank, torsion }
    }

    pub fn from_parts(free_rank: usize, torsion: impl IntoIterator<Item = i64>) -> Self {
        // canonicalise through the Smith form of a diagonal matrix
        let t: Vec<i64> = torsion.into_iter().collect();
        let n = t.len();
        let rows = (0..n)
            .map(|i| (0..n).map(|j| if i == j { BigInt::from(t[i]) } else { BigInt::zero() }).collect())
            .collect();
        let tors = AbelianInvariants::from_relations(n, rows);
        AbelianInvariants { free_rank: free_rank + tors.free_rank, torsion: tors.torsion }
    }

    pub fn is_trivial(&self) -> bool {
        self.free_rank == 0 && self.torsion.is_empty()
    }

    /// Group order when finite.
    pub fn order(&self) -> Option<BigInt> {
        (self.free_rank == 0).then(|| self.torsion.iter().fold(BigInt::one(), |a, b| a * b))
    }

    pub fn torsion_u64(&self) -> Vec<u64> {
        self.torsion.iter().map(|d| d.to_u64().unwrap_or(u64::MAX)).collect()
    }

    pub fn is_canonical(&self) -> bool {
        self.torsion.iter().all(|d| d > &BigInt::one()) && self.torsion.windows(2).all(|w| w[1].is_multiple_of(&w[0]))
    }
}

impl fmt::Display for AbelianInvariants {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut parts = Vec::new();
        match self.free_rank {
            0 => {}
            1 => parts.push("Z".to_string()),
            r => parts.push(format!("Z^{r}")),
        }
        parts.extend(self.torsion.iter().map(|d| format!("Z/{d}")));
        if parts.is_empty() {
            write!(f, "0")
        } else {
            write!(f, "{}", parts.join(" + "))
        }
    }
}

struct BigList<'a>(&'a [BigInt]);

impl Serialize for BigList<'_> {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        use serde::ser::SerializeSeq;
        let mut seq = s.serialize_seq(Some(self.0.len()))?;
        for v in self.0 {
            match v.to_i64() {
                Some(x) => seq.serialize_element(&x)?,
                None => seq.serialize_element(&v.to_string())?,
            }
        }
        seq.end()
    }
}

impl Serialize for AbelianInvariants {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        let mut st = s.serialize_struct("AbelianInvariants", 2)?;
        st.serialize_field("free_rank", &self.free_rank)?;
        st.serialize_field("torsion", &BigList(&self.torsion))?;
        st.end()
    }
}

pub fn to_big_rows(rows: &[Vec<i64>]) -> Vec<Row> {
    rows.iter().map(|r| r.iter().map(|&x| BigInt::from(x)).collect()).collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn big(rows: &[&[i64]]) -> Vec<Row> {
        rows.iter().map(|r| r.iter().map(|&x| BigInt::from(x)).collect()).collect()
    }

    #[test]
    fn hermite_basic() {
        let h = hermite_rows(big(&[&[2, 0], &[0, 1]]), 2);
        assert_eq!(h, big(&[&[2, 0], &[0, 1]]));
        let h = hermite_rows(big(&[&[4, 6], &[6, 9], &[2, 3]]), 2);
        assert_eq!(h, big(&[&[2, 3]]));
        let h = hermite_rows(big(&[&[3, 5], &[0, 2], &[0, 0]]), 2);
        assert_eq!(h, big(&[&[3, 1], &[0, 2]]));
    }

    #[test]
    fn smith_examples() {
        let inv = AbelianInvariants::from_relations(2, big(&[&[2, 0], &[0, 3]]));
        assert_eq!(inv, AbelianInvariants::from_parts(0, [6]));
        assert_eq!(inv.torsion, vec![BigInt::from(6)]);
        let inv = AbelianInvariants::from_relations(2, big(&[&[2, 0], &[0, 2]]));
        assert_eq!(inv.torsion_u64(), vec![2, 2]);
        let inv = AbelianInvariants::from_relations(3, big(&[&[0, 0, 0]]));
        assert_eq!(inv.free_rank, 3);
        let inv = AbelianInvariants::from_relations(2, big(&[&[1, 1], &[1, 1]]));
        assert_eq!((inv.free_rank, inv.torsion.len()), (1, 0));
        let inv = AbelianInvariants::from_relations(3, big(&[&[2, 4, 4], &[-6, 6, 12], &[10, -4, -16]]));
        assert_eq!(inv.torsion_u64(), vec![2, 6, 12]);
    }

    #[test]
    fn display() {
        assert_eq!(AbelianInvariants::from_parts(1, [2]).to_string(), "Z + Z/2");
        assert_eq!(AbelianInvariants::trivial().to_string(), "0");
    }
}
