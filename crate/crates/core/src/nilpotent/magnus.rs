//! Truncated Magnus algebra `Z<<X1..Xr>> / (degree > c)`.
//!
//! A series is a dense coefficient vector over all monomials of degree at
//! most `c`. Monomials of degree `d` occupy a contiguous block; within the
//! block a monomial `g1 g2 .. gd` sits at `Σ gi r^(d-i)`, so block order is
//! lexicographic order on words.

use crate::error::{Error, Result};

pub type Series = Vec<i128>;

/// Sparse series: `(monomial index, coefficient)` pairs.
pub type Sparse = Vec<(usize, i128)>;

#[derive(Debug, Clone)]
pub struct Algebra {
    rank: usize,
    class: usize,
    /// `offset[d]`: index of the first monomial of degree `d`; `offset[c+1]` is the size.
    offset: Vec<usize>,
    /// `rpow[k] = r^k`.
    rpow: Vec<usize>,
    /// degree of each monomial index
    degree: Vec<u8>,
}

fn overflow() -> Error {
    Error::Overflow("Magnus coefficient arithmetic")
}

#[inline]
fn add_mul(acc: &mut i128, a: i128, b: i128) -> Result<()> {
    let p = a.checked_mul(b).ok_or_else(overflow)?;
    *acc = acc.checked_add(p).ok_or_else(overflow)?;
    Ok(())
}

/// Generalised binomial coefficient `C(e, k)` for any integer `e`.
pub fn binomial(e: i128, k: usize) -> Result<i128> {
    let mut b: i128 = 1;
    for i in 0..k as i128 {
        b = b.checked_mul(e - i).ok_or_else(overflow)? / (i + 1);
    }
    Ok(b)
}

impl Algebra {
    pub fn new(rank: usize, class: usize, max_size: usize) -> Result<Self> {
        let mut rpow = vec![1usize];
        let mut offset = vec![0usize];
        for d in 0..=class {
            let block = rpow[d];
            let end = offset[d].checked_add(block).filter(|&e| e <= max_size).ok_or_else(|| {
                Error::BudgetExceeded(format!("truncated series for rank {rank} class {class} exceed {max_size} coefficients"))
            })?;
            offset.push(end);
            rpow.push(block.saturating_mul(rank));
        }
        let mut degree = vec![0u8; offset[class + 1]];
        for d in 0..=class {
            for slot in &mut degree[offset[d]..offset[d + 1]] {
                *slot = d as u8;
            }
        }
        Ok(Algebra { rank, class, offset, rpow, degree })
    }

    pub fn size(&self) -> usize {
        self.offset[self.class + 1]
    }

    pub fn block(&self, d: usize) -> std::ops::Range<usize> {
        self.offset[d]..self.offset[d + 1]
    }

    pub fn degree_of(&self, idx: usize) -> usize {
        self.degree[idx] as usize
    }

    pub fn monomial_index(&self, word: &[u8]) -> usize {
        let v = word.iter().fold(0usize, |acc, &g| acc * self.rank + g as usize);
        self.offset[word.len()] + v
    }

    pub fn one(&self) -> Series {
        let mut s = vec![0; self.size()];
        s[0] = 1;
        s
    }

    /// `1 + X_g`.
    pub fn letter(&self, g: usize) -> Series {
        let mut s = self.one();
        if self.class >= 1 {
            s[self.offset[1] + g] = 1;
        }
        s
    }

    pub fn sparse(s: &[i128]) -> Sparse {
        s.iter().enumerate().filter(|(_, &c)| c != 0).map(|(i, &c)| (i, c)).collect()
    }

    /// `a * b` where `a` is given sparsely.
    pub fn mul_sparse_left(&self, a: &[(usize, i128)], b: &[i128]) -> Result<Series> {
        let c = self.class;
        let mut out = vec![0i128; self.size()];
        for &(ia, ca) in a {
            let da = self.degree_of(ia);
            let va = ia - self.offset[da];
            for db in 0..=c - da {
                let shift = self.rpow[db];
                let base = self.offset[da + db] + va * shift;
                let bb = &b[self.offset[db]..self.offset[db + 1]];
                let dst = &mut out[base..base + bb.len()];
                for (o, &cb) in dst.iter_mut().zip(bb) {
                    if cb != 0 {
                        add_mul(o, ca, cb)?;
                    }
                }
            }
        }
        Ok(out)
    }

    /// `a * b` where `b` is given sparsely.
    pub fn mul_sparse_right(&self, a: &[i128], b: &[(usize, i128)]) -> Result<Series> {
        let c = self.class;
        let mut out = vec![0i128; self.size()];
        for &(ib, cb) in b {
            let db = self.degree_of(ib);
            let vb = ib - self.offset[db];
            let shift = self.rpow[db];
            for da in 0..=c - db {
                let src = &a[self.offset[da]..self.offset[da + 1]];
                let base = self.offset[da + db] + vb;
                for (va, &ca) in src.iter().enumerate() {
                    if ca != 0 {
                        add_mul(&mut out[base + va * shift], ca, cb)?;
                    }
                }
            }
        }
        Ok(out)
    }

    pub fn mul(&self, a: &[i128], b: &[i128]) -> Result<Series> {
        let sa = Self::sparse(a);
        let sb = Self::sparse(b);
        if sa.len() <= sb.len() {
            self.mul_sparse_left(&sa, b)
        } else {
            self.mul_sparse_right(a, &sb)
        }
    }

    /// Lowest degree with a nonzero coefficient among positive degrees.
    pub fn valuation(&self, p: &[i128]) -> usize {
        (1..=self.class).find(|&d| p[self.block(d)].iter().any(|&x| x != 0)).unwrap_or(self.class + 1)
    }

    /// Powers `P^1, .., P^k` of `P = s - 1` for all `k` with `k * val(P) ≤ c`.
    pub fn powers_of_augmentation(&self, s: &[i128]) -> Result<Vec<Sparse>> {
        let mut p = s.to_vec();
        p[0] -= 1;
        let v = self.valuation(&p);
        let mut out = Vec::new();
        if v > self.class {
            return Ok(out);
        }
        let ps = Self::sparse(&p);
        let mut cur = p;
        out.push(ps.clone());
        for _ in 2..=self.class / v {
            cur = self.mul_sparse_right(&cur, &ps)?;
            out.push(Self::sparse(&cur));
        }
        Ok(out)
    }

    /// `(1 + P)^e` from precomputed powers of `P`.
    pub fn power_from(&self, powers: &[Sparse], e: i128) -> Result<Sparse> {
        let mut dense = self.one();
        for (k, pk) in powers.iter().enumerate() {
            let b = binomial(e, k + 1)?;
            if b == 0 {
                continue;
            }
            for &(i, c) in pk {
                add_mul(&mut dense[i], b, c)?;
            }
        }
        Ok(Self::sparse(&dense))
    }

    pub fn pow(&self, s: &[i128], e: i128) -> Result<Series> {
        let powers = self.powers_of_augmentation(s)?;
        let sp = self.power_from(&powers, e)?;
        let mut out = vec![0; self.size()];
        for (i, c) in sp {
            out[i] = c;
        }
        Ok(out)
    }

    pub fn inverse(&self, s: &[i128]) -> Result<Series> {
        self.pow(s, -1)
    }

    pub fn commutator(&self, a: &[i128], b: &[i128]) -> Result<Series> {
        let ab = self.mul(a, b)?;
        let ai = self.inverse(a)?;
        let bi = self.inverse(b)?;
        self.mul(&self.mul(&ab, &ai)?, &bi)
    }

    /// `s * (1 + X_g)^e`.
    pub fn mul_letter_power(&self, s: &[i128], g: usize, e: i128) -> Result<Series> {
        let c = self.class;
        let mut out = s.to_vec();
        for k in 1..=c {
            let b = binomial(e, k)?;
            if b == 0 {
                continue;
            }
            // monomial g^k appended on the right
            let tail = (0..k).fold(0usize, |acc, _| acc * self.rank + g);
            let shift = self.rpow[k];
            for da in 0..=c - k {
                let base = self.offset[da + k] + tail;
                for va in 0..self.rpow[da] {
                    let ca = s[self.offset[da] + va];
                    if ca != 0 {
                        add_mul(&mut out[base + va * shift], ca, b)?;
                    }
                }
            }
        }
        Ok(out)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn binomials() {
        assert_eq!(binomial(5, 2).unwrap(), 10);
        assert_eq!(binomial(-1, 3).unwrap(), -1);
        assert_eq!(binomial(-2, 2).unwrap(), 3);
        assert_eq!(binomial(3, 5).unwrap(), 0);
    }

    #[test]
    fn letter_inverse_and_powers() {
        let a = Algebra::new(2, 4, 1 << 20).unwrap();
        let x = a.letter(0);
        let xi = a.inverse(&x).unwrap();
        assert_eq!(a.mul(&x, &xi).unwrap(), a.one());
        let x3 = a.pow(&x, 3).unwrap();
        let direct = a.mul(&a.mul(&x, &x).unwrap(), &x).unwrap();
        assert_eq!(x3, direct);
        assert_eq!(a.mul_letter_power(&a.one(), 0, 3).unwrap(), x3);
        assert_eq!(a.mul_letter_power(&x3, 0, -3).unwrap(), a.one());
    }

    #[test]
    fn commutator_leading_term() {
        let a = Algebra::new(2, 3, 1 << 20).unwrap();
        let c = a.commutator(&a.letter(0), &a.letter(1)).unwrap();
        assert_eq!(a.valuation(&{
            let mut p = c.clone();
            p[0] -= 1;
            p
        }), 2);
        assert_eq!(c[a.monomial_index(&[0, 1])], 1);
        assert_eq!(c[a.monomial_index(&[1, 0])], -1);
        assert_eq!(c[a.monomial_index(&[0, 0])], 0);
    }
}
