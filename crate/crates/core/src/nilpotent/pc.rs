//! Free nilpotent groups `F / γ_{c+1}(F)` in Hall-basis normal form.
//!
//! Every element has a unique normal form `b_1^{e_1} b_2^{e_2} .. b_m^{e_m}`
//! over the basic commutators. Products are formed in the faithful truncated
//! Magnus representation `x_g ↦ 1 + X_g` and read back into normal form
//! layer by layer: the lowest nonvanishing layer of a series is a Lie
//! element, expanded in the Lyndon basis by triangular elimination, then
//! peeled off on the left.

use std::fmt;
use std::sync::atomic::{AtomicU64, Ordering};
use std::sync::Arc;

use num_bigint::BigInt;

use super::hall::{Bracket, HallBasis, DEFAULT_BASIS_BUDGET};
use super::magnus::{Algebra, Series, Sparse};
use crate::error::{Error, Result};
use crate::word::{Generator, Word};

/// Largest truncated series the engine will allocate, in coefficients.
pub const MAX_SERIES_SIZE: usize = 1 << 20;

static NEXT_ID: AtomicU64 = AtomicU64::new(1);

#[derive(Debug)]
struct Inner {
    id: u64,
    names: Vec<Generator>,
    basis: HallBasis,
    alg: Algebra,
    /// Magnus image of each basic commutator.
    series: Vec<Arc<Series>>,
    one: Arc<Series>,
    /// Powers of `b_i - 1`, enough to expand `b_i^e`.
    aug_powers: Vec<Vec<Sparse>>,
    /// Lowest-degree part of `b_i - 1`, as `(index within its block, coefficient)`.
    lie: Vec<Vec<(usize, i128)>>,
    /// Block position of the Lyndon word of each basic commutator.
    lyndon_pos: Vec<usize>,
}

#[derive(Debug, Clone)]
pub struct PcGroup {
    inner: Arc<Inner>,
}

/// An element in normal form. Its Magnus image is carried along so that
/// products cost one series multiplication.
#[derive(Clone)]
pub struct PcElement {
    exps: Vec<i128>,
    series: Arc<Series>,
}

impl PartialEq for PcElement {
    fn eq(&self, other: &Self) -> bool {
        self.exps == other.exps
    }
}

impl Eq for PcElement {}

impl std::hash::Hash for PcElement {
    fn hash<H: std::hash::Hasher>(&self, state: &mut H) {
        self.exps.hash(state);
    }
}

impl fmt::Debug for PcElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "PcElement{:?}", self.exps)
    }
}

impl PcElement {
    pub fn exponents(&self) -> &[i128] {
        &self.exps
    }

    pub fn exponents_big(&self) -> Vec<BigInt> {
        self.exps.iter().map(|&e| BigInt::from(e)).collect()
    }

    pub fn is_identity(&self) -> bool {
        self.exps.iter().all(|&e| e == 0)
    }

    /// Index and exponent of the first nonzero coordinate.
    pub fn leading(&self) -> Option<(usize, i128)> {
        self.exps.iter().enumerate().find(|(_, &e)| e != 0).map(|(i, &e)| (i, e))
    }
}

/// Free nilpotent group of the given rank and class on letters `a1..ar`.
pub fn free_nilpotent(rank: usize, class: usize) -> Result<PcGroup> {
    if rank == 0 {
        return Err(Error::InvalidArgument("rank must be positive".into()));
    }
    let names = (1..=rank).map(|i| Generator::new(format!("a{i}"))).collect::<Result<Vec<_>>>()?;
    PcGroup::new(names, class, DEFAULT_BASIS_BUDGET)
}

impl PcGroup {
    pub fn new(names: Vec<Generator>, class: usize, budget: usize) -> Result<Self> {
        let rank = names.len();
        let basis = HallBasis::new(rank, class, budget)?;
        let alg = Algebra::new(rank, class, MAX_SERIES_SIZE)?;
        let mut series: Vec<Series> = Vec::with_capacity(basis.len());
        for bc in basis.elements() {
            let s = match bc.bracket {
                Bracket::Letter(g) => alg.letter(g),
                Bracket::Pair(l, r) => alg.commutator(&series[l], &series[r])?,
            };
            series.push(s);
        }
        let series: Vec<Arc<Series>> = series.into_iter().map(Arc::new).collect();
        let one = Arc::new(alg.one());
        let mut aug_powers = Vec::with_capacity(series.len());
        let mut lie = Vec::with_capacity(series.len());
        let mut lyndon_pos = Vec::with_capacity(series.len());
        for (i, s) in series.iter().enumerate() {
            let w = basis.weight_of(i);
            aug_powers.push(alg.powers_of_augmentation(s)?);
            let block = alg.block(w);
            let low: Vec<(usize, i128)> = s[block.clone()].iter().enumerate().filter(|(_, &c)| c != 0).map(|(j, &c)| (j, c)).collect();
            let pos = alg.monomial_index(&basis.elements()[i].word) - block.start;
            // the Lyndon word is the smallest monomial of its Lie polynomial, with coefficient 1
            debug_assert_eq!(low.first().copied(), Some((pos, 1)));
            lie.push(low);
            lyndon_pos.push(pos);
        }
        let id = NEXT_ID.fetch_add(1, Ordering::Relaxed);
        Ok(PcGroup { inner: Arc::new(Inner { id, names, basis, alg, series, one, aug_powers, lie, lyndon_pos }) })
    }

    pub fn id(&self) -> u64 {
        self.inner.id
    }

    pub fn same_group(&self, other: &PcGroup) -> bool {
        self.inner.id == other.inner.id
    }

    pub fn rank(&self) -> usize {
        self.inner.names.len()
    }

    pub fn class(&self) -> usize {
        self.inner.basis.class()
    }

    pub fn names(&self) -> &[Generator] {
        &self.inner.names
    }

    pub fn basis(&self) -> &HallBasis {
        &self.inner.basis
    }

    /// Number of basic commutators (the Hirsch length).
    pub fn len(&self) -> usize {
        self.inner.basis.len()
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }

    pub fn weight_of(&self, i: usize) -> usize {
        self.inner.basis.weight_of(i)
    }

    /// Bracket description of the `i`-th basic commutator.
    pub fn describe(&self, i: usize) -> String {
        let names: Vec<String> = self.inner.names.iter().map(|g| g.name().to_string()).collect();
        self.inner.basis.describe(i, &names)
    }

    pub fn identity(&self) -> PcElement {
        PcElement { exps: vec![0; self.len()], series: self.inner.one.clone() }
    }

    /// The `i`-th basic commutator.
    pub fn basis_element(&self, i: usize) -> PcElement {
        let mut exps = vec![0; self.len()];
        exps[i] = 1;
        PcElement { exps, series: self.inner.series[i].clone() }
    }

    /// The weight-one generators `x_1 .. x_r`.
    pub fn generators(&self) -> Vec<PcElement> {
        (0..self.rank()).map(|i| self.basis_element(i)).collect()
    }

    pub fn from_exponents(&self, exps: Vec<i128>) -> Result<PcElement> {
        if exps.len() != self.len() {
            return Err(Error::InvalidArgument(format!("expected {} exponents, got {}", self.len(), exps.len())));
        }
        let series = Arc::new(self.series_of(&exps)?);
        Ok(PcElement { exps, series })
    }

    /// Weight of the lowest lower-central layer the element reaches (`c+1` for the identity).
    pub fn weight(&self, x: &PcElement) -> usize {
        x.leading().map(|(i, _)| self.weight_of(i)).unwrap_or(self.class() + 1)
    }

    fn check(&self, x: &PcElement) -> Result<()> {
        if x.exps.len() != self.len() {
            return Err(Error::ParentMismatch);
        }
        Ok(())
    }

    /// `b_i^e` as a sparse series.
    fn basis_power(&self, i: usize, e: i128) -> Result<Sparse> {
        self.inner.alg.power_from(&self.inner.aug_powers[i], e)
    }

    pub fn to_series(&self, x: &PcElement) -> Result<Series> {
        self.check(x)?;
        Ok(x.series.as_ref().clone())
    }

    fn series_of(&self, exps: &[i128]) -> Result<Series> {
        let alg = &self.inner.alg;
        let mut s = alg.one();
        for (i, &e) in exps.iter().enumerate() {
            if e != 0 {
                s = alg.mul_sparse_right(&s, &self.basis_power(i, e)?)?;
            }
        }
        Ok(s)
    }

    /// Reads a group element back from its Magnus image.
    pub fn from_series(&self, s: Series) -> Result<PcElement> {
        let exps = self.coordinates_of(s.clone())?;
        Ok(PcElement { exps, series: Arc::new(s) })
    }

    fn coordinates_of(&self, mut s: Series) -> Result<Vec<i128>> {
        let inner = &*self.inner;
        let alg = &inner.alg;
        let mut exps = vec![0i128; self.len()];
        for w in 1..=self.class() {
            let layer = inner.basis.layer(w);
            if layer.is_empty() {
                continue;
            }
            let block = alg.block(w);
            let mut d: Vec<i128> = s[block.clone()].to_vec();
            if d.iter().all(|&c| c == 0) {
                continue;
            }
            for i in layer.clone() {
                let e = d[inner.lyndon_pos[i]];
                if e != 0 {
                    exps[i] = e;
                    for &(j, c) in &inner.lie[i] {
                        d[j] = d[j].checked_sub(e.checked_mul(c).ok_or(Error::Overflow("normal form"))?).ok_or(Error::Overflow("normal form"))?;
                    }
                }
            }
            if d.iter().any(|&c| c != 0) {
                return Err(Error::InvalidArgument("series is not the image of a group element".into()));
            }
            for i in layer {
                if exps[i] != 0 {
                    s = alg.mul_sparse_left(&self.basis_power(i, -exps[i])?, &s)?;
                }
            }
        }
        Ok(exps)
    }

    /// Normal form of a word over the group's letters.
    pub fn collect(&self, w: &Word) -> Result<PcElement> {
        if let Some(m) = w.max_gen() {
            if m >= self.rank() {
                return Err(Error::InvalidArgument(format!("word uses letter {m} but the rank is {}", self.rank())));
            }
        }
        let alg = &self.inner.alg;
        let mut s = alg.one();
        for syl in w.syllables() {
            s = alg.mul_letter_power(&s, syl.gen, syl.exp as i128)?;
        }
        self.from_series(s)
    }

    pub fn mul(&self, a: &PcElement, b: &PcElement) -> Result<PcElement> {
        if a.is_identity() {
            self.check(b)?;
            return Ok(b.clone());
        }
        if b.is_identity() {
            self.check(a)?;
            return Ok(a.clone());
        }
        self.check(a)?;
        self.check(b)?;
        self.from_series(self.inner.alg.mul(&a.series, &b.series)?)
    }

    pub fn inv(&self, a: &PcElement) -> Result<PcElement> {
        self.check(a)?;
        if a.is_identity() {
            return Ok(a.clone());
        }
        self.from_series(self.inner.alg.inverse(&a.series)?)
    }

    pub fn pow(&self, a: &PcElement, e: i128) -> Result<PcElement> {
        if e == 0 || a.is_identity() {
            return Ok(self.identity());
        }
        if e == 1 {
            return Ok(a.clone());
        }
        self.check(a)?;
        self.from_series(self.inner.alg.pow(&a.series, e)?)
    }

    /// `[a, b] = a b a^-1 b^-1`.
    pub fn comm(&self, a: &PcElement, b: &PcElement) -> Result<PcElement> {
        if a.is_identity() || b.is_identity() || self.weight(a) + self.weight(b) > self.class() {
            return Ok(self.identity());
        }
        self.check(a)?;
        self.check(b)?;
        self.from_series(self.inner.alg.commutator(&a.series, &b.series)?)
    }

    /// `g a g^-1`.
    pub fn conj(&self, a: &PcElement, g: &PcElement) -> Result<PcElement> {
        self.mul(&self.comm(g, a)?, a)
    }

    /// Normal form of `[b_j, b_i]` for `i < j`, one entry of the commutation table.
    pub fn commutation(&self, j: usize, i: usize) -> Result<PcElement> {
        self.comm(&self.basis_element(j), &self.basis_element(i))
    }

    /// All nontrivial commutation-table entries `(j, i, [b_j, b_i])` with `i < j`.
    pub fn commutation_table(&self) -> Result<Vec<(usize, usize, PcElement)>> {
        let mut out = Vec::new();
        for j in 0..self.len() {
            for i in 0..j {
                if self.weight_of(i) + self.weight_of(j) <= self.class() {
                    let c = self.commutation(j, i)?;
                    if !c.is_identity() {
                        out.push((j, i, c));
                    }
                }
            }
        }
        Ok(out)
    }

    /// Image under the projection to class `class` (a prefix of the basis).
    pub fn project(&self, x: &PcElement, target: &PcGroup) -> Result<PcElement> {
        self.check(x)?;
        if target.rank() != self.rank() || target.class() > self.class() {
            return Err(Error::InvalidArgument("projection target must have the same rank and smaller class".into()));
        }
        target.from_exponents(x.exps[..target.len()].to_vec())
    }

    /// Renders an element as a product of basic commutators.
    pub fn render(&self, x: &PcElement) -> String {
        let parts: Vec<String> = x
            .exps
            .iter()
            .enumerate()
            .filter(|(_, &e)| e != 0)
            .map(|(i, &e)| if e == 1 { self.describe(i) } else { format!("{}^{}", self.describe(i), e) })
            .collect();
        if parts.is_empty() {
            "1".into()
        } else {
            parts.join(" * ")
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::word::{commutator, reduce};

    #[test]
    fn generators_and_commutator() {
        let g = free_nilpotent(2, 2).unwrap();
        assert_eq!(g.len(), 3);
        let c = g.collect(&commutator(&Word::letter(0), &Word::letter(1))).unwrap();
        assert_eq!(c.exponents(), &[0, 0, 1]);
        assert!(g.collect(&Word::identity()).unwrap().is_identity());
    }

    #[test]
    fn conjugate_in_class_two() {
        // a1 a2 a1^-1 = a2 [a1,a2]^{+1}? compute: a1 a2 a1^-1 = [a1,a2] a2
        let g = free_nilpotent(2, 2).unwrap();
        let x = g.collect(&reduce([(0, 1), (1, 1), (0, -1)])).unwrap();
        assert_eq!(x.exponents(), &[0, 1, 1]);
    }

    #[test]
    fn inverse_and_pow() {
        let g = free_nilpotent(3, 4).unwrap();
        let w = reduce([(0, 2), (1, -1), (2, 3), (0, -1), (1, 2)]);
        let x = g.collect(&w).unwrap();
        let xi = g.inv(&x).unwrap();
        assert!(g.mul(&x, &xi).unwrap().is_identity());
        assert_eq!(g.collect(&w.inverse()).unwrap(), xi);
        assert_eq!(g.pow(&x, 3).unwrap(), g.collect(&w.pow(3)).unwrap());
        assert_eq!(g.pow(&x, -2).unwrap(), g.collect(&w.pow(-2)).unwrap());
    }

    #[test]
    fn commutation_entries_stay_in_higher_weight() {
        let g = free_nilpotent(3, 4).unwrap();
        for (j, i, c) in g.commutation_table().unwrap() {
            assert!(g.weight(&c) >= g.weight_of(i) + g.weight_of(j));
        }
    }

    #[test]
    fn basis_elements_collect_to_unit_vectors() {
        let g = free_nilpotent(2, 5).unwrap();
        let expr = |i: usize| -> Word {
            fn go(b: &HallBasis, i: usize) -> Word {
                match b.elements()[i].bracket {
                    Bracket::Letter(x) => Word::letter(x),
                    Bracket::Pair(l, r) => commutator(&go(b, l), &go(b, r)),
                }
            }
            go(g.basis(), i)
        };
        for i in 0..g.len() {
            assert_eq!(g.collect(&expr(i)).unwrap(), g.basis_element(i), "{}", g.describe(i));
        }
    }
}
