//! Induced generating sequences in torsion-free polycyclic groups.
//!
//! The routines are generic over the group so that the same closure code
//! runs in `N` and in `N × N` (used for intersections).

use std::collections::BTreeMap;

use num_integer::Integer;

use super::pc::{PcElement, PcGroup};
use crate::error::Result;

pub(crate) trait PcLike {
    type Elem: Clone;
    fn class(&self) -> usize;
    fn mul(&self, a: &Self::Elem, b: &Self::Elem) -> Result<Self::Elem>;
    fn inv(&self, a: &Self::Elem) -> Result<Self::Elem>;
    fn pow(&self, a: &Self::Elem, e: i128) -> Result<Self::Elem>;
    fn comm(&self, a: &Self::Elem, b: &Self::Elem) -> Result<Self::Elem>;
    /// Depth and exponent of the leading coordinate.
    fn leading(&self, a: &Self::Elem) -> Option<(usize, i128)>;
    fn coord(&self, a: &Self::Elem, depth: usize) -> i128;
    /// Lower bound for the lower-central weight (`class + 1` for the identity).
    fn weight(&self, a: &Self::Elem) -> usize;
}

impl PcLike for PcGroup {
    type Elem = PcElement;
    fn class(&self) -> usize {
        PcGroup::class(self)
    }
    fn mul(&self, a: &PcElement, b: &PcElement) -> Result<PcElement> {
        PcGroup::mul(self, a, b)
    }
    fn inv(&self, a: &PcElement) -> Result<PcElement> {
        PcGroup::inv(self, a)
    }
    fn pow(&self, a: &PcElement, e: i128) -> Result<PcElement> {
        PcGroup::pow(self, a, e)
    }
    fn comm(&self, a: &PcElement, b: &PcElement) -> Result<PcElement> {
        PcGroup::comm(self, a, b)
    }
    fn leading(&self, a: &PcElement) -> Option<(usize, i128)> {
        a.leading()
    }
    fn coord(&self, a: &PcElement, depth: usize) -> i128 {
        a.exponents()[depth]
    }
    fn weight(&self, a: &PcElement) -> usize {
        PcGroup::weight(self, a)
    }
}

/// `N × N` with the second factor's coordinates ordered first.
pub(crate) struct Square<'a>(pub &'a PcGroup);

impl PcLike for Square<'_> {
    type Elem = (PcElement, PcElement);
    fn class(&self) -> usize {
        self.0.class()
    }
    fn mul(&self, a: &Self::Elem, b: &Self::Elem) -> Result<Self::Elem> {
        Ok((self.0.mul(&a.0, &b.0)?, self.0.mul(&a.1, &b.1)?))
    }
    fn inv(&self, a: &Self::Elem) -> Result<Self::Elem> {
        Ok((self.0.inv(&a.0)?, self.0.inv(&a.1)?))
    }
    fn pow(&self, a: &Self::Elem, e: i128) -> Result<Self::Elem> {
        Ok((self.0.pow(&a.0, e)?, self.0.pow(&a.1, e)?))
    }
    fn comm(&self, a: &Self::Elem, b: &Self::Elem) -> Result<Self::Elem> {
        Ok((self.0.comm(&a.0, &b.0)?, self.0.comm(&a.1, &b.1)?))
    }
    fn leading(&self, a: &Self::Elem) -> Option<(usize, i128)> {
        a.1.leading().or_else(|| a.0.leading().map(|(i, e)| (i + self.0.len(), e)))
    }
    fn coord(&self, a: &Self::Elem, depth: usize) -> i128 {
        let m = self.0.len();
        if depth < m {
            a.1.exponents()[depth]
        } else {
            a.0.exponents()[depth - m]
        }
    }
    fn weight(&self, a: &Self::Elem) -> usize {
        self.0.weight(&a.0).min(self.0.weight(&a.1))
    }
}

fn is_one<G: PcLike>(g: &G, x: &G::Elem) -> bool {
    g.leading(x).is_none()
}

/// Extended gcd with `s a + t b = g > 0`.
fn ext_gcd(a: i128, b: i128) -> (i128, i128, i128) {
    let r = a.extended_gcd(&b);
    if r.gcd < 0 {
        (-r.gcd, -r.x, -r.y)
    } else {
        (r.gcd, r.x, r.y)
    }
}

pub(crate) struct Closure<'g, G: PcLike> {
    g: &'g G,
    rows: BTreeMap<usize, G::Elem>,
    conjugators: Vec<G::Elem>,
    todo: Vec<G::Elem>,
}

impl<'g, G: PcLike> Closure<'g, G> {
    pub fn new(g: &'g G, conjugators: Vec<G::Elem>) -> Self {
        Closure { g, rows: BTreeMap::new(), conjugators, todo: Vec::new() }
    }

    /// Sifts `x` through the rows; returns the remainder (identity iff member).
    pub fn sift(&self, x: &G::Elem) -> Result<G::Elem> {
        let g = self.g;
        let mut x = x.clone();
        while let Some((d, e)) = g.leading(&x) {
            let Some(r) = self.rows.get(&d) else { break };
            let (_, a) = g.leading(r).expect("rows are nontrivial");
            if e % a != 0 {
                break;
            }
            x = g.mul(&g.pow(r, -(e / a))?, &x)?;
        }
        Ok(x)
    }

    fn queue_commutators(&mut self, x: &G::Elem) -> Result<()> {
        let g = self.g;
        let wx = g.weight(x);
        let c = g.class();
        for y in self.rows.values().chain(self.conjugators.iter()) {
            if wx + g.weight(y) <= c {
                let k = g.comm(x, y)?;
                if !is_one(g, &k) {
                    self.todo.push(k);
                }
            }
        }
        Ok(())
    }

    fn insert(&mut self, x: G::Elem) -> Result<()> {
        let g = self.g;
        let mut x = x;
        while let Some((d, e)) = g.leading(&x) {
            match self.rows.get(&d).cloned() {
                None => {
                    if e < 0 {
                        x = g.inv(&x)?;
                    }
                    self.queue_commutators(&x)?;
                    self.rows.insert(d, x);
                    return Ok(());
                }
                Some(r) => {
                    let (_, a) = g.leading(&r).expect("rows are nontrivial");
                    if e % a == 0 {
                        x = g.mul(&g.pow(&r, -(e / a))?, &x)?;
                        continue;
                    }
                    let (gcd, s, t) = ext_gcd(a, e);
                    let fresh = g.mul(&g.pow(&r, s)?, &g.pow(&x, t)?)?;
                    debug_assert_eq!(g.leading(&fresh).map(|p| p.1), Some(gcd));
                    self.queue_commutators(&fresh)?;
                    self.rows.insert(d, fresh.clone());
                    self.todo.push(r);
                    x = g.mul(&g.pow(&fresh, -(e / gcd))?, &x)?;
                }
            }
        }
        Ok(())
    }

    pub fn add(&mut self, seeds: impl IntoIterator<Item = G::Elem>) -> Result<()> {
        self.todo.extend(seeds);
        loop {
            while let Some(x) = self.todo.pop() {
                self.insert(x)?;
            }
            // closure audit: every commutator must already sift to the identity
            let g = self.g;
            let c = g.class();
            let rows: Vec<G::Elem> = self.rows.values().cloned().collect();
            let mut missing = Vec::new();
            for (i, x) in rows.iter().enumerate() {
                let wx = g.weight(x);
                for y in rows[i + 1..].iter().chain(self.conjugators.iter()) {
                    if wx + g.weight(y) <= c {
                        let r = self.sift(&g.comm(x, y)?)?;
                        if !is_one(g, &r) {
                            missing.push(r);
                        }
                    }
                }
            }
            if missing.is_empty() {
                return Ok(());
            }
            self.todo = missing;
        }
    }

    /// Canonical rows: positive leading exponents and every entry above
    /// another row's pivot reduced into `[0, pivot)`.
    pub fn canonical_rows(&self) -> Result<Vec<G::Elem>> {
        let g = self.g;
        let pivots: Vec<(usize, G::Elem, i128)> =
            self.rows.iter().map(|(&d, r)| (d, r.clone(), g.leading(r).expect("nontrivial").1)).collect();
        let mut out = Vec::with_capacity(pivots.len());
        for (i, (_, row, _)) in pivots.iter().enumerate() {
            let mut row = row.clone();
            for (dj, rj, aj) in &pivots[i + 1..] {
                let q = Integer::div_floor(&g.coord(&row, *dj), aj);
                if q != 0 {
                    row = g.mul(&row, &g.pow(rj, -q)?)?;
                }
            }
            out.push(row);
        }
        Ok(out)
    }

}

/// Coordinates of `x` with respect to canonical rows (`x = Π rows[i]^{v_i}`).
pub(crate) fn row_coordinates<G: PcLike>(g: &G, rows: &[G::Elem], x: &G::Elem) -> Result<Option<Vec<i128>>> {
    let mut x = x.clone();
    let mut v = vec![0i128; rows.len()];
    for (i, r) in rows.iter().enumerate() {
        let (d, a) = g.leading(r).expect("rows are nontrivial");
        match g.leading(&x) {
            None => break,
            Some((dx, _)) if dx < d => return Ok(None),
            _ => {}
        }
        let e = g.coord(&x, d);
        if e % a != 0 {
            return Ok(None);
        }
        let q = e / a;
        if q != 0 {
            x = g.mul(&g.pow(r, -q)?, &x)?;
            v[i] = q;
        }
    }
    if is_one(g, &x) {
        Ok(Some(v))
    } else {
        Ok(None)
    }
}

pub(crate) fn closure_in<G: PcLike>(g: &G, seeds: Vec<G::Elem>, conjugators: Vec<G::Elem>) -> Result<Vec<G::Elem>> {
    let mut cl = Closure::new(g, conjugators);
    cl.add(seeds)?;
    cl.canonical_rows()
}
