//! Todd–Coxeter coset enumeration.
//!
//! Two strategies are provided: HLT (relator-driven scanning with
//! lookahead when the row limit is reached) and Felsch (definitions in
//! row-major order, every deduction processed before the next
//! definition). Both are deterministic for a fixed input.

use std::fmt::Write as _;

use crate::error::{Error, Result};
use crate::presentation::Presentation;
use crate::word::Word;

const NONE: u32 = u32::MAX;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, serde::Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Strategy {
    Hlt,
    Felsch,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, serde::Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum EnumerationStatus {
    Complete,
    ExceededLimit,
}

/// Coset table; column `2g` is generator `g`, column `2g+1` its inverse.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CosetTable {
    ngens: usize,
    rows: Vec<Vec<u32>>,
    status: EnumerationStatus,
    /// Largest number of simultaneously live cosets seen.
    pub max_live: usize,
    /// Total number of coset definitions made.
    pub defined: usize,
}

impl CosetTable {
    /// Complete table from explicit rows (coset 0 is the subgroup).
    pub(crate) fn from_rows(ngens: usize, rows: Vec<Vec<u32>>) -> Self {
        let defined = rows.len();
        CosetTable { ngens, rows, status: EnumerationStatus::Complete, max_live: defined, defined }
    }

    pub fn status(&self) -> EnumerationStatus {
        self.status
    }

    pub fn is_complete(&self) -> bool {
        self.status == EnumerationStatus::Complete
    }

    /// Number of cosets (the index) of a complete table.
    pub fn len(&self) -> usize {
        self.rows.len()
    }

    pub fn is_empty(&self) -> bool {
        self.rows.is_empty()
    }

    pub fn ngens(&self) -> usize {
        self.ngens
    }

    pub fn rows(&self) -> &[Vec<u32>] {
        &self.rows
    }

    /// Image of coset `c` under column `col`.
    pub fn act(&self, c: usize, col: usize) -> usize {
        self.rows[c][col] as usize
    }

    /// Image of coset `c` under a word (right action).
    pub fn trace(&self, mut c: usize, w: &Word) -> usize {
        for (g, s) in w.letters() {
            c = self.act(c, column(g, s));
        }
        c
    }

    /// CSV export: `coset,g0,g0^-1,g1,...`.
    pub fn to_csv(&self, p: &Presentation) -> String {
        let mut out = String::from("coset");
        for g in p.generators() {
            let _ = write!(out, ",{0},{0}^-1", g.name());
        }
        out.push('\n');
        for (i, row) in self.rows.iter().enumerate() {
            let _ = write!(out, "{i}");
            for v in row {
                if *v == NONE {
                    out.push_str(",");
                } else {
                    let _ = write!(out, ",{v}");
                }
            }
            out.push('\n');
        }
        out
    }
}

pub(crate) fn column(gen: usize, sign: i64) -> usize {
    if sign > 0 {
        2 * gen
    } else {
        2 * gen + 1
    }
}

fn word_columns(w: &Word) -> Vec<usize> {
    w.letters().map(|(g, s)| column(g, s)).collect()
}

struct LimitHit;

struct Enumerator {
    ncols: usize,
    table: Vec<u32>,
    parent: Vec<u32>,
    live: usize,
    limit: usize,
    defined: usize,
    max_live: usize,
    queue: Vec<usize>,
    deductions: Vec<(usize, usize)>,
    record_deductions: bool,
}

impl Enumerator {
    fn new(ngens: usize, limit: usize, record_deductions: bool) -> Self {
        let ncols = 2 * ngens;
        Enumerator {
            ncols,
            table: vec![NONE; ncols],
            parent: vec![0],
            live: 1,
            limit,
            defined: 1,
            max_live: 1,
            queue: Vec::new(),
            deductions: Vec::new(),
            record_deductions,
        }
    }

    #[inline]
    fn get(&self, c: usize, x: usize) -> u32 {
        self.table[c * self.ncols + x]
    }

    #[inline]
    fn set(&mut self, c: usize, x: usize, v: u32) {
        self.table[c * self.ncols + x] = v;
    }

    fn is_live(&self, c: usize) -> bool {
        self.parent[c] as usize == c
    }

    fn define(&mut self, c: usize, x: usize) -> std::result::Result<usize, LimitHit> {
        if self.live >= self.limit {
            return Err(LimitHit);
        }
        let n = self.parent.len();
        self.parent.push(n as u32);
        self.table.extend(std::iter::repeat_n(NONE, self.ncols));
        self.live += 1;
        self.defined += 1;
        self.max_live = self.max_live.max(self.live);
        self.set(c, x, n as u32);
        self.set(n, x ^ 1, c as u32);
        if self.record_deductions {
            self.deductions.push((c, x));
        }
        Ok(n)
    }

    fn deduce(&mut self, f: usize, x: usize, b: usize) {
        self.set(f, x, b as u32);
        self.set(b, x ^ 1, f as u32);
        if self.record_deductions {
            self.deductions.push((f, x));
        }
    }

    fn rep(&mut self, c: usize) -> usize {
        let mut r = c;
        while self.parent[r] as usize != r {
            r = self.parent[r] as usize;
        }
        let mut k = c;
        while self.parent[k] as usize != r {
            let next = self.parent[k] as usize;
            self.parent[k] = r as u32;
            k = next;
        }
        r
    }

    fn merge(&mut self, a: usize, b: usize) {
        let (ra, rb) = (self.rep(a), self.rep(b));
        if ra != rb {
            let (lo, hi) = (ra.min(rb), ra.max(rb));
            self.parent[hi] = lo as u32;
            self.live -= 1;
            self.queue.push(hi);
        }
    }

    fn coincidence(&mut self, a: usize, b: usize) {
        self.queue.clear();
        self.merge(a, b);
        let mut i = 0;
        while i < self.queue.len() {
            let g = self.queue[i];
            i += 1;
            for x in 0..self.ncols {
                let d = self.get(g, x);
                if d == NONE {
                    continue;
                }
                let d = d as usize;
                if self.get(d, x ^ 1) as usize == g {
                    self.set(d, x ^ 1, NONE);
                }
                let mu = self.rep(g);
                let nu = self.rep(d);
                let mx = self.get(mu, x);
                if mx != NONE {
                    let t = self.rep(mx as usize);
                    self.merge(nu, t);
                } else {
                    let nx = self.get(nu, x ^ 1);
                    if nx != NONE {
                        let t = self.rep(nx as usize);
                        self.merge(mu, t);
                    } else {
                        self.deduce(mu, x, nu);
                    }
                }
            }
        }
    }

    /// Scans `w` at coset `a`, defining new cosets when `fill` is set.
    fn scan(&mut self, a: usize, w: &[usize], fill: bool) -> std::result::Result<(), LimitHit> {
        if w.is_empty() {
            return Ok(());
        }
        let mut f = a;
        let mut i = 0usize;
        let mut b = a;
        let mut j = w.len() as isize - 1;
        loop {
            while (i as isize) <= j {
                let t = self.get(f, w[i]);
                if t == NONE {
                    break;
                }
                f = t as usize;
                i += 1;
            }
            if (i as isize) > j {
                if f != a {
                    self.coincidence(f, a);
                }
                return Ok(());
            }
            while j >= i as isize {
                let t = self.get(b, w[j as usize] ^ 1);
                if t == NONE {
                    break;
                }
                b = t as usize;
                j -= 1;
            }
            if j < i as isize {
                self.coincidence(f, b);
                return Ok(());
            } else if j == i as isize {
                self.deduce(f, w[i], b);
                return Ok(());
            } else if fill {
                self.define(f, w[i])?;
            } else {
                return Ok(());
            }
        }
    }

    fn lookahead(&mut self, rels: &[Vec<usize>]) {
        let mut c = 0;
        while c < self.parent.len() {
            if self.is_live(c) {
                for r in rels {
                    let _ = self.scan(c, r, false);
                    if !self.is_live(c) {
                        break;
                    }
                }
            }
            c += 1;
        }
    }

    /// Renumbers live cosets in order; returns the new index of `keep`.
    fn compact(&mut self, keep: usize) -> usize {
        let n = self.parent.len();
        let mut map = vec![NONE; n];
        let mut next = 0u32;
        for c in 0..n {
            if self.is_live(c) {
                map[c] = next;
                next += 1;
            }
        }
        let mut table = Vec::with_capacity(next as usize * self.ncols);
        for c in 0..n {
            if map[c] == NONE {
                continue;
            }
            for x in 0..self.ncols {
                let v = self.get(c, x);
                table.push(if v == NONE { NONE } else { map[v as usize] });
            }
        }
        self.table = table;
        self.parent = (0..next).collect();
        self.deductions.clear();
        let mut k = keep;
        while k < n && map[k] == NONE {
            k += 1;
        }
        if k < n {
            map[k] as usize
        } else {
            next as usize
        }
    }

    fn finish(mut self, ngens: usize, status: EnumerationStatus) -> CosetTable {
        let rows = if status == EnumerationStatus::Complete {
            self.compact(0);
            (0..self.parent.len()).map(|c| self.table[c * self.ncols..(c + 1) * self.ncols].to_vec()).collect()
        } else {
            Vec::new()
        };
        CosetTable { ngens, rows, status, max_live: self.max_live, defined: self.defined }
    }
}

fn check_words(p: &Presentation, words: &[Word], what: &str) -> Result<()> {
    for w in words {
        if let Some(m) = w.max_gen() {
            if m >= p.rank() {
                return Err(Error::InvalidArgument(format!("{what} uses a generator outside the presentation")));
            }
        }
    }
    Ok(())
}

fn hlt(p: &Presentation, rels: &[Vec<usize>], sub: &[Vec<usize>], limit: usize) -> CosetTable {
    let ncols = 2 * p.rank();
    let mut e = Enumerator::new(p.rank(), limit, false);
    for w in sub {
        if e.scan(0, w, true).is_err() {
            return e.finish(p.rank(), EnumerationStatus::ExceededLimit);
        }
    }
    let mut a = 0usize;
    while a < e.parent.len() {
        if e.is_live(a) {
            let mut hit = false;
            for r in rels {
                if e.scan(a, r, true).is_err() {
                    hit = true;
                    break;
                }
                if !e.is_live(a) {
                    break;
                }
            }
            if !hit && e.is_live(a) {
                for x in 0..ncols {
                    if e.get(a, x) == NONE && e.define(a, x).is_err() {
                        hit = true;
                        break;
                    }
                }
            }
            if hit {
                e.lookahead(rels);
                if e.live >= e.limit {
                    return e.finish(p.rank(), EnumerationStatus::ExceededLimit);
                }
                a = e.compact(a);
                continue;
            }
        }
        a += 1;
    }
    e.finish(p.rank(), EnumerationStatus::Complete)
}

fn felsch(p: &Presentation, rels: &[Vec<usize>], sub: &[Vec<usize>], limit: usize) -> CosetTable {
    let ncols = 2 * p.rank();
    // cyclic conjugates of relators and their inverses, keyed by first column
    let mut by_first: Vec<Vec<Vec<usize>>> = vec![Vec::new(); ncols];
    for r in rels {
        let inv: Vec<usize> = r.iter().rev().map(|&x| x ^ 1).collect();
        for w in [r, &inv] {
            for k in 0..w.len() {
                let rot: Vec<usize> = w[k..].iter().chain(w[..k].iter()).copied().collect();
                if !by_first[rot[0]].contains(&rot) {
                    by_first[rot[0]].push(rot);
                }
            }
        }
    }
    let mut e = Enumerator::new(p.rank(), limit, true);
    for w in sub {
        if e.scan(0, w, true).is_err() {
            return e.finish(p.rank(), EnumerationStatus::ExceededLimit);
        }
    }
    let process = |e: &mut Enumerator| {
        while let Some((c, x)) = e.deductions.pop() {
            if !e.is_live(c) {
                continue;
            }
            for w in &by_first[x] {
                let _ = e.scan(c, w, false);
                if !e.is_live(c) {
                    break;
                }
            }
            let d = e.get(c, x);
            if d != NONE && e.is_live(d as usize) {
                let d = d as usize;
                for w in &by_first[x ^ 1] {
                    let _ = e.scan(d, w, false);
                    if !e.is_live(d) {
                        break;
                    }
                }
            }
            for w in sub {
                let _ = e.scan(0, w, false);
            }
        }
    };
    process(&mut e);
    let mut c = 0usize;
    while c < e.parent.len() {
        if e.is_live(c) {
            let mut x = 0;
            while x < ncols {
                if !e.is_live(c) {
                    break;
                }
                if e.get(c, x) == NONE {
                    if e.define(c, x).is_err() {
                        return e.finish(p.rank(), EnumerationStatus::ExceededLimit);
                    }
                    process(&mut e);
                }
                x += 1;
            }
        }
        c += 1;
    }
    e.finish(p.rank(), EnumerationStatus::Complete)
}

/// Enumerates the cosets of `⟨subgroup_gens⟩` in the group presented by `p`.
///
/// Running out of rows is reported through the table status, not as an
/// error: non-termination is the normal outcome for infinite groups.
pub fn enumerate_cosets(p: &Presentation, subgroup_gens: &[Word], limit: usize, strategy: Strategy) -> Result<CosetTable> {
    check_words(p, p.relators(), "relator")?;
    check_words(p, subgroup_gens, "subgroup generator")?;
    if limit == 0 {
        return Err(Error::InvalidArgument("coset limit must be positive".into()));
    }
    let mut rels: Vec<Vec<usize>> = p
        .relators()
        .iter()
        .map(|r| word_columns(&r.cyclically_reduced()))
        .filter(|r| !r.is_empty())
        .collect();
    rels.sort_by_key(|r| r.len());
    let sub: Vec<Vec<usize>> = subgroup_gens.iter().map(word_columns).filter(|w| !w.is_empty()).collect();
    let table = match strategy {
        Strategy::Hlt => hlt(p, &rels, &sub, limit),
        Strategy::Felsch => felsch(p, &rels, &sub, limit),
    };
    Ok(table)
}

pub const DEFAULT_COSET_LIMIT: usize = 1_000_000;

/// HLT enumeration with lookahead.
pub fn todd_coxeter(p: &Presentation, subgroup_gens: &[Word], limit: usize) -> Result<CosetTable> {
    enumerate_cosets(p, subgroup_gens, limit, Strategy::Hlt)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::presentation::parse_presentation;

    fn order(text: &str, strategy: Strategy) -> usize {
        let p = parse_presentation(text).unwrap();
        let t = enumerate_cosets(&p, &[], 1_000_000, strategy).unwrap();
        assert!(t.is_complete());
        for c in 0..t.len() {
            for r in p.relators() {
                assert_eq!(t.trace(c, r), c);
            }
        }
        t.len()
    }

    #[test]
    fn cyclic_order() {
        for s in [Strategy::Hlt, Strategy::Felsch] {
            assert_eq!(order("gens: x | rels: x^5", s), 5);
            assert_eq!(order("gens: x, y | rels: x^2, y^3, x*y*x*y", s), 6);
            assert_eq!(order("gens: x, y | rels: x, y", s), 1);
        }
    }

    #[test]
    fn subgroup_index() {
        let p = parse_presentation("gens: a, b | rels: a^2, b^3, a*b*a*b").unwrap();
        let t = todd_coxeter(&p, &[Word::letter(1)], 1000).unwrap();
        assert_eq!(t.len(), 2);
        let t = todd_coxeter(&p, &[Word::letter(0)], 1000).unwrap();
        assert_eq!(t.len(), 3);
    }

    #[test]
    fn limit_is_a_status() {
        let p = parse_presentation("gens: x, y | rels:").unwrap();
        for s in [Strategy::Hlt, Strategy::Felsch] {
            let t = enumerate_cosets(&p, &[], 500, s).unwrap();
            assert_eq!(t.status(), EnumerationStatus::ExceededLimit);
        }
    }

    #[test]
    fn malformed_relator() {
        let p = parse_presentation("gens: x | rels: x^2").unwrap();
        assert!(todd_coxeter(&p, &[Word::letter(3)], 10).is_err());
    }

    #[test]
    fn csv_export() {
        let p = parse_presentation("gens: x | rels: x^2").unwrap();
        let t = todd_coxeter(&p, &[], 10).unwrap();
        assert_eq!(t.to_csv(&p), "coset,x,x^-1\n0,1,1\n1,0,0\n");
    }
}
