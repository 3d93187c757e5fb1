//! Free nilpotent quotients in polycyclic form and their subgroups.

mod hall;
mod igs;
mod magnus;
mod pc;

use std::fmt::Write as _;

use num_bigint::BigInt;

pub use hall::{is_lyndon, witt_number, BasicCommutator, Bracket, HallBasis, DEFAULT_BASIS_BUDGET};
pub use magnus::binomial;
pub use pc::{free_nilpotent, PcElement, PcGroup, MAX_SERIES_SIZE};

use igs::{closure_in, row_coordinates, PcLike, Square};

use crate::error::{Error, Result};
use crate::intmat::AbelianInvariants;

/// A subgroup of a free nilpotent group, held as a canonical induced
/// generating sequence. Two subgroups are equal iff their rows are equal.
#[derive(Debug, Clone)]
pub struct PcSubgroup {
    group: PcGroup,
    rows: Vec<PcElement>,
}

impl PartialEq for PcSubgroup {
    fn eq(&self, other: &Self) -> bool {
        self.group.same_group(&other.group) && self.rows == other.rows
    }
}

impl Eq for PcSubgroup {}

impl PcGroup {
    /// Subgroup generated by `gens`.
    pub fn subgroup(&self, gens: &[PcElement]) -> Result<PcSubgroup> {
        let rows = closure_in(self, gens.to_vec(), Vec::new())?;
        Ok(PcSubgroup { group: self.clone(), rows })
    }

    /// Normal closure of `gens`.
    pub fn normal_closure(&self, gens: &[PcElement]) -> Result<PcSubgroup> {
        let rows = closure_in(self, gens.to_vec(), self.generators())?;
        Ok(PcSubgroup { group: self.clone(), rows })
    }

    pub fn whole(&self) -> PcSubgroup {
        PcSubgroup { group: self.clone(), rows: (0..self.len()).map(|i| self.basis_element(i)).collect() }
    }

    pub fn trivial(&self) -> PcSubgroup {
        PcSubgroup { group: self.clone(), rows: Vec::new() }
    }

    /// `γ_w`, spanned by the basic commutators of weight at least `w`.
    pub fn lower_central(&self, w: usize) -> PcSubgroup {
        let rows = (0..self.len()).filter(|&i| self.weight_of(i) >= w).map(|i| self.basis_element(i)).collect();
        PcSubgroup { group: self.clone(), rows }
    }
}

impl PcSubgroup {
    pub fn group(&self) -> &PcGroup {
        &self.group
    }

    /// Canonical igs rows, ordered by leading index.
    pub fn rows(&self) -> &[PcElement] {
        &self.rows
    }

    pub fn leading_indices(&self) -> Vec<usize> {
        self.rows.iter().map(|r| r.leading().expect("rows are nontrivial").0).collect()
    }

    pub fn is_trivial(&self) -> bool {
        self.rows.is_empty()
    }

    /// Hirsch length of the subgroup.
    pub fn hirsch_length(&self) -> usize {
        self.rows.len()
    }

    fn same_parent(&self, other: &PcSubgroup) -> Result<()> {
        if self.group.same_group(&other.group) {
            Ok(())
        } else {
            Err(Error::ParentMismatch)
        }
    }

    /// Membership by sifting.
    pub fn contains(&self, x: &PcElement) -> Result<bool> {
        Ok(row_coordinates(&self.group, &self.rows, x)?.is_some())
    }

    /// Exponents of `x` with respect to the rows, if `x` is a member.
    pub fn coordinates(&self, x: &PcElement) -> Result<Option<Vec<i128>>> {
        row_coordinates(&self.group, &self.rows, x)
    }

    pub fn is_subset_of(&self, other: &PcSubgroup) -> Result<bool> {
        self.same_parent(other)?;
        for r in &self.rows {
            if !other.contains(r)? {
                return Ok(false);
            }
        }
        Ok(true)
    }

    pub fn is_normal(&self) -> Result<bool> {
        let g = &self.group;
        for r in &self.rows {
            for x in g.generators() {
                if !self.contains(&g.comm(r, &x)?)? {
                    return Ok(false);
                }
            }
        }
        Ok(true)
    }

    fn require_normal(&self, what: &str) -> Result<()> {
        if self.is_normal()? {
            Ok(())
        } else {
            Err(Error::NotNormal(what.to_string()))
        }
    }

    /// `H ∩ K` for normal `H`, `K`.
    pub fn intersect(&self, other: &PcSubgroup) -> Result<PcSubgroup> {
        self.same_parent(other)?;
        self.require_normal("left operand of intersection")?;
        other.require_normal("right operand of intersection")?;
        let g = &self.group;
        if self.rows.is_empty() || other.rows.is_empty() {
            return Ok(g.trivial());
        }
        if self == other {
            return Ok(self.clone());
        }
        let sq = Square(g);
        let mut seeds: Vec<(PcElement, PcElement)> = self.rows.iter().map(|h| (h.clone(), h.clone())).collect();
        seeds.extend(other.rows.iter().map(|k| (g.identity(), k.clone())));
        let rows = closure_in(&sq, seeds, Vec::new())?;
        let m = g.len();
        let meet: Vec<PcElement> =
            rows.into_iter().filter(|r| sq.leading(r).map(|(d, _)| d >= m).unwrap_or(false)).map(|r| r.0).collect();
        g.subgroup(&meet)
    }

    /// Product `HK` (a subgroup when one factor is normal).
    pub fn join(&self, other: &PcSubgroup) -> Result<PcSubgroup> {
        self.same_parent(other)?;
        let mut gens = self.rows.clone();
        gens.extend(other.rows.iter().cloned());
        self.group.subgroup(&gens)
    }

    /// `[H, K]` for normal `H`, `K`.
    pub fn commutator(&self, other: &PcSubgroup) -> Result<PcSubgroup> {
        self.same_parent(other)?;
        let g = &self.group;
        let mut gens = Vec::new();
        for h in &self.rows {
            for k in &other.rows {
                let c = g.comm(h, k)?;
                if !c.is_identity() {
                    gens.push(c);
                }
            }
        }
        g.normal_closure(&gens)
    }

    /// Abelian invariants of `A/B` for `B ⊆ A` with `A/B` abelian.
    pub fn quotient_invariants(&self, b: &PcSubgroup) -> Result<AbelianInvariants> {
        Ok(self.quotient_lattice(b)?.0)
    }

    /// Invariants of `A/B` together with the relation rows in `A`-coordinates.
    fn quotient_lattice(&self, b: &PcSubgroup) -> Result<(AbelianInvariants, Vec<Vec<BigInt>>)> {
        self.same_parent(b)?;
        let g = &self.group;
        let coords = |x: &PcElement| -> Result<Vec<i128>> {
            self.coordinates(x)?.ok_or_else(|| Error::NotContained("denominator is not contained in numerator".into()))
        };
        let mut rels: Vec<Vec<BigInt>> = Vec::new();
        for r in &b.rows {
            rels.push(coords(r)?.into_iter().map(BigInt::from).collect());
        }
        for (i, x) in self.rows.iter().enumerate() {
            for y in &self.rows[i + 1..] {
                let c = g.comm(x, y)?;
                if c.is_identity() {
                    continue;
                }
                if !b.contains(&c)? {
                    return Err(Error::NonAbelianQuotient(format!("[{}, {}] is not in the denominator", g.render(x), g.render(y))));
                }
                rels.push(coords(&c)?.into_iter().map(BigInt::from).collect());
            }
        }
        let inv = AbelianInvariants::from_relations(self.rows.len(), rels.clone());
        Ok((inv, rels))
    }

    /// Order of the image of `x ∈ A` in `A/B`; `None` when infinite.
    pub fn order_in_quotient(&self, b: &PcSubgroup, x: &PcElement) -> Result<Option<BigInt>> {
        let (inv, mut rels) = self.quotient_lattice(b)?;
        let v = self.coordinates(x)?.ok_or_else(|| Error::NotContained("element is not in the numerator".into()))?;
        rels.push(v.into_iter().map(BigInt::from).collect());
        let with = AbelianInvariants::from_relations(self.rows.len(), rels);
        if with.free_rank != inv.free_rank {
            return Ok(None);
        }
        let order = |a: &AbelianInvariants| a.torsion.iter().fold(BigInt::from(1), |acc, t| acc * t);
        Ok(Some(order(&inv) / order(&with)))
    }

    /// Image in the quotient of class `target.class()`.
    pub fn project(&self, target: &PcGroup) -> Result<PcSubgroup> {
        let imgs: Vec<PcElement> = self.rows.iter().map(|r| self.group.project(r, target)).collect::<Result<_>>()?;
        target.subgroup(&imgs)
    }

    /// Rows as integer CSV, one row per line, prefixed by a header naming the basis.
    pub fn to_csv(&self) -> String {
        let g = &self.group;
        let mut out = String::new();
        let header: Vec<String> = (0..g.len()).map(|i| format!("\"{}\"", g.describe(i))).collect();
        out.push_str(&header.join(","));
        out.push('\n');
        for r in &self.rows {
            let cells: Vec<String> = r.exponents().iter().map(|e| e.to_string()).collect();
            let _ = writeln!(out, "{}", cells.join(","));
        }
        out
    }
}

/// Invariants of `A/B` (the quotient is verified to be abelian).
pub fn central_quotient_invariants(a: &PcSubgroup, b: &PcSubgroup) -> Result<AbelianInvariants> {
    a.quotient_invariants(b)
}
