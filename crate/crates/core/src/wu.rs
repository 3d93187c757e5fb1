//! The intersection/commutator description of `π_{n+1}(S^2)` evaluated in
//! free nilpotent truncations `F/γ_{c+1}`, `F` free on `y0 .. y_{n-1}`,
//! with `y_{-1} = (y0 .. y_{n-1})^{-1}`.
//!
//! Every result is a statement about the truncated quotient only.

use std::collections::HashSet;

use rayon::prelude::*;
use serde::Serialize;

use crate::colimit::{symmetric_commutator, NormalTuple};
use crate::error::{Error, Result};
use crate::intmat::AbelianInvariants;
use crate::nilpotent::{PcElement, PcGroup, PcSubgroup, DEFAULT_BASIS_BUDGET};
use crate::word::{commutator, hopf_element, indexed_alphabet, Word};

#[derive(Debug, Clone)]
pub struct WuConfiguration {
    n: usize,
    class: usize,
    group: PcGroup,
}

impl WuConfiguration {
    pub fn new(n: usize, class: usize) -> Result<Self> {
        Self::with_budget(n, class, DEFAULT_BASIS_BUDGET)
    }

    pub fn with_budget(n: usize, class: usize, budget: usize) -> Result<Self> {
        if n == 0 {
            return Err(Error::InvalidArgument("n must be at least 1".into()));
        }
        if class < n {
            return Err(Error::InvalidArgument(format!("class {class} is below n = {n}; the computation is degenerate")));
        }
        let group = PcGroup::new(indexed_alphabet("y", n), class, budget)?;
        Ok(WuConfiguration { n, class, group })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn class(&self) -> usize {
        self.class
    }

    pub fn group(&self) -> &PcGroup {
        &self.group
    }

    /// The word `y_{-1} = (y0 .. y_{n-1})^{-1}`.
    pub fn y_minus1(&self) -> Word {
        Word::product_of(&(0..self.n).collect::<Vec<_>>()).inverse()
    }

    /// Images of the letters `y_{-1}, y0, .., y_{n-1}` (in that order).
    pub fn letters(&self) -> Result<Vec<PcElement>> {
        let g = &self.group;
        let mut out = vec![g.collect(&self.y_minus1())?];
        out.extend(g.generators());
        Ok(out)
    }

    /// The normal closures `<y_{-1}>^F, <y0>^F, .., <y_{n-1}>^F`.
    pub fn closures(&self) -> Result<Vec<PcSubgroup>> {
        self.letters()?.into_iter().map(|x| self.group.normal_closure(&[x])).collect()
    }
}

/// Signed letter tuples of length `len` over `letters` letters using every letter.
fn covering_tuples(letters: usize, len: usize) -> Vec<Vec<(usize, bool)>> {
    let mut out = Vec::new();
    let mut cur = vec![0usize; len];
    loop {
        let mut used = vec![false; letters];
        for &l in &cur {
            used[l] = true;
        }
        if used.iter().all(|&u| u) {
            for signs in 0u32..(1 << len) {
                out.push(cur.iter().enumerate().map(|(i, &l)| (l, signs >> i & 1 == 1)).collect());
            }
        }
        let mut k = 0;
        loop {
            if k == len {
                return out;
            }
            cur[k] += 1;
            if cur[k] < letters {
                break;
            }
            cur[k] = 0;
            k += 1;
        }
    }
}

/// Generating set of the denominator: left-normed commutators of signed
/// letters of length at most `max_len` in which every letter occurs.
/// Returns the number of tuples and the distinct nontrivial images.
pub fn denominator_generators(cfg: &WuConfiguration, max_len: usize) -> Result<(usize, Vec<PcElement>)> {
    let g = &cfg.group;
    let letters = cfg.letters()?;
    let signed: Vec<[PcElement; 2]> = letters.iter().map(|x| Ok([x.clone(), g.inv(x)?])).collect::<Result<_>>()?;
    let l = letters.len();
    let mut tuples = Vec::new();
    for len in l.max(2)..=max_len {
        tuples.extend(covering_tuples(l, len));
    }
    let count = tuples.len();
    let images: Vec<PcElement> = tuples
        .par_iter()
        .map(|t| {
            let mut acc = signed[t[0].0][t[0].1 as usize].clone();
            for &(letter, neg) in &t[1..] {
                acc = g.comm(&acc, &signed[letter][neg as usize])?;
                if acc.is_identity() {
                    break;
                }
            }
            Ok(acc)
        })
        .collect::<Result<_>>()?;
    let mut seen = HashSet::new();
    let distinct = images.into_iter().filter(|x| !x.is_identity() && seen.insert(x.clone())).collect();
    Ok((count, distinct))
}

pub fn wu_denominator(cfg: &WuConfiguration) -> Result<PcSubgroup> {
    wu_denominator_up_to(cfg, cfg.class)
}

pub fn wu_denominator_up_to(cfg: &WuConfiguration, max_len: usize) -> Result<PcSubgroup> {
    let (_, gens) = denominator_generators(cfg, max_len)?;
    cfg.group.normal_closure(&gens)
}

pub fn wu_numerator(cfg: &WuConfiguration) -> Result<PcSubgroup> {
    let closures = cfg.closures()?;
    let mut acc = closures[0].clone();
    for c in &closures[1..] {
        acc = acc.intersect(c)?;
    }
    Ok(acc)
}

#[derive(Debug, Clone, Serialize)]
pub struct Membership {
    pub word: String,
    pub in_numerator: bool,
    pub in_denominator: bool,
    /// Order of the image in the truncated quotient: `None` when infinite at this class
    /// or when the word is not in the numerator.
    pub order_in_quotient: Option<u64>,
    pub infinite_at_this_class: bool,
}

#[derive(Debug, Clone, Serialize)]
pub struct WuReport {
    pub n: usize,
    pub class: usize,
    pub label: String,
    pub basis_size: usize,
    pub generating_tuples: usize,
    pub distinct_commutators: usize,
    pub numerator_igs_size: usize,
    pub denominator_igs_size: usize,
    pub central: bool,
    pub invariants: AbelianInvariants,
    /// Membership data for the Hopf-type element on `y0 .. y_{n-1}` when `n ≥ 2`.
    pub hopf: Option<Membership>,
    /// Whether the Hopf-type element alone generates the truncated quotient.
    pub hopf_generates: Option<bool>,
}

/// The computed subgroups behind a report.
#[derive(Debug, Clone)]
pub struct WuData {
    pub numerator: PcSubgroup,
    pub denominator: PcSubgroup,
    pub generating_tuples: usize,
    pub distinct_commutators: usize,
}

pub fn wu_data(cfg: &WuConfiguration) -> Result<WuData> {
    let (count, gens) = denominator_generators(cfg, cfg.class)?;
    let denominator = cfg.group.normal_closure(&gens)?;
    let numerator = wu_numerator(cfg)?;
    Ok(WuData { numerator, denominator, generating_tuples: count, distinct_commutators: gens.len() })
}

/// Commutators of numerator rows with all generators lie in the denominator.
pub fn is_central(cfg: &WuConfiguration, data: &WuData) -> Result<bool> {
    let g = &cfg.group;
    for r in data.numerator.rows() {
        for x in g.generators() {
            if !data.denominator.contains(&g.comm(r, &x)?)? {
                return Ok(false);
            }
        }
    }
    Ok(true)
}

fn membership_in(cfg: &WuConfiguration, data: &WuData, w: &Word) -> Result<Membership> {
    let g = &cfg.group;
    let x = g.collect(w)?;
    let in_numerator = data.numerator.contains(&x)?;
    let in_denominator = data.denominator.contains(&x)?;
    let order = if in_numerator { data.numerator.order_in_quotient(&data.denominator, &x)? } else { None };
    let order = order.map(|o| u64::try_from(o).map_err(|_| Error::Overflow("element order"))).transpose()?;
    Ok(Membership {
        word: w.render(g.names()),
        in_numerator,
        in_denominator,
        infinite_at_this_class: in_numerator && order.is_none(),
        order_in_quotient: order,
    })
}

pub fn membership_check(w: &Word, cfg: &WuConfiguration) -> Result<Membership> {
    membership_in(cfg, &wu_data(cfg)?, w)
}

pub fn wu_group(cfg: &WuConfiguration) -> Result<WuReport> {
    let data = wu_data(cfg)?;
    wu_report(cfg, &data)
}

pub fn wu_report(cfg: &WuConfiguration, data: &WuData) -> Result<WuReport> {
    if !data.denominator.is_subset_of(&data.numerator)? {
        return Err(Error::NotContained("denominator is not inside the numerator".into()));
    }
    let central = is_central(cfg, data)?;
    if !central {
        return Err(Error::NonAbelianQuotient("quotient is not central; this indicates an engine bug".into()));
    }
    let invariants = data.numerator.quotient_invariants(&data.denominator)?;
    let (hopf, hopf_generates) = if cfg.n >= 2 {
        let w = hopf_element(cfg.n - 1)?;
        let m = membership_in(cfg, data, &w)?;
        let x = cfg.group.collect(&w)?;
        let with = cfg.group.normal_closure(&[x])?.join(&data.denominator)?;
        (Some(m), Some(with == data.numerator))
    } else {
        (None, None)
    };
    Ok(WuReport {
        n: cfg.n,
        class: cfg.class,
        label: format!(
            "truncated at class {}: a quotient of the untruncated group; torsion found is genuine, absence proves nothing",
            cfg.class
        ),
        basis_size: cfg.group.len(),
        generating_tuples: data.generating_tuples,
        distinct_commutators: data.distinct_commutators,
        numerator_igs_size: data.numerator.hirsch_length(),
        denominator_igs_size: data.denominator.hirsch_length(),
        central,
        invariants,
        hopf,
        hopf_generates,
    })
}

#[derive(Debug, Clone, Serialize)]
pub struct EqualityReport {
    pub n: usize,
    pub class: usize,
    pub equal: bool,
    pub denominator_igs_size: usize,
    pub symmetric_igs_size: usize,
    pub discrepancy: Option<String>,
}

/// Compares the denominator with the symmetric commutator of the `n+1`
/// letter closures.
pub fn check_equality_13(n: usize, class: usize) -> Result<EqualityReport> {
    let cfg = WuConfiguration::new(n, class)?;
    let den = wu_denominator(&cfg)?;
    let tuple = NormalTuple::new(cfg.closures()?)?;
    let sym = symmetric_commutator(&tuple)?;
    let equal = den == sym;
    let discrepancy = if equal {
        None
    } else {
        let a = den.is_subset_of(&sym)?;
        let b = sym.is_subset_of(&den)?;
        Some(format!("denominator ⊆ symmetric: {a}; symmetric ⊆ denominator: {b}"))
    };
    Ok(EqualityReport {
        n,
        class,
        equal,
        denominator_igs_size: den.hirsch_length(),
        symmetric_igs_size: sym.hirsch_length(),
        discrepancy,
    })
}

#[derive(Debug, Clone, Serialize)]
pub struct BraidPair {
    pub i: usize,
    pub j: usize,
    pub commutator_in_intersection: bool,
    pub equal: bool,
    pub intersection_igs_size: usize,
    pub commutator_igs_size: usize,
}

#[derive(Debug, Clone, Serialize)]
pub struct BraidReport {
    pub class: usize,
    pub relators: Vec<String>,
    pub pairs: Vec<BraidPair>,
}

/// Relators `xyx(yxy)^-1`, `yzy(zyz)^-1`, `xz(zx)^-1` of the four-string
/// braid group on `x, y, z`.
pub fn braid_relators() -> Vec<Word> {
    let (x, y, z) = (Word::letter(0), Word::letter(1), Word::letter(2));
    let prod = |ws: &[&Word]| ws.iter().fold(Word::identity(), |acc, w| acc.mul(w));
    vec![
        prod(&[&x, &y, &x]).mul(&prod(&[&y, &x, &y]).inverse()),
        prod(&[&y, &z, &y]).mul(&prod(&[&z, &y, &z]).inverse()),
        commutator(&x, &z),
    ]
}

pub fn braid_check(class: usize) -> Result<BraidReport> {
    let names = ["x", "y", "z"].iter().map(|n| crate::word::Generator::new(*n)).collect::<Result<Vec<_>>>()?;
    let g = PcGroup::new(names.clone(), class, DEFAULT_BASIS_BUDGET)?;
    let rels = braid_relators();
    let closures: Vec<PcSubgroup> = rels.iter().map(|r| g.normal_closure(&[g.collect(r)?])).collect::<Result<_>>()?;
    let mut pairs = Vec::new();
    for i in 0..3 {
        for j in i + 1..3 {
            let meet = closures[i].intersect(&closures[j])?;
            let comm = closures[i].commutator(&closures[j])?;
            pairs.push(BraidPair {
                i: i + 1,
                j: j + 1,
                commutator_in_intersection: comm.is_subset_of(&meet)?,
                equal: meet == comm,
                intersection_igs_size: meet.hirsch_length(),
                commutator_igs_size: comm.hirsch_length(),
            });
        }
    }
    Ok(BraidReport { class, relators: rels.iter().map(|r| r.render(&names)).collect(), pairs })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn tuple_counts() {
        // surjections onto 2 letters of length 3: 6, times 8 sign patterns
        assert_eq!(covering_tuples(2, 3).len(), 48);
        assert_eq!(covering_tuples(3, 3).len(), 6 * 8);
    }

    #[test]
    fn rank_one() {
        let cfg = WuConfiguration::new(1, 2).unwrap();
        let r = wu_group(&cfg).unwrap();
        assert_eq!(r.invariants.to_string(), "Z");
        assert_eq!(r.denominator_igs_size, 0);
    }

    #[test]
    fn rank_two_class_three() {
        let cfg = WuConfiguration::new(2, 3).unwrap();
        let r = wu_group(&cfg).unwrap();
        assert_eq!(r.invariants.to_string(), "Z");
        let h = r.hopf.unwrap();
        assert!(h.in_numerator && !h.in_denominator);
        assert_eq!(r.hopf_generates, Some(true));
    }

    #[test]
    fn degenerate_class_rejected() {
        assert!(WuConfiguration::new(3, 2).is_err());
    }
}
