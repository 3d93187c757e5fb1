//! Homotopy-group formulas for colimits of classifying spaces, evaluated
//! on either engine through the [`SubgroupLattice`] trait.

use std::fmt;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::finite::{abelian_invariants_of_quotient, catalog, catalog_names_up_to, FinSubgroup};
use crate::intmat::AbelianInvariants;
use crate::nilpotent::{PcGroup, PcSubgroup};
use crate::word::Word;

/// Subgroup operations shared by the finite and the nilpotent engine.
pub trait SubgroupLattice: Clone + PartialEq + fmt::Debug + Sized {
    fn ambient(&self) -> Self;
    fn trivial_subgroup(&self) -> Self;
    fn same_ambient(&self, other: &Self) -> bool;
    fn meet(&self, other: &Self) -> Result<Self>;
    /// Product of two subgroups, one of which is normal.
    fn join(&self, other: &Self) -> Result<Self>;
    fn bracket(&self, other: &Self) -> Result<Self>;
    fn is_within(&self, other: &Self) -> Result<bool>;
    fn is_normal_subgroup(&self) -> Result<bool>;
    /// Invariants of `self / den`, verifying containment and abelianness.
    fn quotient_by(&self, den: &Self) -> Result<AbelianInvariants>;
    /// Short size description (order or Hirsch length).
    fn describe(&self) -> String;
}

impl SubgroupLattice for FinSubgroup {
    fn ambient(&self) -> Self {
        self.group().whole()
    }
    fn trivial_subgroup(&self) -> Self {
        self.group().trivial()
    }
    fn same_ambient(&self, other: &Self) -> bool {
        self.group() == other.group()
    }
    fn meet(&self, other: &Self) -> Result<Self> {
        self.intersect(other)
    }
    fn join(&self, other: &Self) -> Result<Self> {
        self.product(other)
    }
    fn bracket(&self, other: &Self) -> Result<Self> {
        self.commutator(other)
    }
    fn is_within(&self, other: &Self) -> Result<bool> {
        Ok(self.is_subset_of(other))
    }
    fn is_normal_subgroup(&self) -> Result<bool> {
        Ok(self.is_normal())
    }
    fn quotient_by(&self, den: &Self) -> Result<AbelianInvariants> {
        abelian_invariants_of_quotient(self, den)
    }
    fn describe(&self) -> String {
        format!("order {}", self.order())
    }
}

impl SubgroupLattice for PcSubgroup {
    fn ambient(&self) -> Self {
        self.group().whole()
    }
    fn trivial_subgroup(&self) -> Self {
        self.group().trivial()
    }
    fn same_ambient(&self, other: &Self) -> bool {
        self.group().same_group(other.group())
    }
    fn meet(&self, other: &Self) -> Result<Self> {
        self.intersect(other)
    }
    fn join(&self, other: &Self) -> Result<Self> {
        PcSubgroup::join(self, other)
    }
    fn bracket(&self, other: &Self) -> Result<Self> {
        self.commutator(other)
    }
    fn is_within(&self, other: &Self) -> Result<bool> {
        self.is_subset_of(other)
    }
    fn is_normal_subgroup(&self) -> Result<bool> {
        self.is_normal()
    }
    fn quotient_by(&self, den: &Self) -> Result<AbelianInvariants> {
        self.quotient_invariants(den)
    }
    fn describe(&self) -> String {
        format!("Hirsch length {}", self.hirsch_length())
    }
}

/// A tuple `(N_1, .., N_n)` of normal subgroups of one ambient group.
#[derive(Debug, Clone)]
pub struct NormalTuple<S> {
    subgroups: Vec<S>,
}

impl<S: SubgroupLattice> NormalTuple<S> {
    pub fn new(subgroups: Vec<S>) -> Result<Self> {
        let Some(first) = subgroups.first() else {
            return Err(Error::InvalidArgument("a tuple needs at least one subgroup".into()));
        };
        for (i, s) in subgroups.iter().enumerate() {
            if !s.same_ambient(first) {
                return Err(Error::ParentMismatch);
            }
            if !s.is_normal_subgroup()? {
                return Err(Error::NotNormal(format!("N{} is not normal", i + 1)));
            }
        }
        Ok(NormalTuple { subgroups })
    }

    pub fn len(&self) -> usize {
        self.subgroups.len()
    }

    pub fn is_empty(&self) -> bool {
        self.subgroups.is_empty()
    }

    pub fn subgroups(&self) -> &[S] {
        &self.subgroups
    }

    pub fn ambient(&self) -> S {
        self.subgroups[0].ambient()
    }

    /// The tuple with the `i`-th entry removed.
    pub fn omit(&self, i: usize) -> NormalTuple<S> {
        let subgroups = self.subgroups.iter().enumerate().filter(|&(k, _)| k != i).map(|(_, s)| s.clone()).collect();
        NormalTuple { subgroups }
    }

    /// `∩_{i∈mask} N_i` (the ambient group for the empty mask).
    pub fn meet_of(&self, mask: u32) -> Result<S> {
        let mut acc = self.ambient();
        for (i, s) in self.subgroups.iter().enumerate() {
            if mask >> i & 1 == 1 {
                acc = acc.meet(s)?;
            }
        }
        Ok(acc)
    }

    /// `∏_{j∈mask} N_j` (trivial for the empty mask).
    pub fn join_of(&self, mask: u32) -> Result<S> {
        let mut acc = self.subgroups[0].trivial_subgroup();
        for (i, s) in self.subgroups.iter().enumerate() {
            if mask >> i & 1 == 1 {
                acc = acc.join(s)?;
            }
        }
        Ok(acc)
    }

    fn full_mask(&self) -> u32 {
        (1u32 << self.len()) - 1
    }
}

/// Index sets `I, J` (0-based internally, rendered 1-based).
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct PartitionPair {
    pub i: Vec<usize>,
    pub j: Vec<usize>,
}

fn indices(mask: u32) -> Vec<usize> {
    (0..32).filter(|&k| mask >> k & 1 == 1).collect()
}

impl PartitionPair {
    fn from_masks(i: u32, j: u32) -> Self {
        PartitionPair { i: indices(i), j: indices(j) }
    }

    /// Disjoint nonempty `I, J` covering `{0..n-1}`.
    pub fn new(i: Vec<usize>, j: Vec<usize>, n: usize) -> Result<Self> {
        let mut seen = vec![0u8; n];
        for &k in i.iter().chain(j.iter()) {
            if k >= n {
                return Err(Error::InvalidArgument(format!("index {} outside 1..{n}", k + 1)));
            }
            seen[k] += 1;
        }
        if i.is_empty() || j.is_empty() || seen.iter().any(|&c| c != 1) {
            return Err(Error::InvalidArgument("I and J must be disjoint, nonempty and cover every index".into()));
        }
        Ok(PartitionPair { i, j })
    }
}

fn set_string(v: &[usize]) -> String {
    let parts: Vec<String> = v.iter().map(|k| (k + 1).to_string()).collect();
    format!("{{{}}}", parts.join(","))
}

impl fmt::Display for PartitionPair {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "I={} J={}", set_string(&self.i), set_string(&self.j))
    }
}

impl Serialize for PartitionPair {
    fn serialize<Se: serde::Serializer>(&self, s: Se) -> std::result::Result<Se::Ok, Se::Error> {
        use serde::ser::SerializeStruct;
        let one = |v: &[usize]| v.iter().map(|k| k + 1).collect::<Vec<_>>();
        let mut st = s.serialize_struct("PartitionPair", 2)?;
        st.serialize_field("I", &one(&self.i))?;
        st.serialize_field("J", &one(&self.j))?;
        st.end()
    }
}

/// Outcome of the connectivity test for one tuple.
#[derive(Debug, Clone, Serialize)]
pub struct Connectivity {
    /// 1-based positions (in the original tuple) of the tested entries.
    pub subtuple: Vec<usize>,
    pub connected: bool,
    pub instances_checked: usize,
    pub witness: Option<PartitionPair>,
}

/// Tests the tuple condition
/// `(∩_I N_i)(∏_J N_j) = ∩_I (N_i ∏_J N_j)` for all `|I| ≥ 2`, `|J| ≥ 1`.
/// Tuples of length at most two are connected.
pub fn is_connected_tuple<S: SubgroupLattice>(t: &NormalTuple<S>) -> Result<Connectivity> {
    let m = t.len();
    let mut out = Connectivity { subtuple: (1..=m).collect(), connected: true, instances_checked: 0, witness: None };
    if m <= 2 {
        return Ok(out);
    }
    let full = t.full_mask();
    let products: Vec<S> = (0..=full).map(|j| t.join_of(j)).collect::<Result<_>>()?;
    for i in 1..=full {
        if i.count_ones() < 2 {
            continue;
        }
        let meet_i = t.meet_of(i)?;
        for j in 1..=full {
            out.instances_checked += 1;
            let pj = &products[j as usize];
            let lhs = meet_i.join(pj)?;
            let mut rhs = t.ambient();
            for k in indices(i) {
                rhs = rhs.meet(&t.subgroups[k].join(pj)?)?;
            }
            if lhs != rhs {
                out.connected = false;
                out.witness = Some(PartitionPair::from_masks(i, j));
                return Ok(out);
            }
        }
    }
    Ok(out)
}

/// Connectivity of each subtuple omitting one entry (the hypothesis for
/// the homotopy formulas).
pub fn colimit_hypothesis<S: SubgroupLattice>(t: &NormalTuple<S>) -> Result<Vec<Connectivity>> {
    let n = t.len();
    let mut checks = Vec::with_capacity(n);
    for omit in 0..n {
        let mut c = is_connected_tuple(&t.omit(omit))?;
        c.subtuple = (1..=n).filter(|&k| k != omit + 1).collect();
        checks.push(c);
    }
    Ok(checks)
}

/// Unordered partitions `{I, J}` of `{0..n-1}`; `I` holds index 0.
pub fn unordered_partitions(n: usize) -> Vec<PartitionPair> {
    let full = (1u32 << n) - 1;
    (1..=full).filter(|&i| i & 1 == 1 && i != full).map(|i| PartitionPair::from_masks(i, full & !i)).collect()
}

/// `∏ [∩_I N_i, ∩_J N_j]` over unordered partitions `{I, J}`.
pub fn symmetric_commutator<S: SubgroupLattice>(t: &NormalTuple<S>) -> Result<S> {
    let n = t.len();
    if n < 2 {
        return Err(Error::InvalidArgument("the symmetric commutator needs at least two subgroups".into()));
    }
    let mask = |v: &[usize]| v.iter().fold(0u32, |m, &k| m | 1 << k);
    let mut acc = t.subgroups[0].trivial_subgroup();
    for p in unordered_partitions(n) {
        let c = t.meet_of(mask(&p.i))?.bracket(&t.meet_of(mask(&p.j))?)?;
        acc = acc.join(&c)?;
    }
    Ok(acc)
}

/// A formula evaluation with its audit trail.
#[derive(Debug, Clone, Serialize)]
pub struct FormulaReport {
    pub formula: String,
    pub inputs: Vec<String>,
    pub hypothesis_checks: Vec<Connectivity>,
    pub numerator: String,
    pub denominator: String,
    pub invariants: Option<AbelianInvariants>,
    pub notes: Vec<String>,
}

fn describe_tuple<S: SubgroupLattice>(t: &NormalTuple<S>) -> Vec<String> {
    t.subgroups.iter().enumerate().map(|(i, s)| format!("N{}: {}", i + 1, s.describe())).collect()
}

/// `(N_1 ∩ .. ∩ N_n) / ∏ [∩_I N_i, ∩_J N_j]`, refusing when some
/// `(n-1)`-subtuple is not connected.
pub fn pi_n_colimit<S: SubgroupLattice>(t: &NormalTuple<S>) -> Result<FormulaReport> {
    let checks = colimit_hypothesis(t)?;
    if let Some(bad) = checks.iter().find(|c| !c.connected) {
        let w = bad.witness.as_ref().map(|w| w.to_string()).unwrap_or_default();
        return Err(Error::Hypothesis(format!("subtuple {:?} is not connected (witness {w})", bad.subtuple)));
    }
    let (num, den) = pi_n_parts(t)?;
    let invariants = num.quotient_by(&den)?;
    Ok(FormulaReport {
        formula: format!("pi_{}: (N1 ∩ .. ∩ N{}) / prod [∩_I N_i, ∩_J N_j]", t.len(), t.len()),
        inputs: describe_tuple(t),
        hypothesis_checks: checks,
        numerator: num.describe(),
        denominator: den.describe(),
        invariants: Some(invariants),
        notes: Vec::new(),
    })
}

/// Numerator and denominator subgroups of the `π_n` formula.
pub fn pi_n_parts<S: SubgroupLattice>(t: &NormalTuple<S>) -> Result<(S, S)> {
    let num = t.meet_of(t.full_mask())?;
    if t.len() == 1 {
        return Ok((num.clone(), num.trivial_subgroup()));
    }
    let den = symmetric_commutator(t)?;
    if !den.is_within(&num)? {
        return Err(Error::NotContained("symmetric commutator is not inside the intersection".into()));
    }
    Ok((num, den))
}

/// `(M ∩ N) / [M, N]`, computed directly.
pub fn brown_pair<S: SubgroupLattice>(m: &S, n: &S) -> Result<AbelianInvariants> {
    m.meet(n)?.quotient_by(&m.bracket(n)?)
}

/// `π_1` of the colimit, `G / N_1 .. N_n`.
#[derive(Debug, Clone, Serialize)]
pub struct Pi1Report {
    pub formula: String,
    pub label: String,
    pub inputs: Vec<String>,
    /// Size of `N_1 .. N_n`.
    pub product: String,
    /// Order of the quotient (finite engine only).
    pub order: Option<usize>,
    /// Hirsch length of the quotient (nilpotent engine only).
    pub hirsch_length: Option<usize>,
    pub abelianization: AbelianInvariants,
}

const PI1_LABEL: &str = "general-n extension of the three-subgroup formula";

pub fn pi_1_colimit_finite(t: &NormalTuple<FinSubgroup>) -> Result<Pi1Report> {
    let g = t.ambient();
    let p = t.join_of(t.full_mask())?;
    let den = p.join(&g.bracket(&g)?)?;
    Ok(Pi1Report {
        formula: "pi_1 = G / (N1 .. Nn)".into(),
        label: PI1_LABEL.into(),
        inputs: describe_tuple(t),
        product: p.describe(),
        order: Some(g.order() / p.order()),
        hirsch_length: None,
        abelianization: g.quotient_by(&den)?,
    })
}

pub fn pi_1_colimit_pc(t: &NormalTuple<PcSubgroup>) -> Result<Pi1Report> {
    let g = t.ambient();
    let p = t.join_of(t.full_mask())?;
    let den = p.join(&g.bracket(&g)?)?;
    Ok(Pi1Report {
        formula: "pi_1 = G / (N1 .. Nn)".into(),
        label: PI1_LABEL.into(),
        inputs: describe_tuple(t),
        product: p.describe(),
        order: None,
        hirsch_length: Some(g.hirsch_length() - p.hirsch_length()),
        abelianization: g.quotient_by(&den)?,
    })
}

/// `(LM ∩ MN) / M(L ∩ N)`. A nonabelian quotient is reported as a finding
/// in `notes` with `invariants: None`.
pub fn pi_2_colimit_n3<S: SubgroupLattice>(l: &S, m: &S, n: &S) -> Result<FormulaReport> {
    let t = NormalTuple::new(vec![l.clone(), m.clone(), n.clone()])?;
    let num = l.join(m)?.meet(&m.join(n)?)?;
    let den = m.join(&l.meet(n)?)?;
    let mut notes = Vec::new();
    let invariants = match num.quotient_by(&den) {
        Ok(inv) => Some(inv),
        Err(Error::NonAbelianQuotient(msg)) => {
            notes.push(format!("finding: quotient is not abelian ({msg})"));
            None
        }
        Err(e) => return Err(e),
    };
    Ok(FormulaReport {
        formula: "pi_2: (LM ∩ MN) / M(L ∩ N)".into(),
        inputs: describe_tuple(&t),
        hypothesis_checks: colimit_hypothesis(&t)?,
        numerator: num.describe(),
        denominator: den.describe(),
        invariants,
        notes,
    })
}

/// `(M ∩ N) / [G, M ∩ N][M, N]`.
pub fn h1_gmn<S: SubgroupLattice>(m: &S, n: &S) -> Result<FormulaReport> {
    let t = NormalTuple::new(vec![m.clone(), n.clone()])?;
    let g = m.ambient();
    let mn = m.meet(n)?;
    let den = g.bracket(&mn)?.join(&m.bracket(n)?)?;
    let invariants = mn.quotient_by(&den)?;
    Ok(FormulaReport {
        formula: "H_1(G,M,N) = (M ∩ N) / [G, M ∩ N][M, N]".into(),
        inputs: describe_tuple(&t),
        hypothesis_checks: Vec::new(),
        numerator: mn.describe(),
        denominator: den.describe(),
        invariants: Some(invariants),
        notes: Vec::new(),
    })
}

/// `(R ∩ S ∩ [F,F]) / [R,S][R ∩ S, F]` in `F/γ_{c+1}` with `R = <r>^F`,
/// `S = <s>^F`: a truncated evaluation of the third homology of `F/RS`.
pub fn hopf_h3_check(f: &PcGroup, r: &Word, s: &Word) -> Result<FormulaReport> {
    let rr = f.normal_closure(&[f.collect(r)?])?;
    let ss = f.normal_closure(&[f.collect(s)?])?;
    let whole = f.whole();
    let rs = rr.intersect(&ss)?;
    let num = rs.intersect(&whole.commutator(&whole)?)?;
    let den = rr.commutator(&ss)?.join(&rs.commutator(&whole)?)?;
    let invariants = num.quotient_invariants(&den)?;
    let names = f.names();
    Ok(FormulaReport {
        formula: "H_3 ~ (R ∩ S ∩ [F,F]) / [R,S][R ∩ S, F]".into(),
        inputs: vec![
            format!("rank {} class {}", f.rank(), f.class()),
            format!("r = {}", r.render(names)),
            format!("s = {}", s.render(names)),
        ],
        hypothesis_checks: Vec::new(),
        numerator: num.describe(),
        denominator: den.describe(),
        invariants: Some(invariants),
        notes: vec![format!("computed modulo the {}-th term of the lower central series", f.class() + 1)],
    })
}

/// A normal triple failing the connectivity condition.
#[derive(Debug, Clone, Serialize)]
pub struct TripleWitness {
    pub group: String,
    /// Positions in the group's list of normal subgroups.
    pub normal_indices: [usize; 3],
    pub orders: [usize; 3],
    pub check: Connectivity,
}

#[derive(Debug, Clone, Serialize)]
pub struct TripleSearch {
    pub max_order: usize,
    pub groups_searched: usize,
    pub triples_checked: usize,
    pub witness: Option<TripleWitness>,
}

/// Walks the catalog groups of order at most `max_order` in catalog order
/// and stops at the first normal triple that is not connected.
pub fn search_disconnected_triples(max_order: usize) -> Result<TripleSearch> {
    let mut out = TripleSearch { max_order, groups_searched: 0, triples_checked: 0, witness: None };
    for name in catalog_names_up_to(max_order) {
        let g = catalog(&name)?;
        let normals = g.normal_subgroups();
        out.groups_searched += 1;
        for i in 0..normals.len() {
            for j in i..normals.len() {
                for k in j..normals.len() {
                    let t = NormalTuple::new(vec![normals[i].clone(), normals[j].clone(), normals[k].clone()])?;
                    out.triples_checked += 1;
                    let check = is_connected_tuple(&t)?;
                    if !check.connected {
                        let orders = [normals[i].order(), normals[j].order(), normals[k].order()];
                        out.witness = Some(TripleWitness { group: name, normal_indices: [i, j, k], orders, check });
                        return Ok(out);
                    }
                }
            }
        }
    }
    Ok(out)
}
