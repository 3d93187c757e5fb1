//! Explicitly enumerated finite groups and their subgroups.

use std::collections::VecDeque;
use std::fmt;
use std::sync::atomic::{AtomicU64, Ordering};
use std::sync::Arc;

use num_bigint::BigInt;

use super::coset::{column, enumerate_cosets, CosetTable, EnumerationStatus, Strategy};
use crate::error::{Error, Result};
use crate::intmat::AbelianInvariants;
use crate::presentation::Presentation;
use crate::word::{Generator, Word};

/// Element identifier; `0` is the identity.
pub type Elem = u32;

/// Largest group that may be realized with full element enumeration.
pub const MAX_FINITE_ORDER: usize = 20_000;
const FULL_TABLE_MAX: usize = 2_048;

static NEXT_ID: AtomicU64 = AtomicU64::new(1);

struct GroupData {
    id: u64,
    order: usize,
    ngens: usize,
    names: Vec<Generator>,
    /// Right regular action of the generator columns.
    act: Vec<u32>,
    /// Breadth-first spanning tree: parent element and column.
    tree: Vec<(u32, u32)>,
    mul: Option<Vec<u32>>,
    inv: Vec<u32>,
    gen_images: Vec<Elem>,
}

/// A finite group given by its right regular representation.
#[derive(Clone)]
pub struct FiniteGroup {
    data: Arc<GroupData>,
}

impl fmt::Debug for FiniteGroup {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("FiniteGroup").field("order", &self.data.order).field("ngens", &self.data.ngens).finish()
    }
}

impl PartialEq for FiniteGroup {
    fn eq(&self, other: &Self) -> bool {
        self.data.id == other.data.id
    }
}

impl Eq for FiniteGroup {}

impl FiniteGroup {
    /// Builds the group from a complete coset table of the trivial subgroup.
    pub fn from_regular_table(table: &CosetTable, names: Vec<Generator>) -> Result<Self> {
        if !table.is_complete() {
            return Err(Error::LimitExceeded { limit: table.len() });
        }
        let order = table.len();
        if order > MAX_FINITE_ORDER {
            return Err(Error::BudgetExceeded(format!("group order {order} exceeds {MAX_FINITE_ORDER}")));
        }
        let ngens = table.ngens();
        let ncols = 2 * ngens;
        let mut act = Vec::with_capacity(order * ncols);
        for row in table.rows() {
            act.extend_from_slice(row);
        }
        // BFS tree from the identity coset
        let mut tree = vec![(u32::MAX, 0u32); order];
        tree[0] = (0, 0);
        let mut seen = vec![false; order];
        seen[0] = true;
        let mut bfs = Vec::with_capacity(order);
        let mut q = VecDeque::from([0usize]);
        while let Some(c) = q.pop_front() {
            bfs.push(c);
            for x in 0..ncols {
                let d = act[c * ncols + x] as usize;
                if !seen[d] {
                    seen[d] = true;
                    tree[d] = (c as u32, x as u32);
                    q.push_back(d);
                }
            }
        }
        let gen_images: Vec<Elem> = (0..ngens).map(|g| act[2 * g]).collect();
        let mut data = GroupData {
            id: NEXT_ID.fetch_add(1, Ordering::Relaxed),
            order,
            ngens,
            names,
            act,
            tree,
            mul: None,
            inv: Vec::new(),
            gen_images,
        };
        if order <= FULL_TABLE_MAX {
            // mul(i, j) = act(mul(i, parent(j)), col(j)), filled in BFS order of j
            let mut mul = vec![0u32; order * order];
            for i in 0..order {
                mul[i * order] = i as u32;
                for &j in bfs.iter().skip(1) {
                    let (p, x) = data.tree[j];
                    let prev = mul[i * order + p as usize] as usize;
                    mul[i * order + j] = data.act[prev * ncols + x as usize];
                }
            }
            data.mul = Some(mul);
        }
        let mut g = FiniteGroup { data: Arc::new(data) };
        let inv: Vec<u32> = (0..order as u32).map(|x| g.compute_inverse(x)).collect();
        Arc::get_mut(&mut g.data).expect("unique").inv = inv;
        Ok(g)
    }

    pub fn order(&self) -> usize {
        self.data.order
    }

    pub fn ngens(&self) -> usize {
        self.data.ngens
    }

    pub fn generator_names(&self) -> &[Generator] {
        &self.data.names
    }

    pub fn gen_images(&self) -> &[Elem] {
        &self.data.gen_images
    }

    pub fn identity(&self) -> Elem {
        0
    }

    pub fn elements(&self) -> impl Iterator<Item = Elem> {
        0..self.data.order as u32
    }

    fn path(&self, mut x: usize) -> Vec<u32> {
        let mut cols = Vec::new();
        while x != 0 {
            let (p, c) = self.data.tree[x];
            cols.push(c);
            x = p as usize;
        }
        cols.reverse();
        cols
    }

    /// Shortlex-ish representative word of an element (BFS tree path).
    pub fn word_of(&self, x: Elem) -> Word {
        crate::word::reduce(self.path(x as usize).into_iter().map(|c| ((c / 2) as usize, if c % 2 == 0 { 1 } else { -1 })))
    }

    pub fn mul(&self, a: Elem, b: Elem) -> Elem {
        let n = self.data.order;
        if let Some(m) = &self.data.mul {
            return m[a as usize * n + b as usize];
        }
        let ncols = 2 * self.data.ngens;
        let mut c = a as usize;
        for x in self.path(b as usize) {
            c = self.data.act[c * ncols + x as usize] as usize;
        }
        c as Elem
    }

    fn compute_inverse(&self, a: Elem) -> Elem {
        // trace the inverse of the tree word from the identity
        let ncols = 2 * self.data.ngens;
        let mut c = 0usize;
        for x in self.path(a as usize).into_iter().rev() {
            c = self.data.act[c * ncols + (x as usize ^ 1)] as usize;
        }
        c as Elem
    }

    pub fn inv(&self, a: Elem) -> Elem {
        self.data.inv[a as usize]
    }

    /// `[a, b] = a b a⁻¹ b⁻¹`.
    pub fn comm(&self, a: Elem, b: Elem) -> Elem {
        let ab = self.mul(a, b);
        let ba = self.mul(b, a);
        self.mul(ab, self.inv(ba))
    }

    /// `ᵍa = g a g⁻¹`.
    pub fn conj(&self, a: Elem, g: Elem) -> Elem {
        self.mul(self.mul(g, a), self.inv(g))
    }

    pub fn pow(&self, a: Elem, e: i64) -> Elem {
        let base = if e < 0 { self.inv(a) } else { a };
        let mut r = 0;
        for _ in 0..e.unsigned_abs() {
            r = self.mul(r, base);
        }
        r
    }

    /// Image of a word over the generators.
    pub fn eval(&self, w: &Word) -> Elem {
        let ncols = 2 * self.data.ngens;
        let mut c = 0usize;
        for (g, s) in w.letters() {
            c = self.data.act[c * ncols + column(g, s)] as usize;
        }
        c as Elem
    }

    pub fn element_order(&self, a: Elem) -> usize {
        let mut x = a;
        let mut k = 1;
        while x != 0 {
            x = self.mul(x, a);
            k += 1;
        }
        k
    }

    pub fn is_abelian(&self) -> bool {
        let g = self.gen_images();
        g.iter().all(|&a| g.iter().all(|&b| self.mul(a, b) == self.mul(b, a)))
    }

    pub fn whole(&self) -> FinSubgroup {
        FinSubgroup::from_members(self.clone(), self.elements().collect())
    }

    pub fn trivial(&self) -> FinSubgroup {
        FinSubgroup::from_members(self.clone(), vec![0])
    }

    /// Subgroup generated by `gens`.
    pub fn generate(&self, gens: &[Elem]) -> FinSubgroup {
        let n = self.order();
        let gens: Vec<Elem> = gens.iter().copied().filter(|&g| g != 0).collect();
        let mut seen = vec![false; n];
        seen[0] = true;
        let mut members = vec![0u32];
        let mut i = 0;
        while i < members.len() {
            let x = members[i];
            i += 1;
            for &g in &gens {
                let y = self.mul(x, g);
                if !seen[y as usize] {
                    seen[y as usize] = true;
                    members.push(y);
                }
            }
        }
        FinSubgroup::from_members(self.clone(), members)
    }

    /// Closure of a set under conjugation by the group generators.
    fn conjugation_closure(&self, seeds: &[Elem]) -> Vec<Elem> {
        let n = self.order();
        let mut seen = vec![false; n];
        let mut out = Vec::new();
        for &s in seeds {
            if !seen[s as usize] {
                seen[s as usize] = true;
                out.push(s);
            }
        }
        let mut i = 0;
        while i < out.len() {
            let x = out[i];
            i += 1;
            for &g in self.gen_images() {
                let y = self.conj(x, g);
                if !seen[y as usize] {
                    seen[y as usize] = true;
                    out.push(y);
                }
            }
        }
        out
    }

    /// Smallest normal subgroup containing `seeds`.
    pub fn normal_closure(&self, seeds: &[Elem]) -> FinSubgroup {
        let closed = self.conjugation_closure(seeds);
        self.generate(&closed)
    }

    pub fn center(&self) -> FinSubgroup {
        let g = self.gen_images();
        let members = self.elements().filter(|&z| g.iter().all(|&x| self.mul(x, z) == self.mul(z, x))).collect();
        FinSubgroup::from_members(self.clone(), members)
    }

    pub fn derived(&self) -> FinSubgroup {
        self.whole().commutator(&self.whole()).expect("same parent")
    }

    /// Every normal subgroup, sorted by (order, members).
    pub fn normal_subgroups(&self) -> Vec<FinSubgroup> {
        // each normal subgroup is a join of normal closures of single elements
        let mut atoms: Vec<FinSubgroup> = Vec::new();
        let mut done = vec![false; self.order()];
        for x in self.elements() {
            if done[x as usize] {
                continue;
            }
            for y in self.conjugation_closure(&[x]) {
                done[y as usize] = true;
            }
            let c = self.normal_closure(&[x]);
            if !atoms.contains(&c) {
                atoms.push(c);
            }
        }
        let mut all = atoms.clone();
        let mut i = 0;
        while i < all.len() {
            for a in &atoms {
                let j = all[i].join_normal(a);
                if !all.contains(&j) {
                    all.push(j);
                }
            }
            i += 1;
        }
        all.sort_by(|a, b| (a.order(), a.members()).cmp(&(b.order(), b.members())));
        all
    }
}

/// Realizes the group presented by `p` (HLT enumeration).
pub fn realize(p: &Presentation, limit: usize) -> Result<FiniteGroup> {
    realize_with(p, limit, Strategy::Hlt)
}

pub fn realize_with(p: &Presentation, limit: usize, strategy: Strategy) -> Result<FiniteGroup> {
    let t = enumerate_cosets(p, &[], limit, strategy)?;
    if t.status() == EnumerationStatus::ExceededLimit {
        return Err(Error::LimitExceeded { limit });
    }
    FiniteGroup::from_regular_table(&t, p.generators().to_vec())
}

/// A subgroup stored as an explicit element set.
#[derive(Clone)]
pub struct FinSubgroup {
    group: FiniteGroup,
    bits: Vec<u64>,
    members: Vec<Elem>,
}

impl fmt::Debug for FinSubgroup {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("FinSubgroup").field("order", &self.members.len()).field("members", &self.members).finish()
    }
}

impl PartialEq for FinSubgroup {
    fn eq(&self, other: &Self) -> bool {
        self.group == other.group && self.bits == other.bits
    }
}

impl Eq for FinSubgroup {}

impl std::hash::Hash for FinSubgroup {
    fn hash<H: std::hash::Hasher>(&self, state: &mut H) {
        self.bits.hash(state);
    }
}

impl FinSubgroup {
    fn from_members(group: FiniteGroup, mut members: Vec<Elem>) -> Self {
        members.sort_unstable();
        members.dedup();
        let mut bits = vec![0u64; group.order().div_ceil(64)];
        for &m in &members {
            bits[m as usize / 64] |= 1 << (m % 64);
        }
        FinSubgroup { group, bits, members }
    }

    /// Builds a subgroup from an element set, verifying closure.
    pub fn from_set(group: &FiniteGroup, members: Vec<Elem>) -> Result<Self> {
        let s = FinSubgroup::from_members(group.clone(), members);
        if !s.contains(0) || !s.is_closed() {
            return Err(Error::InvalidArgument("element set is not a subgroup".into()));
        }
        Ok(s)
    }

    pub fn group(&self) -> &FiniteGroup {
        &self.group
    }

    pub fn members(&self) -> &[Elem] {
        &self.members
    }

    pub fn order(&self) -> usize {
        self.members.len()
    }

    pub fn contains(&self, x: Elem) -> bool {
        (self.bits[x as usize / 64] >> (x % 64)) & 1 == 1
    }

    pub fn is_subset_of(&self, other: &FinSubgroup) -> bool {
        self.bits.iter().zip(&other.bits).all(|(a, b)| a & !b == 0)
    }

    pub fn is_trivial(&self) -> bool {
        self.members.len() == 1
    }

    pub fn is_whole(&self) -> bool {
        self.members.len() == self.group.order()
    }

    /// Closure under multiplication and inverses (exhaustive).
    pub fn is_closed(&self) -> bool {
        let g = &self.group;
        self.members.iter().all(|&a| self.contains(g.inv(a)) && self.members.iter().all(|&b| self.contains(g.mul(a, b))))
    }

    /// A small generating set (greedy).
    pub fn generators(&self) -> Vec<Elem> {
        let g = &self.group;
        let mut gens = Vec::new();
        let mut cur = g.trivial();
        for &x in &self.members {
            if !cur.contains(x) {
                gens.push(x);
                cur = g.generate(&gens);
                if cur.order() == self.order() {
                    break;
                }
            }
        }
        gens
    }

    pub fn is_normal(&self) -> bool {
        self.is_normal_in(&self.group.whole())
    }

    /// Normality inside an overgroup `ambient` (which must contain `self`).
    pub fn is_normal_in(&self, ambient: &FinSubgroup) -> bool {
        let g = &self.group;
        let mine = self.generators();
        ambient.generators().iter().all(|&x| mine.iter().all(|&h| self.contains(g.conj(h, x))))
    }

    fn same_parent(&self, other: &FinSubgroup) -> Result<()> {
        if self.group == other.group {
            Ok(())
        } else {
            Err(Error::ParentMismatch)
        }
    }

    pub fn intersect(&self, other: &FinSubgroup) -> Result<FinSubgroup> {
        self.same_parent(other)?;
        let members = self.members.iter().copied().filter(|&x| other.contains(x)).collect();
        Ok(FinSubgroup::from_members(self.group.clone(), members))
    }

    /// The product `HK`; at least one factor must be normal.
    pub fn product(&self, other: &FinSubgroup) -> Result<FinSubgroup> {
        self.same_parent(other)?;
        if !self.is_normal() && !other.is_normal() {
            return Err(Error::NotNormal("neither factor of the product is normal".into()));
        }
        Ok(self.product_unchecked(other))
    }

    fn product_unchecked(&self, other: &FinSubgroup) -> FinSubgroup {
        if self.is_subset_of(other) {
            return other.clone();
        }
        if other.is_subset_of(self) {
            return self.clone();
        }
        let g = &self.group;
        let mut members = Vec::with_capacity(self.order() * other.order());
        for &h in &self.members {
            for &k in &other.members {
                members.push(g.mul(h, k));
            }
        }
        FinSubgroup::from_members(g.clone(), members)
    }

    /// Join of two normal subgroups (no normality check).
    pub(crate) fn join_normal(&self, other: &FinSubgroup) -> FinSubgroup {
        self.product_unchecked(other)
    }

    /// `[H, K]`: normal closure inside `⟨H, K⟩` of the commutators of
    /// generators.
    pub fn commutator(&self, other: &FinSubgroup) -> Result<FinSubgroup> {
        self.same_parent(other)?;
        let g = &self.group;
        let hs = self.generators();
        let ks = other.generators();
        let mut seeds = Vec::new();
        for &h in &hs {
            for &k in &ks {
                seeds.push(g.comm(h, k));
            }
        }
        // close under conjugation by generators of H and K
        let conj_by: Vec<Elem> = hs.iter().chain(ks.iter()).copied().collect();
        let mut seen = vec![false; g.order()];
        let mut set: Vec<Elem> = Vec::new();
        for s in seeds {
            if !seen[s as usize] {
                seen[s as usize] = true;
                set.push(s);
            }
        }
        let mut i = 0;
        while i < set.len() {
            let x = set[i];
            i += 1;
            for &c in &conj_by {
                for y in [g.conj(x, c), g.conj(x, g.inv(c))] {
                    if !seen[y as usize] {
                        seen[y as usize] = true;
                        set.push(y);
                    }
                }
            }
        }
        Ok(g.generate(&set))
    }

    /// Canonical coset labelling of `self / sub`: returns for each member
    /// of `self` the index of its coset `x·sub`.
    fn coset_labels(&self, sub: &FinSubgroup) -> Vec<u32> {
        let g = &self.group;
        let mut label = vec![u32::MAX; g.order()];
        let mut next = 0;
        for &x in &self.members {
            if label[x as usize] != u32::MAX {
                continue;
            }
            for &b in &sub.members {
                label[g.mul(x, b) as usize] = next;
            }
            next += 1;
        }
        label
    }
}

/// Abelian invariants of `A/B` via the Smith form of its relation matrix.
pub fn abelian_invariants_of_quotient(a: &FinSubgroup, b: &FinSubgroup) -> Result<AbelianInvariants> {
    a.same_parent(b)?;
    if !b.is_subset_of(a) {
        return Err(Error::NotContained("denominator is not contained in the numerator".into()));
    }
    if !b.is_normal_in(a) {
        return Err(Error::NotNormal("denominator is not normal in the numerator".into()));
    }
    let g = a.group();
    let agens = a.generators();
    for &x in &agens {
        for &y in &agens {
            if !b.contains(g.comm(x, y)) {
                return Err(Error::NonAbelianQuotient(format!("[{x},{y}] is not in the denominator")));
            }
        }
    }
    // generators of A/B chosen greedily modulo B
    let labels = a.coset_labels(b);
    let index = a.order() / b.order();
    let mut gens: Vec<Elem> = Vec::new();
    {
        let mut cur = b.clone();
        for &x in &a.members {
            if cur.order() == a.order() {
                break;
            }
            if !cur.contains(x) {
                gens.push(x);
                let mut all = b.generators();
                all.extend_from_slice(&gens);
                cur = g.generate(&all);
            }
        }
    }
    let k = gens.len();
    // vector of each reached coset, built up generator by generator
    let mut vec_of: Vec<Option<Vec<i64>>> = vec![None; index];
    vec_of[labels[0] as usize] = Some(vec![0; k]);
    let mut reached: Vec<Elem> = vec![0];
    let mut rows: Vec<Vec<BigInt>> = Vec::new();
    for (i, &ai) in gens.iter().enumerate() {
        let mut m = 1i64;
        let mut p = ai;
        while vec_of[labels[p as usize] as usize].is_none() {
            p = g.mul(p, ai);
            m += 1;
        }
        let v = vec_of[labels[p as usize] as usize].clone().expect("reached");
        let mut row: Vec<BigInt> = v.iter().map(|&e| BigInt::from(-e)).collect();
        row[i] += BigInt::from(m);
        rows.push(row);
        let mut next = Vec::with_capacity(reached.len() * m as usize);
        for &c in &reached {
            let base = vec_of[labels[c as usize] as usize].clone().expect("reached");
            let mut x = c;
            for t in 0..m {
                if t > 0 {
                    x = g.mul(x, ai);
                    let mut v = base.clone();
                    v[i] += t;
                    vec_of[labels[x as usize] as usize] = Some(v);
                }
                next.push(x);
            }
        }
        reached = next;
    }
    Ok(AbelianInvariants::from_relations(k, rows))
}
