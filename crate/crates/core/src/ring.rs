//! Finite associative rings (not necessarily unital) on finite abelian groups.
//!
//! A ring is stored by the products of generator pairs; the product of
//! arbitrary elements is the bilinear extension. Rings of order at most
//! [`TABLE_LIMIT`] also keep a full multiplication table.

use std::collections::{BTreeSet, HashSet};
use std::fmt;
use std::hash::{Hash, Hasher};
use std::sync::Arc;
use num_integer::Integer;

use crate::error::{Axiom, Error, Result};
use crate::group::{
    decompose_table, enumerate_automorphisms, enumerate_homs, enumerate_isomorphisms, subgroup_closure,
    AdditiveMap, Decomposition, Elem, ElemSet, FinAbGroup,
};

pub const TABLE_LIMIT: usize = 1024;

#[derive(Clone)]
pub struct Ring {
    group: FinAbGroup,
    gen_products: Vec<Elem>,
    table: Option<Arc<[u32]>>,
}

impl fmt::Debug for Ring {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("Ring")
            .field("orders", &self.group.orders())
            .field("gen_products", &self.gen_products)
            .finish()
    }
}

impl PartialEq for Ring {
    fn eq(&self, other: &Self) -> bool {
        self.group == other.group && self.gen_products == other.gen_products
    }
}
impl Eq for Ring {}

impl Hash for Ring {
    fn hash<H: Hasher>(&self, state: &mut H) {
        self.group.hash(state);
        self.gen_products.hash(state);
    }
}

/// Whether each generator product is killed by both generator orders.
pub fn bilinear_well_defined(group: &FinAbGroup, gen_products: &[Elem]) -> Result<()> {
    let k = group.rank();
    if gen_products.len() != k * k {
        return Err(Error::Precondition(format!(
            "expected {} generator products, got {}",
            k * k,
            gen_products.len()
        )));
    }
    for i in 0..k {
        for j in 0..k {
            let x = gen_products[i * k + j];
            if !group.contains(x) {
                return Err(Error::InvalidElement(vec![x as i64]));
            }
            let ni = group.orders()[i] as i64;
            let nj = group.orders()[j] as i64;
            if group.scale(ni, x) != 0 || group.scale(nj, x) != 0 {
                return Err(Error::InvalidBilinear { i, j });
            }
        }
    }
    Ok(())
}

/// Admissible values for each generator product `g_i g_j`, row-major: the
/// elements killed by both generator orders.
pub fn bilinear_candidates(group: &FinAbGroup) -> Vec<Vec<Elem>> {
    let o = group.orders();
    let mut out = Vec::new();
    for &ni in o {
        for &nj in o {
            let d = ni.gcd(&nj) as i64;
            out.push(group.elements().filter(|&x| group.scale(d, x) == 0).collect());
        }
    }
    out
}

impl Ring {
    /// Validate and build a ring from generator products (row-major, `k*k`).
    pub fn new(group: FinAbGroup, gen_products: Vec<Elem>) -> Result<Ring> {
        bilinear_well_defined(&group, &gen_products)?;
        let ring = Self::new_unchecked(group, gen_products);
        ring.check_associative()?;
        Ok(ring)
    }

    /// Build without validation. Callers must have checked well-definedness
    /// and associativity.
    pub(crate) fn new_unchecked(group: FinAbGroup, gen_products: Vec<Elem>) -> Ring {
        let mut ring = Ring {
            group,
            gen_products,
            table: None,
        };
        let n = ring.group.size();
        if n <= TABLE_LIMIT {
            let mut t = Vec::with_capacity(n * n);
            for x in 0..n {
                for y in 0..n {
                    t.push(ring.mul_bilinear(x, y) as u32);
                }
            }
            ring.table = Some(t.into());
        }
        ring
    }

    pub fn from_gen_table(group: FinAbGroup, rows: &[Vec<Elem>]) -> Result<Ring> {
        Ring::new(group, rows.iter().flatten().copied().collect())
    }

    /// Build from a bilinear function, checking that it agrees with the
    /// bilinear extension of its generator values on every pair.
    pub fn from_fn<F: Fn(Elem, Elem) -> Elem>(group: FinAbGroup, f: F) -> Result<Ring> {
        let gens = group.generators();
        let gp = gens
            .iter()
            .flat_map(|&a| gens.iter().map(|&b| f(a, b)).collect::<Vec<_>>())
            .collect();
        let ring = Ring::new(group, gp)?;
        for x in ring.group.elements() {
            for y in ring.group.elements() {
                if ring.mul(x, y) != f(x, y) {
                    return Err(Error::Precondition(format!("product is not bilinear at ({x},{y})")));
                }
            }
        }
        Ok(ring)
    }

    pub fn zero_ring(group: FinAbGroup) -> Ring {
        let k = group.rank();
        Self::new_unchecked(group, vec![0; k * k])
    }

    /// The ring `Z_n` (trivial ring for `n = 1`).
    pub fn integers_mod(n: u64) -> Result<Ring> {
        let g = FinAbGroup::cyclic(n)?;
        if n == 1 {
            return Ok(Ring::zero_ring(g));
        }
        Ring::new(g, vec![1])
    }

    /// Build a ring from addition and multiplication tables on `0..n`, zero at
    /// index `0`. Returns the ring and the labelling of its elements.
    pub fn from_tables<A, M>(n: usize, add: A, mul: M) -> Result<(Ring, Decomposition)>
    where
        A: Fn(usize, usize) -> usize,
        M: Fn(usize, usize) -> usize,
    {
        let d = decompose_table(n, add)?;
        let gens = d.group.generators();
        let gp = gens
            .iter()
            .flat_map(|&a| {
                gens.iter()
                    .map(|&b| d.from_table[mul(d.to_table[a], d.to_table[b])])
                    .collect::<Vec<_>>()
            })
            .collect();
        let ring = Ring::new(d.group.clone(), gp)?;
        Ok((ring, d))
    }

    fn check_associative(&self) -> Result<()> {
        let gens = self.group.generators();
        for &a in &gens {
            for &b in &gens {
                let ab = self.mul(a, b);
                for &c in &gens {
                    if self.mul(ab, c) != self.mul(a, self.mul(b, c)) {
                        return Err(Error::AxiomViolation {
                            axiom: Axiom::Associativity,
                            witness: [a, b, c],
                        });
                    }
                }
            }
        }
        Ok(())
    }

    pub fn group(&self) -> &FinAbGroup {
        &self.group
    }

    pub fn size(&self) -> usize {
        self.group.size()
    }

    pub fn gen_products(&self) -> &[Elem] {
        &self.gen_products
    }

    pub fn gen_product(&self, i: usize, j: usize) -> Elem {
        self.gen_products[i * self.group.rank() + j]
    }

    fn mul_bilinear(&self, x: Elem, y: Elem) -> Elem {
        let g = &self.group;
        let k = g.rank();
        let mut acc = 0;
        for i in 0..k {
            let xi = g.digit(x, i);
            if xi == 0 {
                continue;
            }
            for j in 0..k {
                let yj = g.digit(y, j);
                if yj == 0 {
                    continue;
                }
                acc = g.add(acc, g.scale((xi * yj) as i64, self.gen_products[i * k + j]));
            }
        }
        acc
    }

    #[inline]
    pub fn mul(&self, x: Elem, y: Elem) -> Elem {
        match &self.table {
            Some(t) => t[x * self.group.size() + y] as Elem,
            None => self.mul_bilinear(x, y),
        }
    }

    pub fn add(&self, x: Elem, y: Elem) -> Elem {
        self.group.add(x, y)
    }

    pub fn sub(&self, x: Elem, y: Elem) -> Elem {
        self.group.sub(x, y)
    }

    pub fn neg(&self, x: Elem) -> Elem {
        self.group.neg(x)
    }

    pub fn is_commutative(&self) -> bool {
        let k = self.group.rank();
        (0..k).all(|i| (0..k).all(|j| self.gen_product(i, j) == self.gen_product(j, i)))
    }

    pub fn is_zero_ring(&self) -> bool {
        self.gen_products.iter().all(|&x| x == 0)
    }

    pub fn identity(&self) -> Option<Elem> {
        let gens = self.group.generators();
        self.group
            .elements()
            .find(|&u| gens.iter().all(|&g| self.mul(u, g) == g && self.mul(g, u) == g))
    }

    /// `x -> a x`.
    pub fn left_mult(&self, a: Elem) -> AdditiveMap {
        let images = self.group.generators().into_iter().map(|g| self.mul(a, g)).collect();
        AdditiveMap::new(&self.group, &self.group, images).expect("multiplication is additive")
    }

    /// `x -> x a`.
    pub fn right_mult(&self, a: Elem) -> AdditiveMap {
        let images = self.group.generators().into_iter().map(|g| self.mul(g, a)).collect();
        AdditiveMap::new(&self.group, &self.group, images).expect("multiplication is additive")
    }

    pub fn annihilator(&self) -> ElemSet {
        let gens = self.group.generators();
        ElemSet::from_elems(
            self.size(),
            self.group
                .elements()
                .filter(|&a| gens.iter().all(|&g| self.mul(g, a) == 0 && self.mul(a, g) == 0)),
        )
    }

    pub fn idempotents(&self) -> Vec<Elem> {
        self.group.elements().filter(|&x| self.mul(x, x) == x).collect()
    }

    /// Number of elements of the subgroup spanned by all products.
    pub fn square_size(&self) -> usize {
        subgroup_closure(&self.group, self.gen_products.iter().copied()).len()
    }

    pub fn nilpotent_count(&self) -> usize {
        self.group
            .elements()
            .filter(|&x| {
                let mut y = x;
                for _ in 0..=self.size() {
                    if y == 0 {
                        return true;
                    }
                    y = self.mul(y, x);
                }
                false
            })
            .count()
    }

    pub fn is_subgroup(&self, set: &ElemSet) -> bool {
        set.contains(0)
            && set
                .iter()
                .all(|x| set.iter().all(|y| set.contains(self.group.sub(x, y))))
    }

    pub fn is_left_ideal(&self, set: &ElemSet) -> bool {
        let gens = self.group.generators();
        self.is_subgroup(set) && set.iter().all(|x| gens.iter().all(|&g| set.contains(self.mul(g, x))))
    }

    pub fn is_right_ideal(&self, set: &ElemSet) -> bool {
        let gens = self.group.generators();
        self.is_subgroup(set) && set.iter().all(|x| gens.iter().all(|&g| set.contains(self.mul(x, g))))
    }

    pub fn is_ideal(&self, set: &ElemSet) -> bool {
        self.is_left_ideal(set) && self.is_right_ideal(set)
    }

    /// Smallest two-sided ideal containing `gens`.
    pub fn ideal_generated<I: IntoIterator<Item = Elem>>(&self, gens: I) -> ElemSet {
        let mut set = subgroup_closure(&self.group, gens);
        let ring_gens = self.group.generators();
        loop {
            let mut extra = Vec::new();
            for x in set.iter() {
                for &g in &ring_gens {
                    for y in [self.mul(g, x), self.mul(x, g)] {
                        if !set.contains(y) {
                            extra.push(y);
                        }
                    }
                }
            }
            if extra.is_empty() {
                return set;
            }
            set = subgroup_closure(&self.group, set.iter().chain(extra));
        }
    }

    /// All two-sided ideals, sorted by size then members, with essentiality
    /// flags.
    pub fn enumerate_ideals(&self) -> Vec<Ideal> {
        let principal: BTreeSet<ElemSet> = self.group.elements().map(|x| self.ideal_generated([x])).collect();
        let principal: Vec<ElemSet> = principal.into_iter().collect();
        let mut seen: HashSet<ElemSet> = principal.iter().cloned().collect();
        let mut work: Vec<ElemSet> = principal.clone();
        while let Some(i) = work.pop() {
            for p in &principal {
                if p.is_subset(&i) {
                    continue;
                }
                let sum = subgroup_closure(&self.group, i.iter().chain(p.iter()));
                if seen.insert(sum.clone()) {
                    work.push(sum);
                }
            }
        }
        let mut all: Vec<ElemSet> = seen.into_iter().collect();
        all.sort();
        let nonzero: Vec<&ElemSet> = all.iter().filter(|s| s.len() > 1).collect();
        all.iter()
            .map(|s| Ideal {
                members: s.clone(),
                essential: nonzero.iter().all(|j| s.intersection(j).len() > 1),
            })
            .collect()
    }

    /// `R / I`.
    pub fn quotient(&self, ideal: &ElemSet) -> Result<QuotientRing> {
        if !self.is_ideal(ideal) {
            return Err(Error::NotAnIdeal);
        }
        let n = self.size();
        let mut label = vec![usize::MAX; n];
        let mut reps = Vec::new();
        for x in self.group.elements() {
            if label[x] != usize::MAX {
                continue;
            }
            let c = reps.len();
            reps.push(x);
            for i in ideal.iter() {
                label[self.group.add(x, i)] = c;
            }
        }
        let m = reps.len();
        let (ring, d) = Ring::from_tables(
            m,
            |a, b| label[self.group.add(reps[a], reps[b])],
            |a, b| label[self.mul(reps[a], reps[b])],
        )?;
        let projection = AdditiveMap::from_fn(&self.group, ring.group(), |x| d.from_table[label[x]])?;
        let reps_by_elem = ring.group().elements().map(|q| reps[d.to_table[q]]).collect();
        let projection = RingHom::new(self, &ring, projection)?;
        Ok(QuotientRing {
            ring,
            projection,
            reps: reps_by_elem,
        })
    }

    /// Direct product `A x B` with componentwise operations.
    pub fn product(a: &Ring, b: &Ring) -> Result<Ring> {
        let group = a.group.product(&b.group)?;
        let ka = a.group.rank();
        let kb = b.group.rank();
        let k = ka + kb;
        let nb = b.size();
        let mut gp = vec![0; k * k];
        for i in 0..ka {
            for j in 0..ka {
                gp[i * k + j] = a.gen_product(i, j) * nb;
            }
        }
        for i in 0..kb {
            for j in 0..kb {
                gp[(ka + i) * k + ka + j] = b.gen_product(i, j);
            }
        }
        Ring::new(group, gp)
    }

    /// Isomorphism invariants used to prune searches.
    pub fn fingerprint(&self) -> RingFingerprint {
        let mut orders: Vec<u64> = self.group.elements().map(|x| self.group.order_of(x)).collect();
        orders.sort_unstable();
        RingFingerprint {
            size: self.size(),
            element_orders: orders,
            commutative: self.is_commutative(),
            unital: self.identity().is_some(),
            annihilator: self.annihilator().len(),
            idempotents: self.idempotents().len(),
            nilpotents: self.nilpotent_count(),
            square: self.square_size(),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct RingFingerprint {
    pub size: usize,
    pub element_orders: Vec<u64>,
    pub commutative: bool,
    pub unital: bool,
    pub annihilator: usize,
    pub idempotents: usize,
    pub nilpotents: usize,
    pub square: usize,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Ideal {
    pub members: ElemSet,
    pub essential: bool,
}

#[derive(Clone, Debug)]
pub struct QuotientRing {
    pub ring: Ring,
    pub projection: RingHom,
    /// Least representative in the parent ring of each quotient element.
    pub reps: Vec<Elem>,
}

/// A multiplicative additive map between rings.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RingHom {
    source: Ring,
    target: Ring,
    map: AdditiveMap,
}

impl RingHom {
    pub fn new(source: &Ring, target: &Ring, map: AdditiveMap) -> Result<RingHom> {
        if map.source() != source.group() || map.target() != target.group() {
            return Err(Error::InvalidMap("map groups do not match the rings".into()));
        }
        if !is_multiplicative(source, target, &map) {
            return Err(Error::Precondition("map is not multiplicative".into()));
        }
        Ok(RingHom {
            source: source.clone(),
            target: target.clone(),
            map,
        })
    }

    pub fn identity(r: &Ring) -> RingHom {
        RingHom {
            source: r.clone(),
            target: r.clone(),
            map: AdditiveMap::identity(r.group()),
        }
    }

    pub fn source(&self) -> &Ring {
        &self.source
    }

    pub fn target(&self) -> &Ring {
        &self.target
    }

    pub fn map(&self) -> &AdditiveMap {
        &self.map
    }

    pub fn apply(&self, x: Elem) -> Elem {
        self.map.apply(x)
    }

    /// `self ∘ inner`.
    pub fn compose(&self, inner: &RingHom) -> RingHom {
        RingHom {
            source: inner.source.clone(),
            target: self.target.clone(),
            map: self.map.compose(&inner.map),
        }
    }

    pub fn inverse(&self) -> Option<RingHom> {
        Some(RingHom {
            source: self.target.clone(),
            target: self.source.clone(),
            map: self.map.inverse()?,
        })
    }

    pub fn is_bijective(&self) -> bool {
        self.map.is_bijective()
    }

    pub fn kernel(&self) -> ElemSet {
        self.map.kernel()
    }
}

fn is_multiplicative(source: &Ring, target: &Ring, map: &AdditiveMap) -> bool {
    let gens = source.group().generators();
    gens.iter().all(|&a| {
        gens.iter()
            .all(|&b| map.apply(source.mul(a, b)) == target.mul(map.apply(a), map.apply(b)))
    })
}

/// All ring homomorphisms `source -> target`.
pub fn ring_homs(source: &Ring, target: &Ring) -> Vec<RingHom> {
    enumerate_homs(source.group(), target.group())
        .into_iter()
        .filter(|m| is_multiplicative(source, target, m))
        .map(|map| RingHom {
            source: source.clone(),
            target: target.clone(),
            map,
        })
        .collect()
}

pub fn ring_automorphisms(r: &Ring) -> Vec<RingHom> {
    enumerate_automorphisms(r.group())
        .into_iter()
        .filter(|m| is_multiplicative(r, r, m))
        .map(|map| RingHom {
            source: r.clone(),
            target: r.clone(),
            map,
        })
        .collect()
}

/// Find a ring isomorphism, pruning by invariants first.
pub fn ring_iso_search(a: &Ring, b: &Ring) -> Option<RingHom> {
    if a.size() != b.size() || a.fingerprint() != b.fingerprint() {
        return None;
    }
    if a.size() <= 64 && a.enumerate_ideals().len() != b.enumerate_ideals().len() {
        return None;
    }
    enumerate_isomorphisms(a.group(), b.group())
        .into_iter()
        .find(|m| is_multiplicative(a, b, m))
        .map(|map| RingHom {
            source: a.clone(),
            target: b.clone(),
            map,
        })
}

/// Automorphisms of a group together with their inverses.
#[derive(Clone, Debug)]
pub struct GroupSymmetry {
    pub group: FinAbGroup,
    pub auts: Vec<AdditiveMap>,
    pub inverses: Vec<AdditiveMap>,
}

impl GroupSymmetry {
    pub fn new(group: &FinAbGroup) -> Self {
        let auts = enumerate_automorphisms(group);
        let inverses = auts.iter().map(|a| a.inverse().expect("automorphism")).collect();
        GroupSymmetry {
            group: group.clone(),
            auts,
            inverses,
        }
    }
}

/// Lexicographically least generator-product table over all relabellings of
/// the carrier by group automorphisms. Equal keys iff isomorphic rings.
pub fn ring_canonical_key(r: &Ring, sym: &GroupSymmetry) -> Vec<Elem> {
    let gens = r.group().generators();
    let mut best: Option<Vec<Elem>> = None;
    for (phi, inv) in sym.auts.iter().zip(&sym.inverses) {
        let pre: Vec<Elem> = gens.iter().map(|&g| inv.apply(g)).collect();
        let cand: Vec<Elem> = pre
            .iter()
            .flat_map(|&a| pre.iter().map(move |&b| phi.apply(r.mul(a, b))))
            .collect();
        if best.as_ref().is_none_or(|b| cand < *b) {
            best = Some(cand);
        }
    }
    best.unwrap_or_default()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn g(orders: &[u64]) -> FinAbGroup {
        FinAbGroup::new(orders).unwrap()
    }

    #[test]
    fn z4_variants() {
        let r = Ring::new(g(&[4]), vec![1]).unwrap();
        assert_eq!(r.mul(3, 3), 1);
        let r2 = Ring::new(g(&[4]), vec![2]).unwrap();
        // brute-force associativity
        for a in 0..4 {
            for b in 0..4 {
                for c in 0..4 {
                    assert_eq!(r2.mul(r2.mul(a, b), c), r2.mul(a, r2.mul(b, c)));
                }
            }
        }
        assert_eq!(r2.mul(1, 1), 2);
    }

    #[test]
    fn rejects_ill_defined_products() {
        // Z2 x Z4 with g0*g0 = g1 (order 4) is not killed by 2.
        let r = Ring::new(g(&[2, 4]), vec![1, 0, 0, 0]);
        assert_eq!(r, Err(Error::InvalidBilinear { i: 0, j: 0 }));
    }

    #[test]
    fn rejects_non_associative() {
        // Z2 x Z2 with e0*e0 = e1, e1*e0 = e0, everything else zero.
        let r = Ring::new(g(&[2, 2]), vec![1, 0, 2, 0]);
        assert!(matches!(r, Err(Error::AxiomViolation { .. })));
    }

    #[test]
    fn annihilators() {
        let zero = Ring::zero_ring(g(&[2, 2]));
        assert_eq!(zero.annihilator().len(), 4);
        let z4 = Ring::integers_mod(4).unwrap();
        assert_eq!(z4.annihilator().to_vec(), vec![0]);
    }

    #[test]
    fn ideals_of_small_rings() {
        let z4 = Ring::integers_mod(4).unwrap();
        let ideals = z4.enumerate_ideals();
        assert_eq!(ideals.len(), 3);
        assert!(ideals.iter().filter(|i| i.members.len() > 1).all(|i| i.essential));
        let zero = Ring::zero_ring(g(&[2, 2]));
        assert_eq!(zero.enumerate_ideals().len(), 5);
    }

    #[test]
    fn quotient_of_z4() {
        let z4 = Ring::integers_mod(4).unwrap();
        let i = ElemSet::from_elems(4, [0, 2]);
        let q = z4.quotient(&i).unwrap();
        assert_eq!(q.ring.size(), 2);
        assert!(ring_iso_search(&q.ring, &Ring::integers_mod(2).unwrap()).is_some());
        assert_eq!(q.projection.kernel(), i);
        let trivial = z4.quotient(&ElemSet::from_elems(4, [0])).unwrap();
        assert!(ring_iso_search(&trivial.ring, &z4).is_some());
        assert_eq!(z4.quotient(&ElemSet::from_elems(4, [0, 1])).unwrap_err(), Error::NotAnIdeal);
    }

    #[test]
    fn products_are_unital() {
        let z2 = Ring::integers_mod(2).unwrap();
        let p = Ring::product(&z2, &z2).unwrap();
        assert_eq!(p.size(), 4);
        assert_eq!(p.identity(), Some(3));
    }

    #[test]
    fn iso_search_basics() {
        let z3 = Ring::integers_mod(3).unwrap();
        assert!(ring_iso_search(&z3, &z3).is_some());
        assert!(ring_iso_search(&z3, &Ring::zero_ring(g(&[3]))).is_none());
        let z6 = Ring::integers_mod(6).unwrap();
        let z2z3 = Ring::product(&Ring::integers_mod(2).unwrap(), &z3).unwrap();
        assert!(ring_iso_search(&z6, &z2z3).is_some());
    }

    #[test]
    fn canonical_keys_detect_isomorphism() {
        let grp = g(&[2, 2]);
        let sym = GroupSymmetry::new(&grp);
        let a = Ring::new(grp.clone(), vec![2, 0, 0, 0]).unwrap();
        let b = Ring::new(grp.clone(), vec![0, 0, 0, 1]).unwrap();
        assert_eq!(ring_canonical_key(&a, &sym), ring_canonical_key(&b, &sym));
        let c = Ring::zero_ring(grp);
        assert_ne!(ring_canonical_key(&a, &sym), ring_canonical_key(&c, &sym));
    }
}
