//! Finite abelian groups presented as products of cyclic groups, additive maps
//! between them, and the automorphism and subgroup enumerations built on top.
//!
//! Elements are encoded as integers: the tuple `(a_1, .., a_k)` with
//! `0 <= a_i < n_i` has index `sum a_i * stride_i`, where the first component
//! is most significant. Index order is therefore lexicographic tuple order.

use std::collections::HashSet;
use std::fmt;
use std::hash::{Hash, Hasher};
use std::ops::Range;
use std::sync::Arc;

use fixedbitset::FixedBitSet;
use num_integer::Integer;

use crate::error::{Error, Result};

/// Index of a group element in lexicographic tuple order.
pub type Elem = usize;

/// Groups up to this size cache full addition and negation tables.
const TABLE_LIMIT: usize = 256;

#[derive(Clone)]
pub struct FinAbGroup {
    orders: Vec<u64>,
    strides: Vec<usize>,
    size: usize,
    exponent: u64,
    add_table: Option<Arc<[u32]>>,
    neg_table: Option<Arc<[u32]>>,
}

impl fmt::Debug for FinAbGroup {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "FinAbGroup{:?}", self.orders)
    }
}

impl PartialEq for FinAbGroup {
    fn eq(&self, other: &Self) -> bool {
        self.orders == other.orders
    }
}
impl Eq for FinAbGroup {}

impl Hash for FinAbGroup {
    fn hash<H: Hasher>(&self, state: &mut H) {
        self.orders.hash(state);
    }
}

impl FinAbGroup {
    /// Build `Z_{n_1} x .. x Z_{n_k}`. The empty list gives the trivial group.
    pub fn new(orders: &[u64]) -> Result<Self> {
        if let Some(&bad) = orders.iter().find(|&&n| n < 2) {
            return Err(Error::InvalidOrder(bad));
        }
        let mut size: usize = 1;
        for &n in orders {
            size = size
                .checked_mul(n as usize)
                .ok_or_else(|| Error::Unsupported(format!("group {orders:?} is too large")))?;
        }
        let mut strides = vec![1usize; orders.len()];
        for i in (0..orders.len().saturating_sub(1)).rev() {
            strides[i] = strides[i + 1] * orders[i + 1] as usize;
        }
        let exponent = orders.iter().fold(1u64, |acc, &n| acc.lcm(&n));
        let mut g = FinAbGroup {
            orders: orders.to_vec(),
            strides,
            size,
            exponent,
            add_table: None,
            neg_table: None,
        };
        if size <= TABLE_LIMIT {
            let mut add = Vec::with_capacity(size * size);
            for x in 0..size {
                for y in 0..size {
                    add.push(g.add_slow(x, y) as u32);
                }
            }
            let neg: Vec<u32> = (0..size).map(|x| g.neg_slow(x) as u32).collect();
            g.add_table = Some(add.into());
            g.neg_table = Some(neg.into());
        }
        Ok(g)
    }

    pub fn trivial() -> Self {
        Self::new(&[]).expect("trivial group")
    }

    pub fn cyclic(n: u64) -> Result<Self> {
        if n == 1 {
            return Ok(Self::trivial());
        }
        Self::new(&[n])
    }

    /// Parse a comma-separated list of orders such as `"2,2"`.
    pub fn parse(spec: &str) -> Result<Self> {
        let spec = spec.trim();
        if spec.is_empty() {
            return Self::new(&[]);
        }
        let orders = spec
            .split(',')
            .map(|t| {
                t.trim()
                    .parse::<u64>()
                    .map_err(|e| Error::Parse(format!("bad order {t:?}: {e}")))
            })
            .collect::<Result<Vec<_>>>()?;
        Self::new(&orders)
    }

    /// Direct product, components of `self` first.
    pub fn product(&self, other: &FinAbGroup) -> Result<FinAbGroup> {
        let mut orders = self.orders.clone();
        orders.extend_from_slice(&other.orders);
        FinAbGroup::new(&orders)
    }

    pub fn orders(&self) -> &[u64] {
        &self.orders
    }

    pub fn rank(&self) -> usize {
        self.orders.len()
    }

    pub fn size(&self) -> usize {
        self.size
    }

    pub fn exponent(&self) -> u64 {
        self.exponent
    }

    pub fn elements(&self) -> Range<Elem> {
        0..self.size
    }

    pub fn zero(&self) -> Elem {
        0
    }

    pub fn contains(&self, x: Elem) -> bool {
        x < self.size
    }

    pub fn digit(&self, x: Elem, i: usize) -> u64 {
        ((x / self.strides[i]) % self.orders[i] as usize) as u64
    }

    pub fn digits(&self, x: Elem) -> Vec<u64> {
        (0..self.rank()).map(|i| self.digit(x, i)).collect()
    }

    pub fn from_digits(&self, digits: &[u64]) -> Result<Elem> {
        if digits.len() != self.rank() || digits.iter().zip(&self.orders).any(|(d, n)| d >= n) {
            return Err(Error::InvalidElement(digits.iter().map(|&d| d as i64).collect()));
        }
        Ok(digits.iter().zip(&self.strides).map(|(&d, &s)| d as usize * s).sum())
    }

    /// Reduce arbitrary integers into the carrier.
    pub fn from_ints(&self, ints: &[i64]) -> Result<Elem> {
        if ints.len() != self.rank() {
            return Err(Error::InvalidElement(ints.to_vec()));
        }
        Ok(ints
            .iter()
            .zip(&self.orders)
            .zip(&self.strides)
            .map(|((&a, &n), &s)| a.rem_euclid(n as i64) as usize * s)
            .sum())
    }

    /// The `i`-th standard generator.
    pub fn generator(&self, i: usize) -> Elem {
        self.strides[i]
    }

    pub fn generators(&self) -> Vec<Elem> {
        self.strides.clone()
    }

    fn add_slow(&self, x: Elem, y: Elem) -> Elem {
        let mut out = 0;
        for i in 0..self.rank() {
            let n = self.orders[i];
            out += ((self.digit(x, i) + self.digit(y, i)) % n) as usize * self.strides[i];
        }
        out
    }

    fn neg_slow(&self, x: Elem) -> Elem {
        let mut out = 0;
        for i in 0..self.rank() {
            let n = self.orders[i];
            out += ((n - self.digit(x, i)) % n) as usize * self.strides[i];
        }
        out
    }

    #[inline]
    pub fn add(&self, x: Elem, y: Elem) -> Elem {
        match &self.add_table {
            Some(t) => t[x * self.size + y] as Elem,
            None => self.add_slow(x, y),
        }
    }

    #[inline]
    pub fn neg(&self, x: Elem) -> Elem {
        match &self.neg_table {
            Some(t) => t[x] as Elem,
            None => self.neg_slow(x),
        }
    }

    #[inline]
    pub fn sub(&self, x: Elem, y: Elem) -> Elem {
        self.add(x, self.neg(y))
    }

    pub fn sum<I: IntoIterator<Item = Elem>>(&self, it: I) -> Elem {
        it.into_iter().fold(0, |acc, x| self.add(acc, x))
    }

    /// `k * x` for any integer `k`.
    pub fn scale(&self, k: i64, x: Elem) -> Elem {
        let mut out = 0;
        for i in 0..self.rank() {
            let n = self.orders[i] as i128;
            let d = self.digit(x, i) as i128;
            out += ((k as i128 * d).rem_euclid(n)) as usize * self.strides[i];
        }
        out
    }

    /// `k * x` for a big integer `k`.
    pub fn scale_big(&self, k: &num_bigint::BigInt, x: Elem) -> Elem {
        use num_traits::ToPrimitive;
        let e = num_bigint::BigInt::from(self.exponent);
        let r = k.mod_floor(&e).to_i64().expect("reduced below exponent");
        self.scale(r, x)
    }

    /// Additive order of `x`.
    pub fn order_of(&self, x: Elem) -> u64 {
        (0..self.rank()).fold(1u64, |acc, i| {
            let n = self.orders[i];
            let d = self.digit(x, i);
            acc.lcm(&(n / n.gcd(&d)))
        })
    }
}

/// A set of group elements backed by a bitset over element indices.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct ElemSet {
    bits: FixedBitSet,
}

impl fmt::Debug for ElemSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_set().entries(self.iter()).finish()
    }
}

impl PartialOrd for ElemSet {
    fn partial_cmp(&self, other: &Self) -> Option<std::cmp::Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for ElemSet {
    fn cmp(&self, other: &Self) -> std::cmp::Ordering {
        self.len()
            .cmp(&other.len())
            .then_with(|| self.iter().cmp(other.iter()))
    }
}

impl ElemSet {
    pub fn empty(universe: usize) -> Self {
        ElemSet {
            bits: FixedBitSet::with_capacity(universe),
        }
    }

    pub fn full(universe: usize) -> Self {
        let mut bits = FixedBitSet::with_capacity(universe);
        bits.insert_range(..);
        ElemSet { bits }
    }

    pub fn from_elems<I: IntoIterator<Item = Elem>>(universe: usize, it: I) -> Self {
        let mut s = Self::empty(universe);
        for x in it {
            s.insert(x);
        }
        s
    }

    pub fn universe(&self) -> usize {
        self.bits.len()
    }

    pub fn insert(&mut self, x: Elem) -> bool {
        !self.bits.put(x)
    }

    pub fn contains(&self, x: Elem) -> bool {
        self.bits.contains(x)
    }

    pub fn len(&self) -> usize {
        self.bits.count_ones(..)
    }

    pub fn is_empty(&self) -> bool {
        self.bits.is_clear()
    }

    pub fn iter(&self) -> impl Iterator<Item = Elem> + '_ {
        self.bits.ones()
    }

    pub fn to_vec(&self) -> Vec<Elem> {
        self.iter().collect()
    }

    pub fn is_subset(&self, other: &ElemSet) -> bool {
        self.bits.is_subset(&other.bits)
    }

    pub fn intersection(&self, other: &ElemSet) -> ElemSet {
        let mut bits = self.bits.clone();
        bits.intersect_with(&other.bits);
        ElemSet { bits }
    }

    pub fn union(&self, other: &ElemSet) -> ElemSet {
        let mut bits = self.bits.clone();
        bits.union_with(&other.bits);
        ElemSet { bits }
    }

    /// Least member, if any.
    pub fn min(&self) -> Option<Elem> {
        self.bits.minimum()
    }
}

/// Subgroup generated by `gens`.
pub fn subgroup_closure<I: IntoIterator<Item = Elem>>(g: &FinAbGroup, gens: I) -> ElemSet {
    let mut set = ElemSet::from_elems(g.size(), [0]);
    let mut members = vec![0];
    for x in gens {
        extend_subgroup(g, &mut set, &mut members, x);
    }
    set
}

fn extend_subgroup(g: &FinAbGroup, set: &mut ElemSet, members: &mut Vec<Elem>, x: Elem) {
    if set.contains(x) {
        return;
    }
    let base = members.clone();
    let mut mult = x;
    while !set.contains(mult) {
        for &h in &base {
            let y = g.add(h, mult);
            if set.insert(y) {
                members.push(y);
            }
        }
        mult = g.add(mult, x);
    }
}

/// All subgroups, sorted by size and then by members.
pub fn enumerate_subgroups(g: &FinAbGroup) -> Vec<ElemSet> {
    let mut seen: HashSet<ElemSet> = HashSet::new();
    let trivial = ElemSet::from_elems(g.size(), [0]);
    let mut frontier = vec![trivial.clone()];
    seen.insert(trivial);
    while let Some(h) = frontier.pop() {
        for x in g.elements() {
            if h.contains(x) {
                continue;
            }
            let mut set = h.clone();
            let mut members = h.to_vec();
            extend_subgroup(g, &mut set, &mut members, x);
            if seen.insert(set.clone()) {
                frontier.push(set);
            }
        }
    }
    let mut out: Vec<ElemSet> = seen.into_iter().collect();
    out.sort();
    out
}

/// A homomorphism of finite abelian groups, stored by generator images with a
/// full lookup table.
#[derive(Clone)]
pub struct AdditiveMap {
    source: FinAbGroup,
    target: FinAbGroup,
    images: Vec<Elem>,
    table: Arc<[Elem]>,
}

impl fmt::Debug for AdditiveMap {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "AdditiveMap{:?}", self.images)
    }
}

impl PartialEq for AdditiveMap {
    fn eq(&self, other: &Self) -> bool {
        self.images == other.images && self.source == other.source && self.target == other.target
    }
}
impl Eq for AdditiveMap {}

impl Hash for AdditiveMap {
    fn hash<H: Hasher>(&self, state: &mut H) {
        self.images.hash(state);
    }
}

impl AdditiveMap {
    /// Validate generator images and build the map.
    pub fn new(source: &FinAbGroup, target: &FinAbGroup, images: Vec<Elem>) -> Result<Self> {
        if images.len() != source.rank() {
            return Err(Error::InvalidMap(format!(
                "expected {} generator images, got {}",
                source.rank(),
                images.len()
            )));
        }
        for (j, &y) in images.iter().enumerate() {
            if !target.contains(y) {
                return Err(Error::InvalidMap(format!("image of generator {j} is outside the target")));
            }
            if target.scale(source.orders()[j] as i64, y) != 0 {
                return Err(Error::InvalidMap(format!(
                    "image of generator {j} is not killed by its order {}",
                    source.orders()[j]
                )));
            }
        }
        Ok(Self::new_unchecked(source, target, images))
    }

    fn new_unchecked(source: &FinAbGroup, target: &FinAbGroup, images: Vec<Elem>) -> Self {
        let n = source.size();
        let mut table = vec![0; n];
        for x in 1..n {
            let i = (0..source.rank())
                .rev()
                .find(|&i| source.digit(x, i) != 0)
                .expect("nonzero element has a nonzero digit");
            table[x] = target.add(table[x - source.generator(i)], images[i]);
        }
        AdditiveMap {
            source: source.clone(),
            target: target.clone(),
            images,
            table: table.into(),
        }
    }

    /// Build from a function, checking that it is additive.
    pub fn from_fn<F: Fn(Elem) -> Elem>(source: &FinAbGroup, target: &FinAbGroup, f: F) -> Result<Self> {
        let images = source.generators().into_iter().map(&f).collect();
        let m = Self::new(source, target, images)?;
        if let Some(x) = source.elements().find(|&x| m.apply(x) != f(x)) {
            return Err(Error::InvalidMap(format!("function is not additive at element {x}")));
        }
        Ok(m)
    }

    pub fn identity(g: &FinAbGroup) -> Self {
        Self::new_unchecked(g, g, g.generators())
    }

    pub fn zero(source: &FinAbGroup, target: &FinAbGroup) -> Self {
        Self::new_unchecked(source, target, vec![0; source.rank()])
    }

    pub fn source(&self) -> &FinAbGroup {
        &self.source
    }

    pub fn target(&self) -> &FinAbGroup {
        &self.target
    }

    pub fn images(&self) -> &[Elem] {
        &self.images
    }

    pub fn table(&self) -> &[Elem] {
        &self.table
    }

    #[inline]
    pub fn apply(&self, x: Elem) -> Elem {
        self.table[x]
    }

    /// `self ∘ inner`.
    pub fn compose(&self, inner: &AdditiveMap) -> AdditiveMap {
        assert_eq!(inner.target, self.source, "composition of incompatible maps");
        let images = inner.images.iter().map(|&y| self.apply(y)).collect();
        Self::new_unchecked(&inner.source, &self.target, images)
    }

    pub fn add(&self, other: &AdditiveMap) -> AdditiveMap {
        let images = self
            .images
            .iter()
            .zip(&other.images)
            .map(|(&a, &b)| self.target.add(a, b))
            .collect();
        Self::new_unchecked(&self.source, &self.target, images)
    }

    pub fn neg(&self) -> AdditiveMap {
        let images = self.images.iter().map(|&a| self.target.neg(a)).collect();
        Self::new_unchecked(&self.source, &self.target, images)
    }

    pub fn sub(&self, other: &AdditiveMap) -> AdditiveMap {
        self.add(&other.neg())
    }

    pub fn is_bijective(&self) -> bool {
        self.source.size() == self.target.size() && self.kernel_size() == 1
    }

    pub fn kernel_size(&self) -> usize {
        self.table.iter().filter(|&&y| y == 0).count()
    }

    pub fn kernel(&self) -> ElemSet {
        ElemSet::from_elems(self.source.size(), self.source.elements().filter(|&x| self.apply(x) == 0))
    }

    pub fn image(&self) -> ElemSet {
        ElemSet::from_elems(self.target.size(), self.table.iter().copied())
    }

    /// Inverse of a bijective map.
    pub fn inverse(&self) -> Option<AdditiveMap> {
        if !self.is_bijective() {
            return None;
        }
        let mut inv = vec![0; self.source.size()];
        for x in self.source.elements() {
            inv[self.apply(x)] = x;
        }
        let images = self.target.generators().into_iter().map(|g| inv[g]).collect();
        Some(Self::new_unchecked(&self.target, &self.source, images))
    }
}

/// Candidate images per generator for homomorphisms `a -> b`.
fn hom_candidates(a: &FinAbGroup, b: &FinAbGroup, exact_order: bool) -> Vec<Vec<Elem>> {
    a.orders()
        .iter()
        .map(|&n| {
            b.elements()
                .filter(|&y| {
                    if exact_order {
                        b.order_of(y) == n
                    } else {
                        n % b.order_of(y) == 0
                    }
                })
                .collect()
        })
        .collect()
}

/// Number of homomorphisms `a -> b`.
pub fn count_homs(a: &FinAbGroup, b: &FinAbGroup) -> u128 {
    hom_candidates(a, b, false).iter().map(|c| c.len() as u128).product()
}

/// Odometer over a cartesian product of candidate lists, last slot fastest.
pub(crate) fn for_each_choice<F: FnMut(&[Elem])>(cands: &[Vec<Elem>], mut f: F) {
    if cands.iter().any(|c| c.is_empty()) {
        return;
    }
    let k = cands.len();
    let mut idx = vec![0usize; k];
    let mut cur: Vec<Elem> = cands.iter().map(|c| c[0]).collect();
    loop {
        f(&cur);
        let mut i = k;
        loop {
            if i == 0 {
                return;
            }
            i -= 1;
            idx[i] += 1;
            if idx[i] < cands[i].len() {
                cur[i] = cands[i][idx[i]];
                break;
            }
            idx[i] = 0;
            cur[i] = cands[i][0];
        }
    }
}

/// All homomorphisms `a -> b` in lexicographic order of generator images.
pub fn enumerate_homs(a: &FinAbGroup, b: &FinAbGroup) -> Vec<AdditiveMap> {
    let cands = hom_candidates(a, b, false);
    let mut out = Vec::new();
    for_each_choice(&cands, |imgs| out.push(AdditiveMap::new_unchecked(a, b, imgs.to_vec())));
    out
}

pub fn enumerate_endomorphisms(a: &FinAbGroup) -> Vec<AdditiveMap> {
    enumerate_homs(a, a)
}

/// All additive bijections `a -> b`, in lexicographic order of generator images.
pub fn enumerate_isomorphisms(a: &FinAbGroup, b: &FinAbGroup) -> Vec<AdditiveMap> {
    if a.size() != b.size() {
        return Vec::new();
    }
    let cands = hom_candidates(a, b, true);
    let mut out = Vec::new();
    for_each_choice(&cands, |imgs| {
        let m = AdditiveMap::new_unchecked(a, b, imgs.to_vec());
        if m.is_bijective() {
            out.push(m);
        }
    });
    out
}

pub fn enumerate_automorphisms(a: &FinAbGroup) -> Vec<AdditiveMap> {
    enumerate_isomorphisms(a, a)
}

/// An abelian group given by an addition table on `0..n` (with `0` the zero),
/// identified with a product of cyclic prime-power groups.
#[derive(Clone, Debug)]
pub struct Decomposition {
    pub group: FinAbGroup,
    /// Group element -> table index.
    pub to_table: Vec<usize>,
    /// Table index -> group element.
    pub from_table: Vec<Elem>,
}

fn prime_factors(mut n: u64) -> Vec<(u64, u32)> {
    let mut out = Vec::new();
    let mut p = 2;
    while p * p <= n {
        if n % p == 0 {
            let mut e = 0;
            while n % p == 0 {
                n /= p;
                e += 1;
            }
            out.push((p, e));
        }
        p += 1;
    }
    if n > 1 {
        out.push((n, 1));
    }
    out
}

pub(crate) fn is_prime(n: u64) -> bool {
    n >= 2 && prime_factors(n) == vec![(n, 1)]
}

/// Decompose an abelian group given by `add` on indices `0..n`, zero at `0`.
pub fn decompose_table<F: Fn(usize, usize) -> usize>(n: usize, add: F) -> Result<Decomposition> {
    if n == 1 {
        return Ok(Decomposition {
            group: FinAbGroup::trivial(),
            to_table: vec![0],
            from_table: vec![0],
        });
    }
    let order: Vec<u64> = (0..n)
        .map(|x| {
            let mut k = 1u64;
            let mut y = x;
            while y != 0 {
                y = add(y, x);
                k += 1;
                if k as usize > n {
                    break;
                }
            }
            k
        })
        .collect();
    if order.iter().any(|&k| k as usize > n) {
        return Err(Error::Precondition("addition table is not a group".into()));
    }
    let mut targets: Vec<u64> = Vec::new();
    for (p, emax) in prime_factors(n as u64) {
        let count_dividing = |k: u32| order.iter().filter(|&&o| p.pow(k) % o == 0).count() as u64;
        let log_p = |mut c: u64| {
            let mut r = 0i64;
            while c > 1 {
                c /= p;
                r += 1;
            }
            r
        };
        let a: Vec<i64> = (0..=emax).map(|k| log_p(count_dividing(k))).collect();
        let d = |k: u32| -> i64 {
            if k > emax {
                0
            } else {
                a[k as usize] - a[k as usize - 1]
            }
        };
        for k in (1..=emax).rev() {
            for _ in 0..(d(k) - d(k + 1)).max(0) {
                targets.push(p.pow(k));
            }
        }
    }
    let mut basis = Vec::new();
    let mut span = vec![false; n];
    span[0] = true;
    let members = vec![0usize];
    if !find_basis(&add, &order, &targets, &mut basis, &mut span, &members) {
        return Err(Error::Precondition("addition table is not an abelian group".into()));
    }
    let group = FinAbGroup::new(&targets)?;
    let mut from_group = vec![0usize; n];
    for x in 1..n {
        let i = (0..group.rank())
            .rev()
            .find(|&i| group.digit(x, i) != 0)
            .expect("nonzero digit");
        from_group[x] = add(from_group[x - group.generator(i)], basis[i]);
    }
    let mut to_group = vec![usize::MAX; n];
    for (x, &t) in from_group.iter().enumerate() {
        to_group[t] = x;
    }
    if to_group.contains(&usize::MAX) {
        return Err(Error::Precondition("addition table is not an abelian group".into()));
    }
    Ok(Decomposition {
        group,
        to_table: from_group,
        from_table: to_group,
    })
}

fn find_basis<F: Fn(usize, usize) -> usize>(
    add: &F,
    order: &[u64],
    targets: &[u64],
    basis: &mut Vec<usize>,
    span: &mut Vec<bool>,
    members: &[usize],
) -> bool {
    let idx = basis.len();
    if idx == targets.len() {
        return members.len() == span.len();
    }
    let t = targets[idx];
    for b in 0..order.len() {
        if order[b] != t || span[b] {
            continue;
        }
        let mut new_members = Vec::with_capacity(members.len() * t as usize);
        let mut new_span = span.clone();
        let mut ok = true;
        let mut mult = 0usize;
        for k in 0..t {
            if k > 0 {
                mult = add(mult, b);
            }
            for &m in members {
                let y = add(m, mult);
                if k > 0 && new_span[y] {
                    ok = false;
                    break;
                }
                new_span[y] = true;
                new_members.push(y);
            }
            if !ok {
                break;
            }
        }
        if !ok {
            continue;
        }
        basis.push(b);
        if find_basis(add, order, targets, basis, &mut new_span, &new_members) {
            *span = new_span;
            return true;
        }
        basis.pop();
    }
    false
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn sizes_and_exponents() {
        let g = FinAbGroup::new(&[2, 2]).unwrap();
        assert_eq!((g.size(), g.exponent()), (4, 2));
        let t = FinAbGroup::new(&[]).unwrap();
        assert_eq!((t.size(), t.exponent()), (1, 1));
        let g = FinAbGroup::new(&[4, 2]).unwrap();
        assert_eq!((g.size(), g.exponent()), (8, 4));
        assert_eq!(FinAbGroup::new(&[2, 1]), Err(Error::InvalidOrder(1)));
    }

    #[test]
    fn lexicographic_indices() {
        let g = FinAbGroup::new(&[3, 2]).unwrap();
        let tuples: Vec<Vec<u64>> = g.elements().map(|x| g.digits(x)).collect();
        let mut sorted = tuples.clone();
        sorted.sort();
        assert_eq!(tuples, sorted);
        assert_eq!(g.from_digits(&[2, 1]).unwrap(), 5);
    }

    #[test]
    fn large_groups_add_without_tables() {
        let g = FinAbGroup::new(&[3, 3, 3, 3, 3, 3]).unwrap();
        let x = g.from_digits(&[1, 2, 0, 1, 2, 2]).unwrap();
        let y = g.from_digits(&[2, 2, 1, 0, 1, 2]).unwrap();
        assert_eq!(g.digits(g.add(x, y)), vec![0, 1, 1, 1, 0, 1]);
        assert_eq!(g.add(x, g.neg(x)), 0);
    }

    #[test]
    fn additive_map_validation() {
        let z2 = FinAbGroup::new(&[2]).unwrap();
        let z4 = FinAbGroup::new(&[4]).unwrap();
        assert!(AdditiveMap::new(&z2, &z4, vec![2]).is_ok());
        assert!(matches!(AdditiveMap::new(&z2, &z4, vec![1]), Err(Error::InvalidMap(_))));
        let id = AdditiveMap::identity(&z4);
        assert!(z4.elements().all(|x| id.apply(x) == x));
    }

    #[test]
    fn automorphism_counts() {
        let count = |o: &[u64]| enumerate_automorphisms(&FinAbGroup::new(o).unwrap()).len();
        assert_eq!(count(&[2, 2]), 6);
        assert_eq!(count(&[4]), 2);
        assert_eq!(count(&[5]), 4);
        assert_eq!(count(&[2, 4]), 8);
        assert_eq!(count(&[3, 3]), 48);
    }

    #[test]
    fn subgroup_counts() {
        let count = |o: &[u64]| enumerate_subgroups(&FinAbGroup::new(o).unwrap()).len();
        assert_eq!(count(&[2, 2]), 5);
        assert_eq!(count(&[4]), 3);
        assert_eq!(count(&[3, 3]), 6);
        assert_eq!(count(&[2, 2, 2]), 16);
    }

    #[test]
    fn decomposes_cyclic_six() {
        let d = decompose_table(6, |a, b| (a + b) % 6).unwrap();
        assert_eq!(d.group.orders(), &[2, 3]);
        for x in d.group.elements() {
            for y in d.group.elements() {
                let s = d.group.add(x, y);
                assert_eq!(d.to_table[s], (d.to_table[x] + d.to_table[y]) % 6);
            }
        }
    }

    #[test]
    fn decomposes_mixed_product() {
        // Z4 x Z2 presented as Z2 x Z4 with a shuffled labelling.
        let g = FinAbGroup::new(&[2, 4]).unwrap();
        let perm = [0usize, 5, 2, 7, 4, 1, 6, 3];
        let mut inv = [0usize; 8];
        for (i, &p) in perm.iter().enumerate() {
            inv[p] = i;
        }
        let d = decompose_table(8, |a, b| perm[g.add(inv[a], inv[b])]).unwrap();
        assert_eq!(d.group.orders(), &[4, 2]);
    }
}
