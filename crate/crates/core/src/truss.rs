//! Trusses on finite abelian heaps: validation, induced actions, paragons,
//! closed sub-heaps, the retract rings `R(S;e)`, and isomorphism search.

use std::fmt;
use std::sync::Arc;

use serde::{Deserialize, Serialize};
use sha2::{Digest, Sha256};

use crate::error::{Axiom, Error, Result};
use crate::group::{enumerate_isomorphisms, AdditiveMap, Elem, ElemSet, FinAbGroup};
use crate::heap::Heap;
use crate::ring::{GroupSymmetry, Ring};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Side {
    Left,
    Right,
    Both,
}

impl std::str::FromStr for Side {
    type Err = Error;
    fn from_str(s: &str) -> Result<Side> {
        match s {
            "left" => Ok(Side::Left),
            "right" => Ok(Side::Right),
            "both" => Ok(Side::Both),
            _ => Err(Error::Parse(format!("unknown side {s:?}"))),
        }
    }
}

#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Truss {
    heap: Heap,
    table: Arc<[Elem]>,
}

impl fmt::Debug for Truss {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("Truss")
            .field("orders", &self.group().orders())
            .field("table", &self.table)
            .finish()
    }
}

impl Truss {
    /// Validate a row-major multiplication table. Associativity is checked
    /// first, then distributivity. For distributivity the witness `[a, b, d]`
    /// refers to the failing instance `a[b,0,d] != [ab, a0, ad]` (or its
    /// mirror image).
    pub fn validate(heap: Heap, table: Vec<Elem>) -> Result<Truss> {
        let n = heap.size();
        if table.len() != n * n {
            return Err(Error::Precondition(format!(
                "multiplication table has {} entries, expected {}",
                table.len(),
                n * n
            )));
        }
        if let Some(&bad) = table.iter().find(|&&x| x >= n) {
            return Err(Error::InvalidElement(vec![bad as i64]));
        }
        let t = Truss {
            heap,
            table: table.into(),
        };
        for a in 0..n {
            for b in 0..n {
                let ab = t.mul(a, b);
                for c in 0..n {
                    if t.mul(ab, c) != t.mul(a, t.mul(b, c)) {
                        return Err(Error::AxiomViolation {
                            axiom: Axiom::Associativity,
                            witness: [a, b, c],
                        });
                    }
                }
            }
        }
        // Distributing over the ternary operation is the same as every
        // translation map being affine.
        for a in 0..n {
            let a0 = t.mul(a, 0);
            let zero_a = t.mul(0, a);
            for b in 0..n {
                for d in 0..n {
                    let s = t.group().add(b, d);
                    if t.mul(a, s) != t.heap.eval(t.mul(a, b), a0, t.mul(a, d)) {
                        return Err(Error::AxiomViolation {
                            axiom: Axiom::LeftDistributivity,
                            witness: [a, b, d],
                        });
                    }
                    if t.mul(s, a) != t.heap.eval(t.mul(b, a), zero_a, t.mul(d, a)) {
                        return Err(Error::AxiomViolation {
                            axiom: Axiom::RightDistributivity,
                            witness: [a, b, d],
                        });
                    }
                }
            }
        }
        Ok(t)
    }

    pub(crate) fn new_unchecked(heap: Heap, table: Vec<Elem>) -> Truss {
        Truss {
            heap,
            table: table.into(),
        }
    }

    pub fn from_fn<F: Fn(Elem, Elem) -> Elem>(group: &FinAbGroup, f: F) -> Result<Truss> {
        let n = group.size();
        let table = (0..n * n).map(|i| f(i / n, i % n)).collect();
        Truss::validate(Heap::new(group.clone()), table)
    }

    /// `T(R)`: the heap of `(R,+)` with the ring multiplication.
    pub fn from_ring(r: &Ring) -> Truss {
        let n = r.size();
        let table = (0..n * n).map(|i| r.mul(i / n, i % n)).collect();
        Truss::new_unchecked(Heap::new(r.group().clone()), table)
    }

    pub fn heap(&self) -> &Heap {
        &self.heap
    }

    pub fn group(&self) -> &FinAbGroup {
        self.heap.group()
    }

    pub fn size(&self) -> usize {
        self.heap.size()
    }

    pub fn table(&self) -> &[Elem] {
        &self.table
    }

    #[inline]
    pub fn mul(&self, a: Elem, b: Elem) -> Elem {
        self.table[a * self.size() + b]
    }

    /// `λᵉ(a,b) = [ab, ae, e]`.
    pub fn lambda(&self, e: Elem, a: Elem, b: Elem) -> Elem {
        self.heap.eval(self.mul(a, b), self.mul(a, e), e)
    }

    /// `ρᵉ(a,b) = [ab, eb, e]`.
    pub fn rho(&self, e: Elem, a: Elem, b: Elem) -> Elem {
        self.heap.eval(self.mul(a, b), self.mul(e, b), e)
    }

    pub fn is_sub_heap(&self, set: &ElemSet) -> bool {
        let Some(s0) = set.min() else {
            return false;
        };
        let g = self.group();
        set.iter()
            .all(|x| set.iter().all(|y| set.contains(self.heap.eval(x, s0, y)) && set.contains(self.heap.eval(s0, x, y))))
            && set.iter().all(|x| set.contains(g.add(g.sub(s0, x), s0)))
    }

    pub fn is_paragon(&self, set: &ElemSet, side: Side) -> bool {
        if !self.is_sub_heap(set) {
            return false;
        }
        let n = self.size();
        let left = || {
            (0..n).all(|a| {
                set.iter().all(|p| {
                    set.iter()
                        .all(|q| set.contains(self.heap.eval(self.mul(a, p), self.mul(a, q), q)))
                })
            })
        };
        let right = || {
            (0..n).all(|a| {
                set.iter().all(|p| {
                    set.iter()
                        .all(|q| set.contains(self.heap.eval(self.mul(p, a), self.mul(q, a), q)))
                })
            })
        };
        match side {
            Side::Left => left(),
            Side::Right => right(),
            Side::Both => left() && right(),
        }
    }

    /// Closedness of a sub-heap, evaluated at its least element (the verdict
    /// does not depend on the chosen base point).
    pub fn is_closed(&self, set: &ElemSet, e: Elem, side: Side) -> Result<bool> {
        if !set.contains(e) {
            return Err(Error::Precondition(format!("base point {e} is not in the subset")));
        }
        let least = set.min().expect("nonempty");
        Ok(self.is_closed_at(set, least, side))
    }

    /// Closedness evaluated at a given base point `e ∈ S`.
    pub fn is_closed_at(&self, set: &ElemSet, e: Elem, side: Side) -> bool {
        if !set.contains(e) || !self.is_sub_heap(set) {
            return false;
        }
        let left = || set.iter().all(|a| set.iter().all(|b| set.contains(self.lambda(e, a, b))));
        let right = || set.iter().all(|a| set.iter().all(|b| set.contains(self.rho(e, a, b))));
        match side {
            Side::Left => left(),
            Side::Right => right(),
            Side::Both => left() && right(),
        }
    }

    /// The ring `R(S;e)` on the retract of a closed sub-heap `S` at `e`.
    pub fn ring_from_truss(&self, set: &ElemSet, e: Elem) -> Result<RetractRing> {
        if !set.contains(e) {
            return Err(Error::Precondition(format!("base point {e} is not in the subset")));
        }
        if !self.is_sub_heap(set) {
            return Err(Error::Precondition("subset is not a sub-heap".into()));
        }
        let side = if self.is_closed_at(set, e, Side::Left) {
            Side::Left
        } else if self.is_closed_at(set, e, Side::Right) {
            Side::Right
        } else {
            return Err(Error::Precondition("subset is neither left- nor right-closed".into()));
        };
        let g = self.group();
        let n = self.size();
        let circ = |a: Elem, b: Elem| match side {
            Side::Right => self.heap.eval(self.rho(e, a, b), self.rho(e, a, e), e),
            _ => self.heap.eval(self.lambda(e, a, b), self.lambda(e, e, b), e),
        };
        let (ring, to_truss) = if set.len() == n {
            let gens = g.generators();
            let gp = gens
                .iter()
                .flat_map(|&u| gens.iter().map(move |&v| (u, v)))
                .map(|(u, v)| g.sub(circ(g.add(u, e), g.add(v, e)), e))
                .collect();
            let ring = Ring::new(g.clone(), gp)?;
            let to_truss: Vec<Elem> = g.elements().map(|u| g.add(u, e)).collect();
            (ring, to_truss)
        } else {
            let members: Vec<Elem> = set.iter().map(|s| g.sub(s, e)).collect::<std::collections::BTreeSet<_>>().into_iter().collect();
            let mut index = vec![usize::MAX; n];
            for (i, &m) in members.iter().enumerate() {
                index[m] = i;
            }
            let (ring, d) = Ring::from_tables(
                members.len(),
                |i, j| index[g.add(members[i], members[j])],
                |i, j| index[g.sub(circ(g.add(members[i], e), g.add(members[j], e)), e)],
            )?;
            let to_truss = ring.group().elements().map(|x| g.add(members[d.to_table[x]], e)).collect();
            (ring, to_truss)
        };
        let mut from_truss = vec![None; n];
        for (x, &a) in to_truss.iter().enumerate() {
            from_truss[a] = Some(x);
        }
        Ok(RetractRing {
            ring,
            e,
            side,
            to_truss,
            from_truss,
        })
    }

    pub fn structure_report(&self) -> StructureReport {
        let n = self.size();
        let absorbers = (0..n)
            .filter(|&e| (0..n).all(|a| self.mul(e, a) == e && self.mul(a, e) == e))
            .collect();
        let identity = (0..n).find(|&u| (0..n).all(|a| self.mul(u, a) == a && self.mul(a, u) == a));
        let commutative = (0..n).all(|a| (0..a).all(|b| self.mul(a, b) == self.mul(b, a)));
        let idempotents = (0..n).filter(|&a| self.mul(a, a) == a).count();
        StructureReport {
            absorbers,
            identity,
            commutative,
            idempotents,
        }
    }

    pub fn fingerprint(&self) -> TrussFingerprint {
        let r = self.structure_report();
        let n = self.size();
        let mut row_images: Vec<usize> = (0..n)
            .map(|a| ElemSet::from_elems(n, (0..n).map(|b| self.mul(a, b))).len())
            .collect();
        row_images.sort_unstable();
        let mut col_images: Vec<usize> = (0..n)
            .map(|a| ElemSet::from_elems(n, (0..n).map(|b| self.mul(b, a))).len())
            .collect();
        col_images.sort_unstable();
        TrussFingerprint {
            absorbers: r.absorbers.len(),
            identity: r.identity.is_some(),
            commutative: r.commutative,
            idempotents: r.idempotents,
            row_images,
            col_images,
        }
    }

    /// Whether a subgroup `I` of the retract at `e` is invariant.
    pub fn is_invariant_subgroup(&self, e: Elem, ideal: &ElemSet, side: Side) -> Result<bool> {
        if !ideal.contains(e) || !self.is_sub_heap(ideal) {
            return Err(Error::Precondition("subset is not a subgroup of the retract".into()));
        }
        let left = || ideal.iter().all(|i| ideal.contains(self.lambda(e, e, i)));
        let right = || ideal.iter().all(|i| ideal.contains(self.rho(e, i, e)));
        Ok(match side {
            Side::Left => left(),
            Side::Right => right(),
            Side::Both => left() && right(),
        })
    }

    /// Image of the truss under the bijection `psi` (given as a table).
    pub fn transport(&self, psi: &[Elem], target: &FinAbGroup) -> Truss {
        let n = self.size();
        let mut inv = vec![0; n];
        for (x, &y) in psi.iter().enumerate() {
            inv[y] = x;
        }
        let table = (0..n * n).map(|i| psi[self.mul(inv[i / n], inv[i % n])]).collect();
        Truss::new_unchecked(Heap::new(target.clone()), table)
    }

    /// Whether the bijection `psi` is multiplicative `self -> other`.
    pub fn is_multiplicative(&self, other: &Truss, psi: &[Elem]) -> bool {
        let n = self.size();
        (0..n).all(|a| (0..n).all(|b| psi[self.mul(a, b)] == other.mul(psi[a], psi[b])))
    }

    /// Content hash of the multiplication table and the carrier orders.
    pub fn table_key(&self) -> String {
        table_key(self.group().orders(), &self.table)
    }
}

/// Hex SHA-256 prefix identifying a table on a carrier.
pub fn table_key(orders: &[u64], table: &[Elem]) -> String {
    let mut h = Sha256::new();
    for &o in orders {
        h.update(o.to_le_bytes());
    }
    h.update([0xff]);
    for &x in table {
        h.update((x as u64).to_le_bytes());
    }
    hex::encode(&h.finalize()[..8])
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RetractRing {
    pub ring: Ring,
    pub e: Elem,
    /// The side of closedness used for the product.
    pub side: Side,
    /// Ring element -> truss element.
    pub to_truss: Vec<Elem>,
    /// Truss element -> ring element, for members of the sub-heap.
    pub from_truss: Vec<Option<Elem>>,
}

impl RetractRing {
    /// Product of two truss elements of the sub-heap, computed in the ring.
    pub fn mul_truss(&self, a: Elem, b: Elem) -> Option<Elem> {
        let x = self.from_truss[a]?;
        let y = self.from_truss[b]?;
        Some(self.to_truss[self.ring.mul(x, y)])
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct StructureReport {
    pub absorbers: Vec<Elem>,
    pub identity: Option<Elem>,
    pub commutative: bool,
    pub idempotents: usize,
}

#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct TrussFingerprint {
    pub absorbers: usize,
    pub identity: bool,
    pub commutative: bool,
    pub idempotents: usize,
    pub row_images: Vec<usize>,
    pub col_images: Vec<usize>,
}

/// A heap isomorphism `x -> Φ(x) + c`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct HeapIso {
    pub phi: AdditiveMap,
    pub shift: Elem,
}

impl HeapIso {
    pub fn identity(g: &FinAbGroup) -> Self {
        HeapIso {
            phi: AdditiveMap::identity(g),
            shift: 0,
        }
    }

    pub fn apply(&self, x: Elem) -> Elem {
        self.phi.target().add(self.phi.apply(x), self.shift)
    }

    pub fn table(&self) -> Vec<Elem> {
        self.phi.source().elements().map(|x| self.apply(x)).collect()
    }
}

/// Search for a truss isomorphism of the form `x -> Φ(x) + c`.
pub fn truss_iso_search(t: &Truss, u: &Truss) -> Option<HeapIso> {
    if t.size() != u.size() || t.fingerprint() != u.fingerprint() {
        return None;
    }
    let g = u.group();
    for phi in enumerate_isomorphisms(t.group(), g) {
        for c in g.elements() {
            let psi: Vec<Elem> = phi.table().iter().map(|&y| g.add(y, c)).collect();
            if t.is_multiplicative(u, &psi) {
                return Some(HeapIso { phi, shift: c });
            }
        }
    }
    None
}

/// Search for `d` such that `a -> a + d` is a truss isomorphism.
pub fn translational_iso_check(t: &Truss, u: &Truss) -> Result<Option<Elem>> {
    if t.heap() != u.heap() {
        return Err(Error::Precondition("trusses live on different heaps".into()));
    }
    let g = t.group();
    Ok(g.elements().find(|&d| {
        let psi: Vec<Elem> = g.elements().map(|a| g.add(a, d)).collect();
        t.is_multiplicative(u, &psi)
    }))
}

/// Lexicographically least row-major table over all heap automorphisms
/// `x -> Φ(x) + c` of the carrier.
pub fn canonical_table(t: &Truss, sym: &GroupSymmetry) -> Vec<Elem> {
    let g = t.group();
    let n = g.size();
    let mut best: Vec<Elem> = t.table().to_vec();
    let mut psi = vec![0; n];
    let mut inv = vec![0; n];
    for (phi, phi_inv) in sym.auts.iter().zip(&sym.inverses) {
        for c in 0..n {
            for x in 0..n {
                psi[x] = g.add(phi.apply(x), c);
                inv[x] = phi_inv.apply(g.sub(x, c));
            }
            // Compare the transported table against the current best lazily.
            let mut less = false;
            let mut idx = 0;
            while idx < n * n {
                let v = psi[t.mul(inv[idx / n], inv[idx % n])];
                if less {
                    best[idx] = v;
                } else if v < best[idx] {
                    less = true;
                    best[idx] = v;
                } else if v > best[idx] {
                    break;
                }
                idx += 1;
            }
        }
    }
    best
}

#[cfg(test)]
mod tests {
    use super::*;

    fn grp(orders: &[u64]) -> FinAbGroup {
        FinAbGroup::new(orders).unwrap()
    }

    #[test]
    fn validation_examples() {
        let z4 = grp(&[4]);
        assert!(Truss::from_fn(&z4, |a, b| (a + b) % 4).is_ok());
        assert!(Truss::from_fn(&grp(&[5]), |_, b| b).is_ok());
        let bad = Truss::from_fn(&z4, |a, b| (a * b + 1) % 4);
        assert_eq!(
            bad.unwrap_err(),
            Error::AxiomViolation {
                axiom: Axiom::Associativity,
                witness: [0, 0, 1]
            }
        );
    }

    #[test]
    fn distributivity_failure_is_reported() {
        // ab = a*b*b on Z_3 is associative but not affine in b.
        let z3 = grp(&[3]);
        let err = Truss::from_fn(&z3, |a, b| (a * b * b) % 3).unwrap_err();
        assert!(matches!(
            err,
            Error::AxiomViolation {
                axiom: Axiom::LeftDistributivity,
                ..
            }
        ));
    }

    #[test]
    fn induced_actions_on_z4() {
        let t = Truss::from_ring(&Ring::integers_mod(4).unwrap());
        assert_eq!(t.lambda(1, 2, 3), 1);
        assert!((0..4).all(|a| (0..4).all(|b| t.lambda(0, a, b) == a * b % 4)));
    }

    #[test]
    fn paragons_and_closed_sets() {
        let t = Truss::from_ring(&Ring::integers_mod(4).unwrap());
        let all = ElemSet::full(4);
        assert!(t.is_paragon(&all, Side::Both));
        assert!(t.is_paragon(&ElemSet::from_elems(4, [1, 3]), Side::Both));
        assert!(!t.is_paragon(&ElemSet::from_elems(4, [0, 1, 2]), Side::Left));
        assert!(t.is_closed(&ElemSet::from_elems(4, [0, 2]), 0, Side::Both).unwrap());
        assert!(t.is_closed(&ElemSet::from_elems(4, [0, 2]), 1, Side::Both).is_err());
    }

    #[test]
    fn retract_ring_on_z4_at_one() {
        let t = Truss::from_ring(&Ring::integers_mod(4).unwrap());
        let rr = t.ring_from_truss(&ElemSet::full(4), 1).unwrap();
        assert_eq!(rr.mul_truss(2, 3), Some(3));
        // closed form ab - ae - eb + e^2 + e
        for a in 0..4i64 {
            for b in 0..4i64 {
                let want = (a * b - a - b + 1 + 1).rem_euclid(4) as usize;
                assert_eq!(rr.mul_truss(a as usize, b as usize), Some(want));
            }
        }
    }

    #[test]
    fn structure_reports() {
        let p = 5;
        let z = grp(&[p]);
        let zero = Truss::from_fn(&z, |_, _| 0).unwrap().structure_report();
        assert_eq!((zero.absorbers, zero.identity), (vec![0], None));
        let sum = Truss::from_fn(&z, |a, b| (a + b) % 5).unwrap().structure_report();
        assert_eq!((sum.absorbers.len(), sum.identity), (0, Some(0)));
        let right = Truss::from_fn(&z, |_, b| b).unwrap().structure_report();
        assert_eq!((right.absorbers.len(), right.identity), (0, None));
    }

    #[test]
    fn iso_searches() {
        let z = grp(&[3]);
        let left = Truss::from_fn(&z, |a, _| a).unwrap();
        let right = Truss::from_fn(&z, |_, b| b).unwrap();
        assert!(truss_iso_search(&left, &left).is_some());
        assert!(truss_iso_search(&left, &right).is_none());
        assert_eq!(translational_iso_check(&left, &left).unwrap(), Some(0));
        assert_eq!(translational_iso_check(&left, &right).unwrap(), None);
    }

    #[test]
    fn canonical_tables_are_orbit_invariants() {
        let g = grp(&[2, 2]);
        let sym = GroupSymmetry::new(&g);
        let t = Truss::from_fn(&g, |a, b| g.add(a, b)).unwrap();
        let key = canonical_table(&t, &sym);
        for phi in &sym.auts {
            for c in g.elements() {
                let psi: Vec<Elem> = g.elements().map(|x| g.add(phi.apply(x), c)).collect();
                assert_eq!(canonical_table(&t.transport(&psi, &g), &sym), key);
            }
        }
    }
}
