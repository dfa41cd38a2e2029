//! Double operators on a ring, bimultiplications `Ω(R)`, homothetisms, inner
//! operators and the quotient `Ξ(R) = Ω(R)/R̄`.

use std::collections::HashMap;

use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::group::{count_homs, enumerate_endomorphisms, AdditiveMap, Decomposition, Elem, ElemSet, FinAbGroup};
use crate::ring::{ring_automorphisms, QuotientRing, Ring, RingHom};

/// Default cap on `|End(A)|²` when enumerating bimultiplications.
pub const DEFAULT_OMEGA_LIMIT: u128 = 1 << 20;

/// A pair of additive endomaps. `right_part` is `a -> σa`, `left_part` is
/// `a -> aσ`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct DoubleOperator {
    pub right_part: AdditiveMap,
    pub left_part: AdditiveMap,
}

impl DoubleOperator {
    pub fn new(right_part: AdditiveMap, left_part: AdditiveMap) -> Result<Self> {
        let g = right_part.source();
        if right_part.target() != g || left_part.source() != g || left_part.target() != g {
            return Err(Error::InvalidMap("double operator parts must be endomaps of one group".into()));
        }
        Ok(DoubleOperator { right_part, left_part })
    }

    pub fn from_images(group: &FinAbGroup, right: Vec<Elem>, left: Vec<Elem>) -> Result<Self> {
        Self::new(AdditiveMap::new(group, group, right)?, AdditiveMap::new(group, group, left)?)
    }

    pub fn group(&self) -> &FinAbGroup {
        self.right_part.source()
    }

    /// `σa`.
    pub fn left_of(&self, a: Elem) -> Elem {
        self.right_part.apply(a)
    }

    /// `aσ`.
    pub fn right_of(&self, a: Elem) -> Elem {
        self.left_part.apply(a)
    }

    pub fn zero(g: &FinAbGroup) -> Self {
        DoubleOperator {
            right_part: AdditiveMap::zero(g, g),
            left_part: AdditiveMap::zero(g, g),
        }
    }

    pub fn identity(g: &FinAbGroup) -> Self {
        DoubleOperator {
            right_part: AdditiveMap::identity(g),
            left_part: AdditiveMap::identity(g),
        }
    }

    /// The inner operator `ā`: `x -> ax` and `x -> xa`.
    pub fn inner(r: &Ring, a: Elem) -> Self {
        DoubleOperator {
            right_part: r.left_mult(a),
            left_part: r.right_mult(a),
        }
    }

    pub fn add(&self, other: &Self) -> Self {
        DoubleOperator {
            right_part: self.right_part.add(&other.right_part),
            left_part: self.left_part.add(&other.left_part),
        }
    }

    pub fn neg(&self) -> Self {
        DoubleOperator {
            right_part: self.right_part.neg(),
            left_part: self.left_part.neg(),
        }
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.add(&other.neg())
    }

    /// `στ`: right parts compose, left parts compose in the opposite order.
    pub fn mul(&self, other: &Self) -> Self {
        DoubleOperator {
            right_part: self.right_part.compose(&other.right_part),
            left_part: other.left_part.compose(&self.left_part),
        }
    }

    /// Hashable encoding by generator images.
    pub fn key(&self) -> (Vec<Elem>, Vec<Elem>) {
        (self.right_part.images().to_vec(), self.left_part.images().to_vec())
    }

    /// A generator pair violating the bimultiplication identities, if any.
    pub fn bimultiplication_witness(&self, r: &Ring) -> Option<(Elem, Elem)> {
        let gens = r.group().generators();
        for &a in &gens {
            for &b in &gens {
                let ab = r.mul(a, b);
                let ok = self.left_of(ab) == r.mul(self.left_of(a), b)
                    && self.right_of(ab) == r.mul(a, self.right_of(b))
                    && r.mul(a, self.left_of(b)) == r.mul(self.right_of(a), b);
                if !ok {
                    return Some((a, b));
                }
            }
        }
        None
    }

    pub fn is_bimultiplication(&self, r: &Ring) -> bool {
        self.bimultiplication_witness(r).is_none()
    }

    /// A generator violating `(σa)σ = σ(aσ)`, if any.
    pub fn self_permutable_witness(&self) -> Option<Elem> {
        self.group()
            .generators()
            .into_iter()
            .find(|&a| self.right_of(self.left_of(a)) != self.left_of(self.right_of(a)))
    }

    pub fn is_homothetism(&self, r: &Ring) -> bool {
        self.is_bimultiplication(r) && self.self_permutable_witness().is_none()
    }

    /// `a` with `ā = σ`, if `σ` is inner.
    pub fn inner_element(&self, r: &Ring) -> Option<Elem> {
        r.group().elements().find(|&a| &DoubleOperator::inner(r, a) == self)
    }
}

fn is_right_part(r: &Ring, f: &AdditiveMap, gens: &[Elem]) -> bool {
    gens.iter()
        .all(|&a| gens.iter().all(|&b| f.apply(r.mul(a, b)) == r.mul(f.apply(a), b)))
}

fn is_left_part(r: &Ring, g: &AdditiveMap, gens: &[Elem]) -> bool {
    gens.iter()
        .all(|&a| gens.iter().all(|&b| g.apply(r.mul(a, b)) == r.mul(a, g.apply(b))))
}

/// All bimultiplications, ordered lexicographically by
/// (right-part images, left-part images). The zero operator comes first.
pub fn bimultiplications(r: &Ring, limit: u128) -> Result<Vec<DoubleOperator>> {
    let ends = count_homs(r.group(), r.group());
    let needed = ends.saturating_mul(ends);
    if needed > limit {
        return Err(Error::Resource {
            what: "bimultiplication search".into(),
            needed,
            limit,
        });
    }
    let gens = r.group().generators();
    let all = enumerate_endomorphisms(r.group());
    let rights: Vec<&AdditiveMap> = all.iter().filter(|f| is_right_part(r, f, &gens)).collect();
    let lefts: Vec<&AdditiveMap> = all.iter().filter(|g| is_left_part(r, g, &gens)).collect();
    let gens = &gens;
    let lefts = &lefts;
    let out = rights
        .par_iter()
        .flat_map_iter(|&f| {
            lefts.iter().filter_map(move |&g| {
                let ok = gens
                    .iter()
                    .all(|&a| gens.iter().all(|&b| r.mul(a, f.apply(b)) == r.mul(g.apply(a), b)));
                ok.then(|| DoubleOperator {
                    right_part: f.clone(),
                    left_part: g.clone(),
                })
            })
        })
        .collect();
    Ok(out)
}

/// `Ω(R)` as a ring, with the inner embedding and the quotient `Ξ(R)`.
#[derive(Clone, Debug)]
pub struct OmegaRing {
    pub base: Ring,
    /// Operators in lexicographic order; index 0 is the zero operator.
    pub operators: Vec<DoubleOperator>,
    index: HashMap<(Vec<Elem>, Vec<Elem>), usize>,
    pub ring: Ring,
    /// Ring element <-> operator index.
    pub labels: Decomposition,
    /// `a -> ā` as ring elements.
    pub beta: Vec<Elem>,
    /// The ideal `R̄` of inner operators, as ring elements.
    pub inner: ElemSet,
    /// `Ξ(R)` with projection `ξ`.
    pub xi: QuotientRing,
    /// For each element of `Ξ(R)`, the index of the lexicographically least
    /// operator in its coset.
    pub xi_reps: Vec<usize>,
}

impl OmegaRing {
    pub fn new(r: &Ring, limit: u128) -> Result<OmegaRing> {
        let operators = bimultiplications(r, limit)?;
        let index: HashMap<_, _> = operators.iter().enumerate().map(|(i, op)| (op.key(), i)).collect();
        let lookup = |op: DoubleOperator| index[&op.key()];
        let (ring, labels) = Ring::from_tables(
            operators.len(),
            |i, j| lookup(operators[i].add(&operators[j])),
            |i, j| lookup(operators[i].mul(&operators[j])),
        )?;
        let beta: Vec<Elem> = r
            .group()
            .elements()
            .map(|a| labels.from_table[lookup(DoubleOperator::inner(r, a))])
            .collect();
        let inner = ElemSet::from_elems(ring.size(), beta.iter().copied());
        let xi = ring.quotient(&inner)?;
        let mut xi_reps = vec![usize::MAX; xi.ring.size()];
        for (op_idx, _) in operators.iter().enumerate() {
            let q = xi.projection.apply(labels.from_table[op_idx]);
            if xi_reps[q] == usize::MAX {
                xi_reps[q] = op_idx;
            }
        }
        Ok(OmegaRing {
            base: r.clone(),
            operators,
            index,
            ring,
            labels,
            beta,
            inner,
            xi,
            xi_reps,
        })
    }

    pub fn size(&self) -> usize {
        self.operators.len()
    }

    pub fn operator(&self, x: Elem) -> &DoubleOperator {
        &self.operators[self.labels.to_table[x]]
    }

    /// Ring element of a bimultiplication.
    pub fn element_of(&self, op: &DoubleOperator) -> Option<Elem> {
        self.index.get(&op.key()).map(|&i| self.labels.from_table[i])
    }

    /// `ξ(σ)`.
    pub fn project(&self, op: &DoubleOperator) -> Option<Elem> {
        self.element_of(op).map(|x| self.xi.projection.apply(x))
    }

    /// Least operator in the coset of an element of `Ξ(R)`.
    pub fn xi_representative(&self, q: Elem) -> &DoubleOperator {
        &self.operators[self.xi_reps[q]]
    }

    pub fn identity(&self) -> Elem {
        self.element_of(&DoubleOperator::identity(self.base.group()))
            .expect("identity is a bimultiplication")
    }

    /// `Φ◇` on `Ξ(R)`.
    pub fn phi_diamond(&self, phi: &RingHom, q: Elem) -> Result<Elem> {
        let lifted = phi_star(phi, self.xi_representative(q))?;
        self.project(&lifted)
            .ok_or_else(|| Error::Precondition("transported operator is not a bimultiplication".into()))
    }
}

fn check_automorphism(phi: &RingHom, g: &FinAbGroup) -> Result<AdditiveMap> {
    if phi.source() != phi.target() || phi.source().group() != g {
        return Err(Error::Precondition("Φ must be a ring automorphism of the base ring".into()));
    }
    phi.map()
        .inverse()
        .ok_or_else(|| Error::Precondition("Φ is not bijective".into()))
}

/// `Φ*(σ)`: `a -> Φ(σΦ⁻¹(a))` and `a -> Φ(Φ⁻¹(a)σ)`.
pub fn phi_star(phi: &RingHom, sigma: &DoubleOperator) -> Result<DoubleOperator> {
    let inv = check_automorphism(phi, sigma.group())?;
    let m = phi.map();
    Ok(DoubleOperator {
        right_part: m.compose(&sigma.right_part).compose(&inv),
        left_part: m.compose(&sigma.left_part).compose(&inv),
    })
}

/// A ring automorphism `Φ` with `σ' - Φ*(σ)` inner, if one exists.
pub fn outer_equivalent(r: &Ring, sigma: &DoubleOperator, sigma2: &DoubleOperator) -> Option<RingHom> {
    let inner: std::collections::HashSet<_> = r
        .group()
        .elements()
        .map(|a| DoubleOperator::inner(r, a).key())
        .collect();
    ring_automorphisms(r).into_iter().find(|phi| {
        let moved = phi_star(phi, sigma).expect("automorphism");
        inner.contains(&sigma2.sub(&moved).key())
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::catalog::named_ring;

    fn zero_ring(orders: &[u64]) -> Ring {
        Ring::zero_ring(FinAbGroup::new(orders).unwrap())
    }

    fn proj(g: &FinAbGroup, i: usize) -> AdditiveMap {
        let images = (0..g.rank()).map(|j| if i == j { g.generator(j) } else { 0 }).collect();
        AdditiveMap::new(g, g, images).unwrap()
    }

    #[test]
    fn omega_sizes() {
        for p in [2u64, 3] {
            let zp = Ring::integers_mod(p).unwrap();
            assert_eq!(OmegaRing::new(&zp, DEFAULT_OMEGA_LIMIT).unwrap().size(), p as usize);
            let zero = zero_ring(&[p]);
            let om = OmegaRing::new(&zero, DEFAULT_OMEGA_LIMIT).unwrap();
            assert_eq!(om.size(), (p * p) as usize);
            assert_eq!(om.xi.ring.size(), (p * p) as usize);
            let row = named_ring("row", p).unwrap();
            let om = OmegaRing::new(&row, DEFAULT_OMEGA_LIMIT).unwrap();
            assert_eq!(om.xi.ring.size(), p as usize);
        }
    }

    #[test]
    fn homothetism_examples() {
        let r = zero_ring(&[2, 2]);
        let g = r.group().clone();
        let p1 = proj(&g, 0);
        let p2 = proj(&g, 1);
        assert!(DoubleOperator::new(p1.clone(), p2).unwrap().is_homothetism(&r));
        let swap = AdditiveMap::new(&g, &g, vec![1, 2]).unwrap();
        assert!(!DoubleOperator::new(swap, p1).unwrap().is_homothetism(&r));
    }

    #[test]
    fn phi_star_swaps_projections() {
        let r = zero_ring(&[2, 2]);
        let g = r.group().clone();
        let swap = RingHom::new(&r, &r, AdditiveMap::new(&g, &g, vec![1, 2]).unwrap()).unwrap();
        let s1 = DoubleOperator::new(proj(&g, 0), proj(&g, 0)).unwrap();
        let s2 = DoubleOperator::new(proj(&g, 1), proj(&g, 1)).unwrap();
        assert_eq!(phi_star(&swap, &s1).unwrap(), s2);
        assert!(outer_equivalent(&r, &s1, &s2).is_some());
        assert!(outer_equivalent(&r, &s1, &DoubleOperator::identity(&g)).is_none());
    }

    #[test]
    fn resource_guard() {
        let r = zero_ring(&[2, 2, 2, 2, 2, 2]);
        assert!(matches!(bimultiplications(&r, DEFAULT_OMEGA_LIMIT), Err(Error::Resource { .. })));
    }
}
