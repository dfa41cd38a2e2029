//! Homothetic data `(σ, s)`, the extension rings `R(σ,s)` and `Rᶜ(σ,s)`, the
//! trusses `T(σ,s)`, and the `(Φ, v)` transformation calculus.

use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Zero};

use crate::bimult::{phi_star, DoubleOperator};
use crate::error::{DatumCondition, Error, Result};
use crate::group::{AdditiveMap, Elem, ElemSet, FinAbGroup};
use crate::heap::Heap;
use crate::ring::{ring_iso_search, Ring, RingHom};
use crate::truss::{translational_iso_check, truss_iso_search, Truss};

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct HomotheticDatum {
    ring: Ring,
    sigma: DoubleOperator,
    s: Elem,
}

/// Check the four datum conditions in order and report the first failure.
pub fn validate_datum(ring: &Ring, sigma: &DoubleOperator, s: Elem) -> Result<HomotheticDatum> {
    if sigma.group() != ring.group() {
        return Err(Error::Precondition("operator and ring live on different groups".into()));
    }
    if !ring.group().contains(s) {
        return Err(Error::InvalidElement(vec![s as i64]));
    }
    if let Some((a, b)) = sigma.bimultiplication_witness(ring) {
        return Err(Error::Datum {
            condition: DatumCondition::Bimultiplication,
            witness: vec![a, b],
        });
    }
    if let Some(a) = sigma.self_permutable_witness() {
        return Err(Error::Datum {
            condition: DatumCondition::SelfPermutable,
            witness: vec![a],
        });
    }
    if sigma.left_of(s) != sigma.right_of(s) {
        return Err(Error::Datum {
            condition: DatumCondition::Normalizing,
            witness: vec![s],
        });
    }
    let square = sigma.mul(sigma);
    let target = sigma.add(&DoubleOperator::inner(ring, s));
    if let Some(g) = ring
        .group()
        .generators()
        .into_iter()
        .find(|&g| square.left_of(g) != target.left_of(g) || square.right_of(g) != target.right_of(g))
    {
        return Err(Error::Datum {
            condition: DatumCondition::QuasiIdempotent,
            witness: vec![g],
        });
    }
    Ok(HomotheticDatum {
        ring: ring.clone(),
        sigma: sigma.clone(),
        s,
    })
}

impl HomotheticDatum {
    pub fn new(ring: &Ring, sigma: DoubleOperator, s: Elem) -> Result<Self> {
        validate_datum(ring, &sigma, s)
    }

    pub(crate) fn new_unchecked(ring: &Ring, sigma: DoubleOperator, s: Elem) -> Self {
        HomotheticDatum {
            ring: ring.clone(),
            sigma,
            s,
        }
    }

    /// `(0, 0)`.
    pub fn zero(ring: &Ring) -> Self {
        Self::new_unchecked(ring, DoubleOperator::zero(ring.group()), 0)
    }

    /// `(id, 0)`.
    pub fn identity(ring: &Ring) -> Self {
        Self::new_unchecked(ring, DoubleOperator::identity(ring.group()), 0)
    }

    pub fn ring(&self) -> &Ring {
        &self.ring
    }

    pub fn sigma(&self) -> &DoubleOperator {
        &self.sigma
    }

    pub fn s(&self) -> Elem {
        self.s
    }

    /// Encoding used for ordering data: right images, left images, `s`.
    pub fn key(&self) -> (Vec<Elem>, Vec<Elem>, Elem) {
        let (r, l) = self.sigma.key();
        (r, l, self.s)
    }

    /// `T(σ,s)`: the heap of `R` with `a⋄b = ab + aσ + σb + s`.
    pub fn truss(&self) -> Truss {
        truss_of_datum(self)
    }
}

pub fn truss_of_datum(d: &HomotheticDatum) -> Truss {
    let r = &d.ring;
    let g = r.group();
    let n = r.size();
    let table = (0..n * n)
        .map(|i| {
            let (a, b) = (i / n, i % n);
            g.sum([r.mul(a, b), d.sigma.right_of(a), d.sigma.left_of(b), d.s])
        })
        .collect();
    Truss::new_unchecked(Heap::new(g.clone()), table)
}

/// An element `(a, k)` of `R x Z`.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct IntElem {
    pub a: Elem,
    pub k: BigInt,
}

impl fmt::Debug for IntElem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({}, {})", self.a, self.k)
    }
}

impl IntElem {
    pub fn new(a: Elem, k: impl Into<BigInt>) -> Self {
        IntElem { a, k: k.into() }
    }
}

/// Common interface of extensions `0 -> R -> S -> Z (or Z_N) -> 0`.
pub trait IntegerQuotient {
    type Elem: Clone + PartialEq + fmt::Debug;
    fn base(&self) -> &Ring;
    fn add(&self, x: &Self::Elem, y: &Self::Elem) -> Self::Elem;
    fn neg(&self, x: &Self::Elem) -> Self::Elem;
    fn mul(&self, x: &Self::Elem, y: &Self::Elem) -> Self::Elem;
    fn scale(&self, n: &BigInt, x: &Self::Elem) -> Self::Elem;
    /// `ψ_R`.
    fn inject(&self, a: Elem) -> Self::Elem;
    /// Inverse of the injection on its image.
    fn retract(&self, x: &Self::Elem) -> Option<Elem>;
    /// `φ_Z`, reduced into `0..N` when the quotient is `Z_N`.
    fn quotient(&self, x: &Self::Elem) -> BigInt;
    /// `N` for a quotient `Z_N`, `None` for `Z`.
    fn modulus(&self) -> Option<u64>;

    fn sub(&self, x: &Self::Elem, y: &Self::Elem) -> Self::Elem {
        self.add(x, &self.neg(y))
    }
}

/// `R(σ,s)`: the carrier `R x Z` with
/// `(a,k)(b,l) = (ab + l·aσ + k·σb + kl·s, kl)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct IntegralExtensionRing {
    datum: HomotheticDatum,
}

impl IntegralExtensionRing {
    pub fn new(datum: &HomotheticDatum) -> Self {
        IntegralExtensionRing { datum: datum.clone() }
    }

    pub fn datum(&self) -> &HomotheticDatum {
        &self.datum
    }

    pub fn zero(&self) -> IntElem {
        IntElem::new(0, 0)
    }

    /// Check associativity and both distributive laws for all ring elements
    /// and all integer slots in `window`. The laws are affine in each integer
    /// slot, so a window with at least two points per slot is decisive.
    pub fn check_laws(&self, window: std::ops::RangeInclusive<i64>) -> Result<()> {
        let n = self.datum.ring.size();
        let ks: Vec<i64> = window.collect();
        let elems: Vec<IntElem> = (0..n)
            .flat_map(|a| ks.iter().map(move |&k| IntElem::new(a, k)))
            .collect();
        for x in &elems {
            for y in &elems {
                let xy = self.mul(x, y);
                for z in &elems {
                    if self.mul(&xy, z) != self.mul(x, &self.mul(y, z)) {
                        return Err(Error::Precondition(format!("associativity fails at {x:?} {y:?} {z:?}")));
                    }
                    if self.mul(x, &self.add(y, z)) != self.add(&xy, &self.mul(x, z))
                        || self.mul(&self.add(y, z), x) != self.add(&self.mul(y, x), &self.mul(z, x))
                    {
                        return Err(Error::Precondition(format!("distributivity fails at {x:?} {y:?} {z:?}")));
                    }
                }
            }
        }
        Ok(())
    }
}

impl IntegerQuotient for IntegralExtensionRing {
    type Elem = IntElem;

    fn base(&self) -> &Ring {
        &self.datum.ring
    }

    fn add(&self, x: &IntElem, y: &IntElem) -> IntElem {
        IntElem {
            a: self.datum.ring.add(x.a, y.a),
            k: &x.k + &y.k,
        }
    }

    fn neg(&self, x: &IntElem) -> IntElem {
        IntElem {
            a: self.datum.ring.neg(x.a),
            k: -&x.k,
        }
    }

    fn mul(&self, x: &IntElem, y: &IntElem) -> IntElem {
        let d = &self.datum;
        let g = d.ring.group();
        let a = g.sum([
            d.ring.mul(x.a, y.a),
            g.scale_big(&y.k, d.sigma.right_of(x.a)),
            g.scale_big(&x.k, d.sigma.left_of(y.a)),
            g.scale_big(&(&x.k * &y.k), d.s),
        ]);
        IntElem { a, k: &x.k * &y.k }
    }

    fn scale(&self, n: &BigInt, x: &IntElem) -> IntElem {
        IntElem {
            a: self.datum.ring.group().scale_big(n, x.a),
            k: n * &x.k,
        }
    }

    fn inject(&self, a: Elem) -> IntElem {
        IntElem::new(a, 0)
    }

    fn retract(&self, x: &IntElem) -> Option<Elem> {
        x.k.is_zero().then_some(x.a)
    }

    fn quotient(&self, x: &IntElem) -> BigInt {
        x.k.clone()
    }

    fn modulus(&self) -> Option<u64> {
        None
    }
}

/// `Rᶜ(σ,s)`: the quotient of `R(σ,s)` by `{0} x NZ`, `N` the exponent of
/// `(R,+)`. The element `(a, k mod N)` has index `a * N + k`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CyclicExtensionRing {
    datum: HomotheticDatum,
    modulus: u64,
    ring: Ring,
}

impl CyclicExtensionRing {
    pub fn new(datum: &HomotheticDatum) -> Result<Self> {
        let base = &datum.ring;
        let n = base.group().exponent();
        if n == 1 {
            return Ok(CyclicExtensionRing {
                datum: datum.clone(),
                modulus: 1,
                ring: Ring::zero_ring(FinAbGroup::trivial()),
            });
        }
        let group = base.group().product(&FinAbGroup::new(&[n])?)?;
        let k = base.group().rank();
        let kk = k + 1;
        let nn = n as usize;
        let lift = |a: Elem, m: usize| a * nn + m;
        let gens = base.group().generators();
        let mut gp = vec![0; kk * kk];
        for i in 0..k {
            for j in 0..k {
                gp[i * kk + j] = lift(base.mul(gens[i], gens[j]), 0);
            }
            gp[i * kk + k] = lift(datum.sigma.right_of(gens[i]), 0);
            gp[k * kk + i] = lift(datum.sigma.left_of(gens[i]), 0);
        }
        gp[k * kk + k] = lift(datum.s, 1);
        let ring = Ring::new(group, gp)?;
        Ok(CyclicExtensionRing {
            datum: datum.clone(),
            modulus: n,
            ring,
        })
    }

    pub fn datum(&self) -> &HomotheticDatum {
        &self.datum
    }

    pub fn ring(&self) -> &Ring {
        &self.ring
    }

    pub fn modulus(&self) -> u64 {
        self.modulus
    }

    pub fn elem(&self, a: Elem, k: i64) -> Elem {
        if self.modulus == 1 {
            return 0;
        }
        a * self.modulus as usize + k.rem_euclid(self.modulus as i64) as usize
    }

    pub fn split(&self, x: Elem) -> (Elem, u64) {
        if self.modulus == 1 {
            return (0, 0);
        }
        (x / self.modulus as usize, (x % self.modulus as usize) as u64)
    }

    /// The exact sequence `0 -> R -> Rᶜ(σ,s) -> Z_N -> 0`.
    pub fn extension(&self) -> Result<RingExtension> {
        let base = &self.datum.ring;
        let zn = Ring::integers_mod(self.modulus)?;
        let inj = AdditiveMap::from_fn(base.group(), self.ring.group(), |a| self.elem(a, 0))?;
        let proj = AdditiveMap::from_fn(self.ring.group(), zn.group(), |x| self.split(x).1 as Elem)?;
        Ok(RingExtension {
            base: base.clone(),
            total: self.ring.clone(),
            injection: RingHom::new(base, &self.ring, inj)?,
            projection: RingHom::new(&self.ring, &zn, proj)?,
            modulus: self.modulus,
        })
    }
}

/// A finite extension `0 -> R -> S -> Z_N -> 0`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RingExtension {
    pub base: Ring,
    pub total: Ring,
    pub injection: RingHom,
    pub projection: RingHom,
    pub modulus: u64,
}

impl RingExtension {
    pub fn new(injection: RingHom, projection: RingHom, modulus: u64) -> Result<Self> {
        if injection.target() != projection.source() {
            return Err(Error::Precondition("injection and projection do not compose".into()));
        }
        let ext = RingExtension {
            base: injection.source().clone(),
            total: injection.target().clone(),
            injection,
            projection,
            modulus,
        };
        if !ext.is_exact() {
            return Err(Error::Precondition("sequence is not exact".into()));
        }
        Ok(ext)
    }

    pub fn is_exact(&self) -> bool {
        let image = self.injection.map().image();
        self.injection.map().kernel_size() == 1
            && self.projection.map().image().len() == self.projection.target().size()
            && self.projection.kernel() == image
    }
}

impl IntegerQuotient for RingExtension {
    type Elem = Elem;

    fn base(&self) -> &Ring {
        &self.base
    }

    fn add(&self, x: &Elem, y: &Elem) -> Elem {
        self.total.add(*x, *y)
    }

    fn neg(&self, x: &Elem) -> Elem {
        self.total.neg(*x)
    }

    fn mul(&self, x: &Elem, y: &Elem) -> Elem {
        self.total.mul(*x, *y)
    }

    fn scale(&self, n: &BigInt, x: &Elem) -> Elem {
        self.total.group().scale_big(n, *x)
    }

    fn inject(&self, a: Elem) -> Elem {
        self.injection.apply(a)
    }

    fn retract(&self, x: &Elem) -> Option<Elem> {
        self.base.group().elements().find(|&a| self.injection.apply(a) == *x)
    }

    fn quotient(&self, x: &Elem) -> BigInt {
        let z = self.projection.apply(*x);
        // The target is Z_N presented on a single cyclic factor.
        BigInt::from(self.projection.target().group().digits(z).first().copied().unwrap_or(0))
    }

    fn modulus(&self) -> Option<u64> {
        Some(self.modulus)
    }
}

/// `Θ: (a, n) -> ψ_R(a) + n q`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ExtensionComparison<E> {
    pub q: E,
}

impl<E: Clone + PartialEq + fmt::Debug> ExtensionComparison<E> {
    pub fn apply<X: IntegerQuotient<Elem = E>>(&self, ext: &X, x: &IntElem) -> E {
        ext.add(&ext.inject(x.a), &ext.scale(&x.k, &self.q))
    }
}

/// Extract the homothetic datum of an extension from a lift `q` of `1`.
pub fn datum_from_extension<X: IntegerQuotient>(
    ext: &X,
    q: &X::Elem,
) -> Result<(HomotheticDatum, ExtensionComparison<X::Elem>)> {
    let one = match ext.modulus() {
        Some(n) => BigInt::one().mod_floor(&BigInt::from(n)),
        None => BigInt::one(),
    };
    if ext.quotient(q) != one {
        return Err(Error::Precondition("q does not map to 1".into()));
    }
    let r = ext.base();
    let zeta = |x: X::Elem| {
        ext.retract(&x)
            .ok_or_else(|| Error::Precondition("sequence is not exact at the middle term".into()))
    };
    let gens = r.group().generators();
    let right = gens
        .iter()
        .map(|&g| zeta(ext.mul(q, &ext.inject(g))))
        .collect::<Result<Vec<_>>>()?;
    let left = gens
        .iter()
        .map(|&g| zeta(ext.mul(&ext.inject(g), q)))
        .collect::<Result<Vec<_>>>()?;
    let s = zeta(ext.sub(&ext.mul(q, q), q))?;
    let sigma = DoubleOperator::from_images(r.group(), right, left)?;
    let datum = validate_datum(r, &sigma, s)?;
    Ok((datum, ExtensionComparison { q: q.clone() }))
}

/// `(σ', s')` with `s' = Φ(s + v + v² − vσ − σv)` and `σ' = Φ*(σ − v̄)`.
pub fn transform_datum(d: &HomotheticDatum, phi: &RingHom, v: Elem) -> Result<HomotheticDatum> {
    let r = &d.ring;
    if phi.source() != r || phi.target() != r || !phi.is_bijective() {
        return Err(Error::Precondition("Φ must be a ring automorphism of the base ring".into()));
    }
    let g = r.group();
    let inner = g.sum([d.s, v, r.mul(v, v)]);
    let s2 = phi.apply(g.sub(g.sub(inner, d.sigma.right_of(v)), d.sigma.left_of(v)));
    let sigma2 = phi_star(phi, &d.sigma.sub(&DoubleOperator::inner(r, v)))?;
    validate_datum(r, &sigma2, s2)
}

/// `Φ_v: a -> Φ(a + v)` as a table.
pub fn transform_map(phi: &RingHom, v: Elem) -> Vec<Elem> {
    let g = phi.source().group();
    g.elements().map(|a| phi.apply(g.add(a, v))).collect()
}

/// Recover `(Φ, v)` from a truss isomorphism `Ψ: T(σ,s) -> T(σ',s')`.
pub fn recover_iso_data(d: &HomotheticDatum, d2: &HomotheticDatum, psi: &[Elem]) -> Result<(RingHom, Elem)> {
    let r = &d.ring;
    let g = r.group();
    if d2.ring != *r || psi.len() != g.size() {
        return Err(Error::Precondition("Ψ does not map between the given trusses".into()));
    }
    let img = ElemSet::from_elems(g.size(), psi.iter().copied());
    if img.len() != g.size() || !d.truss().is_multiplicative(&d2.truss(), psi) {
        return Err(Error::Precondition("Ψ is not a truss isomorphism".into()));
    }
    let phi = AdditiveMap::from_fn(g, g, |a| g.sub(psi[a], psi[0]))
        .map_err(|_| Error::Precondition("Ψ is not a heap morphism".into()))?;
    let phi = RingHom::new(r, r, phi)?;
    let pre_zero = psi.iter().position(|&y| y == 0).expect("bijective");
    Ok((phi, g.neg(pre_zero)))
}

#[derive(Clone, Debug)]
pub struct EquivalenceVerdict {
    pub weakly_equivalent: bool,
    pub equivalent: bool,
    /// `(Φ, v)` witnessing weak equivalence.
    pub weak_witness: Option<(RingHom, Elem)>,
    /// Shift `d` witnessing equivalence.
    pub translation: Option<Elem>,
}

impl EquivalenceVerdict {
    /// `Θ(a, k) = (Φ(a) + kΦ(v), k)` for the weak-equivalence witness.
    pub fn theta(&self, a: Elem, k: i64) -> Option<(Elem, i64)> {
        let (phi, v) = self.weak_witness.as_ref()?;
        let g = phi.target().group();
        Some((g.add(phi.apply(a), g.scale(k, phi.apply(*v))), k))
    }
}

/// Decide weak equivalence and equivalence of the extensions of two data on
/// the same ring, through isomorphisms of the associated trusses.
pub fn equivalence_check(d: &HomotheticDatum, d2: &HomotheticDatum) -> Result<EquivalenceVerdict> {
    if d.ring != d2.ring {
        return Err(Error::Precondition("data live on different rings".into()));
    }
    let t = d.truss();
    let t2 = d2.truss();
    let weak_witness = match truss_iso_search(&t, &t2) {
        Some(iso) => Some(recover_iso_data(d, d2, &iso.table())?),
        None => None,
    };
    let translation = translational_iso_check(&t, &t2)?;
    Ok(EquivalenceVerdict {
        weakly_equivalent: weak_witness.is_some(),
        equivalent: translation.is_some(),
        weak_witness,
        translation,
    })
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, serde::Serialize)]
pub struct Prediction {
    pub predicted: bool,
    pub observed: bool,
}

impl Prediction {
    pub fn agrees(&self) -> bool {
        self.predicted == self.observed
    }
}

/// Predicted and observed properties of `T(σ,s)`.
#[derive(Clone, Debug, PartialEq, Eq, serde::Serialize)]
pub struct DatumTrussReport {
    pub commutative: Prediction,
    pub absorber: Prediction,
    /// When an absorber `e` exists: whether `R(T;e) ≅ R`.
    pub absorber_ring_matches: Option<bool>,
    pub identity: Prediction,
    /// When `R` is unital: whether `T(σ,s) ≅ T(R)`.
    pub unital_collapse: Option<bool>,
}

impl DatumTrussReport {
    pub fn consistent(&self) -> bool {
        self.commutative.agrees()
            && self.absorber.agrees()
            && self.identity.agrees()
            && self.absorber_ring_matches != Some(false)
            && self.unital_collapse != Some(false)
    }
}

pub fn analyze_datum_truss(d: &HomotheticDatum) -> Result<DatumTrussReport> {
    let r = &d.ring;
    let t = d.truss();
    let report = t.structure_report();
    let commutative = Prediction {
        predicted: r.is_commutative() && d.sigma.right_part == d.sigma.left_part,
        observed: report.commutative,
    };
    let absorber = Prediction {
        predicted: d.sigma.inner_element(r).is_some(),
        observed: !report.absorbers.is_empty(),
    };
    let absorber_ring_matches = match report.absorbers.first() {
        Some(&e) => {
            let rr = t.ring_from_truss(&ElemSet::full(t.size()), e)?;
            Some(ring_iso_search(&rr.ring, r).is_some())
        }
        None => None,
    };
    let unit_truss = HomotheticDatum::identity(r).truss();
    let identity = Prediction {
        predicted: truss_iso_search(&t, &unit_truss).is_some(),
        observed: report.identity.is_some(),
    };
    let unital_collapse = r
        .identity()
        .map(|_| truss_iso_search(&t, &Truss::from_ring(r)).is_some());
    Ok(DatumTrussReport {
        commutative,
        absorber,
        absorber_ring_matches,
        identity,
        unital_collapse,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ring::ring_automorphisms;

    fn z(n: u64) -> Ring {
        Ring::integers_mod(n).unwrap()
    }

    #[test]
    fn inner_data_need_matching_s() {
        let r = z(4);
        let sigma = DoubleOperator::inner(&r, 2);
        assert!(validate_datum(&r, &sigma, 2).is_ok());
        let err = validate_datum(&r, &sigma, 1).unwrap_err();
        assert!(matches!(
            err,
            Error::Datum {
                condition: DatumCondition::QuasiIdempotent,
                ..
            }
        ));
        assert!(validate_datum(&r, &DoubleOperator::zero(r.group()), 0).is_ok());
        assert!(validate_datum(&r, &DoubleOperator::identity(r.group()), 0).is_ok());
    }

    #[test]
    fn integral_products() {
        let zero = Ring::zero_ring(FinAbGroup::new(&[2]).unwrap());
        let d = HomotheticDatum::identity(&zero);
        let ext = IntegralExtensionRing::new(&d);
        let x = IntElem::new(1, 1);
        assert_eq!(ext.mul(&x, &x), IntElem::new(0, 1));
        let d = validate_datum(&z(4), &DoubleOperator::inner(&z(4), 2), 2).unwrap();
        let ext = IntegralExtensionRing::new(&d);
        let u = IntElem::new(0, 1);
        assert_eq!(ext.mul(&u, &u), IntElem::new(2, 1));
        ext.check_laws(-2..=2).unwrap();
    }

    #[test]
    fn truss_of_datum_examples() {
        let zero = Ring::zero_ring(FinAbGroup::new(&[3]).unwrap());
        let t = HomotheticDatum::identity(&zero).truss();
        assert!((0..3).all(|a| (0..3).all(|b| t.mul(a, b) == (a + b) % 3)));
        let f = z(5);
        let t = HomotheticDatum::identity(&f).truss();
        assert!((0..5).all(|a| (0..5).all(|b| t.mul(a, b) == (a * b + a + b) % 5)));
        assert_eq!(HomotheticDatum::zero(&f).truss(), Truss::from_ring(&f));
    }

    #[test]
    fn cyclic_extension_is_exact() {
        let d = validate_datum(&z(4), &DoubleOperator::inner(&z(4), 2), 2).unwrap();
        let c = CyclicExtensionRing::new(&d).unwrap();
        assert_eq!(c.ring().size(), 16);
        assert!(c.extension().unwrap().is_exact());
        let u = c.elem(0, 1);
        assert_eq!(c.ring().mul(u, u), c.elem(2, 1));
    }

    #[test]
    fn round_trip_through_extension() {
        let d = validate_datum(&z(4), &DoubleOperator::inner(&z(4), 2), 2).unwrap();
        let ext = IntegralExtensionRing::new(&d);
        let (back, _) = datum_from_extension(&ext, &IntElem::new(0, 1)).unwrap();
        assert_eq!(back, d);
        let (shifted, theta) = datum_from_extension(&ext, &IntElem::new(1, 1)).unwrap();
        // q² - q = (s + v² + vσ + σv - v, 0) with v = 1
        let r = z(4);
        let want_sigma = d.sigma().add(&DoubleOperator::inner(&r, 1));
        assert_eq!(shifted.sigma(), &want_sigma);
        assert_eq!(shifted.s(), (2 + 1 + 2 + 2 - 1) % 4);
        assert!(datum_from_extension(&ext, &IntElem::new(0, 2)).is_err());
        let x = IntElem::new(3, 2);
        assert_eq!(theta.apply(&ext, &x), IntElem::new((3 + 2) % 4, 2));
    }

    #[test]
    fn integers_over_the_zero_ring() {
        let trivial = Ring::zero_ring(FinAbGroup::trivial());
        let ext = IntegralExtensionRing::new(&HomotheticDatum::zero(&trivial));
        let (d, _) = datum_from_extension(&ext, &IntElem::new(0, 1)).unwrap();
        assert_eq!(d, HomotheticDatum::zero(&trivial));
    }

    #[test]
    fn transform_examples() {
        let f = z(5);
        let d = validate_datum(&f, &DoubleOperator::inner(&f, 3), 1).unwrap();
        let id = RingHom::identity(&f);
        let d2 = transform_datum(&d, &id, 3).unwrap();
        assert_eq!(d2, HomotheticDatum::zero(&f));
        assert_eq!(transform_datum(&d, &id, 0).unwrap(), d);
        let psi = transform_map(&id, 3);
        assert!(d.truss().is_multiplicative(&d2.truss(), &psi));
        let (phi, v) = recover_iso_data(&d, &d2, &psi).unwrap();
        assert_eq!((phi, v), (id, 3));
    }

    #[test]
    fn transform_round_trips_on_z4() {
        let r = z(4);
        let d = validate_datum(&r, &DoubleOperator::inner(&r, 2), 2).unwrap();
        for phi in ring_automorphisms(&r) {
            for v in 0..4 {
                let d2 = transform_datum(&d, &phi, v).unwrap();
                let psi = transform_map(&phi, v);
                assert!(d.truss().is_multiplicative(&d2.truss(), &psi));
                assert_eq!(recover_iso_data(&d, &d2, &psi).unwrap(), (phi.clone(), v));
            }
        }
    }

    #[test]
    fn zero_ring_identity_vs_zero() {
        let zero = Ring::zero_ring(FinAbGroup::new(&[3]).unwrap());
        let v = equivalence_check(&HomotheticDatum::identity(&zero), &HomotheticDatum::zero(&zero)).unwrap();
        assert!(!v.weakly_equivalent && !v.equivalent);
        let same = equivalence_check(&HomotheticDatum::identity(&zero), &HomotheticDatum::identity(&zero)).unwrap();
        assert!(same.equivalent && same.weakly_equivalent);
        assert_eq!(same.translation, Some(0));
    }

    #[test]
    fn analysis_on_unital_ring() {
        let r = z(4);
        for (sig, s) in [(DoubleOperator::inner(&r, 2), 2), (DoubleOperator::identity(r.group()), 0)] {
            let d = validate_datum(&r, &sig, s).unwrap();
            let rep = analyze_datum_truss(&d).unwrap();
            assert!(rep.consistent(), "{rep:?}");
            assert_eq!(rep.unital_collapse, Some(true));
        }
    }
}
