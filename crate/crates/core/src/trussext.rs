//! Rings built from a truss and a base element: the ε-datum, the extensions
//! `T(e)` and `Tᶜ(e)`, the word algebra on `T ∪ {0}` with its normal forms,
//! the universal map `hat`, and the smallness hierarchy of ring embeddings.

use std::collections::HashMap;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::Zero;
use serde::Serialize;

use crate::bimult::DoubleOperator;
use crate::error::{Error, Result};
use crate::group::{AdditiveMap, Elem, ElemSet, FinAbGroup};
use crate::homext::{
    validate_datum, CyclicExtensionRing, HomotheticDatum, IntElem, IntegerQuotient, IntegralExtensionRing,
};
use crate::ring::Ring;
use crate::truss::{RetractRing, Truss};

/// The ε-datum of `T` at `e` on the ring `R(T;e)`, together with that ring.
///
/// In ring coordinates `u = a - e`: `εu = e(u+e) - e²`, `uε = (u+e)e - e²`
/// and `s = e² - e`.
pub fn epsilon_datum(t: &Truss, e: Elem) -> Result<(RetractRing, HomotheticDatum)> {
    let rr = t.ring_from_truss(&ElemSet::full(t.size()), e)?;
    let g = t.group();
    let ee = t.mul(e, e);
    let right = AdditiveMap::from_fn(g, g, |u| g.sub(t.mul(e, g.add(u, e)), ee))?;
    let left = AdditiveMap::from_fn(g, g, |u| g.sub(t.mul(g.add(u, e), e), ee))?;
    let sigma = DoubleOperator::new(right, left)?;
    let datum = validate_datum(&rr.ring, &sigma, g.sub(ee, e))?;
    Ok((rr, datum))
}

/// Whether `T(ε, e²)`, moved back along `u -> u + e`, is exactly `T`.
pub fn epsilon_round_trip(t: &Truss, e: Elem) -> Result<bool> {
    let (rr, d) = epsilon_datum(t, e)?;
    let rebuilt = d.truss();
    let n = t.size();
    Ok((0..n).all(|u| {
        (0..n).all(|v| rr.to_truss[rebuilt.mul(u, v)] == t.mul(rr.to_truss[u], rr.to_truss[v]))
    }))
}

/// `T(e)` in truss coordinates: pairs `(a, k)` with `a ∈ T`, zero `(e, 0)`.
#[derive(Clone, Debug)]
pub struct TrussExtension {
    truss: Truss,
    e: Elem,
    retract: RetractRing,
    datum: HomotheticDatum,
}

impl TrussExtension {
    pub fn new(t: &Truss, e: Elem) -> Result<Self> {
        if !t.group().contains(e) {
            return Err(Error::InvalidElement(vec![e as i64]));
        }
        let (retract, datum) = epsilon_datum(t, e)?;
        Ok(TrussExtension {
            truss: t.clone(),
            e,
            retract,
            datum,
        })
    }

    pub fn truss(&self) -> &Truss {
        &self.truss
    }

    pub fn base_point(&self) -> Elem {
        self.e
    }

    pub fn retract_ring(&self) -> &RetractRing {
        &self.retract
    }

    pub fn datum(&self) -> &HomotheticDatum {
        &self.datum
    }

    /// `n` times `x - e`, added to `e` (scaling in the retract at `e`).
    fn scale_e(&self, n: &BigInt, x: Elem) -> Elem {
        let g = self.truss.group();
        g.add(g.scale_big(n, g.sub(x, self.e)), self.e)
    }

    fn add_e(&self, x: Elem, y: Elem) -> Elem {
        self.truss.heap().eval(x, self.e, y)
    }

    pub fn zero(&self) -> IntElem {
        IntElem::new(self.e, 0)
    }

    /// `ι: a -> (a, 1)`.
    pub fn iota(&self, a: Elem) -> IntElem {
        IntElem::new(a, 1)
    }

    pub fn add(&self, x: &IntElem, y: &IntElem) -> IntElem {
        IntElem {
            a: self.add_e(x.a, y.a),
            k: &x.k + &y.k,
        }
    }

    pub fn neg(&self, x: &IntElem) -> IntElem {
        IntElem {
            a: self.truss.heap().eval(self.e, x.a, self.e),
            k: -&x.k,
        }
    }

    pub fn scale(&self, n: &BigInt, x: &IntElem) -> IntElem {
        IntElem {
            a: self.scale_e(n, x.a),
            k: n * &x.k,
        }
    }

    /// `(a,k)(b,l) = (ab + (l−1)ae + (k−1)eb + (k−1)(l−1)e², kl)`, sums and
    /// multiples taken in the retract at `e`.
    pub fn mul(&self, x: &IntElem, y: &IntElem) -> IntElem {
        let t = &self.truss;
        let e = self.e;
        let k1 = &x.k - 1;
        let l1 = &y.k - 1;
        let terms = [
            t.mul(x.a, y.a),
            self.scale_e(&l1, t.mul(x.a, e)),
            self.scale_e(&k1, t.mul(e, y.a)),
            self.scale_e(&(&k1 * &l1), t.mul(e, e)),
        ];
        let a = terms[1..].iter().fold(terms[0], |acc, &z| self.add_e(acc, z));
        IntElem { a, k: &x.k * &y.k }
    }

    /// The same ring as `R(ε, e²)` on `R(T;e) x Z`.
    pub fn integral(&self) -> IntegralExtensionRing {
        IntegralExtensionRing::new(&self.datum)
    }

    pub fn to_ring_coords(&self, x: &IntElem) -> IntElem {
        IntElem {
            a: self.retract.from_truss[x.a].expect("full carrier"),
            k: x.k.clone(),
        }
    }

    pub fn from_ring_coords(&self, x: &IntElem) -> IntElem {
        IntElem {
            a: self.retract.to_truss[x.a],
            k: x.k.clone(),
        }
    }

    /// `Tᶜ(e)`, the quotient by `{e} x NZ`.
    pub fn cyclic(&self) -> Result<CyclicExtensionRing> {
        CyclicExtensionRing::new(&self.datum)
    }

    /// Index in `Tᶜ(e)` of the truss-coordinate pair `(a, k)`.
    pub fn to_cyclic(&self, c: &CyclicExtensionRing, a: Elem, k: i64) -> Elem {
        c.elem(self.retract.from_truss[a].expect("full carrier"), k)
    }

    pub fn from_cyclic(&self, c: &CyclicExtensionRing, x: Elem) -> (Elem, u64) {
        let (u, k) = c.split(x);
        (self.retract.to_truss[u], k)
    }

    /// The embedding `a -> (a, 1)` of `T` into `Tᶜ(e)`.
    pub fn cyclic_embedding(&self) -> Result<TrussRingEmbedding> {
        let c = self.cyclic()?;
        let eta = (0..self.truss.size()).map(|a| self.to_cyclic(&c, a, 1)).collect();
        TrussRingEmbedding::new(&self.truss, self.e, c.ring(), eta)
    }
}

/// A letter of a word over `T ∪ {0}`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Letter {
    T(Elem),
    Zero,
}

/// The normal form `a[n]`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
pub struct WordAlgebraElement {
    pub base: Elem,
    pub index: i64,
}

/// Parse a whitespace-separated word. `0` is the adjoined zero, `[d1,..,dk]`
/// a tuple of the carrier, and any other token a name from `bindings`.
pub fn parse_word(text: &str, group: &FinAbGroup, bindings: &HashMap<String, Elem>) -> Result<Vec<Letter>> {
    let mut out = Vec::new();
    for tok in text.split_whitespace() {
        if tok == "0" {
            out.push(Letter::Zero);
        } else if let Some(inner) = tok.strip_prefix('[').and_then(|s| s.strip_suffix(']')) {
            let digits = inner
                .split(',')
                .filter(|s| !s.is_empty())
                .map(|s| s.trim().parse::<i64>().map_err(|e| Error::Parse(format!("bad tuple {tok}: {e}"))))
                .collect::<Result<Vec<_>>>()?;
            out.push(Letter::T(group.from_ints(&digits)?));
        } else if let Some(&x) = bindings.get(tok) {
            out.push(Letter::T(x));
        } else {
            return Err(Error::Parse(format!("unknown letter {tok:?}")));
        }
    }
    if out.len() % 2 == 0 {
        return Err(Error::Parse(format!("word has even length {}", out.len())));
    }
    Ok(out)
}

/// Normal form of a word. Rewriting preserves the index
/// `n = #T-letters at odd positions - #T-letters at even positions` and the
/// heap value `Σodd - Σeven - (n-1)e`, and `a[n]` has invariants `(a, n)`.
pub fn word_normalize(group: &FinAbGroup, word: &[Letter], e: Elem) -> Result<WordAlgebraElement> {
    if word.len() % 2 == 0 {
        return Err(Error::Parse(format!("word has even length {}", word.len())));
    }
    if !group.contains(e) || word.iter().any(|l| matches!(l, Letter::T(x) if !group.contains(*x))) {
        return Err(Error::Parse("letter outside the carrier".into()));
    }
    let mut n = 0i64;
    let mut acc = 0;
    for (i, l) in word.iter().enumerate() {
        if let Letter::T(x) = *l {
            if i % 2 == 0 {
                n += 1;
                acc = group.add(acc, x);
            } else {
                n -= 1;
                acc = group.sub(acc, x);
            }
        }
    }
    let base = group.sub(acc, group.scale(n - 1, e));
    Ok(WordAlgebraElement { base, index: n })
}

/// The word `a[n]`.
pub fn normal_word(el: WordAlgebraElement, e: Elem) -> Vec<Letter> {
    let n = el.index;
    let mut w = vec![Letter::T(el.base)];
    if n > 0 {
        for _ in 1..n {
            w.push(Letter::Zero);
            w.push(Letter::T(e));
        }
    } else {
        for _ in 0..(1 - n) {
            w.push(Letter::T(e));
            w.push(Letter::Zero);
        }
    }
    w
}

/// `w + w'` in `T_0` (the retract at `0`): the word `w 0 w'`.
pub fn word_add(w: &[Letter], w2: &[Letter]) -> Vec<Letter> {
    let mut out = w.to_vec();
    out.push(Letter::Zero);
    out.extend_from_slice(w2);
    out
}

/// `w · w'` by distributivity: all pairwise letter products, those with
/// matching position parity at odd positions, the rest at even positions.
pub fn word_mul(t: &Truss, w: &[Letter], w2: &[Letter]) -> Vec<Letter> {
    let prod = |x: Letter, y: Letter| match (x, y) {
        (Letter::T(a), Letter::T(b)) => Letter::T(t.mul(a, b)),
        _ => Letter::Zero,
    };
    let mut pos = Vec::new();
    let mut neg = Vec::new();
    for (i, &x) in w.iter().enumerate() {
        for (j, &y) in w2.iter().enumerate() {
            if (i + j) % 2 == 0 {
                pos.push(prod(x, y));
            } else {
                neg.push(prod(x, y));
            }
        }
    }
    let mut out = Vec::with_capacity(pos.len() + neg.len());
    for (i, p) in pos.into_iter().enumerate() {
        if i > 0 {
            out.push(neg[i - 1]);
        }
        out.push(p);
    }
    out
}

/// `χₑ: a[n] -> (a, n)`.
pub fn chi(el: WordAlgebraElement) -> IntElem {
    IntElem::new(el.base, el.index)
}

/// An injective truss homomorphism `η: T -> T(S)` into a finite ring `S`.
#[derive(Clone, Debug)]
pub struct TrussRingEmbedding {
    pub truss: Truss,
    pub e: Elem,
    pub target: Ring,
    pub eta: Vec<Elem>,
}

/// Whether `f: T -> T(S)` is a truss homomorphism.
pub fn is_truss_hom(t: &Truss, s: &Ring, f: &[Elem]) -> bool {
    let g = t.group();
    let sg = s.group();
    let n = t.size();
    f.len() == n
        && f.iter().all(|&y| sg.contains(y))
        && (0..n).all(|a| (0..n).all(|b| f[t.mul(a, b)] == s.mul(f[a], f[b])))
        && (0..n).all(|a| (0..n).all(|b| f[g.add(a, b)] == sg.add(sg.sub(f[a], f[0]), f[b])))
}

impl TrussRingEmbedding {
    pub fn new(t: &Truss, e: Elem, target: &Ring, eta: Vec<Elem>) -> Result<Self> {
        if !is_truss_hom(t, target, &eta) {
            return Err(Error::Precondition("η is not a truss homomorphism".into()));
        }
        if ElemSet::from_elems(target.size(), eta.iter().copied()).len() != t.size() {
            return Err(Error::Precondition("η is not injective".into()));
        }
        Ok(TrussRingEmbedding {
            truss: t.clone(),
            e,
            target: target.clone(),
            eta,
        })
    }

    /// `hat(a, k) = η(a) + (k − 1)η(e)`.
    pub fn hat(&self, a: Elem, k: &BigInt) -> Elem {
        let g = self.target.group();
        g.add(self.eta[a], g.scale_big(&(k - 1), self.eta[self.e]))
    }

    /// Period in `k` of `hat`: the additive order of `η(e)`.
    pub fn hat_period(&self) -> u64 {
        self.target.group().order_of(self.eta[self.e])
    }

    pub fn hat_image(&self) -> ElemSet {
        let p = self.hat_period() as i64;
        let mut s = ElemSet::empty(self.target.size());
        for a in 0..self.truss.size() {
            for k in 0..p {
                s.insert(self.hat(a, &BigInt::from(k)));
            }
        }
        s
    }

    /// `hat(I(T)) = { η(a) − η(e) }`.
    pub fn induced_ideal(&self) -> ElemSet {
        let g = self.target.group();
        ElemSet::from_elems(
            self.target.size(),
            (0..self.truss.size()).map(|a| g.sub(self.eta[a], self.eta[self.e])),
        )
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct SmallnessWitnesses {
    /// An element of `S` outside the image of `hat`.
    pub outside_image: Option<Elem>,
    /// A nonzero ideal of `S` meeting `hat(I(T))` trivially.
    pub disjoint_ideal: Option<Vec<Elem>>,
    /// `(b, m)` generating an ideal of `T(e)` that meets `I(T)` trivially but
    /// is not killed by `hat`.
    pub unkilled_ideal: Option<(Elem, i64)>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct SmallnessReport {
    pub locally_small: bool,
    pub small: bool,
    pub minimal: bool,
    /// Smallness through the alternative criterion: every nonzero ideal of `S`
    /// contains some `η(a) − η(e)`, `a ≠ e`.
    pub small_by_ideal_criterion: bool,
    pub witnesses: SmallnessWitnesses,
}

/// Ideals `Z·(b, m)` of `T(e)` with `m ≥ 1`, in truss coordinates, for
/// `m` in `1..=bound`. Conditions in ring coordinates `x = (u, m)`:
/// `gu + m·gσ = 0`, `ug + m·σg = 0` for all generators `g`, and
/// `σu + ms = u = uσ + ms`.
pub fn cyclic_ideals_meeting_trivially(ext: &TrussExtension, bound: i64) -> Vec<(Elem, i64)> {
    let d = ext.datum();
    let r = d.ring();
    let g = r.group();
    let sigma = d.sigma();
    let gens = g.generators();
    let mut out = Vec::new();
    for m in 1..=bound {
        for u in g.elements() {
            let ok = gens.iter().all(|&x| {
                g.add(r.mul(x, u), g.scale(m, sigma.right_of(x))) == 0
                    && g.add(r.mul(u, x), g.scale(m, sigma.left_of(x))) == 0
            }) && g.add(sigma.left_of(u), g.scale(m, d.s())) == u
                && g.add(sigma.right_of(u), g.scale(m, d.s())) == u;
            if ok {
                out.push((ext.retract_ring().to_truss[u], m));
            }
        }
    }
    out
}

/// Period after which the ideal conditions and `hat` repeat in `m`.
pub fn minimality_period(emb: &TrussRingEmbedding) -> i64 {
    let n = emb.truss.group().exponent();
    n.lcm(&emb.target.group().exponent()) as i64
}

pub fn smallness_report(emb: &TrussRingEmbedding) -> Result<SmallnessReport> {
    let s = &emb.target;
    let image = emb.hat_image();
    let outside_image = s.group().elements().find(|&x| !image.contains(x));
    let locally_small = outside_image.is_none();

    let induced = emb.induced_ideal();
    let ideals = s.enumerate_ideals();
    let disjoint_ideal = ideals
        .iter()
        .find(|i| i.members.len() > 1 && i.members.intersection(&induced).len() <= 1)
        .map(|i| i.members.to_vec());
    let small = locally_small && disjoint_ideal.is_none();
    let g = s.group();
    let small_by_ideal_criterion = locally_small
        && ideals.iter().filter(|i| i.members.len() > 1).all(|i| {
            (0..emb.truss.size())
                .filter(|&a| a != emb.e)
                .any(|a| i.members.contains(g.sub(emb.eta[a], emb.eta[emb.e])))
        });

    let ext = TrussExtension::new(&emb.truss, emb.e)?;
    let period = minimality_period(emb);
    let unkilled_ideal = cyclic_ideals_meeting_trivially(&ext, period)
        .into_iter()
        .find(|&(b, m)| emb.hat(b, &BigInt::from(m)) != 0);
    Ok(SmallnessReport {
        locally_small,
        small,
        minimal: unkilled_ideal.is_none(),
        small_by_ideal_criterion,
        witnesses: SmallnessWitnesses {
            outside_image,
            disjoint_ideal,
            unkilled_ideal,
        },
    })
}

/// `T -> Tᶜ(e) -> Tᶜ(e)/I` for an ideal `I` of `Tᶜ(e)`.
pub fn ideal_quotient_extension(t: &Truss, e: Elem, ideal: &ElemSet) -> Result<TrussRingEmbedding> {
    let ext = TrussExtension::new(t, e)?;
    let c = ext.cyclic()?;
    let zero = ext.to_cyclic(&c, e, 0);
    if let Some(a) = (0..t.size()).find(|&a| a != e && ideal.contains(ext.to_cyclic(&c, a, 0))) {
        return Err(Error::Precondition(format!(
            "ideal meets the image of the truss at ({a}, 0); the composite is not injective"
        )));
    }
    debug_assert!(ideal.contains(zero) || ideal.is_empty());
    let q = c.ring().quotient(ideal)?;
    let eta = (0..t.size())
        .map(|a| q.projection.apply(ext.to_cyclic(&c, a, 1)))
        .collect();
    TrussRingEmbedding::new(t, e, &q.ring, eta)
}

/// Outcome of searching the quotients of `Tᶜ(e)` for a minimal extension.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub enum MinimalSearch {
    Found { ideal: Vec<Elem>, report: SmallnessReport },
    NotFound { searched: usize, note: String },
}

/// Search the quotients `Tᶜ(e)/I` (with `I` meeting `I(T)` trivially) for an
/// embedding that is minimal.
pub fn search_minimal_extension(t: &Truss, e: Elem) -> Result<MinimalSearch> {
    let ext = TrussExtension::new(t, e)?;
    let c = ext.cyclic()?;
    let mut searched = 0;
    for ideal in c.ring().enumerate_ideals() {
        let emb = match ideal_quotient_extension(t, e, &ideal.members) {
            Ok(emb) => emb,
            Err(_) => continue,
        };
        searched += 1;
        let report = smallness_report(&emb)?;
        if report.minimal {
            return Ok(MinimalSearch::Found {
                ideal: ideal.members.to_vec(),
                report,
            });
        }
    }
    Ok(MinimalSearch::NotFound {
        searched,
        note: "no minimal extension found within search space".into(),
    })
}

/// The truss `T_r = r(r−1)Z + r ⊂ T(Z)` for `r ≥ 2` or `r = −1`, embedded
/// in the ring `rZ`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct IntegerTruss {
    pub r: i64,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct BoundedCheck {
    pub holds: bool,
    pub bound: u64,
    pub note: String,
}

impl IntegerTruss {
    pub fn new(r: i64) -> Result<Self> {
        if r >= 2 || r == -1 {
            Ok(IntegerTruss { r })
        } else {
            Err(Error::Precondition(format!("T_r needs r >= 2 or r = -1, got {r}")))
        }
    }

    fn step(&self) -> BigInt {
        BigInt::from(self.r * (self.r - 1))
    }

    pub fn contains(&self, x: &BigInt) -> bool {
        (x - self.r).mod_floor(&self.step()).is_zero()
    }

    /// The element `r(r−1)k + r`.
    pub fn element(&self, k: i64) -> BigInt {
        self.step() * k + self.r
    }

    /// `hat(a, l) = a + (l − 1) r`.
    pub fn hat(&self, a: &BigInt, l: &BigInt) -> BigInt {
        a + (l - 1) * self.r
    }

    /// Whether `x` lies in the target ring `rZ`.
    pub fn in_target(&self, x: &BigInt) -> bool {
        x.mod_floor(&BigInt::from(self.r.abs())).is_zero()
    }

    /// Check that every ideal `q r Z` with `1 ≤ q ≤ bound` contains some
    /// `a − r`, `a ≠ r` in `T_r`.
    pub fn check_small_criterion(&self, bound: u64) -> BoundedCheck {
        let holds = (1..=bound).all(|q| {
            let modulus = BigInt::from(q as i64 * self.r);
            // a − r = r(r−1)k; search k over one full period.
            (1..=(q as i64).max(1)).any(|k| {
                let diff = self.element(k) - self.r;
                !diff.is_zero() && diff.mod_floor(&modulus).is_zero()
            })
        });
        BoundedCheck {
            holds,
            bound,
            note: "verified up to bound".into(),
        }
    }
}

/// Truss homomorphisms `T -> T(R)`.
pub fn truss_homs(t: &Truss, r: &Ring) -> Vec<Vec<Elem>> {
    let g = t.group();
    let rg = r.group();
    let mut out = Vec::new();
    // Affine maps x -> φ(x) + c with φ additive.
    for phi in crate::group::enumerate_homs(g, rg) {
        for c in rg.elements() {
            let f: Vec<Elem> = g.elements().map(|x| rg.add(phi.apply(x), c)).collect();
            let n = t.size();
            if (0..n).all(|a| (0..n).all(|b| f[t.mul(a, b)] == r.mul(f[a], f[b]))) {
                out.push(f);
            }
        }
    }
    out
}

/// A ring homomorphism `T(e) -> R`, stored in ring coordinates of
/// `R(ε, e²)` by its additive part on `R(T;e)` and its value on `(0, 1)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ExtensionHom {
    pub on_base: AdditiveMap,
    pub on_unit: Elem,
}

impl ExtensionHom {
    pub fn apply(&self, x: &IntElem) -> Elem {
        let g = self.on_base.target();
        g.add(self.on_base.apply(x.a), g.scale_big(&x.k, self.on_unit))
    }
}

/// All ring homomorphisms `T(e) -> R`, found by enumerating additive maps on
/// the generators `(g_i, 0)` and `(0, 1)` and testing multiplicativity on
/// generator pairs with the products of `R(ε, e²)`.
pub fn extension_ring_homs(ext: &TrussExtension, r: &Ring) -> Vec<ExtensionHom> {
    let ring = ext.integral();
    let base = ext.datum().ring().clone();
    let mut gens: Vec<IntElem> = base.group().generators().into_iter().map(|g| IntElem::new(g, 0)).collect();
    gens.push(IntElem::new(0, 1));
    let mut out = Vec::new();
    for on_base in crate::group::enumerate_homs(base.group(), r.group()) {
        for on_unit in r.group().elements() {
            let h = ExtensionHom {
                on_base: on_base.clone(),
                on_unit,
            };
            let ok = gens
                .iter()
                .all(|x| gens.iter().all(|y| h.apply(&ring.mul(x, y)) == r.mul(h.apply(x), h.apply(y))));
            if ok {
                out.push(h);
            }
        }
    }
    out
}

/// `hat_f` for a truss homomorphism `f: T -> T(R)` in the ring coordinates of
/// [`ExtensionHom`].
pub fn hat_of(ext: &TrussExtension, r: &Ring, f: &[Elem]) -> Result<ExtensionHom> {
    let e = ext.base_point();
    let g = r.group();
    let to_truss = &ext.retract_ring().to_truss;
    let base = ext.datum().ring();
    // hat(a, k) = f(a) + (k − 1) f(e); (u, 0) is (u + e, 0) in truss coordinates.
    let on_base = AdditiveMap::from_fn(base.group(), g, |u| g.sub(f[to_truss[u]], f[e]))?;
    Ok(ExtensionHom { on_base, on_unit: f[e] })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ring::Ring;

    fn zn(n: u64) -> Ring {
        Ring::integers_mod(n).unwrap()
    }

    #[test]
    fn epsilon_of_ring_truss() {
        let r = zn(4);
        let t = Truss::from_ring(&r);
        let (_, d) = epsilon_datum(&t, 0).unwrap();
        assert_eq!(d, HomotheticDatum::zero(&r));
        let (rr, d) = epsilon_datum(&t, 1).unwrap();
        assert_eq!(d.sigma(), &DoubleOperator::identity(rr.ring.group()));
        // s = e² as a truss element, i.e. 1 - 1 = 0 in ring coordinates
        assert_eq!(rr.to_truss[d.s()], 1);
        for e in 0..4 {
            assert!(epsilon_round_trip(&t, e).unwrap());
        }
    }

    #[test]
    fn extension_products() {
        let t = Truss::from_ring(&zn(4));
        let ext = TrussExtension::new(&t, 0).unwrap();
        for a in 0..4 {
            for b in 0..4 {
                let x = IntElem::new(a, 3);
                let y = IntElem::new(b, -2);
                assert_eq!(ext.mul(&x, &y), IntElem::new(a * b % 4, -6));
                assert_eq!(ext.mul(&ext.iota(a), &ext.iota(b)), IntElem::new(a * b % 4, 1));
            }
        }
        let ext = TrussExtension::new(&t, 1).unwrap();
        assert_eq!(ext.mul(&ext.zero(), &IntElem::new(3, 5)), ext.zero());
    }

    #[test]
    fn normal_forms() {
        let g = FinAbGroup::new(&[4]).unwrap();
        let (a, e) = (3, 1);
        let bind: HashMap<String, Elem> = [("a".to_string(), a), ("e".to_string(), e)].into();
        let nf = |s: &str| word_normalize(&g, &parse_word(s, &g, &bind).unwrap(), e).unwrap();
        assert_eq!(nf("a"), WordAlgebraElement { base: a, index: 1 });
        assert_eq!(nf("e e 0"), WordAlgebraElement { base: e, index: 0 });
        assert_eq!(nf("a 0 e"), WordAlgebraElement { base: a, index: 2 });
        assert_eq!(nf("0"), nf("e e 0"));
        assert!(parse_word("a e", &g, &bind).is_err());
        for n in -4..=4 {
            let el = WordAlgebraElement { base: 2, index: n };
            assert_eq!(word_normalize(&g, &normal_word(el, e), e).unwrap(), el);
        }
    }

    #[test]
    fn dorroh_embeddings() {
        for p in [2u64, 3] {
            let t = Truss::from_fn(&FinAbGroup::new(&[p]).unwrap(), |a, b| (a + b) % p as usize).unwrap();
            for n in 1..=2u32 {
                let m = p.pow(n + 1);
                let s = zn(m);
                let eta = (0..p).map(|a| ((1 + m * p - a * p.pow(n)) % m) as Elem).collect();
                let emb = TrussRingEmbedding::new(&t, 0, &s, eta).unwrap();
                let rep = smallness_report(&emb).unwrap();
                assert!(rep.locally_small && rep.small && !rep.minimal, "{rep:?}");
                assert_eq!(rep.small, rep.small_by_ideal_criterion);
            }
        }
    }

    #[test]
    fn ring_is_minimal_over_its_truss() {
        for r in [zn(4), zn(6), crate::catalog::named_ring("row", 2).unwrap()] {
            let t = Truss::from_ring(&r);
            let emb = TrussRingEmbedding::new(&t, 0, &r, (0..r.size()).collect()).unwrap();
            let rep = smallness_report(&emb).unwrap();
            assert!(rep.locally_small && rep.minimal, "{rep:?}");
        }
    }

    #[test]
    fn cyclic_extension_of_ring_truss_is_not_small() {
        let t = Truss::from_ring(&zn(3));
        let emb = TrussExtension::new(&t, 0).unwrap().cyclic_embedding().unwrap();
        let rep = smallness_report(&emb).unwrap();
        assert!(rep.locally_small && !rep.small);
    }

    #[test]
    fn integer_trusses() {
        for r in [-1i64, 2, 3, 5] {
            let tr = IntegerTruss::new(r).unwrap();
            for k in -3..=3 {
                let a = tr.element(k);
                assert!(tr.contains(&a));
                for l in -3..=3 {
                    let h = tr.hat(&a, &BigInt::from(l));
                    assert_eq!(h, BigInt::from(r * ((r - 1) * k + l)));
                    assert!(tr.in_target(&h));
                }
            }
            assert!(tr.check_small_criterion(20).holds);
        }
        assert!(IntegerTruss::new(0).is_err());
    }
}
