//! Exhaustive classification of rings, homothetic data and trusses on small
//! groups, with canonical forms over the heap automorphisms `x -> Φ(x) + c`.

use std::collections::{BTreeMap, HashSet};
use std::fmt::Write as _;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::bimult::{bimultiplications, outer_equivalent, OmegaRing};
use crate::catalog;
use crate::error::{Error, Result};
use crate::group::{decompose_table, enumerate_homs, enumerate_subgroups, subgroup_closure, Elem, ElemSet, FinAbGroup};
use crate::heap::Heap;
use crate::homext::HomotheticDatum;
use crate::ring::{bilinear_candidates, ring_canonical_key, GroupSymmetry, Ring};
use crate::truss::{canonical_table, table_key, Truss};

/// Largest number of generator-product assignments tried by ring enumeration.
pub const RING_SEARCH_LIMIT: u128 = 1 << 24;

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ClassFingerprint {
    pub commutative: bool,
    pub absorbers: usize,
    pub identity: bool,
    pub ring_class: String,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ClassEntry {
    pub key: String,
    pub table: Vec<Elem>,
    pub class_size: u64,
    pub fingerprint: ClassFingerprint,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ClassificationReport {
    pub orders: Vec<u64>,
    pub raw_count: u64,
    pub class_count: usize,
    pub classes: Vec<ClassEntry>,
    pub claim: String,
}

impl ClassificationReport {
    fn new(orders: &[u64], raw_count: u64, classes: Vec<ClassEntry>, claim: &str) -> Self {
        ClassificationReport {
            orders: orders.to_vec(),
            raw_count,
            class_count: classes.len(),
            classes,
            claim: claim.to_string(),
        }
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("report serializes")
    }

    pub fn to_csv(&self) -> String {
        let mut s = String::from("key,class_size,commutative,absorbers,identity,ring_class,table\n");
        for c in &self.classes {
            let table: Vec<String> = c.table.iter().map(|x| x.to_string()).collect();
            let _ = writeln!(
                s,
                "{},{},{},{},{},{},{}",
                c.key,
                c.class_size,
                c.fingerprint.commutative,
                c.fingerprint.absorbers,
                c.fingerprint.identity,
                c.fingerprint.ring_class,
                table.join(" ")
            );
        }
        s
    }

    pub fn to_markdown(&self) -> String {
        let mut s = format!(
            "# Classification on {:?}\n\n{}\n\nraw structures: {}, classes: {}\n\n",
            self.orders, self.claim, self.raw_count, self.class_count
        );
        s.push_str("| # | key | size | commutative | absorbers | identity | ring |\n");
        s.push_str("|---|-----|------|-------------|-----------|----------|------|\n");
        for (i, c) in self.classes.iter().enumerate() {
            let _ = writeln!(
                s,
                "| {} | `{}` | {} | {} | {} | {} | {} |",
                i + 1,
                c.key,
                c.class_size,
                c.fingerprint.commutative,
                c.fingerprint.absorbers,
                c.fingerprint.identity,
                c.fingerprint.ring_class
            );
        }
        s
    }

    /// Number of classes per underlying ring class.
    pub fn by_ring_class(&self) -> BTreeMap<String, usize> {
        let mut m = BTreeMap::new();
        for c in &self.classes {
            *m.entry(c.fingerprint.ring_class.clone()).or_insert(0) += 1;
        }
        m
    }
}

fn full_table(r: &Ring) -> Vec<Elem> {
    let n = r.size();
    (0..n * n).map(|i| r.mul(i / n, i % n)).collect()
}

fn truss_fingerprint(t: &Truss, ring_class: &str) -> ClassFingerprint {
    let s = t.structure_report();
    ClassFingerprint {
        commutative: s.commutative,
        absorbers: s.absorbers.len(),
        identity: s.identity.is_some(),
        ring_class: ring_class.to_string(),
    }
}

/// Number of generator-product assignments ring enumeration would try.
pub fn ring_search_size(a: &FinAbGroup) -> u128 {
    bilinear_candidates(a).iter().map(|c| c.len() as u128).product()
}

/// Every associative bilinear multiplication on `a`, in lexicographic order
/// of generator products.
pub fn all_rings(a: &FinAbGroup) -> Result<Vec<Ring>> {
    let needed = ring_search_size(a);
    if needed > RING_SEARCH_LIMIT {
        return Err(Error::Resource {
            what: "ring enumeration".into(),
            needed,
            limit: RING_SEARCH_LIMIT,
        });
    }
    let cands = bilinear_candidates(a);
    let mut assignments = Vec::new();
    crate::group::for_each_choice(&cands, |gp| assignments.push(gp.to_vec()));
    Ok(assignments
        .into_par_iter()
        .filter_map(|gp| Ring::new(a.clone(), gp).ok())
        .collect())
}

/// Name of a ring class: the catalog token on `[p, p]`, otherwise its
/// position among the canonical keys.
fn ring_class_names(a: &FinAbGroup, reps: &[Ring]) -> Vec<String> {
    let catalog = match a.orders() {
        [p, q] if p == q => catalog::named_rings(*p).ok(),
        _ => None,
    };
    reps.iter()
        .enumerate()
        .map(|(i, r)| {
            catalog
                .as_ref()
                .and_then(|c| c.iter().find(|(_, s)| crate::ring::ring_iso_search(r, s).is_some()))
                .map(|(t, _)| t.to_string())
                .unwrap_or_else(|| format!("ring-{i}"))
        })
        .collect()
}

/// Ring class representatives on `a` (rings built from canonical keys),
/// with their names and class sizes.
pub fn ring_classes(a: &FinAbGroup) -> Result<(Vec<(String, Ring, u64)>, u64)> {
    let rings = all_rings(a)?;
    let sym = GroupSymmetry::new(a);
    let keys: Vec<Vec<Elem>> = rings.par_iter().map(|r| ring_canonical_key(r, &sym)).collect();
    let mut buckets: BTreeMap<Vec<Elem>, u64> = BTreeMap::new();
    for k in keys {
        *buckets.entry(k).or_insert(0) += 1;
    }
    let reps: Vec<Ring> = buckets.keys().map(|k| Ring::new_unchecked(a.clone(), k.clone())).collect();
    let names = ring_class_names(a, &reps);
    let raw = rings.len() as u64;
    Ok((
        names
            .into_iter()
            .zip(reps)
            .zip(buckets.into_values())
            .map(|((n, r), c)| (n, r, c))
            .collect(),
        raw,
    ))
}

/// All rings on `a`, optionally bucketed into isomorphism classes.
pub fn enumerate_rings(a: &FinAbGroup, up_to_iso: bool) -> Result<ClassificationReport> {
    let claim = "ring structures on the group, up to isomorphism";
    if !up_to_iso {
        let rings = all_rings(a)?;
        let classes = rings
            .iter()
            .map(|r| ring_entry(r, "raw", 1))
            .collect::<Vec<_>>();
        return Ok(ClassificationReport::new(a.orders(), rings.len() as u64, classes, "ring structures on the group"));
    }
    let (classes, raw) = ring_classes(a)?;
    let entries = classes.iter().map(|(name, r, c)| ring_entry(r, name, *c)).collect();
    Ok(ClassificationReport::new(a.orders(), raw, entries, claim))
}

fn ring_entry(r: &Ring, name: &str, size: u64) -> ClassEntry {
    let table = full_table(r);
    ClassEntry {
        key: table_key(r.group().orders(), &table),
        fingerprint: ClassFingerprint {
            commutative: r.is_commutative(),
            absorbers: 1,
            identity: r.identity().is_some(),
            ring_class: name.to_string(),
        },
        table,
        class_size: size,
    }
}

/// All homothetic data on `r`, ordered by (right images, left images, s).
pub fn enumerate_data(r: &Ring, omega_limit: u128) -> Result<Vec<HomotheticDatum>> {
    let ops = bimultiplications(r, omega_limit)?;
    let g = r.group();
    let gens = g.generators();
    let data = ops
        .par_iter()
        .filter(|s| s.is_homothetism(r))
        .flat_map_iter(|sigma| {
            let square = sigma.mul(sigma);
            let gens = &gens;
            g.elements().filter_map(move |s| {
                if sigma.left_of(s) != sigma.right_of(s) {
                    return None;
                }
                let ok = gens.iter().all(|&x| {
                    square.left_of(x) == g.add(sigma.left_of(x), r.mul(s, x))
                        && square.right_of(x) == g.add(sigma.right_of(x), r.mul(x, s))
                });
                ok.then(|| HomotheticDatum::new_unchecked(r, sigma.clone(), s))
            })
        })
        .collect();
    Ok(data)
}

/// Orbit size of a truss table under the heap automorphisms.
pub fn orbit_size(t: &Truss, sym: &GroupSymmetry) -> u64 {
    let g = t.group();
    let n = g.size();
    let mut seen: HashSet<Vec<Elem>> = HashSet::new();
    for (phi, inv) in sym.auts.iter().zip(&sym.inverses) {
        for c in 0..n {
            let psi: Vec<Elem> = (0..n).map(|x| g.add(phi.apply(x), c)).collect();
            let pre: Vec<Elem> = (0..n).map(|x| inv.apply(g.sub(x, c))).collect();
            seen.insert((0..n * n).map(|i| psi[t.mul(pre[i / n], pre[i % n])]).collect());
        }
    }
    seen.len() as u64
}

/// One unit of truss-classification work: a datum on a named ring class.
#[derive(Clone, Debug)]
pub struct WorkItem {
    pub ring_class: String,
    pub datum: HomotheticDatum,
}

/// All (ring class, datum) pairs on `a`, in a fixed order.
pub fn truss_work_items(a: &FinAbGroup, omega_limit: u128) -> Result<Vec<WorkItem>> {
    let (classes, _) = ring_classes(a)?;
    let mut out = Vec::new();
    for (name, r, _) in classes {
        for datum in enumerate_data(&r, omega_limit)? {
            out.push(WorkItem {
                ring_class: name.clone(),
                datum,
            });
        }
    }
    Ok(out)
}

/// Canonical truss tables found so far. Merging is a keyed set union, so the
/// result does not depend on how the work was split.
#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct TrussAccumulator {
    pub orders: Vec<u64>,
    pub generated: u64,
    /// Canonical table -> ring class name.
    #[serde(with = "pair_list")]
    pub classes: BTreeMap<Vec<Elem>, String>,
}

/// JSON object keys must be strings, so the map is stored as `[key, value]` pairs.
mod pair_list {
    use std::collections::BTreeMap;

    use serde::{Deserialize, Deserializer, Serializer};

    use crate::group::Elem;

    pub fn serialize<S: Serializer>(m: &BTreeMap<Vec<Elem>, String>, s: S) -> Result<S::Ok, S::Error> {
        s.collect_seq(m.iter())
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<BTreeMap<Vec<Elem>, String>, D::Error> {
        Ok(Vec::<(Vec<Elem>, String)>::deserialize(d)?.into_iter().collect())
    }
}

impl TrussAccumulator {
    pub fn new(orders: &[u64]) -> Self {
        TrussAccumulator {
            orders: orders.to_vec(),
            ..Default::default()
        }
    }

    pub fn insert(&mut self, table: Vec<Elem>, ring_class: &str) {
        self.generated += 1;
        self.classes
            .entry(table)
            .and_modify(|c| {
                if ring_class < c.as_str() {
                    *c = ring_class.to_string();
                }
            })
            .or_insert_with(|| ring_class.to_string());
    }

    pub fn merge(&mut self, other: TrussAccumulator) {
        self.generated += other.generated;
        for (table, rc) in other.classes {
            self.generated -= 1;
            self.insert(table, &rc);
        }
    }
}

/// Process the work items with `index % count == shard`.
pub fn accumulate_shard(
    a: &FinAbGroup,
    items: &[WorkItem],
    sym: &GroupSymmetry,
    shard: usize,
    count: usize,
) -> TrussAccumulator {
    let keyed: Vec<(Vec<Elem>, &str)> = items
        .par_iter()
        .enumerate()
        .filter(|(i, _)| i % count == shard)
        .map(|(_, w)| (canonical_table(&w.datum.truss(), sym), w.ring_class.as_str()))
        .collect();
    let mut acc = TrussAccumulator::new(a.orders());
    for (table, rc) in keyed {
        acc.insert(table, rc);
    }
    acc
}

/// Turn merged canonical tables into a report; `raw_count` is the number of
/// distinct multiplication tables, the sum of the orbit sizes.
pub fn finish_truss_report(acc: &TrussAccumulator, sym: &GroupSymmetry, claim: &str) -> Result<ClassificationReport> {
    let a = FinAbGroup::new(&acc.orders)?;
    let entries: Vec<ClassEntry> = acc
        .classes
        .par_iter()
        .map(|(table, rc)| {
            let t = Truss::new_unchecked(Heap::new(a.clone()), table.clone());
            ClassEntry {
                key: table_key(&acc.orders, table),
                table: table.clone(),
                class_size: orbit_size(&t, sym),
                fingerprint: truss_fingerprint(&t, rc),
            }
        })
        .collect();
    let raw = entries.iter().map(|e| e.class_size).sum();
    Ok(ClassificationReport::new(&acc.orders, raw, entries, claim))
}

pub const TRUSS_CLAIM: &str = "every truss on the group is T(σ,s) for a ring and homothetic datum; classes up to truss isomorphism";

/// All trusses on `a` up to isomorphism.
pub fn classify_trusses(a: &FinAbGroup, omega_limit: u128) -> Result<ClassificationReport> {
    let items = truss_work_items(a, omega_limit)?;
    let sym = GroupSymmetry::new(a);
    let acc = accumulate_shard(a, &items, &sym, 0, 1);
    finish_truss_report(&acc, &sym, TRUSS_CLAIM)
}

/// Trusses `T(σ,s)` over a single ring, up to truss isomorphism.
pub fn classify_homothetic_trusses(r: &Ring, ring_class: &str, omega_limit: u128) -> Result<ClassificationReport> {
    let a = r.group();
    let sym = GroupSymmetry::new(a);
    let items: Vec<WorkItem> = enumerate_data(r, omega_limit)?
        .into_iter()
        .map(|datum| WorkItem {
            ring_class: ring_class.to_string(),
            datum,
        })
        .collect();
    let acc = accumulate_shard(a, &items, &sym, 0, 1);
    let mut report = finish_truss_report(&acc, &sym, "homothetic trusses over the ring, up to truss isomorphism")?;
    report.raw_count = acc.generated;
    Ok(report)
}

/// Every truss on `a` with `|a| <= 4`, by direct search over bi-affine tables
/// `ab = c + α(a) + β(b) + γ(a,b)`.
pub fn raw_truss_search(a: &FinAbGroup) -> Result<Vec<Truss>> {
    if a.size() > 4 {
        return Err(Error::Unsupported(format!(
            "direct truss search is limited to carriers of order at most 4, got {}",
            a.size()
        )));
    }
    let n = a.size();
    let ends = enumerate_homs(a, a);
    let mut bilinear = Vec::new();
    crate::group::for_each_choice(&bilinear_candidates(a), |gp| {
        bilinear.push(Ring::new_unchecked(a.clone(), gp.to_vec()))
    });
    let mut shapes = Vec::new();
    for c in a.elements() {
        for al in &ends {
            for be in &ends {
                shapes.push((c, al, be));
            }
        }
    }
    let bilinear = &bilinear;
    Ok(shapes
        .par_iter()
        .flat_map_iter(|&(c, al, be)| {
            bilinear.iter().filter_map(move |gm| {
                let table = (0..n * n)
                    .map(|i| {
                        let (x, y) = (i / n, i % n);
                        a.sum([c, al.apply(x), be.apply(y), gm.mul(x, y)])
                    })
                    .collect();
                Truss::validate(Heap::new(a.clone()), table).ok()
            })
        })
        .collect())
}

/// Classes among an explicit list of trusses.
pub fn classify_truss_list(a: &FinAbGroup, trusses: &[Truss], claim: &str) -> Result<ClassificationReport> {
    let sym = GroupSymmetry::new(a);
    let keys: Vec<Vec<Elem>> = trusses.par_iter().map(|t| canonical_table(t, &sym)).collect();
    let mut acc = TrussAccumulator::new(a.orders());
    for k in keys {
        acc.insert(k, "raw");
    }
    let mut report = finish_truss_report(&acc, &sym, claim)?;
    report.raw_count = trusses.len() as u64;
    Ok(report)
}

/// Ordered `(A₁, A₂, A₃, A₄)` with `A = A₁ ⊕ A₂ ⊕ A₃ ⊕ A₄`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct QuadrupleDecomposition {
    pub parts: [ElemSet; 4],
}

impl QuadrupleDecomposition {
    /// Components of every element, indexed by element.
    pub fn components(&self, a: &FinAbGroup) -> Vec<[Elem; 4]> {
        let mut comps = vec![[0; 4]; a.size()];
        let p: Vec<Vec<Elem>> = self.parts.iter().map(|s| s.to_vec()).collect();
        for &x1 in &p[0] {
            for &x2 in &p[1] {
                for &x3 in &p[2] {
                    for &x4 in &p[3] {
                        comps[a.sum([x1, x2, x3, x4])] = [x1, x2, x3, x4];
                    }
                }
            }
        }
        comps
    }

    /// `(a₁+a₂+a₃+a₄)(b₁+b₂+b₃+b₄) = b₁ + a₂ + a₃ + b₃`.
    pub fn truss(&self, a: &FinAbGroup) -> Result<Truss> {
        let comps = self.components(a);
        Truss::from_fn(a, |x, y| {
            let (ca, cb) = (comps[x], comps[y]);
            a.sum([cb[0], ca[1], ca[2], cb[2]])
        })
    }

    /// Isomorphism types of the four parts, as invariant-factor orders.
    pub fn type_key(&self, a: &FinAbGroup) -> [Vec<u64>; 4] {
        self.parts.clone().map(|s| subgroup_type(a, &s))
    }
}

/// Cyclic prime-power orders of a subgroup, sorted descending.
fn subgroup_type(a: &FinAbGroup, s: &ElemSet) -> Vec<u64> {
    let members = s.to_vec();
    let pos: BTreeMap<Elem, usize> = members.iter().enumerate().map(|(i, &x)| (x, i)).collect();
    let d = decompose_table(members.len(), |i, j| pos[&a.add(members[i], members[j])]).expect("subgroup");
    let mut o = d.group.orders().to_vec();
    o.sort_unstable_by(|x, y| y.cmp(x));
    o
}

pub fn quadruple_decompositions(a: &FinAbGroup) -> Vec<QuadrupleDecomposition> {
    let subs = enumerate_subgroups(a);
    let n = a.size();
    let mut out = Vec::new();
    for s1 in &subs {
        for s2 in subs.iter().filter(|s| s.intersection(s1).len() == 1) {
            let j12 = subgroup_closure(a, s1.iter().chain(s2.iter()));
            if j12.len() != s1.len() * s2.len() {
                continue;
            }
            for s3 in subs.iter().filter(|s| s.intersection(&j12).len() == 1) {
                let j123 = subgroup_closure(a, j12.iter().chain(s3.iter()));
                for s4 in subs
                    .iter()
                    .filter(|s| s.intersection(&j123).len() == 1 && j123.len() * s.len() == n)
                {
                    out.push(QuadrupleDecomposition {
                        parts: [s1.clone(), s2.clone(), s3.clone(), s4.clone()],
                    });
                }
            }
        }
    }
    out
}

/// Trusses with zero-multiplication retract, one per isomorphism type of
/// the quadruple `(A₁, A₂, A₃, A₄)`.
pub fn classify_zero_mult(a: &FinAbGroup) -> Result<ClassificationReport> {
    let decs = quadruple_decompositions(a);
    let mut buckets: BTreeMap<[Vec<u64>; 4], (usize, u64)> = BTreeMap::new();
    for (i, d) in decs.iter().enumerate() {
        buckets.entry(d.type_key(a)).or_insert((i, 0)).1 += 1;
    }
    let sym = GroupSymmetry::new(a);
    let classes = buckets
        .iter()
        .map(|(key, &(i, count))| {
            let t = decs[i].truss(a)?;
            let parts: Vec<String> = key.iter().map(|o| format!("{o:?}")).collect();
            Ok(ClassEntry {
                key: parts.join("|"),
                table: canonical_table(&t, &sym),
                class_size: count,
                fingerprint: truss_fingerprint(&t, "zero"),
            })
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(ClassificationReport::new(
        a.orders(),
        decs.len() as u64,
        classes,
        "trusses whose retract has zero multiplication, classified by the types of A₁..A₄",
    ))
}

/// Homothetic trusses over a ring with trivial annihilator, classified by
/// idempotents of `Ξ(R)` up to the action of ring automorphisms.
pub fn classify_trivial_annihilator(r: &Ring, ring_class: &str, omega_limit: u128) -> Result<ClassificationReport> {
    if r.annihilator().len() > 1 {
        return Err(Error::Precondition(format!(
            "ring has an annihilator of size {}; this classifier needs it trivial",
            r.annihilator().len()
        )));
    }
    let omega = OmegaRing::new(r, omega_limit)?;
    let idempotents = omega.xi.ring.idempotents();
    let mut reps: Vec<(Elem, u64)> = Vec::new();
    for &q in &idempotents {
        let sigma = omega.xi_representative(q);
        let found = reps
            .iter()
            .position(|&(p, _)| outer_equivalent(r, omega.xi_representative(p), sigma).is_some());
        match found {
            Some(i) => reps[i].1 += 1,
            None => reps.push((q, 1)),
        }
    }
    let sym = GroupSymmetry::new(r.group());
    let classes = reps
        .iter()
        .map(|&(q, count)| {
            let sigma = omega.xi_representative(q).clone();
            let defect = sigma.mul(&sigma).sub(&sigma);
            let s = defect
                .inner_element(r)
                .ok_or_else(|| Error::Precondition("σ² − σ is not inner".into()))?;
            let d = HomotheticDatum::new(r, sigma, s)?;
            let t = d.truss();
            Ok(ClassEntry {
                key: format!("xi-idempotent-{q}"),
                table: canonical_table(&t, &sym),
                class_size: count,
                fingerprint: truss_fingerprint(&t, ring_class),
            })
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(ClassificationReport::new(
        r.group().orders(),
        idempotents.len() as u64,
        classes,
        "homothetic trusses over a ring with trivial annihilator correspond to idempotents of Ξ(R) up to automorphisms",
    ))
}

/// Truss class counts per ring on `[p, p]`, from the known table.
pub fn expected_pp_counts() -> BTreeMap<&'static str, usize> {
    [
        ("f4", 1),
        ("prod", 1),
        ("dual", 1),
        ("zero", 10),
        ("row", 2),
        ("col", 2),
        ("halfzero", 4),
        ("nilcubed", 2),
    ]
    .into_iter()
    .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::bimult::DEFAULT_OMEGA_LIMIT;

    fn g(o: &[u64]) -> FinAbGroup {
        FinAbGroup::new(o).unwrap()
    }

    #[test]
    fn ring_counts() {
        assert_eq!(enumerate_rings(&g(&[2]), true).unwrap().class_count, 2);
        assert_eq!(enumerate_rings(&g(&[3]), true).unwrap().class_count, 2);
        assert_eq!(enumerate_rings(&FinAbGroup::trivial(), true).unwrap().class_count, 1);
        let r = enumerate_rings(&g(&[2, 2]), true).unwrap();
        assert_eq!(r.class_count, 8);
        let names: Vec<&str> = r.classes.iter().map(|c| c.fingerprint.ring_class.as_str()).collect();
        for t in catalog::TOKENS {
            assert!(names.contains(&t), "{t} missing from {names:?}");
        }
        assert!(matches!(all_rings(&g(&[2, 2, 2])), Err(Error::Resource { .. })));
    }

    #[test]
    fn data_counts() {
        for p in [2u64, 3, 5] {
            let zero = Ring::zero_ring(g(&[p]));
            assert_eq!(enumerate_data(&zero, DEFAULT_OMEGA_LIMIT).unwrap().len() as u64, 2 * p + 2);
            let field = Ring::integers_mod(p).unwrap();
            assert_eq!(enumerate_data(&field, DEFAULT_OMEGA_LIMIT).unwrap().len() as u64, p);
        }
        assert_eq!(enumerate_data(&Ring::zero_ring(FinAbGroup::trivial()), 16).unwrap().len(), 1);
    }

    #[test]
    fn small_truss_counts() {
        assert_eq!(classify_trusses(&FinAbGroup::trivial(), DEFAULT_OMEGA_LIMIT).unwrap().class_count, 1);
        for p in [2, 3] {
            assert_eq!(classify_trusses(&g(&[p]), DEFAULT_OMEGA_LIMIT).unwrap().class_count, 5);
        }
    }

    #[test]
    fn raw_search_agrees_on_small_carriers() {
        for o in [&[2u64][..], &[3], &[4]] {
            let a = g(o);
            let via_data = classify_trusses(&a, DEFAULT_OMEGA_LIMIT).unwrap();
            let raw = raw_truss_search(&a).unwrap();
            let direct = classify_truss_list(&a, &raw, "direct").unwrap();
            assert_eq!(via_data.class_count, direct.class_count, "{o:?}");
            assert_eq!(via_data.raw_count, raw.len() as u64, "{o:?}");
        }
    }

    #[test]
    fn zero_mult_small() {
        for p in [2u64, 3] {
            let a = g(&[p]);
            let z = classify_zero_mult(&a).unwrap();
            assert_eq!(z.class_count, 4);
            let h = classify_homothetic_trusses(&Ring::zero_ring(a), "zero", DEFAULT_OMEGA_LIMIT).unwrap();
            assert_eq!(h.class_count, 4);
        }
    }

    #[test]
    fn shards_merge_to_the_same_classes() {
        let a = g(&[4]);
        let items = truss_work_items(&a, DEFAULT_OMEGA_LIMIT).unwrap();
        let sym = GroupSymmetry::new(&a);
        let whole = accumulate_shard(&a, &items, &sym, 0, 1);
        let mut merged = TrussAccumulator::new(a.orders());
        for s in (0..3).rev() {
            merged.merge(accumulate_shard(&a, &items, &sym, s, 3));
        }
        assert_eq!(whole, merged);
        let text = serde_json::to_string(&merged).unwrap();
        assert_eq!(serde_json::from_str::<TrussAccumulator>(&text).unwrap(), whole);
    }

    #[test]
    fn trivial_annihilator_rejects_nilpotent_ring() {
        let r = catalog::named_ring("nilcubed", 2).unwrap();
        assert!(matches!(
            classify_trivial_annihilator(&r, "nilcubed", DEFAULT_OMEGA_LIMIT),
            Err(Error::Precondition(_))
        ));
        let row = catalog::named_ring("row", 2).unwrap();
        assert_eq!(classify_trivial_annihilator(&row, "row", DEFAULT_OMEGA_LIMIT).unwrap().class_count, 2);
    }
}
