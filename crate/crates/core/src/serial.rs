//! JSON forms of rings, trusses and homothetic data. Elements are written
//! as integer arrays (residue tuples); on input a bare integer is also
//! accepted as a lexicographic index.

use serde::{Deserialize, Serialize};

use crate::bimult::DoubleOperator;
use crate::error::{Error, Result};
use crate::group::{AdditiveMap, Elem, FinAbGroup};
use crate::heap::Heap;
use crate::homext::HomotheticDatum;
use crate::ring::Ring;
use crate::truss::Truss;

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum ElemRepr {
    Tuple(Vec<i64>),
    Index(u64),
}

impl ElemRepr {
    pub fn of(g: &FinAbGroup, x: Elem) -> Self {
        ElemRepr::Tuple(g.digits(x).into_iter().map(|d| d as i64).collect())
    }

    pub fn resolve(&self, g: &FinAbGroup) -> Result<Elem> {
        match self {
            ElemRepr::Tuple(t) => {
                if t.len() != g.rank() {
                    return Err(Error::InvalidElement(t.clone()));
                }
                if t.iter().zip(g.orders()).any(|(&d, &o)| d < 0 || d as u64 >= o) {
                    return Err(Error::InvalidElement(t.clone()));
                }
                g.from_ints(t)
            }
            ElemRepr::Index(i) if (*i as usize) < g.size() => Ok(*i as usize),
            ElemRepr::Index(i) => Err(Error::InvalidElement(vec![*i as i64])),
        }
    }
}

/// A list of elements, flat or as rows.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum ElemTable {
    Rows(Vec<Vec<ElemRepr>>),
    Flat(Vec<ElemRepr>),
}

impl ElemTable {
    pub fn rows(g: &FinAbGroup, flat: &[Elem], width: usize) -> Self {
        ElemTable::Rows(
            flat.chunks(width.max(1))
                .map(|row| row.iter().map(|&x| ElemRepr::of(g, x)).collect())
                .collect(),
        )
    }

    pub fn resolve(&self, g: &FinAbGroup) -> Result<Vec<Elem>> {
        match self {
            ElemTable::Rows(rows) => rows.iter().flatten().map(|x| x.resolve(g)).collect(),
            ElemTable::Flat(xs) => xs.iter().map(|x| x.resolve(g)).collect(),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct RingJson {
    pub orders: Vec<u64>,
    pub gen_products: ElemTable,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct TrussJson {
    pub orders: Vec<u64>,
    pub mult_table: ElemTable,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct DatumJson {
    pub ring: RingJson,
    /// Images of the generators under `a -> σa`.
    pub sigma_right_images: Vec<ElemRepr>,
    /// Images of the generators under `a -> aσ`.
    pub sigma_left_images: Vec<ElemRepr>,
    pub s: ElemRepr,
}

fn group_of(orders: &[u64]) -> Result<FinAbGroup> {
    FinAbGroup::new(orders)
}

impl RingJson {
    pub fn from_ring(r: &Ring) -> Self {
        RingJson {
            orders: r.group().orders().to_vec(),
            gen_products: ElemTable::rows(r.group(), r.gen_products(), r.group().rank()),
        }
    }

    pub fn to_ring(&self) -> Result<Ring> {
        let g = group_of(&self.orders)?;
        let gp = self.gen_products.resolve(&g)?;
        Ring::new(g, gp)
    }
}

impl TrussJson {
    pub fn from_truss(t: &Truss) -> Self {
        TrussJson {
            orders: t.group().orders().to_vec(),
            mult_table: ElemTable::rows(t.group(), t.table(), t.size()),
        }
    }

    pub fn to_truss(&self) -> Result<Truss> {
        let g = group_of(&self.orders)?;
        let table = self.mult_table.resolve(&g)?;
        Truss::validate(Heap::new(g), table)
    }
}

impl DatumJson {
    pub fn from_datum(d: &HomotheticDatum) -> Self {
        let g = d.ring().group();
        let imgs = |m: &AdditiveMap| m.images().iter().map(|&x| ElemRepr::of(g, x)).collect();
        DatumJson {
            ring: RingJson::from_ring(d.ring()),
            sigma_right_images: imgs(&d.sigma().right_part),
            sigma_left_images: imgs(&d.sigma().left_part),
            s: ElemRepr::of(g, d.s()),
        }
    }

    pub fn to_datum(&self) -> Result<HomotheticDatum> {
        let r = self.ring.to_ring()?;
        let g = r.group();
        let res = |v: &[ElemRepr]| v.iter().map(|x| x.resolve(g)).collect::<Result<Vec<_>>>();
        let sigma = DoubleOperator::from_images(g, res(&self.sigma_right_images)?, res(&self.sigma_left_images)?)?;
        HomotheticDatum::new(&r, sigma, self.s.resolve(g)?)
    }
}

pub fn parse_json<T: for<'de> Deserialize<'de>>(text: &str) -> Result<T> {
    serde_json::from_str(text).map_err(|e| Error::Parse(e.to_string()))
}

pub fn ring_from_json(text: &str) -> Result<Ring> {
    parse_json::<RingJson>(text)?.to_ring()
}

pub fn truss_from_json(text: &str) -> Result<Truss> {
    parse_json::<TrussJson>(text)?.to_truss()
}

pub fn datum_from_json(text: &str) -> Result<HomotheticDatum> {
    parse_json::<DatumJson>(text)?.to_datum()
}

pub fn ring_to_json(r: &Ring) -> String {
    serde_json::to_string(&RingJson::from_ring(r)).expect("serializes")
}

pub fn truss_to_json(t: &Truss) -> String {
    serde_json::to_string(&TrussJson::from_truss(t)).expect("serializes")
}

pub fn datum_to_json(d: &HomotheticDatum) -> String {
    serde_json::to_string(&DatumJson::from_datum(d)).expect("serializes")
}

/// Parse an element literal such as `[1,0]`, `1,0` or a bare index.
pub fn parse_elem(text: &str, g: &FinAbGroup) -> Result<Elem> {
    let t = text.trim();
    let inner = t.strip_prefix('[').and_then(|s| s.strip_suffix(']')).unwrap_or(t);
    let parts = inner
        .split(',')
        .map(|s| s.trim())
        .filter(|s| !s.is_empty())
        .map(|s| s.parse::<i64>().map_err(|e| Error::Parse(format!("bad element {text:?}: {e}"))))
        .collect::<Result<Vec<_>>>()?;
    ElemRepr::Tuple(parts).resolve(g)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::catalog::named_ring;

    #[test]
    fn ring_round_trip() {
        let r = named_ring("row", 3).unwrap();
        let text = ring_to_json(&r);
        assert_eq!(ring_from_json(&text).unwrap(), r);
        let flat = r#"{"orders":[2],"gen_products":[[1]]}"#;
        assert_eq!(ring_from_json(flat).unwrap(), Ring::integers_mod(2).unwrap());
    }

    #[test]
    fn truss_round_trip_and_rejection() {
        let t = Truss::from_ring(&named_ring("dual", 2).unwrap());
        assert_eq!(truss_from_json(&truss_to_json(&t)).unwrap().table(), t.table());
        let bad = r#"{"orders":[2],"mult_table":[1,1,1,0]}"#;
        assert!(matches!(truss_from_json(bad), Err(Error::AxiomViolation { .. })));
        assert!(matches!(truss_from_json("{"), Err(Error::Parse(_))));
    }

    #[test]
    fn datum_round_trip() {
        let r = Ring::zero_ring(FinAbGroup::new(&[2, 2]).unwrap());
        let d = HomotheticDatum::identity(&r);
        assert_eq!(datum_from_json(&datum_to_json(&d)).unwrap(), d);
    }

    #[test]
    fn element_literals() {
        let g = FinAbGroup::new(&[2, 3]).unwrap();
        assert_eq!(parse_elem("[1,2]", &g).unwrap(), 5);
        assert_eq!(parse_elem("1,2", &g).unwrap(), 5);
        assert!(parse_elem("[2,0]", &g).is_err());
    }
}
