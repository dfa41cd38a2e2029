//! Abelian heaps `H(G)`: the ternary operation `[x,y,z] = x - y + z`, retracts
//! and translations.

use crate::error::{Error, Result};
use crate::group::{Elem, FinAbGroup};

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Heap {
    group: FinAbGroup,
}

impl Heap {
    pub fn new(group: FinAbGroup) -> Self {
        Heap { group }
    }

    pub fn group(&self) -> &FinAbGroup {
        &self.group
    }

    pub fn size(&self) -> usize {
        self.group.size()
    }

    #[inline]
    pub fn eval(&self, x: Elem, y: Elem, z: Elem) -> Elem {
        self.group.add(self.group.sub(x, y), z)
    }

    /// Alternating sum `x_1 - x_2 + x_3 - ..` of an odd-length word.
    pub fn eval_word(&self, word: &[Elem]) -> Result<Elem> {
        if word.len() % 2 == 0 {
            return Err(Error::Parse("heap words have odd length".into()));
        }
        Ok(word.iter().enumerate().fold(0, |acc, (i, &x)| {
            if i % 2 == 0 {
                self.group.add(acc, x)
            } else {
                self.group.sub(acc, x)
            }
        }))
    }

    pub fn retract(&self, e: Elem) -> Retract<'_> {
        Retract { heap: self, e }
    }

    pub fn translation(&self, e: Elem, f: Elem) -> Translation {
        let table = self.group.elements().map(|a| self.eval(a, e, f)).collect();
        Translation { table }
    }

    /// Whether `sub` (given as a membership predicate) is closed under the
    /// ternary operation.
    pub fn is_sub_heap<F: Fn(Elem) -> bool>(&self, members: &[Elem], contains: F) -> bool {
        members.iter().all(|&x| {
            members
                .iter()
                .all(|&y| members.iter().all(|&z| contains(self.eval(x, y, z))))
        })
    }
}

/// The group structure `x +_e y = [x,e,y]` with zero `e`.
#[derive(Clone, Copy, Debug)]
pub struct Retract<'a> {
    heap: &'a Heap,
    e: Elem,
}

impl Retract<'_> {
    pub fn zero(&self) -> Elem {
        self.e
    }

    pub fn add(&self, x: Elem, y: Elem) -> Elem {
        self.heap.eval(x, self.e, y)
    }

    pub fn neg(&self, x: Elem) -> Elem {
        self.heap.eval(self.e, x, self.e)
    }

    pub fn sub(&self, x: Elem, y: Elem) -> Elem {
        self.add(x, self.neg(y))
    }

    pub fn scale(&self, k: i64, x: Elem) -> Elem {
        let g = self.heap.group();
        g.add(g.scale(k, g.sub(x, self.e)), self.e)
    }
}

/// The heap automorphism `a -> [a,e,f]`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Translation {
    table: Vec<Elem>,
}

impl Translation {
    pub fn apply(&self, a: Elem) -> Elem {
        self.table[a]
    }

    pub fn table(&self) -> &[Elem] {
        &self.table
    }

    /// `other ∘ self`.
    pub fn then(&self, other: &Translation) -> Translation {
        Translation {
            table: self.table.iter().map(|&a| other.apply(a)).collect(),
        }
    }

    pub fn is_identity(&self) -> bool {
        self.table.iter().enumerate().all(|(i, &a)| i == a)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn heap(orders: &[u64]) -> Heap {
        Heap::new(FinAbGroup::new(orders).unwrap())
    }

    #[test]
    fn ternary_examples() {
        let h = heap(&[4]);
        assert_eq!(h.eval(1, 2, 3), 2);
        assert_eq!(heap(&[2]).eval(1, 0, 1), 0);
        assert_eq!(h.eval_word(&[1, 2, 3, 0, 1]).unwrap(), 3);
    }

    #[test]
    fn retract_at_one() {
        let h = heap(&[4]);
        let r = h.retract(1);
        assert_eq!(r.add(2, 3), 0);
        assert_eq!(r.neg(3), 3);
        let r0 = h.retract(0);
        for x in 0..4 {
            for y in 0..4 {
                assert_eq!(r0.add(x, y), (x + y) % 4);
            }
        }
    }

    #[test]
    fn translations() {
        let h = heap(&[4]);
        assert!(h.translation(3, 3).is_identity());
        assert_eq!(h.translation(0, 2).table(), &[2, 3, 0, 1]);
        assert!(h.translation(1, 3).then(&h.translation(3, 1)).is_identity());
        assert_eq!(h.translation(0, 1).then(&h.translation(1, 3)), h.translation(0, 3));
    }
}
