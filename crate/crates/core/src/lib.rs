//! Computational toolkit for abelian heaps, trusses and the ring extensions
//! attached to them, on finite carriers.

pub mod bimult;
pub mod catalog;
pub mod classify;
pub mod error;
pub mod group;
pub mod heap;
pub mod homext;
pub mod ring;
pub mod serial;
pub mod truss;
pub mod trussext;
pub mod verify;

pub use error::{Axiom, DatumCondition, Error, Result};
pub use group::{AdditiveMap, Elem, ElemSet, FinAbGroup};
pub use heap::Heap;
pub use ring::{Ring, RingHom};
pub use truss::{Side, Truss};
