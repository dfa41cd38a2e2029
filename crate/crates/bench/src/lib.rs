//! Fixtures shared by the criterion benches.

use trusskit_core::catalog::named_ring;
use trusskit_core::homext::HomotheticDatum;
use trusskit_core::{FinAbGroup, Ring, Truss};

pub fn group(orders: &[u64]) -> FinAbGroup {
    FinAbGroup::new(orders).expect("valid orders")
}

/// A truss on Z_p x Z_p that is not a ring: the dual numbers with the identity datum.
pub fn twisted_dual(p: u64) -> Truss {
    let r: Ring = named_ring("dual", p).expect("catalog ring");
    HomotheticDatum::identity(&r).truss()
}
