//! Branch-cycle tuples in `S_n` and their Hurwitz braid orbits.

mod braid;
mod cycle_type;
mod enumerate;
mod group;
mod perm;
mod table;
mod tuple;

pub use braid::{
    braid_orbits, orbit_genus, orbit_genus_with, BraidOrbit, GenusConvention, GenusReport, OrbitGraph,
};
pub use cycle_type::CycleType;
pub use enumerate::{enumerate_nielsen, infeasibility, Enumeration};
pub use group::{group_order_of, PermGroup};
pub use perm::{Perm, MAX_DEGREE};
pub use table::{check_row, OrbitRow, OrbitTable, RowOutcome};
pub use tuple::{is_transitive, CanonicalKey, NielsenTuple};
