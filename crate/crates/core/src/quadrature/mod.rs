//! Quadrature against normalized area measure and suprema over the disk.

mod legendre;
mod rule;
mod sup;

pub use legendre::gauss_legendre;
pub use rule::{build_rule, disk_integrate, level_set_integrals, try_disk_integrate, DiskRule, RuleMeta};
pub(crate) use sup::pattern_search;
pub use sup::{disk_sup, disk_sup_with_hints, grid_sup, AGrid, SupGrid, SupResult, A_GRID_RADII, SUP_RADIUS_CAP};
