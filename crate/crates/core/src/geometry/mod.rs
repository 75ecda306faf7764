//! Arms, trajectories, stem endpoints, lengths and sections.

pub mod arm;
pub mod asymptotics;
pub mod closed_form;
pub mod line;
pub mod section;
pub mod stem;
pub mod tropical;
pub mod velocity;

pub use arm::{arm_profile, ArmDescriptor, ArmLabel};
pub use asymptotics::{arm_catalog, AsymptoticCatalog, CatalogArm, Region, StemSpecies, PROBE_T};
pub use closed_form::{closed_form_endpoints, closed_form_length, closed_form_length_slope};
pub use line::{concurrency_det, intersect_lines, Intersection, Line};
pub use section::{cross_section, Extremum, ExtremumKind, Section};
pub use stem::{midpoint_amplitude, stem_endpoints, stem_length_formula, StemGeometry, StemReport, DEFAULT_T_MIN};
pub use tropical::BalanceGraph;
pub use velocity::{tabulated_velocity, velocity_table, VelocityRow};
