//! Link diagrams on the disk, torus and once-punctured torus with exact
//! rational coordinates.

mod build;
mod io;
mod multicurve;
mod orient;
mod random;
mod smooth;
mod stack;
mod resolve;
pub mod geom;
mod surface;

pub use build::{build_diagram, ComponentSpec, Crossing, Diagram, DiagramSpec, Override, Passage};
pub use geom::{Point, Q};
pub use multicurve::{canonical_multicurve, realize, CurveData, SimpleMulticurve};
pub use surface::{Surface, SurfaceKind};
pub use resolve::{puncture_winding, resolve, resolve_with, triviality, ArcSystem, Resolution, ResolvedComponent, State};
pub use orient::{euler_parity_check, euler_parity_report, orient_data, same_direction_count, OrientData, OrientedDiagram, ParityReport};
pub use random::{random_diagram, random_layered_diagram};
pub use smooth::smooth_crossing;
pub use stack::stack;
pub use io::{diagram_from_json, diagram_to_json, point_from_json, point_to_json, surface_from_json, surface_to_json};
