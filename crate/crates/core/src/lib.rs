//! Exact PL curves on the torus and annuli, and the combinatorics of the
//! fine curve graph built from them.

pub mod arc_graphs;
pub mod curves_ops;
pub mod fine_graph;
pub mod germs_width;
pub mod gen;
pub mod geom;
pub mod homeo_action;
pub mod rat;
pub mod surfaces;

pub use geom::{orient, polyline_self_intersects, segment_intersection, IntersectionResult, RatPoint, Segment};
pub use rat::Rat;
