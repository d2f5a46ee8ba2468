//! Road geometry: parametric scenario maps, reference routes, and the
//! geometric queries (arc-length projection, lidar raycasting) the simulator
//! is built on.
//!
//! Everything here is immutable after construction and safe to share across
//! rollout workers.

mod polyline;
mod raycast;
mod scenario;

pub use polyline::{Polyline, Projection};
pub use raycast::{footprint_rectangle, footprints_intersect, lidar_scan, Footprint};
pub use scenario::{
    build_scenario, DrivableRegion, LaneSegment, ReferenceRoute, ScenarioKind, ScenarioMap,
    ScenarioParams, SpawnRoad,
};

use nalgebra::Vector2;

/// 2D point / vector in meters.
pub type Vec2 = Vector2<f64>;

/// Rigid 2D pose: a position plus a unit heading vector.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Pose {
    pub position: Vec2,
    pub heading: Vec2,
}

impl Pose {
    pub fn new(position: Vec2, heading: Vec2) -> Self {
        Self { position, heading }
    }

    /// Heading as an angle in radians.
    pub fn angle(&self) -> f64 {
        self.heading.y.atan2(self.heading.x)
    }

    /// Express a world-frame point in this pose's frame (x forward, y left).
    pub fn world_to_ego(&self, p: Vec2) -> Vec2 {
        let d = p - self.position;
        let (c, s) = (self.heading.x, self.heading.y);
        Vec2::new(c * d.x + s * d.y, -s * d.x + c * d.y)
    }

    /// Express a world-frame direction in this pose's frame (no translation).
    pub fn rotate_to_ego(&self, v: Vec2) -> Vec2 {
        let (c, s) = (self.heading.x, self.heading.y);
        Vec2::new(c * v.x + s * v.y, -s * v.x + c * v.y)
    }

    /// Inverse of [`Pose::world_to_ego`].
    pub fn ego_to_world(&self, p: Vec2) -> Vec2 {
        let (c, s) = (self.heading.x, self.heading.y);
        self.position + Vec2::new(c * p.x - s * p.y, s * p.x + c * p.y)
    }
}

/// Unit vector at `angle` radians.
pub fn unit(angle: f64) -> Vec2 {
    Vec2::new(angle.cos(), angle.sin())
}

#[derive(Debug, thiserror::Error)]
pub enum GeometryError {
    #[error("invalid scenario parameter: {0}")]
    InvalidParameter(String),
    #[error("degenerate polyline: {0}")]
    DegeneratePolyline(String),
    #[error("spawn road `{0}` has no reachable destination")]
    NoReachableDestination(String),
}
