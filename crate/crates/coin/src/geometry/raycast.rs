//! Vehicle footprints and 2D lidar raycasting.

use super::{Pose, ScenarioMap, Vec2};

/// A convex polygonal obstacle outline (vehicle footprints are rectangles,
/// tests may pass finer polygons).
pub type Footprint = Vec<Vec2>;

/// Oriented rectangle footprint centered on `pose.position`.
pub fn footprint_rectangle(pose: &Pose, length: f64, width: f64) -> Footprint {
    let f = pose.heading * (length / 2.0);
    let l = Vec2::new(-pose.heading.y, pose.heading.x) * (width / 2.0);
    vec![
        pose.position + f + l,
        pose.position - f + l,
        pose.position - f - l,
        pose.position + f - l,
    ]
}

/// Convex polygon intersection via the separating-axis test.
pub fn footprints_intersect(a: &Footprint, b: &Footprint) -> bool {
    !has_separating_axis(a, b) && !has_separating_axis(b, a)
}

fn has_separating_axis(a: &Footprint, b: &Footprint) -> bool {
    for i in 0..a.len() {
        let edge = a[(i + 1) % a.len()] - a[i];
        let axis = Vec2::new(-edge.y, edge.x);
        let (a_min, a_max) = project_interval(a, axis);
        let (b_min, b_max) = project_interval(b, axis);
        if a_max < b_min || b_max < a_min {
            return true;
        }
    }
    false
}

fn project_interval(poly: &Footprint, axis: Vec2) -> (f64, f64) {
    let mut lo = f64::INFINITY;
    let mut hi = f64::NEG_INFINITY;
    for p in poly {
        let v = p.dot(&axis);
        lo = lo.min(v);
        hi = hi.max(v);
    }
    (lo, hi)
}

/// Distance along the ray `origin + t * dir` to segment `ab`, if any.
fn ray_segment(origin: Vec2, dir: Vec2, a: Vec2, b: Vec2) -> Option<f64> {
    // Solve origin + t*dir = a + u*(b - a), t >= 0, u in [0, 1].
    let e = b - a;
    let denom = dir.x * (-e.y) - dir.y * (-e.x);
    if denom.abs() < 1e-15 {
        return None; // parallel
    }
    let rhs = a - origin;
    let t = (rhs.x * (-e.y) - rhs.y * (-e.x)) / denom;
    let u = (dir.x * rhs.y - dir.y * rhs.x) / denom;
    if t >= 0.0 && (0.0..=1.0).contains(&u) {
        Some(t)
    } else {
        None
    }
}

fn min_hit_polygon(origin: Vec2, dir: Vec2, poly: &[Vec2], best: &mut f64) {
    for i in 0..poly.len() {
        let a = poly[i];
        let b = poly[(i + 1) % poly.len()];
        if let Some(t) = ray_segment(origin, dir, a, b) {
            *best = best.min(t);
        }
    }
}

/// Cast `n_rays` rays uniformly over 2π in the ego frame (ray k points at
/// angle 2πk/n_rays) against other-vehicle footprints and the drivable-region
/// boundary. Each entry is `min(hit distance, max_range) / max_range`.
pub fn lidar_scan(
    ego: &Pose,
    others: &[Footprint],
    map: &ScenarioMap,
    n_rays: usize,
    max_range: f64,
) -> Vec<f64> {
    assert!(n_rays >= 1, "n_rays must be >= 1");
    assert!(max_range > 0.0, "max_range must be > 0");
    let base = ego.angle();
    let mut out = Vec::with_capacity(n_rays);
    for k in 0..n_rays {
        let angle = base + std::f64::consts::TAU * k as f64 / n_rays as f64;
        let dir = super::unit(angle);
        let mut best = f64::INFINITY;
        for fp in others {
            min_hit_polygon(ego.position, dir, fp, &mut best);
        }
        for poly in map.drivable.boundary_rings() {
            min_hit_polygon(ego.position, dir, poly, &mut best);
        }
        out.push(best.min(max_range) / max_range);
    }
    out
}
