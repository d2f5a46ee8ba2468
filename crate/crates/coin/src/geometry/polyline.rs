//! Polylines with arc-length parameterization and nearest-point projection.

use super::{GeometryError, Vec2};

/// A polyline with precomputed cumulative arc lengths.
#[derive(Debug, Clone, PartialEq)]
pub struct Polyline {
    points: Vec<Vec2>,
    cum: Vec<f64>,
}

/// Result of projecting a point onto a polyline.
#[derive(Debug, Clone, Copy)]
pub struct Projection {
    /// Arc length of the closest point, in `[0, total_length]`.
    pub arc_length: f64,
    /// Euclidean distance from the query point to the closest point.
    pub distance: f64,
    /// Signed lateral offset: positive when the query point is left of the
    /// polyline's local direction of travel.
    pub lateral: f64,
    /// Index of the segment containing the closest point.
    pub segment: usize,
}

impl Polyline {
    /// Requires at least two points and no zero-length segments.
    pub fn new(points: Vec<Vec2>) -> Result<Self, GeometryError> {
        if points.len() < 2 {
            return Err(GeometryError::DegeneratePolyline(format!(
                "need >= 2 points, got {}",
                points.len()
            )));
        }
        let mut cum = Vec::with_capacity(points.len());
        cum.push(0.0);
        for w in points.windows(2) {
            let d = (w[1] - w[0]).norm();
            if d <= 1e-12 {
                return Err(GeometryError::DegeneratePolyline(
                    "consecutive points coincide".into(),
                ));
            }
            cum.push(cum.last().unwrap() + d);
        }
        Ok(Self { points, cum })
    }

    pub fn points(&self) -> &[Vec2] {
        &self.points
    }

    pub fn total_length(&self) -> f64 {
        *self.cum.last().unwrap()
    }

    pub fn start(&self) -> Vec2 {
        self.points[0]
    }

    pub fn end(&self) -> Vec2 {
        *self.points.last().unwrap()
    }

    /// Point at arc length `s` (clamped to the valid range).
    pub fn point_at(&self, s: f64) -> Vec2 {
        let s = s.clamp(0.0, self.total_length());
        let seg = self.segment_at(s);
        let t = (s - self.cum[seg]) / (self.cum[seg + 1] - self.cum[seg]);
        self.points[seg] + (self.points[seg + 1] - self.points[seg]) * t
    }

    /// Unit tangent of the segment containing arc length `s`.
    pub fn tangent_at(&self, s: f64) -> Vec2 {
        let seg = self.segment_at(s.clamp(0.0, self.total_length()));
        (self.points[seg + 1] - self.points[seg]).normalize()
    }

    fn segment_at(&self, s: f64) -> usize {
        // Binary search for the segment whose [cum[i], cum[i+1]] contains s.
        match self.cum.binary_search_by(|c| c.partial_cmp(&s).unwrap()) {
            Ok(i) => i.min(self.points.len() - 2),
            Err(i) => (i - 1).min(self.points.len() - 2),
        }
    }

    /// Nearest-point projection. Ties between segments resolve to the
    /// earliest arc length, so vertices project exactly.
    pub fn project(&self, p: Vec2) -> Projection {
        let mut best = Projection {
            arc_length: 0.0,
            distance: f64::INFINITY,
            lateral: 0.0,
            segment: 0,
        };
        for i in 0..self.points.len() - 1 {
            let a = self.points[i];
            let b = self.points[i + 1];
            let ab = b - a;
            let len2 = ab.norm_squared();
            let t = ((p - a).dot(&ab) / len2).clamp(0.0, 1.0);
            let foot = a + ab * t;
            let d = (p - foot).norm();
            if d < best.distance - 1e-12 {
                let dir = ab / len2.sqrt();
                let rel = p - foot;
                best = Projection {
                    arc_length: self.cum[i] + t * len2.sqrt(),
                    distance: d,
                    lateral: dir.x * rel.y - dir.y * rel.x,
                    segment: i,
                };
            }
        }
        best
    }

    /// Concatenate polylines, dropping duplicated joint points.
    pub fn concat(parts: &[&Polyline]) -> Result<Polyline, GeometryError> {
        let mut pts: Vec<Vec2> = Vec::new();
        for part in parts {
            for &p in part.points() {
                if pts.last().is_none_or(|q| (p - q).norm() > 1e-9) {
                    pts.push(p);
                }
            }
        }
        Polyline::new(pts)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn v(x: f64, y: f64) -> Vec2 {
        Vec2::new(x, y)
    }

    #[test]
    fn rejects_degenerate_input() {
        assert!(Polyline::new(vec![v(0.0, 0.0)]).is_err());
        assert!(Polyline::new(vec![v(0.0, 0.0), v(0.0, 0.0)]).is_err());
    }

    #[test]
    fn perpendicular_projection_on_straight_line() {
        let pl = Polyline::new(vec![v(0.0, 0.0), v(100.0, 0.0)]).unwrap();
        let proj = pl.project(v(10.0, 2.0));
        assert!((proj.arc_length - 10.0).abs() < 1e-12);
        assert!((proj.distance - 2.0).abs() < 1e-12);
        assert!((proj.lateral - 2.0).abs() < 1e-12);
    }

    #[test]
    fn route_start_projects_to_zero() {
        let pl = Polyline::new(vec![v(3.0, 4.0), v(10.0, 4.0)]).unwrap();
        assert_eq!(pl.project(v(3.0, 4.0)).arc_length, 0.0);
    }

    #[test]
    fn vertices_project_to_exact_arc_length() {
        let pl = Polyline::new(vec![v(0.0, 0.0), v(3.0, 0.0), v(3.0, 7.0), v(-2.0, 7.0)]).unwrap();
        let mut s = 0.0;
        let pts = pl.points().to_vec();
        for (i, p) in pts.iter().enumerate() {
            if i > 0 {
                s += (pts[i] - pts[i - 1]).norm();
            }
            assert!((pl.project(*p).arc_length - s).abs() < 1e-9);
        }
    }

    #[test]
    fn elbow_projection_matches_dense_sampling_oracle() {
        // L-shaped route; compare against brute-force sampling at 1 mm.
        let pl = Polyline::new(vec![v(0.0, 0.0), v(10.0, 0.0), v(10.0, 10.0)]).unwrap();
        let query = v(10.4, 0.3);
        let total = pl.total_length();
        let mut best = (f64::INFINITY, 0.0);
        let n = (total * 1000.0) as usize;
        for k in 0..=n {
            let s = total * k as f64 / n as f64;
            let d = (pl.point_at(s) - query).norm();
            if d < best.0 {
                best = (d, s);
            }
        }
        let proj = pl.project(query);
        assert!((proj.arc_length - best.1).abs() < 1e-3);
    }

    #[test]
    fn forward_traversal_projection_is_monotone() {
        let pl = Polyline::new(vec![v(0.0, 0.0), v(10.0, 0.0), v(14.0, 5.0), v(14.0, 20.0)]).unwrap();
        let mut prev = -1.0;
        for k in 0..200 {
            let s = pl.total_length() * k as f64 / 199.0;
            // Walk slightly off the polyline to exercise the projection.
            let p = pl.point_at(s) + v(0.05, -0.03);
            let proj = pl.project(p).arc_length;
            assert!(proj >= prev - 1e-9);
            prev = proj;
        }
    }
}
