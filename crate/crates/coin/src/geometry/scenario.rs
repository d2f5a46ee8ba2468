//! Parametric scenario maps: a four-way intersection, a roundabout, a 4-to-1
//! bottleneck, and a straight road for sanity checks.
//!
//! All maps are generated from `(kind, params)` alone; there are no map
//! files. Dimensions default to desk-scale values and every builder records
//! spawn roads together with precomputed route templates to each reachable
//! destination.

use super::polyline::Polyline;
use super::{GeometryError, Pose, Vec2};
use rand::Rng;
use serde::{Deserialize, Serialize};
use std::f64::consts::TAU;

/// Extra drivable length past route ends so spawn and destination points sit
/// strictly inside the region.
const END_MARGIN: f64 = 0.5;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum ScenarioKind {
    Intersection,
    Roundabout,
    Bottleneck,
    StraightRoad,
}

/// Geometry parameters with desk-scale defaults.
#[derive(Debug, Clone, Copy, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct ScenarioParams {
    /// Width of a single lane (m).
    pub lane_width: f64,
    /// Length of each approach arm (intersection, roundabout) or of the wide
    /// section (bottleneck) (m).
    pub arm_length: f64,
    /// Roundabout ring centerline radius (m).
    pub ring_radius: f64,
    /// StraightRoad length (m).
    pub straight_length: f64,
    /// Bottleneck taper length (m).
    pub taper_length: f64,
    /// Bottleneck single-lane section length (m).
    pub neck_length: f64,
    /// Fraction of each spawn lane usable for spawning, from its start.
    pub spawn_span: f64,
    /// Arc-length spacing between route checkpoints (m).
    pub checkpoint_spacing: f64,
}

impl Default for ScenarioParams {
    fn default() -> Self {
        Self {
            lane_width: 4.0,
            arm_length: 60.0,
            ring_radius: 20.0,
            straight_length: 100.0,
            taper_length: 20.0,
            neck_length: 30.0,
            spawn_span: 0.75,
            checkpoint_spacing: 10.0,
        }
    }
}

impl ScenarioParams {
    fn validate(&self) -> Result<(), GeometryError> {
        let positive = [
            ("lane_width", self.lane_width),
            ("arm_length", self.arm_length),
            ("ring_radius", self.ring_radius),
            ("straight_length", self.straight_length),
            ("taper_length", self.taper_length),
            ("neck_length", self.neck_length),
            ("checkpoint_spacing", self.checkpoint_spacing),
        ];
        for (name, v) in positive {
            if !(v > 0.0) || !v.is_finite() {
                return Err(GeometryError::InvalidParameter(format!(
                    "{name} must be positive, got {v}"
                )));
            }
        }
        if !(0.0..=1.0).contains(&self.spawn_span) {
            return Err(GeometryError::InvalidParameter(format!(
                "spawn_span must be in [0, 1], got {}",
                self.spawn_span
            )));
        }
        Ok(())
    }
}

#[derive(Debug, Clone)]
pub struct LaneSegment {
    pub id: String,
    pub centerline: Polyline,
    pub width: f64,
}

/// Drivable area as a set of polygons minus a set of holes (the roundabout
/// island). A point is drivable when it lies inside any polygon and inside
/// no hole.
#[derive(Debug, Clone, Default)]
pub struct DrivableRegion {
    pub polygons: Vec<Vec<Vec2>>,
    pub holes: Vec<Vec<Vec2>>,
}

impl DrivableRegion {
    pub fn contains(&self, p: Vec2) -> bool {
        if self.holes.iter().any(|h| point_in_polygon(p, h)) {
            return false;
        }
        self.polygons.iter().any(|poly| point_in_polygon(p, poly))
    }

    /// All boundary rings (outer polygons and holes), for raycasting.
    pub fn boundary_rings(&self) -> impl Iterator<Item = &Vec<Vec2>> {
        self.polygons.iter().chain(self.holes.iter())
    }
}

fn point_in_polygon(p: Vec2, poly: &[Vec2]) -> bool {
    let mut inside = false;
    let mut j = poly.len() - 1;
    for i in 0..poly.len() {
        let (a, b) = (poly[i], poly[j]);
        if (a.y > p.y) != (b.y > p.y) {
            let x = a.x + (p.y - a.y) / (b.y - a.y) * (b.x - a.x);
            if p.x < x {
                inside = !inside;
            }
        }
        j = i;
    }
    inside
}

/// A spawnable road: vehicles enter on `lane`, somewhere within
/// `spawn_range` (longitudinal meters along the route templates), and follow
/// one of the `routes` to its destination.
#[derive(Debug, Clone)]
pub struct SpawnRoad {
    pub id: String,
    pub lane: usize,
    pub spawn_range: (f64, f64),
    pub routes: Vec<Polyline>,
}

#[derive(Debug, Clone)]
pub struct ScenarioMap {
    pub kind: ScenarioKind,
    pub lanes: Vec<LaneSegment>,
    pub drivable: DrivableRegion,
    pub spawn_roads: Vec<SpawnRoad>,
    /// Lane-count sequence per travel corridor (e.g. `[4, 1]` for each
    /// bottleneck direction).
    pub lane_sequences: Vec<Vec<usize>>,
}

impl ScenarioMap {
    pub fn contains(&self, p: Vec2) -> bool {
        self.drivable.contains(p)
    }

    /// Draw a route template for `spawn_road` and lay out fresh checkpoints.
    pub fn sample_route<R: Rng>(
        &self,
        spawn_road: usize,
        spacing: f64,
        rng: &mut R,
    ) -> Result<ReferenceRoute, GeometryError> {
        let road = &self.spawn_roads[spawn_road];
        if road.routes.is_empty() {
            return Err(GeometryError::NoReachableDestination(road.id.clone()));
        }
        let pick = rng.gen_range(0..road.routes.len());
        Ok(ReferenceRoute::from_waypoints(
            road.routes[pick].clone(),
            spacing,
        ))
    }
}

/// A fixed per-vehicle reference trajectory with navigation checkpoints.
#[derive(Debug, Clone)]
pub struct ReferenceRoute {
    waypoints: Polyline,
    checkpoints: Vec<Vec2>,
    checkpoint_arcs: Vec<f64>,
    spacing: f64,
}

impl ReferenceRoute {
    /// Place checkpoints every `spacing` meters plus one at the destination;
    /// only the final interval may be shorter than `spacing`.
    pub fn from_waypoints(waypoints: Polyline, spacing: f64) -> Self {
        let total = waypoints.total_length();
        let mut arcs = Vec::new();
        let mut s = spacing;
        while s < total - 1e-9 {
            arcs.push(s);
            s += spacing;
        }
        arcs.push(total);
        let checkpoints = arcs.iter().map(|&a| waypoints.point_at(a)).collect();
        Self {
            waypoints,
            checkpoints,
            checkpoint_arcs: arcs,
            spacing,
        }
    }

    pub fn waypoints(&self) -> &Polyline {
        &self.waypoints
    }

    pub fn checkpoints(&self) -> &[Vec2] {
        &self.checkpoints
    }

    pub fn checkpoint_arcs(&self) -> &[f64] {
        &self.checkpoint_arcs
    }

    pub fn spacing(&self) -> f64 {
        self.spacing
    }

    pub fn total_length(&self) -> f64 {
        self.waypoints.total_length()
    }

    /// Longitudinal coordinate of the closest route point.
    pub fn project(&self, p: Vec2) -> f64 {
        self.waypoints.project(p).arc_length
    }

    /// Full projection (arc length, distance, signed lateral offset).
    pub fn projection(&self, p: Vec2) -> super::Projection {
        self.waypoints.project(p)
    }

    /// Next two unreached checkpoints in world coordinates, given the current
    /// longitudinal progress. A checkpoint is consumed once progress passes
    /// its arc length; when fewer than two remain the destination repeats.
    pub fn next_checkpoints_world(&self, progress: f64) -> [Vec2; 2] {
        let first = self
            .checkpoint_arcs
            .partition_point(|&a| a <= progress)
            .min(self.checkpoints.len() - 1);
        let second = (first + 1).min(self.checkpoints.len() - 1);
        [self.checkpoints[first], self.checkpoints[second]]
    }

    /// Next two unreached checkpoints expressed in the ego frame of `pose`.
    pub fn next_checkpoints(&self, pose: &Pose) -> [Vec2; 2] {
        let progress = self.project(pose.position);
        let [a, b] = self.next_checkpoints_world(progress);
        [pose.world_to_ego(a), pose.world_to_ego(b)]
    }
}

/// Build a scenario map from `(kind, params)`.
pub fn build_scenario(
    kind: ScenarioKind,
    params: &ScenarioParams,
) -> Result<ScenarioMap, GeometryError> {
    params.validate()?;
    match kind {
        ScenarioKind::StraightRoad => build_straight(params),
        ScenarioKind::Intersection => build_intersection(params),
        ScenarioKind::Roundabout => build_roundabout(params),
        ScenarioKind::Bottleneck => build_bottleneck(params),
    }
}

fn rot90(v: Vec2) -> Vec2 {
    Vec2::new(-v.y, v.x)
}

/// Cubic Bezier connector whose end tangents match the given headings.
fn connector(from: Vec2, from_dir: Vec2, to: Vec2, to_dir: Vec2) -> Vec<Vec2> {
    let d = (to - from).norm();
    let c = d * 0.4;
    let p1 = from + from_dir * c;
    let p2 = to - to_dir * c;
    let n = ((d / 1.5).ceil() as usize).max(4);
    (0..=n)
        .map(|i| {
            let t = i as f64 / n as f64;
            let u = 1.0 - t;
            from * (u * u * u)
                + p1 * (3.0 * u * u * t)
                + p2 * (3.0 * u * t * t)
                + to * (t * t * t)
        })
        .collect()
}

fn circle_polygon(center: Vec2, radius: f64, n: usize) -> Vec<Vec2> {
    (0..n)
        .map(|i| {
            let a = TAU * i as f64 / n as f64;
            center + Vec2::new(radius * a.cos(), radius * a.sin())
        })
        .collect()
}

fn rect_polygon(corner_a: Vec2, corner_b: Vec2) -> Vec<Vec2> {
    let lo = Vec2::new(corner_a.x.min(corner_b.x), corner_a.y.min(corner_b.y));
    let hi = Vec2::new(corner_a.x.max(corner_b.x), corner_a.y.max(corner_b.y));
    vec![
        lo,
        Vec2::new(hi.x, lo.y),
        hi,
        Vec2::new(lo.x, hi.y),
    ]
}

/// Axis-aligned rectangle in an arm frame: spans `[r0, r1]` along direction
/// `d` and `[-half_w, half_w]` along the left normal.
fn arm_rect(d: Vec2, r0: f64, r1: f64, half_w: f64) -> Vec<Vec2> {
    let n = rot90(d);
    vec![
        d * r0 + n * half_w,
        d * r0 - n * half_w,
        d * r1 - n * half_w,
        d * r1 + n * half_w,
    ]
}

fn build_straight(p: &ScenarioParams) -> Result<ScenarioMap, GeometryError> {
    let len = p.straight_length;
    let w = p.lane_width;
    let centerline = Polyline::new(vec![Vec2::new(0.0, 0.0), Vec2::new(len, 0.0)])?;
    let lanes = vec![LaneSegment {
        id: "main".into(),
        centerline: centerline.clone(),
        width: w,
    }];
    let drivable = DrivableRegion {
        polygons: vec![rect_polygon(
            Vec2::new(-END_MARGIN, -w / 2.0),
            Vec2::new(len + END_MARGIN, w / 2.0),
        )],
        holes: vec![],
    };
    let spawn_roads = vec![SpawnRoad {
        id: "main".into(),
        lane: 0,
        spawn_range: (0.0, p.spawn_span * len * 0.5),
        routes: vec![centerline],
    }];
    Ok(ScenarioMap {
        kind: ScenarioKind::StraightRoad,
        lanes,
        drivable,
        spawn_roads,
        lane_sequences: vec![vec![1]],
    })
}

fn build_intersection(p: &ScenarioParams) -> Result<ScenarioMap, GeometryError> {
    let w = p.lane_width;
    let len = p.arm_length;
    let b = 1.5 * w; // half-size of the central box
    let arm_dirs = [
        Vec2::new(1.0, 0.0),
        Vec2::new(0.0, 1.0),
        Vec2::new(-1.0, 0.0),
        Vec2::new(0.0, -1.0),
    ];
    let arm_names = ["east", "north", "west", "south"];

    let mut lanes = Vec::new();
    let mut polygons = vec![rect_polygon(Vec2::new(-b, -b), Vec2::new(b, b))];
    let mut inbound: Vec<Polyline> = Vec::new();
    let mut outbound: Vec<Polyline> = Vec::new();

    for (k, d) in arm_dirs.iter().enumerate() {
        let n = rot90(*d);
        // Inbound traffic heads toward the center and keeps to its right.
        let lane_in = Polyline::new(vec![
            *d * (b + len) + n * (w / 2.0),
            *d * b + n * (w / 2.0),
        ])?;
        let lane_out = Polyline::new(vec![
            *d * b - n * (w / 2.0),
            *d * (b + len) - n * (w / 2.0),
        ])?;
        lanes.push(LaneSegment {
            id: format!("{}_in", arm_names[k]),
            centerline: lane_in.clone(),
            width: w,
        });
        lanes.push(LaneSegment {
            id: format!("{}_out", arm_names[k]),
            centerline: lane_out.clone(),
            width: w,
        });
        inbound.push(lane_in);
        outbound.push(lane_out);
        polygons.push(arm_rect(*d, b, b + len + END_MARGIN, w));
    }

    let mut spawn_roads = Vec::new();
    for k in 0..4 {
        let mut routes = Vec::new();
        for off in 1..4 {
            let m = (k + off) % 4;
            let join = connector(
                inbound[k].end(),
                -arm_dirs[k],
                outbound[m].start(),
                arm_dirs[m],
            );
            let joint = Polyline::new(join)?;
            routes.push(Polyline::concat(&[&inbound[k], &joint, &outbound[m]])?);
        }
        spawn_roads.push(SpawnRoad {
            id: format!("{}_in", arm_names[k]),
            lane: 2 * k,
            spawn_range: (0.0, p.spawn_span * len),
            routes,
        });
    }

    Ok(ScenarioMap {
        kind: ScenarioKind::Intersection,
        lanes,
        drivable: DrivableRegion {
            polygons,
            holes: vec![],
        },
        spawn_roads,
        lane_sequences: vec![vec![1]; 4],
    })
}

fn build_roundabout(p: &ScenarioParams) -> Result<ScenarioMap, GeometryError> {
    let w = p.lane_width;
    let len = p.arm_length;
    let r = p.ring_radius;
    if r <= w {
        return Err(GeometryError::InvalidParameter(format!(
            "ring_radius ({r}) must exceed lane_width ({w})"
        )));
    }
    let arm_inner = r + w / 2.0; // arms begin at the ring's outer edge
    let merge_offset = 0.35; // radians between an arm and its ring entry/exit

    let ring_arc = |from: f64, to: f64| -> Vec<Vec2> {
        let span = (to - from).rem_euclid(TAU);
        let steps = ((span / 0.1).ceil() as usize).max(2);
        (0..=steps)
            .map(|i| {
                let a = from + span * i as f64 / steps as f64;
                Vec2::new(r * a.cos(), r * a.sin())
            })
            .collect()
    };

    let mut lanes = Vec::new();
    let mut polygons = Vec::new();
    let mut inbound = Vec::new();
    let mut outbound = Vec::new();
    let arm_names = ["east", "north", "west", "south"];

    // Full ring centerline, as a lane of its own.
    let mut ring_pts = circle_polygon(Vec2::zeros(), r, 72);
    ring_pts.push(ring_pts[0]);
    lanes.push(LaneSegment {
        id: "ring".into(),
        centerline: Polyline::new(ring_pts)?,
        width: w,
    });

    for (k, name) in arm_names.iter().enumerate() {
        let theta = TAU * k as f64 / 4.0;
        let d = super::unit(theta);
        let n = rot90(d);
        let lane_in = Polyline::new(vec![
            d * (arm_inner + len) + n * (w / 2.0),
            d * arm_inner + n * (w / 2.0),
        ])?;
        let lane_out = Polyline::new(vec![
            d * arm_inner - n * (w / 2.0),
            d * (arm_inner + len) - n * (w / 2.0),
        ])?;
        lanes.push(LaneSegment {
            id: format!("{name}_in"),
            centerline: lane_in.clone(),
            width: w,
        });
        lanes.push(LaneSegment {
            id: format!("{name}_out"),
            centerline: lane_out.clone(),
            width: w,
        });
        inbound.push(lane_in);
        outbound.push(lane_out);
        // Arm pavement reaches into the annulus so junction curves stay on
        // the drivable union.
        polygons.push(arm_rect(d, r - w / 2.0, arm_inner + len + END_MARGIN, w));
    }

    let mut spawn_roads = Vec::new();
    for k in 0..4 {
        let theta = TAU * k as f64 / 4.0;
        let entry_angle = theta + merge_offset;
        let entry_point = Vec2::new(r * entry_angle.cos(), r * entry_angle.sin());
        let entry_tangent = super::unit(entry_angle + TAU / 4.0); // counterclockwise
        let enter = connector(inbound[k].end(), -super::unit(theta), entry_point, entry_tangent);

        let mut routes = Vec::new();
        for off in 1..4 {
            let m = (k + off) % 4;
            let exit_theta = TAU * m as f64 / 4.0;
            let exit_angle = exit_theta - merge_offset;
            let exit_point = Vec2::new(r * exit_angle.cos(), r * exit_angle.sin());
            let exit_tangent = super::unit(exit_angle + TAU / 4.0);
            let arc = ring_arc(entry_angle, exit_angle);
            let leave = connector(exit_point, exit_tangent, outbound[m].start(), super::unit(exit_theta));
            routes.push(Polyline::concat(&[
                &inbound[k],
                &Polyline::new(enter.clone())?,
                &Polyline::new(arc)?,
                &Polyline::new(leave)?,
                &outbound[m],
            ])?);
        }
        spawn_roads.push(SpawnRoad {
            id: format!("{}_in", arm_names[k]),
            lane: 1 + 2 * k,
            spawn_range: (0.0, p.spawn_span * len),
            routes,
        });
    }

    let drivable = DrivableRegion {
        polygons: {
            let mut v = vec![circle_polygon(Vec2::zeros(), r + w / 2.0, 64)];
            v.extend(polygons);
            v
        },
        holes: vec![circle_polygon(Vec2::zeros(), r - w / 2.0, 64)],
    };

    Ok(ScenarioMap {
        kind: ScenarioKind::Roundabout,
        lanes,
        drivable,
        spawn_roads,
        lane_sequences: vec![vec![1]; 4],
    })
}

fn build_bottleneck(p: &ScenarioParams) -> Result<ScenarioMap, GeometryError> {
    let w = p.lane_width;
    let wide = p.arm_length;
    let taper = p.taper_length;
    let neck = p.neck_length;
    let total = wide + taper + neck;

    let mut lanes = Vec::new();
    let mut spawn_roads = Vec::new();

    // Eastbound occupies y < 0 and narrows as x grows; westbound mirrors it
    // by a 180-degree rotation about the map center.
    let mirror = |v: Vec2| Vec2::new(total - v.x, -v.y);
    for (dir_idx, dir_name) in ["east", "west"].iter().enumerate() {
        let neck_y = -(w / 2.0);
        let neck_line = vec![Vec2::new(wide + taper, neck_y), Vec2::new(total, neck_y)];
        for lane_k in 0..4usize {
            let y = -(w / 2.0) - lane_k as f64 * w;
            let wide_line = vec![Vec2::new(0.0, y), Vec2::new(wide, y)];
            let merge = connector(
                Vec2::new(wide, y),
                Vec2::new(1.0, 0.0),
                Vec2::new(wide + taper, neck_y),
                Vec2::new(1.0, 0.0),
            );
            let mut pts: Vec<Vec2> = Vec::new();
            for chunk in [&wide_line[..], &merge[..], &neck_line[..]] {
                for &q in chunk {
                    if pts.last().is_none_or(|l| (q - l).norm() > 1e-9) {
                        pts.push(q);
                    }
                }
            }
            if dir_idx == 1 {
                pts = pts.into_iter().map(mirror).collect();
            }
            let route = Polyline::new(pts)?;
            let lane_line = if dir_idx == 0 {
                wide_line.clone()
            } else {
                wide_line.iter().map(|&q| mirror(q)).collect()
            };
            lanes.push(LaneSegment {
                id: format!("{dir_name}_wide_{lane_k}"),
                centerline: Polyline::new(lane_line)?,
                width: w,
            });
            spawn_roads.push(SpawnRoad {
                id: format!("{dir_name}_wide_{lane_k}"),
                lane: lanes.len() - 1,
                spawn_range: (0.0, p.spawn_span * wide),
                routes: vec![route],
            });
        }
        let neck_pts = if dir_idx == 0 {
            neck_line.clone()
        } else {
            neck_line.iter().map(|&q| mirror(q)).collect()
        };
        lanes.push(LaneSegment {
            id: format!("{dir_name}_neck"),
            centerline: Polyline::new(neck_pts)?,
            width: w,
        });
    }

    // Single boundary ring covering both halves.
    let m = END_MARGIN;
    let polygon = vec![
        Vec2::new(-m, -4.0 * w),
        Vec2::new(wide, -4.0 * w),
        Vec2::new(wide + taper, -w),
        Vec2::new(total + m, -w),
        Vec2::new(total + m, 4.0 * w),
        Vec2::new(total - wide, 4.0 * w),
        Vec2::new(total - wide - taper, w),
        Vec2::new(-m, w),
    ];

    Ok(ScenarioMap {
        kind: ScenarioKind::Bottleneck,
        lanes,
        drivable: DrivableRegion {
            polygons: vec![polygon],
            holes: vec![],
        },
        spawn_roads,
        lane_sequences: vec![vec![4, 1], vec![4, 1]],
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    fn all_kinds() -> [ScenarioKind; 4] {
        [
            ScenarioKind::Intersection,
            ScenarioKind::Roundabout,
            ScenarioKind::Bottleneck,
            ScenarioKind::StraightRoad,
        ]
    }

    #[test]
    fn rejects_nonpositive_dimensions() {
        let bad = ScenarioParams {
            lane_width: 0.0,
            ..ScenarioParams::default()
        };
        assert!(build_scenario(ScenarioKind::Intersection, &bad).is_err());
        let bad = ScenarioParams {
            arm_length: -3.0,
            ..ScenarioParams::default()
        };
        assert!(build_scenario(ScenarioKind::Roundabout, &bad).is_err());
    }

    #[test]
    fn intersection_has_four_spawn_roads() {
        let map = build_scenario(ScenarioKind::Intersection, &ScenarioParams::default()).unwrap();
        assert_eq!(map.spawn_roads.len(), 4);
        for road in &map.spawn_roads {
            assert_eq!(road.routes.len(), 3);
        }
    }

    #[test]
    fn bottleneck_narrows_four_to_one() {
        let map = build_scenario(ScenarioKind::Bottleneck, &ScenarioParams::default()).unwrap();
        assert_eq!(map.lane_sequences, vec![vec![4, 1], vec![4, 1]]);
        assert_eq!(map.spawn_roads.len(), 8);
    }

    #[test]
    fn straight_road_is_a_single_lane() {
        let map = build_scenario(ScenarioKind::StraightRoad, &ScenarioParams::default()).unwrap();
        assert_eq!(map.lanes.len(), 1);
        assert_eq!(map.spawn_roads.len(), 1);
        assert_eq!(map.spawn_roads[0].routes.len(), 1);
        assert!((map.spawn_roads[0].routes[0].total_length() - 100.0).abs() < 1e-12);
    }

    #[test]
    fn straight_route_equals_lane_centerline() {
        let map = build_scenario(ScenarioKind::StraightRoad, &ScenarioParams::default()).unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(1);
        let route = map.sample_route(0, 10.0, &mut rng).unwrap();
        assert_eq!(route.waypoints().points(), map.lanes[0].centerline.points());
    }

    #[test]
    fn sampling_is_seed_deterministic() {
        let map = build_scenario(ScenarioKind::Intersection, &ScenarioParams::default()).unwrap();
        let r1 = map
            .sample_route(2, 10.0, &mut ChaCha8Rng::seed_from_u64(42))
            .unwrap();
        let r2 = map
            .sample_route(2, 10.0, &mut ChaCha8Rng::seed_from_u64(42))
            .unwrap();
        assert_eq!(r1.waypoints().points(), r2.waypoints().points());
    }

    #[test]
    fn all_three_exits_are_reachable_from_one_arm() {
        let map = build_scenario(ScenarioKind::Intersection, &ScenarioParams::default()).unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(7);
        let mut seen = std::collections::BTreeSet::new();
        for _ in 0..1000 {
            let route = map.sample_route(0, 10.0, &mut rng).unwrap();
            let end = route.waypoints().end();
            seen.insert((end.x.round() as i64, end.y.round() as i64));
        }
        assert_eq!(seen.len(), 3, "expected left/straight/right endpoints");
    }

    #[test]
    fn lane_centerlines_stay_inside_drivable_region() {
        for kind in all_kinds() {
            let map = build_scenario(kind, &ScenarioParams::default()).unwrap();
            for lane in &map.lanes {
                let total = lane.centerline.total_length();
                let steps = (total / 0.5).ceil() as usize;
                for i in 0..=steps {
                    let s = (total * i as f64 / steps as f64).clamp(0.05, total - 0.05);
                    let p = lane.centerline.point_at(s);
                    assert!(
                        map.contains(p),
                        "{kind:?}: lane {} point {p:?} off drivable region",
                        lane.id
                    );
                }
            }
        }
    }

    #[test]
    fn route_templates_stay_inside_drivable_region() {
        for kind in all_kinds() {
            let map = build_scenario(kind, &ScenarioParams::default()).unwrap();
            for road in &map.spawn_roads {
                for route in &road.routes {
                    let total = route.total_length();
                    let steps = (total / 0.5).ceil() as usize;
                    for i in 0..=steps {
                        let s = (total * i as f64 / steps as f64).clamp(0.05, total - 0.05);
                        let p = route.point_at(s);
                        assert!(
                            map.contains(p),
                            "{kind:?}: route from {} leaves drivable region at {p:?} (s={s:.1})",
                            road.id
                        );
                    }
                }
            }
        }
    }

    #[test]
    fn checkpoints_lie_on_route_with_uniform_spacing() {
        let map = build_scenario(ScenarioKind::Roundabout, &ScenarioParams::default()).unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(3);
        for road in 0..4 {
            let route = map.sample_route(road, 10.0, &mut rng).unwrap();
            let arcs = route.checkpoint_arcs();
            for w in arcs.windows(2) {
                assert!(w[1] > w[0]);
            }
            // All gaps except the final one equal the configured spacing.
            assert!((arcs[0] - 10.0).abs() < 1e-9);
            for w in arcs[..arcs.len() - 1].windows(2) {
                assert!((w[1] - w[0] - 10.0).abs() < 1e-9);
            }
            assert!(arcs.last().unwrap() - arcs[arcs.len() - 2] <= 10.0 + 1e-9);
            for (cp, &arc) in route.checkpoints().iter().zip(arcs) {
                assert!((route.waypoints().point_at(arc) - cp).norm() < 1e-9);
            }
        }
    }

    #[test]
    fn checkpoint_queries_follow_the_spec_frames() {
        let wp = Polyline::new(vec![Vec2::new(0.0, 0.0), Vec2::new(20.0, 0.0)]).unwrap();
        let route = ReferenceRoute::from_waypoints(wp, 5.0);
        // Ego at origin heading +x: checkpoints dead ahead.
        let pose = Pose::new(Vec2::zeros(), Vec2::new(1.0, 0.0));
        let [a, b] = route.next_checkpoints(&pose);
        assert!((a - Vec2::new(5.0, 0.0)).norm() < 1e-12);
        assert!((b - Vec2::new(10.0, 0.0)).norm() < 1e-12);

        // Ego heading +y: a world checkpoint at (5, 0) reads (0, -5) in ego frame.
        let pose_up = Pose::new(Vec2::zeros(), Vec2::new(0.0, 1.0));
        let [a, _] = route.next_checkpoints(&pose_up);
        assert!((a - Vec2::new(0.0, -5.0)).norm() < 1e-12);

        // Past all but the last checkpoint: the destination repeats.
        let pose_end = Pose::new(Vec2::new(16.0, 0.0), Vec2::new(1.0, 0.0));
        let [a, b] = route.next_checkpoints(&pose_end);
        assert_eq!(a, b);
        assert!((a - pose_end.world_to_ego(Vec2::new(20.0, 0.0))).norm() < 1e-12);
    }
}
