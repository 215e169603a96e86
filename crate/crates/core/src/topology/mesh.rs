//! Subdivided icosahedra and closed loops on the unit sphere.

use std::collections::{HashMap, HashSet};
use std::fmt::Write as _;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::minkowski::{cross, dot, norm, unit};

pub const MAX_LEVEL: u32 = 8;
/// Largest angle between consecutive loop points.
pub const MAX_LOOP_STEP: f64 = 0.3;

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct SphericalMesh {
    pub vertices: Vec<[f64; 3]>,
    /// Counterclockwise seen from outside.
    pub faces: Vec<[usize; 3]>,
    pub level: u32,
}

pub fn icosphere(level: u32) -> Result<SphericalMesh> {
    if level > MAX_LEVEL {
        return Err(Error::Resource(format!(
            "mesh level {level} exceeds the limit {MAX_LEVEL}"
        )));
    }
    let p = (1.0 + 5f64.sqrt()) / 2.0;
    let raw = [
        [-1.0, p, 0.0],
        [1.0, p, 0.0],
        [-1.0, -p, 0.0],
        [1.0, -p, 0.0],
        [0.0, -1.0, p],
        [0.0, 1.0, p],
        [0.0, -1.0, -p],
        [0.0, 1.0, -p],
        [p, 0.0, -1.0],
        [p, 0.0, 1.0],
        [-p, 0.0, -1.0],
        [-p, 0.0, 1.0],
    ];
    let mut vertices: Vec<[f64; 3]> = raw.iter().map(|v| unit(*v).expect("nonzero")).collect();
    #[rustfmt::skip]
    let mut faces: Vec<[usize; 3]> = vec![
        [0, 11, 5], [0, 5, 1], [0, 1, 7], [0, 7, 10], [0, 10, 11],
        [1, 5, 9], [5, 11, 4], [11, 10, 2], [10, 7, 6], [7, 1, 8],
        [3, 9, 4], [3, 4, 2], [3, 2, 6], [3, 6, 8], [3, 8, 9],
        [4, 9, 5], [2, 4, 11], [6, 2, 10], [8, 6, 7], [9, 8, 1],
    ];
    for _ in 0..level {
        let mut cache: HashMap<(usize, usize), usize> = HashMap::new();
        let mut mid = |a: usize, b: usize, vs: &mut Vec<[f64; 3]>| -> usize {
            *cache.entry((a.min(b), a.max(b))).or_insert_with(|| {
                let (u, v) = (vs[a], vs[b]);
                vs.push(unit([u[0] + v[0], u[1] + v[1], u[2] + v[2]]).expect("non-antipodal edge"));
                vs.len() - 1
            })
        };
        let mut next = Vec::with_capacity(faces.len() * 4);
        for [a, b, c] in faces {
            let ab = mid(a, b, &mut vertices);
            let bc = mid(b, c, &mut vertices);
            let ca = mid(c, a, &mut vertices);
            next.extend([[a, ab, ca], [b, bc, ab], [c, ca, bc], [ab, bc, ca]]);
        }
        faces = next;
    }
    for f in &mut faces {
        let [a, b, c] = f.map(|i| vertices[i]);
        let n = cross(
            [b[0] - a[0], b[1] - a[1], b[2] - a[2]],
            [c[0] - a[0], c[1] - a[1], c[2] - a[2]],
        );
        if dot(n, a) < 0.0 {
            f.swap(1, 2);
        }
    }
    Ok(SphericalMesh {
        vertices,
        faces,
        level,
    })
}

impl SphericalMesh {
    pub fn edge_count(&self) -> usize {
        let edges: HashSet<(usize, usize)> = self
            .faces
            .iter()
            .flat_map(|f| (0..3).map(move |i| (f[i].min(f[(i + 1) % 3]), f[i].max(f[(i + 1) % 3]))))
            .collect();
        edges.len()
    }

    pub fn euler_characteristic(&self) -> i64 {
        self.vertices.len() as i64 - self.edge_count() as i64 + self.faces.len() as i64
    }

    /// Each edge shared by exactly two faces with opposite orientation.
    pub fn is_consistently_oriented(&self) -> bool {
        let mut directed: HashMap<(usize, usize), usize> = HashMap::new();
        for f in &self.faces {
            for i in 0..3 {
                *directed.entry((f[i], f[(i + 1) % 3])).or_default() += 1;
            }
        }
        directed
            .iter()
            .all(|(&(a, b), &n)| n == 1 && directed.get(&(b, a)) == Some(&1))
    }

    /// All faces counterclockwise with respect to the outward normal.
    pub fn is_outward(&self) -> bool {
        self.faces.iter().all(|f| {
            let [a, b, c] = f.map(|i| self.vertices[i]);
            let n = cross(
                [b[0] - a[0], b[1] - a[1], b[2] - a[2]],
                [c[0] - a[0], c[1] - a[1], c[2] - a[2]],
            );
            dot(n, a) > 0.0
        })
    }

    /// Same mesh with every face reversed.
    pub fn reversed(&self) -> SphericalMesh {
        SphericalMesh {
            faces: self.faces.iter().map(|f| [f[0], f[2], f[1]]).collect(),
            ..self.clone()
        }
    }

    /// `v x y z` and `f i j l` lines, 0-based.
    pub fn export_text(&self) -> String {
        let mut s = String::new();
        for v in &self.vertices {
            let _ = writeln!(s, "v {} {} {}", v[0], v[1], v[2]);
        }
        for f in &self.faces {
            let _ = writeln!(s, "f {} {} {}", f[0], f[1], f[2]);
        }
        s
    }

    pub fn centroid(&self, face: usize) -> [f64; 3] {
        let [a, b, c] = self.faces[face].map(|i| self.vertices[i]);
        [
            (a[0] + b[0] + c[0]) / 3.0,
            (a[1] + b[1] + c[1]) / 3.0,
            (a[2] + b[2] + c[2]) / 3.0,
        ]
    }

    /// Boundary of a face region as a closed vertex-index cycle, oriented so
    /// the region lies to its left.
    pub fn region_boundary(&self, region: &[usize]) -> Result<Vec<usize>> {
        let mut directed: HashSet<(usize, usize)> = HashSet::new();
        for &f in region {
            let t = self.faces[f];
            for i in 0..3 {
                directed.insert((t[i], t[(i + 1) % 3]));
            }
        }
        let mut next: HashMap<usize, usize> = HashMap::new();
        for &(a, b) in &directed {
            if !directed.contains(&(b, a)) && next.insert(a, b).is_some() {
                return Err(Error::Degenerate(
                    "region boundary is not a simple loop".into(),
                ));
            }
        }
        let start = *next
            .keys()
            .min()
            .ok_or_else(|| Error::Degenerate("region has no boundary".into()))?;
        let mut cycle = vec![start];
        let mut cur = start;
        loop {
            cur = next[&cur];
            cycle.push(cur);
            if cur == start {
                break;
            }
            if cycle.len() > next.len() + 1 {
                return Err(Error::Degenerate("region boundary does not close".into()));
            }
        }
        if cycle.len() != next.len() + 1 {
            return Err(Error::Degenerate(
                "region boundary has several components".into(),
            ));
        }
        Ok(cycle)
    }
}

/// Closed polyline on the unit sphere (`last == first`).
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct LoopPath {
    points: Vec<[f64; 3]>,
}

fn slerp(a: [f64; 3], b: [f64; 3], t: f64) -> [f64; 3] {
    let c = dot(a, b).clamp(-1.0, 1.0);
    let w = c.acos();
    if w < 1e-15 {
        return a;
    }
    let (sa, sb) = (((1.0 - t) * w).sin() / w.sin(), (t * w).sin() / w.sin());
    unit([
        sa * a[0] + sb * b[0],
        sa * a[1] + sb * b[1],
        sa * a[2] + sb * b[2],
    ])
    .expect("slerp stays on the sphere")
}

/// Solid angle of the geodesic triangle `(a, b, c)`, signed by orientation.
pub fn triangle_solid_angle(a: [f64; 3], b: [f64; 3], c: [f64; 3]) -> f64 {
    let num = dot(a, cross(b, c));
    let den = 1.0 + dot(a, b) + dot(b, c) + dot(c, a);
    2.0 * num.atan2(den)
}

impl LoopPath {
    /// Normalizes the points and closes the loop if needed.
    pub fn new(points: Vec<[f64; 3]>) -> Result<Self> {
        if points.is_empty() {
            return Err(Error::Usage("loop has no points".into()));
        }
        let mut pts: Vec<[f64; 3]> = points.into_iter().map(unit).collect::<Result<_>>()?;
        if pts.first() != pts.last() || pts.len() == 1 {
            pts.push(pts[0]);
        }
        Ok(LoopPath { points: pts })
    }

    /// Geodesic polygon through `corners`, each side cut into `steps` arcs.
    pub fn geodesic_polygon(corners: &[[f64; 3]], steps: usize) -> Result<Self> {
        if corners.is_empty() || steps == 0 {
            return Err(Error::Usage(
                "polygon needs corners and at least one step per side".into(),
            ));
        }
        let cs: Vec<[f64; 3]> = corners.iter().copied().map(unit).collect::<Result<_>>()?;
        let mut pts = Vec::with_capacity(cs.len() * steps + 1);
        for i in 0..cs.len() {
            let (a, b) = (cs[i], cs[(i + 1) % cs.len()]);
            if 1.0 + dot(a, b) < 1e-12 {
                return Err(Error::Domain(
                    "geodesic side between antipodal corners is undefined".into(),
                ));
            }
            for s in 0..steps {
                pts.push(slerp(a, b, s as f64 / steps as f64));
            }
        }
        pts.push(cs[0]);
        Ok(LoopPath { points: pts })
    }

    /// Great circle through `a` and `b` traversed once and then retraced.
    pub fn retraced_great_circle(a: [f64; 3], b: [f64; 3], steps: usize) -> Result<Self> {
        let (a, b) = (unit(a)?, unit(b)?);
        let n = unit(cross(a, b))?;
        let t = cross(n, a);
        let forward: Vec<[f64; 3]> = (0..=steps)
            .map(|i| {
                let phi = std::f64::consts::TAU * i as f64 / steps as f64;
                let (c, s) = (phi.cos(), phi.sin());
                [
                    c * a[0] + s * t[0],
                    c * a[1] + s * t[1],
                    c * a[2] + s * t[2],
                ]
            })
            .collect();
        let mut pts = forward.clone();
        pts.extend(forward.iter().rev().skip(1));
        Ok(LoopPath { points: pts })
    }

    pub fn points(&self) -> &[[f64; 3]] {
        &self.points
    }

    pub fn max_step(&self) -> f64 {
        self.points
            .windows(2)
            .map(|w| dot(w[0], w[1]).clamp(-1.0, 1.0).acos())
            .fold(0.0, f64::max)
    }

    /// Signed solid angle enclosed, positive for counterclockwise loops seen
    /// from outside. Triangles are fanned from the direction of the loop's
    /// vector area; loops with zero vector area enclose nothing.
    pub fn solid_angle(&self) -> f64 {
        let area = self.points.windows(2).fold([0.0; 3], |acc, w| {
            let c = cross(w[0], w[1]);
            [acc[0] + c[0], acc[1] + c[1], acc[2] + c[2]]
        });
        if norm(area) < 1e-12 {
            return 0.0;
        }
        let apex = unit(area).expect("nonzero vector area");
        self.points
            .windows(2)
            .map(|w| triangle_solid_angle(apex, w[0], w[1]))
            .sum()
    }

    /// `self` followed by `other`; both must start at the same point.
    pub fn concat(&self, other: &LoopPath) -> Result<LoopPath> {
        if norm(sub(self.points[0], other.points[0])) > 1e-12 {
            return Err(Error::Usage(
                "concatenated loops must share their base point".into(),
            ));
        }
        let mut pts = self.points.clone();
        pts.extend(&other.points[1..]);
        Ok(LoopPath { points: pts })
    }
}

fn sub(a: [f64; 3], b: [f64; 3]) -> [f64; 3] {
    [a[0] - b[0], a[1] - b[1], a[2] - b[2]]
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::f64::consts::{FRAC_PI_2, PI};

    #[test]
    fn icosphere_counts_and_orientation() {
        let m0 = icosphere(0).unwrap();
        assert_eq!((m0.vertices.len(), m0.faces.len()), (12, 20));
        for level in 0..=4 {
            let m = icosphere(level).unwrap();
            assert_eq!(m.faces.len(), 20 * 4usize.pow(level));
            assert_eq!(m.euler_characteristic(), 2);
            assert!(m.is_consistently_oriented() && m.is_outward());
            assert!(m.vertices.iter().all(|v| (norm(*v) - 1.0).abs() < 1e-15));
            assert!(!m.reversed().is_outward());
        }
        assert_eq!(icosphere(3).unwrap().faces.len(), 1280);
        assert!(matches!(icosphere(9), Err(Error::Resource(_))));
    }

    #[test]
    fn export_format() {
        let t = icosphere(0).unwrap().export_text();
        assert_eq!(t.lines().filter(|l| l.starts_with("v ")).count(), 12);
        let f: Vec<&str> = t.lines().filter(|l| l.starts_with("f ")).collect();
        assert_eq!(f.len(), 20);
        assert_eq!(f[0].split_whitespace().count(), 4);
    }

    #[test]
    fn solid_angles() {
        let oct =
            LoopPath::geodesic_polygon(&[[0.0, 0.0, 1.0], [1.0, 0.0, 0.0], [0.0, 1.0, 0.0]], 10)
                .unwrap();
        assert!((oct.solid_angle() - FRAC_PI_2).abs() < 1e-12);
        let cap = LoopPath::geodesic_polygon(
            &[
                [1.0, 0.0, 0.0],
                [0.0, 1.0, 0.0],
                [-1.0, 0.0, 0.0],
                [0.0, -1.0, 0.0],
            ],
            8,
        )
        .unwrap();
        assert!((cap.solid_angle() - 2.0 * PI).abs() < 1e-12);
        assert!(oct.max_step() < MAX_LOOP_STEP);
        let gc = LoopPath::retraced_great_circle([1.0, 0.0, 0.0], [0.0, 1.0, 0.0], 64).unwrap();
        assert!(gc.solid_angle().abs() < 1e-12);
    }

    #[test]
    fn hemisphere_boundary_is_a_loop() {
        let m = icosphere(3).unwrap();
        let region: Vec<usize> = (0..m.faces.len())
            .filter(|&f| m.centroid(f)[2] > 0.0)
            .collect();
        let b = m.region_boundary(&region).unwrap();
        assert_eq!(b.first(), b.last());
        assert!(b.len() > 10);
    }
}
