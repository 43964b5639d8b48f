//! Maximal separated point sets built ring by ring, with their partition cells.

use std::f64::consts::{FRAC_PI_2, PI};

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};
use statrs::function::beta::beta_reg;

use super::distance::dist;
use super::point::Point;
use super::weight::{Domain, WeightSpec};
use crate::error::{Error, Result};

/// Hierarchical separated set on a sphere S^k (or the upper hemisphere when `polar_max = pi/2`).
#[derive(Clone, Debug, Serialize, Deserialize)]
pub enum SphereTree {
    /// Equispaced points on S^1.
    Circle { m: usize, offset: f64 },
    /// Polar zones of a sphere S^k, k >= 2, each carrying a separated set of S^{k-1}.
    Zones {
        k: usize,
        polar_max: f64,
        zones: Vec<Zone>,
    },
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct Zone {
    pub lo: f64,
    pub hi: f64,
    pub center: f64,
    pub start: usize,
    pub sub: SphereTree,
}

/// Parameter box of a cell: polar intervals from the outermost sphere inward, then an azimuth arc.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct AngleBox {
    pub polar: Vec<(f64, f64)>,
    pub polar_max: Vec<f64>,
    pub azimuth: (f64, f64),
}

impl SphereTree {
    /// Builds an `eps`-separated set of S^k (geodesic metric), restricted to polar angles <= polar_max.
    pub fn build(k: usize, polar_max: f64, eps: f64, rng: &mut ChaCha8Rng) -> Self {
        if k == 1 {
            let m = if eps > PI {
                1
            } else {
                ((2.0 * PI / eps).floor() as usize).max(1)
            };
            let offset = rng.gen_range(0.0..(2.0 * PI / m as f64));
            return SphereTree::Circle { m, offset };
        }
        let nz = ((polar_max / eps).floor() as usize).max(1);
        let width = polar_max / nz as f64;
        let mut zones = Vec::with_capacity(nz);
        let mut start = 0;
        for i in 0..nz {
            let th = (i as f64 + 0.5) * width;
            let (s, c) = th.sin_cos();
            // geodesic distances on S^k never exceed pi
            let cstar = (eps.min(PI).cos() - c * c) / (s * s);
            let psi = if cstar <= -1.0 {
                2.0 * PI
            } else {
                cstar.min(1.0).acos()
            };
            let sub = SphereTree::build(k - 1, PI, psi, rng);
            let n = sub.len();
            zones.push(Zone {
                lo: i as f64 * width,
                hi: (i + 1) as f64 * width,
                center: th,
                start,
                sub,
            });
            start += n;
        }
        SphereTree::Zones {
            k,
            polar_max,
            zones,
        }
    }

    pub fn len(&self) -> usize {
        match self {
            SphereTree::Circle { m, .. } => *m,
            SphereTree::Zones { zones, .. } => {
                zones.last().map(|z| z.start + z.sub.len()).unwrap_or(0)
            }
        }
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }

    /// Ambient dimension k + 1 of the sphere.
    pub fn ambient(&self) -> usize {
        match self {
            SphereTree::Circle { .. } => 2,
            SphereTree::Zones { k, .. } => k + 1,
        }
    }

    /// Points (unit vectors) with their cells, in enumeration order.
    pub fn points(&self) -> Vec<([f64; 4], AngleBox)> {
        match self {
            SphereTree::Circle { m, offset } => (0..*m)
                .map(|i| {
                    let h = PI / *m as f64;
                    let ph = offset + 2.0 * h * i as f64;
                    let mut v = [0.0; 4];
                    v[0] = ph.cos();
                    v[1] = ph.sin();
                    (
                        v,
                        AngleBox {
                            polar: vec![],
                            polar_max: vec![],
                            azimuth: (ph - h, ph + h),
                        },
                    )
                })
                .collect(),
            SphereTree::Zones {
                k,
                polar_max,
                zones,
            } => {
                let mut out = Vec::with_capacity(self.len());
                for z in zones {
                    let (s, c) = z.center.sin_cos();
                    for (q, cell) in z.sub.points() {
                        let mut v = [0.0; 4];
                        for i in 0..*k {
                            v[i] = s * q[i];
                        }
                        v[*k] = c;
                        let mut polar = vec![(z.lo, z.hi)];
                        polar.extend(cell.polar);
                        let mut pm = vec![*polar_max];
                        pm.extend(cell.polar_max);
                        out.push((
                            v,
                            AngleBox {
                                polar,
                                polar_max: pm,
                                azimuth: cell.azimuth,
                            },
                        ));
                    }
                }
                out
            }
        }
    }

    /// Index of the cell containing the unit vector `v`.
    pub fn locate(&self, v: &[f64]) -> usize {
        match self {
            SphereTree::Circle { m, offset } => {
                let h = 2.0 * PI / *m as f64;
                let ph = v[1].atan2(v[0]);
                let rel = (ph - offset + h / 2.0).rem_euclid(2.0 * PI);
                ((rel / h).floor() as usize).min(m - 1)
            }
            SphereTree::Zones { k, zones, .. } => {
                let c = v[*k].clamp(-1.0, 1.0);
                let th = c.acos();
                let iz = zones
                    .iter()
                    .position(|z| th < z.hi)
                    .unwrap_or(zones.len() - 1);
                let z = &zones[iz];
                let s: f64 = v[..*k].iter().map(|a| a * a).sum::<f64>().sqrt();
                let mut q = [0.0; 4];
                if s > 0.0 {
                    for i in 0..*k {
                        q[i] = v[i] / s;
                    }
                } else {
                    q[0] = 1.0;
                }
                z.start + z.sub.locate(&q[..*k])
            }
        }
    }
}

/// Normalized measure of a cell box: uniform on spheres, weighted by cos^{2 mu} of the outermost polar
/// angle on the hemisphere.
pub fn angle_box_mass(b: &AngleBox, ambient: usize, mu: f64) -> f64 {
    let mut m = (b.azimuth.1 - b.azimuth.0) / (2.0 * PI);
    let mut kdim = ambient - 1;
    for (i, (&(lo, hi), &pm)) in b.polar.iter().zip(&b.polar_max).enumerate() {
        let kk = kdim as f64;
        let frac = if i == 0 && pm < PI {
            // hemisphere: sin^{k-1} cos^{2 mu}, y = sin^2 theta
            let a = kk / 2.0;
            let bb = mu + 0.5;
            let f = |th: f64| beta_reg(a, bb, th.sin().powi(2).min(1.0));
            f(hi.min(FRAC_PI_2)) - f(lo)
        } else {
            let a = kk / 2.0;
            let f = |th: f64| beta_reg(a, a, ((1.0 - th.cos()) / 2.0).clamp(0.0, 1.0));
            f(hi) - f(lo)
        };
        m *= frac;
        kdim -= 1;
    }
    m
}

/// One height ring of a separated set.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct Ring {
    pub j: usize,
    pub theta: f64,
    pub theta_lo: f64,
    pub theta_hi: f64,
    pub t: f64,
    pub inner_eps: f64,
    pub start: usize,
    pub tree: SphereTree,
}

/// Separated node set with partition cells.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct SeparatedSet {
    pub domain: Domain,
    pub d: usize,
    pub eps: f64,
    pub seed: u64,
    pub nodes: Vec<Point>,
    pub ring_index: Vec<usize>,
    pub cells: Vec<AngleBox>,
    /// Per node: (inscribed, circumscribed) cell radius estimates.
    pub cell_bounds: Vec<(f64, f64)>,
    pub rings: Vec<Ring>,
}

fn inner_sphere(domain: Domain, d: usize) -> (usize, f64) {
    match domain {
        Domain::Surface => (d - 1, PI),
        Domain::Cone => (d, FRAC_PI_2),
    }
}

/// Inner separation needed on a ring at height t so that points are eps apart intrinsically.
pub fn ring_inner_eps(t: f64, eps: f64) -> f64 {
    let q = (eps / 2.0).sin() / t.sqrt();
    if q >= 1.0 {
        2.0 * PI
    } else {
        4.0 * q.asin()
    }
}

/// Builds a maximal eps-separated subset of the domain.
pub fn build_separated_set(domain: Domain, d: usize, eps: f64, seed: u64) -> Result<SeparatedSet> {
    if !(eps > 0.0) || !eps.is_finite() {
        return Err(Error::InvalidParameter(format!(
            "eps must be positive, got {eps}"
        )));
    }
    if d != 2 && d != 3 {
        return Err(Error::Unsupported(format!("dimension d = {d}")));
    }
    let nr = (PI / (2.0 * eps)).floor() as usize;
    if nr == 0 {
        return Err(Error::NoRings { eps });
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let (k, pmax) = inner_sphere(domain, d);
    let mut rings = Vec::with_capacity(nr);
    let mut nodes = Vec::new();
    let mut ring_index = Vec::new();
    let mut cells = Vec::new();
    for j in 1..=nr {
        let theta = (2 * j - 1) as f64 * PI / (2 * nr) as f64;
        let t = (theta / 2.0).sin().powi(2);
        let ie = ring_inner_eps(t, eps);
        let tree = SphereTree::build(k, pmax, ie, &mut rng);
        let start = nodes.len();
        for (v, cell) in tree.points() {
            nodes.push(inner_to_point(domain, d, &v, t));
            ring_index.push(j);
            cells.push(cell);
        }
        rings.push(Ring {
            j,
            theta,
            theta_lo: (j - 1) as f64 * PI / nr as f64,
            theta_hi: j as f64 * PI / nr as f64,
            t,
            inner_eps: ie,
            start,
            tree,
        });
    }
    let mut set = SeparatedSet {
        domain,
        d,
        eps,
        seed,
        nodes,
        ring_index,
        cells,
        cell_bounds: vec![],
        rings,
    };
    set.cell_bounds = set.compute_cell_bounds(5);
    Ok(set)
}

/// Point of the domain at height t from a unit vector of the inner sphere.
fn inner_to_point(domain: Domain, d: usize, v: &[f64], t: f64) -> Point {
    // surface: x = t v; cone: v on the hemisphere, ball point u = v[..d]
    let _ = domain;
    let mut p = Point::on_ray(&v[..d], t);
    p.t = t;
    p
}

impl SeparatedSet {
    pub fn len(&self) -> usize {
        self.nodes.len()
    }

    pub fn is_empty(&self) -> bool {
        self.nodes.is_empty()
    }

    pub fn ambient_inner(&self) -> usize {
        inner_sphere(self.domain, self.d).0 + 1
    }

    /// Inner-sphere unit vector of a domain point.
    pub fn inner_vector(&self, p: &Point) -> [f64; 4] {
        let mut v = [0.0; 4];
        match self.domain {
            Domain::Surface => {
                let dir = p.direction(self.d);
                v[..self.d].copy_from_slice(&dir[..self.d]);
            }
            Domain::Cone => {
                let l = p.lift_cone(self.d);
                v[..=self.d].copy_from_slice(&l[..=self.d]);
            }
        }
        v
    }

    /// Node whose cell contains p.
    pub fn locate(&self, p: &Point) -> usize {
        let theta = 2.0 * p.t.clamp(0.0, 1.0).sqrt().asin();
        let nr = self.rings.len();
        let j = ((theta / (PI / nr as f64)).floor() as usize).min(nr - 1);
        let ring = &self.rings[j];
        let v = self.inner_vector(p);
        ring.start + ring.tree.locate(&v[..self.ambient_inner()])
    }

    /// Maps a parameter tuple (theta, polar..., azimuth) to a point.
    fn box_point(&self, theta: f64, polar: &[f64], az: f64) -> Point {
        let t = (theta / 2.0).sin().powi(2);
        let amb = self.ambient_inner();
        let mut v = [0.0; 4];
        // innermost circle
        let mut cur = vec![az.cos(), az.sin()];
        for &th in polar.iter().rev() {
            let (s, c) = th.sin_cos();
            let mut nxt: Vec<f64> = cur.iter().map(|a| s * a).collect();
            nxt.push(c);
            cur = nxt;
        }
        v[..amb].copy_from_slice(&cur[..amb]);
        inner_to_point(self.domain, self.d, &v, t)
    }

    /// Normalized weight mass of each cell.
    pub fn cell_masses(&self, w: &WeightSpec) -> Vec<f64> {
        let e = w.t_exponent();
        let a = e + 1.0;
        let b = w.gamma + 1.0;
        let ring_mass: Vec<f64> = self
            .rings
            .iter()
            .map(|r| {
                let f = |th: f64| beta_reg(a, b, (th / 2.0).sin().powi(2).clamp(0.0, 1.0));
                f(r.theta_hi) - f(r.theta_lo)
            })
            .collect();
        let mu = if self.domain == Domain::Cone {
            w.mu
        } else {
            0.0
        };
        let amb = self.ambient_inner();
        self.cells
            .iter()
            .zip(&self.ring_index)
            .map(|(c, &j)| ring_mass[j - 1] * angle_box_mass(c, amb, mu))
            .collect()
    }

    fn compute_cell_bounds(&self, grid: usize) -> Vec<(f64, f64)> {
        use rayon::prelude::*;
        (0..self.len())
            .into_par_iter()
            .map(|i| {
                let ring = &self.rings[self.ring_index[i] - 1];
                let cell = &self.cells[i];
                let mut params: Vec<(f64, f64, bool, bool)> = Vec::new();
                // (lo, hi, lo-face counts, hi-face counts)
                params.push((
                    ring.theta_lo,
                    ring.theta_hi,
                    ring.theta_lo > 0.0,
                    ring.theta_hi < PI,
                ));
                for (&(lo, hi), &pm) in cell.polar.iter().zip(&cell.polar_max) {
                    params.push((lo, hi, lo > 0.0, hi < pm));
                }
                let full = (cell.azimuth.1 - cell.azimuth.0) >= 2.0 * PI - 1e-12;
                params.push((cell.azimuth.0, cell.azimuth.1, !full, !full));
                let np = params.len();
                let node = &self.nodes[i];
                let mut r_hi: f64 = 0.0;
                let mut r_lo = f64::INFINITY;
                let mut idx = vec![0usize; np];
                let total = grid.pow(np as u32);
                let mut vals = vec![0.0; np];
                for lin in 0..total {
                    let mut rem = lin;
                    for p in 0..np {
                        idx[p] = rem % grid;
                        rem /= grid;
                    }
                    for p in 0..np {
                        let (lo, hi, _, _) = params[p];
                        vals[p] = lo + (hi - lo) * idx[p] as f64 / (grid - 1) as f64;
                    }
                    let q = self.box_point(vals[0], &vals[1..np - 1], vals[np - 1]);
                    let dd = dist(self.domain, self.d, node, &q);
                    r_hi = r_hi.max(dd);
                    let on_face = (0..np).any(|p| {
                        (idx[p] == 0 && params[p].2) || (idx[p] == grid - 1 && params[p].3)
                    });
                    if on_face {
                        r_lo = r_lo.min(dd);
                    }
                }
                if !r_lo.is_finite() {
                    r_lo = r_hi;
                }
                (r_lo, r_hi)
            })
            .collect()
    }

    /// Points of the parameter box of cell i on a grid with `grid` values per parameter.
    pub fn cell_samples(&self, i: usize, grid: usize) -> Vec<Point> {
        let grid = grid.max(2);
        let ring = &self.rings[self.ring_index[i] - 1];
        let cell = &self.cells[i];
        let mut params = vec![(ring.theta_lo, ring.theta_hi)];
        params.extend(cell.polar.iter().cloned());
        params.push(cell.azimuth);
        let np = params.len();
        let total = grid.pow(np as u32);
        let mut vals = vec![0.0; np];
        (0..total)
            .map(|lin| {
                let mut rem = lin;
                for (p, v) in vals.iter_mut().enumerate() {
                    let k = rem % grid;
                    rem /= grid;
                    *v = params[p].0 + (params[p].1 - params[p].0) * k as f64 / (grid - 1) as f64;
                }
                self.box_point(vals[0], &vals[1..np - 1], vals[np - 1])
            })
            .collect()
    }

    /// Smallest pairwise intrinsic distance; only same-ring and adjacent-ring pairs can be closer than
    /// the ring spacing.
    pub fn min_separation(&self) -> f64 {
        use rayon::prelude::*;
        let nr = self.rings.len();
        let ring_end = |j: usize| {
            if j + 1 < nr {
                self.rings[j + 1].start
            } else {
                self.len()
            }
        };
        (0..nr)
            .into_par_iter()
            .map(|j| {
                let mut m = f64::INFINITY;
                let (s0, e0) = (self.rings[j].start, ring_end(j));
                let e1 = if j + 1 < nr { ring_end(j + 1) } else { e0 };
                for a in s0..e0 {
                    for b in (a + 1)..e1 {
                        m = m.min(dist(self.domain, self.d, &self.nodes[a], &self.nodes[b]));
                    }
                }
                m
            })
            .reduce(|| f64::INFINITY, f64::min)
    }

    /// Covering estimate: max over probes of the distance to the node of the containing cell.
    pub fn covering_estimate(&self, probes: usize, seed: u64) -> f64 {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let pts: Vec<Point> = (0..probes)
            .map(|_| super::point::random_point(self.domain, self.d, &mut rng))
            .collect();
        pts.iter()
            .map(|p| dist(self.domain, self.d, p, &self.nodes[self.locate(p)]))
            .fold(0.0, f64::max)
    }
}
