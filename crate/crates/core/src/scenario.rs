//! Propagation geometry: user distributions, the path-loss law, the average
//! inverse attenuation constant, and symmetric multi-cell interference
//! aggregates.

use crate::error::{Error, Result};
use rand::Rng;
use std::f64::consts::PI;

/// Shape of the coverage area served by one base station.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum Geometry {
    /// Annulus: users uniform between d_min and d_max from the BS.
    Disc { d_min: f64, d_max: f64 },
    /// Square cell of the given side, users uniform outside the central
    /// d_min exclusion disc around the BS.
    Square { side: f64, d_min: f64 },
}

/// Cell geometry plus the power-law attenuation l(x) = dbar / ||x||^kappa.
///
/// The average inverse attenuation `s_x` is computed once at construction
/// and cached; it drives every PA-power and optimizer formula.
#[derive(Debug, Clone, PartialEq)]
pub struct PropagationScenario {
    pub geometry: Geometry,
    pub kappa: f64,
    pub dbar: f64,
    s_x: f64,
}

impl PropagationScenario {
    pub fn new(geometry: Geometry, kappa: f64, dbar: f64) -> Result<Self> {
        validate_geometry(&geometry)?;
        if !(kappa >= 2.0) {
            return Err(Error::Scenario(format!(
                "path-loss exponent kappa = {kappa} must be >= 2"
            )));
        }
        if !(dbar > 0.0) {
            return Err(Error::Scenario(format!(
                "attenuation constant dbar = {dbar} must be > 0"
            )));
        }
        let s_x = average_inverse_attenuation(&geometry, kappa, dbar)?;
        Ok(Self {
            geometry,
            kappa,
            dbar,
            s_x,
        })
    }

    /// Cached E{1 / l(x)} over the user distribution.
    pub fn s_x(&self) -> f64 {
        self.s_x
    }

    /// Average channel attenuation l(x) at a user position (BS at origin).
    pub fn attenuation(&self, x: [f64; 2]) -> f64 {
        let r = (x[0] * x[0] + x[1] * x[1]).sqrt();
        self.dbar / r.powf(self.kappa)
    }

    /// Draw one user position uniformly over the support of the user
    /// distribution. Always satisfies ||x|| >= d_min.
    pub fn sample_user_location<R: Rng + ?Sized>(&self, rng: &mut R) -> [f64; 2] {
        match self.geometry {
            Geometry::Disc { d_min, d_max } => {
                let u: f64 = rng.gen();
                let r = (d_min * d_min + u * (d_max * d_max - d_min * d_min)).sqrt();
                let theta = rng.gen::<f64>() * 2.0 * PI;
                [r * theta.cos(), r * theta.sin()]
            }
            Geometry::Square { side, d_min } => loop {
                let x = (rng.gen::<f64>() - 0.5) * side;
                let y = (rng.gen::<f64>() - 0.5) * side;
                if x * x + y * y >= d_min * d_min {
                    return [x, y];
                }
            },
        }
    }

    /// Cell footprint used to normalize area throughput.
    pub fn cell_area_m2(&self) -> f64 {
        match self.geometry {
            Geometry::Disc { d_max, .. } => PI * d_max * d_max,
            Geometry::Square { side, .. } => side * side,
        }
    }
}

fn validate_geometry(geometry: &Geometry) -> Result<()> {
    match *geometry {
        Geometry::Disc { d_min, d_max } => {
            if !(d_min >= 0.0 && d_min < d_max && d_max.is_finite()) {
                return Err(Error::Scenario(format!(
                    "disc requires 0 <= d_min < d_max (got d_min = {d_min}, d_max = {d_max})"
                )));
            }
        }
        Geometry::Square { side, d_min } => {
            if !(d_min >= 0.0 && side.is_finite() && d_min < side / 2.0) {
                return Err(Error::Scenario(format!(
                    "square requires 0 <= d_min < side / 2 (got d_min = {d_min}, side = {side})"
                )));
            }
        }
    }
    Ok(())
}

/// E{1 / l(x)} over the user distribution: closed form for the disc, a
/// deterministic Gauss-Legendre integral for the square.
pub fn average_inverse_attenuation(geometry: &Geometry, kappa: f64, dbar: f64) -> Result<f64> {
    validate_geometry(geometry)?;
    match *geometry {
        Geometry::Disc { d_min, d_max } => {
            let num = d_max.powf(kappa + 2.0) - d_min.powf(kappa + 2.0);
            let den = dbar * (1.0 + kappa / 2.0) * (d_max * d_max - d_min * d_min);
            Ok(num / den)
        }
        Geometry::Square { side, d_min } => {
            // Integral of r^kappa over the square, then subtract the exact
            // polar integral over the exclusion disc.
            let (nodes, weights) = gauss_legendre(64);
            let half = side / 2.0;
            let mut square_int = 0.0;
            for (i, &xi) in nodes.iter().enumerate() {
                for (j, &yj) in nodes.iter().enumerate() {
                    let x = half * xi;
                    let y = half * yj;
                    let r = (x * x + y * y).sqrt();
                    square_int += weights[i] * weights[j] * r.powf(kappa);
                }
            }
            square_int *= half * half;
            let disc_int = 2.0 * PI * d_min.powf(kappa + 2.0) / (kappa + 2.0);
            let area = side * side - PI * d_min * d_min;
            Ok((square_int - disc_int) / (area * dbar))
        }
    }
}

const GRID: usize = 5;

/// Symmetric multi-cell layout: a 5x5 grid of identical square cells with
/// the center cell under study, clustered in a 2x2 checkerboard for pilot
/// reuse. Interference aggregates are integrated at construction.
#[derive(Debug, Clone, PartialEq)]
pub struct MulticellScenario {
    pub cell_side: f64,
    pub reuse_factor: u32,
    /// Cluster index (1..=4) per grid cell; the center cell is cluster 1.
    pub clusters: [[u8; GRID]; GRID],
    /// Relative pilot-contamination power, summed over same-pilot cells.
    pub i_pc: f64,
    /// Relative interference from all cells, including the cell itself.
    pub i_total: f64,
    /// Sum of squared attenuation ratios over same-pilot cells.
    pub i_pc2: f64,
}

impl MulticellScenario {
    pub fn new(prop: &PropagationScenario, reuse_factor: u32) -> Result<Self> {
        let Geometry::Square { side, .. } = prop.geometry else {
            return Err(Error::Scenario(
                "multi-cell scenarios require square geometry".into(),
            ));
        };
        let (i_pc, i_total, i_pc2) = multicell_interference(prop, reuse_factor)?;
        let mut clusters = [[0u8; GRID]; GRID];
        for (gi, row) in clusters.iter_mut().enumerate() {
            for (gj, c) in row.iter_mut().enumerate() {
                let i = gi as i32 - 2;
                let j = gj as i32 - 2;
                *c = cluster_of_cell(i, j);
            }
        }
        Ok(Self {
            cell_side: side,
            reuse_factor,
            clusters,
            i_pc,
            i_total,
            i_pc2,
        })
    }

    /// Uplink pilot reuse sets the relative pilot length.
    pub fn tau_ul(&self) -> f64 {
        self.reuse_factor as f64
    }
}

/// Checkerboard cluster of the cell at grid offset (i, j) from the center.
fn cluster_of_cell(i: i32, j: i32) -> u8 {
    1 + (i.rem_euclid(2) + 2 * j.rem_euclid(2)) as u8
}

/// True when the cell at offset (i, j) shares pilots with the center cell.
fn shares_pilots(i: i32, j: i32, reuse_factor: u32) -> bool {
    match reuse_factor {
        1 => true,
        // Clusters {1, 4} share one pilot set, {2, 3} the other.
        2 => (i + j).rem_euclid(2) == 0,
        4 => i.rem_euclid(2) == 0 && j.rem_euclid(2) == 0,
        _ => false,
    }
}

/// Interference aggregates (i_pc, i_total, i_pc2) for the 5x5 grid.
///
/// Each pairwise term is E{ l_j(x) / l_l(x) } for x uniform over the
/// interfering cell minus its own d_min exclusion disc, integrated with
/// 64x64 tensor-product Gauss-Legendre plus an exact polar correction.
pub fn multicell_interference(
    prop: &PropagationScenario,
    reuse_factor: u32,
) -> Result<(f64, f64, f64)> {
    if !matches!(reuse_factor, 1 | 2 | 4) {
        return Err(Error::ReuseFactor(reuse_factor));
    }
    let Geometry::Square { side, d_min } = prop.geometry else {
        return Err(Error::Scenario(
            "multi-cell interference requires square geometry".into(),
        ));
    };
    let mut i_pc = 0.0;
    let mut i_pc2 = 0.0;
    let mut i_total = 1.0; // own-cell term I_jj = 1
    for i in -2i32..=2 {
        for j in -2i32..=2 {
            if i == 0 && j == 0 {
                continue;
            }
            let v = pairwise_ratio(side, d_min, prop.kappa, i, j);
            i_total += v;
            if shares_pilots(i, j, reuse_factor) {
                i_pc += v;
                i_pc2 += v * v;
            }
        }
    }
    Ok((i_pc, i_total, i_pc2))
}

/// E{ (||x - c|| / ||x||)^kappa } for x uniform over the square cell
/// centered at c = (i, j) * side, excluding the d_min disc around c.
fn pairwise_ratio(side: f64, d_min: f64, kappa: f64, i: i32, j: i32) -> f64 {
    let cx = i as f64 * side;
    let cy = j as f64 * side;
    let half = side / 2.0;
    let (nodes, weights) = gauss_legendre(64);

    let ratio = |x: f64, y: f64| -> f64 {
        let r_own = ((x - cx) * (x - cx) + (y - cy) * (y - cy)).sqrt();
        let r_study = (x * x + y * y).sqrt();
        (r_own / r_study).powf(kappa)
    };

    let mut square_int = 0.0;
    for (a, &xi) in nodes.iter().enumerate() {
        for (b, &yj) in nodes.iter().enumerate() {
            square_int += weights[a] * weights[b] * ratio(cx + half * xi, cy + half * yj);
        }
    }
    square_int *= half * half;

    // Exclusion disc around the interfering BS, in polar coordinates; the
    // integrand is smooth there because the studied BS is far away.
    let (rn, rw) = gauss_legendre(24);
    let n_theta = 64;
    let mut disc_int = 0.0;
    for (a, &rt) in rn.iter().enumerate() {
        let r = d_min * 0.5 * (rt + 1.0);
        for t in 0..n_theta {
            let theta = 2.0 * PI * t as f64 / n_theta as f64;
            let x = cx + r * theta.cos();
            let y = cy + r * theta.sin();
            disc_int += rw[a] * (d_min / 2.0) * (2.0 * PI / n_theta as f64) * r * ratio(x, y);
        }
    }

    let area = side * side - PI * d_min * d_min;
    (square_int - disc_int) / area
}

/// Gauss-Legendre nodes and weights on [-1, 1], by Newton iteration on the
/// Legendre recurrence.
pub(crate) fn gauss_legendre(n: usize) -> (Vec<f64>, Vec<f64>) {
    let mut nodes = vec![0.0; n];
    let mut weights = vec![0.0; n];
    let m = n.div_ceil(2);
    for i in 0..m {
        let mut x = (PI * (i as f64 + 0.75) / (n as f64 + 0.5)).cos();
        let mut dp = 0.0;
        for _ in 0..100 {
            let (mut p0, mut p1) = (1.0, x);
            for k in 2..=n {
                let kf = k as f64;
                let p2 = ((2.0 * kf - 1.0) * x * p1 - (kf - 1.0) * p0) / kf;
                p0 = p1;
                p1 = p2;
            }
            dp = n as f64 * (x * p1 - p0) / (x * x - 1.0);
            let dx = p1 / dp;
            x -= dx;
            if dx.abs() < 1e-15 {
                break;
            }
        }
        nodes[i] = -x;
        nodes[n - 1 - i] = x;
        let w = 2.0 / ((1.0 - x * x) * dp * dp);
        weights[i] = w;
        weights[n - 1 - i] = w;
    }
    (nodes, weights)
}
