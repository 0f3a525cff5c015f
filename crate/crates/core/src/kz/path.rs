//! Piecewise closed-form paths in the configuration space of `n` labelled
//! points in `C`.
//!
//! Each segment moves one pair of points `(a, b)` symmetrically about a
//! centre along an ellipse, all other points staying put:
//! `z_a = c - d(θ)`, `z_b = c + d(θ)` with `d(θ) = rx·cos θ + i·ry·sin θ` and
//! `θ = θ0 + sweep·s`, `s ∈ [0, 1]`.

use alloc::vec::Vec;
use core::f64::consts::PI;

use num_complex::Complex64;

use super::KzError;

/// Positions must match segment endpoints to this accuracy.
const JOIN_TOLERANCE: f64 = 1e-12;

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Segment {
    /// Labels (1-based) of the moving points.
    pub a: usize,
    pub b: usize,
    pub centre: Complex64,
    pub rx: f64,
    pub ry: f64,
    pub theta0: f64,
    pub sweep: f64,
}

impl Segment {
    /// `(d(s), d'(s))`.
    pub fn offset(&self, s: f64) -> (Complex64, Complex64) {
        let theta = self.theta0 + self.sweep * s;
        let (sin, cos) = libm_sincos(theta);
        let d = Complex64::new(self.rx * cos, self.ry * sin);
        let dd = Complex64::new(-self.rx * sin, self.ry * cos) * self.sweep;
        (d, dd)
    }

    pub fn reversed(&self) -> Segment {
        Segment { theta0: self.theta0 + self.sweep, sweep: -self.sweep, ..*self }
    }
}

fn libm_sincos(x: f64) -> (f64, f64) {
    use num_traits::Float;
    (Float::sin(x), Float::cos(x))
}

/// Concatenation of [`Segment`]s starting from a fixed configuration.
#[derive(Debug, Clone, PartialEq)]
pub struct ConfigPath {
    n: usize,
    segments: Vec<Segment>,
    /// `starts[k]` are the positions at the beginning of segment `k`;
    /// the final entry is the endpoint.
    starts: Vec<Vec<Complex64>>,
}

/// The basepoint `{1, 2, …, n}` with point `k` at `k`.
pub fn basepoint(n: usize) -> Vec<Complex64> {
    (1..=n).map(|k| Complex64::new(k as f64, 0.0)).collect()
}

impl ConfigPath {
    pub fn new(n: usize, start: Vec<Complex64>, segments: Vec<Segment>) -> Result<Self, KzError> {
        if start.len() != n {
            return Err(KzError::InvalidPath("start configuration has the wrong size"));
        }
        let mut starts = Vec::with_capacity(segments.len() + 1);
        let mut cur = start;
        for seg in &segments {
            if seg.a == seg.b || seg.a == 0 || seg.b == 0 || seg.a > n || seg.b > n {
                return Err(KzError::InvalidPath("segment labels out of range"));
            }
            let (d0, _) = seg.offset(0.0);
            if (cur[seg.a - 1] - (seg.centre - d0)).norm() > JOIN_TOLERANCE
                || (cur[seg.b - 1] - (seg.centre + d0)).norm() > JOIN_TOLERANCE
            {
                return Err(KzError::InvalidPath("segment does not start at the current configuration"));
            }
            let (d1, _) = seg.offset(1.0);
            let mut next = cur.clone();
            next[seg.a - 1] = seg.centre - d1;
            next[seg.b - 1] = seg.centre + d1;
            starts.push(cur);
            cur = next;
        }
        starts.push(cur);
        Ok(ConfigPath { n, segments, starts })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn segments(&self) -> &[Segment] {
        &self.segments
    }

    pub fn start(&self) -> &[Complex64] {
        &self.starts[0]
    }

    pub fn end(&self) -> &[Complex64] {
        self.starts.last().expect("at least one configuration")
    }

    /// Positions and velocities at parameter `s` of segment `k`.
    pub fn state(&self, k: usize, s: f64) -> (Vec<Complex64>, Vec<Complex64>) {
        let seg = &self.segments[k];
        let mut z = self.starts[k].clone();
        let mut v = alloc::vec![Complex64::new(0.0, 0.0); self.n];
        let (d, dd) = seg.offset(s);
        z[seg.a - 1] = seg.centre - d;
        z[seg.b - 1] = seg.centre + d;
        v[seg.a - 1] = -dd;
        v[seg.b - 1] = dd;
        (z, v)
    }

    /// `self` followed by `other`; `other` must start where `self` ends.
    pub fn then(&self, other: &ConfigPath) -> Result<ConfigPath, KzError> {
        if other.n != self.n {
            return Err(KzError::InvalidPath("point counts differ"));
        }
        let mut segs = self.segments.clone();
        segs.extend_from_slice(&other.segments);
        ConfigPath::new(self.n, self.start().to_vec(), segs)
    }

    pub fn reversed(&self) -> ConfigPath {
        let segs = self.segments.iter().rev().map(Segment::reversed).collect();
        ConfigPath::new(self.n, self.end().to_vec(), segs).expect("reversal of a valid path is valid")
    }

    /// Smallest pairwise distance seen at `samples + 1` evenly spaced
    /// parameters per segment.
    pub fn min_pairwise_distance(&self, samples: usize) -> f64 {
        let mut best = f64::INFINITY;
        for k in 0..self.segments.len() {
            for t in 0..=samples {
                let (z, _) = self.state(k, t as f64 / samples.max(1) as f64);
                for i in 0..self.n {
                    for j in i + 1..self.n {
                        best = best.min((z[i] - z[j]).norm());
                    }
                }
            }
        }
        best
    }
}

fn check_generator(n: usize, i: usize) -> Result<(), KzError> {
    if i == 0 || i >= n {
        return Err(KzError::IndexOutOfRange { index: i, strands: n });
    }
    Ok(())
}

/// Half-turn of points `i, i+1` about `i + 1/2` with radius `1/2`,
/// counterclockwise for `σ_i` (`inverse = false`), clockwise for `σ_i^-1`.
pub fn generator_path(n: usize, i: usize, inverse: bool) -> Result<ConfigPath, KzError> {
    check_generator(n, i)?;
    let seg = Segment {
        a: i,
        b: i + 1,
        centre: Complex64::new(i as f64 + 0.5, 0.0),
        rx: 0.5,
        ry: 0.5,
        theta0: 0.0,
        sweep: if inverse { -PI } else { PI },
    };
    ConfigPath::new(n, basepoint(n), alloc::vec![seg])
}

/// Full counterclockwise turn of points `i, i+1` around an ellipse with
/// semi-axes `rx` (along the real axis) and `ry`, realizing `σ_i²`.
pub fn full_turn_path(n: usize, i: usize, rx: f64, ry: f64) -> Result<ConfigPath, KzError> {
    check_generator(n, i)?;
    if (rx - 0.5).abs() > JOIN_TOLERANCE || !(ry > 0.0 && ry < 1.0) {
        return Err(KzError::InvalidPath("ellipse must pass through the basepoint and avoid neighbours"));
    }
    let seg =
        Segment { a: i, b: i + 1, centre: Complex64::new(i as f64 + 0.5, 0.0), rx, ry, theta0: 0.0, sweep: 2.0 * PI };
    ConfigPath::new(n, basepoint(n), alloc::vec![seg])
}
