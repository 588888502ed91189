use std::f64::consts::{PI, TAU};

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

pub const DEFAULT_FORWARD_CUTOFF: f64 = PI / 64.0;

/// Angles are stored as multiples of 2^-50 so that 2 pi - theta is exact
/// and mirrored grid points give bitwise-identical sin(theta / 2).
const SNAP: f64 = 1125899906842624.0; // 2^50

fn snap(theta: f64) -> f64 {
    (theta * SNAP).round() / SNAP
}

/// Strictly increasing scattering angles in (0, 2 pi), each at least
/// `forward_cutoff` away from the forward direction.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct AngleGrid {
    thetas: Vec<f64>,
    forward_cutoff: f64,
}

impl AngleGrid {
    pub fn new(thetas: Vec<f64>, forward_cutoff: f64) -> Result<Self> {
        if !(forward_cutoff.is_finite() && forward_cutoff > 0.0 && forward_cutoff < PI) {
            return Err(Error::InvalidGrid(format!("forward cutoff {forward_cutoff} outside (0, pi)")));
        }
        let thetas: Vec<f64> = thetas.into_iter().map(snap).collect();
        let edge = snap(forward_cutoff);
        for (n, &t) in thetas.iter().enumerate() {
            if !t.is_finite() {
                return Err(Error::InvalidGrid(format!("angle #{n} is not finite")));
            }
            if t < edge || TAU - t < edge {
                return Err(Error::InvalidGrid(format!(
                    "angle {t} lies within {forward_cutoff} of the forward direction"
                )));
            }
            if n > 0 && t <= thetas[n - 1] {
                return Err(Error::InvalidGrid(format!("angles not strictly increasing at #{n}")));
            }
        }
        Ok(AngleGrid { thetas, forward_cutoff })
    }

    pub fn with_default_cutoff(thetas: Vec<f64>) -> Result<Self> {
        AngleGrid::new(thetas, DEFAULT_FORWARD_CUTOFF)
    }

    /// `count` equally spaced angles on [lo, hi] inclusive. When the range is
    /// symmetric about pi the upper half is the exact mirror of the lower half.
    pub fn uniform(count: usize, lo: f64, hi: f64, forward_cutoff: f64) -> Result<Self> {
        if count == 0 {
            return Err(Error::InvalidGrid("grid needs at least one angle".into()));
        }
        if count == 1 {
            return AngleGrid::new(vec![lo], forward_cutoff);
        }
        if !(lo < hi) {
            return Err(Error::InvalidGrid(format!("empty range [{lo}, {hi}]")));
        }
        let step = (hi - lo) / (count - 1) as f64;
        let mut thetas: Vec<f64> = (0..count).map(|n| snap(lo + step * n as f64)).collect();
        if (snap(lo) + snap(hi) - TAU).abs() < 1e-12 {
            for n in 0..count / 2 {
                thetas[count - 1 - n] = TAU - thetas[n];
            }
            if count % 2 == 1 {
                thetas[count / 2] = PI;
            }
        }
        AngleGrid::new(thetas, forward_cutoff)
    }

    pub fn thetas(&self) -> &[f64] {
        &self.thetas
    }

    pub fn forward_cutoff(&self) -> f64 {
        self.forward_cutoff
    }

    pub fn len(&self) -> usize {
        self.thetas.len()
    }

    pub fn is_empty(&self) -> bool {
        self.thetas.is_empty()
    }
}

/// Angle folded into [0, pi] so that theta and 2 pi - theta share every
/// intermediate quantity.
pub(crate) fn folded(theta: f64) -> f64 {
    if theta > PI {
        TAU - theta
    } else {
        theta
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn symmetric_grid_mirrors_exactly() {
        let g = AngleGrid::uniform(256, PI / 32.0, 63.0 * PI / 32.0, DEFAULT_FORWARD_CUTOFF).unwrap();
        let t = g.thetas();
        for n in 0..t.len() {
            assert_eq!(t[n], TAU - t[t.len() - 1 - n]);
            assert_eq!(folded(t[n]), folded(t[t.len() - 1 - n]));
        }
        let odd = AngleGrid::uniform(5, PI / 2.0, 1.5 * PI, DEFAULT_FORWARD_CUTOFF).unwrap();
        assert_eq!(odd.thetas()[2], PI);
    }

    #[test]
    fn rejects_forward_and_unordered() {
        assert!(AngleGrid::with_default_cutoff(vec![0.01]).is_err());
        assert!(AngleGrid::with_default_cutoff(vec![TAU - 0.01]).is_err());
        assert!(AngleGrid::with_default_cutoff(vec![1.0, 1.0]).is_err());
        assert!(AngleGrid::with_default_cutoff(vec![2.0, 1.0]).is_err());
        assert!(AngleGrid::new(vec![1.0], 0.0).is_err());
        assert!(AngleGrid::with_default_cutoff(vec![PI / 64.0, PI]).is_ok());
    }
}
