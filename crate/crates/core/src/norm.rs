//! Discrete and Sobolev norms of torus fields.

use crate::error::Result;
use crate::field::Field;
use crate::ops::spectral_derivative;

/// Norm selector.
///
/// `DiscreteL2` and `DiscreteH1` are grid norms, `‖U‖² = h^d Σ_j |U_j|²`
/// with the `H¹` variant adding the spectrally differentiated field along
/// every axis. `SobolevR(r)` is the coefficient-space norm
/// `‖v‖_r² = Σ_k (1+|k|)^{2r} |v̂_k|²`; on band-limited fields
/// `DiscreteL2 = (2π)^{d/2} · SobolevR(0)` (Parseval).
#[derive(Clone, Copy, Debug, PartialEq)]
pub enum NormKind {
    DiscreteL2,
    DiscreteH1,
    SobolevR(f64),
}

impl std::fmt::Display for NormKind {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            NormKind::DiscreteL2 => write!(f, "l2"),
            NormKind::DiscreteH1 => write!(f, "h1"),
            NormKind::SobolevR(r) => write!(f, "sobolev:{r}"),
        }
    }
}

pub fn norm(f: &Field, kind: NormKind) -> f64 {
    match kind {
        NormKind::DiscreteL2 => grid_norm(f, false),
        NormKind::DiscreteH1 => grid_norm(f, true),
        NormKind::SobolevR(r) => {
            let grid = f.grid();
            f.coeffs()
                .iter()
                .enumerate()
                .map(|(flat, c)| (1.0 + grid.ksq(flat).sqrt()).powf(2.0 * r) * c.norm_sqr())
                .sum::<f64>()
                .sqrt()
        }
    }
}

fn grid_norm(f: &Field, with_derivative: bool) -> f64 {
    let grid = f.grid();
    let weight = grid.mesh_width().powi(grid.dim() as i32);
    let mut sum: f64 = f.to_physical().iter().map(|v| v.norm_sqr()).sum();
    if with_derivative {
        for axis in 0..grid.dim() {
            let d = spectral_derivative(f, axis).expect("axis in range");
            sum += d.to_physical().iter().map(|v| v.norm_sqr()).sum::<f64>();
        }
    }
    (weight * sum).sqrt()
}

/// Parse a norm selector: `l2`, `h1` or `sobolev:<r>`.
pub fn parse_norm(s: &str) -> Result<NormKind> {
    match s {
        "l2" => Ok(NormKind::DiscreteL2),
        "h1" => Ok(NormKind::DiscreteH1),
        _ => {
            if let Some(r) = s.strip_prefix("sobolev:") {
                let r: f64 = r.parse().map_err(|_| {
                    crate::error::Error::InvalidConfig(format!("bad Sobolev exponent in `{s}`"))
                })?;
                return Ok(NormKind::SobolevR(r));
            }
            Err(crate::error::Error::InvalidConfig(format!(
                "unknown norm `{s}` (expected l2, h1 or sobolev:<r>)"
            )))
        }
    }
}
