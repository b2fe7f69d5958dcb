//! Semantic evaluation of the distance predicates on concrete elements.
//!
//! `rho_min(x)` is the distance to the set of minimal projections; in a direct
//! sum those are exactly the rank-one projections of a single block, zero
//! elsewhere. `psi(x, y)` is the distance from `y` to the unitary orbit of `x`,
//! and `rho_sim(x, y)`, the distance to the set of unitarily conjugate pairs,
//! lies in `[psi/2, psi]`.

use num_complex::Complex64;
use serde::Serialize;

use crate::algebra::Element;
use crate::error::{Error, Result};
use crate::linalg::{
    expi_hermitian, frobenius_sq, hermitian_eigen, hermitian_part, hermitian_spectrum,
    random_unit_vector, random_unitary, spectral_norm, top_singular, CMatrix, CVector,
};
use crate::numeric::optimize::{descend, descend_point, multistart, Estimate, OptimizerConfig};

/// Hermitian test threshold for the closed-form paths.
pub const HERMITIAN_TOLERANCE: f64 = 1e-9;

fn block_is_hermitian(b: &CMatrix) -> bool {
    spectral_norm(&(b - b.adjoint())) <= HERMITIAN_TOLERANCE
}

fn rank_one(v: &CVector) -> CMatrix {
    v * v.adjoint()
}

fn rank1_objective(block: &CMatrix, v: &CVector) -> f64 {
    spectral_norm(&(block - rank_one(v)))
}

/// `min ‖block − vv*‖` over unit vectors `v`.
///
/// Multi-restart descent on the unit sphere; for Hermitian blocks the
/// eigenvector projections are evaluated too and the smaller value wins.
pub fn rank1_distance(block: &CMatrix, cfg: &OptimizerConfig) -> Result<Estimate> {
    cfg.validate()?;
    let n = block.nrows();
    if n != block.ncols() || n == 0 {
        return Err(Error::NonSquare {
            block: 1,
            rows: block.nrows(),
            cols: block.ncols(),
        });
    }
    if n == 1 {
        return Ok(Estimate::exact(
            (block[(0, 0)] - Complex64::new(1.0, 0.0)).norm(),
        ));
    }

    let optimized = multistart(cfg, |r, rng| {
        let start = if r == 0 {
            let mut e1 = CVector::zeros(n);
            e1[0] = Complex64::new(1.0, 0.0);
            e1
        } else {
            random_unit_vector(rng, n)
        };
        descend(
            cfg,
            start,
            |v| {
                let (sigma, a, b) = top_singular(&(block - rank_one(v)));
                // Euclidean gradient of σ_max(B − vv*) in v, projected to the sphere
                let bv = b.dotc(v);
                let av = a.dotc(v);
                let g = -(&a * bv + &b * av);
                let radial = v.dotc(&g).re;
                (sigma, g - v * Complex64::new(radial, 0.0))
            },
            |g| g.norm_squared(),
            |v, g, t| {
                let w = v - g * Complex64::new(t, 0.0);
                let norm = w.norm();
                w / Complex64::new(norm, 0.0)
            },
            |v| rank1_objective(block, v),
        )
    });

    if block_is_hermitian(block) {
        let (_, vectors) = hermitian_eigen(block);
        let candidate = (0..n)
            .map(|j| rank1_objective(block, &vectors.column(j).into_owned()))
            .fold(f64::INFINITY, f64::min);
        if candidate <= optimized.value {
            return Ok(Estimate::exact(candidate));
        }
    }
    Ok(optimized)
}

/// Distance to the nearest minimal projection: rank one in block `i` and zero in
/// every other block, so the cost is `max(rank1_distance(x_i), max_{i'≠i} ‖x_i'‖)`.
pub fn rho_min(x: &Element, cfg: &OptimizerConfig) -> Result<Estimate> {
    let norms: Vec<f64> = x.blocks().iter().map(spectral_norm).collect();
    let mut best = Estimate {
        value: f64::INFINITY,
        converged: true,
    };
    for (i, block) in x.blocks().iter().enumerate() {
        let others = norms
            .iter()
            .enumerate()
            .filter(|&(k, _)| k != i)
            .map(|(_, &v)| v)
            .fold(0.0, f64::max);
        if others >= best.value {
            continue;
        }
        let d = rank1_distance(block, cfg)?;
        let value = d.value.max(others);
        if value < best.value {
            best = Estimate {
                value,
                converged: d.converged,
            };
        }
    }
    Ok(best)
}

fn check_same_shape(x: &Element, y: &Element) -> Result<()> {
    if x.block_sizes() != y.block_sizes() {
        return Err(Error::Invalid(format!(
            "elements live in different algebras: blocks {:?} vs {:?}",
            x.block_sizes(),
            y.block_sizes()
        )));
    }
    Ok(())
}

fn orbit_objective(x: &CMatrix, y: &CMatrix, u: &CMatrix) -> f64 {
    spectral_norm(&(u.adjoint() * x * u - y))
}

/// `inf_u ‖u*xu − y‖` for one block, by descent over `u ← u·exp(iH)`.
///
/// Each restart first minimizes the smooth surrogate `‖u*xu − y‖_F²`, then
/// descends on the operator norm itself from there.
fn block_psi(x: &CMatrix, y: &CMatrix, cfg: &OptimizerConfig) -> Estimate {
    let n = x.nrows();
    if n == 1 {
        return Estimate::exact((x[(0, 0)] - y[(0, 0)]).norm());
    }
    let i = Complex64::new(0.0, 1.0);
    let step =
        |u: &CMatrix, g: &CMatrix, t: f64| u * expi_hermitian(&(g * Complex64::new(-t, 0.0)));
    multistart(cfg, |r, rng| {
        let start = if r == 0 {
            CMatrix::identity(n, n)
        } else {
            random_unitary(rng, n)
        };
        // u ↦ u·exp(iH) moves x̃ = u*xu by i[x̃, H]; d f = Re tr(K·H) gives gradient herm(K)
        let warm = descend_point(
            cfg,
            start,
            |u| {
                let xt = u.adjoint() * x * u;
                let d = &xt - y;
                let dstar = d.adjoint();
                let k = (&dstar * &xt - &xt * &dstar) * (i * 2.0);
                (frobenius_sq(&d), hermitian_part(&k))
            },
            frobenius_sq,
            step,
            |u| frobenius_sq(&(u.adjoint() * x * u - y)),
        );
        descend(
            cfg,
            warm,
            |u| {
                let xt = u.adjoint() * x * u;
                let (sigma, a, b) = top_singular(&(&xt - y));
                let ba = &b * a.adjoint();
                let k = (&ba * &xt - &xt * &ba) * i;
                (sigma, hermitian_part(&k))
            },
            frobenius_sq,
            step,
            |u| orbit_objective(x, y, u),
        )
    })
}

/// `psi(x, y) = inf_u ‖u*xu − y‖`. Unitaries of a direct sum act blockwise, so
/// this is the maximum of the per-block infima. The value is always attained by
/// some unitary, hence an upper bound on the infimum.
pub fn psi(x: &Element, y: &Element, cfg: &OptimizerConfig) -> Result<Estimate> {
    cfg.validate()?;
    check_same_shape(x, y)?;
    let mut out = Estimate {
        value: 0.0,
        converged: true,
    };
    for (bx, by) in x.blocks().iter().zip(y.blocks()) {
        let e = block_psi(bx, by, cfg);
        out.value = out.value.max(e.value);
        out.converged &= e.converged;
    }
    Ok(out)
}

fn require_hermitian(x: &Element) -> Result<()> {
    for (i, b) in x.blocks().iter().enumerate() {
        let deviation = spectral_norm(&(b - b.adjoint()));
        if deviation > HERMITIAN_TOLERANCE {
            return Err(Error::NotHermitian {
                block: i + 1,
                deviation,
            });
        }
    }
    Ok(())
}

/// Closed form of `psi` for Hermitian pairs: per block, the sup-distance between
/// the non-increasingly sorted spectra.
pub fn psi_hermitian_oracle(x: &Element, y: &Element) -> Result<f64> {
    check_same_shape(x, y)?;
    require_hermitian(x)?;
    require_hermitian(y)?;
    Ok(x.blocks()
        .iter()
        .zip(y.blocks())
        .map(|(bx, by)| {
            hermitian_spectrum(bx)
                .iter()
                .zip(hermitian_spectrum(by))
                .map(|(l, m)| (l - m).abs())
                .fold(0.0, f64::max)
        })
        .fold(0.0, f64::max))
}

/// Enclosure of the distance from `(x, y)` to the set of conjugate pairs.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct SimBounds {
    pub lower: f64,
    pub upper: f64,
    pub converged: bool,
}

/// `[psi/2, psi]`: the pair `(x, u*xu)` is conjugate and within `‖u*xu − y‖` of
/// `(x, y)`, and `psi` moves by at most `2ε` when both arguments move by `ε`.
///
/// For Hermitian inputs, moving both spectra to their per-block average gives a
/// conjugate pair at distance `psi/2`, which closes the interval.
pub fn rho_sim_bounds(x: &Element, y: &Element, cfg: &OptimizerConfig) -> Result<SimBounds> {
    let est = psi(x, y, cfg)?;
    let mut psi_value = est.value;
    let mut upper = est.value;
    let mut converged = est.converged;
    if x.is_hermitian(HERMITIAN_TOLERANCE) && y.is_hermitian(HERMITIAN_TOLERANCE) {
        let sorted = psi_hermitian_oracle(x, y)?;
        psi_value = psi_value.min(sorted);
        upper = upper.min(midpoint_distance(x, y)?);
        // both endpoints are now closed-form
        converged = true;
    }
    Ok(SimBounds {
        lower: psi_value / 2.0,
        upper: upper.min(psi_value),
        converged,
    })
}

/// Distance from `(x, y)` to the conjugate pair obtained by replacing both
/// spectra with their blockwise average.
fn midpoint_distance(x: &Element, y: &Element) -> Result<f64> {
    let mut worst: f64 = 0.0;
    for (bx, by) in x.blocks().iter().zip(y.blocks()) {
        let (lx, vx) = hermitian_eigen(bx);
        let (ly, vy) = hermitian_eigen(by);
        let mid: Vec<f64> = lx.iter().zip(&ly).map(|(a, b)| 0.5 * (a + b)).collect();
        let diag = CMatrix::from_diagonal(&CVector::from_iterator(
            mid.len(),
            mid.iter().map(|&m| Complex64::new(m, 0.0)),
        ));
        let a = &vx * &diag * vx.adjoint();
        let b = &vy * &diag * vy.adjoint();
        worst = worst
            .max(spectral_norm(&(bx - a)))
            .max(spectral_norm(&(by - b)));
    }
    Ok(worst)
}
