#pragma once

namespace hypcone {

/// All numerical tolerances used by the library, threaded explicitly.
/// Nothing reads ambient/global state; defaults match the documented contracts.
struct ToleranceConfig {
    /// Relative backward error accepted from the symmetric eigensolver.
    double eig_backward = 1e-12;
    /// Orthonormality / annihilation slack for complement bases.
    double basis_orth = 1e-12;
    /// Schur-complement pivot threshold, relative to the matrix norm.
    double pivot_rel = 1e-12;
    /// Positive-definiteness threshold for inv_sqrt_pd, relative to the spectral norm.
    double pd_rel = 1e-10;
    /// Residual accepted from inv_sqrt_pd: max |S*B*S - I|.
    double inv_sqrt_check = 1e-10;
    /// Oracle margins within this band are classified Boundary rather than In/Out.
    double boundary_margin = 1e-6;
    /// Projection-form membership: accept iff distance <= dual_membership_rel*(1+|w|).
    double dual_membership_rel = 1e-7;
    /// Slack allowed in dual-pairing checks.
    double pairing_slack = 1e-8;
};

} // namespace hypcone
