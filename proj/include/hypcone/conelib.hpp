#pragma once

#include <memory>
#include <string>
#include <vector>

#include "hypcone/lmi.hpp"
#include "hypcone/symlin.hpp"
#include "hypcone/tolerances.hpp"

namespace hypcone::conelib {

using lmi::SdpRepresentation;
using symlin::SymMatrix;
using Eigen::VectorXd;

enum class Strategy { DerivativeBased, PolarBased, Auto, SocSimplified };

const char* strategy_name(Strategy s);
Strategy strategy_from_name(const std::string& name);

/// Spectrahedral data: p(x) = det(sum_i A_i x_i), hyperbolic in direction e
/// provided A(e) is positive definite.
struct Pencil {
    int m = 0;                // matrix size
    std::vector<SymMatrix> A; // one per variable
    VectorXd e;

    int n() const { return static_cast<int>(A.size()); }
    SymMatrix eval(const VectorXd& x) const;
    void validate() const;
};

/// Symbolic cone identifier.
struct ConeSpec {
    enum class Kind { Orthant, PsdDeriv, SpectrahedralDeriv, Dual };

    Kind kind = Kind::Orthant;
    int n = 0; // dimension (Orthant: vector length, PsdDeriv: matrix order)
    int k = 0; // derivative order
    Strategy strategy = Strategy::Auto;
    std::shared_ptr<Pencil> pencil; // SpectrahedralDeriv only
    std::shared_ptr<ConeSpec> inner; // Dual only

    static ConeSpec orthant(int n, int k, Strategy s = Strategy::Auto);
    static ConeSpec psd_deriv(int n, int k, Strategy s = Strategy::Auto);
    static ConeSpec spectrahedral(Pencil p, int k, Strategy s = Strategy::Auto);
    static ConeSpec dual_of(ConeSpec inner);

    /// Dimension of the interface space (vectorized for matrix cones).
    int interface_dim() const;
    void validate() const;
    std::string label() const;
};

std::string spec_to_json(const ConeSpec& spec);
ConeSpec spec_from_json(const std::string& text);

// --- Builders -------------------------------------------------------------
//
// Slice-form representations are over the interface point itself (vector x,
// or the upper-triangle vectorization of X). Dual cones come out in
// projection form: membership is decided by solving, not freezing.

/// k-th derivative relaxation of the nonnegative orthant.
SdpRepresentation build_orthant(int n, int k, Strategy s = Strategy::Auto,
                                const ToleranceConfig& tol = {});

/// k-th derivative relaxation of the PSD cone, over vec(X).
SdpRepresentation build_psd_deriv(int n, int k, Strategy s = Strategy::Auto,
                                  const ToleranceConfig& tol = {});

/// Schur-Horn cone over (vec(X), z): z weakly decreasing and lambda(X)
/// majorized by z.
SdpRepresentation build_schur_horn(int n);

/// Dual of the orthant relaxation (projection form).
SdpRepresentation build_orthant_dual(int n, int k, Strategy s = Strategy::Auto,
                                     const ToleranceConfig& tol = {});

/// Dual of the PSD-cone relaxation (projection form).
SdpRepresentation build_psd_deriv_dual(int n, int k, Strategy s = Strategy::Auto,
                                       const ToleranceConfig& tol = {});

/// Derivative relaxation of the spectrahedral cone of `pencil`; requires
/// A(e) positive definite and 0 <= k <= m-1.
SdpRepresentation build_spectrahedral_deriv(const Pencil& pencil, int k,
                                            Strategy s = Strategy::Auto,
                                            const ToleranceConfig& tol = {});

/// Dual of the spectrahedral relaxation (projection form).
SdpRepresentation build_spectrahedral_deriv_dual(const Pencil& pencil, int k,
                                                 Strategy s = Strategy::Auto,
                                                 const ToleranceConfig& tol = {});

/// Second-order-cone simplifications, valid for k in {n-2, n-3}; the SOC
/// constraint (u,t) is realized as the arrow LMI [[tI, u],[u^T, t]] >= 0.
SdpRepresentation build_soc_orthant(int n, int k, const ToleranceConfig& tol = {});
SdpRepresentation build_soc_psd_deriv(int n, int k, const ToleranceConfig& tol = {});

/// Dispatch on a ConeSpec (Dual specs build the projection-form dual).
SdpRepresentation build(const ConeSpec& spec, const ToleranceConfig& tol = {});

// --- Size accounting --------------------------------------------------------

struct SizeRow {
    std::string cone;            // sub-cone label
    std::vector<int> added_dims; // PSD block dimensions added at this level
    int added = 0;               // sum of added_dims
    int cumulative = 0;          // running total from the top of the chain
};

/// Exact per-level size accounting along the recursion chain; the last
/// cumulative value equals build(spec).size().
std::vector<SizeRow> size_report(const ConeSpec& spec);

} // namespace hypcone::conelib
