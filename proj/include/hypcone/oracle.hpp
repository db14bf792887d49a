#pragma once

#include "hypcone/conelib.hpp"
#include "hypcone/symlin.hpp"
#include "hypcone/tolerances.hpp"

namespace hypcone::oracle {

using conelib::Pencil;
using symlin::SymMatrix;
using Eigen::VectorXd;

enum class Decision { In, Out, Boundary };

const char* decision_name(Decision d);

/// Signed membership margin: the minimum over the active inequality family,
/// with the index attaining it.
struct MembershipVerdict {
    double margin = 0.0;
    int binding_index = 0; // 1-based degree of the binding e_i / E_i; 0 if none
    Decision decision = Decision::In;
};

/// Margin of x for the k-th derivative relaxation of the orthant:
/// min over 1 <= i <= n-k of e_i(x). k = n gives +inf (everything is In).
MembershipVerdict orthant_margin(const VectorXd& x, int k, const ToleranceConfig& tol = {});

/// Margin of X for the k-th derivative relaxation of the PSD cone:
/// min over 1 <= i <= n-k of E_i(X).
MembershipVerdict psd_deriv_margin(const SymMatrix& x, int k, const ToleranceConfig& tol = {});

/// Margin of x for the k-th derivative relaxation of the spectrahedral cone:
/// the PSD margin of sum_i B^{-1/2} A_i B^{-1/2} x_i.
MembershipVerdict spectrahedral_margin(const Pencil& pencil, int k, const VectorXd& x,
                                       const ToleranceConfig& tol = {});

/// Relative error of e_{n-1}(x + t*1) = n * det(V^T diag(x) V + t*I).
double check_main_identity(const VectorXd& x, double t);

/// Relative error of e_1(x) * E_{n-1-k}(M/M_22) = (n-k) * e_{n-k}(x), where
/// M(x) = Q^T diag(x) Q with Q = [V, 1/sqrt(n)]. Requires e_1(x) != 0.
double check_polar_identity(const VectorXd& x, int k, const ToleranceConfig& tol = {});

/// True iff z is weakly decreasing, sum(lambda(X)) = sum(z), and all partial
/// sums of lambda(X) are dominated by those of z (tolerance 1e-9).
bool majorization_check(const SymMatrix& x, const VectorXd& z);

/// Minimum pairing <w, x> over all (dual sample, primal sample) pairs.
double dual_pairing_min(const std::vector<VectorXd>& dual_samples,
                        const std::vector<VectorXd>& primal_samples);

/// Same, with the trace inner product on vectorized symmetric matrices
/// (off-diagonal coordinates weighted twice).
double dual_pairing_min_sym(const std::vector<VectorXd>& dual_samples,
                            const std::vector<VectorXd>& primal_samples, int n);

} // namespace hypcone::oracle
