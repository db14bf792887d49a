#include "hypcone/oracle.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

namespace hypcone::oracle {

using symlin::complement_basis;
using symlin::elem_sym_all;
using Eigen::MatrixXd;

const char* decision_name(Decision d) {
    switch (d) {
        case Decision::In: return "In";
        case Decision::Out: return "Out";
        case Decision::Boundary: return "Boundary";
    }
    return "?";
}

namespace {

MembershipVerdict verdict_from_values(const VectorXd& e, int upto, const ToleranceConfig& tol) {
    MembershipVerdict v;
    if (upto <= 0) {
        v.margin = std::numeric_limits<double>::infinity();
        v.binding_index = 0;
        v.decision = Decision::In;
        return v;
    }
    v.margin = e(1);
    v.binding_index = 1;
    for (int i = 2; i <= upto; ++i) {
        if (e(i) < v.margin) {
            v.margin = e(i);
            v.binding_index = i;
        }
    }
    if (v.margin > tol.boundary_margin) {
        v.decision = Decision::In;
    } else if (v.margin < -tol.boundary_margin) {
        v.decision = Decision::Out;
    } else {
        v.decision = Decision::Boundary;
    }
    return v;
}

} // namespace

MembershipVerdict orthant_margin(const VectorXd& x, int k, const ToleranceConfig& tol) {
    const int n = static_cast<int>(x.size());
    if (k < 0 || k > n) throw argument_error("orthant_margin: k out of range");
    const VectorXd e = elem_sym_all(x, n - k);
    return verdict_from_values(e, n - k, tol);
}

MembershipVerdict psd_deriv_margin(const SymMatrix& x, int k, const ToleranceConfig& tol) {
    const int n = x.dim();
    if (k < 0 || k > n) throw argument_error("psd_deriv_margin: k out of range");
    return orthant_margin(symlin::eigvals_sym(x), k, tol);
}

MembershipVerdict spectrahedral_margin(const Pencil& pencil, int k, const VectorXd& x,
                                       const ToleranceConfig& tol) {
    pencil.validate();
    if (k < 0 || k > pencil.m - 1)
        throw argument_error("spectrahedral_margin: k out of range [0, m-1]");
    const SymMatrix b = pencil.eval(pencil.e);
    const SymMatrix s = symlin::inv_sqrt_pd(b, tol);
    MatrixXd img = MatrixXd::Zero(pencil.m, pencil.m);
    for (int i = 0; i < pencil.n(); ++i)
        img += x(i) * (s.mat() * pencil.A[i].mat() * s.mat());
    return psd_deriv_margin(SymMatrix::from_full(img, 1e-9), k, tol);
}

double check_main_identity(const VectorXd& x, double t) {
    const int n = static_cast<int>(x.size());
    if (n < 2) throw argument_error("check_main_identity: n must be at least 2");
    const VectorXd shifted = x.array() + t;
    const double lhs = symlin::elem_sym(shifted, n - 1);
    const MatrixXd v = complement_basis(n).V;
    const MatrixXd inner =
        v.transpose() * x.asDiagonal() * v + t * MatrixXd::Identity(n - 1, n - 1);
    const double rhs = n * inner.determinant();
    return std::abs(lhs - rhs) / (1.0 + std::abs(lhs));
}

double check_polar_identity(const VectorXd& x, int k, const ToleranceConfig& tol) {
    const int n = static_cast<int>(x.size());
    if (n < 2) throw argument_error("check_polar_identity: n must be at least 2");
    if (k < 0 || k > n - 1) throw argument_error("check_polar_identity: k out of range [0, n-1]");
    const VectorXd e = elem_sym_all(x);
    const double e1 = e(1);
    // M(x) = Q^T diag(x) Q with Q = [V, 1/sqrt(n)]; M_22 = e_1(x)/n.
    const MatrixXd v = complement_basis(n).V;
    MatrixXd q(n, n);
    q.leftCols(n - 1) = v;
    q.col(n - 1) = VectorXd::Constant(n, 1.0 / std::sqrt(static_cast<double>(n)));
    const SymMatrix m = SymMatrix::from_full(q.transpose() * x.asDiagonal() * q, 1e-9);
    const SymMatrix sc = symlin::schur_complement(m, tol); // throws on e_1(x) = 0
    const int idx = n - 1 - k;
    const double ei = idx == 0 ? 1.0 : symlin::charpoly_coeffs(sc)(idx - 1);
    const double lhs = e1 * ei;
    const double rhs = (n - k) * e(n - k);
    return std::abs(lhs - rhs) / (1.0 + std::max(std::abs(lhs), std::abs(rhs)));
}

bool majorization_check(const SymMatrix& x, const VectorXd& z) {
    const int n = x.dim();
    if (z.size() != n) throw argument_error("majorization_check: dimension mismatch");
    const double tol = 1e-9;
    for (int i = 0; i + 1 < n; ++i)
        if (z(i) < z(i + 1) - tol) return false;
    const VectorXd lam = symlin::eigvals_sym(x);
    double suml = 0.0, sumz = 0.0;
    for (int ell = 0; ell < n; ++ell) {
        suml += lam(ell);
        sumz += z(ell);
        if (ell < n - 1 && suml > sumz + tol) return false;
    }
    return std::abs(suml - sumz) <= tol;
}

double dual_pairing_min(const std::vector<VectorXd>& dual_samples,
                        const std::vector<VectorXd>& primal_samples) {
    if (dual_samples.empty() || primal_samples.empty())
        throw argument_error("dual_pairing_min: sample lists must be nonempty");
    double best = std::numeric_limits<double>::infinity();
    for (const auto& w : dual_samples)
        for (const auto& x : primal_samples) best = std::min(best, w.dot(x));
    return best;
}

double dual_pairing_min_sym(const std::vector<VectorXd>& dual_samples,
                            const std::vector<VectorXd>& primal_samples, int n) {
    if (dual_samples.empty() || primal_samples.empty())
        throw argument_error("dual_pairing_min_sym: sample lists must be nonempty");
    VectorXd weights(symlin::sym_vec_dim(n));
    for (int i = 0; i < n; ++i)
        for (int j = i; j < n; ++j)
            weights(symlin::sym_vec_index(n, i, j)) = (i == j) ? 1.0 : 2.0;
    double best = std::numeric_limits<double>::infinity();
    for (const auto& w : dual_samples)
        for (const auto& x : primal_samples)
            best = std::min(best, (w.array() * weights.array() * x.array()).sum());
    return best;
}

} // namespace hypcone::oracle
