#include "hypcone/symlin.hpp"

#include <Eigen/Eigenvalues>
#include <algorithm>
#include <cmath>

namespace hypcone::symlin {

SymMatrix SymMatrix::from_upper(const MatrixXd& a) {
    if (a.rows() != a.cols()) throw argument_error("SymMatrix: matrix not square");
    SymMatrix s(static_cast<int>(a.rows()));
    for (int i = 0; i < s.dim(); ++i)
        for (int j = i; j < s.dim(); ++j)
            s.set(i, j, a(i, j));
    return s;
}

SymMatrix SymMatrix::from_full(const MatrixXd& a, double sym_tol) {
    if (a.rows() != a.cols()) throw argument_error("SymMatrix: matrix not square");
    const double scale = std::max(1.0, a.cwiseAbs().maxCoeff());
    if ((a - a.transpose()).cwiseAbs().maxCoeff() > sym_tol * scale)
        throw argument_error("SymMatrix: input is not symmetric");
    return from_upper(a);
}

VectorXd sym_to_vec(const SymMatrix& x) {
    const int n = x.dim();
    VectorXd v(sym_vec_dim(n));
    for (int i = 0; i < n; ++i)
        for (int j = i; j < n; ++j)
            v(sym_vec_index(n, i, j)) = x(i, j);
    return v;
}

SymMatrix vec_to_sym(const VectorXd& v, int n) {
    if (v.size() != sym_vec_dim(n)) throw argument_error("vec_to_sym: length mismatch");
    SymMatrix x(n);
    for (int i = 0; i < n; ++i)
        for (int j = i; j < n; ++j)
            x.set(i, j, v(sym_vec_index(n, i, j)));
    return x;
}

VectorXd trace_inner_coeffs(const SymMatrix& c) {
    const int n = c.dim();
    VectorXd v(sym_vec_dim(n));
    for (int i = 0; i < n; ++i)
        for (int j = i; j < n; ++j)
            v(sym_vec_index(n, i, j)) = (i == j) ? c(i, j) : 2.0 * c(i, j);
    return v;
}

double elem_sym(const VectorXd& x, int k) {
    const int n = static_cast<int>(x.size());
    if (k < 0 || k > n) throw argument_error("elem_sym: k out of range");
    if (k == 0) return 1.0;
    return elem_sym_all(x, k)(k);
}

VectorXd elem_sym_all(const VectorXd& x, int m) {
    const int n = static_cast<int>(x.size());
    if (m < 0) m = n;
    if (m > n) throw argument_error("elem_sym_all: degree exceeds dimension");
    VectorXd e = VectorXd::Zero(m + 1);
    e(0) = 1.0;
    for (int i = 0; i < n; ++i) {
        const int top = std::min(i + 1, m);
        for (int j = top; j >= 1; --j)
            e(j) += x(i) * e(j - 1);
    }
    return e;
}

std::pair<VectorXd, MatrixXd> eig_sym(const SymMatrix& x) {
    Eigen::SelfAdjointEigenSolver<MatrixXd> es(x.mat());
    if (es.info() != Eigen::Success)
        throw numerical_error("eig_sym: eigensolver did not converge");
    // Eigen returns increasing order; the library convention is decreasing.
    const int n = x.dim();
    VectorXd lam(n);
    MatrixXd q(n, n);
    for (int i = 0; i < n; ++i) {
        lam(i) = es.eigenvalues()(n - 1 - i);
        q.col(i) = es.eigenvectors().col(n - 1 - i);
    }
    return {lam, q};
}

VectorXd eigvals_sym(const SymMatrix& x) { return eig_sym(x).first; }

VectorXd charpoly_coeffs(const SymMatrix& x) {
    const VectorXd lam = eigvals_sym(x);
    const VectorXd e = elem_sym_all(lam);
    return e.tail(x.dim());
}

ComplementBasis complement_basis(int n) {
    if (n < 2) throw argument_error("complement_basis: n must be at least 2");
    // Householder reflector H = I - 2 v v^T / (v^T v) with v = 1/sqrt(n) - e_1.
    // H maps 1_n/sqrt(n) to e_1; columns 2..n of H are orthonormal and
    // orthogonal to 1_n.
    VectorXd v = VectorXd::Constant(n, 1.0 / std::sqrt(static_cast<double>(n)));
    v(0) -= 1.0;
    const double vtv = v.squaredNorm();
    MatrixXd h = MatrixXd::Identity(n, n) - (2.0 / vtv) * (v * v.transpose());
    ComplementBasis b;
    b.n = n;
    b.V = h.rightCols(n - 1);
    return b;
}

SymMatrix schur_complement(const SymMatrix& m, const ToleranceConfig& tol) {
    const int n = m.dim();
    if (n < 2) throw argument_error("schur_complement: dimension must be at least 2");
    const double pivot = m(n - 1, n - 1);
    const double scale = m.mat().norm();
    if (std::abs(pivot) <= tol.pivot_rel * scale || pivot == 0.0)
        throw singular_pivot_error("schur_complement: (n,n) pivot is numerically zero");
    const MatrixXd m11 = m.mat().topLeftCorner(n - 1, n - 1);
    const VectorXd m12 = m.mat().topRightCorner(n - 1, 1);
    return SymMatrix::from_upper(m11 - (m12 * m12.transpose()) / pivot);
}

SymMatrix inv_sqrt_pd(const SymMatrix& b, const ToleranceConfig& tol) {
    auto [lam, q] = eig_sym(b);
    const int n = b.dim();
    const double spectral = lam.cwiseAbs().maxCoeff();
    if (n == 0) return SymMatrix(0);
    if (lam(n - 1) <= tol.pd_rel * std::max(spectral, 1e-300))
        throw definiteness_error("inv_sqrt_pd: matrix is not positive definite");
    VectorXd d(n);
    for (int i = 0; i < n; ++i) d(i) = 1.0 / std::sqrt(lam(i));
    return SymMatrix::from_full(q * d.asDiagonal() * q.transpose(), 1e-10);
}

} // namespace hypcone::symlin
