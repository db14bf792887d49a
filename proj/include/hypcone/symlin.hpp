#pragma once

#include <Eigen/Dense>
#include <utility>

#include "hypcone/errors.hpp"
#include "hypcone/tolerances.hpp"

namespace hypcone::symlin {

using Eigen::MatrixXd;
using Eigen::VectorXd;

/// Dense real symmetric matrix. The stored entries are exactly mirrored:
/// construction copies the upper triangle onto the lower one, so
/// mat()(i,j) == mat()(j,i) holds to storage equality.
class SymMatrix {
public:
    SymMatrix() = default;

    /// Zero matrix of dimension n.
    explicit SymMatrix(int n) : m_(MatrixXd::Zero(n, n)) {
        if (n < 0) throw argument_error("SymMatrix: negative dimension");
    }

    /// Adopts a square matrix, mirroring the upper triangle onto the lower.
    /// The input must be square; asymmetry of the input is resolved in favor
    /// of the upper triangle.
    static SymMatrix from_upper(const MatrixXd& a);

    /// Adopts a square matrix after checking symmetry within `sym_tol`
    /// (absolute, relative to max |entry|), then mirrors exactly.
    static SymMatrix from_full(const MatrixXd& a, double sym_tol = 1e-12);

    static SymMatrix identity(int n) { return from_upper(MatrixXd::Identity(n, n)); }
    static SymMatrix diagonal(const VectorXd& d) {
        return from_upper(MatrixXd(d.asDiagonal()));
    }

    int dim() const { return static_cast<int>(m_.rows()); }
    const MatrixXd& mat() const { return m_; }
    double operator()(int i, int j) const { return m_(i, j); }

    /// Sets entry (i,j) and (j,i).
    void set(int i, int j, double v) { m_(i, j) = v; m_(j, i) = v; }

    double trace() const { return m_.trace(); }

private:
    MatrixXd m_;
};

/// Number of scalars in the row-major upper-triangle vectorization of an
/// n x n symmetric matrix.
constexpr int sym_vec_dim(int n) { return n * (n + 1) / 2; }

/// Flat index of entry (i,j), i <= j, in row-major upper-triangle order:
/// (0,0),(0,1),...,(0,n-1),(1,1),...,(n-1,n-1).
constexpr int sym_vec_index(int n, int i, int j) {
    return i * n - i * (i - 1) / 2 + (j - i);
}

/// Vectorizes a symmetric matrix; off-diagonals are stored unscaled.
VectorXd sym_to_vec(const SymMatrix& x);

/// Inverse of sym_to_vec.
SymMatrix vec_to_sym(const VectorXd& v, int n);

/// Coefficients c with c . vec(X) = tr(C X): diagonal entries once,
/// off-diagonal entries doubled.
VectorXd trace_inner_coeffs(const SymMatrix& c);

/// n x (n-1) matrix V with V^T V = I_{n-1} and V^T 1_n = 0.
struct ComplementBasis {
    int n = 0;
    MatrixXd V; // n x (n-1)
};

/// Elementary symmetric polynomial e_k(x), e_0 = 1, computed by the
/// coefficient-triangle recurrence (coefficients of prod(t + x_i)).
double elem_sym(const VectorXd& x, int k);

/// All of e_0(x), ..., e_m(x) in one pass (m defaults to the full degree).
VectorXd elem_sym_all(const VectorXd& x, int m = -1);

/// Eigenvalues of a symmetric matrix, weakly decreasing.
VectorXd eigvals_sym(const SymMatrix& x);

/// Full spectral decomposition; returns (eigenvalues weakly decreasing, Q)
/// with X = Q diag(lambda) Q^T.
std::pair<VectorXd, MatrixXd> eig_sym(const SymMatrix& x);

/// Coefficients E_1..E_n of the characteristic polynomial with the sign
/// convention det(X + tI) = t^n + E_1 t^{n-1} + ... + E_n, so that
/// E_k(X) = e_k(lambda(X)). Note many texts expand det(tI - X) instead;
/// that convention alternates signs relative to this one.
VectorXd charpoly_coeffs(const SymMatrix& x);

/// Deterministic complement basis: the Householder reflector mapping
/// 1_n/sqrt(n) to the first standard basis vector, columns 2..n taken as V.
/// Identical input yields bitwise-identical output.
ComplementBasis complement_basis(int n);

/// Schur complement M_11 - M_12 M_22^{-1} M_12^T of a symmetric matrix
/// partitioned with a scalar (n,n) corner.
SymMatrix schur_complement(const SymMatrix& m, const ToleranceConfig& tol = {});

/// Symmetric S with S B S = I for positive definite B.
SymMatrix inv_sqrt_pd(const SymMatrix& b, const ToleranceConfig& tol = {});

} // namespace hypcone::symlin
