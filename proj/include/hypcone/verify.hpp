#pragma once

#include <cstdint>
#include <functional>
#include <random>
#include <string>
#include <vector>

#include "hypcone/symlin.hpp"

namespace hypcone::verify {

using Eigen::MatrixXd;
using Eigen::VectorXd;

struct SuiteResult {
    std::string name;
    bool passed = false;
    int checks = 0;
    double worst = 0.0; // largest error / residual observed
    std::string note;
};

// Deterministic sampling helpers shared by the suites and the test binaries.
VectorXd random_vector(std::mt19937_64& rng, int n, double lo = -1.0, double hi = 1.0);
MatrixXd random_orthogonal(std::mt19937_64& rng, int n);
/// Alternative complement basis built by Gram-Schmidt, for basis-independence
/// checks against the Householder construction.
MatrixXd gram_schmidt_complement(int n);

using ElemSymFn = std::function<double(const VectorXd&, int)>;

/// e_{n-1}(x + t 1) = n det(V^T diag(x) V + t I) over random (x, t).
/// The elementary-symmetric evaluator is injectable so test harnesses can
/// confirm the suite detects a broken implementation.
SuiteResult main_identity_suite(std::uint64_t seed, int n_lo, int n_hi, int count,
                                ElemSymFn elem_sym = {});

/// e_1(x) E_{n-1-k}(M/M_22) = (n-k) e_{n-k}(x) over random x, all valid k.
SuiteResult polar_identity_suite(std::uint64_t seed, int n_lo, int n_hi, int count);

/// charpoly/elem_sym agreement on diagonals, permutation invariance,
/// complement-basis choice independence.
SuiteResult symlin_suite(std::uint64_t seed, int n_hi = 8);

/// Oracle self-consistency and spectral invariance.
SuiteResult oracle_suite(std::uint64_t seed, int n_hi = 6);

/// Representation JSON round-trips and size additivity under embedding.
SuiteResult lmi_suite(std::uint64_t seed);

/// Solver sanity: minimum-eigenvalue problems against the eigensolver.
SuiteResult solver_suite(std::uint64_t seed);

std::vector<SuiteResult> run_all(std::uint64_t seed, int n_hi = 8);

} // namespace hypcone::verify
